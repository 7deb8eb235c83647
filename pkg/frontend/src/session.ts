/**
 * Session context: who is logged in, with which token and stakeholder
 * role. The gateway owns expiry; any 401 clears the context and sends the
 * user back to the login screen.
 */

export interface SessionContext {
  token: string;
  identity_id: string;
  org: string;
  role: string; // certificate role: admin | user
  stakeholder: string; // authority | doctor | nagorik
}

const STORAGE_KEY = "healthdlt-session";

// localStorage when running in a browser, plain memory under tests
const memory = new Map<string, string>();
const storage = {
  get(): string | null {
    if (typeof localStorage !== "undefined") return localStorage.getItem(STORAGE_KEY);
    return memory.get(STORAGE_KEY) ?? null;
  },
  set(value: string): void {
    if (typeof localStorage !== "undefined") localStorage.setItem(STORAGE_KEY, value);
    else memory.set(STORAGE_KEY, value);
  },
  clear(): void {
    if (typeof localStorage !== "undefined") localStorage.removeItem(STORAGE_KEY);
    else memory.delete(STORAGE_KEY);
  },
};

export function saveSession(ctx: SessionContext): void {
  storage.set(JSON.stringify(ctx));
}

export function loadSession(): SessionContext | null {
  const raw = storage.get();
  if (!raw) return null;
  try {
    return JSON.parse(raw) as SessionContext;
  } catch {
    return null;
  }
}

export function clearSession(): void {
  storage.clear();
}
