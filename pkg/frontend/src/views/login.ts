import { banner, html, raw } from "../render.js";

/** Login screen; `error` is the gateway's message shown verbatim. */
export function renderLogin(error?: string): string {
  return html`
    <section class="card login-card">
      <h1>National Health Portal</h1>
      <p>Sign in with your health-card identity.</p>
      ${raw(error ? banner("error", error) : "")}
      <form data-action="login">
        <label>Identity
          <input name="identity_id" autocomplete="username" required placeholder="NID / registration number" />
        </label>
        <label>Password
          <input name="password" type="password" autocomplete="current-password" required />
        </label>
        <button type="submit">Sign in</button>
      </form>
    </section>
  `;
}

export function renderBlocked(screenTitle: string): string {
  return html`
    <section class="card">
      ${raw(banner("error", "Your role does not have access to this screen."))}
      <p>The gateway refuses <strong>${screenTitle}</strong> for this account (HTTP 403), so the portal does not offer it.</p>
    </section>
  `;
}

export function renderSessionExpired(): string {
  return html`
    <section class="card">
      ${raw(banner("warn", "Session expired. Sign in again."))}
    </section>
  `;
}
