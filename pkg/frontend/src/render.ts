/** String templating helpers; every interpolation is HTML-escaped. */

export function esc(value: unknown): string {
  return String(value)
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function html(strings: TemplateStringsArray, ...values: unknown[]): string {
  let out = strings[0];
  values.forEach((value, i) => {
    out += Array.isArray(value) ? value.join("") : esc(value);
    out += strings[i + 1];
  });
  return out;
}

/** Embed an already-rendered fragment without re-escaping. */
export function raw(fragment: string): string[] {
  return [fragment];
}

export function banner(kind: "error" | "ok" | "warn", message: string): string {
  return html`<div class="banner banner-${kind}" role="alert">${message}</div>`;
}

export function when(ts: number): string {
  return new Date(ts).toISOString().replace("T", " ").slice(0, 16);
}
