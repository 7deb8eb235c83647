import type { MedicalHistory, Medicine, Prescription } from "../api.js";
import { banner, html, raw, when } from "../render.js";

export interface ComposerState {
  medicines: Medicine[];
  items: { medicine_id: string; dosage: string; days: number }[];
  issued?: Prescription;
  error?: string;
}

/**
 * Prescription composer. Threat warnings are displayed exactly as the
 * endorsing peer returned them; the portal never re-derives them.
 */
export function renderComposer(state: ComposerState): string {
  const options = state.medicines
    .filter((m) => m.authorized)
    .map((m) => html`<option value="${m.medicine_id}">${m.medicine_id} (${m.generic_name})</option>`)
    .join("");
  const staged = state.items
    .map((i, n) => html`<li>${i.medicine_id} ${i.dosage} for ${i.days} days
      <button data-action="rx-remove-item" data-index="${n}">remove</button></li>`)
    .join("");
  const warnings = state.issued?.warnings ?? [];
  const outcome = state.issued
    ? html`
        <div class="rx-outcome">
          ${raw(
            warnings.length
              ? html`<ul class="threat-warnings">${raw(
                  warnings.map((w) => html`<li class="warning">${w}</li>`).join(""),
                )}</ul>`
              : banner("ok", "No drug threats detected."),
          )}
          <p>Issued <strong>${state.issued.rx_id}</strong> for ${state.issued.patient_id}.</p>
        </div>
      `
    : "";
  return html`
    <section class="card">
      <h2>Prescription composer</h2>
      ${raw(state.error ? banner("error", state.error) : "")}
      <form data-action="rx-add-item">
        <select name="medicine_id">${raw(options)}</select>
        <input name="dosage" placeholder="1+0+1" />
        <input name="days" type="number" value="5" min="1" />
        <button type="submit">Add item</button>
      </form>
      <ul class="rx-items">${raw(staged)}</ul>
      <form data-action="rx-issue">
        <input name="patient_id" placeholder="patient NID / birth certificate" required />
        <button type="submit">Issue prescription</button>
      </form>
      ${raw(outcome)}
    </section>
  `;
}

export interface LookupState {
  patientId?: string;
  history?: MedicalHistory;
  consentError?: string; // gateway 403 message, shown as the consent screen
}

export function renderPatientLookup(state: LookupState): string {
  let body = "";
  if (state.consentError) {
    body = html`
      <div class="consent-required">
        ${raw(banner("error", "Consent required"))}
        <p>${state.consentError}</p>
        <p>Ask the patient to grant consent from their portal, then retry.</p>
      </div>
    `;
  } else if (state.history) {
    const h = state.history;
    body = html`
      <div class="patient-file">
        <p>Allergies: ${h.allergies.join(", ") || "none on file"}</p>
        <ol>${raw(
          h.history
            .map((e) => {
              const rx = e.record;
              return html`<li><time>${when(e.at)}</time>
                ${rx ? `${rx.rx_id}: ${rx.items.map((i) => i.medicine_id).join(", ")}` : e.ref}</li>`;
            })
            .join(""),
        )}</ol>
      </div>
    `;
  }
  return html`
    <section class="card">
      <h2>Patient lookup</h2>
      <form data-action="lookup-patient">
        <input name="patient_id" value="${state.patientId ?? ""}" placeholder="patient NID" required />
        <button type="submit">Open record</button>
      </form>
      ${raw(body)}
    </section>
  `;
}

export interface CredentialsState {
  profile?: { status: string; credentials: { credential_id: string; degree: string; institution: string; verified: boolean }[] };
  registered?: boolean;
  message?: string;
}

export function renderCredentials(state: CredentialsState): string {
  if (!state.profile) {
    return html`
      <section class="card">
        <h2>Doctor registration</h2>
        ${raw(state.message ? banner("ok", state.message) : "")}
        <p>No profile on the ledger yet. Apply for registration; the central authority must approve it.</p>
        <form data-action="register-doctor">
          <input name="name" placeholder="full name" required />
          <input name="specialty" placeholder="specialty" required />
          <button type="submit">Apply</button>
        </form>
      </section>
    `;
  }
  const rows = state.profile.credentials
    .map(
      (c) => html`
        <li>
          ${c.degree}, ${c.institution}
          <span class="badge ${c.verified ? "badge-verified" : "badge-pending"}">
            ${c.verified ? "verified" : "pending verification"}
          </span>
        </li>
      `,
    )
    .join("");
  return html`
    <section class="card">
      <h2>My credentials</h2>
      ${raw(state.message ? banner("ok", state.message) : "")}
      <p>Profile status: <strong>${state.profile.status}</strong></p>
      <ul class="credential-list">${raw(rows)}</ul>
      <form data-action="submit-credential">
        <input name="degree" placeholder="degree" required />
        <input name="institution" placeholder="institution" required />
        <button type="submit">Submit for verification</button>
      </form>
    </section>
  `;
}
