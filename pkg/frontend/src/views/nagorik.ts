import type { Appointment, Complaint, MedicalHistory } from "../api.js";
import { banner, html, raw, when } from "../render.js";

export function renderHistory(history: MedicalHistory): string {
  const entries =
    history.history.length === 0
      ? html`<p class="empty">No records yet.</p>`
      : html`<ol class="timeline">${raw(
          history.history
            .map((e) => {
              const rx = e.record;
              const detail = rx
                ? html`prescription ${rx.rx_id} by ${rx.doctor_id}:
                    ${rx.items.map((i) => i.medicine_id).join(", ")}`
                : html`${e.kind} ${e.ref}`;
              return html`<li><time>${when(e.at)}</time> ${raw(detail)}</li>`;
            })
            .join(""),
        )}</ol>`;
  return html`
    <section class="card">
      <h2>My medical records</h2>
      <p>Allergies: ${history.allergies.join(", ") || "none on file"}</p>
      ${raw(entries)}
    </section>
  `;
}

export interface AppointmentState {
  mine: Appointment[];
  message?: { kind: "error" | "ok"; text: string };
}

export function renderAppointments(state: AppointmentState): string {
  const toast = state.message ? banner(state.message.kind, state.message.text) : "";
  const list = state.mine
    .map(
      (a) => html`
        <li class="appt appt-${a.status}">
          ${a.doctor_id} at ${when(a.slot * 1000)}: <strong>${a.status}</strong>
          ${raw(
            a.status === "requested"
              ? html`<button data-action="confirm-appointment" data-id="${a.appt_id}">Confirm</button>`
              : "",
          )}
        </li>
      `,
    )
    .join("");
  return html`
    <section class="card">
      <h2>Appointments</h2>
      ${raw(toast)}
      <form data-action="request-appointment">
        <input name="doctor_id" placeholder="doctor registration number" required />
        <input name="slot" type="datetime-local" required />
        <button type="submit">Request</button>
      </form>
      <ul>${raw(list)}</ul>
    </section>
  `;
}

export interface ComplaintView {
  complaint: Complaint;
}

/** The tracker shows the rank exactly as the ledger computed it. */
export function renderComplaints(mine: Complaint[], message?: string): string {
  const rows = mine
    .map(
      (c) => html`
        <tr>
          <td>${c.subject}</td>
          <td>${c.severity}</td>
          <td>${c.status}</td>
          <td class="rank">${c.priority_rank == null ? "-" : `#${c.priority_rank}`}</td>
        </tr>
      `,
    )
    .join("");
  return html`
    <section class="card">
      <h2>My complaints</h2>
      ${raw(message ? banner("ok", message) : "")}
      <form data-action="file-complaint">
        <input name="subject" placeholder="subject" required />
        <textarea name="body" placeholder="what happened?" required></textarea>
        <select name="severity">
          <option>low</option><option>medium</option><option>high</option>
        </select>
        <button type="submit">File complaint</button>
      </form>
      <table>
        <thead><tr><th>subject</th><th>severity</th><th>status</th><th>priority</th></tr></thead>
        <tbody>${raw(rows)}</tbody>
      </table>
    </section>
  `;
}

export function renderConsents(granted: { doctor_id: string; expires_at: number }[], message?: string): string {
  const list = granted
    .map((g) => html`<li>${g.doctor_id} until ${when(g.expires_at)}</li>`)
    .join("");
  return html`
    <section class="card">
      <h2>Consent grants</h2>
      ${raw(message ? banner("ok", message) : "")}
      <form data-action="grant-consent">
        <input name="doctor_id" placeholder="doctor registration number" required />
        <button type="submit">Grant 24 h consent</button>
      </form>
      <ul>${raw(list)}</ul>
    </section>
  `;
}
