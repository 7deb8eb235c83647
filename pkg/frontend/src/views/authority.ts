import type { Complaint, DoctorProfile, Medicine } from "../api.js";
import { banner, html, raw } from "../render.js";

export interface ApprovalQueueState {
  pendingDoctors: DoctorProfile[];
  pendingCredentials: { doctor_id: string; credential_id: string; degree: string; institution: string }[];
  message?: string;
}

export function renderApprovalQueue(state: ApprovalQueueState): string {
  const doctors =
    state.pendingDoctors.length === 0
      ? html`<p class="empty">No registrations waiting.</p>`
      : html`<ul>${raw(
          state.pendingDoctors
            .map(
              (d) => html`
                <li class="pending-doctor">
                  ${d.name || d.doctor_id} (${d.doctor_id}), ${d.specialty}
                  <button data-action="approve-doctor" data-id="${d.doctor_id}">Approve</button>
                  <button data-action="reject-doctor" data-id="${d.doctor_id}">Reject</button>
                </li>
              `,
            )
            .join(""),
        )}</ul>`;
  const credentials =
    state.pendingCredentials.length === 0
      ? html`<p class="empty">No credential updates waiting.</p>`
      : html`<ul>${raw(
          state.pendingCredentials
            .map(
              (c) => html`
                <li>
                  ${c.doctor_id}: ${c.degree}, ${c.institution}
                  <button data-action="approve-credential" data-id="${c.credential_id}">Verify</button>
                </li>
              `,
            )
            .join(""),
        )}</ul>`;
  return html`
    <section class="card">
      <h2>Doctor approval queue</h2>
      ${raw(state.message ? banner("ok", state.message) : "")}
      ${raw(doctors)}
      <h3>Credential updates</h3>
      ${raw(credentials)}
    </section>
  `;
}

export function renderRegistryEditor(medicines: Medicine[], message?: string): string {
  const rows = medicines
    .map(
      (m) => html`
        <tr>
          <td>${m.medicine_id}</td>
          <td>${m.generic_name}</td>
          <td>${m.authorized ? "authorized" : "revoked"}</td>
          <td>
            <button data-action="toggle-medicine" data-id="${m.medicine_id}" data-next="${m.authorized ? "false" : "true"}">
              ${m.authorized ? "Revoke" : "Authorize"}
            </button>
          </td>
        </tr>
      `,
    )
    .join("");
  return html`
    <section class="card">
      <h2>Medicine registry</h2>
      ${raw(message ? banner("ok", message) : "")}
      <form data-action="add-medicine">
        <input name="medicine_id" placeholder="id" required />
        <input name="generic_name" placeholder="generic name" required />
        <input name="contraindications" placeholder="contraindicated ids, comma-separated" />
        <label><input name="free_under_esp" type="checkbox" /> free under ESP</label>
        <button type="submit">Add</button>
      </form>
      <table>
        <thead><tr><th>id</th><th>generic</th><th>status</th><th></th></tr></thead>
        <tbody>${raw(rows)}</tbody>
      </table>
    </section>
  `;
}

export function renderComplaintBoard(items: Complaint[], message?: string): string {
  const rows = items
    .map(
      (c) => html`
        <tr>
          <td class="rank">${c.priority_rank == null ? "-" : `#${c.priority_rank}`}</td>
          <td>${c.subject}</td>
          <td>${c.severity}</td>
          <td>${c.status}</td>
          <td>
            ${raw(
              c.status === "open"
                ? html`<button data-action="review-complaint" data-id="${c.complaint_id}" data-act="start_review">Start review</button>`
                : c.status === "in_review"
                  ? html`<button data-action="review-complaint" data-id="${c.complaint_id}" data-act="resolve">Resolve</button>`
                  : "",
            )}
          </td>
        </tr>
      `,
    )
    .join("");
  return html`
    <section class="card">
      <h2>Complaint review board</h2>
      ${raw(message ? banner("ok", message) : "")}
      <form data-action="open-complaint">
        <input name="complaint_id" placeholder="complaint id" required />
        <button type="submit">Load</button>
      </form>
      <table>
        <thead><tr><th>priority</th><th>subject</th><th>severity</th><th>status</th><th></th></tr></thead>
        <tbody>${raw(rows)}</tbody>
      </table>
    </section>
  `;
}

export function renderDistributions(message?: string): string {
  return html`
    <section class="card">
      <h2>Medicine distribution log</h2>
      ${raw(message ? banner("ok", message) : "")}
      <form data-action="record-distribution">
        <input name="medicine_id" placeholder="medicine id" required />
        <input name="facility" placeholder="facility" required />
        <input name="quantity" type="number" min="1" value="1" required />
        <button type="submit">Record</button>
      </form>
    </section>
  `;
}

export interface AnalyticsState {
  doctorId?: string;
  tendency?: Record<string, number>;
  groupBy: "specialty" | "medicine";
  stats?: Record<string, number | string>;
}

/** Suppressed groups arrive as the literal string "suppressed" and are
 * rendered as such; the portal must not infer the hidden counts. */
export function renderAnalytics(state: AnalyticsState): string {
  const tendencyRows = Object.entries(state.tendency ?? {})
    .map(([medicine, count]) => html`<tr><td>${medicine}</td><td>${count}</td></tr>`)
    .join("");
  const statRows = Object.entries(state.stats ?? {})
    .map(
      ([group, value]) => html`
        <tr>
          <td>${group}</td>
          <td class="${value === "suppressed" ? "suppressed" : ""}">${value}</td>
        </tr>
      `,
    )
    .join("");
  return html`
    <section class="card">
      <h2>Analytics</h2>
      <form data-action="load-tendency">
        <input name="doctor_id" value="${state.doctorId ?? ""}" placeholder="doctor id" required />
        <button type="submit">Prescribing tendency</button>
      </form>
      <table><tbody>${raw(tendencyRows)}</tbody></table>
      <form data-action="load-stats">
        <select name="group_by">
          <option value="specialty" ${state.groupBy === "specialty" ? "selected" : ""}>by specialty</option>
          <option value="medicine" ${state.groupBy === "medicine" ? "selected" : ""}>by medicine</option>
        </select>
        <button type="submit">Anonymized stats</button>
      </form>
      <table><tbody>${raw(statRows)}</tbody></table>
    </section>
  `;
}

export function renderNewsComposer(message?: string): string {
  return html`
    <section class="card">
      <h2>Publish official news</h2>
      ${raw(message ? banner("ok", message) : "")}
      <form data-action="post-news">
        <input name="title" placeholder="title" required />
        <textarea name="body" placeholder="announcement" required></textarea>
        <button type="submit">Publish</button>
      </form>
    </section>
  `;
}
