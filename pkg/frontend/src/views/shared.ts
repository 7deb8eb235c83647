import type { DoctorProfile, Medicine, NewsItem } from "../api.js";
import { html, raw, when } from "../render.js";

export function renderNews(items: NewsItem[]): string {
  if (items.length === 0) {
    return html`<section class="card"><h2>News feed</h2><p class="empty">No announcements yet.</p></section>`;
  }
  return html`
    <section class="card">
      <h2>News feed</h2>
      <ul class="news-list">
        ${raw(
          items
            .map(
              (n) => html`
                <li class="news-item">
                  <h3>${n.title}</h3>
                  <p>${n.body}</p>
                  <small>${when(n.at)} by ${n.published_by}</small>
                </li>
              `,
            )
            .join(""),
        )}
      </ul>
    </section>
  `;
}

export function renderMedicines(medicines: Medicine[]): string {
  const rows = medicines
    .map(
      (m) => html`
        <tr>
          <td>${m.medicine_id}</td>
          <td>${m.generic_name}</td>
          <td>${m.authorized ? "authorized" : "revoked"}</td>
          <td>${m.free_under_esp ? "free" : ""}</td>
        </tr>
      `,
    )
    .join("");
  return html`
    <section class="card">
      <h2>Government medicine list</h2>
      <table>
        <thead><tr><th>id</th><th>generic name</th><th>status</th><th>ESP</th></tr></thead>
        <tbody>${raw(rows)}</tbody>
      </table>
    </section>
  `;
}

export function renderSpecialists(results: DoctorProfile[], specialty: string): string {
  const list =
    results.length === 0
      ? html`<p class="empty">No approved specialist matches.</p>`
      : html`<ul>${raw(
          results
            .map(
              (d) => html`
                <li class="doctor-hit">
                  <strong>${d.name || d.doctor_id}</strong> (${d.doctor_id}), ${d.specialty}
                  <ul class="credentials">
                    ${raw(
                      d.credentials
                        .map((c) => html`<li>${c.degree}, ${c.institution} <em>verified</em></li>`)
                        .join(""),
                    )}
                  </ul>
                </li>
              `,
            )
            .join(""),
        )}</ul>`;
  return html`
    <section class="card">
      <h2>Find a specialist</h2>
      <form data-action="find-specialist">
        <input name="specialty" value="${specialty}" placeholder="cardiology" />
        <button type="submit">Search</button>
      </form>
      ${raw(list)}
    </section>
  `;
}
