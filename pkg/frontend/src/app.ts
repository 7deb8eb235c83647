/**
 * Application shell: hash routing, navigation, and screen controllers.
 *
 * Controllers fetch from the gateway and re-render; every displayed
 * decision (warnings, ranks, suppression, verification badges) comes from
 * API responses untouched. A 401 from any call drops the session and
 * returns to the login screen; screens the gateway would 403 are never
 * offered in the navigation and render a blocked notice if visited by
 * hand.
 */

import { ApiClient, ApiError } from "./api.js";
import type { Appointment, Prescription } from "./api.js";
import { banner, esc, html, raw } from "./render.js";
import { canVisit, homeScreen, SCREENS, screensFor, type Stakeholder } from "./routes.js";
import { clearSession, loadSession, saveSession, type SessionContext } from "./session.js";
import { renderBlocked, renderLogin } from "./views/login.js";
import { renderMedicines, renderNews, renderSpecialists } from "./views/shared.js";
import {
  renderAppointments,
  renderComplaints,
  renderConsents,
  renderHistory,
} from "./views/nagorik.js";
import { renderComposer, renderCredentials, renderPatientLookup } from "./views/doctor.js";
import {
  renderAnalytics,
  renderApprovalQueue,
  renderComplaintBoard,
  renderDistributions,
  renderNewsComposer,
  renderRegistryEditor,
} from "./views/authority.js";

interface AppState {
  specialty: string;
  rxItems: { medicine_id: string; dosage: string; days: number }[];
  lastRx?: Prescription;
  rxError?: string;
  myAppointments: Appointment[];
  myComplaints: string[]; // ids filed this session (tracker refreshes ranks)
  myConsents: { doctor_id: string; expires_at: number }[];
  toast?: string;
}

export class PortalApp {
  private api: ApiClient;
  private session: SessionContext | null;
  private state: AppState = {
    specialty: "",
    rxItems: [],
    myAppointments: [],
    myComplaints: [],
    myConsents: [],
  };

  constructor(
    private root: HTMLElement,
    baseUrl = "",
  ) {
    this.api = new ApiClient(baseUrl);
    this.session = loadSession();
    if (this.session) this.api.setToken(this.session.token);
  }

  start(): void {
    window.addEventListener("hashchange", () => void this.route());
    this.root.addEventListener("submit", (e) => void this.onSubmit(e));
    this.root.addEventListener("click", (e) => void this.onClick(e));
    void this.route();
  }

  private screenId(): string {
    return window.location.hash.replace(/^#\/?/, "") || (this.session ? homeScreen(this.session.stakeholder as Stakeholder) : "login");
  }

  private async route(): Promise<void> {
    if (!this.session) {
      this.root.innerHTML = this.shell(renderLogin());
      return;
    }
    const id = this.screenId();
    if (!canVisit(id, this.session.stakeholder as Stakeholder)) {
      const title = SCREENS.find((s) => s.id === id)?.title ?? id;
      this.root.innerHTML = this.shell(renderBlocked(title));
      return;
    }
    try {
      this.root.innerHTML = this.shell(await this.renderScreen(id));
    } catch (err) {
      this.handleError(err);
    }
  }

  private shell(content: string): string {
    if (!this.session) return html`<main class="auth">${raw(content)}</main>`;
    const links = screensFor(this.session.stakeholder as Stakeholder)
      .map((s) => html`<a href="#/${s.id}" class="${this.screenId() === s.id ? "active" : ""}">${s.title}</a>`)
      .join("");
    return html`
      <header>
        <span class="who">${this.session.identity_id} (${this.session.stakeholder})</span>
        <nav>${raw(links)}</nav>
        <button data-action="logout">Sign out</button>
      </header>
      <main>${raw(this.state.toast ? banner("ok", this.state.toast) : "")}${raw(content)}</main>
    `;
  }

  private async renderScreen(id: string): Promise<string> {
    const api = this.api;
    const session = this.session!;
    switch (id) {
      case "news":
        return renderNews((await api.news()).result);
      case "medicines":
        return renderMedicines((await api.medicines()).result);
      case "specialists": {
        const found = this.state.specialty
          ? (await api.specialists(this.state.specialty)).result
          : [];
        return renderSpecialists(found, this.state.specialty);
      }
      case "my-records":
        return renderHistory((await api.history(session.identity_id)).result);
      case "appointments":
        return renderAppointments({ mine: this.state.myAppointments });
      case "consents":
        return renderConsents(this.state.myConsents);
      case "complaints": {
        const listed = (await api.listComplaints()).result;
        return renderComplaints(listed);
      }
      case "patient-lookup":
        return renderPatientLookup({});
      case "compose-rx":
        return renderComposer({
          medicines: (await api.medicines()).result,
          items: this.state.rxItems,
          issued: this.state.lastRx,
          error: this.state.rxError,
        });
      case "credentials": {
        try {
          const profile = (await api.doctor(session.identity_id)).result;
          return renderCredentials({ profile });
        } catch (err) {
          if (err instanceof ApiError && err.status === 404) {
            return renderCredentials({});
          }
          throw err;
        }
      }
      case "approval-queue": {
        const pending = (await api.listDoctors("pending")).result;
        const approved = (await api.listDoctors("approved")).result;
        const pendingCredentials = approved.flatMap((d) =>
          d.credentials
            .filter((c) => !c.verified)
            .map((c) => ({ doctor_id: d.doctor_id, ...c })),
        );
        return renderApprovalQueue({ pendingDoctors: pending, pendingCredentials });
      }
      case "registry-editor":
        return renderRegistryEditor((await api.medicines()).result);
      case "complaint-board":
        return renderComplaintBoard((await api.listComplaints()).result);
      case "distributions":
        return renderDistributions();
      case "compose-news":
        return renderNewsComposer();
      case "analytics":
        return renderAnalytics({ groupBy: "specialty" });
      default:
        return renderBlocked(id);
    }
  }

  private async onSubmit(event: Event): Promise<void> {
    const form = event.target as HTMLFormElement;
    if (!(form instanceof HTMLFormElement) || !form.dataset.action) return;
    event.preventDefault();
    const fields = new FormData(form);
    const value = (name: string) => String(fields.get(name) ?? "");
    this.state.toast = undefined;
    try {
      switch (form.dataset.action) {
        case "login": {
          const response = await this.api.login(value("identity_id"), value("password"));
          this.session = {
            token: response.token,
            identity_id: response.identity_id,
            org: response.org,
            role: response.role,
            stakeholder: response.stakeholder,
          };
          saveSession(this.session);
          this.api.setToken(response.token);
          window.location.hash = `#/${homeScreen(this.session.stakeholder as Stakeholder)}`;
          break;
        }
        case "find-specialist":
          this.state.specialty = value("specialty");
          break;
        case "request-appointment": {
          const slot = Math.floor(new Date(value("slot")).getTime() / 1000);
          const response = await this.api.requestAppointment(value("doctor_id"), slot);
          this.state.myAppointments.push(response.result);
          break;
        }
        case "grant-consent": {
          const response = await this.api.grantConsent(value("doctor_id"));
          this.state.myConsents.push(
            response.result as { doctor_id: string; expires_at: number },
          );
          this.state.toast = "Consent granted for 24 hours.";
          break;
        }
        case "file-complaint": {
          const response = await this.api.fileComplaint(
            value("subject"),
            value("body"),
            value("severity"),
          );
          this.state.myComplaints.push(response.result.complaint_id);
          this.state.toast = "Complaint filed.";
          break;
        }
        case "lookup-patient": {
          const patientId = value("patient_id");
          try {
            const history = (await this.api.history(patientId)).result;
            this.root.innerHTML = this.shell(renderPatientLookup({ patientId, history }));
          } catch (err) {
            if (err instanceof ApiError && err.status === 403) {
              this.root.innerHTML = this.shell(
                renderPatientLookup({ patientId, consentError: err.message }),
              );
              return;
            }
            throw err;
          }
          return;
        }
        case "rx-add-item":
          this.state.rxItems.push({
            medicine_id: value("medicine_id"),
            dosage: value("dosage"),
            days: Number(value("days") || 0),
          });
          this.state.lastRx = undefined;
          this.state.rxError = undefined;
          break;
        case "rx-issue": {
          try {
            const response = await this.api.prescribe(value("patient_id"), this.state.rxItems);
            this.state.lastRx = response.result;
            this.state.rxItems = [];
            this.state.rxError = undefined;
          } catch (err) {
            if (err instanceof ApiError && err.status !== 401) {
              this.state.rxError = `${err.error}: ${err.message}`;
            } else {
              throw err;
            }
          }
          break;
        }
        case "register-doctor":
          await this.api.registerDoctor({ name: value("name"), specialty: value("specialty") });
          this.state.toast = "Application submitted; awaiting authority approval.";
          break;
        case "submit-credential":
          await this.api.submitCredential(this.session!.identity_id, {
            degree: value("degree"),
            institution: value("institution"),
          });
          this.state.toast = "Credential submitted; pending verification.";
          break;
        case "add-medicine":
          await this.api.addMedicine({
            medicine_id: value("medicine_id"),
            generic_name: value("generic_name"),
            free_under_esp: fields.get("free_under_esp") !== null,
            contraindications: value("contraindications")
              .split(",")
              .map((s) => s.trim())
              .filter(Boolean),
          });
          this.state.toast = "Medicine added.";
          break;
        case "record-distribution":
          await this.api.recordDistribution({
            medicine_id: value("medicine_id"),
            facility: value("facility"),
            quantity: Number(value("quantity")),
          });
          this.state.toast = "Distribution recorded.";
          break;
        case "post-news":
          await this.api.postNews(value("title"), value("body"));
          this.state.toast = "Published.";
          break;
        case "load-tendency": {
          const doctorId = value("doctor_id");
          const tendency = (await this.api.tendency(doctorId)).result;
          this.root.innerHTML = this.shell(
            renderAnalytics({ doctorId, tendency, groupBy: "specialty" }),
          );
          return;
        }
        case "load-stats": {
          const groupBy = value("group_by") as "specialty" | "medicine";
          const stats = (await this.api.stats(groupBy)).result;
          this.root.innerHTML = this.shell(renderAnalytics({ groupBy, stats }));
          return;
        }
        case "open-complaint": {
          const complaint = (await this.api.complaint(value("complaint_id"))).result;
          this.root.innerHTML = this.shell(renderComplaintBoard([complaint]));
          return;
        }
        default:
          return;
      }
      await this.route();
    } catch (err) {
      this.handleError(err, form.dataset.action);
    }
  }

  private async onClick(event: Event): Promise<void> {
    const target = (event.target as HTMLElement).closest("[data-action]") as HTMLElement | null;
    if (!target || target instanceof HTMLFormElement) return;
    const action = target.dataset.action;
    if (!action || target.tagName !== "BUTTON" || (target as HTMLButtonElement).type === "submit") return;
    event.preventDefault();
    const id = target.dataset.id ?? "";
    try {
      switch (action) {
        case "logout":
          clearSession();
          this.session = null;
          this.api.setToken(null);
          window.location.hash = "";
          break;
        case "confirm-appointment": {
          const response = await this.api.confirmAppointment(id);
          this.state.myAppointments = this.state.myAppointments.map((a) =>
            a.appt_id === id ? response.result : a,
          );
          this.state.toast = "Appointment confirmed.";
          break;
        }
        case "rx-remove-item":
          this.state.rxItems.splice(Number(target.dataset.index), 1);
          break;
        case "approve-doctor":
          await this.api.approveDoctor(id, "approve");
          this.state.toast = `Approved ${id}.`;
          break;
        case "reject-doctor":
          await this.api.approveDoctor(id, "reject");
          this.state.toast = `Rejected ${id}.`;
          break;
        case "approve-credential":
          await this.api.approveCredential(id);
          this.state.toast = "Credential verified.";
          break;
        case "toggle-medicine":
          await this.api.setMedicineAuthorized(id, target.dataset.next === "true");
          break;
        case "review-complaint":
          await this.api.reviewComplaint(id, target.dataset.act as "start_review" | "resolve");
          break;
        default:
          return;
      }
      await this.route();
    } catch (err) {
      this.handleError(err, action);
    }
  }

  private handleError(err: unknown, context?: string): void {
    if (err instanceof ApiError && err.status === 401) {
      // expired or rejected session: back to login with the gateway's words
      clearSession();
      this.session = null;
      this.api.setToken(null);
      this.root.innerHTML = html`<main class="auth">${raw(renderLogin(err.message))}</main>`;
      return;
    }
    const message =
      err instanceof ApiError ? `${err.error}: ${err.message}` : `Unexpected error: ${esc(String(err))}`;
    const main = this.root.querySelector("main");
    const target = main ?? this.root;
    target.insertAdjacentHTML("afterbegin", banner("error", `${context ? context + ": " : ""}${message}`));
  }
}
