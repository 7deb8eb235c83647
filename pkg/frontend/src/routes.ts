/**
 * Screen registry with role gates.
 *
 * The portal never decides anything the gateway wouldn't: each screen's
 * `allowed` set mirrors the gateway's 403 behavior for the API calls that
 * screen makes. The conformance test pins this table against the
 * gateway's authorization matrix; change them together or not at all.
 */

export type Stakeholder = "authority" | "doctor" | "nagorik";

export interface Screen {
  id: string;
  title: string;
  allowed: readonly Stakeholder[];
  /** gateway contract functions the screen invokes (documentation + test anchor) */
  uses: readonly string[];
}

const ALL: readonly Stakeholder[] = ["authority", "doctor", "nagorik"];

export const SCREENS: readonly Screen[] = [
  { id: "news", title: "News feed", allowed: ALL, uses: ["health.get_news"] },
  { id: "medicines", title: "Medicines", allowed: ALL, uses: ["health.get_medicines"] },
  { id: "specialists", title: "Find a specialist", allowed: ALL, uses: ["health.find_specialist"] },
  {
    id: "my-records",
    title: "My records",
    allowed: ["nagorik"],
    uses: ["health.get_medical_history"],
  },
  {
    id: "appointments",
    title: "Appointments",
    allowed: ["nagorik"],
    uses: ["health.request_appointment", "health.confirm_appointment"],
  },
  {
    id: "consents",
    title: "Consents",
    allowed: ["nagorik"],
    uses: ["health.grant_consent"],
  },
  {
    id: "complaints",
    title: "Complaints",
    allowed: ["nagorik"],
    uses: ["health.file_complaint", "health.get_complaint_status"],
  },
  {
    id: "patient-lookup",
    title: "Patient lookup",
    allowed: ["doctor"],
    uses: ["health.get_medical_history"],
  },
  {
    id: "compose-rx",
    title: "Prescription composer",
    allowed: ["doctor"],
    uses: ["health.create_prescription", "health.get_medicines"],
  },
  {
    id: "credentials",
    title: "My credentials",
    allowed: ["doctor"],
    uses: ["health.submit_credential_update", "health.register_doctor"],
  },
  {
    id: "approval-queue",
    title: "Doctor approvals",
    allowed: ["authority"],
    uses: ["health.approve_doctor", "health.approve_credential"],
  },
  {
    id: "registry-editor",
    title: "Medicine registry",
    allowed: ["authority"],
    uses: ["health.add_medicine", "health.set_medicine_authorized"],
  },
  {
    id: "complaint-board",
    title: "Complaint review",
    allowed: ["authority"],
    uses: ["health.review_complaint", "health.get_complaint_status"],
  },
  {
    id: "distributions",
    title: "Distribution log",
    allowed: ["authority"],
    uses: ["health.record_distribution"],
  },
  {
    id: "analytics",
    title: "Analytics",
    allowed: ["authority"],
    uses: ["health.prescribing_tendency", "health.anonymized_stats"],
  },
  {
    id: "compose-news",
    title: "Publish news",
    allowed: ["authority"],
    uses: ["health.post_news"],
  },
] as const;

export function screensFor(stakeholder: Stakeholder): Screen[] {
  return SCREENS.filter((s) => s.allowed.includes(stakeholder));
}

export function canVisit(screenId: string, stakeholder: Stakeholder): boolean {
  const screen = SCREENS.find((s) => s.id === screenId);
  return screen !== undefined && screen.allowed.includes(stakeholder);
}

export function homeScreen(stakeholder: Stakeholder): string {
  switch (stakeholder) {
    case "authority":
      return "approval-queue";
    case "doctor":
      return "compose-rx";
    default:
      return "news";
  }
}
