import { describe, expect, it } from "vitest";

import type { Complaint, Prescription } from "../src/api.js";
import { esc } from "../src/render.js";
import { renderAnalytics, renderApprovalQueue, renderComplaintBoard } from "../src/views/authority.js";
import { renderComposer, renderCredentials, renderPatientLookup } from "../src/views/doctor.js";
import { renderLogin } from "../src/views/login.js";
import { renderComplaints } from "../src/views/nagorik.js";

const rx: Prescription = {
  rx_id: "rx:abc",
  doctor_id: "doc-1",
  patient_id: "nid-9",
  items: [{ medicine_id: "M1", dosage: "1+0+1", days: 5 }],
  warnings: ["allergy: patient is allergic to M1", "interaction: M2 with M3"],
  issued_at: 1700000000000,
};

describe("login screen", () => {
  it("shows the gateway's banner text verbatim", () => {
    expect(renderLogin("Invalid Password")).toContain("Invalid Password");
    expect(renderLogin("Invalid Identity")).toContain("Invalid Identity");
  });

  it("renders no banner without an error", () => {
    expect(renderLogin()).not.toContain("banner-error");
  });
});

describe("prescription composer", () => {
  it("surfaces every threat warning from the endorse response", () => {
    const html = renderComposer({ medicines: [], items: [], issued: rx });
    for (const warning of rx.warnings) {
      expect(html).toContain(esc(warning));
    }
    expect(html).toContain("rx:abc");
    expect(html.match(/class="warning"/g)).toHaveLength(2);
  });

  it("reports a clean issue when the ledger returned no warnings", () => {
    const html = renderComposer({ medicines: [], items: [], issued: { ...rx, warnings: [] } });
    expect(html).toContain("No drug threats detected");
    expect(html).not.toContain('class="warning"');
  });

  it("never invents warnings client-side", () => {
    // staged items that WOULD conflict: without an endorse response the
    // composer must stay silent, the ledger is the only warning source
    const html = renderComposer({
      medicines: [],
      items: [
        { medicine_id: "M2", dosage: "", days: 1 },
        { medicine_id: "M3", dosage: "", days: 1 },
      ],
    });
    expect(html).not.toContain("warning");
  });
});

describe("complaint tracker", () => {
  const complaint = (rank: number | null): Complaint => ({
    complaint_id: "cmp:1",
    subject: "long queue",
    body: "b",
    severity: "high",
    status: "open",
    filed_at: 1,
    priority_rank: rank,
  });

  it("displays the rank exactly as the API returned it", () => {
    expect(renderComplaints([complaint(1)])).toContain("#1");
    expect(renderComplaints([complaint(7)])).toContain("#7");
  });

  it("shows a dash for resolved complaints with no rank", () => {
    const html = renderComplaints([complaint(null)]);
    expect(html).not.toContain("#");
    expect(html).toContain(">-<");
  });

  it("authority board renders the same ranks", () => {
    const html = renderComplaintBoard([complaint(3)]);
    expect(html).toContain("#3");
    expect(html).toContain("Start review");
  });
});

describe("patient lookup", () => {
  it("renders the consent screen on a 403", () => {
    const html = renderPatientLookup({ patientId: "nid-9", consentError: "no consent from nid-9" });
    expect(html).toContain("Consent required");
    expect(html).toContain("no consent from nid-9");
  });

  it("renders history entries when consented", () => {
    const html = renderPatientLookup({
      patientId: "nid-9",
      history: {
        patient_id: "nid-9",
        allergies: ["M1"],
        history: [{ kind: "prescription", ref: "rx:abc", at: 1700000000000, record: rx }],
      },
    });
    expect(html).toContain("rx:abc");
    expect(html).toContain("M1");
  });
});

describe("credentials screen", () => {
  it("marks unverified entries as pending verification", () => {
    const html = renderCredentials({
      profile: {
        status: "approved",
        credentials: [
          { credential_id: "d:0", degree: "MBBS", institution: "DMC", verified: true },
          { credential_id: "d:1", degree: "FCPS", institution: "BSMMU", verified: false },
        ],
      },
    });
    expect(html).toContain("pending verification");
    expect(html).toContain("badge-verified");
  });
});

describe("analytics dashboard", () => {
  it("renders suppressed groups verbatim, without counts", () => {
    const html = renderAnalytics({
      groupBy: "medicine",
      stats: { M1: 12, M2: "suppressed" },
    });
    expect(html).toContain("suppressed");
    expect(html).toContain("12");
  });
});

describe("approval queue", () => {
  it("lists pending doctors with approve and reject actions", () => {
    const html = renderApprovalQueue({
      pendingDoctors: [
        { doctor_id: "doc-7", name: "Dr. Seven", specialty: "surgery", status: "pending", credentials: [] },
      ],
      pendingCredentials: [
        { doctor_id: "doc-1", credential_id: "doc-1:0", degree: "MBBS", institution: "DMC" },
      ],
    });
    expect(html).toContain('data-action="approve-doctor" data-id="doc-7"');
    expect(html).toContain('data-action="approve-credential" data-id="doc-1:0"');
  });
});

describe("escaping", () => {
  it("interpolated API text cannot inject markup", () => {
    const hostile = { ...rx, warnings: ['<script>alert("x")</script>'] };
    const html = renderComposer({ medicines: [], items: [], issued: hostile });
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});
