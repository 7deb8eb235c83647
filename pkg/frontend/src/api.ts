/**
 * REST client for the gateway. Every mutating call returns the contract
 * result plus the commit receipt; errors carry the gateway's status and
 * error class so screens can react (401 -> re-login, 403 -> blocked).
 */

export interface Receipt {
  block_number: number;
  tx_index: number;
  valid: boolean;
}

export interface InvokeResponse<T> {
  result: T;
  receipt: Receipt;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public error: string,
    message: string,
  ) {
    super(message);
  }
}

export interface LoginResponse {
  token: string;
  identity_id: string;
  org: string;
  role: string;
  stakeholder: string;
}

export interface DoctorProfile {
  doctor_id: string;
  name: string;
  specialty: string;
  status: string;
  credentials: { credential_id: string; degree: string; institution: string; verified: boolean }[];
}

export interface Medicine {
  medicine_id: string;
  generic_name: string;
  authorized: boolean;
  free_under_esp: boolean;
  contraindications: string[];
}

export interface Prescription {
  rx_id: string;
  doctor_id: string;
  patient_id: string;
  items: { medicine_id: string; dosage: string; days: number }[];
  warnings: string[];
  issued_at: number;
}

export interface Appointment {
  appt_id: string;
  patient_id: string;
  doctor_id: string;
  slot: number;
  status: string;
}

export interface Complaint {
  complaint_id: string;
  subject: string;
  body: string;
  severity: string;
  status: string;
  filed_at: number;
  priority_rank?: number | null;
}

export interface HistoryEntry {
  kind: string;
  ref: string;
  at: number;
  record?: Prescription;
}

export interface MedicalHistory {
  patient_id: string;
  allergies: string[];
  history: HistoryEntry[];
}

export interface NewsItem {
  news_id: string;
  title: string;
  body: string;
  published_by: string;
  at: number;
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private token: string | null = null,
    private fetchFn: typeof fetch = fetch,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        (payload as { error?: string }).error ?? "Error",
        (payload as { message?: string }).message ?? response.statusText,
      );
    }
    return payload as T;
  }

  login(identity_id: string, password: string): Promise<LoginResponse> {
    return this.request("POST", "/auth/login", { identity_id, password });
  }

  registerUser(body: { identity_id: string; password: string; attrs?: object; role?: string }) {
    return this.request<{ identity_id: string; org: string }>("POST", "/admin/users", body);
  }

  health(): Promise<{ height: number }> {
    return this.request("GET", "/health");
  }

  news(): Promise<{ result: NewsItem[] }> {
    return this.request("GET", "/news");
  }

  postNews(title: string, body: string): Promise<InvokeResponse<NewsItem>> {
    return this.request("POST", "/news", { title, body });
  }

  medicines(): Promise<{ result: Medicine[] }> {
    return this.request("GET", "/medicines");
  }

  addMedicine(medicine: Partial<Medicine>): Promise<InvokeResponse<Medicine>> {
    return this.request("POST", "/medicines", medicine);
  }

  setMedicineAuthorized(id: string, authorized: boolean): Promise<InvokeResponse<Medicine>> {
    return this.request("POST", `/medicines/${encodeURIComponent(id)}/authorize`, { authorized });
  }

  specialists(specialty: string): Promise<{ result: DoctorProfile[] }> {
    return this.request("GET", `/specialists?specialty=${encodeURIComponent(specialty)}`);
  }

  listDoctors(status?: "pending" | "approved" | "rejected"): Promise<{ result: DoctorProfile[] }> {
    const suffix = status ? `?status=${status}` : "";
    return this.request("GET", `/doctors${suffix}`);
  }

  listComplaints(): Promise<{ result: Complaint[] }> {
    return this.request("GET", "/complaints");
  }

  doctor(id: string): Promise<{ result: DoctorProfile }> {
    return this.request("GET", `/doctors/${encodeURIComponent(id)}`);
  }

  registerDoctor(profile: { name: string; specialty: string }): Promise<InvokeResponse<DoctorProfile>> {
    return this.request("POST", "/doctors", profile);
  }

  approveDoctor(id: string, decision: "approve" | "reject"): Promise<InvokeResponse<DoctorProfile>> {
    return this.request("POST", `/doctors/${encodeURIComponent(id)}/approve`, { decision });
  }

  submitCredential(doctorId: string, body: { degree: string; institution: string; doc_digest?: string }) {
    return this.request<InvokeResponse<{ credential_id: string; verified: boolean }>>(
      "POST",
      `/doctors/${encodeURIComponent(doctorId)}/credentials`,
      body,
    );
  }

  approveCredential(credentialId: string) {
    return this.request<InvokeResponse<{ credential_id: string; verified: boolean }>>(
      "POST",
      `/credentials/${encodeURIComponent(credentialId)}/approve`,
      {},
    );
  }

  history(patientId: string): Promise<{ result: MedicalHistory }> {
    return this.request("GET", `/patients/${encodeURIComponent(patientId)}/history`);
  }

  prescribe(patientId: string, items: { medicine_id: string; dosage: string; days: number }[]) {
    return this.request<InvokeResponse<Prescription>>("POST", "/prescriptions", {
      patient_id: patientId,
      items,
    });
  }

  requestAppointment(doctorId: string, slot: number): Promise<InvokeResponse<Appointment>> {
    return this.request("POST", "/appointments", { doctor_id: doctorId, slot });
  }

  confirmAppointment(apptId: string): Promise<InvokeResponse<Appointment>> {
    return this.request("POST", `/appointments/${encodeURIComponent(apptId)}/confirm`, {});
  }

  grantConsent(doctorId: string, ttlMs?: number): Promise<InvokeResponse<object>> {
    return this.request("POST", "/consents", { doctor_id: doctorId, ttl_ms: ttlMs });
  }

  fileComplaint(subject: string, body: string, severity: string): Promise<InvokeResponse<Complaint>> {
    return this.request("POST", "/complaints", { subject, body, severity });
  }

  complaint(id: string): Promise<{ result: Complaint }> {
    return this.request("GET", `/complaints/${encodeURIComponent(id)}`);
  }

  reviewComplaint(id: string, action: "start_review" | "resolve"): Promise<InvokeResponse<Complaint>> {
    return this.request("POST", `/complaints/${encodeURIComponent(id)}/review`, { action });
  }

  recordDistribution(body: { medicine_id: string; facility: string; quantity: number }) {
    return this.request<InvokeResponse<object>>("POST", "/distributions", body);
  }

  tendency(doctorId: string): Promise<{ result: Record<string, number> }> {
    return this.request("GET", `/analytics/tendency/${encodeURIComponent(doctorId)}`);
  }

  stats(groupBy: "specialty" | "medicine"): Promise<{ result: Record<string, number | string> }> {
    return this.request("GET", `/analytics/stats?group_by=${groupBy}`);
  }
}
