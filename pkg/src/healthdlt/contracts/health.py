"""The healthcare contracts for the three stakeholder roles.

Central authority: approve doctors and credentials, manage the medicine
registry, review complaints, record distributions, run anonymized
analytics, publish news. Doctors: register a profile, update credentials,
prescribe (with threat warnings), read consented histories. Citizens
(nagorik): appointments, complaints with a deterministic priority rank,
consent grants, specialist search, their own records.

World-state keys follow health/<entity>/<id>.
"""

from __future__ import annotations

from ..errors import (
    AuthorizationError,
    ConsentExpired,
    ConsentRequired,
    Duplicate,
    NotFound,
    NotPending,
    SlotTaken,
    UnauthorizedMedicine,
    UnknownDoctor,
    UnknownMedicine,
    ValidationError,
)
from .context import ChaincodeStub, InvokerContext

DOCTOR = "health/doctor/"
PATIENT = "health/patient/"
MEDICINE = "health/medicine/"
RX = "health/rx/"
APPOINTMENT = "health/appt/"
APPT_SLOT = "health/appt-slot/"
COMPLAINT = "health/complaint/"
DISTRIBUTION = "health/distribution/"
NEWS = "health/news/"

SEVERITIES = ("low", "medium", "high")
DEFAULT_CONSENT_TTL_MS = 24 * 60 * 60 * 1000
ANONYMITY_THRESHOLD = 5
SUPPRESSED = "suppressed"


def _require(entry, error):
    if entry is None:
        raise error
    return entry


# --- doctors ---

def register_doctor(ctx: InvokerContext, stub: ChaincodeStub, profile: dict) -> dict:
    doctor_id = profile.get("doctor_id")
    if not doctor_id:
        raise ValidationError("profile.doctor_id is required")
    if doctor_id != ctx.identity_id:
        raise ValidationError("doctors may only register their own profile")
    if stub.get(DOCTOR + doctor_id) is not None:
        raise Duplicate(f"doctor {doctor_id} already registered")
    record = {
        "doctor_id": doctor_id,
        "name": profile.get("name", ""),
        "specialty": profile.get("specialty", ""),
        "status": "pending",
        "credentials": [],
    }
    stub.put(DOCTOR + doctor_id, record)
    return record


def approve_doctor(ctx: InvokerContext, stub: ChaincodeStub, doctor_id: str, decision: str) -> dict:
    if decision not in ("approve", "reject"):
        raise ValidationError(f"decision must be approve or reject, not {decision!r}")
    profile = _require(stub.get(DOCTOR + doctor_id), UnknownDoctor(doctor_id))
    if profile["status"] != "pending":
        raise NotPending(f"doctor {doctor_id} is {profile['status']}")
    profile["status"] = "approved" if decision == "approve" else "rejected"
    stub.put(DOCTOR + doctor_id, profile)
    return profile


def submit_credential_update(ctx: InvokerContext, stub: ChaincodeStub, credential: dict) -> dict:
    profile = _require(stub.get(DOCTOR + ctx.identity_id), UnknownDoctor(ctx.identity_id))
    if profile["status"] != "approved":
        raise AuthorizationError("only approved doctors may update credentials")
    entry = {
        "credential_id": f"{ctx.identity_id}:{len(profile['credentials'])}",
        "degree": credential.get("degree", ""),
        "institution": credential.get("institution", ""),
        "doc_digest": credential.get("doc_digest", ""),
        "verified": False,
    }
    profile["credentials"].append(entry)
    stub.put(DOCTOR + ctx.identity_id, profile)
    return entry


def approve_credential(ctx: InvokerContext, stub: ChaincodeStub, credential_id: str) -> dict:
    doctor_id, _, _ = credential_id.rpartition(":")
    profile = _require(stub.get(DOCTOR + doctor_id), NotFound(credential_id))
    for entry in profile["credentials"]:
        if entry["credential_id"] == credential_id:
            entry["verified"] = True
            stub.put(DOCTOR + doctor_id, profile)
            return entry
    raise NotFound(credential_id)


def _visible_profile(profile: dict, ctx: InvokerContext) -> dict:
    """Unverified credentials are visible only to the authority and the owner."""
    if ctx.stakeholder == "authority" or ctx.identity_id == profile["doctor_id"]:
        return profile
    shown = dict(profile)
    shown["credentials"] = [c for c in profile["credentials"] if c["verified"]]
    return shown


def get_doctor(ctx: InvokerContext, stub: ChaincodeStub, doctor_id: str) -> dict:
    profile = _require(stub.get(DOCTOR + doctor_id), NotFound(doctor_id))
    return _visible_profile(profile, ctx)


def find_specialist(ctx: InvokerContext, stub: ChaincodeStub, specialty: str) -> list[dict]:
    wanted = specialty.strip().lower()
    matches = []
    for _, profile in stub.scan(DOCTOR):
        if profile["status"] == "approved" and profile["specialty"].lower() == wanted:
            matches.append(_visible_profile(profile, ctx))
    return matches


def list_doctors(ctx: InvokerContext, stub: ChaincodeStub, status: str | None = None) -> list[dict]:
    """Authority view over the registry, e.g. the pending approval queue."""
    if status is not None and status not in ("pending", "approved", "rejected"):
        raise ValidationError(f"unknown status filter {status!r}")
    return [
        profile
        for _, profile in stub.scan(DOCTOR)
        if status is None or profile["status"] == status
    ]


# --- medicines ---

def add_medicine(ctx: InvokerContext, stub: ChaincodeStub, medicine: dict) -> dict:
    medicine_id = medicine.get("medicine_id")
    if not medicine_id:
        raise ValidationError("medicine.medicine_id is required")
    if stub.get(MEDICINE + medicine_id) is not None:
        raise Duplicate(f"medicine {medicine_id} already registered")
    record = {
        "medicine_id": medicine_id,
        "generic_name": medicine.get("generic_name", ""),
        "authorized": bool(medicine.get("authorized", True)),
        "free_under_esp": bool(medicine.get("free_under_esp", False)),
        "contraindications": list(medicine.get("contraindications", [])),
    }
    stub.put(MEDICINE + medicine_id, record)
    return record


def set_medicine_authorized(ctx: InvokerContext, stub: ChaincodeStub, medicine_id: str, flag: bool) -> dict:
    record = _require(stub.get(MEDICINE + medicine_id), UnknownMedicine(medicine_id))
    record["authorized"] = bool(flag)
    stub.put(MEDICINE + medicine_id, record)
    return record


def get_medicines(ctx: InvokerContext, stub: ChaincodeStub) -> list[dict]:
    return [record for _, record in stub.scan(MEDICINE)]


# --- prescriptions ---

def _threat_warnings(items: list[dict], allergies: list[str], medicines: dict[str, dict]) -> list[str]:
    """Allergy hits plus pairwise contraindications; warns, never blocks."""
    warnings = []
    for item in items:
        if item["medicine_id"] in allergies:
            warnings.append(f"allergy: patient is allergic to {item['medicine_id']}")
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            a, b = items[i]["medicine_id"], items[j]["medicine_id"]
            if b in medicines[a]["contraindications"] or a in medicines[b]["contraindications"]:
                warnings.append(f"interaction: {a} with {b}")
    return warnings


def create_prescription(ctx: InvokerContext, stub: ChaincodeStub, patient_id: str, items: list) -> dict:
    profile = stub.get(DOCTOR + ctx.identity_id)
    if profile is None or profile["status"] != "approved":
        raise AuthorizationError("prescribing requires an approved doctor profile")
    patient = _require(stub.get(PATIENT + patient_id), NotFound(f"patient {patient_id}"))
    expiry = patient["consents"].get(ctx.identity_id)
    if expiry is None:
        raise ConsentRequired(f"no consent from {patient_id}")
    if expiry < ctx.timestamp:
        raise ConsentExpired(f"consent from {patient_id} expired")

    medicines: dict[str, dict] = {}
    for item in items:
        medicine_id = item["medicine_id"]
        record = stub.get(MEDICINE + medicine_id)
        if record is None:
            raise UnknownMedicine(medicine_id)
        if not record["authorized"]:
            raise UnauthorizedMedicine(medicine_id)
        medicines[medicine_id] = record

    rx_id = ctx.new_id("rx")
    prescription = {
        "rx_id": rx_id,
        "doctor_id": ctx.identity_id,
        "patient_id": patient_id,
        "items": [
            {
                "medicine_id": item["medicine_id"],
                "dosage": item.get("dosage", ""),
                "days": int(item.get("days", 0)),
            }
            for item in items
        ],
        "warnings": _threat_warnings(items, patient["allergies"], medicines),
        "issued_at": ctx.timestamp,
    }
    stub.put(RX + rx_id, prescription)
    patient["history"].append({"kind": "prescription", "ref": rx_id, "at": ctx.timestamp})
    stub.put(PATIENT + patient_id, patient)
    return prescription


# --- appointments ---

def request_appointment(ctx: InvokerContext, stub: ChaincodeStub, doctor_id: str, slot: int) -> dict:
    profile = stub.get(DOCTOR + doctor_id)
    if profile is None or profile["status"] != "approved":
        raise UnknownDoctor(doctor_id)
    appointment = {
        "appt_id": ctx.new_id("appt"),
        "patient_id": ctx.identity_id,
        "doctor_id": doctor_id,
        "slot": int(slot),
        "status": "requested",
    }
    stub.put(APPOINTMENT + appointment["appt_id"], appointment)
    return appointment


def _participant(ctx: InvokerContext, appointment: dict) -> None:
    if ctx.identity_id not in (appointment["patient_id"], appointment["doctor_id"]):
        raise AuthorizationError("not a participant of this appointment")


def confirm_appointment(ctx: InvokerContext, stub: ChaincodeStub, appt_id: str) -> dict:
    appointment = _require(stub.get(APPOINTMENT + appt_id), NotFound(appt_id))
    _participant(ctx, appointment)
    if appointment["status"] != "requested":
        raise ValidationError(f"cannot confirm a {appointment['status']} appointment")
    slot_key = f"{APPT_SLOT}{appointment['doctor_id']}/{appointment['slot']}"
    if stub.get(slot_key) is not None:
        raise SlotTaken(slot_key)
    stub.put(slot_key, {"appt_id": appt_id})
    appointment["status"] = "confirmed"
    stub.put(APPOINTMENT + appt_id, appointment)
    return appointment


def cancel_appointment(ctx: InvokerContext, stub: ChaincodeStub, appt_id: str) -> dict:
    appointment = _require(stub.get(APPOINTMENT + appt_id), NotFound(appt_id))
    _participant(ctx, appointment)
    if appointment["status"] == "cancelled":
        raise ValidationError("appointment already cancelled")
    if appointment["status"] == "confirmed":
        stub.delete(f"{APPT_SLOT}{appointment['doctor_id']}/{appointment['slot']}")
    appointment["status"] = "cancelled"
    stub.put(APPOINTMENT + appt_id, appointment)
    return appointment


# --- complaints ---

def file_complaint(ctx: InvokerContext, stub: ChaincodeStub, subject: str, body: str, severity: str) -> dict:
    if severity not in SEVERITIES:
        raise ValidationError(f"severity must be one of {SEVERITIES}")
    complaint = {
        "complaint_id": ctx.new_id("cmp"),
        "patient_id": ctx.identity_id,
        "subject": subject,
        "body": body,
        "severity": severity,
        "status": "open",
        "filed_at": ctx.timestamp,
    }
    stub.put(COMPLAINT + complaint["complaint_id"], complaint)
    return complaint


def _complaint_ranking(stub: ChaincodeStub) -> dict[str, int]:
    """Deterministic triage order over unresolved complaints.

    Severity first (high before low), then age (older first); rank 1 is
    the most urgent. Recomputed on read so ranks never cause write
    conflicts.
    """
    active = [c for _, c in stub.scan(COMPLAINT) if c["status"] != "resolved"]
    active.sort(
        key=lambda c: (-SEVERITIES.index(c["severity"]), c["filed_at"], c["complaint_id"])
    )
    return {c["complaint_id"]: i + 1 for i, c in enumerate(active)}


def get_complaint_status(ctx: InvokerContext, stub: ChaincodeStub, complaint_id: str) -> dict:
    complaint = _require(stub.get(COMPLAINT + complaint_id), NotFound(complaint_id))
    if ctx.stakeholder == "nagorik" and complaint["patient_id"] != ctx.identity_id:
        raise AuthorizationError("complaints are visible to their owner and the authority")
    rank = _complaint_ranking(stub).get(complaint_id)
    return {**complaint, "priority_rank": rank}


def list_complaints(ctx: InvokerContext, stub: ChaincodeStub) -> list[dict]:
    """Authority sees the whole board; citizens see only their own filings."""
    ranking = _complaint_ranking(stub)
    items = []
    for _, complaint in stub.scan(COMPLAINT):
        if ctx.stakeholder == "nagorik" and complaint["patient_id"] != ctx.identity_id:
            continue
        items.append({**complaint, "priority_rank": ranking.get(complaint["complaint_id"])})
    items.sort(
        key=lambda c: (c["priority_rank"] is None, c["priority_rank"] or 0, c["complaint_id"])
    )
    return items


def review_complaint(ctx: InvokerContext, stub: ChaincodeStub, complaint_id: str, action: str) -> dict:
    complaint = _require(stub.get(COMPLAINT + complaint_id), NotFound(complaint_id))
    transitions = {"start_review": ("open", "in_review"), "resolve": ("in_review", "resolved")}
    if action not in transitions:
        raise ValidationError(f"action must be one of {sorted(transitions)}")
    expected, target = transitions[action]
    if complaint["status"] != expected:
        raise ValidationError(
            f"cannot {action} a {complaint['status']} complaint (needs {expected})"
        )
    complaint["status"] = target
    stub.put(COMPLAINT + complaint_id, complaint)
    return complaint


# --- consent and history ---

def grant_consent(ctx: InvokerContext, stub: ChaincodeStub, doctor_id: str, ttl_ms: int | None = None) -> dict:
    if stub.get(DOCTOR + doctor_id) is None:
        raise UnknownDoctor(doctor_id)
    patient = _require(stub.get(PATIENT + ctx.identity_id), NotFound(ctx.identity_id))
    expiry = ctx.timestamp + (DEFAULT_CONSENT_TTL_MS if ttl_ms is None else int(ttl_ms))
    patient["consents"][doctor_id] = expiry
    stub.put(PATIENT + ctx.identity_id, patient)
    return {"patient_id": ctx.identity_id, "doctor_id": doctor_id, "expires_at": expiry}


def get_medical_history(ctx: InvokerContext, stub: ChaincodeStub, patient_id: str) -> dict:
    patient = _require(stub.get(PATIENT + patient_id), NotFound(patient_id))
    if ctx.stakeholder == "doctor":
        expiry = patient["consents"].get(ctx.identity_id)
        if expiry is None:
            raise ConsentRequired(f"no consent from {patient_id}")
        if expiry < ctx.timestamp:
            raise ConsentExpired(f"consent from {patient_id} expired")
    elif ctx.identity_id != patient_id:
        raise AuthorizationError("patients may only read their own records")
    entries = []
    for ref in patient["history"]:
        entry = dict(ref)
        if ref["kind"] == "prescription":
            entry["record"] = stub.get(RX + ref["ref"])
        entries.append(entry)
    return {
        "patient_id": patient_id,
        "allergies": patient["allergies"],
        "history": entries,
    }


# --- authority records and analytics ---

def record_distribution(ctx: InvokerContext, stub: ChaincodeStub, record: dict) -> dict:
    quantity = int(record.get("quantity", 0))
    if quantity <= 0:
        raise ValidationError("quantity must be positive")
    if stub.get(MEDICINE + record["medicine_id"]) is None:
        raise UnknownMedicine(record["medicine_id"])
    entry = {
        "record_id": ctx.new_id("dist"),
        "medicine_id": record["medicine_id"],
        "facility": record.get("facility", ""),
        "quantity": quantity,
        "recorded_by": ctx.identity_id,
        "at": ctx.timestamp,
    }
    stub.put(DISTRIBUTION + entry["record_id"], entry)
    return entry


def prescribing_tendency(ctx: InvokerContext, stub: ChaincodeStub, doctor_id: str) -> dict:
    counts: dict[str, int] = {}
    for _, rx in stub.scan(RX):
        if rx["doctor_id"] != doctor_id:
            continue
        for item in rx["items"]:
            counts[item["medicine_id"]] = counts.get(item["medicine_id"], 0) + 1
    return dict(sorted(counts.items()))


def anonymized_stats(ctx: InvokerContext, stub: ChaincodeStub, group_by: str) -> dict:
    """Aggregate prescription counts with small groups suppressed.

    A group's count is published only when at least ANONYMITY_THRESHOLD
    distinct patients contribute to it; outputs never carry patient ids.
    """
    if group_by not in ("specialty", "medicine"):
        raise ValidationError("group_by must be specialty or medicine")
    counts: dict[str, int] = {}
    members: dict[str, set] = {}
    for _, rx in stub.scan(RX):
        if group_by == "medicine":
            groups = {item["medicine_id"] for item in rx["items"]}
        else:
            profile = stub.get(DOCTOR + rx["doctor_id"])
            groups = {profile["specialty"]} if profile else set()
        for group in groups:
            counts[group] = counts.get(group, 0) + 1
            members.setdefault(group, set()).add(rx["patient_id"])
    return {
        group: (counts[group] if len(members[group]) >= ANONYMITY_THRESHOLD else SUPPRESSED)
        for group in sorted(counts)
    }


# --- news ---

def post_news(ctx: InvokerContext, stub: ChaincodeStub, title: str, body: str) -> dict:
    item = {
        "news_id": ctx.new_id("news"),
        "title": title,
        "body": body,
        "published_by": ctx.identity_id,
        "at": ctx.timestamp,
    }
    stub.put(NEWS + item["news_id"], item)
    return item


def get_news(ctx: InvokerContext, stub: ChaincodeStub) -> list[dict]:
    items = [item for _, item in stub.scan(NEWS)]
    items.sort(key=lambda n: (-n["at"], n["news_id"]))
    return items
