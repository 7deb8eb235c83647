"""Contract function registry and the declared authorization table.

AUTHORIZATION_MATRIX is the single source of truth for which stakeholder
role may invoke which function; the property tests enumerate it in full.
Finer ownership rules (a citizen reading only their own complaint, a
doctor needing consent) are enforced inside the handlers and still raise
AuthorizationError.
"""

from __future__ import annotations

from ..errors import AuthorizationError
from . import health, system
from .context import InvokerContext

STAKEHOLDERS = ("authority", "doctor", "nagorik")

# Sentinel: callable by any enrolled admin certificate regardless of org role.
ADMIN_CERT = "admin-cert"

REGISTRY = {
    "identity.register": system.register_identity,
    "health.register_doctor": health.register_doctor,
    "health.approve_doctor": health.approve_doctor,
    "health.submit_credential_update": health.submit_credential_update,
    "health.approve_credential": health.approve_credential,
    "health.get_doctor": health.get_doctor,
    "health.find_specialist": health.find_specialist,
    "health.list_doctors": health.list_doctors,
    "health.add_medicine": health.add_medicine,
    "health.set_medicine_authorized": health.set_medicine_authorized,
    "health.get_medicines": health.get_medicines,
    "health.create_prescription": health.create_prescription,
    "health.request_appointment": health.request_appointment,
    "health.confirm_appointment": health.confirm_appointment,
    "health.cancel_appointment": health.cancel_appointment,
    "health.file_complaint": health.file_complaint,
    "health.get_complaint_status": health.get_complaint_status,
    "health.list_complaints": health.list_complaints,
    "health.review_complaint": health.review_complaint,
    "health.grant_consent": health.grant_consent,
    "health.get_medical_history": health.get_medical_history,
    "health.record_distribution": health.record_distribution,
    "health.prescribing_tendency": health.prescribing_tendency,
    "health.anonymized_stats": health.anonymized_stats,
    "health.post_news": health.post_news,
    "health.get_news": health.get_news,
}

AUTHORIZATION_MATRIX: dict[str, frozenset[str]] = {
    "identity.register": frozenset({ADMIN_CERT}),
    "health.register_doctor": frozenset({"doctor"}),
    "health.approve_doctor": frozenset({"authority"}),
    "health.submit_credential_update": frozenset({"doctor"}),
    "health.approve_credential": frozenset({"authority"}),
    "health.get_doctor": frozenset(STAKEHOLDERS),
    "health.find_specialist": frozenset(STAKEHOLDERS),
    "health.list_doctors": frozenset({"authority"}),
    "health.add_medicine": frozenset({"authority"}),
    "health.set_medicine_authorized": frozenset({"authority"}),
    "health.get_medicines": frozenset(STAKEHOLDERS),
    "health.create_prescription": frozenset({"doctor"}),
    "health.request_appointment": frozenset({"nagorik"}),
    "health.confirm_appointment": frozenset({"doctor", "nagorik"}),
    "health.cancel_appointment": frozenset({"doctor", "nagorik"}),
    "health.file_complaint": frozenset({"nagorik"}),
    "health.get_complaint_status": frozenset({"nagorik", "authority"}),
    "health.list_complaints": frozenset({"nagorik", "authority"}),
    "health.review_complaint": frozenset({"authority"}),
    "health.grant_consent": frozenset({"nagorik"}),
    "health.get_medical_history": frozenset({"doctor", "nagorik"}),
    "health.record_distribution": frozenset({"authority"}),
    "health.prescribing_tendency": frozenset({"authority"}),
    "health.anonymized_stats": frozenset({"authority"}),
    "health.post_news": frozenset({"authority"}),
    "health.get_news": frozenset(STAKEHOLDERS),
}

# Functions that never write; the gateway serves these from a snapshot
# without entering the ordering pipeline.
READ_ONLY_FNS = frozenset(
    {
        "health.get_doctor",
        "health.find_specialist",
        "health.list_doctors",
        "health.get_medicines",
        "health.get_complaint_status",
        "health.list_complaints",
        "health.get_medical_history",
        "health.prescribing_tendency",
        "health.anonymized_stats",
        "health.get_news",
    }
)


def check_authorized(fn: str, ctx: InvokerContext) -> None:
    allowed = AUTHORIZATION_MATRIX[fn]
    if ADMIN_CERT in allowed:
        if ctx.cert_role != "admin":
            raise AuthorizationError("an user can only perform its general operations")
        return
    if ctx.stakeholder not in allowed:
        raise AuthorizationError(
            f"{ctx.stakeholder or 'unknown'} role may not invoke {fn}"
        )
