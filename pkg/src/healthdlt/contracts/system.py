"""System contract: on-ledger identity records written at registration.

Only org admins register members, and only inside their own organization.
Registering a citizen also creates the skeleton patient record so medical
history accumulates against it from the first prescription.
"""

from __future__ import annotations

from ..errors import AuthorizationError, DuplicateIdentity, ValidationError
from .context import ChaincodeStub, InvokerContext
from .health import PATIENT


def register_identity(ctx: InvokerContext, stub: ChaincodeStub, record: dict) -> dict:
    if ctx.cert_role != "admin":
        raise AuthorizationError("an user can only perform its general operations")
    org = record.get("org")
    identity_id = record.get("identity_id")
    if not org or not identity_id:
        raise ValidationError("identity record needs org and identity_id")
    if org != ctx.org:
        raise AuthorizationError("admins register members of their own organization only")
    key = f"identity/{org}/{identity_id}"
    if stub.get(key) is not None:
        raise DuplicateIdentity(identity_id)
    stub.put(key, record)
    if ctx.stakeholder == "nagorik" and record.get("role") == "user":
        attrs = record.get("attrs", {})
        stub.put(
            PATIENT + identity_id,
            {
                "patient_id": identity_id,
                "demographics": attrs.get("demographics", {}),
                "allergies": list(attrs.get("allergies", [])),
                "history": [],
                "consents": {},
            },
        )
    return {"registered": identity_id, "org": org}
