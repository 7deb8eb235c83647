"""Error types shared across the ledger, identity, ordering and gateway layers."""


class HealthDltError(Exception):
    """Base class for every error raised by this package."""


# --- ledger ---

class ChainLinkError(HealthDltError):
    """Block's prev_hash does not match the hash of the previous header."""


class HeightError(HealthDltError):
    """Block number is not exactly last height + 1."""


class OversizeError(HealthDltError):
    """Encoded block or transaction exceeds the 1 MiB cap."""


class EmptyConsortium(HealthDltError):
    """Genesis requested for a consortium with no organizations."""


# --- identity / auth ---

class AlreadyBootstrapped(HealthDltError):
    """Default admin was already enrolled for this organization."""


class DuplicateIdentity(HealthDltError):
    """identity_id already enrolled in this organization."""


class InvalidIdentity(HealthDltError):
    """Login identity not present in the wallet."""


class InvalidPassword(HealthDltError):
    """Login password digest does not match the stored record."""


class InvalidSignature(HealthDltError):
    """A signature failed verification."""


class AuthorizationError(HealthDltError):
    """Caller's role does not permit the requested operation."""


class SessionExpired(HealthDltError):
    """Session token missing, unknown, or idle past its expiry."""


# --- chaincode ---

class ChaincodeError(HealthDltError):
    """Contract function raised an unexpected failure."""


class ValidationError(HealthDltError):
    """Argument failed a contract-level validity check."""


class Duplicate(HealthDltError):
    """Entity with this id already exists."""


class NotPending(HealthDltError):
    """Decision applied to a profile that is not in the pending state."""


class UnknownDoctor(HealthDltError):
    """Referenced doctor does not exist or is not approved."""


class UnknownMedicine(HealthDltError):
    """Referenced medicine is not in the registry."""


class UnauthorizedMedicine(HealthDltError):
    """Medicine exists but is not government-authorized."""


class SlotTaken(HealthDltError):
    """An appointment is already confirmed for this doctor and slot."""


class ConsentRequired(HealthDltError):
    """Doctor has no consent grant from the patient."""


class ConsentExpired(HealthDltError):
    """Consent grant exists but its expiry has passed."""


# --- ordering / network ---

class NotLeader(HealthDltError):
    """Submission sent to a non-leader orderer; carries a leader hint."""

    def __init__(self, hint=None):
        super().__init__(f"not leader (hint: {hint})")
        self.hint = hint


class PolicyUnsatisfied(HealthDltError):
    """Transaction lacks the endorsements the policy requires."""


class TimeoutError(HealthDltError):  # noqa: A001 - deliberate, scoped to this package
    """Waited past the deadline for a commit or a predicate."""


class ConfigError(HealthDltError):
    """Topology configuration is invalid; message names the offending field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class UnknownNode(HealthDltError):
    """Fault injection addressed a node that is not in the topology."""


class BindError(HealthDltError):
    """HTTP service could not bind its configured address."""


# --- documents / load test ---

class NotFound(HealthDltError):
    """Requested entity or document does not exist."""


class SizeLimit(HealthDltError):
    """Uploaded document exceeds the configured size limit."""


class EmptyInput(HealthDltError):
    """APDEX analysis invoked on an empty sample list."""


class TargetUnreachable(HealthDltError):
    """Load-test target did not answer the reachability probe."""
