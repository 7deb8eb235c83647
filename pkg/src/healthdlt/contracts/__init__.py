"""Healthcare smart contracts executed by endorsing peers."""

from .context import ChaincodeStub, ExecutionResult, InvokerContext, execute
from .registry import AUTHORIZATION_MATRIX, REGISTRY, STAKEHOLDERS

__all__ = [
    "AUTHORIZATION_MATRIX",
    "ChaincodeStub",
    "ExecutionResult",
    "InvokerContext",
    "REGISTRY",
    "STAKEHOLDERS",
    "execute",
]
