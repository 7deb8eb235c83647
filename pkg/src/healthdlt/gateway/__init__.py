"""Portal between clients and the ledger: the endorse-order-commit pipeline,
session handling, off-chain documents, and the HTTP API."""

from .documents import DocumentStore, OffChainDoc
from .service import CommitReceipt, GatewayConfig, GatewayService, TxInvalidated
from .sessions import Session, SessionRegistry
from .http_api import GatewayHTTPServer, serve_api

__all__ = [
    "CommitReceipt",
    "DocumentStore",
    "GatewayConfig",
    "GatewayHTTPServer",
    "GatewayService",
    "OffChainDoc",
    "Session",
    "SessionRegistry",
    "TxInvalidated",
    "serve_api",
]
