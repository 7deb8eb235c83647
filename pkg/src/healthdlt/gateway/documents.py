"""Content-addressed off-chain document store.

Bulky artifacts (photos, scanned PDFs) never enter blocks; the chain holds
only their digests. Supplying the same content twice stores one copy and
returns the same digest.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass

from .. import canonical
from ..errors import NotFound, SizeLimit

DEFAULT_SIZE_LIMIT = 10 * 1024 * 1024


@dataclass
class OffChainDoc:
    digest: bytes
    content: bytes
    media_type: str
    size_bytes: int


class DocumentStore:
    def __init__(self, root: str | None = None, size_limit: int = DEFAULT_SIZE_LIMIT):
        self.root = root
        self.size_limit = size_limit
        self._docs: dict[bytes, OffChainDoc] = {}
        self._lock = threading.Lock()
        if root is not None:
            os.makedirs(root, exist_ok=True)
            for name in os.listdir(root):
                if name.endswith(".meta"):
                    continue
                with open(os.path.join(root, name), "rb") as fh:
                    content = fh.read()
                with open(os.path.join(root, f"{name}.meta"), "rb") as fh:
                    meta = canonical.decode(fh.read())
                digest = bytes.fromhex(name)
                self._docs[digest] = OffChainDoc(
                    digest=digest,
                    content=content,
                    media_type=meta["media_type"],
                    size_bytes=len(content),
                )

    def put(self, content: bytes, media_type: str) -> bytes:
        if len(content) > self.size_limit:
            raise SizeLimit(f"{len(content)} bytes exceeds limit {self.size_limit}")
        digest = canonical.digest(content)
        with self._lock:
            if digest in self._docs:
                return digest
            doc = OffChainDoc(
                digest=digest,
                content=content,
                media_type=media_type,
                size_bytes=len(content),
            )
            self._docs[digest] = doc
            if self.root is not None:
                path = os.path.join(self.root, digest.hex())
                with open(path, "wb") as fh:
                    fh.write(content)
                with open(f"{path}.meta", "wb") as fh:
                    fh.write(canonical.encode({"media_type": media_type}))
        return digest

    def get(self, digest: bytes) -> OffChainDoc:
        with self._lock:
            doc = self._docs.get(digest)
        if doc is None:
            raise NotFound(digest.hex())
        return doc

    def __len__(self) -> int:
        with self._lock:
            return len(self._docs)
