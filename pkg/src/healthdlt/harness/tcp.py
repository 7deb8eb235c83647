"""TCP transport for ordering traffic: length-prefixed canonical messages.

Each frame is a 4-byte big-endian length followed by the canonical
encoding of {"from", "to", "payload"} where payload is the wire form from
ordering.messages. This is the process-per-node transport; the default
harness keeps nodes in-process and skips sockets entirely.
"""

from __future__ import annotations

import socket
import socketserver
import struct
import threading
from typing import Callable

from .. import canonical
from ..ordering.messages import SimMessage, payload_from_wire, payload_to_wire


def frame_message(msg: SimMessage) -> bytes:
    payload = canonical.encode(
        {"from": msg.from_node, "to": msg.to, "payload": payload_to_wire(msg.payload)}
    )
    return struct.pack(">I", len(payload)) + payload


def read_frame(sock: socket.socket) -> SimMessage | None:
    header = _read_exact(sock, 4)
    if header is None:
        return None
    (length,) = struct.unpack(">I", header)
    payload = _read_exact(sock, length)
    if payload is None:
        return None
    doc = canonical.decode(payload)
    return SimMessage(
        from_node=doc["from"],
        to=doc["to"],
        payload=payload_from_wire(doc["payload"]),
        deliver_at=0,
    )


def _read_exact(sock: socket.socket, n: int) -> bytes | None:
    buf = b""
    while len(buf) < n:
        chunk = sock.recv(n - len(buf))
        if not chunk:
            return None
        buf += chunk
    return buf


def send_message(host: str, port: int, msg: SimMessage) -> None:
    with socket.create_connection((host, port), timeout=5) as sock:
        sock.sendall(frame_message(msg))


class MessageServer:
    """Listens on an orderer port and hands decoded messages to a callback."""

    def __init__(self, host: str, port: int, handler: Callable[[SimMessage], None]):
        outer = self

        class _Handler(socketserver.BaseRequestHandler):
            def handle(self):
                while True:
                    msg = read_frame(self.request)
                    if msg is None:
                        return
                    outer.handler(msg)

        self.handler = handler
        self.server = socketserver.ThreadingTCPServer((host, port), _Handler)
        self.server.daemon_threads = True
        self.port = self.server.server_address[1]
        self._thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    def start(self) -> None:
        self._thread.start()

    def stop(self) -> None:
        self.server.shutdown()
        self.server.server_close()
