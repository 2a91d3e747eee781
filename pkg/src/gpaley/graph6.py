"""graph6 encoding (the format used by nauty/geng and friends)."""

import numpy as np

from .graph_core import Graph

HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if data[1] != 126:
        vals = [c - 63 for c in data[1:4]]
        return (vals[0] << 12) | (vals[1] << 6) | vals[2], 4
    n = 0
    for c in data[2:8]:
        n = (n << 6) | (c - 63)
    return n, 8


def _upper_bits(adj) -> np.ndarray:
    # column-wise upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    j, i = np.tril_indices(adj.shape[0], -1)
    return adj[i, j]


def to_graph6(g: Graph, header: bool = False) -> str:
    bits = _upper_bits(g.adjacency).astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8) if len(bits) else np.zeros(0, np.uint8)
    body = _encode_n(g.n) + bytes((groups + 63).tolist())
    return (HEADER if header else "") + body.decode("ascii")


def from_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    data = text.encode("ascii")
    if not data or any(c < 63 or c > 126 for c in data):
        raise ValueError("not a graph6 string")
    n, off = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = np.frombuffer(data[off:], dtype=np.uint8).astype(np.int64) - 63
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = ((body[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1)[:nbits]
    adj = np.zeros((n, n), dtype=bool)
    j, i = np.tril_indices(n, -1)
    adj[i, j] = bits.astype(bool)
    adj |= adj.T
    return Graph(adj)
