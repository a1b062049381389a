"""Bit-exact graph6 codec for the order range this package supports (n <= 32).

The format: one byte N(n) = n + 63 for n <= 62, then the upper triangle of
the adjacency matrix read column by column (x01, x02, x12, x03, ...), packed
big-endian six bits per byte, zero-padded, each byte offset by 63.
"""

from __future__ import annotations

from .graphs import MAX_ORDER, Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input."""


def encode(g: Graph) -> str:
    if g.n > MAX_ORDER:
        raise Graph6Error(f"order {g.n} exceeds the supported cap {MAX_ORDER}")
    out = [chr(g.n + 63)]
    bits = 0
    nbits = 0
    for col in range(1, g.n):
        column = g.adj[col]
        for row in range(col):
            bits = (bits << 1) | (column >> row & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(bits + 63))
                bits = 0
                nbits = 0
    if nbits:
        bits <<= 6 - nbits
        out.append(chr(bits + 63))
    return "".join(out)


def decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):].strip()
    if not s:
        raise Graph6Error("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise Graph6Error("character outside the graph6 alphabet")
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error("multi-byte order encoding not supported (order cap is 32)")
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds the supported cap {MAX_ORDER}")
    body = s[1:]
    nbits = n * (n - 1) // 2
    expect = (nbits + 5) // 6
    if len(body) != expect:
        raise Graph6Error(f"expected {expect} payload characters, got {len(body)}")
    adj = [0] * n
    idx = 0
    row, col = 0, 1
    for c in body:
        chunk = ord(c) - 63
        for k in range(5, -1, -1):
            bit = chunk >> k & 1
            if idx < nbits:
                if bit:
                    adj[row] |= 1 << col
                    adj[col] |= 1 << row
                idx += 1
                row += 1
                if row == col:
                    row, col = 0, col + 1
            elif bit:
                raise Graph6Error("nonzero padding bits")
    return Graph(n, tuple(adj))
