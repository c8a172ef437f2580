"""nauty graph6 / digraph6 text formats.

graph6:   N(n) followed by the upper triangle x(0,1) x(0,2) x(1,2) x(0,3) ...
          (column by column), packed big-endian into 6-bit groups, each
          written as chr(63 + value), zero padded.
digraph6: '&' N(n) followed by the full adjacency matrix row by row.

N(n) is chr(63 + n) for n <= 62, '~' plus three 6-bit groups for
n <= 258047, and '~~' plus six groups beyond that.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, TextIO

from .graphs import Digraph, UndirectedGraph, transpose_rows

GRAPH6_HEADER = ">>graph6<<"
DIGRAPH6_HEADER = ">>digraph6<<"
_BAD_CHAR = re.compile(r"[^?-~]")


class FormatError(ValueError):
    """Base class for malformed graph6/digraph6 input."""


class CharacterRangeError(FormatError):
    pass


class LengthFieldError(FormatError):
    pass


class BodyLengthError(FormatError):
    pass


class PaddingError(FormatError):
    pass


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("vertex count too large for graph6")


def _decode_n(data: str) -> tuple[int, int]:
    """Return (n, number of characters used)."""
    if not data:
        raise LengthFieldError("missing size field")
    if data[0] != "~":
        return ord(data[0]) - 63, 1
    if len(data) >= 2 and data[1] == "~":
        if len(data) < 8:
            raise LengthFieldError("truncated 8-byte size field")
        n = 0
        for ch in data[2:8]:
            n = n << 6 | (ord(ch) - 63)
        if n <= 258047:
            raise LengthFieldError("8-byte size field used for a small n")
        return n, 8
    if len(data) < 4:
        raise LengthFieldError("truncated 4-byte size field")
    n = 0
    for ch in data[1:4]:
        n = n << 6 | (ord(ch) - 63)
    if n <= 62:
        raise LengthFieldError("4-byte size field used for n <= 62")
    return n, 4


def _check_chars(data: str):
    bad = _BAD_CHAR.search(data)
    if bad:
        raise CharacterRangeError(f"character {bad.group()!r} at position {bad.start()} outside '?'..'~'")


_TO_BITS = {63 + v: format(v, "06b") for v in range(64)}
_FROM_BITS = {format(v, "06b"): chr(63 + v) for v in range(64)}
_SIXES = re.compile(r"[01]{6}")


def _pack(bitstr: str) -> str:
    bitstr += "0" * (-len(bitstr) % 6)
    return "".join(map(_FROM_BITS.__getitem__, _SIXES.findall(bitstr)))


def _unpack(body: str, nbits: int) -> str:
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise BodyLengthError(f"expected {expected} data characters, got {len(body)}")
    out = body.translate(_TO_BITS)
    if "1" in out[nbits:]:
        raise PaddingError("nonzero padding bits")
    return out[:nbits]


def encode_graph6(g: UndirectedGraph) -> str:
    # column j holds the pairs (i, j) for i < j, least index first
    adj = g.adj
    bitstr = "".join(format(adj[j] & ((1 << j) - 1), f"0{j}b")[::-1] for j in range(1, g.n))
    return _encode_n(g.n) + _pack(bitstr)


def decode_graph6(line: str) -> UndirectedGraph:
    data = line.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if data.startswith("&"):
        raise FormatError("digraph6 line given to the graph6 decoder")
    if data.startswith(":") or data.startswith(";"):
        raise FormatError("sparse6 is not supported")
    _check_chars(data)
    n, used = _decode_n(data)
    bitstr = _unpack(data[used:], n * (n - 1) // 2)
    lower = [0] * n
    start = 0
    for j in range(1, n):
        lower[j] = int(bitstr[start:start + j][::-1], 2)
        start += j
    upper = transpose_rows(lower, n)
    return UndirectedGraph(n, tuple(lo | up for lo, up in zip(lower, upper)))


def encode_digraph6(d: Digraph) -> str:
    n = d.n
    bitstr = "".join(format(row, f"0{n}b")[::-1] if n else "" for row in d.out)
    return "&" + _encode_n(n) + _pack(bitstr)


def decode_digraph6(line: str) -> Digraph:
    data = line.strip()
    if data.startswith(DIGRAPH6_HEADER):
        data = data[len(DIGRAPH6_HEADER):]
    if not data.startswith("&"):
        raise FormatError("digraph6 lines start with '&'")
    data = data[1:]
    _check_chars(data)
    n, used = _decode_n(data)
    bitstr = _unpack(data[used:], n * n)
    out = []
    for i in range(n):
        row_bits = bitstr[i * n:(i + 1) * n]
        if row_bits[i] == "1":
            raise FormatError(f"self-loop at vertex {i}")
        out.append(int(row_bits[::-1], 2) if n else 0)
    return Digraph(n, tuple(out))


def decode_any(line: str) -> UndirectedGraph | Digraph:
    data = line.strip()
    if data.startswith("&") or data.startswith(DIGRAPH6_HEADER):
        return decode_digraph6(data)
    return decode_graph6(data)


def read_lines(stream: TextIO) -> Iterator[tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def write_graph6(graphs: Iterable[UndirectedGraph], stream: TextIO):
    for g in graphs:
        stream.write(encode_graph6(g) + "\n")
