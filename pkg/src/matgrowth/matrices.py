"""Exact 0/1-matrix and nonnegative-integer-matrix arithmetic.

The two value types are immutable and hashable:

* :class:`BitMatrix`: a square b x b matrix over {0,1}, read as the adjacency
  matrix of a digraph on vertices 1..b.  All public indices are 1-based.
* :class:`NatMatrix`: a square matrix of arbitrary-precision nonnegative
  integers, the type of powers of a :class:`BitMatrix`.

Everything here is exact: entries are Python ints, so powers never overflow
regardless of growth rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import MatrixFormatError, SizeMismatchError

# Iterated products below this exponent, repeated squaring above.
_SQUARING_THRESHOLD = 8


@dataclass(frozen=True)
class BitMatrix:
    """Square {0,1} matrix, stored as a tuple of row tuples.

    Construct through :func:`bitmatrix` / :meth:`from_text` for validated
    members of the b>=2 nonzero family; the bare dataclass constructor also
    admits 1x1 blocks (including the 1x1 zero) used internally by the block
    builders.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b = len(self.rows)
        if b == 0:
            raise MatrixFormatError("empty matrix")
        for row in self.rows:
            if len(row) != b:
                raise MatrixFormatError("matrix must be square")
            for x in row:
                if x not in (0, 1):
                    raise MatrixFormatError(f"entries must be 0 or 1, got {x!r}")
        if b >= 2 and not any(any(row) for row in self.rows):
            raise MatrixFormatError("the all-zero matrix is not admitted")

    @property
    def b(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based position (i, j)."""
        return self.rows[i - 1][j - 1]

    def row_nonzero(self, i: int) -> bool:
        return any(self.rows[i - 1])

    def col_nonzero(self, j: int) -> bool:
        return any(row[j - 1] for row in self.rows)

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex i (1-based, position i-1) the sorted tuple of j
        with an edge i -> j."""
        return tuple(
            tuple(j + 1 for j, x in enumerate(row) if x) for row in self.rows
        )

    def out_degree(self, i: int) -> int:
        return len(self.out_neighbors[i - 1])

    def to_array(self) -> np.ndarray:
        """int64 numpy copy (kernel input)."""
        return np.array(self.rows, dtype=np.int64)

    def to_text(self) -> str:
        return ";".join("".join(str(x) for x in row) for row in self.rows)

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        """Parse the bit-exact text form: rows of '0'/'1', joined by ';' or
        newlines.  Example: ``"110;010;001"``."""
        raw = text.replace("\n", ";")
        parts = [p.strip() for p in raw.split(";")]
        parts = [p for p in parts if p]
        if not parts:
            raise MatrixFormatError("no rows found")
        rows = []
        for p in parts:
            row = []
            for ch in p:
                if ch not in "01":
                    raise MatrixFormatError(f"invalid character {ch!r} in row {p!r}")
                row.append(int(ch))
            rows.append(tuple(row))
        return bitmatrix(rows)

    def __str__(self) -> str:
        return self.to_text()


def bitmatrix(rows: Iterable[Sequence[int]]) -> BitMatrix:
    """Validated constructor for the b>=2 nonzero family."""
    m = BitMatrix(tuple(tuple(int(x) for x in row) for row in rows))
    if m.b < 2:
        raise MatrixFormatError("matrices of side 1 are not admitted (b >= 2)")
    return m


@dataclass(frozen=True)
class NatMatrix:
    """Square matrix of arbitrary-precision nonnegative integers."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b = len(self.rows)
        if b == 0:
            raise MatrixFormatError("empty matrix")
        for row in self.rows:
            if len(row) != b:
                raise MatrixFormatError("matrix must be square")
            for x in row:
                if x < 0:
                    raise MatrixFormatError(f"entries must be nonnegative, got {x}")

    @property
    def b(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i - 1][j - 1]

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def __mul__(self, other: "NatMatrix") -> "NatMatrix":
        return multiply(self, other)

    def __add__(self, other: "NatMatrix") -> "NatMatrix":
        if self.b != other.b:
            raise SizeMismatchError(f"sides differ: {self.b} vs {other.b}")
        return NatMatrix(tuple(
            tuple(x + y for x, y in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        ))

    @classmethod
    def identity(cls, b: int) -> "NatMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(b)) for i in range(b)))

    @classmethod
    def from_bits(cls, m: BitMatrix) -> "NatMatrix":
        return cls(m.rows)

    def to_json_obj(self) -> list[list[str]]:
        """Array of arrays of decimal strings, so arbitrary precision
        survives any JSON consumer."""
        return [[str(x) for x in row] for row in self.rows]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


def norm(m: NatMatrix | BitMatrix) -> int:
    """Entrywise norm: the sum of all entries."""
    return sum(sum(row) for row in m.rows)


def multiply(a: NatMatrix, b: NatMatrix) -> NatMatrix:
    """Exact integer matrix product."""
    if a.b != b.b:
        raise SizeMismatchError(f"sides differ: {a.b} vs {b.b}")
    n = a.b
    cols = tuple(zip(*b.rows))
    return NatMatrix(tuple(
        tuple(sum(ra[k] * col[k] for k in range(n)) for col in cols)
        for ra in a.rows
    ))


def power(m: BitMatrix, n: int) -> NatMatrix:
    """Exact n-th power, n >= 1.

    Iterated products up to the squaring threshold, repeated squaring above;
    the two routes are cross-tested against each other.
    """
    if n < 1:
        raise ValueError(f"exponent must be >= 1, got {n}")
    base = NatMatrix.from_bits(m)
    if n <= _SQUARING_THRESHOLD:
        acc = base
        for _ in range(n - 1):
            acc = multiply(acc, base)
        return acc
    acc = NatMatrix.identity(m.b)
    sq = base
    e = n
    while e:
        if e & 1:
            acc = multiply(acc, sq)
        e >>= 1
        if e:
            sq = multiply(sq, sq)
    return acc


def norm_sequence(m: BitMatrix, horizon: int) -> list[int]:
    """[‖M^1‖, …, ‖M^horizon‖] as exact integers."""
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    base = NatMatrix.from_bits(m)
    acc = base
    out = [norm(acc)]
    for _ in range(horizon - 1):
        acc = multiply(acc, base)
        out.append(norm(acc))
    return out


def make_L(k: int) -> BitMatrix:
    """Strict lower triangle: 1 exactly where i > j.  Nilpotent: L^k = 0."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return BitMatrix(tuple(
        tuple(int(i > j) for j in range(k)) for i in range(k)
    ))


def make_T(k: int) -> BitMatrix:
    """Full lower triangle including the diagonal: 1 where i >= j."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return BitMatrix(tuple(
        tuple(int(i >= j) for j in range(k)) for i in range(k)
    ))


def make_I(k: int) -> BitMatrix:
    """Identity matrix."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return BitMatrix(tuple(
        tuple(int(i == j) for j in range(k)) for i in range(k)
    ))


def make_J(k: int) -> BitMatrix:
    """The single k-cycle 1->2->...->k->1; J^k = I."""
    if k < 2:
        raise ValueError(f"k must be >= 2 for the cycle matrix, got {k}")
    rows = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        rows[i][i + 1] = 1
    rows[k - 1][0] = 1
    return BitMatrix(tuple(tuple(r) for r in rows))


def block_compose(u: BitMatrix, lower: BitMatrix | None) -> BitMatrix:
    """Assemble ``[[u, 0], [all-ones, lower]]``.

    ``lower=None`` (an empty lower block) returns ``u`` unchanged.
    """
    if lower is None:
        return u
    s, k = u.b, lower.b
    rows = []
    for i in range(s):
        rows.append(u.rows[i] + (0,) * k)
    for i in range(k):
        rows.append((1,) * s + lower.rows[i])
    return BitMatrix(tuple(rows))


def p1_violation(m: BitMatrix) -> int | None:
    """Witness against condition P1, or None.

    P1: every index whose column is nonzero has a nonzero row (every vertex
    that can be entered can be exited).  A witness is a 1-based i with
    nonzero column i and zero row i.
    """
    for i in range(1, m.b + 1):
        if m.col_nonzero(i) and not m.row_nonzero(i):
            return i
    return None


def satisfies_p1(m: BitMatrix) -> bool:
    return p1_violation(m) is None


def binomial(k: int, m: int) -> int:
    """Exact binomial coefficient C(k, m); zero when m > k."""
    if k < 0 or m < 0:
        raise ValueError("arguments must be nonnegative")
    return math.comb(k, m)
