"""Growth classification for the power norms of a 0/1 matrix.

The norm sequence of a matrix obeys a trichotomy, decided here purely from
digraph structure, never from norm magnitudes: exponential growth as soon
as some diagonal entry of a power reaches 2; otherwise bounded when every
vertex reachable from a cycle has a single out-edge; polynomially windowed
in between.  Extremal detection and the spectral radius ride along.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .digraph import branching_certificate, satisfies_p2
from .equivalence import canonical_form, extremal_sup_forms
from .errors import P1ViolationError, UnboundedClassError
from .matrices import (
    BitMatrix,
    NatMatrix,
    make_T,
    multiply,
    norm,
    p1_violation,
    power,
)
from .words import count_infinite

EXACT_CHAR_POLY = "exact-char-poly"
NORM_RATIO = "norm-ratio"


class Growth(Enum):
    EXPONENTIAL = "exponential"
    POLYNOMIAL = "polynomial"
    BOUNDED = "bounded"


@dataclass(frozen=True)
class GrowthClass:
    """Classification outcome plus a checkable certificate.

    Exponential: a vertex and exponent with (M^k)_ii >= 2.  Polynomial: a
    cycle vertex from which a branch (out-degree >= 2) is reachable, giving
    two infinite words with that head.  Bounded: the stabilized norm and
    the exact size of the infinite word space.
    """

    variant: Growth
    diagonal_vertex: int | None = None
    diagonal_exponent: int | None = None
    branching_head: int | None = None
    branching_vertex: int | None = None
    stabilized_norm: int | None = None
    census_size: int | None = None

    def __post_init__(self):
        groups = {
            Growth.EXPONENTIAL: (self.diagonal_vertex, self.diagonal_exponent),
            Growth.POLYNOMIAL: (self.branching_head, self.branching_vertex),
            Growth.BOUNDED: (self.stabilized_norm, self.census_size),
        }
        for variant, group in groups.items():
            if variant is self.variant:
                if any(x is None for x in group):
                    raise ValueError(
                        f"incomplete certificate for {variant.value}")
            elif any(x is not None for x in group):
                raise ValueError(
                    f"certificate fields of {variant.value} set on "
                    f"{self.variant.value}")

    def certificate_json(self) -> dict:
        if self.variant is Growth.EXPONENTIAL:
            return {"vertex": str(self.diagonal_vertex),
                    "exponent": str(self.diagonal_exponent)}
        if self.variant is Growth.POLYNOMIAL:
            return {"cycle_head": str(self.branching_head),
                    "branch_vertex": str(self.branching_vertex)}
        return {"stabilized_norm": str(self.stabilized_norm),
                "infinite_words": str(self.census_size)}


@dataclass(frozen=True)
class SpectralRadiusResult:
    value: float
    method: str
    error_bound: float


@dataclass(frozen=True)
class DimensionResult:
    value: float
    error_bound: float
    empty_word_space: bool


def _require_p1(m: BitMatrix):
    witness = p1_violation(m)
    if witness is not None:
        raise P1ViolationError(witness)


def _diagonal_certificate(m: BitMatrix) -> tuple[int, int]:
    # a branching strongly connected component always shows a doubled
    # diagonal entry by exponent 2b; the larger limit is pure defense
    base = NatMatrix.from_bits(m)
    acc = base
    for k in range(1, 2 * m.b * m.b + 1):
        for i in range(1, m.b + 1):
            if acc.entry(i, i) >= 2:
                return i, k
        acc = multiply(acc, base)
    raise RuntimeError("diagonal certificate missing; classification bug")


def _stabilized_norm(m: BitMatrix) -> int:
    base = NatMatrix.from_bits(m)
    acc = base
    prev = norm(acc)
    best = prev
    for _ in range(2 ** (m.b + 2)):
        acc = multiply(acc, base)
        cur = norm(acc)
        best = max(best, cur)
        if cur == prev:
            return best
        prev = cur
    raise RuntimeError("norm sequence did not stabilize; classification bug")


def classify(m: BitMatrix) -> GrowthClass:
    """Decide the growth class of ||M^n|| with a certificate attached."""
    _require_p1(m)
    if not satisfies_p2(m):
        i, k = _diagonal_certificate(m)
        return GrowthClass(Growth.EXPONENTIAL,
                           diagonal_vertex=i, diagonal_exponent=k)
    branch = branching_certificate(m)
    if branch is not None:
        return GrowthClass(Growth.POLYNOMIAL,
                           branching_head=branch[0], branching_vertex=branch[1])
    return GrowthClass(Growth.BOUNDED,
                       stabilized_norm=_stabilized_norm(m),
                       census_size=count_infinite(m))


def sup_norm(m: BitMatrix) -> int:
    """sup over n >= 1 of ||M^n||, by running the norm sequence up to the
    first pair of equal consecutive values.  Once two consecutive norms
    coincide, extending words on the right is a bijection and the sequence
    stays constant, so the prefix maximum is the supremum.  Only the
    bounded class stabilizes."""
    g = classify(m)
    if g.variant is not Growth.BOUNDED:
        raise UnboundedClassError(
            f"norm sequence of the {g.variant.value} class has no finite sup")
    return g.stabilized_norm


def is_sup_extremal(m: BitMatrix) -> bool:
    """Does the class of m attain the maximal bounded growth 2^(b-1)?

    Decided by canonical-form membership in the three extremal classes,
    not by computing norms.
    """
    _require_p1(m)
    targets = {canonical_form(f).matrix for f in extremal_sup_forms(m.b)}
    return canonical_form(m).matrix in targets


def is_binomial_extremal(m: BitMatrix) -> bool:
    """Is m equivalent to the full lower triangle, the unique class with
    ||M^n|| = C(n+b, n+1) at every n?"""
    _require_p1(m)
    return canonical_form(m).matrix == canonical_form(make_T(m.b)).matrix


# ---------------------------------------------------------------------------
# Exact spectral radius: integer characteristic polynomial, square-free
# reduction, Sturm-chain bisection.  Polynomials are tuples of Fractions,
# ascending (constant term first).


def char_polynomial(m: BitMatrix) -> tuple[int, ...]:
    """Coefficients of det(xI - M), ascending, exact integers."""
    b = m.b
    rows = [list(r) for r in m.rows]

    def matmul(a, c):
        return [[sum(a[i][k] * c[k][j] for k in range(b)) for j in range(b)]
                for i in range(b)]

    def trace(a):
        return sum(a[i][i] for i in range(b))

    coeffs = [Fraction(1)]  # descending during the recurrence
    acc = [row[:] for row in rows]
    for k in range(1, b + 1):
        c = Fraction(-trace(acc), k)
        coeffs.append(c)
        if k < b:
            shifted = [[acc[i][j] + (c if i == j else 0) for j in range(b)]
                       for i in range(b)]
            acc = matmul(rows, shifted)
    out = []
    for c in reversed(coeffs):
        if c.denominator != 1:
            raise RuntimeError(f"non-integer characteristic coefficient {c}")
        out.append(int(c))
    return tuple(out)


def _degree(p) -> int:
    d = len(p) - 1
    while d > 0 and p[d] == 0:
        d -= 1
    return d


def _trim(p):
    return tuple(p[:_degree(p) + 1])


def _peval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pderiv(p):
    if len(p) == 1:
        return (Fraction(0),)
    return tuple(Fraction(k) * p[k] for k in range(1, len(p)))


def _pdivmod(num, den):
    den = _trim(den)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    rem = list(num)
    dd, lead = _degree(den), den[_degree(den)]
    while _degree(rem) >= dd and any(c != 0 for c in rem):
        k = _degree(rem)
        factor = rem[k] / lead
        q[k - dd] += factor
        for i in range(dd + 1):
            rem[k - dd + i] -= factor * den[i]
        rem[k] = Fraction(0)
    return _trim(q), _trim(rem)


def _monic(p):
    p = _trim(p)
    lead = p[_degree(p)]
    if lead == 0:
        return p
    return tuple(c / lead for c in p)


def _square_free(p):
    a, b = _trim(p), _trim(_pderiv(p))
    while _degree(b) > 0 or b[0] != 0:
        a, b = b, _pdivmod(a, b)[1]
        if _degree(b) == 0 and b[0] == 0:
            break
    g = _monic(a)
    if _degree(g) == 0:
        return _monic(p)
    return _monic(_pdivmod(p, g)[0])


def _sturm_chain(q):
    chain = [_trim(q), _trim(_pderiv(q))]
    while _degree(chain[-1]) > 0:
        rem = _pdivmod(chain[-2], chain[-1])[1]
        rem = tuple(-c for c in rem)
        if all(c == 0 for c in rem):
            break
        chain.append(rem)
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _peval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, c in zip(signs, signs[1:]) if a != c)


def _roots_in(chain, a: Fraction, c: Fraction) -> int:
    # distinct roots in (a, c]; both endpoints must be non-roots
    return _sign_changes(chain, a) - _sign_changes(chain, c)


_BISECT_STEPS = 256  # interval width 2^-253 b, below any root separation


def _largest_nonneg_root(p_int, b: int):
    """Largest real root of the monic integer polynomial in [0, b].

    Returns (exact_value, None, None) when the root is an integer, else
    (None, lo, hi) with the root pinned in (lo, hi].  Rational roots of a
    monic integer polynomial are integers, so after dividing those out
    every bisection point evaluates nonzero and Sturm counts are clean.
    """
    q = _square_free(tuple(Fraction(c) for c in p_int))
    int_roots = []
    for r in range(b + 1):
        if _peval(q, Fraction(r)) == 0:
            int_roots.append(r)
            q = _pdivmod(q, (Fraction(-r), Fraction(1)))[0]
    best_int = max(int_roots, default=None)
    if _degree(q) == 0:
        return (best_int if best_int is not None else 0), None, None
    chain = _sturm_chain(q)
    if _roots_in(chain, Fraction(0), Fraction(b)) == 0:
        return (best_int if best_int is not None else 0), None, None
    lo, hi = Fraction(0), Fraction(b)
    for _ in range(_BISECT_STEPS):
        mid = (lo + hi) / 2
        if _roots_in(chain, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    if best_int is not None and Fraction(best_int) >= hi:
        return best_int, None, None
    return None, lo, hi


def spectral_radius(m: BitMatrix,
                    method: str = EXACT_CHAR_POLY) -> SpectralRadiusResult:
    """Largest eigenvalue modulus; for a nonnegative matrix this is itself
    a real eigenvalue in [0, b], the largest real root of the
    characteristic polynomial."""
    if method == NORM_RATIO:
        return _norm_ratio_radius(m)
    if method != EXACT_CHAR_POLY:
        raise ValueError(f"unknown method {method!r}")
    exact, lo, hi = _largest_nonneg_root(char_polynomial(m), m.b)
    if exact is not None:
        return SpectralRadiusResult(float(exact), EXACT_CHAR_POLY, 0.0)
    return SpectralRadiusResult(float((lo + hi) / 2), EXACT_CHAR_POLY, 1e-14)


def _norm_ratio_radius(m: BitMatrix, n: int = 64) -> SpectralRadiusResult:
    # (norm(M^2n)/norm(M^n))^(1/n) cancels the polynomial factor c*k^j in
    # norm(M^k) ~ c k^j rho^k up to 2^(j/n); with j < b <= 5 and n = 64 the
    # bias stays under rho * 0.045, hence the stated 0.05 bound.  A bare
    # norm(M^n)^(1/n) converges too slowly for any such bound.
    a = norm(power(m, n))
    if a == 0:
        return SpectralRadiusResult(0.0, NORM_RATIO, 0.0)
    ratio = Fraction(norm(power(m, 2 * n)), a)
    return SpectralRadiusResult(float(ratio) ** (1.0 / n), NORM_RATIO, 0.05)


def dimension(m: BitMatrix) -> DimensionResult:
    """log(spectral radius) / log(b), the fractal dimension of the space of
    infinite admissible words; 0 when the radius is at most 1, with a flag
    for the nilpotent case where that space is empty."""
    sr = spectral_radius(m)
    empty = sr.value == 0.0 and sr.error_bound == 0.0
    if sr.value <= 1.0:
        return DimensionResult(0.0, 0.0, empty)
    value = math.log(sr.value) / math.log(m.b)
    bound = sr.error_bound / (sr.value * math.log(m.b)) + 1e-15
    return DimensionResult(value, bound, False)


def classify_report(m: BitMatrix) -> dict:
    """JSON-ready summary: class, certificate, sup norm when finite, and
    the word-space dimension."""
    g = classify(m)
    obj: dict = {"class": g.variant.value, "certificate": g.certificate_json()}
    if g.variant is Growth.BOUNDED:
        obj["sup_norm"] = str(g.stabilized_norm)
    obj["dimension"] = dimension(m).value
    return obj
