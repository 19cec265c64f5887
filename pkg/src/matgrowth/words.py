"""Admissible words of a 0/1 matrix and the space of infinite words.

A word w_1 ... w_n over {1..b} is admissible when every consecutive pair
indexes a 1-entry of the matrix.  Finite words are plain tuples of 1-based
letters; infinite admissible words are ultimately periodic and carried
around as (preperiod, period) descriptors in a canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .digraph import branching_certificate, cycle_structure
from .errors import (
    NotInCycleSetError,
    P1ViolationError,
    P2ViolationError,
    SizeMismatchError,
    UnboundedClassError,
    WordCapExceededError,
)
from .matrices import BitMatrix, norm, p1_violation, power

Word = tuple[int, ...]

# admissible_words refuses to materialize more than this many words;
# counts above the cap still come out exactly via matrix powers.
DEFAULT_WORD_CAP = 10**6

FINITE = "finite"
COUNTABLY_INFINITE = "countably-infinite"
POSITIVE_DIMENSION = "positive-dimension"


def word_to_text(word: Word, b: int | None = None) -> str:
    """Letters concatenated for single-digit alphabets, comma-joined above."""
    wide = (b is not None and b > 9) or any(x > 9 for x in word)
    sep = "," if wide else ""
    return sep.join(str(x) for x in word)


def _check_letters(letters, b: int):
    for x in letters:
        if not 1 <= x <= b:
            raise SizeMismatchError(f"letter {x} outside alphabet 1..{b}")


@dataclass(frozen=True)
class InfiniteWordDescriptor:
    """Ultimately periodic infinite word, preperiod . period^inf.

    Stored canonically: the period is primitive (not a power of a shorter
    word) and the preperiod is as short as possible, so two descriptors
    denote the same infinite word exactly when they are equal.  The
    constructor normalizes any valid (preperiod, period) pair.
    """

    preperiod: Word
    period: Word

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        for x in self.preperiod + self.period:
            if not isinstance(x, int) or x < 1:
                raise ValueError(f"letters must be positive integers, got {x!r}")
        pre, per = list(self.preperiod), list(self.period)
        for d in range(1, len(per)):
            if len(per) % d == 0 and per == per[:d] * (len(per) // d):
                per = per[:d]
                break
        # absorb preperiod letters the period already supplies
        while pre and pre[-1] == per[-1]:
            per = [per[-1]] + per[:-1]
            pre.pop()
        object.__setattr__(self, "preperiod", tuple(pre))
        object.__setattr__(self, "period", tuple(per))

    def letter(self, t: int) -> int:
        """The t-th letter, 1-based."""
        if t < 1:
            raise ValueError(f"position must be >= 1, got {t}")
        if t <= len(self.preperiod):
            return self.preperiod[t - 1]
        return self.period[(t - len(self.preperiod) - 1) % len(self.period)]

    def prefix(self, n: int) -> Word:
        return tuple(self.letter(t) for t in range(1, n + 1))

    def admissible_for(self, m: BitMatrix) -> bool:
        """Every consecutive pair, including the wrap inside the period and
        the preperiod-to-period seam, indexes a 1-entry."""
        if any(x > m.b for x in self.preperiod + self.period):
            return False
        probe = self.prefix(len(self.preperiod) + 2 * len(self.period))
        return all(m.entry(probe[t], probe[t + 1]) == 1
                   for t in range(len(probe) - 1))

    def to_text(self, b: int | None = None) -> str:
        return f"{word_to_text(self.preperiod, b)}({word_to_text(self.period, b)})^inf"


@dataclass(frozen=True)
class WordCensus:
    """Outcome of surveying the infinite word space: the complete list when
    it is finite, otherwise just which infinite regime holds."""

    kind: str
    descriptors: tuple[InfiniteWordDescriptor, ...] | None = None

    def __post_init__(self):
        if self.kind not in (FINITE, COUNTABLY_INFINITE, POSITIVE_DIMENSION):
            raise ValueError(f"unknown census kind {self.kind!r}")
        if (self.kind == FINITE) != (self.descriptors is not None):
            raise ValueError("descriptor list exactly when finite")

    @property
    def count(self) -> int | None:
        return None if self.descriptors is None else len(self.descriptors)

    def to_json_obj(self, b: int | None = None) -> dict:
        obj: dict = {"kind": self.kind}
        if self.descriptors is not None:
            obj["count"] = str(len(self.descriptors))
            obj["words"] = [d.to_text(b) for d in self.descriptors]
        return obj


def admissible_words(m: BitMatrix, n: int,
                     cap: int = DEFAULT_WORD_CAP) -> list[Word]:
    """All admissible words of length n, lexicographically ordered.

    Length 1 needs no pair constraint and yields every letter.  When the
    exact count (read off the matrix power) exceeds ``cap`` the list is not
    materialized and WordCapExceededError carries the count instead.
    """
    if n < 1:
        raise ValueError(f"word length must be >= 1, got {n}")
    count = m.b if n == 1 else norm(power(m, n - 1))
    if count > cap:
        raise WordCapExceededError(count, cap)
    if n == 1:
        return [(i,) for i in range(1, m.b + 1)]
    adj = m.out_neighbors
    out: list[Word] = []

    def extend(prefix: Word):
        if len(prefix) == n:
            out.append(prefix)
            return
        for j in adj[prefix[-1] - 1]:
            extend(prefix + (j,))

    for i in range(1, m.b + 1):
        extend((i,))
    return out


def admissible_words_between(m: BitMatrix, n: int, i: int, j: int,
                             cap: int = DEFAULT_WORD_CAP) -> list[Word]:
    """Admissible words of length n with head i and tail j, in lexicographic
    order; there are exactly (M^(n-1))_ij of them."""
    if n < 2:
        raise ValueError(f"head and tail need length >= 2, got {n}")
    for v in (i, j):
        if not 1 <= v <= m.b:
            raise ValueError(f"vertex {v} out of range 1..{m.b}")
    count = power(m, n - 1).entry(i, j)
    if count > cap:
        raise WordCapExceededError(count, cap)
    # can_reach[t] = vertices from which j is exactly t steps away
    can_reach: list[set[int]] = [{j}]
    for _ in range(n - 1):
        last = can_reach[-1]
        can_reach.append({v for v in range(1, m.b + 1)
                          if any(w in last for w in m.out_neighbors[v - 1])})
    adj = m.out_neighbors
    out: list[Word] = []

    def extend(prefix: Word):
        if len(prefix) == n:
            out.append(prefix)
            return
        steps_left = n - len(prefix) - 1
        for v in adj[prefix[-1] - 1]:
            if v in can_reach[steps_left]:
                extend(prefix + (v,))

    if i in can_reach[n - 1]:
        extend((i,))
    return out


def metric_distance(u, v, b: int) -> Fraction:
    """Exact distance b^(-k) with k the first disagreeing position; 0 for
    equal words.

    Arguments are finite words (tuples) or InfiniteWordDescriptor, in any
    combination, over the alphabet {1..b}.  Two finite words with one a
    proper prefix of the other have no disagreeing position and no distance.
    """
    if b < 1:
        raise ValueError(f"alphabet size must be >= 1, got {b}")

    def as_parts(w):
        if isinstance(w, InfiniteWordDescriptor):
            _check_letters(w.preperiod + w.period, b)
            return w, None
        word = tuple(w)
        _check_letters(word, b)
        return None, word

    inf_u, fin_u = as_parts(u)
    inf_v, fin_v = as_parts(v)

    if fin_u is not None and fin_v is not None:
        for t in range(min(len(fin_u), len(fin_v))):
            if fin_u[t] != fin_v[t]:
                return Fraction(1, b ** (t + 1))
        if len(fin_u) == len(fin_v):
            return Fraction(0)
        raise ValueError(
            "words agree on their common prefix but differ in length; "
            "no first disagreement exists")
    if inf_u is not None and inf_v is not None:
        if inf_u == inf_v:
            return Fraction(0)
        horizon = (max(len(inf_u.preperiod), len(inf_v.preperiod))
                   + lcm(len(inf_u.period), len(inf_v.period)))
        for t in range(1, horizon + 1):
            if inf_u.letter(t) != inf_v.letter(t):
                return Fraction(1, b ** t)
        return Fraction(0)  # same word under different descriptors
    fin = fin_u if fin_u is not None else fin_v
    inf = inf_u if inf_u is not None else inf_v
    for t in range(1, len(fin) + 1):
        if fin[t - 1] != inf.letter(t):
            return Fraction(1, b ** t)
    raise ValueError(
        "finite word is a prefix of the infinite word; "
        "no first disagreement exists")


def periodic_word(m: BitMatrix, i: int) -> InfiniteWordDescriptor:
    """The unique periodic admissible infinite word with head i.

    Exists exactly when i lies on a cycle; requires the nondecreasing-norm
    and no-multiple-return conditions, under which the cycle through i is
    unique and its letters are i's strongly connected component.
    """
    witness = p1_violation(m)
    if witness is not None:
        raise P1ViolationError(witness)
    cs = cycle_structure(m)
    if not cs.p2:
        raise P2ViolationError("some diagonal power entry exceeds 1")
    if i not in cs.d_set:
        raise NotInCycleSetError(f"vertex {i} lies on no cycle")
    _, cycle_word = cs.cycles[i]
    return InfiniteWordDescriptor((), cycle_word)


def infinite_word_census(m: BitMatrix) -> WordCensus:
    """Survey the space of infinite admissible words.

    Positive dimension the moment some diagonal power entry reaches 2;
    otherwise finite exactly when no cycle vertex can reach a branch, in
    which case every infinite word is a distinct-vertex path outside the
    cycle set followed by the unique periodic continuation, and the
    complete list is enumerated.
    """
    witness = p1_violation(m)
    if witness is not None:
        raise P1ViolationError(witness)
    cs = cycle_structure(m)
    if not cs.p2:
        return WordCensus(POSITIVE_DIMENSION)
    if branching_certificate(m) is not None:
        return WordCensus(COUNTABLY_INFINITE)

    cycles = cs.cycles
    descriptors = [InfiniteWordDescriptor((), cycles[i][1])
                   for i in sorted(cs.d_set)]
    for start in sorted(set(range(1, m.b + 1)) - cs.d_set):
        stack: list[Word] = [(start,)]
        while stack:
            path = stack.pop()
            for j in m.out_neighbors[path[-1] - 1]:
                if j in cs.d_set:
                    descriptors.append(
                        InfiniteWordDescriptor(path, cycles[j][1]))
                elif j not in path:  # subgraph off the cycles is acyclic
                    stack.append(path + (j,))
    descriptors.sort(key=lambda d: (d.preperiod, d.period))
    return WordCensus(FINITE, tuple(descriptors))


def count_infinite(m: BitMatrix) -> int:
    """Exact number of infinite admissible words; bounded class only."""
    census = infinite_word_census(m)
    if census.kind != FINITE:
        raise UnboundedClassError(
            f"word space is {census.kind}; an exact count needs the bounded class")
    return len(census.descriptors)
