"""Permutation similarity: simultaneous row/column relabeling.

Two matrices are equivalent when one is carried to the other by conjugation
with a permutation matrix.  Equivalence is decided through a canonical
representative: the row-major lexicographically minimal matrix of the class,
found by a depth-first search over partial vertex orderings with prefix
pruning.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CanonicalSizeLimitError, SizeMismatchError
from .matrices import BitMatrix, make_I, make_J, make_L, block_compose

CANONICAL_SIZE_LIMIT = 8


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1..b}, stored as the tuple of images (1-based)."""

    images: tuple[int, ...]

    def __post_init__(self):
        b = len(self.images)
        if sorted(self.images) != list(range(1, b + 1)):
            raise ValueError(f"not a permutation of 1..{b}: {self.images}")

    @property
    def b(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, b: int) -> "Permutation":
        return cls(tuple(range(1, b + 1)))

    @classmethod
    def swap(cls, b: int, i: int, j: int) -> "Permutation":
        images = list(range(1, b + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    def compose(self, other: "Permutation") -> "Permutation":
        """(self . other)(x) = self(other(x))."""
        if self.b != other.b:
            raise SizeMismatchError("permutation sizes differ")
        return Permutation(tuple(self.images[x - 1] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.b
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def apply_to_word(self, word: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.images[x - 1] for x in word)

    def to_matrix(self) -> BitMatrix:
        """Permutation matrix P with P[l][self(l)] = 1, so that
        apply_permutation(m, p) == P * M * P^T entrywise."""
        b = self.b
        rows = [[0] * b for _ in range(b)]
        for l in range(1, b + 1):
            rows[l - 1][self.images[l - 1] - 1] = 1
        return BitMatrix(tuple(tuple(r) for r in rows))

    def to_json_obj(self) -> list[str]:
        return [str(x) for x in self.images]


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically minimal class representative plus the permutation
    carrying the input onto it."""

    matrix: BitMatrix
    witness: Permutation


def apply_permutation(m: BitMatrix, sigma: Permutation) -> BitMatrix:
    """Simultaneous relabeling: result N with N[l][k] = M[sigma(l)][sigma(k)]."""
    if m.b != sigma.b:
        raise SizeMismatchError(f"sides differ: matrix {m.b}, permutation {sigma.b}")
    img = sigma.images
    return BitMatrix(tuple(
        tuple(m.rows[img[l] - 1][img[k] - 1] for k in range(m.b))
        for l in range(m.b)
    ))


def _permuted_rows(rows, assignment):
    return tuple(
        tuple(rows[a - 1][c - 1] for c in assignment) for a in assignment
    )


@lru_cache(maxsize=8192)
def _canonical_cached(rows: tuple[tuple[int, ...], ...]):
    b = len(rows)
    vertices = list(range(1, b + 1))

    # Greedy incumbent: extend by the vertex giving the smallest partial
    # pattern; gives the DFS a tight bound from the start.
    assignment: list[int] = []
    remaining = set(vertices)
    while remaining:
        best_v, best_key = None, None
        for v in sorted(remaining):
            cand = assignment + [v]
            key = _permuted_rows(rows, cand)
            if best_key is None or key < best_key:
                best_v, best_key = v, key
        assignment.append(best_v)
        remaining.discard(best_v)
    best_assignment = tuple(assignment)
    best_matrix = _permuted_rows(rows, best_assignment)

    # DFS over orderings; a branch dies when the determined prefix of the
    # first row already exceeds the incumbent's.
    stack = [(v,) for v in reversed(vertices)]
    while stack:
        partial = stack.pop()
        r = len(partial)
        row1 = tuple(rows[partial[0] - 1][c - 1] for c in partial)
        if row1 > best_matrix[0][:r]:
            continue
        if r == b:
            cand = _permuted_rows(rows, partial)
            if cand < best_matrix:
                best_matrix, best_assignment = cand, partial
            continue
        used = set(partial)
        for v in reversed(vertices):
            if v not in used:
                stack.append(partial + (v,))
    return best_matrix, best_assignment


def canonical_form(m: BitMatrix, limit: int = CANONICAL_SIZE_LIMIT) -> CanonicalForm:
    """Row-major lexicographic minimum over all simultaneous permutations."""
    if m.b > limit:
        raise CanonicalSizeLimitError(
            f"canonicalization limited to b <= {limit}, got {m.b}")
    best_matrix, best_assignment = _canonical_cached(m.rows)
    return CanonicalForm(BitMatrix(best_matrix), Permutation(best_assignment))


def are_equivalent(a: BitMatrix, b: BitMatrix,
                   limit: int = CANONICAL_SIZE_LIMIT) -> bool:
    """Decide permutation similarity by comparing canonical forms."""
    if a.b != b.b:
        raise SizeMismatchError(f"sides differ: {a.b} vs {b.b}")
    return canonical_form(a, limit).matrix == canonical_form(b, limit).matrix


def orbit(m: BitMatrix) -> frozenset[BitMatrix]:
    """The full equivalence class of ``m`` (all simultaneous relabelings).

    Intended for small b where the class is enumerated outright; the sweep
    harness uses orbits of fixed target matrices for O(1) membership tests.
    """
    from itertools import permutations

    out = set()
    for images in permutations(range(1, m.b + 1)):
        out.add(apply_permutation(m, Permutation(images)))
    return frozenset(out)


def is_permutation_matrix(m: BitMatrix) -> bool:
    """Exactly one 1 per row and per column (the 0/1 orthogonal family)."""
    if any(sum(row) != 1 for row in m.rows):
        return False
    return all(sum(col) == 1 for col in zip(*m.rows))


def extremal_sup_forms(b: int) -> list[BitMatrix]:
    """The three matrices whose classes exhaust the maximal bounded growth
    2^(b-1): a single loop over a strict lower triangle, and the two 2x2
    orthogonal blocks over a strict lower triangle."""
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    one = BitMatrix(((1,),))
    lower_b1 = make_L(b - 1)
    lower_b2 = make_L(b - 2) if b > 2 else None
    return [
        block_compose(one, lower_b1),
        block_compose(make_I(2), lower_b2),
        block_compose(make_J(2), lower_b2),
    ]


def is_strictly_lower_triangularizable(m: BitMatrix) -> Permutation | None:
    """If the digraph is acyclic, a permutation whose application is strictly
    lower triangular (targets ordered before sources); otherwise None."""
    b = m.b
    indeg = [0] * (b + 1)
    for i in range(1, b + 1):
        if m.entry(i, i):
            return None
        for j in m.out_neighbors[i - 1]:
            indeg[j] += 1
    # Kahn's algorithm, smallest vertex first for determinism.
    import heapq

    ready = [v for v in range(1, b + 1) if indeg[v] == 0]
    heapq.heapify(ready)
    topo: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        topo.append(v)
        for w in m.out_neighbors[v - 1]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(topo) != b:
        return None  # a cycle survived
    return Permutation(tuple(reversed(topo)))
