"""Digraph view of a 0/1 matrix: edge i -> j iff entry (i, j) is 1.

Provides strongly connected components with a per-component shape flag,
the cycle-vertex sets used by the growth classifier, reachability, and the
two routes for deciding condition P2 (structural, and a brute-force power
check used as a cross-oracle).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import P2ViolationError
from .matrices import BitMatrix, power

TRIVIAL = "trivial"
SIMPLE_CYCLE = "simple-cycle"
COMPLEX = "complex"


@dataclass(frozen=True)
class SCC:
    """One strongly connected component.

    kind is ``trivial`` (single vertex, no self-loop), ``simple-cycle``
    (the induced subgraph is exactly one directed cycle through every
    component vertex; a self-loop counts as a 1-cycle) or ``complex``.
    """

    vertices: frozenset[int]
    kind: str


def sccs(m: BitMatrix) -> tuple[SCC, ...]:
    """Strongly connected components (iterative Tarjan), each classified.

    Components are returned sorted by smallest vertex, so the output is
    deterministic.
    """
    b = m.b
    adj = m.out_neighbors
    index = [0] * (b + 1)     # 0 = unvisited
    lowlink = [0] * (b + 1)
    on_stack = [False] * (b + 1)
    stack: list[int] = []
    components: list[frozenset[int]] = []
    counter = 1

    for root in range(1, b + 1):
        if index[root]:
            continue
        # Explicit DFS: (vertex, iterator position into adj)
        work = [(root, 0)]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            neigh = adj[v - 1]
            if pos < len(neigh):
                work[-1] = (v, pos + 1)
                w = neigh[pos]
                if not index[w]:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    if index[w] < lowlink[v]:
                        lowlink[v] = index[w]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if lowlink[v] < lowlink[parent]:
                        lowlink[parent] = lowlink[v]
                if lowlink[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    components.append(frozenset(comp))

    out = []
    for comp in sorted(components, key=min):
        out.append(SCC(comp, _component_kind(m, comp)))
    return tuple(out)


def _component_kind(m: BitMatrix, comp: frozenset[int]) -> str:
    if len(comp) == 1:
        (v,) = comp
        if m.entry(v, v):
            return SIMPLE_CYCLE
        return TRIVIAL
    # Strongly connected on >= 2 vertices: it is a single covering cycle
    # exactly when every vertex has out-degree 1 inside the component.
    for v in comp:
        if sum(1 for w in m.out_neighbors[v - 1] if w in comp) != 1:
            return COMPLEX
    return SIMPLE_CYCLE


def satisfies_p2(m: BitMatrix) -> bool:
    """Structural decision of P2: every diagonal entry of every power is
    at most 1 iff every SCC is trivial or a simple cycle."""
    return all(c.kind != COMPLEX for c in sccs(m))


def p2_power_oracle(m: BitMatrix, max_k: int) -> bool:
    """Brute-force P2 check: (M^k)_{ii} <= 1 for all i and all k <= max_k.

    Exact arithmetic; used as an independent cross-check of the structural
    criterion (conventionally with max_k = 2*b*b).
    """
    if max_k < 1:
        raise ValueError(f"max_k must be >= 1, got {max_k}")
    from .matrices import NatMatrix, multiply

    base = NatMatrix.from_bits(m)
    acc = base
    for k in range(1, max_k + 1):
        if any(acc.entry(i, i) > 1 for i in range(1, m.b + 1)):
            return False
        if k < max_k:
            acc = multiply(acc, base)
    return True


def reachable_from(m: BitMatrix, i: int) -> frozenset[int]:
    """Vertices j with a directed path of length >= 1 from i to j."""
    if not 1 <= i <= m.b:
        raise ValueError(f"vertex {i} out of range 1..{m.b}")
    adj = m.out_neighbors
    seen: set[int] = set()
    frontier = list(adj[i - 1])
    while frontier:
        v = frontier.pop()
        if v in seen:
            continue
        seen.add(v)
        frontier.extend(w for w in adj[v - 1] if w not in seen)
    return frozenset(seen)


def is_nilpotent(m: BitMatrix) -> bool:
    """True iff M^b is the zero matrix (equivalently: no directed cycle)."""
    return power(m, m.b).is_zero()


def branching_certificate(m: BitMatrix) -> tuple[int, int] | None:
    """A pair (i, v) where i lies on a cycle and some vertex v reachable
    from i (possibly i itself) has out-degree >= 2; None if no cycle vertex
    can reach a branch.  Separates the bounded norm class from polynomial
    growth: a branch reachable from a cycle yields two distinct infinite
    words with the same cycle-vertex head.
    """
    on_cycle = sorted(v for c in sccs(m) if c.kind != TRIVIAL
                      for v in c.vertices)
    for i in on_cycle:
        for v in sorted({i} | reachable_from(m, i)):
            if m.out_degree(v) >= 2:
                return i, v
    return None


class CycleStructure:
    """Cycle-vertex sets of a matrix digraph.

    ``d_set`` (vertices on some cycle) and ``sccs`` are always available.
    The per-vertex cycle map and the peeled sets ``d0_set`` / ``d00_set``
    are defined only under P2; accessing them on a non-P2 matrix raises
    :class:`P2ViolationError`.
    """

    def __init__(self, m: BitMatrix):
        comps = sccs(m)
        self._m = m
        self.sccs = comps
        self.p2 = all(c.kind != COMPLEX for c in comps)
        self.d_set = frozenset(
            v for c in comps if c.kind != TRIVIAL for v in c.vertices
        )
        if self.p2:
            self._cycles = {
                i: (c.vertices, _cycle_word(m, c.vertices, i))
                for c in comps if c.kind == SIMPLE_CYCLE for i in c.vertices
            }
            outside = frozenset(range(1, m.b + 1)) - self.d_set
            reach = {v: reachable_from(m, v) for v in self.d_set}
            d0 = set()
            for i in self.d_set:
                group = self._cycles[i][0]
                if all(not (reach[j] & outside) for j in group):
                    d0.add(i)
            self._d0 = frozenset(d0)
            d00 = set()
            for i in self._d0:
                group = self._cycles[i][0]
                others = self.d_set - group
                if all(m.entry(j, u) == 0 for j in group for u in others):
                    d00.add(i)
            self._d00 = frozenset(d00)
        else:
            self._cycles = None
            self._d0 = None
            self._d00 = None

    def _require_p2(self):
        if not self.p2:
            raise P2ViolationError(
                "cycle map and the peeled sets are defined only under P2")

    @property
    def cycles(self) -> dict[int, tuple[frozenset[int], tuple[int, ...]]]:
        """Map i -> (vertex set of i's cycle, the cycle word starting at i)."""
        self._require_p2()
        return self._cycles

    @property
    def d0_set(self) -> frozenset[int]:
        """Cycle vertices whose whole cycle cannot reach outside d_set."""
        self._require_p2()
        return self._d0

    @property
    def d00_set(self) -> frozenset[int]:
        """d0 vertices whose cycle also has no edge into another cycle."""
        self._require_p2()
        return self._d00

    def to_json_obj(self) -> dict:
        obj = {
            "d_set": [str(v) for v in sorted(self.d_set)],
            "p2": self.p2,
            "sccs": [
                {"vertices": [str(v) for v in sorted(c.vertices)], "kind": c.kind}
                for c in self.sccs
            ],
        }
        if self.p2:
            obj["cycles"] = {
                str(i): {
                    "vertices": [str(v) for v in sorted(grp)],
                    "word": [str(v) for v in word],
                }
                for i, (grp, word) in sorted(self._cycles.items())
            }
            obj["d0_set"] = [str(v) for v in sorted(self._d0)]
            obj["d00_set"] = [str(v) for v in sorted(self._d00)]
        return obj


def _cycle_word(m: BitMatrix, comp: frozenset[int], i: int) -> tuple[int, ...]:
    # Inside a simple-cycle SCC each vertex has exactly one successor that
    # stays in the component; following it from i walks the cycle once.
    word = [i]
    v = i
    while True:
        (v,) = tuple(w for w in m.out_neighbors[v - 1] if w in comp)
        if v == i:
            return tuple(word)
        word.append(v)


def cycle_structure(m: BitMatrix) -> CycleStructure:
    """Compute the cycle-vertex structure of ``m``."""
    return CycleStructure(m)
