"""Dart-based generalized graphs.

A generalized graph is a set of vertices plus a set of darts (half-edges).
Every dart is incident to exactly one vertex, and a pairing involution on
the darts glues them into edges: two paired darts at distinct vertices
form an ordinary edge, two paired darts at the same vertex form a loop
(degree 2), and a fixed point of the involution is a semi-edge (degree 1).

Darts are the contiguous integers 0..m-1, so the whole structure is two
integer arrays.  Graphs are immutable once constructed; every operation
here is a pure function.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class GeneralizedGraph:
    """Immutable vertex/dart structure with a pairing involution."""

    def __init__(self, n_vertices: int, incidence: Sequence[int], pairing: Sequence[int]):
        if n_vertices < 0:
            raise ValueError("vertex count must be >= 0")
        incidence = tuple(incidence)
        pairing = tuple(pairing)
        if len(incidence) != len(pairing):
            raise ValueError("incidence and pairing must have equal length")
        m = len(incidence)
        for x, v in enumerate(incidence):
            if not 0 <= v < n_vertices:
                raise ValueError(f"dart {x} incident to out-of-range vertex {v}")
        for x, y in enumerate(pairing):
            if not 0 <= y < m:
                raise ValueError(f"dart {x} paired to out-of-range dart {y}")
            if pairing[y] != x:
                raise ValueError(f"pairing is not an involution at dart {x}")
        self.n = n_vertices
        self.incidence = incidence
        self.pairing = pairing

    @property
    def m(self) -> int:
        """Number of darts."""
        return len(self.incidence)

    def is_semi(self, x: int) -> bool:
        return self.pairing[x] == x

    def partner_vertex(self, x: int) -> int:
        """Vertex at the far end of dart x (x's own vertex for a semi-edge)."""
        return self.incidence[self.pairing[x]]

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        counts = [0] * self.n
        for v in self.incidence:
            counts[v] += 1
        return tuple(counts)

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        return self.degrees[v]

    @cached_property
    def darts_at(self) -> tuple[tuple[int, ...], ...]:
        """Darts incident to each vertex, in ascending dart order."""
        buckets: list[list[int]] = [[] for _ in range(self.n)]
        for x, v in enumerate(self.incidence):
            buckets[v].append(x)
        return tuple(tuple(b) for b in buckets)

    def orbits(self) -> list[tuple[int, int]]:
        """Pairing orbits as (x, pairing[x]) with x <= pairing[x]."""
        return [(x, y) for x, y in enumerate(self.pairing) if x <= y]

    def darts_between(self, u: int, v: int) -> list[int]:
        """Darts at u whose partner dart sits at v, ascending."""
        return [x for x in self.darts_at[u] if self.incidence[self.pairing[x]] == v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneralizedGraph):
            return NotImplemented
        return (self.n, self.incidence, self.pairing) == (other.n, other.incidence, other.pairing)

    def __hash__(self):
        return hash((self.n, self.incidence, self.pairing))

    def __repr__(self) -> str:
        return f"GeneralizedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GraphClass:
    """Structural flags: a graph is simple iff all three flags are off."""

    has_semi_edge: bool
    has_loop: bool
    has_parallel_edge: bool
    regular_degree: int | None

    @property
    def simple(self) -> bool:
        return not (self.has_semi_edge or self.has_loop or self.has_parallel_edge)

    @property
    def multigraph(self) -> bool:
        """No semi-edges (loops and parallel edges allowed)."""
        return not self.has_semi_edge


@dataclass(frozen=True)
class CoverCertificate:
    """Claim that `subset` is an independent exact r-cover in a d-regular graph."""

    subset: tuple[int, ...]
    r: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "subset", tuple(self.subset))
        if not 1 <= self.r <= self.d:
            raise ValueError(f"need 1 <= r <= d, got r={self.r}, d={self.d}")
        for a, b in zip(self.subset, self.subset[1:]):
            if a >= b:
                raise ValueError("subset must be strictly increasing")
        if self.subset and self.subset[0] < 0:
            raise ValueError("subset entries must be >= 0")


@dataclass(frozen=True)
class CoverReport:
    ok: bool
    failures: tuple[str, ...]


def from_edges(
    n: int,
    edges: Iterable[tuple[int, int]] = (),
    loops: Iterable[int] = (),
    semis: Iterable[int] = (),
) -> GeneralizedGraph:
    """Build a graph from explicit edge/loop/semi-edge lists.

    Dart numbering is deterministic: edges first (two darts each, the
    lower-endpoint dart first), then loops (first-created dart first),
    then semi-edges (one dart each), all in input order.
    """
    incidence: list[int] = []
    pairing: list[int] = []

    def check(v: int) -> int:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        return v

    for u, v in edges:
        check(u)
        check(v)
        a, b = (u, v) if u <= v else (v, u)
        base = len(incidence)
        incidence.extend((a, b))
        pairing.extend((base + 1, base))
    for v in loops:
        check(v)
        base = len(incidence)
        incidence.extend((v, v))
        pairing.extend((base + 1, base))
    for v in semis:
        check(v)
        base = len(incidence)
        incidence.append(v)
        pairing.append(base)
    return GeneralizedGraph(n, incidence, pairing)


def classify(g: GeneralizedGraph) -> GraphClass:
    """Compute the structural flags and the regular degree (if any)."""
    has_semi = False
    has_loop = False
    seen_pairs: set[tuple[int, int]] = set()
    has_parallel = False
    for x, y in enumerate(g.pairing):
        if y == x:
            has_semi = True
        elif x < y:
            u, v = g.incidence[x], g.incidence[y]
            if u == v:
                has_loop = True
            else:
                key = (u, v) if u < v else (v, u)
                if key in seen_pairs:
                    has_parallel = True
                seen_pairs.add(key)
    degs = g.degrees
    regular = degs[0] if degs and all(d == degs[0] for d in degs) else None
    return GraphClass(has_semi, has_loop, has_parallel, regular)


def tensor_product(g: GeneralizedGraph, h: GeneralizedGraph) -> GeneralizedGraph:
    """Categorical product: darts are pairs of darts, paired componentwise.

    Vertex (u, v) flattens to u*|V(h)|+v and dart (x, y) to x*|D(h)|+y, so
    products are bit-reproducible.  Semi-edges act as fixed points on
    either side, which makes componentwise pairing the whole rule.
    """
    mh = h.m
    nh = h.n
    incidence = [0] * (g.m * mh)
    pairing = [0] * (g.m * mh)
    for x in range(g.m):
        gx = g.incidence[x] * nh
        px = g.pairing[x] * mh
        base = x * mh
        for y in range(mh):
            incidence[base + y] = gx + h.incidence[y]
            pairing[base + y] = px + h.pairing[y]
    return GeneralizedGraph(g.n * nh, incidence, pairing)


def verify_cover(g: GeneralizedGraph, cert: CoverCertificate) -> CoverReport:
    """Check that cert.subset is an independent exact r-cover of g.

    Independence means no loop or semi-edge touches the subset and no
    ordinary edge joins two subset vertices; exactness means every outside
    vertex has exactly r darts whose partner dart is incident to the
    subset (parallel edges count with multiplicity).
    """
    cls = classify(g)
    if cls.regular_degree != cert.d:
        raise ValueError(
            f"graph is not regular of degree {cert.d} (regular_degree={cls.regular_degree})"
        )
    if cert.subset and cert.subset[-1] >= g.n:
        raise ValueError("subset vertex out of range")
    in_s = bytearray(g.n)
    for v in cert.subset:
        in_s[v] = 1
    failures: list[str] = []
    bad_independent: set[int] = set()
    count_to_s = [0] * g.n
    for x, v in enumerate(g.incidence):
        y = g.pairing[x]
        if in_s[v]:
            if y == x:
                bad_independent.add(v)
                failures.append(f"semi-edge at subset vertex {v}")
            elif g.incidence[y] == v:
                if x < y:
                    bad_independent.add(v)
                    failures.append(f"loop at subset vertex {v}")
            elif in_s[g.incidence[y]]:
                if x < y:
                    bad_independent.add(v)
                    failures.append(
                        f"edge inside subset between {v} and {g.incidence[y]}"
                    )
        else:
            if y != x and in_s[g.incidence[y]]:
                count_to_s[v] += 1
    for v in range(g.n):
        if not in_s[v] and count_to_s[v] != cert.r:
            failures.append(f"vertex {v} sends {count_to_s[v]} edges to subset, want {cert.r}")
    return CoverReport(not failures, tuple(failures))


def enumerate_covers(g: GeneralizedGraph, r: int) -> list[CoverCertificate]:
    """All independent exact r-covers of g, in lexicographic subset order.

    Brute-force oracle for small graphs.  Candidate subsets are pruned to
    the forced size r*n/(d+r); if that is not an integer no cover can
    exist and the list is empty.
    """
    if g.n > 24:
        raise ValueError("graph too large for exhaustive cover search (n > 24)")
    cls = classify(g)
    d = cls.regular_degree
    if d is None:
        raise ValueError("graph is not regular")
    if not 1 <= r <= d:
        raise ValueError(f"need 1 <= r <= d={d}, got r={r}")
    size, rem = divmod(r * g.n, d + r)
    if rem != 0:
        return []
    found = []
    for subset in itertools.combinations(range(g.n), size):
        cert = CoverCertificate(subset, r, d)
        if verify_cover(g, cert).ok:
            found.append(cert)
    return found


def connected_components(g: GeneralizedGraph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, by least vertex."""
    seen = bytearray(g.n)
    components: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = 1
        stack = [start]
        comp = [start]
        while stack:
            v = stack.pop()
            for x in g.darts_at[v]:
                w = g.incidence[g.pairing[x]]
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        components.append(comp)
    return components


def disjoint_copies(g: GeneralizedGraph, k: int) -> GeneralizedGraph:
    """Disjoint union of k copies of g; copy i occupies vertices i*n..i*n+n-1."""
    if k < 0:
        raise ValueError("copy count must be >= 0")
    incidence: list[int] = []
    pairing: list[int] = []
    for i in range(k):
        voff = i * g.n
        doff = i * g.m
        incidence.extend(v + voff for v in g.incidence)
        pairing.extend(x + doff for x in g.pairing)
    return GeneralizedGraph(g.n * k, incidence, pairing)
