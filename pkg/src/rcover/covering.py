"""Covering maps between generalized graphs and the common-covering product.

A covering map is a dart surjection that sends darts at one vertex to
darts at one vertex, commutes with the pairing involutions, and restricts
to a bijection on every dart neighbourhood.  Two regular graphs of equal
degree that both split into a 1-factors and b oriented 2-factors admit a
common covering on the product vertex set: each product vertex gets one
dart per 1-factor colour toward the componentwise matched vertex, and a
forward/backward dart pair per 2-factor colour toward the componentwise
successors/predecessors.  Darts of equal colour pointing at each other
are paired; a product dart is a semi-edge exactly when both component
darts are semi-edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import CoverCertificate, CoverReport, GeneralizedGraph, classify, verify_cover
from .factorize import Factorization, two_factorize, factorize_with_matching


class CoveringMap:
    """Dart-level map between two graphs, with the derived vertex map."""

    def __init__(self, source: GeneralizedGraph, target: GeneralizedGraph, dart_map: Sequence[int]):
        dart_map = tuple(dart_map)
        if len(dart_map) != source.m:
            raise ValueError("dart_map must cover every source dart")
        for x, t in enumerate(dart_map):
            if not 0 <= t < target.m:
                raise ValueError(f"dart {x} maps to out-of-range dart {t}")
        self.source = source
        self.target = target
        self.dart_map = dart_map
        vmap: list[int | None] = [None] * source.n
        for x, t in enumerate(dart_map):
            v = source.incidence[x]
            if vmap[v] is None:
                vmap[v] = target.incidence[t]
        self.vertex_map = tuple(vmap)

    def __repr__(self) -> str:
        return f"CoveringMap({self.source!r} -> {self.target!r})"


@dataclass(frozen=True)
class CoveringReport:
    ok: bool
    first_violation: str | None = None


def verify_covering(cm: CoveringMap) -> CoveringReport:
    """Check the four covering-map conditions, reporting the first violation.

    1. every target dart is hit;
    2. darts at a common source vertex land at a common target vertex;
    3. the map commutes with the pairing involutions (so edges map to
       edges, loops or semi-edges, and semi-edges map to semi-edges);
    4. on each dart neighbourhood the map is a bijection onto the image
       vertex's dart neighbourhood.
    """
    src, tgt = cm.source, cm.target
    hit = bytearray(tgt.m)
    for t in cm.dart_map:
        hit[t] = 1
    if not all(hit):
        missing = hit.index(0)
        return CoveringReport(False, f"item1: target dart {missing} not covered")
    for x, t in enumerate(cm.dart_map):
        v = cm.vertex_map[src.incidence[x]]
        if tgt.incidence[t] != v:
            return CoveringReport(
                False,
                f"item2: dart {x} at vertex {src.incidence[x]} maps into vertex "
                f"{tgt.incidence[t]}, expected {v}",
            )
    for x, t in enumerate(cm.dart_map):
        want = tgt.pairing[t]
        got = cm.dart_map[src.pairing[x]]
        if got != want:
            if src.pairing[x] == x:
                return CoveringReport(False, f"item3: semi-edge {x} maps to paired dart {t}")
            return CoveringReport(
                False,
                f"item3: darts {x},{src.pairing[x]} are paired but images {t},{got} are not",
            )
    for v in range(src.n):
        images = {cm.dart_map[x] for x in src.darts_at[v]}
        if len(images) != len(src.darts_at[v]):
            return CoveringReport(False, f"item4: dart map not injective on vertex {v}")
        w = cm.vertex_map[v]
        if w is not None and len(images) != tgt.degrees[w]:
            return CoveringReport(
                False,
                f"item4: vertex {v} has degree {len(src.darts_at[v])} but its image {w} "
                f"has degree {tgt.degrees[w]}",
            )
    return CoveringReport(True)


def structure_check(cm: CoveringMap) -> CoveringReport:
    """Check fibre structure over every target orbit, plus image constraints.

    Preimages must be: for an ordinary target edge, a perfect matching
    between the two endpoint fibres; for a loop, a disjoint union of
    cycles spanning the fibre (1- and 2-cycles allowed); for a semi-edge,
    a 1-factor of the fibre (matching plus semi-edges).  Source loops must
    map to loops and source semi-edges to semi-edges.
    """
    base = verify_covering(cm)
    if not base.ok:
        return base
    src, tgt = cm.source, cm.target
    pre: list[list[int]] = [[] for _ in range(tgt.m)]
    for x, t in enumerate(cm.dart_map):
        pre[t].append(x)
    fibre: list[list[int]] = [[] for _ in range(tgt.n)]
    for v, w in enumerate(cm.vertex_map):
        if w is not None:
            fibre[w].append(v)

    for x in range(src.m):
        y = src.pairing[x]
        t, s = cm.dart_map[x], cm.dart_map[y]
        if y == x:
            if tgt.pairing[t] != t:
                return CoveringReport(False, f"image: semi-edge {x} maps to non-semi dart {t}")
        elif x < y and src.incidence[x] == src.incidence[y]:
            if t == s or tgt.incidence[t] != tgt.incidence[s]:
                return CoveringReport(False, f"image: loop ({x},{y}) does not map to a loop")

    for e in range(tgt.m):
        f = tgt.pairing[e]
        if f < e:
            continue
        u = tgt.incidence[e]
        if e == f:
            # semi-edge: preimage is a 1-factor of the fibre over u
            per_vertex = {v: 0 for v in fibre[u]}
            for x in pre[e]:
                per_vertex[src.incidence[x]] += 1
            for v, c in per_vertex.items():
                if c != 1:
                    return CoveringReport(
                        False, f"preimage of semi-edge {e}: vertex {v} carries {c} darts"
                    )
        elif u == tgt.incidence[f]:
            # loop: preimage is 2-regular and spans the fibre over u
            for half in (e, f):
                per_vertex = {v: 0 for v in fibre[u]}
                for x in pre[half]:
                    per_vertex[src.incidence[x]] += 1
                for v, c in per_vertex.items():
                    if c != 1:
                        return CoveringReport(
                            False, f"preimage of loop dart {half}: vertex {v} carries {c} darts"
                        )
        else:
            # ordinary edge: preimage is a perfect matching between the fibres
            w = tgt.incidence[f]
            seen_u: set[int] = set()
            seen_w: set[int] = set()
            for x in pre[e]:
                a = src.incidence[x]
                bmate = src.incidence[src.pairing[x]]
                if a in seen_u or bmate in seen_w:
                    return CoveringReport(
                        False,
                        f"preimage of edge ({e},{f}) is not a matching near vertex {a}",
                    )
                seen_u.add(a)
                seen_w.add(bmate)
            if len(seen_u) != len(fibre[u]) or len(seen_w) != len(fibre[w]):
                return CoveringReport(
                    False, f"preimage of edge ({e},{f}) does not span both fibres"
                )
    return CoveringReport(True)


def identity_covering(g: GeneralizedGraph) -> CoveringMap:
    return CoveringMap(g, g, range(g.m))


def compose_coverings(first: CoveringMap, second: CoveringMap) -> CoveringMap:
    """Composite covering first;second (source of `first` onto target of `second`)."""
    if first.target is not second.source and first.target != second.source:
        raise ValueError("maps do not compose: first.target differs from second.source")
    return CoveringMap(
        first.source, second.target, tuple(second.dart_map[t] for t in first.dart_map)
    )


class _FactorIndex:
    """Per-vertex dart/neighbour lookup tables for one factorized graph."""

    def __init__(self, g: GeneralizedGraph, f: Factorization):
        a, b = f.a, f.b
        self.one_dart = [[-1] * a for _ in range(g.n)]
        self.fwd_dart = [[-1] * b for _ in range(g.n)]
        self.bwd_dart = [[-1] * b for _ in range(g.n)]
        for x, v in enumerate(g.incidence):
            c = f.color[x]
            if c < a:
                self.one_dart[v][c] = x
            elif f.forward[x]:
                self.fwd_dart[v][c - a] = x
            else:
                self.bwd_dart[v][c - a] = x
        far = g.partner_vertex
        self.mate = [[far(self.one_dart[v][j]) for j in range(a)] for v in range(g.n)]
        self.succ = [[far(self.fwd_dart[v][j]) for j in range(b)] for v in range(g.n)]
        self.pred = [[far(self.bwd_dart[v][j]) for j in range(b)] for v in range(g.n)]


@dataclass(frozen=True)
class CommonCovering:
    graph: GeneralizedGraph
    proj1: CoveringMap
    proj2: CoveringMap
    factorization: Factorization


def common_covering(
    g1: GeneralizedGraph,
    f1: Factorization,
    g2: GeneralizedGraph,
    f2: Factorization,
) -> CommonCovering:
    """Common covering of two equal-degree graphs with matching factorizations.

    The result lives on the product vertex set (row-major flattening) and
    inherits a factorization with the same signature, so the construction
    can be iterated.  Both coordinate projections are covering maps.  Dart
    layout per vertex: 1-factor colours ascending, then one forward and
    one backward dart per 2-factor colour.
    """
    d1 = classify(g1).regular_degree
    d2 = classify(g2).regular_degree
    if d1 is None or d1 != d2:
        raise ValueError(f"graphs must be regular of equal degree (got {d1}, {d2})")
    if (f1.a, f1.b) != (f2.a, f2.b):
        raise ValueError(
            f"factorization signatures differ: ({f1.a},{f1.b}) vs ({f2.a},{f2.b})"
        )
    a, b = f1.a, f1.b
    d = a + 2 * b
    idx1 = _FactorIndex(g1, f1)
    idx2 = _FactorIndex(g2, f2)
    n1, n2 = g1.n, g2.n
    n = n1 * n2
    m = n * d
    incidence = [0] * m
    pairing = [0] * m
    dmap1 = [0] * m
    dmap2 = [0] * m
    color = [0] * m
    forward: list[bool | None] = [None] * m
    for u in range(n1):
        for v in range(n2):
            vtx = u * n2 + v
            base = vtx * d
            for j in range(a):
                x = base + j
                incidence[x] = vtx
                tu, tv = idx1.mate[u][j], idx2.mate[v][j]
                pairing[x] = (tu * n2 + tv) * d + j
                dmap1[x] = idx1.one_dart[u][j]
                dmap2[x] = idx2.one_dart[v][j]
                color[x] = j
            for j in range(b):
                xf = base + a + 2 * j
                xb = xf + 1
                incidence[xf] = vtx
                incidence[xb] = vtx
                su, sv = idx1.succ[u][j], idx2.succ[v][j]
                pu, pv = idx1.pred[u][j], idx2.pred[v][j]
                # forward dart pairs with the successor's backward dart
                pairing[xf] = (su * n2 + sv) * d + a + 2 * j + 1
                pairing[xb] = (pu * n2 + pv) * d + a + 2 * j
                dmap1[xf] = idx1.fwd_dart[u][j]
                dmap2[xf] = idx2.fwd_dart[v][j]
                dmap1[xb] = idx1.bwd_dart[u][j]
                dmap2[xb] = idx2.bwd_dart[v][j]
                color[xf] = color[xb] = a + j
                forward[xf] = True
                forward[xb] = False
    graph = GeneralizedGraph(n, incidence, pairing)
    fact = Factorization(a, b, tuple(color), tuple(forward))
    return CommonCovering(
        graph,
        CoveringMap(graph, g1, dmap1),
        CoveringMap(graph, g2, dmap2),
        fact,
    )


@dataclass(frozen=True)
class IteratedCovering:
    graph: GeneralizedGraph
    projections: tuple[CoveringMap, ...]
    factorization: Factorization


def iterated_common_covering(
    graphs: Sequence[tuple[GeneralizedGraph, frozenset[int] | None]],
) -> IteratedCovering:
    """Left fold of common_covering over a list of equal-degree graphs.

    For even degree no input may have semi-edges and each is split into
    oriented 2-factors; for odd degree every input must supply a
    1-factor containing all of its semi-edges.  Returns the product graph
    together with the composite covering map onto every input.
    """
    if not graphs:
        raise ValueError("need at least one graph")
    degs = [classify(g).regular_degree for g, _ in graphs]
    d = degs[0]
    if d is None or any(dd != d for dd in degs):
        raise ValueError(f"all graphs must be regular of one degree, got {degs}")
    factorizations = []
    for g, matching in graphs:
        if d % 2 == 0:
            factorizations.append(two_factorize(g))
        else:
            if matching is None:
                raise ValueError("odd degree requires a 1-factor for every graph")
            factorizations.append(factorize_with_matching(g, matching))
    acc_graph, _ = graphs[0]
    acc_fact = factorizations[0]
    projections = [identity_covering(acc_graph)]
    for (g, _), f in zip(graphs[1:], factorizations[1:]):
        step = common_covering(acc_graph, acc_fact, g, f)
        projections = [compose_coverings(step.proj1, p) for p in projections]
        projections.append(step.proj2)
        acc_graph = step.graph
        acc_fact = step.factorization
    return IteratedCovering(acc_graph, tuple(projections), acc_fact)


def lift_cover(cm: CoveringMap, cert: CoverCertificate) -> CoverCertificate:
    """Pull an independent exact r-cover of the target back to the source.

    The lifted subset is the vertex-map preimage; it is again an
    independent exact r-cover with the same parameters.
    """
    report = verify_cover(cm.target, cert)
    if not report.ok:
        raise ValueError(f"target certificate invalid: {report.failures[0]}")
    cov = verify_covering(cm)
    if not cov.ok:
        raise ValueError(f"not a covering map: {cov.first_violation}")
    wanted = set(cert.subset)
    subset = tuple(v for v, w in enumerate(cm.vertex_map) if w in wanted)
    return CoverCertificate(subset, cert.r, cert.d)


def check_cover_on_source(cm: CoveringMap, cert: CoverCertificate) -> CoverReport:
    """Convenience: verify a lifted certificate on the covering's source."""
    return verify_cover(cm.source, cert)
