"""Decompose regular generalized graphs into 1-factors and oriented 2-factors.

A factorization colours every dart with a class id: classes 0..a-1 are
1-factors (one dart per vertex; semi-edges live only here) and classes
a..a+b-1 are 2-factors (two darts per vertex, no semi-edges) whose edges
carry an orientation, recorded as a forward flag on exactly one dart of
each orbit.  Regular graphs of even degree split into d/2 oriented
2-factors; odd degree needs a 1-factor containing all semi-edges to be
supplied, after which the rest splits evenly.

All tie-breaking is by smallest dart/vertex id, so outputs are
reproducible byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import GeneralizedGraph, classify


@dataclass(frozen=True)
class Factorization:
    """Dart colouring into a 1-factor classes and b oriented 2-factor classes."""

    a: int
    b: int
    color: tuple[int, ...]
    forward: tuple[bool | None, ...]


def validate_factorization(g: GeneralizedGraph, f: Factorization) -> None:
    """Raise ValueError unless f satisfies every factorization invariant on g."""
    if f.a < 0 or f.b < 0:
        raise ValueError("class counts must be >= 0")
    if len(f.color) != g.m or len(f.forward) != g.m:
        raise ValueError("color/forward arrays must cover every dart")
    n_classes = f.a + f.b
    for x in range(g.m):
        c = f.color[x]
        if not 0 <= c < n_classes:
            raise ValueError(f"dart {x} has out-of-range color {c}")
        y = g.pairing[x]
        if f.color[y] != c:
            raise ValueError(f"paired darts {x},{y} have different colors")
        if y == x and c >= f.a:
            raise ValueError(f"semi-edge {x} in 2-factor class {c}")
        if c < f.a:
            if f.forward[x] is not None:
                raise ValueError(f"1-factor dart {x} carries a forward flag")
        else:
            if f.forward[x] is None:
                raise ValueError(f"2-factor dart {x} lacks a forward flag")
            if x < y and f.forward[x] == f.forward[y]:
                raise ValueError(f"orbit ({x},{y}) must have exactly one forward dart")
    per_vertex = [[0] * n_classes for _ in range(g.n)]
    per_vertex_fwd = [[0] * n_classes for _ in range(g.n)]
    for x, v in enumerate(g.incidence):
        c = f.color[x]
        per_vertex[v][c] += 1
        if f.forward[x]:
            per_vertex_fwd[v][c] += 1
    for v in range(g.n):
        for c in range(f.a):
            if per_vertex[v][c] != 1:
                raise ValueError(f"vertex {v} has {per_vertex[v][c]} darts of 1-factor color {c}")
        for c in range(f.a, n_classes):
            if per_vertex[v][c] != 2:
                raise ValueError(f"vertex {v} has {per_vertex[v][c]} darts of 2-factor color {c}")
            if per_vertex_fwd[v][c] != 1:
                raise ValueError(f"vertex {v} must have exactly one forward dart of color {c}")


def validate_one_factor(
    g: GeneralizedGraph, darts: frozenset[int], require_all_semis: bool = True
) -> None:
    """Raise ValueError unless `darts` is a 1-factor of g.

    A 1-factor gives every vertex exactly one dart and is closed under
    pairing; with require_all_semis it must also contain every semi-edge.
    """
    per_vertex = [0] * g.n
    for x in darts:
        if not 0 <= x < g.m:
            raise ValueError(f"dart {x} out of range")
        if g.pairing[x] not in darts:
            raise ValueError(f"matching not closed under pairing at dart {x}")
        per_vertex[g.incidence[x]] += 1
    for v, c in enumerate(per_vertex):
        if c != 1:
            raise ValueError(f"vertex {v} has {c} matching darts, want 1")
    if require_all_semis:
        for x in range(g.m):
            if g.pairing[x] == x and x not in darts:
                raise ValueError(f"semi-edge {x} missing from matching")


def euler_orientation(g: GeneralizedGraph) -> list[list[int]]:
    """Closed Euler trails, one per component with darts, as out-dart sequences.

    Requires no semi-edges and all degrees even.  Trails start at the
    smallest vertex of their component and always leave along the unused
    dart with the smallest id; subtours splice in at first discovery.
    Each pairing orbit is traversed exactly once (loops once).
    """
    for x in range(g.m):
        if g.pairing[x] == x:
            raise ValueError("Euler orientation requires a graph without semi-edges")
    for v, deg in enumerate(g.degrees):
        if deg % 2:
            raise ValueError(f"vertex {v} has odd degree {deg}")
    used = bytearray(g.m)
    ptr = [0] * g.n
    seen_vertex = bytearray(g.n)
    trails: list[list[int]] = []
    for start in range(g.n):
        if seen_vertex[start] or not g.darts_at[start]:
            if not seen_vertex[start]:
                seen_vertex[start] = 1
            continue
        # stack holds (vertex, dart we arrived along); reversed pop order
        # yields the trail with subtours spliced where first discovered.
        stack: list[tuple[int, int]] = [(start, -1)]
        rev: list[int] = []
        while stack:
            v, in_dart = stack[-1]
            seen_vertex[v] = 1
            darts = g.darts_at[v]
            i = ptr[v]
            while i < len(darts) and used[darts[i]]:
                i += 1
            ptr[v] = i
            if i < len(darts):
                x = darts[i]
                used[x] = 1
                used[g.pairing[x]] = 1
                stack.append((g.incidence[g.pairing[x]], x))
            else:
                stack.pop()
                if in_dart >= 0:
                    rev.append(in_dart)
        rev.reverse()
        trails.append(rev)
    return trails


def bipartite_matching_decomposition(
    n_left: int, n_right: int, edges: Sequence[tuple[int, int]]
) -> list[list[int]]:
    """Split a k-regular bipartite multigraph into k perfect matchings.

    Edges are (left, right) index pairs; multiplicity is allowed.  Returns
    k lists of edge indices partitioning the edge multiset.  Matchings are
    extracted one at a time by augmenting-path search seeded in left-vertex
    order, scanning candidate edges in input order, so the result is
    deterministic.
    """
    deg_l = [0] * n_left
    deg_r = [0] * n_right
    adj: list[list[int]] = [[] for _ in range(n_left)]
    for i, (u, w) in enumerate(edges):
        if not (0 <= u < n_left and 0 <= w < n_right):
            raise ValueError(f"edge {i} out of range")
        deg_l[u] += 1
        deg_r[w] += 1
        adj[u].append(i)
    k = deg_l[0] if n_left else 0
    if any(d != k for d in deg_l) or any(d != k for d in deg_r):
        raise ValueError("graph is not bipartite-regular")
    if n_left != n_right and k > 0:
        raise ValueError("regular bipartite graph needs equal class sizes")

    removed = bytearray(len(edges))
    matchings: list[list[int]] = []
    for _ in range(k):
        match_l: list[int] = [-1] * n_left  # edge index matched at each left vertex
        match_r: list[int] = [-1] * n_right

        def try_augment(u: int, visited: bytearray) -> bool:
            for i in adj[u]:
                if removed[i]:
                    continue
                w = edges[i][1]
                if visited[w]:
                    continue
                visited[w] = 1
                if match_r[w] == -1 or try_augment(edges[match_r[w]][0], visited):
                    match_l[u] = i
                    match_r[w] = i
                    return True
            return False

        for u in range(n_left):
            if not try_augment(u, bytearray(n_right)):
                raise ValueError("no perfect matching found; input not regular bipartite")
        matching = [match_l[u] for u in range(n_left)]
        for i in matching:
            removed[i] = 1
        matchings.append(matching)
    if not all(removed):
        raise AssertionError("matchings do not partition the edge multiset")
    return matchings


def two_factorize(g: GeneralizedGraph) -> Factorization:
    """Split a regular graph of even degree d into d/2 oriented 2-factors.

    Orient all edges along Euler trails, split each vertex into an
    out-copy and an in-copy (one out->in edge per traversed orbit; a loop
    contributes v_out->v_in, so loops may survive as fixed points), and
    decompose the resulting d/2-regular bipartite graph into perfect
    matchings.  Each matching is a permutation of the vertices whose
    cycles form one 2-factor class, with forward darts along the
    permutation.
    """
    cls = classify(g)
    d = cls.regular_degree
    if d is None:
        raise ValueError("graph is not regular")
    if d % 2:
        raise ValueError(f"degree {d} is odd; supply a 1-factor first")
    trails = euler_orientation(g)
    out_darts = [x for trail in trails for x in trail]
    out_darts.sort()
    oriented = [(g.incidence[x], g.incidence[g.pairing[x]]) for x in out_darts]
    rounds = bipartite_matching_decomposition(g.n, g.n, oriented)
    color = [0] * g.m
    forward: list[bool | None] = [None] * g.m
    for j, matching in enumerate(rounds):
        for i in matching:
            x = out_darts[i]
            color[x] = j
            color[g.pairing[x]] = j
            forward[x] = True
            if g.pairing[x] != x:
                forward[g.pairing[x]] = False
    f = Factorization(0, d // 2, tuple(color), tuple(forward))
    validate_factorization(g, f)
    return f


def _delete_darts(
    g: GeneralizedGraph, drop: frozenset[int]
) -> tuple[GeneralizedGraph, list[int]]:
    """Subgraph keeping all vertices but dropping the given darts (orbit-closed)."""
    keep = [x for x in range(g.m) if x not in drop]
    new_id = {x: i for i, x in enumerate(keep)}
    incidence = [g.incidence[x] for x in keep]
    pairing = [new_id[g.pairing[x]] for x in keep]
    return GeneralizedGraph(g.n, incidence, pairing), keep


def factorize_with_matching(g: GeneralizedGraph, matching: frozenset[int]) -> Factorization:
    """Factorize an odd-degree regular graph: the given 1-factor is class 0.

    The matching must contain every semi-edge; removing it leaves an
    even-degree graph without semi-edges, which two_factorize splits into
    the remaining (d-1)/2 classes.
    """
    matching = frozenset(matching)
    cls = classify(g)
    d = cls.regular_degree
    if d is None:
        raise ValueError("graph is not regular")
    if d % 2 == 0:
        raise ValueError(f"degree {d} is even; use two_factorize")
    validate_one_factor(g, matching, require_all_semis=True)
    rest, keep = _delete_darts(g, matching)
    sub = two_factorize(rest)
    color = [0] * g.m
    forward: list[bool | None] = [None] * g.m
    for i, x in enumerate(keep):
        color[x] = sub.color[i] + 1
        forward[x] = sub.forward[i]
    f = Factorization(1, (d - 1) // 2, tuple(color), tuple(forward))
    validate_factorization(g, f)
    return f
