"""
Intersection graphs of subgroups
================================

The graph on the proper nontrivial subgroups of a group, two subgroups being
adjacent when they intersect nontrivially, together with the distance,
diameter and connector checks run on it.
"""
# Author: Intergraph developers
#
# License: BSD 3-Clause

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from joblib import Parallel, delayed
from scipy.sparse import csgraph

from ._permgrp import (
    Group,
    Lattice,
    Subgroup,
    dihedral_join,
    intersect,
    involutions,
    point_stabilizer,
    setwise_stabilizer,
)
from ._utils import _logger, _resolve_n_jobs
from .base import (
    CapExceededError,
    CheckResult,
    DegenerateGraphError,
    Report,
    Verdict,
    check,
)

_ORACLE_VERTEX_CAP = 600
_INDUCED_DIAMETER_BOUND = 62


class IntersectionGraph:
    """Intersection graph of the proper nontrivial subgroups of a group.

    Parameters
    ----------
    lattice : Lattice
        The subgroup lattice the vertices come from.
    vertices : list of Subgroup
        The vertices, in lattice order.
    adjacency : scipy.sparse.csr_matrix of bool
        Symmetric adjacency without self-loops.

    Attributes
    ----------
    parent : Group
        The group whose subgroups are the vertices.
    n_vertices, n_edges : int
    """

    def __init__(self, lattice: Lattice, vertices: List[Subgroup], adjacency):
        self.lattice = lattice
        self.parent = lattice.group
        self.vertices = vertices
        self.adjacency = adjacency
        self.n_vertices = len(vertices)
        self.n_edges = int(adjacency.nnz // 2)

    def __repr__(self):
        return (
            f"IntersectionGraph(vertices={self.n_vertices}, edges={self.n_edges})"
        )

    def is_adjacent(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def neighbors(self, u: int) -> np.ndarray:
        row = self.adjacency.getrow(u)
        return np.sort(row.indices)

    def intersection(self, u: int, v: int) -> Subgroup:
        return intersect(self.vertices[u], self.vertices[v])

    def describe_vertex(self, u: int) -> dict:
        S = self.vertices[u]
        return {"index": int(u), "order": S.order, "fingerprint": S.fingerprint}

    def vertex_index(self, S: Subgroup) -> int:
        for i, T in enumerate(self.vertices):
            if T == S:
                return i
        raise ValueError(f"{S!r} is not a vertex")

    def induced(self, vertices: Sequence[int]) -> "IntersectionGraph":
        idx = np.asarray(vertices, dtype=np.int64)
        sub = self.adjacency[idx][:, idx].tocsr()
        return IntersectionGraph(self.lattice, [self.vertices[i] for i in idx], sub)


def build(lattice: Lattice) -> IntersectionGraph:
    """Build the intersection graph of a complete lattice.

    Two subgroups meet nontrivially iff they share a subgroup of prime order,
    so the adjacency is read off the vertex by prime-order-subgroup incidence
    matrix B as the support of ``B @ B.T``.

    Raises
    ------
    DegenerateGraphError
        If there are fewer than two proper nontrivial subgroups.
    """
    vertices = lattice.proper_nontrivial()
    if len(vertices) < 2:
        raise DegenerateGraphError(
            f"{lattice.group!r} has {len(vertices)} proper nontrivial subgroups, "
            "no intersection graph"
        )
    primes = lattice.prime_order_subgroups()
    prime_gens = np.array([int(P.indices[1]) for P in primes], dtype=np.int64)
    incidence = sp.csr_matrix(
        np.array([S.mask[prime_gens] for S in vertices]), dtype=np.int32
    )
    adjacency = (incidence @ incidence.T).tolil()
    adjacency.setdiag(0)
    adjacency = adjacency.tocsr()
    adjacency.eliminate_zeros()
    adjacency = (adjacency > 0).astype(bool)
    graph = IntersectionGraph(lattice, vertices, adjacency)
    _logger.info(
        f"Built intersection graph: {graph.n_vertices} vertices, "
        f"{graph.n_edges} edges"
    )
    return graph


def components(g: IntersectionGraph) -> Tuple[int, np.ndarray]:
    """Number of connected components and a component label per vertex."""
    return csgraph.connected_components(g.adjacency, directed=False)


def distance(g: IntersectionGraph, u: int, v: int) -> float:
    """BFS distance, ``math.inf`` when u and v lie in different components."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    d = csgraph.shortest_path(g.adjacency, directed=False, unweighted=True, indices=u)
    return int(d[v]) if np.isfinite(d[v]) else math.inf


def _check_vertex(g: IntersectionGraph, u: int):
    if not 0 <= u < g.n_vertices:
        raise ValueError(f"Vertex {u} out of range for {g!r}")


@dataclass
class Diameter:
    """Diameter with the lexicographically smallest attaining pair.

    `value` is ``math.inf`` when the graph is disconnected, and `pair` is
    then a pair of vertices in different components.
    """

    value: float
    pair: Optional[Tuple[int, int]]
    n_components: int = 1
    eccentricities: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def connected(self) -> bool:
        return self.n_components == 1


def _chunk_eccentricities(adjacency, sources: np.ndarray):
    dist = csgraph.shortest_path(
        adjacency, directed=False, unweighted=True, indices=sources
    )
    ecc = dist.max(axis=1)
    far = np.argmax(dist == ecc[:, None], axis=1)
    return ecc, far


def diameter(
    g: IntersectionGraph, *, n_jobs=None, chunk_size: int = 256
) -> Diameter:
    """All-pairs BFS diameter.

    Sources are split in chunks which are processed by joblib workers; the
    reduction keeps the maximum and, among the pairs attaining it, the
    lexicographically smallest ``(u, v)``.
    """
    n = g.n_vertices
    n_components, _ = components(g)
    chunks = [np.arange(s, min(s + chunk_size, n)) for s in range(0, n, chunk_size)]
    _logger.debug(f"Running BFS from {n} sources in {len(chunks)} chunks")
    results = Parallel(n_jobs=_resolve_n_jobs(n_jobs))(
        delayed(_chunk_eccentricities)(g.adjacency, c) for c in chunks
    )
    ecc = np.concatenate([r[0] for r in results])
    far = np.concatenate([r[1] for r in results])
    value = ecc.max()
    u = int(np.argmax(ecc == value))
    pair = (u, int(far[u]))
    if not np.isfinite(value):
        return Diameter(math.inf, pair, int(n_components), ecc)
    return Diameter(int(value), pair, int(n_components), ecc)


def diameter_by_matrix_powering(
    g: IntersectionGraph, *, cap: int = _ORACLE_VERTEX_CAP
) -> float:
    """Diameter from powers of the boolean adjacency matrix.

    The reach matrix of ``I + A`` is multiplied by ``I + A`` until every entry
    is set (the exponent is the diameter) or until it stops growing (the
    graph is disconnected). Kept as an independent oracle for :func:`diameter`.
    """
    n = g.n_vertices
    if n > cap:
        raise CapExceededError(
            f"Matrix powering is limited to {cap} vertices, got {n}", cap=cap, reached=n
        )
    step = g.adjacency.toarray().astype(np.float32) + np.eye(n, dtype=np.float32)
    reach = np.eye(n, dtype=bool)
    k = 0
    while not reach.all():
        grown = (reach.astype(np.float32) @ step) > 0
        if np.array_equal(grown, reach):
            return math.inf
        reach = grown
        k += 1
    return k


@dataclass
class PathWitness:
    """A path in the intersection graph with the intersections along it."""

    vertices: List[int]
    intersections: List[Subgroup]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, g: IntersectionGraph) -> bool:
        if len(self.intersections) != self.length:
            return False
        for (u, v), S in zip(zip(self.vertices, self.vertices[1:]), self.intersections):
            if not g.is_adjacent(u, v) or S.is_trivial():
                return False
            if S != g.intersection(u, v):
                return False
        return True

    def to_dict(self, g: IntersectionGraph) -> dict:
        return {
            "vertices": [g.describe_vertex(u) for u in self.vertices],
            "intersection_orders": [S.order for S in self.intersections],
        }


def shortest_path(g: IntersectionGraph, u: int, v: int) -> PathWitness:
    """A shortest path from u to v, with every consecutive intersection.

    Raises
    ------
    ValueError
        If u and v are not connected.
    """
    _check_vertex(g, u)
    _check_vertex(g, v)
    dist, pred = csgraph.shortest_path(
        g.adjacency,
        directed=False,
        unweighted=True,
        indices=u,
        return_predecessors=True,
    )
    if not np.isfinite(dist[v]):
        raise ValueError(f"Vertices {u} and {v} are not connected")
    path = [v]
    while path[-1] != u:
        path.append(int(pred[path[-1]]))
    path.reverse()
    sections = [g.intersection(a, b) for a, b in zip(path, path[1:])]
    return PathWitness(path, sections)


def _vertex_positions(g: IntersectionGraph, subgroups: Sequence[Subgroup]) -> List[int]:
    index = {S.key: i for i, S in enumerate(g.vertices)}
    return sorted(index[S.key] for S in subgroups if S.key in index)


def maximal_induced(
    g: IntersectionGraph, maximals: Sequence[Subgroup], *, simple: bool = True
) -> Report:
    """Metrics of the subgraph induced by the maximal subgroups.

    Also checks that every vertex is adjacent to a maximal subgroup or is
    one. Connectivity and the bound 62 on the induced diameter are only
    asserted for simple groups.
    """
    report = Report("maximal_induced")
    positions = _vertex_positions(g, maximals)
    is_max = np.zeros(g.n_vertices, dtype=bool)
    is_max[positions] = True
    touches = np.asarray(g.adjacency[:, positions].sum(axis=1)).ravel() > 0
    lonely = np.flatnonzero(~(touches | is_max))
    report.add(
        check(
            "maximals_dominate",
            lonely.size == 0,
            counts={"vertices": g.n_vertices, "maximals": len(positions)},
            failures=[g.describe_vertex(u) for u in lonely[:20]],
        )
    )
    if len(positions) < 2:
        report.add(
            CheckResult(
                "maximal_induced_diameter",
                Verdict.SKIPPED,
                counts={"maximals": len(positions)},
                reason="fewer than two maximal subgroups",
            )
        )
        return report
    sub = g.induced(positions)
    d = diameter(sub)
    values = {"diameter": d.value, "components": d.n_components}
    if not simple:
        report.add(
            CheckResult(
                "maximal_induced_diameter",
                Verdict.SKIPPED,
                values=values,
                reason="group is not simple",
            )
        )
    else:
        report.add(
            check(
                "maximal_induced_diameter",
                d.connected and d.value <= _INDUCED_DIAMETER_BOUND,
                values=values,
            )
        )
    return report


def _attaining(g: IntersectionGraph, d: Diameter) -> List[dict]:
    if d.pair is None:
        return []
    return [{"u": g.describe_vertex(d.pair[0]), "v": g.describe_vertex(d.pair[1])}]


def check_theorem_band(
    g: IntersectionGraph,
    simple: bool,
    *,
    family: Optional[str] = None,
    d: Optional[Diameter] = None,
    n_jobs=None,
) -> Report:
    """Check connectivity and the diameter band of a simple group.

    For simple groups the graph is connected with diameter between 3 and 5;
    alternating groups and groups whose maximal subgroups all have even
    order satisfy the sharper bound 4. Non-simple groups get skipped checks
    with the computed values still recorded.

    Parameters
    ----------
    g : IntersectionGraph
    simple : bool
        Whether the parent group is simple (preset metadata).
    family : str, default=None
        Preset family, 'alternating' enables the alternating bound.
    d : Diameter, default=None
        Precomputed diameter.
    n_jobs : int, default=None
        Workers for the BFS when `d` is not given.
    """
    start = time.perf_counter()
    d = diameter(g, n_jobs=n_jobs) if d is None else d
    report = Report("band", config={"simple": simple, "family": family})
    witnesses = _attaining(g, d)
    values = {"diameter": d.value, "components": d.n_components}

    def _add(name, ok, reason=None):
        if not simple:
            report.add(
                CheckResult(
                    name,
                    Verdict.SKIPPED,
                    values=values,
                    witnesses=witnesses,
                    reason="group is not simple",
                )
            )
        elif ok is None:
            report.add(CheckResult(name, Verdict.SKIPPED, values=values, reason=reason))
        else:
            report.add(
                check(
                    name,
                    ok,
                    values=values,
                    witnesses=witnesses,
                    failures=[] if ok else witnesses,
                )
            )

    _add("connected", d.connected)
    _add("diameter_at_least_3", d.connected and d.value >= 3)
    _add("diameter_at_most_5", d.connected and d.value <= 5)
    if family == "alternating":
        _add("alternating_at_most_4", d.connected and d.value <= 4)
    else:
        _add("alternating_at_most_4", None, reason="not an alternating group")
    maximal_orders = [M.order for M in g.lattice.maximals()]
    if maximal_orders and all(m % 2 == 0 for m in maximal_orders):
        _add("even_maximals_at_most_4", d.connected and d.value <= 4)
    else:
        _add(
            "even_maximals_at_most_4",
            None,
            reason="some maximal subgroup has odd order",
        )
    report.timings["band"] = time.perf_counter() - start
    return report


def diameter_oracle_check(g: IntersectionGraph, d: Optional[Diameter] = None) -> Report:
    """Compare the BFS diameter with the matrix powering oracle."""
    d = diameter(g) if d is None else d
    report = Report("oracle")
    if g.n_vertices > _ORACLE_VERTEX_CAP:
        report.add(
            CheckResult(
                "bfs_matches_oracle",
                Verdict.SKIPPED,
                counts={"vertices": g.n_vertices},
                reason=f"more than {_ORACLE_VERTEX_CAP} vertices",
            )
        )
        return report
    oracle = diameter_by_matrix_powering(g)
    report.add(
        check(
            "bfs_matches_oracle",
            oracle == d.value,
            values={"bfs": d.value, "oracle": oracle},
        )
    )
    return report


def _first_connector(G: Group, xs: np.ndarray, ys: np.ndarray):
    table = G.cayley_table
    orders = G.element_orders[table[xs[:, None], ys[None, :]]]
    proper = 2 * orders < G.order
    hits = np.argwhere(proper)
    if not hits.size:
        return None
    i, j = hits[0]
    return int(xs[i]), int(ys[j])


def dihedral_connector_check(g: IntersectionGraph) -> Report:
    """Find involution pairs generating proper dihedral subgroups.

    For each conjugacy class representative M1 of the even order maximal
    subgroups and every even order maximal M2, the first involutions
    ``x in M1`` and ``y in M2`` (in element order) with ``<x, y>`` proper
    are recorded. Conjugating the pair moves the certificate to every pair
    of maximal subgroups, so ``d(M1, M2) <= 2`` holds throughout.
    """
    G = g.parent
    lattice = g.lattice
    even = [M for M in lattice.maximals() if M.order % 2 == 0]
    labels = lattice.class_of()
    seen_classes = set()
    reps = []
    for M in even:
        c = labels[lattice.position(M)]
        if c not in seen_classes:
            seen_classes.add(c)
            reps.append(M)
    inv = {M.key: involutions(M) for M in even}
    witnesses, failures = [], []
    dihedral_orders = set()
    for M1 in reps:
        for M2 in even:
            found = _first_connector(G, inv[M1.key], inv[M2.key])
            if found is None:
                failures.append(
                    {"M1": M1.order, "M2": M2.order, "M2_key": M2.fingerprint}
                )
                continue
            D = dihedral_join(G, *found)
            expected = 2 * int(G.element_orders[G.cayley_table[found[0], found[1]]])
            if D.order != expected or D.is_whole():
                failures.append(
                    {"M1": M1.order, "M2": M2.order, "D": D.order, "expected": expected}
                )
                continue
            dihedral_orders.add(D.order)
            witnesses.append(
                {
                    "M1": M1.order,
                    "M2": M2.order,
                    "D": D.order,
                    "x": found[0],
                    "y": found[1],
                }
            )
    report = Report("connectors")
    if not even:
        report.add(
            CheckResult(
                "dihedral_connectors",
                Verdict.SKIPPED,
                reason="no maximal subgroup of even order",
            )
        )
        return report
    report.add(
        check(
            "dihedral_connectors",
            not failures,
            counts={
                "class_representatives": len(reps),
                "even_maximals": len(even),
                "pairs": len(reps) * len(even),
            },
            values={"dihedral_orders": sorted(dihedral_orders)},
            witnesses=witnesses[:50],
            failures=failures,
        )
    )
    return report


def l2q_pointstab_check(q: int, *, group: Optional[Group] = None) -> Report:
    """Point stabilizers of PSL(2, q) on the projective line, q = 3 mod 4.

    Every two point stabilizers meet nontrivially and have odd order
    ``q(q - 1)/2``. Involutions fix no point, and for every point U and every
    involution g, g lies in the setwise stabilizer of ``{U, g(U)}``, which
    meets the stabilizer of U nontrivially.

    Parameters
    ----------
    q : {7, 11, 19}
        Field size.
    group : Group, default=None
        The group acting on the ``q + 1`` points, loaded from the presets when
        None.
    """
    if q not in (7, 11, 19):
        raise ValueError(f"q should be one of 7, 11, 19, got {q}")
    if group is None:
        from .datasets import load_preset

        group = load_preset(f"psl2_{q}", allow_large=True).group
    G = group
    if G.degree != q + 1:
        raise ValueError(f"Expected an action on {q + 1} points, got degree {G.degree}")
    start = time.perf_counter()
    stabs = [point_stabilizer(G, u) for u in range(G.degree)]
    masks = np.array([S.mask for S in stabs], dtype=np.int64)
    meet = masks @ masks.T
    iu, ju = np.triu_indices(G.degree, k=1)
    trivial = [(int(a), int(b)) for a, b in zip(iu, ju) if meet[a, b] <= 1]
    expected = q * (q - 1) // 2

    report = Report("l2q", config={"q": q})
    report.add(
        check(
            "stabilizer_pairs_meet",
            not trivial,
            counts={"pairs": len(iu)},
            values={"min_intersection": int(meet[iu, ju].min())},
            failures=[{"U": a + 1, "W": b + 1} for a, b in trivial],
        )
    )
    orders = sorted({S.order for S in stabs})
    report.add(
        check(
            "stabilizer_order_odd",
            orders == [expected] and expected % 2 == 1,
            values={"orders": orders, "expected": expected},
        )
    )

    invols = np.flatnonzero(G.element_orders == 2)
    moved = G.elements[invols] != np.arange(G.degree)
    report.add(
        check(
            "involutions_fixed_point_free",
            bool(np.all(moved)),
            counts={"involutions": int(invols.size)},
        )
    )
    pair_stabs = {}
    bad = []
    for U in range(G.degree):
        for g in invols:
            W = int(G.elements[g, U])
            key = (min(U, W), max(U, W))
            if key not in pair_stabs:
                pair_stabs[key] = setwise_stabilizer(G, list(key))
            pair_stab = pair_stabs[key]
            if not pair_stab.mask[g] or intersect(pair_stab, stabs[U]).is_trivial():
                bad.append({"U": U + 1, "g": int(g)})
    report.add(
        check(
            "involution_in_pair_stabilizer",
            not bad,
            counts={
                "involutions": int(invols.size),
                "point_involution_pairs": G.degree * int(invols.size),
            },
            failures=bad,
        )
    )
    report.timings["l2q"] = time.perf_counter() - start
    return report
