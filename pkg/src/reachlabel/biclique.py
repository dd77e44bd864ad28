"""Balanced biclique stripping for one layer pair of the flat DAG.

Repeatedly extracts a K_{q,q} from the bipartite graph between two
consecutive layers while the graph is both large (w = |A|+|B| above the size
threshold) and dense (|E| above w^2/log2^6 w), removing the biclique's nodes
with all their incident edges. What survives is the rest graph; its
neighborhoods get stored verbatim (or restricted to high-degree nodes after
a density stop) so the per-node leftovers stay small.

The target size q starts at max(1, floor(log2 w / max(1, log2(w^2/|E|))))
and decrements on failure; with at least one edge present, q = 1 always
succeeds, so the loop advances. This stand-in policy does not reproduce the
extremal guarantee for the biggest balanced biclique; label correctness
never depends on which bicliques are found.

Profiles: "paper" keeps the real thresholds (c_min = 64 and n_ref^(3/4), so
desk-scale graphs rarely extract anything); "force" (c_min = 2, density
condition reduced to |E| >= 1) exists so tests exercise the extraction and
everything downstream of it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

EXHAUSTIVE_LIMIT = 24
_TRIALS = 40


@dataclass(frozen=True)
class BicliqueProfile:
    name: str
    c_min: int
    use_size_power: bool
    force_density: bool

    def size_threshold(self, n_ref: int) -> float:
        if self.use_size_power:
            return max(self.c_min, n_ref**0.75)
        return float(self.c_min)

    def density_ok(self, w: int, m: int) -> bool:
        if self.force_density:
            return m >= 1
        if w < 2:
            return False
        return m > w * w / math.log2(w) ** 6


PAPER_PROFILE = BicliqueProfile("paper", 64, True, False)
FORCE_PROFILE = BicliqueProfile("force", 2, False, True)
_PROFILES = {p.name: p for p in (PAPER_PROFILE, FORCE_PROFILE)}


def get_profile(name) -> BicliqueProfile:
    if isinstance(name, BicliqueProfile):
        return name
    try:
        return _PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown biclique profile {name!r}") from None


@dataclass(frozen=True)
class BicliqueDecomposition:
    bicliques: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    a_rest: tuple[int, ...]
    b_rest: tuple[int, ...]
    rest_edges: frozenset[tuple[int, int]]
    termination: str  # "size" or "density"
    n_ref: int
    profile: BicliqueProfile


def _qstar(w: int, m: int) -> int:
    if w < 2 or m < 1:
        return 1
    denom = max(1.0, math.log2(w * w / m))
    return max(1, int(math.log2(w) / denom))


def find_biclique(adj_a: dict, adj_b: dict, q: int):
    """One K_{q,q} as (a_side, b_side) sorted tuples, or None.

    Exhaustive over the smaller candidate side when the graph is tiny,
    otherwise a fixed number of seeded random neighborhood intersections.
    """
    if q < 1:
        raise ValueError("q must be positive")
    ac = sorted(a for a, nb in adj_a.items() if len(nb) >= q)
    bc = sorted(b for b, nb in adj_b.items() if len(nb) >= q)
    if len(ac) < q or len(bc) < q:
        return None

    w = len(adj_a) + len(adj_b)
    if w <= EXHAUSTIVE_LIMIT:
        from_a = len(ac) <= len(bc)
        cands, adj = (ac, adj_a) if from_a else (bc, adj_b)
        for subset in combinations(cands, q):
            common = set(adj[subset[0]])
            for x in subset[1:]:
                common &= adj[x]
                if len(common) < q:
                    break
            if len(common) >= q:
                other = tuple(sorted(common)[:q])
                return (subset, other) if from_a else (other, subset)
        return None

    m = sum(len(nb) for nb in adj_a.values())
    avg_a = sum(len(adj_a[a]) for a in ac) / len(ac)
    avg_b = sum(len(adj_b[b]) for b in bc) / len(bc)
    from_a = avg_a >= avg_b
    cands, adj = (ac, adj_a) if from_a else (bc, adj_b)
    rng = random.Random((w << 40) ^ (m << 8) ^ q)
    for _ in range(_TRIALS):
        subset = tuple(sorted(rng.sample(cands, q)))
        common = set(adj[subset[0]])
        for x in subset[1:]:
            common &= adj[x]
            if len(common) < q:
                break
        if len(common) >= q:
            other = tuple(sorted(common)[:q])
            return (subset, other) if from_a else (other, subset)
    return None


def find_bicliques(a_nodes, b_nodes, edges, profile, n_ref: int) -> BicliqueDecomposition:
    """Run the stripping loop on the bipartite graph (a_nodes, b_nodes, edges)."""
    profile = get_profile(profile)
    adj_a = {a: set() for a in a_nodes}
    adj_b = {b: set() for b in b_nodes}
    for a, b in edges:
        if a not in adj_a or b not in adj_b:
            raise ValueError(f"edge ({a},{b}) not between the given sides")
        adj_a[a].add(b)
        adj_b[b].add(a)

    thr = profile.size_threshold(n_ref)
    bicliques = []
    while True:
        w = len(adj_a) + len(adj_b)
        m = sum(len(nb) for nb in adj_a.values())
        if not w > thr:
            termination = "size"
            break
        if not profile.density_ok(w, m):
            termination = "density"
            break
        got = None
        for q in range(min(_qstar(w, m), len(adj_a), len(adj_b)), 0, -1):
            got = find_biclique(adj_a, adj_b, q)
            if got is not None:
                break
        assert got is not None, "q=1 with an edge present cannot fail"
        a_side, b_side = got
        for a in a_side:
            for b in adj_a.pop(a):
                adj_b[b].discard(a)
        for b in b_side:
            for a in adj_b.pop(b):
                adj_a[a].discard(b)
        bicliques.append((a_side, b_side))

    rest_edges = frozenset((a, b) for a, nb in adj_a.items() for b in nb)
    return BicliqueDecomposition(
        bicliques=tuple(bicliques),
        a_rest=tuple(sorted(adj_a)),
        b_rest=tuple(sorted(adj_b)),
        rest_edges=rest_edges,
        termination=termination,
        n_ref=n_ref,
        profile=profile,
    )


@dataclass(frozen=True)
class RestNeighborMap:
    """Per-node kept neighborhoods of the rest graph.

    After a size stop every node keeps its full residual neighborhood. After
    a density stop, nodes with at least n_ref/log2^3(n_ref) residual edges
    keep only their high-degree neighbors while the others keep everything;
    either way each residual edge survives in at least one endpoint's map.
    """

    neighbors: dict[int, tuple[int, ...]]
    termination: str
    big_threshold: float

    def get(self, u: int) -> tuple[int, ...]:
        return self.neighbors.get(u, ())


def build_n_rest(dec: BicliqueDecomposition) -> RestNeighborMap:
    full: dict[int, list[int]] = {u: [] for u in dec.a_rest + dec.b_rest}
    for a, b in sorted(dec.rest_edges):
        full[a].append(b)
        full[b].append(a)

    if dec.termination == "size":
        kept = {u: tuple(sorted(nb)) for u, nb in full.items()}
        return RestNeighborMap(kept, "size", 0.0)

    n = max(dec.n_ref, 2)
    thr = n / math.log2(n) ** 3
    big = {u for u, nb in full.items() if len(nb) >= thr}
    kept = {}
    for u, nb in full.items():
        if u in big:
            kept[u] = tuple(sorted(x for x in nb if x in big))
        else:
            kept[u] = tuple(sorted(nb))
    return RestNeighborMap(kept, "density", thr)
