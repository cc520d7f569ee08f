"""Amicable vertex pairs and the counterexample campaigns built on them."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import networkx as nx

from .errors import DomainError
from .hypercube import CubeStatus, CubeVerdict, CubeWitness, PolyCube, check_arrow, cube_falsify
from .netgraph import Multigraph, delete_spindle, identify_vertices, is_cactus, random_sp, random_sp_prime
from .polycore import EvenOddPair, Poly, even_odd_split
from .realroot import interlaces, schur_quasi_stable
from .relical import h_poly, j_or_zero, j_poly

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutPairContext:
    base: Multigraph
    pair: tuple[int, int]
    a: int
    j_minus: Poly
    j_bullet: Poly
    split_minus: EvenOddPair = field(repr=False)
    split_bullet: EvenOddPair = field(repr=False)


def make_context(base: Multigraph, pair: tuple[int, int], a: int, j_minus: Poly, j_bullet: Poly) -> CutPairContext:
    return CutPairContext(base, pair, a, j_minus, j_bullet, even_odd_split(j_minus), even_odd_split(j_bullet))


def cut_pair_context(g: Multigraph, v: int, w: int) -> CutPairContext:
    if v == w:
        raise DomainError("the pair needs two distinct vertices")
    if not g.is_connected():
        raise DomainError("graph is disconnected")
    a = g.multiplicity(v, w)
    minus = delete_spindle(g, (v, w)) if a else g
    bullet = identify_vertices(g, v, w)
    return make_context(g, (min(v, w), max(v, w)), a, j_or_zero(minus), j_poly(bullet))


def amicable_square(ctx: CutPairContext) -> PolyCube:
    m0, m1 = ctx.split_minus
    b0, b1 = ctx.split_bullet
    return PolyCube.square(bl=m1 + b1, tl=m0 + b0, br=m0, tr=m1.shift(1))


def very_amicable_squares(ctx: CutPairContext) -> tuple[PolyCube, PolyCube]:
    m0, m1 = ctx.split_minus
    b0, b1 = ctx.split_bullet
    return (
        PolyCube.square(bl=b1, tl=b0, br=m0, tr=m1.shift(1)),
        PolyCube.square(bl=m1, tl=m0, br=b0, tr=b1.shift(1)),
    )


def _fast_path(ctx: CutPairContext) -> CubeVerdict:
    b0, b1 = ctx.split_bullet
    why = check_arrow(b0, b1)
    if why:
        return CubeVerdict(CubeStatus.FALSIFIED, 0, True, CubeWitness((), (), (), (b0, b1), why))
    return CubeVerdict(CubeStatus.NOT_FALSIFIED, 0, True)


def is_amicable(ctx: CutPairContext, samples: int = 100, seed: int = 0) -> CubeVerdict:
    if not ctx.j_minus:
        return _fast_path(ctx)
    return cube_falsify(amicable_square(ctx), samples, seed)


def very_amicable_verdicts(ctx: CutPairContext, samples: int = 100, seed: int = 0) -> tuple[CubeVerdict, CubeVerdict]:
    if not ctx.j_minus:
        v = _fast_path(ctx)
        return v, v
    s1, s2 = very_amicable_squares(ctx)
    return cube_falsify(s1, samples, seed), cube_falsify(s2, samples, seed)


def is_very_amicable(ctx: CutPairContext, samples: int = 100, seed: int = 0) -> CubeVerdict:
    v1, v2 = very_amicable_verdicts(ctx, samples, seed)
    if v1.falsified != v2.falsified:
        log.warning("the two very-amicable squares disagree for %s pair %s", ctx.base, ctx.pair)
    if v1.falsified:
        return v1
    if v2.falsified:
        return v2
    return CubeVerdict(CubeStatus.NOT_FALSIFIED, v1.samples_used + v2.samples_used, v1.exact and v2.exact)


# -- graph sources -------------------------------------------------------------

def _canonical_bruteforce(n: int, spindles: dict) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v]), c) for (u, v), c in spindles.items()))
        if best is None or key < best:
            best = key
    return best


def connected_multigraphs(n_max: int = 5, m_max: int = 8, mult_max: int = 3, n_min: int = 2) -> Iterator[Multigraph]:
    """Connected loopless multigraphs up to isomorphism, by spindle vectors over simple bases."""
    if n_max > 7:
        raise DomainError("the graph atlas stops at seven vertices")
    for base in nx.graph_atlas_g():
        n = base.number_of_nodes()
        if n < n_min or n > n_max or not nx.is_connected(base):
            continue
        edges = sorted(tuple(sorted(e)) for e in base.edges())
        if len(edges) > m_max:
            continue
        seen = set()
        for mults in itertools.product(range(1, mult_max + 1), repeat=len(edges)):
            if sum(mults) > m_max:
                continue
            smap = dict(zip(edges, mults))
            key = _canonical_bruteforce(n, smap)
            if key in seen:
                continue
            seen.add(key)
            yield Multigraph(n, key)


def pair_orbit_representatives(g: Multigraph) -> list[tuple[int, int]]:
    """One vertex pair from each orbit of the automorphism group (brute force over permutations)."""
    smap = g.spindle_map
    autos = []
    for perm in itertools.permutations(range(g.n)):
        if all(smap.get((min(perm[u], perm[v]), max(perm[u], perm[v]))) == c for (u, v), c in smap.items()):
            autos.append(perm)
    reps = []
    covered = set()
    for v, w in itertools.combinations(range(g.n), 2):
        if (v, w) in covered:
            continue
        reps.append((v, w))
        for p in autos:
            covered.add((min(p[v], p[w]), max(p[v], p[w])))
    return reps


# -- campaigns -----------------------------------------------------------------

@dataclass
class ScanReport:
    graphs: int = 0
    pairs: int = 0
    exact_pairs: int = 0
    sampled_pairs: int = 0
    samples_per_pair: int = 0
    falsified: list[dict] = field(default_factory=list)
    consequence_failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        key = lambda r: (r["graph"], r.get("pair", ()))
        return {
            "graphs": self.graphs,
            "pairs": self.pairs,
            "exact_pairs": self.exact_pairs,
            "sampled_pairs": self.sampled_pairs,
            "samples_per_pair": self.samples_per_pair,
            "falsified": sorted(self.falsified, key=key),
            "consequence_failures": sorted(self.consequence_failures, key=key),
        }

    @property
    def ok(self) -> bool:
        return not self.falsified and not self.consequence_failures


def _pair_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def conjecture_scan(
    graphs: Iterable[Multigraph],
    pairs: str | Iterable[tuple[int, int]] = "all",
    samples: int = 100,
    seed: int = 0,
    progress_every: int = 100,
) -> ScanReport:
    """Look for a vertex pair whose amicability square is falsified.

    ``pairs`` is ``"all"`` (one representative per automorphism orbit) or an
    explicit list applied to every graph.  Whenever at least one pair of a
    graph survives, the consequence ``J1 < J0`` is verified exactly.
    """
    rep = ScanReport(samples_per_pair=samples)
    index = 0
    explicit = None if isinstance(pairs, str) else [tuple(p) for p in pairs]
    if explicit is None and pairs != "all":
        raise DomainError(f"unknown pair selection {pairs!r}")
    for g in graphs:
        rep.graphs += 1
        chosen = explicit if explicit is not None else pair_orbit_representatives(g)
        survived = False
        for v, w in chosen:
            ctx = cut_pair_context(g, v, w)
            verdict = is_amicable(ctx, samples, _pair_seed(seed, index))
            index += 1
            rep.pairs += 1
            if verdict.exact:
                rep.exact_pairs += 1
            else:
                rep.sampled_pairs += 1
            if verdict.falsified:
                rep.falsified.append({"graph": g.to_text(), "pair": [v, w], "verdict": verdict.to_json()})
            else:
                survived = True
        if survived:
            j0, j1 = even_odd_split(j_poly(g))
            if not interlaces(j1, j0):
                rep.consequence_failures.append({"graph": g.to_text(), "reason": "J1 does not interlace J0"})
            elif not schur_quasi_stable(h_poly(g), g.d).quasi_stable:
                rep.consequence_failures.append({"graph": g.to_text(), "reason": "H is not Schur quasi-stable"})
        if progress_every and rep.graphs % progress_every == 0:
            log.info("scanned %d graphs, %d pairs", rep.graphs, rep.pairs)
    return rep


@dataclass(frozen=True)
class BCResult:
    graph: Multigraph
    quasi_stable: bool
    exact: bool
    interlacing: bool


def check_network(g: Multigraph) -> BCResult:
    """Exact Schur verdict for H together with the exact ``J1 < J0`` test."""
    v = schur_quasi_stable(h_poly(g), g.d)
    j0, j1 = even_odd_split(j_poly(g))
    return BCResult(g, v.quasi_stable, v.method.value.startswith("exact"), interlaces(j1, j0))


def sp_prime_networks(count: int, seed: int, max_block_edges: int = 12) -> Iterator[Multigraph]:
    for i in range(count):
        yield random_sp_prime(_pair_seed(seed, i), max_block_edges=max_block_edges)


def sp_terminal_scan(count: int, seed: int, samples: int = 200, max_size: int = 10) -> ScanReport:
    """Amicability of the terminal pair of random series-parallel networks."""
    rep = ScanReport(samples_per_pair=samples)
    for i in range(count):
        s = _pair_seed(seed, i)
        net = random_sp(1 + s % max_size, s)
        ctx = cut_pair_context(net.graph, *net.terminals)
        verdict = is_amicable(ctx, samples, s)
        rep.graphs += 1
        rep.pairs += 1
        if verdict.exact:
            rep.exact_pairs += 1
        else:
            rep.sampled_pairs += 1
        if verdict.falsified:
            rep.falsified.append({"graph": net.graph.to_text(), "pair": list(net.terminals), "verdict": verdict.to_json()})
    return rep


def cactus_graphs(n_max: int = 5, mult_max: int = 3) -> Iterator[Multigraph]:
    """Thick cacti over every base cactus with at most ``n_max`` vertices."""
    for base in nx.graph_atlas_g():
        n = base.number_of_nodes()
        if n < 2 or n > n_max or not nx.is_connected(base):
            continue
        edges = sorted(tuple(sorted(e)) for e in base.edges())
        if not is_cactus(Multigraph.from_edges(n, edges)):
            continue
        for mults in itertools.product(range(1, mult_max + 1), repeat=len(edges)):
            yield Multigraph.from_edges(n, [(u, v, c) for (u, v), c in zip(edges, mults)])
