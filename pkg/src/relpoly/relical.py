"""All-terminal reliability: R, H and J engines, closed forms and oracles."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

import numpy as np

from . import _intpoly as zx
from .errors import DomainError, RefusalError
from .netgraph import (
    Multigraph,
    canonical_form,
    contract_spindle,
    delete_spindle,
    glue,
    identify_vertices,
    thick_cycle,
    thick_path,
)
from .polycore import EvenOddPair, Poly, epsilon, even_odd_split, mobius_q_to_u, s_poly

BRUTE_FORCE_CAP = 20


# -- spindle recursion engine --------------------------------------------------

def _bridges(g: Multigraph) -> set[tuple[int, int]]:
    adj = g.adjacency()
    disc = [-1] * g.n
    low = [0] * g.n
    out = set()
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(sorted(adj[w]))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.add((min(p, v), max(p, v)))
    return out


def _q_pow(c: int) -> list[int]:
    return [0] * c + [1]


def _one_minus_q_pow(c: int) -> list[int]:
    return [1] + [0] * (c - 1) + [-1]


def _geometric(c: int) -> list[int]:
    return [1] * c


def _u_plus_1_pow(c: int) -> list[int]:
    return [comb(c, i) for i in range(c + 1)]


def _spindle_j(c: int) -> list[int]:
    # ((u+1)**c - (u-1)**c) / 2 keeps the terms with c - i odd
    return zx.strip([comb(c, i) if (c - i) % 2 else 0 for i in range(c + 1)])


# (weight on G - sigma, weight on G / sigma) for each polynomial kind
_FACTORS = {
    "R": (_q_pow, _one_minus_q_pow),
    "H": (_q_pow, _geometric),
    "J": (_u_plus_1_pow, _spindle_j),
}

_CACHE: dict[tuple, list[int]] = {}


def clear_caches() -> None:
    _CACHE.clear()


def _engine(g: Multigraph, kind: str) -> list[int]:
    if g.n == 1:
        return [1]
    key = (kind, canonical_form(g))
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    del_f, con_f = _FACTORS[kind]
    bridges = _bridges(g)
    spindles = g.spindle_map
    if bridges:
        s = min(bridges)
        out = zx.mul(con_f(spindles[s]), _engine(contract_spindle(g, s), kind))
    else:
        # every spindle lies on a cycle; take one at a highest-degree vertex
        adj = g.adjacency()
        v = max(range(g.n), key=lambda x: (len(adj[x]), -x))
        w = min(adj[v], key=lambda x: (len(adj[x]), x))
        s = (min(v, w), max(v, w))
        c = spindles[s]
        out = zx.add(
            zx.mul(del_f(c), _engine(delete_spindle(g, s), kind)),
            zx.mul(con_f(c), _engine(contract_spindle(g, s), kind)),
        )
    _CACHE[key] = out
    return out


def reliability_poly(g: Multigraph) -> Poly:
    """R(q); the zero polynomial for a disconnected graph."""
    if not g.is_connected():
        return Poly()
    return Poly(_engine(g, "R"))


def h_poly(g: Multigraph) -> Poly:
    if not g.is_connected():
        raise DomainError("H is defined for connected graphs only")
    return Poly(_engine(g, "H"))


def j_poly(g: Multigraph) -> Poly:
    if not g.is_connected():
        raise DomainError("J is defined for connected graphs only")
    return Poly(_engine(g, "J"))


def j_or_zero(g: Multigraph) -> Poly:
    """J(G), or the zero polynomial when ``g`` is disconnected."""
    return j_poly(g) if g.is_connected() else Poly()


# -- reports -------------------------------------------------------------------

@dataclass(frozen=True)
class ReliabilityReport:
    r: Poly
    h: Poly
    j: Poly
    n: int
    m: int
    d: int

    @property
    def j_split(self) -> EvenOddPair:
        return even_odd_split(self.j)

    def violations(self) -> list[str]:
        out = []
        one_minus_q = Poly((1, -1))
        if self.r != one_minus_q ** (self.n - 1) * self.h:
            out.append("R != (1-q)^(n-1) H")
        if self.h.degree is None or self.h.degree > self.d:
            out.append("deg H > d")
        if self.j.degree != self.h.degree:
            out.append("deg J != deg H")
        if self.h[0] != 1:
            out.append("H(0) != 1")
        for name, p in (("H", self.h), ("J", self.j)):
            if not p.is_integral() or any(c < 0 for c in p.coeffs):
                out.append(f"{name} has a coefficient that is not a nonnegative integer")
        if self.j != mobius_q_to_u(self.h, self.d):
            out.append("J != mobius(H, d)")
        return out


def report(g: Multigraph) -> ReliabilityReport:
    if not g.is_connected():
        raise DomainError("reports need a connected graph")
    return ReliabilityReport(reliability_poly(g), h_poly(g), j_poly(g), g.n, g.m, g.d)


def _report_from_h(r: Poly, h: Poly, n: int, m: int) -> ReliabilityReport:
    d = m - n + 1
    return ReliabilityReport(r, h, mobius_q_to_u(h, d), n, m, d)


def closed_form_tree(c: list[int]) -> ReliabilityReport:
    """Thick tree with spindle sizes ``c``; J from the parity product formula."""
    if not c:
        raise DomainError("need at least one spindle")
    if any(x < 1 for x in c):
        raise DomainError("spindle sizes must be positive")
    n, m = len(c) + 1, sum(c)
    r = Poly((1,))
    h = Poly((1,))
    for x in c:
        r = r * Poly(_one_minus_q_pow(x))
        h = h * Poly(_geometric(x))
    nu = sum(epsilon(x) for x in c) // 2
    part = Poly.monomial(nu)
    for x in c:
        part = part * s_poly(x)
    parity = epsilon(n + m)
    pair = EvenOddPair(part, Poly()) if parity == 0 else EvenOddPair(Poly(), part)
    return ReliabilityReport(r, h, pair.recombine(), n, m, m - n + 1)


def closed_form_cycle(c: list[int]) -> ReliabilityReport:
    """Thick cycle; uniform sizes use the closed form, others the engine."""
    n = len(c)
    if n < 3:
        raise DomainError("a cycle needs length >= 3")
    if any(x < 1 for x in c):
        raise DomainError("spindle sizes must be positive")
    if len(set(c)) == 1:
        k = c[0]
        r = Poly(_one_minus_q_pow(k)) ** (n - 1) * Poly([1] + [0] * (k - 1) + [n - 1])
        h = Poly(_geometric(k)) ** (n - 1) * Poly([1] + [0] * (k - 1) + [n - 1])
        return _report_from_h(r, h, n, n * k)
    return report(thick_cycle(list(c)))


def cycle_parity_audit(c: list[int]) -> dict:
    """Compare the vanishing-parity component of a thick cycle's J with ``x**nu * prod S``.

    Returns the component, the monomial product and the ratio between them
    (``None`` when the component is not a constant multiple of the product).
    """
    n, m = len(c), sum(c)
    rep = closed_form_cycle(c)
    parity = 1 - epsilon(n + m)
    comp = rep.j_split.part(parity)
    prod = Poly.monomial(sum(epsilon(x) for x in c) // 2)
    for x in c:
        prod = prod * s_poly(x)
    ratio = comp.lc / prod.lc if comp else Fraction(0)
    if comp != prod * ratio:
        ratio = None
    return {"parity": parity, "component": comp, "product": prod, "ratio": ratio, "n": n}


# -- two-vertex cuts -------------------------------------------------------------

def _check_two_cut(g: Multigraph, n: Multigraph, shared: tuple[int, int]) -> tuple[int, int]:
    v, w = shared
    if v == w:
        raise DomainError("shared vertices must be distinct")
    for name, x in (("G", g), ("N", n)):
        if not (0 <= v < x.n and 0 <= w < x.n):
            raise DomainError(f"shared vertex missing from {name}")
    return v, w


def two_cut_union(g: Multigraph, n: Multigraph, shared: tuple[int, int]) -> Multigraph:
    """``g`` and ``n`` glued along ``shared``; every other vertex stays distinct."""
    v, w = _check_two_cut(g, n, shared)
    return glue(g, n, [(v, v), (w, w)])


def two_cut_reduce(g: Multigraph, n: Multigraph, shared: tuple[int, int]) -> Poly:
    """R of the union from the pieces and their identified versions."""
    v, w = _check_two_cut(g, n, shared)
    rg, rn = reliability_poly(g), reliability_poly(n)
    rgb = reliability_poly(identify_vertices(g, v, w))
    rnb = reliability_poly(identify_vertices(n, v, w))
    return rg * rnb + rgb * rn - rg * rn


def two_cut_h(g: Multigraph, n: Multigraph, shared: tuple[int, int]) -> Poly:
    v, w = _check_two_cut(g, n, shared)
    hg, hn = h_poly(g), h_poly(n)
    hgb, hnb = h_poly(identify_vertices(g, v, w)), h_poly(identify_vertices(n, v, w))
    return hg * hnb + hgb * hn - Poly((1, -1)) * hg * hn


def _j_identified(g: Multigraph, v: int, w: int) -> Poly:
    # degree of the identified graph is counted before its loops are dropped,
    # which multiplies J by (u - 1) per removed loop
    loops = g.multiplicity(v, w)
    return j_poly(identify_vertices(g, v, w)) * Poly((-1, 1)) ** loops


def two_cut_j(g: Multigraph, n: Multigraph, shared: tuple[int, int]) -> Poly:
    v, w = _check_two_cut(g, n, shared)
    jg, jn = j_poly(g), j_poly(n)
    return jg * (jn + _j_identified(n, v, w)) + (jg + _j_identified(g, v, w)) * jn


# -- oracles -------------------------------------------------------------------

def _edge_list(g: Multigraph) -> list[tuple[int, int]]:
    return [(u, v) for u, v, c in g.spindles for _ in range(c)]


def connected_counts(g: Multigraph, cap: int = BRUTE_FORCE_CAP) -> list[int]:
    """``counts[k]`` = number of k-edge subsets that connect every vertex."""
    edges = _edge_list(g)
    m = len(edges)
    if m > cap:
        raise RefusalError(f"{m} edges exceeds the enumeration cap {cap}")
    full = (1 << g.n) - 1
    masks = [(1 << u) | (1 << v) for u, v in edges]
    counts = [0] * (m + 1)
    for subset in range(1 << m):
        chosen = [masks[i] for i in range(m) if subset >> i & 1]
        reach = 1
        grew = True
        while grew:
            grew = False
            for e in chosen:
                if reach & e and (reach | e) != reach:
                    reach |= e
                    grew = True
        if reach == full:
            counts[bin(subset).count("1")] += 1
    return counts


def brute_force_reliability(g: Multigraph, cap: int = BRUTE_FORCE_CAP) -> Poly:
    """Sum of ``(1-q)**|S| q**(m-|S|)`` over connected spanning edge subsets ``S``."""
    counts = connected_counts(g, cap)
    m = len(counts) - 1
    keep, lose = Poly((1, -1)), Poly((0, 1))
    out = Poly()
    for k, nk in enumerate(counts):
        if nk:
            out = out + keep ** k * lose ** (m - k) * nk
    return out


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    stderr: float
    trials: int

    def contains(self, value: float, z: float = 3.0) -> bool:
        return abs(value - self.mean) <= z * self.stderr + 1e-12


def monte_carlo(g: Multigraph, q: Fraction | float, trials: int, seed: int) -> MonteCarloEstimate:
    """Fraction of sampled subgraphs (each edge lost with probability q) that stay connected."""
    if not 0 <= q <= 1:
        raise DomainError("q must lie in [0, 1]")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    edges = _edge_list(g)
    rng = np.random.default_rng(seed)
    keep = rng.random((trials, len(edges))) >= float(q)
    labels = np.tile(np.arange(g.n), (trials, 1))
    for _ in range(max(g.n - 1, 0)):
        changed = False
        for e, (u, v) in enumerate(edges):
            mask = keep[:, e]
            low = np.minimum(labels[:, u], labels[:, v])
            if np.any(mask & (labels[:, u] != labels[:, v])):
                changed = True
            labels[mask, u] = low[mask]
            labels[mask, v] = low[mask]
        if not changed:
            break
    ok = np.all(labels == 0, axis=1).astype(float)
    mean = float(ok.mean())
    stderr = float(ok.std(ddof=1) / sqrt(trials)) if trials > 1 else 0.0
    return MonteCarloEstimate(mean, stderr, trials)


def kT(n: int, k: int) -> Multigraph:
    return thick_path([k] * (n - 1))


def kC(n: int, k: int) -> Multigraph:
    return thick_cycle([k] * n)
