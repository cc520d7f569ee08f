"""Loopless multigraphs stored as spindles, plus series-parallel tooling."""
from __future__ import annotations

import logging
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import networkx as nx

from .errors import DomainError, FormatError

log = logging.getLogger(__name__)

Pair = tuple[int, int]


def _pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Multigraph:
    """Vertices ``0..n-1``; ``spindles`` is a sorted tuple of ``(u, v, c)`` with ``u < v``."""

    n: int
    spindles: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v, c in self.spindles:
            if not (0 <= u < v < self.n):
                raise DomainError(f"bad spindle ({u}, {v}) for n={self.n}")
            if c < 1:
                raise DomainError(f"spindle ({u}, {v}) has multiplicity {c}")
            if (u, v) in seen:
                raise DomainError(f"duplicate spindle ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, ...]]) -> "Multigraph":
        """Build from ``(u, v)`` or ``(u, v, c)`` items; parallels merge and loops drop."""
        acc: Counter = Counter()
        for e in edges:
            u, v = e[0], e[1]
            c = e[2] if len(e) > 2 else 1
            if u == v:
                continue
            acc[_pair(u, v)] += c
        return cls(n, tuple(sorted((u, v, c) for (u, v), c in acc.items() if c)))

    @property
    def m(self) -> int:
        return sum(c for _, _, c in self.spindles)

    @property
    def d(self) -> int:
        return self.m - self.n + 1

    @property
    def spindle_map(self) -> dict[Pair, int]:
        return {(u, v): c for u, v, c in self.spindles}

    def multiplicity(self, u: int, v: int) -> int:
        return self.spindle_map.get(_pair(u, v), 0)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v, _ in self.spindles:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        for u, v, c in self.spindles:
            g.add_edge(u, v, mult=c)
        return g

    def relabel(self, perm: list[int]) -> "Multigraph":
        """Vertex ``i`` becomes ``perm[i]``."""
        return Multigraph.from_edges(self.n, ((perm[u], perm[v], c) for u, v, c in self.spindles))

    def to_text(self) -> str:
        lines = [f"v {self.n}"] + [f"e {u} {v} {c}" for u, v, c in self.spindles]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        body = ", ".join(f"{u}-{v}" + (f"x{c}" if c > 1 else "") for u, v, c in self.spindles)
        return f"G(n={self.n}; {body})"


def _check_spindle(g: Multigraph, s: Pair) -> Pair:
    p = _pair(*s)
    if p not in g.spindle_map:
        raise DomainError(f"{s} is not a spindle of {g}")
    return p


def delete_spindle(g: Multigraph, s: Pair) -> Multigraph:
    p = _check_spindle(g, s)
    return Multigraph(g.n, tuple(e for e in g.spindles if (e[0], e[1]) != p))


def identify_vertices(g: Multigraph, v: int, w: int) -> Multigraph:
    """Merge ``v`` and ``w`` into the smaller id; higher ids shift down, loops vanish."""
    if v == w:
        raise DomainError("cannot identify a vertex with itself")
    if not (0 <= v < g.n and 0 <= w < g.n):
        raise DomainError("vertex out of range")
    keep, gone = min(v, w), max(v, w)

    def f(x: int) -> int:
        if x == gone:
            return keep
        return x - 1 if x > gone else x

    return Multigraph.from_edges(g.n - 1, ((f(a), f(b), c) for a, b, c in g.spindles))


def contract_spindle(g: Multigraph, s: Pair) -> Multigraph:
    p = _check_spindle(g, s)
    return identify_vertices(g, *p)


def underlying_simple(g: Multigraph) -> Multigraph:
    return Multigraph(g.n, tuple((u, v, 1) for u, v, _ in g.spindles))


def disjoint_union(a: Multigraph, b: Multigraph) -> Multigraph:
    return Multigraph.from_edges(
        a.n + b.n, list(a.spindles) + [(u + a.n, v + a.n, c) for u, v, c in b.spindles]
    )


def glue(a: Multigraph, b: Multigraph, pairs: Iterable[tuple[int, int]]) -> Multigraph:
    """Union of ``a`` and ``b`` with vertex ``y`` of ``b`` identified to ``x`` of ``a`` for each ``(x, y)``."""
    pairs = list(pairs)
    fixed = {y: x for x, y in pairs}
    if len(fixed) != len(pairs) or len({x for x, _ in pairs}) != len(pairs):
        raise DomainError("glue pairs must be a partial bijection")
    mapping = {}
    nxt = a.n
    for y in range(b.n):
        if y in fixed:
            mapping[y] = fixed[y]
        else:
            mapping[y] = nxt
            nxt += 1
    return Multigraph.from_edges(nxt, list(a.spindles) + [(mapping[u], mapping[v], c) for u, v, c in b.spindles])


# -- structure ---------------------------------------------------------------

def block_vertex_sets(g: Multigraph) -> list[list[int]]:
    if not g.is_connected():
        raise DomainError("graph is disconnected")
    out = []
    for edges in nx.biconnected_component_edges(g.to_networkx()):
        out.append(sorted({x for e in edges for x in e}))
    return sorted(out)


def induced(g: Multigraph, vertices: list[int]) -> Multigraph:
    index = {v: i for i, v in enumerate(vertices)}
    return Multigraph.from_edges(
        len(vertices), ((index[u], index[v], c) for u, v, c in g.spindles if u in index and v in index)
    )


def biconnected_components(g: Multigraph) -> list[Multigraph]:
    """Blocks, each renumbered to ``0..k-1`` in the order of the original ids."""
    return [induced(g, vs) for vs in block_vertex_sets(g)]


def is_cactus(g: Multigraph) -> bool:
    for b in biconnected_components(underlying_simple(g)):
        if b.n > 2 and len(b.spindles) != b.n:
            return False
    return True


def cut_vertices(g: Multigraph) -> set[int]:
    return set(nx.articulation_points(g.to_networkx()))


# -- series-parallel construction trees ---------------------------------------

@dataclass(frozen=True)
class Edge:
    mult: int = 1

    def reverse(self) -> "Edge":
        return self


@dataclass(frozen=True)
class Series:
    left: "SPTree"
    right: "SPTree"

    def reverse(self) -> "Series":
        return Series(self.right.reverse(), self.left.reverse())


@dataclass(frozen=True)
class Parallel:
    left: "SPTree"
    right: "SPTree"

    def reverse(self) -> "Parallel":
        return Parallel(self.left.reverse(), self.right.reverse())


SPTree = Union[Edge, Series, Parallel]


def tree_size(t: SPTree) -> int:
    if isinstance(t, Edge):
        return t.mult
    return tree_size(t.left) + tree_size(t.right)


@dataclass(frozen=True)
class SPNetwork:
    graph: Multigraph
    terminals: Pair
    build: SPTree


def sp_build(spec: SPTree) -> SPNetwork:
    """Realise a construction tree; terminals are vertices 0 and 1."""
    acc: Counter = Counter()
    counter = [2]

    def go(t, s: int, u: int) -> None:
        if isinstance(t, Edge):
            if not isinstance(t.mult, int) or t.mult < 1:
                raise DomainError(f"bad edge multiplicity {t.mult!r}")
            acc[_pair(s, u)] += t.mult
        elif isinstance(t, Series):
            mid = counter[0]
            counter[0] += 1
            go(t.left, s, mid)
            go(t.right, mid, u)
        elif isinstance(t, Parallel):
            go(t.left, s, u)
            go(t.right, s, u)
        else:
            raise DomainError(f"malformed construction tree node {t!r}")

    go(spec, 0, 1)
    g = Multigraph(counter[0], tuple(sorted((u, v, c) for (u, v), c in acc.items())))
    return SPNetwork(g, (0, 1), spec)


def _reduce_block(b: Multigraph) -> SPTree | None:
    # trees[(u, v)] with u < v describes the subnetwork between u and v oriented u -> v
    trees: dict[Pair, SPTree] = {(u, v): Edge(c) for u, v, c in b.spindles}
    adj: dict[int, set[int]] = defaultdict(set)
    for u, v in trees:
        adj[u].add(v)
        adj[v].add(u)

    def oriented(a: int, c: int) -> SPTree:
        return trees[(a, c)] if a < c else trees[(c, a)].reverse()

    queue = [v for v in adj if len(adj[v]) == 2]
    alive = len(adj)
    while queue and alive > 2:
        v = queue.pop()
        if v not in adj or len(adj[v]) != 2:
            continue
        a, c = sorted(adj[v])
        t = Series(oriented(a, v), oriented(v, c))
        del trees[_pair(a, v)], trees[_pair(v, c)]
        del adj[v]
        adj[a].discard(v)
        adj[c].discard(v)
        alive -= 1
        if (a, c) in trees:
            t = Parallel(trees[(a, c)], t)
        else:
            adj[a].add(c)
            adj[c].add(a)
        trees[(a, c)] = t
        queue.extend(x for x in (a, c) if len(adj[x]) == 2)
    if len(trees) == 1 and alive == 2:
        return next(iter(trees.values()))
    return None


def sp_recognize(g: Multigraph) -> list[SPTree] | None:
    """One construction tree per block when every block is series-parallel, else ``None``."""
    if g.n == 1:
        return []
    out = []
    for b in biconnected_components(g):
        t = _reduce_block(b)
        if t is None:
            return None
        out.append(t)
    return out


def _remy_tree(leaves: list[SPTree], rng: random.Random) -> SPTree:
    """Uniform binary tree shape over the leaves, random S/P labels."""
    # nodes: [kind, left, right] for internal, index into leaves for tips
    parent: list[int | None] = [None]
    children: list[list[int] | None] = [None]
    tip: list[int | None] = [0]
    for k in range(1, len(leaves)):
        x = rng.randrange(len(tip))
        new_leaf = len(tip)
        tip.append(k)
        parent.append(None)
        children.append(None)
        node = len(tip)
        tip.append(None)
        parent.append(parent[x])
        pair = [x, new_leaf] if rng.random() < 0.5 else [new_leaf, x]
        children.append(pair)
        if parent[x] is not None:
            sib = children[parent[x]]
            sib[sib.index(x)] = node
        parent[x] = node
        parent[new_leaf] = node
    root = next(i for i, p in enumerate(parent) if p is None)

    def build(i: int) -> SPTree:
        if tip[i] is not None:
            return leaves[tip[i]]
        l, r = children[i]
        kind = Series if rng.random() < 0.5 else Parallel
        return kind(build(l), build(r))

    return build(root)


def random_sp(size: int, seed: int, max_mult: int = 4) -> SPNetwork:
    if size < 1:
        raise DomainError("size must be >= 1")
    rng = random.Random(seed)
    mults = []
    left = size
    while left:
        c = rng.randint(1, min(max_mult, left))
        mults.append(c)
        left -= c
    rng.shuffle(mults)
    return sp_build(_remy_tree([Edge(c) for c in mults], rng))


def random_sp_prime(seed: int, blocks: int | None = None, max_block_edges: int = 12) -> Multigraph:
    """Random series-parallel networks glued one at a time at single vertices."""
    rng = random.Random(seed)
    if blocks is None:
        blocks = rng.randint(1, 3)
    g: Multigraph | None = None
    for _ in range(blocks):
        net = random_sp(rng.randint(1, max_block_edges), rng.randrange(2**63)).graph
        if g is None:
            g = net
        else:
            g = glue(g, net, [(rng.randrange(g.n), rng.randrange(net.n))])
    return g


def random_connected(seed: int, n_max: int = 7, m_max: int = 12, max_mult: int = 3) -> Multigraph:
    """Random spanning tree plus extra edges; ``m <= m_max`` and loopless."""
    rng = random.Random(seed)
    n = rng.randint(1, min(n_max, m_max + 1))
    acc: Counter = Counter()
    for v in range(1, n):
        acc[_pair(v, rng.randrange(v))] += 1
    budget = rng.randint(n - 1, m_max) - (n - 1)
    while budget > 0 and n > 1:
        u, v = rng.sample(range(n), 2)
        c = rng.randint(1, min(max_mult, budget))
        acc[_pair(u, v)] += c
        budget -= c
    return Multigraph(n, tuple(sorted((u, v, c) for (u, v), c in acc.items())))


# -- named families ----------------------------------------------------------

def thick_path(mults: list[int]) -> Multigraph:
    """Path on ``len(mults) + 1`` vertices with the given spindle sizes."""
    return Multigraph.from_edges(len(mults) + 1, ((i, i + 1, c) for i, c in enumerate(mults)))


def thick_cycle(mults: list[int]) -> Multigraph:
    n = len(mults)
    if n < 2:
        raise DomainError("a cycle needs at least two spindles")
    return Multigraph.from_edges(n, ((i, (i + 1) % n, c) for i, c in enumerate(mults)))


def complete_graph(n: int, k: int = 1) -> Multigraph:
    return Multigraph.from_edges(n, ((u, v, k) for u in range(n) for v in range(u + 1, n)))


# -- canonical form (memo keys) ----------------------------------------------

def canonical_form(g: Multigraph) -> tuple:
    """Relabelling invariant under most isomorphisms; used only as a cache key.

    Colours are refined by neighbour multisets (with multiplicities); ties are
    broken by vertex id, so isomorphic graphs may occasionally get different
    keys.  That costs only cache hits, never correctness.
    """
    n = g.n
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, c in g.spindles:
        nbrs[u].append((v, c))
        nbrs[v].append((u, c))
    colour = [0] * n
    for _ in range(n):
        sig = [(colour[v], tuple(sorted((colour[w], c) for w, c in nbrs[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)) and all(
            (new[a] == new[b]) == (colour[a] == colour[b]) for a in range(n) for b in range(a)
        ):
            colour = new
            break
        colour = new
    order = sorted(range(n), key=lambda v: (colour[v], v))
    perm = [0] * n
    for i, v in enumerate(order):
        perm[v] = i
    return (n, tuple(sorted((*_pair(perm[u], perm[v]), c) for u, v, c in g.spindles)))


# -- text format -------------------------------------------------------------

def parse_graph(text: str) -> Multigraph:
    n = None
    acc: dict[Pair, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col = raw.index(line[0]) + 1
        parts = line.split()
        if parts[0] == "v":
            if n is not None:
                raise FormatError("duplicate 'v' header", lineno, col)
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise FormatError("expected 'v <n>' with n >= 1", lineno, col)
            n = int(parts[1])
        elif parts[0] == "e":
            if n is None:
                raise FormatError("'e' line before the 'v' header", lineno, col)
            if len(parts) != 4:
                raise FormatError("expected 'e <u> <v> <mult>'", lineno, col)
            try:
                u, v, c = (int(x) for x in parts[1:])
            except ValueError:
                raise FormatError("vertex ids and multiplicity must be integers", lineno, col) from None
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"vertex out of range 0..{n - 1}", lineno, col)
            if c < 1:
                raise FormatError("multiplicity must be >= 1", lineno, col)
            if u == v:
                log.warning("line %d: loop at vertex %d removed", lineno, u)
                continue
            p = _pair(u, v)
            if p in acc:
                raise FormatError(f"duplicate spindle {p}", lineno, col)
            acc[p] = c
        else:
            raise FormatError(f"unknown record {parts[0]!r}", lineno, col)
    if n is None:
        raise FormatError("missing 'v <n>' header", 1, 1)
    return Multigraph(n, tuple(sorted((u, v, c) for (u, v), c in acc.items())))


def iter_pairs(n: int) -> Iterator[Pair]:
    for v in range(n):
        for w in range(v + 1, n):
            yield v, w
