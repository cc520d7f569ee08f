"""Set systems, their f-vectors and H/J polynomials, and matroid checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import networkx as nx

from .errors import DomainError, FormatError, RefusalError
from .netgraph import Multigraph, canonical_form, contract_spindle, delete_spindle
from .polycore import Poly, ftilde_from_f, h_from_F, j_coeffs_from_ftilde
from .realroot import StabilityVerdict, schur_quasi_stable
from .relical import _bridges, connected_counts

FACE_CAP = 200_000
MINOR_CAP = 8


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class SetSystem:
    """Faces are bitmasks over the ground set ``0..ground-1``."""

    ground: int
    faces: tuple[int, ...]

    def __post_init__(self):
        limit = 1 << self.ground
        for f in self.faces:
            if not 0 <= f < limit:
                raise DomainError(f"face {f:b} is not a subset of the ground set")

    @classmethod
    def from_sets(cls, ground: int, faces: Iterable[Iterable[int]]) -> "SetSystem":
        masks = set()
        for face in faces:
            mask = 0
            for e in face:
                if not 0 <= e < ground:
                    raise DomainError(f"element {e} outside the ground set")
                mask |= 1 << e
            masks.add(mask)
        return cls(ground, tuple(sorted(masks)))

    @property
    def degree(self) -> int:
        return max((_popcount(f) for f in self.faces), default=0)

    def face_sets(self) -> list[tuple[int, ...]]:
        return [tuple(i for i in range(self.ground) if f >> i & 1) for f in self.faces]

    def to_text(self) -> str:
        lines = [f"ground {self.ground}"]
        lines += [" ".join(["face", *map(str, s)]) for s in self.face_sets()]
        return "\n".join(lines) + "\n"


def f_vector(s: SetSystem) -> list[int]:
    out = [0] * (s.degree + 1)
    for f in s.faces:
        out[_popcount(f)] += 1
    return out


def reliability_setsystem(s: SetSystem) -> Poly:
    """``sum f_i q**i (1-q)**(m-i)``."""
    q, p = Poly((0, 1)), Poly((1, -1))
    out = Poly()
    for i, fi in enumerate(f_vector(s)):
        if fi:
            out = out + q ** i * p ** (s.ground - i) * fi
    return out


@dataclass(frozen=True)
class HJ:
    h: Poly
    j: Poly
    t: int
    ftilde: tuple[Fraction, ...]


def hj_from_f(f: Sequence[int]) -> HJ:
    t, ft = ftilde_from_f(f)
    return HJ(h_from_F(f), j_coeffs_from_ftilde(ft), t, tuple(ft))


def hj_setsystem(s: SetSystem) -> HJ:
    return hj_from_f(f_vector(s))


def k_expand(s: SetSystem, k: int, cap: int = FACE_CAP) -> SetSystem:
    """Element ``e`` becomes copies ``e*k .. e*k+k-1``; a face picks one copy of each member."""
    if k < 1:
        raise DomainError("k must be positive")
    total = sum(k ** _popcount(f) for f in s.faces)
    if total > cap:
        raise RefusalError(f"k-expansion would have {total} faces (cap {cap})")
    faces = []
    for members in s.face_sets():
        for copies in itertools.product(range(k), repeat=len(members)):
            mask = 0
            for e, i in zip(members, copies):
                mask |= 1 << (e * k + i)
            faces.append(mask)
    return SetSystem(s.ground * k, tuple(sorted(faces)))


def expansion_identity_sides(s: SetSystem, k: int) -> tuple[Poly, Poly]:
    """Both sides of the k-expansion identity multiplied by ``(1+(k-1)q)**m``."""
    m = s.ground
    den = Poly((1, k - 1))
    lhs = den ** m * reliability_setsystem(k_expand(s, k))
    weight = Poly((1, -1)) ** k + Poly((0, k)) * Poly((1, -1)) ** (k - 1)
    rhs = weight ** m * reliability_setsystem(s).homogenized(Poly((0, k)), den, m)
    return lhs, rhs


def uniform_matroid(m: int, d: int) -> SetSystem:
    return SetSystem.from_sets(m, (c for r in range(d + 1) for c in itertools.combinations(range(m), r)))


def uniform_H(m: int, d: int) -> Poly:
    if not 1 <= d < m:
        raise DomainError("need 1 <= d < m")
    return Poly(comb(m - d - 1 + i, i) for i in range(d + 1))


# -- Hurwitz matrix ------------------------------------------------------------

@dataclass(frozen=True)
class HurwitzMatrix:
    order: int
    entries: tuple[tuple[Fraction, ...], ...]

    def minors(self) -> dict[tuple[int, int], Fraction]:
        """Every square minor keyed by (row mask, column mask)."""
        n = self.order
        memo: dict[tuple[int, int], Fraction] = {}
        rows_by_size = [[] for _ in range(n + 1)]
        for mask in range(1, 1 << n):
            rows_by_size[_popcount(mask)].append(mask)
        for size in range(1, n + 1):
            for rm in rows_by_size[size]:
                r0 = (rm & -rm).bit_length() - 1
                rest = rm & (rm - 1)
                for cm in rows_by_size[size]:
                    if size == 1:
                        memo[(rm, cm)] = self.entries[r0][(cm & -cm).bit_length() - 1]
                        continue
                    total = Fraction(0)
                    sign = 1
                    for c in range(n):
                        if cm >> c & 1:
                            a = self.entries[r0][c]
                            if a:
                                total += sign * a * memo[(rest, cm & ~(1 << c))]
                            sign = -sign
                    memo[(rm, cm)] = total
        return memo

    def all_minors_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.minors().values())


def hurwitz_matrix(j: Poly) -> HurwitzMatrix:
    """Rows ``r = 0..t``, entry ``(r, c) = j_(2r - c)``; a ``(t+1)``-square matrix."""
    if not j or j.lc <= 0:
        raise DomainError("need a nonzero J with positive leading coefficient")
    t = j.degree
    return HurwitzMatrix(t + 1, tuple(tuple(j[2 * r - c] if 2 * r - c >= 0 else Fraction(0) for c in range(t + 1)) for r in range(t + 1)))


@dataclass(frozen=True)
class Membership:
    in_Jplus: bool
    in_BCprime: bool | None
    in_BC: StabilityVerdict

    @property
    def chain_ok(self) -> bool:
        if self.in_BC.quasi_stable and self.in_BCprime is False:
            return False
        return not (self.in_BCprime and not self.in_Jplus)

    def to_json(self) -> dict:
        return {"in_Jplus": self.in_Jplus, "in_BCprime": self.in_BCprime, "in_BC": self.in_BC.to_json()}


def membership_from_f(f: Sequence[int], minor_cap: int = MINOR_CAP) -> Membership:
    hj = hj_from_f(f)
    in_jplus = all(c >= 0 for c in hj.j.coeffs)
    if hj.t > minor_cap:
        in_bcp = None
    else:
        in_bcp = hurwitz_matrix(hj.j).all_minors_nonnegative()
    return Membership(in_jplus, in_bcp, schur_quasi_stable(hj.h, hj.t))


def class_membership(s: SetSystem, minor_cap: int = MINOR_CAP) -> Membership:
    return membership_from_f(f_vector(s), minor_cap)


def thm03_check(f: Sequence[int], d: int | None = None) -> list[tuple[int, int, bool]]:
    """``(k, sum_(i>=k) C(i,k) (-2)**(d-i) f_i, sum >= 0)`` for ``k = 0..d``."""
    f = list(f)
    if d is None:
        d = len(f) - 1
    f = f + [0] * max(0, d + 1 - len(f))
    out = []
    for k in range(d + 1):
        s = sum(comb(i, k) * (-2) ** (d - i) * f[i] for i in range(k, d + 1))
        out.append((k, s, s >= 0))
    return out


# -- graphs as matroids --------------------------------------------------------

def cographic_f_vector(g: Multigraph) -> list[int]:
    """``f_i`` = number of i-edge sets whose removal leaves ``g`` connected."""
    counts = connected_counts(g)
    f = list(reversed(counts))
    while f and f[-1] == 0:
        f.pop()
    return f


def cographic_setsystem(g: Multigraph) -> SetSystem:
    if not g.is_connected():
        raise DomainError("graph is disconnected")
    edges = [(u, v) for u, v, c in g.spindles for _ in range(c)]
    m = len(edges)
    if m > 20:
        raise RefusalError("too many edges to enumerate")
    faces = []
    full = (1 << g.n) - 1
    for removed in range(1 << m):
        reach = 1
        kept = [(1 << u) | (1 << v) for i, (u, v) in enumerate(edges) if not removed >> i & 1]
        grew = True
        while grew:
            grew = False
            for e in kept:
                if reach & e and reach | e != reach:
                    reach |= e
                    grew = True
        if reach == full:
            faces.append(removed)
    return SetSystem(m, tuple(faces))


_TUTTE: dict = {}


def tutte_graph(g: Multigraph, x, y):
    """Tutte polynomial of ``g`` evaluated at ``(x, y)`` by spindle deletion/contraction."""
    if not g.is_connected():
        raise DomainError("graph is disconnected")
    return _tutte(g, Fraction(x), Fraction(y))


def _tutte(g: Multigraph, x: Fraction, y: Fraction) -> Fraction:
    if not g.spindles:
        return Fraction(1)
    key = (canonical_form(g), x, y)
    if key in _TUTTE:
        return _TUTTE[key]
    bridges = _bridges(g)
    u, v, c = g.spindles[0]
    loops = sum(y ** i for i in range(1, c))
    if (u, v) in bridges:
        out = (x + loops) * _tutte(contract_spindle(g, (u, v)), x, y)
    else:
        out = _tutte(delete_spindle(g, (u, v)), x, y) + (1 + loops) * _tutte(contract_spindle(g, (u, v)), x, y)
    _TUTTE[key] = out
    return out


# -- matroid axioms ------------------------------------------------------------

@dataclass(frozen=True)
class MatroidCheck:
    is_complex: bool
    is_matroid: bool
    coloop_free: bool | None

    def to_json(self) -> dict:
        return {"is_complex": self.is_complex, "is_matroid": self.is_matroid, "coloop_free": self.coloop_free}


def matroid_check(s: SetSystem) -> MatroidCheck:
    faces = set(s.faces)
    is_complex = bool(faces) and all(f & ~(1 << i) in faces for f in faces for i in range(s.ground) if f >> i & 1)
    is_matroid = False
    if is_complex:
        by_size: dict[int, list[int]] = {}
        for f in faces:
            by_size.setdefault(_popcount(f), []).append(f)
        is_matroid = True
        # exchange between consecutive sizes implies it for all sizes in a complex
        for size in sorted(by_size):
            bigger = by_size.get(size + 1, [])
            for a in by_size[size]:
                for b in bigger:
                    diff = b & ~a
                    if not any(diff >> i & 1 and (a | 1 << i) in faces for i in range(s.ground)):
                        is_matroid = False
                        break
                if not is_matroid:
                    break
            if not is_matroid:
                break
    coloop_free = None
    if is_matroid:
        maximal = [f for f in faces if _popcount(f) == s.degree]
        common = (1 << s.ground) - 1
        for f in maximal:
            common &= f
        coloop_free = common == 0
    return MatroidCheck(is_complex, is_matroid, coloop_free)


def find_K(s: SetSystem, k_max: int) -> int | None:
    """Smallest ``k <= k_max`` with the k-expansion Schur quasi-stable (``f_i(k S) = k**i f_i(S)``)."""
    f = f_vector(s)
    for k in range(1, k_max + 1):
        hj = hj_from_f([fi * k ** i for i, fi in enumerate(f)])
        if schur_quasi_stable(hj.h, hj.t).quasi_stable:
            return k
    return None


# -- fixtures and text format --------------------------------------------------

def icosahedron_complex() -> SetSystem:
    g = nx.icosahedral_graph()
    faces: list[tuple[int, ...]] = [()]
    faces += [(v,) for v in g.nodes()]
    faces += [tuple(sorted(e)) for e in g.edges()]
    faces += [t for t in itertools.combinations(sorted(g.nodes()), 3)
              if g.has_edge(t[0], t[1]) and g.has_edge(t[1], t[2]) and g.has_edge(t[0], t[2])]
    return SetSystem.from_sets(12, faces)


def broken_circuit_complex_k23() -> SetSystem:
    """Broken-circuit complex of the cycle matroid of K_{2,3} (edges ordered lexicographically)."""
    edges = [(a, b) for a in range(2) for b in range(2, 5)]
    circuits = []
    for r in range(3, len(edges) + 1):
        for sub in itertools.combinations(range(len(edges)), r):
            deg: dict[int, int] = {}
            for i in sub:
                for v in edges[i]:
                    deg[v] = deg.get(v, 0) + 1
            if all(x == 2 for x in deg.values()):
                verts = set(deg)
                # a single cycle: connected 2-regular edge set
                adj = {v: [w for i in sub for w in edges[i] if v in edges[i] and w != v] for v in verts}
                seen, stack = set(), [next(iter(verts))]
                while stack:
                    v = stack.pop()
                    if v not in seen:
                        seen.add(v)
                        stack.extend(adj[v])
                if seen == verts:
                    circuits.append(set(sub))
    broken = [c - {min(c)} for c in circuits]
    faces = []
    for r in range(len(edges) + 1):
        for sub in itertools.combinations(range(len(edges)), r):
            s = set(sub)
            if any(b <= s for b in broken):
                continue
            if _is_forest([edges[i] for i in sub]):
                faces.append(sub)
    return SetSystem.from_sets(len(edges), faces)


def _is_forest(edges: list[tuple[int, int]]) -> bool:
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        while parent.get(v, v) != v:
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def two_circuit_sum_f(d: int) -> list[int]:
    """f-vector of the direct sum of ``d`` two-element circuits, ``(1 + 2z)**d``."""
    return [comb(d, i) * 2 ** i for i in range(d + 1)]


def parse_setsystem(text: str) -> SetSystem:
    ground = None
    faces = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col = raw.index(line[0]) + 1
        parts = line.split()
        if parts[0] == "ground":
            if ground is not None:
                raise FormatError("duplicate 'ground' header", lineno, col)
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError("expected 'ground <m>'", lineno, col)
            ground = int(parts[1])
        elif parts[0] == "face":
            if ground is None:
                raise FormatError("'face' line before the 'ground' header", lineno, col)
            mask = 0
            pos = raw.index("face") + 4
            for tok in parts[1:]:
                pos = raw.index(tok, pos)
                if not tok.isdigit() or int(tok) >= ground:
                    raise FormatError(f"bad element {tok!r}", lineno, pos + 1)
                if mask >> int(tok) & 1:
                    raise FormatError(f"element {tok} repeated in a face", lineno, pos + 1)
                pos += len(tok)
                mask |= 1 << int(tok)
            if mask in seen:
                raise FormatError("duplicate face", lineno, col)
            seen.add(mask)
            faces.append(mask)
        else:
            raise FormatError(f"unknown record {parts[0]!r}", lineno, col)
    if ground is None:
        raise FormatError("missing 'ground <m>' header", 1, 1)
    if not faces:
        raise FormatError("a set system needs at least one face", 1, 1)
    return SetSystem(ground, tuple(sorted(faces)))
