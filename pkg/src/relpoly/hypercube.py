"""Interpolatory hypercubes of polynomials.

A :class:`PolyCube` of dimension ``k`` holds ``2**k`` polynomials indexed
by bit strings ``alpha_1 ... alpha_k``.  Internally the index is an ``int``
with ``alpha_1`` as the most significant bit, so ``"10"`` is entry 2.

Arrows follow the diagram convention: ``A -> B`` along axis ``i`` means the
tail ``A`` sits at ``alpha_i = 1`` and the head ``B`` at ``alpha_i = 0``.
For a square drawn as::

    tl -> tr
    ^      ^
    bl -> br

axis 1 is vertical and axis 2 horizontal, so ``bl, tl, br, tr`` are the
entries ``11, 01, 10, 00``.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .polycore import ZERO, Poly, eo_binomial
from .realroot import interlaces, is_standard, only_nonpositive_zeros

SAMPLE_MAX = 10**6


def _insert(beta: int, i: int, k: int, b: int) -> int:
    """Index in dimension ``k`` with ``alpha_i = b`` and the other bits from ``beta``."""
    low = k - i
    return ((beta >> low) << (low + 1)) | (b << low) | (beta & ((1 << low) - 1))


@dataclass(frozen=True)
class PolyCube:
    dim: int
    entries: tuple[Poly, ...]

    def __post_init__(self):
        if self.dim < 0 or len(self.entries) != 1 << self.dim:
            raise DomainError(f"a {self.dim}-cube needs {1 << max(self.dim, 0)} entries")

    @classmethod
    def from_list(cls, entries: Sequence[Poly]) -> "PolyCube":
        n = len(entries)
        k = n.bit_length() - 1
        if n == 0 or 1 << k != n:
            raise DomainError("entry count must be a power of two")
        return cls(k, tuple(entries))

    @classmethod
    def from_mapping(cls, dim: int, entries: Mapping[str, Poly]) -> "PolyCube":
        out: list[Poly | None] = [None] * (1 << dim)
        for key, p in entries.items():
            if len(key) != dim or set(key) - {"0", "1"}:
                raise DomainError(f"bad index {key!r} for a {dim}-cube")
            out[int(key, 2) if dim else 0] = p
        missing = [format(i, f"0{dim}b") for i, p in enumerate(out) if p is None]
        if missing:
            raise DomainError(f"missing entries {missing}")
        return cls(dim, tuple(out))

    @classmethod
    def point(cls, a: Poly) -> "PolyCube":
        return cls(0, (a,))

    @classmethod
    def arrow(cls, tail: Poly, head: Poly) -> "PolyCube":
        """The 1-cube ``tail -> head``."""
        return cls(1, (head, tail))

    @classmethod
    def square(cls, bl: Poly, tl: Poly, br: Poly, tr: Poly) -> "PolyCube":
        return cls(2, (tr, tl, br, bl))

    def __getitem__(self, key: int | str) -> Poly:
        if isinstance(key, str):
            key = int(key, 2) if key else 0
        return self.entries[key]

    def key(self, alpha: int) -> str:
        return format(alpha, f"0{self.dim}b") if self.dim else ""

    def items(self):
        return ((self.key(a), p) for a, p in enumerate(self.entries))

    def to_json(self) -> dict:
        return {"dim": self.dim, "entries": {k: p.to_json() for k, p in self.items()}}

    def face(self, axis: int, bit: int) -> "PolyCube":
        """The ``(k-1)``-cube with ``alpha_axis`` fixed to ``bit``."""
        self._check_axis(axis)
        k = self.dim
        return PolyCube(k - 1, tuple(self.entries[_insert(b, axis, k, bit)] for b in range(1 << (k - 1))))

    def _check_axis(self, axis: int) -> None:
        if not 1 <= axis <= self.dim:
            raise DomainError(f"axis {axis} out of range for a {self.dim}-cube")


def interpolate_axis(c: PolyCube, i: int, lam: Fraction | int, rho: Fraction | int) -> PolyCube:
    """``Q_alpha = lam * P_(alpha with 1 at i) + rho * P_(alpha with 0 at i)``."""
    c._check_axis(i)
    if lam < 0 or rho < 0:
        raise DomainError("interpolation weights must be nonnegative")
    k = c.dim
    out = []
    for b in range(1 << (k - 1)):
        out.append(c.entries[_insert(b, i, k, 1)] * lam + c.entries[_insert(b, i, k, 0)] * rho)
    return PolyCube(k - 1, tuple(out))


def flip(c: PolyCube, s: Iterable[int]) -> PolyCube:
    entries = list(c.entries)
    k = c.dim
    for i in sorted(set(s)):
        c._check_axis(i)
        mask = 1 << (k - i)
        entries = [
            entries[a ^ mask] if a & mask else entries[a ^ mask].shift(1)
            for a in range(1 << k)
        ]
    return PolyCube(k, tuple(entries))


# -- falsification -----------------------------------------------------------

class CubeStatus(enum.Enum):
    FALSIFIED = "falsified"
    NOT_FALSIFIED = "not_falsified"


@dataclass(frozen=True)
class CubeWitness:
    lambdas: tuple
    rhos: tuple
    subset: tuple[int, ...]
    polynomials: tuple[Poly, ...]
    reason: str

    def to_json(self) -> dict:
        return {
            "lambdas": [None if v is None else str(v) for v in self.lambdas],
            "rhos": [None if v is None else str(v) for v in self.rhos],
            "subset": list(self.subset),
            "polynomials": [p.to_json() for p in self.polynomials],
            "reason": self.reason,
        }


@dataclass(frozen=True)
class CubeVerdict:
    status: CubeStatus
    samples_used: int
    exact: bool
    witness: CubeWitness | None = field(default=None)

    @property
    def falsified(self) -> bool:
        return self.status is CubeStatus.FALSIFIED

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "samples_used": self.samples_used,
            "exact": self.exact,
            "witness": self.witness.to_json() if self.witness else None,
        }


def check_point(a: Poly) -> str | None:
    """Failure reason for a 0-cube, ``None`` when it is interpolatory."""
    if not is_standard(a):
        return "not standard"
    if not only_nonpositive_zeros(a):
        return "has a zero off the nonpositive axis"
    return None


def check_arrow(p0: Poly, p1: Poly) -> str | None:
    """Failure reason for the 1-cube ``p1 -> p0``, ``None`` when interpolatory."""
    for name, p in (("tail", p1), ("head", p0)):
        why = check_point(p)
        if why:
            return f"{name} {why}"
    if not interlaces(p1, p0):
        return "tail does not interlace head"
    return None


def _sample_weights(seed: int, index: int, count: int) -> list[tuple[int, int]]:
    rng = random.Random(seed * 2**32 + index)
    return [(rng.randint(1, SAMPLE_MAX), rng.randint(1, SAMPLE_MAX)) for _ in range(count)]


def _weight_tuples(count: int, samples: int, seed: int):
    corners = ((1, 0), (0, 1), (1, 1))
    for t in itertools.product(corners, repeat=count):
        yield list(t)
    for s in range(samples):
        yield _sample_weights(seed, s, count)


def _reduce(c: PolyCube, axes: Sequence[int], weights: Sequence[tuple[int, int]]) -> PolyCube:
    # interpolate from the highest axis down so lower axis numbers stay valid
    for i, (lam, rho) in sorted(zip(axes, weights), reverse=True):
        c = interpolate_axis(c, i, lam, rho)
    return c


def cube_falsify(c: PolyCube, samples: int = 100, seed: int = 0, exact_axis: int | None = None) -> CubeVerdict:
    """Search for a violation of the interpolatory condition.

    Up to dimension one the answer is exact.  Above that, every axis except
    ``exact_axis`` (default: the last) is interpolated with all corner
    weights and ``samples`` seeded random positive integer weights, under
    every flip subset; the remaining 1-cube is then decided exactly, which
    covers all weights and both flips on that axis.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    k = c.dim
    if k == 0:
        why = check_point(c.entries[0])
        if why:
            return CubeVerdict(CubeStatus.FALSIFIED, 0, True, CubeWitness((), (), (), c.entries, why))
        return CubeVerdict(CubeStatus.NOT_FALSIFIED, 0, True)
    if k == 1:
        why = check_arrow(c.entries[0], c.entries[1])
        if why:
            return CubeVerdict(CubeStatus.FALSIFIED, 0, True, CubeWitness((None,), (None,), (), c.entries, why))
        return CubeVerdict(CubeStatus.NOT_FALSIFIED, 0, True)
    if exact_axis is None:
        exact_axis = k
    c._check_axis(exact_axis)
    others = [i for i in range(1, k + 1) if i != exact_axis]
    flipped = []
    for r in range(len(others) + 1):
        for sub in itertools.combinations(others, r):
            flipped.append((sub, flip(c, sub)))
    used = 0
    for weights in _weight_tuples(len(others), samples, seed):
        used += 1
        for sub, fc in flipped:
            arrow = _reduce(fc, others, weights)
            why = check_arrow(arrow.entries[0], arrow.entries[1])
            if why:
                lams = [None] * k
                rhos = [None] * k
                for i, (lam, rho) in zip(others, weights):
                    lams[i - 1], rhos[i - 1] = lam, rho
                w = CubeWitness(tuple(lams), tuple(rhos), sub, arrow.entries,
                                f"axis {exact_axis}: {why}")
                return CubeVerdict(CubeStatus.FALSIFIED, used, False, w)
    return CubeVerdict(CubeStatus.NOT_FALSIFIED, used, False)


# -- closure constructions ---------------------------------------------------

def cube_product(p: PolyCube, q: PolyCube) -> PolyCube:
    l = q.dim
    return PolyCube(
        p.dim + l,
        tuple(p.entries[a >> l] * q.entries[a & ((1 << l) - 1)] for a in range(1 << (p.dim + l))),
    )


def cube_sum(p: PolyCube, q: PolyCube, axis: int = 1, conjugate: bool = False) -> PolyCube:
    """Glue two cubes along a shared face on ``axis`` and add the opposite faces.

    The shared face is ``alpha_axis = 1``; with ``conjugate`` it is the
    ``alpha_axis = 0`` face instead (the flip-conjugated statement).
    """
    if p.dim != q.dim:
        raise DomainError("cubes of different dimension")
    p._check_axis(axis)
    shared = 0 if conjugate else 1
    k = p.dim
    out = list(p.entries)
    nonzero = False
    for b in range(1 << (k - 1)):
        s = _insert(b, axis, k, shared)
        if p.entries[s] != q.entries[s]:
            raise DomainError(f"cubes differ on the shared face at {p.key(s)}")
        nonzero = nonzero or bool(p.entries[s])
        o = _insert(b, axis, k, 1 - shared)
        out[o] = p.entries[o] + q.entries[o]
    if not nonzero:
        raise DomainError("the shared face is identically zero")
    return PolyCube(k, tuple(out))


def cube_extend(p: PolyCube) -> PolyCube:
    """``Q_(1 alpha) = P_alpha`` and ``Q_(0 alpha) = (Phi_1 P)_alpha``."""
    k = p.dim
    lower = flip(p, [1]).entries if k else p.entries
    return PolyCube(k + 1, tuple(lower) + tuple(p.entries))


def cube_contract(p: PolyCube, i: int, j: int) -> PolyCube:
    """Merge axes ``i`` and ``j`` into one axis at position ``min(i, j)``."""
    k = p.dim
    if k < 2:
        raise DomainError("contraction needs dimension >= 2")
    p._check_axis(i)
    p._check_axis(j)
    if i == j:
        raise DomainError("contraction needs two distinct axes")
    i, j = min(i, j), max(i, j)

    def entry(beta: int, bi: int, bj: int) -> Poly:
        # beta indexes the k-2 remaining axes in order
        a = _insert(beta, i, k - 1, bi)
        return p.entries[_insert(a, j, k, bj)]

    rest = range(1 << (k - 2))
    if not any(entry(b, 0, 0) or entry(b, 1, 1) for b in rest):
        raise DomainError(f"faces 00 and 11 on axes ({i},{j}) are identically zero")
    if not any(entry(b, 0, 1) or entry(b, 1, 0) for b in rest):
        raise DomainError(f"faces 01 and 10 on axes ({i},{j}) are identically zero")
    out = [ZERO] * (1 << (k - 1))
    for b in rest:
        out[_insert(b, i, k - 1, 1)] = entry(b, 0, 1) + entry(b, 1, 0)
        out[_insert(b, i, k - 1, 0)] = entry(b, 0, 0) + entry(b, 1, 1).shift(1)
    return PolyCube(k - 1, tuple(out))


def eo_cube(a: int, b: int, right: bool = False) -> PolyCube:
    """One of the two adjacent squares built from the parts of ``(u+1)**a`` and ``(u+1)**b``."""
    if a < 0 or b < 0:
        raise DomainError("a and b must be nonnegative")
    ea, oa = eo_binomial(a)
    eb, ob = eo_binomial(b)
    eab, oab = eo_binomial(a + b)
    if right:
        return PolyCube.square(bl=oab, tl=eab, br=ea * eb, tr=(oa * eb).shift(1))
    return PolyCube.square(bl=oa * ob, tl=ea * ob, br=oab, tr=eab)


def square_triad(c: PolyCube) -> tuple[PolyCube, PolyCube, PolyCube]:
    """The square and its two companions obtained by rotating through ``x``."""
    if c.dim != 2:
        raise DomainError("triad needs a square")
    a, b, p, q = c["11"], c["01"], c["10"], c["00"]
    return (
        c,
        PolyCube.square(bl=b, tl=a.shift(1), br=q, tr=p.shift(1)),
        PolyCube.square(bl=p, tl=q, br=a.shift(1), tr=b.shift(1)),
    )

