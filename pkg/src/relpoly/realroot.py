"""Exact zero-location decisions: nonpositive zeros, interlacing, stability.

Every exact answer is computed with integer Sturm sequences from
:mod:`relpoly._intpoly`.  The numeric root finder exists only as a
cross-check and for reporting root moduli.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import _intpoly as zx
from .errors import DomainError, InconclusiveError
from .polycore import Poly, even_odd_split, mobius_q_to_u


class Status(enum.Enum):
    QUASI_STABLE = "quasi_stable"
    UNSTABLE = "unstable"


class Method(enum.Enum):
    EXACT_HERMITE_BIEHLER = "exact_hermite_biehler"
    EXACT_STURM = "exact_sturm"
    NUMERIC = "numeric"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    method: Method
    witness: str | None = None
    boundary_roots: int = 0

    @property
    def quasi_stable(self) -> bool:
        return self.status is Status.QUASI_STABLE

    def to_json(self) -> dict:
        out = {"status": self.status.value, "method": self.method.value, "witness": self.witness}
        if self.boundary_roots:
            out["boundary_roots"] = self.boundary_roots
        return out


def is_standard(p: Poly) -> bool:
    return p.is_zero() or p.lc > 0


def only_nonpositive_zeros(p: Poly) -> bool:
    """True iff ``p`` is zero or every complex zero is real and ``<= 0``."""
    return zx.only_nonpositive(p.zx)


def is_real_rooted(p: Poly) -> bool:
    return zx.is_real_rooted(p.zx)


def interlaces(a: Poly, b: Poly) -> bool:
    """``a < b`` in the interlacing order, including the zero conventions."""
    return zx.interlaces(a.zx, b.zx)


# -- root isolation ----------------------------------------------------------

def _count_in(chain, lo: Fraction, hi: Fraction) -> int:
    """Distinct roots in ``(lo, hi]``."""
    return zx.var_at(chain, lo.numerator, lo.denominator) - zx.var_at(chain, hi.numerator, hi.denominator)


def _cauchy_bound(c: list[int]) -> Fraction:
    lc = abs(c[-1])
    return 1 + Fraction(max(abs(x) for x in c[:-1]), lc) if len(c) > 1 else Fraction(1)


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint intervals ``(lo, hi]`` (or points ``lo == hi``), one distinct root each."""

    entries: tuple[tuple[Fraction, Fraction, int], ...]
    squarefree_chain: tuple[Poly, ...] = field(repr=False)

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def real_root_count(self) -> int:
        return sum(m for _, _, m in self.entries)

    def refine(self, width: Fraction) -> "RootIsolation":
        width = Fraction(width)
        if width <= 0:
            raise DomainError("width must be positive")
        sq = self.squarefree_chain[0].zx
        out = []
        for lo, hi, mult in self.entries:
            while hi - lo >= width:
                mid = (lo + hi) / 2
                s = zx.sign_at(sq, mid.numerator, mid.denominator)
                if s == 0:
                    lo = hi = mid
                    break
                if zx.sign_at(sq, hi.numerator, hi.denominator) * s < 0:
                    lo = mid
                else:
                    hi = mid
            out.append((lo, hi, mult))
        return RootIsolation(tuple(out), self.squarefree_chain)

    def midpoints(self) -> list[float]:
        return [float((lo + hi) / 2) for lo, hi, _ in self.entries]


def _multiplicity_layers(c: list[int]) -> list[list[int]]:
    """``layers[k]`` is squarefree with the distinct roots of multiplicity ``> k``."""
    layers = []
    g = zx.positive_lc(zx.primitive(c))
    while len(g) > 1:
        g1 = zx.poly_gcd(g, zx.deriv(g))
        layers.append(zx.positive_lc(zx.div_exact(g, g1)) if len(g1) > 1 else g)
        g = g1
    return layers


def isolate_roots(p: Poly) -> RootIsolation:
    if not p:
        raise DomainError("cannot isolate the roots of the zero polynomial")
    layers = _multiplicity_layers(p.zx)
    if not layers:
        return RootIsolation((), (p,))
    sq = layers[0]
    chain = zx.remainder_chain(sq, zx.deriv(sq))
    b = _cauchy_bound(sq)
    stack = [(-b, b)]
    found = []
    while stack:
        lo, hi = stack.pop()
        k = _count_in(chain, lo, hi)
        if k == 0:
            continue
        if k == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    found.sort()
    entries = []
    for lo, hi in found:
        mult = 1
        for layer in layers[1:]:
            lchain = zx.remainder_chain(layer, zx.deriv(layer)) if len(layer) > 1 else [layer]
            if len(layer) > 1 and _count_in(lchain, lo, hi) == 1:
                mult += 1
            else:
                break
        if zx.sign_at(sq, hi.numerator, hi.denominator) == 0:
            lo = hi
        entries.append((lo, hi, mult))
    chain_polys = tuple(Poly(c) for c in chain)
    return RootIsolation(tuple(entries), chain_polys)


# -- stability ---------------------------------------------------------------

def hermite_biehler(p: Poly) -> StabilityVerdict:
    """Hurwitz quasi-stability of a standard ``p(u)`` via its even/odd parts."""
    if not is_standard(p):
        raise DomainError(f"{p} is not standard (leading coefficient {p.lc})")
    if not p:
        return StabilityVerdict(Status.QUASI_STABLE, Method.TRIVIAL, "zero polynomial")
    p0, p1 = even_odd_split(p)
    checks = (
        ("P0 is not standard", lambda: is_standard(p0)),
        ("P1 is not standard", lambda: is_standard(p1)),
        ("P0 has a zero off the nonpositive axis", lambda: only_nonpositive_zeros(p0)),
        ("P1 has a zero off the nonpositive axis", lambda: only_nonpositive_zeros(p1)),
        ("P1 does not interlace P0", lambda: interlaces(p1, p0)),
    )
    for reason, ok in checks:
        if not ok():
            return StabilityVerdict(Status.UNSTABLE, Method.EXACT_HERMITE_BIEHLER, reason)
    return StabilityVerdict(Status.QUASI_STABLE, Method.EXACT_HERMITE_BIEHLER)


def schur_quasi_stable(h: Poly, d: int | None = None, cross_check: bool = False) -> StabilityVerdict:
    """Schur quasi-stability of ``h(q)`` through the disc to half-plane map.

    Factors ``(q - 1)`` are divided out first and reported as boundary roots;
    the remaining factor is mapped at its own degree so that the image has
    no spurious zero at ``u = 1``.
    """
    if d is None:
        d = h.degree or 0
    if h.degree is not None and d < h.degree:
        raise DomainError(f"degree bound d={d} is below deg H={h.degree}")
    if not h:
        return StabilityVerdict(Status.QUASI_STABLE, Method.TRIVIAL, "zero polynomial")
    q_minus_1 = Poly((-1, 1))
    boundary = 0
    while h.degree and h(Fraction(1)) == 0:
        h = h.exact_div(q_minus_1)
        boundary += 1
    j = mobius_q_to_u(h, h.degree)
    if j.lc < 0:
        j = -j
    v = hermite_biehler(j)
    verdict = StabilityVerdict(v.status, v.method, v.witness, boundary)
    if cross_check and h.degree:
        moduli = [abs(z) for z in numeric_roots(h)]
        numeric_ok = max(moduli) <= 1 + 1e-8
        if numeric_ok != verdict.quasi_stable and abs(max(moduli) - 1) > 1e-6:
            raise InconclusiveError(f"exact and numeric verdicts disagree for {h}")
    return verdict


# -- numerics ----------------------------------------------------------------

@dataclass(frozen=True)
class NumericRoots:
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]

    def __iter__(self) -> Iterator[complex]:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __getitem__(self, i: int) -> complex:
        return self.roots[i]

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def numeric_roots(p: Poly, tol: float = 1e-10, max_iter: int = 1000) -> NumericRoots:
    """Companion-matrix eigenvalues polished by Newton steps on double coefficients."""
    if not p:
        raise DomainError("the zero polynomial has no finite root list")
    coeffs = np.array([float(c) for c in reversed(p.coeffs)], dtype=float)
    if not np.all(np.isfinite(coeffs)):
        raise InconclusiveError("coefficients overflow double precision")
    if len(coeffs) == 1:
        return NumericRoots((), ())
    coeffs = coeffs / np.max(np.abs(coeffs))
    roots = np.roots(coeffs).astype(complex)
    dcoeffs = np.polyder(coeffs)
    budget = max_iter
    polished = []
    for z in roots:
        best, best_res = z, abs(np.polyval(coeffs, z))
        while budget > 0 and best_res > tol:
            budget -= 1
            dz = np.polyval(dcoeffs, best)
            if dz == 0:
                break
            cand = best - np.polyval(coeffs, best) / dz
            res = abs(np.polyval(coeffs, cand))
            if not res < best_res:
                break
            best, best_res = cand, res
        polished.append(complex(best))
    if not all(np.isfinite(z) for z in polished):
        raise InconclusiveError(f"root finder did not converge for {p}")
    polished.sort(key=lambda z: (z.real, z.imag))
    residuals = tuple(float(abs(np.polyval(coeffs, z))) for z in polished)
    return NumericRoots(tuple(polished), residuals)


def enestrom_kakeya_bounds(p: Poly) -> tuple[Fraction, Fraction]:
    """``(min, max)`` of the ratios ``c_i / c_(i+1)`` of a positive polynomial."""
    if not p or p.degree < 1:
        raise DomainError("need a polynomial of degree >= 1")
    if any(c <= 0 for c in p.coeffs):
        raise DomainError(f"{p} has a nonpositive coefficient")
    ratios = [p.coeffs[i] / p.coeffs[i + 1] for i in range(p.degree)]
    return min(ratios), max(ratios)
