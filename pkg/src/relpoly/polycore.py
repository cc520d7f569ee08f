"""Exact univariate polynomials over Q and the coefficient transforms.

The single value type is :class:`Poly`, a dense ascending coefficient
tuple of :class:`fractions.Fraction`.  The variable is whatever the caller
means by it (``q``, ``u``, ``x = u**2`` or ``z``); the transforms below say
which variable goes in and which comes out.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence, Union

from . import _intpoly as zx
from .errors import DomainError, FormatError

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Poly:
    """Dense polynomial with exact rational coefficients, lowest degree first.

    The coefficient tuple never has a trailing zero, so the zero polynomial
    is ``Poly(())`` and has ``degree is None``.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return parse_poly(text)

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise DomainError(f"{self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    @cached_property
    def zx(self) -> list[int]:
        """Primitive integer multiple (positive factor) used by root routines."""
        return zx.from_rationals(self.coeffs)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "Poly | Scalar") -> "Poly":
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] += y
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly | Scalar") -> "Poly":
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other: "Poly | Scalar") -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise DomainError("negative power")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dg = len(other.coeffs) - 1
        lg = other.coeffs[-1]
        q = [Fraction(0)] * max(len(r) - dg, 0)
        while len(r) - 1 >= dg and r:
            k = len(r) - 1 - dg
            c = r[-1] / lg
            q[k] = c
            for j, y in enumerate(other.coeffs):
                r[j + k] -= c * y
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise DomainError(f"{other} does not divide {self}")
        return q

    def shift(self, k: int = 1) -> "Poly":
        """Multiply by ``x**k``."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else ZERO

    def derivative(self) -> "Poly":
        return Poly(i * self.coeffs[i] for i in range(1, len(self.coeffs)))

    def monic(self) -> "Poly":
        return self * (1 / self.lc) if self else ZERO

    def __call__(self, value):
        acc = 0 * value
        for c in reversed(self.coeffs):
            acc = acc * value + (c if isinstance(value, (int, Fraction)) else float(c))
        return acc

    def homogenized(self, num: "Poly", den: "Poly", d: int | None = None) -> "Poly":
        """``den**d * self(num/den)`` computed by homogenised Horner (``d >= deg``)."""
        if d is None:
            d = self.degree or 0
        if self.degree is not None and d < self.degree:
            raise DomainError(f"degree bound {d} is below deg = {self.degree}")
        c = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        powers = [ONE]
        for _ in range(d):
            powers.append(powers[-1] * den)
        acc = Poly.constant(c[d])
        for i in range(d - 1, -1, -1):
            acc = acc * num + powers[d - i] * c[i]
        return acc

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        return "[" + ", ".join(_frac_text(c) for c in self.coeffs) + "]"

    def to_json(self) -> list[str]:
        return [_frac_text(c) for c in self.coeffs]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Poly({self.to_text()})"


def _lift(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)):
        return Poly.constant(other)
    return NotImplemented


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


ZERO = Poly()
ONE = Poly((1,))
X = Poly((0, 1))

_TOKEN = re.compile(r"\s*([+-]?\d+(?:/\d+)?)\s*")


def parse_poly(text: str, line: int = 1) -> Poly:
    """Parse ``"[1, -3/2, 0, 7]"`` (ascending coefficients) into a :class:`Poly`."""
    s = text.strip()
    col0 = len(text) - len(text.lstrip()) + 1
    if not (s.startswith("[") and s.endswith("]")):
        raise FormatError("polynomial must be a bracketed coefficient list", line, col0)
    body = s[1:-1]
    if not body.strip():
        return ZERO
    coeffs = []
    pos = 0
    for part in body.split(","):
        m = _TOKEN.fullmatch(part)
        if not m:
            raise FormatError(f"bad coefficient {part.strip()!r}", line, col0 + 1 + pos)
        num, _, den = m.group(1).partition("/")
        if den and int(den) == 0:
            raise FormatError("zero denominator", line, col0 + 1 + pos)
        coeffs.append(Fraction(int(num), int(den) if den else 1))
        pos += len(part) + 1
    return Poly(coeffs)


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown operation {op!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero when both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


# -- Moebius maps between the unit disc and the left half-plane ------------

def _mobius(p: Poly, d: int) -> Poly:
    # (-1)**d * sum p_i (-1-x)**i (1-x)**(d-i)
    out = p.homogenized(Poly((-1, -1)), Poly((1, -1)), d)
    return -out if d % 2 else out


def mobius_q_to_u(h: Poly, d: int) -> Poly:
    """``J(u) = (u-1)**d * H((-1-u)/(1-u))`` for ``d >= deg H``."""
    if d < 0 or (h.degree is not None and d < h.degree):
        raise DomainError(f"degree bound d={d} is below deg H={h.degree}")
    return _mobius(h, d)


def mobius_u_to_q(j: Poly, d: int) -> Poly:
    """``H(q) = ((q-1)/2)**d * J((-1-q)/(1-q))``; inverse of :func:`mobius_q_to_u`."""
    if d < 0 or (j.degree is not None and d < j.degree):
        raise DomainError(f"degree bound d={d} is below deg J={j.degree}")
    return _mobius(j, d) * Fraction(1, 2**d)


# -- even / odd parts --------------------------------------------------------

@dataclass(frozen=True)
class EvenOddPair:
    """``P(u) = even(u**2) + u * odd(u**2)``."""

    even: Poly
    odd: Poly

    def recombine(self) -> Poly:
        out = [Fraction(0)] * (2 * max(len(self.even), len(self.odd)) + 1)
        for i, c in enumerate(self.even.coeffs):
            out[2 * i] += c
        for i, c in enumerate(self.odd.coeffs):
            out[2 * i + 1] += c
        return Poly(out)

    def part(self, parity: int) -> Poly:
        return self.odd if parity else self.even

    def __iter__(self):
        yield self.even
        yield self.odd


def even_odd_split(p: Poly) -> EvenOddPair:
    return EvenOddPair(Poly(p.coeffs[0::2]), Poly(p.coeffs[1::2]))


def eo_binomial(c: int) -> EvenOddPair:
    """``(u+1)**c = E_c(u**2) + u O_c(u**2)``."""
    if c < 0:
        raise DomainError("c must be nonnegative")
    return even_odd_split(Poly(comb(c, i) for i in range(c + 1)))


def epsilon(c: int) -> int:
    """1 for even ``c``, 0 for odd."""
    return 1 - c % 2


def delta(c: int) -> int:
    return 1 - epsilon(c)


def s_poly(c: int) -> Poly:
    """``O_c`` for even ``c`` and ``E_c`` for odd ``c``."""
    if c < 1:
        raise DomainError("S_c is defined for c >= 1")
    e, o = eo_binomial(c)
    return o if c % 2 == 0 else e


def spindle_factor(c: int) -> Poly:
    """``((u+1)**c - (u-1)**c) / 2``, the J-polynomial of a c-spindle."""
    return (Poly((1, 1)) ** c - Poly((-1, 1)) ** c) * Fraction(1, 2)


# -- f-vector transforms -----------------------------------------------------

def _as_fractions(f: Sequence[Scalar]) -> list[Fraction]:
    c = [Fraction(x) for x in f]
    while c and c[-1] == 0:
        c.pop()
    return c


def ftilde_from_f(f: Sequence[Scalar]) -> tuple[int, list[Fraction]]:
    """Remove every factor ``(1+z)`` from ``F``; returns ``(t, ftilde)``."""
    p = Poly(_as_fractions(f))
    if not p:
        raise DomainError("f-vector is zero")
    one_plus_z = Poly((1, 1))
    while p.degree and p(Fraction(-1)) == 0:
        p = p.exact_div(one_plus_z)
    return p.degree, list(p.coeffs)


def f_from_ftilde(ftilde: Sequence[Scalar], d: int) -> list[Fraction]:
    """``F = (1+z)**(d-t) * Ftilde``."""
    p = Poly(_as_fractions(ftilde))
    if not p:
        raise DomainError("ftilde is zero")
    if d < p.degree:
        raise DomainError("d is below the subdegree")
    return list((p * Poly((1, 1)) ** (d - p.degree)).coeffs)


def ftilde_series(f: Sequence[Scalar], t: int) -> list[Fraction]:
    """Coefficient formula for ``ftilde`` given the subdegree ``t``."""
    c = _as_fractions(f)
    d = len(c) - 1
    e = d - t
    if e == 0:
        return c[: t + 1]
    return [
        sum(comb(e + ell - 1, ell) * (-1) ** ell * c[i - ell] for ell in range(i + 1))
        for i in range(t + 1)
    ]


def h_from_F(f: Sequence[Scalar]) -> Poly:
    """``H(q) = (1-q)**d F(q/(1-q))`` with ``d = deg F``."""
    p = Poly(_as_fractions(f))
    if not p:
        raise DomainError("f-vector is zero")
    return p.homogenized(X, Poly((1, -1)))


def j_coeffs_from_ftilde(ftilde: Sequence[Scalar]) -> Poly:
    """``j_k = sum_{i>=k} C(i,k) (-2)**(t-i) ftilde_i``."""
    c = _as_fractions(ftilde)
    if not c:
        raise DomainError("ftilde is zero")
    t = len(c) - 1
    return Poly(
        sum(comb(i, k) * (-2) ** (t - i) * c[i] for i in range(k, t + 1))
        for k in range(t + 1)
    )


def ftilde_from_j(j: Poly) -> list[Fraction]:
    """``ftilde_i = 2**(i-t) sum_{k>=i} C(k,i) (-1)**(t-k) j_k``."""
    if not j:
        raise DomainError("J is zero")
    t = j.degree
    return [
        Fraction(2) ** (i - t) * sum(comb(k, i) * (-1) ** (t - k) * j[k] for k in range(i, t + 1))
        for i in range(t + 1)
    ]
