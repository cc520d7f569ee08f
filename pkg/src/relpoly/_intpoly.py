"""Integer-coefficient polynomial kernel for the exact root-location routines.

Polynomials are plain ``list[int]`` in ascending order with no trailing
zeros; ``[]`` is the zero polynomial.  Every scaling applied here is by a
*positive* integer, so signs (and therefore Sturm sign variations) are
preserved along remainder sequences.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

ZPoly = list


def strip(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def from_rationals(coeffs: Iterable[Fraction | int]) -> list[int]:
    """Clear denominators by a positive factor and remove the content."""
    fr = [Fraction(x) for x in coeffs]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    return primitive([int(x * den) for x in fr])


def primitive(c: list[int]) -> list[int]:
    c = strip(list(c))
    g = 0
    for x in c:
        g = gcd(g, x)
        if g == 1:
            return c
    if g > 1:
        c = [x // g for x in c]
    return c


def deg(c: Sequence[int]) -> int:
    return len(c) - 1


def neg(c: Sequence[int]) -> list[int]:
    return [-x for x in c]


def positive_lc(c: list[int]) -> list[int]:
    return neg(c) if c and c[-1] < 0 else c


def add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return strip(out)


def scale(a: Sequence[int], k: int) -> list[int]:
    if k == 0:
        return []
    return [k * x for x in a]


def shift(a: Sequence[int], k: int = 1) -> list[int]:
    return [0] * k + list(a) if a else []


def mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def deriv(a: Sequence[int]) -> list[int]:
    return [i * a[i] for i in range(1, len(a))]


def sign(x: int) -> int:
    return (x > 0) - (x < 0)


def sign_at_infinity(a: Sequence[int], direction: int) -> int:
    """Sign of ``a(x)`` as ``x -> direction * oo``."""
    if not a:
        return 0
    s = sign(a[-1])
    if direction < 0 and (len(a) - 1) % 2:
        s = -s
    return s


def sign_at(a: Sequence[int], num: int, den: int = 1) -> int:
    """Sign of ``a(num/den)`` for ``den > 0`` via homogenised Horner."""
    acc = 0
    p = 1
    for x in reversed(a):
        acc = acc * num + x * p
        p *= den
    # acc = den^(deg) * a(num/den) up to a positive power of den
    return sign(acc)


def pos_rem(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Primitive remainder of ``c*f`` by ``g`` for some integer ``c > 0``."""
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    alg = abs(lg)
    sg = 1 if lg > 0 else -1
    while len(r) - 1 >= dg and r:
        k = len(r) - 1 - dg
        t = r[-1] * sg
        r = [alg * x for x in r]
        for j, y in enumerate(g):
            r[j + k] -= t * y
        r.pop()
        strip(r)
    return primitive(r)


def div_exact(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Quotient ``f / g`` when ``g`` divides ``f`` in Z[x] (``g`` primitive)."""
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    q = [0] * max(len(f) - dg, 0)
    while r and len(r) - 1 >= dg:
        k = len(r) - 1 - dg
        c, rem = divmod(r[-1], lg)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        for j, y in enumerate(g):
            r[j + k] -= c * y
        r.pop()
        strip(r)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return strip(q)


def poly_gcd(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Primitive gcd with positive leading coefficient."""
    a, b = primitive(list(f)), primitive(list(g))
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, pos_rem(a, b)
    return positive_lc(primitive(a)) if a else []


def squarefree(f: Sequence[int]) -> list[int]:
    f = positive_lc(primitive(list(f)))
    if len(f) <= 2:
        return f
    g = poly_gcd(f, deriv(f))
    if len(g) == 1:
        return f
    return positive_lc(div_exact(f, g))


def remainder_chain(f0: Sequence[int], f1: Sequence[int]) -> list[list[int]]:
    """Generalised Sturm chain f0, f1, -rem(f0, f1), ... up to the last nonzero."""
    chain = [list(f0)]
    if f1:
        chain.append(list(f1))
    while len(chain) > 1:
        r = pos_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(neg(r))
    return chain


def variations(signs: Iterable[int]) -> int:
    v = 0
    last = 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def var_at_infinity(chain: Sequence[Sequence[int]], direction: int) -> int:
    return variations(sign_at_infinity(p, direction) for p in chain)


def var_at(chain: Sequence[Sequence[int]], num: int, den: int = 1) -> int:
    return variations(sign_at(p, num, den) for p in chain)


def sturm_chain(f: Sequence[int]) -> list[list[int]]:
    """Sturm chain of the squarefree part of ``f``."""
    s = squarefree(f)
    return remainder_chain(s, deriv(s))


def count_real(f: Sequence[int]) -> tuple[int, int]:
    """(number of distinct real roots, number of distinct complex roots)."""
    s = squarefree(f)
    if len(s) <= 1:
        return 0, 0
    chain = remainder_chain(s, deriv(s))
    return var_at_infinity(chain, -1) - var_at_infinity(chain, 1), len(s) - 1


def is_real_rooted(f: Sequence[int]) -> bool:
    if not f:
        return True
    real, total = count_real(f)
    return real == total


def only_nonpositive(f: Sequence[int]) -> bool:
    """True iff ``f`` is zero or all its roots are real and <= 0."""
    if not f:
        return True
    s = squarefree(f)
    if len(s) <= 1:
        return True
    chain = remainder_chain(s, deriv(s))
    return var_at_infinity(chain, -1) - var_at(chain, 0) == len(s) - 1


def interlaces(a: Sequence[int], b: Sequence[int]) -> bool:
    """Exact decision of ``a < b`` in the interlacing order (ties allowed).

    After removing ``g = gcd(a, b)`` the coprime parts interlace iff the
    Cauchy index of ``a/b`` over the real line equals ``deg b``; the pair
    ``(a, b)`` then has only real zeros iff ``g`` does.
    """
    a = positive_lc(strip(list(a)))
    b = positive_lc(strip(list(b)))
    if not a:
        return is_real_rooted(b)
    if not b:
        return is_real_rooted(a)
    da, db = len(a) - 1, len(b) - 1
    if not (db == da or db == da + 1):
        return False
    r = a if da < db else pos_rem(a, b)
    chain = remainder_chain(b, r)
    g = chain[-1]
    index = var_at_infinity(chain, -1) - var_at_infinity(chain, 1)
    if index != db - (len(g) - 1):
        return False
    return len(g) <= 1 or is_real_rooted(g)
