from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relpoly.errors import DomainError, FormatError
from relpoly.polycore import (
    Poly,
    delta,
    eo_binomial,
    epsilon,
    even_odd_split,
    f_from_ftilde,
    ftilde_from_f,
    ftilde_from_j,
    h_from_F,
    j_coeffs_from_ftilde,
    mobius_q_to_u,
    mobius_u_to_q,
    parse_poly,
    poly_arith,
    s_poly,
)

from conftest import P, polys

X = P(0, 1)


class TestArithmetic:
    def test_mul(self):
        assert poly_arith(P(1, 2), P(1, -1), "mul") == P(1, 1, -2)

    def test_add_zero(self):
        p = P(3, 0, 5)
        assert poly_arith(p, Poly(), "add") == p

    def test_square_expansion(self):
        sq = poly_arith(P(1, 0, -1), P(1, 0, -1), "mul")
        assert sq == P(1, 0, -2, 0, 1)
        for x in (Fraction(-2), Fraction(1, 3), Fraction(0), Fraction(5, 2), Fraction(7)):
            assert sq(x) == (1 - x * x) ** 2

    def test_sub_and_normalization(self):
        assert poly_arith(P(1, 2), P(1, 2), "sub") == Poly()
        assert Poly().degree is None
        assert P(1, 2, 0, 0).coeffs == (1, 2)

    def test_unknown_op(self):
        with pytest.raises(DomainError):
            poly_arith(P(1), P(1), "div")

    def test_divmod(self):
        a = P(1, 3, 3, 1)
        q, r = divmod(a, P(1, 1))
        assert q == P(1, 2, 1) and not r

    @given(polys(), polys())
    def test_ring_laws(self, a, b):
        assert a * b == b * a
        assert (a + b) - b == a
        if b:
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.degree is None or r.degree < b.degree


class TestText:
    def test_round_trip(self):
        p = P(1, Fraction(-3, 2), 0, 7)
        assert p.to_text() == "[1, -3/2, 0, 7]"
        assert parse_poly(p.to_text()) == p
        assert parse_poly("[]") == Poly()

    @pytest.mark.parametrize("text", ["1, 2", "[1, x]", "[1,, 2]", "[1/0]"])
    def test_bad_text(self, text):
        with pytest.raises(FormatError):
            parse_poly(text)

    @given(polys())
    def test_text_round_trip(self, p):
        assert parse_poly(p.to_text()) == p


class TestMobius:
    def test_triangle(self):
        assert mobius_q_to_u(P(1, 2), 1) == P(1, 3)
        assert mobius_u_to_q(P(1, 3), 1) == P(1, 2)

    def test_constant(self):
        assert mobius_q_to_u(P(1), 0) == P(1)
        assert mobius_u_to_q(P(1), 0) == P(1)

    def test_three_spindle(self):
        assert mobius_q_to_u(P(1, 1, 1), 2) == P(1, 0, 3)

    def test_round_trip_example(self):
        h = P(1, 5, 10, 7)
        assert mobius_u_to_q(mobius_q_to_u(h, 3), 3) == h

    def test_degree_bound(self):
        with pytest.raises(DomainError):
            mobius_q_to_u(P(1, 2, 3), 1)
        with pytest.raises(DomainError):
            mobius_u_to_q(P(1, 2, 3), 1)

    @given(polys(max_degree=7), st.integers(min_value=0, max_value=3))
    def test_round_trip(self, h, extra):
        d = (h.degree or 0) + extra
        assert mobius_u_to_q(mobius_q_to_u(h, d), d) == h
        assert mobius_q_to_u(mobius_u_to_q(h, d), d) == h


class TestEvenOdd:
    def test_doubled_triangle(self):
        e, o = even_odd_split(P(0, 0, 12, 8, 12))
        assert e == P(0, 12, 12) and o == P(0, 8)

    def test_small(self):
        assert tuple(even_odd_split(P(0, 1))) == (Poly(), P(1))
        assert tuple(even_odd_split(P(1, 3))) == (P(1), P(3))

    @given(polys(max_degree=10))
    def test_recombine(self, p):
        assert even_odd_split(p).recombine() == p

    def test_binomial(self):
        assert tuple(eo_binomial(0)) == (P(1), Poly())
        assert tuple(eo_binomial(3)) == (P(1, 3), P(3, 1))
        e1, o1 = eo_binomial(1)
        e2, o2 = eo_binomial(2)
        assert e1 * e2 + X * o1 * o2 == P(1, 3)

    def test_recurrences(self):
        for a in range(13):
            ea, oa = eo_binomial(a)
            for b in range(13):
                eb, ob = eo_binomial(b)
                e, o = eo_binomial(a + b)
                assert e == ea * eb + X * oa * ob
                assert o == ea * ob + oa * eb

    def test_parity_tags(self):
        assert [epsilon(c) for c in range(4)] == [1, 0, 1, 0]
        assert [delta(c) for c in range(4)] == [0, 1, 0, 1]

    def test_s_poly(self):
        assert s_poly(1) == P(1)
        assert s_poly(2) == P(2)
        assert s_poly(3) == P(1, 3)
        with pytest.raises(DomainError):
            s_poly(0)


class TestFVectors:
    def test_ftilde(self):
        assert ftilde_from_f([1, 6, 15, 17, 7]) == (3, [1, 5, 10, 7])
        assert ftilde_from_f([1, 12, 30, 20]) == (3, [1, 12, 30, 20])
        assert ftilde_from_f([1, 2, 1]) == (0, [1])
        with pytest.raises(DomainError):
            ftilde_from_f([0, 0])

    def test_h_from_F(self):
        assert h_from_F([1, 3]) == P(1, 2)
        assert h_from_F([1]) == P(1)
        assert h_from_F([1, 5, 6]) == P(1, 3, 2)

    def test_j_coeffs(self):
        assert j_coeffs_from_ftilde([1, 12, 30, 20]) == P(0, -12, 0, 20)
        assert j_coeffs_from_ftilde([1, 5, 10, 7]) == P(-1, 1, 1, 7)
        assert j_coeffs_from_ftilde([1, 4, 4]) == P(0, 0, 4)

    @given(st.lists(st.integers(min_value=-30, max_value=30), min_size=1, max_size=12).filter(lambda f: f[-1] != 0))
    def test_ftilde_round_trip(self, f):
        t, ft = ftilde_from_f(f)
        assert f_from_ftilde(ft, len(f) - 1) == f
        assert h_from_F(f) == h_from_F(f_from_ftilde(ft, t))
        assert h_from_F(f).degree == t

    @given(st.lists(st.integers(min_value=-30, max_value=30), min_size=1, max_size=12).filter(lambda f: f[-1] != 0))
    def test_j_round_trip(self, ft):
        j = j_coeffs_from_ftilde(ft)
        assert j.lc == ft[-1]
        assert ftilde_from_j(j) == ft

    @given(st.lists(st.integers(min_value=0, max_value=30), min_size=1, max_size=10).filter(lambda f: f[-1] != 0))
    def test_j_matches_mobius(self, f):
        t, ft = ftilde_from_f(f)
        assert j_coeffs_from_ftilde(ft) == mobius_q_to_u(h_from_F(f), t)
