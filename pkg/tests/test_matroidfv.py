from __future__ import annotations

import random
from fractions import Fraction

import pytest

from relpoly.errors import DomainError, FormatError, RefusalError
from relpoly.matroidfv import (
    SetSystem,
    broken_circuit_complex_k23,
    class_membership,
    cographic_f_vector,
    cographic_setsystem,
    f_vector,
    find_K,
    hj_from_f,
    hj_setsystem,
    hurwitz_matrix,
    icosahedron_complex,
    k_expand,
    expansion_identity_sides,
    matroid_check,
    membership_from_f,
    parse_setsystem,
    reliability_setsystem,
    thm03_check,
    tutte_graph,
    two_circuit_sum_f,
    uniform_H,
    uniform_matroid,
)
from relpoly.netgraph import Multigraph, random_connected, random_sp_prime, thick_cycle
from relpoly.polycore import Poly, mobius_q_to_u
from relpoly.realroot import numeric_roots
from relpoly.relical import h_poly, j_poly, reliability_poly

from conftest import P

TRIANGLE = thick_cycle([1, 1, 1])
Q1 = P(1, -1)


class TestSetSystems:
    def test_f_vectors(self):
        assert f_vector(icosahedron_complex()) == [1, 12, 30, 20]
        assert f_vector(uniform_matroid(3, 1)) == [1, 3]
        assert f_vector(SetSystem(4, (0,))) == [1]

    def test_reliability(self):
        assert reliability_setsystem(uniform_matroid(3, 1)) == Q1 ** 3 + P(0, 3) * Q1 ** 2
        assert reliability_setsystem(cographic_setsystem(TRIANGLE)) == P(1, 0, -3, 2)
        assert reliability_setsystem(SetSystem(3, tuple(range(8)))) == P(1)

    def test_cographic_matches_network(self):
        for seed in range(30):
            g = random_connected(seed, n_max=5, m_max=8)
            s = cographic_setsystem(g)
            assert f_vector(s) == cographic_f_vector(g)
            assert reliability_setsystem(s) == reliability_poly(g)
            assert hj_setsystem(s).h == h_poly(g)
            assert hj_setsystem(s).j == j_poly(g)

    def test_hj(self):
        hj = hj_setsystem(icosahedron_complex())
        assert hj.j == P(0, -12, 0, 20) and hj.t == 3 and hj.h.degree == 3
        k23 = broken_circuit_complex_k23()
        assert f_vector(k23) == [1, 6, 15, 17, 7]
        hj = hj_setsystem(k23)
        assert hj.t == 3 and hj.j == P(-1, 1, 1, 7)
        hj = hj_setsystem(cographic_setsystem(TRIANGLE))
        assert hj.h == P(1, 2) and hj.j == P(1, 3)

    def test_hj_relation(self):
        for s in (icosahedron_complex(), broken_circuit_complex_k23(), uniform_matroid(6, 3)):
            hj = hj_setsystem(s)
            assert hj.j == mobius_q_to_u(hj.h, hj.t)

    def test_from_sets_validation(self):
        with pytest.raises(DomainError):
            SetSystem.from_sets(2, [(0, 2)])
        with pytest.raises(DomainError):
            SetSystem(2, (4,))


class TestExpansion:
    def test_single_element(self):
        s = SetSystem.from_sets(1, [(), (0,)])
        e = k_expand(s, 2)
        assert e.face_sets() == [(), (0,), (1,)]
        assert reliability_setsystem(e) == P(1, 0, -1)
        lhs, rhs = expansion_identity_sides(s, 2)
        assert lhs == rhs

    def test_identity_case(self):
        s = uniform_matroid(4, 2)
        assert k_expand(s, 1) == s

    def test_uniform(self):
        for k in (1, 2, 3):
            lhs, rhs = expansion_identity_sides(uniform_matroid(3, 1), k)
            assert lhs == rhs

    def test_general_set_systems(self):
        rng = random.Random(11)
        for _ in range(20):
            m = rng.randint(1, 4)
            faces = rng.sample(range(1 << m), rng.randint(1, 1 << m))
            s = SetSystem(m, tuple(sorted(faces)))
            for k in (1, 2, 3):
                lhs, rhs = expansion_identity_sides(s, k)
                assert lhs == rhs

    def test_cap(self):
        with pytest.raises(RefusalError):
            k_expand(uniform_matroid(6, 6), 4, cap=1000)
        with pytest.raises(DomainError):
            k_expand(uniform_matroid(2, 1), 0)

    def test_f_vector_scaling(self):
        s = uniform_matroid(4, 2)
        for k in (2, 3):
            assert f_vector(k_expand(s, k)) == [f * k ** i for i, f in enumerate(f_vector(s))]


class TestUniform:
    def test_examples(self):
        assert uniform_H(5, 2) == P(1, 3, 6)
        for m in range(2, 9):
            assert uniform_H(m, 1) == P(1, m - 1)
        roots = numeric_roots(uniform_H(5, 2))
        assert all(abs(abs(z) - (1 / 6) ** 0.5) < 1e-12 for z in roots)

    def test_errors(self):
        for m, d in ((3, 3), (3, 0), (3, 5)):
            with pytest.raises(DomainError):
                uniform_H(m, d)

    def test_enumerated_and_recurrence(self):
        q = P(0, 1)
        for m in range(2, 9):
            for d in range(1, m):
                assert uniform_H(m, d) == hj_setsystem(uniform_matroid(m, d)).h
                if 1 < d < m - 1:
                    assert uniform_H(m, d) == q * uniform_H(m - 1, d - 1) + uniform_H(m - 1, d)


class TestHurwitz:
    def test_linear(self):
        h = hurwitz_matrix(P(1, 3))
        assert h.order == 2 and h.entries == ((1, 0), (0, 3))

    def test_icosahedron(self):
        h = hurwitz_matrix(P(0, -12, 0, 20))
        assert h.entries[1] == (0, -12, 0, 0)
        assert not h.all_minors_nonnegative()

    def test_stable_cube(self):
        h = hurwitz_matrix(P(1, 3, 3, 1))
        assert h.entries == ((1, 0, 0, 0), (3, 3, 1, 0), (0, 1, 3, 3), (0, 0, 0, 1))
        assert h.all_minors_nonnegative()

    def test_leading_sign(self):
        with pytest.raises(DomainError):
            hurwitz_matrix(P(1, -1))
        with pytest.raises(DomainError):
            hurwitz_matrix(Poly())

    def test_minor_count(self):
        from math import comb
        minors = hurwitz_matrix(P(1, 2, 3, 4)).minors()
        assert len(minors) == sum(comb(4, k) ** 2 for k in range(1, 5))
        # last row is (0, 0, 0, j3), so the full determinant factors
        assert minors[(0b1111, 0b1111)] == 4 * minors[(0b0111, 0b0111)]
        import numpy as np
        full = np.array([[float(x) for x in row] for row in hurwitz_matrix(P(1, 2, 3, 4)).entries])
        assert abs(np.linalg.det(full) - float(minors[(0b1111, 0b1111)])) < 1e-9


class TestMembership:
    def test_counterexamples(self):
        for s in (icosahedron_complex(), broken_circuit_complex_k23()):
            mem = class_membership(s)
            assert not mem.in_Jplus and mem.chain_ok

    def test_sp_networks(self):
        for seed in range(25):
            g = random_sp_prime(seed, max_block_edges=5)
            if g.m > 12:
                continue
            mem = class_membership(cographic_setsystem(g))
            assert mem.in_BC.quasi_stable and mem.in_BCprime and mem.in_Jplus

    def test_chain(self):
        rng = random.Random(3)
        for _ in range(150):
            f = [1] + [rng.randint(0, 12) for _ in range(rng.randint(0, 5))]
            if f[-1] == 0:
                f[-1] = 1
            assert membership_from_f(f).chain_ok

    def test_minor_cap(self):
        f = [1] * 11
        assert membership_from_f(f, minor_cap=3).in_BCprime is None


class TestCoefficientInequality:
    def test_examples(self):
        assert [s for _, s, _ in thm03_check([1, 4, 4], 2)] == [0, 0, 4]
        sums = thm03_check([1, 12, 30, 20], 3)
        assert [s for _, s, _ in sums] == [0, -12, 0, 20] and not sums[1][2]
        assert [s for _, s, _ in thm03_check([1, 3], 1)] == [1, 3]

    def test_matches_j_when_full_degree(self):
        for f in ([1, 3], [1, 5, 6], [1, 6, 15, 17, 7], [1, 12, 30, 20]):
            hj = hj_from_f(f)
            if hj.t == len(f) - 1:
                assert [s for _, s, _ in thm03_check(f)] == list(hj.j.coeffs) + [0] * (hj.t + 1 - len(hj.j.coeffs))

    def test_two_circuit_equality(self):
        for d in range(1, 7):
            sums = thm03_check(two_circuit_sum_f(d), d)
            assert all(s == 0 for _, s, _ in sums[:-1]) and sums[-1][1] > 0


class TestTutte:
    def test_examples(self):
        for x, y in ((2, 3), (Fraction(1, 2), 5), (0, 0)):
            assert tutte_graph(TRIANGLE, x, y) == x * x + x + y
            assert tutte_graph(Multigraph(2, ((0, 1, 1),)), x, y) == x
            assert tutte_graph(Multigraph(2, ((0, 1, 2),)), x, y) == x + y

    def test_disconnected(self):
        with pytest.raises(DomainError):
            tutte_graph(Multigraph(2, ()), 1, 1)

    def test_spanning_trees(self):
        # T(1, 1) counts spanning trees, which is H(1)
        for seed in range(20):
            g = random_connected(seed, n_max=6, m_max=10)
            assert tutte_graph(g, 1, 1) == h_poly(g)(1)

    def test_specialization(self):
        points = [Fraction(1, 2), Fraction(2), Fraction(3), Fraction(-1, 3), Fraction(5, 7)]
        for seed in range(30):
            g = random_connected(seed, n_max=5, m_max=9)
            h = h_poly(g)
            for x in points:
                assert x ** g.d * h(1 / x) == tutte_graph(g, 1, x)


class TestMatroidCheck:
    def test_examples(self):
        r = matroid_check(uniform_matroid(5, 2))
        assert (r.is_complex, r.is_matroid, r.coloop_free) == (True, True, True)
        r = matroid_check(icosahedron_complex())
        assert (r.is_complex, r.is_matroid, r.coloop_free) == (True, False, None)

    def test_cographic(self):
        for seed in range(20):
            g = random_connected(seed, n_max=5, m_max=8)
            r = matroid_check(cographic_setsystem(g))
            assert r.is_matroid and r.coloop_free

    def test_not_complex(self):
        assert not matroid_check(SetSystem.from_sets(2, [(), (0, 1)])).is_complex

    def test_coloop(self):
        # element 2 lies in every basis
        s = SetSystem.from_sets(3, [(), (0,), (1,), (2,), (0, 2), (1, 2)])
        r = matroid_check(s)
        assert r.is_matroid and r.coloop_free is False

    def test_full_degree_when_coloop_free(self):
        for m in range(2, 8):
            for d in range(1, m):
                assert hj_setsystem(uniform_matroid(m, d)).t == d


class TestFindK:
    def test_sp_cographic(self):
        for seed in range(10):
            g = random_sp_prime(seed, max_block_edges=5)
            if g.m <= 12:
                assert find_K(cographic_setsystem(g), 3) == 1

    def test_matroid_bound(self):
        for m, d in ((4, 2), (6, 3), (8, 2)):
            k = find_K(uniform_matroid(m, d), d + 1)
            assert k is not None and k <= d + 1
        k = find_K(icosahedron_complex(), 6)
        assert k is None or k > 1

    def test_zero(self):
        assert find_K(uniform_matroid(3, 1), 0) is None


class TestFormat:
    def test_round_trip(self):
        s = broken_circuit_complex_k23()
        assert parse_setsystem(s.to_text()) == s
        assert parse_setsystem("ground 2\nface\nface 0\n").face_sets() == [(), (0,)]

    @pytest.mark.parametrize("text,where", [
        ("face 0\n", "1:1"),
        ("ground 2\nface 2\n", "2:6"),
        ("ground 2\nface 0 0\n", "2:8"),
        ("ground 2\nface 0\nface 0\n", "3:1"),
        ("ground x\n", "1:1"),
        ("ground 2\nedge 1\n", "2:1"),
        ("ground 2\n", "1:1"),
    ])
    def test_errors(self, text, where):
        with pytest.raises(FormatError) as err:
            parse_setsystem(text)
        assert str(err.value).startswith(where)
