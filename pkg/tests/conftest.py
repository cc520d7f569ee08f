from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from relpoly.polycore import Poly

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def P(*coeffs) -> Poly:
    return Poly(Fraction(c) for c in coeffs)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-9, max_value=9)


@st.composite
def polys(draw, max_degree: int = 8, elements=rationals) -> Poly:
    return Poly(draw(st.lists(elements, max_size=max_degree + 1)))


@st.composite
def nonpositive_rooted(draw, max_degree: int = 5) -> Poly:
    """Standard polynomials with only real zeros at rational points <= 0."""
    roots = draw(st.lists(st.fractions(min_value=-10, max_value=0, max_denominator=6), max_size=max_degree))
    p = Poly.constant(draw(st.integers(min_value=1, max_value=5)))
    for r in roots:
        p = p * Poly((-r, 1))
    return p


@st.composite
def interlacing_pairs(draw, max_roots: int = 7) -> tuple[Poly, Poly]:
    """``(A, B)`` with ``A < B``: alternate sorted nonpositive roots between the two."""
    roots = sorted(draw(st.lists(st.fractions(min_value=-10, max_value=0, max_denominator=6), min_size=1, max_size=max_roots)))
    b_first = draw(st.booleans())
    if (len(roots) % 2 == 1) != b_first:
        roots.pop()
    a, b = Poly.constant(draw(st.integers(1, 5))), Poly.constant(draw(st.integers(1, 5)))
    for i, r in enumerate(roots):
        factor = Poly((-r, 1))
        if (i % 2 == 0) == b_first:
            b = b * factor
        else:
            a = a * factor
    return a, b


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
