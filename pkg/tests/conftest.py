from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from metahahn.errors import MetaHahnError
from metahahn.matrix_reps import RepParams, check_rep_params
from metahahn.analytic import check_model_params
from metahahn.special import check_grid_params

settings.register_profile(
    "exact", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much]
)
settings.load_profile("exact")

# three admissible points used throughout
POINTS = [
    RepParams(Fraction(1, 3), Fraction(1, 2), 4, Fraction(2, 7)),
    RepParams(Fraction(-5, 7), Fraction(3, 11), 5, Fraction(-4, 9)),
    RepParams(Fraction(9, 4), Fraction(-7, 3), 3, Fraction(1, 5)),
]


def rationals(max_num=30, max_den=12, nonzero=False):
    s = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return s.filter(lambda x: x != 0) if nonzero else s


def non_integers(max_num=30, max_den=12):
    return rationals(max_num, max_den).filter(lambda x: x.denominator != 1)


def admissible(p: RepParams) -> bool:
    try:
        check_rep_params(p)
        check_model_params(p)
        check_grid_params(p)
    except MetaHahnError:
        return False
    return True


@st.composite
def rep_params(draw, max_N=6, min_N=1):
    N = draw(st.integers(min_N, max_N))
    a = draw(non_integers())
    b = draw(non_integers())
    mu = draw(non_integers())
    p = RepParams(a, b, N, mu)
    if not admissible(p):
        from hypothesis import assume

        assume(False)
    return p


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@st.composite
def n_below_N(draw, max_N):
    N = draw(st.integers(2, max_N))
    return draw(st.integers(1, N - 1)), N
