from fractions import Fraction
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from parcoh.exactla import Mat
from parcoh.exactnum import CycNum, euler_phi, omega

settings.register_profile(
    "repo", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("repo")

W = omega()
W2 = W * W


def rationals(max_num=9, max_den=4):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def cycnums(n, **kw):
    return st.lists(rationals(**kw), min_size=euler_phi(n), max_size=euler_phi(n)).map(
        lambda cs: CycNum(n, *_scale(cs)))


def _scale(cs):
    from math import lcm
    d = 1
    for c in cs:
        d = lcm(d, c.denominator)
    return [int(c * d) for c in cs], d


def mats(n, rows, cols, **kw):
    return st.lists(st.lists(cycnums(n, **kw), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(lambda e: Mat(e, n))


@st.composite
def invertible(draw, n, dim):
    m = draw(mats(n, dim, dim, max_num=3, max_den=1))
    if m.det().is_zero():
        m = m + Mat.identity(dim, n) * 7
    if m.det().is_zero():
        m = Mat.identity(dim, n)
    return m


EIGEN = [CycNum.one(3), -CycNum.one(3), W, W2]


@st.composite
def zero_invariant_tuples(draw, max_dim=4, max_r=6):
    """Conjugates of fixed diagonal matrices, closed by g_r := (g_1...g_{r-1})^-1."""
    from parcoh.locsys import GTuple
    dim = draw(st.integers(1, max_dim))
    r = draw(st.integers(3, max_r))
    mats_ = []
    for _ in range(r - 1):
        d = Mat.diag([draw(st.sampled_from(EIGEN)) for _ in range(dim)])
        P = draw(invertible(3, dim))
        mats_.append(P * d * P.inv())
    prod = Mat.identity(dim, 3)
    for m in mats_:
        prod = prod * m
    mats_.append(prod.inv())
    return GTuple(mats_)


@pytest.fixture(scope="session")
def klein():
    from parcoh.scenarios import klein_group
    return klein_group()


@pytest.fixture(scope="session")
def psl2_seed(klein):
    from parcoh.scenarios import find_seed
    return find_seed(klein)


@pytest.fixture(scope="session")
def psl2_orbit(klein, psl2_seed):
    from parcoh.hurworb import braid_orbit
    return braid_orbit(klein, psl2_seed)


@pytest.fixture(scope="session")
def psl2_report():
    from parcoh.scenarios import scenario_psl2
    return scenario_psl2(pmax=199, full_image_p=11)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance") and hasattr(mod, "LINES"):
            lines = mod.LINES
    if lines:
        terminalreporter.section("acceptance criteria")
        for text in sorted(lines, key=lambda t: int(t.split()[1].rstrip(":"))):
            terminalreporter.write_line(text)
