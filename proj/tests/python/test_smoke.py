import math

import pytest

import kuperberg as kup


@pytest.fixture(scope="module")
def params():
    return kup.validate(kup.PlugParams())


@pytest.fixture(scope="module")
def constants(params):
    return kup.derive_constants(params)


def test_constants(constants):
    assert constants.N_eps == 125
    assert constants.N_b == 12
    assert constants.K_width == pytest.approx(1.25)
    assert constants.p == pytest.approx(0.39788735772973837, rel=1e-12)


def test_validation_errors():
    with pytest.raises(kup.ParamError):
        kup.validate(kup.PlugParams(R=1.5))
    with pytest.raises(kup.ParamError):
        kup.validate(kup.PlugParams(epsilon=0.2))


def test_endpoints_match_oracle(params):
    lo, hi = kup.solve_endpoints(params, [40, 12])
    blo, bhi = kup.brute_endpoints(params, [40, 12])
    assert abs(lo - blo) < 1e-10
    assert abs(hi - bhi) < 1e-10
    assert lo < 0 < hi
    q, _ = kup.q_eval(params, [40, 12], hi)
    assert q == pytest.approx(params.R, abs=1e-9)


def test_widths(params, constants):
    assert kup.width_exact(params, [100]) == pytest.approx(4.3612972594082635e-6, rel=1e-9)
    a_minus, a_plus = kup.interval(params, [100])
    assert a_plus - a_minus == pytest.approx(kup.width_exact(params, [100]))
    model = kup.width_asymptotic(params, constants, [400])
    assert kup.width_exact(params, [400]) == pytest.approx(model, rel=0.02)


def test_vertices_and_escape(params):
    assert kup.vertex(params, [8]) == pytest.approx(-0.049735919716217292, rel=1e-12)
    assert kup.escape_time(params, [10]) == 788
    with pytest.raises(kup.NoRoot):
        kup.solve_endpoints(params, [10, 789])


def test_symbolic(constants):
    assert kup.dual([1, 2, 3]) == [3, 2, 1]
    assert kup.admissible(constants, 200, 200)


def test_pressure_and_root(params, constants):
    assert kup.pressure_upper(params, constants, 0.8) < kup.pressure_upper(params, constants, 0.7)
    lo = kup.pressure_lower(params, constants, 0.7, n_max=4)
    assert lo <= kup.pressure_upper(params, constants, 0.7)
    root = kup.bowen_root(lambda t: math.log(2 * 3.0 ** -t), 0.35, 0.95)
    assert root == pytest.approx(math.log(2) / math.log(3), abs=1e-8)


def test_dimension_report():
    rep = kup.dimension()
    assert 0 < rep["t_lower"] < rep["t_upper"] < 1
    assert rep["dim_M"][0] == pytest.approx(rep["dim_tau"][0] + 2)
    assert rep["reference"]["t_lower"] == pytest.approx(0.40105)
