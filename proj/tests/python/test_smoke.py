import math

import pytest

import nervecover as nc


def test_family_sizes():
    assert [nc.family_size(n) for n in range(1, 5)] == [3, 6, 20, 168]
    fam = nc.family(2)
    assert fam[0] == "0"
    assert fam[1] == "void"
    assert fam[-1] == "1+2+12"


def test_coefficients_reconstruct_the_constant():
    e0 = nc.chi_coefficients(3, 0)
    assert e0[0] == 1
    assert all(v == 0 for v in e0[1:])
    # the vertex coefficient of chi^1 is 1
    e1 = nc.chi_coefficients(3, 1)
    assert e1[nc.family(3).index("1")] == 1


def test_stevens_values():
    assert nc.stevens_coverage(4, 0.3) == pytest.approx(0.008, abs=1e-12)
    gaps = nc.stevens_gap_vector(5, 0.25)
    assert sum(gaps) == pytest.approx(1.0, abs=1e-9)
    assert gaps[0] == pytest.approx(nc.stevens_coverage(5, 0.25), abs=1e-12)
    assert nc.gap_moments(0.4, 1) == pytest.approx(3 * 0.6**2, abs=1e-12)


def test_exact_three_arc_pipeline():
    assert nc.coverage_exact(0.4) == pytest.approx(0.04, abs=1e-10)
    dist = nc.chi_distribution_exact(0.4)
    assert dist["lo"] == 0
    assert dist["probabilities"][0] == pytest.approx(0.04, abs=1e-10)
    assert sum(dist["probabilities"]) == pytest.approx(1.0, abs=1e-9)
    assert dist["route_discrepancy"] < 1e-10
    p = nc.three_arc_containment(0.4)
    assert p[0] == 1.0 and p[1] == 0.0


def test_mc_agrees_with_the_closed_form():
    run = nc.mc_coverage("circle", 3, 0.2, trials=50000, seed=12, workers=2)
    sigma = math.sqrt(0.04 * 0.96 / run["good_samples"])
    assert run["oracle_probability"] == pytest.approx(0.04, abs=4 * sigma)
    assert run["pipeline_probability"] == run["oracle_probability"]
    again = nc.mc_coverage("circle", 3, 0.2, trials=50000, seed=12, workers=2)
    assert again["oracle_probability"] == run["oracle_probability"]


def test_bound_and_errors():
    assert nc.azuma_bound(0.0, 3) == 1.0
    assert nc.azuma_bound(1.92, 3, "circle") == pytest.approx(
        math.exp(-(1.92**2) / 24.0), abs=1e-12
    )
    with pytest.raises(ValueError):
        nc.stevens_coverage(0, 0.3)
    with pytest.raises(ValueError):
        nc.mc_coverage("circle", 3, 0.3, trials=1000)
    with pytest.raises(OSError):
        nc.mc_coverage("missing.graph", 3, 0.1)
