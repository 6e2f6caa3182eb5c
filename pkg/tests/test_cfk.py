import random

import pytest
from hypothesis import given, settings, strategies as st

from mazur_floer import cfk
from mazur_floer.cfk import Arrow, CfkComplex, CfkError, Generator


def test_trefoil_invariants():
    c = cfk.LIBRARY["T23"]()
    assert cfk.tau_from_cfk(c) == 1
    assert cfk.epsilon_from_cfk(c) == 1
    # the survivor of the horizontal complex sits at A = -tau
    (h,) = cfk.horizontal_distinguished(c)
    assert c.grading()[h] == -1


@pytest.mark.parametrize("name", sorted(cfk.LIBRARY))
def test_library_invariants(name):
    c = cfk.LIBRARY[name]()
    assert cfk.validate(c, reduced=True) == []
    assert (cfk.tau_from_cfk(c), cfk.epsilon_from_cfk(c)) == cfk.LIBRARY_INVARIANTS[name]
    m = cfk.model(name)
    assert (m.tau, m.epsilon) == cfk.LIBRARY_INVARIANTS[name]


@pytest.mark.parametrize("tau,eps", cfk.SYNTHETIC_GRID)
def test_synthetic_models(tau, eps):
    c = cfk.synthetic_complex(tau, eps)
    assert cfk.validate(c, reduced=True) == []
    assert cfk.tau_from_cfk(c) == tau
    assert cfk.epsilon_from_cfk(c) == eps
    m = cfk.simplify(c)
    assert (m.tau, m.epsilon) == (tau, eps)


def test_synthetic_grid_covers_every_branch():
    branches = {((t > 0) - (t < 0), e) for t, e in cfk.SYNTHETIC_GRID}
    assert len(branches) == 7


@pytest.mark.parametrize("name", ["T23", "T25", "syn(2,-1)", "syn(0,1)"])
def test_mirror_negates_invariants(name):
    c = cfk.model(name).complex
    mc = cfk.mirror(c)
    assert cfk.tau_from_cfk(mc) == -cfk.tau_from_cfk(c)
    assert cfk.epsilon_from_cfk(mc) == -cfk.epsilon_from_cfk(c)
    assert cfk.mirror(mc) == c


@settings(max_examples=40, deadline=None)
@given(name=st.sampled_from(["T25", "figure8", "syn(1,-1)", "syn(-2,1)", "syn(0,-1)"]), seed=st.integers(0, 10**6))
def test_invariants_survive_filtered_basis_changes(name, seed):
    c = cfk.model(name).complex
    changed = cfk.random_filtered_change(c, 6, random.Random(seed))
    assert cfk.validate(changed) == []
    assert cfk.tau_from_cfk(changed) == cfk.tau_from_cfk(c)
    assert cfk.epsilon_from_cfk(changed) == cfk.epsilon_from_cfk(c)


def test_validate_reports_problems():
    c = CfkComplex((Generator("a", 0), Generator("b", 0)), (Arrow("a", "b", 1, 1), Arrow("a", "c")))
    problems = cfk.validate(c)
    assert any("UV" in p for p in problems)
    assert any("unknown" in p for p in problems)


def test_validate_catches_grading_mismatch():
    c = CfkComplex((Generator("a", 0), Generator("b", 0)), (Arrow("a", "b", 1, 0),))
    assert cfk.validate(c)


def test_duplicate_ids_rejected():
    with pytest.raises(CfkError):
        CfkComplex((Generator("a", 0), Generator("a", 1)))


def test_json_roundtrip():
    c = cfk.model("syn(1,-1)").complex
    assert CfkComplex.from_json(c.to_json()) == c


def test_simplify_rejects_unsimplified_basis():
    # two vertical arrows out of one generator
    c = CfkComplex(
        (Generator("a", 0), Generator("b", -1), Generator("c", -1)),
        (Arrow("a", "b", 0, 1), Arrow("a", "c", 0, 1)),
    )
    with pytest.raises(CfkError):
        cfk.simplify(c)


def test_unknown_companion():
    with pytest.raises(CfkError):
        cfk.model("T99")


@pytest.mark.parametrize("name", ["fig25", "fig27", "fig29", "fig31"])
@pytest.mark.parametrize("m,n", [(2, 1), (3, 2), (2, 2)])
def test_satellite_subcomplexes_have_vertical_boundary_class(name, m, n):
    c = cfk.fixture(name, m, n)
    assert cfk.validate(c) == []
    assert cfk.vertical_classify(c, cfk.FIXTURE_CYCLES[name](n)) == 1


def test_x_part_is_a_subcomplex():
    c = cfk.fixture_x_part("fig25", 3, 2)
    assert all(g.startswith("x") for g in c.ids)


def test_fixture_needs_m_at_least_n():
    with pytest.raises(CfkError):
        cfk.fixture("fig25", 1, 2)


def test_vertical_classify_three_outcomes():
    t23 = cfk.LIBRARY["T23"]()
    assert cfk.vertical_classify(t23, ["c"]) == 1
    mt23 = cfk.mirror(t23)
    assert cfk.vertical_classify(mt23, cfk.horizontal_distinguished(mt23)) == -1
    f8 = cfk.LIBRARY["figure8"]()
    assert cfk.vertical_classify(f8, ["x0"]) == 0
