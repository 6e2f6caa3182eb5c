import pytest

from mazur_floer import cfa
from mazur_floer.cfa import AInftyModule, CfaError, Layout, op

SMALL = [(m, n) for m in range(1, 5) for n in range(1, 5)]


@pytest.mark.parametrize("m,n", [(2, 1), (3, 1), (1, 2), (2, 3)])
def test_generator_counts(m, n):
    gens = cfa.generators(m, n)
    xs = [g for g in gens if g.role == "x"]
    ys = [g for g in gens if g.role == "y"]
    assert len(xs) == 2 * m + 1 and all(g.iota == 0 for g in xs)
    assert len(ys) == 2 * m + 2 * n + 2 * m * n - 2 and all(g.iota == 1 for g in ys)


@pytest.mark.parametrize("m,n", SMALL)
def test_idempotent_chains(m, n):
    assert cfa.validate(cfa.build_cfa(m, n)) == []


@pytest.mark.parametrize("m,n", SMALL)
def test_a_infinity_relations(m, n):
    module = cfa.build_cfa(m, n)
    assert cfa.ainfinity_violations(module) == []
    assert cfa.ainfinity_violations(cfa.change_of_basis(module)) == []


def test_q31_matches_exactly():
    rec = cfa.reconcile("Q31")
    assert rec.missing == () and rec.extra == ()
    assert len(cfa.fixture("Q31").ops) == 40
    assert cfa.ERRATA.get("Q31") is None


def test_q12_matches_after_one_erratum():
    assert len(cfa.fixture("Q12").ops) == 24
    rec = cfa.reconcile("Q12")
    assert rec.ok and rec.missing == () and rec.extra == ()
    raw = cfa.reconcile("Q12", corrected=False)
    assert raw.missing == (("y8", (), "y7", 2),)


def test_listed_q12_op_breaks_a_relation():
    # the erratum is forced: the list as printed is not an A-infinity module
    assert cfa.ainfinity_violations(cfa.fixture("Q12"))
    assert cfa.ainfinity_violations(cfa.fixture("Q12", corrected=True)) == []


def test_q23_partial_is_contained():
    rec = cfa.reconcile("Q23partial")
    assert rec.missing == ()
    raw = cfa.reconcile("Q23partial", corrected=False)
    assert raw.missing == (("x4", ("12", "1"), "y16", 0),)


def test_q23_erratum_is_forced():
    # (x4; r1, r2, r1): m(m(x4, r1), r2, r1) = U m(y17, r2, r1) = U y16 must be
    # cancelled by m(x4, r12, r1), so that op carries a U
    built = cfa.build_cfa(2, 3).op_keys()
    assert ("x4", ("1",), "y17", 1) in built
    assert ("y17", ("2", "1"), "y16", 0) in built
    assert ("x4", ("12", "1"), "y16", 1) in built


def test_q12_examples_present():
    keys = cfa.build_cfa(1, 2).op_keys()
    assert ("x1", (), "x2", 1) in keys
    assert ("y8", ("2",), "x3", 0) in keys
    assert ("x1", ("3", "2", "12", "1"), "y4", 2) in keys


def test_hat_notation_expands_to_repeated_chords():
    assert ("y9", ("2", "12", "1"), "y7", 0) in cfa.build_cfa(3, 1).op_keys()


def test_change_of_basis_on_q31():
    before = cfa.build_cfa(3, 1)
    after = cfa.change_of_basis(before)
    removed = before.op_keys() - after.op_keys()
    assert len(removed) == 10
    assert all(k[2] in {"y1", "y2", "y3", "y4", "y5", "y6"} for k in removed)
    assert ("x1", ("3", "2", "1"), "y1", 1) in removed
    assert ("x2", ("123", "2", "1"), "y6", 1) in removed
    assert cfa.validate(after) == []


def test_change_of_basis_keeps_the_tower_ops():
    after = cfa.change_of_basis(cfa.build_cfa(1, 2)).op_keys()
    assert ("x3", ("3", "2", "1"), "y3", 1) in after
    assert ("x1", ("123", "2", "1"), "y3", 1) in after
    assert ("x1", ("3", "2", "1"), "y1", 1) not in after


def test_change_of_basis_without_triple_family_is_identity():
    module = cfa.build_cfa(2, 1, triple_family=False)
    assert not any(p.rhos[:3] == tuple(op("x1", ["3", "2", "1"], "y1").rhos) for p in module.ops)
    assert cfa.change_of_basis(module).op_keys() == module.op_keys()


def test_isolated_components_split_off():
    for m, n in SMALL:
        lay = Layout(m, n)
        for p in cfa.change_of_basis(cfa.build_cfa(m, n)).ops:
            assert (p.src in lay.isolated) == (p.tgt in lay.isolated), (m, n, str(p))


def test_ops_are_sorted_and_deterministic():
    a, b = cfa.build_cfa(2, 2), cfa.build_cfa(2, 2)
    assert a.dumps() == b.dumps()
    assert a.sorted().ops == a.ops


def test_json_roundtrip():
    module = cfa.build_cfa(2, 3)
    assert AInftyModule.from_json(module.to_json()) == module


@pytest.mark.parametrize("m,n", [(0, 1), (1, 0), (-1, 2)])
def test_rejects_nonpositive_parameters(m, n):
    with pytest.raises(CfaError):
        cfa.build_cfa(m, n)


def test_unknown_fixture():
    with pytest.raises(CfaError):
        cfa.fixture("Q99")


def test_validate_flags_bad_chains():
    bad = AInftyModule(1, 1, cfa.generators(1, 1), (op("x1", ["2"], "y1"), op("x1", ["1", "1"], "y1")))
    problems = cfa.validate(bad)
    assert any("m2(x1,r2)" in p and "start" in p for p in problems)
    assert any("m2(x1,r2)" in p and "end" in p for p in problems)
    assert any("m3(x1,r1,r1)" in p and "chain" in p for p in problems)


def test_violation_checker_finds_a_missing_merge():
    module = cfa.build_cfa(1, 1)
    ops = tuple(p for p in module.ops if p.key() != ("x1", ("123",), "y3", 1))
    assert cfa.ainfinity_violations(AInftyModule(1, 1, module.gens, ops))
