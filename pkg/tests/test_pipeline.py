import json

import pytest

from mazur_floer import cfk, pipeline


@pytest.mark.parametrize("m,n,name,want", [(2, 1, "T23", 2), (3, 1, "unknot", 0), (2, 3, "mT23", 0), (1, 1, "T23", 1), (3, 1, "T23", 3)])
def test_compute_examples(m, n, name, want):
    r = pipeline.compute(m, n, name)
    assert r.tau_pipeline == want == r.tau_formula
    assert r.agree


def test_trefoil_mazur_free_generator_grading():
    res = pipeline.tensor_homology(2, 1, cfk.model("T23"))
    assert res.decomposition.free == (-2,)
    assert res.complex.grading[res.free_generator] == -2


def test_run_result_fields():
    r = pipeline.compute(2, 1, "T23")
    assert r.epsilon_formula == 1 and r.epsilon_cfk == 1
    assert r.generator_counts["cfa"] == 5 + 8
    assert r.generator_counts["cfd"] == 7
    assert r.generator_counts["tensor"] > 0
    assert set(r.to_json()) >= {"m", "n", "companion", "tau_pipeline", "tau_formula", "agree", "timing"}


def test_formula_check_can_be_skipped():
    r = pipeline.compute(2, 2, "figure8", formula_check=False)
    assert r.tau_formula is None and r.agree and r.tau_pipeline == 0


@pytest.mark.parametrize("m,n", [(2, 1), (3, 1), (3, 2), (2, 2)])
def test_extremal_grading_is_the_genus(m, n):
    assert pipeline.extremal_hat_grading(m, n, cfk.model("T23")) == m


def test_companion_from_json_file(tmp_path):
    path = tmp_path / "trefoil.json"
    path.write_text(json.dumps(cfk.LIBRARY["T23"]().to_json()))
    r = pipeline.compute(2, 1, str(path))
    assert r.tau_pipeline == 2 and r.agree


def test_unreadable_companion(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(cfk.CfkError):
        pipeline.load_companion(str(bad))
    with pytest.raises(cfk.CfkError):
        pipeline.load_companion("no-such-knot")


def test_raw_and_changed_bases_agree():
    for name in ("T25", "syn(1,-1)", "syn(-2,-1)"):
        a = pipeline.compute(3, 2, name).tau_pipeline
        b = pipeline.compute(3, 2, name, raw_cfa=True).tau_pipeline
        assert a == b


def test_default_companions_cover_every_branch():
    names = pipeline.default_companions()
    assert {"unknot", "T23", "mT23", "figure8", "T25", "mT25", "T27"} <= set(names)
    signs = set()
    for name in names:
        mdl = cfk.model(name)
        signs.add(((mdl.tau > 0) - (mdl.tau < 0), mdl.epsilon))
    assert len(names) >= 12 and len(signs) == 7


def test_pipeline_error_carries_module():
    err = pipeline.PipelineError("homology", "boom")
    assert err.module == "homology" and str(err) == "[homology] boom"
