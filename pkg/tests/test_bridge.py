from fractions import Fraction

import pytest

from mazur_floer import bridge
from mazur_floer.bridge import BridgeError, ConwayTangle, SchubertForm

PAIRS = [(m, n) for m in range(1, 11) for n in range(1, 11)]


def test_whitehead_link():
    assert bridge.fraction_to_schubert(ConwayTangle([2, 1, 2])) == SchubertForm(8, 3)
    assert bridge.schubert_qmn(1, 1) == SchubertForm(8, 3)
    assert bridge.bridge_from_rs(2, 0) == SchubertForm(8, 3)


@pytest.mark.parametrize("m,n,p,q", [(2, 1, 14, 5), (2, 3, 34, 5), (3, 1, 20, 7)])
def test_schubert_forms(m, n, p, q):
    assert bridge.schubert_qmn(m, n) == SchubertForm(p, q)


def test_trivial_tangle():
    assert bridge.fraction_to_schubert(ConwayTangle([1])) == SchubertForm(1, 1)
    assert str(SchubertForm(1, 0)) == "b(1,1)"


@pytest.mark.parametrize("m,n", PAIRS)
def test_identities(m, n):
    b = bridge.schubert_qmn(m, n)
    assert bridge.bridge_from_rs(*bridge.rs_params(m, n)) == b
    assert bridge.fraction_to_schubert(ConwayTangle([2 * n, 1, 2 * m])) == b
    assert bridge.isotopic(b, bridge.schubert_qmn(n, m))
    assert b.p % 2 == 0 and b.components == 2


def test_alternative_tangle_is_isotopic():
    t = ConwayTangle([4, 2, -2])
    assert t.value() == Fraction(3, 14)
    assert bridge.isotopic(bridge.fraction_to_schubert(t), bridge.schubert_qmn(2, 1))


def test_isotopy_negative_cases():
    assert bridge.isotopic(SchubertForm(8, 3), SchubertForm(8, 3))
    assert not bridge.isotopic(SchubertForm(8, 3), SchubertForm(10, 3))
    assert not bridge.isotopic(SchubertForm(7, 1), SchubertForm(7, 2))


def test_rs_params():
    assert bridge.rs_params(2, 1) == (3, -1)
    assert bridge.rs_params(1, 1) == (2, 0)
    assert bridge.rs_params(1, 2) == (2, -3)
    assert bridge.bridge_from_rs(2, -3) == bridge.schubert_qmn(1, 2)
    # the sign of s does not affect the link
    assert bridge.bridge_from_rs(3, 1) == bridge.bridge_from_rs(3, -1) == SchubertForm(14, 5)


def test_normalization_and_display():
    b = SchubertForm(14, -9)
    assert b.q == 5 and str(b) == "b(14,5)"
    assert str(SchubertForm(14, 9)) == "b(14,-5)"
    assert SchubertForm.parse(" b(14, 5) ") == b
    assert str(ConwayTangle.parse("C(2, 1,4)")) == "C(2,1,4)"


@pytest.mark.parametrize(
    "make",
    [
        lambda: SchubertForm(0, 1),
        lambda: SchubertForm(6, 3),
        lambda: SchubertForm.parse("b(8)"),
        lambda: ConwayTangle([]),
        lambda: ConwayTangle.parse("C(a,b)"),
        lambda: ConwayTangle([1, 0]).value(),
        lambda: ConwayTangle([0]).value(),
        lambda: ConwayTangle([2, -1, 1]).value(),
        lambda: bridge.bridge_from_rs(0, 3),
        lambda: bridge.schubert_qmn(0, 1),
        lambda: bridge.strand_counts(1, 0),
    ],
)
def test_errors(make):
    with pytest.raises(BridgeError):
        make()


def test_strand_counts_base_cases():
    d = bridge.strand_counts(1, 1)
    assert d.strand_counts == {"T/L": 2, "T/R": 2, "B/L/W": 1, "B/M": 1, "B/R": 1}
    assert (d.vertical_intersections, d.horizontal_intersections) == (3, 4)
    d = bridge.strand_counts(2, 1)
    assert d.strand_counts == {"T/L": 4, "T/R": 3, "B/L/W": 1, "B/M": 2, "B/R": 2, "V/R": 1}
    assert (d.vertical_intersections, d.horizontal_intersections) == (5, 8)
    assert (d.r, d.s) == (3, -1)


@pytest.mark.parametrize("m,n", PAIRS)
def test_intersections_match_generator_counts(m, n):
    d = bridge.strand_counts(m, n)
    assert d.vertical_intersections == 2 * m + 1
    assert d.horizontal_intersections == 2 * m + 2 * n + 2 * m * n - 2
    assert "B/L/W" in d.strand_counts if n == 1 else "B/L/W" not in d.strand_counts


def test_diagram_json():
    j = bridge.strand_counts(3, 1).to_json()
    assert j["intersections"] == {"vertical": 7, "horizontal": 12}
    assert j["r"] == 4 and j["s"] == -2
