from hypothesis import given, strategies as st

from mazur_floer import gf2


def test_vec_and_support_roundtrip():
    assert gf2.support(gf2.vec([0, 3, 5])) == [0, 3, 5]
    assert gf2.vec([2, 2]) == 0


def test_span_membership():
    s = gf2.Span([0b011, 0b110])
    assert 0b101 in s
    assert 0b001 not in s
    assert len(s) == 2
    assert not s.add(0b101)


@given(st.lists(st.integers(min_value=0, max_value=2**6 - 1), max_size=6))
def test_rank_nullity(cols):
    assert gf2.rank(cols) + len(gf2.kernel(cols)) == len(cols)
    for z in gf2.kernel(cols):
        assert gf2.apply(cols, z) == 0


def test_homology_of_a_short_chain():
    # e0 -> e1 and e2 closed: homology is spanned by e2
    assert gf2.homology_basis([0b010, 0, 0]) == [0b100]
