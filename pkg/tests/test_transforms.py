import pytest
from hypothesis import given, settings

from sgtransform.sgcore import ClosureViolation, DomainError, NumericalSemigroup, almost_ordinary, from_generators
from sgtransform.transforms import (
    TransformKind,
    f1,
    f2,
    f3,
    iterate,
    max_special_gap_below_frobenius,
    special_reason,
    transform_a,
    transform_b,
)

from conftest import semigroups, small

S57 = small(0, 5, 7, 10, 12)
EX64 = from_generators([6, 11, 13, 15, 16])


def full_interval(s):
    return all(x in s for x in range(s.frobenius - s.multiplicity + 1, s.frobenius))


# ---- worked examples -------------------------------------------------------


def test_f1_examples():
    assert f1(from_generators([2, 3])) == NumericalSemigroup.naturals()
    assert f1(S57) == small(0, 5, 7, 10, 11)
    with pytest.raises(DomainError):
        f1(NumericalSemigroup.naturals())


def test_f2_examples():
    assert f2(S57) == small(0, 7, 10)
    trace = iterate(S57, "f2")
    assert trace.terminal == NumericalSemigroup.ordinary(9)
    assert all(t.genus == 8 for t in trace.steps)
    with pytest.raises(DomainError):
        f2(NumericalSemigroup.ordinary(4))


def test_f3_examples():
    assert f3(small(0, 4, 5, 8)) == small(0, 4, 5, 6, 8)
    trace = iterate(small(0, 4, 5, 8), "f3")
    assert trace.terminal.is_irreducible
    with pytest.raises(DomainError):
        f3(EX64)


def test_a_examples():
    assert max_special_gap_below_frobenius(S57) == 9
    a1 = transform_a(S57)
    assert a1 == small(0, 7, 9, 10, 12)
    assert a1.gaps == [1, 2, 3, 4, 5, 6, 8, 11]
    a2 = transform_a(a1)
    assert a2 == small(0, 8, 9, 10, 12) == almost_ordinary(8, 4)


def test_a_rejects_special_inputs():
    for s, reason in [
        (NumericalSemigroup.ordinary(5), "ordinary"),
        (EX64, "irreducible"),
        (almost_ordinary(8, 4), "almost-ordinary"),
    ]:
        assert special_reason(s) == reason
        with pytest.raises(DomainError) as exc:
            transform_a(s)
        assert exc.value.reason == reason


def test_b_example_and_add_first_failure():
    b = transform_b(EX64)
    assert b.small_elements() == [0, 11, 12, 13, 14, 15, 16, 17, 18, 19] and b.conductor == 21
    assert EX64.sub_frobenius == 14
    # adding u before removing m breaks closure: 6 + 14 = 20
    with pytest.raises(ClosureViolation) as exc:
        EX64.with_member(14)
    assert "20" in str(exc.value)
    assert EX64.without_member(6).with_member(14) == b


def test_b_matches_a_when_interval_has_gap():
    assert transform_b(S57) == transform_a(S57)


def test_b_rejects():
    with pytest.raises(DomainError):
        transform_b(NumericalSemigroup.ordinary(3))
    with pytest.raises(DomainError):
        transform_b(almost_ordinary(8, 4))


def test_iterate_trace():
    trace = iterate(S57, TransformKind.A)
    assert [t.small_elements() for t in trace.steps] == [[0, 5, 7, 10], [0, 7, 9, 10], [0, 8, 9, 10]]
    assert [(a.added, a.removed) for a in trace.annotations] == [(9, 5), (8, 7)]
    data = trace.to_json()
    assert data["kind"] == "a" and len(data["steps"]) == 3
    assert list(data["annotations"][0]) == ["h", "removed_m", "e_before", "e_after"]
    assert len(iterate(S57, "a", max_steps=1)) == 2
    assert len(iterate(almost_ordinary(8, 4), "a")) == 1


def test_iterate_f1_reaches_naturals():
    trace = iterate(EX64, "f1")
    assert trace.terminal == NumericalSemigroup.naturals()
    assert len(trace.annotations) == EX64.genus


def test_kind_parse():
    assert TransformKind.parse("A") is TransformKind.A
    assert TransformKind.parse("ordinarization") is TransformKind.ORDINARIZATION
    with pytest.raises(ValueError):
        TransformKind.parse("z")


# ---- properties over every semigroup of genus <= 12 -------------------------


def test_a_preserves_invariants(non_special):
    for s in non_special:
        t = transform_a(s)
        assert (t.frobenius, t.genus, t.left) == (s.frobenius, s.genus, s.left)
        assert t.multiplicity > s.multiplicity


def test_a_image_is_neither_irreducible_nor_ordinary(non_special):
    for s in non_special:
        t = transform_a(s)
        assert not t.is_irreducible and not t.is_ordinary


def test_a_terminates_at_almost_ordinary(non_special):
    for s in non_special:
        trace = iterate(s, "a")
        assert trace.terminal == almost_ordinary(s.genus, s.left)
        ms = [t.multiplicity for t in trace.steps]
        assert ms == sorted(set(ms))


def test_2m_and_h_generate_image(non_special):
    for s in non_special:
        h = max_special_gap_below_frobenius(s)
        t = transform_a(s)
        assert t.is_minimal_generator(2 * s.multiplicity)
        assert t.is_minimal_generator(h)


def test_small_generators_survive(non_special):
    for s in non_special:
        h = max_special_gap_below_frobenius(s)
        t = transform_a(s)
        gens = s.minimal_generators
        for x in gens[1:]:
            if x <= s.multiplicity + h:
                assert t.is_minimal_generator(x)
        if len(gens) >= 2 and s.multiplicity + h >= gens[-2]:
            assert t.embedding_dimension >= s.embedding_dimension


def test_gap_in_top_interval_keeps_edim(non_special):
    for s in non_special:
        if not full_interval(s):
            assert transform_a(s).embedding_dimension >= s.embedding_dimension


def _second_a_pairs(non_special):
    for s in non_special:
        s1 = transform_a(s)
        if s1.is_special:
            continue
        yield s, s1, transform_a(s1)


def test_second_a_step_never_lowers_edim(non_special):
    pairs = list(_second_a_pairs(non_special))
    assert pairs
    for s, s1, s2 in pairs:
        assert s2.embedding_dimension >= s1.embedding_dimension


def test_second_a_step_can_keep_edim():
    # a second step need not strictly raise e
    s = small(0, 5, 6, 10)
    s1 = transform_a(s)
    s2 = transform_a(s1)
    assert s1 == small(0, 6, 8, 10) and s2 == small(0, 7, 8, 10)
    assert s1.embedding_dimension == s2.embedding_dimension == 6


def test_b_never_lowers_edim(population):
    for s in population:
        if TransformKind.B.domain_violation(s) is None:
            t = transform_b(s)
            assert t.embedding_dimension >= s.embedding_dimension
            assert (t.frobenius, t.genus, t.left) == (s.frobenius, s.genus, s.left)


def test_b_versus_a_by_top_interval(population):
    for s in population:
        if s.conductor == 0 or TransformKind.B.domain_violation(s) is not None:
            continue
        if full_interval(s):
            assert s.sub_frobenius == s.frobenius - s.multiplicity
        else:
            assert s.sub_frobenius == max_special_gap_below_frobenius(s)
            assert transform_b(s) == transform_a(s)


def test_dual_formula_for_largest_special_gap(population):
    for s in population:
        if s.conductor == 0 or s.is_irreducible:
            continue
        f = s.frobenius
        h = max(x for x in s.special_gaps if x != f)
        other = max(x for x in s.gaps if (f - x) not in s and 2 * x != f)
        assert h == other and 2 * h > f


# ---- random samples up to genus 30 -----------------------------------------


@given(semigroups())
@settings(max_examples=150, deadline=None)
def test_random_a_and_b(s):
    if special_reason(s) is None:
        trace = iterate(s, "a")
        assert trace.terminal == almost_ordinary(s.genus, s.left)
    if s.conductor and TransformKind.B.domain_violation(s) is None:
        trace = iterate(s, "b")
        assert trace.terminal == almost_ordinary(s.genus, s.left)
        es = [t.embedding_dimension for t in trace.steps]
        assert es == sorted(es)
