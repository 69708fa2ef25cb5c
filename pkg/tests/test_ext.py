import pytest

import core.ext
from core.ext import (
    CONNECTING,
    TWO_SIDED,
    ExtCountMismatch,
    certify_injective_factoring,
    connectable,
    ext_basis,
    ext_dim,
    injective_factoring_basis,
    injective_maps_one_sided,
    is_two_sided,
    lift_two_sided,
    two_sided_maps,
)
from core.fringe import fringe
from core.hom_kiss import hom_tau_dim
from core.strings import dimension_vector, enumerate_strings, format_string, parse_string


def middles(seq):
    return sorted(format_string(m) for m in seq.middle)


def test_connecting_extension_a2(a2):
    e1, e2 = parse_string(a2, "e(1)"), parse_string(a2, "e(2)")
    assert [arrow.id for arrow in connectable(a2, e2, e1)] == ["a"]
    assert ext_dim(a2, e2, e1) == 1
    (seq,) = ext_basis(a2, e2, e1)
    assert seq.kind == CONNECTING
    assert middles(seq) == ["a"]
    assert seq.left == e1 and seq.right == e2


def test_no_extension_the_other_way(a2):
    e1, e2 = parse_string(a2, "e(1)"), parse_string(a2, "e(2)")
    assert connectable(a2, e1, e2) == []
    assert ext_dim(a2, e1, e2) == 0
    assert ext_basis(a2, e1, e2) == []


def test_two_sided_extension_a3(a3):
    a, b = parse_string(a3, "a"), parse_string(a3, "b")
    f = fringe(a3)
    (pair,) = two_sided_maps(f, a, b)
    assert is_two_sided(f, pair)
    assert lift_two_sided(f, pair) is not None
    assert ext_dim(a3, b, a) == 1
    (seq,) = ext_basis(a3, b, a)
    assert seq.kind == TWO_SIDED
    assert middles(seq) == ["a b", "e(2)"]


def test_projective_has_no_extensions(a3):
    p3 = parse_string(a3, "a b")
    for x in enumerate_strings(a3, 0):
        assert ext_dim(a3, p3, x) == 0


@pytest.mark.parametrize("name", ["a2", "a3", "sq33", "gls"])
def test_counts_agree(corpus, name):
    q = corpus(name)
    f = fringe(q)
    strings = enumerate_strings(q, 2)
    for y in strings:
        for x in strings:
            dim = ext_dim(q, y, x)
            assert dim == len(ext_basis(q, y, x))
            assert dim + len(injective_factoring_basis(f, x, y)) == hom_tau_dim(q, x, y)


@pytest.mark.parametrize("name", ["a3", "sq33", "gls"])
def test_middle_terms_are_additive(corpus, name):
    q = corpus(name)
    strings = enumerate_strings(q, 2)
    for y in strings:
        for x in strings:
            for seq in ext_basis(q, y, x):
                total = {}
                for m in seq.middle:
                    for v, n in dimension_vector(q, m).items():
                        total[v] = total.get(v, 0) + n
                expected = dict(dimension_vector(q, x))
                for v, n in dimension_vector(q, y).items():
                    expected[v] = expected.get(v, 0) + n
                assert total == expected


def test_maps_out_of_injective_strings_are_one_sided(sq33):
    f = fringe(sq33)
    targets = enumerate_strings(f.hat, 2)
    assert injective_maps_one_sided(f, targets)


def test_injective_factoring_is_certified(finite_quiver):
    f = fringe(finite_quiver)
    strings = enumerate_strings(finite_quiver, 2)
    for x in strings:
        for y in strings:
            factoring = certify_injective_factoring(f, x, y)
            assert factoring.certified, f"{format_string(x)} | {format_string(y)}"
            assert list(factoring.basis) == injective_factoring_basis(f, x, y)
            assert len(factoring.lifts) == len(two_sided_maps(f, x, y))


def test_ext_dim_rejects_a_missing_lift(a3, monkeypatch):
    monkeypatch.setattr(core.ext, "lift_two_sided", lambda f, pair: None)
    a, b = parse_string(a3, "a"), parse_string(a3, "b")
    assert not certify_injective_factoring(fringe(a3), a, b).certified
    with pytest.raises(ExtCountMismatch, match="do not lift"):
        ext_dim(a3, b, a)


def test_ext_dim_rejects_two_sided_injective_maps(a2, monkeypatch):
    monkeypatch.setattr(core.ext, "injective_maps_one_sided", lambda f, targets: False)
    e1, e2 = parse_string(a2, "e(1)"), parse_string(a2, "e(2)")
    with pytest.raises(ExtCountMismatch, match="two-sided"):
        ext_dim(a2, e2, e1)
