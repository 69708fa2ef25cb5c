import pytest

from core.ar_translate import cohook_completion, projective_string
from core.hom_kiss import (
    YIsProjective,
    hom_basis,
    hom_tau_dim,
    kiss_count,
    kiss_to_graph_map,
    kisses,
    quotient_factorizations,
    submodule_factorizations,
)
from core.strings import Interval, enumerate_strings, format_string, parse_string


def intervals(factorizations):
    return [(f.interval.start, f.interval.end) for f in factorizations]


def test_factorizations_of_a_path(a3):
    w = parse_string(a3, "a b")
    assert intervals(quotient_factorizations(w)) == [(0, 0), (0, 1), (0, 2)]
    assert intervals(submodule_factorizations(w)) == [(0, 2), (1, 2), (2, 2)]


def test_endomorphisms_of_p1_on_loop_algebra(gls):
    p1 = projective_string(gls, "1")
    assert len(hom_basis(gls, p1, p1)) == 2


def test_hom_between_simples_and_path(a2):
    e1, e2, a = (parse_string(a2, s) for s in ("e(1)", "e(2)", "a"))
    assert len(hom_basis(a2, e1, a)) == 1
    assert len(hom_basis(a2, a, e2)) == 1
    assert len(hom_basis(a2, a, e1)) == 0
    assert len(hom_basis(a2, e1, e2)) == 0


def test_kiss_between_simples_of_a2(fa2, a2):
    x = cohook_completion(fa2, parse_string(a2, "e(1)"))
    y = cohook_completion(fa2, parse_string(a2, "e(2)"))
    found = kisses(x, y)
    assert len(found) == 1
    k = found[0]
    assert k.from_interval == Interval(1, 1)
    assert k.to_interval == Interval(2, 2)
    assert [x.label() for x in k.flanking_letters()] == ["1.fo1^-", "1.fo2", "a", "1.fi1^-"]
    assert kiss_count(y, x) == 0


def test_hom_tau_dim_a2(a2):
    e1, e2 = parse_string(a2, "e(1)"), parse_string(a2, "e(2)")
    assert hom_tau_dim(a2, e1, e2) == 1
    assert hom_tau_dim(a2, e2, e1) == 0


def test_every_a3_string_is_tau_rigid(a3):
    for w in enumerate_strings(a3, 0):
        assert hom_tau_dim(a3, w, w) == 0


def test_hom_tau_into_translate_a3(a3):
    a, b = parse_string(a3, "a"), parse_string(a3, "b")
    assert hom_tau_dim(a3, a, b) == 1
    assert hom_tau_dim(a3, b, a) == 0


def test_kisses_need_positive_flanks(fa2, a2):
    a = cohook_completion(fa2, parse_string(a2, "a"))
    assert kisses(a, a) == []


def test_kiss_as_graph_map(fa2, a2):
    e1, e2 = parse_string(a2, "e(1)"), parse_string(a2, "e(2)")
    k = kisses(cohook_completion(fa2, e1), cohook_completion(fa2, e2))[0]
    pair = kiss_to_graph_map(fa2, k, e1, e2)
    assert pair.quotient.interval == Interval(0, 0)
    assert pair.submodule.interval == Interval(0, 0)
    assert format_string(pair.submodule.owner) == "e(1)"
    with pytest.raises(YIsProjective):
        kiss_to_graph_map(fa2, k, e2, e1)
