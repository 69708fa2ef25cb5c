from fractions import Fraction

import numpy as np
import pytest

from core.ar_translate import projective_string, tau
from core.fringe import fringe
from core.hom_kiss import hom_basis
from core.oracle import (
    OracleError,
    Representation,
    _check_relations,
    cover_defect,
    cross_check,
    ext1_dim_linear,
    hom_dim_linear,
    hom_space,
    injective_rep,
    nullspace,
    projective_presentation,
    projective_rep,
    rank,
    rep_of_string,
    surjection_exists,
    tau_linear,
)
from core.strings import dimension_vector, enumerate_strings, parse_string
from core.tau_tilting import maximal_collections


def frac_matrix(rows):
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def rep(q, literal):
    return rep_of_string(q, parse_string(q, literal))


def test_exact_rank_and_nullspace():
    m = frac_matrix([[1, 2], [2, 4]])
    assert rank(m) == 1
    kernel = nullspace(m, 2)
    assert kernel.shape == (2, 1)
    assert all(x == 0 for x in np.dot(m, kernel).flat)
    assert rank(frac_matrix([[Fraction(1, 3), 1], [1, 3]])) == 1


def test_string_representation(ex22):
    r = rep(ex22, "a2 b1^- a1^- b2")
    assert r.dimension_vector() == {"1": 1, "2": 1, "3": 2, "4": 1}
    assert r.maps["a2"].shape == (2, 1)
    assert r.maps["b2"].shape == (1, 2)
    assert sum(int(x) for m in r.maps.values() for x in m.flat) == 4


def test_dimension_vectors_match(any_quiver):
    for w in enumerate_strings(any_quiver, 3):
        assert rep_of_string(any_quiver, w).dimension_vector() == dimension_vector(any_quiver, w)


def test_broken_relation_is_reported(gls):
    a = frac_matrix([[0, 1], [1, 0]])
    r = Representation(gls, {"1": 2, "2": 0}, {"a": a, "b": frac_matrix([[], []]).reshape(2, 0)})
    with pytest.raises(OracleError):
        _check_relations(r)


def test_simple_endomorphisms(a2):
    s = rep(a2, "e(1)")
    assert hom_dim_linear(a2, s, s) == 1
    assert len(hom_space(a2, s, s)) == 1


def test_projective_endomorphisms_of_loop_algebra(gls):
    p1 = projective_rep(gls, "1")
    assert p1.dimension_vector() == {"1": 2}
    assert hom_dim_linear(gls, p1, p1) == 2
    assert hom_dim_linear(gls, rep_of_string(gls, projective_string(gls, "1")), p1) == 2


def test_injective_dimensions(a2):
    assert injective_rep(a2, "1").dimension_vector() == {"1": 1, "2": 1}
    assert injective_rep(a2, "2").dimension_vector() == {"2": 1}


def test_presentation_of_simple_at_source(a2):
    presentation = projective_presentation(a2, rep(a2, "e(2)"))
    assert presentation.p0 == ["2"]
    assert presentation.p1 == ["1"]
    assert presentation.syzygy.dimension_vector() == {"1": 1}


def test_presentation_of_projective(a3):
    presentation = projective_presentation(a3, rep(a3, "a b"))
    assert presentation.p0 == ["3"]
    assert presentation.p1 == []


def test_presentations_are_minimal_covers(finite_quiver):
    for w in enumerate_strings(finite_quiver, 0):
        m = rep_of_string(finite_quiver, w)
        presentation = projective_presentation(finite_quiver, m)
        p0_dims = {}
        for head in presentation.p0:
            for v, d in projective_rep(finite_quiver, head).dims.items():
                p0_dims[v] = p0_dims.get(v, 0) + d
        for v in finite_quiver.vertices:
            assert p0_dims.get(v, 0) - presentation.syzygy.dims[v] == m.dims[v]


def test_cover_defect_finds_redundant_and_missing_tops(a2):
    m = rep(a2, "e(2)")
    top = np.array([Fraction(1)], dtype=object)
    assert cover_defect(a2, m, ["2"], [top]) is None
    assert cover_defect(a2, m, ["2", "2"], [top, top]) == "2"
    assert cover_defect(a2, m, [], []) == "2"


def test_linear_translate(a2, a3):
    assert tau_linear(a2, rep(a2, "e(2)")).dimension_vector() == {"1": 1}
    assert tau_linear(a2, rep(a2, "a")).is_zero
    assert tau_linear(a3, rep(a3, "b")).dimension_vector() == {"1": 1, "2": 1}


@pytest.mark.parametrize("name", ["a2", "a3", "sq33", "gls"])
def test_linear_translate_matches_strings(corpus, name):
    q = corpus(name)
    for w in enumerate_strings(q, 3):
        combinatorial = tau(q, w)
        linear = tau_linear(q, rep_of_string(q, w)).dimension_vector()
        expected = {} if combinatorial.is_zero else dimension_vector(q, combinatorial.value)
        assert linear == expected


def test_linear_ext(a2, a3):
    e1, e2 = rep(a2, "e(1)"), rep(a2, "e(2)")
    assert ext1_dim_linear(a2, e2, e1) == 1
    assert ext1_dim_linear(a2, e1, e2) == 0
    assert ext1_dim_linear(a3, rep(a3, "b"), rep(a3, "a")) == 1


def test_graph_maps_span_hom(gls):
    strings = enumerate_strings(gls, 0)
    for x in strings:
        for y in strings:
            assert len(hom_basis(gls, x, y)) == hom_dim_linear(
                gls, rep_of_string(gls, x), rep_of_string(gls, y)
            )


def test_surjections(a2):
    a = rep(a2, "a")
    assert surjection_exists(a2, [a], rep(a2, "e(2)"))
    assert not surjection_exists(a2, [a], rep(a2, "e(1)"))
    assert surjection_exists(a2, [rep(a2, "e(1)"), a], rep(a2, "e(1)"))


def test_cross_check_passes(finite_quiver):
    collections = maximal_collections(finite_quiver, fringe(finite_quiver))
    rows = cross_check(finite_quiver, 4, fac_collections=collections)
    assert [r.name for r in rows] == ["hom", "kiss", "ext", "tau", "fac"]
    for row in rows:
        assert row.checked > 0
        assert row.passed, row.failures


def test_cross_check_with_bands(ex22):
    rows = {r.name: r for r in cross_check(ex22, 3)}
    assert rows['fac'].checked == 0
    for name in ("hom", "kiss", "ext", "tau"):
        assert rows[name].checked > 0
        assert rows[name].passed, rows[name].failures


def test_cross_check_in_worker_processes(a2):
    serial = cross_check(a2, 1)
    parallel = cross_check(a2, 1, jobs=2)
    assert [(r.name, r.checked, r.failures) for r in parallel] == [
        (r.name, r.checked, r.failures) for r in serial
    ]
