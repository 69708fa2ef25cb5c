import pytest

from core.bound_quiver import NotGentle, validate_gentle
from core.fringe import FringeNameCollision, FringedAlgebra, arrow_census, fringe
from core.quiver_loader import parse_quiver


def relation_set(q):
    return {str(r) for r in q.relations}


def test_a2_fringe(fa2):
    assert len(fa2.hat.arrows) == 7
    assert len(fa2.fringe_vertices) == 6
    assert fa2.sink_fringe_vertices() == ["1.out1", "1.out2", "2.out1"]
    assert fa2.source_fringe_vertices() == ["1.in1", "2.in1", "2.in2"]
    assert relation_set(fa2.hat) == {"1.fo2 1.fi1", "1.fo1 a", "a 2.fi1", "2.fo1 2.fi2"}


def test_square_fringe_has_eight_relations(sq33):
    f = fringe(sq33)
    assert len(f.hat.arrows) == 12
    assert len(f.hat.relations) == 8
    assert relation_set(sq33) <= relation_set(f.hat)
    assert relation_set(f.hat) - relation_set(sq33) == {
        "1.fo1 1.fi1",
        "2.fo2 a1",
        "2.fo1 b2",
        "b1 3.fi1",
        "a2 3.fi2",
        "4.fo1 4.fi1",
    }


def test_every_base_vertex_is_two_in_two_out(any_quiver):
    f = fringe(any_quiver)
    for v in any_quiver.vertices:
        assert len(f.hat.incoming(v)) == 2
        assert len(f.hat.outgoing(v)) == 2
    for v in f.fringe_vertices:
        assert len(f.hat.incoming(v)) + len(f.hat.outgoing(v)) == 1
    assert validate_gentle(f.hat).is_gentle


def test_arrow_census(any_quiver):
    census = arrow_census(fringe(any_quiver))
    assert census.holds
    assert census.hat_arrows == census.expected


def test_restricted_recovers_base(any_quiver):
    f = fringe(any_quiver)
    assert f.restricted() == any_quiver


def test_fringe_is_cached(a2):
    assert fringe(a2) is fringe(a2)


def test_name_collision():
    q = parse_quiver("algebra c\nvertices: 1 1.in1\n")
    with pytest.raises(FringeNameCollision):
        FringedAlgebra(q)


def test_non_gentle_input():
    q = parse_quiver("algebra t\nvertices: 1 2 3 4\narrow a: 1 -> 4\narrow b: 2 -> 4\narrow c: 3 -> 4\n")
    with pytest.raises(NotGentle):
        FringedAlgebra(q)


def test_print_fringe_info(fa2, capsys):
    fa2.print_fringe_info()
    out = capsys.readouterr().out
    assert "=== Fringed Quiver ===" in out
    assert "Sink fringe vertices: 3" in out
    assert "✓ Arrow census: 7 = 7" in out
