"""Bracket and Jones state sums, checked against the exhaustive oracle."""

import pytest

from conftest import FIG8_JONES, TREFOIL_JONES, UNKNOT_JONES
from oracles import oracle_bracket, oracle_jones, oracle_writhe

from knotfield.errors import KnotfieldError
from knotfield.diagram import (
    Crossing,
    PlanarDiagram,
    bracket,
    evaluate_jones,
    from_xcode,
    jones,
    jones_in_t,
    to_diagram,
)
from knotfield.laurent import LaurentPolynomial
from knotfield.mosaic import Mosaic


def test_unknot_jones_is_one():
    d = PlanarDiagram((), 0, 1, 1)
    assert jones(d) == UNKNOT_JONES


def test_kink_brackets():
    # One crossing with each edge joined to itself: <kink+-> = -A^(+-3).
    pos = PlanarDiagram((Crossing((1, 1, 2, 2), 3),), 2, 0, 1)
    assert pos.writhe == 1
    assert bracket(pos) == LaurentPolynomial({3: -1})
    assert jones(pos) == UNKNOT_JONES  # writhe normalization removes the kink
    neg = PlanarDiagram((Crossing((1, 2, 2, 1), 1),), 2, 0, 1)
    assert neg.writhe == -1
    assert bracket(neg) == LaurentPolynomial({-3: -1})
    assert jones(neg) == UNKNOT_JONES


def test_trefoil_fixture_jones(trefoil):
    assert jones(to_diagram(trefoil)) == TREFOIL_JONES


def test_fig8_fixture_jones(fig8):
    v = jones(to_diagram(fig8))
    assert v == FIG8_JONES
    assert v == v.mirror()  # amphichiral


def test_granny_is_trefoil_squared(granny, trefoil):
    assert jones(to_diagram(granny)) == jones(to_diagram(trefoil)) ** 2


@pytest.mark.parametrize("name", ["trefoil", "fig8", "granny"])
def test_oracle_equivalence(name, request):
    d = to_diagram(request.getfixturevalue(name))
    assert len(d.crossings) <= 6
    assert dict(bracket(d).terms()) == oracle_bracket(d)
    assert dict(jones(d).terms()) == oracle_jones(d)
    assert d.writhe == oracle_writhe(d)


def test_mirror_negates_jones_exponents(trefoil):
    d = to_diagram(trefoil)
    assert jones(d.mirror()) == jones(d).mirror()


def test_jones_in_t_units(trefoil):
    vt = jones_in_t(jones(to_diagram(trefoil)))
    assert dict(vt.terms()) == {-4: -1, -3: 1, -1: 1}
    assert evaluate_jones(jones(to_diagram(trefoil)), -1.0) == pytest.approx(-3.0)


def test_half_integer_powers_rejected():
    # The Hopf link bracket lives in odd s-exponents; t-conversion must refuse.
    hopf = from_xcode([(1, 3, 2, 4), (3, 1, 4, 2)])
    with pytest.raises(KnotfieldError):
        jones_in_t(jones(hopf))


def test_crossing_cap():
    d = to_diagram(Mosaic(4, (0, 2, 1, 0, 2, 8, 9, 1, 3, 9, 10, 4, 0, 3, 4, 0)))
    with pytest.raises(KnotfieldError):
        bracket(d, cap=2)


def test_to_diagram_components(granny):
    d = to_diagram(granny)
    assert d.n_components == 1
    assert len(d.crossings) == 6
    d.check()
