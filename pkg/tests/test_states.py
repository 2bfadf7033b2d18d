"""State vectors, unitary move action, and diagonal orbit observables."""

import cmath
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import TREFOIL_JONES

from knotfield.errors import ContractViolationError, KnotfieldError
from knotfield.diagram import evaluate_jones, jones, to_diagram
from knotfield.mosaic import Mosaic, encode, random_mosaic
from knotfield.moves import default_table, instances_for, apply
from knotfield.states import (
    StateVector,
    act,
    chi,
    dim,
    inner,
    invariant_observable,
)

TABLE = default_table()
CIRCLE4 = Mosaic(4, (2, 1, 0, 0, 3, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0))


def test_dim_values():
    assert dim(1) == 11
    assert dim(2) == 14641
    assert dim(3) == 2357947691
    with pytest.raises(KnotfieldError):
        dim(0)


def test_vector_space_axioms(trefoil):
    a = StateVector.basis(trefoil)
    b = StateVector.basis(CIRCLE4)
    v = 0.6 * a + 0.8j * b
    assert v.amplitude(trefoil) == 0.6
    assert v.amplitude(CIRCLE4) == 0.8j
    assert (v - v) == StateVector.zero()
    assert v.norm() == pytest.approx(1.0)
    assert inner(a, b) == 0
    assert inner(v, v) == pytest.approx(1.0)
    # conjugate linearity in the first slot
    assert inner(1j * a, a) == pytest.approx(-1j)


def test_zero_amplitudes_dropped(trefoil):
    v = StateVector({encode(trefoil): 0.0})
    assert v == StateVector.zero()
    with pytest.raises(KnotfieldError):
        StateVector.zero().normalized()


def test_state_json_roundtrip(trefoil):
    v = 0.6 * StateVector.basis(trefoil) + 0.8j * StateVector.basis(CIRCLE4)
    assert StateVector.from_json(v.to_json()) == v


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=25, deadline=None)
def test_act_is_unitary(seed):
    rng = random.Random(seed)
    m1, m2 = random_mosaic(4, rng), random_mosaic(4, rng)
    amp = cmath.exp(1j * rng.uniform(0, 2 * cmath.pi))
    psi = amp * StateVector.basis(m1) + 0.5 * StateVector.basis(m2)
    g = rng.sample(instances_for(TABLE, 4), 5)
    out = act(g, psi)
    assert out.norm() == pytest.approx(psi.norm(), abs=1e-12)
    # applying the sequence reversed undoes it (each move is an involution)
    assert act(reversed(g), out) == psi


def test_act_applies_moves(trefoil):
    inst = next(i for i in instances_for(TABLE, 4)
                if apply(i, trefoil) != trefoil)
    out = act([inst], StateVector.basis(trefoil))
    assert out == StateVector.basis(apply(inst, trefoil))


def test_chi_projector(trefoil):
    proj = chi(trefoil, TABLE)
    t = StateVector.basis(trefoil)
    u = StateVector.basis(CIRCLE4)
    assert proj.apply(t) == t
    assert proj.apply(u) == StateVector.zero()
    assert proj.apply(proj.apply(t)) == proj.apply(t)  # idempotent
    psi = 0.6 * t + 0.8 * u
    assert proj.expectation(psi) == pytest.approx(0.36)


def test_chi_constant_on_whole_orbit(trefoil):
    proj = chi(trefoil, TABLE)
    (oid,) = proj.eigenvalue
    assert proj.orbit_sizes[oid] == 2
    for inst in instances_for(TABLE, 4):
        moved = apply(inst, trefoil)
        assert proj.eigenvalue_for(moved) == 1.0


def _v_minus1(m):
    return evaluate_jones(jones(to_diagram(m)), -1.0)


def test_invariant_observable_eigenvalues(trefoil):
    obs = invariant_observable(_v_minus1, 4, TABLE)
    assert obs.eigenvalue_for(CIRCLE4) == pytest.approx(1.0)
    assert obs.eigenvalue_for(trefoil) == pytest.approx(-3.0)
    assert abs(obs.eigenvalue_for(trefoil)) == pytest.approx(3.0)  # determinant


def test_invariant_observable_expectation(trefoil):
    obs = invariant_observable(_v_minus1, 4, TABLE)
    psi = (0.6 * StateVector.basis(trefoil) + 0.8 * StateVector.basis(CIRCLE4))
    assert obs.expectation(psi) == pytest.approx(0.36 * -3.0 + 0.64 * 1.0)


def test_non_invariant_rejected(trefoil):
    # Counting crossing tiles is not constant on orbits; the observable
    # must refuse it with two concrete witnesses.
    def fake_inv(m):
        return float(sum(1 for t in m.cells if t >= 9))

    obs = invariant_observable(fake_inv, 4, TABLE)
    with pytest.raises(ContractViolationError):
        obs.eigenvalue_for(CIRCLE4)


def test_wrong_lattice_size_rejected(trefoil):
    obs = invariant_observable(_v_minus1, 3, TABLE)
    with pytest.raises(KnotfieldError):
        obs.eigenvalue_for(trefoil)
