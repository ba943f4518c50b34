from __future__ import annotations

import math

import numpy as np
import pytest

from core.errors import NonFiniteStateError, ParameterDomainError
from model.equations import (
    FieldKind,
    SeparableForm,
    ZieglerField,
    full_rhs,
    inertia_and_force,
    perturbed_rhs,
    reduced_rhs,
    rescaled_rhs,
    separable_potential,
    separable_rhs,
    symmetric_perturbation,
)
from model.params import reference_params
from model.states import FullState, ReducedState
from tests.unit._ziegler_fixtures import (
    random_full_states,
    random_reduced_states,
    reduced_reference_params,
    separable_params,
    unit_params,
)


def test_inertia_and_force_unit_case() -> None:
    terms = inertia_and_force(unit_params(), FullState(0.0, 0.3, 0.0, 0.0))
    assert (terms.a11, terms.a12, terms.a21, terms.a22) == (2.0, 2.0, 2.0, 5.0)
    assert (terms.r1, terms.r2) == (0.0, 0.0)


def test_inertia_and_force_reference_case_at_quarter_turn() -> None:
    terms = inertia_and_force(reference_params(), FullState(math.pi / 2, 0.0, 0.0, 1.0))
    assert terms.a11 == pytest.approx(2.5, abs=1e-15)
    assert terms.a12 == pytest.approx(2.5, abs=1e-15)
    assert terms.a22 == pytest.approx(6.0, abs=1e-15)
    assert terms.r1 == pytest.approx(-math.pi / 2 + 0.5, abs=1e-15)
    assert terms.r2 == pytest.approx(-2.0, abs=1e-15)


def test_lever_choice_changes_only_follower_term() -> None:
    p = reference_params(l1=0.5, l2=2.0)
    s = FullState(0.7, 0.0, 0.0, 0.0)
    l1_terms = inertia_and_force(p, s)
    l2_terms = inertia_and_force(p.with_updates(follower_lever="L2"), s)
    assert l1_terms.r1 == l2_terms.r1
    assert l1_terms.r2 == pytest.approx(-p.F * 0.5 * math.sin(0.7))
    assert l2_terms.r2 == pytest.approx(-p.F * 2.0 * math.sin(0.7))


def test_inertia_symmetric_and_a11_constant() -> None:
    p = reference_params()
    first = inertia_and_force(p, FullState(0.1, 0.0, 0.3, -0.2))
    second = inertia_and_force(p, FullState(2.9, 1.0, 0.3, -0.2))
    assert first.a12 == first.a21
    assert first.a11 == second.a11
    assert np.array_equal(first.matrix(), first.matrix().T)


def test_inertia_and_force_rejects_non_finite() -> None:
    bad = FullState.__new__(FullState)
    object.__setattr__(bad, "phi1", math.nan)
    object.__setattr__(bad, "phi2", 0.0)
    object.__setattr__(bad, "v1", 0.0)
    object.__setattr__(bad, "v2", 0.0)
    with pytest.raises(NonFiniteStateError):
        inertia_and_force(reference_params(), bad)


def test_coefficients_match_symbolic_lagrangian() -> None:
    sympy = pytest.importorskip("sympy")
    phi1, phi2, v1, v2 = sympy.symbols("phi1 phi2 v1 v2", real=True)
    m1, m2, m3, l1, l2, l3, k1, k2, force = sympy.symbols("m1 m2 m3 l1 l2 l3 k1 k2 F", positive=True)

    hub = sympy.Matrix([l2 * sympy.cos(phi2), l2 * sympy.sin(phi2)])
    lever = sympy.Matrix([sympy.cos(phi1 + phi2), sympy.sin(phi1 + phi2)])
    positions = {m1: hub + l1 * lever, m2: hub, m3: hub - l3 * lever}
    coords = sympy.Matrix([phi1, phi2])
    rates = sympy.Matrix([v1, v2])
    kinetic = sum(
        (mass * ((pos.jacobian(coords) * rates).T * (pos.jacobian(coords) * rates))[0] / 2)
        for mass, pos in positions.items()
    )
    potential = (k1 * phi1**2 + k2 * phi2**2) / 2
    generalized = [0, -force * l1 * sympy.sin(phi1)]

    inertia = sympy.hessian(kinetic, (v1, v2))
    forces = []
    for i, q in enumerate((phi1, phi2)):
        momentum = sympy.diff(kinetic, (v1, v2)[i])
        transport = sum(sympy.diff(momentum, c) * r for c, r in zip((phi1, phi2), (v1, v2), strict=True))
        forces.append(generalized[i] - sympy.diff(potential, q) + sympy.diff(kinetic, q) - transport)

    symbols = (phi1, phi2, v1, v2, m1, m2, m3, l1, l2, l3, k1, k2, force)
    evaluate = sympy.lambdify(symbols, [inertia[0, 0], inertia[0, 1], inertia[1, 1], *forces], "math")

    p = reference_params()
    for s in random_full_states(seed=7, count=25):
        expected = evaluate(s.phi1, s.phi2, s.v1, s.v2, p.m1, p.m2, p.m3, p.l1, p.l2, p.l3, p.k1, p.k2, p.F)
        terms = inertia_and_force(p, s)
        actual = (terms.a11, terms.a12, terms.a22, terms.r1, terms.r2)
        assert actual == pytest.approx(tuple(float(value) for value in expected), rel=1e-12, abs=1e-12)


def test_full_rhs_equilibrium_at_origin() -> None:
    p = reference_params(k1=2.0, k2=2.0, F=-3.0)
    assert full_rhs(p, FullState(0.0, 0.0, 0.0, 0.0)) == FullState(0.0, 0.0, 0.0, 0.0)
    derivative = full_rhs(unit_params(F=5.0), FullState(0.0, 1.2, 0.0, 0.0))
    assert (derivative.v1, derivative.v2) == (0.0, 0.0)


def test_full_rhs_solves_lagrange_system() -> None:
    p = reference_params()
    for s in random_full_states(seed=3, count=20):
        derivative = full_rhs(p, s)
        terms = inertia_and_force(p, s)
        residual = terms.matrix() @ np.array([derivative.v1, derivative.v2]) - terms.forces()
        assert np.max(np.abs(residual)) < 1e-12
        assert (derivative.phi1, derivative.phi2) == (s.v1, s.v2)


def test_full_rhs_phi2_shift_invariant_when_k2_zero() -> None:
    p = reduced_reference_params()
    for s in random_full_states(seed=5, count=20):
        shifted = FullState(s.phi1, s.phi2 + 4.321, s.v1, s.v2)
        assert full_rhs(p, shifted) == full_rhs(p, s)


def test_reduced_rhs_requires_k2_zero() -> None:
    with pytest.raises(ParameterDomainError, match="reduction invalid"):
        reduced_rhs(reference_params(), ReducedState(0.1, 0.0, 0.0))


@pytest.mark.parametrize("v2", [0.0, -3.0, 12.5])
def test_reduced_rhs_vanishes_on_invariant_axis(v2: float) -> None:
    assert reduced_rhs(reduced_reference_params(), ReducedState(0.0, 0.0, v2)) == ReducedState(0.0, 0.0, 0.0)


def test_reduced_rhs_is_projection_of_full_rhs() -> None:
    p = reduced_reference_params()
    reduced = reduced_rhs(p, ReducedState(0.3, 0.0, 0.0))
    full = full_rhs(p, FullState(0.3, 2.0, 0.0, 0.0))
    assert reduced.phi1 == full.phi1
    assert reduced.v1 == pytest.approx(full.v1, abs=1e-12)
    assert reduced.v2 == pytest.approx(full.v2, abs=1e-12)
    for s in random_reduced_states(seed=11, count=50):
        reduced = reduced_rhs(p, s)
        full = full_rhs(p, s.lifted(0.9))
        assert reduced.v1 == pytest.approx(full.v1, rel=1e-12, abs=1e-12)
        assert reduced.v2 == pytest.approx(full.v2, rel=1e-12, abs=1e-12)


def test_reduced_rhs_reversibility() -> None:
    p = reduced_reference_params()
    for s in random_reduced_states(seed=13, count=50):
        forward = reduced_rhs(p, s)
        mirrored = reduced_rhs(p, s.reflected())
        assert mirrored.phi1 == forward.phi1
        assert mirrored.v1 == pytest.approx(-forward.v1, rel=1e-12, abs=1e-14)
        assert mirrored.v2 == pytest.approx(-forward.v2, rel=1e-12, abs=1e-14)


def test_separable_derived_form_matches_reduced_rhs() -> None:
    p = separable_params()
    for s in random_reduced_states(seed=17, count=100):
        separable = separable_rhs(p, s)
        reduced = reduced_rhs(p, s)
        assert separable.v1 == pytest.approx(reduced.v1, rel=1e-10, abs=1e-10)
        assert separable.v2 == pytest.approx(reduced.v2, rel=1e-10, abs=1e-10)


def test_separable_printed_form_differs_by_spring_term() -> None:
    p = separable_params(k1=1.5)
    s = ReducedState(0.4, 0.2, -0.1)
    printed = separable_rhs(p, s, SeparableForm.PRINTED)
    derived = separable_rhs(p, s, SeparableForm.DERIVED)
    gap = p.k1 * s.phi1 / p.inertia_sum
    assert printed.v1 - derived.v1 == pytest.approx(gap)
    expected = (p.F * p.l1 * math.sin(0.4) - p.k1 * 0.4) / (p.total_mass * p.l2**2)
    assert printed.v1 == pytest.approx(expected)
    assert printed.v2 == pytest.approx(-printed.v1 - gap)
    no_spring = separable_params(k1=0.0)
    assert separable_rhs(no_spring, s, SeparableForm.PRINTED) == separable_rhs(no_spring, s)


def test_separable_rhs_edge_cases() -> None:
    p = separable_params()
    assert separable_rhs(p, ReducedState(0.0, 0.7, -0.3)).v1 == 0.0
    linear = separable_params(k1=0.0, F=-2.0)
    phi = 1e-4
    slope = linear.F * linear.l1 / (linear.total_mass * linear.l2**2)
    assert separable_rhs(linear, ReducedState(phi, 0.0, 0.0)).v1 == pytest.approx(slope * phi, rel=1e-7)
    assert slope < 0.0


def test_separable_rhs_rejects_non_separable_params() -> None:
    with pytest.raises(ParameterDomainError, match="m1\\*l1 == m3\\*l3"):
        separable_rhs(reduced_reference_params(), ReducedState(0.1, 0.0, 0.0))


def test_separable_potential_generates_phi1_acceleration() -> None:
    p = separable_params(k1=0.8, F=1.7)
    h = 1e-6
    for form in SeparableForm:
        assert separable_potential(p, 0.0, form) == 0.0
        for phi in (-1.1, 0.3, 2.0):
            slope = (separable_potential(p, phi + h, form) - separable_potential(p, phi - h, form)) / (2 * h)
            assert -slope == pytest.approx(separable_rhs(p, ReducedState(phi, 0.0, 0.0), form).v1, abs=1e-8)


def test_perturbed_rhs_contract() -> None:
    p = reduced_reference_params(F=0.0)
    s = ReducedState(0.3, -0.4, 0.8)
    assert perturbed_rhs(p, s, 0.0) == reduced_rhs(p, s)
    on_plane = ReducedState(0.0, 0.5, -0.2)
    assert perturbed_rhs(p, on_plane, 0.5) == reduced_rhs(p, on_plane)
    rng = np.random.default_rng(19)
    for phi1, v1, v2 in rng.uniform(-3.0, 3.0, size=(1000, 3)):
        plus = symmetric_perturbation(0.2, phi1, v1, v2)
        minus = symmetric_perturbation(0.2, -phi1, v1, v2)
        assert plus[0] + minus[0] == 0.0
        assert plus[1] + minus[1] == 0.0


def test_perturbed_rhs_requires_zero_force() -> None:
    with pytest.raises(ParameterDomainError, match="F == 0"):
        perturbed_rhs(reduced_reference_params(), ReducedState(0.1, 0.0, 0.0), 0.01)


def test_rescaled_rhs_is_density_times_full_rhs() -> None:
    p = reference_params()
    field = ZieglerField(p, FieldKind.RESCALED)
    assert rescaled_rhs(p, FullState(0.0, 0.0, 0.0, 0.0)) == FullState(0.0, 0.0, 0.0, 0.0)
    for s in random_full_states(seed=23, count=50):
        density = field.density(s.phi1)
        assert density == pytest.approx(p.inertia_determinant(s.phi1), rel=1e-14)
        scaled = rescaled_rhs(p, s).to_array()
        plain = full_rhs(p, s).to_array()
        assert scaled == pytest.approx(density * plain, rel=1e-10, abs=1e-12)


def test_density_at_origin_for_reference_params() -> None:
    assert ZieglerField(reference_params(), FieldKind.RESCALED).density(0.0) == pytest.approx(8.5)


def test_field_kinds_have_matching_layouts() -> None:
    assert ZieglerField(reference_params()).dimension == 4
    assert ZieglerField(reduced_reference_params(), FieldKind.REDUCED).dimension == 3
    with pytest.raises(ParameterDomainError):
        ZieglerField(reduced_reference_params(F=0.0), FieldKind.PERTURBED, alpha=math.inf)
