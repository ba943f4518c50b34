"""Energy and the angular-momentum integral."""

from __future__ import annotations

import math

from model.params import Params
from model.states import FullState


def kinetic_energy(p: Params, s: FullState) -> float:
    """T written per body: outer link tip, pivot mass, lever tip."""

    w = s.v1 + s.v2
    cross = s.v2 * w * math.cos(s.phi1)
    tip = s.v2**2 * p.l2**2 + w**2 * p.l1**2 + 2.0 * p.l1 * p.l2 * cross
    hub = s.v2**2 * p.l2**2
    lever = s.v2**2 * p.l2**2 + w**2 * p.l3**2 - 2.0 * p.l2 * p.l3 * cross
    return 0.5 * (p.m1 * tip + p.m2 * hub + p.m3 * lever)


def potential_energy(p: Params, s: FullState) -> float:
    return 0.5 * (p.k1 * s.phi1**2 + p.k2 * s.phi2**2)


def energy(p: Params, s: FullState) -> float:
    """H = T + Pi; conserved when F == 0."""

    return kinetic_energy(p, s) + potential_energy(p, s)


def momentum_integral(p: Params, s: FullState) -> float:
    """K = dT/d(phi2'); conserved when F == 0 and k2 == 0."""

    cos_phi = math.cos(s.phi1)
    w = s.v1 + s.v2
    lever_sweep = s.v1 + 2.0 * s.v2
    tip = 2.0 * s.v2 * p.l2**2 + 2.0 * w * p.l1**2 + 2.0 * p.l1 * p.l2 * cos_phi * lever_sweep
    lever = 2.0 * s.v2 * p.l2**2 + 2.0 * w * p.l3**2 - 2.0 * p.l2 * p.l3 * lever_sweep * cos_phi
    return 0.5 * p.m1 * tip + p.m2 * s.v2 * p.l2**2 + 0.5 * p.m3 * lever


__all__ = ["energy", "kinetic_energy", "momentum_integral", "potential_energy"]
