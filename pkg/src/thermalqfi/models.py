"""Scenario builders for the three reference encodings.

Every model uses the thermal J_z probe exp(-beta J_z)/Z. The linear and
twisting schemes carry explicit generators; the collective-spin family
H(lambda) = J_x^2 + lambda J_z goes through the spectral-kernel route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .closed_forms import (
    linear_qfi_closed,
    linear_variance_closed,
    oat_qfi_closed,
    oat_variance_closed,
)
from .encoding import (
    ExplicitGenerator,
    HamiltonianFamily,
    TransformedLocalGenerator,
    transformed_generator,
)
from .spin import check_twice_j, spin_operators
from .thermal import GibbsState, gibbs_state

MODELS = ("linear", "oat", "lmg")
AXES = ("x", "y", "z")


@dataclass(frozen=True, eq=False)
class Scenario:
    """A fully specified probe plus encoding, ready for QFI and bound evaluation."""

    model: str
    twice_j: int
    beta: float
    t: float
    axis: str | None
    lam: float | None
    probe: GibbsState
    scheme: object
    h: TransformedLocalGenerator


def _symmetrized_square(a: np.ndarray) -> np.ndarray:
    x = a @ a
    return 0.5 * (x + x.conj().T)


def lmg_hamiltonian(twice_j, lam: float) -> np.ndarray:
    """Collective-spin encoding Hamiltonian J_x^2 + lambda J_z."""
    jx, _, jz = spin_operators(twice_j)
    return _symmetrized_square(jx) + float(lam) * jz


def linear_scenario(twice_j, beta, t, axis: str = "x") -> Scenario:
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    jx, jy, jz = spin_operators(twice_j)
    generator = {"x": jx, "y": jy, "z": jz}[axis]
    probe = gibbs_state(jz, beta)
    scheme = ExplicitGenerator(generator, t)
    return Scenario(
        model="linear",
        twice_j=check_twice_j(twice_j),
        beta=float(beta),
        t=float(t),
        axis=axis,
        lam=None,
        probe=probe,
        scheme=scheme,
        h=transformed_generator(scheme),
    )


def oat_scenario(twice_j, beta, t) -> Scenario:
    jx, _, jz = spin_operators(twice_j)
    probe = gibbs_state(jz, beta)
    scheme = ExplicitGenerator(_symmetrized_square(jx), t)
    return Scenario(
        model="oat",
        twice_j=check_twice_j(twice_j),
        beta=float(beta),
        t=float(t),
        axis=None,
        lam=None,
        probe=probe,
        scheme=scheme,
        h=transformed_generator(scheme),
    )


def lmg_scenario(twice_j, beta, t, lam) -> Scenario:
    jx, _, jz = spin_operators(twice_j)
    jx2 = _symmetrized_square(jx)
    probe = gibbs_state(jz, beta)
    scheme = HamiltonianFamily(
        hamiltonian=lambda value: jx2 + value * jz,
        dh_dlambda=jz,
        lam=float(lam),
        t=float(t),
    )
    return Scenario(
        model="lmg",
        twice_j=check_twice_j(twice_j),
        beta=float(beta),
        t=float(t),
        axis=None,
        lam=float(lam),
        probe=probe,
        scheme=scheme,
        h=transformed_generator(scheme),
    )


def build_scenario(model: str, twice_j, beta, t, axis: str = "x", lam=None) -> Scenario:
    if model == "linear":
        return linear_scenario(twice_j, beta, t, axis=axis)
    if model == "oat":
        return oat_scenario(twice_j, beta, t)
    if model == "lmg":
        if lam is None:
            raise ValueError("the lmg model requires lambda")
        return lmg_scenario(twice_j, beta, t, lam)
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def closed_qfi(scenario: Scenario) -> float | None:
    """Analytic QFI where one exists: linear along x, and the twisting model."""
    if scenario.model == "linear" and scenario.axis == "x":
        return linear_qfi_closed(scenario.twice_j, scenario.beta, scenario.t)
    if scenario.model == "oat":
        return oat_qfi_closed(scenario.twice_j, scenario.beta, scenario.t)
    return None


def closed_variance(scenario: Scenario) -> float | None:
    """Analytic variance bound where one exists (same coverage as closed_qfi)."""
    if scenario.model == "linear" and scenario.axis == "x":
        return linear_variance_closed(scenario.twice_j, scenario.beta, scenario.t)
    if scenario.model == "oat":
        return oat_variance_closed(scenario.twice_j, scenario.beta, scenario.t)
    return None
