"""Universal upper bounds on the thermal dynamic QFI and their ordering.

The chain, for a Gibbs probe with Hamiltonian H, generator h and
C = i[H, h]:

    F <= beta^2 Var[C]        <= beta^2 ||C||^2 / 4  <= beta^2 t^2 ||H||^2 ||dH/dlambda||^2 / 4
    F <= sum_i 4 p_i Var[h]_i <= 4 Var[C] / gap^2    <= ||C||^2 / gap^2

where the seminorm ||.|| is the spectral width and gap is the minimum
nonzero level spacing of H. BoundReport evaluates every member and
certifies the ordering within a 1e-9 relative slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .encoding import (
    ExplicitGenerator,
    HamiltonianFamily,
    NumericUnitary,
    as_operator,
    transformed_generator,
)
from .operators import commutator_i, require_hermitian, seminorm
from .qfi import QfiReport, qfi_report
from .thermal import GibbsState

ORDERING_RTOL = 1e-9
GAP_DEGENERACY_RTOL = 1e-9


class UnsupportedEncodingError(TypeError):
    """The requested bound needs data this encoding variant does not carry."""


def _thermal_variance(rho0: GibbsState, op: np.ndarray) -> float:
    """Var[op] against the Gibbs probe, evaluated in the probe eigenbasis."""
    v = rho0.eigenvectors
    p = rho0.probabilities
    ot = v.conj().T @ op @ v
    mean = math.fsum((p * np.real(np.diag(ot))).tolist())
    second = math.fsum((p[:, None] * np.abs(ot) ** 2).ravel().tolist())
    return second - mean * mean


def _convexity_sum(rho0: GibbsState, hm: np.ndarray) -> float:
    """sum_i 4 p_i Var[h]_i over the probe eigenstates."""
    v = rho0.eigenvectors
    p = rho0.probabilities
    ht = v.conj().T @ hm @ v
    var_i = (np.abs(ht) ** 2).sum(axis=1) - np.real(np.diag(ht)) ** 2
    return math.fsum((4.0 * p * var_i).tolist())


def _probe_commutator(rho0: GibbsState, h) -> np.ndarray:
    return commutator_i(rho0.hamiltonian, require_hermitian(as_operator(h), "generator"))


def noncommutativity(hamiltonian, h) -> float:
    """c = ||i[H, h]||; zero exactly when the encoding commutes with H."""
    return seminorm(commutator_i(hamiltonian, as_operator(h)))


def variance_bound(rho0: GibbsState, h) -> float:
    """beta^2 Var[i[H, h]] against the probe; the tightest universal bound."""
    return rho0.beta**2 * _thermal_variance(rho0, _probe_commutator(rho0, h))


def seminorm_bound(rho0: GibbsState, h) -> float:
    """beta^2 ||i[H, h]||^2 / 4; dominates the variance bound."""
    return rho0.beta**2 * seminorm(_probe_commutator(rho0, h)) ** 2 / 4.0


def product_bound(hamiltonian, dh_dlambda, beta: float, t: float) -> float:
    """beta^2 t^2 ||H||^2 ||dH/dlambda||^2 / 4, the fully factorized ceiling."""
    return (
        float(beta) ** 2
        * float(t) ** 2
        * seminorm(hamiltonian) ** 2
        * seminorm(dh_dlambda) ** 2
        / 4.0
    )


def scheme_product_bound(rho0: GibbsState, scheme) -> float:
    """Product bound for an encoding scheme; the probe Hamiltonian supplies ||H||."""
    if isinstance(scheme, ExplicitGenerator):
        return product_bound(rho0.hamiltonian, scheme.generator, rho0.beta, scheme.t)
    if isinstance(scheme, HamiltonianFamily):
        return product_bound(rho0.hamiltonian, scheme.dh_dlambda, rho0.beta, scheme.t)
    if isinstance(scheme, NumericUnitary):
        raise UnsupportedEncodingError(
            "numeric-unitary encodings expose no dH/dlambda; the product bound is undefined"
        )
    raise TypeError(f"unknown encoding scheme type: {type(scheme).__name__}")


def minimum_gap(eigenvalues, threshold: float) -> float:
    """Smallest pairwise level spacing exceeding the degeneracy threshold."""
    e = np.asarray(eigenvalues, dtype=float)
    gaps = np.abs(e[:, None] - e[None, :])
    above = gaps[gaps > threshold]
    if above.size == 0:
        raise ValueError("spectrum is fully degenerate; no nonzero gap exists")
    return float(above.min())


class GapBounds(NamedTuple):
    convexity_bound: float
    gap_variance_bound: float
    gap_seminorm_bound: float
    min_gap: float


def gap_bounds(rho0: GibbsState, h) -> GapBounds:
    """The low-temperature chain: convexity sum, 4 Var[C]/gap^2, ||C||^2/gap^2.

    The gap treats spacings below 1e-9 * ||H|| as degenerate; a fully
    degenerate probe Hamiltonian has no usable gap and raises.
    """
    hm = require_hermitian(as_operator(h), "generator")
    comm = commutator_i(rho0.hamiltonian, hm)
    gap = minimum_gap(rho0.eigenvalues, GAP_DEGENERACY_RTOL * seminorm(rho0.hamiltonian))
    return GapBounds(
        convexity_bound=_convexity_sum(rho0, hm),
        gap_variance_bound=4.0 * _thermal_variance(rho0, comm) / gap**2,
        gap_seminorm_bound=seminorm(comm) ** 2 / gap**2,
        min_gap=gap,
    )


@dataclass(frozen=True)
class BoundReport:
    """The QFI next to every bound, with the ordering certificate."""

    f: float
    variance_bound: float
    seminorm_bound: float
    product_bound: float | None
    convexity_bound: float
    gap_variance_bound: float
    gap_seminorm_bound: float
    min_gap: float
    noncommutativity: float
    ordering_ok: bool


def _below(x: float, y: float) -> bool:
    return x <= y + ORDERING_RTOL * max(1.0, abs(y))


def bound_report(rho0: GibbsState, scheme, h=None, qfi_result: QfiReport | None = None) -> BoundReport:
    """Evaluate every bound for a probe plus encoding and certify the chain.

    The product bound is left out (None) for encodings that do not expose
    a Hamiltonian derivative. Bounds are reported even when vacuous; the
    certificate only checks the one-sided orderings.
    """
    if h is None:
        h = transformed_generator(scheme)
    if qfi_result is None:
        qfi_result = qfi_report(rho0, h)
    hm = require_hermitian(as_operator(h), "generator")
    comm = commutator_i(rho0.hamiltonian, hm)
    beta = rho0.beta
    var_c = _thermal_variance(rho0, comm)
    width = seminorm(comm)
    v_bound = beta**2 * var_c
    s_bound = beta**2 * width**2 / 4.0
    try:
        p_bound = scheme_product_bound(rho0, scheme)
    except UnsupportedEncodingError:
        p_bound = None
    gap = minimum_gap(rho0.eigenvalues, GAP_DEGENERACY_RTOL * seminorm(rho0.hamiltonian))
    convexity = _convexity_sum(rho0, hm)
    gap_var = 4.0 * var_c / gap**2
    gap_semi = width**2 / gap**2
    f = qfi_result.f_general
    ordering_ok = (
        _below(f, v_bound)
        and _below(f, s_bound)
        and (p_bound is None or _below(f, p_bound))
        and _below(f, convexity)
        and _below(f, gap_var)
        and _below(f, gap_semi)
        and _below(v_bound, s_bound)
        and (p_bound is None or _below(s_bound, p_bound))
        and _below(convexity, gap_var)
        and _below(gap_var, gap_semi)
    )
    return BoundReport(
        f=f,
        variance_bound=v_bound,
        seminorm_bound=s_bound,
        product_bound=p_bound,
        convexity_bound=convexity,
        gap_variance_bound=gap_var,
        gap_seminorm_bound=gap_semi,
        min_gap=gap,
        noncommutativity=width,
        ordering_ok=ordering_ok,
    )
