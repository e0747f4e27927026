"""Dynamic quantum Fisher information through three independent routes.

The general route sums probe-eigenstate variances against coherence pairs;
the thermal route rewrites everything through the commutator with the
probe Hamiltonian and a tanhc weight; the SLD route weights coherences by
the classical distinguishability of the probe spectrum. Agreement of the
three at 1e-8 relative on full-rank thermal probes is the package's
central correctness property, certified in QfiReport.

Sums are accumulated with math.fsum, so results are deterministic to the
last bit regardless of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import as_operator
from .operators import commutator_i, require_hermitian
from .thermal import GibbsState

# probe support truncation for non-thermal probes: pairs whose combined
# weight falls below this are outside the support sum
SUPPORT_TOL = 1e-14
NEGATIVE_CLAMP = 1e-10


def tanhc(x):
    """Cardinal hyperbolic tangent tanh(x)/x; even, range (0, 1], tanhc(0) = 1.

    Below |x| = 1e-5 the series 1 - x^2/3 + 2x^4/15 takes over (next term
    is O(x^6), far below double precision there). Accepts scalars or
    arrays.
    """
    arr = np.asarray(x, dtype=float)
    small = np.abs(arr) < 1e-5
    safe = np.where(small, 1.0, arr)
    out = np.where(small, 1.0 - arr * arr / 3.0 + 2.0 * arr**4 / 15.0, np.tanh(safe) / safe)
    if out.ndim == 0:
        return float(out)
    return out


def _clamped(value: float, what: str) -> float:
    if value >= 0.0:
        return value
    if value >= -NEGATIVE_CLAMP:
        return 0.0
    raise ArithmeticError(f"{what} = {value:.6e} is negative beyond the clamp window")


def _probe_parts(probe, h):
    p = np.asarray(probe.probabilities, dtype=float)
    v = np.asarray(probe.eigenvectors)
    hm = require_hermitian(as_operator(h), "generator")
    if hm.shape[0] != v.shape[0]:
        raise ValueError(f"dimension mismatch: generator dim {hm.shape[0]}, probe dim {v.shape[0]}")
    if np.any(p < 0.0):
        raise ValueError("negative probe probability")
    return p, v, hm


def qfi_general(probe, h) -> float:
    """Mixed-state dynamic QFI from the probe spectrum.

    F = sum_i 4 p_i Var[h]_i - sum_{i != j} 8 p_i p_j / (p_i + p_j) |h_ij|^2
    in the probe eigenbasis. A uniform spectrum cancels the two sums
    exactly; a pure probe reduces to 4 Var[h] on its support.
    """
    p, v, hm = _probe_parts(probe, h)
    ht = v.conj().T @ hm @ v
    habs2 = np.abs(ht) ** 2
    hdiag = np.real(np.diag(ht))
    var_i = habs2.sum(axis=1) - hdiag**2
    first = math.fsum((4.0 * p * var_i).tolist())
    pair_sum = p[:, None] + p[None, :]
    mask = pair_sum >= SUPPORT_TOL
    np.fill_diagonal(mask, False)
    coeff = np.zeros_like(pair_sum)
    coeff[mask] = 8.0 * (p[:, None] * p[None, :])[mask] / pair_sum[mask]
    second = math.fsum((coeff * habs2)[mask].tolist())
    return _clamped(first - second, "general-route QFI")


def qfi_sld(probe, h) -> float:
    """SLD-route QFI: F = sum_{i,j} 2 (p_i - p_j)^2 / (p_i + p_j) |h_ij|^2."""
    p, v, hm = _probe_parts(probe, h)
    ht = v.conj().T @ hm @ v
    habs2 = np.abs(ht) ** 2
    pair_sum = p[:, None] + p[None, :]
    diff2 = (p[:, None] - p[None, :]) ** 2
    mask = pair_sum >= SUPPORT_TOL
    terms = np.zeros_like(pair_sum)
    terms[mask] = 2.0 * diff2[mask] / pair_sum[mask] * habs2[mask]
    return _clamped(math.fsum(terms[mask].tolist()), "SLD-route QFI")


def qfi_thermal(rho0: GibbsState, h) -> float:
    """Thermal-commutator route, defined only for genuine Gibbs probes.

    F = beta^2 Var[C] - beta^2 sum_{i != j} p_i (1 - tanhc^2(beta D_ij / 2)) |C_ij|^2
    with C = i[H, h] and D_ij the energy differences of the probe
    Hamiltonian. Both orientations of each pair contribute with their own
    weight; degenerate pairs drop out exactly since tanhc(0) = 1.
    """
    if not isinstance(rho0, GibbsState):
        raise TypeError("the thermal route requires a GibbsState probe")
    hm = require_hermitian(as_operator(h), "generator")
    if hm.shape[0] != rho0.dim:
        raise ValueError(f"dimension mismatch: generator dim {hm.shape[0]}, probe dim {rho0.dim}")
    comm = commutator_i(rho0.hamiltonian, hm)
    v = rho0.eigenvectors
    energies = rho0.eigenvalues
    p = rho0.probabilities
    beta = rho0.beta
    ct = v.conj().T @ comm @ v
    cabs2 = np.abs(ct) ** 2
    mean = math.fsum((p * np.real(np.diag(ct))).tolist())
    second_moment = math.fsum((p[:, None] * cabs2).ravel().tolist())
    var_c = second_moment - mean * mean
    delta = energies[:, None] - energies[None, :]
    weight = 1.0 - tanhc(0.5 * beta * delta) ** 2
    terms = p[:, None] * weight * cabs2
    np.fill_diagonal(terms, 0.0)
    second = math.fsum(terms.ravel().tolist())
    return _clamped(beta * beta * (var_c - second), "thermal-route QFI")


@dataclass(frozen=True)
class QfiReport:
    """The three route values and their agreement certificate."""

    f_general: float
    f_thermal: float
    f_sld: float
    max_pairwise_rel_diff: float
    pure_state_flag: bool


def qfi_report(rho0: GibbsState, h) -> QfiReport:
    f_general = qfi_general(rho0, h)
    f_thermal = qfi_thermal(rho0, h)
    f_sld = qfi_sld(rho0, h)
    spread = max(
        abs(f_general - f_thermal),
        abs(f_general - f_sld),
        abs(f_thermal - f_sld),
    )
    return QfiReport(
        f_general=f_general,
        f_thermal=f_thermal,
        f_sld=f_sld,
        max_pairwise_rel_diff=spread / max(1.0, f_general),
        pure_state_flag=bool(getattr(rho0, "effectively_pure", False)),
    )
