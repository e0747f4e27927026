"""Exact spin-J angular momentum matrices in the ascending J_z eigenbasis.

J is carried as the integer 2J so half-integer spins stay exact through
config parsing. Basis order is M = -J..J ascending, which puts the largest
thermal weight of exp(-beta J_z) at index 0 for beta > 0.
"""

from __future__ import annotations

import numpy as np


def check_twice_j(twice_j) -> int:
    if isinstance(twice_j, bool) or not isinstance(twice_j, (int, np.integer)) or twice_j < 1:
        raise ValueError(f"twice_j must be a positive integer, got {twice_j!r}")
    return int(twice_j)


def spin_value(twice_j) -> float:
    """J as a float; half-integers are exact in binary."""
    return check_twice_j(twice_j) / 2.0


def spin_dim(twice_j) -> int:
    return check_twice_j(twice_j) + 1


def m_values(twice_j) -> np.ndarray:
    """Magnetic quantum numbers -J..J, ascending."""
    j = spin_value(twice_j)
    return np.arange(twice_j + 1, dtype=float) - j


def spin_operators(twice_j) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_x, J_y, J_z) as complex matrices.

    J_z is diagonal with entries M; the ladder elements are
    sqrt(J(J+1) - M(M+1)), so J_x and J_y come out exactly Hermitian.
    """
    twice_j = check_twice_j(twice_j)
    j = spin_value(twice_j)
    m = m_values(twice_j)
    dim = twice_j + 1
    jz = np.diag(m.astype(np.complex128))
    ladder = np.sqrt(j * (j + 1.0) - m[:-1] * (m[:-1] + 1.0))
    jplus = np.zeros((dim, dim), dtype=np.complex128)
    jplus[np.arange(1, dim), np.arange(dim - 1)] = ladder
    jminus = jplus.conj().T
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    return jx, jy, jz


def _symmetrized(x: np.ndarray) -> np.ndarray:
    return 0.5 * (x + x.conj().T)


def oat_commutator(twice_j) -> np.ndarray:
    """J_x J_y + J_y J_x, the traceless operator whose spectral width
    controls the one-axis-twisting bound (it is i[J_z, J_x^2] up to sign
    and the evolution time)."""
    jx, jy, _ = spin_operators(twice_j)
    return _symmetrized(jx @ jy + jy @ jx)


def rotated_oat_operator(twice_j) -> np.ndarray:
    """J_x^2 - J_y^2; unitarily equivalent to oat_commutator, so isospectral."""
    jx, jy, _ = spin_operators(twice_j)
    return _symmetrized(jx @ jx - jy @ jy)
