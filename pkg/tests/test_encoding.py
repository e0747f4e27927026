import numpy as np
import pytest
from hypothesis import given, settings

from thermalqfi.encoding import (
    ExplicitGenerator,
    HamiltonianFamily,
    NumericUnitary,
    evolution_unitary,
    generator_explicit,
    generator_fd,
    generator_integral,
    transformed_generator,
)
from thermalqfi.models import lmg_hamiltonian
from thermalqfi.operators import hermiticity_defect, seminorm
from thermalqfi.qfi import qfi_general
from thermalqfi.spin import spin_operators
from thermalqfi.thermal import gibbs_state

from conftest import hermitian_pairs


class TestExplicit:
    def test_scales_generator(self):
        jx, _, _ = spin_operators(2)
        out = generator_explicit(jx, 2.0)
        assert out.method == "explicit"
        np.testing.assert_array_equal(out.h, 2.0 * jx)

    def test_squared_generator_passes_through(self):
        jx, _, _ = spin_operators(4)
        jx2 = jx @ jx
        np.testing.assert_array_equal(generator_explicit(jx2, 1.0).h, jx2)

    def test_zero_time(self):
        jx, _, _ = spin_operators(1)
        assert np.max(np.abs(generator_explicit(jx, 0.0).h)) == 0.0

    def test_rejects_negative_time(self):
        jx, _, _ = spin_operators(1)
        with pytest.raises(ValueError):
            ExplicitGenerator(jx, -1.0)


class TestIntegral:
    def test_commuting_family_reduces_to_linear(self):
        _, _, jz = spin_operators(3)
        family = HamiltonianFamily(lambda lam: lam * jz, jz, lam=0.8, t=2.5)
        out = generator_integral(family)
        assert out.method == "integral"
        np.testing.assert_allclose(out.h, 2.5 * jz, atol=1e-12)

    def test_zero_time_gives_zero(self):
        _, _, jz = spin_operators(2)
        family = HamiltonianFamily(lambda lam: lmg_hamiltonian(2, lam), jz, lam=1.0, t=0.0)
        assert np.max(np.abs(generator_integral(family).h)) <= 1e-15

    def test_hermitian_output(self):
        _, _, jz = spin_operators(6)
        family = HamiltonianFamily(lambda lam: lmg_hamiltonian(6, lam), jz, lam=0.5, t=3.14)
        assert hermiticity_defect(generator_integral(family).h) == 0.0

    @pytest.mark.parametrize("twice_j,lam,t", [(2, 1.0, 1.0), (4, 0.5, 3.14), (8, 1.0, 2.0)])
    def test_against_finite_difference_oracle(self, twice_j, lam, t):
        _, _, jz = spin_operators(twice_j)
        family = HamiltonianFamily(lambda v: lmg_hamiltonian(twice_j, v), jz, lam=lam, t=t)
        spectral = generator_integral(family).h
        numeric = NumericUnitary(
            lambda v: evolution_unitary(lmg_hamiltonian(twice_j, v), t), lam=lam, fd_step=1e-5
        )
        fd = generator_fd(numeric).h
        scale = max(1.0, float(np.max(np.abs(spectral))))
        assert np.max(np.abs(fd - spectral)) / scale <= 1e-5

    @given(hermitian_pairs(max_dim=6))
    @settings(max_examples=40)
    def test_seminorm_bounded_by_time_and_derivative(self, pair):
        base, deriv = pair
        family = HamiltonianFamily(lambda lam: base + lam * deriv, deriv, lam=0.6, t=1.7)
        h = generator_integral(family).h
        assert seminorm(h) <= 1.7 * seminorm(deriv) + 1e-8


class TestFiniteDifference:
    def test_explicit_generator_recovered(self):
        jx, _, _ = spin_operators(2)
        t = 1.3
        numeric = NumericUnitary(lambda lam: evolution_unitary(lam * t * jx, 1.0), lam=0.4, fd_step=1e-5)
        h = generator_fd(numeric).h
        np.testing.assert_allclose(h, t * jx, rtol=1e-8, atol=1e-8)

    def test_parameter_independent_unitary(self):
        u = evolution_unitary(spin_operators(2)[0], 0.9)
        numeric = NumericUnitary(lambda lam: u, lam=0.0, fd_step=1e-5)
        assert np.max(np.abs(generator_fd(numeric).h)) <= 1e-10

    def test_step_halving_is_second_order(self):
        twice_j, lam, t = 4, 0.5, 3.14  # truncation well above the roundoff floor here
        _, _, jz = spin_operators(twice_j)
        family = HamiltonianFamily(lambda v: lmg_hamiltonian(twice_j, v), jz, lam=lam, t=t)
        spectral = generator_integral(family).h

        def gap(step):
            numeric = NumericUnitary(
                lambda v: evolution_unitary(lmg_hamiltonian(twice_j, v), t), lam=lam, fd_step=step
            )
            return float(np.max(np.abs(generator_fd(numeric).h - spectral)))

        ratio = gap(2e-4) / gap(1e-4)
        assert 3.0 <= ratio <= 5.0

    def test_rejects_non_unitary_evaluator(self):
        with pytest.raises(ValueError, match="unitary"):
            generator_fd(NumericUnitary(lambda lam: np.eye(2) * (1.0 + lam), lam=0.5, fd_step=1e-3))

    def test_step_bounds(self):
        with pytest.raises(ValueError):
            NumericUnitary(lambda lam: np.eye(2), lam=0.0, fd_step=0.0)
        with pytest.raises(ValueError):
            NumericUnitary(lambda lam: np.eye(2), lam=0.0, fd_step=0.1)


class TestDispatchAndConventions:
    def test_dispatch_tags(self):
        jx, _, jz = spin_operators(2)
        assert transformed_generator(ExplicitGenerator(jx, 1.0)).method == "explicit"
        fam = HamiltonianFamily(lambda lam: lmg_hamiltonian(2, lam), jz, lam=1.0, t=1.0)
        assert transformed_generator(fam).method == "integral"
        num = NumericUnitary(lambda lam: evolution_unitary(lam * jx, 1.0), lam=0.3)
        assert transformed_generator(num).method == "finite-difference"
        with pytest.raises(TypeError):
            transformed_generator(object())

    def test_sign_convention_insensitivity(self):
        # U = exp(+iHt) maps h to -conj(h) in this real operator basis, so
        # |h_mn|^2, the spectrum, and the QFI are all unchanged
        twice_j, lam, t = 4, 0.5, 2.0
        probe = gibbs_state(spin_operators(twice_j)[2], 1.1)

        def unitary(sign):
            return NumericUnitary(
                lambda v: evolution_unitary(sign * lmg_hamiltonian(twice_j, v), t), lam=lam, fd_step=1e-5
            )

        h_minus = generator_fd(unitary(1.0)).h
        h_plus = generator_fd(unitary(-1.0)).h
        scale = np.max(np.abs(h_minus))
        np.testing.assert_allclose(np.abs(h_plus), np.abs(h_minus), atol=1e-8 * scale)
        np.testing.assert_allclose(
            np.real(np.diag(h_plus)), -np.real(np.diag(h_minus)), atol=1e-8 * scale
        )
        assert abs(seminorm(h_plus) - seminorm(h_minus)) <= 1e-8 * scale
        f_minus = qfi_general(probe, h_minus)
        f_plus = qfi_general(probe, h_plus)
        assert f_plus == pytest.approx(f_minus, rel=1e-8)
