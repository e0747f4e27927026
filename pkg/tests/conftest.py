import hypothesis
import hypothesis.strategies as st
import numpy as np

hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.load_profile("default")


@st.composite
def hermitian_matrices(draw, min_dim=2, max_dim=8, scale=1.0):
    """Random dense Hermitian matrices, reproducible through a drawn seed."""
    dim = draw(st.integers(min_value=min_dim, max_value=max_dim))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = np.random.default_rng(seed)
    x = rng.normal(scale=scale, size=(dim, dim)) + 1j * rng.normal(scale=scale, size=(dim, dim))
    return 0.5 * (x + x.conj().T)


@st.composite
def hermitian_pairs(draw, min_dim=2, max_dim=8):
    """Two independent Hermitian matrices of the same dimension."""
    dim = draw(st.integers(min_value=min_dim, max_value=max_dim))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = np.random.default_rng(seed)

    def one():
        x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        return 0.5 * (x + x.conj().T)

    return one(), one()
