from __future__ import annotations

import numpy as np
import pytest

from kaehler_sl2c.errors import StepTooSmall
from kaehler_sl2c.numerics import central_hessian_complex, real_hessian


def test_complex_hessian_of_quadratic_form():
    A = np.array([[2.0, 0.5 + 0.5j], [0.5 - 0.5j, 1.0]])

    def F(z):
        return float(np.real(np.conj(z) @ A @ z))

    H = central_hessian_complex(F, np.array([0.3 + 0.1j, -0.7j]))
    # F = sum conj(z_a) A_ab z_b gives d^2F/dz_a dzbar_b = A_ba.
    np.testing.assert_allclose(H, A.T, atol=1e-7)


def test_complex_hessian_of_log_norm():
    # d dbar log(1 + |z|^2) in one variable is 1/(1 + |z|^2)^2.
    z0 = np.array([0.4 - 0.3j])
    H = central_hessian_complex(lambda z: float(np.log1p(abs(z[0]) ** 2)), z0)
    assert H[0, 0] == pytest.approx(1.0 / (1.0 + 0.25) ** 2, rel=1e-7)


def test_real_hessian():
    H = real_hessian(lambda x: x[0] ** 2 * x[1], np.array([1.0, 2.0]), 1e-4)
    np.testing.assert_allclose(H, [[4.0, 2.0], [2.0, 0.0]], atol=1e-6)


def test_step_too_small():
    with pytest.raises(StepTooSmall):
        central_hessian_complex(lambda z: 0.0, np.array([1.0 + 0j]), h=1e-18)
