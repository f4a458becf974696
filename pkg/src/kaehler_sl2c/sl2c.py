"""SL(2,C) as a G = SU(2) x SU(2) space.

Matrices are plain 2x2 complex numpy arrays, identified with (z1, z2, z3, z4)
row-major.  Functions accept stacks of shape (..., 2, 2) where that is cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChartDomain, DomainError, OutsideImage

TAU = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
I2 = np.eye(2, dtype=complex)

DET_TOL = 1e-10
UNITARY_TOL = 1e-10


def as_matrix(z) -> np.ndarray:
    """(z1, z2, z3, z4) or a 2x2 array -> 2x2 complex array."""
    m = np.asarray(z, dtype=complex)
    if m.shape[-2:] == (2, 2):
        return m
    if m.shape[-1] == 4:
        return m.reshape(m.shape[:-1] + (2, 2))
    raise ValueError(f"cannot interpret shape {m.shape} as a 2x2 matrix")


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def x_of(m) -> np.ndarray:
    """x = tr(m^dagger m) / 2."""
    m = as_matrix(m)
    return 0.5 * np.sum(np.abs(m) ** 2, axis=(-1, -2))


def y_of(m) -> np.ndarray:
    """y = arccosh(x), clamped at x = 1 against rounding."""
    return np.arccosh(np.maximum(x_of(m), 1.0))


def w_of(m) -> np.ndarray:
    """w = z1 z4 - z2 z3 (the determinant)."""
    m = as_matrix(m)
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def beta(m) -> tuple:
    return x_of(m), w_of(m)


def sl2_point(m) -> np.ndarray:
    """Validate membership of SL(2,C) and return the matrix."""
    m = as_matrix(m)
    if np.any(np.abs(w_of(m) - 1.0) > DET_TOL):
        raise DomainError("matrix does not have unit determinant")
    return m


def su2_element(u) -> np.ndarray:
    u = as_matrix(u)
    if np.any(np.abs(w_of(u) - 1.0) > UNITARY_TOL) or np.any(
        np.abs(dagger(u) @ u - I2).max(axis=(-1, -2)) > UNITARY_TOL
    ):
        raise DomainError("matrix is not in SU(2)")
    return u


def lie_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Validate (a, b) in su(2) + su(2): anti-hermitian and traceless."""
    a, b = as_matrix(a), as_matrix(b)
    for m in (a, b):
        if np.abs(dagger(m) + m).max() > 1e-12 or abs(np.trace(m)) > 1e-12:
            raise DomainError("Lie algebra elements must be traceless anti-hermitian")
    return a, b


def chart_inverse(z1: complex, z2: complex, z3: complex) -> np.ndarray:
    """[[z1, z2], [z3, (1 + z2 z3) / z1]]; det = 1 by construction."""
    if abs(z1) < 1e-15:
        raise ChartDomain("chart requires z1 != 0")
    return np.array([[z1, z2], [z3, (1.0 + z2 * z3) / z1]], dtype=complex)


def chart(m) -> np.ndarray:
    m = as_matrix(m)
    if abs(m[0, 0]) < 1e-15:
        raise ChartDomain("point lies outside the chart domain A11 != 0")
    return np.array([m[0, 0], m[0, 1], m[1, 0]], dtype=complex)


def act(g: tuple, m) -> np.ndarray:
    """psi_(U1, U2)(m) = U1 m U2^-1."""
    u1, u2 = g
    return u1 @ as_matrix(m) @ dagger(u2)


def compose_group(g: tuple, h: tuple) -> tuple:
    return g[0] @ h[0], g[1] @ h[1]


def chi(u, lam) -> np.ndarray:
    """chi(U, lambda) = U (sqrt(1 + |lambda|^2) I + lambda . tau); vectorised over leading axes."""
    lam = np.asarray(lam, dtype=float)
    r2 = np.sum(lam * lam, axis=-1)
    inner = np.sqrt(1.0 + r2)[..., None, None] * I2 + np.einsum("...a,aij->...ij", lam, TAU)
    return as_matrix(u) @ inner


def rotation_of(u) -> np.ndarray:
    """The double cover SU(2) -> SO(3): R_ab = tr(tau_a U tau_b U^dagger) / 2."""
    u = as_matrix(u)
    return 0.5 * np.einsum("aij,jk,bkl,li->ab", TAU, u, TAU, dagger(u)).real


# -- Euler angles and Haar measure ----------------------------------------

EULER_BOX = ((0.0, 4.0 * math.pi), (0.0, math.pi), (0.0, 2.0 * math.pi))


def _exp_tau(k: int, angle) -> np.ndarray:
    """exp(i angle tau_k / 2), vectorised over ``angle``."""
    angle = np.asarray(angle, dtype=float)
    c = np.cos(angle / 2)[..., None, None]
    s = np.sin(angle / 2)[..., None, None]
    return c * I2 + 1j * s * TAU[k]


def su2_euler(beta_, alpha, gamma) -> np.ndarray:
    """exp(i beta tau3/2) exp(i alpha tau2/2) exp(i gamma tau3/2), no range check.

    With this ordering and sign the left-invariant forms dual to (i/2) tau_a
    read sigma_1 = -sin g da + cos g sin a db, sigma_2 = cos g da + sin g sin a db,
    sigma_3 = cos a db + dg.
    """
    return _exp_tau(2, beta_) @ _exp_tau(1, alpha) @ _exp_tau(2, gamma)


def su2_from_euler(beta_: float, alpha: float, gamma: float) -> np.ndarray:
    for v, (lo, hi), name in zip((beta_, alpha, gamma), EULER_BOX, ("beta", "alpha", "gamma")):
        if not lo < v < hi:
            raise DomainError(f"{name} = {v!r} outside the chart interval ({lo}, {hi})")
    return su2_euler(beta_, alpha, gamma)


def haar_angles(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Euler angles with density sin(alpha) / (16 pi^2) on the chart box."""
    beta_ = rng.uniform(0.0, 4.0 * math.pi, n)
    alpha = np.arccos(1.0 - 2.0 * rng.uniform(0.0, 1.0, n))
    gamma = rng.uniform(0.0, 2.0 * math.pi, n)
    return beta_, alpha, gamma


def haar_sample(rng: np.random.Generator, n: int | None = None) -> np.ndarray:
    """Haar-distributed SU(2) element (or a stack of ``n`` of them)."""
    angles = haar_angles(rng, 1 if n is None else n)
    u = su2_euler(*angles)
    return u[0] if n is None else u


def maurer_cartan_components(beta_: float, alpha: float, gamma: float, h: float = 1e-6) -> np.ndarray:
    """3x3 matrix S with S[a, j] = sigma_a(d/d angle_j), from U^-1 dU by central differences."""
    angles = np.array([beta_, alpha, gamma], dtype=float)
    u_inv = dagger(su2_euler(*angles))
    out = np.empty((3, 3))
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        du = (su2_euler(*(angles + e)) - su2_euler(*(angles - e))) / (2 * h)
        X = u_inv @ du
        # X = sum_a sigma_a (i/2) tau_a  =>  sigma_a = -i tr(X tau_a)
        for a in range(3):
            out[a, j] = (-1j * np.trace(X @ TAU[a])).real
    return out


def euler_forms(alpha: float, gamma: float) -> np.ndarray:
    """The closed-form sigma_a(d/d angle_j) in (beta, alpha, gamma) order."""
    sa, ca, sg, cg = math.sin(alpha), math.cos(alpha), math.sin(gamma), math.cos(gamma)
    return np.array([
        [cg * sa, -sg, 0.0],
        [sg * sa, cg, 0.0],
        [ca, 0.0, 1.0],
    ])


# -- Singular-value decomposition and orbit separation ---------------------


@dataclass(frozen=True)
class CartanDecomposition:
    """m = u1 @ diag(lam1, lam2) @ u2 * exp(i theta), u1, u2 in SU(2), 0 <= lam1 <= lam2."""

    u1: np.ndarray
    u2: np.ndarray
    lam1: float
    lam2: float
    theta: float

    def reconstruct(self) -> np.ndarray:
        return self.u1 @ np.diag([self.lam1, self.lam2]).astype(complex) @ self.u2 * np.exp(1j * self.theta)


_SWAP = np.array([[0, 1], [1, 0]], dtype=complex)


def cartan_decompose(m) -> CartanDecomposition:
    m = as_matrix(m)
    k, s, kp = np.linalg.svd(m)
    # reorder singular values to non-decreasing
    a = k @ _SWAP
    b = _SWAP @ kp
    pa = np.angle(np.linalg.det(a))
    pb = np.angle(np.linalg.det(b))
    u1 = a * np.exp(-0.5j * pa)
    u2 = b * np.exp(-0.5j * pb)
    return CartanDecomposition(u1, u2, float(s[1]), float(s[0]), float(0.5 * (pa + pb)))


def same_orbit(m, n, tol: float = 1e-9) -> bool:
    """Orbits of U1 m U2^-1 on M(2,C) are separated by (x, w)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return bool(abs(x_of(m) - x_of(n)) <= tol and abs(w_of(m) - w_of(n)) <= tol)


def beta_section(a: float, u: complex) -> np.ndarray:
    """A matrix with x = a and w = u, defined for a >= |u|."""
    if a < abs(u):
        raise OutsideImage(f"(a, u) = ({a!r}, {u!r}) violates a >= |u|")
    s = a + math.sqrt(max(a * a - abs(u) ** 2, 0.0))
    if s == 0.0:
        return np.zeros((2, 2), dtype=complex)
    return np.array([[u / math.sqrt(s), 0.0], [0.0, math.sqrt(s)]], dtype=complex)
