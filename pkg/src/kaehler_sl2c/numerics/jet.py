"""Truncated Taylor arithmetic (forward-mode AD to fourth order).

A :class:`Jet4` stores the Taylor coefficients ``c[k] = f^(k)(y) / k!`` for
k = 0..4.  Coefficients may be floats or numpy arrays of a common shape, so the
same code evaluates derivatives on a whole grid at once.
"""

from __future__ import annotations

import math
from typing import Sequence, Union

import numpy as np

from ..errors import JetDomainError

ORDER = 4
_FACT = (1.0, 1.0, 2.0, 6.0, 24.0)

Scalar = Union[float, np.ndarray]


def _lift(value) -> "Jet4":
    if isinstance(value, Jet4):
        return value
    return Jet4.constant(value)


class Jet4:
    __slots__ = ("c",)

    def __init__(self, coefficients: Sequence[Scalar]):
        if len(coefficients) != ORDER + 1:
            raise ValueError("Jet4 needs exactly 5 coefficients")
        self.c = tuple(coefficients)

    @classmethod
    def constant(cls, value: Scalar) -> "Jet4":
        zero = value * 0.0
        return cls((value, zero, zero, zero, zero))

    @classmethod
    def variable(cls, value: Scalar) -> "Jet4":
        """The identity function seeded at ``value``."""
        value = np.asarray(value, dtype=float) if isinstance(value, np.ndarray) else float(value)
        zero = value * 0.0
        return cls((value, zero + 1.0, zero, zero, zero))

    @classmethod
    def from_derivatives(cls, derivs: Sequence[Scalar]) -> "Jet4":
        return cls(tuple(d / _FACT[k] for k, d in enumerate(derivs)))

    @property
    def value(self) -> Scalar:
        return self.c[0]

    def derivative(self, k: int) -> Scalar:
        return self.c[k] * _FACT[k]

    def derivatives(self) -> tuple:
        return tuple(self.derivative(k) for k in range(ORDER + 1))

    def __repr__(self) -> str:
        return f"Jet4({', '.join(repr(x) for x in self.c)})"

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        o = _lift(other)
        return Jet4(tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Jet4(tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet4):
            return Jet4(tuple(a * other for a in self.c))
        a, b = self.c, other.c
        return Jet4(tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(ORDER + 1)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet4):
            if np.any(np.asarray(other) == 0):
                raise JetDomainError("division by zero constant")
            return Jet4(tuple(a / other for a in self.c))
        b = other.c
        if np.any(np.asarray(b[0]) == 0):
            raise JetDomainError("jet division by a zero value part")
        a = self.c
        q: list = []
        for k in range(ORDER + 1):
            acc = a[k]
            for i in range(1, k + 1):
                acc = acc - b[i] * q[k - i]
            q.append(acc / b[0])
        return Jet4(tuple(q))

    def __rtruediv__(self, other):
        return _lift(other) / self

    def __pow__(self, exponent):
        if isinstance(exponent, Jet4):
            return jexp(exponent * jlog(self))
        return jpow(self, float(exponent))

    def __rpow__(self, base):
        return jexp(self * math.log(base)) if base > 0 else _raise_domain("power of non-positive base")


def _raise_domain(msg: str):
    raise JetDomainError(msg)


def compose(u: Jet4, derivs: Sequence[Scalar]) -> Jet4:
    """phi(u) given phi^(j)(u0) for j = 0..4 (Faa di Bruno via nilpotent powers)."""
    zero = u.c[0] * 0.0
    delta = Jet4((zero, *u.c[1:]))
    out = [derivs[0] + zero, zero, zero, zero, zero]
    power = delta
    for j in range(1, ORDER + 1):
        coef = derivs[j] / _FACT[j]
        for k in range(j, ORDER + 1):
            out[k] = out[k] + coef * power.c[k]
        power = power * delta
    return Jet4(tuple(out))


def jexp(u: Jet4) -> Jet4:
    e = np.exp(u.c[0])
    return compose(u, (e, e, e, e, e))


def jsinh(u: Jet4) -> Jet4:
    s, c = np.sinh(u.c[0]), np.cosh(u.c[0])
    return compose(u, (s, c, s, c, s))


def jcosh(u: Jet4) -> Jet4:
    s, c = np.sinh(u.c[0]), np.cosh(u.c[0])
    return compose(u, (c, s, c, s, c))


def _riccati(t: Scalar, s: Scalar) -> tuple:
    # t' = s with s' = -2 t s (tanh: s = sech^2, coth: s = -csch^2).
    return (t, s, -2.0 * t * s, -2.0 * s * (s - 2.0 * t * t), 8.0 * t * s * (2.0 * s - t * t))


def jtanh(u: Jet4) -> Jet4:
    x = u.c[0]
    return compose(u, _riccati(np.tanh(x), 1.0 / np.cosh(x) ** 2))


def jcoth(u: Jet4) -> Jet4:
    x = u.c[0]
    if np.any(np.asarray(x) == 0):
        raise JetDomainError("coth at 0")
    sh = np.sinh(x)
    return compose(u, _riccati(np.cosh(x) / sh, -1.0 / sh**2))


def jlog(u: Jet4) -> Jet4:
    x = u.c[0]
    if np.any(np.asarray(x) <= 0):
        raise JetDomainError("log of a non-positive value")
    r = 1.0 / x
    return compose(u, (np.log(x), r, -r * r, 2.0 * r**3, -6.0 * r**4))


def jpow(u: Jet4, p: float) -> Jet4:
    """u**p for constant p; integer p allows any sign of the base."""
    x = u.c[0]
    is_int = float(p).is_integer()
    if not is_int and np.any(np.asarray(x) <= 0):
        raise JetDomainError("non-integer power of a non-positive value")
    if is_int and p >= 0:
        n = int(p)
        derivs = []
        for k in range(ORDER + 1):
            if k > n:
                derivs.append(x * 0.0)
            else:
                ff = math.prod(range(n - k + 1, n + 1))
                derivs.append(ff * x ** (n - k))
        return compose(u, derivs)
    if is_int and np.any(np.asarray(x) == 0):
        raise JetDomainError("negative power of zero")
    derivs = []
    ff = 1.0
    for k in range(ORDER + 1):
        derivs.append(ff * x ** (p - k))
        ff *= p - k
    return compose(u, derivs)


def jsqrt(u: Jet4) -> Jet4:
    if np.any(np.asarray(u.c[0]) <= 0):
        raise JetDomainError("sqrt of a non-positive value")
    return jpow(u, 0.5)
