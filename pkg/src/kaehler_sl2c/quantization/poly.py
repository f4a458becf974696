"""Sparse polynomials in z1..z4 and their normal forms modulo z1 z4 - z2 z3 - 1."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

import numpy as np

from ..errors import NotHomogeneous

Exponent = tuple[int, int, int, int]


def _clean(terms: Mapping[Exponent, complex]) -> tuple:
    return tuple(sorted(((e, complex(c)) for e, c in terms.items() if c != 0), reverse=True))


@dataclass(frozen=True)
class Poly4:
    """Immutable sparse polynomial; terms are kept lex-descending, zeros dropped."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, terms: Mapping[Exponent, complex]) -> "Poly4":
        return cls(_clean({tuple(int(v) for v in e): c for e, c in terms.items()}))

    @classmethod
    def constant(cls, c: complex) -> "Poly4":
        return cls.from_dict({(0, 0, 0, 0): c})

    @classmethod
    def monomial(cls, e: Exponent, c: complex = 1.0) -> "Poly4":
        if len(e) != 4 or min(e) < 0:
            raise ValueError("exponent must be four nonnegative integers")
        return cls.from_dict({tuple(e): c})

    @classmethod
    def variable(cls, k: int) -> "Poly4":
        """z_k for k in 1..4."""
        e = [0, 0, 0, 0]
        e[k - 1] = 1
        return cls.monomial(tuple(e))

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly4":
        return Poly4(tuple((e, c) for e, c in self.terms if sum(e) == d))

    def top_part(self) -> "Poly4":
        return self.homogeneous_part(self.degree)

    def norm(self) -> float:
        return max((abs(c) for _, c in self.terms), default=0.0)

    def is_close(self, other: "Poly4", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol * max(1.0, self.norm(), other.norm())

    # -- arithmetic

    def __add__(self, other):
        other = _lift(other)
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return Poly4.from_dict(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly4(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Poly4.from_dict({e: c * other for e, c in self.terms})
        out: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                out[e] = out.get(e, 0) + c1 * c2
        return Poly4.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly4.constant(1.0)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self, k: int) -> "Poly4":
        """d/dz_k for k in 1..4."""
        out: dict = {}
        for e, c in self.terms:
            if e[k - 1]:
                f = list(e)
                f[k - 1] -= 1
                out[tuple(f)] = out.get(tuple(f), 0) + c * e[k - 1]
        return Poly4.from_dict(out)

    def __call__(self, z1, z2, z3, z4):
        """Evaluate at (arrays of) complex points."""
        z = [np.asarray(v, dtype=complex) for v in (z1, z2, z3, z4)]
        out = np.zeros(np.broadcast(*z).shape, dtype=complex)
        for e, c in self.terms:
            out = out + c * z[0] ** e[0] * z[1] ** e[1] * z[2] ** e[2] * z[3] ** e[3]
        return out[()] if out.ndim == 0 else out

    def evaluate_matrix(self, m) -> complex:
        m = np.asarray(m, dtype=complex)
        return self(m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1])

    # -- text

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({_coef_text(c)}) * z1^{e[0]} z2^{e[1]} z3^{e[2]} z4^{e[3]}" for e, c in self.terms
        )

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def parse(cls, text: str) -> "Poly4":
        text = text.strip()
        if text == "0":
            return cls()
        pos, out = 0, {}
        while True:
            match = _TERM.match(text, pos)
            if match is None:
                raise ValueError(f"cannot parse polynomial near offset {pos}: {text[pos:pos + 20]!r}")
            e = tuple(int(match.group(g)) for g in ("a", "b", "c", "d"))
            out[e] = out.get(e, 0) + _parse_coef(match.group("coef"))
            pos = match.end()
            if pos == len(text):
                return cls.from_dict(out)
            sep = _SEP.match(text, pos)
            if sep is None:
                raise ValueError(f"expected ' + ' at offset {pos}")
            pos = sep.end()


def _lift(v) -> Poly4:
    return v if isinstance(v, Poly4) else Poly4.constant(v)


_NUM = r"(?:\d+(?:\.\d*)?(?:e[+-]?\d+)?|inf|nan)"
_COEF = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-]{_NUM})i$")
_TERM = re.compile(r"\s*\((?P<coef>[^)]*)\)\s*\*\s*z1\^(?P<a>\d+)\s+z2\^(?P<b>\d+)\s+z3\^(?P<c>\d+)\s+z4\^(?P<d>\d+)")
_SEP = re.compile(r"\s*\+\s*")


def _float_text(x: float) -> str:
    x = x + 0.0  # turn -0.0 into 0.0
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _coef_text(c: complex) -> str:
    im = c.imag + 0.0
    sign = "-" if im < 0 else "+"
    return f"{_float_text(c.real)}{sign}{_float_text(abs(im))}i"


def _parse_coef(text: str) -> complex:
    match = _COEF.match(text.strip())
    if match is None:
        raise ValueError(f"bad coefficient {text!r}; expected 're+im i'")
    return complex(float(match.group("re")), float(match.group("im")))


def z(k: int) -> Poly4:
    return Poly4.variable(k)


#: The defining function D = z1 z4 - z2 z3 - 1 of SL(2, C) in C^4.
DEFINING = z(1) * z(4) - z(2) * z(3) - 1
#: The quadric w = z1 z4 - z2 z3.
QUADRIC = z(1) * z(4) - z(2) * z(3)


def reduce_mod_ideal(p: Poly4) -> Poly4:
    """Normal form modulo (z1 z4 - z2 z3 - 1): no monomial contains both z1 and z4.

    Each z1^t z4^t factor (t = min(e1, e4)) is replaced by (z2 z3 + 1)^t.
    """
    out: dict = {}
    for (e1, e2, e3, e4), c in p.terms:
        t = min(e1, e4)
        for j in range(t + 1):
            e = (e1 - t, e2 + j, e3 + j, e4 - t)
            out[e] = out.get(e, 0) + c * math.comb(t, j)
    return Poly4.from_dict(out)


def is_quadric_divisible(p_hom: Poly4, tol: float = 1e-12) -> tuple[bool, Poly4 | None]:
    """Divide a homogeneous polynomial by w = z1 z4 - z2 z3 (leading term z1 z4).

    Returns (True, quotient) when the remainder vanishes, else (False, None).
    """
    if not p_hom.is_homogeneous:
        raise NotHomogeneous("divisibility test needs a homogeneous polynomial")
    rem = p_hom.as_dict()
    quotient: dict = {}
    scale = max(1.0, p_hom.norm())
    while True:
        lead = next((e for e in sorted(rem, reverse=True) if e[0] and e[3] and rem[e] != 0), None)
        if lead is None:
            break
        c = rem.pop(lead)
        q = (lead[0] - 1, lead[1], lead[2], lead[3] - 1)
        quotient[q] = quotient.get(q, 0) + c
        # rem -= c z^q (z1 z4 - z2 z3): the z1 z4 part cancels the leading term.
        shifted = (q[0], q[1] + 1, q[2] + 1, q[3])
        rem[shifted] = rem.get(shifted, 0) + c
    if all(abs(c) <= tol * scale for c in rem.values()):
        return True, Poly4.from_dict(quotient)
    return False, None


def monomials(degree: int) -> list[Exponent]:
    """All exponents of the given total degree, lex-descending."""
    out = []
    for combo in combinations_with_replacement(range(4), degree):
        e = [0, 0, 0, 0]
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def basis_H_poly(m: int) -> list[Poly4]:
    """Monomials of degree m - 1 and m: representatives of a basis of H_poly."""
    if m < 0:
        return []
    degrees = [m] if m == 0 else [m - 1, m]
    return [Poly4.monomial(e) for d in degrees for e in monomials(d)]


def reduction_rank(m: int) -> int:
    """Rank of the normal-form map restricted to polynomials of degree <= m."""
    domain = [e for d in range(m + 1) for e in monomials(d)]
    images = [reduce_mod_ideal(Poly4.monomial(e)) for e in domain]
    codomain = sorted({e for img in images for e, _ in img.terms})
    index = {e: i for i, e in enumerate(codomain)}
    mat = np.zeros((len(codomain), len(domain)))
    for j, img in enumerate(images):
        for e, c in img.terms:
            mat[index[e], j] = c.real
    return int(np.linalg.matrix_rank(mat))


def symbolic_field(X: tuple) -> list[Poly4]:
    """Entries (in z1, z2, z3, z4 order) of a Z - Z b for the symbolic matrix Z."""
    a, b = (np.asarray(v, dtype=complex) for v in X)
    Z = [[z(1), z(2)], [z(3), z(4)]]
    out = []
    for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)):
        entry = Poly4()
        for k in range(2):
            entry = entry + Z[k][j] * complex(a[i, k]) - Z[i][k] * complex(b[k, j])
        out.append(entry)
    return out


def quantum_operator(X: tuple, phi: Poly4, hbar: float) -> Poly4:
    """i hbar sum_k (d phi / dz_k) (a Z - Z b)_k, reduced modulo the ideal."""
    if not hbar > 0:
        raise ValueError("hbar must be positive")
    field = symbolic_field(X)
    out = Poly4()
    for k in range(1, 5):
        d = phi.derivative(k)
        if not d.is_zero:
            out = out + d * field[k - 1]
    return reduce_mod_ideal(out * (1j * hbar))
