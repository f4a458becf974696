"""Per-hbar quantization summaries and H_poly membership."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import NotApplicable, Undetermined
from ..global_geom import total_volume
from ..profiles.core import MetricProfile
from .cutoff import dim_H_poly, k_of, max_degree_m
from .poly import Poly4, is_quadric_divisible, reduce_mod_ideal


class DivisibleTopPartWarning(UserWarning):
    """The top homogeneous part is divisible by z1 z4 - z2 z3, so its degree
    alone does not decide square integrability."""


def in_H_poly(p: MetricProfile, hbar: float, phi: Poly4) -> bool:
    """Whether phi (restricted to SL(2, C)) is square integrable.

    The reduced representative is tested: it lies in H_poly iff its degree is
    at most m, provided its top homogeneous part is not divisible by the
    quadric (a warning is issued otherwise).
    """
    rep = reduce_mod_ideal(phi)
    if rep.is_zero:
        return True
    divisible, _ = is_quadric_divisible(rep.top_part())
    if divisible:
        warnings.warn("top homogeneous part is divisible by z1 z4 - z2 z3", DivisibleTopPartWarning)
    res = max_degree_m(p, hbar)
    if res.kind == "infinite":
        return True
    if res.kind != "finite":
        raise Undetermined(res.note or "the integrability cutoff is undetermined")
    return rep.degree <= res.m


def _num(v):
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return v


@dataclass
class QuantizationReport:
    label: str
    hbar: float
    m: Union[int, str]
    k: Union[float, str]
    dim_H_poly: Union[int, float, str]
    omega: float
    semiclassical_ratio: Optional[float] = None
    bounds: Optional[tuple[float, float]] = None
    per_degree: list = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "profile": self.label,
            "hbar": self.hbar,
            "m": self.m,
            "k": _num(self.k),
            "dim_H_poly": _num(self.dim_H_poly),
            "omega": _num(self.omega),
            "semiclassical_ratio": self.semiclassical_ratio,
            "bounds": None if self.bounds is None else list(self.bounds),
            "per_degree": [{"l": l, **v.to_dict()} for l, v in self.per_degree],
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def quantization_report(p: MetricProfile, hbar: float) -> QuantizationReport:
    omega = total_volume(p)
    try:
        k: Union[float, str] = k_of(p)
    except NotApplicable:
        k = "not applicable"
    except Undetermined:
        k = "undetermined"
    res = max_degree_m(p, hbar)
    if res.kind == "finite":
        m: Union[int, str] = res.m
        dim: Union[int, float, str] = dim_H_poly(res.m)
    elif res.kind == "infinite":
        m, dim = "infinite", math.inf
    else:
        m, dim = "undetermined", "undetermined"
    ratio = None
    if res.kind == "finite" and math.isfinite(omega):
        ratio = dim * (2.0 * math.pi * hbar) ** 3 / omega
    return QuantizationReport(
        label=p.label,
        hbar=hbar,
        m=m,
        k=k,
        dim_H_poly=dim,
        omega=omega,
        semiclassical_ratio=ratio,
        bounds=res.bounds,
        per_degree=res.per_degree,
        note=res.note,
    )
