"""Closed-form field-size bounds, evaluated exactly.

Combinatorial terms use exact integer arithmetic; irrational thresholds are
reported as radicands with a divisor so callers can gate parameters by exact
cross-multiplication instead of floating comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import MissingConstant


@dataclass(frozen=True)
class BoundReport:
    name: str
    params: dict
    value: object  # int | Fraction | dict with "radicand"/"divisor"
    approx: float
    applicability: str

    def to_dict(self) -> dict:
        if isinstance(self.value, int):
            v = str(self.value)
        elif isinstance(self.value, Fraction):
            v = {"numerator": str(self.value.numerator),
                 "denominator": str(self.value.denominator)}
        else:
            v = self.value
        return {"name": self.name, "params": dict(sorted(self.params.items())),
                "value": v, "approx": self.approx, "applicability": self.applicability}


def comb_le(n: int, k: int) -> int:
    """Sum of C(n, i) for 0 <= i <= k."""
    return sum(comb(n, i) for i in range(min(k, n) + 1))


def c0_constant(m: int, b: int) -> int:
    return factorial(m + 1) * comb_le(m * b * (m - 1), 2 * b * (m - 1))


def _need(params: dict, *names):
    missing = [x for x in names if x not in params]
    if missing:
        raise MissingConstant(f"missing parameter(s): {', '.join(missing)}")
    return [params[x] for x in names]


def bound(name: str, params: dict) -> BoundReport:
    """Evaluate a named field-size bound; see BOUND_NAMES for the catalogue."""
    if name == "gopalan_general":
        m, b, n = _need(params, "m", "b", "n")
        redundancy = n + b * m - b
        value = redundancy * comb_le(m * n, redundancy)
        return BoundReport(name, params, value, float(value),
                           "q above this admits an MR instantiation of any topology")
    if name == "kmg_poly":
        m, b, n = _need(params, "m", "b", "n")
        value = c0_constant(m, b) * n ** (2 * b * (m - 1)) + n ** (b - 1)
        return BoundReport(name, params, value, float(value),
                           "q at or above this admits an MR code for T_{m x n}(1,b,0)")
    if name in ("t4_upper", "t3_upper"):
        (n,) = _need(params, "n")
        if "C" not in params:
            raise MissingConstant("the n^5/log n bounds need the constant C supplied")
        c = params["C"]
        approx = c * n ** 5 / math.log(n)
        return BoundReport(name, params, {"formula": "C*n^5/log(n)", "C": c},
                           approx, "existence threshold up to the unspecified constant")
    if name == "t4_lower_threshold":
        (n,) = _need(params, "n")
        value = Fraction((n - 3) ** 2, 4) + 2
        if value.denominator == 1:
            value = int(value)
        return BoundReport(name, params, value, float(value),
                           "q below (n-3)^2/4 + 2 admits no MR code for T_{4 x n}(1,2,0)")
    if name == "t3_lower_threshold":
        (n,) = _need(params, "n")
        radicand = n * n - 11 * n + 34
        approx = math.sqrt(radicand) / 2 if radicand >= 0 else float("nan")
        return BoundReport(name, params, {"radicand": radicand, "divisor": 2}, approx,
                           "q below sqrt(n^2-11n+34)/2 admits no MR code for T_{3 x n}(1,3,0)")
    if name == "sidon_max":
        (N,) = _need(params, "N")
        return BoundReport(name, params, {"radicand": 4 * N, "divisor": 1, "offset": 1},
                           2 * math.sqrt(N) + 1,
                           "a 2-Sidon subset of Z_N has at most 2*sqrt(N) + 1 elements")
    if name == "type_count":
        m, b = _need(params, "m", "b")
        value = comb_le(m * b * (m - 1), 2 * b * (m - 1))
        return BoundReport(name, params, value, float(value),
                           "upper bound on the number of regular irreducible pattern types")
    if name == "hypergraph_alpha":
        nv, dr, r = _need(params, "nv", "delta_r", "r")
        if "c_r" not in params:
            raise MissingConstant("hypergraph_alpha needs the constant c_r supplied")
        c_r = params["c_r"]
        ratio = nv / dr
        approx = c_r * (ratio * math.log(ratio)) ** (1.0 / r)
        return BoundReport(name, params, {"formula": "c_r*((nv/D)*log(nv/D))^(1/r)"},
                           approx, "independence number lower bound, valid for small r-degree")
    raise ValueError(f"unknown bound name {name!r}")


BOUND_NAMES = ("gopalan_general", "kmg_poly", "t4_upper", "t3_upper",
               "t4_lower_threshold", "t3_lower_threshold", "sidon_max",
               "type_count", "hypergraph_alpha")


def q_below_t4_threshold(q: int, n: int) -> bool:
    """Exact check of q < (n-3)^2/4 + 2."""
    return 4 * q < (n - 3) ** 2 + 8


def q_below_t3_threshold(q: int, n: int) -> bool:
    """Exact check of q < sqrt(n^2 - 11n + 34)/2."""
    radicand = n * n - 11 * n + 34
    return radicand > 0 and 4 * q * q < radicand


def exceeds_sidon_bound(size: int, N: int) -> bool:
    """Exact check of size > 2*sqrt(N) + 1."""
    return size >= 1 and (size - 1) ** 2 > 4 * N
