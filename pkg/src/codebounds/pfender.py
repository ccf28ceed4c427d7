"""Pfender-style upper bounds (phi(1) + c) / c and their verification.

A function phi on [-1, 1] and a constant c > 0 certify that any code
whose evaluation values satisfy

    (i)  sum_{j,k} phi(f_j(tau_k)) >= 0      (diagonal included), and
    (ii) phi(r) + c <= 0 on [-1, cos_theta]

has at most (phi(1) + c) / c points. Structural certificates establish
condition (i) for every Euclidean code of a given dimension through
nonnegative Gegenbauer coefficients; per-code checks evaluate both
conditions directly on a concrete code, either over the whole interval
or only on the finite set of observed off-diagonal values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import codes
from .errors import TheoremViolationError
from .gegenbauer import GegenbauerPoly, basis_values
from .scanning import scan_maximum

COND_TOL = 1e-9
COEFF_TOL = 1e-12
BOUND_SLACK = 1e-9

__all__ = [
    "PhiSpec",
    "PfenderVerification",
    "PfenderCertificate",
    "PfenderCheckResult",
    "pfender_bound",
    "double_sum",
    "functional_pfender_check",
    "phi_to_json_dict",
    "phi_from_json_dict",
    "certificate_to_json_dict",
    "certificate_from_json_dict",
]

_BASES = ("gegenbauer", "monomial", "table")


@dataclass(frozen=True)
class PhiSpec:
    """A function on [-1, 1] given in one of three representations.

    gegenbauer: coeffs are Gegenbauer coefficients for dimension ``dim``;
    monomial: ascending monomial coefficients; table: values at uniformly
    spaced nodes over [-1, 1] (piecewise-linear interpolation between
    nodes, spacing is the certificate author's responsibility).
    """

    basis: str
    coeffs: np.ndarray
    dim: int | None = None

    def __post_init__(self):
        if self.basis not in _BASES:
            raise ValueError(f"unknown phi basis {self.basis!r}")
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if arr.ndim != 1 or arr.size == 0 or not np.all(np.isfinite(arr)):
            raise ValueError("phi coefficients must be a finite 1-d vector")
        if self.basis == "gegenbauer":
            if self.dim is None or self.dim < 2:
                raise ValueError("gegenbauer phi requires an ambient dimension >= 2")
        if self.basis == "table" and arr.size < 2:
            raise ValueError("table phi needs at least two nodes")
        object.__setattr__(self, "coeffs", arr)

    def __call__(self, r):
        arr = np.asarray(r, dtype=float)
        if self.basis == "gegenbauer":
            values = basis_values(self.dim, len(self.coeffs) - 1, arr)
            out = np.tensordot(self.coeffs, values, axes=(0, 0))
        elif self.basis == "monomial":
            out = np.polynomial.polynomial.polyval(arr, self.coeffs)
        else:
            nodes = np.linspace(-1.0, 1.0, len(self.coeffs))
            out = np.interp(arr, nodes, self.coeffs)
        if arr.shape == ():
            return float(out)
        return out

    @property
    def phi_at_1(self) -> float:
        return float(self(1.0))

    @property
    def node_spacing(self) -> float | None:
        if self.basis != "table":
            return None
        return 2.0 / (len(self.coeffs) - 1)

    def as_gegenbauer(self) -> GegenbauerPoly | None:
        if self.basis != "gegenbauer":
            return None
        return GegenbauerPoly(self.dim, self.coeffs)


@dataclass
class PfenderVerification:
    condition_i_ok: bool
    condition_i_evidence: str
    condition_ii_ok: bool
    condition_ii_margin: float  # max of phi(r) + c over the checked set
    condition_ii_location: float | None
    passed: bool
    special_case_le_one: bool  # phi(1) + c <= 1, so the 1/c clause applies
    messages: list[str] = field(default_factory=list)


@dataclass
class PfenderCertificate:
    phi: PhiSpec
    c: float
    cos_theta: float
    mode: str  # "structural" | "per_code" | "finite_set"
    bound_real: float
    bound_int: int
    verification: PfenderVerification | None = None


@dataclass
class PfenderCheckResult:
    certificate: PfenderCertificate
    applicable: bool
    reason: str | None
    n: int
    slack: float | None  # bound_real - n when applicable


def _bound_values(phi: PhiSpec, c: float) -> tuple[float, int, bool]:
    bound_real = (phi.phi_at_1 + c) / c
    bound_int = math.floor(bound_real + 1e-9)
    special = phi.phi_at_1 + c <= 1.0 + COEFF_TOL
    return bound_real, bound_int, special


def _interval_margin(phi: PhiSpec, c: float, cos_theta: float, grid: int):
    val, loc = scan_maximum(lambda r: phi(r) + c, -1.0, float(cos_theta), grid)
    return val, loc


def pfender_bound(
    phi: PhiSpec, c: float, cos_theta: float, grid_points: int = 2048
) -> PfenderCertificate:
    """Structural certificate: condition (i) from nonnegative Gegenbauer
    coefficients, condition (ii) by a refined grid scan of phi(r) + c.

    The returned certificate carries a verification report; ``passed`` is
    False when phi is not a nonnegative Gegenbauer combination (condition
    (i) not established) or when condition (ii) fails, with the violation
    location recorded.
    """
    if not (c > 0.0):
        raise ValueError("c must be strictly positive")
    if not (-1.0 <= cos_theta <= 1.0):
        raise ValueError("cos_theta must lie in [-1, 1]")
    messages: list[str] = []
    if phi.basis == "gegenbauer":
        min_coeff = float(np.min(phi.coeffs))
        if min_coeff >= -COEFF_TOL:
            ok_i = True
            evidence = (
                f"nonnegative Gegenbauer coefficients for dimension {phi.dim} "
                f"(min coefficient {min_coeff!r})"
            )
        else:
            ok_i = False
            evidence = (
                "condition (i) not established: negative Gegenbauer coefficient "
                f"{min_coeff!r}"
            )
    else:
        ok_i = False
        evidence = (
            "condition (i) not established: structural mode requires a "
            "Gegenbauer representation"
        )
    margin, loc = _interval_margin(phi, c, cos_theta, grid_points)
    ok_ii = margin <= COND_TOL
    if not ok_ii:
        messages.append(f"not a certificate: phi(r) + c = {margin!r} at r = {loc!r}")
    if phi.node_spacing is not None:
        messages.append(f"table phi with node spacing {phi.node_spacing!r}")
    bound_real, bound_int, special = _bound_values(phi, c)
    verification = PfenderVerification(
        condition_i_ok=ok_i,
        condition_i_evidence=evidence,
        condition_ii_ok=ok_ii,
        condition_ii_margin=margin,
        condition_ii_location=loc,
        passed=ok_i and ok_ii,
        special_case_le_one=special,
        messages=messages,
    )
    return PfenderCertificate(
        phi=phi,
        c=float(c),
        cos_theta=float(cos_theta),
        mode="structural",
        bound_real=bound_real,
        bound_int=bound_int,
        verification=verification,
    )


def double_sum(phi: PhiSpec, M: np.ndarray) -> float:
    """sum_{j,k} phi(M[j,k]) including diagonal terms.

    Entries must lie in [-1, 1] up to 1e-12 (the code axioms guarantee
    this); anything further out raises, naming the offending cell.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if not np.all(np.isfinite(M)):
        raise ValueError("evaluation matrix contains NaN or infinite entries")
    outside = np.abs(M) > 1.0 + 1e-12
    if outside.any():
        j, k = np.unravel_index(int(np.argmax(np.abs(M))), M.shape)
        raise ValueError(
            f"evaluation value {M[j, k]!r} at (j={j}, k={k}) lies outside [-1, 1]"
        )
    clipped = np.clip(M, -1.0, 1.0)
    return float(np.sum(phi(clipped.ravel())))


def functional_pfender_check(
    code,
    phi: PhiSpec,
    c: float,
    variant: str = "interval",
    cos_theta: float | None = None,
    grid_points: int = 2048,
) -> PfenderCheckResult:
    """Check both bound conditions directly on a concrete code.

    ``variant`` "interval" checks phi(r) + c <= 0 on all of
    [-1, cos_theta]; "finite_set" checks it only on the observed
    off-diagonal values f_j(tau_k). When both conditions hold the bound
    must cover the code; a violation raises TheoremViolationError (it
    would disprove the bound) instead of being folded into the report.
    """
    if not (c > 0.0):
        raise ValueError("c must be strictly positive")
    if variant not in ("interval", "finite_set"):
        raise ValueError(f"unknown variant {variant!r}")
    ct = float(code.cos_theta if cos_theta is None else cos_theta)
    report = codes.verify(code, cos_theta=ct)
    if not report.valid:
        raise ValueError(
            f"code fails its own verification at cos_theta={ct!r}: "
            f"{report.axiom_failures}"
        )
    n = code.n
    M = codes.evaluation_matrix(code)
    total = double_sum(phi, M)
    ok_i = total >= -COND_TOL * n * n
    evidence = f"double sum = {total!r} over {n}x{n} evaluations"

    messages: list[str] = []
    if variant == "interval":
        margin, loc = _interval_margin(phi, c, ct, grid_points)
    else:
        if n >= 2:
            off = M[~np.eye(n, dtype=bool)]
            vals = phi(np.clip(off, -1.0, 1.0)) + c
            i = int(np.argmax(vals))
            margin, loc = float(vals[i]), float(off[i])
        else:
            margin, loc = -math.inf, None
    ok_ii = margin <= COND_TOL
    bound_real, bound_int, special = _bound_values(phi, c)
    applicable = ok_i and ok_ii
    reason = None
    if not applicable:
        parts = []
        if not ok_i:
            parts.append(f"condition (i) fails: {evidence}")
        if not ok_ii:
            parts.append(f"condition (ii) fails: phi(r) + c = {margin!r} at r = {loc!r}")
        reason = "certificate not applicable to this code: " + "; ".join(parts)
    slack = None
    if applicable:
        if n > bound_real + BOUND_SLACK:
            raise TheoremViolationError(
                f"code with n = {n} exceeds certified bound {bound_real!r} "
                f"(phi(1) = {phi.phi_at_1!r}, c = {c!r})"
            )
        slack = bound_real - n
    if phi.node_spacing is not None:
        messages.append(f"table phi with node spacing {phi.node_spacing!r}")
    verification = PfenderVerification(
        condition_i_ok=ok_i,
        condition_i_evidence=evidence,
        condition_ii_ok=ok_ii,
        condition_ii_margin=margin if margin != -math.inf else float("-inf"),
        condition_ii_location=loc,
        passed=applicable,
        special_case_le_one=special,
        messages=messages,
    )
    certificate = PfenderCertificate(
        phi=phi,
        c=float(c),
        cos_theta=ct,
        mode="finite_set" if variant == "finite_set" else "per_code",
        bound_real=bound_real,
        bound_int=bound_int,
        verification=verification,
    )
    return PfenderCheckResult(
        certificate=certificate,
        applicable=applicable,
        reason=reason,
        n=n,
        slack=slack,
    )


def phi_to_json_dict(phi: PhiSpec) -> dict:
    return {
        "basis": phi.basis,
        "dim": None if phi.dim is None else int(phi.dim),
        "coeffs": [float(v) for v in phi.coeffs],
    }


def phi_from_json_dict(data: dict) -> PhiSpec:
    dim = data.get("dim")
    return PhiSpec(
        basis=data["basis"],
        coeffs=np.array(data["coeffs"], dtype=float),
        dim=None if dim is None else int(dim),
    )


def certificate_to_json_dict(cert: PfenderCertificate) -> dict:
    return {
        "kind": "pfender",
        "variant": "finite_set" if cert.mode == "finite_set" else "interval",
        "phi": phi_to_json_dict(cert.phi),
        "c": float(cert.c),
        "cos_theta": float(cert.cos_theta),
        "bound_real": float(cert.bound_real),
        "bound_int": int(cert.bound_int),
    }


def certificate_from_json_dict(data: dict) -> PfenderCertificate:
    if data.get("kind") != "pfender":
        raise ValueError("not a pfender certificate")
    phi = phi_from_json_dict(data["phi"])
    variant = data["variant"]
    if variant not in ("interval", "finite_set"):
        raise ValueError(f"unknown certificate variant {variant!r}")
    if variant == "finite_set":
        mode = "finite_set"
    elif phi.basis == "gegenbauer" and float(np.min(phi.coeffs)) >= -COEFF_TOL:
        mode = "structural"
    else:
        mode = "per_code"
    return PfenderCertificate(
        phi=phi,
        c=float(data["c"]),
        cos_theta=float(data["cos_theta"]),
        mode=mode,
        bound_real=float(data["bound_real"]),
        bound_int=int(data["bound_int"]),
    )
