"""Spherical, functional (Banach), and metric (Lipschitz) codes.

All three notions share the same axiom shape: unit "points", unit
"functionals", diagonal evaluations equal to 1, and off-diagonal
evaluations at most cos(theta). ``verify`` checks every axiom of the
matching definition and reports the coherence (largest off-diagonal
value). A fixed generator catalog provides the classical extremal
configurations used to anchor the bound modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

TOL_EQ = 1e-12
TOL_LIP = 1e-9

FAMILIES = (
    "simplex",
    "orthonormal",
    "cross_polytope",
    "icosahedron",
    "d4_roots",
    "e8_roots",
)

__all__ = [
    "FAMILIES",
    "LpSpace",
    "SphericalCode",
    "FunctionalCode",
    "PointedMetricSpace",
    "MetricCode",
    "VerifyReport",
    "verify",
    "evaluation_matrix",
    "norming_functional",
    "euclidean_to_functional",
    "embed_as_metric_code",
    "lipschitz_norm",
    "generate",
    "random_functional_code",
    "code_to_json_dict",
    "code_from_json_dict",
]


def _check_finite(arr: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains NaN or infinite entries")
    return arr


def lp_norm(x: np.ndarray, p: float) -> float:
    if p == math.inf:
        return float(np.max(np.abs(x)))
    return float(np.sum(np.abs(x) ** p) ** (1.0 / p))


def dual_exponent(p: float) -> float:
    if p == 1.0:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class LpSpace:
    """Real l_p space of a fixed dimension; p in [1, inf]."""

    p: float
    dim: int

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise ValueError("p must satisfy p >= 1")
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")


@dataclass(frozen=True)
class SphericalCode:
    """Unit vectors in R^dim with declared pairwise inner-product ceiling."""

    dim: int
    vectors: np.ndarray
    cos_theta: float

    kind = "spherical"

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        _check_finite(arr, "vectors")
        if arr.shape[1] != self.dim:
            raise ValueError(f"vectors have dimension {arr.shape[1]}, declared {self.dim}")
        object.__setattr__(self, "vectors", arr)
        object.__setattr__(self, "cos_theta", float(self.cos_theta))

    @property
    def n(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class FunctionalCode:
    """Points and dual functionals in an l_p space, paired by evaluation."""

    space: LpSpace
    points: np.ndarray
    functionals: np.ndarray
    cos_theta: float

    kind = "functional"

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        fns = np.atleast_2d(np.asarray(self.functionals, dtype=float))
        _check_finite(pts, "points")
        _check_finite(fns, "functionals")
        if pts.shape != fns.shape or pts.shape[1] != self.space.dim:
            raise ValueError("points/functionals shape mismatch")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "functionals", fns)
        object.__setattr__(self, "cos_theta", float(self.cos_theta))

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class PointedMetricSpace:
    """Finite metric space given by a distance matrix; point 0 is the base."""

    distance: np.ndarray
    base: int = 0

    def __post_init__(self):
        d = np.asarray(self.distance, dtype=float)
        _check_finite(d, "distance matrix")
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if self.base != 0:
            raise ValueError("base point index must be 0")
        object.__setattr__(self, "distance", d)

    @property
    def n_points(self) -> int:
        return len(self.distance)


@dataclass(frozen=True)
class MetricCode:
    """Lipschitz code: value tables f_j over a pointed metric space."""

    space: PointedMetricSpace
    point_indices: np.ndarray
    functions: np.ndarray
    cos_theta: float

    kind = "metric"

    def __post_init__(self):
        idx = np.atleast_1d(np.asarray(self.point_indices, dtype=int))
        fns = np.atleast_2d(np.asarray(self.functions, dtype=float))
        _check_finite(fns, "function tables")
        if fns.shape != (len(idx), self.space.n_points):
            raise ValueError("function tables must cover every space point")
        if np.any(idx < 0) or np.any(idx >= self.space.n_points):
            raise ValueError("point index out of range")
        object.__setattr__(self, "point_indices", idx)
        object.__setattr__(self, "functions", fns)
        object.__setattr__(self, "cos_theta", float(self.cos_theta))

    @property
    def n(self) -> int:
        return len(self.point_indices)


@dataclass
class VerifyReport:
    valid: bool
    max_offdiag: float | None
    worst_pair: tuple[int, int] | None
    axiom_failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def evaluation_matrix(code) -> np.ndarray:
    """M[j, k] = f_j(tau_k); the Gram matrix for spherical codes."""
    if isinstance(code, SphericalCode):
        return code.vectors @ code.vectors.T
    if isinstance(code, FunctionalCode):
        return code.functionals @ code.points.T
    if isinstance(code, MetricCode):
        return code.functions[:, code.point_indices]
    raise TypeError(f"not a code: {type(code).__name__}")


def lipschitz_norm(distance: np.ndarray, values: np.ndarray) -> float:
    """Exact Lipschitz norm of a value table: sup over point pairs."""
    n = len(values)
    best = 0.0
    for i in range(n):
        diff = np.abs(values - values[i])
        dist = distance[i]
        mask = dist > 0
        mask[i] = False
        if mask.any():
            best = max(best, float(np.max(diff[mask] / dist[mask])))
    return best


def _offdiag_report(matrix: np.ndarray):
    n = len(matrix)
    if n < 2:
        return None, None
    off = matrix.copy()
    np.fill_diagonal(off, -np.inf)
    j, k = np.unravel_index(int(np.argmax(off)), off.shape)
    return float(off[j, k]), (int(j), int(k))


def verify(code, cos_theta: float | None = None) -> VerifyReport:
    """Check every axiom of the code's definition.

    ``cos_theta`` overrides the declared angle when given (used by the CLI
    to re-verify a stored code against a different ceiling). NaN or
    infinite entries raise immediately; axiom failures are reported, not
    raised.
    """
    ct = code.cos_theta if cos_theta is None else float(cos_theta)
    failures: list[str] = []
    warnings: list[str] = []

    if isinstance(code, SphericalCode):
        norms = np.linalg.norm(code.vectors, axis=1)
        for j, v in enumerate(norms):
            if abs(v - 1.0) > TOL_EQ:
                failures.append(f"axiom (ii): vector {j} has norm {v!r}, not 1")
    elif isinstance(code, FunctionalCode):
        p = code.space.p
        q = dual_exponent(p)
        for j in range(code.n):
            np_ = lp_norm(code.points[j], p)
            nf = lp_norm(code.functionals[j], q)
            fjj = float(code.functionals[j] @ code.points[j])
            if abs(np_ - 1.0) > TOL_EQ:
                failures.append(f"axiom (ii): point {j} has l_{p} norm {np_!r}")
            if abs(nf - 1.0) > TOL_EQ:
                failures.append(f"axiom (i): functional {j} has l_{q} norm {nf!r}")
            if abs(fjj - 1.0) > TOL_EQ:
                failures.append(f"axiom (iii): f_{j}(tau_{j}) = {fjj!r}, not 1")
    elif isinstance(code, MetricCode):
        d = code.space.distance
        if np.any(np.abs(np.diagonal(d)) > TOL_EQ):
            failures.append("metric: nonzero diagonal in the distance matrix")
        if np.any(d < -TOL_EQ):
            failures.append("metric: negative distance")
        if np.max(np.abs(d - d.T)) > TOL_EQ:
            failures.append("metric: distance matrix not symmetric")
        for k in range(code.space.n_points):
            slack = d - (d[:, k][:, None] + d[k, :][None, :])
            if np.max(slack) > TOL_EQ:
                i, j = np.unravel_index(int(np.argmax(slack)), slack.shape)
                failures.append(
                    f"metric: triangle inequality fails for ({i},{j}) via {k}"
                )
                break
        off = d.copy()
        np.fill_diagonal(off, np.inf)
        if off.size and np.min(off) <= TOL_EQ:
            warnings.append("duplicate space points (zero off-diagonal distance)")
        base = code.space.base
        for j in range(code.n):
            tau = int(code.point_indices[j])
            f = code.functions[j]
            if abs(f[base]) > TOL_EQ:
                failures.append(f"axiom: f_{j}(base) = {f[base]!r}, not 0")
            lip = lipschitz_norm(d, f)
            if abs(lip - 1.0) > TOL_LIP:
                failures.append(f"axiom (i): f_{j} has Lipschitz norm {lip!r}")
            if abs(d[tau, base] - 1.0) > TOL_EQ:
                failures.append(
                    f"axiom (ii): point {j} lies at distance {d[tau, base]!r} from base"
                )
            if abs(f[tau] - 1.0) > TOL_EQ:
                failures.append(f"axiom (iii): f_{j}(tau_{j}) = {f[tau]!r}, not 1")
        if len(np.unique(code.point_indices)) < code.n:
            warnings.append("duplicate selected points tau_j")
    else:
        raise TypeError(f"not a code: {type(code).__name__}")

    matrix = evaluation_matrix(code)
    max_offdiag, worst_pair = _offdiag_report(matrix)
    if max_offdiag is not None and max_offdiag > ct + TOL_EQ:
        j, k = worst_pair
        failures.append(
            f"axiom (iv): f_{j}(tau_{k}) = {max_offdiag!r} exceeds cos_theta = {ct!r}"
        )
    if isinstance(code, SphericalCode) and code.n >= 2:
        gram = matrix.copy()
        np.fill_diagonal(gram, -np.inf)
        if np.max(gram) >= 1.0 - TOL_EQ:
            warnings.append("duplicate vectors (off-diagonal inner product 1)")
    return VerifyReport(
        valid=not failures,
        max_offdiag=max_offdiag,
        worst_pair=worst_pair,
        axiom_failures=failures,
        warnings=warnings,
    )


def norming_functional(x: np.ndarray, p: float) -> np.ndarray:
    """Unique unit functional f with f(x) = 1 for a unit vector x in l_p.

    Componentwise sign(x_i) |x_i|^(p-1), the Hoelder equality case. Only
    smooth norms (1 < p < inf) have a unique norming functional; p = 1 and
    p = inf are rejected.
    """
    if not (1.0 < p < math.inf):
        raise ValueError("non-smooth norm: supply the functional explicitly")
    x = _check_finite(np.asarray(x, dtype=float), "vector")
    if abs(lp_norm(x, p) - 1.0) > TOL_EQ:
        raise ValueError("x must be a unit vector in l_p")
    return np.sign(x) * np.abs(x) ** (p - 1.0)


def euclidean_to_functional(code: SphericalCode) -> FunctionalCode:
    """View a spherical code as an l_2 functional code (f_j = tau_j)."""
    report = verify(code)
    if not report.valid:
        raise ValueError(f"invalid spherical code: {report.axiom_failures}")
    return FunctionalCode(
        space=LpSpace(2.0, code.dim),
        points=code.vectors.copy(),
        functionals=code.vectors.copy(),
        cos_theta=code.cos_theta,
    )


def embed_as_metric_code(code: SphericalCode) -> MetricCode:
    """Embed a spherical code as a Lipschitz code over {0} + its vectors.

    Each f_j is the inner product with tau_j restricted to the finite
    point set; the pair (tau_j, 0) witnesses Lipschitz norm exactly 1.
    """
    report = verify(code)
    if not report.valid:
        raise ValueError(f"invalid spherical code: {report.axiom_failures}")
    if report.max_offdiag is not None and report.max_offdiag > code.cos_theta + TOL_EQ:
        raise ValueError("coherence exceeds the declared cos_theta")
    pts = np.vstack([np.zeros(code.dim), code.vectors])
    diff = pts[:, None, :] - pts[None, :, :]
    distance = np.linalg.norm(diff, axis=2)
    functions = pts @ code.vectors.T  # column j = <., tau_j>
    functions = functions.T
    space = PointedMetricSpace(distance)
    for j in range(code.n):
        lip = lipschitz_norm(distance, functions[j])
        if lip < 1.0 - TOL_LIP:
            raise ValueError(
                f"add witness points: f_{j} attains Lipschitz norm only {lip!r} "
                "on the finite point set"
            )
    return MetricCode(
        space=space,
        point_indices=np.arange(1, code.n + 1),
        functions=functions,
        cos_theta=code.cos_theta,
    )


def _simplex_vectors(d: int) -> np.ndarray:
    """d+1 unit vectors in R^d with pairwise inner products -1/d."""
    if d == 1:
        return np.array([[1.0], [-1.0]])
    sub = _simplex_vectors(d - 1)
    scale = math.sqrt(1.0 - 1.0 / d**2)
    out = np.zeros((d + 1, d))
    out[0, 0] = 1.0
    out[1:, 0] = -1.0 / d
    out[1:, 1:] = scale * sub
    return out


def _icosahedron_vectors() -> np.ndarray:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    scale = 1.0 / math.sqrt(1.0 + phi * phi)
    vecs = []
    for a, b in product((1.0, -1.0), repeat=2):
        vecs.append((0.0, a, b * phi))
        vecs.append((a, b * phi, 0.0))
        vecs.append((b * phi, 0.0, a))
    return np.array(vecs) * scale


def _d4_root_vectors() -> np.ndarray:
    vecs = []
    for i, j in combinations(range(4), 2):
        for si, sj in product((1.0, -1.0), repeat=2):
            v = np.zeros(4)
            v[i], v[j] = si, sj
            vecs.append(v)
    return np.array(vecs) / math.sqrt(2.0)


def _e8_root_vectors() -> np.ndarray:
    vecs = []
    for i, j in combinations(range(8), 2):
        for si, sj in product((1.0, -1.0), repeat=2):
            v = np.zeros(8)
            v[i], v[j] = si, sj
            vecs.append(v)
    for signs in product((0.5, -0.5), repeat=8):
        if sum(1 for s in signs if s < 0) % 2 == 0:
            vecs.append(np.array(signs))
    return np.array(vecs) / math.sqrt(2.0)


def generate(family: str, dim: int | None = None) -> SphericalCode:
    """Build a catalog code at its canonical cos_theta.

    Families: simplex(d), orthonormal(d), cross_polytope(d), icosahedron,
    d4_roots, e8_roots.
    """
    if family == "simplex":
        if dim is None or dim < 1:
            raise ValueError("simplex requires a dimension >= 1")
        return SphericalCode(dim, _simplex_vectors(dim), -1.0 / dim)
    if family == "orthonormal":
        if dim is None or dim < 1:
            raise ValueError("orthonormal requires a dimension >= 1")
        return SphericalCode(dim, np.eye(dim), 0.0)
    if family == "cross_polytope":
        if dim is None or dim < 1:
            raise ValueError("cross_polytope requires a dimension >= 1")
        return SphericalCode(dim, np.vstack([np.eye(dim), -np.eye(dim)]), 0.0)
    if family == "icosahedron":
        return SphericalCode(3, _icosahedron_vectors(), 1.0 / math.sqrt(5.0))
    if family == "d4_roots":
        return SphericalCode(4, _d4_root_vectors(), 0.5)
    if family == "e8_roots":
        return SphericalCode(8, _e8_root_vectors(), 0.5)
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


def random_functional_code(
    rng: np.random.Generator, p: float, dim: int, n_points: int
) -> FunctionalCode:
    """Random l_p functional code; cos_theta is set to its own coherence."""
    pts = rng.normal(size=(n_points, dim))
    for j in range(n_points):
        pts[j] /= lp_norm(pts[j], p)
    fns = np.array([norming_functional(v, p) for v in pts])
    matrix = fns @ pts.T
    if n_points >= 2:
        off = matrix.copy()
        np.fill_diagonal(off, -np.inf)
        ct = float(np.max(off))
    else:
        ct = 0.0
    return FunctionalCode(LpSpace(p, dim), pts, fns, ct)


def code_to_json_dict(code) -> dict:
    if isinstance(code, SphericalCode):
        return {
            "kind": "spherical",
            "dim": int(code.dim),
            "cos_theta": float(code.cos_theta),
            "vectors": [[float(v) for v in row] for row in code.vectors],
        }
    if isinstance(code, FunctionalCode):
        p = code.space.p
        return {
            "kind": "functional",
            "space": {
                "type": "lp",
                "p": "inf" if p == math.inf else float(p),
                "dim": int(code.space.dim),
            },
            "points": [[float(v) for v in row] for row in code.points],
            "functionals": [[float(v) for v in row] for row in code.functionals],
            "cos_theta": float(code.cos_theta),
        }
    if isinstance(code, MetricCode):
        return {
            "kind": "metric",
            "distance": [[float(v) for v in row] for row in code.space.distance],
            "base": int(code.space.base),
            "point_indices": [int(i) for i in code.point_indices],
            "functions": [[float(v) for v in row] for row in code.functions],
            "cos_theta": float(code.cos_theta),
        }
    raise TypeError(f"not a code: {type(code).__name__}")


def code_from_json_dict(data: dict):
    kind = data.get("kind")
    if kind == "spherical":
        return SphericalCode(
            dim=int(data["dim"]),
            vectors=np.array(data["vectors"], dtype=float),
            cos_theta=float(data["cos_theta"]),
        )
    if kind == "functional":
        p = data["space"]["p"]
        p = math.inf if p == "inf" else float(p)
        return FunctionalCode(
            space=LpSpace(p, int(data["space"]["dim"])),
            points=np.array(data["points"], dtype=float),
            functionals=np.array(data["functionals"], dtype=float),
            cos_theta=float(data["cos_theta"]),
        )
    if kind == "metric":
        return MetricCode(
            space=PointedMetricSpace(
                np.array(data["distance"], dtype=float), int(data.get("base", 0))
            ),
            point_indices=np.array(data["point_indices"], dtype=int),
            functions=np.array(data["functions"], dtype=float),
            cos_theta=float(data["cos_theta"]),
        )
    raise ValueError(f"unknown code kind {kind!r}")
