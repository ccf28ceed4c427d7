"""Code representations, axiom verification, catalog, embeddings."""

import json
import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from codebounds import jsonutil
from codebounds.codes import (
    FunctionalCode,
    LpSpace,
    MetricCode,
    PointedMetricSpace,
    SphericalCode,
    code_from_json_dict,
    code_to_json_dict,
    embed_as_metric_code,
    euclidean_to_functional,
    evaluation_matrix,
    generate,
    lipschitz_norm,
    norming_functional,
    random_functional_code,
    verify,
)


class TestVerifySpherical:
    def test_orthonormal_basis(self):
        code = SphericalCode(3, np.eye(3), cos_theta=0.0)
        report = verify(code)
        assert report.valid
        assert report.max_offdiag == 0.0

    def test_icosahedron_coherence(self):
        code = generate("icosahedron")
        report = verify(code, cos_theta=0.5)
        assert report.valid
        # brute-force oracle over all 66 pairs
        oracle = max(
            float(code.vectors[j] @ code.vectors[k])
            for j, k in combinations(range(12), 2)
        )
        assert report.max_offdiag == pytest.approx(oracle, abs=0.0)
        assert report.max_offdiag == pytest.approx(1.0 / math.sqrt(5.0), abs=1e-12)

    def test_duplicate_vector_invalid(self):
        v = np.array([1.0, 0.0, 0.0])
        code = SphericalCode(3, np.array([v, v]), cos_theta=0.5)
        report = verify(code)
        assert not report.valid
        assert report.max_offdiag == pytest.approx(1.0, abs=1e-12)
        assert any("axiom (iv)" in f for f in report.axiom_failures)
        assert any("duplicate" in w for w in report.warnings)

    def test_non_unit_vector_fails_axiom(self):
        code = SphericalCode(2, np.array([[0.5, 0.0], [0.0, 1.0]]), cos_theta=0.5)
        report = verify(code)
        assert not report.valid
        assert any("axiom (ii)" in f for f in report.axiom_failures)

    def test_nan_is_structural_error(self):
        with pytest.raises(ValueError):
            SphericalCode(2, np.array([[np.nan, 0.0]]), cos_theta=0.5)


class TestNormingFunctional:
    def test_euclidean_self_duality(self):
        f = norming_functional(np.array([0.6, 0.8]), 2.0)
        assert np.allclose(f, [0.6, 0.8], atol=1e-15)

    def test_p4_hand_computation(self):
        x = np.array([2.0 ** -0.25, 2.0 ** -0.25])
        f = norming_functional(x, 4.0)
        assert f == pytest.approx([2.0 ** -0.75, 2.0 ** -0.75], abs=1e-14)
        q = 4.0 / 3.0
        assert float(np.sum(np.abs(f) ** q) ** (1.0 / q)) == pytest.approx(1.0, abs=1e-10)
        assert float(f @ x) == pytest.approx(1.0, abs=1e-10)

    def test_riesz_identity_random(self, rng):
        for _ in range(100):
            d = int(rng.integers(2, 17))
            x = rng.normal(size=d)
            x /= np.linalg.norm(x)
            assert np.max(np.abs(norming_functional(x, 2.0) - x)) <= 1e-12

    def test_non_smooth_norms_rejected(self):
        x = np.array([1.0, 0.0])
        with pytest.raises(ValueError, match="non-smooth"):
            norming_functional(x, 1.0)
        with pytest.raises(ValueError, match="non-smooth"):
            norming_functional(x, math.inf)

    def test_requires_unit_vector(self):
        with pytest.raises(ValueError):
            norming_functional(np.array([2.0, 0.0]), 2.0)

    def test_duality_general_p(self, rng):
        for p in (1.5, 3.0, 7.0):
            q = p / (p - 1.0)
            for _ in range(20):
                x = rng.normal(size=5)
                x /= float(np.sum(np.abs(x) ** p) ** (1.0 / p))
                f = norming_functional(x, p)
                assert float(np.sum(np.abs(f) ** q) ** (1.0 / q)) == pytest.approx(
                    1.0, abs=1e-10
                )
                assert float(f @ x) == pytest.approx(1.0, abs=1e-10)


class TestEuclideanToFunctional:
    def test_orthonormal_gives_kronecker_pairs(self):
        code = euclidean_to_functional(generate("orthonormal", dim=4))
        M = evaluation_matrix(code)
        assert np.allclose(M, np.eye(4), atol=1e-15)
        assert verify(code).valid

    def test_coherence_preserved(self):
        for family, dim in (("icosahedron", None), ("simplex", 5), ("d4_roots", None)):
            spherical = generate(family, dim=dim)
            functional = euclidean_to_functional(spherical)
            assert verify(functional).valid
            assert verify(functional).max_offdiag == pytest.approx(
                verify(spherical).max_offdiag, abs=0.0
            )

    def test_simplex_offdiagonals(self):
        code = euclidean_to_functional(generate("simplex", dim=4))
        M = evaluation_matrix(code)
        off = M[~np.eye(5, dtype=bool)]
        assert off == pytest.approx(np.full(20, -0.25), abs=1e-12)

    def test_rejects_invalid_input(self):
        bad = SphericalCode(2, np.array([[2.0, 0.0]]), cos_theta=0.0)
        with pytest.raises(ValueError):
            euclidean_to_functional(bad)


class TestMetricEmbedding:
    def test_single_vector_two_point_space(self):
        code = SphericalCode(3, np.array([[0.0, 0.0, 1.0]]), cos_theta=0.0)
        metric = embed_as_metric_code(code)
        assert metric.n == 1
        assert metric.space.n_points == 2
        assert verify(metric).valid

    def test_icosahedron_thirteen_points(self):
        metric = embed_as_metric_code(generate("icosahedron"))
        assert metric.space.n_points == 13
        assert metric.n == 12
        assert verify(metric).valid

    def test_simplex3_offdiagonals(self):
        metric = embed_as_metric_code(generate("simplex", dim=3))
        assert metric.space.n_points == 5
        M = evaluation_matrix(metric)
        off = M[~np.eye(4, dtype=bool)]
        assert off == pytest.approx(np.full(12, -1.0 / 3.0), abs=1e-12)
        assert verify(metric).valid

    def test_lipschitz_norms_exactly_one(self):
        metric = embed_as_metric_code(generate("cross_polytope", dim=3))
        for f in metric.functions:
            assert lipschitz_norm(metric.space.distance, f) == pytest.approx(
                1.0, abs=1e-9
            )

    def test_base_point_values_zero(self):
        metric = embed_as_metric_code(generate("simplex", dim=2))
        assert np.allclose(metric.functions[:, 0], 0.0, atol=1e-15)


class TestMetricVerification:
    def _tiny_metric_code(self):
        # base 0 and two points at distance 1 from it, mutual distance 1.2
        d = np.array(
            [
                [0.0, 1.0, 1.0],
                [1.0, 0.0, 1.2],
                [1.0, 1.2, 0.0],
            ]
        )
        # f_j peaks at tau_j, zero at base, slope within Lipschitz 1
        functions = np.array(
            [
                [0.0, 1.0, -0.2],
                [0.0, -0.2, 1.0],
            ]
        )
        return MetricCode(
            space=PointedMetricSpace(d),
            point_indices=np.array([1, 2]),
            functions=functions,
            cos_theta=-0.2,
        )

    def test_valid_tiny_code(self):
        report = verify(self._tiny_metric_code())
        assert report.valid, report.axiom_failures
        assert report.max_offdiag == pytest.approx(-0.2)

    def test_triangle_inequality_failure_detected(self):
        d = np.array(
            [
                [0.0, 1.0, 1.0],
                [1.0, 0.0, 5.0],
                [1.0, 5.0, 0.0],
            ]
        )
        code = MetricCode(
            space=PointedMetricSpace(d),
            point_indices=np.array([1]),
            functions=np.array([[0.0, 1.0, 0.0]]),
            cos_theta=0.0,
        )
        report = verify(code)
        assert any("triangle" in f for f in report.axiom_failures)

    def test_lipschitz_violation_detected(self):
        code = self._tiny_metric_code()
        bad = MetricCode(
            space=code.space,
            point_indices=code.point_indices,
            functions=code.functions * 1.5,  # norm 1.5, f(tau) = 1.5
            cos_theta=code.cos_theta,
        )
        report = verify(bad)
        assert not report.valid
        assert any("Lipschitz" in f for f in report.axiom_failures)

    def test_duplicate_tau_warns_not_fails(self):
        code = self._tiny_metric_code()
        dup = MetricCode(
            space=code.space,
            point_indices=np.array([1, 1]),
            functions=np.array([code.functions[0], code.functions[0]]),
            cos_theta=1.0,  # off-diagonal f_0(tau_1) = f_0(tau_0) = 1
        )
        report = verify(dup)
        assert report.valid
        assert any("duplicate" in w for w in report.warnings)

    def test_brute_force_norm_matches_claim(self):
        metric = embed_as_metric_code(generate("icosahedron"))
        for f in metric.functions:
            assert abs(lipschitz_norm(metric.space.distance, f) - 1.0) <= 1e-9


class TestGenerate:
    def test_simplex_exact_inner_products(self):
        code = generate("simplex", dim=3)
        gram = code.vectors @ code.vectors.T
        off = gram[~np.eye(4, dtype=bool)]
        assert off == pytest.approx(np.full(12, -1.0 / 3.0), abs=1e-14)
        assert verify(code).valid

    def test_simplex_counts_and_validity(self):
        for d in (1, 2, 10, 50):
            code = generate("simplex", dim=d)
            assert code.n == d + 1
            assert verify(code).valid

    def test_d4_roots(self):
        code = generate("d4_roots")
        assert code.n == 24
        assert code.dim == 4
        report = verify(code)
        assert report.valid
        assert report.max_offdiag == pytest.approx(0.5, abs=1e-12)

    def test_e8_roots(self):
        code = generate("e8_roots")
        assert code.n == 240
        assert code.dim == 8
        report = verify(code)
        assert report.valid
        assert report.max_offdiag == pytest.approx(0.5, abs=1e-12)

    def test_cross_polytope(self):
        code = generate("cross_polytope", dim=6)
        assert code.n == 12
        report = verify(code)
        assert report.valid
        assert report.max_offdiag == pytest.approx(0.0, abs=1e-15)

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="unknown family"):
            generate("leech")

    def test_canonical_angles(self):
        assert generate("simplex", dim=4).cos_theta == pytest.approx(-0.25)
        assert generate("orthonormal", dim=4).cos_theta == 0.0
        assert generate("icosahedron").cos_theta == pytest.approx(1.0 / math.sqrt(5.0))
        assert generate("d4_roots").cos_theta == 0.5


class TestRandomFunctionalCodes:
    def test_valid_by_construction(self, rng):
        for p in (1.5, 2.0, 3.0):
            for _ in range(10):
                code = random_functional_code(
                    rng, p, int(rng.integers(2, 7)), int(rng.integers(2, 9))
                )
                assert verify(code).valid

    def test_evaluations_within_unit_interval(self, rng):
        code = random_functional_code(rng, 3.0, 5, 8)
        M = evaluation_matrix(code)
        assert np.max(np.abs(M)) <= 1.0 + 1e-12


class TestSerialization:
    def test_spherical_round_trip(self):
        code = generate("icosahedron")
        data = code_to_json_dict(code)
        assert data["kind"] == "spherical"
        back = code_from_json_dict(json.loads(jsonutil.dumps(data)))
        assert np.array_equal(back.vectors, code.vectors)
        assert back.cos_theta == code.cos_theta

    def test_functional_round_trip(self, rng):
        code = random_functional_code(rng, 1.5, 4, 6)
        data = code_to_json_dict(code)
        assert data["space"] == {"type": "lp", "p": 1.5, "dim": 4}
        back = code_from_json_dict(json.loads(jsonutil.dumps(data)))
        assert np.array_equal(back.points, code.points)
        assert np.array_equal(back.functionals, code.functionals)
        assert back.space == code.space

    def test_metric_round_trip(self):
        code = embed_as_metric_code(generate("simplex", dim=2))
        data = code_to_json_dict(code)
        assert data["base"] == 0
        back = code_from_json_dict(json.loads(jsonutil.dumps(data)))
        assert np.array_equal(back.space.distance, code.space.distance)
        assert np.array_equal(back.functions, code.functions)
        assert verify(back).valid

    def test_infinity_p_round_trip(self):
        code = FunctionalCode(
            space=LpSpace(math.inf, 2),
            points=np.array([[1.0, 0.5]]),
            functionals=np.array([[1.0, 0.0]]),
            cos_theta=0.0,
        )
        back = code_from_json_dict(code_to_json_dict(code))
        assert back.space.p == math.inf
        assert verify(back).valid


class TestRoundTripInvariant:
    def test_functional_view_matches_spherical(self):
        for family, dim in (
            ("simplex", 3),
            ("orthonormal", 6),
            ("cross_polytope", 4),
            ("icosahedron", None),
            ("d4_roots", None),
            ("e8_roots", None),
        ):
            spherical = generate(family, dim=dim)
            functional = euclidean_to_functional(spherical)
            rs = verify(spherical)
            rf = verify(functional)
            assert rs.valid == rf.valid
            assert rs.max_offdiag == pytest.approx(rf.max_offdiag, abs=0.0)


@given(st.integers(min_value=2, max_value=16), st.integers(min_value=0, max_value=2**31 - 1))
def test_riesz_norming_property(d, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=d)
    x /= np.linalg.norm(x)
    assert np.max(np.abs(norming_functional(x, 2.0) - x)) <= 1e-12
