import numpy as np
import pytest

from circumlib.linalg import (
    DimensionMismatch,
    NotPositiveDefinite,
    det_via_factorization,
    dot,
    gram,
    max_independent_subset,
    orthonormalize,
    solve_spd,
)


def test_dot_examples():
    assert dot([1, 0], [0, 1]) == 0.0
    assert dot([1, 2, 3], [1, 2, 3]) == 14.0
    assert dot([2, 0], [3, 4]) == 6.0


def test_dot_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        dot([1, 0], [1, 0, 0])


def test_gram_examples():
    assert np.array_equal(gram([[1, 0], [0, 1]]), np.eye(2))
    assert np.array_equal(gram([[1, 0], [1, 1]]), [[1, 1], [1, 2]])
    assert np.array_equal(gram([[4, 0], [0, 4]]), [[16, 0], [0, 16]])


def test_gram_bitwise_symmetry():
    rng = np.random.default_rng(0)
    for _ in range(20):
        vs = rng.normal(size=(rng.integers(1, 7), rng.integers(1, 9)))
        G = gram(vs)
        assert (G == G.T).all()


def test_gram_empty_rejected():
    with pytest.raises(ValueError):
        gram([])


def test_solve_spd_examples():
    assert np.allclose(solve_spd(np.eye(2), [3, 5]), [3, 5])
    assert np.allclose(solve_spd([[16, 0], [0, 16]], [8, 8]), [0.5, 0.5])
    with pytest.raises(NotPositiveDefinite):
        solve_spd([[1, 1], [1, 1]], [1, 1])


def test_solve_spd_matches_generic_solver():
    rng = np.random.default_rng(1)
    for _ in range(30):
        m = int(rng.integers(1, 8))
        B = rng.normal(size=(m + 2, m))
        G = B.T @ B
        b = rng.normal(size=m)
        x = solve_spd(G, b)
        assert np.allclose(x, np.linalg.solve(G, b), rtol=1e-9, atol=1e-12)


def test_solve_spd_pivoting_handles_small_leading_entry():
    # leading diagonal entry far smaller than the rest; diagonal pivoting
    # must reorder rather than fail
    G = np.array([[1e-8, 0.0, 0.0], [0.0, 4.0, 1.0], [0.0, 1.0, 3.0]])
    b = np.array([1e-8, 5.0, 4.0])
    assert np.allclose(solve_spd(G, b), np.linalg.solve(G, b))


def test_solve_spd_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        solve_spd([[1.0, 0.0], [0.0, -1.0]], [1.0, 1.0])


def test_solve_spd_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_spd(np.eye(2), [1, 2, 3])


def test_gram_invertibility_tracks_independence():
    rng = np.random.default_rng(2)
    for _ in range(20):
        m = int(rng.integers(2, 6))
        vs = list(rng.normal(size=(m, m + 1)))
        solve_spd(gram(vs), np.ones(m))  # independent: must succeed
        weights = rng.normal(size=m)
        extended = vs + [sum(w * v for w, v in zip(weights, vs))]
        with pytest.raises(NotPositiveDefinite):
            solve_spd(gram(extended), np.ones(m + 1))


def test_max_independent_subset_examples():
    assert max_independent_subset([[1, 0], [2, 0], [0, 1]]) == [0, 2]
    assert max_independent_subset([[0, 0]]) == []
    assert max_independent_subset([[1, 0, 0], [0, 1, 0]]) == [0, 1]


def test_max_independent_subset_prefers_earliest():
    assert max_independent_subset([[0, 3], [0, 3], [5, 0]]) == [0, 2]


def test_max_independent_subset_spans_input():
    rng = np.random.default_rng(3)
    for _ in range(30):
        n = int(rng.integers(2, 9))
        r = int(rng.integers(1, n + 1))
        basis = rng.normal(size=(r, n))
        coeffs = rng.normal(size=(r + 3, r))
        vs = list(coeffs @ basis)
        kept = max_independent_subset(vs)
        assert len(kept) == np.linalg.matrix_rank(np.array(vs))
        assert kept == sorted(kept)
        Q = np.array(orthonormalize([vs[i] for i in kept]))
        scale = max(np.linalg.norm(v) for v in vs)
        for v in vs:
            residual = v - Q.T @ (Q @ v)
            assert np.linalg.norm(residual) <= 1e-9 * scale


def test_max_independent_subset_selected_well_conditioned():
    rng = np.random.default_rng(4)
    for _ in range(20):
        vs = rng.normal(size=(6, 4))
        kept = max_independent_subset(list(vs))
        sing = np.linalg.svd(vs[kept], compute_uv=False)
        assert sing[-1] > 1e-10 * sing[0]


def test_orthonormalize_examples():
    assert np.array_equal(orthonormalize([[2, 0]]), [[1, 0]])
    got = orthonormalize([[1, 0], [1, 1]])
    assert np.allclose(got, [[1, 0], [0, 1]], atol=1e-15)
    got = orthonormalize([[1, 1], [2, 2]])
    assert len(got) == 1
    assert np.allclose(got[0], np.array([1, 1]) / np.sqrt(2))


def test_orthonormalize_near_machine_orthonormal():
    rng = np.random.default_rng(5)
    for n, k in [(100, 60), (50, 50), (8, 3)]:
        Q = np.array(orthonormalize(list(rng.normal(size=(k, n)))))
        assert np.abs(Q @ Q.T - np.eye(Q.shape[0])).max() <= 1e-12


def test_orthonormalize_skips_zero_vectors():
    got = orthonormalize([[0, 0], [3, 0], [0, 0], [0, 2]])
    assert np.allclose(got, [[1, 0], [0, 1]])


def test_det_examples():
    assert det_via_factorization(np.eye(3)) == pytest.approx(1.0)
    assert det_via_factorization([[16, 0], [0, 16]]) == pytest.approx(256.0)
    assert det_via_factorization([[1, 1], [1, 1]]) == pytest.approx(0.0, abs=1e-12)


def test_det_rejects_nonsquare():
    with pytest.raises(ValueError):
        det_via_factorization(np.ones((2, 3)))


def test_gram_det_invariant_under_rebasing():
    rng = np.random.default_rng(6)
    for _ in range(20):
        m = int(rng.integers(3, 7))
        pts = rng.normal(size=(m, m + 1))
        base0 = det_via_factorization(gram([p - pts[0] for p in pts[1:]]))
        for k in range(1, m):
            others = [pts[i] for i in range(m) if i != k]
            dk = det_via_factorization(gram([p - pts[k] for p in others]))
            assert dk == pytest.approx(base0, rel=1e-8)
