"""Tests for multilinear operators: evaluation, norms, composition, decoupling."""

import math
from fractions import Fraction

import numpy as np
import pytest

from seqclass.spaces import INF, Space, Vector, lq_norm, norming_functional, vector_norm
from seqclass.seqnorm import VecSeq
from seqclass.multiop import (
    MultiOp,
    compose,
    decoupling_check,
    diag_operator,
    evaluate,
    evaluate_batch,
    finite_type,
    holder_coefficient_bound,
    op_norm,
    scalar_multiplication,
)

Q_VALUES = [1, Fraction(3, 2), 2, 3, INF]


def random_op(rng, dims, d_out, qs=None, q_out=2) -> MultiOp:
    qs = qs or [2] * len(dims)
    domain = tuple(Space(d, q) for d, q in zip(dims, qs))
    coeffs = rng.standard_normal(tuple(dims) + (d_out,))
    return MultiOp(domain, Space(d_out, q_out), coeffs)


def test_eval_diag_basis():
    D = diag_operator(2, 3, 2)
    e1 = D.domain[0].basis_vector(0)
    out = evaluate(D, [e1, e1])
    np.testing.assert_allclose(out.coords, [1, 0, 0], atol=0)


def test_eval_zero_argument():
    rng = np.random.default_rng(1)
    A = random_op(rng, [3, 2], 2)
    z = Vector(A.domain[1], [0, 0])
    x = Vector(A.domain[0], rng.standard_normal(3))
    assert vector_norm(evaluate(A, [x, z])) == 0.0


def test_eval_scalar_multiplication():
    I2 = scalar_multiplication(2)
    out = evaluate(I2, [Vector(I2.domain[0], [2]), Vector(I2.domain[1], [3])])
    assert out.coords[0] == pytest.approx(6.0, abs=0)


def test_eval_coordinatewise_product():
    D = diag_operator(2, 2, 2)
    out = evaluate(D, [Vector(D.domain[0], [1, 1]), Vector(D.domain[1], [1, -1])])
    np.testing.assert_allclose(out.coords, [1, -1], atol=0)


def test_eval_is_multilinear():
    rng = np.random.default_rng(2)
    for _ in range(30):
        A = random_op(rng, [3, 2, 2], 3)
        m = int(rng.integers(3))
        args = [Vector(s, rng.standard_normal(s.dim)) for s in A.domain]
        x = Vector(A.domain[m], rng.standard_normal(A.domain[m].dim))
        y = Vector(A.domain[m], rng.standard_normal(A.domain[m].dim))
        a, b = float(rng.standard_normal()), float(rng.standard_normal())
        lin = [v for v in args]
        lin[m] = Vector(A.domain[m], a * x.coords + b * y.coords)
        left = evaluate(A, lin).coords
        args_x, args_y = list(args), list(args)
        args_x[m], args_y[m] = x, y
        right = a * evaluate(A, args_x).coords + b * evaluate(A, args_y).coords
        np.testing.assert_allclose(left, right, atol=1e-12 * max(1, np.abs(right).max()))


def test_eval_shape_mismatch():
    rng = np.random.default_rng(3)
    A = random_op(rng, [3, 2], 2)
    with pytest.raises(ValueError):
        evaluate(A, [Vector(Space(2, 2), [1, 0]), Vector(Space(2, 2), [1, 0])])


def test_evaluate_batch_matches_pointwise():
    rng = np.random.default_rng(4)
    A = random_op(rng, [3, 2], 4)
    mats = [rng.standard_normal((7, 3)), rng.standard_normal((7, 2))]
    batch = evaluate_batch(A, mats)
    for i in range(7):
        one = evaluate(A, [Vector(A.domain[0], mats[0][i]), Vector(A.domain[1], mats[1][i])])
        np.testing.assert_allclose(batch[i], one.coords, rtol=1e-12)


def test_finite_type_matrix_unit():
    phi = Vector(Space(3, 2).dual, [1, 0, 0])
    b = Vector(Space(2, 2), [0, 1])
    A = finite_type([phi], b)
    expected = np.zeros((3, 2))
    expected[0, 1] = 1.0
    np.testing.assert_array_equal(A.coeffs, expected)


def test_finite_type_defining_identity():
    rng = np.random.default_rng(5)
    for _ in range(20):
        s1, s2 = Space(3, Fraction(3, 2)), Space(2, INF)
        phi1 = Vector(s1.dual, rng.standard_normal(3))
        phi2 = Vector(s2.dual, rng.standard_normal(2))
        b = Vector(Space(2, 1), rng.standard_normal(2))
        A = finite_type([phi1, phi2], b)
        x = Vector(s1, rng.standard_normal(3))
        y = Vector(s2, rng.standard_normal(2))
        lhs = evaluate(A, [x, y]).coords
        rhs = float(phi1.coords @ x.coords) * float(phi2.coords @ y.coords) * b.coords
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-14)


def test_finite_type_zero_functional():
    phi = Vector(Space(2, 2).dual, [0, 0])
    b = Vector(Space(2, 2), [1, 1])
    A = finite_type([phi, phi], b)
    assert not A.coeffs.any()


def test_compose_identity():
    rng = np.random.default_rng(6)
    A = random_op(rng, [3, 2], 2)
    ident = lambda s: MultiOp((s,), s, np.eye(s.dim))
    C = compose(ident(A.codomain), A, [ident(s) for s in A.domain])
    np.testing.assert_allclose(C.coeffs, A.coeffs, atol=1e-15)


def test_compose_zero_outer():
    rng = np.random.default_rng(7)
    A = random_op(rng, [2, 2], 3)
    v = MultiOp((A.codomain,), Space(2, 2), np.zeros((3, 2)))
    ident = lambda s: MultiOp((s,), s, np.eye(s.dim))
    C = compose(v, A, [ident(s) for s in A.domain])
    assert not C.coeffs.any()


def test_compose_matches_direct_evaluation():
    rng = np.random.default_rng(8)
    A = random_op(rng, [3, 2], 2, qs=[2, INF], q_out=1)
    us = [
        MultiOp((Space(2, 2),), A.domain[0], rng.standard_normal((2, 3))),
        MultiOp((Space(4, 1),), A.domain[1], rng.standard_normal((4, 2))),
    ]
    v = MultiOp((A.codomain,), Space(3, INF), rng.standard_normal((2, 3)))
    C = compose(v, A, us)
    for _ in range(100):
        xs = [Vector(u.domain[0], rng.standard_normal(u.domain[0].dim)) for u in us]
        direct = evaluate(v, [evaluate(A, [evaluate(u, [x]) for u, x in zip(us, xs)])])
        via = evaluate(C, xs)
        np.testing.assert_allclose(
            via.coords, direct.coords, rtol=1e-12, atol=1e-12 * max(1, np.abs(direct.coords).max())
        )


def test_diag_operator_norm_is_one():
    D = diag_operator(2, 4, 2)
    est = op_norm(D, seed=0)
    assert est.bracket.lower == pytest.approx(1.0, abs=1e-9)
    assert est.bracket.upper >= 1.0 - 1e-12


def test_op_norm_rank_one():
    rng = np.random.default_rng(9)
    for _ in range(20):
        qs = [Q_VALUES[rng.integers(len(Q_VALUES))] for _ in range(2)]
        s1, s2 = Space(3, qs[0]), Space(2, qs[1])
        out = Space(3, Q_VALUES[rng.integers(len(Q_VALUES))])
        phi1 = Vector(s1.dual, rng.standard_normal(3))
        phi2 = Vector(s2.dual, rng.standard_normal(2))
        b = Vector(out, rng.standard_normal(3))
        A = finite_type([phi1, phi2], b)
        expected = vector_norm(phi1) * vector_norm(phi2) * vector_norm(b)
        est = op_norm(A, seed=1)
        assert est.bracket.lower <= expected * (1 + 1e-6)
        assert est.bracket.upper >= expected * (1 - 1e-6)
        assert est.bracket.lower == pytest.approx(expected, rel=1e-6)


def test_op_norm_zero():
    A = MultiOp((Space(2, 2), Space(2, 2)), Space(2, 2), np.zeros((2, 2, 2)))
    est = op_norm(A, seed=0)
    assert est.bracket.exact
    assert est.bracket.lower == est.bracket.upper == 0.0


def test_op_norm_witness_reproduces_lower():
    rng = np.random.default_rng(10)
    for _ in range(10):
        A = random_op(
            rng, [3, 2], 3,
            qs=[Q_VALUES[rng.integers(len(Q_VALUES))] for _ in range(2)],
            q_out=Q_VALUES[rng.integers(len(Q_VALUES))],
        )
        est = op_norm(A, seed=3)
        val = vector_norm(evaluate(A, est.witness))
        assert val == pytest.approx(est.bracket.lower, abs=1e-9)
        for w, s in zip(est.witness, A.domain):
            assert vector_norm(w) <= 1 + 1e-9


def test_op_norm_linear_matches_svd():
    rng = np.random.default_rng(11)
    for _ in range(10):
        M = rng.standard_normal((4, 3))
        A = MultiOp((Space(3, 2),), Space(4, 2), M.T.copy())
        est = op_norm(A, seed=5)
        sv = np.linalg.svd(M, compute_uv=False)[0]
        assert est.bracket.lower == pytest.approx(sv, rel=1e-9)


def test_op_norm_bilinear_scalar_output_matches_svd():
    rng = np.random.default_rng(12)
    for _ in range(10):
        M = rng.standard_normal((4, 3))
        A = MultiOp((Space(4, 2), Space(3, 2)), Space(1, 2), M[..., None])
        est = op_norm(A, seed=6)
        sv = np.linalg.svd(M, compute_uv=False)[0]
        assert est.bracket.lower == pytest.approx(sv, rel=1e-9)


def test_holder_bound_dominates():
    rng = np.random.default_rng(13)
    for _ in range(20):
        A = random_op(
            rng, [3, 2], 2,
            qs=[Q_VALUES[rng.integers(len(Q_VALUES))] for _ in range(2)],
            q_out=Q_VALUES[rng.integers(len(Q_VALUES))],
        )
        est = op_norm(A, seed=7)
        assert holder_coefficient_bound(A) >= est.bracket.lower * (1 - 1e-12)


def test_op_norm_submultiplicative_under_composition():
    rng = np.random.default_rng(14)
    for _ in range(15):
        A = random_op(rng, [3, 2], 2)
        us = [
            MultiOp((Space(2, 2),), A.domain[0], rng.standard_normal((2, 3))),
            MultiOp((Space(3, 2),), A.domain[1], rng.standard_normal((3, 2))),
        ]
        v = MultiOp((A.codomain,), Space(2, 2), rng.standard_normal((2, 2)))
        C = compose(v, A, us)
        lhs = op_norm(C, seed=8).bracket.lower
        rhs = (
            op_norm(v, seed=8).bracket.upper
            * op_norm(A, seed=8).bracket.upper
            * math.prod(op_norm(u, seed=8).bracket.upper for u in us)
        )
        assert lhs <= rhs * (1 + 1e-6)


def test_decoupling_bilinear_random():
    rng = np.random.default_rng(15)
    for _ in range(50):
        k = int(rng.integers(1, 9))
        A = random_op(rng, [3, 2], 2, qs=[2, INF], q_out=1)
        seqs = [
            VecSeq(A.domain[0], rng.standard_normal((k, 3))),
            VecSeq(A.domain[1], rng.standard_normal((k, 2))),
        ]
        assert decoupling_check(A, seqs) <= 1e-10


def test_decoupling_trilinear():
    rng = np.random.default_rng(16)
    A = random_op(rng, [2, 2, 2], 2)
    seqs = [VecSeq(s, rng.standard_normal((4, 2))) for s in A.domain]
    assert decoupling_check(A, seqs) <= 1e-10


def test_decoupling_linear_is_exact():
    rng = np.random.default_rng(17)
    A = random_op(rng, [3], 2)
    seqs = [VecSeq(A.domain[0], rng.standard_normal((5, 3)))]
    assert decoupling_check(A, seqs) <= 1e-14


def test_decoupling_budget_guard():
    rng = np.random.default_rng(18)
    A = random_op(rng, [2, 2, 2], 2)
    seqs = [VecSeq(s, rng.standard_normal((11, 2))) for s in A.domain]
    with pytest.raises(ValueError):
        decoupling_check(A, seqs)


def test_diag_operator_validation():
    with pytest.raises(ValueError):
        diag_operator(1, 3, 2)
    with pytest.raises(ValueError):
        diag_operator(2, 0, 2)
