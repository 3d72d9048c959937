"""Unit tests for the l_q space substrate."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqclass.spaces import (
    INF,
    Space,
    Vector,
    as_exponent,
    conjugate_exponent,
    norming_functional,
    pairing,
    vector_norm,
)

Q_VALUES = [1, Fraction(4, 3), Fraction(3, 2), 2, 3, 4, INF]


def test_vector_norm_examples():
    assert vector_norm(Vector(Space(3, 2), [3, 4, 0])) == pytest.approx(5.0, abs=1e-12)
    assert vector_norm(Vector(Space(2, INF), [-2, 1])) == pytest.approx(2.0, abs=1e-12)
    assert vector_norm(Vector(Space(4, 1), [1, 1, 1, 1])) == pytest.approx(4.0, abs=1e-12)


def test_conjugate_exponent_examples():
    assert conjugate_exponent(2) == 2
    assert conjugate_exponent(1) == INF
    assert conjugate_exponent(4) == Fraction(4, 3)


def test_conjugate_is_exact_involution():
    for q in Q_VALUES + [Fraction(7, 5), as_exponent(1.37)]:
        assert conjugate_exponent(conjugate_exponent(q)) == as_exponent(q)


def test_dual_dual_is_identity():
    for q in Q_VALUES:
        s = Space(3, q)
        assert s.dual.dual == s


def test_exponent_validation():
    with pytest.raises(ValueError):
        as_exponent(0.5)
    with pytest.raises(ValueError):
        Space(0, 2)


def test_pairing_examples():
    s = Space(2, 2)
    assert pairing(Vector(s.dual, [1, 0]), Vector(s, [3, 4])) == pytest.approx(3.0)
    assert pairing(Vector(s.dual, [0, 0]), Vector(s, [3, 4])) == 0.0
    l1 = Space(2, 1)
    assert pairing(Vector(l1.dual, [1, 1]), Vector(l1, [2, -1])) == pytest.approx(1.0)


def test_pairing_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        pairing(Vector(Space(3, 2), [1, 0, 0]), Vector(Space(2, 2), [1, 0]))


def test_norming_functional_examples():
    phi = norming_functional(Vector(Space(2, 2), [3, 4]))
    np.testing.assert_allclose(phi.coords, [0.6, 0.8], atol=1e-15)

    phi = norming_functional(Vector(Space(2, 1), [2, -1]))
    np.testing.assert_allclose(phi.coords, [1, -1], atol=0)
    assert phi.space.q == INF

    phi = norming_functional(Vector(Space(2, INF), [5, -5]))
    np.testing.assert_allclose(phi.coords, [1, 0], atol=0)


def test_norming_functional_rejects_zero():
    with pytest.raises(ValueError):
        norming_functional(Vector(Space(2, 2), [0, 0]))


def test_norming_functional_random():
    rng = np.random.default_rng(7)
    for _ in range(300):
        q = Q_VALUES[rng.integers(len(Q_VALUES))]
        d = int(rng.integers(1, 7))
        x = Vector(Space(d, q), rng.standard_normal(d))
        if not x.coords.any():
            continue
        phi = norming_functional(x)
        assert vector_norm(phi) == pytest.approx(1.0, abs=1e-12)
        assert pairing(phi, x) == pytest.approx(vector_norm(x), abs=1e-12, rel=1e-12)


def test_holder_inequality_bulk():
    rng = np.random.default_rng(11)
    for q in Q_VALUES:
        s = Space(4, q)
        phis = rng.standard_normal((2500, 4))
        xs = rng.standard_normal((2500, 4))
        for prow, xrow in zip(phis, xs):
            phi, x = Vector(s.dual, prow), Vector(s, xrow)
            slack = vector_norm(phi) * vector_norm(x) - abs(pairing(phi, x))
            assert slack >= -1e-12


@settings(max_examples=200, deadline=None)
@given(
    q=st.sampled_from(Q_VALUES),
    a=st.lists(st.floats(-10, 10), min_size=1, max_size=6),
    c=st.floats(-10, 10),
)
def test_norm_axioms(q, a, c):
    d = len(a)
    s = Space(d, q)
    x = Vector(s, a)
    assert vector_norm(Vector(s, c * np.array(a))) == pytest.approx(
        abs(c) * vector_norm(x), abs=1e-12, rel=1e-12
    )


@settings(max_examples=200, deadline=None)
@given(
    q=st.sampled_from(Q_VALUES),
    pair=st.integers(1, 6).flatmap(
        lambda d: st.tuples(
            st.lists(st.floats(-10, 10), min_size=d, max_size=d),
            st.lists(st.floats(-10, 10), min_size=d, max_size=d),
        )
    ),
)
def test_triangle_inequality(q, pair):
    a, b = pair
    s = Space(len(a), q)
    lhs = vector_norm(Vector(s, np.add(a, b)))
    rhs = vector_norm(Vector(s, a)) + vector_norm(Vector(s, b))
    assert lhs <= rhs + 1e-12 * max(1.0, rhs)
