import random
from fractions import Fraction

import pytest

from arrcsm.linalg import (
    IncrementalSpan,
    QMatrix,
    intersect_spans,
    poly_det,
    rref_rows,
    span_contains,
    spans_equal,
)
from arrcsm.poly import MultiPoly


def test_kernel_single_row():
    assert QMatrix([[1, 1]]).kernel_basis() == [(Fraction(1), Fraction(-1))]


def test_kernel_zero_matrix_is_identity_basis():
    basis = QMatrix([[0, 0, 0]]).kernel_basis()
    assert basis == [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
    ]


def test_kernel_empty_matrix():
    basis = QMatrix([], ncols=2).kernel_basis()
    assert basis == [(1, 0), (0, 1)]


def test_rank_and_rref():
    m = QMatrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    reduced, pivots = m.rref()
    assert pivots == (0, 1)
    assert m.rank() == 2
    # rref is idempotent
    again, _ = reduced.rref()
    assert again == reduced


def test_det():
    assert QMatrix.identity(3).det() == 1
    assert QMatrix([[0, 1], [1, 0]]).det() == -1
    assert QMatrix([[1, 2], [2, 4]]).det() == 0
    assert QMatrix([[Fraction(1, 2), 0], [5, 3]]).det() == Fraction(3, 2)
    with pytest.raises(ValueError):
        QMatrix([[1, 2, 3]]).det()


def test_poly_det_saito_matrix():
    # coefficient matrix of the rank-2 basis: euler field and (x0+x1)*x1*d1
    x0 = MultiPoly.variable(2, 0)
    x1 = MultiPoly.variable(2, 1)
    det = poly_det([[x0, x1], [MultiPoly.zero(2), (x0 + x1) * x1]])
    assert det == x0 * x1 * (x0 + x1)


def test_poly_det_matches_scalar_det():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.choice([2, 3])
        entries = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        polys = [[MultiPoly.const(1, e) for e in row] for row in entries]
        scalar = QMatrix(entries).det()
        assert poly_det(polys) == MultiPoly.const(1, scalar)


def test_kernel_vectors_annihilate():
    rng = random.Random(7)
    for _ in range(30):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        m = QMatrix([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
        kernel = m.kernel_basis()
        assert m.rank() + len(kernel) == cols
        for v in kernel:
            assert all(x == 0 for x in m.mul_vec(v))


def test_rref_rows_canonical_under_row_operations():
    rng = random.Random(13)
    for _ in range(20):
        rows = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
        shuffled = [list(r) for r in rows]
        rng.shuffle(shuffled)
        scaled = [[Fraction(3) * x for x in r] for r in shuffled]
        assert rref_rows(rows) == rref_rows(scaled)
        assert spans_equal(rows, scaled)


def test_span_contains():
    basis = rref_rows([[1, 0, 1], [0, 1, 1]])
    assert span_contains(basis, [1, 1, 2])
    assert not span_contains(basis, [0, 0, 1])
    assert span_contains(basis, [0, 0, 0])


def test_intersect_spans():
    a = [[1, 0, 0], [0, 1, 0]]
    b = [[0, 1, 0], [0, 0, 1]]
    assert intersect_spans(a, b, 3) == ((Fraction(0), Fraction(1), Fraction(0)),)
    # intersection with the full space gives back the span
    full = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert intersect_spans(a, full, 3) == rref_rows(a)
    assert intersect_spans([], b, 3) == ()


def test_incremental_span():
    span = IncrementalSpan(3)
    assert span.add([1, 1, 0]) is not None
    assert span.add([2, 2, 0]) is None
    assert span.add([0, 0, 3]) == (0, 0, 1)
    assert span.rank() == 2
    assert span.contains([5, 5, 7])
    assert not span.contains([1, 0, 0])


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        QMatrix([[1, 2], [1]])
