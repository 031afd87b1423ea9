import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from branchcov.matrices import (
    BlowDownError,
    IntMatrix,
    NotSymmetricError,
    bareiss_det,
    blow_down,
    circulant_from_first_row,
    circulant_spectrum,
    det_exact,
    enumerate_sicup,
    first_row,
    is_circulant,
    is_negative_definite,
    is_positive_definite,
    leading_minors,
    negate,
    verify_sicup,
)
from branchcov.poly import IntPoly


def test_example_matrix_is_sicup():
    rep = verify_sicup(circulant_from_first_row((3, -2, 1, 1, -2)))
    assert rep.verdict and rep.det == 1 and rep.lambda1 == 1


def test_sicup_rejections():
    assert not verify_sicup(circulant_from_first_row((2, 0, 0))).unimodular
    assert not verify_sicup(circulant_from_first_row((1, 1, 0))).symmetric
    assert not verify_sicup(negate(IntMatrix.identity(3))).positive_definite
    M = IntMatrix([[2, 1], [1, 1]])
    rep = verify_sicup(M)
    assert rep.unimodular and rep.positive_definite and not rep.circulant and not rep.verdict


def test_det_small_cases():
    assert det_exact([]) == 1
    assert det_exact([[7]]) == 7
    assert det_exact([[0, 1], [1, 0]]) == -1
    assert det_exact([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


def test_bareiss_over_polynomials():
    t = IntPoly.t()
    one = IntPoly.const(1)
    rows = [[one - t, one], [-t, one + t]]
    assert bareiss_det(rows, one) == (one - t) * (one + t) + t


def test_leading_minors_and_definiteness():
    M = IntMatrix([[2, -1], [-1, 2]])
    assert leading_minors(M) == [2, 3]
    assert is_positive_definite(M)
    assert is_negative_definite(negate(M))
    with pytest.raises(NotSymmetricError):
        is_positive_definite(IntMatrix([[1, 2], [0, 1]]))


def test_enumeration_d5():
    rows = [first_row(M) for M in enumerate_sicup(5, 129).matrices]
    assert rows == [
        (1, 0, 0, 0, 0),
        (3, -2, 1, 1, -2),
        (3, 1, -2, -2, 1),
        (19, -15, 6, 6, -15),
        (19, 6, -15, -15, 6),
        (129, -104, 40, 40, -104),
        (129, 40, -104, -104, 40),
    ]


def test_enumeration_d1_and_errors():
    assert enumerate_sicup(1, 5).matrices == [IntMatrix.identity(1)]
    with pytest.raises(ValueError):
        enumerate_sicup(0, 3)


def test_blow_down():
    assert blow_down(negate(IntMatrix.identity(3)), 3) == negate(IntMatrix.identity(2))
    L = IntMatrix([[2, 1, 1], [1, 3, 0], [1, 0, 1]])
    assert blow_down(L, 3) == IntMatrix([[1, 1], [1, 3]])
    with pytest.raises(BlowDownError):
        blow_down(IntMatrix([[2]]), 1)


def test_blow_down_preserves_abs_det():
    rng = random.Random(4)
    for _ in range(50):
        n = rng.randint(2, 5)
        A = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                A[i][j] = A[j][i] = rng.randint(-4, 4)
        k = rng.randint(1, n)
        A[k - 1][k - 1] = rng.choice((1, -1))
        M = IntMatrix(A)
        assert abs(det_exact(blow_down(M, k))) == abs(det_exact(M))


def test_spectrum_rejects_even_size():
    with pytest.raises(ValueError):
        circulant_spectrum((1, 0, 0, 0))


symmetric_rows = st.integers(0, 7).flatmap(
    lambda r: st.tuples(st.integers(-9, 9), st.lists(st.integers(-9, 9), min_size=r, max_size=r))
)


@settings(max_examples=60)
@given(symmetric_rows)
def test_spectrum_matches_dense_solver(data):
    c1, half = data
    d = 2 * len(half) + 1
    row = [c1] + [0] * (d - 1)
    for k, x in enumerate(half, start=1):
        row[k] = row[d - k] = x
    M = circulant_from_first_row(row)
    assert is_circulant(M) and M.is_symmetric()
    dense = np.linalg.eigvalsh(np.array(M.to_list(), dtype=float))
    assert np.allclose(sorted(dense), circulant_spectrum(row).flat(), atol=1e-9)
    scale = float(np.prod(np.maximum(1.0, np.abs(dense))))
    assert abs(det_exact(M) - float(np.prod(dense))) <= 1e-9 * scale


@given(st.lists(st.lists(st.integers(-30, 30), min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_matches_numpy(rows):
    assert abs(det_exact(rows) - np.linalg.det(np.array(rows, dtype=float))) < 1e-6 * max(1, abs(det_exact(rows)))
