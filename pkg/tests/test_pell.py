import pytest

from branchcov.matrices import enumerate_sicup, verify_sicup
from branchcov.pell import (
    NegativeBranchError,
    NotAdmissibleError,
    NotSicupError,
    PellSolution,
    SicupParams5,
    admissible_solutions,
    brute_force_pell,
    enumerate_m5,
    phi,
    phi_inverse,
    solve_pell_5_4,
)


def test_first_solutions():
    got = [s.as_tuple() for s in solve_pell_5_4(8)]
    assert got == [(2, 0), (3, -1), (3, 1), (7, -3), (7, 3), (18, -8), (18, 8), (47, -21)]


def test_mod5_filter_and_negative_branch():
    assert all(s.a % 5 == 2 for s in solve_pell_5_4(6, require_a_mod5=2))
    neg = solve_pell_5_4(8, require_a_positive=False)
    assert (-2, 0) in [s.as_tuple() for s in neg]
    with pytest.raises(NegativeBranchError):
        phi_inverse(PellSolution(-3, 1))  # -3 = 2 mod 5


def test_invalid_inputs():
    with pytest.raises(ValueError):
        PellSolution(4, 1)
    with pytest.raises(NotAdmissibleError):
        phi_inverse(PellSolution(3, 1))
    with pytest.raises(NotSicupError):
        phi(SicupParams5(2, 0, 0))


def test_worked_example():
    assert phi_inverse(PellSolution(7, -3)) == SicupParams5(3, -2, 1)
    assert phi(SicupParams5(3, -2, 1)) == PellSolution(7, -3)
    assert phi_inverse(PellSolution(47, 21)) == SicupParams5(19, 6, -15)


def test_admissible_order():
    got = [s.as_tuple() for s in admissible_solutions(6)]
    assert got == [(2, 0), (7, 3), (7, -3), (47, 21), (47, -21), (322, 144)]


def test_m5_agrees_with_enumeration_in_common_range():
    via_pell = set(enumerate_m5(7))
    assert via_pell == set(enumerate_sicup(5, 129).matrices)
    for M in via_pell:
        assert verify_sicup(M).verdict


def test_m5_six_within_bound_fifty():
    # only five 5x5 SICUP matrices have c1 <= 50; the sixth Pell image has c1 = 129
    six = enumerate_m5(6)
    small = {M for M in six if M[0, 0] <= 50}
    assert small == set(enumerate_sicup(5, 50).matrices)
    assert max(M[0, 0] for M in six) == 129


def test_generator_against_brute_force():
    brute = brute_force_pell(5000, 5000)
    pos = {s.as_tuple() for s in solve_pell_5_4(40) if s.a <= 5000}
    assert pos == {ab for ab in brute if ab[0] > 0}
