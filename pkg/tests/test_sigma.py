import random

import pytest

from branchcov.floer import Torus2, Unknot
from branchcov.matrices import IntMatrix, circulant_from_first_row
from branchcov.sigma import (
    CertificateError,
    SigmaParams,
    aux_label,
    brute_force_linking,
    build_sigma,
    check_adapted,
    check_adapted_braid,
    closed_form_first_row,
    compiled_sigma,
    expected_connectivity,
    identify_L1,
)
from branchcov.tangle import BraidWord, circulant_block_check, closure_components, power

GAMMA = BraidWord(10, (-2, -2, -2, -2, -1, 2, 2, 2, 2, 2, -3, -4, 5, 6, -7, -8, 9))


def random_params(rng, m_max=6):
    m = rng.randint(1, m_max)
    return SigmaParams(m, tuple(rng.choice((1, -1)) * rng.choice((1, 3, 5, 7, 9)) for _ in range(2 * m - 1)))


def test_param_validation():
    with pytest.raises(ValueError):
        SigmaParams(2, (1, 2, 1))
    with pytest.raises(ValueError):
        SigmaParams(2, (1, 1))
    with pytest.raises(ValueError):
        SigmaParams(0, ())


def test_build_regions():
    t = build_sigma(SigmaParams(3, (1, 3, 5, 7, 9)))
    labels = [r.label for r in t.regions]
    assert sorted(labels) == sorted(["c1", "c2", "c3", "c4", "c5", aux_label(3)])
    twists = {r.label: r.twist for r in t.regions}
    assert twists[aux_label(3)] == 1 - 5
    vertical = {r.label for r in t.regions if r.orientation == "vertical"}
    assert vertical == {"c3", aux_label(3)}


def test_connectivity_examples():
    assert compiled_sigma(SigmaParams(1, (1,))).connectivity() == {1: 2, 2: 1}
    assert compiled_sigma(SigmaParams(2, (1, 3, 1))).connectivity() == {1: 4, 2: 1, 3: 2, 4: 3}
    ct = compiled_sigma(SigmaParams(3, (1, 1, 3, 1, 1)))
    assert closure_components(power(ct.word, 3)).count == 3


def test_region_crossing_counts():
    rng = random.Random(1)
    for _ in range(20):
        p = SigmaParams(3, tuple(rng.choice((1, -1)) * rng.choice((1, 3, 5, 7, 9)) for _ in range(5)))
        ct = compiled_sigma(p)
        counts = dict(zip((r.label for r in ct.regions), ct.crossings_per_region()))
        for j in range(1, 6):
            assert counts[f"c{j}"] == abs(p.cj(j))


def test_closed_form_examples():
    assert closed_form_first_row(SigmaParams(1, (5,))).row == (1,)
    cf = closed_form_first_row(SigmaParams(2, (1, 3, 1)))
    assert cf.formula_entries == {2: 1}
    assert cf.a11_derived


def test_brute_force_examples():
    assert brute_force_linking(SigmaParams(1, (3,))) == IntMatrix([[1]])
    M = brute_force_linking(SigmaParams(2, (1, 1, 1)))
    assert M.is_symmetric() and circulant_block_check(M, 2, 1)


def test_closed_forms_match_diagram_for_m_at_least_3():
    rng = random.Random(7)
    for _ in range(120):
        p = random_params(rng)
        if p.m < 3:
            continue
        assert brute_force_linking(p) == closed_form_first_row(p).matrix()


def test_m2_discrepancy_is_the_auxiliary_box():
    # for m = 2 the 1 - c_2 box joins the two components at both of its crossings
    # blocks, so the diagram counts (1 - c_2)/2 once more than the closed form
    rng = random.Random(8)
    for _ in range(40):
        p = SigmaParams(2, tuple(rng.choice((1, -1)) * rng.choice((1, 3, 5, 7, 9)) for _ in range(3)))
        diff = brute_force_linking(p)[0, 1] - closed_form_first_row(p).row[1]
        assert diff == (1 - p.cj(2)) // 2


def test_sigma_invariants():
    rng = random.Random(2)
    for _ in range(60):
        p = random_params(rng)
        ct = compiled_sigma(p)
        assert ct.connectivity() == expected_connectivity(p.m)
        assert closure_components(ct.word).count == 1
        assert closure_components(power(ct.word, p.m)).count == p.m
        M = brute_force_linking(p)
        assert circulant_block_check(M, p.m, 1)


def test_identify_L1():
    assert identify_L1(SigmaParams(1, (1,))).q == 1
    cert = identify_L1(SigmaParams(3, (1, 1, 7, 1, 1)))
    assert (cert.q, cert.genus, cert.method) == (7, 3, "region")
    assert identify_L1(SigmaParams(5, (1, 1, 1, 1, 5, 1, 1, 1, 1))).knot_class == Torus2(5)
    assert identify_L1(SigmaParams(1, (-1,))).method == "writhe"
    with pytest.raises(CertificateError) as exc:
        identify_L1(SigmaParams(1, (3,)))
    assert exc.value.region == aux_label(1)


def test_identify_L1_all_m_at_least_2():
    rng = random.Random(3)
    for _ in range(60):
        p = random_params(rng)
        if p.m >= 2:
            assert identify_L1(p).q == p.cj(p.m)


def test_check_adapted_m1():
    rep = check_adapted(SigmaParams(1, (3,)), IntMatrix([[1]]))
    assert rep.verdict and rep.nu_condition.case == 2
    assert rep.l1_class == str(Unknot())


def test_check_adapted_failures_are_fields():
    p = SigmaParams(3, (1, 1, 7, 1, 1))
    rep = check_adapted(p, IntMatrix.identity(3))
    assert not rep.linking_match and not rep.verdict
    rep = check_adapted(p, closed_form_first_row(p).matrix())
    assert rep.linking_match and rep.nu_condition.satisfied and rep.l1_source == "certificate"


def test_braid_pathway_gamma():
    A = circulant_from_first_row((3, -2, 1, 1, -2))
    rep = check_adapted_braid(GAMMA, 5, A, Torus2(5))
    assert rep.verdict and rep.nu_condition.case == 1
    assert rep.warnings  # the diagram sees unknotted components
    rep = check_adapted_braid(GAMMA, 5, A)
    assert rep.l1_source == "diagram" and rep.nu_condition.status == "violated"
