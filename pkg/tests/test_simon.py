"""Classical two-stage design search: enumeration identities and references."""

import math

import numpy as np
import pytest
from scipy.stats import binom

from bfdesign import simon_oc, simon_search


def brute_force_oc(r1, n1, r, n2, p):
    """Direct double loop over every (x1, x2) outcome."""
    m = n2 - n1
    pet = 0.0
    reject = 0.0
    for x1 in range(n1 + 1):
        w1 = float(binom.pmf(x1, n1, p))
        if x1 <= r1:
            pet += w1
            continue
        for x2 in range(m + 1):
            if x1 + x2 > r:
                reject += w1 * float(binom.pmf(x2, m, p))
    return reject, pet, n1 + (1 - pet) * m


def test_simon_oc_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n1 = int(rng.integers(2, 20))
        n2 = int(rng.integers(n1 + 1, 35))
        r1 = int(rng.integers(0, n1 + 1))
        r = int(rng.integers(r1, n2 + 1))
        p = float(rng.uniform(0.05, 0.6))
        got = simon_oc(r1, n1, r, n2, p)
        expected = brute_force_oc(r1, n1, r, n2, p)
        assert abs(got[0] - expected[0]) < 1e-14
        assert abs(got[1] - expected[1]) < 1e-14
        assert math.isclose(got[2], expected[2], rel_tol=1e-14)


def test_simon_oc_always_stops_when_bound_is_full():
    reject, pet, e_n = simon_oc(8, 8, 10, 20, 0.3)
    assert pet == 1.0
    assert reject == 0.0
    assert e_n == 8


def test_simon_oc_reference_design():
    reject0, pet, e_n = simon_oc(1, 10, 5, 29, 0.1)
    assert round(reject0, 4) == 0.0471
    assert round(pet, 4) == 0.7361
    assert round(e_n, 2) == 15.01
    reject1, _, _ = simon_oc(1, 10, 5, 29, 0.3)
    assert round(reject1, 4) == 0.8051


def test_simon_oc_validates_bounds():
    with pytest.raises(ValueError):
        simon_oc(5, 4, 6, 10, 0.2)
    with pytest.raises(ValueError):
        simon_oc(2, 4, 1, 10, 0.2)


def test_search_first_reference_setting():
    optimal, minimax = simon_search(0.1, 0.3, 0.05, 0.2, n_max=40)
    assert (optimal.n1, optimal.n2) == (10, 29)
    assert (optimal.r1, optimal.r) == (1, 5)
    assert round(optimal.alpha_attained, 4) == 0.0471
    assert round(optimal.power_attained, 4) == 0.8051
    assert round(optimal.e_n_h0, 2) == 15.01
    assert round(optimal.pet_p0, 4) == 0.7361
    assert (minimax.n1, minimax.n2) == (15, 25)
    assert round(minimax.alpha_attained, 4) == 0.0328
    assert round(minimax.power_attained, 4) == 0.8017
    assert round(minimax.e_n_h0, 2) == 19.51
    assert round(minimax.pet_p0, 4) == 0.5490


def test_search_second_reference_setting():
    optimal, minimax = simon_search(0.2, 0.4, 0.1, 0.1, n_max=40)
    assert (optimal.n1, optimal.n2) == (17, 37)
    assert round(optimal.alpha_attained, 4) == 0.0948
    assert round(optimal.power_attained, 4) == 0.9033
    assert round(optimal.e_n_h0, 2) == 26.02
    assert round(optimal.pet_p0, 4) == 0.5489
    assert (minimax.n1, minimax.n2) == (19, 36)
    assert round(minimax.alpha_attained, 4) == 0.0861
    assert round(minimax.power_attained, 4) == 0.9024
    assert round(minimax.e_n_h0, 2) == 28.26
    assert round(minimax.pet_p0, 4) == 0.4551


def test_search_degenerate_alternative_is_tiny():
    optimal, minimax = simon_search(0.05, 0.9, 0.05, 0.2, n_max=20)
    assert optimal.n2 <= 5
    assert minimax.n2 <= optimal.n2


def test_search_absent_when_bound_too_small():
    assert simon_search(0.2, 0.25, 0.05, 0.1, n_max=15) is None


def test_search_validates_inputs():
    with pytest.raises(ValueError):
        simon_search(0.4, 0.2, 0.05, 0.2)
    with pytest.raises(ValueError):
        simon_search(0.2, 0.4, 0.0, 0.2)
