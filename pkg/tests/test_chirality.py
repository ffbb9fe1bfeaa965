import math
from fractions import Fraction

import numpy as np
import pytest

from orthosym.chirality import chirality_invariant, orbit_permutation
from orthosym.elem import from_matrix, from_pair, parse_element, random_element
from orthosym.quat import exp_pi_i, named_constant


def _brute_orbit_permutation(a, m):
    # place the orbit points on the circle and read exponents in angular order
    pts = sorted(((2 * math.pi * ((k * a) % m) / m), k) for k in range(m))
    assert pts[0][1] == 0
    return tuple(k for _, k in pts[1:])


def _rotation_block(theta1, theta2):
    def r(t):
        return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])

    M = np.zeros((4, 4))
    M[:2, :2] = r(theta1)
    M[2:, 2:] = r(theta2)
    return M


def test_orbit_permutation_introductory_lists():
    assert orbit_permutation(1, 5) == (1, 2, 3, 4)
    assert orbit_permutation(4, 5) == (4, 3, 2, 1)
    assert orbit_permutation(2, 5) == (3, 1, 4, 2)


def test_orbit_permutation_matches_brute_force():
    for m in range(3, 31):
        for a in range(1, m):
            if math.gcd(a, m) != 1 or (m % 2 == 0 and a == m // 2):
                continue
            assert orbit_permutation(a, m) == _brute_orbit_permutation(a, m)


def test_orbit_permutation_mirror_reversal():
    for m in range(3, 31):
        for a in range(1, m):
            if math.gcd(a, m) != 1 or (m % 2 == 0 and a == m // 2):
                continue
            assert orbit_permutation(m - a, m) == tuple(reversed(orbit_permutation(a, m)))


def test_orbit_permutation_rejects_bad_input():
    with pytest.raises(ValueError):
        orbit_permutation(2, 4)  # not coprime
    with pytest.raises(ValueError):
        orbit_permutation(2, 2)
    with pytest.raises(ValueError):
        orbit_permutation(3, 6)  # half turn
    with pytest.raises(ValueError):
        orbit_permutation(5, 5)


def test_invariant_on_standard_block_rotation():
    e = from_matrix(_rotation_block(2 * math.pi / 5, 4 * math.pi / 5))
    data = chirality_invariant(e)
    assert (data.m, data.a1, data.a2) == (5, 1, 2)
    assert data.lk_sign == 1
    assert data.lk_class == 1
    assert not data.isoclinic


def test_invariant_flips_under_reflection_conjugation():
    M = _rotation_block(2 * math.pi / 5, 4 * math.pi / 5)
    R = np.diag([-1.0, 1.0, 1.0, 1.0])
    e = from_matrix(R @ M @ R)
    data = chirality_invariant(e)
    assert (data.m, data.a1, data.a2) == (5, 1, 2)
    assert data.lk_sign == -1
    assert data.lk_class == 4


def test_residues_live_in_open_half_range():
    rng = np.random.default_rng(21)
    for m, a1, a2 in ((7, 1, 2), (8, 1, 3), (9, 2, 4), (12, 1, 5)):
        e = from_matrix(_rotation_block(2 * math.pi * a1 / m, 2 * math.pi * a2 / m))
        d = chirality_invariant(e)
        assert 0 < d.a1 < m / 2 and 0 < d.a2 < m / 2
        assert d.lk_class in (1, m - 1)


def test_isoclinic_invariant_stable_over_redecompositions():
    e = from_pair(exp_pi_i(Fraction(2, 5)), named_constant("one"))
    base = chirality_invariant(e)
    assert base.isoclinic and base.m == 5
    rng = np.random.default_rng(22)
    for _ in range(20):
        again = chirality_invariant(e, rng=rng)
        assert again.lk_sign == base.lk_sign
        assert (again.a1, again.a2) == (base.a1, base.a2)


def test_left_and_right_isoclinic_have_opposite_signs():
    left = from_pair(exp_pi_i(Fraction(2, 5)), named_constant("one"))
    right = from_pair(named_constant("one"), exp_pi_i(Fraction(2, 5)))
    assert chirality_invariant(left).lk_sign == -chirality_invariant(right).lk_sign


def test_plane_labeling_does_not_matter():
    # swapping the two oriented frames is an even column permutation
    rng = np.random.default_rng(23)
    for _ in range(50):
        f = rng.normal(size=(4, 4))
        q, _ = np.linalg.qr(f)
        u1, v1, u2, v2 = q.T
        d1 = np.linalg.det(np.column_stack([u1, v1, u2, v2]))
        d2 = np.linalg.det(np.column_stack([u2, v2, u1, v1]))
        assert np.sign(d1) == np.sign(d2)


def test_invariant_rejects_improper_and_real_eigenspace():
    with pytest.raises(ValueError):
        chirality_invariant(parse_element("*[i,i]"))
    with pytest.raises(ValueError):
        chirality_invariant(parse_element("[i,i]"))  # fixes the real axis


def test_invariant_constant_under_proper_conjugation_sample():
    rng = np.random.default_rng(24)
    e = from_matrix(_rotation_block(2 * math.pi / 7, 4 * math.pi / 7))
    base = chirality_invariant(e)
    for _ in range(25):
        h = random_element(rng, star=False)
        conj = e.conjugated_by(h)
        d = chirality_invariant(conj)
        assert d.lk_class == base.lk_class
        assert (d.m, d.a1, d.a2) == (base.m, base.a1, base.a2)


def test_invariant_negated_under_improper_conjugation_sample():
    rng = np.random.default_rng(25)
    e = from_matrix(_rotation_block(2 * math.pi / 7, 4 * math.pi / 7))
    base = chirality_invariant(e)
    for _ in range(25):
        h = random_element(rng, star=True)
        d = chirality_invariant(e.conjugated_by(h))
        assert d.lk_class == (-base.lk_class) % base.m
