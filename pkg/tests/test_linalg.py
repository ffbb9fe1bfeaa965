import math
from fractions import Fraction

import numpy as np
import pytest

from orthosym import linalg
from orthosym.elem import from_pair, parse_element, random_element
from orthosym.group import closure, find_invariant_line, group_K
from orthosym.linalg import (
    commutant,
    eigen_real_line,
    lcp_witness,
    rotation_decomposition,
)
from orthosym.quat import exp_pi_i, named_constant


def test_eigen_real_line_identity():
    v = eigen_real_line(np.eye(4))
    assert v is not None and abs(np.linalg.norm(v) - 1.0) < 1e-12


def test_eigen_real_line_absent_for_left_rotation():
    assert eigen_real_line(parse_element("[i, 1]").matrix) is None


def test_eigen_real_line_for_reflection():
    M = parse_element("*[i, i]").matrix
    v = eigen_real_line(M)
    assert v is not None
    img = M @ v
    assert min(np.abs(img - v).max(), np.abs(img + v).max()) < 1e-9


def test_eigen_real_line_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        eigen_real_line(np.diag([2.0, 1.0, 1.0, 1.0]))


def test_rotation_decomposition_identity():
    dec = rotation_decomposition(np.eye(4))
    assert dec.planes == []
    assert dec.fixed_space.shape == (4, 4)
    assert dec.negated_space.shape == (4, 0)


def test_rotation_decomposition_left_isoclinic():
    e = from_pair(exp_pi_i(Fraction(2, 5)), named_constant("one"))
    dec = rotation_decomposition(e.matrix)
    assert len(dec.planes) == 2
    for p in dec.planes:
        assert p.angle == pytest.approx(2 * math.pi / 5, abs=1e-9)
    # eigenvalues e^{+-2pi i/5}, each doubled
    eigs = np.linalg.eigvals(e.matrix)
    assert np.allclose(np.sort(np.abs(np.angle(eigs))), [2 * math.pi / 5] * 4, atol=1e-9)


def test_rotation_decomposition_two_angle_rotation():
    # rotation by 2pi/3 on one plane and pi/2 on the other
    e = from_pair(exp_pi_i(Fraction(1, 3) + Fraction(1, 4)), exp_pi_i(Fraction(1, 3) - Fraction(1, 4)))
    dec = rotation_decomposition(e.matrix)
    angles = sorted(p.angle for p in dec.planes)
    assert angles == pytest.approx([math.pi / 2, 2 * math.pi / 3], abs=1e-9)
    assert dec.fixed_space.shape[1] == 0 and dec.negated_space.shape[1] == 0


def test_rotation_decomposition_half_turn_goes_to_negated_space():
    # [e^{5 pi i/6}, e^{pi i/6}] rotates span(1,i) by 2pi/3 and flips span(j,k)
    e = from_pair(exp_pi_i(Fraction(5, 6)), exp_pi_i(Fraction(1, 6)))
    dec = rotation_decomposition(e.matrix)
    assert [p.angle for p in dec.planes] == pytest.approx([2 * math.pi / 3], abs=1e-9)
    assert dec.negated_space.shape[1] == 2


def test_rotation_decomposition_oriented_basis_relation():
    rng = np.random.default_rng(12)
    for _ in range(200):
        e = random_element(rng)
        dec = rotation_decomposition(e.matrix)
        for p in dec.planes:
            img = e.matrix @ p.u
            want = math.cos(p.angle) * p.u + math.sin(p.angle) * p.v
            np.testing.assert_allclose(img, want, atol=1e-9)


def test_rotation_decomposition_reconstruction_1000_random():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        M = random_element(rng).matrix
        dec = rotation_decomposition(M)
        assert np.abs(dec.reconstruct() - M).max() <= 1e-9


def test_rotation_decomposition_rejects_reflections():
    with pytest.raises(ValueError):
        rotation_decomposition(parse_element("*[i,i]").matrix)


def test_commutant_of_identity_is_everything():
    assert commutant([np.eye(4)]).dim == 16


def test_commutant_of_K_is_two_dimensional():
    gens = [g.matrix for g in group_K().generators]
    com = commutant(gens)
    assert com.dim == 2
    for B in com.basis:
        for G in gens:
            assert np.abs(B @ G - G @ B).max() <= 1e-9
    # spanned by I and the central half-turn diag(1,1,-1,-1) up to basis change
    target = np.diag([1.0, 1.0, -1.0, -1.0])
    assert np.abs(com.project(target) - target).max() <= 1e-9


def test_commutant_of_ii_is_eight_dimensional():
    assert commutant([parse_element("[i,i]").matrix]).dim == 8


def test_commutant_basis_is_orthonormal_and_independent():
    com = commutant([g.matrix for g in group_K().generators])
    gram = np.array([[np.sum(a * b) for b in com.basis] for a in com.basis])
    np.testing.assert_allclose(gram, np.eye(com.dim), atol=1e-9)


def test_lcp_witness_for_plus_minus_identity():
    G = closure([parse_element("[-1, 1]")])
    W = lcp_witness(G)
    assert W is not None
    assert np.linalg.det(W) == pytest.approx(-1.0, abs=1e-9)
    for g in G.elements:
        assert np.abs(W @ g.matrix - g.matrix @ W).max() <= 1e-9


def test_lcp_witness_from_real_axis_line():
    G = closure([parse_element("[-1, 1]"), parse_element("[-i, i]")])
    v = find_invariant_line(G)
    assert v is not None
    # the real axis is one of this group's invariant lines
    one = np.array([1.0, 0, 0, 0])
    for g in G.elements:
        img = g.matrix @ one
        assert min(np.abs(img - one).max(), np.abs(img + one).max()) <= 1e-9
    W = lcp_witness(G)
    assert W is not None and np.linalg.det(W) == pytest.approx(-1.0, abs=1e-9)
    for g in G.elements:
        assert np.abs(W @ g.matrix - g.matrix @ W).max() <= 1e-9


def test_lcp_witness_none_for_K_and_commutant_has_no_reflection():
    K = group_K()
    assert lcp_witness(K) is None
    # projecting random reflections onto the commutant and re-orthogonalizing
    # never yields a commuting determinant -1 matrix
    com = commutant([g.matrix for g in K.generators])
    rng = np.random.default_rng(14)
    for _ in range(200):
        W = random_element(rng, star=True).matrix
        P = com.project(W)
        sigma = np.linalg.svd(P, compute_uv=False)
        if sigma[-1] < 1e-6:
            continue
        U, _, Vt = np.linalg.svd(P)
        Q = U @ Vt
        commutes = all(np.abs(Q @ g.matrix - g.matrix @ Q).max() <= 1e-9 for g in K.elements)
        if commutes:
            assert np.linalg.det(Q) > 0
