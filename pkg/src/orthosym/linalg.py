"""Dense 4x4 orthogonal-matrix analysis.

Real eigenline detection, invariant-plane decompositions with oriented
rotation angles, commutants of matrix families, and reflection witnesses for
groups whose centralizer leaves O(4)\\SO(4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import config

_I4 = np.eye(4)


def is_orthogonal(M: np.ndarray, eps: float | None = None) -> bool:
    eps = config.EPS if eps is None else eps
    M = np.asarray(M, dtype=float)
    return M.shape == (4, 4) and bool(np.abs(M.T @ M - _I4).max() <= eps)


def null_space(A: np.ndarray, eps: float | None = None) -> np.ndarray:
    """Orthonormal basis of ker(A), most-null direction first.

    The rank cutoff is eps * max(largest singular value, 1): scale-free
    above unit scale, but a numerically zero matrix still counts as rank 0.
    """
    eps = config.EPS if eps is None else eps
    _, s, vt = np.linalg.svd(A)
    cutoff = eps * max(float(s[0]) if s.size else 0.0, 1.0)
    rank = int(np.sum(s > cutoff))
    return vt[rank:][::-1].T


def canonical_unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    for comp in v:
        if abs(comp) > config.EPS:
            if comp < 0:
                v = -v
            break
    return v


def eigen_real_line(M: np.ndarray) -> np.ndarray | None:
    """A unit v with Mv = +-v, or None if M moves every line."""
    M = np.asarray(M, dtype=float)
    if not is_orthogonal(M, eps=1e-6):
        raise ValueError("eigen_real_line requires an orthogonal matrix")
    for sign in (1.0, -1.0):
        ns = null_space(M - sign * _I4)
        if ns.shape[1]:
            return canonical_unit(ns[:, 0])
    return None


@dataclass
class Plane:
    """Oriented invariant 2-plane: M u = cos(angle) u + sin(angle) v."""

    u: np.ndarray
    v: np.ndarray
    angle: float

    def basis(self) -> np.ndarray:
        return np.column_stack([self.u, self.v])


@dataclass
class RotationDecomposition:
    planes: list[Plane]
    fixed_space: np.ndarray  # (4, k) orthonormal columns, eigenvalue +1
    negated_space: np.ndarray  # (4, k) orthonormal columns, eigenvalue -1

    def reconstruct(self) -> np.ndarray:
        M = np.zeros((4, 4))
        for p in self.planes:
            uu = np.outer(p.u, p.u) + np.outer(p.v, p.v)
            skew = np.outer(p.v, p.u) - np.outer(p.u, p.v)
            M += math.cos(p.angle) * uu + math.sin(p.angle) * skew
        if self.fixed_space.shape[1]:
            M += self.fixed_space @ self.fixed_space.T
        if self.negated_space.shape[1]:
            M -= self.negated_space @ self.negated_space.T
        return M


def orthogonal_blocks(M: np.ndarray) -> tuple[list[Plane], list[np.ndarray], list[np.ndarray]]:
    """Schur walk of any orthogonal 4x4: rotation planes with angle in
    (0, pi), +1 eigenvectors, and -1 eigenvectors."""
    T, Z = scipy.linalg.schur(np.asarray(M, dtype=float), output="real")
    planes: list[Plane] = []
    fixed: list[np.ndarray] = []
    negated: list[np.ndarray] = []
    i = 0
    while i < 4:
        if i < 3 and abs(T[i + 1, i]) > 1e-12:
            c = 0.5 * (T[i, i] + T[i + 1, i + 1])
            s = 0.5 * (T[i + 1, i] - T[i, i + 1])
            theta = math.atan2(abs(s), c)
            u = Z[:, i].copy()
            v = Z[:, i + 1].copy() * (1.0 if s > 0 else -1.0)
            if theta >= math.pi - 1e-9:
                # a half-turn block has no intrinsic orientation
                negated.extend([u, v])
            elif theta <= 1e-9:
                fixed.extend([u, v])
            else:
                planes.append(Plane(u, v, theta))
            i += 2
        else:
            (fixed if T[i, i] > 0 else negated).append(Z[:, i].copy())
            i += 1
    planes.sort(key=lambda p: (p.angle, tuple(np.round(p.u, 9))))
    return planes, fixed, negated


def _stack(cols: list[np.ndarray]) -> np.ndarray:
    return np.column_stack(cols) if cols else np.zeros((4, 0))


def rotation_decomposition(M: np.ndarray) -> RotationDecomposition:
    """Decompose a special orthogonal 4x4 into oriented rotation planes and
    +-1 eigenspaces.  Half-turn (eigenvalue -1) planes land in
    ``negated_space``, since the action does not orient them."""
    M = np.asarray(M, dtype=float)
    if not is_orthogonal(M, eps=1e-6):
        raise ValueError("rotation_decomposition requires an orthogonal matrix")
    if np.linalg.det(M) < 0:
        raise ValueError("rotation_decomposition requires determinant +1")
    planes, fixed, negated = orthogonal_blocks(M)
    return RotationDecomposition(planes, _stack(fixed), _stack(negated))


@dataclass
class Commutant:
    """Orthonormal (Frobenius) basis of {X : XG = GX for all generators}."""

    basis: list[np.ndarray] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, X: np.ndarray) -> np.ndarray:
        out = np.zeros((4, 4))
        for B in self.basis:
            out += float(np.sum(B * X)) * B
        return out


def commutant(gens: list[np.ndarray]) -> Commutant:
    """Solve the linear system {XG - GX = 0 for all G} over 4x4 matrices."""
    mats = [np.asarray(G, dtype=float) for G in gens]
    if not mats:
        return Commutant([_I4.copy()] + [m for m in _basis_16()[1:]])
    rows = [np.kron(G.T, _I4) - np.kron(_I4, G) for G in mats]
    ns = null_space(np.vstack(rows))
    return Commutant([ns[:, j].reshape(4, 4, order="F") for j in range(ns.shape[1])])


def _basis_16() -> list[np.ndarray]:
    out = []
    for j in range(4):
        for i in range(4):
            E = np.zeros((4, 4))
            E[i, j] = 1.0
            out.append(E)
    return out


def lcp_witness(group) -> np.ndarray | None:
    """An orthogonal determinant -1 matrix commuting with every element of
    the group, or None.

    Built from a common invariant line v as W = I - 2 v v^T: every element
    sends v to +-v, hence commutes with v v^T.  When no common line exists,
    no such witness exists either (an odd-dimensional invariant subspace
    would be forced); the converse direction is exercised on the catalog by
    the test suite.
    """
    from .group import find_invariant_line

    v = find_invariant_line(group)
    if v is None:
        return None
    return _I4 - 2.0 * np.outer(v, v)
