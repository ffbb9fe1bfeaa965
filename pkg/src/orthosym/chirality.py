"""Orientation invariants that separate mirror-image rotation actions.

For a rotation of the circle by a/m of a turn, ``orbit_permutation`` lists
the orbit of a marked point in the order the points appear counterclockwise;
conjugating by a reflection reverses the list.

For a double rotation of R^4 (finite order, no real eigenspace),
``chirality_invariant`` orients the two invariant planes so each rotation
angle lies in (0, pi) -- the direction from a point to its image passing the
fewest orbit points -- and records the sign of det[u1 v1 u2 v2], the linking
sign of the two oriented invariant circles in the standard orientation of
R^4.  Its class mod the element order is constant under proper conjugation
and negated under improper conjugation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elem import OrthElement
from .linalg import Plane, rotation_decomposition

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ChiralityData:
    m: int  # order of the element
    a1: int  # rotation residues in (0, m/2), units of 1/m turns
    a2: int
    isoclinic: bool  # equal residues: the plane decomposition is not unique
    lk_sign: int  # +1 or -1
    lk_class: int  # lk_sign mod m, i.e. 1 or m-1


def orbit_permutation(a: int, m: int) -> tuple[int, ...]:
    """Exponent order in which the orbit of a rotation by a/m turn appears
    counterclockwise from the marked point: position t holds the exponent e
    with e*a = t (mod m)."""
    if m < 3:
        raise ValueError(f"need m >= 3, got m={m}")
    if math.gcd(a, m) != 1:
        raise ValueError(f"need gcd(a, m) = 1, got a={a}, m={m}")
    if a % m == 0 or (m % 2 == 0 and a % m == m // 2):
        raise ValueError(f"a={a} is a real-eigenvalue rotation for m={m}")
    a_inv = pow(a, -1, m)
    return tuple((t * a_inv) % m for t in range(1, m))


def _oriented_planes_from_eigvecs(w1: np.ndarray, w2: np.ndarray, angle: float) -> list[Plane]:
    """Oriented invariant planes from complex-orthonormal eigenvectors for
    the eigenvalue e^{i*angle}: for w = x + iy, (x, -y) rotates by +angle."""
    out = []
    for w in (w1, w2):
        x, y = w.real, w.imag
        out.append(Plane(x / np.linalg.norm(x), -y / np.linalg.norm(y), angle))
    return out


def _random_isoclinic_planes(dec, rng: np.random.Generator) -> list[Plane]:
    p1, p2 = dec.planes
    # complex eigenvectors for e^{i theta}: w = u - i v
    w1 = (p1.u - 1j * p1.v) / math.sqrt(2.0)
    w2 = (p2.u - 1j * p2.v) / math.sqrt(2.0)
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    mix, _ = np.linalg.qr(g)  # random unitary
    m1 = mix[0, 0] * w1 + mix[1, 0] * w2
    m2 = mix[0, 1] * w1 + mix[1, 1] * w2
    return _oriented_planes_from_eigvecs(m1, m2, p1.angle)


def chirality_invariant(e: OrthElement, rng: np.random.Generator | None = None) -> ChiralityData:
    """Invariant data of a double rotation.

    Requires a proper element of finite order with no invariant line.  For
    an isoclinic element, passing ``rng`` draws a random valid plane
    decomposition instead of the deterministic one; the result is the same
    either way, which the property suite checks.
    """
    if e.star:
        raise ValueError("chirality invariant is defined for proper rotations only")
    if e.has_invariant_line():
        raise ValueError("element has a real eigenspace; no chirality invariant")
    m = e.order()
    dec = rotation_decomposition(e.matrix)
    if len(dec.planes) != 2:
        raise ValueError("element is not a double rotation")
    planes = dec.planes
    residues = []
    for p in planes:
        a_float = m * p.angle / _TWO_PI
        a = round(a_float)
        if abs(a_float - a) > 1e-6:
            raise ValueError(f"rotation angle {p.angle} is not a multiple of 2*pi/{m}")
        residues.append(a)
    isoclinic = residues[0] == residues[1]
    if isoclinic and rng is not None:
        planes = _random_isoclinic_planes(dec, rng)
    frame = np.column_stack([planes[0].u, planes[0].v, planes[1].u, planes[1].v])
    lk_sign = 1 if np.linalg.det(frame) > 0 else -1
    return ChiralityData(
        m=m,
        a1=residues[0],
        a2=residues[1],
        isoclinic=isoclinic,
        lk_sign=lk_sign,
        lk_class=lk_sign % m,
    )
