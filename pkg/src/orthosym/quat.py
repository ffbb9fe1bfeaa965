"""Quaternion algebra on H = R^4 with basis (1, i, j, k).

Components are stored as evaluated floats; the exact expression layer in
:mod:`orthosym.scalar` is only an input format.  Includes the named unit
quaternions used throughout the group catalog and the real-part conjugacy
test for units: two unit quaternions are conjugate in the multiplicative
group H^x exactly when their real parts agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import config
from .scalar import _cospi, _sinpi


@dataclass(frozen=True)
class Quaternion:
    a: float
    b: float
    c: float
    d: float

    def norm(self) -> float:
        return math.sqrt(self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def re(self) -> float:
        return self.a

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return qmul(self, other)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    @classmethod
    def from_array(cls, v) -> "Quaternion":
        return cls(float(v[0]), float(v[1]), float(v[2]), float(v[3]))

    def isclose(self, other: "Quaternion", eps: float | None = None) -> bool:
        eps = config.EPS if eps is None else eps
        return (
            abs(self.a - other.a) <= eps
            and abs(self.b - other.b) <= eps
            and abs(self.c - other.c) <= eps
            and abs(self.d - other.d) <= eps
        )


@dataclass(frozen=True)
class UnitQuaternion(Quaternion):
    """A quaternion of unit length.

    Construction renormalizes drift up to ``config.UNIT_NORM_SLACK`` and
    rejects anything farther from the unit sphere.
    """

    def __post_init__(self):
        n = self.norm()
        if abs(n - 1.0) > config.UNIT_NORM_SLACK:
            raise ValueError(f"not a unit quaternion (norm {n})")
        if n != 1.0:
            object.__setattr__(self, "a", self.a / n)
            object.__setattr__(self, "b", self.b / n)
            object.__setattr__(self, "c", self.c / n)
            object.__setattr__(self, "d", self.d / n)


def unit(q: Quaternion) -> UnitQuaternion:
    return UnitQuaternion(q.a, q.b, q.c, q.d)


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product (i*j = k)."""
    return Quaternion(
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    )


def qconj(q: Quaternion) -> Quaternion:
    return q.conj()


def qre(q: Quaternion) -> float:
    return q.a


def left_matrix(q: Quaternion) -> np.ndarray:
    """Matrix of x -> q*x on coordinates (a, b, c, d)."""
    a, b, c, d = q.a, q.b, q.c, q.d
    return np.array(
        [
            [a, -b, -c, -d],
            [b, a, -d, c],
            [c, d, a, -b],
            [d, -c, b, a],
        ]
    )


def right_matrix(q: Quaternion) -> np.ndarray:
    """Matrix of x -> x*q on coordinates (a, b, c, d)."""
    a, b, c, d = q.a, q.b, q.c, q.d
    return np.array(
        [
            [a, -b, -c, -d],
            [b, a, d, -c],
            [c, -d, a, b],
            [d, c, -b, a],
        ]
    )


def conjugate_in_Hx(z: Quaternion, y: Quaternion) -> bool:
    """True iff the unit quaternions z and y are conjugate in H^x.

    For units this is equivalent to equal real parts (the conjugacy class of
    a unit quaternion is the sphere of fixed real part); the equivalence is
    cross-checked against the eigenvalue oracle in the test suite.
    """
    for q in (z, y):
        if abs(q.norm() - 1.0) > config.UNIT_NORM_SLACK:
            raise ValueError(f"conjugate_in_Hx requires unit quaternions, got norm {q.norm()}")
    return bool(abs(z.re() - y.re()) <= config.EPS)


def exp_pi_i(t) -> UnitQuaternion:
    """cos(pi t) + sin(pi t) i for rational t; lies in R + iR."""
    t = Fraction(t)
    return UnitQuaternion(_cospi(t), _sinpi(t), 0.0, 0.0)


_SQRT5 = math.sqrt(5.0)
_SQRT2 = math.sqrt(2.0)

ONE = UnitQuaternion(1.0, 0.0, 0.0, 0.0)
I = UnitQuaternion(0.0, 1.0, 0.0, 0.0)
J = UnitQuaternion(0.0, 0.0, 1.0, 0.0)
K = UnitQuaternion(0.0, 0.0, 0.0, 1.0)
# order 3
OMEGA = UnitQuaternion(-0.5, 0.5, 0.5, 0.5)
# order 4
I_O = UnitQuaternion(0.0, 0.0, 1.0 / _SQRT2, 1.0 / _SQRT2)
# order 4; the j and k weights are the golden-ratio conjugate pair
I_I = UnitQuaternion(0.0, 0.5, (_SQRT5 - 1.0) / 4.0, (_SQRT5 + 1.0) / 4.0)
I_I_PRIME = UnitQuaternion(0.0, -(_SQRT5 - 1.0) / 4.0, -(_SQRT5 + 1.0) / 4.0, 0.5)
# primitive 8th root of 1 in R + iR
ZETA8 = exp_pi_i(Fraction(1, 4))

_NAMED = {
    "one": ONE,
    "i": I,
    "j": J,
    "k": K,
    "omega": OMEGA,
    "iO": I_O,
    "iI": I_I,
    "iIp": I_I_PRIME,
    "zeta8": ZETA8,
}


def named_constant(name: str) -> UnitQuaternion:
    try:
        return _NAMED[name]
    except KeyError:
        raise KeyError(f"unknown quaternion constant {name!r}; valid: {sorted(_NAMED)}") from None
