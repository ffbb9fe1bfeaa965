"""Elements of O(4) in quaternion-pair form.

A proper element ``[z, w]`` is the rotation x -> conj(z) x w; the starred
form ``*[z, w]`` is the reflection x -> conj(z) conj(x) w.  Pairs are defined
up to a simultaneous sign flip, so construction canonicalizes the sign: the
first component of z with magnitude above EPS is made positive.

Composition is written left to right: ``e1.compose(e2)`` applies e1 first.
On pairs this is

    [z1,w1][z2,w2]   = [z1 z2, w1 w2]      *[z1,w1][z2,w2]  = *[z1 z2, w1 w2]
    [z1,w1]*[z2,w2]  = *[w1 z2, z1 w2]     *[z1,w1]*[z2,w2] = [w1 z2, z1 w2]

(the second column swaps the roles of z1 and w1 because the inner
conjugation reverses the factors), so the matrix of the composite is always
matrix(e2) @ matrix(e1).  The pair rules are validated against matrix
products in the test suite.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import config
from .quat import (
    Quaternion,
    UnitQuaternion,
    conjugate_in_Hx,
    left_matrix,
    named_constant,
    qmul,
    right_matrix,
    unit,
)
from .scalar import ScalarError, parse_scalar

# matrix of x -> conj(x)
_CONJ = np.diag([1.0, -1.0, -1.0, -1.0])


class OrderCapExceeded(RuntimeError):
    """No power of the element up to the cap equals the identity."""


class ElementSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


def _grid_keys(matrix: np.ndarray) -> tuple[tuple, tuple]:
    # two offset rounding grids: a value jittering across a boundary of one
    # grid sits safely inside a cell of the other
    scale = 10.0**config.HASH_DIGITS
    flat = matrix.reshape(-1)
    key_a = tuple(round(x, config.HASH_DIGITS) for x in flat)
    key_b = tuple(math.floor(x * scale) for x in flat)
    return key_a, key_b


class OrthElement:
    """Immutable O(4) element: sign-canonical quaternion pair plus star flag,
    with the 4x4 matrix of its action on coordinates (1, i, j, k) cached."""

    __slots__ = ("star", "z", "w", "matrix", "_key", "_key2")

    def __init__(self, z: Quaternion, w: Quaternion, star: bool = False):
        z = unit(z)
        w = unit(w)
        for comp in (z.a, z.b, z.c, z.d):
            if abs(comp) > config.EPS:
                if comp < 0:
                    z, w = -z, -w
                break
        z = unit(z)
        w = unit(w)
        object.__setattr__(self, "star", bool(star))
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)
        m = left_matrix(z.conj()) @ right_matrix(w)
        if star:
            m = m @ _CONJ
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        key_a, key_b = _grid_keys(m)
        object.__setattr__(self, "_key", key_a)
        object.__setattr__(self, "_key2", key_b)

    def __setattr__(self, name, value):
        raise AttributeError("OrthElement is immutable")

    # --- structure ---------------------------------------------------------

    def det(self) -> float:
        return -1.0 if self.star else 1.0

    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def isclose(self, other: "OrthElement", eps: float | None = None) -> bool:
        eps = config.EPS if eps is None else eps
        return bool(np.abs(self.matrix - other.matrix).max() <= eps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthElement):
            return NotImplemented
        return self._key == other._key and self.isclose(other)

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return self.pair_text()

    def pair_text(self) -> str:
        def q(t: Quaternion) -> str:
            return "(%s)" % ", ".join("%.12g" % (c + 0.0) for c in (t.a, t.b, t.c, t.d))

        return "%s[%s, %s]" % ("*" if self.star else "", q(self.z), q(self.w))

    def is_identity(self, eps: float | None = None) -> bool:
        eps = config.EPS if eps is None else eps
        return not self.star and bool(np.abs(self.matrix - np.eye(4)).max() <= eps)

    # --- action ------------------------------------------------------------

    def apply(self, x: Quaternion) -> Quaternion:
        if self.star:
            x = x.conj()
        return qmul(qmul(self.z.conj(), x), self.w)

    def compose(self, other: "OrthElement") -> "OrthElement":
        """Apply self first, then other."""
        if other.star:
            new_z = qmul(self.w, other.z)
            new_w = qmul(self.z, other.w)
        else:
            new_z = qmul(self.z, other.z)
            new_w = qmul(self.w, other.w)
        return OrthElement(new_z, new_w, star=self.star != other.star)

    def inverse(self) -> "OrthElement":
        if self.star:
            return OrthElement(self.w.conj(), self.z.conj(), star=True)
        return OrthElement(self.z.conj(), self.w.conj(), star=False)

    def conjugated_by(self, h: "OrthElement") -> "OrthElement":
        """h^-1 * self * h, i.e. the element with matrix H^-1 M H."""
        return h.compose(self).compose(h.inverse())

    def order(self, cap: int | None = None) -> int:
        """Least n >= 1 with self^n = identity.

        The candidate is the lcm of the eigenvalue angles' denominators and
        is verified by an actual matrix power; a brute-force walk is the
        fallback for inputs the rational fit cannot explain.
        """
        cap = config.ORDER_CAP if cap is None else cap
        eigs = np.linalg.eigvals(self.matrix)
        n = 1
        ok = True
        for lam in eigs:
            t = math.atan2(lam.imag, lam.real) / (2.0 * math.pi) % 1.0
            frac = Fraction(t).limit_denominator(cap)
            if abs(float(frac) - t) > 1e-7:
                ok = False
                break
            n = n * frac.denominator // math.gcd(n, frac.denominator)
            if n > cap:
                raise OrderCapExceeded(f"element order exceeds cap {cap}")
        if ok and np.abs(np.linalg.matrix_power(self.matrix, n) - np.eye(4)).max() <= 1e-6:
            return n
        e = self
        for k in range(1, cap + 1):
            if e.is_identity():
                return k
            e = e.compose(self)
        raise OrderCapExceeded(f"element order exceeds cap {cap}")

    def has_invariant_line(self) -> bool:
        """True iff some line L has self(L) = L.

        Proper case: [z, w] fixes a line exactly when z is conjugate in H^x
        to w or to -w.  Starred elements always have one: an improper
        orthogonal map of R^4 has determinant -1, its complex eigenvalues
        pair off with product +1, so a real eigenvalue +-1 is forced.
        """
        if self.star:
            return True
        return bool(conjugate_in_Hx(self.z, self.w) or conjugate_in_Hx(self.z, -self.w))


def identity() -> OrthElement:
    return OrthElement(named_constant("one"), named_constant("one"))


def from_pair(z: Quaternion, w: Quaternion, star: bool = False) -> OrthElement:
    return OrthElement(z, w, star=star)


def random_element(rng: np.random.Generator, star: bool = False) -> OrthElement:
    def ru() -> UnitQuaternion:
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        return UnitQuaternion(*v)

    return OrthElement(ru(), ru(), star=star)


def random_rotation(rng: np.random.Generator) -> OrthElement:
    return random_element(rng, star=False)


# --- matrix factorization ----------------------------------------------------


def _quaternion_from_rotation3(R: np.ndarray) -> UnitQuaternion:
    """Unit q with q v q^-1 = R v on pure quaternions (Shepperd's branches)."""
    t = R[0, 0] + R[1, 1] + R[2, 2]
    if t > 0:
        r = math.sqrt(1.0 + t)
        s = 0.5 / r
        q = (0.5 * r, (R[2, 1] - R[1, 2]) * s, (R[0, 2] - R[2, 0]) * s, (R[1, 0] - R[0, 1]) * s)
    else:
        axis = int(np.argmax(np.diag(R)))
        a, b, c = axis, (axis + 1) % 3, (axis + 2) % 3
        r = math.sqrt(1.0 + R[a, a] - R[b, b] - R[c, c])
        s = 0.5 / r
        vec = [0.0, 0.0, 0.0]
        vec[a] = 0.5 * r
        vec[b] = (R[b, a] + R[a, b]) * s
        vec[c] = (R[c, a] + R[a, c]) * s
        q = ((R[c, b] - R[b, c]) * s, vec[0], vec[1], vec[2])
    return UnitQuaternion(*q)


def from_matrix(M, atol: float = 1e-6) -> OrthElement:
    """Factor an orthogonal 4x4 matrix into quaternion-pair form."""
    M = np.asarray(M, dtype=float)
    if M.shape != (4, 4) or np.abs(M.T @ M - np.eye(4)).max() > atol:
        raise ValueError("from_matrix requires an orthogonal 4x4 matrix")
    star = bool(np.linalg.det(M) < 0)
    R = M @ _CONJ if star else M
    # columns of R are conj(z) e w; dividing out the image of 1 leaves the
    # conjugation v -> conj(z) v z on the pure part
    m1 = unit(Quaternion.from_array(R[:, 0]))
    rot = np.empty((3, 3))
    for col in range(3):
        v = qmul(Quaternion.from_array(R[:, col + 1]), m1.conj())
        rot[:, col] = v.as_array()[1:]
    p = _quaternion_from_rotation3(rot)  # p = conj(z)
    z = p.conj()
    w = unit(qmul(z, m1))
    e = OrthElement(z, w, star=star)
    if np.abs(e.matrix - M).max() > max(atol, 1e-8):
        raise ValueError("matrix does not factor as a quaternion pair")
    return e


# --- element text syntax ------------------------------------------------------

_KEYWORDS = {
    "1": "one",
    "i": "i",
    "j": "j",
    "k": "k",
    "w": "omega",
    "iO": "iO",
    "iI": "iI",
    "iIp": "iIp",
    "z8": "zeta8",
}


def _split_top_level(text: str, base: int) -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ElementSyntaxError("unbalanced ')'", base + pos)
        elif ch == "," and depth == 0:
            parts.append((text[start:pos], base + start))
            start = pos + 1
    if depth != 0:
        raise ElementSyntaxError("unbalanced '('", base + len(text))
    parts.append((text[start:], base + start))
    return parts


def _parse_scalar_at(text: str, offset: int):
    try:
        return parse_scalar(text)
    except ScalarError as exc:
        raise ElementSyntaxError(f"bad scalar expression: {exc}", offset) from exc


def _quaternion_power(q: UnitQuaternion, n: int) -> UnitQuaternion:
    if n < 0:
        q, n = unit(q.conj()), -n
    out = named_constant("one")
    for _ in range(n):
        out = unit(qmul(out, q))
    return out


def _parse_quaternion_term(text: str, offset: int) -> UnitQuaternion:
    body = text.strip()
    pad = offset + (len(text) - len(text.lstrip()))
    negative = False
    if body.startswith("-"):
        negative = True
        body = body[1:].lstrip()
        pad += 1
    if body.startswith("("):
        comps = _split_top_level(body[1:-1], pad + 1) if body.endswith(")") else None
        if comps is None or len(comps) != 4:
            raise ElementSyntaxError("a quaternion tuple needs four scalar components", pad)
        vals = [_parse_scalar_at(t, off).value for t, off in comps]
        q = Quaternion(*vals)
    else:
        name, _, exp = body.partition("^")
        name = name.strip()
        if name not in _KEYWORDS:
            raise ElementSyntaxError(
                f"unknown quaternion {name!r} (keywords: {sorted(_KEYWORDS)})", pad
            )
        q = named_constant(_KEYWORDS[name])
        if exp:
            try:
                q = _quaternion_power(q, int(exp.strip()))
            except ValueError:
                raise ElementSyntaxError(f"bad exponent {exp.strip()!r}", pad) from None
    if negative:
        q = -q
    try:
        return unit(q)
    except ValueError as exc:
        raise ElementSyntaxError(f"quaternion is not unit length: {exc}", pad) from exc


def parse_element(text: str) -> OrthElement:
    """Parse element text: ``[z, w]`` or ``*[z, w]`` atoms, chained left to
    right (``*[k,k][i,1]`` applies ``*[k,k]`` first).

    Each of z, w is a keyword (1, i, j, k, w, iO, iI, iIp, z8, with an
    optional integer power and sign) or a parenthesized 4-tuple of scalar
    expressions; a bracket may also hold eight bare scalar expressions, the
    components of z then w.
    """
    pos = 0
    result: OrthElement | None = None
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        star = False
        if text[pos] == "*":
            star = True
            pos += 1
            while pos < n and text[pos].isspace():
                pos += 1
        if pos >= n or text[pos] != "[":
            raise ElementSyntaxError("expected '['", pos)
        depth, close = 0, -1
        for scan in range(pos, n):
            if text[scan] == "[":
                depth += 1
            elif text[scan] == "]":
                depth -= 1
                if depth == 0:
                    close = scan
                    break
        if close < 0:
            raise ElementSyntaxError("unbalanced '['", pos)
        parts = _split_top_level(text[pos + 1 : close], pos + 1)
        if len(parts) == 2:
            z = _parse_quaternion_term(*parts[0])
            w = _parse_quaternion_term(*parts[1])
        elif len(parts) == 8:
            vals = [_parse_scalar_at(t, off).value for t, off in parts]
            try:
                z = unit(Quaternion(*vals[:4]))
                w = unit(Quaternion(*vals[4:]))
            except ValueError as exc:
                raise ElementSyntaxError(f"quaternion is not unit length: {exc}", pos + 1) from exc
        else:
            raise ElementSyntaxError(
                f"a bracket holds two quaternions or eight scalars, got {len(parts)} items",
                pos + 1,
            )
        atom = OrthElement(z, w, star=star)
        result = atom if result is None else result.compose(atom)
        pos = close + 1
    if result is None:
        raise ElementSyntaxError("empty element text", 0)
    return result
