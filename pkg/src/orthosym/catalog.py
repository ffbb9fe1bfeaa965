"""Constructors for the concrete groups and elements the classifier is
exercised on, keyed by family name and integer parameters, plus the
independent expected classification for each family.

Expected cases are computed at parameter level (congruences on rotation
exponents), never by running the classifier, so the sweep acceptance test
diffs two genuinely independent routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .elem import OrthElement, from_pair, parse_element
from .group import CHIRAL_ELEMENT, GROUP_K, INVARIANT_LINE
from .quat import exp_pi_i, named_constant

TORUS_TRANSLATION = "torus-translation"
TORUS_FLIP = "torus-flip"
TORUS_REFLECTION_FULL = "torus-reflection-full"
TORUS_SWAPTURN = "torus-swapturn"
FAMILY_GROUP_K = "group-k"
TUBICAL_SAMPLE = "tubical-sample"
POLYHEDRAL_IXI_MINUS = "polyhedral-ixibar-minus"
POLYHEDRAL_IXI_PLUS = "polyhedral-ixibar-plus"
LEMMA_ENEM = "lemma-enem"

FAMILIES = (
    TORUS_TRANSLATION,
    TORUS_FLIP,
    TORUS_REFLECTION_FULL,
    TORUS_SWAPTURN,
    FAMILY_GROUP_K,
    TUBICAL_SAMPLE,
    POLYHEDRAL_IXI_MINUS,
    POLYHEDRAL_IXI_PLUS,
    LEMMA_ENEM,
)

REFLECTION_SUBTYPES = ("p2mm", "p2mg", "p2gg", "c2mm")


class FamilyParameterError(ValueError):
    """A parameter broke its family constraint; the message names it."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[tuple[str, object], ...] = ()

    @classmethod
    def make(cls, family: str, **params) -> "FamilySpec":
        if family not in FAMILIES:
            raise FamilyParameterError(f"unknown family {family!r}; valid: {sorted(FAMILIES)}")
        return cls(family, tuple(sorted(params.items())))

    def get(self, name: str, default=None):
        for key, value in self.params:
            if key == name:
                return value
        return default

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({inner})" if inner else self.family


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FamilyParameterError(message)


def _int_param(spec: FamilySpec, name: str) -> int:
    value = spec.get(name)
    _require(value is not None, f"{spec.family} requires parameter {name}")
    _require(isinstance(value, int), f"parameter {name} must be an integer, got {value!r}")
    return value


def _translation_like_params(spec: FamilySpec) -> tuple[int, int, int]:
    m, n, s = (_int_param(spec, k) for k in ("m", "n", "s"))
    _require(m >= 1, f"constraint violated: m >= 1 (m={m})")
    _require(n >= 1, f"constraint violated: n >= 1 (n={n})")
    _require(2 * s >= -m, f"constraint violated: -m/2 <= s (m={m}, s={s})")
    _require(2 * s <= -m + n, f"constraint violated: s <= -m/2 + n/2 (m={m}, n={n}, s={s})")
    return m, n, s


def _translation_generators(m: int, n: int, s: int) -> list[OrthElement]:
    one = named_constant("one")
    g1 = from_pair(exp_pi_i(Fraction(-2, m)), one)
    g2 = from_pair(exp_pi_i(Fraction(-(m + 2 * s), m * n)), exp_pi_i(Fraction(1, n)))
    return [g1, g2]


def _reflection_full_params(spec: FamilySpec) -> tuple[int, int, str | None]:
    m, n = _int_param(spec, "m"), _int_param(spec, "n")
    _require(m != 1, f"constraint violated: m != 1 (m={m})")
    _require(1 <= n <= m, f"constraint violated: 1 <= n <= m (m={m}, n={n})")
    subtype = spec.get("subtype")
    if m == 2:
        _require(
            subtype in REFLECTION_SUBTYPES,
            f"m=2 full reflection groups need subtype in {REFLECTION_SUBTYPES}, got {subtype!r}",
        )
    return m, n, subtype


_REFLECTION_TABLE = {
    ("p2mm", 1): ("[i,i]", "*[i,i]", "*[k,k]"),
    ("p2mm", 2): ("[i,i]", "[i,-i]", "*[i,i]", "*[k,k]"),
    ("p2mg", 1): ("[i,i]", "*[i,i][i,-i]", "*[k,k][i,-i]"),
    ("p2mg", 2): ("[i,i]", "[i,-i]", "*[i,i][z8,z8^-1]", "*[k,k][z8,z8^-1]"),
    ("p2gg", 1): ("[i,i]", "*[i,i][z8^3,z8]", "*[k,k][z8^3,z8]"),
    ("p2gg", 2): ("[i,i]", "[i,-i]", "*[i,i][i,1]", "*[k,k][i,1]"),
    ("c2mm", 1): ("[i,i]", "[z8^3,z8]", "*[i,i]", "*[k,k]"),
    ("c2mm", 2): ("[i,i]", "[i,-i]", "[i,1]", "*[i,i]", "*[k,k]"),
}


def _swapturn_params(spec: FamilySpec) -> tuple[int, int]:
    a, b = _int_param(spec, "a"), _int_param(spec, "b")
    _require(a >= 2, f"constraint violated: a >= 2 (a={a})")
    _require(a >= b >= 0, f"constraint violated: a >= b >= 0 (a={a}, b={b})")
    _require((a, b) != (2, 0), "constraint violated: (a, b) != (2, 0) (degenerate)")
    return a, b


def _lemma_params(spec: FamilySpec) -> tuple[int, int]:
    m, n = _int_param(spec, "m"), _int_param(spec, "n")
    _require(m >= 1, f"constraint violated: m >= 1 (m={m})")
    _require(n >= 1, f"constraint violated: n >= 1 (n={n})")
    return m, n


def lemma_product(m: int, n: int) -> OrthElement:
    """[e^{pi i/n}, e^{pi i/n}] [e^{pi i/m}, e^{-pi i/m}]: rotates one plane
    by 2*pi/m and the other by 2*pi/n."""
    first = from_pair(exp_pi_i(Fraction(1, n)), exp_pi_i(Fraction(1, n)))
    second = from_pair(exp_pi_i(Fraction(1, m)), exp_pi_i(Fraction(-1, m)))
    return first.compose(second)


def generators(spec: FamilySpec) -> list[OrthElement]:
    """Generator list for a family instance, exactly as cataloged."""
    if spec.family == TORUS_TRANSLATION:
        return _translation_generators(*_translation_like_params(spec))
    if spec.family == TORUS_FLIP:
        m, n, s = _translation_like_params(spec)
        return _translation_generators(m, n, s) + [parse_element("[j,j]")]
    if spec.family == TORUS_REFLECTION_FULL:
        m, n, subtype = _reflection_full_params(spec)
        if m == 2:
            return [parse_element(t) for t in _REFLECTION_TABLE[(subtype, n)]]
        return [
            from_pair(exp_pi_i(Fraction(1, n)), exp_pi_i(Fraction(1, n))),
            from_pair(exp_pi_i(Fraction(1, m)), exp_pi_i(Fraction(-1, m))),
        ]
    if spec.family == TORUS_SWAPTURN:
        a, b = _swapturn_params(spec)
        den = a * a + b * b
        return [
            from_pair(exp_pi_i(Fraction(-(a + b), den)), exp_pi_i(Fraction(a - b, den))),
            from_pair(exp_pi_i(Fraction(a - b, den)), exp_pi_i(Fraction(a + b, den))),
            parse_element("*[-j,1]"),
        ]
    if spec.family == FAMILY_GROUP_K:
        return [parse_element("*[i,i][i,1]"), parse_element("*[k,k][i,1]")]
    if spec.family == TUBICAL_SAMPLE:
        kind = spec.get("kind", "i")
        _require(kind in ("i", "omega"), f"tubical sample kind must be 'i' or 'omega', got {kind!r}")
        return [parse_element("[i,1]" if kind == "i" else "[w,1]")]
    if spec.family == POLYHEDRAL_IXI_MINUS:
        return [parse_element("[w,w]"), parse_element("[iI,-iIp]")]
    if spec.family == POLYHEDRAL_IXI_PLUS:
        return [parse_element("[w,w]"), parse_element("[iI,iIp]")]
    if spec.family == LEMMA_ENEM:
        return [lemma_product(*_lemma_params(spec))]
    raise FamilyParameterError(f"unknown family {spec.family!r}")


def _rotation_subgroup_has_chiral(m: int, n: int, s: int) -> bool:
    """Parameter-level test for a chirality-obstructed element among the
    products t1^j t2^k of the two translation generators.

    The element's slot exponents, in units of pi/(m n), are
    alpha = -2 n j - (m + 2 s) k and beta = m k; it keeps a line invariant
    exactly when cos(alpha') = +-cos(beta'), i.e. alpha = +-beta or
    alpha = m n +- beta modulo 2 m n.
    """
    modulus = 2 * m * n
    half = m * n
    for j in range(m):
        for k in range(modulus):
            alpha = (-2 * n * j - (m + 2 * s) * k) % modulus
            beta = (m * k) % modulus
            keeps_line = (
                alpha == beta
                or alpha == (-beta) % modulus
                or alpha == (half + beta) % modulus
                or alpha == (half - beta) % modulus
            )
            if not keeps_line:
                return True
    return False


def expected_classification(spec: FamilySpec) -> str | None:
    """The classification the family's parameter analysis predicts, or None
    where only trichotomy consistency is claimed (m = 1 translation and flip
    groups, which are plain cyclic and dihedral actions)."""
    if spec.family in (TORUS_TRANSLATION, TORUS_FLIP):
        m, n, s = _translation_like_params(spec)
        if m == 1:
            return None
        # the flip coset never adds a chirality-obstructed element: its
        # members send both slots into jR + kR, where real parts vanish
        if _rotation_subgroup_has_chiral(m, n, s):
            return CHIRAL_ELEMENT
        return INVARIANT_LINE
    if spec.family == TORUS_REFLECTION_FULL:
        m, n, subtype = _reflection_full_params(spec)
        if m == 2:
            if (subtype, n) == ("p2gg", 2):
                return GROUP_K
            if (subtype, n) == ("c2mm", 2):
                # this cataloged list contains [i,1], which moves every line
                # (and in particular does not fix jR)
                return CHIRAL_ELEMENT
            return INVARIANT_LINE
        # the cataloged pair generates plane rotations by multiples of
        # 2 pi/m and 2 pi/n; a double rotation avoiding angles 0 and pi in
        # both planes exists iff both m and n exceed 2
        return CHIRAL_ELEMENT if n >= 3 else INVARIANT_LINE
    if spec.family == TORUS_SWAPTURN:
        _swapturn_params(spec)
        return CHIRAL_ELEMENT
    if spec.family == FAMILY_GROUP_K:
        return GROUP_K
    if spec.family in (TUBICAL_SAMPLE, POLYHEDRAL_IXI_MINUS, POLYHEDRAL_IXI_PLUS):
        return CHIRAL_ELEMENT
    if spec.family == LEMMA_ENEM:
        m, n = _lemma_params(spec)
        return CHIRAL_ELEMENT if min(m, n) >= 3 else INVARIANT_LINE
    raise FamilyParameterError(f"unknown family {spec.family!r}")


def swapturn_first_generator_is_chiral(a: int, b: int) -> bool:
    """Parameter-level criterion for the first swapturn generator: it moves
    every line unless +-(a+b) = a-b modulo a^2 + b^2."""
    den = a * a + b * b
    return not ((a + b) % den == (a - b) % den or (-(a + b)) % den == (a - b) % den)


# --- sweep enumeration --------------------------------------------------------


def _parse_range(text: str) -> list[int]:
    lo, _, hi = text.partition("..")
    if hi:
        return list(range(int(lo), int(hi) + 1))
    return [int(lo)]


def _translation_s_values(m: int, n: int) -> list[int]:
    return list(range(math.ceil(-m / 2), math.floor((-m + n) / 2) + 1))


def sweep_specs(family: str, ranges: dict[str, str] | None = None) -> list[FamilySpec]:
    """Expand a family plus range strings ('2', '1..8', or 'auto' where the
    family constrains a parameter) into the ordered spec list."""
    ranges = dict(ranges or {})
    if family not in FAMILIES:
        raise FamilyParameterError(f"unknown family {family!r}; valid: {sorted(FAMILIES)}")
    specs: list[FamilySpec] = []
    if family in (TORUS_TRANSLATION, TORUS_FLIP):
        for m in _parse_range(ranges.get("m", "1..8")):
            for n in _parse_range(ranges.get("n", "1..8")):
                s_text = ranges.get("s", "auto")
                s_values = _translation_s_values(m, n) if s_text == "auto" else _parse_range(s_text)
                for s in s_values:
                    specs.append(FamilySpec.make(family, m=m, n=n, s=s))
    elif family == TORUS_REFLECTION_FULL:
        subtypes = ranges.get("subtype", "all")
        chosen = REFLECTION_SUBTYPES if subtypes == "all" else tuple(subtypes.split("|"))
        for m in _parse_range(ranges.get("m", "2..8")):
            n_text = ranges.get("n", "auto")
            n_values = list(range(1, m + 1)) if n_text == "auto" else _parse_range(n_text)
            for n in n_values:
                if n > m or m < 2:
                    continue
                if m == 2:
                    for subtype in chosen:
                        specs.append(FamilySpec.make(family, m=m, n=n, subtype=subtype))
                else:
                    specs.append(FamilySpec.make(family, m=m, n=n))
    elif family == TORUS_SWAPTURN:
        for a in _parse_range(ranges.get("a", "2..8")):
            b_text = ranges.get("b", "auto")
            b_values = list(range(0, a + 1)) if b_text == "auto" else _parse_range(b_text)
            for b in b_values:
                if b > a or (a, b) == (2, 0):
                    continue
                specs.append(FamilySpec.make(family, a=a, b=b))
    elif family == LEMMA_ENEM:
        for m in _parse_range(ranges.get("m", "2..12")):
            for n in _parse_range(ranges.get("n", "2..12")):
                specs.append(FamilySpec.make(family, m=m, n=n))
    elif family == TUBICAL_SAMPLE:
        kinds = ranges.get("kind", "i|omega").split("|")
        for kind in kinds:
            specs.append(FamilySpec.make(family, kind=kind))
    else:
        specs.append(FamilySpec.make(family))
    return specs
