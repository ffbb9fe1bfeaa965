"""Named verification claims: every computational statement the package is
built around, runnable as one suite (``verify-paper`` in the CLI, or the
acceptance test module).

Each claim returns a ClaimResult; ``run_claims`` executes them in order.
One claim, ``lemma-range-as-stated``, encodes a published range for the
two-parameter rotation product that is arithmetically unattainable (the
product has a real eigenspace whenever min(m, n) <= 2); it is kept as
stated, fails honestly, and sits next to its corrected-range counterpart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import catalog, reports
from .chirality import chirality_invariant, orbit_permutation
from .elem import from_matrix, random_element
from .group import (
    GROUP_K,
    classify,
    closure,
    find_invariant_line,
    group_K,
    invariant_planes,
)
from .linalg import eigen_real_line, lcp_witness
from .scalar import eval_scalar, format_scalar, parse_scalar

SWEEP_FAMILIES = (
    catalog.TORUS_TRANSLATION,
    catalog.TORUS_FLIP,
    catalog.TORUS_REFLECTION_FULL,
    catalog.TORUS_SWAPTURN,
    catalog.TUBICAL_SAMPLE,
    catalog.POLYHEDRAL_IXI_MINUS,
    catalog.POLYHEDRAL_IXI_PLUS,
    catalog.LEMMA_ENEM,
)

_SWEEP_RANGES = {catalog.LEMMA_ENEM: {"m": "2..8", "n": "2..8"}}


@dataclass
class ClaimResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


@lru_cache(maxsize=1)
def catalog_sweep():
    """Close and classify every parameterized catalog spec at sweep scale
    (m, n <= 8; swapturn a <= 8); shared across claims."""
    out = []
    for family in SWEEP_FAMILIES:
        for spec in catalog.sweep_specs(family, _SWEEP_RANGES.get(family)):
            G = closure(catalog.generators(spec))
            out.append((spec, G, classify(G)))
    return out


def claim_k_structure() -> ClaimResult:
    K = group_K()
    k1, k2 = K.generators
    problems = []
    if len(K) != 16:
        problems.append(f"order {len(K)} != 16")
    if k1.order() != 4 or k2.order() != 4:
        problems.append("generator orders != 4")
    if np.abs(k1.compose(k2).matrix + k2.compose(k1).matrix).max() > 1e-9:
        problems.append("k1 k2 != -k2 k1")
    k1sq, k2sq = k1.compose(k1), k2.compose(k2)
    if np.abs(k1sq.compose(k2sq).matrix + np.eye(4)).max() > 1e-9:
        problems.append("k1^2 k2^2 != -I")
    for e in K.elements:
        if eigen_real_line(e.matrix) is None:
            problems.append(f"element without real eigenvalue: {e}")
    if find_invariant_line(K) is not None:
        problems.append("a common invariant line exists")
    planes = invariant_planes(K)
    if len(planes) != 2:
        problems.append(f"{len(planes)} invariant planes != 2")
    else:
        projs = sorted(tuple(np.round((B @ B.T).reshape(-1), 6)) for B in planes)
        want = sorted(
            [
                tuple(np.diag([1.0, 1.0, 0.0, 0.0]).reshape(-1)),
                tuple(np.diag([0.0, 0.0, 1.0, 1.0]).reshape(-1)),
            ]
        )
        if projs != want:
            problems.append("invariant planes are not span(1,i) and span(j,k)")
    return ClaimResult(
        "k-structure",
        not problems,
        "; ".join(problems) or "order 16, relations, eigenvalues, planes all check",
    )


def claim_trichotomy_sweep() -> ClaimResult:
    mismatches = []
    k_hits = []
    for spec, G, c in catalog_sweep():
        expected = catalog.expected_classification(spec)
        if expected is not None and expected != c.case:
            mismatches.append((spec.label(), expected, c.case))
        if c.case == GROUP_K:
            k_hits.append(spec.label())
    ok = not mismatches and k_hits == ["torus-reflection-full(m=2,n=2,subtype=p2gg)"]
    detail = (
        f"{len(catalog_sweep())} specs, {len(mismatches)} mismatches, K verdicts: {k_hits}"
        if ok
        else f"mismatches={mismatches[:5]}, K verdicts={k_hits}"
    )
    return ClaimResult("trichotomy-sweep", ok, detail)


def claim_chiral_line_oracle() -> ClaimResult:
    checked = 0
    disagreements = []
    for spec, G, _ in catalog_sweep():
        for e in G.elements:
            checked += 1
            if e.has_invariant_line() != (eigen_real_line(e.matrix) is not None):
                disagreements.append((spec.label(), e.pair_text()))
    rng = np.random.default_rng(20240401)
    for _ in range(1000):
        e = random_element(rng, star=bool(rng.integers(2)))
        checked += 1
        if e.has_invariant_line() != (eigen_real_line(e.matrix) is not None):
            disagreements.append(("random", e.pair_text()))
    return ClaimResult(
        "chiral-line-oracle",
        not disagreements,
        f"{checked} elements, {len(disagreements)} disagreements",
    )


def claim_lemma_range_as_stated() -> ClaimResult:
    """As published: the (m, n) rotation product has no real eigenspace for
    all 2 <= m, n <= 12 with max(m, n) >= 3.  Arithmetically false when
    min(m, n) = 2 (the product then contains a half-turn plane), so this
    claim fails; see the corrected-range claim."""
    counterexamples = []
    for m in range(2, 13):
        for n in range(2, 13):
            if max(m, n) < 3:
                continue
            if catalog.lemma_product(m, n).has_invariant_line():
                counterexamples.append((m, n))
    return ClaimResult(
        "lemma-range-as-stated",
        not counterexamples,
        "no real eigenspaces on the stated range"
        if not counterexamples
        else f"{len(counterexamples)} counterexamples with a real eigenspace, first {counterexamples[0]}",
    )


def claim_lemma_range_corrected() -> ClaimResult:
    bad = []
    for m in range(1, 13):
        for n in range(1, 13):
            has_line = catalog.lemma_product(m, n).has_invariant_line()
            if has_line != (min(m, n) <= 2):
                bad.append((m, n))
    return ClaimResult(
        "lemma-range-corrected",
        not bad,
        "real eigenspace iff min(m,n) <= 2, all m,n <= 12" if not bad else f"failures: {bad[:5]}",
    )


def claim_trace_separation() -> ClaimResult:
    s5 = math.sqrt(5.0)
    problems = []
    for family, w_trace in (
        (catalog.POLYHEDRAL_IXI_MINUS, -(s5 - 1) / 2),
        (catalog.POLYHEDRAL_IXI_PLUS, (s5 - 1) / 2),
    ):
        g1, g2 = catalog.generators(catalog.FamilySpec.make(family))
        prod = g1.compose(g2)
        z, w = prod.z, prod.w
        if z.re() > 0:
            z, w = -z, -w
        if abs(2 * z.re() - (-(s5 + 1) / 2)) > 1e-9:
            problems.append(f"{family}: z trace {2 * z.re()}")
        if abs(2 * w.re() - w_trace) > 1e-9:
            problems.append(f"{family}: w trace {2 * w.re()}")
        if prod.has_invariant_line():
            problems.append(f"{family}: product keeps a line invariant")
    return ClaimResult(
        "trace-separation",
        not problems,
        "; ".join(problems) or "both products: traces -(sqrt5+1)/2 vs -+(sqrt5-1)/2, no line",
    )


def claim_lcp_equivalence() -> ClaimResult:
    problems = []
    for spec, G, c in catalog_sweep():
        W = lcp_witness(G)
        has_line = find_invariant_line(G) is not None
        if (W is not None) != has_line:
            problems.append(f"{spec.label()}: witness/line disagree")
            continue
        if W is None:
            continue
        if abs(np.linalg.det(W) + 1.0) > 1e-9:
            problems.append(f"{spec.label()}: witness det != -1")
        bad = max(np.abs(W @ g.matrix - g.matrix @ W).max() for g in G.elements)
        if bad > 1e-9:
            problems.append(f"{spec.label()}: witness fails to commute ({bad})")
    return ClaimResult(
        "lcp-equivalence",
        not problems,
        "; ".join(problems[:3]) or f"witness iff invariant line on {len(catalog_sweep())} groups",
    )


def _double_rotation_test_set():
    """50 double rotations, ordinary and isoclinic, orders 3 through 12."""
    elements = []
    for m in range(3, 13):
        residues = [a for a in range(1, (m + 1) // 2) if 2 * a != m]
        pairs = [(a1, a2) for a1 in residues for a2 in residues if a1 <= a2]
        for a1, a2 in pairs[:8]:
            theta1, theta2 = 2 * math.pi * a1 / m, 2 * math.pi * a2 / m
            block = np.zeros((4, 4))
            block[:2, :2] = [[math.cos(theta1), -math.sin(theta1)], [math.sin(theta1), math.cos(theta1)]]
            block[2:, 2:] = [[math.cos(theta2), -math.sin(theta2)], [math.sin(theta2), math.cos(theta2)]]
            e = from_matrix(block)
            if not e.has_invariant_line():
                elements.append(e)
        if len(elements) >= 50:
            break
    return elements[:50]


def claim_chirality_invariance() -> ClaimResult:
    rng = np.random.default_rng(987)
    elements = _double_rotation_test_set()
    problems = []
    for e in elements:
        base = chirality_invariant(e)
        for _ in range(200):
            h = random_element(rng, star=False)
            d = chirality_invariant(e.conjugated_by(h))
            if d.lk_class != base.lk_class or (d.a1, d.a2, d.m) != (base.a1, base.a2, base.m):
                problems.append(f"proper conjugation changed invariant of {e.pair_text()}")
                break
        for _ in range(200):
            h = random_element(rng, star=True)
            d = chirality_invariant(e.conjugated_by(h))
            if d.lk_class != (-base.lk_class) % base.m:
                problems.append(f"improper conjugation failed to negate for {e.pair_text()}")
                break
        if base.isoclinic:
            for _ in range(20):
                again = chirality_invariant(e, rng=rng)
                if again.lk_sign != base.lk_sign:
                    problems.append(f"isoclinic redecomposition changed sign for {e.pair_text()}")
                    break
    iso = sum(1 for e in elements if chirality_invariant(e).isoclinic)
    return ClaimResult(
        "chirality-invariance",
        not problems,
        "; ".join(problems[:3])
        or f"{len(elements)} double rotations ({iso} isoclinic), 200+200 conjugations each",
    )


def claim_orbit_permutation() -> ClaimResult:
    problems = []
    if orbit_permutation(1, 5) != (1, 2, 3, 4):
        problems.append("orbit(1,5)")
    if orbit_permutation(4, 5) != (4, 3, 2, 1):
        problems.append("orbit(4,5)")
    for m in range(3, 31):
        for a in range(1, m):
            if math.gcd(a, m) != 1 or (m % 2 == 0 and a == m // 2):
                continue
            if orbit_permutation(m - a, m) != tuple(reversed(orbit_permutation(a, m))):
                problems.append(f"reversal failed at (a={a}, m={m})")
    return ClaimResult(
        "orbit-permutation",
        not problems,
        "; ".join(problems[:3]) or "introductory lists exact; mirror reversal for all m <= 30",
    )


def _random_scalar_tree(rng, depth):
    from . import scalar

    kind = rng.integers(0, 4 if depth <= 0 else 9)
    if kind == 0:
        return scalar.rational(int(rng.integers(-40, 41)), int(rng.integers(1, 13)))
    if kind == 1:
        return scalar.sqrt_int(int(rng.integers(1, 51)))
    if kind == 2:
        return scalar.cospi(Fraction(int(rng.integers(-24, 25)), int(rng.integers(1, 25))))
    if kind == 3:
        return scalar.sinpi(Fraction(int(rng.integers(-24, 25)), int(rng.integers(1, 25))))
    if kind == 4:
        return scalar.neg(_random_scalar_tree(rng, depth - 1))
    a = _random_scalar_tree(rng, depth - 1)
    b = _random_scalar_tree(rng, depth - 1)
    if kind == 5:
        return scalar.add(a, b)
    if kind == 6:
        return scalar.sub(a, b)
    if kind == 7:
        return scalar.mul(a, b)
    try:
        return scalar.div(a, b)
    except scalar.ScalarDomainError:
        return scalar.sub(a, b)


def claim_determinism_roundtrip() -> ClaimResult:
    problems = []
    gens = ["*[i,i][i,1]", "*[k,k][i,1]"]
    first = reports.canonical_json(reports.strip_timing(reports.classify_report("K", gens)))
    second = reports.canonical_json(reports.strip_timing(reports.classify_report("K", gens)))
    if first != second:
        problems.append("classify reports differ between runs")
    inv1 = reports.canonical_json(reports.invariant_report("[w,1]"))
    inv2 = reports.canonical_json(reports.invariant_report("[w,1]"))
    if inv1 != inv2:
        problems.append("invariant reports differ between runs")
    rng = np.random.default_rng(515151)
    for _ in range(500):
        tree = _random_scalar_tree(rng, int(rng.integers(0, 5)))
        if eval_scalar(parse_scalar(format_scalar(tree))) != eval_scalar(tree):
            problems.append(f"round trip failed: {format_scalar(tree)}")
            break
    return ClaimResult(
        "determinism-roundtrip",
        not problems,
        "; ".join(problems) or "byte-identical reports; 500 print/parse round trips exact",
    )


CLAIMS = (
    ("k-structure", claim_k_structure),
    ("trichotomy-sweep", claim_trichotomy_sweep),
    ("chiral-line-oracle", claim_chiral_line_oracle),
    ("lemma-range-as-stated", claim_lemma_range_as_stated),
    ("lemma-range-corrected", claim_lemma_range_corrected),
    ("trace-separation", claim_trace_separation),
    ("lcp-equivalence", claim_lcp_equivalence),
    ("chirality-invariance", claim_chirality_invariance),
    ("orbit-permutation", claim_orbit_permutation),
    ("determinism-roundtrip", claim_determinism_roundtrip),
)


def run_claims(only: str | None = None) -> list[ClaimResult]:
    names = [n for n, _ in CLAIMS]
    if only is not None and only not in names:
        raise ValueError(f"unknown claim {only!r}; valid: {names}")
    return [fn() for name, fn in CLAIMS if only is None or name == only]
