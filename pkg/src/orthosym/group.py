"""Finite subgroup machinery: closure from generators, common invariant
lines, conjugacy fingerprints, detection of the exceptional group K, and the
three-way classification.

Exactly one of the following holds for a finite subgroup G of O(4): some
line is invariant under all of G; some element of G moves every line; or G
is conjugate to K, the order-16 group generated by ``*[i,i][i,1]`` and
``*[k,k][i,1]``.  ``classify`` evaluates all three predicates and checks the
exclusivity rather than assuming it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import config
from .elem import OrthElement, from_matrix, identity, parse_element
from .linalg import canonical_unit, eigen_real_line, null_space, orthogonal_blocks

INVARIANT_LINE = "invariant-line"
CHIRAL_ELEMENT = "chiral-element"
GROUP_K = "group-k"

_I4 = np.eye(4)


class MaxOrderExceeded(RuntimeError):
    """Closure grew past the configured bound; generators are suspect."""


class TrichotomyViolation(RuntimeError):
    """Zero or several classification predicates held at once.  This cannot
    happen for a genuine finite subgroup; the diagnostics identify which
    predicate misfired."""


class ConjugatorNotFound(RuntimeError):
    """All screening predicates match K but the conjugator scan failed; the
    message carries the fingerprint evidence."""


class _ElementIndex:
    """Membership testing on two offset rounding grids.  A product that
    lands within EPS of a stored element always matches at least one grid,
    even if rounding jitter flips its key on the other."""

    def __init__(self):
        self._a: dict[tuple, list[OrthElement]] = {}
        self._b: dict[tuple, list[OrthElement]] = {}

    def find(self, e: OrthElement) -> OrthElement | None:
        for table, key in ((self._a, e._key), (self._b, e._key2)):
            for cand in table.get(key, ()):
                if cand.isclose(e):
                    return cand
        return None

    def add(self, e: OrthElement) -> None:
        self._a.setdefault(e._key, []).append(e)
        self._b.setdefault(e._key2, []).append(e)

    def __contains__(self, e: OrthElement) -> bool:
        return self.find(e) is not None


class FiniteGroup:
    """Closed, deduplicated element set with distinguished generators."""

    def __init__(self, elements: list[OrthElement], generator_indices: list[int]):
        self.elements = elements
        self.generator_indices = generator_indices
        self._index: _ElementIndex | None = None
        self._fingerprint: tuple | None = None
        self._orders: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def generators(self) -> list[OrthElement]:
        return [self.elements[i] for i in self.generator_indices]

    def index(self) -> _ElementIndex:
        if self._index is None:
            idx = _ElementIndex()
            for e in self.elements:
                idx.add(e)
            self._index = idx
        return self._index

    def __contains__(self, e: OrthElement) -> bool:
        return e in self.index()

    def element_orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [e.order(cap=max(len(self.elements), 2)) for e in self.elements]
        return self._orders

    @property
    def fingerprint(self) -> tuple:
        """Sorted multiset of (trace, det, order) triples; conjugation
        invariant, used as a cheap necessary test for matching K."""
        if self._fingerprint is None:
            trips = [
                (round(e.trace(), config.HASH_DIGITS), int(round(e.det())), n)
                for e, n in zip(self.elements, self.element_orders())
            ]
            self._fingerprint = tuple(sorted(trips))
        return self._fingerprint


def closure(gens, max_order: int | None = None) -> FiniteGroup:
    """Breadth-first products of the generators until closed.

    The element list is sorted by hash key, so two closures of the same
    group list elements identically regardless of generator order.
    """
    cap = config.MAX_GROUP_ORDER if max_order is None else max_order
    gens = list(gens)
    index = _ElementIndex()
    start = identity()
    index.add(start)
    elements = [start]
    cursor = 0
    while cursor < len(elements):
        current = elements[cursor]
        cursor += 1
        for g in gens:
            product = current.compose(g)
            if product not in index:
                index.add(product)
                elements.append(product)
                if len(elements) > cap:
                    raise MaxOrderExceeded(f"group order exceeds {cap}")
    elements.sort(key=lambda e: e._key)
    gen_indices = []
    position = {id(e): i for i, e in enumerate(elements)}
    for g in gens:
        stored = index.find(g)
        gen_indices.append(position[id(stored)])
    return FiniteGroup(elements, gen_indices)


def find_invariant_line(G: FiniteGroup) -> np.ndarray | None:
    """A unit vector spanning a line kept invariant by every element.

    A line is G-invariant iff each generator acts on it by +-1, so it
    suffices to intersect ker(g - eps*I) over all sign patterns eps on the
    generators.
    """
    gens = G.generators
    if not gens:
        return np.array([1.0, 0.0, 0.0, 0.0])
    for signs in itertools.product((1.0, -1.0), repeat=len(gens)):
        stacked = np.vstack([g.matrix - s * _I4 for g, s in zip(gens, signs)])
        ns = null_space(stacked)
        if ns.shape[1]:
            return canonical_unit(ns[:, 0])
    return None


def find_chiral_element(G: FiniteGroup) -> OrthElement | None:
    """First element (in the deterministic ordering) with no invariant line."""
    for e in G.elements:
        if not e.has_invariant_line():
            return e
    return None


def conjugate_group(G: FiniteGroup, h: OrthElement) -> FiniteGroup:
    """Elementwise h^-1 g h; conjugation preserves closure."""
    mapped = [e.conjugated_by(h) for e in G.elements]
    order = sorted(range(len(mapped)), key=lambda i: mapped[i]._key)
    elements = [mapped[i] for i in order]
    back = {old: new for new, old in enumerate(order)}
    gen_indices = [back[i] for i in G.generator_indices]
    return FiniteGroup(elements, gen_indices)


def groups_equal(G: FiniteGroup, H: FiniteGroup) -> bool:
    if len(G) != len(H):
        return False
    idx = H.index()
    return all(e in idx for e in G.elements)


@lru_cache(maxsize=1)
def group_K() -> FiniteGroup:
    """The exceptional order-16 group: every element keeps some line, but no
    single line is kept by all of them."""
    return closure([parse_element("*[i,i][i,1]"), parse_element("*[k,k][i,1]")])


def invariant_planes(G: FiniteGroup) -> list[np.ndarray]:
    """All 2-planes invariant under every element, found by checking the
    candidate planes that the elements' own block decompositions expose."""
    candidates: list[np.ndarray] = []
    for e in G.elements:
        planes, fixed, negated = orthogonal_blocks(e.matrix)
        for p in planes:
            candidates.append(p.basis())
        for space in (fixed, negated):
            if len(space) == 2:
                candidates.append(np.column_stack(space))
        if len(fixed) == 1 and len(negated) == 1:
            candidates.append(np.column_stack([fixed[0], negated[0]]))
    seen: dict[tuple, np.ndarray] = {}
    for B in candidates:
        Q, _ = np.linalg.qr(B)
        P = Q @ Q.T
        key = tuple(np.round(P.reshape(-1), config.HASH_DIGITS))
        if key in seen:
            continue
        if all(np.abs((np.eye(4) - P) @ (g.matrix @ Q)).max() <= 1e-7 for g in G.elements):
            seen[key] = Q
    return [seen[key] for key in sorted(seen)]


def _k_screen(G: FiniteGroup) -> bool:
    K = group_K()
    return (
        len(G) == 16
        and G.fingerprint == K.fingerprint
        and find_invariant_line(G) is None
        and find_chiral_element(G) is None
    )


def conjugate_to_K(G: FiniteGroup) -> OrthElement | None:
    """An element h with h^-1 G h = K, or None when G cannot be conjugate
    to K (wrong order, fingerprint, or classification predicates).

    The search solves, for each candidate pair of images of the two K
    generators, the linear intertwiner system {H k = g H}; the polar factor
    of any nonsingular solution is an orthogonal conjugator, because the
    solution space is H times the commutant of K and the commutant's
    symmetric factors absorb into K itself.  Raises ConjugatorNotFound if
    every candidate fails despite the screening match.
    """
    if not _k_screen(G):
        return None
    K = group_K()
    if groups_equal(G, K):
        return identity()
    k_gens = K.generators
    candidates = [e for e in G.elements if e.star and e.order(cap=16) == 4]
    for g1, g2 in itertools.product(candidates, repeat=2):
        rows = [
            np.kron(_I4, g1.matrix) - np.kron(k_gens[0].matrix.T, _I4),
            np.kron(_I4, g2.matrix) - np.kron(k_gens[1].matrix.T, _I4),
        ]
        ns = null_space(np.vstack(rows), eps=1e-7)
        if ns.shape[1] == 0:
            continue
        combos = [ns[:, j] for j in range(ns.shape[1])]
        if ns.shape[1] >= 2:
            combos += [ns[:, 0] + ns[:, 1], ns[:, 0] - ns[:, 1]]
        best, best_sigma = None, 0.0
        for vec in combos:
            X = vec.reshape(4, 4, order="F")
            sigma = float(np.linalg.svd(X, compute_uv=False)[-1])
            if sigma > best_sigma:
                best, best_sigma = X, sigma
        if best is None or best_sigma < 1e-6:
            continue
        U, _, Vt = np.linalg.svd(best)
        try:
            h = from_matrix(U @ Vt)
        except ValueError:
            continue
        if groups_equal(conjugate_group(G, h), K):
            return h
    raise ConjugatorNotFound(
        "all screening predicates match K (order 16, fingerprint, no invariant "
        f"line, no chiral element) but no conjugator was found; fingerprint: {G.fingerprint}"
    )


@dataclass
class Classification:
    """Trichotomy verdict with a re-checkable witness."""

    case: str
    line: np.ndarray | None = None
    reflection: np.ndarray | None = None  # I - 2 v v^T for the line witness
    chiral_element: OrthElement | None = None
    conjugator: OrthElement | None = None
    note: str | None = None

    def verify(self, G: FiniteGroup) -> bool:
        if self.case == INVARIANT_LINE:
            v = self.line
            if v is None or self.reflection is None:
                return False
            for g in G.elements:
                img = g.matrix @ v
                if min(np.abs(img - v).max(), np.abs(img + v).max()) > config.EPS * 10:
                    return False
            W = self.reflection
            return bool(
                abs(np.linalg.det(W) + 1.0) <= 1e-9
                and all(np.abs(W @ g.matrix - g.matrix @ W).max() <= 1e-9 for g in G.elements)
            )
        if self.case == CHIRAL_ELEMENT:
            e = self.chiral_element
            return e is not None and not e.has_invariant_line() and eigen_real_line(e.matrix) is None
        if self.case == GROUP_K:
            if self.conjugator is None:
                return self.note is not None
            return groups_equal(conjugate_group(G, self.conjugator), group_K())
        return False


def classify(G: FiniteGroup) -> Classification:
    """Decide which of the three cases holds, assert that exactly one does,
    and return it with its witness."""
    v = find_invariant_line(G)
    chiral = find_chiral_element(G)
    is_k = _k_screen(G)
    held = sum([v is not None, chiral is not None, is_k])
    if held != 1:
        raise TrichotomyViolation(
            f"{held} classification predicates hold for group of order {len(G)}: "
            f"invariant line={None if v is None else v.tolist()}, "
            f"chiral element={chiral!r}, K screening={is_k}, "
            f"fingerprint={G.fingerprint}"
        )
    if v is not None:
        return Classification(
            case=INVARIANT_LINE, line=v, reflection=_I4 - 2.0 * np.outer(v, v)
        )
    if chiral is not None:
        return Classification(case=CHIRAL_ELEMENT, chiral_element=chiral)
    try:
        h = conjugate_to_K(G)
    except ConjugatorNotFound as exc:
        return Classification(case=GROUP_K, conjugator=None, note=str(exc))
    return Classification(case=GROUP_K, conjugator=h)
