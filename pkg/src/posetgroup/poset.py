"""Finite partially ordered sets with named elements.

Elements are named tokens; declaration order is the canonical total order
used for tie-breaking and for every serialized output. The relation is
stored densely, one bitmask row per element: bit j of ``_up[i]`` is set
iff element i <= element j. Target scale is small (n <= 12), so dense
rows beat anything clever.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Optional

from .errors import CycleError, DuplicateElementError, UnknownElementError

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset. Construct via :func:`build_poset`.

    The constructor expects an already reflexive-transitive relation and
    validates all three partial-order axioms; it is also used directly by
    the exhaustive poset generator, which produces closed relations.
    """

    __slots__ = ("elements", "_index", "_up", "_strict_up", "_strict_down",
                 "_full_mask", "_hash")

    def __init__(self, elements: Iterable[str], up_rows: Iterable[int]):
        names = tuple(elements)
        up = tuple(up_rows)
        n = len(names)
        if len(up) != n:
            raise ValueError("one relation row per element required")
        seen = set()
        for name in names:
            if not _NAME_RE.match(name):
                raise UnknownElementError(f"malformed element name {name!r}")
            if name in seen:
                raise DuplicateElementError(f"duplicate element {name!r}")
            seen.add(name)
        full = (1 << n) - 1
        for i in range(n):
            if up[i] & ~full:
                raise ValueError("relation row references unknown element")
            if not (up[i] >> i) & 1:
                raise ValueError(f"relation not reflexive at {names[i]!r}")
        for i in range(n):
            for j in _bits(up[i] & ~(1 << i)):
                if (up[j] >> i) & 1:
                    raise CycleError(
                        f"antisymmetry fails: {names[i]!r} and {names[j]!r} "
                        "are mutually comparable")
        for i in range(n):
            reach = 0
            for j in _bits(up[i]):
                reach |= up[j]
            if reach & ~up[i]:
                raise ValueError(f"relation not transitive at {names[i]!r}")

        self.elements = names
        self._index = {name: i for i, name in enumerate(names)}
        self._up = up
        self._strict_up = tuple(up[i] & ~(1 << i) for i in range(n))
        down = [0] * n
        for i in range(n):
            for j in _bits(self._strict_up[i]):
                down[j] |= 1 << i
        self._strict_down = tuple(down)
        self._full_mask = full
        self._hash = hash((names, up))

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        pairs = ", ".join(f"{a}<{b}" for a, b in self.strict_pairs())
        return f"Poset({' '.join(self.elements)}; {pairs})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElementError(f"unknown element {name!r}") from None

    def leq(self, a: str, b: str) -> bool:
        """True iff a <= b."""
        return (self._up[self.index(a)] >> self.index(b)) & 1 == 1

    def lt(self, a: str, b: str) -> bool:
        """True iff a < b (strictly)."""
        return a != b and self.leq(a, b)

    def strict_pairs(self) -> list[tuple[str, str]]:
        """All pairs (a, b) with a < b, in declaration order."""
        out = []
        for i, name in enumerate(self.elements):
            for j in _bits(self._strict_up[i]):
                out.append((name, self.elements[j]))
        return out

    def relation_size(self) -> int:
        """Number of ordered pairs (a, b) with a <= b, reflexive included."""
        return sum(row.bit_count() for row in self._up)

    # -- subset helpers (bitmask <-> names) ----------------------------

    def _mask_of(self, subset: Iterable[str]) -> int:
        mask = 0
        for name in subset:
            mask |= 1 << self.index(name)
        return mask

    def _names_of(self, mask: int) -> list[str]:
        return [self.elements[i] for i in _bits(mask)]

    # -- order-theoretic operations ------------------------------------

    def maximal_in(self, subset: Iterable[str]) -> list[str]:
        """Elements of the subset with nothing of the subset strictly above."""
        mask = self._mask_of(subset)
        return self._names_of(self._maximal_mask(mask))

    def _maximal_mask(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            if not self._strict_up[i] & mask:
                out |= 1 << i
        return out

    def minimal_in(self, subset: Iterable[str]) -> list[str]:
        """Elements of the subset with nothing of the subset strictly below."""
        mask = self._mask_of(subset)
        out = 0
        for i in _bits(mask):
            if not self._strict_down[i] & mask:
                out |= 1 << i
        return self._names_of(out)

    def is_antichain(self, subset: Iterable[str]) -> bool:
        """True iff no two distinct elements of the subset are comparable."""
        mask = self._mask_of(subset)
        return self._is_antichain_mask(mask)

    def _is_antichain_mask(self, mask: int) -> bool:
        for i in _bits(mask):
            if self._strict_up[i] & mask:
                return False
        return True

    def minimal_non_maximal(self) -> Optional[str]:
        """Earliest-declared minimal element that is not maximal.

        Exists exactly when the poset has a comparable pair; returns None
        for antichains (the empty poset included).
        """
        i = self._minimal_non_maximal_index(self._full_mask)
        return None if i is None else self.elements[i]

    def _minimal_non_maximal_index(self, mask: int) -> Optional[int]:
        for i in _bits(mask):
            if self._strict_down[i] & mask:
                continue
            if self._strict_up[i] & mask:
                return i
        return None

    def is_cofinal(self, subset: Iterable[str]) -> bool:
        """True iff every element lies below (or equals) some subset member."""
        mask = self._mask_of(subset)
        covered = 0
        for i in _bits(mask):
            covered |= 1 << i
            covered |= self._strict_down[i]
        return covered == self._full_mask

    def canonical_cofinal(self) -> list[str]:
        """The maximal elements: the canonical cofinal subset of a finite poset."""
        return self._names_of(self._maximal_mask(self._full_mask))

    def up_closure(self, subset: Iterable[str]) -> list[str]:
        """Smallest upper set containing the subset."""
        mask = self._mask_of(subset)
        out = 0
        for i in _bits(mask):
            out |= self._up[i]
        return self._names_of(out)

    def down_closure(self, subset: Iterable[str]) -> list[str]:
        """Smallest lower set containing the subset."""
        mask = self._mask_of(subset)
        out = mask
        for i in _bits(mask):
            out |= self._strict_down[i]
        return self._names_of(out)

    def is_upper_set(self, subset: Iterable[str]) -> bool:
        mask = self._mask_of(subset)
        for i in _bits(mask):
            if self._up[i] & ~mask:
                return False
        return True

    def restrict(self, subset: Iterable[str]) -> "Poset":
        """Induced order on the subset; declaration order inherited."""
        mask = self._mask_of(subset)
        kept = list(_bits(mask))
        pos = {old: new for new, old in enumerate(kept)}
        names = [self.elements[i] for i in kept]
        rows = []
        for i in kept:
            row = 0
            for j in _bits(self._up[i] & mask):
                row |= 1 << pos[j]
            rows.append(row)
        return Poset(names, rows)


def build_poset(elements: Iterable[str],
                relations: Iterable[tuple[str, str]]) -> Poset:
    """Build a poset from declared names and generating <=-pairs.

    Any acyclic pair list is accepted; the stored relation is its
    reflexive-transitive closure. Raises DuplicateElementError,
    UnknownElementError, or CycleError (antisymmetry would fail).
    """
    names = tuple(elements)
    seen = set()
    for name in names:
        if not _NAME_RE.match(name):
            raise UnknownElementError(f"malformed element name {name!r}")
        if name in seen:
            raise DuplicateElementError(f"duplicate element {name!r}")
        seen.add(name)
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    up = [1 << i for i in range(n)]
    for a, b in relations:
        if a not in index:
            raise UnknownElementError(f"unknown element {a!r} in relation")
        if b not in index:
            raise UnknownElementError(f"unknown element {b!r} in relation")
        up[index[a]] |= 1 << index[b]
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    for i in range(n):
        for j in _bits(up[i] & ~(1 << i)):
            if (up[j] >> i) & 1:
                raise CycleError(
                    f"cycle through {names[i]!r} and {names[j]!r}")
    return Poset(names, up)
