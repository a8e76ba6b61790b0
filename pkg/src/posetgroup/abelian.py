"""Elements of the free abelian group over a poset's elements.

A group element is a finite-support integer vector indexed by the host
poset's elements, stored sparsely as (index, coefficient) pairs with no
zero coefficients. Values are immutable and hashable; all arithmetic is
exact (Python integers never wrap).
"""

from __future__ import annotations

import re
from typing import Iterator, Mapping

from .errors import ExpressionSyntaxError, HostMismatchError, UnknownElementError
from .poset import Poset


class GroupElement:
    """Sparse integer combination of poset elements."""

    __slots__ = ("poset", "coeffs", "support_mask")

    def __init__(self, poset: Poset, coeffs: Mapping[int, int]):
        items = []
        mask = 0
        for i in sorted(coeffs):
            c = coeffs[i]
            if c == 0:
                continue
            if not 0 <= i < len(poset):
                raise UnknownElementError(f"coefficient index {i} out of range")
            items.append((i, c))
            mask |= 1 << i
        self.poset = poset
        self.coeffs = tuple(items)
        self.support_mask = mask

    # -- queries ---------------------------------------------------------

    def support(self) -> list[str]:
        """Names of elements with nonzero coefficient, in declaration order."""
        return [self.poset.elements[i] for i, _ in self.coeffs]

    def coefficient(self, name: str) -> int:
        i = self.poset.index(name)
        for j, c in self.coeffs:
            if j == i:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_dict(self) -> dict[int, int]:
        """Coefficients keyed by element index."""
        return dict(self.coeffs)

    def abs_sum(self) -> int:
        """Sum of absolute coefficient values."""
        return sum(abs(c) for _, c in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _check_host(self, other: "GroupElement") -> None:
        if self.poset is not other.poset and self.poset != other.poset:
            raise HostMismatchError("elements live over different posets")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._check_host(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs:
            out[i] = out.get(i, 0) + c
        return GroupElement(self.poset, out)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._check_host(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs:
            out[i] = out.get(i, 0) - c
        return GroupElement(self.poset, out)

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.poset, {i: -c for i, c in self.coeffs})

    def __mul__(self, n: int) -> "GroupElement":
        if not isinstance(n, int):
            return NotImplemented
        return GroupElement(self.poset, {i: n * c for i, c in self.coeffs})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.poset == other.poset

    def __hash__(self) -> int:
        return hash((self.poset, self.coeffs))

    def __repr__(self) -> str:
        return f"<{format_expr(self)}>"

    def __str__(self) -> str:
        return format_expr(self)


def zero(poset: Poset) -> GroupElement:
    return GroupElement(poset, {})


def basis(poset: Poset, name: str) -> GroupElement:
    return GroupElement(poset, {poset.index(name): 1})


def from_coeffs(poset: Poset, mapping: Mapping[str, int]) -> GroupElement:
    """Element from a name -> coefficient mapping."""
    return GroupElement(poset, {poset.index(k): v for k, v in mapping.items()})


def scale(n: int, x: GroupElement) -> GroupElement:
    return x * n


# -- expression grammar ----------------------------------------------------
#
#   expr := ['-'] term (('+'|'-') term)*     |   "0"
#   term := [uint '*'] ident
#
# format_expr emits terms in declaration order, omits the "1*" prefix, and
# renders the zero element as "0"; parse(format(x)) == x always.

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
                       r"|(?P<op>[+\-*]))")


def _tokenize(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ExpressionSyntaxError(
                    f"unexpected character {text[pos:].lstrip()[0]!r}")
            return
        pos = m.end()
        for kind in ("num", "ident", "op"):
            if m.group(kind) is not None:
                yield kind, m.group(kind)
                break


def parse_expr(poset: Poset, text: str) -> GroupElement:
    """Parse an expression like ``2*a - b`` into a group element."""
    if text.strip() == "0":
        return zero(poset)
    tokens = list(_tokenize(text))
    if not tokens:
        raise ExpressionSyntaxError("empty expression")
    coeffs: dict[int, int] = {}
    pos = 0

    def take() -> tuple[str, str]:
        nonlocal pos
        if pos >= len(tokens):
            raise ExpressionSyntaxError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        return tok

    sign = 1
    kind, value = take()
    if (kind, value) == ("op", "-"):
        sign = -1
        kind, value = take()
    while True:
        if kind == "num":
            mag = int(value)
            kind, value = take()
            if (kind, value) != ("op", "*"):
                raise ExpressionSyntaxError("expected '*' after coefficient")
            kind, value = take()
        else:
            mag = 1
        if kind != "ident":
            raise ExpressionSyntaxError(f"expected element name, got {value!r}")
        i = poset.index(value)
        coeffs[i] = coeffs.get(i, 0) + sign * mag
        if pos == len(tokens):
            break
        kind, value = take()
        if kind != "op" or value not in "+-":
            raise ExpressionSyntaxError(f"expected '+' or '-', got {value!r}")
        sign = 1 if value == "+" else -1
        kind, value = take()
    return GroupElement(poset, coeffs)


def format_expr(x: GroupElement) -> str:
    """Canonical text form: declaration order, no '1*' prefixes, zero as '0'."""
    if not x.coeffs:
        return "0"
    parts = []
    for k, (i, c) in enumerate(x.coeffs):
        mag = abs(c)
        body = x.poset.elements[i] if mag == 1 else f"{mag}*{x.poset.elements[i]}"
        if k == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(parts)
