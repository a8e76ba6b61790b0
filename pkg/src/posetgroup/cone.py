"""The positive cone and the partial order it induces on the group.

An element belongs to the cone iff its coefficient is strictly positive
at every maximal element of its support; x <= y iff y - x is in the cone.
Everything here is pure and allocation-light: membership is a scan over
the support using the host poset's bitmask rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .abelian import GroupElement, basis, zero
from .errors import EmptyPosetError, NotOrderUnitError
from .poset import Poset


def in_cone(x: GroupElement) -> bool:
    """True iff x lies in the positive cone of its host."""
    return _in_cone_dict(x.poset, x.to_dict(), x.support_mask)


def _in_cone_dict(p: Poset, coeffs: dict[int, int], mask: int) -> bool:
    strict_up = p._strict_up
    for i, c in coeffs.items():
        if c <= 0 and not strict_up[i] & mask:
            return False
    return True


def leq(x: GroupElement, y: GroupElement) -> bool:
    """True iff x <= y in the order induced by the cone."""
    x._check_host(y)
    return in_cone(y - x)


def canonical_order_unit(p: Poset) -> GroupElement:
    """Sum of the maximal elements, an order unit of any nonempty poset."""
    if len(p) == 0:
        raise EmptyPosetError("the empty poset's group has no order unit")
    u = zero(p)
    for name in p.canonical_cofinal():
        u = u + basis(p, name)
    return u


@dataclass(frozen=True)
class OrderUnitCertificate:
    """Per-element domination witnesses for an order unit.

    For each poset element i, ``per_element_witness[i]`` is a positive
    integer a with a*unit - i in the cone; every witness is re-checkable
    with in_cone alone.
    """

    unit: GroupElement
    per_element_witness: dict[str, int]


def is_order_unit(u: GroupElement) -> Optional[OrderUnitCertificate]:
    """Certificate if u is an order unit, else None.

    Decision rule: u is an order unit iff u is in the cone and 2u - i is
    in the cone for every element i. Membership of a*u - i is constant
    over a >= 2 (support and coefficient signs do not depend on a there),
    so the single check at a = 2 settles the existential; monotonicity in
    a then covers every larger multiple. The oracle module cross-checks
    this rule against a bounded search.
    """
    p = u.poset
    if len(p) == 0:
        raise EmptyPosetError("order units are undefined over the empty poset")
    if not in_cone(u):
        return None
    witnesses: dict[str, int] = {}
    for name in p.elements:
        b = basis(p, name)
        if in_cone(u - b):
            witnesses[name] = 1
        elif in_cone(2 * u - b):
            witnesses[name] = 2
        else:
            return None
    return OrderUnitCertificate(unit=u, per_element_witness=witnesses)


def order_unit_bound(x: GroupElement, u: GroupElement) -> int:
    """A positive a with x <= a*u. Deliberately coarse, never minimal."""
    x._check_host(u)
    if is_order_unit(u) is None:
        raise NotOrderUnitError(f"{u} is not an order unit")
    return max(1, 2 * x.abs_sum())


def upper_bound(x: GroupElement, y: GroupElement) -> GroupElement:
    """A common upper bound of x and y (the group is directed).

    Scales the canonical order unit by max(1, 2*(sum|x_i| + sum|y_i|)).
    """
    x._check_host(y)
    p = x.poset
    if len(p) == 0:
        raise EmptyPosetError("no order unit available over the empty poset")
    a = max(1, 2 * (x.abs_sum() + y.abs_sum()))
    return a * canonical_order_unit(p)
