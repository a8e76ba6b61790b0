"""Brute-force ground truth on small instances.

This module never trusts the constructions it is checking: posets are
enumerated exhaustively, cone membership is re-derived along a second
code path, refinements are found by bounded search, and every claimed
law is swept either exhaustively or with a seeded portable generator.

Sampling policy shared by all suites, per enumeration space:
  samples is None  auto mode: exhaust spaces of at most 65536 instances,
                   otherwise draw 2000 seeded samples;
  samples == 0     force full exhaustion regardless of size;
  samples == k>0   exhaust spaces of at most k instances, otherwise draw
                   exactly k seeded samples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Optional

import numpy as np

from .abelian import GroupElement, format_expr, zero
from .cone import in_cone, is_order_unit, canonical_order_unit, leq
from .errors import (EmptyPosetError, InternalInvariantViolation,
                     SizeTooLargeError)
from .poset import Poset, _bits
from .riesz import (RefinementMatrix, RefinementProblem, _CELLS, _normalize,
                    _T_ROW, _T_THREE, check_refinement, interpolate, refine)

_AUTO_CAP = 65536
_AUTO_SAMPLES = 2000
_POSET_NAMES = "abcdef"


class Lcg:
    """Portable 64-bit linear congruential generator.

    state' = state * 6364136223846793005 + 1442695040888963407 (mod 2^64).
    Each step outputs the top 32 bits of the new state; ``below(k)``
    reduces an output modulo k. Fixed here (and in the README) so that
    sampled verification runs are reproducible everywhere.
    """

    _MULT = 6364136223846793005
    _INC = 1442695040888963407
    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next_u32(self) -> int:
        self.state = (self.state * self._MULT + self._INC) & self._MASK
        return self.state >> 32

    def below(self, k: int) -> int:
        return self.next_u32() % k


# -- instance generators -----------------------------------------------------

def enumerate_posets(n: int) -> Iterator[Poset]:
    """Every partial order on n labeled elements, exactly once.

    Elements are named 'a', 'b', ... in declaration order. Generation is
    recursive: each poset on the first n-1 labels is extended by the last
    label with every compatible (down-set, up-set) pair, which yields
    each labeled poset exactly once because restriction is unique.
    """
    if not 0 <= n <= 6:
        raise SizeTooLargeError(f"poset enumeration capped at 6 elements, got {n}")
    names = list(_POSET_NAMES[:n])
    for rows in _enumerate_relations(n):
        yield Poset(names, rows)


def _enumerate_relations(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    k = n - 1
    for rows in _enumerate_relations(k):
        strict = [rows[i] & ~(1 << i) for i in range(k)]
        down = [0] * k
        for i in range(k):
            for j in _bits(strict[i]):
                down[j] |= 1 << i
        for dmask in range(1 << k):
            if any(down[i] & ~dmask for i in _bits(dmask)):
                continue  # not down-closed
            rest = ((1 << k) - 1) & ~dmask
            for umask in _subsets(rest):
                if any(strict[i] & ~umask for i in _bits(umask)):
                    continue  # not up-closed within the old poset
                if any(umask & ~strict[i] for i in _bits(dmask)):
                    continue  # transitivity through the new element would fail
                new_rows = [rows[i] | (1 << k if (dmask >> i) & 1 else 0)
                            for i in range(k)]
                new_rows.append((1 << k) | umask)
                yield tuple(new_rows)


def _subsets(mask: int) -> Iterator[int]:
    """All subsets of a bitmask, ascending as integers."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def box_vectors(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All coefficient tuples in [-bound, bound]^n, lexicographic."""
    return product(range(-bound, bound + 1), repeat=n)


def enumerate_cone_elements(p: Poset, bound: int) -> Iterator[GroupElement]:
    """Cone members with all coefficients in [-bound, bound].

    Membership is decided here by computing the maximal elements of the
    support through the poset API and checking their coefficients --
    deliberately not by calling in_cone, so the two paths can be played
    against each other.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    n = len(p)
    for tup in box_vectors(n, bound):
        x = GroupElement(p, {i: c for i, c in enumerate(tup) if c})
        support = x.support()
        if all(x.coefficient(name) > 0 for name in p.maximal_in(support)):
            yield x


# -- bounded refinement search ------------------------------------------------

def default_search_bounds(prob: RefinementProblem) -> list[int]:
    """Per-coordinate search bound: max absolute input coefficient at the
    coordinate plus the sum of absolute input coefficients there."""
    p = prob.poset
    sums = [0] * len(p)
    maxima = [0] * len(p)
    for v in (prob.x1, prob.x2, prob.y1, prob.y2):
        for i, c in v.coeffs:
            sums[i] += abs(c)
            maxima[i] = max(maxima[i], abs(c))
    return [sums[i] + maxima[i] for i in range(len(p))]


def brute_refine(prob: RefinementProblem,
                 bound: Optional[int] = None) -> Optional[RefinementMatrix]:
    """First valid refinement with z11 inside the per-coordinate box, or None.

    Only z11 is searched; the other three entries are forced by the row
    and column sums. A None result means nothing was found within the
    box, never that no refinement exists.
    """
    p = prob.poset
    n = len(p)
    if bound is None:
        bounds = default_search_bounds(prob)
    else:
        if bound < 0:
            raise ValueError("bound must be nonnegative")
        bounds = [bound] * n
    x1 = prob.x1.to_dict()
    x2 = prob.x2.to_dict()
    y1 = prob.y1.to_dict()
    strict_up = p._strict_up
    coords = list(range(n))

    def member(d: dict[int, int]) -> bool:
        mask = 0
        for i, c in d.items():
            if c:
                mask |= 1 << i
        for i, c in d.items():
            if c < 0 and not strict_up[i] & mask:
                return False
        return True

    for tup in product(*(range(-bounds[i], bounds[i] + 1) for i in coords)):
        z11 = {i: c for i, c in enumerate(tup) if c}
        if not member(z11):
            continue
        z12 = {i: x1.get(i, 0) - z11.get(i, 0) for i in coords}
        if not member(z12):
            continue
        z21 = {i: y1.get(i, 0) - z11.get(i, 0) for i in coords}
        if not member(z21):
            continue
        z22 = {i: x2.get(i, 0) - z21.get(i, 0) for i in coords}
        if not member(z22):
            continue
        matrix = RefinementMatrix(
            GroupElement(p, z11), GroupElement(p, z12),
            GroupElement(p, z21), GroupElement(p, z22))
        if check_refinement(prob, matrix):
            return matrix
    return None


# -- reports -------------------------------------------------------------------

@dataclass(frozen=True)
class Failure:
    poset: str
    input: str
    expected: str
    got: str

    def to_json_dict(self) -> dict:
        return {"poset": self.poset, "input": self.input,
                "expected": self.expected, "got": self.got}


@dataclass
class VerificationReport:
    suite: str
    instances_checked: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {"suite": self.suite,
                "instances_checked": self.instances_checked,
                "failures": [f.to_json_dict() for f in sorted(
                    self.failures,
                    key=lambda f: (f.poset, f.input, f.expected, f.got))]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def reports_to_jsonl(reports: list[VerificationReport]) -> str:
    """One suite per line, the documented report interchange format."""
    return "\n".join(r.to_json() for r in reports) + "\n"


def format_poset(p: Poset) -> str:
    """Canonical one-line poset serialization used inside failure records."""
    if len(p) == 0:
        return "(empty poset)"
    parts = ["elem " + " ".join(p.elements)]
    parts.extend(f"lt {a} {b}" for a, b in p.strict_pairs())
    return "; ".join(parts)


# -- sampling policy -----------------------------------------------------------

def _plan(space: int, samples: Optional[int]) -> tuple[bool, int]:
    """(exhaustive?, draw_count) for a space of the given size."""
    if samples == 0:
        return True, 0
    cap = _AUTO_CAP if samples is None else samples
    if space <= cap:
        return True, 0
    return False, (_AUTO_SAMPLES if samples is None else samples)


def _posets_range(min_n: int, max_n: int) -> Iterator[Poset]:
    for n in range(min_n, max_n + 1):
        yield from enumerate_posets(n)


Membership = Callable[[GroupElement], bool]


# -- suites ---------------------------------------------------------------------

def suite_cone_closure(max_n: int, coeff_bound: int,
                       samples: Optional[int] = None, seed: int = 0,
                       membership: Optional[Membership] = None,
                       min_n: int = 0) -> VerificationReport:
    """x, y in the cone implies x + y in the cone."""
    mem = membership or in_cone
    rep = VerificationReport(suite="cone_closure")
    rng = Lcg(seed)
    for p in _posets_range(min_n, max_n):
        if membership is None:
            elems = list(enumerate_cone_elements(p, coeff_bound))
        else:
            elems = [x for x in _box_elements(p, coeff_bound) if mem(x)]
        space = len(elems) * len(elems)
        exhaustive, draws = _plan(space, samples)
        if exhaustive:
            pairs = ((x, y) for x in elems for y in elems)
        else:
            pairs = ((elems[rng.below(len(elems))], elems[rng.below(len(elems))])
                     for _ in range(draws))
        for x, y in pairs:
            rep.instances_checked += 1
            if not mem(x + y):
                rep.failures.append(Failure(
                    poset=format_poset(p),
                    input=f"x = {x}; y = {y}",
                    expected="x + y in cone",
                    got="not in cone"))
    _sort_failures(rep)
    return rep


def suite_conicity(max_n: int, coeff_bound: int,
                   samples: Optional[int] = None, seed: int = 0,
                   membership: Optional[Membership] = None,
                   min_n: int = 0) -> VerificationReport:
    """x and -x both in the cone forces x = 0."""
    mem = membership or in_cone
    rep = VerificationReport(suite="conicity")
    rng = Lcg(seed)
    for p in _posets_range(min_n, max_n):
        for x in _box_sweep(p, coeff_bound, samples, rng):
            rep.instances_checked += 1
            if mem(x) and mem(-x) and not x.is_zero():
                rep.failures.append(Failure(
                    poset=format_poset(p),
                    input=f"x = {x}",
                    expected="x = 0",
                    got=format_expr(x)))
    _sort_failures(rep)
    return rep


def suite_scale_invariance(max_n: int, coeff_bound: int,
                           samples: Optional[int] = None, seed: int = 0,
                           membership: Optional[Membership] = None,
                           min_n: int = 0) -> VerificationReport:
    """Cone membership of n*x (n in 2, 3, 5) equals membership of x."""
    mem = membership or in_cone
    rep = VerificationReport(suite="scale_invariance")
    rng = Lcg(seed)
    for p in _posets_range(min_n, max_n):
        for x in _box_sweep(p, coeff_bound, samples, rng):
            base = mem(x)
            for k in (2, 3, 5):
                rep.instances_checked += 1
                if mem(k * x) != base:
                    rep.failures.append(Failure(
                        poset=format_poset(p),
                        input=f"x = {x}; n = {k}",
                        expected=f"in_cone(n*x) = {base}",
                        got=str(not base)))
    _sort_failures(rep)
    return rep


def suite_leq_axioms(max_n: int, coeff_bound: int,
                     samples: Optional[int] = None, seed: int = 0,
                     min_n: int = 0) -> VerificationReport:
    """leq is reflexive, antisymmetric and transitive on box elements."""
    rep = VerificationReport(suite="leq_axioms")
    rng = Lcg(seed)
    for p in _posets_range(min_n, max_n):
        elems = _box_elements(p, coeff_bound)
        k = len(elems)
        for x in elems:
            rep.instances_checked += 1
            if not leq(x, x):
                rep.failures.append(_leq_failure(p, "reflexivity", f"x = {x}"))
        exhaustive, draws = _plan(k * k, samples)
        pairs = (product(elems, repeat=2) if exhaustive else
                 ((elems[rng.below(k)], elems[rng.below(k)]) for _ in range(draws)))
        for x, y in pairs:
            rep.instances_checked += 1
            if leq(x, y) and leq(y, x) and x != y:
                rep.failures.append(_leq_failure(
                    p, "antisymmetry", f"x = {x}; y = {y}"))
        exhaustive, draws = _plan(k ** 3, samples)
        triples = (product(elems, repeat=3) if exhaustive else
                   ((elems[rng.below(k)], elems[rng.below(k)], elems[rng.below(k)])
                    for _ in range(draws)))
        for x, y, z in triples:
            rep.instances_checked += 1
            if leq(x, y) and leq(y, z) and not leq(x, z):
                rep.failures.append(_leq_failure(
                    p, "transitivity", f"x = {x}; y = {y}; z = {z}"))
    _sort_failures(rep)
    return rep


def _leq_failure(p: Poset, law: str, inp: str) -> Failure:
    return Failure(poset=format_poset(p), input=f"{law}: {inp}",
                   expected=law, got="violated")


def suite_refine_validity(max_n: int, coeff_bound: int,
                          samples: Optional[int] = None, seed: int = 0,
                          min_n: int = 0) -> VerificationReport:
    """check_refinement accepts refine's output on every generated problem."""
    rep = VerificationReport(suite="refine_validity")
    rng = Lcg(seed)
    for p in _posets_range(min_n, max_n):
        for prob in _refinement_problems(p, coeff_bound, samples, rng):
            rep.instances_checked += 1
            matrix = refine(prob)
            if not check_refinement(prob, matrix):
                rep.failures.append(Failure(
                    poset=format_poset(p),
                    input=_format_problem(prob),
                    expected="valid refinement",
                    got=_format_matrix(matrix)))
    _sort_failures(rep)
    return rep


def suite_refine_vs_brute(max_n: int, coeff_bound: int,
                          samples: Optional[int] = None, seed: int = 0,
                          min_n: int = 0) -> VerificationReport:
    """On posets of at most 2 elements, refine stays inside the default
    search box and the bounded search independently finds a refinement."""
    rep = VerificationReport(suite="refine_vs_brute")
    rng = Lcg(seed)
    for p in _posets_range(min_n, min(max_n, 2)):
        for prob in _refinement_problems(p, coeff_bound, samples, rng):
            rep.instances_checked += 1
            matrix = refine(prob)
            bounds = default_search_bounds(prob)
            inside = all(abs(c) <= bounds[i]
                         for e in matrix.entries() for i, c in e.coeffs)
            if not inside:
                rep.failures.append(Failure(
                    poset=format_poset(p), input=_format_problem(prob),
                    expected="refine output within default search box",
                    got=_format_matrix(matrix)))
                continue
            if brute_refine(prob) is None:
                rep.failures.append(Failure(
                    poset=format_poset(p), input=_format_problem(prob),
                    expected="bounded search finds a refinement",
                    got="none within default box"))
    _sort_failures(rep)
    return rep


def suite_interpolation(max_n: int, coeff_bound: int,
                        samples: Optional[int] = None, seed: int = 0,
                        min_n: int = 0) -> VerificationReport:
    """interpolate's output passes all four order checks.

    Validity of a quadruple is translation invariant (shifting all four
    inputs and the output by the same element preserves every difference),
    so the exhaustive mode walks one canonical representative per
    translation class of box quadruples and counts the whole class. The
    class sweep runs through a vectorized twin of the refinement
    construction whose output is validated by row/column sums plus bulk
    cone membership; the scalar interpolate is run on every class of
    small posets and on a deterministic stride of larger ones, and must
    reproduce the vectorized output exactly. The sampled mode draws raw
    quadruples directly through the scalar path.
    """
    rep = VerificationReport(suite="interpolation")
    rng = Lcg(seed)
    for p in _posets_range(min_n, max_n):
        n = len(p)
        space = (4 * coeff_bound + 1) ** (3 * n)
        exhaustive, draws = _plan(space, samples)
        if exhaustive:
            _interp_exhaustive(p, coeff_bound, rep)
        else:
            for x1, x2, y1, y2, count in _interp_samples(p, coeff_bound, draws, rng):
                rep.instances_checked += count
                z = interpolate(x1, x2, y1, y2)
                if not (leq(x1, z) and leq(x2, z) and leq(z, y1) and leq(z, y2)):
                    rep.failures.append(Failure(
                        poset=format_poset(p),
                        input=f"x1 = {x1}; x2 = {x2}; y1 = {y1}; y2 = {y2}",
                        expected="x1, x2 <= z <= y1, y2",
                        got=f"z = {z}"))
    _sort_failures(rep)
    return rep


def suite_canonical_order_unit(max_n: int,
                               samples: Optional[int] = None, seed: int = 0,
                               min_n: int = 0) -> VerificationReport:
    """The canonical order unit is accepted by is_order_unit everywhere."""
    rep = VerificationReport(suite="canonical_order_unit")
    for p in _posets_range(min_n, max_n):
        rep.instances_checked += 1
        if len(p) == 0:
            try:
                canonical_order_unit(p)
            except EmptyPosetError:
                continue
            rep.failures.append(Failure(
                poset=format_poset(p), input="canonical_order_unit",
                expected="EmptyPosetError", got="no error"))
            continue
        u = canonical_order_unit(p)
        cert = is_order_unit(u)
        if cert is None:
            rep.failures.append(Failure(
                poset=format_poset(p), input=f"u = {u}",
                expected="order unit certificate", got="rejected"))
            continue
        for name, a in cert.per_element_witness.items():
            if not in_cone(a * u - _basis(p, name)):
                rep.failures.append(Failure(
                    poset=format_poset(p), input=f"u = {u}; witness {name}: {a}",
                    expected="witness re-checkable", got="a*u - i not in cone"))
        if not p.is_cofinal(u.support()):
            rep.failures.append(Failure(
                poset=format_poset(p), input=f"u = {u}",
                expected="support cofinal", got=str(u.support())))
    _sort_failures(rep)
    return rep


def suite_order_unit_rule(max_n: int, coeff_bound: int,
                          samples: Optional[int] = None, seed: int = 0,
                          min_n: int = 0) -> VerificationReport:
    """The two-times decision rule agrees with a bounded direct search.

    The direct search declares u an order unit iff u is in the cone and,
    for every element i, some multiplier a in 1..8 puts a*u - i in the
    cone. Certificates must additionally be re-checkable and have cofinal
    support.
    """
    rep = VerificationReport(suite="order_unit_rule")
    rng = Lcg(seed)
    for p in _posets_range(min_n, max_n):
        if len(p) == 0:
            rep.instances_checked += 1
            try:
                is_order_unit(zero(p))
            except EmptyPosetError:
                continue
            rep.failures.append(Failure(
                poset=format_poset(p), input="u = 0",
                expected="EmptyPosetError", got="no error"))
            continue
        for u in _box_sweep(p, coeff_bound, samples, rng):
            rep.instances_checked += 1
            cert = is_order_unit(u)
            searched = in_cone(u) and all(
                any(in_cone(a * u - _basis(p, name)) for a in range(1, 9))
                for name in p.elements)
            if (cert is not None) != searched:
                rep.failures.append(Failure(
                    poset=format_poset(p), input=f"u = {u}",
                    expected=f"bounded search verdict {searched}",
                    got=str(cert is not None)))
                continue
            if cert is None:
                continue
            for name, a in cert.per_element_witness.items():
                if not in_cone(a * u - _basis(p, name)):
                    rep.failures.append(Failure(
                        poset=format_poset(p),
                        input=f"u = {u}; witness {name}: {a}",
                        expected="witness re-checkable",
                        got="a*u - i not in cone"))
            if not p.is_cofinal(u.support()):
                rep.failures.append(Failure(
                    poset=format_poset(p), input=f"u = {u}",
                    expected="support cofinal", got=str(u.support())))
    _sort_failures(rep)
    return rep


_SUITES = (
    ("cone_closure", lambda a: suite_cone_closure(
        a.max_n, a.coeff_bound, a.samples, a.seed)),
    ("conicity", lambda a: suite_conicity(
        a.max_n, a.coeff_bound, a.samples, a.seed)),
    ("scale_invariance", lambda a: suite_scale_invariance(
        a.max_n, a.coeff_bound, a.samples, a.seed)),
    ("leq_axioms", lambda a: suite_leq_axioms(
        a.max_n, a.coeff_bound, a.samples, a.seed)),
    ("refine_validity", lambda a: suite_refine_validity(
        a.max_n, a.coeff_bound, a.samples, a.seed)),
    ("refine_vs_brute", lambda a: suite_refine_vs_brute(
        a.max_n, a.coeff_bound, a.samples, a.seed)),
    ("interpolation", lambda a: suite_interpolation(
        a.max_n, a.coeff_bound, a.samples, a.seed)),
    ("canonical_order_unit", lambda a: suite_canonical_order_unit(
        a.max_n, a.samples, a.seed)),
    ("order_unit_rule", lambda a: suite_order_unit_rule(
        a.max_n, a.coeff_bound, a.samples, a.seed)),
)


@dataclass(frozen=True)
class _SuiteArgs:
    max_n: int
    coeff_bound: int
    samples: Optional[int]
    seed: int


def verify_theorems(max_n: int, coeff_bound: int,
                    samples: Optional[int] = None,
                    seed: int = 0) -> list[VerificationReport]:
    """Run every suite over all posets with at most max_n elements.

    Suite k receives generator seed (seed + k) mod 2^64; together with the
    sampling policy this makes reports byte-for-byte reproducible.
    """
    if not 0 <= max_n <= 5:
        raise SizeTooLargeError(f"verify_theorems capped at max_n = 5, got {max_n}")
    if coeff_bound < 0:
        raise ValueError("coeff_bound must be nonnegative")
    reports = []
    for k, (_, run) in enumerate(_SUITES):
        args = _SuiteArgs(max_n=max_n, coeff_bound=coeff_bound,
                          samples=samples, seed=(seed + k) & Lcg._MASK)
        reports.append(run(args))
    return reports


# -- shared internals ------------------------------------------------------------

def _basis(p: Poset, name: str) -> GroupElement:
    return GroupElement(p, {p.index(name): 1})


def _box_elements(p: Poset, bound: int) -> list[GroupElement]:
    return [GroupElement(p, {i: c for i, c in enumerate(tup) if c})
            for tup in box_vectors(len(p), bound)]


def _box_sweep(p: Poset, bound: int, samples: Optional[int],
               rng: Lcg) -> Iterator[GroupElement]:
    """Exhaustive or sampled walk over the coefficient box of one poset."""
    n = len(p)
    space = (2 * bound + 1) ** n
    exhaustive, draws = _plan(space, samples)
    if exhaustive:
        yield from _box_elements(p, bound)
        return
    for _ in range(draws):
        coeffs = {i: rng.below(2 * bound + 1) - bound for i in range(n)}
        yield GroupElement(p, {i: c for i, c in coeffs.items() if c})


def _refinement_problems(p: Poset, bound: int, samples: Optional[int],
                         rng: Lcg) -> Iterator[RefinementProblem]:
    """Problems built from x1, x2, y1 in the nonnegative coefficient box
    (all such vectors are cone members); y2 is derived and kept only when
    it lands in the cone."""
    n = len(p)
    per = (bound + 1) ** n
    space = per ** 3
    exhaustive, draws = _plan(space, samples)

    def build(t1, t2, t3) -> Optional[RefinementProblem]:
        x1 = GroupElement(p, {i: c for i, c in enumerate(t1) if c})
        x2 = GroupElement(p, {i: c for i, c in enumerate(t2) if c})
        y1 = GroupElement(p, {i: c for i, c in enumerate(t3) if c})
        y2 = x1 + x2 - y1
        if not in_cone(y2):
            return None
        return RefinementProblem(x1=x1, x2=x2, y1=y1, y2=y2)

    if exhaustive:
        grid = list(product(range(bound + 1), repeat=n))
        for t1 in grid:
            for t2 in grid:
                for t3 in grid:
                    prob = build(t1, t2, t3)
                    if prob is not None:
                        yield prob
        return
    produced = 0
    attempts = 0
    limit = draws * 1000
    while produced < draws and attempts < limit:
        attempts += 1
        tups = [tuple(rng.below(bound + 1) for _ in range(n)) for _ in range(3)]
        prob = build(*tups)
        if prob is not None:
            produced += 1
            yield prob


def _format_problem(prob: RefinementProblem) -> str:
    return (f"x1 = {prob.x1}; x2 = {prob.x2}; "
            f"y1 = {prob.y1}; y2 = {prob.y2}")


def _format_matrix(matrix: RefinementMatrix) -> str:
    z11, z12, z21, z22 = matrix.entries()
    return f"[[{z11}, {z12}], [{z21}, {z22}]]"


def _strict_above_matrix(p: Poset) -> np.ndarray:
    n = len(p)
    s = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in _bits(p._strict_up[i]):
            s[i, j] = 1
    return s


def bulk_in_cone(p: Poset, arr: np.ndarray) -> np.ndarray:
    """Vectorized cone membership for rows of an (m, n) coefficient array."""
    if len(p) == 0:
        return np.ones(arr.shape[0], dtype=bool)
    s = _strict_above_matrix(p)
    supp = arr != 0
    above = supp @ s.T
    maximal = supp & (above == 0)
    return ~(maximal & (arr <= 0)).any(axis=1)


# -- exhaustive interpolation sweep -------------------------------------------
#
# A box quadruple (x1, x2, y1, y2) is determined up to translation by
# t = x2 - x1, u1 = y1 - x1, u2 = y2 - x1; the order preconditions ask
# u1, u2, u1 - t, u2 - t all in the cone, and the number of box translates
# is the product over coordinates of (2*bound + 1) - spread(0, t, u1, u2)
# when positive. The full class population is large (about 9 * 10^7 at
# n = 3, bound 2), so the sweep runs through a vectorized twin of the
# refinement recursion and validates its output independently (sums plus
# bulk cone membership); the scalar path is replayed on a deterministic
# stride of classes and must agree exactly.

_CHUNK_ROWS = 200_000
_AGREE_TARGET = 2000
_AGREE_FULL = 60_000
_FAILURE_CAP = 100

_pattern_tables_cache = None


def _pattern_tables():
    """Normalization flags per 4-bit vanishing pattern, as numpy lookups."""
    global _pattern_tables_cache
    if _pattern_tables_cache is None:
        tr = np.zeros(16, dtype=bool)
        rs = np.zeros(16, dtype=bool)
        cs = np.zeros(16, dtype=bool)
        rowcase = np.zeros(16, dtype=bool)
        for pid in range(15):
            cells = frozenset(c for bit, c in zip((1, 2, 4, 8), _CELLS)
                              if pid & bit)
            t, r, c, target = _normalize(cells)
            tr[pid], rs[pid], cs[pid] = t, r, c
            rowcase[pid] = target in (_T_ROW, _T_THREE)
        _pattern_tables_cache = (tr, rs, cs, rowcase)
    return _pattern_tables_cache


def _bulk_refine(p: Poset, x1, x2, y1, y2):
    """Vectorized twin of the refinement recursion over stacked problems.

    Rows are independent problems (coefficient columns in declaration
    order); follows exactly the same restriction, pivot, pattern and
    normalization steps as the scalar construction.
    """
    out = [np.zeros_like(x1) for _ in range(4)]
    if x1.shape[0] == 0:
        return out
    n = x1.shape[1]
    weights = (1 << np.arange(n, dtype=np.int64))
    union = (((x1 != 0) | (x2 != 0) | (y1 != 0) | (y2 != 0)) * weights).sum(axis=1)
    for g in np.unique(union):
        sel = np.nonzero(union == g)[0]
        parts = _bulk_refine_group(p, int(g), x1[sel], x2[sel], y1[sel], y2[sel])
        for o, part in zip(out, parts):
            o[sel] = part
    return out


def _bulk_refine_group(p: Poset, g: int, x1, x2, y1, y2):
    """All rows have support union exactly g."""
    if g == 0:
        return (np.zeros_like(x1), np.zeros_like(x1),
                np.zeros_like(x1), np.zeros_like(x1))
    if p._is_antichain_mask(g):
        z11 = np.minimum(x1, y1)
        z21 = y1 - z11
        return z11, x1 - z11, z21, x2 - z21
    m = p._minimal_non_maximal_index(g)

    def strip(a):
        b = a.copy()
        b[:, m] = 0
        return b

    u11, u12, u21, u22 = _bulk_refine(p, strip(x1), strip(x2), strip(y1), strip(y2))
    above = [i for i in _bits(p._strict_up[m] & g)]

    def pbit(u):
        return (u[:, above] == 0).all(axis=1)

    pid = (pbit(u11).astype(np.int64) + (pbit(u12).astype(np.int64) << 1)
           + (pbit(u21).astype(np.int64) << 2) + (pbit(u22).astype(np.int64) << 3))
    if (pid == 15).any():
        raise InternalInvariantViolation(
            "all four partial entries vanish above the pivot")
    tr_t, rs_t, cs_t, rowcase_t = _pattern_tables()
    tr, rs, cs, rowcase = tr_t[pid], rs_t[pid], cs_t[pid], rowcase_t[pid]
    a1, a2, b1, b2 = x1[:, m], x2[:, m], y1[:, m], y2[:, m]
    a1, a2, b1, b2 = (np.where(tr, b1, a1), np.where(tr, b2, a2),
                      np.where(tr, a1, b1), np.where(tr, a2, b2))
    a1, a2 = np.where(rs, a2, a1), np.where(rs, a1, a2)
    b1, b2 = np.where(cs, b2, b1), np.where(cs, b1, b2)
    t = np.maximum(0, b1 - a2)
    e11 = np.where(rowcase, a1, t)
    e12 = np.where(rowcase, 0, a1 - t)
    e21 = np.where(rowcase, a2 - b2, b1 - t)
    e22 = np.where(rowcase, b2, a2 - b1 + t)
    e11, e12 = np.where(cs, e12, e11), np.where(cs, e11, e12)
    e21, e22 = np.where(cs, e22, e21), np.where(cs, e21, e22)
    e11, e21 = np.where(rs, e21, e11), np.where(rs, e11, e21)
    e12, e22 = np.where(rs, e22, e12), np.where(rs, e12, e22)
    e12, e21 = np.where(tr, e21, e12), np.where(tr, e12, e21)
    out = []
    for u, col in zip((u11, u12, u21, u22), (e11, e12, e21, e22)):
        z = u.copy()
        z[:, m] = col
        out.append(z)
    return tuple(out)


def _interp_blocks(p: Poset, bound: int):
    """Per-pivot-translation blocks (T, U1, U2, counts) of realizable classes."""
    n = len(p)
    width = 2 * bound
    D = np.array(list(product(range(-width, width + 1), repeat=n)),
                 dtype=np.int64)
    mem = bulk_in_cone(p, D)
    lo = np.minimum(D, 0)
    hi = np.maximum(D, 0)
    for t_row, t_lo, t_hi in zip(D, lo, hi):
        cand = (mem & bulk_in_cone(p, D - t_row)
                & ((np.maximum(hi, t_hi) - np.minimum(lo, t_lo)) <= width).all(axis=1))
        idx = np.nonzero(cand)[0]
        if idx.size == 0:
            continue
        L = np.minimum(lo[idx], t_lo)
        H = np.maximum(hi[idx], t_hi)
        spread = (np.maximum(H[:, None, :], H[None, :, :])
                  - np.minimum(L[:, None, :], L[None, :, :]))
        counts = np.prod(np.maximum(0, (width + 1) - spread), axis=2)
        aa, bb = np.nonzero(counts)
        if aa.size == 0:
            continue
        yield (np.broadcast_to(t_row, (aa.size, n)).copy(),
               D[idx[aa]], D[idx[bb]], counts[aa, bb])


def _elem_from_row(p: Poset, row) -> GroupElement:
    return GroupElement(p, {i: int(c) for i, c in enumerate(row) if c})


def _interp_exhaustive(p: Poset, bound: int, rep: VerificationReport) -> None:
    n = len(p)
    if n == 0:
        rep.instances_checked += 1
        z0 = zero(p)
        z = interpolate(z0, z0, z0, z0)
        if not z.is_zero():
            rep.failures.append(Failure(
                poset=format_poset(p), input="all-zero quadruple",
                expected="z = 0", got=str(z)))
        return
    total = sum(int(block[3].size) for block in _interp_blocks(p, bound))
    stride = 1 if total <= _AGREE_FULL else max(1, total // _AGREE_TARGET)
    buf: list = []
    buffered = 0
    seen = 0

    def flush():
        nonlocal buf, buffered, seen
        if not buf:
            return
        T = np.concatenate([b[0] for b in buf])
        U1 = np.concatenate([b[1] for b in buf])
        U2 = np.concatenate([b[2] for b in buf])
        CNT = np.concatenate([b[3] for b in buf])
        buf = []
        buffered = 0
        _interp_check_chunk(p, bound, T, U1, U2, CNT, seen, stride, rep)
        seen += CNT.size

    for block in _interp_blocks(p, bound):
        buf.append(block)
        buffered += block[3].size
        if buffered >= _CHUNK_ROWS:
            flush()
    flush()


def _interp_check_chunk(p: Poset, bound: int, T, U1, U2, CNT,
                        offset: int, stride: int,
                        rep: VerificationReport) -> None:
    p1, p2, q1, q2 = U1, U2 - T, U1 - T, U2
    z11, z12, z21, z22 = _bulk_refine(p, p1, p2, q1, q2)
    ok = ((z11 + z12 == p1).all(axis=1) & (z21 + z22 == p2).all(axis=1)
          & (z11 + z21 == q1).all(axis=1) & (z12 + z22 == q2).all(axis=1)
          & bulk_in_cone(p, z11) & bulk_in_cone(p, z12)
          & bulk_in_cone(p, z21) & bulk_in_cone(p, z22))
    rep.instances_checked += int(CNT.sum())
    base = -bound - np.minimum(np.minimum(np.minimum(T, 0), np.minimum(U1, 0)),
                               np.minimum(U2, 0))
    for r in np.nonzero(~ok)[0]:
        if len(rep.failures) >= _FAILURE_CAP:
            break
        x1 = _elem_from_row(p, base[r])
        rep.failures.append(Failure(
            poset=format_poset(p),
            input=(f"x1 = {x1}; x2 = {_elem_from_row(p, base[r] + T[r])}; "
                   f"y1 = {_elem_from_row(p, base[r] + U1[r])}; "
                   f"y2 = {_elem_from_row(p, base[r] + U2[r])}"),
            expected="refined differences valid",
            got="sum or cone check failed"))
    first = (-offset) % stride
    for r in range(first, CNT.size, stride):
        if len(rep.failures) >= _FAILURE_CAP:
            break
        x1 = _elem_from_row(p, base[r])
        x2 = _elem_from_row(p, base[r] + T[r])
        y1 = _elem_from_row(p, base[r] + U1[r])
        y2 = _elem_from_row(p, base[r] + U2[r])
        z = interpolate(x1, x2, y1, y2)
        z_vec = _elem_from_row(p, base[r] + z12[r])
        if z != z_vec:
            rep.failures.append(Failure(
                poset=format_poset(p),
                input=f"x1 = {x1}; x2 = {x2}; y1 = {y1}; y2 = {y2}",
                expected=f"scalar output equal to vectorized {z_vec}",
                got=f"{z}"))
            continue
        if not (leq(x1, z) and leq(x2, z) and leq(z, y1) and leq(z, y2)):
            rep.failures.append(Failure(
                poset=format_poset(p),
                input=f"x1 = {x1}; x2 = {x2}; y1 = {y1}; y2 = {y2}",
                expected="x1, x2 <= z <= y1, y2",
                got=f"z = {z}"))


def _interp_samples(p: Poset, bound: int, draws: int, rng: Lcg):
    """Seeded rejection sampling of precondition-satisfying quadruples."""
    n = len(p)
    produced = 0
    attempts = 0
    limit = max(1, draws) * 5000
    while produced < draws and attempts < limit:
        attempts += 1
        vecs = []
        for _ in range(4):
            coeffs = {i: rng.below(2 * bound + 1) - bound for i in range(n)}
            vecs.append(GroupElement(p, {i: c for i, c in coeffs.items() if c}))
        x1, x2, y1, y2 = vecs
        if all(leq(xa, yb) for xa in (x1, x2) for yb in (y1, y2)):
            produced += 1
            yield (x1, x2, y1, y2, 1)


def _sort_failures(rep: VerificationReport) -> None:
    rep.failures.sort(key=lambda f: (f.poset, f.input, f.expected, f.got))
