"""Pair-set relations over a finite semigroup.

A diagonal subsemigroup is a subsemigroup of S x S containing the diagonal;
a congruence is a diagonal subsemigroup that is also symmetric and transitive.
This module decides the DSC property ("every diagonal subsemigroup is a
congruence") both exhaustively and via the group criterion, and produces
certified witnesses for the failing cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import finite
from .finite import FiniteSemigroup, TooLarge


class IsGroup(finite.SemigroupError):
    pass


@dataclass(frozen=True)
class PairSet:
    subject: FiniteSemigroup
    pairs: frozenset[tuple[int, int]]

    @staticmethod
    def from_pairs(subject: FiniteSemigroup, pairs: Iterable[tuple[int, int]]) -> "PairSet":
        ps = frozenset((int(x), int(y)) for (x, y) in pairs)
        n = subject.order
        for (x, y) in ps:
            if not (0 <= x < n and 0 <= y < n):
                raise finite.OutOfRange((x, y))
        return PairSet(subject, ps)

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[list[int]]:
        return [list(p) for p in sorted(self.pairs)]


@dataclass(frozen=True)
class AxiomReport:
    contains_diagonal: bool
    is_subsemigroup: bool
    is_symmetric: bool
    is_transitive: bool
    violations: dict

    @property
    def is_congruence(self) -> bool:
        return (self.contains_diagonal and self.is_subsemigroup
                and self.is_symmetric and self.is_transitive)

    def as_dict(self) -> dict:
        return {
            "contains_diagonal": self.contains_diagonal,
            "is_subsemigroup": self.is_subsemigroup,
            "is_symmetric": self.is_symmetric,
            "is_transitive": self.is_transitive,
            "violations": {k: list(v) for k, v in sorted(self.violations.items())},
        }


def diagonal(s: FiniteSemigroup) -> frozenset[tuple[int, int]]:
    return frozenset((x, x) for x in range(s.order))


def diagonal_closure(s: FiniteSemigroup, generators: Iterable[tuple[int, int]]) -> PairSet:
    """Least subsemigroup of S x S containing the diagonal and the generators."""
    cur = set(diagonal(s)) | {(int(x), int(y)) for (x, y) in generators}
    t = s.table
    frontier = list(cur)
    while frontier:
        nxt = []
        for (x, y) in frontier:
            for (z, w) in list(cur):
                for p in ((t[x][z], t[y][w]), (t[z][x], t[w][y])):
                    if p not in cur:
                        cur.add(p)
                        nxt.append(p)
        frontier = nxt
    return PairSet.from_pairs(s, cur)


def congruence_generated(s: FiniteSemigroup, pairs: Iterable[tuple[int, int]]) -> PairSet:
    """Least congruence containing the pairs."""
    cur = set(diagonal(s)) | {(int(x), int(y)) for (x, y) in pairs}
    t = s.table
    changed = True
    while changed:
        changed = False
        for (x, y) in list(cur):
            if (y, x) not in cur:
                cur.add((y, x))
                changed = True
        for (x, y) in list(cur):
            for (y2, z) in list(cur):
                if y2 == y and (x, z) not in cur:
                    cur.add((x, z))
                    changed = True
        for (x, y) in list(cur):
            for (z, w) in list(cur):
                p = (t[x][z], t[y][w])
                if p not in cur:
                    cur.add(p)
                    changed = True
    return PairSet.from_pairs(s, cur)


def axiom_report(s: FiniteSemigroup, rho: PairSet) -> AxiomReport:
    """Check the four congruence axioms independently, recording first violations."""
    t = s.table
    pairs = rho.pairs
    violations: dict = {}

    diag_ok = True
    for x in range(s.order):
        if (x, x) not in pairs:
            diag_ok = False
            violations["contains_diagonal"] = (x, x)
            break

    sub_ok = True
    for (x, y) in sorted(pairs):
        if not sub_ok:
            break
        for (z, w) in sorted(pairs):
            if (t[x][z], t[y][w]) not in pairs:
                sub_ok = False
                violations["is_subsemigroup"] = (x, y, z, w)
                break

    sym_ok = True
    for (x, y) in sorted(pairs):
        if (y, x) not in pairs:
            sym_ok = False
            violations["is_symmetric"] = (x, y)
            break

    trans_ok = True
    for (x, y) in sorted(pairs):
        if not trans_ok:
            break
        for (y2, z) in sorted(pairs):
            if y2 == y and (x, z) not in pairs:
                trans_ok = False
                violations["is_transitive"] = (x, y, z)
                break

    return AxiomReport(diag_ok, sub_ok, sym_ok, trans_ok, violations)


def is_congruence(s: FiniteSemigroup, rho: PairSet) -> bool:
    return axiom_report(s, rho).is_congruence


# ---------------------------------------------------------------------------
# DSC decisions

def _pair_products(s: FiniteSemigroup) -> list[list[int]]:
    """prod[p][q] over flattened pair indices p = x*n + y."""
    n = s.order
    t = s.table
    idx = [(x, y) for x in range(n) for y in range(n)]
    return [[t[x][z] * n + t[y][w] for (z, w) in idx] for (x, y) in idx]


def _mask_closed(mask: int, members: list[int], prod) -> bool:
    for p in members:
        row = prod[p]
        for q in members:
            if not (mask >> row[q]) & 1:
                return False
    return True


def brute_force_is_dsc(s: FiniteSemigroup) -> tuple[bool, Optional[PairSet]]:
    """Scan every subset of off-diagonal pairs; complete for order <= 4.

    Every diagonal subsemigroup is Δ plus some set of off-diagonal pairs, so
    the scan is exhaustive.  For each multiplication-closed subset the
    symmetry and transitivity axioms are checked; the first failure (lowest
    subset mask) is returned as the witness.
    """
    n = s.order
    if n > 4:
        raise TooLarge(f"subset scan capped at order 4, got {n}")
    prod = _pair_products(s)
    diag_mask = 0
    for x in range(n):
        diag_mask |= 1 << (x * n + x)
    off = [x * n + y for x in range(n) for y in range(n) if x != y]
    k = len(off)
    for m in range(1 << k):
        mask = diag_mask
        mm = m
        while mm:
            low = mm & -mm
            mask |= 1 << off[low.bit_length() - 1]
            mm ^= low
        members = [p for p in range(n * n) if (mask >> p) & 1]
        if not _mask_closed(mask, members, prod):
            continue
        pairs = [(p // n, p % n) for p in members]
        ps = PairSet.from_pairs(s, pairs)
        rep = axiom_report(s, ps)
        if not (rep.is_symmetric and rep.is_transitive):
            return False, ps
    return True, None


def count_diagonal_subsemigroups(s: FiniteSemigroup) -> int:
    """Number of multiplication-closed supersets of the diagonal (order <= 4)."""
    n = s.order
    if n > 4:
        raise TooLarge(f"subset scan capped at order 4, got {n}")
    prod = _pair_products(s)
    diag_mask = 0
    for x in range(n):
        diag_mask |= 1 << (x * n + x)
    off = [x * n + y for x in range(n) for y in range(n) if x != y]
    count = 0
    for m in range(1 << len(off)):
        mask = diag_mask
        mm = m
        while mm:
            low = mm & -mm
            mask |= 1 << off[low.bit_length() - 1]
            mm ^= low
        members = [p for p in range(n * n) if (mask >> p) & 1]
        if _mask_closed(mask, members, prod):
            count += 1
    return count


def is_dsc_fast(s: FiniteSemigroup) -> bool:
    """A finite semigroup is DSC exactly when it is a group."""
    return finite.is_group(s)


def witness_non_dsc(s: FiniteSemigroup) -> tuple[PairSet, tuple[int, int], str]:
    """A verified diagonal subsemigroup of S x S that is not symmetric.

    Non-simple S: rho = I x S ∪ Δ for the smallest proper principal ideal I.
    Simple non-group S (hence completely simple): cross-pairs between the two
    lowest R-classes restricted to a common L-class, plus all H-related pairs;
    dual over L-classes when there is a single R-class.
    """
    if finite.is_group(s):
        raise IsGroup("witness_non_dsc requires a non-group")
    n = s.order
    ideal = finite.proper_ideal(s)
    if ideal is not None:
        pairs = {(x, y) for x in ideal for y in range(n)}
        pairs |= {(x, x) for x in range(n)}
        strategy = "ideal"
    else:
        gd = finite.greens(s)
        h_pairs = {(x, y) for x in range(n) for y in range(n)
                   if gd.h_class[x] == gd.h_class[y]}
        if len(set(gd.r_class)) >= 2:
            ci, ck = _two_lowest_classes(gd.r_class)
            pairs = {(x, y) for x in range(n) for y in range(n)
                     if gd.r_class[x] == ci and gd.r_class[y] == ck
                     and gd.l_class[x] == gd.l_class[y]}
            strategy = "rees-R"
        else:
            ci, ck = _two_lowest_classes(gd.l_class)
            pairs = {(x, y) for x in range(n) for y in range(n)
                     if gd.l_class[x] == ci and gd.l_class[y] == ck
                     and gd.r_class[x] == gd.r_class[y]}
            strategy = "rees-L"
        pairs |= h_pairs
    ps = PairSet.from_pairs(s, pairs)
    rep = axiom_report(s, ps)
    if not (rep.contains_diagonal and rep.is_subsemigroup):
        raise finite.SemigroupError(f"witness construction broke: {rep.violations}")
    if rep.is_symmetric:
        raise finite.SemigroupError("witness construction produced a symmetric relation")
    failing = min((x, y) for (x, y) in ps.pairs if (y, x) not in ps.pairs)
    return ps, failing, strategy


def _two_lowest_classes(class_of: tuple[int, ...]) -> tuple[int, int]:
    # the two classes with the smallest member indices
    seen = []
    for x, c in enumerate(class_of):
        if c not in seen:
            seen.append(c)
        if len(seen) == 2:
            break
    return seen[0], seen[1]


def witness_json(ps: PairSet, failing: tuple[int, int], strategy: str) -> dict:
    rep = axiom_report(ps.subject, ps)
    return {
        "strategy": strategy,
        "pairs": ps.sorted_pairs(),
        "failing_pair": list(failing),
        "axioms": rep.as_dict(),
    }
