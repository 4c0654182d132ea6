"""Executable models of the infinite counterexamples.

Covers the bicyclic monoid with its natural partial order, Bruck-Reilly
extensions over finite base monoids, the integer-order relation, and a fully
symbolic countable Baer-Levi semigroup whose elements carry their exact image
complements as decidable arithmetic-progression sets.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional

from .finite import EndomorphismTable, SemigroupError


DEFAULT_WINDOW = 10_000


def window() -> int:
    return int(os.environ.get("SG_WINDOW", DEFAULT_WINDOW))


class ThetaMismatch(SemigroupError):
    pass


class NotClosed(SemigroupError):
    pass


# ---------------------------------------------------------------------------
# Bicyclic monoid

@dataclass(frozen=True)
class BicyclicElement:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise SemigroupError("bicyclic coordinates must be non-negative")


def bicyclic_mul(x: BicyclicElement, y: BicyclicElement) -> BicyclicElement:
    k = max(x.n, y.m)
    return BicyclicElement(x.m - x.n + k, y.n - y.m + k)


def bicyclic_leq(x: BicyclicElement, y: BicyclicElement) -> bool:
    """Natural partial order: x = (k,k)·y for some idempotent (k,k).

    Closed form; bicyclic_leq_search is the defining search it is validated
    against.
    """
    return x.m >= y.m and x.m - x.n == y.m - y.n


def bicyclic_leq_search(x: BicyclicElement, y: BicyclicElement,
                        bound: Optional[int] = None) -> bool:
    if bound is None:
        bound = max(x.m, x.n, y.m, y.n) + 1
    return any(bicyclic_mul(BicyclicElement(k, k), y) == x for k in range(bound + 1))


# ---------------------------------------------------------------------------
# Bruck-Reilly extension

@dataclass(frozen=True)
class BRElement:
    m: int
    s: int
    n: int
    theta: EndomorphismTable

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise SemigroupError("BR coordinates must be non-negative")
        if not (0 <= self.s < self.theta.base.order):
            raise SemigroupError("base element index out of range")


def theta_power(theta: EndomorphismTable, x: int, k: int) -> int:
    for _ in range(k):
        x = theta.map[x]
    return x


def br_mul(x: BRElement, y: BRElement) -> BRElement:
    if x.theta is not y.theta and x.theta != y.theta:
        raise ThetaMismatch("operands built over different endomorphisms")
    k = max(x.n, y.m)
    t = x.theta.base.table
    mid = t[theta_power(x.theta, x.s, k - x.n)][theta_power(x.theta, y.s, k - y.m)]
    return BRElement(x.m - x.n + k, mid, y.n - y.m + k, x.theta)


def br_project(x: BRElement) -> BicyclicElement:
    return BicyclicElement(x.m, x.n)


def br_order_member(x: BRElement, y: BRElement) -> bool:
    """Pullback of the bicyclic natural order along the projection."""
    return bicyclic_leq(br_project(x), br_project(y))


# ---------------------------------------------------------------------------
# Integer example

def zdiag_member(x: int, y: int) -> bool:
    """Membership in the order relation on the infinite cyclic group."""
    return x <= y


# ---------------------------------------------------------------------------
# Arithmetic-progression sets over the naturals

@dataclass(frozen=True)
class APSet:
    """Finite union of full residue classes over N, with finite patches.

    n is a member iff (n matches some progression or n in plus) and
    n not in minus.
    """
    progressions: tuple[tuple[int, int], ...] = ()
    plus: frozenset[int] = frozenset()
    minus: frozenset[int] = frozenset()

    def __post_init__(self):
        for (m, r) in self.progressions:
            if m < 1:
                raise SemigroupError("progression modulus must be positive")
        if self.plus & self.minus:
            raise SemigroupError("plus and minus must be disjoint")

    def matches_progression(self, n: int) -> bool:
        return any(n % m == r % m for (m, r) in self.progressions)

    def member(self, n: int) -> bool:
        if n < 0:
            return False
        return (self.matches_progression(n) or n in self.plus) and n not in self.minus

    def is_empty(self) -> bool:
        # minus is finite, so any progression keeps the set infinite
        return not self.progressions and not self.plus

    def is_infinite(self) -> bool:
        return bool(self.progressions)

    def sample(self, upto: int) -> list[int]:
        return [n for n in range(upto + 1) if self.member(n)]


def apset_normalize(progressions, plus, minus) -> APSet:
    progs = tuple(sorted({(m, r % m) for (m, r) in progressions}))
    tmp = APSet(progs)
    plus = frozenset(n for n in plus if n >= 0 and not tmp.matches_progression(n))
    minus = frozenset(n for n in minus
                      if n >= 0 and (tmp.matches_progression(n) or n in plus))
    plus -= minus
    return APSet(progs, plus, minus)


def _crt(m1: int, r1: int, m2: int, r2: int) -> Optional[tuple[int, int]]:
    g = math.gcd(m1, m2)
    if (r1 - r2) % g != 0:
        return None
    lcm = m1 // g * m2
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 != g else 0
    return lcm, (r1 + m1 * t) % lcm


def apset_intersect(a: APSet, b: APSet) -> APSet:
    progs = []
    for (m1, r1) in a.progressions:
        for (m2, r2) in b.progressions:
            c = _crt(m1, r1 % m1, m2, r2 % m2)
            if c is not None:
                progs.append(c)
    plus = {n for n in a.plus | b.plus if a.member(n) and b.member(n)}
    minus = {n for n in a.minus | b.minus if not (a.member(n) and b.member(n))}
    return apset_normalize(progs, plus, minus)


def apset_union(a: APSet, b: APSet) -> APSet:
    progs = list(a.progressions) + list(b.progressions)
    plus = {n for n in a.plus | b.plus if a.member(n) or b.member(n)}
    minus = {n for n in a.minus | b.minus if not (a.member(n) or b.member(n))}
    return apset_normalize(progs, plus, minus)


def apset_is_empty(a: APSet) -> bool:
    return apset_normalize(a.progressions, a.plus, a.minus).is_empty()


def apset_member(a: APSet, n: int) -> bool:
    return a.member(n)


# ---------------------------------------------------------------------------
# Injections N -> N with exact image complements

@dataclass(frozen=True)
class CoInjection:
    """Injection given by residue-affine pieces plus finite patches.

    Unpatched k = modulus*q + r maps to stride*q + offsets[r].  The exact
    image complement travels with the map as an APSet; construction validates
    injectivity and the complement on [0, window].
    """
    modulus: int
    stride: int
    offsets: tuple[int, ...]
    patches: tuple[tuple[int, int], ...]
    complement: APSet
    validate_window: Optional[int] = None

    def __post_init__(self):
        if self.modulus < 1 or self.stride < 1:
            raise SemigroupError("modulus and stride must be positive")
        if len(self.offsets) != self.modulus:
            raise SemigroupError("need one offset per residue")
        w = self.validate_window if self.validate_window is not None else window()
        if any(src > w for (src, _) in self.patches):
            raise SemigroupError("patch sources must lie inside the validation window")
        seen: dict[int, int] = {}
        image = set()
        for k in range(w + 1):
            v = self.apply(k)
            if v < 0:
                raise SemigroupError(f"map leaves N at {k}")
            if v in seen:
                raise SemigroupError(f"not injective: {seen[v]} and {k} both map to {v}")
            seen[v] = k
            image.add(v)
        # inputs beyond the window only produce values >= horizon, so membership
        # of anything below it is fully decided by the window scan
        horizon = self.stride * ((w + 1) // self.modulus)
        for v in range(min(horizon, w + 1)):
            if self.complement.member(v) != (v not in image):
                raise SemigroupError(f"stored complement wrong at {v}")

    def piece_apply(self, k: int) -> int:
        q, r = divmod(k, self.modulus)
        return self.stride * q + self.offsets[r]

    def apply(self, k: int) -> int:
        for (src, dst) in self.patches:
            if src == k:
                return dst
        return self.piece_apply(k)

    def preimage(self, v: int) -> Optional[int]:
        """The unique k with apply(k) = v, or None; exact."""
        patched = {src for (src, _) in self.patches}
        for (src, dst) in self.patches:
            if dst == v:
                return src
        for r in range(self.modulus):
            d = v - self.offsets[r]
            if d >= 0 and d % self.stride == 0:
                k = self.modulus * (d // self.stride) + r
                if k not in patched:
                    return k
        return None


def co_identity() -> CoInjection:
    return CoInjection(1, 1, (0,), (), APSet())


def apset_image(f: CoInjection, s: APSet) -> APSet:
    """Exact image {f(n) : n in s} as an APSet."""
    progs = []
    minus_candidates: set[int] = set()
    plus_candidates: set[int] = set()
    for (m, r) in s.progressions:
        r %= m
        big = m * f.modulus // math.gcd(m, f.modulus)
        step = f.stride * (big // f.modulus)
        for rho in range(r, big, m):
            start = f.piece_apply(rho)
            progs.append((step, start % step))
            # class members below the first attained value
            minus_candidates.update(range(start % step, start, step))
    patched = {src for (src, _) in f.patches}
    for n in patched:
        if s.matches_progression(n):
            minus_candidates.add(f.piece_apply(n))
        if s.member(n):
            plus_candidates.add(f.apply(n))
    for n in s.minus:
        if s.matches_progression(n):
            minus_candidates.add(f.piece_apply(n))
    for n in s.plus:
        plus_candidates.add(f.apply(n))

    def in_image(v: int) -> bool:
        k = f.preimage(v)
        return k is not None and s.member(k)

    tmp = APSet(tuple(sorted(set(progs))))
    plus = {v for v in plus_candidates if in_image(v) and not tmp.matches_progression(v)}
    minus = {v for v in minus_candidates if tmp.matches_progression(v) and not in_image(v)}
    return apset_normalize(tmp.progressions, plus, minus)


def co_compose(f: CoInjection, g: CoInjection) -> CoInjection:
    """Composite "apply f, then g", with the exact composed complement."""
    m = f.modulus * g.modulus
    stride = f.stride * g.stride
    offsets = tuple(g.piece_apply(f.piece_apply(rho)) for rho in range(m))
    # divisibility making per-residue offsets well-defined: g.modulus | f.stride*g.modulus
    keys = {src for (src, _) in f.patches}
    for (gsrc, _) in g.patches:
        k = f.preimage(gsrc)
        if k is not None:
            keys.add(k)
    patches = []
    for k in sorted(keys):
        v = g.apply(f.apply(k))
        q, r = divmod(k, m)
        if stride * q + offsets[r] != v:
            patches.append((k, v))
    complement = apset_union(g.complement, apset_image(g, f.complement))
    return CoInjection(m, stride, offsets, tuple(patches), complement)


# ---------------------------------------------------------------------------
# Baer-Levi witness

def baer_levi_witness() -> dict:
    """The three injections separating symmetry from transitivity.

    X = N, complements: A' = {n = 0 mod 4} for f, B' ∪ {4} for g, and
    B' = {n = 1 mod 4} for h.  Pairs lie in rho exactly when the two image
    complements intersect.
    """
    a_prime = APSet(((4, 0),))
    b_prime = APSet(((4, 1),))
    f = CoInjection(3, 4, (1, 2, 3), (), a_prime)
    g = CoInjection(3, 4, (2, 3, 4), ((0, 0), (1, 2), (2, 3)),
                    apset_normalize([(4, 1)], {4}, set()))
    h = CoInjection(3, 4, (0, 2, 3), (), b_prime)

    def rho_member(x: CoInjection, y: CoInjection) -> bool:
        return not apset_is_empty(apset_intersect(x.complement, y.complement))

    probe = 40
    return {
        "f": f, "g": g, "h": h,
        "rho_member": rho_member,
        "fg": rho_member(f, g),
        "gh": rho_member(g, h),
        "fh": rho_member(f, h),
        "fg_intersection": apset_intersect(f.complement, g.complement).sample(probe),
        "gh_intersection": apset_intersect(g.complement, h.complement).sample(probe),
        "fh_intersection": apset_intersect(f.complement, h.complement).sample(probe),
    }
