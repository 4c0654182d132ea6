"""Finite semigroups as validated Cayley tables.

Elements are dense integer indices 0..order-1; names are display-only.
Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence


class SemigroupError(Exception):
    pass


class OutOfRange(SemigroupError):
    def __init__(self, entry):
        super().__init__(f"table entry {entry} out of range")
        self.entry = entry


class NonAssociative(SemigroupError):
    def __init__(self, i, j, k):
        super().__init__(f"associativity fails at triple ({i},{j},{k})")
        self.triple = (i, j, k)


class TooLarge(SemigroupError):
    pass


class NotInverse(SemigroupError):
    pass


class NotACongruence(SemigroupError):
    pass


@dataclass(frozen=True)
class FiniteSemigroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order}, names={list(self.names)})"


def validate_cayley(order: int,
                    table: Sequence[Sequence[int]],
                    names: Optional[Sequence[str]] = None) -> FiniteSemigroup:
    """Validate dimensions, entry range and full associativity (order^3 triples)."""
    if order < 1:
        raise SemigroupError("order must be positive")
    if len(table) != order or any(len(row) != order for row in table):
        raise SemigroupError("table dimensions do not match order")
    for row in table:
        for e in row:
            if not (0 <= e < order):
                raise OutOfRange(e)
    for i in range(order):
        for j in range(order):
            ij = table[i][j]
            for k in range(order):
                if table[ij][k] != table[i][table[j][k]]:
                    raise NonAssociative(i, j, k)
    if names is None:
        names = [f"x{i}" for i in range(order)]
    if len(names) != order:
        raise SemigroupError("names length does not match order")
    return FiniteSemigroup(order, tuple(tuple(row) for row in table), tuple(names))


def from_json(text: str) -> FiniteSemigroup:
    """Parse the Cayley table JSON format; unknown keys are rejected."""
    obj = json.loads(text)
    if not isinstance(obj, dict):
        raise SemigroupError("expected a JSON object")
    extra = set(obj) - {"order", "names", "table"}
    if extra:
        raise SemigroupError(f"unknown keys: {sorted(extra)}")
    if "order" not in obj or "table" not in obj:
        raise SemigroupError("missing required keys 'order' and 'table'")
    return validate_cayley(obj["order"], obj["table"], obj.get("names"))


def to_json(s: FiniteSemigroup) -> str:
    return json.dumps(
        {"order": s.order, "names": list(s.names), "table": [list(r) for r in s.table]},
        sort_keys=True)


# ---------------------------------------------------------------------------
# Green's relations

@dataclass(frozen=True)
class GreensData:
    r_class: tuple[int, ...]
    l_class: tuple[int, ...]
    j_class: tuple[int, ...]
    h_class: tuple[int, ...]
    d_class: tuple[int, ...]


def _classes_from_keys(keys: list) -> tuple[int, ...]:
    # class ids numbered by first occurrence
    ids: dict = {}
    out = []
    for k in keys:
        if k not in ids:
            ids[k] = len(ids)
        out.append(ids[k])
    return tuple(out)


def _right_ideal(s: FiniteSemigroup, x: int) -> frozenset[int]:
    return frozenset({x} | {s.table[x][t] for t in range(s.order)})


def _left_ideal(s: FiniteSemigroup, x: int) -> frozenset[int]:
    return frozenset({x} | {s.table[t][x] for t in range(s.order)})


def _two_sided_ideal(s: FiniteSemigroup, x: int) -> frozenset[int]:
    # S^1 x S^1 = {x} ∪ xS ∪ Sx ∪ SxS
    out = set(_right_ideal(s, x)) | set(_left_ideal(s, x))
    for a in range(s.order):
        ax = s.table[a][x]
        for b in range(s.order):
            out.add(s.table[ax][b])
    return frozenset(out)


def greens(s: FiniteSemigroup) -> GreensData:
    """Partitions from principal ideals; H = R∧L; D = join of R and L (= J, checked)."""
    n = s.order
    r = _classes_from_keys([_right_ideal(s, x) for x in range(n)])
    l = _classes_from_keys([_left_ideal(s, x) for x in range(n)])
    j = _classes_from_keys([_two_sided_ideal(s, x) for x in range(n)])
    h = _classes_from_keys([(r[x], l[x]) for x in range(n)])
    # D = R∘L, computed as the join of R and L via union-find
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for cls in (r, l):
        first: dict[int, int] = {}
        for x in range(n):
            c = cls[x]
            if c in first:
                parent[find(x)] = find(first[c])
            else:
                first[c] = x
    d = _classes_from_keys([find(x) for x in range(n)])
    if d != j:
        raise SemigroupError("D != J on a finite semigroup; table is corrupt")
    return GreensData(r, l, j, h, d)


# ---------------------------------------------------------------------------
# Structural predicates

def is_simple(s: FiniteSemigroup) -> bool:
    return len(set(greens(s).j_class)) == 1


def proper_ideal(s: FiniteSemigroup) -> Optional[frozenset[int]]:
    """Smallest proper principal two-sided ideal, ties broken by smallest generator."""
    best = None
    for x in range(s.order):
        ideal = _two_sided_ideal(s, x)
        if len(ideal) == s.order:
            continue
        if best is None or len(ideal) < len(best):
            best = ideal
    return best


def identity_index(s: FiniteSemigroup) -> Optional[int]:
    for e in range(s.order):
        if all(s.table[e][x] == x == s.table[x][e] for x in range(s.order)):
            return e
    return None


def is_group(s: FiniteSemigroup) -> bool:
    if identity_index(s) is None:
        return False
    n = s.order
    full = set(range(n))
    for i in range(n):
        if set(s.table[i]) != full:
            return False
        if {s.table[j][i] for j in range(n)} != full:
            return False
    return True


def idempotents(s: FiniteSemigroup) -> frozenset[int]:
    return frozenset(e for e in range(s.order) if s.table[e][e] == e)


def _idem_leq(s: FiniteSemigroup, e: int, f: int) -> bool:
    return s.table[e][f] == e and s.table[f][e] == e


def is_completely_simple(s: FiniteSemigroup) -> bool:
    if not is_simple(s):
        return False
    es = idempotents(s)
    for e in es:
        if all(not (_idem_leq(s, f, e) and f != e) for f in es):
            return True
    return False


def inverses_of(s: FiniteSemigroup, x: int) -> list[int]:
    out = []
    for t in range(s.order):
        if s.table[s.table[x][t]][x] == x and s.table[s.table[t][x]][t] == t:
            out.append(t)
    return out


def is_inverse(s: FiniteSemigroup) -> bool:
    return all(len(inverses_of(s, x)) == 1 for x in range(s.order))


def natural_partial_order(s: FiniteSemigroup):
    """Pair set {(x,y) : x = e·y for some idempotent e} on an inverse semigroup."""
    if not is_inverse(s):
        raise NotInverse("natural_partial_order requires an inverse semigroup")
    from .relations import PairSet
    es = idempotents(s)
    pairs = {(s.table[e][y], y) for e in es for y in range(s.order)}
    pairs |= {(x, x) for x in range(s.order)}
    return PairSet.from_pairs(s, pairs)


# ---------------------------------------------------------------------------
# Constructions

@dataclass(frozen=True)
class ReesSpec:
    group: FiniteSemigroup
    i_size: int
    j_size: int
    sandwich: tuple[tuple[int, ...], ...]  # j_size x i_size, group element indices

    def __post_init__(self):
        if not is_group(self.group):
            raise SemigroupError("ReesSpec.group must be a group")
        if self.i_size < 1 or self.j_size < 1:
            raise SemigroupError("index sets must be non-empty")
        if len(self.sandwich) != self.j_size or \
                any(len(row) != self.i_size for row in self.sandwich):
            raise SemigroupError("sandwich matrix dimensions must be J x I")
        for row in self.sandwich:
            for g in row:
                if not (0 <= g < self.group.order):
                    raise OutOfRange(g)


def rees_matrix(spec: ReesSpec) -> FiniteSemigroup:
    """Rees matrix semigroup on I x G x J: (i,g,j)(k,h,l) = (i, g·p[j][k]·h, l)."""
    g = spec.group
    elems = [(i, a, j) for i in range(spec.i_size)
             for a in range(g.order) for j in range(spec.j_size)]
    index = {e: k for k, e in enumerate(elems)}
    n = len(elems)
    table = [[0] * n for _ in range(n)]
    for x, (i, a, j) in enumerate(elems):
        for y, (k, b, l) in enumerate(elems):
            mid = g.table[g.table[a][spec.sandwich[j][k]]][b]
            table[x][y] = index[(i, mid, l)]
    names = [f"({i},{g.names[a]},{j})" for (i, a, j) in elems]
    return validate_cayley(n, table, names)


def sandwich(s: FiniteSemigroup, a: int) -> FiniteSemigroup:
    """Variant of S with multiplication x∘y = x·a·y."""
    if not (0 <= a < s.order):
        raise OutOfRange(a)
    table = [[s.table[s.table[x][a]][y] for y in range(s.order)]
             for x in range(s.order)]
    return validate_cayley(s.order, table, [f"{nm}^{s.names[a]}" for nm in s.names])


def _partition_classes(order: int, pairs) -> list[list[int]]:
    parent = list(range(order))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (x, y) in pairs:
        parent[find(x)] = find(y)
    groups: dict[int, list[int]] = {}
    for x in range(order):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=min)


def quotient(s: FiniteSemigroup, pairs: Iterable[tuple[int, int]]):
    """Quotient by a congruence given as a set of pairs.

    Returns (quotient semigroup, class map).  Raises NotACongruence if the
    pair set is not an equivalence compatible with multiplication.
    """
    rel = {(x, y) for (x, y) in pairs}
    rel |= {(x, x) for x in range(s.order)}
    if any(not (0 <= x < s.order and 0 <= y < s.order) for (x, y) in rel):
        raise OutOfRange(next(p for p in rel if not all(0 <= c < s.order for c in p)))
    if any((y, x) not in rel for (x, y) in rel):
        raise NotACongruence("relation is not symmetric")
    for (x, y) in rel:
        for (y2, z) in rel:
            if y2 == y and (x, z) not in rel:
                raise NotACongruence("relation is not transitive")
    for (x, y) in rel:
        for (z, t) in rel:
            if (s.table[x][z], s.table[y][t]) not in rel:
                raise NotACongruence("relation is not compatible")
    classes = _partition_classes(s.order, rel)
    class_of = [0] * s.order
    for cid, cls in enumerate(classes):
        for x in cls:
            class_of[x] = cid
    m = len(classes)
    table = [[class_of[s.table[classes[a][0]][classes[b][0]]] for b in range(m)]
             for a in range(m)]
    names = ["{" + "|".join(s.names[x] for x in cls) + "}" for cls in classes]
    return validate_cayley(m, table, names), class_of


# ---------------------------------------------------------------------------
# Enumeration and canonical forms

def enumerate_semigroups(n: int) -> Iterator[FiniteSemigroup]:
    """All labeled associative tables of order n, by backtracking (n <= 4)."""
    if n > 4:
        raise TooLarge(f"labeled enumeration capped at order 4, got {n}")
    table = [[-1] * n for _ in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]
    rng = range(n)

    def consistent() -> bool:
        for a in rng:
            ta = table[a]
            for b in rng:
                ab = ta[b]
                if ab < 0:
                    continue
                tb = table[b]
                for c in rng:
                    bc = tb[c]
                    if bc < 0:
                        continue
                    x = table[ab][c]
                    y = ta[bc]
                    if x >= 0 and y >= 0 and x != y:
                        return False
        return True

    def fill(k: int) -> Iterator[FiniteSemigroup]:
        if k == len(cells):
            yield FiniteSemigroup(
                n, tuple(tuple(row) for row in table),
                tuple(f"x{i}" for i in range(n)))
            return
        i, j = cells[k]
        for v in rng:
            table[i][j] = v
            if consistent():
                yield from fill(k + 1)
        table[i][j] = -1

    yield from fill(0)


def relabel(s: FiniteSemigroup, perm: Sequence[int]) -> FiniteSemigroup:
    """Apply the relabeling x -> perm[x]."""
    n = s.order
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            table[perm[i]][perm[j]] = perm[s.table[i][j]]
    names = [""] * n
    for i in range(n):
        names[perm[i]] = s.names[i]
    return FiniteSemigroup(n, tuple(tuple(r) for r in table), tuple(names))


def canonical_form(s: FiniteSemigroup) -> tuple[tuple[int, ...], ...]:
    """Minimum table over all relabelings; constant on isomorphism classes (n <= 5)."""
    if s.order > 5:
        raise TooLarge(f"canonical_form capped at order 5, got {s.order}")
    best = None
    for perm in itertools.permutations(range(s.order)):
        cand = relabel(s, perm).table
        if best is None or cand < best:
            best = cand
    return best


# ---------------------------------------------------------------------------
# Canned subjects

def left_zero(n: int) -> FiniteSemigroup:
    return validate_cayley(n, [[i] * n for i in range(n)],
                           [chr(ord("x") + i) if n <= 3 else f"x{i}" for i in range(n)])


def cyclic_group(n: int) -> FiniteSemigroup:
    return validate_cayley(n, [[(i + j) % n for j in range(n)] for i in range(n)],
                           [f"g{i}" for i in range(n)])


def klein_four() -> FiniteSemigroup:
    return validate_cayley(4, [[i ^ j for j in range(4)] for i in range(4)],
                           ["1", "a", "b", "ab"])


def min_semilattice() -> FiniteSemigroup:
    return validate_cayley(2, [[0, 0], [0, 1]], ["0", "1"])


def trivial_monoid() -> FiniteSemigroup:
    return validate_cayley(1, [[0]], ["1"])


def direct_product(a: FiniteSemigroup, b: FiniteSemigroup) -> FiniteSemigroup:
    elems = [(i, j) for i in range(a.order) for j in range(b.order)]
    index = {e: k for k, e in enumerate(elems)}
    table = [[index[(a.table[i][k], b.table[j][l])] for (k, l) in elems]
             for (i, j) in elems]
    names = [f"({a.names[i]},{b.names[j]})" for (i, j) in elems]
    return validate_cayley(len(elems), table, names)


def symmetric_group_3() -> FiniteSemigroup:
    perms = list(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    # compose left-to-right: (p*q)(x) = q(p(x))
    table = [[index[tuple(q[p[x]] for x in range(3))] for q in perms] for p in perms]
    names = ["".join(map(str, p)) for p in perms]
    return validate_cayley(6, table, names)


def generate_symmetric_inverse(n: int) -> FiniteSemigroup:
    """Monoid of all partial injections on {1..n} under left-to-right composition."""
    if n > 3:
        raise TooLarge(f"symmetric inverse monoid capped at n=3, got {n}")
    maps = []
    for size in range(n + 1):
        for dom in itertools.combinations(range(n), size):
            for img in itertools.permutations(range(n), size):
                maps.append(tuple(zip(dom, img)))
    maps.sort(key=lambda m: (len(m), m))
    index = {m: k for k, m in enumerate(maps)}

    def compose(f, g):
        # apply f first, then g (right-action convention)
        gd = dict(g)
        return tuple((d, gd[v]) for (d, v) in f if v in gd)

    table = [[index[compose(f, g)] for g in maps] for f in maps]

    def name(m):
        if not m:
            return "0"
        return "(" + ",".join(f"{d + 1}->{v + 1}" for (d, v) in m) + ")"

    return validate_cayley(len(maps), table, [name(m) for m in maps])


@dataclass(frozen=True)
class EndomorphismTable:
    """An endomorphism of a finite monoid, given elementwise."""
    base: FiniteSemigroup
    map: tuple[int, ...]

    def __post_init__(self):
        e = identity_index(self.base)
        if e is None:
            raise SemigroupError("EndomorphismTable.base must be a monoid")
        if len(self.map) != self.base.order:
            raise SemigroupError("map length must equal base order")
        if self.map[e] != e:
            raise SemigroupError("endomorphism must fix the identity")
        t = self.base.table
        for x in range(self.base.order):
            for y in range(self.base.order):
                if self.map[t[x][y]] != t[self.map[x]][self.map[y]]:
                    raise SemigroupError(f"map is not a homomorphism at ({x},{y})")
