"""Byleen-style monoid over a finite base monoid.

The monoid is presented over W = A ∪ B ∪ S by length-reducing relations
(ab = p_ab, as = a▷s, sb = s◁b, st = s·t, 1 = ε), so every element has a
unique normal form v·s·u with v ∈ B*, s ∈ S, u ∈ A*.  The sandwich matrix P
is 2-transitive, deterministic and lazily resolved: each requirement "give me
a column hitting (c1,c2) at rows (a1,a2)" owns a stage number computed from a
self-delimiting encoding of the requirement, and the stage's fresh index is
stage+1.  Monotonicity of the encoding rules out cell conflicts, so any cell
is resolvable in O(1) from its own coordinates; untouched cells default to
the identity of S.

Every certificate-producing operation (the six claims, span_witness,
express_pair, inverse_of) re-verifies its output by evaluation before
returning it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .finite import FiniteSemigroup, SemigroupError, identity_index


class EqualIndices(SemigroupError):
    pass


class EqualElements(SemigroupError):
    pass


class MatrixMismatch(SemigroupError):
    pass


class NotRegularBase(SemigroupError):
    pass


@dataclass(frozen=True)
class ALetter:
    n: int
    s: int


@dataclass(frozen=True)
class BLetter:
    n: int
    s: int


@dataclass(frozen=True)
class SElem:
    s: int


Letter = Union[ALetter, BLetter, SElem]


# ---------------------------------------------------------------------------
# Stage encoding: self-delimiting binary tuple codes.  The encoded number is
# strictly larger than every component, which is what makes fresh indices
# (stage+1) immune to reference cycles between requirements.

def _gamma(x: int) -> str:
    b = bin(x + 1)[2:]
    return "0" * (len(b) - 1) + b


def _encode(parts: Sequence[int]) -> int:
    return int("1" + "".join(_gamma(x) for x in parts), 2)


def _decode(t: int, count: int) -> Optional[tuple[int, ...]]:
    if t < 1:
        return None
    bits = bin(t)[3:]
    out = []
    pos = 0
    for _ in range(count):
        z = 0
        while pos < len(bits) and bits[pos] == "0":
            z += 1
            pos += 1
        if pos + z + 1 > len(bits):
            return None
        out.append(int(bits[pos:pos + z + 1], 2) - 1)
        pos += z + 1
    if pos != len(bits):
        return None
    return tuple(out)


_COL, _ROW = 0, 1


class TwoTransitiveMatrix:
    """Deterministic lazy A x B sandwich matrix over W = A ∪ B ∪ S."""

    def __init__(self, base: FiniteSemigroup):
        e = identity_index(base)
        if e is None:
            raise SemigroupError("base must be a monoid")
        self.base = base
        self.identity = e
        self._memo: dict[tuple[int, int], Letter] = {}

    # letter <-> index bookkeeping
    def a_index(self, a: ALetter) -> int:
        return a.n * self.base.order + a.s

    def b_index(self, b: BLetter) -> int:
        return b.n * self.base.order + b.s

    def a_letter(self, idx: int) -> ALetter:
        n, s = divmod(idx, self.base.order)
        return ALetter(n, s)

    def b_letter(self, idx: int) -> BLetter:
        n, s = divmod(idx, self.base.order)
        return BLetter(n, s)

    def w_index(self, w: Letter) -> int:
        if isinstance(w, SElem):
            return w.s
        if isinstance(w, ALetter):
            return self.base.order + 2 * self.a_index(w)
        return self.base.order + 2 * self.b_index(w) + 1

    def w_letter(self, idx: int) -> Letter:
        if idx < self.base.order:
            return SElem(idx)
        q, r = divmod(idx - self.base.order, 2)
        return self.a_letter(q) if r == 0 else self.b_letter(q)

    def entry(self, a: ALetter, b: BLetter) -> Letter:
        # p[a(n,x), b(k,y)] depends on (n, k, x*y) only, so that
        # p[a▷s, b] = p[a, s◁b] and the rewriting system is confluent.
        z = self.base.table[a.s][b.s]
        key = (a.n, b.n, z)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        val: Optional[Letter] = None
        req = _decode(b.n - 1, 8) if b.n >= 1 else None
        if req is not None and req[0] == _COL and req[1:3] != req[3:5]:
            if (a.n, z) == req[1:3]:
                val = self.w_letter(req[5])
            elif (a.n, z) == req[3:5]:
                val = self.w_letter(req[6])
        if val is None:
            req = _decode(a.n - 1, 8) if a.n >= 1 else None
            if req is not None and req[0] == _ROW and req[1:3] != req[3:5]:
                if (b.n, z) == req[1:3]:
                    val = self.w_letter(req[5])
                elif (b.n, z) == req[3:5]:
                    val = self.w_letter(req[6])
        if val is None:
            val = SElem(self.identity)
        self._memo[key] = val
        return val

    def find_column(self, a1: ALetter, a2: ALetter, c1: Letter, c2: Letter,
                    skip: int = 0) -> BLetter:
        """Fresh column b with p[a1,b] = c1 and p[a2,b] = c2."""
        if a1 == a2:
            raise EqualIndices("find_column needs two distinct rows")
        t = _encode((_COL, a1.n, a1.s, a2.n, a2.s,
                     self.w_index(c1), self.w_index(c2), skip))
        b = BLetter(t + 1, self.identity)
        assert self.entry(a1, b) == c1 and self.entry(a2, b) == c2
        return b

    def find_row(self, b1: BLetter, b2: BLetter, c1: Letter, c2: Letter,
                 skip: int = 0) -> ALetter:
        """Fresh row a with p[a,b1] = c1 and p[a,b2] = c2."""
        if b1 == b2:
            raise EqualIndices("find_row needs two distinct columns")
        t = _encode((_ROW, b1.n, b1.s, b2.n, b2.s,
                     self.w_index(c1), self.w_index(c2), skip))
        a = ALetter(t + 1, self.identity)
        assert self.entry(a, b1) == c1 and self.entry(a, b2) == c2
        return a


# ---------------------------------------------------------------------------
# Actions and rewriting

def a_act(m: TwoTransitiveMatrix, a: ALetter, s: int) -> ALetter:
    return ALetter(a.n, m.base.table[a.s][s])


def b_act(m: TwoTransitiveMatrix, s: int, b: BLetter) -> BLetter:
    return BLetter(b.n, m.base.table[s][b.s])


@dataclass(frozen=True, eq=False)
class NormalForm:
    v: tuple[BLetter, ...]
    s: int
    u: tuple[ALetter, ...]
    mat: TwoTransitiveMatrix

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return (self.mat is other.mat and self.v == other.v
                and self.s == other.s and self.u == other.u)

    def __hash__(self):
        return hash((self.v, self.s, self.u, id(self.mat)))

    def is_identity(self) -> bool:
        return not self.v and not self.u and self.s == self.mat.identity

    def letters(self) -> list[Letter]:
        out: list[Letter] = list(self.v)
        if self.s != self.mat.identity:
            out.append(SElem(self.s))
        out.extend(self.u)
        return out

    def __repr__(self):
        return f"NormalForm({render(self)!r})"


def identity_nf(m: TwoTransitiveMatrix) -> NormalForm:
    return NormalForm((), m.identity, (), m)


def a_word_nf(m: TwoTransitiveMatrix, u: Sequence[ALetter]) -> NormalForm:
    return NormalForm((), m.identity, tuple(u), m)


def b_word_nf(m: TwoTransitiveMatrix, v: Sequence[BLetter]) -> NormalForm:
    return NormalForm(tuple(v), m.identity, (), m)


def letter_nf(m: TwoTransitiveMatrix, w: Letter) -> NormalForm:
    return reduce(m, [w])


def _redex(m: TwoTransitiveMatrix, left: Letter, right: Letter) -> Optional[Letter]:
    if isinstance(left, ALetter):
        if isinstance(right, SElem):
            return a_act(m, left, right.s)
        if isinstance(right, BLetter):
            return m.entry(left, right)
        return None
    if isinstance(left, SElem):
        if isinstance(right, BLetter):
            return b_act(m, left.s, right)
        if isinstance(right, SElem):
            return SElem(m.base.table[left.s][right.s])
    return None


def _assemble(m: TwoTransitiveMatrix, word: Sequence[Letter]) -> NormalForm:
    v: list[BLetter] = []
    u: list[ALetter] = []
    s = m.identity
    state = 0  # 0: in B*, 1: seen S, 2: in A*
    for w in word:
        if isinstance(w, BLetter) and state == 0:
            v.append(w)
        elif isinstance(w, SElem) and state == 0:
            s = w.s
            state = 1
        elif isinstance(w, ALetter):
            state = 2
            u.append(w)
        else:
            raise SemigroupError("irreducible word is not of the shape B* S? A*")
    return NormalForm(tuple(v), s, tuple(u), m)


def reduce(m: TwoTransitiveMatrix, word: Sequence[Letter]) -> NormalForm:
    """Stack reduction, left to right; every rule shortens the word."""
    stack: list[Letter] = []
    for x in word:
        while stack:
            combined = _redex(m, stack[-1], x)
            if combined is None:
                break
            stack.pop()
            x = combined
        stack.append(x)
    return _assemble(m, stack)


def reduce_rightmost(m: TwoTransitiveMatrix, word: Sequence[Letter]) -> NormalForm:
    """Contract the rightmost redex until none remains; oracle for confluence."""
    w = list(word)
    while True:
        for i in range(len(w) - 2, -1, -1):
            combined = _redex(m, w[i], w[i + 1])
            if combined is not None:
                w[i:i + 2] = [combined]
                break
        else:
            return _assemble(m, w)


def nf_mul(x: NormalForm, y: NormalForm) -> NormalForm:
    if x.mat is not y.mat:
        raise MatrixMismatch("operands live over different matrices")
    return reduce(x.mat, x.letters() + y.letters())


def nf_eq(x: NormalForm, y: NormalForm) -> bool:
    return x == y


def render(nf: NormalForm) -> str:
    toks = [f"b({b.n},s{b.s})" for b in nf.v]
    if nf.s != nf.mat.identity or (not nf.v and not nf.u):
        toks.append("1" if nf.s == nf.mat.identity else f"s{nf.s}")
    toks.extend(f"a({a.n},s{a.s})" for a in nf.u)
    return " ".join(toks)


# ---------------------------------------------------------------------------
# Claims (constructive certificates)

def _other_a(m: TwoTransitiveMatrix, a: ALetter) -> ALetter:
    cand = ALetter(0, m.identity)
    return cand if cand != a else ALetter(1, m.identity)


def _other_b(m: TwoTransitiveMatrix, b: BLetter) -> BLetter:
    cand = BLetter(0, m.identity)
    return cand if cand != b else BLetter(1, m.identity)


def claim1(m: TwoTransitiveMatrix, u: Sequence[ALetter]) -> NormalForm:
    """A diagonal factor λ with u·λ = 1; a single column letter for nonempty u."""
    if not u:
        return identity_nf(m)
    one = SElem(m.identity)
    val: Letter = one
    b = None
    for a in u:
        b = m.find_column(a, _other_a(m, a), val, val)
        val = b
    lam = b_word_nf(m, (b,))
    assert reduce(m, list(u) + [b]).is_identity()
    return lam


def claim2(m: TwoTransitiveMatrix, u: Sequence[ALetter],
           x: Sequence[ALetter]) -> tuple[NormalForm, str, tuple[ALetter, ...]]:
    """λ and a nonempty A-word p with (u,x)·λ = (1,p) (side "left") or (p,1)."""
    u, x = tuple(u), tuple(x)
    if u == x:
        raise EqualElements("claim2 needs distinct words")
    lam, side, p = _claim2_rec(m, u, x)
    left = reduce(m, list(u) + lam.letters())
    right = reduce(m, list(x) + lam.letters())
    if side == "left":
        assert left.is_identity() and right == a_word_nf(m, p)
    else:
        assert right.is_identity() and left == a_word_nf(m, p)
    return lam, side, p


def _claim2_rec(m, u, x):
    if not u:
        return identity_nf(m), "left", x
    if not x:
        return identity_nf(m), "right", u
    one = SElem(m.identity)
    if u[-1] == x[-1]:
        lam1 = claim1(m, (u[-1],))
        lam2, side, p = _claim2_rec(m, u[:-1], x[:-1])
        return nf_mul(lam1, lam2), side, p
    if len(u) >= len(x):
        # keep u intact, strip the last letter of x
        b = m.find_column(u[-1], x[-1], u[-1], one)
        lam, side, p = _claim2_rec(m, u, x[:-1])
        return nf_mul(b_word_nf(m, (b,)), lam), side, p
    b = m.find_column(u[-1], x[-1], one, x[-1])
    lam, side, p = _claim2_rec(m, u[:-1], x)
    return nf_mul(b_word_nf(m, (b,)), lam), side, p


def claim3(m: TwoTransitiveMatrix, u: Sequence[ALetter], x: Sequence[ALetter],
           w1: Letter, w2: Letter) -> tuple[NormalForm, NormalForm]:
    """Diagonal factors with μ·(u,x)·λ = (w1,w2), for distinct A-words u, x."""
    lam2, side, p = claim2(m, u, x)
    b0 = BLetter(0, m.identity)
    val: Letter = b0
    bn = b0
    for i, a in enumerate(p):
        skip = 0
        while True:
            bn = m.find_column(a, _other_a(m, a), val, val, skip=skip)
            if i < len(p) - 1 or bn != b0:
                break
            skip += 1
        val = bn
    if side == "left":
        a_star = m.find_row(bn, b0, w1, w2)
    else:
        a_star = m.find_row(bn, b0, w2, w1)
    mu = a_word_nf(m, (a_star,))
    lam = nf_mul(lam2, b_word_nf(m, (bn,)))
    assert nf_mul(nf_mul(mu, a_word_nf(m, u)), lam) == letter_nf(m, w1)
    assert nf_mul(nf_mul(mu, a_word_nf(m, x)), lam) == letter_nf(m, w2)
    return mu, lam


def claim4(m: TwoTransitiveMatrix, v: Sequence[BLetter]) -> NormalForm:
    """A diagonal factor μ with μ·v = 1; a single row letter for nonempty v."""
    if not v:
        return identity_nf(m)
    one = SElem(m.identity)
    val: Letter = one
    a = None
    for b in reversed(v):
        a = m.find_row(b, _other_b(m, b), val, val)
        val = a
    mu = a_word_nf(m, (a,))
    assert reduce(m, [a] + list(v)).is_identity()
    return mu


def claim5(m: TwoTransitiveMatrix, v: Sequence[BLetter],
           y: Sequence[BLetter]) -> tuple[NormalForm, str, tuple[BLetter, ...]]:
    """μ and a nonempty B-word q with μ·(v,y) = (1,q) (side "left") or (q,1)."""
    v, y = tuple(v), tuple(y)
    if v == y:
        raise EqualElements("claim5 needs distinct words")
    mu, side, q = _claim5_rec(m, v, y)
    left = nf_mul(mu, b_word_nf(m, v))
    right = nf_mul(mu, b_word_nf(m, y))
    if side == "left":
        assert left.is_identity() and right == b_word_nf(m, q)
    else:
        assert right.is_identity() and left == b_word_nf(m, q)
    return mu, side, q


def _claim5_rec(m, v, y):
    if not v:
        return identity_nf(m), "left", y
    if not y:
        return identity_nf(m), "right", v
    one = SElem(m.identity)
    if v[0] == y[0]:
        mu1 = claim4(m, (v[0],))
        mu2, side, q = _claim5_rec(m, v[1:], y[1:])
        return nf_mul(mu2, mu1), side, q
    if len(v) >= len(y):
        a = m.find_row(v[0], y[0], v[0], one)
        mu, side, q = _claim5_rec(m, v, y[1:])
        return nf_mul(mu, a_word_nf(m, (a,))), side, q
    a = m.find_row(v[0], y[0], one, y[0])
    mu, side, q = _claim5_rec(m, v[1:], y)
    return nf_mul(mu, a_word_nf(m, (a,))), side, q


def claim6(m: TwoTransitiveMatrix, v: Sequence[BLetter], y: Sequence[BLetter],
           w1: Letter, w2: Letter) -> tuple[NormalForm, NormalForm]:
    """Diagonal factors with μ·(v,y)·λ = (w1,w2), for distinct B-words v, y."""
    mu5, side, q = claim5(m, v, y)
    a0 = ALetter(0, m.identity)
    a_star = _back_chain(m, q, a0)
    if side == "left":
        b = m.find_column(a_star, a0, w1, w2)
    else:
        b = m.find_column(a_star, a0, w2, w1)
    mu = nf_mul(a_word_nf(m, (a_star,)), mu5)
    lam = b_word_nf(m, (b,))
    assert nf_mul(nf_mul(mu, b_word_nf(m, v)), lam) == letter_nf(m, w1)
    assert nf_mul(nf_mul(mu, b_word_nf(m, y)), lam) == letter_nf(m, w2)
    return mu, lam


def _back_chain(m: TwoTransitiveMatrix, q: Sequence[BLetter], a0: ALetter) -> ALetter:
    """An A-letter a* ≠ a0 with a*·q = a0, chained through fresh rows."""
    nxt: Letter = a0
    letters = list(q)
    for i, b in enumerate(reversed(letters)):
        skip = 0
        while True:
            cur = m.find_row(b, _other_b(m, b), nxt, nxt, skip=skip)
            if i < len(letters) - 1 or cur != a0:
                break
            skip += 1
        nxt = cur
    assert reduce(m, [nxt] + letters) == letter_nf(m, a0)
    return nxt


# ---------------------------------------------------------------------------
# Span certificates

GEN = "gen"


@dataclass(frozen=True)
class PairExpr:
    """A product of diagonal factors and the generator pair, with evaluation."""
    factors: tuple  # entries: ("diag", NormalForm) or ("gen",)
    gen: tuple[NormalForm, NormalForm]
    case: str

    def evaluate(self) -> tuple[NormalForm, NormalForm]:
        g, h = self.gen
        left = right = identity_nf(g.mat)
        for f in self.factors:
            if f[0] == GEN:
                left, right = nf_mul(left, g), nf_mul(right, h)
            else:
                left, right = nf_mul(left, f[1]), nf_mul(right, f[1])
        return left, right


def _diag(nf: NormalForm):
    return ("diag", nf)


def span_witness(m: TwoTransitiveMatrix, g: NormalForm, h: NormalForm,
                 w1: Letter, w2: Letter) -> PairExpr:
    """Express (w1,w2) as a product of (g,h) and diagonal pairs; verified."""
    if g == h:
        raise EqualElements("span_witness needs distinct elements")
    v, s, u = g.v, g.s, g.u
    y, t, x = h.v, h.s, h.u
    e = m.identity
    a0 = ALetter(0, e)
    if u == x and v == y:
        lam1 = claim1(m, u)
        mu4 = claim4(m, v)
        a1, a2 = a_act(m, a0, s), a_act(m, a0, t)
        mu3, lam3 = claim3(m, (a1,), (a2,), w1, w2)
        factors = (_diag(mu3), _diag(a_word_nf(m, (a0,))), _diag(mu4),
                   (GEN,), _diag(lam1), _diag(lam3))
        case = "equal-words"
    elif u != x and v == y:
        mu4 = claim4(m, v)
        lam2, side, p = claim2(m, u, x)
        a1, a2 = a_act(m, a0, s), a_act(m, a0, t)
        if side == "right":
            word1, word2 = (a1,) + p, (a2,)
        else:
            word1, word2 = (a1,), (a2,) + p
        mu3, lam3 = claim3(m, word1, word2, w1, w2)
        factors = (_diag(mu3), _diag(a_word_nf(m, (a0,))), _diag(mu4),
                   (GEN,), _diag(lam2), _diag(lam3))
        case = "a-words-differ"
    elif u == x and v != y:
        lam1 = claim1(m, u)
        b0 = BLetter(0, e)
        b1, b2 = b_act(m, s, b0), b_act(m, t, b0)
        mu6, lam6 = claim6(m, v + (b1,), y + (b2,), w1, w2)
        factors = (_diag(mu6), (GEN,), _diag(lam1),
                   _diag(b_word_nf(m, (b0,))), _diag(lam6))
        case = "b-words-differ"
    else:
        lam2, side_a, p = claim2(m, u, x)
        mu5, side_b, q = claim5(m, v, y)
        p1, p2 = ((), p) if side_a == "left" else (p, ())
        a1 = _back_chain(m, q, a0)
        if side_b == "left":
            word1 = (a_act(m, a1, s),) + p1
            word2 = (a_act(m, a0, t),) + p2
        else:
            word1 = (a_act(m, a0, s),) + p1
            word2 = (a_act(m, a1, t),) + p2
        mu3, lam3 = claim3(m, word1, word2, w1, w2)
        factors = (_diag(mu3), _diag(a_word_nf(m, (a1,))), _diag(mu5),
                   (GEN,), _diag(lam2), _diag(lam3))
        case = "both-differ"
    expr = PairExpr(factors, (g, h), case)
    got = expr.evaluate()
    assert got == (letter_nf(m, w1), letter_nf(m, w2)), case
    return expr


def express_pair(m: TwoTransitiveMatrix, g: NormalForm, h: NormalForm,
                 p: NormalForm, q: NormalForm) -> PairExpr:
    """Express any (p,q) over the diagonal subsemigroup generated by Δ and (g,h)."""
    if g == h:
        raise EqualElements("express_pair needs distinct generators")
    if p == g and q == h:
        return PairExpr(((GEN,),), (g, h), "generator")
    one = SElem(m.identity)
    factors: list = []
    for w in p.letters():
        factors.extend(span_witness(m, g, h, w, one).factors)
    for w in q.letters():
        factors.extend(span_witness(m, g, h, one, w).factors)
    expr = PairExpr(tuple(factors), (g, h), "express")
    assert expr.evaluate() == (p, q)
    return expr


# ---------------------------------------------------------------------------
# Regularity (sandwich inverses)

def inverse_of(m: TwoTransitiveMatrix, t: NormalForm,
               inv_oracle: Callable[[int], Optional[int]]) -> NormalForm:
    """An inverse y·s'·x of v·s·u, given a sandwich-inverse oracle on the base."""
    s_inv = inv_oracle(t.s)
    tab = m.base.table
    if s_inv is None or tab[tab[t.s][s_inv]][t.s] != t.s \
            or tab[tab[s_inv][t.s]][s_inv] != s_inv:
        raise NotRegularBase(f"no sandwich inverse for base element {t.s}")
    one = SElem(m.identity)
    x = tuple(m.find_row(b, _other_b(m, b), one, one) for b in reversed(t.v))
    y = tuple(m.find_column(a, _other_a(m, a), one, one) for a in reversed(t.u))
    inv = NormalForm(y, s_inv, x, m)
    assert nf_mul(nf_mul(t, inv), t) == t
    assert nf_mul(nf_mul(inv, t), inv) == inv
    return inv
