"""Command-line front end.  All output is JSON; reports are deterministic."""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Optional

from . import byleen, finite, infinite, relations


def _emit(obj, pretty: bool) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2 if pretty else None))


def _report(subject, checks, timing: Optional[float]) -> dict:
    rep = {"subject": subject, "checks": checks}
    if timing is not None:
        rep["timing"] = timing
    return rep


def _load_table(path: str) -> finite.FiniteSemigroup:
    with open(path, "r", encoding="utf-8") as fh:
        return finite.from_json(fh.read())


# ---------------------------------------------------------------------------
# sg check

def cmd_check(args) -> int:
    try:
        s = _load_table(args.path)
    except (OSError, json.JSONDecodeError, finite.SemigroupError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    checks = []

    def add(name, ok, witness=None):
        entry = {"name": name, "pass": bool(ok)}
        if not ok or witness is not None:
            entry["witness"] = witness
        checks.append(entry)

    grp = finite.is_group(s)
    add("group", grp, None if grp else {"identity": finite.identity_index(s)})
    simple = finite.is_simple(s)
    ideal = finite.proper_ideal(s)
    add("simple", simple, None if simple else {"proper_ideal": sorted(ideal)})
    cs = finite.is_completely_simple(s)
    add("completely_simple", cs, None if cs else {"proper_ideal": sorted(ideal) if ideal else None})
    inv = finite.is_inverse(s)
    inv_witness = None
    if not inv:
        bad = next(x for x in range(s.order) if len(finite.inverses_of(s, x)) != 1)
        inv_witness = {"element": bad, "inverses": finite.inverses_of(s, bad)}
    add("inverse", inv, inv_witness)

    dsc = relations.is_dsc_fast(s)
    dsc_witness = None
    if not dsc or args.witness:
        if not dsc:
            ps, failing, strategy = relations.witness_non_dsc(s)
            dsc_witness = relations.witness_json(ps, failing, strategy)
    add("dsc", dsc, dsc_witness)

    if args.brute:
        if s.order > 4:
            checks.append({"name": "dsc_brute", "pass": True, "skipped": True,
                           "witness": {"reason": "order exceeds subset-scan bound"}})
        else:
            ok, witness = relations.brute_force_is_dsc(s)
            add("dsc_brute", ok,
                None if ok else {"pairs": witness.sorted_pairs()})

    timing = round(time.perf_counter() - t0, 6) if args.timing else None
    _emit(_report({"path": args.path, "order": s.order}, checks, timing), args.pretty)
    if args.strict and any(not c["pass"] for c in checks):
        return 1
    return 0


# ---------------------------------------------------------------------------
# sg enumerate

def cmd_enumerate(args) -> int:
    if args.n > 4:
        print(json.dumps({"error": "enumeration capped at order 4"}), file=sys.stderr)
        return 2
    if args.oracle:
        total = groups = 0
        strategies = {"ideal": 0, "rees-R": 0, "rees-L": 0}
        for s in finite.enumerate_semigroups(args.n):
            total += 1
            fast = relations.is_dsc_fast(s)
            if fast:
                groups += 1
                ok, _ = relations.brute_force_is_dsc(s)
                if not ok:
                    _emit({"disagreement": {"table": [list(r) for r in s.table]}},
                          args.pretty)
                    return 1
            else:
                if args.n <= 3:
                    ok, _ = relations.brute_force_is_dsc(s)
                    if ok:
                        _emit({"disagreement": {"table": [list(r) for r in s.table]}},
                              args.pretty)
                        return 1
                _, _, strategy = relations.witness_non_dsc(s)
                strategies[strategy] += 1
        _emit({"order": args.n, "tables": total, "groups": groups,
               "oracle": "pass", "witness_strategies": strategies}, args.pretty)
        return 0
    if args.count:
        labeled = 0
        canon = set()
        for s in finite.enumerate_semigroups(args.n):
            labeled += 1
            canon.add(finite.canonical_form(s))
        _emit({"order": args.n, "labeled": labeled,
               "isomorphism_classes": len(canon)}, args.pretty)
        return 0
    for s in finite.enumerate_semigroups(args.n):
        _emit({"order": args.n, "table": [list(r) for r in s.table]}, args.pretty)
    return 0


# ---------------------------------------------------------------------------
# sg witness

def cmd_witness(args) -> int:
    try:
        s = _load_table(args.path)
    except (OSError, json.JSONDecodeError, finite.SemigroupError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    if finite.is_group(s):
        _emit({"subject": {"path": args.path, "order": s.order},
               "error": "subject is a group; it is DSC and has no witness"},
              args.pretty)
        return 1
    ps, failing, strategy = relations.witness_non_dsc(s)
    _emit({"subject": {"path": args.path, "order": s.order},
           "witness": relations.witness_json(ps, failing, strategy)}, args.pretty)
    return 0


# ---------------------------------------------------------------------------
# sg byleen

_TOKEN = re.compile(r"^(?:([ab])\((\d+),s(\d+)\)|s(\d+)|1)$")


def _base_monoid(name: str) -> finite.FiniteSemigroup:
    if name == "trivial":
        return finite.trivial_monoid()
    return finite.cyclic_group(2)


def _parse_word(m: byleen.TwoTransitiveMatrix, text: str) -> list:
    word = []
    for tok in text.split():
        match = _TOKEN.match(tok)
        if not match:
            raise ValueError(f"bad token {tok!r}")
        kind, n, s, selem = match.groups()
        if kind == "a":
            word.append(byleen.ALetter(int(n), int(s)))
        elif kind == "b":
            word.append(byleen.BLetter(int(n), int(s)))
        elif selem is not None:
            word.append(byleen.SElem(int(selem)))
        else:
            word.append(byleen.SElem(m.identity))
        last = word[-1]
        if last.s >= m.base.order:
            raise ValueError(f"base element out of range in {tok!r}")
    return word


def _parse_letter(m: byleen.TwoTransitiveMatrix, text: str) -> byleen.Letter:
    word = _parse_word(m, text)
    if len(word) != 1:
        raise ValueError(f"expected a single letter, got {text!r}")
    return word[0]


def _sandwich_inverse_oracle(base: finite.FiniteSemigroup):
    def oracle(s: int) -> Optional[int]:
        for t in range(base.order):
            if base.table[base.table[s][t]][s] == s and \
                    base.table[base.table[t][s]][t] == t:
                return t
        return None
    return oracle


def cmd_byleen(args) -> int:
    m = byleen.TwoTransitiveMatrix(_base_monoid(args.base))
    try:
        if args.action == "eval":
            nf = byleen.reduce(m, _parse_word(m, args.args[0]))
            _emit({"normal_form": byleen.render(nf)}, args.pretty)
        elif args.action == "mul":
            x = byleen.reduce(m, _parse_word(m, args.args[0]))
            y = byleen.reduce(m, _parse_word(m, args.args[1]))
            _emit({"normal_form": byleen.render(byleen.nf_mul(x, y))}, args.pretty)
        elif args.action == "span":
            g = byleen.reduce(m, _parse_word(m, args.args[0]))
            h = byleen.reduce(m, _parse_word(m, args.args[1]))
            w1 = _parse_letter(m, args.args[2])
            w2 = _parse_letter(m, args.args[3])
            expr = byleen.span_witness(m, g, h, w1, w2)
            factors = []
            for f in expr.factors:
                if f[0] == byleen.GEN:
                    factors.append({"gen": [byleen.render(g), byleen.render(h)]})
                else:
                    factors.append({"diag": byleen.render(f[1])})
            _emit({"case": expr.case, "factors": factors, "verified": True},
                  args.pretty)
        else:  # inverse
            t = byleen.reduce(m, _parse_word(m, args.args[0]))
            inv = byleen.inverse_of(m, t, _sandwich_inverse_oracle(m.base))
            _emit({"element": byleen.render(t), "inverse": byleen.render(inv),
                   "verified": True}, args.pretty)
    except (ValueError, IndexError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    except (byleen.EqualElements, byleen.NotRegularBase) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# sg models

def _bicyclic_checks() -> list:
    bound = 6
    elems = [infinite.BicyclicElement(m, n)
             for m in range(bound + 1) for n in range(bound + 1)]
    leq = infinite.bicyclic_leq
    checks = [
        ("reflexive", all(leq(x, x) for x in elems)),
        ("antisymmetric", all(not (leq(x, y) and leq(y, x)) or x == y
                              for x in elems for y in elems)),
        ("transitive", all(not (leq(x, y) and leq(y, z)) or leq(x, z)
                           for x in elems for y in elems for z in elems)),
        ("compatible", all(not (leq(x, y) and leq(xp, yp))
                           or leq(infinite.bicyclic_mul(x, xp),
                                  infinite.bicyclic_mul(y, yp))
                           for x in elems for y in elems
                           for xp in elems for yp in elems)),
        ("closed_form_matches_search",
         all(leq(x, y) == infinite.bicyclic_leq_search(x, y, 2 * bound + 2)
             for x in elems for y in elems)),
    ]
    one_one = infinite.BicyclicElement(1, 1)
    zero = infinite.BicyclicElement(0, 0)
    checks.append(("order_asymmetry_witness", leq(one_one, zero) and not leq(zero, one_one)))
    return [{"name": n, "pass": bool(ok)} for (n, ok) in checks]


def _bruck_reilly_checks() -> list:
    base = finite.cyclic_group(2)
    checks = []
    for tag, mapping in (("theta_identity", (0, 1)), ("theta_constant", (0, 0))):
        theta = finite.EndomorphismTable(base, mapping)
        bound = 5
        elems = [infinite.BRElement(m, s, n, theta)
                 for m in range(bound + 1) for s in range(2) for n in range(bound + 1)]
        hom = all(infinite.br_project(infinite.br_mul(x, y))
                  == infinite.bicyclic_mul(infinite.br_project(x), infinite.br_project(y))
                  for x in elems for y in elems)
        checks.append({"name": f"projection_homomorphism_{tag}", "pass": bool(hom)})
        hi = infinite.BRElement(1, 1, 1, theta)
        lo = infinite.BRElement(0, 0, 0, theta)
        checks.append({"name": f"pulled_back_order_asymmetry_{tag}",
                       "pass": bool(infinite.br_order_member(hi, lo)
                                    and not infinite.br_order_member(lo, hi))})
    return checks


def _baer_levi_checks() -> list:
    w = infinite.baer_levi_witness()
    return [
        {"name": "fg_member", "pass": w["fg"],
         "witness": {"intersection": w["fg_intersection"]}},
        {"name": "gh_member", "pass": w["gh"],
         "witness": {"intersection": w["gh_intersection"][:8]}},
        {"name": "fh_non_member", "pass": not w["fh"],
         "witness": {"intersection": w["fh_intersection"]}},
        {"name": "membership_pattern", "pass": (w["fg"], w["gh"], w["fh"]) == (True, True, False)},
    ]


def _z_checks() -> list:
    return [
        {"name": "member_2_5", "pass": infinite.zdiag_member(2, 5)},
        {"name": "non_member_5_2", "pass": not infinite.zdiag_member(5, 2)},
        {"name": "diagonal", "pass": all(infinite.zdiag_member(k, k) for k in range(-5, 6))},
    ]


def cmd_models(args) -> int:
    suites = {
        "bicyclic": _bicyclic_checks,
        "bruck-reilly": _bruck_reilly_checks,
        "baer-levi": _baer_levi_checks,
        "z": _z_checks,
    }
    checks = suites[args.name]()
    _emit({"model": args.name, "checks": checks}, args.pretty)
    return 0 if all(c["pass"] for c in checks) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a Cayley table and run DSC checks")
    p.add_argument("path")
    p.add_argument("--brute", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="enumerate small semigroups")
    p.add_argument("n", type=int)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--count", action="store_true")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("witness", help="emit a non-DSC witness for a table")
    p.add_argument("path")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("byleen", help="normal forms and certificates")
    p.add_argument("action", choices=["eval", "mul", "span", "inverse"])
    p.add_argument("args", nargs="*")
    p.add_argument("--base", choices=["c2", "trivial"], default="c2")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_byleen)

    p = sub.add_parser("models", help="run an infinite-model witness suite")
    p.add_argument("name", choices=["bicyclic", "bruck-reilly", "baer-levi", "z"])
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_models)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
