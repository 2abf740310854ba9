"""Command-line front end.

Group specifications name the group G (for example ``GL2``, ``Sp4``, ``T1``,
``SO5``); the enumerations themselves run on the dual datum with the dual
twist, which is where parameters live.  Trailing ``key=value`` tokens set
q and options, matching invocations like::

    finweil tori GL2 q=3
    finweil parameters SL2 q=3 kind=wd
    finweil verify GL3 q=2 --json
    finweil oracle conj GL2 q=3

Output is an aligned table by default, or a schema-stable JSON document
with ``--json``; identical inputs produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import intmat, oracle
from .errors import FinweilError
from .finite_torus import fixed_point_group, norm_map
from .root_datum import (BasedRootDatum, GaloisTwist, dualize, dual_twist,
                         is_isomorphic, make_twist, parse_datum, standard_datum,
                         trivial_twist, validate)
from .weil_params import (enumerate_rigid, inertial_classes, rigid_count_check,
                          torus_langlands, weil_classes)
from .weil_deligne import enumerate_special_wd, label_str
from .weyl import generate, twisted_classes

_GROUP_RE = re.compile(r"^(GL|SL|PGL|Sp|SO|T)(\d+)$")

_CONSTRUCTOR_SWEEP = (
    ("GL", 1), ("GL", 2), ("GL", 3), ("SL", 2), ("SL", 3), ("PGL", 2),
    ("PGL", 3), ("Sp", 4), ("SO", 3), ("SO", 5), ("torus", 1), ("torus", 2),
)


def _parse_group_token(token: str):
    m = _GROUP_RE.match(token)
    if not m:
        raise FinweilError(f"cannot parse group spec {token!r}")
    family, n = m.group(1), int(m.group(2))
    if family == "T":
        return "torus", n
    return family, n


def _parse_twist_text(text: str, datum: BasedRootDatum) -> GaloisTwist:
    text = text.strip()
    if text in ("trivial", "1", ""):
        return trivial_twist(datum)
    if text == "-1":
        return make_twist(tuple(tuple(-1 if i == j else 0 for j in range(datum.rank))
                                for i in range(datum.rank)), datum)
    if re.fullmatch(r"[0-9]+(,[0-9]+)*", text):
        images = [int(x) for x in text.split(",")]
        if sorted(images) != list(range(1, datum.rank + 1)):
            raise FinweilError(f"twist permutation {text!r} is not a permutation "
                               f"of 1..{datum.rank}")
        m = tuple(tuple(1 if images[j] - 1 == i else 0 for j in range(datum.rank))
                  for i in range(datum.rank))
        return make_twist(m, datum)
    # otherwise: a file with rank*rank integers
    with open(text, "r", encoding="utf-8") as fh:
        entries = [int(x) for x in fh.read().split()]
    r = datum.rank
    if len(entries) != r * r:
        raise FinweilError("twist file must hold rank*rank integers")
    m = tuple(tuple(entries[i * r + j] for j in range(r)) for i in range(r))
    return make_twist(m, datum)


def _load_spec(args) -> tuple[str, BasedRootDatum, GaloisTwist, int, dict]:
    keyvals = {}
    group_token = None
    for token in args.spec:
        if "=" in token:
            k, v = token.split("=", 1)
            keyvals[k] = v
        elif group_token is None:
            group_token = token
        else:
            raise FinweilError(f"unexpected token {token!r}")
    if args.datum_file:
        with open(args.datum_file, "r", encoding="utf-8") as fh:
            datum, twist = parse_datum(fh.read())
        name = args.datum_file
        if twist is None:
            twist = trivial_twist(datum)
    else:
        if group_token is None:
            raise FinweilError("missing group spec (e.g. GL2) or --datum-file")
        family, n = _parse_group_token(group_token)
        datum = standard_datum(family, n)
        name = group_token
        twist = trivial_twist(datum)
    twist_text = keyvals.pop("twist", None) or args.twist
    if twist_text:
        twist = _parse_twist_text(twist_text, datum)
    if "q" not in keyvals:
        raise FinweilError("missing q=<prime power>")
    q = int(keyvals.pop("q"))
    return name, datum, twist, q, keyvals


def _frac(x: Fraction) -> str:
    return str(x)


def _vec_str(vec) -> str:
    return "(" + ",".join(_frac(x) for x in vec) + ")"


def _emit(payload: dict, as_json: bool, table_rows, headers) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    widths = [len(h) for h in headers]
    rows = [[str(c) for c in row] for row in table_rows]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    fmt = "  ".join("{:<%d}" % w for w in widths)
    print(fmt.format(*headers))
    print("  ".join("-" * w for w in widths))
    for row in rows:
        print(fmt.format(*row))


def cmd_tori(args) -> int:
    name, datum, twist, q, extra = _load_spec(args)
    if extra:
        raise FinweilError(f"unknown options {sorted(extra)}")
    ddual, tdual = dualize(datum), dual_twist(twist, datum)
    W = generate(ddual, args.weyl_bound)
    rows = []
    for cls in twisted_classes(W, tdual):
        group = fixed_point_group(cls.rep, q, args.level_bound)
        rows.append({
            "rep_word": W.word_str(cls.rep.weyl_part),
            "class_size": cls.size,
            "order": group.order,
            "divisors": list(group.divisors),
        })
    payload = {"command": "tori", "group": name, "q": q, "classes": rows}
    _emit(payload, args.json,
          [[r["rep_word"], r["class_size"], r["order"],
            "x".join(map(str, r["divisors"])) or "1"] for r in rows],
          ["frobenius", "class size", "torus order", "divisors"])
    return 0


def cmd_parameters(args) -> int:
    name, datum, twist, q, extra = _load_spec(args)
    kind = extra.pop("kind", "rigid")
    if extra:
        raise FinweilError(f"unknown options {sorted(extra)}")
    ddual, tdual = dualize(datum), dual_twist(twist, datum)
    W = generate(ddual, args.weyl_bound)
    if kind == "rigid":
        classes = enumerate_rigid(ddual, tdual, q, args.weyl_bound, args.level_bound)
        rows = [{
            "inertial_vector": _vec_str(r.point),
            "level": r.level,
            "frob_word": W.word_str(r.frob.weyl_part),
            "class_size": r.pair_class_size,
            "packet_bound": r.packet_bound,
        } for r in classes]
        payload = {"command": "parameters", "kind": kind, "group": name, "q": q,
                   "count": len(rows), "classes": rows}
        _emit(payload, args.json,
              [[r["inertial_vector"], r["level"], r["frob_word"], r["class_size"],
                r["packet_bound"]] for r in rows],
              ["inertial", "level", "frobenius", "class size", "packet bound"])
    elif kind == "weil":
        classes = weil_classes(ddual, tdual, q, args.weyl_bound, args.level_bound)
        rows = [{
            "inertial_vector": _vec_str(c.inertial.vector),
            "level": c.inertial.level,
            "frob_word": W.word_str(c.frob_rep.weyl_part),
            "rigid_members": c.size,
        } for c in classes]
        payload = {"command": "parameters", "kind": kind, "group": name, "q": q,
                   "count": len(rows), "classes": rows}
        _emit(payload, args.json,
              [[r["inertial_vector"], r["level"], r["frob_word"], r["rigid_members"]]
               for r in rows],
              ["inertial", "level", "frobenius", "rigid members"])
    elif kind == "inertial":
        classes = inertial_classes(ddual, tdual, q, args.weyl_bound, args.level_bound)
        rows = [{
            "inertial_vector": _vec_str(c.rep.vector),
            "level": c.rep.level,
            "weil_count": c.weil_count,
            "rigid_count": c.rigid_count,
        } for c in classes]
        payload = {"command": "parameters", "kind": kind, "group": name, "q": q,
                   "count": len(rows), "classes": rows}
        _emit(payload, args.json,
              [[r["inertial_vector"], r["level"], r["weil_count"], r["rigid_count"]]
               for r in rows],
              ["inertial", "level", "weil classes", "rigid classes"])
    elif kind == "wd":
        table = enumerate_special_wd(ddual, tdual, q, args.weyl_bound, args.level_bound)
        rows = [{
            "inertial_vector": _vec_str(c.inertial_vector),
            "level": c.level,
            "pseudo_levi_type": c.pseudo_levi_type,
            "orbit_partitions": label_str(c.orbit),
            "special": c.special,
            "A_order": c.a_order,
            "Abar_order": c.abar_order,
            "A_phi_order": c.a_phi_order,
            "A_phi_irr": c.a_phi_irr,
            "frob_coset_id": c.frob_coset_id,
        } for c in table.classes]
        payload = {"command": "parameters", "kind": kind, "group": name, "q": q,
                   "count": len(rows), "total_irr": table.total_irr, "classes": rows}
        _emit(payload, args.json,
              [[r["inertial_vector"], r["pseudo_levi_type"], r["orbit_partitions"],
                r["A_order"], r["Abar_order"], r["A_phi_order"], r["A_phi_irr"],
                r["frob_coset_id"]] for r in rows],
              ["inertial", "pseudo-Levi", "orbit", "|A|", "|Abar|", "|A_phi|",
               "Irr(A_phi)", "frob coset"])
        if not args.json:
            print(f"total sum of |Irr(A_phi)| = {table.total_irr}")
    else:
        raise FinweilError(f"unknown kind {kind!r}; expected rigid|weil|inertial|wd")
    return 0


def cmd_verify(args) -> int:
    name, datum, twist, q, extra = _load_spec(args)
    if extra:
        raise FinweilError(f"unknown options {sorted(extra)}")
    checks = []

    def record(check: str, ok: bool, detail: str) -> None:
        checks.append({"check": check, "ok": bool(ok), "detail": detail})

    validate(datum)
    ddual, tdual = dualize(datum), dual_twist(twist, datum)
    validate(ddual)
    record("datum axioms", True, "datum and dual datum validate")

    ok = all(is_isomorphic(dualize(dualize(standard_datum(f, n))), standard_datum(f, n))
             for f, n in _CONSTRUCTOR_SWEEP)
    record("dualize involution", ok, f"{len(_CONSTRUCTOR_SWEEP)} constructor data")

    W = generate(ddual, args.weyl_bound)
    mismatches = []
    for cls in twisted_classes(W, tdual):
        group = fixed_point_group(cls.rep, q, args.level_bound)
        counted = oracle.torus_point_count(cls.rep, q)
        if counted != group.order:
            mismatches.append((W.word_str(cls.rep.weyl_part), group.order, counted))
    record("torus orders vs field enumeration", not mismatches,
           "all twisted classes agree" if not mismatches else str(mismatches))

    rows = rigid_count_check(ddual, tdual, q)
    record("rigid classes vs character orbits", all(a == b for a, b in rows),
           f"per-class counts {list(rows)}")

    rigid = enumerate_rigid(ddual, tdual, q, args.weyl_bound, args.level_bound)
    from .finite_torus import normalize_vector
    compat_ok = True
    for r in rigid:
        vec = r.point
        for m in range(1, r.frob.order + 1):
            lhs = normalize_vector(intmat.matvec(intmat.matrix_power(r.frob.cochar, m), vec))
            rhs = normalize_vector(intmat.scale_vec(q ** m, vec))
            if lhs != rhs:
                compat_ok = False
    record("frobenius compatibility", compat_ok,
           f"{len(rigid)} rigid classes, all powers checked")

    norm_ok = True
    details = []
    for (nq, nm, nd) in ((3, 1, 2), (2, 1, 3), (2, 2, 2)):
        abstract = norm_map(nq, nm, nd)
        concrete = oracle.norm_surjectivity_check(nq, nm, nd)
        good = concrete.surjective and concrete.kernel_order == abstract.kernel_order
        norm_ok = norm_ok and good
        details.append(f"q={nq},m={nm},d={nd}: kernel {concrete.kernel_order}")
    record("norm maps", norm_ok, "; ".join(details))

    family = _family_of(name)
    if family in ("GL", "SL") and group_is_small(family, datum, q):
        table = enumerate_special_wd(ddual, tdual, q, args.weyl_bound, args.level_bound)
        n = datum.rank if family == "GL" else datum.rank + 1
        spec = oracle.MatrixGroupSpec(family=family, n=n, q=q)
        classes = oracle.conj_class_count(spec)
        record("sum |Irr(A_phi)| vs conjugacy classes",
               table.total_irr == classes,
               f"parameters give {table.total_irr}, {family}{n}(F_{q}) has {classes}")

    payload = {"command": "verify", "group": name, "q": q, "checks": checks,
               "ok": all(c["ok"] for c in checks)}
    _emit(payload, args.json,
          [[c["check"], "pass" if c["ok"] else "FAIL", c["detail"]] for c in checks],
          ["check", "result", "detail"])
    return 0 if payload["ok"] else 1


def _family_of(name: str):
    m = _GROUP_RE.match(name)
    return m.group(1) if m else None


def group_is_small(family: str, datum: BasedRootDatum, q: int) -> bool:
    n = datum.rank if family == "GL" else datum.rank + 1
    try:
        spec = oracle.MatrixGroupSpec(family=family, n=n, q=q)
    except FinweilError:
        return False
    return oracle.group_order(spec) <= oracle.DEFAULT_GROUP_BOUND and q ** (n * n) <= 10**6


def cmd_oracle(args) -> int:
    sub = args.what
    if sub == "conj":
        name, datum, twist, q, extra = _load_spec(args)
        family = _family_of(name)
        if family not in ("GL", "SL", "Sp"):
            raise FinweilError("oracle conj supports GL, SL, Sp")
        n = {"GL": datum.rank, "SL": datum.rank + 1, "Sp": 2 * datum.rank}[family]
        spec = oracle.MatrixGroupSpec(family=family, n=n, q=q)
        count = oracle.conj_class_count(spec)
        payload = {"command": "oracle", "what": "conj", "group": name, "q": q,
                   "order": oracle.group_order(spec), "classes": count}
        _emit(payload, args.json, [[name, q, payload["order"], count]],
              ["group", "q", "order", "classes"])
        return 0
    if sub == "torus":
        name, datum, twist, q, extra = _load_spec(args)
        ddual, tdual = dualize(datum), dual_twist(twist, datum)
        W = generate(ddual, args.weyl_bound)
        rows = []
        for cls in twisted_classes(W, tdual):
            counted = oracle.torus_point_count(cls.rep, q)
            rows.append([W.word_str(cls.rep.weyl_part), counted])
        payload = {"command": "oracle", "what": "torus", "group": name, "q": q,
                   "counts": [{"rep_word": w, "order": o} for w, o in rows]}
        _emit(payload, args.json, rows, ["frobenius", "points"])
        return 0
    if sub == "norm":
        keyvals = dict(t.split("=", 1) for t in args.spec if "=" in t)
        q = int(keyvals["q"])
        m = int(keyvals.get("m", "1"))
        d = int(keyvals.get("d", "2"))
        check = oracle.norm_surjectivity_check(q, m, d)
        payload = {"command": "oracle", "what": "norm", "q": q, "m": m, "d": d,
                   "surjective": check.surjective, "kernel": check.kernel_order,
                   "expected_kernel": check.expected_kernel}
        _emit(payload, args.json,
              [[q, m, d, check.surjective, check.kernel_order]],
              ["q", "m", "d", "surjective", "kernel"])
        return 0
    raise FinweilError(f"unknown oracle subcommand {sub!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finweil",
        description="Exact combinatorics of dual-side parameters for reductive "
                    "groups over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec", nargs="*", help="group token plus key=value options")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--datum-file", help="textual root-datum file")
        p.add_argument("--twist", help="trivial | -1 | permutation | matrix file")
        p.add_argument("--level-bound", type=int, default=64)
        p.add_argument("--weyl-bound", type=int, default=10**6)

    p_tori = sub.add_parser("tori", help="twisted torus classes and their orders")
    common(p_tori)
    p_par = sub.add_parser("parameters", help="parameter class tables")
    common(p_par)
    p_ver = sub.add_parser("verify", help="cross-check the enumerations")
    common(p_ver)
    p_or = sub.add_parser("oracle", help="brute-force ground truth")
    p_or.add_argument("what", choices=("conj", "torus", "norm"))
    common(p_or)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "tori":
            return cmd_tori(args)
        if args.command == "parameters":
            return cmd_parameters(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "oracle":
            return cmd_oracle(args)
    except FinweilError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
