"""``img``: command-line access to the kneading groups.

    img [--json] kv <v> [command ...]
    img [--json] kwv <w> <v> [command ...]
    img [--json] angle <p/q> [command ...]

Without a command a summary of the group is printed.  Exit status is 0 on
success, 1 on a domain error (invalid kneading data, malformed word, failed
presentation check) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
import warnings
from typing import Any, Optional, Sequence

from .angles import format_angle, group_from_angle, parse_angle
from .core import (Finite, Infinite, classify_state, equal, is_trivial, moore_dot,
                   orbit_on_level, tau, vertex)
from .core.recursion import DEFAULT_DEPTH_CAP, DEFAULT_MAX_EXP, DEFAULT_SMALL_SCAN, act
from .core.nucleus import Directed, Finitary
from .kneading import KneadingError, KneadingGroup, branch_witnesses
from .presentations import (check_presentation, emit_hnn, fbar_relators, free_alphabet,
                            phi_expand, phi_free, relators_kv, relators_kwv)
from .syntax import WordSyntaxError, format_word, parse_word


class DomainError(Exception):
    """Reported with exit status 1."""


def _bits(text: str) -> str:
    if text in ("", "e", "empty"):
        return ""
    if any(c not in "01" for c in text):
        raise argparse.ArgumentTypeError(f"expected a 0/1 word, got {text!r}")
    return text


def _add_commands(parser: argparse.ArgumentParser) -> None:
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.add_parser("info", help="summary of the group (default)")
    sub.add_parser("nucleus", help="nucleus elements")
    for name, helptext in (("order", "order of an element"), ("trivial", "decide g = 1"),
                           ("abelianize", "image in the abelianization"),
                           ("tau", "parity sequence"), ("transitive", "level-transitivity")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("word")
        if name == "order":
            p.add_argument("--max-exp", type=int, default=DEFAULT_MAX_EXP)
            p.add_argument("--small-scan", type=int, default=DEFAULT_SMALL_SCAN)
    p = sub.add_parser("equal", help="decide g = h")
    p.add_argument("word")
    p.add_argument("other")
    p = sub.add_parser("act", help="image of a vertex")
    p.add_argument("word")
    p.add_argument("vertex")
    p = sub.add_parser("orbit", help="cycles on a level")
    p.add_argument("word")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    for name in ("relators", "check-presentation"):
        p = sub.add_parser(name)
        p.add_argument("--levels", type=int, default=0)
    sub.add_parser("hnn", help="finitely presented HNN overgroup")
    p = sub.add_parser("moore", help="Moore diagram")
    p.add_argument("--dot", action="store_true", required=True)
    p.add_argument("--out")
    sub.add_parser("witnesses", help="branchness witness checks")
    sub.add_parser("endo-params", help="the endomorphism and its parameters")
    sub.add_parser("classify", help="finitary/directed type of each generator")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="img",
                                     description="Iterated monodromy groups from kneading data.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    # repeated after the verb; SUPPRESS keeps a top-level --json from being reset
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="{kv,kwv,angle}")
    p = verbs.add_parser("kv", parents=[common], help="K_v for periodic kneading data")
    p.add_argument("v", type=_bits)
    _add_commands(p)
    p = verbs.add_parser("kwv", parents=[common], help="K_{w,v} for pre-periodic kneading data")
    p.add_argument("w", type=_bits)
    p.add_argument("v", type=_bits)
    _add_commands(p)
    p = verbs.add_parser("angle", parents=[common], help="the group of a rational angle p/q")
    p.add_argument("theta")
    _add_commands(p)
    return parser


# command handlers: each returns (text, json payload) -------------------------------

def _word(group: KneadingGroup, text: str):
    return parse_word(text, group.spec)


def _fmt(group: KneadingGroup, g) -> str:
    return format_word(g, group.spec)


def _bits_str(bits) -> str:
    return "".join(map(str, bits))


def _info(group: KneadingGroup, angle_report: Optional[dict]) -> tuple[str, dict]:
    data: dict[str, Any] = {
        "kind": group.kind, "w": group.w, "v": group.v,
        "generators": list(group.spec.names), "d": group.param.d,
        "nucleus_size": group.expected_nucleus_size(),
        "automaton": group.spec.to_dict(),
    }
    lines = []
    if angle_report:
        data["angle"] = angle_report
        lines += [f"angle     {angle_report['theta']}",
                  "orbit     " + " -> ".join(angle_report["orbit"]),
                  f"preperiod {angle_report['preperiod']}, period {angle_report['period']}",
                  f"raw       {angle_report['raw']}",
                  f"kneading period {angle_report['kneading_period']}"
                  + (" (smaller than the angle's period)" if angle_report["period_reduced"] else ""),
                  "canonical " + " ".join(f"{k}={v or '(empty)'}" for k, v in
                                          angle_report["canonical"].items())]
    lines.append(f"group     {group.name}")
    for row in data["automaton"]["states"]:
        mark = " sigma" if row["active"] else ""
        lines.append(f"  {row['name']} = <{row['sec0']}, {row['sec1']}>{mark}")
    return "\n".join(lines), data


def _nucleus(group: KneadingGroup, args) -> tuple[str, dict]:
    elements = [_fmt(group, g) for g in group.nucleus()]
    return "\n".join(elements), {"size": len(elements), "elements": elements}


def _order(group: KneadingGroup, args) -> tuple[str, dict]:
    g = _word(group, args.word)
    res = group.order(g, max_exp=args.max_exp, small_scan=args.small_scan)
    if isinstance(res, Finite):
        return str(res.order), {"status": "finite", "order": res.order}
    if isinstance(res, Infinite):
        return f"infinite ({res.witness})", {"status": "infinite", "witness": res.witness}
    return (f"unknown (no power up to {res.bound} is trivial)",
            {"status": "unknown", "bound": res.bound})


def _trivial(group, args):
    ok = is_trivial(_word(group, args.word), group.spec)
    return str(ok).lower(), {"trivial": ok}


def _equal(group, args):
    ok = equal(_word(group, args.word), _word(group, args.other), group.spec)
    return str(ok).lower(), {"equal": ok}


def _act(group, args):
    try:
        v = vertex(args.vertex)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    image = _bits_str(act(_word(group, args.word), v, group.spec))
    return image, {"vertex": args.vertex, "image": image}


def _orbit(group, args):
    try:
        cycles = orbit_on_level(_word(group, args.word), args.depth, group.spec, cap=args.depth_cap)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    text = "\n".join("(" + " ".join(c) + ")" for c in cycles)
    return text, {"depth": args.depth, "cycles": [list(c) for c in cycles]}


def _abelianize(group, args):
    img = group.abelianize(_word(group, args.word))
    vec = list(img.coords if group.periodic else img.bits)
    kind = "Z^n" if group.periodic else "(Z/2)^(k+n)"
    return " ".join(map(str, vec)), {"group": kind, "vector": vec}


def _tau(group, args):
    seq = tau(_word(group, args.word), group.tau_table)
    return str(seq), {"preperiod": _bits_str(seq.preperiod), "period": _bits_str(seq.period)}


def _transitive(group, args):
    ok = tau(_word(group, args.word), group.tau_table).is_all_ones()
    return str(ok).lower(), {"level_transitive": ok}


def _relators(group, args):
    alphabet = free_alphabet(group)
    if group.periodic:
        if group.n == 1:
            words = []
        else:
            words = phi_expand(relators_kv(group.v, 2), phi_free(group), args.levels)
    else:
        _endo(group)
        words = list(fbar_relators(group, levels=args.levels).base)
        words += phi_expand(relators_kwv(group), phi_free(group), args.levels)
    texts = [format_word(g, alphabet) for g in words]
    return "\n".join(texts), {"levels": args.levels, "count": len(texts), "relators": texts}


def _check(group, args):
    if not group.periodic:
        _endo(group)
    rep = check_presentation(group, args.levels)
    text = f"{rep.total} relators ({rep.distinct} distinct), {len(rep.failures)} failures"
    return text, {"levels": args.levels, "total": rep.total, "distinct": rep.distinct,
                  "failures": rep.failures, "ok": rep.ok}


def _endo(group):
    try:
        return group.endomorphism
    except KneadingError as exc:
        raise DomainError(str(exc)) from None


def _hnn(group, args):
    if not group.periodic:
        _endo(group)
    doc = emit_hnn(group)
    return doc.to_text().rstrip("\n"), doc.to_dict()


def _moore(group, args):
    dot = moore_dot(group.spec, title=group.name)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot)
        return f"wrote {args.out}", {"written": args.out}
    return dot.rstrip("\n"), {"dot": dot}


def _witnesses(group, args):
    rep = branch_witnesses(group)
    rows = [{"name": w.name, "passed": w.passed, "detail": w.detail} for w in rep.witnesses]
    lines = [rep.note] + [f"{'pass' if w.passed else 'FAIL'}  {w.name}" for w in rep.witnesses]
    return "\n".join(lines), {"note": rep.note, "witnesses": rows, "passed": rep.passed}


def _endo_params(group, args):
    alphabet = free_alphabet(group)
    gens = group.generators()
    if group.periodic:
        images = {name: _fmt(group, group.phi(g)) for name, g in zip(group.spec.names, gens)}
        text = "\n".join(f"phi({k}) = {v}" for k, v in images.items())
        return text, {"substitution": images}
    data = _endo(group)
    images = {name: format_word(img, alphabet)
              for name, img in zip(group.spec.names, data.substitution)}
    params = {"case": data.case, "m": data.m, "s": _fmt(group, data.s), "t": _fmt(group, data.t),
              "u": None if data.u is None else _fmt(group, data.u),
              "r": None if data.r is None else _fmt(group, data.r)}
    lines = [f"{k} = {v}" for k, v in params.items()]
    lines += [f"phi({k}) = {v}" for k, v in images.items()]
    params["substitution"] = images
    return "\n".join(lines), params


def _classify(group, args):
    out = {}
    for name in group.spec.names:
        c = classify_state(name, group.spec)
        if isinstance(c, Finitary):
            out[name] = {"type": "finitary", "depth": c.depth}
        elif isinstance(c, Directed):
            out[name] = {"type": "directed", "cycle": list(c.cycle), "ray": c.ray}
        else:
            out[name] = {"type": type(c).__name__.lower()}
    text = "\n".join(f"{k}: " + " ".join(f"{a}={b}" for a, b in v.items()) for k, v in out.items())
    return text, {"states": out}


HANDLERS = {
    "nucleus": _nucleus, "order": _order, "trivial": _trivial, "equal": _equal, "act": _act,
    "orbit": _orbit, "abelianize": _abelianize, "tau": _tau, "transitive": _transitive,
    "relators": _relators, "check-presentation": _check, "hnn": _hnn, "moore": _moore,
    "witnesses": _witnesses, "endo-params": _endo_params, "classify": _classify,
}


def _construct(args) -> tuple[KneadingGroup, Optional[dict]]:
    if args.verb == "kv":
        return KneadingGroup.kv(args.v), None
    if args.verb == "kwv":
        return KneadingGroup.kwv(args.w, args.v), None
    theta = parse_angle(args.theta)
    ag = group_from_angle(theta)
    kn = ag.kneading
    canon = kn.canonical
    report = {
        "theta": format_angle(theta),
        "orbit": [format_angle(x) for x in kn.orbit],
        "preperiod": kn.preperiod, "period": kn.period,
        "raw": kn.raw, "kneading_period": kn.kneading_period,
        "period_reduced": kn.period_reduced,
        "canonical": ({"kind": "periodic", "v": canon.v} if ag.group.periodic
                      else {"kind": "preperiodic", "w": canon.w, "v": canon.v}),
        "group": ag.group.name,
    }
    return ag.group, report


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = args.command or "info"
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            group, angle_report = _construct(args)
        if command == "info":
            text, payload = _info(group, angle_report)
        else:
            text, payload = HANDLERS[command](group, args)
    except (DomainError, KneadingError, WordSyntaxError, ValueError) as exc:
        if args.json:
            print(json.dumps({"error": str(exc)}), file=err)
        else:
            print(f"img: error: {exc}", file=err)
        return 1
    notes = [str(w.message) for w in caught]
    failed = command == "check-presentation" and not payload["ok"]
    if args.json:
        doc = {"group": group.name, "command": command, "result": payload}
        if notes:
            doc["warnings"] = notes
        print(json.dumps(doc, indent=2, sort_keys=True), file=out)
    else:
        for note in notes:
            print(f"img: warning: {note}", file=err)
        print(text, file=out)
    return 1 if failed else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
