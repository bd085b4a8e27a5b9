"""Command-line entry point.

Exit status: 0 when the command succeeds or a verification passes, 1 when a verification
fails (a JSON failure report is printed), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .presentations import ConfigurationError, WordError, parse_word_with_delta, word_str
from .roots import RootError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FORMATS: Dict[str, Tuple[str, ...]] = {
    "roots": ("json", "text"),
    "weyl": ("json", "text"),
    "adm": ("json", "text", "dot"),
    "action": ("json", "text"),
    "prove": ("json", "text"),
    "g2": ("json", "csv", "text"),
    "phi": ("json", "text"),
    "verify-all": ("json", "text"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    action: Optional[str]
    type_label: str
    format: str
    out: Optional[str]
    args: argparse.Namespace


@dataclass
class Outcome:
    payload: object
    text: str
    status: int = EXIT_OK


def _dumps(obj: object) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, default=str) + "\n"


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


# -- subcommands --------------------------------------------------------------


def _rs(cfg: RunConfig):
    from .roots import root_system

    return root_system(cfg.type_label)


def _need(cfg: RunConfig, name: str) -> str:
    v = getattr(cfg.args, name, None)
    if v is None:
        raise UsageError(f"{cfg.subcommand} {cfg.action or ''} requires --{name}".replace("  ", " "))
    return v


def cmd_roots(cfg: RunConfig) -> Outcome:
    rs = _rs(cfg)
    data = rs.to_json()
    lines = [f"{rs.type_label}: {len(rs.positive_roots)} positive roots"]
    for r in rs.positive_roots:
        lines.append(f"  {rs.label(r):<20} height {r.height}  ({', '.join(str(c) for c in r.coords)})")
    return Outcome(data, "\n".join(lines) + "\n")


def cmd_weyl(cfg: RunConfig) -> Outcome:
    from .weyl import WeylGroup

    rs = _rs(cfg)
    W = WeylGroup(rs)
    B = rs.parse_set(_need(cfg, "set"))
    if cfg.action == "orbit":
        orb = W.orbit(B)
        orb = sorted(orb, key=lambda X: (sum(rs.positive_roots[k].height for k in X), sorted(X)))
        data = {"type": rs.type_label, "set": rs.format_set(B), "size": len(orb), "orbit": [rs.format_set(X) for X in orb]}
        text = f"orbit of {rs.format_set(B)} ({len(orb)} sets)\n" + "".join(f"  {rs.format_set(X)}\n" for X in orb)
        return Outcome(data, text)
    stab = W.stabilizer(B)
    data = {
        "type": rs.type_label,
        "set": rs.format_set(B),
        "order": len(stab),
        "group_order": len(W.elements),
        "generators": [g.word_str() for g in stab.generators],
        "elements": [g.word_str() for g in stab.elements],
    }
    text = (
        f"stabilizer of {rs.format_set(B)}: order {len(stab)}\n"
        f"  generators: {', '.join(data['generators']) or '(none)'}\n"  # type: ignore[arg-type]
    )
    return Outcome(data, text)


def cmd_adm(cfg: RunConfig) -> Outcome:
    from .admissible import CLOSURE_FORM, ORBIT_FORM, Admissibility

    rs = _rs(cfg)
    adm = Admissibility(rs)
    fmt_set = rs.format_set
    if cfg.action == "orbits":
        rows = []
        for orb in adm.orbits():
            top = adm.orbit_poset(orb[0]).unique_maximum
            rows.append(
                {
                    "representative": fmt_set(orb[0]),
                    "size": len(orb),
                    "maximum": fmt_set(top) if top is not None else None,
                    "members": [fmt_set(X) for X in orb],
                }
            )
        data = {"type": rs.type_label, "admissible_sets": len(adm.collection()), "orbits": rows}
        text = f"{rs.type_label}: {len(rows)} orbits, {data['admissible_sets']} admissible sets\n"
        text += "".join(f"  {r['representative']:<36} size {r['size']}\n" for r in rows)
        return Outcome(data, text)

    B = rs.parse_set(_need(cfg, "set"))
    if not adm.is_orthogonal(B):
        raise UsageError(f"{fmt_set(B)} is not a set of mutually orthogonal roots")
    if cfg.action == "closure":
        cl = adm.closure(B)
        data = {
            "type": rs.type_label,
            "input": fmt_set(B),
            "admissible": adm.is_admissible(B),
            "closure": fmt_set(cl),
            "closure_size": len(cl),
            "added": fmt_set(cl - B),
        }
        return Outcome(data, f"{fmt_set(B)}^cl = {fmt_set(cl)}\n")
    if cfg.action == "check":
        a = adm.is_admissible(B, CLOSURE_FORM)
        b = adm.is_admissible(B, ORBIT_FORM)
        data = {"type": rs.type_label, "set": fmt_set(B), CLOSURE_FORM: a, ORBIT_FORM: b, "agree": a == b}
        return Outcome(data, f"{fmt_set(B)}: admissible={a} (definitions agree: {a == b})\n")
    # hasse
    if not adm.is_admissible(B):
        raise UsageError(f"{fmt_set(B)} is not admissible (closure {fmt_set(adm.closure(B))})")
    P = adm.orbit_poset(B)
    top = P.unique_maximum
    data = {
        "type": rs.type_label,
        "set": fmt_set(B),
        "elements": [fmt_set(X) for X in P.elements],
        "raising_edges": [{"from": a, "to": b, "node": n} for a, b, n in P.raising_edges],
        "maximal": [fmt_set(P.elements[k]) for k in P.maximal],
        "unique_maximum": fmt_set(top) if top is not None else None,
        "heights": {str(k): h for k, h in sorted(P.heights.items())},
        "diagnostics": P.diagnostics,
    }
    if cfg.format == "dot":
        return Outcome(data, P.to_dot())
    text = f"orbit poset of {fmt_set(B)}: {len(P.elements)} sets, maximum {data['unique_maximum']}\n"
    return Outcome(data, text)


def cmd_action(cfg: RunConfig) -> Outcome:
    from .action import MonoidAction
    from .presentations import derived_sets_for, presentation_for

    rs = _rs(cfg)
    if rs.type_label.startswith("G"):
        raise UsageError("the action is defined for simply laced types (A_n, D_n)")
    act = MonoidAction(rs)
    if cfg.action == "apply":
        w, _exp = parse_word_with_delta(_need(cfg, "word"))
        B = rs.parse_set(_need(cfg, "set"))
        if not act.adm.is_admissible(B):
            raise UsageError(f"{rs.format_set(B)} is not admissible")
        res = act.apply_word(w, B)
        data = {"type": rs.type_label, "word": word_str(w), "set": rs.format_set(B), "result": rs.format_set(res)}
        return Outcome(data, f"{word_str(w)} . {rs.format_set(B)} = {rs.format_set(res)}\n")
    p = presentation_for(rs.type_label)
    rels = list(p.relations)
    if cfg.args.derived:
        rels += list(derived_sets_for(rs.type_label).items)
    rep = act.check_relation_compatibility(rels)
    text = f"{rep.relations} relations, {rep.checks} checks, {len(rep.mismatches)} mismatches\n"
    return Outcome(rep.to_json(), text, EXIT_OK if rep.ok else EXIT_FAIL)


def _load_presentation(name: str):
    from .presentations import Presentation, presentation_for

    if os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            return Presentation.from_json(json.load(fh))
    return presentation_for(name)


def cmd_prove(cfg: RunConfig) -> Outcome:
    from .presentations import derived_sets_for
    from .prover import ProofTrace, SearchBounds, prove_equal

    a = cfg.args
    p = _load_presentation(a.presentation or cfg.type_label)
    lhs, ea = parse_word_with_delta(_need(cfg, "lhs"))
    rhs, eb = parse_word_with_delta(_need(cfg, "rhs"))
    p.check_word(lhs)
    p.check_word(rhs)
    bounds = SearchBounds(a.max_depth, a.max_length, a.max_width)
    lemmas = derived_sets_for(p.name) if a.lemmas else None
    res = prove_equal(lhs, rhs, p, lemmas, bounds)
    if isinstance(res, ProofTrace):
        shift = ea + res.total_delta - eb
        rules = {r.tag: r for r in p.relations}
        if lemmas is not None:
            rules.update({r.tag: r for r in lemmas.items})
        data = {"presentation": p.name, "found": True, "lhs_equals_delta_power_times_rhs": shift, "trace": res.to_json()}
        text = f"proved: lhs = δ^{shift} rhs (depth {res.depth})\n" + res.format(rules) + "\n"
        return Outcome(data, text)
    data = {"presentation": p.name, "found": False, **res.to_json()}
    return Outcome(data, f"not found ({res.reason}); inconclusive\n", EXIT_FAIL)


def cmd_g2(cfg: RunConfig) -> Outcome:
    from .g2core import G2Monoid, build_table, build_table_and_verify

    M = G2Monoid()
    if cfg.action == "table":
        table, _ = build_table(M)
        if cfg.format == "csv":
            return Outcome(table.to_json(), table.to_csv())
        text = "".join(f"{k:2d}  {b}\n" for k, b in enumerate(table.basis))
        return Outcome(table.to_json(), text)
    if cfg.action == "normalize":
        w = _need(cfg, "word")
        exp, x = M.normalize(w)
        data = {"word": w, "delta_exp": exp, "normal_form": str(x), "basis_index": M.index[x.key]}
        return Outcome(data, f"δ^{exp} {x}\n")
    _, rep = build_table_and_verify(M, associativity=not cfg.args.skip_associativity)
    text = f"basis size {rep.basis_size}\n" + "".join(
        f"  {'ok  ' if v else 'FAIL'} {k}\n" for k, v in rep.checks.items()
    )
    return Outcome(rep.to_json(), text, EXIT_OK if rep.ok else EXIT_FAIL)


def cmd_phi(cfg: RunConfig) -> Outcome:
    from .phiver import sigma_census, verify_phi_relations

    if cfg.action == "census":
        c = sigma_census()
        text = "".join(f"  {r['representative']:<36} invariant {r['sigma_invariant']}\n" for r in c.orbit_counts)
        return Outcome(c.to_json(), text)
    methods = tuple(m.strip() for m in cfg.args.method.split(",") if m.strip())
    bad = set(methods) - {"prover", "action"}
    if bad or not methods:
        raise UsageError(f"--method takes prover and/or action, got {cfg.args.method!r}")
    rep = verify_phi_relations(methods)
    lines = []
    for s in rep.relations:
        info = s.prover or {}
        lines.append(
            f"  {'ok  ' if s.ok else 'FAIL'} {s.relation.tag:<24} depth {info.get('depth', '-')!s:<3} δ^{info.get('delta', '-')}\n"
        )
    return Outcome(rep.to_json(), "".join(lines), EXIT_OK if rep.ok else EXIT_FAIL)


def cmd_verify_all(cfg: RunConfig) -> Outcome:
    from . import acceptance

    results = acceptance.run_all()
    data = json.loads(acceptance.dumps(results))
    text = "".join(r.line() + "\n" for r in results)
    return Outcome(data, text, EXIT_OK if data["ok"] else EXIT_FAIL)


COMMANDS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "roots": cmd_roots,
    "weyl": cmd_weyl,
    "adm": cmd_adm,
    "action": cmd_action,
    "prove": cmd_prove,
    "g2": cmd_g2,
    "phi": cmd_phi,
    "verify-all": cmd_verify_all,
}


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="type_label", default=None, help="root system, e.g. D4, A4, G2")
    common.add_argument("--format", default=None, help="output format (json, csv, dot, text)")
    common.add_argument("--out", default=None, help="write output to this file")

    parser = argparse.ArgumentParser(prog="brauerfold", description="Brauer monoids of types D4 and G2.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("roots", parents=[common], help="list positive roots")

    def with_actions(name: str, actions: Sequence[str], help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("action", choices=actions)
        return p

    p = with_actions("weyl", ("orbit", "stabilizer"), "Weyl group orbits and stabilizers")
    p.add_argument("--set", help='root set, e.g. "a1,a4" or "[1,1,0,0]"')

    p = with_actions("adm", ("orbits", "closure", "hasse", "check"), "admissible root sets")
    p.add_argument("--set")

    p = with_actions("action", ("apply", "check"), "monoid action on admissible sets")
    p.add_argument("--set")
    p.add_argument("--word")
    p.add_argument("--derived", action="store_true", help="also check derived identities")

    p = sub.add_parser("prove", parents=[common], help="search for a rewriting proof")
    p.add_argument("--presentation", help="type label or JSON presentation file")
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--max-depth", type=_positive, default=24)
    p.add_argument("--max-width", type=_positive, default=2_000_000, help="frontier size limit")
    p.add_argument("--max-length", type=_positive, default=20, help="word length limit")
    p.add_argument("--lemmas", action="store_true", help="add the derived identities as rules")

    p = with_actions("g2", ("table", "verify", "normalize"), "the 39-element G2 monoid")
    p.add_argument("--word")
    p.add_argument("--skip-associativity", action="store_true")

    p = with_actions("phi", ("verify", "census"), "the map from G2 to D4")
    p.add_argument("--method", default="prover,action")

    sub.add_parser("verify-all", parents=[common], help="run every acceptance criterion")
    return parser


DEFAULT_TYPES = {"phi": "D4", "g2": "G2", "prove": "G2"}


def make_config(ns: argparse.Namespace) -> RunConfig:
    fmts = FORMATS[ns.subcommand]
    fmt = ns.format or "json"
    if fmt not in fmts:
        raise UsageError(f"--format {fmt} is not available for {ns.subcommand} (choose from {', '.join(fmts)})")
    action = getattr(ns, "action", None)
    if fmt == "dot" and action != "hasse":
        raise UsageError("--format dot is only available for adm hasse")
    if fmt == "csv" and action != "table":
        raise UsageError("--format csv is only available for g2 table")
    type_label = ns.type_label or DEFAULT_TYPES.get(ns.subcommand, "D4")
    return RunConfig(ns.subcommand, action, type_label, fmt, ns.out, ns)


def run(cfg: RunConfig) -> Tuple[int, str]:
    out = COMMANDS[cfg.subcommand](cfg)
    body = out.text if cfg.format in ("text", "dot", "csv") else _dumps(out.payload)
    return out.status, body


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = make_config(ns)
        status, body = run(cfg)
    except (UsageError, ConfigurationError, RootError, WordError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"brauerfold: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return status


if __name__ == "__main__":
    sys.exit(main())
