"""Batch command line: parse tables, run computations, emit reports.

Every command accepts either a file path or a built-in fixture name
(h9, h9-quotient, z2, z3, z4, v4, s3, total2, total3, total4).  Output
is a human-readable text report by default and canonical JSON with
--json; identical inputs and flags produce byte-identical output.

Exit codes: 0 success, 1 any error, 2 cap or budget exhaustion.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from hyperkernel import errors
from hyperkernel import corpus as corpus_mod
from hyperkernel import core, freeprod, hypio, quotients, relations
from hyperkernel.core import ElementSet, HyperTable
from hyperkernel.hypio import emit_report, partition_labels, set_labels, table_doc

CENSUS_CAP_ENV = "HYPERKERNEL_CENSUS_CAP"


def _load(arg: str) -> HyperTable:
    path = Path(arg)
    if path.exists():
        return hypio.load_table(path)
    fixtures = corpus_mod.fixtures()
    if arg in fixtures:
        return fixtures[arg]
    raise errors.ParseError(f"no such file or fixture: {arg}")


def _census_cap(args) -> int:
    if args.census_cap is not None:
        return args.census_cap
    env = os.environ.get(CENSUS_CAP_ENV)
    if env:
        return int(env)
    return relations.DEFAULT_CENSUS_CAP


def _parse_subset(H: HyperTable, members: str) -> ElementSet:
    labels = [tok.strip() for tok in members.split(",") if tok.strip()]
    if not labels:
        raise errors.ParseError("empty element list")
    return H.subset(labels)


def _quotient_doc(q: relations.QuotientStructure, names) -> dict:
    return {
        "elements": list(q.table.names),
        "table": table_doc(q.table)["table"],
        "is_group": q.is_group,
        "is_abelian_group": bool(q.is_group and q.group.is_abelian()),
    }


def _render(doc: dict, as_json: bool) -> str:
    if as_json:
        return emit_report(doc)
    lines: list[str] = []

    def walk(value, indent: str, key: str | None):
        prefix = f"{indent}{key}: " if key is not None else indent
        if isinstance(value, dict):
            if key is not None:
                lines.append(f"{indent}{key}:")
            for k in sorted(value):
                walk(value[k], indent + ("  " if key is not None else ""), k)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            if key is not None:
                lines.append(f"{indent}{key}:")
            for item in value:
                walk(item, indent + "  ", None)
        else:
            if isinstance(value, list):
                text = "{" + ",".join(str(v) for v in value) + "}"
            else:
                text = str(value)
            lines.append(prefix + text if key is not None else indent + "- " + text)

    walk(doc, "", None)
    return "\n".join(lines) + "\n"


def _cmd_check(args) -> dict:
    H = _load(args.table)
    rep = core.structure_report(H)
    flags = {
        name: getattr(rep, name)
        for name in (
            "is_semihypergroup",
            "is_quasihypergroup",
            "is_hypergroup",
            "is_commutative",
            "is_canonical",
            "is_regular_hg",
            "is_strongly_regular_hg",
            "is_polygroup",
        )
    }
    witnesses = {
        key: [H.names[v] if isinstance(v, int) else str(v) for v in val]
        if isinstance(val, tuple)
        else str(val)
        for key, val in rep.witnesses.items()
    }
    return {
        "n": H.n,
        "elements": list(H.names),
        "flags": flags,
        "identities": set_labels(H.names, rep.identities),
        "witnesses": witnesses,
    }


def _fundamental_doc(H: HyperTable, R, cap: int) -> dict:
    q = relations.quotient_by(H, R)
    doc = {
        "classes": partition_labels(H.names, R),
        "quotient": _quotient_doc(q, H.names),
    }
    if q.is_group:
        doc["kernel"] = set_labels(H.names, relations.kernel_S(H, R))
    return doc


def _cmd_beta(args) -> dict:
    H = _load(args.table)
    cap = _census_cap(args)
    return _fundamental_doc(H, relations.beta(H, cap), cap)


def _cmd_gamma(args) -> dict:
    H = _load(args.table)
    cap = _census_cap(args)
    if args.oracle:
        R = relations.gamma_oracle(H, nmax=args.nmax)
        doc = _fundamental_doc(H, R, cap)
        doc["route"] = "oracle"
        doc["nmax"] = args.nmax
    else:
        doc = _fundamental_doc(H, relations.gamma(H, cap), cap)
        doc["route"] = "commutator"
    return doc


def _cmd_heart(args) -> dict:
    H = _load(args.table)
    return {
        "heart": set_labels(H.names, quotients.heart(H)),
        "routes_agree": True,
    }


def _cmd_derived(args) -> dict:
    H = _load(args.table)
    return {
        "derived": set_labels(H.names, quotients.derived(H)),
        "routes_agree": True,
    }


def _cmd_subs(args) -> dict:
    H = _load(args.table)
    lattice = quotients.subhypergroups(H)
    entries = []
    for e in lattice.all:
        if args.closed and not e.closed:
            continue
        if args.normal and not e.normal:
            continue
        if args.complete_part and not e.complete_part:
            continue
        if args.contains_heart and not e.contains_S_beta:
            continue
        entries.append(
            {
                "members": set_labels(H.names, e.members),
                "closed": e.closed,
                "normal": e.normal,
                "complete_part": e.complete_part,
                "conjugable": e.conjugable,
                "contains_heart": e.contains_S_beta,
                "contains_derived": e.contains_S_gamma,
            }
        )
    return {"count": len(entries), "subhypergroups": entries}


def _cmd_quotient(args) -> dict:
    H = _load(args.table)
    K = _parse_subset(H, args.sub)
    Q = quotients.quotient_hypergroup(H, K)
    sigma = relations.congruence_mod(H, K)
    cosets = {
        Q.names[cid]: set_labels(H.names, block)
        for cid, block in enumerate(sigma.classes)
    }
    doc: dict = {
        "cosets": cosets,
        "quotient": table_doc(Q),
        "is_group": False,
        "is_abelian_group": False,
    }
    if core.is_closed(H, K):
        doc["is_group"] = quotients.check_group_quotient(H, K)
        doc["is_abelian_group"] = quotients.check_abelian_quotient(H, K)
    qb = relations.beta(Q)
    qq = relations.quotient_by(Q, qb)
    if qq.is_group:
        doc["quotient_beta_kernel"] = set_labels(Q.names, relations.kernel_S(Q, qb))
    try:
        rep = quotients.correspondence_check(H, K)
        doc["correspondence"] = {
            "applicable": True,
            "holds": rep.holds,
            "identities": [
                {
                    "relation": o.relation,
                    "kernel_match": o.kernel_match,
                    "quotient_iso": o.quotient_iso,
                    "chain_match": o.chain_match,
                }
                for o in rep.outcomes
            ],
        }
    except errors.NotCanonical:
        probe = quotients.correspondence_probe(H, K)
        doc["correspondence"] = {
            "applicable": False,
            "probe_holds": probe.holds,
        }
    return doc


def _cmd_product(args) -> dict:
    H1 = _load(args.table1)
    H2 = _load(args.table2)
    rep = quotients.product_identities_check(H1, H2)
    P = core.direct_product(H1, H2)
    return {
        "carrier_size": H1.n * H2.n,
        "kernel_match": rep.kernel_match,
        "gamma_quotient_iso": rep.gamma_quotient_iso,
        "holds": rep.holds,
        "product_kernel": set_labels(P.names, rep.product_kernel),
    }


def _cmd_sr_enum(args) -> dict:
    H = _load(args.table)
    found = relations.enumerate_strongly_regular(H, budget=args.budget)
    lattice = quotients.subhypergroups(H)
    normal_closed = [
        e for e in lattice.all if e.normal and e.closed and e.contains_S_beta
    ]
    return {
        "count": len(found),
        "relations": [partition_labels(H.names, R) for R in found],
        "normal_closed_containing_heart": len(normal_closed),
        "correspondence_counts_match": len(found) == len(normal_closed),
    }


def _parse_word(reg: freeprod.FactorRegistry, text: str) -> freeprod.ReducedWord:
    toks = text.split()
    if toks == ["1"]:
        return freeprod.EMPTY_WORD
    letters = []
    for tok in toks:
        if "@" not in tok:
            raise errors.ParseError(f"letter {tok!r} is not name@factor")
        lab, _, idx = tok.rpartition("@")
        try:
            f = int(idx)
        except ValueError:
            raise errors.ParseError(f"bad factor index in {tok!r}") from None
        if not 0 <= f < len(reg.factors):
            raise errors.ParseError(f"no factor {f}")
        letters.append(freeprod.Letter(f, reg.factors[f].index(lab)))
    return freeprod.make_word(reg, letters)


def _format_word(reg: freeprod.FactorRegistry, w: freeprod.ReducedWord) -> str:
    if w.is_empty():
        return "1"
    return " ".join(f"{reg.factors[l.factor].names[l.elem]}@{l.factor}" for l in w.letters)


def _cmd_freeprod(args) -> dict:
    factor_tables = [_load(tok) for tok in args.factors.split(",") if tok]
    reg = freeprod.FactorRegistry(factor_tables)
    if args.action == "eval":
        parts = [p.strip() for p in args.expr.split("*")]
        words = [_parse_word(reg, p) for p in parts]
        out = freeprod.word_product(reg, words)
        return {"words": [_format_word(reg, w) for w in out]}
    if args.action == "psi":
        w = _parse_word(reg, args.expr)
        image = freeprod.psi_image(reg, w)
        family = reg.direct_sum_family()
        return {
            "support": {
                str(i): family.abelianizations[i].names[c] for i, c in image.support
            }
        }
    if args.action == "conjectures":
        if not args.subs:
            raise errors.ParseError("conjectures needs --subs k1;k2;...")
        blocks = args.subs.split(";")
        if len(blocks) != len(factor_tables):
            raise errors.ParseError("one --subs block per factor required")
        subs = [
            _parse_subset(H, block) for H, block in zip(factor_tables, blocks)
        ]
        rep = freeprod.quotient_conjecture_report(
            factor_tables, subs, max_len=args.max_len
        )
        return {
            "max_len": rep.max_len,
            "free_product_of_quotients": rep.free_product_of_quotients,
            "fundamental_formula": rep.fundamental_formula,
            "commutative_formula": rep.commutative_formula,
        }
    raise errors.ParseError(f"unknown freeprod action {args.action!r}")


def _add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    parser.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS if suppress else False,
        help="emit canonical JSON",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS if suppress else 0,
        help="sampling seed",
    )
    parser.add_argument(
        "--census-cap",
        type=int,
        default=argparse.SUPPRESS if suppress else None,
        help=f"product census cap (default {relations.DEFAULT_CENSUS_CAP}, "
        f"overridable via {CENSUS_CAP_ENV})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperkernel",
        description="Finite hypergroup computations on Cayley-table files.",
    )
    _add_globals(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _add_globals(shared, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[shared], help="structural predicate report")
    p.add_argument("table")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser(
        "beta", parents=[shared], help="fundamental relation and quotient group"
    )
    p.add_argument("table")
    p.set_defaults(func=_cmd_beta)

    p = sub.add_parser(
        "gamma", parents=[shared], help="commutative fundamental relation"
    )
    p.add_argument("table")
    p.add_argument("--oracle", action="store_true", help="use the brute-force route")
    p.add_argument("--nmax", type=int, default=4, help="oracle product length bound")
    p.set_defaults(func=_cmd_gamma)

    p = sub.add_parser(
        "heart", parents=[shared], help="intersection of complete-part subhypergroups"
    )
    p.add_argument("table")
    p.set_defaults(func=_cmd_heart)

    p = sub.add_parser("derived", parents=[shared], help="derived subhypergroup")
    p.add_argument("table")
    p.set_defaults(func=_cmd_derived)

    p = sub.add_parser("subs", parents=[shared], help="subhypergroup lattice with flags")
    p.add_argument("table")
    p.add_argument("--closed", action="store_true")
    p.add_argument("--normal", action="store_true")
    p.add_argument("--complete-part", dest="complete_part", action="store_true")
    p.add_argument("--contains-heart", dest="contains_heart", action="store_true")
    p.set_defaults(func=_cmd_subs)

    p = sub.add_parser(
        "quotient", parents=[shared], help="coset table modulo a subhypergroup"
    )
    p.add_argument("table")
    p.add_argument("--sub", required=True, help="comma-separated member labels")
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser(
        "product", parents=[shared], help="direct-product identities report"
    )
    p.add_argument("table1")
    p.add_argument("table2")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser(
        "sr-enum", parents=[shared], help="enumerate strongly regular relations"
    )
    p.add_argument("table")
    p.add_argument(
        "--budget", type=int, default=relations.DEFAULT_SR_BUDGET,
        help="partition count budget",
    )
    p.set_defaults(func=_cmd_sr_enum)

    p = sub.add_parser(
        "freeprod", parents=[shared], help="reduced-word arithmetic over factors"
    )
    p.add_argument("--factors", required=True, help="comma-separated tables")
    p.add_argument("action", choices=["eval", "psi", "conjectures"])
    p.add_argument("expr", nargs="?", default="1")
    p.add_argument("--subs", default=None, help="per-factor members, ';'-separated")
    p.add_argument("--max-len", dest="max_len", type=int, default=2)
    p.set_defaults(func=_cmd_freeprod)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except errors.ResourceExhausted as exc:
        print(f"hyperkernel: {exc}", file=sys.stderr)
        return 2
    except errors.HyperError as exc:
        print(f"hyperkernel: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"hyperkernel: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(_render(doc, args.json))
    return 0


if __name__ == "__main__":
    sys.exit(main())
