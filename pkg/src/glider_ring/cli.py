"""Command-line front end: group catalog, glider arithmetic, chains,
decomposition and probe reports, group comparison.

Reports are emitted on standard output as a single JSON document
(``--format json``, the default) or as human-readable text.  All sampling
is driven by ``--seed``, so identical invocations produce byte-identical
output.  Exit codes: 0 verified / distinguishable (or plain success for
informational subcommands), 1 falsified, 2 unresolved or partial, 64 usage
error, 65 bad input data, 70 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cyclotomic import Cyc
from .linalg import CycMatrix
from .groups import (FiniteGroup, GroupDataError, Subgroup, center,
                     conjugacy_classes, construct_group, derived_subgroup,
                     generated_subgroup, nilpotency_class, parse_group_file,
                     subgroup_lattice)
from .characters import UnsupportedGroupError, character_table
from .ring import GliderContext
from . import structure as st

EX_OK = 0
EX_FALSIFIED = 1
EX_UNRESOLVED = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_INTERNAL = 70

_TABLE_CAP = 8  # text tables show at most this many rows/columns


class CLIDataError(Exception):
    """Malformed user-supplied data (group file, key text, subgroup spec)."""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


# -- input parsing ---------------------------------------------------------

def load_group(spec: str) -> FiniteGroup:
    """Catalog name (``q8``, ``cyclic:6``, ...) or path to a group file."""
    try:
        return construct_group(spec)
    except GroupDataError:
        pass
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError:
        raise CLIDataError(f"unknown catalog name and unreadable path: "
                           f"{spec!r}") from None
    return parse_group_file(text)


def parse_subgroup(G: FiniteGroup, text: str) -> Subgroup:
    """Subgroup generated by a comma-separated list of element names."""
    gens = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            gens.append(G.index_of(tok))
        except (KeyError, ValueError):
            raise CLIDataError(f"unknown group element {tok!r}") from None
    return generated_subgroup(G, gens)


def _parse_scalar(tok: str, e: int) -> Cyc:
    """``p/q``, ``z``, ``z^k`` with optional sign; z is the primitive
    e-th root of unity of the ambient context."""
    tok = tok.strip()
    sign = 1
    if tok.startswith(("+", "-")):
        if tok[0] == "-":
            sign = -1
        tok = tok[1:].strip()
    if tok == "z":
        val = Cyc.root(e)
    elif tok.startswith("z^"):
        try:
            val = Cyc.root(e, int(tok[2:]))
        except ValueError:
            raise CLIDataError(f"bad root-of-unity token {tok!r}") from None
    else:
        try:
            val = Cyc.rational(Fraction(tok), 1)
        except (ValueError, ZeroDivisionError):
            raise CLIDataError(f"bad scalar {tok!r} in key") from None
    return -val if sign < 0 else val


def _resolve_irrep_label(ctx: GliderContext, label: str) -> int:
    label = label.strip()
    higher = [i for i, d in enumerate(ctx.dims) if d >= 2]
    if label == "U":
        if len(higher) != 1:
            raise CLIDataError(
                "label 'U' is ambiguous: the group has "
                f"{len(higher)} higher-dimensional irreducibles")
        return higher[0]
    if label.startswith("irrep_"):
        label = label[len("irrep_"):]
    try:
        i = int(label)
    except ValueError:
        raise CLIDataError(f"bad irreducible label {label!r}") from None
    if i not in higher:
        raise CLIDataError(f"irrep_{i} is not a higher-dimensional "
                           "irreducible of this group")
    return i


def _split_top(text: str, sep: str) -> list:
    """Split on ``sep`` outside any brackets or braces."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "{[":
            depth += 1
        elif ch in "}]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in (q.strip() for q in parts) if p]


def _parse_b_point(ctx: GliderContext, i: int, body: str) -> CycMatrix:
    body = body.strip()
    if body == "*":
        return CycMatrix.identity(ctx.dims[i], ctx.e)
    if not (body.startswith("[") and body.endswith("]")):
        raise CLIDataError(f"expected [rows] or * for irrep point, got "
                           f"{body!r}")
    rows = []
    for row_text in _split_top(body[1:-1], ";"):
        rows.append([_parse_scalar(tok, ctx.e)
                     for tok in row_text.split(":")])
    if not rows:
        raise CLIDataError("empty matrix in key")
    return CycMatrix(rows, ncols=ctx.dims[i])


def parse_key(ctx: GliderContext, text: str):
    """A glider key from JSON (``{"A": ..., "B": ...}``) or shorthand
    (``A={a,b},B={U:[1:1]}``; row entries split on ``:``, rows on ``;``,
    ``*`` for the full point)."""
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CLIDataError(f"bad key JSON: {exc}") from None
        try:
            return ctx.key_from_json(data)
        except (KeyError, ValueError, IndexError, TypeError) as exc:
            raise CLIDataError(f"bad key data: {exc}") from None
    A, B = [], {}
    i = 0
    while i < len(text):
        if text[i] in ", \t":
            i += 1
            continue
        eq = text.find("=", i)
        if eq < 0:
            raise CLIDataError(f"bad key syntax near {text[i:]!r}")
        name = text[i:eq].strip()
        if eq + 1 >= len(text) or text[eq + 1] != "{":
            raise CLIDataError(f"expected '{{' after '{name}='")
        depth, j = 0, eq + 1
        while j < len(text):
            if text[j] == "{":
                depth += 1
            elif text[j] == "}":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if depth != 0:
            raise CLIDataError("unbalanced braces in key")
        body = text[eq + 2:j]
        if name == "A":
            name_to_z = {nm: z for z, nm in enumerate(ctx.ab_names)}
            for tok in _split_top(body, ","):
                if tok not in name_to_z:
                    raise CLIDataError(
                        f"unknown linear-part element {tok!r}; valid names: "
                        f"{', '.join(ctx.ab_names)}")
                A.append(name_to_z[tok])
        elif name == "B":
            for entry in _split_top(body, ","):
                label, colon, point = entry.partition(":")
                if not colon:
                    raise CLIDataError(f"bad B entry {entry!r}")
                idx = _resolve_irrep_label(ctx, label)
                B[idx] = _parse_b_point(ctx, idx, point)
        else:
            raise CLIDataError(f"unknown key part {name!r} (expected A or B)")
        i = j + 1
    try:
        return ctx.make_key(A, B)
    except (ValueError, AssertionError) as exc:
        raise CLIDataError(f"invalid key: {exc}") from None


# -- output helpers --------------------------------------------------------

def _emit_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _cap_grid(grid: list) -> list:
    """Clip a list-of-rows-of-str to the text cap with elision markers."""
    out = [list(r) for r in grid]
    if len(out) > _TABLE_CAP:
        out = out[:_TABLE_CAP - 1] + [["..."] * len(out[0])]
    if out and len(out[0]) > _TABLE_CAP:
        out = [r[:_TABLE_CAP - 1] + ["..."] for r in out]
    return out


def _print_grid(grid: list) -> None:
    grid = _cap_grid(grid)
    if not grid:
        return
    widths = [max(len(row[c]) for row in grid) for c in range(len(grid[0]))]
    for row in grid:
        line = "  ".join(cell.rjust(w) for cell, w in zip(row, widths))
        print(line.rstrip())


def _key_doc(key) -> dict:
    return {"key": key.to_json(), "display": str(key)}


# -- subcommands -----------------------------------------------------------

def cmd_group(args) -> int:
    G = load_group(args.group)
    ncls = conjugacy_classes(G)
    try:
        sub_count = len(subgroup_lattice(G, args.subgroup_bound))
    except GroupDataError:
        sub_count = None
    doc = {
        "order": G.order,
        "abelian": G.is_abelian(),
        "exponent": G.exponent(),
        "nilpotency_class": nilpotency_class(G),
        "center_order": center(G).order,
        "derived_order": derived_subgroup(G).order,
        "class_count": len(ncls),
        "class_sizes": [len(c) for c in ncls],
        "subgroup_count": sub_count,
        "elements": [G.name_of(g) for g in range(G.order)],
    }
    if args.format == "json":
        _emit_json(doc)
    else:
        print(f"group of order {doc['order']}"
              f" ({'abelian' if doc['abelian'] else 'non-abelian'},"
              f" exponent {doc['exponent']},"
              f" nilpotency class {doc['nilpotency_class']})")
        print(f"center order {doc['center_order']},"
              f" derived subgroup order {doc['derived_order']},"
              f" {doc['class_count']} conjugacy classes"
              f" (sizes {', '.join(str(s) for s in doc['class_sizes'])})")
        if sub_count is not None:
            print(f"subgroups: {sub_count}")
        print("elements: " + " ".join(doc["elements"]))
    return EX_OK


def cmd_chartable(args) -> int:
    G = load_group(args.group)
    table = character_table(G)
    classes = conjugacy_classes(G)
    doc = {
        "group_order": G.order,
        "class_sizes": [len(c) for c in classes],
        "class_representatives": [G.name_of(min(c)) for c in classes],
        "characters": [{"label": f"chi_{i}",
                        "degree": ch.degree,
                        "values": [v.to_json() for v in ch.values]}
                       for i, ch in enumerate(table)],
    }
    if args.format == "json":
        _emit_json(doc)
    else:
        print(f"character table ({G.order} elements, "
              f"{len(classes)} classes)")
        grid = [["class"] + doc["class_representatives"],
                ["size"] + [str(s) for s in doc["class_sizes"]]]
        for i, ch in enumerate(table):
            grid.append([f"chi_{i}"] + [str(v) for v in ch.values])
        _print_grid(grid)
    return EX_OK


def cmd_glider(args) -> int:
    G = load_group(args.group)
    ctx = GliderContext.for_group(G)
    verb = args.verb
    ops = args.operands
    if verb == "mul":
        if len(ops) != 2:
            raise CLIDataError("mul needs exactly two keys")
        x, y = parse_key(ctx, ops[0]), parse_key(ctx, ops[1])
        z = ctx.product(x, y)
        doc = {"left": _key_doc(x), "right": _key_doc(y),
               "product": _key_doc(z)}
        if args.format == "json":
            _emit_json(doc)
        else:
            print(f"{x} * {y} = {z}")
        return EX_OK
    if verb == "orbit":
        if len(ops) != 1:
            raise CLIDataError("orbit needs exactly one key")
        x = parse_key(ctx, ops[0])
        res = ctx.orbit(x, args.max_iter)
        doc = {"key": _key_doc(x),
               "powers": [k.to_json() for k in res.orbit],
               "resolved": res.resolved,
               "preperiod": res.preperiod,
               "period": res.period}
        if res.resolved:
            p, s = res.period, res.preperiod
            doc["idempotent"] = _key_doc(res.idempotent)
            doc["idempotent_power"] = p * ((s + p - 1) // p)
        else:
            doc["idempotent"] = None
            doc["idempotent_power"] = None
        if args.format == "json":
            _emit_json(doc)
        else:
            for n, k in enumerate(res.orbit, start=1):
                print(f"x^{n} = {k}")
            if res.resolved:
                print(f"preperiod {res.preperiod}, period {res.period}; "
                      f"idempotent x^{doc['idempotent_power']} = "
                      f"{res.idempotent}")
            else:
                print(f"unresolved after {len(res.orbit)} powers")
        return EX_OK if res.resolved else EX_UNRESOLVED
    if verb in ("induce", "restrict"):
        if len(ops) != 2:
            raise CLIDataError(f"{verb} needs a subgroup and a key")
        sub = parse_subgroup(G, ops[0])
        Hgrp, _ = sub.as_group()
        ctxH = GliderContext.for_group(Hgrp)
        if verb == "induce":
            x = parse_key(ctxH, ops[1])
            z = ctx.induce(sub, x)
        else:
            x = parse_key(ctx, ops[1])
            z = ctx.restrict(sub, x)
        doc = {"subgroup": [G.name_of(g) for g in sub.elements],
               "input": _key_doc(x), "result": _key_doc(z)}
        if args.format == "json":
            _emit_json(doc)
        else:
            names = ",".join(doc["subgroup"])
            print(f"{verb} along {{{names}}}: {x} -> {z}")
        return EX_OK
    raise CLIDataError(f"unknown glider verb {verb!r} "
                       "(expected mul, orbit, induce or restrict)")


def cmd_chain(args) -> int:
    G = load_group(args.group)
    ctx = GliderContext.for_group(G)
    x = parse_key(ctx, args.key)
    start = x
    orbit_note = None
    if ctx.product(x, x) != x:
        res = ctx.orbit(x, args.max_iter)
        if not res.resolved:
            doc = {"resolved": False,
                   "note": f"orbit unresolved after {len(res.orbit)} powers"}
            if args.format == "json":
                _emit_json(doc)
            else:
                print(doc["note"])
            return EX_UNRESOLVED
        start = res.idempotent
        orbit_note = (f"key is not idempotent; chain taken from its orbit "
                      f"idempotent {start}")
    try:
        chain = st.chain_of_idempotent(start)
    except ValueError as exc:
        doc = {"resolved": False, "note": str(exc)}
        if args.format == "json":
            _emit_json(doc)
        else:
            print(doc["note"])
        return EX_UNRESOLVED
    levels = []
    for i, idem in enumerate(chain.idempotents):
        levels.append({
            "subgroup": [G.name_of(g)
                         for g in chain.flat_subgroups[i].elements],
            "idempotent": idem.to_json(),
            "display": str(idem),
        })
    doc = {"resolved": True,
           "start": _key_doc(start),
           "levels": levels,
           "terminal": [G.name_of(g) for g in chain.terminal.elements],
           "terminal_order": chain.terminal.order}
    if orbit_note:
        doc["note"] = orbit_note
    if args.format == "json":
        _emit_json(doc)
    else:
        if orbit_note:
            print(orbit_note)
        for i, lv in enumerate(levels):
            names = ",".join(lv["subgroup"])
            print(f"level {i}: over {{{names}}}  idempotent {lv['display']}")
        print(f"terminal subgroup {{{','.join(doc['terminal'])}}} "
              f"(order {doc['terminal_order']})")
    return EX_OK


def cmd_decompose(args) -> int:
    G = load_group(args.group)
    rep = st.decompose(G, samples=args.samples, seed=args.seed,
                       max_iter=args.max_iter)
    doc = rep.to_json()
    doc["seed"] = args.seed
    if args.format == "json":
        _emit_json(doc)
    else:
        print(f"verdict: {rep.verdict}")
        print(f"subgroups recovered: {len(rep.subgroups)}; "
              f"dims {rep.dims}, rank {rep.rank}")
        ortho = all(all(row) for row in rep.orthogonal)
        print(f"epsilon family orthogonal: {'yes' if ortho else 'NO'}")
        ok = sum(1 for _, _, n in rep.samples if n is not None)
        print(f"multiplicativity samples verified: {ok}/{len(rep.samples)}")
        for note in rep.notes:
            print(f"note: {note}")
    if rep.verdict == "verified":
        return EX_OK
    if rep.verdict == "falsified":
        return EX_FALSIFIED
    return EX_UNRESOLVED


def cmd_probe(args) -> int:
    G = load_group(args.group)
    rprobe = st.R_probe(G, samples=args.samples, seed=args.seed,
                        max_iter=args.max_iter)
    obs = st.obstruction_probe(G, samples=args.samples, seed=args.seed,
                               max_iter=args.max_iter)
    try:
        linz = st.class2_linearization(G)
    except UnsupportedGroupError:
        linz = None
    doc = {
        "group_order": G.order,
        "seed": args.seed,
        "samples": args.samples,
        "linearization": linz,
        "r_witnesses": [k.to_json() for k in rprobe["r_basis_elements"]],
        "nilpotent_iff_trivial": rprobe["nilpotent_iff_trivial"],
        "r_unresolved_count": len(rprobe["unresolved"]),
        "P_unresolved": [k.to_json() for k in obs["P_unresolved"]],
        "E_witnesses": [k.to_json() for k in obs["E_witnesses"]],
    }
    if args.format == "json":
        _emit_json(doc)
    else:
        print(f"R witnesses: {len(doc['r_witnesses'])}"
              f" (consistent with nilpotency test: "
              f"{doc['nilpotent_iff_trivial']})")
        for k in rprobe["r_basis_elements"]:
            print(f"  {k}")
        print(f"unresolved orbits: P {len(doc['P_unresolved'])},"
              f" other {doc['r_unresolved_count']}")
        print(f"E witnesses: {len(doc['E_witnesses'])}")
        if linz is not None:
            print("linearization powers per irreducible: "
                  + ", ".join(str(v) for v in linz))
    if doc["P_unresolved"] or doc["r_unresolved_count"]:
        return EX_UNRESOLVED
    if not doc["nilpotent_iff_trivial"]:
        return EX_FALSIFIED
    return EX_OK


def cmd_distinguish(args) -> int:
    G1 = load_group(args.group)
    G2 = load_group(args.other)
    res = st.distinguish(G1, G2, bound=args.subgroup_bound)
    doc = dict(res)
    doc["profile_counts"] = [
        {"|".join(str(x) for x in key): v for key, v in prof.items()}
        for prof in res["profile_counts"]]
    if args.format == "json":
        _emit_json(doc)
    else:
        d1, d2 = res["degree_multisets"]
        print(f"degree multisets: {d1} vs {d2}")
        print(f"class counts: {res['class_counts'][0]} vs "
              f"{res['class_counts'][1]}")
        print(f"subgroup counts: {res['subgroup_counts'][0]} vs "
              f"{res['subgroup_counts'][1]}")
        print(f"verdict: {res['verdict']}")
    if res["verdict"] == "indistinguishable":
        return EX_UNRESOLVED
    return EX_OK


# -- argument wiring -------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=1024, dest="max_iter")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--subgroup-bound", type=int, default=256,
                   dest="subgroup_bound")


def build_parser() -> _Parser:
    parser = _Parser(prog="glider-ring",
                     description="Exact computations in the reduced glider "
                                 "representation ring of a finite group.")
    subs = parser.add_subparsers(dest="cmd", required=True)

    p = subs.add_parser("group", help="group invariants")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=cmd_group)

    p = subs.add_parser("chartable", help="exact character table")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=cmd_chartable)

    p = subs.add_parser("glider",
                        help="key arithmetic: mul, orbit, induce, restrict")
    p.add_argument("group")
    p.add_argument("verb", choices=("mul", "orbit", "induce", "restrict"))
    p.add_argument("operands", nargs="+",
                   help="keys (JSON or A={..},B={..} shorthand); induce and "
                        "restrict take a comma-separated subgroup generator "
                        "list first")
    _add_common(p)
    p.set_defaults(func=cmd_glider)

    p = subs.add_parser("chain",
                        help="descending restriction chain of an idempotent")
    p.add_argument("group")
    p.add_argument("key")
    _add_common(p)
    p.set_defaults(func=cmd_chain)

    p = subs.add_parser("decompose",
                        help="orthogonal idempotent decomposition report")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = subs.add_parser("probe",
                        help="obstruction-module probes and linearization")
    p.add_argument("group")
    _add_common(p)
    p.set_defaults(func=cmd_probe)

    p = subs.add_parser("distinguish",
                        help="compare two groups at representation and "
                             "glider level")
    p.add_argument("group")
    p.add_argument("other")
    _add_common(p)
    p.set_defaults(func=cmd_distinguish)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    try:
        return args.func(args)
    except (CLIDataError, GroupDataError, UnsupportedGroupError) as exc:
        print(f"glider-ring: data error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except Exception as exc:  # noqa: BLE001 - last-resort internal guard
        print(f"glider-ring: internal error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EX_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
