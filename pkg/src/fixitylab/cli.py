"""Command-line front door.

Subcommands
    fixity    fixity report for one coset action G/U
    profile   fixed-point profile rows for G/U
    search    subgroup classes whose coset action has fixity exactly k
    marks     row of the table of marks for G/U
    sylow     orbit shape of a Sylow 3-subgroup on G/U
    verify    run a claim catalog, exit 1 on any FAIL
    zoo       list constructible group names

Stabilizers are selected by ``--stab-order N`` (all lattice classes of that
order; an optional ``--stab-descriptor`` narrows further) or by
``--stab-file`` pointing at a generator file whose permutations must lie in
the group.  Machine-readable JSON goes to stdout (or ``--out``); anything
human goes to stderr.  Exit codes: 0 success, 1 claim failure, 2 usage or
data error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .cosets import (
    Caps,
    DEFAULT_CAPS,
    build_coset_action,
    fixity,
    marks_row,
    profile,
    report_json,
)
from .enumeration import as_context, subgroup_closure
from .errors import (
    CapExceededError,
    FalsificationError,
    FixityError,
    GroupDataError,
    MembershipError,
    ParseError,
    PreconditionError,
)
from .perm import PermGroup, Subgroup
from .verifier import (
    StabView,
    classify_sylow3_orbits,
    descriptor_matches,
    run_claim_catalog,
    catalog_report_json,
)
from .zoo import ENV_DATA_DIR, load_spec, resolve_group, zoo_names


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="fixitylab")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, stab: bool) -> None:
        p.add_argument("--group", required=True, help="group selector, see `zoo`")
        if stab:
            p.add_argument("--stab-order", type=int, help="stabilizer order filter")
            p.add_argument(
                "--stab-descriptor",
                help="narrow --stab-order matches to one structure, e.g. D10",
            )
            p.add_argument("--stab-file", help="generator file for the stabilizer")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--element-cap", type=int, default=DEFAULT_CAPS.elements)
        p.add_argument("--subgroup-cap", type=int, default=DEFAULT_CAPS.subgroups)
        p.add_argument("--coset-cap", type=int, default=DEFAULT_CAPS.cosets)

    for name in ("fixity", "profile", "marks", "sylow"):
        add_common(sub.add_parser(name), stab=True)

    p = sub.add_parser("search")
    add_common(p, stab=False)
    p.add_argument("--k", type=int, default=4, help="target fixity (default 4)")
    p.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; search is serial")

    p = sub.add_parser("verify")
    p.add_argument("--catalog", required=True, help="claim catalog JSON file")
    p.add_argument("--only", help="comma-separated claim ids to run")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--element-cap", type=int, default=DEFAULT_CAPS.elements)
    p.add_argument("--subgroup-cap", type=int, default=DEFAULT_CAPS.subgroups)
    p.add_argument("--coset-cap", type=int, default=DEFAULT_CAPS.cosets)

    p = sub.add_parser("zoo")
    p.add_argument("--out", help="write JSON here instead of stdout")
    return top


def _caps_of(args: argparse.Namespace) -> Caps:
    return Caps(
        elements=args.element_cap,
        subgroups=args.subgroup_cap,
        cosets=args.coset_cap,
    )


def _stabilizers(
    g: PermGroup, args: argparse.Namespace, caps: Caps
) -> list[Subgroup]:
    """All stabilizers the flags select; ambiguity yields several."""
    if args.stab_file and args.stab_order is not None:
        raise PreconditionError("--stab-order and --stab-file are exclusive")
    if args.stab_file:
        spec = load_spec(Path(args.stab_file), Path(args.stab_file).stem)
        loaded = spec.build()
        return [subgroup_closure(g, list(loaded.generators))]
    if args.stab_order is None:
        raise PreconditionError("one of --stab-order or --stab-file is required")
    ctx = as_context(g, caps.elements)
    out = []
    for sc in ctx.subgroup_classes(caps.subgroups):
        if sc.order != args.stab_order:
            continue
        if args.stab_descriptor and not descriptor_matches(
            args.stab_descriptor, StabView.of(sc)
        ):
            continue
        out.append(sc.representative)
    if not out:
        raise GroupDataError(
            f"no subgroup class of order {args.stab_order} matches the filter"
        )
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _one_or_many(chunks: list[str], out: str | None) -> None:
    if len(chunks) == 1:
        _emit(chunks[0], out)
    else:
        _emit("[\n" + ",\n".join(chunks) + "\n]", out)


def _cmd_action_reports(args: argparse.Namespace) -> int:
    caps = _caps_of(args)
    name, g = resolve_group(args.group)
    chunks = []
    for u in _stabilizers(g, args, caps):
        if args.subcommand == "fixity":
            rep = fixity(g, u, caps)
            prof = profile(g, u, caps)
            action = build_coset_action(g, u, caps.cosets, caps.elements)
            chunks.append(report_json(name, action, rep, prof))
        elif args.subcommand == "profile":
            prof = profile(g, u, caps)
            obj = {
                "group": name,
                "stabilizer_order": u.order,
                "degree": g.order // u.order,
                "profile": [list(r) for r in prof.rows],
            }
            chunks.append(json.dumps(obj, indent=2))
        elif args.subcommand == "marks":
            ctx = as_context(g, caps.elements)
            classes = ctx.subgroup_classes(caps.subgroups)
            row = marks_row(g, u, classes, caps)
            obj = {
                "group": name,
                "stabilizer_order": u.order,
                "degree": g.order // u.order,
                "marks": row,
            }
            chunks.append(json.dumps(obj, indent=2))
        else:
            cls = classify_sylow3_orbits(g, u, caps)
            obj = {
                "group": name,
                "stabilizer_order": u.order,
                "degree": g.order // u.order,
                "case": cls.case,
                "sylow3_order": cls.p_order,
                "delta_size": cls.delta_size,
                "orbit_sizes": [list(p) for p in cls.orbit_sizes],
            }
            chunks.append(json.dumps(obj, indent=2))
    _one_or_many(chunks, args.out)
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    from .verifier import search_fixity_k

    caps = _caps_of(args)
    name, g = resolve_group(args.group)
    hits = search_fixity_k(g, args.k, caps)
    obj = {
        "group": name,
        "k": args.k,
        "classes": [
            {
                "order": h.subgroup_class.order,
                "degree": h.degree,
                "fixity": h.report.fixity,
            }
            for h in hits
        ],
    }
    _emit(json.dumps(obj, indent=2), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    caps = _caps_of(args)
    only = set(args.only.split(",")) if args.only else None
    results = run_claim_catalog(args.catalog, jobs=args.jobs, caps=caps, only=only)
    _emit(catalog_report_json(results), args.out)
    for r in results:
        print(f"{r.verdict:8s} {r.claim_id}", file=sys.stderr)
    return 1 if any(r.verdict == "FAIL" for r in results) else 0


def _cmd_zoo(args: argparse.Namespace) -> int:
    extra = []
    env_dir = os.environ.get(ENV_DATA_DIR)
    if env_dir and Path(env_dir).is_dir():
        extra = sorted(p.stem for p in Path(env_dir).glob("*.grp"))
    obj = {
        "names": zoo_names(),
        "data_dir_names": extra,
        "families": [
            "alt_<n>",
            "cyclic_<n>",
            "dihedral_<n>",
            "pgl2_<q>",
            "psl2_<q>",
            "sym_<n>",
        ],
    }
    _emit(json.dumps(obj, indent=2), args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand in ("fixity", "profile", "marks", "sylow"):
            return _cmd_action_reports(args)
        if args.subcommand == "search":
            return _cmd_search(args)
        if args.subcommand == "verify":
            return _cmd_verify(args)
        return _cmd_zoo(args)
    except FalsificationError as e:
        print(f"falsified: {e}", file=sys.stderr)
        return 1
    except (
        CapExceededError,
        GroupDataError,
        MembershipError,
        ParseError,
        PreconditionError,
        FileNotFoundError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FixityError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    console_main()
