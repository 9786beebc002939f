"""Command-line front end.

Two subcommands:

``analyze`` loads a graph / semilattice / point configuration / central
arrangement / closure space / lattice from JSON (or by built-in name) and
prints counts and structural flags, optionally exporting DOT/JSON and a
Hasse figure.

``paper-verify`` runs the whole verification suite and writes a CSV report
plus rendered figures (the JSON report is byte-stable for a fixed seed).

Exit codes: 0 all good, 1 any verification/analysis failure, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import convex, gallery, graphs, lattices, semilattices, spaces, verify

USAGE_ERROR = 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        return _cmd_paper_verify(args)
    except json.JSONDecodeError as exc:
        print(f"error: cannot parse input: line {exc.lineno} column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except spaces.GroundTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: global enumeration is bounded; use the local operations "
              "(classification, minimal neighborhoods, certifications) or "
              "raise --bound", file=sys.stderr)
        return 1
    except (spaces.SpaceError, lattices.LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regclosure",
        description="closure spaces, regular closed set lattices, and "
                    "their verification suite")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze one input object")
    pa.add_argument("kind", choices=["graph", "semilattice", "points",
                                     "arrangement", "space", "lattice"])
    pa.add_argument("input", help="path to a JSON input, or a built-in name "
                                  "(e.g. K4, C5, P3, star3, diamond, "
                                  "K33_minus_e, S4, m3_minus)")
    pa.add_argument("--format", choices=["text", "json"], default="text")
    pa.add_argument("--bound", type=int, default=None,
                    help="enumeration bound on the ground size (default 24)")
    pa.add_argument("--flag-limit", type=int, default=600,
                    help="skip expensive lattice flags above this size")
    pa.add_argument("--export-dot", metavar="FILE",
                    help="write the Hasse diagram of the main lattice as DOT")
    pa.add_argument("--export-json", metavar="FILE",
                    help="write the main lattice as JSON")
    pa.add_argument("--figure", metavar="FILE",
                    help="render the Hasse diagram of the main lattice")

    pv = sub.add_parser("paper-verify", help="run the verification suite")
    pv.add_argument("--filter", default=None,
                    help="only run claims whose id contains this substring")
    pv.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    pv.add_argument("--jobs", type=int, default=1)
    pv.add_argument("--format", choices=["text", "json"], default="text")
    pv.add_argument("--outdir", default="reports",
                    help="directory for the CSV/JSON report and figures "
                         "('-' disables file output)")
    return parser


# ---------------------------------------------------------------------------
# analyze


def _load_text(path_or_name: str, named: dict | None = None):
    p = Path(path_or_name)
    if p.exists():
        return "file", p.read_text()
    if named is not None:
        return "name", path_or_name
    raise FileNotFoundError(f"no such file: {path_or_name}")


def _lattice_flags(L: lattices.FiniteLattice, limit: int) -> dict:
    if L.size > limit:
        return {"flags_skipped": f"lattice has {L.size} elements, "
                                 f"flag limit is {limit}"}
    sd = lattices.semidistributivity(L)
    out = {
        "sd_join": sd.sd_join,
        "sd_meet": sd.sd_meet,
        "sd": sd.sd,
        "bounded": lattices.is_bounded(L).bounded,
        "pseudocomplemented": lattices.is_pseudocomplemented(L),
    }
    for m in (1, 2, 3):
        out[f"rsd{m}"] = lattices.satisfies_rsd(L, m)[0]
    return out


def _analyze_graph(args) -> tuple[dict, lattices.FiniteLattice | None]:
    kind, payload = _load_text(args.input, graphs.NAMED_GRAPHS)
    G = graphs.graph_from_json(payload) if kind == "file" else graphs.named_graph(payload)
    rep = graphs.pg_lattice_criterion(G)
    out = {
        "vertices": G.size,
        "edges": len(G.edge_pairs()),
        "block_graph": rep.is_block_graph,
        "has_4clique": rep.has_4clique,
        "permutohedron_is_lattice": rep.is_lattice,
        "clop_equals_reg": rep.clop_equals_reg,
    }
    L = None
    cat = graphs.connected_catalog(G)
    out["catalog"] = cat.size
    if cat.size <= (args.bound or spaces.DEFAULT_ENUMERATION_BOUND):
        space = graphs.graph_closure_space(cat)
        L = graphs.enumerate_rg(cat, space)
        clop_idx = [i for i in range(L.size) if space.is_open(L.sets[i])]
        out["reg"] = L.size
        out["clop"] = len(clop_idx)
        out["dm_completion_of_clop"] = (
            lattices.is_dm_completion(L, clop_idx)
            if L.size <= args.flag_limit else "skipped")
        out.update(_lattice_flags(L, args.flag_limit))
    else:
        out["note"] = "catalog above enumeration bound; counts skipped"
    return out, L


def _analyze_semilattice(args) -> tuple[dict, lattices.FiniteLattice | None]:
    kind, payload = _load_text(args.input, gallery.NAMED_SEMILATTICES)
    S = (semilattices.semilattice_from_json(payload) if kind == "file"
         else gallery.NAMED_SEMILATTICES[payload]())
    space = semilattices.semilattice_closure_space(S)
    L = semilattices.enumerate_reg_semilattice(S)
    clop_idx = [i for i in range(L.size) if space.is_open(L.sets[i])]
    eq = semilattices.clop_lattice_equivalences(S)
    out = {
        "elements": S.size,
        "reg": L.size,
        "clop": len(clop_idx),
        "clop_is_lattice": eq.clop_is_lattice,
        "clop_equals_reg": eq.clop_equals_reg,
        "dm_completion_of_clop": lattices.is_dm_completion(L, clop_idx),
    }
    out.update(_lattice_flags(L, args.flag_limit))
    return out, L


def _analyze_points(args) -> tuple[dict, lattices.FiniteLattice | None]:
    _, payload = _load_text(args.input)
    E = convex.points_from_json(payload)
    space = convex.conv_e_space(E)
    L = space.enumerate_regular_closed(args.bound)
    sbc = convex.strongly_biconvex_sets(E)
    pos = {m: i for i, m in enumerate(L.sets)}
    clop_idx = [i for i in range(L.size) if space.is_open(L.sets[i])]
    out = {
        "points": E.size,
        "dimension": E.dim,
        "reg": L.size,
        "clop": len(clop_idx),
        "strongly_biconvex": len(sbc),
        "dm_completion_of_strongly_biconvex":
            lattices.is_dm_completion(L, [pos[m] for m in sbc]),
        "cji_check": convex.cji_strongly_biconvex_check(E).passed,
    }
    out.update(_lattice_flags(L, args.flag_limit))
    return out, L


def _analyze_arrangement(args) -> tuple[dict, lattices.FiniteLattice | None]:
    _, payload = _load_text(args.input)
    A = convex.arrangement_from_json(payload)
    rep = convex.dm_of_region_poset(A)
    out = {
        "hyperplanes": A.size,
        "dimension": A.dim,
        "regions": rep.region_count,
        "poset_is_lattice": rep.poset_is_lattice,
        "completion_size": rep.completion_size,
        "is_dm_completion": rep.is_completion,
        "pseudocomplemented": rep.pseudocomplemented,
        "every_regular_closed_strongly_biconvex":
            rep.every_regular_closed_strongly_biconvex,
    }
    return out, rep.lattice


def _analyze_space(args) -> tuple[dict, lattices.FiniteLattice | None]:
    kind, payload = _load_text(args.input, gallery.NAMED_SPACES)
    sp = (spaces.space_from_json(payload) if kind == "file"
          else gallery.NAMED_SPACES[payload]())
    problems = spaces.validate_space(sp)
    L = sp.enumerate_regular_closed(args.bound)
    clop_idx = [i for i in range(L.size) if sp.is_open(L.sets[i])]
    out = {
        "ground": sp.ground.size,
        "valid_closure": not problems,
        "closed": len(sp.closed_sets(args.bound)),
        "reg": L.size,
        "clop": len(clop_idx),
        "convex_geometry": sp.is_convex_geometry(args.bound),
        "dm_completion_of_clop": lattices.is_dm_completion(L, clop_idx),
    }
    out.update(_lattice_flags(L, args.flag_limit))
    return out, L


def _analyze_lattice(args) -> tuple[dict, lattices.FiniteLattice | None]:
    _, payload = _load_text(args.input)
    L = lattices.lattice_from_json(payload)
    report = lattices.validate_lattice(L)
    out = {"size": L.size, "valid": report.valid}
    if not report.valid:
        out["problems"] = report.problems
        return out, None
    out["join_irreducibles"] = len(L.join_irreducibles())
    out["meet_irreducibles"] = len(L.meet_irreducibles())
    out["has_ortho"] = L.ortho is not None
    out.update(_lattice_flags(L, args.flag_limit))
    return out, L


_ANALYZERS = {
    "graph": _analyze_graph,
    "semilattice": _analyze_semilattice,
    "points": _analyze_points,
    "arrangement": _analyze_arrangement,
    "space": _analyze_space,
    "lattice": _analyze_lattice,
}


def _cmd_analyze(args) -> int:
    out, L = _ANALYZERS[args.kind](args)
    if args.format == "json":
        print(json.dumps(out, sort_keys=True, default=str))
    else:
        width = max(len(k) for k in out)
        for k, v in out.items():
            print(f"{k:<{width}}  {v}")
    if L is not None:
        if args.export_dot:
            Path(args.export_dot).write_text(lattices.lattice_to_dot(L))
        if args.export_json:
            Path(args.export_json).write_text(lattices.lattice_to_json(L))
        if args.figure:
            from . import plots

            plots.hasse_figure(L, args.figure, title=args.input)
    elif args.export_dot or args.export_json or args.figure:
        print("note: no lattice was produced; exports skipped", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# paper-verify


def _cmd_paper_verify(args) -> int:
    results = verify.run_claims(args.filter, seed=args.seed, jobs=args.jobs)
    all_pass = all(r.passed for r in results)
    if args.format == "json":
        doc = {"seed": args.seed, "claims": [r.row() for r in results],
               "passed": all_pass}
        print(json.dumps(doc, sort_keys=True, default=str))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark}  {r.claim_id:<24} [{r.tag}] {r.seconds:8.2f}s  "
                  f"{r.description}")
            if not r.passed:
                print(f"      expected: {r.expected}")
                print(f"      computed: {r.computed}")
        n_pass = sum(r.passed for r in results)
        print(f"{n_pass}/{len(results)} claims passed")
    if args.outdir != "-" and results:
        _write_report_files(Path(args.outdir), args, results)
    return 0 if all_pass else 1


def _write_report_files(outdir: Path, args, results) -> None:
    from . import plots

    outdir.mkdir(parents=True, exist_ok=True)
    with (outdir / "report.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["claim", "tag", "passed", "seconds", "description",
                    "expected", "computed"])
        for r in results:
            w.writerow([r.claim_id, r.tag, r.passed, f"{r.seconds:.3f}",
                        r.description, json.dumps(r.expected, sort_keys=True, default=str),
                        json.dumps(r.computed, sort_keys=True, default=str)])
    doc = {"seed": args.seed, "claims": [r.row() for r in results],
           "passed": all(r.passed for r in results)}
    (outdir / "report.json").write_text(
        json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n")
    plots.runtime_figure(results, str(outdir / "runtimes.png"))
    _gallery_figures(outdir, plots)


def _gallery_figures(outdir: Path, plots) -> None:
    cat = graphs.connected_catalog(graphs.named_graph("K2"))
    space = graphs.graph_closure_space(cat)
    plots.hasse_figure(graphs.enumerate_rg(cat, space),
                       str(outdir / "benzene_permutohedron.png"),
                       title="permutohedron of the one-edge graph")
    sp = gallery.m3_minus_space()
    plots.hasse_figure(sp.enumerate_regular_closed(),
                       str(outdir / "m3_minus_regular_closed.png"),
                       title="regular closed sets, m3-minus space")
    sp = gallery.clopen_join_gap_space()
    plots.hasse_figure(sp.enumerate_regular_closed(),
                       str(outdir / "clopen_join_gap.png"),
                       title="regular closed sets, clopen join gap space")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
