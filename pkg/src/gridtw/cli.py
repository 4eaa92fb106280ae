"""Command-line surface: generate, inspect, transform, verify, solve.

Exit codes: 0 success / property holds, 1 a checked property was violated,
2 usage errors or invalid inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import jsonio
from .bodymodels import HypothesisViolation, contact_points, model_fat_convex, model_rho_convex
from .config import default_seed
from .experiments import CHECK_IDS, CHECKS, experiment_ratio, write_ratio_csv
from .generators import (
    FAMILIES,
    ExperimentConfig,
    convex_bodies,
    l_shaped_bodies,
    polysegments_arrangement,
    segments_arrangement,
)
from .geometry import DegeneracyError, xi as arrangement_xi
from .grids import bg_exact_small, bg_lower, make_partial_triangulation
from .models import (
    CContractionModel,
    ContractionModel,
    validate_c_contraction,
    validate_contraction_model,
    validate_minor_model,
)
from .multigraph import GraphError
from .planarize import intersection_graph, planarize
from .polygons import fatness
from .treewidth import treewidth_exact, treewidth_lower, treewidth_upper
from .vertexcover import winwin_vertex_cover

PASS, VIOLATION, USAGE = 0, 1, 2


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE


def cmd_gen(args) -> int:
    cfg = ExperimentConfig(
        seed=args.seed,
        family=args.family,
        n=args.n,
        trials=args.trials,
        rho=args.rho,
        alpha=args.alpha,
        h=args.h,
        k=args.k,
    )
    os.makedirs(args.out, exist_ok=True)
    for t in range(cfg.trials):
        seed = cfg.seed + t
        path = os.path.join(args.out, f"{cfg.family}-{t:03d}.json")
        if cfg.family == "segments":
            jsonio.dump_json(jsonio.arrangement_to_json(segments_arrangement(seed, cfg.n)), path)
        elif cfg.family == "polysegments":
            jsonio.dump_json(jsonio.arrangement_to_json(polysegments_arrangement(seed, cfg.n)), path)
        elif cfg.family == "rho-convex":
            jsonio.dump_json(jsonio.bodies_to_json(l_shaped_bodies(seed, cfg.n)), path)
        elif cfg.family == "fat-convex":
            bodies = convex_bodies(seed, cfg.n, alpha_target=cfg.alpha)
            report = fatness(bodies)
            if report.alpha > cfg.alpha + 1e-9:
                return _fail(f"generated collection has alpha {report.alpha:.4f} > target {cfg.alpha}")
            jsonio.dump_json(jsonio.bodies_to_json(bodies), path)
        elif cfg.family == "triangulated-grid":
            p = make_partial_triangulation(4 * cfg.k, seed=seed)
            jsonio.dump_json(jsonio.triangulation_to_json(p), path)
        print(path)
    return PASS


def cmd_geom(args) -> int:
    if args.action == "fatness":
        bodies = jsonio.bodies_from_json(jsonio.load_json(args.infile))
        report = fatness(bodies)
        if args.json:
            print(json.dumps({
                "alpha": report.alpha,
                "max_enclosing": report.max_enclosing,
                "min_inscribed": report.min_inscribed,
                "bodies": [
                    {"enclosing": b.enclosing, "inscribed": b.inscribed} for b in report.per_body
                ],
            }, indent=2, sort_keys=True))
        else:
            print(f"alpha {report.alpha:.6f} (max enclosing {report.max_enclosing:.6f}, min inscribed {report.min_inscribed:.6f})")
        return PASS
    arr = jsonio.arrangement_from_json(jsonio.load_json(args.infile))
    if args.action == "validate":
        print(f"valid arrangement: {len(arr.polysegments)} polysegments, {len(arr.crossings)} crossings")
        return PASS
    if args.action == "xi":
        print(arrangement_xi(arr))
        return PASS
    return _fail(f"unknown geom action {args.action}")


def cmd_build(args) -> int:
    arr = jsonio.arrangement_from_json(jsonio.load_json(args.infile))
    g = intersection_graph(arr)
    data = jsonio.graph_to_json(g)
    if args.out:
        jsonio.dump_json(data, args.out)
        print(args.out)
    else:
        print(json.dumps(data, indent=2, sort_keys=True))
    return PASS


def cmd_planarize(args) -> int:
    arr = jsonio.arrangement_from_json(jsonio.load_json(args.infile))
    bundle = planarize(arr)
    jsonio.dump_json(jsonio.bundle_to_json(bundle), args.out)
    print(
        f"wrote {args.out}: |V(G)|={bundle.graph.num_vertices()}, "
        f"|M|={len(bundle.gadget_edges)}, xi={bundle.xi}"
    )
    return PASS


def cmd_model(args) -> int:
    bodies = jsonio.bodies_from_json(jsonio.load_json(args.infile))
    contacts = contact_points(bodies, seed=args.seed)
    try:
        if args.kind == "rho-convex":
            arr, _, report = model_rho_convex(bodies, contacts, rho=args.rho)
            info = {
                "rho": report.rho,
                "delta": report.max_degree,
                "lengths": report.lengths,
                "length_bound": report.length_bound,
                "crossing_counts": report.crossing_counts,
                "crossing_bound": report.crossing_bound,
                "xi": report.xi_value,
            }
        else:
            arr, _, report = model_fat_convex(bodies, contacts, h=args.h)
            info = {
                "alpha": report.alpha,
                "h": report.h,
                "delta": report.max_degree,
                "degree_bound": report.degree_bound,
                "crossing_counts": report.crossing_counts,
                "xi": report.xi_value,
            }
    except HypothesisViolation as exc:
        print(json.dumps({"violation": str(exc), **exc.report}, indent=2, sort_keys=True))
        return VIOLATION
    jsonio.dump_json(jsonio.arrangement_to_json(arr), args.out)
    print(json.dumps(info, indent=2, sort_keys=True, default=str))
    return PASS


def cmd_tw(args) -> int:
    g = jsonio.graph_from_json(jsonio.load_json(args.infile))
    if args.mode == "lower":
        print(treewidth_lower(g))
        return PASS
    if args.mode == "exact":
        width, dec = treewidth_exact(g, cap=args.cap)
    else:
        width, dec = treewidth_upper(g)
    print(width)
    if args.out:
        jsonio.dump_json(jsonio.decomposition_to_json(dec), args.out)
    return PASS


def cmd_bg(args) -> int:
    g = jsonio.graph_from_json(jsonio.load_json(args.infile))
    if args.exact:
        print(bg_exact_small(g))
        return PASS
    k, model = bg_lower(g, k_max=args.kmax, seed=args.seed, restarts=args.restarts)
    print(k)
    if args.out and model is not None:
        jsonio.dump_json(jsonio.model_to_json(model), args.out)
    return PASS


def _verify_model_file(path: str) -> int:
    model = jsonio.model_from_json(jsonio.load_json(path))
    if isinstance(model, CContractionModel):
        viol = validate_c_contraction(model)
        kind = f"{model.c}-contraction"
    elif isinstance(model, ContractionModel):
        viol = validate_contraction_model(model)
        kind = "contraction"
    else:
        viol = validate_minor_model(model)
        kind = "minor"
    if viol is None:
        print(f"valid {kind} model")
        return PASS
    print(f"invalid {kind} model: {viol}")
    return VIOLATION


def cmd_verify(args) -> int:
    name = CHECK_IDS.get(args.check, args.check)
    if name in CHECKS:
        kwargs = {}
        if args.seed is not None:
            kwargs["seed"] = args.seed
        if args.trials is not None and name in ("lift-bound", "composition", "path-threading"):
            kwargs["trials"] = args.trials
        if args.trials is not None and name == "minor-equivalence":
            kwargs["random_trials"] = args.trials
        result = CHECKS[name](**kwargs)
        print(result.summary())
        return PASS if result.passed else VIOLATION
    if os.path.exists(args.check):
        return _verify_model_file(args.check)
    return _fail(f"unknown check {args.check!r}; choose from {sorted(CHECKS)} or ids {sorted(CHECK_IDS)}")


def cmd_solve(args) -> int:
    if args.problem != "vc":
        return _fail("only the vertex cover solver is available")
    gb = jsonio.graph_from_json(jsonio.load_json(args.infile))
    outcome = winwin_vertex_cover(gb, xi_value=args.xi, k=args.k)
    payload = outcome.as_dict()
    if args.report:
        jsonio.dump_json(payload, args.report)
    print(json.dumps(payload, indent=2, sort_keys=True))
    return PASS


def cmd_experiment(args) -> int:
    if args.kind != "ratio":
        return _fail("only the ratio experiment is available")
    cfg = ExperimentConfig(
        seed=args.seed,
        family=args.family,
        n=args.n,
        trials=args.trials,
        rho=args.rho,
        alpha=args.alpha,
        h=args.h,
        k=args.k,
    )
    records = experiment_ratio(cfg, jobs=args.jobs)
    write_ratio_csv(records, args.out)
    checked = [r.chain_pass for r in records if r.chain_pass is not None]
    print(f"wrote {args.out}: {len(records)} records, chain checks {sum(bool(x) for x in checked)}/{len(checked)}")
    if checked and not all(checked):
        return VIOLATION
    return PASS


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridtw",
        description="Treewidth / grid-minor machinery for geometric intersection graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    seed_default = default_seed()

    p = sub.add_parser("gen", help="generate instance files for a family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, default=8, help="bodies / polysegments per instance")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--rho", type=int, default=2)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("geom", help="validate or measure geometry files")
    p.add_argument("action", choices=["validate", "xi", "fatness"])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_geom)

    p = sub.add_parser("build", help="intersection graph of an arrangement")
    p.add_argument("--from", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("planarize", help="crossing-gadget bundle of an arrangement")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_planarize)

    p = sub.add_parser("model", help="model bodies by polysegments")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rho-convex", dest="kind", action="store_const", const="rho-convex")
    group.add_argument("--fat", dest="kind", action="store_const", const="fat-convex")
    p.add_argument("--rho", type=int, default=2)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("tw", help="treewidth of a graph file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--exact", dest="mode", action="store_const", const="exact")
    group.add_argument("--upper", dest="mode", action="store_const", const="upper")
    group.add_argument("--lower", dest="mode", action="store_const", const="lower")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--cap", type=int, default=16)
    p.add_argument("--out", help="write the decomposition JSON here")
    p.set_defaults(func=cmd_tw)

    p = sub.add_parser("bg", help="largest certified grid-minor side")
    p.add_argument("--lower", action="store_true", help="certified lower bound (default)")
    p.add_argument("--exact", action="store_true", help="exact, small graphs only")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", help="write the certifying model JSON here")
    p.set_defaults(func=cmd_bg)

    p = sub.add_parser("verify", help="run a property suite or validate a model file")
    p.add_argument("check", help="check name, numeric id, or a model JSON path")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="win/win parameterized solver")
    p.add_argument("problem", choices=["vc"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--xi", type=int, required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--report", help="write the outcome JSON here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("experiment", help="run an experiment and write CSV")
    p.add_argument("kind", choices=["ratio"])
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--rho", type=int, default=2)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1, help="trial worker processes")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, DegeneracyError, ValueError, OSError, KeyError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
