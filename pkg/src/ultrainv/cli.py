"""Command-line interface: analyze, lattice, fuzz and examples.

Exit codes: 0 success, 1 property/fact violation (the report carries a
counterexample), 2 malformed input or usage.  Reports are JSON written
atomically; --figures renders matplotlib summaries next to them.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .analysis import algebra_status, is_invariant, ultrainvariant_closure
from .errors import InputFileError, SpectrumIncomplete, UltrainvError
from .fixtures import ALL_KINDS, RNG_NAME, graph_subspace_facts, \
    projection_3block_facts
from .opspace import apply_to_subspace
from .properties import fuzz_run
from .scalar import EXACT
from .serialization import (SCHEMA_VERSION, canonical_dumps, input_stanza,
                            load_matrix, load_spectrum, load_subspace,
                            matrix_to_json, scalar_to_json, spectrum_to_json,
                            subspace_to_json, write_json_atomic)
from .solver import (alg_of, commutant, girder_of_space, intertwiner_space,
                     left_module_algebra, local_commutant)
from .spectral import (algebraic_ultra_lattice, find_rational_spectrum,
                       float_spectrum, minimal_polynomial,
                       nilpotent_ultra_lattice)
from . import subspace as sub

SEED_ENV = "ULTRAINV_SEED"


def _tool_stanza():
    return {"name": "ultrainv", "version": __version__, "rng": RNG_NAME,
            "schema_version": SCHEMA_VERSION}


def _report_figures(args, render):
    if not getattr(args, "figures", None):
        return []
    from . import figures as figs
    return [os.path.basename(p) for p in render(figs, args.figures)]


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    a = load_matrix(args.operator)
    m = load_subspace(args.subspace, backend=a.backend)
    if not a.is_square():
        raise InputFileError(f"operator must be square, got {a.shape}")
    if m.ambient_dim != a.rows:
        raise InputFileError(
            f"subspace ambient {m.ambient_dim} != operator dimension {a.rows}")
    report = {
        "tool": _tool_stanza(),
        "seed": None,
        "inputs": {"operator": input_stanza(args.operator, m=a),
                   "subspace": input_stanza(args.subspace, s=m)},
    }
    if args.operator_b:
        b = load_matrix(args.operator_b)
        if not b.is_square():
            raise InputFileError(f"operator-b must be square, got {b.shape}")
        if b.backend != a.backend:
            raise InputFileError("operator backends differ")
        report["inputs"]["operator_b"] = input_stanza(args.operator_b, m=b)
        report["mode"] = "intertwiner"
        space = intertwiner_space(a, b, m)
        glob = intertwiner_space(a, b, sub.full_space(a.rows, a.backend))
        g = girder_of_space(a, b, space, lower=m)
        left = left_module_algebra(a, b, m)
        report["dims"] = {
            "domain": a.rows,
            "codomain": b.rows,
            "global_intertwiner": glob.dim,
            "local_intertwiner": space.dim,
            "girder": g.dim,
            "left_module_algebra": left.dim,
        }
        report["girder"] = subspace_to_json(g)
        pattern_space, pattern_title = space, "local intertwiner support"
    else:
        report["mode"] = "local-commutant"
        c = local_commutant(a, m)
        reach = apply_to_subspace(c, m)
        g = girder_of_space(a, a, c, lower=m)
        verdict = algebra_status(a, m)
        closure = ultrainvariant_closure(a, m)
        report["scalar_operator"] = verdict.is_scalar_operator
        report["dims"] = {
            "ambient": a.rows,
            "commutant": commutant(a).dim,
            "local_commutant": c.dim,
            "alg_of_subspace": alg_of(m).dim,
            "commutant_reach": reach.dim,
            "girder": g.dim,
            "closure": closure.dim,
        }
        report["girder"] = subspace_to_json(g)
        report["closure"] = subspace_to_json(closure)
        report["verdict"] = {
            "is_algebra": verdict.is_algebra,
            "is_scalar_operator": verdict.is_scalar_operator,
            "via_product_closure": verdict.via_product_closure,
            "via_cm_subset_girder": verdict.via_cm_subset_girder,
            "via_cm_equals_girder": verdict.via_cm_equals_girder,
            "via_girder_invariant": verdict.via_girder_invariant,
            "consistent": verdict.consistent,
        }
        report["subspace_invariant"] = is_invariant(a, m)
        report["subspace_ultrainvariant"] = verdict.subspace_is_ultrainvariant
        report["lattice"] = _inline_lattice(a) if args.with_lattice else None
        pattern_space, pattern_title = c, "local commutant support"

    def render(figs, directory):
        paths = [figs.support_pattern_figure(
            pattern_space, figs.figure_path(directory, "pattern.png"),
            pattern_title)]
        paths.append(figs.dimension_bar_figure(
            report["dims"], figs.figure_path(directory, "dimensions.png"),
            "analysis dimensions"))
        return paths

    report["figures"] = _report_figures(args, render)
    report["timing_seconds"] = time.perf_counter() - started
    write_json_atomic(args.out, report)
    return 0


def _inline_lattice(a):
    """Summary listing of the ultrainvariant lattice for analyze reports."""
    q = minimal_polynomial(a)
    if len(q) >= 2 and not any(q[:-1]):
        lattice = nilpotent_ultra_lattice(a)
        mode = "nilpotent-chain"
    else:
        spectrum = (find_rational_spectrum(a) if a.backend == EXACT
                    else float_spectrum(a))
        lattice = algebraic_ultra_lattice(a, spectrum)
        mode = "algebraic-product"
    return {
        "mode": mode,
        "member_count": len(lattice),
        "members": [{"exponents": list(m.exponents),
                     "dim": m.subspace.dim,
                     "ultrainvariant": m.ultrainvariant}
                    for m in lattice.members],
    }


def cmd_lattice(args) -> int:
    started = time.perf_counter()
    a = load_matrix(args.operator)
    if not a.is_square():
        raise InputFileError(f"operator must be square, got {a.shape}")
    q = minimal_polynomial(a)
    report = {
        "tool": _tool_stanza(),
        "inputs": {"operator": input_stanza(args.operator, m=a)},
        "minimal_polynomial": [scalar_to_json(c, a.backend) for c in q],
    }
    nilpotent = len(q) >= 2 and not any(q[:-1])
    if nilpotent:
        lattice = nilpotent_ultra_lattice(a)
        report["mode"] = "nilpotent-chain"
    else:
        if args.spectrum:
            spectrum = load_spectrum(args.spectrum, backend=a.backend)
            report["inputs"]["spectrum"] = input_stanza(args.spectrum)
        elif a.backend == EXACT:
            spectrum = find_rational_spectrum(a)
        else:
            spectrum = float_spectrum(a)
        report["spectrum"] = spectrum_to_json(spectrum, a.backend)
        lattice = algebraic_ultra_lattice(a, spectrum)
        report["mode"] = "algebraic-product"
    report["members"] = [{
        "exponents": list(m.exponents),
        "dim": m.subspace.dim,
        "ultrainvariant": m.ultrainvariant,
        "basis": subspace_to_json(m.subspace),
    } for m in lattice.members]
    report["member_count"] = len(lattice)

    def render(figs, directory):
        return [figs.lattice_figure(
            lattice, figs.figure_path(directory, "lattice.png"),
            f"ultrainvariant lattice ({report['mode']})")]

    report["figures"] = _report_figures(args, render)
    report["timing_seconds"] = time.perf_counter() - started
    write_json_atomic(args.out, report)
    return 0


def _instance_to_json(inst):
    return {
        "kind": inst.kind,
        "seed": inst.spec.seed,
        "params": dict(inst.spec.params),
        "matrices": {k: matrix_to_json(v) for k, v in inst.matrices.items()},
        "subspaces": {k: subspace_to_json(v)
                      for k, v in inst.subspaces.items()},
    }


def cmd_fuzz(args) -> int:
    started = time.perf_counter()
    if args.cases < 1:
        raise UsageError("--cases must be at least 1")
    if not 2 <= args.dim_max <= 6:
        raise UsageError("--dim-max must lie in 2..6")
    seed, seed_source = _effective_seed(args)
    summary, violation = fuzz_run(seed, args.cases, args.dim_max)
    report = {
        "tool": _tool_stanza(),
        "seed": seed,
        "seed_source": seed_source,
        "rng": RNG_NAME,
        "cases_per_kind": args.cases,
        "dim_max": args.dim_max,
        "kinds": list(ALL_KINDS),
        "summary": summary,
        "passed": violation is None,
        "counterexample": None,
    }
    if violation is not None:
        report["counterexample"] = {
            "check": violation.check,
            "message": violation.message,
            "instance": _instance_to_json(violation.instance),
        }

    def render(figs, directory):
        if not summary:
            return []
        return [figs.fuzz_summary_figure(
            summary, figs.figure_path(directory, "fuzz.png"),
            f"fuzz seed={seed} cases={args.cases}")]

    report["figures"] = _report_figures(args, render)
    report["timing_seconds"] = time.perf_counter() - started
    if args.out:
        write_json_atomic(args.out, report)
    if violation is not None:
        print(f"property violated: {violation.check}: {violation.message}",
              file=sys.stderr)
        if not args.out:
            # still ship the counterexample somewhere useful
            print(canonical_dumps(report["counterexample"]), end="")
        return 1
    return 0


def _effective_seed(args):
    if args.seed is not None:
        return args.seed, "flag"
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env), "env"
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}")
    return 0, "default"


def cmd_examples(args) -> int:
    rows = []
    failed = False
    for dims in ((1, 1, 1), (2, 2, 2)):
        _, _, facts = projection_3block_facts(*dims)
        ok = all(flag for _, flag in facts)
        failed = failed or not ok
        rows.append((f"projection-3block {dims}", facts, ok))
    for dims in ((2, 2, 1), (1, 1, 1)):
        _, _, facts = graph_subspace_facts(*dims)
        ok = all(flag for _, flag in facts)
        failed = failed or not ok
        rows.append((f"graph-subspace {dims}", facts, ok))
    width = max(len(name) for name, _, _ in rows)
    for name, facts, ok in rows:
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}")
        if args.verbose or not ok:
            for fact, flag in facts:
                print(f"    {'ok ' if flag else 'BAD'} {fact}")
    return 1 if failed else 0


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultrainv",
        description="local commutants, girders and ultrainvariant lattices")
    parser.add_argument("--version", action="version",
                        version=f"ultrainv {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="analyze one operator/subspace pair")
    p.add_argument("--operator", required=True)
    p.add_argument("--subspace", required=True)
    p.add_argument("--operator-b", default=None,
                   help="second operator for an intertwiner analysis")
    p.add_argument("--out", required=True)
    p.add_argument("--with-lattice", action="store_true",
                   help="inline the ultrainvariant lattice listing")
    p.add_argument("--figures", default=None, metavar="DIR")
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("lattice", help="enumerate the ultrainvariant lattice")
    p.add_argument("--operator", required=True)
    p.add_argument("--spectrum", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--figures", default=None, metavar="DIR")
    p.set_defaults(func=cmd_lattice)

    p = subs.add_parser("fuzz", help="run the seeded invariant registry")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cases", type=int, required=True)
    p.add_argument("--dim-max", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--figures", default=None, metavar="DIR")
    p.set_defaults(func=cmd_fuzz)

    p = subs.add_parser("examples", help="check the two worked examples")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SpectrumIncomplete as exc:
        detail = ""
        if exc.remainder is not None:
            detail = (" (unfactored remainder coefficients: "
                      + ", ".join(str(c) for c in exc.remainder) + ")")
        print(f"error: {exc}{detail}", file=sys.stderr)
        return 2
    except (InputFileError, UltrainvError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
