"""``qpair`` command line.

Exit codes: 0 success, 2 bad flags or input file, 3 I/O failure,
4 a library precondition failed during the computation.
"""
import argparse
import json
import sys
import warnings

import numpy as np

from . import classify, coupling, fileio, measurement, states, tomography
from .errors import QpairError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_LIBRARY = 4

FAMILIES = (
    "qubit-pure",
    "qubit-mixed",
    "epr",
    "classical-mix",
    "coupled-pure",
    "coupled-mix",
    "paraqubit",
    "paraqutrit-d",
    "product-manifold",
)


class UsageError(Exception):
    pass


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"family {args.family} needs {flags}")


def _dims(args, default):
    return tuple(args.dims) if args.dims else default


def _parse_weight(text):
    """``J:M=P`` such as ``3/2:1/2=0.25``."""
    try:
        label, p = text.split("=")
        j, m = label.split(":")
        return (coupling.half(j), coupling.half(m)), float(p)
    except ValueError as exc:
        raise UsageError(f"weight {text!r} is not of the form J:M=P") from exc


def build_state(args):
    """``(rho, dims)`` for the ``state`` subcommand."""
    fam = args.family
    if fam == "qubit-pure":
        _require(args, "theta", "phi")
        return states.qubit_pure(args.theta, args.phi), (2,)
    if fam == "qubit-mixed":
        _require(args, "p", "theta", "phi")
        return states.qubit_mixed(args.p, args.theta, args.phi), (2,)
    if fam == "epr":
        return states.pure_from_vector(states.epr_state(args.phi or 0.0)), (2, 2)
    if fam == "classical-mix":
        _require(args, "p")
        return states.classical_correlated_mix(args.p), (2, 2)
    if fam == "coupled-pure":
        _require(args, "j", "m")
        dims = _dims(args, (2, 2))
        return coupling.coupled_pure(dims, coupling.half(args.j), coupling.half(args.m)), dims
    if fam == "coupled-mix":
        if not args.weight:
            raise UsageError("family coupled-mix needs at least one --weight J:M=P")
        dims = _dims(args, (2, 2))
        weights = {}
        for key, p in map(_parse_weight, args.weight):
            weights[key] = weights.get(key, 0.0) + p
        return coupling.coupled_mixture(dims, weights), dims
    if fam == "paraqubit":
        _require(args, "ps", "p00", "p11", "p0")
        return coupling.paraqubit_family(args.ps, args.p00, args.p11, args.p0), (2, 2)
    if fam == "paraqutrit-d":
        _require(args, "d")
        return coupling.paraqutrit_d_family(args.d), (2, 3)
    if fam == "product-manifold":
        dims = _dims(args, (2, 2))
        if not args.infinity and args.k is None:
            raise UsageError("family product-manifold needs --k or --infinity")
        k = 0.0 if args.k is None else args.k
        vec = coupling.product_manifold_state(dims, k, at_infinity=args.infinity)
        return states.pure_from_vector(vec), dims
    raise UsageError(f"unknown family {fam!r}")


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a complex number") from exc


def cmd_state(args):
    try:
        rho, dims = build_state(args)
    except QpairError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    fileio.write_density(args.out, rho, dims)
    return EXIT_OK


def _load_valid(path, tol):
    try:
        rho, dims = fileio.read_density(path)
    except fileio.FormatError as exc:
        raise UsageError(str(exc)) from exc
    report = states.validate(rho, tol if tol is not None else states.DENSITY_TOL)
    if not report.ok:
        print(fileio.dumps({"file": path, "validation": report.to_dict()}), end="")
        raise UsageError(f"{path}: not a valid density matrix ({'; '.join(report.failures())})")
    return rho, dims


def cmd_classify(args):
    rho, dims = _load_valid(args.input, args.tol)
    if len(dims) != 2:
        raise UsageError(f"{args.input}: classification needs bipartite dims [N_A, N_B], got {list(dims)}")
    tol = classify.CLASSIFY_TOL if args.tol is None else args.tol
    result = classify.classify_state(rho, dims, tol)
    print(fileio.dumps(result.to_dict()), end="")
    return EXIT_OK


def cmd_tomography(args):
    rho, dims = _load_valid(args.input, args.tol)
    sampled = args.mode == "sampled"
    if sampled and (args.shots is None or args.shots < 1):
        raise UsageError("--mode sampled needs --shots >= 1")
    series = tomography.simulate_series(
        rho,
        exact=not sampled,
        shots=args.shots if sampled else None,
        seed=args.seed,
        complete=args.complete,
        threads=args.threads,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", tomography.IncompleteTomographyWarning)
        estimate = tomography.reconstruct(series)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    fileio.write_series(f"{args.out}.series.json", series)
    fileio.write_density(f"{args.out}.state.json", estimate, dims)
    print(f"frobenius_error {float(np.linalg.norm(estimate - rho))!r}")
    return EXIT_OK


def cmd_sweep(args):
    if args.steps < 2:
        raise UsageError(f"--steps must be at least 2, got {args.steps}")
    rows = classify.entropy_sweep(args.steps, args.family)
    fileio.write_text(args.out, fileio.sweep_csv(rows))
    return EXIT_OK


def _analyzer(spec, dim):
    """``standard`` or ``family:M``, the eigenbasis of tomography member ``M``."""
    if spec == "standard":
        return measurement.standard_analyzer(dim)
    if spec.startswith("family:"):
        try:
            member = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"analyzer {spec!r}: member index must be an integer") from exc
        bases = tomography.measurement_bases(dim)
        if not 0 <= member < len(bases):
            raise UsageError(f"analyzer {spec!r}: member index outside 0..{len(bases) - 1}")
        return measurement.basis_analyzer(bases[member])
    raise UsageError(f"analyzer {spec!r} must be 'standard' or 'family:M'")


def cmd_correlations(args):
    rho, dims = _load_valid(args.input, None)
    if len(dims) != 2:
        raise UsageError(f"{args.input}: correlations need bipartite dims [N_A, N_B], got {list(dims)}")
    pa = _analyzer(args.analyzer_a, dims[0])
    pb = _analyzer(args.analyzer_b, dims[1])
    if args.shots is not None:
        counts = measurement.sample_counts(
            rho, pa, args.shots, args.seed, dims=dims, analyzer_b=pb, threads=args.threads
        )
        joint = counts / args.shots
        fileio.write_text(f"{args.out}.counts.csv", fileio.table_csv(counts, dims[1]))
    else:
        joint = measurement.joint_distribution(rho, dims, pa, pb)
    cond = measurement.conditional_and_marginals(joint)
    fileio.write_text(f"{args.out}.joint.csv", fileio.table_csv(joint, dims[1]))
    fileio.write_text(f"{args.out}.marginal_a.csv", fileio.vector_csv(cond.marginal_a, "a"))
    fileio.write_text(f"{args.out}.marginal_b.csv", fileio.vector_csv(cond.marginal_b, "b"))
    # rows are the conditioning outcome
    fileio.write_text(f"{args.out}.a_given_b.csv", fileio.table_csv(cond.a_given_b, dims[0], "a"))
    fileio.write_text(f"{args.out}.b_given_a.csv", fileio.table_csv(cond.b_given_a, dims[1], "b"))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="qpair", description="Two-particle quantum channel toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="write a named state as density JSON")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--out", required=True)
    for name in ("theta", "phi", "p", "ps", "p00", "p11", "p0", "d"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--j")
    p.add_argument("--m", help="projection, e.g. 1/2; write negative values as --m=-1/2")
    p.add_argument("--dims", type=int, nargs=2, metavar=("NA", "NB"))
    p.add_argument("--weight", action="append", metavar="J:M=P")
    p.add_argument("--k", type=_complex)
    p.add_argument("--infinity", action="store_true")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("classify", help="classify a bipartite state file")
    p.add_argument("input")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tomography", help="simulate the tomography series and reconstruct")
    p.add_argument("input")
    p.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p.add_argument("--shots", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="prefix for <out>.series.json and <out>.state.json")
    p.add_argument("--complete", action="store_true", help="add the rotated settings that fix Im(rho)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_tomography)

    p = sub.add_parser("sweep", help="entropy sweep CSV")
    p.add_argument("--family", default="paraqutrit-d", choices=("paraqutrit-d",))
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("correlations", help="joint, marginal and conditional tables")
    p.add_argument("input")
    p.add_argument("--analyzer-a", default="standard")
    p.add_argument("--analyzer-b", default="standard")
    p.add_argument("--shots", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True, help="prefix for the CSV files")
    p.set_defaults(func=cmd_correlations)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QpairError as exc:
        print(f"error in {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_LIBRARY
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
