"""Command line interface.

Exit codes: 0 success, 1 a hypothesis of the relevant theorem fails,
2 bad input (parse or validation error), 3 an invariant check failed.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .cgda import check_d_squared
from .errors import HypothesisViolation, NegativeCoefficientWarning, ParseError, ValidationError
from .expr import dump
from .immersion import check_hypotheses, imm_component, imm_general_descriptor, series_report
from .manifolds import ManifoldData, catalog, lookup, parse_manifold
from .stiefel import BundleClasses, build_stiefel_model, formal_classes
from .suites import SUITES, run_suite

EXIT_OK, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class InputError(Exception):
    pass


def load_manifold(spec: str) -> ManifoldData:
    """``catalog:NAME`` or a path to a manifold file."""
    if spec.startswith("catalog:"):
        try:
            return lookup(spec[len("catalog:"):])
        except (KeyError, ValueError) as exc:
            raise InputError(str(exc).strip("'\"")) from None
    try:
        text = Path(spec).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    return parse_manifold(text)


def _cmd_describe(args, out) -> int:
    M = load_manifold(args.manifold)
    N = load_manifold(args.target) if args.target else None
    if N is not None and N.dim != M.dim + args.codim:
        raise InputError(f"target {N.name} has dimension {N.dim}, expected m + k = {M.dim + args.codim}")
    report = check_hypotheses(M, args.codim, target=N)
    out.write(f"manifold: {M.name} (dim {M.dim}, betti {M.betti_list})\n")
    out.write(f"codim: {args.codim}\n")
    out.write(report.format())
    if N is not None:
        desc = imm_general_descriptor(M, N, args.codim)
    else:
        if args.codim < 2:
            report.raise_if_failed(("k_parity",))
        report.raise_if_failed()
        desc = imm_component(M, args.codim)
    out.write("factors:\n")
    out.write(desc.format())
    return EXIT_OK


def _cmd_series(args, out) -> int:
    M = load_manifold(args.manifold)
    top = args.max_degree if args.max_degree is not None else 2 * (M.dim + args.codim) + 2
    if top < 0:
        raise InputError("--max-degree must be non-negative")
    for line in series_report(M, args.codim, top, args.closed_form):
        out.write(line + "\n")
    return EXIT_OK


def _cmd_stiefel(args, out) -> int:
    m, k = args.m, args.k
    if m < 0 or k < 0:
        raise InputError("--m and --k must be non-negative")
    xi = BundleClasses.trivial() if args.zero_xi_classes else formal_classes("xi", m, k)
    eta = BundleClasses.trivial() if args.zero_eta_classes else formal_classes("eta", m, k)
    spec = build_stiefel_model(m, k, xi, eta)
    out.write(f"# Stiefel bundle model, m={m}, k={k}\n")
    out.write(f"# base: {' '.join(spec.base_names) or '-'}\n")
    out.write(f"# target: {' '.join(spec.target_names) or '-'}\n")
    out.write(f"# new: {' '.join(spec.new_names) or '-'}\n")
    out.write(dump(spec.full_model))
    r = check_d_squared(spec.full_model)
    out.write(f"# d^2 = 0: {'pass' if r else 'FAIL'}\n")
    return EXIT_OK if r else EXIT_INVARIANT


def _cmd_verify(args, out) -> int:
    res = run_suite(args.suite, args.grid, args.variant)
    out.write(res.format())
    return EXIT_OK if res.ok else EXIT_INVARIANT


def _cmd_catalog(args, out) -> int:
    for M in catalog():
        p = M.profile
        out.write(
            f"{M.name}\tdim={M.dim}\tbetti={','.join(map(str, M.betti_list))}"
            f"\teuler_zero={str(p.euler_zero).lower()}"
            f"\tdual_pontryagin_zero_from={p.dual_p_zero_from if p.dual_p_zero_from is not None else '-'}"
            f"\tpontryagin_all_zero={str(p.p_zero_all).lower()}\n"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rationalimm",
        description="Rational homotopy of immersion spaces and Stiefel bundle models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="hypotheses and rational type of an immersion component")
    p.add_argument("--manifold", required=True, help="catalog:NAME or path to a manifold file")
    p.add_argument("--codim", type=int, required=True)
    p.add_argument("--target", help="general target N (catalog:NAME or file); default R^{m+k}")
    p.set_defaults(func=_cmd_describe)

    p = sub.add_parser("series", help="rank series of an immersion component")
    p.add_argument("--manifold", required=True)
    p.add_argument("--codim", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None, help="truncation (default 2(m+k)+2)")
    p.add_argument("--closed-form", choices=("paper", "corrected"), default=None)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("stiefel-model", help="print the Stiefel bundle model")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--zero-xi-classes", action="store_true")
    p.add_argument("--zero-eta-classes", action="store_true")
    p.set_defaults(func=_cmd_stiefel)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--grid", type=int, default=None, help="largest m and k in the grid")
    p.add_argument(
        "--variant",
        choices=("corrected", "printed"),
        default="corrected",
        help="relation variant for the ahl and phi suites",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("catalog", help="list built-in manifolds")
    p.set_defaults(func=_cmd_catalog)
    return parser


def run_cli(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NegativeCoefficientWarning)
        try:
            code = args.func(args, out)
        except HypothesisViolation as exc:
            err.write(f"error: {exc}\n")
            code = EXIT_HYPOTHESIS
        except (ParseError, ValidationError, InputError) as exc:
            err.write(f"error: {exc}\n")
            code = EXIT_INPUT
    seen = set()
    for w in caught:
        msg = str(w.message)
        if msg not in seen:
            seen.add(msg)
            err.write(f"warning: {msg}\n")
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
