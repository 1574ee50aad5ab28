"""Command line front end.

Subcommands: index (all indices of a stored pair), generate (write example
pairs), bounds (CSV curves), certify-log (homotopy certification), fourier
(coefficient table).  Exit codes: 0 success, 2 when results were produced
but something is uncertified (threshold overrun or failed certification),
1 on hard errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bott import build_B, fourier_coefficients_h, signature, F_AMPLITUDES
from .bounds import (
    beta,
    certify_log_path,
    coarse_gap,
    eta_envelope_f,
    eta_envelope_h,
    guaranteed_gap,
)
from .config import KAPPA_THRESHOLD, LOG_THRESHOLD, DEFAULT_TOL
from .errors import (
    AlmostCommutingError,
    CertificationFailed,
    LogMethodUncertified,
    NoGuarantee,
    NoObstruction,
    NumericalInconsistency,
)
from .generators import PairSpec, build_pair
from .linalg import make_pair, unitary_part
from .logmethod import build_BL, kappa2_log
from .matrixio import (
    read_matrix,
    read_selfdual_header,
    write_matrix,
    write_selfdual_header,
)
from .selfdual import SelfDualPair, make_selfdual_pair, pfaffian_bott_index
from .winding import distance_bound_commuting, winding_number


@dataclass
class IndexReport:
    delta: float
    dim: int
    omega: Optional[int] = None
    kappa: Optional[int] = None
    kappa2: Optional[int] = None
    omega_valid: bool = False
    kappa_certified: bool = False
    log_certified: bool = False
    gap_measured: Optional[float] = None
    gap_guaranteed: Optional[float] = None
    distance_commuting: Optional[float] = None

    def items(self):
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                return f"{v:.9g}"
            return str(v)

        return [
            ("dim", fmt(self.dim)),
            ("delta", fmt(self.delta)),
            ("omega", fmt(self.omega)),
            ("kappa", fmt(self.kappa)),
            ("kappa2", fmt(self.kappa2)),
            ("omega_valid", fmt(self.omega_valid)),
            ("kappa_certified", fmt(self.kappa_certified)),
            ("log_certified", fmt(self.log_certified)),
            ("gap_measured", fmt(self.gap_measured)),
            ("gap_guaranteed", fmt(self.gap_guaranteed)),
            ("distance_commuting", fmt(self.distance_commuting)),
        ]


def _emit_report(report: IndexReport, fmt: str, out=None):
    # bind the stream at call time so redirection works
    if out is None:
        out = sys.stdout
    if fmt == "text":
        print(f"dim = {report.dim}", file=out)
        print(f"delta = {report.delta:.9g}", file=out)
        if report.omega is not None:
            print(
                f"omega = {report.omega}"
                + ("" if report.omega_valid else " (delta >= 2: undefined)"),
                file=out,
            )
        if report.kappa is not None:
            tag = "certified" if report.kappa_certified else "NOT certified"
            print(f"kappa = {report.kappa} ({tag})", file=out)
        if report.kappa2 is not None:
            tag = (
                "certified"
                if (report.kappa_certified or report.log_certified)
                else "NOT certified"
            )
            print(f"kappa2 = {report.kappa2:+d} ({tag})", file=out)
        if report.gap_measured is not None:
            print(f"gap_measured = {report.gap_measured:.9g}", file=out)
        if report.gap_guaranteed is not None:
            print(f"gap_guaranteed = {report.gap_guaranteed:.9g}", file=out)
        if report.distance_commuting is not None:
            print(
                f"distance_to_commuting >= {report.distance_commuting:.9g}",
                file=out,
            )
    elif fmt == "kv":
        for k, v in report.items():
            print(f"{k}={v}", file=out)
    else:
        print("key,value", file=out)
        for k, v in report.items():
            print(f"{k},{v}", file=out)


def cmd_index(args) -> int:
    U = read_matrix(args.u_file)
    V = read_matrix(args.v_file)
    if args.polar:
        U = unitary_part(U)
        V = unitary_part(V)
    sd: Optional[SelfDualPair] = None
    if args.self_dual:
        if args.header:
            n_declared = read_selfdual_header(args.header)
            if 2 * n_declared != U.shape[0]:
                raise NumericalInconsistency(
                    f"header says N = {n_declared}, matrices have dim {U.shape[0]}"
                )
        sd = make_selfdual_pair(U, V, unitary_tol=args.unitary_tol)
        pair = sd.pair
    else:
        pair = make_pair(U, V, unitary_tol=args.unitary_tol)

    report = IndexReport(delta=pair.delta, dim=pair.dim)
    report.omega_valid = pair.delta < 2.0
    report.kappa_certified = pair.delta <= KAPPA_THRESHOLD
    report.log_certified = pair.delta <= LOG_THRESHOLD

    if report.omega_valid:
        report.omega = winding_number(pair).omega

    if args.method == "log":
        bm = build_BL(pair, sd.structure if sd else None)
        report.kappa_certified = report.kappa_certified and report.log_certified
    else:
        bm = build_B(pair)
    report.gap_measured = bm.gap
    try:
        report.kappa = signature(bm.B) // 2
    except AlmostCommutingError:
        report.kappa = None
    try:
        report.gap_guaranteed = guaranteed_gap(pair.delta)
    except NoGuarantee:
        report.gap_guaranteed = None

    if sd is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LogMethodUncertified)
            if args.method == "log":
                report.kappa2 = kappa2_log(sd, allow_uncertified=True)
            else:
                report.kappa2 = pfaffian_bott_index(sd, allow_uncertified=True)

    if report.omega is not None and report.omega != 0:
        try:
            report.distance_commuting = distance_bound_commuting(pair)
        except NoObstruction:
            pass

    if (
        report.kappa is not None
        and report.omega is not None
        and report.kappa_certified
        and report.kappa != report.omega
    ):
        raise NumericalInconsistency(
            f"certified kappa = {report.kappa} disagrees with omega = {report.omega}"
        )

    _emit_report(report, args.format)
    uncertified = (report.kappa is not None and not report.kappa_certified) or (
        report.kappa2 is not None
        and not (report.kappa_certified or report.log_certified)
    )
    return 2 if uncertified else 0


def cmd_generate(args) -> int:
    spec = PairSpec(
        kind=args.kind, n=args.n, seed=args.seed, noise=args.noise, k=args.k
    )
    made = build_pair(spec)
    if isinstance(made, SelfDualPair):
        pair = made.pair
        write_selfdual_header(f"{args.out}_N.txt", made.N)
        print(f"wrote {args.out}_N.txt")
    else:
        pair = made
    write_matrix(f"{args.out}_U.txt", pair.U)
    write_matrix(f"{args.out}_V.txt", pair.V)
    print(f"wrote {args.out}_U.txt")
    print(f"wrote {args.out}_V.txt")
    print(f"delta = {pair.delta:.9g}")
    return 0


def _open_out(path):
    return open(path, "w") if path else sys.stdout


def cmd_bounds(args) -> int:
    deltas = np.linspace(args.start, args.stop, args.points)
    out = _open_out(args.out)
    try:
        if args.curve == "beta":
            print("delta,beta,gap_guaranteed,gap_coarse", file=out)
            for d in deltas:
                b = beta(d)
                g = f"{np.sqrt(1 - b):.9g}" if b < 1 else ""
                c = f"{coarse_gap(d):.9g}" if d <= 0.2 else ""
                print(f"{d:.9g},{b:.9g},{g},{c}", file=out)
        elif args.curve == "gap":
            print("delta,gap_guaranteed,gap_coarse", file=out)
            for d in deltas:
                b = beta(d)
                g = f"{np.sqrt(1 - b):.9g}" if b < 1 else ""
                c = f"{coarse_gap(d):.9g}" if d <= 0.2 else ""
                print(f"{d:.9g},{g},{c}", file=out)
        else:
            env = eta_envelope_f() if args.curve == "eta-f" else eta_envelope_h()
            heads = ",".join(f"line{i}" for i in range(len(env.lines)))
            print(f"delta,{heads},envelope", file=out)
            for d in deltas:
                vals = [line(d) for line in env.lines]
                row = ",".join(f"{v:.9g}" for v in vals)
                print(f"{d:.9g},{row},{min(vals):.9g}", file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_certify_log(args) -> int:
    mesh = None
    if args.mesh:
        mesh = np.linspace(0.0, 1.0, args.mesh)

    def write_csv(report):
        if not args.out:
            return
        with open(args.out, "w") as fh:
            print("stage,t,bound", file=fh)
            for stage, t, v in report.rows():
                print(f"{stage},{t:.9g},{v:.9g}", file=fh)
        print(f"wrote {args.out}")

    try:
        report = certify_log_path(args.delta, mesh=mesh)
    except CertificationFailed as exc:
        report = exc.report
        if report is not None:
            write_csv(report)
            print(
                f"FAIL delta={args.delta:.9g} max_bound={report.max_bound:.6f} "
                f"threshold={report.threshold}"
            )
            print(
                f"step_sums stage1={report.step_sums[0]:.4f} "
                f"stage2={report.step_sums[1]:.4f}"
            )
        else:
            print(f"FAIL {exc}")
        return 2
    write_csv(report)
    print(
        f"PASS delta={args.delta:.9g} max_bound={report.max_bound:.6f} "
        f"threshold={report.threshold}"
    )
    print(
        f"step_sums stage1={report.step_sums[0]:.4f} "
        f"stage2={report.step_sums[1]:.4f}"
    )
    return 0


def cmd_fourier(args) -> int:
    c = fourier_coefficients_h(args.max_n, args.series_k)
    print("n,a_imag,b,c")
    for n in range(args.max_n + 1):
        amp = F_AMPLITUDES[n - 1] if 1 <= n <= len(F_AMPLITUDES) else 0.0
        a_im = -amp / 2 if amp else 0.0
        print(f"{n},{a_im:.9g},{(-1) ** n * c[n]:.9g},{c[n]:.9g}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="acbott",
        description="Topological indices of almost-commuting unitary pairs "
        "with certified error bounds.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ix = sub.add_parser("index", help="compute indices of a stored pair")
    ix.add_argument("u_file")
    ix.add_argument("v_file")
    ix.add_argument("--method", choices=("trig", "log"), default="trig")
    ix.add_argument("--self-dual", action="store_true", dest="self_dual")
    ix.add_argument("--header", help="one-line N header file to cross-check")
    ix.add_argument("--polar", action="store_true", help="apply unitary part first")
    ix.add_argument("--unitary-tol", type=float, default=DEFAULT_TOL.unitary)
    ix.add_argument("--format", choices=("text", "kv", "csv"), default="text")
    ix.set_defaults(func=cmd_index)

    gen = sub.add_parser("generate", help="write an example pair to files")
    gen.add_argument(
        "--kind",
        choices=(
            "cyclic_shift",
            "commuting_random",
            "perturbed",
            "direct_sum",
            "selfdual_doubling",
        ),
        required=True,
    )
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, default=-1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--noise", type=float, default=0.0)
    gen.add_argument("--out", required=True, help="output file prefix")
    gen.set_defaults(func=cmd_generate)

    bd = sub.add_parser("bounds", help="emit bound curves as CSV")
    bd.add_argument("--curve", choices=("beta", "eta-f", "eta-h", "gap"), required=True)
    bd.add_argument("--from", dest="start", type=float, default=0.0)
    bd.add_argument("--to", dest="stop", type=float, default=0.25)
    bd.add_argument("--points", type=int, default=101)
    bd.add_argument("--out")
    bd.set_defaults(func=cmd_bounds)

    cl = sub.add_parser("certify-log", help="certify the log-method homotopy")
    cl.add_argument("--delta", type=float, required=True)
    cl.add_argument("--mesh", type=int, help="mesh points per stage")
    cl.add_argument("--out", help="CSV of per-point bound values")
    cl.set_defaults(func=cmd_certify_log)

    fr = sub.add_parser("fourier", help="coefficient table of the standard triple")
    fr.add_argument("--max-n", type=int, default=5)
    fr.add_argument("--series-k", type=int, default=7)
    fr.set_defaults(func=cmd_fourier)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AlmostCommutingError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
