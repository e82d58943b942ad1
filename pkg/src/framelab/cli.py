"""Command-line entry point.

One binary with a subcommand tree mirroring the library modules; every
analysis prints a deterministic JSON envelope (schema 1, sorted keys) or
CSV rows, so fixed-seed sweeps are byte-identical across runs.  Exit code
0 means success or verdict pass, 1 a verdict fail, 2 a usage or input
error.  FRAMELAB_TOLERANCE overrides the default tolerance globally.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import bspline as bsp
from . import dilation as dil
from . import exponentials as expo
from .core import (
    FrameLabError,
    VectorSystem,
    canonical_dual,
    cross_gram,
    duality_check,
    frame_bounds,
    random_system,
    riesz_bounds,
)
from .extension import extend_to_dual_pair, verify_extension
from .gabor import (
    GaborSpec,
    SampledWindow,
    TFPoint,
    duality_principle_check,
    frame_operator_commutation_check,
    gabor_extension,
    gabor_frame_bounds,
    gabor_sweep_row,
    hrt_independence,
    ron_shen_duality_check,
    sampled_gaussian,
    sampled_indicator,
    wexler_raz_check,
)
from .rdual import (
    OrthonormalPair,
    n_sequence,
    r_dual,
    verify_dual_pair_biorthogonality,
    verify_rdual_theorem,
)

SCHEMA_VERSION = 1


# -- input parsing helpers ----------------------------------------------------


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _vector_system(path) -> VectorSystem:
    if path.endswith(".csv"):
        with open(path) as fh:
            return VectorSystem.from_csv(fh.read())
    return VectorSystem.from_json_dict(_load_json(path))


def _floats(text):
    return [float(tok) for tok in text.split(",") if tok.strip() != ""]


def _range_spec(text):
    """Comma list of values, or start:stop:step (stop inclusive)."""
    if ":" in text:
        start, stop, step = (float(t) for t in text.split(":"))
        return list(np.arange(start, stop + step / 2, step))
    return _floats(text)


def _lattice_window(spec: str, L: int, rng) -> np.ndarray:
    if spec == "random":
        return rng.standard_normal(L) + 1j * rng.standard_normal(L)
    if spec == "delta":
        w = np.zeros(L, dtype=complex)
        w[0] = 1.0
        return w
    if spec == "ones":
        return np.ones(L, dtype=complex)
    data = _load_json(spec)
    if isinstance(data, dict) and "window" in data:
        data = data["window"]
    return np.array([complex(re, im) for re, im in data])


def _sampled_window(spec: str, step: float) -> SampledWindow:
    if spec.startswith("indicator"):
        parts = spec.split(":")
        lo = float(parts[1]) if len(parts) > 1 else 0.0
        hi = float(parts[2]) if len(parts) > 2 else 1.0
        return sampled_indicator(lo, hi, step)
    if spec.startswith("gaussian"):
        parts = spec.split(":")
        hw = float(parts[1]) if len(parts) > 1 else 8.0
        return sampled_gaussian(hw, step)
    if spec.startswith("bspline"):
        order = int(spec.split(":")[1])
        return bsp.sample_bspline(order, step)
    return SampledWindow.from_json_dict(_load_json(spec))


def _freq_function(spec: str) -> dil.FreqFunction:
    if spec == "shannon":
        return dil.shannon_wavelet()
    if spec == "zero":
        base = dil.shannon_wavelet()
        return dil.FreqFunction(base.start, base.step, np.zeros(base.count), base.band)
    if spec.startswith("indicator"):
        parts = spec.split(":")
        lo, hi = float(parts[1]), float(parts[2])
        amp = float(parts[3]) if len(parts) > 3 else 1.0
        return dil.freq_indicator(lo, hi, amplitude=amp)
    return dil.FreqFunction.from_json_dict(_load_json(spec))


def _tf_points(text):
    pts = []
    for chunk in text.split(";"):
        lam, mu = (float(t) for t in chunk.split(","))
        pts.append(TFPoint(lam, mu))
    return pts


def _pair_from_args(args, dim) -> OrthonormalPair:
    if getattr(args, "e_basis", None) and getattr(args, "h_basis", None):
        return OrthonormalPair(_vector_system(args.e_basis), _vector_system(args.h_basis))
    if getattr(args, "random_pair", False):
        return OrthonormalPair.random(np.random.default_rng(args.seed), dim)
    return OrthonormalPair.standard(dim)


# -- output ------------------------------------------------------------------


def _json_ready(obj):
    if isinstance(obj, dict):
        return {str(k): _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return value if np.isfinite(value) else repr(value)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return _json_ready(obj.tolist())
    return obj


def emit(args, command: str, result: dict, rows=None, fieldnames=None) -> None:
    fmt = args.format
    if fmt == "csv":
        if rows is None:
            raise FrameLabError(f"{command} has no tabular output; use --format json")
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row[k] for k in fieldnames})
        text = buf.getvalue()
    elif fmt == "pretty":
        lines = [f"# {command}"]
        for key, value in sorted(_json_ready(result).items()):
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
        text = "\n".join(lines) + "\n"
    else:
        envelope = {"schema": SCHEMA_VERSION, "command": command, "result": _json_ready(result)}
        text = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict_exit(report) -> int:
    return 1 if report.verdict == "fail" else 0


# -- handlers ------------------------------------------------------------------


def cmd_frame_bounds(args):
    system = _vector_system(args.file)
    fb = frame_bounds(system, args.mode)
    emit(args, "frame bounds", {"bounds": fb.to_dict(), "mode": args.mode})
    return 0


def cmd_frame_riesz(args):
    rb = riesz_bounds(_vector_system(args.file))
    emit(args, "frame riesz", {"bounds": rb.to_dict()})
    return 0


def cmd_frame_dual(args):
    dual = canonical_dual(_vector_system(args.file), args.mode, args.tolerance)
    emit(args, "frame dual", {"system": dual.to_json_dict()})
    return 0


def cmd_frame_check_dual(args):
    report = duality_check(_vector_system(args.f), _vector_system(args.g), args.tolerance)
    emit(args, "frame check-dual", {"report": report.to_dict()})
    return _verdict_exit(report)


def cmd_frame_gram(args):
    M = cross_gram(_vector_system(args.f), _vector_system(args.g))
    emit(args, "frame gram", {"matrix": [[[z.real, z.imag] for z in row] for row in M]})
    return 0


def cmd_rdual_transform(args):
    f = _vector_system(args.file)
    pair = _pair_from_args(args, f.ambient_dim)
    emit(args, "rdual transform", {"system": r_dual(f, pair).to_json_dict()})
    return 0


def cmd_rdual_verify(args):
    if args.file:
        f = _vector_system(args.file)
    else:
        rng = np.random.default_rng(args.seed)
        f = random_system(rng, args.random_dim, args.random_dim)
    pair = _pair_from_args(args, f.ambient_dim)
    rep = verify_rdual_theorem(f, pair)
    tol = args.tolerance if args.tolerance is not None else 1e-10
    result = {
        "frame_bounds": rep.frame_f.to_dict(),
        "riesz_bounds": rep.riesz_omega.to_dict(),
        "bound_gap": rep.bound_gap,
        "involution_residual": rep.involution_residual,
        "passes": rep.passes(tol),
    }
    emit(args, "rdual verify", result)
    return 0 if rep.passes(tol) else 1


def cmd_rdual_check_dual_pair(args):
    f, g = _vector_system(args.f), _vector_system(args.g)
    pair = _pair_from_args(args, f.ambient_dim)
    report = verify_dual_pair_biorthogonality(f, g, pair, args.tolerance)
    emit(args, "rdual check-dual-pair", {"report": report.to_dict()})
    return _verdict_exit(report)


def cmd_rdual_nseq(args):
    f, omega = _vector_system(args.f), _vector_system(args.omega)
    pair = _pair_from_args(args, f.ambient_dim)
    ns = n_sequence(f, omega, pair, args.tolerance)
    emit(args, "rdual nseq", {
        "bounds_on_span": ns.tight_bound_estimate.to_dict(),
        "report": ns.report.to_dict(),
        "system": ns.vectors.to_json_dict(),
    })
    return _verdict_exit(ns.report)


def cmd_extend_run(args):
    f, g = _vector_system(args.f), _vector_system(args.g)
    a = _vector_system(args.a) if args.a else None
    b = _vector_system(args.b) if args.b else None
    p, q = extend_to_dual_pair(f, g, a, b, args.tolerance, prune_zero=args.prune)
    report = verify_extension(f, g, p, q, args.tolerance)
    emit(args, "extend run", {
        "p": p.to_json_dict(), "q": q.to_json_dict(), "report": report.to_dict(),
    })
    return _verdict_exit(report)


def _gabor_spec_from_args(args, window_attr="window"):
    rng = np.random.default_rng(args.seed)
    window = _lattice_window(getattr(args, window_attr), args.L, rng)
    return GaborSpec(args.L, args.a, args.b, window)


def cmd_gabor_bounds(args):
    fb = gabor_frame_bounds(_gabor_spec_from_args(args))
    emit(args, "gabor bounds", {"bounds": fb.to_dict()})
    return 0


def cmd_gabor_duality(args):
    report = duality_principle_check(_gabor_spec_from_args(args), args.tolerance)
    emit(args, "gabor duality", {"report": report.to_dict()})
    return _verdict_exit(report)


def cmd_gabor_wexler_raz(args):
    rng = np.random.default_rng(args.seed)
    wg = _lattice_window(args.window_g, args.L, rng)
    if args.window_h == "canonical-dual":
        from .gabor import canonical_dual_window

        wh = canonical_dual_window(GaborSpec(args.L, args.a, args.b, wg))
    else:
        wh = _lattice_window(args.window_h, args.L, rng)
    report = wexler_raz_check(
        GaborSpec(args.L, args.a, args.b, wg), GaborSpec(args.L, args.a, args.b, wh),
        args.tolerance,
    )
    emit(args, "gabor wexler-raz", {"report": report.to_dict()})
    return _verdict_exit(report)


def cmd_gabor_commute(args):
    report = frame_operator_commutation_check(_gabor_spec_from_args(args), args.tolerance)
    emit(args, "gabor commute", {"report": report.to_dict()})
    return _verdict_exit(report)


def cmd_gabor_ron_shen(args):
    g = _sampled_window(args.window_g, args.step)
    h = _sampled_window(args.window_h, args.step)
    report = ron_shen_duality_check(g, h, args.a, args.b, args.tolerance)
    emit(args, "gabor ron-shen", {"report": report.to_dict()})
    return _verdict_exit(report)


def cmd_gabor_extend(args):
    g1 = _sampled_window(args.window_g, args.step)
    h1 = _sampled_window(args.window_h, args.step)
    g2, h2 = gabor_extension(g1, h1, args.a, args.b, L=args.L)
    emit(args, "gabor extend", {"g2": g2.to_json_dict(), "h2": h2.to_json_dict()})
    return 0


def cmd_gabor_hrt(args):
    g = _sampled_window(args.window, args.step)
    report = hrt_independence(g, _tf_points(args.points), args.tolerance)
    emit(args, "gabor hrt", {"report": report.to_dict()})
    return _verdict_exit(report)


def _sweep_task(task):
    L, a, b, seed = task
    rng = np.random.default_rng(seed)
    window = rng.standard_normal(L) + 1j * rng.standard_normal(L)
    return gabor_sweep_row(L, a, b, window)


def cmd_gabor_sweep(args):
    lengths = [int(v) for v in _floats(args.L_list)]
    tasks = []
    for L in lengths:
        divisors = [d for d in range(1, L + 1) if L % d == 0]
        for a in divisors:
            for b in divisors:
                for trial in range(args.windows):
                    tasks.append((L, a, b, args.seed + 1_000_003 * len(tasks)))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_task, tasks, chunksize=16))
    else:
        rows = [_sweep_task(t) for t in tasks]
    worst = max(row["residual"] for row in rows) if rows else 0.0
    fields = ["L", "a", "b", "lowerA", "upperB", "adjoint_lower", "adjoint_upper", "residual"]
    emit(args, "gabor sweep", {"rows": rows, "worst_residual": worst}, rows=rows, fieldnames=fields)
    return 0


def cmd_wavelet_check_dual(args):
    psi = _freq_function(args.psi)
    psit = _freq_function(args.psit) if args.psit else psi
    report = dil.wavelet_duality_check(psi, psit, b=args.b, tolerance=args.tolerance)
    emit(args, "wavelet check-dual", {"report": report.to_dict()})
    return _verdict_exit(report)


def _wp_grid(args):
    return dil.WavePacketGrid(
        a_values=_floats(args.a_values), b=args.b, c_values=_range_spec(args.c_values),
        gamma_points=args.gamma_points,
    )


def cmd_wavepacket_bounds(args):
    g = _freq_function(args.g)
    grid = _wp_grid(args)
    bounds, report = dil.wave_packet_frame_bounds(g, grid, ceiling=args.ceiling)
    bessel, _ = dil.wave_packet_bessel_bound(g, grid, ceiling=args.ceiling)
    emit(args, "wavepacket bounds", {
        "bounds": bounds.to_dict(),
        "bessel_bound": bessel,
        "report": report.to_dict(),
    })
    return _verdict_exit(report)


def cmd_wavepacket_check_dual(args):
    psi = _freq_function(args.psi)
    psit = _freq_function(args.psit) if args.psit else psi
    report = dil.wave_packet_duality_check(
        psi, psit, a=args.a, b=args.b, c_values=_range_spec(args.c_values),
        tolerance=args.tolerance, full_check=not args.skip_full,
    )
    emit(args, "wavepacket check-dual", {"report": report.to_dict()})
    return _verdict_exit(report)


def cmd_wavepacket_lic(args):
    psi = _freq_function(args.psi)
    f = _freq_function(args.f)
    value, report = dil.lic_estimate(psi, _wp_grid(args), f)
    emit(args, "wavepacket lic", {"value": value, "report": report.to_dict()})
    return 0


def cmd_wavepacket_bessel_probe(args):
    g = dil.freq_indicator(0.0, 1.0, step=1 / 16, amplitude=args.amplitude)
    rows, report = dil.bessel_divergence_probe(
        g, b=args.b, c_step=args.c_step, ceiling=args.ceiling, rule=args.rule,
    )
    table = [{"terms": terms, "partial_sum": value} for terms, value in rows]
    emit(args, "wavepacket bessel-probe", {"rows": table, "report": report.to_dict()},
         rows=table, fieldnames=["terms", "partial_sum"])
    return _verdict_exit(report)


def cmd_bspline_eval(args):
    xs = _floats(args.x)
    values = bsp.bspline_eval(args.N, xs)
    emit(args, "bspline eval", {"x": xs, "values": [float(v) for v in values]})
    return 0


def cmd_bspline_fourier(args):
    gs = _floats(args.gamma)
    values = bsp.bspline_fourier(args.N, gs)
    emit(args, "bspline fourier", {
        "gamma": gs, "values": [[v.real, v.imag] for v in np.atleast_1d(values)],
    })
    return 0


def cmd_bspline_props(args):
    report = bsp.property_suite(args.N, args.tolerance)
    emit(args, "bspline props", {"report": report.to_dict()})
    return _verdict_exit(report)


def _scan_task(task):
    N, a, b, period_points, attach = task
    cell = bsp.classify_cell(N, a, b, period_points, attach)
    d = cell.to_dict()
    return {"a": d["a"], "b": d["b"], "status": d["status"],
            "A": d["lower"], "B": d["upper"], "method": d["method"]}


def cmd_bspline_scan(args):
    a_values = _range_spec(args.a_grid)
    b_values = _range_spec(args.b_grid)
    tasks = [
        (args.N, float(a), float(b), args.period_points, not args.no_estimates)
        for a in a_values
        for b in b_values
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scan_task, tasks, chunksize=4))
    else:
        rows = [_scan_task(t) for t in tasks]
    fields = ["a", "b", "status", "A", "B", "method"]
    emit(args, "bspline scan", {"rows": rows}, rows=rows, fieldnames=fields)
    return 0


def cmd_bspline_dual_window(args):
    window, report = bsp.dual_window_solve(
        args.N, args.b, shift_range=args.K,
        tolerance=args.tolerance if args.tolerance is not None else 1e-8,
    )
    emit(args, "bspline dual-window", {
        "window": window.to_json_dict(), "report": report.to_dict(),
    })
    return _verdict_exit(report)


def _lambda_set(args) -> expo.LambdaSet:
    if getattr(args, "file", None):
        return expo.LambdaSet.from_json_dict(_load_json(args.file))
    if not args.lambdas:
        raise FrameLabError("supply --lambdas or --file")
    return expo.LambdaSet(_floats(args.lambdas))


def cmd_exp_gram(args):
    G = expo.exp_gram(_lambda_set(args))
    emit(args, "exp gram", {"matrix": [[[z.real, z.imag] for z in row] for row in G]})
    return 0


def cmd_exp_bound(args):
    emit(args, "exp bound", {"lower_bound": expo.lower_bound(_lambda_set(args), dps=args.dps)})
    return 0


def cmd_exp_crude(args):
    got = expo.crude_bound(args.N, args.delta)
    emit(args, "exp crude", {"value": got.value, "log10": got.log10})
    return 0


def cmd_exp_decay(args):
    rows = [row.to_dict() for row in expo.decay_study(args.family, args.n_max, dps=args.dps)]
    fields = ["N", "lower", "crude", "ratio", "log10_lower", "log10_crude"]
    emit(args, "exp decay", {"rows": rows}, rows=rows, fieldnames=fields)
    return 0


# -- parser --------------------------------------------------------------------


def _common(parser):
    parser.add_argument("--tolerance", type=float, default=None,
                        help="override the pass tolerance (default: FRAMELAB_TOLERANCE or 1e-10)")
    parser.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    parser.add_argument("--output", default=None, help="write to a file instead of stdout")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized inputs")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")


def _add(sub, name, handler, help_text, configure=None):
    parser = sub.add_parser(name, help=help_text, description=help_text)
    _common(parser)
    if configure:
        configure(parser)
    parser.set_defaults(handler=handler)
    return parser


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="framelab",
        description="Numerical laboratory for frame theory at desk scale.",
    )
    groups = root.add_subparsers(dest="group", required=True)

    frame = groups.add_parser("frame", help="synthesis/analysis operators, bounds, duals").add_subparsers(
        dest="op", required=True)
    _add(frame, "bounds", cmd_frame_bounds,
         "optimal frame bounds (extreme eigenvalues of the frame operator)",
         lambda p: (p.add_argument("--file", required=True),
                    p.add_argument("--mode", choices=("full_space", "span"), default="full_space")))
    _add(frame, "riesz", cmd_frame_riesz,
         "optimal Riesz-sequence bounds (extreme Gram eigenvalues)",
         lambda p: p.add_argument("--file", required=True))
    _add(frame, "dual", cmd_frame_dual,
         "canonical dual family via the inverse frame operator",
         lambda p: (p.add_argument("--file", required=True),
                    p.add_argument("--mode", choices=("full_space", "span"), default="full_space")))
    _add(frame, "check-dual", cmd_frame_check_dual,
         "dual-pair reconstruction identity for two families",
         lambda p: (p.add_argument("--f", required=True), p.add_argument("--g", required=True)))
    _add(frame, "gram", cmd_frame_gram,
         "cross Gram matrix <f_j, g_k> (biorthogonality when it is the identity)",
         lambda p: (p.add_argument("--f", required=True), p.add_argument("--g", required=True)))

    rdual = groups.add_parser("rdual", help="R-dual transform and its duality theorems").add_subparsers(
        dest="op", required=True)

    def pair_opts(p):
        p.add_argument("--e-basis", dest="e_basis", default=None)
        p.add_argument("--h-basis", dest="h_basis", default=None)
        p.add_argument("--random-pair", dest="random_pair", action="store_true")

    _add(rdual, "transform", cmd_rdual_transform,
         "the R-dual family across two orthonormal bases",
         lambda p: (p.add_argument("--file", required=True), pair_opts(p)))
    _add(rdual, "verify", cmd_rdual_verify,
         "R-dual bound transfer: frame bounds become Riesz-sequence bounds, with involution",
         lambda p: (p.add_argument("--file", default=None),
                    p.add_argument("--random-dim", dest="random_dim", type=int, default=8),
                    pair_opts(p)))
    _add(rdual, "check-dual-pair", cmd_rdual_check_dual_pair,
         "dual frames if and only if the R-duals are biorthogonal",
         lambda p: (p.add_argument("--f", required=True), p.add_argument("--g", required=True),
                    pair_opts(p)))
    _add(rdual, "nseq", cmd_rdual_nseq,
         "tight-frame-with-bound-1 criterion on the span of a Riesz sequence",
         lambda p: (p.add_argument("--f", required=True), p.add_argument("--omega", required=True),
                    pair_opts(p)))

    extend = groups.add_parser("extend", help="complete Bessel family pairs to dual frames").add_subparsers(
        dest="op", required=True)
    _add(extend, "run", cmd_extend_run,
         "dual-frame extension: append the deficiency image of an auxiliary dual pair",
         lambda p: (p.add_argument("--f", required=True), p.add_argument("--g", required=True),
                    p.add_argument("--a", default=None), p.add_argument("--b", default=None),
                    p.add_argument("--prune", action="store_true",
                                   help="drop zero extension vectors and their partners")))

    gabor = groups.add_parser("gabor", help="finite cyclic lattices and sampled-line checks").add_subparsers(
        dest="op", required=True)

    def lattice_opts(p):
        p.add_argument("--L", type=int, required=True)
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)

    _add(gabor, "bounds", cmd_gabor_bounds, "optimal bounds of the lattice system",
         lambda p: (lattice_opts(p), p.add_argument("--window", default="random")))
    _add(gabor, "duality", cmd_gabor_duality,
         "duality principle: lattice frame bounds equal adjoint-lattice Riesz bounds",
         lambda p: (lattice_opts(p), p.add_argument("--window", default="random")))
    _add(gabor, "wexler-raz", cmd_gabor_wexler_raz,
         "Wexler-Raz: dual frames iff the scaled adjoint systems are biorthogonal",
         lambda p: (lattice_opts(p),
                    p.add_argument("--window-g", dest="window_g", default="random"),
                    p.add_argument("--window-h", dest="window_h", default="canonical-dual")))
    _add(gabor, "commute", cmd_gabor_commute,
         "frame operator commutes with every lattice time-frequency shift",
         lambda p: (lattice_opts(p), p.add_argument("--window", default="random")))
    _add(gabor, "ron-shen", cmd_gabor_ron_shen,
         "Ron-Shen / Janssen criterion: translation sums equal b at shift zero and vanish otherwise",
         lambda p: (p.add_argument("--window-g", dest="window_g", required=True),
                    p.add_argument("--window-h", dest="window_h", required=True),
                    p.add_argument("--a", type=float, required=True),
                    p.add_argument("--b", type=float, required=True),
                    p.add_argument("--step", type=float, default=1 / 64)))
    _add(gabor, "extend", cmd_gabor_extend,
         "Gabor-structured dual-pair extension on a cyclic realization",
         lambda p: (p.add_argument("--window-g", dest="window_g", required=True),
                    p.add_argument("--window-h", dest="window_h", required=True),
                    p.add_argument("--a", type=float, required=True),
                    p.add_argument("--b", type=float, required=True),
                    p.add_argument("--L", type=int, default=None),
                    p.add_argument("--step", type=float, default=1 / 64)))
    _add(gabor, "hrt", cmd_gabor_hrt,
         "Heil-Ramanathan-Topiwala probe: smallest singular value of finite time-frequency shifts",
         lambda p: (p.add_argument("--window", required=True),
                    p.add_argument("--points", required=True,
                                   help="semicolon-separated lam,mu pairs, e.g. '0,0;1,0;0,1'"),
                    p.add_argument("--step", type=float, default=1 / 64)))
    _add(gabor, "sweep", cmd_gabor_sweep,
         "duality-principle sweep over all divisor lattices with random windows",
         lambda p: (p.add_argument("--L-list", dest="L_list", default="4,6,8,12"),
                    p.add_argument("--windows", type=int, default=5)))

    wavelet = groups.add_parser("wavelet", help="dyadic dilation systems on the frequency side").add_subparsers(
        dest="op", required=True)
    _add(wavelet, "check-dual", cmd_wavelet_check_dual,
         "dual dyadic wavelet frames: scaling sums equal b, dyadic-ratio shifted sums vanish",
         lambda p: (p.add_argument("--psi", default="shannon"),
                    p.add_argument("--psit", default=None),
                    p.add_argument("--b", type=float, default=1.0)))

    wavepacket = groups.add_parser("wavepacket", help="combined dilation/translation/modulation systems").add_subparsers(
        dest="op", required=True)

    def wp_opts(p):
        p.add_argument("--a-values", dest="a_values", default="1")
        p.add_argument("--b", type=float, default=1.0)
        p.add_argument("--c-values", dest="c_values", default="-8:8:1")
        p.add_argument("--gamma-points", dest="gamma_points", type=int, default=4096)
        p.add_argument("--ceiling", type=float, default=1e15)

    _add(wavepacket, "bounds", cmd_wavepacket_bounds,
         "translation-overlap sufficient bounds (Bessel bound and frame certificate)",
         lambda p: (p.add_argument("--g", required=True), wp_opts(p)))
    _add(wavepacket, "check-dual", cmd_wavepacket_check_dual,
         "dual wave-packet frames: offset sums, shifted products, exact ratio classes",
         lambda p: (p.add_argument("--psi", required=True), p.add_argument("--psit", default=None),
                    p.add_argument("--a", type=float, default=2.0),
                    p.add_argument("--b", type=float, default=1.0),
                    p.add_argument("--c-values", dest="c_values", default="0"),
                    p.add_argument("--skip-full", dest="skip_full", action="store_true")))
    _add(wavepacket, "lic", cmd_wavepacket_lic,
         "local integrability sum of a class-D test function",
         lambda p: (p.add_argument("--psi", required=True), p.add_argument("--f", required=True),
                    wp_opts(p)))
    _add(wavepacket, "bessel-probe", cmd_wavepacket_bessel_probe,
         "divergence probe: covering offsets with bounded dilations defeat the Bessel bound",
         lambda p: (p.add_argument("--b", type=float, default=1.0),
                    p.add_argument("--c-step", dest="c_step", type=float, default=1.0),
                    p.add_argument("--amplitude", type=float, default=4.0),
                    p.add_argument("--ceiling", type=float, default=1e6),
                    p.add_argument("--rule", choices=("inverse_linear", "dyadic"),
                                   default="inverse_linear")))

    bspline = groups.add_parser("bspline", help="cardinal B-splines and their lattice phase diagram").add_subparsers(
        dest="op", required=True)
    _add(bspline, "eval", cmd_bspline_eval, "piecewise-polynomial values via the order recurrence",
         lambda p: (p.add_argument("--N", type=int, required=True),
                    p.add_argument("--x", required=True)))
    _add(bspline, "fourier", cmd_bspline_fourier, "closed-form transform values",
         lambda p: (p.add_argument("--N", type=int, required=True),
                    p.add_argument("--gamma", required=True)))
    _add(bspline, "props", cmd_bspline_props,
         "support, positivity, unit integral, partition of unity",
         lambda p: p.add_argument("--N", type=int, required=True))
    _add(bspline, "scan", cmd_bspline_scan,
         "phase diagram over (a, b): certified frame cells, certified failures, undecided",
         lambda p: (p.add_argument("--N", type=int, required=True),
                    p.add_argument("--a-grid", dest="a_grid", required=True),
                    p.add_argument("--b-grid", dest="b_grid", required=True),
                    p.add_argument("--period-points", dest="period_points", type=int, default=1024),
                    p.add_argument("--no-estimates", dest="no_estimates", action="store_true")))
    _add(bspline, "dual-window", cmd_bspline_dual_window,
         "dual window as a finite combination of integer shifts of the spline",
         lambda p: (p.add_argument("--N", type=int, required=True),
                    p.add_argument("--b", type=float, required=True),
                    p.add_argument("--K", type=int, default=None)))

    exp = groups.add_parser("exp", help="finite exponential systems on (-pi, pi)").add_subparsers(
        dest="op", required=True)
    _add(exp, "gram", cmd_exp_gram, "exact Gram matrix of the exponential system",
         lambda p: (p.add_argument("--lambdas", default=None),
                    p.add_argument("--file", default=None)))
    _add(exp, "bound", cmd_exp_bound, "optimal lower bound on the span (smallest Gram eigenvalue)",
         lambda p: (p.add_argument("--lambdas", default=None),
                    p.add_argument("--file", default=None),
                    p.add_argument("--dps", type=int, default=None)))
    _add(exp, "crude", cmd_exp_crude,
         "factorial lower-bound estimate, evaluated in log space",
         lambda p: (p.add_argument("--N", type=int, required=True),
                    p.add_argument("--delta", type=float, required=True)))
    _add(exp, "decay", cmd_exp_decay,
         "lower-bound decay table for nested frequency families",
         lambda p: (p.add_argument("--family", default="half_integer"),
                    p.add_argument("--n-max", dest="n_max", type=int, default=20),
                    p.add_argument("--dps", type=int, default=None)))

    return root


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except FrameLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input ({exc})", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
