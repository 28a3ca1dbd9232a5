"""Command-line front door: simulation sweeps, figure reproduction, bound
calculators, and the self-verification suites.

Exit codes: 0 success, 1 verification failure, 2 bad usage or domain error,
3 I/O failure.  Every command is deterministic for a fixed --seed; the CSV
timing column is the one nondeterministic field and --no-timing suppresses it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import assignment, cycles, matching, theory
from .estimators import EstimatorKind, estimate
from .experiments import (
    ExperimentConfig,
    run_experiment,
    run_recovery_sweep,
    run_rgg_sweep,
    write_csv,
    write_json,
)
from .figures import SegmentLayer, Series, line_chart_svg, scatter_svg
from .geometry import build_rgg
from .graphs import Graph
from .model import (
    NoiseBase,
    NoiseSpec,
    NormKind,
    PositionSpec,
    derive_seed,
    sample_instance,
)
from .theory import TheoryReport

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

_NOISE_FAMILIES = ("gaussian", "sphere", "uniform", "rademacher", "diagonal")
_POSITION_FAMILIES = ("gaussian", "uniform", "laplace", "diagonal-gaussian")


def _default_parallelism() -> int:
    try:
        return max(1, int(os.environ.get("PMLAB_THREADS", "1")))
    except ValueError:
        return 1


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from exc


def _position_spec(args) -> PositionSpec:
    name = args.pos
    d = args.d
    if name == "gaussian":
        return PositionSpec.gaussian(d)
    if name == "uniform":
        return PositionSpec.uniform_cube(d, args.pos_half_width)
    if name == "laplace":
        return PositionSpec.laplace(d)
    variances = _parse_floats(args.pos_variances) if args.pos_variances else (1.0,) * d
    if len(variances) == 1:
        variances = variances * d
    return PositionSpec.diagonal_gaussian(variances)


def _noise_spec(args, sigma: float = 1.0) -> NoiseSpec:
    name = args.noise
    d = args.d
    if name == "gaussian":
        return NoiseSpec.gaussian(d, sigma)
    if name == "sphere":
        return NoiseSpec.sphere(d, sigma)
    if name == "uniform":
        return NoiseSpec.uniform(d, sigma)
    if name == "rademacher":
        return NoiseSpec.rademacher(d, sigma)
    variances = _parse_floats(args.noise_variances) if args.noise_variances else (1.0,) * d
    if len(variances) == 1:
        variances = variances * d
    return NoiseSpec.diagonal_subgaussian(variances, NoiseBase(args.noise_base), sigma)


def _estimator_kinds(names: list[str], d: int, sigma_z: str | None) -> tuple[EstimatorKind, ...]:
    kinds = []
    for name in names:
        if name == "lssc":
            variances = _parse_floats(sigma_z) if sigma_z else (1.0,) * d
            if len(variances) == 1:
                variances = variances * d
            kinds.append(EstimatorKind.lssc(variances))
        else:
            kinds.append(EstimatorKind(name))
    return tuple(kinds)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- simulate -----------------------------------------------------------------


def cmd_simulate(args) -> int:
    position = _position_spec(args)
    noise = _noise_spec(args)
    grid = _parse_floats(args.sigma2)
    kinds = _estimator_kinds(args.estimator or ["lss"], args.d, args.sigma_z)
    config = ExperimentConfig(
        position=position,
        noise=noise,
        n=args.n,
        sigma2_grid=grid,
        trials=args.trials,
        estimators=kinds,
        master_seed=args.seed,
        parallelism=args.parallelism,
        experiment="simulate",
    )
    rows = run_experiment(config)
    write_csv(rows, args.out, include_timing=not args.no_timing)
    if args.json:
        write_json(rows, args.json, include_timing=not args.no_timing)
    return EXIT_OK


# -- figure: error rate vs noise level ----------------------------------------

_ERROR_RATE_GRIDS = {
    2: (1e-5, 3.162e-5, 1e-4, 3.162e-4, 1e-3, 3.162e-3, 1e-2),
    3: (1e-4, 3.162e-4, 1e-3, 3.162e-3, 1e-2, 3.162e-2, 1e-1),
}

_NOISE_LABELS = {
    "gaussian": "Gaussian",
    "sphere": "Spherical",
    "uniform": "Uniform",
    "rademacher": "Rademacher",
}


def cmd_figure_error_rate(args) -> int:
    d = args.d
    grid = _parse_floats(args.grid) if args.grid else _ERROR_RATE_GRIDS[d]
    trials = 10000 if args.full else args.trials
    tau = theory.tau_gaussian(d)
    n = args.n

    def prediction(sigma2: float, _kind) -> float:
        return tau * n * math.sqrt(sigma2) ** d

    all_rows = []
    chart_series = []
    for fam_idx, family in enumerate(("gaussian", "sphere", "uniform", "rademacher")):
        noise = {
            "gaussian": NoiseSpec.gaussian,
            "sphere": NoiseSpec.sphere,
            "uniform": NoiseSpec.uniform,
            "rademacher": NoiseSpec.rademacher,
        }[family](d, 1.0)
        config = ExperimentConfig(
            position=PositionSpec.gaussian(d),
            noise=noise,
            n=n,
            sigma2_grid=grid,
            trials=trials,
            estimators=(EstimatorKind.lss(),),
            master_seed=derive_seed(args.seed, fam_idx),
            parallelism=args.parallelism,
            experiment="error-rate",
        )
        rows = run_experiment(config, theory_fn=prediction)
        all_rows.extend(rows)
        chart_series.append(
            Series(
                label=_NOISE_LABELS[family],
                points=[(row.sigma2, row.mean_error_rate) for row in rows],
            )
        )
    chart_series.append(
        Series(
            label="Gaussian prediction",
            points=[(s2, prediction(s2, None)) for s2 in grid],
            color="#444444",
            dashed=True,
        )
    )
    write_csv(all_rows, args.out_csv, include_timing=not args.no_timing)
    svg = line_chart_svg(
        chart_series,
        x_label="noise variance",
        y_label="mean error rate",
        title=f"Matching error rate, n={n}, d={d}, {trials} trials",
    )
    _write_text(args.out_svg, svg)
    return EXIT_OK


# -- figure: geometric graph vs mistakes --------------------------------------


def cmd_figure_rgg(args) -> int:
    n = 3000 if args.full else args.n
    sigma2 = args.sigma2
    sigma = math.sqrt(sigma2)
    inst = sample_instance(
        PositionSpec.gaussian(2), NoiseSpec.gaussian(2, sigma), n, args.seed
    )
    pi_hat = estimate(inst, EstimatorKind.lss())
    r = math.sqrt(2.0) * sigma
    rgg = build_rgg(inst.x, r) if r > 0 else Graph(n, frozenset())
    report = cycles.verify_gaug_bound(inst, lss_perm=pi_hat)

    correct, wrong = [], []
    for j in range(n):
        seg = (
            float(inst.y[j][0]),
            float(inst.y[j][1]),
            float(inst.x[pi_hat(j)][0]),
            float(inst.x[pi_hat(j)][1]),
        )
        (correct if pi_hat(j) == inst.pistar(j) else wrong).append(seg)
    edge_segs = [
        (
            float(inst.x[i][0]),
            float(inst.x[i][1]),
            float(inst.x[j][0]),
            float(inst.x[j][1]),
        )
        for i, j in rgg.sorted_edges()
    ]
    layers = [
        SegmentLayer(edge_segs, color="#0173b2", width=1.4, label="close initial pairs"),
        SegmentLayer(correct, color="#bbbbbb", width=0.8, label="correct match"),
        SegmentLayer(wrong, color="#d55e00", width=1.4, label="incorrect match"),
    ]
    svg = scatter_svg(
        [(float(p[0]), float(p[1])) for p in inst.x],
        layers,
        title=f"Least-squares matching, n={n}, noise variance {sigma2:g}",
    )
    _write_text(args.out_svg, svg)
    summary = {
        "n": n,
        "sigma2": sigma2,
        "radius": r,
        "rgg_edges": rgg.edge_count,
        "mistakes": report.hamming,
        "augmenting_pair_matching": report.matching_size,
        "bound_holds": report.holds,
        "seed": args.seed,
    }
    if args.out_json:
        _write_text(args.out_json, json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


# -- recovery sweep ------------------------------------------------------------


def cmd_recovery(args) -> int:
    d = args.d
    sigma_x2 = _parse_floats(args.sigma_x2)
    sigma_z2 = _parse_floats(args.sigma_z2)
    if len(sigma_x2) == 1:
        sigma_x2 = sigma_x2 * d
    if len(sigma_z2) == 1:
        sigma_z2 = sigma_z2 * d
    if len(sigma_x2) != d or len(sigma_z2) != d:
        raise ValueError("variance lists must have length d (or a single value)")
    position = PositionSpec.diagonal_gaussian(sigma_x2)
    noise = NoiseSpec.diagonal_subgaussian(sigma_z2, NoiseBase(args.noise_base), sigma=1.0)
    names = args.estimator or ["lss", "lssc"]
    kinds = []
    for name in names:
        if name == "lssc":
            kinds.append(EstimatorKind.lssc(sigma_z2))
        elif name == "lss":
            kinds.append(EstimatorKind.lss())
        else:
            raise ValueError("recovery sweep supports the assignment estimators only")
    rows = run_recovery_sweep(
        position,
        noise,
        n=args.n,
        trials=args.trials,
        master_seed=args.seed,
        estimators=tuple(kinds),
        parallelism=args.parallelism,
    )
    write_csv(rows, args.out, include_timing=not args.no_timing)
    if args.json:
        write_json(rows, args.json, include_timing=not args.no_timing)
    for row in rows:
        print(
            json.dumps(
                {
                    "estimator": row.estimator_label,
                    "perfect_recovery_frac": row.perfect_recovery_fraction,
                    "snr": row.theory_value,
                },
                sort_keys=True,
            )
        )
    return EXIT_OK


# -- geometric graph sweep ------------------------------------------------------


def cmd_rgg_sweep(args) -> int:
    position = _position_spec(args)
    rows = run_rgg_sweep(
        position,
        n=args.n,
        r_grid=_parse_floats(args.r_grid),
        norm=NormKind(args.norm),
        trials=args.trials,
        master_seed=args.seed,
        gamma=args.gamma,
        beta=args.beta,
        rd=args.rd,
        parallelism=args.parallelism,
    )
    write_csv(rows, args.out, include_timing=not args.no_timing)
    if args.json:
        write_json(rows, args.json, include_timing=not args.no_timing)
    return EXIT_OK


# -- bounds --------------------------------------------------------------------


def _report(name: str, value: float, inputs: dict) -> TheoryReport:
    return TheoryReport(name=name, value=float(value), inputs=inputs, formula_ref=name)


def cmd_bounds(args) -> int:
    reports: list[TheoryReport] = []
    if args.formula == "minimax":
        inputs = dict(n=args.n, d=args.d, sigma=args.sigma, gamma=args.gamma, beta=args.beta)
        reports.append(
            _report(
                "minimax-lower-bound",
                theory.minimax_lower_bound(args.n, args.d, args.sigma, args.gamma, args.beta),
                inputs,
            )
        )
    elif args.formula == "matching":
        inputs = dict(n=args.n, d=args.d, r=args.r, rd=args.rd, gamma=args.gamma, beta=args.beta)
        reports.append(
            _report(
                "matching-size-lower-bound",
                theory.matching_size_lower_bound(
                    args.n, args.d, args.r, args.rd, args.gamma, args.beta
                ),
                inputs,
            )
        )
    elif args.formula == "lss-upper":
        inputs = dict(n=args.n, d=args.d, sigma=args.sigma, k=args.k)
        reports.append(
            _report("lss-upper-bound", theory.lss_upper_bound(args.n, args.d, args.sigma, args.k), inputs)
        )
    elif args.formula == "tau":
        position = _position_spec(args)
        noise = _noise_spec(args)
        est = theory.tau_constant(position, noise, args.mc_samples, args.seed)
        inputs = dict(pos=args.pos, noise=args.noise, d=args.d, mc_samples=args.mc_samples)
        reports.append(_report("tau-constant", est.value, inputs))
        reports.append(_report("tau-constant-std-error", est.std_error, inputs))
    elif args.formula == "cycle-rate":
        position = _position_spec(args)
        noise = _noise_spec(args)
        est = theory.augmenting_2cycle_rate(position, noise, args.sigma, args.mc_samples, args.seed)
        inputs = dict(
            pos=args.pos, noise=args.noise, d=args.d, sigma=args.sigma, mc_samples=args.mc_samples
        )
        reports.append(_report("augmenting-2cycle-rate", est.value, inputs))
        reports.append(_report("augmenting-2cycle-rate-std-error", est.std_error, inputs))
    elif args.formula == "snr":
        sx = _parse_floats(args.sigma_x)
        sz = _parse_floats(args.sigma_z)
        inputs = dict(sigma_x=list(sx), sigma_z=list(sz), n=args.n)
        reports.append(_report("snr-lss", theory.snr_lss(sx, sz, args.n), inputs))
        reports.append(_report("snr-lssc", theory.snr_lssc(sx, sz, args.n), inputs))
    elif args.formula == "stable-ranks":
        sx = _parse_floats(args.sigma_x)
        sz = _parse_floats(args.sigma_z)
        ranks = theory.stable_ranks(sx, sz)
        inputs = dict(sigma_x=list(sx), sigma_z=list(sz))
        reports.append(_report("stable-rank-noise-times-signal", ranks.noise_times_signal, inputs))
        reports.append(_report("stable-rank-signal", ranks.signal, inputs))
        reports.append(_report("stable-rank-whitened-signal", ranks.whitened_signal, inputs))
    elif args.formula == "gaussian-q":
        reports.append(_report("gaussian-q", theory.gaussian_q(args.s), dict(s=args.s)))
    elif args.formula == "tv-lower":
        reports.append(
            _report(
                "gaussian-tv-lower",
                theory.gaussian_tv_lower(args.v_norm_sq),
                dict(v_norm_sq=args.v_norm_sq),
            )
        )
    elif args.formula == "log-regime":
        regime = theory.log_regime(args.a, args.sigma2)
        inputs = dict(a=args.a, sigma2=args.sigma2)
        reports.append(_report("log-regime-gamma-star", regime.gamma_star, inputs))
        reports.append(_report("log-regime-alpha", regime.alpha, inputs))
    elif args.formula == "hp":
        bounds = theory.hp_bounds(args.n, args.d, args.sigma, args.gamma, args.beta)
        inputs = dict(n=args.n, d=args.d, sigma=args.sigma, gamma=args.gamma, beta=args.beta)
        reports.append(_report("hp-matching-lower-bound", bounds.matching, inputs))
        reports.append(_report("hp-lss-lower-bound", bounds.lss, inputs))
        reports.append(
            _report("positive-probability-lower-bound", bounds.positive_probability, inputs)
        )
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown formula {args.formula!r}")
    for report in reports:
        print(report.to_json())
    return EXIT_OK


# -- verify --------------------------------------------------------------------


def _suite_lap_vs_brute(quick: bool) -> tuple[bool, str]:
    rng = np.random.default_rng(101)
    count = 100 if quick else 200
    for idx in range(count):
        n = int(rng.integers(2, 8))
        if idx % 2 == 0:
            cost = rng.integers(0, 10, (n, n)).astype(float)
        else:
            cost = rng.random((n, n))
        fast = assignment.solve_lap_min(cost)
        brute = assignment.solve_lap_brute(cost)
        if assignment.lap_objective(cost, fast) != assignment.lap_objective(cost, brute):
            return False, f"objective mismatch on case {idx} (n={n})"
    return True, f"{count} instances"


def _suite_matching_vs_brute(quick: bool) -> tuple[bool, str]:
    rng = np.random.default_rng(202)
    count = 75 if quick else 150
    for idx in range(count):
        n = int(rng.integers(2, 13))
        mask = rng.random((n, n)) < 0.3
        edges = frozenset(
            (i, j) for i in range(n) for j in range(i + 1, n) if mask[i, j]
        )
        g = Graph(n, edges)
        got = len(matching.max_matching(g))
        want = len(matching.max_matching_brute(g))
        if got != want:
            return False, f"cardinality mismatch on case {idx} ({got} != {want})"
    return True, f"{count} graphs"


def _suite_gaug_bound(quick: bool) -> tuple[bool, str]:
    sigmas2 = (1e-6, 1e-4, 1e-2, 1e-1)
    per_cell = 4 if quick else 8
    checked = 0
    for n in (20, 60):
        for s_idx, sigma2 in enumerate(sigmas2):
            for trial in range(per_cell):
                seed = derive_seed(303, n, s_idx, trial)
                inst = sample_instance(
                    PositionSpec.gaussian(2),
                    NoiseSpec.gaussian(2, math.sqrt(sigma2)),
                    n,
                    seed,
                )
                report = cycles.verify_gaug_bound(inst)
                checked += 1
                if not report.holds:
                    return False, f"bound violated at n={n}, sigma2={sigma2}, trial={trial}"
    return True, f"{checked} instances"


def _suite_tau_consistency(quick: bool) -> tuple[bool, str]:
    samples = 200_000 if quick else 400_000
    rate_samples = 1_000_000 if quick else 2_000_000
    position = PositionSpec.gaussian(2)
    noise = NoiseSpec.gaussian(2, 1.0)
    tau = theory.tau_constant(position, noise, samples, 404)
    if not tau.within(theory.tau_gaussian(2), n_se=4.0, extra_se=1e-3):
        return False, f"tau estimate {tau.value:.4f} far from closed form 0.25"
    rate = theory.augmenting_2cycle_rate(position, noise, 0.01, rate_samples, 505)
    if abs(rate.value - tau.value) > 4.0 * (rate.std_error + tau.std_error):
        return False, f"2-cycle rate {rate.value:.4f} inconsistent with tau {tau.value:.4f}"
    return True, f"tau {tau.value:.4f}, rate {rate.value:.4f}"


def cmd_verify(args) -> int:
    suites = [
        ("lap-vs-brute", _suite_lap_vs_brute),
        ("matching-vs-brute", _suite_matching_vs_brute),
        ("gaug-bound", _suite_gaug_bound),
        ("tau-consistency", _suite_tau_consistency),
    ]
    all_ok = True
    print(f"{'suite':<22}{'status':<8}detail")
    for name, fn in suites:
        try:
            ok, detail = fn(args.quick)
        except Exception as exc:  # a crashed suite is a failed suite
            ok, detail = False, f"error: {exc}"
        all_ok = all_ok and ok
        print(f"{name:<22}{'PASS' if ok else 'FAIL':<8}{detail}")
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


# -- parser ---------------------------------------------------------------------


def _add_common_model_flags(p: argparse.ArgumentParser, with_noise: bool = True) -> None:
    p.add_argument("--d", type=int, default=2, help="dimension")
    p.add_argument("--pos", choices=_POSITION_FAMILIES, default="gaussian")
    p.add_argument("--pos-half-width", type=float, default=1.0)
    p.add_argument("--pos-variances", type=str, default=None, help="comma list for diagonal-gaussian")
    if with_noise:
        p.add_argument("--noise", choices=_NOISE_FAMILIES, default="gaussian")
        p.add_argument("--noise-variances", type=str, default=None, help="comma list for diagonal noise")
        p.add_argument("--noise-base", choices=[b.value for b in NoiseBase], default="gaussian")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallelism", type=int, default=_default_parallelism(),
                   help="worker threads (default: PMLAB_THREADS or 1)")
    p.add_argument("--no-timing", action="store_true",
                   help="suppress the wall-clock column for byte-stable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmlab",
        description="Noisy point-cloud matching lab: estimators, bounds, and "
        "reproduction experiments.",
        epilog="Exit codes: 0 success, 1 verification failure, 2 usage or "
        "domain error, 3 I/O failure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Monte Carlo sweep over noise levels")
    p.add_argument("--n", type=int, required=True)
    _add_common_model_flags(p)
    p.add_argument("--sigma2", type=str, required=True, help="comma list of noise variances")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--estimator", action="append",
                   choices=["lss", "lssc", "greedy-distance", "greedy-inner-product"],
                   help="repeatable; default lss")
    p.add_argument("--sigma-z", type=str, default=None,
                   help="noise variances assumed by the whitened estimator")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--json", default=None, help="optional JSON mirror path")
    _add_run_flags(p)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("figure-error-rate", help="error rate vs noise level, four noise families")
    p.add_argument("--d", type=int, choices=[2, 3], default=2)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--full", action="store_true", help="use 10000 trials per point")
    p.add_argument("--grid", type=str, default=None, help="comma list of noise variances")
    p.add_argument("--out-csv", default="error_rate.csv")
    p.add_argument("--out-svg", default="error_rate.svg")
    _add_run_flags(p)
    p.set_defaults(fn=cmd_figure_error_rate)

    p = sub.add_parser("figure-rgg", help="one instance: matches, mistakes, and close pairs")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--full", action="store_true", help="full-size instance (n=3000)")
    p.add_argument("--sigma2", type=float, default=1e-5)
    p.add_argument("--out-svg", default="rgg_instance.svg")
    p.add_argument("--out-json", default=None)
    _add_run_flags(p)
    p.set_defaults(fn=cmd_figure_rgg)

    p = sub.add_parser("recovery", help="perfect-recovery sweep, diagonal high-dimensional model")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--sigma-x2", type=str, default="1", help="signal variances (scalar or comma list)")
    p.add_argument("--sigma-z2", type=str, required=True, help="noise variances (scalar or comma list)")
    p.add_argument("--noise-base", choices=[b.value for b in NoiseBase], default="gaussian")
    p.add_argument("--estimator", action="append", choices=["lss", "lssc"], default=None)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--out", required=True)
    p.add_argument("--json", default=None)
    _add_run_flags(p)
    p.set_defaults(fn=cmd_recovery)

    p = sub.add_parser("rgg-sweep", help="matching size and edge count vs graph radius")
    p.add_argument("--n", type=int, default=200)
    _add_common_model_flags(p, with_noise=False)
    p.add_argument("--r-grid", type=str, required=True, help="comma list of radii")
    p.add_argument("--norm", choices=[n.value for n in NormKind], default="l2")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--rd", type=float, default=None, help="reference radius (default sqrt(2 d))")
    p.add_argument("--out", required=True)
    p.add_argument("--json", default=None)
    _add_run_flags(p)
    p.set_defaults(fn=cmd_rgg_sweep)

    p = sub.add_parser("bounds", help="closed-form bound and constant calculators (JSON lines)")
    forms = p.add_subparsers(dest="formula", required=True)

    f = forms.add_parser("minimax", help="floor on any estimator's expected mistakes")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--sigma", type=float, required=True)
    f.add_argument("--gamma", type=float, default=0.5)
    f.add_argument("--beta", type=float, default=1.0)

    f = forms.add_parser("matching", help="floor on the expected maximum matching size")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--r", type=float, required=True)
    f.add_argument("--rd", type=float, required=True)
    f.add_argument("--gamma", type=float, default=0.5)
    f.add_argument("--beta", type=float, default=1.0)

    f = forms.add_parser("lss-upper", help="ceiling on least-squares expected mistakes")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--sigma", type=float, required=True)
    f.add_argument("--k", type=float, required=True, help="caller-supplied absolute constant")

    f = forms.add_parser("tau", help="sharp small-noise error-rate prefactor (Monte Carlo)")
    _add_common_model_flags(f)
    f.add_argument("--mc-samples", type=int, default=200000)
    f.add_argument("--seed", type=int, default=0)

    f = forms.add_parser("cycle-rate", help="P(pair is augmenting)/sigma^d (Monte Carlo)")
    _add_common_model_flags(f)
    f.add_argument("--sigma", type=float, required=True)
    f.add_argument("--mc-samples", type=int, default=1000000)
    f.add_argument("--seed", type=int, default=0)

    f = forms.add_parser("snr", help="signal-to-noise ratios of both assignment estimators")
    f.add_argument("--sigma-x", type=str, required=True)
    f.add_argument("--sigma-z", type=str, required=True)
    f.add_argument("--n", type=float, required=True)

    f = forms.add_parser("stable-ranks", help="stable ranks of the three diagonal products")
    f.add_argument("--sigma-x", type=str, required=True)
    f.add_argument("--sigma-z", type=str, required=True)

    f = forms.add_parser("gaussian-q", help="worst-direction tail for Gaussian directions")
    f.add_argument("--s", type=float, required=True)

    f = forms.add_parser("tv-lower", help="Gaussian overlap floor exp(-|v|^2)/2")
    f.add_argument("--v-norm-sq", type=float, required=True)

    f = forms.add_parser("log-regime", help="logarithmic-dimension exponent calculator")
    f.add_argument("--a", type=float, required=True)
    f.add_argument("--sigma2", type=float, required=True)

    f = forms.add_parser("hp", help="high-probability threshold trio")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--sigma", type=float, required=True)
    f.add_argument("--gamma", type=float, default=0.5)
    f.add_argument("--beta", type=float, default=1.0)

    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("verify", help="run the oracle and invariant suites")
    p.add_argument("--quick", action="store_true", help="halve corpus sizes")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
