"""Command-line front end: ``estimate``, ``sweep`` and ``simulate``."""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Any, Sequence

from . import firstquant as fq
from .config import ESTIMATE, FIRSTQUANT, SIMULATE, SWEEP, TFIM, RunConfig, load_config
from .errors import ConfigError, EstimationError, InfeasiblePlanError
from .improvement import FirstQuantModel, ImprovementReport, SweepGrid, TfimModel, evaluate_point, run_sweep
from .reflector_sim import RANDOM, WORST_CASE, DenseHamiltonian, verify_theorem1
from .tfim import TfimSpec

EXIT_OK, EXIT_CONFIG, EXIT_INFEASIBLE = 0, 2, 3

SWEEP_HEADER = ("model", "size_param", "gamma_i2", "gamma_f2", "delta_e", "t_prep", "t_qpe", "t_aa", "n_iter",
                "n_phi", "epsilon", "delta", "iota", "iota_asym", "qubits_total", "status")
SIM_HEADER = ("L", "g", "gamma_f2_target", "n_iter", "gamma_i", "epsilon", "mode", "seed", "achieved_gamma_f2",
              "infidelity_ratio", "status")


def fmt(v: Any) -> str:
    """Integers verbatim, reals as shortest round-trip decimal, missing as nan."""
    if v is None:
        return "nan"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def build_model(cfg: RunConfig):
    if cfg.model == TFIM:
        return TfimModel(g=cfg["g"], mu_shift=cfg["mu_shift"], eps_rh=cfg["eps_rh"], eps_rp=cfg["eps_rp"])
    return FirstQuantModel(eta=cfg["eta"], zeta_norm=cfg["zeta_norm"], n_atoms=cfg["n_atoms"], omega=cfg["omega"],
                           delta_exp=cfg["delta_exp"], e0_bar=cfg["e0_bar"], eps_total=cfg["eps_total"],
                           eps_rh=cfg["eps_rh"], eps_rp=cfg["eps_rp"], aa_factor=cfg["aa_factor"],
                           b_r=cfg["b_r"], n_etazeta_reading=cfg["n_etazeta_reading"])


def sizes_of(cfg: RunConfig) -> tuple[int, ...]:
    if cfg.model == TFIM:
        return tuple(cfg["L"])
    return tuple(fq.round_to_odd_cube(n) for n in cfg["n_planewaves"])


def delta_es_of(cfg: RunConfig) -> tuple[float, ...]:
    if cfg.model == TFIM:
        return tuple(cfg["delta_e"])
    return tuple(fq.ev_to_hartree(x) for x in cfg["delta_e_ev"])


def sweep_row(r: ImprovementReport) -> list[str]:
    plan = r.plan
    vals = [r.model, r.size_param, r.gamma_i2, r.gamma_f2, r.delta_e,
            None if r.t_prep is None else r.t_prep.total,
            None if r.t_qpe is None else r.t_qpe.total,
            None if r.t_aa is None else r.t_aa.total,
            None if plan is None else plan.n_iter,
            None if plan is None else plan.n_phi,
            None if plan is None else plan.eps_adj,
            None if plan is None else plan.delta,
            r.iota, r.iota_asymptotic, r.qubits_total, r.status]
    return [fmt(v) for v in vals]


def write_csv(path: str | None, header: Sequence[str], rows: list[list[str]], meta: list[str]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if path is None:
        sys.stdout.write(buf.getvalue())
        return
    Path(path).write_text(buf.getvalue())
    Path(str(path) + ".meta.txt").write_text("\n".join(meta) + "\n")


def _meta(cfg: RunConfig, extra: dict | None = None) -> list[str]:
    lines = cfg.metadata_lines()
    if cfg.model == FIRSTQUANT:
        lines.append("n_planewaves_rounded = " + ",".join(str(n) for n in sizes_of(cfg)))
        lines.append("delta_e_hartree = " + ",".join(repr(x) for x in delta_es_of(cfg)))
    for k, v in (extra or {}).items():
        lines.append(f"{k} = {v}")
    return lines


def cmd_estimate(cfg: RunConfig, out: str | None = None) -> ImprovementReport:
    """Cost a single grid point and print a readable summary."""
    size = sizes_of(cfg)
    if len(size) != 1:
        raise ConfigError(f"estimate takes exactly one system size, got {len(size)}")
    de = delta_es_of(cfg)
    if len(de) != 1:
        raise ConfigError(f"estimate takes exactly one delta_e, got {len(de)}")
    rep = evaluate_point(build_model(cfg), size[0], cfg.single("gamma_i2"), cfg.single("gamma_f2"), de[0])
    p = rep.plan
    lines = [
        f"model            {rep.model} (size {rep.size_param})",
        f"T_prep           {rep.t_prep.total}  {rep.t_prep.breakdown}",
        f"T_QPE            {rep.t_qpe.total}  {rep.t_qpe.breakdown}",
        f"T_AA             {rep.t_aa.total}  {rep.t_aa.breakdown}",
        f"QPE bits p       {rep.p}",
        f"qubits total     {fmt(rep.qubits_total)}",
        f"N_iter           {p.n_iter}",
        f"N_phi            {p.n_phi}",
        f"epsilon          {fmt(p.eps_adj)} (bare {fmt(p.eps0)})",
        f"delta            {fmt(p.delta)}",
        f"mu               {fmt(rep.mu)}",
        f"gap              {fmt(rep.gap)}",
        f"iota             {fmt(rep.iota)}",
        f"iota_asymptotic  {fmt(rep.iota_asymptotic)}",
    ]
    print("\n".join(lines))
    if out is not None:
        write_csv(out, SWEEP_HEADER, [sweep_row(rep)], _meta(cfg))
    return rep


def cmd_sweep(cfg: RunConfig, out: str | None) -> list[ImprovementReport]:
    gf2 = cfg.single("gamma_f2")
    try:
        grid = SweepGrid(cfg.model, sizes_of(cfg), tuple(cfg["gamma_i2"]), delta_es_of(cfg), gf2)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rows = run_sweep(grid, build_model(cfg))
    write_csv(out, SWEEP_HEADER, [sweep_row(r) for r in rows], _meta(cfg))
    return rows


def cmd_simulate(cfg: RunConfig, out: str | None, mode: str = WORST_CASE, seed: int = 0) -> list[list[str]]:
    rows = []
    for L in cfg["L"]:
        spec = TfimSpec(L=L, g=cfg["g"])
        h = DenseHamiltonian.tfim(spec)
        for gf2 in cfg["gamma_f2"]:
            for n in cfg["n_iter"]:
                run_seed = seed if mode == RANDOM else None
                try:
                    r = verify_theorem1(spec, gf2, n, mode=mode, seed=run_seed,
                                        gamma_i_rule=cfg["gamma_i_rule"], h=h)
                    status = "ok" if r.bound_holds else "bound_violated"
                    vals = [L, cfg["g"], gf2, n, r.gamma_i, r.epsilon_used, mode, run_seed,
                            r.achieved_gamma_f2, r.infidelity_ratio, status]
                except EstimationError as exc:
                    vals = [L, cfg["g"], gf2, n, None, None, mode, run_seed, None, None, f"error: {exc}"]
                rows.append([fmt(v) for v in vals])
    write_csv(out, SIM_HEADER, rows, _meta(cfg, {"mode": mode, "seed": seed}))
    return rows


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aa-resources",
                                 description="T-count and qubit estimates for amplified ground-state preparation")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, text in ((ESTIMATE, "cost one configuration"), (SWEEP, "cost a grid and write CSV"),
                       (SIMULATE, "dense amplification runs on small Ising chains")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="key = value configuration file")
        p.add_argument("--out", help="CSV output path (stdout if omitted)")
        if name == SIMULATE:
            p.add_argument("--mode", choices=("worst", "random"), default="worst")
            p.add_argument("--seed", type=int, default=0, help="seed for random mode")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.command)
        if args.command == ESTIMATE:
            cmd_estimate(cfg, args.out)
        elif args.command == SWEEP:
            cmd_sweep(cfg, args.out)
        else:
            if args.seed < 0 or args.seed >= 2 ** 64:
                raise ConfigError(f"--seed must be an unsigned 64-bit integer, got {args.seed}")
            mode = WORST_CASE if args.mode == "worst" else RANDOM
            cmd_simulate(cfg, args.out, mode=mode, seed=args.seed)
    except InfeasiblePlanError as exc:
        print(f"infeasible plan: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE if args.command == ESTIMATE else EXIT_CONFIG
    except (ConfigError, EstimationError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
