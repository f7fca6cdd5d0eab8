"""Command-line front end.

    genent sweep --gamma 1 --g-min 0 --g-max 1 --steps 101 --size inf --quantities purity,shifted_purity
    genent compare --n 8 --gamma 0.5 --g 0.3
    genent examples
    genent exponent --gamma 1 --window 0.40,0.49 --points 50

Exit codes: 0 success, 2 invalid arguments, 3 numerical-contract failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import algebra, chain, fermions
from .errors import GenEntError
from .linalg import basis_state, kron
from .model import ChainParams

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

QUANTITIES = ("purity", "shifted_purity", "energy_per_site", "concurrence", "mx", "number_variance")
ED_QUANTITIES = ("concurrence", "mx")
COMPARE_TOL = 1e-9
EXAMPLE_TOL = 1e-10
MAX_COMPARE_SITES = 12


class ConfigError(GenEntError, ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    """``size`` is None for the thermodynamic limit, else the even chain length."""

    gamma: float
    g_min: float
    g_max: float
    steps: int
    size: int | None = None
    quantities: tuple = ("purity", "shifted_purity")

    def __post_init__(self):
        if not self.g_min < self.g_max:
            raise ConfigError("g_min must be smaller than g_max")
        if self.g_min < 0:
            raise ConfigError("g must be >= 0")
        if self.steps < 2:
            raise ConfigError("steps must be >= 2")
        if not 0 <= self.gamma <= 1:
            raise ConfigError("gamma must lie in [0, 1]")
        if not self.quantities:
            raise ConfigError("no quantities requested")
        unknown = [q for q in self.quantities if q not in QUANTITIES]
        if unknown:
            raise ConfigError(f"unknown quantities {unknown}; choose from {', '.join(QUANTITIES)}")
        if len(set(self.quantities)) != len(self.quantities):
            raise ConfigError("duplicate quantities")
        ed = [q for q in self.quantities if q in ED_QUANTITIES]
        if self.size is None:
            if ed:
                raise ConfigError(f"{ed} need exact diagonalization: give a finite --size N <= {chain.MAX_ED_SITES}")
            if self.gamma == 0:
                raise ConfigError("thermodynamic purity at gamma = 0 is out of scope (isotropic XX chain)")
        else:
            if self.size < 4 or self.size % 2:
                raise ConfigError("size must be an even integer >= 4")
            if ed and self.size > chain.MAX_ED_SITES:
                raise ConfigError(f"{ed} need exact diagonalization, limited to N <= {chain.MAX_ED_SITES}")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.g_min, self.g_max, self.steps)


@dataclass(frozen=True)
class SweepRow:
    g: float
    gamma: float
    size: int | None
    values: dict = field(default_factory=dict)

    def columns(self) -> list:
        return ["g", "gamma", "size", *self.values]


def _thermo_point(g: float, gamma: float, quantities) -> dict:
    out = {}
    pur = None
    if {"purity", "shifted_purity", "number_variance"} & set(quantities):
        pur = fermions.purity_uN_thermo(g, gamma)
    for q in quantities:
        if q == "purity":
            out[q] = pur
        elif q == "shifted_purity":
            out[q] = pur - 1.0 / (1.0 + gamma)
        elif q == "energy_per_site":
            out[q] = fermions.energy_per_site_thermo(g, gamma)
        elif q == "number_variance":
            # per site: Var(N)/N = (1 - P)/2 from P = 1 - (2/N) Var(N)
            out[q] = (1.0 - pur) / 2.0
    return out


def _finite_point(g: float, gamma: float, n: int, quantities) -> dict:
    p = ChainParams(n, g, gamma)
    gs = None
    if set(ED_QUANTITIES) & set(quantities):
        gs = chain.ground_state_sector(p, with_gap=False)
    pur = fermions.purity_uN_finite(p)
    out = {}
    for q in quantities:
        if q == "purity":
            out[q] = pur
        elif q == "shifted_purity":
            out[q] = pur - 1.0 / (1.0 + gamma)
        elif q == "energy_per_site":
            out[q] = fermions.ground_energy_analytic(p) / n
        elif q == "number_variance":
            out[q] = fermions.number_variance(p) / n
        elif q == "concurrence":
            out[q] = chain.concurrence(chain.two_site_rdm(gs, 0, 1))
        elif q == "mx":
            out[q] = chain.magnetization_x(gs)
    return out


def _sweep_point(args) -> SweepRow:
    g, cfg = args
    if cfg.size is None:
        values = _thermo_point(g, cfg.gamma, cfg.quantities)
    else:
        values = _finite_point(g, cfg.gamma, cfg.size, cfg.quantities)
    return SweepRow(float(g), float(cfg.gamma), cfg.size, values)


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> list[SweepRow]:
    """Evaluate the requested quantities on a uniform g grid (endpoints included), g ascending."""
    tasks = [(float(g), cfg) for g in cfg.grid]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_point, tasks))
    return [_sweep_point(t) for t in tasks]


def _fmt(x) -> str:
    return f"{x:.15g}"


def format_rows(rows: list[SweepRow], fmt: str = "csv") -> str:
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(rows[0].columns())
        for r in rows:
            size = "inf" if r.size is None else str(r.size)
            writer.writerow([_fmt(r.g), _fmt(r.gamma), size, *(_fmt(v) for v in r.values.values())])
    elif fmt == "jsonl":
        for r in rows:
            rec = {"g": float(_fmt(r.g)), "gamma": float(_fmt(r.gamma)), "size": "inf" if r.size is None else r.size}
            rec.update({k: float(_fmt(v)) for k, v in r.values.items()})
            buf.write(json.dumps(rec) + "\n")
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    return buf.getvalue()


@dataclass
class CompareReport:
    n_sites: int
    gamma: float
    g: float
    ed_energy: float
    analytic_energy: float
    ed_purity: float
    analytic_purity: float
    momenta: list
    ed_occupations: list
    analytic_occupations: list
    max_abs_deviation: float

    @property
    def passed(self) -> bool:
        return self.max_abs_deviation <= COMPARE_TOL


def run_compare(n: int, gamma: float, g: float) -> CompareReport:
    """Exact diagonalization against the closed-form solution at one parameter point."""
    if n > MAX_COMPARE_SITES:
        raise ConfigError(f"compare is limited to N <= {MAX_COMPARE_SITES}")
    p = ChainParams(n, g, gamma)
    gs = chain.ground_state_sector(p, with_gap=False)
    corr = chain.momentum_correlation_matrix(gs)
    sol = fermions.bogoliubov_solution(p)
    ed_occ = corr.diagonal().real
    devs = [
        abs(gs.energy - fermions.ground_energy_analytic(p)),
        abs(chain.purity_uN_from_state(gs) - fermions.purity_uN_finite(p)),
        float(np.abs(ed_occ - sol.occupations).max()),
        float(np.abs(corr - np.diag(corr.diagonal())).max()),
    ]
    return CompareReport(
        n_sites=n,
        gamma=float(gamma),
        g=float(g),
        ed_energy=gs.energy,
        analytic_energy=fermions.ground_energy_analytic(p),
        ed_purity=chain.purity_uN_from_state(gs),
        analytic_purity=fermions.purity_uN_finite(p),
        momenta=sol.momenta.tolist(),
        ed_occupations=ed_occ.tolist(),
        analytic_occupations=sol.occupations.tolist(),
        max_abs_deviation=max(devs),
    )


@dataclass(frozen=True)
class ExampleRow:
    scenario: str
    basis: str
    purity: float
    expected: float

    @property
    def passed(self) -> bool:
        return abs(self.purity - self.expected) <= EXAMPLE_TOL


def run_examples() -> list[ExampleRow]:
    """Textbook states against the observable sets that do or do not see them as entangled."""
    up_down = basis_state(4, 0b01)
    bell = algebra.bell_state()
    su2_pair = algebra.make_su2_local(2)
    su4 = algebra.make_full_traceless(4)
    u2 = algebra.make_u2_pair_modes()
    spin1 = algebra.make_su2_local(1, spin=1)
    su3 = algebra.make_full_traceless(3)
    spin1_pair = algebra.make_su2_local(2, spin=1)
    m_states = {"|1>": basis_state(3, 0), "|0>": basis_state(3, 1), "|-1>": basis_state(3, 2)}

    cases = [
        ("qubits |up,down>", up_down, su2_pair, 1.0),
        ("qubits Bell", bell, su2_pair, 0.0),
        ("qubits |up,down>", up_down, su4, 1.0),
        ("qubits Bell", bell, su4, 1.0),
        ("qubits Bell", bell, u2, 1.0),
    ]
    for label, psi in m_states.items():
        cases.append((f"spin-1 {label}", psi, spin1, 0.0 if label == "|0>" else 1.0))
    for label, psi in m_states.items():
        cases.append((f"spin-1 {label}", psi, su3, 1.0))
    cases.append(("spin-1 pair |1>|1>", kron(m_states["|1>"], m_states["|1>"]).ravel(), spin1_pair, 1.0))
    cases.append(("spin-1 pair |0>|0>", kron(m_states["|0>"], m_states["|0>"]).ravel(), spin1_pair, 0.0))
    return [ExampleRow(name, basis.name, algebra.purity(psi, basis).value, expected) for name, psi, basis, expected in cases]


def run_exponent(gamma: float, window, points: int) -> fermions.ExponentFit:
    return fermions.critical_exponent_fit(gamma, window, points)


def _parse_size(text: str):
    if text.lower() in ("inf", "thermo"):
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must be 'inf' or an even integer, got {text!r}")


def _parse_window(text: str):
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be 'lo,hi', got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genent", description="Generalized-entanglement purity of the XY chain")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="tabulate quantities over a uniform g grid")
    sw.add_argument("--gamma", type=float, required=True)
    sw.add_argument("--g-min", type=float, required=True)
    sw.add_argument("--g-max", type=float, required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--size", type=_parse_size, default=None, help="'inf' (default) or an even N")
    sw.add_argument("--quantities", default="purity,shifted_purity", help=",".join(QUANTITIES))
    sw.add_argument("--out", default=None, help="output file (default: stdout)")
    sw.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sw.add_argument("--jobs", type=int, default=1, help="worker processes")

    cmp_ = sub.add_parser("compare", help="exact diagonalization vs closed form at one point")
    cmp_.add_argument("--n", type=int, required=True)
    cmp_.add_argument("--gamma", type=float, required=True)
    cmp_.add_argument("--g", type=float, required=True)

    sub.add_parser("examples", help="purity of the canonical two-qubit and spin-1 examples")

    ex = sub.add_parser("exponent", help="fit the critical exponent of the shifted purity")
    ex.add_argument("--gamma", type=float, required=True)
    ex.add_argument("--window", type=_parse_window, required=True)
    ex.add_argument("--points", type=int, default=50)
    return parser


def _cmd_sweep(args, out) -> int:
    cfg = SweepConfig(
        gamma=args.gamma,
        g_min=args.g_min,
        g_max=args.g_max,
        steps=args.steps,
        size=args.size,
        quantities=tuple(q.strip() for q in args.quantities.split(",") if q.strip()),
    )
    text = format_rows(run_sweep(cfg, jobs=args.jobs), args.format)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_compare(args, out) -> int:
    report = run_compare(args.n, args.gamma, args.g)
    rec = dict(report.__dict__, passed=report.passed)
    out.write(json.dumps(rec, indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_NUMERICAL


def _cmd_examples(args, out) -> int:
    rows = run_examples()
    out.write(f"{'scenario':<22} {'basis':<26} {'purity':>10} {'expected':>9}  result\n")
    for r in rows:
        out.write(f"{r.scenario:<22} {r.basis:<26} {r.purity:>10.6f} {r.expected:>9.1f}  {'pass' if r.passed else 'FAIL'}\n")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_NUMERICAL


def _cmd_exponent(args, out) -> int:
    fit = run_exponent(args.gamma, args.window, args.points)
    out.write(f"gamma       {args.gamma:g}\n")
    out.write(f"window      [{args.window[0]:g}, {args.window[1]:g}] ({args.points} points)\n")
    out.write(f"nu          {fit.nu:.6f}\n")
    out.write(f"r_squared   {fit.r_squared:.8f}\n")
    out.write(f"amplitude   {fit.amplitude:.6f}\n")
    out.write(f"max |resid| {fit.max_residual:.3e}\n")
    return EXIT_OK


COMMANDS = {"sweep": _cmd_sweep, "compare": _cmd_compare, "examples": _cmd_examples, "exponent": _cmd_exponent}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except GenEntError as exc:
        print(f"genent {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
