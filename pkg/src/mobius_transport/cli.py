"""Command-line front end.

Single command that runs one scenario (shipped preset or config file),
writes `curve.csv`, `summary.txt` and a gnuplot script `plot.gp` into
the output directory, and optionally cross-checks every propagating
sample against the independent mode-matching solver (`oracle.csv`).

Exit codes: 0 success, 1 validation error, 2 solver error,
3 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import configparser
import io
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .bands import Band
from .experiments import (
    ATOM_KAPPA,
    DEFAULT_GAMMA,
    MOMENTUM_KAPPA,
    DetuningReference,
    DetuningSweep,
    MomentumSweep,
    Scenario,
    TransmissionCurve,
    default_leads,
    nonreciprocity,
    preset,
    preset_names,
    PRESETS,
    run_sweep,
)
from .model import (
    AtomSpec,
    Convention,
    LeadSpec,
    PoleError,
    RingSpec,
    SiteIndex,
    ValidationError,
)
from .scattering import solve_scattering

CROSS_CHECK_TOL = 1e-8
ENV_OUT = "MOBIUS_OUT"


@dataclass
class RunConfig:
    """Run-level options layered on top of a scenario."""

    out_dir: Optional[Path] = None
    convention: Optional[Convention] = None
    eta: Optional[float] = None
    omega: Optional[float] = None
    zeta: Optional[float] = None
    k_points: Optional[int] = None
    delta_points: Optional[int] = None
    cross_check: bool = False
    seed: Optional[int] = None


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# ---------------------------------------------------------------------------
# config file handling

_SECTION_KEYS = {
    "ring": {"N", "V", "xi", "epsilon"},
    "lead.left": {"omega", "zeta", "kappa", "attach", "self_energy_convention"},
    "lead.right": {"omega", "zeta", "kappa", "attach", "self_energy_convention"},
    "atom": {"omega_a", "gamma", "n"},
    "sweep": {"kind", "band", "label", "k_points", "k", "delta_points",
              "delta_max", "reference"},
    "run": {"out", "convention", "eta", "omega", "zeta", "cross_check", "seed"},
}

_SWEEP_KEYS = {
    "momentum": {"kind", "band", "label", "k_points"},
    "detuning": {"kind", "band", "label", "k", "delta_points", "delta_max",
                 "reference"},
}


def _parse_value(section: str, key: str, raw: str):
    kind = {
        ("ring", "N"): int, ("atom", "n"): int,
        ("sweep", "k_points"): int, ("sweep", "delta_points"): int,
        ("run", "seed"): int,
    }.get((section, key))
    if kind is None:
        kind = str if key in {"kind", "band", "label", "self_energy_convention",
                              "reference", "out", "convention"} else float
    if key == "attach":
        kind = int
    if key == "cross_check":
        low = raw.strip().lower()
        if low in {"true", "1", "yes", "on"}:
            return True
        if low in {"false", "0", "no", "off"}:
            return False
        raise ValidationError(f"[run] cross_check must be a boolean, got {raw!r}")
    try:
        return kind(raw)
    except ValueError:
        raise ValidationError(
            f"[{section}] {key} must be of type {kind.__name__}, got {raw!r}"
        ) from None


def _enum_value(section: str, key: str, enum_cls, raw: str):
    try:
        return enum_cls(raw.strip().lower())
    except ValueError:
        options = ", ".join(e.value for e in enum_cls)
        raise ValidationError(
            f"[{section}] {key} must be one of: {options}; got {raw!r}"
        ) from None


def parse_config(text: str) -> tuple[Scenario, RunConfig]:
    """Parse the INI-style scenario document; unknown keys are errors."""
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    parser.optionxform = str  # keys are case sensitive (N vs n)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ValidationError(f"config parse error: {exc}") from None

    raw: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        if section not in _SECTION_KEYS:
            raise ValidationError(
                f"unknown config section [{section}]; known sections: "
                f"{', '.join(sorted(_SECTION_KEYS))}"
            )
        known = _SECTION_KEYS[section]
        for key in parser[section]:
            if key not in known:
                raise ValidationError(
                    f"unknown key {key!r} in section [{section}]; known keys: "
                    f"{', '.join(sorted(known))}"
                )
        raw[section] = dict(parser[section])

    def get(section: str, key: str, default=None, required: bool = False):
        value = raw.get(section, {}).get(key)
        if value is None:
            if required:
                raise ValidationError(f"missing required key {key!r} in section [{section}]")
            return default
        return _parse_value(section, key, value)

    if "ring" not in raw:
        raise ValidationError("missing required section [ring]")
    if "sweep" not in raw:
        raise ValidationError("missing required section [sweep]")

    ring = RingSpec(
        N=get("ring", "N", required=True),
        V=get("ring", "V", required=True),
        xi=get("ring", "xi", required=True),
        epsilon=get("ring", "epsilon", 0.0),
    )

    kind = str(get("sweep", "kind", required=True)).strip().lower()
    if kind not in _SWEEP_KEYS:
        raise ValidationError(f"[sweep] kind must be 'momentum' or 'detuning', got {kind!r}")
    for key in raw["sweep"]:
        if key not in _SWEEP_KEYS[kind]:
            raise ValidationError(f"key {key!r} in [sweep] is not valid for kind={kind}")
    band = _enum_value("sweep", "band", Band, str(get("sweep", "band", required=True)))
    label = get("sweep", "label", "")

    atom = None
    if "atom" in raw:
        atom = AtomSpec(
            omega_a=get("atom", "omega_a", 0.0),
            gamma=get("atom", "gamma", DEFAULT_GAMMA),
            n=get("atom", "n", required=True),
        )
    if kind == "detuning":
        sweep = DetuningSweep(
            k=get("sweep", "k", required=True),
            delta_points=get("sweep", "delta_points", DetuningSweep.__dataclass_fields__["delta_points"].default),
            delta_max=get("sweep", "delta_max"),
            reference=_enum_value("sweep", "reference", DetuningReference,
                                  str(get("sweep", "reference", DetuningReference.PER_DIRECTION.value))),
        )
        if atom is None:
            raise ValidationError("a detuning sweep requires an [atom] section")
        default_kappa = ATOM_KAPPA
    else:
        sweep = MomentumSweep(
            k_points=get("sweep", "k_points", MomentumSweep.__dataclass_fields__["k_points"].default),
        )
        if atom is not None and "omega_a" not in raw.get("atom", {}):
            raise ValidationError(
                "[atom] omega_a is required for a momentum sweep (the atom "
                "frequency is fixed there, not scanned)"
            )
        default_kappa = MOMENTUM_KAPPA

    dleft, dright = default_leads(ring, band, default_kappa)

    def lead_from(section: str, default: LeadSpec) -> LeadSpec:
        if section not in raw:
            return default
        conv = raw[section].get("self_energy_convention")
        return LeadSpec(
            omega=get(section, "omega", default.omega),
            zeta=get(section, "zeta", default.zeta),
            kappa=get(section, "kappa", default.kappa),
            attach=SiteIndex.upper(get(section, "attach", default.attach.j)),
            self_energy_convention=(
                _enum_value(section, "self_energy_convention", Convention, conv)
                if conv is not None else default.self_energy_convention
            ),
        )

    scenario = Scenario(
        ring=ring,
        left=lead_from("lead.left", dleft),
        right=lead_from("lead.right", dright),
        band=band,
        sweep=sweep,
        atom=atom,
        label=label,
    )

    run = RunConfig(
        out_dir=Path(get("run", "out")) if get("run", "out") else None,
        convention=(_enum_value("run", "convention", Convention, get("run", "convention"))
                    if get("run", "convention") else None),
        eta=get("run", "eta"),
        omega=get("run", "omega"),
        zeta=get("run", "zeta"),
        cross_check=bool(get("run", "cross_check", False)),
        seed=get("run", "seed"),
    )
    return scenario, run


def scenario_to_config(scenario: Scenario) -> str:
    """Serialise a scenario to config text; parse_config round-trips it."""
    out = io.StringIO()
    r = scenario.ring
    out.write("[ring]\n")
    out.write(f"N = {r.N}\nV = {_r(r.V)}\nxi = {_r(r.xi)}\nepsilon = {_r(r.epsilon)}\n\n")
    for name, lead in (("lead.left", scenario.left), ("lead.right", scenario.right)):
        out.write(f"[{name}]\n")
        out.write(f"omega = {_r(lead.omega)}\nzeta = {_r(lead.zeta)}\n")
        out.write(f"kappa = {_r(lead.kappa)}\nattach = {lead.attach.j}\n")
        out.write(f"self_energy_convention = {lead.self_energy_convention.value}\n\n")
    if scenario.atom is not None:
        a = scenario.atom
        out.write("[atom]\n")
        out.write(f"omega_a = {_r(a.omega_a)}\ngamma = {_r(a.gamma)}\nn = {a.n}\n\n")
    out.write("[sweep]\n")
    if isinstance(scenario.sweep, MomentumSweep):
        out.write(f"kind = momentum\nband = {scenario.band.value}\n")
        out.write(f"k_points = {scenario.sweep.k_points}\n")
    else:
        sw = scenario.sweep
        out.write(f"kind = detuning\nband = {scenario.band.value}\n")
        out.write(f"k = {_r(sw.k)}\ndelta_points = {sw.delta_points}\n")
        if sw.delta_max is not None:
            out.write(f"delta_max = {_r(sw.delta_max)}\n")
        out.write(f"reference = {sw.reference.value}\n")
    if scenario.label:
        out.write(f"label = {scenario.label}\n")
    return out.getvalue()


def _r(x: float) -> str:
    return repr(float(x))


def apply_overrides(scenario: Scenario, run: RunConfig) -> Scenario:
    """Layer run-level overrides (convention, omega/zeta, grids) on a scenario."""
    left, right = scenario.left, scenario.right
    if run.convention is not None:
        left = replace(left, self_energy_convention=run.convention)
        right = replace(right, self_energy_convention=run.convention)
    if run.omega is not None:
        left = replace(left, omega=run.omega)
        right = replace(right, omega=run.omega)
    if run.zeta is not None:
        left = replace(left, zeta=run.zeta)
        right = replace(right, zeta=run.zeta)
    sweep = scenario.sweep
    if run.k_points is not None:
        if not isinstance(sweep, MomentumSweep):
            raise ValidationError("--k-points applies only to momentum sweeps")
        sweep = replace(sweep, k_points=run.k_points)
    if run.delta_points is not None:
        if not isinstance(sweep, DetuningSweep):
            raise ValidationError("--delta-points applies only to detuning sweeps")
        sweep = replace(sweep, delta_points=run.delta_points)
    return replace(scenario, left=left, right=right, sweep=sweep)


# ---------------------------------------------------------------------------
# output writers

def write_curve_csv(curve: TransmissionCurve, path: Path) -> None:
    lines = ["sweep_value,energy_plus,energy_minus,T_plus,T_minus,NR,"
             "propagating_plus,propagating_minus"]
    for i in range(curve.sweep_values.size):
        nr = curve.t_plus[i] - curve.t_minus[i]
        lines.append(",".join([
            _fmt(curve.sweep_values[i]),
            _fmt(curve.energy_plus[i]),
            _fmt(curve.energy_minus[i]),
            _fmt(curve.t_plus[i]),
            _fmt(curve.t_minus[i]),
            _fmt(nr),
            "1" if curve.propagating_plus[i] else "0",
            "1" if curve.propagating_minus[i] else "0",
        ]))
    path.write_text("\n".join(lines) + "\n")


def write_summary(curve: TransmissionCurve, run: RunConfig, path: Path) -> None:
    s = curve.scenario
    summary = nonreciprocity(curve)
    sweep_name = "momentum" if isinstance(s.sweep, MomentumSweep) else "detuning"
    lines = [
        f"label: {s.label}",
        f"ring: N={s.ring.N} V={_fmt(s.ring.V)} xi={_fmt(s.ring.xi)} "
        f"epsilon={_fmt(s.ring.epsilon)}",
        f"lead.left: omega={_fmt(s.left.omega)} zeta={_fmt(s.left.zeta)} "
        f"kappa={_fmt(s.left.kappa)} attach={s.left.attach.label()} "
        f"convention={s.left.self_energy_convention.value}",
        f"lead.right: omega={_fmt(s.right.omega)} zeta={_fmt(s.right.zeta)} "
        f"kappa={_fmt(s.right.kappa)} attach={s.right.attach.label()} "
        f"convention={s.right.self_energy_convention.value}",
        f"atom: " + ("none" if s.atom is None else
                     f"n={s.atom.n} gamma={_fmt(s.atom.gamma)}"),
        f"band: {s.band.value}",
        f"sweep: {sweep_name} samples={curve.sweep_values.size}",
        f"max_abs_NR: {_fmt(summary.max_abs)}",
        f"argmax_sweep_value: {_fmt(summary.at_sweep_value)}",
    ]
    if run.seed is not None:
        lines.append(f"seed: {run.seed}")
    path.write_text("\n".join(lines) + "\n")


def write_plot_script(curve: TransmissionCurve, path: Path) -> None:
    xlabel = "k" if isinstance(curve.scenario.sweep, MomentumSweep) else "delta"
    path.write_text(
        "# render with: gnuplot -p plot.gp\n"
        "set datafile separator ','\n"
        f"set xlabel '{xlabel}'\n"
        "set ylabel 'T'\n"
        "set yrange [-0.05:1.05]\n"
        "set key top right\n"
        "plot 'curve.csv' skip 1 using 1:4 with lines linewidth 2 "
        "linecolor rgb 'red' title 'T(+k)', \\\n"
        "     'curve.csv' skip 1 using 1:5 with lines linewidth 2 dashtype 2 "
        "linecolor rgb 'blue' title 'T(-k)'\n"
    )


def cross_check(curve: TransmissionCurve, path: Path) -> float:
    """Re-solve every propagating sample by mode matching; returns max |dT|.

    Only defined for the surface self-energy convention (the
    mode-matching solver keeps the chains exactly, which is what the
    surface self-energy eliminates).
    """
    s = curve.scenario
    if (s.left.self_energy_convention is not Convention.SURFACE
            or s.right.self_energy_convention is not Convention.SURFACE):
        raise ValidationError("--cross-check requires the surface convention")
    device = s.device()
    is_detuning = isinstance(s.sweep, DetuningSweep)
    lines = ["sweep_value,direction,energy,T_negf,T_oracle,abs_diff"]
    worst = 0.0
    for i in range(curve.sweep_values.size):
        for direction, energy, t_negf, prop in (
            ("+", curve.energy_plus[i], curve.t_plus[i], curve.propagating_plus[i]),
            ("-", curve.energy_minus[i], curve.t_minus[i], curve.propagating_minus[i]),
        ):
            if not prop:
                continue
            dev = device
            if is_detuning:
                base = curve.energy_plus[i]
                if (direction == "-"
                        and s.sweep.reference is DetuningReference.PER_DIRECTION):
                    base = curve.energy_minus[i]
                omega_a = base - curve.sweep_values[i]
                dev = device.with_atom(replace(s.atom, omega_a=omega_a))
            t_oracle = solve_scattering(dev, float(energy)).T
            diff = abs(t_negf - t_oracle)
            worst = max(worst, diff)
            lines.append(",".join([
                _fmt(curve.sweep_values[i]), direction, _fmt(energy),
                _fmt(t_negf), _fmt(t_oracle), _fmt(diff),
            ]))
    path.write_text("\n".join(lines) + "\n")
    return worst


# ---------------------------------------------------------------------------
# command line

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2); keep our contract
        raise ValidationError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="mobius-transport",
        description="Single-photon transmission through a Mobius cavity ring "
                    "with two chain leads and an optional embedded atom.",
    )
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", metavar="NAME", help="run a shipped scenario")
    src.add_argument("--config", metavar="PATH", help="run a scenario config file")
    src.add_argument("--list-presets", action="store_true",
                     help="list shipped scenario names and exit")
    p.add_argument("--out", metavar="DIR",
                   help=f"output directory (default: ${ENV_OUT} or ./out)")
    p.add_argument("--convention", choices=["surface", "literal"],
                   help="lead self-energy convention override")
    p.add_argument("--eta", type=float, metavar="X",
                   help="imaginary regulariser override for the resolvent")
    p.add_argument("--omega", type=float, metavar="X",
                   help="override both leads' cavity frequency")
    p.add_argument("--zeta", type=float, metavar="X",
                   help="override both leads' hopping")
    p.add_argument("--k-points", type=int, metavar="N",
                   help="momentum grid size override")
    p.add_argument("--delta-points", type=int, metavar="N",
                   help="detuning grid size override")
    p.add_argument("--cross-check", action="store_true",
                   help="verify every propagating sample against the "
                        "mode-matching solver; nonzero exit on mismatch")
    p.add_argument("--seed", type=int, metavar="N",
                   help="seed recorded for randomized diagnostics")
    return p


def _resolve_out_dir(cli_out: Optional[str], cfg: RunConfig) -> Path:
    if cli_out:
        return Path(cli_out)
    if cfg.out_dir is not None:
        return cfg.out_dir
    env = os.environ.get(ENV_OUT)
    return Path(env) if env else Path("out")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)

        if args.list_presets:
            for name in preset_names():
                print(f"{name}\t{PRESETS[name].label}")
            return 0
        if not args.preset and not args.config:
            raise ValidationError("one of --preset, --config or --list-presets is required")

        if args.preset:
            scenario = preset(args.preset)
            run_cfg = RunConfig()
        else:
            path = Path(args.config)
            if not path.exists():
                raise ValidationError(f"config file not found: {path}")
            scenario, run_cfg = parse_config(path.read_text())

        if args.convention:
            run_cfg.convention = Convention(args.convention)
        if args.eta is not None:
            run_cfg.eta = args.eta
        if args.omega is not None:
            run_cfg.omega = args.omega
        if args.zeta is not None:
            run_cfg.zeta = args.zeta
        if args.k_points is not None:
            run_cfg.k_points = args.k_points
        if args.delta_points is not None:
            run_cfg.delta_points = args.delta_points
        if args.cross_check:
            run_cfg.cross_check = True
        if args.seed is not None:
            run_cfg.seed = args.seed

        scenario = apply_overrides(scenario, run_cfg)
        out_dir = _resolve_out_dir(args.out, run_cfg)
        out_dir.mkdir(parents=True, exist_ok=True)

        curve = run_sweep(scenario, eta=run_cfg.eta)
        write_curve_csv(curve, out_dir / "curve.csv")
        write_summary(curve, run_cfg, out_dir / "summary.txt")
        write_plot_script(curve, out_dir / "plot.gp")

        if run_cfg.cross_check:
            worst = cross_check(curve, out_dir / "oracle.csv")
            if worst >= CROSS_CHECK_TOL:
                print(f"error: cross-check: max |T_negf - T_oracle| = "
                      f"{worst:.3e} >= {CROSS_CHECK_TOL:g}", file=sys.stderr)
                return 3
    except ValidationError as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return 1
    except PoleError as exc:
        print(f"error: solver: {exc}", file=sys.stderr)
        return 2
    return 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
