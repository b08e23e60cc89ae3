"""Command-line front end.

Subcommands: measure, roof, figure, verify. Settings resolve with the
precedence flags > config file > defaults; the config file is plain
``key = value`` text with ``#`` comments. Exit status 0 means success,
1 means a verification failure, 2 means a usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import figures, stateio, verify
from .measures import report_all
from .roof import DEFAULT_RESTARTS, OBJECTIVE_TOL, solve_roof
from .states import DensityMatrix, PureState, StateValidationError, assemble

_CONFIG_KEYS = ("seed", "restarts", "s", "out", "tol", "n", "jobs", "p")


@dataclass(frozen=True)
class RunConfig:
    """Resolved solver settings for one invocation."""

    seed: int = 0
    restarts: int = DEFAULT_RESTARTS
    s_override: int | None = None
    tol: float = OBJECTIVE_TOL
    output_path: str | None = None

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.s_override is not None and self.s_override < 1:
            raise ValueError(f"s must be >= 1, got {self.s_override}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
        values[key] = value
    return values


def _resolve(flag, config: dict[str, str], key: str, cast, default):
    if flag is not None:
        return flag
    if key in config:
        return cast(config[key])
    return default


def _run_config(args, config: dict[str, str]) -> RunConfig:
    return RunConfig(
        seed=_resolve(args.seed, config, "seed", int, 0),
        restarts=_resolve(args.restarts, config, "restarts", int, DEFAULT_RESTARTS),
        s_override=_resolve(args.s, config, "s", int, None),
        tol=_resolve(getattr(args, "tol", None), config, "tol", float, OBJECTIVE_TOL),
        output_path=_resolve(args.out, config, "out", str, None),
    )


def _load_density(path: str) -> DensityMatrix:
    state = stateio.read_state(path)
    if isinstance(state, PureState):
        return DensityMatrix(state.dims, state.projector())
    return state


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_measure(args, config: dict[str, str]) -> int:
    rho = _load_density(args.state_file)
    report = report_all(rho)
    lines = ["dims = " + " ".join(str(d) for d in rho.dims)]
    lines.append(f"entropy = {_fmt(report.entropy)}")
    for field in (
        "concurrence",
        "e_formation",
        "e_geometric",
        "e_bures",
        "e_groverian",
        "f_separability",
        "er_lower_bound",
    ):
        value = getattr(report, field)
        if value is not None:
            lines.append(f"{field} = {_fmt(value)}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    out = _resolve(args.out, config, "out", str, None)
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return 0


def cmd_roof(args, config: dict[str, str]) -> int:
    cfg = _run_config(args, config)
    rho = _load_density(args.state_file)
    res = solve_roof(
        rho, s=cfg.s_override, restarts=cfg.restarts, seed=cfg.seed, tol=cfg.tol
    )
    sigma = assemble(res.ensemble)
    summary = "".join(
        [
            f"f_s = {_fmt(res.f_s)}\n",
            f"e_g = {_fmt(res.e_g)}\n",
            f"stationarity_residual = {_fmt(res.stationarity_residual)}\n",
            f"iterations = {res.iterations}\n",
            f"converged = {'true' if res.converged else 'false'}\n",
            f"seed = {res.seed}\n",
        ]
    )
    sys.stdout.write(summary)
    if cfg.output_path is not None:
        base = cfg.output_path
        Path(base).write_text(summary, encoding="utf-8")
        stateio.write_state(res.decomposition, base + ".decomp")
        stateio.write_state(res.ensemble, base + ".ensemble")
        stateio.write_state(sigma, base + ".sigma")
    else:
        for obj in (res.decomposition, res.ensemble, sigma):
            sys.stdout.write("\n" + stateio.dumps(obj))
    return 0


def cmd_figure(args, config: dict[str, str]) -> int:
    out = _resolve(args.out, config, "out", str, None)
    if out is None:
        raise ValueError("figure requires --out PATH for the CSV")
    if args.name == "bures-curve":
        figures.write_bures_curve(out)
    else:
        p = _resolve(args.p, config, "p", float, None)
        if p is None:
            raise ValueError("figure gvp requires --p in (0, 1]")
        figures.write_gvp(out, p)
    return 0


def cmd_verify(args, config: dict[str, str]) -> int:
    seed = _resolve(args.seed, config, "seed", int, 0)
    n = _resolve(args.n, config, "n", int, 100)
    jobs = _resolve(args.jobs, config, "jobs", int, None)
    out = _resolve(args.out, config, "out", str, None)
    results = verify.run_suite(args.suite, n, seed, jobs=jobs)
    rows = verify.report_rows(results)
    text = "\n".join(",".join(row) for row in rows) + "\n"
    sys.stdout.write(text)
    if out is not None:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    failures = [r for r in results if not r.passed]
    for fail in failures:
        states = verify.reproduction_states(fail.suite, seed, fail.worst_index)
        stem = Path(out).parent if out is not None else Path(".")
        for name, state in states.items():
            path = stem / f"repro-{fail.suite}-{fail.check}-{fail.worst_index}-{name}.state"
            stateio.write_state(state, path)
            sys.stderr.write(
                f"reproduction: {path} (suite seed {seed}, sample {fail.worst_index})\n"
            )
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entfid",
        description="Entanglement measures from the fidelity of separability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None, help="base RNG seed")
        p.add_argument("--restarts", type=int, default=None, help="solver restarts")
        p.add_argument("--s", type=int, default=None, help="decomposition size")
        p.add_argument("--out", default=None, help="output path")
        p.add_argument("--config", default=None, help="key = value settings file")

    p_measure = sub.add_parser("measure", help="report entanglement measures")
    p_measure.add_argument("state_file")
    common(p_measure)

    p_roof = sub.add_parser("roof", help="solve the decomposition problem")
    p_roof.add_argument("state_file")
    p_roof.add_argument("--tol", type=float, default=None, help="objective tolerance")
    common(p_roof)

    p_figure = sub.add_parser("figure", help="emit a figure-family CSV")
    p_figure.add_argument("name", choices=("bures-curve", "gvp"))
    p_figure.add_argument("--p", type=float, default=None, help="mixing weight (gvp)")
    common(p_figure)

    p_verify = sub.add_parser("verify", help="run a verification campaign")
    p_verify.add_argument("suite", choices=verify.SUITES)
    p_verify.add_argument("--n", type=int, default=None, help="sample count")
    p_verify.add_argument("--jobs", type=int, default=None, help="parallel workers")
    common(p_verify)
    return parser


_COMMANDS = {
    "measure": cmd_measure,
    "roof": cmd_roof,
    "figure": cmd_figure,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config) if args.config else {}
        return _COMMANDS[args.command](args, config)
    except (StateValidationError, stateio.StateFormatError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
