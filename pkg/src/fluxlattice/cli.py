"""Command-line experiment runner.

    fluxlattice run <config> [--output-dir D] [--seed S] [--threads T]
    fluxlattice validate <config>
    fluxlattice list-experiments

Configs are JSON or TOML with a strict schema (unknown keys are
rejected).  Every run writes UTF-8 CSV tables with a header row plus a
``manifest.json`` recording the fully resolved configuration, the seed,
the package version and the wall time; re-running a manifest (or the
same config and seed) reproduces the CSV files byte for byte.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .dynamics import PropagationError
from .experiments import ConfigError, EXPERIMENTS, parse_config, run_experiment
from .mackey_glass import DivergenceError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _load_raw(path: Path) -> dict:
    try:
        text = path.read_bytes()
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read config: {exc}") from None
    suffix = path.suffix.lower()
    if suffix == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        try:
            return tomllib.loads(text.decode("utf-8"))
        except Exception as exc:
            raise ConfigError(str(path), f"invalid TOML: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON: {exc}") from None
    return data


def load_config(path: str):
    """Parse a config file; a manifest is accepted and its resolved config reused."""
    data = _load_raw(Path(path))
    if isinstance(data, dict) and "resolved_config" in data:
        data = data["resolved_config"]
    return parse_config(data)


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_format_cell(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def run(config_path: str, output_dir: str | None, seed: int | None, threads: int) -> int:
    cfg = load_config(config_path)
    if seed is not None:
        cfg.seed = seed
    out_base = output_dir or cfg.output_dir or "."
    out = Path(out_base)
    out.mkdir(parents=True, exist_ok=True)

    start = time.perf_counter()
    tables, extras = run_experiment(cfg, threads=threads)
    wall = time.perf_counter() - start

    names = sorted(tables)
    for name in names:
        header, rows = tables[name]
        write_csv(out / name, header, rows)
    manifest = {
        "experiment": cfg.experiment,
        "version": __version__,
        "seed": cfg.seed,
        "resolved_config": cfg.resolved(),
        "outputs": names,
        "wall_time_s": round(wall, 3),
    }
    manifest.update(extras)
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"{cfg.experiment}: wrote {', '.join(names)} to {out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fluxlattice",
        description="Flux-qubit network experiments: spectra, response, dynamics, QRC.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a config file")
    p_run.add_argument("config", help="JSON or TOML config (or a previous manifest.json)")
    p_run.add_argument("--output-dir", default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--threads", type=int, default=1)

    p_val = sub.add_parser("validate", help="check a config without running it")
    p_val.add_argument("config")

    sub.add_parser("list-experiments", help="print the available experiment names")

    args = parser.parse_args(argv)

    if args.command == "list-experiments":
        for name in EXPERIMENTS:
            print(name)
        return EXIT_OK

    try:
        if args.command == "validate":
            load_config(args.config)
            print("ok")
            return EXIT_OK
        return run(args.config, args.output_dir, args.seed, args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PropagationError, DivergenceError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
