"""Command-line front end.

Exit codes: 0 success, 1 a verification check ran and failed, 2 validation
error (e.g. NotAWitness, DimensionMismatch), 3 unreadable or malformed input.

Examples::

    entwit demo
    entwit state singlet --out singlet.json
    entwit witness --state singlet --method ppt --out wit.json
    entwit game build --witness wit.json --out game.json
    entwit game simulate --game game.json --resource werner --rounds 100000 --json
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import game as game_mod
from . import io
from .errors import EntwitError, InvalidArgument
from .linalg import TOL_PSD, DensityState, operator_to_dict
from .scheme import build_scheme, werner_identity_check, yes_probability_4party
from .separability import (
    closest_separable,
    is_ppt,
    witness_from_ppt,
    witness_from_separable_approximation,
)
from .states import named_state, parse_dims, random_density, singlet, werner

DEFAULT_SEED = 0xC0FFEE
SEED_ENV = "ENTWIT_SEED"
IDENTITY_TOL = 1e-10


@dataclass
class RunConfig:
    command: str
    name: str | None = None
    state: str | None = None
    witness: str | None = None
    game: str | None = None
    resource: str | None = None
    effect: str | None = None
    out: str | None = None
    seed: int = DEFAULT_SEED
    rounds: int = 100_000
    trials: int = 100
    iters: int = 2000
    method: str = "ppt"
    dims: str | None = None
    json: bool = False
    workers: int = 1
    allow_heuristic: bool = False
    tol_psd: float = TOL_PSD


class MalformedInput(Exception):
    pass


def default_seed(env: dict | None = None) -> int:
    env = os.environ if env is None else env
    raw = env.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError:
        raise InvalidArgument(f"{SEED_ENV}={raw!r} is not an integer") from None


def _load(path: str, loader):
    try:
        return loader(path)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc
    except EntwitError:
        raise
    except ValueError as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


def resolve_state(spec: str) -> DensityState:
    """A state keyword (singlet, werner, maxent:n, mixed:nxm) or a JSON file path."""
    if not Path(spec).exists():
        try:
            return named_state(spec)
        except InvalidArgument:
            if not spec.endswith(".json"):
                raise
    return _load(spec, io.load_density)


def _require(value: str | None, flag: str) -> str:
    if value is None:
        raise InvalidArgument(f"{flag} is required")
    return value


def _cmd_state(cfg: RunConfig) -> tuple[int, dict]:
    rho = resolve_state(_require(cfg.name, "name"))
    if cfg.out:
        io.write_json(cfg.out, operator_to_dict(rho))
    ppt, lmin = is_ppt(rho, cfg.tol_psd)
    return 0, {"dims": list(rho.dims), "ppt": ppt, "min_pt_eigenvalue": lmin, "out": cfg.out}


def _cmd_witness(cfg: RunConfig) -> tuple[int, dict]:
    rho = resolve_state(_require(cfg.state, "--state"))
    if cfg.method == "ppt":
        wit = witness_from_ppt(rho, tol=cfg.tol_psd)
        extra: dict[str, Any] = {}
    elif cfg.method == "gilbert":
        rng = np.random.default_rng(cfg.seed)
        approx = closest_separable(rho, cfg.iters, rng)
        wit = witness_from_separable_approximation(rho, approx, rng, tol=cfg.tol_psd)
        extra = {"distance": approx.distance, "iters": cfg.iters, "seed": cfg.seed}
    else:
        raise InvalidArgument(f"unknown method {cfg.method!r}; expected ppt or gilbert")
    if cfg.out:
        io.write_json(cfg.out, io.witness_to_dict(wit))
    return 0, {
        "value_on_target": wit.value_on_target,
        "provenance": wit.provenance.value,
        "certification": wit.certification.value,
        "out": cfg.out,
        **extra,
    }


def _cmd_scheme_effective(cfg: RunConfig) -> tuple[int, dict]:
    rho = resolve_state(_require(cfg.resource, "--resource"))
    s = build_scheme(rho)
    if cfg.out:
        io.write_json(cfg.out, operator_to_dict(s.effective))
    evals = np.linalg.eigvalsh(s.effective.data)
    ppt, lmin = is_ppt(s.effective, cfg.tol_psd)
    return 0, {
        "dims": list(rho.dims),
        "effective_min_eigenvalue": float(evals[0]),
        "effective_max_eigenvalue": float(evals[-1]),
        "effective_ppt": ppt,
        "effective_min_pt_eigenvalue": lmin,
        "out": cfg.out,
    }


def _cmd_scheme_verify(cfg: RunConfig) -> tuple[int, dict]:
    rng = np.random.default_rng(cfg.seed)
    fixed = resolve_state(cfg.resource) if cfg.resource else None
    if fixed is not None:
        dims = fixed.dims
        if cfg.dims and parse_dims(cfg.dims) != dims:
            raise InvalidArgument(f"--dims {cfg.dims} disagrees with resource dims {dims}")
    else:
        dims = parse_dims(cfg.dims or "2x2")
    if len(dims) != 2:
        raise InvalidArgument(f"scheme needs two subsystems, got {dims}")
    n, m = dims
    worst = 0.0
    passed = 0
    for _ in range(cfg.trials):
        rho = fixed if fixed is not None else random_density(dims, rng)
        w = random_density(dims, rng)
        lhs = yes_probability_4party(build_scheme(rho), w)
        rhs = float(np.real(np.trace(w.data @ rho.data.T))) / (n * m)
        err = abs(lhs - rhs)
        worst = max(worst, err)
        passed += err <= IDENTITY_TOL
    code = 0 if passed == cfg.trials else 1
    return code, {
        "dims": list(dims),
        "trials": cfg.trials,
        "passed": passed,
        "max_abs_error": worst,
        "seed": cfg.seed,
    }


def _cmd_game_build(cfg: RunConfig) -> tuple[int, dict]:
    wit = _load(_require(cfg.witness, "--witness"), io.load_witness)
    g = game_mod.decompose_witness(wit, allow_heuristic=cfg.allow_heuristic)
    if cfg.out:
        io.write_json(cfg.out, io.game_to_dict(g))
    return 0, {
        "alpha": g.alpha,
        "beta": g.beta,
        "prior_w1": g.prior_w1,
        "prior_w2": g.prior_w2,
        "classical_bound": game_mod.classical_bound(g),
        "out": cfg.out,
    }


def _strategy(cfg: RunConfig) -> dict:
    if (cfg.resource is None) == (cfg.effect is None):
        raise InvalidArgument("give exactly one of --resource or --effect")
    if cfg.resource is not None:
        return {"resource": resolve_state(cfg.resource)}
    return {"effect": _load(cfg.effect, io.load_effect)}


def _cmd_game_payoff(cfg: RunConfig) -> tuple[int, dict]:
    g = _load(_require(cfg.game, "--game"), io.load_game)
    strategy = _strategy(cfg)
    if "resource" in strategy:
        payoff = game_mod.quantum_payoff(g, strategy["resource"])
    else:
        payoff = game_mod.payoff_of_effect(g, strategy["effect"])
    bound = game_mod.classical_bound(g)
    return 0, {
        "classical_bound": bound,
        "quantum_payoff": payoff,
        "advantage": payoff - bound,
        "best_available": max(payoff, bound),
    }


def _cmd_game_simulate(cfg: RunConfig) -> tuple[int, dict]:
    g = _load(_require(cfg.game, "--game"), io.load_game)
    report = game_mod.simulate(g, cfg.rounds, cfg.seed, workers=cfg.workers, **_strategy(cfg))
    return 0, io.report_to_dict(report)


def _cmd_verify_werner(cfg: RunConfig) -> tuple[int, dict]:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    passed = 0
    for _ in range(cfg.trials):
        lhs, rhs = werner_identity_check(random_density((2, 2), rng))
        worst = max(worst, abs(lhs - rhs))
        passed += abs(lhs - rhs) <= IDENTITY_TOL
    code = 0 if passed == cfg.trials else 1
    return code, {"trials": cfg.trials, "passed": passed, "max_abs_error": worst, "seed": cfg.seed}


def _cmd_demo(cfg: RunConfig) -> tuple[int, dict]:
    """Singlet witness game, played with singlet and Werner resources."""
    rho = singlet()
    ppt, lmin = is_ppt(rho, cfg.tol_psd)
    wit = witness_from_ppt(rho, tol=cfg.tol_psd)
    g = game_mod.decompose_witness(wit)
    singlet_report = game_mod.simulate(g, cfg.rounds, cfg.seed, resource=rho)
    werner_report = game_mod.simulate(g, cfg.rounds, cfg.seed, resource=werner())
    ceiling = game_mod.verify_separable_ceiling(g, 1000, np.random.default_rng(cfg.seed))
    _, werner_check = _cmd_verify_werner(cfg)
    report = {
        "seed": cfg.seed,
        "rounds": cfg.rounds,
        "singlet_ppt": ppt,
        "singlet_min_pt_eigenvalue": lmin,
        "witness_value": wit.value_on_target,
        "alpha": g.alpha,
        "beta": g.beta,
        "classical_bound": singlet_report.classical_bound,
        "quantum_payoff": singlet_report.quantum_payoff,
        "advantage": singlet_report.advantage,
        "mc_estimate": singlet_report.mc_estimate,
        "mc_stderr": singlet_report.mc_stderr,
        "werner": {
            "quantum_payoff": werner_report.quantum_payoff,
            "advantage": werner_report.advantage,
            "mc_estimate": werner_report.mc_estimate,
            "mc_stderr": werner_report.mc_stderr,
        },
        "separable_ceiling": {"samples": 1000, "max_payoff": ceiling},
        "werner_identity": werner_check,
    }
    return 0, report


_HANDLERS = {
    "state": _cmd_state,
    "witness": _cmd_witness,
    "scheme-effective": _cmd_scheme_effective,
    "scheme-verify": _cmd_scheme_verify,
    "game-build": _cmd_game_build,
    "game-payoff": _cmd_game_payoff,
    "game-simulate": _cmd_game_simulate,
    "verify-werner": _cmd_verify_werner,
    "demo": _cmd_demo,
}


def _flatten(obj: dict, prefix: str = "") -> list[tuple[str, Any]]:
    rows = []
    for key in sorted(obj):
        value = obj[key]
        if isinstance(value, dict):
            rows.extend(_flatten(value, f"{prefix}{key}."))
        elif value is not None:
            rows.append((prefix + key, value))
    return rows


def render_text(report: dict) -> str:
    """key=value lines; floats shown to 12 significant digits (use --json for exact values)."""
    lines = []
    for key, value in _flatten(report):
        if isinstance(value, float):
            value = f"{value:.12g}"
        elif isinstance(value, bool):
            value = str(value).lower()
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    handler = _HANDLERS.get(cfg.command)
    if handler is None:
        print(f"error: unknown command {cfg.command!r}", file=stderr)
        return 2
    try:
        code, report = handler(cfg)
    except MalformedInput as exc:
        print(f"MalformedInput: {exc}", file=stderr)
        return 3
    except EntwitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return 2
    stdout.write(io.dumps(report) if cfg.json else render_text(report))
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help=f"RNG seed (default ${SEED_ENV} or {DEFAULT_SEED:#x})")
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--out", help="write the produced object to this JSON file")
    common.add_argument("--tol-psd", type=float, default=TOL_PSD)

    parser = argparse.ArgumentParser(prog="entwit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", parents=[common], help="export a named state")
    p.add_argument("name", help="singlet, werner, maxent:n or mixed:nxm")

    p = sub.add_parser("witness", parents=[common], help="construct an entanglement witness")
    p.add_argument("--state", required=True)
    p.add_argument("--method", choices=("ppt", "gilbert"), default="ppt")
    p.add_argument("--iters", type=int, default=2000)

    p = sub.add_parser("scheme", help="non-bilocal measurement scheme")
    scheme_sub = p.add_subparsers(dest="action", required=True)
    q = scheme_sub.add_parser("effective", parents=[common])
    q.add_argument("--resource", required=True)
    q = scheme_sub.add_parser("verify", parents=[common])
    q.add_argument("--resource")
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--dims")

    p = sub.add_parser("game", help="witness state-guessing game")
    game_sub = p.add_subparsers(dest="action", required=True)
    q = game_sub.add_parser("build", parents=[common])
    q.add_argument("--witness", required=True)
    q.add_argument("--allow-heuristic", action="store_true")
    for action in ("payoff", "simulate"):
        q = game_sub.add_parser(action, parents=[common])
        q.add_argument("--game", required=True)
        q.add_argument("--resource")
        q.add_argument("--effect")
        if action == "simulate":
            q.add_argument("--rounds", type=int, default=100_000)
            q.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("verify-werner", parents=[common], help="check the Werner teleportation identity")
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("demo", parents=[common], help="end-to-end singlet pipeline")
    p.add_argument("--rounds", type=int, default=100_000)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    command = ns.command
    if getattr(ns, "action", None):
        command = f"{command}-{ns.action}"
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    fields["command"] = command
    if ns.seed is None:
        fields["seed"] = default_seed()
    return RunConfig(**fields)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except EntwitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
