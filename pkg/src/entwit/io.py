"""JSON file formats for operators, witnesses, games and reports.

Floats go through ``repr`` (shortest round-trip form), so a write followed by
a read returns bit-identical values.
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path
from typing import Any

from .game import GameReport, GameSpec
from .linalg import DensityState, Effect, Operator, operator_from_dict, operator_to_dict
from .separability import Certification, Provenance, Witness


def witness_to_dict(wit: Witness) -> dict:
    out = operator_to_dict(wit.h)
    out["value_on_target"] = float(wit.value_on_target)
    out["provenance"] = wit.provenance.value
    out["certification"] = wit.certification.value
    return out


def witness_from_dict(obj: dict) -> Witness:
    return Witness(
        h=operator_from_dict(obj),
        value_on_target=float(obj["value_on_target"]),
        provenance=Provenance(obj["provenance"]),
        certification=Certification(obj["certification"]),
    )


def game_to_dict(g: GameSpec) -> dict:
    return {
        "dims": list(g.dims),
        "alpha": float(g.alpha),
        "beta": float(g.beta),
        "prior_w1": g.prior_w1,
        "prior_w2": g.prior_w2,
        "w1": operator_to_dict(g.w1),
        "w2": operator_to_dict(g.w2),
        "h_t": operator_to_dict(g.h_t),
    }


def game_from_dict(obj: dict) -> GameSpec:
    return GameSpec(
        w1=operator_from_dict(obj["w1"], DensityState),
        w2=operator_from_dict(obj["w2"], DensityState),
        alpha=float(obj["alpha"]),
        beta=float(obj["beta"]),
        h_t=operator_from_dict(obj["h_t"]),
    )


def report_to_dict(report: GameReport) -> dict:
    return dataclasses.asdict(report)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load_operator(path: str | Path) -> Operator:
    return operator_from_dict(read_json(path))


def load_density(path: str | Path) -> DensityState:
    return operator_from_dict(read_json(path), DensityState)


def load_effect(path: str | Path) -> Effect:
    return operator_from_dict(read_json(path), Effect)


def load_witness(path: str | Path) -> Witness:
    return witness_from_dict(read_json(path))


def load_game(path: str | Path) -> GameSpec:
    return game_from_dict(read_json(path))
