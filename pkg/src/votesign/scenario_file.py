"""JSON scenario files for the ``power`` and ``coverage`` commands.

Example::

    {
      "alpha": 0.025,
      "level": 0.95,
      "replications": 10000,
      "seed": 7,
      "scenarios": [{"name": "s1-k7", "n": 12, "K": 7, "pi_S": 0.05, "pi_L": 0.55}],
      "vectors": [{"name": "null", "pi": [0.5, 0.5, 0.5], "target": 0.5}]
    }

Every key is optional except that at least one scenario or vector must be
present. Unknown keys are rejected with their location.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .dist import ProbabilityVector
from .errors import DomainError
from .votes import ScenarioSpec


class ScenarioFileError(DomainError):
    pass


@dataclass(frozen=True)
class NamedVector:
    name: str
    pv: ProbabilityVector
    target: Optional[float] = None


@dataclass(frozen=True)
class ScenarioFile:
    scenarios: list[tuple[str, ScenarioSpec]] = field(default_factory=list)
    vectors: list[NamedVector] = field(default_factory=list)
    alpha: Optional[float] = None
    level: Optional[float] = None
    replications: Optional[int] = None
    seed: Optional[int] = None


_TOP = {"scenarios", "vectors", "alpha", "level", "replications", "seed"}
_SCENARIO = {"name", "n", "K", "pi_S", "pi_L"}
_VECTOR = {"name", "pi", "target"}


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ScenarioFileError(f"{where}.{key}: unknown field" if where else f"{key}: unknown field")


def _number(value: Any, where: str, integer: bool = False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFileError(f"{where}: expected a number, got {value!r}")
    if integer and (isinstance(value, float) and not value.is_integer()):
        raise ScenarioFileError(f"{where}: expected an integer, got {value!r}")
    return int(value) if integer else float(value)


def _wrap(where: str, build):
    try:
        return build()
    except ScenarioFileError:
        raise
    except DomainError as exc:
        raise ScenarioFileError(f"{where}: {exc}") from None


def parse_scenario_document(doc: Any) -> ScenarioFile:
    if not isinstance(doc, dict):
        raise ScenarioFileError("top level: expected an object")
    _reject_unknown(doc, _TOP, "")

    scenarios = []
    raw = doc.get("scenarios", [])
    if not isinstance(raw, list):
        raise ScenarioFileError("scenarios: expected a list")
    for i, item in enumerate(raw):
        where = f"scenarios[{i}]"
        if not isinstance(item, dict):
            raise ScenarioFileError(f"{where}: expected an object")
        _reject_unknown(item, _SCENARIO, where)
        for key in ("n", "K", "pi_S", "pi_L"):
            if key not in item:
                raise ScenarioFileError(f"{where}.{key}: missing field")
        spec = _wrap(where, lambda: ScenarioSpec(
            _number(item["n"], f"{where}.n", integer=True),
            _number(item["K"], f"{where}.K", integer=True),
            _number(item["pi_S"], f"{where}.pi_S"),
            _number(item["pi_L"], f"{where}.pi_L"),
        ))
        scenarios.append((str(item.get("name", where)), spec))

    vectors = []
    raw = doc.get("vectors", [])
    if not isinstance(raw, list):
        raise ScenarioFileError("vectors: expected a list")
    for i, item in enumerate(raw):
        where = f"vectors[{i}]"
        if not isinstance(item, dict):
            raise ScenarioFileError(f"{where}: expected an object")
        _reject_unknown(item, _VECTOR, where)
        if not isinstance(item.get("pi"), list):
            raise ScenarioFileError(f"{where}.pi: expected a list of probabilities")
        probs = [_number(p, f"{where}.pi[{j}]") for j, p in enumerate(item["pi"])]
        pv = _wrap(f"{where}.pi", lambda: ProbabilityVector(probs))
        target = item.get("target")
        if target is not None:
            target = _number(target, f"{where}.target")
        vectors.append(NamedVector(str(item.get("name", where)), pv, target))

    if not scenarios and not vectors:
        raise ScenarioFileError("top level: need at least one entry in 'scenarios' or 'vectors'")

    def opt(key, integer=False):
        return None if doc.get(key) is None else _number(doc[key], key, integer)

    return ScenarioFile(
        scenarios=scenarios,
        vectors=vectors,
        alpha=opt("alpha"),
        level=opt("level"),
        replications=opt("replications", integer=True),
        seed=opt("seed", integer=True),
    )


def load_scenario_file(path) -> ScenarioFile:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ScenarioFileError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioFileError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_scenario_document(doc)
