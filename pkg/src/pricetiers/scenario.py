"""Scenario files, their parsing, and seeded random instances."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import ScenarioParseError
from .market import EPS_TIE, Market, validate_market


@dataclass(frozen=True)
class Scenario:
    """Market description as read from a file, group order preserved."""

    capacity: float
    groups: tuple[tuple[float, float], ...]
    label: str | None = None

    def to_market(self) -> Market:
        return validate_market(self.groups, self.capacity)


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioParseError(f"{where} must be a number, got {value!r}")
    return value


def parse_scenario(text: str) -> Scenario:
    """Parse a JSON scenario document.

    Expected shape::

        {"capacity": 3, "groups": [{"theta": 16, "count": 1}, ...],
         "label": "optional name"}

    Field errors carry a JSON-path style context; market-level problems
    (negative capacity, bad thetas, fractional counts) surface as validation
    errors right away rather than at solve time.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ScenarioParseError("top level must be an object")
    if "capacity" not in doc:
        raise ScenarioParseError("missing field 'capacity'")
    capacity = _require_number(doc["capacity"], "field 'capacity'")

    groups_doc = doc.get("groups")
    if not isinstance(groups_doc, list) or not groups_doc:
        raise ScenarioParseError("field 'groups' must be a non-empty array")
    pairs: list[tuple[float, float]] = []
    for i, entry in enumerate(groups_doc):
        if not isinstance(entry, dict):
            raise ScenarioParseError(f"groups[{i}]: must be an object")
        for field in ("theta", "count"):
            if field not in entry:
                raise ScenarioParseError(f"groups[{i}]: missing field '{field}'")
        theta = _require_number(entry["theta"], f"groups[{i}].theta")
        count = _require_number(entry["count"], f"groups[{i}].count")
        pairs.append((theta, count))

    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ScenarioParseError("field 'label' must be a string")

    scenario = Scenario(capacity=float(capacity), groups=tuple(pairs), label=label)
    scenario.to_market()  # surface validation problems at parse time
    return scenario


def load_scenario(path: str | Path) -> Scenario:
    """Read and parse a scenario file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"cannot read {path}: {exc}") from None
    return parse_scenario(text)


def random_market(
    rng: random.Random, min_groups: int = 1, max_groups: int = 4
) -> Market:
    """Seeded random instance: log-uniform thetas and capacity, 1..100 users.

    Thetas and capacity are drawn log-uniformly from [0.1, 100]; a fresh
    theta is redrawn whenever it lands within the tie-merge tolerance of an
    existing one, so the instance keeps its intended group count.
    """
    size = rng.randint(min_groups, max_groups)
    thetas: list[float] = []
    while len(thetas) < size:
        theta = 10.0 ** rng.uniform(-1.0, 2.0)
        if all(abs(theta - other) > EPS_TIE * max(theta, other) for other in thetas):
            thetas.append(theta)
    pairs = [(theta, rng.randint(1, 100)) for theta in thetas]
    capacity = 10.0 ** rng.uniform(-1.0, 2.0)
    return validate_market(pairs, capacity)
