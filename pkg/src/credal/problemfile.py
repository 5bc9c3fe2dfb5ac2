"""JSON problem files: variables, actions, utilities, and constraint sections.

Decimals are carried as strings ("0.7") or integers and parsed to exact
rationals; binary floating literals are rejected so golden results stay
bit-exact.  State tuples are keyed by value names joined with "," in the
declared variable order (e.g. "B,S").
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .domain import (
    DecisionProblem,
    Distribution,
    DomainError,
    Model,
    VariableSpace,
    to_fraction,
)
from . import sets
from .sets import CredalSet, LinearConstraint


class ProblemFileError(ValueError):
    """Malformed problem file."""


@dataclass(frozen=True)
class ProblemFile:
    space: VariableSpace
    problem: DecisionProblem
    credal: CredalSet
    # present iff the constraints include a marginals section
    model: Model | None
    tables: dict | None
    target: tuple[str, ...] | None

    @property
    def has_target(self) -> bool:
        return self.target is not None and set(self.target) != set(self.space.names)


def _reject_float(text: str):
    raise ProblemFileError(
        f"floating literal {text!r}: write decimals as strings to keep them exact"
    )


def load_problem(path: str) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh, parse_float=_reject_float)
        except json.JSONDecodeError as exc:
            raise ProblemFileError(f"invalid JSON: {exc}") from exc
    return parse_problem(raw)


def _state_key(space: VariableSpace, key: str) -> tuple[str, ...]:
    parts = tuple(key.split(",")) if key else ()
    if len(parts) != len(space.names):
        raise ProblemFileError(
            f"state key {key!r} has {len(parts)} parts, expected {len(space.names)}"
        )
    return parts


def parse_problem(raw: Mapping) -> ProblemFile:
    try:
        space = VariableSpace(list(raw["variables"].items()))
    except KeyError:
        raise ProblemFileError("missing 'variables' section")
    except DomainError as exc:
        raise ProblemFileError(str(exc)) from exc

    target = raw.get("target_variables")
    if target is not None:
        target = tuple(target)
        unknown = set(target) - set(space.names)
        if unknown:
            raise ProblemFileError(f"unknown target variables {sorted(unknown)}")
        dp_space = space.subspace(target)
    else:
        dp_space = space

    try:
        actions = raw["actions"]
        utilities = {
            action: {
                _state_key(dp_space, key): to_fraction(v) for key, v in row.items()
            }
            for action, row in raw["utilities"].items()
        }
        problem = DecisionProblem(dp_space, actions, utilities)
    except KeyError as exc:
        raise ProblemFileError(f"missing section: {exc}")
    except DomainError as exc:
        raise ProblemFileError(str(exc)) from exc

    constraints = raw.get("constraints", {})
    parts: list[CredalSet] = []
    model = None
    tables = None

    try:
        if "marginals" in constraints:
            blocks = [frozenset(entry["block"]) for entry in constraints["marginals"]]
            model = Model(space, blocks)
            tables = {}
            for entry in constraints["marginals"]:
                block = frozenset(entry["block"])
                sub = space.subspace(block)
                tables[block] = Distribution(
                    sub,
                    {_state_key(sub, key): v for key, v in entry["table"].items()},
                )
            parts.append(sets.from_marginals(space, model, tables))
        if "intervals" in constraints:
            bounds = {
                _state_key(space, key): (lo, hi)
                for key, (lo, hi) in constraints["intervals"].items()
            }
            parts.append(sets.from_intervals(space, bounds))
        if "ordering" in constraints:
            chain = [_state_key(space, key) for key in constraints["ordering"]]
            parts.append(sets.from_ordering(space, chain))
        if "linear" in constraints:
            raws = []
            for entry in constraints["linear"]:
                coeffs = [to_fraction(0)] * space.n_states
                for key, c in entry["coefficients"].items():
                    coeffs[space.state_index(_state_key(space, key))] = to_fraction(c)
                raws.append(
                    LinearConstraint(coeffs, entry["relation"], entry["rhs"])
                )
            parts.append(sets.from_raw(space, raws))
    except (DomainError, KeyError, TypeError) as exc:
        raise ProblemFileError(f"bad constraints section: {exc}") from exc

    if not parts:
        credal = sets.full_simplex(space)
    elif len(parts) == 1:
        credal = parts[0]  # keeps marginal provenance for the max-entropy rule
    else:
        credal = parts[0]
        for part in parts[1:]:
            credal = sets.intersect(credal, part)

    return ProblemFile(
        space=space,
        problem=problem,
        credal=credal,
        model=model,
        tables=tables,
        target=target,
    )
