"""Maximum-entropy extension of marginal tables by iterative proportional fitting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .domain import Distribution, DomainError, Model, VariableSpace
from .sets import from_marginals, is_consistent

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_SWEEPS = 10000


class MaxEntError(RuntimeError):
    """Inconsistent marginals or failure to converge."""


@dataclass(frozen=True)
class MaxEntResult:
    """The entropy-maximizing extension of a set of marginal tables.

    The masses are exact rationals when fitting terminates after the first
    sweep (always the case for partition models); otherwise they are floats
    with the stated residual.
    """

    space: VariableSpace
    distribution: tuple
    entropy: float
    iterations: int
    residual: float
    exact: bool

    def as_distribution(self) -> Distribution:
        if not self.exact:
            raise MaxEntError("result is a float approximation, not exact")
        return Distribution(self.space, self.distribution)


def entropy(mass, base: float = math.e) -> float:
    """Shannon entropy -sum p log p, with 0 log 0 = 0."""
    total = 0.0
    for m in mass:
        m = float(m)
        if m > 0.0:
            total -= m * math.log(m)
    return total / math.log(base)


def _cells(space: VariableSpace, block: frozenset[str]):
    """For each cell of the block's marginal, the indices of matching states."""
    sub = space.subspace(block)
    positions = [space.names.index(n) for n in sub.names]
    groups = {cell: [] for cell in sub.states}
    for j, state in enumerate(space.states):
        groups[tuple(state[i] for i in positions)].append(j)
    return sub, groups


def maxent_extend(
    space: VariableSpace,
    model: Model,
    tables: Mapping[frozenset[str], Distribution],
    base: float = math.e,
    tolerance: float = DEFAULT_TOLERANCE,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> MaxEntResult:
    """Fit the unique maximum-entropy joint distribution matching the tables.

    Starts from the uniform distribution and cycles over the marginal cells
    in model declaration order (cells lexicographic), rescaling the matching
    states multiplicatively.  The first sweep runs in exact rationals; if it
    already reproduces every table (e.g. the blocks form a partition) the
    result is exact, otherwise fitting continues in floating point.
    """
    tables = {frozenset(b): t for b, t in tables.items()}
    if not is_consistent(from_marginals(space, model, tables)):
        raise MaxEntError("the marginal tables are inconsistent")

    n = space.n_states
    plans = []
    for block in model.blocks:
        if not block:
            continue
        sub, groups = _cells(space, block)
        plans.append([(groups[cell], tables[block][cell]) for cell in sub.states])

    # exact first sweep
    p = [Fraction(1, n)] * n
    for plan in plans:
        for indices, target in plan:
            current = sum(p[j] for j in indices)
            if current == 0:
                if target != 0:
                    raise MaxEntError(
                        "a marginal cell with positive mass is unreachable"
                    )
                continue
            factor = Fraction(target) / current
            for j in indices:
                p[j] *= factor
    residual = _residual(p, plans)
    if residual == 0:
        return MaxEntResult(
            space=space,
            distribution=tuple(p),
            entropy=entropy(p, base),
            iterations=1,
            residual=0.0,
            exact=True,
        )

    # float continuation
    q = [float(m) for m in p]
    for sweep in range(2, max_sweeps + 1):
        for plan in plans:
            for indices, target in plan:
                current = sum(q[j] for j in indices)
                target = float(target)
                if current == 0.0:
                    if target > tolerance:
                        raise MaxEntError(
                            "a marginal cell with positive mass is unreachable"
                        )
                    continue
                factor = target / current
                for j in indices:
                    q[j] *= factor
        residual = _residual(q, plans)
        if residual <= tolerance:
            return MaxEntResult(
                space=space,
                distribution=tuple(q),
                entropy=entropy(q, base),
                iterations=sweep,
                residual=float(residual),
                exact=False,
            )
    raise MaxEntError(f"no convergence within {max_sweeps} sweeps")


def _residual(p, plans):
    """Largest absolute deviation of the fitted marginals from the tables."""
    worst = 0
    for plan in plans:
        for indices, target in plan:
            dev = abs(sum(p[j] for j in indices) - target)
            if dev > worst:
                worst = dev
    return worst
