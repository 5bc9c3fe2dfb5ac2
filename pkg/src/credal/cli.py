"""Command-line front end.

    credal check|intervals|decide|maxent|reduce|admissible <file>
           [--criterion C] [--alpha RAT] [--format text|json] [--intervals]

Exit codes: 0 success, 1 usage error, 2 inconsistent constraints,
3 internal solver error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import criteria, maxent, reduction, sets
from .domain import DomainError, to_fraction
from .lp import SolverError
from .maxent import MaxEntError
from .problemfile import ProblemFile, ProblemFileError, load_problem
from .sets import EmptyCredalSetError

log = logging.getLogger("credal")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
EXIT_SOLVER = 3


class UsageError(ValueError):
    pass


def fmt_rat(value: Fraction) -> str:
    """A fraction in lowest terms with a 6-place decimal approximation."""
    return f"{value} ({float(value):.6f})"


def _rat_str(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


def _state_key(state) -> str:
    return ",".join(state)


def _interval_doc(intervals):
    return [
        {
            "action": iv.action,
            "lo": _rat_str(iv.lo),
            "hi": _rat_str(iv.hi),
            "lo_witness": {_state_key(s): _rat_str(m) for s, m in iv.lo_witness.as_dict().items()},
            "hi_witness": {_state_key(s): _rat_str(m) for s, m in iv.hi_witness.as_dict().items()},
        }
        for iv in intervals
    ]


def _ranking_doc(result):
    return {
        "criterion": result.criterion,
        "chosen": result.chosen,
        "parameters": {k: _rat_str(v) for k, v in result.parameters.items()},
        "ranking": [
            {"action": a, "score": _rat_str(s)} for a, s in result.ranking
        ],
    }


def _emit(doc: dict, text_lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _intervals_for(pf: ProblemFile):
    if pf.has_target:
        if pf.model is None:
            raise UsageError(
                "target_variables needs a marginals constraint section"
            )
        return reduction.projected_utility_intervals(
            pf.problem, pf.model, pf.tables, pf.target
        )
    return criteria.utility_intervals(pf.problem, pf.credal)


def cmd_check(pf: ProblemFile, args) -> int:
    ok, witness = sets.feasible(pf.credal)
    if not ok:
        _emit({"consistent": False}, ["inconsistent: the credal set is empty"], args.format)
        return EXIT_INCONSISTENT
    doc = {
        "consistent": True,
        "witness": {_state_key(s): _rat_str(m) for s, m in witness.as_dict().items()},
    }
    lines = ["consistent"] + [
        f"  p({_state_key(s)}) = {fmt_rat(m)}" for s, m in witness.as_dict().items()
    ]
    _emit(doc, lines, args.format)
    return EXIT_OK


def cmd_intervals(pf: ProblemFile, args) -> int:
    intervals = _intervals_for(pf)
    doc = {"intervals": _interval_doc(intervals)}
    lines = [
        f"U({iv.action}) = [{fmt_rat(iv.lo)}, {fmt_rat(iv.hi)}]" for iv in intervals
    ]
    _emit(doc, lines, args.format)
    return EXIT_OK


def cmd_decide(pf: ProblemFile, args) -> int:
    name = args.criterion
    if name is None:
        raise UsageError("decide requires --criterion")
    alpha = None
    if name in ("gh", "hurwicz"):
        if args.alpha is None:
            raise UsageError(f"criterion {name!r} requires --alpha")
        alpha = to_fraction(args.alpha)

    if name in ("gm", "gh") and pf.has_target:
        result = criteria.choose_from_intervals(_intervals_for(pf), name, alpha)
    elif name == "gm":
        result = criteria.gm_choose(pf.problem, pf.credal)
    elif name == "gh":
        result = criteria.gh_choose(pf.problem, pf.credal, alpha)
    elif name == "levi":
        _no_target(pf, name)
        result = criteria.levi_choose(pf.problem, pf.credal)
    elif name == "pme":
        _no_target(pf, name)
        result = criteria.pme_choose(pf.problem, pf.credal)
    elif name == "maximin":
        result = criteria.maximin_choose(pf.problem)
    elif name == "hurwicz":
        result = criteria.hurwicz_choose(pf.problem, alpha)
    elif name == "regret":
        result = criteria.minimax_regret_choose(pf.problem)
    else:
        raise UsageError(f"unknown criterion {name!r}")

    doc = _ranking_doc(result)
    lines = [f"chosen: {result.chosen}  [{result.criterion}]"] + [
        f"  {a}: {fmt_rat(s)}" for a, s in result.ranking
    ]
    _emit(doc, lines, args.format)
    return EXIT_OK


def _no_target(pf: ProblemFile, name: str) -> None:
    if pf.has_target:
        raise UsageError(
            f"criterion {name!r} does not support target_variables projection"
        )


def cmd_maxent(pf: ProblemFile, args) -> int:
    if pf.credal.marginal_model is None:
        raise UsageError("maxent requires constraints given only as marginal tables")
    result = maxent.maxent_extend(pf.space, pf.model, pf.tables)
    doc = {
        "distribution": {
            _state_key(s): _rat_str(m)
            for s, m in zip(pf.space.states, result.distribution)
        },
        "entropy": result.entropy,
        "iterations": result.iterations,
        "residual": result.residual,
        "exact": result.exact,
    }
    lines = [
        f"p*({_state_key(s)}) = " + (fmt_rat(m) if result.exact else repr(float(m)))
        for s, m in zip(pf.space.states, result.distribution)
    ]
    lines.append(f"entropy = {result.entropy!r} nats")
    lines.append(f"iterations = {result.iterations}, residual = {result.residual!r}")
    _emit(doc, lines, args.format)
    return EXIT_OK


def cmd_reduce(pf: ProblemFile, args) -> int:
    if pf.model is None or pf.target is None:
        raise UsageError("reduce requires a marginals section and target_variables")
    outcome = reduction.reduce_model(pf.model, pf.target)
    doc = {
        "reduced": [sorted(b) for b in outcome.reduced.blocks],
        "dropped_blocks": [sorted(b) for b in outcome.dropped_blocks],
        "dropped_variables": list(outcome.dropped_variables),
    }
    lines = ["W = {" + ", ".join("{" + ",".join(sorted(b)) + "}" for b in outcome.reduced.blocks) + "}"]
    if outcome.dropped_blocks:
        lines.append(
            "dropped blocks: "
            + ", ".join("{" + ",".join(sorted(b)) + "}" for b in outcome.dropped_blocks)
        )
    if outcome.dropped_variables:
        lines.append("dropped variables: " + ", ".join(outcome.dropped_variables))
    if args.intervals:
        intervals = reduction.projected_utility_intervals(
            pf.problem, pf.model, pf.tables, pf.target
        )
        doc["intervals"] = _interval_doc(intervals)
        lines += [
            f"U'({iv.action}) = [{fmt_rat(iv.lo)}, {fmt_rat(iv.hi)}]"
            for iv in intervals
        ]
    _emit(doc, lines, args.format)
    return EXIT_OK


def cmd_admissible(pf: ProblemFile, args) -> int:
    _no_target(pf, "admissible")
    pairs = criteria.e_admissible_witnesses(pf.problem, pf.credal)
    doc = {
        "e_admissible": [
            {
                "action": a,
                "witness": {_state_key(s): _rat_str(m) for s, m in w.as_dict().items()},
            }
            for a, w in pairs
        ]
    }
    lines = []
    for a, w in pairs:
        lines.append(f"{a}: E-admissible at")
        lines += [f"  p({_state_key(s)}) = {fmt_rat(m)}" for s, m in w.as_dict().items()]
    _emit(doc, lines, args.format)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "intervals": cmd_intervals,
    "decide": cmd_decide,
    "maxent": cmd_maxent,
    "reduce": cmd_reduce,
    "admissible": cmd_admissible,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="credal", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("file", help="JSON problem file")
    parser.add_argument("--criterion", choices=["gm", "gh", "levi", "pme", "maximin", "hurwicz", "regret"])
    parser.add_argument("--alpha", help="pessimism index in [0, 1], exact rational")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--intervals", action="store_true", help="with reduce: also print sharpened intervals")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("CREDAL_LOG", "WARNING").upper())
    try:
        args = build_parser().parse_args(argv)
        pf = load_problem(args.file)
        return COMMANDS[args.command](pf, args)
    except (UsageError, ProblemFileError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EmptyCredalSetError, MaxEntError) as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
