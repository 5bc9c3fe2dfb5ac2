import pytest

import credal as cr


@pytest.fixture
def shape_color():
    """The shape/color running example: marginal tables over a partition."""
    space = cr.VariableSpace([("C", ["B", "W"]), ("S", ["S", "C"])])
    model = cr.Model(space, [{"C"}, {"S"}])
    tables = {
        frozenset({"C"}): cr.Distribution(
            space.subspace({"C"}), {("B",): "0.7", ("W",): "0.3"}
        ),
        frozenset({"S"}): cr.Distribution(
            space.subspace({"S"}), {("S",): "0.6", ("C",): "0.4"}
        ),
    }
    k = cr.from_marginals(space, model, tables)
    dp = cr.DecisionProblem(
        space,
        ["a_BS", "a_BC", "a_WS", "a_WC"],
        [
            [10, -5, -5, -5],
            [-1, 10, -1, -1],
            [-50, -50, 540, -50],
            [-1, -1, -1, 10],
        ],
    )
    return space, model, tables, k, dp


@pytest.fixture
def coin():
    """The coin example: p(H) in [0.4, 0.6]."""
    space = cr.VariableSpace([("coin", ["H", "T"])])
    k = cr.from_intervals(space, {("H",): ("0.4", "0.6")})
    dp = cr.DecisionProblem(
        space, ["a1", "a2", "a3"], [[1000, -995], [-995, 1000], [0, 0]]
    )
    return space, k, dp


@pytest.fixture
def three_table():
    """Six variables, three marginal tables, target {C, S}."""
    space = cr.VariableSpace(
        [
            ("C", ["B", "W"]),
            ("M", ["A", "P"]),
            ("S", ["S", "C"]),
            ("D", ["L", "M", "H"]),
            ("U", ["L", "H"]),
            ("A", ["L", "M", "H"]),
        ]
    )
    model = cr.Model(space, [{"C", "M"}, {"M", "S", "D"}, {"U", "A"}])
    p1 = cr.Distribution(
        space.subspace({"C", "M"}),
        {("B", "A"): "0.6", ("B", "P"): "0.1", ("W", "A"): "0.2", ("W", "P"): "0.1"},
    )
    p2 = cr.Distribution(
        space.subspace({"M", "S", "D"}),
        {
            ("A", "S", "L"): "0.4", ("A", "S", "M"): "0", ("A", "S", "H"): "0",
            ("A", "C", "L"): "0.4", ("A", "C", "M"): "0", ("A", "C", "H"): "0",
            ("P", "S", "L"): "0", ("P", "S", "M"): "0.2", ("P", "S", "H"): "0",
            ("P", "C", "L"): "0", ("P", "C", "M"): "0", ("P", "C", "H"): "0",
        },
    )
    p3 = cr.Distribution(
        space.subspace({"U", "A"}),
        {
            ("L", "L"): "0.1", ("L", "M"): "0", ("L", "H"): "0",
            ("H", "L"): "0.2", ("H", "M"): "0.3", ("H", "H"): "0.4",
        },
    )
    tables = {
        frozenset({"C", "M"}): p1,
        frozenset({"M", "S", "D"}): p2,
        frozenset({"U", "A"}): p3,
    }
    dp = cr.DecisionProblem(
        space.subspace({"C", "S"}),
        ["a_BS", "a_BC", "a_WS", "a_WC"],
        [
            [10, -5, -5, -5],
            [-1, 10, -1, -1],
            [-50, -50, 540, -50],
            [-1, -1, -1, 10],
        ],
    )
    return space, model, tables, dp
