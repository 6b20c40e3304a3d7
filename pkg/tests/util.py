"""Shared fixtures and independent oracles for the test suite.

The oracles here (brute-force enumeration, a tiny recursive DPLL, universal
expansion) are deliberately separate implementations from the code paths
they check.
"""

from __future__ import annotations

import itertools

from benchlock.netlist import Circuit, TriPattern, evaluate_nets

MAJ_BENCH = """\
INPUT(x1)
INPUT(x2)
INPUT(x3)
OUTPUT(maj)
a1 = AND(x1, x2)
a2 = AND(x1, x3)
a3 = AND(x2, x3)
maj = OR(a1, a2, a3)
"""

C17_BENCH = """\
# c17
INPUT(1)
INPUT(2)
INPUT(3)
INPUT(6)
INPUT(7)
OUTPUT(22)
OUTPUT(23)
10 = NAND(1, 3)
11 = NAND(3, 6)
16 = NAND(2, 11)
19 = NAND(11, 7)
22 = NAND(10, 16)
23 = NAND(16, 19)
"""


def all_patterns(names):
    """Every complete 0/1 assignment over `names` (dict per row)."""
    names = tuple(names)
    for bits in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))


def brute_force_table(c: Circuit, order=None):
    """Exhaustive truth table via plain simulation: tuple-of-rows per output."""
    order = tuple(order or c.inputs)
    table = {}
    for assign in all_patterns(order):
        vals = evaluate_nets(c, assign)
        key = tuple(assign[n] for n in order)
        table[key] = tuple(vals[o] for o in c.outputs)
    return table


def circuits_equal_brute(a: Circuit, b: Circuit, order=None) -> bool:
    order = tuple(order or a.inputs)
    assert set(order) == set(b.inputs) == set(a.inputs)
    return brute_force_table(a, order) == brute_force_table(b, order)


def dpll(clauses, assignment=None):
    """Reference DPLL with unit propagation; returns a model dict or None."""
    assignment = dict(assignment or {})
    clauses = [list(cl) for cl in clauses]
    while True:
        unit = None
        simplified = []
        for cl in clauses:
            lits = []
            satisfied = False
            for lit in cl:
                v = assignment.get(abs(lit))
                if v is None:
                    lits.append(lit)
                elif (lit > 0) == bool(v):
                    satisfied = True
                    break
            if satisfied:
                continue
            if not lits:
                return None
            if len(lits) == 1 and unit is None:
                unit = lits[0]
            simplified.append(lits)
        clauses = simplified
        if unit is None:
            break
        assignment[abs(unit)] = 1 if unit > 0 else 0
    if not clauses:
        return assignment
    var = abs(clauses[0][0])
    for val in (1, 0):
        res = dpll(clauses, {**assignment, var: val})
        if res is not None:
            return res
    return None


def enumerate_models(n_vars, clauses, project=None, limit=100000):
    """All models (projected to `project` vars) via blocking clauses."""
    project = sorted(project or range(1, n_vars + 1))
    clauses = [list(c) for c in clauses]
    models = set()
    while len(models) < limit:
        m = dpll(clauses)
        if m is None:
            return models
        row = tuple(m.get(v, 0) for v in project)
        models.add(row)
        clauses.append([(-v if m.get(v, 0) else v) for v in project])
    raise RuntimeError("model enumeration limit hit")


def expansion_2qbf(problem):
    """Universal-expansion oracle for two-level exists/forall problems.

    Conjoins the matrix over every assignment of the forall block (fresh
    copies of non-existential variables) and runs one reference-DPLL call.
    Only usable for small forall blocks.
    """
    exists = sorted(problem.exists_vars)
    forall = sorted(problem.forall_vars)
    matrix = problem.matrix
    pin_var = matrix.var_map[problem.pinned[0]]
    pin_lit = pin_var if problem.pinned[1] else -pin_var
    exists_set = set(exists)
    next_var = len(exists) + 1
    remap_base = {v: i + 1 for i, v in enumerate(exists)}
    big: list[list[int]] = []
    next_free = [next_var]

    for bits in itertools.product((0, 1), repeat=len(forall)):
        fixed = dict(zip(forall, bits))
        local: dict[int, int] = {}

        def var_of(v):
            if v in exists_set:
                return remap_base[v]
            if v not in local:
                local[v] = next_free[0]
                next_free[0] += 1
            return local[v]

        for cl in list(matrix.clauses) + [[pin_lit]]:
            lits = []
            sat = False
            for lit in cl:
                v = abs(lit)
                if v in fixed:
                    if (lit > 0) == bool(fixed[v]):
                        sat = True
                        break
                    continue
                lits.append(var_of(v) if lit > 0 else -var_of(v))
            if sat:
                continue
            if not lits:
                return None  # this branch is unsatisfiable for every key
            big.append(lits)
    model = dpll(big)
    if model is None:
        return None
    return {v: model.get(remap_base[v], 0) for v in exists}
