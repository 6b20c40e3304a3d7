"""Combinational netlists in bench format: parse, write, simulate, transform.

Nets are plain strings.  A Circuit is an immutable DAG; every transform
returns a new Circuit and re-validates the structural invariants (acyclic,
single driver per net, outputs driven, gate arities).  Simulation is
three-valued: 0, 1 and X (represented as None) for unknown.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

GATE_KINDS = ("AND", "NAND", "OR", "NOR", "XOR", "XNOR", "NOT", "BUF")

DEFAULT_KEY_PREFIX = "keyinput"

X = None  # third simulation value


class CircuitError(ValueError):
    """Violation of a structural circuit invariant."""


class BenchParseError(CircuitError):
    """Malformed bench text; carries the offending line number."""

    def __init__(self, msg: str, line_no: int):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


@dataclass(frozen=True)
class Gate:
    output: str
    kind: str
    fanins: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r} ({self.output})")
        if self.kind in ("NOT", "BUF"):
            if len(self.fanins) != 1:
                raise CircuitError(
                    f"{self.kind} takes exactly 1 fanin, got {len(self.fanins)} ({self.output})"
                )
        elif len(self.fanins) < 2:
            raise CircuitError(f"{self.kind} requires >=2 fanins ({self.output})")


@dataclass(frozen=True)
class TriPattern:
    """Partial assignment over a declared name set; values 0, 1 or X (None)."""

    assignment: dict[str, int | None]

    @classmethod
    def over(cls, names, mapping) -> "TriPattern":
        names = tuple(names)
        if set(mapping) != set(names):
            missing = set(names) - set(mapping)
            extra = set(mapping) - set(names)
            raise CircuitError(f"pattern domain mismatch (missing={sorted(missing)}, extra={sorted(extra)})")
        return cls({n: mapping[n] for n in names})

    @classmethod
    def from_bits(cls, names, bits: str) -> "TriPattern":
        return cls.over(names, bits_to_assignment(names, bits))

    def bits(self, names) -> str:
        return assignment_to_bits(names, self.assignment)

    @property
    def x_count(self) -> int:
        return sum(1 for v in self.assignment.values() if v is X)

    def is_complete(self) -> bool:
        return self.x_count == 0


def bits_to_assignment(names, bits: str) -> dict[str, int | None]:
    """Decode an MSB-first bitstring: bits[0] belongs to names[-1].

    'X'/'x' stand for the unknown value.
    """
    names = tuple(names)
    if len(bits) != len(names):
        raise CircuitError(f"bitstring length {len(bits)} != {len(names)} names")
    out = {}
    for i, name in enumerate(names):
        ch = bits[len(names) - 1 - i]
        if ch in "01":
            out[name] = int(ch)
        elif ch in "xX":
            out[name] = X
        else:
            raise CircuitError(f"bad bit {ch!r} in {bits!r}")
    return out


def assignment_to_bits(names, assignment) -> str:
    names = tuple(names)
    chars = []
    for name in reversed(names):
        v = assignment[name]
        chars.append("X" if v is X else str(v))
    return "".join(chars)


@dataclass(frozen=True)
class Circuit:
    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    key_inputs: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "key_inputs", tuple(self.key_inputs))
        self._validate()

    def _validate(self):
        in_set = set(self.inputs)
        if len(in_set) != len(self.inputs):
            raise CircuitError("duplicate input declaration")
        keys = set(self.key_inputs)
        if not keys <= in_set:
            raise CircuitError("key inputs must be a subset of inputs")
        driver: dict[str, Gate] = {}
        for g in self.gates:
            if g.output in driver or g.output in in_set:
                raise CircuitError(f"multiple drivers for net {g.output!r}")
            driver[g.output] = g
        for g in self.gates:
            for f in g.fanins:
                if f not in driver and f not in in_set:
                    raise CircuitError(f"undriven net {f!r} (fanin of {g.output!r})")
        for o in self.outputs:
            if o not in driver and o not in in_set:
                raise CircuitError(f"output {o!r} is not driven")
        # Kahn's algorithm doubles as the cycle check.
        order = self._topo_sort(driver)
        if len(order) != len(self.gates):
            raise CircuitError("cycle detected in gate graph")
        object.__setattr__(self, "_driver", driver)
        object.__setattr__(self, "_topo", tuple(order))

    def _topo_sort(self, driver):
        in_set = set(self.inputs)
        pending = {g.output: sum(1 for f in set(g.fanins) if f not in in_set) for g in self.gates}
        readers: dict[str, list[str]] = {}
        for g in self.gates:
            for f in set(g.fanins):
                if f not in in_set:
                    readers.setdefault(f, []).append(g.output)
        ready = [g.output for g in self.gates if pending[g.output] == 0]
        order = []
        while ready:
            n = ready.pop()
            order.append(driver[n])
            for r in readers.get(n, ()):
                pending[r] -= 1
                if pending[r] == 0:
                    ready.append(r)
        return order

    # -- lookups ------------------------------------------------------------

    @property
    def driver(self) -> dict[str, Gate]:
        return self._driver

    @property
    def topo_gates(self) -> tuple[Gate, ...]:
        return self._topo

    @cached_property
    def nets(self) -> tuple[str, ...]:
        return self.inputs + tuple(g.output for g in self.gates)

    @cached_property
    def pi_inputs(self) -> tuple[str, ...]:
        """Primary inputs that are not key inputs."""
        keys = set(self.key_inputs)
        return tuple(i for i in self.inputs if i not in keys)

    @cached_property
    def level(self) -> dict[str, int]:
        lvl = {i: 0 for i in self.inputs}
        for g in self.topo_gates:
            lvl[g.output] = 1 + max(lvl[f] for f in g.fanins)
        return lvl

    @cached_property
    def readers(self) -> dict[str, tuple[str, ...]]:
        rd: dict[str, list[str]] = {n: [] for n in self.nets}
        for g in self.gates:
            for f in g.fanins:
                rd[f].append(g.output)
        return {n: tuple(v) for n, v in rd.items()}

    def support(self, net: str) -> frozenset[str]:
        """Input nets in the transitive fanin of `net`."""
        if net not in self._driver and net not in self.inputs:
            raise CircuitError(f"unknown net {net!r}")
        seen, stack, sup = set(), [net], set()
        in_set = set(self.inputs)
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            if n in in_set:
                sup.add(n)
            else:
                stack.extend(self._driver[n].fanins)
        return frozenset(sup)

    def rename(self, mapping: dict[str, str], name: str | None = None) -> "Circuit":
        """Uniformly rename nets; mapping must not merge two nets."""
        def m(n):
            return mapping.get(n, n)

        return Circuit(
            name=name or self.name,
            inputs=tuple(m(i) for i in self.inputs),
            outputs=tuple(m(o) for o in self.outputs),
            gates=tuple(Gate(m(g.output), g.kind, tuple(m(f) for f in g.fanins)) for g in self.gates),
            key_inputs=tuple(m(k) for k in self.key_inputs),
        )


def reclassify_keys(c: Circuit, key_prefix: str = DEFAULT_KEY_PREFIX) -> Circuit:
    """Re-derive key_inputs from a name prefix (after renames/substitutions)."""
    keys = tuple(i for i in c.inputs if i.startswith(key_prefix))
    return Circuit(c.name, c.inputs, c.outputs, c.gates, keys)


# -- bench i/o ---------------------------------------------------------------

_KIND_ALIASES = {"BUFF": "BUF", "INV": "NOT"}


def parse_bench(text: str, key_prefix: str = DEFAULT_KEY_PREFIX, name: str = "bench") -> Circuit:
    """Parse bench-format text into a Circuit.

    Inputs whose name starts with `key_prefix` are classified key inputs.
    Lines starting with '#' are comments and ignored.
    """
    inputs: list[str] = []
    outputs: list[str] = []
    gates: list[Gate] = []
    seen_drivers: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        up = line.upper()
        if up.startswith("INPUT(") or up.startswith("OUTPUT("):
            if not line.endswith(")"):
                raise BenchParseError("missing ')'", line_no)
            net = line[line.index("(") + 1 : -1].strip()
            if not net:
                raise BenchParseError("empty net name", line_no)
            if up.startswith("INPUT("):
                if net in seen_drivers or net in inputs:
                    raise BenchParseError(f"multiple drivers for {net!r}", line_no)
                inputs.append(net)
            else:
                outputs.append(net)
            continue
        if "=" not in line:
            raise BenchParseError(f"unrecognized line {line!r}", line_no)
        lhs, rhs = line.split("=", 1)
        out = lhs.strip()
        rhs = rhs.strip()
        if "(" not in rhs or not rhs.endswith(")"):
            raise BenchParseError(f"malformed gate expression {rhs!r}", line_no)
        kind_txt, arg_txt = rhs[:-1].split("(", 1)
        kind = kind_txt.strip().upper()
        kind = _KIND_ALIASES.get(kind, kind)
        if kind not in GATE_KINDS:
            raise BenchParseError(f"unknown gate kind {kind_txt.strip()!r}", line_no)
        fanins = tuple(a.strip() for a in arg_txt.split(","))
        if any(not f for f in fanins):
            raise BenchParseError("empty fanin name", line_no)
        if not out:
            raise BenchParseError("empty gate output name", line_no)
        if out in seen_drivers or out in inputs:
            raise BenchParseError(f"multiple drivers for {out!r}", line_no)
        seen_drivers.add(out)
        try:
            gates.append(Gate(out, kind, fanins))
        except CircuitError as exc:
            raise BenchParseError(str(exc), line_no) from None
    keys = tuple(i for i in inputs if i.startswith(key_prefix))
    return Circuit(name, tuple(inputs), tuple(outputs), tuple(gates), keys)


def write_bench(c: Circuit, comments=()) -> str:
    lines = [f"# {text}" for text in comments]
    lines += [f"INPUT({n})" for n in c.inputs]
    lines += [f"OUTPUT({n})" for n in c.outputs]
    lines += [f"{g.output} = {g.kind}({', '.join(g.fanins)})" for g in c.gates]
    return "\n".join(lines) + "\n"


def read_bench_comments(text: str) -> dict[str, str]:
    """Collect `# key=value` style comment annotations."""
    notes = {}
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#") and "=" in line:
            k, v = line[1:].split("=", 1)
            notes[k.strip()] = v.strip()
    return notes


# -- simulation --------------------------------------------------------------

def _eval_gate(kind: str, vals) -> int | None:
    if kind == "AND" or kind == "NAND":
        r = 1
        for v in vals:
            if v == 0:
                r = 0
                break
            if v is X:
                r = X
        return r if kind == "AND" else (X if r is X else 1 - r)
    if kind == "OR" or kind == "NOR":
        r = 0
        for v in vals:
            if v == 1:
                r = 1
                break
            if v is X:
                r = X
        return r if kind == "OR" else (X if r is X else 1 - r)
    if kind == "XOR" or kind == "XNOR":
        r = 0
        for v in vals:
            if v is X:
                return X
            r ^= v
        return r if kind == "XOR" else 1 - r
    v = vals[0]
    if kind == "NOT":
        return X if v is X else 1 - v
    return v  # BUF


def evaluate_nets(c: Circuit, assignment: dict[str, int | None]) -> dict[str, int | None]:
    """Three-valued evaluation of every net in the circuit."""
    missing = [i for i in c.inputs if i not in assignment]
    if missing:
        raise CircuitError(f"missing input assignment for {missing}")
    vals = dict(assignment)
    for g in c.topo_gates:
        vals[g.output] = _eval_gate(g.kind, [vals[f] for f in g.fanins])
    return vals


def simulate(c: Circuit, inputs: TriPattern) -> TriPattern:
    """Simulate the circuit; X propagates unless a gate output is forced."""
    if set(inputs.assignment) != set(c.inputs):
        raise CircuitError("pattern domain must equal the circuit inputs")
    vals = evaluate_nets(c, inputs.assignment)
    return TriPattern({o: vals[o] for o in c.outputs})


# -- cones -------------------------------------------------------------------

def fanout_cone(c: Circuit, net: str) -> frozenset[str]:
    """The net itself plus every net transitively fed by it."""
    if net not in c.driver and net not in c.inputs:
        raise CircuitError(f"unknown net {net!r}")
    seen = {net}
    stack = [net]
    while stack:
        for r in c.readers.get(stack.pop(), ()):
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return frozenset(seen)


def fanin_cone(c: Circuit, net: str, name: str | None = None) -> Circuit:
    """Self-contained circuit computing `net` from the cone's leaf inputs.

    For a primary input the cone is a single BUF (the output net is renamed
    `<net>__cone` so the buffered input can keep its own name).
    """
    if net in c.inputs:
        out = f"{net}__cone"
        keys = (net,) if net in c.key_inputs else ()
        return Circuit(name or f"{c.name}.cone", (net,), (out,), (Gate(out, "BUF", (net,)),), keys)
    if net not in c.driver:
        raise CircuitError(f"unknown net {net!r}")
    in_set = set(c.inputs)
    cone_gates: set[str] = set()
    stack = [net]
    while stack:
        n = stack.pop()
        if n in in_set or n in cone_gates:
            continue
        cone_gates.add(n)
        stack.extend(c.driver[n].fanins)
    gates = tuple(g for g in c.topo_gates if g.output in cone_gates)
    sup = c.support(net)
    inputs = tuple(i for i in c.inputs if i in sup)
    keys = tuple(k for k in c.key_inputs if k in sup)
    return Circuit(name or f"{c.name}.cone", inputs, (net,), gates, keys)


# -- constant propagation / substitution --------------------------------------

@dataclass
class SimplifyStats:
    """What a constant-propagation pass removed.

    collapsed counts gates folded to a constant; pass-through rewrites
    (gate turning into BUF/NOT) are deliberately not collapses.
    """

    collapsed: int = 0
    literal_slots: int = 0
    aliased: int = 0
    dead: int = 0

    def score(self) -> tuple[int, int]:
        return (self.collapsed, self.literal_slots)


_CONST_FOLD = {
    "AND": (0, 0, 1), "NAND": (0, 1, 0),
    "OR": (1, 1, 0), "NOR": (1, 0, 1),
}


def _fold_gate(kind: str, fanins, env_const, stats: SimplifyStats):
    """Resolve one gate against known constants.

    Returns ('c', v) | ('a', net) | ('g', kind, fanins) | ('n', net) where
    'n' is an inverted pass-through (caller materializes a NOT gate).
    """
    if kind in _CONST_FOLD:
        dominating, dom_result, empty_result = _CONST_FOLD[kind]
        kept: list[str] = []
        seen = set()
        for f in fanins:
            v = env_const.get(f)
            if v is None:
                if f in seen:
                    stats.literal_slots += 1  # idempotent duplicate
                    continue
                seen.add(f)
                kept.append(f)
            elif v == dominating:
                return ("c", dom_result)
            else:
                stats.literal_slots += 1
        if not kept:
            return ("c", empty_result)
        if len(kept) == 1:
            return ("a", kept[0]) if kind in ("AND", "OR") else ("n", kept[0])
        return ("g", kind, tuple(kept))
    if kind in ("XOR", "XNOR"):
        parity = 0 if kind == "XOR" else 1
        counts: dict[str, int] = {}
        for f in fanins:
            v = env_const.get(f)
            if v is None:
                counts[f] = counts.get(f, 0) + 1
            else:
                parity ^= v
                stats.literal_slots += 1
        kept = []
        for f, cnt in counts.items():
            if cnt % 2 == 1:
                kept.append(f)
            stats.literal_slots += cnt - (cnt % 2)  # cancelled pairs
        if not kept:
            return ("c", parity)
        if len(kept) == 1:
            return ("n", kept[0]) if parity else ("a", kept[0])
        return ("g", "XOR" if parity == 0 else "XNOR", tuple(kept))
    v = env_const.get(fanins[0])
    if kind == "NOT":
        if v is not None:
            return ("c", 1 - v)
        return ("g", "NOT", (fanins[0],))
    if v is not None:  # BUF
        return ("c", v)
    return ("a", fanins[0])


def propagate_constants(
    c: Circuit,
    const_map: dict[str, int],
    rename: dict[str, str] | None = None,
) -> tuple[Circuit, SimplifyStats]:
    """Cofactor inputs to constants and/or rename inputs to other nets.

    Constants are propagated with Boolean simplification, pass-through
    gates are aliased away and dead logic is swept.  Output net names are
    preserved; an output that folds to a constant is materialized as
    XOR(v, v) / XNOR(v, v) over the first remaining input.
    """
    rename = dict(rename or {})
    in_set = set(c.inputs)
    for n in list(const_map) + list(rename):
        if n not in in_set:
            raise CircuitError(f"substituted net {n!r} is not an input")
    for src, dst in rename.items():
        if dst in c.driver:
            raise CircuitError(f"cannot rename input {src!r} onto internal net {dst!r}")

    stats = SimplifyStats()
    new_inputs: list[str] = []
    for i in c.inputs:
        if i in const_map:
            continue
        tgt = rename.get(i, i)
        if tgt not in new_inputs:
            new_inputs.append(tgt)

    env_const: dict[str, int] = dict(const_map)
    env_alias: dict[str, str] = dict(rename)

    def resolve(n: str) -> str:
        while n in env_alias:
            n = env_alias[n]
        return n

    out_set = set(c.outputs)
    kept_gates: list[Gate] = []
    for g in c.topo_gates:
        fanins = tuple(resolve(f) for f in g.fanins)
        verdict = _fold_gate(g.kind, fanins, env_const, stats)
        tag = verdict[0]
        if tag == "c":
            env_const[g.output] = verdict[1]
            stats.collapsed += 1
        elif tag == "a":
            src = verdict[1]
            if g.output in out_set:
                kept_gates.append(Gate(g.output, "BUF", (src,)))
                stats.literal_slots += len(g.fanins) - 1
            else:
                env_alias[g.output] = src
                stats.aliased += 1
        elif tag == "n":
            kept_gates.append(Gate(g.output, "NOT", (verdict[1],)))
            stats.literal_slots += len(g.fanins) - 1
        else:
            _, kind, fanins2 = verdict
            kept_gates.append(Gate(g.output, kind, fanins2))

    # Resolve outputs; keep their public names stable.
    final_gates = list(kept_gates)
    driver_names = {g.output for g in final_gates}
    extra: list[Gate] = []
    out_names: list[str] = []
    for o in c.outputs:
        r = resolve(o)
        if r in env_const:
            if not new_inputs:
                raise CircuitError("circuit reduced to a constant with no inputs left")
            v = new_inputs[0]
            extra.append(Gate(o, "XNOR" if env_const[r] else "XOR", (v, v)))
            out_names.append(o)
        elif r == o:
            out_names.append(o)
        elif o in driver_names:
            # the original driver survived under this name
            out_names.append(o)
        else:
            # output net was aliased away: pin the name back with a BUF
            extra.append(Gate(o, "BUF", (r,)))
            out_names.append(o)
    final_gates.extend(extra)

    # Dead-gate sweep.
    needed: set[str] = set()
    stack = [resolve(o) for o in out_names] + out_names
    driver2 = {g.output: g for g in final_gates}
    while stack:
        n = stack.pop()
        if n in needed:
            continue
        needed.add(n)
        g = driver2.get(n)
        if g is not None:
            stack.extend(g.fanins)
    live_gates = [g for g in final_gates if g.output in needed]
    stats.dead += len(final_gates) - len(live_gates)

    keys = tuple(k for k in new_inputs if k in set(c.key_inputs))
    out = Circuit(c.name, tuple(new_inputs), tuple(out_names), tuple(live_gates), keys)
    return out, stats


def substitute(c: Circuit, mapping: dict[str, int | str]) -> Circuit:
    """Replace inputs by constants (0/1) or by other nets, then simplify."""
    const_map = {n: v for n, v in mapping.items() if isinstance(v, int)}
    rename = {n: v for n, v in mapping.items() if isinstance(v, str)}
    out, _ = propagate_constants(c, const_map, rename)
    return out


# -- truth-table masks ---------------------------------------------------------

def truth_masks(c: Circuit, assign: dict[str, int] | None = None, max_vars: int = 20):
    """Bit-parallel truth tables: one big int per net over all free inputs.

    Returns (masks, var_order).  Row t assigns bit i of t to var_order[i]
    (var_order[0] toggles fastest).  `assign` pins inputs to constants.
    """
    assign = assign or {}
    var_order = [i for i in c.inputs if i not in assign]
    n = len(var_order)
    if n > max_vars:
        raise CircuitError(f"too many free inputs for truth tables ({n} > {max_vars})")
    rows = 1 << n
    full = (1 << rows) - 1
    masks: dict[str, int] = {}
    for i, name in enumerate(var_order):
        period = 1 << (i + 1)
        half = 1 << i
        block = ((1 << half) - 1) << half
        m = 0
        for start in range(0, rows, period):
            m |= block << start
        masks[name] = m
    for name, v in assign.items():
        if name not in c.inputs:
            raise CircuitError(f"assigned net {name!r} is not an input")
        masks[name] = full if v else 0
    for g in c.topo_gates:
        vs = [masks[f] for f in g.fanins]
        k = g.kind
        if k == "AND" or k == "NAND":
            r = full
            for v in vs:
                r &= v
            masks[g.output] = r if k == "AND" else full ^ r
        elif k == "OR" or k == "NOR":
            r = 0
            for v in vs:
                r |= v
            masks[g.output] = r if k == "OR" else full ^ r
        elif k == "XOR" or k == "XNOR":
            r = 0
            for v in vs:
                r ^= v
            masks[g.output] = r if k == "XOR" else full ^ r
        elif k == "NOT":
            masks[g.output] = full ^ vs[0]
        else:
            masks[g.output] = vs[0]
    return masks, var_order


def row_to_bits(t: int, var_order) -> str:
    """Truth-table row index -> MSB-first pattern over var_order."""
    return format(t, f"0{len(var_order)}b") if var_order else ""


def mask_rows(mask: int, var_order) -> list[str]:
    rows = []
    t = 0
    while mask:
        if mask & 1:
            rows.append(row_to_bits(t, var_order))
        mask >>= 1
        t += 1
    return rows


# -- structural randomization --------------------------------------------------

def randomize_structure(c: Circuit, seed: int, rewrites: int | None = None) -> Circuit:
    """Functionally-equivalent restructuring via seeded local rewrites.

    Stands in for a resynthesis pass: De Morgan flips, associativity
    splits/fusions, buffer and double-inverter games, XOR expansion.
    Output and input net names are preserved.  rewrites=0 is the identity.
    """
    if rewrites is None:
        rewrites = max(4, len(c.gates))
    if rewrites == 0:
        return c
    rng = random.Random(seed)
    order: list[str] = [g.output for g in c.gates]
    table: dict[str, tuple[str, list[str]]] = {g.output: (g.kind, list(g.fanins)) for g in c.gates}
    out_set = set(c.outputs)
    existing = set(c.inputs) | set(order)
    counter = [0]

    def fresh(tag: str) -> str:
        while True:
            n = f"rw{seed}_{counter[0]}_{tag}"
            counter[0] += 1
            if n not in existing:
                existing.add(n)
                return n

    def insert_before(anchor: str, net: str, kind: str, fanins: list[str]):
        table[net] = (kind, fanins)
        order.insert(order.index(anchor), net)

    def readers_of(net: str) -> list[str]:
        return [o for o in order if net in table[o][1]]

    inv_pair = {"AND": "NAND", "NAND": "AND", "OR": "NOR", "NOR": "OR", "XOR": "XNOR", "XNOR": "XOR"}
    base_kind = {"AND": "AND", "NAND": "AND", "OR": "OR", "NOR": "OR", "XOR": "XOR", "XNOR": "XOR"}

    def mv_wrap(target: str) -> bool:
        kind, fanins = table[target]
        if kind in ("NOT", "BUF"):
            return False
        aux = fresh("w")
        insert_before(target, aux, inv_pair[kind], list(fanins))
        table[target] = ("NOT", [aux])
        return True

    def mv_demorgan(target: str) -> bool:
        kind, fanins = table[target]
        if kind not in ("AND", "OR", "NAND", "NOR"):
            return False
        nots = []
        for f in fanins:
            aux = fresh("n")
            insert_before(target, aux, "NOT", [f])
            nots.append(aux)
        table[target] = ({"AND": "NOR", "NAND": "OR", "OR": "NAND", "NOR": "AND"}[kind], nots)
        return True

    def mv_split(target: str) -> bool:
        kind, fanins = table[target]
        if kind in ("NOT", "BUF") or len(fanins) < 3:
            return False
        cut = rng.randrange(1, len(fanins) - 1) + 1
        aux = fresh("s")
        insert_before(target, aux, base_kind[kind], list(fanins[:cut]))
        table[target] = (kind, [aux] + list(fanins[cut:]))
        return True

    def mv_fuse(target: str) -> bool:
        kind, fanins = table[target]
        if kind in ("NOT", "BUF"):
            return False
        for f in fanins:
            if f in table and f not in out_set:
                ck, cf = table[f]
                if ck == base_kind[kind] and len(readers_of(f)) == 1:
                    new_fanins = []
                    for x in fanins:
                        new_fanins.extend(cf if x == f else [x])
                    table[target] = (kind, new_fanins)
                    del table[f]
                    order.remove(f)
                    return True
        return False

    def mv_buf_insert(target: str) -> bool:
        kind, fanins = table[target]
        slot = rng.randrange(len(fanins))
        aux = fresh("b")
        insert_before(target, aux, "BUF", [fanins[slot]])
        fanins = list(fanins)
        fanins[slot] = aux
        table[target] = (kind, fanins)
        return True

    def mv_buf_drop(target: str) -> bool:
        kind, fanins = table[target]
        if kind != "BUF" or target in out_set:
            return False
        src = fanins[0]
        for r in readers_of(target):
            rk, rf = table[r]
            table[r] = (rk, [src if x == target else x for x in rf])
        del table[target]
        order.remove(target)
        return True

    def mv_notnot(target: str) -> bool:
        kind, fanins = table[target]
        slot = rng.randrange(len(fanins))
        a1, a2 = fresh("i"), fresh("i")
        insert_before(target, a1, "NOT", [fanins[slot]])
        insert_before(target, a2, "NOT", [a1])
        fanins = list(fanins)
        fanins[slot] = a2
        table[target] = (kind, fanins)
        return True

    def mv_xor_expand(target: str) -> bool:
        kind, fanins = table[target]
        if kind not in ("XOR", "XNOR") or len(fanins) != 2:
            return False
        a, b = fanins
        na, nb = fresh("x"), fresh("x")
        t1, t2 = fresh("x"), fresh("x")
        insert_before(target, na, "NOT", [a])
        insert_before(target, nb, "NOT", [b])
        if kind == "XOR":
            insert_before(target, t1, "AND", [a, nb])
            insert_before(target, t2, "AND", [na, b])
        else:
            insert_before(target, t1, "AND", [a, b])
            insert_before(target, t2, "AND", [na, nb])
        table[target] = ("OR", [t1, t2])
        return True

    moves = [mv_wrap, mv_demorgan, mv_split, mv_fuse, mv_buf_insert, mv_buf_drop, mv_notnot, mv_xor_expand]
    applied = 0
    attempts = 0
    while applied < rewrites and attempts < rewrites * 20:
        attempts += 1
        mv = moves[rng.randrange(len(moves))]
        target = order[rng.randrange(len(order))]
        if mv(target):
            applied += 1

    gates = tuple(Gate(o, table[o][0], tuple(table[o][1])) for o in order)
    return Circuit(c.name, c.inputs, c.outputs, gates, c.key_inputs)


def gate_histogram(c: Circuit) -> dict[str, int]:
    hist: dict[str, int] = {}
    for g in c.gates:
        hist[g.kind] = hist.get(g.kind, 0) + 1
    return hist
