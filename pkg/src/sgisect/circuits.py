"""Lowering of SLP image computations to unbounded fan-in Boolean circuits.

Input layout (one bit per position, most significant bit first throughout):
the N*N multiplication-table entries in row-major order at ceil(log2 N) bits
each, followed by the per-letter images at ceil(log2 N) bits each.  NOT never
appears as a gate; negation is an attribute of an incoming wire and is not
counted in size or depth.  For a one-element target there is nothing to
compute and the circuit has a single constant-0 output bit.

Gadgets mirror the evaluation strategy: a two-layer lookup gadget per letter
occurrence (an AND layer masking every letter's image bits except the
hardwired one, then an OR layer collecting the survivors) and a two-layer
multiplication gadget per product (one AND per table entry and output bit,
firing only when the operand bits match that entry, then one OR per output
bit).  A size-m SLP over a target of size N with alphabet A therefore costs
at most m*(N*N + |A| + 2)*ceil(log2 N) gates at depth at most 2m + 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Morphism, Semigroup
from .slp import Slp, is_var_ref, ref_target, _topo_reachable

# A wire is ("in", i), ("g", i) or ("c", 0); gate inputs carry a negation flag.
Wire = tuple
WireIn = tuple[Wire, bool]

CONST0: Wire = ("c", 0)


@dataclass(frozen=True)
class Gate:
    op: str  # "AND" | "OR"
    inputs: tuple[WireIn, ...]


@dataclass(frozen=True)
class BooleanCircuit:
    n: int
    alphabet_size: int
    bits: int
    gates: tuple[Gate, ...]
    outputs: tuple[WireIn, ...]
    size: int
    depth: int

    @property
    def table_bit_count(self) -> int:
        return self.n * self.n * self.bits

    @property
    def image_bit_count(self) -> int:
        return self.alphabet_size * self.bits


def _bit_width(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def element_bits(x: int, bits: int) -> list[int]:
    return [(x >> (bits - 1 - k)) & 1 for k in range(bits)]


def semigroup_table_bits(S: Semigroup) -> list[int]:
    bits = _bit_width(S.size)
    out: list[int] = []
    for row in S.table:
        for v in row:
            out.extend(element_bits(v, bits))
    return out


def morphism_image_bits(h: Morphism) -> list[int]:
    bits = _bit_width(h.target.size)
    out: list[int] = []
    for v in h.images:
        out.extend(element_bits(v, bits))
    return out


class _Builder:
    def __init__(self):
        self.gates: list[Gate] = []
        self.depths: list[int] = []

    def add(self, op: str, inputs: list[WireIn]) -> Wire:
        d = 0
        for wire, _ in inputs:
            if wire[0] == "g":
                d = max(d, self.depths[wire[1]])
        self.gates.append(Gate(op, tuple(inputs)))
        self.depths.append(d + 1)
        return ("g", len(self.gates) - 1)

    def wire_depth(self, wire: Wire) -> int:
        return self.depths[wire[1]] if wire[0] == "g" else 0


def slp_to_circuit(G: Slp, h: Morphism) -> BooleanCircuit:
    """Circuit computing the image of G's word under h from table and image bits."""
    if G.alphabet_size != h.alphabet_size:
        raise ValueError(f"alphabet mismatch: SLP has {G.alphabet_size} letters, morphism {h.alphabet_size}")
    n = h.target.size
    m = h.alphabet_size
    bits = _bit_width(n)
    if bits == 0:
        return BooleanCircuit(n, m, 0, (), ((CONST0, False),), 0, 0)

    b = _Builder()

    def table_in(x: int, y: int, k: int) -> Wire:
        return ("in", (x * n + y) * bits + k)

    def image_in(a: int, k: int) -> Wire:
        return ("in", n * n * bits + a * bits + k)

    def lookup(a: int) -> list[WireIn]:
        # AND layer: keep letter a's image bits, zero everything else by
        # feeding each foreign bit together with its own negation.
        layer: list[list[Wire]] = []
        for letter in range(m):
            per_bit = []
            for k in range(bits):
                src = image_in(letter, k)
                if letter == a:
                    gate = b.add("AND", [(src, False)])
                else:
                    gate = b.add("AND", [(src, False), (src, True)])
                per_bit.append(gate)
            layer.append(per_bit)
        return [(b.add("OR", [(layer[letter][k], False) for letter in range(m)]), False)
                for k in range(bits)]

    def mult(xw: list[WireIn], yw: list[WireIn]) -> list[WireIn]:
        # one AND per (table entry, output bit), firing only when the operand
        # bits spell that entry's row and column; one OR per output bit.
        per_bit_sources: list[list[Wire]] = [[] for _ in range(bits)]
        for p in range(n):
            pbits = element_bits(p, bits)
            for q in range(n):
                qbits = element_bits(q, bits)
                selector = [(xw[j][0], xw[j][1] ^ (pbits[j] == 0)) for j in range(bits)]
                selector += [(yw[j][0], yw[j][1] ^ (qbits[j] == 0)) for j in range(bits)]
                for k in range(bits):
                    gate = b.add("AND", [(table_in(p, q, k), False)] + selector)
                    per_bit_sources[k].append(gate)
        return [(b.add("OR", [(g, False) for g in per_bit_sources[k]]), False) for k in range(bits)]

    values: dict[int, list[WireIn]] = {}
    for v in _topo_reachable(G):
        acc = None
        for sym in G.rhs[v]:
            wires = values[ref_target(sym)] if is_var_ref(sym) else lookup(sym)
            acc = wires if acc is None else mult(acc, wires)
        values[v] = acc

    outputs = tuple(values[G.start])
    depth = max((b.wire_depth(w) for w, _ in outputs), default=0)
    return BooleanCircuit(n, m, bits, tuple(b.gates), outputs, len(b.gates), depth)


def circuit_size_bound(slp_size: int, n: int, alphabet_size: int) -> int:
    """The guaranteed gate-count bound m*(N*N + |A| + 2)*ceil(log2 N)."""
    return slp_size * (n * n + alphabet_size + 2) * _bit_width(n)


def circuit_eval(C: BooleanCircuit, table_bits, image_bits) -> int:
    """Evaluate topologically and decode the output bits as an element index."""
    table_bits = list(table_bits)
    image_bits = list(image_bits)
    if len(table_bits) != C.table_bit_count:
        raise ValueError(f"expected {C.table_bit_count} table bits, got {len(table_bits)}")
    if len(image_bits) != C.image_bit_count:
        raise ValueError(f"expected {C.image_bit_count} image bits, got {len(image_bits)}")
    inputs = table_bits + image_bits

    values: list[int] = []

    def read(wire: Wire, neg: bool) -> int:
        kind, idx = wire[0], wire[1] if len(wire) > 1 else 0
        if kind == "in":
            v = inputs[idx]
        elif kind == "g":
            v = values[idx]
        else:
            v = 0
        return v ^ 1 if neg else v

    for gate in C.gates:
        if gate.op == "AND":
            v = all(read(w, neg) for w, neg in gate.inputs)
        else:
            v = any(read(w, neg) for w, neg in gate.inputs)
        values.append(int(v))

    result = 0
    for wire, neg in C.outputs:
        result = (result << 1) | read(wire, neg)
    return result
