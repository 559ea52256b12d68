"""Compiling 3-SAT formulas into semigroup intersection instances.

Literals are signed ints in DIMACS style: +i is variable i, -i its negation,
variables numbered from 1.  Clauses are literal sets of width 1 to 3.  The
reduction alphabet for k variables has 2k letters named x1..xk, nx1..nxk;
letter index i-1 carries literal +i and letter index k+i-1 carries -i.

Two gadgets are provided.  The counting gadget works over the min-capped
addition semigroup on {1..k+2}: one constraint pins the word length to k, one
per variable pins the polarity choice to exactly one letter, and one per
clause requires some clause literal to occur.  The interval gadget works over
the nilpotent interval semigroup: a single constraint forces the word shape
l_1...l_k with l_i in {x_i, nx_i}, and one constraint per clause sends clause
literals to zero and accepts only zero.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .core import Morphism
from .families import mincap, nilinterval
from .solve import Constraint, Instance

SAT_EXHAUSTIVE_CAP = 24


class AssignmentUndefinedError(ValueError):
    """The word induces no assignment (conflicting or missing polarities)."""


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.variable_count < 0:
            raise ValueError("variable count must be >= 0")
        clauses = tuple(frozenset(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for idx, clause in enumerate(clauses):
            if not clause:
                raise ValueError(f"clause {idx} is empty")
            if len(clause) > 3:
                raise ValueError(f"clause {idx} has width {len(clause)} > 3")
            for lit in clause:
                if lit == 0 or not 1 <= abs(lit) <= self.variable_count:
                    raise ValueError(f"literal {lit} in clause {idx} out of range")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class Assignment:
    bits: tuple[int, ...]  # bits[i] is the value of variable i+1

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("assignment bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def literal(self, lit: int) -> int:
        return self.bits[lit - 1] if lit > 0 else 1 - self.bits[-lit - 1]

    def clause(self, clause) -> int:
        return max(self.literal(l) for l in clause)

    def satisfies(self, formula: CnfFormula) -> bool:
        return all(self.clause(c) == 1 for c in formula.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; clauses wider than 3 (after collapsing) are rejected."""
    variable_count = None
    declared_clauses = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            try:
                variable_count = int(parts[2])
                declared_clauses = int(parts[3])
            except ValueError:
                raise ValueError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if variable_count is None:
            raise ValueError(f"line {lineno}: clause data before the 'p cnf' header")
        try:
            tokens.extend(int(tok) for tok in line.split())
        except ValueError:
            raise ValueError(f"line {lineno}: bad token in {line!r}") from None
    if variable_count is None:
        raise ValueError("missing 'p cnf' header")

    clauses: list[frozenset[int]] = []
    current: set[int] = set()
    for lit in tokens:
        if lit == 0:
            if current:
                clauses.append(frozenset(current))
                current = set()
            continue
        if not 1 <= abs(lit) <= variable_count:
            raise ValueError(f"literal {lit} out of range 1..{variable_count}")
        current.add(lit)
    if current:
        clauses.append(frozenset(current))
    if declared_clauses is not None and declared_clauses != len(clauses):
        warnings.warn(f"header declares {declared_clauses} clauses, found {len(clauses)}")
    return CnfFormula(variable_count, tuple(clauses))


def sat_solve_exhaustive(formula: CnfFormula, cap: int = SAT_EXHAUSTIVE_CAP) -> Assignment | None:
    """Least satisfying assignment (x1 most significant, 0 before 1), or None."""
    k = formula.variable_count
    if k > cap:
        raise ValueError(f"{k} variables exceed the exhaustive cap of {cap}")
    for packed in range(1 << k):
        bits = tuple((packed >> (k - 1 - i)) & 1 for i in range(k))
        a = Assignment(bits)
        if a.satisfies(formula):
            return a
    return None


def reduction_alphabet(k: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, k + 1)) + tuple(f"nx{i}" for i in range(1, k + 1))


def _letter_literal(letter: int, k: int) -> int:
    return letter + 1 if letter < k else -(letter - k + 1)


def reduce_unbounded(formula: CnfFormula) -> Instance:
    """Counting-gadget reduction; satisfiable iff the formula is.

    All k+1+n constraints share the min-capped addition semigroup on {1..k+2}.
    The g0 constraint accepts value k (so witnesses have length exactly k),
    each gi doubles the weight of x_i and nx_i and accepts value k+1 (exactly
    one of the pair occurs), and each clause constraint doubles the weight of
    its literals and accepts {k+1, k+2} (some literal occurs).
    """
    k = formula.variable_count
    if k < 1:
        raise ValueError("need at least one variable")
    S = mincap(k + 2)
    letters = reduction_alphabet(k)
    m = 2 * k

    def morphism(weight2):
        return Morphism(tuple(1 if a in weight2 else 0 for a in range(m)), S)

    constraints = [Constraint(morphism(frozenset()), frozenset({k - 1}), "g0")]
    for i in range(1, k + 1):
        pair = frozenset({i - 1, k + i - 1})
        constraints.append(Constraint(morphism(pair), frozenset({k}), f"g{i}"))
    for j, clause in enumerate(formula.clauses, start=1):
        hot = frozenset(a for a in range(m) if _letter_literal(a, k) in clause)
        constraints.append(Constraint(morphism(hot), frozenset({k, k + 1}), f"h{j}"))
    return Instance(letters, tuple(constraints))


def reduce_nilpotent(formula: CnfFormula) -> Instance:
    """Interval-gadget reduction; satisfiable iff the formula is.

    The 1+n constraints share the nilpotent interval semigroup for k.  The g
    constraint maps both letters of variable i to the interval (i,i) and
    accepts only (1,k), forcing witnesses of the shape l_1...l_k; each clause
    constraint additionally sends its literals to zero and accepts only zero.
    """
    k = formula.variable_count
    if k < 1:
        raise ValueError("need at least one variable")
    S = nilinterval(k)
    letters = reduction_alphabet(k)
    m = 2 * k
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i, k + 1)]
    pair_index = {p: c + 1 for c, p in enumerate(pairs)}

    def diag(letter: int) -> int:
        i = letter + 1 if letter < k else letter - k + 1
        return pair_index[(i, i)]

    g = Morphism(tuple(diag(a) for a in range(m)), S)
    constraints = [Constraint(g, frozenset({pair_index[(1, k)]}), "g")]
    for j, clause in enumerate(formula.clauses, start=1):
        images = tuple(0 if _letter_literal(a, k) in clause else diag(a) for a in range(m))
        constraints.append(Constraint(Morphism(images, S), frozenset({0}), f"h{j}"))
    return Instance(letters, tuple(constraints))


def assignment_to_word(assignment: Assignment) -> tuple[int, ...]:
    """The length-k word choosing x_i when variable i is true, nx_i otherwise."""
    k = len(assignment.bits)
    return tuple(i if assignment.bits[i] else k + i for i in range(k))


def word_to_assignment(word, k: int, strict: bool = True) -> Assignment:
    """The assignment reading letter occurrences as truth values.

    Raises AssignmentUndefinedError when both polarities of a variable occur,
    or (in strict mode) when a variable occurs in neither.  Lenient mode
    defaults absent variables to 0.
    """
    pos = set()
    neg = set()
    for a in word:
        if not 0 <= a < 2 * k:
            raise ValueError(f"letter {a} outside the reduction alphabet for {k} variables")
        (pos if a < k else neg).add(a % k)
    conflict = pos & neg
    if conflict:
        i = min(conflict) + 1
        raise AssignmentUndefinedError(f"both x{i} and nx{i} occur")
    if strict:
        missing = set(range(k)) - pos - neg
        if missing:
            i = min(missing) + 1
            raise AssignmentUndefinedError(f"variable x{i} occurs in neither polarity")
    return Assignment(tuple(1 if i in pos else 0 for i in range(k)))
