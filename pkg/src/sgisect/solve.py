"""Deciding intersection non-emptiness of languages recognized by finite semigroups.

An instance is a shared alphabet plus constraints (morphism into a semigroup,
accepting element set).  The brute-force solver runs a breadth-first search
over tuples of per-constraint images, never materializing the direct product;
it returns the shortest witness, ties broken by lexicographically least letter
sequence.  The depth-capped solvers reuse the same engine with caps supplied
by structure: locally trivial semigroups of degree k never need witnesses
longer than 2k, and commutative locally trivial semigroups absorb every long
enough product into their zero, giving a logarithmic cap.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .core import Morphism, apply_morphism
from .slp import Slp, enumerate_slps, slp_image, slp_stats
from .varieties import is_commutative, is_li, li_degree

DEFAULT_STATE_CAP = 1 << 24
DEFAULT_ENUM_SIZE_CAP = 6

SATISFIABLE = "satisfiable"
EMPTY = "empty"


class PreconditionError(ValueError):
    """A solver was invoked outside its supported class; names the predicate."""

    def __init__(self, predicate: str, constraint: int):
        super().__init__(f"constraint {constraint} violates {predicate}")
        self.predicate = predicate
        self.constraint = constraint


class StateCapError(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"search exceeded the state cap of {cap}")
        self.cap = cap


@dataclass(frozen=True)
class Constraint:
    morphism: Morphism
    accept: frozenset[int]
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "accept", frozenset(int(x) for x in self.accept))
        n = self.morphism.target.size
        for x in self.accept:
            if not 0 <= x < n:
                raise ValueError(f"accepting element {x} out of range 0..{n - 1}")

    @property
    def semigroup(self):
        return self.morphism.target


@dataclass(frozen=True)
class Instance:
    letter_names: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "letter_names", tuple(str(s) for s in self.letter_names))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not self.letter_names:
            raise ValueError("alphabet must be non-empty")
        if not self.constraints:
            raise ValueError("an instance has at least one constraint")
        for i, c in enumerate(self.constraints):
            if c.morphism.alphabet_size != len(self.letter_names):
                raise ValueError(
                    f"constraint {i} has {c.morphism.alphabet_size} letter images, "
                    f"alphabet has {len(self.letter_names)}")

    @property
    def alphabet_size(self) -> int:
        return len(self.letter_names)

    def constraint_name(self, i: int) -> str:
        name = self.constraints[i].name
        return name if name is not None else f"c{i}"


@dataclass(frozen=True)
class Witness:
    """Either a plain word or an SLP, tagged with the solver that produced it."""

    provenance: str
    word: tuple[int, ...] | None = None
    slp: Slp | None = None

    def __post_init__(self):
        if (self.word is None) == (self.slp is None):
            raise ValueError("exactly one of word and slp must be set")
        if self.word is not None:
            object.__setattr__(self, "word", tuple(int(a) for a in self.word))
            if not self.word:
                raise ValueError("witness words are non-empty")

    @classmethod
    def from_word(cls, word, provenance: str = "user") -> "Witness":
        return cls(provenance, word=tuple(word))

    @classmethod
    def from_slp(cls, slp: Slp, provenance: str = "user") -> "Witness":
        return cls(provenance, slp=slp)


@dataclass(frozen=True)
class SolveStats:
    states_explored: int
    max_depth: int
    wall_time: float


@dataclass(frozen=True)
class SolveResult:
    status: str  # SATISFIABLE or EMPTY
    witness: Witness | None
    complete: bool  # False when EMPTY only means "nothing within the cap"
    stats: SolveStats

    @property
    def satisfiable(self) -> bool:
        return self.status == SATISFIABLE


def _bfs(instance: Instance, depth_cap: int | None, state_cap: int,
         provenance: str) -> tuple[SolveResult, bool]:
    """Shared BFS engine; returns (result, truncated).

    Candidate successors are generated parent-major and letter-minor with both
    orders ascending, and first discovery wins, so the first accepting state in
    a layer corresponds to the lexicographically least among shortest words.
    """
    t0 = time.perf_counter()
    cons = instance.constraints
    k = len(cons)
    A = instance.alphabet_size

    def done(found_word, explored, depth, truncated):
        witness = None if found_word is None else Witness(provenance, word=tuple(found_word))
        status = SATISFIABLE if witness is not None else EMPTY
        stats = SolveStats(explored, depth, time.perf_counter() - t0)
        return SolveResult(status, witness, not truncated, stats), truncated

    if any(not c.accept for c in cons):
        return done(None, 0, 0, False)

    table_cache: dict[int, np.ndarray] = {}
    tables = []
    for c in cons:
        key = id(c.semigroup)
        if key not in table_cache:
            table_cache[key] = np.asarray(c.semigroup.table, dtype=np.int32)
        tables.append(table_cache[key])
    imgs = np.asarray([c.morphism.images for c in cons], dtype=np.int32)  # (k, A)
    accept_masks = []
    for c in cons:
        mask = np.zeros(c.semigroup.size, dtype=bool)
        mask[list(c.accept)] = True
        accept_masks.append(mask)

    visited: dict[bytes, int] = {}
    parent_of: list[int] = []
    letter_of: list[int] = []

    def reconstruct(gid: int) -> list[int]:
        word = []
        while gid != -1:
            word.append(letter_of[gid])
            gid = parent_of[gid]
        word.reverse()
        return word

    layer = None  # np (p, k) rows of the current depth
    layer_gids: list[int] = []
    depth = 0
    while True:
        if depth_cap is not None and depth >= depth_cap:
            truncated = layer is not None and len(layer) > 0
            return done(None, len(visited), depth, truncated)
        if depth == 0:
            cand = np.ascontiguousarray(imgs.T)  # (A, k); candidate c is letter c
        else:
            if len(layer) == 0:
                return done(None, len(visited), depth, False)
            p = len(layer)
            cand3 = np.empty((p, A, k), dtype=np.int32)
            for i in range(k):
                cand3[:, :, i] = tables[i][layer[:, i]][:, imgs[i]]
            cand = np.ascontiguousarray(cand3.reshape(p * A, k))

        _, first_idx = np.unique(cand, axis=0, return_index=True)
        first_idx.sort()
        new_rows_idx: list[int] = []
        for ci in first_idx:
            key = cand[ci].tobytes()
            if key in visited:
                continue
            gid = len(parent_of)
            visited[key] = gid
            parent_of.append(-1 if depth == 0 else layer_gids[ci // A])
            letter_of.append(int(ci % A))
            new_rows_idx.append(int(ci))
        if len(visited) > state_cap:
            raise StateCapError(state_cap)
        if not new_rows_idx:
            return done(None, len(visited), depth, False)

        new_layer = cand[new_rows_idx]
        base_gid = len(parent_of) - len(new_rows_idx)
        depth += 1

        acc = np.ones(len(new_layer), dtype=bool)
        for i in range(k):
            acc &= accept_masks[i][new_layer[:, i]]
        hits = np.flatnonzero(acc)
        if hits.size:
            gid = base_gid + int(hits[0])
            return done(reconstruct(gid), len(visited), depth, False)

        layer = new_layer
        layer_gids = list(range(base_gid, len(parent_of)))


def brute_force_solve(instance: Instance, state_cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    """Exact BFS oracle; the cap bounds visited image tuples, not the raw product."""
    result, _ = _bfs(instance, None, state_cap, "brute")
    return result


def bounded_solve(instance: Instance, depth_cap: int,
                  state_cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    """BFS finding witnesses of length <= depth_cap only.

    An EMPTY result is conclusive only when the search closed before the cap;
    the ``complete`` flag records which case occurred.
    """
    if depth_cap < 1:
        raise ValueError("depth cap must be >= 1")
    result, _ = _bfs(instance, depth_cap, state_cap, f"bounded({depth_cap})")
    return result


def li_witness_shorten(morphisms, accepts, word, k: int) -> tuple[int, ...]:
    """Replace a word longer than 2k by its length-k prefix and suffix.

    Every target must be locally trivial of degree at most k; then the
    shortened word has the same image under every morphism (checked).  Words
    of length <= 2k are returned unchanged.
    """
    morphisms = list(morphisms)
    accepts = [frozenset(a) for a in accepts]
    if len(accepts) != len(morphisms):
        raise ValueError("one accepting set per morphism required")
    for i, h in enumerate(morphisms):
        d = li_degree(h.target)
        if d is None or d > k:
            raise PreconditionError(f"li_degree <= {k}", i)
    word = tuple(word)
    if len(word) <= 2 * k:
        return word
    short = word[:k] + word[-k:]
    for i, h in enumerate(morphisms):
        if apply_morphism(h, short) != apply_morphism(h, word):
            raise AssertionError(f"image changed under morphism {i}; target not of degree {k}")
    return short


def li_solve(instance: Instance, state_cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    """Complete solver for locally trivial constraints via the 2k witness cap."""
    degrees = []
    for i, c in enumerate(instance.constraints):
        d = li_degree(c.semigroup)
        if d is None:
            raise PreconditionError("is_li", i)
        degrees.append(d)
    cap = 2 * max(degrees)
    result, _ = _bfs(instance, cap, state_cap, "li")
    return SolveResult(result.status, result.witness, True, result.stats)


def comli_length_bound(instance: Instance) -> int:
    """Witness length cap for commutative locally trivial constraints.

    With c the largest monogenic-subsemigroup cardinality across constraints,
    every product of at least c*(ceil(log2 prod|S_i|) + 1) elements lands on
    the zero of every constraint, so longer witnesses are never needed.
    """
    from .core import monogenic_orders

    c = 0
    product = 1
    for i, cons in enumerate(instance.constraints):
        S = cons.semigroup
        if not is_commutative(S):
            raise PreconditionError("is_commutative", i)
        if not is_li(S):
            raise PreconditionError("is_li", i)
        _, order = monogenic_orders(S)
        c = max(c, order)
        product *= S.size
    log_product = (product - 1).bit_length()  # ceil(log2(product))
    return c * (log_product + 1)


def comli_solve(instance: Instance, state_cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    """Complete solver for commutative locally trivial constraints."""
    cap = comli_length_bound(instance)
    result, _ = _bfs(instance, cap, state_cap, "comli")
    return SolveResult(result.status, result.witness, True, result.stats)


def enum_slp_solve(instance: Instance, size_bound: int,
                   size_cap: int = DEFAULT_ENUM_SIZE_CAP) -> SolveResult:
    """Enumerate canonical SLPs in increasing size, returning the first witness.

    Deliberately doubly exponential; EMPTY only means no SLP within the bound,
    so the result carries complete=False in that case.
    """
    if size_bound > size_cap:
        raise ValueError(f"size bound {size_bound} exceeds cap {size_cap}")
    t0 = time.perf_counter()
    tried = 0
    for G in enumerate_slps(instance.alphabet_size, size_bound):
        tried += 1
        if all(slp_image(G, c.morphism) in c.accept for c in instance.constraints):
            stats = SolveStats(tried, size_bound, time.perf_counter() - t0)
            return SolveResult(SATISFIABLE, Witness("slp-enum", slp=G), True, stats)
    stats = SolveStats(tried, size_bound, time.perf_counter() - t0)
    return SolveResult(EMPTY, None, False, stats)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    images: tuple[int, ...]
    failing: tuple[int, ...]  # constraint indices


def verify_witness(instance: Instance, witness: Witness) -> VerifyResult:
    """Check a witness against every constraint; polynomial even for SLPs."""
    images = []
    failing = []
    for i, c in enumerate(instance.constraints):
        if witness.word is not None:
            img = apply_morphism(c.morphism, witness.word)
        else:
            img = slp_image(witness.slp, c.morphism)
        images.append(img)
        if img not in c.accept:
            failing.append(i)
    return VerifyResult(not failing, tuple(images), tuple(failing))


def min_witness_stats(instance: Instance, slp_size_bound: int = 4,
                      state_cap: int = DEFAULT_STATE_CAP) -> tuple[int | None, int | None]:
    """(shortest witness length, smallest SLP witness size within the bound)."""
    brute = brute_force_solve(instance, state_cap)
    min_len = len(brute.witness.word) if brute.satisfiable else None
    enum = enum_slp_solve(instance, slp_size_bound)
    min_slp = slp_stats(enum.witness.slp)[0] if enum.satisfiable else None
    return min_len, min_slp
