"""Finite semigroups given by multiplication tables, plus morphisms from free semigroups.

Elements are 0-based indices into an n x n table: ``table[x][y]`` is the product
x*y.  Everything is immutable after construction and every function is pure, so
values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_PRODUCT_CAP = 1 << 24


class AssociativityError(ValueError):
    """A table violates (x*y)*z == x*(y*z); carries the first offending triple."""

    def __init__(self, x: int, y: int, z: int):
        super().__init__(f"associativity violated at triple ({x}, {y}, {z})")
        self.triple = (x, y, z)


@dataclass(frozen=True)
class Semigroup:
    """A finite semigroup; use :func:`check_associative` as the validating constructor.

    Direct construction checks shape and entry ranges only.  Code that builds
    tables which are associative by construction (direct products, local
    monoids) may instantiate directly.
    """

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise ValueError("a semigroup is non-empty")
        for x, row in enumerate(table):
            if len(row) != n:
                raise ValueError(f"table not square: row {x} has {len(row)} entries, expected {n}")
            for y, v in enumerate(row):
                if not 0 <= v < n:
                    raise ValueError(f"entry {v} at ({x}, {y}) out of range 0..{n - 1}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise ValueError(f"{len(labels)} labels for {n} elements")
            object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)


@dataclass(frozen=True)
class Morphism:
    """A map A+ -> target, determined freely by one image per letter."""

    images: tuple[int, ...]
    target: Semigroup

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise ValueError("a morphism needs at least one letter")
        n = self.target.size
        for a, v in enumerate(images):
            if not 0 <= v < n:
                raise ValueError(f"image {v} of letter {a} out of range 0..{n - 1}")

    @property
    def alphabet_size(self) -> int:
        return len(self.images)


@dataclass(frozen=True)
class DistinguishedElements:
    idempotents: frozenset[int]
    zero: int | None
    neutral: int | None


def check_associative(table, labels=None) -> Semigroup:
    """Validate a raw table and return the Semigroup.

    Shape and range problems raise ValueError naming the position; an
    associativity failure raises AssociativityError with the lexicographically
    first violating triple.
    """
    sg = Semigroup(tuple(tuple(row) for row in table), labels)
    t = sg.table
    n = sg.size
    for x in range(n):
        tx = t[x]
        for y in range(n):
            txy = t[tx[y]]
            ty = t[y]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    raise AssociativityError(x, y, z)
    return sg


def multiply(S: Semigroup, x: int, y: int) -> int:
    n = S.size
    if not 0 <= x < n:
        raise IndexError(f"element {x} out of range 0..{n - 1}")
    if not 0 <= y < n:
        raise IndexError(f"element {y} out of range 0..{n - 1}")
    return S.table[x][y]


def power(S: Semigroup, x: int, e: int) -> int:
    """x**e by square-and-multiply; e may be an arbitrarily large positive int."""
    if e < 1:
        raise ValueError("exponent must be >= 1 (semigroups have no empty product)")
    n = S.size
    if not 0 <= x < n:
        raise IndexError(f"element {x} out of range 0..{n - 1}")
    t = S.table
    acc = None
    base = x
    while True:
        if e & 1:
            acc = base if acc is None else t[acc][base]
        e >>= 1
        if not e:
            break
        base = t[base][base]
    return acc


def distinguished_elements(S: Semigroup) -> DistinguishedElements:
    """Idempotents, the zero element and the neutral element (when they exist)."""
    t = S.table
    n = S.size
    idem = frozenset(x for x in range(n) if t[x][x] == x)
    zero = next((z for z in range(n) if all(t[z][x] == z == t[x][z] for x in range(n))), None)
    neutral = next((e for e in range(n) if all(t[e][x] == x == t[x][e] for x in range(n))), None)
    return DistinguishedElements(idem, zero, neutral)


def monogenic_orders(S: Semigroup) -> tuple[tuple[int, ...], int]:
    """Cardinality of the subsemigroup generated by each element, and the maximum."""
    t = S.table
    orders = []
    for s in range(S.size):
        seen = set()
        cur = s
        while cur not in seen:
            seen.add(cur)
            cur = t[cur][s]
        orders.append(len(seen))
    return tuple(orders), max(orders)


def local_monoid(S: Semigroup, e: int) -> tuple[Semigroup, tuple[int, ...]]:
    """The monoid e*S*e with neutral element e, plus the element mapping.

    Returns (M, elems) where elems[i] is the element of S represented by
    index i of M.
    """
    t = S.table
    n = S.size
    if not 0 <= e < n:
        raise IndexError(f"element {e} out of range 0..{n - 1}")
    if t[e][e] != e:
        raise ValueError(f"element {e} is not idempotent")
    elems = sorted({t[t[e][x]][e] for x in range(n)})
    index = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(index[t[x][y]] for y in elems) for x in elems)
    labels = tuple(S.labels[x] for x in elems) if S.labels is not None else None
    return Semigroup(table, labels), tuple(elems)


def subsemigroup_closure(S: Semigroup, gens) -> frozenset[int]:
    """Smallest product-closed subset containing the generators."""
    gens = set(gens)
    if not gens:
        raise ValueError("at least one generator required")
    t = S.table
    n = S.size
    for g in gens:
        if not 0 <= g < n:
            raise IndexError(f"generator {g} out of range 0..{n - 1}")
    closed = set(gens)
    queue = list(gens)
    while queue:
        x = queue.pop()
        for y in list(closed):
            for p in (t[x][y], t[y][x]):
                if p not in closed:
                    closed.add(p)
                    queue.append(p)
    return frozenset(closed)


def _mixed_radix(sizes: list[int]) -> list[int]:
    # stride[i] = product of sizes[i+1:], so tuples map to indices row-major
    strides = [1] * len(sizes)
    for i in range(len(sizes) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    return strides


def direct_product(factors, cap: int = DEFAULT_PRODUCT_CAP) -> tuple[Semigroup, list[tuple[int, ...]]]:
    """Componentwise product of the factors, plus one projection table per factor.

    Element (x_1, ..., x_k) gets index sum(stride_i * x_i) with the last factor
    varying fastest; projections[i][idx] recovers component i.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("at least one factor required")
    sizes = [f.size for f in factors]
    total = 1
    for s in sizes:
        total *= s
        if total > cap:
            raise ValueError(f"product size exceeds cap {cap}")
    strides = _mixed_radix(sizes)
    k = len(factors)

    comps = []
    for idx in range(total):
        rem = idx
        tup = []
        for i in range(k):
            tup.append(rem // strides[i])
            rem %= strides[i]
        comps.append(tuple(tup))

    tables = [f.table for f in factors]
    rows = []
    for xc in comps:
        row = []
        for yc in comps:
            idx = 0
            for i in range(k):
                idx += strides[i] * tables[i][xc[i]][yc[i]]
            row.append(idx)
        rows.append(tuple(row))

    labels = None
    if all(f.labels is not None for f in factors):
        labels = tuple("(" + ",".join(factors[i].labels[c[i]] for i in range(k)) + ")" for c in comps)
    projections = [tuple(c[i] for c in comps) for i in range(k)]
    return Semigroup(tuple(rows), labels), projections


def apply_morphism(h: Morphism, word) -> int:
    """Image of a non-empty word (sequence of letter indices) under h."""
    word = list(word)
    if not word:
        raise ValueError("the free semigroup A+ has no empty word")
    imgs = h.images
    m = len(imgs)
    for a in word:
        if not 0 <= a < m:
            raise IndexError(f"letter {a} out of range 0..{m - 1}")
    t = h.target.table
    acc = imgs[word[0]]
    for a in word[1:]:
        acc = t[acc][imgs[a]]
    return acc


def product_morphism(hs, cap: int = DEFAULT_PRODUCT_CAP) -> Morphism:
    """Combine morphisms over one alphabet into a morphism to the direct product."""
    hs = list(hs)
    if not hs:
        raise ValueError("at least one morphism required")
    m = hs[0].alphabet_size
    for i, h in enumerate(hs):
        if h.alphabet_size != m:
            raise ValueError(f"alphabet mismatch: morphism {i} has {h.alphabet_size} letters, expected {m}")
    prod, _ = direct_product([h.target for h in hs], cap)
    strides = _mixed_radix([h.target.size for h in hs])
    images = tuple(sum(strides[i] * hs[i].images[a] for i in range(len(hs))) for a in range(m))
    return Morphism(images, prod)
