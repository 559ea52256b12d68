"""Decision predicates for classes of finite semigroups.

``li`` refers to local triviality: every local monoid e*S*e collapses to {e}.
The graded version ``li_k`` is the equation
x_1...x_k z y_k...y_1 == x_1...x_k y_k...y_1 quantified over all elements;
``li_degree`` is the least k for which it holds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Semigroup, distinguished_elements, monogenic_orders


@dataclass(frozen=True)
class ClassificationReport:
    is_commutative: bool
    is_group: bool
    is_monoid: bool
    is_nilpotent: bool
    is_li: bool
    li_degree: int | None
    is_a2n: bool
    class_order: int


def is_commutative(S: Semigroup) -> bool:
    t = S.table
    n = S.size
    return all(t[x][y] == t[y][x] for x in range(n) for y in range(x + 1, n))


def is_monoid(S: Semigroup) -> bool:
    return distinguished_elements(S).neutral is not None


def is_group(S: Semigroup) -> bool:
    e = distinguished_elements(S).neutral
    if e is None:
        return False
    t = S.table
    n = S.size
    return all(any(t[x][y] == e and t[y][x] == e for y in range(n)) for x in range(n))


def is_nilpotent(S: Semigroup) -> bool:
    """True iff the only idempotent is a zero element."""
    d = distinguished_elements(S)
    return d.zero is not None and d.idempotents == frozenset({d.zero})


def is_li(S: Semigroup) -> bool:
    """True iff e*x*e == e for every idempotent e and every x."""
    t = S.table
    n = S.size
    for e in range(n):
        if t[e][e] != e:
            continue
        te = t[e]
        for x in range(n):
            if t[te[x]][e] != e:
                return False
    return True


def _products_of_length(S: Semigroup, k: int) -> set[int]:
    # values ranged over by x_1...x_k; grown by one factor at a time
    t = S.table
    n = S.size
    prods = set(range(n))
    for _ in range(k - 1):
        prods = {t[p][s] for p in prods for s in range(n)}
    return prods


def _li_condition_on(S: Semigroup, prods: set[int]) -> bool:
    t = S.table
    n = S.size
    for p in prods:
        tp = t[p]
        for z in range(n):
            tpz = t[tp[z]]
            for q in prods:
                if tpz[q] != tp[q]:
                    return False
    return True


def satisfies_li_k(S: Semigroup, k: int) -> bool:
    """Check the degree-k local triviality equation directly on S.

    Both outer products range exactly over the set of k-fold products, so the
    check quantifies the equation over all (2k+1)-tuples.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return _li_condition_on(S, _products_of_length(S, k))


def li_degree(S: Semigroup) -> int | None:
    """Least k such that S satisfies the degree-k equation; None when S is not li.

    The search is bounded by size+1: a locally trivial semigroup of size n
    always satisfies the equation at degree n+1.
    """
    if not is_li(S):
        return None
    t = S.table
    n = S.size
    prods = set(range(n))
    for k in range(1, n + 2):
        if _li_condition_on(S, prods):
            return k
        prods = {t[p][s] for p in prods for s in range(n)}
    raise AssertionError("locally trivial semigroup must satisfy the equation by degree size+1")


def is_a2n(S: Semigroup) -> bool:
    """True iff x*x*y == x*x == y*x*x for all x, y."""
    t = S.table
    n = S.size
    for x in range(n):
        xx = t[x][x]
        txx = t[xx]
        for y in range(n):
            if txx[y] != xx or t[y][xx] != xx:
                return False
    return True


def classify(S: Semigroup) -> ClassificationReport:
    _, class_order = monogenic_orders(S)
    li = is_li(S)
    return ClassificationReport(
        is_commutative=is_commutative(S),
        is_group=is_group(S),
        is_monoid=is_monoid(S),
        is_nilpotent=is_nilpotent(S),
        is_li=li,
        li_degree=li_degree(S) if li else None,
        is_a2n=is_a2n(S),
        class_order=class_order,
    )
