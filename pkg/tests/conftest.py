import pytest

from sgisect.core import direct_product
from sgisect.families import (cyclic, enumerate_semigroup_tables, leftzero, mincap,
                              nilinterval, rightzero, trivial)


@pytest.fixture(scope="session")
def small_semigroups():
    """Every associative table of size 1, 2 and 3 (exhaustive)."""
    return [S for n in (1, 2, 3) for S in enumerate_semigroup_tables(n)]


@pytest.fixture(scope="session")
def family_pool():
    """A varied pool of constructively built semigroups for randomized tests."""
    pool = [trivial()]
    pool += [mincap(m) for m in range(2, 7)]
    pool += [leftzero(n) for n in (2, 3)]
    pool += [rightzero(n) for n in (2, 3)]
    pool += [cyclic(n) for n in (2, 3, 4)]
    pool += [nilinterval(k) for k in (1, 2, 3)]
    pool.append(direct_product([mincap(2), mincap(3)])[0])
    pool.append(direct_product([leftzero(2), cyclic(2)])[0])
    return pool
