"""Random test inputs shared across modules."""

from __future__ import annotations

import numpy as np


def random_density(rng, d, rank=None):
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def admissible_vector(rng, n_parties, k=1.0, kp=1.0, m=None, total=None):
    """Entries satisfying the head (factor ``k``) and tail (factor ``kp``) orderings.

    Built from the last entry backwards, then scaled so the entries sum to
    ``total`` (uniform in (0.05, 1] by default).  Scaling keeps every ratio.
    """
    n = n_parties - 1
    m = n_parties - 2 if m is None else m
    e = [0.0] * n
    e[-1] = rng.uniform(0.1, 1.0)
    tail = e[-1]
    for j in range(n - 1, 0, -1):  # 1-based party index j
        if j > m:
            e[j - 1] = tail * rng.uniform(0.0, 1.0) / kp
        else:
            e[j - 1] = k * tail * (1.0 + rng.uniform(0.0, 1.0))
        tail += e[j - 1]
    target = rng.uniform(0.05, 1.0) if total is None else total
    return [x * target / tail for x in e]
