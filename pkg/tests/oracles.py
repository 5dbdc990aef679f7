"""
Independent reference implementations used to check the package.

Nothing here imports the code under test.  The oracles work in one of
three ways:

* high precision (``mpmath``) transcriptions of the scalar inequalities,
* step-by-step iteration of the peel-one-entry argument that produces the
  N-party bounds (instead of the closed summation forms),
* brute-force index loops and the textbook square-root route for the
  linear algebra.
"""

from __future__ import annotations

import itertools
import math

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def mpf(x):
    return mp.mpf(x) if not isinstance(x, mp.mpf) else x


def mpow(b, e):
    b, e = mpf(b), mpf(e)
    if b == 0:
        return mp.mpf(1) if e == 0 else mp.mpf(0)
    return b**e


# ---------------------------------------------------------------------------
# scalar inequalities in high precision


def hp_lemma1_lower(x, k, mu):
    x, k, mu = mpf(x), mpf(k), mpf(mu)
    xm = mpow(x, mu)
    return (
        1 + k * mu / (k + 1) * x + ((k + 1) ** mu - (1 + mu / (k + 1)) * k**mu) * xm,
        1 + ((k + 1) ** mu - k**mu) * xm,
        1 + (2**mu - 1) * xm,
        1 + mu * xm,
    )


def hp_lemma1_upper(x, k, v):
    x, k, v = mpf(x), mpf(k), mpf(v)
    xv = mpow(x, v)
    return (
        1 + k**2 * v / (k + 1) ** 2 * x + ((k + 1) ** v - (k * v / (k + 1) ** 2 + 1) * mpow(k, v)) * xv,
        1 + ((k + 1) ** v - mpow(k, v)) * xv,
        1 + (2**v - 1) * xv,
        1 + v * xv,
    )


def hp_lemma2(x, k, mu):
    x, k, mu = mpf(x), mpf(k), mpf(mu)
    return 1 + mu * x + ((k + 1) ** mu - mu * k ** (mu - 1) - k**mu) * mpow(x, mu)


def hp_lemma3(x, mu):
    x, mu = mpf(x), mpf(mu)
    return 1 + mu * x + mu * (mu - 1) / 2 * x**2 + (2**mu - mu * (mu + 1) / 2 - 1) * mpow(x, mu)


def hp_lemma4(x, k, mu):
    x, k, mu = mpf(x), mpf(k), mpf(mu)
    c = (k + 1) ** mu - mu * k ** (mu - 1) - mu * (mu - 1) / 2 * k ** (mu - 2) - k**mu
    return 1 + mu * x + mu * (mu - 1) / 2 * x**2 + c * mpow(x, mu)


def hp_lemma5(x, v):
    x, v = mpf(x), mpf(v)
    return 1 + v / 2 * x + (2**v - v / 2 - 1) * mpow(x, v)


def hp_delta(k, v):
    k, v = mpf(k), mpf(v)
    return (k + 1) ** v - (1 + v / (k + 1)) * mpow(k, v)


def hp_lemma6(x, k, v):
    x, k, v = mpf(x), mpf(k), mpf(v)
    return 1 + k * v / (k + 1) * x + hp_delta(k, v) * mpow(x, v)


# ---------------------------------------------------------------------------
# N-party bounds by iterating the one-step estimates


def _third_order(big, small, mu, k):
    """``big^μ (1 + x)^μ`` bounded below with ``x = small/big`` in ``[0, 1/k]``."""
    big, small = mpf(big), mpf(small)
    if big == 0:
        return mp.mpf(0) if small == 0 else mp.inf
    return mpow(big, mu) * hp_lemma4(small / big, k, mu)


def _first_order_up(big, small, v, k):
    big, small = mpf(big), mpf(small)
    if big == 0:
        return mp.mpf(0) if small == 0 else mp.inf
    return mpow(big, v) * hp_lemma6(small / big, k, v)


def iterate_monogamy(values, mu, k, kp, m):
    """Lower bound on ``(Σ e)^μ`` built one entry at a time.

    Entries ``1..m`` are peeled off as dominant terms (factor ``k``); the
    rest are absorbed from the back, each ``S_j^μ`` bounded using its tail
    ``S_{j+1}`` as the dominant part (factor ``k'``).
    """
    e = [mpf(x) for x in values]
    n = len(e) + 1

    def tail_sum(i):  # S_i, 1-based
        return mp.fsum(e[i - 1:])

    def lower(i):
        """Bound on S_i^μ."""
        if i == n - 1:
            return mpow(e[-1], mu)
        if i <= m:
            s_next = tail_sum(i + 1)
            ei = e[i - 1]
            mu_ = mpf(mu)
            c = (k + 1) ** mu_ - mu_ * mpf(k) ** (mu_ - 1) - mu_ * (mu_ - 1) / 2 * mpf(k) ** (mu_ - 2) - mpf(k) ** mu_
            if ei == 0:
                block = mp.mpf(0)
            else:
                block = mpow(ei, mu) + mu_ * mpow(ei, mu_ - 1) * s_next + mu_ * (mu_ - 1) / 2 * mpow(ei, mu_ - 2) * s_next**2
            return block + c * lower(i + 1)
        if i == n - 2:
            return _third_order(e[-1], e[-2], mu, kp)
        # S_i^μ = S_{i+1}^μ (1 + e_i/S_{i+1})^μ >= S_{i+1}^μ + [(k'+1)^μ - k'^μ] e_i^μ
        gap = (mpf(kp) + 1) ** mpf(mu) - mpf(kp) ** mpf(mu)
        return lower(i + 1) + gap * mpow(e[i - 1], mu)

    return lower(1)


def iterate_polygamy(values, v, k, kp, m):
    """Upper bound on ``(Σ e)^v`` built one entry at a time (mirror of :func:`iterate_monogamy`)."""
    e = [mpf(x) for x in values]
    n = len(e) + 1
    v_ = mpf(v)

    def upper(i):
        if i == n - 1:
            return mpow(e[-1], v_)
        if i <= m:
            # S_i^v = e_i^v (1 + S_{i+1}/e_i)^v <= e_i^v + kv/(k+1) e_i^(v-1) S_{i+1} + Δ_k S_{i+1}^v
            s_next = mp.fsum(e[i:])
            ei = e[i - 1]
            cross = mp.mpf(0) if s_next == 0 else mpow(ei, v_ - 1) * s_next
            return mpow(ei, v_) + mpf(k) * v_ / (mpf(k) + 1) * cross + hp_delta(k, v_) * upper(i + 1)
        if i == n - 2:
            return _first_order_up(e[-1], e[-2], v_, kp)
        gap = (mpf(kp) + 1) ** v_ - mpow(kp, v_)
        return upper(i + 1) + gap * mpow(e[i - 1], v_)

    return upper(1)


# ---------------------------------------------------------------------------
# closed special cases, transcribed literally


def split_monogamy_unit_factor(values, mu, m):
    """Head/tail monogamy bound with ``k = k' = 1`` and ``m`` head entries."""
    e = [mpf(x) for x in values]
    n = len(e) + 1
    mu = mpf(mu)
    b = 2**mu - mu - mu * (mu - 1) / 2 - 1
    total = mp.mpf(0)
    for i in range(1, m + 1):
        rest = mp.fsum(e[l - 1] for l in range(i + 1, n))
        ei = e[i - 1]
        total += b ** (i - 1) * (mpow(ei, mu) + mu * mpow(ei, mu - 1) * rest + mu * (mu - 1) / 2 * mpow(ei, mu - 2) * rest**2)
    total += b**m * (2**mu - 1) * mp.fsum(mpow(e[j - 1], mu) for j in range(m + 1, n - 2))
    a, z = e[n - 3], e[n - 2]
    total += b**m * (b * mpow(a, mu) + mu * (mu - 1) / 2 * a**2 * mpow(z, mu - 2) + mu * a * mpow(z, mu - 1) + mpow(z, mu))
    return total


def chain_monogamy_unit_factor(values, mu):
    """All-head monogamy bound with ``k = 1``."""
    e = [mpf(x) for x in values]
    n = len(e) + 1
    mu = mpf(mu)
    b = 2**mu - mu - mu * (mu - 1) / 2 - 1
    total = mp.mpf(0)
    for i in range(1, n - 1):
        rest = mp.fsum(e[j - 1] for j in range(i + 1, n))
        ei = e[i - 1]
        total += b ** (i - 1) * (mpow(ei, mu) + mu * mpow(ei, mu - 1) * rest + mu * (mu - 1) / 2 * mpow(ei, mu - 2) * rest**2)
    return total + b ** (n - 2) * mpow(e[n - 2], mu)


def split_polygamy_unit_factor(values, v, m):
    """Head/tail polygamy bound with ``k = k' = 1``."""
    e = [mpf(x) for x in values]
    n = len(e) + 1
    v = mpf(v)
    d = 2**v - v / 2 - 1
    total = mp.mpf(0)
    for i in range(1, m + 1):
        rest = mp.fsum(e[l - 1] for l in range(i + 1, n))
        cross = mp.mpf(0) if rest == 0 else mpow(e[i - 1], v - 1) * rest
        total += d ** (i - 1) * (mpow(e[i - 1], v) + v / 2 * cross)
    total += mpow(d, m) * (2**v - 1) * mp.fsum(mpow(e[j - 1], v) for j in range(m + 1, n - 2))
    a, z = e[n - 3], e[n - 2]
    cross = mp.mpf(0) if a == 0 else a * mpow(z, v - 1)
    total += mpow(d, m) * (d * mpow(a, v) + v / 2 * cross + mpow(z, v))
    return total


def three_party_monogamy(e1, e2, mu, k):
    """Dominant-first three-party bound, ``e1^μ`` times the third-order estimate."""
    return _third_order(e1, e2, mu, k)


def three_party_polygamy(e1, e2, v, k):
    return _first_order_up(e1, e2, v, k)


# ---------------------------------------------------------------------------
# linear algebra


def kron_bruteforce(a, b):
    a, b = np.asarray(a), np.asarray(b)
    (ra, ca), (rb, cb) = a.shape, b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i, j, p, q in itertools.product(range(ra), range(ca), range(rb), range(cb)):
        out[i * rb + p, j * cb + q] = a[i, j] * b[p, q]
    return out


def partial_trace_bruteforce(rho, dims, keep):
    """Sum over matching traced indices, one matrix element at a time."""
    dims = tuple(dims)
    keep = sorted(keep)
    n = len(dims)
    traced = [i for i in range(n) if i not in keep]
    kdims = [dims[i] for i in keep]
    tdims = [dims[i] for i in traced]

    def flat(digits):
        idx = 0
        for d, x in zip(dims, digits):
            idx = idx * d + x
        return idx

    def kflat(digits):
        idx = 0
        for d, x in zip(kdims, digits):
            idx = idx * d + x
        return idx

    dk = int(np.prod(kdims))
    out = np.zeros((dk, dk), dtype=complex)
    for r in itertools.product(*[range(d) for d in kdims]):
        for c in itertools.product(*[range(d) for d in kdims]):
            acc = 0j
            for t in itertools.product(*[range(d) for d in tdims]):
                rd, cd = [0] * n, [0] * n
                for pos, i in enumerate(keep):
                    rd[i], cd[i] = r[pos], c[pos]
                for pos, i in enumerate(traced):
                    rd[i] = cd[i] = t[pos]
                acc += rho[flat(rd), flat(cd)]
            out[kflat(r), kflat(c)] = acc
    return out


_SYY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


def wootters_lambdas_sqrt_route(rho):
    """Textbook route: eigenvalues of ``sqrt(sqrt(ρ) ρ̃ sqrt(ρ))`` with NumPy's eigh."""
    rho = np.asarray(rho, dtype=complex)
    w, u = np.linalg.eigh(rho)
    sq = (u * np.sqrt(np.clip(w, 0, None))) @ u.conj().T
    tilde = _SYY @ rho.conj() @ _SYY
    r = sq @ tilde @ sq
    ev = np.linalg.eigvalsh(0.5 * (r + r.conj().T))
    return np.sort(np.sqrt(np.clip(ev, 0, None)))[::-1]


def wootters_lambdas_mp(rho, dps: int = 40):
    """Same route in ``mpmath`` at ``dps`` digits; slow, for a handful of fixtures."""
    with mp.workdps(dps):
        m = mp.matrix([[mp.mpc(complex(x)) for x in row] for row in np.asarray(rho)])
        syy = mp.matrix([[mp.mpc(complex(x)) for x in row] for row in _SYY])
        w, u = mp.eighe(m)
        sq = u * mp.diag([mp.sqrt(max(mp.re(x), 0)) for x in w]) * u.transpose_conj()
        conj = mp.matrix([[mp.conj(m[i, j]) for j in range(4)] for i in range(4)])
        r = sq * (syy * conj * syy) * sq
        r = (r + r.transpose_conj()) / 2
        ev, _ = mp.eighe(r)
        lam = sorted((mp.sqrt(max(mp.re(x), 0)) for x in ev), reverse=True)
        return [float(x) for x in lam]


def concurrence_pure_bruteforce(amps, dims, cut):
    rho = np.outer(amps, np.conj(amps))
    red = partial_trace_bruteforce(rho, dims, cut)
    return math.sqrt(max(0.0, 2.0 * (1.0 - float(np.trace(red @ red).real))))
