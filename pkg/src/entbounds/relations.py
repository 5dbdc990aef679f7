"""
Monogamy lower bounds and polygamy upper bounds on one-to-group entanglement.

All evaluators take *base-power* values: ``e_i = E^α(ρ_AB_i)`` for monogamy
and ``e_i = E_a^β(ρ_AB_i)`` for polygamy.  Higher powers are recovered with
``E^η = e^μ``, ``E^(η-α) = e^(μ-1)``, ``E^(η-2α) = e^(μ-2)`` and, for
polygamy, ``E_a^γ = e^v``, ``E_a^(γ-β) = e^(v-1)``.  A monogamy bound is then
a lower bound on ``E^η(ρ_A|B1...)`` and a polygamy bound an upper bound on
``E_a^γ(ρ_A|B1...)``.

Ordering preconditions are checked with an absolute slack of
``PRECONDITION_TOL``.  Pass ``enforce=False`` to evaluate a formula anyway;
the report then carries ``precondition_ok=False``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .errors import DomainError, PreconditionError
from .scalar_bounds import (
    mono2_coefficient,
    mono_coefficient,
    mono_weighted_coefficient,
    poly_coefficient,
    poly_weighted_coefficient,
    power_gap,
)

PRECONDITION_TOL = 1e-12
MONOGAMY_BASE = "monogamy_base"
POLYGAMY_BASE = "polygamy_base"


@dataclass(frozen=True)
class BoundParams:
    """Exponent and partition parameters shared by the bound evaluators.

    ``mu = eta/alpha`` and ``v = gamma/beta`` are the working exponents;
    ``alpha`` and ``beta`` only matter when converting back to ``eta`` and
    ``gamma``.  Use :meth:`from_exponents` to start from ``eta``/``gamma``.
    """

    mu: float = 3.0
    v: float = 1.0
    k: float = 1.0
    k_prime: float = 1.0
    m: int = 1
    n_parties: int = 3
    alpha: float = 2.0
    beta: float = 2.0

    def __post_init__(self):
        for name in ("mu", "v", "k", "k_prime", "alpha", "beta"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.alpha <= 0 or self.beta <= 0:
            raise DomainError("alpha and beta must be positive")
        if self.mu < 3.0:
            raise DomainError(f"mu = eta/alpha must be >= 3, got {self.mu}")
        if not 0.0 <= self.v <= 1.0:
            raise DomainError(f"v = gamma/beta must lie in [0, 1], got {self.v}")
        if self.k < 1.0 or self.k_prime < 1.0:
            raise DomainError("k and k_prime must be >= 1")
        if int(self.n_parties) != self.n_parties or self.n_parties < 3:
            raise DomainError("n_parties must be an integer >= 3")
        if int(self.m) != self.m or self.m < 0:
            raise DomainError("m must be a nonnegative integer")

    @classmethod
    def from_exponents(cls, alpha: float, eta: float, beta: float = 2.0, gamma: float | None = None, **kw):
        gamma = beta if gamma is None else gamma
        return cls(mu=eta / alpha, v=gamma / beta, alpha=alpha, beta=beta, **kw)

    @property
    def eta(self) -> float:
        return self.mu * self.alpha

    @property
    def gamma(self) -> float:
        return self.v * self.beta


@dataclass(frozen=True)
class MeasureVector:
    """Entries ``e_i`` for ``i = 1 .. N-1``, already raised to the base power."""

    values: tuple[float, ...]
    kind: str = MONOGAMY_BASE

    def __post_init__(self):
        vals = tuple(float(x) for x in self.values)
        if any(not math.isfinite(x) or x < 0 for x in vals):
            raise DomainError(f"measure values must be finite and nonnegative, got {vals}")
        if self.kind not in (MONOGAMY_BASE, POLYGAMY_BASE):
            raise DomainError(f"unknown measure vector kind {self.kind!r}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PreconditionReport:
    """Slacks of the ordering assumptions; a condition holds when its slack >= -tol.

    ``head[i-1] = e_i - k * S_{i+1}`` for ``i = 1..m`` and
    ``tail[j-m-1] = S_{j+1} - k' * e_j`` for ``j = m+1..N-2``, where ``S_i``
    is the tail sum ``e_i + ... + e_{N-1}``.  For two entries, ``mirrored``
    is the slack ``e_2 - k * e_1`` of the swapped ordering.
    """

    head: tuple[float, ...]
    tail: tuple[float, ...]
    m: int
    mirrored: float | None = None
    tol: float = PRECONDITION_TOL

    @property
    def head_ok(self) -> bool:
        return all(s >= -self.tol for s in self.head)

    @property
    def tail_ok(self) -> bool:
        return all(s >= -self.tol for s in self.tail)

    @property
    def ok(self) -> bool:
        return self.head_ok and self.tail_ok

    @property
    def mirrored_ok(self) -> bool:
        return self.mirrored is not None and self.mirrored >= -self.tol

    def first_failure(self) -> int | None:
        """1-based party index of the first failing condition."""
        for i, s in enumerate(self.head, start=1):
            if s < -self.tol:
                return i
        for j, s in enumerate(self.tail, start=self.m + 1):
            if s < -self.tol:
                return j
        return None

    @property
    def slacks(self) -> tuple[float, ...]:
        return self.head + self.tail


@dataclass(frozen=True)
class BoundReport:
    """An evaluated bound with its preconditions and the prior bounds it is compared against.

    ``gap`` is ``bound_value`` minus the tightest comparison: the largest
    one for lower bounds, the smallest one for upper bounds.  It is ``None``
    when there is nothing to compare against.
    """

    bound_value: float
    precondition_ok: bool
    precondition_detail: tuple[float, ...]
    comparison_values: dict[str, float] = field(default_factory=dict)
    gap: float | None = None
    direction: str = "lower"
    theorem: int = 0
    branch: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _values(values, params: BoundParams | None = None) -> tuple[float, ...]:
    vals = values.values if isinstance(values, MeasureVector) else MeasureVector(tuple(values)).values
    if len(vals) < 2:
        raise DomainError("need at least two measure values")
    if params is not None and len(vals) != params.n_parties - 1:
        raise DomainError(
            f"{len(vals)} measure values do not match n_parties={params.n_parties} (expected {params.n_parties - 1})"
        )
    return vals


def _tail_sums(e: Sequence[float]) -> list[float]:
    """``S[i] = e[i] + ... + e[-1]`` (0-based), with ``S[len(e)] = 0``."""
    s = [0.0] * (len(e) + 1)
    for i in range(len(e) - 1, -1, -1):
        s[i] = s[i + 1] + e[i]
    return s


def check_monogamy_preconditions(values, params: BoundParams, m: int | None = None) -> PreconditionReport:
    """Evaluate the head (``k``) and tail (``k'``) ordering assumptions.

    ``m`` defaults to ``params.m`` and may range over ``0 .. N-2``; ``m = N-2``
    is the all-head family used by the chain bound.
    """
    e = _values(values, params)
    n = len(e) + 1
    m = params.m if m is None else int(m)
    if not 0 <= m <= n - 2:
        raise DomainError(f"m={m} outside 0..{n - 2} for N={n}")
    s = _tail_sums(e)
    head = tuple(e[i - 1] - params.k * s[i] for i in range(1, m + 1))
    tail = tuple(s[j] - params.k_prime * e[j - 1] for j in range(m + 1, n - 1))
    mirrored = e[1] - params.k * e[0] if len(e) == 2 else None
    return PreconditionReport(head, tail, m, mirrored)


check_polygamy_preconditions = check_monogamy_preconditions


def _pw(base: float, exp: float) -> float:
    """``base**exp`` with ``0**0 = 1`` and ``0**negative`` guarded by the caller."""
    return base**exp


def _mono_pair(big: float, small: float, k: float, mu: float) -> float:
    return (
        _pw(big, mu)
        + mu * _pw(big, mu - 1) * small
        + 0.5 * mu * (mu - 1) * _pw(big, mu - 2) * small**2
        + float(mono_coefficient(k, mu)) * _pw(small, mu)
    )


def _cross(big: float, small: float, v: float) -> float:
    """``big^(v-1) * small``, taken as 0 when ``small == 0`` (limit under the ordering)."""
    if small == 0.0:
        return 0.0
    if big == 0.0:
        return math.inf
    return _pw(big, v - 1) * small


def _poly_pair(big: float, small: float, k: float, v: float) -> float:
    return _pw(big, v) + k * v / (k + 1) * _cross(big, small, v) + float(poly_coefficient(k, v)) * _pw(small, v)


def _require_pair(e1: float, e2: float) -> tuple[float, float]:
    e1, e2 = float(e1), float(e2)
    if not (math.isfinite(e1) and math.isfinite(e2)) or e1 < 0 or e2 < 0:
        raise DomainError(f"measure values must be finite and nonnegative, got ({e1}, {e2})")
    return e1, e2


def _dominant_first(e1: float, e2: float, k: float, enforce: bool, tol: float = PRECONDITION_TOL):
    s_i = e1 - k * e2
    s_ii = e2 - k * e1
    if s_i >= -tol:
        return "i", e1, e2, (s_i, s_ii), True
    if s_ii >= -tol:
        return "ii", e2, e1, (s_i, s_ii), True
    if enforce:
        raise PreconditionError(
            f"neither e1 >= k*e2 nor e2 >= k*e1 holds (k={k}, e1={e1}, e2={e2})", index=1, slack=s_i
        )
    if e1 >= e2:
        return "i", e1, e2, (s_i, s_ii), False
    return "ii", e2, e1, (s_i, s_ii), False


def _check_prior(e1: float, e2: float, k: float, check: bool):
    e1, e2 = _require_pair(e1, e2)
    if check and e1 - k * e2 < -PRECONDITION_TOL:
        raise PreconditionError(f"prior bound needs e1 >= k*e2 (k={k}, e1={e1}, e2={e2})", index=1)
    return e1, e2


def prior_bound_ref33_monogamy(e1: float, e2: float, params: BoundParams, check: bool = True) -> float:
    """``e1^μ + kμ/(k+1) e1^(μ-1) e2 + [(k+1)^μ - (1 + μ/(k+1)) k^μ] e2^μ``."""
    e1, e2 = _check_prior(e1, e2, params.k, check)
    k, mu = params.k, params.mu
    return _pw(e1, mu) + k * mu / (k + 1) * _pw(e1, mu - 1) * e2 + float(mono_weighted_coefficient(k, mu)) * _pw(e2, mu)


def prior_bound_ref37_monogamy(e1: float, e2: float, params: BoundParams, check: bool = True) -> float:
    """``e1^μ + μ e1^(μ-1) e2 + [(k+1)^μ - μ k^(μ-1) - k^μ] e2^μ``."""
    e1, e2 = _check_prior(e1, e2, params.k, check)
    k, mu = params.k, params.mu
    return _pw(e1, mu) + mu * _pw(e1, mu - 1) * e2 + float(mono2_coefficient(k, mu)) * _pw(e2, mu)


def prior_bound_ref33_polygamy(e1: float, e2: float, params: BoundParams, check: bool = True) -> float:
    """``e1^v + k²v/(k+1)² e1^(v-1) e2 + [(k+1)^v - (kv/(k+1)² + 1) k^v] e2^v``."""
    e1, e2 = _check_prior(e1, e2, params.k, check)
    k, v = params.k, params.v
    return _pw(e1, v) + k**2 * v / (k + 1) ** 2 * _cross(e1, e2, v) + float(poly_weighted_coefficient(k, v)) * _pw(e2, v)


def thm1_lower_bound(e1: float, e2: float, params: BoundParams, enforce: bool = True) -> BoundReport:
    """Three-party monogamy lower bound on ``E^η(ρ_A|B1B2)``.

    The larger-by-factor-``k`` entry plays the dominant role; when both
    orderings hold (only possible for ``k = 1``, ``e1 = e2``) the first is used.
    Comparison values are the two earlier bounds evaluated on the same inputs.
    """
    e1, e2 = _require_pair(e1, e2)
    branch, big, small, slacks, ok = _dominant_first(e1, e2, params.k, enforce)
    value = _mono_pair(big, small, params.k, params.mu)
    comps = {
        "weighted_linear": prior_bound_ref33_monogamy(big, small, params, check=False),
        "plain_linear": prior_bound_ref37_monogamy(big, small, params, check=False),
    }
    return BoundReport(value, ok, slacks, comps, value - max(comps.values()), "lower", 1, branch)


def thm4_upper_bound(e1: float, e2: float, params: BoundParams, enforce: bool = True) -> BoundReport:
    """Three-party polygamy upper bound on ``E_a^γ(ρ_A|B1B2)``."""
    e1, e2 = _require_pair(e1, e2)
    branch, big, small, slacks, ok = _dominant_first(e1, e2, params.k, enforce)
    value = _poly_pair(big, small, params.k, params.v)
    comps = {"squared_weight": prior_bound_ref33_polygamy(big, small, params, check=False)}
    return BoundReport(value, ok, slacks, comps, value - min(comps.values()), "upper", 4, branch)


def _mono_head(e: Sequence[float], s: Sequence[float], upto: int, coef: float, mu: float) -> float:
    total = 0.0
    for i in range(1, upto + 1):
        ei, rest = e[i - 1], s[i]
        block = _pw(ei, mu) + mu * _pw(ei, mu - 1) * rest + 0.5 * mu * (mu - 1) * _pw(ei, mu - 2) * rest**2
        total += _pw(coef, i - 1) * block
    return total


def _split_check(values, params: BoundParams, enforce: bool, theorem: int):
    e = _values(values, params)
    n = len(e) + 1
    if n < 4:
        raise DomainError(f"theorem {theorem} needs N >= 4 parties, got N={n}")
    m = int(params.m)
    if not 1 <= m <= n - 3:
        raise DomainError(f"m={m} must satisfy 1 <= m <= N-3 = {n - 3}")
    pre = check_monogamy_preconditions(e, params, m)
    if enforce and not pre.ok:
        idx = pre.first_failure()
        raise PreconditionError(f"ordering assumption fails at index {idx}", index=idx)
    return e, n, m, pre


def thm2_lower_bound(values, params: BoundParams, enforce: bool = True) -> BoundReport:
    """N-party monogamy bound with a head block (factor ``k``) and a tail block (factor ``k'``).

    Entries ``1..m`` dominate their tails by ``k``; entries ``m+1..N-2`` are
    dominated by their tails by ``k'``.
    """
    e, n, m, pre = _split_check(values, params, enforce, 2)
    mu, k, kp = params.mu, params.k, params.k_prime
    s = _tail_sums(e)
    ck = float(mono_coefficient(k, mu))
    ckp = float(mono_coefficient(kp, mu))
    head = _mono_head(e, s, m, ck, mu)
    middle = float(power_gap(kp, mu)) * sum(_pw(e[j - 1], mu) for j in range(m + 1, n - 2))
    a, b = e[n - 3], e[n - 2]  # entries N-2 and N-1
    tail = ckp * _pw(a, mu) + 0.5 * mu * (mu - 1) * a**2 * _pw(b, mu - 2) + mu * a * _pw(b, mu - 1) + _pw(b, mu)
    value = head + _pw(ck, m) * (middle + tail)
    return BoundReport(value, pre.ok, pre.slacks, {}, None, "lower", 2)


def thm3_lower_bound(values, params: BoundParams, enforce: bool = True) -> BoundReport:
    """N-party monogamy bound when every entry dominates its tail by ``k``.

    For three parties this coincides with branch (i) of :func:`thm1_lower_bound`.
    """
    e = _values(values, params)
    n = len(e) + 1
    pre = check_monogamy_preconditions(e, params, n - 2)
    if enforce and not pre.ok:
        idx = pre.first_failure()
        raise PreconditionError(f"ordering assumption fails at index {idx}", index=idx)
    mu = params.mu
    ck = float(mono_coefficient(params.k, mu))
    s = _tail_sums(e)
    value = _mono_head(e, s, n - 2, ck, mu) + _pw(ck, n - 2) * _pw(e[n - 2], mu)
    return BoundReport(value, pre.ok, pre.slacks, {}, None, "lower", 3)


def thm5_upper_bound(values, params: BoundParams, enforce: bool = True) -> BoundReport:
    """N-party polygamy bound built from ``Δ_k(v)`` and ``Δ_k'(v)``."""
    e, n, m, pre = _split_check(values, params, enforce, 5)
    v, k, kp = params.v, params.k, params.k_prime
    s = _tail_sums(e)
    dk = float(poly_coefficient(k, v))
    dkp = float(poly_coefficient(kp, v))
    head = 0.0
    for i in range(1, m + 1):
        head += _pw(dk, i - 1) * (_pw(e[i - 1], v) + k * v / (k + 1) * _cross(e[i - 1], s[i], v))
    middle = float(power_gap(kp, v)) * sum(_pw(e[j - 1], v) for j in range(m + 1, n - 2))
    a, b = e[n - 3], e[n - 2]
    tail = dkp * _pw(a, v) + kp * v / (kp + 1) * _cross(b, a, v) + _pw(b, v)
    value = head + _pw(dk, m) * (middle + tail)
    return BoundReport(value, pre.ok, pre.slacks, {}, None, "upper", 5)
