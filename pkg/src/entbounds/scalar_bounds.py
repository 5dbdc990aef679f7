"""
Scalar power-sum inequalities behind the monogamy and polygamy bounds.

Every function is vectorized: ``x``, ``k`` and the exponent broadcast
against one another, and a scalar input gives a NumPy scalar back.  The
quantities being bounded are ``(1 + x)**mu`` (lower bounds, ``mu >= 1``) and
``(1 + x)**v`` (upper bounds, ``0 <= v <= 1``) on ``0 <= x <= 1/k``.

``0**0`` is taken as 1 throughout, so every bound equals 1 at ``x = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Relative slack allowed on x <= 1/k so that x = 1/k computed in floating point passes.
_EDGE = 1e-12


@dataclass(frozen=True)
class LemmaPoint:
    x: float
    k: float = 1.0
    mu: float | None = None
    v: float | None = None

    def as_dict(self) -> dict[str, float | None]:
        return {"x": self.x, "k": self.k, "mu": self.mu, "v": self.v}


def _arr(a) -> np.ndarray:
    return np.asarray(a, dtype=float)


def _check_x(x, k=1.0):
    x = _arr(x)
    k = _arr(k)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(k))):
        raise DomainError("x and k must be finite")
    if np.any(k < 1.0):
        raise DomainError("k must be >= 1")
    if np.any(x < 0.0) or np.any(x * k > 1.0 + _EDGE):
        raise DomainError("x must lie in [0, 1/k]")
    return x, k


def _check_mu(mu, lowest: float):
    mu = _arr(mu)
    if not np.all(np.isfinite(mu)) or np.any(mu < lowest):
        raise DomainError(f"exponent mu must be >= {lowest:g}")
    return mu


def _check_v(v):
    v = _arr(v)
    if not np.all(np.isfinite(v)) or np.any(v < 0.0) or np.any(v > 1.0):
        raise DomainError("exponent v must lie in [0, 1]")
    return v


# Coefficients of the x**exponent terms.  Each is the value of
# ((1+x)**e - polynomial part) / x**e at x = 1/k.


def mono_coefficient(k, mu):
    """``(k+1)^μ - μ k^(μ-1) - μ(μ-1)/2 k^(μ-2) - k^μ`` (third-order bracket)."""
    k, mu = _arr(k), _arr(mu)
    return (k + 1) ** mu - mu * k ** (mu - 1) - 0.5 * mu * (mu - 1) * k ** (mu - 2) - k**mu


def mono2_coefficient(k, mu):
    """``(k+1)^μ - μ k^(μ-1) - k^μ`` (second-order bracket)."""
    k, mu = _arr(k), _arr(mu)
    return (k + 1) ** mu - mu * k ** (mu - 1) - k**mu


def mono_weighted_coefficient(k, mu):
    """``(k+1)^μ - (1 + μ/(k+1)) k^μ``."""
    k, mu = _arr(k), _arr(mu)
    return (k + 1) ** mu - (1 + mu / (k + 1)) * k**mu


def poly_coefficient(k, v):
    """``Δ_k(v) = (k+1)^v - (1 + v/(k+1)) k^v``."""
    k, v = _arr(k), _arr(v)
    return (k + 1) ** v - (1 + v / (k + 1)) * k**v


def poly_weighted_coefficient(k, v):
    """``(k+1)^v - (k v/(k+1)^2 + 1) k^v``."""
    k, v = _arr(k), _arr(v)
    return (k + 1) ** v - (k * v / (k + 1) ** 2 + 1) * k**v


def power_gap(k, e):
    """``(k+1)^e - k^e``."""
    k, e = _arr(k), _arr(e)
    return (k + 1) ** e - k**e


def lemma1_lower_chain(x, k, mu):
    """Four nested lower bounds on ``(1+x)^μ`` for ``μ >= 1``, weakest last.

    Returns
    -------
    tuple of ndarray
        ``1 + kμ/(k+1) x + [(k+1)^μ - (1+μ/(k+1))k^μ] x^μ``,
        ``1 + [(k+1)^μ - k^μ] x^μ``, ``1 + (2^μ - 1) x^μ``, ``1 + μ x^μ``.
    """
    x, k = _check_x(x, k)
    mu = _check_mu(mu, 1.0)
    xm = x**mu
    return (
        1 + k * mu / (k + 1) * x + mono_weighted_coefficient(k, mu) * xm,
        1 + power_gap(k, mu) * xm,
        1 + (2.0**mu - 1) * xm,
        1 + mu * xm,
    )


def lemma1_upper_chain(x, k, v):
    """Four nested upper bounds on ``(1+x)^v`` for ``0 <= v <= 1``, weakest last."""
    x, k = _check_x(x, k)
    v = _check_v(v)
    xv = x**v
    return (
        1 + k**2 * v / (k + 1) ** 2 * x + poly_weighted_coefficient(k, v) * xv,
        1 + power_gap(k, v) * xv,
        1 + (2.0**v - 1) * xv,
        1 + v * xv,
    )


def lemma2_rhs(x, k, mu):
    """``1 + μx + [(k+1)^μ - μk^(μ-1) - k^μ] x^μ`` for ``μ >= 2``."""
    x, k = _check_x(x, k)
    mu = _check_mu(mu, 2.0)
    return 1 + mu * x + mono2_coefficient(k, mu) * x**mu


def lemma3_rhs(x, mu):
    """Third-order lower bound on ``(1+x)^μ`` over ``0 <= x <= 1``, ``μ >= 3``."""
    x, _ = _check_x(x, 1.0)
    mu = _check_mu(mu, 3.0)
    return 1 + mu * x + 0.5 * mu * (mu - 1) * x**2 + (2.0**mu - 0.5 * mu * (mu + 1) - 1) * x**mu


def lemma4_rhs(x, k, mu):
    """Third-order lower bound on ``(1+x)^μ`` over ``0 <= x <= 1/k``, ``μ >= 3``.

    Tight at both ends of the interval.
    """
    x, k = _check_x(x, k)
    mu = _check_mu(mu, 3.0)
    return 1 + mu * x + 0.5 * mu * (mu - 1) * x**2 + mono_coefficient(k, mu) * x**mu


def lemma5_rhs(x, v):
    """``1 + v/2 x + (2^v - v/2 - 1) x^v``, an upper bound on ``(1+x)^v`` for x in [0, 1]."""
    x, _ = _check_x(x, 1.0)
    v = _check_v(v)
    return 1 + 0.5 * v * x + (2.0**v - 0.5 * v - 1) * x**v


def lemma6_rhs(x, k, v):
    """``1 + kv/(k+1) x + Δ_k(v) x^v``, an upper bound on ``(1+x)^v`` for x in [0, 1/k]."""
    x, k = _check_x(x, k)
    v = _check_v(v)
    return 1 + k * v / (k + 1) * x + poly_coefficient(k, v) * x**v


def chain99_values(x, k, mu):
    """Monogamy rungs, non-increasing: third-order, second-order, pure power-gap bound."""
    x, k = _check_x(x, k)
    mu = _check_mu(mu, 3.0)
    return lemma4_rhs(x, k, mu), lemma2_rhs(x, k, mu), 1 + power_gap(k, mu) * x**mu


def chain100_values(x, k, v):
    """Polygamy rungs, non-decreasing: ``lemma6_rhs``, the weighted bound, the power-gap bound."""
    x, k = _check_x(x, k)
    v = _check_v(v)
    up = lemma1_upper_chain(x, k, v)
    return lemma6_rhs(x, k, v), up[0], up[1]
