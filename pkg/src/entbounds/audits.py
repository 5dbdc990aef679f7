"""
Sweep drivers behind the command-line tools.

Each driver returns plain dictionaries and lists so the CLI can serialize
them as CSV or JSON without further translation.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import scalar_bounds as sb
from .errors import DomainError, PreconditionError
from .linalg import partial_trace
from .measures import (
    coa_two_qubit,
    concurrence_pure,
    concurrence_two_qubit,
    three_qubit_profile,
)
from .relations import (
    BoundParams,
    prior_bound_ref33_monogamy,
    prior_bound_ref33_polygamy,
    prior_bound_ref37_monogamy,
    thm1_lower_bound,
    thm2_lower_bound,
    thm3_lower_bound,
    thm4_upper_bound,
    thm5_upper_bound,
)
from .states import RNG_ALGORITHM, example1_monogamy_state, example1_polygamy_state, haar_amplitudes

DEFAULT_K_GRID = tuple(sorted(set([1.0, 1.5, 2.0, 3.0, 5.0, 10.0] + [float(x) for x in np.round(np.geomspace(1.0, 10.0, 16)[1:-1], 6)])))

LEMMA_TOL = 1e-11
ENDPOINT_TOL = 1e-12
REDUCTION_TOL = 1e-13
SURFACE_TOL = 1e-11
EXACT_POINT_TOL = 1e-10
AUDIT_TOL = 1e-9
ORDER_TOL = 1e-12


@dataclass
class AuditConfig:
    seed: int = 20240901
    samples: int | None = None
    tolerance: float | None = None
    out: str | None = None
    format: str = "csv"
    # lemma sweeps
    grid_x: int = 200
    grid_exponent: int = 200
    k_grid: tuple[float, ...] = DEFAULT_K_GRID
    mu_max: float = 8.0
    lemma_samples: int = 1_000_000
    random_k_max: float = 10.0
    # surfaces
    fig1_k_step: float = 0.05
    fig1_mu_step: float = 0.1
    fig1_mu_max: float = 10.0
    fig2_k_step: float = 0.05
    fig2_v_step: float = 0.1
    # random audit
    audit_states: int = 10_000
    audit_k: tuple[float, ...] = (1.0, 1.5, 2.0)
    audit_mu: tuple[float, ...] = (3.0, 4.0, 5.0)
    audit_v: tuple[float, ...] = (0.3, 0.5, 0.8, 1.0)

    def __post_init__(self):
        if self.samples is not None and self.samples < 1:
            raise DomainError("sample count must be >= 1")
        if self.tolerance is not None and not math.isfinite(self.tolerance):
            raise DomainError("tolerance must be finite")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown output format {self.format!r}")
        for name in ("grid_x", "grid_exponent", "lemma_samples", "audit_states"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1")

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# lemma sweeps


@dataclass
class LemmaCheck:
    """One inequality family: ``slack(x, k, e) >= 0`` on its domain."""

    name: str
    exponent: str  # "mu" or "v"
    e_lo: float
    e_hi: float | None  # None -> cfg.mu_max
    slack: Callable
    unit_x: bool = False  # x ranges over [0, 1] independent of k

    def bounds(self, cfg: AuditConfig) -> tuple[float, float]:
        return self.e_lo, cfg.mu_max if self.e_hi is None else self.e_hi


def _min_stack(*arrs):
    return np.minimum.reduce([np.broadcast_to(a, np.broadcast(*arrs).shape) for a in arrs])


def _l1_lower(x, k, mu):
    b = sb.lemma1_lower_chain(x, k, mu)
    return _min_stack((1 + x) ** mu - b[0], b[0] - b[1], b[1] - b[2], b[2] - b[3])


def _l1_upper(x, k, v):
    b = sb.lemma1_upper_chain(x, k, v)
    return _min_stack(b[0] - (1 + x) ** v, b[1] - b[0], b[2] - b[1], b[3] - b[2])


def _c99(x, k, mu):
    c = sb.chain99_values(x, k, mu)
    return _min_stack(c[0] - c[1], c[1] - c[2])


def _c100(x, k, v):
    c = sb.chain100_values(x, k, v)
    return _min_stack(c[1] - c[0], c[2] - c[1])


LEMMA_CHECKS = (
    LemmaCheck("lemma1_lower_chain", "mu", 1.0, None, _l1_lower),
    LemmaCheck("lemma1_upper_chain", "v", 0.0, 1.0, _l1_upper),
    LemmaCheck("lemma2", "mu", 2.0, None, lambda x, k, mu: (1 + x) ** mu - sb.lemma2_rhs(x, k, mu)),
    LemmaCheck("lemma3", "mu", 3.0, None, lambda x, k, mu: (1 + x) ** mu - sb.lemma3_rhs(x, mu), unit_x=True),
    LemmaCheck("lemma4", "mu", 3.0, None, lambda x, k, mu: (1 + x) ** mu - sb.lemma4_rhs(x, k, mu)),
    LemmaCheck("lemma5", "v", 0.0, 1.0, lambda x, k, v: sb.lemma5_rhs(x, v) - (1 + x) ** v, unit_x=True),
    LemmaCheck("lemma6", "v", 0.0, 1.0, lambda x, k, v: sb.lemma6_rhs(x, k, v) - (1 + x) ** v),
    LemmaCheck("chain99", "mu", 3.0, None, _c99),
    LemmaCheck("chain100", "v", 0.0, 1.0, _c100),
)


def _grid_points(check: LemmaCheck, cfg: AuditConfig):
    lo, hi = check.bounds(cfg)
    t = np.linspace(0.0, 1.0, cfg.grid_x)
    ex = np.linspace(lo, hi, cfg.grid_exponent)
    k = np.asarray([1.0] if check.unit_x else cfg.k_grid, dtype=float)
    kk, tt, ee = np.meshgrid(k, t, ex, indexing="ij")
    x = tt if check.unit_x else tt / kk
    return x.ravel(), kk.ravel(), ee.ravel()


def _random_points(check: LemmaCheck, cfg: AuditConfig, n: int, rng: np.random.Generator):
    lo, hi = check.bounds(cfg)
    k = np.ones(n) if check.unit_x else rng.uniform(1.0, cfg.random_k_max, n)
    x = rng.uniform(0.0, 1.0, n) / k
    e = rng.uniform(lo, hi, n)
    return x, k, e


def _worst(check: LemmaCheck, x, k, e) -> dict:
    s = np.asarray(check.slack(x, k, e), dtype=float)
    if not np.all(np.isfinite(s)):
        bad = int(np.argmax(~np.isfinite(s)))
        return {"min_slack": float("nan"), "x": float(x[bad]), "k": float(k[bad]), "exponent": float(e[bad]), "points": int(s.size)}
    i = int(np.argmin(s))
    return {"min_slack": float(s[i]), "x": float(x[i]), "k": float(k[i]), "exponent": float(e[i]), "points": int(s.size)}


def _endpoint_checks(cfg: AuditConfig) -> list[dict]:
    k = np.asarray(cfg.k_grid, dtype=float)[:, None]
    mu = np.linspace(3.0, cfg.mu_max, cfg.grid_exponent)[None, :]
    v = np.linspace(0.0, 1.0, cfg.grid_exponent)[None, :]
    x = 1.0 / k
    rows = []
    for name, lhs, rhs, ex in (
        ("endpoint_lemma2", sb.lemma2_rhs(x, k, mu), (1 + x) ** mu, mu),
        ("endpoint_lemma4", sb.lemma4_rhs(x, k, mu), (1 + x) ** mu, mu),
        ("endpoint_lemma6", sb.lemma6_rhs(x, k, v), (1 + x) ** v, v),
    ):
        err = np.abs(lhs - rhs)
        i = np.unravel_index(int(np.argmax(err)), err.shape)
        kk, ee = np.broadcast_arrays(k, ex)
        rows.append({"check": name, "max_abs_error": float(err[i]), "tolerance": ENDPOINT_TOL,
                     "k": float(kk[i]), "exponent": float(ee[i]), "ok": bool(err[i] <= ENDPOINT_TOL)})
    xs = np.linspace(0.0, 1.0, cfg.grid_x)[:, None]
    for name, a, b in (
        ("reduction_lemma4_k1", sb.lemma4_rhs(xs, 1.0, mu), sb.lemma3_rhs(xs, mu)),
        ("reduction_lemma6_k1", sb.lemma6_rhs(xs, 1.0, v), sb.lemma5_rhs(xs, v)),
    ):
        err = float(np.max(np.abs(a - b)))
        rows.append({"check": name, "max_abs_error": err, "tolerance": REDUCTION_TOL, "ok": err <= REDUCTION_TOL})
    return rows


def run_lemma_audit(cfg: AuditConfig) -> dict:
    """Grid and randomized sweeps of every scalar inequality.

    A point is a violation when its slack falls below ``-tolerance``.
    """
    tol = LEMMA_TOL if cfg.tolerance is None else cfg.tolerance
    n_random = cfg.samples if cfg.samples is not None else cfg.lemma_samples
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    results, violations = [], []
    for check in LEMMA_CHECKS:
        for mode in ("grid", "random"):
            pts = _grid_points(check, cfg) if mode == "grid" else _random_points(check, cfg, n_random, rng)
            row = {"check": check.name, "mode": mode, "exponent_name": check.exponent, **_worst(check, *pts)}
            row["ok"] = bool(row["min_slack"] >= -tol)
            results.append(row)
            if not row["ok"]:
                violations.append(row)
    extras = _endpoint_checks(cfg)
    for row in extras:
        if not row["ok"]:
            violations.append(row)
    return {"tolerance": tol, "results": results, "exact_checks": extras, "violations": violations}


# ---------------------------------------------------------------------------
# worked example


EXAMPLE1_CLOSED_FORMS = {
    "C(rho_AB1)": 2 * math.sqrt(10) / 9,
    "C(rho_AB2)": 4 / 9,
    "C(rho_A|B1B2)": 2 * math.sqrt(14) / 9,
    "Ca(rho_AB1)": math.sqrt(34) / 12,
    "Ca(rho_AB2)": math.sqrt(74) / 12,
    "Ca(rho_A|B1B2)": math.sqrt(106) / 12,
}


def example1_measures() -> dict[str, float]:
    """The six concurrence values of the two worked-example states."""
    mono = example1_monogamy_state()
    poly = example1_polygamy_state()
    return {
        "C(rho_AB1)": concurrence_two_qubit(partial_trace(mono, (0, 1)), "AB1").value,
        "C(rho_AB2)": concurrence_two_qubit(partial_trace(mono, (0, 2)), "AB2").value,
        "C(rho_A|B1B2)": concurrence_pure(mono, (0,)).value,
        "Ca(rho_AB1)": coa_two_qubit(partial_trace(poly, (0, 1)), "AB1").value,
        "Ca(rho_AB2)": coa_two_qubit(partial_trace(poly, (0, 2)), "AB2").value,
        # assisted concurrence of a pure global state equals its concurrence
        "Ca(rho_A|B1B2)": concurrence_pure(poly, (0,)).value,
    }


def axis(lo: float, hi: float, step: float) -> np.ndarray:
    """``lo, lo+step, ...`` up to and always including ``hi``."""
    n = int(math.floor((hi - lo) / step + 1e-9))
    pts = lo + step * np.arange(n + 1)
    if hi - pts[-1] > 1e-9 * max(1.0, abs(hi)):
        pts = np.append(pts, hi)
    else:
        pts[-1] = hi
    return pts


FIG1_COLUMNS = ("k", "mu", "weighted_linear", "plain_linear", "quadratic", "lhs")
FIG2_COLUMNS = ("k", "v", "squared_weight", "linear_weight", "difference", "lhs")


def fig1_surface(cfg: AuditConfig, measures: dict[str, float] | None = None) -> list[dict]:
    """Monogamy bounds for the worked example over the admissible ``k`` and ``μ``.

    ``e1 = C²(ρ_AB1)``, ``e2 = C²(ρ_AB2)`` and ``lhs = C^(2μ)(ρ_A|B1B2)``.
    """
    meas = measures or example1_measures()
    e1, e2 = meas["C(rho_AB1)"] ** 2, meas["C(rho_AB2)"] ** 2
    c2 = meas["C(rho_A|B1B2)"] ** 2
    rows = []
    for k in axis(1.0, e1 / e2, cfg.fig1_k_step):
        for mu in axis(3.0, cfg.fig1_mu_max, cfg.fig1_mu_step):
            p = BoundParams(mu=float(mu), k=float(k))
            rows.append({
                "k": float(k),
                "mu": float(mu),
                "weighted_linear": prior_bound_ref33_monogamy(e1, e2, p, check=False),
                "plain_linear": prior_bound_ref37_monogamy(e1, e2, p, check=False),
                "quadratic": thm1_lower_bound(e1, e2, p).bound_value,
                "lhs": c2**mu,
            })
    return rows


def fig2_surface(cfg: AuditConfig, measures: dict[str, float] | None = None) -> list[dict]:
    """Polygamy bounds for the worked example; the dominant entry is ``C_a²(ρ_AB2)``."""
    meas = measures or example1_measures()
    e1, e2 = meas["Ca(rho_AB2)"] ** 2, meas["Ca(rho_AB1)"] ** 2
    ca2 = meas["Ca(rho_A|B1B2)"] ** 2
    rows = []
    for k in axis(1.0, e1 / e2, cfg.fig2_k_step):
        for v in axis(0.0, 1.0, cfg.fig2_v_step):
            p = BoundParams(v=float(v), k=float(k))
            ours = thm4_upper_bound(e1, e2, p).bound_value
            prior = prior_bound_ref33_polygamy(e1, e2, p, check=False)
            rows.append({"k": float(k), "v": float(v), "squared_weight": prior, "linear_weight": ours,
                         "difference": prior - ours, "lhs": ca2**v})
    return rows


def check_fig1(rows: list[dict], tol: float = SURFACE_TOL) -> list[dict]:
    bad = []
    for r in rows:
        for name, s in (("quadratic>=plain_linear", r["quadratic"] - r["plain_linear"]),
                        ("plain_linear>=weighted_linear", r["plain_linear"] - r["weighted_linear"]),
                        ("lhs>=quadratic", r["lhs"] - r["quadratic"])):
            if s < -tol:
                bad.append({"check": name, "slack": s, "k": r["k"], "mu": r["mu"]})
        if abs(r["k"] - 1.0) < 1e-12 and abs(r["mu"] - 3.0) < 1e-12:
            err = abs(r["quadratic"] - r["lhs"])
            if err >= EXACT_POINT_TOL:
                bad.append({"check": "quadratic==lhs at k=1,mu=3", "slack": -err, "k": r["k"], "mu": r["mu"]})
    return bad


def check_fig2(rows: list[dict], tol: float = SURFACE_TOL) -> list[dict]:
    return [{"check": "squared_weight>=linear_weight", "slack": r["difference"], "k": r["k"], "v": r["v"]}
            for r in rows if r["difference"] < -tol]


def run_example1(cfg: AuditConfig) -> dict:
    tol = SURFACE_TOL if cfg.tolerance is None else cfg.tolerance
    meas = example1_measures()
    measure_rows = [{"quantity": q, "computed": meas[q], "closed_form": EXAMPLE1_CLOSED_FORMS[q],
                     "abs_error": abs(meas[q] - EXAMPLE1_CLOSED_FORMS[q])} for q in EXAMPLE1_CLOSED_FORMS]
    fig1 = fig1_surface(cfg, meas)
    fig2 = fig2_surface(cfg, meas)
    violations = check_fig1(fig1, tol) + check_fig2(fig2, tol)
    for row in measure_rows:
        if row["abs_error"] >= EXACT_POINT_TOL:
            violations.append({"check": f"measure {row['quantity']}", "slack": -row["abs_error"]})
    return {"tolerance": tol, "measures": measure_rows, "fig1": fig1, "fig2": fig2, "violations": violations}


# ---------------------------------------------------------------------------
# randomized soundness audit


def run_random_audit(cfg: AuditConfig) -> dict:
    """Soundness and tightness of the three-party bounds on Haar-random states.

    Monogamy uses ``e_i = C²(ρ_AB_i)`` (``α = 2``) against ``C^(2μ)(ρ_A|B1B2)``;
    polygamy uses ``e_i = C_a²(ρ_AB_i)`` (``β = 2``) against ``C_a^(2v)(ρ_A|B1B2)``.
    """
    tol = AUDIT_TOL if cfg.tolerance is None else cfg.tolerance
    n_states = cfg.samples if cfg.samples is not None else cfg.audit_states
    amps = haar_amplitudes(3, cfg.seed, n_states)
    prof = three_qubit_profile(amps)
    c2_all = prof["C_A|B1B2"] ** 2
    mono_e = np.stack([prof["C_AB1"] ** 2, prof["C_AB2"] ** 2], axis=1)
    poly_e = np.stack([prof["Ca_AB1"] ** 2, prof["Ca_AB2"] ** 2], axis=1)

    results, violations = [], []

    def offender(idx: int, what: str, slack: float, **extra) -> dict:
        a = amps[idx]
        return {"check": what, "slack": float(slack), "seed": cfg.seed, "index": int(idx),
                "amplitudes_re": [float(t) for t in a.real], "amplitudes_im": [float(t) for t in a.imag], **extra}

    ckw = c2_all - mono_e.sum(axis=1)
    bad = np.nonzero(ckw < -tol)[0]
    results.append({"theorem": "ckw", "k": None, "exponent": 2.0, "total": n_states, "applicable": n_states,
                    "sound": int(n_states - bad.size), "violations": int(bad.size), "order_violations": 0,
                    "min_slack": float(ckw.min())})
    violations += [offender(i, "ckw", ckw[i]) for i in bad]

    for k in cfg.audit_k:
        for mu in cfg.audit_mu:
            p = BoundParams(mu=float(mu), k=float(k))
            row = {"theorem": 1, "k": float(k), "exponent": float(mu), "total": n_states, "applicable": 0,
                   "sound": 0, "violations": 0, "order_violations": 0, "min_slack": math.inf}
            for i in range(n_states):
                try:
                    rep = thm1_lower_bound(mono_e[i, 0], mono_e[i, 1], p)
                except PreconditionError:
                    continue
                row["applicable"] += 1
                slack = c2_all[i] ** mu - rep.bound_value
                row["min_slack"] = min(row["min_slack"], float(slack))
                if slack >= -tol:
                    row["sound"] += 1
                else:
                    row["violations"] += 1
                    violations.append(offender(i, "thm1 soundness", slack, k=k, mu=mu))
                c = rep.comparison_values
                order = min(rep.bound_value - c["plain_linear"], c["plain_linear"] - c["weighted_linear"])
                if order < -ORDER_TOL:
                    row["order_violations"] += 1
                    violations.append(offender(i, "quadratic >= plain_linear >= weighted_linear", order, k=k, mu=mu))
            results.append(row)
        for v in cfg.audit_v:
            p = BoundParams(v=float(v), k=float(k))
            row = {"theorem": 4, "k": float(k), "exponent": float(v), "total": n_states, "applicable": 0,
                   "sound": 0, "violations": 0, "order_violations": 0, "min_slack": math.inf}
            for i in range(n_states):
                try:
                    rep = thm4_upper_bound(poly_e[i, 0], poly_e[i, 1], p)
                except PreconditionError:
                    continue
                row["applicable"] += 1
                slack = rep.bound_value - c2_all[i] ** v
                row["min_slack"] = min(row["min_slack"], float(slack))
                if slack >= -tol:
                    row["sound"] += 1
                else:
                    row["violations"] += 1
                    violations.append(offender(i, "thm4 soundness", slack, k=k, v=v))
                if rep.gap > ORDER_TOL:
                    row["order_violations"] += 1
                    violations.append(offender(i, "linear_weight <= squared_weight", -rep.gap, k=k, v=v))
            results.append(row)
    for row in results:
        if row["min_slack"] == math.inf:
            row["min_slack"] = None
    return {"tolerance": tol, "rng": RNG_ALGORITHM, "states": n_states, "results": results, "violations": violations}


# ---------------------------------------------------------------------------
# ad-hoc bound evaluation


THEOREMS = {1: thm1_lower_bound, 2: thm2_lower_bound, 3: thm3_lower_bound, 4: thm4_upper_bound, 5: thm5_upper_bound}


def evaluate_bound(theorem: int, values, params: BoundParams, enforce: bool = True):
    if theorem not in THEOREMS:
        raise DomainError(f"unknown theorem {theorem}")
    if theorem in (1, 4):
        if len(values) != 2:
            raise DomainError(f"theorem {theorem} takes exactly two values")
        return THEOREMS[theorem](values[0], values[1], params, enforce=enforce)
    return THEOREMS[theorem](values, params, enforce=enforce)
