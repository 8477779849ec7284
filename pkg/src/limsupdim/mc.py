"""Seeded Monte Carlo experiments on random limsup sets of rectangles.

The centers omega_n are drawn from the product measure through a
counter-based stream: omega_n is a pure function of (seed, n), so windows of
any experiment can be computed without replaying prefixes and identical runs
reproduce bit-identical statistics.

Almost-sure statements are replaced by falsifiable finite-sample surrogates
with explicit error budgets (3-sigma rules); rectangle membership uses closed
rectangles throughout.  Box-counting the limsup set itself is deliberately
not offered as a dimension estimator: typical limsup sets are dense, so box
counts saturate.  What is measured instead is what the dimension formula
actually controls -- hit sums along fibers and cover sums along the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import rng as crng
from .spaces import Cantor, Circle, Interval, ProductSpace, cover_rectangle
from .svf import (
    ExplicitSchedule,
    PowerLawSchedule,
    RadiusSchedule,
    closed_form_dimension,
    critical_exponent_series,
    estimate_sum_growth,
    exponent_profile,
    log_phi_rows,
    partial_sums,
)

__all__ = [
    "OmegaStream",
    "FiberSumResult",
    "DivergenceTestResult",
    "DensityReport",
    "TailCoverProfile",
    "VerdictConfig",
    "CheckResult",
    "VerdictReport",
    "fiber_hit_sum",
    "divergence_tail_bound_test",
    "density_check",
    "tail_cover_sum",
    "dimension_verdict",
]


@dataclass(frozen=True)
class OmegaStream:
    """Index-addressable stream of centers omega_n in a product space.

    omega_n is reproducible from (seed, n) alone; coordinate i of omega_n is
    derived from the hash word keyed (seed, lane=i, index=n), so access order
    is irrelevant and distinct indices are statistically independent.
    Indices start at 1.
    """

    seed: int
    space: ProductSpace

    def factor_coords(self, i: int, ns: np.ndarray) -> np.ndarray:
        """Embedded coordinates of factor i for the given indices."""
        ns = np.asarray(ns, dtype=np.int64)
        if np.any(ns < 1):
            raise ValueError("stream indices start at 1")
        factor = self.space.factors[i]
        if isinstance(factor, Cantor):
            digits = crng.bits(self.seed, i, ns, factor.default_depth)
            return digits.astype(float) @ factor.weights(factor.default_depth)
        return crng.uniform01(self.seed, i, ns)

    def factor_digits(self, i: int, ns: np.ndarray, depth: int) -> np.ndarray:
        """Leading digits of Cantor-factor samples (for cylinder binning)."""
        factor = self.space.factors[i]
        if not isinstance(factor, Cantor):
            raise ValueError(f"factor {i} is not a Cantor space")
        if depth > factor.default_depth:
            raise ValueError("requested depth exceeds the sampling depth")
        return crng.bits(self.seed, i, np.asarray(ns, dtype=np.int64),
                         factor.default_depth)[:, :depth]

    def omega(self, n: int) -> tuple:
        """The n-th center as a tuple of factor points."""
        out = []
        for i, factor in enumerate(self.space.factors):
            if isinstance(factor, Cantor):
                digits = crng.bits(self.seed, i, np.array([n]), factor.default_depth)[0]
                out.append(factor.point(digits))
            else:
                out.append(float(crng.uniform01(self.seed, i, np.array([n]))[0]))
        return tuple(out)

    def descriptor(self) -> dict:
        return {"seed": self.seed, "space": self.space.descriptor()}


def _require_matching_regularity(space: ProductSpace, s: Sequence[float]) -> np.ndarray:
    sv = np.asarray(list(s), dtype=float)
    ref = np.asarray(space.s_vector, dtype=float)
    if sv.shape != ref.shape or not np.allclose(sv, ref, rtol=1e-12, atol=0.0):
        raise ValueError(
            f"regularity vector {sv.tolist()} does not match the space's {ref.tolist()}"
        )
    return sv


def _require_sorted_schedule(sched: RadiusSchedule) -> None:
    """Fiber sums need r_{n,1} >= ... >= r_{n,d} for every n; relabel the
    factors before calling if the schedule is ordered differently."""
    if isinstance(sched, PowerLawSchedule):
        a = sched.alphas
        k = sched.coefficients
        if any(a2 < a1 for a1, a2 in zip(a, a[1:])) or any(
            k2 > k1 for k1, k2 in zip(k, k[1:])
        ):
            raise ValueError(
                "schedule must have non-increasing radii per index: "
                "sort decay exponents ascending (coefficients non-increasing) "
                "and relabel the factor spaces to match"
            )
    else:
        for idx, tup in enumerate(sched.tuples, start=1):
            vals = tup.values
            if any(v2 > v1 for v1, v2 in zip(vals, vals[1:])):
                raise ValueError(f"tuple #{idx} is not non-increasing; relabel first")
        if isinstance(sched.tail, PowerLawSchedule):
            _require_sorted_schedule(sched.tail)


def _radii_block(sched: RadiusSchedule, n0: int, n1: int) -> np.ndarray:
    ns = np.arange(n0, n1 + 1, dtype=np.int64)
    return np.exp(sched.log_radii(ns))


def _ball_measure_array(factor, x, rs: np.ndarray) -> np.ndarray:
    """Vectorised exact ball measures mu(B(x, r)) over an array of radii."""
    if isinstance(factor, Interval):
        xv = float(x)
        return np.maximum(
            0.0, np.minimum(xv + rs, 1.0) - np.maximum(xv - rs, 0.0)
        )
    if isinstance(factor, Circle):
        return np.minimum(2.0 * rs, 1.0)
    return np.array([factor.ball_measure(x, float(r)) for r in rs])


@dataclass(frozen=True)
class FiberSumResult:
    """Hit-sum along the fiber over an anchor x' in the first d-1 factors.

    The n-th term is chi(omega_n' in rect(x', r_n')) * r_{n,d}^u.  The exact
    expectation curve sums mu'(rect(x', r_n')) * r_{n,d}^u term by term; the
    lower-bound curve is c * sum Phi(s_1+...+s_{d-1}+u) with
    c = prod_{i<d} c_i^-1, which the expectation dominates term by term.
    """

    anchor: tuple
    u: float
    checkpoints: tuple[int, ...]
    partials: tuple[tuple[int, float], ...]
    expectation_exact: tuple[tuple[int, float], ...]
    expectation_lower: tuple[tuple[int, float], ...]
    hit_count: int

    def ratio(self, N: int | None = None) -> float | None:
        """Observed / exact-expectation at checkpoint N (default: last).
        None when the expectation is zero."""
        idx = -1 if N is None else self.checkpoints.index(N)
        obs = self.partials[idx][1]
        exp = self.expectation_exact[idx][1]
        return None if exp == 0.0 else obs / exp

    def csv_rows(self) -> list[list]:
        rows = []
        for (N, obs), (_, exp) in zip(self.partials, self.expectation_exact):
            ratio = obs / exp if exp > 0 else math.nan
            rows.append([N, obs, exp, ratio])
        return rows

    def statistics(self) -> dict:
        return {
            "u": self.u,
            "checkpoints": list(self.checkpoints),
            "observed": [v for _, v in self.partials],
            "expectation_exact": [v for _, v in self.expectation_exact],
            "expectation_lower": [v for _, v in self.expectation_lower],
            "hit_count": self.hit_count,
        }


def fiber_hit_sum(stream: OmegaStream, sched: RadiusSchedule,
                  s: Sequence[float], anchor: Sequence, u: float,
                  checkpoints: Sequence[int]) -> FiberSumResult:
    """Accumulate the fiber hit-sum at the given checkpoints.

    Requires d >= 2, u in [0, s_d], radii non-increasing per index (relabel
    the factors first if not), and an anchor in the first d-1 factors.
    """
    space = stream.space
    d = space.dim
    if d < 2:
        raise ValueError("fiber sums need a product of at least two factors")
    sv = _require_matching_regularity(space, s)
    if not (0.0 <= u <= sv[-1]):
        raise ValueError(f"u={u} outside [0, {sv[-1]}]")
    _require_sorted_schedule(sched)
    anchor = tuple(anchor)
    if len(anchor) != d - 1:
        raise ValueError(f"anchor must have {d - 1} coordinates, got {len(anchor)}")
    for factor, coord in zip(space.factors[:-1], anchor):
        factor.validate_point(coord)
    cps = sorted(set(int(N) for N in checkpoints))
    if not cps or cps[0] < 1:
        raise ValueError("checkpoints must be positive integers")
    n_max = cps[-1]

    radii = _radii_block(sched, 1, n_max)
    hits = np.ones(n_max, dtype=bool)
    for i, factor in enumerate(space.factors[:-1]):
        coords = stream.factor_coords(i, np.arange(1, n_max + 1))
        dist = factor.distance_to_array(coords, anchor[i])
        hits &= dist <= radii[:, i]
    weights = radii[:, -1] ** u
    terms = np.where(hits, weights, 0.0)

    exact_terms = weights.copy()
    for i, factor in enumerate(space.factors[:-1]):
        exact_terms = exact_terms * _ball_measure_array(factor, anchor[i], radii[:, i])

    t_u = min(math.fsum(sv[:-1]) + u, math.fsum(sv))
    c_const = math.prod(1.0 / f.c for f in space.factors[:-1])
    lower = [c_const * v for v in partial_sums(sched, sv, t_u, cps)]

    partials = tuple((N, math.fsum(terms[:N])) for N in cps)
    exact = tuple((N, math.fsum(exact_terms[:N])) for N in cps)
    return FiberSumResult(
        anchor=anchor,
        u=float(u),
        checkpoints=tuple(cps),
        partials=partials,
        expectation_exact=exact,
        expectation_lower=tuple(zip(cps, lower)),
        hit_count=int(hits[:n_max].sum()),
    )


@dataclass(frozen=True)
class DivergenceTestResult:
    """Empirical table for the divergence tail bound.

    For independent xi_n in [0, 1] with expectations p_n, whenever
    M <= (1/2) sum_{n<=N} p_n the probability P{sum_{n<=N} xi_n <= M} is at
    most 2/M.  Rows record (N, M, bound, sigma, empirical, ok) where ok means
    empirical <= 2/M + 3 sigma with sigma the binomial standard error.
    """

    trials: int
    rows: tuple[tuple[int, int, float, float, float, bool], ...]

    @property
    def passed(self) -> bool:
        return all(row[5] for row in self.rows)

    def csv_rows(self) -> list[list]:
        return [[N, M, emp, bound, (emp / bound if bound > 0 else math.nan)]
                for (N, M, bound, sigma, emp, ok) in self.rows]

    def statistics(self) -> dict:
        return {
            "trials": self.trials,
            "rows": [[N, M, bound, sigma, emp, ok]
                     for (N, M, bound, sigma, emp, ok) in self.rows],
            "passed": self.passed,
        }


def divergence_tail_bound_test(expectations: Sequence[float], trials: int,
                               rng: np.random.Generator,
                               checkpoints: Sequence[int] | None = None,
                               chunk: int = 512) -> DivergenceTestResult:
    """Simulate independent Bernoulli(p_n) and test the tail bound.

    For each checkpoint N and every admissible M (integers with
    1 <= M <= (1/2) sum_{n<=N} p_n) the empirical P{sum <= M} must not exceed
    2/M + 3 sigma.  Expectations of 0 or 1 are allowed ([0, 1] is the
    contract); with all p_n = 0 there is no admissible M and the table is
    empty.
    """
    p = np.asarray(list(expectations), dtype=float)
    if p.size == 0:
        raise ValueError("expectations must be non-empty")
    if np.any((p < 0.0) | (p > 1.0)):
        raise ValueError("expectations must lie in [0, 1]")
    if trials < 1000:
        raise ValueError("need at least 10^3 trials")
    cps = sorted(set(int(N) for N in (checkpoints or [p.size])))
    if cps[0] < 1 or cps[-1] > p.size:
        raise ValueError("checkpoints must lie in [1, len(expectations)]")

    sums = np.zeros((trials, len(cps)), dtype=np.int64)
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        draws = rng.random((m, p.size)) < p[None, :]
        csum = np.cumsum(draws, axis=1)
        for j, N in enumerate(cps):
            sums[done: done + m, j] = csum[:, N - 1]
        done += m

    rows = []
    for j, N in enumerate(cps):
        half_mean = 0.5 * math.fsum(p[:N])
        m_max = math.floor(half_mean)
        col = np.sort(sums[:, j])
        for M in range(1, m_max + 1):
            emp = float(np.searchsorted(col, M, side="right")) / trials
            bound = 2.0 / M
            b = min(bound, 1.0)
            sigma = math.sqrt(b * (1.0 - b) / trials)
            ok = emp <= bound + 3.0 * sigma
            rows.append((N, M, bound, sigma, emp, ok))
    return DivergenceTestResult(trials=trials, rows=tuple(rows))


@dataclass(frozen=True)
class DensityReport:
    """Cell occupancy of centers over a delta-net, at two horizons.

    The density surrogate passes when every cell is hit by the full horizon
    and the minimum cell count grew from the half horizon to the full one.
    """

    delta: float
    horizons: tuple[int, int]
    cell_count: int
    counts_half: tuple[int, ...]
    counts_full: tuple[int, ...]
    radii_note: str

    @property
    def min_counts(self) -> tuple[int, int]:
        mh = min(self.counts_half) if self.counts_half else 0
        mf = min(self.counts_full) if self.counts_full else 0
        return mh, mf

    @property
    def passed(self) -> bool:
        if not self.counts_full or min(self.counts_full) < 1:
            return False
        mh, mf = self.min_counts
        return mf > mh

    def csv_rows(self) -> list[list]:
        expected = self.horizons[1] / self.cell_count if self.cell_count else math.nan
        return [[cell, count, expected, count / expected if expected else math.nan]
                for cell, count in enumerate(self.counts_full)]

    def statistics(self) -> dict:
        return {
            "delta": self.delta,
            "horizons": list(self.horizons),
            "cell_count": self.cell_count,
            "min_counts": list(self.min_counts),
            "counts_full": list(self.counts_full),
            "passed": self.passed,
        }


def _factor_cells(factor, delta: float) -> int:
    if isinstance(factor, Cantor):
        depth = 0
        while factor.lam**depth > delta:
            depth += 1
        return depth  # number of digits; cell count is 2**depth
    return max(1, math.ceil(1.0 / delta))


def density_check(stream: OmegaStream, delta: float, horizon: int,
                  radii: Sequence[float] | None = None) -> DensityReport:
    """Count centers per cell of a delta-net at horizon and horizon // 2.

    Cells are products of per-factor cells: uniform arcs/intervals of length
    at most delta, or Cantor cylinders of diameter at most delta.  The
    optional radius sequence is echoed in the report for context (the limsup
    set over a cell is non-trivial only while radii stay positive); it does
    not enter the counting.
    """
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    space = stream.space
    cell_specs = []  # (factor, width, cells) per factor
    total_cells = 1
    for factor in space.factors:
        width = _factor_cells(factor, delta)
        cells = 2**width if isinstance(factor, Cantor) else width
        cell_specs.append((factor, width, cells))
        total_cells *= cells

    def counts_at(N: int) -> np.ndarray:
        if N == 0:
            return np.zeros(total_cells, dtype=np.int64)
        ns = np.arange(1, N + 1)
        index = np.zeros(N, dtype=np.int64)
        for i, (factor, width, cells) in enumerate(cell_specs):
            if isinstance(factor, Cantor):
                digits = stream.factor_digits(i, ns, width)
                cell = np.zeros(N, dtype=np.int64)
                for k in range(width):
                    cell = cell * 2 + digits[:, k]
            else:
                coords = stream.factor_coords(i, ns)
                cell = np.minimum((coords * cells).astype(np.int64), cells - 1)
            index = index * cells + cell
        return np.bincount(index, minlength=total_cells)

    half = horizon // 2
    note = "" if radii is None else (
        f"radii r_1={fmt_float(radii[0])}..r_N={fmt_float(radii[-1])}" if len(radii) else ""
    )
    return DensityReport(
        delta=delta,
        horizons=(half, horizon),
        cell_count=total_cells,
        counts_half=tuple(int(v) for v in counts_at(half)),
        counts_full=tuple(int(v) for v in counts_at(horizon)),
        radii_note=note,
    )


def fmt_float(x: float) -> str:
    return format(float(x), ".6g")


@dataclass(frozen=True)
class TailCoverProfile:
    """Cover-sum of a window of rectangles against its series reference.

    For each n the rectangle rect(omega_n, r_n) is covered by cubes whose
    radius is the n-th tuple's radius at the piece of t, and the sum of
    count * (2 * radius)^t over the window is compared with
    2^t * C * sum Phi_{r_n}^s(t), where C = prod_i 4^{s_i} c_i^2.  The cover
    construction guarantees value <= reference.
    """

    t: float
    window: tuple[int, int]
    value: float
    reference: float
    per_n: tuple[tuple[int, int, float, float, float], ...]  # n, count, radius, contribution, phi

    @property
    def ok(self) -> bool:
        return self.value <= self.reference * (1.0 + 1e-12)

    def csv_rows(self) -> list[list]:
        rows = []
        running_v = 0.0
        running_r = 0.0
        for n, count, radius, contribution, phi in self.per_n:
            running_v += contribution
            running_r += phi
            rows.append([n, running_v, running_r, running_v / running_r if running_r else math.nan])
        return rows

    def statistics(self) -> dict:
        return {
            "t": self.t,
            "window": list(self.window),
            "value": self.value,
            "reference": self.reference,
            "ok": self.ok,
        }


def tail_cover_sum(stream: OmegaStream, sched: RadiusSchedule,
                   s: Sequence[float], t: float,
                   window: tuple[int, int]) -> TailCoverProfile:
    """Construct the window's rectangle covers and sum their contributions."""
    space = stream.space
    sv = _require_matching_regularity(space, s)
    total = math.fsum(sv)
    if not (0.0 <= t <= total):
        raise ValueError(f"t={t} outside [0, {total}]")
    n0, n1 = int(window[0]), int(window[1])
    if n0 < 1 or n1 < n0:
        raise ValueError("window must satisfy 1 <= N0 <= N1")

    c_big = math.prod(4.0**f.s * f.c**2 for f in space.factors)
    ns = np.arange(n0, n1 + 1, dtype=np.int64)
    phi = np.exp(log_phi_rows(sched.log_radii(ns), sv, float(t)))
    reference = 2.0**t * c_big * math.fsum(phi)

    per_n = []
    contributions = []
    for offset, n in enumerate(ns):
        center = stream.omega(int(n))
        radii = sched.radius_tuple(int(n))
        vals = np.asarray(radii.values)
        order = np.argsort(-vals, kind="stable")
        s_sorted = sv[order]
        csum = np.cumsum(s_sorted)
        piece = min(int((csum < t).sum()), len(vals) - 1)
        rho = float(vals[order[piece]])
        report = cover_rectangle(space, center, radii, rho)
        contribution = report.count * (2.0 * rho) ** t
        contributions.append(contribution)
        per_n.append((int(n), report.count, rho, contribution, float(phi[offset])))
    value = math.fsum(contributions)
    return TailCoverProfile(
        t=float(t),
        window=(n0, n1),
        value=value,
        reference=reference,
        per_n=tuple(per_n),
    )


# ---------------------------------------------------------------------------
# Aggregate verdict
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerdictConfig:
    """Knobs for dimension_verdict; defaults match the acceptance budgets."""

    tol: float = 1e-9
    slope_tol: float = 0.05
    ratio_band: tuple[float, float] = (0.25, 4.0)
    fiber_checkpoints: tuple[int, ...] = (1000, 10_000, 100_000)
    fiber_pass_fraction: float = 0.9
    cover_window: tuple[int, int] = (1, 128)
    slope_blocks: tuple[int, ...] = (10_000, 100_000, 1_000_000)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # PASS | FAIL | SKIPPED | INCONCLUSIVE
    detail: str

    def as_row(self) -> list:
        return [self.name, self.status, self.detail]


@dataclass(frozen=True)
class VerdictReport:
    predicted_dimension: float
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.status != "FAIL" for c in self.checks)

    def csv_rows(self) -> list[list]:
        return [c.as_row() for c in self.checks]

    def statistics(self) -> dict:
        return {
            "predicted_dimension": self.predicted_dimension,
            "checks": [[c.name, c.status, c.detail] for c in self.checks],
            "passed": self.passed,
        }


def _projection_pair(sched: PowerLawSchedule, sv: np.ndarray) -> tuple[float, float]:
    """Predicted dimensions for the schedule and its last-coordinate drop,
    computed by the exact closed form with coordinates sorted so radii are
    non-increasing."""
    order = np.argsort(np.asarray(sched.alphas), kind="stable")
    alphas = tuple(float(sched.alphas[i]) for i in order)
    coeffs = tuple(float(sched.coefficients[i]) for i in order)
    ss = sv[order]
    full = closed_form_dimension(PowerLawSchedule(alphas, coeffs), ss)
    if len(alphas) == 1:
        return full, full
    sub = closed_form_dimension(PowerLawSchedule(alphas[:-1], coeffs[:-1]), ss[:-1])
    return full, sub


def dimension_verdict(sched: RadiusSchedule, s: Sequence[float],
                      space: ProductSpace, seeds: Sequence[int],
                      config: VerdictConfig | None = None) -> VerdictReport:
    """Aggregate the verifiable ingredients of the dimension formula.

    Emits PASS/FAIL per check: agreement of the two critical-exponent
    methods, tail-cover domination with growth slopes on both sides of t*,
    fiber hit-sum divergence below t*, and the projection inequality.  A
    method disagreement beyond tolerance is reported as a failing check, not
    swallowed.
    """
    cfg = config or VerdictConfig()
    sv = _require_matching_regularity(space, s)
    total = math.fsum(sv)
    checks: list[CheckResult] = []

    power = sched if isinstance(sched, PowerLawSchedule) else (
        sched.tail if isinstance(sched, ExplicitSchedule)
        and isinstance(sched.tail, PowerLawSchedule) else None
    )

    predicted = critical_exponent_series(sched, sv, cfg.tol)
    if power is not None:
        cf = closed_form_dimension(power, sv)
        agree = abs(cf - predicted) <= cfg.tol
        checks.append(CheckResult(
            "method-agreement",
            "PASS" if agree else "FAIL",
            f"series={predicted!r} closed-form={cf!r} tol={cfg.tol}",
        ))
        if agree:
            predicted = cf
    else:
        checks.append(CheckResult(
            "method-agreement", "SKIPPED", "no power-law model to cross-check"))

    # tail-cover domination on a modest constructed window
    t_probes = sorted({v for v in (0.5 * predicted, predicted,
                                   0.5 * (predicted + total)) if 0.0 < v <= total})
    violations = []
    for t in t_probes:
        prof = tail_cover_sum(OmegaStream(seeds[0], space), sched, sv, t, cfg.cover_window)
        if not prof.ok:
            violations.append((t, prof.value, prof.reference))
    checks.append(CheckResult(
        "cover-domination",
        "FAIL" if violations else "PASS",
        f"window={list(cfg.cover_window)} t_probes={[round(t, 6) for t in t_probes]}"
        + (f" violations={violations}" if violations else ""),
    ))

    # growth slopes of the series partial sums on both sides of t*
    if power is not None:
        prof = exponent_profile(power, sv)
        t_minus = prof.level_crossing(0.5)
        if t_minus is None:
            t_minus = 0.5 * total
        slope = estimate_sum_growth(sched, sv, t_minus, cfg.slope_blocks)
        target = max(0.0, 1.0 - prof.value(t_minus))
        ok = abs(slope - target) <= cfg.slope_tol
        checks.append(CheckResult(
            "divergent-slope",
            "PASS" if ok else "FAIL",
            f"t={t_minus!r} slope={slope!r} target={target!r}",
        ))
        if predicted < total:
            t_plus = predicted + 0.75 * (total - predicted)
            slope = estimate_sum_growth(sched, sv, t_plus, cfg.slope_blocks)
            ok = abs(slope) <= cfg.slope_tol
            checks.append(CheckResult(
                "convergent-slope",
                "PASS" if ok else "FAIL",
                f"t={t_plus!r} slope={slope!r} target=0.0",
            ))
        else:
            checks.append(CheckResult(
                "convergent-slope", "SKIPPED",
                "series diverges up to total(s); no convergent side"))
    else:
        checks.append(CheckResult("divergent-slope", "SKIPPED", "no exponent profile"))
        checks.append(CheckResult("convergent-slope", "SKIPPED", "no exponent profile"))

    # fiber hit-sum divergence below t*
    d = space.dim
    u_star = predicted - math.fsum(sv[:-1])
    if d >= 2 and u_star > 0.0:
        u = 0.5 * u_star
        anchor = space.center()[: d - 1]
        in_band = 0
        conclusive = 0
        for seed in seeds:
            res = fiber_hit_sum(OmegaStream(int(seed), space), sched, sv,
                                anchor, u, cfg.fiber_checkpoints)
            if res.hit_count == 0:
                continue
            conclusive += 1
            ratio = res.ratio()
            if ratio is not None and cfg.ratio_band[0] <= ratio <= cfg.ratio_band[1]:
                in_band += 1
        if conclusive == 0:
            checks.append(CheckResult(
                "fiber-divergence", "INCONCLUSIVE",
                f"u={u!r}: zero hits in every window"))
        else:
            frac = in_band / conclusive
            ok = frac >= cfg.fiber_pass_fraction
            checks.append(CheckResult(
                "fiber-divergence",
                "PASS" if ok else "FAIL",
                f"u={u!r} in-band {in_band}/{conclusive} over seeds",
            ))
    else:
        checks.append(CheckResult(
            "fiber-divergence", "SKIPPED",
            f"t* - sum(s') = {u_star!r} not positive" if d >= 2 else "d = 1"))

    # projection inequality on the closed-form outputs
    if power is not None and d >= 2:
        full, sub = _projection_pair(power, sv)
        ok = full >= sub - 1e-12
        checks.append(CheckResult(
            "projection-inequality",
            "PASS" if ok else "FAIL",
            f"full={full!r} projected={sub!r}",
        ))
    else:
        checks.append(CheckResult(
            "projection-inequality", "SKIPPED",
            "needs a power-law model and d >= 2"))

    return VerdictReport(predicted_dimension=predicted, checks=tuple(checks))
