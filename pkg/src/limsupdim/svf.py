"""Singular value function of a rectangle and the dimension it predicts.

For side radii r = (r_1, ..., r_d) and regularity exponents
s = (s_1, ..., s_d), the singular value function on [0, s_1 + ... + s_d] is

    Phi_r^s(t) = max { prod_i r_i^{t_i} : 0 <= t_i <= s_i, sum_i t_i = t },

attained by loading the total exponent t onto the largest radii first.  With
radii sorted non-increasingly, log Phi is piecewise linear in t with slope
log r_(i) on the i-th piece, breaking at the partial sums of the sorted s.

For a sequence of radius tuples the predicted almost-sure dimension of the
random limsup set is

    t* = inf { t : sum_n Phi_{r_n}^s(t) < infty }  capped at  s_1 + ... + s_d.

For power-law radii r_{n,i} = kappa_i * n^{-alpha_i} the n-th term equals
n^{-e(t)} up to bounded prefactors, where e is a convex piecewise-linear
exponent profile; the series converges iff e(t) > 1, so t* solves e(t) = 1.
Two independent routes to t* are provided: bisection on e(t) = 1 and a
closed-form minimum over pieces.  Everything here is pure and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "RadiusTuple",
    "RegularityVector",
    "SingularValueProfile",
    "PowerLawSchedule",
    "ExplicitSchedule",
    "ExponentProfile",
    "singular_value",
    "svf_profile",
    "exponent_profile",
    "critical_exponent_series",
    "closed_form_dimension",
    "partial_sum",
    "partial_sums",
    "estimate_sum_growth",
]

DEFAULT_BISECTION_TOL = 1e-9


@dataclass(frozen=True)
class RadiusTuple:
    """Side radii of a rectangle, one positive entry per factor space.

    Standalone radii must lie in (0, 1]; when attached to a space each entry
    must additionally not exceed that factor's diameter (checked at the point
    of attachment, not here).
    """

    values: tuple[float, ...]

    def __init__(self, values: Iterable[float]):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise ValueError("radius tuple must be non-empty")
        for v in vals:
            if not (0.0 < v <= 1.0) or math.isnan(v):
                raise ValueError(f"radii must lie in (0, 1], got {v}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]


@dataclass(frozen=True)
class RegularityVector:
    """Regularity exponents (s_1, ..., s_d), non-negative with finite total."""

    values: tuple[float, ...]

    def __init__(self, values: Iterable[float]):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise ValueError("regularity vector must be non-empty")
        for v in vals:
            if v < 0.0 or not math.isfinite(v):
                raise ValueError(f"regularity exponents must be finite and >= 0, got {v}")
        object.__setattr__(self, "values", vals)

    def total(self) -> float:
        return math.fsum(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]


def _as_radius_array(r: RadiusTuple | Sequence[float]) -> np.ndarray:
    vals = np.asarray(r.values if isinstance(r, RadiusTuple) else r, dtype=float)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("radii must form a non-empty 1-d sequence")
    if not np.all(vals > 0.0):
        raise ValueError("all radii must be strictly positive")
    return vals


def _as_regularity_array(s: RegularityVector | Sequence[float]) -> np.ndarray:
    vals = np.asarray(s.values if isinstance(s, RegularityVector) else s, dtype=float)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("regularity exponents must form a non-empty 1-d sequence")
    if not np.all(vals >= 0.0):
        raise ValueError("all regularity exponents must be >= 0")
    return vals


def log_phi_rows(log_r: np.ndarray, s: np.ndarray, t: float) -> np.ndarray:
    """log Phi for a batch of radius tuples given as rows of log-radii.

    ``log_r`` has shape (N, d); ``s`` has shape (d,).  Each row is sorted
    non-increasingly by radius (stable, so ties keep original order) and the
    piecewise product is accumulated in log space.  Returns shape (N,).
    """
    total = math.fsum(s)
    if not (0.0 <= t <= total):
        raise ValueError(f"t={t} outside [0, {total}]")
    log_r = np.atleast_2d(np.asarray(log_r, dtype=float))
    # stable argsort of -log_r == non-increasing radii with index tie-break
    order = np.argsort(-log_r, axis=1, kind="stable")
    log_sorted = np.take_along_axis(log_r, order, axis=1)
    s_sorted = np.take_along_axis(np.broadcast_to(s, log_r.shape), order, axis=1)
    csum_s = np.cumsum(s_sorted, axis=1)
    csum_sl = np.cumsum(s_sorted * log_sorted, axis=1)
    # leftmost piece i with csum_s[i] >= t
    piece = np.minimum((csum_s < t).sum(axis=1), log_r.shape[1] - 1)
    rows = np.arange(log_r.shape[0])
    prev_s = np.where(piece > 0, csum_s[rows, piece - 1], 0.0)
    prev_sl = np.where(piece > 0, csum_sl[rows, piece - 1], 0.0)
    return prev_sl + (t - prev_s) * log_sorted[rows, piece]


def singular_value(r: RadiusTuple | Sequence[float],
                   s: RegularityVector | Sequence[float],
                   t: float) -> float:
    """Evaluate the singular value function Phi_r^s(t).

    The computation stable-sorts the radii non-increasingly, locates the piece
    of t among the partial sums of the sorted exponents, and evaluates the
    product in log space with a single exponentiation at the end.

    Raises ValueError on dimension mismatch, radii <= 0, or t outside
    [0, sum(s)].
    """
    rv = _as_radius_array(r)
    sv = _as_regularity_array(s)
    if rv.shape != sv.shape:
        raise ValueError(f"dimension mismatch: {rv.size} radii vs {sv.size} exponents")
    return float(np.exp(log_phi_rows(np.log(rv)[None, :], sv, float(t))[0]))


@dataclass(frozen=True)
class SingularValueProfile:
    """Piecewise-linear description of t -> log Phi_r^s(t).

    ``breakpoints`` are (t, log Phi(t)) pairs at t = 0 and at each partial sum
    of the sorted exponents; ``sorted_permutation`` records the stable
    non-increasing ordering of the radii (original 0-based indices).  Slopes
    are non-increasing across pieces (log Phi is concave: the largest radii
    absorb exponent first, so decay accelerates with t).
    """

    breakpoints: tuple[tuple[float, float], ...]
    sorted_permutation: tuple[int, ...]

    @property
    def total(self) -> float:
        return self.breakpoints[-1][0]

    def log_value(self, t: float) -> float:
        ts = [b[0] for b in self.breakpoints]
        ys = [b[1] for b in self.breakpoints]
        if not (0.0 <= t <= ts[-1]):
            raise ValueError(f"t={t} outside [0, {ts[-1]}]")
        i = np.searchsorted(ts, t, side="left")
        if ts[i] == t:
            return ys[i]
        lo, hi = i - 1, i
        width = ts[hi] - ts[lo]
        slope = (ys[hi] - ys[lo]) / width
        return ys[lo] + (t - ts[lo]) * slope

    def value(self, t: float) -> float:
        return float(math.exp(self.log_value(t)))


def svf_profile(r: RadiusTuple | Sequence[float],
                s: RegularityVector | Sequence[float]) -> SingularValueProfile:
    """Full piecewise-linear profile of log Phi_r^s, breakpoints included."""
    rv = _as_radius_array(r)
    sv = _as_regularity_array(s)
    if rv.shape != sv.shape:
        raise ValueError(f"dimension mismatch: {rv.size} radii vs {sv.size} exponents")
    log_r = np.log(rv)
    order = np.argsort(-log_r, kind="stable")
    s_sorted = sv[order]
    l_sorted = log_r[order]
    # same accumulation as the evaluator, so breakpoint values coincide
    ts = [0.0] + [float(v) for v in np.cumsum(s_sorted)]
    ys = [0.0] + [float(v) for v in np.cumsum(s_sorted * l_sorted)]
    return SingularValueProfile(
        breakpoints=tuple(zip(ts, ys)),
        sorted_permutation=tuple(int(i) for i in order),
    )


# ---------------------------------------------------------------------------
# Radius schedules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerLawSchedule:
    """Radii r_{n,i} = kappa_i * n^{-alpha_i} with alpha_i > 0, kappa_i > 0.

    ``n_min`` is the smallest index from which every radius is <= 1; tuples
    below it cannot be materialised (the asymptotic power-bound hypothesis
    starts there), though log-radii remain well defined for partial sums.
    """

    alphas: tuple[float, ...]
    coefficients: tuple[float, ...] = ()
    n_min: int = field(init=False, default=1)

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        if not alphas:
            raise ValueError("schedule needs at least one decay exponent")
        if any(a <= 0 or not math.isfinite(a) for a in alphas):
            raise ValueError(f"decay exponents must be finite and > 0, got {alphas}")
        coeffs = self.coefficients or tuple(1.0 for _ in alphas)
        coeffs = tuple(float(k) for k in coeffs)
        if len(coeffs) != len(alphas):
            raise ValueError("coefficients and alphas must have equal length")
        if any(k <= 0 or not math.isfinite(k) for k in coeffs):
            raise ValueError(f"coefficients must be finite and > 0, got {coeffs}")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "coefficients", coeffs)
        n_min = 1
        for a, k in zip(alphas, coeffs):
            if k > 1.0:
                n_min = max(n_min, math.ceil(k ** (1.0 / a)))
        object.__setattr__(self, "n_min", n_min)

    @property
    def dim(self) -> int:
        return len(self.alphas)

    def log_radii(self, ns: np.ndarray) -> np.ndarray:
        """(N, d) array of log r_{n,i} for the given indices (any n >= 1)."""
        ns = np.asarray(ns, dtype=float)
        if np.any(ns < 1):
            raise ValueError("schedule indices start at 1")
        logn = np.log(ns)[:, None]
        return np.log(self.coefficients)[None, :] - logn * np.asarray(self.alphas)[None, :]

    def radius_tuple(self, n: int) -> RadiusTuple:
        if n < self.n_min:
            raise ValueError(f"index {n} below n_min={self.n_min}: some radius exceeds 1")
        return RadiusTuple(
            k * float(n) ** -a for a, k in zip(self.alphas, self.coefficients)
        )

    def descriptor(self) -> dict:
        return {
            "kind": "power-law",
            "alphas": list(self.alphas),
            "coefficients": list(self.coefficients),
        }


@dataclass(frozen=True)
class ExplicitSchedule:
    """A finite list of radius tuples plus a declared tail model.

    tail is one of:
      * None -- nothing is known past the listed tuples; no critical exponent
        can be claimed, only growth diagnostics on the finite part.
      * a PowerLawSchedule -- the sequence continues as that power law for
        n > len(tuples).
      * "constant" -- the last tuple repeats forever (terms never vanish, so
        the series diverges at every t).
    """

    tuples: tuple[RadiusTuple, ...]
    tail: PowerLawSchedule | str | None = None

    def __post_init__(self):
        tups = tuple(
            t if isinstance(t, RadiusTuple) else RadiusTuple(t) for t in self.tuples
        )
        if not tups:
            raise ValueError("explicit schedule needs at least one tuple")
        d = len(tups[0])
        if any(len(t) != d for t in tups):
            raise ValueError("all radius tuples must have the same dimension")
        if isinstance(self.tail, str) and self.tail != "constant":
            raise ValueError(f"unknown tail model {self.tail!r}")
        if isinstance(self.tail, PowerLawSchedule) and self.tail.dim != d:
            raise ValueError("tail model dimension mismatch")
        object.__setattr__(self, "tuples", tups)

    @property
    def dim(self) -> int:
        return len(self.tuples[0])

    def log_radii(self, ns: np.ndarray) -> np.ndarray:
        ns = np.asarray(ns, dtype=np.int64)
        if np.any(ns < 1):
            raise ValueError("schedule indices start at 1")
        k = len(self.tuples)
        out = np.empty((ns.size, self.dim), dtype=float)
        head = ns <= k
        if head.any():
            table = np.log([t.values for t in self.tuples])
            out[head] = table[ns[head] - 1]
        rest = ~head
        if rest.any():
            if self.tail is None:
                raise ValueError(
                    f"index beyond the {k} explicit tuples and no tail model declared"
                )
            if self.tail == "constant":
                out[rest] = np.log(self.tuples[-1].values)[None, :]
            else:
                out[rest] = self.tail.log_radii(ns[rest])
        return out

    def radius_tuple(self, n: int) -> RadiusTuple:
        if n < 1:
            raise ValueError("schedule indices start at 1")
        if n <= len(self.tuples):
            return self.tuples[n - 1]
        if self.tail is None:
            raise ValueError(
                f"index beyond the {len(self.tuples)} explicit tuples and no tail model"
            )
        if self.tail == "constant":
            return self.tuples[-1]
        return self.tail.radius_tuple(n)

    def descriptor(self) -> dict:
        if self.tail is None:
            tail: dict | str | None = None
        elif self.tail == "constant":
            tail = "constant"
        else:
            tail = self.tail.descriptor()
        return {
            "kind": "explicit",
            "tuples": [list(t.values) for t in self.tuples],
            "tail": tail,
        }


RadiusSchedule = PowerLawSchedule | ExplicitSchedule


# ---------------------------------------------------------------------------
# Exponent profile e(t) and the critical exponent
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExponentProfile:
    """The exponent e(t) with Phi_{r_n}^s(t) = n^{-e(t)} for unit-prefactor
    power laws.

    Piecewise linear on [0, sum(s)], e(0) = 0, slope alpha_(i) on the i-th
    piece with the alphas sorted non-decreasingly (largest radii first), so e
    is continuous, non-decreasing and convex.  Non-unit prefactors shift each
    term by a bounded factor; they are recorded but do not enter e.
    """

    breakpoints: tuple[tuple[float, float], ...]
    slopes: tuple[float, ...]
    prefactors: tuple[float, ...] = ()

    @property
    def total(self) -> float:
        return self.breakpoints[-1][0]

    def value(self, t: float) -> float:
        ts = [b[0] for b in self.breakpoints]
        es = [b[1] for b in self.breakpoints]
        if not (0.0 <= t <= ts[-1]):
            raise ValueError(f"t={t} outside [0, {ts[-1]}]")
        i = int(np.searchsorted(ts, t, side="left"))
        if ts[i] == t:
            return es[i]
        return es[i - 1] + (t - ts[i - 1]) * self.slopes[i - 1]

    def level_crossing(self, level: float) -> float | None:
        """Smallest t with e(t) = level by direct piecewise solve, or None if
        e stays below the level on [0, total].  Used as a test oracle against
        the bisection route."""
        if self.value(self.total) < level:
            return None
        ts = [b[0] for b in self.breakpoints]
        es = [b[1] for b in self.breakpoints]
        for i, slope in enumerate(self.slopes):
            if es[i + 1] >= level:
                if slope == 0.0:
                    return ts[i]
                return ts[i] + (level - es[i]) / slope
        return ts[-1]


def exponent_profile(sched: PowerLawSchedule,
                     s: RegularityVector | Sequence[float]) -> ExponentProfile:
    """Exponent profile of a power-law schedule.

    Exact when all prefactors are 1; otherwise it describes the asymptotic
    exponent, with the prefactors carried separately.
    """
    sv = _as_regularity_array(s)
    if sv.size != sched.dim:
        raise ValueError(f"dimension mismatch: {sched.dim} alphas vs {sv.size} exponents")
    alphas = np.asarray(sched.alphas, dtype=float)
    order = np.argsort(alphas, kind="stable")
    a_sorted = alphas[order]
    s_sorted = sv[order]
    k_sorted = np.asarray(sched.coefficients, dtype=float)[order]
    ts = [0.0]
    es = [0.0]
    for k in range(a_sorted.size):
        ts.append(math.fsum(s_sorted[: k + 1]))
        es.append(math.fsum(s_sorted[: k + 1] * a_sorted[: k + 1]))
    return ExponentProfile(
        breakpoints=tuple(zip(ts, es)),
        slopes=tuple(float(a) for a in a_sorted),
        prefactors=tuple(float(k) for k in k_sorted),
    )


def critical_exponent_series(sched: RadiusSchedule,
                             s: RegularityVector | Sequence[float],
                             tol: float = DEFAULT_BISECTION_TOL) -> float:
    """Critical exponent t* = inf{t : sum_n Phi_{r_n}^s(t) < infty}, capped at
    sum(s), via bisection on e(t) = 1.

    The series sum_n n^{-e(t)} converges iff e(t) > 1 and e is non-decreasing,
    so t* is the unique crossing when e(sum(s)) > 1 and sum(s) otherwise.
    Prefactors never change t*.  Explicit schedules need a declared tail: a
    power-law tail decides t*, a constant tail diverges at every t (returns
    sum(s)), and no tail is a domain error.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    sv = _as_regularity_array(s)
    total = math.fsum(sv)
    if isinstance(sched, ExplicitSchedule):
        if sched.tail is None:
            raise ValueError(
                "critical exponent undecidable from finitely many terms; "
                "declare a tail model or use estimate_sum_growth"
            )
        if sched.tail == "constant":
            return total
        sched = sched.tail
    prof = exponent_profile(sched, sv)
    if prof.value(total) <= 1.0:
        return total
    lo, hi = 0.0, total
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break  # float resolution reached before tol
        if prof.value(mid) > 1.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def closed_form_dimension(sched: PowerLawSchedule,
                          s: RegularityVector | Sequence[float]) -> float:
    """Predicted dimension of a power-law schedule in closed form.

    After relabelling so the decay exponents are non-decreasing (radii
    non-increasing in the coordinate), the value is

        min_i [ 1/alpha_i + sum_{j<i} s_j (1 - alpha_j / alpha_i) ]

    capped at sum(s).  Must agree with critical_exponent_series within the
    bisection tolerance on every valid schedule.
    """
    sv = _as_regularity_array(s)
    if sv.size != sched.dim:
        raise ValueError(f"dimension mismatch: {sched.dim} alphas vs {sv.size} exponents")
    alphas = np.asarray(sched.alphas, dtype=float)
    order = np.argsort(alphas, kind="stable")
    a = alphas[order]
    ss = sv[order]
    best = math.inf
    for i in range(a.size):
        val = 1.0 / a[i] + math.fsum(ss[j] * (1.0 - a[j] / a[i]) for j in range(i))
        best = min(best, float(val))
    return min(best, math.fsum(sv))


# ---------------------------------------------------------------------------
# Partial sums and growth diagnostics
# ---------------------------------------------------------------------------

_CHUNK = 1 << 18


def _phi_terms(sched: RadiusSchedule, s: np.ndarray, t: float,
               n0: int, n1: int) -> np.ndarray:
    """Phi_{r_n}^s(t) for n in [n0, n1], vectorised in chunks."""
    out = np.empty(n1 - n0 + 1, dtype=float)
    pos = 0
    for start in range(n0, n1 + 1, _CHUNK):
        stop = min(start + _CHUNK - 1, n1)
        ns = np.arange(start, stop + 1, dtype=np.int64)
        logs = sched.log_radii(ns)
        out[pos: pos + ns.size] = np.exp(log_phi_rows(logs, s, t))
        pos += ns.size
    return out


def partial_sum(sched: RadiusSchedule,
                s: RegularityVector | Sequence[float],
                t: float, N: int) -> float:
    """Truncated series S_N(t) = sum_{n<=N} Phi_{r_n}^s(t), exactly rounded.

    Summation uses math.fsum over the vectorised terms, so the result does not
    depend on any internal partitioning.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    sv = _as_regularity_array(s)
    return math.fsum(_phi_terms(sched, sv, float(t), 1, N))


def partial_sums(sched: RadiusSchedule,
                 s: RegularityVector | Sequence[float],
                 t: float, Ns: Sequence[int]) -> list[float]:
    """S_N(t) at several checkpoints, sharing one pass over the terms."""
    if not Ns:
        return []
    order = sorted(set(int(N) for N in Ns))
    if order[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    sv = _as_regularity_array(s)
    terms = _phi_terms(sched, sv, float(t), 1, order[-1])
    by_N = {N: math.fsum(terms[:N]) for N in order}
    return [by_N[int(N)] for N in Ns]


def estimate_sum_growth(sched: RadiusSchedule,
                        s: RegularityVector | Sequence[float],
                        t: float, blocks: Sequence[int]) -> float:
    """Least-squares slope of log S_N(t) against log N over the given blocks.

    For power-law schedules this estimates max(0, 1 - e(t)).  Blocks must be
    strictly increasing with at least 3 entries.  A strictly decreasing S_N
    violates term positivity and raises; equal consecutive values (a fully
    converged sum at float resolution) are tolerated and simply flatten the
    slope.
    """
    blocks = [int(b) for b in blocks]
    if len(blocks) < 3 or any(b2 <= b1 for b1, b2 in zip(blocks, blocks[1:])):
        raise ValueError("blocks must be strictly increasing with at least 3 entries")
    sums = partial_sums(sched, s, t, blocks)
    for s1, s2 in zip(sums, sums[1:]):
        if s2 < s1:
            raise RuntimeError("partial sums decreased; terms must be positive")
    x = np.log(np.asarray(blocks, dtype=float))
    y = np.log(np.asarray(sums, dtype=float))
    slope = np.polyfit(x, y, 1)[0]
    return float(slope)
