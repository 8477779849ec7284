"""Desk-scale regular metric-measure spaces and explicit covering machinery.

Three concrete space kinds are provided, each with an exactly computable
measure and certified regularity constants (c, s), meaning
c^-1 r^s <= mu(B(x, r)) <= c r^s for all points x and radii r in
[0, 2 * diameter]:

  * the unit interval [0, 1] with length measure: (2, 1)-regular;
  * the circle of circumference 1 with arc-length metric (capped at 1/2)
    and length measure: (2, 1)-regular, diameter 1/2;
  * the Cantor-type set C(lam) generated by x -> lam*x and
    x -> lam*x + (1-lam) for 0 < lam < 1/2, carrying the uniform Bernoulli
    digit measure: (c(lam), log 2 / log(1/lam))-regular with
    c(lam) = 2(1+lam)/(1-lam).

Open and closed balls have equal measure in all three kinds (spheres contain
at most two points and the measures are atomless), so ball_measure serves
both conventions; covers are built from closed balls.

Products carry the max metric, under which a rectangle with equal side radii
is exactly a ball (a cube).  Sparse subsets and covers are constructed
greedily over finite probe nets of resolution r/4; maximality and cover
soundness are certified against the same nets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "RegularSpace",
    "Interval",
    "Circle",
    "Cantor",
    "ProductSpace",
    "CantorPoint",
    "CoverReport",
    "sample",
    "ball_measure",
    "max_sparse_subset",
    "sparse_bounds",
    "cover_ball",
    "cover_rectangle",
    "verify_cover",
    "space_from_descriptor",
]

_MASS_DEPTH_CAP = 60  # unresolved boundary slivers weigh <= 2^-60 each


@dataclass(frozen=True)
class CantorPoint:
    """A point of C(lam): a finite digit string and its real embedding.

    The digit string determines the point (trailing zeros implied); ``value``
    is the embedding sum_k d_k (1 - lam) lam^k used for all distances.
    """

    digits: tuple[int, ...]
    value: float

    def __post_init__(self):
        if any(d not in (0, 1) for d in self.digits):
            raise ValueError("Cantor digits must be 0 or 1")


class RegularSpace:
    """Base for the concrete space kinds; subclasses fix (c, s, diameter)."""

    kind: str
    c: float
    s: float
    diameter: float

    def embed(self, point) -> float:
        """Real coordinate of a point (identity except for Cantor points)."""
        raise NotImplementedError

    def distance(self, x, y) -> float:
        raise NotImplementedError

    def distance_to_array(self, coords: np.ndarray, y) -> np.ndarray:
        """Distances from an array of embedded coordinates to one point."""
        raise NotImplementedError

    def validate_point(self, point) -> None:
        raise NotImplementedError

    def ball_measure(self, x, r: float) -> float:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator):
        raise NotImplementedError

    def net(self, x0, R: float, resolution: float):
        """Probe net of the closed ball B(x0, R): points of the space inside
        the ball such that every ball point is within ``resolution`` of the
        net (up to the boundary slack discussed in the construction notes).

        Returns (coords, points): sorted embedded coordinates and the aligned
        point objects.
        """
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}(c={self.c}, s={self.s})"


class Interval(RegularSpace):
    """The unit interval [0, 1] with Euclidean metric and length measure."""

    kind = "interval"
    c = 2.0
    s = 1.0
    diameter = 1.0

    def embed(self, point) -> float:
        return float(point)

    def distance(self, x, y) -> float:
        return abs(float(x) - float(y))

    def distance_to_array(self, coords: np.ndarray, y) -> np.ndarray:
        return np.abs(coords - float(y))

    def validate_point(self, point) -> None:
        x = float(point)
        if not (0.0 <= x <= 1.0):
            raise ValueError(f"interval point {x} outside [0, 1]")

    def ball_measure(self, x, r: float) -> float:
        self.validate_point(x)
        _check_radius(r, self.diameter)
        return max(0.0, min(float(x) + r, 1.0) - max(float(x) - r, 0.0))

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.random())

    def net(self, x0, R: float, resolution: float):
        lo = max(0.0, float(x0) - R)
        hi = min(1.0, float(x0) + R)
        coords = _linspace_net(lo, hi, resolution)
        return coords, [float(v) for v in coords]

    def descriptor(self) -> dict:
        return {"kind": "interval", "c": self.c, "s": self.s}


class Circle(RegularSpace):
    """Circle of circumference 1; arc-length metric capped at 1/2."""

    kind = "circle"
    c = 2.0
    s = 1.0
    diameter = 0.5

    def embed(self, point) -> float:
        return float(point) % 1.0

    def distance(self, x, y) -> float:
        delta = abs(float(x) - float(y)) % 1.0
        return min(delta, 1.0 - delta)

    def distance_to_array(self, coords: np.ndarray, y) -> np.ndarray:
        delta = np.abs(coords - float(y)) % 1.0
        return np.minimum(delta, 1.0 - delta)

    def validate_point(self, point) -> None:
        float(point)

    def ball_measure(self, x, r: float) -> float:
        _check_radius(r, self.diameter)
        if r == 0.0:
            return 0.0
        return min(2.0 * r, 1.0)

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.random())

    def net(self, x0, R: float, resolution: float):
        R = min(R, self.diameter)
        x = self.embed(x0)
        coords = _linspace_net(x - R, x + R, resolution)
        return coords, [float(v % 1.0) for v in coords]

    def descriptor(self) -> dict:
        return {"kind": "circle", "c": self.c, "s": self.s}


class Cantor(RegularSpace):
    """C(lam) with the uniform digit measure, 0 < lam < 1/2.

    Depth-k cylinders are intervals of length lam^k and mass 2^-k; the
    regularity exponent is s = log 2 / log(1/lam), for which lam^s = 1/2, and
    c(lam) = 2(1+lam)/(1-lam) is certified by the probe-grid tests.
    """

    kind = "cantor"
    diameter = 1.0

    def __init__(self, lam: float):
        lam = float(lam)
        if not (0.0 < lam < 0.5):
            raise ValueError(f"contraction ratio must be in (0, 1/2), got {lam}")
        self.lam = lam
        self.s = math.log(2.0) / math.log(1.0 / lam)
        self.c = 2.0 * (1.0 + lam) / (1.0 - lam)
        # digits beyond this depth cannot move the float embedding
        self.default_depth = min(64, math.ceil(53.0 * math.log(2.0) / math.log(1.0 / lam)) + 2)
        self._pow = np.power(lam, np.arange(_MASS_DEPTH_CAP + 2))

    def weights(self, depth: int) -> np.ndarray:
        """Embedding weights (1-lam) * lam^k for digit positions k < depth."""
        return (1.0 - self.lam) * np.power(self.lam, np.arange(depth))

    def embed_digits(self, digits: Sequence[int]) -> float:
        digits = np.asarray(digits, dtype=float)
        return float(np.dot(digits, self.weights(digits.size)))

    def point(self, digits: Sequence[int]) -> CantorPoint:
        digs = tuple(int(d) for d in digits)
        return CantorPoint(digs, self.embed_digits(digs))

    def embed(self, point) -> float:
        if isinstance(point, CantorPoint):
            return point.value
        return float(point)

    def distance(self, x, y) -> float:
        return abs(self.embed(x) - self.embed(y))

    def distance_to_array(self, coords: np.ndarray, y) -> np.ndarray:
        return np.abs(coords - self.embed(y))

    def validate_point(self, point) -> None:
        if not isinstance(point, CantorPoint):
            raise ValueError("Cantor space points must be CantorPoint instances")

    def ball_measure(self, x, r: float) -> float:
        _check_radius(r, self.diameter)
        a = self.embed(x) - r
        b = self.embed(x) + r
        if r == 0.0:
            return 0.0
        return self._interval_mass(0.0, 0, a, b)

    def _interval_mass(self, lo: float, depth: int, a: float, b: float) -> float:
        """Exact mass of C(lam) inside [a, b], recursing through cylinders.

        Boundary cylinders unresolved at the depth cap contribute half their
        mass; the error is below 2^-60 per endpoint, under one ulp here.
        """
        hi = lo + self._pow[depth]
        if b < lo or hi < a:
            return 0.0
        if a <= lo and hi <= b:
            return 2.0 ** -depth
        if depth >= _MASS_DEPTH_CAP:
            return 2.0 ** -(depth + 1)
        right_lo = lo + self._pow[depth] - self._pow[depth + 1]
        return (self._interval_mass(lo, depth + 1, a, b)
                + self._interval_mass(right_lo, depth + 1, a, b))

    def sample(self, rng: np.random.Generator, depth: int | None = None) -> CantorPoint:
        depth = self.default_depth if depth is None else depth
        digits = rng.integers(0, 2, size=depth)
        return self.point(digits)

    def cylinders_in(self, a: float, b: float, depth: int) -> list[tuple[int, ...]]:
        """Digit prefixes of all depth-``depth`` cylinders meeting [a, b]."""
        out: list[tuple[int, ...]] = []

        def recurse(lo: float, d: int, prefix: tuple[int, ...]):
            hi = lo + self._pow[d]
            if b < lo or hi < a:
                return
            if d == depth:
                out.append(prefix)
                return
            recurse(lo, d + 1, prefix + (0,))
            recurse(lo + self._pow[d] - self._pow[d + 1], d + 1, prefix + (1,))

        recurse(0.0, 0, ())
        return out

    def net(self, x0, R: float, resolution: float):
        depth = 0
        while self._pow[depth] > resolution and depth < _MASS_DEPTH_CAP:
            depth += 1
        x = self.embed(x0)
        prefixes = self.cylinders_in(x - R, x + R, depth)
        pts = [self.point(p) for p in prefixes]
        pts = [p for p in pts if abs(p.value - x) <= R]
        pts.sort(key=lambda p: p.value)
        coords = np.array([p.value for p in pts], dtype=float)
        return coords, pts

    def descriptor(self) -> dict:
        return {"kind": "cantor", "lam": self.lam, "c": self.c, "s": self.s}

    def __repr__(self) -> str:
        return f"Cantor(lam={self.lam}, c={self.c:.6g}, s={self.s:.6g})"


@dataclass(frozen=True)
class ProductSpace:
    """Product of regular spaces with the max metric.

    The product measure is (C, S)-regular with S = sum_i s_i and
    C = prod_i c_i * 2^S; the extra 2^S absorbs the mismatch of factor
    diameters (all kinds here have diameter 1/2 or 1).
    """

    factors: tuple[RegularSpace, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("product space needs at least one factor")

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def s_vector(self) -> tuple[float, ...]:
        return tuple(f.s for f in self.factors)

    @property
    def s_total(self) -> float:
        return math.fsum(f.s for f in self.factors)

    @property
    def c_vector(self) -> tuple[float, ...]:
        return tuple(f.c for f in self.factors)

    @property
    def c_product(self) -> float:
        return math.prod(f.c for f in self.factors) * 2.0 ** self.s_total

    @property
    def diameter(self) -> float:
        return max(f.diameter for f in self.factors)

    def distance(self, x: Sequence, y: Sequence) -> float:
        return max(f.distance(a, b) for f, a, b in zip(self.factors, x, y))

    def validate_point(self, point: Sequence) -> None:
        if len(point) != self.dim:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.dim}")
        for f, coord in zip(self.factors, point):
            f.validate_point(coord)

    def center(self) -> tuple:
        """A canonical anchor point: the midpoint coordinate of each factor
        (all-zero digits followed by a 1... is not needed; for Cantor the
        left endpoint 0 is used)."""
        out = []
        for f in self.factors:
            if isinstance(f, Cantor):
                out.append(f.point(()))
            else:
                out.append(0.5)
        return tuple(out)

    def sample(self, rng: np.random.Generator) -> tuple:
        return tuple(f.sample(rng) for f in self.factors)

    def descriptor(self) -> dict:
        return {"kind": "product", "factors": [f.descriptor() for f in self.factors]}


def _check_radius(r: float, diameter: float) -> None:
    if r < 0.0 or math.isnan(r):
        raise ValueError(f"radius must be >= 0, got {r}")
    if r > 2.0 * diameter:
        raise ValueError(f"radius {r} exceeds 2 * diameter = {2.0 * diameter}")


def _linspace_net(lo: float, hi: float, resolution: float) -> np.ndarray:
    if resolution <= 0.0:
        raise ValueError("net resolution must be positive")
    if hi < lo:
        raise ValueError("empty net range")
    if hi == lo:
        return np.array([lo], dtype=float)
    m = max(1, math.ceil((hi - lo) / resolution))
    return np.linspace(lo, hi, m + 1)


def sample(space: RegularSpace | ProductSpace, rng: np.random.Generator):
    """Draw one point distributed as the space's natural measure."""
    return space.sample(rng)


def ball_measure(space: RegularSpace, x, r: float) -> float:
    """Exact measure of the ball B(x, r); open and closed agree here."""
    return space.ball_measure(x, r)


def sparse_bounds(space: RegularSpace, R: float, r: float) -> tuple[float, float]:
    """Cardinality bounds [c^-2 (R/r)^s, 4^s c^2 (R/r)^s] for maximal
    r-sparse subsets of a closed ball of radius R."""
    ratio = (R / r) ** space.s
    return ratio / space.c**2, 4.0**space.s * space.c**2 * ratio


def _greedy_sorted(space: RegularSpace, coords: np.ndarray, points: list,
                   r: float) -> list:
    """First-fit greedy over a sorted net; exact float distance checks.

    Consecutive accepted coordinates differ by >= r in the same arithmetic
    the verification uses, so all pairs do.  The searchsorted jump aims a few
    ulps low and advances linearly, so borderline points are neither skipped
    nor accepted by rounding of prev + r.  On the circle, candidates are
    additionally checked (with the space's own circular distance) against the
    first and latest accepted points; the wrap gap to the first point is what
    shrinks along the arc, so those two checks imply all pairwise ones.
    """
    if coords.size == 0:
        return []
    circle = isinstance(space, Circle)
    accepted = [0]
    prev = coords[0]
    j = 1
    n = coords.size
    while j < n:
        target = prev + r
        jump = int(np.searchsorted(
            coords, target - 8.0 * np.spacing(max(1.0, abs(target))), side="left"
        ))
        j = max(j, jump)  # never move backwards past a rejected candidate
        while j < n and coords[j] - prev < r:
            j += 1
        if j >= n:
            break
        if circle and (space.distance(points[j], points[accepted[0]]) < r
                       or space.distance(points[j], points[accepted[-1]]) < r):
            j += 1
            continue
        accepted.append(j)
        prev = coords[j]
        j += 1
    return [points[i] for i in accepted]


def _greedy_shuffled(space: RegularSpace, coords: np.ndarray, points: list,
                     r: float, rng: np.random.Generator) -> list:
    """Greedy in random candidate order with full pairwise distance checks."""
    order = rng.permutation(coords.size)
    accepted_coords: list[float] = []
    accepted: list = []
    for idx in order:
        if not accepted:
            ok = True
        else:
            d = space.distance_to_array(np.asarray(accepted_coords), points[idx])
            ok = bool(np.all(d >= r))
        if ok:
            accepted.append(points[idx])
            accepted_coords.append(coords[idx])
    return accepted


def _sparse_greedy(space: RegularSpace, x0, R: float, r: float,
                   rng: np.random.Generator | None) -> list:
    coords, points = space.net(x0, R, r / 4.0)
    if rng is None:
        return _greedy_sorted(space, coords, points, r)
    return _greedy_shuffled(space, coords, points, r, rng)


def max_sparse_subset(space: RegularSpace, x0, R: float, r: float,
                      rng: np.random.Generator | None = None) -> list:
    """Maximal r-sparse subset of the closed ball B(x0, R).

    Pairwise distances are >= r exactly; maximality is certified against the
    canonical probe net at resolution r/4 (no net point of the ball can be
    added).  Any maximal set satisfies the cardinality bounds of
    sparse_bounds.  With ``rng`` the candidate order is shuffled, giving a
    different (equally valid) maximal set; without it the construction is the
    deterministic first-fit over the sorted net.
    """
    if r <= 0.0 or R <= 0.0:
        raise ValueError("radii must be positive")
    if r > 2.0 * R:
        raise ValueError(f"need r <= 2R, got r={r}, R={R}")
    if R > space.diameter:
        raise ValueError(f"need R <= diameter, got R={R} > {space.diameter}")
    space.validate_point(x0)
    return _sparse_greedy(space, x0, R, r, rng)


@dataclass(frozen=True)
class CoverReport:
    """A cover of a ball or rectangle by closed balls/cubes of one radius.

    ``factor_centers`` holds the accepted centers per factor; the elements of
    the cover are the Cartesian products (cubes of radius ``radius``), and
    ``count`` is their number, guaranteed <= ``bound``.
    """

    target: str
    center: object
    target_radii: tuple[float, ...]
    radius: float
    factor_centers: tuple[tuple, ...]
    count: int
    bound: float

    def iter_elements(self):
        """Yield (center, radius) pairs; centers are points for single-factor
        covers and coordinate tuples for rectangle covers."""
        single = len(self.factor_centers) == 1
        for combo in itertools.product(*self.factor_centers):
            yield (combo[0] if single else combo), self.radius

    @property
    def elements(self) -> list:
        if self.count > 200_000:
            raise ValueError(f"refusing to materialise {self.count} elements; "
                             "use iter_elements()")
        return list(self.iter_elements())


def cover_ball(space: RegularSpace, x, R: float, r: float) -> CoverReport:
    """Cover the closed ball B(x, R) by closed balls of radius r.

    Centers form a maximal r-sparse subset of the ball (clamped to the space
    if R exceeds the diameter), so the count is at most 4^s c^2 (R/r)^s.
    """
    if r <= 0.0 or R <= 0.0:
        raise ValueError("radii must be positive")
    if r > 2.0 * R:
        raise ValueError(f"need r <= 2R, got r={r}, R={R}")
    space.validate_point(x)
    centers = _sparse_greedy(space, x, min(R, space.diameter), r, rng=None)
    bound = 4.0**space.s * space.c**2 * (R / r) ** space.s
    return CoverReport(
        target=f"{space.kind} ball R={R!r}",
        center=x,
        target_radii=(R,),
        radius=r,
        factor_centers=(tuple(centers),),
        count=len(centers),
        bound=bound,
    )


def cover_rectangle(space: ProductSpace, center: Sequence, radii, r: float) -> CoverReport:
    """Cover a rectangle (product of closed balls) by cubes of radius r.

    Factors with side radius exceeding r are covered by radius-r balls; the
    others keep their center coordinate.  The count is at most
    M = prod_{i in I} 4^{s_i} c_i^2 (r_i / r)^{s_i} over I = {i : r_i > r},
    with M = 1 when I is empty.
    """
    if r <= 0.0:
        raise ValueError("cube radius must be positive")
    radii_vals = tuple(float(v) for v in (radii.values if hasattr(radii, "values") else radii))
    if len(radii_vals) != space.dim or len(center) != space.dim:
        raise ValueError("center/radii dimension mismatch with the product space")
    space.validate_point(center)
    factor_centers = []
    bound = 1.0
    for factor, x_i, r_i in zip(space.factors, center, radii_vals):
        if r_i <= 0.0:
            raise ValueError("rectangle side radii must be positive")
        if r_i > r:
            centers = _sparse_greedy(factor, x_i, min(r_i, factor.diameter), r, rng=None)
            bound *= 4.0**factor.s * factor.c**2 * (r_i / r) ** factor.s
        else:
            centers = [x_i]
        factor_centers.append(tuple(centers))
    count = math.prod(len(fc) for fc in factor_centers)
    return CoverReport(
        target=f"rectangle radii={radii_vals!r}",
        center=tuple(center),
        target_radii=radii_vals,
        radius=r,
        factor_centers=tuple(factor_centers),
        count=count,
        bound=bound,
    )


def verify_cover(space: RegularSpace | ProductSpace, report: CoverReport,
                 resolution: float | None = None) -> bool:
    """Probe-net soundness of a cover: every net point of the target lies in
    a cover element, and count <= bound.

    A product point lies in some cube iff each coordinate lies in some factor
    ball, so rectangle verification reduces to per-factor containment.  The
    net resolution defaults to radius/4.
    """
    if report.count > report.bound * (1.0 + 1e-12):
        return False
    res = report.radius / 4.0 if resolution is None else resolution
    # a few ulps of slack: boundary-exact containments (e.g. a kept center
    # with side radius equal to the cube radius) must not fail by rounding
    slack = 16.0 * np.spacing(max(1.0, report.radius))
    factors = space.factors if isinstance(space, ProductSpace) else (space,)
    centers_per_factor = report.factor_centers
    center = report.center if isinstance(space, ProductSpace) else (report.center,)
    for factor, x_i, R_i, centers in zip(factors, center, report.target_radii,
                                         centers_per_factor):
        coords, points = factor.net(x_i, min(R_i, factor.diameter), res)
        if coords.size == 0:
            continue
        covered = np.zeros(coords.size, dtype=bool)
        for c in centers:
            covered |= factor.distance_to_array(coords, c) <= report.radius + slack
            if covered.all():
                break
        if not covered.all():
            return False
    return True


def space_from_descriptor(desc: dict) -> RegularSpace | ProductSpace:
    """Inverse of the descriptor() methods, for manifests and configs."""
    kind = desc.get("kind")
    if kind == "interval":
        return Interval()
    if kind == "circle":
        return Circle()
    if kind == "cantor":
        return Cantor(desc["lam"])
    if kind == "product":
        return ProductSpace(tuple(space_from_descriptor(f) for f in desc["factors"]))
    raise ValueError(f"unknown space kind {kind!r}")
