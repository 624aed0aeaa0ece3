"""Two-variable logarithmic functions with indexed branches.

The objects here are finite sums of monomials

    a * z1^r * z2^s * (z1 - z2)^t * (log z1)^l * (log z2)^m * (log(z1 - z2))^n

with complex coefficients and exponents and non-negative integer log powers.
Such a sum is multivalued; a branch triple (p1, p2, p12) makes it single
valued by substituting the indexed logarithms lp(p1, z1), lp(p2, z2),
lp(p12, z1 - z2) for the three logs (powers are exp of exponent times log).

Three expansion regions, each a modulus ordering plus an argument window,
admit convergent series whose sum is the evaluation at a *designated*
branch triple built from the input triple:

    product:  |z1| > |z2| > 0,  arg(z1-z2) - arg z1 in (-pi/2, pi/2),
              designated triple (p1, p2, p1);
    reversed: |z2| > |z1| > 0,  arg(z1-z2) - arg z2 in (-3pi/2, -pi/2),
              designated triple (p1, p2, p2);
    iterate:  |z2| > |z1-z2| > 0,  arg z1 - arg z2 in (-pi/2, pi/2),
              designated triple (p2, p2, p12).

The windows are exactly the conditions under which the auxiliary ratio
(z2/z1, z1/z2 or (z1-z2)/z2) has its principal log consistent with the
indexed logs above, so each group series converges to the right branch.

continue_along transports a branch triple along a piecewise path of
segments and arcs by counting signed crossings of the positive real axis
for each of z1, z2, z1 - z2, and certifies the result against an internal
unwrapped-phase evaluation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, NamedTuple, Union

import numpy as np

from .branchcalc import TWO_PI, lp, principal_arg

_COEFF_DROP = 1e-15

Region = Literal["product", "reversed", "iterate"]

REGIONS: tuple[str, ...] = ("product", "reversed", "iterate")


class BranchTriple(NamedTuple):
    """Branch indices for z1, z2 and z1 - z2 (arbitrary precision ints)."""

    p1: int
    p2: int
    p12: int


@dataclass(frozen=True)
class LogMonomial:
    """One monomial a * z1^r z2^s (z1-z2)^t (log z1)^l (log z2)^m (log(z1-z2))^n."""

    coeff: complex
    r: complex = 0.0
    s: complex = 0.0
    t: complex = 0.0
    l: int = 0
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.l < 0 or self.m < 0 or self.n < 0:
            raise ValueError("log powers must be non-negative integers")

    def key(self) -> tuple:
        """Exponent signature used for merging and ordering."""
        r, s, t = complex(self.r), complex(self.s), complex(self.t)
        return (
            r.real + 0.0, r.imag + 0.0,
            s.real + 0.0, s.imag + 0.0,
            t.real + 0.0, t.imag + 0.0,
            self.l, self.m, self.n,
        )


@dataclass(frozen=True)
class LogFunction:
    """Finite sum of LogMonomial terms (not automatically normalized)."""

    terms: tuple[LogMonomial, ...]

    def __init__(self, terms: Iterable[LogMonomial] = ()):
        object.__setattr__(self, "terms", tuple(terms))

    def __add__(self, other: "LogFunction") -> "LogFunction":
        return LogFunction(self.terms + other.terms)

    def __rmul__(self, scalar: complex) -> "LogFunction":
        return LogFunction(
            LogMonomial(scalar * u.coeff, u.r, u.s, u.t, u.l, u.m, u.n)
            for u in self.terms
        )

    def __mul__(self, other):
        if isinstance(other, LogFunction):
            out = []
            for u in self.terms:
                for v in other.terms:
                    out.append(LogMonomial(
                        u.coeff * v.coeff,
                        u.r + v.r, u.s + v.s, u.t + v.t,
                        u.l + v.l, u.m + v.m, u.n + v.n,
                    ))
            return LogFunction(out)
        return self.__rmul__(other)


@dataclass(frozen=True)
class OneVarLogSeries:
    """Finite sum of a * x^s (log x)^m terms in a single variable."""

    terms: tuple[tuple[complex, complex, int], ...]

    def __init__(self, terms: Iterable[tuple[complex, complex, int]] = ()):
        object.__setattr__(self, "terms", tuple(
            (complex(a), complex(s), int(m)) for a, s, m in terms
        ))


def normalize(f: LogFunction) -> LogFunction:
    """Canonical form: merge equal-exponent terms, drop tiny coefficients.

    Terms with identical (r, s, t, l, m, n) are summed; coefficients with
    modulus below 1e-15 are dropped; the survivors are sorted
    lexicographically by exponent signature.
    """
    acc: dict[tuple, complex] = {}
    sig: dict[tuple, LogMonomial] = {}
    for u in f.terms:
        k = u.key()
        acc[k] = acc.get(k, 0.0) + complex(u.coeff)
        sig.setdefault(k, u)
    out = []
    for k in sorted(acc):
        a = acc[k]
        if abs(a) < _COEFF_DROP:
            continue
        u = sig[k]
        out.append(LogMonomial(a, u.r, u.s, u.t, u.l, u.m, u.n))
    return LogFunction(out)


def _keys_close(u: LogMonomial, v: LogMonomial, tol: float) -> bool:
    if (u.l, u.m, u.n) != (v.l, v.m, v.n):
        return False
    for a, b in ((u.r, v.r), (u.s, v.s), (u.t, v.t)):
        if abs(complex(a) - complex(b)) > tol * (1.0 + abs(complex(a))):
            return False
    return True


def term_distance(f: LogFunction, g: LogFunction, key_tol: float = 1e-12) -> float:
    """Max coefficient gap between the canonical forms of f and g.

    Exponents are matched up to a relative key_tol, so algebraically equal
    functions whose exponents drifted by rounding still compare as close.
    """
    fs = list(normalize(f).terms)
    gs = list(normalize(g).terms)
    worst = 0.0
    for u in fs:
        match = None
        for j, v in enumerate(gs):
            if _keys_close(u, v, key_tol):
                match = j
                break
        if match is None:
            worst = max(worst, abs(complex(u.coeff)))
        else:
            worst = max(worst, abs(complex(u.coeff) - complex(gs[match].coeff)))
            del gs[match]
    for v in gs:
        worst = max(worst, abs(complex(v.coeff)))
    return worst


def _is_int(c: complex) -> bool:
    c = complex(c)
    return c.imag == 0.0 and c.real == int(c.real)


def _power(z: complex, c: complex, logz: complex) -> complex:
    """z^c on the branch determined by logz = some value of log z.

    Exact integer exponents use repeated multiplication (single valued, so
    the branch is irrelevant), avoiding exp/log rounding on the axis.
    """
    c = complex(c)
    if c == 0:
        return 1.0 + 0.0j
    if _is_int(c):
        return complex(z) ** int(c.real)
    return cmath.exp(c * logz)


def eval_branch2(f: LogFunction, bt: BranchTriple, z1: complex, z2: complex) -> complex:
    """Evaluate f at (z1, z2) on the branch triple bt."""
    p1, p2, p12 = bt
    z1 = complex(z1)
    z2 = complex(z2)
    w = z1 - z2
    if z1 == 0 or z2 == 0 or w == 0:
        raise ValueError("z1, z2 and z1 - z2 must all be nonzero")
    L1 = lp(p1, z1)
    L2 = lp(p2, z2)
    L12 = lp(p12, w)
    total = 0.0 + 0.0j
    for u in f.terms:
        v = complex(u.coeff)
        v *= _power(z1, u.r, L1)
        v *= _power(z2, u.s, L2)
        v *= _power(w, u.t, L12)
        if u.l:
            v *= L1 ** u.l
        if u.m:
            v *= L2 ** u.m
        if u.n:
            v *= L12 ** u.n
        total += v
    return total


def eval_branch1(series: OneVarLogSeries, p: int, z: complex) -> complex:
    """Evaluate a one-variable log series at z on branch p."""
    z = complex(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    L = lp(p, z)
    total = 0.0 + 0.0j
    for a, s, m in series.terms:
        v = a * _power(z, s, L)
        if m:
            v *= L ** m
        total += v
    return total


def differentiate(f: LogFunction, var: str) -> LogFunction:
    """Partial derivative with respect to "z1" or "z2", in canonical form.

    Uses d log z1 / d z1 = 1/z1 and d log(z1-z2)/d z1 = 1/(z1-z2)
    (= -1/(z1-z2) for z2), which hold for every branch simultaneously.
    """
    if var not in ("z1", "z2"):
        raise ValueError("var must be 'z1' or 'z2'")
    out = []
    for u in f.terms:
        a, r, s, t, l, m, n = u.coeff, u.r, u.s, u.t, u.l, u.m, u.n
        if var == "z1":
            if r != 0:
                out.append(LogMonomial(a * r, r - 1, s, t, l, m, n))
            if t != 0:
                out.append(LogMonomial(a * t, r, s, t - 1, l, m, n))
            if l:
                out.append(LogMonomial(a * l, r - 1, s, t, l - 1, m, n))
            if n:
                out.append(LogMonomial(a * n, r, s, t - 1, l, m, n - 1))
        else:
            if s != 0:
                out.append(LogMonomial(a * s, r, s - 1, t, l, m, n))
            if t != 0:
                out.append(LogMonomial(-a * t, r, s, t - 1, l, m, n))
            if m:
                out.append(LogMonomial(a * m, r, s - 1, t, l, m - 1, n))
            if n:
                out.append(LogMonomial(-a * n, r, s, t - 1, l, m, n - 1))
    return normalize(LogFunction(out))


# ---------------------------------------------------------------------------
# Region expansions
# ---------------------------------------------------------------------------


def designated_triple(region: str, bt: BranchTriple) -> BranchTriple:
    """Branch triple to which the region series converges."""
    p1, p2, p12 = bt
    if region == "product":
        return BranchTriple(p1, p2, p1)
    if region == "reversed":
        return BranchTriple(p1, p2, p2)
    if region == "iterate":
        return BranchTriple(p2, p2, p12)
    raise ValueError(f"unknown region {region!r}")


def _wrap_pi(x: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    y = math.fmod(x, TWO_PI)
    if y > math.pi:
        y -= TWO_PI
    elif y <= -math.pi:
        y += TWO_PI
    return y


def in_region(region: str, z1: complex, z2: complex, margin: float = 0.0) -> bool:
    """Membership in a region's modulus ordering and argument window.

    margin shrinks the window and strictifies the modulus inequalities,
    which sampling code uses to stay away from boundaries.
    """
    z1 = complex(z1)
    z2 = complex(z2)
    w = z1 - z2
    if z1 == 0 or z2 == 0 or w == 0:
        return False
    half_pi = math.pi / 2.0
    if region == "product":
        if not abs(z1) * (1.0 - margin) > abs(z2):
            return False
        d = principal_arg(w) - principal_arg(z1)
        return -half_pi + margin < d < half_pi - margin
    if region == "reversed":
        if not abs(z2) * (1.0 - margin) > abs(z1):
            return False
        d = principal_arg(w) - principal_arg(z2)
        return -3.0 * half_pi + margin < d < -half_pi - margin
    if region == "iterate":
        if not abs(z2) * (1.0 - margin) > abs(w):
            return False
        d = principal_arg(z1) - principal_arg(z2)
        return -half_pi + margin < d < half_pi - margin
    raise ValueError(f"unknown region {region!r}")


def _binom_coeffs(c: complex, order: int, sign: float) -> list[complex]:
    """Coefficients of (1 + sign*x)^c up to x^order."""
    out = [1.0 + 0.0j]
    cur = 1.0 + 0.0j
    for k in range(1, order + 1):
        cur = cur * (c - (k - 1)) / k * sign
        out.append(cur)
    return out


def _log1_series(order: int, sign: float) -> list[complex]:
    """Coefficients of log(1 + sign*x) up to x^order (zero constant term)."""
    out = [0.0 + 0.0j]
    for k in range(1, order + 1):
        out.append(complex((sign ** k) * (-1.0) ** (k + 1) / k))
    return out


def _poly_mul(a: list[complex], b: list[complex], order: int) -> list[complex]:
    out = [0.0 + 0.0j] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > order:
            continue
        top = min(order - i, len(b) - 1)
        for j in range(top + 1):
            bj = b[j]
            if bj != 0:
                out[i + j] += ai * bj
    return out


def _poly_powers(base: list[complex], max_pow: int, order: int) -> list[list[complex]]:
    """[base^0, base^1, ..., base^max_pow] truncated at order."""
    powers = [[1.0 + 0.0j] + [0.0 + 0.0j] * order]
    for _ in range(max_pow):
        powers.append(_poly_mul(powers[-1], base, order))
    return powers


def _key_c(c: complex) -> complex:
    c = complex(c)
    return complex(c.real + 0.0, c.imag + 0.0)


@dataclass
class RegionExpansion:
    """Truncated region series, grouped by inner-variable total exponent.

    groups maps the total exponent of the region's inner quantity (z2 for
    product, z1 for reversed, z1 - z2 for iterate) to the partial sum for
    that exponent, itself a LogFunction.  Evaluation sums the groups in
    order of increasing real part of the key, on the designated triple.
    """

    region: str
    bt: BranchTriple
    designated: BranchTriple
    order: int
    groups: dict[complex, LogFunction] = field(default_factory=dict)

    def group_keys(self) -> list[complex]:
        return sorted(self.groups, key=lambda c: (c.real, c.imag))

    def eval(self, z1: complex, z2: complex) -> complex:
        total = 0.0 + 0.0j
        for k in self.group_keys():
            total += eval_branch2(self.groups[k], self.designated, z1, z2)
        return total


def expand_region(f: LogFunction, region: str, bt: BranchTriple, order: int) -> RegionExpansion:
    """Series expansion of f in the given region, truncated at `order`.

    Within the region the partial sums converge (as order grows) to
    eval_branch2(f, designated_triple(region, bt), z1, z2).  Group keys
    follow the inner variable: z2-exponent (product), z1-exponent
    (reversed), (z1-z2)-exponent (iterate).
    """
    if region not in REGIONS:
        raise ValueError(f"unknown region {region!r}")
    if order < 0:
        raise ValueError("order must be non-negative")
    bt = BranchTriple(*bt)
    groups: dict[complex, list[LogMonomial]] = {}

    def put(key: complex, mono: LogMonomial):
        groups.setdefault(_key_c(key), []).append(mono)

    minus_pi_i = complex(0.0, -math.pi)

    for u in f.terms:
        a, r, s, t, l, m, n = (complex(u.coeff), complex(u.r), complex(u.s),
                               complex(u.t), u.l, u.m, u.n)
        if region == "product":
            # (z1-z2)^t = z1^t (1-w)^t and log(z1-z2) = log z1 + log(1-w),
            # w = z2/z1; within the window the principal log(1-w) is the
            # consistent choice, so the branch constant vanishes.
            binom = _binom_coeffs(t, order, -1.0)
            logs = _poly_powers(_log1_series(order, -1.0), n, order)
            for j in range(n + 1):
                cnj = math.comb(n, j)
                ser = _poly_mul(binom, logs[j], order)
                for k, c in enumerate(ser):
                    if c == 0:
                        continue
                    put(s + k, LogMonomial(a * cnj * c, r + t - k, s + k, 0.0,
                                           l + n - j, m, 0))
        elif region == "reversed":
            # (z1-z2)^t = exp(t (lp(p2,z2) - pi*i)) (1-u)^t, u = z1/z2; the
            # window is exactly where negation lands past the cut, so the
            # constant -pi*i (not +pi*i) matches the designated branch.
            binom = _binom_coeffs(t, order, -1.0)
            logs = _poly_powers(_log1_series(order, -1.0), n, order)
            phase = cmath.exp(t * minus_pi_i)
            for j in range(n + 1):
                for i in range(n - j + 1):
                    const = (math.comb(n, j) * math.comb(n - j, i)
                             * minus_pi_i ** (n - j - i)) * phase
                    ser = _poly_mul(binom, logs[j], order)
                    for k, c in enumerate(ser):
                        if c == 0:
                            continue
                        put(r + k, LogMonomial(a * const * c, r + k, s + t - k,
                                               0.0, l, m + i, 0))
        else:  # iterate
            # z1^r = z2^r (1+v)^r and log z1 = log z2 + log(1+v),
            # v = (z1-z2)/z2.
            binom = _binom_coeffs(r, order, 1.0)
            logs = _poly_powers(_log1_series(order, 1.0), l, order)
            for j in range(l + 1):
                clj = math.comb(l, j)
                ser = _poly_mul(binom, logs[j], order)
                for k, c in enumerate(ser):
                    if c == 0:
                        continue
                    put(t + k, LogMonomial(a * clj * c, 0.0, r + s - k, t + k,
                                           0, m + l - j, n))

    packed = {k: normalize(LogFunction(v)) for k, v in groups.items()}
    packed = {k: g for k, g in packed.items() if g.terms}
    return RegionExpansion(region=region, bt=bt,
                           designated=designated_triple(region, bt),
                           order=order, groups=packed)


# ---------------------------------------------------------------------------
# Paths and continuation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """Straight move of one variable to the point `to`."""

    var: str
    to: complex


@dataclass(frozen=True)
class Arc:
    """Circular move of one variable about a center.

    about selects the center: "origin" (0), "other" (the current position
    of the non-moving variable), or "point" (the explicit `center` value).
    turns is the signed number of full revolutions; positive is
    counterclockwise.  The radius is the distance from the variable's
    current position to the resolved center.
    """

    var: str
    turns: float
    about: str = "origin"
    center: complex = 0.0


Move = Union[Segment, Arc]


@dataclass(frozen=True)
class PathSpec:
    """Piecewise path of both variables: a start point and a move list.

    Moves execute in order; during each move the other variable stays
    fixed.  The path is valid if neither variable ever reaches 0 and the
    two variables never collide (so z1 - z2 stays nonzero).
    """

    z1: complex
    z2: complex
    moves: tuple[Move, ...]

    def __init__(self, z1: complex, z2: complex, moves: Iterable[Move] = ()):
        object.__setattr__(self, "z1", complex(z1))
        object.__setattr__(self, "z2", complex(z2))
        object.__setattr__(self, "moves", tuple(moves))


def _resolve_center(move: Arc, other: complex) -> complex:
    if move.about == "origin":
        return 0.0 + 0.0j
    if move.about == "other":
        return other
    if move.about == "point":
        return complex(move.center)
    raise ValueError(f"unknown arc center kind {move.about!r}")


def _seg_point_dist(a: complex, b: complex, c: complex) -> float:
    """Distance from point c to segment [a, b]."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(c - a)
    u = ((c - a) * ab.conjugate()).real / denom
    u = min(1.0, max(0.0, u))
    return abs(c - (a + u * ab))


def _arc_point_dist(center: complex, radius: float, theta0: float,
                    sweep: float, c: complex) -> float:
    """Distance from point c to the arc center+radius*e^{i theta}, theta
    from theta0 through theta0+sweep."""
    d = c - center
    if abs(d) == 0.0:
        return radius
    if abs(sweep) >= TWO_PI:
        return abs(abs(d) - radius)
    phi = cmath.phase(d)
    rel = math.fmod((phi - theta0) * math.copysign(1.0, sweep), TWO_PI)
    if rel < 0.0:
        rel += TWO_PI
    if rel <= abs(sweep):
        return abs(abs(d) - radius)
    e0 = center + radius * cmath.exp(1j * theta0)
    e1 = center + radius * cmath.exp(1j * (theta0 + sweep))
    return min(abs(c - e0), abs(c - e1))


_MIN_CLEARANCE = 1e-9


def validate_path(path: PathSpec) -> float:
    """Check the path avoids all singular points; return the min clearance.

    Raises ValueError if any move touches (within 1e-9) a point where z1,
    z2 or z1 - z2 vanishes.
    """
    z1, z2 = complex(path.z1), complex(path.z2)
    if z1 == 0 or z2 == 0 or z1 == z2:
        raise ValueError("path start must have z1, z2, z1 - z2 nonzero")
    clearance = math.inf
    for idx, move in enumerate(path.moves):
        if move.var not in ("z1", "z2"):
            raise ValueError(f"move {idx}: var must be 'z1' or 'z2'")
        moving = z1 if move.var == "z1" else z2
        other = z2 if move.var == "z1" else z1
        forbidden = (0.0 + 0.0j, other)
        if isinstance(move, Segment):
            end = complex(move.to)
            for c in forbidden:
                clearance = min(clearance, _seg_point_dist(moving, end, c))
        elif isinstance(move, Arc):
            center = _resolve_center(move, other)
            radius = abs(moving - center)
            if radius == 0.0 and move.turns != 0.0:
                raise ValueError(f"move {idx}: arc of zero radius")
            theta0 = cmath.phase(moving - center)
            sweep = TWO_PI * move.turns
            end = center + radius * cmath.exp(1j * (theta0 + sweep))
            if move.turns != 0.0:
                for c in forbidden:
                    clearance = min(
                        clearance,
                        _arc_point_dist(center, radius, theta0, sweep, c))
        else:
            raise ValueError(f"move {idx}: unknown move type {type(move).__name__}")
        if clearance < _MIN_CLEARANCE:
            raise ValueError(
                f"move {idx} passes within {clearance:.3e} of a singular point")
        if move.var == "z1":
            z1 = end
        else:
            z2 = end
    return clearance


def _move_base_samples(move: Move, moving: complex, other: complex) -> int:
    if isinstance(move, Segment):
        return 64
    center = _resolve_center(move, other)
    radius = abs(moving - center)
    theta0 = cmath.phase(moving - center) if radius > 0 else 0.0
    sweep = TWO_PI * move.turns
    clear = min(_arc_point_dist(center, radius, theta0, sweep, 0.0 + 0.0j),
                _arc_point_dist(center, radius, theta0, sweep, other))
    quality = radius / clear if clear > 0 else 1.0
    n = max(64, math.ceil(64 * abs(move.turns)),
            math.ceil(32 * abs(move.turns) * quality))
    return min(n, 1 << 16)


def sample_path(path: PathSpec, scale: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Sampled positions (z1 array, z2 array) along the path, joint-deduped."""
    z1, z2 = complex(path.z1), complex(path.z2)
    zs1: list[np.ndarray] = [np.array([z1])]
    zs2: list[np.ndarray] = [np.array([z2])]
    for move in path.moves:
        moving = z1 if move.var == "z1" else z2
        other = z2 if move.var == "z1" else z1
        n = _move_base_samples(move, moving, other) * scale
        if isinstance(move, Segment):
            end = complex(move.to)
            ts = np.linspace(0.0, 1.0, n + 1)[1:]
            pos = moving + ts * (end - moving)
        else:
            center = _resolve_center(move, other)
            radius = abs(moving - center)
            theta0 = cmath.phase(moving - center) if radius > 0 else 0.0
            sweep = TWO_PI * move.turns
            ts = np.linspace(0.0, 1.0, n + 1)[1:]
            pos = center + radius * np.exp(1j * (theta0 + sweep * ts))
            end = center + radius * cmath.exp(1j * (theta0 + sweep))
            if len(pos):
                pos[-1] = end  # exact endpoint, no trig rounding
        if move.var == "z1":
            zs1.append(pos)
            zs2.append(np.full(len(pos), z2))
            z1 = end
        else:
            zs1.append(np.full(len(pos), z1))
            zs2.append(pos)
            z2 = end
    return np.concatenate(zs1), np.concatenate(zs2)


def _rep_array(z: np.ndarray) -> np.ndarray:
    """Principal arguments in [0, 2*pi) with the positive-axis snap."""
    rep = np.angle(z)
    rep = np.where(rep < 0.0, rep + TWO_PI, rep)
    near = (z.real > 0.0) & (np.abs(z.imag) <= 1e-14 * np.maximum(1.0, z.real))
    rep = np.where(near, 0.0, rep)
    rep = np.where(rep >= TWO_PI, 0.0, rep)
    return rep


def _crossings_and_reps(z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Per-sample branch offsets from signed cut crossings.

    Returns (reps, offsets, wrapped deltas, max |wrapped delta|).  A jump
    of the principal representative by -2*pi between samples means the
    continuous argument passed up through the cut (counterclockwise), so
    the branch index rises by one; +2*pi lowers it.
    """
    rep = _rep_array(z)
    d = np.diff(rep)
    wrapped = np.mod(d + math.pi, TWO_PI) - math.pi
    jumps = np.rint((d - wrapped) / TWO_PI).astype(int)
    offsets = np.concatenate([[0], np.cumsum(-jumps)])
    worst = float(np.max(np.abs(wrapped))) if len(wrapped) else 0.0
    return rep, offsets, wrapped, worst


def _family_eval_logs(f: LogFunction, log1: np.ndarray, log2: np.ndarray,
                      log12: np.ndarray) -> np.ndarray:
    """Vectorized evaluation given arrays of log values for the three slots."""
    total = np.zeros(len(log1), dtype=complex)
    for u in f.terms:
        v = u.coeff * np.exp(u.r * log1 + u.s * log2 + u.t * log12)
        if u.l:
            v = v * log1 ** u.l
        if u.m:
            v = v * log2 ** u.m
        if u.n:
            v = v * log12 ** u.n
        total += v
    return total


@dataclass(frozen=True)
class ContinuationResult:
    """Outcome of continue_along."""

    end_triple: BranchTriple
    end_value: complex
    start_value: complex
    certificate: float
    samples: int
    crossings: tuple[int, int, int]


def continue_along(f: LogFunction, bt: BranchTriple, path: PathSpec,
                   tol: float = 1e-9, max_refine: int = 12) -> ContinuationResult:
    """Transport the branch triple along the path and certify the result.

    Branch indices update by signed counting of positive-real-axis
    crossings of z1, z2 and z1 - z2.  As a certificate, the evaluation of
    f at the tracked integer triple is compared pointwise against an
    internal continuous-phase evaluation anchored at the start; their max
    gap, measured relative to the larger of 1 and the peak magnitude of f
    along the path, must fall below tol (sampling doubles adaptively until
    it does, and until no principal argument moves more than pi/4 per
    step).
    """
    validate_path(path)
    bt = BranchTriple(*bt)
    scale = 1
    for attempt in range(max_refine + 1):
        a1, a2 = sample_path(path, scale)
        a12 = a1 - a2
        rep1, off1, wr1, w1 = _crossings_and_reps(a1)
        rep2, off2, wr2, w2 = _crossings_and_reps(a2)
        rep12, off12, wr12, w12 = _crossings_and_reps(a12)
        angle_ok = max(w1, w2, w12) < math.pi / 4.0

        # Branch-formula route: integer indices from crossing counts.
        lf1 = np.log(np.abs(a1)) + 1j * (rep1 + TWO_PI * (bt.p1 + off1))
        lf2 = np.log(np.abs(a2)) + 1j * (rep2 + TWO_PI * (bt.p2 + off2))
        lf12 = np.log(np.abs(a12)) + 1j * (rep12 + TWO_PI * (bt.p12 + off12))
        v_form = _family_eval_logs(f, lf1, lf2, lf12)

        # Continuous route: unwrapped phases anchored at the start triple.
        th1 = rep1[0] + TWO_PI * bt.p1 + np.concatenate([[0.0], np.cumsum(wr1)])
        th2 = rep2[0] + TWO_PI * bt.p2 + np.concatenate([[0.0], np.cumsum(wr2)])
        th12 = rep12[0] + TWO_PI * bt.p12 + np.concatenate([[0.0], np.cumsum(wr12)])
        lu1 = np.log(np.abs(a1)) + 1j * th1
        lu2 = np.log(np.abs(a2)) + 1j * th2
        lu12 = np.log(np.abs(a12)) + 1j * th12
        v_unwrap = _family_eval_logs(f, lu1, lu2, lu12)

        peak = max(1.0, float(np.max(np.abs(v_form))))
        certificate = float(np.max(np.abs(v_form - v_unwrap))) / peak
        if angle_ok and certificate < tol:
            end_triple = BranchTriple(bt.p1 + int(off1[-1]),
                                      bt.p2 + int(off2[-1]),
                                      bt.p12 + int(off12[-1]))
            end_value = eval_branch2(f, end_triple, complex(a1[-1]), complex(a2[-1]))
            start_value = eval_branch2(f, bt, complex(a1[0]), complex(a2[0]))
            return ContinuationResult(
                end_triple=end_triple,
                end_value=end_value,
                start_value=start_value,
                certificate=certificate,
                samples=len(a1),
                crossings=(int(off1[-1]), int(off2[-1]), int(off12[-1])),
            )
        scale *= 2
    raise ArithmeticError(
        f"continuation failed to certify below {tol:g} after {max_refine} refinements "
        f"(last certificate {certificate:.3e})")


def winding_profile(path: PathSpec) -> tuple[int, int, int]:
    """Net signed cut crossings of (z1, z2, z1 - z2) along the path.

    For a closed loop these are the winding numbers of the three
    quantities around 0.  Sampling doubles until no principal argument
    moves more than pi/4 per step.
    """
    validate_path(path)
    scale = 1
    for _ in range(13):
        a1, a2 = sample_path(path, scale)
        _, off1, _, w1 = _crossings_and_reps(a1)
        _, off2, _, w2 = _crossings_and_reps(a2)
        _, off12, _, w12 = _crossings_and_reps(a1 - a2)
        if max(w1, w2, w12) < math.pi / 4.0:
            return int(off1[-1]), int(off2[-1]), int(off12[-1])
        scale *= 2
    raise ArithmeticError("path sampling failed to resolve windings")
