"""Arithmetic of indexed logarithm branches.

Every multivalued quantity in this package is resolved through a single
convention: the principal argument of a nonzero complex number lies in
[0, 2*pi), so the branch cut sits on the positive real axis and points on
the axis itself belong to the 0 side.  The indexed logarithm

    lp(p, z) = log|z| + i*(arg z + 2*pi*p),        p any integer,

then enumerates all values of log z.  Raising p by one adds 2*pi*i.

The helper functions below track how the index transforms under negation,
inversion, and the two-variable difference z1 - z2.  These rules are the
whole content of branch bookkeeping: once an index is assigned to each of
z1, z2 and z1 - z2, every product of powers and logs is single valued.
"""

from __future__ import annotations

import cmath
import math

TWO_PI = 2.0 * math.pi

# Points this close to the positive real axis (relative to the scale of the
# real part) are treated as lying exactly on the axis, so that the frequent
# "arg z = 0" special cases in the transform formulas trigger reliably for
# inputs like complex(2.0, 0.0) that picked up rounding noise upstream.
_AXIS_SNAP = 1e-14


def principal_arg(z: complex) -> float:
    """Principal argument of z in [0, 2*pi).

    Raises ValueError for z = 0.  Points within 1e-14 (relative) of the
    positive real axis are snapped to argument exactly 0.0.
    """
    z = complex(z)
    if z == 0:
        raise ValueError("argument of zero is undefined")
    if z.real > 0.0 and abs(z.imag) <= _AXIS_SNAP * max(1.0, z.real):
        return 0.0
    a = cmath.phase(z)  # (-pi, pi]
    if a < 0.0:
        a += TWO_PI
    # Guard against a + 2*pi rounding back up to 2*pi itself.
    if a >= TWO_PI:
        a = 0.0
    return a


def lp(p: int, z: complex) -> complex:
    """Value of the p-th branch of log at z.

    lp(p, z) = log|z| + i*(principal_arg(z) + 2*pi*p).  Satisfies
    exp(lp(p, z)) = z for every integer p.
    """
    z = complex(z)
    if z == 0:
        raise ValueError("log of zero is undefined")
    return complex(math.log(abs(z)), principal_arg(z) + TWO_PI * p)


def neg_branch(p: int, z: complex) -> tuple[int, int]:
    """Branch data for -z in terms of the branch of z.

    Returns (p, sigma) with sigma = +1 or -1 such that

        lp(p, -z) = lp(p, z) + sigma * pi * i.

    sigma = +1 when arg z < pi (negating rotates the argument up by pi
    without crossing the cut) and -1 when arg z >= pi (the rotation up by
    pi would cross the cut, so the principal representative drops by pi).
    """
    sigma = 1 if principal_arg(z) < math.pi else -1
    return p, sigma


def inv_branch(p: int, z: complex) -> int:
    """Branch index q such that lp(q, 1/z) = -lp(p, z).

    On the positive real axis arg z = 0 and arg(1/z) = 0, so q = -p.
    Off the axis arg(1/z) = 2*pi - arg z, which overshoots by one full
    turn when negated, so q = -p - 1.
    """
    if principal_arg(z) == 0.0:
        return -p
    return -p - 1


def q_offset_product(z1: complex, z2: complex) -> int:
    """Integer offset q relating arg values of (z1 - z2)/(z1 * (-z2)).

    Returns the unique integer q with

        principal_arg((z1 - z2) / (z1 * (-z2)))
            = principal_arg(z1 - z2) - principal_arg(z1)
              - principal_arg(z2) + (2*q + 1)*pi

    where the left side lies in [0, 2*pi).  Both sides are congruent mod
    2*pi for any q (negating z2 shifts its argument by an odd multiple of
    pi), so q is found by rounding and then checked exactly against the
    window.  Over all admissible (z1, z2) the value ranges over
    {-1, 0, 1, 2}; the extremes occur only when the three principal
    arguments pile up near the ends of [0, 2*pi).
    """
    z1 = complex(z1)
    z2 = complex(z2)
    w = z1 - z2
    if z1 == 0 or z2 == 0 or w == 0:
        raise ValueError("z1, z2 and z1 - z2 must all be nonzero")
    lhs = principal_arg(w / (z1 * (-z2)))
    base = principal_arg(w) - principal_arg(z1) - principal_arg(z2)
    q = round((lhs - base - math.pi) / TWO_PI)
    # The rounded q must reproduce lhs up to float noise; anything larger
    # signals an argument inconsistency upstream.
    defect = abs(base + (2 * q + 1) * math.pi - lhs)
    if defect > 1e-9:
        raise ArithmeticError(
            f"no integer offset matches: defect {defect:.3e} for z1={z1}, z2={z2}"
        )
    return q


def diff_inv_branch(p1: int, p2: int, z1: complex, z2: complex) -> tuple[int, float]:
    """Branch index for 1/z1 - 1/z2 induced by branches of z1, z2, z1 - z2.

    With q = q_offset_product(z1, z2), the combination

        lp(p1 + q, z1 - z2) - lp(p1, z1) - lp(p2, z2) + pi*i

    is a value of log(1/z1 - 1/z2) because 1/z1 - 1/z2 = (z2 - z1)/(z1*z2)
    = (z1 - z2) * (-1) / (z1*z2).  Returns (k, residual) where k is the
    branch index recovered numerically from that value and residual is the
    distance |combination - lp(k, 1/z1 - 1/z2)|, which should sit at float
    noise.  The recovered index always equals -p2 (an identity exercised by
    the test suite rather than assumed here).
    """
    z1 = complex(z1)
    z2 = complex(z2)
    w = z1 - z2
    if z1 == 0 or z2 == 0 or w == 0:
        raise ValueError("z1, z2 and z1 - z2 must all be nonzero")
    q = q_offset_product(z1, z2)
    value = lp(p1 + q, w) - lp(p1, z1) - lp(p2, z2) + complex(0.0, math.pi)
    target = 1.0 / z1 - 1.0 / z2
    k = round((value.imag - principal_arg(target)) / TWO_PI)
    residual = abs(value - lp(k, target))
    return k, residual


def ratio_arg_decomposition(z1: complex, z2: complex) -> tuple[int, float]:
    """Split arg z1 into arg z2 plus the argument of 1 + (z1 - z2)/z2.

    Requires |z2| > |z1 - z2| > 0 and a principal-argument gap
    |arg z1 - arg z2| < pi/2.  Under those constraints

        principal_arg(z1) = principal_arg(z2) + rho + 2*pi*q

    with rho = principal_arg(1 + (z1 - z2)/z2) and q = 0 when rho < pi/2
    or q = -1 when rho > 3*pi/2 (rho is confined to those two arcs by the
    hypotheses).  Returns (q, defect) with defect the float error of the
    reconstruction.
    """
    z1 = complex(z1)
    z2 = complex(z2)
    w = z1 - z2
    if w == 0 or z2 == 0:
        raise ValueError("z2 and z1 - z2 must be nonzero")
    if not abs(z2) > abs(w):
        raise ValueError("requires |z2| > |z1 - z2|")
    a1 = principal_arg(z1)
    a2 = principal_arg(z2)
    if not abs(a1 - a2) < math.pi / 2.0:
        raise ValueError("requires |arg z1 - arg z2| < pi/2")
    rho = principal_arg(1.0 + w / z2)
    # |w/z2| < 1 keeps 1 + w/z2 in the open right half plane shifted off
    # zero, so rho is in [0, pi/2) or (3*pi/2, 2*pi); the argument gap
    # hypothesis rules nothing more in.
    if rho < math.pi / 2.0:
        q = 0
    elif rho > 3.0 * math.pi / 2.0:
        q = -1
    else:
        raise ArithmeticError(f"rho = {rho:.6f} outside both admissible arcs")
    defect = abs(a1 - (a2 + rho + TWO_PI * q))
    return q, defect
