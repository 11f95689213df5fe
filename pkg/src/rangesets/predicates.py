"""Adaptive-precision planar predicates.

Both predicates evaluate a signed determinant with plain float arithmetic
first and accept the result whenever its magnitude clears a forward error
bound on the floating computation.  Near-degenerate inputs fall back to
exact rational arithmetic on the (exactly representable) double operands,
so the returned sign is always correct.
"""

from __future__ import annotations

from fractions import Fraction

# Forward error bounds for the float fast paths, in units of the permanent
# (sum of absolute products).  Slightly conservative rounded-up versions of
# (3 + 16u)u and (10 + 96u)u with u = 2^-53.
_ORIENT_BOUND = 3.3306690738754731e-16
_INCIRCLE_BOUND = 1.1102230246251577e-15


def orient2d(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Sign of the signed area of triangle (a, b, c): +1 counter-clockwise,
    -1 clockwise, 0 exactly collinear."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright

    if detleft > 0.0:
        if detright <= 0.0:
            return 1 if det > 0.0 else (0 if det == 0.0 else -1)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return -1 if det < 0.0 else (0 if det == 0.0 else 1)
        detsum = -detleft - detright
    else:
        return 1 if det > 0.0 else (-1 if det < 0.0 else 0)

    if det >= _ORIENT_BOUND * detsum:
        return 1
    if -det >= _ORIENT_BOUND * detsum:
        return -1
    return _orient2d_exact(ax, ay, bx, by, cx, cy)


def _orient2d_exact(ax, ay, bx, by, cx, cy) -> int:
    det = (Fraction(ax) - Fraction(cx)) * (Fraction(by) - Fraction(cy)) - (
        Fraction(ay) - Fraction(cy)
    ) * (Fraction(bx) - Fraction(cx))
    return (det > 0) - (det < 0)


def incircle(
    ax: float, ay: float, bx: float, by: float,
    cx: float, cy: float, dx: float, dy: float,
) -> int:
    """Sign of the in-circle determinant for counter-clockwise (a, b, c):
    +1 if d lies strictly inside their circumcircle, -1 strictly outside,
    0 exactly cocircular."""
    adx = ax - dx
    ady = ay - dy
    bdx = bx - dx
    bdy = by - dy
    cdx = cx - dx
    cdy = cy - dy

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady

    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy

    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    errbound = _INCIRCLE_BOUND * permanent
    if det > errbound:
        return 1
    if -det > errbound:
        return -1
    return _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy)


def _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    fdx = Fraction(dx)
    fdy = Fraction(dy)
    adx = Fraction(ax) - fdx
    ady = Fraction(ay) - fdy
    bdx = Fraction(bx) - fdx
    bdy = Fraction(by) - fdy
    cdx = Fraction(cx) - fdx
    cdy = Fraction(cy) - fdy

    det = (
        (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady)
    )
    return (det > 0) - (det < 0)
