"""Certified sieve upper bound for the twin prime reciprocal sum.

The counting side is a sieve theorem of Riesel-Vaughan type: for the twin
pair counting function,

    pi2(x) <= 8 C x / (log x (log x + F(x))) + kappa sqrt(x),

where C is the twin prime constant and F collects the second-order
savings.  F is assembled from four derived constants,

    F(x) = max(0, a6 + a7/log x - a8/(x^(alpha/2) log x)
                  - a9/(x^(1/2) log x)),

whose values flow out of the divisor-error scan, the H product bound and
the twin constant enclosure (see ``derive_params``).

Partial summation converts the counting bound into a tail bound for the
reciprocal sum B: for a censused point x0 with exact pair count and a
certified partial sum,

    B <= B(x0) - 2 pi2(x0)/x0 + 16 C J + 4 kappa x0^(-1/2),

where J = integral over u in [log x0, inf) of du/(u (u + F(e^u))).  J is
split at a finite cutoff: below it an adaptive rigorous quadrature, above
it F >= 0 gives the closed tail 1/cutoff.  Everything is interval
arithmetic end to end, so the reported upper bound is a certified real
number, not an estimate.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Callable, Optional

from .interval import Interval, rational_pow

__all__ = [
    "BoundCertificate",
    "QuadratureError",
    "QuadratureResult",
    "RVParams",
    "brun_upper",
    "convex_piece",
    "correction_term",
    "correction_term_log",
    "derive_params",
    "enclosure_piece",
    "idealized_params",
    "integrate_adaptive",
    "pi2_upper",
]

#: Defaults for the three analytic inputs, as certified elsewhere in the
#: package: the twin prime constant window, the log of the H product
#: bound (lower end from its partial sum at 1e10, upper end from the
#: certified tail estimate), and the divisor-error supremum at
#: alpha = 2/5.  Each can be recomputed and passed in explicitly.
DEFAULT_TWIN_C = Interval(1.320323, 1.320324)
DEFAULT_H_LOG = Interval(6.8509190276, 6.8565069)
DEFAULT_SCAN_BOUND = Interval(1.0502, 1.0503)


@dataclass(frozen=True)
class RVParams:
    """Constants of the corrected sieve bound, all certified enclosures."""

    alpha: Fraction
    rho: Interval
    twin_c: Interval
    h: Interval
    scan_bound: Interval
    a6: Interval
    a7: Interval
    a8: Interval
    a9: Interval
    sqrt_coefficient: Interval
    sqrt_valid_from: float


def _default_rho() -> Interval:
    # rho = sqrt(1 + (2/3) sqrt(6/5)), the optimized sieve level ratio
    inner = Interval.from_fraction(Fraction(6, 5)).sqrt()
    return (Interval.from_fraction(Fraction(2, 3)) * inner + 1).sqrt()


def derive_params(
    alpha: Fraction = Fraction(2, 5),
    twin_c: Optional[Interval] = None,
    h: Optional[Interval] = None,
    scan_bound: Optional[Interval] = None,
    improved: bool = False,
    x0: Optional[float] = None,
) -> RVParams:
    """Assemble the correction constants for the counting bound.

    With all arguments defaulted this reproduces the published constant
    set at alpha = 2/5:

        a6 = 9.27436 - 2 log rho
        a7 = -5.6646 + log^2 rho - 9.2744 log rho
        a8 = 16 C c H rho^(alpha/2)
        a9 = 24.09391 sqrt(rho)        kappa = 2

    The ``improved`` variant sharpens the sqrt term: kappa becomes
    x0^(-1/2) + 5.03 / (sqrt(rho) log(x0/rho)), valid only for x >= x0,
    and a9 drops to 19.638 sqrt(rho).
    """
    alpha = Fraction(alpha)
    if not 0 < alpha < Fraction(1, 2):
        raise ValueError(f"alpha out of range (0, 1/2): {alpha}")
    if twin_c is None:
        twin_c = DEFAULT_TWIN_C
    if h is None:
        h = DEFAULT_H_LOG.exp()
    if scan_bound is None:
        scan_bound = DEFAULT_SCAN_BOUND

    rho = _default_rho()
    log_rho = rho.log()
    a6 = Interval.from_decimal(Decimal("9.27436")) - 2 * log_rho
    a7 = (
        Interval.from_decimal(Decimal("-5.6646"))
        + log_rho * log_rho
        - Interval.from_decimal(Decimal("9.2744")) * log_rho
    )
    half_alpha = alpha / 2
    a8 = 16 * twin_c * scan_bound * h * rational_pow(
        rho, half_alpha.numerator, half_alpha.denominator
    )
    if improved:
        if x0 is None:
            raise ValueError("improved sqrt coefficient needs its anchor x0")
        x0_iv = Interval.point(float(x0))
        if x0_iv.lo <= rho.hi:
            raise ValueError(f"x0 too small for the improved variant: {x0}")
        a9 = Interval.from_decimal(Decimal("19.638")) * rho.sqrt()
        kappa = rational_pow(x0_iv, -1, 2) + Interval.from_decimal(
            Decimal("5.03")
        ) / (rho.sqrt() * (x0_iv / rho).log())
        valid_from = float(x0)
    else:
        a9 = Interval.from_decimal(Decimal("24.09391")) * rho.sqrt()
        kappa = Interval(2.0, 2.0)
        valid_from = 2.0
    return RVParams(
        alpha=alpha,
        rho=rho,
        twin_c=twin_c,
        h=h,
        scan_bound=scan_bound,
        a6=a6,
        a7=a7,
        a8=a8,
        a9=a9,
        sqrt_coefficient=kappa,
        sqrt_valid_from=valid_from,
    )


def idealized_params(twin_c: Optional[Interval] = None) -> RVParams:
    """First-order parameter set: corrections and the sqrt term dropped.

    Keeps only the leading constant of the counting bound (a6 as the
    bare literal, no rho adjustment) with F's other terms zeroed.  Used
    to quantify how much the second-order machinery buys.
    """
    if twin_c is None:
        twin_c = DEFAULT_TWIN_C
    zero = Interval(0.0, 0.0)
    return RVParams(
        alpha=Fraction(2, 5),
        rho=Interval(1.0, 1.0),
        twin_c=twin_c,
        h=DEFAULT_H_LOG.exp(),
        scan_bound=DEFAULT_SCAN_BOUND,
        a6=Interval.from_decimal(Decimal("9.27436")),
        a7=zero,
        a8=zero,
        a9=zero,
        sqrt_coefficient=zero,
        sqrt_valid_from=2.0,
    )


def correction_term_log(u: Interval, params: RVParams) -> Interval:
    """F evaluated in log coordinates: u = log x, u.lo > 0.

    Working in u-space keeps arguments like u = 921 (x = 1e400)
    representable; x-space would overflow doubles long before the
    quadrature cutoff.
    """
    if u.lo <= 0.0:
        raise ValueError(f"need positive log argument: {u}")
    half_alpha = params.alpha / 2
    xa = (u * Interval.from_fraction(half_alpha)).exp()  # x^(alpha/2)
    xs = (u * 0.5).exp()  # sqrt(x)
    v = params.a6 + params.a7 / u - params.a8 / (xa * u) - params.a9 / (xs * u)
    return Interval(max(0.0, v.lo), max(0.0, v.hi))


def correction_term(x: Interval, params: RVParams) -> Interval:
    """F(x) for x.lo > 1; see ``correction_term_log`` for huge x."""
    if x.lo <= 1.0:
        raise ValueError(f"need x > 1: {x}")
    return correction_term_log(x.log(), params)


def pi2_upper(x: Interval, params: RVParams) -> Interval:
    """Enclosure of the counting bound 8 C x/(log x (log x + F)) + kappa sqrt x.

    The certified upper bound on pi2(x) is the .hi end.
    """
    if x.lo < params.sqrt_valid_from:
        raise ValueError(
            f"x below the validity floor {params.sqrt_valid_from}: {x}"
        )
    u = x.log()
    f = correction_term_log(u, params)
    main = 8 * params.twin_c * x / (u * (u + f))
    return main + params.sqrt_coefficient * x.sqrt()


# ----------------------------------------------------------------------
# rigorous adaptive quadrature


class QuadratureError(RuntimeError):
    """Raised when the piece budget runs out before the width target."""

    def __init__(self, message: str, achieved_width: float, pieces: int):
        super().__init__(message)
        self.achieved_width = achieved_width
        self.pieces = pieces


@dataclass(frozen=True)
class QuadratureResult:
    value: Interval
    pieces: int
    achieved_width: float


PieceFn = Callable[[float, float], Interval]


def integrate_adaptive(
    piece: PieceFn,
    a: float,
    b: float,
    width_target: float,
    max_pieces: int = 1 << 22,
) -> QuadratureResult:
    """Bisect [a, b] until the summed enclosure width meets the target.

    ``piece(a, b)`` must return an Interval containing the exact integral
    over [a, b]; any sound rule works.  Always splits the widest piece
    first (ties by position), so runs are deterministic.  The final
    enclosure adds pieces in ascending position order.  Raises
    :class:`QuadratureError` when ``max_pieces`` is hit first.
    """
    if not a < b:
        raise ValueError(f"empty integration range [{a}, {b}]")
    first = piece(a, b)
    heap = [(-first.width, a, b, first)]
    total_width = first.width
    while total_width > width_target and len(heap) < max_pieces:
        neg_w, lo, hi, iv = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # interval too thin to bisect in doubles; put it back and stop
            heapq.heappush(heap, (neg_w, lo, hi, iv))
            break
        left = piece(lo, mid)
        right = piece(mid, hi)
        total_width += left.width + right.width - iv.width
        heapq.heappush(heap, (-left.width, lo, mid, left))
        heapq.heappush(heap, (-right.width, mid, hi, right))
    pieces = sorted(heap, key=lambda item: item[1])
    total = Interval(0.0, 0.0)
    for _, _, _, iv in pieces:
        total = total + iv
    if total_width > width_target:
        raise QuadratureError(
            f"width {total_width:.3e} above target {width_target:.3e} "
            f"after {len(pieces)} pieces",
            achieved_width=total_width,
            pieces=len(pieces),
        )
    return QuadratureResult(value=total, pieces=len(pieces), achieved_width=total_width)


def enclosure_piece(f: Callable[[Interval], Interval]) -> PieceFn:
    """Zeroth-order rule: the image of the whole piece times its width."""

    def piece(a: float, b: float) -> Interval:
        width = Interval.point(b) - Interval.point(a)
        return f(Interval(a, b)) * width

    return piece


def quadrature(
    u0: float,
    u1: float,
    integrand: Callable[[Interval], Interval],
    width_target: float,
    max_pieces: int = 1 << 22,
) -> QuadratureResult:
    """Enclose an integral from a pointwise interval extension alone.

    Convenience front end over :func:`integrate_adaptive` using the
    zeroth-order rule; first-order convergence, so budget width targets
    accordingly.  Callers that know more structure (convexity, a frozen
    closed form) should build a sharper piece rule instead.
    """
    return integrate_adaptive(
        enclosure_piece(integrand), u0, u1, width_target, max_pieces
    )


def convex_piece(f: Callable[[Interval], Interval]) -> PieceFn:
    """Midpoint/trapezoid bracket, valid only for convex integrands."""

    def piece(a: float, b: float) -> Interval:
        width = Interval.point(b) - Interval.point(a)
        mid = 0.5 * (a + b)
        low = (f(Interval.point(mid)) * width).lo
        high = ((f(Interval.point(a)) + f(Interval.point(b))) * width * 0.5).hi
        return Interval(low, high)

    return piece


def correction_piece(params: RVParams) -> PieceFn:
    """Piece rule for the tail integrand 16 C / (u (u + F(u))).

    F is nondecreasing whenever a7 <= 0 <= a8, a9 (each term of F then
    rises with u), so on a piece [a, b] it stays inside
    [F(a).lo, F(b).hi].  With F frozen at a constant phi the integral has
    the closed form

        G(phi) = (1/phi) log( b (a + phi) / (a (b + phi)) ),

    decreasing in phi, so evaluating G at the frozen endpoints brackets
    the true piece integral far tighter than a zeroth-order rule.  The
    16 C scale sits inside the rule so the driver's width target applies
    to the integral exactly as it enters the certificate.
    """
    if not (params.a7.hi <= 0.0 <= min(params.a8.lo, params.a9.lo)):
        raise ValueError(
            "frozen-correction quadrature needs a7 <= 0 and a8, a9 >= 0"
        )
    scale = 16 * params.twin_c

    def closed_form(a: Interval, b: Interval, phi: float) -> Interval:
        if phi == 0.0:
            return 1 / a - 1 / b
        p = Interval.point(phi)
        return ((b * (a + p)) / (a * (b + p))).log() / p

    def piece(a: float, b: float) -> Interval:
        ia = Interval.point(a)
        ib = Interval.point(b)
        f_lo = correction_term_log(ia, params).lo
        f_hi = correction_term_log(ib, params).hi
        return scale * Interval(
            closed_form(ia, ib, f_hi).lo,
            closed_form(ia, ib, f_lo).hi,
        )

    return piece


# ----------------------------------------------------------------------
# assembly


@dataclass(frozen=True)
class BoundCertificate:
    """A certified two-sided bound on the twin prime reciprocal sum.

    ``lower`` is the censused partial sum's lower end (every omitted term
    is positive).  ``upper`` adds the certified tail estimate beyond x0.
    ``integral`` is the quadrature enclosure of the 16 C scaled tail
    integrand over [log x0, cutoff_u]; ``tail_bound`` records the
    closed-form remainder of the integral beyond the cutoff, before the
    16 C scaling.
    """

    x0: int
    pi2_x0: int
    brun_partial_x0: Interval
    params: RVParams
    cutoff_u: float
    width_target: float
    quad_pieces: int
    integral: Interval
    tail_bound: Interval
    sqrt_tail: Interval
    pair_term: Interval
    lower: float
    upper: float

    @property
    def enclosure(self) -> Interval:
        return Interval(self.lower, self.upper)


def brun_upper(
    x0: int,
    pi2_x0: int,
    brun_partial_x0: Interval,
    params: Optional[RVParams] = None,
    cutoff_u: float = 20000.0,
    width_target: float = 1e-6,
    max_pieces: int = 1 << 22,
) -> BoundCertificate:
    """Certify an upper bound for the full reciprocal sum from a census.

    Inputs: an exact pair count and a certified partial sum enclosure at
    x0.  The tail beyond x0 is bounded by the corrected counting bound
    through partial summation; the 16 C scaled integral runs in log
    coordinates from log x0 to ``cutoff_u``, after which F >= 0 leaves
    the closed tail 1/cutoff_u.  ``width_target`` caps the quadrature
    enclosure width as it enters the certificate (default one digit
    beyond a six-decimal bound); the other terms are exact-input
    interval evaluations.
    """
    if params is None:
        params = derive_params()
    if x0 < 10**6:
        raise ValueError(f"x0 too small for the tail machinery: {x0}")
    if pi2_x0 < 0:
        raise ValueError(f"negative pair count: {pi2_x0}")
    if float(x0) < params.sqrt_valid_from:
        raise ValueError(
            f"x0 below the sqrt coefficient validity floor "
            f"{params.sqrt_valid_from}"
        )
    u0 = Interval.from_int(x0).log()
    if not u0.hi < cutoff_u:
        raise ValueError(f"cutoff_u must exceed log x0 = {u0.hi}")

    quad = integrate_adaptive(
        correction_piece(params),
        u0.lo,  # starting below the true log x0 only widens the enclosure
        cutoff_u,
        width_target,
        max_pieces,
    )
    tail = 1 / Interval.point(cutoff_u)
    pair_term = Interval.from_int(2 * pi2_x0) / Interval.from_int(x0)
    sqrt_tail = 4 * params.sqrt_coefficient * rational_pow(
        Interval.from_int(x0), -1, 2
    )
    total = (
        brun_partial_x0
        - pair_term
        + quad.value
        + 16 * params.twin_c * tail
        + sqrt_tail
    )
    return BoundCertificate(
        x0=x0,
        pi2_x0=pi2_x0,
        brun_partial_x0=brun_partial_x0,
        params=params,
        cutoff_u=cutoff_u,
        width_target=width_target,
        quad_pieces=quad.pieces,
        integral=quad.value,
        tail_bound=tail,
        sqrt_tail=sqrt_tail,
        pair_term=pair_term,
        lower=brun_partial_x0.lo,
        upper=total.hi,
    )
