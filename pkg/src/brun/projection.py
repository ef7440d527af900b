"""Heuristic projections of the pair count and the reciprocal sum.

The conjectured density of twin pairs gives pi2(x) ~ C integral from 2 to
x of dt/log^2 t, and correspondingly B(x) ~ B - 2C/log x.  Feeding those
predictions through the certified tail assembly shows where the upper
bound would land if a census ever reached 10^k.

Nothing here is rigorous: the predictions use a midpoint twin constant
and floating point quadrature, and every output carries a permanent
``non_rigorous`` flag.  The certifying entry points accept censused
integers only, so projections cannot leak into a certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List

from scipy.integrate import quad

from .interval import Interval
from .rv_bound import QuadratureError, RVParams, brun_upper, derive_params

__all__ = [
    "DEFAULT_B_ASSUMED",
    "Projection",
    "TWIN_C_MID",
    "predict_brun_partial",
    "predict_pi2",
    "project_table",
]

#: Midpoint of the twin prime constant, a plain double, not an enclosure.
TWIN_C_MID = 1.3203236316937391

#: Conjectured value of the full reciprocal sum used as the projection
#: basis; the center of the best published statistical estimate.
DEFAULT_B_ASSUMED = 1.9021605832


@dataclass(frozen=True)
class Projection:
    """One projected row: threshold 10^k and the numbers it would yield."""

    k: int
    pi2_pred: float
    b_pred: float
    upper_pred: float
    b_assumed: float
    non_rigorous: bool = True

    def __post_init__(self):
        if self.non_rigorous is not True:
            raise ValueError("projections are never rigorous")
        if self.pi2_pred <= 0:
            raise ValueError(f"nonpositive pair count prediction: {self.pi2_pred}")
        if not self.b_pred < self.b_assumed:
            raise ValueError(
                f"partial sum prediction {self.b_pred} must sit below "
                f"the assumed limit {self.b_assumed}"
            )


def predict_pi2(x: float) -> float:
    """Predicted pair count: C integral from 2 to x of dt/log^2 t.

    Integrates in the shifted log coordinate v = log x - log t, where the
    integrand x e^(-v)/(log x - v)^2 decays instead of blowing up, then
    lets adaptive floating point quadrature do the rest.  Heuristic
    output only.
    """
    if not x > 2.0:
        raise ValueError(f"need x > 2: {x}")
    lx = math.log(x)
    span = lx - math.log(2.0)
    integral, _ = quad(
        lambda v: math.exp(-v) / (lx - v) ** 2, 0.0, span, limit=200
    )
    return TWIN_C_MID * x * integral


def predict_brun_partial(n: float, b_assumed: float = DEFAULT_B_ASSUMED) -> float:
    """Predicted partial sum at n: the assumed limit minus 2C/log n."""
    if not n > 1.0:
        raise ValueError(f"need n > 1: {n}")
    return b_assumed - 2.0 * TWIN_C_MID / math.log(n)


def project_table(
    ks: Iterable[int],
    b_assumed: float = DEFAULT_B_ASSUMED,
    params: RVParams | None = None,
) -> List[Projection]:
    """Project the certified assembly onto hypothetical censuses at 10^k.

    For each exponent, synthesize a census from the predicted pair count
    and partial sum, run the same tail machinery a real census would get
    (one shared parameter set, not re-optimized per threshold), and
    report the resulting would-be upper bound.  Rows come back sorted by
    k; the projected bounds decrease as k grows.
    """
    exponents = sorted(set(int(k) for k in ks))
    if not exponents:
        raise ValueError("no thresholds given")
    if exponents[0] < 7:
        raise ValueError(f"threshold 10^{exponents[0]} below the census floor")
    if exponents[-1] > 300:
        raise ValueError(f"threshold 10^{exponents[-1]} beyond double range")
    if params is None:
        params = derive_params()
    rows = []
    for k in exponents:
        x0 = 10**k
        pi2_pred = predict_pi2(float(x0))
        b_pred = predict_brun_partial(float(x0), b_assumed)
        # Small thresholds put the start of the tail integral where the
        # parameter enclosures alone exceed the default width target, so
        # no mesh can reach it.  Projections are heuristic anyway: retry
        # at a multiple of the width the first attempt proved reachable.
        budget = 1 << 14
        try:
            cert = brun_upper(
                x0,
                int(round(pi2_pred)),
                Interval.point(b_pred),
                params=params,
                max_pieces=budget,
            )
        except QuadratureError as exc:
            cert = brun_upper(
                x0,
                int(round(pi2_pred)),
                Interval.point(b_pred),
                params=params,
                width_target=4.0 * exc.achieved_width,
                max_pieces=budget,
            )
        rows.append(
            Projection(
                k=k,
                pi2_pred=pi2_pred,
                b_pred=b_pred,
                upper_pred=cert.upper,
                b_assumed=b_assumed,
            )
        )
    return rows
