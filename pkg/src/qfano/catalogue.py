"""Named weight systems and formats that appear in the index classification.

Hypersurface and complete-intersection baskets are not derived here (that
would need a quasismoothness analysis); they are listed by hand and are
certified in the test suite by equality of the format series with the
Riemann-Roch series.
"""
from __future__ import annotations

from .singularities import Basket, parse_basket
from .wps import GradedFormat, WeightSystem, parse_format, wps_invariants

# weighted projective 3-spaces with isolated singularities
REFERENCE_WPS: tuple[tuple[int, ...], ...] = (
    (1, 1, 1, 1),
    (1, 1, 1, 2),
    (1, 1, 2, 3),
    (1, 2, 3, 5),
    (1, 3, 4, 5),
    (2, 3, 5, 7),
    (3, 4, 5, 7),
)

# format text -> basket (compact "r,b,m" form)
FORMAT_BASKETS: dict[str, str] = {
    "hyp:6@1,2,3,4,5": "2,1,1;4,1,1;5,2,1",
    "hyp:6@1,1,2,3,5": "5,2,1",
    "hyp:10@1,2,3,5,7": "3,1,1;7,3,1",
    "hyp:4@1,1,2,2,3": "2,1,2;3,1,1",
    "hyp:2@1,1,1,1,1": "",
    "hyp:3@1,1,1,1,2": "2,1,1",
    "hyp:4@1,1,1,2,3": "3,1,1",
    "hyp:6@1,2,3,3,5": "3,1,2;5,1,1",
    "ci:2,2@1,1,1,1,1,1": "",
    "pfm:1,1,2,2/1,2,2/2,2/3@1,1,1,1,2,2,3": "1*1/3(1,2,2)",
}


def wps_format(weights) -> GradedFormat:
    return GradedFormat(WeightSystem(tuple(weights)))


def known_formats() -> list[tuple[GradedFormat, Basket]]:
    out = [(wps_format(w), wps_invariants(w)[2]) for w in REFERENCE_WPS]
    out += [(parse_format(text), parse_basket(b)) for text, b in FORMAT_BASKETS.items()]
    return out
