"""Critical points of the oriented area on the space of planar polygons with fixed perimeter."""

__version__ = "0.1.0"

from .config import SolverConfig, Tolerances  # noqa: E402
from .polygon import (  # noqa: E402
    Polygon,
    StarSpec,
    complete_fold,
    cyclic_shift,
    oriented_area,
    perimeter,
    regular_star,
    winding_number,
)
from .projective import ChartPoint, EdgeWord, chart_at, embed, polygon_to_edgeword  # noqa: E402

__all__ = [
    "ChartPoint",
    "EdgeWord",
    "Polygon",
    "SolverConfig",
    "StarSpec",
    "Tolerances",
    "chart_at",
    "complete_fold",
    "cyclic_shift",
    "embed",
    "oriented_area",
    "perimeter",
    "polygon_to_edgeword",
    "regular_star",
    "winding_number",
]
