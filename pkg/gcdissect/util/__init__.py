from .ratio import (
    to_ratio,
    format_ratio,
    is_exact,
    close,
)
from .geometry import (
    polygon_area,
    convex_orientation,
    line_intersection,
    clip_convex,
)
from .options import SearchOptions
