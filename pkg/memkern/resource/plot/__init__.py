from .svg import (
    DRAW_DASHED,
    DRAW_LINE,
    DRAW_POINTS,
    STYLE_LINEAR,
    STYLE_LOGLOG,
    Series,
    curve_series,
    render_plot,
    scaling_series,
)
