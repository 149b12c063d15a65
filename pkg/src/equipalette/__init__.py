"""Categorical color palettes from charge-equilibrium point sets in CIELAB."""

from .color_space import (
    D65,
    InvalidColorError,
    LabColor,
    SrgbColor,
    WhitePoint,
    XyzColor,
    lab_to_srgb,
    round_trip_error,
    srgb_to_lab,
)
from .equilibrium import (
    CoincidentPointsError,
    SolverConfig,
    SphereConfiguration,
    coulomb_energy,
    energy_gradient,
    sample_uniform_sphere,
    solve,
)
from .evaluation import ContrastReport, JndSummary, contrast_curve, jnd_report, write_series_csv
from .metrics import ContrastMetric, delta_e_76, delta_e_2000, min_pairwise_contrast
from .render import (
    ScatterProjection,
    SvgDocument,
    render_contrast_chart,
    render_lab_scatter,
    render_pie,
    render_swatches,
)
from .schemes import (
    MID_GRAY,
    GamutMode,
    Palette,
    PaletteColor,
    PaletteSpec,
    SchemeKind,
    equilibrium_palette,
    generate_palette,
    harmonic_palette,
    max_inscribed_radius,
)

__version__ = "0.1.0"
