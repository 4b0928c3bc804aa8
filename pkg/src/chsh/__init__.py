"""CHSH functional, angle parameterization, multi-start maximization and beta scans."""
from .angles import (
    angle_set_directions,
    angle_set_from_degrees,
    angle_set_from_vector,
    angles_from_direction,
    canonicalize_angles,
    direction_from_angles,
)
from .functional import chsh_from_vector, chsh_terms, chsh_value
from .optimizer import max_chsh, random_starts, warm_start
from .scan import (
    CASE_COLUMNS,
    beta_grid,
    default_angle_set,
    format_number,
    orthogonal_axes_directions,
    scan_beta,
    table_to_csv,
)

__all__ = [
    "angle_set_directions",
    "angle_set_from_degrees",
    "angle_set_from_vector",
    "angles_from_direction",
    "canonicalize_angles",
    "direction_from_angles",
    "chsh_from_vector",
    "chsh_terms",
    "chsh_value",
    "max_chsh",
    "random_starts",
    "warm_start",
    "CASE_COLUMNS",
    "beta_grid",
    "default_angle_set",
    "format_number",
    "orthogonal_axes_directions",
    "scan_beta",
    "table_to_csv",
]
