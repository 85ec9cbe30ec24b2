"""Pitman and Levy type path transformations for Brownian bridges."""

__version__ = "0.1.0"

from .path_core import (  # noqa: E402
    Path,
    Path3,
    abs_path,
    l_transform,
    levy_second_component,
    make_uniform_path,
    occupation_band,
    pitman,
    prefix_max,
    suffix_max,
    suffix_min,
)
