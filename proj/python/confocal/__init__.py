"""Confocal ellipsoid potential theory in Euclidean d-space and on S^3.

Thin pure-python layer over the ``_confocal`` pybind11 extension: geometry
types, field evaluation, and the verification check registry.
"""

import json as _json

from ._confocal import (
    Cap,
    Classification,
    ConfocalError,
    EuclideanEllipsoid,
    FieldValue,
    MassSurface,
    QuadratureSpec,
    Region,
    Sheet,
    SphericalEllipsoid,
    ThickLayer,
    __version__,
    check_names,
    classify,
    confocal_layer,
    confocal_parameter_through,
    confocal_shift,
    field,
    field_homogeneous,
    field_thick_layer,
    force,
    homothetic_layer,
    potential,
    run_check_json,
)

__all__ = [
    "Cap",
    "Classification",
    "ConfocalError",
    "EuclideanEllipsoid",
    "FieldValue",
    "MassSurface",
    "QuadratureSpec",
    "Region",
    "Sheet",
    "SphericalEllipsoid",
    "ThickLayer",
    "__version__",
    "check_names",
    "classify",
    "confocal_layer",
    "confocal_parameter_through",
    "confocal_shift",
    "field",
    "field_homogeneous",
    "field_thick_layer",
    "force",
    "homothetic_layer",
    "potential",
    "run_check",
    "run_check_json",
]


def run_check(name):
    """Runs a named verification check and returns the report as a dict."""
    return _json.loads(run_check_json(name))
