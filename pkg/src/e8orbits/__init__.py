"""Regular orbits of central products of W(E8) and its relatives on F_p^8."""
__version__ = "0.1.0"

from .rootdata import RootDatum, build_root_datum, coxeter_length, e8, named_datum, pairing, act  # noqa: E402
from .alcove import (  # noqa: E402
    enumerate_alcove_points,
    in_closed_alcove,
    in_open_alcove,
    reduce_to_alcove,
    scalar_transporter_table,
    stabilizer_info,
)
from .families import Family, decide_regular, theorem_table  # noqa: E402
from .orbitscan import ScanConfig, scan_rho_orbit  # noqa: E402

__all__ = [
    "Family",
    "RootDatum",
    "ScanConfig",
    "act",
    "build_root_datum",
    "coxeter_length",
    "decide_regular",
    "e8",
    "enumerate_alcove_points",
    "in_closed_alcove",
    "in_open_alcove",
    "named_datum",
    "pairing",
    "reduce_to_alcove",
    "scalar_transporter_table",
    "scan_rho_orbit",
    "stabilizer_info",
    "theorem_table",
]
