from .unit_overlay import UnitOverlayFile, load_unit_table

__all__ = [
    "UnitOverlayFile",
    "load_unit_table",
]
