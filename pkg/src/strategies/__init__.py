"""
Entry strategies and their closed-form throughput.
"""

from .compact_lanes import CompactLanesStrategy
from .hex_packing import HexConfig, HexPackingStrategy
from .parallel_lanes import ParallelLanesStrategy
from .touch_run import TouchRunConfig, TouchRunStrategy

__all__ = [
    "CompactLanesStrategy",
    "HexConfig",
    "HexPackingStrategy",
    "ParallelLanesStrategy",
    "TouchRunConfig",
    "TouchRunStrategy",
]
