"""
Numerical invariants of DG-rings and DG-modules.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Union

from src.dg_cohen_macaulay.models.homalg import PresentedModule

NEG_INF = float("-inf")
POS_INF = float("inf")

Extended = Union[int, float]


def encode_extended(value: Extended) -> Union[int, str]:
    """JSON form of an extended integer: infinities become ``"-inf"`` / ``"inf"``."""
    if value == NEG_INF:
        return "-inf"
    if value == POS_INF:
        return "inf"
    return int(value)


@dataclass(frozen=True)
class RGammaProfile:
    """Degrees i with Hⁱ_m ≠ 0, each witnessed by a nonzero Ext module into P."""
    degrees: FrozenSet[int]
    witnesses: Dict[int, PresentedModule] = field(default_factory=dict, compare=False, hash=False)
    route: str = "duality"

    @property
    def depth(self) -> Extended:
        return min(self.degrees) if self.degrees else NEG_INF

    @property
    def top(self) -> Extended:
        return max(self.degrees) if self.degrees else NEG_INF

    @property
    def amplitude(self) -> Extended:
        return self.top - self.depth if self.degrees else NEG_INF

    def to_dict(self) -> Dict[str, Any]:
        return {"degrees": sorted(self.degrees), "route": self.route}


@dataclass(frozen=True)
class InvariantBundle:
    """amp, sup, inf, depth, sequential depth, lc.dim and the RΓ profile of one object."""
    amp: Extended
    sup: Extended
    inf: Extended
    depth: Extended
    seq_depth: Extended
    lc_dim: Extended
    rgamma: RGammaProfile
    cohomology_dims: Dict[int, int] = field(default_factory=dict, compare=False, hash=False)
    dim_h0: int = -1

    @property
    def rgamma_amp(self) -> Extended:
        return self.rgamma.amplitude

    def to_dict(self) -> Dict[str, Any]:
        return {
            "amp": encode_extended(self.amp),
            "sup": encode_extended(self.sup),
            "inf": encode_extended(self.inf),
            "depth": encode_extended(self.depth),
            "seq_depth": encode_extended(self.seq_depth),
            "lc_dim": encode_extended(self.lc_dim),
            "rgamma_amp": encode_extended(self.rgamma_amp),
            "rgamma_profile": sorted(self.rgamma.degrees),
            "cohomology_dims": {str(k): v for k, v in sorted(self.cohomology_dims.items())},
            "dim_h0": self.dim_h0,
        }
