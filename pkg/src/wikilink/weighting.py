"""Edge-weight algebra: normalization, statistical/semantic fusion, path means.

Every retrieval mode is a triple of (mixing coefficient, normalization
scope, path aggregation).  The four shipped modes:

============ ===== ============= ===========
mode         alpha normalization aggregation
============ ===== ============= ===========
general      0.3   global        none
specific     0.2   local         none
basic        0.3   global        geometric
professional 0.2   local         harmonic
============ ===== ============= ===========

Two fusion formulas are supported.  The default ("strength") mixes the
semantic weight and the normalized statistical weight so that larger
means more strongly associated: ``s = a*w_sem + (1-a)*w_norm``, and the
shortest-path cost of an edge is ``1 - s``.  The alternative ("literal")
mixes the semantic *distance* instead: ``v = a*(1-w_sem) + (1-a)*w_norm``
and uses ``v`` directly as the cost; it exists for reproduction studies
and is selected with ``weight_formula="literal"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MODE_KINDS = ("explore_general", "explore_specific", "path_basic", "path_professional")
WEIGHT_FORMULAS = ("strength", "literal")

DEFAULT_ALPHA_GENERAL = 0.3
DEFAULT_ALPHA_SPECIFIC = 0.2


@dataclass(frozen=True)
class Mode:
    """Resolved parameters of one retrieval mode."""

    kind: str
    alpha: float
    normalization: str   # "global" | "local"
    aggregation: str     # "none" | "geometric" | "harmonic"

    @property
    def statistical_coefficient(self) -> float:
        return 1.0 - self.alpha


_MODE_TABLE = {
    "explore_general": ("global", "none", "general"),
    "explore_specific": ("local", "none", "specific"),
    "path_basic": ("global", "geometric", "general"),
    "path_professional": ("local", "harmonic", "specific"),
}


def mode(kind: str, alpha_general: float = DEFAULT_ALPHA_GENERAL,
         alpha_specific: float = DEFAULT_ALPHA_SPECIFIC) -> Mode:
    """Resolve a mode name to its parameters, honoring alpha overrides."""
    if kind not in _MODE_TABLE:
        raise ValueError(f"unknown mode {kind!r}; expected one of {MODE_KINDS}")
    normalization, aggregation, alpha_class = _MODE_TABLE[kind]
    alpha = alpha_general if alpha_class == "general" else alpha_specific
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0,1], got {alpha}")
    return Mode(kind, alpha, normalization, aggregation)


@dataclass(frozen=True)
class EdgeStrength:
    """A fused edge weight plus the components it was derived from."""

    value: float
    w_semantic: float
    w_norm: float


@dataclass(frozen=True)
class PathScore:
    """A simple path, its per-edge strengths and their aggregate."""

    nodes: tuple[int, ...]
    strengths: tuple[float, ...]
    aggregate: float

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1


def global_normalize(w_ij: int, w_min: int, w_max: int) -> float:
    """Min-max scale a raw weight against the whole network's extremes.

    Degenerate single-weight networks (w_max == w_min) normalize to 1.0.
    """
    if not w_min <= w_ij <= w_max:
        raise ValueError(f"raw weight {w_ij} outside [{w_min}, {w_max}]")
    if w_max == w_min:
        return 1.0
    return (w_ij - w_min) / (w_max - w_min)


def local_normalize(w_ij: float, s_i: float) -> float:
    """Raw weight relative to the exit node's total incident weight.

    Directional: normalizing the same edge from the other endpoint uses
    that endpoint's strength sum.
    """
    if s_i <= 0:
        raise ValueError("strength sum must be positive for a node with an edge")
    if w_ij > s_i:
        raise ValueError(f"raw weight {w_ij} exceeds strength sum {s_i}")
    return w_ij / s_i


def combined_strength(w_semantic: float, w_norm: float, m: Mode) -> EdgeStrength:
    """Convex mix of the semantic weight and a normalized statistical weight."""
    _check_unit("w_semantic", w_semantic)
    _check_unit("w_norm", w_norm)
    value = m.alpha * w_semantic + (1.0 - m.alpha) * w_norm
    return EdgeStrength(value, w_semantic, w_norm)


def literal_weight(w_semantic: float, w_norm: float, m: Mode) -> float:
    """The printed-form mix using the semantic distance term ``1 - w_semantic``."""
    _check_unit("w_semantic", w_semantic)
    _check_unit("w_norm", w_norm)
    return m.alpha * (1.0 - w_semantic) + (1.0 - m.alpha) * w_norm


def edge_cost(strength: EdgeStrength | float) -> float:
    """Distance transform ``1 - strength``, strictly decreasing in strength."""
    value = strength.value if isinstance(strength, EdgeStrength) else strength
    return 1.0 - value


def geometric_mean(strengths: list[float]) -> float:
    """n-th root of the product, computed in log space.

    A zero element yields 0.0 by convention (the product vanishes).
    """
    if not strengths:
        raise ValueError("geometric mean of an empty list")
    if any(s < 0 for s in strengths):
        raise ValueError("strengths must be non-negative")
    if any(s == 0 for s in strengths):
        return 0.0
    return math.exp(sum(math.log(s) for s in strengths) / len(strengths))


def harmonic_mean(strengths: list[float]) -> float:
    """n over the sum of reciprocals; 0.0 if any element is 0 (limit convention)."""
    if not strengths:
        raise ValueError("harmonic mean of an empty list")
    if any(s < 0 for s in strengths):
        raise ValueError("strengths must be non-negative")
    if any(s == 0 for s in strengths):
        return 0.0
    return len(strengths) / sum(1.0 / s for s in strengths)


def aggregate_path(strengths: list[float], m: Mode) -> float:
    """Apply the mode's path aggregation to per-edge values."""
    if m.aggregation == "geometric":
        return geometric_mean(strengths)
    if m.aggregation == "harmonic":
        return harmonic_mean(strengths)
    raise ValueError(f"mode {m.kind} has no path aggregation")


def value_array(sem: np.ndarray, norm: np.ndarray, alpha: float,
                weight_formula: str = "strength") -> np.ndarray:
    """Vectorized per-edge value under either fusion formula."""
    if weight_formula == "strength":
        return alpha * sem + (1.0 - alpha) * norm
    if weight_formula == "literal":
        return alpha * (1.0 - sem) + (1.0 - alpha) * norm
    raise ValueError(f"unknown weight formula {weight_formula!r}")


def cost_array(values: np.ndarray, weight_formula: str = "strength") -> np.ndarray:
    """Dijkstra cost per edge: 1 - value for strength, the value itself for literal."""
    if weight_formula == "strength":
        return 1.0 - values
    if weight_formula == "literal":
        return values.copy()
    raise ValueError(f"unknown weight formula {weight_formula!r}")


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0,1], got {value}")
