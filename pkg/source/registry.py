"""Lookup table from CLI bound names to the functions that compute them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Union

from . import bounds, magic
from .channels import BidirectionalChannel, QuantumChannel
from .config import Settings
from .errors import ContractViolation
from .types import BoundKind, BoundResult

AnyChannel = Union[QuantumChannel, BidirectionalChannel]


@dataclass(frozen=True)
class BoundEntry:
    name: str
    func: Callable[..., BoundResult]
    takes_level: bool
    channel_type: type
    description: str = ""


def _entry(kind: BoundKind, func: Callable[..., BoundResult], takes_level: bool, channel_type: type, description: str) -> BoundEntry:
    return BoundEntry(kind.value, func, takes_level, channel_type, description)


_Q, _BI = QuantumChannel, BidirectionalChannel

BOUNDS: Dict[str, BoundEntry] = {
    e.name: e
    for e in (
        _entry(BoundKind.HOLEVO_WERNER, bounds.holevo_werner, False, _Q, "Holevo-Werner quantum capacity bound"),
        _entry(BoundKind.MAX_RAINS, bounds.max_rains, False, _Q, "max-Rains information"),
        _entry(BoundKind.MAX_RAINS_THETA, bounds.max_rains_theta, False, _Q, "max-Rains information, Theta form"),
        _entry(BoundKind.RAINS_GEOMETRIC, bounds.rains_geometric, True, _Q, "geometric Rains information"),
        _entry(BoundKind.RAINS_THETA_GEOMETRIC, bounds.rains_theta_geometric, True, _Q, "geometric Theta-information"),
        _entry(BoundKind.BI_HOLEVO_WERNER, bounds.bi_holevo_werner, False, _BI, "bidirectional Holevo-Werner bound"),
        _entry(BoundKind.BI_MAX_RAINS, bounds.bi_max_rains, False, _BI, "bidirectional max-Rains information"),
        _entry(BoundKind.BI_THETA_GEOMETRIC, bounds.bi_theta_geometric, True, _BI, "bidirectional geometric Theta-information"),
        _entry(BoundKind.E_MAX, bounds.e_max, False, _Q, "max-relative entropy of entanglement"),
        _entry(BoundKind.E_MAX_SIGMA, bounds.e_max_sigma, False, _Q, "max-relative entropy of entanglement, Sigma form"),
        _entry(BoundKind.E_ALPHA, bounds.e_alpha, True, _Q, "geometric relative entropy of entanglement"),
        _entry(BoundKind.E_ALPHA_SIGMA, bounds.e_alpha_sigma, True, _Q, "geometric Sigma-information"),
        _entry(BoundKind.C_BETA, bounds.c_beta, False, _Q, "classical capacity bound C_beta"),
        _entry(BoundKind.C_ZETA, bounds.c_zeta, False, _Q, "classical capacity bound C_zeta"),
        _entry(BoundKind.UPSILON_MAX, bounds.upsilon_max, False, _Q, "max Upsilon-information"),
        _entry(BoundKind.UPSILON_GEOMETRIC, bounds.upsilon_geometric, True, _Q, "geometric Upsilon-information"),
        _entry(BoundKind.MANA, magic.mana_bound, False, _Q, "mana of a channel"),
        _entry(BoundKind.THAUMA_MAX, magic.thauma_max, False, _Q, "max-Thauma of a channel"),
        _entry(BoundKind.THAUMA_GEOMETRIC, magic.thauma_geometric, True, _Q, "geometric Thauma of a channel"),
    )
}


def bound_names() -> List[str]:
    return list(BOUNDS)


def get_bound(name: str) -> BoundEntry:
    try:
        return BOUNDS[name]
    except KeyError:
        raise ContractViolation(f"Unknown bound: {name!r}. Supported: {', '.join(BOUNDS)}") from None


def evaluate_bound(
    name: str,
    channel: AnyChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    """Evaluate one named bound; `level` is ignored by bounds that do not take one."""
    entry = get_bound(name)
    if not isinstance(channel, entry.channel_type):
        raise ContractViolation(
            f"{name} expects a {entry.channel_type.__name__}, got {type(channel).__name__}"
        )
    if entry.takes_level:
        return entry.func(channel, level=level, settings=settings)
    return entry.func(channel, settings=settings)
