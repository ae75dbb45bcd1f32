"""Network formation games with contracts."""

from ._netform import (
    BoundExceeded,
    DomainError,
    GameSetting,
    IoError,
    decide_independent_set_via_br,
    independence_number,
    is_pne_topology,
    optimal_topology,
    pos_poa,
    read_instance,
    simulate,
)

__all__ = [
    "BoundExceeded",
    "DomainError",
    "GameSetting",
    "IoError",
    "decide_independent_set_via_br",
    "independence_number",
    "is_pne_topology",
    "optimal_topology",
    "pos_poa",
    "read_instance",
    "simulate",
]
