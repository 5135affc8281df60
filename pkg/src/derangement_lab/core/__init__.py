"""Permutations and finite permutation groups."""

from derangement_lab.core.permutation import (
    Permutation,
    compose,
    fixed_points,
    format_cycles,
    identity,
    inverse,
    is_derangement,
    parse_cycles,
)
from derangement_lab.core.group import (
    CosetAction,
    PermGroup,
    Subgroup,
    all_subgroups,
    enumerate_group,
)

__all__ = [
    "Permutation",
    "compose",
    "fixed_points",
    "format_cycles",
    "identity",
    "inverse",
    "is_derangement",
    "parse_cycles",
    "CosetAction",
    "PermGroup",
    "Subgroup",
    "all_subgroups",
    "enumerate_group",
]
