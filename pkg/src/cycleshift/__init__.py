"""Cyclic shift puzzles: group classification, constructive solving, search and hardness."""

from .perm import Perm, compose, inverse, parity, cycle_decomposition, from_cycles, parse_perm
from .puzzle import Puzzle, ShiftMove, Instance, apply_shift, apply_sequence, compatible
from .classify import classify, detect_family, psi_image, special44_member
from .solver import solve, solve_permutation

__all__ = [
    "Perm",
    "compose",
    "inverse",
    "parity",
    "cycle_decomposition",
    "from_cycles",
    "parse_perm",
    "Puzzle",
    "ShiftMove",
    "Instance",
    "apply_shift",
    "apply_sequence",
    "compatible",
    "classify",
    "detect_family",
    "psi_image",
    "special44_member",
    "solve",
    "solve_permutation",
]
