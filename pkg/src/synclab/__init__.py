"""Workbench for synchronizing automata with two cycle lengths."""
from .automaton import (
    Dfa,
    Digraph,
    StateSet,
    apply,
    format_word,
    is_strongly_connected,
    parse,
    parse_word,
    serialize,
    simple_cycle_lengths,
    underlying_digraph,
)
from .errors import SyncLabError
from .families import (
    FamilyParams,
    Variant,
    build_cerny,
    build_dm,
    build_dm_digraph,
    build_wielandt,
    dm_rt_formula,
    dm_witness,
    verify_family,
    wielandt_rt_formula,
    wielandt_witness,
)
from .solver import ResetResult, check_reset_word, frobenius, is_synchronizing, reset_threshold

__version__ = "0.1.0"
