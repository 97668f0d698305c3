"""A token-passing graph machine for call-by-need, checked against a storeless abstract machine."""

from .cost import dgoim_bound, efficiency_fit, transition_cost
from .machine import dgoim_run, initial_state, step_rewrites_first
from .parser import ParseError, parse, parse_term
from .sam import RunStats, sam_check_bounds, sam_run
from .simulation import lockstep, related
from .terms import App, Lam, Sub, Var, show, size
from .translation import translate_term

__all__ = [
    "App", "Lam", "ParseError", "RunStats", "Sub", "Var",
    "dgoim_bound", "dgoim_run", "efficiency_fit", "initial_state", "lockstep",
    "parse", "parse_term", "related", "sam_check_bounds", "sam_run", "show",
    "size", "step_rewrites_first", "transition_cost", "translate_term",
]
