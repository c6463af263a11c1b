"""Command-line front end and problem-file parsing."""

from .expr import ExprError, parse, parse_poly
from .main import build_parser, exit_code_for, main
from .problem import ProblemError, load_problem, parse_problem

__all__ = ["ExprError", "ProblemError", "build_parser", "exit_code_for", "load_problem", "main", "parse", "parse_poly", "parse_problem"]
