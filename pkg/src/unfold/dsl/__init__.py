"""Surface syntax: annotation parsing, rendering, desugaring to first-order
cursor-loop skeletons, and scenario execution."""

from .parser import (
    CallSpec,
    DeclSpec,
    Invocation,
    Scenario,
    parse_call,
    parse_decl,
    parse_scenario,
    parse_spec_file,
    parse_term_text,
)
from .render import render_call, render_decl, render_term
from .desugar import desugar, desugar_file
from .scenario import Report, ReportRow, run_scenario

__all__ = [
    "CallSpec",
    "DeclSpec",
    "Invocation",
    "Report",
    "ReportRow",
    "Scenario",
    "desugar",
    "desugar_file",
    "parse_call",
    "parse_decl",
    "parse_scenario",
    "parse_spec_file",
    "parse_term_text",
    "render_call",
    "render_decl",
    "render_term",
    "run_scenario",
]
