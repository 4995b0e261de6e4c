"""ufcheck: a small proof checker for dependent type theory with
univalence, an axiom-dependency tracker, and a checked object-language
library of foundational definitions."""

from .check import (CheckerConfig, Declaration, GlobalEnv, add_decl,
                    assumptions, check, infer, infer_universe)
from .conversion import (DEFAULT_MAX_STEPS, StepBudget, definitionally_equal,
                         normalize)
from .diagnostics import Diagnostic, SourceSpan, StepLimitExceeded
from .elaborate import elaborate_decl, elaborate_term
from .library import (LibraryManifest, LibraryReport, audit_budgets,
                      bundled_lib_dir, bundled_manifest_path, check_library,
                      parse_manifest)
from .pipeline import CheckResult, check_files, deep_call
from .printer import render_term
from .surface import parse_file, parse_term_text, resolve_imports
from .terms import (alpha_equal, const_names, occurs_free, shift, substitute)

__version__ = "0.1.0"

__all__ = [
    "CheckerConfig", "Declaration", "GlobalEnv", "add_decl", "assumptions",
    "check", "infer", "infer_universe", "DEFAULT_MAX_STEPS", "StepBudget",
    "definitionally_equal", "normalize", "Diagnostic", "SourceSpan",
    "StepLimitExceeded", "elaborate_decl", "elaborate_term",
    "LibraryManifest", "LibraryReport", "audit_budgets", "bundled_lib_dir",
    "bundled_manifest_path", "check_library", "parse_manifest",
    "CheckResult", "check_files", "deep_call", "render_term", "parse_file",
    "parse_term_text", "resolve_imports", "alpha_equal", "const_names",
    "occurs_free", "shift", "substitute", "__version__",
]
