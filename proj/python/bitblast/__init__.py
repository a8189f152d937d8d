"""Compile bit-level programs into propositional encodings (CNF/ANF/DNF).

The heavy lifting lives in the C++ extension; this package re-exports the
public surface: translate(), run(), verify(), invert() and the Translation
handle they produce/consume.
"""

from ._core import (  # noqa: F401
    CompileError,
    Translation,
    invert,
    run,
    translate,
    verify,
)

__all__ = ["CompileError", "Translation", "translate", "run", "verify", "invert"]
