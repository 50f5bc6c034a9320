"""Python bindings for the metzler-sign library."""

from ._core import (
    DomainError,
    ParseError,
    __version__,
    run,
    sample,
    sign_inverse,
    sign_stable,
    spectral_abscissa,
)

__all__ = [
    "DomainError",
    "ParseError",
    "__version__",
    "run",
    "sample",
    "sign_inverse",
    "sign_stable",
    "spectral_abscissa",
]
