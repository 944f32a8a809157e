"""Error types shared across the package.

Two failure families matter to callers: malformed input (CLI exit 1,
HTTP 400) and refusal to run past a size cap (CLI exit 2, HTTP 409).
Everything else is a plain ValueError from the constructing code.
"""
from __future__ import annotations


class FormatError(ValueError):
    """A file or expression failed to parse or violated its format contract."""


class CapExceeded(RuntimeError):
    """An instance exceeds a configured size cap; refusing rather than hanging."""

    def __init__(self, what: str, value, cap) -> None:
        super().__init__(f"{what} = {value} exceeds cap {cap}")
        self.what = what
        self.value = value
        self.cap = cap
