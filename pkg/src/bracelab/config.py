"""Resource caps. ``BRACELAB_MAX_ORDER`` in the environment replaces every default."""

from __future__ import annotations

import os

DEFAULT_CAPS = {
    "max_order": 4096,  # direct products and loaded documents
    "subbrace_enumeration": 128,  # all_subbraces / is_dedekind(method="exhaustive")
    "automorphisms": 64,  # order of the abelian group handed to automorphisms()
    "enumeration": 16,  # order of the additive group in enumerate_braces()
    "ybe": 512,  # order of a brace whose solution gets the n^3 braid check
}


class CapExceeded(RuntimeError):
    """A computation would exceed a configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap} (set BRACELAB_MAX_ORDER to raise it)")
        self.what = what
        self.size = size
        self.cap = cap


def cap(name: str) -> int:
    override = os.environ.get("BRACELAB_MAX_ORDER")
    if override:
        return int(override)
    return DEFAULT_CAPS[name]


def enforce(name: str, size: int, limit: int | None = None) -> None:
    limit = cap(name) if limit is None else limit
    if size > limit:
        raise CapExceeded(name, size, limit)
