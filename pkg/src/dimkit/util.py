"""Shared helpers: surface normalization, number formatting, seeded RNG
derivation, byte-span arithmetic."""

from __future__ import annotations

import hashlib
import random
import unicodedata

_ASCII_UPPER = str.maketrans({chr(c): chr(c + 32) for c in range(ord("A"), ord("Z") + 1)})


def normalize_surface(text: str) -> str:
    """Canonical form used for every surface lookup and index build.

    Trim, collapse internal whitespace to single spaces, fold ASCII
    letters to lowercase, compose to NFC.  Applied identically when
    building indexes and when querying them.
    """
    text = unicodedata.normalize("NFC", text)
    text = " ".join(text.split())
    return text.translate(_ASCII_UPPER)


def format_number(x: float) -> str:
    """Shortest decimal form that round-trips to x; integers drop the
    trailing '.0' (avoids "150000.0克" artifacts)."""
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"cannot format non-finite value {x!r}")
    if float(x).is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def format_plain(x: float) -> str:
    """Like format_number but never scientific notation; used where the
    output must re-tokenize as digits and operators only."""
    s = format_number(x)
    if "e" in s or "E" in s:
        from decimal import Decimal

        s = format(Decimal(repr(float(x))), "f")
        if "." in s:
            s = s.rstrip("0").rstrip(".")
    return s


def derive_seed(seed: int, *labels: object) -> int:
    """Stable sub-seed from a master seed and a label path.

    All randomness in batch commands flows from one --seed through this,
    so independent sub-tasks never share or race an RNG stream.
    """
    key = "|".join([str(seed), *[str(x) for x in labels]])
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(seed: int, *labels: object) -> random.Random:
    return random.Random(derive_seed(seed, *labels))


def byte_length(text: str) -> int:
    return len(text.encode("utf-8"))


def byte_slice(text: str, start: int, end: int) -> str:
    """Slice a str by UTF-8 byte offsets (spans must lie on character
    boundaries, which every span produced by this package does)."""
    return text.encode("utf-8")[start:end].decode("utf-8")


def byte_replace(text: str, start: int, end: int, replacement: str) -> str:
    raw = text.encode("utf-8")
    return (raw[:start] + replacement.encode("utf-8") + raw[end:]).decode("utf-8")


def char_to_byte_offsets(text: str) -> list[int]:
    """Prefix table mapping character index -> byte offset; one extra
    entry at the end equal to the total byte length."""
    offsets = [0]
    total = 0
    for ch in text:
        total += len(ch.encode("utf-8"))
        offsets.append(total)
    return offsets
