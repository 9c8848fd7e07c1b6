"""Shared comparison helpers for tests."""

import mpmath


def agrees_to(value, reference: str, digits: int) -> bool:
    """True if value rounds to reference at the given number of significant digits."""
    with mpmath.workprec(512):
        ref = mpmath.mpf(reference)
        e = int(mpmath.floor(mpmath.log10(abs(ref))))
        return abs(mpmath.mpf(value) - ref) <= mpmath.mpf(10) ** (e - digits + 1) / 2


def significant_digits(reference: str) -> int:
    return len(reference.replace(".", "").replace("-", "").lstrip("0"))
