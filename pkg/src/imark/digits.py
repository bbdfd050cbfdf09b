"""Base-b digit helpers: trailing zeros, stripped values, binary popcount."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadBase


@dataclass(frozen=True)
class DigitProfile:
    n: int
    base: int
    trailing_zeros: int
    stripped: int
    one_digits: int | None = None


def trailing_zeros(n: int, b: int = 2) -> int:
    """Number of trailing zero digits of ``n`` written in base ``b`` (0 for n == 0)."""
    if n <= 0:
        return 0
    if b == 2:
        return (n & -n).bit_length() - 1
    z = 0
    while n % b == 0:
        n //= b
        z += 1
    return z


def strip(n: int, b: int = 2) -> tuple[int, int]:
    """Return ``(z, v)`` with ``n == v * b**z`` and ``b`` not dividing ``v``.

    ``strip(0, b)`` is ``(0, 0)`` by convention.
    """
    if b < 2:
        raise BadBase(f"base must be >= 2, got {b}")
    if n <= 0:
        return 0, 0
    if b == 2:
        z = (n & -n).bit_length() - 1
        return z, n >> z
    z = 0
    while n % b == 0:
        n //= b
        z += 1
    return z, n


def profile(n: int, b: int = 2) -> DigitProfile:
    if b < 2:
        raise BadBase(f"base must be >= 2, got {b}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    z, v = strip(n, b)
    ones = bin(n).count("1") if b == 2 else None
    return DigitProfile(n=n, base=b, trailing_zeros=z, stripped=v, one_digits=ones)


def stripped_equal(n: int, m: int, b: int = 2) -> bool:
    return strip(n, b)[1] == strip(m, b)[1]


def to_digits(n: int, b: int) -> list[int]:
    """Most-significant-first digit list of ``n`` in base ``b``."""
    if b < 2:
        raise BadBase(f"base must be >= 2, got {b}")
    if n == 0:
        return [0]
    out = []
    while n:
        n, r = divmod(n, b)
        out.append(r)
    return out[::-1]
