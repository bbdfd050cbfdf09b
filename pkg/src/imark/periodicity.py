"""Finite-prefix periodicity: detection, validation, refutation, exception census.

A :class:`PeriodicityCertificate` only ever claims consistency with the
prefix it was checked against (``checked_prefix``).  It says nothing about
the infinite sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import engine
from .engine import GameSpec, GrundyTable
from .errors import InconsistentTail, PrefixTooShort

DEFAULT_MIN_REPS = 3
DEFAULT_TAIL_REPS = 10


@dataclass(frozen=True)
class PeriodicityCertificate:
    preperiod: int
    period: int
    exceptions: tuple[int, ...] = ()
    checked_prefix: int = 0

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if self.preperiod < 0:
            raise ValueError("preperiod must be >= 0")
        exc = tuple(sorted(set(self.exceptions)))
        if len(exc) != len(self.exceptions):
            raise ValueError("exception residues must be distinct")
        if any(not 0 <= e < self.period for e in exc):
            raise ValueError("exception residues must lie in [0, period)")
        if len(exc) >= self.period:
            raise ValueError("need fewer exception residues than the period length")
        object.__setattr__(self, "exceptions", exc)

    @property
    def ell(self) -> int:
        return len(self.exceptions)

    @property
    def kind(self) -> str:
        return "exact" if not self.exceptions else "almost"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "preperiod": self.preperiod,
            "period": self.period,
            "exceptions": list(self.exceptions),
            "checked_prefix": self.checked_prefix,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "PeriodicityCertificate":
        return cls(d["preperiod"], d["period"], tuple(d.get("exceptions", ())), d.get("checked_prefix", 0))


@dataclass(frozen=True)
class ExceptionCensus:
    period: int
    pattern: tuple
    exception_positions: tuple[int, ...] = field(default=())
    excluded_residues: tuple[int, ...] = ()
    deviations: tuple[int, ...] = ()

    @property
    def preperiod_length(self) -> int:
        return self.exception_positions[-1] + 1 if self.exception_positions else 0

    @property
    def exception_count(self) -> int:
        return len(self.exception_positions)

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "preperiod_length": self.preperiod_length,
            "exception_count": self.exception_count,
            "exception_positions": list(self.exception_positions),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _as_array(seq) -> np.ndarray:
    arr = np.asarray(seq)
    if arr.dtype.kind in "US":
        # outcome strings like "NNPN" or lists of "N"/"P"
        arr = np.array([c == "P" for c in "".join(arr.tolist())])
    return arr


def _last_mismatch(arr: np.ndarray, p: int) -> np.ndarray:
    """Per residue r < p, the largest i with s_i != s_{i+p} and i % p == r (-1 if none)."""
    last = np.full(p, -1, dtype=np.int64)
    if len(arr) <= p:
        return last
    idx = np.flatnonzero(arr[:-p] != arr[p:])
    if len(idx):
        np.maximum.at(last, idx % p, idx)
    return last


def validate(seq, cert: PeriodicityCertificate) -> bool:
    """True iff s_i == s_{i+p} for every q <= i < len - p with i % p outside E."""
    arr = _as_array(seq)
    p, q = cert.period, cert.preperiod
    if len(arr) <= p:
        return True
    i = np.arange(q, len(arr) - p)
    if len(i) == 0:
        return True
    keep = ~np.isin(i % p, cert.exceptions)
    i = i[keep]
    return bool(np.all(arr[i] == arr[i + p]))


def detect(seq, max_p: int, ell_max: int = 0, min_reps: int = DEFAULT_MIN_REPS) -> PeriodicityCertificate | None:
    """Certificate minimizing (ell, period, preperiod) over the whole prefix.

    Every candidate must hold on at least ``min_reps * max_p`` terms after
    its preperiod, i.e. ``min_reps`` repetitions of the longest period
    searched, so that short periods cannot win on a nearly empty tail.
    Returns None when nothing with ell <= ell_max and period <= max_p fits.
    """
    arr = _as_array(seq)
    L = len(arr)
    if max_p < 1:
        raise ValueError("max_p must be >= 1")
    if L < (min_reps + 1) * max_p:
        raise PrefixTooShort(f"prefix of length {L} < (min_reps + 1) * max_p = {(min_reps + 1) * max_p}")
    lasts = {p: _last_mismatch(arr, p) for p in range(1, max_p + 1)}
    for ell in range(ell_max + 1):
        for p in range(1, max_p + 1):
            if ell >= p:
                continue
            last = lasts[p]
            # Excluding the ell latest-failing residues minimizes the preperiod.
            order = sorted(range(p), key=lambda r: (-last[r], r))
            excluded = sorted(order[:ell])
            if ell and last[order[ell - 1]] < 0:
                # a smaller ell already does as well
                continue
            rest = order[ell:]
            q = int(last[rest[0]]) + 1 if rest else 0
            if L - q >= min_reps * max_p:
                return PeriodicityCertificate(q, p, tuple(excluded), L)
    return None


def census(seq, p: int, tail_reps: int = DEFAULT_TAIL_REPS, exceptions: Sequence[int] = ()) -> ExceptionCensus:
    """Exceptions of a sequence assumed eventually periodic with period ``p``.

    The periodic pattern is read off the final ``tail_reps`` full periods,
    which must agree with each other.  An exception is a position i whose
    value differs from the value one period later (s_i != s_{i+p}); the last
    exception closes the preperiod.  Positions that merely differ from the
    final pattern are reported separately as ``deviations``.
    """
    arr = _as_array(seq)
    L = len(arr)
    if p < 1:
        raise ValueError("period must be >= 1")
    if L < (tail_reps + 3) * p:
        raise PrefixTooShort(f"prefix of length {L} < (tail_reps + 3) * p = {(tail_reps + 3) * p}")
    excluded = sorted(set(exceptions))
    start = L - tail_reps * p
    tail = arr[start:]
    residues = np.arange(start, L) % p
    pattern = [None] * p
    for r in range(p):
        if r in excluded:
            continue
        vals = tail[residues == r]
        if not np.all(vals == vals[0]):
            raise InconsistentTail(f"residue {r} is not constant over the last {tail_reps} periods")
        pattern[r] = vals[0].item()
    idx = np.arange(L - p)
    keep = ~np.isin(idx % p, excluded)
    exc = idx[keep & (arr[:-p] != arr[p:])]
    head = np.arange(start)
    head = head[~np.isin(head % p, excluded)]
    ref = np.array([arr[0] if v is None else v for v in pattern], dtype=arr.dtype)
    dev = head[arr[head] != ref[head % p]]
    return ExceptionCensus(
        p,
        tuple(pattern),
        tuple(int(i) for i in exc),
        tuple(excluded),
        tuple(int(i) for i in dev),
    )


@dataclass(frozen=True)
class RefutationWitness:
    n: int
    dn: int
    d: int
    g_n: int
    g_dn: int

    def __str__(self) -> str:
        return f"n={self.n} g={self.g_n}, dn={self.dn} g={self.g_dn}"


def refute_grundy_period(
    spec: GameSpec, q: int, p: int, table: GrundyTable | None = None, budget: int | None = None
) -> RefutationWitness:
    """Witness that g is not periodic with preperiod q and period p.

    Takes n = k*p, the smallest such value >= max(q, 1), and d = min(D).
    Then d*n - n is a multiple of p, yet d*n has n as an option so their
    g-values differ.  Both values are read from the oracle; pass a shared
    ``table`` to answer many claims with one build.
    """
    if not spec.division:
        raise ValueError("refutation needs a nonempty division set")
    if p < 1 or q < 0:
        raise ValueError("need p >= 1 and q >= 0")
    d = spec.division[0]
    k = max(1, -(-max(q, 1) // p))
    n = k * p
    dn = d * n
    if table is None or table.limit < dn or table.spec != spec:
        table = engine.build_table(spec, dn, budget)
    g_n, g_dn = int(table.values[n]), int(table.values[dn])
    if g_n == g_dn:  # pragma: no cover - excluded by the mex rule
        raise AssertionError(f"oracle gives g({n}) == g({dn}); table is corrupt")
    return RefutationWitness(n, dn, d, g_n, g_dn)
