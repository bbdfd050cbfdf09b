"""Exact game semantics for i-Mark(S, D): options, mex tables, outcomes.

Every query here is answered by a dense bottom-up pass over heap sizes
0..N.  All options of n are strictly smaller than n, so one ascending sweep
suffices and there is no recursion.  A single query at heap size n still
costs O(n) time and memory; the closed-form evaluators in
:mod:`imark.closedform` are the fast path.
"""

from __future__ import annotations

import enum
import io
import os
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BadElement, Duplicate, EmptySpec, LimitExceeded

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


DEFAULT_BUDGET = 10**8
MAX_HEAP = 2**64 - 1

MAGIC = b"IMGT"
FORMAT_VERSION = 1


class Convention(enum.Enum):
    NORMAL = "normal"
    MISERE = "misere"

    @classmethod
    def parse(cls, text: str | "Convention") -> "Convention":
        if isinstance(text, Convention):
            return text
        key = text.strip().lower().replace("è", "e")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown convention {text!r}")


class Outcome(str, enum.Enum):
    N = "N"
    P = "P"


@dataclass(frozen=True)
class GameSpec:
    """Subtraction set S and division set D of an i-Mark game."""

    subtraction: tuple[int, ...]
    division: tuple[int, ...]

    def __post_init__(self):
        if not self.subtraction and not self.division:
            raise EmptySpec("S and D are both empty")
        for s in self.subtraction:
            if s < 1:
                raise BadElement(f"subtraction element {s} < 1")
        for d in self.division:
            if d < 2:
                raise BadElement(f"division element {d} < 2")
        if len(set(self.subtraction)) != len(self.subtraction):
            raise Duplicate(f"duplicate in S: {list(self.subtraction)}")
        if len(set(self.division)) != len(self.division):
            raise Duplicate(f"duplicate in D: {list(self.division)}")
        if list(self.subtraction) != sorted(self.subtraction) or list(self.division) != sorted(self.division):
            raise ValueError("GameSpec sets must be sorted; use validate_spec")

    @property
    def max_options(self) -> int:
        return len(self.subtraction) + len(self.division)

    def __str__(self) -> str:
        s = ",".join(map(str, self.subtraction))
        d = ",".join(map(str, self.division))
        return f"i-Mark({{{s}}},{{{d}}})"


def validate_spec(S: Iterable[int], D: Iterable[int]) -> GameSpec:
    S = [int(x) for x in S]
    D = [int(x) for x in D]
    if not S and not D:
        raise EmptySpec("S and D are both empty")
    for s in S:
        if s < 1:
            raise BadElement(f"subtraction element {s} < 1")
        if s > MAX_HEAP:
            raise BadElement(f"subtraction element {s} exceeds 64 bits")
    for d in D:
        if d < 2:
            raise BadElement(f"division element {d} < 2")
        if d > MAX_HEAP:
            raise BadElement(f"division element {d} exceeds 64 bits")
    if len(set(S)) != len(S):
        raise Duplicate(f"duplicate in S: {S}")
    if len(set(D)) != len(D):
        raise Duplicate(f"duplicate in D: {D}")
    return GameSpec(tuple(sorted(S)), tuple(sorted(D)))


def _check_heap(n: int) -> int:
    n = int(n)
    if n < 0:
        raise ValueError(f"heap size must be nonnegative, got {n}")
    if n > MAX_HEAP:
        raise ValueError(f"heap size {n} exceeds 64 bits")
    return n


def options(spec: GameSpec, n: int) -> list[int]:
    """Heap sizes reachable from ``n`` in one move, deduplicated and ascending."""
    n = _check_heap(n)
    opts = {n - s for s in spec.subtraction if s <= n}
    if n > 0:
        opts.update(n // d for d in spec.division if n % d == 0)
    return sorted(opts)


@njit(cache=True)
def _fill_grundy(S, D, out):  # pragma: no cover - compiled
    k = S.shape[0] + D.shape[0]
    stamp = np.zeros(k + 2, np.int64)
    for n in range(out.shape[0]):
        mark = n + 1
        for i in range(S.shape[0]):
            s = S[i]
            if s <= n:
                stamp[out[n - s]] = mark
        if n > 0:
            for i in range(D.shape[0]):
                d = D[i]
                if n % d == 0:
                    stamp[out[n // d]] = mark
        m = 0
        while stamp[m] == mark:
            m += 1
        out[n] = m


@njit(cache=True)
def _fill_misere(S, D, out):  # pragma: no cover - compiled
    # out[n] = 1 for P-positions; terminal positions are N under misere play.
    for n in range(out.shape[0]):
        has_option = False
        to_p = False
        for i in range(S.shape[0]):
            s = S[i]
            if s <= n:
                has_option = True
                if out[n - s] == 1:
                    to_p = True
        if n > 0:
            for i in range(D.shape[0]):
                d = D[i]
                if n % d == 0:
                    has_option = True
                    if out[n // d] == 1:
                        to_p = True
        out[n] = 1 if (has_option and not to_p) else 0


def _as_int_array(values: Sequence[int]) -> np.ndarray:
    # Elements above the table size can never apply; clamp to keep int64 math exact.
    return np.array([min(v, 2**62) for v in values], dtype=np.int64)


def _check_budget(N: int, budget: int | None) -> None:
    if budget is None:
        budget = DEFAULT_BUDGET
    if N < 0:
        raise ValueError(f"limit must be nonnegative, got {N}")
    if N + 1 > budget:
        raise LimitExceeded(f"table of {N + 1} entries exceeds oracle budget {budget}")


@dataclass(frozen=True, eq=False)
class GrundyTable:
    spec: GameSpec
    values: np.ndarray

    @property
    def limit(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def grundy(self, n: int) -> int:
        if not 0 <= n <= self.limit:
            raise LimitExceeded(f"heap {n} outside table 0..{self.limit}")
        return int(self.values[n])

    def outcomes(self) -> np.ndarray:
        """Boolean array, True at normal-play P-positions."""
        return self.values == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrundyTable):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.values, other.values)

    # -- serialization ---------------------------------------------------
    def to_bytes(self) -> bytes:
        buf = io.BytesIO()
        buf.write(MAGIC)
        buf.write(struct.pack("<B", FORMAT_VERSION))
        buf.write(struct.pack("<Q", len(self.spec.subtraction)))
        for s in self.spec.subtraction:
            buf.write(struct.pack("<Q", s))
        buf.write(struct.pack("<Q", len(self.spec.division)))
        for d in self.spec.division:
            buf.write(struct.pack("<Q", d))
        buf.write(struct.pack("<Q", self.limit))
        buf.write(self.values.astype(np.uint8).tobytes())
        return buf.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "GrundyTable":
        if data[:4] != MAGIC:
            raise ValueError("not an IMGT table cache")
        (version,) = struct.unpack_from("<B", data, 4)
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported IMGT version {version}")
        pos = 5

        def read_u64():
            nonlocal pos
            (x,) = struct.unpack_from("<Q", data, pos)
            pos += 8
            return x

        S = [read_u64() for _ in range(read_u64())]
        D = [read_u64() for _ in range(read_u64())]
        N = read_u64()
        body = data[pos:]
        if len(body) != N + 1:
            raise ValueError(f"IMGT body has {len(body)} values, header says {N + 1}")
        values = np.frombuffer(body, dtype=np.uint8).copy()
        values.setflags(write=False)
        return cls(validate_spec(S, D), values)

    def save(self, path: str | os.PathLike) -> Path:
        path = Path(path)
        path.write_bytes(self.to_bytes())
        return path

    @classmethod
    def load(cls, path: str | os.PathLike) -> "GrundyTable":
        return cls.from_bytes(Path(path).read_bytes())

    def to_csv(self) -> str:
        lines = ["n,g"]
        lines.extend(f"{n},{int(g)}" for n, g in enumerate(self.values))
        return "\n".join(lines) + "\n"


def build_table(spec: GameSpec, N: int, budget: int | None = None) -> GrundyTable:
    """Dense g-values of heaps 0..N by a single ascending mex pass."""
    _check_budget(N, budget)
    if spec.max_options > 255:
        raise ValueError("g-values are stored as bytes; |S| + |D| must be <= 255")
    out = np.zeros(N + 1, dtype=np.uint8)
    _fill_grundy(_as_int_array(spec.subtraction), _as_int_array(spec.division), out)
    out.setflags(write=False)
    return GrundyTable(spec, out)


def misere_table(spec: GameSpec, N: int, budget: int | None = None) -> np.ndarray:
    """Boolean array over 0..N, True where the heap is a misere P-position."""
    _check_budget(N, budget)
    out = np.zeros(N + 1, dtype=np.uint8)
    _fill_misere(_as_int_array(spec.subtraction), _as_int_array(spec.division), out)
    return out.astype(bool)


def outcome_table(spec: GameSpec, convention: Convention, N: int, budget: int | None = None) -> np.ndarray:
    """Boolean P-position mask over 0..N under either convention."""
    convention = Convention.parse(convention)
    if convention is Convention.NORMAL:
        return build_table(spec, N, budget).outcomes()
    return misere_table(spec, N, budget)


def outcome(spec: GameSpec, convention: Convention, n: int, budget: int | None = None) -> Outcome:
    n = _check_heap(n)
    is_p = outcome_table(spec, convention, n, budget)[n]
    return Outcome.P if is_p else Outcome.N


def grundy(spec: GameSpec, n: int, budget: int | None = None) -> int:
    n = _check_heap(n)
    return int(build_table(spec, n, budget).values[n])


def outcome_string(mask: Iterable[bool]) -> str:
    return "".join("P" if p else "N" for p in mask)


def mex(values: Iterable[int]) -> int:
    seen = set(values)
    m = 0
    while m in seen:
        m += 1
    return m


def check_mex(table: GrundyTable) -> list[int]:
    """Heap sizes whose stored value disagrees with the mex of its options.

    Recomputes every entry from :func:`options` independently of the fill
    order used by :func:`build_table`; an empty list means the table is
    self-consistent.
    """
    vals = table.values
    bad = []
    for n in range(len(vals)):
        if int(vals[n]) != mex(int(vals[m]) for m in options(table.spec, n)):
            bad.append(n)
    return bad
