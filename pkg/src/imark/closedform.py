"""O(log n) evaluators for the solved i-Mark families.

Each evaluator answers g-value or outcome queries from residue rules plus a
digit characterization of the one irregular residue class.  Heap sizes below
a family's preperiod are served from a prefix table filled once by the
engine oracle at construction time; evaluators are immutable afterwards.

Families
--------
``Mark``                   classic Mark, floor-division moves n -> n-1, floor(n/2)
``IMark_1_2``              i-Mark({1},{2})
``IMarkRange_Outcome``     i-Mark([1,t-1],{d}), d != 1 mod t (outcomes only)
``IMarkRange_DivT``        i-Mark([1,t-1],{t})
``IMarkRange_Div2``        i-Mark([1,t-1],{2}), t >= 3
``IMark_A2A``              i-Mark({a,2a},{2}); full g for a in {1,2,4}, odd heaps for even a
``MiMarkRange``            misere i-Mark([1,t-1],D), every d != 1 mod t
``MiMark_A2A``             misere i-Mark({a,2a},{2}), a == 2 or a odd
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from . import engine
from .digits import strip, trailing_zeros
from .engine import Convention, GameSpec, Outcome, validate_spec
from .errors import OutsideDomain


@dataclass(frozen=True)
class BootstrapCache:
    """Per-parameter data computed once when an evaluator is built."""

    prefix: tuple[int, ...] = ()
    stripped_set: frozenset[int] = frozenset()

    def __len__(self) -> int:
        return len(self.prefix)


@dataclass(frozen=True)
class MarkSequences:
    a_values: tuple[int, ...]
    b_values: tuple[int, ...]


def gen_mark_sequences(count: int) -> MarkSequences:
    """First ``count`` terms of a_1, a_2, ... and b_0, b_1, ...

    a_n is the least integer not among a_1..a_{n-1}, b_0..b_{n-1};
    b_0 = 0 and b_n = 2 a_n.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    a: list[int] = []
    b = [0]
    used = {0}
    candidate = 0
    while len(a) < count:
        while candidate in used:
            candidate += 1
        a.append(candidate)
        used.add(candidate)
        if len(b) < count:
            b.append(2 * candidate)
            used.add(2 * candidate)
    return MarkSequences(tuple(a), tuple(b[:count]))


def _heap(n: int) -> int:
    n = int(n)
    if n < 0:
        raise ValueError(f"heap size must be nonnegative, got {n}")
    if n > engine.MAX_HEAP:
        raise ValueError(f"heap size {n} exceeds 64 bits")
    return n


def _oracle_prefix(spec: GameSpec, length: int) -> tuple[int, ...]:
    return tuple(int(x) for x in engine.build_table(spec, max(length, 1) - 1).values)


@dataclass(frozen=True)
class FamilyEvaluator:
    """Base class; subclasses implement ``_grundy`` and/or ``_outcome``."""

    tag: ClassVar[str] = ""
    convention: ClassVar[Convention] = Convention.NORMAL
    has_grundy: ClassVar[bool] = True

    spec: GameSpec | None = field(default=None, init=False)
    bootstrap: BootstrapCache = field(default_factory=BootstrapCache, init=False)

    @property
    def params(self) -> dict:
        return {}

    def describe(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.tag}({args})" if args else self.tag

    def options(self, n: int) -> list[int]:
        return engine.options(self.spec, n)

    def in_domain(self, n: int) -> bool:
        return n >= 0

    def grundy(self, n: int) -> int:
        n = _heap(n)
        if not self.has_grundy:
            raise OutsideDomain(f"{self.describe()} determines outcomes only")
        if not self.in_domain(n):
            raise OutsideDomain(f"heap {n} outside the domain of {self.describe()}")
        return self._grundy(n)

    def outcome(self, n: int) -> Outcome:
        n = _heap(n)
        if not self.in_domain(n):
            raise OutsideDomain(f"heap {n} outside the domain of {self.describe()}")
        return Outcome.P if self._is_p(n) else Outcome.N

    def _is_p(self, n: int) -> bool:
        return self._grundy(n) == 0

    def _grundy(self, n: int) -> int:
        raise NotImplementedError

    def _set(self, **kw) -> None:
        for k, v in kw.items():
            object.__setattr__(self, k, v)


# -- normal play ----------------------------------------------------------


@dataclass(frozen=True)
class Mark(FamilyEvaluator):
    """Classic Mark: moves n -> n-1 and n -> floor(n/2)."""

    tag: ClassVar[str] = "Mark"

    def options(self, n: int) -> list[int]:
        n = _heap(n)
        return sorted({n - 1, n // 2}) if n > 0 else []

    def _grundy(self, n: int) -> int:
        if n == 0:
            return 0
        if trailing_zeros(n) % 2:
            return 0
        return 1 if bin(n).count("1") % 2 else 2


@dataclass(frozen=True)
class IMark12(FamilyEvaluator):
    tag: ClassVar[str] = "IMark_1_2"
    PREFIX: ClassVar[int] = 8

    def __post_init__(self):
        spec = validate_spec([1], [2])
        self._set(spec=spec, bootstrap=BootstrapCache(prefix=_oracle_prefix(spec, self.PREFIX)))

    @staticmethod
    def is_two(n: int) -> bool:
        """g(n) == 2 test for even n >= 4 via the binary stripped value."""
        z, v = strip(n, 2)
        if v == 0b11:
            return z % 2 == 1
        return z % 2 == 0

    def _grundy(self, n: int) -> int:
        if n < self.PREFIX:
            return self.bootstrap.prefix[n]
        if n % 2:
            return 0
        return 2 if self.is_two(n) else 1


@dataclass(frozen=True)
class IMarkRangeOutcome(FamilyEvaluator):
    """P-positions of i-Mark([1,t-1],{d}): {qt : q < d} and {qt+1 : q >= d}."""

    tag: ClassVar[str] = "IMarkRange_Outcome"
    has_grundy: ClassVar[bool] = False
    t: int = 2
    d: int = 2

    def __post_init__(self):
        if self.t < 2 or self.d < 2:
            raise ValueError("need t >= 2 and d >= 2")
        if self.d % self.t == 1 % self.t:
            raise ValueError(f"d={self.d} is 1 mod t={self.t}; no theorem applies")
        self._set(spec=validate_spec(range(1, self.t), [self.d]))

    @property
    def params(self) -> dict:
        return {"t": self.t, "d": self.d}

    def _is_p(self, n: int) -> bool:
        q, r = divmod(n, self.t)
        return (r == 0 and q < self.d) or (r == 1 and q >= self.d)


@dataclass(frozen=True)
class IMarkRangeDivT(FamilyEvaluator):
    """i-Mark([1,t-1],{t}); the residue-0 column is decided in base t."""

    tag: ClassVar[str] = "IMarkRange_DivT"
    t: int = 2

    def __post_init__(self):
        t = self.t
        if t < 2:
            raise ValueError("need t >= 2")
        spec = validate_spec(range(1, t), [t])
        stripped = frozenset(strip(k, t)[1] for k in range(t - 1, t * t, t))
        self._set(spec=spec, bootstrap=BootstrapCache(prefix=_oracle_prefix(spec, t * t), stripped_set=stripped))

    @property
    def params(self) -> dict:
        return {"t": self.t}

    def is_top(self, n: int) -> bool:
        """For n = qt with q >= t: True iff g(n) == t (otherwise g(n) == t - 1)."""
        t = self.t
        z, m = strip(n, t)
        # Stripped values 2..t-1 behave like members of the set; 1 (a power of t) does not.
        in_set = m != 1 and (m < t or m in self.bootstrap.stripped_set)
        return (z % 2 == 1) == in_set

    def _grundy(self, n: int) -> int:
        t = self.t
        if n < t * t:
            return self.bootstrap.prefix[n]
        r = n % t
        if r == 1:
            return 0
        if r > 1:
            return r - 1
        return t if self.is_top(n) else t - 1


@dataclass(frozen=True)
class IMarkRangeDiv2(FamilyEvaluator):
    """i-Mark([1,t-1],{2}), t >= 3."""

    tag: ClassVar[str] = "IMarkRange_Div2"
    t: int = 3

    def __post_init__(self):
        t = self.t
        if t < 3:
            raise ValueError("need t >= 3 (t = 2 is IMark_1_2)")
        spec = validate_spec(range(1, t), [2])
        length = 18 if t == 3 else 4 * t
        self._set(spec=spec, bootstrap=BootstrapCache(prefix=_oracle_prefix(spec, length)))

    @property
    def params(self) -> dict:
        return {"t": self.t}

    @staticmethod
    def _top3(q: int) -> bool:
        # n = 3q, q >= 6: g(n) == 3 test
        if q % 2:
            return False
        z, v = strip(q, 2)
        if v in (0b1, 0b101):
            return z % 2 == 0
        return z % 2 == 1

    def base_point(self, n: int) -> int:
        """Smallest multiple of t that is >= 2t and shares n's binary stripped value."""
        t = self.t
        _, v = strip(n, 2)
        s = trailing_zeros(t)
        i = s
        while (v << i) < 2 * t:
            i += 1
        return v << i

    def _top(self, n: int) -> bool:
        t = self.t
        m = self.base_point(n)
        if m < len(self.bootstrap.prefix):
            top_at_m = self.bootstrap.prefix[m] == t
        else:
            # m odd, or m/2 off the residue-0 column: no option has value t - 1.
            top_at_m = False
        flips = trailing_zeros(n) - trailing_zeros(m)
        return top_at_m != (flips % 2 == 1)

    def _grundy(self, n: int) -> int:
        t = self.t
        if n < len(self.bootstrap.prefix):
            return self.bootstrap.prefix[n]
        q, r = divmod(n, t)
        if t == 3:
            if r == 1:
                return 0
            if r == 2:
                return 1
            return 3 if self._top3(q) else 2
        if r == 1:
            return 0
        if r == 2:
            return 2
        if r == 3:
            return 1
        if r > 3:
            return r - 1
        if n % 2:
            return t - 1
        return t if self._top(n) else t - 1


@dataclass(frozen=True)
class IMarkA2A(FamilyEvaluator):
    """i-Mark({a,2a},{2}).

    Full g-values for a in {1, 2, 4}; for any other even a only odd heaps
    are covered.
    """

    tag: ClassVar[str] = "IMark_A2A"
    a: int = 2

    def __post_init__(self):
        a = self.a
        if a < 1:
            raise ValueError("need a >= 1")
        if a not in (1, 2, 4) and a % 2:
            raise ValueError(f"a={a}: no theorem gives g-values for odd a > 1")
        spec = validate_spec([a, 2 * a], [2])
        length = {1: 18, 2: 12, 4: 24}.get(a, 0)
        prefix = _oracle_prefix(spec, length) if length else ()
        self._set(spec=spec, bootstrap=BootstrapCache(prefix=prefix))

    @property
    def params(self) -> dict:
        return {"a": self.a}

    @property
    def odd_only(self) -> bool:
        return self.a not in (1, 2, 4)

    def in_domain(self, n: int) -> bool:
        return n >= 0 and (not self.odd_only or n % 2 == 1)

    def odd_grundy(self, n: int) -> int:
        """g-value of an odd heap for even a (purely periodic with period 3a)."""
        a = self.a
        r = n % (3 * a)
        if r < a:
            return 0
        if r < 2 * a:
            return 1
        return 2

    _RES4: ClassVar[dict] = {1: 0, 3: 0, 4: 0, 10: 0, 5: 1, 6: 1, 7: 1, 8: 1, 2: 2, 9: 2, 11: 2}
    _RES2: ClassVar[dict] = {1: 0, 4: 0, 2: 1, 3: 1, 5: 2}

    def _grundy(self, n: int) -> int:
        a = self.a
        if self.odd_only:
            return self.odd_grundy(n)
        if n < len(self.bootstrap.prefix):
            return self.bootstrap.prefix[n]
        if a == 1:
            q, r = divmod(n, 3)
            if r:
                return r - 1
            return 3 if IMarkRangeDiv2._top3(q) else 2
        q, r = divmod(n, 3 * a)
        if r:
            return (self._RES2 if a == 2 else self._RES4)[r]
        z, v = strip(q, 2)
        if a == 2:
            if q % 2 or q < 4:
                return 2
            if v == 1:
                return 3 if z % 2 == 0 else 2
            return 3 if z % 2 == 1 else 2
        return 3 if z % 2 == 1 else 2


# -- misere play ----------------------------------------------------------


@dataclass(frozen=True)
class MiMarkRange(FamilyEvaluator):
    """Misere i-Mark([1,t-1],D): P-positions are exactly n = 1 mod t."""

    tag: ClassVar[str] = "MiMarkRange"
    convention: ClassVar[Convention] = Convention.MISERE
    has_grundy: ClassVar[bool] = False
    t: int = 2
    divisors: tuple[int, ...] = (2,)

    def __post_init__(self):
        t = self.t
        if t < 2:
            raise ValueError("need t >= 2")
        if not self.divisors:
            raise ValueError("D must be nonempty")
        for d in self.divisors:
            if d % t == 1 % t:
                raise ValueError(f"d={d} is 1 mod t={t}; no theorem applies")
        spec = validate_spec(range(1, t), self.divisors)
        self._set(spec=spec, divisors=spec.division)

    @property
    def params(self) -> dict:
        return {"t": self.t, "D": list(self.divisors)}

    def _is_p(self, n: int) -> bool:
        return n % self.t == 1 % self.t


@dataclass(frozen=True)
class MiMarkA2A(FamilyEvaluator):
    """Misere i-Mark({a,2a},{2}) for a == 2 or a odd; purely periodic with period 3a."""

    tag: ClassVar[str] = "MiMark_A2A"
    convention: ClassVar[Convention] = Convention.MISERE
    has_grundy: ClassVar[bool] = False
    a: int = 1

    def __post_init__(self):
        a = self.a
        if not (a == 2 or (a >= 1 and a % 2 == 1)):
            raise ValueError(f"a={a}: need a == 2 or a odd")
        self._set(spec=validate_spec([a, 2 * a], [2]))

    @property
    def params(self) -> dict:
        return {"a": self.a}

    def _is_p(self, n: int) -> bool:
        a = self.a
        n %= 3 * a
        if a == 2:
            return n in (2, 3)
        if n < a:
            return n > 0 and trailing_zeros(n) % 2 == 1
        if n < 2 * a:
            if n % 2 == 0:
                # options n - a (odd, terminal, N) and n/2 < a
                return trailing_zeros(n) % 2 == 1
            return n == a or trailing_zeros(n - a) % 2 == 0
        # 2a <= n < 3a: every even heap has an option in P
        return n % 2 == 1 and trailing_zeros(n - a) % 2 == 0

    def period_string(self) -> str:
        return "".join(self.outcome(i).value for i in range(3 * self.a))


# -- dispatch -------------------------------------------------------------


def _range_t(S: tuple[int, ...]) -> int | None:
    if S and S == tuple(range(1, len(S) + 1)):
        return len(S) + 1
    return None


def _a2a(S: tuple[int, ...]) -> int | None:
    if len(S) == 2 and S[1] == 2 * S[0]:
        return S[0]
    return None


def family_for(spec: GameSpec, convention: Convention | str = Convention.NORMAL) -> FamilyEvaluator | None:
    """Most specific evaluator whose theorem covers ``(spec, convention)``, or None."""
    convention = Convention.parse(convention)
    S, D = spec.subtraction, spec.division
    t = _range_t(S)
    a = _a2a(S)
    if convention is Convention.NORMAL:
        if t is not None and len(D) == 1:
            d = D[0]
            if t == 2 and d == 2:
                return IMark12()
            if d == t:
                return IMarkRangeDivT(t)
            if d == 2:
                return IMarkRangeDiv2(t)
            if d % t != 1:
                return IMarkRangeOutcome(t, d)
            return None
        if a is not None and D == (2,) and (a in (1, 2, 4) or a % 2 == 0):
            return IMarkA2A(a)
        return None
    if t is not None and D and all(d % t != 1 for d in D):
        return MiMarkRange(t, D)
    if a is not None and D == (2,) and (a == 2 or a % 2 == 1):
        return MiMarkA2A(a)
    return None


def fast_grundy(ev: FamilyEvaluator, n: int) -> int:
    return ev.grundy(n)


def fast_outcome(ev: FamilyEvaluator, n: int) -> Outcome:
    return ev.outcome(n)


def sweep(ev: FamilyEvaluator, upto: int, what: str = "grundy") -> tuple[np.ndarray, np.ndarray]:
    """Fast-path values over the evaluator's domain in [0, upto].

    Returns ``(heaps, values)``; outcome sweeps yield booleans (True = P).
    """
    heaps = [n for n in range(upto + 1) if ev.in_domain(n)]
    if what == "grundy":
        vals = [ev._grundy(n) for n in heaps]
    else:
        vals = [ev._is_p(n) for n in heaps]
    return np.array(heaps, dtype=np.int64), np.array(vals)
