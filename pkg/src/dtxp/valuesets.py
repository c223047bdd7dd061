"""Feature domains and value sets.

Values are handled through their *codes*: the position of a value in a
categorical domain, or ``value - min`` for an ordinal range.  A
:class:`ValueSet` is a normalized tuple of disjoint, non-adjacent closed
code intervals, which covers both explicit finite sets and ranges with
the same algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class ValueSet:
    intervals: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, codes: Iterable[int]) -> "ValueSet":
        pts = sorted(set(codes))
        out: list[tuple[int, int]] = []
        for c in pts:
            if out and out[-1][1] + 1 == c:
                out[-1] = (out[-1][0], c)
            else:
                out.append((c, c))
        return cls(tuple(out))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "ValueSet":
        if lo > hi:
            return cls()
        return cls(((lo, hi),))

    @classmethod
    def _normalize(cls, spans: Iterable[tuple[int, int]]) -> "ValueSet":
        out: list[tuple[int, int]] = []
        for lo, hi in sorted(s for s in spans if s[0] <= s[1]):
            if out and lo <= out[-1][1] + 1:
                if hi > out[-1][1]:
                    out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
        return cls(tuple(out))

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __len__(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def __iter__(self) -> Iterator[int]:
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    def __contains__(self, code: object) -> bool:
        if not isinstance(code, int):
            return False
        for lo, hi in self.intervals:
            if code < lo:
                return False
            if code <= hi:
                return True
        return False

    def __and__(self, other: "ValueSet") -> "ValueSet":
        a, b = self.intervals, other.intervals
        i = j = 0
        out = []
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return ValueSet(tuple(out))

    def __or__(self, other: "ValueSet") -> "ValueSet":
        return ValueSet._normalize(self.intervals + other.intervals)

    def __sub__(self, other: "ValueSet") -> "ValueSet":
        out = []
        for lo, hi in self.intervals:
            cur = lo
            for olo, ohi in other.intervals:
                if ohi < cur or olo > hi:
                    continue
                if olo > cur:
                    out.append((cur, olo - 1))
                cur = max(cur, ohi + 1)
                if cur > hi:
                    break
            if cur <= hi:
                out.append((cur, hi))
        return ValueSet(tuple(out))

    def intersects(self, other: "ValueSet") -> bool:
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            if max(a[i][0], b[j][0]) <= min(a[i][1], b[j][1]):
                return True
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return False

    def issubset(self, other: "ValueSet") -> bool:
        return not (self - other)

    def first(self) -> int:
        return self.intervals[0][0]


@dataclass(frozen=True)
class Domain:
    """A feature domain: categorical (ordered symbols) or ordinal (integer range)."""

    kind: str
    values: tuple = ()
    lo: int = 0
    hi: int = 0

    def __post_init__(self):
        if self.kind == "categorical":
            if not self.values:
                raise ValueError("categorical domain must be non-empty")
            if len(set(map(_key, self.values))) != len(self.values):
                raise ValueError(f"categorical domain has repeated values: {list(self.values)}")
        elif self.kind == "ordinal":
            if self.lo > self.hi:
                raise ValueError(f"ordinal domain has min {self.lo} > max {self.hi}")
        else:
            raise ValueError(f"unknown domain kind {self.kind!r}")

    @classmethod
    def categorical(cls, values: Sequence) -> "Domain":
        return cls("categorical", tuple(values))

    @classmethod
    def ordinal(cls, lo: int, hi: int) -> "Domain":
        return cls("ordinal", (), int(lo), int(hi))

    @property
    def size(self) -> int:
        if self.kind == "categorical":
            return len(self.values)
        return self.hi - self.lo + 1

    @property
    def full(self) -> ValueSet:
        return ValueSet.interval(0, self.size - 1)

    def code(self, value) -> int:
        if self.kind == "categorical":
            for k, v in enumerate(self.values):
                if _key(v) == _key(value):
                    return k
            # CLI input arrives as strings
            for k, v in enumerate(self.values):
                if str(v) == str(value):
                    return k
            raise ValueError(f"value {value!r} not in domain {list(self.values)}")
        x = int(value)
        if not self.lo <= x <= self.hi:
            raise ValueError(f"value {x} outside ordinal range [{self.lo}, {self.hi}]")
        return x - self.lo

    def value(self, code: int):
        if self.kind == "categorical":
            return self.values[code]
        return code + self.lo

    def values_of(self, vs: ValueSet) -> list:
        return [self.value(c) for c in vs]

    def to_json(self):
        if self.kind == "categorical":
            return list(self.values)
        return {"min": self.lo, "max": self.hi}

    def valueset_to_json(self, vs: ValueSet):
        if self.kind == "ordinal" and len(vs.intervals) == 1 and len(vs) > 1:
            lo, hi = vs.intervals[0]
            return {"lo": lo + self.lo, "hi": hi + self.lo}
        return self.values_of(vs)

    def valueset_from_json(self, spec) -> ValueSet:
        if isinstance(spec, dict):
            if self.kind != "ordinal":
                raise ValueError("interval value sets need an ordinal feature")
            lo, hi = int(spec["lo"]), int(spec["hi"])
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
            return ValueSet.interval(self.code(lo), self.code(hi))
        return ValueSet.of(self.code(v) for v in spec)

    def describe(self, vs: ValueSet) -> str:
        if self.kind == "ordinal":
            parts = []
            for lo, hi in vs.intervals:
                a, b = lo + self.lo, hi + self.lo
                parts.append(str(a) if a == b else f"{a}..{b}")
            return "{" + ",".join(parts) + "}"
        return "{" + ",".join(str(v) for v in self.values_of(vs)) + "}"


def _key(v):
    # keep 1 and True (and "1") distinct when matching domain symbols
    return (type(v).__name__, v)
