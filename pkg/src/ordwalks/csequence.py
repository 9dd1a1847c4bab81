"""The explicit C-sequence used for the special pairs, as queryable ordinal sets.

Every C_alpha is a finite set of ordinals plus at most one "ladder"
``{base + w^step * n : n >= 1}``, whose supremum is ``base + w^(step+1)``.
The three queries the walks need (max below, min at-or-above, count below)
are answered exactly by ladder arithmetic, without enumerating anything.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .ordinal import (
    OMEGA,
    OMEGA_SQ,
    ZERO,
    Ordinal,
    OrdinalError,
    add,
    classify,
    delta_sub,
    in_lambda1,
    nat,
    omega_times,
    parse_cnf,
    sub,
)

THOUSAND = nat(1000)


class IntersectionError(LookupError):
    """A max/min query over an empty part of the set."""


class InfiniteIntersection(ValueError):
    """count_below or max_below asked for an initial segment meeting a ladder infinitely."""


@dataclass(frozen=True)
class Ladder:
    base: Ordinal
    step: int

    def element(self, n: int) -> Ordinal:
        return add(self.base, Ordinal._raw(((self.step, n),)))

    @property
    def sup(self) -> Ordinal:
        return add(self.base, Ordinal._raw(((self.step + 1, 1),)))

    def _position(self, gamma: Ordinal):
        """Classify gamma against the ladder.

        Returns ("below", 0) when gamma <= base + w^step * 0 region, i.e. no
        element is < gamma; ("inside", m, exact) with gamma = base + w^step*m + r,
        exact meaning r == 0; or ("above",) when gamma >= sup.
        """
        if gamma <= self.base:
            return ("below",)
        d = sub(gamma, self.base)
        e, m = d.terms[0]
        if e > self.step:
            return ("above",)
        if e < self.step:
            return ("below",)
        return ("inside", m, len(d.terms) == 1)

    def count_below(self, gamma: Ordinal) -> int:
        pos = self._position(gamma)
        if pos[0] == "below":
            return 0
        if pos[0] == "above":
            raise InfiniteIntersection(f"ladder {self} is entirely below {gamma}")
        _, m, exact = pos
        return m - 1 if exact else m

    def min_at_or_above(self, gamma: Ordinal) -> Optional[Ordinal]:
        pos = self._position(gamma)
        if pos[0] == "below":
            return self.element(1)
        if pos[0] == "above":
            return None
        _, m, exact = pos
        return self.element(m if exact else m + 1)

    def __contains__(self, gamma: Ordinal) -> bool:
        pos = self._position(gamma)
        return pos[0] == "inside" and pos[2]

    def __str__(self):
        return f"{{{self.base}+w^{self.step}*n : n>=1}}"


@dataclass(frozen=True)
class OrdinalSet:
    finite: tuple = ()
    ladders: tuple = ()
    _keys: list = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        finite = tuple(sorted(set(self.finite)))
        for lad in self.ladders:
            if any(x in lad for x in finite):
                raise ValueError(f"finite part meets ladder {lad}")
        object.__setattr__(self, "finite", finite)
        object.__setattr__(self, "ladders", tuple(self.ladders))
        object.__setattr__(self, "_keys", [x.terms for x in finite])

    @classmethod
    def of(cls, elements: Iterable, ladders: Iterable = ()) -> "OrdinalSet":
        from .ordinal import ordinal

        return cls(tuple(ordinal(x) for x in elements), tuple(ladders))

    def __contains__(self, gamma: Ordinal) -> bool:
        i = bisect.bisect_left(self._keys, gamma.terms)
        if i < len(self._keys) and self._keys[i] == gamma.terms:
            return True
        return any(gamma in lad for lad in self.ladders)

    @property
    def sup(self) -> Optional[Ordinal]:
        """Supremum when it is not attained (a ladder on top), else None."""
        if not self.ladders:
            return None
        top = max(lad.sup for lad in self.ladders)
        if self.finite and self.finite[-1] >= top:
            return None
        return top

    @property
    def max_element(self) -> Optional[Ordinal]:
        if self.sup is not None:
            return None
        return self.finite[-1] if self.finite else None

    def count_below(self, gamma: Ordinal, closed: bool = False) -> int:
        """|S intersected with [0, gamma)|, or [0, gamma] when ``closed``."""
        n = bisect.bisect_right(self._keys, gamma.terms) if closed else bisect.bisect_left(self._keys, gamma.terms)
        for lad in self.ladders:
            n += lad.count_below(gamma)
            if closed and gamma in lad:
                n += 1
        return n

    def max_below(self, gamma: Ordinal) -> Ordinal:
        i = bisect.bisect_left(self._keys, gamma.terms)
        best = self.finite[i - 1] if i else None
        for lad in self.ladders:
            m = lad.count_below(gamma)
            if m:
                cand = lad.element(m)
                if best is None or cand > best:
                    best = cand
        if best is None:
            raise IntersectionError(f"no element below {gamma}")
        return best

    def min_at_or_above(self, gamma: Ordinal) -> Ordinal:
        i = bisect.bisect_left(self._keys, gamma.terms)
        best = self.finite[i] if i < len(self.finite) else None
        for lad in self.ladders:
            cand = lad.min_at_or_above(gamma)
            if cand is not None and (best is None or cand < best):
                best = cand
        if best is None:
            raise IntersectionError(f"no element at or above {gamma}")
        return best

    def elements_below(self, gamma: Ordinal) -> list:
        """All elements < gamma, listed in increasing order (must be finite)."""
        out = [x for x in self.finite if x < gamma]
        for lad in self.ladders:
            out.extend(lad.element(n) for n in range(1, lad.count_below(gamma) + 1))
        return sorted(out)

    def to_json(self) -> dict:
        return {
            "finite": [str(x) for x in self.finite],
            "ladders": [{"base": str(lad.base), "step": lad.step} for lad in self.ladders],
        }

    @classmethod
    def from_json(cls, data) -> "OrdinalSet":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            tuple(parse_cnf(x) for x in data["finite"]),
            tuple(Ladder(parse_cnf(d["base"]), int(d["step"])) for d in data.get("ladders", [])),
        )

    def __str__(self):
        parts = [str(x) for x in self.finite] + [str(lad) for lad in self.ladders]
        return "{" + ", ".join(parts) + "}"


def _interval(a: int, b: int) -> range:
    return range(a, b + 1)


_F_TABLE = {
    1: [*_interval(5, 10), *_interval(20, 40), 90, *_interval(100, 200)],
    2: [*_interval(2, 10), 30, *_interval(40, 90), 200],
    3: [*_interval(5, 10), *_interval(20, 40), 90],
    4: [*_interval(2, 10), 30, *_interval(40, 90)],
    5: [*_interval(5, 10), *_interval(20, 40)],
    6: [*_interval(2, 10), 30],
    7: [*_interval(5, 10)],
    8: [],
    9: [],
}


@lru_cache(maxsize=None)
def f_set(k: int) -> OrdinalSet:
    """The integer set F_k (k in 1..9); intervals are inclusive at both ends."""
    if k not in _F_TABLE:
        raise ValueError(f"F_k is defined for k in 1..9, got {k}")
    return OrdinalSet(tuple(nat(n) for n in _F_TABLE[k]))


def clause_of(alpha: Ordinal) -> int:
    """Which defining clause (1..5) produces C_alpha."""
    if not alpha.terms:
        return 1
    kind = classify(alpha).kind
    if kind == "successor":
        return 2 if alpha.is_finite else 1
    if alpha < OMEGA_SQ or in_lambda1(alpha):
        return 3
    k = alpha.terms[-1][1]
    return 4 if k <= 9 else 5


@lru_cache(maxsize=1 << 16)
def c_of(alpha: Ordinal) -> OrdinalSet:
    if not alpha.terms:
        raise ValueError("C_alpha is requested only for alpha > 0")
    kind, pred = classify(alpha)
    if kind == "successor":
        if alpha.is_finite:
            return OrdinalSet((ZERO, pred))
        return OrdinalSet((ZERO, THOUSAND, pred))
    if alpha == OMEGA:
        return OrdinalSet((ZERO, THOUSAND), (Ladder(THOUSAND, 0),))
    if alpha < OMEGA_SQ or in_lambda1(alpha):
        e, c = alpha.terms[-1]
        head = alpha.terms[:-1] + (((e, c - 1),) if c > 1 else ())
        return OrdinalSet((ZERO, THOUSAND), (Ladder(Ordinal._raw(head), e - 1),))
    delta = delta_sub(alpha)
    k = alpha.terms[-1][1]
    if k <= 9:
        j = max(0, k - 2)
        finite = (ZERO,) + f_set(k).finite + (add(delta, omega_times(j)),)
        return OrdinalSet(finite, (Ladder(add(delta, omega_times(k - 1)), 0),))
    beta = add(delta, omega_times(k - 1))
    return OrdinalSet((ZERO, THOUSAND, delta), (Ladder(beta, 0),))


Provider = Callable[[Ordinal], OrdinalSet]


@dataclass
class AxiomCheck:
    alpha: Ordinal
    axiom: str  # "zero" | "cofinal" | "finite"
    passed: bool
    detail: str = ""


def _probe_points(alpha: Ordinal, s: OrdinalSet) -> list:
    """Ordinals below alpha at which finiteness of C_alpha is probed."""
    pts = {ZERO, nat(1), nat(5), nat(999), THOUSAND, nat(1001)}
    pts.update(s.finite)
    for lad in s.ladders:
        pts.update(lad.element(n) for n in (1, 2, 3, 7))
        pts.update(add(lad.element(n), nat(1)) for n in (1, 4))
    return sorted(p for p in pts if p < alpha)


def check_axioms(alpha: Ordinal, s: OrdinalSet) -> list:
    out = []
    has_zero = ZERO in s
    out.append(AxiomCheck(alpha, "zero", has_zero, "" if has_zero else "0 missing"))
    if not alpha.terms:
        ok = s.finite == (ZERO,) and not s.ladders
        out.append(AxiomCheck(alpha, "cofinal", ok, "" if ok else "C_0 must be {0}"))
        return out
    kind, pred = classify(alpha)
    bounded = all(x < alpha for x in s.finite) and all(lad.sup <= alpha for lad in s.ladders)
    if kind == "successor":
        ok = bounded and pred in s
        detail = "" if ok else f"predecessor {pred} missing or element >= alpha"
    else:
        ok = bounded and s.sup == alpha
        detail = "" if ok else f"sup is {s.sup}, expected {alpha}"
    out.append(AxiomCheck(alpha, "cofinal", ok, detail))
    bad = []
    for gamma in _probe_points(alpha, s):
        try:
            s.count_below(gamma)
        except InfiniteIntersection:
            bad.append(str(gamma))
    out.append(AxiomCheck(alpha, "finite", not bad, "infinite below " + ",".join(bad) if bad else ""))
    return out


def validate_csequence(alphas: Iterable, provider: Provider = c_of) -> list:
    """Per-alpha, per-axiom report; failures are entries, never exceptions."""
    report = []
    for alpha in alphas:
        try:
            s = OrdinalSet((ZERO,)) if not alpha.terms else provider(alpha)
        except (ValueError, OrdinalError) as exc:
            report.append(AxiomCheck(alpha, "zero", False, f"provider failed: {exc}"))
            continue
        report.extend(check_axioms(alpha, s))
    return report
