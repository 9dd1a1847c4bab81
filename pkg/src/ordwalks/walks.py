"""Minimal walks: lower trace L, rho_1 and the e-functions, Osc and osc.

A :class:`WalkOracle` owns the C-sequence provider, the intersection
convention used by rho_1, and two memo tables.  Walks are evaluated
iteratively (finite tails below 1000 are hundreds of steps long), and every
intermediate pair on a walk is memoised on the way back up.

``naive_lower_trace`` / ``naive_rho1`` are literal transcriptions of the
recursive definitions with no caching; they exist to cross-check the oracle.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from typing import Optional

from .csequence import IntersectionError, Provider, c_of
from .ordinal import ZERO, Ordinal

HALF_OPEN = "half_open"
CLOSED = "closed"
MODES = (HALF_OPEN, CLOSED)


class WalkError(ValueError):
    pass


def _merge(lower: tuple, m: Ordinal) -> tuple:
    # (lower U {m}) \ m, with lower sorted ascending
    kept = [x for x in lower if x >= m]
    if not kept or kept[0] != m:
        kept.insert(0, m)
    return tuple(kept)


class WalkOracle:
    def __init__(self, provider: Provider = c_of, mode: str = HALF_OPEN):
        if mode not in MODES:
            raise ValueError(f"unknown intersection mode {mode!r}")
        self.provider = provider
        self.mode = mode
        self.memo_trace: dict = {}
        self.memo_rho: dict = {}
        self.memo_depth: dict = {}

    def _count(self, cb, alpha: Ordinal) -> int:
        return cb.count_below(alpha, closed=self.mode == CLOSED)

    def walk(self, alpha: Ordinal, beta: Ordinal) -> list:
        """The walk beta = b_0 > b_1 > ... > b_n = alpha."""
        if alpha > beta:
            raise WalkError(f"walk needs alpha <= beta, got {alpha} > {beta}")
        path = [beta]
        while beta != alpha:
            nxt = self.provider(beta).min_at_or_above(alpha)
            if not nxt < beta:
                raise WalkError(f"walk stalled at {beta}")
            path.append(nxt)
            beta = nxt
        return path

    def _fill(self, alpha: Ordinal, beta: Ordinal) -> None:
        key = (alpha, beta)
        if key in self.memo_trace:
            return
        stack = []
        cur = beta
        while cur != alpha and (alpha, cur) not in self.memo_trace:
            cb = self.provider(cur)
            nxt = cb.min_at_or_above(alpha)
            if not nxt < cur:
                raise WalkError(f"walk stalled at {cur}")
            try:
                m = cb.max_below(alpha)
            except IntersectionError:
                m = None  # only when alpha == 0
            stack.append((cur, nxt, m, self._count(cb, alpha)))
            cur = nxt
        if cur == alpha:
            self.memo_trace[(alpha, alpha)] = ()
            self.memo_rho[(alpha, alpha)] = 0
            self.memo_depth[(alpha, alpha)] = 0
        for node, nxt, m, count in reversed(stack):
            below = self.memo_trace[(alpha, nxt)]
            self.memo_trace[(alpha, node)] = below if m is None else _merge(below, m)
            self.memo_rho[(alpha, node)] = max(count, self.memo_rho[(alpha, nxt)])
            self.memo_depth[(alpha, node)] = self.memo_depth[(alpha, nxt)] + 1

    def _check(self, alpha: Ordinal, beta: Ordinal) -> None:
        if alpha > beta:
            raise WalkError(f"need alpha <= beta, got {alpha} > {beta}")

    def lower_trace(self, alpha: Ordinal, beta: Ordinal) -> tuple:
        self._check(alpha, beta)
        self._fill(alpha, beta)
        return self.memo_trace[(alpha, beta)]

    def rho1(self, alpha: Ordinal, beta: Ordinal) -> int:
        self._check(alpha, beta)
        self._fill(alpha, beta)
        return self.memo_rho[(alpha, beta)]

    def depth(self, alpha: Ordinal, beta: Ordinal) -> int:
        """Number of steps in the walk from beta down to alpha."""
        self._check(alpha, beta)
        self._fill(alpha, beta)
        return self.memo_depth[(alpha, beta)]

    def e_value(self, beta: Ordinal, xi: Ordinal) -> int:
        return self.rho1(xi, beta)

    def osc_set(self, alpha: Ordinal, beta: Ordinal) -> tuple:
        if not alpha < beta:
            raise WalkError(f"Osc needs alpha < beta, got {alpha}, {beta}")
        trace = self.lower_trace(alpha, beta)
        out = []
        for prev, xi in zip(trace, trace[1:]):
            if self.rho1(prev, alpha) <= self.rho1(prev, beta) and self.rho1(xi, alpha) > self.rho1(xi, beta):
                out.append(xi)
        return tuple(out)

    def osc(self, alpha: Ordinal, beta: Ordinal) -> int:
        return len(self.osc_set(alpha, beta))


def lower_trace(alpha: Ordinal, beta: Ordinal, oracle: Optional[WalkOracle] = None) -> tuple:
    return (oracle or WalkOracle()).lower_trace(alpha, beta)


def rho1(alpha: Ordinal, beta: Ordinal, oracle: Optional[WalkOracle] = None) -> int:
    return (oracle or WalkOracle()).rho1(alpha, beta)


def e_value(beta: Ordinal, xi: Ordinal, oracle: Optional[WalkOracle] = None) -> int:
    return (oracle or WalkOracle()).e_value(beta, xi)


def osc_set(alpha: Ordinal, beta: Ordinal, oracle: Optional[WalkOracle] = None) -> tuple:
    return (oracle or WalkOracle()).osc_set(alpha, beta)


def osc(alpha: Ordinal, beta: Ordinal, oracle: Optional[WalkOracle] = None) -> int:
    return (oracle or WalkOracle()).osc(alpha, beta)


def check_trace_additivity(alpha: Ordinal, beta: Ordinal, gamma: Ordinal, oracle: Optional[WalkOracle] = None) -> bool:
    """L(a,g) == L(a,b) | L(b,g) whenever max L(b,g) < min L(a,b); vacuously True otherwise."""
    if not alpha <= beta <= gamma:
        raise WalkError("need alpha <= beta <= gamma")
    oracle = oracle or WalkOracle()
    lab = oracle.lower_trace(alpha, beta)
    lbg = oracle.lower_trace(beta, gamma)
    if not lab or not lbg or not lbg[-1] < lab[0]:
        return True
    return set(oracle.lower_trace(alpha, gamma)) == set(lab) | set(lbg)


# --- memo-free reference recursion -------------------------------------------

@contextmanager
def _recursion_room(n: int):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, n))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def _naive_trace(alpha, beta, provider):
    if alpha == beta:
        return frozenset()
    cb = provider(beta)
    below = _naive_trace(alpha, cb.min_at_or_above(alpha), provider)
    if alpha == ZERO:
        return below
    m = cb.max_below(alpha)
    return frozenset(x for x in below | {m} if not x < m)


def _naive_rho(alpha, beta, provider, closed):
    if alpha == beta:
        return 0
    cb = provider(beta)
    return max(cb.count_below(alpha, closed=closed), _naive_rho(alpha, cb.min_at_or_above(alpha), provider, closed))


def naive_lower_trace(alpha: Ordinal, beta: Ordinal, provider: Provider = c_of) -> tuple:
    if alpha > beta:
        raise WalkError(f"need alpha <= beta, got {alpha} > {beta}")
    with _recursion_room(20000):
        return tuple(sorted(_naive_trace(alpha, beta, provider)))


def naive_rho1(alpha: Ordinal, beta: Ordinal, provider: Provider = c_of, mode: str = HALF_OPEN) -> int:
    if alpha > beta:
        raise WalkError(f"need alpha <= beta, got {alpha} > {beta}")
    with _recursion_room(20000):
        return _naive_rho(alpha, beta, provider, mode == CLOSED)


def depth_bound(alpha: Ordinal, beta: Ordinal) -> int:
    """Bound on walk steps taken at infinite ordinals: CNF terms x max coefficient x 12."""
    terms = max(len(alpha.terms), len(beta.terms), 1)
    coef = max([c for _, c in alpha.terms + beta.terms] or [1])
    return terms * coef * 12


def infinite_steps(path: list) -> int:
    return sum(1 for b in path[:-1] if not b.is_finite)

