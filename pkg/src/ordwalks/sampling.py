"""Deterministic ordinal universes and seeded samplers.

Lambda' points are enumerated as CNF shapes with exponents 2..7 and
coefficients 0..3 (at least one nonzero); that gives 4095 points of Lambda'
of which 1023 lie in Lambda''.  Everything is seeded through
``random.Random`` so two runs with the same seed draw the same ordinals.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .ordinal import (
    OMEGA_SQ,
    Ordinal,
    add,
    in_T,
    in_lambda2,
    nat,
    omega_times,
)

DELTA_EXPONENTS = range(2, 8)
DELTA_COEFFICIENTS = range(0, 4)


@lru_cache(maxsize=None)
def lambda1_points() -> tuple:
    out = []
    exps = list(DELTA_EXPONENTS)[::-1]
    for coefs in itertools.product(DELTA_COEFFICIENTS, repeat=len(exps)):
        terms = tuple((e, c) for e, c in zip(exps, coefs) if c)
        if terms:
            out.append(Ordinal._raw(terms))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def lambda2_points() -> tuple:
    return tuple(d for d in lambda1_points() if in_lambda2(d))


@lru_cache(maxsize=None)
def lambda1_only_points() -> tuple:
    return tuple(d for d in lambda1_points() if not in_lambda2(d))


def x_point(delta: Ordinal) -> Ordinal:
    return add(delta, omega_times(8))


def y_point(delta: Ordinal) -> Ordinal:
    return add(delta, omega_times(9))


def sample_distinct(rng: random.Random, pool, n: int) -> list:
    pool = list(pool)
    if n >= len(pool):
        return pool
    return sorted(rng.sample(pool, n))


def cnf_shapes(max_exponent: int = 4, max_coefficient: int = 3, finite_offsets=range(0, 13)):
    """Every CNF ordinal with exponents 1..max_exponent, coefficients <= max_coefficient,
    followed by each finite offset."""
    exps = list(range(max_exponent, 0, -1))
    for coefs in itertools.product(range(max_coefficient + 1), repeat=len(exps)):
        head = tuple((e, c) for e, c in zip(exps, coefs) if c)
        for off in finite_offsets:
            terms = head + (((0, off),) if off else ())
            if terms:
                yield Ordinal._raw(terms)


def random_ordinal(rng: random.Random, max_exponent: int = 5, max_coefficient: int = 3, finite_p: float = 0.15) -> Ordinal:
    """A random nonzero ordinal; with probability ``finite_p`` a natural below 1200."""
    if rng.random() < finite_p:
        return nat(rng.randint(1, 1199))
    terms = []
    for e in range(max_exponent, 0, -1):
        if rng.random() < 0.5:
            terms.append((e, rng.randint(1, max_coefficient)))
    if rng.random() < 0.4:
        # land inside the special bands above some Lambda' point
        terms = [t for t in terms if t[0] >= 2] or [(2, 1)]
        terms.append((1, rng.randint(1, 12)))
    if rng.random() < 0.4:
        terms.append((0, rng.randint(1, 12)))
    if not terms:
        terms = [(1, rng.randint(1, max_coefficient))]
    return Ordinal._raw(tuple(terms))


def random_pair(rng: random.Random, **kw):
    a, b = random_ordinal(rng, **kw), random_ordinal(rng, **kw)
    return (a, b) if a <= b else (b, a)


def random_non_t(rng: random.Random) -> Ordinal:
    """A random beta outside T (finite ones included)."""
    while True:
        r = rng.random()
        if r < 0.2:
            beta = nat(rng.randint(2, 1500))
        elif r < 0.35:
            beta = omega_times(rng.randint(1, 30))
        else:
            beta = random_ordinal(rng, max_exponent=6, finite_p=0.0)
            if rng.random() < 0.3:
                beta = add(beta, omega_times(rng.randint(10, 14)))
        if not in_T(beta):
            return beta


def special_triples(rng: random.Random, n: int) -> list:
    """n triples (y, x, y') with x in X, y, y' in Y and y < x < y'."""
    xs = [x_point(d) for d in lambda2_points()]
    ys = [y_point(d) for d in lambda1_only_points()]
    out = []
    while len(out) < n:
        x = rng.choice(xs)
        lo = [y for y in ys if y < x]
        hi = [y for y in ys if y > x]
        if lo and hi:
            out.append((rng.choice(lo), x, rng.choice(hi)))
    return out


def initial_segment_pairs(rng: random.Random, n: int) -> list:
    """n pairs (xi, delta) with w <= xi < delta, delta in Lambda'."""
    deltas = [d for d in lambda1_points() if d > OMEGA_SQ]
    out = []
    while len(out) < n:
        delta = rng.choice(deltas)
        xi = random_ordinal(rng, max_exponent=7, finite_p=0.0)
        if xi < delta:
            out.append((xi, delta))
    return out


def separation_pairs(rng: random.Random, n: int, max_coefficient: int = 5) -> list:
    """n disjoint X-Y pairs (delta + w*8, delta + w^2 + w*9) below w^5, delta in Lambda''."""
    deltas = [
        Ordinal._raw(tuple((e, c) for e, c in ((4, a), (3, b)) if c))
        for a in range(max_coefficient + 1)
        for b in range(max_coefficient + 1)
        if a or b
    ]
    chosen = sample_distinct(rng, deltas, n)
    if len(chosen) < n:
        raise ValueError(f"only {len(chosen)} Lambda'' points below w^5 with coefficients <= {max_coefficient}")
    return [(x_point(d), y_point(add(d, OMEGA_SQ))) for d in chosen]
