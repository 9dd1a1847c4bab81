"""Moore L-space points on the circle group, evaluated on finitely many coordinates.

Rotation number ``r_i = frac(sqrt(p_i)) / 8`` for the (i+1)-st prime p_i; the
square roots of distinct primes are linearly independent over Q together with
1, so a product of generators is the identity iff every exponent is 0.  That
makes point equality a purely symbolic question.  Numeric work is done in
turns (fractions of a full revolution) with exact rationals and an explicit
error bound; every comparison that feeds a verdict must clear twice that
bound or it is reported as undecided.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

import networkx as nx
import sympy

from .ordinal import OMEGA, Ordinal
from .walks import WalkOracle

START_PRECISION = 128
MAX_PRECISION = 4096


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


class SeparationError(ValueError):
    """The sample cannot support the band construction."""


@lru_cache(maxsize=None)
def prime_for(index: int) -> int:
    return int(sympy.prime(index + 1))


def symbolic_r(index: int):
    p = prime_for(index)
    return (sympy.sqrt(p) - sympy.floor(sympy.sqrt(p))) / 8


def independence_certificate(indices: Iterable[int]) -> bool:
    """True when {1} U {r_i} is Q-linearly independent by the square-root-of-primes theorem:
    the primes are distinct and none is a perfect square."""
    ps = [prime_for(i) for i in indices]
    return len(set(ps)) == len(ps) and all(sympy.isprime(p) and math.isqrt(p) ** 2 != p for p in ps)


@dataclass(frozen=True)
class Angle:
    """A point of R/Z (or a distance in [0, 1/2]) known to within ``error``."""

    value: Fraction
    error: Fraction

    def __float__(self):
        return float(self.value)

    def certified_lt(self, threshold) -> Verdict:
        margin = Fraction(threshold) - self.value
        if abs(margin) <= 2 * self.error:
            return Verdict.UNDECIDED
        return Verdict.YES if margin > 0 else Verdict.NO

    def certified_gt(self, threshold) -> Verdict:
        margin = self.value - Fraction(threshold)
        if abs(margin) <= 2 * self.error:
            return Verdict.UNDECIDED
        return Verdict.YES if margin > 0 else Verdict.NO


@lru_cache(maxsize=None)
def r_value(index: int, precision: int) -> Angle:
    """r_index to ``precision`` binary digits; the true value lies in [value, value + error)."""
    p = prime_for(index)
    scaled = math.isqrt(p << (2 * precision)) - (math.isqrt(p) << precision)
    return Angle(Fraction(scaled, 8 << precision), Fraction(1, 8 << precision))


class RotationBasis:
    """Fixed enumeration of a finite ordinal universe onto generator indices (ascending order)."""

    def __init__(self, coords: Iterable[Ordinal]):
        self.coords = tuple(sorted(set(coords)))
        self._index = {c: i for i, c in enumerate(self.coords)}

    def index(self, coord: Ordinal) -> int:
        try:
            return self._index[coord]
        except KeyError:
            raise KeyError(f"coordinate {coord} is not in the basis") from None

    def r(self, coord: Ordinal, precision: int = START_PRECISION) -> Angle:
        return r_value(self.index(coord), precision)

    def z(self, coord: Ordinal, exponent: int = 1) -> "TorusPoint":
        return TorusPoint.z(self.index(coord), exponent)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class TorusPoint:
    """A monomial prod z_i^e_i; the empty product is the identity 1."""

    powers: tuple = ()

    @classmethod
    def z(cls, index: int, exponent: int = 1) -> "TorusPoint":
        return cls(((index, exponent),) if exponent else ())

    @property
    def is_identity(self) -> bool:
        return not self.powers

    def __mul__(self, other: "TorusPoint") -> "TorusPoint":
        acc = dict(self.powers)
        for i, e in other.powers:
            acc[i] = acc.get(i, 0) + e
        return TorusPoint(tuple(sorted((i, e) for i, e in acc.items() if e)))

    def inverse(self) -> "TorusPoint":
        return TorusPoint(tuple((i, -e) for i, e in self.powers))

    def __pow__(self, n: int) -> "TorusPoint":
        return TorusPoint(tuple((i, e * n) for i, e in self.powers if e * n))

    def angle(self, precision: int = START_PRECISION) -> Angle:
        value, error = Fraction(0), Fraction(0)
        for i, e in self.powers:
            r = r_value(i, precision)
            value += e * r.value
            error += abs(e) * r.error
        return Angle(value - math.floor(value), error)

    def __str__(self):
        if not self.powers:
            return "1"
        return "*".join(f"z{i}^{e}" for i, e in self.powers)


IDENTITY = TorusPoint()


def rho_metric(z: TorusPoint, w: TorusPoint, precision: int = START_PRECISION) -> Angle:
    """Arc length between z and w divided by a full turn, in [0, 1/2]."""
    diff = z.inverse() * w
    if diff.is_identity:
        return Angle(Fraction(0), Fraction(0))
    a = diff.angle(precision)
    return Angle(min(a.value, 1 - a.value), a.error)


def escalate(fn: Callable[[int], object], decided: Callable[[object], bool], start: int = START_PRECISION, cap: int = MAX_PRECISION):
    """Run fn(precision) doubling precision until ``decided(result)`` or the cap is reached."""
    precision = start
    while True:
        result = fn(precision)
        if decided(result) or precision >= cap:
            return result, precision
        precision *= 2


def w_point(beta: Ordinal, coords: Iterable[Ordinal], oracle: WalkOracle, basis: RotationBasis) -> dict:
    """w_beta restricted to ``coords``: z_xi^(osc(xi, beta)+1) below beta, 1 elsewhere."""
    out = {}
    for xi in coords:
        if xi < beta:
            out[xi] = basis.z(xi, oracle.osc(xi, beta) + 1)
        else:
            out[xi] = IDENTITY
    return out


def in_neighborhood(wprime: dict, w: dict, F: Iterable[Ordinal], eps, precision: int = START_PRECISION) -> Verdict:
    """Is wprime in U[w; F, eps]?  Strict inequality, certified at ``precision``."""
    eps = Fraction(eps)
    F = list(F)
    for xi in F:
        if xi not in wprime or xi not in w:
            raise KeyError(f"coordinate {xi} missing from a point map")
    if eps <= 0:
        return Verdict.NO
    undecided = False
    for xi in F:
        v = rho_metric(wprime[xi], w[xi], precision).certified_lt(eps)
        if v is Verdict.NO:
            return Verdict.NO
        undecided = undecided or v is Verdict.UNDECIDED
    return Verdict.UNDECIDED if undecided else Verdict.YES


# --- the oscillation gap and the band separation --------------------------------

@dataclass
class GapResult:
    c: int
    subfamily: list
    delta: Ordinal
    table: dict = field(default_factory=dict)  # (i, j) -> (osc(a0,b0), osc(a0,b1))


def _pair_order(a, b) -> bool:
    return a[1] < b[0]


def osc_gap_search(family: list, oracle: WalkOracle, delta: Ordinal = OMEGA, min_size: int = 3) -> Optional[GapResult]:
    """Largest subfamily with a common c = |Osc(a0,a1) & delta| satisfying
    osc(a0,b0)+c-1 <= osc(a0,b1) <= osc(a0,b0)+c for every a < b in it."""
    family = sorted((tuple(p) for p in family), key=lambda p: p[0])
    seen = set()
    for a0, a1 in family:
        if not a0 < a1:
            raise ValueError(f"pair ({a0}, {a1}) is not increasing")
        if a0 in seen or a1 in seen:
            raise ValueError("family is not pairwise disjoint")
        seen.update((a0, a1))
    if len(family) < min_size:
        return None
    cs = [sum(1 for xi in oracle.osc_set(a0, a1) if xi < delta) for a0, a1 in family]
    table = {}
    best = None
    for c in sorted(set(cs)):
        members = [i for i, ci in enumerate(cs) if ci == c]
        g = nx.Graph()
        g.add_nodes_from(members)
        for x, i in enumerate(members):
            for j in members[x + 1:]:
                a, b = family[i], family[j]
                if not _pair_order(a, b):
                    g.add_edge(i, j)
                    continue
                lo = oracle.osc(a[0], b[0])
                hi = oracle.osc(a[0], b[1])
                table[(i, j)] = (lo, hi)
                if lo + c - 1 <= hi <= lo + c:
                    g.add_edge(i, j)
        for clique in nx.find_cliques(g):
            key = (len(clique), [-k for k in sorted(clique)])
            if best is None or key > best[0]:
                best = (key, c, sorted(clique))
    if best is None or len(best[2]) < min_size:
        return None
    _, c, idx = best
    sub_table = {(i, j): v for (i, j), v in table.items() if i in idx and j in idx}
    return GapResult(c, [family[i] for i in idx], delta, sub_table)


def gap_holds(gap: GapResult, oracle: WalkOracle) -> bool:
    """Re-verify the double inequality on every ordered pair of the subfamily."""
    sub = gap.subfamily
    for i, a in enumerate(sub):
        if sum(1 for xi in oracle.osc_set(*a) if xi < gap.delta) != gap.c:
            return False
        for b in sub[i + 1:]:
            if _pair_order(a, b):
                lo, hi = oracle.osc(a[0], b[0]), oracle.osc(a[0], b[1])
                if not lo + gap.c - 1 <= hi <= lo + gap.c:
                    return False
    return True


def half_band(cprime: int, s1: Fraction, s2: Fraction) -> Optional[int]:
    """The l with l/2 < c'*s1 < c'*s2 < (l+1)/2, if any (so x -> dist(c'x, Z) is affine on (s1, s2))."""
    lo, hi = 2 * cprime * s1, 2 * cprime * s2
    ell = math.floor(lo)
    if lo == ell or not hi < ell + 1:
        return None
    return ell


@dataclass
class SeparationReport:
    c: int
    delta: Ordinal
    precision: int
    s1: Fraction
    s2: Fraction
    eps: Fraction
    subfamily: list
    bands: dict
    band_checks: list
    triple_checks: list
    exponent_gaps: list
    verdict: Verdict

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.YES

    def to_dict(self) -> dict:
        def frac(x):
            return {"exact": str(x), "float": float(x)}

        return {
            "c": self.c,
            "delta": str(self.delta),
            "precision": self.precision,
            "s1": frac(self.s1),
            "s2": frac(self.s2),
            "s": frac((self.s1 + self.s2) / 2),
            "eps": frac(self.eps),
            "subfamily": [[str(a), str(b)] for a, b in self.subfamily],
            "bands": {k: [[str(a), str(b)] for a, b in v] for k, v in self.bands.items()},
            "band_checks": self.band_checks,
            "triple_checks": self.triple_checks,
            "exponent_gaps": self.exponent_gaps,
            "verdict": self.verdict.value,
        }


def _choose_window(rs: list, c: int):
    """Pick i < j < k (with a later index left over) and s1 < s2, eps so that
    r_i lies in the low band, r_j in the middle band and r_k in the high band."""
    n = len(rs)
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            if not rs[j] > rs[i]:
                continue
            for k in range(j + 1, n - 1):
                if not rs[k] > rs[j]:
                    continue
                g = min(rs[j] - rs[i], rs[k] - rs[j])
                eps = g / 3
                s1, s2 = rs[i] - eps / 2, rs[k] + eps / 2
                if s1 <= 0 or any(half_band(cp, s1, s2) is None for cp in (c - 1, c) if cp > 0):
                    continue
                if best is None or g > best[0]:
                    best = (g, s1, s2, eps)
    return best


def _separation_at(sample: list, gap: GapResult, oracle: WalkOracle, basis: RotationBasis, precision: int) -> SeparationReport:
    c = gap.c
    sub = gap.subfamily
    rs = [basis.r(a[0], precision).value for a in sub]
    window = _choose_window(rs, c)
    if window is None:
        raise SeparationError("no increasing triple of rotation numbers with a later pair; bands cannot be populated")
    _, s1, s2, eps = window
    undecided = False

    def inside(r: Angle, lo, hi) -> Verdict:
        a, b = r.certified_gt(lo), r.certified_lt(hi)
        if Verdict.NO in (a, b):
            return Verdict.NO
        if Verdict.UNDECIDED in (a, b):
            return Verdict.UNDECIDED
        return Verdict.YES

    limits = {"D3": (s1, s1 + eps), "D4": (s1 + 2 * eps, s2 - 2 * eps), "D5": (s2 - eps, s2)}
    bands = {name: [] for name in limits}
    band_of = {}
    for a in sub:
        r = basis.r(a[0], precision)
        for name, (lo, hi) in limits.items():
            v = inside(r, lo, hi)
            undecided = undecided or v is Verdict.UNDECIDED
            if v is Verdict.YES:
                bands[name].append(a)
                band_of[a] = name
    if not all(bands.values()):
        raise SeparationError(f"empty band(s): {[k for k, v in bands.items() if not v]}")

    ok = True
    band_checks = []
    cprimes = [cp for cp in (c - 1, c) if cp > 0]
    for a in sub:
        for b in sub:
            if not (_pair_order(a, b) and a in band_of and b in band_of and band_of[a] != band_of[b]):
                continue
            for cp in cprimes:
                ra = rho_metric(IDENTITY, basis.z(a[0], cp), precision)
                rb = rho_metric(IDENTITY, basis.z(b[0], cp), precision)
                diff = Angle(abs(ra.value - rb.value), ra.error + rb.error)
                linear = Fraction(cp) * abs(basis.r(a[0], precision).value - basis.r(b[0], precision).value)
                affine = abs(diff.value - linear) <= diff.error + 2 * cp * basis.r(a[0], precision).error
                v = diff.certified_gt(eps)
                undecided = undecided or v is Verdict.UNDECIDED
                passed = v is Verdict.YES and affine
                ok = ok and passed
                band_checks.append({
                    "a": str(a[0]), "b": str(b[0]), "bands": [band_of[a], band_of[b]], "c_prime": cp,
                    "margin": float(diff.value - eps), "affine": affine, "verdict": v.value,
                })

    exponent_gaps = []
    rho_cache = {}

    def coord_gap(a, d):
        key = (a, d)
        if key not in rho_cache:
            w0 = basis.z(a[0], oracle.osc(a[0], d[0]) + 1)
            w1 = basis.z(a[0], oracle.osc(a[0], d[1]) + 1)
            k = oracle.osc(a[0], d[1]) - oracle.osc(a[0], d[0])
            exponent_gaps.append({"a": str(a[0]), "d": str(d[0]), "gap": k, "in_range": k in (c - 1, c)})
            rho_cache[key] = rho_metric(w0, w1, precision)
        return rho_cache[key]

    triple_checks = []
    for a3 in bands["D3"]:
        for a4 in bands["D4"]:
            if not _pair_order(a3, a4):
                continue
            for a5 in bands["D5"]:
                if not _pair_order(a4, a5):
                    continue
                for d in sub:
                    if not _pair_order(a5, d):
                        continue
                    vals = {a: coord_gap(a, d) for a in (a3, a4, a5)}
                    witness = None
                    pending = False
                    for x, y in ((a3, a4), (a3, a5), (a4, a5)):
                        diff = Angle(abs(vals[x].value - vals[y].value), vals[x].error + vals[y].error)
                        v = diff.certified_gt(eps)
                        if v is Verdict.YES:
                            witness = (x, y, float(diff.value - eps))
                            break
                        pending = pending or v is Verdict.UNDECIDED
                    if witness is None:
                        if pending:
                            undecided = True
                        else:
                            ok = False
                    triple_checks.append({
                        "triple": [str(a3[0]), str(a4[0]), str(a5[0])],
                        "d": str(d[0]),
                        "pair": None if witness is None else [str(witness[0][0]), str(witness[1][0])],
                        "margin": None if witness is None else witness[2],
                    })
    if not triple_checks:
        raise SeparationError("no ordered triple a3 < a4 < a5 < d across the bands")
    ok = ok and all(g["in_range"] for g in exponent_gaps)
    verdict = Verdict.UNDECIDED if (undecided and ok) else (Verdict.YES if ok else Verdict.NO)
    return SeparationReport(c, gap.delta, precision, s1, s2, eps, list(sub), bands,
                            band_checks, triple_checks, exponent_gaps, verdict)


def separation_experiment(sample: list, oracle: Optional[WalkOracle] = None, precision: int = START_PRECISION,
                          max_precision: int = MAX_PRECISION, delta: Ordinal = OMEGA) -> SeparationReport:
    """Finite run of the band argument on X x Y pairs (d0 in X, d1 in Y, d0 < d1).

    Undecided comparisons trigger a rerun at twice the precision, up to
    ``max_precision``; an undecided verdict at the cap is returned, not raised.
    """
    if len(sample) < 12:
        raise SeparationError(f"need at least 12 pairs, got {len(sample)}")
    oracle = oracle or WalkOracle()
    gap = osc_gap_search(sample, oracle, delta)
    if gap is None:
        raise SeparationError("no subfamily of size >= 3 with a common oscillation gap")
    basis = RotationBasis(a[0] for a in sample)
    report, _ = escalate(lambda p: _separation_at(sample, gap, oracle, basis, p),
                         lambda r: r.verdict is not Verdict.UNDECIDED, start=precision, cap=max_precision)
    return report
