"""The first-disagreement order on finite binary sequences.

Sequences are plain tuples of 0/1.  ``s < t`` in the tree order means t
properly extends s; ``prec`` is the dense linear order deciding at the first
disagreement, where a position defined in only one sequence counts as a
disagreement.  Everything here is checked exhaustively on ``2^{<=n}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

DEFAULT_DEPTH = 6


class OrderError(ValueError):
    pass


def sequences(depth: int, min_length: int = 0) -> list:
    """All binary sequences of length min_length..depth, shortest first."""
    return [s for n in range(min_length, depth + 1) for s in itertools.product((0, 1), repeat=n)]


def extensions(s: tuple, depth: int) -> Iterator[tuple]:
    """The cone [s] cut at length ``depth`` (s itself included)."""
    for n in range(0, depth - len(s) + 1):
        for tail in itertools.product((0, 1), repeat=n):
            yield s + tail


def is_initial(s: tuple, t: tuple) -> bool:
    """s <= t in the tree order."""
    return len(s) <= len(t) and t[: len(s)] == s


def comparable(s: tuple, t: tuple) -> bool:
    return is_initial(s, t) or is_initial(t, s)


def delta_split(s: tuple, t: tuple) -> int:
    if s == t:
        raise OrderError("delta_split of equal sequences")
    for i, (a, b) in enumerate(zip(s, t)):
        if a != b:
            return i
    return min(len(s), len(t))


def _at(s: tuple, i: int):
    return s[i] if i < len(s) else None


def prec(s: tuple, t: tuple) -> bool:
    d = delta_split(s, t)
    return _at(s, d) == 0 or _at(t, d) == 1


def dense_between(s: tuple, t: tuple, depth_cap: int = None) -> tuple:
    """Some m with s < m < t in the order, built by the three-case split."""
    if not prec(s, t):
        raise OrderError(f"{s} is not below {t}")
    a0 = delta_split(s, t)
    sa, ta = _at(s, a0), _at(t, a0)
    if sa == 0 and ta == 1:
        m = s[:a0]
    elif sa == 0:
        beta = next((b for b in range(a0 + 1, len(s)) if s[b] == 0), None)
        m = s + (1,) if beta is None else s[:beta] + (1,)
    else:
        beta = next((b for b in range(a0 + 1, len(t)) if t[b] == 1), None)
        m = t + (0,) if beta is None else t[:beta] + (0,)
    if depth_cap is not None and len(m) > depth_cap:
        raise OrderError(f"witness {m} exceeds depth cap {depth_cap}")
    return m


def dagger(t: tuple) -> tuple:
    """The sibling of t: flip the last bit."""
    if not t:
        raise OrderError("dagger is defined on nonempty sequences (the root is the only limit level)")
    return t[:-1] + (1 - t[-1],)


def in_U(t: tuple) -> bool:
    return bool(t) and t[-1] == 0


def in_V(t: tuple) -> bool:
    return bool(t) and t[-1] == 1


def cone_separation(s: tuple, t: tuple, depth: int) -> bool:
    """With len(s)+1 < len(t): s below t forces s below all of [t] U [t-dagger];
    s above t forces it above all of them."""
    if not len(s) + 1 < len(t):
        raise OrderError("cone separation needs len(s) + 1 < len(t)")
    below = prec(s, t)
    for root in (t, dagger(t)):
        for u in extensions(root, depth):
            if prec(s, u) != below:
                return False
    return True


def refine_to_cone(v1: tuple, v2: tuple, depth: int) -> tuple:
    """For incomparable v1 below v2, return s = v1^1; checks v1 < [s] < v2 up to ``depth``."""
    if comparable(v1, v2):
        raise OrderError(f"{v1} and {v2} are comparable in the tree order")
    if not prec(v1, v2):
        raise OrderError(f"{v1} is not below {v2}")
    s = v1 + (1,)
    for u in extensions(s, depth):
        if not (prec(v1, u) and prec(u, v2)):
            raise OrderError(f"extension {u} of {s} escapes ({v1}, {v2})")
    return s


def pi_base_interval(s: tuple, t: tuple) -> tuple:
    """Incomparable v1 < v2 with (v1, v2) inside (s, t)."""
    if not prec(s, t):
        raise OrderError(f"{s} is not below {t}")
    if not comparable(s, t):
        return s, t
    if is_initial(s, t):
        return t + (0, 0), t + (0, 1)
    return s + (1, 0), s + (1, 1)


def cone_inside(s: tuple, t: tuple, depth: int) -> tuple:
    """A cone [u] with s < [u] < t, checked up to ``depth``."""
    v1, v2 = pi_base_interval(s, t)
    if not ((v1 == s or prec(s, v1)) and prec(v1, v2) and (v2 == t or prec(v2, t))):
        raise OrderError(f"interval ({v1}, {v2}) is not inside ({s}, {t})")
    u = refine_to_cone(v1, v2, depth)
    for w in extensions(u, depth):
        if not (prec(s, w) and prec(w, t)):
            raise OrderError(f"{w} in [{u}] escapes ({s}, {t})")
    return u


def interval(lo: tuple, hi: tuple, universe) -> list:
    return [u for u in universe if u != lo and u != hi and prec(lo, u) and prec(u, hi)]


@dataclass
class OrderReport:
    depth: int
    checks: dict = field(default_factory=dict)  # name -> (passed, witness)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())


def check_order(depth: int = 4, cone_depth: int = None) -> OrderReport:
    """Exhaustive order checks on 2^{<=depth}; cones are cut at ``cone_depth`` (default depth + 2)."""
    cone_depth = depth + 2 if cone_depth is None else cone_depth
    seqs = sequences(depth)
    rep = OrderReport(depth)
    n = len(seqs)
    lt = [[i != j and prec(seqs[i], seqs[j]) for j in range(n)] for i in range(n)]

    bad = next(((seqs[i], seqs[j]) for i in range(n) for j in range(n)
                if i != j and lt[i][j] == lt[j][i]), None)
    irreflexive_total = bad is None
    rep.checks["total"] = (irreflexive_total, None if bad is None else [list(bad[0]), list(bad[1])])

    triples = 0
    bad = None
    for i in range(n):
        for j in range(n):
            if not lt[i][j]:
                continue
            row = lt[j]
            for k in range(n):
                triples += 1
                if row[k] and not lt[i][k]:
                    bad = (seqs[i], seqs[j], seqs[k])
                    break
            if bad:
                break
        if bad:
            break
    rep.checks["transitive"] = (bad is None, {"triples": triples} if bad is None else [list(x) for x in bad])

    bad = None
    for i in range(n):
        for j in range(n):
            if lt[i][j]:
                m = dense_between(seqs[i], seqs[j])
                if not (prec(seqs[i], m) and prec(m, seqs[j])):
                    bad = (seqs[i], seqs[j], m)
    rep.checks["dense"] = (bad is None, None if bad is None else [list(x) for x in bad])

    bad = None
    count = 0
    for s in seqs:
        for t in seqs:
            if len(s) + 1 < len(t):
                count += 1
                if not cone_separation(s, t, cone_depth):
                    bad = (s, t)
    rep.checks["cone_separation"] = (bad is None, {"pairs": count} if bad is None else [list(x) for x in bad])

    bad = None
    count = 0
    for s in seqs:
        for t in seqs:
            if s != t and prec(s, t):
                count += 1
                try:
                    cone_inside(s, t, cone_depth)
                except OrderError as exc:
                    bad = (s, t, str(exc))
    rep.checks["pi_base"] = (bad is None, {"pairs": count} if bad is None else [list(bad[0]), list(bad[1]), bad[2]])

    bad = None
    for v1 in seqs:
        for v2 in seqs:
            if v1 != v2 and not comparable(v1, v2) and prec(v1, v2):
                try:
                    refine_to_cone(v1, v2, cone_depth)
                except OrderError as exc:
                    bad = (v1, v2, str(exc))
    rep.checks["refine"] = (bad is None, None if bad is None else [list(bad[0]), list(bad[1]), bad[2]])

    bad = None
    for s in seqs:
        cone = [t for t in seqs if is_initial(s, t)]
        for t1 in cone:
            for t2 in cone:
                if t1 != t2 and prec(t1, t2):
                    for u in seqs:
                        if u not in (t1, t2) and prec(t1, u) and prec(u, t2) and not is_initial(s, u):
                            bad = (s, t1, t2, u)
    rep.checks["convex_cones"] = (bad is None, None if bad is None else [list(x) for x in bad])

    nonempty = [t for t in seqs if t]
    ok = all(dagger(dagger(t)) == t for t in nonempty)
    ok = ok and all(in_U(t) != in_V(t) for t in nonempty)
    ok = ok and {dagger(u) for u in nonempty if in_U(u)} == {v for v in nonempty if in_V(v)}
    rep.checks["dagger_partition"] = (ok, None)

    ok = all(any(in_U(u) for u in extensions(s, depth + 1) if u != s)
             and any(in_V(v) for v in extensions(s, depth + 1) if v != s) for s in seqs)
    rep.checks["cofinal"] = (ok, None)
    return rep


@dataclass
class CellularMember:
    t: tuple
    u: tuple
    w: tuple
    w_lo: tuple
    w_hi: tuple
    points: frozenset  # {(u, 1, v) : v in V & (w_lo, w_hi)}


def build_cellular_family(depth: int, duplicate_u: bool = False) -> list:
    """Finite-stage family {(u,1)} x (V & (w-, w+)) indexed by t in U.

    t runs over U in order of nondecreasing length; u is an unused element of
    U extending t; w = t-dagger^1, w- = w^0, w+ = w^1, all within ``depth``.
    ``duplicate_u`` reuses the previous u (negative control).
    """
    universe = sequences(depth)
    vs = [v for v in universe if in_V(v)]
    used = set()
    family = []
    for t in sequences(depth - 2, min_length=1):
        if not in_U(t):
            continue
        if duplicate_u and family:
            u = family[-1].u
        else:
            u = next((x for x in extensions(t, depth) if in_U(x) and x not in used), None)
            if u is None:
                continue
        used.add(u)
        td = dagger(t)
        w = td + (1,)
        w_lo, w_hi = w + (0,), w + (1,)
        pts = frozenset((u, 1, v) for v in interval(w_lo, w_hi, vs))
        family.append(CellularMember(t, u, w, w_lo, w_hi, pts))
    return family


def cellular_family_check(depth: int = 5, duplicate_u: bool = False) -> dict:
    if depth < 3:
        raise OrderError("cellular family needs depth >= 3")
    family = build_cellular_family(depth, duplicate_u=duplicate_u)
    nonempty = all(m.points for m in family)
    placement = all(
        is_initial(dagger(m.t), m.w_lo) and is_initial(dagger(m.t), m.w_hi)
        and prec(m.w_lo, m.w) and prec(m.w, m.w_hi) and is_initial(m.t, m.u) and in_V(m.w)
        and (prec(m.t, m.w_lo) or prec(m.w_hi, m.t))
        for m in family
    )
    overlaps = [
        [list(a.u), list(b.u)]
        for i, a in enumerate(family)
        for b in family[i + 1:]
        if a.points & b.points
    ]
    distinct_u = len({m.u for m in family}) == len(family)
    return {
        "depth": depth,
        "size": len(family),
        "nonempty": nonempty,
        "placement": placement,
        "distinct_u": distinct_u,
        "disjoint": not overlaps,
        "overlaps": overlaps[:10],
        "passed": bool(family) and nonempty and placement and not overlaps,
    }
