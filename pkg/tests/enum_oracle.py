"""Reference evaluations that only ever enumerate C-sequence elements rung by rung."""

from ordwalks.csequence import c_of
from ordwalks.ordinal import ZERO

RUNG_LIMIT = 3000


def enumerate_below(s, gamma, limit=RUNG_LIMIT):
    out = [x for x in s.finite if x < gamma]
    for lad in s.ladders:
        n = 1
        while lad.element(n) < gamma:
            out.append(lad.element(n))
            n += 1
            if n > limit:
                raise AssertionError("ladder looks infinite below gamma")
    return sorted(out)


def enumerate_min_at_or_above(s, gamma, limit=RUNG_LIMIT):
    cands = [x for x in s.finite if x >= gamma]
    for lad in s.ladders:
        for n in range(1, limit):
            if lad.element(n) >= gamma:
                cands.append(lad.element(n))
                break
    return min(cands) if cands else None


def walk_steps(alpha, beta):
    """[(beta_i, C_beta_i below alpha)] along the walk from beta down to alpha."""
    steps = []
    while beta != alpha:
        s = c_of(beta)
        steps.append((beta, enumerate_below(s, alpha), s))
        beta = enumerate_min_at_or_above(s, alpha)
    return steps


def trace(alpha, beta):
    """Lower trace evaluated bottom-up from the explicit walk."""
    acc = set()
    for _, below, _ in reversed(walk_steps(alpha, beta)):
        if alpha == ZERO:
            continue
        m = below[-1]
        acc = {x for x in acc | {m} if x >= m}
    return tuple(sorted(acc))


def rho1(alpha, beta, closed=False):
    best = 0
    for _, below, s in walk_steps(alpha, beta):
        best = max(best, len(below) + (closed and alpha in s))
    return best
