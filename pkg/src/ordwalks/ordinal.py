"""Cantor-normal-form ordinals below omega^10.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents and positive coefficients; the empty tuple is 0.
Python tuple comparison on that representation is exactly ordinal comparison,
which is what makes the class cheap enough for the walk recursions.

Text form (used by every CLI flag that takes an ordinal)::

    sum  := term ('+' term)*
    term := 'w^' nat ('*' pos)? | 'w' ('*' pos)? | pos | '0'
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import NamedTuple, Optional

MAX_EXPONENT = 9


class OrdinalError(ValueError):
    """Base class for ordinal construction and parsing errors."""


class CapExceeded(OrdinalError):
    """An ordinal at or above omega^10 was requested."""


class CNFSyntaxError(OrdinalError):
    """Text does not follow the CNF grammar."""


class NonCanonicalCNF(CNFSyntaxError):
    """Terms are not in strictly decreasing exponent order."""


class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple((int(e), int(c)) for e, c in terms)
        prev = None
        for e, c in terms:
            if e < 0 or c < 1:
                raise OrdinalError(f"bad term exponent={e} coefficient={c}")
            if e > MAX_EXPONENT:
                raise CapExceeded(f"exponent {e} exceeds cap {MAX_EXPONENT}")
            if prev is not None and e >= prev:
                raise NonCanonicalCNF("exponents must strictly decrease")
            prev = e
        self.terms = terms
        self._hash = hash(terms)

    @classmethod
    def _raw(cls, terms):
        # trusted constructor for already-canonical term tuples
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = hash(terms)
        return obj

    @staticmethod
    def nat(n: int) -> "Ordinal":
        return nat(n)

    @staticmethod
    def omega_pow(exponent: int, coefficient: int = 1) -> "Ordinal":
        return Ordinal(((exponent, coefficient),))

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.terms < other.terms

    def __le__(self, other):
        return self.terms <= other.terms

    def __gt__(self, other):
        return self.terms > other.terms

    def __ge__(self, other):
        return self.terms >= other.terms

    def __add__(self, other):
        return add(self, other)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Ordinal({format_cnf(self)!r})"

    def __str__(self):
        return format_cnf(self)

    def __reduce__(self):
        return (Ordinal, (self.terms,))

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def __int__(self):
        if not self.is_finite:
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def least_exponent(self) -> int:
        if not self.terms:
            raise OrdinalError("0 has no terms")
        return self.terms[-1][0]

    @property
    def leading_exponent(self) -> int:
        if not self.terms:
            raise OrdinalError("0 has no terms")
        return self.terms[0][0]


ZERO = Ordinal._raw(())
OMEGA = Ordinal._raw(((1, 1),))
OMEGA_SQ = Ordinal._raw(((2, 1),))


@lru_cache(maxsize=4096)
def nat(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError(f"negative natural {n}")
    return ZERO if n == 0 else Ordinal._raw(((0, n),))


def ordinal(value) -> Ordinal:
    """Coerce an int, CNF string or Ordinal to an Ordinal."""
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(value, int):
        return nat(value)
    if isinstance(value, str):
        return parse_cnf(value)
    raise TypeError(f"cannot make an ordinal from {value!r}")


_TERM = re.compile(r"^(?:w\^(0|[1-9][0-9]*)(?:\*([1-9][0-9]*))?|w(?:\*([1-9][0-9]*))?|([1-9][0-9]*))$")


def parse_cnf(text: str) -> Ordinal:
    text = text.replace(" ", "")
    if text == "0":
        return ZERO
    if not text:
        raise CNFSyntaxError("empty ordinal text")
    terms = []
    for part in text.split("+"):
        m = _TERM.match(part)
        if m is None:
            raise CNFSyntaxError(f"bad CNF term {part!r} in {text!r}")
        exp_s, coef_s, wcoef_s, nat_s = m.groups()
        if nat_s is not None:
            e, c = 0, int(nat_s)
        elif exp_s is not None:
            e, c = int(exp_s), int(coef_s or 1)
        else:
            e, c = 1, int(wcoef_s or 1)
        if e > MAX_EXPONENT:
            raise CapExceeded(f"exponent {e} exceeds cap {MAX_EXPONENT} in {text!r}")
        if terms and e >= terms[-1][0]:
            raise NonCanonicalCNF(f"terms of {text!r} are not in strictly decreasing exponent order")
        terms.append((e, c))
    return Ordinal._raw(tuple(terms))


def format_cnf(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
            continue
        head = "w" if e == 1 else f"w^{e}"
        parts.append(head if c == 1 else f"{head}*{c}")
    return "+".join(parts)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b; terms of a below the leading exponent of b are absorbed."""
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead_e, lead_c = b.terms[0]
    kept = []
    for e, c in a.terms:
        if e > lead_e:
            kept.append((e, c))
        elif e == lead_e:
            kept.append((e, c + lead_c))
            return Ordinal._raw(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal._raw(tuple(kept) + b.terms)


def sub(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique d with b + d == a (requires b <= a)."""
    if b > a:
        raise OrdinalError(f"{b} > {a}: no left difference")
    at, bt = a.terms, b.terms
    i = 0
    while i < len(bt) and at[i] == bt[i]:
        i += 1
    if i == len(bt):
        return Ordinal._raw(at[i:])
    e, c = at[i]
    if e == bt[i][0]:
        return Ordinal._raw(((e, c - bt[i][1]),) + at[i + 1:])
    return Ordinal._raw(at[i:])


def omega_times(k: int) -> Ordinal:
    return ZERO if k == 0 else Ordinal._raw(((1, k),))


class Classification(NamedTuple):
    kind: str  # "zero" | "successor" | "limit"
    pred: Optional[Ordinal] = None


def classify(a: Ordinal) -> Classification:
    if not a.terms:
        return Classification("zero")
    e, c = a.terms[-1]
    if e != 0:
        return Classification("limit")
    head = a.terms[:-1]
    return Classification("successor", Ordinal._raw(head + ((0, c - 1),) if c > 1 else head))


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] > 0


def predecessor(a: Ordinal) -> Ordinal:
    cls = classify(a)
    if cls.kind != "successor":
        raise OrdinalError(f"{a} is not a successor")
    return cls.pred


def lambda_degree(a: Ordinal) -> int:
    """Least CNF exponent: a is a limit iff >= 1, in Lambda' iff >= 2, in Lambda'' iff >= 3."""
    if not a.terms:
        raise OrdinalError("lambda_degree of 0 is undefined")
    return a.terms[-1][0]


def in_lambda(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] >= 1


def in_lambda1(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] >= 2


def in_lambda2(a: Ordinal) -> bool:
    return bool(a.terms) and a.terms[-1][0] >= 3


def delta_sub(a: Ordinal) -> Ordinal:
    """Supremum of the Lambda' elements strictly below a.

    Outside Lambda' this is a with every term of exponent < 2 dropped. On
    Lambda' \\ Lambda'' the supremum is attained one omega^2 lower; on
    Lambda'' it is a itself.
    """
    if a <= OMEGA_SQ:
        raise OrdinalError(f"delta_sub needs a > w^2, got {a}")
    e, c = a.terms[-1]
    if e >= 3:
        return a
    if e == 2:
        head = a.terms[:-1]
        return Ordinal._raw(head + ((2, c - 1),) if c > 1 else head)
    return Ordinal._raw(tuple(t for t in a.terms if t[0] >= 2))


def _band_split(a: Ordinal):
    """Return (delta, k) when a == delta + w*k with delta in Lambda', else None."""
    if len(a.terms) < 2:
        return None
    e, k = a.terms[-1]
    if e != 1:
        return None
    return Ordinal._raw(a.terms[:-1]), k


def in_T(a: Ordinal) -> bool:
    if a <= OMEGA_SQ:
        return False
    d = delta_sub(a)
    if not d < a:
        return False
    return a <= add(d, omega_times(9))


def in_X(a: Ordinal) -> bool:
    split = _band_split(a)
    return split is not None and split[1] == 8 and in_lambda2(split[0])


def in_Y(a: Ordinal) -> bool:
    split = _band_split(a)
    return split is not None and split[1] == 9 and lambda_degree(split[0]) == 2


def band_index(a: Ordinal) -> Optional[int]:
    """k when a = delta_a + w*k is a limit in T, else None."""
    split = _band_split(a)
    if split is None or split[1] > 9:
        return None
    return split[1]
