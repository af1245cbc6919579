"""Integer Laurent polynomials in a single variable ``v``.

A :class:`Laurent` is an immutable mapping ``exponent -> coefficient`` with
no zero coefficients stored.  All arithmetic is exact over the integers.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping


class NotDivisible(ArithmeticError):
    """Raised when an exact division has a non-integral quotient."""


class Laurent:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for n, a in coeffs.items():
                if a:
                    c[int(n)] = int(a)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "Laurent":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, a: int) -> "Laurent":
        return cls._raw({0: a} if a else {})

    @classmethod
    def monomial(cls, n: int, a: int = 1) -> "Laurent":
        return cls._raw({n: a} if a else {})

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "Laurent":
        c: dict[int, int] = {}
        for n, a in pairs:
            c[int(n)] = c.get(int(n), 0) + int(a)
        return cls(c)

    # -- inspection -----------------------------------------------------
    def items(self):
        return sorted(self._c.items())

    def coeff(self, n: int) -> int:
        return self._c.get(n, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def __call__(self, x):
        """Evaluate at ``x``; ``x`` may be an int, Fraction or float."""
        total = 0
        for n, a in self._c.items():
            total += a * x**n
        return total

    def at_one(self) -> int:
        return sum(self._c.values())

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Laurent):
            if isinstance(other, int):
                other = Laurent.const(other)
            else:
                return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for n, a in other._c.items():
            s = c.get(n, 0) + a
            if s:
                c[n] = s
            else:
                c.pop(n, None)
        return Laurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw({n: -a for n, a in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return Laurent._raw({n: a * other for n, a in self._c.items()})
        if not isinstance(other, Laurent):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        if len(other._c) == 1:
            (m, b), = other._c.items()
            return Laurent._raw({n + m: a * b for n, a in self._c.items()})
        if len(self._c) == 1:
            return other * self
        c: dict[int, int] = {}
        for n, a in self._c.items():
            for m, b in other._c.items():
                k = n + m
                c[k] = c.get(k, 0) + a * b
        return Laurent._raw({k: a for k, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            # only the units +-v^n have inverses
            if len(self._c) != 1 or abs(next(iter(self._c.values()))) != 1:
                raise ValueError("only monomials +-v^n can be raised to negative powers")
            (n, a), = self._c.items()
            return Laurent._raw({n * k: a if k % 2 else 1})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "Laurent":
        """Multiply by ``v**k``."""
        if not k:
            return self
        return Laurent._raw({n + k: a for n, a in self._c.items()})

    def bar(self) -> "Laurent":
        return Laurent._raw({-n: a for n, a in self._c.items()})

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"Laurent({self})"

    def __str__(self):
        return to_string(self)

    def to_json(self) -> list:
        return [[n, a] for n, a in self.items()]


ZERO = Laurent._raw({})
ONE = Laurent._raw({0: 1})
V = Laurent._raw({1: 1})


def add(f: Laurent, g: Laurent) -> Laurent:
    return f + g


def mul(f: Laurent, g: Laurent) -> Laurent:
    return f * g


def bar(f: Laurent) -> Laurent:
    return f.bar()


def gaussian_integer(a: int) -> Laurent:
    """The quantum integer ``[a] = v^(a-1) + v^(a-3) + ... + v^(1-a)``."""
    if a < 0:
        raise ValueError("a must be non-negative")
    return Laurent._raw({a - 1 - 2 * t: 1 for t in range(a)})


_FACTORIALS = [ONE]


def gaussian_factorial(a: int) -> Laurent:
    if a < 0:
        raise ValueError("a must be non-negative")
    while len(_FACTORIALS) <= a:
        m = len(_FACTORIALS)
        _FACTORIALS.append(_FACTORIALS[-1] * gaussian_integer(m))
    return _FACTORIALS[a]


def exact_div(f: Laurent, g: Laurent) -> Laurent:
    """Return ``q`` with ``f == q * g``, or raise :class:`NotDivisible`."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if f.is_zero():
        return ZERO
    gc = g._c
    if len(gc) == 1:
        (m, b), = gc.items()
        out = {}
        for n, a in f._c.items():
            q, r = divmod(a, b)
            if r:
                raise NotDivisible(f"{f} is not divisible by {g}")
            out[n - m] = q
        return Laurent._raw(out)
    # long division from the top degree down
    rem = dict(f._c)
    g_top = max(gc)
    g_low = min(gc)
    lead = gc[g_top]
    f_low = min(rem)
    quot = {}
    while rem:
        top = max(rem)
        if top - g_top < f_low - g_low:
            raise NotDivisible(f"{f} is not divisible by {g}")
        a = rem[top]
        q, r = divmod(a, lead)
        if r:
            raise NotDivisible(f"{f} is not divisible by {g}")
        shift = top - g_top
        quot[shift] = q
        for m, b in gc.items():
            k = m + shift
            s = rem.get(k, 0) - q * b
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return Laurent._raw(quot)


def bar_symmetric_part(f: Laurent) -> Laurent:
    """The unique bar-invariant ``g`` with ``f - g`` supported on positive exponents."""
    c = {}
    for n, a in f._c.items():
        if n == 0:
            c[0] = a
        elif n < 0:
            c[n] = c.get(n, 0) + a
            c[-n] = c.get(-n, 0) + a
    return Laurent(c)


def in_vZv(f: Laurent) -> bool:
    return all(n >= 1 for n in f._c)


def to_string(f: Laurent) -> str:
    """Canonical text form, ascending exponents: ``v^-2+2+v^3``."""
    if not f._c:
        return "0"
    out = []
    for n, a in f.items():
        if n == 0:
            body = str(abs(a))
        else:
            mono = "v" if n == 1 else f"v^{n}"
            body = mono if abs(a) == 1 else f"{abs(a)}{mono}"
        sign = "-" if a < 0 else "+"
        if not out and sign == "+":
            out.append(body)
        else:
            out.append(sign + body)
    return "".join(out)


_TERM = re.compile(r"([+-]?)(\d*)(v(?:\^(-?\d+))?)?")


def parse(text: str) -> Laurent:
    """Inverse of :func:`to_string`; also accepts ``.`` for zero and spaces."""
    s = text.replace(" ", "")
    if s in ("", "0", "."):
        return ZERO
    c: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        a = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            n = int(m.group(4)) if m.group(4) is not None else 1
        else:
            n = 0
        c[n] = c.get(n, 0) + sign * a
        pos = m.end()
    return Laurent(c)
