"""Exact complex-rational scalars.

The default backend stores a complex number as a pair of arbitrary
precision rationals, so every zero test made by the classifiers is
decidable.  ``gmpy2.mpq`` is used when available (it is a drop-in for
``fractions.Fraction`` here), otherwise the stdlib ``Fraction``.

The optional floating backend is plain Python ``complex``; it exists
only for demonstration output and is rejected by every operation that
needs an exact zero test.
"""

from __future__ import annotations

import re as _re

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is normally present
    from fractions import Fraction as _Q


def rational(x) -> "_Q":
    """Coerce an int, string 'p/q' or rational to the rational backend."""
    return _Q(x)


class ComplexRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _Q(re))
        object.__setattr__(self, "im", _Q(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, ComplexRational):
            return x
        if isinstance(x, (int, type(_Q(0)))):
            return ComplexRational(x)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero ComplexRational")
        return ComplexRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def sort_key(self):
        """Lexicographic key on (re, im) for deterministic ordering."""
        return (self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- formatting ---------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ComplexRational({self.re!s}, {self.im!s})"


ZERO = ComplexRational(0)
ONE = ComplexRational(1)
I = ComplexRational(0, 1)


def CR(re, im=0) -> ComplexRational:
    """Shorthand constructor used pervasively in tests."""
    return ComplexRational(re, im)


def conj(x):
    """Conjugate that works for both scalar backends."""
    return x.conjugate()


def is_exact(x) -> bool:
    return isinstance(x, ComplexRational)


def format_scalar(x: ComplexRational) -> str:
    """Canonical string form: '3', '-1/2', '1/2+3i', '-2i', '1-1/3i'."""
    re_part, im_part = x.re, x.im
    if im_part == 0:
        return str(re_part)
    im_str = str(im_part)
    if re_part == 0:
        return f"{im_str}i"
    if im_str.startswith("-"):
        return f"{re_part}{im_str}i"
    return f"{re_part}+{im_str}i"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = _re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?=\s*(?:[+-]|$)))?\s*"
    rf"(?:(?P<im>[+-]?(?:\d+(?:/\d+)?\s*)?)[iIjJ])?\s*$"
)


def parse_scalar(text) -> ComplexRational:
    """Parse a scalar string such as '3', '-1/2', '1/2+3i', 'i', '2-i'.

    Integers are accepted directly for convenience in job files.
    """
    if isinstance(text, ComplexRational):
        return text
    if isinstance(text, int):
        return ComplexRational(text)
    if not isinstance(text, str):
        raise ValueError(f"cannot parse scalar from {text!r}")
    m = _SCALAR_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"malformed scalar string {text!r}")
    re_s = m.group("re")
    im_s = m.group("im")
    re_q = _Q(re_s) if re_s is not None else _Q(0)
    if im_s is None:
        im_q = _Q(0)
    else:
        im_s = im_s.replace(" ", "")
        if im_s in ("", "+"):
            im_q = _Q(1)
        elif im_s == "-":
            im_q = _Q(-1)
        else:
            # gmpy2's mpq rejects a leading '+', so drop it explicitly
            im_q = _Q(im_s.lstrip("+"))
    return ComplexRational(re_q, im_q)
