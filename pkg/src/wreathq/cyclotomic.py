"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A scalar is a polynomial in zeta_m with rational coefficients, reduced
modulo the m-th cyclotomic polynomial.  For m = 1 (and m = 2, where
phi(m) = 1 as well) the representation degenerates to a single rational,
so plain rational arithmetic is a special case.  No floating point is
used anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import FormatError, OrderMismatchError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    """Quotient and remainder of polynomials, coefficients low-degree first."""
    num = list(num)
    q = [_ZERO] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        coeff = num[k + len(den) - 1] / lead
        if coeff:
            q[k] = coeff
            for t, d in enumerate(den):
                num[k + t] -= coeff * d
    return q, _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Coefficients (low-degree first, monic) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("cyclotomic order must be a positive integer")
    num = [Fraction(-1)] + [_ZERO] * (m - 1) + [_ONE]
    for d in range(1, m):
        if m % d == 0:
            q, r = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            if r:
                raise AssertionError("cyclotomic division must be exact")
            num = q
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _high_power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """zeta^k reduced mod Phi_m, for k = phi(m) .. 2*phi(m) - 2."""
    phi = euler_phi(m)
    mod = list(cyclotomic_polynomial(m))
    rows = []
    cur = [_ZERO] * phi
    # cur starts as zeta^phi = -(low part of Phi_m)
    for t in range(phi):
        cur[t] = -mod[t]
    rows.append(tuple(cur))
    for _ in range(phi - 2):
        nxt = [_ZERO] + cur[:-1]
        top = cur[-1]
        if top:
            for t in range(phi):
                nxt[t] += top * rows[0][t]
        rows.append(tuple(nxt))
        cur = nxt
    return tuple(rows)


class Scalar:
    """An element of Q(zeta_m), reduced mod the m-th cyclotomic polynomial.

    Immutable.  Arithmetic with plain ``int``/``Fraction`` coerces them into
    the same field; combining scalars of different orders raises
    :class:`OrderMismatchError` (no implicit field embeddings).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int = 1):
        phi = euler_phi(order)
        c = tuple(Fraction(x) for x in coeffs)
        if len(c) != phi:
            raise ValueError(f"need {phi} coefficients for order {order}, got {len(c)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------
    @staticmethod
    def _mk(coeffs: tuple, order: int) -> "Scalar":
        """Internal fast constructor: coeffs already reduced Fractions."""
        s = Scalar.__new__(Scalar)
        object.__setattr__(s, "order", order)
        object.__setattr__(s, "coeffs", coeffs)
        return s

    @staticmethod
    def zero(order: int = 1) -> "Scalar":
        return _cached_const(order, 0)

    @staticmethod
    def one(order: int = 1) -> "Scalar":
        return _cached_const(order, 1)

    @staticmethod
    def rational(value, order: int = 1) -> "Scalar":
        q = Fraction(value)
        phi = euler_phi(order)
        return Scalar((q,) + (_ZERO,) * (phi - 1), order)

    @staticmethod
    def zeta(order: int, power: int = 1) -> "Scalar":
        """zeta_m^power as a reduced scalar."""
        power %= order
        poly = [_ZERO] * power + [_ONE]
        phi = euler_phi(order)
        if power < phi:
            poly += [_ZERO] * (phi - 1 - power)
            return Scalar(poly, order)
        _, rem = _poly_divmod(poly, list(cyclotomic_polynomial(order)))
        rem += [_ZERO] * (phi - len(rem))
        return Scalar(rem, order)

    # -- coercion ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"cannot mix cyclotomic orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.rational(other, self.order)
        return None

    def embed(self, order: int) -> "Scalar":
        """Explicitly view a rational scalar inside Q(zeta_order)."""
        if order == self.order:
            return self
        q = self.as_fraction()
        return Scalar.rational(q, order)

    # -- predicates --------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic --------------------------------------------------
    def __add__(self, other):
        o = other if type(other) is Scalar else self._coerce(other)
        if o is None:
            return NotImplemented
        if o.order != self.order:
            raise OrderMismatchError(
                f"cannot mix cyclotomic orders {self.order} and {o.order}")
        return Scalar._mk(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)), self.order)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._mk(tuple(-a for a in self.coeffs), self.order)

    def __sub__(self, other):
        o = other if type(other) is Scalar else self._coerce(other)
        if o is None:
            return NotImplemented
        if o.order != self.order:
            raise OrderMismatchError(
                f"cannot mix cyclotomic orders {self.order} and {o.order}")
        return Scalar._mk(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)), self.order)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = other if type(other) is Scalar else self._coerce(other)
        if o is None:
            return NotImplemented
        if o.order != self.order:
            raise OrderMismatchError(
                f"cannot mix cyclotomic orders {self.order} and {o.order}")
        a, b = self.coeffs, o.coeffs
        phi = len(a)
        if phi == 1:
            return Scalar._mk((a[0] * b[0],), self.order)
        prod = [_ZERO] * (2 * phi - 1)
        for s, x in enumerate(a):
            if x:
                for t, y in enumerate(b):
                    if y:
                        prod[s + t] += x * y
        out = prod[:phi]
        table = _high_power_table(self.order)
        for k in range(phi, 2 * phi - 1):
            top = prod[k]
            if top:
                row = table[k - phi]
                for t in range(phi):
                    if row[t]:
                        out[t] += top * row[t]
        return Scalar._mk(tuple(out), self.order)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("scalar is zero")
        if self.is_rational():
            return Scalar.rational(1 / self.coeffs[0], self.order)
        # extended gcd of self against Phi_m; the gcd is a nonzero constant
        r0 = list(cyclotomic_polynomial(self.order))
        r1 = _poly_trim(list(self.coeffs))
        s0, s1 = [], [_ONE]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s
        const = r1[0]
        inv = [c / const for c in s1]
        _, rem = _poly_divmod(inv, list(cyclotomic_polynomial(self.order)))
        rem += [_ZERO] * (euler_phi(self.order) - len(rem))
        return Scalar(tuple(rem), self.order)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons / hashing ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.rational(other, self.order)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    # -- text form ----------------------------------------------------
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r}, order={self.order})"


@lru_cache(maxsize=None)
def _cached_const(order: int, value: int) -> Scalar:
    return Scalar.rational(value, order)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for s, x in enumerate(a):
        if x:
            for t, y in enumerate(b):
                out[s + t] += x * y
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [_ZERO] * n
    for t in range(n):
        x = a[t] if t < len(a) else _ZERO
        y = b[t] if t < len(b) else _ZERO
        out[t] = x - y
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# The scalar text grammar used by every file format:
#   term (('+'|'-') term)*
#   term     = rational | rational '*' 'z' '^' k | 'z' '^' k | 'z'
#   rational = int | int '/' posint
# 'z' denotes zeta_m for the session order m.  The parser is tolerant of
# whitespace and of 'rational*z' without an exponent; the printer always
# emits the strict grammar.
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:\s*/\s*\d+)?)\s*(?:\*\s*z(?:\s*\^\s*(?P<k1>\d+))?)?
          |
          z(?:\s*\^\s*(?P<k2>\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str, order: int = 1) -> Scalar:
    """Parse the scalar grammar into an element of Q(zeta_order)."""
    s = text.strip()
    if not s:
        raise FormatError("empty scalar")
    out = Scalar.zero(order)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise FormatError(f"bad scalar syntax at {s[pos:]!r} in {text!r}")
        sign = m.group("sign")
        if sign is None and not first:
            raise FormatError(f"missing '+'/'-' before {s[pos:]!r} in {text!r}")
        neg = sign == "-"
        if m.group("coef") is not None:
            try:
                coef = Fraction(m.group("coef").replace(" ", ""))
            except ZeroDivisionError as exc:
                raise FormatError(f"zero denominator in {text!r}") from exc
            k = m.group("k1")
            if k is None and "*" in s[pos:m.end()]:
                k = "1"
            power = int(k) if k is not None else 0
        else:
            coef = _ONE
            k = m.group("k2")
            power = int(k) if k is not None else 1
        if power and order == 1:
            raise FormatError("'z' is not available at cyclotomic order 1")
        term = Scalar.rational(coef, order)
        if power:
            term = term * Scalar.zeta(order, power)
        out = out - term if neg else out + term
        pos = m.end()
        first = False
    return out


def format_scalar(x: Scalar) -> str:
    """Canonical text form, strictly inside the scalar grammar."""
    parts = [(k, c) for k, c in enumerate(x.coeffs) if c]
    if not parts:
        return "0"
    chunks: list[str] = []
    for k, c in parts:
        if k == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "z" if k == 1 else f"z^{k}"
        else:
            body = f"{abs(c)}*z^{k}"
        if not chunks:
            if c < 0:
                # stay inside the grammar: a leading negative z-term keeps
                # its sign on the rational coefficient
                if k == 0:
                    body = str(c)
                else:
                    body = f"-1*z^{k}" if abs(c) == 1 else f"{c}*z^{k}"
            chunks.append(body)
        else:
            chunks.append(("- " if c < 0 else "+ ") + body)
    return " ".join(chunks)
