"""Exact coefficient fields: the rationals and prime fields GF(p).

Scalars of the rational field are plain :class:`fractions.Fraction` values.
Residues mod p use the small :class:`Residue` class below so that generic
code can rely on ``+ - * /`` and comparison with integer ``0``.
"""

from fractions import Fraction

from .errors import LpaError


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Residue:
    """An element of GF(p), stored as its representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.p = p
        self.value = int(value) % p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise LpaError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p)
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other) % self.p
        if d == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Residue(self.value * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Residue(self._coerce(other), self.p) / self

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pow__(self, n):
        if n < 0:
            return Residue(1, self.p) / Residue(pow(self.value, -n, self.p), self.p)
        return Residue(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, (Residue, int, Fraction)):
            try:
                return self.value == self._coerce(other) % self.p
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """A coefficient field. Use :data:`QQ` or :func:`GF`."""

    def __init__(self, characteristic=0):
        self.characteristic = characteristic
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, value):
        if self.characteristic == 0:
            if isinstance(value, Residue):
                raise LpaError("cannot coerce a residue into the rationals")
            if isinstance(value, str):
                return self.parse(value)
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Residue):
            if value.p != self.characteristic:
                raise LpaError(f"cannot coerce GF({value.p}) into {self}")
            return value
        r = Residue(0, self.characteristic)
        return r + value

    def parse(self, text):
        """Parse ``"p"`` or ``"p/q"``."""
        text = text.strip()
        if self.characteristic == 0:
            return Fraction(text)
        num, _, den = text.partition("/")
        value = Residue(int(num), self.characteristic)
        return value / int(den) if den else value

    def format(self, value):
        if self.characteristic == 0:
            value = Fraction(value)
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return str(self(value).value)

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p):
    if not _is_prime(p):
        raise LpaError(f"GF(p) needs a prime, got {p}")
    return Field(p)


def field_from_spec(spec):
    """Field from a CLI spec: ``"QQ"``/``"rationals"`` or ``"gf:p"``."""
    s = spec.strip().lower()
    if s in ("qq", "q", "rationals", "rational"):
        return QQ
    if s.startswith("gf:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise LpaError(f"bad field spec {spec!r}") from None
        return GF(p)
    raise LpaError(f"bad field spec {spec!r}")
