"""Exact scalar arithmetic over the rationals and over prime fields."""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldSpec:
    """A coefficient field: either the rationals or a prime field F_p.

    Scalars are plain Python objects: Fraction for the rationals, int in
    range(p) for F_p.  All arithmetic goes through the field object so that
    downstream code never branches on the representation.
    """

    kind: str
    characteristic: int

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.kind == other.kind
            and self.characteristic == other.characteristic
        )

    def __hash__(self):
        return hash((self.kind, self.characteristic))

    def __repr__(self):
        if self.characteristic:
            return "PrimeField(%d)" % self.characteristic
        return "Rationals()"

    def to_json(self) -> dict:
        return {"kind": self.kind, "characteristic": self.characteristic}

    @staticmethod
    def from_json(data: dict) -> "FieldSpec":
        kind = data.get("kind")
        if kind == "rationals":
            return Rationals()
        if kind == "prime-field":
            return PrimeField(int(data["characteristic"]))
        raise FieldError("unknown field kind: %r" % (kind,))


class Rationals(FieldSpec):
    kind = "rationals"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def serialize(self, a) -> str:
        a = Fraction(a)
        return "%d/%d" % (a.numerator, a.denominator)

    def parse(self, s: str) -> Fraction:
        return Fraction(s)


class PrimeField(FieldSpec):
    kind = "prime-field"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError("characteristic must be prime, got %r" % (p,))
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n: int) -> int:
        return n % self.characteristic

    def add(self, a, b):
        return (a + b) % self.characteristic

    def sub(self, a, b):
        return (a - b) % self.characteristic

    def mul(self, a, b):
        return (a * b) % self.characteristic

    def neg(self, a):
        return (-a) % self.characteristic

    def inv(self, a):
        if a % self.characteristic == 0:
            raise FieldError("division by zero")
        return pow(a, self.characteristic - 2, self.characteristic)

    def is_zero(self, a) -> bool:
        return a % self.characteristic == 0

    def serialize(self, a) -> str:
        return str(a % self.characteristic)

    def parse(self, s: str) -> int:
        return int(s) % self.characteristic
