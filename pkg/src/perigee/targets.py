"""Growth targets: the prescribed logarithmic rate for periodic-point counts.

A target is zero, an exact positive rational, or infinity.  Irrational rates
cannot be represented; callers supply a rational approximation (for example
6932/10000 for log 2) and the exactness of everything downstream is relative
to that rational.
"""

from dataclasses import dataclass
from fractions import Fraction

ZERO = "zero"
FINITE = "finite"
INFINITE = "infinite"


@dataclass(frozen=True)
class GrowthTarget:
    kind: str
    value: Fraction | None = None

    def __post_init__(self):
        if self.kind not in (ZERO, FINITE, INFINITE):
            raise ValueError("unknown growth-target kind %r" % (self.kind,))
        if self.kind == FINITE:
            if not isinstance(self.value, Fraction) or self.value <= 0:
                raise ValueError("finite growth target must be a positive Fraction")
        elif self.value is not None:
            raise ValueError("%s target carries no value" % self.kind)

    @classmethod
    def zero(cls):
        return cls(ZERO)

    @classmethod
    def finite(cls, value):
        return cls(FINITE, Fraction(value))

    @classmethod
    def infinite(cls):
        return cls(INFINITE)

    @classmethod
    def parse(cls, text):
        """Parse 'zero', 'infinite'/'inf', 'a/b' or an exact decimal literal."""
        t = text.strip().lower()
        if t == ZERO:
            return cls.zero()
        if t in (INFINITE, "inf", "infinity"):
            return cls.infinite()
        try:
            value = Fraction(t)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("cannot parse growth target %r" % text) from exc
        if value == 0:
            return cls.zero()
        return cls.finite(value)

    def describe(self):
        if self.kind == FINITE:
            return str(self.value)
        return self.kind

    def to_json(self):
        if self.kind == FINITE:
            return {"kind": FINITE, "value": str(self.value)}
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, obj):
        kind = obj.get("kind")
        if kind == FINITE:
            return cls.finite(Fraction(obj["value"]))
        if kind == ZERO:
            return cls.zero()
        if kind == INFINITE:
            return cls.infinite()
        raise ValueError("bad growth-target object %r" % (obj,))
