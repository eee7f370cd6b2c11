"""Prime fields F_p with p < 2**31, so products of two residues fit in 63 bits."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAUnit, SmallCharacteristic, UsageError

DEFAULT_PRIME = 7919
_MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    i = 17
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    modulus: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.modulus
        if not isinstance(p, int) or not is_prime(p):
            raise UsageError(f"modulus {p!r} is not prime")
        if p >= _MAX_PRIME:
            raise UsageError(f"modulus {p} too large, need p < 2^31")

    @property
    def p(self) -> int:
        return self.modulus

    def __call__(self, value) -> int:
        """Reduce an int or Fraction to its canonical residue in [0, p)."""
        p = self.modulus
        if isinstance(value, Fraction):
            return value.numerator % p * self.inv(value.denominator % p) % p
        return int(value) % p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return a * b % self.modulus

    def neg(self, a: int) -> int:
        return -a % self.modulus

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise NotAUnit("zero has no inverse")
        return pow(a, -1, self.modulus)

    def require_order(self, m: int) -> None:
        """Check that every denominator used at order m is invertible."""
        if self.modulus <= 4 * m:
            raise SmallCharacteristic(
                f"p = {self.modulus} must exceed 4*m = {4 * m} for order {m}")

    def signed(self, a: int) -> int:
        """Symmetric representative, handy for printing."""
        a %= self.modulus
        return a - self.modulus if a > self.modulus // 2 else a
