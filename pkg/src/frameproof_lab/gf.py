"""Finite field arithmetic GF(p^e) for q up to 2^16.

Elements are integers 0..q-1 read as base-p digit vectors, i.e. polynomial
coefficients over GF(p) in increasing degree.  Extension fields reduce
modulo the first irreducible monic polynomial of degree e in that integer
encoding, so the field is the same on every run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import ParameterError

MAX_Q = 1 << 16


def factor_prime_power(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e, or ParameterError if q is not a prime power."""
    if q < 2:
        raise ParameterError(f"q={q} must be >= 2")
    rest = q
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            if rest != 1:
                raise ParameterError(f"q={q} is not a prime power")
            return p, e
        p += 1
    return rest, 1


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Long division of coefficient lists (increasing degree) over GF(p)."""
    num = list(num)
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(len(num) - len(den) + 1, 0)
    for shift in range(len(num) - len(den), -1, -1):
        coef = num[shift + len(den) - 1] * inv_lead % p
        if coef:
            quot[shift] = coef
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - coef * d) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    e = len(poly) - 1
    for deg in range(1, e // 2 + 1):
        for code in range(p**deg):
            den = _decode(code, p, deg) + [1]
            _, rem = _poly_divmod(poly, den, p)
            if rem == [0]:
                return False
    return True


def _decode(code: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(code % p)
        code //= p
    return out


def _encode(coeffs: list[int], p: int) -> int:
    val = 0
    for c in reversed(coeffs):
        val = val * p + c
    return val


@dataclass(frozen=True)
class GF:
    """The field with q = p^e elements, q <= 2^16."""

    q: int
    p: int = field(init=False)
    e: int = field(init=False)
    modulus: tuple[int, ...] = field(init=False)  # coefficients, increasing degree

    def __post_init__(self) -> None:
        if self.q > MAX_Q:
            raise ParameterError(f"q={self.q} exceeds the cap {MAX_Q}")
        p, e = factor_prime_power(self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)
        if e == 1:
            object.__setattr__(self, "modulus", (0, 1))
            return
        for code in range(self.q):
            poly = _decode(code, p, e) + [1]
            if _is_irreducible(poly, p):
                object.__setattr__(self, "modulus", tuple(poly))
                return
        raise AssertionError("no irreducible modulus found")  # cannot happen

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise ParameterError(f"element {a} outside field of size {self.q}")

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.e == 1:
            return (a + b) % self.p
        da, db = _decode(a, self.p, self.e), _decode(b, self.p, self.e)
        return _encode([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        self._check(a)
        if self.e == 1:
            return (-a) % self.p
        return _encode([(-x) % self.p for x in _decode(a, self.p, self.e)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.e == 1:
            return a * b % self.p
        da, db = _decode(a, self.p, self.e), _decode(b, self.p, self.e)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        _, rem = _poly_divmod(prod, list(self.modulus), self.p)
        rem += [0] * (self.e - len(rem))
        return _encode(rem, self.p)

    def pow(self, a: int, k: int) -> int:
        self._check(a)
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ParameterError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def eval_poly(self, coeffs: list[int], x: int) -> int:
        """Evaluate sum coeffs[i] * x^i by Horner's rule."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc
