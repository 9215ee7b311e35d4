"""Small finite fields GF(p^e) with table-based arithmetic.

Elements are integers 0..q-1 encoding coefficient vectors base p
(index = c0 + c1*p + ... ). The reduction modulus is the lexicographically
smallest monic irreducible of degree e, scanning coefficient tuples from
the x^(e-1) coefficient down to the constant term.
"""

from __future__ import annotations

from itertools import product

from .core import HadsplitError

__all__ = ["NotPrimePower", "GF", "factor_prime_power", "is_prime_power"]


class NotPrimePower(HadsplitError):
    """Order is not a prime power."""


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if p * p > q:
            return q, 1
        if q % p == 0:
            e, m = 0, q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise NotPrimePower(f"{q} is not a prime power")
            return p, e
    return q, 1


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except NotPrimePower:
        return False
    return True


def _poly_mul_mod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    # modulus is monic of degree e; operands have degree < e
    e = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for d in range(len(out) - 1, e - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for k in range(e + 1):
                out[d - e + k] = (out[d - e + k] - c * modulus[k]) % p
    return [v % p for v in out[:e]] + [0] * max(0, e - len(out))


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """Brute force irreducibility for small degree: no monic factor of degree <= e//2."""
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for coeffs in product(range(p), repeat=d):
            divisor = list(coeffs) + [1]
            if _poly_divides(divisor, modulus, p):
                return False
    return True


def _poly_divides(d: list[int], f: list[int], p: int) -> bool:
    rem = list(f)
    dd = len(d) - 1
    inv_lead = pow(d[-1], p - 2, p)
    while len(rem) - 1 >= dd:
        if rem[-1] == 0:
            rem.pop()
            continue
        coef = rem[-1] * inv_lead % p
        shift = len(rem) - 1 - dd
        for i in range(dd + 1):
            rem[shift + i] = (rem[shift + i] - coef * d[i]) % p
        rem.pop()
    return all(v == 0 for v in rem)


def _find_modulus(p: int, e: int) -> list[int]:
    # scan (a_{e-1}, ..., a_0) in lexicographic order
    for high in product(range(p), repeat=e):
        modulus = [high[e - 1 - i] for i in range(e)] + [1]
        if modulus[0] == 0:
            continue  # constant term 0 means x divides it
        if _is_irreducible(modulus, p):
            return modulus
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """GF(q) with add/mul tables, quadratic character, and inverses."""

    def __init__(self, q: int):
        p, e = factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = None
            self._add = [[(x + y) % p for y in range(p)] for x in range(p)]
            self._mul = [[(x * y) % p for y in range(p)] for x in range(p)]
        else:
            self.modulus = _find_modulus(p, e)
            vecs = [self._decode(i) for i in range(q)]
            self._add = [
                [self._encode([(x + y) % p for x, y in zip(vecs[i], vecs[j])]) for j in range(q)]
                for i in range(q)
            ]
            self._mul = [[0] * q for _ in range(q)]
            for i in range(q):
                for j in range(i, q):
                    v = self._encode(_poly_mul_mod(vecs[i], vecs[j], self.modulus, p))
                    self._mul[i][j] = v
                    self._mul[j][i] = v
        self._neg = [0] * q
        for x in range(q):
            for y in range(q):
                if self._add[x][y] == 0:
                    self._neg[x] = y
                    break
        self._inv = [0] * q
        for x in range(1, q):
            for y in range(1, q):
                if self._mul[x][y] == 1:
                    self._inv[x] = y
                    break
        self._squares = {self._mul[x][x] for x in range(1, q)}

    def _decode(self, i: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(i % self.p)
            i //= self.p
        return out

    def _encode(self, coeffs: list[int]) -> int:
        i = 0
        for c in reversed(coeffs[: self.e]):
            i = i * self.p + c
        return i

    def elements(self) -> list[int]:
        return list(range(self.q))

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("no inverse of 0")
        return self._inv[x]

    def chi(self, x: int) -> int:
        """Quadratic character: 0 at 0, +1 on squares, -1 otherwise."""
        if x == 0:
            return 0
        return 1 if x in self._squares else -1
