"""Exact arithmetic in the finite field GF(p^k).

Elements are plain integers in [0, q) with q = p^k.  The integer a encodes
the coefficient vector (c_0, ..., c_{k-1}) of a = sum c_i * alpha^i in base
p (c_0 is the least significant digit), where alpha is a root of the
modulus polynomial.  Index 0 is the additive identity and index 1 the
multiplicative identity; for prime fields the encoding is just the residue.

The modulus is chosen deterministically: among all monic irreducible
degree-k polynomials over GF(p), the one whose ascending coefficient tuple
(c_0, ..., c_{k-1}, 1) is lexicographically least.  This makes element
indices, and everything built on them, reproducible across runs.
"""

from __future__ import annotations

from itertools import product

# Fields up to this order get full add/mul lookup tables.
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod must be monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, ci in enumerate(mod):
                a[shift + i] = (a[shift + i] - lead * ci) % p
        _poly_trim(a)
    return a


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(poly)/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over GF(p)."""
    for tail in product(range(p), repeat=k):
        poly = list(tail) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over GF({p})")


class Field:
    """The finite field GF(p^k) with a fixed, reproducible element order.

    Parameters
    ----------
    p : prime characteristic
    k : extension degree (>= 1)

    All operations take and return integer element indices.  The instance
    is immutable after construction and safe to share between workers.
    """

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        self.p = p
        self.k = k
        self.q = p**k
        # Monic linear placeholder for prime fields; never used there.
        self.modulus = (0, 1) if k == 1 else least_irreducible(p, k)
        self._add_table: list[int] | None = None
        self._mul_table: list[int] | None = None
        self._inv_table: list[int] | None = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- representation ------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        """Base-p coefficient vector (c_0, ..., c_{k-1}) of element a."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_digits(self, digits) -> int:
        val = 0
        for c in reversed(list(digits)):
            val = val * self.p + c
        return val

    # -- arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a * self.q + b]
        return self._add_raw(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits((-c) % self.p for c in self.digits(a))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a * self.q + b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def dot(self, u, v) -> int:
        """Dot product of two element-index vectors."""
        acc = 0
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, b))
        return acc

    def elements(self) -> range:
        """All q elements in index order; element 0 comes first."""
        return range(self.q)

    # -- internals -------------------------------------------------------

    def _add_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self.digits(a), self.digits(b)
        return self.from_digits((x + y) % self.p for x, y in zip(da, db))

    def _mul_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        pa = list(self.digits(a))
        pb = list(self.digits(b))
        prod = _poly_mod(_poly_mul(pa, pb, self.p), list(self.modulus), self.p)
        prod += [0] * (self.k - len(prod))
        return self.from_digits(prod)

    def _build_tables(self) -> None:
        q = self.q
        self._add_table = [self._add_raw(a, b) for a in range(q) for b in range(q)]
        self._mul_table = [self._mul_raw(a, b) for a in range(q) for b in range(q)]
        inv = [0] * q
        for a in range(1, q):
            # a^(q-2); exercised against mul in the test suite
            inv[a] = self.pow(a, q - 2)
        self._inv_table = inv

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"Field(p={self.p})"
        return f"Field(p={self.p}, k={self.k}, modulus={self.modulus})"


def make_field(p: int, k: int = 1) -> Field:
    """Construct GF(p^k) with the canonical (lex-least) modulus."""
    return Field(p, k)
