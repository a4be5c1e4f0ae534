"""Exact Jacobi polynomials of RM_q(1, m): brute force, closed forms,
count-table assembly, and the MacWilliams-type dual transform.

A Jacobi polynomial for a position set T of size t in a code of length n
is stored sparsely as a map from exponent quadruples (e_w, e_z, e_x, e_y)
to arbitrary-precision integer coefficients.  Every term satisfies
e_w + e_z = t and e_x + e_y = n - t, and evaluating at (1, 1, 1, 1)
returns the number of codewords.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from itertools import product

from .grm import (
    COLLINEAR_TRIPLE,
    GENERIC,
    Codeword,
    GrmCode,
    PointSet,
    TClass,
    translate_T,
    _neg_point,
)
from ._parallel import run_chunks

ExpKey = tuple[int, int, int, int]


@dataclass(frozen=True)
class JacobiPolynomial:
    """Bi-homogeneous 4-variable polynomial in (w, z, x, y)."""

    t: int
    n: int
    terms: dict[ExpKey, int] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, coeff in self.terms.items():
            ew, ez, ex, ey = key
            if min(key) < 0:
                raise ValueError(f"negative exponent in term {key}")
            if ew + ez != self.t or ex + ey != self.n - self.t:
                raise ValueError(
                    f"term {key} breaks bi-homogeneity for t={self.t}, n={self.n}"
                )
            if coeff:
                clean[key] = coeff
        object.__setattr__(self, "terms", clean)

    def coefficient(self, e_w: int, e_z: int, e_x: int, e_y: int) -> int:
        return self.terms.get((e_w, e_z, e_x, e_y), 0)

    def evaluate(self, w: int, z: int, x: int, y: int) -> int:
        return sum(
            c * w**ew * z**ez * x**ex * y**ey
            for (ew, ez, ex, ey), c in self.terms.items()
        )

    def __add__(self, other: "JacobiPolynomial") -> "JacobiPolynomial":
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return JacobiPolynomial(self.t, self.n, terms)

    def __sub__(self, other: "JacobiPolynomial") -> "JacobiPolynomial":
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) - c
        return JacobiPolynomial(self.t, self.n, terms)

    def _check_compatible(self, other: "JacobiPolynomial") -> None:
        if self.t != other.t or self.n != other.n:
            raise ValueError(
                f"incompatible polynomials: (t={self.t}, n={self.n}) "
                f"vs (t={other.t}, n={other.n})"
            )

    def to_records(self) -> list[dict]:
        """Serializable term list; coefficients as decimal strings since
        they may exceed 64 bits."""
        records = []
        for key in sorted(self.terms, key=lambda k: (-k[0], -k[2], k[1], k[3])):
            ew, ez, ex, ey = key
            records.append(
                {"e_w": ew, "e_z": ez, "e_x": ex, "e_y": ey, "coeff": str(self.terms[key])}
            )
        return records

    @classmethod
    def from_records(cls, t: int, n: int, records) -> "JacobiPolynomial":
        terms = {}
        for r in records:
            key = (int(r["e_w"]), int(r["e_z"]), int(r["e_x"]), int(r["e_y"]))
            terms[key] = terms.get(key, 0) + int(r["coeff"])
        return cls(t, n, terms)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (-k[0], -k[2], k[1], k[3])):
            c = self.terms[key]
            factors = [] if c == 1 else [str(c)]
            for name, e in zip("wzxy", key):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)


@dataclass(frozen=True)
class WeightEnumerator:
    """Two-variable weight enumerator: weight -> count."""

    n: int
    counts: dict[int, int] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, c in self.counts.items():
            if not 0 <= w <= self.n:
                raise ValueError(f"weight {w} out of range [0, {self.n}]")
            if c < 0:
                raise ValueError(f"negative count at weight {w}")
            if c:
                clean[w] = c
        object.__setattr__(self, "counts", clean)

    def coefficient(self, weight: int) -> int:
        return self.counts.get(weight, 0)

    def evaluate(self, x: int = 1, y: int = 1) -> int:
        return sum(c * x ** (self.n - w) * y**w for w, c in self.counts.items())

    def nonzero_weights(self) -> list[int]:
        return sorted(self.counts)

    def to_jacobi(self) -> JacobiPolynomial:
        return JacobiPolynomial(
            0, self.n, {(0, 0, self.n - w, w): c for w, c in self.counts.items()}
        )


def weight_enumerator(code: GrmCode) -> WeightEnumerator:
    """Enumerated weight distribution (full position scans)."""
    return WeightEnumerator(code.n, code.weight_distribution())


def closed_weight_distribution(q: int, m: int) -> dict[int, int]:
    """The three-shell weight pattern of the affine evaluation code."""
    return {0: 1, (q - 1) * q ** (m - 1): q ** (m + 1) - q, q**m: q - 1}


# -- binomial convolution ------------------------------------------------


def binom_conv(a_deg: int, alpha: int, b_deg: int) -> list[int]:
    """Coefficients of (X + alpha*Y)^a_deg * (X - Y)^b_deg by Y-degree."""
    u = [math.comb(a_deg, i) * alpha**i for i in range(a_deg + 1)]
    v = [math.comb(b_deg, j) * (-1) ** j for j in range(b_deg + 1)]
    out = [0] * (a_deg + b_deg + 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] += ui * vj
    return out


# -- brute-force Jacobi ----------------------------------------------------

_CODE_CACHE: dict[tuple[int, int, int], GrmCode] = {}


def _cached_code(p: int, k: int, m: int) -> GrmCode:
    key = (p, k, m)
    if key not in _CODE_CACHE:
        from .field import Field

        _CODE_CACHE[key] = GrmCode(Field(p, k), m)
    return _CODE_CACHE[key]


def _brute_chunk(args) -> dict[ExpKey, int]:
    p, k, m, points, lo, hi, full_scan = args
    code = _cached_code(p, k, m)
    return _accumulate_range(code, points, lo, hi, full_scan)


def _accumulate_range(
    code: GrmCode, points: PointSet, lo: int, hi: int, full_scan: bool
) -> dict[ExpKey, int]:
    t = len(points)
    n = code.n
    q = code.q
    w_mid = (q - 1) * q ** (code.m - 1)
    use_table = code.size * code.n <= 10**7
    values = code.value_table() if use_table else None
    positions = [code.point_index(p) for p in points] if use_table else None
    terms: dict[ExpKey, int] = {}
    index = 0
    for lam in product(range(q), repeat=code.m):
        if index >= hi:
            break
        if index + q <= lo:
            index += q
            continue
        lam_nonzero = any(lam)
        for b in range(q):
            if not lo <= index < hi:
                index += 1
                continue
            if use_table:
                row = values[index]
                m1 = sum(1 for pos in positions if row[pos])
                wt = sum(1 for v in row if v) if full_scan else None
            else:
                c = Codeword(lam, b)
                m1 = sum(1 for pt in points if code.evaluate(c, pt))
                wt = code.weight(c) if full_scan else None
            if wt is None:
                wt = w_mid if lam_nonzero else (0 if b == 0 else n)
            n1 = wt - m1
            key = (t - m1, m1, (n - t) - n1, n1)
            terms[key] = terms.get(key, 0) + 1
            index += 1
    return terms


def jacobi_brute_force(
    code: GrmCode,
    points: PointSet,
    full_scan: bool = False,
    workers: int = 1,
) -> JacobiPolynomial:
    """Jacobi polynomial by iterating over every codeword.

    By default the count of nonzero positions outside T is derived from the
    codeword's structural weight; full_scan=True recounts the weight by
    scanning all q^m positions and serves as the independent oracle for
    that shortcut.  The accumulation is a parallel reduction over codeword
    index ranges; results do not depend on the worker count.
    """
    t = len(points)
    if len(set(points)) != t:
        raise ValueError("points of T must be distinct")
    for pt in points:
        if not code.contains_point(pt):
            raise ValueError(f"point {pt} does not lie in V")
    size = code.size
    if workers <= 1:
        terms = _accumulate_range(code, points, 0, size, full_scan)
    else:
        p, k = code.field.p, code.field.k
        if code.size * code.n <= 10**7:
            code.value_table()  # build before fork so children share it
        nchunks = min(workers, size)
        bounds = [size * i // nchunks for i in range(nchunks + 1)]
        chunks = [
            (p, k, code.m, tuple(points), bounds[i], bounds[i + 1], full_scan)
            for i in range(nchunks)
        ]
        terms = {}
        for part in run_chunks(_brute_chunk, chunks, workers):
            for key, c in part.items():
                terms[key] = terms.get(key, 0) + c
    return JacobiPolynomial(t, code.n, terms)


# -- count tables ----------------------------------------------------------


@dataclass(frozen=True)
class CountTables:
    """Functional counts over V* for a position set containing 0.

    b_by_value[i][j] counts functionals taking value j on exactly i points
    of T; b[i] are the row sums; a[i] counts non-constant codewords whose
    restriction to T has weight i.
    """

    t: int
    q: int
    b_by_value: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    a: tuple[int, ...]


def a_from_b(b, t: int, q: int) -> tuple[int, ...]:
    """Restricted-weight codeword counts from functional value counts."""
    if len(b) != t + 1:
        raise ValueError(f"expected {t + 1} entries, got {len(b)}")
    a = []
    for i in range(t + 1):
        ai = b[t - i] - (1 if i == 0 else 0) - ((q - 1) if i == t else 0)
        if ai < 0:
            raise RuntimeError(f"negative a_{i} = {ai}: counting bug")
        a.append(ai)
    return tuple(a)


def count_tables(code: GrmCode, points: PointSet) -> CountTables:
    """Enumerate all q^m functionals and tally their value counts on T.

    T is first translated so that its V-least point becomes 0; the Jacobi
    polynomial assembled from the result is translation invariant.
    """
    t = len(points)
    if len(set(points)) != t:
        raise ValueError("points of T must be distinct")
    f = code.field
    pts = tuple(sorted(points))
    zero = tuple(0 for _ in range(code.m))
    if pts[0] != zero:
        pts = tuple(sorted(translate_T(f, pts, _neg_point(f, pts[0]))))
    q = code.q
    b_by_value = [[0] * q for _ in range(t + 1)]
    for lam in product(range(q), repeat=code.m):
        hits = Counter(f.dot(lam, u) for u in pts)
        for j in range(q):
            b_by_value[hits.get(j, 0)][j] += 1
    b = tuple(sum(row) for row in b_by_value)
    return CountTables(
        t=t,
        q=q,
        b_by_value=tuple(tuple(row) for row in b_by_value),
        b=b,
        a=a_from_b(b, t, q),
    )


def jacobi_from_a(a, q: int, m: int, t: int) -> JacobiPolynomial:
    """Assemble the Jacobi polynomial from restricted-weight counts.

    The zero word contributes w^t x^(n-t), the q-1 nonzero constants
    contribute z^t y^(n-t), and every non-constant word of restricted
    weight i lands in the stratum
    w^(t-i) z^i x^(q^(m-1)-(t-i)) y^((q-1)q^(m-1)-i).
    """
    if len(a) != t + 1:
        raise ValueError(f"expected {t + 1} entries, got {len(a)}")
    n = q**m
    if t > n:
        raise ValueError(f"|T| = {t} exceeds code length {n}")
    w_mid = (q - 1) * q ** (m - 1)
    terms: dict[ExpKey, int] = {(t, 0, n - t, 0): 1}
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        ex = q ** (m - 1) - (t - i)
        ey = w_mid - i
        if ex < 0 or ey < 0:
            raise ValueError(
                f"stratum i={i} needs negative exponent at q={q}, m={m}, t={t}"
            )
        key = (t - i, i, ex, ey)
        terms[key] = terms.get(key, 0) + ai
    last = (0, t, 0, n - t)
    terms[last] = terms.get(last, 0) + (q - 1)
    return JacobiPolynomial(t, n, terms)


# -- closed forms ------------------------------------------------------------


def closed_form_a(tclass: TClass, q: int, m: int) -> tuple[int, ...]:
    """Restricted-weight counts for each T classification, in closed form."""
    t, rank, sub = tclass.t, tclass.rank, tclass.subcase
    _check_class(tclass, q, m)
    qm = q**m
    qa = q ** (m - 1)
    if t == 2:
        return (qa - 1, 2 * (q - 1) * qa, (q - 1) * (qm - qa - 1))
    if t == 3 and rank == 2:
        qb = q ** (m - 2)
        return (
            qb - 1,
            3 * qb * (q - 1),
            3 * qb * (q - 1) ** 2,
            (q - 1) * (qm - 2 * qa + qb - 1),
        )
    if t == 3 and rank == 1:
        return (qa - 1, 0, 3 * qa * (q - 1), (q - 1) * (qm - 2 * qa - 1))
    if t == 4 and rank == 3:
        qb, qc = q ** (m - 2), q ** (m - 3)
        return (
            qc - 1,
            4 * (q - 1) * qc,
            6 * (q - 1) ** 2 * qc,
            4 * (q - 1) ** 3 * qc,
            (q - 1) * (qm - 3 * qa + 3 * qb - qc - 1),
        )
    if t == 4 and rank == 2 and sub == COLLINEAR_TRIPLE:
        qb = q ** (m - 2)
        return (
            qb - 1,
            qb * (q - 1),
            3 * qb * (q - 1),
            qb * (q - 1) * (4 * q - 5),
            (q - 1) * (qm - 3 * qa + 2 * qb - 1),
        )
    if t == 4 and rank == 2 and sub == GENERIC:
        qb = q ** (m - 2)
        return (
            qb - 1,
            0,
            6 * qb * (q - 1),
            qb * (q - 1) * (4 * q - 8),
            (q - 1) * (qm - 3 * qa + 3 * qb - 1),
        )
    if t == 4 and rank == 1:
        return (qa - 1, 0, 0, 4 * (q - 1) * qa, (q - 1) * (qm - 3 * qa - 1))
    raise ValueError(f"no closed form for class {tclass}")


def closed_form_b(tclass: TClass, q: int, m: int) -> tuple[int, ...]:
    """Functional value counts b_i in closed form (pair and triple classes)."""
    t, rank = tclass.t, tclass.rank
    _check_class(tclass, q, m)
    qa = q ** (m - 1)
    if t == 2:
        return (qa * (q - 1) ** 2, 2 * qa * (q - 1), qa)
    if t == 3 and rank == 2:
        qb = q ** (m - 2)
        return (qb * (q - 1) ** 3, 3 * qb * (q - 1) ** 2, 3 * qb * (q - 1), qb)
    if t == 3 and rank == 1:
        return (qa * (q - 1) * (q - 2), 3 * qa * (q - 1), 0, qa)
    raise ValueError(f"no closed b-vector for class {tclass}")


def _check_class(tclass: TClass, q: int, m: int) -> None:
    t, rank, sub = tclass.t, tclass.rank, tclass.subcase
    if t not in (2, 3, 4):
        raise ValueError(f"|T| must be in {{2, 3, 4}}, got {t}")
    if q**m < t:
        raise ValueError(f"code length {q**m} is smaller than |T| = {t}")
    if not 1 <= rank <= min(t - 1, m):
        raise ValueError(f"rank {rank} impossible for t={t}, m={m}")
    if t == 4 and rank == 2:
        if sub not in (COLLINEAR_TRIPLE, GENERIC):
            raise ValueError("rank-2 quadruples need a sub-case")
    elif sub is not None:
        raise ValueError(f"unexpected sub-case for class {tclass}")


def jacobi_closed_form(code: GrmCode, tclass: TClass) -> JacobiPolynomial:
    """Dispatch the classification to its closed-form polynomial."""
    return jacobi_from_a(
        closed_form_a(tclass, code.q, code.m), code.q, code.m, tclass.t
    )


# -- dual transform ---------------------------------------------------------


def dual_jacobi(jac: JacobiPolynomial, code_size: int, q: int) -> JacobiPolynomial:
    """Jacobi polynomial of the dual code.

    Substitutes (w + (q-1)z, w - z, x + (q-1)y, x - y), expands each input
    term by two binomial convolutions (never by naive monomial products),
    and divides by the code size.  Division must be exact; a remainder
    means the input was not the Jacobi polynomial of a linear code of that
    size.
    """
    if code_size <= 0:
        raise ValueError("code size must be positive")
    t, n = jac.t, jac.n
    acc: dict[ExpKey, int] = {}
    wz_cache: dict[tuple[int, int], list[int]] = {}
    for (ew, ez, ex, ey), coeff in jac.terms.items():
        if (ew, ez) not in wz_cache:
            wz_cache[(ew, ez)] = binom_conv(ew, q - 1, ez)
        wz = wz_cache[(ew, ez)]
        xy = binom_conv(ex, q - 1, ey)
        for zdeg, cz in enumerate(wz):
            if not cz:
                continue
            part = coeff * cz
            for ydeg, cy in enumerate(xy):
                if cy:
                    key = (t - zdeg, zdeg, n - t - ydeg, ydeg)
                    acc[key] = acc.get(key, 0) + part * cy
    terms = {}
    for key, value in acc.items():
        quot, rem = divmod(value, code_size)
        if rem:
            raise ValueError(
                f"coefficient {value} at {key} is not divisible by |C| = {code_size}"
            )
        terms[key] = quot
    return JacobiPolynomial(t, n, terms)


def rank_difference_identity(q: int, m: int) -> JacobiPolynomial:
    """The exact difference between the rank-2 and rank-1 triple-point
    Jacobi polynomials: -q^(m-2)(q-1) x^(q^(m-1)-3) y^((q-1)q^(m-1)-3)
    (wy - xz)^3."""
    if m < 2:
        raise ValueError("identity needs m >= 2")
    ax = q ** (m - 1) - 3
    by = (q - 1) * q ** (m - 1) - 3
    if ax < 0 or by < 0:
        raise ValueError(f"identity undefined at q={q}, m={m}")
    scale = -(q ** (m - 2)) * (q - 1)
    terms: dict[ExpKey, int] = {}
    for k in range(4):
        coeff = scale * math.comb(3, k) * (-1) ** (3 - k)
        terms[(k, 3 - k, (3 - k) + ax, k + by)] = coeff
    return JacobiPolynomial(3, q**m, terms)
