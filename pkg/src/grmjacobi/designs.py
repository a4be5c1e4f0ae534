"""t-design verdicts for shells of RM_q(1, m).

Two independent routes produce the same report shape: the Jacobi route
reads the count of blocks through a t-subset off the closed-form
polynomial of the subset's class, while the brute-force route counts
supports directly.  Blocks are counted with multiplicity (scalar multiples
of a codeword contribute separate blocks), so Jacobi coefficients equal
block counts exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .grm import (
    COLLINEAR_TRIPLE,
    GENERIC,
    GrmCode,
    PointSet,
    TClass,
    class_witness,
    classify_T,
)
from .jacobi import closed_form_a, jacobi_closed_form
from ._parallel import run_chunks

DEFAULT_BUDGET = 5 * 10**7


@dataclass(frozen=True)
class BlockMultiset:
    """Supports of a shell's codewords, one block per codeword."""

    ell: int
    blocks: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.blocks)


def blocks_of_shell(code: GrmCode, ell: int) -> BlockMultiset:
    blocks = tuple(code.support(c) for c in code.shell(ell))
    return BlockMultiset(ell, blocks)


@dataclass(frozen=True)
class DesignReport:
    q: int
    m: int
    ell: int
    t: int
    method: str
    lambda_by_class: dict[TClass, int]
    class_counts: dict[TClass, int]
    block_count: int
    is_t_design: bool
    trivial: bool

    def lambdas(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.lambda_by_class.values())))

    def to_json_dict(self) -> dict:
        classes = sorted(self.lambda_by_class, key=lambda c: (-c.rank, c.subcase or ""))
        return {
            "q": self.q,
            "m": self.m,
            "l": self.ell,
            "t": self.t,
            "method": self.method,
            "classes": [
                {
                    "class": cls.label(),
                    "lambda": str(self.lambda_by_class[cls]),
                    "subsets": self.class_counts[cls],
                }
                for cls in classes
            ],
            "block_count": self.block_count,
            "is_t_design": self.is_t_design,
            "trivial": self.trivial,
        }


def _require_shell(code: GrmCode, ell: int, t: int) -> int:
    if t not in (2, 3, 4):
        raise ValueError(f"t must be in {{2, 3, 4}}, got {t}")
    count = len(code.shell(ell))
    if count == 0:
        raise ValueError(f"shell of weight {ell} is empty for {code!r}")
    return count


def _class_census_counts(code: GrmCode, t: int, workers: int = 1) -> dict[TClass, int]:
    subsets = list(combinations(range(code.n), t))
    points = code.points()
    if workers <= 1:
        census: dict[TClass, int] = {}
        for sub in subsets:
            cls = classify_T(code, tuple(points[i] for i in sub))
            census[cls] = census.get(cls, 0) + 1
        return census
    p, k = code.field.p, code.field.k
    nchunks = min(workers * 4, len(subsets)) or 1
    bounds = [len(subsets) * i // nchunks for i in range(nchunks + 1)]
    chunks = [
        (p, k, code.m, subsets[bounds[i] : bounds[i + 1]])
        for i in range(nchunks)
    ]
    census = {}
    for part in run_chunks(_census_chunk, chunks, workers):
        for cls, cnt in part.items():
            census[cls] = census.get(cls, 0) + cnt
    return census


def _census_chunk(args) -> dict[TClass, int]:
    from .jacobi import _cached_code

    p, k, m, subsets = args
    code = _cached_code(p, k, m)
    points = code.points()
    census: dict[TClass, int] = {}
    for sub in subsets:
        cls = classify_T(code, tuple(points[i] for i in sub))
        census[cls] = census.get(cls, 0) + 1
    return census


def design_check_jacobi(
    code: GrmCode, ell: int, t: int, workers: int = 1
) -> DesignReport:
    """Design verdict from closed-form Jacobi coefficients.

    Every t-subset of positions is classified (a full census, so no class
    is missed); the number of weight-ell blocks through a subset is the
    coefficient of z^t x^(n-ell) y^(ell-t) in its class's polynomial.
    """
    block_count = _require_shell(code, ell, t)
    census = _class_census_counts(code, t, workers=workers)
    lam = {}
    for cls in census:
        if ell < t:
            lam[cls] = 0  # no block of size ell can contain t positions
        else:
            poly = jacobi_closed_form(code, cls)
            lam[cls] = poly.coefficient(0, t, code.n - ell, ell - t)
    return _finish_report(code, ell, t, "jacobi", lam, census, block_count)


def design_check_bruteforce(
    code: GrmCode,
    ell: int,
    t: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> DesignReport:
    """Design verdict by direct block counting over every t-subset.

    Refuses (rather than truncates) when |subsets| * |blocks| exceeds the
    budget.  Raises if two subsets of the same class see different counts,
    which would falsify the class-determines-count property the Jacobi
    route relies on.
    """
    block_count = _require_shell(code, ell, t)
    n_subsets = math.comb(code.n, t)
    if n_subsets * block_count > budget:
        raise ValueError(
            f"{n_subsets} subsets x {block_count} blocks exceeds budget {budget}"
        )
    subsets = list(combinations(range(code.n), t))
    p, k = code.field.p, code.field.k
    nchunks = 1 if workers <= 1 else min(workers * 4, len(subsets))
    bounds = [len(subsets) * i // nchunks for i in range(nchunks + 1)]
    chunks = [
        (p, k, code.m, ell, t, subsets[bounds[i] : bounds[i + 1]])
        for i in range(nchunks)
    ]
    lam: dict[TClass, int] = {}
    census: dict[TClass, int] = {}
    for part_lam, part_census in run_chunks(_count_chunk, chunks, workers):
        for cls, vals in part_lam.items():
            seen = lam.get(cls)
            merged = set(vals) | ({seen} if seen is not None else set())
            if len(merged) > 1:
                raise RuntimeError(
                    f"class {cls.label()} shows several block counts {sorted(merged)} "
                    f"at l={ell}, t={t}: class does not determine the count"
                )
            lam[cls] = merged.pop()
        for cls, cnt in part_census.items():
            census[cls] = census.get(cls, 0) + cnt
    return _finish_report(code, ell, t, "bruteforce", lam, census, block_count)


def _count_chunk(args):
    from .jacobi import _cached_code

    p, k, m, ell, t, subsets = args
    code = _cached_code(p, k, m)
    points = code.points()
    blocks = [code.support(c) for c in code.shell(ell)]
    lam: dict[TClass, set[int]] = {}
    census: dict[TClass, int] = {}
    for sub in subsets:
        count = sum(1 for block in blocks if all(i in block for i in sub))
        cls = classify_T(code, tuple(points[i] for i in sub))
        lam.setdefault(cls, set()).add(count)
        census[cls] = census.get(cls, 0) + 1
    return lam, census


def _finish_report(code, ell, t, method, lam, census, block_count) -> DesignReport:
    values = set(lam.values())
    return DesignReport(
        q=code.q,
        m=code.m,
        ell=ell,
        t=t,
        method=method,
        lambda_by_class=dict(lam),
        class_counts=dict(census),
        block_count=block_count,
        is_t_design=len(values) == 1,
        trivial=(ell == code.n),
    )


def count_blocks_containing(code: GrmCode, shell, points: PointSet) -> int:
    """Blocks (with multiplicity) whose support contains every given point;
    evaluation-based, so it works without materializing supports."""
    return sum(
        1 for c in shell if all(code.evaluate(c, pt) != 0 for pt in points)
    )


# -- generalized design parameters -------------------------------------------


@dataclass(frozen=True)
class ClassParams:
    tclass: TClass
    lam: int | None  # closed-form value; None when undefined at this (q, m)
    nonempty: bool  # witness-verified at this (q, m)


@dataclass(frozen=True)
class GeneralizedDesignParams:
    v: int
    k: int
    t: int
    classes: tuple[ClassParams, ...]

    def lambdas(self) -> tuple:
        return tuple(c.lam for c in self.classes)

    def applicable(self) -> bool:
        """True when every class occurs and every value is a valid count."""
        return all(c.nonempty and c.lam is not None and c.lam >= 0 for c in self.classes)

    def to_json_dict(self) -> dict:
        return {
            "v": self.v,
            "k": self.k,
            "t": self.t,
            "classes": [
                {
                    "class": c.tclass.label(),
                    "lambda": None if c.lam is None else str(c.lam),
                    "nonempty": c.nonempty,
                }
                for c in self.classes
            ],
            "applicable": self.applicable(),
        }


_CLASS_ORDER = {
    3: (TClass(3, 2), TClass(3, 1)),
    4: (
        TClass(4, 3),
        TClass(4, 2, COLLINEAR_TRIPLE),
        TClass(4, 2, GENERIC),
        TClass(4, 1),
    ),
}


def generalized_design_params(code: GrmCode, ell: int, t: int) -> GeneralizedDesignParams:
    """Parameters (v, k, (lambda_1, ..., lambda_N)) of the middle shell as a
    generalized design, one lambda per T-class in a fixed class order.

    Class emptiness is decided by witness construction, never assumed from
    the formulas; a negative or undefined lambda is reported as-is so the
    caller can see exactly where the closed forms stop being counts.
    """
    if t not in _CLASS_ORDER:
        raise ValueError(f"generalized parameters support t in {{3, 4}}, got {t}")
    expected = (code.q - 1) * code.q ** (code.m - 1)
    if ell != expected:
        raise ValueError(
            f"generalized parameters apply to the middle shell l={expected}, got {ell}"
        )
    entries = []
    for cls in _CLASS_ORDER[t]:
        try:
            lam = closed_form_a(cls, code.q, code.m)[t]
        except ValueError:
            lam = None
        witness = class_witness(code, cls)
        entries.append(ClassParams(cls, lam, witness is not None))
    return GeneralizedDesignParams(
        v=code.n, k=ell, t=t, classes=tuple(entries)
    )
