"""Named cross-checks between enumeration and the closed forms.

Each check runs against one code and reports PASS, FAIL (with a
counterexample payload), or SKIP when its hypothesis does not apply at
that (q, m).  The CLI `verify` command and the acceptance suite both run
off this registry, so a falsified closed form surfaces identically in
both places.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

from .field import Field
from .grm import (
    GrmCode,
    TClass,
    class_witness,
    classify_T,
    reachable_classes,
    t_class_census,
    translate_T,
)
from .jacobi import (
    closed_form_a,
    closed_form_b,
    closed_weight_distribution,
    count_tables,
    dual_jacobi,
    jacobi_brute_force,
    jacobi_closed_form,
    jacobi_from_a,
    rank_difference_identity,
    weight_enumerator,
    _cached_code,
)
from .conjecture import (
    dual_diff_coefficient,
    dual_rank_difference_identity,
    dual_weight_enumerator,
)
from .designs import design_check_bruteforce, design_check_jacobi
from ._parallel import run_chunks

SAMPLE_SEED = 7_2024_08
FULL_SWEEP_LIMIT = 10**6
SAMPLE_SIZE = 10_000

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass(frozen=True)
class CheckResult:
    name: str
    q: int
    m: int
    status: str
    detail: str = ""
    counterexample: dict | None = None

    def to_json_dict(self) -> dict:
        rec = {
            "check": self.name,
            "q": self.q,
            "m": self.m,
            "status": self.status,
            "detail": self.detail,
        }
        if self.counterexample is not None:
            rec["counterexample"] = self.counterexample
        return rec


# -- subset helpers -----------------------------------------------------------


def sample_subsets(n: int, t: int, count: int, seed: int = SAMPLE_SEED) -> list[tuple[int, ...]]:
    """Deterministic uniform sample of distinct t-subsets of range(n)."""
    total = comb(n, t)
    if total <= count:
        return list(combinations(range(n), t))
    rng = random.Random(seed)
    seen: set[tuple[int, ...]] = set()
    while len(seen) < count:
        seen.add(tuple(sorted(rng.sample(range(n), t))))
    return sorted(seen)


def subsets_for_sweep(code: GrmCode, t: int, limit: int = FULL_SWEEP_LIMIT) -> tuple[list[tuple[int, ...]], str]:
    """Every t-subset when that fits the limit, else a deterministic
    10^4-subset sample; returns (subsets, mode)."""
    if comb(code.n, t) <= limit:
        return list(combinations(range(code.n), t)), "full"
    return sample_subsets(code.n, t, SAMPLE_SIZE), "sampled"


def _points_of(code: GrmCode, subset: tuple[int, ...]):
    pts = code.points()
    return tuple(pts[i] for i in subset)


# -- chunked sweeps -----------------------------------------------------------


def _jacobi_sweep_chunk(args):
    p, k, m, subsets = args
    code = _cached_code(p, k, m)
    mismatches = []
    for sub in subsets:
        points = _points_of(code, sub)
        cls = classify_T(code, points)
        brute = jacobi_brute_force(code, points)
        closed = jacobi_closed_form(code, cls)
        if brute != closed:
            mismatches.append({"T": list(sub), "class": cls.label()})
    return mismatches


def sweep_jacobi_equivalence(code: GrmCode, subsets, workers: int = 1) -> list[dict]:
    """Brute-force vs dispatched closed form for each subset; returns the
    (hopefully empty) mismatch list."""
    p, k = code.field.p, code.field.k
    if code.size * code.n <= 10**7:
        code.value_table()
    nchunks = 1 if workers <= 1 else min(workers * 4, max(len(subsets), 1))
    bounds = [len(subsets) * i // nchunks for i in range(nchunks + 1)]
    chunks = [(p, k, code.m, subsets[bounds[i] : bounds[i + 1]]) for i in range(nchunks)]
    mismatches: list[dict] = []
    for part in run_chunks(_jacobi_sweep_chunk, chunks, workers):
        mismatches.extend(part)
    return mismatches


def _count_sweep_chunk(args):
    p, k, m, subsets = args
    code = _cached_code(p, k, m)
    q = code.q
    mismatches = []
    for sub in subsets:
        points = _points_of(code, sub)
        cls = classify_T(code, points)
        tables = count_tables(code, points)
        expected_a = closed_form_a(cls, q, m)
        if tables.a != expected_a:
            mismatches.append(
                {"T": list(sub), "class": cls.label(), "kind": "a",
                 "got": list(tables.a), "expected": list(expected_a)}
            )
            continue
        if cls.t in (2, 3):
            expected_b = closed_form_b(cls, q, m)
            if tables.b != expected_b:
                mismatches.append(
                    {"T": list(sub), "class": cls.label(), "kind": "b",
                     "got": list(tables.b), "expected": list(expected_b)}
                )
    return mismatches


def sweep_count_tables(code: GrmCode, subsets, workers: int = 1) -> list[dict]:
    """Enumerated count tables vs the closed-form vectors for each subset."""
    p, k = code.field.p, code.field.k
    nchunks = 1 if workers <= 1 else min(workers * 4, max(len(subsets), 1))
    bounds = [len(subsets) * i // nchunks for i in range(nchunks + 1)]
    chunks = [(p, k, code.m, subsets[bounds[i] : bounds[i + 1]]) for i in range(nchunks)]
    mismatches: list[dict] = []
    for part in run_chunks(_count_sweep_chunk, chunks, workers):
        mismatches.extend(part)
    return mismatches


# -- individual checks ----------------------------------------------------------


def _result(name, code, status, detail="", counterexample=None) -> CheckResult:
    return CheckResult(name, code.q, code.m, status, detail, counterexample)


def check_weight_enumerator(code: GrmCode, workers: int = 1) -> CheckResult:
    got = weight_enumerator(code).counts
    expected = closed_weight_distribution(code.q, code.m)
    if got == expected:
        return _result("weight-enumerator", code, PASS, f"{len(got)} shells")
    return _result(
        "weight-enumerator", code, FAIL,
        counterexample={"got": got, "expected": expected},
    )


def check_support_scalars(code: GrmCode, workers: int = 1) -> CheckResult:
    from .grm import Codeword

    f = code.field
    for c in code.codewords():
        base = code.support(c)
        for alpha in range(2, code.q):
            scaled = Codeword(tuple(f.mul(alpha, x) for x in c.lam), f.mul(alpha, c.b))
            if code.support(scaled) != base:
                return _result(
                    "support-scalars", code, FAIL,
                    counterexample={"lam": list(c.lam), "b": c.b, "alpha": alpha},
                )
    return _result("support-scalars", code, PASS, f"{code.size} codewords")


def _jacobi_check(name: str, t: int):
    def run(code: GrmCode, workers: int = 1) -> CheckResult:
        if code.n < t:
            return _result(name, code, SKIP, f"code length {code.n} < {t}")
        subsets, mode = subsets_for_sweep(code, t)
        mismatches = sweep_jacobi_equivalence(code, subsets, workers=workers)
        if t == 4:
            # census must reach exactly the witness-backed classes
            try:
                census = t_class_census(code, 4, limit=FULL_SWEEP_LIMIT * 2)
                reached = set(census)
                expected = set(reachable_classes(code, 4))
                if reached != expected:
                    return _result(
                        name, code, FAIL, "class census mismatch",
                        counterexample={
                            "census": sorted(c.label() for c in reached),
                            "witnesses": sorted(c.label() for c in expected),
                        },
                    )
            except ValueError:
                pass  # census beyond limit: sweep result still stands
        if mismatches:
            return _result(name, code, FAIL, f"{mode} sweep", counterexample=mismatches[0])
        return _result(name, code, PASS, f"{mode} sweep over {len(subsets)} subsets")

    return run


def _count_check(name: str, t: int):
    def run(code: GrmCode, workers: int = 1) -> CheckResult:
        if code.n < t:
            return _result(name, code, SKIP, f"code length {code.n} < {t}")
        subsets, mode = subsets_for_sweep(code, t)
        mismatches = sweep_count_tables(code, subsets, workers=workers)
        if mismatches:
            return _result(name, code, FAIL, f"{mode} sweep", counterexample=mismatches[0])
        return _result(name, code, PASS, f"{mode} sweep over {len(subsets)} subsets")

    return run


def check_count_route(code: GrmCode, workers: int = 1) -> CheckResult:
    """count_tables -> a -> assembled polynomial must equal brute force,
    including for subsets that do not contain the zero point."""
    rng = random.Random(SAMPLE_SEED + 1)
    for t in (2, 3, 4):
        if code.n < t:
            continue
        subsets = sample_subsets(code.n, t, 40, seed=rng.randrange(2**30))
        for sub in subsets:
            points = _points_of(code, sub)
            assembled = jacobi_from_a(count_tables(code, points).a, code.q, code.m, t)
            brute = jacobi_brute_force(code, points)
            if assembled != brute:
                return _result(
                    "count-route", code, FAIL, counterexample={"T": list(sub), "t": t}
                )
    return _result("count-route", code, PASS, "sampled subsets, sizes 2-4")


def check_translation_invariance(code: GrmCode, workers: int = 1) -> CheckResult:
    rng = random.Random(SAMPLE_SEED + 2)
    pts = code.points()
    for t in (2, 3, 4):
        if code.n < t:
            continue
        for sub in sample_subsets(code.n, t, 12, seed=rng.randrange(2**30)):
            points = _points_of(code, sub)
            base = jacobi_brute_force(code, points)
            shifts = rng.sample(range(code.n), min(4, code.n))
            for vi in shifts:
                shifted = translate_T(code.field, points, pts[vi])
                if len(set(shifted)) != t:
                    continue
                if jacobi_brute_force(code, shifted) != base:
                    return _result(
                        "translation-invariance", code, FAIL,
                        counterexample={"T": list(sub), "shift": list(pts[vi])},
                    )
    return _result("translation-invariance", code, PASS, "sampled subsets and shifts")


def check_classify_invariance(code: GrmCode, workers: int = 1) -> CheckResult:
    rng = random.Random(SAMPLE_SEED + 3)
    f = code.field
    pts = code.points()
    for t in (2, 3, 4):
        if code.n < t:
            continue
        for sub in sample_subsets(code.n, t, 10, seed=rng.randrange(2**30)):
            points = _points_of(code, sub)
            expected = classify_T(code, points)
            for ordering in permutations(points):
                if classify_T(code, tuple(ordering)) != expected:
                    return _result(
                        "classify-invariance", code, FAIL, "ordering",
                        counterexample={"T": list(sub)},
                    )
            # shifting by -u moves each u of T to zero in turn, so every
            # point serves as the base once; a few random shifts on top
            shifts = [tuple(f.neg(x) for x in p) for p in points]
            shifts += [pts[i] for i in rng.sample(range(code.n), min(3, code.n))]
            for v in shifts:
                shifted = translate_T(f, points, v)
                if classify_T(code, shifted) != expected:
                    return _result(
                        "classify-invariance", code, FAIL, "translation",
                        counterexample={"T": list(sub), "shift": list(v)},
                    )
    return _result("classify-invariance", code, PASS, "orderings and translations")


def _middle_shell(code: GrmCode) -> int:
    return (code.q - 1) * code.q ** (code.m - 1)


def _design_check(name: str, t: int):
    def run(code: GrmCode, workers: int = 1) -> CheckResult:
        ell = _middle_shell(code)
        if code.n < t or ell < t:
            return _result(name, code, SKIP, "middle shell smaller than t")
        if comb(code.n, t) * (code.size - code.q) > 5 * 10**7:
            return _result(name, code, SKIP, "beyond brute-force budget")
        via_jacobi = design_check_jacobi(code, ell, t, workers=workers)
        via_blocks = design_check_bruteforce(code, ell, t, workers=workers)
        if via_jacobi.lambda_by_class != via_blocks.lambda_by_class:
            return _result(
                name, code, FAIL, "route disagreement",
                counterexample={
                    "jacobi": {c.label(): v for c, v in via_jacobi.lambda_by_class.items()},
                    "blocks": {c.label(): v for c, v in via_blocks.lambda_by_class.items()},
                },
            )
        if via_jacobi.is_t_design != via_blocks.is_t_design:
            return _result(name, code, FAIL, "verdict disagreement")
        verdict = "is" if via_jacobi.is_t_design else "is not"
        return _result(
            name, code, PASS,
            f"shell {ell} {verdict} a {t}-design; lambdas {via_jacobi.lambdas()}",
        )

    return run


def check_difference_identity(code: GrmCode, workers: int = 1) -> CheckResult:
    q, m = code.q, code.m
    if q < 3 or m < 2 or q ** (m - 1) < 3:
        return _result("difference-identity", code, SKIP, "needs q >= 3 and m >= 2")
    t_rank2 = class_witness(code, TClass(3, 2))
    t_rank1 = class_witness(code, TClass(3, 1))
    diff = jacobi_brute_force(code, t_rank2) - jacobi_brute_force(code, t_rank1)
    if diff != rank_difference_identity(q, m):
        return _result("difference-identity", code, FAIL)
    return _result("difference-identity", code, PASS, "exact expansion matches")


def check_dual_transform(code: GrmCode, workers: int = 1) -> CheckResult:
    q = code.q
    primal = weight_enumerator(code).to_jacobi()
    dual = dual_jacobi(primal, code.size, q)
    dual_size = q**code.n // code.size
    if dual.evaluate(1, 1, 1, 1) != dual_size:
        return _result("dual-transform", code, FAIL, "dual size mismatch")
    if dual_jacobi(dual, dual_size, q) != primal:
        return _result("dual-transform", code, FAIL, "double transform not identity")
    pair = class_witness(code, TClass(2, 1))
    jac = jacobi_brute_force(code, pair)
    jac_dual = dual_jacobi(jac, code.size, q)
    if dual_jacobi(jac_dual, dual_size, q) != jac:
        return _result("dual-transform", code, FAIL, "pair-set involution failed")
    return _result("dual-transform", code, PASS, "involution and size checks")


def check_dual_enumerator(code: GrmCode, workers: int = 1) -> CheckResult:
    q, m = code.q, code.m
    via_stream = dual_weight_enumerator(q, m)
    primal = weight_enumerator(code).to_jacobi()
    via_transform = dual_jacobi(primal, code.size, q)
    got = {ey: c for (_, _, _, ey), c in via_transform.terms.items()}
    if got != via_stream.counts:
        return _result(
            "dual-enumerator", code, FAIL,
            counterexample={"stream": via_stream.counts, "transform": got},
        )
    return _result("dual-enumerator", code, PASS, "streaming matches transform")


def check_dual_difference(code: GrmCode, workers: int = 1) -> CheckResult:
    q, m = code.q, code.m
    if q < 3 or m < 2 or q ** (m - 1) < 3:
        return _result("dual-difference", code, SKIP, "needs q >= 3 and m >= 2")
    if code.n > 64:
        return _result("dual-difference", code, SKIP, "full expansion too large")
    t_rank2 = class_witness(code, TClass(3, 2))
    t_rank1 = class_witness(code, TClass(3, 1))
    lhs = dual_jacobi(
        jacobi_brute_force(code, t_rank2), code.size, q
    ) - dual_jacobi(jacobi_brute_force(code, t_rank1), code.size, q)
    rhs = dual_rank_difference_identity(q, m)
    if lhs != rhs:
        return _result("dual-difference", code, FAIL, "expansion mismatch")
    n = code.n
    for ell in range(3, n + 1):
        expected = lhs.coefficient(0, 3, n - ell, ell - 3)
        if dual_diff_coefficient(q, m, ell) != expected:
            return _result(
                "dual-difference", code, FAIL,
                counterexample={"l": ell, "expected": str(expected)},
            )
    return _result("dual-difference", code, PASS, "identity and per-weight coefficients")


CHECKS: dict[str, object] = {
    "weight-enumerator": check_weight_enumerator,
    "support-scalars": check_support_scalars,
    "jacobi-pairs": _jacobi_check("jacobi-pairs", 2),
    "jacobi-triples": _jacobi_check("jacobi-triples", 3),
    "jacobi-quads": _jacobi_check("jacobi-quads", 4),
    "count-tables-pairs": _count_check("count-tables-pairs", 2),
    "count-tables-triples": _count_check("count-tables-triples", 3),
    "count-tables-quads": _count_check("count-tables-quads", 4),
    "count-route": check_count_route,
    "translation-invariance": check_translation_invariance,
    "classify-invariance": check_classify_invariance,
    "design-pairs": _design_check("design-pairs", 2),
    "design-triples": _design_check("design-triples", 3),
    "design-quads": _design_check("design-quads", 4),
    "difference-identity": check_difference_identity,
    "dual-transform": check_dual_transform,
    "dual-enumerator": check_dual_enumerator,
    "dual-difference": check_dual_difference,
}

DEFAULT_PAIRS: tuple[tuple[int, int, int], ...] = (
    (2, 1, 2),
    (2, 1, 3),
    (3, 1, 2),
    (3, 1, 3),
    (2, 2, 2),
    (5, 1, 2),
)


def run_checks(
    pairs=DEFAULT_PAIRS, only=None, workers: int = 1
) -> list[CheckResult]:
    """Run the selected checks over each (p, k, m); results come back in
    (pair, check) order."""
    names = list(CHECKS) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    results = []
    for p, k, m in pairs:
        code = GrmCode(Field(p, k), m)
        for name in names:
            results.append(CHECKS[name](code, workers=workers))
    return results
