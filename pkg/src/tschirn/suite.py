"""Acceptance matrix: seeded random instances, golden corpus, and algebraic identity checks.

Each ``criterion_*`` function returns a :class:`CriterionResult`.  The random
matrix is computed once per configuration and shared by the criteria that
read it.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from .arith import LaurentPoly, UniPoly
from .birkhoff import TransitionMatrix, cohomology_dims, factorize, h0_oracle, splitting_type
from .funcfield import (
    CoverEquation,
    integral_closure,
    infinity_equation,
    make_integral,
)
from .geometry import (
    DivisorClass,
    SurfaceModel,
    adjunction_quadratic_roots,
    genus_formula,
    intersect,
    pushforward_Ok,
    recognize_cover,
)
from .instances import (
    CoxCurve,
    InstanceError,
    PlaneCurve,
    TangencyError,
    chart_equations,
    random_instance,
    random_plane_curve,
)
from .polymat import LaurentMatrix
from .verify import ContractViolation, InvalidInstance, VerifyReport, chart_lattices, verify_instance, verify_plane

__all__ = [
    "CriterionResult",
    "SuiteConfig",
    "MatrixRow",
    "instance_seed",
    "run_matrix",
    "load_golden",
    "check_golden",
    "random_transition",
    "CRITERIA",
    "run_suite",
]

SCALE_ENV = "TSCHIRN_SUITE_SCALE"


@dataclass(frozen=True)
class SuiteConfig:
    scale: str = "full"
    seed: int = 0
    jobs: int = 1
    deltas: tuple[int, ...] = (0, 1)
    per_instance_s: float = 5.0
    total_s: float = 300.0
    golden_dir: str | None = None

    @classmethod
    def from_env(cls, **kw) -> "SuiteConfig":
        kw.setdefault("scale", os.environ.get(SCALE_ENV, "full"))
        return cls(**kw)

    @property
    def ms(self) -> tuple[int, ...]:
        return (2, 3, 4, 5) if self.scale == "full" else (2, 3)

    @property
    def es(self) -> tuple[int, ...]:
        return (1, 2, 3) if self.scale == "full" else (1, 2)

    @property
    def per_cell(self) -> int:
        return 3 if self.scale == "full" else 1

    @property
    def birkhoff_count(self) -> int:
        return 200 if self.scale == "full" else 40


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    rows: list = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title} ({self.seconds:.2f}s) {self.detail}".rstrip()

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


def instance_seed(seed, m: int, e: int, delta: int, i: int) -> str:
    """Per-instance seed string; independent of scheduling."""
    return f"{seed}:{m}:{e}:{delta}:{i}"


@dataclass
class MatrixRow:
    m: int
    e: int
    delta: int
    index: int
    report: dict | None
    error: str | None
    seconds: float
    redraws: int = 0


def _sample_and_verify(args) -> MatrixRow:
    m, e, d, i, seed, bound = args
    t0 = time.perf_counter()
    redraws = 0
    while True:
        s = instance_seed(seed, m, e, d, i) + (f":{redraws}" if redraws else "")
        try:
            X = random_instance(m, e, d, s, bound).curve
            rep = verify_instance(X)
            return MatrixRow(m, e, d, i, rep.to_json(), None, time.perf_counter() - t0, redraws)
        except InvalidInstance as exc:
            if exc.kind != "reducible" or redraws >= 10:
                return MatrixRow(m, e, d, i, None, str(exc), time.perf_counter() - t0, redraws)
            redraws += 1
        except (ContractViolation, Exception) as exc:  # reported, not swallowed
            return MatrixRow(m, e, d, i, None, f"{type(exc).__name__}: {exc}", time.perf_counter() - t0, redraws)


_MATRIX_CACHE: dict = {}


def run_matrix(cfg: SuiteConfig, bound: int = 5) -> list[MatrixRow]:
    """All seeded instances, in input order (merged deterministically)."""
    key = (cfg.scale, cfg.seed, cfg.deltas, bound)
    if key in _MATRIX_CACHE:
        return _MATRIX_CACHE[key]
    tasks = [
        (m, e, d, i, cfg.seed, bound)
        for d in cfg.deltas
        for m in cfg.ms
        for e in cfg.es
        for i in range(cfg.per_cell)
    ]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_sample_and_verify, tasks))
    else:
        rows = [_sample_and_verify(t) for t in tasks]
    _MATRIX_CACHE[key] = rows
    return rows


def _timed(number: int, title: str):
    def deco(fn):
        def run(cfg: SuiteConfig) -> CriterionResult:
            t0 = time.perf_counter()
            try:
                passed, detail, rows = fn(cfg)
            except Exception as exc:  # a crash is a failed row, with its reason
                passed, detail, rows = False, f"{type(exc).__name__}: {exc}", []
            return CriterionResult(number, title, passed, detail, time.perf_counter() - t0, rows)

        run.number = number
        run.title = title
        run.__name__ = fn.__name__
        return run

    return deco


def _budget(rows: list[MatrixRow], cfg: SuiteConfig) -> tuple[bool, str]:
    slow = [r for r in rows if r.seconds > cfg.per_instance_s]
    total = sum(r.seconds for r in rows)
    ok = not slow and total < cfg.total_s
    return ok, f"max {max((r.seconds for r in rows), default=0):.2f}s, total {total:.1f}s"


def _closed_form_a(m, e, d):
    return sorted([0] + [-k * e - d for k in range(1, m)])


def _closed_form_b(m, e, d):
    return sorted([0, -e] + [-k * e - d for k in range(2, m)])


@_timed(1, "structure-sheaf splitting, delta = 0")
def criterion_1(cfg):
    rows = [r for r in run_matrix(cfg) if r.delta == 0]
    bad = [r for r in rows if r.report is None or sorted(r.report["computed"]) != _closed_form_a(r.m, r.e, 0)]
    ok_t, t = _budget(rows, cfg)
    return bool(rows) and not bad and ok_t, f"{len(rows) - len(bad)}/{len(rows)} exact; {t}", bad


@_timed(2, "structure-sheaf splitting, delta = 1")
def criterion_2(cfg):
    rows = [r for r in run_matrix(cfg) if r.delta == 1]
    bad = [r for r in rows if r.report is None or sorted(r.report["computed"]) != _closed_form_a(r.m, r.e, 1)]
    ok_t, t = _budget(rows, cfg)
    return bool(rows) and not bad and ok_t, f"{len(rows) - len(bad)}/{len(rows)} exact; {t}", bad


@_timed(3, "twisted pushforward splitting, delta = 1")
def criterion_3(cfg):
    rows = [r for r in run_matrix(cfg) if r.delta == 1]
    bad = [r for r in rows if r.report is None or sorted(r.report["computed_twisted"]) != _closed_form_b(r.m, r.e, 1)]
    return bool(rows) and not bad, f"{len(rows) - len(bad)}/{len(rows)} exact", bad


@_timed(4, "genus by splitting, adjunction and closed formula")
def criterion_4(cfg):
    rows = run_matrix(cfg)
    bad = []
    for r in rows:
        if r.report is None:
            bad.append(r)
            continue
        g = r.report["genus"]
        closed = (r.m * (r.m - 1) // 2) * r.e + (1 - r.m if r.delta == 0 else 0)
        if not (g["splitting"] == g["adjunction"] == g["formula"] == closed):
            bad.append(r)
    return bool(rows) and not bad, f"{len(rows) - len(bad)}/{len(rows)} agree", bad


def _smooth_plane_report(m: int, seed, through: bool) -> tuple[VerifyReport, int]:
    """First smooth sample with the requested incidence; returns report and redraws."""
    for k in range(200):
        C = random_plane_curve(m, f"{seed}:{k}", through_center=through)
        try:
            return verify_plane(C), k
        except TangencyError:
            continue
        except InvalidInstance as exc:
            if exc.kind in ("singular", "reducible"):
                continue
            raise
        except InstanceError:
            continue
    raise RuntimeError(f"no smooth plane curve of degree {m}")


def _flex_cubic() -> PlaneCurve:
    # Y^2 Z = X^3 + X Z^2, center at the flex (0:1:0)
    return PlaneCurve({(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -1}, 3, (0, 1, 0), (0, 1, 0))


@_timed(5, "plane-curve projection pipeline")
def criterion_5(cfg):
    bad, n = [], 0
    for m in (3, 4, 5):
        for i in range(3):
            rep, _ = _smooth_plane_report(m, f"{cfg.seed}:plane:{m}:a:{i}", False)
            n += 1
            if rep.case != "a" or sorted(rep.computed) != sorted([0] + [-k for k in range(1, m)]):
                bad.append(("a", m, i, rep.computed))
            rep, _ = _smooth_plane_report(m, f"{cfg.seed}:plane:{m}:b:{i}", True)
            n += 1
            want = sorted([0] + [-k for k in range(2, m)])
            want_t = sorted([0, -1] + [-k for k in range(3, m)])
            if rep.case != "b" or sorted(rep.computed) != want or sorted(rep.computed_twisted) != want_t:
                bad.append(("b", m, i, rep.computed, rep.computed_twisted))
    rejected = False
    try:
        from .instances import plane_to_cox

        plane_to_cox(_flex_cubic())
    except TangencyError as exc:
        rejected = "tangency order 3" in str(exc)
    return not bad and rejected, f"{n - len(bad)}/{n} exact; flex rejected: {rejected}", bad


def _elementary_poly(rng: random.Random, m: int, var_inverse: bool) -> LaurentMatrix:
    """Shear plus permutation, unimodular over Q[x] (or Q[1/x])."""
    i, j = rng.sample(range(m), 2)
    deg = rng.randint(0, 1)
    coeffs = {(-k if var_inverse else k): Fraction(rng.randint(-2, 2)) for k in range(deg + 1)}
    rows = [[LaurentPoly({0: 1}) if a == b else LaurentPoly() for b in range(m)] for a in range(m)]
    rows[i][j] = LaurentPoly(coeffs)
    c = Fraction(rng.choice([1, -1, 2, Fraction(1, 2)]))
    rows[j][j] = LaurentPoly({0: c})
    perm = list(range(m))
    rng.shuffle(perm)
    return LaurentMatrix([rows[p] for p in perm])


def random_unimodular(rng: random.Random, m: int, inverse: bool, factors: int = 2) -> LaurentMatrix:
    U = LaurentMatrix.identity(m)
    for _ in range(factors):
        U = U @ _elementary_poly(rng, m, inverse)
    return U


def random_transition(rng: random.Random, m: int, lo: int = -6, hi: int = 6):
    """(U D V, d) with U over Q[x], V over Q[1/x] unimodular, D = diag(x^d)."""
    d = [rng.randint(lo, hi) for _ in range(m)]
    D = LaurentMatrix.diagonal([LaurentPoly.monomial(k) for k in d])
    U = random_unimodular(rng, m, False)
    V = random_unimodular(rng, m, True)
    return U @ D @ V, sorted(d, reverse=True)


@_timed(6, "Birkhoff factorization properties")
def criterion_6(cfg):
    rng = random.Random(f"{cfg.seed}:birkhoff")
    bad = []
    n = cfg.birkhoff_count
    for t in range(n):
        m = 2 + t % 4
        T, d = random_transition(rng, m)
        fac = factorize(T)
        checks = {
            "identity": fac.reconstruct() == T,
            "type": list(fac.exponents) == d,
            "det": sum(fac.exponents) == TransitionMatrix(T).det_exponent,
        }
        T2 = random_unimodular(rng, m, False, 1) @ T @ random_unimodular(rng, m, True, 1)
        checks["perturbed"] = list(splitting_type(T2)) == d
        checks["h0"] = all(h0_oracle(T, k) == cohomology_dims(d, k)[0] for k in range(-3, 4))
        if not all(checks.values()):
            bad.append((t, m, d, {k: v for k, v in checks.items() if not v}))
    return not bad, f"{n - len(bad)}/{n} matrices pass", bad


@_timed(7, "intersection and adjunction calculus")
def criterion_7(cfg):
    bad = []
    H, Y0 = DivisorClass.H, DivisorClass.Y0()
    for e in range(1, 9):
        S = SurfaceModel(e)
        if intersect(H(e), H(e), S) != e or intersect(Y0, H(e), S) != 0 or intersect(Y0, Y0, S) != -e:
            bad.append(("intersection", e))
    for m in range(2, 7):
        for e in range(1, 9):
            for g in range(0, 5):
                roots = adjunction_quadratic_roots(m, e, g)
                if sorted(roots) != sorted([Fraction(m), m + 1 + Fraction(2 * (g - 1), e)]):
                    bad.append(("roots", m, e, g))
    grid = 0
    for m in range(2, 7):
        for e in range(1, 9):
            for g in range(0, 5):
                for case in ("A", "B"):
                    d = m * e + (case == "B")
                    rec = recognize_cover(d, genus_formula(m, e, g, case), e, g, case == "B")
                    grid += 1
                    if rec.case != case or rec.m != m:
                        bad.append(("recognize", m, e, g, case))
    return not bad, f"{grid} recognition cells; {len(bad)} failures", bad


def _sym_degrees(k: int, e: int) -> list[int]:
    """Degrees of Sym^k(O + O(e)) by enumerating monomials."""
    if k < 0:
        return []
    return sorted((sum(c) for c in itertools.combinations_with_replacement((0, e), k)), reverse=True)


@_timed(8, "direct-image tables on the ruled surface")
def criterion_8(cfg):
    bad = []
    r = 1  # fiber dimension
    for e in range(1, 6):
        for k in range(-6, 7):
            direct, r1 = pushforward_Ok(k, e)
            want_direct = _sym_degrees(k, e) if k >= 0 else []
            if k > -r - 1:
                want_r1 = []
            else:
                want_r1 = sorted((-d - e for d in _sym_degrees(-k - r - 1, e)), reverse=True)
            if sorted(direct, reverse=True) != want_direct or sorted(r1, reverse=True) != want_r1:
                bad.append((k, e, direct, r1))
    return not bad, f"{13 * 5 - len(bad)}/65 cells", bad


def _golden_dir(cfg) -> Path:
    if cfg.golden_dir:
        return Path(cfg.golden_dir)
    return Path(str(resources.files("tschirn") / "data" / "golden"))


def load_golden(directory) -> list[dict]:
    out = []
    for p in sorted(Path(directory).glob("*.json")):
        with open(p) as fh:
            doc = json.load(fh)
        doc["_path"] = str(p)
        out.append(doc)
    return out


def check_golden(doc: dict) -> tuple[bool, str]:
    """Run one golden document; returns (passed, message)."""
    from .instances import load_instance

    exp = doc["expect"]
    try:
        curve, plane = load_instance(doc["instance"])
        if plane is not None:
            rep = verify_plane(plane)
        else:
            rep = verify_instance(curve, check_smooth=not exp.get("skip_smoothness", False))
    except TangencyError as exc:
        return exp.get("error") == "tangency", f"tangency rejection: {exc}"
    except InvalidInstance as exc:
        if exp.get("error") != exc.kind:
            return False, f"unexpected {exc.kind}: {exc}"
        if "base_values" in exp:
            got = [str(v) for v in exc.witness.base_values()] if hasattr(exc.witness, "base_values") else []
            want = [str(Fraction(v)) for v in exp["base_values"]]
            return got == want, f"witness {got}"
        return True, str(exc)
    if "error" in exp:
        return False, "expected rejection, got a report"
    ok = sorted(rep.computed) == sorted(exp["splitting"])
    if "twisted" in exp:
        ok = ok and sorted(rep.computed_twisted or []) == sorted(exp["twisted"])
    if "case" in exp:
        ok = ok and rep.case == exp["case"]
    ok = ok and rep.genus_match
    return ok, f"computed {rep.computed}" + (f" twisted {rep.computed_twisted}" if rep.computed_twisted else "")


@_timed(9, "negative controls: node and two sections")
def criterion_9(cfg):
    from .cli import main as cli_main

    d = _golden_dir(cfg)
    nodal = d / "cox_nodal.json"
    reducible = d / "cox_two_sections.json"
    detail = []
    code_nodal, out_nodal = cli_main(["verify", "--instance", str(nodal)], capture=True)
    doc = json.loads(out_nodal)
    nodal_ok = code_nodal == 2 and doc.get("error") == "singular" and "0" in [str(Fraction(v)) for v in doc.get("base_values", [])]
    detail.append(f"node exit {code_nodal}, witness {doc.get('base_values')}")
    code_red, out_red = cli_main(["verify", "--instance", str(reducible), "--no-smoothness-check"], capture=True)
    doc = json.loads(out_red)
    split = (doc.get("witness") or {}).get("splitting", [])
    red_ok = code_red == 2 and doc.get("error") == "reducible" and sum(1 for x in split if x >= 0) >= 2
    detail.append(f"two sections exit {code_red}, splitting {split}")
    return nodal_ok and red_ok, "; ".join(detail), []


def _corpus_curves(cfg) -> list[CoxCurve]:
    from .instances import load_instance, plane_to_cox

    curves = []
    for doc in load_golden(_golden_dir(cfg)):
        if "error" in doc["expect"]:
            continue
        curve, plane = load_instance(doc["instance"])
        curves.append(plane_to_cox(plane)[0] if plane is not None else curve)
    for r in run_matrix(cfg):
        if r.report is not None:
            s = instance_seed(cfg.seed, r.m, r.e, r.delta, r.index) + (f":{r.redraws}" if r.redraws else "")
            curves.append(random_instance(r.m, r.e, r.delta, s).curve)
    return curves


def closure_identities(X: CoxCurve) -> list[str]:
    """Idempotence, multiplicative closure and agreement with the generic closure."""
    problems = []
    lat = chart_lattices(X)
    Xn = lat.curve
    eq = make_integral(chart_equations(Xn).zero_w)
    M0 = lat.chart_zero
    if integral_closure(eq, start=M0).canonical() != M0.canonical():
        problems.append("chart-zero closure not idempotent")
    if not M0.is_multiplicatively_closed():
        problems.append("chart-zero closure not multiplicatively closed")
    if not lat.chart_infinity.is_multiplicatively_closed():
        problems.append("chart-infinity closure not multiplicatively closed")
    eq_inf = infinity_equation(eq, Xn.e, Xn.delta)
    Minf = integral_closure(eq_inf)
    if integral_closure(eq_inf, start=Minf).canonical() != Minf.canonical():
        problems.append("chart-infinity closure not idempotent")
    generic = integral_closure(eq)
    if generic.canonical() != M0.canonical():
        problems.append("closure differs from the generic discriminant route")
    return problems


@_timed(10, "normalization identities")
def criterion_10(cfg):
    x = UniPoly.gen()
    bad = []
    sqfree = CoverEquation((UniPoly(()), -(x**3 + x + 1)))
    L = integral_closure(sqfree).canonical()
    if L.numer != L.numer.identity(2) or not L.denom.is_const():
        bad.append("squarefree discriminant example")
    node = CoverEquation((UniPoly(()), -(x**2 * (x + 1))))
    L = integral_closure(node).canonical()
    if L.denom != x or L.numer.rows != ((x, UniPoly(())), (UniPoly(()), UniPoly((1,)))):
        bad.append("node example")
    curves = _corpus_curves(cfg)
    for X in curves:
        for p in closure_identities(X):
            bad.append(f"(m={X.m}, e={X.e}, delta={X.delta}): {p}")
    return not bad, f"{len(curves)} corpus curves; {len(bad)} problems", bad


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


@dataclass
class SuiteSummary:
    results: list[CriterionResult]
    golden: list[dict]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results) and all(g["passed"] for g in self.golden)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "criteria": [r.to_json() for r in self.results],
            "golden": self.golden,
        }


def run_suite(cfg: SuiteConfig, only: Iterable[int] | None = None) -> SuiteSummary:
    wanted = set(only) if only else None
    results = [c(cfg) for c in CRITERIA if wanted is None or c.number in wanted]
    golden = []
    for doc in load_golden(_golden_dir(cfg)):
        if cfg.deltas != (0, 1) and "instance" in doc and doc["instance"].get("delta") not in cfg.deltas:
            continue
        try:
            ok, msg = check_golden(doc)
        except Exception as exc:
            ok, msg = False, f"{type(exc).__name__}: {exc}"
        golden.append({"name": doc.get("name", Path(doc["_path"]).stem), "passed": ok, "detail": msg})
    return SuiteSummary(results, golden)
