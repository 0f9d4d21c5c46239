"""
验收套件

每个套件针对给定的典范代数做一组精确检查，返回 SuiteResult。
套件之间相互独立，run_suites 用线程池并发执行，输出按套件名排序。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from exceptional_modules.core.config import settings
from exceptional_modules.models.reports import SuiteResult
from exceptional_modules.services import kronecker, lattice
from exceptional_modules.services.algebra import CanonicalAlgebra
from exceptional_modules.services.hom_ext import ExtModel, euler_form, is_exceptional
from exceptional_modules.services.linalg import hstack, rank
from exceptional_modules.services.representation import (
    Rep, quotient_at_zero_vertex, rank as module_rank, satisfies_relations,
)
from exceptional_modules.services.schofield import create_u_basis_builder
from exceptional_modules.services.schofield.pipeline import (
    find_orthogonal_pairs, iterate_induction, run_induction_step, verify_induction_step,
)
from exceptional_modules.services.small_rank import (
    RankOneSpec, projective, rank_one, rank_one_specs, regular_exceptional, regular_specs,
    tube_simple,
)
from exceptional_modules.services.validation import coefficient_audit

logger = logging.getLogger(__name__)

SuiteFn = Callable[[CanonicalAlgebra], SuiteResult]


def _result(name: str, checked: int, failures: List[str], message: str = "") -> SuiteResult:
    return SuiteResult(
        suite=name, passed=not failures, checked=checked,
        message=message or (f"{checked} 项检查全部通过" if not failures else f"{len(failures)} 项失败"),
        failures=failures,
    )


def suite_wildness(alg: CanonicalAlgebra) -> SuiteResult:
    reference = {(2, 3, 7): Fraction(-1, 42), (3, 3, 3): Fraction(0), (2, 2, 2, 2): Fraction(0)}
    failures = []
    for p, chi in reference.items():
        if lattice.euler_characteristic(p) != chi:
            failures.append(f"χ{p} = {lattice.euler_characteristic(p)}，应为 {chi}")
        if lattice.is_wild(p) != (chi < 0):
            failures.append(f"{p} 的野型判断错误")
    chi = lattice.euler_characteristic(alg.p)
    return _result("wildness", len(reference), failures, f"χ{alg.p} = {chi}，野型: {chi < 0}")


def suite_regular(alg: CanonicalAlgebra) -> SuiteResult:
    failures, checked = [], 0
    for spec in regular_specs(alg):
        checked += 1
        m = regular_exceptional(alg, spec)
        if not satisfies_relations(m):
            failures.append(f"{spec}: 不满足关系")
        elif not is_exceptional(m):
            failures.append(f"{spec}: 不是例外模")
        if module_rank(m) != 0:
            failures.append(f"{spec}: 秩为 {module_rank(m)}")
        if alg.is_normalized and not coefficient_audit(m).passed:
            failures.append(f"{spec}: 系数审计失败")
    return _result("regular", checked, failures)


def suite_rank_one(alg: CanonicalAlgebra) -> SuiteResult:
    failures, checked = [], 0
    allowed = {Fraction(0), Fraction(1)} | set(alg.lambdas)
    for spec in rank_one_specs(alg, settings.suite_rank_one_max_n):
        checked += 1
        m = rank_one(alg, spec)
        if not satisfies_relations(m):
            failures.append(f"{spec}: 不满足关系")
        elif not is_exceptional(m):
            failures.append(f"{spec}: 不是例外模")
        if module_rank(m) != 1:
            failures.append(f"{spec}: 秩为 {module_rank(m)}")
        values = {v for mat in m.mats for v in mat.nonzero_values()}
        if not values <= allowed:
            failures.append(f"{spec}: 元素 {sorted(values - allowed)} 不在 {{0, 1, λ_i}} 中")
    return _result("rank_one", checked, failures)


def suite_kronecker(alg: CanonicalAlgebra) -> SuiteResult:
    failures, checked = [], 0
    for n in (2, 3, 4):
        seq = kronecker.dimension_sequence(n, 5)
        for k in range(5):
            for side in ("preproj", "preinj"):
                checked += 1
                try:
                    rep = kronecker.exceptional_representation(n, side, k)
                except RuntimeError as e:
                    failures.append(f"n={n}, {side}, k={k}: {e}")
                    continue
                expected = (seq[k + 1], seq[k]) if side == "preproj" else (seq[k], seq[k + 1])
                if rep.dims != expected:
                    failures.append(f"n={n}, {side}, k={k}: 维数 {rep.dims}，应为 {expected}")
    return _result("kronecker", checked, failures)


def suite_tube(alg: CanonicalAlgebra) -> SuiteResult:
    failures, checked = [], 0
    for i, w in enumerate(alg.p, start=1):
        simples = {a: tube_simple(alg, i, a) for a in range(1, w + 1)}
        for a in range(1, w + 1):
            for b in range(1, w + 1):
                checked += 1
                value = ExtModel(simples[a], simples[b]).ext_dim
                expected = 1 if b == (a - 2) % w + 1 else 0
                if value != expected:
                    failures.append(f"臂 {i}: dim Ext(S_{a}, S_{b}) = {value}，应为 {expected}")
    return _result("tube", checked, failures)


def suite_u_basis(alg: CanonicalAlgebra) -> SuiteResult:
    failures, checked = [], 0
    structured = create_u_basis_builder("structured")
    generic = create_u_basis_builder("generic")
    specs = rank_one_specs(alg, 1)
    ys = [rank_one(alg, s) for s in specs[:: max(1, len(specs) // 6)]][:6]
    xs = [regular_exceptional(alg, s) for s in regular_specs(alg) if s.l <= 2]
    for x in xs:
        for y in ys:
            checked += 1
            a = structured.build(x, y)
            b = generic.build(x, y)
            if a.size != b.size:
                failures.append(f"{x!r}, {y!r}: 显式基 {a.size} 个，dim U = {b.size}")
                continue
            if a.size and rank(hstack(a.vectors + b.vectors)) != b.size:
                failures.append(f"{x!r}, {y!r}: 两组基张成的空间不同")
    return _result("u_basis", checked, failures)


def named_schofield_pool(alg: CanonicalAlgebra) -> List[Tuple[str, Rep]]:
    """管中单模 S(j·x_i) 与投射模 P(0), P(j·x_i)"""
    pool = [(f"P({alg.vertices[0]})", projective(alg, 0))]
    for i, w in enumerate(alg.p, start=1):
        for a in range(1, w):
            vertex = alg.arm_vertex(i, a)
            label = alg.vertices[vertex]
            pool.append((f"S({label})", tube_simple(alg, i, a)))
            pool.append((f"P({label})", projective(alg, vertex)))
    return pool


def schofield_pool(alg: CanonicalAlgebra) -> List[Rep]:
    return [m for _, m in named_schofield_pool(alg)]


def suite_schofield(alg: CanonicalAlgebra) -> SuiteResult:
    failures, checked = [], 0
    pairs = find_orthogonal_pairs(schofield_pool(alg))
    if len(pairs) < 3:
        failures.append(f"只找到 {len(pairs)} 个正交例外对")
    for x, y, n in pairs:
        checked += 1
        rec = run_induction_step(x, y, kronecker.exceptional_preprojective(n, 1), "structured")
        report = verify_induction_step(rec)
        if not report.passed:
            failures.append(f"{x!r}, {y!r}: {[r.name for r in report.failures()]}")
    return _result("schofield", checked, failures, f"找到 {len(pairs)} 个正交例外对")


def kronecker_pair(alg: CanonicalAlgebra) -> Tuple[Rep, Rep]:
    """(P(c)/P(c)_0, P(0))：正交例外对，dim Ext = 2"""
    return quotient_at_zero_vertex(projective(alg, alg.sink_vertex)), projective(alg, 0)


TOWER_SEEDS = (
    ("O(c)", (0, 0, 0), 1),
    ("O(x1+x2+x3)", (1, 1, 1), 0),
    ("O(2x2+2x3)", (0, 2, 2), 0),
    ("O(x1+3x3)", (1, 0, 3), 0),
)


def tower_seeds(alg: CanonicalAlgebra) -> List[Tuple[str, Rep]]:
    """反复归纳可得秩 2、3、4 例外模的四个秩一模；要求 t ≥ 3，p_2 ≥ 3，p_3 ≥ 4

    除 O(c) 外三个模在顶点 c 上为零，以它们为 X 时结构化基由单位向量组成。
    """
    if alg.t < 3 or alg.weight(2) < 3 or alg.weight(3) < 4:
        return []
    pad = (0,) * (alg.t - 3)
    return [(name, rank_one(alg, RankOneSpec(r=r + pad, n=n))) for name, r, n in TOWER_SEEDS]


def suite_induction_tower(alg: CanonicalAlgebra) -> SuiteResult:
    failures, checked = [], 0
    x, y = kronecker_pair(alg)
    n = ExtModel(x, y).ext_dim
    if n != 2:
        failures.append(f"P(c)/P(c)_0 与 P(0) 的 dim Ext = {n}，应为 2")
    else:
        for k in (1, 2):
            checked += 1
            rec = run_induction_step(x, y, kronecker.exceptional_preprojective(2, k), "structured")
            report = verify_induction_step(rec)
            if not report.passed:
                failures.append(f"Θ(2), k = {k}: {[r.name for r in report.failures()]}")

    seeds = [m for _, m in tower_seeds(alg)]
    if not seeds:
        return _result("induction_tower", checked, failures, f"{alg.p} 不满足种子条件，只检查 Θ(2)")
    ranks = set()
    for level, records in enumerate(iterate_induction(seeds, rounds=3), start=1):
        for rec in records:
            checked += 1
            ranks.add(module_rank(rec.m))
            report = verify_induction_step(rec)
            if not report.passed:
                failures.append(f"第 {level} 轮 {rec.x!r}, {rec.y!r}: {[r.name for r in report.failures()]}")
    missing = sorted({2, 3, 4} - ranks)
    if missing:
        failures.append(f"没有得到秩为 {missing} 的例外模")
    return _result("induction_tower", checked, failures)


def suite_translation_bound(alg: CanonicalAlgebra) -> SuiteResult:
    if not lattice.is_wild(alg.p):
        return _result("translation_bound", 0, [], f"{alg.p} 不是野型，跳过")
    failures, checked = [], 0
    dets = [lattice.normal_form(a, [0] * alg.t, alg.p) for a in range(-2, 2)]
    for d in dets:
        checked += 1
        formula = (1 - d.a) * (alg.t - 2) + 1
        if lattice.translation_bound([d], alg.p) != formula:
            failures.append(f"{d}: 公式界不符")
        bound = lattice.sharp_translation_bound([d], alg.p)
        for n in range(bound + 1, bound + 21):
            if lattice.is_nonnegative(lattice.shift_defect(d, n)):
                failures.append(f"{d}: n = {n} > N = {bound} 时仍非负")
                break
    return _result("translation_bound", checked, failures)


def suite_euler(alg: CanonicalAlgebra) -> SuiteResult:
    failures, checked = [], 0
    modules = schofield_pool(alg)
    for v in range(len(alg.vertices)):
        pv = projective(alg, v)
        for m in modules:
            checked += 1
            if euler_form(pv.dims, m.dims, alg) != m.dims[v]:
                failures.append(f"⟨P({alg.vertices[v]}), {m!r}⟩ ≠ dim N_v")
    for x in modules:
        for y in modules:
            checked += 1
            model = ExtModel(x, y)
            if model.hom_dim - model.ext_dim != euler_form(x.dims, y.dims, alg):
                failures.append(f"{x!r}, {y!r}: hom − ext ≠ Euler 型")
    return _result("euler", checked, failures)


SUITES: Dict[str, SuiteFn] = {
    "euler": suite_euler,
    "induction_tower": suite_induction_tower,
    "kronecker": suite_kronecker,
    "rank_one": suite_rank_one,
    "regular": suite_regular,
    "schofield": suite_schofield,
    "translation_bound": suite_translation_bound,
    "tube": suite_tube,
    "u_basis": suite_u_basis,
    "wildness": suite_wildness,
}


def _run_one(name: str, alg: CanonicalAlgebra) -> SuiteResult:
    logger.info(f"开始套件 {name}")
    try:
        result = SUITES[name](alg)
    except Exception as e:
        logger.error(f"套件 {name} 执行出错: {e}")
        return SuiteResult(suite=name, passed=False, message=f"执行出错: {e}", failures=[str(e)])
    logger.info(f"套件 {name}: {'通过' if result.passed else '失败'} ({result.checked} 项)")
    return result


def run_suites(
    alg: CanonicalAlgebra,
    names: Optional[Sequence[str]] = None,
    workers: Optional[int] = None,
) -> List[SuiteResult]:
    selected = sorted(names) if names else sorted(SUITES)
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise ValueError(f"未知的套件: {unknown}，可选: {sorted(SUITES)}")
    workers = settings.workers if workers is None else workers
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        results = list(executor.map(lambda name: _run_one(name, alg), selected))
    return sorted(results, key=lambda r: r.suite)


__all__ = [
    "SUITES", "SuiteFn", "run_suites", "named_schofield_pool", "schofield_pool",
    "suite_wildness", "suite_regular",
    "suite_rank_one", "suite_kronecker", "suite_tube", "suite_u_basis", "suite_schofield",
    "suite_translation_bound", "suite_euler", "kronecker_pair", "tower_seeds",
    "suite_induction_tower",
]
