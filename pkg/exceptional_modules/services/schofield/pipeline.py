"""
Schofield 归纳的一步

给定正交例外对 (X, Y)，n = dim Ext(X, Y)，以及 Θ(n) 的例外表示 (v, u, A_m)，
中间项 M 满足 0 → Y^v → M → X^u → 0，箭头矩阵为
[[Y_α ⊗ I_v, Σ_m f_α^(m) ⊗ A_m], [0, X_α ⊗ I_u]]。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel

from exceptional_modules.core.config import settings
from exceptional_modules.models.reports import CheckType, Report, Severity
from exceptional_modules.services.hom_ext import (
    ExtModel, extension_middle_term, is_exceptional, is_orthogonal_exceptional_pair,
)
from exceptional_modules.services.kronecker import ThetaRep, exceptional_preprojective
from exceptional_modules.services.linalg import Matrix, hstack, kron, rref
from exceptional_modules.services.representation import (
    Rep, check_relations, rank as module_rank, satisfies_relations, tensor_power,
)
from exceptional_modules.services.validation import acceptability_audit, coefficient_audit

from . import create_u_basis_builder
from .base import BasisProvenance, UBasis

logger = logging.getLogger(__name__)


class InductionRecord(BaseModel):
    """一次归纳的全部输入与输出"""
    x: Rep
    y: Rep
    n: int
    kron: ThetaRep
    basis: UBasis
    ext_basis: UBasis
    m: Rep

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @property
    def provenance(self) -> BasisProvenance:
        return self.basis.provenance


def ext_basis_from_u(x: Rep, y: Rep, basis: UBasis) -> UBasis:
    """从 U 的基中选出模 im δ 线性无关的 n = dim Ext 个向量"""
    model = ExtModel(x, y)
    if not basis.vectors:
        return UBasis(x=x, y=y, vectors=[], provenance=basis.provenance)
    combined = hstack([model.delta] + list(basis.vectors), model.c1_dim)
    _, pivots = rref(combined)
    offset = model.c0_dim
    chosen = [basis.vectors[p - offset] for p in pivots if p >= offset]
    if len(chosen) != model.ext_dim:
        raise RuntimeError(f"选出 {len(chosen)} 个 Ext 代表元，而 dim Ext = {model.ext_dim}，基未张成 U")
    return UBasis(x=x, y=y, vectors=chosen, provenance=basis.provenance)


def assemble(x: Rep, y: Rep, ext_basis: UBasis, kron_rep: ThetaRep) -> Rep:
    """φ_α = Σ_m f_α^(m) ⊗ A_m，顶点空间 Y ⊗ k^v ⊕ X ⊗ k^u"""
    if kron_rep.n != ext_basis.size:
        raise ValueError(f"Kronecker 表示的箭头数 {kron_rep.n} 与 Ext 代表元个数 {ext_basis.size} 不一致")
    families = ext_basis.families()
    big_x = tensor_power(x, kron_rep.u)
    big_y = tensor_power(y, kron_rep.v)
    model = ExtModel(big_x, big_y)

    phi = []
    for k, shape in enumerate(model.c1_blocks):
        total = Matrix(*shape)
        for f, a in zip(families, kron_rep.mats):
            total = total + kron(f[k], a)
        phi.append(total)
    try:
        return extension_middle_term(big_x, big_y, model.c1_vector(phi))
    except ValueError as e:
        raise ValueError(f"组装失败，Ext 代表元不在 U(X,Y) 中: {e}") from e


def run_induction_step(
    x: Rep,
    y: Rep,
    kron_rep: ThetaRep,
    basis_kind: Union[str, BasisProvenance] = BasisProvenance.STRUCTURED,
) -> InductionRecord:
    n = ExtModel(x, y).ext_dim
    if kron_rep.n != n:
        raise ValueError(f"Kronecker 表示的箭头数 {kron_rep.n} 与 dim Ext(X,Y) = {n} 不一致")
    builder = create_u_basis_builder(basis_kind)
    if not builder.supports(x, y):
        raise ValueError(f"{builder.provenance.value} 基不适用于该模对")
    basis = builder.build(x, y)
    ext_basis = ext_basis_from_u(x, y, basis)
    m = assemble(x, y, ext_basis, kron_rep)
    logger.info(f"归纳完成: n = {n}, Kronecker 维数 {kron_rep.dims}, M 的维数 {m.dims}")
    return InductionRecord(x=x, y=y, n=n, kron=kron_rep, basis=basis, ext_basis=ext_basis, m=m)


def verify_induction_step(rec: InductionRecord) -> Report:
    """逐项检查归纳结果；失败写入报告，不抛出"""
    report = Report(subject="induction")
    m, x, y, kr = rec.m, rec.x, rec.y, rec.kron
    structured = rec.provenance == BasisProvenance.STRUCTURED

    relations = check_relations(m)
    report.add("relations", CheckType.RELATION, relations.passed, "M 满足典范关系",
               details=[d for r in relations.failures() for d in r.details])
    if relations.passed:
        exceptional = is_exceptional(m)
        report.add("exceptional", CheckType.EXCEPTIONAL, exceptional, "End(M) = k 且 Ext(M,M) = 0")
    else:
        report.add("exceptional", CheckType.EXCEPTIONAL, False, "M 不满足关系，跳过例外性检查")

    expected_rank = kr.u * module_rank(x) + kr.v * module_rank(y)
    report.add(
        "rank_additivity", CheckType.ADDITIVITY, module_rank(m) == expected_rank,
        f"rk M = {module_rank(m)}，u·rk X + v·rk Y = {expected_rank}",
    )
    expected_dims = tuple(kr.u * a + kr.v * b for a, b in zip(x.dims, y.dims))
    report.add(
        "dims_additivity", CheckType.ADDITIVITY, m.dims == expected_dims,
        "dim M = u·dim X + v·dim Y",
        details=[] if m.dims == expected_dims else [f"{m.dims} ≠ {expected_dims}"],
    )

    coeff = coefficient_audit(m, Severity.ERROR if structured else Severity.WARNING)
    report.extend(coeff)
    if structured:
        severity = Severity.WARNING if module_rank(m) > 0 else Severity.INFO
        report.extend(acceptability_audit(m, severity))

    if not report.passed:
        logger.warning(f"归纳检查失败: {[r.name for r in report.failures()]}")
    return report


def _pair_entry(x: Rep, y: Rep) -> Optional[int]:
    pair = is_orthogonal_exceptional_pair(x, y)
    if pair.passed and pair.ext_dim >= 1:
        return pair.ext_dim
    return None


def find_orthogonal_pairs(
    pool: Sequence[Rep],
    max_total_dim: Optional[int] = None,
    workers: int = 1,
) -> List[Tuple[Rep, Rep, int]]:
    """池中所有通过正交例外对检查且 n = dim Ext(X,Y) ≥ 1 的有序对"""
    limit = settings.pair_search_max_total_dim if max_total_dim is None else max_total_dim
    candidates = []
    for m in pool:
        if not satisfies_relations(m):
            raise ValueError(f"模池中的 {m!r} 不满足典范关系")
        if m.total_dim <= limit and is_exceptional(m):
            candidates.append(m)

    ordered = [(x, y) for i, x in enumerate(candidates) for j, y in enumerate(candidates) if i != j]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda xy: _pair_entry(*xy), ordered))
    else:
        results = [_pair_entry(x, y) for x, y in ordered]

    pairs = [(x, y, n) for (x, y), n in zip(ordered, results) if n is not None]
    logger.info(f"正交对搜索: {len(candidates)} 个例外模，找到 {len(pairs)} 个正交对")
    return pairs


def _induct_pair(x: Rep, y: Rep, n: int, kron_k: int) -> InductionRecord:
    """优先用结构化基；结构化基不适用时退回通用基"""
    kind = BasisProvenance.STRUCTURED
    if not create_u_basis_builder(kind).supports(x, y):
        kind = BasisProvenance.GENERIC
    return run_induction_step(x, y, exceptional_preprojective(n, kron_k), kind)


def iterate_induction(
    seeds: Sequence[Rep],
    rounds: int,
    kron_k: int = 1,
    workers: int = 1,
) -> List[List[InductionRecord]]:
    """把每轮的中间项放回模池，继续与种子配对

    第一轮在种子之间配对；之后每轮只把上一轮新得到的模与种子配对，两种次序都试。
    返回每一轮的归纳记录，某一轮没有新模时提前结束。
    """
    if rounds < 1:
        raise ValueError(f"轮数至少为 1: {rounds}")
    for m in seeds:
        if not satisfies_relations(m):
            raise ValueError(f"种子 {m!r} 不满足典范关系")
    seeds = [m for m in seeds if is_exceptional(m)]
    known = set(seeds)
    frontier = list(seeds)
    levels: List[List[InductionRecord]] = []

    for level in range(1, rounds + 1):
        if level == 1:
            ordered = [(x, y) for x in seeds for y in seeds if x != y]
        else:
            ordered = [(s, m) for m in frontier for s in seeds] + [(m, s) for m in frontier for s in seeds]
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                entries = list(executor.map(lambda xy: _pair_entry(*xy), ordered))
        else:
            entries = [_pair_entry(x, y) for x, y in ordered]

        records = []
        for (x, y), n in zip(ordered, entries):
            if n is None:
                continue
            rec = _induct_pair(x, y, n, kron_k)
            if rec.m in known:
                continue
            known.add(rec.m)
            records.append(rec)
        logger.info(f"第 {level} 轮归纳: 检查 {len(ordered)} 个有序对，得到 {len(records)} 个新模")
        if not records:
            break
        levels.append(records)
        frontier = [rec.m for rec in records]
    return levels


__all__ = [
    "InductionRecord", "ext_basis_from_u", "assemble", "run_induction_step",
    "verify_induction_step", "find_orthogonal_pairs", "iterate_induction",
]
