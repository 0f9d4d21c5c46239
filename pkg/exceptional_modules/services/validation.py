import logging
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Tuple

from pydantic import BaseModel

from exceptional_modules.models.reports import CheckType, Report, Severity
from exceptional_modules.services.linalg import Matrix, format_scalar
from exceptional_modules.services.representation import Rep, path_matrix, rank

logger = logging.getLogger(__name__)


class EntryKind(str, Enum):
    """允许的矩阵元素类型"""
    COEFFICIENT = "coefficient"  # λ_a − λ_b
    ZERO_ONE = "zero_one"


class MatrixScope(str, Enum):
    """审计规则作用的矩阵范围"""
    FIRST_ARROWS = "first_arrows"
    OTHER_ARROWS = "other_arrows"
    ARM2_PATHS = "arm2_paths"
    PATHS_FROM_ZERO = "paths_from_zero"
    INTERIOR_PATHS = "interior_paths"


class AuditRule(BaseModel):
    """可接受性审计规则"""
    name: str
    scope: MatrixScope
    entry_kind: EntryKind
    description: str

    class Config:
        use_enum_values = True


class RepresentationAuditService:
    """表示审计服务：系数审计与可接受性条件 C1–C5"""

    def __init__(self):
        self.rules: Dict[str, AuditRule] = {}
        self._init_default_rules()
        logger.debug("表示审计服务已初始化")

    def _init_default_rules(self):
        """初始化 C1–C5"""
        self.rules.update({
            "C1": AuditRule(
                name="C1",
                scope=MatrixScope.FIRST_ARROWS,
                entry_kind=EntryKind.COEFFICIENT,
                description="臂 1,3..t 的首箭头矩阵元素属于 D(λ)",
            ),
            "C2": AuditRule(
                name="C2",
                scope=MatrixScope.OTHER_ARROWS,
                entry_kind=EntryKind.ZERO_ONE,
                description="其余箭头矩阵元素只有 0 和 1",
            ),
            "C3": AuditRule(
                name="C3",
                scope=MatrixScope.ARM2_PATHS,
                entry_kind=EntryKind.ZERO_ONE,
                description="臂 2 上所有路径矩阵元素只有 0 和 1",
            ),
            "C4": AuditRule(
                name="C4",
                scope=MatrixScope.PATHS_FROM_ZERO,
                entry_kind=EntryKind.COEFFICIENT,
                description="臂 i≠2 上从顶点 0 出发的路径矩阵元素属于 D(λ)",
            ),
            "C5": AuditRule(
                name="C5",
                scope=MatrixScope.INTERIOR_PATHS,
                entry_kind=EntryKind.ZERO_ONE,
                description="臂 i≠2 上不经过顶点 0 的路径矩阵元素只有 0 和 1",
            ),
        })

    def _scope_matrices(self, m: Rep, scope: str) -> List[Tuple[str, Matrix]]:
        alg = m.algebra
        non2 = [i for i in range(1, alg.t + 1) if i != 2]
        if scope == MatrixScope.FIRST_ARROWS:
            return [(f"alpha_{i}_1", m.mat(i, 1)) for i in non2]
        if scope == MatrixScope.OTHER_ARROWS:
            return [
                (a.label, mat) for a, mat in zip(alg.arrows, m.mats)
                if not (a.index == 1 and a.arm != 2)
            ]
        if scope == MatrixScope.ARM2_PATHS:
            arms, min_start, max_start = [2], 1, None
        elif scope == MatrixScope.PATHS_FROM_ZERO:
            arms, min_start, max_start = non2, 1, 1
        elif scope == MatrixScope.INTERIOR_PATHS:
            arms, min_start, max_start = non2, 2, None
        else:
            raise ValueError(f"未知的审计范围: {scope}")

        result = []
        for i in arms:
            w = alg.weight(i)
            last_start = w if max_start is None else max_start
            for u in range(min_start, last_start + 1):
                for v in range(u, w + 1):
                    pth = alg.path(i, u, v)
                    result.append((f"omega_{i}_{u}_{v}", path_matrix(m, pth)))
        return result

    def _entry_predicate(self, m: Rep, kind: str) -> Callable[[Fraction], bool]:
        if kind == EntryKind.COEFFICIENT:
            allowed: FrozenSet[Fraction] = m.algebra.coefficient_set()
            return lambda value: value in allowed
        return lambda value: value == 1

    @staticmethod
    def _offending(label: str, matrix: Matrix, ok: Callable[[Fraction], bool]) -> List[str]:
        return [
            f"{label}[{i},{j}] = {format_scalar(v)}"
            for i, j, v in matrix.items() if not ok(v)
        ]

    def coefficient_audit(self, m: Rep, severity: Severity = Severity.ERROR) -> Report:
        """所有箭头矩阵元素都属于 D(λ)"""
        report = Report(subject="coefficients")
        ok = self._entry_predicate(m, EntryKind.COEFFICIENT)
        offending = []
        for arrow, mat in zip(m.algebra.arrows, m.mats):
            offending.extend(self._offending(arrow.label, mat, ok))
        allowed = ", ".join(format_scalar(x) for x in sorted(m.algebra.coefficient_set()))
        if offending:
            logger.info(f"系数审计发现 {len(offending)} 个越界元素")
        report.add(
            "coefficients", CheckType.COEFFICIENT, not offending,
            f"所有元素属于 D(λ) = {{{allowed}}}" if not offending else "存在不属于 D(λ) 的元素",
            severity=severity, details=offending,
        )
        return report

    def acceptability_audit(self, m: Rep, severity: Severity = Severity.ERROR) -> Report:
        """逐条检查 C1–C5"""
        report = Report(subject="acceptability")
        if rank(m) <= 0:
            report.add(
                "rank_scope", CheckType.ACCEPTABILITY, True,
                f"可接受性按正秩定义，此处对秩为 {rank(m)} 的模逐字应用",
                severity=Severity.INFO,
            )
        for name, rule in self.rules.items():
            ok = self._entry_predicate(m, rule.entry_kind)
            offending = []
            try:
                for label, mat in self._scope_matrices(m, rule.scope):
                    offending.extend(self._offending(label, mat, ok))
            except Exception as e:
                logger.error(f"审计规则 {name} 执行失败: {e}")
                offending.append(f"审计过程中出现错误: {e}")
            report.add(
                name, CheckType.ACCEPTABILITY, not offending, rule.description,
                severity=severity, details=offending,
            )
        return report


_default_service = None


def get_audit_service() -> RepresentationAuditService:
    global _default_service
    if _default_service is None:
        _default_service = RepresentationAuditService()
    return _default_service


def coefficient_audit(m: Rep, severity: Severity = Severity.ERROR) -> Report:
    return get_audit_service().coefficient_audit(m, severity)


def acceptability_audit(m: Rep, severity: Severity = Severity.ERROR) -> Report:
    return get_audit_service().acceptability_audit(m, severity)


__all__ = [
    "EntryKind", "MatrixScope", "AuditRule", "RepresentationAuditService",
    "get_audit_service", "coefficient_audit", "acceptability_audit",
]
