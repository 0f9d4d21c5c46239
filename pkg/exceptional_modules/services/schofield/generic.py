"""
通用 U(X,Y) 基：约束矩阵零空间的行最简形基
"""
import logging
from typing import List

from exceptional_modules.models.reports import CheckType, Report, Severity
from exceptional_modules.services.hom_ext import ExtModel
from exceptional_modules.services.linalg import format_scalar
from exceptional_modules.services.representation import Rep

from .base import BaseUBasisBuilder, BasisProvenance, UBasis

logger = logging.getLogger(__name__)


def basis_property_report(model: ExtModel, vectors) -> Report:
    """正秩情形下基向量应满足的三条系数性质，只报告不断言

    (i)   臂 2 上各分量只含 0/1
    (ii)  臂 1,3..t 非首箭头分量只含 0/1
    (iii) 臂 1,3..t 首箭头分量属于 D(λ)
    """
    alg = model.algebra
    allowed = alg.coefficient_set()
    offending = {"arm2_zero_one": [], "non_first_zero_one": [], "first_coefficients": []}
    for k, vector in enumerate(vectors):
        for arrow, f in zip(alg.arrows, model.c1_families(vector)):
            for i, j, value in f.items():
                where = f"F^({k + 1}) {arrow.label}[{i},{j}] = {format_scalar(value)}"
                if arrow.arm == 2:
                    if value != 1:
                        offending["arm2_zero_one"].append(where)
                elif arrow.index > 1:
                    if value != 1:
                        offending["non_first_zero_one"].append(where)
                elif value not in allowed:
                    offending["first_coefficients"].append(where)

    report = Report(subject="u_basis_properties")
    messages = {
        "arm2_zero_one": "臂 2 分量只含 0 和 1",
        "non_first_zero_one": "非首箭头分量只含 0 和 1",
        "first_coefficients": "首箭头分量属于 D(λ)",
    }
    for name, items in offending.items():
        report.add(
            name, CheckType.BASIS, not items, messages[name],
            severity=Severity.WARNING, details=items,
        )
    return report


class GenericUBasisBuilder(BaseUBasisBuilder):
    """通用求解器"""

    provenance = BasisProvenance.GENERIC

    def build(self, x: Rep, y: Rep) -> UBasis:
        self._check_pair(x, y)
        model = ExtModel(x, y)
        vectors: List = model.u_basis
        report = basis_property_report(model, vectors)
        if not report.all_valid:
            logger.info(f"通用基不满足全部基性质: {[r.name for r in report.failures()]}")
        logger.debug(f"通用 U 基: {len(vectors)} 个向量 (dim C¹ = {model.c1_dim})")
        return UBasis(x=x, y=y, vectors=vectors, provenance=self.provenance, report=report)
