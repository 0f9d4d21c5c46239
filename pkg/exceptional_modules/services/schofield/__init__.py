"""
Schofield 归纳模块
"""
from typing import Union

from .base import BaseUBasisBuilder, BasisProvenance, UBasis
from .generic import GenericUBasisBuilder, basis_property_report
from .structured import StructuredUBasisBuilder, unit_column_rows


def create_u_basis_builder(kind: Union[str, BasisProvenance] = BasisProvenance.STRUCTURED) -> BaseUBasisBuilder:
    """按来源创建 U(X,Y) 基构造器"""
    try:
        kind = BasisProvenance(kind)
    except ValueError as e:
        raise ValueError(f"未知的基类型: {kind} (应为 structured 或 generic)") from e
    if kind == BasisProvenance.STRUCTURED:
        return StructuredUBasisBuilder()
    return GenericUBasisBuilder()


__all__ = [
    "BaseUBasisBuilder", "BasisProvenance", "UBasis", "GenericUBasisBuilder",
    "StructuredUBasisBuilder", "basis_property_report", "unit_column_rows",
    "create_u_basis_builder",
]
