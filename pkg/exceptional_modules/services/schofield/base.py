from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from exceptional_modules.models.reports import Report
from exceptional_modules.services.hom_ext import ExtModel
from exceptional_modules.services.linalg import Matrix
from exceptional_modules.services.representation import Rep


class BasisProvenance(str, Enum):
    """U(X,Y) 基的来源"""
    STRUCTURED = "structured"  # 显式公式
    GENERIC = "generic"  # 通用求解器


class UBasis(BaseModel):
    """U(X,Y) 的一组基，向量为 C¹ 坐标"""
    x: Rep
    y: Rep
    vectors: List[Matrix] = []
    provenance: BasisProvenance
    # 通用基附带的性质报告
    report: Optional[Report] = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @property
    def size(self) -> int:
        return len(self.vectors)

    def families(self) -> List[List[Matrix]]:
        """每个基向量对应的箭头矩阵族 [f_α]"""
        model = ExtModel(self.x, self.y)
        return [model.c1_families(v) for v in self.vectors]


class BaseUBasisBuilder(ABC):
    """U(X,Y) 基构造器基础抽象类"""

    provenance: BasisProvenance

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}

    @abstractmethod
    def build(self, x: Rep, y: Rep) -> UBasis:
        """
        构造 U(X,Y) 的基

        Args:
            x: 商模 X
            y: 子模 Y

        Returns:
            UBasis: 基向量及来源
        """
        pass

    def supports(self, x: Rep, y: Rep) -> bool:
        """该构造器是否适用于 (X, Y)"""
        return True

    @staticmethod
    def _check_pair(x: Rep, y: Rep):
        if x.algebra != y.algebra:
            raise ValueError(f"代数不一致: {x.algebra!r} 与 {y.algebra!r}")
