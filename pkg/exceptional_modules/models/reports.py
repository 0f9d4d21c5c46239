"""
检查与审计结果模型
"""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel


class CheckType(str, Enum):
    """检查类型枚举"""
    SHAPE = "shape"
    RELATION = "relation"
    COEFFICIENT = "coefficient"
    ACCEPTABILITY = "acceptability"
    EXCEPTIONAL = "exceptional"
    ORTHOGONALITY = "orthogonality"
    ADDITIVITY = "additivity"
    BASIS = "basis"
    KRONECKER = "kronecker"
    SUITE = "suite"


class Severity(str, Enum):
    """严重程度"""
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


class CheckResult(BaseModel):
    """单项检查结果"""
    name: str
    check_type: CheckType
    severity: Severity
    message: str
    is_valid: bool
    details: List[str] = []

    class Config:
        use_enum_values = True


class Report(BaseModel):
    """检查报告：ERROR 级别的检查全部通过时视为通过"""
    subject: str
    results: List[CheckResult] = []

    def add(
        self,
        name: str,
        check_type: CheckType,
        is_valid: bool,
        message: str,
        severity: Severity = Severity.ERROR,
        details: Optional[List[str]] = None,
    ) -> CheckResult:
        result = CheckResult(
            name=name,
            check_type=check_type,
            severity=severity,
            message=message,
            is_valid=is_valid,
            details=details or [],
        )
        self.results.append(result)
        return result

    def extend(self, other: "Report"):
        self.results.extend(other.results)

    @property
    def passed(self) -> bool:
        return all(r.is_valid for r in self.results if r.severity == Severity.ERROR.value)

    @property
    def all_valid(self) -> bool:
        return all(r.is_valid for r in self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.is_valid]

    def get(self, name: str) -> Optional[CheckResult]:
        for r in self.results:
            if r.name == name:
                return r
        return None

    def summary_lines(self) -> List[str]:
        lines = [f"[{self.subject}] {'通过' if self.passed else '失败'}"]
        for r in self.results:
            mark = "ok" if r.is_valid else r.severity
            lines.append(f"  {r.name:<24} {mark:<8} {r.message}")
            lines.extend(f"      {d}" for d in r.details[:10])
        return lines


class PairReport(Report):
    """正交例外对检查报告"""
    ext_dim: int = 0
    hom_xy: int = 0
    hom_yx: int = 0
    ext_yx: int = 0


class SuiteResult(BaseModel):
    """验证套件单项结果"""
    suite: str
    passed: bool
    checked: int = 0
    message: str = ""
    failures: List[str] = []
