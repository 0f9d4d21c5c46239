"""
典范代数 Λ(p, λ) 的箭图结构

顶点顺序: 0, 第 1 条臂 (x_1_1 .. x_1_{p_1-1}), ..., 第 t 条臂, c。
箭头 α_j^(i): (j−1)x_i → j·x_i，j = 1 时起点为 0，j = p_i 时终点为 c。
"""
import logging
from fractions import Fraction
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from exceptional_modules.services.lattice import WeightSequence, WeightsLike, as_weights
from exceptional_modules.services.linalg import ScalarLike, format_scalar, to_scalar

logger = logging.getLogger(__name__)

ZERO_LABEL = "v0"
SINK_LABEL = "vc"


class Arrow(NamedTuple):
    arm: int
    index: int
    source: int
    target: int

    @property
    def label(self) -> str:
        return arrow_label(self.arm, self.index)


class ArmPath(NamedTuple):
    """ω_{u,v}^(i) = α_v ∘ … ∘ α_u，从 (u−1)x_i 到 v·x_i"""
    arm: int
    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


class Relation(NamedTuple):
    """α_{p_i}…α_1 (臂 i) = 臂 1 全路径 + λ_i · 臂 2 全路径"""
    arm: int
    arm_path: ArmPath
    arm1_path: ArmPath
    arm2_path: ArmPath
    lam: Fraction


def vertex_label(arm: int, step: int) -> str:
    return f"x_{arm}_{step}"


def arrow_label(arm: int, index: int) -> str:
    return f"alpha_{arm}_{index}"


def default_lambdas(t: int) -> Tuple[Fraction, ...]:
    """规范化参数 λ_2 = 0, λ_3 = 1, λ_m = m − 2"""
    if t < 2:
        raise ValueError(f"臂数至少为 2: {t}")
    return tuple(Fraction(m - 2) for m in range(2, t + 1))


class CanonicalAlgebra:
    """典范代数：顶点、箭头、臂路径与典范关系"""

    def __init__(self, weights: WeightSequence, lambdas: Tuple[Fraction, ...]):
        self.weights = weights
        self.lambdas = lambdas
        self.vertices: List[str] = [ZERO_LABEL]
        for i, w in enumerate(weights.p, start=1):
            self.vertices.extend(vertex_label(i, j) for j in range(1, w))
        self.vertices.append(SINK_LABEL)
        self.vertex_index: Dict[str, int] = {v: k for k, v in enumerate(self.vertices)}

        self.arrows: List[Arrow] = []
        for i, w in enumerate(weights.p, start=1):
            for j in range(1, w + 1):
                self.arrows.append(Arrow(i, j, self.arm_vertex(i, j - 1), self.arm_vertex(i, j)))
        self.arrow_index: Dict[Tuple[int, int], int] = {
            (a.arm, a.index): k for k, a in enumerate(self.arrows)
        }
        self.arrow_by_label: Dict[str, int] = {a.label: k for k, a in enumerate(self.arrows)}

    # ---- 基本属性 ----

    @property
    def p(self) -> Tuple[int, ...]:
        return self.weights.p

    @property
    def t(self) -> int:
        return self.weights.t

    @property
    def zero_vertex(self) -> int:
        return 0

    @property
    def sink_vertex(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_normalized(self) -> bool:
        if self.lambdas[0] != 0:
            return False
        return self.t < 3 or self.lambdas[1] == 1

    def lam(self, i: int) -> Fraction:
        """λ_i，i ≥ 2"""
        if not 2 <= i <= self.t:
            raise ValueError(f"参数下标越界: λ_{i}")
        return self.lambdas[i - 2]

    def weight(self, i: int) -> int:
        if not 1 <= i <= self.t:
            raise ValueError(f"臂下标越界: {i} (共 {self.t} 条臂)")
        return self.p[i - 1]

    def arm_vertex(self, arm: int, step: int) -> int:
        """臂 arm 上的顶点 step·x_arm，0 与 p_arm 分别对应 0 与 c"""
        w = self.weight(arm)
        if step == 0:
            return 0
        if step == w:
            return len(self.vertices) - 1
        if not 0 < step < w:
            raise ValueError(f"顶点 {step}·x_{arm} 不存在 (p_{arm} = {w})")
        return self.vertex_index[vertex_label(arm, step)]

    def arrow(self, arm: int, index: int) -> int:
        key = (arm, index)
        if key not in self.arrow_index:
            raise ValueError(f"箭头 α_{index}^({arm}) 不存在")
        return self.arrow_index[key]

    def arm_arrows(self, arm: int) -> List[int]:
        return [self.arrow(arm, j) for j in range(1, self.weight(arm) + 1)]

    def path(self, arm: int, start: int, end: int) -> ArmPath:
        w = self.weight(arm)
        if start > end:
            raise ValueError(f"路径起点 {start} 大于终点 {end}")
        if start < 1 or end > w:
            raise ValueError(f"路径 ω_{{{start},{end}}}^({arm}) 超出臂长 {w}")
        return ArmPath(arm, start, end)

    def full_path(self, arm: int) -> ArmPath:
        return ArmPath(arm, 1, self.weight(arm))

    def path_arrows(self, pth: ArmPath) -> List[int]:
        return [self.arrow(pth.arm, j) for j in range(pth.start, pth.end + 1)]

    def path_source(self, pth: ArmPath) -> int:
        return self.arm_vertex(pth.arm, pth.start - 1)

    def path_target(self, pth: ArmPath) -> int:
        return self.arm_vertex(pth.arm, pth.end)

    def relations(self) -> List[Relation]:
        return [
            Relation(i, self.full_path(i), self.full_path(1), self.full_path(2), self.lam(i))
            for i in range(3, self.t + 1)
        ]

    def coefficient_set(self) -> FrozenSet[Fraction]:
        """D(λ) = {λ_a − λ_b : 2 ≤ a, b ≤ t}"""
        return frozenset(x - y for x in self.lambdas for y in self.lambdas)

    def descriptor(self) -> Dict[str, list]:
        return {"weights": list(self.p), "lambdas": [format_scalar(x) for x in self.lambdas]}

    def same_as(self, other: "CanonicalAlgebra") -> bool:
        return self.p == other.p and self.lambdas == other.lambdas

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalAlgebra):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self) -> int:
        return hash((self.p, self.lambdas))

    def __repr__(self) -> str:
        lams = ",".join(format_scalar(x) for x in self.lambdas)
        return f"CanonicalAlgebra(p={self.p}, lambdas=({lams}))"


def build(p: WeightsLike, lambdas: Optional[Sequence[ScalarLike]] = None) -> CanonicalAlgebra:
    """构造 Λ(p, λ)；lambdas 为 λ_2..λ_t，省略时使用规范化参数"""
    weights = as_weights(p)
    if lambdas is None:
        values = default_lambdas(weights.t)
    else:
        values = tuple(to_scalar(x) for x in lambdas)
    if len(values) != weights.t - 1:
        raise ValueError(f"参数个数应为 t−1 = {weights.t - 1}，实际为 {len(values)}")
    if len(set(values)) != len(values):
        raise ValueError(f"参数 λ 必须两两不同: {[format_scalar(x) for x in values]}")
    alg = CanonicalAlgebra(weights, values)
    if not alg.is_normalized:
        logger.warning(f"参数未规范化 (λ_2 = 0, λ_3 = 1)，系数审计按字面集合进行: {alg!r}")
    logger.debug(f"典范代数已构造: {alg!r}，{len(alg.vertices)} 个顶点，{len(alg.arrows)} 条箭头")
    return alg


def from_descriptor(data: Dict[str, list]) -> CanonicalAlgebra:
    try:
        weights = data["weights"]
        lambdas = data.get("lambdas")
    except (KeyError, TypeError) as e:
        raise ValueError(f"代数描述缺少字段: {e}") from e
    return build(weights, lambdas)


__all__ = [
    "Arrow", "ArmPath", "Relation", "CanonicalAlgebra", "build", "from_descriptor",
    "default_lambdas", "vertex_label", "arrow_label", "ZERO_LABEL", "SINK_LABEL",
]
