"""
L(p) 秩一阿贝尔群的运算

生成元 x_1..x_t, c，关系 p_i·x_i = c。元素一律以正规形 a·c + Σ a_i·x_i (0 ≤ a_i < p_i) 存储。
"""
import logging
import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from pydantic import BaseModel, field_validator

logger = logging.getLogger(__name__)


class WeightSequence(BaseModel):
    """权重序列 p = (p_1, ..., p_t)"""
    p: Tuple[int, ...]

    class Config:
        frozen = True

    @field_validator("p")
    @classmethod
    def _check_weights(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(value) < 2:
            raise ValueError(f"权重个数至少为 2，实际为 {len(value)}")
        for w in value:
            if w < 2:
                raise ValueError(f"权重必须至少为 2: {value}")
        return value

    @property
    def t(self) -> int:
        return len(self.p)

    @property
    def period(self) -> int:
        """lcm(p)"""
        result = 1
        for w in self.p:
            result = result * w // math.gcd(result, w)
        return result


WeightsLike = Union[WeightSequence, Sequence[int]]


def as_weights(p: WeightsLike) -> WeightSequence:
    if isinstance(p, WeightSequence):
        return p
    return WeightSequence(p=tuple(int(w) for w in p))


class LElement(BaseModel):
    """L(p) 中的元素 a·c + Σ a_i·x_i（正规形）"""
    p: Tuple[int, ...]
    a: int
    coeffs: Tuple[int, ...]

    class Config:
        frozen = True

    @field_validator("coeffs")
    @classmethod
    def _check_normal(cls, value: Tuple[int, ...], info) -> Tuple[int, ...]:
        weights = info.data.get("p", ())
        if len(value) != len(weights):
            raise ValueError(f"系数个数 {len(value)} 与权重个数 {len(weights)} 不一致")
        for b, w in zip(value, weights):
            if not 0 <= b < w:
                raise ValueError(f"系数 {value} 不是正规形 (权重 {weights})")
        return value

    def __str__(self) -> str:
        return format_element(self)


def normal_form(a: int, raw_coeffs: Sequence[int], p: WeightsLike) -> LElement:
    """把 a·c + Σ raw_i·x_i 化为正规形"""
    weights = as_weights(p)
    raw_coeffs = list(raw_coeffs)
    if len(raw_coeffs) != weights.t:
        raise ValueError(f"系数个数 {len(raw_coeffs)} 与权重个数 {weights.t} 不一致")
    total = int(a)
    coeffs = []
    for b, w in zip(raw_coeffs, weights.p):
        q, r = divmod(int(b), w)
        total += q
        coeffs.append(r)
    return LElement(p=weights.p, a=total, coeffs=tuple(coeffs))


def zero(p: WeightsLike) -> LElement:
    weights = as_weights(p)
    return LElement(p=weights.p, a=0, coeffs=(0,) * weights.t)


def canonical_element(p: WeightsLike) -> LElement:
    """c"""
    weights = as_weights(p)
    return LElement(p=weights.p, a=1, coeffs=(0,) * weights.t)


def generator(i: int, p: WeightsLike) -> LElement:
    """x_i，i 从 1 开始"""
    weights = as_weights(p)
    if not 1 <= i <= weights.t:
        raise ValueError(f"生成元下标越界: {i}")
    raw = [0] * weights.t
    raw[i - 1] = 1
    return normal_form(0, raw, weights)


def _check_same(e1: LElement, e2: LElement):
    if e1.p != e2.p:
        raise ValueError(f"权重序列不一致: {e1.p} 与 {e2.p}")


def add(e1: LElement, e2: LElement) -> LElement:
    _check_same(e1, e2)
    return normal_form(e1.a + e2.a, [x + y for x, y in zip(e1.coeffs, e2.coeffs)], e1.p)


def neg(e: LElement) -> LElement:
    return normal_form(-e.a, [-x for x in e.coeffs], e.p)


def sub(e1: LElement, e2: LElement) -> LElement:
    return add(e1, neg(e2))


def multiply(e: LElement, n: int) -> LElement:
    return normal_form(n * e.a, [n * x for x in e.coeffs], e.p)


def total(elements: Iterable[LElement], p: WeightsLike) -> LElement:
    result = zero(p)
    for e in elements:
        result = add(result, e)
    return result


def is_nonnegative(e: LElement) -> bool:
    """e ≥ 0 当且仅当正规形中 c 的系数非负"""
    return e.a >= 0


def degree(e: LElement) -> int:
    """δ(e) = a·L + Σ a_i·L/p_i，L = lcm(p)"""
    period = as_weights(e.p).period
    return e.a * period + sum(b * (period // w) for b, w in zip(e.coeffs, e.p))


def dualizing_element(p: WeightsLike) -> LElement:
    """ω = (t−2)c − Σ x_i"""
    weights = as_weights(p)
    return normal_form(weights.t - 2, [-1] * weights.t, weights)


def euler_characteristic(p: WeightsLike) -> Fraction:
    """χ = (2−t) + Σ 1/p_i"""
    weights = as_weights(p)
    return Fraction(2 - weights.t) + sum((Fraction(1, w) for w in weights.p), Fraction(0))


def is_wild(p: WeightsLike) -> bool:
    return euler_characteristic(p) < 0


def tau_det(d: LElement, n: int) -> LElement:
    """d + n·ω，即 τⁿ 作用在行列式上"""
    if n < 0:
        raise ValueError(f"平移次数必须非负: {n}")
    return add(d, multiply(dualizing_element(d.p), n))


def shift_defect(d: LElement, n: int) -> LElement:
    """c + ω − tau_det(d, n)"""
    return sub(add(canonical_element(d.p), dualizing_element(d.p)), tau_det(d, n))


def is_module_determinant(d: LElement) -> bool:
    """行列式为 d 的线丛给出 Λ-模，当且仅当 c + ω − d 不 ≥ 0"""
    return not is_nonnegative(shift_defect(d, 0))


def _check_dets(dets: Sequence[LElement], p: WeightsLike) -> WeightSequence:
    weights = as_weights(p)
    if not dets:
        raise ValueError("行列式列表不能为空")
    for d in dets:
        if d.p != weights.p:
            raise ValueError(f"行列式 {d} 的权重与 {weights.p} 不一致")
    return weights


def translation_bound(dets: Sequence[LElement], p: WeightsLike) -> int:
    """N = max ⌊(1−a_j)(t−2)⌋ + 1"""
    weights = _check_dets(dets, p)
    return max(math.floor(Fraction(1 - d.a) * (weights.t - 2)) + 1 for d in dets)


def sharp_translation_bound(dets: Sequence[LElement], p: WeightsLike) -> int:
    """最小的 N ≥ 0，使得对所有 n > N，c + ω − tau_det(d, n) 都不 ≥ 0

    每经过一个周期 L = lcm(p)，c 的系数下降 −L·χ > 0，
    因此连续 L 个失败之后不会再出现非负元素。
    """
    weights = _check_dets(dets, p)
    if not is_wild(weights):
        raise ValueError(f"权重 {weights.p} 不是野型，平移界不存在")
    period = weights.period
    bound = 0
    for d in dets:
        last, misses, n = 0, 0, 0
        while misses < period:
            if is_nonnegative(shift_defect(d, n)):
                last, misses = n, 0
            else:
                misses += 1
            n += 1
        bound = max(bound, last)
    logger.debug(f"精确平移界: {bound} (权重 {weights.p}, {len(dets)} 个行列式)")
    return bound


def parse_element(text: str, p: WeightsLike) -> LElement:
    """解析 "a;a_1,...,a_t" 并化为正规形"""
    weights = as_weights(p)
    try:
        head, _, tail = text.strip().partition(";")
        a = int(head)
        raw = [int(x) for x in tail.split(",")] if tail.strip() else []
    except ValueError as e:
        raise ValueError(f"无法解析 L(p) 元素: {text!r}") from e
    return normal_form(a, raw, weights)


def format_element(e: LElement) -> str:
    return f"{e.a};" + ",".join(str(b) for b in e.coeffs)


__all__ = [
    "WeightSequence", "LElement", "as_weights", "normal_form", "zero", "canonical_element",
    "generator", "add", "neg", "sub", "multiply", "total", "is_nonnegative", "degree",
    "dualizing_element", "euler_characteristic", "is_wild", "tau_det", "shift_defect",
    "is_module_determinant", "translation_bound", "sharp_translation_bound",
    "parse_element", "format_element",
]
