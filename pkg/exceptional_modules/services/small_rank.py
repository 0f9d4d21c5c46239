"""
小秩例外模的显式构造

- 正则例外模 S_a^[l]（秩 0，位于第 i 条臂的例外管中）
- 秩一例外模（线丛），由 r_1..r_t 与 n 决定，行列式为 n·c + Σ r_i·x_i
- 不可分解投射模与单模
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, field_validator

from exceptional_modules.services import lattice
from exceptional_modules.services.algebra import CanonicalAlgebra
from exceptional_modules.services.hom_ext import is_exceptional
from exceptional_modules.services.lattice import LElement
from exceptional_modules.services.linalg import Matrix, nullspace_basis
from exceptional_modules.services.representation import Rep, satisfies_relations

logger = logging.getLogger(__name__)


class RegularSpec(BaseModel):
    """S_a^[l]：臂 arm，位置 a (1 ≤ a ≤ p_i)，拟长度 l (1 ≤ l < p_i)"""
    arm: int
    a: int
    l: int

    class Config:
        frozen = True

    @field_validator("arm", "a", "l")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"参数必须为正整数: {value}")
        return value

    def case(self, weight: int) -> int:
        """所属情形：1 (窗口在臂内部)、2 (窗口绕过 c)、3 (a = p_i)"""
        if self.a == weight:
            return 3
        if self.l <= weight - self.a:
            return 1
        return 2

    def __str__(self) -> str:
        return f"S_{self.a}^[{self.l}] (arm {self.arm})"


class RankOneSpec(BaseModel):
    """秩一模：r_i ∈ [0, p_i)，n ≥ 0"""
    r: Tuple[int, ...]
    n: int = 0

    class Config:
        frozen = True

    @field_validator("r")
    @classmethod
    def _check_r(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(x < 0 for x in value):
            raise ValueError(f"r_i 必须非负: {value}")
        return value

    @field_validator("n")
    @classmethod
    def _check_n(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f"n 必须非负: {value}")
        return value

    def __str__(self) -> str:
        return f"O(r={','.join(map(str, self.r))}, n={self.n})"


# ---- 初等矩阵 ----

def matrix_X(n: int, k: int) -> Matrix:
    """(n+k) x n，上方为单位块"""
    if n < 0 or k < 0:
        raise ValueError(f"尺寸必须非负: n={n}, k={k}")
    return Matrix(n + k, n, {i: {i: Fraction(1)} for i in range(n)})


def matrix_Y(n: int, k: int) -> Matrix:
    """(n+k) x n，下方为单位块"""
    if n < 0 or k < 0:
        raise ValueError(f"尺寸必须非负: n={n}, k={k}")
    return Matrix(n + k, n, {k + i: {i: Fraction(1)} for i in range(n)})


def lower_bidiagonal(rows: int, cols: int, below: Fraction) -> Matrix:
    """对角线为 1、次对角线为 below 的矩阵"""
    entries: Dict[int, Dict[int, Fraction]] = {}
    for j in range(cols):
        if j < rows:
            entries.setdefault(j, {})[j] = Fraction(1)
        if j + 1 < rows and below:
            entries.setdefault(j + 1, {})[j] = below
    return Matrix(rows, cols, entries)


# ---- 正则例外模 ----

def _scalar_rep(alg: CanonicalAlgebra, dims: Sequence[int], scalars: Dict[Tuple[int, int], Fraction]) -> Rep:
    """维数只有 0 和 1 的表示；1x1 箭头默认取 1"""
    mats = []
    for arrow in alg.arrows:
        ds, dt = dims[arrow.source], dims[arrow.target]
        if ds == 1 and dt == 1:
            value = scalars.get((arrow.arm, arrow.index), Fraction(1))
            mats.append(Matrix(1, 1, {0: {0: value}}))
        else:
            mats.append(Matrix(ds, dt))
    return Rep(alg, dims, mats)


def _check_regular(alg: CanonicalAlgebra, spec: RegularSpec) -> int:
    if spec.arm > alg.t:
        raise ValueError(f"臂下标越界: {spec.arm} (共 {alg.t} 条臂)")
    w = alg.weight(spec.arm)
    if spec.a > w:
        raise ValueError(f"位置 a = {spec.a} 超出 p_{spec.arm} = {w}")
    if spec.l >= w:
        raise ValueError(f"拟长度 l = {spec.l} ≥ p_{spec.arm} = {w}，模不是例外的")
    return w


def first_arrow_scalars(alg: CanonicalAlgebra, arm: int) -> Dict[int, Fraction]:
    """臂 arm 上的路径为零时，由典范关系解出其余各臂首箭头上的系数

    未知量 c_m (m ≠ arm)，自由变量放在最后并取 1：
    arm ≠ 2 时自由变量为 c_2，arm = 2 时为 c_1。
    """
    unknown_arms = [m for m in range(1, alg.t + 1) if m != arm]
    free = 1 if arm == 2 else 2
    unknown_arms.remove(free)
    unknown_arms.append(free)
    position = {m: k for k, m in enumerate(unknown_arms)}

    rows = []
    for rel in alg.relations():
        row = [Fraction(0)] * len(unknown_arms)
        for m, coeff in ((rel.arm, Fraction(1)), (1, Fraction(-1)), (2, -rel.lam)):
            if m in position:
                row[position[m]] += coeff
        rows.append(row)
    system = Matrix.from_rows(rows, len(unknown_arms))
    basis = nullspace_basis(system)
    if len(basis) != 1 or basis[0][position[free], 0] != 1:
        raise RuntimeError(f"首箭头系数不唯一 (臂 {arm}，解空间维数 {len(basis)})")
    return {m: basis[0][position[m], 0] for m in unknown_arms}


def formula_first_arrow_scalars(alg: CanonicalAlgebra, arm: int) -> Dict[int, Fraction]:
    """arm ≥ 3 时的显式系数：−λ_i, 1, λ_m − λ_i"""
    if arm < 3:
        raise ValueError(f"显式系数只对臂 i ≥ 3 给出: {arm}")
    lam_i = alg.lam(arm)
    scalars = {1: -lam_i, 2: Fraction(1)}
    for m in range(3, alg.t + 1):
        if m != arm:
            scalars[m] = alg.lam(m) - lam_i
    return scalars


def regular_dims(alg: CanonicalAlgebra, spec: RegularSpec) -> List[int]:
    w = _check_regular(alg, spec)
    i, a, l = spec.arm, spec.a, spec.l
    dims = [0] * len(alg.vertices)
    case = spec.case(w)
    if case == 1:
        for step in range(a, a + l):
            dims[alg.arm_vertex(i, step)] = 1
        return dims

    s = l - (w - a) if case == 2 else l
    dims = [1] * len(alg.vertices)
    for step in range(s, a):
        dims[alg.arm_vertex(i, step)] = 0
    return dims


def regular_exceptional(alg: CanonicalAlgebra, spec: RegularSpec) -> Rep:
    """构造 S_a^[l]

    臂 i ≥ 3 的首箭头系数取显式公式；臂 1、2 的系数由关系求解，构造后逐个验证例外性。
    """
    w = _check_regular(alg, spec)
    case = spec.case(w)
    dims = regular_dims(alg, spec)
    scalars: Dict[Tuple[int, int], Fraction] = {}
    if case in (2, 3):
        if spec.arm >= 3:
            first = formula_first_arrow_scalars(alg, spec.arm)
        else:
            first = first_arrow_scalars(alg, spec.arm)
        scalars = {(m, 1): value for m, value in first.items()}
    m = _scalar_rep(alg, dims, scalars)

    if case in (2, 3) and spec.arm < 3:
        if not (satisfies_relations(m) and is_exceptional(m)):
            raise RuntimeError(f"{spec}: 由关系解出的首箭头系数没有给出例外模")
        logger.debug(f"{spec} 已验证为例外模")
    if case == 1 and spec.l == w - spec.a and not is_exceptional(m):
        raise ValueError(f"{spec} 位于情形分界 l = p_i − a，构造结果不是例外模")
    logger.debug(f"已构造 {spec}，情形 {case}，维数 {dims}")
    return m


def regular_case(alg: CanonicalAlgebra, spec: RegularSpec) -> int:
    return spec.case(_check_regular(alg, spec))


def tube_simple(alg: CanonicalAlgebra, arm: int, a: int) -> Rep:
    """管中单模 S_a^[1]，a 按 p_i 取模，取值 1..p_i"""
    w = alg.weight(arm)
    a = (a - 1) % w + 1
    return regular_exceptional(alg, RegularSpec(arm=arm, a=a, l=1))


# ---- 秩一模 ----

def _check_rank_one(alg: CanonicalAlgebra, spec: RankOneSpec):
    if len(spec.r) != alg.t:
        raise ValueError(f"r 的长度 {len(spec.r)} 与臂数 {alg.t} 不一致")
    for i, (ri, w) in enumerate(zip(spec.r, alg.p), start=1):
        if ri >= w:
            raise ValueError(f"r_{i} = {ri} 超出范围 [0, {w})")


def rank_one_dims(alg: CanonicalAlgebra, spec: RankOneSpec) -> List[int]:
    _check_rank_one(alg, spec)
    dims = [spec.n] * len(alg.vertices)
    dims[0] = spec.n + 1
    for i, ri in enumerate(spec.r, start=1):
        for step in range(1, ri + 1):
            dims[alg.arm_vertex(i, step)] = spec.n + 1
    return dims


def rank_one(alg: CanonicalAlgebra, spec: RankOneSpec) -> Rep:
    """秩一例外模

    臂 i 上 α_s (s ≤ r_i) 为 I_{n+1}，α_{r_i+1} 把维数降为 n，其后为 I_n。
    α_{r_i+1} 在臂 1 上为 X_{n+1,n}，臂 2 上为 Y_{n+1,n}；
    臂 i ≥ 3 上 r_i = 0 时为 X + λ_i·Y，r_i > 0 时为 X 且 α_1 取下双对角阵。
    """
    dims = rank_one_dims(alg, spec)
    n = spec.n
    mats = []
    for arrow in alg.arrows:
        i, j = arrow.arm, arrow.index
        ri = spec.r[i - 1]
        if j <= ri:
            if i >= 3 and j == 1:
                mats.append(lower_bidiagonal(n + 1, n + 1, alg.lam(i)))
            else:
                mats.append(Matrix.identity(n + 1))
        elif j == ri + 1:
            if i == 1:
                mats.append(matrix_X(n, 1))
            elif i == 2:
                mats.append(matrix_Y(n, 1))
            elif ri == 0:
                mats.append(lower_bidiagonal(n + 1, n, alg.lam(i)))
            else:
                mats.append(matrix_X(n, 1))
        else:
            mats.append(Matrix.identity(n))
    m = Rep(alg, dims, mats)
    logger.debug(f"已构造秩一模 {spec}")
    return m


def rank_one_determinant(alg: CanonicalAlgebra, spec: RankOneSpec) -> LElement:
    """det = n·c + Σ r_i·x_i"""
    _check_rank_one(alg, spec)
    return lattice.normal_form(spec.n, spec.r, alg.p)


def rank_one_from_determinant(alg: CanonicalAlgebra, d: LElement) -> Rep:
    if d.p != alg.p:
        raise ValueError(f"行列式的权重 {d.p} 与代数 {alg.p} 不一致")
    if not lattice.is_module_determinant(d):
        raise ValueError(f"行列式 {d} 的 c 系数为负，对应的线丛不是 Λ-模")
    return rank_one(alg, RankOneSpec(r=d.coeffs, n=d.a))


# ---- 投射模与单模 ----

def projective(alg: CanonicalAlgebra, vertex: int) -> Rep:
    """不可分解投射模 P(v)：P(0) = O, P(j·x_i) = O(j·x_i), P(c) = O(c)"""
    if not 0 <= vertex < len(alg.vertices):
        raise ValueError(f"顶点下标越界: {vertex}")
    r = [0] * alg.t
    if vertex == alg.sink_vertex:
        return rank_one(alg, RankOneSpec(r=tuple(r), n=1))
    if vertex != alg.zero_vertex:
        arm, step = _arm_step(alg, vertex)
        r[arm - 1] = step
    return rank_one(alg, RankOneSpec(r=tuple(r), n=0))


def _arm_step(alg: CanonicalAlgebra, vertex: int) -> Tuple[int, int]:
    label = alg.vertices[vertex]
    _, arm, step = label.split("_")
    return int(arm), int(step)


def simple_module(alg: CanonicalAlgebra, vertex: int) -> Rep:
    """顶点 v 上的单模"""
    if not 0 <= vertex < len(alg.vertices):
        raise ValueError(f"顶点下标越界: {vertex}")
    if vertex == alg.zero_vertex:
        return rank_one(alg, RankOneSpec(r=(0,) * alg.t, n=0))
    if vertex == alg.sink_vertex:
        dims = [0] * len(alg.vertices)
        dims[vertex] = 1
        return _scalar_rep(alg, dims, {})
    arm, step = _arm_step(alg, vertex)
    return regular_exceptional(alg, RegularSpec(arm=arm, a=step, l=1))


# ---- 模池 ----

def regular_specs(alg: CanonicalAlgebra, max_l: Optional[int] = None) -> List[RegularSpec]:
    specs = []
    for i, w in enumerate(alg.p, start=1):
        top = w - 1 if max_l is None else min(w - 1, max_l)
        for a in range(1, w + 1):
            for l in range(1, top + 1):
                specs.append(RegularSpec(arm=i, a=a, l=l))
    return specs


def rank_one_specs(alg: CanonicalAlgebra, max_n: int = 0) -> List[RankOneSpec]:
    specs = [RankOneSpec(r=(), n=0)]
    for w in alg.p:
        specs = [RankOneSpec(r=s.r + (ri,), n=0) for s in specs for ri in range(w)]
    return [RankOneSpec(r=s.r, n=n) for n in range(max_n + 1) for s in specs]


def regular_pool(alg: CanonicalAlgebra, max_l: Optional[int] = None) -> List[Rep]:
    return [regular_exceptional(alg, s) for s in regular_specs(alg, max_l)]


def rank_one_pool(alg: CanonicalAlgebra, max_n: int = 0) -> List[Rep]:
    return [rank_one(alg, s) for s in rank_one_specs(alg, max_n)]


__all__ = [
    "RegularSpec", "RankOneSpec", "matrix_X", "matrix_Y", "lower_bidiagonal",
    "first_arrow_scalars", "formula_first_arrow_scalars", "regular_dims", "regular_exceptional",
    "regular_case", "tube_simple", "rank_one_dims", "rank_one", "rank_one_determinant",
    "rank_one_from_determinant", "projective", "simple_module", "regular_specs",
    "rank_one_specs", "regular_pool", "rank_one_pool",
]
