"""
Hom 与 Ext¹ 的线性模型

C⁰(X,Y) = ⊕_v Hom(X_v, Y_v)，C¹(X,Y) = ⊕_{α: x→y} Hom(X_y, Y_x)，
δ(f)_α = f_x·X_α − Y_α·f_y。Hom = ker δ，Ext¹ = U(X,Y) / im δ，
其中 U(X,Y) ⊆ C¹ 由中间项满足典范关系这一条件给出。
所有块按顶点/箭头的规范顺序拼接，块内按行展开。
"""
import logging
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from exceptional_modules.models.reports import CheckType, PairReport, Report
from exceptional_modules.services.algebra import CanonicalAlgebra
from exceptional_modules.services.linalg import (
    Matrix, hstack, kron, matmul, nullspace_basis, rank, rref, unvec, vstack,
)
from exceptional_modules.services.representation import (
    Rep, arm_prefix, arm_suffix, satisfies_relations,
)

logger = logging.getLogger(__name__)


def _check_pair(x: Rep, y: Rep):
    if x.algebra != y.algebra:
        raise ValueError(f"代数不一致: {x.algebra!r} 与 {y.algebra!r}")


class ExtModel:
    """一对模 (X, Y) 的 δ-模型，构造后不再改变"""

    def __init__(self, x: Rep, y: Rep):
        _check_pair(x, y)
        self.x = x
        self.y = y
        self.algebra: CanonicalAlgebra = x.algebra

        self.c0_blocks: List[Tuple[int, int]] = [(dy, dx) for dx, dy in zip(x.dims, y.dims)]
        self.c0_offsets = self._offsets(self.c0_blocks)
        self.c1_blocks: List[Tuple[int, int]] = [
            (y.dims[a.source], x.dims[a.target]) for a in self.algebra.arrows
        ]
        self.c1_offsets = self._offsets(self.c1_blocks)

    @staticmethod
    def _offsets(blocks: Sequence[Tuple[int, int]]) -> List[int]:
        offsets, pos = [], 0
        for r, c in blocks:
            offsets.append(pos)
            pos += r * c
        offsets.append(pos)
        return offsets

    @property
    def c0_dim(self) -> int:
        return self.c0_offsets[-1]

    @property
    def c1_dim(self) -> int:
        return self.c1_offsets[-1]

    # ---- 矩阵 ----

    @cached_property
    def delta(self) -> Matrix:
        """δ 的坐标矩阵，尺寸 dim C¹ x dim C⁰"""
        x, y = self.x, self.y
        grid = []
        for k, arrow in enumerate(self.algebra.arrows):
            s, tgt = arrow.source, arrow.target
            row = []
            for v in range(len(self.algebra.vertices)):
                part = Matrix(self.c1_dim_of(k), self.c0_dim_of(v))
                if v == s:
                    part = part + kron(Matrix.identity(y.dims[s]), x.mats[k].T)
                if v == tgt:
                    part = part - kron(y.mats[k], Matrix.identity(x.dims[tgt]))
                row.append(part)
            grid.append(hstack(row, self.c1_dim_of(k)))
        matrix = vstack(grid, self.c0_dim)
        logger.debug(f"δ 尺寸 {matrix.shape}")
        return matrix

    def c0_dim_of(self, vertex: int) -> int:
        r, c = self.c0_blocks[vertex]
        return r * c

    def c1_dim_of(self, arrow: int) -> int:
        r, c = self.c1_blocks[arrow]
        return r * c

    def relation_block(self, arm: int, index: int) -> Matrix:
        """φ_{α_index} ↦ Y_{ω_{1,index−1}} · φ · X_{ω_{index+1,p}} 的坐标矩阵"""
        prefix = arm_prefix(self.y, arm, index - 1)
        suffix = arm_suffix(self.x, arm, index + 1)
        return kron(prefix, suffix.T)

    def arm_sum_matrix(self, arm: int) -> Matrix:
        """P_arm: C¹ → Hom(X_c, Y_0)，中间项沿臂 arm 的全路径矩阵右上块"""
        rows = self.y.dims[0] * self.x.dims[-1]
        parts = [Matrix(rows, self.c1_dim_of(k)) for k in range(len(self.algebra.arrows))]
        for j in range(1, self.algebra.weight(arm) + 1):
            parts[self.algebra.arrow(arm, j)] = self.relation_block(arm, j)
        return hstack(parts, rows)

    @cached_property
    def u_constraint(self) -> Matrix:
        """核为 U(X,Y) 的矩阵：每个关系 i 给出 P_i − P_1 − λ_i·P_2 = 0"""
        alg = self.algebra
        relations = alg.relations()
        if not relations:
            return Matrix(0, self.c1_dim)
        p1 = self.arm_sum_matrix(1)
        p2 = self.arm_sum_matrix(2)
        rows = [self.arm_sum_matrix(rel.arm) - p1 - p2.scale(rel.lam) for rel in relations]
        return vstack(rows, self.c1_dim)

    # ---- 基 ----

    @cached_property
    def hom_vectors(self) -> List[Matrix]:
        if self.c0_dim == 0:
            return []
        return nullspace_basis(self.delta)

    @cached_property
    def u_basis(self) -> List[Matrix]:
        if self.c1_dim == 0:
            return []
        if self.u_constraint.rows == 0:
            return [Matrix.unit(self.c1_dim, k) for k in range(self.c1_dim)]
        return nullspace_basis(self.u_constraint)

    @cached_property
    def delta_rank(self) -> int:
        return rank(self.delta)

    def image_in_u(self) -> bool:
        """im δ ⊆ U(X,Y)"""
        if self.u_constraint.rows == 0 or self.c0_dim == 0:
            return True
        return matmul(self.u_constraint, self.delta).is_zero()

    @cached_property
    def ext_cocycles(self) -> List[Matrix]:
        """U 中模 im δ 的代表元：hstack(δ, U 基) 行最简形中 δ 之后的主元列"""
        if not self.image_in_u():
            raise ValueError("im δ 不包含于 U(X,Y)，输入表示可能不满足典范关系")
        basis = self.u_basis
        if not basis:
            return []
        combined = hstack([self.delta] + basis, self.c1_dim)
        _, pivots = rref(combined)
        offset = self.c0_dim
        return [basis[p - offset] for p in pivots if p >= offset]

    @property
    def hom_dim(self) -> int:
        return self.c0_dim - self.delta_rank

    @property
    def ext_dim(self) -> int:
        if not self.image_in_u():
            raise ValueError("im δ 不包含于 U(X,Y)，输入表示可能不满足典范关系")
        return len(self.u_basis) - self.delta_rank

    # ---- 坐标转换 ----

    def c0_families(self, vector: Matrix) -> List[Matrix]:
        return [
            unvec(vector.submatrix(range(self.c0_offsets[v], self.c0_offsets[v + 1]), [0]), r, c)
            for v, (r, c) in enumerate(self.c0_blocks)
        ]

    def c1_families(self, vector: Matrix) -> List[Matrix]:
        if vector.shape != (self.c1_dim, 1):
            raise ValueError(f"C¹ 向量尺寸应为 ({self.c1_dim}, 1)，实际为 {vector.shape}")
        return [
            unvec(vector.submatrix(range(self.c1_offsets[k], self.c1_offsets[k + 1]), [0]), r, c)
            for k, (r, c) in enumerate(self.c1_blocks)
        ]

    def c1_vector(self, families: Sequence[Matrix]) -> Matrix:
        if len(families) != len(self.c1_blocks):
            raise ValueError(f"箭头矩阵族长度应为 {len(self.c1_blocks)}，实际为 {len(families)}")
        for k, (f, shape) in enumerate(zip(families, self.c1_blocks)):
            if f.shape != shape:
                raise ValueError(f"{self.algebra.arrows[k].label} 分量尺寸应为 {shape}，实际为 {f.shape}")
        return vstack([f.vec() for f in families], 1) if families else Matrix(0, 1)

    def in_u(self, vector: Matrix) -> bool:
        if self.u_constraint.rows == 0:
            return True
        return matmul(self.u_constraint, vector).is_zero()


def ext_model(x: Rep, y: Rep) -> ExtModel:
    return ExtModel(x, y)


def delta_matrix(x: Rep, y: Rep) -> Matrix:
    return ExtModel(x, y).delta


def u_subspace_basis(x: Rep, y: Rep) -> List[Matrix]:
    return ExtModel(x, y).u_basis


def hom_dim(x: Rep, y: Rep) -> int:
    return ExtModel(x, y).hom_dim


def hom_basis(x: Rep, y: Rep) -> List[List[Matrix]]:
    """Hom(X,Y) 的基，每个元素是顶点族 f_v: X_v → Y_v"""
    model = ExtModel(x, y)
    return [model.c0_families(v) for v in model.hom_vectors]


def ext_dim(x: Rep, y: Rep) -> int:
    model = ExtModel(x, y)
    result = model.ext_dim
    logger.debug(f"dim Ext({x!r}, {y!r}) = {result}")
    return result


def ext_cocycles(x: Rep, y: Rep) -> List[Matrix]:
    return ExtModel(x, y).ext_cocycles


def ext_tensor_dim(x: Rep, y: Rep, u: int, v: int) -> int:
    """dim Ext(X⊗k^u, Y⊗k^v) = u·v·dim Ext(X,Y)"""
    if u < 0 or v < 0:
        raise ValueError(f"重数必须非负: u={u}, v={v}")
    if u == 0 or v == 0:
        return 0
    return u * v * ext_dim(x, y)


def c1_families(x: Rep, y: Rep, vector: Matrix) -> List[Matrix]:
    return ExtModel(x, y).c1_families(vector)


def c1_vector(x: Rep, y: Rep, families: Sequence[Matrix]) -> Matrix:
    return ExtModel(x, y).c1_vector(families)


def in_u_subspace(x: Rep, y: Rep, vector: Matrix) -> bool:
    return ExtModel(x, y).in_u(vector)


def is_exceptional(m: Rep) -> bool:
    """End(M) = k 且 Ext(M,M) = 0"""
    if not satisfies_relations(m):
        raise ValueError(f"表示 {m!r} 不满足典范关系")
    model = ExtModel(m, m)
    return model.hom_dim == 1 and model.ext_dim == 0


def is_orthogonal_exceptional_pair(x: Rep, y: Rep) -> PairReport:
    """逐项检查 (X, Y) 是否为正交例外对；report.passed 即结论"""
    _check_pair(x, y)
    report = PairReport(subject="orthogonal_pair")
    for name, m in (("X", x), ("Y", y)):
        if not satisfies_relations(m):
            report.add(f"relations_{name}", CheckType.RELATION, False, f"{name} 不满足典范关系")
    if not report.passed:
        return report

    xx, yy = ExtModel(x, x), ExtModel(y, y)
    xy, yx = ExtModel(x, y), ExtModel(y, x)
    for name, model in (("X", xx), ("Y", yy)):
        h, e = model.hom_dim, model.ext_dim
        report.add(
            f"exceptional_{name}", CheckType.EXCEPTIONAL, h == 1 and e == 0,
            f"dim End({name}) = {h}, dim Ext({name},{name}) = {e}",
        )
    report.hom_yx = yx.hom_dim
    report.ext_yx = yx.ext_dim
    report.hom_xy = xy.hom_dim
    report.ext_dim = xy.ext_dim
    report.add("hom_yx", CheckType.ORTHOGONALITY, report.hom_yx == 0, f"dim Hom(Y,X) = {report.hom_yx}")
    report.add("ext_yx", CheckType.ORTHOGONALITY, report.ext_yx == 0, f"dim Ext(Y,X) = {report.ext_yx}")
    report.add("hom_xy", CheckType.ORTHOGONALITY, report.hom_xy == 0, f"dim Hom(X,Y) = {report.hom_xy}")
    return report


def extension_middle_term(x: Rep, y: Rep, cocycle: Matrix) -> Rep:
    """0 → Y → M → X → 0，M_α = [[Y_α, φ_α], [0, X_α]]"""
    model = ExtModel(x, y)
    families = model.c1_families(cocycle)
    if not model.in_u(cocycle):
        raise ValueError("上闭链不在 U(X,Y) 中，中间项不满足典范关系")
    alg = x.algebra
    dims = [dy + dx for dx, dy in zip(x.dims, y.dims)]
    mats = []
    for k, arrow in enumerate(alg.arrows):
        zero = Matrix(x.dims[arrow.source], y.dims[arrow.target])
        top = hstack([y.mats[k], families[k]], y.dims[arrow.source])
        bottom = hstack([zero, x.mats[k]], x.dims[arrow.source])
        mats.append(vstack([top, bottom], dims[arrow.target]))
    return Rep(alg, dims, mats)


def euler_form(dx: Sequence[int], dy: Sequence[int], alg: CanonicalAlgebra) -> int:
    """⟨x, y⟩ = Σ_v x_v·y_v − Σ_{α: i→j} x_j·y_i + (t−2)·x_c·y_0

    定向由投射模校准：⟨dim P_v, dim N⟩ = dim N_v。
    """
    n = len(alg.vertices)
    if len(dx) != n or len(dy) != n:
        raise ValueError(f"维数向量长度应为 {n}: {len(dx)}, {len(dy)}")
    value = sum(a * b for a, b in zip(dx, dy))
    value -= sum(dx[a.target] * dy[a.source] for a in alg.arrows)
    value += (alg.t - 2) * dx[-1] * dy[0]
    return value


def euler_report(x: Rep, y: Rep) -> Report:
    """hom − ext 与 Euler 型的比较，只报告不断言"""
    model = ExtModel(x, y)
    h, e = model.hom_dim, model.ext_dim
    form = euler_form(x.dims, y.dims, x.algebra)
    report = Report(subject="euler_form")
    report.add(
        "euler_form", CheckType.ADDITIVITY, h - e == form,
        f"hom − ext = {h} − {e}，Euler 型 = {form}",
    )
    return report


__all__ = [
    "ExtModel", "ext_model", "delta_matrix", "u_subspace_basis", "hom_dim", "hom_basis",
    "ext_dim", "ext_cocycles", "ext_tensor_dim", "c1_families", "c1_vector", "in_u_subspace",
    "is_exceptional", "is_orthogonal_exceptional_pair", "extension_middle_term",
    "euler_form", "euler_report",
]
