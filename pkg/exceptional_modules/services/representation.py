"""
Λ-模的矩阵表示

箭头 α: i → j 对应矩阵 M_α: M_j → M_i，尺寸为 dims[i] x dims[j]。
"""
import logging
from typing import Dict, List, Optional, Sequence

from exceptional_modules.models.reports import CheckType, Report
from exceptional_modules.services.algebra import ArmPath, CanonicalAlgebra
from exceptional_modules.services.linalg import (
    Matrix, block_diag, format_scalar, inverse, kron, matmul, matmul_chain,
)

logger = logging.getLogger(__name__)


def shape_errors(alg: CanonicalAlgebra, dims: Sequence[int], mats: Sequence[Matrix]) -> List[str]:
    """列出与维数向量不一致的箭头矩阵"""
    errors = []
    if len(dims) != len(alg.vertices):
        return [f"维数向量长度 {len(dims)} 与顶点数 {len(alg.vertices)} 不一致"]
    if len(mats) != len(alg.arrows):
        return [f"矩阵个数 {len(mats)} 与箭头数 {len(alg.arrows)} 不一致"]
    for v, d in zip(alg.vertices, dims):
        if d < 0:
            errors.append(f"顶点 {v} 的维数为负: {d}")
    for arrow, m in zip(alg.arrows, mats):
        expected = (dims[arrow.source], dims[arrow.target])
        if m.shape != expected:
            errors.append(f"{arrow.label} 的尺寸为 {m.shape}，应为 {expected}")
    return errors


class Rep:
    """典范代数上的表示：每个顶点一个维数，每条箭头一个精确矩阵"""

    __slots__ = ("algebra", "dims", "mats")

    def __init__(self, algebra: CanonicalAlgebra, dims: Sequence[int], mats: Sequence[Matrix]):
        errors = shape_errors(algebra, dims, mats)
        if errors:
            raise ValueError("表示尺寸不一致: " + "; ".join(errors))
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.mats = tuple(mats)

    def dim(self, vertex: int) -> int:
        return self.dims[vertex]

    def mat(self, arm: int, index: int) -> Matrix:
        return self.mats[self.algebra.arrow(arm, index)]

    def with_matrix(self, arrow: int, matrix: Matrix) -> "Rep":
        mats = list(self.mats)
        mats[arrow] = matrix
        return Rep(self.algebra, self.dims, mats)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rep):
            return NotImplemented
        return self.algebra == other.algebra and self.dims == other.dims and self.mats == other.mats

    def __hash__(self) -> int:
        return hash((self.algebra, self.dims, self.mats))

    def __repr__(self) -> str:
        return f"Rep(dims={self.dims})"


def zero_rep(alg: CanonicalAlgebra) -> Rep:
    dims = [0] * len(alg.vertices)
    return Rep(alg, dims, [Matrix(0, 0) for _ in alg.arrows])


def dimension_vector(m: Rep) -> tuple:
    return m.dims


def path_matrix(m: Rep, pth: ArmPath) -> Matrix:
    """M_ω = M_{α_u} · … · M_{α_v}"""
    alg = m.algebra
    mats = [m.mats[a] for a in alg.path_arrows(pth)]
    return matmul_chain(mats, m.dims[alg.path_source(pth)])


def arm_prefix(m: Rep, arm: int, upto: int) -> Matrix:
    """Y_{ω_{1,upto}}，upto = 0 时为 M_0 上的单位阵"""
    if upto == 0:
        return Matrix.identity(m.dims[0])
    return path_matrix(m, m.algebra.path(arm, 1, upto))


def arm_suffix(m: Rep, arm: int, start: int) -> Matrix:
    """X_{ω_{start,p}}，start = p + 1 时为 M_c 上的单位阵"""
    w = m.algebra.weight(arm)
    if start == w + 1:
        return Matrix.identity(m.dims[-1])
    return path_matrix(m, m.algebra.path(arm, start, w))


def relation_residuals(m: Rep) -> Dict[int, Matrix]:
    """每个关系 i 的残差 M_{arm i} − M_{arm 1} − λ_i·M_{arm 2}"""
    alg = m.algebra
    full = {i: path_matrix(m, alg.full_path(i)) for i in range(1, alg.t + 1)}
    return {
        rel.arm: full[rel.arm] - full[1] - full[2].scale(rel.lam)
        for rel in alg.relations()
    }


def satisfies_relations(m: Rep) -> bool:
    return all(r.is_zero() for r in relation_residuals(m).values())


def check_relations(m: Rep) -> Report:
    """逐个检查典范关系，失败时附带残差矩阵"""
    report = Report(subject="relations")
    for arm, residual in relation_residuals(m).items():
        if residual.is_zero():
            report.add(f"relation_{arm}", CheckType.RELATION, True, f"第 {arm} 个典范关系成立")
        else:
            details = [f"残差[{i},{j}] = {format_scalar(v)}" for i, j, v in residual.items()]
            report.add(
                f"relation_{arm}", CheckType.RELATION, False,
                f"第 {arm} 个典范关系不成立", details=details,
            )
    if not report.passed:
        logger.warning(f"表示 {m!r} 不满足典范关系")
    return report


def rank(m: Rep) -> int:
    """rk M = dim M_0 − dim M_c"""
    return m.dims[0] - m.dims[-1]


def _check_same_algebra(m1: Rep, m2: Rep):
    if m1.algebra != m2.algebra:
        raise ValueError(f"代数不一致: {m1.algebra!r} 与 {m2.algebra!r}")


def direct_sum(m1: Rep, m2: Rep) -> Rep:
    _check_same_algebra(m1, m2)
    dims = [a + b for a, b in zip(m1.dims, m2.dims)]
    mats = [block_diag([a, b]) for a, b in zip(m1.mats, m2.mats)]
    return Rep(m1.algebra, dims, mats)


def tensor_power(m: Rep, u: int) -> Rep:
    """X ⊗ k^u：维数乘以 u，矩阵换成 M_α ⊗ I_u"""
    if u < 0:
        raise ValueError(f"重数必须非负: {u}")
    ident = Matrix.identity(u)
    return Rep(m.algebra, [d * u for d in m.dims], [kron(a, ident) for a in m.mats])


def base_change(m: Rep, g: Sequence[Matrix]) -> Rep:
    """顶点基变换 g_v：α: i → j 变为 g_i · M_α · g_j⁻¹"""
    alg = m.algebra
    if len(g) != len(alg.vertices):
        raise ValueError(f"基变换个数 {len(g)} 与顶点数 {len(alg.vertices)} 不一致")
    for v, (gv, d) in enumerate(zip(g, m.dims)):
        if gv.shape != (d, d):
            raise ValueError(f"顶点 {alg.vertices[v]} 的基变换尺寸为 {gv.shape}，应为 {(d, d)}")
    inverses = [inverse(gv) for gv in g]
    mats = [
        matmul(matmul(g[a.source], mat), inverses[a.target])
        for a, mat in zip(alg.arrows, m.mats)
    ]
    return Rep(alg, m.dims, mats)


def quotient_at_zero_vertex(m: Rep) -> Rep:
    """M / M_0：没有箭头以顶点 0 为靶，M_0 是子模，商模只把顶点 0 上的空间置零"""
    alg = m.algebra
    dims = list(m.dims)
    dims[alg.zero_vertex] = 0
    mats = [
        Matrix(0, mat.cols) if a.source == alg.zero_vertex else mat
        for a, mat in zip(alg.arrows, m.mats)
    ]
    return Rep(alg, dims, mats)


def identity_family(m: Rep) -> List[Matrix]:
    return [Matrix.identity(d) for d in m.dims]


def is_zero(m: Rep) -> bool:
    return m.total_dim == 0


__all__ = [
    "Rep", "shape_errors", "zero_rep", "dimension_vector", "path_matrix", "arm_prefix",
    "arm_suffix", "relation_residuals", "satisfies_relations", "check_relations", "rank",
    "direct_sum", "tensor_power", "base_change", "quotient_at_zero_vertex", "identity_family",
    "is_zero",
]
