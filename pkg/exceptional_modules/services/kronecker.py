"""
广义 Kronecker 代数 Θ(n) 的例外表示

表示 V = (v, u, A_1..A_n)，A_m: k^u → k^v 为 v x u 矩阵。
前投射表示由单模 (1, 0) 反复反射得到，所有矩阵元素只取 0 和 1。
"""
import logging
from collections import deque
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from exceptional_modules.core.config import settings
from exceptional_modules.services.linalg import Matrix, hstack, kron, rank, rref, vstack

logger = logging.getLogger(__name__)


class ThetaRep:
    """Θ(n) 的表示：顶点 1 维数 v，顶点 2 维数 u"""

    __slots__ = ("n", "v", "u", "mats")

    def __init__(self, n: int, v: int, u: int, mats: Sequence[Matrix]):
        if n < 0 or v < 0 or u < 0:
            raise ValueError(f"参数必须非负: n={n}, v={v}, u={u}")
        if len(mats) != n:
            raise ValueError(f"矩阵个数 {len(mats)} 与箭头数 {n} 不一致")
        for m, a in enumerate(mats, start=1):
            if a.shape != (v, u):
                raise ValueError(f"A_{m} 的尺寸为 {a.shape}，应为 {(v, u)}")
        self.n = n
        self.v = v
        self.u = u
        self.mats = tuple(mats)

    @property
    def dims(self) -> Tuple[int, int]:
        return (self.v, self.u)

    def is_zero_one(self) -> bool:
        return all(value == 1 for a in self.mats for value in a.nonzero_values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThetaRep):
            return NotImplemented
        return (self.n, self.v, self.u, self.mats) == (other.n, other.v, other.u, other.mats)

    def __hash__(self) -> int:
        return hash((self.n, self.v, self.u, self.mats))

    def __repr__(self) -> str:
        return f"ThetaRep(n={self.n}, v={self.v}, u={self.u})"


class SupportAudit(BaseModel):
    """不相交支撑审计：每个位置 (i, j) 至多一个 A_m 非零"""
    is_valid: bool
    offending: List[Tuple[int, int]] = []


def simple_top(n: int) -> ThetaRep:
    """顶点 1 上的单模 (1, 0)"""
    return ThetaRep(n, 1, 0, [Matrix(1, 0) for _ in range(n)])


def simple_bottom(n: int) -> ThetaRep:
    """顶点 2 上的单模 (0, 1)"""
    return ThetaRep(n, 0, 1, [Matrix(0, 1) for _ in range(n)])


def zero_theta(n: int) -> ThetaRep:
    return ThetaRep(n, 0, 0, [Matrix(0, 0) for _ in range(n)])


def kronecker_delta(V: ThetaRep, W: ThetaRep) -> Matrix:
    """δ(f, g)_m = f·A_m^V − A_m^W·g，f: k^{v_V} → k^{v_W}，g: k^{u_V} → k^{u_W}"""
    if V.n != W.n:
        raise ValueError(f"箭头数不一致: {V.n} 与 {W.n}")
    rows = W.v * V.u
    blocks = []
    for av, aw in zip(V.mats, W.mats):
        f_part = kron(Matrix.identity(W.v), av.T)
        g_part = -kron(aw, Matrix.identity(V.u))
        blocks.append(hstack([f_part, g_part], rows))
    return vstack(blocks, W.v * V.v + W.u * V.u)


def kronecker_hom_ext(V: ThetaRep, W: ThetaRep) -> Tuple[int, int]:
    """(dim Hom(V, W), dim Ext(V, W))"""
    delta = kronecker_delta(V, W)
    c0 = W.v * V.v + W.u * V.u
    c1 = V.n * W.v * V.u
    r = rank(delta)
    return c0 - r, c1 - r


def disjoint_support_audit(V: ThetaRep) -> SupportAudit:
    seen: Dict[Tuple[int, int], int] = {}
    offending = set()
    for a in V.mats:
        for i, j, _ in a.items():
            seen[(i, j)] = seen.get((i, j), 0) + 1
            if seen[(i, j)] > 1:
                offending.add((i, j))
    return SupportAudit(is_valid=not offending, offending=sorted(offending))


def coefficient_quiver_is_tree(V: ThetaRep) -> bool:
    """系数箭图：顶点为两侧基向量，每个非零元素 (m, i, j) 一条边"""
    nodes = V.v + V.u
    if nodes == 0:
        return True
    parent = list(range(nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = 0
    for a in V.mats:
        for i, j, _ in a.items():
            edges += 1
            ri, rj = find(i), find(V.v + j)
            if ri == rj:
                return False
            parent[ri] = rj
    return edges == nodes - 1


def dimension_sequence(n: int, k: int) -> List[int]:
    """d_0 = 0, d_1 = 1, d_{j+1} = n·d_j − d_{j−1}，返回 d_0..d_k"""
    if k < 0:
        raise ValueError(f"k 必须非负: {k}")
    seq = [0, 1]
    while len(seq) <= k:
        seq.append(n * seq[-1] - seq[-2])
    return seq[: k + 1]


def quadratic_form(n: int, v: int, u: int) -> int:
    """q(v, u) = v² + u² − n·v·u，例外维数向量上取值 1"""
    return v * v + u * u - n * v * u


def dual(V: ThetaRep) -> ThetaRep:
    """转置所有 A_m 并交换 (v, u)"""
    return ThetaRep(V.n, V.u, V.v, [a.T for a in V.mats])


def _choose_dependents(phi: Matrix, v: int) -> List[int]:
    """为 Φ 的每一列选一个被消去的坐标 (m, i)

    优先取该列中颜色 m 唯一的坐标，其次取顶端 i 上已消去坐标最少者。
    """
    chosen: List[int] = []
    used = set()
    per_top: Dict[int, int] = {}
    for j in range(phi.cols):
        column = [q for q, _, _ in phi.get_column(j).items()]
        colors: Dict[int, int] = {}
        for q in column:
            colors[q // v] = colors.get(q // v, 0) + 1
        candidates = [q for q in column if q not in used]
        if not candidates:
            raise RuntimeError(f"第 {j} 列没有可消去的坐标")
        best = min(
            candidates,
            key=lambda q: (0 if colors[q // v] == 1 else 1, per_top.get(q % v, 0), q // v, q % v),
        )
        chosen.append(best)
        used.add(best)
        per_top[best % v] = per_top.get(best % v, 0) + 1
    return chosen


def _fix_signs(v: int, u: int, mats: List[Matrix]) -> List[Matrix]:
    """用 ±1 对角基变换把所有 ±1 元素变为 1；系数箭图不是树时可能冲突"""
    edges: Dict[int, List[Tuple[int, Fraction]]] = {}
    for a in mats:
        for i, j, value in a.items():
            if value not in (1, -1):
                raise RuntimeError(f"反射后出现非 ±1 元素: {value}")
            edges.setdefault(i, []).append((v + j, value))
            edges.setdefault(v + j, []).append((i, value))

    sign: Dict[int, int] = {}
    for start in range(v + u):
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for other, value in edges.get(node, []):
                wanted = sign[node] * (1 if value > 0 else -1)
                if other not in sign:
                    sign[other] = wanted
                    queue.append(other)
                elif sign[other] != wanted:
                    raise RuntimeError("符号修正冲突，系数箭图含有奇圈")

    fixed = []
    for a in mats:
        entries = {}
        for i, j, value in a.items():
            entries.setdefault(i, {})[j] = value * sign[i] * sign[v + j]
        fixed.append(Matrix(v, u, entries))
    if any(value != 1 for a in fixed for value in a.nonzero_values()):
        raise RuntimeError("符号修正后仍有非 1 元素")
    return fixed


def reflect(V: ThetaRep) -> ThetaRep:
    """下一个前投射表示：新顶点 2 为旧顶点 1，新顶点 1 为 k^u → (k^v)^n 的余核"""
    n, v, u = V.n, V.v, V.u
    new_v = n * v - u
    if new_v < 0:
        raise ValueError(f"反射后维数为负: n·v − u = {new_v}")
    phi = vstack(list(V.mats), u) if n else Matrix(0, u)
    total = n * v

    dependents = _choose_dependents(phi, v) if u else []
    dep_set = set(dependents)
    order = dependents + [q for q in range(total) if q not in dep_set]
    reordered = phi.T.submatrix(range(u), order)
    reduced, pivots = rref(reordered)
    if len(pivots) != u:
        raise RuntimeError(f"Φ 不是单射 (秩 {len(pivots)} < {u})")
    pivot_coords = [order[p] for p in pivots]
    kept = sorted(q for q in range(total) if q not in set(pivot_coords))
    position = {q: k for k, q in enumerate(kept)}
    column_of = {q: k for k, q in enumerate(order)}

    # π(e_q)：保留坐标为单位向量，被消去坐标 d_k 为 −R[k] 在保留坐标上的部分
    images: Dict[int, Dict[int, Fraction]] = {q: {position[q]: Fraction(1)} for q in kept}
    for k, d in enumerate(pivot_coords):
        images[d] = {
            position[q]: -reduced[k, column_of[q]]
            for q in kept if reduced[k, column_of[q]]
        }

    mats = []
    for m in range(n):
        entries: Dict[int, Dict[int, Fraction]] = {}
        for i in range(v):
            for row, value in images[m * v + i].items():
                entries.setdefault(row, {})[i] = value
        mats.append(Matrix(new_v, v, entries))
    return ThetaRep(n, new_v, v, _fix_signs(new_v, v, mats))


def structural_certificate(V: ThetaRep) -> List[str]:
    """不做 δ 计算的结构检查，返回失败项"""
    failures = []
    if quadratic_form(V.n, V.v, V.u) != 1:
        failures.append(f"二次型 q({V.v}, {V.u}) ≠ 1")
    if not V.is_zero_one():
        failures.append("存在非 0/1 元素")
    if not disjoint_support_audit(V).is_valid:
        failures.append("支撑不相交条件不成立")
    if not coefficient_quiver_is_tree(V):
        failures.append("系数箭图不是树")
    return failures


def certify(V: ThetaRep, max_dim: Optional[int] = None) -> str:
    """认证例外性；规模不超过 max_dim 时用 δ 模型，否则用结构检查"""
    limit = settings.kronecker_certify_max_dim if max_dim is None else max_dim
    failures = structural_certificate(V)
    if failures:
        raise RuntimeError(f"{V!r} 认证失败: {'; '.join(failures)}")
    if V.v * V.v + V.u * V.u <= limit:
        hom, ext = kronecker_hom_ext(V, V)
        if (hom, ext) != (1, 0):
            raise RuntimeError(f"{V!r} 认证失败: (hom, ext) = ({hom}, {ext})")
        return "delta"
    logger.info(f"{V!r} 超过认证上限 {limit}，仅做结构检查")
    return "structural"


def exceptional_preprojective(n: int, k: int) -> ThetaRep:
    """第 k 个前投射例外表示，维数 (d_{k+1}, d_k)

    n = 1 时 Θ(1) 只有 (1,0)、(1,1)、(0,1) 三个不可分解表示，k ≥ 2 一律返回 (0,1)。
    """
    if n < 1:
        raise ValueError(f"箭头数至少为 1: {n}")
    if k < 0:
        raise ValueError(f"k 必须非负: {k}")
    if n == 1 and k > 2:
        logger.debug(f"Θ(1) 的前投射序列在 k = 2 处终止，k = {k} 取 (0,1)")
        k = 2
    rep = simple_top(n)
    for _ in range(k):
        rep = reflect(rep)
    certify(rep)
    logger.debug(f"前投射表示 n={n}, k={k}: 维数 {rep.dims}")
    return rep


def exceptional_preinjective(n: int, k: int) -> ThetaRep:
    return dual(exceptional_preprojective(n, k))


def exceptional_representation(n: int, side: str, k: int) -> ThetaRep:
    if side == "preproj":
        return exceptional_preprojective(n, k)
    if side == "preinj":
        return exceptional_preinjective(n, k)
    raise ValueError(f"未知的类型: {side} (应为 preproj 或 preinj)")


def from_rows(n: int, v: int, u: int, mats: Sequence[Sequence[Sequence[int]]]) -> ThetaRep:
    return ThetaRep(n, v, u, [Matrix.from_rows(a, u) for a in mats])


__all__ = [
    "ThetaRep", "SupportAudit", "simple_top", "simple_bottom", "zero_theta",
    "kronecker_delta", "kronecker_hom_ext", "disjoint_support_audit",
    "coefficient_quiver_is_tree", "dimension_sequence", "quadratic_form", "dual", "reflect",
    "structural_certificate", "certify", "exceptional_preprojective",
    "exceptional_preinjective", "exceptional_representation", "from_rows",
]
