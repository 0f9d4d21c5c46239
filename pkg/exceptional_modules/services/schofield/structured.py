"""
显式 U(X,Y) 基

设 K_m = X_{ω_{2,p_m}}。若 K_m 的各列是互不相同的单位向量，关系中 φ_{α_1^(m)}·K_m
这一项只是把 φ_{α_1^(m)} 的若干列搬到 Hom(X_c, Y_0) 中，于是这些列可以由其余分量解出。
关系 i 优先在自己的臂上求解，否则在臂 1 上求解（至多一个关系，且最先处理）；
其余坐标取单位向量，逐个补上被解出的列。
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from exceptional_modules.services.hom_ext import ExtModel
from exceptional_modules.services.linalg import Matrix, hstack, matmul
from exceptional_modules.services.representation import Rep, arm_suffix

from .base import BaseUBasisBuilder, BasisProvenance, UBasis

logger = logging.getLogger(__name__)

Flat = Dict[int, Fraction]


def unit_column_rows(k: Matrix) -> Optional[List[int]]:
    """K 的每一列都是不同的单位向量时返回各列非零元所在的行"""
    rows = []
    for j in range(k.cols):
        column = list(k.get_column(j).items())
        if len(column) != 1 or column[0][2] != 1:
            return None
        rows.append(column[0][0])
    if len(set(rows)) != len(rows):
        return None
    return rows


class StructuredUBasisBuilder(BaseUBasisBuilder):
    """按关系逐个解出首箭头列的显式基"""

    provenance = BasisProvenance.STRUCTURED

    def plan(self, x: Rep) -> Tuple[Optional[int], Dict[int, int], Dict[int, List[int]]]:
        """返回 (在臂 1 上求解的关系, 关系 → 求解所用的臂, 各臂 K 的单位列行号)"""
        alg = x.algebra
        columns: Dict[int, List[int]] = {}
        for m in range(1, alg.t + 1):
            rows = unit_column_rows(arm_suffix(x, m, 2))
            if rows is not None:
                columns[m] = rows

        on_arm1: Optional[int] = None
        solve_on: Dict[int, int] = {}
        for rel in alg.relations():
            if rel.arm in columns:
                solve_on[rel.arm] = rel.arm
            elif 1 in columns and on_arm1 is None:
                solve_on[rel.arm] = 1
                on_arm1 = rel.arm
            else:
                raise RuntimeError(f"关系 {rel.arm} 无法在自身臂或臂 1 上求解")
        return on_arm1, solve_on, columns

    def supports(self, x: Rep, y: Rep) -> bool:
        if x.dims[-1] == 0 or y.dims[0] == 0 or x.algebra.t == 2:
            return True
        try:
            self.plan(x)
        except RuntimeError:
            return False
        return True

    def build(self, x: Rep, y: Rep) -> UBasis:
        self._check_pair(x, y)
        model = ExtModel(x, y)
        alg = model.algebra
        if x.dims[-1] == 0 or y.dims[0] == 0 or alg.t == 2:
            vectors = [Matrix.unit(model.c1_dim, q) for q in range(model.c1_dim)]
            return UBasis(x=x, y=y, vectors=vectors, provenance=self.provenance)

        on_arm1, solve_on, columns = self.plan(x)
        width = x.dims[-1]

        def dependent_coords(arm: int) -> List[int]:
            k = alg.arrow(arm, 1)
            cols = model.c1_blocks[k][1]
            base = model.c1_offsets[k]
            return [base + r * cols + columns[arm][c] for r in range(y.dims[0]) for c in range(width)]

        def place(entries: Flat, arm: int, residual: Flat):
            """把残差 R (展平的 dY_0 x dX_c) 写入 φ_{α_1^(arm)} 的对应列"""
            k = alg.arrow(arm, 1)
            cols = model.c1_blocks[k][1]
            base = model.c1_offsets[k]
            for flat, value in residual.items():
                r, c = divmod(flat, width)
                q = base + r * cols + columns[arm][c]
                entries[q] = entries.get(q, Fraction(0)) + value

        dependent = set()
        for arm in set(solve_on.values()):
            dependent.update(dependent_coords(arm))
        free = [q for q in range(model.c1_dim) if q not in dependent]

        # P_m 的列：单位向量 e_q 沿臂 m 的贡献
        sums = {m: model.arm_sum_matrix(m).transpose().to_dod() for m in range(1, alg.t + 1)}

        vectors = []
        for q in free:
            entries: Flat = {q: Fraction(1)}
            value_of = {m: dict(sums[m].get(q, {})) for m in sums}
            if on_arm1 is not None:
                lam = alg.lam(on_arm1)
                residual = _combine(value_of[on_arm1], value_of[1], value_of[2], -1, -lam)
                place(entries, 1, residual)
                value_of[1] = _combine(value_of[1], residual, {}, 1, 0)
            for rel in alg.relations():
                if solve_on[rel.arm] != rel.arm:
                    continue
                residual = _combine(value_of[1], value_of[2], value_of[rel.arm], rel.lam, -1)
                place(entries, rel.arm, residual)
            vectors.append(Matrix(model.c1_dim, 1, {i: {0: v} for i, v in entries.items()}))

        expected = len(model.u_basis)
        if len(vectors) != expected:
            raise RuntimeError(f"显式基含 {len(vectors)} 个向量，而 dim U = {expected}")
        if vectors and model.u_constraint.rows:
            if not matmul(model.u_constraint, hstack(vectors, model.c1_dim)).is_zero():
                raise RuntimeError("显式基向量不在 U(X,Y) 中")
        logger.debug(f"显式 U 基: {len(vectors)} 个向量，关系求解臂 {solve_on}")
        return UBasis(x=x, y=y, vectors=vectors, provenance=self.provenance)


def _combine(a: Flat, b: Flat, c: Flat, sb, sc) -> Flat:
    """a + sb·b + sc·c"""
    out: Flat = dict(a)
    for part, factor in ((b, sb), (c, sc)):
        if not factor:
            continue
        for k, v in part.items():
            out[k] = out.get(k, Fraction(0)) + factor * v
    return {k: v for k, v in out.items() if v}
