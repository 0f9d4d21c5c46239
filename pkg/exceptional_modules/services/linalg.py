"""
精确线性代数内核

所有标量均为 Fraction；秩、行最简形与乘法委托给 sympy 的 DomainMatrix (QQ, 稀疏 SDM 格式)。
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

ScalarLike = Union[int, Fraction, str]
Entries = Dict[int, Dict[int, Fraction]]


def to_scalar(value: ScalarLike) -> Fraction:
    """把整数、Fraction 或 "p/q" 字符串转换为精确有理数"""
    if isinstance(value, bool):
        raise ValueError(f"无法解析为有理数: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"无法解析为有理数: {value!r}") from e
    raise ValueError(f"无法解析为有理数: {value!r}")


def format_scalar(value: Fraction) -> str:
    """有理数的文本形式，分母为 1 时省略"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class Matrix:
    """不可变的精确有理矩阵，稀疏存储（只保存非零元素）"""

    __slots__ = ("rows", "cols", "_entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Entries = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"矩阵尺寸不能为负: {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        cleaned: Entries = {}
        for i, row in (entries or {}).items():
            if not 0 <= i < rows:
                raise ValueError(f"行下标越界: {i} (共 {rows} 行)")
            kept = {}
            for j, value in row.items():
                if not 0 <= j < cols:
                    raise ValueError(f"列下标越界: {j} (共 {cols} 列)")
                value = to_scalar(value)
                if value:
                    kept[j] = value
            if kept:
                cleaned[i] = kept
        self._entries = cleaned
        self._hash = None

    # ---- 构造 ----

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], cols: int = None) -> "Matrix":
        """从嵌套列表构造；空列表需要显式给出列数"""
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries: Entries = {}
        for i, row in enumerate(rows):
            row = list(row)
            if len(row) != cols:
                raise ValueError(f"第 {i} 行长度 {len(row)} 与列数 {cols} 不一致")
            entries[i] = {j: to_scalar(v) for j, v in enumerate(row)}
        return cls(len(rows), cols, entries)

    @classmethod
    def column(cls, values: Sequence[ScalarLike]) -> "Matrix":
        values = list(values)
        return cls(len(values), 1, {i: {0: to_scalar(v)} for i, v in enumerate(values)})

    @classmethod
    def unit(cls, n: int, index: int) -> "Matrix":
        return cls(n, 1, {index: {0: Fraction(1)}})

    @classmethod
    def from_columns(cls, columns: Sequence["Matrix"], rows: int) -> "Matrix":
        entries: Entries = {}
        for j, col in enumerate(columns):
            if col.rows != rows or col.cols != 1:
                raise ValueError(f"列向量尺寸错误: {col.shape}，期望 ({rows}, 1)")
            for i, _, value in col.items():
                entries.setdefault(i, {})[j] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix) -> "Matrix":
        rows, cols = dm.shape
        rep = dm.to_sparse().rep
        entries = {i: {j: _from_qq(v) for j, v in row.items()} for i, row in rep.items()}
        return cls(rows, cols, entries)

    # ---- 访问 ----

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"下标越界: ({i}, {j})，矩阵尺寸 {self.shape}")
        return self._entries.get(i, {}).get(j, Fraction(0))

    def items(self) -> Iterator[Tuple[int, int, Fraction]]:
        """按行列顺序遍历非零元素"""
        for i in sorted(self._entries):
            row = self._entries[i]
            for j in sorted(row):
                yield i, j, row[j]

    def nonzero_values(self) -> List[Fraction]:
        return [v for _, _, v in self.items()]

    def to_dod(self) -> Entries:
        return {i: dict(row) for i, row in self._entries.items()}

    def to_rows(self) -> List[List[Fraction]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def get_column(self, j: int) -> "Matrix":
        return Matrix(self.rows, 1, {i: {0: row[j]} for i, row in self._entries.items() if j in row})

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        col_pos = {c: k for k, c in enumerate(cols)}
        entries: Entries = {}
        for new_i, i in enumerate(rows):
            row = self._entries.get(i, {})
            kept = {col_pos[j]: v for j, v in row.items() if j in col_pos}
            if kept:
                entries[new_i] = kept
        return Matrix(len(rows), len(cols), entries)

    def is_zero(self) -> bool:
        return not self._entries

    def nnz(self) -> int:
        return sum(len(row) for row in self._entries.values())

    # ---- 运算 ----

    def to_domain_matrix(self) -> DomainMatrix:
        dod = {i: {j: _to_qq(v) for j, v in row.items()} for i, row in self._entries.items()}
        return DomainMatrix(dod, self.shape, QQ)

    def transpose(self) -> "Matrix":
        entries: Entries = {}
        for i, j, v in self.items():
            entries.setdefault(j, {})[i] = v
        return Matrix(self.cols, self.rows, entries)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def _check_same_shape(self, other: "Matrix", op: str):
        if self.shape != other.shape:
            raise ValueError(f"矩阵{op}尺寸不一致: {self.shape} 与 {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other, "加法")
        entries = self.to_dod()
        for i, j, v in other.items():
            row = entries.setdefault(i, {})
            row[j] = row.get(j, Fraction(0)) + v
        return Matrix(self.rows, self.cols, entries)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "Matrix":
        factor = to_scalar(factor)
        if not factor:
            return Matrix(self.rows, self.cols)
        return Matrix(
            self.rows, self.cols,
            {i: {j: v * factor for j, v in row.items()} for i, row in self._entries.items()},
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(self.items())))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(v) for v in row) for row in self.to_rows())
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def rank(self) -> int:
        return rank(self)

    def rref(self) -> Tuple["Matrix", Tuple[int, ...]]:
        return rref(self)

    def vec(self) -> "Matrix":
        """按行展开为列向量"""
        return Matrix(
            self.rows * self.cols, 1,
            {i * self.cols + j: {0: v} for i, j, v in self.items()},
        )


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """精确矩阵乘法"""
    if a.cols != b.rows:
        raise ValueError(f"矩阵乘法尺寸不匹配: {a.shape} x {b.shape}")
    if a.is_zero() or b.is_zero() or a.rows == 0 or b.cols == 0:
        return Matrix(a.rows, b.cols)
    product = a.to_domain_matrix().matmul(b.to_domain_matrix())
    return Matrix.from_domain_matrix(product)


def matmul_chain(matrices: Sequence[Matrix], rows: int = None) -> Matrix:
    """连乘；空序列返回 rows 阶单位阵"""
    if not matrices:
        if rows is None:
            raise ValueError("空乘积需要给出单位阵阶数")
        return Matrix.identity(rows)
    result = matrices[0]
    for m in matrices[1:]:
        result = matmul(result, m)
    return result


def rref(a: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """行最简形及主元列；主元为 1 且主元列已消去"""
    if a.rows == 0 or a.cols == 0 or a.is_zero():
        return Matrix(a.rows, a.cols), ()
    reduced, pivots = a.to_domain_matrix().rref()
    return Matrix.from_domain_matrix(reduced), tuple(int(p) for p in pivots)


def rank(a: Matrix) -> int:
    if a.rows == 0 or a.cols == 0 or a.is_zero():
        return 0
    return int(a.to_domain_matrix().rank())


def nullspace_basis(a: Matrix) -> List[Matrix]:
    """{x : Ax = 0} 的精确基，由行最简形读出，每个自由列给出一个向量"""
    reduced, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(a.cols):
        if free in pivot_set:
            continue
        entries: Entries = {free: {0: Fraction(1)}}
        for k, p in enumerate(pivots):
            value = reduced[k, free]
            if value:
                entries[p] = {0: -value}
        basis.append(Matrix(a.cols, 1, entries))
    return basis


def cokernel_basis(a: Matrix) -> List[Matrix]:
    """列空间补的代表元：Aᵀ 行最简形的非主元坐标对应的单位向量"""
    _, pivots = rref(a.transpose())
    pivot_set = set(pivots)
    return [Matrix.unit(a.rows, j) for j in range(a.rows) if j not in pivot_set]


def independent_columns(a: Matrix) -> Tuple[int, ...]:
    """从左到右贪心选出的线性无关列下标"""
    return rref(a)[1]


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker 积，a 的每个元素缩放一份 b"""
    entries: Entries = {}
    for i, j, x in a.items():
        for k, l, y in b.items():
            entries.setdefault(i * b.rows + k, {})[j * b.cols + l] = x * y
    return Matrix(a.rows * b.rows, a.cols * b.cols, entries)


def hstack(matrices: Sequence[Matrix], rows: int = None) -> Matrix:
    if not matrices:
        return Matrix(rows or 0, 0)
    rows = matrices[0].rows
    entries: Entries = {}
    offset = 0
    for m in matrices:
        if m.rows != rows:
            raise ValueError(f"水平拼接行数不一致: {m.rows} 与 {rows}")
        for i, j, v in m.items():
            entries.setdefault(i, {})[offset + j] = v
        offset += m.cols
    return Matrix(rows, offset, entries)


def vstack(matrices: Sequence[Matrix], cols: int = None) -> Matrix:
    if not matrices:
        return Matrix(0, cols or 0)
    cols = matrices[0].cols
    entries: Entries = {}
    offset = 0
    for m in matrices:
        if m.cols != cols:
            raise ValueError(f"竖直拼接列数不一致: {m.cols} 与 {cols}")
        for i, j, v in m.items():
            entries.setdefault(offset + i, {})[j] = v
        offset += m.rows
    return Matrix(offset, cols, entries)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    """按块拼接，每一块行的行数一致、每一块列的列数一致"""
    return vstack([hstack(list(row)) for row in grid])


def block_diag(matrices: Iterable[Matrix]) -> Matrix:
    matrices = list(matrices)
    entries: Entries = {}
    r = c = 0
    for m in matrices:
        for i, j, v in m.items():
            entries.setdefault(r + i, {})[c + j] = v
        r += m.rows
        c += m.cols
    return Matrix(r, c, entries)


def unvec(vector: Matrix, rows: int, cols: int) -> Matrix:
    """列向量按行重排为 rows x cols 矩阵"""
    if vector.rows != rows * cols or vector.cols != 1:
        raise ValueError(f"向量长度 {vector.rows} 与 {rows}x{cols} 不符")
    entries: Entries = {}
    for k, _, v in vector.items():
        entries.setdefault(k // cols, {})[k % cols] = v
    return Matrix(rows, cols, entries)


def inverse(a: Matrix) -> Matrix:
    """方阵求逆；奇异时抛出 ValueError"""
    if a.rows != a.cols:
        raise ValueError(f"非方阵不可逆: {a.shape}")
    n = a.rows
    if n == 0:
        return Matrix(0, 0)
    augmented = hstack([a, Matrix.identity(n)])
    reduced, pivots = rref(augmented)
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ValueError("矩阵奇异，无法求逆")
    return reduced.submatrix(range(n), range(n, 2 * n))


def in_column_span(vector: Matrix, span: Matrix) -> bool:
    return rank(hstack([span, vector])) == rank(span)


__all__ = [
    "Matrix", "ScalarLike", "to_scalar", "format_scalar",
    "matmul", "matmul_chain", "rref", "rank", "nullspace_basis", "cokernel_basis",
    "independent_columns", "kron", "hstack", "vstack", "block", "block_diag",
    "unvec", "inverse", "in_column_span",
]
