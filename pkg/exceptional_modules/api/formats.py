"""
表示文件的解析与输出（JSON 与 LaTeX）
"""
import logging
from fractions import Fraction
from typing import Dict, List, Sequence

from pydantic import ValidationError

from exceptional_modules.models.files import AlgebraDescriptor, CocycleFile, RepFile, ThetaFile
from exceptional_modules.services import algebra as algebra_service
from exceptional_modules.services.algebra import CanonicalAlgebra
from exceptional_modules.services.kronecker import ThetaRep
from exceptional_modules.services.linalg import Matrix, format_scalar, to_scalar
from exceptional_modules.services.representation import Rep

logger = logging.getLogger(__name__)


class RepFormatError(ValueError):
    """文件格式错误，path 指向出错的 JSON 位置"""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def _loc_path(loc: Sequence) -> str:
    return "$" + "".join(f"[{x}]" if isinstance(x, int) else f".{x}" for x in loc)


def _validation_error(e: ValidationError) -> RepFormatError:
    first = e.errors()[0]
    return RepFormatError(first.get("msg", str(e)), _loc_path(first.get("loc", ())))


# ---- 矩阵 ----

def matrix_rows(m: Matrix) -> List[List[str]]:
    return [[format_scalar(v) for v in row] for row in m.to_rows()]


def parse_matrix(rows: List[List[str]], shape, path: str) -> Matrix:
    n_rows, n_cols = shape
    if len(rows) != n_rows:
        raise RepFormatError(f"行数为 {len(rows)}，应为 {n_rows}", path)
    values = []
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise RepFormatError(f"列数为 {len(row)}，应为 {n_cols}", f"{path}[{i}]")
        parsed = []
        for j, text in enumerate(row):
            try:
                parsed.append(to_scalar(text))
            except ValueError as e:
                raise RepFormatError(str(e), f"{path}[{i}][{j}]") from e
        values.append(parsed)
    return Matrix.from_rows(values, n_cols)


# ---- 代数描述 ----

def algebra_descriptor(alg: CanonicalAlgebra) -> AlgebraDescriptor:
    return AlgebraDescriptor(**alg.descriptor())


def algebra_from_descriptor(desc: AlgebraDescriptor, path: str = "$") -> CanonicalAlgebra:
    try:
        return algebra_service.build(desc.weights, desc.lambdas)
    except ValueError as e:
        raise RepFormatError(str(e), path) from e


def emit_algebra(alg: CanonicalAlgebra) -> str:
    return algebra_descriptor(alg).model_dump_json(indent=2) + "\n"


def parse_algebra(text: str) -> CanonicalAlgebra:
    try:
        desc = AlgebraDescriptor.model_validate_json(text)
    except ValidationError as e:
        raise _validation_error(e) from e
    return algebra_from_descriptor(desc)


# ---- 表示文件 ----

def rep_file(m: Rep) -> RepFile:
    alg = m.algebra
    return RepFile(
        algebra=algebra_descriptor(alg),
        dims={label: d for label, d in zip(alg.vertices, m.dims)},
        mats={a.label: matrix_rows(mat) for a, mat in zip(alg.arrows, m.mats)},
    )


def emit_rep(m: Rep) -> str:
    return rep_file(m).model_dump_json(indent=2) + "\n"


def rep_from_file(data: RepFile) -> Rep:
    alg = algebra_from_descriptor(data.algebra, "$.algebra")
    if set(data.dims) != set(alg.vertices):
        missing = sorted(set(alg.vertices) - set(data.dims))
        extra = sorted(set(data.dims) - set(alg.vertices))
        raise RepFormatError(f"顶点标签不一致，缺少 {missing}，多出 {extra}", "$.dims")
    dims = []
    for label in alg.vertices:
        if data.dims[label] < 0:
            raise RepFormatError(f"维数为负: {data.dims[label]}", f"$.dims.{label}")
        dims.append(data.dims[label])
    if set(data.mats) != {a.label for a in alg.arrows}:
        missing = sorted({a.label for a in alg.arrows} - set(data.mats))
        extra = sorted(set(data.mats) - {a.label for a in alg.arrows})
        raise RepFormatError(f"箭头标签不一致，缺少 {missing}，多出 {extra}", "$.mats")
    mats = [
        parse_matrix(data.mats[a.label], (dims[a.source], dims[a.target]), f"$.mats.{a.label}")
        for a in alg.arrows
    ]
    return Rep(alg, dims, mats)


def parse_rep(text: str) -> Rep:
    try:
        data = RepFile.model_validate_json(text)
    except ValidationError as e:
        raise _validation_error(e) from e
    return rep_from_file(data)


def read_rep(path: str) -> Rep:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise RepFormatError(f"无法读取文件 {path}: {e}") from e
    logger.debug(f"读取表示文件 {path}")
    return parse_rep(text)


def write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"已写入 {path}")


# ---- Kronecker 表示 ----

def emit_theta(rep: ThetaRep) -> str:
    data = ThetaFile(n=rep.n, v=rep.v, u=rep.u, mats=[matrix_rows(a) for a in rep.mats])
    return data.model_dump_json(indent=2) + "\n"


def parse_theta(text: str) -> ThetaRep:
    try:
        data = ThetaFile.model_validate_json(text)
    except ValidationError as e:
        raise _validation_error(e) from e
    if len(data.mats) != data.n:
        raise RepFormatError(f"矩阵个数 {len(data.mats)} 与 n = {data.n} 不一致", "$.mats")
    mats = [parse_matrix(a, (data.v, data.u), f"$.mats[{k}]") for k, a in enumerate(data.mats)]
    try:
        return ThetaRep(data.n, data.v, data.u, mats)
    except ValueError as e:
        raise RepFormatError(str(e)) from e


def emit_cocycles(hom: int, ext: int, alg: CanonicalAlgebra, families: List[List[Matrix]]) -> str:
    data = CocycleFile(
        hom=hom, ext=ext,
        cocycles=[
            {a.label: matrix_rows(f) for a, f in zip(alg.arrows, family)}
            for family in families
        ],
    )
    return data.model_dump_json(indent=2) + "\n"


# ---- LaTeX ----

def latex_scalar(value: Fraction) -> str:
    """−3/2 → -\\tfrac{3}{2}"""
    if value.denominator == 1:
        return str(value.numerator)
    sign = "-" if value < 0 else ""
    return f"{sign}\\tfrac{{{abs(value.numerator)}}}{{{value.denominator}}}"


def latex_matrix(m: Matrix) -> str:
    if m.rows == 0 or m.cols == 0:
        return f"0_{{{m.rows}\\times {m.cols}}}"
    body = " \\\\\n".join(" & ".join(latex_scalar(v) for v in row) for row in m.to_rows())
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"


def emit_latex(m: Rep) -> str:
    """每个箭头矩阵一行公式，标记为 M_{α_j^{(i)}}"""
    lines = []
    for a, mat in zip(m.algebra.arrows, m.mats):
        lines.append(f"M_{{\\alpha_{{{a.index}}}^{{({a.arm})}}}} = {latex_matrix(mat)}")
    return "\n\n".join(lines) + "\n"


def emit_theta_latex(rep: ThetaRep) -> str:
    lines = [f"A_{{{k}}} = {latex_matrix(a)}" for k, a in enumerate(rep.mats, start=1)]
    return "\n\n".join(lines) + "\n"


__all__ = [
    "RepFormatError", "matrix_rows", "parse_matrix", "algebra_descriptor",
    "algebra_from_descriptor", "emit_algebra", "parse_algebra", "rep_file", "emit_rep",
    "rep_from_file", "parse_rep", "read_rep", "write_text", "emit_theta", "parse_theta",
    "emit_cocycles", "latex_scalar", "latex_matrix", "emit_latex", "emit_theta_latex",
]
