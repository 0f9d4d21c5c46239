"""
文件格式模型：代数描述、表示文件与 Kronecker 表示文件

有理数一律以 "p/q" 字符串保存。
"""
from typing import Dict, List

from pydantic import BaseModel


class AlgebraDescriptor(BaseModel):
    """代数描述"""
    weights: List[int]
    lambdas: List[str]


class RepFile(BaseModel):
    """表示文件：顶点标签 → 维数，箭头标签 → 矩阵"""
    algebra: AlgebraDescriptor
    dims: Dict[str, int]
    mats: Dict[str, List[List[str]]]


class ThetaFile(BaseModel):
    """Θ(n) 表示文件"""
    n: int
    v: int
    u: int
    mats: List[List[List[str]]]


class CocycleFile(BaseModel):
    """Ext 代表元：每个元素是箭头标签 → 矩阵"""
    hom: int
    ext: int
    cocycles: List[Dict[str, List[List[str]]]] = []
