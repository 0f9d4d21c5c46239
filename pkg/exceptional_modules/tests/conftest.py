"""
pytest配置文件
提供测试环境设置和公共fixtures
"""

import os
import sys
from pathlib import Path

# 必须在导入任何 exceptional_modules 模块之前设置环境变量
os.environ.setdefault("EXMOD_WORKERS", "2")
os.environ.setdefault("EXMOD_LOG_LEVEL", "WARNING")

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

import pytest

from exceptional_modules.services import algebra as algebra_service
from exceptional_modules.services.algebra import CanonicalAlgebra
from exceptional_modules.services.linalg import Matrix
from exceptional_modules.services.representation import Rep
from exceptional_modules.services.small_rank import (
    RankOneSpec, projective, rank_one, tube_simple,
)


@pytest.fixture(scope="session")
def alg237() -> CanonicalAlgebra:
    """最小的野型权重 (2,3,7)，规范化参数 λ_3 = 1"""
    return algebra_service.build([2, 3, 7])


@pytest.fixture(scope="session")
def alg2222() -> CanonicalAlgebra:
    """四条臂、两个典范关系"""
    return algebra_service.build([2, 2, 2, 2])


@pytest.fixture(scope="session")
def alg333() -> CanonicalAlgebra:
    return algebra_service.build([3, 3, 3])


@pytest.fixture
def p_c(alg237) -> Rep:
    """P(c)，维数 v0 = 2，其余顶点为 1"""
    return rank_one(alg237, RankOneSpec(r=(0, 0, 0), n=1))


@pytest.fixture
def p_0(alg237) -> Rep:
    return projective(alg237, 0)


@pytest.fixture
def simple_pair(alg237):
    """(S(2·x_3), P(x_3))，dim Ext = 1，中间项为 P(2·x_3)"""
    x = tube_simple(alg237, 3, 2)
    y = projective(alg237, alg237.arm_vertex(3, 1))
    return x, y


@pytest.fixture
def broken_p_c(alg237, p_c) -> Rep:
    """把 α_1^(3) 改成 [[1],[2]]，第 3 个典范关系不再成立"""
    return p_c.with_matrix(alg237.arrow(3, 1), Matrix.from_rows([[1], [2]]))
