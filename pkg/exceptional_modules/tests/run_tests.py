#!/usr/bin/env python3
"""
例外模计算测试运行脚本
按模块分类运行 tests/ 下的 pytest 测试
"""

import argparse
import subprocess
import sys
from pathlib import Path

TEST_CATEGORIES = {
    "linalg": ["tests/test_linalg.py"],
    "lattice": ["tests/test_lattice.py"],
    "algebra": ["tests/test_algebra.py", "tests/test_representation.py"],
    "homext": ["tests/test_hom_ext.py"],
    "modules": ["tests/test_small_rank.py", "tests/test_kronecker.py"],
    "schofield": ["tests/test_schofield.py"],
    "cli": ["tests/test_cli.py", "tests/test_formats.py"],
}


def setup_environment() -> Path:
    """切换到包目录并更新 Python 路径"""
    package_dir = Path(__file__).parent.parent
    project_root = package_dir.parent
    if str(project_root) not in sys.path:
        sys.path.insert(0, str(project_root))
    print(f"✓ 包目录: {package_dir}")
    return package_dir


def check_dependencies() -> bool:
    """检查测试依赖"""
    required_packages = [
        ("pytest", "pytest"),
        ("hypothesis", "hypothesis"),
        ("sympy", "sympy"),
        ("pydantic", "pydantic"),
        ("pydantic-settings", "pydantic_settings"),
    ]
    missing = []
    for package_name, import_name in required_packages:
        try:
            __import__(import_name)
        except ImportError:
            missing.append(package_name)

    if missing:
        print(f"❌ 缺少依赖包: {', '.join(missing)}")
        print("请运行: pip install -r requirements.txt")
        return False
    print("✓ 所有依赖包已安装")
    return True


def run_pytest(package_dir: Path, test_files=None, verbose=False, keyword=None, exitfirst=True) -> bool:
    """运行 pytest"""
    cmd = [sys.executable, "-m", "pytest"]
    cmd.extend(test_files or ["tests/"])
    if verbose:
        cmd.append("-v")
    if keyword:
        cmd.extend(["-k", keyword])
    cmd.extend(["--tb=short", "--strict-markers"])
    if exitfirst:
        cmd.append("-x")

    print(f"运行命令: {' '.join(cmd)}")
    print("-" * 50)
    try:
        result = subprocess.run(cmd, cwd=package_dir, check=False)
        return result.returncode == 0
    except KeyboardInterrupt:
        print("\n❌ 测试被用户中断")
        return False
    except Exception as e:
        print(f"❌ 运行测试时出错: {e}")
        return False


def main():
    """主函数"""
    parser = argparse.ArgumentParser(description="例外模计算测试运行器")
    parser.add_argument("-v", "--verbose", action="store_true", help="详细输出")
    parser.add_argument("-k", "--keyword", help="只运行名称匹配的测试")
    parser.add_argument("--all-failures", action="store_true", help="遇到失败不提前停止")
    parser.add_argument(
        "--only", choices=sorted(TEST_CATEGORIES), action="append",
        help="只运行指定类别的测试，可重复",
    )
    args = parser.parse_args()

    print("🚀 例外模计算测试运行器")
    print("=" * 50)

    package_dir = setup_environment()
    if not check_dependencies():
        sys.exit(1)

    files = None
    if args.only:
        files = [f for name in args.only for f in TEST_CATEGORIES[name]]

    success = run_pytest(package_dir, files, args.verbose, args.keyword, not args.all_failures)

    print("\n" + "=" * 50)
    print("✅ 所有测试通过!" if success else "❌ 部分测试失败")
    print("=" * 50)
    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
