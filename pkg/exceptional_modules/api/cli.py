"""
命令行入口

退出码：0 成功 / 全部检查通过，1 检查失败，2 输入无效。
结果写到标准输出，日志写到标准错误。
"""
import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from exceptional_modules.api import formats
from exceptional_modules.core.config import settings
from exceptional_modules.models.reports import Report, Severity
from exceptional_modules.services import algebra as algebra_service
from exceptional_modules.services import kronecker, lattice
from exceptional_modules.services.algebra import CanonicalAlgebra
from exceptional_modules.services.hom_ext import ExtModel
from exceptional_modules.services.linalg import format_scalar
from exceptional_modules.services.representation import check_relations, rank
from exceptional_modules.services.schofield.pipeline import (
    find_orthogonal_pairs, run_induction_step, verify_induction_step,
)
from exceptional_modules.services.small_rank import (
    RankOneSpec, RegularSpec, projective, rank_one, regular_exceptional,
)
from exceptional_modules.services.suite import SUITES, named_schofield_pool, run_suites
from exceptional_modules.services.validation import acceptability_audit, coefficient_audit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


# ---- 参数解析 ----

def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"应为逗号分隔的整数: {text!r}") from e


def _str_list(text: str) -> List[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _add_algebra_args(parser: argparse.ArgumentParser):
    parser.add_argument("--p", type=_int_list, required=True, help="权重，如 2,3,7")
    parser.add_argument("--lambda", dest="lambdas", type=_str_list, default=None,
                        help="λ_2..λ_t，有理数字符串；省略时为 0,1,2,...")


def _add_output_args(parser: argparse.ArgumentParser):
    parser.add_argument("--out", help="输出文件，省略时写到标准输出")
    parser.add_argument("--emit", choices=["rep", "latex"], default="rep", help="输出格式")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exceptional_modules", description="典范代数上的例外模工具")
    parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="构造典范代数并打印基本信息")
    _add_algebra_args(p)
    p.add_argument("--out", help="写出代数描述文件")

    p = sub.add_parser("module", help="构造小秩例外模")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("regular", help="正则例外模 S_a^[l]")
    _add_algebra_args(k)
    k.add_argument("--arm", type=int, required=True)
    k.add_argument("--a", type=int, required=True)
    k.add_argument("--l", type=int, required=True)
    _add_output_args(k)
    k = kinds.add_parser("rank1", help="秩一例外模")
    _add_algebra_args(k)
    k.add_argument("--r", type=_int_list, required=True, help="r_1..r_t")
    k.add_argument("--n", type=int, default=0)
    _add_output_args(k)
    k = kinds.add_parser("projective", help="不可分解投射模")
    _add_algebra_args(k)
    k.add_argument("--vertex", required=True, help="顶点标签，如 v0, x_3_2, vc")
    _add_output_args(k)

    p = sub.add_parser("ext", help="计算 dim Hom 与 dim Ext")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--cocycles", action="store_true", help="同时输出 Ext 代表元")

    p = sub.add_parser("kron", help="Θ(n) 的例外表示")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", choices=["preproj", "preinj"], default="preproj")
    p.add_argument("--k", type=int, required=True, help="序号 k ≥ 0；n = 1 时 k ≥ 2 都给出 (0,1)")
    p.add_argument("--out")
    p.add_argument("--emit", choices=["rep", "latex"], default="rep")

    p = sub.add_parser("schofield", help="Schofield 归纳一步")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--kron-side", choices=["preproj", "preinj"], default="preproj")
    p.add_argument("--kron-k", type=int, default=1)
    p.add_argument("--basis", choices=["structured", "generic"], default="structured")
    p.add_argument("--json", action="store_true", help="以 JSON 输出报告")
    _add_output_args(p)

    p = sub.add_parser("audit", help="关系、系数与可接受性审计")
    p.add_argument("--input", required=True)
    p.add_argument("--strict", action="store_true", help="可接受性失败也视为错误")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lattice", help="L(p) 元素与平移界")
    p.add_argument("--p", type=_int_list, required=True)
    p.add_argument("--det", action="append", required=True, help="形如 a;a_1,...,a_t，可重复")
    p.add_argument("--tau", type=int, default=0, help="打印 τⁿ 作用后的行列式")

    p = sub.add_parser("pairs", help="在小秩模池中搜索正交例外对")
    _add_algebra_args(p)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("verify-suite", help="运行验收套件")
    _add_algebra_args(p)
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="只运行指定套件，可重复")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--json", action="store_true")
    return parser


# ---- 输出 ----

def _write(text: str, out: Optional[str]):
    if out:
        formats.write_text(out, text)
    else:
        sys.stdout.write(text)


def _print_report(report: Report, as_json: bool):
    if as_json:
        print(report.model_dump_json(indent=2))
    else:
        print("\n".join(report.summary_lines()))


def _algebra(args) -> CanonicalAlgebra:
    return algebra_service.build(args.p, args.lambdas)


# ---- 子命令 ----

def cmd_algebra(args) -> int:
    alg = _algebra(args)
    chi = lattice.euler_characteristic(alg.p)
    print(f"weights={','.join(map(str, alg.p))} lambdas={','.join(format_scalar(x) for x in alg.lambdas)}")
    print(f"vertices={len(alg.vertices)} arrows={len(alg.arrows)} relations={len(alg.relations())}")
    print(f"chi={format_scalar(chi)} wild={str(chi < 0).lower()}")
    print(f"omega={lattice.format_element(lattice.dualizing_element(alg.p))}")
    print(f"D(lambda)={{{', '.join(format_scalar(x) for x in sorted(alg.coefficient_set()))}}}")
    for rel in alg.relations():
        print(f"relation {rel.arm}: arm {rel.arm} = arm 1 + {format_scalar(rel.lam)} * arm 2")
    if args.out:
        formats.write_text(args.out, formats.emit_algebra(alg))
    return EXIT_OK


def cmd_module(args) -> int:
    alg = _algebra(args)
    if args.kind == "regular":
        m = regular_exceptional(alg, RegularSpec(arm=args.arm, a=args.a, l=args.l))
    elif args.kind == "rank1":
        m = rank_one(alg, RankOneSpec(r=tuple(args.r), n=args.n))
    else:
        if args.vertex not in alg.vertex_index:
            raise ValueError(f"未知的顶点标签: {args.vertex}")
        m = projective(alg, alg.vertex_index[args.vertex])
    text = formats.emit_latex(m) if args.emit == "latex" else formats.emit_rep(m)
    _write(text, args.out)
    return EXIT_OK


def cmd_ext(args) -> int:
    x = formats.read_rep(args.x)
    y = formats.read_rep(args.y)
    model = ExtModel(x, y)
    hom, ext = model.hom_dim, model.ext_dim
    if args.cocycles:
        families = [model.c1_families(v) for v in model.ext_cocycles]
        sys.stdout.write(formats.emit_cocycles(hom, ext, x.algebra, families))
    else:
        print(f"hom={hom} ext={ext}")
    return EXIT_OK


def cmd_kron(args) -> int:
    rep = kronecker.exceptional_representation(args.n, args.side, args.k)
    text = formats.emit_theta_latex(rep) if args.emit == "latex" else formats.emit_theta(rep)
    if args.out or args.emit == "latex":
        _write(text, args.out)
    else:
        print(f"v={rep.v} u={rep.u}")
        sys.stdout.write(text)
    return EXIT_OK


def cmd_schofield(args) -> int:
    x = formats.read_rep(args.x)
    y = formats.read_rep(args.y)
    n = ExtModel(x, y).ext_dim
    if n < 1:
        raise ValueError(f"dim Ext(X,Y) = {n}，无法进行归纳")
    kr = kronecker.exceptional_representation(n, args.kron_side, args.kron_k)
    rec = run_induction_step(x, y, kr, args.basis)
    report = verify_induction_step(rec)
    text = formats.emit_latex(rec.m) if args.emit == "latex" else formats.emit_rep(rec.m)
    _write(text, args.out)
    _print_report(report, args.json)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_audit(args) -> int:
    m = formats.read_rep(args.input)
    report = Report(subject="audit")
    report.extend(check_relations(m))
    report.extend(coefficient_audit(m))
    severity = Severity.ERROR if args.strict else Severity.WARNING
    if rank(m) <= 0 and not args.strict:
        severity = Severity.INFO
    report.extend(acceptability_audit(m, severity))
    _print_report(report, args.json)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_lattice(args) -> int:
    dets = [lattice.parse_element(text, args.p) for text in args.det]
    for d in dets:
        line = f"det={lattice.format_element(d)} degree={lattice.degree(d)}"
        line += f" module={str(lattice.is_module_determinant(d)).lower()}"
        if args.tau:
            line += f" tau^{args.tau}={lattice.format_element(lattice.tau_det(d, args.tau))}"
        print(line)
    print(f"bound={lattice.translation_bound(dets, args.p)}")
    if lattice.is_wild(args.p):
        print(f"sharp_bound={lattice.sharp_translation_bound(dets, args.p)}")
    return EXIT_OK


def cmd_pairs(args) -> int:
    alg = _algebra(args)
    named = named_schofield_pool(alg)
    names = {id(m): name for name, m in named}
    workers = settings.workers if args.workers is None else args.workers
    pairs = find_orthogonal_pairs([m for _, m in named], workers=workers)
    for x, y, n in pairs:
        print(f"X={names[id(x)]} Y={names[id(y)]} n={n}")
    print(f"pairs={len(pairs)}")
    return EXIT_OK


def cmd_verify_suite(args) -> int:
    alg = _algebra(args)
    results = run_suites(alg, args.suite, args.workers)
    if args.json:
        print(json.dumps([r.model_dump() for r in results], ensure_ascii=False, indent=2))
    else:
        for r in results:
            print(f"{r.suite:<20} {'ok' if r.passed else 'FAIL':<5} {r.checked:>5}  {r.message}")
            for f in r.failures[:10]:
                print(f"    {f}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


COMMANDS: Dict[str, Callable] = {
    "algebra": cmd_algebra,
    "module": cmd_module,
    "ext": cmd_ext,
    "kron": cmd_kron,
    "schofield": cmd_schofield,
    "audit": cmd_audit,
    "lattice": cmd_lattice,
    "pairs": cmd_pairs,
    "verify-suite": cmd_verify_suite,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID

    try:
        return COMMANDS[args.command](args)
    except formats.RepFormatError as e:
        logger.error(f"文件格式错误: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as e:
        logger.error(f"输入无效: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_INVALID
    except RuntimeError as e:
        logger.error(f"内部一致性检查失败: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_FAILED


__all__ = ["build_parser", "run", "COMMANDS", "EXIT_OK", "EXIT_FAILED", "EXIT_INVALID"]
