#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
加权Schubert演算命令行工具

子命令：
  basis      输出加权Schubert基的完整限制表（--ordinary 同时输出普通基）
  constants  计算结构常数表（闭公式与GKM两条路线互相核对），附 wu 展开与正性标记
  check      运行全部验证套件
  kawasaki   计算Kawasaki因子 l_k^b

退出码：0 成功，1 验证失败，2 用法错误，3 超过资源上限（顶点数或 n），4 两条路线不一致
"""

import os
import re
import sys
import json
import logging
import argparse
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from dotenv import load_dotenv

from combinat import IndexSet, ResourceLimitError, check_ambient, resolve_vertex_cap
from gkm import check_gkm, pointwise_multiply, weighted_context
from poly import InexactDivisionError, Polynomial
from schubert import OrdinaryBasis, build_ordinary_basis
from weighted import (ConstantTable, Route, RouteMismatchError, WeightSystem, WeightedBasis, assemble_pieri,
                      build_constant_table, build_weighted_basis, kawasaki_factors, kostka,
                      kostka_by_products, nonequivariant_constants,
                      recursive_identity_residual, search_negative_weights,
                      stanley_reisner_check, translation_residuals, trivial_degeneration_residuals)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_ROUTE_MISMATCH = 4

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class SpaceSpec:
    n: int
    d: int
    weights: Tuple[int, ...]
    a: int = 1

    def __post_init__(self):
        check_ambient(self.n, self.d)
        if len(self.weights) != self.n:
            raise ValueError(f"需要 {self.n} 个权重，实际给出 {len(self.weights)} 个")

    def weight_system(self) -> WeightSystem:
        return WeightSystem(tuple(self.weights), self.a)

    def to_json(self) -> dict:
        return {'n': self.n, 'd': self.d, 'weights': list(self.weights), 'a': self.a}


@dataclass
class RunConfig:
    command: str
    space: Optional[SpaceSpec] = None
    fmt: str = 'text'
    output: Optional[str] = None
    max_vertices: Optional[int] = None
    seed: int = DEFAULT_SEED
    symbolic_denominators: bool = False

    def __post_init__(self):
        if self.fmt not in ('text', 'json'):
            raise ValueError(f"输出格式必须是 text 或 json: {self.fmt}")


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ''


def parse_int_list(text: str) -> Tuple[int, ...]:
    """解析 "0,1,2,3" 形式的整数列表"""
    try:
        return tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise ValueError(f"无法解析整数列表: {text!r}")


def _dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _fraction_text(c) -> str:
    return f"{c.numerator}/{c.denominator}"


def _vertex_label(v: IndexSet) -> str:
    return v.key.replace(',', '') if v.n < 10 else v.key


VARIABLE_PREFIXES = {'Yw': 'y^w'}


class PolynomialFormatter:
    """
    把多项式写成可读文本：Yw_i 写作 y^w_i，y_i 写作 y_i

    symbolic 为真时，分母等于（或整除）某个顶点权重 w_ν 的系数写成 "k/w_{ν}"，
    便于和手算的 wGr(2,4) 限制表逐项对照。
    """

    def __init__(self, ws: Optional[WeightSystem] = None, vertices: Sequence[IndexSet] = (),
                 symbolic: bool = False):
        self.symbolic = symbolic and ws is not None
        self.labels = sorted(((ws.total(v), _vertex_label(v)) for v in vertices), key=lambda t: t[0]) \
            if self.symbolic else []

    @staticmethod
    def variable(name: str) -> str:
        match = re.fullmatch(r'([A-Za-z]+?)(\d+)', name)
        if not match:
            return name
        prefix, index = match.groups()
        return f"{VARIABLE_PREFIXES.get(prefix, prefix)}_{index}"

    def coefficient(self, c: Fraction) -> str:
        if c.denominator == 1:
            return str(c.numerator)
        if self.symbolic:
            exact = [label for value, label in self.labels if value == c.denominator]
            if exact:
                return f"{c.numerator}/w_{{{exact[0]}}}"
            for value, label in self.labels:
                if value % c.denominator == 0:
                    return f"{(c * value).numerator}/w_{{{label}}}"
        return f"{c.numerator}/{c.denominator}"

    def monomial(self, exponents: Sequence[int], names: Sequence[str]) -> str:
        parts = []
        for name, e in zip(names, exponents):
            if e == 1:
                parts.append(self.variable(name))
            elif e > 1:
                parts.append(f"({self.variable(name)})^{e}")
        return '·'.join(parts)

    def __call__(self, p: Polynomial) -> str:
        if p.is_zero:
            return '0'
        out = []
        for exponents, c in p.terms():
            sign = '-' if c < 0 else '+'
            body = self.monomial(exponents, p.context.names)
            magnitude = abs(c)
            if not body:
                term = self.coefficient(magnitude)
            elif magnitude == 1:
                term = body
            elif magnitude.denominator == 1:
                term = f"{magnitude.numerator}·{body}"
            else:
                term = f"({self.coefficient(magnitude)})·{body}"
            out.append((sign, term))
        first_sign, first = out[0]
        text = ('-' if first_sign == '-' else '') + first
        return text + ''.join(f" {sign} {term}" for sign, term in out[1:])


def restriction_frame(classes, vertices, render: Callable[[Polynomial], str] = str) -> pd.DataFrame:
    """行为Schubert类 λ，列为不动点 μ，单元格为 λ|_μ"""
    rows = {str(lam): [render(classes[lam][mu]) for mu in vertices] for lam in vertices}
    return pd.DataFrame.from_dict(rows, orient='index', columns=[str(mu) for mu in vertices])


def cmd_basis(config: RunConfig, ordinary: bool = False) -> str:
    space = config.space
    ws = space.weight_system()
    ordinary_basis = build_ordinary_basis(space.n, space.d, config.max_vertices)
    basis = build_weighted_basis(space.n, space.d, ws, Route.SUBSTITUTION, ordinary_basis)
    vertices = basis.graph.vertices
    if config.fmt == 'json':
        data = basis.to_json()
        if ordinary:
            data['ordinary'] = {lam.key: ordinary_basis[lam].to_json()['class'] for lam in vertices}
        return _dumps(data)
    render = PolynomialFormatter(ws, vertices, config.symbolic_denominators)
    sections = [f"加权Schubert基 wGr({space.d},{space.n}), {ws.label()}",
                restriction_frame(basis.classes, vertices, render).to_string()]
    if ordinary:
        sections += [f"普通Schubert基 Gr({space.d},{space.n})",
                     restriction_frame(ordinary_basis.classes, vertices, render).to_string()]
    return '\n\n'.join(sections)


def _select_pairs(vertices, lam: Optional[IndexSet], mu: Optional[IndexSet]):
    return [(x, y) for x in vertices for y in vertices
            if (lam is None or x == lam) and (mu is None or y == mu)]


def cmd_constants(config: RunConfig, lam: Optional[IndexSet] = None, mu: Optional[IndexSet] = None,
                  check_positivity: bool = False) -> Tuple[str, int]:
    """
    计算结构常数表

    Returns:
        (输出文本, 退出码)；--check-positivity 且权重非降序时，出现负系数返回退出码 1。
        权重未排序时正性不成立也不作断言，负系数只记入日志。
    """
    space = config.space
    ws = space.weight_system()
    ordinary = build_ordinary_basis(space.n, space.d, config.max_vertices)
    basis = build_weighted_basis(space.n, space.d, ws, Route.SUBSTITUTION, ordinary)
    table = build_constant_table(basis, ordinary, _select_pairs(basis.graph.vertices, lam, mu))
    records = table.to_json()
    code = EXIT_OK
    if check_positivity:
        negative = [r for r in records if not r['nonneg']]
        if negative and not ws.is_sorted():
            logger.info(f"{ws.label()} 不是非降序，{len(negative)} 个结构常数的 wu 展开含负系数（仅记录）")
            for r in negative:
                logger.debug(f"wc̃_{{{r['lambda']},{r['mu']}}}^{{{r['nu']}}} 的 wu 展开含负系数")
        elif negative:
            for r in negative:
                logger.warning(f"wc̃_{{{r['lambda']},{r['mu']}}}^{{{r['nu']}}} 的 wu 展开含负系数")
            code = EXIT_VERIFICATION
        else:
            logger.info(f"全部 {len(records)} 个非零结构常数的 wu 系数非负")
    if config.fmt == 'json':
        return _dumps({'space': space.to_json(), 'constants': records}), code
    render = PolynomialFormatter(ws, basis.graph.vertices, config.symbolic_denominators)
    frame = pd.DataFrame([{
        'λ': r['lambda'], 'μ': r['mu'], 'ν': r['nu'], 'value': render(Polynomial.from_json(r['value'])), 'nonneg': r['nonneg'],
    } for r in records], columns=['λ', 'μ', 'ν', 'value', 'nonneg'])
    return f"结构常数 wGr({space.d},{space.n}), {ws.label()}\n\n{frame.to_string(index=False)}", code


def corrupt_basis(basis: WeightedBasis) -> WeightedBasis:
    """测试用：在 wS̃_div 的一个非零限制上加 1，得到一个违反GKM条件的表"""
    div = basis.div
    target = next(mu for mu in basis.graph.vertices if mu != div and not basis[div][mu].is_zero)
    values = dict(basis[div].values)
    values[target] = values[target] + 1
    classes = dict(basis.classes)
    classes[div] = basis[div].with_values(values)
    logger.warning(f"已损坏 wS̃_{div.key}|_{target.key}（负对照）")
    return WeightedBasis(basis.graph, basis.weights, classes)


class CheckRunner:
    """依次运行全部验证套件，记录每个套件的结果"""

    def __init__(self, space: SpaceSpec, max_vertices: Optional[int] = None, seed: int = DEFAULT_SEED,
                 corrupt: bool = False):
        self.space = space
        self.ws = space.weight_system()
        self.seed = seed
        self.ordinary: OrdinaryBasis = build_ordinary_basis(space.n, space.d, max_vertices)
        self.basis = build_weighted_basis(space.n, space.d, self.ws, Route.SUBSTITUTION, self.ordinary)
        if corrupt:
            self.basis = corrupt_basis(self.basis)
        self.vertices = self.basis.graph.vertices
        self.table: Optional[ConstantTable] = None
        self.results: List[SuiteResult] = []

    def _run(self, name: str, suite: Callable[[], Sequence[str]]) -> None:
        try:
            failures = list(suite())
        except (RouteMismatchError, InexactDivisionError) as e:
            failures = [str(e)]
        passed = not failures
        detail = '; '.join(failures[:5]) + (f" ... 共 {len(failures)} 项" if len(failures) > 5 else '')
        if passed:
            logger.info(f"[通过] {name}")
        else:
            logger.error(f"[失败] {name}: {detail}")
        self.results.append(SuiteResult(name, passed, detail))

    def gkm_membership(self) -> List[str]:
        failures = []
        for lam in self.vertices:
            if check_gkm(self.ordinary[lam]):
                failures.append(f"S̃_{lam.key} (ordinary)")
            if check_gkm(self.basis[lam]):
                failures.append(f"wS̃_{lam.key} (weighted)")
        for lam, vector in self.basis.as_affine_cone().items():
            if check_gkm(vector):
                failures.append(f"wS̃_{lam.key} (affine_cone)")
        return failures

    def restriction_routes(self) -> List[str]:
        pieri = build_weighted_basis(self.space.n, self.space.d, self.ws, Route.PIERI)
        return [f"wS̃_{lam.key}" for lam in self.vertices if pieri[lam] != self.basis[lam]]

    def pieri(self) -> List[str]:
        divisor = self.basis[self.basis.div]
        return [f"wS̃_div·wS̃_{lam.key}" for lam in self.vertices
                if pointwise_multiply(divisor, self.basis[lam]) != assemble_pieri(lam, self.basis)]

    def kostka(self, max_r: int = 3) -> List[str]:
        failures = []
        for eta in self.vertices:
            for r in range(max_r + 1):
                expanded = kostka_by_products(r, eta, self.basis)
                for nu in self.vertices:
                    if expanded[nu] != kostka(r, eta, nu, self.ws):
                        failures.append(f"K_{{1^{r} {eta.key}}}^{{{nu.key}}}")
        return failures

    def constant_routes(self) -> List[str]:
        self.table = build_constant_table(self.basis, self.ordinary)
        return []

    def _require_table(self) -> ConstantTable:
        if self.table is None:
            self.table = build_constant_table(self.basis, self.ordinary, verify=False)
        return self.table

    def recursive_identity(self) -> List[str]:
        table = self._require_table()
        return [f"({lam.key},{mu.key},{nu.key})" for lam in self.vertices for mu in self.vertices
                for nu in self.vertices if not recursive_identity_residual(lam, mu, nu, self.ws, table).is_zero]

    def translation(self) -> List[str]:
        return translation_residuals(self.basis)

    def commutativity(self) -> List[str]:
        table = self._require_table()
        return [f"({lam.key},{mu.key},{nu.key})" for lam in self.vertices for mu in self.vertices
                for nu in self.vertices if table.value(lam, mu, nu) != table.value(mu, lam, nu)]

    def associativity(self) -> List[str]:
        table = self._require_table()
        zero = weighted_context(self.space.n).zero()
        failures = []
        for lam in self.vertices:
            for mu in self.vertices:
                for nu in self.vertices:
                    for kappa in self.vertices:
                        left = right = zero
                        for eta in self.vertices:
                            left = left + table.value(lam, mu, eta) * table.value(eta, nu, kappa)
                            right = right + table.value(mu, nu, eta) * table.value(lam, eta, kappa)
                        if left != right:
                            failures.append(f"({lam.key},{mu.key},{nu.key};{kappa.key})")
        return failures

    def positivity(self) -> List[str]:
        if not self.ws.is_sorted():
            logger.info(f"权重 {self.ws.label()} 不是非降序，跳过正性断言")
            return []
        table = self._require_table()
        return [f"({r['lambda']},{r['mu']},{r['nu']})" for r in table.to_json() if not r['nonneg']]

    def nonequivariant(self) -> List[str]:
        failures = []
        for lam in self.vertices:
            for mu in self.vertices:
                values = nonequivariant_constants(lam, mu, self.ws, self.ordinary)
                if self.ws.is_sorted():
                    failures += [f"wc_{{{lam.key},{mu.key}}}^{{{nu.key}}} < 0" for nu, v in values.items() if v < 0]
        return failures

    def degeneration(self) -> List[str]:
        return trivial_degeneration_residuals(self.basis, self.ordinary)

    def stanley_reisner(self) -> List[str]:
        report = stanley_reisner_check(self.space.n, self.ws, self.basis)
        return report.basis_mismatches + report.pieri_mismatches

    def negative_search(self) -> List[str]:
        rng = np.random.default_rng(self.seed)
        found = search_negative_weights(self.space.n, self.space.d, rng, trials=3, ordinary=self.ordinary)
        if found is not None:
            ws, lam, mu, nu = found
            logger.info(f"非有序权重 {ws.label()} 下 wc̃_{{{lam.key},{mu.key}}}^{{{nu.key}}} 有负的 wu 系数")
        return []

    def run(self) -> List[SuiteResult]:
        self._run('gkm_membership', self.gkm_membership)
        self._run('restriction_routes', self.restriction_routes)
        self._run('pieri', self.pieri)
        self._run('kostka', self.kostka)
        self._run('constant_routes', self.constant_routes)
        self._run('recursive_identity', self.recursive_identity)
        self._run('translation', self.translation)
        self._run('commutativity', self.commutativity)
        self._run('associativity', self.associativity)
        self._run('positivity', self.positivity)
        self._run('nonequivariant', self.nonequivariant)
        if self.ws.is_trivial:
            self._run('trivial_degeneration', self.degeneration)
        if self.space.d == 1:
            self._run('stanley_reisner', self.stanley_reisner)
        if self.ws.is_sorted() and self.space.d == 2 and self.space.n == 4:
            self._run('negative_search', self.negative_search)
        return self.results


def cmd_check(config: RunConfig, corrupt: bool = False) -> Tuple[str, int]:
    runner = CheckRunner(config.space, config.max_vertices, config.seed, corrupt)
    results = runner.run()
    ok = all(r.passed for r in results)
    if config.fmt == 'json':
        text = _dumps({'space': config.space.to_json(), 'passed': ok,
                       'suites': [{'name': r.name, 'passed': r.passed, 'detail': r.detail} for r in results]})
    else:
        frame = pd.DataFrame([{'suite': r.name, 'passed': r.passed, 'detail': r.detail} for r in results],
                             columns=['suite', 'passed', 'detail'])
        text = frame.to_string(index=False)
    return text, EXIT_OK if ok else EXIT_VERIFICATION


def cmd_kawasaki(b: Sequence[int], fmt: str = 'text') -> str:
    factors = kawasaki_factors(b)
    ks = range(1, len(factors.l) + 1)
    if fmt == 'json':
        return _dumps({'b': list(b), 'l': list(factors.l), 'multiples': [_fraction_text(m) for m in factors.multiples]})
    frame = pd.DataFrame({'k': list(ks), 'l_k': list(factors.l), 'multiple': [str(m) for m in factors.multiples]})
    return frame.to_string(index=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='wschub', description='加权Grassmann流形的等变Schubert演算')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['text', 'json'], default='text', help='输出格式')
    common.add_argument('--output', help='输出文件（默认标准输出）')
    common.add_argument('--verbose', action='store_true', help='输出调试日志')

    space = argparse.ArgumentParser(add_help=False, parents=[common])
    space.add_argument('--n', type=int, required=True)
    space.add_argument('--d', type=int, required=True)
    space.add_argument('--weights', help='逗号分隔的 n 个非负整数，默认全为0')
    space.add_argument('--a', type=int, default=1)
    space.add_argument('--max-vertices', type=int, help='顶点上限（覆盖 WSCHUB_MAX_VERTICES）')
    space.add_argument('--seed', type=int, help='随机检验的种子（覆盖 WSCHUB_SEED）')

    sub = parser.add_subparsers(dest='command', required=True)
    p = sub.add_parser('basis', parents=[space], help='输出加权Schubert基的限制表')
    p.add_argument('--ordinary', action='store_true', help='同时输出普通Schubert基')
    p.add_argument('--symbolic-denominators', action='store_true', help='文本输出中把分母写成顶点权重 w_ν 的形式')
    p = sub.add_parser('constants', parents=[space], help='计算结构常数')
    p.add_argument('--lambda', dest='lam', help='只计算 λ，例如 2,3')
    p.add_argument('--mu', help='只计算 μ，例如 1,4')
    p.add_argument('--check-positivity', action='store_true', help='要求全部 wu 系数非负')
    p.add_argument('--symbolic-denominators', action='store_true', help='文本输出中把分母写成顶点权重 w_ν 的形式')
    p = sub.add_parser('check', parents=[space], help='运行验证套件')
    p.add_argument('--corrupt-fixture', action='store_true', help=argparse.SUPPRESS)
    p = sub.add_parser('kawasaki', parents=[common], help='计算Kawasaki因子')
    p.add_argument('--b', required=True, help='逗号分隔的正整数')
    return parser


def setup_logging(verbose: bool = False) -> None:
    """日志写到标准错误（标准输出只用于数据），设置 WSCHUB_LOG_FILE 时另写文件"""
    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = os.getenv('WSCHUB_LOG_FILE')
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def config_from_args(args) -> RunConfig:
    space = None
    if args.command != 'kawasaki':
        weights = parse_int_list(args.weights) if args.weights else (0,) * args.n
        space = SpaceSpec(args.n, args.d, weights, args.a)
        space.weight_system()
    seed = getattr(args, 'seed', None)
    if seed is None:
        seed = int(os.getenv('WSCHUB_SEED', DEFAULT_SEED))
    return RunConfig(args.command, space, args.format, args.output,
                     resolve_vertex_cap(getattr(args, 'max_vertices', None)), seed,
                     getattr(args, 'symbolic_denominators', False))


def emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
        logger.info(f"结果已保存到 {output}")
    else:
        print(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """执行一次命令并返回退出码"""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    setup_logging(args.verbose)
    try:
        config = config_from_args(args)
        code = EXIT_OK
        if args.command == 'basis':
            text = cmd_basis(config, args.ordinary)
        elif args.command == 'constants':
            n = config.space.n
            lam = IndexSet.parse(args.lam, n) if args.lam else None
            mu = IndexSet.parse(args.mu, n) if args.mu else None
            for subset in (lam, mu):
                if subset is not None and subset.d != config.space.d:
                    raise ValueError(f"{subset} 不是 {config.space.d} 元子集")
            text, code = cmd_constants(config, lam, mu, args.check_positivity)
        elif args.command == 'check':
            text, code = cmd_check(config, args.corrupt_fixture)
        else:
            text = cmd_kawasaki(parse_int_list(args.b), config.fmt)
        emit(text, config.output)
        return code
    except ResourceLimitError as e:
        logger.error(f"超过资源上限: {e}")
        return EXIT_RESOURCE
    except RouteMismatchError as e:
        logger.error(f"两条路线不一致: {e}")
        for mismatch in e.mismatches:
            logger.error(f"  {mismatch}")
        return EXIT_ROUTE_MISMATCH
    except InexactDivisionError as e:
        logger.error(f"精确除法失败: {e}")
        return EXIT_VERIFICATION
    except ValueError as e:
        logger.error(f"参数错误: {e}")
        return EXIT_USAGE


def main():
    """主函数"""
    sys.exit(run())


if __name__ == "__main__":
    main()
