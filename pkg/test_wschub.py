#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试命令行工具：子命令输出、JSON格式、退出码与确定性
"""

import sys
import os
import json
import tempfile

# 添加当前目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fractions import Fraction

from combinat import IndexSet, enumerate_index_sets
from gkm import ordinary_context, weighted_context
from poly import Polynomial
from weighted import WeightSystem
from wschub import (EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VERIFICATION, CheckRunner, PolynomialFormatter,
                    RunConfig, SpaceSpec,
                    cmd_basis, cmd_constants, cmd_kawasaki, run)

def run_to_file(argv):
    """执行命令并读取输出文件，返回 (退出码, 文本)"""
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'out.txt')
        code = run(list(argv) + ['--output', path])
        text = open(path, encoding='utf-8').read() if os.path.exists(path) else ''
    return code, text

def test_kawasaki_command():
    print("=== 测试 kawasaki 子命令 ===")
    code, text = run_to_file(['kawasaki', '--b', '1,1,2', '--format', 'json'])
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['l'] == [1, 2, 2] and data['multiples'] == ['1/1', '1/1', '1/1']
    code, text = run_to_file(['kawasaki', '--b', '1,1,1', '--format', 'json'])
    assert json.loads(text)['l'] == [1, 1, 1]
    assert run(['kawasaki', '--b', '0,1']) == EXIT_USAGE
    assert 'l_k' in cmd_kawasaki((2, 3, 4))
    print("✓ kawasaki 子命令正确")

def test_usage_errors():
    print("=== 测试用法错误与资源上限 ===")
    assert run(['basis', '--n', '4', '--d', '4']) == EXIT_USAGE
    assert run(['basis', '--n', '4', '--d', '2', '--weights', '0,1,2']) == EXIT_USAGE
    assert run(['basis', '--n', '4', '--d', '2', '--weights', '0,-1,2,3']) == EXIT_USAGE
    assert run(['basis', '--n', '4', '--d', '2', '--a', '0']) == EXIT_USAGE
    assert run(['constants', '--n', '4', '--d', '2', '--lambda', '1,2,3']) == EXIT_USAGE
    assert run(['nonsense']) == EXIT_USAGE
    assert run(['basis', '--n', '6', '--d', '3', '--max-vertices', '10']) == EXIT_RESOURCE
    try:
        RunConfig('basis', fmt='xml')
        assert False
    except ValueError:
        pass
    print("✓ 退出码正确")

def test_basis_command():
    print("=== 测试 basis 子命令 ===")
    code, text = run_to_file(['basis', '--n', '4', '--d', '2', '--weights', '0,0,0,0', '--a', '1',
                              '--format', 'json', '--ordinary'])
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['space']['flavor'] == 'weighted'
    assert list(data['basis']) == ['1,2', '1,3', '1,4', '2,3', '2,4', '3,4']
    assert all(len(row) == 6 for row in data['basis'].values())
    # 平凡权重下与普通基只差变量名
    for lam, row in data['basis'].items():
        for mu, value in row.items():
            assert [t['c'] for t in value['terms']] == [t['c'] for t in data['ordinary'][lam][mu]['terms']]
    config = RunConfig('basis', SpaceSpec(4, 2, (0, 1, 2, 3), 1))
    text = cmd_basis(config)
    assert '{1,4}' in text and 'wGr(2,4)' in text
    print("✓ basis 子命令正确")

def test_constants_command():
    print("=== 测试 constants 子命令 ===")
    code, text = run_to_file(['constants', '--n', '4', '--d', '2', '--weights', '0,1,2,3', '--a', '1',
                              '--lambda', '2,3', '--mu', '1,4', '--format', 'json'])
    assert code == EXIT_OK
    data = json.loads(text)
    entries = {r['nu']: r for r in data['constants']}
    assert set(entries) == {'1,2', '1,3'}
    # (w4 − w1)/w13 = 3/3
    assert Polynomial.from_json(entries['1,2']['value']) == 1
    assert entries['1,2']['wu_expansion'] == {'1': '1/1'}
    assert all(r['nonneg'] for r in data['constants'])

    config = RunConfig('constants', SpaceSpec(4, 2, (0, 1, 2, 3), 1), fmt='json')
    text, code = cmd_constants(config, check_positivity=True)
    assert code == EXIT_OK
    assert len(json.loads(text)['constants']) > 0

    config = RunConfig('constants', SpaceSpec(4, 2, (0, 0, 0, 0), 1), fmt='json')
    text, _ = cmd_constants(config, IndexSet.parse('2,3', 4), IndexSet.parse('2,3', 4))
    values = {r['nu']: Polynomial.from_json(r['value']) for r in json.loads(text)['constants']}
    assert values['1,2'] == 1 and values['1,3'].degree() == 1 and values['2,3'].degree() == 2
    print("✓ constants 子命令正确")

def test_determinism():
    print("=== 测试输出的确定性 ===")
    argv = ['constants', '--n', '4', '--d', '2', '--weights', '1,2,2,5', '--a', '3', '--format', 'json']
    first = run_to_file(argv)
    second = run_to_file(argv)
    assert first == second and first[0] == EXIT_OK
    print("✓ 相同命令输出完全相同")

def test_check_command():
    print("=== 测试 check 子命令 ===")
    code, text = run_to_file(['check', '--n', '4', '--d', '2', '--weights', '0,1,2,3', '--a', '1',
                              '--format', 'json'])
    assert code == EXIT_OK
    report = json.loads(text)
    assert report['passed'] and {'gkm_membership', 'constant_routes', 'positivity'} <= {s['name'] for s in report['suites']}

    code, text = run_to_file(['check', '--n', '4', '--d', '1', '--weights', '0,0,1,1', '--a', '1', '--format', 'json'])
    assert code == EXIT_OK
    assert 'stanley_reisner' in {s['name'] for s in json.loads(text)['suites']}

    code, text = run_to_file(['check', '--n', '4', '--d', '2', '--weights', '0,1,2,3', '--corrupt-fixture',
                              '--format', 'json'])
    assert code == EXIT_VERIFICATION
    failed = {s['name'] for s in json.loads(text)['suites'] if not s['passed']}
    assert 'gkm_membership' in failed
    print("✓ check 子命令正确")

def test_check_runner_trivial():
    print("=== 测试平凡权重的验证套件 ===")
    runner = CheckRunner(SpaceSpec(4, 2, (0, 0, 0, 0), 1))
    results = runner.run()
    assert all(r.passed for r in results), [r for r in results if not r.passed]
    assert 'trivial_degeneration' in {r.name for r in results}
    table = runner.table
    assert table.value(IndexSet.parse('2,4', 4), IndexSet.parse('2,4', 4), IndexSet.parse('1,4', 4)) == Fraction(1)
    print("✓ 平凡权重下全部套件通过")

def test_positivity_unsorted_weights():
    print("=== 测试未排序权重下的 --check-positivity ===")
    for weights in ('3,1,4,1', '4,0,0,0', '0,3,0,1', '5,1,0,2'):
        code = run(['constants', '--n', '4', '--d', '2', '--weights', weights, '--a', '2',
                    '--check-positivity', '--format', 'json', '--output', os.devnull])
        assert code == EXIT_OK, weights
    code = run(['constants', '--n', '4', '--d', '2', '--weights', '0,1,2,3', '--a', '1',
                '--check-positivity', '--format', 'json', '--output', os.devnull])
    assert code == EXIT_OK
    print("✓ 未排序权重只记录负系数，不判为失败")

def test_polynomial_formatter():
    print("=== 测试多项式文本格式 ===")
    ws = WeightSystem((0, 1, 2, 3), 1)
    vertices = enumerate_index_sets(4, 2)
    ctx = weighted_context(4)
    p = ctx.var('Yw2') - ctx.var('Yw1').scale(Fraction(5, 4))
    assert PolynomialFormatter()(p) == '-(5/4)·y^w_1 + y^w_2'
    symbolic = PolynomialFormatter(ws, vertices, symbolic=True)
    # w_14 = 1 + 0 + 3 = 4
    assert symbolic(p) == '-(5/w_{14})·y^w_1 + y^w_2'
    assert symbolic(ctx.constant(Fraction(3, 2))) == '3/w_{12}'
    assert symbolic(ctx.constant(Fraction(1, 5))) == '1/w_{24}'
    assert symbolic(ctx.constant(Fraction(1, 7))) == '1/7'
    assert symbolic(ctx.zero()) == '0'
    assert PolynomialFormatter()(ordinary_context(4).var('y3') ** 2) == '(y_3)^2'

    argv = ['basis', '--n', '4', '--d', '2', '--weights', '0,1,2,3', '--a', '1']
    code, plain = run_to_file(argv)
    assert code == EXIT_OK and 'y^w_' in plain and 'Yw' not in plain and 'w_{' not in plain
    code, text = run_to_file(argv + ['--symbolic-denominators'])
    assert code == EXIT_OK and 'w_{' in text
    code, text = run_to_file(['constants', '--n', '4', '--d', '2', '--weights', '0,1,2,3', '--a', '1',
                              '--symbolic-denominators'])
    assert code == EXIT_OK and 'y^w_' in text
    print("✓ y^w 记号与符号分母输出正确")


if __name__ == "__main__":
    print("开始测试命令行工具...")
    print("=" * 50)
    test_kawasaki_command()
    test_usage_errors()
    test_basis_command()
    test_constants_command()
    test_determinism()
    test_check_command()
    test_check_runner_trivial()
    test_positivity_unsorted_weights()
    test_polynomial_formatter()
    print("=" * 50)
    print("✓ 全部测试通过")
