#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
使用示例：wGr(2,4) 上的加权Schubert演算
演示限制表、Pieri公式、结构常数及其 wu 展开、非等变特化与Kawasaki因子
"""

import logging
import pandas as pd

from combinat import IndexSet
from schubert import build_ordinary_basis, ordinary_constants
from weighted import (WeightSystem, build_weighted_basis, build_wu_context, kawasaki_factors,
                      nonequivariant_constants, positivity_certificate, weighted_constants_formula, weighted_pieri)

# 配置日志
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def S(text):
    return IndexSet.parse(text, 4)


def show_basis(ws):
    """打印加权Schubert基的限制表"""
    print(f"=== wGr(2,4) 的加权Schubert基，{ws.label()} ===")
    basis = build_weighted_basis(4, 2, ws)
    vertices = basis.graph.vertices
    frame = pd.DataFrame({str(lam): [str(basis.restriction(lam, mu)) for mu in vertices] for lam in vertices},
                         index=[str(mu) for mu in vertices])
    print(frame.to_string())
    return basis


def show_pieri(ws):
    print("\n=== 加权Pieri公式 ===")
    for lam in (S('2,3'), S('1,4')):
        terms = weighted_pieri(lam, ws)
        covers = ' + '.join(f"({c})·wS̃_{upper.key}" for upper, c in terms.covers.items())
        print(f"wS̃_div·wS̃_{lam.key} = ({terms.coeff_self})·wS̃_{lam.key} + {covers}")


def show_constants(ws, ordinary):
    print("\n=== 结构常数 wS̃_23·wS̃_23 与 wS̃_23·wS̃_14 ===")
    wu = build_wu_context(ws, 2)
    rows = []
    for lam, mu in ((S('2,3'), S('2,3')), (S('2,3'), S('1,4'))):
        for nu, value in weighted_constants_formula(lam, mu, ws, ordinary).items():
            if value.is_zero:
                continue
            certificate = positivity_certificate(value, ws, wu)
            rows.append({'λ': lam.key, 'μ': mu.key, 'ν': nu.key, 'wu 展开': certificate.to_json(),
                         '非负': certificate.nonneg})
    print(pd.DataFrame(rows).to_string(index=False))


def show_nonequivariant(ws, ordinary):
    print("\n=== 非等变结构常数 ===")
    values = nonequivariant_constants(S('2,3'), S('2,3'), ws, ordinary)
    print(f"wc_{{23,23}}^{{12}} = {values[S('1,2')]}")


def main():
    """主函数"""
    ws = WeightSystem((0, 1, 2, 3), 1)
    ordinary = build_ordinary_basis(4, 2)
    print("=== 普通情形：S̃_23·S̃_23 ===")
    for nu, value in ordinary_constants(S('2,3'), S('2,3'), ordinary).items():
        if not value.is_zero:
            print(f"  c̃^{nu.key} = {value}")
    show_basis(ws)
    show_pieri(ws)
    show_constants(ws, ordinary)
    show_nonequivariant(ws, ordinary)
    print("\n=== Kawasaki因子 b = (1,1,2) ===")
    factors = kawasaki_factors((1, 1, 2))
    print(f"l = {list(factors.l)}, 倍数 = {[str(m) for m in factors.multiples]}")
    logger.info("示例运行完成")


if __name__ == "__main__":
    main()
