#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Gr(d,n) 上的普通等变Schubert演算
对角限制公式、由Pieri递推得到的完整限制表、结构常数 c̃ 及其在 u 单项式下的规范展开
"""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from combinat import (IndexSet, covering_elements, distinguished_elements, inversions, length)
from gkm import (Flavor, MomentGraph, RestrictionVector, build_graph, expand_in_schubert_basis,
                 ordinary_context, pointwise_multiply, verified_factors, y_sum)
from poly import (NOT_IN_SUBRING, LinearForm, Polynomial, VariableContext, expand_in_forms,
                  require_exact_divide)

logger = logging.getLogger(__name__)

# I 中的一个元素：简单对 (i+1, i)
Pair = Tuple[int, int]


def diagonal_factors(lam: IndexSet) -> List[Polynomial]:
    """S̃_λ|_λ 的一次因子 y_l − y_k，(k,l) ∈ inv(λ)"""
    ctx = ordinary_context(lam.n)
    return [ctx.var(f"y{l}") - ctx.var(f"y{k}") for k, l in inversions(lam)]


def diagonal_restriction(lam: IndexSet) -> Polynomial:
    """S̃_λ|_λ = ∏_{(k,l)∈inv(λ)} (y_{(k,l)λ} − y_λ) = ∏ (y_l − y_k)"""
    result = ordinary_context(lam.n).one()
    for factor in diagonal_factors(lam):
        result = result * factor
    return result


def divisor_restriction(mu: IndexSet) -> Polynomial:
    """S̃_div|_μ = y_id − y_μ"""
    ctx = ordinary_context(mu.n)
    ident, _ = distinguished_elements(mu.n, mu.d)
    return y_sum(ident, ctx) - y_sum(mu, ctx)


@dataclass(frozen=True)
class OrdinaryBasis:
    graph: MomentGraph
    classes: Mapping[IndexSet, RestrictionVector]
    # 只依赖普通基的中间结果（结构常数、u 展开），在不同权重之间复用
    cache: dict = field(default_factory=dict, compare=False, repr=False)
    lock: threading.Lock = field(default_factory=threading.Lock, compare=False, repr=False)

    def restriction(self, lam: IndexSet, mu: IndexSet) -> Polynomial:
        return self.classes[lam][mu]

    def __getitem__(self, lam: IndexSet) -> RestrictionVector:
        return self.classes[lam]

    @cached_property
    def diagonal_factors(self) -> Dict[IndexSet, Tuple[Polynomial, ...]]:
        return verified_factors(self.classes, {lam: diagonal_factors(lam) for lam in self.graph.vertices})

    def memo(self, key, compute: Callable[[], object]):
        """按 key 缓存 compute() 的结果；读写都在锁内"""
        with self.lock:
            if key in self.cache:
                return self.cache[key]
        value = compute()
        with self.lock:
            return self.cache.setdefault(key, value)


def build_ordinary_basis(n: int, d: int, cap: Optional[int] = None) -> OrdinaryBasis:
    """
    按长度从高到低递推构造全部 S̃_λ|_ν

    (y_λ − y_ν)·S̃_λ|_ν = Σ_{λ'→λ} S̃_{λ'}|_ν （ν ≠ λ），对角线由 diagonal_restriction 给出；
    每一步的除法都必须是精确的。
    """
    graph = build_graph(n, d, cap)
    ctx = ordinary_context(n)
    zero = ctx.zero()
    classes: Dict[IndexSet, RestrictionVector] = {}
    for lam in sorted(graph.vertices, key=lambda v: (-length(v), v.elements)):
        covers = covering_elements(lam)
        y_lam = y_sum(lam, ctx)
        values = {}
        for nu in graph.vertices:
            if nu == lam:
                values[nu] = diagonal_restriction(lam)
                continue
            total = zero
            for upper in covers:
                total = total + classes[upper][nu]
            if total.is_zero:
                values[nu] = zero
            else:
                values[nu] = require_exact_divide(total, y_lam - y_sum(nu, ctx), f"S̃_{lam.key}|_{nu.key}")
        classes[lam] = RestrictionVector(graph, Flavor.ORDINARY, values)
    logger.info(f"普通Schubert基 Gr({d},{n}) 构造完成：{len(classes)} 个类")
    return OrdinaryBasis(graph, classes)


def ordinary_constants(lam: IndexSet, mu: IndexSet, basis: OrdinaryBasis) -> Dict[IndexSet, Polynomial]:
    """S̃_λ S̃_μ = Σ_ν c̃_{λμ}^ν S̃_ν 的全部系数"""
    product = pointwise_multiply(basis[lam], basis[mu])
    return expand_in_schubert_basis(product, basis.classes, basis.diagonal_factors)


def ordinary_constant_table(basis: OrdinaryBasis) -> Dict[Tuple[IndexSet, IndexSet], Dict[IndexSet, Polynomial]]:
    table = {}
    vertices = basis.graph.vertices
    for i, lam in enumerate(vertices):
        for mu in vertices[i:]:
            table[(lam, mu)] = ordinary_constants(lam, mu, basis)
            table[(mu, lam)] = table[(lam, mu)]
    return table


def u_forms(n: int) -> List[LinearForm]:
    """u_i := y_{i+1} − y_i，i = 1..n−1"""
    ctx = ordinary_context(n)
    return [LinearForm.from_polynomial(ctx.var(f"y{i + 1}") - ctx.var(f"y{i}")) for i in range(1, n)]


@lru_cache(maxsize=None)
def u_context(n: int) -> VariableContext:
    return VariableContext(tuple(f"u{i}" for i in range(1, n)))


@dataclass(frozen=True)
class UExpansion:
    """c̃ = Σ_I c(λ,μ,η;I) u_I，I 是简单对 (i+1,i) 的多重集（按升序排列的元组）"""
    entries: Mapping[Tuple[Pair, ...], Fraction]

    def degree(self) -> Optional[int]:
        sizes = {len(I) for I in self.entries}
        return sizes.pop() if len(sizes) == 1 else None

    def is_nonnegative_integral(self) -> bool:
        return all(c >= 0 and c.denominator == 1 for c in self.entries.values())

    def to_json(self) -> List[dict]:
        return [{'I': [list(pair) for pair in I], 'c': f"{c.numerator}/{c.denominator}"}
                for I, c in self.entries.items()]


def monomial_to_pairs(monom: Tuple[int, ...]) -> Tuple[Pair, ...]:
    """u 单项式的指数向量 → 简单对的多重集"""
    pairs = []
    for i, e in enumerate(monom, start=1):
        pairs.extend([(i + 1, i)] * e)
    return tuple(pairs)


def u_expand(c: Polynomial):
    """
    把结构常数改写为 u_1..u_{n−1} 的多项式

    Returns:
        UExpansion，或者在依赖 y_1 时返回 NOT_IN_SUBRING
    """
    n = c.context.arity
    ctx = c.context
    complement = [LinearForm.from_polynomial(ctx.var('y1'))]
    rewritten = expand_in_forms(c, u_forms(n), complement, u_context(n).names)
    if rewritten is NOT_IN_SUBRING:
        return NOT_IN_SUBRING
    entries = {monomial_to_pairs(monom): coefficient for monom, coefficient in rewritten.terms()}
    return UExpansion(entries)
