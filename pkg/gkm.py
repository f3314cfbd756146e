#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
矩图（GKM）模型
不动点上的限制向量、边的生成、三种空间的GKM条件检验、逐点乘积以及Schubert基下的上三角展开
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from combinat import (IndexSet, bruhat_leq, bruhat_sort_key, enumerate_index_sets)
from poly import (NOT_DIVISIBLE, InexactDivisionError, LinearForm, Polynomial, VariableContext,
                  exact_divide, exact_divide_by_factors, reduce_modulo, substitute_linear)

if TYPE_CHECKING:
    from weighted import WeightSystem

logger = logging.getLogger(__name__)


class Flavor(Enum):
    ORDINARY = 'ordinary'
    AFFINE_CONE = 'affine_cone'
    WEIGHTED = 'weighted'


@lru_cache(maxsize=None)
def ordinary_context(n: int) -> VariableContext:
    """Q[T*] = Q[y_1..y_n]"""
    return VariableContext(tuple(f"y{i}" for i in range(1, n + 1)))


@lru_cache(maxsize=None)
def cone_context(n: int) -> VariableContext:
    """Q[K*] = Q[y_1..y_n, z]"""
    return VariableContext(tuple(f"y{i}" for i in range(1, n + 1)) + ('z',))


@lru_cache(maxsize=None)
def weighted_context(n: int) -> VariableContext:
    """Q[T_w*] = Q[Yw_1..Yw_n]"""
    return VariableContext(tuple(f"Yw{i}" for i in range(1, n + 1)))


def y_sum(lam: IndexSet, context: VariableContext, prefix: str = 'y') -> Polynomial:
    """y_λ := Σ_{i∈λ} y_i（prefix='Yw' 时为 y^w_λ）"""
    return context.linear({f"{prefix}{i}": 1 for i in lam.elements})


@dataclass(frozen=True)
class MomentGraph:
    """顶点为全部 d 元子集，边为 |λ∩μ| = d−1 的无序对"""
    n: int
    d: int
    vertices: Tuple[IndexSet, ...]
    edges: Tuple[Tuple[IndexSet, IndexSet], ...]

    def neighbours(self, lam: IndexSet) -> List[IndexSet]:
        return [b if a == lam else a for a, b in self.edges if lam in (a, b)]


def is_edge(lam: IndexSet, mu: IndexSet) -> bool:
    return lam.n == mu.n and lam.d == mu.d and len(set(lam.elements) & set(mu.elements)) == lam.d - 1


def build_graph(n: int, d: int, cap: Optional[int] = None) -> MomentGraph:
    """构造矩图"""
    vertices = tuple(enumerate_index_sets(n, d, cap))
    edges = tuple((a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:] if is_edge(a, b))
    logger.debug(f"矩图 Gr({d},{n}): {len(vertices)} 个顶点, {len(edges)} 条边")
    return MomentGraph(n, d, vertices, edges)


def gkm_edge_form(edge: Tuple[IndexSet, IndexSet], flavor: Flavor,
                  weights: Optional['WeightSystem'] = None) -> Union[LinearForm, Tuple[LinearForm, LinearForm]]:
    """
    边 {λ,μ} 上的GKM线性型

    ORDINARY: y_λ − y_μ
    WEIGHTED: w_μ y^w_λ − w_λ y^w_μ
    AFFINE_CONE: 线性型对 (y_λ + z, y_μ + z)
    """
    lam, mu = edge
    if not is_edge(lam, mu):
        raise ValueError(f"{lam} 与 {mu} 不构成一条边")
    n = lam.n
    if flavor is Flavor.ORDINARY:
        ctx = ordinary_context(n)
        return LinearForm.from_polynomial(y_sum(lam, ctx) - y_sum(mu, ctx))
    if weights is None:
        raise ValueError(f"{flavor.value} 需要权重系统")
    if flavor is Flavor.WEIGHTED:
        ctx = weighted_context(n)
        form = y_sum(lam, ctx, 'Yw').scale(weights.total(mu)) - y_sum(mu, ctx, 'Yw').scale(weights.total(lam))
        return LinearForm.from_polynomial(form)
    ctx = cone_context(n)
    z = ctx.var('z')
    return (LinearForm.from_polynomial(y_sum(lam, ctx) + z), LinearForm.from_polynomial(y_sum(mu, ctx) + z))


@dataclass(frozen=True)
class RestrictionVector:
    """
    一个上同调类在GKM模型中的像：每个顶点一个多项式

    ORDINARY 的取值在 y 变量中；WEIGHTED 与 AFFINE_CONE 的取值都在 Yw 变量中
    （AFFINE_CONE 在顶点 μ 处通过 z ↦ −(a/w_μ) y^w_μ 取代表元）。
    """
    graph: MomentGraph
    flavor: Flavor
    values: Mapping[IndexSet, Polynomial]
    weights: Optional['WeightSystem'] = None

    def __post_init__(self):
        missing = [v for v in self.graph.vertices if v not in self.values]
        if missing:
            raise ValueError(f"缺少顶点取值: {', '.join(str(v) for v in missing)}")
        if self.flavor is not Flavor.ORDINARY and self.weights is None:
            raise ValueError(f"{self.flavor.value} 需要权重系统")

    @property
    def context(self) -> VariableContext:
        return context_for(self.graph.n, self.flavor)

    def __getitem__(self, vertex: IndexSet) -> Polynomial:
        return self.values[vertex]

    def _check_compatible(self, other: 'RestrictionVector') -> None:
        if other.graph != self.graph or other.flavor != self.flavor or other.weights != self.weights:
            raise ValueError("限制向量的空间或类型不一致")

    def with_values(self, values: Mapping[IndexSet, Polynomial]) -> 'RestrictionVector':
        return RestrictionVector(self.graph, self.flavor, dict(values), self.weights)

    def __add__(self, other: 'RestrictionVector') -> 'RestrictionVector':
        self._check_compatible(other)
        return self.with_values({v: self[v] + other[v] for v in self.graph.vertices})

    def __sub__(self, other: 'RestrictionVector') -> 'RestrictionVector':
        self._check_compatible(other)
        return self.with_values({v: self[v] - other[v] for v in self.graph.vertices})

    def scale(self, coefficient: Union[Polynomial, int, Fraction]) -> 'RestrictionVector':
        """乘以系数环 H*(BT) 中的元素（各顶点同一个多项式）"""
        return self.with_values({v: self[v] * coefficient for v in self.graph.vertices})

    def is_zero(self) -> bool:
        return all(self[v].is_zero for v in self.graph.vertices)

    def __eq__(self, other):
        if not isinstance(other, RestrictionVector):
            return NotImplemented
        return (self.graph == other.graph and self.flavor == other.flavor and self.weights == other.weights
                and all(self[v] == other[v] for v in self.graph.vertices))

    __hash__ = None

    def to_json(self) -> dict:
        n = self.graph.n
        weights = self.weights
        return {
            'space': {
                'n': n,
                'd': self.graph.d,
                'weights': list(weights.w) if weights is not None else [0] * n,
                'a': weights.a if weights is not None else 1,
                'flavor': self.flavor.value,
            },
            'class': {v.key: self[v].to_json() for v in self.graph.vertices},
        }


def context_for(n: int, flavor: Flavor) -> VariableContext:
    return ordinary_context(n) if flavor is Flavor.ORDINARY else weighted_context(n)


def constant_vector(graph: MomentGraph, flavor: Flavor, value: Union[Polynomial, int, Fraction] = 1,
                    weights: Optional['WeightSystem'] = None) -> RestrictionVector:
    ctx = context_for(graph.n, flavor)
    poly = value if isinstance(value, Polynomial) else ctx.constant(value)
    return RestrictionVector(graph, flavor, {v: poly for v in graph.vertices}, weights)


def vector_from_json(data: dict, weights: Optional['WeightSystem'] = None) -> RestrictionVector:
    space = data['space']
    graph = build_graph(space['n'], space['d'])
    flavor = Flavor(space.get('flavor', Flavor.WEIGHTED.value))
    values = {IndexSet.parse(key, graph.n): Polynomial.from_json(p) for key, p in data['class'].items()}
    return RestrictionVector(graph, flavor, values, weights)


def lift_to_cone(p: Polynomial, weights: 'WeightSystem') -> Polynomial:
    """把 Q[T_w*] 中的元素看作 Q[K*] 中的元素：y^w_i = y_i − (w_i/a) z"""
    n = len(weights.w)
    cone = cone_context(n)
    z = cone.var('z')
    mapping = {f"Yw{i}": cone.var(f"y{i}") - z.scale(Fraction(weights.w[i - 1], weights.a)) for i in range(1, n + 1)}
    return substitute_linear(p, mapping, cone)


def check_gkm(v: RestrictionVector) -> List[Tuple[IndexSet, IndexSet]]:
    """
    逐边检验GKM条件，返回全部违反条件的边（空列表表示通过）

    ORDINARY/WEIGHTED: 取值之差能被边上的线性型整除
    AFFINE_CONE: 提升到 Q[K*] 后两端取值在 Q[K*]/(y_λ+z, y_μ+z) 中相等
    """
    violations = []
    for edge in v.graph.edges:
        lam, mu = edge
        if v.flavor is Flavor.AFFINE_CONE:
            first, second = gkm_edge_form(edge, v.flavor, v.weights)
            difference = lift_to_cone(v[lam], v.weights) - lift_to_cone(v[mu], v.weights)
            ok = reduce_modulo(difference, [first.to_polynomial(), second.to_polynomial()]).is_zero
        else:
            form = gkm_edge_form(edge, v.flavor, v.weights)
            ok = exact_divide(v[lam] - v[mu], form) is not NOT_DIVISIBLE
        if not ok:
            violations.append(edge)
    if violations:
        logger.debug(f"GKM条件在 {len(violations)} 条边上不成立")
    return violations


def pointwise_multiply(v: RestrictionVector, w: RestrictionVector) -> RestrictionVector:
    """GKM模型中的杯积就是逐点乘积"""
    v._check_compatible(w)
    return v.with_values({x: v[x] * w[x] for x in v.graph.vertices})


def expand_in_schubert_basis(v: RestrictionVector, basis: Mapping[IndexSet, RestrictionVector],
                             diagonal_factors: Optional[Mapping[IndexSet, Sequence[Polynomial]]] = None
                             ) -> Dict[IndexSet, Polynomial]:
    """
    在上三角基下展开限制向量

    按 (长度, 字典序) 从 id 向上依次求 c_λ = (v|_λ − Σ_{ν<λ} c_ν basis[ν]|_λ) / basis[λ]|_λ，
    最后检验残差在所有顶点上为零。给出 diagonal_factors 时逐个除以 basis[λ]|_λ 的一次因子。

    Returns:
        dict: {λ: c_λ}
    """
    graph = v.graph
    order = sorted(graph.vertices, key=bruhat_sort_key)
    residual = dict(v.values)
    coefficients = {}
    zero = v.context.zero()
    for lam in order:
        value = residual[lam]
        if value.is_zero:
            coefficients[lam] = zero
            continue
        factors = diagonal_factors.get(lam) if diagonal_factors is not None else None
        if factors is not None:
            q = exact_divide_by_factors(value, factors)
        else:
            q = exact_divide(value, basis[lam][lam])
        if q is NOT_DIVISIBLE:
            raise InexactDivisionError(f"在 {lam} 处展开系数不能整除: {value} / {basis[lam][lam]}")
        coefficients[lam] = q
        for mu in order:
            if mu != lam and bruhat_leq(lam, mu):
                contribution = basis[lam][mu]
                if not contribution.is_zero:
                    residual[mu] = residual[mu] - q * contribution
        residual[lam] = zero
    leftover = [mu for mu in order if not residual[mu].is_zero]
    if leftover:
        raise InexactDivisionError(f"展开后残差非零: {', '.join(str(mu) for mu in leftover)}")
    return coefficients


def verified_factors(basis: Mapping[IndexSet, RestrictionVector],
                     factors: Mapping[IndexSet, Sequence[Polynomial]]) -> Dict[IndexSet, Tuple[Polynomial, ...]]:
    """只保留乘积确实等于 basis[λ]|_λ 的因子分解"""
    kept = {}
    for lam, parts in factors.items():
        product = basis[lam][lam].context.one()
        for part in parts:
            product = product * part
        if product == basis[lam][lam]:
            kept[lam] = tuple(parts)
        else:
            logger.warning(f"{lam} 处的对角因子与限制表不一致，改为整体除法")
    return kept
