#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
加权Grassmann流形 wGr(d,n) 的等变Schubert演算

包括 w_λ、两条独立路线构造的加权限制表、加权Pieri公式、加权Kostka系数 K_{1^r η}^ν、
wu 线性型与 wu_I^(r)、结构常数的闭公式与GKM路线、正性证书、递推恒等式、
非等变特化、wGr(1,n) 的Stanley–Reisner模型以及Kawasaki因子。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd, lcm, prod
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from combinat import (IndexSet, apply_inversion, bruhat_leq, covered_elements, covering_elements,
                      distinguished_elements, inversions, length, saturated_chains)
from gkm import (Flavor, MomentGraph, RestrictionVector, build_graph, constant_vector,
                 expand_in_schubert_basis, pointwise_multiply, verified_factors, weighted_context, y_sum)
from poly import (NOT_IN_SUBRING, LinearForm, Polynomial, VariableContext, expand_in_forms, linear_rank,
                  require_exact_divide, substitute_linear)
from schubert import OrdinaryBasis, Pair, UExpansion, build_ordinary_basis, ordinary_constants, u_expand

logger = logging.getLogger(__name__)


class RouteMismatchError(RuntimeError):
    """两条独立计算路线的结果不一致"""

    def __init__(self, message: str, mismatches: Sequence = ()):
        super().__init__(message)
        self.mismatches = list(mismatches)


@dataclass(frozen=True)
class WeightSystem:
    """权重 w = (w_1..w_n) ∈ Z≥0^n 与 a ∈ Z≥1"""
    w: Tuple[int, ...]
    a: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'w', tuple(self.w))
        if not self.w:
            raise ValueError("权重不能为空")
        if any(not isinstance(x, int) or x < 0 for x in self.w):
            raise ValueError(f"权重必须是非负整数: {self.w}")
        if not isinstance(self.a, int) or self.a < 1:
            raise ValueError(f"a 必须是正整数: {self.a}")

    @classmethod
    def trivial(cls, n: int) -> 'WeightSystem':
        return cls((0,) * n, 1)

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def b(self) -> Tuple[int, ...]:
        """射影空间的权 b_i = w_i + a"""
        return tuple(x + self.a for x in self.w)

    @property
    def is_trivial(self) -> bool:
        return self.a == 1 and not any(self.w)

    def is_sorted(self) -> bool:
        return all(x <= y for x, y in zip(self.w, self.w[1:]))

    def total(self, lam: IndexSet) -> int:
        """w_λ := a + Σ_{i∈λ} w_i"""
        if lam.n != self.n:
            raise ValueError(f"{lam} 属于 n={lam.n}，权重个数为 {self.n}")
        return self.a + sum(self.w[i - 1] for i in lam.elements)

    def sorted_weights(self) -> Tuple['WeightSystem', Tuple[int, ...]]:
        """
        把权重排成非降序，返回 (新权重系统, 置换)

        置换的第 j 个分量是排序后第 j+1 个坐标原来的编号（1起）；不会自动重排用户给出的子集。
        """
        permutation = tuple(sorted(range(1, self.n + 1), key=lambda i: (self.w[i - 1], i)))
        return WeightSystem(tuple(self.w[i - 1] for i in permutation), self.a), permutation

    def label(self) -> str:
        return f"w=({','.join(str(x) for x in self.w)}), a={self.a}"


def w_total(lam: IndexSet, ws: WeightSystem) -> int:
    return ws.total(lam)


def _ident(ws: WeightSystem, d: int) -> IndexSet:
    return distinguished_elements(ws.n, d)[0]


def substitution_map(mu: IndexSet, ws: WeightSystem) -> Dict[str, Polynomial]:
    """顶点 μ 处的坐标变换 y_i ↦ Y^w_i − (w_i/w_μ) Y^w_μ"""
    ctx = weighted_context(mu.n)
    y_w_mu = y_sum(mu, ctx, 'Yw')
    w_mu = ws.total(mu)
    return {f"y{i}": ctx.var(f"Yw{i}") - y_w_mu.scale(Fraction(ws.w[i - 1], w_mu)) for i in range(1, mu.n + 1)}


def weighted_restriction_by_substitution(lam: IndexSet, mu: IndexSet, ordinary: OrdinaryBasis,
                                         ws: WeightSystem) -> Polynomial:
    return substitute_linear(ordinary.restriction(lam, mu), substitution_map(mu, ws), weighted_context(mu.n))


def rename_ordinary(p: Polynomial) -> Polynomial:
    """y_i ↦ Y^w_i（平凡权重下的变量改名）"""
    n = p.context.arity
    ctx = weighted_context(n)
    return substitute_linear(p, {f"y{i}": ctx.var(f"Yw{i}") for i in range(1, n + 1)}, ctx)


def weighted_diagonal_factors(lam: IndexSet, ws: WeightSystem) -> List[Polynomial]:
    """wS̃_λ|_λ 的一次因子 y^w_{(k,l)λ} − (w_{(k,l)λ}/w_λ) y^w_λ，(k,l) ∈ inv(λ)"""
    ctx = weighted_context(lam.n)
    y_w_lam = y_sum(lam, ctx, 'Yw')
    w_lam = ws.total(lam)
    factors = []
    for inv in inversions(lam):
        moved = apply_inversion(lam, inv)
        factors.append(y_sum(moved, ctx, 'Yw') - y_w_lam.scale(Fraction(ws.total(moved), w_lam)))
    return factors


def weighted_diagonal(lam: IndexSet, ws: WeightSystem) -> Polynomial:
    """wS̃_λ|_λ = ∏_{(k,l)∈inv(λ)} (y^w_{(k,l)λ} − (w_{(k,l)λ}/w_λ) y^w_λ)"""
    result = weighted_context(lam.n).one()
    for factor in weighted_diagonal_factors(lam, ws):
        result = result * factor
    return result


def divisor_value(nu: IndexSet, ws: WeightSystem) -> Polynomial:
    """wS̃_div|_ν = y^w_id − (w_id/w_ν) y^w_ν，同时也是Pieri公式中 λ=ν 时的自身系数"""
    ctx = weighted_context(nu.n)
    ident = _ident(ws, nu.d)
    return y_sum(ident, ctx, 'Yw') - y_sum(nu, ctx, 'Yw').scale(Fraction(ws.total(ident), ws.total(nu)))


class Route(Enum):
    SUBSTITUTION = 'substitution'
    PIERI = 'pieri'


@dataclass(frozen=True)
class WeightedBasis:
    graph: MomentGraph
    weights: WeightSystem
    classes: Mapping[IndexSet, RestrictionVector]

    def __getitem__(self, lam: IndexSet) -> RestrictionVector:
        return self.classes[lam]

    def restriction(self, lam: IndexSet, mu: IndexSet) -> Polynomial:
        return self.classes[lam][mu]

    @cached_property
    def diagonal_factors(self) -> Dict[IndexSet, Tuple[Polynomial, ...]]:
        factors = {lam: weighted_diagonal_factors(lam, self.weights) for lam in self.graph.vertices}
        return verified_factors(self.classes, factors)

    @property
    def ident(self) -> IndexSet:
        return distinguished_elements(self.graph.n, self.graph.d)[0]

    @property
    def div(self) -> IndexSet:
        return distinguished_elements(self.graph.n, self.graph.d)[1]

    def as_affine_cone(self) -> Dict[IndexSet, RestrictionVector]:
        """同一组取值按 aPl(d,n)^× 的GKM模型解读"""
        return {lam: RestrictionVector(v.graph, Flavor.AFFINE_CONE, v.values, v.weights)
                for lam, v in self.classes.items()}

    def to_json(self) -> dict:
        first = self.classes[self.graph.vertices[0]].to_json()
        return {
            'space': first['space'],
            'basis': {lam.key: self.classes[lam].to_json()['class'] for lam in self.graph.vertices},
        }


def build_weighted_basis(n: int, d: int, ws: WeightSystem, route: Route = Route.SUBSTITUTION,
                         ordinary: Optional[OrdinaryBasis] = None, cap: Optional[int] = None) -> WeightedBasis:
    """
    构造加权Schubert基的完整限制表

    SUBSTITUTION: 对普通限制表逐顶点做坐标变换
    PIERI: 由加权Pieri公式按长度递减递推，
           (y^w_λ − (w_λ/w_ν) y^w_ν)·wS̃_λ|_ν = Σ_{λ'→λ} wS̃_{λ'}|_ν，对角线取乘积公式
    """
    if ws.n != n:
        raise ValueError(f"权重个数 {ws.n} 与 n={n} 不一致")
    if route is Route.SUBSTITUTION:
        if ordinary is None:
            ordinary = build_ordinary_basis(n, d, cap)
        graph = ordinary.graph
        classes = {}
        for lam in graph.vertices:
            values = {mu: weighted_restriction_by_substitution(lam, mu, ordinary, ws) for mu in graph.vertices}
            classes[lam] = RestrictionVector(graph, Flavor.WEIGHTED, values, ws)
    else:
        graph = build_graph(n, d, cap)
        ctx = weighted_context(n)
        zero = ctx.zero()
        classes = {}
        for lam in sorted(graph.vertices, key=lambda v: (-length(v), v.elements)):
            covers = covering_elements(lam)
            y_w_lam = y_sum(lam, ctx, 'Yw')
            w_lam = ws.total(lam)
            values = {}
            for nu in graph.vertices:
                if nu == lam:
                    values[nu] = weighted_diagonal(lam, ws)
                    continue
                total = zero
                for upper in covers:
                    total = total + classes[upper][nu]
                if total.is_zero:
                    values[nu] = zero
                    continue
                divisor = y_w_lam - y_sum(nu, ctx, 'Yw').scale(Fraction(w_lam, ws.total(nu)))
                values[nu] = require_exact_divide(total, divisor, f"wS̃_{lam.key}|_{nu.key}")
            classes[lam] = RestrictionVector(graph, Flavor.WEIGHTED, values, ws)
        classes = {lam: classes[lam] for lam in graph.vertices}
    logger.info(f"加权Schubert基 wGr({d},{n}) [{ws.label()}] 通过 {route.value} 路线构造完成")
    return WeightedBasis(graph, ws, classes)


@dataclass(frozen=True)
class PieriTerms:
    coeff_self: Polynomial
    covers: Mapping[IndexSet, Fraction]


def weighted_pieri(lam: IndexSet, ws: WeightSystem) -> PieriTerms:
    """wS̃_div wS̃_λ = (y^w_id − (w_id/w_λ) y^w_λ) wS̃_λ + Σ_{λ'→λ} (w_id/w_λ) wS̃_{λ'}"""
    ratio = Fraction(ws.total(_ident(ws, lam.d)), ws.total(lam))
    return PieriTerms(divisor_value(lam, ws), {upper: ratio for upper in covering_elements(lam)})


def assemble_pieri(lam: IndexSet, basis: WeightedBasis) -> RestrictionVector:
    """把Pieri公式的右端拼成限制向量"""
    terms = weighted_pieri(lam, basis.weights)
    result = basis[lam].scale(terms.coeff_self)
    for upper, coefficient in terms.covers.items():
        result = result + basis[upper].scale(coefficient)
    return result


def compositions(total: int, parts: int):
    """和为 total 的 parts 元非负整数序列"""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=16384)
def kostka(r: int, eta: IndexSet, nu: IndexSet, ws: WeightSystem) -> Polynomial:
    """
    加权Kostka系数 K_{1^r η}^ν：(wS̃_div)^r wS̃_η 展开中 wS̃_ν 的系数

    对饱和链 ν = ν⁰ → ν¹ → ⋯ → νˡ = η 与和为 r−l 的序列 J = (j_0..j_l) 求和，
    每项为 (w_ν/w_id) ∏_q (w_id/w_{ν^q}) (y^w_id − (w_id/w_{ν^q}) y^w_{ν^q})^{j_q}。
    """
    if r < 0:
        raise ValueError(f"r 必须非负: {r}")
    ctx = weighted_context(nu.n)
    if not bruhat_leq(eta, nu):
        return ctx.zero()
    steps = length(nu) - length(eta)
    if r < steps:
        return ctx.zero()
    w_id = ws.total(_ident(ws, nu.d))
    result = ctx.zero()
    for chain in saturated_chains(nu, eta):
        weight = Fraction(ws.total(nu), w_id)
        for vertex in chain:
            weight *= Fraction(w_id, ws.total(vertex))
        factors = [divisor_value(vertex, ws) for vertex in chain]
        inner = ctx.zero()
        for exponents in compositions(r - steps, steps + 1):
            term = ctx.one()
            for factor, j in zip(factors, exponents):
                if j:
                    term = term * factor ** j
            inner = inner + term
        result = result + inner.scale(weight)
    return result


def kostka_by_products(r: int, eta: IndexSet, basis: WeightedBasis) -> Dict[IndexSet, Polynomial]:
    """直接把 (wS̃_div)^r wS̃_η 在加权基下展开（用于核对 kostka）"""
    vector = basis[eta]
    divisor = basis[basis.div]
    for _ in range(r):
        vector = pointwise_multiply(divisor, vector)
    return expand_in_schubert_basis(vector, basis.classes, basis.diagonal_factors)


def w_alpha(alpha: Pair, ws: WeightSystem) -> int:
    """w(α) := w_i − w_j"""
    i, j = alpha
    if not (ws.n >= i > j >= 1):
        raise ValueError(f"需要 n ≥ i > j ≥ 1: {alpha}")
    return ws.w[i - 1] - ws.w[j - 1]


def wu_form(alpha: Pair, ws: WeightSystem, d: int) -> LinearForm:
    """wu_α := (y^w_i − y^w_j) − ((w_i − w_j)/w_id) y^w_id"""
    i, j = alpha
    delta = w_alpha(alpha, ws)
    ctx = weighted_context(ws.n)
    ident = _ident(ws, d)
    form = ctx.var(f"Yw{i}") - ctx.var(f"Yw{j}") - y_sum(ident, ctx, 'Yw').scale(Fraction(delta, ws.total(ident)))
    return LinearForm.from_polynomial(form)


@dataclass(frozen=True)
class WuContext:
    """wu_1..wu_{n−1} 与补充坐标 y^w_id"""
    weights: WeightSystem
    d: int
    forms: Tuple[LinearForm, ...]
    complement: LinearForm

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(f"wu{i}" for i in range(1, len(self.forms) + 1))


def build_wu_context(ws: WeightSystem, d: int) -> WuContext:
    forms = tuple(wu_form((i + 1, i), ws, d) for i in range(1, ws.n))
    ctx = weighted_context(ws.n)
    complement = LinearForm.from_polynomial(y_sum(_ident(ws, d), ctx, 'Yw'))
    if linear_rank(list(forms)) != ws.n - 1:
        raise ValueError(f"wu 线性型线性相关: {ws.label()}")
    if linear_rank(list(forms) + [complement]) != ws.n:
        raise ValueError(f"wu 线性型与 y^w_id 不构成基: {ws.label()}")
    return WuContext(ws, d, forms, complement)


def wu_I_r(I: Sequence[Pair], r: int, ws: WeightSystem, d: int) -> Polynomial:
    """
    wu_I^(r) = Σ_{s_1<⋯<s_r} (w(α_{s_1})/w_id)⋯(w(α_{s_r})/w_id) ∏_{s∉{s_i}} wu_{α_s}
    """
    if not 0 <= r <= len(I):
        raise ValueError(f"r={r} 超出范围 0..{len(I)}")
    ctx = weighted_context(ws.n)
    w_id = ws.total(_ident(ws, d))
    forms = [wu_form(alpha, ws, d).to_polynomial() for alpha in I]
    result = ctx.zero()
    for chosen in combinations(range(len(I)), r):
        coefficient = Fraction(1)
        term = ctx.one()
        for s, alpha in enumerate(I):
            if s in chosen:
                coefficient *= Fraction(w_alpha(alpha, ws), w_id)
            else:
                term = term * forms[s]
        result = result + term.scale(coefficient)
    return result


@lru_cache(maxsize=4096)
def wu_I_series(I: Tuple[Pair, ...], ws: WeightSystem, d: int) -> Tuple[Polynomial, ...]:
    """由生成函数 ∏ (wu_α + (w(α)/w_id) Q) = Σ_r wu_I^(r) Q^r 一次得到全部 wu_I^(r)"""
    base = weighted_context(ws.n)
    ext = VariableContext(base.names + ('Q',))
    w_id = ws.total(_ident(ws, d))
    product = ext.one()
    for alpha in I:
        form = wu_form(alpha, ws, d)
        coefficients = dict(zip(base.names, form.coefficients))
        coefficients['Q'] = Fraction(w_alpha(alpha, ws), w_id)
        product = product * ext.linear(coefficients)
    buckets: List[Dict] = [dict() for _ in range(len(I) + 1)]
    for monom, c in product.element.items():
        buckets[monom[-1]][monom[:-1]] = c
    return tuple(Polynomial(base, base.ring.from_dict(bucket)) for bucket in buckets)


def _ordinary_expansions(lam: IndexSet, mu: IndexSet, ordinary: OrdinaryBasis) -> Dict[IndexSet, UExpansion]:
    """c̃_{λμ}^η 的 u 展开（只依赖普通基，可在不同权重间复用）"""
    def compute() -> Dict[IndexSet, UExpansion]:
        expansions = {}
        for eta, value in ordinary_constants(lam, mu, ordinary).items():
            if value.is_zero:
                continue
            expansion = u_expand(value)
            if expansion is NOT_IN_SUBRING:
                raise ValueError(f"c̃_{{{lam.key},{mu.key}}}^{{{eta.key}}} 不在 Z[u] 中")
            expansions[eta] = expansion
        return expansions

    return ordinary.memo(('u_expansions', lam, mu), compute)


def weighted_constants_formula(lam: IndexSet, mu: IndexSet, ws: WeightSystem,
                               ordinary: OrdinaryBasis) -> Dict[IndexSet, Polynomial]:
    """
    闭公式路线：
    wc̃_{λμ}^ν = Σ_{ν≥η≥λ,μ} Σ_I Σ_{r=0}^{|I|} c(λ,μ,η;I) K_{1^r η}^ν wu_I^(r)
    """
    graph = ordinary.graph
    ctx = weighted_context(graph.n)
    result = {nu: ctx.zero() for nu in graph.vertices}
    for eta, expansion in _ordinary_expansions(lam, mu, ordinary).items():
        degree = max((len(I) for I in expansion.entries), default=0)
        translated = [ctx.zero() for _ in range(degree + 1)]
        for I, c in expansion.entries.items():
            series = wu_I_series(I, ws, graph.d)
            for r, part in enumerate(series):
                translated[r] = translated[r] + part.scale(c)
        for nu in graph.vertices:
            if not bruhat_leq(eta, nu):
                continue
            total = result[nu]
            for r, part in enumerate(translated):
                if part.is_zero:
                    continue
                k = kostka(r, eta, nu, ws)
                if not k.is_zero:
                    total = total + k * part
            result[nu] = total
    return result


def weighted_constants_gkm(lam: IndexSet, mu: IndexSet, ws: WeightSystem,
                           basis: WeightedBasis) -> Dict[IndexSet, Polynomial]:
    """GKM路线：逐点乘积后在加权基下展开"""
    if basis.weights != ws:
        raise ValueError("加权基与权重系统不一致")
    return expand_in_schubert_basis(pointwise_multiply(basis[lam], basis[mu]), basis.classes, basis.diagonal_factors)


def route_mismatches(first: Mapping[IndexSet, Polynomial], second: Mapping[IndexSet, Polynomial]) -> List[IndexSet]:
    return [nu for nu in first if first[nu] != second[nu]]


@dataclass(frozen=True)
class ConstantTable:
    """(λ,μ,ν) → wc̃_{λμ}^ν"""
    graph: MomentGraph
    weights: WeightSystem
    entries: Mapping[Tuple[IndexSet, IndexSet], Mapping[IndexSet, Polynomial]]

    def value(self, lam: IndexSet, mu: IndexSet, nu: IndexSet) -> Polynomial:
        return self.entries[(lam, mu)][nu]

    def pairs(self) -> List[Tuple[IndexSet, IndexSet]]:
        return list(self.entries)

    def to_json(self, with_certificates: bool = True) -> List[dict]:
        """按 (λ, μ, ν) 的固定顺序列出全部非零结构常数，可附带 wu 展开"""
        wu = build_wu_context(self.weights, self.graph.d) if with_certificates else None
        records = []
        for lam, mu in self.pairs():
            for nu in self.graph.vertices:
                value = self.value(lam, mu, nu)
                if value.is_zero:
                    continue
                record = {'lambda': lam.key, 'mu': mu.key, 'nu': nu.key, 'value': value.to_json()}
                if wu is not None:
                    certificate = positivity_certificate(value, self.weights, wu)
                    if certificate is NOT_IN_SUBRING:
                        record['wu_expansion'] = None
                        record['nonneg'] = False
                    else:
                        record['wu_expansion'] = certificate.to_json()
                        record['nonneg'] = certificate.nonneg
                records.append(record)
        return records


def build_constant_table(basis: WeightedBasis, ordinary: OrdinaryBasis,
                         pairs: Optional[Sequence[Tuple[IndexSet, IndexSet]]] = None,
                         verify: bool = True) -> ConstantTable:
    """
    计算结构常数表；verify 为真时同时走闭公式路线并要求两者逐项相等

    Raises:
        RouteMismatchError: 两条路线不一致
    """
    ws = basis.weights
    if pairs is None:
        pairs = [(lam, mu) for lam in basis.graph.vertices for mu in basis.graph.vertices]
    entries = {}
    mismatches = []
    for lam, mu in pairs:
        values = weighted_constants_gkm(lam, mu, ws, basis)
        if verify:
            formula = weighted_constants_formula(lam, mu, ws, ordinary)
            for nu in route_mismatches(values, formula):
                mismatches.append((lam, mu, nu, values[nu], formula[nu]))
        entries[(lam, mu)] = values
    if mismatches:
        logger.error(f"结构常数两条路线不一致：{len(mismatches)} 项")
        raise RouteMismatchError(f"{len(mismatches)} 个结构常数在两条路线下不一致", mismatches)
    logger.info(f"结构常数表 [{ws.label()}] 计算完成：{len(entries)} 对")
    return ConstantTable(basis.graph, ws, entries)


def trivial_degeneration_residuals(basis: WeightedBasis, ordinary: OrdinaryBasis) -> List[str]:
    """平凡权重下 wS̃_λ|_μ 应与 S̃_λ|_μ 只差变量名，返回不一致的位置"""
    if not basis.weights.is_trivial:
        raise ValueError(f"需要平凡权重: {basis.weights.label()}")
    failures = []
    for lam in basis.graph.vertices:
        for mu in basis.graph.vertices:
            if basis.restriction(lam, mu) != rename_ordinary(ordinary.restriction(lam, mu)):
                failures.append(f"wS̃_{lam.key}|_{mu.key}")
    return failures


def recursive_identity_residual(lam: IndexSet, mu: IndexSet, nu: IndexSet, ws: WeightSystem,
                                constants: ConstantTable) -> Polynomial:
    """
    (wS̃_div|_ν − wS̃_div|_λ) wc̃_{λμ}^ν
      − (Σ_{λ'→λ} (w_id/w_λ) wc̃_{λ'μ}^ν − Σ_{ν→ν'} (w_id/w_{ν'}) wc̃_{λμ}^{ν'})
    """
    w_id = ws.total(_ident(ws, lam.d))
    left = (divisor_value(nu, ws) - divisor_value(lam, ws)) * constants.value(lam, mu, nu)
    right = weighted_context(lam.n).zero()
    for upper in covering_elements(lam):
        right = right + constants.value(upper, mu, nu).scale(Fraction(w_id, ws.total(lam)))
    for lower in covered_elements(nu):
        right = right - constants.value(lam, mu, lower).scale(Fraction(w_id, ws.total(lower)))
    return left - right


def monomial_label(names: Sequence[str], monom: Sequence[int]) -> str:
    parts = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e]
    return '*'.join(parts) if parts else '1'


@dataclass(frozen=True)
class PositivityCertificate:
    names: Tuple[str, ...]
    coeffs: Mapping[Tuple[int, ...], Fraction]
    nonneg: bool

    def to_json(self) -> Dict[str, str]:
        return {monomial_label(self.names, m): f"{c.numerator}/{c.denominator}" for m, c in self.coeffs.items()}

    def constant_term(self) -> Fraction:
        return self.coeffs.get((0,) * len(self.names), Fraction(0))


def positivity_certificate(p: Polynomial, ws: WeightSystem, wu: WuContext):
    """
    把 p 改写为 wu_1..wu_{n−1} 的多项式并判断系数是否全部非负

    Returns:
        PositivityCertificate，或 p 依赖 y^w_id 时返回 NOT_IN_SUBRING
    """
    if wu.weights != ws:
        raise ValueError("wu 上下文与权重系统不一致")
    rewritten = expand_in_forms(p, wu.forms, [wu.complement], wu.names)
    if rewritten is NOT_IN_SUBRING:
        return NOT_IN_SUBRING
    coeffs = {monom: c for monom, c in rewritten.terms()}
    return PositivityCertificate(wu.names, coeffs, all(c >= 0 for c in coeffs.values()))


def nonequivariant_limit(p: Polynomial, ws: WeightSystem, wu: WuContext) -> Fraction:
    """wu_1 = ⋯ = wu_{n−1} = 0 时的取值"""
    certificate = positivity_certificate(p, ws, wu)
    if certificate is NOT_IN_SUBRING:
        raise ValueError(f"{p} 不在 wu 生成的子环中")
    return certificate.constant_term()


def _evaluate_at_weight_differences(expansion: UExpansion, ws: WeightSystem) -> Fraction:
    """c̃(u_i = w_{i+1} − w_i)"""
    total = Fraction(0)
    for I, c in expansion.entries.items():
        total += c * prod((w_alpha(alpha, ws) for alpha in I), start=Fraction(1))
    return total


def nonequivariant_constants(lam: IndexSet, mu: IndexSet, ws: WeightSystem,
                             ordinary: OrdinaryBasis) -> Dict[IndexSet, Fraction]:
    """
    普通上同调 H*(wGr) 的结构常数 wc_{λμ}^ν

    链求和公式：l(λ)+l(μ) = l(ν) 时
      wc = Σ_{ν≥η≥λ,μ} Σ_{ν=ν⁰→⋯→νˡ=η} c̃_{λμ}^η(u_i = w_{i+1}−w_i) / (w_{ν¹}⋯w_{νˡ})，
    否则为零；同时与闭公式在 wu → 0 时的极限比较，不一致即报错。
    """
    graph = ordinary.graph
    expansions = _ordinary_expansions(lam, mu, ordinary)
    target = length(lam) + length(mu)
    chain_values = {}
    for nu in graph.vertices:
        value = Fraction(0)
        if length(nu) == target:
            for eta, expansion in expansions.items():
                if not bruhat_leq(eta, nu):
                    continue
                evaluated = _evaluate_at_weight_differences(expansion, ws)
                for chain in saturated_chains(nu, eta):
                    value += evaluated / prod((ws.total(v) for v in chain[1:]), start=1)
        chain_values[nu] = value
    wu = build_wu_context(ws, graph.d)
    equivariant = weighted_constants_formula(lam, mu, ws, ordinary)
    limits = {nu: nonequivariant_limit(equivariant[nu], ws, wu) for nu in graph.vertices}
    mismatches = [nu for nu in graph.vertices if limits[nu] != chain_values[nu]]
    if mismatches:
        raise RouteMismatchError(
            f"wc_{{{lam.key},{mu.key}}}: 链求和公式与 wu→0 极限在 {', '.join(str(nu) for nu in mismatches)} 处不一致",
            mismatches)
    return chain_values


def translation_residuals(basis: WeightedBasis) -> List[str]:
    """
    逐顶点核对平移公式：
      y_i·1 = (y^w_i − (w_i/w_id) y^w_id)·1 + (w_i/w_id) wS̃_div
      u_α·1 = wu_α·1 + (w(α)/w_id) wS̃_div
    """
    ws = basis.weights
    graph = basis.graph
    ctx = weighted_context(graph.n)
    ident, div = basis.ident, basis.div
    w_id = ws.total(ident)
    y_w_id = y_sum(ident, ctx, 'Yw')
    divisor = basis[div]
    failures = []
    left_y = {}
    for i in range(1, graph.n + 1):
        left = {mu: substitution_map(mu, ws)[f"y{i}"] for mu in graph.vertices}
        left_y[i] = left
        shift = Fraction(ws.w[i - 1], w_id)
        right = constant_vector(graph, Flavor.WEIGHTED, ctx.var(f"Yw{i}") - y_w_id.scale(shift), ws) \
            + divisor.scale(shift)
        if any(left[mu] != right[mu] for mu in graph.vertices):
            failures.append(f"y{i}")
    for i in range(1, graph.n):
        alpha = (i + 1, i)
        shift = Fraction(w_alpha(alpha, ws), w_id)
        right = constant_vector(graph, Flavor.WEIGHTED, wu_form(alpha, ws, graph.d).to_polynomial(), ws) \
            + divisor.scale(shift)
        if any(left_y[i + 1][mu] - left_y[i][mu] != right[mu] for mu in graph.vertices):
            failures.append(f"u{i}")
    return failures


def search_negative_weights(n: int, d: int, rng, trials: int = 10, max_weight: int = 4,
                            ordinary: Optional[OrdinaryBasis] = None):
    """
    在非有序权重中随机搜索使某个 wu 系数为负的例子（只记录，不断言）

    Returns:
        (WeightSystem, λ, μ, ν) 或 None
    """
    if ordinary is None:
        ordinary = build_ordinary_basis(n, d)
    vertices = ordinary.graph.vertices
    for _ in range(trials):
        ws = WeightSystem(tuple(int(x) for x in rng.integers(0, max_weight + 1, size=n)), int(rng.integers(1, 3)))
        if ws.is_sorted():
            continue
        wu = build_wu_context(ws, d)
        for lam in vertices:
            for mu in vertices:
                for nu, value in weighted_constants_formula(lam, mu, ws, ordinary).items():
                    if value.is_zero:
                        continue
                    certificate = positivity_certificate(value, ws, wu)
                    if certificate is not NOT_IN_SUBRING and not certificate.nonneg:
                        logger.info(f"找到负系数例子: {ws.label()}, λ={lam}, μ={mu}, ν={nu}")
                        return ws, lam, mu, nu
    logger.info(f"在 {trials} 组非有序权重中没有找到负系数")
    return None


@dataclass
class StanleyReisnerReport:
    n: int
    weights: WeightSystem
    basis_mismatches: List[str] = field(default_factory=list)
    pieri_mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.basis_mismatches and not self.pieri_mismatches


def sr_generator_at(i: int, mu: IndexSet, ws: WeightSystem) -> Polynomial:
    """z_i := y_i + z 在顶点 μ={m} 处的值 Yw_i − (b_i/b_m) Yw_m"""
    ctx = weighted_context(mu.n)
    m = mu.elements[0]
    b = ws.b
    return ctx.var(f"Yw{i}") - ctx.var(f"Yw{m}").scale(Fraction(b[i - 1], b[m - 1]))


def stanley_reisner_check(n: int, ws: WeightSystem, basis: Optional[WeightedBasis] = None) -> StanleyReisnerReport:
    """
    wGr(1,n) 即加权射影空间：核对 wS̃_{k} = z_{k+1}⋯z_n 以及Pieri乘积
    wS̃_{n−1}·wS̃_{k} = (z_n − (b_n/b_k) z_k) wS̃_{k} + (b_n/b_k) wS̃_{k−1}
    """
    if basis is None:
        basis = build_weighted_basis(n, 1, ws)
    if basis.graph.d != 1:
        raise ValueError(f"Stanley–Reisner 模型只适用于 d=1，实际 d={basis.graph.d}")
    report = StanleyReisnerReport(n, ws)
    graph = basis.graph
    ctx = weighted_context(n)
    b = ws.b

    def point(k: int) -> IndexSet:
        return IndexSet((k,), n)

    for k in range(1, n + 1):
        for mu in graph.vertices:
            monomial = ctx.one()
            for i in range(k + 1, n + 1):
                monomial = monomial * sr_generator_at(i, mu, ws)
            if basis.restriction(point(k), mu) != monomial:
                report.basis_mismatches.append(f"wS̃_{{{k}}}|_{mu}")
    divisor = basis[point(n - 1)]
    for k in range(1, n + 1):
        ratio = Fraction(b[n - 1], b[k - 1])
        product = pointwise_multiply(divisor, basis[point(k)])
        factor = {mu: sr_generator_at(n, mu, ws) - sr_generator_at(k, mu, ws).scale(ratio) for mu in graph.vertices}
        constant = ctx.var(f"Yw{n}") - ctx.var(f"Yw{k}").scale(ratio)
        if any(factor[mu] != constant for mu in graph.vertices):
            report.pieri_mismatches.append(f"z_{n} − (b_{n}/b_{k}) z_{k} 不是常数类")
        expected = basis[point(k)].scale(constant)
        if k > 1:
            expected = expected + basis[point(k - 1)].scale(ratio)
        if product != expected:
            report.pieri_mismatches.append(f"wS̃_{{{n - 1}}}·wS̃_{{{k}}}")
        terms = weighted_pieri(point(k), ws)
        covers_expected = {point(k - 1): ratio} if k > 1 else {}
        if dict(terms.covers) != covers_expected or terms.coeff_self != constant:
            report.pieri_mismatches.append(f"Pieri系数 k={k}")
    if report.passed:
        logger.info(f"wGr(1,{n}) [{ws.label()}] Stanley–Reisner 核对通过")
    else:
        logger.warning(f"wGr(1,{n}) Stanley–Reisner 核对失败: {report.basis_mismatches + report.pieri_mismatches}")
    return report


@dataclass(frozen=True)
class KawasakiFactors:
    l: Tuple[int, ...]
    multiples: Tuple[Fraction, ...]


def kawasaki_factors(b: Sequence[int]) -> KawasakiFactors:
    """
    l_k^b := lcm{ b_{i_1}⋯b_{i_k} / gcd(b_{i_1},⋯,b_{i_k}) }，
    倍数 m_1 = 1，m_k = l_k^b / (b_{n−k+2}⋯b_n)（仅有理因子，不处理整系数挠部分）
    """
    b = tuple(b)
    if not b or any(not isinstance(x, int) or x < 1 for x in b):
        raise ValueError(f"b 必须是正整数序列: {b}")
    n = len(b)
    factors = []
    for k in range(1, n + 1):
        factors.append(lcm(*(prod(subset) // gcd(*subset) for subset in combinations(b, k))))
    multiples = [Fraction(1)]
    for k in range(2, n + 1):
        multiples.append(Fraction(factors[k - 1], prod(b[n - k + 1:])))
    return KawasakiFactors(tuple(factors), tuple(multiples))
