#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精确多元多项式运算
系数为任意精度有理数，基于 sympy 的稀疏多项式环（QQ 上，分次字典序）
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class ContextMismatchError(ValueError):
    """两个多项式属于不同的变量上下文"""


class InexactDivisionError(ArithmeticError):
    """构造过程中要求整除却不能整除（说明实现有误）"""


class Outcome(Enum):
    NOT_DIVISIBLE = 'NOT_DIVISIBLE'
    NOT_IN_SUBRING = 'NOT_IN_SUBRING'


NOT_DIVISIBLE = Outcome.NOT_DIVISIBLE
NOT_IN_SUBRING = Outcome.NOT_IN_SUBRING


def to_qq(value):
    """把 int / Fraction / QQ 元素转换为 QQ 元素"""
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


@dataclass(frozen=True)
class VariableContext:
    """有序的变量名列表，例如 y1..yn,z 或 Yw1..Ywn"""
    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, 'names', tuple(self.names))
        if not self.names:
            raise ValueError("变量上下文不能为空")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"变量名重复: {self.names}")

    @cached_property
    def ring(self) -> PolyRing:
        return PolyRing(self.names, QQ, grlex)

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"变量 {name} 不在上下文 {self.names} 中")

    def wrap(self, element) -> 'Polynomial':
        return Polynomial(self, element)

    def zero(self) -> 'Polynomial':
        return Polynomial(self, self.ring.zero)

    def one(self) -> 'Polynomial':
        return Polynomial(self, self.ring.one)

    def constant(self, value: Scalar) -> 'Polynomial':
        return Polynomial(self, self.ring.ground_new(to_qq(value)))

    def var(self, name: str) -> 'Polynomial':
        return Polynomial(self, self.ring.gens[self.index(name)])

    def gen(self, i: int) -> 'Polynomial':
        return Polynomial(self, self.ring.gens[i])

    def linear(self, coefficients: Mapping[str, Scalar]) -> 'Polynomial':
        """由 {变量名: 系数} 构造一次齐次多项式"""
        result = self.ring.zero
        for name, c in coefficients.items():
            if c:
                result += self.ring.gens[self.index(name)] * to_qq(c)
        return Polynomial(self, result)


class Polynomial:
    """某个变量上下文中的精确多项式；不可变"""

    __slots__ = ('context', 'element')

    def __init__(self, context: VariableContext, element):
        object.__setattr__(self, 'context', context)
        object.__setattr__(self, 'element', element)

    def __setattr__(self, key, value):
        raise AttributeError("Polynomial 是不可变的")

    def _coerce(self, other) -> 'Polynomial':
        if isinstance(other, Polynomial):
            if other.context != self.context:
                raise ContextMismatchError(f"上下文不一致: {self.context.names} 与 {other.context.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.context, self.element + other.element)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.context, self.element - other.element)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.context, other.element - self.element)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.context, self.element * other.element)

    __rmul__ = __mul__

    def __neg__(self):
        return Polynomial(self.context, -self.element)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("只支持非负整数次幂")
        return Polynomial(self.context, self.element ** exponent)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.context == other.context and self.element == other.element

    def __hash__(self):
        return hash((self.context, frozenset(self.element.items())))

    def __bool__(self):
        return bool(self.element)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return str(self.element)

    def scale(self, value: Scalar) -> 'Polynomial':
        return Polynomial(self.context, self.element.mul_ground(to_qq(value)) if value else self.context.ring.zero)

    @property
    def is_zero(self) -> bool:
        return not self.element

    def terms(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        """按分次字典序（降序）排列的 (指数向量, 系数) 列表"""
        return [(monom, to_fraction(c)) for monom, c in self.element.terms()]

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        c = self.element.get(tuple(exponents))
        return to_fraction(c) if c is not None else Fraction(0)

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.context.arity)

    def degree(self) -> int:
        """总次数；零多项式返回 -1"""
        if self.is_zero:
            return -1
        return max(sum(m) for m in self.element.itermonoms())

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.element.itermonoms()}) <= 1

    def variables(self) -> List[str]:
        used = set()
        for monom in self.element.itermonoms():
            used.update(i for i, e in enumerate(monom) if e)
        return [self.context.names[i] for i in sorted(used)]

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """在有理点处求值"""
        values = [Fraction(point[name]) if name in point else None for name in self.context.names]
        total = Fraction(0)
        for monom, c in self.terms():
            term = c
            for i, e in enumerate(monom):
                if e:
                    if values[i] is None:
                        raise ValueError(f"缺少变量 {self.context.names[i]} 的取值")
                    term *= values[i] ** e
            total += term
        return total

    def to_json(self) -> dict:
        return {
            'vars': list(self.context.names),
            'terms': [{'c': f"{c.numerator}/{c.denominator}", 'e': list(monom)} for monom, c in self.terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> 'Polynomial':
        context = VariableContext(tuple(data['vars']))
        element = context.ring.zero
        for term in data['terms']:
            monom = tuple(int(e) for e in term['e'])
            if len(monom) != context.arity:
                raise ValueError(f"指数向量长度 {len(monom)} 与变量个数 {context.arity} 不一致")
            element += context.ring.term_new(monom, to_qq(Fraction(term['c'])))
        return cls(context, element)


@dataclass(frozen=True)
class LinearForm:
    """一次齐次线性型（无常数项）"""
    context: VariableContext
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        coefficients = tuple(Fraction(c) for c in self.coefficients)
        object.__setattr__(self, 'coefficients', coefficients)
        if len(coefficients) != self.context.arity:
            raise ValueError("线性型系数个数与变量个数不一致")
        if not any(coefficients):
            raise ValueError("线性型不能为零")

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> 'LinearForm':
        if p.is_zero or p.degree() != 1 or not p.is_homogeneous():
            raise ValueError(f"{p} 不是非零一次齐次多项式")
        coefficients = [Fraction(0)] * p.context.arity
        for monom, c in p.terms():
            coefficients[monom.index(1)] = c
        return cls(p.context, tuple(coefficients))

    def to_polynomial(self) -> Polynomial:
        return self.context.linear(dict(zip(self.context.names, self.coefficients)))

    def pivot(self) -> int:
        """最后一个非零系数的变量下标"""
        return max(i for i, c in enumerate(self.coefficients) if c)

    def __str__(self):
        return str(self.to_polynomial())


def _as_polynomial(divisor: Union[LinearForm, Polynomial]) -> Polynomial:
    return divisor.to_polynomial() if isinstance(divisor, LinearForm) else divisor


def _divide_by_linear(element, divisor, ring):
    """
    按主元变量 x_k 做综合除法：divisor = c·x_k + m，m 不含 x_k

    把 p 按 x_k 的次数分片 p = Σ a_j x_k^j，则商的各片满足 b_{j−1} = (a_j − m·b_j)/c，
    最后的余式 a_0 − m·b_0 为零当且仅当整除。不能整除时返回 None。
    """
    n = ring.ngens
    k = c = None
    for i in reversed(range(n)):
        unit = tuple(1 if j == i else 0 for j in range(n))
        coefficient = divisor.get(unit)
        if coefficient:
            k, c = i, coefficient
            break
    rest = divisor - ring.term_new(unit, c)
    inverse = ring.domain.quo(ring.domain.one, c)
    slices: Dict[int, dict] = {}
    for monom, coefficient in element.items():
        slices.setdefault(monom[k], {})[monom[:k] + (0,) + monom[k + 1:]] = coefficient
    if not slices:
        return ring.zero
    quotient = {}
    b = ring.zero
    for j in range(max(slices), 0, -1):
        a_j = ring.from_dict(slices[j]) if j in slices else ring.zero
        b = (a_j - rest * b).mul_ground(inverse)
        for monom, coefficient in b.items():
            quotient[monom[:k] + (j - 1,) + monom[k + 1:]] = coefficient
    a_0 = ring.from_dict(slices[0]) if 0 in slices else ring.zero
    if a_0 - rest * b:
        return None
    return ring.from_dict(quotient)


def exact_divide(p: Polynomial, divisor: Union[LinearForm, Polynomial]):
    """
    精确除法：返回 q 使得 q·divisor = p，否则返回 NOT_DIVISIBLE

    一次除数用主元变量的综合除法；其他除数交给 sympy 的 exquo（单个多项式生成的理想以其自身为Gröbner基）。
    """
    d = _as_polynomial(divisor)
    if d.context != p.context:
        raise ContextMismatchError(f"上下文不一致: {p.context.names} 与 {d.context.names}")
    if d.is_zero:
        raise ZeroDivisionError("除数为零")
    if p.is_zero:
        return p
    if d.degree() == 1:
        q = _divide_by_linear(p.element, d.element, p.context.ring)
        return NOT_DIVISIBLE if q is None else Polynomial(p.context, q)
    if p.degree() < d.degree():
        return NOT_DIVISIBLE
    try:
        return Polynomial(p.context, p.element.exquo(d.element))
    except ExactQuotientFailed:
        return NOT_DIVISIBLE


def exact_divide_by_factors(p: Polynomial, factors: Sequence[Union[LinearForm, Polynomial]]):
    """依次除以一组因子（通常是一次型），任何一步不能整除即返回 NOT_DIVISIBLE"""
    if p.degree() < sum(_as_polynomial(f).degree() for f in factors):
        return p if p.is_zero else NOT_DIVISIBLE
    for factor in factors:
        p = exact_divide(p, factor)
        if p is NOT_DIVISIBLE:
            return NOT_DIVISIBLE
    return p


def require_exact_divide(p: Polynomial, divisor: Union[LinearForm, Polynomial], what: str = '') -> Polynomial:
    q = exact_divide(p, divisor)
    if q is NOT_DIVISIBLE:
        raise InexactDivisionError(f"{what}: {p} 不能被 {_as_polynomial(divisor)} 整除")
    return q


def substitute_linear(p: Polynomial, mapping: Mapping[str, Polynomial], target: VariableContext) -> Polynomial:
    """
    线性代换（环同态）：把 p 的每个变量换成 target 中的多项式

    Args:
        p: 源多项式
        mapping: {源变量名: target 中的多项式}
        target: 目标变量上下文
    """
    ring = target.ring
    images = []
    for name in p.context.names:
        image = mapping.get(name)
        if image is not None and image.context != target:
            raise ContextMismatchError(f"变量 {name} 的像不在目标上下文中")
        images.append(image)
    powers: Dict[Tuple[int, int], object] = {}
    result = ring.zero
    for monom, c in p.element.items():
        term = ring.ground_new(c)
        for i, e in enumerate(monom):
            if not e:
                continue
            if images[i] is None:
                raise ValueError(f"变量 {p.context.names[i]} 没有给出代换")
            power = powers.get((i, e))
            if power is None:
                power = images[i].element ** e
                powers[(i, e)] = power
            term = term * power
        result += term
    return Polynomial(target, result)


def _solve_for_pivot(form: Polynomial) -> Tuple[str, Polynomial]:
    """把线性型 form = 0 解成 x_pivot = (其余项)"""
    lf = LinearForm.from_polynomial(form)
    i = lf.pivot()
    name = form.context.names[i]
    rest = form - form.context.var(name).scale(lf.coefficients[i])
    return name, rest.scale(-1 / lf.coefficients[i])


def reduce_modulo(p: Polynomial, forms: Iterable[Polynomial]) -> Polynomial:
    """
    以主元消去法把 p 约化到由若干线性型生成的理想之外的代表元

    结果为零当且仅当 p 属于该理想。
    """
    context = p.context
    pending = list(forms)
    while pending:
        form = pending.pop(0)
        if form.is_zero:
            continue
        name, value = _solve_for_pivot(form)
        mapping = {v: context.var(v) for v in context.names}
        mapping[name] = value
        p = substitute_linear(p, mapping, context)
        pending = [substitute_linear(f, mapping, context) for f in pending]
    return p


def _rational_matrix(rows: Sequence[Sequence[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in rows])


def linear_rank(forms: Sequence[LinearForm]) -> int:
    """精确计算一组线性型的秩"""
    if not forms:
        return 0
    return _rational_matrix([f.coefficients for f in forms]).rank()


@lru_cache(maxsize=256)
def _coordinate_change(basis: Tuple[LinearForm, ...], names: Tuple[str, ...]) -> Tuple[VariableContext, Dict[str, Polynomial]]:
    """旧变量用新坐标表示：新坐标 v = M·x，故 x = M⁻¹·v"""
    context = basis[0].context
    matrix = _rational_matrix([f.coefficients for f in basis])
    if matrix.det() == 0:
        raise ValueError("forms ∪ complement 线性相关，坐标变换奇异")
    full = VariableContext(names)
    inverse = matrix.inv()
    mapping = {}
    for j, name in enumerate(context.names):
        mapping[name] = full.linear({
            full.names[k]: Fraction(int(inverse[j, k].p), int(inverse[j, k].q)) for k in range(context.arity)
        })
    return full, mapping


def expand_in_forms(p: Polynomial, forms: Sequence[LinearForm], complement: Sequence[LinearForm],
                    names: Optional[Sequence[str]] = None):
    """
    用新坐标 forms ∪ complement 重写 p

    Returns:
        Polynomial: 仅含 forms 变量的多项式（p 属于 forms 生成的子环时）
        NOT_IN_SUBRING: 重写后出现了 complement 坐标
    """
    context = p.context
    basis = tuple(forms) + tuple(complement)
    if len(basis) != context.arity or any(f.context != context for f in basis):
        raise ValueError("forms ∪ complement 必须构成一次型的一组基")
    form_names = tuple(names) if names is not None else tuple(f"u{i + 1}" for i in range(len(forms)))
    complement_names = tuple(f"_c{i + 1}" for i in range(len(complement)))
    full, mapping = _coordinate_change(basis, form_names + complement_names)
    rewritten = substitute_linear(p, mapping, full)
    k = len(forms)
    if any(any(monom[k:]) for monom in rewritten.element.itermonoms()):
        return NOT_IN_SUBRING
    target = VariableContext(form_names)
    element = target.ring.from_dict({monom[:k]: c for monom, c in rewritten.element.items()})
    return Polynomial(target, element)


def random_polynomial(context: VariableContext, rng, degree: int = 2, terms: int = 4,
                      max_coefficient: int = 5) -> Polynomial:
    """生成随机多项式（用于性质检验），rng 为 numpy.random.Generator"""
    element = context.ring.zero
    for _ in range(terms):
        monom = [0] * context.arity
        for _ in range(int(rng.integers(0, degree + 1))):
            monom[int(rng.integers(0, context.arity))] += 1
        num = int(rng.integers(-max_coefficient, max_coefficient + 1))
        den = int(rng.integers(1, max_coefficient + 1))
        element += context.ring.term_new(tuple(monom), QQ(num, den))
    return Polynomial(context, element)
