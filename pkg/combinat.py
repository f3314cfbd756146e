#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
d元子集的组合学
枚举 {n choose d}、Bruhat序、逆序对、长度、覆盖关系以及特殊元素 id 与 div

约定：元素越小在Bruhat序中越高，λ ≥ μ 当且仅当对所有 i 有 λ_i ≤ μ_i。
"""

import os
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import List, NamedTuple, Optional, Tuple

logger = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 10000
DEFAULT_MAX_N = 12


class ResourceLimitError(RuntimeError):
    """C(n,d) 超过了顶点上限，或 n 超过了上限"""


def resolve_vertex_cap(override: Optional[int] = None) -> int:
    """读取顶点上限：显式参数优先，其次是环境变量 WSCHUB_MAX_VERTICES"""
    if override is not None:
        return int(override)
    return int(os.getenv('WSCHUB_MAX_VERTICES', DEFAULT_MAX_VERTICES))


def resolve_max_n() -> int:
    """n 的上限：环境变量 WSCHUB_MAX_N，默认 12"""
    return int(os.getenv('WSCHUB_MAX_N', DEFAULT_MAX_N))


def check_ambient(n: int, d: int) -> None:
    if not (isinstance(n, int) and isinstance(d, int)) or not (0 < d < n):
        raise ValueError(f"需要 0 < d < n，实际 n={n}, d={d}")


@dataclass(frozen=True, order=True)
class IndexSet:
    """{1..n} 的严格递增 d 元子集，对应一个不动点/一个Schubert类"""
    elements: Tuple[int, ...]
    n: int

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, 'elements', elements)
        check_ambient(self.n, len(elements))
        if any(a >= b for a, b in zip(elements, elements[1:])):
            raise ValueError(f"元素必须严格递增: {elements}")
        if elements[0] < 1 or elements[-1] > self.n:
            raise ValueError(f"元素必须位于 [1..{self.n}]: {elements}")

    @classmethod
    def parse(cls, text: str, n: int) -> 'IndexSet':
        """解析 "2,3" 形式的字符串"""
        try:
            elements = sorted(int(part) for part in text.replace('{', '').replace('}', '').split(',') if part.strip())
        except ValueError:
            raise ValueError(f"无法解析子集: {text!r}")
        return cls(tuple(elements), n)

    @property
    def d(self) -> int:
        return len(self.elements)

    @property
    def key(self) -> str:
        return ','.join(str(i) for i in self.elements)

    @property
    def length(self) -> int:
        return len(inversions(self))

    def __contains__(self, i: int) -> bool:
        return i in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __str__(self) -> str:
        return '{' + self.key + '}'

    def to_bitstring(self) -> str:
        """零一序列编码：第 i 位为 1 当且仅当 i ∈ λ（仅用于与其他文献约定对照）"""
        return ''.join('1' if i in self.elements else '0' for i in range(1, self.n + 1))

    @classmethod
    def from_bitstring(cls, bits: str) -> 'IndexSet':
        return cls(tuple(i + 1 for i, b in enumerate(bits) if b == '1'), len(bits))


class Inversion(NamedTuple):
    """逆序对 (k,l)：k ∈ λ, l ∉ λ, k < l"""
    k: int
    l: int


def enumerate_index_sets(n: int, d: int, cap: Optional[int] = None) -> List[IndexSet]:
    """
    按字典序列出全部 C(n,d) 个子集

    Args:
        n, d: 环境参数，0 < d < n
        cap: 顶点上限，默认取环境变量或 10000

    Returns:
        list: IndexSet 列表
    """
    check_ambient(n, d)
    max_n = resolve_max_n()
    if n > max_n:
        raise ResourceLimitError(f"n = {n} 超过上限 {max_n}（可用 WSCHUB_MAX_N 调整）")
    limit = resolve_vertex_cap(cap)
    count = comb(n, d)
    if count > limit:
        raise ResourceLimitError(f"C({n},{d}) = {count} 超过顶点上限 {limit}")
    return [IndexSet(c, n) for c in combinations(range(1, n + 1), d)]


def _same_ambient(mu: IndexSet, lam: IndexSet) -> None:
    if (mu.n, mu.d) != (lam.n, lam.d):
        raise ValueError(f"环境参数不一致: {mu} 属于 ({mu.n},{mu.d})，{lam} 属于 ({lam.n},{lam.d})")


def bruhat_leq(mu: IndexSet, lam: IndexSet) -> bool:
    """μ ≤ λ（即 λ ≥ μ）当且仅当 λ_i ≤ μ_i 对所有 i 成立"""
    _same_ambient(mu, lam)
    return all(l <= m for l, m in zip(lam.elements, mu.elements))


def inversions(lam: IndexSet) -> List[Inversion]:
    """按 (k,l) 字典序返回 λ 的全部逆序对"""
    return [Inversion(k, l) for k in lam.elements for l in range(k + 1, lam.n + 1) if l not in lam.elements]


def length(lam: IndexSet) -> int:
    return len(inversions(lam))


def apply_inversion(lam: IndexSet, inv: Tuple[int, int]) -> IndexSet:
    """(k,l)λ：把 λ 中的 k 换成 l"""
    k, l = inv
    if k not in lam.elements or l in lam.elements or not k < l or l > lam.n:
        raise ValueError(f"({k},{l}) 不是 {lam} 的逆序对")
    return IndexSet(tuple(sorted(l if i == k else i for i in lam.elements)), lam.n)


def covering_elements(lam: IndexSet) -> List[IndexSet]:
    """所有覆盖 λ 的元素 λ'（λ' → λ）：λ' ≥ λ 且长度多 1"""
    target = length(lam) + 1
    found = set()
    for e in lam.elements:
        for smaller in range(1, e):
            if smaller in lam.elements:
                continue
            candidate = IndexSet(tuple(sorted(smaller if i == e else i for i in lam.elements)), lam.n)
            if length(candidate) == target:
                found.add(candidate)
    return sorted(found)


def covered_elements(lam: IndexSet) -> List[IndexSet]:
    """λ 覆盖的所有元素 λ''（λ → λ''）"""
    target = length(lam) - 1
    return sorted({apply_inversion(lam, inv) for inv in inversions(lam)
                   if length(apply_inversion(lam, inv)) == target})


def distinguished_elements(n: int, d: int) -> Tuple[IndexSet, IndexSet]:
    """返回 (id, div)：唯一的长度0元素与唯一的长度1元素"""
    check_ambient(n, d)
    ident = IndexSet(tuple(range(n - d + 1, n + 1)), n)
    div = IndexSet((n - d,) + tuple(range(n - d + 2, n + 1)), n)
    return ident, div


def bruhat_sort_key(lam: IndexSet) -> Tuple[int, Tuple[int, ...]]:
    """Bruhat序的一个线性延拓：先按长度，再按字典序"""
    return length(lam), lam.elements


@lru_cache(maxsize=4096)
def saturated_chains(top: IndexSet, bottom: IndexSet) -> Tuple[Tuple[IndexSet, ...], ...]:
    """
    从 top 到 bottom 的所有饱和链 top = ν⁰ → ν¹ → ⋯ → νˡ = bottom

    Returns:
        tuple: 每条链是一个从 top 开始的 IndexSet 元组
    """
    if top == bottom:
        return ((top,),)
    if not bruhat_leq(bottom, top) or length(top) <= length(bottom):
        return ()
    chains = []
    for below in covered_elements(top):
        if bruhat_leq(bottom, below):
            for tail in saturated_chains(below, bottom):
                chains.append((top,) + tail)
    return tuple(chains)
