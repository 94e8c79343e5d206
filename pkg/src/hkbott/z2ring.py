"""The mod-2 cohomology ring of a real Bott manifold.

The ring is generated by degree-one classes ``x1, ..., xn`` subject to

    x_j^2 = x_j * sum_i A[i, j] x_i,

with the square-free monomials as a basis. Monomials are stored as n-bit
masks (bit ``i-1`` stands for ``x_i``) and a class is the frozenset of masks
occurring in it with coefficient 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from .bott import BottMatrix
from .errors import AmbientMismatch, InternalInconsistency
from .gf2 import gf2_insert

Chooser = Callable[[Sequence[int]], int]


def _bits(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def render_monomial(mask: int) -> str:
    if mask == 0:
        return "1"
    return "*".join(f"x{i}" for i in reversed(_bits(mask)))


def _term_key(mask: int) -> tuple:
    desc = tuple(reversed(_bits(mask)))
    return (len(desc), desc)


@dataclass(frozen=True)
class Z2Class:
    ambient: BottMatrix
    terms: frozenset = frozenset()

    def __post_init__(self):
        top = 1 << self.ambient.n
        if any(not 0 <= m < top for m in self.terms):
            raise ValueError("monomial index outside 1..n")

    def _check(self, other: "Z2Class") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatch("classes belong to different Bott matrices")

    def __add__(self, other: "Z2Class") -> "Z2Class":
        self._check(other)
        return Z2Class(self.ambient, self.terms ^ other.terms)

    def __mul__(self, other: "Z2Class") -> "Z2Class":
        return multiply(self, other)

    def __pow__(self, k: int) -> "Z2Class":
        if k < 0:
            raise ValueError("negative power")
        result = one(self.ambient)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_homogeneous(self) -> bool:
        return len({bin(m).count("1") for m in self.terms}) == 1

    def degree(self) -> int:
        """Degree of a nonzero homogeneous class."""
        degrees = {bin(m).count("1") for m in self.terms}
        if len(degrees) != 1:
            raise ValueError("degree is only defined for nonzero homogeneous classes")
        return degrees.pop()

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(render_monomial(m) for m in sorted(self.terms, key=_term_key))

    def __str__(self) -> str:
        return self.render()


def zero(A: BottMatrix) -> Z2Class:
    return Z2Class(A, frozenset())


def one(A: BottMatrix) -> Z2Class:
    return Z2Class(A, frozenset({0}))


def generator(A: BottMatrix, i: int) -> Z2Class:
    """The class ``x_i`` (1-based)."""
    if not 1 <= i <= A.n:
        raise ValueError(f"generator index {i} outside 1..{A.n}")
    return Z2Class(A, frozenset({1 << (i - 1)}))


def degree_one(A: BottMatrix, coefficients: int) -> Z2Class:
    """The degree-one class whose coefficient of ``x_i`` is bit ``i-1``."""
    return Z2Class(A, frozenset(1 << i for i in range(A.n) if coefficients >> i & 1))


def _highest(repeated: Sequence[int]) -> int:
    return max(repeated)


def _rewrite(A: BottMatrix, exponents: tuple, choose: Chooser) -> frozenset:
    # Every polynomial in flight is homogeneous of fixed degree, and each
    # rewrite lowers the exponent vector in reverse-lexicographic order, so
    # any choice of repeated index terminates.
    pending = {exponents}
    result: set[int] = set()
    while pending:
        e = pending.pop()
        repeated = [j for j, ej in enumerate(e, start=1) if ej >= 2]
        if not repeated:
            result ^= {sum(1 << (j - 1) for j, ej in enumerate(e, start=1) if ej)}
            continue
        j = choose(repeated)
        for i in range(1, j):
            if A[i, j]:
                f = list(e)
                f[j - 1] -= 1
                f[i - 1] += 1
                pending ^= {tuple(f)}
    return frozenset(result)


@lru_cache(maxsize=1 << 16)
def _normal_form_cached(A: BottMatrix, exponents: tuple) -> frozenset:
    return _rewrite(A, exponents, _highest)


def normal_form(
    A: BottMatrix, exponents: Sequence[int], choose: Optional[Chooser] = None
) -> Z2Class:
    """Square-free representative of ``x1^e1 * ... * xn^en``.

    By default the square of the highest repeated generator is rewritten
    first. ``choose`` picks a different index among the repeated ones; the
    answer does not depend on it.
    """
    exponents = tuple(int(e) for e in exponents)
    if len(exponents) != A.n or any(e < 0 for e in exponents):
        raise ValueError(f"expected {A.n} non-negative exponents")
    if choose is None:
        terms = _normal_form_cached(A, exponents)
    else:
        terms = _rewrite(A, exponents, choose)
    return Z2Class(A, terms)


def random_chooser(rng: random.Random) -> Chooser:
    return lambda repeated: rng.choice(list(repeated))


TABLE_MAX_N = 6


@lru_cache(maxsize=256)
def _monomial_table(A: BottMatrix) -> tuple[tuple[int, ...], ...]:
    # table[a][b] is the product of monomials a and b as a bitset over monomials
    n = A.n
    size = 1 << n
    table = []
    for ma in range(size):
        row = []
        for mb in range(size):
            if ma & mb == 0:
                row.append(1 << (ma | mb))
                continue
            e = tuple((ma >> i & 1) + (mb >> i & 1) for i in range(n))
            row.append(sum(1 << m for m in _normal_form_cached(A, e)))
        table.append(tuple(row))
    return tuple(table)


def _from_bitset(A: BottMatrix, v: int) -> Z2Class:
    terms = []
    while v:
        low = v & -v
        terms.append(low.bit_length() - 1)
        v ^= low
    return Z2Class(A, frozenset(terms))


def multiply(a: Z2Class, b: Z2Class) -> Z2Class:
    a._check(b)
    A = a.ambient
    if A.n > TABLE_MAX_N:
        # the table has 4^n entries; rewrite termwise instead
        n = A.n
        out: set[int] = set()
        for ma in a.terms:
            for mb in b.terms:
                e = tuple((ma >> i & 1) + (mb >> i & 1) for i in range(n))
                out ^= _normal_form_cached(A, e)
        return Z2Class(A, frozenset(out))
    table = _monomial_table(A)
    acc = 0
    for ma in a.terms:
        row = table[ma]
        for mb in b.terms:
            acc ^= row[mb]
    return _from_bitset(A, acc)


def _as_vector(c: Z2Class) -> int:
    return sum(1 << m for m in c.terms)


def graded_dimensions(A: BottMatrix) -> list[int]:
    """Dimensions of the homogeneous pieces in degrees 0..n.

    Each degree is spanned by products of a generator with a spanning set of
    the previous degree; the dimension is the GF(2) rank of those normal forms.
    """
    span = [one(A)]
    dims = [1]
    for k in range(1, A.n + 1):
        products = [generator(A, j) * b for j in range(1, A.n + 1) for b in span]
        for p in products:
            if p and p.degree() != k:
                raise InternalInconsistency(f"product of degree {k} left degree {k}")
        independent: list[Z2Class] = []
        basis: list[int] = []
        for p in products:
            if gf2_insert(basis, _as_vector(p)):
                independent.append(p)
        span = independent
        dims.append(len(independent))
    return dims


def basis_is_square_free(A: BottMatrix) -> bool:
    """True when the graded dimensions are the binomial coefficients."""
    return graded_dimensions(A) == [comb(A.n, k) for k in range(A.n + 1)]


def find_order4_witness(A: BottMatrix) -> Optional[Z2Class]:
    """First degree-one class x with ``x^4 != 0``, or None.

    Candidates are scanned by increasing coefficient vector, where ``x_i``
    contributes ``2 ** (i-1)``.
    """
    for v in range(1, 1 << A.n):
        x = degree_one(A, v)
        if fourth_power(x):
            return x
    return None


def fourth_power(x: Z2Class) -> Z2Class:
    square = x * x
    return square * square


def relations(A: BottMatrix) -> list[str]:
    """The defining relations, e.g. ``["x1^2=0", "x2^2=x2*x1"]``."""
    out = []
    for j in range(1, A.n + 1):
        rhs = sum(
            (Z2Class(A, frozenset({(1 << (j - 1)) | (1 << (i - 1))})) for i in range(1, j) if A[i, j]),
            zero(A),
        )
        out.append(f"x{j}^2={rhs.render()}")
    return out


def all_classes(A: BottMatrix) -> Iterable[Z2Class]:
    """Every element of the ring; 2**(2**n) of them, so tiny n only."""
    masks = 1 << A.n
    for v in range(1 << masks):
        yield Z2Class(A, frozenset(m for m in range(masks) if v >> m & 1))


__all__ = [
    "Z2Class",
    "all_classes",
    "basis_is_square_free",
    "degree_one",
    "find_order4_witness",
    "fourth_power",
    "generator",
    "graded_dimensions",
    "multiply",
    "normal_form",
    "one",
    "random_chooser",
    "relations",
    "render_monomial",
    "zero",
]
