"""Finitely generated abelian groups in invariant-factor form.

Everything is exact integer arithmetic on Python ints. Besides the Smith
normal form and the canonical group type, the module covers the two kinds of
direct limit needed downstream: the torsion of ``lim(G, beta)`` for an
endomorphism ``beta`` and the scalar limit ``lim(Z^r, x n) = Z[1/n]^r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Sequence, Union

from .errors import IllFormedEndo, IncomparableUndetermined, InternalInconsistency, ZeroMultiplier

Matrix = list[list[int]]


# -- integer matrices ---------------------------------------------------------

def identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def matmul(X: Sequence[Sequence[int]], Y: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*Y))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in X]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in M]
    k = len(a)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for p in range(k - 1):
        if a[p][p] == 0:
            swap = next((r for r in range(p + 1, k) if a[r][p] != 0), None)
            if swap is None:
                return 0
            a[p], a[swap] = a[swap], a[p]
            sign = -sign
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) // prev
        prev = a[p][p]
    return sign * a[k - 1][k - 1]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``D = U @ M @ V`` in Smith normal form.

    U and V are unimodular and the diagonal of D is a non-negative divisibility
    chain ``d1 | d2 | ...`` (zeros last). The pivot at each stage is the
    smallest nonzero entry by absolute value. The result is re-verified
    before it is returned.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    D = [list(map(int, r)) for r in M]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(a, b):
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for X in (D, V):
            for r in X:
                r[a], r[b] = r[b], r[a]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for X in (D, V):
            for r in X:
                r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(D[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if D[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = D[t][t]
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, rows)) or any(D[t][j] for j in range(t + 1, cols)):
                continue  # a remainder is now smaller than the pivot
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    _check_snf(M, U, D, V)
    return U, D, V


def _check_snf(M, U, D, V) -> None:
    if M and matmul(matmul(U, [list(r) for r in M]), V) != D:
        raise InternalInconsistency("U M V != D")
    if abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
        raise InternalInconsistency("transform is not unimodular")
    diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j and x:
                raise InternalInconsistency("D is not diagonal")
    for a, b in zip(diag, diag[1:]):
        if a < 0 or (a == 0 and b != 0) or (a and b % a):
            raise InternalInconsistency(f"divisibility chain broken at {a}, {b}")


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form."""
    if not M or not M[0]:
        return []
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


# -- primes --------------------------------------------------------------------

def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of |n| by trial division."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


# -- groups --------------------------------------------------------------------

@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank + Z_d1 + ... + Z_ds`` with ``d1 | d2 | ...`` and every ``di >= 2``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"not an invariant-factor chain: {t}")

    @classmethod
    def from_cyclic(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> "FgAbGroup":
        """Canonical form of ``Z^free_rank + sum Z_o``; an order of 0 means Z and 1 means trivial."""
        orders = [abs(o) for o in orders]
        if not orders:
            return cls(free_rank, ())
        k = len(orders)
        diag = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
        factors = invariant_factors(diag)
        extra_free = sum(1 for d in factors if d == 0)
        return cls(free_rank + extra_free, tuple(d for d in factors if d > 1))

    @classmethod
    def cokernel(cls, relations: Sequence[Sequence[int]], generators: int) -> "FgAbGroup":
        """``Z^generators`` modulo the row span of ``relations``."""
        rows = [list(r) for r in relations if any(r)]
        if not rows:
            return cls(generators, ())
        factors = invariant_factors(rows)
        nonzero = [d for d in factors if d]
        return cls(generators - len(nonzero), tuple(d for d in nonzero if d > 1))

    @property
    def order(self) -> int:
        """Order of the torsion subgroup."""
        return prod(self.torsion)

    @property
    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def torsion_subgroup(self) -> "FgAbGroup":
        return FgAbGroup(0, self.torsion)

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_cyclic(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __pow__(self, k: int) -> "FgAbGroup":
        return FgAbGroup.from_cyclic(self.free_rank * k, self.torsion * k)

    def render(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(_render_torsion(self.torsion))
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


def _render_torsion(torsion: Sequence[int]) -> list[str]:
    parts = []
    for d in sorted(set(torsion)):
        k = torsion.count(d)
        parts.append(f"Z_{d}" if k == 1 else f"Z_{d}^{k}")
    return parts


TRIVIAL = FgAbGroup()
Z = FgAbGroup(1)


def cyclic(d: int, k: int = 1) -> FgAbGroup:
    """``Z_d^k``."""
    return FgAbGroup.from_cyclic(0, [d] * k)


def elements(T: FgAbGroup) -> list[tuple[int, ...]]:
    """All elements of a finite group as coordinate tuples (lexicographic)."""
    if T.free_rank:
        raise ValueError("group is infinite")
    return list(product(*(range(d) for d in T.torsion)))


def element_orders(T: FgAbGroup) -> list[int]:
    """Sorted multiset of element orders; it determines T up to isomorphism."""
    out = []
    for x in elements(T):
        out.append(lcm(*(d // gcd(xi, d) for xi, d in zip(x, T.torsion))))
    return sorted(out)


def structure_from_elements(
    elems: Iterable[Sequence[int]], moduli: Sequence[int]
) -> FgAbGroup:
    """Isomorphism type of a finite subgroup of ``Z_m1 + ... + Z_mk`` given by its elements.

    For each prime p, the counts of elements killed by ``p, p^2, ...`` fix the
    p-primary part; the primary parts are then merged into invariant factors.
    """
    elems = [tuple(e) for e in elems]
    size = len(elems)
    primary: list[int] = []
    for p in prime_factors(size) if size > 1 else ():
        killed = [1]  # killed[k] = #{x : p^k x = 0}
        k = 0
        while killed[-1] < _p_part(size, p):
            k += 1
            q = p**k
            killed.append(sum(1 for e in elems if all((q * x) % m == 0 for x, m in zip(e, moduli))))
        # number of cyclic factors of order >= p^k is log_p(killed[k] / killed[k-1])
        at_least = [_log(killed[i] // killed[i - 1], p) for i in range(1, len(killed))]
        for i, c in enumerate(at_least):
            nxt = at_least[i + 1] if i + 1 < len(at_least) else 0
            primary.extend([p ** (i + 1)] * (c - nxt))
    return FgAbGroup.from_cyclic(0, primary)


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        if n % p:
            raise InternalInconsistency("element count is not a prime power")
        n //= p
        k += 1
    return k


# -- endomorphisms and limits ------------------------------------------------------

@dataclass(frozen=True)
class GroupEndo:
    """Endomorphism of ``domain`` on its canonical generators.

    Generators are ordered free first, then torsion in invariant-factor order.
    Column j of ``matrix`` holds the image of generator j.
    """

    domain: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        k = self.domain.ngens
        if len(m) != k or any(len(row) != k for row in m):
            raise IllFormedEndo(f"matrix must be {k} x {k}")
        b = self.domain.free_rank
        for j, dj in enumerate(self.domain.torsion, start=b):
            col = [m[i][j] for i in range(k)]
            if any(col[i] for i in range(b)):
                raise IllFormedEndo(f"torsion generator {j + 1} maps to a non-torsion element")
            for i, di in enumerate(self.domain.torsion, start=b):
                if (dj * col[i]) % di:
                    raise IllFormedEndo(
                        f"image of generator {j + 1} (order {dj}) has component of order not dividing it"
                    )

    def on_torsion(self, x: Sequence[int]) -> tuple[int, ...]:
        """Apply to a torsion element given in torsion coordinates."""
        b = self.domain.free_rank
        tor = self.domain.torsion
        return tuple(
            sum(self.matrix[b + i][b + j] * xj for j, xj in enumerate(x)) % di
            for i, di in enumerate(tor)
        )


def _subgroup_closure(gens: Iterable[tuple[int, ...]], moduli: Sequence[int]) -> frozenset:
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    gens = [g for g in set(gens) if g != zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + c) % m for a, c, m in zip(x, g, moduli))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def limit_torsion(G: FgAbGroup, beta: GroupEndo) -> FgAbGroup:
    """Torsion subgroup of the direct limit ``lim(G, beta)``.

    The torsion of the limit is the limit of ``beta`` restricted to ``T(G)``.
    On a finite group the image chain ``T >= beta(T) >= ...`` stabilizes and
    beta is bijective on the stable image, which is therefore the limit.
    """
    if beta.domain != G:
        raise IllFormedEndo("endomorphism is defined on a different group")
    moduli = G.torsion
    if not moduli:
        return TRIVIAL
    k = len(moduli)
    basis = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    image = _subgroup_closure(basis, moduli)
    gens = basis
    for _ in range(G.order + 1):
        gens = [beta.on_torsion(g) for g in gens]
        smaller = _subgroup_closure(gens, moduli)
        if len(smaller) == len(image):
            break
        image = smaller
    result = structure_from_elements(image, moduli)
    if G.order % result.order or G.exponent % result.exponent:
        raise InternalInconsistency("limit torsion is not a subgroup of T(G)")
    return result


@dataclass(frozen=True)
class LocalizedGroup:
    """``Z[1/S]^rank + torsion`` with S a finite set of primes.

    ``undetermined`` marks a torsion part that is not known; ``torsion``
    then holds only the known summands.
    """

    rank: int = 0
    inverted_primes: frozenset = field(default_factory=frozenset)
    torsion: FgAbGroup = TRIVIAL
    undetermined: bool = False

    def __post_init__(self):
        primes = frozenset(self.inverted_primes)
        object.__setattr__(self, "inverted_primes", primes)
        if any(prime_factors(p) != (p,) for p in primes):
            raise ValueError(f"inverted set must contain primes only: {sorted(primes)}")
        if self.torsion.free_rank:
            raise ValueError("torsion part must be finite")
        if self.rank == 0 and primes:
            object.__setattr__(self, "inverted_primes", frozenset())

    def is_finitely_generated(self) -> bool:
        return not self.inverted_primes or self.rank == 0

    def render(self) -> str:
        parts = []
        if self.rank:
            base = "Z" if not self.inverted_primes else f"Z[1/{prod(sorted(self.inverted_primes))}]"
            parts.append(base if self.rank == 1 else f"{base}^{self.rank}")
        parts.extend(_render_torsion(self.torsion.torsion))
        if self.undetermined:
            parts.append("unknown")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


def localize(rank: int, n: int, torsion: FgAbGroup = TRIVIAL) -> LocalizedGroup:
    """``lim(Z^rank, x n) = Z[1/n]^rank``, normalized to the radical of n."""
    if n == 0:
        raise ZeroMultiplier("cannot localize at 0")
    if rank < 0:
        raise ValueError("negative rank")
    return LocalizedGroup(rank, frozenset(prime_factors(n)), torsion)


def invert_further(G: LocalizedGroup, n: int) -> LocalizedGroup:
    """Direct limit of G under multiplication by n on the free part."""
    if n == 0:
        raise ZeroMultiplier("cannot localize at 0")
    return LocalizedGroup(G.rank, G.inverted_primes | set(prime_factors(n)), G.torsion, G.undetermined)


def is_isomorphic(
    G: Union[FgAbGroup, LocalizedGroup], H: Union[FgAbGroup, LocalizedGroup]
) -> bool:
    if isinstance(G, LocalizedGroup) and isinstance(H, LocalizedGroup):
        if G.undetermined or H.undetermined:
            raise IncomparableUndetermined("a summand is undetermined")
        return (G.rank, G.inverted_primes, G.torsion) == (H.rank, H.inverted_primes, H.torsion)
    if isinstance(G, FgAbGroup) and isinstance(H, FgAbGroup):
        return G == H
    raise TypeError("cannot compare a finitely generated group with a localized one")


def parse_group(text: str) -> FgAbGroup:
    """Inverse of :meth:`FgAbGroup.render`, e.g. ``"Z^2 + Z_2^3 + Z_4"``."""
    text = text.strip()
    if text == "0":
        return TRIVIAL
    free, orders = 0, []
    for part in text.split("+"):
        part = part.strip()
        base, _, power = part.partition("^")
        k = int(power) if power else 1
        if base == "Z":
            free += k
        elif base.startswith("Z_"):
            orders += [int(base[2:])] * k
        else:
            raise ValueError(f"cannot parse group summand {part!r}")
    return FgAbGroup.from_cyclic(free, orders)


__all__ = [
    "FgAbGroup",
    "GroupEndo",
    "LocalizedGroup",
    "TRIVIAL",
    "Z",
    "cyclic",
    "determinant",
    "element_orders",
    "elements",
    "identity",
    "invariant_factors",
    "invert_further",
    "is_isomorphic",
    "limit_torsion",
    "localize",
    "matmul",
    "parse_group",
    "prime_factors",
    "smith_normal_form",
    "structure_from_elements",
]
