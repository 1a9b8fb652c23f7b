"""Finite root systems of types A-G with exact rational arithmetic.

Weights are tuples of coordinates in the fundamental-weight basis. Entries are
``int`` when integral and :class:`fractions.Fraction` otherwise, so that
integral weights hash and compare fast.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

Weight = tuple


class RootSystemError(ValueError):
    """Raised for inadmissible Cartan types or out-of-domain arguments."""


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}


class CartanType(NamedTuple):
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def norm(x):
    """Return ``x`` as an ``int`` if it is integral, else as a Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def parse_cartan_type(text: str | CartanType) -> CartanType:
    """Parse strings such as ``"A2"``, ``"g2"`` or ``"B3"``."""
    if isinstance(text, CartanType):
        t = text
    else:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", str(text))
        if not m:
            raise RootSystemError(f"cannot parse Cartan type {text!r}")
        t = CartanType(m.group(1).upper(), int(m.group(2)))
    fam, n = t
    ok = n >= _MIN_RANK.get(fam, 10**9)
    if fam == "E":
        ok = 6 <= n <= 8
    elif fam in "FG":
        ok = n == _MIN_RANK[fam]
    if not ok:
        raise RootSystemError(f"rank {n} is not admissible for type {fam}")
    return t


def _simple_root_data(t: CartanType):
    """Squared lengths of simple roots and the off-diagonal inner products.

    Bourbaki numbering; long roots have squared length 2.
    """
    fam, n = t
    half = Fraction(1, 2)
    lengths = [2] * n
    edges: dict[tuple[int, int], Fraction | int] = {}
    if fam == "A":
        for i in range(n - 1):
            edges[i, i + 1] = -1
    elif fam == "B":
        lengths[n - 1] = 1
        for i in range(n - 1):
            edges[i, i + 1] = -1
    elif fam == "C":
        lengths = [1] * (n - 1) + [2]
        for i in range(n - 2):
            edges[i, i + 1] = -half
        edges[n - 2, n - 1] = -1
    elif fam == "D":
        for i in range(n - 2):
            edges[i, i + 1] = -1
        edges[n - 3, n - 1] = -1
    elif fam == "E":
        edges[0, 2] = -1
        edges[1, 3] = -1
        for i in range(2, n - 1):
            edges[i, i + 1] = -1
    elif fam == "F":
        lengths = [2, 2, 1, 1]
        edges[0, 1] = -1
        edges[1, 2] = -1
        edges[2, 3] = -half
    elif fam == "G":
        lengths = [Fraction(2, 3), 2]
        edges[0, 1] = -1
    return lengths, edges


def mat_inverse(m: Sequence[Sequence]) -> tuple:
    """Exact inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise RootSystemError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(norm(x) for x in row[n:]) for row in a)


def mat_vec(m, v) -> Weight:
    return tuple(norm(sum(mij * vj for mij, vj in zip(row, v))) for row in m)


def mat_mul(a, b) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(norm(sum(x * y for x, y in zip(row, c))) for c in cols) for row in a)


def identity_matrix(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def add(u: Weight, v: Weight) -> Weight:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Weight, v: Weight) -> Weight:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Weight) -> Weight:
    return tuple(norm(c * a) for a in u)


class LatticeFlags(NamedTuple):
    in_P: bool
    in_P_plus: bool
    in_Q: bool
    in_L: bool
    in_L_plus: bool
    in_M: bool
    in_M_plus: bool


@dataclass(frozen=True)
class RootSystem:
    """Immutable finite root system datum.

    ``cartan_matrix[i][j]`` is ``<alpha_j, alpha_i^vee>``, so column ``j`` is the
    simple root ``alpha_j`` written in fundamental-weight coordinates.
    """

    cartan_type: CartanType
    cartan_matrix: tuple
    simple_roots: tuple
    positive_roots: tuple
    highest_root: Weight
    d_values: tuple  # d_alpha for each positive root, same order
    form: tuple  # Gram matrix of (.|.) on fundamental weights
    longest_word: tuple
    root_lengths: tuple = field(repr=False)  # (alpha_i|alpha_i)
    inverse_cartan: tuple = field(repr=False)
    theta_coroot: tuple = field(repr=False)  # <lambda, theta^vee> = sum c_i lambda_i

    def __post_init__(self):
        object.__setattr__(self, "_root_index",
                           {a: k for k, a in enumerate(self.positive_roots)})

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def d_simple(self) -> tuple:
        return tuple(norm(Fraction(2) / x) for x in self.root_lengths)

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @property
    def roots(self) -> tuple:
        return self.positive_roots + tuple(scale(-1, a) for a in self.positive_roots)

    # -- forms and pairings -------------------------------------------------

    def inner(self, lam: Weight, mu: Weight):
        """The normalized invariant form ``(lam|mu)``."""
        return norm(sum(lam[i] * self.form[i][j] * mu[j]
                        for i in range(self.rank) for j in range(self.rank)
                        if lam[i] and mu[j]))

    def alpha_coords(self, lam: Weight) -> Weight:
        """Coordinates of ``lam`` in the simple-root basis."""
        return mat_vec(self.inverse_cartan, lam)

    def height(self, lam: Weight):
        return norm(sum(self.alpha_coords(lam)))

    def is_root(self, alpha: Weight) -> bool:
        alpha = tuple(alpha)
        return alpha in self._root_index or scale(-1, alpha) in self._root_index

    def d(self, alpha: Weight) -> int:
        """``d_alpha = 2/(alpha|alpha)``."""
        alpha = tuple(alpha)
        if alpha in self._root_index:
            return self.d_values[self._root_index[alpha]]
        neg = scale(-1, alpha)
        if neg in self._root_index:
            return self.d_values[self._root_index[neg]]
        raise RootSystemError(f"{alpha} is not a root of {self.cartan_type}")

    def pairing(self, lam: Weight, alpha: Weight):
        """``<lam, alpha^vee> = d_alpha (lam|alpha)``."""
        return norm(self.d(alpha) * self.inner(lam, alpha))

    def pairing_theta(self, lam: Weight):
        return norm(sum(c * x for c, x in zip(self.theta_coroot, lam)))

    def reflect(self, alpha: Weight, lam: Weight) -> Weight:
        """Reflection ``r_alpha(lam) = lam - <lam, alpha^vee> alpha``."""
        n = self.pairing(lam, alpha)
        return tuple(norm(x - n * a) for x, a in zip(lam, alpha))

    def simple_reflect(self, i: int, lam: Weight) -> Weight:
        n = lam[i]
        if not n:
            return tuple(lam)
        col = self.simple_roots[i]
        return tuple(x - n * a for x, a in zip(lam, col))

    def reflection_matrix(self, alpha: Weight) -> tuple:
        """Matrix of ``r_alpha`` acting on fundamental-weight coordinates."""
        cols = [self.reflect(alpha, tuple(int(i == j) for j in range(self.rank)))
                for i in range(self.rank)]
        return tuple(tuple(cols[c][r] for c in range(self.rank)) for r in range(self.rank))

    # -- lattices -----------------------------------------------------------

    def lattice_membership(self, lam: Weight) -> LatticeFlags:
        ints = all(Fraction(x).denominator == 1 for x in lam)
        dom = ints and all(x >= 0 for x in lam)
        ac = self.alpha_coords(lam)
        in_q = all(Fraction(x).denominator == 1 for x in ac)
        ds = self.d_simple
        in_l = ints and all(x % d == 0 for x, d in zip(lam, ds))
        in_m = in_q and all(x % d == 0 for x, d in zip(ac, ds))
        return LatticeFlags(ints, dom, in_q, in_l, in_l and dom, in_m, in_m and dom)

    def is_dominant(self, lam: Weight) -> bool:
        return self.lattice_membership(lam).in_P_plus

    # -- Weyl group ---------------------------------------------------------

    def to_dominant(self, lam: Weight, largest_first: bool = False):
        """Reflect ``lam`` into the dominant chamber.

        Returns ``(dominant, word)`` with ``word`` evaluating (as the product
        ``r_{i1} r_{i2} ...``) the dominant weight back to ``lam``.
        """
        lam = tuple(lam)
        word = []
        order = range(self.rank - 1, -1, -1) if largest_first else range(self.rank)
        while True:
            for i in order:
                if lam[i] < 0:
                    lam = self.simple_reflect(i, lam)
                    word.append(i)
                    break
            else:
                return lam, tuple(word)

    def apply_word(self, word: Sequence[int], lam: Weight) -> Weight:
        lam = tuple(lam)
        for i in reversed(word):
            lam = self.simple_reflect(i, lam)
        return lam

    def w0(self, lam: Weight) -> Weight:
        return self.apply_word(self.longest_word, lam)

    def weyl_orbit(self, lam: Weight) -> list:
        lam, _ = self.to_dominant(lam)
        seen = {lam}
        todo = [lam]
        while todo:
            mu = todo.pop()
            for i in range(self.rank):
                if mu[i] > 0:
                    nu = self.simple_reflect(i, mu)
                    if nu not in seen:
                        seen.add(nu)
                        todo.append(nu)
        return sorted(seen)

    def weyl_group_matrices(self) -> list:
        """All elements of W as matrices on fundamental-weight coordinates."""
        n = self.rank
        gens = [self.reflection_matrix(a) for a in self.simple_roots]
        ident = identity_matrix(n)
        seen = {ident}
        todo = [ident]
        while todo:
            g = todo.pop()
            for s in gens:
                h = mat_mul(s, g)
                if h not in seen:
                    seen.add(h)
                    todo.append(h)
        return sorted(seen)



@lru_cache(maxsize=None)
def build_root_system(t: CartanType | str) -> RootSystem:
    """Construct the root system of the given Cartan type."""
    t = parse_cartan_type(t)
    n = t.rank
    lengths, edges = _simple_root_data(t)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for (i, j), v in edges.items():
        gram[i][j] = gram[j][i] = v
    cartan = tuple(tuple(norm(Fraction(2) * gram[i][j] / lengths[i]) for j in range(n))
                   for i in range(n))
    inv = mat_inverse(cartan)
    form = tuple(tuple(norm(inv[i][j] * Fraction(lengths[i]) / 2) for j in range(n))
                 for i in range(n))
    simple = tuple(tuple(cartan[i][j] for i in range(n)) for j in range(n))

    # Positive roots: closure of the simple roots under simple reflections.
    def acoords(lam):
        return mat_vec(inv, lam)

    seen = set(simple)
    todo = list(simple)
    while todo:
        beta = todo.pop()
        for i in range(n):
            if beta[i] == 0:
                continue
            gamma = tuple(x - beta[i] * a for x, a in zip(beta, simple[i]))
            if gamma not in seen and all(c >= 0 for c in acoords(gamma)):
                seen.add(gamma)
                todo.append(gamma)
    pos = sorted(seen, key=lambda r: (sum(acoords(r)), acoords(r)))
    theta = pos[-1]

    def inner(u, v):
        return norm(sum(u[i] * form[i][j] * v[j] for i in range(n) for j in range(n)))

    d_vals = tuple(norm(Fraction(2) / inner(a, a)) for a in pos)
    theta_a = acoords(theta)
    theta_coroot = tuple(norm(theta_a[i] * Fraction(lengths[i]) / 2) for i in range(n))

    # Longest word: push rho to -rho, always reflecting at the smallest index.
    lam = (1,) * n
    word = []
    while any(x > 0 for x in lam):
        i = next(i for i in range(n) if lam[i] > 0)
        lam = tuple(x - lam[i] * a for x, a in zip(lam, simple[i]))
        word.append(i)

    return RootSystem(
        cartan_type=t,
        cartan_matrix=cartan,
        simple_roots=simple,
        positive_roots=tuple(pos),
        highest_root=theta,
        d_values=d_vals,
        form=form,
        longest_word=tuple(word),
        root_lengths=tuple(norm(x) for x in lengths),
        inverse_cartan=inv,
        theta_coroot=theta_coroot,
    )


def parse_weight(text: str, rank: int) -> Weight:
    """Parse comma-separated fundamental-weight coordinates, e.g. ``"1,0"``."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != rank:
        raise RootSystemError(f"expected {rank} coordinates, got {len(parts)} in {text!r}")
    out = []
    for pos, p in enumerate(parts):
        try:
            out.append(norm(Fraction(p)))
        except (ValueError, ZeroDivisionError):
            raise RootSystemError(f"bad coordinate {p!r} at position {pos}") from None
    return tuple(out)
