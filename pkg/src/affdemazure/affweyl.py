"""Affine Weyl group: action on affine weights, translations, lengths, reduced words."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .affring import AffWeight, affine_pairing, rho_hat
from .rootsys import (RootSystem, RootSystemError, Weight, identity_matrix, mat_mul,
                      mat_vec, norm)


class UnsupportedInputError(ValueError):
    pass


class LatticeError(ValueError):
    pass


def _reflect_key(rs: RootSystem, i: int, key: tuple) -> tuple:
    """Simple affine reflection on a flat ``(*fin, level, degree)`` key."""
    n = rs.rank
    if i == 0:
        c = key[n] - sum(t * x for t, x in zip(rs.theta_coroot, key[:n]))
        if not c:
            return key
        th = rs.highest_root
        return tuple(x + c * t for x, t in zip(key[:n], th)) + (key[n], norm(key[n + 1] - c))
    c = key[i - 1]
    if not c:
        return key
    a = rs.simple_roots[i - 1]
    return tuple(x - c * y for x, y in zip(key[:n], a)) + key[n:]


def affine_reflect(rs: RootSystem, i: int, xi: AffWeight) -> AffWeight:
    """``r_i(xi) = xi - <xi, alpha_i^vee> alpha_i`` with ``alpha_0 = delta - theta``."""
    if not 0 <= i <= rs.rank:
        raise RootSystemError(f"index {i} outside the affine index set")
    return AffWeight.from_key(_reflect_key(rs, i, xi.key))


def translate(rs: RootSystem, alpha: Weight, xi: AffWeight) -> AffWeight:
    """``t_alpha(x) = x + (x|delta) alpha - ((x|alpha) + (x|delta)(alpha|alpha)/2) delta``."""
    lev = xi.level
    fin = tuple(x + lev * a for x, a in zip(xi.fin, alpha))
    deg = xi.degree - rs.inner(xi.fin, alpha) - Fraction(lev) * rs.inner(alpha, alpha) / 2
    return AffWeight(fin, lev, deg)


def apply_affine_word(rs: RootSystem, word: Sequence[int], xi: AffWeight) -> AffWeight:
    """Evaluate ``r_{i1} r_{i2} ... r_{ik}`` on ``xi`` (rightmost letter first)."""
    key = xi.key
    for i in reversed(word):
        key = _reflect_key(rs, i, key)
    return AffWeight.from_key(key)


def is_affine_dominant(rs: RootSystem, xi: AffWeight) -> bool:
    return all(affine_pairing(rs, i, xi) >= 0 for i in range(rs.rank + 1))


def dominant_reduce(rs: RootSystem, xi: AffWeight, largest_first: bool = False,
                    max_steps: int = 100_000):
    """Reflect a positive-level weight into the dominant chamber.

    Returns ``(Lambda, word)`` with ``apply_affine_word(word, Lambda) == xi``.
    The word is a reduced expression of the shortest ``w`` with ``w Lambda = xi``.
    """
    if xi.level <= 0:
        raise UnsupportedInputError(f"dominant_reduce needs positive level, got {xi.level}")
    n = rs.rank
    order = range(n, -1, -1) if largest_first else range(n + 1)
    th = rs.theta_coroot
    key = xi.key
    word = []
    for _ in range(max_steps):
        for i in order:
            if i == 0:
                p = key[n] - sum(t * x for t, x in zip(th, key[:n]))
            else:
                p = key[i - 1]
            if p < 0:
                key = _reflect_key(rs, i, key)
                word.append(i)
                break
        else:
            return AffWeight.from_key(key), tuple(word)
    raise RuntimeError("dominant_reduce exceeded its iteration cap")


@dataclass(frozen=True)
class AffWeylElement:
    """Element ``w . t_mu`` of the affine Weyl group ``W x| T_M``.

    ``w`` is stored as a matrix on fundamental-weight coordinates together with
    its inverse. Composition: ``(w1, mu1)(w2, mu2) = (w1 w2, w2^{-1} mu1 + mu2)``.
    """

    rs: RootSystem = field(compare=False, repr=False)
    w: tuple
    mu: Weight
    w_inv: tuple = field(compare=False, repr=False)

    @classmethod
    def identity(cls, rs: RootSystem) -> "AffWeylElement":
        e = identity_matrix(rs.rank)
        return cls(rs, e, rs.zero, e)

    @classmethod
    def simple_reflection(cls, rs: RootSystem, i: int) -> "AffWeylElement":
        if i == 0:
            # r_0 = t_theta r_theta = r_theta t_{-theta}
            m = rs.reflection_matrix(rs.highest_root)
            return cls(rs, m, tuple(-x for x in rs.highest_root), m)
        if not 1 <= i <= rs.rank:
            raise RootSystemError(f"index {i} outside the affine index set")
        m = rs.reflection_matrix(rs.simple_roots[i - 1])
        return cls(rs, m, rs.zero, m)

    @classmethod
    def from_word(cls, rs: RootSystem, word: Sequence[int]) -> "AffWeylElement":
        x = cls.identity(rs)
        for i in word:
            x = x * cls.simple_reflection(rs, i)
        return x

    @classmethod
    def finite(cls, rs: RootSystem, word: Sequence[int]) -> "AffWeylElement":
        """Element of ``W`` from a word in the finite simple reflections (0-based)."""
        return cls.from_word(rs, [i + 1 for i in word])

    @classmethod
    def w0(cls, rs: RootSystem) -> "AffWeylElement":
        return cls.finite(rs, rs.longest_word)

    def __mul__(self, other: "AffWeylElement") -> "AffWeylElement":
        mu = tuple(a + b for a, b in zip(mat_vec(other.w_inv, self.mu), other.mu))
        return AffWeylElement(self.rs, mat_mul(self.w, other.w), mu,
                              mat_mul(other.w_inv, self.w_inv))

    def inverse(self) -> "AffWeylElement":
        # (w t_mu)^{-1} = t_{-mu} w^{-1} = w^{-1} t_{-w mu}
        return AffWeylElement(self.rs, self.w_inv, tuple(-x for x in mat_vec(self.w, self.mu)),
                              self.w)

    def act(self, xi: AffWeight) -> AffWeight:
        y = translate(self.rs, self.mu, xi)
        return AffWeight(mat_vec(self.w, y.fin), y.level, y.degree)

    def __call__(self, xi: AffWeight) -> AffWeight:
        return self.act(xi)

    def reduced_word(self, largest_first: bool = False) -> tuple:
        _, word = dominant_reduce(self.rs, self.act(rho_hat(self.rs)), largest_first)
        return word

    def length(self) -> int:
        return len(self.reduced_word())

    def is_translation(self) -> bool:
        return self.w == identity_matrix(self.rs.rank)

    def finite_word(self) -> tuple:
        """Reduced word (0-based finite indices) of the finite part ``w``."""
        _, word = self.rs.to_dominant(mat_vec(self.w, self.rs.rho))
        return word

    def __str__(self) -> str:
        fw = self.finite_word()
        wpart = " ".join(f"r{i + 1}" for i in fw) if fw else "1"
        return f"{wpart} · t_({','.join(str(x) for x in self.mu)})"


def element_length(rs: RootSystem, x: AffWeylElement) -> int:
    """Coxeter length, read off from reducing ``x(rho_hat)`` to the dominant chamber."""
    _, word = dominant_reduce(rs, x.act(rho_hat(rs)))
    return len(word)


def translation_element(rs: RootSystem, mu: Weight) -> AffWeylElement:
    """``t_mu`` for ``mu`` in the coroot lattice ``M``."""
    mu = tuple(norm(x) for x in mu)
    if not rs.lattice_membership(mu).in_M:
        raise LatticeError(f"{mu} is not in the coroot lattice M; "
                           "translations by L \\ M need the extended affine Weyl group")
    e = identity_matrix(rs.rank)
    return AffWeylElement(rs, e, mu, e)
