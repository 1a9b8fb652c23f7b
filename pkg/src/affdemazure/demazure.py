"""Demazure operators and characters of (generalized) Demazure modules.

Characters live in :class:`~affdemazure.affring.CharElement`. Demazure
operators use the closed forms of the divided difference

    D_i(e^L) = (e^L - e^{r_i(L) - alpha_i}) / (1 - e^{-alpha_i})

so no rational functions are ever formed.
"""
from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .affring import AffWeight, CharElement, graded_character, graded_pieces
from .affweyl import AffWeylElement, dominant_reduce, element_length, is_affine_dominant
from .cache import DiskCache
from .rootsys import RootSystem, RootSystemError, Weight, norm


class DomainError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class NotACharacterError(ValueError):
    pass


def demazure_op(rs: RootSystem, i: int, f: CharElement) -> CharElement:
    """Apply the Demazure operator ``D_i`` (``i = 0`` is the affine node)."""
    n = rs.rank
    if not 0 <= i <= n:
        raise RootSystemError(f"index {i} outside the affine index set")
    if i == 0:
        step = tuple(rs.highest_root) + (0, -1)  # -alpha_0 = theta - delta
        th = rs.theta_coroot
    else:
        step = tuple(-a for a in rs.simple_roots[i - 1]) + (0, 0)  # -alpha_i
    out: dict = defaultdict(int)
    for key, c in f.items():
        if i == 0:
            p = key[n] - sum(t * x for t, x in zip(th, key[:n]))
        else:
            p = key[i - 1]
        if not isinstance(p, int):
            if Fraction(p).denominator != 1:
                raise DomainError(f"non-integral pairing {p} with alpha_{i}^vee")
            p = int(p)
        if p >= 0:
            k = key
            out[k] += c
            for _ in range(p):
                k = tuple(a + b for a, b in zip(k, step))
                out[k] += c
        elif p <= -2:
            k = key
            for _ in range(-p - 1):
                k = tuple(a - b for a, b in zip(k, step))
                out[k] -= c
    return CharElement._raw(out)


def demazure_op_word(rs: RootSystem, word: Sequence[int], f: CharElement) -> CharElement:
    """``D_{i1} D_{i2} ... D_{ik} f``; the last letter acts first."""
    for i in reversed(word):
        f = demazure_op(rs, i, f)
    return f


@dataclass(frozen=True)
class DemazureCharacter:
    char: CharElement
    extremal_weight: AffWeight
    generator_weight: AffWeight

    @property
    def base_degree(self):
        return self.generator_weight.degree

    def graded(self) -> dict:
        """``{(fin, grade): mult}`` with the generator in grade 0."""
        return graded_character(self.char, self.base_degree)

    def pieces(self) -> dict:
        return graded_pieces(self.char, self.base_degree)

    def dim(self) -> int:
        return self.char.dim()

    def h_character(self) -> CharElement:
        return self.char.restrict_h()

    def check_invariants(self) -> None:
        for name, w in (("extremal", self.extremal_weight), ("generator", self.generator_weight)):
            if self.char.coefficient(w) != 1:
                raise AssertionError(f"{name} weight {w} has coefficient "
                                     f"{self.char.coefficient(w)}, expected 1")
        bad = [v for _, v in self.char.items() if v < 0]
        if bad:
            raise AssertionError("negative coefficient in a Demazure character")


def _w0_affine(rs: RootSystem, xi: AffWeight) -> AffWeight:
    return AffWeight(rs.w0(xi.fin), xi.level, xi.degree)


def demazure_from_extremal(rs: RootSystem, xi: AffWeight) -> DemazureCharacter:
    """Character of ``D(xi)`` for a positive-level extremal weight ``xi``."""
    lam, word = dominant_reduce(rs, xi)
    char = demazure_op_word(rs, word, CharElement.monomial(lam))
    return DemazureCharacter(char, xi, _w0_affine(rs, xi))


_lock = threading.Lock()
_memo: dict = {}
_disk: DiskCache | None = None


def set_disk_cache(directory) -> None:
    """Enable (path) or disable (``None``) the on-disk character cache."""
    global _disk
    _disk = DiskCache(directory) if directory is not None else None


def clear_memo() -> None:
    with _lock:
        _memo.clear()
    finite_character.cache_clear()


def _check_dominant(rs: RootSystem, lam: Weight) -> Weight:
    lam = tuple(norm(x) for x in lam)
    if len(lam) != rs.rank or not rs.is_dominant(lam):
        raise DomainError(f"{lam} is not a dominant integral weight of {rs.cartan_type}")
    return lam


def demazure_character(rs: RootSystem, level: int, lam: Weight) -> DemazureCharacter:
    """Character of ``D(level, lam)`` realized as ``D(w0 lam + level Lambda_0)``.

    The extremal weight is taken at degree 0, so the generator (weight
    ``lam + level Lambda_0``) sits in grade 0.
    """
    lam = _check_dominant(rs, lam)
    if not isinstance(level, int) or level < 1:
        raise DomainError(f"level must be a positive integer, got {level!r}")
    key = (rs.cartan_type, level, lam)
    with _lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    xi = AffWeight(rs.w0(lam), level, 0)
    dkey = f"demazure:{rs.cartan_type}:{level}:{','.join(map(str, lam))}"
    char = _disk.get(dkey) if _disk is not None else None
    if char is not None:
        out = DemazureCharacter(char, xi, _w0_affine(rs, xi))
    else:
        out = demazure_from_extremal(rs, xi)
        if _disk is not None:
            _disk.put(dkey, out.char)
    with _lock:
        _memo[key] = out
    return out


def generalized_demazure_character(rs: RootSystem,
                                   factors: Iterable[tuple[AffWeylElement, AffWeight]],
                                   check_lengths: bool = True) -> DemazureCharacter:
    """Nested Demazure formula ``D_{w1}(e^{L1} D_{w2}(e^{L2} ... D_{wp}(e^{Lp})))``.

    Requires ``l(w1 ... wp) = l(w1) + ... + l(wp)`` and each ``Lj`` dominant.
    """
    factors = list(factors)
    if not factors:
        raise PreconditionError("at least one factor is required")
    for _, lam in factors:
        if lam.level < 0 or not is_affine_dominant(rs, lam) or any(
                Fraction(x).denominator != 1 for x in lam.key):
            raise DomainError(f"{lam} is not a dominant integral affine weight")
    prefixes = []
    acc = AffWeylElement.identity(rs)
    for w, _ in factors:
        acc = acc * w
        prefixes.append(acc)
    words = [w.reduced_word() for w, _ in factors]
    if check_lengths:
        total = element_length(rs, prefixes[-1])
        if total != sum(len(wd) for wd in words):
            raise PreconditionError(
                f"length additivity fails: l(product) = {total}, "
                f"sum of lengths = {sum(len(wd) for wd in words)}")
    inner = CharElement.one(rs.rank)
    for (w, lam), word in zip(reversed(factors), reversed(words)):
        inner = demazure_op_word(rs, word, CharElement.monomial(lam) * inner)
    extremal = AffWeight(rs.zero, 0, 0)
    for x, (_, lam) in zip(prefixes, factors):
        extremal = extremal + x.act(lam)
    out = DemazureCharacter(inner, extremal, _w0_affine(rs, extremal))
    out.check_invariants()
    return out


# -- finite characters and independent oracles ------------------------------

@lru_cache(maxsize=None)
def _finite_character(rs: RootSystem, lam: Weight) -> CharElement:
    f = CharElement.monomial(lam + (0, 0))
    word = [i + 1 for i in rs.longest_word]
    return demazure_op_word(rs, word, f)


def finite_character(rs: RootSystem, lam: Weight) -> CharElement:
    """``ch V(lam)`` computed as ``D_{w0}(e^lam)`` at level 0."""
    return _finite_character(rs, _check_dominant(rs, lam))


finite_character.cache_clear = _finite_character.cache_clear


def weyl_dim(rs: RootSystem, lam: Weight) -> int:
    """Weyl dimension formula ``prod_{a>0} (lam+rho|a)/(rho|a)``."""
    lam = _check_dominant(rs, lam)
    lr = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for a in rs.positive_roots:
        num *= Fraction(rs.inner(lr, a)) / rs.inner(rs.rho, a)
    assert num.denominator == 1
    return int(num)


def freudenthal(rs: RootSystem, lam: Weight) -> dict:
    """Weight multiplicities of ``V(lam)`` by Freudenthal's recursion."""
    lam = _check_dominant(rs, lam)

    def is_weight(mu):
        dom, _ = rs.to_dominant(mu)
        diff = rs.alpha_coords(tuple(a - b for a, b in zip(lam, dom)))
        return all(Fraction(c).denominator == 1 and c >= 0 for c in diff)

    weights = {lam: 0}
    frontier = [lam]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for mu in frontier:
            for a in rs.simple_roots:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in weights and is_weight(nu):
                    weights[nu] = depth
                    nxt.append(nu)
        frontier = nxt

    def sq(mu):
        v = tuple(x + 1 for x in mu)
        return Fraction(rs.inner(v, v))

    top = sq(lam)
    mult = {lam: 1}
    for mu in sorted(weights, key=weights.get):
        if mu == lam:
            continue
        total = Fraction(0)
        for a in rs.positive_roots:
            nu = tuple(x + y for x, y in zip(mu, a))
            while nu in weights:
                total += mult[nu] * Fraction(rs.inner(nu, a))
                nu = tuple(x + y for x, y in zip(nu, a))
        m = 2 * total / (top - sq(mu))
        assert m.denominator == 1
        mult[mu] = int(m)
    return {mu: m for mu, m in sorted(mult.items()) if m}


def decompose_finite(rs: RootSystem, f: CharElement) -> list:
    """Irreducible decomposition ``[(lam, mult), ...]`` of a finite character."""
    for k in f:
        if k[-2] != 0 or k[-1] != 0:
            raise DomainError("decompose_finite expects a level-0, degree-0 character")
    rest = dict(f.items())
    out = []
    while rest:
        dom = [k[:-2] for k, v in rest.items() if v and all(x >= 0 for x in k[:-2])]
        if not dom:
            witness = min(rest)
            raise NotACharacterError(f"leftover non-dominant support, e.g. {witness[:-2]}")
        lam = max(dom, key=lambda mu: (rs.height(mu), mu))
        m = rest[lam + (0, 0)]
        if m < 0:
            raise NotACharacterError(f"negative multiplicity {m} for V{lam}")
        out.append((lam, m))
        for k, v in finite_character(rs, lam).items():
            nv = rest.get(k, 0) - m * v
            if nv:
                rest[k] = nv
            else:
                rest.pop(k, None)
    return sorted(out)
