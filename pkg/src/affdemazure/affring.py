"""Exact group-ring arithmetic over the affine weight lattice.

An affine weight ``mu + a*Lambda_0 + b*delta`` is keyed internally by the flat
tuple ``(*mu, a, b)`` with ``mu`` in fundamental-weight coordinates.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .rootsys import RootSystem, Weight, norm


class NormalizationError(ValueError):
    """A grading was requested relative to an incompatible base degree."""


@dataclass(frozen=True, order=True)
class AffWeight:
    fin: Weight
    level: object = 0
    degree: object = 0

    def __post_init__(self):
        object.__setattr__(self, "fin", tuple(norm(x) for x in self.fin))
        object.__setattr__(self, "level", norm(self.level))
        object.__setattr__(self, "degree", norm(self.degree))

    @property
    def key(self) -> tuple:
        return self.fin + (self.level, self.degree)

    @classmethod
    def from_key(cls, key: tuple) -> "AffWeight":
        return cls(key[:-2], key[-2], key[-1])

    def __add__(self, other: "AffWeight") -> "AffWeight":
        return AffWeight(tuple(a + b for a, b in zip(self.fin, other.fin)),
                         self.level + other.level, self.degree + other.degree)

    def __sub__(self, other: "AffWeight") -> "AffWeight":
        return AffWeight(tuple(a - b for a, b in zip(self.fin, other.fin)),
                         self.level - other.level, self.degree - other.degree)

    def __neg__(self) -> "AffWeight":
        return AffWeight(tuple(-a for a in self.fin), -self.level, -self.degree)

    def __rmul__(self, c) -> "AffWeight":
        return AffWeight(tuple(c * a for a in self.fin), c * self.level, c * self.degree)

    def shift(self, d) -> "AffWeight":
        """Add ``d * delta``."""
        return AffWeight(self.fin, self.level, self.degree + d)

    def __str__(self) -> str:
        return format_weight(self.key)


def fundamental_affine(rs: RootSystem, i: int) -> AffWeight:
    """``Lambda_i``; ``Lambda_0`` for ``i == 0``, else ``omega_i + <omega_i, theta^vee> Lambda_0``."""
    if i == 0:
        return AffWeight(rs.zero, 1, 0)
    fin = tuple(int(j == i - 1) for j in range(rs.rank))
    return AffWeight(fin, rs.pairing_theta(fin), 0)


def rho_hat(rs: RootSystem) -> AffWeight:
    """The regular dominant weight ``sum_i Lambda_i`` over the affine index set."""
    w = AffWeight(rs.zero, 0, 0)
    for i in range(rs.rank + 1):
        w = w + fundamental_affine(rs, i)
    return w


def affine_form(rs: RootSystem, x: AffWeight, y: AffWeight):
    """Extension of ``(.|.)`` with ``(delta|Lambda_0) = 1`` and ``delta, Lambda_0`` isotropic."""
    return norm(rs.inner(x.fin, y.fin) + x.level * y.degree + x.degree * y.level)


def affine_pairing(rs: RootSystem, i: int, x: AffWeight):
    """``<x, alpha_i^vee>`` for ``i`` in the affine index set (0 is the affine node)."""
    if i == 0:
        return norm(x.level - rs.pairing_theta(x.fin))
    return x.fin[i - 1]


def format_weight(key: tuple) -> str:
    fin, lev, deg = key[:-2], key[-2], key[-1]
    s = "(" + ",".join(str(x) for x in fin) + ")"
    if lev:
        s += f"+{lev}L0" if lev != 1 else "+L0"
    if deg:
        s += f"{deg:+}d" if isinstance(deg, int) else f"+({deg})d"
    return s


def _rat_json(x):
    x = norm(x)
    return x if isinstance(x, int) else str(x)


def _rat_parse(x):
    return norm(Fraction(x))


class CharElement:
    """Finitely supported integer combination of exponentials ``e^xi``.

    Values are immutable; every operation returns a new element with zero
    coefficients removed.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping | Iterable = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = coeffs
        c = {}
        for k, v in items:
            if isinstance(k, AffWeight):
                k = k.key
            if v:
                c[k] = c.get(k, 0) + v
        self._c = {k: v for k, v in c.items() if v}

    @classmethod
    def _raw(cls, d: dict) -> "CharElement":
        obj = cls.__new__(cls)
        obj._c = {k: v for k, v in d.items() if v}
        return obj

    @classmethod
    def monomial(cls, w: AffWeight | tuple, coeff: int = 1) -> "CharElement":
        key = w.key if isinstance(w, AffWeight) else tuple(w)
        return cls._raw({key: coeff})

    @classmethod
    def one(cls, rank: int) -> "CharElement":
        return cls._raw({(0,) * (rank + 2): 1})

    # -- mapping-like access ----------------------------------------------

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def terms(self) -> list:
        return [(AffWeight.from_key(k), v) for k, v in sorted(self._c.items())]

    def coefficient(self, w: AffWeight | tuple) -> int:
        key = w.key if isinstance(w, AffWeight) else tuple(w)
        return self._c.get(key, 0)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __iter__(self):
        return iter(sorted(self._c))

    def dim(self) -> int:
        """Coefficient sum: the dimension of the module with this character."""
        return sum(self._c.values())

    # -- ring structure ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CharElement):
            return self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "CharElement") -> "CharElement":
        d = dict(self._c)
        for k, v in other._c.items():
            d[k] = d.get(k, 0) + v
        return CharElement._raw(d)

    def __neg__(self) -> "CharElement":
        return CharElement._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "CharElement") -> "CharElement":
        return self + (-other)

    def __mul__(self, other) -> "CharElement":
        if isinstance(other, int):
            return CharElement._raw({k: other * v for k, v in self._c.items()})
        if not isinstance(other, CharElement):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out: dict = defaultdict(int)
        for kb, vb in b.items():
            for ka, va in a.items():
                out[tuple(x + y for x, y in zip(ka, kb))] += va * vb
        return CharElement._raw(out)

    __rmul__ = __mul__

    def shift(self, d) -> "CharElement":
        """Multiply by ``e^{d delta}``."""
        return CharElement._raw({k[:-1] + (norm(k[-1] + d),): v for k, v in self._c.items()})

    # -- specializations ---------------------------------------------------

    def specialize_delta(self) -> "CharElement":
        """Image modulo ``e^delta = 1``: every degree coordinate set to zero."""
        out: dict = defaultdict(int)
        for k, v in self._c.items():
            out[k[:-1] + (0,)] += v
        return CharElement._raw(out)

    def restrict_h(self) -> "CharElement":
        """Forget both ``Lambda_0`` and ``delta`` coordinates (the h-character)."""
        out: dict = defaultdict(int)
        for k, v in self._c.items():
            out[k[:-2] + (0, 0)] += v
        return CharElement._raw(out)

    def levels(self) -> set:
        return {k[-2] for k in self._c}

    def degrees(self) -> set:
        return {k[-1] for k in self._c}

    def graded_character(self, base_degree) -> dict:
        return graded_character(self, base_degree)

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> list:
        return [{"weight": [_rat_json(x) for x in k[:-2]], "level": _rat_json(k[-2]),
                 "degree": _rat_json(k[-1]), "coeff": v}
                for k, v in sorted(self._c.items())]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: list) -> "CharElement":
        return cls([(tuple(_rat_parse(x) for x in e["weight"])
                     + (_rat_parse(e["level"]), _rat_parse(e["degree"])), int(e["coeff"]))
                    for e in obj])

    @classmethod
    def from_json(cls, text: str) -> "CharElement":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items(), reverse=True):
            mono = "e^" + format_weight(k)
            parts.append(mono if v == 1 else f"{v}*{mono}")
        return " + ".join(parts)


def specialize_delta(f: CharElement) -> CharElement:
    return f.specialize_delta()


def restrict_h(f: CharElement) -> CharElement:
    return f.restrict_h()


def graded_character(f: CharElement, base_degree) -> dict:
    """q-graded h-character ``{(fin, grade): coeff}``.

    The grade of ``e^{mu + a Lambda_0 + b delta}`` is ``b - base_degree``:
    acting by ``x (x) t^r`` raises the delta-coefficient by ``r``.
    """
    out: dict = defaultdict(int)
    for k, v in f.items():
        g = Fraction(k[-1]) - Fraction(base_degree)
        if g.denominator != 1 or g < 0:
            raise NormalizationError(
                f"term {format_weight(k)} has grade {g} relative to base degree {base_degree}")
        out[k[:-2], int(g)] += v
    return {k: v for k, v in sorted(out.items()) if v}


def graded_pieces(f: CharElement, base_degree) -> dict:
    """Split a graded character into ``{grade: CharElement}`` (level 0, degree 0)."""
    pieces: dict = defaultdict(dict)
    for (fin, g), v in graded_character(f, base_degree).items():
        pieces[g][fin + (0, 0)] = v
    return {g: CharElement._raw(d) for g, d in sorted(pieces.items())}


def graded_from_pieces(pieces: Mapping[int, CharElement]) -> dict:
    out: dict = {}
    for g, ch in pieces.items():
        for k, v in ch.items():
            out[k[:-2], g] = out.get((k[:-2], g), 0) + v
    return {k: v for k, v in sorted(out.items()) if v}


def shift_graded(gch: Mapping, s: int) -> dict:
    """Multiply a graded character by ``q^s``."""
    return {(fin, g + s): v for (fin, g), v in gch.items()}


def add_graded(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in sorted(out.items()) if v}


def finite_monomial(fin: Weight, coeff: int = 1) -> CharElement:
    return CharElement.monomial(tuple(fin) + (0, 0), coeff)
