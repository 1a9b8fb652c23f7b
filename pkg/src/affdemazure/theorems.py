"""Character-level verification of fusion-product identities for current algebras.

Each ``verify_*`` function returns a :class:`VerificationReport`. Passing
``fault=True`` perturbs one computed coefficient (or count) by +1 before the
comparison; the report must then fail with a witness. This is how the checker
itself is tested.
"""
from __future__ import annotations

import functools
import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, fields
from typing import Sequence

from .affring import (AffWeight, CharElement, add_graded, graded_from_pieces, rho_hat,
                      shift_graded)
from .affweyl import (AffWeylElement, apply_affine_word, dominant_reduce, element_length,
                      translation_element)
from .demazure import (DemazureCharacter, NotACharacterError, PreconditionError,
                       decompose_finite, demazure_character, demazure_from_extremal,
                       demazure_op, demazure_op_word, finite_character, freudenthal,
                       generalized_demazure_character, weyl_dim)
from .rootsys import RootSystem, Weight, build_root_system, mat_vec


@dataclass(frozen=True)
class FusionSpec:
    ell: int
    m: int
    k: int
    lambda_parts: tuple = ()

    def lam(self, rs: RootSystem) -> Weight:
        out = rs.zero
        for part in self.lambda_parts:
            out = tuple(a + b for a, b in zip(out, part))
        return out


@dataclass
class VerificationReport:
    case_id: str
    suite: str
    inputs: dict
    passed: bool
    witness: str | None = None
    seconds: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if not self.passed and not self.witness:
            self.witness = "unspecified failure"

    def to_json(self, timing: bool = True) -> str:
        d = asdict(self)
        if not timing:
            del d["seconds"]
        return json.dumps(d, sort_keys=True, default=str)


# -- small helpers --------------------------------------------------------------

def _perturb_char(f: CharElement) -> CharElement:
    key = min(f.coeffs) if f else (0, 0, 0)
    return f + CharElement.monomial(key)


def _perturb_graded(g: dict) -> dict:
    g = dict(g)
    key = min(g) if g else ((0,), 0)
    g[key] = g.get(key, 0) + 1
    return g


def first_difference(a: dict, b: dict):
    """Smallest key where two coefficient maps disagree, or ``None``."""
    for key in sorted(set(a) | set(b)):
        if a.get(key, 0) != b.get(key, 0):
            return key, a.get(key, 0), b.get(key, 0)
    return None


def _char_witness(lhs: CharElement, rhs: CharElement):
    d = first_difference(lhs.coeffs, rhs.coeffs)
    if d is None:
        return None
    key, x, y = d
    fin = ",".join(str(c) for c in key[:-2])
    return f"monomial e^({fin}) level {key[-2]} degree {key[-1]}: lhs {x} != rhs {y}"


def _graded_witness(lhs: dict, rhs: dict):
    d = first_difference(lhs, rhs)
    if d is None:
        return None
    (fin, g), x, y = d
    return f"monomial q^{g} e^({','.join(map(str, fin))}): lhs {x} != rhs {y}"


def theta_multiple(rs: RootSystem, k: int) -> Weight:
    return tuple(k * x for x in rs.highest_root)


def w0_translation(rs: RootSystem, mu: Weight) -> AffWeylElement:
    """``t_{w0 mu}`` for ``mu`` in ``M``."""
    return translation_element(rs, rs.w0(mu))


def dim_demazure(rs: RootSystem, level: int, lam: Weight) -> int:
    """``dim D(level, lam)``; the trivial module when ``lam = 0`` (any level)."""
    if not any(lam):
        return 1
    return demazure_character(rs, level, lam).dim()


def h_demazure(rs: RootSystem, level: int, lam: Weight) -> CharElement:
    if not any(lam):
        return CharElement.one(rs.rank)
    return demazure_character(rs, level, lam).h_character()


def m_plus_weights(rs: RootSystem, bound: int) -> list:
    """Dominant weights in the coroot lattice ``M`` with ``(lam|theta) <= bound``."""
    ranges = [range(0, bound // c + 1) for c in rs.theta_coroot]
    out = []
    for lam in itertools.product(*ranges):
        if rs.pairing_theta(lam) <= bound and rs.lattice_membership(lam).in_M_plus:
            out.append(tuple(lam))
    return sorted(out, key=lambda x: (rs.pairing_theta(x), x))


def dominant_weights(rs: RootSystem, coord_sum: int) -> list:
    return [lam for lam in itertools.product(range(coord_sum + 1), repeat=rs.rank)
            if sum(lam) <= coord_sum]


def _lam_str(lam) -> str:
    return "(" + ",".join(str(x) for x in lam) + ")"


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.seconds = round(time.perf_counter() - t0, 4)
        return rep
    return wrapper


# -- the module V^{l, l lam}_{m, k theta} as a generalized Demazure module ----

def v_module_factors(rs: RootSystem, ell: int, lam: Weight, m: int, k: int,
                     shape: str | None = None) -> list:
    """Factor list realizing ``V^{l,l lam}_{m,k theta}`` as a generalized Demazure module.

    ``shape`` is ``"le"`` for the ``m <= 2k`` form and ``"ge"`` for ``m >= 2k``;
    by default the applicable one is chosen (``"le"`` when ``m == 2k``).
    """
    if not ell >= m >= k >= 0:
        raise PreconditionError(f"need l >= m >= k >= 0, got l={ell}, m={m}, k={k}")
    if shape is None:
        shape = "le" if m <= 2 * k else "ge"
    z = rs.zero
    first = (w0_translation(rs, lam), AffWeight(z, ell - m, 0))
    if shape == "le":
        if m > 2 * k:
            raise PreconditionError("the m <= 2k form needs m <= 2k")
        second = (w0_translation(rs, rs.highest_root),
                  AffWeight(theta_multiple(rs, m - k), m, 0))
    else:
        if m < 2 * k:
            raise PreconditionError("the m >= 2k form needs m >= 2k")
        second = (AffWeylElement.w0(rs), AffWeight(theta_multiple(rs, k), m, 0))
    return [first, second]


def v_module_character(rs: RootSystem, ell: int, lam: Weight, m: int, k: int,
                       shape: str | None = None) -> DemazureCharacter:
    return generalized_demazure_character(rs, v_module_factors(rs, ell, lam, m, k, shape))


def demazure_quotient_character(rs: RootSystem, ell: int, lam: Weight, k: int) -> DemazureCharacter:
    """``D(t_{w0(lam+theta)}(l Lambda_0 + (l-k) theta))``, via its extremal weight."""
    x = w0_translation(rs, tuple(a + b for a, b in zip(lam, rs.highest_root)))
    xi = x.act(AffWeight(theta_multiple(rs, ell - k), ell, 0))
    return demazure_from_extremal(rs, xi)


# -- graded decomposition of D(l, k theta) -------------------------------------

@_timed
def verify_dlk_decomposition(rs: RootSystem, k: int, ell: int, fault: bool = False):
    """Grade ``i`` of ``D(l, k theta)`` is ``V((k-i) theta)`` for ``0 <= i <= 2k - l``."""
    if not (k >= 1 and k <= ell <= 2 * k):
        raise PreconditionError(f"need k <= l <= 2k, got k={k}, l={ell}")
    cid = f"dlk/{rs.cartan_type}/k={k}/l={ell}"
    inputs = {"type": str(rs.cartan_type), "k": k, "ell": ell}
    d = demazure_character(rs, ell, theta_multiple(rs, k))
    got = d.graded()
    if fault:
        got = _perturb_graded(got)
    expected = graded_from_pieces({i: finite_character(rs, theta_multiple(rs, k - i))
                                   for i in range(2 * k - ell + 1)})
    w = _graded_witness(got, expected)
    if w is None:
        dim_expected = sum(weyl_dim(rs, theta_multiple(rs, k - i)) for i in range(2 * k - ell + 1))
        if sum(got.values()) != dim_expected:
            w = f"dimension {sum(got.values())} != {dim_expected}"
    return VerificationReport(cid, "dlk", inputs, w is None, w)


# -- dimension bookkeeping of the short exact sequences -----------------------

def _regime_ok(regime: int, ell: int, m: int, k: int) -> bool:
    if k < 1 or ell < 1:
        return False
    if regime == 1:
        return ell >= 2 * k
    if regime == 2:
        return ell >= 2 * k and k < m <= 2 * k
    if regime == 3:
        return ell <= 2 * k and k <= m < ell
    return False


@_timed
def verify_mtone_dims(rs: RootSystem, spec: FusionSpec, regime: int, fault: bool = False):
    """Dimension identities implied by the three short exact sequences.

    Fusion-product dimensions are products of Demazure dimensions. The
    same-level quotient must also match ``dim D(l, l lam + k theta)``, and the
    generalized Demazure realizations must have the fusion dimensions.
    """
    ell, m, k = spec.ell, spec.m, spec.k
    if regime == 1:
        m = k
    if not _regime_ok(regime, ell, m, k):
        raise PreconditionError(f"(l, m, k) = ({ell}, {m}, {k}) is not in regime {regime}")
    for part in spec.lambda_parts:
        if not rs.lattice_membership(part).in_M_plus:
            raise PreconditionError(f"lambda part {part} is not in M+")
    lam = spec.lam(rs)
    cid = (f"mtone/{rs.cartan_type}/r{regime}/l={ell}/m={m}/k={k}/"
           f"lam={'+'.join(_lam_str(p) for p in spec.lambda_parts) or '0'}")
    inputs = {"type": str(rs.cartan_type), "regime": regime, "ell": ell, "m": m, "k": k,
              "lambda_parts": [list(p) for p in spec.lambda_parts]}
    P = 1
    for part in spec.lambda_parts:
        P *= dim_demazure(rs, ell, tuple(ell * x for x in part))
    th = lambda j: theta_multiple(rs, j)  # noqa: E731
    quot = P * dim_demazure(rs, ell, th(k))
    collapsed = dim_demazure(rs, ell, tuple(ell * a + k * t for a, t in zip(lam, rs.highest_root)))
    if quot != collapsed and not fault:
        return VerificationReport(cid, "mtone", inputs, False,
                                  f"fusion quotient dim {quot} != dim D(l, l lam + k theta) = {collapsed}")
    if regime == 1:
        middle = P * dim_demazure(rs, k, th(k))
        rhs = P * dim_demazure(rs, max(k - 1, 1), th(k - 1)) + quot
        shapes = [(k, k), (k - 1, k - 1)]
    elif regime == 2:
        middle = P * dim_demazure(rs, m, th(k))
        rhs = P * dim_demazure(rs, k, th(k)) - P * dim_demazure(rs, max(m - k - 1, 1), th(m - k - 1))
        shapes = [(m, k), (k, k), (m - k - 1, m - k - 1)]
    else:
        mp, kp = ell + m - 2 * k - 1, ell - k - 1
        middle = P * dim_demazure(rs, m, th(k))
        rhs = P * dim_demazure(rs, max(mp, 1), th(kp)) + quot
        shapes = [(m, k), (mp, kp)]
    if fault:
        middle += 1
    if middle != rhs:
        return VerificationReport(cid, "mtone", inputs, False,
                                  f"dimension {middle} != {rhs}")
    for mm, kk in shapes:
        gd = v_module_character(rs, ell, lam, mm, kk).dim()
        fus = P * dim_demazure(rs, max(mm, 1), th(kk))
        if gd != fus:
            return VerificationReport(cid, "mtone", inputs, False,
                                      f"generalized Demazure dim {gd} != fusion dim {fus} "
                                      f"for (m, k) = ({mm}, {kk})")
    return VerificationReport(cid, "mtone", inputs, True)


# -- graded identities from the Demazure-side exact sequences ------------------

def exactfg_shift(rs: RootSystem, lam: Weight, ell: int, m: int, k: int, regime: int) -> int:
    base = rs.inner(lam, rs.highest_root) + 1
    if regime == 1:
        return base
    if regime == 2:
        return (2 * k - m + 1) * base
    return (2 * k - ell + 1) * base


def exactfg_terms(rs: RootSystem, lam: Weight, ell: int, m: int, k: int, regime: int):
    """``(middle, sub, quotient)`` Demazure characters of the second sequence."""
    if regime == 1:
        middle = v_module_character(rs, ell, lam, k, k)
        sub = v_module_character(rs, ell, lam, k - 1, k - 1)
        quotient = demazure_quotient_character(rs, ell, lam, k)
    elif regime == 2:
        middle = v_module_character(rs, ell, lam, k, k)
        sub = v_module_character(rs, ell, lam, m - k - 1, m - k - 1)
        quotient = v_module_character(rs, ell, lam, m, k, shape="le")
    else:
        middle = v_module_character(rs, ell, lam, m, k, shape="le")
        sub = v_module_character(rs, ell, lam, ell + m - 2 * k - 1, ell - k - 1, shape="le")
        quotient = demazure_quotient_character(rs, ell, lam, k)
    return middle, sub, quotient


def check_graded_identity(middle: dict, sub: dict, quotient: dict, shift: int):
    """Witness string if ``middle != q^shift sub + quotient``, else ``None``."""
    return _graded_witness(middle, add_graded(shift_graded(sub, shift), quotient))


@_timed
def verify_exactfg_graded(rs: RootSystem, spec: FusionSpec, regime: int, fault: bool = False):
    """Exact q-graded identity ``ch(middle) = q^s ch(sub) + ch(quotient)``."""
    ell, m, k = spec.ell, spec.m, spec.k
    if regime == 1:
        m = k
    if not _regime_ok(regime, ell, m, k):
        raise PreconditionError(f"(l, m, k) = ({ell}, {m}, {k}) is not in regime {regime}")
    lam = spec.lam(rs)
    if not rs.lattice_membership(lam).in_M_plus:
        raise PreconditionError(f"lambda {lam} is not in M+")
    s = exactfg_shift(rs, lam, ell, m, k, regime)
    cid = f"exactfg/{rs.cartan_type}/r{regime}/l={ell}/m={m}/k={k}/lam={_lam_str(lam)}"
    inputs = {"type": str(rs.cartan_type), "regime": regime, "ell": ell, "m": m, "k": k,
              "lambda": list(lam), "shift": s}
    middle, sub, quotient = exactfg_terms(rs, lam, ell, m, k, regime)
    gm = middle.graded()
    if fault:
        gm = _perturb_graded(gm)
    w = check_graded_identity(gm, sub.graded(), quotient.graded(), s)
    return VerificationReport(cid, "exactfg", inputs, w is None, w)


# -- h-character product identity ---------------------------------------------

def hchar_factors(rs: RootSystem, levels: Sequence[int], lams: Sequence[Weight],
                  ell: int, lam_final: Weight) -> list:
    levels = list(levels)
    if any(a < b for a, b in zip(levels, levels[1:] + [ell])):
        raise PreconditionError(f"levels must satisfy l1 >= ... >= lp >= l, got {levels}, {ell}")
    for lam in lams:
        if not rs.lattice_membership(lam).in_M_plus:
            raise PreconditionError(f"{lam} is not in M+")
    xi = AffWeight(rs.w0(lam_final), ell, 0)
    big, word = dominant_reduce(rs, xi)
    last = AffWeylElement.from_word(rs, word)
    factors = []
    nxt = levels[1:] + [ell]
    for lj, lnext, lam in zip(levels, nxt, lams):
        factors.append((w0_translation(rs, lam), AffWeight(rs.zero, lj - lnext, 0)))
    factors.append((last, big))
    return factors


@_timed
def verify_hchar_product(rs: RootSystem, levels: Sequence[int], lams: Sequence[Weight],
                         ell: int, lam_final: Weight, fault: bool = False):
    """``ch_h`` of the nested generalized Demazure module equals the product of ``ch_h D``'s."""
    lams = [tuple(x) for x in lams]
    lam_final = tuple(lam_final)
    cid = (f"hchar/{rs.cartan_type}/levels={','.join(map(str, levels))}/"
           f"lams={'+'.join(_lam_str(x) for x in lams)}/l={ell}/final={_lam_str(lam_final)}")
    inputs = {"type": str(rs.cartan_type), "levels": list(levels),
              "lambdas": [list(x) for x in lams], "ell": ell, "lambda_final": list(lam_final)}
    gd = generalized_demazure_character(rs, hchar_factors(rs, levels, lams, ell, lam_final))
    lhs = gd.h_character()
    if fault:
        lhs = _perturb_char(lhs)
    rhs = h_demazure(rs, ell, lam_final)
    for lj, lam in zip(levels, lams):
        rhs = rhs * h_demazure(rs, lj, tuple(lj * x for x in lam))
    w = _char_witness(lhs, rhs)
    return VerificationReport(cid, "hchar", inputs, w is None, w)


# -- multiplicity dominance for tensor products of D(l, l theta) ---------------

def suffix_dominates(ls: Sequence[int], ms: Sequence[int]) -> bool:
    p = max(len(ls), len(ms))
    ls = list(ls) + [0] * (p - len(ls))
    ms = list(ms) + [0] * (p - len(ms))
    return all(sum(ls[i:]) >= sum(ms[i:]) for i in range(p))


def partitions(n: int, max_part: int | None = None) -> list:
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def theta_tensor_character(rs: RootSystem, parts: Sequence[int]) -> CharElement:
    out = CharElement.one(rs.rank)
    for lj in parts:
        out = out * h_demazure(rs, lj, theta_multiple(rs, lj))
    return out


@_timed
def verify_schur_dominance(rs: RootSystem, ls: Sequence[int], ms: Sequence[int],
                           fault: bool = False):
    """Multiplicities in ``(x) D(l_i, l_i theta)`` dominate those in ``(x) D(m_i, m_i theta)``."""
    ls, ms = tuple(ls), tuple(ms)
    if list(ls) != sorted(ls, reverse=True) or list(ms) != sorted(ms, reverse=True):
        raise PreconditionError("partitions must be weakly decreasing")
    if sum(ls) != sum(ms) or not suffix_dominates(ls, ms):
        raise PreconditionError(f"suffix-sum hypothesis fails for {ls} vs {ms}")
    cid = f"schur/{rs.cartan_type}/{_lam_str(ls)}>{_lam_str(ms)}"
    inputs = {"type": str(rs.cartan_type), "left": list(ls), "right": list(ms)}
    left = theta_tensor_character(rs, ls)
    if fault:
        left = _perturb_char(left)
    right = theta_tensor_character(rs, ms)
    try:
        dl = dict(decompose_finite(rs, left))
        dr = dict(decompose_finite(rs, right))
    except NotACharacterError as exc:
        return VerificationReport(cid, "schur", inputs, False, f"not a character: {exc}")
    for nu in sorted(set(dl) | set(dr)):
        if dl.get(nu, 0) < dr.get(nu, 0):
            return VerificationReport(cid, "schur", inputs, False,
                                      f"V{_lam_str(nu)}: left {dl.get(nu, 0)} < right {dr.get(nu, 0)}")
    return VerificationReport(cid, "schur", inputs, True)


# -- level constancy and the factor-out lemma -----------------------------------

@_timed
def verify_level_constancy(rs: RootSystem, ell: int, lam: Weight, fault: bool = False):
    """``D_w(e^Lambda) = e^{l Lambda_0} ch_h D(l, lam)`` modulo ``e^delta = 1``."""
    cid = f"level/{rs.cartan_type}/l={ell}/lam={_lam_str(lam)}"
    inputs = {"type": str(rs.cartan_type), "ell": ell, "lambda": list(lam)}
    d = demazure_character(rs, ell, lam)
    lhs = d.char.specialize_delta()
    if fault:
        lhs = _perturb_char(lhs)
    rhs = CharElement.monomial(AffWeight(rs.zero, ell, 0)) * d.h_character()
    w = _char_witness(lhs, rhs)
    if w is None and d.graded().get((tuple(lam), 0)) != 1:
        w = "generator weight missing from grade 0"
    return VerificationReport(cid, "level", inputs, w is None, w)


@_timed
def verify_factor_out(rs: RootSystem, mu: Weight, ell: int, shift: int, nu: Weight,
                      fault: bool = False):
    """``D_{t_{w0 mu}}(e^{l Lambda_0 + A delta} ch V) = D_{t_{w0 mu}}(e^{l Lambda_0 + A delta}) ch V``.

    Compared modulo ``e^delta = 1``, the ring where the identity is used. Before
    specialization the two sides differ in their delta-degrees (already for A1,
    ``mu = alpha_1``, ``V = V(omega_1)``); ``inputs["exact_before_specialization"]``
    records whether the unspecialized equality happens to hold.
    """
    cid = f"factor_out/{rs.cartan_type}/mu={_lam_str(mu)}/l={ell}/A={shift}/nu={_lam_str(nu)}"
    inputs = {"type": str(rs.cartan_type), "mu": list(mu), "ell": ell, "A": shift,
              "nu": list(nu)}
    word = w0_translation(rs, mu).reduced_word()
    base = CharElement.monomial(AffWeight(rs.zero, ell, shift))
    chv = finite_character(rs, nu)
    lhs = demazure_op_word(rs, word, base * chv)
    if fault:
        lhs = _perturb_char(lhs)
    rhs = demazure_op_word(rs, word, base) * chv
    inputs["exact_before_specialization"] = lhs == rhs
    w = _char_witness(lhs.specialize_delta(), rhs.specialize_delta())
    return VerificationReport(cid, "factor_out", inputs, w is None, w)


# -- finite characters against the classical oracles ----------------------------

@_timed
def verify_finite_character(rs: RootSystem, lam: Weight, fault: bool = False):
    cid = f"finite/{rs.cartan_type}/lam={_lam_str(lam)}"
    inputs = {"type": str(rs.cartan_type), "lambda": list(lam)}
    ch = finite_character(rs, lam)
    got = {k[:-2]: v for k, v in ch.items()}
    if fault:
        got = _perturb_graded(got)
    expected = freudenthal(rs, lam)
    d = first_difference(got, expected)
    w = None
    if d is not None:
        w = f"weight {_lam_str(d[0])}: Demazure {d[1]} != Freudenthal {d[2]}"
    elif sum(got.values()) != weyl_dim(rs, lam):
        w = f"dimension {sum(got.values())} != Weyl {weyl_dim(rs, lam)}"
    return VerificationReport(cid, "finite", inputs, w is None, w)


# -- Demazure operator laws and lengths ----------------------------------------

def words_by_element(rs: RootSystem, max_len: int) -> dict:
    """All words of length ``<= max_len`` grouped by the element they evaluate to.

    Elements are identified by their value on the regular weight ``rho_hat``.
    Returns ``{image key: (min length, [reduced words])}``.
    """
    probe = rho_hat(rs)
    groups: dict = {}
    letters = range(rs.rank + 1)
    for n in range(max_len + 1):
        for word in itertools.product(letters, repeat=n):
            if any(a == b for a, b in zip(word, word[1:])):
                continue
            key = apply_affine_word(rs, word, probe).key
            if key not in groups:
                groups[key] = (n, [word])
            elif groups[key][0] == n:
                groups[key][1].append(word)
    return groups


@_timed
def verify_operator_laws(rs: RootSystem, max_len: int = 6, fault: bool = False):
    """Idempotence ``D_i^2 = D_i`` and reduced-word independence on ``e^{rho_hat}``."""
    cid = f"ops/{rs.cartan_type}/len<={max_len}"
    inputs = {"type": str(rs.cartan_type), "max_len": max_len}
    probe = CharElement.monomial(rho_hat(rs))
    groups = words_by_element(rs, max_len)
    n_checked = 0
    for key, (n, words) in sorted(groups.items(), key=lambda kv: (kv[1][0], kv[0])):
        x = AffWeylElement.from_word(rs, words[0])
        if element_length(rs, x) != n:
            return VerificationReport(cid, "ops", inputs, False,
                                      f"element_length {element_length(rs, x)} != "
                                      f"search length {n} for word {words[0]}")
        ref = demazure_op_word(rs, words[0], probe)
        for word in words[1:]:
            got = demazure_op_word(rs, word, probe)
            w = _char_witness(ref, got)
            if w:
                return VerificationReport(cid, "ops", inputs, False,
                                          f"words {words[0]} vs {word}: {w}")
            n_checked += 1
        for i in range(rs.rank + 1):
            once = demazure_op(rs, i, ref)
            twice = demazure_op(rs, i, once)
            if fault:
                twice, fault = _perturb_char(twice), False
            w = _char_witness(twice, once)
            if w:
                return VerificationReport(cid, "ops", inputs, False, f"D_{i}^2 != D_{i}: {w}")
    inputs["elements"] = len(groups)
    inputs["word_pairs"] = n_checked
    return VerificationReport(cid, "ops", inputs, True)


@_timed
def verify_length_additivity(rs: RootSystem, lam: Weight, mu: Weight, fault: bool = False):
    """``l(t_{-lam} t_{-mu} w) = l(t_{-lam}) + l(t_{-mu} w)`` for every finite ``w``."""
    cid = f"lengths/{rs.cartan_type}/lam={_lam_str(lam)}/mu={_lam_str(mu)}"
    inputs = {"type": str(rs.cartan_type), "lambda": list(lam), "mu": list(mu)}
    tl = translation_element(rs, tuple(-x for x in lam))
    tm = translation_element(rs, tuple(-x for x in mu))
    len_tl = element_length(rs, tl)
    for word in _finite_words(rs):
        w = AffWeylElement.finite(rs, word)
        lhs = element_length(rs, tl * tm * w)
        if fault:
            lhs += 1
            fault = False
        rhs = len_tl + element_length(rs, tm * w)
        if lhs != rhs:
            return VerificationReport(cid, "lengths", inputs, False,
                                      f"w = {word}: l = {lhs} != {len_tl} + {rhs - len_tl}")
    return VerificationReport(cid, "lengths", inputs, True)


def _finite_words(rs: RootSystem) -> list:
    """One reduced word per element of the finite Weyl group."""
    seen = {}
    for w in rs.weyl_group_matrices():
        _, word = rs.to_dominant(mat_vec(w, rs.rho))
        seen[word] = w
    return sorted(seen, key=lambda x: (len(x), x))


# -- partition data and the sets S(r, s) ---------------------------------------

def xi_tuple(rs: RootSystem, spec: FusionSpec) -> dict:
    """Partition ``xi(alpha)`` for each positive root ``alpha``."""
    ell, m, k = spec.ell, spec.m, spec.k
    if not ell >= m >= k >= 1:
        raise PreconditionError(f"need l >= m >= k >= 1, got {ell}, {m}, {k}")
    lam = spec.lam(rs)
    if not rs.lattice_membership(lam).in_L_plus:
        raise PreconditionError(f"lambda {lam} is not in L+")
    theta = rs.highest_root
    out = {}
    for alpha in rs.positive_roots:
        d = rs.d(alpha)
        la = rs.inner(lam, alpha)
        ta = rs.inner(theta, alpha)
        if alpha == theta:
            parts = [ell] * la + ([m, 2 * k - m] if m <= 2 * k else [2 * k])
        elif ta == 0:
            parts = [d * ell] * la
        else:
            parts = [d * ell] * la + [d * k]
        out[alpha] = tuple(p for p in parts if p)
    return out


@_timed
def verify_xi_tuple(rs: RootSystem, spec: FusionSpec, fault: bool = False):
    lam = spec.lam(rs)
    cid = f"xi/{rs.cartan_type}/l={spec.ell}/m={spec.m}/k={spec.k}/lam={_lam_str(lam)}"
    inputs = {"type": str(rs.cartan_type), "ell": spec.ell, "m": spec.m, "k": spec.k,
              "lambda": list(lam)}
    xi = xi_tuple(rs, spec)
    if fault:
        first = min(xi)
        xi[first] = (xi[first][0] + 1,) + xi[first][1:] if xi[first] else (1,)
    mu = tuple(spec.ell * a + spec.k * t for a, t in zip(lam, rs.highest_root))
    for alpha, part in sorted(xi.items()):
        want = rs.pairing(mu, alpha)
        if sum(part) != want:
            return VerificationReport(cid, "xi", inputs, False,
                                      f"alpha={_lam_str(alpha)}: |xi| = {sum(part)} != {want}")
        if list(part) != sorted(part, reverse=True):
            return VerificationReport(cid, "xi", inputs, False,
                                      f"alpha={_lam_str(alpha)}: {part} not weakly decreasing")
        if part and part[0] > rs.d(alpha) * spec.ell:
            return VerificationReport(cid, "xi", inputs, False,
                                      f"alpha={_lam_str(alpha)}: part {part[0]} exceeds d*l")
    return VerificationReport(cid, "xi", inputs, True)


def enumerate_S(r: int, s: int, mode: str = "all", K: int = 0) -> list:
    """Sequences ``(b_0, ..., b_s)`` of nonnegative integers with ``sum b_p = r``
    and ``sum p b_p = s``.

    ``mode="upper_K"`` keeps only ``b_p = 0`` for ``p >= K``; ``mode="lower_K"``
    keeps only ``b_p = 0`` for ``p < K``.
    """
    if r < 0 or s < 0:
        raise ValueError("r and s must be nonnegative")
    if mode == "all":
        allowed = set(range(s + 1))
    elif mode == "upper_K":
        allowed = set(range(min(K, s + 1)))
    elif mode == "lower_K":
        allowed = set(range(K, s + 1))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = []
    b = [0] * (s + 1)

    def rec(p: int, r_left: int, s_left: int):
        if p < 0:
            if r_left == 0 and s_left == 0:
                out.append(tuple(b))
            return
        if p not in allowed:
            rec(p - 1, r_left, s_left)
            return
        top = r_left if p == 0 else min(r_left, s_left // p)
        if p == 0:
            if s_left == 0:
                b[0] = r_left
                out.append(tuple(b))
                b[0] = 0
            return
        for c in range(top + 1):
            b[p] = c
            rec(p - 1, r_left - c, s_left - c * p)
        b[p] = 0

    rec(s, r, s)
    return sorted(out)


def count_S_generating_function(r: int, s: int, mode: str = "all", K: int = 0) -> int:
    """Coefficient of ``x^r q^s`` in ``prod_p 1/(1 - x q^p)`` over the allowed ``p``."""
    if mode == "all":
        ps = range(s + 1)
    elif mode == "upper_K":
        ps = range(min(K, s + 1))
    else:
        ps = range(K, s + 1)
    poly = {(0, 0): 1}
    for p in ps:
        new: dict = {}
        for (a, b), c in poly.items():
            j = 0
            while a + j <= r and b + j * p <= s:
                key = (a + j, b + j * p)
                new[key] = new.get(key, 0) + c
                j += 1
        poly = new
    return poly.get((r, s), 0)


@_timed
def verify_S_counts(max_rs: int = 6, fault: bool = False):
    cid = f"S/r,s<={max_rs}"
    inputs = {"max_rs": max_rs}
    for r in range(max_rs + 1):
        for s in range(max_rs + 1):
            for mode, K in [("all", 0)] + [(md, K) for md in ("upper_K", "lower_K")
                                          for K in range(max_rs + 2)]:
                got = len(enumerate_S(r, s, mode, K))
                if fault:
                    got += 1
                    fault = False
                want = count_S_generating_function(r, s, mode, K)
                if got != want:
                    return VerificationReport(cid, "S", inputs, False,
                                              f"S({r},{s}) {mode} K={K}: {got} != {want}")
    return VerificationReport(cid, "S", inputs, True)


# -- grids and suites ----------------------------------------------------------

@dataclass
class GridConfig:
    types: tuple = ("A1", "A2", "B2", "G2")
    fusion_types: tuple = ("A1", "A2", "B2", "G2")
    max_level: int = 4
    max_k: int = 3
    max_m: int = 3
    lambda_bound: int = 2
    finite_coord_sum: int = 4
    word_length: int = 6
    length_bound: int = 3
    schur_n: int = 5
    s_max: int = 6
    final_coord_sum: int = 2

    @classmethod
    def from_mapping(cls, data: dict) -> "GridConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown grid keys: {sorted(unknown)}")
        data = {k: tuple(v) if isinstance(v, list) else v for k, v in data.items()}
        return cls(**data)


SUITES = ("finite", "dlk", "ops", "lengths", "mtone", "exactfg", "hchar", "schur", "level",
          "xi", "S")


def _cases(name: str, grid: GridConfig, types: Sequence[str] | None):
    """Yield zero-argument callables, one per verification case."""
    base_types = list(types) if types else list(grid.types)
    fus_types = list(types) if types else list(grid.fusion_types)
    L, K, M = grid.max_level, grid.max_k, grid.max_m

    if name == "finite":
        for t in base_types:
            rs = build_root_system(t)
            for lam in dominant_weights(rs, grid.finite_coord_sum):
                yield lambda rs=rs, lam=lam, f=None: (rs, verify_finite_character, (lam,))
    elif name == "dlk":
        for t in base_types:
            rs = build_root_system(t)
            for k in range(1, K + 1):
                for ell in range(k, 2 * k + 1):
                    yield lambda rs=rs, k=k, ell=ell: (rs, verify_dlk_decomposition, (k, ell))
    elif name == "ops":
        for t in base_types:
            rs = build_root_system(t)
            if rs.rank <= 2:
                yield lambda rs=rs: (rs, verify_operator_laws, (grid.word_length,))
    elif name == "lengths":
        for t in base_types:
            rs = build_root_system(t)
            if rs.rank > 2:
                continue
            ws = m_plus_weights(rs, grid.length_bound)
            for lam in ws:
                for mu in ws:
                    yield lambda rs=rs, lam=lam, mu=mu: (rs, verify_length_additivity, (lam, mu))
    elif name in ("mtone", "exactfg"):
        fn = verify_mtone_dims if name == "mtone" else verify_exactfg_graded
        for t in fus_types:
            rs = build_root_system(t)
            for lam in m_plus_weights(rs, grid.lambda_bound):
                parts = (lam,) if any(lam) else ()
                for regime, ell, m, k in _regime_grid(L, M, K):
                    spec = FusionSpec(ell, m, k, parts)
                    yield lambda rs=rs, spec=spec, regime=regime: (rs, fn, (spec, regime))
            if name == "mtone":
                # p = 2 spot check: lambda split into two parts
                th = rs.highest_root
                spec = FusionSpec(2, 1, 1, (th, th))
                yield lambda rs=rs, spec=spec: (rs, fn, (spec, 1))
    elif name == "hchar":
        for t in fus_types:
            rs = build_root_system(t)
            lams = m_plus_weights(rs, grid.lambda_bound)
            finals = dominant_weights(rs, grid.final_coord_sum)
            for l1 in range(1, L + 1):
                for ell in range(1, l1 + 1):
                    for lam in lams:
                        for fin in finals:
                            yield (lambda rs=rs, l1=l1, lam=lam, ell=ell, fin=fin:
                                   (rs, verify_hchar_product, ([l1], [lam], ell, fin)))
            th = rs.highest_root
            yield lambda rs=rs, th=th: (rs, verify_hchar_product, ([3, 2], [th, th], 1, th))
    elif name == "schur":
        for t in fus_types:
            rs = build_root_system(t)
            for n in range(1, grid.schur_n + 1):
                for ls in partitions(n):
                    for ms in partitions(n):
                        if suffix_dominates(ls, ms):
                            yield lambda rs=rs, ls=ls, ms=ms: (rs, verify_schur_dominance, (ls, ms))
    elif name == "level":
        for t in base_types:
            rs = build_root_system(t)
            for ell in range(1, L + 1):
                for lam in dominant_weights(rs, 2):
                    yield lambda rs=rs, ell=ell, lam=lam: (rs, verify_level_constancy, (ell, lam))
            for mu in m_plus_weights(rs, grid.lambda_bound):
                for ell in range(1, 3):
                    for nu in dominant_weights(rs, 1):
                        for shift in (0, 2):
                            yield (lambda rs=rs, mu=mu, ell=ell, nu=nu, shift=shift:
                                   (rs, verify_factor_out, (mu, ell, shift, nu)))
    elif name == "xi":
        for t in base_types:
            rs = build_root_system(t)
            for lam in m_plus_weights(rs, grid.lambda_bound):
                parts = (lam,) if any(lam) else ()
                for ell in range(1, L + 1):
                    for m in range(1, min(ell, M) + 1):
                        for k in range(1, min(m, K) + 1):
                            spec = FusionSpec(ell, m, k, parts)
                            yield lambda rs=rs, spec=spec: (rs, verify_xi_tuple, (spec,))
    elif name == "S":
        yield lambda: (None, verify_S_counts, (grid.s_max,))
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def _regime_grid(L: int, M: int, K: int):
    for ell in range(1, L + 1):
        for k in range(1, K + 1):
            if ell >= 2 * k:
                yield 1, ell, k, k
            for m in range(k, min(M, ell) + 1):
                if _regime_ok(2, ell, m, k):
                    yield 2, ell, m, k
                if _regime_ok(3, ell, m, k):
                    yield 3, ell, m, k


def run_suite(name: str, grid: GridConfig | None = None, types: Sequence[str] | None = None,
              fault: bool = False, seed: int | None = None, sample: int | None = None) -> list:
    """Run every case of a suite; with ``sample`` only a seeded random subset."""
    grid = grid or GridConfig()
    cases = list(_cases(name, grid, types))
    if sample is not None and sample < len(cases):
        picked = sorted(random.Random(seed).sample(range(len(cases)), sample))
        cases = [cases[i] for i in picked]
    reports = []
    for make in cases:
        rs, fn, args = make()
        full = args if rs is None else (rs,) + tuple(args)
        try:
            rep = fn(*full, fault=fault)
        except (PreconditionError, ValueError) as exc:
            rep = VerificationReport(f"{name}/{fn.__name__}/{args}", name,
                                     {"args": repr(args)}, False, f"error: {exc}")
        rep.seed = seed
        reports.append(rep)
    return sorted(reports, key=lambda r: r.case_id)
