"""Generic Fox-pairing and quasi-derivation combinators on tensor carriers.

A PairingFn wraps a bilinear map on TSeries together with its declared
filtration shift (-1 or -2); applying it re-truncates the result to
min(input degrees) + shift, making the completion bookkeeping a runtime
contract.  A QDerFn wraps a linear map FSeries -> TSeries with its shift
and its ruling pairing.

The combinators implemented here:
  * rho_inner(e):        (a, b) |-> (a - eps(a)) e (b - eps(b))
  * pairing_transpose:   rho^t(a, b) = S rho(S b, S a)
  * bracket_rho:         <a, b> = b' S(rho(a'', b'')') a' rho(a'', b'')''
                         followed by cyclic projection
  * q_inner(e1, e2):     a~ |-> eps(a) (e1+e2) - a e1 - e2 a, a = fproject(a~)
  * qd_transpose:        q^t = S_A o q o S_A~
  * d_q:                 a~ |-> p(a~') S(q(a~'')') (x) q(a~'')''
  * delta_q:             d_q - P21 d_q, cyclic-projected on both legs

Sweedler sums are expanded lazily term by term; the carrier's tensor cube
is never materialized.  Closed forms for d and delta of inner
quasi-derivations are provided for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .tensor import (
    CycSeries,
    CycTensorSquare,
    FSeries,
    TSeries,
    TensorSquare,
    cyclic_word,
    word_splits,
    word_splits3,
)

__all__ = [
    "PairingFn",
    "QDerFn",
    "rho_inner",
    "pairing_transpose",
    "transpose_via_sweedler",
    "bracket_rho",
    "q_inner",
    "qd_transpose",
    "d_q",
    "delta_q",
    "reduced_delta_q",
    "d_inner_closed",
    "delta_inner_closed",
]

_ZERO = Fraction(0)


@dataclass(frozen=True)
class PairingFn:
    """A bilinear pairing on TSeries with a declared filtration shift.

    The wrapped callable must be pure.  Fox-pairing axioms are a testable
    contract, not an assumption.
    """

    fn: Callable[[TSeries, TSeries], TSeries]
    shift: int = -2
    name: str = "pairing"

    def __call__(self, a: TSeries, b: TSeries) -> TSeries:
        out = self.fn(a, b)
        return out.retrunc(min(a.trunc_deg, b.trunc_deg) + self.shift)


@dataclass(frozen=True)
class QDerFn:
    """A linear map FSeries -> TSeries with declared shift and ruling pairing."""

    fn: Callable[[FSeries], TSeries]
    ruling: PairingFn
    shift: int = -2
    name: str = "qder"

    def __call__(self, a: FSeries) -> TSeries:
        out = self.fn(a)
        return out.retrunc(a.trunc_deg + self.shift)


def rho_inner(e: TSeries) -> PairingFn:
    """The inner Fox pairing attached to e."""

    def fn(a: TSeries, b: TSeries) -> TSeries:
        return a.augmented() * e * b.augmented()

    return PairingFn(fn, shift=-2, name="rho_inner")


def pairing_transpose(rho: PairingFn) -> PairingFn:
    """rho^t(a, b) = S rho(S(b), S(a)); same declared shift."""

    def fn(a: TSeries, b: TSeries) -> TSeries:
        return rho.fn(b.antipode(), a.antipode()).antipode()

    return PairingFn(fn, shift=rho.shift, name=f"{rho.name}^t")


def transpose_via_sweedler(rho: PairingFn, a: TSeries, b: TSeries) -> TSeries:
    """The alternative transpose formula a' S(rho(b'', a'')) b'.

    Must agree with pairing_transpose(rho)(a, b); used as a cross-check.
    """
    p, n = a.p, min(a.trunc_deg, b.trunc_deg)
    acc = TSeries.zero(p, n)
    cache: dict = {}
    for al, ar, ca in a.sweedler():
        for bl, br, cb in b.sweedler():
            key = (br, ar)
            r = cache.get(key)
            if r is None:
                r = rho.fn(TSeries.word(p, n, br), TSeries.word(p, n, ar))
                cache[key] = r
            if r.is_zero():
                continue
            left = TSeries.word(p, n, al, ca * cb)
            acc = acc + left * r.antipode() * TSeries.word(p, n, bl)
    return acc.retrunc(n + rho.shift)


def bracket_rho(rho: PairingFn, a: TSeries, b: TSeries) -> CycSeries:
    """<a, b> = b' S(r') a' r'' with r = rho(a'', b''), cyclic-projected.

    Intended for pairings whose transpose is -rho when the result is read
    in the cyclic quotient.
    """
    p = a.p
    n = min(a.trunc_deg, b.trunc_deg) + rho.shift
    out: dict = {}
    cache: dict = {}
    for al, ar, ca in a.sweedler():
        for bl, br, cb in b.sweedler():
            key = (ar, br)
            r = cache.get(key)
            if r is None:
                r = rho(TSeries.word(p, a.trunc_deg, ar), TSeries.word(p, b.trunc_deg, br))
                cache[key] = r
            if r.is_zero():
                continue
            cab = ca * cb
            base = len(bl) + len(al)
            for w, cr in r.terms.items():
                if base + len(w) > n:
                    continue
                for rl, rr in word_splits(w):
                    sign = -1 if len(rl) % 2 else 1
                    k = cyclic_word(bl + rl[::-1] + al + rr)
                    s = out.get(k, _ZERO) + cab * cr * sign
                    if s:
                        out[k] = s
                    else:
                        del out[k]
    return CycSeries(p, n, out)


def q_inner(e1: TSeries, e2: TSeries) -> QDerFn:
    """The inner quasi-derivation a~ |-> eps(a)(e1+e2) - a e1 - e2 a."""
    e = e1 + e2

    def fn(at: FSeries) -> TSeries:
        a = at.fproject()
        eps = a.counit()
        acc = e.scale(eps) if eps else TSeries.zero(a.p, a.trunc_deg)
        return acc - a * e1 - e2 * a

    return QDerFn(fn, ruling=rho_inner(e), shift=-2, name="q_inner")


def qd_transpose(q: QDerFn) -> QDerFn:
    """q^t = S_A o q o S_A~, ruled by the transpose of q's ruling pairing."""

    def fn(at: FSeries) -> TSeries:
        return q.fn(at.antipode()).antipode()

    return QDerFn(fn, ruling=pairing_transpose(q.ruling), shift=q.shift, name=f"{q.name}^t")


def _q_on_key(q: QDerFn, p: int, n: int, key, cache: dict) -> TSeries:
    r = cache.get(key)
    if r is None:
        w, cp = key
        r = q.fn(FSeries(p, n, {(w, cp): Fraction(1)}))
        cache[key] = r
    return r


def d_q(q: QDerFn, at: FSeries) -> TensorSquare:
    """d_q(a~) = p(a~') S(q(a~'')') (x) q(a~'')'' via lazy Sweedler sums."""
    p = at.p
    n = at.trunc_deg + q.shift
    out = TensorSquare(p, n)
    cache: dict = {}
    for (w, cp), c in at.terms.items():
        for left, right in word_splits(w):
            # the left leg passes through fproject, killing positive C-powers,
            # so the full C-power rides on the right factor
            r = _q_on_key(q, p, at.trunc_deg, (right, cp), cache)
            if r.is_zero():
                continue
            for rw, cr in r.terms.items():
                for rl, rr in word_splits(rw):
                    sign = -1 if len(rl) % 2 else 1
                    out.add_term(left + rl[::-1], rr, c * cr * sign)
    return out


def delta_q(q: QDerFn, at: FSeries) -> CycTensorSquare:
    """delta_q = (id - P21) d_q, read in the cyclic quotient on both legs."""
    d = d_q(q, at)
    return (d - d.swap()).cyclic()


def reduced_delta_q(q: QDerFn, at: FSeries) -> CycTensorSquare:
    """delta_q with unit-word classes dropped on both legs."""
    return delta_q(q, at).reduced()


def d_inner_closed(e1: TSeries, e2: TSeries, at: FSeries) -> TensorSquare:
    """Closed form a S(e') (x) e'' - a' S(e1') S(a'') (x) a''' e1'' - S(e2') (x) e2'' a."""
    p = at.p
    a = at.fproject()
    e = e1 + e2
    n = at.trunc_deg - 2
    out = TensorSquare(p, n)
    for wa, ca in a.terms.items():
        for we, ce in e.terms.items():
            for el, er in word_splits(we):
                sign = -1 if len(el) % 2 else 1
                out.add_term(wa + el[::-1], er, ca * ce * sign)
    for wa, ca in a.terms.items():
        for a1, a2, a3 in word_splits3(wa):
            for we, ce in e1.terms.items():
                for el, er in word_splits(we):
                    sign = (-1) ** (len(el) + len(a2))
                    out.add_term(a1 + el[::-1] + a2[::-1], a3 + er, -ca * ce * sign)
    for wa, ca in a.terms.items():
        for we, ce in e2.terms.items():
            for el, er in word_splits(we):
                sign = -1 if len(el) % 2 else 1
                out.add_term(el[::-1], er + wa, -ca * ce * sign)
    return out


def delta_inner_closed(e: TSeries, at: FSeries) -> CycTensorSquare:
    """Closed form a S(e')(x)e'' + a e''(x)S(e') - S(e')(x)e'' a - e''(x)S(e') a.

    Depends only on e = e1 + e2.
    """
    p = at.p
    a = at.fproject()
    n = at.trunc_deg - 2
    out = CycTensorSquare(p, n)
    for wa, ca in a.terms.items():
        for we, ce in e.terms.items():
            for el, er in word_splits(we):
                sl = el[::-1]
                c = ca * ce * (-1 if len(el) % 2 else 1)
                out.add_term(wa + sl, er, c)
                out.add_term(wa + er, sl, c)
                out.add_term(sl, er + wa, -c)
                out.add_term(er, sl + wa, -c)
    return out
