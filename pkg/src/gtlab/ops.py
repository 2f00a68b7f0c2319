"""The concrete formal loop operations of the punctured disk.

On the disk with p punctures, in tensor coordinates:

  * odot          -- the contraction pairing, z_i (.) z_j = delta_ij z_i,
                     extended by h_1..h_m (.) k_1..k_n
                     = h_1..h_{m-1} (h_m (.) k_1) k_2..k_n; unit words give 0.
  * eta_formal    -- the homotopy intersection pairing in tensor form:
                     odot + inner pairing at s(-z).
  * xi            -- the contraction quasi-derivation of the framed carrier,
                     ruled by odot; on C-power 1 it is -2 times the word.
  * mu_formal     -- the self-intersection map in tensor form:
                     xi + q_inner(-1/4 + phi(z), -1/4 - phi(-z)); the two
                     inner parameters must sum to s(-z) (checked).
  * necklace_bracket, schedler / schedler_reduced
                  -- the star-quiver necklace Lie bracket and cobracket on
                     cyclic words (the formal Goldman bracket and Turaev
                     cobracket).

Genus-p analogues for the closed-up surface live on the doubled alphabet
{a_1, b_1, .., a_p, b_p}, encoded as letters {1..2p} with a_i = 2i-1 and
b_i = 2i:

  * omega_pair     -- contraction against the intersection form,
                     omega(a_i, b_j) = delta_ij = -omega(b_j, a_i).
  * eta_symplectic -- omega_pair + inner pairing at s(omega),
                     omega = sum_i [a_i, b_i].
  * embed_I        -- the degree-doubling algebra map z_i |-> -[a_i, b_i].
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from .errors import InconsistentCoeffs, MismatchedContext, TruncationLoss
from .fox import PairingFn, QDerFn, q_inner, rho_inner
from .qseries import AssocCoeffs, series_phi, series_s
from .tensor import CycSeries, CycTensorSquare, FSeries, TSeries, cyclic_word

__all__ = [
    "odot",
    "odot_pairing",
    "s_of_minus_z",
    "eta_formal",
    "eta_pairing",
    "xi",
    "xi_qder",
    "mu_formal",
    "necklace_bracket",
    "schedler",
    "schedler_reduced",
    "schedler_of_cyclic",
    "ab_letter",
    "omega_pair",
    "omega_element",
    "omega_pairing",
    "eta_symplectic",
    "embed_I",
]

_ZERO = Fraction(0)


# -- the contraction pairing and eta ----------------------------------


def _odot_raw(a: TSeries, b: TSeries) -> TSeries:
    if a.p != b.p:
        raise MismatchedContext(f"puncture counts differ: {a.p} vs {b.p}")
    n = min(a.trunc_deg, b.trunc_deg)
    out: dict = {}
    for wa, ca in a.terms.items():
        if not wa:
            continue
        last = wa[-1]
        for wb, cb in b.terms.items():
            if not wb or wb[0] != last:
                continue
            w = wa + wb[1:]
            if len(w) > n:
                continue
            s = out.get(w, _ZERO) + ca * cb
            if s:
                out[w] = s
            else:
                del out[w]
    return TSeries(a.p, n, out)


def odot_pairing() -> PairingFn:
    return PairingFn(_odot_raw, shift=-1, name="odot")


def odot(a: TSeries, b: TSeries) -> TSeries:
    """Contraction pairing; effective degree drops by 1."""
    return odot_pairing()(a, b)


def s_of_minus_z(p: int, trunc_deg: int) -> TSeries:
    """s(-z) = -1/2 + z/12 - z^3/720 + .. evaluated at z = z_1 + .. + z_p."""
    return TSeries.z_total(p, trunc_deg, sign=-1).eval_uni(series_s(trunc_deg))


def eta_pairing(p: int, trunc_deg: int) -> PairingFn:
    """The tensor-coordinate homotopy intersection pairing: odot + rho_{s(-z)}."""
    e = s_of_minus_z(p, trunc_deg)
    inner = rho_inner(e)

    def fn(a: TSeries, b: TSeries) -> TSeries:
        return _odot_raw(a, b) + inner.fn(a, b)

    return PairingFn(fn, shift=-2, name="eta")


def eta_formal(a: TSeries, b: TSeries) -> TSeries:
    """odot(a, b) + (a - eps a) s(-z) (b - eps b); degree drops by 2."""
    return eta_pairing(a.p, max(a.trunc_deg, b.trunc_deg))(a, b)


# -- the framed contraction quasi-derivation and mu ---------------------


def _xi_raw(at: FSeries) -> TSeries:
    out: dict = {}
    n = at.trunc_deg
    for (w, cp), c in at.terms.items():
        if cp == 0:
            m = len(w)
            if m < 2:
                continue
            for i in range(m - 1):
                if w[i] != w[i + 1]:
                    continue
                word = w[: i + 1] + w[i + 2 :]
                s = out.get(word, _ZERO) + c
                if s:
                    out[word] = s
                else:
                    del out[word]
        elif cp == 1:
            s = out.get(w, _ZERO) - 2 * c
            if s:
                out[w] = s
            else:
                del out[w]
    return TSeries(at.p, n, out)


def xi_qder(p: int, trunc_deg: int) -> QDerFn:
    # sharper (-1) shift than the generic quasi-derivation contract
    return QDerFn(_xi_raw, ruling=odot_pairing(), shift=-1, name="xi")


def xi(at: FSeries) -> TSeries:
    """Internal contraction on C-power 0; -2 times the word on C-power 1."""
    return xi_qder(at.p, at.trunc_deg)(at)


def mu_formal(coeffs: AssocCoeffs, p: int, trunc_deg: int) -> QDerFn:
    """The tensor-coordinate self-intersection map xi + q_{-1/4+phi(z), -1/4-phi(-z)}.

    Construction validates e1 + e2 = s(-z) at truncation, which is exactly
    the constraint phi(X) - phi(-X) - 1/2 = s(-X) on the coefficient list;
    a violating list raises InconsistentCoeffs.
    """
    phi = series_phi(coeffs, trunc_deg)
    lhs = phi - phi.flip_sign_of_x()
    lhs = lhs.shift_const(Fraction(-1, 2))
    if lhs != series_s(trunc_deg).flip_sign_of_x():
        raise InconsistentCoeffs(
            "e1 + e2 differs from s(-z) at truncation; "
            "coefficient list violates the Bernoulli identity"
        )
    z = TSeries.z_total(p, trunc_deg)
    zneg = TSeries.z_total(p, trunc_deg, sign=-1)
    quarter = TSeries(p, trunc_deg, {(): Fraction(-1, 4)})
    e1 = quarter + z.eval_uni(phi)
    e2 = quarter - zneg.eval_uni(phi)
    inner = q_inner(e1, e2)
    xi_fn = _xi_raw

    def fn(at: FSeries) -> TSeries:
        return xi_fn(at) + inner.fn(at)

    return QDerFn(fn, ruling=eta_pairing(p, trunc_deg), shift=-2, name="mu")


# -- necklace bracket and Schedler cobracket ---------------------------


def necklace_bracket(a: CycSeries, b: CycSeries) -> CycSeries:
    """The star-quiver necklace Lie bracket on cyclic words.

    <h_1..h_m, k_1..k_n> =
      - sum_{i,j} k_{j+1}..k_{j-1} (k_j (.) h_i) h_{i+1}..h_{i-1}
      + sum_{i,j} h_{i+1}..h_{i-1} (h_i (.) k_j) k_{j+1}..k_{j-1}
    with cyclic index notation realized by explicit rotations.  Zero if
    either argument is the unit class; degree drops by 1.
    """
    if a.p != b.p:
        raise MismatchedContext(f"puncture counts differ: {a.p} vs {b.p}")
    p = a.p
    n = min(a.trunc_deg, b.trunc_deg) - 1
    out: dict = {}

    def acc(word, c):
        if len(word) > n or not c:
            return
        k = cyclic_word(word)
        s = out.get(k, _ZERO) + c
        if s:
            out[k] = s
        else:
            del out[k]

    for h, ch in a.terms.items():
        m = len(h)
        if m == 0:
            continue
        for k, ck in b.terms.items():
            nn = len(k)
            if nn == 0:
                continue
            c = ch * ck
            for i in range(m):
                hi = h[i]
                h_rest = h[i + 1 :] + h[:i]
                for j in range(nn):
                    if k[j] != hi:
                        continue
                    k_rest = k[j + 1 :] + k[:j]
                    # (k_j (.) h_i) = (h_i (.) k_j) = the shared letter
                    acc(k_rest + (hi,) + h_rest, -c)
                    acc(h_rest + (hi,) + k_rest, c)
    return CycSeries(p, n, out)


def schedler(word: tuple, p: int, trunc_deg: int) -> CycTensorSquare:
    """The star-quiver cobracket of a single word, with legs in the cyclic quotient.

    delta(k_1..k_m) =
        sum_{i<j} (k_{i+1}..k_{j-1}) ^ (k_1..k_{i-1} (k_i (.) k_j) k_{j+1}..k_m)
      - sum_{i<j} ((k_j (.) k_i) k_{i+1}..k_{j-1}) ^ (k_1..k_{i-1} k_{j+1}..k_m)
    where x ^ y = x (x) y - y (x) x; zero on words of length <= 1.
    """
    out = CycTensorSquare(p, trunc_deg)
    w = tuple(word)
    m = len(w)
    one = Fraction(1)
    for i in range(m):
        for j in range(i + 1, m):
            if w[i] != w[j]:
                continue
            mid = w[i + 1 : j]
            outer_contracted = w[:i] + (w[i],) + w[j + 1 :]
            out.add_term(mid, outer_contracted, one)
            out.add_term(outer_contracted, mid, -one)
            mid_contracted = (w[j],) + w[i + 1 : j]
            outer = w[:i] + w[j + 1 :]
            out.add_term(mid_contracted, outer, -one)
            out.add_term(outer, mid_contracted, one)
    return out


def schedler_of_cyclic(a: CycSeries) -> CycTensorSquare:
    """Linear extension of the cobracket to the cyclic quotient; shift -1."""
    n = a.trunc_deg - 1
    out = CycTensorSquare(a.p, n)
    for w, c in a.terms.items():
        part = schedler(w, a.p, n)
        for key, v in part.terms.items():
            out.add_term(key[0], key[1], c * v)
    return out


def schedler_reduced(a: CycSeries) -> CycTensorSquare:
    """The cobracket with unit-word legs dropped on both sides."""
    return schedler_of_cyclic(a).reduced()


# -- symplectic (genus-p) side -----------------------------------------


def ab_letter(kind: str, i: int) -> int:
    """Letter code of a_i / b_i in the doubled alphabet {1..2p}."""
    if kind == "a":
        return 2 * i - 1
    if kind == "b":
        return 2 * i
    raise ValueError("kind must be 'a' or 'b'")


def _omega_letters(u: int, v: int) -> int:
    """omega on letters: omega(a_i, b_i) = 1, omega(b_i, a_i) = -1, else 0."""
    if u % 2 == 1 and v == u + 1:
        return 1
    if v % 2 == 1 and u == v + 1:
        return -1
    return 0


def _omega_pair_raw(a: TSeries, b: TSeries) -> TSeries:
    if a.p != b.p:
        raise MismatchedContext(f"alphabet sizes differ: {a.p} vs {b.p}")
    n = min(a.trunc_deg, b.trunc_deg)
    out: dict = {}
    for wa, ca in a.terms.items():
        if not wa:
            continue
        for wb, cb in b.terms.items():
            if not wb:
                continue
            sign = _omega_letters(wa[-1], wb[0])
            if not sign:
                continue
            w = wa[:-1] + wb[1:]
            if len(w) > n:
                continue
            s = out.get(w, _ZERO) + sign * ca * cb
            if s:
                out[w] = s
            else:
                del out[w]
    return TSeries(a.p, n, out)


def omega_pairing() -> PairingFn:
    return PairingFn(_omega_pair_raw, shift=-1, name="omega_pair")


def omega_pair(a: TSeries, b: TSeries) -> TSeries:
    """Contraction against the intersection form on the doubled alphabet."""
    return omega_pairing()(a, b)


def omega_element(genus: int, trunc_deg: int) -> TSeries:
    """omega = sum_i [a_i, b_i] = sum_i (a_i b_i - b_i a_i) as a degree-2 element."""
    p2 = 2 * genus
    terms: dict = {}
    if trunc_deg >= 2:
        for i in range(1, genus + 1):
            ai, bi = ab_letter("a", i), ab_letter("b", i)
            terms[(ai, bi)] = Fraction(1)
            terms[(bi, ai)] = Fraction(-1)
    return TSeries(p2, trunc_deg, terms)


def eta_symplectic(genus: int, trunc_deg: int) -> PairingFn:
    """omega_pair + inner pairing at s(omega)."""
    e = omega_element(genus, trunc_deg).eval_uni(series_s(trunc_deg))
    inner = rho_inner(e)

    def fn(a: TSeries, b: TSeries) -> TSeries:
        return _omega_pair_raw(a, b) + inner.fn(a, b)

    return PairingFn(fn, shift=-2, name="eta_symplectic")


def embed_I(a: TSeries, out_trunc: int | None = None) -> TSeries:
    """The algebra map z_i |-> -[a_i, b_i] = b_i a_i - a_i b_i, degree-doubling.

    Warns with TruncationLoss when trusted input degrees land beyond the
    target truncation; the output is trusted through
    min(out_trunc, 2 * a.trunc_deg + 1).
    """
    n = a.trunc_deg if out_trunc is None else out_trunc
    if 2 * a.max_degree() > n:
        warnings.warn(
            f"embedding doubles degrees: input has degree {a.max_degree()} "
            f"but target truncation is {n}",
            TruncationLoss,
            stacklevel=2,
        )
    p2 = 2 * a.p
    out: dict = {}
    for w, c in a.terms.items():
        if 2 * len(w) > n:
            continue
        images: dict = {(): c}
        for letter in w:
            ai, bi = 2 * letter - 1, 2 * letter
            nxt: dict = {}
            for prefix, cc in images.items():
                if len(prefix) + 2 > n:
                    continue
                for tail, sign in (((bi, ai), 1), ((ai, bi), -1)):
                    key = prefix + tail
                    s = nxt.get(key, _ZERO) + sign * cc
                    if s:
                        nxt[key] = s
                    else:
                        del nxt[key]
            images = nxt
        for wim, cc in images.items():
            s = out.get(wim, _ZERO) + cc
            if s:
                out[wim] = s
            else:
                del out[wim]
    return TSeries(p2, min(n, 2 * a.trunc_deg + 1), out)
