"""Loop operations pulled back to the group ring of the punctured disk.

Values live in the group ring truncated by powers of the augmentation
ideal, expressed in the monomial basis (x_{i_1}-1)..(x_{i_k}-1)
(GAlgTrunc); every pullback carries trusted_deg = N - 2, the filtration
loss of a Fox pairing or quasi-derivation.

  * eta_group        -- intersection pairing of two group words, via the
                        tensor-coordinate pairing and triangular inversion.
  * mu_group         -- self-intersection value of a framed word.
  * goldman          -- the Goldman bracket: Sweedler formula in the group
                        ring (group-likes make coproducts explicit), then
                        reduction modulo conjugation.
  * turaev_cobracket -- the cobracket of a conjugacy class, reported in
                        formal coordinates (the cobracket of the cyclic
                        theta-image); no inversion to the group ring is
                        attempted.
  * independence_check -- pullbacks through two expansions must agree.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MismatchedContext
from .expansion import Expansion
from .ops import eta_pairing, mu_formal, schedler_reduced
from .qseries import AssocCoeffs, format_rat
from .tensor import CycSeries, CycTensorSquare, TSeries
from .words import FGWord, GAlg, GWord, format_word

__all__ = [
    "GAlgTrunc",
    "CycGroupAlg",
    "eta_group",
    "mu_group",
    "goldman",
    "turaev_cobracket",
    "independence_check",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _binom_gen(e: int, k: int) -> Fraction:
    """Generalized binomial C(e, k) for possibly negative integer e."""
    num = 1
    for t in range(k):
        num *= e - t
    den = 1
    for t in range(1, k + 1):
        den *= t
    return Fraction(num, den)


class GAlgTrunc:
    """Group-ring value modulo I^(trusted_deg+1), in the monomial basis."""

    __slots__ = ("p", "trusted_deg", "terms")

    def __init__(self, p: int, trusted_deg: int, terms: dict | None = None):
        self.p = p
        self.trusted_deg = trusted_deg
        if terms:
            self.terms = {
                m: c for m, c in terms.items() if c != 0 and len(m) <= trusted_deg
            }
        else:
            self.terms = {}

    @classmethod
    def from_galg(cls, x: GAlg, p: int, trusted_deg: int) -> "GAlgTrunc":
        """Expand group words through x_i = 1 + (x_i - 1), truncating at the trusted degree."""
        out: dict = {}
        for w, c in x.terms.items():
            poly: dict = {(): c}
            for sym, exp in w.syllables:
                if sym == 0:
                    raise ValueError("group-ring truncation applies to z-free words")
                # expansion of x_sym^exp in powers of (x_sym - 1)
                nxt: dict = {}
                for mono, cc in poly.items():
                    room = trusted_deg - len(mono)
                    upper = min(exp, room) if exp > 0 else room
                    for k in range(0, upper + 1):
                        coeff = _binom_gen(exp, k)
                        if not coeff:
                            continue
                        key = mono + (sym,) * k
                        s = nxt.get(key, _ZERO) + cc * coeff
                        if s:
                            nxt[key] = s
                        else:
                            del nxt[key]
                poly = nxt
            for mono, cc in poly.items():
                s = out.get(mono, _ZERO) + cc
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return cls(p, trusted_deg, out)

    def to_galg(self) -> GAlg:
        """Exact expansion of the monomials into group-algebra elements."""
        acc = GAlg()
        for mono, c in self.terms.items():
            k = len(mono)
            for mask in range(1 << k):
                word = GWord(tuple((mono[t], 1) for t in range(k) if mask >> t & 1))
                sign = (-1) ** (k - bin(mask).count("1"))
                acc = acc + GAlg.of(word, c * sign)
        return acc

    def __add__(self, other: "GAlgTrunc") -> "GAlgTrunc":
        self._check(other)
        n = min(self.trusted_deg, other.trusted_deg)
        out = {m: c for m, c in self.terms.items() if len(m) <= n}
        for m, c in other.terms.items():
            if len(m) <= n:
                s = out.get(m, _ZERO) + c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return GAlgTrunc(self.p, n, out)

    def __sub__(self, other: "GAlgTrunc") -> "GAlgTrunc":
        return self + other.scale(-1)

    def __neg__(self) -> "GAlgTrunc":
        return self.scale(-1)

    def scale(self, c) -> "GAlgTrunc":
        c = Fraction(c)
        return GAlgTrunc(self.p, self.trusted_deg, {m: c * v for m, v in self.terms.items()})

    def _check(self, other: "GAlgTrunc"):
        if self.p != other.p:
            raise MismatchedContext(f"puncture counts differ: {self.p} vs {other.p}")

    def __mul__(self, other: "GAlgTrunc") -> "GAlgTrunc":
        self._check(other)
        n = min(self.trusted_deg, other.trusted_deg)
        return GAlgTrunc.from_galg(self.to_galg() * other.to_galg(), self.p, n)

    def mul_word(self, w: GWord, side: str = "left") -> "GAlgTrunc":
        g = self.to_galg()
        gw = GAlg.of(w)
        prod = gw * g if side == "left" else g * gw
        return GAlgTrunc.from_galg(prod, self.p, self.trusted_deg)

    def antipode(self) -> "GAlgTrunc":
        return GAlgTrunc.from_galg(self.to_galg().antipode(), self.p, self.trusted_deg)

    def counit(self) -> Fraction:
        return self.terms.get((), _ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def eq_through(self, other: "GAlgTrunc", deg: int) -> bool:
        self._check(other)
        for m in self.terms.keys() | other.terms.keys():
            if len(m) <= deg and self.terms.get(m, _ZERO) != other.terms.get(m, _ZERO):
                return False
        return True

    def first_deviation_degree(self, other: "GAlgTrunc", deg: int):
        """Smallest monomial degree <= deg at which the two values differ, else None."""
        worst = None
        for m in self.terms.keys() | other.terms.keys():
            if len(m) <= deg and self.terms.get(m, _ZERO) != other.terms.get(m, _ZERO):
                if worst is None or len(m) < worst:
                    worst = len(m)
        return worst

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GAlgTrunc)
            and self.p == other.p
            and self.trusted_deg == other.trusted_deg
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))[:8]
        body = " + ".join(f"({c})m{list(m)}" for m, c in items) or "0"
        return f"GAlgTrunc[deg<={self.trusted_deg}]({body}{'...' if len(self.terms) > 8 else ''})"

    def theta_image(self, e: Expansion, trunc: int | None = None) -> TSeries:
        n = self.trusted_deg if trunc is None else trunc
        acc = TSeries.zero(e.p, n)
        for mono, c in self.terms.items():
            acc = acc + e.monomial_image(mono, n).scale(c)
        return acc

    def to_json(self) -> dict:
        terms = [
            {"mono": list(m), "coeff": format_rat(c)}
            for m, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
        return {"basis": "zeta_minus_one", "trusted_deg": self.trusted_deg, "p": self.p, "terms": terms}

    @classmethod
    def from_json(cls, obj: dict) -> "GAlgTrunc":
        if obj.get("basis", "zeta_minus_one") != "zeta_minus_one":
            raise ValueError(f"unsupported basis {obj['basis']!r}")
        from .qseries import parse_rat

        terms = {tuple(int(i) for i in t["mono"]): parse_rat(t["coeff"]) for t in obj["terms"]}
        p = int(obj.get("p") or max((max(m, default=1) for m in terms), default=1))
        return cls(p, int(obj["trusted_deg"]), terms)


class CycGroupAlg:
    """Combination of conjugacy classes (canonical cyclic words), with trust degree."""

    __slots__ = ("trusted_deg", "terms")

    def __init__(self, trusted_deg: int, terms: dict | None = None):
        self.trusted_deg = trusted_deg
        out: dict = {}
        if terms:
            for w, c in terms.items():
                if c == 0:
                    continue
                k = w.cyclic_canonical()
                s = out.get(k, _ZERO) + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        self.terms = out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycGroupAlg)
            and self.trusted_deg == other.trusted_deg
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        items = list(self.terms.items())[:6]
        body = " + ".join(f"({c})|{format_word(w)}|" for w, c in items) or "0"
        return f"CycGroupAlg(deg<={self.trusted_deg}; {body})"

    def scale(self, c) -> "CycGroupAlg":
        c = Fraction(c)
        return CycGroupAlg(self.trusted_deg, {w: c * v for w, v in self.terms.items()})

    def __add__(self, other: "CycGroupAlg") -> "CycGroupAlg":
        n = min(self.trusted_deg, other.trusted_deg)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, _ZERO) + c
            if s:
                out[w] = s
            else:
                del out[w]
        return CycGroupAlg(n, out)

    def theta_image(self, e: Expansion, trunc: int | None = None) -> CycSeries:
        n = self.trusted_deg if trunc is None else trunc
        acc = CycSeries.zero(e.p, n)
        for w, c in self.terms.items():
            acc = acc + e.cyclic_eval(w, n).scale(c)
        return acc

    def to_json(self) -> dict:
        terms = [
            {"class": format_word(w), "coeff": format_rat(c)}
            for w, c in sorted(
                self.terms.items(), key=lambda kv: (kv[0].length(), format_word(kv[0]))
            )
        ]
        return {"trusted_deg": self.trusted_deg, "terms": terms}


def eta_group(e: Expansion, a: GWord, b: GWord) -> GAlgTrunc:
    """Pullback of the intersection pairing; trusted through N - 2."""
    n = e.trunc_deg
    pairing = eta_pairing(e.p, n)
    val = pairing(e.eval(a), e.eval(b))
    return GAlgTrunc(e.p, n - 2, e.invert(val))


def mu_group(e: Expansion, coeffs: AssocCoeffs, w: FGWord) -> GAlgTrunc:
    """Pullback of the self-intersection map; trusted through N - 2."""
    n = e.trunc_deg
    mu = mu_formal(coeffs, e.p, n)
    val = mu(e.framed_eval(w))
    return GAlgTrunc(e.p, n - 2, e.invert(val))


def goldman(e: Expansion, a: GWord, b: GWord) -> CycGroupAlg:
    """The Goldman bracket of two conjugacy classes, trusted through N - 2.

    For group-like arguments the Sweedler bracket formula collapses to
    sum_g c_g * class(b g^-1 a g) over the group-ring value of the
    intersection pairing.
    """
    n = e.trunc_deg
    ga = eta_group(e, a, b).to_galg()
    out: dict = {}
    for g, c in ga.terms.items():
        w = (b * g.inverse() * a * g).cyclic_canonical()
        s = out.get(w, _ZERO) + c
        if s:
            out[w] = s
        else:
            del out[w]
    return CycGroupAlg(n - 2, out)


def turaev_cobracket(e: Expansion, w: GWord) -> CycTensorSquare:
    """The cobracket of the class of w, in formal coordinates; trusted N - 1.

    This is the reduced star-quiver cobracket of the cyclic theta-image;
    the identification is associator-independent, and no inversion to the
    group ring is attempted.
    """
    return schedler_reduced(e.cyclic_eval(w))


def independence_check(e1: Expansion, e2: Expansion, sample: list) -> dict:
    """Pullbacks of the intersection pairing through two expansions must agree.

    sample: list of (GWord, GWord) pairs.  The report records, per pair,
    the first deviating monomial degree (None expected throughout).
    """
    if (e1.p, e1.trunc_deg) != (e2.p, e2.trunc_deg):
        raise MismatchedContext("expansions must share (p, truncation degree)")
    deg = e1.trunc_deg - 2
    pairs = []
    ok = True
    for a, b in sample:
        va = eta_group(e1, a, b)
        vb = eta_group(e2, a, b)
        dev = va.first_deviation_degree(vb, deg)
        ok = ok and dev is None
        pairs.append(
            {
                "a": format_word(a),
                "b": format_word(b),
                "equal_through": deg,
                "first_deviation_degree": dev,
            }
        )
    return {"ok": ok, "trusted_deg": deg, "pairs": pairs}
