"""Construction, evaluation and inversion of special expansions.

A special expansion of the free group on loops x_1..x_p around the
punctures sends x_i to exp(u_i) exp(z_i) exp(-u_i) for primitive
conjugators u_i, and the boundary word nu = x_1..x_p (in that fixed order)
to exp(z), z = z_1 + .. + z_p.  The conjugators are found degree by
degree: if the product matches exp(z) through degree d, the degree-(d+1)
defect D of log(theta(nu)) - z is primitive, and degree-d corrections v_i
shift it by sum_i [v_i, z_i]; the graded system is solved exactly over
Lyndon coordinates (slot ascending, Lyndon lex; free variables zero, or
drawn from a seeded generator for the randomized variants).

theta_invert realizes the inverse isomorphism onto the group ring
truncated by powers of the augmentation ideal, in the monomial basis
(x_{i_1}-1)..(x_{i_k}-1): images of these monomials are unitriangular
(word z_{i_1}..z_{i_k} plus higher degree), so back-substitution proceeds
degree by degree.

The symplectic side: a genus-1 expansion on letters a, b with
theta'(alpha) = exp(a + c), theta'(beta) = exp(b + d) and
theta'([alpha^-1, beta]) = exp(-[a, b]) is built by the same graded
strategy (corrections enter through [a, v_d] - [b, v_c]); combined with a
special expansion and the degree-doubling embedding it yields generator
images for the genus-p surface group.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .errors import SolverInconsistent
from .lie import lie_to_tseries, solve_bracket_system
from .ops import ab_letter, embed_I
from .qseries import format_rat, parse_rat
from .tensor import FSeries, TSeries
from .words import FGWord, GWord

__all__ = [
    "Expansion",
    "solve_special",
    "theta_eval",
    "theta_framed_eval",
    "theta_invert",
    "Genus1Expansion",
    "solve_symplectic_genus1",
    "SymplecticMap",
    "build_symplectic",
    "seeded_free_values",
]

_ZERO = Fraction(0)

NU_CONVENTION = "z1..zp"


def seeded_free_values(seed) -> callable:
    """The documented free-variable source: small rationals from random.Random."""
    rng = random.Random(seed)

    def draw() -> Fraction:
        return Fraction(rng.randint(-2, 2), rng.randint(1, 3))

    return draw


class Expansion:
    """A special expansion, stored as the conjugator list in Lyndon coordinates."""

    def __init__(self, p: int, trunc_deg: int, u: list, provenance: dict | None = None):
        if len(u) != p:
            raise ValueError("need one conjugator per puncture")
        self.p = p
        self.trunc_deg = trunc_deg
        self.u = [dict(coords) for coords in u]
        self.provenance = dict(provenance or {"free_choice": "zero", "seed": None})
        self.provenance.setdefault("theta_Z", False)
        self._gen_cache: dict = {}

    # -- generator images ----------------------------------------------

    def u_series(self, i: int, trunc: int | None = None) -> TSeries:
        """The conjugator u_i as a primitive TSeries (exact polynomial)."""
        n = self.trunc_deg if trunc is None else trunc
        return lie_to_tseries(self.u[i - 1], self.p, n)

    def theta_gen(self, i: int, exp: int = 1, trunc: int | None = None) -> TSeries:
        """theta(x_i^{+-1}) = exp(u_i) exp(+-z_i) exp(-u_i)."""
        n = self.trunc_deg if trunc is None else trunc
        key = (i, 1 if exp > 0 else -1, n)
        img = self._gen_cache.get(key)
        if img is None:
            conj = self.u_series(i, n).t_exp()
            core = TSeries.letter(self.p, n, i).scale(key[1]).t_exp()
            img = conj * core * conj.antipode()
            self._gen_cache[key] = img
        return img

    def eval(self, w: GWord, trunc: int | None = None) -> TSeries:
        """Multiplicative evaluation on a z-free word; output is group-like."""
        if w.has_z():
            raise ValueError("special expansions evaluate z-free words only")
        n = self.trunc_deg if trunc is None else trunc
        acc = TSeries.unit(self.p, n)
        for sym, sgn in w.letters():
            acc = acc * self.theta_gen(sym, sgn, n)
        return acc

    def framed_eval(self, fw: FGWord, trunc: int | None = None) -> FSeries:
        """theta(base) (x) exp(winding C / 2)."""
        n = self.trunc_deg if trunc is None else trunc
        base = self.eval(fw.base, n)
        return FSeries.from_tseries(base) * FSeries.c_exp(self.p, n, Fraction(fw.winding, 2))

    def cyclic_eval(self, w: GWord, trunc: int | None = None):
        """theta of a conjugacy class: the cyclic projection of any representative."""
        return self.eval(w, trunc).cyclic_project()

    # -- inversion -------------------------------------------------------

    def monomial_image(self, mono: tuple, trunc: int) -> TSeries:
        """theta((x_{i_1}-1)..(x_{i_k}-1)); leading term is the word i_1..i_k."""
        key = ("mono", mono, trunc)
        img = self._gen_cache.get(key)
        if img is None:
            if not mono:
                img = TSeries.unit(self.p, trunc)
            else:
                head = self.monomial_image(mono[:-1], trunc)
                tail = self.theta_gen(mono[-1], 1, trunc) - TSeries.unit(self.p, trunc)
                img = head * tail
            self._gen_cache[key] = img
        return img

    def invert(self, t: TSeries) -> dict:
        """Express t through degree t.trunc_deg in the monomial basis.

        Returns {monomial tuple: coeff}; the triangular graded structure
        makes the system uniquely solvable degree by degree.
        """
        m = t.trunc_deg
        if m > self.trunc_deg:
            raise ValueError("cannot invert beyond the expansion's truncation")
        out: dict = {}
        residual = t.retrunc(m)
        for k in range(m + 1):
            layer = sorted(residual.homogeneous(k).items())
            for w, c in layer:
                if not c:
                    continue
                out[w] = c
                residual = residual - self.monomial_image(w, m).scale(c)
        if residual.terms:
            raise SolverInconsistent("triangular inversion left a nonzero residual")
        return out

    # -- validation and serialization -------------------------------------

    def boundary_image(self, trunc: int | None = None) -> TSeries:
        n = self.trunc_deg if trunc is None else trunc
        acc = TSeries.unit(self.p, n)
        for i in range(1, self.p + 1):
            acc = acc * self.theta_gen(i, 1, n)
        return acc

    def validate(self) -> bool:
        """theta(nu) = exp(z) through the truncation degree."""
        expz = TSeries.z_total(self.p, self.trunc_deg).t_exp()
        return self.boundary_image() == expz

    def to_json(self) -> dict:
        u_json = []
        for coords in self.u:
            u_json.append(
                [
                    {"lyndon": list(w), "coeff": format_rat(c)}
                    for w, c in sorted(coords.items(), key=lambda kv: (len(kv[0]), kv[0]))
                ]
            )
        return {
            "p": self.p,
            "trunc_deg": self.trunc_deg,
            "nu_convention": NU_CONVENTION,
            "u": u_json,
            "seed": self.provenance.get("seed"),
            "free_choice": self.provenance.get("free_choice", "zero"),
            "theta_Z": self.provenance.get("theta_Z", False),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Expansion":
        if obj.get("nu_convention", NU_CONVENTION) != NU_CONVENTION:
            raise ValueError(f"unsupported boundary convention {obj['nu_convention']!r}")
        u = []
        for coords in obj["u"]:
            u.append({tuple(t["lyndon"]): parse_rat(t["coeff"]) for t in coords})
        return cls(
            int(obj["p"]),
            int(obj["trunc_deg"]),
            u,
            {
                "free_choice": obj.get("free_choice", "zero"),
                "seed": obj.get("seed"),
                "theta_Z": obj.get("theta_Z", False),
            },
        )

    def save(self, path: str):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, sort_keys=True, indent=None, separators=(",", ":"))

    @classmethod
    def load(cls, path: str) -> "Expansion":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def solve_special(p: int, trunc_deg: int, seed=None) -> Expansion:
    """Build a special expansion by successive degree corrections.

    With seed None the free variables are zero (deterministic canonical
    choice); otherwise they are drawn from the documented seeded source,
    giving a genuinely different valid expansion per seed.
    """
    if p < 1 or trunc_deg < 1:
        raise ValueError("need p >= 1 and truncation degree >= 1")
    u = [dict() for _ in range(p)]
    free_value = None if seed is None else seeded_free_values(seed)
    letters = list(range(1, p + 1))
    exp = Expansion(
        p,
        trunc_deg,
        u,
        {"free_choice": "zero" if seed is None else "seed", "seed": None if seed is None else str(seed)},
    )
    for d in range(1, trunc_deg):
        n = d + 1
        prod = exp.boundary_image(n)
        expz = TSeries.z_total(p, n).t_exp()
        diff = prod - expz
        if any(len(w) <= d for w in diff.terms):
            raise SolverInconsistent("defect appeared below the current degree")
        defect = diff.homogeneous(n)
        if not defect and free_value is None:
            continue
        rhs = {w: -c for w, c in defect.items()}
        vs = solve_bracket_system(p, d, letters, rhs, free_value)
        for i in range(p):
            for w, c in vs[i].items():
                s = exp.u[i].get(w, _ZERO) + c
                if s:
                    exp.u[i][w] = s
                else:
                    exp.u[i].pop(w, None)
        exp._gen_cache.clear()
    if not exp.validate():
        raise SolverInconsistent("solver produced an invalid expansion")
    return exp


def theta_eval(e: Expansion, w: GWord) -> TSeries:
    return e.eval(w)


def theta_framed_eval(e: Expansion, fw: FGWord) -> FSeries:
    return e.framed_eval(fw)


def theta_invert(e: Expansion, t: TSeries) -> dict:
    return e.invert(t)


class Genus1Expansion:
    """Symplectic expansion data of the one-hole torus on letters a = 1, b = 2."""

    def __init__(self, trunc_deg: int, c: dict, d: dict):
        self.trunc_deg = trunc_deg
        self.c = dict(c)
        self.d = dict(d)

    def log_alpha(self, trunc: int | None = None) -> TSeries:
        n = self.trunc_deg if trunc is None else trunc
        return TSeries.letter(2, n, 1) + lie_to_tseries(self.c, 2, n)

    def log_beta(self, trunc: int | None = None) -> TSeries:
        n = self.trunc_deg if trunc is None else trunc
        return TSeries.letter(2, n, 2) + lie_to_tseries(self.d, 2, n)

    def commutator_image(self, trunc: int | None = None) -> TSeries:
        """theta'([alpha^-1, beta]) = theta'(alpha)^-1 theta'(beta) theta'(alpha) theta'(beta)^-1."""
        n = self.trunc_deg if trunc is None else trunc
        ta = self.log_alpha(n).t_exp()
        tb = self.log_beta(n).t_exp()
        return ta.antipode() * tb * ta * tb.antipode()

    def validate(self) -> bool:
        """log theta'([alpha^-1, beta]) = -[a, b] and no degree-1 corrections."""
        n = self.trunc_deg
        if any(len(w) < 2 for w in self.c) or any(len(w) < 2 for w in self.d):
            return False
        target = TSeries(2, n, {(1, 2): Fraction(-1), (2, 1): Fraction(1)})
        return self.commutator_image() == target.t_exp()


def solve_symplectic_genus1(trunc_deg: int) -> Genus1Expansion:
    """Solve for Lie corrections c, d with exp-images satisfying the genus-1 relation.

    Degree-d corrections shift the defect of log theta'([alpha^-1, beta]) + [a, b]
    by [a, v_d] - [b, v_c]; free variables are zero.
    """
    if trunc_deg < 2:
        raise ValueError("need truncation degree >= 2")
    g = Genus1Expansion(trunc_deg, {}, {})
    target_full = TSeries(2, trunc_deg, {(1, 2): Fraction(-1), (2, 1): Fraction(1)})
    for d in range(2, trunc_deg):
        n = d + 1
        img = g.commutator_image(n)
        want = TSeries(2, n, {(1, 2): Fraction(-1), (2, 1): Fraction(1)}).t_exp()
        diff = img - want
        if any(len(w) <= d for w in diff.terms):
            raise SolverInconsistent("genus-1 defect appeared below the current degree")
        defect = diff.homogeneous(n)
        if not defect:
            continue
        rhs = {w: -c for w, c in defect.items()}
        # [a, v_d] - [b, v_c] = [v_c, b] - [v_d, a]: slots (c, d), letters (b, a)
        vs = solve_bracket_system(2, d, [2, 1], rhs, None, signs=[1, -1])
        for coords, target in ((vs[0], g.c), (vs[1], g.d)):
            for w, c in coords.items():
                s = target.get(w, _ZERO) + c
                if s:
                    target[w] = s
                else:
                    target.pop(w, None)
    if not g.validate():
        raise SolverInconsistent("genus-1 solver produced an invalid expansion")
    return g


class SymplecticMap:
    """Generator images of the genus-p surface group on letters {1..2p}.

    Words use generator index 2i-1 for alpha_i and 2i for beta_i.
    """

    def __init__(self, genus: int, trunc_deg: int, alpha: list, beta: list):
        self.genus = genus
        self.trunc_deg = trunc_deg
        self.alpha = alpha
        self.beta = beta

    def gen_image(self, idx: int, sgn: int) -> TSeries:
        img = self.alpha[(idx - 1) // 2] if idx % 2 else self.beta[(idx - 1) // 2]
        return img.antipode() if sgn < 0 else img

    def eval(self, w: GWord) -> TSeries:
        acc = TSeries.unit(2 * self.genus, self.trunc_deg)
        for sym, sgn in w.letters():
            acc = acc * self.gen_image(sym, sgn)
        return acc

    @staticmethod
    def iota_word(i: int) -> GWord:
        """iota(x_i) = [alpha_i^-1, beta_i] = alpha_i^-1 beta_i alpha_i beta_i^-1."""
        a, b = 2 * i - 1, 2 * i
        return GWord(((a, -1), (b, 1), (a, 1), (b, -1)))


def build_symplectic(e: Expansion, g: Genus1Expansion, trunc: int | None = None) -> SymplecticMap:
    """Symplectic generator images exp(I(u_i)) theta'(.)|_{a_i, b_i} exp(-I(u_i))."""
    n = min(e.trunc_deg, g.trunc_deg) if trunc is None else trunc
    genus = e.p
    alpha, beta = [], []
    la = g.log_alpha(n)
    lb = g.log_beta(n)
    for i in range(1, genus + 1):
        sub = {1: ab_letter("a", i), 2: ab_letter("b", i)}
        la_i = TSeries(2 * genus, n, {tuple(sub[x] for x in w): c for w, c in la.terms.items()})
        lb_i = TSeries(2 * genus, n, {tuple(sub[x] for x in w): c for w, c in lb.terms.items()})
        conj = embed_I(e.u_series(i, n), n).t_exp()
        alpha.append(conj * la_i.t_exp() * conj.antipode())
        beta.append(conj * lb_i.t_exp() * conj.antipode())
    return SymplecticMap(genus, n, alpha, beta)
