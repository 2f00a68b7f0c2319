"""Truncated complete Hopf algebras of tensor words.

TSeries models a degree-truncated element of the completed tensor algebra
T((H)) on letters {1..p}: a sparse map from words (tuples of letters) to
rationals.  FSeries adjoins a central degree-1 variable C, modelling
T((H)) (x) K[[C]]; keys are (word, cpow) pairs with len(word)+cpow bounded
by the truncation degree.

Hopf structure: letters (and C) are primitive, the counit kills them, the
antipode negates letters (and C) and reverses words.  CycSeries lives in
the cyclic (trace) quotient: keys are canonical rotations of words;
`reduced()` additionally drops the empty word's class.

Truncation bookkeeping: every value carries trunc_deg, the degree through
which its coefficients are trusted.  Binary operations take the minimum of
the operands' degrees; filtered operations elsewhere shrink it by their
declared shift.  Internally trunc_deg = -1 is allowed and means "nothing
trusted"; public constructors require >= 0.

Canonical term order for serialization and reports: word length, then the
word lexicographically, then cpow.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError, MismatchedContext
from .qseries import UniSeries, format_rat, parse_rat

__all__ = [
    "TSeries",
    "FSeries",
    "CycSeries",
    "TensorSquare",
    "CycTensorSquare",
    "cyclic_word",
    "word_splits",
    "word_splits3",
]

Word = tuple  # tuple[int, ...]
_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=65536)
def word_splits(w: Word) -> tuple:
    """All order-preserving two-block splits of w (the shuffle-split coproduct)."""
    m = len(w)
    out = []
    for mask in range(1 << m):
        left = tuple(w[i] for i in range(m) if mask >> i & 1)
        right = tuple(w[i] for i in range(m) if not mask >> i & 1)
        out.append((left, right))
    return tuple(out)


@lru_cache(maxsize=16384)
def word_splits3(w: Word) -> tuple:
    """All order-preserving three-block splits of w (iterated coproduct)."""
    out = []
    for a, rest in word_splits(w):
        for b, c in word_splits(rest):
            out.append((a, b, c))
    return tuple(out)


def cyclic_word(w: Word) -> Word:
    """Canonical representative: the lexicographically least rotation."""
    if len(w) <= 1:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def _word_key(w: Word):
    return (len(w), w)


class TSeries:
    """Sparse truncated element of T((H)) over letters {1..p}."""

    __slots__ = ("p", "trunc_deg", "terms")

    def __init__(self, p: int, trunc_deg: int, terms: dict | None = None):
        if p < 1:
            raise ValueError("puncture count p must be >= 1")
        if trunc_deg < -1:
            raise ValueError("truncation degree must be >= -1")
        self.p = p
        self.trunc_deg = trunc_deg
        if terms:
            self.terms = {
                w: c for w, c in terms.items() if c != 0 and len(w) <= trunc_deg
            }
        else:
            self.terms = {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int, trunc_deg: int) -> "TSeries":
        return cls(p, trunc_deg)

    @classmethod
    def unit(cls, p: int, trunc_deg: int) -> "TSeries":
        return cls(p, trunc_deg, {(): _ONE})

    @classmethod
    def word(cls, p: int, trunc_deg: int, letters, coeff=1) -> "TSeries":
        letters = tuple(letters)
        for x in letters:
            if not 1 <= x <= p:
                raise ValueError(f"letter {x} out of range 1..{p}")
        return cls(p, trunc_deg, {letters: Fraction(coeff)})

    @classmethod
    def letter(cls, p: int, trunc_deg: int, i: int) -> "TSeries":
        return cls.word(p, trunc_deg, (i,))

    @classmethod
    def z_total(cls, p: int, trunc_deg: int, sign: int = 1) -> "TSeries":
        """z = z_1 + ... + z_p (or its negative)."""
        return cls(p, trunc_deg, {(i,): Fraction(sign) for i in range(1, p + 1)})

    # -- basics -------------------------------------------------------

    def _check(self, other: "TSeries"):
        if not isinstance(other, TSeries):
            raise MismatchedContext(f"expected TSeries, got {type(other).__name__}")
        if self.p != other.p:
            raise MismatchedContext(f"puncture counts differ: {self.p} vs {other.p}")

    def copy_with(self, terms: dict, trunc_deg: int | None = None) -> "TSeries":
        return TSeries(self.p, self.trunc_deg if trunc_deg is None else trunc_deg, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TSeries)
            and self.p == other.p
            and self.trunc_deg == other.trunc_deg
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.trunc_deg, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: _word_key(kv[0]))[:8]
        body = " + ".join(f"({c})z{list(w)}" for w, c in items) or "0"
        more = "..." if len(self.terms) > 8 else ""
        return f"TSeries[p={self.p},N={self.trunc_deg}]({body}{more})"

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TSeries") -> "TSeries":
        self._check(other)
        n = min(self.trunc_deg, other.trunc_deg)
        out = {w: c for w, c in self.terms.items() if len(w) <= n}
        for w, c in other.terms.items():
            if len(w) <= n:
                s = out.get(w, _ZERO) + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return TSeries(self.p, n, out)

    def __sub__(self, other: "TSeries") -> "TSeries":
        return self + (-other)

    def __neg__(self) -> "TSeries":
        return TSeries(self.p, self.trunc_deg, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "TSeries":
        c = Fraction(c)
        if not c:
            return TSeries(self.p, self.trunc_deg)
        return TSeries(self.p, self.trunc_deg, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "TSeries") -> "TSeries":
        """Concatenation product, truncated at min of the operand degrees."""
        self._check(other)
        n = min(self.trunc_deg, other.trunc_deg)
        out: dict = {}
        bterms = other.terms
        for wa, ca in self.terms.items():
            la = len(wa)
            if la > n:
                continue
            for wb, cb in bterms.items():
                if la + len(wb) > n:
                    continue
                w = wa + wb
                s = out.get(w, _ZERO) + ca * cb
                if s:
                    out[w] = s
                else:
                    del out[w]
        return TSeries(self.p, n, out)

    def retrunc(self, deg: int) -> "TSeries":
        """Shrink the trusted degree (never grows it)."""
        n = min(self.trunc_deg, deg)
        return TSeries(self.p, n, {w: c for w, c in self.terms.items() if len(w) <= n})

    def homogeneous(self, d: int) -> dict:
        return {w: c for w, c in self.terms.items() if len(w) == d}

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def coeff(self, letters) -> Fraction:
        return self.terms.get(tuple(letters), _ZERO)

    def eq_through(self, other: "TSeries", deg: int) -> bool:
        """Exact agreement of all coefficients of degree <= deg."""
        self._check(other)
        for w in self.terms.keys() | other.terms.keys():
            if len(w) <= deg and self.terms.get(w, _ZERO) != other.terms.get(w, _ZERO):
                return False
        return True

    # -- Hopf structure ----------------------------------------------

    def counit(self) -> Fraction:
        return self.terms.get((), _ZERO)

    def antipode(self) -> "TSeries":
        out = {}
        for w, c in self.terms.items():
            out[w[::-1]] = -c if len(w) % 2 else c
        return TSeries(self.p, self.trunc_deg, out)

    def sweedler(self) -> list:
        """Coproduct as a sparse list of (left_word, right_word, coeff) triples."""
        out = []
        for w, c in self.terms.items():
            for left, right in word_splits(w):
                out.append((left, right, c))
        return out

    def augmented(self) -> "TSeries":
        """a - counit(a), the augmentation-ideal part."""
        eps = self.counit()
        if not eps:
            return self
        out = dict(self.terms)
        out.pop((), None)
        return TSeries(self.p, self.trunc_deg, out)

    def t_exp(self) -> "TSeries":
        if self.counit() != 0:
            raise DomainError("exp requires counit 0")
        n = self.trunc_deg
        acc = TSeries.unit(self.p, n)
        term = TSeries.unit(self.p, n)
        for k in range(1, n + 1):
            term = (term * self).scale(Fraction(1, k))
            if term.is_zero():
                break
            acc = acc + term
        return acc

    def t_log(self) -> "TSeries":
        if self.counit() != 1:
            raise DomainError("log requires counit 1")
        n = self.trunc_deg
        x = self - TSeries.unit(self.p, n)
        acc = TSeries.zero(self.p, n)
        power = TSeries.unit(self.p, n)
        for k in range(1, n + 1):
            power = power * x
            if power.is_zero():
                break
            acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
        return acc

    def eval_uni(self, u: UniSeries) -> "TSeries":
        """sum_k u_k * self^k; requires counit(self) = 0.

        Trusted through min(self.trunc_deg, u.trunc_deg): missing univariate
        coefficients beyond u's degree would first contribute there.
        """
        if self.counit() != 0:
            raise DomainError("series evaluation requires counit 0")
        n = min(self.trunc_deg, u.trunc_deg)
        acc = TSeries(self.p, n, {(): u.coeffs[0]} if u.coeffs[0] else {})
        power = TSeries.unit(self.p, n)
        for k in range(1, n + 1):
            power = power * self
            if power.is_zero():
                break
            if u.coeffs[k]:
                acc = acc + power.scale(u.coeffs[k])
        return acc

    def is_primitive(self) -> bool:
        """Delta(a) = a(x)1 + 1(x)a at truncation."""
        want: dict = {}
        for w, c in self.terms.items():
            for key in ((w, ()), ((), w)):
                s = want.get(key, _ZERO) + c
                if s:
                    want[key] = s
                else:
                    want.pop(key, None)
        have: dict = {}
        for left, right, c in self.sweedler():
            s = have.get((left, right), _ZERO) + c
            if s:
                have[(left, right)] = s
            else:
                have.pop((left, right), None)
        return have == want

    def is_grouplike(self) -> bool:
        """counit 1 and Delta(g) = g(x)g through the truncation degree."""
        if self.counit() != 1:
            return False
        n = self.trunc_deg
        have: dict = {}
        for left, right, c in self.sweedler():
            key = (left, right)
            s = have.get(key, _ZERO) + c
            if s:
                have[key] = s
            else:
                have.pop(key, None)
        for wl, cl in self.terms.items():
            for wr, cr in self.terms.items():
                if len(wl) + len(wr) > n:
                    continue
                key = (wl, wr)
                s = have.get(key, _ZERO) - cl * cr
                if s:
                    have[key] = s
                else:
                    have.pop(key, None)
        return not have

    # -- quotients ----------------------------------------------------

    def cyclic_project(self) -> "CycSeries":
        out: dict = {}
        for w, c in self.terms.items():
            k = cyclic_word(w)
            s = out.get(k, _ZERO) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return CycSeries(self.p, self.trunc_deg, out)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        terms = [
            {"word": list(w), "coeff": format_rat(c)}
            for w, c in sorted(self.terms.items(), key=lambda kv: _word_key(kv[0]))
        ]
        return {"p": self.p, "trunc_deg": self.trunc_deg, "terms": terms}

    @classmethod
    def from_json(cls, obj: dict) -> "TSeries":
        p = int(obj["p"])
        n = int(obj["trunc_deg"])
        terms: dict = {}
        for t in obj["terms"]:
            w = tuple(int(x) for x in t["word"])
            for x in w:
                if not 1 <= x <= p:
                    raise ValueError(f"letter {x} out of range 1..{p}")
            if t.get("cpow", 0):
                raise ValueError("cpow terms belong to FSeries, not TSeries")
            c = parse_rat(t["coeff"])
            if c:
                terms[w] = terms.get(w, _ZERO) + c
        return cls(p, n, terms)


class FSeries:
    """Sparse truncated element of T((H)) (x) K[[C]]; deg(C) = 1, C central."""

    __slots__ = ("p", "trunc_deg", "terms")

    def __init__(self, p: int, trunc_deg: int, terms: dict | None = None):
        if p < 1:
            raise ValueError("puncture count p must be >= 1")
        if trunc_deg < -1:
            raise ValueError("truncation degree must be >= -1")
        self.p = p
        self.trunc_deg = trunc_deg
        if terms:
            self.terms = {
                (w, n): c
                for (w, n), c in terms.items()
                if c != 0 and len(w) + n <= trunc_deg
            }
        else:
            self.terms = {}

    @classmethod
    def zero(cls, p: int, trunc_deg: int) -> "FSeries":
        return cls(p, trunc_deg)

    @classmethod
    def unit(cls, p: int, trunc_deg: int) -> "FSeries":
        return cls(p, trunc_deg, {((), 0): _ONE})

    @classmethod
    def from_tseries(cls, t: TSeries) -> "FSeries":
        return cls(t.p, t.trunc_deg, {(w, 0): c for w, c in t.terms.items()})

    @classmethod
    def c_power(cls, p: int, trunc_deg: int, n: int, coeff=1) -> "FSeries":
        return cls(p, trunc_deg, {((), n): Fraction(coeff)})

    @classmethod
    def c_exp(cls, p: int, trunc_deg: int, lam) -> "FSeries":
        """exp(lam * C)."""
        lam = Fraction(lam)
        terms = {}
        power = _ONE
        fact = 1
        for n in range(trunc_deg + 1):
            if n:
                fact *= n
                power *= lam
            if power:
                terms[((), n)] = power / fact
        return cls(p, trunc_deg, terms)

    def _check(self, other: "FSeries"):
        if not isinstance(other, FSeries):
            raise MismatchedContext(f"expected FSeries, got {type(other).__name__}")
        if self.p != other.p:
            raise MismatchedContext(f"puncture counts differ: {self.p} vs {other.p}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FSeries)
            and self.p == other.p
            and self.trunc_deg == other.trunc_deg
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.trunc_deg, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (_word_key(kv[0][0]), kv[0][1]))[:8]
        body = " + ".join(f"({c})z{list(w)}C^{n}" for (w, n), c in items) or "0"
        more = "..." if len(self.terms) > 8 else ""
        return f"FSeries[p={self.p},N={self.trunc_deg}]({body}{more})"

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FSeries") -> "FSeries":
        self._check(other)
        n = min(self.trunc_deg, other.trunc_deg)
        out = {k: c for k, c in self.terms.items() if len(k[0]) + k[1] <= n}
        for k, c in other.terms.items():
            if len(k[0]) + k[1] <= n:
                s = out.get(k, _ZERO) + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return FSeries(self.p, n, out)

    def __sub__(self, other: "FSeries") -> "FSeries":
        return self + (-other)

    def __neg__(self) -> "FSeries":
        return FSeries(self.p, self.trunc_deg, {k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "FSeries":
        c = Fraction(c)
        if not c:
            return FSeries(self.p, self.trunc_deg)
        return FSeries(self.p, self.trunc_deg, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "FSeries") -> "FSeries":
        self._check(other)
        n = min(self.trunc_deg, other.trunc_deg)
        out: dict = {}
        for (wa, na), ca in self.terms.items():
            da = len(wa) + na
            if da > n:
                continue
            for (wb, nb), cb in other.terms.items():
                if da + len(wb) + nb > n:
                    continue
                key = (wa + wb, na + nb)
                s = out.get(key, _ZERO) + ca * cb
                if s:
                    out[key] = s
                else:
                    del out[key]
        return FSeries(self.p, n, out)

    def retrunc(self, deg: int) -> "FSeries":
        n = min(self.trunc_deg, deg)
        return FSeries(
            self.p, n, {k: c for k, c in self.terms.items() if len(k[0]) + k[1] <= n}
        )

    def eq_through(self, other: "FSeries", deg: int) -> bool:
        self._check(other)
        for k in self.terms.keys() | other.terms.keys():
            if len(k[0]) + k[1] <= deg and self.terms.get(k, _ZERO) != other.terms.get(
                k, _ZERO
            ):
                return False
        return True

    def counit(self) -> Fraction:
        return self.terms.get(((), 0), _ZERO)

    def antipode(self) -> "FSeries":
        out = {}
        for (w, n), c in self.terms.items():
            out[(w[::-1], n)] = -c if (len(w) + n) % 2 else c
        return FSeries(self.p, self.trunc_deg, out)

    def sweedler(self) -> list:
        """Coproduct as ((wl, cl), (wr, cr), coeff) triples; C splits binomially."""
        out = []
        for (w, n), c in self.terms.items():
            for left, right in word_splits(w):
                for j in range(n + 1):
                    out.append(((left, j), (right, n - j), c * comb(n, j)))
        return out

    def fproject(self) -> TSeries:
        """Kill C: keep only cpow = 0 terms."""
        return TSeries(
            self.p, self.trunc_deg, {w: c for (w, n), c in self.terms.items() if n == 0}
        )

    def t_exp(self) -> "FSeries":
        if self.counit() != 0:
            raise DomainError("exp requires counit 0")
        n = self.trunc_deg
        acc = FSeries.unit(self.p, n)
        term = FSeries.unit(self.p, n)
        for k in range(1, n + 1):
            term = (term * self).scale(Fraction(1, k))
            if term.is_zero():
                break
            acc = acc + term
        return acc

    def t_log(self) -> "FSeries":
        if self.counit() != 1:
            raise DomainError("log requires counit 1")
        n = self.trunc_deg
        x = self - FSeries.unit(self.p, n)
        acc = FSeries.zero(self.p, n)
        power = FSeries.unit(self.p, n)
        for k in range(1, n + 1):
            power = power * x
            if power.is_zero():
                break
            acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
        return acc

    def to_json(self) -> dict:
        terms = [
            {"word": list(w), "cpow": n, "coeff": format_rat(c)}
            for (w, n), c in sorted(
                self.terms.items(), key=lambda kv: (_word_key(kv[0][0]), kv[0][1])
            )
        ]
        return {"p": self.p, "trunc_deg": self.trunc_deg, "terms": terms}

    @classmethod
    def from_json(cls, obj: dict) -> "FSeries":
        p = int(obj["p"])
        n = int(obj["trunc_deg"])
        terms: dict = {}
        for t in obj["terms"]:
            w = tuple(int(x) for x in t["word"])
            for x in w:
                if not 1 <= x <= p:
                    raise ValueError(f"letter {x} out of range 1..{p}")
            key = (w, int(t.get("cpow", 0)))
            c = parse_rat(t["coeff"])
            if c:
                terms[key] = terms.get(key, _ZERO) + c
        return cls(p, n, terms)


class CycSeries:
    """Element of the cyclic quotient: sparse map from canonical rotations."""

    __slots__ = ("p", "trunc_deg", "terms", "reduced_flag")

    def __init__(self, p: int, trunc_deg: int, terms: dict | None = None, reduced: bool = False):
        self.p = p
        self.trunc_deg = trunc_deg
        self.reduced_flag = reduced
        out = {}
        if terms:
            for w, c in terms.items():
                if c == 0 or len(w) > trunc_deg:
                    continue
                if reduced and len(w) == 0:
                    continue
                k = cyclic_word(w)
                s = out.get(k, _ZERO) + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        self.terms = out

    @classmethod
    def zero(cls, p: int, trunc_deg: int, reduced: bool = False) -> "CycSeries":
        return cls(p, trunc_deg, None, reduced)

    def _check(self, other: "CycSeries"):
        if self.p != other.p:
            raise MismatchedContext(f"puncture counts differ: {self.p} vs {other.p}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycSeries)
            and self.p == other.p
            and self.trunc_deg == other.trunc_deg
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.trunc_deg, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: _word_key(kv[0]))[:8]
        body = " + ".join(f"({c})|{list(w)}|" for w, c in items) or "0"
        return f"CycSeries[p={self.p},N={self.trunc_deg}]({body})"

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CycSeries") -> "CycSeries":
        self._check(other)
        n = min(self.trunc_deg, other.trunc_deg)
        out = {w: c for w, c in self.terms.items() if len(w) <= n}
        for w, c in other.terms.items():
            if len(w) <= n:
                s = out.get(w, _ZERO) + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return CycSeries(self.p, n, out, self.reduced_flag and other.reduced_flag)

    def __sub__(self, other: "CycSeries") -> "CycSeries":
        return self + other.scale(-1)

    def __neg__(self) -> "CycSeries":
        return self.scale(-1)

    def scale(self, c) -> "CycSeries":
        c = Fraction(c)
        return CycSeries(
            self.p, self.trunc_deg, {w: c * v for w, v in self.terms.items()}, self.reduced_flag
        )

    def reduced(self) -> "CycSeries":
        """Drop the empty word's class (quotient by K1)."""
        return CycSeries(self.p, self.trunc_deg, self.terms, reduced=True)

    def retrunc(self, deg: int) -> "CycSeries":
        n = min(self.trunc_deg, deg)
        return CycSeries(
            self.p, n, {w: c for w, c in self.terms.items() if len(w) <= n}, self.reduced_flag
        )

    def eq_through(self, other: "CycSeries", deg: int) -> bool:
        self._check(other)
        for w in self.terms.keys() | other.terms.keys():
            if len(w) <= deg and self.terms.get(w, _ZERO) != other.terms.get(w, _ZERO):
                return False
        return True

    def to_json(self) -> dict:
        terms = [
            {"word": list(w), "coeff": format_rat(c)}
            for w, c in sorted(self.terms.items(), key=lambda kv: _word_key(kv[0]))
        ]
        return {"p": self.p, "trunc_deg": self.trunc_deg, "terms": terms, "reduced": self.reduced_flag}


class TensorSquare:
    """Sparse element of A (x) A; trunc_deg bounds the total degree."""

    __slots__ = ("p", "trunc_deg", "terms")

    def __init__(self, p: int, trunc_deg: int, terms: dict | None = None):
        self.p = p
        self.trunc_deg = trunc_deg
        if terms:
            self.terms = {
                k: c
                for k, c in terms.items()
                if c != 0 and len(k[0]) + len(k[1]) <= trunc_deg
            }
        else:
            self.terms = {}

    def add_term(self, wl: Word, wr: Word, c: Fraction):
        if c == 0 or len(wl) + len(wr) > self.trunc_deg:
            return
        key = (wl, wr)
        s = self.terms.get(key, _ZERO) + c
        if s:
            self.terms[key] = s
        else:
            del self.terms[key]

    def __add__(self, other: "TensorSquare") -> "TensorSquare":
        n = min(self.trunc_deg, other.trunc_deg)
        out = TensorSquare(self.p, n, dict(self.terms))
        out.terms = {k: c for k, c in out.terms.items() if len(k[0]) + len(k[1]) <= n}
        for (wl, wr), c in other.terms.items():
            out.add_term(wl, wr, c)
        return out

    def __sub__(self, other: "TensorSquare") -> "TensorSquare":
        return self + other.scale(-1)

    def scale(self, c) -> "TensorSquare":
        c = Fraction(c)
        return TensorSquare(
            self.p, self.trunc_deg, {k: c * v for k, v in self.terms.items()}
        )

    def swap(self) -> "TensorSquare":
        return TensorSquare(
            self.p, self.trunc_deg, {(wr, wl): c for (wl, wr), c in self.terms.items()}
        )

    def is_zero(self) -> bool:
        return not self.terms

    def cyclic(self) -> "CycTensorSquare":
        out = CycTensorSquare(self.p, self.trunc_deg)
        for (wl, wr), c in self.terms.items():
            out.add_term(cyclic_word(wl), cyclic_word(wr), c)
        return out

    def eq_through(self, other: "TensorSquare", deg: int) -> bool:
        for k in self.terms.keys() | other.terms.keys():
            if len(k[0]) + len(k[1]) <= deg and self.terms.get(k, _ZERO) != other.terms.get(k, _ZERO):
                return False
        return True


class CycTensorSquare:
    """Sparse element of the cyclic quotient tensored with itself."""

    __slots__ = ("p", "trunc_deg", "terms", "reduced_flag")

    def __init__(self, p: int, trunc_deg: int, terms: dict | None = None, reduced: bool = False):
        self.p = p
        self.trunc_deg = trunc_deg
        self.reduced_flag = reduced
        out = {}
        if terms:
            for (wl, wr), c in terms.items():
                if c == 0 or len(wl) + len(wr) > trunc_deg:
                    continue
                if reduced and (len(wl) == 0 or len(wr) == 0):
                    continue
                key = (cyclic_word(wl), cyclic_word(wr))
                s = out.get(key, _ZERO) + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        self.terms = out

    def add_term(self, wl: Word, wr: Word, c: Fraction):
        if c == 0 or len(wl) + len(wr) > self.trunc_deg:
            return
        if self.reduced_flag and (len(wl) == 0 or len(wr) == 0):
            return
        key = (cyclic_word(wl), cyclic_word(wr))
        s = self.terms.get(key, _ZERO) + c
        if s:
            self.terms[key] = s
        else:
            del self.terms[key]

    def __add__(self, other: "CycTensorSquare") -> "CycTensorSquare":
        n = min(self.trunc_deg, other.trunc_deg)
        out = CycTensorSquare(
            self.p, n, dict(self.terms), self.reduced_flag and other.reduced_flag
        )
        out.terms = {k: c for k, c in out.terms.items() if len(k[0]) + len(k[1]) <= n}
        for (wl, wr), c in other.terms.items():
            out.add_term(wl, wr, c)
        return out

    def __sub__(self, other: "CycTensorSquare") -> "CycTensorSquare":
        return self + other.scale(-1)

    def scale(self, c) -> "CycTensorSquare":
        c = Fraction(c)
        return CycTensorSquare(
            self.p, self.trunc_deg, {k: c * v for k, v in self.terms.items()}, self.reduced_flag
        )

    def swap(self) -> "CycTensorSquare":
        return CycTensorSquare(
            self.p,
            self.trunc_deg,
            {(wr, wl): c for (wl, wr), c in self.terms.items()},
            self.reduced_flag,
        )

    def reduced(self) -> "CycTensorSquare":
        """Drop terms whose either leg is the empty word's class."""
        return CycTensorSquare(self.p, self.trunc_deg, self.terms, reduced=True)

    def retrunc(self, deg: int) -> "CycTensorSquare":
        n = min(self.trunc_deg, deg)
        return CycTensorSquare(
            self.p,
            n,
            {k: c for k, c in self.terms.items() if len(k[0]) + len(k[1]) <= n},
            self.reduced_flag,
        )

    def is_zero(self) -> bool:
        return not self.terms

    def eq_through(self, other: "CycTensorSquare", deg: int) -> bool:
        for k in self.terms.keys() | other.terms.keys():
            if len(k[0]) + len(k[1]) <= deg and self.terms.get(k, _ZERO) != other.terms.get(k, _ZERO):
                return False
        return True

    def to_json(self) -> dict:
        terms = [
            {"left": list(wl), "right": list(wr), "coeff": format_rat(c)}
            for (wl, wr), c in sorted(
                self.terms.items(),
                key=lambda kv: (_word_key(kv[0][0]), _word_key(kv[0][1])),
            )
        ]
        return {
            "p": self.p,
            "trunc_deg": self.trunc_deg,
            "reduced": self.reduced_flag,
            "terms": terms,
        }
