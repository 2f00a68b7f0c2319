"""Exact scalar series over Q.

Bernoulli numbers, truncated univariate power series, the cotangent-type
series

    s(X) = -1/2 - sum_{k>=1} B_{2k}/(2k)! X^{2k-1}
         = 1/X + 1/(e^{-X} - 1),

and the gamma-type series phi(X) = X/24 - sum_{i>=2} q_i X^i built from a
Drinfeld-associator coefficient list {q_i}.

Conventions fixed here and relied on everywhere else:
  * Bernoulli numbers use the B_1 = -1/2 convention (the recurrence
    sum_k C(n+1,k) B_k = 0 seeded with B_0 = 1), so that the expansion of
    1/(e^{-X}-1) matches s(X) above.
  * Rationals are `fractions.Fraction` values; serialized as "num/den".
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb

from .errors import MissingCoefficient, ZeroParameter

__all__ = [
    "bernoulli",
    "UniSeries",
    "series_s",
    "AssocCoeffs",
    "series_phi",
    "phi_even",
    "validate_assoc_coeffs",
    "gamma_zeta",
    "parse_rat",
    "format_rat",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def parse_rat(text: str | int) -> Fraction:
    """Parse a rational from a "num/den" string (bare integers accepted)."""
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


def format_rat(x: Fraction) -> str:
    """Render a rational canonically as "num/den" (denominator always shown)."""
    return f"{x.numerator}/{x.denominator}"


_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, by the recurrence sum_{k<=n} C(n+1,k) B_k = 0."""
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    while len(_bernoulli_cache) <= n:
        m = len(_bernoulli_cache)
        acc = sum((comb(m + 1, k) * _bernoulli_cache[k] for k in range(m)), _ZERO)
        _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[n]


class UniSeries:
    """A univariate power series truncated at degree N (coeffs 0..N kept)."""

    __slots__ = ("coeffs", "trunc_deg")

    def __init__(self, coeffs, trunc_deg: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if trunc_deg is None:
            trunc_deg = len(coeffs) - 1
        if trunc_deg < 0:
            raise ValueError("truncation degree must be >= 0")
        coeffs = coeffs[: trunc_deg + 1]
        coeffs += [_ZERO] * (trunc_deg + 1 - len(coeffs))
        self.coeffs = coeffs
        self.trunc_deg = trunc_deg

    @classmethod
    def zero(cls, trunc_deg: int) -> "UniSeries":
        return cls([], trunc_deg)

    @classmethod
    def x(cls, trunc_deg: int) -> "UniSeries":
        """The identity series X."""
        return cls([0, 1] if trunc_deg >= 1 else [0], trunc_deg)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniSeries)
            and self.trunc_deg == other.trunc_deg
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.trunc_deg, tuple(self.coeffs)))

    def __repr__(self) -> str:
        return f"UniSeries({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "UniSeries") -> "UniSeries":
        n = min(self.trunc_deg, other.trunc_deg)
        return UniSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    def __sub__(self, other: "UniSeries") -> "UniSeries":
        n = min(self.trunc_deg, other.trunc_deg)
        return UniSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], n)

    def __neg__(self) -> "UniSeries":
        return UniSeries([-c for c in self.coeffs], self.trunc_deg)

    def __mul__(self, other: "UniSeries") -> "UniSeries":
        n = min(self.trunc_deg, other.trunc_deg)
        out = [_ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[: n + 1 - i]):
                if b:
                    out[i + j] += a * b
        return UniSeries(out, n)

    def scale(self, c) -> "UniSeries":
        c = Fraction(c)
        return UniSeries([c * a for a in self.coeffs], self.trunc_deg)

    def shift_const(self, c) -> "UniSeries":
        out = list(self.coeffs)
        out[0] += Fraction(c)
        return UniSeries(out, self.trunc_deg)

    def flip_sign_of_x(self) -> "UniSeries":
        """Return f(-X)."""
        return UniSeries(
            [(-c if k % 2 else c) for k, c in enumerate(self.coeffs)], self.trunc_deg
        )

    def truncated(self, deg: int) -> "UniSeries":
        return UniSeries(self.coeffs[: deg + 1], min(self.trunc_deg, deg))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_json(self) -> dict:
        return {
            "trunc_deg": self.trunc_deg,
            "coeffs": [format_rat(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "UniSeries":
        return cls([parse_rat(c) for c in obj["coeffs"]], obj["trunc_deg"])


def expm1_series(n: int, sign: int = 1) -> UniSeries:
    """e^{sign*X} - 1 truncated at degree n."""
    coeffs = [_ZERO]
    fact = 1
    for k in range(1, n + 1):
        fact *= k
        coeffs.append(Fraction(sign**k, fact))
    return UniSeries(coeffs, n)


def series_s(n: int) -> UniSeries:
    """s(X) = -1/2 - sum_{k>=1} B_{2k}/(2k)! X^{2k-1}, truncated at degree n."""
    if n < 0:
        raise ValueError("truncation degree must be >= 0")
    coeffs = [Fraction(-1, 2)] + [_ZERO] * n
    fact = 1
    for m in range(1, n + 2):
        fact *= m
        if m % 2 == 0 and m - 1 <= n:
            coeffs[m - 1] = -bernoulli(m) / fact
    return UniSeries(coeffs, n)


class AssocCoeffs:
    """Coefficient list {q_i}_{i>=2} of the b-linear part of log Phi.

    even_mode marks an even associator: even-index entries are forced to 0
    and odd-index entries to the Bernoulli values -B_{2j+2}/(2 (2j+2)!), so
    entries may be omitted and are filled on demand.  Entries explicitly
    supplied are used as given (validation is a separate, report-producing
    step; mu construction fails fast on inconsistent lists).
    """

    __slots__ = ("q", "even_mode", "max_index")

    def __init__(self, q: dict[int, Fraction] | None = None, even_mode: bool = False):
        q = {int(i): Fraction(v) for i, v in (q or {}).items()}
        for i in q:
            if i < 2:
                raise ValueError(f"associator coefficients start at index 2, got {i}")
        self.q = q
        self.even_mode = even_mode
        self.max_index = max(q) if q else 1

    @staticmethod
    def bernoulli_value(i: int) -> Fraction:
        """The forced odd-index value q_{2j+1} = -B_{2j+2}/(2 (2j+2)!)."""
        if i < 3 or i % 2 == 0:
            raise ValueError("Bernoulli-forced values exist for odd indices >= 3")
        fact = 1
        for m in range(1, i + 2):
            fact *= m
        return -bernoulli(i + 1) / (2 * fact)

    @classmethod
    def bernoulli_canonical(cls, max_index: int, even_mode: bool = True) -> "AssocCoeffs":
        """The minimal valid list: odd entries from the Bernoulli identity, even entries 0."""
        q = {}
        for i in range(2, max_index + 1):
            q[i] = cls.bernoulli_value(i) if i % 2 else Fraction(0)
        return cls(q, even_mode=even_mode)

    def get(self, i: int) -> Fraction:
        """q_i, filling even-mode gaps with the forced values."""
        if i in self.q:
            return self.q[i]
        if self.even_mode:
            return Fraction(0) if i % 2 == 0 else self.bernoulli_value(i)
        raise MissingCoefficient(f"q_{i} not supplied and even_mode is off")

    def to_json(self) -> dict:
        return {
            "even_mode": self.even_mode,
            "q": {str(i): format_rat(v) for i, v in sorted(self.q.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AssocCoeffs":
        return cls(
            {int(i): parse_rat(v) for i, v in obj.get("q", {}).items()},
            even_mode=bool(obj.get("even_mode", False)),
        )

    @classmethod
    def load(cls, path: str) -> "AssocCoeffs":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def series_phi(coeffs: AssocCoeffs, n: int) -> UniSeries:
    """phi(X) = X/24 - sum_{2<=i<=n} q_i X^i."""
    out = [_ZERO] * (n + 1)
    if n >= 1:
        out[1] = Fraction(1, 24)
    for i in range(2, n + 1):
        out[i] = -coeffs.get(i)
    return UniSeries(out, n)


def phi_even(n: int) -> UniSeries:
    """The even-associator value phi(X) = 1/4 + s(-X)/2."""
    return series_s(n).flip_sign_of_x().scale(Fraction(1, 2)).shift_const(Fraction(1, 4))


def validate_assoc_coeffs(coeffs: AssocCoeffs, max_j: int) -> dict:
    """Check q_{2j+1} = -B_{2j+2}/(2 (2j+2)!) for j = 1..max_j.

    Even-index entries are unconstrained; they are listed informationally.
    Failures are report entries, never exceptions.
    """
    checks = []
    ok = True
    for j in range(1, max_j + 1):
        i = 2 * j + 1
        expected = AssocCoeffs.bernoulli_value(i)
        actual = coeffs.get(i)
        passed = actual == expected
        ok = ok and passed
        checks.append(
            {
                "j": j,
                "index": i,
                "expected": format_rat(expected),
                "actual": format_rat(actual),
                "ok": passed,
            }
        )
    even_entries = [
        {"index": i, "value": format_rat(coeffs.get(i))}
        for i in range(2, 2 * max_j + 2)
        if i % 2 == 0 and (i in coeffs.q or coeffs.even_mode)
    ]
    return {"ok": ok, "checks": checks, "even_entries": even_entries}


def gamma_zeta(coeffs: AssocCoeffs, lam: Fraction, n_max: int) -> list[Fraction]:
    """Zeta values zeta_Psi(n) for 2 <= n <= n_max of the parameter-lambda associator.

    Uses zeta_Psi(n) = (-lam)^n q_{n-1}; the n = 2 entry uses the
    hexagon-forced coefficient q_1 = -1/24, consistently with the even-index
    constraint zeta_Psi(2) = -lam^2 B_2/(2*2!) = -lam^2/24.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise ZeroParameter("gamma-function parameter lambda must be nonzero")
    out = []
    for n in range(2, n_max + 1):
        q = Fraction(-1, 24) if n == 2 else coeffs.get(n - 1)
        out.append((-lam) ** n * q)
    return out
