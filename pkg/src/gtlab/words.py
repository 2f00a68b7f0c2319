"""Free-group words, framed words, group-algebra elements and Fox calculus.

GWord is a freely reduced word in generators x_1..x_p plus one distinguished
symbol z (encoded as generator index 0), covering both the surface group and
the free product needed for the z-derivative.  FGWord is a framed word: a
z-free base word together with an integer winding number (the exponent of
the fiber generator F).

The left Fox derivative d/dz satisfies d(ab) = a d(b) + d(a) eps(b) with
d(z) = 1 and d(g) = 0 on z-free generators; negative powers use
d(z^-1) = -z^-1.  proj_p is the algebra map killing z.

CLI-facing word grammar (ASCII):
    word := "1" | term ("*" term)*
    term := "x" int ("^" int)? | "F" ("^" int)?
Generators are 1-based; "F" syllables accumulate into the winding number.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

__all__ = ["GWord", "FGWord", "GAlg", "parse_word", "format_word"]

Z_SYM = 0
_ZERO = Fraction(0)
_ONE = Fraction(1)


def _reduce(syllables) -> tuple:
    out: list = []
    for sym, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == sym:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((sym, merged))
        else:
            out.append((sym, exp))
    return tuple(out)


class GWord:
    """Freely reduced word; syllables are (symbol, nonzero exponent) pairs."""

    __slots__ = ("syllables",)

    def __init__(self, syllables=()):
        self.syllables = _reduce(tuple((int(s), int(e)) for s, e in syllables))

    @classmethod
    def identity(cls) -> "GWord":
        return cls()

    @classmethod
    def gen(cls, i: int, exp: int = 1) -> "GWord":
        if i < 1:
            raise ValueError("generator indices are 1-based")
        return cls(((i, exp),))

    @classmethod
    def z(cls, exp: int = 1) -> "GWord":
        return cls(((Z_SYM, exp),))

    def __mul__(self, other: "GWord") -> "GWord":
        return GWord(self.syllables + other.syllables)

    def inverse(self) -> "GWord":
        return GWord(tuple((s, -e) for s, e in reversed(self.syllables)))

    def __eq__(self, other) -> bool:
        return isinstance(other, GWord) and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __repr__(self) -> str:
        return f"GWord({format_word(self)})"

    def is_identity(self) -> bool:
        return not self.syllables

    def has_z(self) -> bool:
        return any(s == Z_SYM for s, _ in self.syllables)

    def letters(self) -> list:
        """Expand syllables into single-letter (symbol, +-1) factors."""
        out = []
        for sym, exp in self.syllables:
            step = 1 if exp > 0 else -1
            out.extend((sym, step) for _ in range(abs(exp)))
        return out

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def max_generator(self) -> int:
        return max((s for s, _ in self.syllables), default=0)

    def cyclic_canonical(self) -> "GWord":
        """Canonical representative of the conjugacy class.

        Cyclically reduce, then take the least rotation of the letter
        sequence under the fixed (symbol, sign) lexicographic order.
        """
        letters = self.letters()
        while len(letters) >= 2 and letters[0] == (letters[-1][0], -letters[-1][1]):
            letters = letters[1:-1]
        if not letters:
            return GWord()
        seq = tuple(letters)
        best = min(seq[i:] + seq[:i] for i in range(len(seq)))
        return GWord(best)


class FGWord:
    """Framed word: z-free base word plus integer winding number."""

    __slots__ = ("base", "winding")

    def __init__(self, base: GWord, winding: int = 0):
        if base.has_z():
            raise ValueError("framed words cannot contain z")
        self.base = base
        self.winding = int(winding)

    def __mul__(self, other: "FGWord") -> "FGWord":
        return FGWord(self.base * other.base, self.winding + other.winding)

    def inverse(self) -> "FGWord":
        return FGWord(self.base.inverse(), -self.winding)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FGWord)
            and self.base == other.base
            and self.winding == other.winding
        )

    def __hash__(self):
        return hash((self.base, self.winding))

    def __repr__(self) -> str:
        return f"FGWord({format_word(self)})"


def winding(x: FGWord) -> int:
    """The stored fiber exponent; a homomorphism to the integers."""
    return x.winding


class GAlg:
    """Sparse group-algebra element: map from reduced words to rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        if terms:
            self.terms = {w: c for w, c in terms.items() if c != 0}
        else:
            self.terms = {}

    @classmethod
    def zero(cls) -> "GAlg":
        return cls()

    @classmethod
    def unit(cls) -> "GAlg":
        return cls({GWord(): _ONE})

    @classmethod
    def of(cls, w: GWord, coeff=1) -> "GAlg":
        return cls({w: Fraction(coeff)})

    def __eq__(self, other) -> bool:
        return isinstance(other, GAlg) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        items = list(self.terms.items())[:6]
        body = " + ".join(f"({c})[{format_word(w)}]" for w, c in items) or "0"
        return f"GAlg({body}{'...' if len(self.terms) > 6 else ''})"

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GAlg") -> "GAlg":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, _ZERO) + c
            if s:
                out[w] = s
            else:
                del out[w]
        return GAlg(out)

    def __sub__(self, other: "GAlg") -> "GAlg":
        return self + other.scale(-1)

    def __neg__(self) -> "GAlg":
        return self.scale(-1)

    def scale(self, c) -> "GAlg":
        c = Fraction(c)
        return GAlg({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "GAlg") -> "GAlg":
        out: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa * wb
                s = out.get(w, _ZERO) + ca * cb
                if s:
                    out[w] = s
                else:
                    del out[w]
        return GAlg(out)

    def antipode(self) -> "GAlg":
        return GAlg({w.inverse(): c for w, c in self.terms.items()})

    def augment(self) -> Fraction:
        """Sum of coefficients (the counit of the group algebra)."""
        return sum(self.terms.values(), _ZERO)


def fox_partial_z(x: GAlg) -> GAlg:
    """Left Fox derivative d/dz, extended linearly.

    On a word s_1..s_k it is sum_i s_1..s_{i-1} d(s_i) with
    d(z^e) = 1 + z + .. + z^{e-1} for e > 0 and -(z^-1 + .. + z^e) for e < 0.
    """
    out = GAlg()
    for w, c in x.terms.items():
        prefix = GWord()
        for sym, exp in w.syllables:
            if sym == Z_SYM:
                if exp > 0:
                    for t in range(exp):
                        out = out + GAlg.of(prefix * GWord.z(t) if t else prefix, c)
                else:
                    for t in range(1, -exp + 1):
                        out = out + GAlg.of(prefix * GWord.z(-t), -c)
            prefix = prefix * GWord(((sym, exp),))
    return out


def proj_p(x: GAlg) -> GAlg:
    """The homomorphism killing z, applied linearly."""
    out: dict = {}
    for w, c in x.terms.items():
        pw = GWord(tuple((s, e) for s, e in w.syllables if s != Z_SYM))
        s = out.get(pw, _ZERO) + c
        if s:
            out[pw] = s
        else:
            del out[pw]
    return GAlg(out)


# -- word grammar ------------------------------------------------------


def format_word(w) -> str:
    """Inverse of parse_word, in the same grammar."""
    if isinstance(w, FGWord):
        parts = []
        if w.winding:
            parts.append("F" if w.winding == 1 else f"F^{w.winding}")
        base = format_word(w.base)
        if base != "1":
            parts.append(base)
        return "*".join(parts) if parts else "1"
    if not w.syllables:
        return "1"
    parts = []
    for sym, exp in w.syllables:
        head = "z" if sym == Z_SYM else f"x{sym}"
        parts.append(head if exp == 1 else f"{head}^{exp}")
    return "*".join(parts)


def _scan_int(text: str, pos: int, expected: tuple[str, ...]) -> tuple[int, int]:
    start = pos
    if pos < len(text) and text[pos] in "+-":
        pos += 1
    digits = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == digits:
        raise ParseError("expected integer", start, expected)
    return int(text[start:pos]), pos


def parse_word(text: str):
    """Parse the word grammar; returns GWord, or FGWord if any F appears.

    Raises ParseError (with byte offset and expected-token set) on bad input;
    generator indices are 1-based, so "x0" is rejected.
    """
    s = text.strip()
    if s == "1":
        return GWord()
    pos = 0
    syllables: list = []
    windings = 0
    saw_f = False
    while True:
        if pos >= len(s):
            raise ParseError("unexpected end of input", pos, ("x<int>", "F"))
        ch = s[pos]
        if ch == "x":
            pos += 1
            idx, pos = _scan_int(s, pos, ("generator index",))
            if idx < 1:
                raise ParseError("generators are 1-based", pos - len(str(idx)), ("index >= 1",))
            exp = 1
            if pos < len(s) and s[pos] == "^":
                pos += 1
                exp, pos = _scan_int(s, pos, ("exponent",))
            syllables.append((idx, exp))
        elif ch == "F":
            saw_f = True
            pos += 1
            exp = 1
            if pos < len(s) and s[pos] == "^":
                pos += 1
                exp, pos = _scan_int(s, pos, ("exponent",))
            windings += exp
        else:
            raise ParseError(f"unexpected character {ch!r}", pos, ("x<int>", "F"))
        if pos >= len(s):
            break
        if s[pos] != "*":
            raise ParseError(f"unexpected character {s[pos]!r}", pos, ("*", "end of input"))
        pos += 1
    base = GWord(syllables)
    if saw_f:
        return FGWord(base, windings)
    return base
