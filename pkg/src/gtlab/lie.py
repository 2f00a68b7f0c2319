"""Free Lie algebra machinery over the Lyndon-word basis, and graded solving.

Lyndon words over the alphabet {1..p} index a basis of the free Lie
algebra: the basis element of a Lyndon word w is the standard bracketing
P_w = [P_u, P_v] along the factorization w = uv with v the lexicographically
least proper suffix.  Expanded into the tensor algebra, P_w = w + (words
lexicographically greater than w with the same letter multiset), which makes
coordinate extraction a greedy triangular pass.

The solver handles graded equations of the form

    sum_i [v_i, t_i] = rhs        (t_i fixed degree-1 letters)

degree by degree: the unknowns and the right-hand side split into
independent blocks by multidegree (letter counts), and each block is solved
by exact reduced row echelon with the documented variable order (slot index
ascending, Lyndon word lexicographic); free variables default to zero, or
are filled from a caller-supplied source for seeded variants.  Blockwise
elimination returns the same solution as one global RREF in that variable
order, since distinct multidegrees never share a nonzero row.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import SolverInconsistent
from .tensor import TSeries

__all__ = [
    "lyndon_words",
    "is_lyndon",
    "standard_factorization",
    "lyndon_expand",
    "lie_coords",
    "lie_to_terms",
    "lie_to_tseries",
    "solve_bracket_system",
]

_ZERO = Fraction(0)


def lyndon_words(p: int, n: int) -> list:
    """All Lyndon words of length n over {1..p}, lexicographically sorted (Duval)."""
    if n <= 0:
        return []
    out = []
    w = [1]
    while w:
        if len(w) == n:
            out.append(tuple(w))
        # extend periodically to length n, then increment
        ww = w * (n // len(w)) + w[: n % len(w)]
        w = ww[:]
        while w and w[-1] == p:
            w.pop()
        if w:
            w[-1] += 1
    return sorted(out)


def is_lyndon(w: tuple) -> bool:
    return len(w) > 0 and all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def standard_factorization(w: tuple) -> tuple:
    """w = uv with v the lexicographically least proper suffix (both Lyndon)."""
    if len(w) < 2:
        raise ValueError("single letters have no factorization")
    best = 1
    for i in range(2, len(w)):
        if w[i:] < w[best:]:
            best = i
    return w[:best], w[best:]


@lru_cache(maxsize=None)
def lyndon_expand(w: tuple) -> dict:
    """Tensor-algebra expansion of the standard bracketing of a Lyndon word.

    Integer coefficients; leading (lex-least) word is w itself with
    coefficient 1.
    """
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    pu, pv = lyndon_expand(u), lyndon_expand(v)
    out: dict = {}
    for wu, cu in pu.items():
        for wv, cv in pv.items():
            c = cu * cv
            key = wu + wv
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                del out[key]
            key = wv + wu
            s = out.get(key, 0) - c
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def lie_coords(terms: dict) -> dict:
    """Lyndon coordinates of a homogeneous Lie element given as word terms.

    Greedy triangular elimination against the expansions; raises
    SolverInconsistent if the input is not a Lie element (a non-Lyndon
    leading word or a nonzero remainder exposes this).
    """
    work = {w: Fraction(c) for w, c in terms.items() if c}
    coords: dict = {}
    while work:
        w = min(work)
        if not is_lyndon(w):
            raise SolverInconsistent(f"leading word {w} is not Lyndon; input is not a Lie element")
        c = work.pop(w)
        coords[w] = c
        for wv, cv in lyndon_expand(w).items():
            if wv == w:
                continue
            s = work.get(wv, _ZERO) - c * cv
            if s:
                work[wv] = s
            else:
                work.pop(wv, None)
    return coords


def lie_to_terms(coords: dict) -> dict:
    """Word terms of a Lie element given in Lyndon coordinates."""
    out: dict = {}
    for w, c in coords.items():
        if not c:
            continue
        for wv, cv in lyndon_expand(w).items():
            s = out.get(wv, _ZERO) + c * cv
            if s:
                out[wv] = s
            else:
                del out[wv]
    return out


def lie_to_tseries(coords: dict, p: int, trunc_deg: int) -> TSeries:
    return TSeries(p, trunc_deg, lie_to_terms(coords))


def _multidegree(w: tuple, p: int) -> tuple:
    md = [0] * p
    for x in w:
        md[x - 1] += 1
    return tuple(md)


@lru_cache(maxsize=None)
def _lyndon_by_multidegree(p: int, n: int) -> dict:
    out: dict = {}
    for w in lyndon_words(p, n):
        out.setdefault(_multidegree(w, p), []).append(w)
    return out


def _bracket_with_letter(coords_word: tuple, letter: int) -> dict:
    """Word terms of [P_w, z_letter]."""
    out: dict = {}
    for wv, cv in lyndon_expand(coords_word).items():
        key = wv + (letter,)
        out[key] = out.get(key, 0) + cv
        key = (letter,) + wv
        out[key] = out.get(key, 0) - cv
    return {k: v for k, v in out.items() if v}


def _rref_solve(columns: list, rows: list, rhs: dict, free_value) -> list:
    """Solve the block A x = rhs by reduced row echelon.

    columns: list of (column_id, dict row_index -> coeff); pivot preference
    follows list order.  rows: ordered row keys.  free_value(column_id)
    supplies values for non-pivot variables.  Returns [(column_id, value)]
    for every column.  Raises SolverInconsistent when no solution exists.
    """
    row_index = {r: k for k, r in enumerate(rows)}
    nrows = len(rows)
    ncols = len(columns)
    # dense augmented matrix; blocks are small after multidegree splitting
    mat = [[_ZERO] * (ncols + 1) for _ in range(nrows)]
    for j, (_, col) in enumerate(columns):
        for r, c in col.items():
            mat[row_index[r]][j] = Fraction(c)
    for r, c in rhs.items():
        mat[row_index[r]][ncols] = Fraction(c)

    pivot_of_col: dict = {}
    piv_r = 0
    for j in range(ncols):
        sel = None
        for r in range(piv_r, nrows):
            if mat[r][j]:
                sel = r
                break
        if sel is None:
            continue
        mat[piv_r], mat[sel] = mat[sel], mat[piv_r]
        inv = 1 / mat[piv_r][j]
        mat[piv_r] = [v * inv for v in mat[piv_r]]
        for r in range(nrows):
            if r != piv_r and mat[r][j]:
                f = mat[r][j]
                row = mat[r]
                prow = mat[piv_r]
                for k in range(j, ncols + 1):
                    if prow[k]:
                        row[k] -= f * prow[k]
        pivot_of_col[j] = piv_r
        piv_r += 1
        if piv_r == nrows:
            break
    for r in range(piv_r, nrows):
        if mat[r][ncols]:
            raise SolverInconsistent("graded bracket system has no solution")

    values = [None] * ncols
    for j in range(ncols):
        if j not in pivot_of_col:
            values[j] = Fraction(free_value(columns[j][0]))
    for j, r in pivot_of_col.items():
        acc = mat[r][ncols]
        for k in range(j + 1, ncols):
            if mat[r][k] and values[k]:
                acc -= mat[r][k] * values[k]
        values[j] = acc
    return [(columns[j][0], values[j]) for j in range(ncols)]


def solve_bracket_system(
    p: int,
    corr_deg: int,
    letters: list,
    rhs_terms: dict,
    free_value=None,
    signs: list | None = None,
):
    """Solve sum_i signs[i] * [v_i, z_{letters[i]}] = rhs for v_i of degree corr_deg.

    rhs_terms: word terms of a homogeneous degree-(corr_deg+1) Lie element.
    Returns a list of Lyndon-coordinate dicts, one per slot.  With
    free_value None, zero-rhs multidegree blocks are skipped (their solution
    is zero); otherwise every block with variables is solved and free
    variables are filled from free_value(), consumed in (block lex, slot,
    Lyndon lex) order.
    """
    nslots = len(letters)
    if signs is None:
        signs = [1] * nslots
    rhs_coords = lie_coords(rhs_terms)
    by_md: dict = {}
    for w, c in rhs_coords.items():
        by_md.setdefault(_multidegree(w, p), {})[w] = c

    lyndon_src = _lyndon_by_multidegree(p, corr_deg)
    if free_value is not None:
        var_mds = set()
        for slot in range(nslots):
            for md_v in lyndon_src:
                md = list(md_v)
                md[letters[slot] - 1] += 1
                var_mds.add(tuple(md))
        blocks = sorted(set(by_md) | var_mds)
    else:
        blocks = sorted(by_md)

    out = [dict() for _ in range(nslots)]
    for md in blocks:
        rows = _lyndon_by_multidegree(p, corr_deg + 1).get(md, [])
        rhs_block = by_md.get(md, {})
        columns = []
        for slot in range(nslots):
            letter = letters[slot]
            md_v = list(md)
            md_v[letter - 1] -= 1
            if md_v[letter - 1] < 0:
                continue
            for w in lyndon_src.get(tuple(md_v), []):
                col_terms = _bracket_with_letter(w, letter)
                if signs[slot] != 1:
                    col_terms = {k: signs[slot] * v for k, v in col_terms.items()}
                columns.append(((slot, w), lie_coords(col_terms)))
        if not columns:
            if rhs_block:
                raise SolverInconsistent("no variables available for a nonzero block")
            continue
        fv = (lambda _cid: _ZERO) if free_value is None else (lambda _cid: free_value())
        for (slot, w), val in _rref_solve(columns, rows, rhs_block, fv):
            if val:
                out[slot][w] = val
    return out
