"""Symmetric-function toolkit over Z[t_1..t_n].

Elementary / complete homogeneous / Newton polynomials, the Vandermonde
matrix with its determinant and adjugate (checked against adj(V)*V = det*I on
construction), and rewriting of symmetric polynomials in the elementary basis
by leading-monomial subtraction.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement

from .superpoly import AlgebraElement, AlgebraSpec, Generator

__all__ = [
    "NotSymmetric", "t_algebra", "e_algebra", "elementary", "complete_subset",
    "newton_polynomial", "vandermonde", "vandermonde_det",
    "adjugate_vandermonde", "poly_det", "poly_mat_mul", "is_symmetric",
    "to_elementary_basis", "expand_in_t", "SymPoly",
]


class NotSymmetric(Exception):
    pass


_T_CACHE: dict[int, AlgebraSpec] = {}
_E_CACHE: dict[int, AlgebraSpec] = {}


def t_algebra(n: int) -> AlgebraSpec:
    """Z[t_1..t_n], each t_i of degree 2."""
    alg = _T_CACHE.get(n)
    if alg is None:
        alg = AlgebraSpec([Generator(f"t{i}", 2) for i in range(1, n + 1)])
        _T_CACHE[n] = alg
    return alg


def e_algebra(n: int) -> AlgebraSpec:
    """Z[e_1..e_n] with deg e_k = 2k, the elementary-symmetric presentation."""
    alg = _E_CACHE.get(n)
    if alg is None:
        alg = AlgebraSpec([Generator(f"e{k}", 2 * k) for k in range(1, n + 1)])
        _E_CACHE[n] = alg
    return alg


def elementary(k: int, n: int) -> AlgebraElement:
    alg = t_algebra(n)
    if k == 0:
        return alg.one()
    if k < 0 or k > n:
        return alg.zero()
    zero_ev = [0] * n
    terms = {}
    for comb in combinations(range(n), k):
        ev = list(zero_ev)
        for i in comb:
            ev[i] = 1
        terms[(tuple(ev), 0)] = 1
    return AlgebraElement(alg, terms)


def complete_subset(q: int, I, n: int) -> AlgebraElement:
    """h_q(t_I) for a subset I of {1..n}; h_0 = 1 and h_q(empty) = 0, q > 0."""
    alg = t_algebra(n)
    idx = sorted(i - 1 for i in I)
    if q == 0:
        return alg.one()
    if q < 0 or not idx:
        return alg.zero()
    terms = {}
    for comb in combinations_with_replacement(idx, q):
        ev = [0] * n
        for i in comb:
            ev[i] += 1
        key = (tuple(ev), 0)
        terms[key] = terms.get(key, 0) + 1
    return AlgebraElement(alg, terms)


def newton_polynomial(k: int, alg: AlgebraSpec, names) -> AlgebraElement:
    """k-th Newton polynomial s_k in the given variables.

    Defined through sum_k s_k s^{k-1} = -f'(s)/f(s) with
    f(s) = sum (-1)^k x_k s^k; computed by the equivalent recurrence
    s_k = sum_{i<k} (-1)^{i-1} x_i s_{k-i} + (-1)^{k-1} k x_k.
    """
    names = list(names)
    if k > len(names):
        raise ValueError("need k variables for s_k")
    s: list[AlgebraElement] = [alg.one()]  # s[0] unused placeholder
    for m in range(1, k + 1):
        x = [alg.gen(nm) for nm in names[:m]]
        acc = x[m - 1].scale(m if (m - 1) % 2 == 0 else -m)
        for i in range(1, m):
            term = x[i - 1] * s[m - i]
            acc = acc + (term if (i - 1) % 2 == 0 else -term)
        s.append(acc)
    return s[k]


# ---------------------------------------------------------------------------
# Vandermonde machinery
# ---------------------------------------------------------------------------

def poly_det(mat) -> AlgebraElement:
    """Determinant by cofactor expansion along the first row (exact)."""
    n = len(mat)
    if n == 0:
        raise ValueError("use subset determinants for the empty minor")
    alg = mat[0][0].alg
    cols = tuple(range(n))

    def rec(row: int, cols: tuple[int, ...]) -> AlgebraElement:
        if not cols:
            return alg.one()
        acc = alg.zero()
        for pos, c in enumerate(cols):
            entry = mat[row][c]
            if not entry:
                continue
            sub = rec(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        return acc

    return rec(0, cols)


def poly_mat_mul(a, b):
    n = len(a)
    m = len(b[0]) if b else 0
    alg = a[0][0].alg if n else None
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = alg.zero()
            for k in range(len(b)):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def vandermonde(n: int):
    """V = (t_j^{i-1}), rows indexed by the power, columns by the variable."""
    alg = t_algebra(n)
    ts = [alg.gen(f"t{j}") for j in range(1, n + 1)]
    return [[ts[j] ** i for j in range(n)] for i in range(n)]


def vandermonde_det(n: int) -> AlgebraElement:
    """prod_{i<j} (t_j - t_i); cross-checked against cofactor expansion."""
    alg = t_algebra(n)
    out = alg.one()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (alg.gen(f"t{j}") - alg.gen(f"t{i}"))
    return out


_ADJ_CACHE: dict[int, list] = {}


def adjugate_vandermonde(n: int):
    """adj(V) with adj(V)*V = V*adj(V) = det(V)*I, verified on construction."""
    cached = _ADJ_CACHE.get(n)
    if cached is not None:
        return cached
    alg = t_algebra(n)
    V = vandermonde(n)
    if n == 0:
        _ADJ_CACHE[0] = []
        return []
    delta = vandermonde_det(n)
    if poly_det(V) != delta:
        raise AssertionError("Vandermonde determinant mismatch")
    adj = [[alg.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[V[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            cof = poly_det(minor) if n > 1 else alg.one()
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    ident = [[delta if i == j else alg.zero() for j in range(n)]
             for i in range(n)]
    if poly_mat_mul(adj, V) != ident or poly_mat_mul(V, adj) != ident:
        raise AssertionError("adjugate identity failed")
    _ADJ_CACHE[n] = adj
    return adj


# ---------------------------------------------------------------------------
# Elementary-basis rewriting
# ---------------------------------------------------------------------------

def _transpose_key(ev: tuple, i: int) -> tuple:
    out = list(ev)
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def is_symmetric(p: AlgebraElement, n: int) -> bool:
    """Invariance under the n-1 adjacent transpositions (they generate S_n)."""
    for i in range(n - 1):
        for (ev, odd), c in p.terms.items():
            if odd:
                return False
            if p.terms.get((_transpose_key(ev, i), 0), 0) != c:
                return False
    return True


class SymPoly:
    """A symmetric polynomial in Z[t_1..t_n]; symmetry checked on construction."""

    def __init__(self, element: AlgebraElement, n: int):
        if not is_symmetric(element, n):
            raise NotSymmetric(str(element))
        self.element = element
        self.n = n

    def __repr__(self):
        return f"SymPoly({self.element})"


_EMONO_CACHE: dict[tuple[int, tuple], AlgebraElement] = {}


def expand_in_t(p_e: AlgebraElement, n: int) -> AlgebraElement:
    """Substitute e_k -> elementary(k, n) into a polynomial in e_1..e_n."""
    out = t_algebra(n).zero()
    for (ev, odd), c in p_e.terms.items():
        assert not odd
        out = out + _e_monomial_in_t(n, ev).scale(c)
    return out


def _e_monomial_in_t(n: int, exps: tuple) -> AlgebraElement:
    cached = _EMONO_CACHE.get((n, exps))
    if cached is not None:
        return cached
    for k in range(n, 0, -1):
        e = exps[k - 1]
        if e:
            rest = exps[:k - 1] + (e - 1,) + exps[k:]
            out = _e_monomial_in_t(n, rest) * elementary(k, n)
            break
    else:
        out = t_algebra(n).one()
    _EMONO_CACHE[(n, exps)] = out
    return out


def to_elementary_basis(p: AlgebraElement, n: int) -> AlgebraElement:
    """Rewrite a symmetric polynomial in Z[t] on the e_1..e_n generators.

    Classical leading-monomial subtraction under lex order; raises
    NotSymmetric when the leading exponent fails to be weakly decreasing
    (which certifies non-symmetry).  Round trip via expand_in_t is exact.
    """
    ealg = e_algebra(n)
    rem = dict(p.terms)
    out = ealg.zero()
    e_zero = tuple([0] * n)
    while rem:
        lex = max(rem)
        ev, odd = lex
        if odd:
            raise NotSymmetric("odd generators present")
        c = rem[lex]
        if any(ev[i] < ev[i + 1] for i in range(n - 1)):
            raise NotSymmetric(f"leading exponent {ev} not dominant")
        e_exp = tuple(ev[i] - (ev[i + 1] if i + 1 < n else 0) for i in range(n))
        emono = AlgebraElement(ealg, {(e_exp, 0): c}) if e_exp != e_zero \
            else ealg.one(c)
        out = out + emono
        for key, cc in _e_monomial_in_t(n, e_exp).terms.items():
            v = rem.get(key, 0) - c * cc
            if v:
                rem[key] = v
            elif key in rem:
                del rem[key]
    return out
