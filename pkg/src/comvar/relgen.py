"""Generator images and relations of the presentation.

The presentation algebra has symmetric-polynomial coefficients (on e-
generators), odd generators X_l, Y_l of degree 2l-1 and even generators Z_l
(degree 2l, no biweight) or W_l (degree 2l, biweight (1,1)).  The target of
the evaluation maps is B = Z[t_1..t_n] (x) exterior(u_1..u_n, v_1..v_n).

Everything here is built from the truncated-series matrix
M(s) = adj(V)^T diag(s/(1+t_i s)) adj(V): its minors, their exact division by
powers of the squared Vandermonde determinant, the relation elements, and the
identity checks used by the verification battery.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .superpoly import (AlgebraElement, AlgebraHom, AlgebraSpec, Generator,
                        exact_divide)
from .symvan import (adjugate_vandermonde, complete_subset, elementary,
                     is_symmetric, newton_polynomial, poly_det, t_algebra,
                     to_elementary_basis, vandermonde_det)

__all__ = [
    "TruncatedSeries", "RelationRecord", "b_algebra", "presentation_algebra",
    "matrix_M", "divided_minor", "coeff_c", "relation_R", "relation_Rprime",
    "matrix_A", "generator_images", "rho_x_image", "rho_y_image",
    "rho_z_image", "w_image", "z_power_sum_image", "newton_identity_element",
    "recurrence_check", "adjugate_identity_gap", "embed_coefficient",
]


class TruncatedSeries:
    """Polynomial in a formal variable s, truncated at a fixed order.

    Coefficients are AlgebraElements of one algebra; arithmetic truncates
    uniformly.
    """

    __slots__ = ("alg", "order", "coeffs")

    def __init__(self, alg: AlgebraSpec, order: int, coeffs=None):
        self.alg = alg
        self.order = order
        if coeffs is None:
            coeffs = [alg.zero() for _ in range(order + 1)]
        else:
            coeffs = list(coeffs)
            assert len(coeffs) == order + 1
        self.coeffs = coeffs

    @staticmethod
    def one(alg, order):
        s = TruncatedSeries(alg, order)
        s.coeffs[0] = alg.one()
        return s

    def __add__(self, other):
        assert self.order == other.order
        return TruncatedSeries(self.alg, self.order,
                               [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        assert self.order == other.order
        return TruncatedSeries(self.alg, self.order,
                               [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncatedSeries(self.alg, self.order, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return TruncatedSeries(self.alg, self.order,
                                   [a * other for a in self.coeffs])
        assert self.order == other.order
        out = TruncatedSeries(self.alg, self.order)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out.coeffs[i + j] = out.coeffs[i + j] + a * b
        return out

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def is_zero(self):
        return all(not c for c in self.coeffs)

    def inverse(self):
        """Inverse for unit constant term (+-1 stays integral)."""
        c0 = self.coeffs[0]
        if c0 == 1:
            inv0 = self.alg.one()
        elif c0 == -1:
            inv0 = self.alg.one(-1)
        else:
            raise ValueError("inversion requires unit constant term")
        out = TruncatedSeries(self.alg, self.order)
        out.coeffs[0] = inv0
        for m in range(1, self.order + 1):
            acc = self.alg.zero()
            for i in range(1, m + 1):
                if self.coeffs[i]:
                    acc = acc + self.coeffs[i] * out.coeffs[m - i]
            out.coeffs[m] = -(inv0 * acc)
        return out

    def __str__(self):
        parts = [f"({c})*s^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


@dataclass
class RelationRecord:
    name: str
    element: AlgebraElement
    coh_degree: int
    biweight: tuple[int, int] | None


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

_B_CACHE: dict[int, AlgebraSpec] = {}
_P_CACHE: dict[tuple, AlgebraSpec] = {}


def b_algebra(n: int) -> AlgebraSpec:
    """Z[t_1..t_n] (x) exterior(u_1..u_n, v_1..v_n), canonical order t<u<v."""
    alg = _B_CACHE.get(n)
    if alg is None:
        gens = [Generator(f"t{i}", 2, (0, 0)) for i in range(1, n + 1)]
        gens += [Generator(f"u{i}", 1, (1, 0)) for i in range(1, n + 1)]
        gens += [Generator(f"v{i}", 1, (0, 1)) for i in range(1, n + 1)]
        alg = AlgebraSpec(gens)
        _B_CACHE[n] = alg
    return alg


def presentation_algebra(n: int, flavor: str = "Z",
                         full_w: bool = False) -> AlgebraSpec:
    """Presentation algebra on e, X, Y and Z or W generators.

    flavor "Z": e_1..e_n, X_1..X_n, Y_1..Y_n, Z_1..Z_n.
    flavor "W": same but with W_1..W_{n-1} (the n-th even generator is
    redundant once n! is invertible); ``full_w`` keeps W_n, which the
    relation records R'_n need.
    """
    key = (n, flavor, full_w)
    alg = _P_CACHE.get(key)
    if alg is not None:
        return alg
    gens = [Generator(f"e{k}", 2 * k, (0, 0)) for k in range(1, n + 1)]
    gens += [Generator(f"X{k}", 2 * k - 1, (1, 0)) for k in range(1, n + 1)]
    gens += [Generator(f"Y{k}", 2 * k - 1, (0, 1)) for k in range(1, n + 1)]
    if flavor == "Z":
        gens += [Generator(f"Z{k}", 2 * k, None) for k in range(1, n + 1)]
    elif flavor == "W":
        top = n if full_w else n - 1
        gens += [Generator(f"W{k}", 2 * k, (1, 1)) for k in range(1, top + 1)]
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    alg = AlgebraSpec(gens)
    _P_CACHE[key] = alg
    return alg


def embed_coefficient(p_e: AlgebraElement, target: AlgebraSpec,
                      n: int) -> AlgebraElement:
    """Re-key a polynomial in e_1..e_n into a presentation algebra whose
    first n even slots are the e-generators."""
    pad = len(target.even_slots) - n
    out = {}
    for (ev, odd), c in p_e.terms.items():
        assert not odd
        out[(ev + (0,) * pad, 0)] = c
    return AlgebraElement(target, out)


# ---------------------------------------------------------------------------
# The series matrix M(s) and its divided minors
# ---------------------------------------------------------------------------

_M_CACHE: dict[tuple[int, int], list] = {}
_MINOR_CACHE: dict[tuple, TruncatedSeries] = {}


def matrix_M(n: int, N: int | None = None):
    """M(s) = adj(V)^T diag(s/(1+t_i s)) adj(V) as truncated series.

    Entries are expanded through order N (default n) via the geometric series
    1/(1+t_i s) = sum (-t_i)^k s^k, and each coefficient is checked symmetric
    under permutation of the t variables.
    """
    if N is None:
        N = n
    if N < n:
        raise ValueError("order must reach s^n")
    cached = _M_CACHE.get((n, N))
    if cached is not None:
        return cached
    alg = t_algebra(n)
    adj = adjugate_vandermonde(n)
    ts = [alg.gen(f"t{i}") for i in range(1, n + 1)]
    diag = []
    for k in range(n):
        d = TruncatedSeries(alg, N)
        pw = alg.one()
        for q in range(1, N + 1):
            d.coeffs[q] = pw
            pw = pw * ts[k].scale(-1)
        diag.append(d)
    M = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = TruncatedSeries(alg, N)
            for k in range(n):
                c = adj[k][i] * adj[k][j]
                if c:
                    acc = acc + diag[k] * c
            row.append(acc)
        M.append(row)
    for row in M:
        for entry in row:
            for coeff in entry.coeffs:
                if coeff and not is_symmetric(coeff, n):
                    raise AssertionError("M(s) entry not symmetric")
    _M_CACHE[(n, N)] = M
    return M


def _series_minor(M, rows: tuple[int, ...], cols: tuple[int, ...],
                  alg, order) -> TruncatedSeries:
    if not rows:
        return TruncatedSeries.one(alg, order)
    memo: dict = {}

    def rec(r_idx: int, avail: tuple[int, ...]) -> TruncatedSeries:
        if not avail:
            return TruncatedSeries.one(alg, order)
        key = (r_idx, avail)
        got = memo.get(key)
        if got is not None:
            return got
        acc = TruncatedSeries(alg, order)
        row = rows[r_idx]
        for pos, c in enumerate(avail):
            entry = M[row][c]
            if entry.is_zero():
                continue
            sub = rec(r_idx + 1, avail[:pos] + avail[pos + 1:])
            term = entry * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        memo[key] = acc
        return acc

    return rec(0, cols)


def divided_minor(n: int, I, J, N: int | None = None) -> TruncatedSeries:
    """det(M(s)_{I,J}) / Delta^{2k-2} for |I| = |J| = k, all coefficients.

    Division is performed binomial factor by binomial factor, so a failure
    surfaces as NotDivisible with the precise remainder.
    """
    if N is None:
        N = n
    I = tuple(sorted(I))
    J = tuple(sorted(J))
    key = (n, N, I, J)
    cached = _MINOR_CACHE.get(key)
    if cached is not None:
        return cached
    k = len(I)
    assert len(J) == k and 1 <= k <= n
    alg = t_algebra(n)
    M = matrix_M(n, N)
    det = _series_minor(M, tuple(i - 1 for i in I), tuple(j - 1 for j in J),
                        alg, N)
    power = 2 * k - 2
    if power:
        coeffs = []
        for c in det.coeffs:
            for a in range(1, n + 1):
                for b in range(a + 1, n + 1):
                    fac = alg.gen(f"t{b}") - alg.gen(f"t{a}")
                    for _ in range(power):
                        c = exact_divide(c, fac)
            coeffs.append(c)
        det = TruncatedSeries(alg, N, coeffs)
    _MINOR_CACHE[key] = det
    return det


def coeff_c(l: int, I, J, n: int, N: int | None = None) -> AlgebraElement:
    """The symmetric polynomial c^l_{I,J} on the e-basis."""
    k = len(I)
    if not (1 <= k <= l <= n):
        raise ValueError("need |I| = |J| = k with 1 <= k <= l <= n")
    series = divided_minor(n, I, J, N)
    return to_elementary_basis(series.coeffs[l], n)


# ---------------------------------------------------------------------------
# Generator images
# ---------------------------------------------------------------------------

def rho_x_image(n: int, l: int) -> AlgebraElement:
    """sum_i t_i^{l-1} u_i, valid for every l >= 1."""
    B = b_algebra(n)
    acc = B.zero()
    for i in range(1, n + 1):
        acc = acc + B.gen(f"t{i}") ** (l - 1) * B.gen(f"u{i}")
    return acc


def rho_y_image(n: int, l: int) -> AlgebraElement:
    B = b_algebra(n)
    acc = B.zero()
    for i in range(1, n + 1):
        acc = acc + B.gen(f"t{i}") ** (l - 1) * B.gen(f"v{i}")
    return acc


def rho_z_image(n: int, l: int) -> AlgebraElement:
    """Coefficient of s^l in prod_i (1 + s u_i v_i / (1 + t_i s)):
    sum over subset sizes k of (-1)^{l-k} h_{l-k}(t_I) prod_{j in I} u_j v_j."""
    B = b_algebra(n)
    if l == 0:
        return B.one()
    acc = B.zero()
    for k in range(0, min(l, n) + 1):
        sign = 1 if (l - k) % 2 == 0 else -1
        for I in combinations(range(1, n + 1), k):
            h = complete_subset(l - k, I, n)
            if not h:
                continue
            term = _embed_t(h, B, n)
            for j in I:
                term = term * (B.gen(f"u{j}") * B.gen(f"v{j}"))
            acc = acc + term.scale(sign)
    return acc


def w_image(n: int, l: int) -> AlgebraElement:
    """sum_i t_i^{l-1} u_i v_i."""
    B = b_algebra(n)
    acc = B.zero()
    for i in range(1, n + 1):
        acc = acc + B.gen(f"t{i}") ** (l - 1) * B.gen(f"u{i}") * B.gen(f"v{i}")
    return acc


def _embed_t(p: AlgebraElement, B: AlgebraSpec, n: int) -> AlgebraElement:
    """Re-key a polynomial in t_1..t_n into B (whose even slots are the t's)."""
    out = {}
    for (ev, odd), c in p.terms.items():
        assert not odd
        out[(ev, 0)] = c
    return AlgebraElement(B, out)


def embed_t_poly(p: AlgebraElement, n: int) -> AlgebraElement:
    return _embed_t(p, b_algebra(n), n)


def generator_images(n: int):
    """The evaluation maps (rho, rho') into B.

    rho is defined on the Z-flavored presentation algebra, rho' on the full
    W-flavored one (W_l -> sum t_i^{l-1} u_i v_i).
    """
    B = b_algebra(n)
    A = presentation_algebra(n, "Z")
    images = {}
    for k in range(1, n + 1):
        images[f"e{k}"] = _embed_t(elementary(k, n), B, n)
        images[f"X{k}"] = rho_x_image(n, k)
        images[f"Y{k}"] = rho_y_image(n, k)
        images[f"Z{k}"] = rho_z_image(n, k)
    rho = AlgebraHom(A, B, images)
    Aw = presentation_algebra(n, "W", full_w=True)
    images_w = {k: v for k, v in images.items() if not k.startswith("Z")}
    for k in range(1, n + 1):
        images_w[f"W{k}"] = w_image(n, k)
    rho_prime = AlgebraHom(Aw, B, images_w)
    return rho, rho_prime


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------

def _odd_product(alg: AlgebraSpec, names) -> AlgebraElement:
    out = alg.one()
    for nm in names:
        out = out * alg.gen(nm)
    return out


def delta_squared_e(n: int) -> AlgebraElement:
    """Delta^2 written on the e-generators."""
    return to_elementary_basis(vandermonde_det(n) ** 2, n)


def relation_R(l: int, n: int, order: int | None = None) -> RelationRecord:
    """R_l = Delta^2 Z_l - sum_k (-1)^{k(k-1)/2} sum_{I,J} c^l_{I,J} X_I Y_J,
    homogeneous of degree 2(n(n-1)+l).

    ``order`` raises the series truncation above its default n, for
    diagnostics; the result is independent of it.
    """
    if not 1 <= l <= n:
        raise ValueError("1 <= l <= n required")
    A = presentation_algebra(n, "Z")
    d2 = embed_coefficient(delta_squared_e(n), A, n)
    rel = d2 * A.gen(f"Z{l}")
    for k in range(1, l + 1):
        sign = -1 if (k * (k - 1) // 2) % 2 else 1
        for I in combinations(range(1, n + 1), k):
            for J in combinations(range(1, n + 1), k):
                c = coeff_c(l, I, J, n, order)
                if not c:
                    continue
                mono = _odd_product(A, [f"X{i}" for i in I]) * \
                    _odd_product(A, [f"Y{j}" for j in J])
                rel = rel - embed_coefficient(c, A, n) * mono.scale(sign)
    deg = 2 * (n * (n - 1) + l)
    if rel and not rel.is_homogeneous(deg):
        raise AssertionError(f"R_{l} not homogeneous of degree {deg}")
    return RelationRecord(f"R{l}", rel, deg, None)


_A_MATRIX_CACHE: dict[tuple[int, int], list] = {}


def matrix_A(l: int, n: int):
    """A_l = adj(V)^T diag(t)^{l-1} adj(V), entries on the e-basis."""
    cached = _A_MATRIX_CACHE.get((l, n))
    if cached is not None:
        return cached
    alg = t_algebra(n)
    adj = adjugate_vandermonde(n)
    ts = [alg.gen(f"t{i}") for i in range(1, n + 1)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = alg.zero()
            for k in range(n):
                c = adj[k][i] * adj[k][j]
                if c:
                    acc = acc + c * ts[k] ** (l - 1)
            row.append(to_elementary_basis(acc, n))
        out.append(row)
    _A_MATRIX_CACHE[(l, n)] = out
    return out


def relation_Rprime(l: int, n: int) -> RelationRecord:
    """R'_l = Delta^2 W_l - X^T A_l Y, of biweight (1,1)."""
    if not 1 <= l <= n:
        raise ValueError("1 <= l <= n required")
    A = presentation_algebra(n, "W", full_w=True)
    d2 = embed_coefficient(delta_squared_e(n), A, n)
    rel = d2 * A.gen(f"W{l}")
    al = matrix_A(l, n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            c = al[i - 1][j - 1]
            if not c:
                continue
            rel = rel - embed_coefficient(c, A, n) * \
                (A.gen(f"X{i}") * A.gen(f"Y{j}"))
    deg = 2 * (n * (n - 1) + l)
    if rel and not rel.is_homogeneous(deg):
        raise AssertionError(f"R'_{l} not homogeneous of degree {deg}")
    for w, piece in rel.biweight_terms().items():
        if piece and w != (1, 1):
            raise AssertionError("R'_l not of biweight (1,1)")
    return RelationRecord(f"R'{l}", rel, deg, (1, 1))


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------

def z_power_sum_image(n: int, k: int) -> AlgebraElement:
    """s_k evaluated on the Z-images inside B (power sums of the Z family)."""
    B = b_algebra(n)
    z = [None] + [rho_z_image(n, m) for m in range(1, k + 1)]
    s: list[AlgebraElement] = [B.one()]
    for m in range(1, k + 1):
        acc = z[m].scale(m if (m - 1) % 2 == 0 else -m)
        for i in range(1, m):
            term = z[i] * s[m - i]
            acc = acc + (term if (i - 1) % 2 == 0 else -term)
        s.append(acc)
    return s[k]


def newton_identity_element(n: int) -> AlgebraElement:
    """sum_{i=0}^{n-1} (-1)^{i+1} e_i (s_{n-i}(Z_1..Z_{n-i})
    - sum_{j=0}^{n-i-1} X_{n-i-j} Y_{j+1}), an element of the kernel of rho."""
    A = presentation_algebra(n, "Z")
    acc = A.zero()
    for i in range(0, n):
        m = n - i
        inner = newton_polynomial(m, A, [f"Z{r}" for r in range(1, m + 1)])
        for j in range(0, m):
            inner = inner - A.gen(f"X{m - j}") * A.gen(f"Y{j + 1}")
        e_i = A.one() if i == 0 else A.gen(f"e{i}")
        term = e_i * inner
        acc = acc + (term.scale(-1) if i % 2 == 0 else term)
    return acc


def recurrence_check(n: int, l: int):
    """The two recurrences with top index l > n, evaluated in B.

    Returns (sum_{k=0}^n (-1)^k e_k rho(X_{l-k}),
             sum_{k=0}^n e_k rho(Z_{l-k})); both are expected to vanish.
    """
    if l <= n:
        raise ValueError("l > n required")
    B = b_algebra(n)
    acc_x = B.zero()
    acc_z = B.zero()
    for k in range(0, n + 1):
        e = _embed_t(elementary(k, n), B, n)
        x_term = e * rho_x_image(n, l - k)
        acc_x = acc_x + (x_term if k % 2 == 0 else -x_term)
        acc_z = acc_z + e * rho_z_image(n, l - k)
    return acc_x, acc_z


def adjugate_identity_gap(n: int, K) -> AlgebraElement:
    """LHS - RHS of the adjugate expansion of Delta^{2k} prod_{j in K} u_j v_j
    over signed products of X- and Y-images; zero iff the identity holds."""
    B = b_algebra(n)
    K = tuple(sorted(K))
    k = len(K)
    lhs = _embed_t(vandermonde_det(n) ** (2 * k), B, n)
    for j in K:
        lhs = lhs * (B.gen(f"u{j}") * B.gen(f"v{j}"))
    adj = adjugate_vandermonde(n)
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    rhs = B.zero()
    for I in combinations(range(1, n + 1), k):
        detI = poly_det([[adj[a - 1][b - 1] for b in I] for a in K]) if k \
            else t_algebra(n).one()
        if not detI:
            continue
        xI = B.one()
        for i in I:
            xI = xI * rho_x_image(n, i)
        for J in combinations(range(1, n + 1), k):
            detJ = poly_det([[adj[a - 1][b - 1] for b in J] for a in K]) if k \
                else t_algebra(n).one()
            if not detJ:
                continue
            yJ = B.one()
            for j in J:
                yJ = yJ * rho_y_image(n, j)
            rhs = rhs + (_embed_t(detI * detJ, B, n) * xI * yJ).scale(sign)
    return lhs - rhs
