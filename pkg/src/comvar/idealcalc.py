"""The ideal of relations, two ways.

Route one (the oracle): the kernel of the evaluation map, degree by degree,
over Z, Q or F_p.  Route two (the weight-bigraded algorithm): for each
biweight (a, b) build the matrix T_{a,b} whose columns expand monomial
multiples of the relations over the weight-(a, b) monomial basis, saturate
its image with respect to the squared Vandermonde determinant degreewise,
and reduce modulo the positive-degree symmetric coefficients.  The two routes
stay independent so they can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd

from .exactlin import (QQ, ZZ, PrimeField, Ring, LatticeSolver,
                       integer_kernel, kernel_over_field)
from .relgen import (b_algebra, delta_squared_e, embed_coefficient,
                     presentation_algebra, relation_R, relation_Rprime,
                     rho_x_image, rho_y_image, rho_z_image, w_image)
from .superpoly import AlgebraElement, AlgebraHom, AlgebraSpec, graded_basis
from .symvan import e_algebra, expand_in_t

__all__ = [
    "PresentationSpec", "SaturationUnstable", "MismatchReport", "WeightBlock",
    "DegreewiseIdeal", "degreewise_ideal", "kernel_oracle", "rho_rank",
    "weight_basis", "monomial_ideal_part", "matrix_T", "saturate_block",
    "reduce_block", "relation_basis", "RelationBasis",
    "weighted_oracle_block", "integral_saturation_check", "echelon_rows",
    "rows_to_primitive",
]


class SaturationUnstable(Exception):
    pass


class MismatchReport(Exception):
    """A verification-style equality failed; carries a findings list."""

    def __init__(self, message: str, findings=None):
        super().__init__(message)
        self.findings = findings or []


def _char_ok_for_w(ring: Ring, n: int) -> bool:
    c = ring.characteristic
    return c == 0 or factorial(n) % c != 0


@dataclass(frozen=True)
class PresentationSpec:
    """Which presentation: size n, Z- or W-basis, coefficient ring."""

    n: int
    flavor: str            # "Z" | "W"
    ring: Ring

    def __post_init__(self):
        if self.flavor not in ("Z", "W"):
            raise ValueError("flavor must be 'Z' or 'W'")
        if self.flavor == "W" and not _char_ok_for_w(self.ring, self.n):
            raise ValueError(
                f"W-basis requires {factorial(self.n)} invertible in {self.ring}")

    @property
    def algebra(self) -> AlgebraSpec:
        return presentation_algebra(self.n, self.flavor)

    @property
    def target(self) -> AlgebraSpec:
        return b_algebra(self.n)


_HOM_CACHE: dict[tuple[int, str], AlgebraHom] = {}


def evaluation_hom(n: int, flavor: str) -> AlgebraHom:
    """The evaluation map of the given presentation into B (cached)."""
    hom = _HOM_CACHE.get((n, flavor))
    if hom is not None:
        return hom
    B = b_algebra(n)
    from .symvan import elementary
    from .relgen import embed_t_poly
    A = presentation_algebra(n, flavor)
    images = {}
    for k in range(1, n + 1):
        images[f"e{k}"] = embed_t_poly(elementary(k, n), n)
        images[f"X{k}"] = rho_x_image(n, k)
        images[f"Y{k}"] = rho_y_image(n, k)
    if flavor == "Z":
        for k in range(1, n + 1):
            images[f"Z{k}"] = rho_z_image(n, k)
    else:
        for k in range(1, n):
            images[f"W{k}"] = w_image(n, k)
    hom = AlgebraHom(A, B, images)
    _HOM_CACHE[(n, flavor)] = hom
    return hom


# ---------------------------------------------------------------------------
# Degreewise kernel oracle
# ---------------------------------------------------------------------------

_BINDEX_CACHE: dict = {}


def _slice_by_charge(alg: AlgebraSpec, d: int):
    out: dict[int, list] = {}
    for key in graded_basis(alg, d):
        out.setdefault(alg.monomial_charge(key), []).append(key)
    return out


def _b_index(n: int, d: int):
    key = (n, d)
    got = _BINDEX_CACHE.get(key)
    if got is None:
        B = b_algebra(n)
        got = {k: i for i, k in enumerate(graded_basis(B, d))}
        _BINDEX_CACHE[key] = got
    return got


def _coords(el: AlgebraElement, index: dict) -> dict[int, int]:
    return {index[k]: c for k, c in el.terms.items()}


def rho_columns(spec: PresentationSpec, d: int, charge: int | None = None):
    """Sparse columns of the evaluation map on the degree-d slice.

    Returns (source monomial keys, columns, number of target rows).  The
    charge grading (u-count minus v-count) refines the computation; the map
    preserves it, so kernels over charges assemble to the full kernel.
    """
    A = spec.algebra
    hom = evaluation_hom(spec.n, spec.flavor)
    keys = graded_basis(A, d)
    if charge is not None:
        keys = [k for k in keys if A.monomial_charge(k) == charge]
    bindex = _b_index(spec.n, d)
    cols = [_coords(hom._monomial_image(k), bindex) for k in keys]
    return keys, cols, len(bindex)


def kernel_oracle(spec: PresentationSpec, d: int) -> list[AlgebraElement]:
    """Basis of the degree-d piece of the kernel of the evaluation map.

    Exactly the degree-d piece of the relation ideal.  Over Z the basis spans
    the saturated kernel lattice (SNF route); over Q/F_p it is a certified
    echelon kernel.  Elements are re-verified against the assembled columns
    as part of the certification.
    """
    A = spec.algebra
    out: list[AlgebraElement] = []
    for charge in sorted(_slice_by_charge(A, d)):
        keys, cols, nrows = rho_columns(spec, d, charge)
        if not keys:
            continue
        if spec.ring is ZZ:
            rows = [[0] * len(keys) for _ in range(nrows)]
            for j, col in enumerate(cols):
                for i, c in col.items():
                    rows[i][j] = c
            vecs = integer_kernel(rows)
        else:
            if isinstance(spec.ring, PrimeField):
                p = spec.ring.p
                cols = [{i: c % p for i, c in col.items() if c % p}
                        for col in cols]
            vecs = kernel_over_field(cols, nrows, spec.ring).basis
        for v in vecs:
            el = A.zero()
            for j, c in enumerate(v):
                if c:
                    el = el + AlgebraElement(A, {keys[j]: c})
            out.append(_normalize_element(el))
    return out


def _normalize_element(el: AlgebraElement) -> AlgebraElement:
    """Scale to a primitive integer element whose leading coefficient is
    positive; the leading term is the first in canonical term order."""
    if not el:
        return el
    terms = el.sorted_terms()
    coeffs = [c for _, c in terms]
    if any(isinstance(c, Fraction) for c in coeffs):
        den = 1
        for c in coeffs:
            c = Fraction(c)
            den = den * c.denominator // gcd(den, c.denominator)
        el = el.map_coefficients(lambda c: int(Fraction(c) * den))
        terms = el.sorted_terms()
        coeffs = [c for _, c in terms]
    g = 0
    for c in coeffs:
        g = gcd(g, int(c))
    if g > 1:
        el = el.map_coefficients(lambda c: c // g)
    if el.sorted_terms()[0][1] < 0:
        el = -el
    return el


@dataclass
class DegreewiseIdeal:
    """Per-degree bases of the relation ideal, with rank bookkeeping.

    Elements are re-verified to map to zero under the evaluation map when
    inserted (a direct substitution in B, independent of the linear algebra
    that produced them).
    """

    spec: PresentationSpec
    degrees: dict[int, list[AlgebraElement]] = field(default_factory=dict)

    def insert(self, d: int, elements) -> None:
        hom = evaluation_hom(self.spec.n, self.spec.flavor)
        for el in elements:
            if hom(el) != 0:
                raise MismatchReport(
                    f"element of claimed kernel degree {d} fails to evaluate "
                    f"to zero: {el}")
        self.degrees.setdefault(d, []).extend(elements)

    def rank(self, d: int) -> int:
        return len(self.degrees.get(d, []))


def degreewise_ideal(spec: PresentationSpec, d_max: int) -> DegreewiseIdeal:
    """The kernel oracle through d_max, packaged with re-verification."""
    out = DegreewiseIdeal(spec)
    for d in range(d_max + 1):
        out.insert(d, kernel_oracle(spec, d))
    return out


def rho_rank(spec: PresentationSpec, d: int) -> int:
    """dim of the image of the evaluation map in degree d (exact)."""
    A = spec.algebra
    total = 0
    for charge in sorted(_slice_by_charge(A, d)):
        keys, cols, nrows = rho_columns(spec, d, charge)
        if not keys:
            continue
        if isinstance(spec.ring, PrimeField):
            p = spec.ring.p
            cols = [{i: c % p for i, c in col.items() if c % p} for col in cols]
        ring = spec.ring if spec.ring.is_field else QQ
        total += kernel_over_field(cols, nrows, ring).rank
    return total


# ---------------------------------------------------------------------------
# Weight-bigraded algorithm
# ---------------------------------------------------------------------------

_EMONO_CACHE: dict[tuple[int, int], list[tuple]] = {}


def e_monomials(n: int, q: int) -> list[tuple]:
    """Exponent tuples (a_1..a_n) with sum k*a_k = q, ordered; degree 2q."""
    key = (n, q)
    got = _EMONO_CACHE.get(key)
    if got is not None:
        return got
    out: list[tuple] = []

    def rec(k: int, rem: int, acc: list[int]):
        if k == n:
            if rem == 0:
                out.append(tuple(acc))
            return
        step = k + 1
        for a in range(rem // step + 1):
            acc.append(a)
            rec(k + 1, rem - a * step, acc)
            acc.pop()

    rec(0, q, [])
    out.sort()
    _EMONO_CACHE[key] = out
    return out


_DPOW_CACHE: dict[tuple[int, int], dict] = {}


def delta_sq_power(n: int, m: int) -> dict[tuple, int]:
    """Delta^{2m} on the e-basis, as an exponent->coefficient dict."""
    key = (n, m)
    got = _DPOW_CACHE.get(key)
    if got is None:
        el = delta_squared_e(n) ** m if m else e_algebra(n).one()
        got = {ev: c for (ev, _), c in el.terms.items()}
        _DPOW_CACHE[key] = got
    return got


def weight_basis(n: int, a: int, b: int) -> list:
    """All monomial keys of biweight (a, b) in X_1..X_n, Y_1..Y_n,
    W_1..W_{n-1}, canonically ordered."""
    if a < 0 or b < 0:
        return []
    alg = presentation_algebra(n, "W")
    n_w = n - 1
    out = []
    for w in range(0, min(a, b) + 1):
        ia, ib = a - w, b - w
        if ia > n or ib > n:
            continue
        for alpha in _compositions(n_w, w):
            ev = (0,) * n + alpha
            for I in combinations(range(n), ia):
                mask_x = 0
                for i in I:
                    mask_x |= 1 << i
                for J in combinations(range(n), ib):
                    mask = mask_x
                    for j in J:
                        mask |= 1 << (n + j)
                    out.append((ev, mask))
    out.sort(key=alg.sort_key)
    return out


def _compositions(slots: int, total: int):
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(slots - 1, total - first):
            yield (first,) + rest


def monomial_ideal_part(n: int, a: int, b: int) -> list:
    """The weight-(a,b) monomials that are relations outright (a>n or b>n)."""
    if a > n or b > n:
        return weight_basis(n, a, b)
    return []


@dataclass
class TColumn:
    degree: int
    rows: dict[int, dict[tuple, int]]   # mono index -> e-poly


@dataclass
class TMatrix:
    n: int
    a: int
    b: int
    monomials: list
    mono_degs: list[int]
    columns: list[TColumn]


_RPRIME_CACHE: dict[tuple[int, int], AlgebraElement] = {}


def _rprime_reduced(n: int, i: int) -> AlgebraElement:
    """R'_i re-keyed into the reduced W-algebra (i <= n-1 never needs W_n)."""
    got = _RPRIME_CACHE.get((n, i))
    if got is None:
        rec = relation_Rprime(i, n)
        red = presentation_algebra(n, "W")
        terms = {}
        for (ev, odd), c in rec.element.terms.items():
            assert ev[-1] == 0, "R'_i with i < n cannot involve W_n"
            terms[(ev[:-1], odd)] = c
        got = AlgebraElement(red, terms)
        _RPRIME_CACHE[(n, i)] = got
    return got


def matrix_T(n: int, a: int, b: int) -> TMatrix:
    """Columns expand M*R'_i over the weight-(a,b) basis with symmetric-
    polynomial coefficients; ordered basis-monomial major, relation minor."""
    alg = presentation_algebra(n, "W")
    basis = weight_basis(n, a, b)
    index = {k: r for r, k in enumerate(basis)}
    degs = [alg.monomial_degree(k) for k in basis]
    prev = weight_basis(n, a - 1, b - 1)
    cols: list[TColumn] = []
    for mkey in prev:
        mono = AlgebraElement(alg, {mkey: 1})
        for i in range(1, n):
            prod = mono * _rprime_reduced(n, i)
            rows: dict[int, dict[tuple, int]] = {}
            for (ev, odd), c in prod.terms.items():
                e_part = ev[:n]
                frame = ((0,) * n + ev[n:], odd)
                r = index[frame]  # additive weights keep products inside B_{a,b}
                rows.setdefault(r, {})[e_part] = c
            deg = alg.monomial_degree(mkey) + 2 * (n * (n - 1) + i)
            cols.append(TColumn(deg, rows))
    return TMatrix(n, a, b, basis, degs, cols)


class _Slices:
    """Degree slices of the free symmetric-coefficient module over a fixed
    ordered monomial basis."""

    def __init__(self, n: int, mono_degs: list[int]):
        self.n = n
        self.mono_degs = mono_degs
        self._cache: dict[int, tuple[list, dict]] = {}

    def slice(self, d: int):
        got = self._cache.get(d)
        if got is None:
            items = []
            for r, dm in enumerate(self.mono_degs):
                rem = d - dm
                if rem < 0 or rem % 2:
                    continue
                for ev in e_monomials(self.n, rem // 2):
                    items.append((r, ev))
            lookup = {it: i for i, it in enumerate(items)}
            got = (items, lookup)
            self._cache[d] = got
        return got

    def gen_columns(self, T: TMatrix, d: int):
        """Slice of the column span of T in degree d, as sparse columns."""
        items, lookup = self.slice(d)
        cols = []
        for col in T.columns:
            rem = d - col.degree
            if rem < 0 or rem % 2:
                continue
            for mu in e_monomials(self.n, rem // 2):
                vec: dict[int, int] = {}
                for r, poly in col.rows.items():
                    for ev, c in poly.items():
                        idx = lookup[(r, tuple(x + y for x, y in zip(mu, ev)))]
                        vec[idx] = vec.get(idx, 0) + c
                cols.append({i: c for i, c in vec.items() if c})
        return cols, len(items)

    def delta_columns(self, m: int, d: int, d_hi: int):
        """Columns of multiplication by Delta^{2m}: slice_d -> slice_{d_hi}."""
        lo_items, _ = self.slice(d)
        _, hi_lookup = self.slice(d_hi)
        dpow = delta_sq_power(self.n, m)
        cols = []
        for (r, mu) in lo_items:
            vec: dict[int, int] = {}
            for ev, c in dpow.items():
                idx = hi_lookup[(r, tuple(x + y for x, y in zip(mu, ev)))]
                vec[idx] = vec.get(idx, 0) + c
            cols.append(vec)
        return cols


@dataclass
class DegreeComponent:
    degree: int
    sat_exponent: int
    dim_gbar: int
    eps_rows: list[list]     # echelon rows over the monomial basis


@dataclass
class WeightBlock:
    n: int
    a: int
    b: int
    monomials: list
    mono_names: list[str]
    components: dict[int, DegreeComponent] = field(default_factory=dict)
    # kernel-route data for the same block: {degree: (dim, eps echelon rows)}
    oracle_components: dict = field(default_factory=dict)

    @property
    def gbar_dim(self) -> int:
        return sum(c.dim_gbar for c in self.components.values())

    def gbar_rows(self) -> list[list]:
        rows = []
        for d in sorted(self.components):
            rows.extend(self.components[d].eps_rows)
        return rows


def echelon_rows(vectors, width: int, ring: Ring) -> list[list]:
    """Reduced echelon basis of the span of the given vectors (dense RREF,
    exact arithmetic; fine for the small widths it is used at)."""
    if isinstance(ring, PrimeField):
        p = ring.p
        rows = [[int(x) % p for x in v] for v in vectors]
    else:
        rows = [[Fraction(x) for x in v] for v in vectors]
        p = None
    basis: list[tuple[int, list]] = []   # (pivot, row)
    for row in rows:
        for piv, b in basis:
            c = row[piv]
            if c:
                if p is None:
                    row = [x - c * y for x, y in zip(row, b)]
                else:
                    row = [(x - c * y) % p for x, y in zip(row, b)]
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is None:
            continue
        inv = (1 / row[lead]) if p is None else pow(int(row[lead]), p - 2, p)
        if p is None:
            row = [x * inv for x in row]
        else:
            row = [(x * inv) % p for x in row]
        for k, (piv, b) in enumerate(basis):
            c = b[lead]
            if c:
                if p is None:
                    basis[k] = (piv, [x - c * y for x, y in zip(b, row)])
                else:
                    basis[k] = (piv, [(x - c * y) % p for x, y in zip(b, row)])
        basis.append((lead, row))
    basis.sort(key=lambda t: t[0])
    return [b for _, b in basis]


def rows_to_primitive(rows: list[list]) -> list[list[int]]:
    """Scale rational echelon rows to primitive integer vectors, positive lead."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            fx = Fraction(x)
            den = den * fx.denominator // gcd(den, fx.denominator)
        ints = [int(Fraction(x) * den) for x in row]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        lead = next((x for x in ints if x), 1)
        if lead < 0:
            ints = [-x for x in ints]
        out.append(ints)
    return out


def saturate_block(n: int, a: int, b: int, ring: Ring,
                   cap: int | None = None) -> WeightBlock:
    """Degreewise saturation of the column span of T_{a,b} by Delta^2.

    For each cohomological degree d carried by a basis monomial, the chain
    V_m = {v : Delta^{2m} v in im(T)} is climbed until its dimension reaches
    the kernel dimension of the evaluation map on the same slice (the oracle
    target; the chain is sandwiched inside that kernel, so arrival means the
    saturation is complete).  There is no a priori bound on the exponent, so
    the cap plus the oracle target is the stopping rule; the cap raises
    SaturationUnstable.  Every element of the result carries an implicit
    exact witness: it came out of a certified kernel of the witness matrix
    [Delta^{2m} e | -generators].
    """
    if not ring.is_field or not _char_ok_for_w(ring, n):
        raise ValueError("saturation runs over a field with n! invertible")
    if cap is None:
        cap = n + 2
    alg = presentation_algebra(n, "W")
    T = matrix_T(n, a, b)
    slices = _Slices(n, T.mono_degs)
    block = WeightBlock(n, a, b, T.monomials,
                        [alg.monomial_str(k) for k in T.monomials])
    oracle = weighted_oracle_block(n, a, b, ring)
    block.oracle_components = oracle
    delta_deg = 2 * n * (n - 1)
    rank_cache: dict[int, int] = {}               # d -> rank G_d

    def g_cols(d: int):
        cols, nrows = slices.gen_columns(T, d)
        if d not in rank_cache:
            rank_cache[d] = (kernel_over_field(cols, nrows, ring).rank
                             if cols else 0)
        return rank_cache[d], cols, nrows

    for d in sorted(set(T.mono_degs)):
        items, _ = slices.slice(d)
        dim_d = len(items)
        target = oracle[d][0] if d in oracle else 0
        if dim_d == 0 or target == 0:
            block.components[d] = DegreeComponent(d, 0, 0, [])
            continue
        r0, cols0, _ = g_cols(d)
        if r0 == target:
            span = [_project_dense(col, dim_d) for col in cols0]
            m = 0
        else:
            m = 0
            span = None
            while span is None:
                m += 1
                if m > cap:
                    raise SaturationUnstable(
                        f"weight ({a},{b}) degree {d}: oracle dimension "
                        f"{target} not reached by exponent {cap}")
                d_hi = d + m * delta_deg
                rg, gcols, nrows_hi = g_cols(d_hi)
                dcols = slices.delta_columns(m, d, d_hi)
                full = dcols + [{i: -c for i, c in col.items()}
                                for col in gcols]
                ker = kernel_over_field(full, nrows_hi, ring)
                dim_vm = dim_d - ker.rank + rg
                if dim_vm > target:
                    raise SaturationUnstable(
                        f"weight ({a},{b}) degree {d}: chain dimension "
                        f"{dim_vm} exceeds the oracle target {target}")
                if dim_vm == target:
                    span = [v[:dim_d] for v in ker.basis]
        eps = _eps_project(span, slices, T, d)
        rows = echelon_rows(eps, len(T.monomials), ring)
        block.components[d] = DegreeComponent(d, m, len(rows), rows)
    return block


def _project_dense(col: dict[int, int], width: int) -> list[int]:
    out = [0] * width
    for i, c in col.items():
        out[i] = c
    return out


def _eps_project(span, slices: _Slices, T: TMatrix, d: int) -> list[list]:
    """Reduction modulo (e_1..e_n): keep the constant-coefficient entries,
    which sit on basis monomials of degree exactly d."""
    items, _ = slices.slice(d)
    zero = tuple([0] * slices.n)
    width = len(T.mono_degs)
    rows = []
    for v in span:
        out = [0] * width
        nonzero = False
        for i, x in enumerate(v):
            if x and items[i][1] == zero:
                out[items[i][0]] = x
                nonzero = True
        if nonzero:
            rows.append(out)
    return rows


def reduce_block(block: WeightBlock) -> list[list[int]]:
    """The reduced relation space of the block as primitive integer rows."""
    return rows_to_primitive(block.gbar_rows())


@dataclass
class RelationBasis:
    n: int
    ring: Ring
    blocks: dict[tuple[int, int], WeightBlock]
    monomial_part: dict[tuple[int, int], list[str]]

    @property
    def total_dim(self) -> int:
        return sum(b.gbar_dim for b in self.blocks.values())

    def block_rows(self, a: int, b: int) -> list[list]:
        return self.blocks[(a, b)].gbar_rows()


def relation_basis(n: int, ring: Ring, weight_cap: int | None = None,
                   cap: int | None = None, jobs: int = 1) -> RelationBasis:
    """The additive basis of the reduced relation ideal.

    Part (i): all weight-(a,b) monomials with a > n or b > n (emitted for
    a, b up to ``weight_cap``, default 2n; the rest follow the same rule).
    Part (ii): the reduced saturation spaces for 1 <= a, b <= n.  Blocks are
    independent; ``jobs`` > 1 runs them on a thread pool (the elimination
    kernels release the GIL).
    """
    if not ring.is_field or not _char_ok_for_w(ring, n):
        raise ValueError(f"relation basis needs a field with {n}! invertible")
    if weight_cap is None:
        weight_cap = 2 * n
    alg = presentation_algebra(n, "W")
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                lambda ab: saturate_block(n, ab[0], ab[1], ring, cap), pairs))
        blocks = dict(zip(pairs, results))
    else:
        blocks = {ab: saturate_block(n, ab[0], ab[1], ring, cap)
                  for ab in pairs}
    mono_part = {}
    for a in range(0, weight_cap + 1):
        for b in range(0, weight_cap + 1):
            if a <= n and b <= n:
                continue
            monos = monomial_ideal_part(n, a, b)
            if monos:
                mono_part[(a, b)] = [alg.monomial_str(k) for k in monos]
    return RelationBasis(n, ring, blocks, mono_part)


# ---------------------------------------------------------------------------
# Weighted oracle (for cross-checks against the algorithm)
# ---------------------------------------------------------------------------

def weighted_oracle_block(n: int, a: int, b: int, ring: Ring):
    """Kernel of the evaluation map restricted to weight (a, b), degree by
    degree, with its reduction modulo (e_1..e_n).

    Returns {degree: (kernel_dim, eps echelon rows over the weight basis)}.
    Independent of the saturation route: the matrix here is the evaluation
    map itself.
    """
    alg = presentation_algebra(n, "W")
    B = b_algebra(n)
    hom = evaluation_hom(n, "W")
    basis = weight_basis(n, a, b)
    mono_degs = [alg.monomial_degree(k) for k in basis]
    slices = _Slices(n, mono_degs)
    images = [hom._monomial_image(k) for k in basis]
    e_img_cache: dict[tuple, AlgebraElement] = {}

    def e_image(ev: tuple) -> AlgebraElement:
        got = e_img_cache.get(ev)
        if got is None:
            el = AlgebraElement(e_algebra(n), {(ev, 0): 1})
            from .relgen import embed_t_poly
            got = embed_t_poly(expand_in_t(el, n), n)
            e_img_cache[ev] = got
        return got

    out = {}
    for d in sorted(set(mono_degs)):
        items, _ = slices.slice(d)
        if not items:
            continue
        bkeys = [k for k in graded_basis(B, d)
                 if B.monomial_biweight(k) == (a, b)]
        bindex = {k: i for i, k in enumerate(bkeys)}
        cols = []
        for (r, ev) in items:
            img = e_image(ev) * images[r]
            cols.append({bindex[k]: c for k, c in img.terms.items()})
        if isinstance(ring, PrimeField):
            p = ring.p
            cols = [{i: c % p for i, c in col.items() if c % p} for col in cols]
        ker = kernel_over_field(cols, len(bkeys), ring)
        eps = _eps_project_items(ker.basis, items, slices.n, len(basis))
        out[d] = (ker.dim, echelon_rows(eps, len(basis), ring))
    return out


def _eps_project_items(vectors, items, n, width):
    zero = tuple([0] * n)
    rows = []
    for v in vectors:
        out = [0] * width
        nonzero = False
        for i, x in enumerate(v):
            if x and items[i][1] == zero:
                out[items[i][0]] = x
                nonzero = True
        if nonzero:
            rows.append(out)
    return rows


# ---------------------------------------------------------------------------
# Integral saturation (Z coefficients)
# ---------------------------------------------------------------------------

@dataclass
class IntegralSaturationReport:
    n: int
    d_max: int
    ok: bool
    per_degree: dict[int, int]          # degree -> exponent that worked
    mismatches: list[tuple[int, AlgebraElement]]


def integral_saturation_check(n: int, d_max: int,
                              cap: int | None = None) -> IntegralSaturationReport:
    """Degreewise comparison of the Z-saturation of the relation ideal with
    the integer kernel of the evaluation map.

    For each degree d <= d_max and each integer kernel basis vector kappa,
    search the least m with Delta^{2m} kappa inside the degree-(d + m |D2|)
    lattice slice of the ideal; membership is witnessed by exact coefficients.
    The reverse inclusion holds identically (the evaluation map kills the
    relation generators and multiplication by Delta^2 is injective), so
    success certifies lattice equality.
    """
    if cap is None:
        cap = n + 2
    spec = PresentationSpec(n, "Z", ZZ)
    A = spec.algebra
    d2 = embed_coefficient(delta_squared_e(n), A, n)
    delta_deg = 2 * n * (n - 1)
    rels = [relation_R(l, n) for l in range(1, n + 1)]
    solver_cache: dict[tuple[int, int], LatticeSolver] = {}
    aindex_cache: dict[tuple[int, int], dict] = {}

    def a_slice(d: int, charge: int):
        key = (d, charge)
        got = aindex_cache.get(key)
        if got is None:
            keys = [k for k in graded_basis(A, d)
                    if A.monomial_charge(k) == charge]
            got = (keys, {k: i for i, k in enumerate(keys)})
            aindex_cache[key] = got
        return got

    def ideal_solver(d: int, charge: int) -> LatticeSolver:
        key = (d, charge)
        got = solver_cache.get(key)
        if got is None:
            keys, index = a_slice(d, charge)
            cols = []
            for rec in rels:
                for mkey in graded_basis(A, d - rec.coh_degree):
                    if A.monomial_charge(mkey) != charge:
                        continue
                    prod = AlgebraElement(A, {mkey: 1}) * rec.element
                    cols.append({index[k]: c for k, c in prod.terms.items()})
            got = LatticeSolver(cols, len(keys))
            solver_cache[key] = got
        return got

    per_degree: dict[int, int] = {}
    mismatches: list[tuple[int, AlgebraElement]] = []
    for d in range(0, d_max + 1):
        kernel = kernel_oracle(spec, d)
        worst = 0
        for el in kernel:
            charge = next(iter({A.monomial_charge(k) for k in el.terms}))
            found = None
            scaled = el
            for m in range(0, cap + 1):
                d_hi = d + m * delta_deg
                _, index = a_slice(d_hi, charge)
                vec = [0] * len(index)
                for k, c in scaled.terms.items():
                    vec[index[k]] = c
                if ideal_solver(d_hi, charge).membership(vec) is not None:
                    found = m
                    break
                scaled = scaled * d2
            if found is None:
                mismatches.append((d, el))
            else:
                worst = max(worst, found)
        per_degree[d] = worst
    return IntegralSaturationReport(n, d_max, not mismatches, per_degree,
                                    mismatches)
