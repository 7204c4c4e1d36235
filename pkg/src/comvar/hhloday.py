"""Hochschild homology over simplicial sets, for one-generator base algebras.

A simplicial model carries explicit face/degeneracy index maps on its simplex
sets (simplicial identities are checked).  Tensoring the base algebra over the
simplices of each level gives the Loday complex; its vertical differential is
the alternating face sum, and homology of the total complex is computed over
Z by Smith normal form (or over Q by rank counting).  The shuffle product
makes the chains a graded-commutative algebra; the classes gamma_m = 1 (x)
x^(x)m realise divided powers when the generator is odd.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exactlin import ZZ, Ring, kernel_over_field, snf_diagonal

__all__ = [
    "SimplicialModel", "circle", "torus2", "BaseAlgebra", "LodayComplex",
    "hochschild_homology_ranks", "shuffle_product", "HHTable",
]


class SimplicialModel:
    """Finite simplicial set given by simplex counts and index maps."""

    def __init__(self, name: str, n_simplices, face, degeneracy):
        self.name = name
        self.n_simplices = n_simplices      # p -> |X_p|
        self.face = face                    # (p, i, simplex) -> simplex
        self.degeneracy = degeneracy        # (p, i, simplex) -> simplex

    def check_identities(self, cap: int) -> None:
        """Simplicial identities for all indices through level cap."""
        for p in range(2, cap + 1):
            for x in range(self.n_simplices(p)):
                for j in range(p + 1):
                    for i in range(j):
                        a = self.face(p - 1, i, self.face(p, j, x))
                        b = self.face(p - 1, j - 1, self.face(p, i, x))
                        assert a == b, f"d_i d_j failure at p={p}"
        for p in range(0, cap):
            for x in range(self.n_simplices(p)):
                for j in range(p + 1):
                    for i in range(j, p + 1):
                        a = self.degeneracy(p + 1, i + 1, self.degeneracy(p, j, x))
                        b = self.degeneracy(p + 1, j, self.degeneracy(p, i, x))
                        assert a == b, f"s_i s_j failure at p={p}"
                for j in range(p + 1):
                    for i in range(p + 2):
                        lhs = self.face(p + 1, i, self.degeneracy(p, j, x))
                        if i < j:
                            if p:
                                assert lhs == self.degeneracy(
                                    p - 1, j - 1, self.face(p, i, x))
                        elif i in (j, j + 1):
                            assert lhs == x
                        else:
                            if p:
                                assert lhs == self.degeneracy(
                                    p - 1, j, self.face(p, i - 1, x))


def circle() -> SimplicialModel:
    """Standard simplicial circle: p+1 simplices in level p, indexed so that
    the induced complex is the classical Hochschild complex (slot 0 first)."""

    def faces(p, i, m):
        # merge slot i with i+1 (i < p), or slot p into slot 0 (i = p)
        if i < p:
            return m if m <= i else m - 1
        return 0 if m == p else m

    def degeneracies(p, i, m):
        # insert a unit slot after position i
        return m if m <= i else m + 1

    return SimplicialModel("circle", lambda p: p + 1, faces, degeneracies)


def torus2() -> SimplicialModel:
    """Levelwise product of two circles: (p+1)^2 simplices in level p."""
    c = circle()

    def n_simplices(p):
        return (p + 1) * (p + 1)

    def faces(p, i, m):
        a, b = divmod(m, p + 1)
        return c.face(p, i, a) * p + c.face(p, i, b) if p else 0

    def degeneracies(p, i, m):
        a, b = divmod(m, p + 1)
        return c.degeneracy(p, i, a) * (p + 2) + c.degeneracy(p, i, b)

    return SimplicialModel("torus2", n_simplices, faces, degeneracies)


@dataclass(frozen=True)
class BaseAlgebra:
    """Free one-generator base: polynomial (even degree) or exterior (odd)."""

    kind: str          # "poly" | "ext"
    gen_degree: int

    def __post_init__(self):
        if self.kind not in ("poly", "ext"):
            raise ValueError("kind must be 'poly' or 'ext'")
        if self.kind == "poly" and self.gen_degree % 2:
            raise ValueError("polynomial generator must have even degree")
        if self.kind == "ext" and self.gen_degree % 2 == 0:
            raise ValueError("exterior generator must have odd degree")

    @property
    def max_exp(self):
        return 1 if self.kind == "ext" else None


class LodayComplex:
    """Chains of the Loday construction of a base algebra over a model.

    A chain in simplicial level p is a dict {exponent tuple (length |X_p|):
    coefficient}; the internal degree of a tuple is gen_degree * sum, the
    total degree is internal + p.  ``normalized=True`` restricts to tensors
    with no unit slot away from slot 0 of the circle model.
    """

    def __init__(self, base: BaseAlgebra, model: SimplicialModel,
                 normalized: bool = False):
        if normalized and model.name != "circle":
            raise ValueError("normalized chains implemented for the circle")
        self.base = base
        self.model = model
        self.normalized = normalized
        self._basis_cache: dict[tuple[int, int], list[tuple]] = {}

    # -- bases -------------------------------------------------------------

    def level_basis(self, p: int, internal: int) -> list[tuple]:
        """Exponent tuples at level p with the given internal degree."""
        key = (p, internal)
        got = self._basis_cache.get(key)
        if got is not None:
            return got
        if internal % self.base.gen_degree:
            out: list[tuple] = []
        else:
            q = internal // self.base.gen_degree
            slots = self.model.n_simplices(p)
            out = sorted(self._tuples(slots, q))
            if self.normalized:
                out = [t for t in out if all(t[1:])]
        self._basis_cache[key] = out
        return out

    def _tuples(self, slots: int, total: int):
        if self.base.kind == "ext":
            for chosen in combinations(range(slots), total):
                t = [0] * slots
                for c in chosen:
                    t[c] = 1
                yield tuple(t)
            return

        def rec(i, rem, acc):
            if i == slots - 1:
                yield tuple(acc + [rem])
                return
            for e in range(rem + 1):
                yield from rec(i + 1, rem - e, acc + [e])
        if slots:
            yield from rec(0, total, [])
        elif total == 0:
            yield ()

    def total_degree_basis(self, N: int) -> list[tuple[int, tuple]]:
        """All (level, tuple) pairs of total degree N, level-major order."""
        out = []
        for p in range(N + 1):
            for t in self.level_basis(p, N - p):
                out.append((p, t))
        return out

    # -- structure maps -----------------------------------------------------

    def apply_index_map(self, p_src: int, p_dst: int, index_map, chain: dict,
                        sign_scale: int = 1) -> dict:
        """Push a level-p_src chain along a map of simplex sets.

        Fibres multiply (odd factors pick up the Koszul reordering sign);
        colliding odd exponents kill the term.
        """
        odd = self.base.gen_degree % 2
        out: dict[tuple, int] = {}
        n_dst = self.model.n_simplices(p_dst)
        for tup, coeff in chain.items():
            target = [0] * n_dst
            sign = 1
            ok = True
            seen_odd_after = [0] * n_dst   # odd factors already placed, by fibre
            placed = 0                     # total odd factors placed so far
            prefix = [0] * (n_dst + 1)
            for s, e in enumerate(tup):
                if not e:
                    continue
                f = index_map(s)
                if odd:
                    if target[f]:
                        ok = False
                        break
                    # moving this factor past every odd factor already placed
                    # in a later fibre
                    later = placed - sum(seen_odd_after[:f + 1])
                    if later & 1:
                        sign = -sign
                    seen_odd_after[f] += 1
                    placed += 1
                target[f] += e
                if self.base.max_exp and target[f] > 1:
                    ok = False
                    break
            if not ok:
                continue
            t = tuple(target)
            if self.normalized and not all(t[1:]):
                continue
            val = out.get(t, 0) + sign_scale * sign * coeff
            if val:
                out[t] = val
            elif t in out:
                del out[t]
        return out

    def vertical_differential(self, p: int, chain: dict) -> dict:
        out: dict[tuple, int] = {}
        for i in range(p + 1):
            part = self.apply_index_map(
                p, p - 1, lambda s, i=i: self.model.face(p, i, s), chain,
                sign_scale=(-1) ** i)
            for t, c in part.items():
                v = out.get(t, 0) + c
                if v:
                    out[t] = v
                elif t in out:
                    del out[t]
        return out

    def boundary_matrix(self, N: int):
        """Matrix of the total differential from degree N to N-1 (vertical
        only; the base algebras carry no differential).  Returns sparse
        columns over the (level, tuple) bases."""
        src = self.total_degree_basis(N)
        dst = self.total_degree_basis(N - 1)
        index = {pt: i for i, pt in enumerate(dst)}
        cols = []
        for (p, t) in src:
            if p == 0:
                cols.append({})
                continue
            img = self.vertical_differential(p, {t: 1})
            cols.append({index[(p - 1, u)]: c for u, c in img.items()})
        return cols, len(dst)

    def multiply(self, p: int, a: dict, b: dict) -> dict:
        """Pointwise product in the level-p tensor algebra, with signs."""
        odd = self.base.gen_degree % 2
        out: dict[tuple, int] = {}
        for t1, c1 in a.items():
            for t2, c2 in b.items():
                sign = 1
                ok = True
                if odd:
                    # b-factor at slot s crosses a-factors at slots > s
                    suffix = 0
                    total1 = sum(t1)
                    run = 0
                    for s in range(len(t1)):
                        run += t1[s]
                        if t2[s]:
                            if t1[s]:
                                ok = False
                                break
                            if (total1 - run) & 1:
                                sign = -sign
                    if not ok:
                        continue
                merged = tuple(x + y for x, y in zip(t1, t2))
                if self.base.max_exp and any(x > 1 for x in merged):
                    continue
                if self.normalized and not all(merged[1:]):
                    continue
                key = merged
                v = out.get(key, 0) + sign * c1 * c2
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return out


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------

@dataclass
class HHTable:
    base: BaseAlgebra
    model: str
    ring: str
    ranks: dict[int, int]
    torsion: dict[int, list[int]]

    @property
    def has_torsion(self) -> bool:
        return any(self.torsion.values())


def hochschild_homology_ranks(base: BaseAlgebra, model: SimplicialModel,
                              degree_cap: int, ring: Ring = ZZ,
                              normalized: bool | None = None) -> HHTable:
    """Homology of the total complex through the given total degree.

    Levels above the degree cap cannot contribute (the generator has positive
    internal degree), so the truncation at degree_cap + 1 is exact.  Over Z
    the elementary divisors of the incoming boundary give the torsion.
    """
    if normalized is None:
        normalized = base.kind == "ext" and model.name == "circle"
    cx = LodayComplex(base, model, normalized=normalized)
    ranks: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    rank_d: dict[int, int] = {}
    div_d: dict[int, list[int]] = {}
    for N in range(degree_cap + 2):
        cols, nrows = cx.boundary_matrix(N)
        if ring is ZZ:
            rows = [[0] * len(cols) for _ in range(nrows)]
            for j, col in enumerate(cols):
                for i, c in col.items():
                    rows[i][j] = c
            diag = snf_diagonal(rows) if rows and cols else []
            nonzero = [x for x in diag if x]
            rank_d[N] = len(nonzero)
            div_d[N] = [x for x in nonzero if abs(x) != 1]
        else:
            rank_d[N] = kernel_over_field(cols, nrows, ring).rank if cols else 0
            div_d[N] = []
    for N in range(degree_cap + 1):
        dim_n = len(cx.total_degree_basis(N))
        ranks[N] = dim_n - rank_d[N] - rank_d[N + 1]
        torsion[N] = div_d[N + 1]
    return HHTable(base, model.name, ring.name, ranks, torsion)


# ---------------------------------------------------------------------------
# Shuffle product
# ---------------------------------------------------------------------------

def _shuffles(p: int, q: int):
    """(mu, nu) partitions of {0..p+q-1} with |mu| = p, plus the sign."""
    universe = tuple(range(p + q))
    for mu in combinations(universe, p):
        nu = tuple(x for x in universe if x not in mu)
        inversions = sum(1 for a in mu for b in nu if a > b)
        yield mu, nu, (-1 if inversions & 1 else 1)


def shuffle_product(cx: LodayComplex, p: int, a: dict, q: int, b: dict) -> dict:
    """Shuffle product of a level-p chain with a level-q chain.

    Degeneracies s_{nu_q}..s_{nu_1} raise a, s_{mu_p}..s_{mu_1} raise b, the
    factors multiply pointwise; signs are the shuffle signs times the Koszul
    signs of the pointwise products.  Degenerate chains vanish in a
    normalized complex, so the sum is formed on unnormalized chains and only
    the result is projected.
    """
    work = LodayComplex(cx.base, cx.model) if cx.normalized else cx
    out: dict[tuple, int] = {}
    for mu, nu, sgn in _shuffles(p, q):
        ra = dict(a)
        lvl = p
        for i in nu:   # nu_1 < ... < nu_q applied in increasing order
            ra = work.apply_index_map(
                lvl, lvl + 1,
                lambda s, lvl=lvl, i=i: work.model.degeneracy(lvl, i, s), ra)
            lvl += 1
        rb = dict(b)
        lvl = q
        for i in mu:
            rb = work.apply_index_map(
                lvl, lvl + 1,
                lambda s, lvl=lvl, i=i: work.model.degeneracy(lvl, i, s), rb)
            lvl += 1
        prod = work.multiply(p + q, ra, rb)
        for t, c in prod.items():
            v = out.get(t, 0) + sgn * c
            if v:
                out[t] = v
            elif t in out:
                del out[t]
    if cx.normalized:
        out = {t: c for t, c in out.items() if all(t[1:])}
    return out
