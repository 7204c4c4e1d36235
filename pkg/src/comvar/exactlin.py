"""Exact scalars and exact linear algebra.

Scalars live in Z, Q, or a prime field F_p.  Linear algebra comes in three
flavours:

* kernels/ranks over F_p -- one modular elimination, exact by definition;
* kernels/ranks over Q -- modular elimination over a fixed prime sequence,
  CRT + rational reconstruction, then an exact integer re-verification, so
  every returned basis carries a proof (A*v = 0 checked in Z) and every rank
  is certified (rank mod p <= rank over Q, and a full-size verified kernel
  forces equality);
* Hermite/Smith forms over Z with unimodular transforms, for integer kernels,
  image lattices and membership witnesses.

Matrices are small enough that the Z-side is pure Python; the F_p eliminations
are the hot kernels in :mod:`comvar._modp`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from ._modp import PRIMES, matmul_mod, rref_mod

__all__ = [
    "ZZ", "QQ", "GF", "Ring", "PrimeField", "parse_ring",
    "ExactMatrix", "FieldKernel", "kernel_basis", "kernel_over_field",
    "smith_normal_form", "hermite_columns", "integer_kernel",
    "lattice_membership", "LatticeSolver",
]

# Verification primes, disjoint from the elimination primes in _modp.PRIMES.
_VPRIMES: tuple[int, ...] = (
    536870909, 536870879, 536870869, 536870849, 536870839, 536870837,
    536870819, 536870813, 536870791, 536870779, 536870767, 536870743,
    536870729, 536870723, 536870717, 536870701, 536870683, 536870657,
    536870641, 536870627, 536870611, 536870603, 536870599, 536870573,
    536870569, 536870563, 536870561, 536870513, 536870501, 536870497,
    536870473, 536870401, 536870363, 536870317, 536870303, 536870297,
    536870273, 536870267, 536870239, 536870233, 536870219, 536870171,
    536870167, 536870153, 536870123, 536870063, 536870057, 536870041,
)

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Ring tag.  Scalars themselves are plain ints / Fractions."""

    name: str
    is_field: bool
    characteristic: int

    def normalize(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class _IntegerRing(Ring):
    name = "Z"
    is_field = False
    characteristic = 0

    def normalize(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"not an integer: {x}")
            return int(x)
        return int(x)


class _RationalRing(Ring):
    name = "Q"
    is_field = True
    characteristic = 0

    def normalize(self, x):
        return Fraction(x)


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 1 << 30:
            raise ValueError("prime fields limited to p < 2**30")
        self.p = p
        self.name = f"F{p}"
        self.characteristic = p

    def normalize(self, x):
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return x.numerator * pow(den, self.p - 2, self.p) % self.p
        return int(x) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


ZZ = _IntegerRing()
QQ = _RationalRing()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_ring(text: str) -> Ring:
    """Parse a coefficient-ring descriptor: ``Z``, ``Q`` or ``Fp:<p>``."""
    if text == "Z":
        return ZZ
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        return GF(int(text[3:]))
    raise ValueError(f"unknown ring {text!r}")


@dataclass(frozen=True)
class ExactMatrix:
    """Dense exact matrix; all entries share the ring tag."""

    ring: Ring
    entries: tuple  # tuple of row tuples

    @staticmethod
    def from_rows(rows: Iterable[Sequence], ring: Ring) -> "ExactMatrix":
        data = tuple(tuple(ring.normalize(x) for x in row) for row in rows)
        if data:
            w = len(data[0])
            if any(len(r) != w for r in data):
                raise ValueError("ragged rows")
        return ExactMatrix(ring, data)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = x
        return cols


# ---------------------------------------------------------------------------
# Kernels over fields
# ---------------------------------------------------------------------------

@dataclass
class FieldKernel:
    """Certified kernel of a matrix over a field.

    ``basis[k]`` is in free-column normal form: entry 1 at ``free[k]``, zero at
    the other free columns.  Over Q the vectors are Fractions and have been
    re-verified exactly against the integer matrix.
    """

    rank: int
    pivots: tuple[int, ...]
    free: tuple[int, ...]
    basis: list[list]

    @property
    def dim(self) -> int:
        return len(self.free)


def _coo_arrays(cols: list[dict[int, int]], nrows: int):
    ii, jj, vv = [], [], []
    for j, col in enumerate(cols):
        for i, v in col.items():
            ii.append(i)
            jj.append(j)
            vv.append(v)
    i_arr = np.array(ii, dtype=np.int64) if ii else np.zeros(0, dtype=np.int64)
    j_arr = np.array(jj, dtype=np.int64) if jj else np.zeros(0, dtype=np.int64)
    try:
        v_arr = np.array(vv, dtype=np.int64) if vv else np.zeros(0, dtype=np.int64)
        big = None
    except OverflowError:
        v_arr = None
        big = vv
    return i_arr, j_arr, v_arr, big


def _densify_mod(shape, i_arr, j_arr, v_arr, big, p: int) -> np.ndarray:
    dense = np.zeros(shape, dtype=np.int64)
    if i_arr.size:
        if v_arr is not None:
            dense[i_arr, j_arr] = v_arr % p
        else:
            dense[i_arr, j_arr] = np.array([x % p for x in big], dtype=np.int64)
    return dense


def _kernel_normal_form_mod(R: np.ndarray, rank: int, pivots: np.ndarray,
                            ncols: int, p: int):
    """Kernel basis mod p from an RREF, one vector per free column."""
    mask = np.ones(ncols, dtype=bool)
    mask[pivots] = False
    free = np.nonzero(mask)[0]
    K = np.zeros((len(free), ncols), dtype=np.int64)
    K[np.arange(len(free)), free] = 1
    if rank and len(free):
        K[:, pivots] = (-R[:rank][:, free].T) % p
    return free, K


def kernel_mod_p(cols: list[dict[int, int]], nrows: int, p: int) -> FieldKernel:
    ncols = len(cols)
    coo = _coo_arrays(cols, nrows)
    dense = _densify_mod((nrows, ncols), *coo, p)
    rank, pivots = rref_mod(dense, p)
    free, K = _kernel_normal_form_mod(dense, rank, pivots, ncols, p)
    basis = [[int(x) for x in K[k]] for k in range(len(free))]
    return FieldKernel(rank, tuple(int(c) for c in pivots),
                       tuple(int(f) for f in free), basis)


def _rat_reconstruct(a: int, m: int):
    """Unique n/d with n = a*d mod m, |n| <= sqrt(m/2), 0 < d <= sqrt(m/2)."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        return Fraction(-r1, -s1)
    return Fraction(r1, s1)


def _verify_integer_kernel_small(cols, vectors_int) -> bool:
    for w in vectors_int:
        acc: dict[int, int] = {}
        for j, wj in enumerate(w):
            if not wj:
                continue
            for i, a in cols[j].items():
                acc[i] = acc.get(i, 0) + a * wj
        if any(acc.values()):
            return False
    return True


def _verify_integer_kernel(cols, nrows: int, vectors_int: list[list[int]]) -> bool:
    """Exact check A @ W == 0 for integer vectors, via enough fresh primes."""
    ncols = len(cols)
    nnz = sum(len(c) for c in cols)
    if nnz * len(vectors_int) <= 400_000:
        return _verify_integer_kernel_small(cols, vectors_int)
    row_norm = max((sum(abs(v) for v in (
        [cols[j].get(i, 0) for j in range(ncols)])) for i in range(nrows)),
        default=0) if nrows * ncols <= 40_000 else None
    if row_norm is None:
        # row 1-norms without materialising rows
        sums = [0] * nrows
        for col in cols:
            for i, v in col.items():
                sums[i] += abs(v)
        row_norm = max(sums, default=0)
    wmax = max((max((abs(x) for x in w), default=0) for w in vectors_int),
               default=0)
    bound = 2 * row_norm * wmax + 1
    W_cols = len(vectors_int)
    coo = _coo_arrays(cols, nrows)
    modulus = 1
    for q in _VPRIMES:
        Aq = _densify_mod((nrows, ncols), *coo, q)
        Wq = np.array([[x % q for x in w] for w in vectors_int],
                      dtype=np.int64).T.reshape(ncols, W_cols)
        if np.any(matmul_mod(Aq, Wq, q)):
            return False
        modulus *= q
        if modulus > bound:
            return True
    raise ArithmeticError("verification prime budget exhausted")


def kernel_rational(cols: list[dict[int, int]], nrows: int) -> FieldKernel:
    """Certified kernel over Q of an integer matrix given by sparse columns."""
    ncols = len(cols)
    coo = _coo_arrays(cols, nrows)
    best = None          # ((-rank, pivots_tuple), ...) lower key = better
    modulus = 1
    residues: np.ndarray | None = None   # object array of CRT residues
    free: np.ndarray | None = None
    for p in PRIMES:
        dense = _densify_mod((nrows, ncols), *coo, p)
        rank, pivots = rref_mod(dense, p)
        key = (-rank, tuple(int(c) for c in pivots))
        if best is None or key < best:
            best = key
            f, K = _kernel_normal_form_mod(dense, rank, pivots, ncols, p)
            free = f
            residues = K.astype(object)
            modulus = p
        elif key == best:
            f, K = _kernel_normal_form_mod(dense, rank, pivots, ncols, p)
            # CRT combine: x = r1 + m1 * ((r2 - r1) * inv(m1) mod p)
            inv = pow(modulus % p, p - 2, p)
            diff = (K.astype(object) - residues) % p
            residues = residues + modulus * ((diff * inv) % p)
            modulus *= p
        else:
            continue
        rank_cert = -best[0]
        basis, ok = [], True
        denoms: list[int] = []
        for k in range(residues.shape[0]):
            vec = []
            for x in residues[k]:
                q = _rat_reconstruct(int(x), modulus)
                if q is None:
                    ok = False
                    break
                vec.append(q)
            if not ok:
                break
            basis.append(vec)
        if not ok:
            continue
        ints = []
        for vec in basis:
            den = 1
            for q in vec:
                den = den * q.denominator // gcd(den, q.denominator)
            ints.append([int(q * den) for q in vec])
        if _verify_integer_kernel(cols, nrows, ints):
            # len(basis) = ncols - rank_p verified independent kernel vectors
            # plus rank_p <= rank_Q forces rank_Q = rank_p.
            assert len(basis) == ncols - rank_cert
            return FieldKernel(rank_cert, best[1],
                               tuple(int(x) for x in free), basis)
    raise ArithmeticError("prime budget exhausted without certification")


def kernel_over_field(cols: list[dict[int, int]], nrows: int,
                      field: Ring) -> FieldKernel:
    """Dispatch kernel computation by field; entries must be integers."""
    if isinstance(field, PrimeField):
        return kernel_mod_p(cols, nrows, field.p)
    if field is QQ:
        return kernel_rational(cols, nrows)
    raise TypeError(f"{field} is not a supported field (use SNF over Z)")


def rank_over_field(cols: list[dict[int, int]], nrows: int, field: Ring) -> int:
    return kernel_over_field(cols, nrows, field).rank


def kernel_basis(m: ExactMatrix) -> list[list]:
    """Basis of the right null space of a matrix over Q or F_p.

    Vectors come in free-column normal form (a reduced echelon basis with
    deterministic pivot order).  Integer matrices are rejected: use
    :func:`integer_kernel`.
    """
    if m.ring is ZZ:
        raise TypeError("kernel over Z is not a field computation; use integer_kernel")
    if isinstance(m.ring, PrimeField):
        return kernel_mod_p(m.columns(), m.nrows, m.ring.p).basis
    # row scaling preserves the kernel; clear denominators row by row
    cols: list[dict[int, int]] = [dict() for _ in range(m.ncols)]
    for i, row in enumerate(m.entries):
        den = 1
        for x in row:
            fx = Fraction(x)
            den = den * fx.denominator // gcd(den, fx.denominator)
        for j, x in enumerate(row):
            if x:
                cols[j][i] = int(Fraction(x) * den)
    return kernel_rational(cols, m.nrows).basis


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------

def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(m: ExactMatrix | Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns (U, D, V) with U*m*V = D, D diagonal with d_i | d_{i+1}, and U, V
    unimodular.  Deterministic (minimal-absolute-value pivot, first position
    wins ties); no randomisation.
    """
    if isinstance(m, ExactMatrix):
        if m.ring is not ZZ:
            raise TypeError("SNF requires integer entries")
        a = [list(row) for row in m.entries]
    else:
        a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)
    t = 0
    while True:
        pos = None
        bestv = None
        for i in range(t, rows):
            ai = a[i]
            for j in range(t, cols):
                x = ai[j]
                if x and (bestv is None or abs(x) < bestv):
                    bestv = abs(x)
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            a[t], a[i0] = a[i0], a[t]
            U[t], U[i0] = U[i0], U[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
            for row in V:
                row[t], row[j0] = row[j0], row[t]
        while True:
            # clear column t
            restart = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                        U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        U[t], U[i] = U[i], U[t]
                        restart = True
                        break
            if restart:
                continue
            # clear row t
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        for row in V:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        for row in V:
                            row[t], row[j] = row[j], row[t]
                        restart = True
                        break
            if restart:
                continue
            # divisibility of the remaining block
            culprit = None
            d = a[t][t]
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % d:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[culprit])]
            U[t] = [x + y for x, y in zip(U[t], U[culprit])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
        if t == min(rows, cols):
            break
    D = a
    return U, D, V


def snf_diagonal(m) -> list[int]:
    _, D, _ = smith_normal_form(m)
    n = min(len(D), len(D[0]) if D else 0)
    return [D[i][i] for i in range(n)]


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the integer kernel {x : A x = 0}; the lattice is saturated."""
    a = [[int(x) for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return _identity(ncols)
    _, D, V = smith_normal_form(a)
    r = 0
    for i in range(min(nrows, ncols)):
        if D[i][i]:
            r += 1
    # kernel = V columns r..ncols-1
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


class LatticeSolver:
    """Column Hermite form of an integer matrix, for membership queries.

    Columns generate a lattice in Z^nrows; ``membership(v)`` returns witness
    coefficients over the original generators, or None.
    """

    def __init__(self, cols: list[dict[int, int]], nrows: int):
        self.nrows = nrows
        self.ngens = len(cols)
        work = [dict(c) for c in cols]
        trans = [{j: 1} for j in range(self.ngens)]  # column ops mirrored
        order: list[tuple[int, int]] = []            # (pivot row, column idx)
        used: set[int] = set()
        for i in range(nrows):
            active = [j for j in range(self.ngens)
                      if j not in used and work[j].get(i, 0)]
            if not active:
                continue
            while len(active) > 1:
                active.sort(key=lambda j: (abs(work[j][i]), j))
                j0, j1 = active[0], active[1]
                q = work[j1][i] // work[j0][i]
                _col_submul(work[j1], work[j0], q)
                _col_submul(trans[j1], trans[j0], q)
                if not work[j1].get(i, 0):
                    active.remove(j1)
            j = active[0]
            if work[j][i] < 0:
                work[j] = {k: -v for k, v in work[j].items()}
                trans[j] = {k: -v for k, v in trans[j].items()}
            used.add(j)
            order.append((i, j))
        self._work = work
        self._trans = trans
        self._order = order

    def membership(self, v: Sequence[int]):
        """Witness x with sum_j x_j * gen_j = v, or None."""
        r = {i: int(x) for i, x in enumerate(v) if x}
        combo: dict[int, int] = {}
        for i, j in self._order:
            x = r.get(i, 0)
            if not x:
                continue
            piv = self._work[j][i]
            if x % piv:
                return None
            q = x // piv
            _col_submul(r, self._work[j], q)
            _col_submul(combo, {j: -1}, q)  # combo[j] += q
        if any(r.values()):
            return None
        out = [0] * self.ngens
        for j, c in combo.items():
            for g, t in self._trans[j].items():
                out[g] += c * t
        return out


def _col_submul(target: dict[int, int], src: dict[int, int], q: int) -> None:
    if not q:
        return
    for k, v in src.items():
        x = target.get(k, 0) - q * v
        if x:
            target[k] = x
        elif k in target:
            del target[k]


def hermite_columns(rows: Sequence[Sequence[int]]):
    """Column-style Hermite data for an integer matrix given by rows."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    cols: list[dict[int, int]] = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x:
                cols[j][i] = int(x)
    return LatticeSolver(cols, nrows)


def image_lattice(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the lattice spanned by the columns of an integer matrix."""
    nrows = len(rows)
    solver = hermite_columns(rows)
    return [[col.get(i, 0) for i in range(nrows)]
            for _, j in solver._order
            for col in [solver._work[j]]]


def lattice_membership(v: Sequence[int], gens: Sequence[Sequence[int]]):
    """Is v in the Z-span of gens?  Returns (bool, witness-or-None).

    The witness w satisfies sum_j w_j * gens_j = v exactly (re-checked).
    """
    if not gens:
        return (not any(v)), ([] if not any(v) else None)
    n = len(v)
    if any(len(g) != n for g in gens):
        raise ValueError("length mismatch")
    cols = [{i: int(x) for i, x in enumerate(g) if x} for g in gens]
    witness = LatticeSolver(cols, n).membership(v)
    if witness is None:
        return False, None
    check = [0] * n
    for j, w in enumerate(witness):
        if w:
            for i, x in enumerate(gens[j]):
                check[i] += w * x
    assert check == [int(x) for x in v]
    return True, witness
