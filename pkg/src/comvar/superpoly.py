"""Free graded-commutative polynomial engine.

An algebra is specified by an ordered list of generators, each with a
cohomological degree, a parity (which must equal the degree mod 2) and an
optional (u-count, v-count) biweight.  Monomials are stored as a packed pair
``(even exponent tuple, odd support bitmask)``; products of odd generators are
normalised into increasing generator order with the Koszul sign, and odd
squares vanish.  Coefficients are plain Python ints or Fractions, so all
arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Generator", "AlgebraSpec", "AlgebraElement", "AlgebraHom",
    "NotDivisible", "graded_basis", "exact_divide", "koszul_sign",
]


class NotDivisible(Exception):
    """Raised by exact division; carries the offending remainder."""

    def __init__(self, remainder: "AlgebraElement"):
        super().__init__(f"not divisible; remainder {remainder}")
        self.remainder = remainder


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    biweight: tuple[int, int] | None = None

    @property
    def parity(self) -> int:
        return self.degree & 1

    @property
    def charge(self) -> int:
        # u-count minus v-count; 0 for generators without a biweight
        return 0 if self.biweight is None else self.biweight[0] - self.biweight[1]


class AlgebraSpec:
    """Free graded-commutative algebra on named generators, in a fixed
    canonical order that all sign normalisations refer to."""

    def __init__(self, generators: Iterable[Generator]):
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for g in self.generators:
            if g.degree < 0:
                raise ValueError(f"negative degree generator {g.name}")
            # parity is forced by the degree; biweighted odd generators must
            # carry odd total weight only through their degree, nothing to do
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self.even_slots = tuple(i for i, g in enumerate(self.generators)
                                if g.parity == 0)
        self.odd_slots = tuple(i for i, g in enumerate(self.generators)
                               if g.parity == 1)
        self._even_pos = {gi: k for k, gi in enumerate(self.even_slots)}
        self._odd_pos = {gi: b for b, gi in enumerate(self.odd_slots)}
        self.even_degrees = tuple(self.generators[i].degree for i in self.even_slots)
        self.odd_degrees = tuple(self.generators[i].degree for i in self.odd_slots)
        self.zero_key = (tuple(0 for _ in self.even_slots), 0)
        self._basis_cache: dict[int, list] = {}
        self._odd_degree_cache: dict[int, int] = {0: 0}

    # -- monomial helpers ---------------------------------------------------

    def monomial_degree(self, key) -> int:
        ev, odd = key
        d = 0
        for e, dg in zip(ev, self.even_degrees):
            if e:
                d += e * dg
        if odd:
            d += self._odd_mask_degree(odd)
        return d

    def _odd_mask_degree(self, mask: int) -> int:
        cached = self._odd_degree_cache.get(mask)
        if cached is None:
            b = (mask & -mask).bit_length() - 1
            cached = self.odd_degrees[b] + self._odd_mask_degree(mask & (mask - 1))
            self._odd_degree_cache[mask] = cached
        return cached

    def monomial_biweight(self, key):
        """Total (u, v) biweight, or None if a factor has no biweight."""
        ev, odd = key
        a = b = 0
        for slot, e in zip(self.even_slots, ev):
            if e:
                bw = self.generators[slot].biweight
                if bw is None:
                    return None
                a += e * bw[0]
                b += e * bw[1]
        m = odd
        while m:
            bit = (m & -m).bit_length() - 1
            bw = self.generators[self.odd_slots[bit]].biweight
            if bw is None:
                return None
            a += bw[0]
            b += bw[1]
            m &= m - 1
        return (a, b)

    def monomial_charge(self, key) -> int:
        ev, odd = key
        c = 0
        for slot, e in zip(self.even_slots, ev):
            if e:
                c += e * self.generators[slot].charge
        m = odd
        while m:
            bit = (m & -m).bit_length() - 1
            c += self.generators[self.odd_slots[bit]].charge
            m &= m - 1
        return c

    def monomial_seq(self, key) -> tuple[int, ...]:
        """Monomial as its sorted tuple of generator indices with multiplicity."""
        ev, odd = key
        seq = []
        for gi, g in enumerate(self.generators):
            if g.parity == 0:
                e = ev[self._even_pos[gi]]
                if e:
                    seq.extend([gi] * e)
            elif odd >> self._odd_pos[gi] & 1:
                seq.append(gi)
        return tuple(seq)

    def sort_key(self, key):
        seq = self.monomial_seq(key)
        return (len(seq), seq)

    def monomial_str(self, key) -> str:
        ev, odd = key
        parts = []
        for gi, g in enumerate(self.generators):
            if g.parity == 0:
                e = ev[self._even_pos[gi]]
                if e == 1:
                    parts.append(g.name)
                elif e > 1:
                    parts.append(f"{g.name}^{e}")
            elif odd >> self._odd_pos[gi] & 1:
                parts.append(g.name)
        return "*".join(parts) if parts else "1"

    # -- element constructors -------------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self, coeff=1) -> "AlgebraElement":
        if not coeff:
            return self.zero()
        return AlgebraElement(self, {self.zero_key: coeff})

    def gen(self, name: str) -> "AlgebraElement":
        gi = self.index[name]
        g = self.generators[gi]
        ev = list(self.zero_key[0])
        odd = 0
        if g.parity == 0:
            ev[self._even_pos[gi]] = 1
        else:
            odd = 1 << self._odd_pos[gi]
        return AlgebraElement(self, {(tuple(ev), odd): 1})

    def monomial(self, names: Sequence[str], coeff=1) -> "AlgebraElement":
        out = self.one(coeff)
        for nm in names:
            out = out * self.gen(nm)
        return out


def koszul_sign(mask1: int, mask2: int) -> int:
    """Sign of sorting the concatenation of two increasing odd supports."""
    s = 0
    m = mask2
    while m:
        j = (m & -m).bit_length() - 1
        s += (mask1 >> (j + 1)).bit_count()
        m &= m - 1
    return -1 if s & 1 else 1


class AlgebraElement:
    """Sparse signed sum of monomials with exact coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: AlgebraSpec, terms: dict):
        self.alg = alg
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.alg is other.alg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {self.alg.zero_key: other}

    def __hash__(self):
        return hash((id(self.alg), frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.one(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            x = out.get(k, 0) + c
            if x:
                out[k] = x
            elif k in out:
                del out[k]
        return AlgebraElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.one(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        if self.alg is not other.alg:
            raise ValueError("elements of different algebras")
        out: dict = {}
        get = out.get
        for (e1, o1), c1 in self.terms.items():
            for (e2, o2), c2 in other.terms.items():
                if o1 & o2:
                    continue  # odd square
                c = c1 * c2
                if o1 and o2 and koszul_sign(o1, o2) < 0:
                    c = -c
                key = (tuple(a + b for a, b in zip(e1, e2)), o1 | o2)
                x = get(key, 0) + c
                if x:
                    out[key] = x
                elif key in out:
                    del out[key]
        return AlgebraElement(self.alg, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if not c:
            return self.alg.zero()
        return AlgebraElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.alg.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- grading -------------------------------------------------------------

    def degree_terms(self) -> dict[int, "AlgebraElement"]:
        pieces: dict[int, dict] = {}
        for k, c in self.terms.items():
            pieces.setdefault(self.alg.monomial_degree(k), {})[k] = c
        return {d: AlgebraElement(self.alg, t) for d, t in sorted(pieces.items())}

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {self.alg.monomial_degree(k) for k in self.terms}
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def degree(self) -> int | None:
        """Degree if homogeneous and nonzero, else None."""
        degs = {self.alg.monomial_degree(k) for k in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def biweight_terms(self) -> dict:
        pieces: dict = {}
        for k, c in self.terms.items():
            pieces.setdefault(self.alg.monomial_biweight(k), {})[k] = c
        return {w: AlgebraElement(self.alg, t) for w, t in pieces.items()}

    def map_coefficients(self, f) -> "AlgebraElement":
        out = {}
        for k, c in self.terms.items():
            x = f(c)
            if x:
                out[k] = x
        return AlgebraElement(self.alg, out)

    # -- output ----------------------------------------------------------------

    def sorted_terms(self):
        """Terms in canonical order: degree descending, then few factors
        first, then lexicographic on the generator sequence."""
        alg = self.alg
        return sorted(self.terms.items(),
                      key=lambda kv: (-alg.monomial_degree(kv[0]),)
                      + alg.sort_key(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for key, c in self.sorted_terms():
            mon = self.alg.monomial_str(key)
            if mon == "1":
                body = str(abs(c) if isinstance(c, int) else abs(c))
            elif abs(c) == 1:
                body = mon
            else:
                body = f"{abs(c)}*{mon}"
            neg = c < 0
            if not chunks:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(chunks)

    __repr__ = __str__


class AlgebraHom:
    """Algebra map determined by generator images; multiplicative and
    sign-correct by construction.  Images must preserve degree and parity."""

    def __init__(self, source: AlgebraSpec, target: AlgebraSpec,
                 images: dict[str, AlgebraElement]):
        self.source = source
        self.target = target
        self.images = {}
        for g in source.generators:
            img = images[g.name]
            if img.alg is not target:
                raise ValueError(f"image of {g.name} lies in the wrong algebra")
            if img and not img.is_homogeneous(g.degree):
                raise ValueError(f"image of {g.name} is not of degree {g.degree}")
            self.images[g.name] = img
        self._memo: dict = {source.zero_key: target.one()}

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.alg is not self.source:
            raise ValueError("element not in the source algebra")
        out = self.target.zero()
        for key, c in x.terms.items():
            out = out + self._monomial_image(key).scale(c)
        return out

    def _monomial_image(self, key) -> AlgebraElement:
        img = self._memo.get(key)
        if img is not None:
            return img
        src = self.source
        ev, odd = key
        # factor out the first generator in canonical order; odd factors are
        # stored increasing, so no sign is introduced
        for pos, e in enumerate(ev):
            if e:
                gi = src.even_slots[pos]
                rest = (ev[:pos] + (e - 1,) + ev[pos + 1:], odd)
                break
        else:
            bit = (odd & -odd).bit_length() - 1
            gi = src.odd_slots[bit]
            rest = (ev, odd & (odd - 1))
        img = self.images[src.generators[gi].name] * self._monomial_image(rest)
        self._memo[key] = img
        return img


def graded_basis(alg: AlgebraSpec, d: int) -> list:
    """All monomial keys of total degree d, canonically ordered.

    Finite because every generator has positive degree; a degree-0 generator
    is rejected.
    """
    if d < 0:
        return []
    cached = alg._basis_cache.get(d)
    if cached is not None:
        return cached
    if any(g.degree == 0 for g in alg.generators):
        raise ValueError("graded_basis requires all generator degrees positive")
    n_even = len(alg.even_slots)
    out: list = []

    def rec_even(pos: int, rem: int, ev: list[int], odd_budget_start: int):
        if pos == n_even:
            rec_odd(0, rem, tuple(ev), 0)
            return
        dg = alg.even_degrees[pos]
        for e in range(rem // dg + 1):
            ev.append(e)
            rec_even(pos + 1, rem - e * dg, ev, odd_budget_start)
            ev.pop()

    def rec_odd(bit: int, rem: int, ev: tuple, mask: int):
        if rem == 0:
            out.append((ev, mask))
            return
        if bit == len(alg.odd_slots):
            return
        rec_odd(bit + 1, rem, ev, mask)
        dg = alg.odd_degrees[bit]
        if dg <= rem:
            rec_odd(bit + 1, rem - dg, ev, mask | (1 << bit))

    rec_even(0, d, [], 0)
    out.sort(key=alg.sort_key)
    alg._basis_cache[d] = out
    return out


def exact_divide(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Quotient q with q*y = x; y must be nonzero, even and purely even.

    Raises NotDivisible with the failing remainder as witness.  Coefficient
    arithmetic stays in Z when both inputs are integral and the division is
    exact entrywise; otherwise Fractions propagate.
    """
    alg = x.alg
    if not y.terms:
        raise ZeroDivisionError("division by zero element")
    for (_, odd) in y.terms:
        if odd:
            raise ValueError("divisor must lie in the purely even subalgebra")
    y_terms = sorted(((ev, c) for (ev, _), c in y.terms.items()), reverse=True)
    ley, lcy = y_terms[0]
    # split x by odd support and divide the even parts independently
    quot: dict = {}
    by_odd: dict[int, dict] = {}
    for (ev, odd), c in x.terms.items():
        by_odd.setdefault(odd, {})[ev] = c
    for odd, poly in sorted(by_odd.items()):
        rem = dict(poly)
        while rem:
            lex = max(rem)
            cx = rem[lex]
            diff = tuple(a - b for a, b in zip(lex, ley))
            ok = all(e >= 0 for e in diff)
            q = None
            if ok:
                if isinstance(cx, Fraction) or isinstance(lcy, Fraction):
                    q = Fraction(cx) / Fraction(lcy)
                elif cx % lcy == 0:
                    q = cx // lcy
                else:
                    ok = False
            if not ok:
                raise NotDivisible(AlgebraElement(
                    alg, {(ev, odd): c for ev, c in rem.items()}))
            quot[(diff, odd)] = q
            for ey, cy in y_terms:
                k = tuple(a + b for a, b in zip(diff, ey))
                v = rem.get(k, 0) - q * cy
                if v:
                    rem[k] = v
                elif k in rem:
                    del rem[k]
    return AlgebraElement(alg, quot)
