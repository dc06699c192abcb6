"""Exact arithmetic in the divided-power hyperalgebra over a prime field.

Elements are sparse maps from PBW monomial keys to mod-p coefficients.  A key
(e_exps, h_exps, f_exps) denotes prod E_beta^(a) * prod binom(H_i; b) * prod
F_beta^(c) in the fixed convex order.  Products straighten through the plain
power kernel over exact rationals; the divided-power bookkeeping (factorials
and Stirling conversions) happens here, with integrality asserted before
every mod-p reduction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import (
    BadPrime,
    ClosureFailure,
    ExponentCapExceeded,
    IntegralityViolation,
    NotTorusPart,
    SizeBound,
    WrongAtomKind,
    WrongTriangularPart,
)
from .pbw import kernel
from .rootdata import RootSystem, build_root_system, is_prime


def comb_z(n: int, k: int) -> int:
    """Binomial coefficient with arbitrary integer top."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


@lru_cache(maxsize=None)
def stirling1_row(n: int):
    """Coefficients of x(x-1)...(x-n+1) as a polynomial in x (signed)."""
    row = (1,)
    for m in range(n):
        row = tuple(
            (row[k - 1] if k else 0) - m * (row[k] if k < len(row) else 0)
            for k in range(len(row) + 1)
        )
    return row


@lru_cache(maxsize=None)
def stirling2_row(b: int):
    """S2(b, n) for n = 0..b:  x^b = sum_n S2(b,n) x(x-1)...(x-n+1)."""
    row = (1,)
    for _ in range(b):
        row = tuple(
            n * (row[n] if n < len(row) else 0)
            + (row[n - 1] if n else 0)
            for n in range(len(row) + 1)
        )
    return row


class HyperAlgebra:
    """Arithmetic context: one root system, one prime, one exponent cap."""

    def __init__(self, rs: RootSystem, p: int, cap: int | None = None):
        if not is_prime(p):
            raise BadPrime(f"p={p} is not prime")
        self.rs = rs
        self.p = p
        self.kern = kernel(rs)
        self.cap = p * p - 1 if cap is None else cap
        self.zero_e = (0,) * rs.npos
        self.zero_h = (0,) * rs.rank
        self.unit_key = (self.zero_e, self.zero_h, self.zero_e)
        self._bm = {}
        self._lift = {}
        self._sigma = {}
        self._decomp = {}

    # --------------------------------------------------------- elements

    def elt(self, terms) -> "HyperElt":
        out = {}
        for k, c in terms.items():
            c %= self.p
            if c:
                self.check_key(k)
                out[k] = c
        return HyperElt(self, out)

    def zero(self) -> "HyperElt":
        return HyperElt(self, {})

    def unit(self) -> "HyperElt":
        return HyperElt(self, {self.unit_key: 1})

    def check_key(self, key):
        a, b, c = key
        if len(a) != self.rs.npos or len(b) != self.rs.rank \
                or len(c) != self.rs.npos:
            raise ValueError(f"malformed key {key}")
        for n in (*a, *b, *c):
            if n < 0:
                raise ValueError(f"negative exponent in {key}")
            if n > self.cap:
                raise ExponentCapExceeded(f"exponent {n} > cap {self.cap}")

    def e_root(self, root, n: int) -> "HyperElt":
        """E_root^(n) for a positive root given by coordinates."""
        k = list(self.zero_e)
        k[self.rs.index[root]] = n
        return self.elt({(tuple(k), self.zero_h, self.zero_e): 1})

    def f_root(self, root, n: int) -> "HyperElt":
        k = list(self.zero_e)
        k[self.rs.index[root]] = n
        return self.elt({(self.zero_e, self.zero_h, tuple(k)): 1})

    def E(self, i: int, n: int) -> "HyperElt":
        """E_i^(n) for a 1-based simple index."""
        return self.e_root(self.rs.simple_roots[i - 1], n)

    def F(self, i: int, n: int) -> "HyperElt":
        return self.f_root(self.rs.simple_roots[i - 1], n)

    def Hbin(self, i: int, n: int) -> "HyperElt":
        """binom(H_i; n) for a 1-based simple index."""
        k = list(self.zero_h)
        k[i - 1] = n
        return self.elt({(self.zero_e, tuple(k), self.zero_e): 1})

    # ----------------------------------------------------- multiplication

    def _lift_key(self, key):
        """Divided key -> dict of plain kernel keys -> Fraction."""
        got = self._lift.get(key)
        if got is not None:
            return got
        a, b, c = key
        pref = Fraction(1)
        for n in a:
            pref /= factorial(n)
        for n in c:
            pref /= factorial(n)
        hparts = {self.zero_h: pref}
        for i in range(self.rs.rank):
            if not b[i]:
                continue
            row = stirling1_row(b[i])
            fb = factorial(b[i])
            new = {}
            for t, q in hparts.items():
                for k, s in enumerate(row):
                    if not s:
                        continue
                    kk = t[:i] + (k,) + t[i + 1:]
                    new[kk] = new.get(kk, Fraction(0)) + q * Fraction(s, fb)
            hparts = new
        out = {(a, h, c): q for h, q in hparts.items() if q}
        self._lift[key] = out
        return out

    def _pack_plain(self, pk):
        """Plain kernel key -> dict of divided keys -> int."""
        a, b, c = pk
        base = 1
        for n in a:
            base *= factorial(n)
        for n in c:
            base *= factorial(n)
        hparts = {self.zero_h: base}
        for i in range(self.rs.rank):
            if not b[i]:
                continue
            row = stirling2_row(b[i])
            new = {}
            for t, q in hparts.items():
                for n, s in enumerate(row):
                    if not s:
                        continue
                    kk = t[:i] + (n,) + t[i + 1:]
                    new[kk] = new.get(kk, 0) + q * s * factorial(n)
            hparts = new
        return {(a, h, c): q for h, q in hparts.items() if q}

    def mul_basis(self, k1, k2):
        """Product of two divided monomials; dict key -> mod-p coefficient."""
        got = self._bm.get((k1, k2))
        if got is not None:
            return got
        acc = {}
        for p1, q1 in self._lift_key(k1).items():
            for p2, q2 in self._lift_key(k2).items():
                q = q1 * q2
                for pk, n in self.kern.mul_key(p1, p2).items():
                    acc[pk] = acc.get(pk, Fraction(0)) + q * n
        mix = {}
        for pk, q in acc.items():
            if not q:
                continue
            for dk, m in self._pack_plain(pk).items():
                mix[dk] = mix.get(dk, Fraction(0)) + q * m
        out = {}
        for dk, q in mix.items():
            if q.denominator != 1:
                raise IntegralityViolation(
                    f"non-integral coefficient {q} at {dk}")
            v = q.numerator % self.p
            if v:
                self.check_key(dk)
                out[dk] = v
        self._bm[(k1, k2)] = out
        return out

    # ----------------------------------------------------------- antipode

    def _key_atoms(self, key):
        """Atom list of a key in its written order."""
        a, b, c = key
        atoms = []
        for j, n in enumerate(a):
            if n:
                atoms.append(("E", j, n))
        for i, n in enumerate(b):
            if n:
                atoms.append(("H", i, n))
        for j, n in enumerate(c):
            if n:
                atoms.append(("F", j, n))
        return atoms

    def _atom_elt(self, atom) -> "HyperElt":
        kind, i, n = atom
        if kind == "E":
            k = list(self.zero_e)
            k[i] = n
            return self.elt({(tuple(k), self.zero_h, self.zero_e): 1})
        if kind == "F":
            k = list(self.zero_e)
            k[i] = n
            return self.elt({(self.zero_e, self.zero_h, tuple(k)): 1})
        k = list(self.zero_h)
        k[i] = n
        return self.elt({(self.zero_e, tuple(k), self.zero_e): 1})

    def _sigma_atom(self, atom) -> "HyperElt":
        kind, i, n = atom
        if kind in ("E", "F"):
            e = self._atom_elt(atom)
            return e if n % 2 == 0 else e.scale(-1)
        # sigma(binom(H; n)) = binom(-H; n) = (-1)^n binom(H+n-1; n)
        sign = (-1) ** n
        terms = {}
        for k in range(n + 1):
            c = comb(n - 1, n - k) * sign
            if c % self.p:
                kk = list(self.zero_h)
                kk[i] = k
                terms[(self.zero_e, tuple(kk), self.zero_e)] = c % self.p
        return self.elt(terms)

    def sigma_key(self, key) -> "HyperElt":
        got = self._sigma.get(key)
        if got is not None:
            return got
        out = self.unit()
        for atom in reversed(self._key_atoms(key)):
            out = out * self._sigma_atom(atom)
        self._sigma[key] = out
        return out


@lru_cache(maxsize=None)
def algebra(kind: str, p: int, cap: int | None = None) -> HyperAlgebra:
    return HyperAlgebra(build_root_system(kind), p, cap)


class HyperElt:
    """Sparse element of the hyperalgebra; immutable by convention."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: HyperAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = (out.get(k, 0) + c) % self.alg.p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return HyperElt(self.alg, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: int):
        c %= self.alg.p
        if not c:
            return HyperElt(self.alg, {})
        return HyperElt(
            self.alg, {k: (v * c) % self.alg.p for k, v in self.terms.items()}
        )

    def __mul__(self, other):
        if self.alg is not other.alg:
            raise ValueError("elements from different algebras")
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                cc = c1 * c2
                for k, c in self.alg.mul_basis(k1, k2).items():
                    v = (out.get(k, 0) + cc * c) % self.alg.p
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return HyperElt(self.alg, out)

    def __eq__(self, other):
        return (
            isinstance(other, HyperElt)
            and self.alg is other.alg
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_torus(self) -> bool:
        return all(
            not any(a) and not any(c) for a, _, c in self.terms
        )

    def in_part(self, side: str) -> bool:
        """side "plus": pure E keys; "minus": pure F keys."""
        for a, b, c in self.terms:
            if any(b):
                return False
            if side == "plus" and any(c):
                return False
            if side == "minus" and any(a):
                return False
        return True

    def is_borel(self) -> bool:
        return all(not any(c) for _, _, c in self.terms)

    def weight(self):
        """Weight if homogeneous, else None."""
        w = None
        for k in self.terms:
            kw = self.alg.kern.key_weight(k)
            if w is None:
                w = kw
            elif w != kw:
                return None
        return w if w is not None else (0,) * self.alg.rs.rank

    def __repr__(self):
        if not self.terms:
            return "HyperElt(0)"
        return f"HyperElt({len(self.terms)} terms, p={self.alg.p})"


# -------------------------------------------------------------- module ops

def mult(a: HyperElt, b: HyperElt) -> HyperElt:
    return a * b


def counit(a: HyperElt) -> int:
    return a.terms.get(a.alg.unit_key, 0)


def _splits(n):
    return [(i, n - i) for i in range(n + 1)]


def comult(a: HyperElt) -> "TensorElt":
    """Coproduct; every divided-power atom splits with coefficient 1."""
    alg = a.alg
    out = {}
    for key, c in a.terms.items():
        parts = [((), ())]
        for slot in (*key[0], *key[1], *key[2]):
            parts = [
                (l + (i,), r + (j,))
                for l, r in parts
                for i, j in _splits(slot)
            ]
        np_, rk = alg.rs.npos, alg.rs.rank
        for l, r in parts:
            kl = (l[:np_], l[np_:np_ + rk], l[np_ + rk:])
            kr = (r[:np_], r[np_:np_ + rk], r[np_ + rk:])
            k = (kl, kr)
            v = (out.get(k, 0) + c) % alg.p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return TensorElt(alg, out)


def antipode(a: HyperElt) -> HyperElt:
    out = a.alg.zero()
    for key, c in a.terms.items():
        out = out + a.alg.sigma_key(key).scale(c)
    return out


def frobenius(a: HyperElt) -> HyperElt:
    """Componentwise exponent division by p; non-divisible terms die."""
    alg = a.alg
    p = alg.p
    out = {}
    for (ka, kb, kc), c in a.terms.items():
        if all(n % p == 0 for n in (*ka, *kb, *kc)):
            k = (
                tuple(n // p for n in ka),
                tuple(n // p for n in kb),
                tuple(n // p for n in kc),
            )
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return HyperElt(alg, out)


# ------------------------------------------------------------- gen words

def normalize_word(alg: HyperAlgebra, word) -> HyperElt:
    """Multiply out a GenWord (tuples ("E"|"F"|"H", i, n), i 1-based)."""
    out = alg.unit()
    for kind, i, n in word:
        if kind == "E":
            out = out * alg.E(i, n)
        elif kind == "F":
            out = out * alg.F(i, n)
        elif kind == "H":
            out = out * alg.Hbin(i, n)
        else:
            raise WrongAtomKind(f"unknown atom kind {kind!r}")
    return out


def _stretch_word(alg, word):
    return tuple((kind, i, alg.p * n) for kind, i, n in word)


def fr_prime_word(alg: HyperAlgebra, word) -> HyperElt:
    if any(kind != "E" for kind, _, _ in word):
        raise WrongAtomKind("Fr' words may contain only E atoms")
    return normalize_word(alg, _stretch_word(alg, word))


def fr_prime_minus_word(alg: HyperAlgebra, word) -> HyperElt:
    if any(kind != "F" for kind, _, _ in word):
        raise WrongAtomKind("Fr'- words may contain only F atoms")
    return normalize_word(alg, _stretch_word(alg, word))


def fr_prime_zero_word(alg: HyperAlgebra, word) -> HyperElt:
    if any(kind != "H" for kind, _, _ in word):
        raise WrongAtomKind("Fr'0 words may contain only H atoms")
    return normalize_word(alg, _stretch_word(alg, word))


def fr_prime_pbw(a: HyperElt, side: str) -> HyperElt:
    """Componentwise exponent stretch n -> pn on pure E (or F) elements."""
    if not a.in_part(side):
        raise WrongTriangularPart(f"element is not in the {side} part")
    alg = a.alg
    out = {}
    for (ka, kb, kc), c in a.terms.items():
        k = (
            tuple(alg.p * n for n in ka),
            kb,
            tuple(alg.p * n for n in kc),
        )
        alg.check_key(k)
        out[k] = c
    return HyperElt(alg, out)


# ---------------------------------------------- exact morphism extension

def _weight_space_keys(alg, mvec, side):
    """All pure e (or f) exponent tuples with root-coordinate sum mvec."""
    rs = alg.rs
    keys = []

    def rec(pos, remaining, acc):
        if pos == rs.npos:
            if all(x == 0 for x in remaining):
                keys.append(tuple(acc))
            return
        root = rs.pos_roots[pos]
        top = min(
            (remaining[i] // root[i] for i in range(rs.rank) if root[i]),
        )
        for n in range(top + 1):
            rec(
                pos + 1,
                tuple(remaining[i] - n * root[i] for i in range(rs.rank)),
                acc + [n],
            )

    rec(0, mvec, [])
    return keys


def _gen_words(rank, mvec, kind):
    """Words of simple divided-power atoms with total coordinates mvec.

    Consecutive atoms never repeat an index (merged words span the same
    space), so enumeration is finite; yielded shortest first.
    """
    queue = [((), mvec, -1)]
    while queue:
        nxt = []
        for word, rem, last in queue:
            if all(x == 0 for x in rem):
                yield word
                continue
            for i in range(rank):
                if i == last or not rem[i]:
                    continue
                for n in range(1, rem[i] + 1):
                    nxt.append((
                        word + ((kind, i + 1, n),),
                        tuple(
                            rem[j] - (n if j == i else 0)
                            for j in range(rank)
                        ),
                        i,
                    ))
        queue = nxt


def _work_algebra(alg, need: int) -> HyperAlgebra:
    """Same (kind, p) with a cap at least `need` for internal staging."""
    if need <= alg.cap:
        return alg
    return algebra(alg.rs.kind, alg.p, need)


def _solve_decomposition(alg, key, side):
    """Write a pure e/f monomial as a mod-p combination of simple words."""
    got = alg._decomp.get((key, side))
    if got is not None:
        return got
    p = alg.p
    a, _, c = key
    exps = a if side == "plus" else c
    rs = alg.rs
    mvec = tuple(
        sum(exps[k] * rs.pos_roots[k][i] for k in range(rs.npos))
        for i in range(rs.rank)
    )
    # any slot exponent in a normal form of weight p*mvec is <= p*sum(mvec)
    work = _work_algebra(alg, sum(mvec) * p)
    space = _weight_space_keys(alg, mvec, side)
    col = {k: i for i, k in enumerate(space)}
    kind = "E" if side == "plus" else "F"

    def key_of(full):
        ka, _, kc = full
        return ka if side == "plus" else kc

    # incremental Gaussian elimination mod p, tracking word combinations
    pivots = {}
    target = [0] * len(space)
    target[col[exps]] = 1

    def reduce(vec, combo):
        for j in range(len(space)):
            if vec[j] and j in pivots:
                pv, pc = pivots[j]
                f = vec[j] * pow(pv[j], -1, p) % p
                vec = [(x - f * y) % p for x, y in zip(vec, pv)]
                combo = combo + [(w, -f * q % p) for w, q in pc]
        return vec, combo

    seen = 0
    for word in _gen_words(rs.rank, mvec, kind):
        seen += 1
        if seen > 200000:
            raise SizeBound("word enumeration exceeded limit")
        elt = normalize_word(work, word)
        vec = [0] * len(space)
        for full, cc in elt.terms.items():
            vec[col[key_of(full)]] = cc
        vec, combo = reduce(vec, [(word, 1)])
        lead = next((j for j, x in enumerate(vec) if x), None)
        if lead is not None:
            pivots[lead] = (vec, combo)
        if len(pivots) == len(space):
            break
    tv, tc = reduce(target, [])
    if any(tv):
        raise ClosureFailure(f"key {key} not in simple-word span")
    out = {}
    for w, q in tc:
        q = -q % p
        if q:
            out[w] = (out.get(w, 0) + q) % p
    out = tuple((w, q) for w, q in out.items() if q)
    alg._decomp[(key, side)] = out
    return out


def fr_prime_exact(a: HyperElt, side: str) -> HyperElt:
    """The algebra-morphism extension of the exponent stretch.

    Decomposes each key into simple divided-power words mod p and stretches
    atom-by-atom; this is the actual morphism, which differs from the
    componentwise rule on some non-simple keys.
    """
    if not a.in_part(side):
        raise WrongTriangularPart(f"element is not in the {side} part")
    alg = a.alg
    stretch = fr_prime_word if side == "plus" else fr_prime_minus_word
    acc = {}
    for key, c in a.terms.items():
        exps = key[0] if side == "plus" else key[2]
        mvec = tuple(
            sum(exps[k] * alg.rs.pos_roots[k][i] for k in range(alg.rs.npos))
            for i in range(alg.rs.rank)
        )
        work = _work_algebra(alg, sum(mvec) * alg.p)
        for word, q in _solve_decomposition(alg, key, side):
            for k2, c2 in stretch(work, word).terms.items():
                v = (acc.get(k2, 0) + c * q * c2) % alg.p
                if v:
                    acc[k2] = v
                else:
                    acc.pop(k2, None)
    return alg.elt(acc)


# --------------------------------------------------------------- mu0, phi

@lru_cache(maxsize=None)
def _mu0_terms(kind: str, p: int):
    alg = algebra(kind, p)
    from .rootdata import is_good_prime
    if not is_good_prime(alg.rs, p):
        raise BadPrime(f"p={p} is not good for {kind}")
    rank = alg.rs.rank
    terms = {}

    def rec(i, acc, coeff):
        if i == rank:
            terms[(alg.zero_e, tuple(acc), alg.zero_e)] = coeff % p
            return
        for k in range(p):
            # binom(H_i - 1; p-1) = sum_k (-1)^(p-1-k) binom(H_i; k)
            rec(i + 1, acc + [k], coeff * (-1) ** (p - 1 - k))

    rec(0, [], 1)
    return {k: v for k, v in terms.items() if v}


def mu0(alg: HyperAlgebra) -> HyperElt:
    """The torus idempotent prod_i binom(H_i - 1; p - 1)."""
    m = HyperElt(alg, dict(_mu0_terms(alg.rs.kind, alg.p)))
    return m


def phi_word(alg: HyperAlgebra, word) -> HyperElt:
    """Multiplicative section of Fr on a GenWord; unit of the image is mu0."""
    out = mu0(alg)
    for atom in word:
        kind, i, n = atom
        if kind not in ("E", "F", "H"):
            raise WrongAtomKind(f"unknown atom kind {kind!r}")
        stretched = normalize_word(alg, ((kind, i, alg.p * n),))
        out = out * (stretched * mu0(alg))
    return out


def character(lam, a: HyperElt) -> int:
    """Torus character c_lambda on a pure H element."""
    if not a.is_torus():
        raise NotTorusPart("character needs a pure torus element")
    p = a.alg.p
    total = 0
    for (_, b, _), c in a.terms.items():
        v = c
        for i, n in enumerate(b):
            v = v * comb_z(lam[i], n) % p
        total = (total + v) % p
    return total


# ------------------------------------------------------------ E0, F0, etc

def e0(alg: HyperAlgebra) -> HyperElt:
    k = ((alg.p - 1,) * alg.rs.npos, alg.zero_h, alg.zero_e)
    return alg.elt({k: 1})


def f0(alg: HyperAlgebra) -> HyperElt:
    k = (alg.zero_e, alg.zero_h, (alg.p - 1,) * alg.rs.npos)
    return alg.elt({k: 1})


def small_spanning_set(alg: HyperAlgebra, part: str):
    """Monomials with all exponents < p in one triangular part."""
    from itertools import product as iproduct
    p = alg.p
    out = []
    if part == "torus":
        for b in iproduct(range(p), repeat=alg.rs.rank):
            out.append(alg.elt({(alg.zero_e, b, alg.zero_e): 1}))
        return out
    if part not in ("n", "n-"):
        raise ValueError(f"unknown part {part!r}")
    for a in iproduct(range(p), repeat=alg.rs.npos):
        if part == "n":
            out.append(alg.elt({(a, alg.zero_h, alg.zero_e): 1}))
        else:
            out.append(alg.elt({(alg.zero_e, alg.zero_h, a): 1}))
    return out


def adjoint(x: HyperElt, y: HyperElt, side: str = "plus") -> HyperElt:
    """Conjugation action X*Y = sum X_(1) Y sigma(X_(2)) of a Borel part.

    side "plus": X may carry E and H atoms and the image must stay pure e;
    side "minus": X may carry F and H atoms and the image must stay pure f.
    """
    off = 2 if side == "plus" else 0
    if any(any(k[off]) for k in x.terms):
        raise WrongTriangularPart("adjoint operator must be Borel")
    alg = x.alg
    out = alg.zero()
    for (k1, k2), c in comult(x).terms.items():
        left = HyperElt(alg, {k1: 1}) * y
        out = out + (left * alg.sigma_key(k2)).scale(c)
    for k in out.terms:
        if any(k[1]) or any(k[off]):
            raise ClosureFailure(f"adjoint image left the {side} part")
    return out


def weight_of(alg: HyperAlgebra, key):
    return alg.kern.key_weight(key)


# ---------------------------------------------------------- tensor terms

class TensorElt:
    """Finite sum of pure tensors with mod-p coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: HyperAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = (out.get(k, 0) + c) % self.alg.p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return TensorElt(self.alg, out)

    def scale(self, c: int):
        c %= self.alg.p
        if not c:
            return TensorElt(self.alg, {})
        return TensorElt(
            self.alg, {k: (v * c) % self.alg.p for k, v in self.terms.items()}
        )

    def __mul__(self, other):
        """Componentwise product (a x b)(c x d) = ac x bd."""
        alg = self.alg
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                cc = c1 * c2
                for ka, ca in alg.mul_basis(a1, a2).items():
                    for kb, cb in alg.mul_basis(b1, b2).items():
                        k = (ka, kb)
                        v = (out.get(k, 0) + cc * ca * cb) % alg.p
                        if v:
                            out[k] = v
                        else:
                            out.pop(k, None)
        return TensorElt(self.alg, out)

    def __eq__(self, other):
        return (
            isinstance(other, TensorElt)
            and self.alg is other.alg
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"TensorElt({len(self.terms)} terms, p={self.alg.p})"


# ------------------------------------------------------------- text form

def elt_to_text(a: HyperElt) -> str:
    if not a.terms:
        return "0"
    lines = []
    for (ka, kb, kc), c in sorted(a.terms.items()):
        ea = ",".join(str(n) for n in ka)
        hb = ",".join(str(n) for n in kb)
        fc = ",".join(str(n) for n in kc)
        lines.append(f"E[{ea}] H[{hb}] F[{fc}] : {c}")
    return "\n".join(lines)


def elt_from_text(alg: HyperAlgebra, text: str) -> HyperElt:
    terms = {}
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line == "0":
            continue
        head, _, coeff = line.rpartition(":")
        parts = head.split()
        if len(parts) != 3:
            raise ValueError(f"bad element line {line!r}")
        vecs = []
        for tag, chunk in zip(("E", "H", "F"), parts):
            if not chunk.startswith(tag + "[") or not chunk.endswith("]"):
                raise ValueError(f"bad element line {line!r}")
            body = chunk[len(tag) + 1:-1]
            vecs.append(
                tuple(int(x) for x in body.split(",")) if body else ()
            )
        key = (vecs[0], vecs[1], vecs[2])
        terms[key] = (terms.get(key, 0) + int(coeff)) % alg.p
    return alg.elt(terms)
