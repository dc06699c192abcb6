"""Rank <= 2 root systems with exact Chevalley structure constants.

Roots are tuples of ints in simple-root coordinates; weights are tuples of
ints in fundamental-weight coordinates.  The structure constant table covers
every ordered pair of roots (positive or negative) whose sum is a root.
Signs follow the extraspecial-pair convention: extraspecial pairs get +,
all remaining special pairs are forced by the Jacobi identity, negative and
mixed pairs follow from antisymmetry and the zero-sum cyclic relation.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import product

from .errors import BadPrime, ClosureFailure, IntegralityViolation, SizeBound

KINDS = ("A1", "A2", "B2", "G2")

# cartan[i][j] = value of alpha_j on the coroot h_i
CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "G2": ((2, -3), (-1, 2)),
}

# d[i]*cartan[i][j] must be symmetric; d[i] = (alpha_i, alpha_i)/2
SYMMETRIZER = {
    "A1": (1,),
    "A2": (1, 1),
    "B2": (2, 1),
    "G2": (1, 3),
}

BAD_PRIMES = {
    "A1": (),
    "A2": (),
    "B2": (2,),
    "G2": (2, 3),
}


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def pair(lam, i: int) -> int:
    """Value of a weight on the i-th simple coroot (i is 1-based)."""
    if not 1 <= i <= len(lam):
        raise IndexError(f"simple-root index {i} out of range 1..{len(lam)}")
    return lam[i - 1]


class RootSystem:
    """Immutable root-system data for one of A1, A2, B2, G2."""

    def __init__(self, kind: str):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.cartan = CARTAN[kind]
        self.d = SYMMETRIZER[kind]
        self.rank = len(self.cartan)
        self.simple_roots = tuple(
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        )
        self.roots = self._close_roots()
        self.pos_roots = self._convex_order()
        self.npos = len(self.pos_roots)
        self.index = {r: k for k, r in enumerate(self.pos_roots)}
        self._check_convexity()
        self.nconst = self._build_constants()
        self.coroot = {b: self._coroot_coeffs(b) for b in self.pos_roots}
        self._check_jacobi_full()

    # ---------------------------------------------------------------- roots

    def _close_roots(self):
        """All roots: Weyl-orbit closure of the simple roots."""
        seen = set(self.simple_roots)
        queue = list(seen)
        while queue:
            r = queue.pop()
            for i in range(self.rank):
                s = vsub(r, tuple(self.pairing(r, i) * x
                                  for x in self.simple_roots[i]))
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
        return frozenset(seen)

    def _convex_order(self):
        pos = [r for r in self.roots if all(c >= 0 for c in r)]
        if self.rank == 1:
            return tuple(sorted(pos))

        def cmp(a, b):
            # by angle from alpha_1 toward alpha_2
            return a[1] * b[0] - a[0] * b[1]

        return tuple(sorted(pos, key=cmp_to_key(cmp)))

    def _check_convexity(self):
        for i in range(self.npos):
            for k in range(i + 1, self.npos):
                s = vadd(self.pos_roots[i], self.pos_roots[k])
                if s in self.index and not i < self.index[s] < k:
                    raise ClosureFailure(f"order not convex at {s}")

    def pairing(self, root, i: int) -> int:
        """Value of a root (simple-root coords) on h_i (0-based)."""
        return sum(c * self.cartan[i][j] for j, c in enumerate(root))

    def root_weight(self, root):
        """Fundamental-weight coordinates of a root."""
        return tuple(self.pairing(root, i) for i in range(self.rank))

    def norm2(self, root) -> int:
        return sum(
            root[i] * root[j] * self.d[i] * self.cartan[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def height(self, root) -> int:
        return sum(root)

    @property
    def rho(self):
        return (1,) * self.rank

    # ------------------------------------------------------- constants

    def _down_string(self, a, b) -> int:
        """Largest q with b - q*a a root (string runs through all of Delta)."""
        q = 0
        cur = vsub(b, a)
        while cur in self.roots:
            q += 1
            cur = vsub(cur, a)
        return q

    def _build_constants(self):
        """Full N table over ordered pairs of roots with root sum."""
        order = {r: (self.height(r), self.index[r]) for r in self.pos_roots}
        special = []
        for a in self.pos_roots:
            for b in self.pos_roots:
                if order[a] < order[b] and vadd(a, b) in self.index:
                    special.append((a, b))
        extra = {}
        for a, b in special:
            g = vadd(a, b)
            if g not in extra or order[a] < order[extra[g][0]]:
                extra[g] = (a, b)
        extraspecial = set(extra.values())
        unknown = [pr for pr in special if pr not in extraspecial]
        if len(unknown) > 12:
            raise SizeBound("too many undetermined sign choices")

        base = {pr: self._down_string(*pr) + 1 for pr in special}
        solutions = []
        for signs in product((1, -1), repeat=len(unknown)):
            cand = {}
            for pr in special:
                s = 1 if pr in extraspecial else signs[unknown.index(pr)]
                cand[pr] = s * base[pr]
                cand[(pr[1], pr[0])] = -s * base[pr]
            if self._jacobi_pos_ok(cand):
                solutions.append(dict(cand))
        if len(solutions) != 1:
            raise ClosureFailure(
                f"{len(solutions)} sign assignments satisfy Jacobi")
        nconst = solutions[0]

        # negative pairs: N(-a,-b) = -N(a,b)
        for (a, b), n in list(nconst.items()):
            nconst[(vneg(a), vneg(b))] = -n

        # mixed pairs via the zero-sum cyclic relation
        for a in self.pos_roots:
            for b in self.pos_roots:
                if a == b:
                    continue
                diff = vsub(a, b)
                if diff not in self.roots:
                    continue
                if all(c >= 0 for c in diff):
                    n = Fraction(self.norm2(diff), self.norm2(a)) \
                        * nconst[(diff, b)]
                else:
                    g = vneg(diff)
                    n = Fraction(self.norm2(g), self.norm2(b)) \
                        * nconst[(g, a)]
                if n.denominator != 1:
                    raise IntegralityViolation(
                        f"mixed constant for ({a},{vneg(b)}) not integral")
                nconst[(a, vneg(b))] = int(n)
                nconst[(vneg(b), a)] = -int(n)
        return nconst

    def _jacobi_pos_ok(self, cand) -> bool:
        """Jacobi identity on triples of distinct positive roots."""
        def n(a, b):
            return cand.get((a, b), 0) if vadd(a, b) in self.index else 0

        roots = self.pos_roots
        for x in roots:
            for y in roots:
                for z in roots:
                    t = 0
                    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                        if vadd(a, b) in self.index:
                            t += n(a, b) * n(vadd(a, b), c)
                    if t != 0:
                        return False
        return True

    def _coroot_coeffs(self, b):
        """h_b = sum coeff_i * h_i for a positive root b."""
        n2 = self.norm2(b)
        out = []
        for i in range(self.rank):
            c = Fraction(2 * b[i] * self.d[i], n2)
            if c.denominator != 1:
                raise IntegralityViolation(f"coroot of {b} not integral")
            out.append(int(c))
        return tuple(out)

    def ee(self, a, b) -> int:
        """N(a, b) for roots a, b (0 when a + b is not a root)."""
        return self.nconst.get((a, b), 0)

    def bracket_ef(self, a, b):
        """[e_a, f_b] for positive roots a, b.

        Returns ("h", coeffs), ("e", root, n), ("f", root, n), or None.
        """
        if a == b:
            return ("h", self.coroot[a])
        diff = vsub(a, b)
        if diff not in self.roots:
            return None
        n = self.nconst[(a, vneg(b))]
        if all(c >= 0 for c in diff):
            return ("e", diff, n)
        return ("f", vneg(diff), n)

    # ------------------------------------------------------- validation

    def _basis_bracket(self, x, y):
        """Bracket of basis symbols ("r", root) / ("h", i); dict valued."""
        if x[0] == "h" and y[0] == "h":
            return {}
        if x[0] == "h":
            c = self.pairing(y[1], x[1])
            return {y: c} if c else {}
        if y[0] == "h":
            c = -self.pairing(x[1], y[1])
            return {x: c} if c else {}
        a, b = x[1], y[1]
        s = vadd(a, b)
        if all(c == 0 for c in s):
            pos = a if all(c >= 0 for c in a) else b
            sign = 1 if pos == a else -1
            return {("h", i): sign * c
                    for i, c in enumerate(self.coroot[pos]) if c}
        if s in self.roots:
            n = self.nconst[(a, b)]
            return {("r", s): n} if n else {}
        return {}

    def _check_jacobi_full(self):
        """Jacobi over every triple of Chevalley basis symbols."""
        basis = [("r", r) for r in sorted(self.roots)]
        basis += [("h", i) for i in range(self.rank)]

        def br_lin(dct, z):
            out = {}
            for s, c in dct.items():
                for s2, c2 in self._basis_bracket(s, z).items():
                    out[s2] = out.get(s2, 0) + c * c2
            return out

        for x in basis:
            for y in basis:
                xy = self._basis_bracket(x, y)
                for z in basis:
                    acc = br_lin(xy, z)
                    for s, c in br_lin(self._basis_bracket(y, z), x).items():
                        acc[s] = acc.get(s, 0) + c
                    for s, c in br_lin(self._basis_bracket(z, x), y).items():
                        acc[s] = acc.get(s, 0) + c
                    if any(v != 0 for v in acc.values()):
                        raise ClosureFailure(
                            f"Jacobi fails on {x}, {y}, {z}")

    # ------------------------------------------------------ serialization

    def to_json(self) -> dict:
        sc = sorted(
            [list(a), list(b), n] for (a, b), n in self.nconst.items()
        )
        return {
            "kind": self.kind,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(r) for r in self.pos_roots],
            "structure_constants": sc,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RootSystem":
        rs = build_root_system(obj["kind"])
        if rs.to_json() != obj:
            raise ValueError("serialized root system does not match build")
        return rs

    def __repr__(self):
        return f"RootSystem({self.kind})"


@lru_cache(maxsize=None)
def build_root_system(kind: str) -> RootSystem:
    return RootSystem(kind)


def is_good_prime(rs: RootSystem, p: int) -> bool:
    return is_prime(p) and p not in BAD_PRIMES[rs.kind]


def require_good_prime(rs: RootSystem, p: int) -> None:
    if not is_good_prime(rs, p):
        raise BadPrime(f"p={p} is not a good prime for {rs.kind}")
