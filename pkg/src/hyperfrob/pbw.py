"""PBW straightening over the integers for plain-power monomials.

A kernel key is (e_exps, h_exps, f_exps): exponent tuples over the positive
roots in convex order (e and f parts) and over the simple indices (h part),
denoting e^a * h^b * f^c with plain (not divided) powers.  All products are
straightened into this E-H-F normal order with exact int coefficients;
divided-power bookkeeping happens one layer up.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .rootdata import RootSystem, build_root_system, vadd


def _bump(t, j, k=1):
    return t[:j] + (t[j] + k,) + t[j + 1:]


def _tadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


class PBWKernel:
    """Straightening engine bound to one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.npos = rs.npos
        self.rank = rs.rank
        self.zero_e = (0,) * rs.npos
        self.zero_h = (0,) * rs.rank
        self.unit = (self.zero_e, self.zero_h, self.zero_e)
        # value of each positive root on each coroot h_i
        self.root_h = tuple(
            tuple(rs.pairing(b, i) for i in range(rs.rank))
            for b in rs.pos_roots
        )
        self._ins_e = {}
        self._ins_f = {}
        self._cross = {}
        self._shift = {}
        self._mul = {}

    # --------------------------------------------------- one-sided inserts

    def insert_e(self, a, j):
        """e^a * e_j as a dict of e-exponent tuples -> int."""
        got = self._ins_e.get((a, j))
        if got is not None:
            return got
        m = max((k for k, v in enumerate(a) if v), default=-1)
        if m <= j:
            out = {_bump(a, j): 1}
        else:
            ap = _bump(a, m, -1)
            out = {}
            for t, c in self.insert_e(ap, j).items():
                k = _bump(t, m)
                out[k] = out.get(k, 0) + c
            s = vadd(self.rs.pos_roots[m], self.rs.pos_roots[j])
            if s in self.rs.index:
                n = self.rs.nconst[(self.rs.pos_roots[m], self.rs.pos_roots[j])]
                for t, c in self.insert_e(ap, self.rs.index[s]).items():
                    out[t] = out.get(t, 0) + n * c
            out = {k: v for k, v in out.items() if v}
        self._ins_e[(a, j)] = out
        return out

    def insert_f(self, c, j):
        """f^c * f_j as a dict of f-exponent tuples -> int."""
        got = self._ins_f.get((c, j))
        if got is not None:
            return got
        m = max((k for k, v in enumerate(c) if v), default=-1)
        if m <= j:
            out = {_bump(c, j): 1}
        else:
            cp = _bump(c, m, -1)
            out = {}
            for t, co in self.insert_f(cp, j).items():
                k = _bump(t, m)
                out[k] = out.get(k, 0) + co
            s = vadd(self.rs.pos_roots[m], self.rs.pos_roots[j])
            if s in self.rs.index:
                n = -self.rs.nconst[(self.rs.pos_roots[m], self.rs.pos_roots[j])]
                for t, co in self.insert_f(cp, self.rs.index[s]).items():
                    out[t] = out.get(t, 0) + n * co
            out = {k: v for k, v in out.items() if v}
        self._ins_f[(c, j)] = out
        return out

    # ------------------------------------------------------- f past e

    def cross_fe(self, c, j):
        """f^c * e_j in normal form as a dict of full keys -> int."""
        got = self._cross.get((c, j))
        if got is not None:
            return got
        m = max((k for k, v in enumerate(c) if v), default=-1)
        if m < 0:
            e = _bump(self.zero_e, j)
            out = {(e, self.zero_h, self.zero_e): 1}
            self._cross[(c, j)] = out
            return out
        cp = _bump(c, m, -1)
        out = {}
        # f^c e_j = (f^cp e_j) f_m + f^cp [f_m, e_j]
        for (a, b, t), co in self.cross_fe(cp, j).items():
            for t2, c2 in self.insert_f(t, m).items():
                k = (a, b, t2)
                out[k] = out.get(k, 0) + co * c2
        br = self.rs.bracket_ef(self.rs.pos_roots[j], self.rs.pos_roots[m])
        if br is not None:
            if br[0] == "h":
                # [f_m, e_j] = -sum k_i h_i; f^cp h_i = (h_i + s_i) f^cp
                coeffs = br[1]
                svec = self.wvec(cp)
                const = 0
                for i, ki in enumerate(coeffs):
                    if not ki:
                        continue
                    k = (self.zero_e, _bump(self.zero_h, i), cp)
                    out[k] = out.get(k, 0) - ki
                    const -= ki * svec[i]
                if const:
                    k = (self.zero_e, self.zero_h, cp)
                    out[k] = out.get(k, 0) + const
            elif br[0] == "f":
                n = -br[2]
                for t, co in self.insert_f(cp, self.rs.index[br[1]]).items():
                    k = (self.zero_e, self.zero_h, t)
                    out[k] = out.get(k, 0) + n * co
            else:
                n = -br[2]
                for key, co in self.cross_fe(cp, self.rs.index[br[1]]).items():
                    out[key] = out.get(key, 0) + n * co
        out = {k: v for k, v in out.items() if v}
        self._cross[(c, j)] = out
        return out

    # ------------------------------------------------------ assembly

    def wvec(self, exps):
        """Values of sum exps_g * g on each h_i."""
        return tuple(
            sum(exps[k] * self.root_h[k][i] for k in range(self.npos))
            for i in range(self.rank)
        )

    def expand_shift(self, b, w):
        """prod (h_i + w_i)^{b_i} as a dict of h-exponent tuples -> int."""
        got = self._shift.get((b, w))
        if got is not None:
            return got
        out = {self.zero_h: 1}
        for i in range(self.rank):
            if not b[i]:
                continue
            new = {}
            for k in range(b[i] + 1):
                co = comb(b[i], k) * w[i] ** (b[i] - k)
                if not co:
                    continue
                for t, c in out.items():
                    kk = _bump(t, i, k)
                    new[kk] = new.get(kk, 0) + c * co
            out = new
        self._shift[(b, w)] = out
        return out

    def mul_e(self, a1, a2):
        out = {a1: 1}
        for j in range(self.npos):
            for _ in range(a2[j]):
                new = {}
                for t, c in out.items():
                    for t2, cc in self.insert_e(t, j).items():
                        new[t2] = new.get(t2, 0) + c * cc
                out = new
        return out

    def mul_f(self, c1, c2):
        out = {c1: 1}
        for j in range(self.npos):
            for _ in range(c2[j]):
                new = {}
                for t, c in out.items():
                    for t2, cc in self.insert_f(t, j).items():
                        new[t2] = new.get(t2, 0) + c * cc
                out = new
        return out

    def mul_key(self, k1, k2):
        """Product of two normal-order keys, straightened; dict key -> int."""
        got = self._mul.get((k1, k2))
        if got is not None:
            return got
        (a1, b1, c1), (a2, b2, c2) = k1, k2
        # stage 1: f^{c1} * e^{a2} with e-atoms fed left to right
        part = {(self.zero_e, self.zero_h, c1): 1}
        for j in range(self.npos):
            for _ in range(a2[j]):
                new = {}
                for (a, b, t), co in part.items():
                    for (ax, bx, tx), cx in self.cross_fe(t, j).items():
                        emul = self.mul_e(a, ax)
                        shift = self.expand_shift(b, self.wvec(ax))
                        for ae, ce in emul.items():
                            for hb, ch in shift.items():
                                k = (ae, _tadd(hb, bx), tx)
                                new[k] = new.get(k, 0) + co * cx * ce * ch
                part = new
        # stage 2: e^{a1} h^{b1} * part * h^{b2} f^{c2}
        out = {}
        for (a, b, t), co in part.items():
            emul = self.mul_e(a1, a)
            hs1 = self.expand_shift(b1, self.wvec(a))
            hs2 = self.expand_shift(b2, self.wvec(t))
            fmul = self.mul_f(t, c2)
            hmid = {}
            for h1, ch1 in hs1.items():
                for h2, ch2 in hs2.items():
                    k = _tadd(_tadd(h1, b), h2)
                    hmid[k] = hmid.get(k, 0) + ch1 * ch2
            for ae, ce in emul.items():
                for hh, ch in hmid.items():
                    for fe, cf in fmul.items():
                        k = (ae, hh, fe)
                        v = out.get(k, 0) + co * ce * ch * cf
                        out[k] = v
        out = {k: v for k, v in out.items() if v}
        self._mul[(k1, k2)] = out
        return out

    def key_weight(self, key):
        """Weight of a monomial key in fundamental coordinates."""
        a, _, c = key
        return tuple(
            sum((a[k] - c[k]) * self.root_h[k][i] for k in range(self.npos))
            for i in range(self.rank)
        )


@lru_cache(maxsize=None)
def _kernel_for(kind: str) -> PBWKernel:
    return PBWKernel(build_root_system(kind))


def kernel(rs: RootSystem) -> PBWKernel:
    return _kernel_for(rs.kind)
