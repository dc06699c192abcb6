"""The Steinberg module over a prime field, with its invariant pairing.

The module is the simple module whose lowest weight is -(p-1)*rho.  It is
realized concretely: spanning vectors E^(a).v- are indexed by divided-power
exponents, the contravariant Gram form (computed inside the hyperalgebra)
cuts out the simple quotient exactly, and a per-weight Gram solve decomposes
any vector over the chosen basis.  The dimension count p^npos certifies that
the quotient is the whole module.  An invariant bilinear pairing eta is then
solved from the generator identities, certified one-dimensional, and feeds
the distinguished matrix coefficient psi used by the splitting section.
"""

from __future__ import annotations

import json
from itertools import product as iproduct

from .dualring import GradingMap, poly_monomial, project_part, rootsum
from .errors import (
    ClosureFailure,
    NonUniqueForm,
    SideMismatch,
    SizeBound,
    WrongTriangularPart,
)
from .hyperalg import (
    HyperAlgebra,
    HyperElt,
    _weight_space_keys,
    algebra,
    comb_z,
    comult,
    e0,
    f0,
)
from .rootdata import RootSystem, build_root_system, require_good_prime

DEFAULT_MAX_DIM = 2048


def _two_delta(rs: RootSystem, p: int):
    """Simple-root coordinates of twice the lowest-weight depth."""
    tot = [0] * rs.rank
    for r in rs.pos_roots:
        for i in range(rs.rank):
            tot[i] += r[i]
    return tuple((p - 1) * t for t in tot)


def _char_low(p: int, h) -> int:
    """Lowest-weight torus character on an H-binomial exponent tuple."""
    v = 1
    for n in h:
        if n:
            v = v * comb_z(1 - p, n) % p
    return v


def _gram_matrix(walg: HyperAlgebra, nu, cands, grams) -> list:
    """Pairings <E^(a).v-, E^(b).v-> of the spanning vectors, mod p.

    The leading atom of the row exponent moves across the pairing as its F
    counterpart, which contracts the entry against the block one weight
    down; grams must already hold every lower weight.
    """
    p = walg.p
    rs = walg.rs
    n = len(cands)
    if not any(any(a) for a in cands):
        return [[1]]
    g = [[0] * n for _ in range(n)]
    by_atom: dict = {}
    for i, a in enumerate(cands):
        s = next(t for t in range(rs.npos) if a[t])
        by_atom.setdefault((s, a[s]), []).append(i)
    for (s, m), rows in by_atom.items():
        fx = tuple(m if t == s else 0 for t in range(rs.npos))
        fkey = (walg.zero_e, walg.zero_h, fx)
        downs = []
        for b in cands:
            acc: dict = {}
            prod = walg.mul_basis(fkey, (b, walg.zero_h, walg.zero_e))
            for (x, h, y), c in prod.items():
                if any(y):
                    continue
                ch = _char_low(p, h)
                if ch:
                    acc[x] = (acc.get(x, 0) + c * ch) % p
            downs.append(acc)
        root = rs.pos_roots[s]
        sub_cands, sub_pos, sub_g = grams[
            tuple(nu[i] - m * root[i] for i in range(rs.rank))]
        for i in rows:
            a = cands[i]
            rowg = sub_g[sub_pos[a[:s] + (0,) + a[s + 1:]]]
            for j, acc in enumerate(downs):
                v = 0
                for x, c in acc.items():
                    v += c * rowg[sub_pos[x]]
                g[i][j] = v % p
    for i in range(n):
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise ClosureFailure("contravariant form is not symmetric")
    return g


def _greedy_pivots(gram, p: int) -> list:
    """Indices of a maximal independent set of Gram rows, first-come."""
    pivots = []
    red = {}
    width = len(gram)
    for i in range(width):
        r = [x % p for x in gram[i]]
        lead = None
        for j in range(width):
            if not r[j]:
                continue
            piv = red.get(j)
            if piv is None:
                lead = j
                break
            c = r[j]
            for t in range(j, width):
                r[t] = (r[t] - c * piv[t]) % p
        if lead is not None:
            inv = pow(r[lead], -1, p)
            red[lead] = [(x * inv) % p for x in r]
            pivots.append(i)
    return pivots


def _invert(p: int, m) -> list:
    n = len(m)
    a = [list(row) + [int(i == j) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] % p:
                piv = r
                break
        if piv is None:
            raise ClosureFailure("pivot Gram block is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [(x * inv) % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [(x - c * y) % p for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class StModule:
    """Basis, generator actions and invariant pairing of the module."""

    __slots__ = ("walg", "dim", "gen_cap", "basis", "basis_weights",
                 "f_plus_index", "f_minus_index", "gen_actions", "eta",
                 "_spaces", "_act_memo")

    def __repr__(self):
        return (f"StModule({self.walg.rs.kind!r}, p={self.walg.p}, "
                f"dim={self.dim})")


def build_st(rs, p: int, gen_cap: int = 2,
             max_dim: int = DEFAULT_MAX_DIM) -> StModule:
    """Build the module and certify dim = p^npos.

    gen_cap bounds the stored generator actions: matrices for E(i,n) and
    F(i,n) with 1 <= n < p*gen_cap are kept on the module.
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    require_good_prime(rs, p)
    target = p ** rs.npos
    if target > max_dim:
        raise SizeBound(f"dim {target} exceeds the bound {max_dim}")
    td = _two_delta(rs, p)
    cap = max(sum(td) + p * gen_cap, p * p - 1)
    walg = algebra(rs.kind, p, cap)

    st = StModule.__new__(StModule)
    st.walg = walg
    st.gen_cap = gen_cap
    st._act_memo = {}

    basis = []
    weights = []
    spaces = {}
    grams: dict = {}
    nus = sorted(iproduct(*(range(t + 1) for t in td)),
                 key=lambda v: (sum(v), v))
    for nu in nus:
        cands = sorted(_weight_space_keys(walg, nu, "plus"))
        if not cands:
            continue
        gram = _gram_matrix(walg, nu, cands, grams)
        grams[nu] = (cands, {a: i for i, a in enumerate(cands)}, gram)
        pivots = _greedy_pivots(gram, p)
        if not pivots:
            continue
        ginv = _invert(p, [[gram[i][j] for j in pivots] for i in pivots])
        spaces[nu] = {
            "cands": cands,
            "pos": {a: i for i, a in enumerate(cands)},
            "gram": gram,
            "pivots": pivots,
            "ginv": ginv,
            "start": len(basis),
        }
        wt = tuple(-(p - 1) + rs.pairing(nu, i) for i in range(rs.rank))
        for i in pivots:
            basis.append(cands[i])
            weights.append(wt)
    if len(basis) != target:
        raise ClosureFailure(
            f"basis closed at {len(basis)} vectors, expected {target}")

    st.dim = target
    st.basis = basis
    st.basis_weights = weights
    st._spaces = spaces
    zero_nu = (0,) * rs.rank
    if len(spaces[zero_nu]["pivots"]) != 1 or len(spaces[td]["pivots"]) != 1:
        raise ClosureFailure("extreme weight spaces are not lines")
    st.f_minus_index = spaces[zero_nu]["start"]
    st.f_plus_index = spaces[td]["start"]

    acts = {}
    for ks in ("E", "F"):
        for i in range(1, rs.rank + 1):
            spos = rs.index[rs.simple_roots[i - 1]]
            for n in range(1, p * gen_cap):
                ex = tuple(n if t == spos else 0 for t in range(rs.npos))
                if ks == "E":
                    key = (ex, walg.zero_h, walg.zero_e)
                else:
                    key = (walg.zero_e, walg.zero_h, ex)
                col = {}
                for k in range(target):
                    img = _act_key(st, key, k)
                    if img:
                        col[k] = img
                acts[(ks, i, n)] = col
    st.gen_actions = acts
    st.eta = build_eta(st)
    return st


def _act_key(st: StModule, key, k: int) -> dict:
    """One PBW monomial applied to basis vector k, in basis coordinates."""
    got = st._act_memo.get((key, k))
    if got is not None:
        return got
    walg = st.walg
    p = walg.p
    bkey = (st.basis[k], walg.zero_h, walg.zero_e)
    acc = {}
    for (x, h, y), c in walg.mul_basis(key, bkey).items():
        if any(y):
            continue
        ch = _char_low(p, h)
        if ch:
            acc[x] = (acc.get(x, 0) + c * ch) % p
    groups = {}
    for x, c in acc.items():
        if c:
            groups.setdefault(rootsum(walg.rs, x), {})[x] = c
    out = {}
    for nu, grp in groups.items():
        sp = st._spaces.get(nu)
        if sp is None:
            continue
        pos, gram, piv = sp["pos"], sp["gram"], sp["pivots"]
        rhs = []
        for bp in piv:
            s = 0
            for x, c in grp.items():
                s += c * gram[pos[x]][bp]
            rhs.append(s % p)
        ginv = sp["ginv"]
        for r in range(len(piv)):
            v = sum(ginv[r][t] * rhs[t] for t in range(len(piv))) % p
            if v:
                out[sp["start"] + r] = v
    st._act_memo[(key, k)] = out
    return out


def basis_vector(st: StModule, k: int) -> dict:
    return {k: 1}


def act_elt(st: StModule, z: HyperElt, vec: dict) -> dict:
    """Apply a hyperalgebra element to a vector in basis coordinates."""
    if z.alg.rs.kind != st.walg.rs.kind or z.alg.p != st.walg.p:
        raise ValueError("element from a different arithmetic context")
    p = st.walg.p
    out: dict = {}
    for key, c in z.terms.items():
        for k, vk in vec.items():
            cc = c * vk % p
            if not cc:
                continue
            for j, w in _act_key(st, key, k).items():
                v = (out.get(j, 0) + cc * w) % p
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
    return out


def eta_pair(st: StModule, u: dict, w: dict) -> int:
    """Evaluate the invariant pairing on coordinate vectors."""
    p = st.walg.p
    tot = 0
    for j, cu in u.items():
        row = st.eta.get(j)
        if not row:
            continue
        for k, cw in w.items():
            c = row.get(k)
            if c:
                tot += cu * cw * c
    return tot % p


def _pair_with(eta: dict, p: int, u: dict, w: dict) -> int:
    tot = 0
    for j, cu in u.items():
        row = eta.get(j)
        if not row:
            continue
        for k, cw in w.items():
            c = row.get(k)
            if c:
                tot += cu * cw * c
    return tot % p


def build_eta(st: StModule) -> dict:
    """Solve eta(Z.v, w) = eta(v, sigma(Z).w) over all stored generators.

    The torus identities force each entry to sit on a compatible weight
    pair; those are the only unknowns.  The E and F identities then cut the
    space down; anything but a line raises NonUniqueForm.  The result is
    scaled so that the F0-lowered highest vector pairs to 1 with the
    E0-raised lowest vector, and is returned as sparse rows.
    """
    p = st.walg.p
    dim = st.dim
    wts = st.basis_weights
    nmax = max(n for (_, _, n) in st.gen_actions)
    rng = range(1, nmax + 1)
    sig = {}
    neg = {}
    for mu in set(wts):
        sig[mu] = tuple(comb_z(c, n) % p for c in mu for n in rng)
        neg[mu] = tuple(comb_z(-c, n) % p for c in mu for n in rng)
    uid = {}
    for j in range(dim):
        sj = sig[wts[j]]
        for k in range(dim):
            if sj == neg[wts[k]]:
                uid[(j, k)] = len(uid)

    red: dict = {}
    for (_, _, n), col in st.gen_actions.items():
        sgn = -1 if n % 2 else 1
        for kv in range(dim):
            av = col.get(kv, {})
            for kw in range(dim):
                aw = col.get(kw, {})
                if not av and not aw:
                    continue
                row: dict = {}
                for j, c in av.items():
                    u = uid.get((j, kw))
                    if u is not None:
                        row[u] = (row.get(u, 0) + c) % p
                for j, c in aw.items():
                    u = uid.get((kv, j))
                    if u is not None:
                        row[u] = (row.get(u, 0) - sgn * c) % p
                r = {u: c for u, c in row.items() if c}
                # pivot rows touch only their own lead and free columns, so
                # one pass over the pivot columns of r reduces it fully
                for u in [u for u in r if u in red]:
                    c = r.pop(u)
                    for u2, v in red[u].items():
                        if u2 == u:
                            continue
                        x = (r.get(u2, 0) - c * v) % p
                        if x:
                            r[u2] = x
                        else:
                            r.pop(u2, None)
                if not r:
                    continue
                lead = min(r)
                inv = pow(r[lead], -1, p)
                r = {u: (v * inv) % p for u, v in r.items()}
                for r2 in red.values():
                    c = r2.get(lead)
                    if c:
                        r2.pop(lead)
                        for u, v in r.items():
                            if u == lead:
                                continue
                            x = (r2.get(u, 0) - c * v) % p
                            if x:
                                r2[u] = x
                            else:
                                r2.pop(u, None)
                red[lead] = r

    nfree = len(uid) - len(red)
    if nfree != 1:
        raise NonUniqueForm(
            f"invariant pairing space has dimension {nfree}")
    free = next(u for u in range(len(uid)) if u not in red)
    sol = {free: 1}
    for lead, r in red.items():
        sol[lead] = -r.get(free, 0) % p

    eta: dict = {}
    for (j, k), u in uid.items():
        c = sol.get(u, 0)
        if c:
            eta.setdefault(j, {})[k] = c

    top = act_elt(st, f0(st.walg), {st.f_plus_index: 1})
    bot = act_elt(st, e0(st.walg), {st.f_minus_index: 1})
    s = _pair_with(eta, p, top, bot)
    if not s:
        raise NonUniqueForm("pairing vanishes on the distinguished vectors")
    inv = pow(s, -1, p)
    return {j: {k: (c * inv) % p for k, c in row.items()}
            for j, row in eta.items()}


# ------------------------------------------------------------------- psi

def psi_eval(st: StModule, grading: GradingMap, v_idx: int, w_idx: int,
             X: HyperElt, Y: HyperElt) -> int:
    """The matrix coefficient sum eta(X_(1).v, top(Y).X_(2).w).

    X must be pure f and Y pure e; top projects Y onto chart degree
    (p-1)*npos through the plus-side grading.
    """
    if not X.in_part("minus"):
        raise WrongTriangularPart("first evaluation slot must be pure f")
    if not Y.in_part("plus"):
        raise WrongTriangularPart("second evaluation slot must be pure e")
    if grading.side != "plus":
        raise SideMismatch("psi projects through the plus-side grading")
    p = st.walg.p
    top = (p - 1) * st.walg.rs.npos
    piY = project_part(grading, Y, top)
    tot = 0
    for (k1, k2), c in comult(X).terms.items():
        v1 = _act_key(st, k1, v_idx)
        if not v1:
            continue
        w1 = _act_key(st, k2, w_idx)
        if not w1:
            continue
        w2 = act_elt(st, piY, w1)
        if not w2:
            continue
        tot = (tot + c * eta_pair(st, v1, w2)) % p
    return tot


def psi_coefficients(st: StModule, gx: GradingMap, gy: GradingMap) -> dict:
    """Chart coefficients {(xexp, yexp): c} of the distinguished section.

    The section is psi evaluated on the highest and lowest vectors; the
    result is expressed over the chart monomials of the two gradings, so a
    key pairs a minus-side exponent with a plus-side one.
    """
    if gx.side != "minus" or gy.side != "plus":
        raise SideMismatch("psi_coefficients needs a minus and a plus chart")
    walg = st.walg
    p = walg.p
    rs = walg.rs
    top = (p - 1) * rs.npos
    zh, ze = walg.zero_h, walg.zero_e
    plain: dict = {}
    for nu in st._spaces:
        exps = sorted(_weight_space_keys(walg, nu, "plus"))
        us = {}
        for A in exps:
            u = _act_key(st, (ze, zh, A), st.f_plus_index)
            if u:
                us[A] = u
        if not us:
            continue
        for B in exps:
            eB = HyperElt(walg, {(B, zh, ze): 1})
            piB = project_part(gy, eB, top)
            if not piB.terms:
                continue
            w = act_elt(st, piB, {st.f_minus_index: 1})
            if not w:
                continue
            for A, u in us.items():
                c = eta_pair(st, u, w)
                if c:
                    plain[(A, B)] = c
    if gx.is_trivial() and gy.is_trivial():
        return plain
    dxm: dict = {}
    dym: dict = {}
    out: dict = {}
    for (A, B), c in plain.items():
        da = dxm.get(A)
        if da is None:
            da = dxm[A] = gx.decompose(poly_monomial(gx.alg, "minus", A))
        db = dym.get(B)
        if db is None:
            db = dym[B] = gy.decompose(poly_monomial(gy.alg, "plus", B))
        for A2, ca in da.items():
            for B2, cb in db.items():
                k = (A2, B2)
                v = (out.get(k, 0) + c * ca * cb) % p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return out


# ------------------------------------------------------------- json form

def st_to_json(st: StModule) -> str:
    obj = {
        "kind": st.walg.rs.kind,
        "p": st.walg.p,
        "gen_cap": st.gen_cap,
        "dim": st.dim,
        "basis": [list(a) for a in st.basis],
        "basis_weights": [list(w) for w in st.basis_weights],
        "f_plus_index": st.f_plus_index,
        "f_minus_index": st.f_minus_index,
        "gen_actions": [
            [ks, i, n,
             [[k, sorted([j, c] for j, c in col[k].items())]
              for k in sorted(col)]]
            for (ks, i, n), col in sorted(st.gen_actions.items())
        ],
        "eta": [[j, sorted([k, c] for k, c in row.items())]
                for j, row in sorted(st.eta.items())],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def st_from_json(text: str) -> StModule:
    """Rebuild from the stored parameters and check the stored data."""
    obj = json.loads(text)
    st = build_st(obj["kind"], obj["p"], gen_cap=obj["gen_cap"])
    if json.loads(st_to_json(st)) != obj:
        raise ValueError("stored module data does not match a fresh build")
    return st
