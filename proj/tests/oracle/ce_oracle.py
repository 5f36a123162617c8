#!/usr/bin/env python3
"""Independent oracle for the golden numbers of the built-in nilmanifold examples.

Plain row reduction over Q(i) on the full exterior algebra of a complex coframe.
Uses only the standard library; shares no code with the C++ engine.

    python3 ce_oracle.py            # prints every table as JSON
"""
import itertools
import json
from fractions import Fraction as F


class G:
    """Gaussian rational a + b i."""
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = F(re)
        self.im = F(im)

    def __add__(self, o):
        return G(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return G(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return G(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        n = o.re * o.re + o.im * o.im
        return G((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __neg__(self):
        return G(-self.re, -self.im)

    def conj(self):
        return G(self.re, -self.im)

    def iszero(self):
        return self.re == 0 and self.im == 0


def rank(rows):
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].iszero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and not m[i][c].iszero():
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0} as a list of column vectors."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].iszero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [a / p for a in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].iszero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [G() for _ in range(ncols)]
        v[free] = G(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(v)
    return basis


def matmul(a, b, inner):
    # a: list of rows (r x inner), b: list of columns (inner-vectors)
    return [[sum((a[i][k] * col[k] for k in range(inner)), G()) for col in b] for i in range(len(a))]


class Coframe:
    """dψ^a for generators 0..m-1 (φ) and m..2m-1 (φ̄); each a dict {(b,c): coeff} with b<c."""

    def __init__(self, m, dphi):
        self.m = m
        self.d = {}
        for a in range(m):
            self.d[a] = dict(dphi.get(a, {}))
            bar = {}
            for (b, c), v in self.d[a].items():
                bb = b + m if b < m else b - m
                cc = c + m if c < m else c - m
                s = 1
                if bb > cc:
                    bb, cc, s = cc, bb, -1
                bar[(bb, cc)] = bar.get((bb, cc), G()) + (v.conj() if s == 1 else -v.conj())
            self.d[a + m] = bar
        self.n = 2 * m
        self.basis = {}
        for p in range(m + 1):
            for q in range(m + 1):
                self.basis[(p, q)] = [I + tuple(j + m for j in J)
                                      for I in itertools.combinations(range(m), p)
                                      for J in itertools.combinations(range(m), q)]

    def bideg(self, mono):
        p = sum(1 for x in mono if x < self.m)
        return (p, len(mono) - p)

    @staticmethod
    def normalize(seq):
        if len(set(seq)) != len(seq):
            return 0, None
        seq = list(seq)
        sign = 1
        for i in range(len(seq)):
            for j in range(len(seq) - 1 - i):
                if seq[j] > seq[j + 1]:
                    seq[j], seq[j + 1] = seq[j + 1], seq[j]
                    sign = -sign
        return sign, tuple(seq)

    def dmono(self, mono):
        out = {}
        for s, a in enumerate(mono):
            for (b, c), v in self.d[a].items():
                seq = mono[:s] + (b, c) + mono[s + 1:]
                sign, norm = self.normalize(seq)
                if sign == 0:
                    continue
                coef = v if (s % 2 == 0) == (sign == 1) else -v
                out[norm] = out.get(norm, G()) + coef
        return {k: v for k, v in out.items() if not v.iszero()}

    def op(self, src, dst):
        """Matrix (rows over dst basis) of the component of d from bidegree src to dst."""
        m = self.m
        if not (0 <= dst[0] <= m and 0 <= dst[1] <= m) or not (0 <= src[0] <= m and 0 <= src[1] <= m):
            return None
        rows_b = self.basis[dst]
        idx = {mono: i for i, mono in enumerate(rows_b)}
        cols = self.basis[src]
        mat = [[G() for _ in cols] for _ in rows_b]
        for j, mono in enumerate(cols):
            for k, v in self.dmono(mono).items():
                if self.bideg(k) == dst:
                    mat[idx[k]][j] = v
        return mat


def dim(cf, pq):
    p, q = pq
    if 0 <= p <= cf.m and 0 <= q <= cf.m:
        return len(cf.basis[pq])
    return 0


def mat(cf, src, dst):
    o = cf.op(src, dst)
    if o is None:
        return [[G() for _ in range(dim(cf, src))] for _ in range(dim(cf, dst))]
    return o


def tables(cf):
    m = cf.m
    D, DB, BC, A = {}, {}, {}, {}
    for p in range(m + 1):
        for q in range(m + 1):
            n = dim(cf, (p, q))
            dl = mat(cf, (p, q), (p + 1, q))
            db = mat(cf, (p, q), (p, q + 1))
            db_in = mat(cf, (p, q - 1), (p, q))
            dl_in = mat(cf, (p - 1, q), (p, q))
            # ∂∂̄ out of (p,q) and into (p,q)
            ddb_out = matmul(mat(cf, (p, q + 1), (p + 1, q + 1)), [list(c) for c in zip(*db)] if db else [[] for _ in range(n)], dim(cf, (p, q + 1))) if n else []
            src = (p - 1, q - 1)
            a_ = mat(cf, (p - 1, q), (p, q))
            b_ = mat(cf, src, (p - 1, q))
            ddb_in = matmul(a_, [list(c) for c in zip(*b_)], dim(cf, (p - 1, q))) if dim(cf, src) and n else []
            r_db, r_dl = rank(db), rank(dl)
            DB[(p, q)] = n - r_db - rank(db_in)
            D[(p, q)] = n - r_dl - rank(dl_in)
            BC[(p, q)] = n - rank(dl + db) - rank(ddb_in)
            rank_ddb_out = rank(ddb_out) if ddb_out else 0
            joined = [r1 + r2 for r1, r2 in zip(dl_in, db_in)]
            A[(p, q)] = n - rank_ddb_out - (rank(joined) if joined else 0)
    # de Rham of the total complex
    betti = []
    total_dims = [sum(dim(cf, (p, k - p)) for p in range(k + 1)) for k in range(2 * m + 1)]

    def dtot(k):
        rows = []
        for pq in [(p, k + 1 - p) for p in range(k + 2)]:
            if dim(cf, pq) == 0:
                continue
            for r in range(dim(cf, pq)):
                row = []
                for src in [(p, k - p) for p in range(k + 1)]:
                    if dim(cf, src) == 0:
                        continue
                    mm = mat(cf, src, pq) if (pq[0] - src[0], pq[1] - src[1]) in ((1, 0), (0, 1)) else [[G()] * dim(cf, src) for _ in range(dim(cf, pq))]
                    row += mm[r]
                rows.append(row)
        return rows

    ranks = [rank(dtot(k)) if k < 2 * m else 0 for k in range(2 * m + 1)]
    for k in range(2 * m + 1):
        betti.append(total_dims[k] - ranks[k] - (ranks[k - 1] if k > 0 else 0))
    # second Frölicher page
    E2 = {}
    for p in range(m + 1):
        for q in range(m + 1):
            n = dim(cf, (p, q))
            if n == 0:
                E2[(p, q)] = 0
                continue
            ny = dim(cf, (p + 1, q - 1))
            # (x, y): ∂̄x = 0 and ∂x + ∂̄y = 0
            dbx = mat(cf, (p, q), (p, q + 1))
            dlx = mat(cf, (p, q), (p + 1, q))
            dby = mat(cf, (p + 1, q - 1), (p + 1, q))
            rows = [r + [G()] * ny for r in dbx] + [r1 + r2 for r1, r2 in zip(dlx, dby)]
            kern = nullspace(rows, n + ny)
            z2 = rank([v[:n] for v in kern]) if kern else 0
            # denominator: ∂̄ A^{p,q-1} + ∂ (ker ∂̄ on A^{p-1,q})
            gens = []
            if dim(cf, (p, q - 1)):
                gens += [list(c) for c in zip(*mat(cf, (p, q - 1), (p, q)))]
            if dim(cf, (p - 1, q)):
                K = nullspace(mat(cf, (p - 1, q), (p - 1, q + 1)), dim(cf, (p - 1, q)))
                if K:
                    gens += [list(c) for c in zip(*matmul(mat(cf, (p - 1, q), (p, q)), K, dim(cf, (p - 1, q))))]
            E2[(p, q)] = z2 - (rank(gens) if gens else 0)
    return dict(betti=betti, dolbeault=DB, conj_dolbeault=D, bott_chern=BC, aeppli=A, e2=E2)


def grid(t, m):
    return [[t[(p, q)] for q in range(m + 1)] for p in range(m + 1)]


def report(name, cf):
    t = tables(cf)
    m = cf.m
    delta = []
    for k in range(2 * m + 1):
        s = sum(t["bott_chern"][(p, k - p)] + t["aeppli"][(p, k - p)]
                for p in range(k + 1) if 0 <= k - p <= m and p <= m)
        delta.append(s - 2 * t["betti"][k])
    return {
        "name": name,
        "betti": t["betti"],
        "dolbeault[p][q]": grid(t["dolbeault"], m),
        "conj_dolbeault[p][q]": grid(t["conj_dolbeault"], m),
        "bott_chern[p][q]": grid(t["bott_chern"], m),
        "aeppli[p][q]": grid(t["aeppli"], m),
        "e2[p][q]": grid(t["e2"], m),
        "delta": delta,
    }


# ---- triple Massey products on degree-one classes ------------------------

def degree_basis(cf, k):
    return list(itertools.combinations(range(cf.n), k))


def dmatrix(cf, k):
    """Rows over degree k+1 monomials, columns over degree k monomials."""
    rows_b = degree_basis(cf, k + 1)
    idx = {mono: i for i, mono in enumerate(rows_b)}
    cols = degree_basis(cf, k)
    out = [[G() for _ in cols] for _ in rows_b]
    for j, mono in enumerate(cols):
        for mono2, v in cf.dmono(mono).items():
            out[idx[mono2]][j] = v
    return out


def wedge(cf, x, y):
    """Forms as dicts {sorted tuple: coeff}."""
    out = {}
    for a, u in x.items():
        for b, v in y.items():
            sign, norm = Coframe.normalize(a + b)
            if sign == 0:
                continue
            out[norm] = out.get(norm, G()) + (u * v if sign == 1 else -(u * v))
    return {k: v for k, v in out.items() if not v.iszero()}


def vec(cf, form, k):
    return [form.get(mono, G()) for mono in degree_basis(cf, k)]


def solve_any(matrix, rhs, ncols):
    """Some x with matrix x = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    kern = nullspace(aug, ncols + 1)
    for v in kern:
        if not v[ncols].iszero():
            t = v[ncols]
            return [-(c / t) for c in v[:ncols]]
    return None


def in_span(vectors, target):
    if all(t.iszero() for t in target):
        return True
    if not vectors:
        return False
    return rank(vectors) == rank(vectors + [target])


def massey_degree_one(cf, classes):
    """Non-vanishing <x,y,z> over the given closed 1-forms (as dicts); returns index triples."""
    n = cf.n
    # image of d on 1-forms, as degree-2 vectors
    exact_2 = [list(c) for c in zip(*dmatrix(cf, 1))]
    found = []
    for i, x in enumerate(classes):
        for j, y in enumerate(classes):
            t = {k: -v for k, v in wedge(cf, x, y).items()}
            a13 = solve_any(dmatrix(cf, 1), vec(cf, t, 2), n)
            if a13 is None:
                continue
            for l, z in enumerate(classes):
                u = {k: -v for k, v in wedge(cf, y, z).items()}
                a24 = solve_any(dmatrix(cf, 1), vec(cf, u, 2), n)
                if a24 is None:
                    continue
                f13 = {(g,): c for g, c in enumerate(a13) if not c.iszero()}
                f24 = {(g,): c for g, c in enumerate(a24) if not c.iszero()}
                rep = {}
                for part in (wedge(cf, x, f24), wedge(cf, f13, z)):
                    for k, v in part.items():
                        rep[k] = rep.get(k, G()) - v
                indet = [vec(cf, wedge(cf, x, h), 2) for h in classes] + [vec(cf, wedge(cf, h, z), 2) for h in classes]
                if not in_span(indet + exact_2, vec(cf, rep, 2)):
                    found.append([i, j, l])
    return found


def massey_report():
    one = G(1)
    iwasawa = Coframe(3, {2: {(0, 1): -one}})
    # closed 1-forms φ1, φ2, φ̄1, φ̄2 (generators 0, 1, 3, 4)
    classes = [{(g,): one} for g in (0, 1, 3, 4)]
    return {"iwasawa_degree_one_witnesses": massey_degree_one(iwasawa, classes)}


def main():
    one, half_i = G(1), G(0, F(1, 2))
    # Iwasawa: dφ3 = -φ1∧φ2 (generators 0,1,2 holomorphic)
    iwasawa = Coframe(3, {2: {(0, 1): -one}})
    # Kodaira-Thurston with φ1 = e1 + i e2, φ2 = e3 + i e4 and de3 = -e1∧e2:
    # e1∧e2 = (i/2) φ1∧φ̄1, so dφ2 = -(i/2) φ1∧φ̄1 (generator 3 is φ̄1).
    kt = Coframe(2, {1: {(0, 2): -half_i}})
    out = [report("iwasawa", iwasawa), report("kodaira-thurston", kt)]
    for n in (1, 2, 3):
        out.append(report(f"torus:{n}", Coframe(n, {})))
    out.append(massey_report())
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
