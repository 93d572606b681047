"""Representations of the linear quiver 1 -> 2 -> ... -> m over F_p.

A module is a list of vertex dimensions plus one matrix per arrow
(`arrows[v]` maps vertex v to vertex v+1, 0-based). A morphism is a list of
per-vertex matrices. Paths of length `L` are zero (Kupisch constant), so the
indecomposable projective at v is the interval [v, min(m, v + L - 1)].
"""

from fp import Mat


class Module:
    def __init__(self, dims, arrows):
        self.dims = list(dims)
        self.arrows = list(arrows)
        for v, a in enumerate(self.arrows):
            assert (a.r, a.c) == (self.dims[v + 1], self.dims[v])

    @property
    def m(self):
        return len(self.dims)

    def total(self):
        return sum(self.dims)

    def __repr__(self):
        return f"Module{self.dims}"


def interval(m, i, j):
    """The interval module with top i and socle j (1-based, i <= j)."""
    dims = [1 if i <= v + 1 <= j else 0 for v in range(m)]
    arrows = []
    for v in range(m - 1):
        a = Mat(dims[v + 1], dims[v])
        if dims[v] and dims[v + 1]:
            a[0, 0] = 1
        arrows.append(a)
    return Module(dims, arrows)


def zero_module(m):
    return Module([0] * m, [Mat(0, 0) for _ in range(m - 1)])


def direct_sum(mods, m):
    if not mods:
        return zero_module(m)
    dims = [sum(x.dims[v] for x in mods) for v in range(m)]
    arrows = []
    for v in range(m - 1):
        a = Mat(dims[v + 1], dims[v])
        r = c = 0
        for x in mods:
            blk = x.arrows[v]
            for i in range(blk.r):
                for j in range(blk.c):
                    a[r + i, c + j] = blk[i, j]
            r += blk.r
            c += blk.c
        arrows.append(a)
    return Module(dims, arrows)


def block_morphism(F, srcs, tgts, grid):
    """Morphism between direct sums from a grid[i][j]: srcs[j] -> tgts[i]."""
    m = srcs[0].m if srcs else tgts[0].m
    out = []
    for v in range(m):
        rows = sum(t.dims[v] for t in tgts)
        cols = sum(s.dims[v] for s in srcs)
        a = Mat(rows, cols)
        r = 0
        for i, t in enumerate(tgts):
            c = 0
            for j, s in enumerate(srcs):
                blk = grid[i][j][v]
                for x in range(blk.r):
                    for y in range(blk.c):
                        a[r + x, c + y] = blk[x, y]
                c += s.dims[v]
            r += t.dims[v]
        out.append(a)
    return out


def flatten(phi):
    return [x for a in phi for x in a.data]


def unflatten(M, N, vec):
    out, pos = [], 0
    for v in range(M.m):
        k = N.dims[v] * M.dims[v]
        out.append(Mat(N.dims[v], M.dims[v], vec[pos:pos + k]))
        pos += k
    return out


def compose(F, g, f):
    return [F.mul(gv, fv) for gv, fv in zip(g, f)]


def add(F, f, g):
    return [F.add(a, b) for a, b in zip(f, g)]


def scale(F, s, f):
    return [F.scale(s, a) for a in f]


def zero_map(M, N):
    return [Mat(N.dims[v], M.dims[v]) for v in range(M.m)]


def identity(F, M):
    return [F.eye(d) for d in M.dims]


def hom_basis(F, M, N):
    """Basis of Hom(M, N), as per-vertex matrices."""
    offs, total = [], 0
    for v in range(M.m):
        offs.append(total)
        total += N.dims[v] * M.dims[v]
    rows = []
    for v in range(M.m - 1):
        a_m, a_n = M.arrows[v], N.arrows[v]
        # (a_n phi_v - phi_{v+1} a_m)[x, y] = 0
        for x in range(N.dims[v + 1]):
            for y in range(M.dims[v]):
                row = [0] * total
                for t in range(N.dims[v]):
                    row[offs[v] + t * M.dims[v] + y] += a_n[x, t]
                for t in range(M.dims[v + 1]):
                    row[offs[v + 1] + x * M.dims[v + 1] + t] -= a_m[t, y]
                rows.append([e % F.p for e in row])
    return [unflatten(M, N, b) for b in F.nullspace(rows, total)]


def combine(F, M, N, basis, coeffs):
    acc = zero_map(M, N)
    for c, b in zip(coeffs, basis):
        if c:
            acc = add(F, acc, scale(F, c, b))
    return acc


def coords_in(F, basis, phi):
    return F.coords([flatten(b) for b in basis], flatten(phi))


def solve_linear(F, basis, fn, target):
    """Coefficients x with fn(sum x_i basis_i) = target, or None. `fn` is linear."""
    cols = [flatten(fn(b)) for b in basis]
    t = flatten(target)
    rows = [[col[i] for col in cols] for i in range(len(t))]
    return F.solve(rows, len(basis), t)


def kernel(F, f, M):
    """Kernel of f: M -> N as a module K with inclusion K -> M."""
    bases = [F.nullspace(f[v].rows(), M.dims[v]) for v in range(M.m)]
    dims = [len(b) for b in bases]
    arrows = []
    for v in range(M.m - 1):
        a = Mat(dims[v + 1], dims[v])
        for j, k in enumerate(bases[v]):
            img = F.apply(M.arrows[v], k)
            c = F.coords(bases[v + 1], img)
            assert c is not None
            for i, x in enumerate(c):
                a[i, j] = x
        arrows.append(a)
    K = Module(dims, arrows)
    inc = [Mat.from_rows([[b[i] for b in bases[v]] for i in range(M.dims[v])], dims[v]) for v in range(M.m)]
    return K, inc


def projective(m, L, v):
    return interval(m, v, min(m, v + L - 1))


def projective_cover(F, M, L):
    """A projective P with a surjection P -> M, assembled from top vectors."""
    m = M.m
    tops = []  # (vertex, vector)
    for v in range(m):
        rad = [] if v == 0 else [F.apply(M.arrows[v - 1], e) for e in F.eye(M.dims[v - 1]).rows()]
        span = [r for r in rad if any(r)]
        for i in range(M.dims[v]):
            e = [int(i == t) for t in range(M.dims[v])]
            if not span or F.coords(span, e) is None:
                tops.append((v, e))
                span = span + [e]
    summands = [projective(m, L, v + 1) for v, _ in tops]
    P = direct_sum(summands, m)
    maps = []
    for x in range(m):
        cols = []
        for (v, w), S in zip(tops, summands):
            if S.dims[x]:
                vec = w
                for u in range(v, x):
                    vec = F.apply(M.arrows[u], vec)
                cols.append(vec)
        maps.append(Mat.from_rows([[c[i] for c in cols] for i in range(M.dims[x])], P.dims[x]))
    return P, maps


def resolution(F, C, L, length):
    """Projectives P_0..P_length with eps: P_0 -> C and d[k]: P_k -> P_{k-1}."""
    P0, eps = projective_cover(F, C, L)
    Ps, ds = [P0], [None]
    prev = eps
    prev_src = P0
    for _ in range(length):
        K, inc = kernel(F, prev, prev_src)
        Pk, cov = projective_cover(F, K, L)
        d = compose(F, inc, cov)
        Ps.append(Pk)
        ds.append(d)
        prev, prev_src = d, Pk
    return Ps, ds, eps


class ExtSpace:
    """Ext^n(C, A) as cocycles Hom(P_n, A) modulo coboundaries."""

    def __init__(self, F, C, A, n, L):
        self.F, self.C, self.A, self.n, self.L = F, C, A, n, L
        self.Ps, self.ds, self.eps = resolution(F, C, L, n + 1)
        Pn = self.Ps[n]
        self.hom_n = hom_basis(F, Pn, A)
        k = len(self.hom_n)
        # cocycles: phi d_{n+1} = 0
        after = [flatten(compose(F, b, self.ds[n + 1])) for b in self.hom_n]
        rows = [[col[i] for col in after] for i in range(len(after[0]) if after else 0)]
        z = F.nullspace(rows, k)
        prev = self.Ps[n - 1]
        bnd = []
        for b in hom_basis(F, prev, A):
            c = coords_in(F, self.hom_n, compose(F, b, self.ds[n]))
            bnd.append(c)
        span = [v for v in bnd if any(v)]
        reps = []
        for v in z:
            if not (span or reps) or F.coords(span + reps, v) is None:
                reps.append(v)
        self.boundaries = span
        self.reps = reps

    @property
    def dim(self):
        return len(self.reps)

    def rep(self, i):
        return combine(self.F, self.Ps[self.n], self.A, self.hom_n, self.reps[i])

    def coords(self, phi):
        """Class of a cocycle phi: P_n -> A."""
        v = coords_in(self.F, self.hom_n, phi)
        assert v is not None
        c = self.F.coords(self.boundaries + self.reps, v)
        assert c is not None, "not a cocycle"
        return c[len(self.boundaries):]


def lift_chain(F, g, src, tgt, n):
    """Lift g: C' -> C to maps g_k: P'_k -> P_k, k = 0..n."""
    Ps, ds, eps = src.Ps, src.ds, src.eps
    Qs, es, eta = tgt.Ps, tgt.ds, tgt.eps
    basis = hom_basis(F, Ps[0], Qs[0])
    x = solve_linear(F, basis, lambda h: compose(F, eta, h), compose(F, g, eps))
    assert x is not None
    lifts = [combine(F, Ps[0], Qs[0], basis, x)]
    for k in range(1, n + 1):
        basis = hom_basis(F, Ps[k], Qs[k])
        x = solve_linear(F, basis, lambda h: compose(F, es[k], h), compose(F, lifts[k - 1], ds[k]))
        assert x is not None
        lifts.append(combine(F, Ps[k], Qs[k], basis, x))
    return lifts


def cov_matrix(F, f, src, tgt):
    """Matrix of f_*: Ext(C, A) -> Ext(C, A') for f: A -> A'."""
    cols = [tgt.coords(compose(F, f, src.rep(j))) for j in range(src.dim)]
    return [[cols[j][i] for j in range(src.dim)] for i in range(tgt.dim)]


def contra_matrix(F, g, src, tgt):
    """Matrix of g^*: Ext(C, A) -> Ext(C', A) for g: C' -> C; `src` is Ext(C, A)."""
    lifts = lift_chain(F, g, tgt, src, src.n)
    cols = [tgt.coords(compose(F, src.rep(j), lifts[src.n])) for j in range(src.dim)]
    return [[cols[j][i] for j in range(src.dim)] for i in range(tgt.dim)]


def is_exact(F, mods, maps):
    """Is 0 -> mods[0] -> ... -> mods[-1] -> 0 exact?"""
    m = mods[0].m
    for v in range(m):
        ranks = [F.rank(d[v]) for d in maps]
        for k in range(len(maps) - 1):
            if not F.mul(maps[k + 1][v], maps[k][v]).is_zero():
                return False
        dims = [x.dims[v] for x in mods]
        if ranks[0] != dims[0] or ranks[-1] != dims[-1]:
            return False
        for k in range(1, len(mods) - 1):
            if dims[k] != ranks[k - 1] + ranks[k]:
                return False
    return True


def yoneda_class(F, ext, mods, maps):
    """Class in Ext^n(C, A) of an exact sequence A = mods[0] -> ... -> mods[n+1] = C."""
    n = ext.n
    Ps, ds, eps = ext.Ps, ext.ds, ext.eps
    h = None
    for k in range(0, n + 1):
        X = mods[n - k]
        d = maps[n - k]
        basis = hom_basis(F, Ps[k], X)
        rhs = eps if k == 0 else compose(F, h, ds[k])
        x = solve_linear(F, basis, lambda t: compose(F, d, t), rhs)
        assert x is not None
        h = combine(F, Ps[k], X, basis, x)
    return ext.coords(h)
