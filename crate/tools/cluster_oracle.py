#!/usr/bin/env python3
"""Fixture generator for C = add(S3 + P1 + S1) in the cluster category of A3.

The cluster category is the orbit category D^b(kQ)/F with F = tau^{-1}[1],
Q = 1 -> 2 -> 3. For modules X, Y only two orbit terms contribute:

    Hom_T(X, Y) = Hom(X, Y) + Hom_D(X, F Y)
               = Hom(X, Y) + Ext^1(X, tau^{-1} Y)      (Y not injective)
               = Hom(X, Y)                             (Y injective, F Y = P[2])

tau on modules is read off from the Coxeter transformation on dimension
vectors, which is checked against Phi(dim P_i) = -dim I_i. In T the shift is
tau, so on C the suspension [2] is tau^2, with tau P_i = P_i[1] and
tau(P_i[1]) = I_i. The extension group is E(C, A) = Hom_T(C, A[2]).

Every Hom space here has dimension at most 1 over F_2. Composition of two
non-identity maps is zero because every target space of such a composite
vanishes (asserted below). E-actions are composition with tau^2 f on the left
and with g on the right.

4-angles are found by exhaustive search over complexes with at most two
summands per middle term, testing exactness of both Hom sequences. The class
xiH keeps the 4-angles whose first map is a left add(S3 + S1)-approximation.
Writes fixtures/F3.json and fixtures/oracle/F3.json.
"""

import itertools
import os

from fp import Field, Mat
import modules as md
from nakayama_oracle import ROOT, write

M, L, N = 3, 3, 2
F = Field(2)


def interval_of(dims):
    support = [v + 1 for v, d in enumerate(dims) if d]
    assert all(d in (0, 1) for d in dims) and support == list(range(support[0], support[-1] + 1))
    return (support[0], support[-1])


def dimvec(iv):
    return [1 if iv[0] <= v + 1 <= iv[1] else 0 for v in range(M)]


def coxeter():
    """Phi with dim(tau X) = Phi dim(X) for non-projective X, as an integer matrix."""
    P = [dimvec((i, min(M, i + L - 1))) for i in range(1, M + 1)]  # columns of the Cartan matrix
    I = [dimvec((1, i)) for i in range(1, M + 1)]
    # Cartan matrix C with C e_i = dim P_i; C^T e_i = dim I_i for a path algebra.
    C = [[P[j][i] for j in range(M)] for i in range(M)]
    Ct = [[C[j][i] for j in range(M)] for i in range(M)]
    Cinv = invert(C)
    Phi = [[-sum(Ct[i][t] * Cinv[t][j] for t in range(M)) for j in range(M)] for i in range(M)]
    for i in range(M):
        assert apply(Phi, P[i]) == [-x for x in I[i]], "Coxeter check failed"
    return Phi


def invert(A):
    n = len(A)
    aug = [list(map(int, row)) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        pr = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[pr] = aug[pr], aug[c]
        assert abs(aug[c][c]) == 1
        piv = aug[c][c]
        aug[c] = [x * piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def apply(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


PHI = coxeter()
PHI_INV = invert(PHI)


def is_projective(iv):
    return iv[1] == min(M, iv[0] + L - 1)


def is_injective(iv):
    return iv[0] == 1


def tau_inv_module(iv):
    """tau^{-1} of a non-injective indecomposable module."""
    return interval_of(apply(PHI_INV, dimvec(iv)))


def tau(obj):
    """tau on indecomposables of T: ('mod', iv) or ('proj1', i) for P_i[1]."""
    kind, x = obj
    if kind == "mod":
        if is_projective(x):
            return ("proj1", x[0])
        return ("mod", interval_of(apply(PHI, dimvec(x))))
    return ("mod", (1, x))  # tau(P_i[1]) = I_i


def module(iv):
    return md.interval(M, *iv)


def ext1(x, y):
    return md.ExtSpace(F, module(x), module(y), 1, L).dim


def hom_T(x, y):
    """Dimension of Hom_T(X, Y) for modules X, Y."""
    d = len(md.hom_basis(F, module(x), module(y)))
    if not is_injective(y):
        d += ext1(x, tau_inv_module(y))
    return d


OBJECTS = [("S3", (3, 3)), ("P1", (1, 3)), ("S1", (1, 1))]
NAMES = [o for o, _ in OBJECTS]
IVS = [iv for _, iv in OBJECTS]
K = len(OBJECTS)


def index_of(obj):
    assert obj[0] == "mod", obj
    return IVS.index(obj[1])


SHIFT2 = [index_of(tau(tau(("mod", iv)))) for iv in IVS]
HOM = [[hom_T(IVS[a], IVS[b]) for b in range(K)] for a in range(K)]
assert all(HOM[a][a] == 1 for a in range(K)) and all(h <= 1 for row in HOM for h in row)
# composites of non-identity maps land in zero spaces
for a, b, c in itertools.product(range(K), repeat=3):
    if a != b and b != c and HOM[a][b] and HOM[b][c]:
        assert a != c and HOM[a][c] == 0, (NAMES[a], NAMES[b], NAMES[c])
EXT = [[HOM[c][SHIFT2[a]] for a in range(K)] for c in range(K)]


def label(a, b):
    return f"1_{NAMES[a]}" if a == b else f"{NAMES[a]}>{NAMES[b]}"


def comp(a, b, c, g, f):
    """Composite of basis maps (or zero when a coefficient is 0) a -> b -> c."""
    if a == b or b == c:
        return g * f
    return 0


def cov(c, a, a2):
    """Action of the basis map a -> a2 on E(c, a) -> E(c, a2)."""
    if not (EXT[c][a] and EXT[c][a2] and HOM[a][a2]):
        return None
    # delta: c -> a[2]; f[2]: a[2] -> a2[2]
    return comp(c, SHIFT2[a], SHIFT2[a2], 1, 1)


def contra(c2, c, a):
    """Action of the basis map c2 -> c on E(c, a) -> E(c2, a)."""
    if not (EXT[c][a] and EXT[c2][a] and HOM[c2][c]):
        return None
    return comp(c2, c, SHIFT2[a], 1, 1)


# -- additive closure ---------------------------------------------------------

def hom_len(xs, ys):
    return sum(HOM[x][y] for y in ys for x in xs)


def blocks(xs, ys, v):
    out, pos = {}, 0
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            if HOM[x][y]:
                out[i, j] = v[pos]
                pos += 1
            else:
                out[i, j] = 0
    return out


def compose(xs, ys, zs, g, f):
    gb, fb = blocks(ys, zs, g), blocks(xs, ys, f)
    out = []
    for i, z in enumerate(zs):
        for j, x in enumerate(xs):
            if not HOM[x][z]:
                continue
            s = sum(comp(x, y, z, gb[i, t], fb[t, j]) for t, y in enumerate(ys))
            out.append(s % 2)
    return out


def basis(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def post_matrix(m, xs, ys, d):
    """Matrix of phi -> d . phi on Hom(m, xs) -> Hom(m, ys)."""
    src = basis(hom_len([m], xs))
    cols = [compose([m], xs, ys, d, e) for e in src]
    return Mat.from_rows([[c[i] for c in cols] for i in range(hom_len([m], ys))], len(src))


def pre_matrix(m, xs, ys, d):
    """Matrix of phi -> phi . d on Hom(ys, m) -> Hom(xs, m)."""
    src = basis(hom_len(ys, [m]))
    cols = [compose(xs, ys, [m], e, d) for e in src]
    return Mat.from_rows([[c[i] for c in cols] for i in range(hom_len(xs, [m]))], len(src))


def exact_at(f, g):
    """Is ker g = im f for composable matrices f then g?"""
    if not F.mul(g, f).is_zero():
        return False
    return g.c - F.rank(g) == F.rank(f)


def is_four_angle(terms, diffs, c, a):
    # delta_sharp: Hom(m, c) -> E(m, a), delta^sharp: Hom(a, m) -> E(c, m)
    for m in range(K):
        posts = [post_matrix(m, terms[i], terms[i + 1], diffs[i]) for i in range(N + 1)]
        sharp = Mat(EXT[m][a], HOM[m][c], [contra(m, c, a) or 0] if EXT[m][a] and HOM[m][c] else [])
        seq = posts + [sharp]
        if not all(exact_at(seq[i], seq[i + 1]) for i in range(N + 1)):
            return False
        pres = [pre_matrix(m, terms[i], terms[i + 1], diffs[i]) for i in range(N + 1)][::-1]
        upper = Mat(EXT[c][m], HOM[a][m], [cov(c, a, m) or 0] if EXT[c][m] and HOM[a][m] else [])
        seq = pres + [upper]
        if not all(exact_at(seq[i], seq[i + 1]) for i in range(N + 1)):
            return False
    return True


def search(c, a):
    multisets = [()] + [t for s in (1, 2) for t in itertools.combinations_with_replacement(range(K), s)]
    mids = sorted(itertools.product(multisets, repeat=N), key=lambda t: (sum(map(len, t)), t))
    for mid in mids:
        terms = [(a,)] + list(mid) + [(c,)]
        spaces = [F.vectors(hom_len(terms[i], terms[i + 1])) for i in range(N + 1)]
        for diffs in itertools.product(*map(list, spaces)):
            ok = all(not any(compose(terms[i], terms[i + 1], terms[i + 2], diffs[i + 1], diffs[i]))
                     for i in range(N))
            if ok and is_four_angle(terms, diffs, c, a):
                return terms, [list(d) for d in diffs]
    raise SystemExit(f"no 4-angle for E({NAMES[c]}, {NAMES[a]})")


def left_approximates(a, terms, diffs, subcat):
    """Is C(d0, H) onto for every H in subcat?"""
    for h in subcat:
        pre = pre_matrix(h, terms[0], terms[1], diffs[0])
        if F.rank(pre) != hom_len(terms[0], [h]):
            return False
    return True


def main():
    hom = [{"from": NAMES[a], "to": NAMES[b], "basis": [label(a, b)]}
           for a in range(K) for b in range(K) if HOM[a][b]]
    identities = {NAMES[a]: [1] for a in range(K)}
    ext = [{"c": NAMES[c], "a": NAMES[a], "dim": 1} for c in range(K) for a in range(K) if EXT[c][a]]
    covs, contras = [], []
    for x, y, z in itertools.product(range(K), repeat=3):
        if y != z and cov(x, y, z):
            covs.append({"map": label(y, z), "c": NAMES[x], "matrix": [[1]]})
        if x != y and contra(x, y, z):
            contras.append({"map": label(x, y), "a": NAMES[z], "matrix": [[1]]})
    realizations, found = [], []
    for c in range(K):
        for a in range(K):
            if EXT[c][a]:
                terms, diffs = search(c, a)
                found.append((terms, diffs))
                realizations.append({"c": NAMES[c], "a": NAMES[a], "element": [1],
                                     "terms": [[NAMES[i] for i in t] for t in terms], "diffs": diffs})
    h = [NAMES.index(x) for x in ("S3", "S1")]
    xi_h = [{"c": r["c"], "a": r["a"], "basis": [r["element"]]}
            for r, (terms, diffs) in zip(realizations, found)
            if left_approximates(NAMES.index(r["a"]), terms, diffs, h)]
    pres = {
        "field": 2,
        "n": N,
        "objects": NAMES,
        "hom": hom,
        "identities": identities,
        "compose": [],
        "ext": ext,
        "ext_action_cov": covs,
        "ext_action_contra": contras,
        "realizations": realizations,
        "classes": {"xiH": xi_h},
        "subcategories": {"H": ["S3", "S1"]},
    }
    summary = {
        "fixture": "F3",
        "category": "add(S3 + P1 + S1) in the cluster category of linear A3",
        "n": N,
        "suspension": {NAMES[i]: NAMES[SHIFT2[i]] for i in range(K)},
        "hom_dims": {NAMES[a]: {NAMES[b]: HOM[a][b] for b in range(K)} for a in range(K)},
        "ext_dims": {NAMES[c]: {NAMES[a]: EXT[c][a] for a in range(K)} for c in range(K)},
        "realizations": [{k: r[k] for k in ("c", "a", "element", "terms")} for r in realizations],
        "xi_H": [(x["c"], x["a"]) for x in xi_h],
    }
    write(os.path.join(ROOT, "fixtures", "F3.json"), pres)
    write(os.path.join(ROOT, "fixtures", "oracle", "F3.json"), summary)
    print(f"F3: {len(realizations)} realizations")


if __name__ == "__main__":
    main()
