#!/usr/bin/env python3
"""Fixture generator for n-cluster tilting subcategories of linear Nakayama algebras.

For each fixture the indecomposables of C are interval modules. Hom spaces
and composition come from solving the commutativity equations of quiver
representations. E(C, A) = Ext^n(C, A) is computed from minimal projective
resolutions, with the covariant action by postcomposition on cocycles and
the contravariant action through a lifted chain map. Each nonzero element
of E(C, A) is realized by searching all exact sequences
0 -> A -> X^1 -> ... -> X^n -> C -> 0 with X^i in C (at most two summands)
and comparing Yoneda classes.

Writes fixtures/<name>.json and fixtures/oracle/<name>.json.
"""

import itertools
import json
import os
import sys

from fp import Field
import modules as md

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")
MAX_MIDDLE = 2


class Setup:
    def __init__(self, name, m, L, n, objects, subcategories, p=2):
        self.name, self.m, self.L, self.n = name, m, L, n
        self.F = Field(p)
        self.names = [o for o, _ in objects]
        self.mods = [md.interval(m, i, j) for _, (i, j) in objects]
        self.subcategories = subcategories
        k = len(self.mods)
        self.hom = {(a, b): md.hom_basis(self.F, self.mods[a], self.mods[b]) for a in range(k) for b in range(k)}
        self.ext = {(c, a): md.ExtSpace(self.F, self.mods[c], self.mods[a], n, L) for c in range(k) for a in range(k)}

    @property
    def k(self):
        return len(self.mods)

    def label(self, a, b, i):
        base = f"1_{self.names[a]}" if a == b else f"{self.names[a]}>{self.names[b]}"
        return base if len(self.hom[a, b]) == 1 else f"{base}#{i}"

    def identity_coords(self, a):
        return md.coords_in(self.F, self.hom[a, a], md.identity(self.F, self.mods[a]))

    def is_identity_basis(self, a, b, i):
        if a != b:
            return False
        return self.identity_coords(a) == [int(t == i) for t in range(len(self.hom[a, a]))]

    # sums of indecomposables ------------------------------------------------

    def module(self, objs):
        return md.direct_sum([self.mods[i] for i in objs], self.m)

    def hom_len(self, xs, ys):
        return sum(len(self.hom[x, y]) for y in ys for x in xs)

    def morphism(self, xs, ys, coords):
        """Coordinates are blocks over (target i outer, source j inner)."""
        grid, pos = [], 0
        for y in ys:
            row = []
            for x in xs:
                b = self.hom[x, y]
                row.append(md.combine(self.F, self.mods[x], self.mods[y], b, coords[pos:pos + len(b)]))
                pos += len(b)
            grid.append(row)
        return md.block_morphism(self.F, [self.mods[x] for x in xs], [self.mods[y] for y in ys], grid)

    def dimvec(self, objs):
        return [sum(self.mods[i].dims[v] for i in objs) for v in range(self.m)]

    # realizations -----------------------------------------------------------

    def sequences(self, terms):
        """Exact sequences with the given terms (tuples of indices), in lexicographic order of
        differential coordinates, yielded as coordinate lists."""
        F = self.F
        mods = [self.module(t) for t in terms]
        last = len(terms) - 2

        def rec(pos, prev_map, acc):
            xs, ys = terms[pos], terms[pos + 1]
            for v in F.vectors(self.hom_len(xs, ys)):
                d = self.morphism(xs, ys, v)
                if pos == 0 and any(F.rank(d[x]) != mods[0].dims[x] for x in range(self.m)):
                    continue
                if prev_map is not None and not all(a.is_zero() for a in md.compose(F, d, prev_map)):
                    continue
                if pos == last:
                    maps = [self.morphism(terms[i], terms[i + 1], acc[i]) for i in range(last)] + [d]
                    if md.is_exact(F, mods, maps):
                        yield acc + [v], maps
                else:
                    yield from rec(pos + 1, d, acc + [v])

        yield from rec(0, None, [])

    def middle_candidates(self):
        multisets = [()]
        for size in range(1, MAX_MIDDLE + 1):
            multisets += list(itertools.combinations_with_replacement(range(self.k), size))
        return sorted(itertools.product(multisets, repeat=self.n), key=lambda t: (sum(map(len, t)), t))

    def realize_all(self, c, a):
        ext = self.ext[c, a]
        wanted = [v for v in self.F.vectors(ext.dim) if any(v)]
        found = {}
        target = self.dimvec([a])
        for mid in self.middle_candidates():
            terms = [(a,)] + list(mid) + [(c,)]
            alt = [0] * self.m
            for s, t in enumerate(terms):
                dv = self.dimvec(t)
                alt = [x + (-1) ** s * y for x, y in zip(alt, dv)]
            if any(alt):
                continue
            for coords, maps in self.sequences(terms):
                mods = [self.module(t) for t in terms]
                cls = md.yoneda_class(self.F, ext, mods, maps)
                key = tuple(cls)
                if any(cls) and key not in found:
                    found[key] = (terms, coords)
                if len(found) == len(wanted):
                    break
            if len(found) == len(wanted):
                break
        missing = [v for v in wanted if tuple(v) not in found]
        if missing:
            raise SystemExit(f"{self.name}: no realization found for {missing} in E({self.names[c]}, {self.names[a]})")
        return [(list(v), found[tuple(v)]) for v in wanted]

    def count_realizing(self, c, a, element, mid):
        """Number of exact sequences with middle terms `mid` realizing `element`."""
        ext = self.ext[c, a]
        terms = [(a,)] + list(mid) + [(c,)]
        total = 0
        for _, maps in self.sequences(terms):
            cls = md.yoneda_class(self.F, ext, [self.module(t) for t in terms], maps)
            total += cls == element
        return total

    # output -----------------------------------------------------------------

    def presentation(self):
        F, k = self.F, self.k
        hom = []
        for a in range(k):
            for b in range(k):
                if self.hom[a, b]:
                    hom.append({"from": self.names[a], "to": self.names[b],
                                "basis": [self.label(a, b, i) for i in range(len(self.hom[a, b]))]})
        identities = {self.names[a]: self.identity_coords(a) for a in range(k)}
        compose = []
        for a, b, c in itertools.product(range(k), repeat=3):
            for gi, g in enumerate(self.hom[b, c]):
                for fi, f in enumerate(self.hom[a, b]):
                    val = md.coords_in(F, self.hom[a, c], md.compose(F, g, f))
                    dac = len(self.hom[a, c])
                    if self.is_identity_basis(b, c, gi):
                        default = [int(t == fi) for t in range(dac)]
                    elif self.is_identity_basis(a, b, fi):
                        default = [int(t == gi) for t in range(dac)]
                    else:
                        default = [0] * dac
                    if val != default:
                        compose.append({"g": self.label(b, c, gi), "f": self.label(a, b, fi), "value": val})
        ext = [{"c": self.names[c], "a": self.names[a], "dim": self.ext[c, a].dim}
               for c in range(k) for a in range(k) if self.ext[c, a].dim]
        cov, contra = [], []
        for x, y, z in itertools.product(range(k), repeat=3):
            # f: y -> z acting on E(x, -)
            for i, f in enumerate(self.hom[y, z]):
                src, tgt = self.ext[x, y], self.ext[x, z]
                if src.dim and tgt.dim:
                    mat = md.cov_matrix(F, f, src, tgt)
                    default = F.eye(src.dim).rows() if self.is_identity_basis(y, z, i) else [[0] * src.dim for _ in range(tgt.dim)]
                    if mat != default:
                        cov.append({"map": self.label(y, z, i), "c": self.names[x], "matrix": mat})
            # g: x -> y acting on E(-, z)
            for i, g in enumerate(self.hom[x, y]):
                src, tgt = self.ext[y, z], self.ext[x, z]
                if src.dim and tgt.dim:
                    mat = md.contra_matrix(F, g, src, tgt)
                    default = F.eye(src.dim).rows() if self.is_identity_basis(x, y, i) else [[0] * src.dim for _ in range(tgt.dim)]
                    if mat != default:
                        contra.append({"map": self.label(x, y, i), "a": self.names[z], "matrix": mat})
        realizations = []
        for c in range(k):
            for a in range(k):
                if not self.ext[c, a].dim:
                    continue
                for element, (terms, coords) in self.realize_all(c, a):
                    realizations.append({
                        "c": self.names[c],
                        "a": self.names[a],
                        "element": element,
                        "terms": [[self.names[i] for i in t] for t in terms],
                        "diffs": coords,
                    })
        out = {
            "field": F.p,
            "n": self.n,
            "objects": self.names,
            "hom": hom,
            "identities": identities,
            "compose": compose,
            "ext": ext,
            "ext_action_cov": cov,
            "ext_action_contra": contra,
            "realizations": realizations,
        }
        if self.subcategories:
            out["subcategories"] = self.subcategories
        return out

    def summary(self, presentation):
        k = self.k
        rigid = all(
            md.ExtSpace(self.F, self.mods[c], self.mods[a], i, self.L).dim == 0
            for i in range(1, self.n) for c in range(k) for a in range(k)
        )
        return {
            "fixture": self.name,
            "algebra": f"linear A{self.m}, paths of length {self.L} are zero",
            "n": self.n,
            "hom_dims": {self.names[a]: {self.names[b]: len(self.hom[a, b]) for b in range(k)} for a in range(k)},
            "ext_dims": {self.names[c]: {self.names[a]: self.ext[c, a].dim for a in range(k)} for c in range(k)},
            "rigid_below_n": rigid,
            "realizations": [
                {"c": r["c"], "a": r["a"], "element": r["element"], "terms": r["terms"]}
                for r in presentation["realizations"]
            ],
        }


def write(path, data):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


SETUPS = [
    Setup("F1", 3, 2, 2,
          [("S3", (3, 3)), ("P2", (2, 3)), ("P1", (1, 2)), ("S1", (1, 1))],
          {"X": ["P2", "P1"], "P": ["S3", "P2", "P1"], "I": ["P2", "P1", "S1"]}),
    Setup("F2", 4, 3, 2,
          [("4", (4, 4)), ("3/4", (3, 4)), ("2/3/4", (2, 4)), ("1/2/3", (1, 3)), ("1/2", (1, 2)), ("1", (1, 1))],
          {"X234": ["2/3/4"], "PI": ["2/3/4", "1/2/3"]}),
    Setup("A2", 2, 2, 1,
          [("S2", (2, 2)), ("P1", (1, 2)), ("S1", (1, 1))],
          {"X": ["P1"]}),
]


def main(argv):
    only = set(argv[1:])
    for s in SETUPS:
        if only and s.name not in only:
            continue
        pres = s.presentation()
        summ = s.summary(pres)
        if s.name == "F2":
            ix = {n: i for i, n in enumerate(s.names)}
            c, a = ix["1"], ix["4"]
            summ["middle_term_check"] = {
                "extension": {"c": "1", "a": "4", "element": [1]},
                "4 -> 2/3/4 -> 1/2 -> 1": s.count_realizing(c, a, [1], [(ix["2/3/4"],), (ix["1/2"],)]),
                "4 -> 2/3/4 -> 1/2/3 -> 1": s.count_realizing(c, a, [1], [(ix["2/3/4"],), (ix["1/2/3"],)]),
            }
        write(os.path.join(ROOT, "fixtures", f"{s.name}.json"), pres)
        write(os.path.join(ROOT, "fixtures", "oracle", f"{s.name}.json"), summ)
        print(f"{s.name}: {len(pres['realizations'])} realizations")


if __name__ == "__main__":
    main(sys.argv)
