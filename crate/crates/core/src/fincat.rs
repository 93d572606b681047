//! Finite Krull–Schmidt presented additive categories.
//!
//! A [`Category`] is given by finitely many indecomposable objects, a basis
//! of each Hom space between indecomposables and structure constants for
//! composition of basis morphisms. Arbitrary objects are formal direct sums
//! ([`Obj`]) and morphisms between them are block matrices ([`Morphism`]).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat, Scalar, Subspace, Vector};
use crate::report::Report;

/// Index of an indecomposable object in its presentation.
pub type Ind = usize;

/// A formal direct sum of indecomposables. The order of summands fixes the
/// block layout of morphisms; equality as objects is multiset equality
/// ([`Obj::same_as`]).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Obj(pub Vec<Ind>);

impl Obj {
    pub fn zero() -> Self {
        Obj(Vec::new())
    }

    pub fn ind(i: Ind) -> Self {
        Obj(vec![i])
    }

    pub fn summands(&self) -> &[Ind] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ⊕ other`, with the summands of `self` first.
    pub fn sum(&self, other: &Obj) -> Obj {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Obj(v)
    }

    pub fn canonical(&self) -> Obj {
        let mut v = self.0.clone();
        v.sort_unstable();
        Obj(v)
    }

    pub fn same_as(&self, other: &Obj) -> bool {
        self.canonical() == other.canonical()
    }

    /// Multiset difference `self - other`, if `other ⊆ self`.
    pub fn minus(&self, other: &Obj) -> Option<Obj> {
        let mut rest = self.canonical().0;
        for x in &other.0 {
            let pos = rest.iter().position(|y| y == x)?;
            rest.remove(pos);
        }
        Some(Obj(rest))
    }
}

/// A full additive subcategory, given by its indecomposables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subcategory(pub BTreeSet<Ind>);

impl Subcategory {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, i: Ind) -> bool {
        self.0.contains(&i)
    }

    /// Every summand of `x` lies in the subcategory.
    pub fn contains_obj(&self, x: &Obj) -> bool {
        x.0.iter().all(|i| self.0.contains(i))
    }

    pub fn is_subset(&self, other: &Subcategory) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Ind> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<Ind> for Subcategory {
    fn from_iter<T: IntoIterator<Item = Ind>>(iter: T) -> Self {
        Subcategory(iter.into_iter().collect())
    }
}

/// A morphism `src -> tgt`. `coords` concatenates the blocks `(i, j)` for
/// target summand `i` (outer) and source summand `j` (inner); block `(i, j)`
/// holds coordinates in the Hom basis from `src[j]` to `tgt[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Morphism {
    pub src: Obj,
    pub tgt: Obj,
    pub coords: Vector,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

/// A presentation of a finite additive category over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Category {
    fp: Fp,
    names: Vec<String>,
    hom_dims: Vec<usize>,
    hom_labels: Vec<Vec<String>>,
    /// `compose[(a, b, c)]` holds, at position `gi * dim(a, b) + fi`, the
    /// coordinates in `Hom(a, c)` of `g_gi ∘ f_fi`.
    compose: Vec<Vec<Vector>>,
    identities: Vec<Vector>,
}

impl Category {
    /// Assemble a presentation. Sizes are checked; the category laws are not
    /// (see [`Category::validate`]).
    pub fn new(
        fp: Fp,
        names: Vec<String>,
        hom_labels: Vec<Vec<String>>,
        compose: Vec<Vec<Vector>>,
        identities: Vec<Vector>,
    ) -> Result<Self> {
        let n = names.len();
        if hom_labels.len() != n * n || compose.len() != n * n * n || identities.len() != n {
            return Err(Error::Shape("presentation table sizes".into()));
        }
        let hom_dims: Vec<usize> = hom_labels.iter().map(Vec::len).collect();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = &compose[(a * n + b) * n + c];
                    let want = hom_dims[b * n + c] * hom_dims[a * n + b];
                    if t.len() != want || t.iter().any(|v| v.len() != hom_dims[a * n + c]) {
                        return Err(Error::Shape(format!(
                            "composition table ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
            if identities[a].len() != hom_dims[a * n + a] {
                return Err(Error::Shape(format!("identity of {}", names[a])));
            }
        }
        Ok(Category {
            fp,
            names,
            hom_dims,
            hom_labels,
            compose,
            identities,
        })
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn num_ind(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: Ind) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Result<Ind> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn obj(&self, names: &[&str]) -> Result<Obj> {
        names.iter().map(|n| self.index(n)).collect::<Result<Vec<_>>>().map(Obj)
    }

    pub fn subcategory(&self, names: &[&str]) -> Result<Subcategory> {
        names.iter().map(|n| self.index(n)).collect()
    }

    pub fn all_ind(&self) -> Subcategory {
        (0..self.num_ind()).collect()
    }

    pub fn hom_dim_ind(&self, a: Ind, b: Ind) -> usize {
        self.hom_dims[a * self.num_ind() + b]
    }

    pub fn hom_labels(&self, a: Ind, b: Ind) -> &[String] {
        &self.hom_labels[a * self.num_ind() + b]
    }

    pub fn identity_coords(&self, a: Ind) -> &[Scalar] {
        &self.identities[a]
    }

    pub(crate) fn compose_table(&self, a: Ind, b: Ind, c: Ind) -> &[Vector] {
        let n = self.num_ind();
        &self.compose[(a * n + b) * n + c]
    }

    pub fn hom_dim(&self, x: &Obj, y: &Obj) -> usize {
        x.0.iter()
            .map(|&a| y.0.iter().map(|&b| self.hom_dim_ind(a, b)).sum::<usize>())
            .sum()
    }

    /// `offsets[i][j]` = start of block `(i, j)` in the coordinate vector.
    pub fn block_offsets(&self, x: &Obj, y: &Obj) -> Vec<Vec<usize>> {
        let mut off = 0;
        y.0.iter()
            .map(|&b| {
                x.0.iter()
                    .map(|&a| {
                        let o = off;
                        off += self.hom_dim_ind(a, b);
                        o
                    })
                    .collect()
            })
            .collect()
    }

    pub fn display_obj(&self, x: &Obj) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.0.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join("+")
    }

    pub fn display_mor(&self, f: &Morphism) -> String {
        format!(
            "{}->{}{:?}",
            self.display_obj(&f.src),
            self.display_obj(&f.tgt),
            f.coords
        )
    }

    // ---- morphisms -------------------------------------------------------

    pub fn morphism(&self, src: &Obj, tgt: &Obj, coords: Vector) -> Result<Morphism> {
        if coords.len() != self.hom_dim(src, tgt) {
            return Err(Error::Shape(format!(
                "morphism {} -> {} needs {} coordinates, got {}",
                self.display_obj(src),
                self.display_obj(tgt),
                self.hom_dim(src, tgt),
                coords.len()
            )));
        }
        Ok(Morphism {
            src: src.clone(),
            tgt: tgt.clone(),
            coords,
        })
    }

    pub fn zero(&self, src: &Obj, tgt: &Obj) -> Morphism {
        Morphism {
            src: src.clone(),
            tgt: tgt.clone(),
            coords: vec![0; self.hom_dim(src, tgt)],
        }
    }

    pub fn identity(&self, x: &Obj) -> Morphism {
        self.from_blocks(x, x, |i, j| {
            if i == j {
                self.identities[x.0[i]].clone()
            } else {
                vec![0; self.hom_dim_ind(x.0[j], x.0[i])]
            }
        })
    }

    /// Build a morphism from a block function `(i, j) -> coords` with `i`
    /// indexing target summands and `j` source summands.
    pub fn from_blocks(&self, src: &Obj, tgt: &Obj, mut block: impl FnMut(usize, usize) -> Vector) -> Morphism {
        let mut coords = Vec::with_capacity(self.hom_dim(src, tgt));
        for (i, &b) in tgt.0.iter().enumerate() {
            for (j, &a) in src.0.iter().enumerate() {
                let v = block(i, j);
                assert_eq!(v.len(), self.hom_dim_ind(a, b), "block shape");
                coords.extend(v);
            }
        }
        Morphism {
            src: src.clone(),
            tgt: tgt.clone(),
            coords,
        }
    }

    pub fn block<'a>(&self, f: &'a Morphism, i: usize, j: usize) -> &'a [Scalar] {
        let mut off = 0;
        for (ii, &b) in f.tgt.0.iter().enumerate() {
            for (jj, &a) in f.src.0.iter().enumerate() {
                let d = self.hom_dim_ind(a, b);
                if ii == i && jj == j {
                    return &f.coords[off..off + d];
                }
                off += d;
            }
        }
        panic!("block ({i}, {j}) out of range");
    }

    /// Assemble a morphism `⊕ srcs -> ⊕ tgts` from a grid of morphisms
    /// `blocks[r][c]: srcs[c] -> tgts[r]`.
    pub fn from_grid(&self, srcs: &[Obj], tgts: &[Obj], blocks: &[Vec<Morphism>]) -> Morphism {
        let src = srcs.iter().fold(Obj::zero(), |acc, x| acc.sum(x));
        let tgt = tgts.iter().fold(Obj::zero(), |acc, x| acc.sum(x));
        // locate summand -> (part, index within part)
        let locate = |parts: &[Obj], k: usize| {
            let mut k = k;
            for (p, x) in parts.iter().enumerate() {
                if k < x.len() {
                    return (p, k);
                }
                k -= x.len();
            }
            unreachable!()
        };
        self.from_blocks(&src, &tgt, |i, j| {
            let (r, ii) = locate(tgts, i);
            let (c, jj) = locate(srcs, j);
            let m = &blocks[r][c];
            debug_assert_eq!(m.src, srcs[c]);
            debug_assert_eq!(m.tgt, tgts[r]);
            self.block(m, ii, jj).to_vec()
        })
    }

    /// Composite of basis-coordinate vectors between indecomposables:
    /// `g ∘ f` for `f ∈ Hom(a, b)`, `g ∈ Hom(b, c)`.
    pub fn compose_ind(&self, a: Ind, b: Ind, c: Ind, g: &[Scalar], f: &[Scalar]) -> Vector {
        let fp = self.fp;
        let dab = self.hom_dim_ind(a, b);
        let table = self.compose_table(a, b, c);
        let mut out = vec![0; self.hom_dim_ind(a, c)];
        for (gi, &gc) in g.iter().enumerate() {
            if gc == 0 {
                continue;
            }
            for (fi, &fc) in f.iter().enumerate() {
                if fc == 0 {
                    continue;
                }
                fp.axpy(&mut out, fp.mul(gc, fc), &table[gi * dab + fi]);
            }
        }
        out
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.tgt != g.src {
            return Err(Error::Shape(format!(
                "cannot compose {} after {}",
                self.display_mor(g),
                self.display_mor(f)
            )));
        }
        let fp = self.fp;
        let gb = self.block_offsets(&g.src, &g.tgt);
        let fb = self.block_offsets(&f.src, &f.tgt);
        Ok(self.from_blocks(&f.src, &g.tgt, |k, j| {
            let (a, c) = (f.src.0[j], g.tgt.0[k]);
            let mut acc = vec![0; self.hom_dim_ind(a, c)];
            for (i, &b) in f.tgt.0.iter().enumerate() {
                let gd = self.hom_dim_ind(b, c);
                let fd = self.hom_dim_ind(a, b);
                if gd == 0 || fd == 0 {
                    continue;
                }
                let gv = &g.coords[gb[k][i]..gb[k][i] + gd];
                let fv = &f.coords[fb[i][j]..fb[i][j] + fd];
                let prod = self.compose_ind(a, b, c, gv, fv);
                acc = fp.add_vec(&acc, &prod);
            }
            acc
        }))
    }

    /// Composite of a chain `fs[k] ∘ … ∘ fs[0]`.
    pub fn compose_chain(&self, fs: &[&Morphism]) -> Result<Morphism> {
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = self.compose(f, &acc)?;
        }
        Ok(acc)
    }

    pub fn add(&self, f: &Morphism, g: &Morphism) -> Morphism {
        assert_eq!((&f.src, &f.tgt), (&g.src, &g.tgt), "adding morphisms with different ends");
        Morphism {
            src: f.src.clone(),
            tgt: f.tgt.clone(),
            coords: self.fp.add_vec(&f.coords, &g.coords),
        }
    }

    pub fn sub(&self, f: &Morphism, g: &Morphism) -> Morphism {
        assert_eq!((&f.src, &f.tgt), (&g.src, &g.tgt), "subtracting morphisms with different ends");
        Morphism {
            src: f.src.clone(),
            tgt: f.tgt.clone(),
            coords: self.fp.sub_vec(&f.coords, &g.coords),
        }
    }

    pub fn neg(&self, f: &Morphism) -> Morphism {
        self.scale(self.fp.neg(1), f)
    }

    pub fn scale(&self, c: Scalar, f: &Morphism) -> Morphism {
        Morphism {
            src: f.src.clone(),
            tgt: f.tgt.clone(),
            coords: self.fp.scale_vec(c, &f.coords),
        }
    }

    // ---- Hom spaces as vector spaces --------------------------------------

    /// Basis morphisms of `Hom(x, y)`, one per coordinate.
    pub fn hom_space(&self, x: &Obj, y: &Obj) -> Vec<Morphism> {
        let d = self.hom_dim(x, y);
        (0..d)
            .map(|k| {
                let mut coords = vec![0; d];
                coords[k] = 1;
                Morphism {
                    src: x.clone(),
                    tgt: y.clone(),
                    coords,
                }
            })
            .collect()
    }

    /// Every element of `Hom(x, y)`, if there are at most `cap` of them.
    pub fn hom_elements(&self, x: &Obj, y: &Obj, cap: u64) -> Result<Vec<Morphism>> {
        let d = self.hom_dim(x, y);
        let count = self.fp.count(d);
        if count > cap {
            return Err(Error::TooLarge(count, cap));
        }
        Ok(self
            .fp
            .tuples(d)
            .map(|coords| Morphism {
                src: x.clone(),
                tgt: y.clone(),
                coords,
            })
            .collect())
    }

    /// Matrix of `Hom(s, d) : Hom(s, d.src) -> Hom(s, d.tgt)`, `φ ↦ d ∘ φ`.
    pub fn postcompose_matrix(&self, d: &Morphism, s: &Obj) -> Mat {
        let cols: Vec<Vector> = self
            .hom_space(s, &d.src)
            .iter()
            .map(|e| self.compose(d, e).expect("shapes agree").coords)
            .collect();
        Mat::from_cols(self.hom_dim(s, &d.tgt), &cols)
    }

    /// Matrix of `Hom(d, t) : Hom(d.tgt, t) -> Hom(d.src, t)`, `φ ↦ φ ∘ d`.
    pub fn precompose_matrix(&self, d: &Morphism, t: &Obj) -> Mat {
        let cols: Vec<Vector> = self
            .hom_space(&d.tgt, t)
            .iter()
            .map(|e| self.compose(e, d).expect("shapes agree").coords)
            .collect();
        Mat::from_cols(self.hom_dim(&d.src, t), &cols)
    }

    /// `[X](x, y)`: morphisms factoring through an object of `sub`.
    pub fn ideal_subspace(&self, sub: &Subcategory, x: &Obj, y: &Obj) -> Subspace {
        let mut gens = Vec::new();
        for m in sub.iter() {
            let mo = Obj::ind(m);
            let us = self.hom_space(x, &mo);
            let vs = self.hom_space(&mo, y);
            for u in &us {
                for v in &vs {
                    gens.push(self.compose(v, u).expect("shapes agree").coords);
                }
            }
        }
        Subspace::span(self.fp, self.hom_dim(x, y), gens)
    }

    /// Two-sided inverse of `f`, if `f` is an isomorphism.
    pub fn is_isomorphism(&self, f: &Morphism) -> Option<Morphism> {
        let (a, b) = (&f.src, &f.tgt);
        if a.len() != b.len() && (self.hom_dim(a, a) == 0) != (self.hom_dim(b, b) == 0) {
            return None;
        }
        // unknown g: B -> A with g∘f = 1_A and f∘g = 1_B
        let left = self.precompose_matrix(f, a); // g ↦ g∘f
        let right = self.postcompose_matrix(f, b); // g ↦ f∘g
        let m = Mat::vstack(left.cols(), &[left, right]);
        let mut rhs = self.identity(a).coords;
        rhs.extend(self.identity(b).coords);
        let (sol, _) = m.solve(self.fp, &rhs);
        sol.map(|coords| Morphism {
            src: b.clone(),
            tgt: a.clone(),
            coords,
        })
    }

    /// All automorphisms of `x`, if `End(x)` has at most `cap` elements.
    pub fn automorphisms(&self, x: &Obj, cap: u64) -> Result<Vec<(Morphism, Morphism)>> {
        Ok(self
            .hom_elements(x, x, cap)?
            .into_iter()
            .filter_map(|f| self.is_isomorphism(&f).map(|g| (f, g)))
            .collect())
    }

    /// The isomorphism `from -> to` that matches equal summands in order,
    /// for two orderings of the same multiset.
    pub fn permutation(&self, from: &Obj, to: &Obj) -> Option<Morphism> {
        if !from.same_as(to) {
            return None;
        }
        let mut used = vec![false; to.len()];
        let mut image = vec![0; from.len()];
        for (j, a) in from.0.iter().enumerate() {
            let i = (0..to.len()).find(|&i| !used[i] && to.0[i] == *a)?;
            used[i] = true;
            image[j] = i;
        }
        Some(self.reorder(from, &image))
    }

    /// The isomorphism sending summand `j` of `from` to position `image[j]`.
    pub fn reorder(&self, from: &Obj, image: &[usize]) -> Morphism {
        let mut to = vec![0; from.len()];
        for (j, &i) in image.iter().enumerate() {
            to[i] = from.0[j];
        }
        let to = Obj(to);
        self.from_blocks(from, &to, |i, j| {
            if image[j] == i {
                self.identities[from.0[j]].clone()
            } else {
                vec![0; self.hom_dim_ind(from.0[j], to.0[i])]
            }
        })
    }

    /// Check associativity and identity laws on all basis triples.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let n = self.num_ind();
        let fp = self.fp;
        let unit = |d: usize, k: usize| {
            let mut v = vec![0; d];
            v[k] = 1;
            v
        };
        for a in 0..n {
            for b in 0..n {
                let dab = self.hom_dim_ind(a, b);
                for fi in 0..dab {
                    let f = unit(dab, fi);
                    let l = self.compose_ind(a, b, b, &self.identities[b], &f);
                    let r = self.compose_ind(a, a, b, &f, &self.identities[a]);
                    let inst = format!("{}:{}->{}", self.hom_labels(a, b)[fi], self.names[a], self.names[b]);
                    rep.check("category/identity-left", l == f, inst.clone(), format!("id∘f = {l:?}"));
                    rep.check("category/identity-right", r == f, inst, format!("f∘id = {r:?}"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let dab = self.hom_dim_ind(a, b);
                for c in 0..n {
                    let dbc = self.hom_dim_ind(b, c);
                    for d in 0..n {
                        let dcd = self.hom_dim_ind(c, d);
                        for fi in 0..dab {
                            for gi in 0..dbc {
                                for hi in 0..dcd {
                                    let (f, g, h) = (unit(dab, fi), unit(dbc, gi), unit(dcd, hi));
                                    let hg = self.compose_ind(b, c, d, &h, &g);
                                    let gf = self.compose_ind(a, b, c, &g, &f);
                                    let l = self.compose_ind(a, b, d, &hg, &f);
                                    let r = self.compose_ind(a, c, d, &h, &gf);
                                    rep.check(
                                        "category/associativity",
                                        l == r,
                                        format!(
                                            "({},{},{}) over {}->{}->{}->{}",
                                            self.hom_labels(c, d)[hi],
                                            self.hom_labels(b, c)[gi],
                                            self.hom_labels(a, b)[fi],
                                            self.names[a],
                                            self.names[b],
                                            self.names[c],
                                            self.names[d]
                                        ),
                                        format!("(hg)f = {l:?}, h(gf) = {r:?}"),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        let _ = fp;
        rep
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Small programmatic builder used by fixtures and tests.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    fp: Fp,
    names: Vec<String>,
    labels: Vec<Vec<String>>,
    /// (a, gi over b->c, b, fi over a->b, c) -> coordinates, keyed by labels
    compose: Vec<(String, String, Vector)>,
}

impl CategoryBuilder {
    pub fn new(fp: Fp, names: &[&str]) -> Self {
        let n = names.len();
        CategoryBuilder {
            fp,
            names: names.iter().map(|s| s.to_string()).collect(),
            labels: vec![Vec::new(); n * n],
            compose: Vec::new(),
        }
    }

    fn idx(&self, name: &str) -> Ind {
        self.names.iter().position(|n| n == name).unwrap_or_else(|| panic!("unknown object {name}"))
    }

    /// Add a basis morphism `label: a -> b`.
    pub fn hom(mut self, label: &str, a: &str, b: &str) -> Self {
        let (a, b) = (self.idx(a), self.idx(b));
        let n = self.names.len();
        self.labels[a * n + b].push(label.to_string());
        self
    }

    /// Declare `g ∘ f = coords` (coordinates in the Hom basis of the composite).
    pub fn comp(mut self, g: &str, f: &str, coords: Vector) -> Self {
        self.compose.push((g.to_string(), f.to_string(), coords));
        self
    }

    /// Finish: identities are added as a basis element `id_<name>` at the front
    /// of each endomorphism space unless already present; undeclared composites
    /// of non-identity basis morphisms are zero.
    pub fn build(mut self) -> Result<Category> {
        let n = self.names.len();
        for a in 0..n {
            let id = format!("id_{}", self.names[a]);
            if !self.labels[a * n + a].contains(&id) {
                self.labels[a * n + a].insert(0, id);
            }
        }
        let find = |labels: &[Vec<String>], l: &str| -> Option<(Ind, Ind, usize)> {
            for a in 0..n {
                for b in 0..n {
                    if let Some(k) = labels[a * n + b].iter().position(|x| x == l) {
                        return Some((a, b, k));
                    }
                }
            }
            None
        };
        let mut compose = vec![Vec::new(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let dab = self.labels[a * n + b].len();
                    let dbc = self.labels[b * n + c].len();
                    let dac = self.labels[a * n + c].len();
                    let mut t = vec![vec![0; dac]; dab * dbc];
                    for gi in 0..dbc {
                        for fi in 0..dab {
                            let gl = &self.labels[b * n + c][gi];
                            let fl = &self.labels[a * n + b][fi];
                            let v = &mut t[gi * dab + fi];
                            if gl.starts_with("id_") && b == c {
                                v[fi] = 1;
                            } else if fl.starts_with("id_") && a == b {
                                v[gi] = 1;
                            }
                        }
                    }
                    compose[(a * n + b) * n + c] = t;
                }
            }
        }
        for (g, f, coords) in std::mem::take(&mut self.compose) {
            let (b, c, gi) = find(&self.labels, &g).ok_or_else(|| Error::UnknownObject(g.clone()))?;
            let (a, b2, fi) = find(&self.labels, &f).ok_or_else(|| Error::UnknownObject(f.clone()))?;
            if b != b2 {
                return Err(Error::Shape(format!("{g} ∘ {f} not composable")));
            }
            let dab = self.labels[a * n + b].len();
            compose[(a * n + b) * n + c][gi * dab + fi] = coords;
        }
        let identities = (0..n)
            .map(|a| {
                let mut v = vec![0; self.labels[a * n + a].len()];
                v[0] = 1;
                v
            })
            .collect();
        Category::new(self.fp, self.names, self.labels, compose, identities)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The A3 / (αβ = 0) category: S3 -a-> P2 -b-> P1 -c-> S1, all composites zero.
    pub(crate) fn f1_category() -> Category {
        CategoryBuilder::new(Fp::new(2).unwrap(), &["S3", "P2", "P1", "S1"])
            .hom("a", "S3", "P2")
            .hom("b", "P2", "P1")
            .hom("c", "P1", "S1")
            .build()
            .unwrap()
    }

    #[test]
    fn one_object_category_is_valid() {
        let c = CategoryBuilder::new(Fp::new(2).unwrap(), &["X"]).build().unwrap();
        assert!(c.validate().ok());
    }

    #[test]
    fn f1_category_is_valid() {
        assert!(f1_category().validate().ok());
    }

    #[test]
    fn planted_identity_violation_is_reported() {
        let fp = Fp::new(2).unwrap();
        let c = f1_category();
        // rebuild with id_P2 ∘ a = 0
        let n = c.num_ind();
        let mut compose = c.compose.clone();
        let (s3, p2) = (0, 1);
        compose[(s3 * n + p2) * n + p2][0] = vec![0];
        let bad = Category::new(fp, c.names.clone(), c.hom_labels.clone(), compose, c.identities.clone()).unwrap();
        let rep = bad.validate();
        assert!(rep.failed("category/identity-left"));
    }

    #[test]
    fn composition_examples() {
        let c = f1_category();
        let s3 = c.obj(&["S3"]).unwrap();
        let p2 = c.obj(&["P2"]).unwrap();
        let p1 = c.obj(&["P1"]).unwrap();
        let a = c.morphism(&s3, &p2, vec![1]).unwrap();
        let b = c.morphism(&p2, &p1, vec![1]).unwrap();
        assert_eq!(c.compose(&c.identity(&p2), &a).unwrap(), a);
        assert!(c.compose(&b, &c.zero(&s3, &p2)).unwrap().is_zero());
        assert!(c.compose(&b, &a).unwrap().is_zero());
        assert!(c.compose(&a, &b).is_err());
    }

    #[test]
    fn hom_space_examples() {
        let c = f1_category();
        let o = |n: &str| c.obj(&[n]).unwrap();
        assert_eq!(c.hom_dim(&Obj::zero(), &o("P2")), 0);
        assert_eq!(c.hom_dim(&o("S3"), &o("P2")), 1);
        assert_eq!(c.hom_dim(&o("S3"), &o("P1")), 0);
        let two = c.obj(&["S3", "P2"]).unwrap();
        assert_eq!(
            c.hom_dim(&two, &o("P2")),
            c.hom_dim(&o("S3"), &o("P2")) + c.hom_dim(&o("P2"), &o("P2"))
        );
    }

    #[test]
    fn ideal_examples() {
        let c = f1_category();
        let o = |n: &str| c.obj(&[n]).unwrap();
        let x = c.subcategory(&["P2", "P1"]).unwrap();
        assert!(c.ideal_subspace(&x, &o("S3"), &o("S3")).is_zero());
        assert!(c.ideal_subspace(&x, &o("P2"), &o("P2")).is_full());
        let all = c.all_ind();
        let s = c.obj(&["S3", "P2", "S1"]).unwrap();
        assert!(c.ideal_subspace(&all, &s, &s).is_full());
    }

    #[test]
    fn isomorphism_examples() {
        let c = f1_category();
        let s3 = c.obj(&["S3"]).unwrap();
        assert_eq!(c.is_isomorphism(&c.identity(&s3)), Some(c.identity(&s3)));
        assert_eq!(c.is_isomorphism(&c.zero(&s3, &s3)), None);
        let ss = c.obj(&["S3", "S3"]).unwrap();
        let swap = c.morphism(&ss, &ss, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(c.is_isomorphism(&swap), Some(swap.clone()));
        assert_eq!(c.automorphisms(&ss, 1 << 10).unwrap().len(), 6); // |GL_2(F_2)|
    }

    #[test]
    fn permutation_matches_summands() {
        let c = f1_category();
        let x = c.obj(&["S3", "P2"]).unwrap();
        let y = c.obj(&["P2", "S3"]).unwrap();
        let p = c.permutation(&x, &y).unwrap();
        let q = c.permutation(&y, &x).unwrap();
        assert_eq!(c.compose(&q, &p).unwrap(), c.identity(&x));
    }
}
