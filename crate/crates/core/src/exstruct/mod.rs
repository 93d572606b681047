//! Extension bifunctors `E(C, A)`, realizations and n-exangles.

mod axioms;

pub use axioms::{objects_up_to, Bounds, Catalog, Checker, ProjInj};

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::fincat::{Category, Ind, Morphism, Obj};
use crate::linalg::{Mat, Scalar, Vector};
use crate::report::Report;

/// An element of `E(c, a)`. Coordinates are laid out in blocks `(j, i)`
/// for `c`-summand `j` (outer) and `a`-summand `i` (inner).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extension {
    pub c: Obj,
    pub a: Obj,
    pub coords: Vector,
}

impl Extension {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

/// Key of a stored realization: `(C, A, coordinates)` over indecomposables.
pub type TableKey = (Ind, Ind, Vector);

/// A finite presentation of `(C, E, s)`.
#[derive(Debug)]
pub struct ExtStructure {
    cat: Category,
    n: usize,
    dims: Vec<usize>,
    /// `cov[(c, a, a2)][k]`: action of the `k`-th basis map `a → a2` on `E(c, −)`.
    cov: Vec<Vec<Mat>>,
    /// `contra[(c2, c, a)][k]`: action of the `k`-th basis map `c2 → c` on `E(−, a)`.
    contra: Vec<Vec<Mat>>,
    table: BTreeMap<TableKey, Complex>,
    realized: Mutex<HashMap<(Obj, Obj, Vector), Complex>>,
    autos: Mutex<HashMap<Obj, Vec<Morphism>>>,
}

impl PartialEq for ExtStructure {
    fn eq(&self, other: &Self) -> bool {
        self.cat == other.cat
            && self.n == other.n
            && self.dims == other.dims
            && self.cov == other.cov
            && self.contra == other.contra
            && self.table == other.table
    }
}

impl Clone for ExtStructure {
    fn clone(&self) -> Self {
        ExtStructure {
            cat: self.cat.clone(),
            n: self.n,
            dims: self.dims.clone(),
            cov: self.cov.clone(),
            contra: self.contra.clone(),
            table: self.table.clone(),
            realized: Mutex::default(),
            autos: Mutex::default(),
        }
    }
}

impl ExtStructure {
    /// Assemble a structure. `dims[c * N + a] = dim E(c, a)`. Table entries
    /// for zero elements may be omitted; the split complex is used for them.
    pub fn new(
        cat: Category,
        n: usize,
        dims: Vec<usize>,
        cov: Vec<Vec<Mat>>,
        contra: Vec<Vec<Mat>>,
        table: BTreeMap<TableKey, Complex>,
    ) -> Result<Self> {
        let k = cat.num_ind();
        if n == 0 {
            return Err(Error::Shape("n must be positive".into()));
        }
        if dims.len() != k * k || cov.len() != k * k * k || contra.len() != k * k * k {
            return Err(Error::Shape("extension table sizes".into()));
        }
        for c in 0..k {
            for a in 0..k {
                for a2 in 0..k {
                    let ms = &cov[(c * k + a) * k + a2];
                    if ms.len() != cat.hom_dim_ind(a, a2)
                        || ms.iter().any(|m| m.rows() != dims[c * k + a2] || m.cols() != dims[c * k + a])
                    {
                        return Err(Error::Shape(format!(
                            "covariant action E({}, {} -> {})",
                            cat.name(c),
                            cat.name(a),
                            cat.name(a2)
                        )));
                    }
                }
            }
        }
        for c2 in 0..k {
            for c in 0..k {
                for a in 0..k {
                    let ms = &contra[(c2 * k + c) * k + a];
                    if ms.len() != cat.hom_dim_ind(c2, c)
                        || ms.iter().any(|m| m.rows() != dims[c2 * k + a] || m.cols() != dims[c * k + a])
                    {
                        return Err(Error::Shape(format!(
                            "contravariant action E({} -> {}, {})",
                            cat.name(c2),
                            cat.name(c),
                            cat.name(a)
                        )));
                    }
                }
            }
        }
        let mut table = table;
        for ((c, a, v), x) in &table {
            if v.len() != dims[c * k + a] {
                return Err(Error::Shape(format!("realization key for E({}, {})", cat.name(*c), cat.name(*a))));
            }
            if x.n() != n || x.first() != &Obj::ind(*a) || x.last() != &Obj::ind(*c) {
                return Err(Error::Shape(format!(
                    "realization of an element of E({}, {}) has wrong shape",
                    cat.name(*c),
                    cat.name(*a)
                )));
            }
        }
        for c in 0..k {
            for a in 0..k {
                let d = dims[c * k + a];
                table
                    .entry((c, a, vec![0; d]))
                    .or_insert_with(|| Complex::split(&cat, &Obj::ind(a), &Obj::ind(c), n));
                for v in cat.fp().tuples(d) {
                    if !table.contains_key(&(c, a, v.clone())) {
                        return Err(Error::Realize(format!(
                            "no stored realization for {v:?} in E({}, {})",
                            cat.name(c),
                            cat.name(a)
                        )));
                    }
                }
            }
        }
        Ok(ExtStructure {
            cat,
            n,
            dims,
            cov,
            contra,
            table,
            realized: Mutex::default(),
            autos: Mutex::default(),
        })
    }

    /// The structure with `E = 0`: every conflation splits.
    pub fn trivial(cat: Category, n: usize) -> Result<Self> {
        let k = cat.num_ind();
        let mut cov = Vec::with_capacity(k * k * k);
        let mut contra = Vec::with_capacity(k * k * k);
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    cov.push(vec![Mat::zeros(0, 0); cat.hom_dim_ind(y, z)]);
                    contra.push(vec![Mat::zeros(0, 0); cat.hom_dim_ind(x, y)]);
                }
            }
        }
        ExtStructure::new(cat, n, vec![0; k * k], cov, contra, BTreeMap::new())
    }

    pub fn cat(&self) -> &Category {
        &self.cat
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ext_dim_ind(&self, c: Ind, a: Ind) -> usize {
        self.dims[c * self.cat.num_ind() + a]
    }

    pub fn ext_dim(&self, c: &Obj, a: &Obj) -> usize {
        c.0.iter()
            .map(|&j| a.0.iter().map(|&i| self.ext_dim_ind(j, i)).sum::<usize>())
            .sum()
    }

    pub fn table(&self) -> &BTreeMap<TableKey, Complex> {
        &self.table
    }

    pub fn cov_basis(&self, c: Ind, a: Ind, a2: Ind) -> &[Mat] {
        let k = self.cat.num_ind();
        &self.cov[(c * k + a) * k + a2]
    }

    pub fn contra_basis(&self, c2: Ind, c: Ind, a: Ind) -> &[Mat] {
        let k = self.cat.num_ind();
        &self.contra[(c2 * k + c) * k + a]
    }

    /// `E(c, f)` for `f ∈ Hom(a, a2)` given in coordinates.
    pub fn cov_ind(&self, c: Ind, a: Ind, a2: Ind, f: &[Scalar]) -> Mat {
        let fp = self.cat.fp();
        let mut m = Mat::zeros(self.ext_dim_ind(c, a2), self.ext_dim_ind(c, a));
        for (k, &x) in f.iter().enumerate() {
            if x != 0 {
                m = m.add(fp, &self.cov_basis(c, a, a2)[k].scale(fp, x));
            }
        }
        m
    }

    /// `E(g, a)` for `g ∈ Hom(c2, c)` given in coordinates.
    pub fn contra_ind(&self, c2: Ind, c: Ind, a: Ind, g: &[Scalar]) -> Mat {
        let fp = self.cat.fp();
        let mut m = Mat::zeros(self.ext_dim_ind(c2, a), self.ext_dim_ind(c, a));
        for (k, &x) in g.iter().enumerate() {
            if x != 0 {
                m = m.add(fp, &self.contra_basis(c2, c, a)[k].scale(fp, x));
            }
        }
        m
    }

    fn offsets(&self, c: &Obj, a: &Obj) -> Vec<Vec<usize>> {
        let mut off = 0;
        c.0.iter()
            .map(|&j| {
                a.0.iter()
                    .map(|&i| {
                        let o = off;
                        off += self.ext_dim_ind(j, i);
                        o
                    })
                    .collect()
            })
            .collect()
    }

    pub fn zero_ext(&self, c: &Obj, a: &Obj) -> Extension {
        Extension {
            c: c.clone(),
            a: a.clone(),
            coords: vec![0; self.ext_dim(c, a)],
        }
    }

    pub fn extension(&self, c: &Obj, a: &Obj, coords: Vector) -> Result<Extension> {
        if coords.len() != self.ext_dim(c, a) {
            return Err(Error::Shape(format!(
                "E({}, {}) has dimension {}, got {} coordinates",
                self.cat.display_obj(c),
                self.cat.display_obj(a),
                self.ext_dim(c, a),
                coords.len()
            )));
        }
        Ok(Extension {
            c: c.clone(),
            a: a.clone(),
            coords,
        })
    }

    /// Block `(j, i)` of `δ`, an element of `E(c_j, a_i)`.
    pub fn ext_block(&self, d: &Extension, j: usize, i: usize) -> Vector {
        let o = self.offsets(&d.c, &d.a)[j][i];
        d.coords[o..o + self.ext_dim_ind(d.c.0[j], d.a.0[i])].to_vec()
    }

    fn ext_from_blocks(&self, c: &Obj, a: &Obj, mut block: impl FnMut(usize, usize) -> Vector) -> Extension {
        let mut coords = Vec::with_capacity(self.ext_dim(c, a));
        for j in 0..c.len() {
            for i in 0..a.len() {
                coords.extend(block(j, i));
            }
        }
        Extension {
            c: c.clone(),
            a: a.clone(),
            coords,
        }
    }

    /// Every element of `E(c, a)`.
    pub fn elements(&self, c: &Obj, a: &Obj) -> Vec<Extension> {
        self.cat
            .fp()
            .tuples(self.ext_dim(c, a))
            .map(|coords| Extension {
                c: c.clone(),
                a: a.clone(),
                coords,
            })
            .collect()
    }

    /// `a_* δ` for `a: A → A′`.
    pub fn push(&self, f: &Morphism, d: &Extension) -> Result<Extension> {
        if f.src != d.a {
            return Err(Error::Shape("pushout along a map not starting at the first end".into()));
        }
        let fp = self.cat.fp();
        Ok(self.ext_from_blocks(&d.c, &f.tgt, |j, i2| {
            let cj = d.c.0[j];
            let mut acc = vec![0; self.ext_dim_ind(cj, f.tgt.0[i2])];
            for (i, &ai) in d.a.0.iter().enumerate() {
                let fb = self.cat.block(f, i2, i);
                if fb.iter().all(|&x| x == 0) || self.ext_dim_ind(cj, ai) == 0 {
                    continue;
                }
                let m = self.cov_ind(cj, ai, f.tgt.0[i2], fb);
                acc = fp.add_vec(&acc, &m.apply(fp, &self.ext_block(d, j, i)));
            }
            acc
        }))
    }

    /// `c^* δ` for `c: C′ → C`.
    pub fn pull(&self, g: &Morphism, d: &Extension) -> Result<Extension> {
        if g.tgt != d.c {
            return Err(Error::Shape("pullback along a map not ending at the last end".into()));
        }
        let fp = self.cat.fp();
        Ok(self.ext_from_blocks(&g.src, &d.a, |j2, i| {
            let ai = d.a.0[i];
            let mut acc = vec![0; self.ext_dim_ind(g.src.0[j2], ai)];
            for (j, &cj) in d.c.0.iter().enumerate() {
                let gb = self.cat.block(g, j, j2);
                if gb.iter().all(|&x| x == 0) || self.ext_dim_ind(cj, ai) == 0 {
                    continue;
                }
                let m = self.contra_ind(g.src.0[j2], cj, ai, gb);
                acc = fp.add_vec(&acc, &m.apply(fp, &self.ext_block(d, j, i)));
            }
            acc
        }))
    }

    /// `a_* c^* δ`; either map may be omitted.
    pub fn transport(&self, a: Option<&Morphism>, c: Option<&Morphism>, d: &Extension) -> Result<Extension> {
        let d = match c {
            Some(c) => self.pull(c, d)?,
            None => d.clone(),
        };
        match a {
            Some(a) => self.push(a, &d),
            None => Ok(d),
        }
    }

    /// `δ ⊕ δ′ ∈ E(C ⊕ C′, A ⊕ A′)`.
    pub fn direct_sum_ext(&self, d: &Extension, e: &Extension) -> Extension {
        let c = d.c.sum(&e.c);
        let a = d.a.sum(&e.a);
        self.ext_from_blocks(&c, &a, |j, i| {
            let (cl, al) = (d.c.len(), d.a.len());
            if j < cl && i < al {
                self.ext_block(d, j, i)
            } else if j >= cl && i >= al {
                self.ext_block(e, j - cl, i - al)
            } else {
                vec![0; self.ext_dim_ind(c.0[j], a.0[i])]
            }
        })
    }

    pub fn add_ext(&self, d: &Extension, e: &Extension) -> Extension {
        assert_eq!((&d.c, &d.a), (&e.c, &e.a));
        Extension {
            c: d.c.clone(),
            a: d.a.clone(),
            coords: self.cat.fp().add_vec(&d.coords, &e.coords),
        }
    }

    /// Matrices of `(δ♯)_M: C(M, C) → E(M, A), f ↦ f^*δ` and
    /// `δ♯_M: C(A, M) → E(C, M), g ↦ g_*δ`.
    pub fn sharp_maps(&self, d: &Extension, m: &Obj) -> (Mat, Mat) {
        let contra: Vec<Vector> = self
            .cat
            .hom_space(m, &d.c)
            .iter()
            .map(|f| self.pull(f, d).expect("shapes agree").coords)
            .collect();
        let cov: Vec<Vector> = self
            .cat
            .hom_space(&d.a, m)
            .iter()
            .map(|g| self.push(g, d).expect("shapes agree").coords)
            .collect();
        (
            Mat::from_cols(self.ext_dim(m, &d.a), &contra),
            Mat::from_cols(self.ext_dim(&d.c, m), &cov),
        )
    }

    /// Check that `⟨x, δ⟩` is an n-exangle: the attached conditions and
    /// exactness of both Hom sequences, tested on indecomposable arguments.
    pub fn is_n_exangle(&self, x: &Complex, d: &Extension) -> Result<Report> {
        if x.first() != &d.a || x.last() != &d.c {
            return Err(Error::Precondition("complex and extension have different ends".into()));
        }
        let cat = &self.cat;
        let fp = cat.fp();
        let n = x.n();
        let mut rep = Report::new();
        let name = x.display(cat);
        let pushed = self.push(x.d(0), d)?;
        rep.check("exangle/attached", pushed.is_zero(), format!("{name} (d0)_*"), "(d⁰)_*δ ≠ 0");
        let pulled = self.pull(x.d(n), d)?;
        rep.check("exangle/attached", pulled.is_zero(), format!("{name} (dn)^*"), "(dⁿ)^*δ ≠ 0");
        for mi in 0..cat.num_ind() {
            let m = Obj::ind(mi);
            let (sharp_contra, sharp_cov) = self.sharp_maps(d, &m);
            // C(M, −): exact at X^1 .. X^{n+1}
            for i in 1..=n + 1 {
                let img = cat.postcompose_matrix(x.d(i - 1), &m).image(fp);
                let ker = if i <= n {
                    cat.postcompose_matrix(x.d(i), &m).kernel(fp)
                } else {
                    sharp_contra.kernel(fp)
                };
                rep.check(
                    "exangle/exact-hom-into",
                    img == ker,
                    format!("{name} at C({}, X^{i})", cat.name(mi)),
                    format!("image dim {} vs kernel dim {}", img.dim(), ker.dim()),
                );
            }
            // C(−, M): exact at X^n .. X^0
            for i in 0..=n {
                let img = cat.precompose_matrix(x.d(i), &m).image(fp);
                let ker = if i >= 1 {
                    cat.precompose_matrix(x.d(i - 1), &m).kernel(fp)
                } else {
                    sharp_cov.kernel(fp)
                };
                rep.check(
                    "exangle/exact-hom-out",
                    img == ker,
                    format!("{name} at C(X^{i}, {})", cat.name(mi)),
                    format!("image dim {} vs kernel dim {}", img.dim(), ker.dim()),
                );
            }
        }
        Ok(rep)
    }

    pub(crate) fn automorphisms(&self, x: &Obj, cap: u64) -> Result<Vec<Morphism>> {
        if let Some(v) = self.autos.lock().expect("cache lock").get(x) {
            return Ok(v.clone());
        }
        let v: Vec<Morphism> = self.cat.automorphisms(x, cap)?.into_iter().map(|(f, _)| f).collect();
        self.autos.lock().expect("cache lock").insert(x.clone(), v.clone());
        Ok(v)
    }

    /// A complex realizing `δ`. Indecomposable ends are looked up in the
    /// table. Otherwise automorphisms `α` of `A` and `γ` of `C` are searched
    /// until `α_*γ^*δ` has at most one nonzero block in every row and column;
    /// that element is realized by a direct sum of stored complexes and split
    /// pieces, and the result is moved back along `(α, γ)`.
    pub fn realize(&self, d: &Extension) -> Result<Complex> {
        let key = (d.c.clone(), d.a.clone(), d.coords.clone());
        if let Some(x) = self.realized.lock().expect("cache lock").get(&key) {
            return Ok(x.clone());
        }
        let x = self.realize_uncached(d)?;
        self.realized.lock().expect("cache lock").insert(key, x.clone());
        Ok(x)
    }

    fn realize_uncached(&self, d: &Extension) -> Result<Complex> {
        let cat = &self.cat;
        if d.coords.len() != self.ext_dim(&d.c, &d.a) {
            return Err(Error::Shape("extension coordinates".into()));
        }
        if d.c.len() == 1 && d.a.len() == 1 {
            let k = (d.c.0[0], d.a.0[0], d.coords.clone());
            return self
                .table
                .get(&k)
                .cloned()
                .ok_or_else(|| Error::Realize(format!("{:?} not in table", d.coords)));
        }
        if d.is_zero() {
            return Ok(Complex::split(cat, &d.a, &d.c, self.n));
        }
        const CAP: u64 = 1 << 20;
        let alphas = self.automorphisms(&d.a, CAP)?;
        let gammas = self.automorphisms(&d.c, CAP)?;
        for gamma in &gammas {
            let pulled = self.pull(gamma, d)?;
            for alpha in &alphas {
                let d0 = self.push(alpha, &pulled)?;
                if let Some(x0) = self.realize_monomial(&d0)? {
                    return x0.reattach_ends(cat, alpha, gamma);
                }
            }
        }
        Err(Error::Realize(format!(
            "no block-monomial form found for {:?} in E({}, {})",
            d.coords,
            cat.display_obj(&d.c),
            cat.display_obj(&d.a)
        )))
    }

    /// Realize `δ` if it has at most one nonzero block per row and column.
    fn realize_monomial(&self, d: &Extension) -> Result<Option<Complex>> {
        let cat = &self.cat;
        let mut partner_of_a = vec![None; d.a.len()];
        let mut c_used = vec![false; d.c.len()];
        for j in 0..d.c.len() {
            for i in 0..d.a.len() {
                if self.ext_block(d, j, i).iter().any(|&x| x != 0) {
                    if c_used[j] || partner_of_a[i].is_some() {
                        return Ok(None);
                    }
                    c_used[j] = true;
                    partner_of_a[i] = Some(j);
                }
            }
        }
        let mut pieces = Vec::new();
        let mut c_perm = Vec::new();
        for (i, p) in partner_of_a.iter().enumerate() {
            let ai = d.a.0[i];
            match p {
                Some(j) => {
                    let cj = d.c.0[*j];
                    let k = (cj, ai, self.ext_block(d, *j, i));
                    let x = self.table.get(&k).ok_or_else(|| Error::Realize("table entry missing".into()))?;
                    pieces.push(x.clone());
                    c_perm.push(*j);
                }
                None => pieces.push(Complex::split(cat, &Obj::ind(ai), &Obj::zero(), self.n)),
            }
        }
        for (j, used) in c_used.iter().enumerate() {
            if !used {
                pieces.push(Complex::split(cat, &Obj::zero(), &Obj::ind(d.c.0[j]), self.n));
                c_perm.push(j);
            }
        }
        let mut sum = pieces[0].clone();
        for p in &pieces[1..] {
            sum = sum.direct_sum(cat, p);
        }
        debug_assert_eq!(sum.first(), &d.a);
        let perm_c = Obj(c_perm.iter().map(|&j| d.c.0[j]).collect());
        let to_c = cat.reorder(&perm_c, &c_perm);
        Ok(Some(sum.reattach_ends(cat, &cat.identity(&d.a), &to_c)?))
    }

    /// Functoriality, bifunctoriality and additivity of the action tables.
    pub fn validate_bifunctor(&self) -> Report {
        let cat = &self.cat;
        let fp = cat.fp();
        let k = cat.num_ind();
        let mut rep = Report::new();
        let unit = |d: usize, i: usize| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        };
        for x in 0..k {
            for y in 0..k {
                let id = cat.identity_coords(y);
                rep.check(
                    "bifunctor/identity-cov",
                    self.cov_ind(x, y, y, id) == Mat::identity(self.ext_dim_ind(x, y)),
                    format!("E({}, 1_{})", cat.name(x), cat.name(y)),
                    "identity acts nontrivially",
                );
                let id = cat.identity_coords(x);
                rep.check(
                    "bifunctor/identity-contra",
                    self.contra_ind(x, x, y, id) == Mat::identity(self.ext_dim_ind(x, y)),
                    format!("E(1_{}, {})", cat.name(x), cat.name(y)),
                    "identity acts nontrivially",
                );
            }
        }
        // covariant: E(c, g∘f) = E(c, g) E(c, f)
        for c in 0..k {
            for a in 0..k {
                for b in 0..k {
                    for e in 0..k {
                        let (dab, dbe) = (cat.hom_dim_ind(a, b), cat.hom_dim_ind(b, e));
                        for fi in 0..dab {
                            for gi in 0..dbe {
                                let (f, g) = (unit(dab, fi), unit(dbe, gi));
                                let gf = cat.compose_ind(a, b, e, &g, &f);
                                let l = self.cov_ind(c, a, e, &gf);
                                let r = self.cov_ind(c, b, e, &g).mul(fp, &self.cov_ind(c, a, b, &f));
                                rep.check(
                                    "bifunctor/functorial-cov",
                                    l == r,
                                    format!(
                                        "E({}, {}∘{})",
                                        cat.name(c),
                                        cat.hom_labels(b, e)[gi],
                                        cat.hom_labels(a, b)[fi]
                                    ),
                                    "action of composite differs from composite of actions",
                                );
                            }
                        }
                    }
                }
            }
        }
        // contravariant: E(g∘h, a) = E(h, a) E(g, a) for h: c3 → c2, g: c2 → c
        for a in 0..k {
            for c3 in 0..k {
                for c2 in 0..k {
                    for c in 0..k {
                        let (dh, dg) = (cat.hom_dim_ind(c3, c2), cat.hom_dim_ind(c2, c));
                        for hi in 0..dh {
                            for gi in 0..dg {
                                let (h, g) = (unit(dh, hi), unit(dg, gi));
                                let gh = cat.compose_ind(c3, c2, c, &g, &h);
                                let l = self.contra_ind(c3, c, a, &gh);
                                let r = self.contra_ind(c3, c2, a, &h).mul(fp, &self.contra_ind(c2, c, a, &g));
                                rep.check(
                                    "bifunctor/functorial-contra",
                                    l == r,
                                    format!(
                                        "E({}∘{}, {})",
                                        cat.hom_labels(c2, c)[gi],
                                        cat.hom_labels(c3, c2)[hi],
                                        cat.name(a)
                                    ),
                                    "action of composite differs from composite of actions",
                                );
                            }
                        }
                    }
                }
            }
        }
        // E(g, a2) E(c, f) = E(c2, f) E(g, a) for f: a → a2, g: c2 → c
        for a in 0..k {
            for a2 in 0..k {
                for c2 in 0..k {
                    for c in 0..k {
                        let (df, dg) = (cat.hom_dim_ind(a, a2), cat.hom_dim_ind(c2, c));
                        for fi in 0..df {
                            for gi in 0..dg {
                                let (f, g) = (unit(df, fi), unit(dg, gi));
                                let l = self.contra_ind(c2, c, a2, &g).mul(fp, &self.cov_ind(c, a, a2, &f));
                                let r = self.cov_ind(c2, a, a2, &f).mul(fp, &self.contra_ind(c2, c, a, &g));
                                rep.check(
                                    "bifunctor/bifunctorial",
                                    l == r,
                                    format!("{} and {}", cat.hom_labels(a, a2)[fi], cat.hom_labels(c2, c)[gi]),
                                    "the two actions do not commute",
                                );
                            }
                        }
                    }
                }
            }
        }
        // additivity: (f ⊕ f)_*(δ ⊕ δ′) = f_*δ ⊕ f_*δ′ on basis data
        for c in 0..k {
            for a in 0..k {
                for a2 in 0..k {
                    let df = cat.hom_dim_ind(a, a2);
                    let de = self.ext_dim_ind(c, a);
                    for fi in 0..df {
                        for ei in 0..de {
                            let (co, ao, a2o) = (Obj::ind(c), Obj::ind(a), Obj::ind(a2));
                            let f = cat.morphism(&ao, &a2o, unit(df, fi)).expect("shape");
                            let d = self.extension(&co, &ao, unit(de, ei)).expect("shape");
                            let ff = cat.from_grid(
                                &[ao.clone(), ao.clone()],
                                &[a2o.clone(), a2o.clone()],
                                &[vec![f.clone(), cat.zero(&ao, &a2o)], vec![cat.zero(&ao, &a2o), f.clone()]],
                            );
                            let dd = self.direct_sum_ext(&d, &d);
                            let l = self.push(&ff, &dd).expect("shape");
                            let fd = self.push(&f, &d).expect("shape");
                            let r = self.direct_sum_ext(&fd, &fd);
                            rep.check(
                                "bifunctor/additive",
                                l == r,
                                format!("{} on E({}, {})", cat.hom_labels(a, a2)[fi], cat.name(c), cat.name(a)),
                                "direct sum not preserved",
                            );
                        }
                    }
                }
            }
        }
        rep
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;
    use crate::linalg::Fp;

    /// The A3 structure with `E(S1, S3) = F_2` realized by `S3 → P2 → P1 → S1`.
    pub(crate) fn f1() -> ExtStructure {
        let cat = CategoryBuilder::new(Fp::new(2).unwrap(), &["S3", "P2", "P1", "S1"])
            .hom("a", "S3", "P2")
            .hom("b", "P2", "P1")
            .hom("c", "P1", "S1")
            .build()
            .unwrap();
        let k = 4;
        let mut dims = vec![0; 16];
        dims[3 * k] = 1;
        let mut cov = Vec::new();
        let mut contra = Vec::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    // cov[(c=x, a=y, a2=z)], contra[(c2=x, c=y, a=z)]
                    cov.push(
                        (0..cat.hom_dim_ind(y, z))
                            .map(|_| {
                                let (r, c) = (dims[x * k + z], dims[x * k + y]);
                                if y == z { Mat::identity(r) } else { Mat::zeros(r, c) }
                            })
                            .collect(),
                    );
                    contra.push(
                        (0..cat.hom_dim_ind(x, y))
                            .map(|_| {
                                let (r, c) = (dims[x * k + z], dims[y * k + z]);
                                if x == y { Mat::identity(r) } else { Mat::zeros(r, c) }
                            })
                            .collect(),
                    );
                }
            }
        }
        let o = |n: &str| cat.obj(&[n]).unwrap();
        let terms = vec![o("S3"), o("P2"), o("P1"), o("S1")];
        let diffs = terms.windows(2).map(|w| cat.morphism(&w[0], &w[1], vec![1]).unwrap()).collect();
        let mut table = BTreeMap::new();
        table.insert((3, 0, vec![1]), Complex::new(terms, diffs).unwrap());
        ExtStructure::new(cat, 2, dims, cov, contra, table).unwrap()
    }

    #[test]
    fn f1_bifunctor_is_valid() {
        let e = f1();
        let rep = e.validate_bifunctor();
        assert!(rep.ok(), "{rep}");
        let t = ExtStructure::trivial(e.cat().clone(), 2).unwrap();
        assert!(t.validate_bifunctor().ok());
    }

    #[test]
    fn transport_examples() {
        let e = f1();
        let cat = e.cat();
        let (s3, p1, s1) = (cat.obj(&["S3"]).unwrap(), cat.obj(&["P1"]).unwrap(), cat.obj(&["S1"]).unwrap());
        let d = e.extension(&s1, &s3, vec![1]).unwrap();
        let same = e.transport(Some(&cat.identity(&s3)), Some(&cat.identity(&s1)), &d).unwrap();
        assert_eq!(same, d);
        assert!(e.push(&cat.zero(&s3, &s3), &d).unwrap().is_zero());
        let epi = cat.morphism(&p1, &s1, vec![1]).unwrap();
        let pulled = e.pull(&epi, &d).unwrap();
        assert!(pulled.coords.is_empty());
    }

    #[test]
    fn sum_formula_over_f2() {
        let e = f1();
        let cat = e.cat();
        let (s3, s1) = (cat.obj(&["S3"]).unwrap(), cat.obj(&["S1"]).unwrap());
        let d = e.extension(&s1, &s3, vec![1]).unwrap();
        let dd = e.direct_sum_ext(&d, &d);
        let codiag = cat.morphism(&s3.sum(&s3), &s3, vec![1, 1]).unwrap();
        let diag = cat.morphism(&s1, &s1.sum(&s1), vec![1, 1]).unwrap();
        let lhs = e.transport(Some(&codiag), Some(&diag), &dd).unwrap();
        assert_eq!(lhs, e.add_ext(&d, &d));
        assert!(lhs.is_zero());
    }

    #[test]
    fn sharp_map_of_generator() {
        let e = f1();
        let cat = e.cat();
        let (s3, s1) = (cat.obj(&["S3"]).unwrap(), cat.obj(&["S1"]).unwrap());
        let d = e.extension(&s1, &s3, vec![1]).unwrap();
        let (contra, _) = e.sharp_maps(&d, &s1);
        assert_eq!(contra.rank(cat.fp()), 1);
        let (z1, z2) = e.sharp_maps(&d, &Obj::zero());
        assert_eq!((z1.rows(), z1.cols(), z2.rows(), z2.cols()), (0, 0, 0, 0));
    }

    #[test]
    fn exangle_examples() {
        let e = f1();
        let cat = e.cat();
        let (s3, s1) = (cat.obj(&["S3"]).unwrap(), cat.obj(&["S1"]).unwrap());
        let d = e.extension(&s1, &s3, vec![1]).unwrap();
        let x = e.realize(&d).unwrap();
        assert!(e.is_n_exangle(&x, &d).unwrap().ok());
        let split = Complex::split(cat, &s3, &s1, 2);
        assert!(e.is_n_exangle(&split, &e.zero_ext(&s1, &s3)).unwrap().ok());
        let rep = e.is_n_exangle(&split, &d).unwrap();
        assert!(!rep.ok());
        let p2 = cat.obj(&["P2"]).unwrap();
        let r2 = Complex::split(cat, &p2, &Obj::zero(), 2);
        assert!(e.is_n_exangle(&r2, &e.zero_ext(&Obj::zero(), &p2)).unwrap().ok());
    }

    #[test]
    fn realize_direct_sums() {
        let e = f1();
        let cat = e.cat();
        let (s3, s1) = (cat.obj(&["S3"]).unwrap(), cat.obj(&["S1"]).unwrap());
        let d = e.extension(&s1, &s3, vec![1]).unwrap();
        let dd = e.direct_sum_ext(&d, &d);
        let x = e.realize(&dd).unwrap();
        assert!(e.is_n_exangle(&x, &dd).unwrap().ok());
        // a non-monomial element: every block equal to the generator
        let full = e.extension(&s1.sum(&s1), &s3.sum(&s3), vec![1, 1, 1, 0]).unwrap();
        let y = e.realize(&full).unwrap();
        assert!(e.is_n_exangle(&y, &full).unwrap().ok());
        let p2 = cat.obj(&["P2"]).unwrap();
        let mixed = e.extension(&s1.sum(&p2), &p2.sum(&s3), vec![1]).unwrap();
        let z = e.realize(&mixed).unwrap();
        assert!(e.is_n_exangle(&z, &mixed).unwrap().ok());
    }
}
