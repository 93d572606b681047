//! The realization conditions (R0)–(R2), the axioms (EA1), (EA2), (EA2ᵒᵖ)
//! and projective/injective detection, all by bounded enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use itertools::Itertools;

use super::{ExtStructure, Extension};
use crate::complexes::{homotopy_equivalent, mapping_cocone, mapping_cone, ChainMapSpace, Complex};
use crate::error::Result;
use crate::fincat::{Category, Morphism, Obj, Subcategory};
use crate::linalg::BlockSystem;
use crate::report::Report;

/// Enumeration bounds shared by all checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest number of indecomposable summands of an enumerated object.
    pub max_mult: usize,
    /// Largest contractible summand added when matching inflations.
    pub padding: usize,
    /// Largest solution set enumerated in one go.
    pub cap: u64,
    /// Multiplicity bound for the objects in (EA2), (EA2ᵒᵖ) and (R0) instances.
    pub ea2_mult: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_mult: 2,
            padding: 2,
            cap: 1 << 16,
            ea2_mult: 1,
        }
    }
}

impl Bounds {
    /// Defaults, with `EXANG_MAX_MULT` overriding the multiplicity bound.
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        if let Some(m) = std::env::var("EXANG_MAX_MULT").ok().and_then(|v| v.parse().ok()) {
            b.max_mult = m;
        }
        b
    }

    pub fn describe(&self) -> String {
        format!(
            "max_mult={} padding={} cap={} ea2_mult={}",
            self.max_mult, self.padding, self.cap, self.ea2_mult
        )
    }
}

/// Canonical objects with between 1 and `m` indecomposable summands
/// (preceded by the zero object when `zero` is set).
pub fn objects_up_to(k: usize, m: usize, zero: bool) -> Vec<Obj> {
    let mut out = Vec::new();
    if zero {
        out.push(Obj::zero());
    }
    for size in 1..=m {
        out.extend((0..k).combinations_with_replacement(size).map(Obj));
    }
    out
}

/// Inflations (or deflations) between bounded objects, each with the
/// extensions whose realizations exhibit it.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<Morphism, BTreeSet<Extension>>,
}

impl Catalog {
    pub fn contains(&self, f: &Morphism) -> bool {
        self.entries.contains_key(f)
    }

    pub fn generators(&self, f: &Morphism) -> Option<&BTreeSet<Extension>> {
        self.entries.get(f)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Morphism, &BTreeSet<Extension>)> {
        self.entries.iter()
    }

    /// The morphisms with at least one generator accepted by `keep`.
    pub fn filtered(&self, keep: &dyn Fn(&Extension) -> bool) -> BTreeSet<Morphism> {
        self.entries
            .iter()
            .filter(|(_, gens)| gens.iter().any(keep))
            .map(|(f, _)| f.clone())
            .collect()
    }
}

/// Projective and injective indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjInj {
    pub projectives: Subcategory,
    pub injectives: Subcategory,
}

/// Axiom checker over one structure; caches the inflation and deflation
/// catalogs.
pub struct Checker<'a> {
    e: &'a ExtStructure,
    bounds: Bounds,
    inflations: OnceLock<Catalog>,
    deflations: OnceLock<Catalog>,
}

/// All isomorphisms `x → y` (as pairs with their inverses).
fn isomorphisms(e: &ExtStructure, x: &Obj, y: &Obj, cap: u64) -> Result<Vec<(Morphism, Morphism)>> {
    let cat = e.cat();
    let Some(p) = cat.permutation(x, y) else {
        return Ok(Vec::new());
    };
    let q = cat.permutation(y, x).expect("same summands");
    let mut out = Vec::new();
    for a in e.automorphisms(x, cap)? {
        let inv = cat.is_isomorphism(&a).expect("automorphism");
        out.push((cat.compose(&p, &a)?, cat.compose(&inv, &q)?));
    }
    Ok(out)
}

impl<'a> Checker<'a> {
    pub fn new(e: &'a ExtStructure, bounds: Bounds) -> Self {
        Checker {
            e,
            bounds,
            inflations: OnceLock::new(),
            deflations: OnceLock::new(),
        }
    }

    pub fn structure(&self) -> &ExtStructure {
        self.e
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn cat(&self) -> &Category {
        self.e.cat()
    }

    fn objects(&self, zero: bool) -> Vec<Obj> {
        objects_up_to(self.cat().num_ind(), self.bounds.max_mult, zero)
    }

    fn small_objects(&self, zero: bool) -> Vec<Obj> {
        objects_up_to(self.cat().num_ind(), self.bounds.ea2_mult, zero)
    }

    fn paddings(&self, room: usize) -> Vec<Obj> {
        if self.e.n() == 1 {
            return vec![Obj::zero()];
        }
        objects_up_to(self.cat().num_ind(), self.bounds.padding.min(room), true)
    }

    // ---- inflations and deflations ---------------------------------------

    /// Search for a conflation starting with `f`, optionally realizing an
    /// extension accepted by `xi`.
    pub fn is_inflation(
        &self,
        f: &Morphism,
        xi: Option<&dyn Fn(&Extension) -> bool>,
    ) -> Result<Option<(Complex, Extension)>> {
        let cat = self.cat();
        let fp = cat.fp();
        let b = &f.tgt;
        for c in self.objects(true) {
            for d in self.e.elements(&c, &f.src) {
                if xi.is_some_and(|keep| !keep(&d)) {
                    continue;
                }
                let y = self.e.realize(&d)?;
                let Some(z) = b.minus(&y.terms[1]) else { continue };
                if z.len() > self.bounds.padding || (self.e.n() == 1 && !z.is_zero()) {
                    continue;
                }
                let yp = if z.is_zero() { y } else { y.pad(cat, 1, &z) };
                // φ ∘ d⁰ = f for φ: Y¹ → B
                let mut sys = BlockSystem::new(vec![cat.hom_dim(&yp.terms[1], b)]);
                sys.equation(vec![(0, cat.precompose_matrix(yp.d(0), b))], f.coords.clone());
                let Some(sol) = sys.solve(fp) else { continue };
                if sol.count(fp) > self.bounds.cap {
                    continue;
                }
                for v in sol.elements(fp) {
                    let phi = cat.morphism(&yp.terms[1], b, v)?;
                    if let Some(inv) = cat.is_isomorphism(&phi) {
                        return Ok(Some((yp.conjugate_term(cat, 1, &phi, &inv)?, d)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Search for a conflation ending with `g`.
    pub fn is_deflation(
        &self,
        g: &Morphism,
        xi: Option<&dyn Fn(&Extension) -> bool>,
    ) -> Result<Option<(Complex, Extension)>> {
        let cat = self.cat();
        let fp = cat.fp();
        let n = self.e.n();
        let b = &g.src;
        for a in self.objects(true) {
            for d in self.e.elements(&g.tgt, &a) {
                if xi.is_some_and(|keep| !keep(&d)) {
                    continue;
                }
                let y = self.e.realize(&d)?;
                let Some(z) = b.minus(&y.terms[n]) else { continue };
                if z.len() > self.bounds.padding || (n == 1 && !z.is_zero()) {
                    continue;
                }
                let yp = if z.is_zero() { y } else { y.pad(cat, n - 1, &z) };
                // dⁿ ∘ ψ = g for ψ: B → Yⁿ
                let mut sys = BlockSystem::new(vec![cat.hom_dim(b, &yp.terms[n])]);
                sys.equation(vec![(0, cat.postcompose_matrix(yp.d(n), b))], g.coords.clone());
                let Some(sol) = sys.solve(fp) else { continue };
                if sol.count(fp) > self.bounds.cap {
                    continue;
                }
                for v in sol.elements(fp) {
                    let psi = cat.morphism(b, &yp.terms[n], v)?;
                    if let Some(inv) = cat.is_isomorphism(&psi) {
                        return Ok(Some((yp.conjugate_term(cat, n, &inv, &psi)?, d)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// All inflations between canonical objects within the bounds.
    pub fn inflations(&self) -> Result<&Catalog> {
        if let Some(c) = self.inflations.get() {
            return Ok(c);
        }
        let cat = self.cat();
        let m = self.bounds.max_mult;
        let mut entries: BTreeMap<Morphism, BTreeSet<Extension>> = BTreeMap::new();
        for a in self.objects(false) {
            for c in self.objects(true) {
                for d in self.e.elements(&c, &a) {
                    let y = self.e.realize(&d)?;
                    let y1 = &y.terms[1];
                    if y1.len() > m {
                        continue;
                    }
                    for z in self.paddings(m - y1.len()) {
                        let yp = if z.is_zero() { y.clone() } else { y.pad(cat, 1, &z) };
                        let b = yp.terms[1].canonical();
                        for (phi, _) in isomorphisms(self.e, &yp.terms[1], &b, self.bounds.cap)? {
                            let f = cat.compose(&phi, yp.d(0))?;
                            entries.entry(f).or_default().insert(d.clone());
                        }
                    }
                }
            }
        }
        Ok(self.inflations.get_or_init(|| Catalog { entries }))
    }

    /// All deflations between canonical objects within the bounds.
    pub fn deflations(&self) -> Result<&Catalog> {
        if let Some(c) = self.deflations.get() {
            return Ok(c);
        }
        let cat = self.cat();
        let n = self.e.n();
        let m = self.bounds.max_mult;
        let mut entries: BTreeMap<Morphism, BTreeSet<Extension>> = BTreeMap::new();
        for c in self.objects(false) {
            for a in self.objects(true) {
                for d in self.e.elements(&c, &a) {
                    let y = self.e.realize(&d)?;
                    let yn = &y.terms[n];
                    if yn.len() > m {
                        continue;
                    }
                    for z in self.paddings(m - yn.len()) {
                        let yp = if z.is_zero() { y.clone() } else { y.pad(cat, n - 1, &z) };
                        let b = yp.terms[n].canonical();
                        for (_, psi) in isomorphisms(self.e, &yp.terms[n], &b, self.bounds.cap)? {
                            let g = cat.compose(yp.d(n), &psi)?;
                            entries.entry(g).or_default().insert(d.clone());
                        }
                    }
                }
            }
        }
        Ok(self.deflations.get_or_init(|| Catalog { entries }))
    }

    // ---- realization ------------------------------------------------------

    /// (R0), (R1) and (R2) for the stored table.
    pub fn check_realization(&self) -> Result<Report> {
        let e = self.e;
        let cat = self.cat();
        let n = e.n();
        let mut rep = Report::new();
        for ((c, a, v), x) in e.table() {
            let inst = format!("E({}, {}) {:?}", cat.name(*c), cat.name(*a), v);
            let valid = x.validate(cat);
            rep.check("R1/complex", valid.ok(), inst.clone(), "d∘d ≠ 0");
            let d = e.extension(&Obj::ind(*c), &Obj::ind(*a), v.clone())?;
            let r = e.is_n_exangle(x, &d)?;
            let first = r.failures().next().map(|f| format!("{} {}", f.instance, f.detail)).unwrap_or_default();
            rep.check("R1", r.ok(), inst, first);
        }
        for c in 0..cat.num_ind() {
            for a in 0..cat.num_ind() {
                let (co, ao) = (Obj::ind(c), Obj::ind(a));
                let x = e.realize(&e.zero_ext(&co, &ao))?;
                let split = Complex::split(cat, &ao, &co, n);
                let ok = homotopy_equivalent(cat, &x, &split, true, self.bounds.cap)?.is_some();
                rep.check(
                    "R2",
                    ok,
                    format!("0 in E({}, {})", cat.name(c), cat.name(a)),
                    "zero element is not realized by the split complex",
                );
            }
            let o = Obj::ind(c);
            for (x, want) in [
                (e.realize(&e.zero_ext(&Obj::zero(), &o))?, Complex::split(cat, &o, &Obj::zero(), n)),
                (e.realize(&e.zero_ext(&o, &Obj::zero()))?, Complex::split(cat, &Obj::zero(), &o, n)),
            ] {
                let ok = homotopy_equivalent(cat, &x, &want, true, self.bounds.cap)?.is_some();
                rep.check("R2", ok, format!("0 with end {}", cat.name(c)), "not the identity complex");
            }
        }
        // (R0) over all morphisms of extensions between bounded ends
        let objs = self.small_objects(false);
        let mut exts = Vec::new();
        for c in &objs {
            for a in &objs {
                exts.extend(e.elements(c, a));
            }
        }
        for d in &exts {
            let x = e.realize(d)?;
            for d2 in &exts {
                let y = e.realize(d2)?;
                for a in cat.hom_elements(&d.a, &d2.a, self.bounds.cap)? {
                    let pushed = e.push(&a, d)?;
                    for c in cat.hom_elements(&d.c, &d2.c, self.bounds.cap)? {
                        if pushed != e.pull(&c, d2)? {
                            continue;
                        }
                        let mut pins = vec![None; n + 2];
                        pins[0] = Some(a.clone());
                        pins[n + 1] = Some(c.clone());
                        let ok = !ChainMapSpace::new(cat, &x, &y, pins).is_empty();
                        rep.check(
                            "R0",
                            ok,
                            format!(
                                "{:?}→{:?} along ({}, {})",
                                d.coords,
                                d2.coords,
                                cat.display_mor(&a),
                                cat.display_mor(&c)
                            ),
                            "no lift",
                        );
                    }
                }
            }
        }
        Ok(rep)
    }

    // ---- axioms -----------------------------------------------------------

    /// (EA1) for inflations and deflations within the bounds.
    pub fn check_ea1(&self) -> Result<Report> {
        let mut rep = Report::new();
        let cat = self.cat();
        for (name, cat_log) in [("EA1/inflation", self.inflations()?), ("EA1/deflation", self.deflations()?)] {
            let mut by_src: BTreeMap<&Obj, Vec<&Morphism>> = BTreeMap::new();
            for (f, _) in cat_log.iter() {
                by_src.entry(&f.src).or_default().push(f);
            }
            for (f, _) in cat_log.iter() {
                for g in by_src.get(&f.tgt).into_iter().flatten() {
                    let gf = cat.compose(g, f)?;
                    rep.check(
                        name,
                        cat_log.contains(&gf),
                        format!("{} after {}", cat.display_mor(g), cat.display_mor(f)),
                        "composite not found",
                    );
                }
            }
        }
        Ok(rep)
    }

    /// (EA2): every `(1_A, c)` between realizations of `c^*ρ` and `ρ` has a
    /// lift whose mapping cone realizes `(d_X⁰)_*ρ`.
    pub fn check_ea2(&self) -> Result<Report> {
        let e = self.e;
        let cat = self.cat();
        let n = e.n();
        let mut rep = Report::new();
        let objs = self.small_objects(false);
        for d_obj in &objs {
            for a in &objs {
                for rho in e.elements(d_obj, a) {
                    let y = e.realize(&rho)?;
                    for c_obj in &objs {
                        for c in cat.hom_elements(c_obj, d_obj, self.bounds.cap)? {
                            let x = e.realize(&e.pull(&c, &rho)?)?;
                            let mut pins = vec![None; n + 2];
                            pins[0] = Some(cat.identity(a));
                            pins[n + 1] = Some(c.clone());
                            let lifts = ChainMapSpace::new(cat, &x, &y, pins).enumerate(cat, self.bounds.cap)?;
                            let target = e.push(x.d(0), &rho)?;
                            let want = e.realize(&target)?;
                            let mut good = false;
                            for f in &lifts {
                                let m = mapping_cone(cat, &x, &y, f)?;
                                let dd = m.validate(cat);
                                rep.check("cone/d-squared", dd.ok(), format!("cone over {}", x.display(cat)), "d∘d ≠ 0");
                                if e.is_n_exangle(&m, &target)?.ok()
                                    && homotopy_equivalent(cat, &m, &want, true, self.bounds.cap)?.is_some()
                                {
                                    good = true;
                                    break;
                                }
                            }
                            rep.check(
                                "EA2",
                                good,
                                format!("rho={:?} in E({}, {}), c={}", rho.coords, cat.display_obj(d_obj), cat.display_obj(a), cat.display_mor(&c)),
                                format!("{} lifts, none good", lifts.len()),
                            );
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    /// (EA2ᵒᵖ): the dual statement through mapping cocones.
    pub fn check_ea2op(&self) -> Result<Report> {
        let e = self.e;
        let cat = self.cat();
        let n = e.n();
        let mut rep = Report::new();
        let objs = self.small_objects(false);
        for c_obj in &objs {
            for a_obj in &objs {
                for delta in e.elements(c_obj, a_obj) {
                    let y = e.realize(&delta)?;
                    for b_obj in &objs {
                        for a in cat.hom_elements(a_obj, b_obj, self.bounds.cap)? {
                            let x = e.realize(&e.push(&a, &delta)?)?;
                            let mut pins = vec![None; n + 2];
                            pins[0] = Some(a.clone());
                            pins[n + 1] = Some(cat.identity(c_obj));
                            let lifts = ChainMapSpace::new(cat, &y, &x, pins).enumerate(cat, self.bounds.cap)?;
                            let target = e.pull(x.d(n), &delta)?;
                            let want = e.realize(&target)?;
                            let mut good = false;
                            for h in &lifts {
                                let w = mapping_cocone(cat, &y, &x, h)?;
                                let dd = w.validate(cat);
                                rep.check("cocone/d-squared", dd.ok(), format!("cocone over {}", x.display(cat)), "d∘d ≠ 0");
                                if e.is_n_exangle(&w, &target)?.ok()
                                    && homotopy_equivalent(cat, &w, &want, true, self.bounds.cap)?.is_some()
                                {
                                    good = true;
                                    break;
                                }
                            }
                            rep.check(
                                "EA2op",
                                good,
                                format!("delta={:?} in E({}, {}), a={}", delta.coords, cat.display_obj(c_obj), cat.display_obj(a_obj), cat.display_mor(&a)),
                                format!("{} lifts, none good", lifts.len()),
                            );
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    pub fn check_axioms(&self) -> Result<Report> {
        let mut rep = self.check_ea1()?;
        rep.merge(self.check_ea2()?);
        rep.merge(self.check_ea2op()?);
        Ok(rep)
    }

    /// Category laws, bifunctor laws, realization and axioms.
    pub fn full_suite(&self) -> Result<Report> {
        let mut rep = self.cat().validate();
        rep.merge(self.e.validate_bifunctor());
        rep.merge(self.check_realization()?);
        rep.merge(self.check_axioms()?);
        Ok(rep.sorted())
    }

    // ---- projectives and injectives ---------------------------------------

    /// `X` is projective when `C(X, dⁿ)` is onto for every stored conflation,
    /// injective when `C(d⁰, X)` is.
    pub fn classify_proj_inj(&self) -> ProjInj {
        let e = self.e;
        let cat = self.cat();
        let fp = cat.fp();
        let n = e.n();
        let mut projectives = Subcategory::empty();
        let mut injectives = Subcategory::empty();
        for xi in 0..cat.num_ind() {
            let x = Obj::ind(xi);
            let proj = e.table().values().all(|y| {
                cat.postcompose_matrix(y.d(n), &x).rank(fp) == cat.hom_dim(&x, y.last())
            });
            let inj = e.table().values().all(|y| {
                cat.precompose_matrix(y.d(0), &x).rank(fp) == cat.hom_dim(y.first(), &x)
            });
            if proj {
                projectives.0.insert(xi);
            }
            if inj {
                injectives.0.insert(xi);
            }
        }
        ProjInj { projectives, injectives }
    }

    /// `E(P, −) = 0` for projective `P` and `E(−, I) = 0` for injective `I`.
    pub fn check_lem1(&self, pi: &ProjInj) -> Report {
        let e = self.e;
        let cat = self.cat();
        let mut rep = Report::new();
        for x in 0..cat.num_ind() {
            for p in pi.projectives.iter() {
                rep.check(
                    "lem1/projective",
                    e.ext_dim_ind(p, x) == 0,
                    format!("E({}, {})", cat.name(p), cat.name(x)),
                    "nonzero extension group with projective last end",
                );
            }
            for i in pi.injectives.iter() {
                rep.check(
                    "lem1/injective",
                    e.ext_dim_ind(x, i) == 0,
                    format!("E({}, {})", cat.name(x), cat.name(i)),
                    "nonzero extension group with injective first end",
                );
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exstruct::tests::f1;

    #[test]
    fn objects_are_canonical_multisets() {
        let objs = objects_up_to(3, 2, true);
        assert_eq!(objs.len(), 1 + 3 + 6);
        assert!(objs.iter().all(|o| *o == o.canonical()));
    }

    #[test]
    fn f1_inflation_examples() {
        let e = f1();
        let ch = Checker::new(&e, Bounds::default());
        let cat = e.cat();
        let o = |n: &str| cat.obj(&[n]).unwrap();
        let a = cat.morphism(&o("S3"), &o("P2"), vec![1]).unwrap();
        let (x, d) = ch.is_inflation(&a, None).unwrap().unwrap();
        assert_eq!(x.d(0), &a);
        assert!(!d.is_zero());
        assert!(ch.is_inflation(&cat.zero(&o("S3"), &o("S1")), None).unwrap().is_none());
        let two = cat.obj(&["S3", "S1"]).unwrap();
        let section = cat.morphism(&o("S3"), &two, vec![1]).unwrap();
        let (_, d) = ch.is_inflation(&section, None).unwrap().unwrap();
        assert!(d.is_zero());
        let c = cat.morphism(&o("P1"), &o("S1"), vec![1]).unwrap();
        assert!(ch.is_deflation(&c, None).unwrap().is_some());
        assert!(ch.inflations().unwrap().contains(&a));
        assert!(ch.deflations().unwrap().contains(&c));
    }

    #[test]
    fn f1_passes_the_suite() {
        let e = f1();
        let ch = Checker::new(&e, Bounds::default());
        let rep = ch.full_suite().unwrap();
        assert!(rep.ok(), "{rep}");
        for check in ["R0", "R1", "R2", "EA1/inflation", "EA1/deflation", "EA2", "EA2op"] {
            assert!(rep.pass_count(check) > 0, "{check} never exercised");
        }
    }

    #[test]
    fn f1_projectives_and_injectives() {
        let e = f1();
        let ch = Checker::new(&e, Bounds::default());
        let pi = ch.classify_proj_inj();
        let cat = e.cat();
        assert_eq!(pi.projectives, cat.subcategory(&["S3", "P2", "P1"]).unwrap());
        assert_eq!(pi.injectives, cat.subcategory(&["P2", "P1", "S1"]).unwrap());
        assert!(ch.check_lem1(&pi).ok());
    }

    #[test]
    fn stored_split_complex_for_generator_fails_r1() {
        let e = f1();
        let cat = e.cat().clone();
        let mut table = e.table().clone();
        let (s3, s1) = (cat.obj(&["S3"]).unwrap(), cat.obj(&["S1"]).unwrap());
        table.insert((3, 0, vec![1]), Complex::split(&cat, &s3, &s1, 2));
        let k = cat.num_ind();
        let dims: Vec<usize> = (0..k * k).map(|i| e.ext_dim_ind(i / k, i % k)).collect();
        let mut cov = Vec::new();
        let mut contra = Vec::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    cov.push(e.cov_basis(x, y, z).to_vec());
                    contra.push(e.contra_basis(x, y, z).to_vec());
                }
            }
        }
        let bad = ExtStructure::new(cat, 2, dims, cov, contra, table).unwrap();
        let rep = Checker::new(&bad, Bounds::default()).check_realization().unwrap();
        assert!(rep.failed("R1"));
    }
}
