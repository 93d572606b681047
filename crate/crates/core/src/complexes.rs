//! Complexes `X⁰ → X¹ → … → X^{n+1}`, chain maps, homotopies and mapping
//! (co)cones.

use crate::error::{Error, Result};
use crate::fincat::{Category, Morphism, Obj};
use crate::linalg::{Affine, BlockSystem, Mat, Vector};
use crate::report::Report;

/// A complex concentrated in degrees `0..=n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    pub terms: Vec<Obj>,
    pub diffs: Vec<Morphism>,
}

/// Components `f⁰..f^{n+1}` of a morphism of complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap(pub Vec<Morphism>);

/// `maps[i]` is `h^{i+1}: X^{i+1} → Y^i`, for `i` in `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy(pub Vec<Morphism>);

/// Witness of a homotopy equivalence: `g∘f ≃ 1` via `gf`, `f∘g ≃ 1` via `fg`.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub f: ChainMap,
    pub g: ChainMap,
    pub gf: Homotopy,
    pub fg: Homotopy,
}

impl Complex {
    /// Build from terms and differentials, checking that endpoints line up.
    pub fn new(terms: Vec<Obj>, diffs: Vec<Morphism>) -> Result<Self> {
        if terms.len() < 3 || diffs.len() + 1 != terms.len() {
            return Err(Error::Shape(format!(
                "complex with {} terms and {} differentials",
                terms.len(),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.src != terms[i] || d.tgt != terms[i + 1] {
                return Err(Error::Shape(format!("differential d^{i} has wrong endpoints")));
            }
        }
        Ok(Complex { terms, diffs })
    }

    pub fn n(&self) -> usize {
        self.terms.len() - 2
    }

    pub fn first(&self) -> &Obj {
        &self.terms[0]
    }

    pub fn last(&self) -> &Obj {
        &self.terms[self.terms.len() - 1]
    }

    pub fn d(&self, i: usize) -> &Morphism {
        &self.diffs[i]
    }

    pub fn display(&self, cat: &Category) -> String {
        self.terms.iter().map(|t| cat.display_obj(t)).collect::<Vec<_>>().join(" -> ")
    }

    /// The zero complex on the given terms.
    pub fn zero_on(cat: &Category, terms: Vec<Obj>) -> Self {
        let diffs = terms.windows(2).map(|w| cat.zero(&w[0], &w[1])).collect();
        Complex { terms, diffs }
    }

    /// The split complex realizing `0 ∈ E(C, A)`: `A =→ A → 0 → … → 0 → C =→ C`
    /// for `n ≥ 2`, and `A → A⊕C → C` for `n = 1`.
    pub fn split(cat: &Category, a: &Obj, c: &Obj, n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            let mid = a.sum(c);
            let i = cat.from_blocks(a, &mid, |r, s| {
                if r == s {
                    cat.identity_coords(a.0[s]).to_vec()
                } else {
                    vec![0; cat.hom_dim_ind(a.0[s], mid.0[r])]
                }
            });
            let p = cat.from_blocks(&mid, c, |r, s| {
                if s == a.len() + r {
                    cat.identity_coords(c.0[r]).to_vec()
                } else {
                    vec![0; cat.hom_dim_ind(mid.0[s], c.0[r])]
                }
            });
            return Complex {
                terms: vec![a.clone(), mid, c.clone()],
                diffs: vec![i, p],
            };
        }
        let mut terms = vec![a.clone(), a.clone()];
        terms.extend(std::iter::repeat_n(Obj::zero(), n - 2));
        terms.push(c.clone());
        terms.push(c.clone());
        let mut x = Complex::zero_on(cat, terms);
        x.diffs[0] = cat.identity(a);
        x.diffs[n] = cat.identity(c);
        x
    }

    /// Check `d^{i+1} ∘ d^i = 0` everywhere.
    pub fn validate(&self, cat: &Category) -> Report {
        let mut rep = Report::new();
        for i in 0..self.diffs.len() {
            let d = &self.diffs[i];
            let ok = d.src == self.terms[i] && d.tgt == self.terms[i + 1];
            rep.check("complex/endpoints", ok, format!("d^{i}"), "differential endpoints do not match terms");
        }
        if !rep.ok() {
            return rep;
        }
        for i in 0..self.diffs.len() - 1 {
            let dd = cat.compose(&self.diffs[i + 1], &self.diffs[i]).expect("endpoints checked");
            rep.check(
                "complex/d-squared",
                dd.is_zero(),
                format!("{} position {i}", self.display(cat)),
                format!("d^{}∘d^{i} = {:?}", i + 1, dd.coords),
            );
        }
        rep
    }

    /// Termwise direct sum with block-diagonal differentials.
    pub fn direct_sum(&self, cat: &Category, other: &Complex) -> Complex {
        assert_eq!(self.n(), other.n());
        let terms: Vec<Obj> = self.terms.iter().zip(&other.terms).map(|(a, b)| a.sum(b)).collect();
        let diffs = (0..self.diffs.len())
            .map(|i| {
                let (x, y) = (&self.diffs[i], &other.diffs[i]);
                cat.from_grid(
                    &[x.src.clone(), y.src.clone()],
                    &[x.tgt.clone(), y.tgt.clone()],
                    &[
                        vec![x.clone(), cat.zero(&y.src, &x.tgt)],
                        vec![cat.zero(&x.src, &y.tgt), y.clone()],
                    ],
                )
            })
            .collect();
        Complex { terms, diffs }
    }

    /// Replace the ends along isomorphisms: `d⁰ ↦ d⁰ ∘ pre` for `pre: A′ → A`
    /// and `dⁿ ↦ post ∘ dⁿ` for `post: C → C′`.
    pub fn reattach_ends(&self, cat: &Category, pre: &Morphism, post: &Morphism) -> Result<Complex> {
        let n = self.n();
        let mut x = self.clone();
        x.diffs[0] = cat.compose(&self.diffs[0], pre)?;
        x.diffs[n] = cat.compose(post, &self.diffs[n])?;
        x.terms[0] = pre.src.clone();
        x.terms[n + 1] = post.tgt.clone();
        Ok(x)
    }

    /// Replace the term in degree `k` along an isomorphism `iso: X^k → T`
    /// with inverse `inv`.
    pub fn conjugate_term(&self, cat: &Category, k: usize, iso: &Morphism, inv: &Morphism) -> Result<Complex> {
        let mut x = self.clone();
        if k >= 1 {
            x.diffs[k - 1] = cat.compose(iso, &self.diffs[k - 1])?;
        }
        if k < self.diffs.len() {
            x.diffs[k] = cat.compose(&self.diffs[k], inv)?;
        }
        x.terms[k] = iso.tgt.clone();
        Ok(x)
    }

    /// Add the contractible summand `Z =→ Z` in degrees `k, k+1`.
    pub fn pad(&self, cat: &Category, k: usize, z: &Obj) -> Complex {
        assert!(k + 1 < self.terms.len());
        let mut terms = self.terms.clone();
        terms[k] = terms[k].sum(z);
        terms[k + 1] = terms[k + 1].sum(z);
        let diffs = (0..self.diffs.len())
            .map(|i| {
                let d = &self.diffs[i];
                let src_parts = if i == k || i == k + 1 { vec![d.src.clone(), z.clone()] } else { vec![d.src.clone()] };
                let tgt_parts = if i + 1 == k || i == k { vec![d.tgt.clone(), z.clone()] } else { vec![d.tgt.clone()] };
                let grid: Vec<Vec<Morphism>> = tgt_parts
                    .iter()
                    .enumerate()
                    .map(|(r, t)| {
                        src_parts
                            .iter()
                            .enumerate()
                            .map(|(c, s)| match (r, c) {
                                (0, 0) => d.clone(),
                                (1, 1) => cat.identity(z),
                                _ => cat.zero(s, t),
                            })
                            .collect()
                    })
                    .collect();
                cat.from_grid(&src_parts, &tgt_parts, &grid)
            })
            .collect();
        Complex { terms, diffs }
    }
}

impl ChainMap {
    pub fn identity(cat: &Category, x: &Complex) -> Self {
        ChainMap(x.terms.iter().map(|t| cat.identity(t)).collect())
    }

    pub fn zero(cat: &Category, x: &Complex, y: &Complex) -> Self {
        ChainMap(x.terms.iter().zip(&y.terms).map(|(a, b)| cat.zero(a, b)).collect())
    }

    pub fn compose(&self, cat: &Category, before: &ChainMap) -> Result<ChainMap> {
        self.0
            .iter()
            .zip(&before.0)
            .map(|(g, f)| cat.compose(g, f))
            .collect::<Result<_>>()
            .map(ChainMap)
    }
}

/// All squares `f^{i+1} ∘ d_X^i = d_Y^i ∘ f^i` commute.
pub fn is_chain_map(cat: &Category, x: &Complex, y: &Complex, f: &ChainMap) -> Result<bool> {
    if f.0.len() != x.terms.len() || x.terms.len() != y.terms.len() {
        return Err(Error::Shape("chain map length".into()));
    }
    for (i, fi) in f.0.iter().enumerate() {
        if fi.src != x.terms[i] || fi.tgt != y.terms[i] {
            return Err(Error::Shape(format!("chain map component f^{i} has wrong endpoints")));
        }
    }
    for i in 0..x.diffs.len() {
        let l = cat.compose(&f.0[i + 1], &x.diffs[i])?;
        let r = cat.compose(&y.diffs[i], &f.0[i])?;
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Append the chain-map equations for unknowns `vars[i] = f^i: X^i → Y^i`
/// to `sys`; `fixed[i] = Some(m)` pins a component to a constant.
fn chain_map_equations(
    cat: &Category,
    sys: &mut BlockSystem,
    x: &Complex,
    y: &Complex,
    vars: &[usize],
    fixed: &[Option<&Morphism>],
) {
    let fp = cat.fp();
    for i in 0..x.diffs.len() {
        let (dx, dy) = (&x.diffs[i], &y.diffs[i]);
        let rows = cat.hom_dim(&x.terms[i], &y.terms[i + 1]);
        let mut terms = Vec::new();
        let mut rhs = vec![0; rows];
        // f^{i+1} ∘ d_X^i − d_Y^i ∘ f^i = 0
        match fixed[i + 1] {
            Some(m) => rhs = fp.sub_vec(&rhs, &cat.compose(m, dx).expect("endpoints").coords),
            None => terms.push((vars[i + 1], cat.precompose_matrix(dx, &y.terms[i + 1]))),
        }
        match fixed[i] {
            Some(m) => rhs = fp.add_vec(&rhs, &cat.compose(dy, m).expect("endpoints").coords),
            None => terms.push((vars[i], cat.postcompose_matrix(dy, &x.terms[i]).scale(fp, fp.neg(1)))),
        }
        sys.equation(terms, rhs);
    }
}

/// The affine space of chain maps `x → y` whose components at the given
/// degrees are pinned; unknown components are laid out in degree order.
pub struct ChainMapSpace {
    sys: BlockSystem,
    fixed: Vec<Option<Morphism>>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    pub solutions: Option<Affine>,
}

impl ChainMapSpace {
    pub fn new(cat: &Category, x: &Complex, y: &Complex, fixed: Vec<Option<Morphism>>) -> Self {
        let m = x.terms.len();
        assert_eq!(fixed.len(), m);
        let dims: Vec<usize> = (0..m)
            .map(|i| if fixed[i].is_some() { 0 } else { cat.hom_dim(&x.terms[i], &y.terms[i]) })
            .collect();
        let mut sys = BlockSystem::new(dims);
        let vars: Vec<usize> = (0..m).collect();
        let pins: Vec<Option<&Morphism>> = fixed.iter().map(Option::as_ref).collect();
        chain_map_equations(cat, &mut sys, x, y, &vars, &pins);
        let solutions = sys.solve(cat.fp());
        ChainMapSpace {
            sys,
            fixed,
            src: x.terms.clone(),
            tgt: y.terms.clone(),
            solutions,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_none()
    }

    /// Number of chain maps in the space.
    pub fn count(&self, cat: &Category) -> u64 {
        self.solutions.as_ref().map_or(0, |a| a.count(cat.fp()))
    }

    fn unpack(&self, v: &[u32]) -> ChainMap {
        let blocks = self.sys.split(v);
        ChainMap(
            blocks
                .into_iter()
                .enumerate()
                .map(|(i, b)| match &self.fixed[i] {
                    Some(m) => m.clone(),
                    None => Morphism {
                        src: self.src[i].clone(),
                        tgt: self.tgt[i].clone(),
                        coords: b,
                    },
                })
                .collect(),
        )
    }

    pub fn any(&self) -> Option<ChainMap> {
        self.solutions.as_ref().map(|a| self.unpack(&a.particular))
    }

    /// Every chain map in the space, refusing more than `cap`.
    pub fn enumerate(&self, cat: &Category, cap: u64) -> Result<Vec<ChainMap>> {
        let Some(a) = &self.solutions else {
            return Ok(Vec::new());
        };
        let c = a.count(cat.fp());
        if c > cap {
            return Err(Error::TooLarge(c, cap));
        }
        Ok(a.elements(cat.fp()).map(|v| self.unpack(&v)).collect())
    }
}

/// Append `target = d_Y^{i−1} h^i + h^{i+1} d_X^i` for all `i`, with
/// `vars[i-1] = h^i` for `i = 1..=n+1`. A missing target means zero;
/// `minus[i]` subtracts a linear expression in other unknowns.
fn homotopy_equations(
    cat: &Category,
    sys: &mut BlockSystem,
    x: &Complex,
    y: &Complex,
    vars: &[usize],
    lhs: impl Fn(usize) -> (Vec<(usize, Mat)>, Vector),
) {
    let fp = cat.fp();
    let m = x.terms.len();
    for i in 0..m {
        let (mut terms, rhs) = lhs(i);
        // − d_Y^{i−1} ∘ h^i
        if i >= 1 {
            terms.push((vars[i - 1], cat.postcompose_matrix(&y.diffs[i - 1], &x.terms[i]).scale(fp, fp.neg(1))));
        }
        // − h^{i+1} ∘ d_X^i
        if i + 1 < m {
            terms.push((vars[i], cat.precompose_matrix(&x.diffs[i], &y.terms[i]).scale(fp, fp.neg(1))));
        }
        sys.equation(terms, rhs);
    }
}

fn homotopy_dims(cat: &Category, x: &Complex, y: &Complex) -> Vec<usize> {
    (1..x.terms.len()).map(|i| cat.hom_dim(&x.terms[i], &y.terms[i - 1])).collect()
}

fn unpack_homotopy(x: &Complex, y: &Complex, blocks: Vec<Vector>) -> Homotopy {
    Homotopy(
        blocks
            .into_iter()
            .enumerate()
            .map(|(k, coords)| Morphism {
                src: x.terms[k + 1].clone(),
                tgt: y.terms[k].clone(),
                coords,
            })
            .collect(),
    )
}

/// A homotopy `f ≃ 0`, if one exists.
pub fn null_homotopy(cat: &Category, x: &Complex, y: &Complex, f: &ChainMap) -> Result<Option<Homotopy>> {
    if !is_chain_map(cat, x, y, f)? {
        return Err(Error::Precondition("null_homotopy needs a chain map".into()));
    }
    let dims = homotopy_dims(cat, x, y);
    let mut sys = BlockSystem::new(dims);
    let vars: Vec<usize> = (0..x.terms.len() - 1).collect();
    let fp = cat.fp();
    homotopy_equations(cat, &mut sys, x, y, &vars, |i| (Vec::new(), fp.neg_vec(&f.0[i].coords)));
    Ok(sys.solve(fp).map(|a| unpack_homotopy(x, y, sys.split(&a.particular))))
}

/// `d_Y h + h d_X` in degree `i`.
pub fn homotopy_component(cat: &Category, x: &Complex, y: &Complex, h: &Homotopy, i: usize) -> Morphism {
    let m = x.terms.len();
    let mut acc = cat.zero(&x.terms[i], &y.terms[i]);
    if i >= 1 {
        acc = cat.add(&acc, &cat.compose(&y.diffs[i - 1], &h.0[i - 1]).expect("endpoints"));
    }
    if i + 1 < m {
        acc = cat.add(&acc, &cat.compose(&h.0[i], &x.diffs[i]).expect("endpoints"));
    }
    acc
}

/// Search for a homotopy equivalence `x ≃ y`. With `fix_ends`, both chain
/// maps must be identities in degrees `0` and `n+1`. The forward map is
/// enumerated; the inverse and both homotopies are then solved for jointly.
pub fn homotopy_equivalent(
    cat: &Category,
    x: &Complex,
    y: &Complex,
    fix_ends: bool,
    cap: u64,
) -> Result<Option<HomotopyEquivalence>> {
    let m = x.terms.len();
    if y.terms.len() != m {
        return Ok(None);
    }
    if fix_ends && (x.first() != y.first() || x.last() != y.last()) {
        return Err(Error::Precondition("fixed-end homotopy equivalence needs equal end terms".into()));
    }
    let pins = |a: &Complex| -> Vec<Option<Morphism>> {
        let mut v = vec![None; m];
        if fix_ends {
            v[0] = Some(cat.identity(a.first()));
            v[m - 1] = Some(cat.identity(a.last()));
        }
        v
    };
    let forward = ChainMapSpace::new(cat, x, y, pins(x));
    for f in forward.enumerate(cat, cap)? {
        if let Some(eq) = complete_equivalence(cat, x, y, f, &pins(y)) {
            return Ok(Some(eq));
        }
    }
    Ok(None)
}

/// A homotopy inverse of the chain map `f: x → y` with both homotopies,
/// if `f` is a homotopy equivalence.
pub fn homotopy_inverse(cat: &Category, x: &Complex, y: &Complex, f: &ChainMap) -> Result<Option<HomotopyEquivalence>> {
    if !is_chain_map(cat, x, y, f)? {
        return Err(Error::Precondition("not a chain map".into()));
    }
    Ok(complete_equivalence(cat, x, y, f.clone(), &vec![None; x.terms.len()]))
}

fn complete_equivalence(
    cat: &Category,
    x: &Complex,
    y: &Complex,
    f: ChainMap,
    gpins: &[Option<Morphism>],
) -> Option<HomotopyEquivalence> {
    let m = x.terms.len();
    let fp = cat.fp();
    // unknowns: g^0..g^{m-1}, then h (for gf), then h′ (for fg)
    let mut dims: Vec<usize> = (0..m)
        .map(|i| if gpins[i].is_some() { 0 } else { cat.hom_dim(&y.terms[i], &x.terms[i]) })
        .collect();
    let hd = homotopy_dims(cat, x, x);
    let hd2 = homotopy_dims(cat, y, y);
    dims.extend(&hd);
    dims.extend(&hd2);
    let mut sys = BlockSystem::new(dims);
    let gvars: Vec<usize> = (0..m).collect();
    let hvars: Vec<usize> = (m..m + hd.len()).collect();
    let h2vars: Vec<usize> = (m + hd.len()..m + hd.len() + hd2.len()).collect();
    let gpins_ref: Vec<Option<&Morphism>> = gpins.iter().map(Option::as_ref).collect();
    chain_map_equations(cat, &mut sys, y, x, &gvars, &gpins_ref);
    // g^i f^i − 1 = d h + h d
    homotopy_equations(cat, &mut sys, x, x, &hvars, |i| {
        let one = cat.identity(&x.terms[i]).coords;
        match &gpins[i] {
            Some(g) => {
                let gf = cat.compose(g, &f.0[i]).expect("endpoints").coords;
                (Vec::new(), fp.sub_vec(&one, &gf))
            }
            None => (vec![(gvars[i], cat.precompose_matrix(&f.0[i], &x.terms[i]))], one),
        }
    });
    // f^i g^i − 1 = d h′ + h′ d
    homotopy_equations(cat, &mut sys, y, y, &h2vars, |i| {
        let one = cat.identity(&y.terms[i]).coords;
        match &gpins[i] {
            Some(g) => {
                let fg = cat.compose(&f.0[i], g).expect("endpoints").coords;
                (Vec::new(), fp.sub_vec(&one, &fg))
            }
            None => (vec![(gvars[i], cat.postcompose_matrix(&f.0[i], &y.terms[i]))], one),
        }
    });
    let sol = sys.solve(fp)?;
    let blocks = sys.split(&sol.particular);
    let g = ChainMap(
        (0..m)
            .map(|i| match &gpins[i] {
                Some(p) => p.clone(),
                None => Morphism {
                    src: y.terms[i].clone(),
                    tgt: x.terms[i].clone(),
                    coords: blocks[i].clone(),
                },
            })
            .collect(),
    );
    let gf = unpack_homotopy(x, x, blocks[m..m + hd.len()].to_vec());
    let fg = unpack_homotopy(y, y, blocks[m + hd.len()..].to_vec());
    Some(HomotopyEquivalence { f, g, gf, fg })
}

/// Mapping cone of `f: X → Y` with `f⁰ = 1`:
/// `X¹ → X²⊕Y¹ → … → X^{n+1}⊕Yⁿ → Y^{n+1}`.
pub fn mapping_cone(cat: &Category, x: &Complex, y: &Complex, f: &ChainMap) -> Result<Complex> {
    let n = x.n();
    if x.first() != y.first() || f.0[0] != cat.identity(x.first()) {
        return Err(Error::Precondition("mapping cone needs f⁰ = 1".into()));
    }
    let fp = cat.fp();
    let neg = |m: &Morphism| cat.scale(fp.neg(1), m);
    // M^0 = X^1, M^i = X^{i+1} ⊕ Y^i, M^{n+1} = Y^{n+1}
    let parts = |i: usize| -> Vec<Obj> {
        if i == 0 {
            vec![x.terms[1].clone()]
        } else if i <= n {
            vec![x.terms[i + 1].clone(), y.terms[i].clone()]
        } else {
            vec![y.terms[n + 1].clone()]
        }
    };
    let mut terms = Vec::with_capacity(n + 2);
    let mut diffs = Vec::with_capacity(n + 1);
    for i in 0..=n + 1 {
        terms.push(parts(i).iter().fold(Obj::zero(), |a, b| a.sum(b)));
    }
    for i in 0..=n {
        let (s, t) = (parts(i), parts(i + 1));
        let grid: Vec<Vec<Morphism>> = if n == 1 {
            // X¹ → X²⊕Y¹ → Y²
            if i == 0 {
                vec![vec![neg(&x.diffs[1])], vec![f.0[1].clone()]]
            } else {
                vec![vec![f.0[2].clone(), y.diffs[1].clone()]]
            }
        } else if i == 0 {
            vec![vec![neg(&x.diffs[1])], vec![f.0[1].clone()]]
        } else if i < n {
            vec![
                vec![neg(&x.diffs[i + 1]), cat.zero(&s[1], &t[0])],
                vec![f.0[i + 1].clone(), y.diffs[i].clone()],
            ]
        } else {
            vec![vec![f.0[n + 1].clone(), y.diffs[n].clone()]]
        };
        diffs.push(cat.from_grid(&s, &t, &grid));
    }
    Complex::new(terms, diffs)
}

/// Mapping cocone of `h: Y → X` with `h^{n+1} = 1`:
/// `Y⁰ → X⁰⊕Y¹ → … → X^{n−1}⊕Yⁿ → Xⁿ`.
pub fn mapping_cocone(cat: &Category, y: &Complex, x: &Complex, h: &ChainMap) -> Result<Complex> {
    let n = x.n();
    if x.last() != y.last() || h.0[n + 1] != cat.identity(x.last()) {
        return Err(Error::Precondition("mapping cocone needs h^{n+1} = 1".into()));
    }
    let fp = cat.fp();
    let neg = |m: &Morphism| cat.scale(fp.neg(1), m);
    // N^0 = Y^0, N^i = X^{i−1} ⊕ Y^i, N^{n+1} = X^n
    let parts = |i: usize| -> Vec<Obj> {
        if i == 0 {
            vec![y.terms[0].clone()]
        } else if i <= n {
            vec![x.terms[i - 1].clone(), y.terms[i].clone()]
        } else {
            vec![x.terms[n].clone()]
        }
    };
    let mut terms = Vec::with_capacity(n + 2);
    let mut diffs = Vec::with_capacity(n + 1);
    for i in 0..=n + 1 {
        terms.push(parts(i).iter().fold(Obj::zero(), |a, b| a.sum(b)));
    }
    for i in 0..=n {
        let (s, t) = (parts(i), parts(i + 1));
        let grid: Vec<Vec<Morphism>> = if i == 0 {
            vec![vec![h.0[0].clone()], vec![y.diffs[0].clone()]]
        } else if i < n {
            vec![
                vec![neg(&x.diffs[i - 1]), h.0[i].clone()],
                vec![cat.zero(&s[0], &t[1]), y.diffs[i].clone()],
            ]
        } else {
            vec![vec![neg(&x.diffs[n - 1]), h.0[n].clone()]]
        };
        diffs.push(cat.from_grid(&s, &t, &grid));
    }
    Complex::new(terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;
    use crate::linalg::Fp;

    fn f1() -> Category {
        CategoryBuilder::new(Fp::new(2).unwrap(), &["S3", "P2", "P1", "S1"])
            .hom("a", "S3", "P2")
            .hom("b", "P2", "P1")
            .hom("c", "P1", "S1")
            .build()
            .unwrap()
    }

    fn conflation(cat: &Category) -> Complex {
        let o = |n: &str| cat.obj(&[n]).unwrap();
        let terms = vec![o("S3"), o("P2"), o("P1"), o("S1")];
        let diffs = terms.windows(2).map(|w| cat.morphism(&w[0], &w[1], vec![1]).unwrap()).collect();
        Complex::new(terms, diffs).unwrap()
    }

    #[test]
    fn validate_examples() {
        let cat = f1();
        let a = cat.obj(&["P2"]).unwrap();
        let split = Complex::split(&cat, &a, &Obj::zero(), 2);
        assert!(split.validate(&cat).ok());
        assert!(Complex::zero_on(&cat, vec![a.clone(), a.clone(), a]).validate(&cat).ok());
        let mut bad = conflation(&cat);
        // a∘c is not composable; plant d¹d⁰ ≠ 0 on S3 → P2 → P2 instead
        let p2 = cat.obj(&["P2"]).unwrap();
        bad.terms[2] = p2.clone();
        bad.diffs[1] = cat.identity(&p2);
        bad.diffs[2] = cat.zero(&p2, &bad.terms[3]);
        let rep = bad.validate(&cat);
        assert!(rep.failed("complex/d-squared"));
        assert!(rep.failures().next().unwrap().instance.ends_with("position 0"));
    }

    #[test]
    fn null_homotopy_examples() {
        let cat = f1();
        let x = conflation(&cat);
        let zero = ChainMap::zero(&cat, &x, &x);
        let h = null_homotopy(&cat, &x, &x, &zero).unwrap().unwrap();
        assert!(h.0.iter().all(Morphism::is_zero));
        assert!(null_homotopy(&cat, &x, &x, &ChainMap::identity(&cat, &x)).unwrap().is_none());
        let a = cat.obj(&["P2"]).unwrap();
        let split = Complex::split(&cat, &a, &Obj::zero(), 2);
        let h = null_homotopy(&cat, &split, &split, &ChainMap::identity(&cat, &split)).unwrap().unwrap();
        assert_eq!(h.0[0], cat.identity(&a));
    }

    #[test]
    fn homotopy_equivalence_examples() {
        let cat = f1();
        let x = conflation(&cat);
        assert!(homotopy_equivalent(&cat, &x, &x, true, 1 << 16).unwrap().is_some());
        let split = Complex::split(&cat, x.first(), x.last(), 2);
        assert!(homotopy_equivalent(&cat, &x, &split, true, 1 << 16).unwrap().is_none());
        assert!(homotopy_equivalent(&cat, &x, &split, false, 1 << 16).unwrap().is_none());
        let b = cat.obj(&["P1"]).unwrap();
        let padded = x.pad(&cat, 1, &b);
        assert!(padded.validate(&cat).ok());
        assert!(homotopy_equivalent(&cat, &x, &padded, true, 1 << 16).unwrap().is_some());
        assert!(homotopy_equivalent(&cat, &padded, &x, true, 1 << 16).unwrap().is_some());
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let cat = f1();
        let x = conflation(&cat);
        let id = ChainMap::identity(&cat, &x);
        let m = mapping_cone(&cat, &x, &x, &id).unwrap();
        assert!(m.validate(&cat).ok());
        assert!(null_homotopy(&cat, &m, &m, &ChainMap::identity(&cat, &m)).unwrap().is_some());
        let w = mapping_cocone(&cat, &x, &x, &id).unwrap();
        assert!(w.validate(&cat).ok());
        assert!(null_homotopy(&cat, &w, &w, &ChainMap::identity(&cat, &w)).unwrap().is_some());
    }

    #[test]
    fn cone_of_degenerate_map_is_shifted_sum() {
        let cat = f1();
        let a = cat.obj(&["S3"]).unwrap();
        let c = cat.obj(&["S1"]).unwrap();
        let x = Complex::split(&cat, &a, &c, 2);
        let mut f = ChainMap::zero(&cat, &x, &x);
        f.0[0] = cat.identity(&a);
        f.0[1] = cat.identity(&a);
        assert!(is_chain_map(&cat, &x, &x, &f).unwrap());
        let m = mapping_cone(&cat, &x, &x, &f).unwrap();
        assert!(m.validate(&cat).ok());
        assert_eq!(m.terms[1], c.sum(&a));
    }

    #[test]
    fn chain_map_space_pins_ends() {
        let cat = f1();
        let x = conflation(&cat);
        let mut pins = vec![None; 4];
        pins[0] = Some(cat.identity(x.first()));
        pins[3] = Some(cat.identity(x.last()));
        let sp = ChainMapSpace::new(&cat, &x, &x, pins);
        let maps = sp.enumerate(&cat, 1 << 10).unwrap();
        assert_eq!(maps, vec![ChainMap::identity(&cat, &x)]);
    }
}
