//! Randomized invariants over the fixtures, on objects larger than the
//! exhaustive suites reach.

use std::sync::OnceLock;

use exang::complexes::{mapping_cone, mapping_cocone, ChainMapSpace};
use exang::exstruct::objects_up_to;
use exang::format::{self, Fixture};
use exang::proper::{restrict_structure, theorem45_decide, DistClass};
use exang::{Bounds, ExtStructure, Extension, Morphism, Obj, Subspace};
use proptest::prelude::*;
use proptest::sample::Index;

const NAMES: [&str; 4] = ["F1", "F2", "F3", "A2"];
const MULT: usize = 3;

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        NAMES
            .iter()
            .map(|n| format::load(format!("{}/../../fixtures/{n}.json", env!("CARGO_MANIFEST_DIR"))).unwrap())
            .collect()
    })
}

fn objects(e: &ExtStructure) -> Vec<Obj> {
    objects_up_to(e.cat().num_ind(), MULT, false)
}

fn coords(e: &ExtStructure, len: usize, seed: &[u32]) -> Vec<u32> {
    let p = e.cat().fp().p();
    (0..len).map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 7) % p).collect()
}

fn random_ext(e: &ExtStructure, c: &Obj, a: &Obj, seed: &[u32]) -> Extension {
    e.extension(c, a, coords(e, e.ext_dim(c, a), seed)).unwrap()
}

fn random_mor(e: &ExtStructure, x: &Obj, y: &Obj, seed: &[u32]) -> Morphism {
    e.cat().morphism(x, y, coords(e, e.cat().hom_dim(x, y), seed)).unwrap()
}

/// A pair `(C, A)` with `E(C, A) ≠ 0` when one exists among the candidates.
fn nonzero_pair(e: &ExtStructure, i: &Index, j: &Index) -> (Obj, Obj) {
    let objs = objects(e);
    let pairs: Vec<_> = objs
        .iter()
        .flat_map(|c| objs.iter().map(move |a| (c.clone(), a.clone())))
        .filter(|(c, a)| e.ext_dim(c, a) > 0)
        .collect();
    if pairs.is_empty() {
        (objs[i.index(objs.len())].clone(), objs[j.index(objs.len())].clone())
    } else {
        pairs[i.index(pairs.len())].clone()
    }
}

fn diagonal(e: &ExtStructure, x: &Obj, codiagonal: bool) -> Morphism {
    let cat = e.cat();
    let m = x.len();
    let block = |i: usize, j: usize| {
        if i % m == j % m {
            cat.identity_coords(x.0[j % m]).to_vec()
        } else {
            let (s, t) = (x.0[j % m], x.0[i % m]);
            vec![0; cat.hom_dim_ind(s, t)]
        }
    };
    if codiagonal {
        cat.from_blocks(&x.sum(x), x, block)
    } else {
        cat.from_blocks(x, &x.sum(x), block)
    }
}

fn seed() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1000, 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_is_diagonal_of_direct_sum(f in 0..NAMES.len(), i in any::<Index>(), j in any::<Index>(), s in seed(), t in seed()) {
        let e = &fixtures()[f].structure;
        let (c, a) = nonzero_pair(e, &i, &j);
        let (d, r) = (random_ext(e, &c, &a, &s), random_ext(e, &c, &a, &t));
        let via = e.push(&diagonal(e, &a, true), &e.pull(&diagonal(e, &c, false), &e.direct_sum_ext(&d, &r)).unwrap()).unwrap();
        prop_assert_eq!(via, e.add_ext(&d, &r));
    }

    #[test]
    fn actions_are_functorial(f in 0..NAMES.len(), i in any::<Index>(), j in any::<Index>(), k in any::<Index>(), s in seed(), t in seed(), u in seed()) {
        let e = &fixtures()[f].structure;
        let cat = e.cat();
        let (c, a) = nonzero_pair(e, &i, &j);
        let objs = objects(e);
        let b = &objs[k.index(objs.len())];
        let d = random_ext(e, &c, &a, &s);
        let (g, h) = (random_mor(e, &a, b, &t), random_mor(e, &a, b, &u));
        prop_assert_eq!(e.push(&cat.add(&g, &h), &d).unwrap(), e.add_ext(&e.push(&g, &d).unwrap(), &e.push(&h, &d).unwrap()));
        let (p, q) = (random_mor(e, b, &c, &t), random_mor(e, b, &c, &u));
        prop_assert_eq!(e.pull(&cat.add(&p, &q), &d).unwrap(), e.add_ext(&e.pull(&p, &d).unwrap(), &e.pull(&q, &d).unwrap()));
        // (g_*)(p^*) = (p^*)(g_*)
        let both = e.pull(&p, &e.push(&g, &d).unwrap()).unwrap();
        prop_assert_eq!(both, e.push(&g, &e.pull(&p, &d).unwrap()).unwrap());
    }

    #[test]
    fn realizations_are_exangles(f in 0..NAMES.len(), i in any::<Index>(), j in any::<Index>(), s in seed()) {
        let e = &fixtures()[f].structure;
        let (c, a) = nonzero_pair(e, &i, &j);
        let d = random_ext(e, &c, &a, &s);
        let x = e.realize(&d).unwrap();
        let rep = e.is_n_exangle(&x, &d).unwrap();
        prop_assert!(rep.ok(), "{:?}", rep.failures().next());
    }

    #[test]
    fn cones_and_cocones_square_to_zero(f in 0..NAMES.len(), i in any::<Index>(), j in any::<Index>(), k in any::<Index>(), l in any::<Index>(), s in seed(), t in seed()) {
        let e = &fixtures()[f].structure;
        let cat = e.cat();
        let n = e.n();
        let objs = objects_up_to(cat.num_ind(), 2, false);
        let (dd, a) = nonzero_pair(e, &i, &j);
        let rho = random_ext(e, &dd, &a, &s);
        let c_obj = &objs[k.index(objs.len())];
        let c = random_mor(e, c_obj, &dd, &t);
        let y = e.realize(&rho).unwrap();
        let x = e.realize(&e.pull(&c, &rho).unwrap()).unwrap();
        let mut pins = vec![None; n + 2];
        pins[0] = Some(cat.identity(&a));
        pins[n + 1] = Some(c.clone());
        let lifts = ChainMapSpace::new(cat, &x, &y, pins).enumerate(cat, 1 << 12).unwrap();
        prop_assert!(!lifts.is_empty());
        let lift = &lifts[l.index(lifts.len())];
        prop_assert!(mapping_cone(cat, &x, &y, lift).unwrap().validate(cat).ok());

        let b = random_mor(e, &a, c_obj, &t);
        let y2 = e.realize(&e.push(&b, &rho).unwrap()).unwrap();
        let mut pins = vec![None; n + 2];
        pins[0] = Some(b);
        pins[n + 1] = Some(cat.identity(&dd));
        let lifts = ChainMapSpace::new(cat, &y, &y2, pins).enumerate(cat, 1 << 12).unwrap();
        prop_assert!(!lifts.is_empty());
        let lift = &lifts[l.index(lifts.len())];
        prop_assert!(mapping_cocone(cat, &y, &y2, lift).unwrap().validate(cat).ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Random subspace families: the proper-class side and the restricted
    /// structure side agree, and saturation forms agree whenever compared.
    #[test]
    fn proper_iff_restriction_is_exangulated(f in 0..NAMES.len(), mask in any::<u64>()) {
        let e = &fixtures()[f].structure;
        let k = e.cat().num_ind();
        let xi = DistClass::new(e, |c, a| {
            let dim = e.ext_dim_ind(c, a);
            if mask >> ((c * k + a) % 64) & 1 == 1 {
                Subspace::full(dim)
            } else {
                Subspace::zero(dim)
            }
        })
        .unwrap();
        let th = theorem45_decide(e, &xi, Bounds::default()).unwrap();
        prop_assert!(th.agree(), "{}: proper={} exangulated={}", xi.describe(e.cat()), th.proper, th.exangulated);
        prop_assert!(!th.report.failed("class/saturation/agreement"));
    }

    #[test]
    fn split_restriction_has_no_extensions(f in 0..NAMES.len()) {
        let e = &fixtures()[f].structure;
        let r = restrict_structure(e, &DistClass::split(e)).unwrap();
        let k = e.cat().num_ind();
        prop_assert!((0..k).all(|c| (0..k).all(|a| r.ext_dim_ind(c, a) == 0)));
    }
}
