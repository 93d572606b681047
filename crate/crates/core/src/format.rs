//! JSON presentation files.
//!
//! A file lists indecomposables, Hom bases, composition constants, extension
//! dimensions with their action matrices and the stored realizations.
//! Composites not listed are zero unless one factor is an identity basis
//! vector; action matrices not listed are zero, or the identity for an
//! identity basis vector. See `docs/format.md`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::exstruct::{ExtStructure, Extension, TableKey};
use crate::fincat::{Category, Ind, Obj, Subcategory};
use crate::linalg::{Fp, Mat, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomEntry {
    pub from: String,
    pub to: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeEntry {
    pub g: String,
    pub f: String,
    pub value: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtEntry {
    pub c: String,
    pub a: String,
    pub dim: usize,
}

/// Action of the basis map `map: A → A′` on `E(c, A) → E(c, A′)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovEntry {
    pub map: String,
    pub c: String,
    pub matrix: Vec<Vector>,
}

/// Action of the basis map `map: C′ → C` on `E(C, a) → E(C′, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContraEntry {
    pub map: String,
    pub a: String,
    pub matrix: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub c: String,
    pub a: String,
    pub element: Vector,
    pub terms: Vec<Vec<String>>,
    pub diffs: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub c: String,
    pub a: String,
    pub basis: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub field: u32,
    pub n: usize,
    pub objects: Vec<String>,
    #[serde(default)]
    pub hom: Vec<HomEntry>,
    #[serde(default)]
    pub identities: BTreeMap<String, Vector>,
    #[serde(default)]
    pub compose: Vec<ComposeEntry>,
    #[serde(default)]
    pub ext: Vec<ExtEntry>,
    #[serde(default)]
    pub ext_action_cov: Vec<CovEntry>,
    #[serde(default)]
    pub ext_action_contra: Vec<ContraEntry>,
    #[serde(default)]
    pub realizations: Vec<RealizationEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, Vec<ClassEntry>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subcategories: BTreeMap<String, Vec<String>>,
}

/// Per-pair subspace bases of a named class of extensions.
pub type ClassBases = BTreeMap<(Ind, Ind), Vec<Vector>>;

/// A parsed and validated presentation.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub structure: ExtStructure,
    pub classes: BTreeMap<String, ClassBases>,
    pub subcategories: BTreeMap<String, Subcategory>,
    /// Named stored realizations, with the extension each one realizes.
    pub exangles: BTreeMap<String, Extension>,
}

fn unit(d: usize, k: usize) -> Vector {
    let mut v = vec![0; d];
    v[k] = 1;
    v
}

struct Labels {
    /// label -> (from, to, index in basis)
    map: BTreeMap<String, (Ind, Ind, usize)>,
}

impl Labels {
    fn get(&self, label: &str, path: String) -> Result<(Ind, Ind, usize)> {
        self.map
            .get(label)
            .copied()
            .ok_or_else(|| Error::parse(path, format!("unknown basis label `{label}`")))
    }
}

fn object(names: &BTreeMap<&str, Ind>, name: &str, path: String) -> Result<Ind> {
    names
        .get(name)
        .copied()
        .ok_or_else(|| Error::parse(path, format!("unknown object `{name}`")))
}

fn matrix(rows: &[Vector], r: usize, c: usize, p: u32, path: &str) -> Result<Mat> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::parse(path, format!("expected a {r}x{c} matrix")));
    }
    if rows.iter().flatten().any(|&x| x >= p) {
        return Err(Error::parse(path, format!("entries must lie in 0..{p}")));
    }
    Ok(Mat::from_rows(r, c, rows.concat()))
}

fn check_vec(v: &[u32], len: usize, p: u32, path: &str) -> Result<()> {
    if v.len() != len {
        return Err(Error::parse(path, format!("expected {len} coordinates, got {}", v.len())));
    }
    if v.iter().any(|&x| x >= p) {
        return Err(Error::parse(path, format!("entries must lie in 0..{p}")));
    }
    Ok(())
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Validate and build the structure.
    pub fn build(&self) -> Result<Fixture> {
        let fp = Fp::new(self.field).map_err(|_| Error::parse("/field", format!("{} is not a prime", self.field)))?;
        let p = self.field;
        if self.n == 0 {
            return Err(Error::parse("/n", "n must be positive"));
        }
        let k = self.objects.len();
        let mut names = BTreeMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if names.insert(o.as_str(), i).is_some() {
                return Err(Error::parse(format!("/objects/{i}"), format!("duplicate object `{o}`")));
            }
        }
        let mut hom_labels = vec![Vec::<String>::new(); k * k];
        let mut labels = Labels { map: BTreeMap::new() };
        let mut seen_pairs = BTreeMap::new();
        for (h, e) in self.hom.iter().enumerate() {
            let a = object(&names, &e.from, format!("/hom/{h}/from"))?;
            let b = object(&names, &e.to, format!("/hom/{h}/to"))?;
            if seen_pairs.insert((a, b), h).is_some() {
                return Err(Error::parse(format!("/hom/{h}"), "Hom space listed twice"));
            }
            for (i, l) in e.basis.iter().enumerate() {
                if labels.map.insert(l.clone(), (a, b, i)).is_some() {
                    return Err(Error::parse(format!("/hom/{h}/basis/{i}"), format!("duplicate label `{l}`")));
                }
            }
            hom_labels[a * k + b] = e.basis.clone();
        }
        let dim = |a: Ind, b: Ind| hom_labels[a * k + b].len();
        let mut identities = vec![Vec::new(); k];
        for (i, o) in self.objects.iter().enumerate() {
            let path = format!("/identities/{o}");
            let v = self.identities.get(o).ok_or_else(|| Error::parse(&path, "missing identity"))?;
            check_vec(v, dim(i, i), p, &path)?;
            identities[i] = v.clone();
        }
        for key in self.identities.keys() {
            object(&names, key, format!("/identities/{key}"))?;
        }
        let is_identity_basis = |a: Ind, b: Ind, idx: usize| a == b && identities[a] == unit(dim(a, a), idx);
        // composition table with defaults
        let mut compose = vec![Vec::new(); k * k * k];
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let (dab, dbc, dac) = (dim(a, b), dim(b, c), dim(a, c));
                    let mut t = vec![vec![0; dac]; dab * dbc];
                    for gi in 0..dbc {
                        for fi in 0..dab {
                            if is_identity_basis(b, c, gi) {
                                t[gi * dab + fi] = unit(dac, fi);
                            } else if is_identity_basis(a, b, fi) {
                                t[gi * dab + fi] = unit(dac, gi);
                            }
                        }
                    }
                    compose[(a * k + b) * k + c] = t;
                }
            }
        }
        for (i, e) in self.compose.iter().enumerate() {
            let (b, c, gi) = labels.get(&e.g, format!("/compose/{i}/g"))?;
            let (a, b2, fi) = labels.get(&e.f, format!("/compose/{i}/f"))?;
            if b != b2 {
                return Err(Error::parse(format!("/compose/{i}"), format!("`{}` and `{}` are not composable", e.g, e.f)));
            }
            check_vec(&e.value, dim(a, c), p, &format!("/compose/{i}/value"))?;
            compose[(a * k + b) * k + c][gi * dim(a, b) + fi] = e.value.clone();
        }
        let cat = Category::new(fp, self.objects.clone(), hom_labels.clone(), compose, identities.clone())
            .map_err(|e| Error::parse("/", e.to_string()))?;
        // extension data
        let mut dims = vec![0; k * k];
        for (i, e) in self.ext.iter().enumerate() {
            let c = object(&names, &e.c, format!("/ext/{i}/c"))?;
            let a = object(&names, &e.a, format!("/ext/{i}/a"))?;
            dims[c * k + a] = e.dim;
        }
        let mut cov = Vec::with_capacity(k * k * k);
        let mut contra = Vec::with_capacity(k * k * k);
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    // cov[(c=x, a=y, a2=z)], contra[(c2=x, c=y, a=z)]
                    cov.push(
                        (0..dim(y, z))
                            .map(|idx| {
                                if is_identity_basis(y, z, idx) {
                                    Mat::identity(dims[x * k + y])
                                } else {
                                    Mat::zeros(dims[x * k + z], dims[x * k + y])
                                }
                            })
                            .collect::<Vec<_>>(),
                    );
                    contra.push(
                        (0..dim(x, y))
                            .map(|idx| {
                                if is_identity_basis(x, y, idx) {
                                    Mat::identity(dims[y * k + z])
                                } else {
                                    Mat::zeros(dims[x * k + z], dims[y * k + z])
                                }
                            })
                            .collect::<Vec<_>>(),
                    );
                }
            }
        }
        for (i, e) in self.ext_action_cov.iter().enumerate() {
            let (a, a2, idx) = labels.get(&e.map, format!("/ext_action_cov/{i}/map"))?;
            let c = object(&names, &e.c, format!("/ext_action_cov/{i}/c"))?;
            let m = matrix(&e.matrix, dims[c * k + a2], dims[c * k + a], p, &format!("/ext_action_cov/{i}/matrix"))?;
            cov[(c * k + a) * k + a2][idx] = m;
        }
        for (i, e) in self.ext_action_contra.iter().enumerate() {
            let (c2, c, idx) = labels.get(&e.map, format!("/ext_action_contra/{i}/map"))?;
            let a = object(&names, &e.a, format!("/ext_action_contra/{i}/a"))?;
            let m = matrix(&e.matrix, dims[c2 * k + a], dims[c * k + a], p, &format!("/ext_action_contra/{i}/matrix"))?;
            contra[(c2 * k + c) * k + a][idx] = m;
        }
        let mut table: BTreeMap<TableKey, Complex> = BTreeMap::new();
        let mut exangles = BTreeMap::new();
        for (i, r) in self.realizations.iter().enumerate() {
            let path = format!("/realizations/{i}");
            let c = object(&names, &r.c, format!("{path}/c"))?;
            let a = object(&names, &r.a, format!("{path}/a"))?;
            check_vec(&r.element, dims[c * k + a], p, &format!("{path}/element"))?;
            if r.terms.len() != self.n + 2 || r.diffs.len() != self.n + 1 {
                return Err(Error::parse(&path, format!("a complex needs {} terms and {} differentials", self.n + 2, self.n + 1)));
            }
            let terms = r
                .terms
                .iter()
                .enumerate()
                .map(|(t, objs)| {
                    objs.iter()
                        .enumerate()
                        .map(|(s, o)| object(&names, o, format!("{path}/terms/{t}/{s}")))
                        .collect::<Result<Vec<_>>>()
                        .map(Obj)
                })
                .collect::<Result<Vec<_>>>()?;
            if terms[0] != Obj::ind(a) || terms[self.n + 1] != Obj::ind(c) {
                return Err(Error::parse(&path, "end terms must be the extension's objects"));
            }
            let diffs = r
                .diffs
                .iter()
                .enumerate()
                .map(|(d, v)| {
                    let dp = format!("{path}/diffs/{d}");
                    check_vec(v, cat.hom_dim(&terms[d], &terms[d + 1]), p, &dp)?;
                    cat.morphism(&terms[d], &terms[d + 1], v.clone())
                })
                .collect::<Result<Vec<_>>>()?;
            let key = (c, a, r.element.clone());
            if table.insert(key, Complex::new(terms, diffs)?).is_some() {
                return Err(Error::parse(&path, "element realized twice"));
            }
            let ext = Extension {
                c: Obj::ind(c),
                a: Obj::ind(a),
                coords: r.element.clone(),
            };
            let name = r.name.clone().unwrap_or_else(|| format!("{}:{}:{}", r.c, r.a, join(&r.element)));
            exangles.insert(name, ext);
        }
        let structure = ExtStructure::new(cat, self.n, dims.clone(), cov, contra, table).map_err(|e| match e {
            Error::Realize(m) => Error::parse("/realizations", m),
            other => Error::parse("/", other.to_string()),
        })?;
        let mut classes = BTreeMap::new();
        for (name, entries) in &self.classes {
            let mut bases = ClassBases::new();
            for (i, e) in entries.iter().enumerate() {
                let path = format!("/classes/{name}/{i}");
                let c = object(&names, &e.c, format!("{path}/c"))?;
                let a = object(&names, &e.a, format!("{path}/a"))?;
                for (j, v) in e.basis.iter().enumerate() {
                    check_vec(v, dims[c * k + a], p, &format!("{path}/basis/{j}"))?;
                }
                bases.insert((c, a), e.basis.clone());
            }
            classes.insert(name.clone(), bases);
        }
        let mut subcategories = BTreeMap::new();
        for (name, objs) in &self.subcategories {
            let s = objs
                .iter()
                .enumerate()
                .map(|(i, o)| object(&names, o, format!("/subcategories/{name}/{i}")))
                .collect::<Result<Subcategory>>()?;
            subcategories.insert(name.clone(), s);
        }
        Ok(Fixture {
            structure,
            classes,
            subcategories,
            exangles,
        })
    }

    /// Serialize a structure, listing only entries that differ from the
    /// defaults.
    pub fn from_fixture(fx: &Fixture) -> Self {
        let e = &fx.structure;
        let cat = e.cat();
        let k = cat.num_ind();
        let name = |i: Ind| cat.name(i).to_string();
        let mut hom = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if cat.hom_dim_ind(a, b) > 0 {
                    hom.push(HomEntry {
                        from: name(a),
                        to: name(b),
                        basis: cat.hom_labels(a, b).to_vec(),
                    });
                }
            }
        }
        let identities = (0..k).map(|a| (name(a), cat.identity_coords(a).to_vec())).collect();
        let is_identity_basis =
            |a: Ind, b: Ind, idx: usize| a == b && cat.identity_coords(a) == unit(cat.hom_dim_ind(a, a), idx).as_slice();
        let mut compose = Vec::new();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let (dab, dbc, dac) = (cat.hom_dim_ind(a, b), cat.hom_dim_ind(b, c), cat.hom_dim_ind(a, c));
                    for gi in 0..dbc {
                        for fi in 0..dab {
                            let v = cat.compose_ind(a, b, c, &unit(dbc, gi), &unit(dab, fi));
                            let default = if is_identity_basis(b, c, gi) {
                                unit(dac, fi)
                            } else if is_identity_basis(a, b, fi) {
                                unit(dac, gi)
                            } else {
                                vec![0; dac]
                            };
                            if v != default {
                                compose.push(ComposeEntry {
                                    g: cat.hom_labels(b, c)[gi].clone(),
                                    f: cat.hom_labels(a, b)[fi].clone(),
                                    value: v,
                                });
                            }
                        }
                    }
                }
            }
        }
        let mut ext = Vec::new();
        for c in 0..k {
            for a in 0..k {
                if e.ext_dim_ind(c, a) > 0 {
                    ext.push(ExtEntry {
                        c: name(c),
                        a: name(a),
                        dim: e.ext_dim_ind(c, a),
                    });
                }
            }
        }
        let rows = |m: &Mat| (0..m.rows()).map(|r| m.row(r).to_vec()).collect::<Vec<_>>();
        let mut ext_action_cov = Vec::new();
        let mut ext_action_contra = Vec::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    for (idx, m) in e.cov_basis(x, y, z).iter().enumerate() {
                        let default = if is_identity_basis(y, z, idx) { m.is_identity() } else { m.is_zero() };
                        if !default {
                            ext_action_cov.push(CovEntry {
                                map: cat.hom_labels(y, z)[idx].clone(),
                                c: name(x),
                                matrix: rows(m),
                            });
                        }
                    }
                    for (idx, m) in e.contra_basis(x, y, z).iter().enumerate() {
                        let default = if is_identity_basis(x, y, idx) { m.is_identity() } else { m.is_zero() };
                        if !default {
                            ext_action_contra.push(ContraEntry {
                                map: cat.hom_labels(x, y)[idx].clone(),
                                a: name(z),
                                matrix: rows(m),
                            });
                        }
                    }
                }
            }
        }
        let names_of: BTreeMap<Extension, &String> = fx.exangles.iter().map(|(n, x)| (x.clone(), n)).collect();
        let mut realizations = Vec::new();
        for ((c, a, v), x) in e.table() {
            let split = Complex::split(cat, &Obj::ind(*a), &Obj::ind(*c), e.n());
            let ext = Extension {
                c: Obj::ind(*c),
                a: Obj::ind(*a),
                coords: v.clone(),
            };
            let named = names_of.get(&ext).copied();
            if v.iter().all(|&s| s == 0) && *x == split && named.is_none() {
                continue;
            }
            let default_name = format!("{}:{}:{}", name(*c), name(*a), join(v));
            realizations.push(RealizationEntry {
                name: named.filter(|n| **n != default_name).cloned(),
                c: name(*c),
                a: name(*a),
                element: v.clone(),
                terms: x.terms.iter().map(|t| t.0.iter().map(|&i| name(i)).collect()).collect(),
                diffs: x.diffs.iter().map(|d| d.coords.clone()).collect(),
            });
        }
        let classes = fx
            .classes
            .iter()
            .map(|(n, bases)| {
                let entries = bases
                    .iter()
                    .map(|((c, a), b)| ClassEntry {
                        c: name(*c),
                        a: name(*a),
                        basis: b.clone(),
                    })
                    .collect();
                (n.clone(), entries)
            })
            .collect();
        let subcategories = fx
            .subcategories
            .iter()
            .map(|(n, s)| (n.clone(), s.iter().map(name).collect()))
            .collect();
        PresentationFile {
            field: cat.fp().p(),
            n: e.n(),
            objects: cat.names().to_vec(),
            hom,
            identities,
            compose,
            ext,
            ext_action_cov,
            ext_action_contra,
            realizations,
            classes,
            subcategories,
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Read and build a presentation file.
pub fn load(path: impl AsRef<Path>) -> Result<Fixture> {
    let text = std::fs::read_to_string(path.as_ref())?;
    PresentationFile::from_json(&text)?.build()
}

/// Parse presentation text.
pub fn parse(text: &str) -> Result<Fixture> {
    PresentationFile::from_json(text)?.build()
}

impl Fixture {
    pub fn subcategory(&self, name: &str) -> Result<&Subcategory> {
        self.subcategories
            .get(name)
            .ok_or_else(|| Error::UnknownObject(format!("subcategory {name}")))
    }

    pub fn class(&self, name: &str) -> Result<&ClassBases> {
        self.classes.get(name).ok_or_else(|| Error::UnknownObject(format!("class {name}")))
    }

    /// A stored n-exangle by name, or by `C:A:coords`.
    pub fn exangle(&self, key: &str) -> Result<(Complex, Extension)> {
        let d = self
            .exangles
            .get(key)
            .cloned()
            .ok_or_else(|| Error::UnknownObject(format!("exangle {key}")))?;
        Ok((self.structure.realize(&d)?, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EMPTY: &str = r#"{"field": 2, "n": 2, "objects": []}"#;

    #[test]
    fn empty_file_is_trivial() {
        let fx = parse(EMPTY).unwrap();
        assert_eq!(fx.structure.cat().num_ind(), 0);
    }

    #[test]
    fn unknown_label_reports_path() {
        let text = r#"{"field": 2, "n": 1, "objects": ["X"],
            "hom": [{"from": "X", "to": "X", "basis": ["1X"]}],
            "identities": {"X": [1]},
            "compose": [{"g": "zz", "f": "1X", "value": [1]}]}"#;
        match parse(text) {
            Err(Error::Parse { path, msg }) => {
                assert_eq!(path, "/compose/0/g");
                assert!(msg.contains("zz"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(parse("{\"field\": 2,"), Err(Error::Parse { .. })));
        assert!(matches!(parse(r#"{"field": 4, "n": 1, "objects": []}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn f1_round_trip() {
        let fx = Fixture {
            structure: crate::exstruct::tests::f1(),
            classes: BTreeMap::new(),
            subcategories: [("X".to_string(), [1, 2].into_iter().collect())].into_iter().collect(),
            exangles: BTreeMap::new(),
        };
        let file = PresentationFile::from_fixture(&fx);
        let text = file.to_json();
        let back = parse(&text).unwrap();
        assert_eq!(back.structure, fx.structure);
        assert_eq!(back.subcategories, fx.subcategories);
        assert_eq!(PresentationFile::from_fixture(&back), PresentationFile::from_json(&text).unwrap());
    }
}
