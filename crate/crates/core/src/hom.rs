//! The comparison map of tautological rings `R*(M # N, ⋆) → R*(N, ⋆)` on
//! generators, with images in the free tautological algebra of `N`: free on
//! the `κ_c`, tensored with the ring of point classes `H*(BSO(2n); Q)`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{monomial_basis, render_sum, CharClass, ClassMonomial, Notation};
use crate::localization::{kappa_pullback, TorusManifold};
use crate::manifolds::{point_class_transport, validate_maximal_torus};
use crate::poly::{fmt_rational, rat, Rational};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Kappa,
    PointClass,
}

/// `κ_c` or the point class `c`, for a normal-form monomial `c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TautGenerator {
    pub kind: GeneratorKind,
    pub monomial: ClassMonomial,
}

impl TautGenerator {
    pub fn kappa(monomial: ClassMonomial) -> Self {
        TautGenerator {
            kind: GeneratorKind::Kappa,
            monomial,
        }
    }

    pub fn point(monomial: ClassMonomial) -> Self {
        TautGenerator {
            kind: GeneratorKind::PointClass,
            monomial,
        }
    }

    /// `|c| − 2n` for `κ_c`, `|c|` for a point class.
    pub fn degree(&self) -> i64 {
        let d = self.monomial.degree() as i64;
        match self.kind {
            GeneratorKind::Kappa => d - 2 * self.monomial.rank() as i64,
            GeneratorKind::PointClass => d,
        }
    }

    pub fn render(&self, notation: Notation) -> String {
        match self.kind {
            GeneratorKind::Kappa => render_kappa(&self.monomial, notation),
            GeneratorKind::PointClass => self.monomial.render(notation),
        }
    }
}

impl fmt::Display for TautGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Text))
    }
}

fn render_kappa(m: &ClassMonomial, notation: Notation) -> String {
    match notation {
        Notation::Text => format!("kappa[{}]", m.render(notation)),
        Notation::Latex => format!("\\kappa_{{{}}}", m.render(notation)),
    }
}

/// `Π κ_{c_i}^{k_i} · c` with `c` a point-class monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TautMonomial {
    kappas: Vec<(ClassMonomial, u32)>,
    point: ClassMonomial,
}

impl TautMonomial {
    fn degree(&self) -> i64 {
        let n = self.point.rank() as i64;
        let k: i64 = self
            .kappas
            .iter()
            .map(|(m, e)| (m.degree() as i64 - 2 * n) * *e as i64)
            .sum();
        k + self.point.degree() as i64
    }

    fn render(&self, notation: Notation, point_suffix: Option<&str>) -> String {
        let mut parts: Vec<String> = self
            .kappas
            .iter()
            .map(|(m, e)| {
                let base = render_kappa(m, notation);
                match (e, notation) {
                    (1, _) => base,
                    (_, Notation::Text) => format!("{base}^{e}"),
                    (_, Notation::Latex) => format!("{base}^{{{e}}}"),
                }
            })
            .collect();
        if !self.point.is_one() {
            let p = self.point.render(notation);
            parts.push(match point_suffix {
                None => p,
                Some(s) if p.contains('*') => format!("({p}){s}"),
                Some(s) => format!("{p}{s}"),
            });
        }
        if parts.is_empty() {
            return "1".into();
        }
        match notation {
            Notation::Text => parts.join("*"),
            Notation::Latex => parts.join(" "),
        }
    }
}

/// An element of the free tautological algebra of a rank-`n` target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TautPoly {
    n: usize,
    terms: BTreeMap<TautMonomial, Rational>,
}

impl TautPoly {
    pub fn zero(n: usize) -> Self {
        TautPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(g: &TautGenerator) -> Self {
        let n = g.monomial.rank();
        let mono = match g.kind {
            GeneratorKind::Kappa => TautMonomial {
                kappas: vec![(g.monomial.clone(), 1)],
                point: ClassMonomial::one(n),
            },
            GeneratorKind::PointClass => TautMonomial {
                kappas: Vec::new(),
                point: g.monomial.clone(),
            },
        };
        let mut out = TautPoly::zero(n);
        out.add_term(mono, Rational::one());
        out
    }

    /// A polynomial in point classes only.
    pub fn from_point_classes(c: &CharClass) -> Self {
        let mut out = TautPoly::zero(c.rank());
        for (m, x) in c.terms() {
            out.add_term(
                TautMonomial {
                    kappas: Vec::new(),
                    point: m.clone(),
                },
                x.clone(),
            );
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: TautMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &TautPoly) -> TautPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TautPoly) -> TautPoly {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, k: &Rational) -> TautPoly {
        let mut out = TautPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &TautPoly) -> TautPoly {
        let mut out = TautPoly::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut kappas: BTreeMap<ClassMonomial, u32> = a.kappas.iter().cloned().collect();
                for (m, e) in &b.kappas {
                    *kappas.entry(m.clone()).or_default() += e;
                }
                let point =
                    CharClass::from_monomial(a.point.clone(), ca * cb).mul_monomial(&b.point);
                for (pm, pc) in point.terms() {
                    out.add_term(
                        TautMonomial {
                            kappas: kappas.clone().into_iter().collect(),
                            point: pm.clone(),
                        },
                        pc.clone(),
                    );
                }
            }
        }
        out
    }

    /// Applies `c ↦ c̄` to the point-class factors.
    pub fn conjugate_points(&self) -> TautPoly {
        let mut out = TautPoly::zero(self.n);
        for (m, c) in &self.terms {
            let c = if m.point.has_euler() { -c } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Degree of a homogeneous element (`Some(0)` for zero).
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(TautMonomial::degree);
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|x| x == d).then_some(d),
        }
    }

    /// Sets every positive-degree `κ` to zero; degree-zero `κ`s (characteristic
    /// numbers) are kept.
    pub fn kill_positive_kappas(&self) -> TautPoly {
        let two_n = 2 * self.n as u32;
        let mut out = TautPoly::zero(self.n);
        for (m, c) in &self.terms {
            if m.kappas.iter().all(|(k, _)| k.degree() == two_n) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// `Some(c)` when the element involves no `κ`s.
    pub fn as_point_classes(&self) -> Option<CharClass> {
        let mut out = CharClass::zero(self.n);
        for (m, c) in &self.terms {
            if !m.kappas.is_empty() {
                return None;
            }
            out.add_term(m.point.clone(), c.clone());
        }
        Some(out)
    }

    pub fn render(&self, notation: Notation) -> String {
        self.render_with(notation, None)
    }

    pub fn render_with(&self, notation: Notation, point_suffix: Option<&str>) -> String {
        render_sum(
            self.display_order()
                .into_iter()
                .map(|(m, c)| (m.render(notation, point_suffix), c)),
            notation,
        )
    }

    /// `κ`-terms first, then point classes by descending degree.
    fn display_order(&self) -> Vec<(&TautMonomial, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (m.kappas.is_empty(), Reverse(m.degree())));
        terms
    }

    fn json_terms(&self) -> Vec<TermJson> {
        self.display_order()
            .into_iter()
            .map(|(m, c)| TermJson {
                coefficient: fmt_rational(c),
                kappas: m
                    .kappas
                    .iter()
                    .map(|(k, e)| (k.render(Notation::Text), *e))
                    .collect(),
                point: m.point.render(Notation::Text),
            })
            .collect()
    }
}

impl fmt::Display for TautPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Text))
    }
}

impl CharClass {
    pub(crate) fn mul_monomial(&self, m: &ClassMonomial) -> CharClass {
        self * &CharClass::from_monomial(m.clone(), Rational::one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointClassStatus {
    Transported,
    Unavailable(String),
}

/// The connected-sum map on generators up to a generator degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    pub source: String,
    pub target: String,
    pub rank: usize,
    pub max_degree: u32,
    /// Whether point classes go to `r̄_c` instead of `r_c`.
    pub conjugated: bool,
    pub entries: BTreeMap<TautGenerator, TautPoly>,
    pub point_class_status: PointClassStatus,
}

/// `κ_{p_I} ↦ κ_{p_I} + q_{p_I}`, `κ_{e·p_I} ↦ κ_{e·p_I} + q_{e·p_I} − 2p_I`,
/// and `c ↦ r_c` when every point class up to `max_degree` transports.
pub fn connected_sum_hom(m: &TorusManifold, max_degree: u32) -> Result<GeneratorMap, Error> {
    validate_maximal_torus(m)?;
    let n = m.rank();
    let two_n = 2 * n as u32;

    let kappa_sources: Vec<ClassMonomial> = monomial_basis(n, max_degree + two_n)
        .into_iter()
        .filter(|c| c.degree() >= two_n)
        .collect();
    let kappa_entries = kappa_sources
        .par_iter()
        .map(|c| {
            let gen = TautGenerator::kappa(c.clone());
            let q = kappa_pullback(m, &CharClass::from_monomial(c.clone(), Rational::one()))?;
            let mut image = TautPoly::generator(&gen).add(&TautPoly::from_point_classes(&q));
            if c.has_euler() {
                let correction = TautPoly::generator(&TautGenerator::point(c.without_euler()));
                image = image.sub(&correction.scale(&rat(2)));
            }
            Ok((gen, image))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut entries: BTreeMap<TautGenerator, TautPoly> = kappa_entries.into_iter().collect();

    let point_sources: Vec<ClassMonomial> = monomial_basis(n, max_degree)
        .into_iter()
        .filter(|c| !c.is_one())
        .collect();
    let transported: Result<Vec<(TautGenerator, TautPoly)>, Error> = point_sources
        .par_iter()
        .map(|c| {
            let r =
                point_class_transport(m, &CharClass::from_monomial(c.clone(), Rational::one()))?;
            Ok((
                TautGenerator::point(c.clone()),
                TautPoly::from_point_classes(&r),
            ))
        })
        .collect();
    let point_class_status = match transported {
        Ok(rows) => {
            entries.extend(rows);
            PointClassStatus::Transported
        }
        Err(Error::PointClassUnavailable { reason, .. }) => PointClassStatus::Unavailable(reason),
        Err(Error::MissingM1) => PointClassStatus::Unavailable(Error::MissingM1.to_string()),
        Err(e) => return Err(e),
    };

    Ok(GeneratorMap {
        source: format!("{} # N", m.name()),
        target: "N".into(),
        rank: n,
        max_degree,
        conjugated: false,
        entries,
        point_class_status,
    })
}

/// The variant with point classes sent to `r̄_c`; an involution.
pub fn conjugated_hom(g: &GeneratorMap) -> Result<GeneratorMap, Error> {
    if let PointClassStatus::Unavailable(reason) = &g.point_class_status {
        return Err(Error::PointClassUnavailable {
            class: "point classes".into(),
            reason: reason.clone(),
        });
    }
    let entries = g
        .entries
        .iter()
        .map(|(gen, img)| {
            let img = match gen.kind {
                GeneratorKind::Kappa => img.clone(),
                GeneratorKind::PointClass => img.conjugate_points(),
            };
            (gen.clone(), img)
        })
        .collect();
    Ok(GeneratorMap {
        conjugated: !g.conjugated,
        entries,
        ..g.clone()
    })
}

/// The map composed with restriction to a fibre `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberTable {
    pub rank: usize,
    pub rows: BTreeMap<TautGenerator, TautPoly>,
}

pub fn fiber_restriction(g: &GeneratorMap) -> FiberTable {
    FiberTable {
        rank: g.rank,
        rows: g
            .entries
            .iter()
            .map(|(gen, img)| (gen.clone(), img.kill_positive_kappas()))
            .collect(),
    }
}

impl FiberTable {
    pub fn render(&self, notation: Notation) -> String {
        let mut out = String::new();
        for (gen, img) in &self.rows {
            let lhs = gen.render(notation);
            let rhs = img.render_with(notation, Some("(TN)"));
            out.push_str(&match notation {
                Notation::Text => format!("{lhs} |-> {rhs}\n"),
                Notation::Latex => format!("{lhs} &\\longmapsto {rhs}\\\\\n"),
            });
        }
        out
    }
}

impl GeneratorMap {
    pub fn get(&self, gen: &TautGenerator) -> Option<&TautPoly> {
        self.entries.get(gen)
    }

    /// Every image has the degree of its generator.
    pub fn is_homogeneous(&self) -> bool {
        self.entries
            .iter()
            .all(|(g, img)| img.is_zero() || img.degree() == Some(g.degree()))
    }

    pub fn render(&self, notation: Notation) -> String {
        let mut out = String::new();
        match notation {
            Notation::Text => {
                out.push_str(&format!(
                    "R*({}, *) -> R*({}, *)  [rank {}, generators up to degree {}{}]\n",
                    self.source,
                    self.target,
                    self.rank,
                    self.max_degree,
                    if self.conjugated { ", conjugated" } else { "" }
                ));
                out.push_str(&match &self.point_class_status {
                    PointClassStatus::Transported => "point classes: transported\n".to_string(),
                    PointClassStatus::Unavailable(r) => {
                        format!("point classes: unavailable ({r})\n")
                    }
                });
                for (g, img) in &self.entries {
                    out.push_str(&format!("{} |-> {}\n", g, img));
                }
            }
            Notation::Latex => {
                out.push_str("\\begin{align*}\n");
                for (g, img) in &self.entries {
                    out.push_str(&format!(
                        "{} &\\longmapsto {}\\\\\n",
                        g.render(Notation::Latex),
                        img.render(Notation::Latex)
                    ));
                }
                out.push_str("\\end{align*}\n");
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (status, reason) = match &self.point_class_status {
            PointClassStatus::Transported => ("transported", None),
            PointClassStatus::Unavailable(r) => ("unavailable", Some(r.clone())),
        };
        let doc = MapJson {
            source: &self.source,
            target: &self.target,
            rank: self.rank,
            max_degree: self.max_degree,
            conjugated: self.conjugated,
            point_class_status: status,
            point_class_reason: reason,
            entries: self
                .entries
                .iter()
                .map(|(g, img)| EntryJson {
                    generator: g.render(Notation::Text),
                    kind: g.kind,
                    monomial: g.monomial.render(Notation::Text),
                    degree: g.degree(),
                    image: img.render(Notation::Text),
                    image_latex: img.render(Notation::Latex),
                    terms: img.json_terms(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("map serializes")
    }
}

#[derive(Serialize)]
struct MapJson<'a> {
    source: &'a str,
    target: &'a str,
    rank: usize,
    max_degree: u32,
    conjugated: bool,
    point_class_status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    point_class_reason: Option<String>,
    entries: Vec<EntryJson>,
}

#[derive(Serialize)]
struct EntryJson {
    generator: String,
    kind: GeneratorKind,
    monomial: String,
    degree: i64,
    image: String,
    image_latex: String,
    terms: Vec<TermJson>,
}

#[derive(Serialize)]
struct TermJson {
    coefficient: String,
    kappas: Vec<(String, u32)>,
    point: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{builtin, product, projective_space, sphere};

    fn mono(euler: bool, p: &[u32]) -> ClassMonomial {
        ClassMonomial::new(euler, p.to_vec())
    }

    #[test]
    fn sphere_product_map() {
        let m = product(&sphere(1).unwrap(), &sphere(1).unwrap()).unwrap();
        let g = connected_sum_hom(&m, 8).unwrap();
        assert_eq!(g.point_class_status, PointClassStatus::Transported);
        let kp1 = TautGenerator::kappa(mono(false, &[1, 0]));
        assert_eq!(g.get(&kp1).unwrap(), &TautPoly::generator(&kp1));
        let kep1 = TautGenerator::kappa(mono(true, &[1, 0]));
        let p1 = TautGenerator::point(mono(false, &[1, 0]));
        assert_eq!(
            g.get(&kep1).unwrap(),
            &TautPoly::generator(&kep1).add(&TautPoly::generator(&p1).scale(&rat(2)))
        );
        assert_eq!(g.get(&kep1).unwrap().to_string(), "kappa[e*p1] + 2*p1");
        let e = TautGenerator::point(mono(true, &[0, 0]));
        assert_eq!(g.get(&e).unwrap(), &TautPoly::generator(&e));
        // κ_e has degree 0 and maps to κ_e + 2
        let ke = TautGenerator::kappa(mono(true, &[0, 0]));
        assert_eq!(g.get(&ke).unwrap().to_string(), "kappa[e] + 2");
        assert!(g.is_homogeneous());
    }

    #[test]
    fn cp2_map() {
        let g = connected_sum_hom(&projective_space(2).unwrap(), 8).unwrap();
        assert!(matches!(
            g.point_class_status,
            PointClassStatus::Unavailable(_)
        ));
        assert!(g.entries.keys().all(|k| k.kind == GeneratorKind::Kappa));
        let kp1 = TautGenerator::kappa(mono(false, &[1, 0]));
        assert_eq!(g.get(&kp1).unwrap().to_string(), "kappa[p1] + 3");
        let kep1 = TautGenerator::kappa(mono(true, &[1, 0]));
        // q_{1,1} − 2p_1 = 2p_1 − 4e
        assert_eq!(
            g.get(&kep1).unwrap().to_string(),
            "kappa[e*p1] + 2*p1 - 4*e"
        );
        assert!(g.is_homogeneous());
        assert!(conjugated_hom(&g).is_err());
    }

    #[test]
    fn conjugated_variant() {
        let g = connected_sum_hom(&builtin("s2xs2").unwrap(), 8).unwrap();
        let h = conjugated_hom(&g).unwrap();
        let e = TautGenerator::point(mono(true, &[0, 0]));
        assert_eq!(h.get(&e).unwrap().to_string(), "-e");
        for (gen, img) in &g.entries {
            if gen.kind == GeneratorKind::Kappa {
                assert_eq!(h.get(gen), Some(img));
            }
        }
        assert_eq!(conjugated_hom(&h).unwrap(), g);
    }

    #[test]
    fn fiber_rows() {
        let g = connected_sum_hom(&builtin("s4xs4").unwrap(), 8).unwrap();
        let t = fiber_restriction(&g);
        let kp1p2 = TautGenerator::kappa(mono(false, &[1, 1, 0, 0]));
        assert!(t.rows[&kp1p2].is_zero());
        let kep1 = TautGenerator::kappa(mono(true, &[1, 0, 0, 0]));
        assert_eq!(
            t.rows[&kep1].render_with(Notation::Text, Some("(TN)")),
            "2*p1(TN)"
        );
        let e = TautGenerator::point(mono(true, &[0, 0, 0, 0]));
        assert_eq!(
            t.rows[&e].render_with(Notation::Text, Some("(TN)")),
            "e(TN)"
        );
        assert!(t
            .render(Notation::Latex)
            .contains("\\kappa_{ep_1} &\\longmapsto 2p_1(TN)"));
    }

    #[test]
    fn taut_algebra() {
        let n = 2;
        let k = TautPoly::generator(&TautGenerator::kappa(mono(true, &[1, 0])));
        let e = TautPoly::generator(&TautGenerator::point(mono(true, &[0, 0])));
        let prod = k.mul(&e).mul(&e);
        // e·e = p_2 in the point-class ring
        assert_eq!(prod.to_string(), "kappa[e*p1]*p2");
        assert_eq!(prod.degree(), Some(4 + 8));
        assert_eq!(prod.render(Notation::Latex), "\\kappa_{ep_1} p_2");
        assert!(TautPoly::zero(n).is_zero());
        assert_eq!(e.sub(&e), TautPoly::zero(n));
    }

    #[test]
    fn json_is_stable() {
        let m = builtin("cp2").unwrap();
        let a = serde_json::to_string(&connected_sum_hom(&m, 8).unwrap().to_json()).unwrap();
        let b = serde_json::to_string(&connected_sum_hom(&m, 8).unwrap().to_json()).unwrap();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["point_class_status"], "unavailable");
        assert_eq!(v["entries"][0]["generator"], "kappa[p1]");
    }
}
