//! Replays every reference identity: the sphere-product stabilisation map,
//! the `CP²` table, the sphere lemma, fibre restriction, Euler
//! characteristics, and seeded property suites. All checks are exact.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classes::{
    euler_of_rep, eval_class, monomial_basis, CharClass, ClassMonomial, Notation,
};
use crate::hom::{
    conjugated_hom, connected_sum_hom, fiber_restriction, GeneratorKind, GeneratorMap,
    PointClassStatus, TautGenerator, TautPoly,
};
use crate::localization::{
    euler_characteristic, fibre_integrate, kappa_pullback, verify_sphere_lemma, TorusManifold,
};
use crate::manifolds::{builtin, product, projective_space, sphere};
use crate::parse::parse_class;
use crate::poly::{fmt_rational, rat, MultiPoly, Rational};
use crate::symmetric::{to_pe_basis, WeylContext, WeylGenerator};
use crate::Error;

/// Coordinates of oracle points are drawn from `-ORACLE_RANGE..=ORACLE_RANGE`.
pub const ORACLE_RANGE: i64 = 1000;
pub const ORACLE_POINTS: usize = 100;
pub const ROUNDTRIP_SAMPLES: usize = 500;
pub const MAX_DEGREE: u32 = 16;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// The computed class in LaTeX, for checks whose result is a class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latex: Option<String>,
}

impl CheckResult {
    fn new(
        criterion: u8,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        CheckResult {
            criterion,
            name: name.into(),
            passed,
            detail: detail.into(),
            latex: None,
        }
    }

    fn with_latex(mut self, c: Option<&CharClass>) -> Self {
        self.latex = c.map(|c| c.render(Notation::Latex));
        self
    }

    fn from_result(criterion: u8, name: impl Into<String>, r: Result<String, String>) -> Self {
        match r {
            Ok(d) => Self::new(criterion, name, true, d),
            Err(d) => Self::new(criterion, name, false, d),
        }
    }

    fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: {}",
            self.status(),
            self.criterion,
            self.name,
            self.detail
        )
    }

    /// One row of an `align*` block: `name = class` when the check computes
    /// a class, otherwise the escaped detail text.
    pub fn latex_line(&self) -> String {
        let body = match &self.latex {
            Some(l) => format!("{} = {}", self.name, l),
            None => format!(
                "\\text{{{}: {}}}",
                escape_text(&self.name),
                escape_text(&self.detail)
            ),
        };
        format!(
            "\\text{{{} [{}]}} & {}\\\\",
            self.status(),
            self.criterion,
            body
        )
    }
}

/// Every check, in criterion order.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.extend(stabilisation_checks());
    out.extend(cp2_table_checks());
    out.extend(cp2_map_checks());
    out.extend(sphere_lemma_checks());
    out.extend(fiber_restriction_checks());
    out.extend(euler_characteristic_checks());
    out.extend(property_checks(seed));
    out.extend(extension_checks());
    out
}

fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\textbackslash{}"),
            '^' => out.push_str("\\^{}"),
            '_' | '{' | '}' | '&' | '%' | '$' | '#' => {
                out.push('\\');
                out.push(ch);
            }
            _ => out.push(ch),
        }
    }
    out
}

fn err_string(e: Error) -> String {
    e.to_string()
}

/// `(a, b)` with `1 ≤ a ≤ b`, `a + b ≤ 4`.
pub fn sphere_product_pairs() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 1..=4 {
        for b in a..=4 {
            if a + b <= 4 {
                v.push((a, b));
            }
        }
    }
    v
}

pub fn sphere_product_map(a: usize, b: usize) -> Result<GeneratorMap, Error> {
    connected_sum_hom(&product(&sphere(a)?, &sphere(b)?)?, MAX_DEGREE)
}

/// The expected image of a generator under the stabilisation map.
pub fn stabilisation_image(gen: &TautGenerator) -> TautPoly {
    let g = TautPoly::generator(gen);
    match gen.kind {
        GeneratorKind::Kappa if gen.monomial.has_euler() => {
            let p = TautPoly::generator(&TautGenerator::point(gen.monomial.without_euler()));
            g.add(&p.scale(&rat(2)))
        }
        _ => g,
    }
}

/// Number of generators a complete rank-`n` map must carry.
fn expected_generator_count(n: usize, max_degree: u32) -> usize {
    let two_n = 2 * n as u32;
    let kappas = monomial_basis(n, max_degree + two_n)
        .iter()
        .filter(|c| c.degree() >= two_n)
        .count();
    let points = monomial_basis(n, max_degree).len() - 1;
    kappas + points
}

fn check_stabilisation_map(g: &GeneratorMap) -> Result<String, String> {
    if g.point_class_status != PointClassStatus::Transported {
        return Err(format!(
            "point classes not transported: {:?}",
            g.point_class_status
        ));
    }
    let want = expected_generator_count(g.rank, g.max_degree);
    if g.entries.len() != want {
        return Err(format!("{} generators, expected {want}", g.entries.len()));
    }
    for (gen, img) in &g.entries {
        let expected = stabilisation_image(gen);
        if *img != expected {
            return Err(format!("{gen} |-> {img}, expected {expected}"));
        }
    }
    Ok(format!("{} generators match", g.entries.len()))
}

pub fn stabilisation_checks() -> Vec<CheckResult> {
    sphere_product_pairs()
        .into_iter()
        .map(|(a, b)| {
            let r = sphere_product_map(a, b)
                .map_err(err_string)
                .and_then(|g| check_stabilisation_map(&g));
            CheckResult::from_result(1, format!("S^{}xS^{} stabilisation map", 2 * a, 2 * b), r)
        })
        .collect()
}

/// The listed values of `q_{a,b}` for `CP²`, as class expressions.
pub const CP2_TABLE: [(u32, u32, &str); 9] = [
    (0, 1, "3"),
    (1, 0, "3"),
    (0, 2, "7*p1 - 7*e"),
    (1, 1, "4*p1 - 4*e"),
    (2, 0, "p1 - e"),
    (0, 3, "13*(p1^2 + e^2 - 2*e*p1)"),
    (1, 2, "6*(p1^2 + e^2 - 2*e*p1)"),
    (2, 1, "2*(p1^2 + e^2 - 2*e*p1)"),
    (3, 0, "p1^2 + e^2 - 2*e*p1"),
];

/// `e^a · p_1^b` in rank 2.
pub fn cp2_monomial(a: u32, b: u32) -> CharClass {
    &CharClass::euler(2).pow(a) * &CharClass::pontryagin(2, 1).pow(b)
}

fn listed_q(a: u32, b: u32) -> Option<CharClass> {
    CP2_TABLE
        .iter()
        .find(|(x, y, _)| (*x, *y) == (a, b))
        .map(|(_, _, s)| parse_class(s, 2).expect("table entries parse"))
}

pub fn cp2_table_checks() -> Vec<CheckResult> {
    let cp2 = projective_space(2).expect("CP^2 builds");
    CP2_TABLE
        .iter()
        .map(|&(a, b, _)| {
            let expected = listed_q(a, b).unwrap();
            let q = kappa_pullback(&cp2, &cp2_monomial(a, b));
            let r = match &q {
                Ok(q) if *q == expected => Ok(q.to_string()),
                Ok(q) => Err(format!("got {q}, expected {expected}")),
                Err(e) => Err(e.to_string()),
            };
            CheckResult::from_result(2, format!("q_{{{a},{b}}}"), r).with_latex(q.as_ref().ok())
        })
        .collect()
}

/// Writes a rank-2 monomial `e^ε p_1^b p_2^c` as `e^a p_1^b` with `a = ε + 2c`.
fn as_cp2_exponents(m: &ClassMonomial) -> (u32, u32) {
    let p = m.pontryagin_exponents();
    (m.has_euler() as u32 + 2 * p[1], p[0])
}

pub fn cp2_map_checks() -> Vec<CheckResult> {
    let cp2 = projective_space(2).expect("CP^2 builds");
    let g = match connected_sum_hom(&cp2, MAX_DEGREE) {
        Ok(g) => g,
        Err(e) => return vec![CheckResult::new(3, "CP^2 map", false, e.to_string())],
    };
    let mut out = vec![CheckResult::new(
        3,
        "CP^2 point classes unavailable",
        matches!(g.point_class_status, PointClassStatus::Unavailable(_)),
        match &g.point_class_status {
            PointClassStatus::Unavailable(r) => r.clone(),
            PointClassStatus::Transported => "point classes were transported".into(),
        },
    )];
    let r = (|| {
        let mut listed = 0;
        for (gen, img) in &g.entries {
            if gen.kind != GeneratorKind::Kappa {
                return Err(format!("unexpected point-class row {gen}"));
            }
            let (a, b) = as_cp2_exponents(&gen.monomial);
            let q = match listed_q(a, b) {
                Some(q) => {
                    listed += 1;
                    q
                }
                None => kappa_pullback(&cp2, &cp2_monomial(a, b)).map_err(err_string)?,
            };
            let mut expected = TautPoly::generator(gen).add(&TautPoly::from_point_classes(&q));
            if a % 2 == 1 {
                let corr = cp2_monomial(a - 1, b).scale(&rat(2));
                expected = expected.sub(&TautPoly::from_point_classes(&corr));
            }
            if *img != expected {
                return Err(format!("{gen} |-> {img}, expected {expected}"));
            }
        }
        Ok(format!(
            "{} kappa rows ({listed} against listed q_{{a,b}})",
            g.entries.len()
        ))
    })();
    out.push(CheckResult::from_result(3, "CP^2 kappa rows", r));
    out
}

pub fn sphere_lemma_checks() -> Vec<CheckResult> {
    (1..=4)
        .map(|n| {
            let r = verify_sphere_lemma(n, MAX_DEGREE)
                .map_err(err_string)
                .and_then(|rep| match rep.checks.iter().find(|c| !c.passed()) {
                    None => Ok(format!("{} classes", rep.checks.len())),
                    Some(c) => Err(format!(
                        "{} |-> {:?}, expected {}",
                        c.class,
                        c.actual.as_ref().map(|q| q.to_string()),
                        c.expected
                    )),
                });
            CheckResult::from_result(4, format!("S^{} sphere lemma", 2 * n), r)
        })
        .collect()
}

pub fn fiber_restriction_checks() -> Vec<CheckResult> {
    sphere_product_pairs()
        .into_iter()
        .map(|(a, b)| {
            let r = sphere_product_map(a, b).map_err(err_string).and_then(|g| {
                let table = fiber_restriction(&g);
                for (gen, row) in &table.rows {
                    let expected = match gen.kind {
                        GeneratorKind::Kappa => {
                            let twice = if gen.monomial.has_euler() {
                                TautPoly::generator(&TautGenerator::point(
                                    gen.monomial.without_euler(),
                                ))
                                .scale(&rat(2))
                            } else {
                                TautPoly::zero(g.rank)
                            };
                            if gen.degree() == 0 {
                                // a characteristic number of N survives restriction
                                TautPoly::generator(gen).add(&twice)
                            } else {
                                twice
                            }
                        }
                        GeneratorKind::PointClass => TautPoly::generator(gen),
                    };
                    if *row != expected {
                        return Err(format!("{gen} |-> {row}, expected {expected}"));
                    }
                }
                Ok(format!("{} rows", table.rows.len()))
            });
            CheckResult::from_result(5, format!("S^{}xS^{} fibre restriction", 2 * a, 2 * b), r)
        })
        .collect()
}

/// Builtins exercised by the Euler characteristic and oracle checks.
pub fn builtin_names(max_rank: usize) -> Vec<String> {
    let mut v = Vec::new();
    for k in 1..=max_rank {
        v.push(format!("s{}", 2 * k));
    }
    for a in 1..max_rank {
        for b in a..=max_rank - a {
            v.push(format!("s{}xs{}", 2 * a, 2 * b));
        }
    }
    for n in 1..=max_rank {
        v.push(format!("cp{n}"));
    }
    v
}

pub fn euler_characteristic_checks() -> Vec<CheckResult> {
    builtin_names(4)
        .into_iter()
        .map(|name| {
            let r = builtin(&name).map_err(err_string).and_then(|m| {
                let expected = if name.starts_with("cp") {
                    m.rank() as i64 + 1
                } else if name.contains('x') {
                    4
                } else {
                    2
                };
                let chi = euler_characteristic(&m).map_err(err_string)?;
                if chi != rat(expected) {
                    return Err(format!("chi = {}, expected {expected}", fmt_rational(&chi)));
                }
                let inverse_sum =
                    fibre_integrate(&m, &CharClass::one(m.rank())).map_err(err_string)?;
                if !inverse_sum.is_zero() {
                    return Err(format!("sum of 1/e_j = {inverse_sum}"));
                }
                Ok(format!("chi = {expected}, sum of 1/e_j = 0"))
            });
            CheckResult::from_result(6, format!("{name} Euler characteristic"), r)
        })
        .collect()
}

/// A random class of rank `1..=4` and degree at most 20.
pub fn random_class(rng: &mut impl Rng) -> CharClass {
    let n = rng.gen_range(1..=4);
    let basis = monomial_basis(n, 20);
    let mut c = CharClass::zero(n);
    for _ in 0..rng.gen_range(0..=6) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let num = rng.gen_range(-20i64..=20);
        let den = rng.gen_range(1i64..=6);
        c.add_term(m, Rational::new(num.into(), den.into()));
    }
    c
}

/// Integer points avoiding every zero of the Euler classes of `m`.
pub fn oracle_points(m: &TorusManifold, count: usize, rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    let eulers: Vec<MultiPoly> = m
        .fixed_points()
        .iter()
        .map(|f| euler_of_rep(&f.rep))
        .collect();
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let pt: Vec<Rational> = (0..m.rank())
            .map(|_| rat(rng.gen_range(-ORACLE_RANGE..=ORACLE_RANGE)))
            .collect();
        if eulers.iter().all(|e| !e.evaluate(&pt).unwrap().is_zero()) {
            pts.push(pt);
        }
    }
    pts
}

/// How a class fared against the random-point oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleOutcome {
    /// The localization sum and its basis rewriting both match.
    Rewritten,
    /// The sum matches but has no basis form; the oracle itself confirms the
    /// symmetry that fails.
    NoBasisForm,
}

fn act_on_point(g: WeylGenerator, pt: &[Rational]) -> Vec<Rational> {
    let mut v = pt.to_vec();
    match g {
        WeylGenerator::Transposition(i) => v.swap(i, i + 1),
        WeylGenerator::DoubleSignFlip => {
            v[0] = -v[0].clone();
            v[1] = -v[1].clone();
        }
    }
    v
}

/// Compares `Σ_j c|_j(pt) / e_j(pt)`, summed directly at each point, with the
/// polynomial localization sum and with its basis rewriting restricted to the
/// chart point. Builtin charts use the standard weights, so chart coordinates
/// are the torus coordinates.
pub fn oracle_agrees(
    m: &TorusManifold,
    c: &CharClass,
    points: &[Vec<Rational>],
) -> Result<OracleOutcome, String> {
    let restricted: Vec<(MultiPoly, MultiPoly)> = m
        .fixed_points()
        .iter()
        .map(|f| (eval_class(c, &f.rep), euler_of_rep(&f.rep)))
        .collect();
    let direct = |pt: &[Rational]| {
        let mut sum = Rational::zero();
        for (t, e) in &restricted {
            sum += t.evaluate(pt).unwrap() / e.evaluate(pt).unwrap();
        }
        sum
    };
    let mismatch = |what: &str, pt: &[Rational], want: &Rational, got: &Rational| {
        format!(
            "{c} at {:?}: direct sum {} vs {what} {}",
            pt.iter().map(fmt_rational).collect::<Vec<_>>(),
            fmt_rational(want),
            fmt_rational(got)
        )
    };
    let integral = fibre_integrate(m, c).map_err(err_string)?;
    let basis = match kappa_pullback(m, c) {
        Ok(q) => Some(eval_class(&q, &m.chart_point().rep)),
        Err(Error::NotInvariant { witness }) => {
            let moved = points
                .iter()
                .any(|pt| direct(pt) != direct(&act_on_point(witness, pt)));
            if !moved {
                return Err(format!(
                    "{c}: reported as moved by {witness}, but no oracle point is"
                ));
            }
            None
        }
        Err(e) => return Err(e.to_string()),
    };
    for pt in points {
        let want = direct(pt);
        let got = integral.evaluate(pt).unwrap();
        if want != got {
            return Err(mismatch("localization sum", pt, &want, &got));
        }
        if let Some(b) = &basis {
            let got = b.evaluate(pt).unwrap();
            if want != got {
                return Err(mismatch("basis form", pt, &want, &got));
            }
        }
    }
    Ok(match basis {
        Some(_) => OracleOutcome::Rewritten,
        None => OracleOutcome::NoBasisForm,
    })
}

pub fn property_checks(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let r = (|| {
        for _ in 0..ROUNDTRIP_SAMPLES {
            let c = random_class(&mut rng);
            let back = to_pe_basis(&c.expand(), WeylContext::new(c.rank())).map_err(err_string)?;
            if back != c {
                return Err(format!("{c} came back as {back}"));
            }
        }
        Ok(format!("{ROUNDTRIP_SAMPLES} random classes"))
    })();
    out.push(CheckResult::from_result(7, "basis rewriting roundtrip", r));

    for name in builtin_names(3) {
        let m = match builtin(&name) {
            Ok(m) => m,
            Err(e) => {
                out.push(CheckResult::new(
                    7,
                    format!("{name} random-point oracle"),
                    false,
                    e.to_string(),
                ));
                continue;
            }
        };
        let points = oracle_points(&m, ORACLE_POINTS, &mut rng);
        let basis = monomial_basis(m.rank(), MAX_DEGREE);
        let mut without = Vec::new();
        let r = (|| {
            for mono in &basis {
                let c = CharClass::from_monomial(mono.clone(), Rational::one());
                if oracle_agrees(&m, &c, &points)? == OracleOutcome::NoBasisForm {
                    without.push(c);
                }
            }
            Ok(format!(
                "{} localization sums x {ORACLE_POINTS} points, {} basis forms",
                basis.len(),
                basis.len() - without.len()
            ))
        })();
        out.push(CheckResult::from_result(
            7,
            format!("{name} random-point oracle"),
            r,
        ));
        if let Some(first) = without.first() {
            let integral = fibre_integrate(&m, first)
                .map(|f| f.to_string())
                .unwrap_or_default();
            out.push(CheckResult::new(
                7,
                format!("{name} basis rewritings"),
                false,
                format!(
                    "{} of {} integrals are not Weyl-invariant and have no basis form; first: {first} integrates to {integral}",
                    without.len(),
                    basis.len()
                ),
            ));
        }
    }

    let r = (|| {
        let mut maps = Vec::new();
        for (a, b) in sphere_product_pairs() {
            let g = sphere_product_map(a, b).map_err(err_string)?;
            maps.push(conjugated_hom(&g).map_err(err_string)?);
            maps.push(g);
        }
        for name in ["cp1", "cp2"] {
            maps.push(connected_sum_hom(&builtin(name).unwrap(), MAX_DEGREE).map_err(err_string)?);
        }
        for g in &maps {
            if !g.is_homogeneous() {
                return Err(format!("{} has an inhomogeneous image", g.source));
            }
        }
        Ok(format!("{} maps", maps.len()))
    })();
    out.push(CheckResult::from_result(7, "generator map homogeneity", r));

    let r = (|| {
        for _ in 0..100 {
            let c = random_class(&mut rng);
            if c.conjugate().conjugate() != c {
                return Err(format!("conjugate twice moved {c}"));
            }
        }
        for (a, b) in sphere_product_pairs() {
            let g = sphere_product_map(a, b).map_err(err_string)?;
            let twice =
                conjugated_hom(&conjugated_hom(&g).map_err(err_string)?).map_err(err_string)?;
            if twice != g {
                return Err(format!(
                    "conjugated map twice differs for S^{}xS^{}",
                    2 * a,
                    2 * b
                ));
            }
        }
        Ok("conjugate and conjugated map".into())
    })();
    out.push(CheckResult::from_result(7, "involutions", r));
    out
}

/// `(e_j, p_1|_j)` at the three fixed points of `CP²`, written out directly.
fn cp2_point_data() -> [(MultiPoly, MultiPoly); 3] {
    let x1 = MultiPoly::var(2, 0);
    let x2 = MultiPoly::var(2, 1);
    let sq = |p: &MultiPoly| p * p;
    [
        (&x1 * &x2, &sq(&x1) + &sq(&x2)),
        (&sq(&x1) - &(&x1 * &x2), &sq(&x1) + &sq(&(&x2 - &x1))),
        (&sq(&x2) - &(&x1 * &x2), &sq(&x2) + &sq(&(&x1 - &x2))),
    ]
}

/// `q_{a,b}` by clearing the three-term sum over its common denominator.
pub fn cp2_brute_force(a: u32, b: u32) -> Result<MultiPoly, Error> {
    let data = cp2_point_data();
    let denominator = data.iter().fold(MultiPoly::one(2), |acc, (e, _)| &acc * e);
    let mut numerator = MultiPoly::zero(2);
    for (j, (e, p)) in data.iter().enumerate() {
        let mut term = &e.pow(a) * &p.pow(b);
        for (k, (other, _)) in data.iter().enumerate() {
            if k != j {
                term = &term * other;
            }
        }
        numerator = &numerator + &term;
    }
    Ok(numerator.exact_div(&denominator)?)
}

/// Every monomial is all-even or all-odd in its exponents.
pub fn satisfies_parity_dichotomy(f: &MultiPoly) -> bool {
    f.terms().all(|(e, _)| {
        let first = e.0[0] % 2;
        e.0.iter().all(|k| k % 2 == first)
    })
}

pub fn extension_checks() -> Vec<CheckResult> {
    let cp2 = projective_space(2).expect("CP^2 builds");
    [(4, 0), (2, 2)]
        .into_iter()
        .map(|(a, b)| {
            let q = kappa_pullback(&cp2, &cp2_monomial(a, b));
            let r = (|| {
                let q = q.clone().map_err(err_string)?;
                let oracle = cp2_brute_force(a, b).map_err(err_string)?;
                if q.expand() != oracle {
                    return Err(format!(
                        "main path {q} expands to {}, oracle {oracle}",
                        q.expand()
                    ));
                }
                if !satisfies_parity_dichotomy(&oracle) {
                    return Err(format!("{oracle} mixes parities"));
                }
                Ok(q.render(Notation::Text))
            })();
            CheckResult::from_result(8, format!("q_{{{a},{b}}}"), r).with_latex(q.as_ref().ok())
        })
        .collect()
}
