//! Acceptance gate. Every criterion is checked exactly and reports one
//! PASS/FAIL line per case; run with `--nocapture` to see them.
//!
//! Expected values are either frozen literals or come from the dense
//! oracle below, which shares no code with the library's polynomial layer.

use std::collections::BTreeMap;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tautring::classes::{CharClass, ClassMonomial};
use tautring::hom::{
    conjugated_hom, connected_sum_hom, fiber_restriction, GeneratorKind, GeneratorMap,
    PointClassStatus, TautGenerator, TautPoly,
};
use tautring::localization::{
    euler_characteristic, fibre_integrate, kappa_pullback, verify_sphere_lemma,
};
use tautring::manifolds::{builtin, product, projective_space, sphere, MAX_BUILTIN_RANK};
use tautring::parse::parse_class;
use tautring::poly::{rat, MultiPoly, Rational};
use tautring::symmetric::{to_pe_basis, WeylContext};
use tautring::verify;

const MAX_DEGREE: u32 = 16;

fn report(criterion: u8, name: &str, r: Result<String, String>) -> bool {
    match &r {
        Ok(d) => println!("PASS [{criterion}] {name}: {d}"),
        Err(d) => println!("FAIL [{criterion}] {name}: {d}"),
    }
    r.is_ok()
}

fn gate(results: Vec<bool>) {
    let failed = results.iter().filter(|ok| !**ok).count();
    assert_eq!(
        failed, 0,
        "{failed} checks failed; see the FAIL lines above"
    );
}

/// Rank-`n` monomials `e^ε p^I` of degree at most `max`, enumerated directly.
fn monomials(n: usize, max: u32) -> Vec<ClassMonomial> {
    fn fill(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        let w = 4 * (i as u32 + 1);
        for k in 0..=left / w {
            cur.push(k);
            fill(i + 1, n, left - k * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for euler in [false, true] {
        let eul = if euler { 2 * n as u32 } else { 0 };
        if eul > max {
            continue;
        }
        let mut ps = Vec::new();
        fill(0, n, max - eul, &mut Vec::new(), &mut ps);
        out.extend(ps.into_iter().map(|p| ClassMonomial::new(euler, p)));
    }
    out
}

fn point(m: &ClassMonomial) -> TautPoly {
    TautPoly::generator(&TautGenerator::point(m.clone()))
}

/// The stabilisation map every sphere product must produce.
fn expected_stabilisation(n: usize) -> BTreeMap<TautGenerator, TautPoly> {
    let mut map = BTreeMap::new();
    for m in monomials(n, MAX_DEGREE + 2 * n as u32) {
        if m.degree() < 2 * n as u32 {
            continue;
        }
        let g = TautGenerator::kappa(m.clone());
        let mut img = TautPoly::generator(&g);
        if m.has_euler() {
            img = img.add(&point(&m.without_euler()).scale(&rat(2)));
        }
        map.insert(g, img);
    }
    for m in monomials(n, MAX_DEGREE) {
        if m.degree() > 0 {
            map.insert(TautGenerator::point(m.clone()), point(&m));
        }
    }
    map
}

fn sphere_product_map(a: usize, b: usize) -> GeneratorMap {
    connected_sum_hom(
        &product(&sphere(a).unwrap(), &sphere(b).unwrap()).unwrap(),
        MAX_DEGREE,
    )
    .unwrap()
}

const PAIRS: [(usize, usize); 4] = [(1, 1), (1, 2), (1, 3), (2, 2)];

fn compare_maps(
    got: &BTreeMap<TautGenerator, TautPoly>,
    want: &BTreeMap<TautGenerator, TautPoly>,
) -> Result<String, String> {
    for (g, w) in want {
        match got.get(g) {
            None => return Err(format!("missing generator {g}")),
            Some(img) if img != w => return Err(format!("{g} |-> {img}, expected {w}")),
            _ => {}
        }
    }
    if let Some(extra) = got.keys().find(|g| !want.contains_key(g)) {
        return Err(format!("unexpected generator {extra}"));
    }
    Ok(format!("{} generators", want.len()))
}

#[test]
fn stabilisation_map_on_sphere_products() {
    let results = PAIRS
        .iter()
        .map(|&(a, b)| {
            let g = sphere_product_map(a, b);
            let r = if g.point_class_status != PointClassStatus::Transported {
                Err(format!("{:?}", g.point_class_status))
            } else {
                compare_maps(&g.entries, &expected_stabilisation(a + b))
            };
            report(1, &format!("S^{}xS^{} map", 2 * a, 2 * b), r)
        })
        .collect();
    gate(results);
}

/// The listed `q_{a,b}`, as printed and in normal form (`e² = p_2`).
const TABLE: [(u32, u32, &str, &str); 9] = [
    (0, 1, "3", "3"),
    (1, 0, "3", "3"),
    (0, 2, "7p_1 - 7e", "7*p1 - 7*e"),
    (1, 1, "4p_1 - 4e", "4*p1 - 4*e"),
    (2, 0, "p_1-e", "p1 - e"),
    (
        0,
        3,
        "13(p_1^2 + e^2 -2 e p_1)",
        "13*p1^2 - 26*e*p1 + 13*p2",
    ),
    (1, 2, "6(p_1^2 + e^2 -2e p_1)", "6*p1^2 - 12*e*p1 + 6*p2"),
    (2, 1, "2(p_1^2 + e^2 - 2 e p_1)", "2*p1^2 - 4*e*p1 + 2*p2"),
    (3, 0, "p_1^2 + e^2 - 2 e p_1", "p1^2 - 2*e*p1 + p2"),
];

/// Turns the printed form into the class grammar: `13(p_1^2 - 2 e p_1)` →
/// `13*(p1^2 - 2*e*p1)`.
fn from_printed(s: &str) -> String {
    let mut out = String::new();
    let mut prev: Option<char> = None;
    for c in s.replace("p_", "p").chars().filter(|c| !c.is_whitespace()) {
        let starts_factor = c == 'e' || c == 'p' || c == '(';
        let ends_factor = matches!(prev, Some(p) if p.is_ascii_digit() || p == 'e' || p == ')');
        if starts_factor && ends_factor {
            out.push('*');
        }
        out.push(c);
        prev = Some(c);
    }
    out
}

fn cp2_monomial(a: u32, b: u32) -> CharClass {
    &CharClass::euler(2).pow(a) * &CharClass::pontryagin(2, 1).pow(b)
}

#[test]
fn projective_plane_table() {
    let cp2 = projective_space(2).unwrap();
    let results = TABLE
        .iter()
        .map(|&(a, b, printed, normal)| {
            let q = kappa_pullback(&cp2, &cp2_monomial(a, b)).unwrap();
            let listed = parse_class(&from_printed(printed), 2).unwrap();
            let r = if q != listed {
                Err(format!("got {q}, listed {listed}"))
            } else if q.to_string() != normal {
                Err(format!("renders as {q}, expected {normal}"))
            } else {
                Ok(normal.to_string())
            };
            report(2, &format!("q_{{{a},{b}}}"), r)
        })
        .collect();
    gate(results);
}

/// Dense bivariate integer polynomials, keyed by `(i, j)` for `x1^i x2^j`.
mod dense {
    use std::collections::BTreeMap;

    pub type Dense = BTreeMap<(u32, u32), i128>;

    fn clean(mut p: Dense) -> Dense {
        p.retain(|_, c| *c != 0);
        p
    }

    pub fn from(terms: &[((u32, u32), i128)]) -> Dense {
        let mut p = Dense::new();
        for &(k, c) in terms {
            *p.entry(k).or_default() += c;
        }
        clean(p)
    }

    pub fn add(a: &Dense, b: &Dense) -> Dense {
        let mut p = a.clone();
        for (k, c) in b {
            *p.entry(*k).or_default() += c;
        }
        clean(p)
    }

    pub fn mul(a: &Dense, b: &Dense) -> Dense {
        let mut p = Dense::new();
        for ((i, j), c) in a {
            for ((k, l), d) in b {
                *p.entry((i + k, j + l)).or_default() += c * d;
            }
        }
        clean(p)
    }

    pub fn pow(a: &Dense, k: u32) -> Dense {
        (0..k).fold(from(&[((0, 0), 1)]), |acc, _| mul(&acc, a))
    }

    /// Divides by `x1^2 x2^2`; `None` if some term is not divisible.
    fn shift(p: &Dense) -> Option<Dense> {
        p.iter()
            .map(|(&(i, j), &c)| (i >= 2 && j >= 2).then_some(((i - 2, j - 2), c)))
            .collect()
    }

    /// Synthetic division by `x1 - x2`, treating `p` as a polynomial in `x1`
    /// over `Z[x2]`; `None` on a nonzero remainder.
    fn div_difference(p: &Dense) -> Option<Dense> {
        let deg = p.keys().map(|k| k.0).max()?;
        let mut rows: Vec<BTreeMap<u32, i128>> = vec![BTreeMap::new(); deg as usize + 1];
        for (&(i, j), &c) in p {
            rows[i as usize].insert(j, c);
        }
        let times_x2 = |r: &BTreeMap<u32, i128>| r.iter().map(|(j, c)| (j + 1, *c)).collect();
        let sum = |a: &BTreeMap<u32, i128>, b: &BTreeMap<u32, i128>| {
            let mut s = a.clone();
            for (j, c) in b {
                *s.entry(*j).or_default() += c;
            }
            s.retain(|_, c| *c != 0);
            s
        };
        let mut quotient = vec![BTreeMap::new(); deg as usize];
        let mut carry = BTreeMap::new();
        for i in (1..=deg as usize).rev() {
            carry = sum(&rows[i], &times_x2(&carry));
            quotient[i - 1] = carry.clone();
        }
        if !sum(&rows[0], &times_x2(&carry)).is_empty() {
            return None;
        }
        let mut q = Dense::new();
        for (i, row) in quotient.into_iter().enumerate() {
            for (j, c) in row {
                q.insert((i as u32, j), c);
            }
        }
        Some(clean(q))
    }

    /// `Σ_j e_j^a p_j^b / e_j` over the three fixed points of `CP²`.
    /// The common denominator is `−x1² x2² (x1 − x2)²`.
    pub fn cp2_q(a: u32, b: u32) -> Dense {
        let x1x2 = from(&[((1, 1), 1)]);
        let pts = [
            (x1x2.clone(), from(&[((2, 0), 1), ((0, 2), 1)])),
            (
                from(&[((2, 0), 1), ((1, 1), -1)]),
                from(&[((2, 0), 2), ((1, 1), -2), ((0, 2), 1)]),
            ),
            (
                from(&[((0, 2), 1), ((1, 1), -1)]),
                from(&[((0, 2), 2), ((1, 1), -2), ((2, 0), 1)]),
            ),
        ];
        let mut numerator = Dense::new();
        for (j, (e, p)) in pts.iter().enumerate() {
            let mut t = mul(&pow(e, a), &pow(p, b));
            for (k, (other, _)) in pts.iter().enumerate() {
                if k != j {
                    t = mul(&t, other);
                }
            }
            numerator = add(&numerator, &t);
        }
        let negated: Dense = numerator.into_iter().map(|(k, c)| (k, -c)).collect();
        let q = shift(&negated).expect("divisible by x1^2 x2^2");
        let q = div_difference(&q).expect("divisible by x1 - x2");
        div_difference(&q).expect("divisible by (x1 - x2)^2")
    }
}

fn equals_dense(p: &MultiPoly, d: &dense::Dense) -> Result<(), String> {
    let mut lib = dense::Dense::new();
    for (e, c) in p.terms() {
        if !c.is_integer() {
            return Err(format!("non-integer coefficient in {p}"));
        }
        let c: i128 = c
            .to_integer()
            .try_into()
            .map_err(|_| "coefficient overflow")?;
        lib.insert((e.0[0], e.0[1]), c);
    }
    if &lib == d {
        Ok(())
    } else {
        Err(format!("{p} differs from oracle {d:?}"))
    }
}

#[test]
fn projective_plane_map() {
    let cp2 = projective_space(2).unwrap();
    let g = connected_sum_hom(&cp2, MAX_DEGREE).unwrap();
    let mut results = vec![report(
        3,
        "CP^2 point classes",
        match &g.point_class_status {
            PointClassStatus::Unavailable(why) => Ok(format!("unavailable: {why}")),
            s => Err(format!("{s:?}")),
        },
    )];
    let kappas: Vec<_> = monomials(2, MAX_DEGREE + 4)
        .into_iter()
        .filter(|m| m.degree() >= 4)
        .collect();
    let r = (|| {
        if g.entries.len() != kappas.len() {
            return Err(format!(
                "{} rows, expected {}",
                g.entries.len(),
                kappas.len()
            ));
        }
        for m in &kappas {
            let gen = TautGenerator::kappa(m.clone());
            let img = g.get(&gen).ok_or(format!("missing {gen}"))?;
            let rest = img
                .sub(&TautPoly::generator(&gen))
                .as_point_classes()
                .ok_or(format!("{gen} |-> {img} has stray kappas"))?;
            let (a, b) = (
                m.has_euler() as u32 + 2 * m.pontryagin_exponents()[1],
                m.pontryagin_exponents()[0],
            );
            let mut want = dense::cp2_q(a, b);
            if a % 2 == 1 {
                // 2 e^{a-1} p1^b = 2 (x1 x2)^{a-1} (x1² + x2²)^b
                let corr = dense::mul(
                    &dense::pow(&dense::from(&[((1, 1), 1)]), a - 1),
                    &dense::pow(&dense::from(&[((2, 0), 1), ((0, 2), 1)]), b),
                );
                let corr: dense::Dense = corr.into_iter().map(|(k, c)| (k, -2 * c)).collect();
                want = dense::add(&want, &corr);
            }
            equals_dense(&rest.expand(), &want).map_err(|e| format!("{gen}: {e}"))?;
        }
        Ok(format!(
            "{} kappa rows against the dense oracle",
            kappas.len()
        ))
    })();
    results.push(report(3, "CP^2 kappa rows", r));
    gate(results);
}

#[test]
fn sphere_lemma() {
    let results = (1..=4)
        .map(|n| {
            let s = sphere(n).unwrap();
            let r = (|| {
                let all = monomials(n, MAX_DEGREE);
                for m in &all {
                    let c = CharClass::from_monomial(m.clone(), Rational::one());
                    let want = if m.has_euler() {
                        CharClass::from_monomial(m.without_euler(), rat(2))
                    } else {
                        CharClass::zero(n)
                    };
                    let got = kappa_pullback(&s, &c).map_err(|e| e.to_string())?;
                    if got != want {
                        return Err(format!("{c} |-> {got}, expected {want}"));
                    }
                }
                let lib = verify_sphere_lemma(n, MAX_DEGREE).map_err(|e| e.to_string())?;
                if !lib.passed() || lib.checks.len() != all.len() {
                    return Err("library report disagrees".into());
                }
                Ok(format!("{} classes", all.len()))
            })();
            report(4, &format!("S^{}", 2 * n), r)
        })
        .collect();
    gate(results);
}

#[test]
fn fibre_restriction() {
    let results = PAIRS
        .iter()
        .map(|&(a, b)| {
            let n = a + b;
            let table = fiber_restriction(&sphere_product_map(a, b));
            let mut want = BTreeMap::new();
            for (gen, _) in expected_stabilisation(n) {
                let img = match gen.kind {
                    GeneratorKind::PointClass => TautPoly::generator(&gen),
                    GeneratorKind::Kappa => {
                        let mut img = if gen.monomial.has_euler() {
                            point(&gen.monomial.without_euler()).scale(&rat(2))
                        } else {
                            TautPoly::zero(n)
                        };
                        // degree-0 kappas are characteristic numbers of N and stay
                        if gen.degree() == 0 {
                            img = img.add(&TautPoly::generator(&gen));
                        }
                        img
                    }
                };
                want.insert(gen, img);
            }
            report(
                5,
                &format!("S^{}xS^{} restricted to the fibre", 2 * a, 2 * b),
                compare_maps(&table.rows, &want),
            )
        })
        .collect();
    gate(results);
}

fn all_builtins() -> Vec<(String, i64)> {
    let mut v = Vec::new();
    for k in 1..=MAX_BUILTIN_RANK {
        v.push((format!("s{}", 2 * k), 2));
        v.push((format!("cp{k}"), k as i64 + 1));
    }
    for a in 1..MAX_BUILTIN_RANK {
        for b in a..=MAX_BUILTIN_RANK - a {
            v.push((format!("s{}xs{}", 2 * a, 2 * b), 4));
        }
    }
    v
}

#[test]
fn euler_characteristics() {
    let results = all_builtins()
        .into_iter()
        .map(|(name, chi)| {
            let m = builtin(&name).unwrap();
            let r = (|| {
                let got = euler_characteristic(&m).map_err(|e| e.to_string())?;
                if got != rat(chi) {
                    return Err(format!("chi = {got}, expected {chi}"));
                }
                let inv =
                    fibre_integrate(&m, &CharClass::one(m.rank())).map_err(|e| e.to_string())?;
                if !inv.is_zero() {
                    return Err(format!("sum of 1/e_j = {inv}"));
                }
                Ok(format!("chi = {chi}, sum of 1/e_j = 0"))
            })();
            report(6, &name, r)
        })
        .collect();
    gate(results);
}

/// `∫ e·p1` over `CP³`, computed independently with a computer-algebra system.
const CP3_EP1: &str = "6*x1^2 - 4*x1*x2 - 4*x1*x3 + 6*x2^2 - 4*x2*x3 + 6*x3^2";

#[test]
fn property_suites() {
    let mut results = Vec::new();

    // an independent sampler; the library's own sampler runs below
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let r = (|| {
        for _ in 0..500 {
            let n = rng.gen_range(1..=4);
            let basis = monomials(n, 20);
            let mut c = CharClass::zero(n);
            for _ in 0..rng.gen_range(1..=6) {
                let m = basis[rng.gen_range(0..basis.len())].clone();
                c.add_term(
                    m,
                    Rational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=9).into()),
                );
            }
            let back = to_pe_basis(&c.expand(), WeylContext::new(n)).map_err(|e| e.to_string())?;
            if back != c {
                return Err(format!("{c} came back as {back}"));
            }
        }
        Ok("500 classes".into())
    })();
    results.push(report(7, "roundtrip (independent sampler)", r));

    let cp3 = builtin("cp3").unwrap();
    let ep1 = parse_class("e*p1", 3).unwrap();
    let obstruction = fibre_integrate(&cp3, &ep1).map(|f| f.to_string()) == Ok(CP3_EP1.to_string())
        && kappa_pullback(&cp3, &ep1).is_err();

    for c in verify::property_checks(0) {
        println!("{}", c.line());
        if c.name == "cp3 basis rewritings" {
            // Known and recorded: several CP³ integrals are not Weyl(D_3)
            // invariant, so they have no basis form to compare against.
            // The gate holds only while the obstruction is exactly that one.
            results.push(!c.passed && obstruction && c.detail.starts_with("10 of 15"));
        } else {
            results.push(c.passed);
        }
    }

    let r = (|| {
        for (a, b) in PAIRS {
            let g = sphere_product_map(a, b);
            let h = conjugated_hom(&g).map_err(|e| e.to_string())?;
            if conjugated_hom(&h).map_err(|e| e.to_string())? != g {
                return Err(format!("S^{}xS^{}", 2 * a, 2 * b));
            }
            for m in monomials(a + b, MAX_DEGREE)
                .into_iter()
                .filter(|m| m.degree() > 0)
            {
                let c = CharClass::from_monomial(m.clone(), Rational::one());
                let img = h.get(&TautGenerator::point(m)).unwrap();
                if img.as_point_classes() != Some(c.conjugate()) {
                    return Err(format!("{c} |-> {img} under the conjugated map"));
                }
            }
        }
        Ok("conjugated maps send c to its conjugate and square to the identity".into())
    })();
    results.push(report(7, "conjugated map", r));
    gate(results);
}

#[test]
fn projective_plane_beyond_the_table() {
    let cp2 = projective_space(2).unwrap();
    let results = [(4, 0), (2, 2)]
        .into_iter()
        .map(|(a, b)| {
            let r = (|| {
                let q = kappa_pullback(&cp2, &cp2_monomial(a, b)).map_err(|e| e.to_string())?;
                let oracle = dense::cp2_q(a, b);
                equals_dense(&q.expand(), &oracle)?;
                let mixed = oracle.keys().find(|(i, j)| i % 2 != j % 2);
                if let Some(k) = mixed {
                    return Err(format!("monomial {k:?} mixes parities"));
                }
                Ok(q.to_string())
            })();
            report(8, &format!("q_{{{a},{b}}}"), r)
        })
        .collect();
    gate(results);
}

#[test]
fn full_replay_matches() {
    // the CLI's verify-paper report; only the recorded CP³ obstruction fails
    let checks = verify::run_all(0);
    let failing: Vec<_> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    for c in &checks {
        println!("{}", c.line());
    }
    assert_eq!(failing, ["cp3 basis rewritings"]);
}
