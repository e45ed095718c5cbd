//! Fibre integration over a torus manifold with isolated fixed points:
//! `∫ t = Σ_j t|_j / e_j`, computed over the common denominator `Π_j e_j`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classes::{monomial_basis, CharClass, OrientedRep, RepImages};
use crate::poly::{MultiPoly, PolyError, Rational};
use crate::symmetric::{to_pe_basis, WeylContext};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub label: String,
    pub rep: OrientedRep,
}

impl FixedPoint {
    pub fn new(label: impl Into<String>, rep: OrientedRep) -> Self {
        FixedPoint {
            label: label.into(),
            rep,
        }
    }
}

/// A `2n`-manifold with an action of the rank-`n` torus, recorded by its
/// fixed-point data. `m0` is the chart point, `m1` the retained point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusManifold {
    name: String,
    rank: usize,
    fixed_points: Vec<FixedPoint>,
    m0: usize,
    m1: Option<usize>,
}

impl TorusManifold {
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        fixed_points: Vec<FixedPoint>,
        m0: usize,
        m1: Option<usize>,
    ) -> Result<Self, Error> {
        let bad = |msg: String| Err(Error::InvalidManifold(msg));
        if rank == 0 {
            return bad("rank must be at least 1".into());
        }
        if fixed_points.is_empty() {
            return bad("no fixed points".into());
        }
        for fp in &fixed_points {
            if fp.rep.rank() != rank || fp.rep.weights.iter().any(|w| w.len() != rank) {
                return bad(format!(
                    "fixed point {} needs {rank} weights of length {rank}",
                    fp.label
                ));
            }
            if fp.rep.sign != 1 && fp.rep.sign != -1 {
                return bad(format!("fixed point {} has sign {}", fp.label, fp.rep.sign));
            }
        }
        if m0 >= fixed_points.len() {
            return bad(format!("m0 = {m0} out of range"));
        }
        match m1 {
            Some(i) if i >= fixed_points.len() => return bad(format!("m1 = {i} out of range")),
            Some(i) if i == m0 => return bad("m0 and m1 coincide".into()),
            _ => {}
        }
        Ok(TorusManifold {
            name: name.into(),
            rank,
            fixed_points,
            m0,
            m1,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dimension(&self) -> usize {
        2 * self.rank
    }

    pub fn fixed_points(&self) -> &[FixedPoint] {
        &self.fixed_points
    }

    pub fn m0(&self) -> usize {
        self.m0
    }

    pub fn m1(&self) -> Option<usize> {
        self.m1
    }

    pub fn chart_point(&self) -> &FixedPoint {
        &self.fixed_points[self.m0]
    }

    pub fn retained_point(&self) -> Option<&FixedPoint> {
        self.m1.map(|i| &self.fixed_points[i])
    }

    pub(crate) fn check_isolated(&self) -> Result<(), Error> {
        for fp in &self.fixed_points {
            if let Some(weight) = fp.rep.zero_weight() {
                return Err(Error::NonIsolatedFixedPoint {
                    label: fp.label.clone(),
                    weight,
                });
            }
        }
        Ok(())
    }
}

/// Coordinates in which the chart representation at `m0` is standard:
/// `y_i = w_i(x)` for the weights `w_i` at `m0`.
#[derive(Debug, Clone)]
pub struct ChartFrame {
    n: usize,
    /// `x = inverse · y`; `None` when the chart weights are already `x_1…x_n`.
    inverse: Option<Vec<Vec<Rational>>>,
    sign: i8,
}

impl ChartFrame {
    pub fn new(rep: &OrientedRep) -> Result<Self, Error> {
        let n = rep.rank();
        let sign = rep.sign;
        if rep.weights == OrientedRep::standard(n).weights {
            return Ok(ChartFrame {
                n,
                inverse: None,
                sign,
            });
        }
        let matrix: Vec<Vec<Rational>> = rep
            .weights
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&c| Rational::from_integer(c.into()))
                    .collect()
            })
            .collect();
        let inverse = invert(matrix).ok_or(Error::DegenerateChart)?;
        Ok(ChartFrame {
            n,
            inverse: Some(inverse),
            sign,
        })
    }

    /// Expresses a polynomial in `x` as a class `c` with `c|_{m0} = f`.
    pub fn rewrite(&self, f: &MultiPoly) -> Result<CharClass, Error> {
        let in_chart = match &self.inverse {
            None => f.clone(),
            Some(inv) => {
                let images: Vec<MultiPoly> = inv
                    .iter()
                    .map(|row| {
                        let mut p = MultiPoly::zero(self.n);
                        for (i, c) in row.iter().enumerate() {
                            p = &p + &MultiPoly::var(self.n, i).scale(c);
                        }
                        p
                    })
                    .collect();
                f.substitute(&images)?
            }
        };
        let c = to_pe_basis(&in_chart, WeylContext::new(self.n))?;
        Ok(if self.sign < 0 { c.conjugate() } else { c })
    }
}

fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (pa, pi) = (a[col][j].clone(), inv[col][j].clone());
                a[r][j] -= &f * pa;
                inv[r][j] -= &f * pi;
            }
        }
    }
    Some(inv)
}

/// `Σ_j c|_j / e_j` as an exact polynomial in the torus variables.
pub fn fibre_integrate(m: &TorusManifold, c: &CharClass) -> Result<MultiPoly, Error> {
    if c.rank() != m.rank() {
        return Err(Error::RankMismatch {
            expected: m.rank(),
            got: c.rank(),
        });
    }
    m.check_isolated()?;
    let n = m.rank();
    let mut restricted = Vec::with_capacity(m.fixed_points.len());
    let mut eulers = Vec::with_capacity(m.fixed_points.len());
    for fp in &m.fixed_points {
        let mut images = RepImages::new(&fp.rep);
        restricted.push(images.eval(c));
        eulers.push(images.euler().clone());
    }

    // Horner form of Σ_j c|_j Π_{k≠j} e_k: after step j the accumulator is
    // Σ_{i≤j} c|_i Π_{k≤j, k≠i} e_k, so only large-by-small products occur.
    let mut numerator = MultiPoly::zero(n);
    let mut denominator = MultiPoly::one(n);
    for (t, e) in restricted.iter().zip(&eulers) {
        numerator = &(&numerator * e) + &(t * &denominator);
        denominator = &denominator * e;
    }
    match numerator.exact_div(&denominator) {
        Ok(q) => Ok(q),
        Err(PolyError::NotDivisible { remainder, .. }) => Err(Error::NotPolynomial { remainder }),
        Err(e) => Err(e.into()),
    }
}

/// The class `q_c` with `q_c|_{m0} = ∫ c`, in the `(e, p)` basis of the
/// chart representation at `m0`.
pub fn kappa_pullback(m: &TorusManifold, c: &CharClass) -> Result<CharClass, Error> {
    let integral = fibre_integrate(m, c)?;
    ChartFrame::new(&m.chart_point().rep)?.rewrite(&integral)
}

/// `∫ e(T)`, which must equal the number of fixed points.
pub fn euler_characteristic(m: &TorusManifold) -> Result<Rational, Error> {
    let integral = fibre_integrate(m, &CharClass::euler(m.rank()))?;
    Ok(integral.constant_term())
}

#[derive(Debug, Clone)]
pub struct LemmaCheck {
    pub class: CharClass,
    pub expected: CharClass,
    pub actual: Result<CharClass, Error>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.actual.as_ref() == Ok(&self.expected)
    }
}

#[derive(Debug, Clone)]
pub struct SphereLemmaReport {
    pub rank: usize,
    pub max_degree: u32,
    pub checks: Vec<LemmaCheck>,
}

impl SphereLemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LemmaCheck::passed)
    }
}

/// Over the two-point `S^{2n}` data: `κ_{p_I} ↦ 0` and `κ_{e·p_I} ↦ 2p_I`
/// for every basis monomial of degree at most `max_degree`.
pub fn verify_sphere_lemma(n: usize, max_degree: u32) -> Result<SphereLemmaReport, Error> {
    let sphere = crate::manifolds::sphere(n)?;
    let checks = monomial_basis(n, max_degree)
        .into_iter()
        .map(|m| {
            let class = CharClass::from_monomial(m.clone(), Rational::one());
            let expected = if m.has_euler() {
                CharClass::from_monomial(m.without_euler(), Rational::from_integer(2.into()))
            } else {
                CharClass::zero(n)
            };
            let actual = kappa_pullback(&sphere, &class);
            LemmaCheck {
                class,
                expected,
                actual,
            }
        })
        .collect();
    Ok(SphereLemmaReport {
        rank: n,
        max_degree,
        checks,
    })
}
