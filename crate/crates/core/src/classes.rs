//! The rational cohomology ring of `BSO(2n)` in `p_I` / `e·p_I` normal form,
//! and evaluation of classes on oriented torus representations.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{fmt_rational, rat, MultiPoly, Rational};
use crate::symmetric::elementary_symmetric;

/// A normal-form monomial `e^ε · p_1^{a_1} ⋯ p_n^{a_n}` with `ε ∈ {0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassMonomial {
    euler: bool,
    p: Vec<u32>,
}

impl ClassMonomial {
    pub fn one(n: usize) -> Self {
        ClassMonomial {
            euler: false,
            p: vec![0; n],
        }
    }

    pub fn new(euler: bool, p: Vec<u32>) -> Self {
        ClassMonomial { euler, p }
    }

    pub fn rank(&self) -> usize {
        self.p.len()
    }

    pub fn has_euler(&self) -> bool {
        self.euler
    }

    pub fn pontryagin_exponents(&self) -> &[u32] {
        &self.p
    }

    /// Topological degree: `|e| = 2n`, `|p_i| = 4i`.
    pub fn degree(&self) -> u32 {
        let n = self.p.len() as u32;
        let pd: u32 = self
            .p
            .iter()
            .enumerate()
            .map(|(i, &k)| 4 * (i as u32 + 1) * k)
            .sum();
        pd + if self.euler { 2 * n } else { 0 }
    }

    /// The monomial with the Euler factor removed (`e·p_I ↦ p_I`).
    pub fn without_euler(&self) -> ClassMonomial {
        ClassMonomial {
            euler: false,
            p: self.p.clone(),
        }
    }

    pub fn is_one(&self) -> bool {
        !self.euler && self.p.iter().all(|&k| k == 0)
    }

    fn mul(&self, other: &ClassMonomial) -> ClassMonomial {
        let mut p: Vec<u32> = self.p.iter().zip(&other.p).map(|(a, b)| a + b).collect();
        let euler = match (self.euler, other.euler) {
            (true, true) => {
                // e² = p_n
                if let Some(last) = p.last_mut() {
                    *last += 1;
                }
                false
            }
            (a, b) => a || b,
        };
        ClassMonomial { euler, p }
    }

    pub fn render(&self, notation: Notation) -> String {
        let mut parts = Vec::new();
        if self.euler {
            parts.push("e".to_string());
        }
        for (i, &k) in self.p.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let idx = i + 1;
            parts.push(match notation {
                Notation::Text if k == 1 => format!("p{idx}"),
                Notation::Text => format!("p{idx}^{k}"),
                Notation::Latex => {
                    let base = if idx < 10 {
                        format!("p_{idx}")
                    } else {
                        format!("p_{{{idx}}}")
                    };
                    match k {
                        1 => base,
                        2..=9 => format!("{base}^{k}"),
                        _ => format!("{base}^{{{k}}}"),
                    }
                }
            });
        }
        if parts.is_empty() {
            return "1".to_string();
        }
        match notation {
            Notation::Text => parts.join("*"),
            Notation::Latex => parts.concat(),
        }
    }
}

impl Ord for ClassMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| Reverse(&self.p).cmp(&Reverse(&other.p)))
            .then_with(|| self.euler.cmp(&other.euler))
    }
}

impl PartialOrd for ClassMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    #[default]
    Text,
    Latex,
}

/// Renders `Σ c_m · m` with terms in descending degree. Shared by every
/// polynomial-like type that prints in the `e`, `p_i` alphabet.
pub(crate) fn render_sum<'a, I>(terms: I, notation: Notation) -> String
where
    I: IntoIterator<Item = (String, &'a Rational)>,
{
    let mut out = String::new();
    for (i, (mono, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono == "1" {
            out.push_str(&render_coeff(&abs, notation));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&render_coeff(&abs, notation));
            if notation == Notation::Text {
                out.push('*');
            }
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_coeff(q: &Rational, notation: Notation) -> String {
    match notation {
        Notation::Text => fmt_rational(q),
        Notation::Latex if q.denom().is_one() => q.numer().to_string(),
        Notation::Latex => format!("\\tfrac{{{}}}{{{}}}", q.numer(), q.denom()),
    }
}

/// An element of `H*(BSO(2n); Q)` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharClass {
    n: usize,
    terms: BTreeMap<ClassMonomial, Rational>,
}

impl CharClass {
    pub fn zero(n: usize) -> Self {
        CharClass {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_monomial(ClassMonomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn from_monomial(m: ClassMonomial, c: Rational) -> Self {
        let mut out = CharClass::zero(m.rank());
        out.add_term(m, c);
        out
    }

    pub fn euler(n: usize) -> Self {
        Self::from_monomial(ClassMonomial::new(true, vec![0; n]), Rational::one())
    }

    /// `p_i` for `1 ≤ i ≤ n`.
    pub fn pontryagin(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "p_{i} out of range for rank {n}");
        let mut p = vec![0; n];
        p[i - 1] = 1;
        Self::from_monomial(ClassMonomial::new(false, p), Rational::one())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ClassMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ClassMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The single monomial of a coefficient-one monomial class.
    pub fn as_monomial(&self) -> Option<&ClassMonomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: ClassMonomial, c: Rational) {
        assert_eq!(m.rank(), self.n, "class rank mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> CharClass {
        let mut out = CharClass::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> CharClass {
        (0..k).fold(CharClass::one(self.n), |acc, _| &acc * self)
    }

    /// Degree of a homogeneous class (`Some(0)` for zero), `None` otherwise.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(ClassMonomial::degree);
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|x| x == d).then_some(d),
        }
    }

    /// The orientation-reversal automorphism: `e ↦ −e`, `p_i ↦ p_i`.
    pub fn conjugate(&self) -> CharClass {
        CharClass {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), if m.euler { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Substitutes `e = x_1⋯x_n`, `p_i = e_i(x_1², …, x_n²)`.
    pub fn expand(&self) -> MultiPoly {
        eval_class(self, &OrientedRep::standard(self.n))
    }

    pub fn render(&self, notation: Notation) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| Reverse(m.degree()));
        render_sum(
            terms.into_iter().map(|(m, c)| (m.render(notation), c)),
            notation,
        )
    }
}

impl Add for &CharClass {
    type Output = CharClass;
    fn add(self, rhs: &CharClass) -> CharClass {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CharClass {
    type Output = CharClass;
    fn sub(self, rhs: &CharClass) -> CharClass {
        self + &(-rhs)
    }
}

impl Neg for &CharClass {
    type Output = CharClass;
    fn neg(self) -> CharClass {
        CharClass {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &CharClass {
    type Output = CharClass;
    fn mul(self, rhs: &CharClass) -> CharClass {
        assert_eq!(self.n, rhs.n, "class rank mismatch");
        let mut out = CharClass::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Text))
    }
}

/// A `2n`-dimensional oriented representation of the rank-`n` torus, given by
/// its `n` weights (integer vectors of length `n`) and an orientation sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedRep {
    pub weights: Vec<Vec<i64>>,
    pub sign: i8,
}

impl OrientedRep {
    pub fn new(weights: Vec<Vec<i64>>, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "orientation sign must be ±1");
        OrientedRep { weights, sign }
    }

    /// Weights `x_1, …, x_n` with positive orientation.
    pub fn standard(n: usize) -> Self {
        let weights = (0..n)
            .map(|i| {
                let mut w = vec![0; n];
                w[i] = 1;
                w
            })
            .collect();
        OrientedRep { weights, sign: 1 }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn reversed(&self) -> Self {
        OrientedRep {
            weights: self.weights.clone(),
            sign: -self.sign,
        }
    }

    /// Index of the first zero weight, if any.
    pub fn zero_weight(&self) -> Option<usize> {
        self.weights.iter().position(|w| w.iter().all(|&c| c == 0))
    }

    pub fn is_isolated(&self) -> bool {
        self.zero_weight().is_none()
    }

    fn linear_forms(&self) -> Vec<MultiPoly> {
        self.weights.iter().map(|w| MultiPoly::linear(w)).collect()
    }
}

/// `sign · Π w_j`, the equivariant Euler class. Zero iff some weight vanishes.
pub fn euler_of_rep(rep: &OrientedRep) -> MultiPoly {
    let n = rep.rank();
    let prod = rep
        .linear_forms()
        .iter()
        .fold(MultiPoly::one(n), |acc, l| &acc * l);
    prod.scale(&rat(rep.sign as i64))
}

/// `p_i = e_i(w_1², …, w_n²)`, independent of orientation.
pub fn pontryagin_of_rep(rep: &OrientedRep, i: usize) -> Result<MultiPoly, crate::Error> {
    let squares: Vec<MultiPoly> = rep.linear_forms().iter().map(|l| l * l).collect();
    if i == 0 || i > rep.rank() {
        return Err(crate::Error::IndexOutOfRange {
            index: i,
            rank: rep.rank(),
        });
    }
    elementary_symmetric(i, &squares)
}

/// Cached images of `e` and `p_i` under restriction to one representation.
pub(crate) struct RepImages {
    euler: Vec<MultiPoly>,
    pont: Vec<Vec<MultiPoly>>,
    n: usize,
}

impl RepImages {
    pub(crate) fn new(rep: &OrientedRep) -> Self {
        let n = rep.rank();
        let pont = (1..=n)
            .map(|i| {
                vec![
                    MultiPoly::one(n),
                    pontryagin_of_rep(rep, i).expect("index in range"),
                ]
            })
            .collect();
        RepImages {
            euler: vec![MultiPoly::one(n), euler_of_rep(rep)],
            pont,
            n,
        }
    }

    pub(crate) fn euler(&self) -> &MultiPoly {
        &self.euler[1]
    }

    fn power(cache: &mut Vec<MultiPoly>, k: usize) -> &MultiPoly {
        while cache.len() <= k {
            let next = &cache[cache.len() - 1] * &cache[1];
            cache.push(next);
        }
        &cache[k]
    }

    pub(crate) fn eval(&mut self, c: &CharClass) -> MultiPoly {
        assert_eq!(c.rank(), self.n, "class and representation ranks differ");
        let mut out = MultiPoly::zero(self.n);
        for (m, coeff) in c.terms() {
            let mut term = MultiPoly::constant(self.n, coeff.clone());
            if m.euler {
                term = &term * &self.euler[1];
            }
            for (i, &k) in m.p.iter().enumerate() {
                if k > 0 {
                    term = &term * Self::power(&mut self.pont[i], k as usize);
                }
            }
            out = &out + &term;
        }
        out
    }
}

/// Restricts a class to a representation: `e ↦ e(rep)`, `p_i ↦ p_i(rep)`.
pub fn eval_class(c: &CharClass, rep: &OrientedRep) -> MultiPoly {
    RepImages::new(rep).eval(c)
}

/// Every normal-form monomial `p_I`, `e·p_I` of degree at most `max_degree`,
/// in ascending monomial order.
pub fn monomial_basis(n: usize, max_degree: u32) -> Vec<ClassMonomial> {
    fn fill(n: usize, i: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(current.clone());
            return;
        }
        let step = 4 * (i as u32 + 1);
        let mut k = 0;
        while k * step <= budget {
            current[i] = k;
            fill(n, i + 1, budget - k * step, current, out);
            k += 1;
        }
        current[i] = 0;
    }
    let mut exps = Vec::new();
    fill(n, 0, max_degree, &mut vec![0; n], &mut exps);
    let mut out: Vec<ClassMonomial> = Vec::new();
    for p in exps {
        let plain = ClassMonomial::new(false, p.clone());
        let with_e = ClassMonomial::new(true, p);
        if with_e.degree() <= max_degree {
            out.push(with_e);
        }
        out.push(plain);
    }
    out.sort();
    out
}
