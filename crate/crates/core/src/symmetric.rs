//! Invariants of the Weyl group of `SO(2n)` acting on `Q[x_1, …, x_n]`, and
//! rewriting of invariants in terms of `p_i = e_i(x_1², …, x_n²)` and
//! `e = x_1⋯x_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::classes::{CharClass, ClassMonomial};
use crate::poly::{Exponents, MultiPoly, Rational};
use crate::Error;

/// The Weyl group of `D_n` acting on `n` torus coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeylContext {
    n: usize,
}

impl WeylContext {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "torus rank must be at least 1");
        WeylContext { n }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Generators: adjacent transpositions and `(x_1, x_2) ↦ (−x_1, −x_2)`.
    /// Empty for `n = 1`, where the group is trivial.
    pub fn generators(&self) -> Vec<WeylGenerator> {
        if self.n < 2 {
            return Vec::new();
        }
        let mut gens: Vec<_> = (0..self.n - 1).map(WeylGenerator::Transposition).collect();
        gens.push(WeylGenerator::DoubleSignFlip);
        gens
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylGenerator {
    /// Swaps `x_{i+1}` and `x_{i+2}` (zero-based `i`).
    Transposition(usize),
    DoubleSignFlip,
}

impl WeylGenerator {
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let n = f.nvars();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut signs = vec![1i8; n];
        match *self {
            WeylGenerator::Transposition(i) => perm.swap(i, i + 1),
            WeylGenerator::DoubleSignFlip => {
                signs[0] = -1;
                signs[1] = -1;
            }
        }
        f.signed_permute(&perm, &signs)
    }
}

impl fmt::Display for WeylGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylGenerator::Transposition(i) => write!(f, "x{} <-> x{}", i + 1, i + 2),
            WeylGenerator::DoubleSignFlip => write!(f, "(x1, x2) -> (-x1, -x2)"),
        }
    }
}

/// `e_k(args)`, with `e_0 = 1`.
pub fn elementary_symmetric(k: usize, args: &[MultiPoly]) -> Result<MultiPoly, Error> {
    if k > args.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            rank: args.len(),
        });
    }
    let nvars = args.first().map_or(0, MultiPoly::nvars);
    let mut es = vec![MultiPoly::one(nvars)];
    es.extend((0..k).map(|_| MultiPoly::zero(nvars)));
    for (count, a) in args.iter().enumerate() {
        for j in (1..=k.min(count + 1)).rev() {
            let inc = &es[j - 1] * a;
            es[j] = &es[j] + &inc;
        }
    }
    Ok(es.swap_remove(k))
}

/// First generator that moves `f`, if any.
pub fn invariance_witness(f: &MultiPoly, ctx: WeylContext) -> Option<WeylGenerator> {
    ctx.generators().into_iter().find(|g| g.apply(f) != *f)
}

pub fn is_weyl_invariant(f: &MultiPoly, ctx: WeylContext) -> bool {
    invariance_witness(f, ctx).is_none()
}

/// Rewrites a Weyl-invariant polynomial in the `(e, p)` basis.
pub fn to_pe_basis(f: &MultiPoly, ctx: WeylContext) -> Result<CharClass, Error> {
    let n = ctx.rank();
    if f.nvars() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: f.nvars(),
        });
    }
    if n == 1 {
        let mut out = CharClass::zero(1);
        for (e, c) in f.terms() {
            let k = e.0[0];
            out.add_term(ClassMonomial::new(k % 2 == 1, vec![k / 2]), c.clone());
        }
        return Ok(out);
    }
    if let Some(witness) = invariance_witness(f, ctx) {
        return Err(Error::NotInvariant { witness });
    }

    let mut even = MultiPoly::zero(n);
    let mut odd = MultiPoly::zero(n);
    for (e, c) in f.terms() {
        if e.0.iter().all(|k| k % 2 == 0) {
            even.add_term(halve(e, 0), c.clone());
        } else if e.0.iter().all(|k| k % 2 == 1) {
            odd.add_term(halve(e, 1), c.clone());
        } else {
            // unreachable for invariant input
            return Err(Error::NotInvariant {
                witness: WeylGenerator::DoubleSignFlip,
            });
        }
    }

    let mut out = CharClass::zero(n);
    for (part, euler) in [(even, false), (odd, true)] {
        let reduced = symmetric_reduce(&part)?;
        for (e, c) in reduced.terms() {
            out.add_term(ClassMonomial::new(euler, e.0.clone()), c.clone());
        }
    }
    Ok(out)
}

fn halve(e: &Exponents, shift: u32) -> Exponents {
    Exponents(e.0.iter().map(|k| (k - shift) / 2).collect())
}

/// Writes a symmetric polynomial in `y_1…y_n` as a polynomial in the
/// elementary symmetric polynomials `E_1…E_n` (returned in `n` variables).
pub fn symmetric_reduce(h: &MultiPoly) -> Result<MultiPoly, Error> {
    let n = h.nvars();
    if let Some(i) =
        (0..n.saturating_sub(1)).find(|&i| WeylGenerator::Transposition(i).apply(h) != *h)
    {
        return Err(Error::NotSymmetric { transposition: i });
    }
    let ys: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let elementary: Vec<MultiPoly> = (1..=n)
        .map(|k| elementary_symmetric(k, &ys).expect("k ≤ n"))
        .collect();
    let mut powers: Vec<Vec<MultiPoly>> = elementary
        .iter()
        .map(|e| vec![MultiPoly::one(n), e.clone()])
        .collect();

    // Vec<u32> orders lexicographically, so the last key is the lex-leading monomial.
    let mut rest: BTreeMap<Vec<u32>, Rational> =
        h.terms().map(|(e, c)| (e.0.clone(), c.clone())).collect();
    let mut out = MultiPoly::zero(n);
    while let Some((lead, c)) = rest.pop_last() {
        let mut target = vec![0u32; n];
        for i in 0..n {
            let next = if i + 1 < n { lead[i + 1] } else { 0 };
            target[i] = lead[i] - next;
        }
        let mut product = MultiPoly::one(n);
        for (i, &k) in target.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let cache = &mut powers[i];
            while cache.len() <= k as usize {
                let next = &cache[cache.len() - 1] * &cache[1];
                cache.push(next);
            }
            product = &product * &cache[k as usize];
        }
        // product is monic in lex with leading monomial `lead`
        for (e, pc) in product.terms() {
            if e.0 == lead {
                continue;
            }
            let slot = rest.entry(e.0.clone()).or_insert_with(Rational::zero);
            *slot -= pc * &c;
            if slot.is_zero() {
                rest.remove(&e.0);
            }
        }
        out.add_term(Exponents(target), c);
    }
    Ok(out)
}
