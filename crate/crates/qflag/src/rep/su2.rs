//! The fundamental *-representation of the rank-1 function algebra on a
//! truncated Fock space, and exact expansion of functionals in the monomial
//! basis of the four band generators.
//!
//! Band conventions, with 0 < q < 1:
//!   π(L_{++}) e_j = √(1−q^{2j}) e_{j−1}   (e_0 ↦ 0)
//!   π(L_{+-}) e_j = −q^{j+1} e_j
//!   π(L_{-+}) e_j = q^{j} e_j
//!   π(L_{--}) e_j = √(1−q^{2(j+1)}) e_{j+1}
//!
//! In terms of the exact matrix coefficients c_{u,v} of the two-dimensional
//! module (u, v ∈ {0 = highest, 1 = lowest}), the dictionary compatible with
//! our coproduct and star conventions is
//!   L_{++} = c_{1,1},  L_{--} = c_{0,0},  L_{+-} = −c_{1,0},  L_{-+} = −c_{0,1}.
//! With it the band formulas define a *-homomorphism: the exact relations
//! c_{0,0}c_{1,1} − q^{-1}c_{0,1}c_{1,0} = 1, c_{1,0}^* = −q·c_{0,1}, and the
//! q-commutations all map to identities of the band operators.

use super::band::{C64, TruncOp};
use crate::funalg::{Algebra, FunElem, GenOp};
use crate::rat::Q;
use crate::rootsys::{build_root_system, CartanType, Weight};
use crate::{Error, Result};
use num::One;
use std::cell::RefCell;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SU2Gen {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

/// The four displayed band formulas on a truncation of size n ≥ 2.
pub fn pi_q_generator(gen: SU2Gen, q: f64, n: usize) -> Result<TruncOp> {
    if n < 2 {
        return Err(Error::Config("truncation must have at least two levels".into()));
    }
    let op = match gen {
        SU2Gen::PlusPlus => TruncOp::single(n, -1, |j| {
            C64::new((1.0 - q.powi(2 * j as i32)).sqrt(), 0.0)
        }),
        SU2Gen::PlusMinus => TruncOp::single(n, 0, |j| C64::new(-q.powi(j as i32 + 1), 0.0)),
        SU2Gen::MinusPlus => TruncOp::single(n, 0, |j| C64::new(q.powi(j as i32), 0.0)),
        SU2Gen::MinusMinus => TruncOp::single(n, 1, |j| {
            C64::new((1.0 - q.powi(2 * (j as i32 + 1))).sqrt(), 0.0)
        }),
    };
    Ok(op)
}

/// A basis monomial L_s^α · L_{-+}^β · L_{+-}^γ with s = L_{--} (lowering)
/// or L_{++} (raising); α = 0 is canonicalized to lowering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub lowering: bool,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl Monomial {
    pub fn new(lowering: bool, alpha: usize, beta: usize, gamma: usize) -> Monomial {
        Monomial { lowering: lowering || alpha == 0, alpha, beta, gamma }
    }
}

/// Band image of a monomial: a single shifted diagonal.
pub fn pi_q_monomial(m: &Monomial, q: f64, n: usize) -> Result<TruncOp> {
    if n < 2 {
        return Err(Error::Config("truncation must have at least two levels".into()));
    }
    let shift = if m.lowering { m.alpha as i64 } else { -(m.alpha as i64) };
    let (alpha, beta, gamma, lowering) = (m.alpha, m.beta, m.gamma, m.lowering);
    Ok(TruncOp::single(n, shift, move |j| {
        let mut v = q.powi((j * beta) as i32) * (-q.powi(j as i32 + 1)).powi(gamma as i32);
        if lowering {
            for s in 1..=alpha {
                v *= (1.0 - q.powi(2 * (j + s) as i32)).sqrt();
            }
        } else {
            if j < alpha {
                return C64::default();
            }
            for s in 0..alpha {
                v *= (1.0 - q.powi(2 * (j - s) as i32)).sqrt();
            }
        }
        C64::new(v, 0.0)
    }))
}

/// Exact rank-1 function algebra at a given parameter, with the generator
/// dictionary and a cache of monomial elements.
pub struct Su2Algebra {
    pub alg: Algebra,
    gens: [FunElem; 4],
    monomials: RefCell<BTreeMap<Monomial, FunElem>>,
}

impl Su2Algebra {
    pub fn new(q: Q) -> Result<Su2Algebra> {
        let alg = Algebra::new(build_root_system(CartanType::A(1))?, q)?;
        let w = Weight(vec![1]);
        let c = |u: usize, v: usize| alg.matrix_coefficient(&w, u, v);
        let neg = |e: FunElem| e.scale(&-Q::one());
        let gens = [
            c(1, 1)?,      // L_{++}
            neg(c(1, 0)?), // L_{+-}
            neg(c(0, 1)?), // L_{-+}
            c(0, 0)?,      // L_{--}
        ];
        Ok(Su2Algebra { alg, gens, monomials: RefCell::new(BTreeMap::new()) })
    }

    pub fn generator(&self, g: SU2Gen) -> &FunElem {
        match g {
            SU2Gen::PlusPlus => &self.gens[0],
            SU2Gen::PlusMinus => &self.gens[1],
            SU2Gen::MinusPlus => &self.gens[2],
            SU2Gen::MinusMinus => &self.gens[3],
        }
    }

    pub fn monomial_elem(&self, m: &Monomial) -> Result<FunElem> {
        if let Some(e) = self.monomials.borrow().get(m) {
            return Ok(e.clone());
        }
        let mut out = self.alg.unit();
        let head = if m.lowering { SU2Gen::MinusMinus } else { SU2Gen::PlusPlus };
        for _ in 0..m.alpha {
            out = self.alg.multiply(&out, self.generator(head))?;
        }
        for _ in 0..m.beta {
            out = self.alg.multiply(&out, self.generator(SU2Gen::MinusPlus))?;
        }
        for _ in 0..m.gamma {
            out = self.alg.multiply(&out, self.generator(SU2Gen::PlusMinus))?;
        }
        self.monomials.borrow_mut().insert(*m, out.clone());
        Ok(out)
    }

    /// Exact evaluation of a monomial on F^f K^k E^e.
    pub fn eval_monomial(&self, m: &Monomial, f: usize, k: i64, e: usize) -> Result<Q> {
        let elem = self.monomial_elem(m)?;
        self.alg.evaluate(&elem, &pbw_word(0, f, k, e))
    }
}

/// The word for F_i^f K_i^k E_i^e as a product of generator symbols.
pub fn pbw_word(i: usize, f: usize, k: i64, e: usize) -> Vec<GenOp> {
    let mut w = Vec::with_capacity(f + e + 1);
    w.extend(std::iter::repeat_n(GenOp::F(i), f));
    if k != 0 {
        w.push(GenOp::K(i, k));
    }
    w.extend(std::iter::repeat_n(GenOp::E(i), e));
    w
}

/// Candidate monomial basis with degree bounds.
pub fn monomial_basis(alpha_max: usize, beta_max: usize, gamma_max: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for alpha in 0..=alpha_max {
        for beta in 0..=beta_max {
            for gamma in 0..=gamma_max {
                out.push(Monomial::new(true, alpha, beta, gamma));
                if alpha > 0 {
                    out.push(Monomial::new(false, alpha, beta, gamma));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qfrac;
    use num::Zero;

    #[test]
    fn generator_formulas_exact() {
        let q = 0.5;
        let n = 8;
        let mp = pi_q_generator(SU2Gen::MinusPlus, q, n).unwrap();
        for j in 0..n {
            assert_eq!(mp.entry(j, j), C64::new(q.powi(j as i32), 0.0));
        }
        let pp = pi_q_generator(SU2Gen::PlusPlus, q, n).unwrap();
        assert_eq!(pp.entry(0, 0), C64::default());
        for j in 1..n {
            assert!((pp.entry(j - 1, j).re - (1.0 - q.powi(2 * j as i32)).sqrt()).abs() < 1e-15);
        }
        let mm = pi_q_generator(SU2Gen::MinusMinus, q, n).unwrap();
        assert!((mm.entry(1, 0).re - (1.0 - q * q).sqrt()).abs() < 1e-15);
        let pm = pi_q_generator(SU2Gen::PlusMinus, q, n).unwrap();
        assert_eq!(pm.entry(2, 2), C64::new(-q.powi(3), 0.0));
        assert!(pi_q_generator(SU2Gen::PlusPlus, q, 1).is_err());
    }

    #[test]
    fn monomial_band_is_product_of_generator_bands() {
        let q = 0.5;
        let n = 10;
        for m in monomial_basis(2, 2, 2) {
            let direct = pi_q_monomial(&m, q, n).unwrap();
            let mut prod = TruncOp::identity(n, 1);
            let head = if m.lowering { SU2Gen::MinusMinus } else { SU2Gen::PlusPlus };
            for _ in 0..m.alpha {
                prod = prod.compose(&pi_q_generator(head, q, n).unwrap());
            }
            for _ in 0..m.beta {
                prod = prod.compose(&pi_q_generator(SU2Gen::MinusPlus, q, n).unwrap());
            }
            for _ in 0..m.gamma {
                prod = prod.compose(&pi_q_generator(SU2Gen::PlusMinus, q, n).unwrap());
            }
            // Composition through the truncation can only disagree where the
            // raising head leaves and re-enters the box; interior match.
            assert!(direct.sub(&prod).max_abs_interior(m.alpha + 1) < 1e-14, "{m:?}");
        }
    }

    #[test]
    fn dictionary_star_and_determinant() {
        let su2 = Su2Algebra::new(qfrac(1, 2)).unwrap();
        let a = su2.generator(SU2Gen::PlusPlus).clone();
        let d = su2.generator(SU2Gen::MinusMinus).clone();
        // L_{++}* = L_{--}.
        assert_eq!(su2.alg.star(&a).unwrap(), d);
        // L_{-+}* = −q^{-1} L_{+-} under our exact star.
        let mp = su2.generator(SU2Gen::MinusPlus).clone();
        let pm = su2.generator(SU2Gen::PlusMinus).clone();
        let star_mp = su2.alg.star(&mp).unwrap();
        assert_eq!(star_mp, pm.scale(&(-qfrac(2, 1))));
        // Determinant-type relation L_{--}L_{++} − q^{-1}L_{-+}L_{+-} = 1.
        let da = su2.alg.multiply(&d, &a).unwrap();
        let cross = su2.alg.multiply(&mp, &pm).unwrap().scale(&qfrac(2, 1));
        assert_eq!(da.sub(&cross), su2.alg.unit());
    }

    #[test]
    fn monomial_evaluations() {
        let su2 = Su2Algebra::new(qfrac(1, 2)).unwrap();
        // Unit monomial evaluates like the counit.
        let unit = Monomial::new(true, 0, 0, 0);
        assert_eq!(su2.eval_monomial(&unit, 0, 0, 0).unwrap(), Q::one());
        assert_eq!(su2.eval_monomial(&unit, 0, 3, 0).unwrap(), Q::one());
        assert_eq!(su2.eval_monomial(&unit, 1, 0, 1).unwrap(), Q::zero());
        // L_{-+} = −c_{0,1}: evaluates on E to −[1]_q = −1.
        let mp = Monomial::new(true, 0, 1, 0);
        assert_eq!(su2.eval_monomial(&mp, 0, 0, 1).unwrap(), -Q::one());
        assert_eq!(su2.eval_monomial(&mp, 0, 0, 0).unwrap(), Q::zero());
    }
}
