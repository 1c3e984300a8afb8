//! Assembly of the tensor-product representations π_w and π_{w,t} on
//! truncated Fock spaces.
//!
//! π_w sends a matrix coefficient through the iterated coproduct, one tensor
//! leg per letter of a reduced word; each leg is the rank-1 representation of
//! the restriction along that simple root, computed by exact expansion in the
//! band-generator monomial basis followed by the band formulas. π_{w,t}
//! additionally multiplies each column by the torus phase of its weight.

use super::band::{C64, TruncOp};
use super::su2::{monomial_basis, pbw_word, pi_q_monomial, Monomial, Su2Algebra};
use crate::funalg::{Algebra, FunElem};
use crate::rat::{q_to_f64, qpow, RatMat, Q};
use crate::rootsys::Weight;
use crate::{Error, Result};
use num::{One, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

#[derive(Clone, Debug)]
pub struct RepSpec {
    pub word: Vec<usize>,
    pub t: Vec<C64>,
    pub n: usize,
}

impl RepSpec {
    pub fn plain(word: Vec<usize>, rank: usize, n: usize) -> RepSpec {
        RepSpec { word, t: vec![C64::new(1.0, 0.0); rank], n }
    }
}

/// Torus phase t^μ = Π t_i^{m_i}.
pub fn t_power(t: &[C64], mu: &Weight) -> C64 {
    mu.0.iter()
        .zip(t)
        .map(|(&m, x)| x.powi(m as i32))
        .product()
}

type Expansion = Rc<Vec<Vec<Vec<(Monomial, Q)>>>>;

pub struct RepEngine<'a> {
    pub alg: &'a Algebra,
    su2: Vec<Su2Algebra>,
    qi: Vec<f64>,
    expansions: RefCell<HashMap<(Weight, usize), Expansion>>,
    legs: RefCell<HashMap<(Weight, usize, usize, usize, usize), Rc<TruncOp>>>,
}

impl<'a> RepEngine<'a> {
    pub fn new(alg: &'a Algebra) -> Result<RepEngine<'a>> {
        let mut su2 = Vec::new();
        let mut qi = Vec::new();
        for i in 0..alg.rs.rank {
            let q_i = qpow(&alg.q, alg.rs.d[i]);
            qi.push(q_to_f64(&q_i));
            su2.push(Su2Algebra::new(q_i)?);
        }
        Ok(RepEngine {
            alg,
            su2,
            qi,
            expansions: RefCell::new(HashMap::new()),
            legs: RefCell::new(HashMap::new()),
        })
    }

    pub fn q_numeric(&self, i: usize) -> f64 {
        self.qi[i]
    }

    /// Matrix of the product F_i^f K_i^k E_i^e on V(λ), columns = images.
    fn word_matrix(&self, lambda: &Weight, i: usize, f: usize, k: i64, e: usize) -> Result<RatMat> {
        let m = self.alg.module(lambda)?;
        let dim = m.space.dim;
        let mut out = RatMat::zero(dim, dim);
        let word = pbw_word(i, f, k, e);
        for v in 0..dim {
            let mut vec = vec![Q::zero(); dim];
            vec[v] = Q::one();
            for op in word.iter().rev() {
                vec = match *op {
                    crate::funalg::GenOp::E(j) => m.space.apply_e(j, &vec),
                    crate::funalg::GenOp::F(j) => m.space.apply_f(j, &vec),
                    crate::funalg::GenOp::K(j, p) => m.space.apply_k(j, p, &vec),
                };
            }
            for u in 0..dim {
                if !vec[u].is_zero() {
                    *out.at_mut(u, v) = vec[u].clone();
                }
            }
        }
        Ok(out)
    }

    /// Exact monomial expansions of every matrix coefficient of V(λ) restricted
    /// along the i-th simple root: result[u][v] represents X ↦ c_{u,v}(φ_i(X)).
    pub fn phi_star_module(&self, lambda: &Weight, i: usize) -> Result<Expansion> {
        if let Some(e) = self.expansions.borrow().get(&(lambda.clone(), i)) {
            return Ok(e.clone());
        }
        let m = self.alg.module(lambda)?;
        let dim = m.space.dim;
        let spin = m
            .space
            .weights
            .iter()
            .map(|w| w.0[i].unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        let su2 = &self.su2[i];
        let mut solved: Option<(Vec<Monomial>, RatMat)> = None;
        for extra in 0..4usize {
            let beta_max = spin + extra;
            let kmax = (spin + extra + 1) as i64;
            let basis = monomial_basis(spin, beta_max, spin);
            let mut tests = Vec::new();
            for f in 0..=spin {
                for e in 0..=spin {
                    for k in -kmax..=kmax {
                        tests.push((f, k, e));
                    }
                }
            }
            let mut a = RatMat::zero(tests.len(), basis.len());
            for (r, &(f, k, e)) in tests.iter().enumerate() {
                for (c, mono) in basis.iter().enumerate() {
                    let v = su2.eval_monomial(mono, f, k, e)?;
                    if !v.is_zero() {
                        *a.at_mut(r, c) = v;
                    }
                }
            }
            let mut rhs = RatMat::zero(tests.len(), dim * dim);
            for (r, &(f, k, e)) in tests.iter().enumerate() {
                let mat = self.word_matrix(lambda, i, f, k, e)?;
                for u in 0..dim {
                    for v in 0..dim {
                        if !mat.at(u, v).is_zero() {
                            *rhs.at_mut(r, u * dim + v) = mat.at(u, v).clone();
                        }
                    }
                }
            }
            let Some(x) = a.solve_multi(&rhs) else {
                continue;
            };
            // Re-validate on a larger test set before accepting.
            let mut ok = true;
            'outer: for f in 0..=spin + 1 {
                for e in 0..=spin + 1 {
                    for k in [-kmax - 2, -kmax - 1, kmax + 1, kmax + 2] {
                        let mat = self.word_matrix(lambda, i, f, k, e)?;
                        for u in 0..dim {
                            for v in 0..dim {
                                let mut acc = Q::zero();
                                for (c, mono) in basis.iter().enumerate() {
                                    if !x.at(c, u * dim + v).is_zero() {
                                        acc += x.at(c, u * dim + v)
                                            * su2.eval_monomial(mono, f, k, e)?;
                                    }
                                }
                                if &acc != mat.at(u, v) {
                                    ok = false;
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            if ok {
                solved = Some((basis, x));
                break;
            }
        }
        let Some((basis, x)) = solved else {
            return Err(Error::Internal(
                "restriction expansion did not stabilize; convention mismatch".into(),
            ));
        };
        let mut out = vec![vec![Vec::new(); dim]; dim];
        for u in 0..dim {
            for v in 0..dim {
                for (c, mono) in basis.iter().enumerate() {
                    let coef = x.at(c, u * dim + v);
                    if !coef.is_zero() {
                        out[u][v].push((*mono, coef.clone()));
                    }
                }
            }
        }
        let rc = Rc::new(out);
        self.expansions
            .borrow_mut()
            .insert((lambda.clone(), i), rc.clone());
        Ok(rc)
    }

    /// Expansion of a single function element restricted along root i, summed
    /// over its components.
    pub fn phi_star_expand(&self, a: &FunElem, i: usize) -> Result<Vec<(Monomial, Q)>> {
        let mut acc: std::collections::BTreeMap<Monomial, Q> = Default::default();
        for (lambda, c) in &a.components {
            let exp = self.phi_star_module(lambda, i)?;
            let dim = self.alg.module(lambda)?.space.dim;
            for u in 0..dim {
                for v in 0..dim {
                    if c.at(u, v).is_zero() {
                        continue;
                    }
                    for (mono, coef) in &exp[u][v] {
                        let e = acc.entry(*mono).or_insert_with(Q::zero);
                        *e += c.at(u, v) * coef;
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(acc.into_iter().collect())
    }

    /// Band image of one matrix coefficient of V(λ) through the rank-1
    /// representation along root i.
    pub fn pi_leg(&self, lambda: &Weight, i: usize, u: usize, v: usize, n: usize) -> Result<Rc<TruncOp>> {
        let key = (lambda.clone(), i, u, v, n);
        if let Some(op) = self.legs.borrow().get(&key) {
            return Ok(op.clone());
        }
        let exp = self.phi_star_module(lambda, i)?;
        let mut op = TruncOp::zero(n, 1);
        for (mono, coef) in &exp[u][v] {
            op.add_scaled(
                &pi_q_monomial(mono, self.qi[i], n)?,
                C64::new(q_to_f64(coef), 0.0),
            );
        }
        let rc = Rc::new(op);
        self.legs.borrow_mut().insert(key, rc.clone());
        Ok(rc)
    }

    fn check_reduced(&self, word: &[usize]) -> Result<()> {
        for &i in word {
            if i >= self.alg.rs.rank {
                return Err(Error::Config("word letter out of range".into()));
            }
        }
        let w = self.alg.wg.from_word(&self.alg.rs, word)?;
        if w.length() != word.len() {
            return Err(Error::Domain("word is not reduced".into()));
        }
        Ok(())
    }

    /// π_{w,t}(a) on the truncation of l₂(Z₊)^{⊗l(w)}.
    pub fn pi_wt(&self, a: &FunElem, spec: &RepSpec) -> Result<TruncOp> {
        self.check_reduced(&spec.word)?;
        if spec.t.len() != self.alg.rs.rank {
            return Err(Error::Config("torus point rank mismatch".into()));
        }
        if spec.t.iter().any(|x| (x.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::Config("torus coordinates must have modulus one".into()));
        }
        let l = spec.word.len();
        let n = spec.n;
        if l == 0 {
            let mut s = C64::default();
            for (lambda, c) in &a.components {
                let m = self.alg.module(lambda)?;
                for v in 0..m.space.dim {
                    if !c.at(v, v).is_zero() {
                        s += C64::new(q_to_f64(c.at(v, v)), 0.0)
                            * t_power(&spec.t, &m.space.weights[v]);
                    }
                }
            }
            return Ok(TruncOp::scalar(n, 0, s));
        }
        let mut result = TruncOp::zero(n, l);
        for (lambda, c) in &a.components {
            let m = self.alg.module(lambda)?;
            let dim = m.space.dim;
            for u in 0..dim {
                // Partial tensor operators per middle index.
                let mut partial: Vec<Option<TruncOp>> = (0..dim)
                    .map(|k| {
                        if k == u {
                            Some(TruncOp::scalar(n, 0, C64::new(1.0, 0.0)))
                        } else {
                            None
                        }
                    })
                    .collect();
                for &i in &spec.word[..l - 1] {
                    let mut next: Vec<Option<TruncOp>> = vec![None; dim];
                    for (kp, p) in partial.iter().enumerate() {
                        let Some(p) = p else { continue };
                        for (k, slot) in next.iter_mut().enumerate() {
                            let leg = self.pi_leg(lambda, i, kp, k, n)?;
                            if leg.diags.is_empty() {
                                continue;
                            }
                            let term = p.tensor(&leg);
                            match slot {
                                Some(acc) => acc.add_scaled(&term, C64::new(1.0, 0.0)),
                                None => *slot = Some(term),
                            }
                        }
                    }
                    partial = next;
                }
                // Final leg: contract with the coefficient matrix and phases.
                let i_last = spec.word[l - 1];
                for (kp, p) in partial.iter().enumerate() {
                    let Some(p) = p else { continue };
                    let mut last = TruncOp::zero(n, 1);
                    for v in 0..dim {
                        if c.at(u, v).is_zero() {
                            continue;
                        }
                        let phase = C64::new(q_to_f64(c.at(u, v)), 0.0)
                            * t_power(&spec.t, &m.space.weights[v]);
                        let leg = self.pi_leg(lambda, i_last, kp, v, n)?;
                        last.add_scaled(&leg, phase);
                    }
                    if last.diags.is_empty() {
                        continue;
                    }
                    result.add_scaled(&p.tensor(&last), C64::new(1.0, 0.0));
                }
            }
        }
        Ok(result)
    }

    pub fn pi_w(&self, a: &FunElem, word: &[usize], n: usize) -> Result<TruncOp> {
        self.pi_wt(a, &RepSpec::plain(word.to_vec(), self.alg.rs.rank, n))
    }

    /// τ_t(a) = Σ over diagonal coefficients weighted by torus phases.
    pub fn tau_t(&self, a: &FunElem, t: &[C64]) -> Result<C64> {
        let mut s = C64::default();
        for (lambda, c) in &a.components {
            let m = self.alg.module(lambda)?;
            for v in 0..m.space.dim {
                if !c.at(v, v).is_zero() {
                    s += C64::new(q_to_f64(c.at(v, v)), 0.0) * t_power(t, &m.space.weights[v]);
                }
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qfrac;
    use crate::rep::su2::{pi_q_generator, SU2Gen};
    use crate::rootsys::{build_root_system, CartanType};

    fn a1() -> Algebra {
        Algebra::new(build_root_system(CartanType::A(1)).unwrap(), qfrac(1, 2)).unwrap()
    }

    fn a2() -> Algebra {
        Algebra::new(build_root_system(CartanType::A(2)).unwrap(), qfrac(1, 2)).unwrap()
    }

    #[test]
    fn rank_one_legs_reproduce_band_formulas() {
        let alg = a1();
        let eng = RepEngine::new(&alg).unwrap();
        let su2 = Su2Algebra::new(qfrac(1, 2)).unwrap();
        let n = 16;
        for (g, gen) in [
            (SU2Gen::PlusPlus, su2.generator(SU2Gen::PlusPlus)),
            (SU2Gen::PlusMinus, su2.generator(SU2Gen::PlusMinus)),
            (SU2Gen::MinusPlus, su2.generator(SU2Gen::MinusPlus)),
            (SU2Gen::MinusMinus, su2.generator(SU2Gen::MinusMinus)),
        ] {
            let via_pi = eng.pi_w(gen, &[0], n).unwrap();
            let direct = pi_q_generator(g, 0.5, n).unwrap();
            assert!(via_pi.sub(&direct).max_abs_interior(0) < 1e-14, "{g:?}");
        }
    }

    #[test]
    fn phi_star_identity_and_unit() {
        let alg = a1();
        let eng = RepEngine::new(&alg).unwrap();
        // The unit expands to the empty monomial.
        let exp = eng.phi_star_expand(&alg.unit(), 0).unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp[0].0, Monomial::new(true, 0, 0, 0));
        assert!(exp[0].1.is_one());
        // At rank one the restriction is the identity: a single generator
        // expands to itself.
        let su2 = Su2Algebra::new(qfrac(1, 2)).unwrap();
        let mp = su2.generator(SU2Gen::MinusPlus);
        let exp = eng.phi_star_expand(mp, 0).unwrap();
        assert_eq!(exp, vec![(Monomial::new(true, 0, 1, 0), Q::one())]);
    }

    #[test]
    fn phi_star_revalidates_on_random_words() {
        // A rank-2 coefficient restricted along each root: re-evaluate the
        // solved expansion against fresh monomials not used in the solve.
        let alg = a2();
        let eng = RepEngine::new(&alg).unwrap();
        let lam = Weight(vec![1, 0]);
        for i in 0..2 {
            let exp = eng.phi_star_module(&lam, i).unwrap();
            let su2 = Su2Algebra::new(qfrac(1, 2)).unwrap();
            let dim = alg.module(&lam).unwrap().space.dim;
            for f in 0..=2 {
                for e in 0..=2 {
                    for k in -5..=5i64 {
                        let mat = eng.word_matrix(&lam, i, f, k, e).unwrap();
                        for u in 0..dim {
                            for v in 0..dim {
                                let mut acc = Q::zero();
                                for (mono, coef) in &exp[u][v] {
                                    acc += coef * su2.eval_monomial(mono, f, k, e).unwrap();
                                }
                                assert_eq!(&acc, mat.at(u, v));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pi_e_is_counit_and_pi_w_unital() {
        let alg = a2();
        let eng = RepEngine::new(&alg).unwrap();
        let f = alg.matrix_coefficient(&Weight(vec![0, 1]), 0, 0).unwrap();
        let scalar = eng.pi_w(&f, &[], 4).unwrap();
        assert!((scalar.entry(0, 0) - C64::new(1.0, 0.0)).norm() < 1e-15);
        let g = alg.matrix_coefficient(&Weight(vec![0, 1]), 1, 0).unwrap();
        assert!(eng.pi_w(&g, &[], 4).unwrap().entry(0, 0).norm() < 1e-15);
        // π_w(1) = identity.
        let id = eng.pi_w(&alg.unit(), &[0, 1], 5).unwrap();
        assert!(id.sub(&TruncOp::identity(5, 2)).max_abs_interior(0) < 1e-14);
    }

    #[test]
    fn pi_w_rejects_non_reduced_words() {
        let alg = a2();
        let eng = RepEngine::new(&alg).unwrap();
        assert!(eng.pi_w(&alg.unit(), &[0, 0], 4).is_err());
        assert!(eng.pi_w(&alg.unit(), &[0, 1, 0, 1], 4).is_err());
        assert!(eng.pi_w(&alg.unit(), &[5], 4).is_err());
    }

    #[test]
    fn tau_properties() {
        let alg = a2();
        let eng = RepEngine::new(&alg).unwrap();
        let ones = vec![C64::new(1.0, 0.0); 2];
        assert!((eng.tau_t(&alg.unit(), &ones).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        // τ on a homogeneous element: a(1)·t^μ; and τ at t=1 is evaluation at
        // the unit.
        let t: Vec<C64> = vec![
            C64::from_polar(1.0, 0.7),
            C64::from_polar(1.0, -1.3),
        ];
        let lam = Weight(vec![1, 1]);
        let a = alg.matrix_coefficient(&lam, 0, 0).unwrap();
        let tv = eng.tau_t(&a, &t).unwrap();
        let expect = t_power(&t, &lam);
        assert!((tv - expect).norm() < 1e-14);
        // Multiplicative on samples.
        let b = alg.matrix_coefficient(&Weight(vec![0, 1]), 0, 0).unwrap();
        let ab = alg.multiply(&a, &b).unwrap();
        let lhs = eng.tau_t(&ab, &t).unwrap();
        let rhs = eng.tau_t(&a, &t).unwrap() * eng.tau_t(&b, &t).unwrap();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn pi_wt_phases_and_restriction_to_pi_w() {
        let alg = a2();
        let eng = RepEngine::new(&alg).unwrap();
        let lam = Weight(vec![0, 1]);
        let a = alg.matrix_coefficient(&lam, 1, 0).unwrap();
        let word = vec![1usize];
        let n = 12;
        let plain = eng.pi_w(&a, &word, n).unwrap();
        let t = vec![C64::from_polar(1.0, 0.9), C64::from_polar(1.0, 2.1)];
        let spec = RepSpec { word: word.clone(), t: t.clone(), n };
        let twisted = eng.pi_wt(&a, &spec).unwrap();
        // Single column leg at the highest weight: a global phase t^Λ.
        let mut scaled = plain.clone();
        scaled.scale(t_power(&t, &lam));
        assert!(twisted.sub(&scaled).max_abs_interior(0) < 1e-13);
        // t = 1 recovers pi_w exactly.
        let spec1 = RepSpec::plain(word, 2, n);
        assert!(eng.pi_wt(&a, &spec1).unwrap().sub(&plain).max_abs_interior(0) < 1e-15);
    }

    #[test]
    fn homomorphism_on_samples() {
        let alg = a2();
        let eng = RepEngine::new(&alg).unwrap();
        let n = 14;
        let word = vec![0usize, 1];
        let f = alg.matrix_coefficient(&Weight(vec![0, 1]), 1, 0).unwrap();
        let g = alg.matrix_coefficient(&Weight(vec![1, 0]), 2, 0).unwrap();
        let fg = alg.multiply(&f, &g).unwrap();
        let lhs = eng.pi_w(&fg, &word, n).unwrap();
        let rhs = eng.pi_w(&f, &word, n).unwrap().compose(&eng.pi_w(&g, &word, n).unwrap());
        assert!(lhs.sub(&rhs).max_abs_interior(2) < 1e-9);
    }

    #[test]
    fn star_representation_on_samples() {
        let alg = a2();
        let eng = RepEngine::new(&alg).unwrap();
        let n = 16;
        let word = vec![0usize, 1];
        for (lam, u) in [(Weight(vec![0, 1]), 1usize), (Weight(vec![1, 0]), 0), (Weight(vec![1, 1]), 3)] {
            let a = alg.matrix_coefficient(&lam, u, 0).unwrap();
            let star = alg.star(&a).unwrap();
            let lhs = eng.pi_w(&star, &word, n).unwrap();
            let rhs = eng.pi_w(&a, &word, n).unwrap().adjoint();
            assert!(lhs.sub(&rhs).max_abs_interior(3) < 1e-9, "{:?}", lam.0);
        }
    }
}
