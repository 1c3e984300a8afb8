//! The quantized function algebra as graded matrix coefficients.
//!
//! An element is a finite sum over dominant weights λ of coefficient matrices
//! C^λ: the (u,v)-entry weights the coefficient X ↦ f_u(X·e_v) where {e_v} is
//! the orthogonal module basis and {f_u} its dual functionals. Evaluation,
//! products (dual to the comultiplication), the *-involution and the invariant
//! functional are all computed exactly over the rationals.

use crate::rat::{Q, RatMat};
use crate::rootsys::{weyl_enumerate, RootSystem, Weight, WeylGroup};
use crate::uqmod::{
    build_irreducible, canonical_dual_iso, highest_weight_vectors, tensor, RepSpace, UqModule,
};
use crate::{Error, Result};
use num::{One, Zero};
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

/// A generator word letter for evaluation on the enveloping algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenOp {
    E(usize),
    F(usize),
    /// K_i^{p}
    K(usize, i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunElem {
    pub components: BTreeMap<Weight, RatMat>,
}

impl FunElem {
    pub fn zero() -> FunElem {
        FunElem { components: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &FunElem) -> FunElem {
        let mut out = self.clone();
        for (w, c) in &other.components {
            match out.components.get_mut(w) {
                Some(acc) => acc.add_assign(c),
                None => {
                    out.components.insert(w.clone(), c.clone());
                }
            }
        }
        out.prune()
    }

    pub fn scale(&self, s: &Q) -> FunElem {
        FunElem {
            components: self
                .components
                .iter()
                .map(|(w, c)| (w.clone(), c.scale(s)))
                .collect(),
        }
        .prune()
    }

    pub fn sub(&self, other: &FunElem) -> FunElem {
        self.add(&other.scale(&-Q::one()))
    }

    fn prune(mut self) -> FunElem {
        self.components.retain(|_, c| !c.is_zero());
        self
    }

    /// Flatten the λ-component row-major (zero matrix when absent).
    pub fn flat_component(&self, lambda: &Weight, dim: usize) -> Vec<Q> {
        match self.components.get(lambda) {
            Some(c) => c.data.clone(),
            None => vec![Q::zero(); dim * dim],
        }
    }
}

/// One irreducible slot of a tensor-square decomposition. `psi` embeds the
/// irreducible into the tensor space; `d` projects back onto its coordinates.
#[derive(Clone, Debug)]
pub struct PairComponent {
    pub nu: Weight,
    pub psi: RatMat,
    pub d: RatMat,
}

#[derive(Clone, Debug)]
pub struct PairDecomp {
    pub left: Weight,
    pub right: Weight,
    pub dim_t: usize,
    pub components: Vec<PairComponent>,
}

#[derive(Clone, Debug)]
pub struct StarData {
    pub lambda_prime: Weight,
    pub psi_t: RatMat,
    pub psi_inv_t: RatMat,
}

/// Shared context: root data, the deformation parameter, and caches of built
/// modules, tensor decompositions, and star transport matrices.
pub struct Algebra {
    pub rs: RootSystem,
    pub wg: WeylGroup,
    pub q: Q,
    modules: RefCell<BTreeMap<Weight, Rc<UqModule>>>,
    pairs: RefCell<BTreeMap<(Weight, Weight), Rc<PairDecomp>>>,
    stars: RefCell<BTreeMap<Weight, Rc<StarData>>>,
}

impl Algebra {
    pub fn new(rs: RootSystem, q: Q) -> Result<Algebra> {
        if q <= Q::zero() || q >= Q::one() {
            return Err(Error::Config("deformation parameter must satisfy 0 < q < 1".into()));
        }
        let wg = weyl_enumerate(&rs);
        Ok(Algebra {
            rs,
            wg,
            q,
            modules: RefCell::new(BTreeMap::new()),
            pairs: RefCell::new(BTreeMap::new()),
            stars: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn module(&self, lambda: &Weight) -> Result<Rc<UqModule>> {
        if let Some(m) = self.modules.borrow().get(lambda) {
            return Ok(m.clone());
        }
        let m = Rc::new(build_irreducible(&self.rs, &self.q, lambda)?);
        self.modules.borrow_mut().insert(lambda.clone(), m.clone());
        Ok(m)
    }

    pub fn unit(&self) -> FunElem {
        let mut components = BTreeMap::new();
        let mut c = RatMat::zero(1, 1);
        *c.at_mut(0, 0) = Q::one();
        components.insert(Weight::zero(self.rs.rank), c);
        FunElem { components }
    }

    pub fn matrix_coefficient(&self, lambda: &Weight, u: usize, v: usize) -> Result<FunElem> {
        let m = self.module(lambda)?;
        if u >= m.space.dim || v >= m.space.dim {
            return Err(Error::Domain(format!(
                "coefficient index ({u},{v}) out of range for dimension {}",
                m.space.dim
            )));
        }
        let mut c = RatMat::zero(m.space.dim, m.space.dim);
        *c.at_mut(u, v) = Q::one();
        let mut components = BTreeMap::new();
        components.insert(lambda.clone(), c);
        Ok(FunElem { components })
    }

    /// Decomposition data of V(λ)⊗V(μ): per irreducible summand, the embedding
    /// ψ (columns = images of the summand basis) and the coordinate projection
    /// D with D·ψ = id.
    pub fn pair(&self, left: &Weight, right: &Weight) -> Result<Rc<PairDecomp>> {
        let key = (left.clone(), right.clone());
        if let Some(p) = self.pairs.borrow().get(&key) {
            return Ok(p.clone());
        }
        let m1 = self.module(left)?;
        let m2 = self.module(right)?;
        let t = tensor(&m1.space, &m2.space);
        let p = Rc::new(self.decompose_space(&t, left, right)?);
        self.pairs.borrow_mut().insert(key, p.clone());
        Ok(p)
    }

    fn decompose_space(&self, t: &RepSpace, left: &Weight, right: &Weight) -> Result<PairDecomp> {
        let g_t = t.gram.as_ref().ok_or_else(|| Error::Internal("tensor space lacks Gram".into()))?;
        let mut components = Vec::new();
        for (nu, vecs) in highest_weight_vectors(t) {
            // Orthogonalize repeated highest-weight vectors so summands are
            // form-orthogonal.
            let mut ortho: Vec<Vec<Q>> = Vec::new();
            for v in vecs {
                let mut v = v;
                for u in &ortho {
                    let nu_norm: Q = t.form(u, u);
                    let coef = t.form(&v, u) / nu_norm;
                    if !coef.is_zero() {
                        for (x, y) in v.iter_mut().zip(u) {
                            *x -= &coef * y;
                        }
                    }
                }
                if v.iter().any(|x| !x.is_zero()) {
                    ortho.push(v);
                }
            }
            let m_nu = self.module(&nu)?;
            for v0 in ortho {
                // Transport along the recurrence to fill the embedding.
                let mut psi = RatMat::zero(t.dim, m_nu.space.dim);
                for (i, x) in v0.iter().enumerate() {
                    *psi.at_mut(i, 0) = x.clone();
                }
                for (col, rec) in m_nu.recurrence.iter().enumerate().skip(1) {
                    let gen = rec.gen.expect("non-root recurrence entry");
                    let parent = psi.col(rec.parent);
                    let mut img = t.apply_f(gen, &parent);
                    for (prev, coef) in &rec.corrections {
                        let pv = psi.col(*prev);
                        for (x, y) in img.iter_mut().zip(&pv) {
                            *x -= coef * y;
                        }
                    }
                    for (i, x) in img.into_iter().enumerate() {
                        *psi.at_mut(i, col) = x;
                    }
                }
                // Form scale: ⟨ψ(b_j), ψ(b_k)⟩ = c·g_ν[j]·δ_jk.
                let c0 = t.form(&psi.col(0), &psi.col(0));
                if c0.is_zero() {
                    return Err(Error::Internal("degenerate form on tensor summand".into()));
                }
                let g_nu = m_nu.space.gram.as_ref().unwrap();
                let mut d = RatMat::zero(m_nu.space.dim, t.dim);
                for j in 0..m_nu.space.dim {
                    let denom = &c0 * &g_nu[j];
                    for vv in 0..t.dim {
                        let x = psi.at(vv, j);
                        if !x.is_zero() {
                            *d.at_mut(j, vv) = x * &g_t[vv] / &denom;
                        }
                    }
                }
                components.push(PairComponent { nu: nu.clone(), psi, d });
            }
        }
        // Completeness: dimensions add up.
        let total: usize = components
            .iter()
            .map(|c| c.psi.cols)
            .sum();
        if total != t.dim {
            return Err(Error::Internal(format!(
                "tensor decomposition dimensions {total} != {}",
                t.dim
            )));
        }
        Ok(PairDecomp {
            left: left.clone(),
            right: right.clone(),
            dim_t: t.dim,
            components,
        })
    }

    pub fn multiply(&self, a: &FunElem, b: &FunElem) -> Result<FunElem> {
        let mut out = FunElem::zero();
        for (la, ca) in &a.components {
            for (lb, cb) in &b.components {
                let pd = self.pair(la, lb)?;
                // Kronecker of coefficient matrices: index (u,x)·dim2+... rows
                // follow the tensor basis order (a then b).
                let (ra, na) = (ca.rows, ca.cols);
                let (rb, nb) = (cb.rows, cb.cols);
                let mut k = RatMat::zero(ra * rb, na * nb);
                for u in 0..ra {
                    for v in 0..na {
                        let x = ca.at(u, v);
                        if x.is_zero() {
                            continue;
                        }
                        for p in 0..rb {
                            for r in 0..nb {
                                let y = cb.at(p, r);
                                if !y.is_zero() {
                                    *k.at_mut(u * rb + p, v * nb + r) = x * y;
                                }
                            }
                        }
                    }
                }
                for comp in &pd.components {
                    let c = comp.psi.transpose().mul(&k).mul(&comp.d.transpose());
                    if c.is_zero() {
                        continue;
                    }
                    match out.components.get_mut(&comp.nu) {
                        Some(acc) => acc.add_assign(&c),
                        None => {
                            out.components.insert(comp.nu.clone(), c);
                        }
                    }
                }
            }
        }
        Ok(out.prune())
    }

    pub fn star_data(&self, lambda: &Weight) -> Result<Rc<StarData>> {
        if let Some(s) = self.stars.borrow().get(lambda) {
            return Ok(s.clone());
        }
        let m = self.module(lambda)?;
        let lambda_prime = self.rs.dual_highest_weight(&self.wg, lambda);
        let src = self.module(&lambda_prime)?;
        let psi = canonical_dual_iso(&m, &src)?;
        let psi_inv = psi
            .inverse()
            .ok_or_else(|| Error::Internal("dual intertwiner not invertible".into()))?;
        let s = Rc::new(StarData {
            lambda_prime,
            psi_t: psi.transpose(),
            psi_inv_t: psi_inv.transpose(),
        });
        self.stars.borrow_mut().insert(lambda.clone(), s.clone());
        Ok(s)
    }

    /// The *-involution: a*(X) = conj(a(S(X)*)). The λ-component maps into the
    /// (−w₀λ)-component through the dual-module intertwiner.
    pub fn star(&self, a: &FunElem) -> Result<FunElem> {
        let mut out = FunElem::zero();
        for (lambda, c) in &a.components {
            let m = self.module(lambda)?;
            let g = m.space.gram.as_ref().unwrap();
            let sd = self.star_data(lambda)?;
            // C̃_{u,v} = C_{u,v}·g_v/g_u, then transport: Ψᵀ C̃ Ψ^{-ᵀ}.
            let mut ct = c.clone();
            for u in 0..ct.rows {
                for v in 0..ct.cols {
                    if !ct.at(u, v).is_zero() {
                        let x = ct.at(u, v) * &g[v] / &g[u];
                        *ct.at_mut(u, v) = x;
                    }
                }
            }
            let mapped = sd.psi_t.mul(&ct).mul(&sd.psi_inv_t);
            if mapped.is_zero() {
                continue;
            }
            match out.components.get_mut(&sd.lambda_prime) {
                Some(acc) => acc.add_assign(&mapped),
                None => {
                    out.components.insert(sd.lambda_prime.clone(), mapped);
                }
            }
        }
        Ok(out.prune())
    }

    /// Left regular action: (X·a)(Y) = a(YX). Acts on the column leg.
    pub fn left_action(&self, op: GenOp, a: &FunElem) -> Result<FunElem> {
        let mut out = FunElem::zero();
        for (lambda, c) in &a.components {
            let m = self.module(lambda)?;
            let mat = self.op_matrix(&m.space, op);
            let mapped = c.mul(&mat.transpose());
            if !mapped.is_zero() {
                out.components.insert(lambda.clone(), mapped);
            }
        }
        Ok(out.prune())
    }

    /// Right regular action: (a·X)(Y) = a(XY). Acts on the row leg.
    pub fn right_action(&self, op: GenOp, a: &FunElem) -> Result<FunElem> {
        let mut out = FunElem::zero();
        for (lambda, c) in &a.components {
            let m = self.module(lambda)?;
            let mat = self.op_matrix(&m.space, op);
            let mapped = mat.transpose().mul(c);
            if !mapped.is_zero() {
                out.components.insert(lambda.clone(), mapped);
            }
        }
        Ok(out.prune())
    }

    fn op_matrix(&self, space: &RepSpace, op: GenOp) -> RatMat {
        match op {
            GenOp::E(i) => space.e[i].to_dense(),
            GenOp::F(i) => space.f[i].to_dense(),
            GenOp::K(i, p) => {
                let mut m = RatMat::zero(space.dim, space.dim);
                for a in 0..space.dim {
                    *m.at_mut(a, a) = space.k_scalar(i, a, p);
                }
                m
            }
        }
    }

    /// Evaluate on a word of generators (identity for the empty word).
    pub fn evaluate(&self, a: &FunElem, word: &[GenOp]) -> Result<Q> {
        let mut total = Q::zero();
        for (lambda, c) in &a.components {
            let m = self.module(lambda)?;
            for v in 0..m.space.dim {
                let mut vec = vec![Q::zero(); m.space.dim];
                vec[v] = Q::one();
                for op in word.iter().rev() {
                    vec = match *op {
                        GenOp::E(i) => m.space.apply_e(i, &vec),
                        GenOp::F(i) => m.space.apply_f(i, &vec),
                        GenOp::K(i, p) => m.space.apply_k(i, p, &vec),
                    };
                    if vec.iter().all(|x| x.is_zero()) {
                        break;
                    }
                }
                for u in 0..m.space.dim {
                    if !vec[u].is_zero() && !c.at(u, v).is_zero() {
                        total += c.at(u, v) * &vec[u];
                    }
                }
            }
        }
        Ok(total)
    }

    /// Split by left regular torus weight (the weight of the column leg).
    pub fn left_weight_decompose(&self, a: &FunElem) -> Result<BTreeMap<Weight, FunElem>> {
        let mut out: BTreeMap<Weight, FunElem> = BTreeMap::new();
        for (lambda, c) in &a.components {
            let m = self.module(lambda)?;
            let mut by_weight: BTreeMap<Weight, RatMat> = BTreeMap::new();
            for v in 0..m.space.dim {
                let w = m.space.weights[v].clone();
                let slot = by_weight
                    .entry(w)
                    .or_insert_with(|| RatMat::zero(c.rows, c.cols));
                for u in 0..c.rows {
                    *slot.at_mut(u, v) = c.at(u, v).clone();
                }
            }
            for (w, mat) in by_weight {
                if mat.is_zero() {
                    continue;
                }
                out.entry(w)
                    .or_insert_with(FunElem::zero)
                    .components
                    .insert(lambda.clone(), mat);
            }
        }
        out.retain(|_, e| !e.is_zero());
        Ok(out)
    }

    /// The invariant functional: the coefficient of the trivial component.
    pub fn haar(&self, a: &FunElem) -> Q {
        let zero = Weight::zero(self.rs.rank);
        a.components
            .get(&zero)
            .map(|c| c.at(0, 0).clone())
            .unwrap_or_else(Q::zero)
    }

    /// ⟨a,b⟩ = h(b*·a), exact.
    pub fn haar_inner(&self, a: &FunElem, b: &FunElem) -> Result<Q> {
        let bs = self.star(b)?;
        Ok(self.haar(&self.multiply(&bs, a)?))
    }

    pub fn haar_norm(&self, a: &FunElem) -> Result<f64> {
        let sq = self.haar_inner(a, a)?;
        Ok(crate::rat::q_to_f64(&sq).sqrt())
    }
}

/// Expand the comultiplication of a generator word into pairs of words.
pub fn delta_words(word: &[GenOp]) -> Vec<(Vec<GenOp>, Vec<GenOp>)> {
    let mut terms: Vec<(Vec<GenOp>, Vec<GenOp>)> = vec![(Vec::new(), Vec::new())];
    for op in word {
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (w1, w2) in &terms {
            match *op {
                GenOp::E(i) => {
                    // Δ(E) = E⊗K + 1⊗E
                    let mut a1 = w1.clone();
                    let mut a2 = w2.clone();
                    a1.push(GenOp::E(i));
                    a2.push(GenOp::K(i, 1));
                    next.push((a1, a2));
                    let mut b2 = w2.clone();
                    b2.push(GenOp::E(i));
                    next.push((w1.clone(), b2));
                }
                GenOp::F(i) => {
                    // Δ(F) = F⊗1 + K^{-1}⊗F
                    let mut a1 = w1.clone();
                    a1.push(GenOp::F(i));
                    next.push((a1, w2.clone()));
                    let mut b1 = w1.clone();
                    let mut b2 = w2.clone();
                    b1.push(GenOp::K(i, -1));
                    b2.push(GenOp::F(i));
                    next.push((b1, b2));
                }
                GenOp::K(i, p) => {
                    let mut a1 = w1.clone();
                    let mut a2 = w2.clone();
                    a1.push(GenOp::K(i, p));
                    a2.push(GenOp::K(i, p));
                    next.push((a1, a2));
                }
            }
        }
        terms = next;
    }
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{qfrac, qpow, qz};
    use crate::rootsys::{build_root_system, CartanType};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a1() -> Algebra {
        let rs = build_root_system(CartanType::A(1)).unwrap();
        Algebra::new(rs, qfrac(1, 2)).unwrap()
    }

    fn a2() -> Algebra {
        let rs = build_root_system(CartanType::A(2)).unwrap();
        Algebra::new(rs, qfrac(1, 2)).unwrap()
    }

    fn random_elem(alg: &Algebra, rng: &mut ChaCha8Rng, lambdas: &[Weight]) -> FunElem {
        let mut out = FunElem::zero();
        for lam in lambdas {
            let m = alg.module(lam).unwrap();
            let n = m.space.dim;
            let mut c = RatMat::zero(n, n);
            for u in 0..n {
                for v in 0..n {
                    *c.at_mut(u, v) = qz(rng.gen_range(-2i64..=2));
                }
            }
            if !c.is_zero() {
                out.components.insert(lam.clone(), c);
            }
        }
        out
    }

    #[test]
    fn unit_laws_and_unit_evaluation() {
        let alg = a1();
        let one = alg.unit();
        assert_eq!(alg.evaluate(&one, &[]).unwrap(), Q::one());
        let c = alg.matrix_coefficient(&Weight(vec![1]), 0, 1).unwrap();
        assert_eq!(alg.multiply(&one, &c).unwrap(), c);
        assert_eq!(alg.multiply(&c, &one).unwrap(), c);
        // c_{u,v}(1) = δ_{uv}
        assert_eq!(alg.evaluate(&c, &[]).unwrap(), Q::zero());
        let diag = alg.matrix_coefficient(&Weight(vec![1]), 1, 1).unwrap();
        assert_eq!(alg.evaluate(&diag, &[]).unwrap(), Q::one());
        // index out of range is a domain error
        assert!(alg.matrix_coefficient(&Weight(vec![1]), 0, 7).is_err());
    }

    #[test]
    fn k_evaluation_scales_by_weight() {
        let alg = a1();
        let lam = Weight(vec![1]);
        let m = alg.module(&lam).unwrap();
        for v in 0..2 {
            let c = alg.matrix_coefficient(&lam, v, v).unwrap();
            let expect = qpow(&alg.q, m.space.weights[v].0[0]);
            assert_eq!(alg.evaluate(&c, &[GenOp::K(0, 1)]).unwrap(), expect);
        }
    }

    #[test]
    fn left_action_moves_column_leg() {
        let alg = a1();
        let lam = Weight(vec![1]);
        // F·c_{u,0} should relate to c_{u,1}: F e_0 = e_1 (coefficient 1).
        let c = alg.matrix_coefficient(&lam, 0, 0).unwrap();
        let moved = alg.left_action(GenOp::F(0), &c).unwrap();
        let target = alg.matrix_coefficient(&lam, 0, 1).unwrap();
        assert_eq!(moved, target);
    }

    #[test]
    fn rank_one_generator_commutation() {
        // L_{+-}·L_{-+} = L_{-+}·L_{+-} in the rank-one algebra.
        let alg = a1();
        let lam = Weight(vec![1]);
        let l_pm = alg.matrix_coefficient(&lam, 0, 1).unwrap();
        let l_mp = alg.matrix_coefficient(&lam, 1, 0).unwrap();
        let ab = alg.multiply(&l_pm, &l_mp).unwrap();
        let ba = alg.multiply(&l_mp, &l_pm).unwrap();
        assert_eq!(ab, ba);
        assert!(!ab.is_zero());
    }

    #[test]
    fn product_component_support_follows_tensor_decomposition() {
        let alg = a1();
        let lam = Weight(vec![1]);
        let a = alg.matrix_coefficient(&lam, 0, 0).unwrap();
        let b = alg.matrix_coefficient(&lam, 1, 1).unwrap();
        let p = alg.multiply(&a, &b).unwrap();
        for w in p.components.keys() {
            assert!(w == &Weight(vec![2]) || w == &Weight(vec![0]), "{:?}", w.0);
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        let alg = a1();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let lambdas = [Weight(vec![0]), Weight(vec![1])];
        for _ in 0..50 {
            let a = random_elem(&alg, &mut rng, &lambdas);
            let b = random_elem(&alg, &mut rng, &lambdas);
            let c = random_elem(&alg, &mut rng, &lambdas);
            let ab_c = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
        }
        // One higher-rank spot check.
        let alg2 = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let lambdas = [Weight(vec![0, 0]), Weight(vec![1, 0]), Weight(vec![0, 1])];
        for _ in 0..3 {
            let a = random_elem(&alg2, &mut rng, &lambdas);
            let b = random_elem(&alg2, &mut rng, &lambdas);
            let c = random_elem(&alg2, &mut rng, &lambdas);
            let ab_c = alg2.multiply(&alg2.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = alg2.multiply(&a, &alg2.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
        }
    }

    #[test]
    fn evaluation_is_an_algebra_homomorphism() {
        let alg = a1();
        let lam = Weight(vec![1]);
        let words: Vec<Vec<GenOp>> = vec![
            vec![],
            vec![GenOp::E(0)],
            vec![GenOp::F(0)],
            vec![GenOp::K(0, 1)],
            vec![GenOp::E(0), GenOp::F(0)],
            vec![GenOp::F(0), GenOp::F(0), GenOp::E(0)],
            vec![GenOp::K(0, -1), GenOp::E(0), GenOp::F(0), GenOp::E(0)],
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let a = random_elem(&alg, &mut rng, &[Weight(vec![0]), lam.clone()]);
            let b = random_elem(&alg, &mut rng, &[Weight(vec![0]), lam.clone()]);
            let ab = alg.multiply(&a, &b).unwrap();
            for w in &words {
                let lhs = alg.evaluate(&ab, w).unwrap();
                let mut rhs = Q::zero();
                for (w1, w2) in delta_words(w) {
                    rhs += alg.evaluate(&a, &w1).unwrap() * alg.evaluate(&b, &w2).unwrap();
                }
                assert_eq!(lhs, rhs, "word {:?}", w);
            }
        }
    }

    #[test]
    fn star_is_an_involution_and_antimultiplicative() {
        let alg = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let lambdas = [Weight(vec![1, 0]), Weight(vec![0, 1]), Weight(vec![0, 0])];
        for _ in 0..20 {
            let a = random_elem(&alg, &mut rng, &lambdas);
            let ss = alg.star(&alg.star(&a).unwrap()).unwrap();
            assert_eq!(ss, a);
        }
        for _ in 0..5 {
            let a = random_elem(&alg, &mut rng, &lambdas[..2]);
            let b = random_elem(&alg, &mut rng, &lambdas[..2]);
            let lhs = alg.star(&alg.multiply(&a, &b).unwrap()).unwrap();
            let rhs = alg
                .multiply(&alg.star(&b).unwrap(), &alg.star(&a).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        // Component support: λ ↦ −w₀λ.
        let c = alg.matrix_coefficient(&Weight(vec![1, 0]), 0, 1).unwrap();
        let sc = alg.star(&c).unwrap();
        assert!(sc.components.keys().all(|w| w == &Weight(vec![0, 1])));
        // 1* = 1.
        assert_eq!(alg.star(&alg.unit()).unwrap(), alg.unit());
    }

    #[test]
    fn star_evaluation_identity() {
        // a*(X) = a(S(X)*) as exact scalars on generator words.
        let alg = a1();
        let lam = Weight(vec![1]);
        let qi = alg.q.clone();
        for (u, v) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let a = alg.matrix_coefficient(&lam, u, v).unwrap();
            let sa = alg.star(&a).unwrap();
            // X = E: S(E)* = (−E K^{-1})* = −K^{-1}·E* = −K^{-1}·q^{-1}FK.
            // Evaluate both sides on E and F.
            let lhs_e = alg.evaluate(&sa, &[GenOp::E(0)]).unwrap();
            let rhs_e = -alg
                .evaluate(
                    &a,
                    &[GenOp::K(0, -1), GenOp::F(0), GenOp::K(0, 1)],
                )
                .unwrap()
                / &qi;
            assert_eq!(lhs_e, rhs_e, "u={u} v={v}");
            // X = K: S(K)* = K^{-1}.
            let lhs_k = alg.evaluate(&sa, &[GenOp::K(0, 1)]).unwrap();
            let rhs_k = alg.evaluate(&a, &[GenOp::K(0, -1)]).unwrap();
            assert_eq!(lhs_k, rhs_k);
        }
    }

    #[test]
    fn haar_and_peter_weyl_orthogonality() {
        let alg = a2();
        assert_eq!(alg.haar(&alg.unit()), Q::one());
        let c = alg.matrix_coefficient(&Weight(vec![1, 0]), 0, 0).unwrap();
        assert_eq!(alg.haar(&c), Q::zero());
        // Distinct components are h-orthogonal.
        let b = alg.matrix_coefficient(&Weight(vec![0, 1]), 0, 0).unwrap();
        assert_eq!(alg.haar_inner(&c, &b).unwrap(), Q::zero());
        let z = alg.haar_inner(&c, &alg.unit()).unwrap();
        assert_eq!(z, Q::zero());
        // Positivity on a nonzero element.
        let n = alg.haar_inner(&c, &c).unwrap();
        assert!(n > Q::zero());
        assert!(alg.haar_norm(&c).unwrap() > 0.0);
    }

    #[test]
    fn left_weight_decomposition_reconstructs() {
        let alg = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_elem(
            &alg,
            &mut rng,
            &[Weight(vec![1, 0]), Weight(vec![1, 1]), Weight(vec![0, 0])],
        );
        let parts = alg.left_weight_decompose(&a).unwrap();
        let mut sum = FunElem::zero();
        for (w, p) in &parts {
            // Each part is a simultaneous K-eigenvector with eigenvalue
            // q_i^{m_i} under the left action.
            for i in 0..alg.rs.rank {
                let acted = alg.left_action(GenOp::K(i, 1), p).unwrap();
                let scaled = p.scale(&qpow(&qpow(&alg.q, alg.rs.d[i]), w.0[i]));
                assert_eq!(acted, scaled);
            }
            sum = sum.add(p);
        }
        assert_eq!(sum, a);
        // The unit sits at weight zero; single coefficients are homogeneous.
        let one_parts = alg.left_weight_decompose(&alg.unit()).unwrap();
        assert_eq!(one_parts.len(), 1);
        assert!(one_parts.contains_key(&Weight(vec![0, 0])));
        let c = alg.matrix_coefficient(&Weight(vec![1, 0]), 2, 1).unwrap();
        let c_parts = alg.left_weight_decompose(&c).unwrap();
        assert_eq!(c_parts.len(), 1);
        let m = alg.module(&Weight(vec![1, 0])).unwrap();
        assert!(c_parts.contains_key(&m.space.weights[1]));
    }

    #[test]
    fn left_and_right_actions_commute() {
        let alg = a1();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_elem(&alg, &mut rng, &[Weight(vec![1]), Weight(vec![2])]);
        for x in [GenOp::E(0), GenOp::F(0), GenOp::K(0, 1)] {
            for y in [GenOp::E(0), GenOp::F(0), GenOp::K(0, -1)] {
                let lr = alg.left_action(x, &alg.right_action(y, &a).unwrap()).unwrap();
                let rl = alg.right_action(y, &alg.left_action(x, &a).unwrap()).unwrap();
                assert_eq!(lr, rl);
            }
        }
    }

    #[test]
    fn biinvariance_on_generator_words() {
        // (h⊗id)Δ(a) = h(a)·1 = (id⊗h)Δ(a), checked by evaluating both sides
        // on generator words of length ≤ 3. Δ(c_{u,v}) = Σ_w c_{u,w}⊗c_{w,v}.
        let alg = a1();
        let lam = Weight(vec![1]);
        let m = alg.module(&lam).unwrap();
        let dim = m.space.dim;
        let words: Vec<Vec<GenOp>> = vec![
            vec![],
            vec![GenOp::E(0)],
            vec![GenOp::K(0, 1)],
            vec![GenOp::F(0), GenOp::E(0)],
            vec![GenOp::E(0), GenOp::F(0), GenOp::K(0, -1)],
        ];
        let mut elems = vec![alg.unit()];
        for u in 0..dim {
            for v in 0..dim {
                elems.push(alg.matrix_coefficient(&lam, u, v).unwrap());
            }
        }
        for a in &elems {
            let h_a = alg.haar(a);
            for word in &words {
                let unit_val = alg.evaluate(&alg.unit(), word).unwrap();
                // (h⊗id)Δ(a)(X) = Σ_w h(c_{u,w})·c_{w,v}(X) per component.
                let mut left = Q::zero();
                let mut right = Q::zero();
                for (lambda, c) in &a.components {
                    let md = alg.module(lambda).unwrap();
                    for u in 0..md.space.dim {
                        for v in 0..md.space.dim {
                            if c.at(u, v).is_zero() {
                                continue;
                            }
                            for w in 0..md.space.dim {
                                let first = alg.matrix_coefficient(lambda, u, w).unwrap();
                                let second = alg.matrix_coefficient(lambda, w, v).unwrap();
                                left += c.at(u, v)
                                    * alg.haar(&first)
                                    * alg.evaluate(&second, word).unwrap();
                                right += c.at(u, v)
                                    * alg.evaluate(&first, word).unwrap()
                                    * alg.haar(&second);
                            }
                        }
                    }
                }
                assert_eq!(left, &h_a * &unit_val);
                assert_eq!(right, &h_a * &unit_val);
            }
        }
    }

    #[test]
    fn graded_equal_dimension_sub_spaces_coincide() {
        // If two graded right-invariant spans A ⊆ B have equal ranks per
        // grade, they are equal on that support.
        use crate::rat::RowSpace;
        let alg = a1();
        let lam = Weight(vec![1]);
        let dim = alg.module(&lam).unwrap().space.dim;
        let mut big = RowSpace::new(dim * dim);
        let mut small = RowSpace::new(dim * dim);
        for (u, v) in [(0, 0), (0, 1), (1, 0)] {
            let c = alg.matrix_coefficient(&lam, u, v).unwrap();
            big.insert(&c.flat_component(&lam, dim));
            if (u, v) != (1, 0) {
                small.insert(&c.flat_component(&lam, dim));
            }
        }
        // A combination inside the smaller span.
        let combo = alg
            .matrix_coefficient(&lam, 0, 0)
            .unwrap()
            .add(&alg.matrix_coefficient(&lam, 0, 1).unwrap().scale(&qz(3)));
        small.insert(&combo.flat_component(&lam, dim));
        assert!(small.contained_in(&big));
        assert!(small.rank() < big.rank());
        // Equal rank + containment forces equality.
        small.insert(
            &alg.matrix_coefficient(&lam, 1, 0)
                .unwrap()
                .flat_component(&lam, dim),
        );
        assert_eq!(small.rank(), big.rank());
        assert!(small.equals(&big));
    }
}
