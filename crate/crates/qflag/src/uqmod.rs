//! Finite-dimensional modules over the quantized enveloping algebra with exact
//! rational matrix actions.
//!
//! Conventions (generators E_i, F_i, K_i^{±1}, deformation parameter
//! 0 < q < 1, q_i = q^{d_i}):
//!   - K_i acts on the μ-weight space by q^{(μ,α_i)} = q_i^{m_i}.
//!   - [E_i, F_j] = δ_ij (K_i − K_i^{-1})/(q_i − q_i^{-1}).
//!   - Δ(K_i) = K_i⊗K_i, Δ(E_i) = E_i⊗K_i + 1⊗E_i,
//!     Δ(F_i) = F_i⊗1 + K_i^{-1}⊗F_i.
//!   - S(K_i) = K_i^{-1}, S(E_i) = −E_i K_i^{-1}, S(F_i) = −K_i F_i.
//!   - E_i^* = q_i^{-1} F_i K_i, F_i^* = q_i K_i^{-1} E_i.
//!
//! Basis vectors are kept orthogonal (not normalized) with respect to the
//! contravariant form, so the Gram matrix is a diagonal of positive rationals
//! and every computation stays exact.

use crate::rat::{qbinom, qint, qpow, Q, RatMat, SparseMat};
use crate::rootsys::{RootSystem, Weight};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

pub const DIM_CAP: usize = 200;

/// A finite-dimensional representation space with exact generator actions.
#[derive(Clone, Debug)]
pub struct RepSpace {
    pub q: Q,
    pub d: Vec<i64>,
    pub dim: usize,
    pub weights: Vec<Weight>,
    /// e[i] = matrix of E_i (columns indexed by source vector).
    pub e: Vec<SparseMat>,
    /// f[i] = matrix of F_i.
    pub f: Vec<SparseMat>,
    /// Diagonal of the contravariant Gram form, when the basis is orthogonal.
    pub gram: Option<Vec<Q>>,
}

impl RepSpace {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn qi(&self, i: usize) -> Q {
        qpow(&self.q, self.d[i])
    }

    /// Scalar of K_i^{pow} on basis vector idx: q_i^{m_i · pow}.
    pub fn k_scalar(&self, i: usize, idx: usize, pow: i64) -> Q {
        qpow(&self.qi(i), self.weights[idx].0[i] * pow)
    }

    pub fn apply_e(&self, i: usize, v: &[Q]) -> Vec<Q> {
        self.e[i].apply(v)
    }

    pub fn apply_f(&self, i: usize, v: &[Q]) -> Vec<Q> {
        self.f[i].apply(v)
    }

    pub fn apply_k(&self, i: usize, pow: i64, v: &[Q]) -> Vec<Q> {
        (0..self.dim)
            .map(|a| if v[a].is_zero() { Q::zero() } else { &v[a] * self.k_scalar(i, a, pow) })
            .collect()
    }

    /// Contravariant inner product (requires a diagonal Gram).
    pub fn form(&self, u: &[Q], v: &[Q]) -> Q {
        let g = self.gram.as_ref().expect("form requires a Gram diagonal");
        let mut acc = Q::zero();
        for a in 0..self.dim {
            if !u[a].is_zero() && !v[a].is_zero() {
                acc += &u[a] * &v[a] * &g[a];
            }
        }
        acc
    }

    /// Indices of the μ-weight subspace.
    pub fn weight_indices(&self, mu: &Weight) -> Vec<usize> {
        (0..self.dim).filter(|&a| &self.weights[a] == mu).collect()
    }

    pub fn character(&self) -> BTreeMap<Weight, usize> {
        let mut ch = BTreeMap::new();
        for w in &self.weights {
            *ch.entry(w.clone()).or_insert(0) += 1;
        }
        ch
    }
}

/// How a basis vector was produced: F_gen applied to `parent`, minus the given
/// corrections against earlier vectors of the same weight. Index 0 (the
/// highest-weight vector) carries a sentinel with parent = 0 and no generator.
#[derive(Clone, Debug)]
pub struct Recur {
    pub parent: usize,
    pub gen: Option<usize>,
    pub corrections: Vec<(usize, Q)>,
}

#[derive(Clone, Debug)]
pub struct UqModule {
    pub hw: Weight,
    pub space: RepSpace,
    pub recurrence: Vec<Recur>,
}

pub fn build_irreducible(rs: &RootSystem, q: &Q, lambda: &Weight) -> Result<UqModule> {
    if !lambda.is_dominant() {
        return Err(Error::Domain(format!("weight {:?} is not dominant", lambda.0)));
    }
    if q <= &Q::zero() || q >= &Q::one() {
        return Err(Error::Config("deformation parameter must satisfy 0 < q < 1".into()));
    }
    let r = rs.rank;
    let mut weights: Vec<Weight> = vec![lambda.clone()];
    let mut gram: Vec<Q> = vec![Q::one()];
    let mut e_cols: Vec<Vec<Vec<(usize, Q)>>> = vec![vec![Vec::new()]; r];
    let mut f_cols: Vec<Vec<Vec<(usize, Q)>>> = vec![vec![Vec::new()]; r];
    let mut recurrence: Vec<Recur> = vec![Recur { parent: 0, gen: None, corrections: vec![] }];
    let qi: Vec<Q> = (0..r).map(|i| qpow(q, rs.d[i])).collect();

    let apply_f_partial = |f_cols: &Vec<Vec<Vec<(usize, Q)>>>, i: usize, v: &[Q], out_dim: usize| {
        let mut out = vec![Q::zero(); out_dim];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (row, a) in &f_cols[i][j] {
                out[*row] += a * x;
            }
        }
        out
    };

    let mut level: Vec<usize> = vec![0];
    while !level.is_empty() {
        // Candidates F_i b grouped by target weight.
        let mut by_weight: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for &b in &level {
            for i in 0..r {
                let mu = weights[b].sub(&rs.simple_roots[i]);
                by_weight.entry(mu).or_default().push((b, i));
            }
        }
        let mut new_level: Vec<usize> = Vec::new();
        for (mu, cands) in by_weight {
            let nc = cands.len();
            // Pairwise form values of the candidates:
            // ⟨F_i b, F_j c⟩ = q_i^{1−ν_i}·⟨b, F_j(E_i c) + δ_ij [m_i(c)]_{q_i} c⟩
            // where ν = weight(b).
            let cur_dim = weights.len();
            let mut g = RatMat::zero(nc, nc);
            for (col, &(c, j)) in cands.iter().enumerate() {
                // For every i present among candidate generators, compute
                // E_i F_j c as a dense vector.
                for (row, &(b, i)) in cands.iter().enumerate() {
                    // ⟨F_i b, F_j c⟩
                    let mut val = Q::zero();
                    // F_j(E_i c) coefficient at b.
                    let mut eic = vec![Q::zero(); cur_dim];
                    for (rr, a) in &e_cols[i][c] {
                        eic[*rr] = a.clone();
                    }
                    let fjei = apply_f_partial(&f_cols, j, &eic, cur_dim);
                    val += &fjei[b];
                    if i == j && c == b {
                        val += qint(&qi[i], weights[c].0[i]);
                    }
                    if !val.is_zero() {
                        let nu_i = weights[b].0[i];
                        val *= qpow(&qi[i], 1 - nu_i) * &gram[b];
                    }
                    *g.at_mut(row, col) = val;
                }
            }
            debug_assert_eq!(g, g.transpose(), "contravariant form must be symmetric");
            // Gram–Schmidt without normalization over the candidate space.
            let inner = |x: &[Q], y: &[Q], g: &RatMat| -> Q {
                let gy = g.apply(y);
                x.iter().zip(&gy).map(|(a, b)| a * b).sum()
            };
            let mut accepted: Vec<(Vec<Q>, Q, usize)> = Vec::new(); // (coeffs, norm, global idx)
            let mut f_targets: Vec<Vec<(usize, Q)>> = vec![Vec::new(); nc];
            for (t, &(b, i)) in cands.iter().enumerate() {
                let mut rvec = vec![Q::zero(); nc];
                rvec[t] = Q::one();
                let mut corrections: Vec<(usize, Q)> = Vec::new();
                let mut coords: Vec<(usize, Q)> = Vec::new();
                for (u, norm, gid) in &accepted {
                    let mut coef = inner(&rvec, u, &g);
                    coef /= norm;
                    if !coef.is_zero() {
                        for (rv, uv) in rvec.iter_mut().zip(u) {
                            *rv -= &coef * uv;
                        }
                        corrections.push((*gid, coef.clone()));
                    }
                    coords.push((*gid, coef));
                }
                let norm = inner(&rvec, &rvec, &g);
                if norm.is_zero() {
                    // F_i b lies in the span of earlier vectors (or the kernel).
                    f_targets[t] = coords.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    continue;
                }
                debug_assert!(norm.is_positive(), "contravariant form must be positive");
                let gid = weights.len();
                if gid >= DIM_CAP {
                    return Err(Error::Overflow(format!(
                        "module dimension exceeds cap {DIM_CAP}"
                    )));
                }
                weights.push(mu.clone());
                gram.push(norm.clone());
                recurrence.push(Recur { parent: b, gen: Some(i), corrections });
                for i2 in 0..r {
                    e_cols[i2].push(Vec::new());
                    f_cols[i2].push(Vec::new());
                }
                let mut coords: Vec<(usize, Q)> =
                    coords.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                coords.push((gid, Q::one()));
                f_targets[t] = coords;
                accepted.push((rvec, norm, gid));
                new_level.push(gid);
            }
            // F columns for the level vectors.
            for (t, &(b, i)) in cands.iter().enumerate() {
                f_cols[i][b] = f_targets[t].clone();
            }
            // E columns for the new vectors: each u = Σ_t u[t]·F_{i_t} b_t and
            // E_m F_i b = F_i(E_m b) + δ_mi [m_m(b)]_{q_m} b.
            let cur_dim = weights.len();
            for (u, _, gid) in &accepted {
                for m in 0..r {
                    let mut ve = vec![Q::zero(); cur_dim];
                    for (t, coeff) in u.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let (b, i) = cands[t];
                        let mut emb = vec![Q::zero(); cur_dim];
                        for (rr, a) in &e_cols[m][b] {
                            emb[*rr] = a.clone();
                        }
                        let fi_emb = apply_f_partial(&f_cols, i, &emb, cur_dim);
                        for (vv, x) in ve.iter_mut().zip(&fi_emb) {
                            *vv += coeff * x;
                        }
                        if m == i {
                            ve[b] += coeff * qint(&qi[m], weights[b].0[m]);
                        }
                    }
                    e_cols[m][*gid] = ve
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect();
                }
            }
        }
        level = new_level;
    }

    let dim = weights.len();
    let pack = |cols: Vec<Vec<Vec<(usize, Q)>>>| -> Vec<SparseMat> {
        cols.into_iter()
            .map(|c| {
                let mut m = SparseMat::zero(dim, dim);
                for (j, col) in c.into_iter().enumerate() {
                    m.set_col(j, col);
                }
                m
            })
            .collect()
    };
    Ok(UqModule {
        hw: lambda.clone(),
        space: RepSpace {
            q: q.clone(),
            d: rs.d.clone(),
            dim,
            weights,
            e: pack(e_cols),
            f: pack(f_cols),
            gram: Some(gram),
        },
        recurrence,
    })
}

// ---------------------------------------------------------------------------
// Relation and adjointness checks
// ---------------------------------------------------------------------------

/// E_i adjoint to q_i^{-1} F_i K_i with respect to the contravariant form.
pub fn star_adjointness_check(space: &RepSpace) -> bool {
    let Some(g) = space.gram.as_ref() else {
        return false;
    };
    for i in 0..space.rank() {
        let qi = space.qi(i);
        for a in 0..space.dim {
            for b in 0..space.dim {
                // ⟨E_i u_a, u_b⟩ = (E_i)_{ba} g_b
                let lhs = space.e[i].get(b, a) * &g[b];
                // ⟨u_a, q_i^{-1} F_i K_i u_b⟩ = q_i^{m_i(b)-1}(F_i)_{ab} g_a
                let rhs = qpow(&qi, space.weights[b].0[i] - 1)
                    * space.f[i].get(a, b)
                    * &g[a];
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// [E_i, F_j] = δ_ij (K_i − K_i^{-1})/(q_i − q_i^{-1}) as matrices.
pub fn commutator_check(space: &RepSpace) -> bool {
    let r = space.rank();
    for i in 0..r {
        for j in 0..r {
            for a in 0..space.dim {
                let mut v = vec![Q::zero(); space.dim];
                v[a] = Q::one();
                let ef = space.apply_e(i, &space.apply_f(j, &v));
                let fe = space.apply_f(j, &space.apply_e(i, &v));
                let mut comm: Vec<Q> =
                    ef.iter().zip(&fe).map(|(x, y)| x - y).collect();
                if i == j {
                    let m = space.weights[a].0[i];
                    comm[a] -= qint(&space.qi(i), m);
                }
                if comm.iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Quantum Serre relations in both E and F.
pub fn serre_check(rs: &RootSystem, space: &RepSpace) -> bool {
    let r = space.rank();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            // Exponent 1 − 2(α_i,α_j)/(α_i,α_i), the Cartan entry a_ji here.
            let n = 1 - rs.cartan[j][i];
            let qi = space.qi(i);
            for (ops, name) in [(&space.e, "e"), (&space.f, "f")] {
                let _ = name;
                for a in 0..space.dim {
                    let mut v0 = vec![Q::zero(); space.dim];
                    v0[a] = Q::one();
                    let mut total = vec![Q::zero(); space.dim];
                    for k in 0..=n {
                        let mut v = v0.clone();
                        for _ in 0..(n - k) {
                            v = ops[i].apply(&v);
                        }
                        v = ops[j].apply(&v);
                        for _ in 0..k {
                            v = ops[i].apply(&v);
                        }
                        let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
                        let c = sign * qbinom(&qi, n, k);
                        for (t, x) in total.iter_mut().zip(&v) {
                            *t += &c * x;
                        }
                    }
                    if total.iter().any(|x| !x.is_zero()) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Tensor products and duals
// ---------------------------------------------------------------------------

/// Tensor product with the comultiplication action; index (a,b) ↦ a·dim2 + b.
pub fn tensor(m1: &RepSpace, m2: &RepSpace) -> RepSpace {
    assert_eq!(m1.q, m2.q);
    assert_eq!(m1.d, m2.d);
    let r = m1.rank();
    let dim = m1.dim * m2.dim;
    let id1 = SparseMat::from_diag(&vec![Q::one(); m1.dim]);
    let id2 = SparseMat::from_diag(&vec![Q::one(); m2.dim]);
    let mut e = Vec::with_capacity(r);
    let mut f = Vec::with_capacity(r);
    for i in 0..r {
        let k2: Vec<Q> = (0..m2.dim).map(|b| m2.k_scalar(i, b, 1)).collect();
        let k1_inv: Vec<Q> = (0..m1.dim).map(|a| m1.k_scalar(i, a, -1)).collect();
        // Δ(E_i) = E_i ⊗ K_i + 1 ⊗ E_i
        e.push(
            m1.e[i]
                .kron(&SparseMat::from_diag(&k2))
                .add(&id1.kron(&m2.e[i])),
        );
        // Δ(F_i) = F_i ⊗ 1 + K_i^{-1} ⊗ F_i
        f.push(
            m1.f[i]
                .kron(&id2)
                .add(&SparseMat::from_diag(&k1_inv).kron(&m2.f[i])),
        );
    }
    let weights: Vec<Weight> = (0..m1.dim)
        .flat_map(|a| {
            let w1 = m1.weights[a].clone();
            (0..m2.dim).map(move |b| w1.add(&m2.weights[b])).collect::<Vec<_>>()
        })
        .collect();
    let gram = match (m1.gram.as_ref(), m2.gram.as_ref()) {
        (Some(g1), Some(g2)) => Some(
            (0..m1.dim)
                .flat_map(|a| (0..m2.dim).map(|b| &g1[a] * &g2[b]).collect::<Vec<_>>())
                .collect(),
        ),
        _ => None,
    };
    RepSpace { q: m1.q.clone(), d: m1.d.clone(), dim, weights, e, f, gram }
}

/// Dual action on functionals: (X·f)(v) = f(S(X)·v), so the matrix of X on the
/// dual basis is the transpose of the matrix of S(X).
pub fn dual(space: &RepSpace) -> RepSpace {
    let r = space.rank();
    let mut e = Vec::with_capacity(r);
    let mut f = Vec::with_capacity(r);
    for i in 0..r {
        // S(E_i) = −E_i K_i^{-1}: scale columns by q_i^{-m_i}, negate, transpose.
        let k_inv: Vec<Q> = (0..space.dim).map(|a| space.k_scalar(i, a, -1)).collect();
        e.push(space.e[i].scale_cols(&k_inv).neg().transpose());
        // S(F_i) = −K_i F_i: scale rows by q_i^{m_i}, negate, transpose.
        let k_row: Vec<Q> = (0..space.dim).map(|a| space.k_scalar(i, a, 1)).collect();
        f.push(space.f[i].scale_rows(&k_row).neg().transpose());
    }
    RepSpace {
        q: space.q.clone(),
        d: space.d.clone(),
        dim: space.dim,
        weights: space.weights.iter().map(|w| w.neg()).collect(),
        e,
        f,
        gram: None,
    }
}

/// Intertwiner from the irreducible with highest weight −w₀λ onto the dual of
/// V(λ): columns express the image of each basis vector of `source` in the
/// dual basis of `m`. Normalized so the first nonzero coordinate of the image
/// of the highest-weight vector is 1.
pub fn canonical_dual_iso(m: &UqModule, source: &UqModule) -> Result<RatMat> {
    let dual_space = dual(&m.space);
    if source.space.dim != m.space.dim {
        return Err(Error::Internal("dual intertwiner dimension mismatch".into()));
    }
    // Highest-weight vector of the dual space at weight hw(source):
    // nullspace of every E_i restricted to that weight space.
    let idxs = dual_space.weight_indices(&source.hw);
    let mut sys_rows: Vec<Vec<Q>> = Vec::new();
    for i in 0..dual_space.rank() {
        for out in 0..dual_space.dim {
            let mut row = Vec::with_capacity(idxs.len());
            for &a in &idxs {
                row.push(dual_space.e[i].get(out, a));
            }
            sys_rows.push(row);
        }
    }
    let sys = RatMat::from_rows(sys_rows);
    let ns = sys.nullspace();
    if ns.len() != 1 {
        return Err(Error::Internal(format!(
            "dual highest-weight space has dimension {}",
            ns.len()
        )));
    }
    let mut hw_vec = vec![Q::zero(); dual_space.dim];
    let lead = ns[0].iter().position(|x| !x.is_zero()).unwrap();
    let scale = ns[0][lead].recip();
    for (k, &a) in idxs.iter().enumerate() {
        hw_vec[a] = &ns[0][k] * &scale;
    }
    // Transport along the recurrence of the source module.
    let mut psi = RatMat::zero(m.space.dim, source.space.dim);
    for (i, x) in hw_vec.iter().enumerate() {
        *psi.at_mut(i, 0) = x.clone();
    }
    for (col, rec) in source.recurrence.iter().enumerate().skip(1) {
        let gen = rec.gen.expect("non-root recurrence entry");
        let parent = psi.col(rec.parent);
        let mut img = dual_space.apply_f(gen, &parent);
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
    Ok(psi)
}

// ---------------------------------------------------------------------------
// Subspace extraction
// ---------------------------------------------------------------------------

/// Vectors annihilated by every E_i, grouped by weight.
pub fn highest_weight_vectors(space: &RepSpace) -> Vec<(Weight, Vec<Vec<Q>>)> {
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (a, w) in space.weights.iter().enumerate() {
        by_weight.entry(w.clone()).or_default().push(a);
    }
    let mut out = Vec::new();
    for (w, idxs) in by_weight {
        let mut rows = Vec::new();
        for i in 0..space.rank() {
            for target in 0..space.dim {
                let row: Vec<Q> = idxs.iter().map(|&a| space.e[i].get(target, a)).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let vecs = if rows.is_empty() {
            // No E action out of this weight space: everything is highest.
            (0..idxs.len())
                .map(|k| {
                    let mut v = vec![Q::zero(); idxs.len()];
                    v[k] = Q::one();
                    v
                })
                .collect()
        } else {
            RatMat::from_rows(rows).nullspace()
        };
        if vecs.is_empty() {
            continue;
        }
        let lifted: Vec<Vec<Q>> = vecs
            .into_iter()
            .map(|v| {
                let mut full = vec![Q::zero(); space.dim];
                for (k, &a) in idxs.iter().enumerate() {
                    full[a] = v[k].clone();
                }
                full
            })
            .collect();
        out.push((w, lifted));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantMode {
    /// E_j v = F_j v = 0 for j ∈ S and K_i v = v for every i.
    FullTorus,
    /// E_j v = F_j v = 0 for j ∈ S and K_j v = v for j ∈ S only.
    BlockTorus,
}

/// Basis of vectors fixed by the subalgebra selected by S.
pub fn invariant_vectors(space: &RepSpace, s: &[usize], mode: InvariantMode) -> Vec<Vec<Q>> {
    let idxs: Vec<usize> = (0..space.dim)
        .filter(|&a| match mode {
            InvariantMode::FullTorus => space.weights[a].is_zero(),
            InvariantMode::BlockTorus => s.iter().all(|&j| space.weights[a].0[j] == 0),
        })
        .collect();
    if idxs.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for &j in s {
        for mats in [&space.e, &space.f] {
            for target in 0..space.dim {
                let row: Vec<Q> = idxs.iter().map(|&a| mats[j].get(target, a)).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let vecs = if rows.is_empty() {
        (0..idxs.len())
            .map(|k| {
                let mut v = vec![Q::zero(); idxs.len()];
                v[k] = Q::one();
                v
            })
            .collect()
    } else {
        RatMat::from_rows(rows).nullspace()
    };
    vecs.into_iter()
        .map(|v| {
            let mut full = vec![Q::zero(); space.dim];
            for (k, &a) in idxs.iter().enumerate() {
                full[a] = v[k].clone();
            }
            full
        })
        .collect()
}

/// Decomposition under the rank-one subalgebra of index i into strings
/// v, F_i v, F_i² v, …; returns (twice-spin, orthogonal string basis).
pub fn sl2_strings(space: &RepSpace, i: usize) -> Vec<(i64, Vec<Vec<Q>>)> {
    // String tops: per weight space, kernel of E_i.
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (a, w) in space.weights.iter().enumerate() {
        by_weight.entry(w.clone()).or_default().push(a);
    }
    let mut out = Vec::new();
    for (w, idxs) in by_weight {
        let mut rows = Vec::new();
        for target in 0..space.dim {
            let row: Vec<Q> = idxs.iter().map(|&a| space.e[i].get(target, a)).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
        let tops = if rows.is_empty() {
            (0..idxs.len())
                .map(|k| {
                    let mut v = vec![Q::zero(); idxs.len()];
                    v[k] = Q::one();
                    v
                })
                .collect()
        } else {
            RatMat::from_rows(rows).nullspace()
        };
        let twice_spin = w.0[i];
        for top in tops {
            let mut v = vec![Q::zero(); space.dim];
            for (k, &a) in idxs.iter().enumerate() {
                v[a] = top[k].clone();
            }
            let mut string = vec![v.clone()];
            loop {
                v = space.apply_f(i, &v);
                if v.iter().all(|x| x.is_zero()) {
                    break;
                }
                string.push(v.clone());
            }
            debug_assert_eq!(string.len() as i64, twice_spin + 1);
            out.push((twice_spin, string));
        }
    }
    out
}
