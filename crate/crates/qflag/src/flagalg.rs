//! Quantized flag manifold algebras: Plücker generator systems, the graded
//! spans they generate, invariant components, and rank-comparison reports.
//!
//! Every span built here factors as (full row leg) ⊗ (column-leg subspace):
//! generators are matrix coefficients with a fixed column vector, so a product
//! of generators is a tensor matrix coefficient whose column leg is a fixed
//! decomposable vector while the row leg ranges over everything. A graded span
//! is therefore stored as, per irreducible component and left weight, the span
//! of projected column-leg vectors; the corresponding coefficient space is
//! "all matrices whose rows lie in that span".

use crate::charutil;
use crate::funalg::{Algebra, FunElem};
use crate::rat::{Q, RowSpace};
use crate::rootsys::Weight;
use crate::{Error, Result};
use num::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct FlagWeight {
    pub lambda: Weight,
    pub s: Vec<usize>,
}

impl FlagWeight {
    pub fn new(rank: usize, lambda: Weight, mut s: Vec<usize>) -> Result<FlagWeight> {
        s.sort_unstable();
        s.dedup();
        if lambda.0.len() != rank {
            return Err(Error::Config("weight rank mismatch".into()));
        }
        if s.iter().any(|&i| i >= rank) {
            return Err(Error::Config("parabolic index out of range".into()));
        }
        for i in 0..rank {
            let m = lambda.0[i];
            if s.contains(&i) {
                if m != 0 {
                    return Err(Error::Config(format!(
                        "coordinate {i} must vanish on the parabolic set"
                    )));
                }
            } else if m <= 0 {
                return Err(Error::Config(format!(
                    "coordinate {i} must be positive off the parabolic set"
                )));
            }
        }
        Ok(FlagWeight { lambda, s })
    }
}

/// One tensor leg of a generator: a fixed column vector in a named module,
/// homogeneous of the given weight.
#[derive(Clone, Debug)]
pub struct Leg {
    pub module: Weight,
    pub vec: Vec<Q>,
    pub weight: Weight,
}

/// A generator block appends its legs in order; a degree-d element of the
/// generated algebra uses d blocks.
#[derive(Clone, Debug)]
pub struct GenBlock {
    pub legs: Vec<Leg>,
}

/// Per irreducible component λ and left weight, the span of column-leg vectors.
#[derive(Clone, Debug)]
pub struct GradedSpan {
    pub degree: usize,
    pub pieces: BTreeMap<Weight, BTreeMap<Weight, RowSpace>>,
}

impl GradedSpan {
    pub fn column_rank(&self, lambda: &Weight) -> usize {
        self.pieces
            .get(lambda)
            .map(|m| m.values().map(|r| r.rank()).sum())
            .unwrap_or(0)
    }

    /// Dimension of the coefficient space: dim V(λ) row choices per column.
    pub fn rank_at(&self, alg: &Algebra, lambda: &Weight) -> Result<usize> {
        let dim = alg.module(lambda)?.space.dim;
        Ok(dim * self.column_rank(lambda))
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Holomorphic generators f_Λ = c_{u, v_Λ} (one per dual-basis functional) and
/// their star images.
pub fn plucker_generators(alg: &Algebra, fw: &FlagWeight) -> Result<(Vec<FunElem>, Vec<FunElem>)> {
    let m = alg.module(&fw.lambda)?;
    let mut hol = Vec::with_capacity(m.space.dim);
    let mut anti = Vec::with_capacity(m.space.dim);
    for u in 0..m.space.dim {
        let f = alg.matrix_coefficient(&fw.lambda, u, 0)?;
        anti.push(alg.star(&f)?);
        hol.push(f);
    }
    Ok((hol, anti))
}

/// Leg of the holomorphic generator family: the highest-weight column of V(Λ).
pub fn holomorphic_leg(alg: &Algebra, lambda: &Weight) -> Result<Leg> {
    let m = alg.module(lambda)?;
    let mut vec = vec![Q::zero(); m.space.dim];
    vec[0] = Q::one();
    Ok(Leg { module: lambda.clone(), vec, weight: lambda.clone() })
}

/// Leg of the antiholomorphic family: star maps c_{u,0} of V(Λ) into
/// coefficients of V(−w₀Λ) with fixed column vector Ψ^{-1}·(lowest functional),
/// homogeneous of weight −Λ.
pub fn antiholomorphic_leg(alg: &Algebra, lambda: &Weight) -> Result<Leg> {
    let sd = alg.star_data(lambda)?;
    let mp = alg.module(&sd.lambda_prime)?;
    // Column r of Ψ^{-1} at index 0: row 0 of the stored transpose.
    let vec: Vec<Q> = (0..mp.space.dim).map(|r| sd.psi_inv_t.at(0, r).clone()).collect();
    let weight = lambda.neg();
    for (r, x) in vec.iter().enumerate() {
        if !x.is_zero() && mp.space.weights[r] != weight {
            return Err(Error::Internal("antiholomorphic leg not homogeneous".into()));
        }
    }
    Ok(Leg { module: sd.lambda_prime.clone(), vec, weight })
}

/// The degree-1 block of the flag algebra: a holomorphic leg followed by an
/// antiholomorphic one (products f_Λ·g_Λ*).
pub fn flag_block(alg: &Algebra, lambda: &Weight) -> Result<GenBlock> {
    Ok(GenBlock {
        legs: vec![holomorphic_leg(alg, lambda)?, antiholomorphic_leg(alg, lambda)?],
    })
}

// ---------------------------------------------------------------------------
// Span generation by iterated tensor projection
// ---------------------------------------------------------------------------

/// Span of products of up to `degree` generator blocks (in every order),
/// computed by projecting the fixed column legs through iterated
/// tensor-product decompositions.
pub fn generated_span(alg: &Algebra, blocks: &[GenBlock], degree: usize) -> Result<GradedSpan> {
    let rank = alg.rs.rank;
    let zero = Weight::zero(rank);
    let mut span = GradedSpan { degree, pieces: BTreeMap::new() };
    let insert = |span: &mut GradedSpan, nu: &Weight, wt: &Weight, v: &[Q]| {
        span.pieces
            .entry(nu.clone())
            .or_default()
            .entry(wt.clone())
            .or_insert_with(|| RowSpace::new(v.len()))
            .insert(v);
    };
    // Degree 0: the unit.
    insert(&mut span, &zero, &zero, &[Q::one()]);
    // States: per (component, accumulated left weight) a basis of reachable
    // column-leg vectors.
    let mut states: BTreeMap<(Weight, Weight), RowSpace> = BTreeMap::new();
    states.insert((zero.clone(), zero.clone()), {
        let mut r = RowSpace::new(1);
        r.insert(&[Q::one()]);
        r
    });
    for _ in 0..degree {
        let mut next: BTreeMap<(Weight, Weight), RowSpace> = BTreeMap::new();
        for ((nu, wt), basis) in &states {
            for block in blocks {
                // Extend every basis vector by the block's legs in order.
                let mut cur: Vec<(Weight, Weight, Vec<Q>)> = basis
                    .basis()
                    .map(|v| (nu.clone(), wt.clone(), v.clone()))
                    .collect();
                for leg in &block.legs {
                    let mut stage: Vec<(Weight, Weight, Vec<Q>)> = Vec::new();
                    for (nu_c, wt_c, x) in &cur {
                        let pd = alg.pair(nu_c, &leg.module)?;
                        let dim2 = leg.vec.len();
                        // x ⊗ leg.vec in the tensor basis order.
                        let mut xy = vec![Q::zero(); pd.dim_t];
                        for (a, xa) in x.iter().enumerate() {
                            if xa.is_zero() {
                                continue;
                            }
                            for (b, yb) in leg.vec.iter().enumerate() {
                                if !yb.is_zero() {
                                    xy[a * dim2 + b] = xa * yb;
                                }
                            }
                        }
                        for comp in &pd.components {
                            let proj = comp.d.apply(&xy);
                            if proj.iter().any(|c| !c.is_zero()) {
                                stage.push((
                                    comp.nu.clone(),
                                    wt_c.add(&leg.weight),
                                    proj,
                                ));
                            }
                        }
                    }
                    cur = stage;
                }
                for (nu_c, wt_c, v) in cur {
                    next.entry((nu_c, wt_c))
                        .or_insert_with(|| RowSpace::new(v.len()))
                        .insert(&v);
                }
            }
        }
        for ((nu, wt), basis) in &next {
            for v in basis.basis() {
                insert(&mut span, nu, wt, v);
            }
        }
        states = next;
    }
    Ok(span)
}

/// Degree-1 span of all products f_Λ·g_Λ*, computed the direct way (explicit
/// algebra products, flattened coefficient matrices per component). Used to
/// cross-check the projection route.
pub fn a_lambda_degree1(alg: &Algebra, fw: &FlagWeight) -> Result<BTreeMap<Weight, RowSpace>> {
    let (hol, anti) = plucker_generators(alg, fw)?;
    let mut out: BTreeMap<Weight, RowSpace> = BTreeMap::new();
    for f in &hol {
        for g in &anti {
            let p = alg.multiply(f, g)?;
            for (nu, c) in &p.components {
                let dim = alg.module(nu)?.space.dim;
                out.entry(nu.clone())
                    .or_insert_with(|| RowSpace::new(dim * dim))
                    .insert(&c.data);
            }
        }
    }
    out.retain(|_, r| r.rank() > 0);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Invariant components
// ---------------------------------------------------------------------------

pub use crate::uqmod::InvariantMode;

/// The λ-component of the invariant subalgebra: matrices whose rows lie in the
/// span of invariant vectors, returned per left weight.
pub fn invariant_component(
    alg: &Algebra,
    lambda: &Weight,
    s: &[usize],
    mode: InvariantMode,
) -> Result<BTreeMap<Weight, RowSpace>> {
    let m = alg.module(lambda)?;
    let vecs = crate::uqmod::invariant_vectors(&m.space, s, mode);
    let mut out: BTreeMap<Weight, RowSpace> = BTreeMap::new();
    for v in vecs {
        // Split into homogeneous pieces; each piece is itself invariant.
        let mut by_weight: BTreeMap<Weight, Vec<Q>> = BTreeMap::new();
        for (idx, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            by_weight
                .entry(m.space.weights[idx].clone())
                .or_insert_with(|| vec![Q::zero(); m.space.dim])[idx] = x.clone();
        }
        for (w, piece) in by_weight {
            out.entry(w)
                .or_insert_with(|| RowSpace::new(m.space.dim))
                .insert(&piece);
        }
    }
    Ok(out)
}

pub fn invariant_dim(
    alg: &Algebra,
    lambda: &Weight,
    s: &[usize],
    mode: InvariantMode,
) -> Result<usize> {
    let dim = alg.module(lambda)?.space.dim;
    let inv = invariant_component(alg, lambda, s, mode)?;
    Ok(dim * inv.values().map(|r| r.rank()).sum::<usize>())
}

/// Span of the products f_λ·g_λ* for one weight λ supported off S.
pub fn factorized_components(alg: &Algebra, s: &[usize], lambda: &Weight) -> Result<GradedSpan> {
    if !lambda.is_dominant() {
        return Err(Error::Domain("weight must be dominant".into()));
    }
    if s.iter().any(|&j| lambda.0[j] != 0) {
        return Err(Error::Domain("weight must be supported off the parabolic set".into()));
    }
    let block = flag_block(alg, lambda)?;
    generated_span(alg, &[block], 1)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub lambda: Vec<i64>,
    pub left_weight: Option<Vec<i64>>,
    pub rank_generated: usize,
    pub dim_invariant: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub claim: String,
    pub degree: usize,
    pub pass: bool,
    pub rows: Vec<RowReport>,
    /// Components that would first appear at degree+1; reported, not failed.
    pub unreached: Vec<Vec<i64>>,
}

/// Dominant weights reachable as components of mixed products with k factors
/// of the coordinate module and m of its dual, k + m ≤ d per slot d
/// (character oracle, independent of the span engine).
fn reachable_leg_weights(
    alg: &Algebra,
    lambda: &Weight,
    d: usize,
) -> Result<Vec<BTreeSet<Weight>>> {
    let lam_prime = alg.rs.dual_highest_weight(&alg.wg, lambda);
    let c_h = charutil::weight_multiplicities(&alg.rs, lambda)?;
    let c_a = charutil::weight_multiplicities(&alg.rs, &lam_prime)?;
    // powers[k] = char(V(Λ))^k, dual_powers[m] = char(V(Λ'))^m.
    let mut unit: charutil::CharMap = BTreeMap::new();
    unit.insert(Weight::zero(alg.rs.rank), 1);
    let mut powers = vec![unit.clone()];
    let mut dual_powers = vec![unit];
    for k in 1..=d {
        powers.push(charutil::char_product(&powers[k - 1], &c_h));
        dual_powers.push(charutil::char_product(&dual_powers[k - 1], &c_a));
    }
    let mut per_degree = Vec::with_capacity(d + 1);
    for deg in 0..=d {
        let mut set = BTreeSet::new();
        for k in 0..=deg {
            let prod = charutil::char_product(&powers[k], &dual_powers[deg - k]);
            set.extend(
                charutil::decompose_character(&alg.rs, &prod)?
                    .into_iter()
                    .map(|(w, _)| w),
            );
        }
        per_degree.push(set);
    }
    Ok(per_degree)
}

/// Rank comparison of the span of products of ≤ `degree` coordinate pairs
/// (one holomorphic and one antiholomorphic Plücker coordinate each) against
/// the full invariant components. Equality is asserted per λ reachable with
/// at most `degree` individual coordinate factors (k holomorphic plus m
/// antiholomorphic, k + m ≤ degree) — one pair depth less than the span, so
/// each checked component has had an extra degree to fill its multiplicity
/// space. Components the span reaches beyond that window are reported as
/// unreached, not failed.
pub fn verify_theorem_algthm(alg: &Algebra, fw: &FlagWeight, degree: usize) -> Result<VerifyReport> {
    let block = flag_block(alg, &fw.lambda)?;
    let span = generated_span(alg, &[block], degree)?;
    let per_legs = reachable_leg_weights(alg, &fw.lambda, degree)?;
    let mut checked: BTreeSet<Weight> = BTreeSet::new();
    for set in &per_legs {
        checked.extend(set.iter().cloned());
    }
    let mut rows = Vec::new();
    let mut pass = true;
    for lam in &checked {
        let rank_generated = span.rank_at(alg, lam)?;
        let dim_invariant = invariant_dim(alg, lam, &fw.s, InvariantMode::FullTorus)?;
        let ok = rank_generated == dim_invariant;
        pass &= ok;
        rows.push(RowReport {
            lambda: lam.0.clone(),
            left_weight: None,
            rank_generated,
            dim_invariant,
            ok,
        });
    }
    // Everything the span itself can reach (degree balanced pairs) but whose
    // multiplicity spaces have not had the extra stabilization degree.
    let span_reach = reachable_leg_weights(alg, &fw.lambda, 2 * degree)?;
    let mut unreached: BTreeSet<Weight> = BTreeSet::new();
    for set in &span_reach {
        unreached.extend(set.iter().filter(|w| !checked.contains(*w)).cloned());
    }
    Ok(VerifyReport {
        claim: "plucker-generation".into(),
        degree,
        pass,
        rows,
        unreached: unreached.into_iter().map(|w| w.0).collect(),
    })
}

/// Rank comparison for the block-torus invariant algebra: generated by the
/// coefficients f_{ϖ_k} and their stars for k off S, compared per reachable
/// (λ, left weight) pair against the block-torus invariant components.
pub fn verify_theorem_ss_a(alg: &Algebra, s: &[usize], degree: usize) -> Result<VerifyReport> {
    let rank = alg.rs.rank;
    let off: Vec<usize> = (0..rank).filter(|i| !s.contains(i)).collect();
    let mut blocks = Vec::new();
    // Leg oracle data: (character, left weight) per generator family.
    let mut leg_chars: Vec<(charutil::CharMap, Weight)> = Vec::new();
    for &k in &off {
        let pk = Weight::fundamental(rank, k);
        blocks.push(GenBlock { legs: vec![holomorphic_leg(alg, &pk)?] });
        blocks.push(GenBlock { legs: vec![antiholomorphic_leg(alg, &pk)?] });
        let ch = charutil::weight_multiplicities(&alg.rs, &pk)?;
        let pk_prime = alg.rs.dual_highest_weight(&alg.wg, &pk);
        let ch_prime = charutil::weight_multiplicities(&alg.rs, &pk_prime)?;
        leg_chars.push((ch, pk.clone()));
        leg_chars.push((ch_prime, pk.neg()));
    }
    let span = generated_span(alg, &blocks, degree)?;
    // Reachable (λ, left weight) pairs: multisets of legs up to the degree.
    let zero = Weight::zero(rank);
    let mut reachable: BTreeSet<(Weight, Weight)> = BTreeSet::new();
    let mut frontier: BTreeSet<Weight> = BTreeSet::new();
    let mut level: Vec<(charutil::CharMap, Weight, usize)> = vec![{
        let mut ch = BTreeMap::new();
        ch.insert(zero.clone(), 1);
        (ch, zero.clone(), 0)
    }];
    reachable.insert((zero.clone(), zero.clone()));
    for depth in 0..=degree {
        let mut next = Vec::new();
        for (ch, wt, start) in &level {
            for (li, (lch, lwt)) in leg_chars.iter().enumerate().skip(*start) {
                let product = charutil::char_product(ch, lch);
                let wt2 = wt.add(lwt);
                let lams = charutil::decompose_character(&alg.rs, &product)?;
                for (lam, _) in &lams {
                    if depth + 1 <= degree {
                        reachable.insert((lam.clone(), wt2.clone()));
                    } else {
                        frontier.insert(lam.clone());
                    }
                }
                next.push((product, wt2, li));
            }
        }
        level = next;
    }
    let mut rows = Vec::new();
    let mut pass = true;
    // Group reachable pairs by λ, fetch invariant pieces once per λ.
    let mut by_lambda: BTreeMap<Weight, Vec<Weight>> = BTreeMap::new();
    for (lam, wt) in &reachable {
        by_lambda.entry(lam.clone()).or_default().push(wt.clone());
    }
    for (lam, wts) in &by_lambda {
        let dim = alg.module(lam)?.space.dim;
        let inv = invariant_component(alg, lam, s, InvariantMode::BlockTorus)?;
        for wt in wts {
            let rank_generated = dim
                * span
                    .pieces
                    .get(lam)
                    .and_then(|m| m.get(wt))
                    .map(|r| r.rank())
                    .unwrap_or(0);
            let dim_invariant = dim * inv.get(wt).map(|r| r.rank()).unwrap_or(0);
            let ok = rank_generated == dim_invariant;
            pass &= ok;
            rows.push(RowReport {
                lambda: lam.0.clone(),
                left_weight: Some(wt.0.clone()),
                rank_generated,
                dim_invariant,
                ok,
            });
        }
    }
    let reached_lams: BTreeSet<&Weight> = by_lambda.keys().collect();
    let unreached: Vec<Vec<i64>> = frontier
        .iter()
        .filter(|w| !reached_lams.contains(w))
        .map(|w| w.0.clone())
        .collect();
    Ok(VerifyReport {
        claim: "parabolic-generation".into(),
        degree,
        pass,
        rows,
        unreached,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProperReport {
    pub claim: String,
    pub applicable: bool,
    /// True when a left weight occurs in the invariant algebra outside the
    /// lattice generated by ±Λ.
    pub proper: bool,
    /// (λ, left weight) witnesses.
    pub witnesses: Vec<(Vec<i64>, Vec<i64>)>,
    pub searched: Vec<Vec<i64>>,
}

fn in_z_lambda(lambda: &Weight, mu: &Weight) -> bool {
    if mu.is_zero() {
        return true;
    }
    if lambda.is_zero() {
        return false;
    }
    // mu = n·lambda for an integer n?
    let Some(k) = (0..lambda.0.len()).find(|&i| lambda.0[i] != 0) else {
        return false;
    };
    if mu.0[k] % lambda.0[k] != 0 {
        return false;
    }
    let n = mu.0[k] / lambda.0[k];
    (0..lambda.0.len()).all(|i| mu.0[i] == n * lambda.0[i])
}

/// Compare the left weights reachable from ±Λ against the left weights present
/// in the block-torus invariant algebra, over dominant λ with coordinate sum
/// bounded by `max_sum`.
pub fn check_a0_proper(alg: &Algebra, fw: &FlagWeight, max_sum: i64) -> Result<ProperReport> {
    let rank = alg.rs.rank;
    if fw.s.len() == rank {
        return Ok(ProperReport {
            claim: "left-weight-properness".into(),
            applicable: false,
            proper: false,
            witnesses: Vec::new(),
            searched: Vec::new(),
        });
    }
    // Enumerate dominant weights with bounded coordinate sum.
    let mut lams: Vec<Weight> = vec![Weight::zero(rank)];
    for _ in 0..max_sum {
        let mut next = Vec::new();
        for w in &lams {
            for i in 0..rank {
                let mut v = w.0.clone();
                v[i] += 1;
                next.push(Weight(v));
            }
        }
        lams.extend(next);
    }
    lams.sort();
    lams.dedup();
    let mut witnesses = Vec::new();
    let mut searched = Vec::new();
    for lam in &lams {
        searched.push(lam.0.clone());
        let inv = invariant_component(alg, lam, &fw.s, InvariantMode::BlockTorus)?;
        for wt in inv.keys() {
            if !in_z_lambda(&fw.lambda, wt) {
                witnesses.push((lam.0.clone(), wt.0.clone()));
            }
        }
    }
    Ok(ProperReport {
        claim: "left-weight-properness".into(),
        applicable: true,
        proper: !witnesses.is_empty(),
        witnesses,
        searched,
    })
}
