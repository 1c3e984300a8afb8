//! Classical character arithmetic: weight multiplicities, tensor-product
//! decomposition, and restriction to parabolic subsystems. These are used as
//! independent oracles against the quantized-module constructions.

use crate::rat::{qz, Q};
use crate::rootsys::{lower_weights, RootSystem, Weight};
use crate::{Error, Result};
use num::{Signed, Zero};
use std::collections::BTreeMap;

pub type CharMap = BTreeMap<Weight, usize>;

/// Weight multiplicities of the irreducible module with highest weight λ,
/// via the Freudenthal recursion.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<CharMap> {
    if !lambda.is_dominant() {
        return Err(Error::Domain(format!("weight {:?} is not dominant", lambda.0)));
    }
    let rho = rs.rho();
    let lam_rho = lambda.add(&rho);
    let norm_top = rs.pairing(&lam_rho, &lam_rho);
    // Candidate weights by depth in the root lattice; Freudenthal reads
    // multiplicities strictly closer to λ, so process by increasing depth.
    let depths = lower_weights(rs, lambda);
    let mut by_depth: Vec<Vec<&Weight>> = Vec::new();
    for (w, d) in &depths {
        while by_depth.len() <= *d {
            by_depth.push(Vec::new());
        }
        by_depth[*d].push(w);
    }
    let mut mult: CharMap = BTreeMap::new();
    mult.insert(lambda.clone(), 1);
    for level in by_depth.iter().skip(1) {
        for &mu in level {
            let mu_rho = mu.add(&rho);
            let denom = &norm_top - rs.pairing(&mu_rho, &mu_rho);
            if denom.is_zero() || denom.is_negative() {
                continue;
            }
            let mut acc = Q::zero();
            for alpha in &rs.positive_roots {
                let mut k = 1i64;
                loop {
                    let shifted = Weight(
                        mu.0.iter()
                            .zip(&alpha.0)
                            .map(|(m, a)| m + k * a)
                            .collect(),
                    );
                    match mult.get(&shifted) {
                        Some(&m) if m > 0 => {
                            acc += qz(m as i64) * rs.pairing(&shifted, alpha);
                        }
                        _ => {
                            if !depths.contains_key(&shifted) {
                                break;
                            }
                        }
                    }
                    k += 1;
                }
            }
            let m_mu = qz(2) * acc / denom;
            if !m_mu.is_integer() {
                return Err(Error::Internal("non-integral Freudenthal multiplicity".into()));
            }
            let m: i64 = m_mu
                .to_integer()
                .try_into()
                .map_err(|_| Error::Overflow("weight multiplicity exceeds i64".into()))?;
            if m > 0 {
                mult.insert(mu.clone(), m as usize);
            }
        }
    }
    Ok(mult)
}

/// Pointwise product of two characters (convolution of weight multiplicities).
pub fn char_product(a: &CharMap, b: &CharMap) -> CharMap {
    let mut out: CharMap = BTreeMap::new();
    for (wa, ma) in a {
        for (wb, mb) in b {
            *out.entry(wa.add(wb)).or_insert(0) += ma * mb;
        }
    }
    out
}

fn height(rs: &RootSystem, w: &Weight) -> Q {
    rs.root_coords(w).into_iter().sum()
}

/// Decompose a character (assumed a nonnegative sum of irreducible characters)
/// into highest weights with multiplicities, by repeated leading-term removal.
pub fn decompose_character(rs: &RootSystem, ch: &CharMap) -> Result<Vec<(Weight, usize)>> {
    let mut rem = ch.clone();
    let mut out: Vec<(Weight, usize)> = Vec::new();
    loop {
        rem.retain(|_, m| *m > 0);
        // Maximal weight in the support; it is the highest weight of a summand.
        let Some(top) = rem
            .keys()
            .cloned()
            .max_by(|a, b| height(rs, a).cmp(&height(rs, b)))
        else {
            break;
        };
        if !top.is_dominant() {
            return Err(Error::Internal(format!(
                "character leading term {:?} not dominant",
                top.0
            )));
        }
        let m = rem[&top];
        let irr = weight_multiplicities(rs, &top)?;
        for (w, k) in &irr {
            let cur = rem.get(w).copied().unwrap_or(0);
            let sub = m * k;
            if cur < sub {
                return Err(Error::Internal("character is not a nonnegative sum".into()));
            }
            rem.insert(w.clone(), cur - sub);
        }
        out.push((top, m));
    }
    out.sort();
    Ok(out)
}

/// Highest weights of V(λ1) ⊗ V(λ2) with multiplicities.
pub fn tensor_decompose(
    rs: &RootSystem,
    lambda1: &Weight,
    lambda2: &Weight,
) -> Result<Vec<(Weight, usize)>> {
    let c1 = weight_multiplicities(rs, lambda1)?;
    let c2 = weight_multiplicities(rs, lambda2)?;
    decompose_character(rs, &char_product(&c1, &c2))
}

// ---------------------------------------------------------------------------
// Restriction to the root subsystem spanned by S
// ---------------------------------------------------------------------------

fn positive_subsystem_roots(rs: &RootSystem, s: &[usize]) -> Vec<Weight> {
    rs.positive_roots
        .iter()
        .filter(|alpha| {
            let c = rs.root_coords(alpha);
            (0..rs.rank).all(|j| s.contains(&j) || c[j].is_zero())
        })
        .cloned()
        .collect()
}

fn s_dominant(s: &[usize], w: &Weight) -> bool {
    s.iter().all(|&j| w.0[j] >= 0)
}

fn s_dominant_representative(rs: &RootSystem, s: &[usize], w: &Weight) -> Weight {
    let mut v = w.clone();
    loop {
        let Some(&j) = s.iter().find(|&&j| v.0[j] < 0) else {
            return v;
        };
        v = rs.reflect(j, &v);
    }
}

/// λ − μ is a nonnegative combination of the simple roots indexed by S.
fn s_dominance_leq(rs: &RootSystem, s: &[usize], mu: &Weight, lambda: &Weight) -> bool {
    let c = rs.root_coords(&lambda.sub(mu));
    (0..rs.rank).all(|j| {
        if s.contains(&j) {
            !c[j].is_negative()
        } else {
            c[j].is_zero()
        }
    })
}

/// Character of the subsystem irreducible with S-highest weight ν, as weights
/// of the full lattice (the complementary torus charge rides along).
pub fn subsystem_weight_multiplicities(
    rs: &RootSystem,
    s: &[usize],
    nu: &Weight,
) -> Result<CharMap> {
    if !s_dominant(s, nu) {
        return Err(Error::Domain("subsystem highest weight not S-dominant".into()));
    }
    let pos = positive_subsystem_roots(rs, s);
    // ρ_S = half sum of positive subsystem roots.
    let rho_s = {
        let mut acc = vec![Q::zero(); rs.rank];
        for alpha in &pos {
            for (a, x) in acc.iter_mut().zip(&alpha.0) {
                *a += qz(*x) / qz(2);
            }
        }
        acc
    };
    let pair_shift = |w: &Weight, shift: &[Q], other: &Weight| -> Q {
        // (w + shift, other) via linearity.
        let mut p = rs.pairing(w, other);
        let c = rs.root_coords(other);
        for j in 0..rs.rank {
            if !c[j].is_zero() && !shift[j].is_zero() {
                p += &c[j] * &shift[j] * qz(rs.d[j]);
            }
        }
        p
    };
    let norm = |w: &Weight, shift: &[Q]| -> Q {
        // (w+shift, w+shift) = (w, w) + 2(shift expanded)·... compute directly:
        // represent w+shift in fundamental coordinates as rationals and pair.
        let coords: Vec<Q> = w.0.iter().zip(shift).map(|(m, s)| qz(*m) + s).collect();
        // (x, α_j)/d_j = x_j for x in fundamental coords; (x,y) = Σ_j c_j(y) x_j d_j
        // with c(y) the root coords of y. Use the bilinearity over rational coords.
        let mut total = Q::zero();
        // y = Σ coords; root coords of y = A^{-T} coords — reuse rs.root_coords via
        // scaling: root_coords is linear, so apply to numerator pattern manually.
        let c = {
            // Solve Aᵀ c = coords exactly.
            let a = crate::rat::RatMat::from_rows(
                (0..rs.rank)
                    .map(|i| (0..rs.rank).map(|j| qz(rs.cartan[j][i])).collect())
                    .collect(),
            );
            a.solve(&coords).expect("Cartan system solvable")
        };
        for j in 0..rs.rank {
            total += &c[j] * &coords[j] * qz(rs.d[j]);
        }
        total
    };
    let zero_shift = vec![Q::zero(); rs.rank];
    let norm_top = norm(nu, &rho_s);
    // Enumerate candidate weights ν − Σ_{j∈S} n_j α_j within the S-hull.
    let mut depths: BTreeMap<Weight, usize> = BTreeMap::new();
    depths.insert(nu.clone(), 0);
    let mut frontier = vec![nu.clone()];
    let mut depth = 0usize;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for w in &frontier {
            for &j in s {
                let cand = w.sub(&rs.simple_roots[j]);
                if depths.contains_key(&cand) {
                    continue;
                }
                let dom = s_dominant_representative(rs, s, &cand);
                if s_dominance_leq(rs, s, &dom, nu) {
                    depths.insert(cand.clone(), depth);
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    let mut by_depth: Vec<Vec<&Weight>> = Vec::new();
    for (w, d) in &depths {
        while by_depth.len() <= *d {
            by_depth.push(Vec::new());
        }
        by_depth[*d].push(w);
    }
    let mut mult: CharMap = BTreeMap::new();
    mult.insert(nu.clone(), 1);
    for level in by_depth.iter().skip(1) {
        for &mu in level {
            let denom = &norm_top - norm(mu, &rho_s);
            if denom.is_zero() || denom.is_negative() {
                continue;
            }
            let mut acc = Q::zero();
            for alpha in &pos {
                let mut k = 1i64;
                loop {
                    let shifted = Weight(
                        mu.0.iter().zip(&alpha.0).map(|(m, a)| m + k * a).collect(),
                    );
                    match mult.get(&shifted) {
                        Some(&m) if m > 0 => {
                            acc += qz(m as i64) * pair_shift(&shifted, &zero_shift, alpha);
                        }
                        _ => {
                            if !depths.contains_key(&shifted) {
                                break;
                            }
                        }
                    }
                    k += 1;
                }
            }
            let m_mu = qz(2) * acc / denom;
            if !m_mu.is_integer() {
                return Err(Error::Internal(
                    "non-integral subsystem multiplicity".into(),
                ));
            }
            let m: i64 = m_mu.to_integer().try_into().unwrap_or(0);
            if m > 0 {
                mult.insert(mu.clone(), m as usize);
            }
        }
    }
    Ok(mult)
}

fn s_height(rs: &RootSystem, s: &[usize], w: &Weight) -> Q {
    // Height of the S-part only: Σ_{j∈S} m_j weighted by fundamental coords of
    // the S-block; simple surrogate Σ_{j∈S} m_j d_j works for leading-term
    // selection because subtracting α_j strictly lowers it.
    let mut h = Q::zero();
    for &j in s {
        h += qz(w.0[j] * rs.d[j]);
    }
    h
}

/// Decompose the restriction of a character to the subsystem of S: returns
/// (S-highest weight in full-lattice coordinates, multiplicity) pairs.
pub fn restrict_to_subsystem(
    rs: &RootSystem,
    s: &[usize],
    ch: &CharMap,
) -> Result<Vec<(Weight, usize)>> {
    let mut rem = ch.clone();
    let mut out: Vec<(Weight, usize)> = Vec::new();
    loop {
        rem.retain(|_, m| *m > 0);
        let Some(top) = rem
            .keys()
            .cloned()
            .max_by(|a, b| s_height(rs, s, a).cmp(&s_height(rs, s, b)).then(a.cmp(b)))
        else {
            break;
        };
        if !s_dominant(s, &top) {
            return Err(Error::Internal("restriction leading term not S-dominant".into()));
        }
        let m = rem[&top];
        let irr = subsystem_weight_multiplicities(rs, s, &top)?;
        for (w, k) in &irr {
            let cur = rem.get(w).copied().unwrap_or(0);
            let sub = m * k;
            if cur < sub {
                return Err(Error::Internal("restriction is not a nonnegative sum".into()));
            }
            rem.insert(w.clone(), cur - sub);
        }
        out.push((top, m));
    }
    out.sort();
    Ok(out)
}

/// Multiplicity of the trivial isotypic component for the named subalgebra in
/// the module with character `ch`. Mode `full_torus` demands the whole weight
/// vanish; otherwise only the S-coordinates must vanish.
pub fn trivial_isotypic_multiplicity(
    rs: &RootSystem,
    s: &[usize],
    ch: &CharMap,
    full_torus: bool,
) -> Result<usize> {
    let parts = restrict_to_subsystem(rs, s, ch)?;
    Ok(parts
        .into_iter()
        .filter(|(w, _)| {
            if full_torus {
                w.is_zero()
            } else {
                s.iter().all(|&j| w.0[j] == 0)
            }
        })
        .map(|(_, m)| m)
        .sum())
}

/// Coefficient-wise check that a character is the W-invariant one of V(λ):
/// m(wμ) = m(μ) for simple reflections.
pub fn character_is_w_invariant(rs: &RootSystem, ch: &CharMap) -> bool {
    ch.iter().all(|(w, m)| {
        (0..rs.rank).all(|i| ch.get(&rs.reflect(i, w)).copied().unwrap_or(0) == *m)
    })
}

/// Total dimension of a character.
pub fn char_dim(ch: &CharMap) -> usize {
    ch.values().sum()
}

/// Character of the dual module: negate all weights.
pub fn char_dual(ch: &CharMap) -> CharMap {
    ch.iter().map(|(w, m)| (w.neg(), *m)).collect()
}

impl RootSystem {
    /// Highest weight of the dual of V(λ): −w₀λ.
    pub fn dual_highest_weight(&self, wg: &crate::rootsys::WeylGroup, lambda: &Weight) -> Weight {
        wg.longest().apply(lambda).neg()
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, weyl_enumerate, CartanType};

    fn a2() -> RootSystem {
        build_root_system(CartanType::A(2)).unwrap()
    }

    #[test]
    fn freudenthal_matches_weyl_dimension() {
        for (ct, weights) in [
            (CartanType::A(2), vec![vec![1, 0], vec![1, 1], vec![2, 1], vec![3, 0]]),
            (CartanType::A(3), vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1]]),
            (CartanType::B(2), vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            (CartanType::G2, vec![vec![1, 0], vec![0, 1]]),
        ] {
            let rs = build_root_system(ct).unwrap();
            for lam in weights {
                let lam = Weight(lam);
                let ch = weight_multiplicities(&rs, &lam).unwrap();
                assert_eq!(char_dim(&ch), rs.weyl_dim(&lam).unwrap(), "{ct} {:?}", lam.0);
                assert!(character_is_w_invariant(&rs, &ch));
            }
        }
    }

    #[test]
    fn adjoint_of_a2_has_double_zero_weight() {
        let rs = a2();
        let ch = weight_multiplicities(&rs, &Weight(vec![1, 1])).unwrap();
        assert_eq!(ch.get(&Weight::zero(2)), Some(&2));
        assert_eq!(char_dim(&ch), 8);
    }

    #[test]
    fn tensor_clebsch_gordan() {
        let rs = a2();
        // 3 ⊗ 3̄ = 8 ⊕ 1
        let dec = tensor_decompose(&rs, &Weight(vec![1, 0]), &Weight(vec![0, 1])).unwrap();
        assert_eq!(dec, vec![(Weight(vec![0, 0]), 1), (Weight(vec![1, 1]), 1)]);
        // 3 ⊗ 3 = 6 ⊕ 3̄
        let dec = tensor_decompose(&rs, &Weight(vec![1, 0]), &Weight(vec![1, 0])).unwrap();
        assert_eq!(dec, vec![(Weight(vec![0, 1]), 1), (Weight(vec![2, 0]), 1)]);
        // 8 ⊗ 8 = 27 ⊕ 10 ⊕ 10̄ ⊕ 8 ⊕ 8 ⊕ 1
        let dec = tensor_decompose(&rs, &Weight(vec![1, 1]), &Weight(vec![1, 1])).unwrap();
        let total: usize = dec
            .iter()
            .map(|(w, m)| m * rs.weyl_dim(w).unwrap())
            .sum();
        assert_eq!(total, 64);
        assert!(dec.contains(&(Weight(vec![1, 1]), 2)));
        assert!(dec.contains(&(Weight(vec![0, 0]), 1)));
    }

    #[test]
    fn sl2_tensor_ladder() {
        let rs = build_root_system(CartanType::A(1)).unwrap();
        // 2 ⊗ 2 = 3 ⊕ 1
        let dec = tensor_decompose(&rs, &Weight(vec![1]), &Weight(vec![1])).unwrap();
        assert_eq!(dec, vec![(Weight(vec![0]), 1), (Weight(vec![2]), 1)]);
    }

    #[test]
    fn subsystem_restriction_su3_to_u2() {
        let rs = a2();
        let s = vec![0usize];
        // V(ϖ_1) of su(3) restricted to the α_1-block: doublet + singlet.
        let ch = weight_multiplicities(&rs, &Weight(vec![1, 0])).unwrap();
        let parts = restrict_to_subsystem(&rs, &s, &ch).unwrap();
        let spins: Vec<i64> = parts.iter().map(|(w, _)| w.0[0]).collect();
        assert_eq!(spins.len(), 2);
        assert!(spins.contains(&1) && spins.contains(&0));
        // No fully trivial component in the vector representation.
        assert_eq!(trivial_isotypic_multiplicity(&rs, &s, &ch, true).unwrap(), 0);
        // The adjoint has exactly one trivial U(2)-isotypic line.
        let ch_adj = weight_multiplicities(&rs, &Weight(vec![1, 1])).unwrap();
        assert_eq!(trivial_isotypic_multiplicity(&rs, &s, &ch_adj, true).unwrap(), 1);
        // Relaxing the torus to the S-block only: ϖ_2-charged singlet joins in.
        assert!(trivial_isotypic_multiplicity(&rs, &s, &ch, false).unwrap() >= 1);
    }

    #[test]
    fn dual_weights() {
        let rs = a2();
        let wg = weyl_enumerate(&rs);
        assert_eq!(rs.dual_highest_weight(&wg, &Weight(vec![1, 0])), Weight(vec![0, 1]));
        assert_eq!(rs.dual_highest_weight(&wg, &Weight(vec![1, 1])), Weight(vec![1, 1]));
        let ch = weight_multiplicities(&rs, &Weight(vec![2, 0])).unwrap();
        let chd = char_dual(&ch);
        let dec = decompose_character(&rs, &chd).unwrap();
        assert_eq!(dec, vec![(Weight(vec![0, 2]), 1)]);
    }
}
