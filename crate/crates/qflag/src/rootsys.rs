//! Root systems, Weyl groups, parabolic quotients and Schubert-cell tables.
//!
//! All weights live in fundamental-weight coordinates: `μ = Σ m_i ϖ_i` is the
//! integer vector `m`. Simple roots are expressed in the same lattice through
//! the Cartan matrix (`α_j = Σ_i a_ij ϖ_i`), so every Weyl action is an exact
//! integer matrix.

use crate::rat::{qz, Q, RatMat};
use crate::{Error, Result};
use num::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(r) | CartanType::B(r) | CartanType::C(r) | CartanType::D(r) => r,
            CartanType::G2 => 2,
        }
    }

    pub fn parse(letter: &str, rank: usize) -> Result<CartanType> {
        match (letter, rank) {
            ("A" | "a", r) => Ok(CartanType::A(r)),
            ("B" | "b", r) => Ok(CartanType::B(r)),
            ("C" | "c", r) => Ok(CartanType::C(r)),
            ("D" | "d", r) => Ok(CartanType::D(r)),
            ("G" | "g", 2) => Ok(CartanType::G2),
            _ => Err(Error::Config(format!("unknown Cartan type {letter}{rank}"))),
        }
    }
}

impl std::fmt::Display for CartanType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            CartanType::A(r) => write!(f, "A{r}"),
            CartanType::B(r) => write!(f, "B{r}"),
            CartanType::C(r) => write!(f, "C{r}"),
            CartanType::D(r) => write!(f, "D{r}"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut m = vec![0; rank];
        m[i] = 1;
        Weight(m)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&m| m >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    /// Lexicographically smallest reduced word (generator indices, 0-based).
    pub word: Vec<usize>,
    /// Action on fundamental-weight coordinates (matrix-vector from the left).
    pub mat: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let r = w.0.len();
        let mut out = vec![0i64; r];
        for i in 0..r {
            for j in 0..r {
                out[i] += self.mat[i][j] * w.0[j];
            }
        }
        Weight(out)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// a_ij = 2(α_i,α_j)/(α_j,α_j)
    pub cartan: Vec<Vec<i64>>,
    /// d_i = (α_i,α_i)/2
    pub d: Vec<i64>,
    /// Simple roots in fundamental-weight coordinates (columns of the Cartan matrix).
    pub simple_roots: Vec<Weight>,
    /// Positive roots in fundamental-weight coordinates.
    pub positive_roots: Vec<Weight>,
    cartan_inv: RatMat,
}

pub fn build_root_system(ct: CartanType) -> Result<RootSystem> {
    let r = ct.rank();
    let (cartan, d): (Vec<Vec<i64>>, Vec<i64>) = match ct {
        CartanType::A(rk) if (1..=4).contains(&rk) => {
            let mut a = vec![vec![0i64; rk]; rk];
            for i in 0..rk {
                a[i][i] = 2;
                if i + 1 < rk {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
            }
            (a, vec![1; rk])
        }
        CartanType::B(2) => (vec![vec![2, -2], vec![-1, 2]], vec![2, 1]),
        CartanType::C(2) => (vec![vec![2, -1], vec![-2, 2]], vec![1, 2]),
        CartanType::G2 => (vec![vec![2, -1], vec![-3, 2]], vec![1, 3]),
        _ => {
            return Err(Error::Config(format!("unsupported Cartan type {ct}")));
        }
    };
    // Symmetry of the invariant form: (α_i,α_j) = d_j a_ij = d_i a_ji.
    for i in 0..r {
        for j in 0..r {
            debug_assert_eq!(d[j] * cartan[i][j], d[i] * cartan[j][i]);
        }
    }
    // α_i = Σ_j a_ij ϖ_j, so row i of the Cartan matrix.
    let simple_roots: Vec<Weight> = (0..r).map(|i| Weight(cartan[i].clone())).collect();
    // Fundamental-weight coords m and root-basis coords c satisfy m = Aᵀ c.
    let cartan_rat = RatMat::from_rows(
        cartan.iter().map(|row| row.iter().map(|&x| qz(x)).collect()).collect(),
    )
    .transpose();
    let cartan_inv = cartan_rat
        .inverse()
        .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
    let mut rs = RootSystem {
        cartan_type: ct,
        rank: r,
        cartan,
        d,
        simple_roots,
        positive_roots: Vec::new(),
        cartan_inv,
    };
    rs.positive_roots = rs.close_positive_roots();
    Ok(rs)
}

impl RootSystem {
    /// Coordinates of a weight in the simple-root basis (exact rationals).
    pub fn root_coords(&self, w: &Weight) -> Vec<Q> {
        let v: Vec<Q> = w.0.iter().map(|&x| qz(x)).collect();
        self.cartan_inv.apply(&v)
    }

    /// Is w a nonnegative combination of simple roots?
    pub fn in_positive_cone(&self, w: &Weight) -> bool {
        self.root_coords(w).iter().all(|c| !c.is_negative())
    }

    /// Symmetrized invariant pairing (μ, ν), exact.
    pub fn pairing(&self, mu: &Weight, nu: &Weight) -> Q {
        // (μ, α_j) = m_j d_j; expand ν in the root basis.
        let c = self.root_coords(nu);
        let mut acc = Q::zero();
        for j in 0..self.rank {
            if !c[j].is_zero() {
                acc += &c[j] * qz(mu.0[j] * self.d[j]);
            }
        }
        acc
    }

    /// Integer pairing (μ, α_i) = m_i d_i with the i-th simple root.
    pub fn pairing_simple(&self, mu: &Weight, i: usize) -> i64 {
        mu.0[i] * self.d[i]
    }

    /// Simple-reflection matrix on fundamental-weight coordinates.
    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        // s_i(μ) = μ − m_i α_i, so column i of the identity is replaced.
        let r = self.rank;
        let mut m = vec![vec![0i64; r]; r];
        for j in 0..r {
            m[j][j] = 1;
        }
        for j in 0..r {
            m[j][i] -= self.cartan[i][j];
        }
        m
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let mut out = w.0.clone();
        let mi = w.0[i];
        for j in 0..self.rank {
            out[j] -= mi * self.cartan[i][j];
        }
        Weight(out)
    }

    fn close_positive_roots(&self) -> Vec<Weight> {
        let mut seen: Vec<Weight> = self.simple_roots.clone();
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for root in &frontier {
                for i in 0..self.rank {
                    let img = self.reflect(i, root);
                    if self.in_positive_cone(&img) && !seen.contains(&img) {
                        seen.push(img.clone());
                        next.push(img);
                    }
                }
            }
            frontier = next;
        }
        seen.sort();
        seen
    }

    /// Sum of fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Weyl dimension formula dim V(λ) = Π_{α>0} (λ+ρ,α)/(ρ,α).
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<usize> {
        if !lambda.is_dominant() {
            return Err(Error::Domain(format!("weight {:?} is not dominant", lambda.0)));
        }
        let rho = self.rho();
        let lam_rho = lambda.add(&rho);
        let mut dim = Q::from_integer(1.into());
        for alpha in &self.positive_roots {
            dim *= self.pairing(&lam_rho, alpha) / self.pairing(&rho, alpha);
        }
        if !dim.is_integer() {
            return Err(Error::Internal("Weyl dimension not integral".into()));
        }
        let n: i64 = dim
            .to_integer()
            .try_into()
            .map_err(|_| Error::Overflow("Weyl dimension exceeds i64".into()))?;
        Ok(n as usize)
    }

    /// Dominance order: μ ≤ λ iff λ−μ is a nonnegative rational combination of
    /// simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.in_positive_cone(&lambda.sub(mu))
    }

    pub fn validate_parabolic(&self, s: &[usize]) -> Result<()> {
        for &i in s {
            if i >= self.rank {
                return Err(Error::Config(format!(
                    "parabolic index {i} out of range for rank {}",
                    self.rank
                )));
            }
        }
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() {
            return Err(Error::Config("duplicate parabolic indices".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Weyl group
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    rank: usize,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

pub fn weyl_enumerate(rs: &RootSystem) -> WeylGroup {
    let r = rs.rank;
    let gens: Vec<Vec<Vec<i64>>> = (0..r).map(|i| rs.reflection_matrix(i)).collect();
    let id: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut elements = vec![WeylElement { word: vec![], mat: id.clone() }];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    // Breadth-first by length; parents visited in lexicographic word order and
    // generators ascending, so the first word found is the canonical one.
    let mut level: Vec<usize> = vec![0];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &ei in &level {
            let (word, mat) = (elements[ei].word.clone(), elements[ei].mat.clone());
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(&mat, g);
                if !index.contains_key(&m) {
                    let mut w = word.clone();
                    w.push(i);
                    index.insert(m.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(WeylElement { word: w, mat: m });
                }
            }
        }
        level = next;
    }
    WeylGroup { elements, index, rank: r }
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn find(&self, mat: &[Vec<i64>]) -> Option<&WeylElement> {
        self.index.get(mat).map(|&i| &self.elements[i])
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements
            .iter()
            .max_by_key(|e| e.length())
            .expect("nonempty group")
    }

    /// Compose two elements, returning the canonical representative.
    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> &WeylElement {
        let m = mat_mul(&a.mat, &b.mat);
        self.find(&m).expect("group closure")
    }

    /// Element of a reduced (or any) word.
    pub fn from_word(&self, rs: &RootSystem, word: &[usize]) -> Result<&WeylElement> {
        let mut m: Vec<Vec<i64>> = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| i64::from(i == j)).collect())
            .collect();
        for &i in word {
            if i >= self.rank {
                return Err(Error::Config(format!("generator index {i} out of range")));
            }
            m = mat_mul(&m, &rs.reflection_matrix(i));
        }
        Ok(self.find(&m).expect("group closure"))
    }
}

/// Number of positive roots sent negative by w.
pub fn inversions(rs: &RootSystem, w: &WeylElement) -> usize {
    rs.positive_roots
        .iter()
        .filter(|alpha| !rs.in_positive_cone(&w.apply(alpha)))
        .count()
}

/// l(w s_i) > l(w), equivalent to w(α_i) > 0.
pub fn ascends(rs: &RootSystem, w: &WeylElement, i: usize) -> bool {
    rs.in_positive_cone(&w.apply(&rs.simple_roots[i]))
}

/// Minimal-length coset representatives W^S = {w : l(w s_i) > l(w) ∀ i ∈ S},
/// ordered by (length, canonical word).
pub fn minimal_coset_reps<'a>(
    rs: &RootSystem,
    wg: &'a WeylGroup,
    s: &[usize],
) -> Result<Vec<&'a WeylElement>> {
    rs.validate_parabolic(s)?;
    let mut reps: Vec<&WeylElement> = wg
        .elements
        .iter()
        .filter(|w| s.iter().all(|&i| ascends(rs, w, i)))
        .collect();
    reps.sort_by_key(|w| (w.length(), w.word.clone()));
    Ok(reps)
}

/// Elements of the parabolic subgroup W_S (words use only indices in S).
pub fn parabolic_subgroup<'a>(
    rs: &RootSystem,
    wg: &'a WeylGroup,
    s: &[usize],
) -> Result<Vec<&'a WeylElement>> {
    rs.validate_parabolic(s)?;
    Ok(wg
        .elements
        .iter()
        .filter(|w| w.word.iter().all(|i| s.contains(i)))
        .collect())
}

/// Factor w = u·v with u ∈ W^S, v ∈ W_S and l(w) = l(u) + l(v).
pub fn coset_factorize<'a>(
    rs: &RootSystem,
    wg: &'a WeylGroup,
    w: &WeylElement,
    s: &[usize],
) -> Result<(&'a WeylElement, &'a WeylElement)> {
    rs.validate_parabolic(s)?;
    let mut u = wg.find(&w.mat).expect("member").clone();
    let mut v_word: Vec<usize> = Vec::new();
    loop {
        // Strip a right descent lying in S.
        let Some(&i) = s.iter().find(|&&i| !ascends(rs, &u, i)) else {
            break;
        };
        let si = wg.from_word(rs, &[i])?;
        u = wg.compose(&u, si).clone();
        v_word.insert(0, i);
    }
    let u_ref = wg.find(&u.mat).expect("member");
    let v_ref = wg.from_word(rs, &v_word)?;
    debug_assert_eq!(w.length(), u_ref.length() + v_ref.length());
    Ok((u_ref, v_ref))
}

#[derive(Clone, Debug, Serialize)]
pub struct SchubertCell {
    pub word: Vec<usize>,
    pub length: usize,
    pub action: Vec<Vec<i64>>,
}

/// Schubert-cell table for the quotient by the parabolic of S, in increasing
/// length order.
pub fn schubert_cells(rs: &RootSystem, wg: &WeylGroup, s: &[usize]) -> Result<Vec<SchubertCell>> {
    let reps = minimal_coset_reps(rs, wg, s)?;
    Ok(reps
        .into_iter()
        .map(|w| SchubertCell { word: w.word.clone(), length: w.length(), action: w.mat.clone() })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonDescriptor {
    pub s: Vec<usize>,
    /// Positive roots lying in the span of the simple roots indexed by S.
    pub relative_positive_roots: Vec<Vec<i64>>,
    /// Generators of the larger subalgebra: every K_i^{±1}, plus X_j^± for j ∈ S.
    pub full_block_generators: Vec<String>,
    /// Generators of the smaller subalgebra: K_j^{±1}, X_j^± for j ∈ S only.
    pub reduced_block_generators: Vec<String>,
    /// Rank of the central torus separating the two; intermediate subgroups
    /// correspond to its subtori.
    pub center_dim: usize,
}

pub fn poisson_subgroup_descriptor(
    rs: &RootSystem,
    s: &[usize],
) -> Result<PoissonDescriptor> {
    rs.validate_parabolic(s)?;
    let mut s_sorted = s.to_vec();
    s_sorted.sort_unstable();
    let relative_positive_roots = rs
        .positive_roots
        .iter()
        .filter(|alpha| {
            let c = rs.root_coords(alpha);
            (0..rs.rank).all(|j| s_sorted.contains(&j) || c[j].is_zero())
        })
        .map(|alpha| alpha.0.clone())
        .collect();
    let mut full = Vec::new();
    let mut reduced = Vec::new();
    for i in 0..rs.rank {
        full.push(format!("K{}^+-1", i + 1));
        if s_sorted.contains(&i) {
            reduced.push(format!("K{}^+-1", i + 1));
        }
    }
    for &j in &s_sorted {
        full.push(format!("X{}^+-", j + 1));
        reduced.push(format!("X{}^+-", j + 1));
    }
    Ok(PoissonDescriptor {
        s: s_sorted.clone(),
        relative_positive_roots,
        full_block_generators: full,
        reduced_block_generators: reduced,
        center_dim: rs.rank - s_sorted.len(),
    })
}

// ---------------------------------------------------------------------------
// Dominant weight enumeration helpers (used by character utilities)
// ---------------------------------------------------------------------------

/// All weights of the form λ − (nonnegative integer root combination) collected
/// level by level; returns a map weight -> root-lattice depth.
pub fn lower_weights(rs: &RootSystem, lambda: &Weight) -> BTreeMap<Weight, usize> {
    let mut out: BTreeMap<Weight, usize> = BTreeMap::new();
    out.insert(lambda.clone(), 0);
    let mut frontier = vec![lambda.clone()];
    let mut depth = 0usize;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for w in &frontier {
            for alpha in &rs.simple_roots {
                let cand = w.sub(alpha);
                // Keep only weights in the convex hull of the W-orbit of λ:
                // they must stay ≤ λ in dominance after dominant-chamber
                // projection. Cheap sufficient filter: the dominant
                // representative of cand must be ≤ λ.
                if out.contains_key(&cand) {
                    continue;
                }
                let dom = dominant_representative(rs, &cand);
                if rs.dominance_leq(&dom, lambda) {
                    out.insert(cand.clone(), depth);
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    out
}

/// The dominant weight in the W-orbit of μ.
pub fn dominant_representative(rs: &RootSystem, mu: &Weight) -> Weight {
    let mut w = mu.clone();
    loop {
        let Some(i) = (0..rs.rank).find(|&i| w.0[i] < 0) else {
            return w;
        };
        w = rs.reflect(i, &w);
    }
}
