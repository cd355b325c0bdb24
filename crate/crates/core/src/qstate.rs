//! Numeric n-qubit states and the local SL(2,C)^⊗n action.
//!
//! Amplitudes are indexed big-endian: qubit 0 is the most significant bit of
//! the basis index, so `|0011⟩` is index 3.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::group::GroupElement;
use crate::invariants::ACoords;
use crate::matrix::{rat, RatMatrix};
use crate::poly::{Rational, NVARS};
use crate::{serde_complex, Error, Result};

/// Tolerance on `|det − 1|` for local factors.
pub const SL_TOLERANCE: f64 = 1e-10;

/// Relative singular-value cutoff for the orbit-dimension rank.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Dimension of the acting Lie algebra `sl(2)^4`, the largest possible orbit dimension.
pub const MAX_ORBIT_DIM: usize = 12;

/// Pure state vector of `n` qubits (not necessarily normalized).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct StateVec {
    n: usize,
    amps: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    n: usize,
    #[serde(with = "serde_complex::vec")]
    amps: Vec<Complex64>,
}

impl TryFrom<StateJson> for StateVec {
    type Error = Error;
    fn try_from(j: StateJson) -> Result<Self> {
        StateVec::new(j.n, j.amps)
    }
}

impl From<StateVec> for StateJson {
    fn from(s: StateVec) -> Self {
        StateJson { n: s.n, amps: s.amps }
    }
}

impl StateVec {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n > 20 {
            return Err(Error::Dimension(format!("{n} qubits is more than supported")));
        }
        if amps.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "amps has length {}, expected 2^{n} = {}",
                amps.len(),
                1usize << n
            )));
        }
        if let Some(i) = amps.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFinite(format!("amplitude {i}")));
        }
        Ok(StateVec { n, amps })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::zero(); 1 << n];
        amps[index] = Complex64::one();
        StateVec { n, amps }
    }

    /// Normalized equal superposition of the given basis indices.
    pub fn uniform(n: usize, indices: &[usize]) -> Self {
        let mut amps = vec![Complex64::zero(); 1 << n];
        let s = 1.0 / (indices.len() as f64).sqrt();
        for &i in indices {
            amps[i] += s;
        }
        StateVec { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(StateVec { n: self.n, amps: self.amps.iter().map(|a| a / n).collect() })
    }

    /// Euclidean distance to another state of the same size.
    pub fn distance(&self, other: &StateVec) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Applies a 2×2 matrix to one qubit slot.
    pub fn apply_single(&self, slot: usize, m: &Mat2) -> StateVec {
        let stride = 1 << (self.n - 1 - slot);
        let mut out = self.amps.clone();
        for base in 0..self.amps.len() {
            if base & stride != 0 {
                continue;
            }
            let (a0, a1) = (self.amps[base], self.amps[base | stride]);
            out[base] = m[0][0] * a0 + m[0][1] * a1;
            out[base | stride] = m[1][0] * a0 + m[1][1] * a1;
        }
        StateVec { n: self.n, amps: out }
    }

    /// Reorders tensor slots: slot `k` of the result holds slot `perm[k]` of `self`.
    pub fn permute_slots(&self, perm: &[usize]) -> Result<StateVec> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Dimension(format!("{perm:?} is not a permutation of {n} slots")));
        }
        let mut amps = vec![Complex64::zero(); self.amps.len()];
        for (src, a) in self.amps.iter().enumerate() {
            let dst = (0..n).fold(0usize, |acc, k| {
                let bit = (src >> (n - 1 - perm[k])) & 1;
                acc | (bit << (n - 1 - k))
            });
            amps[dst] = *a;
        }
        Ok(StateVec { n, amps })
    }

    /// Exchanges tensor slots `a` and `b`.
    pub fn swap_slots(&self, a: usize, b: usize) -> Result<StateVec> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        if a >= self.n || b >= self.n {
            return Err(Error::Dimension(format!("slot out of range for {} qubits", self.n)));
        }
        perm.swap(a, b);
        self.permute_slots(&perm)
    }
}

pub type Mat2 = [[Complex64; 2]; 2];

fn det2(m: &Mat2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Tensor product `g_0 ⊗ … ⊗ g_{n−1}` of SL(2,C) factors.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOp {
    factors: Vec<Mat2>,
}

impl LocalOp {
    pub fn new(factors: Vec<Mat2>) -> Result<Self> {
        for (slot, m) in factors.iter().enumerate() {
            let d = det2(m);
            if (d - 1.0).norm() > SL_TOLERANCE || !d.re.is_finite() || !d.im.is_finite() {
                return Err(Error::NotSpecialLinear { slot, det_re: d.re, det_im: d.im });
            }
        }
        Ok(LocalOp { factors })
    }

    pub fn identity(n: usize) -> Self {
        let one = Complex64::one();
        let zero = Complex64::zero();
        LocalOp { factors: vec![[[one, zero], [zero, one]]; n] }
    }

    /// Independent random factors from [`random_sl2`].
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        LocalOp { factors: (0..n).map(|_| random_sl2(rng)).collect() }
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Mat2] {
        &self.factors
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Random element of SL(2,C): a complex Gaussian matrix, redrawn until
/// `|det| > 0.1`, divided by a square root of its determinant.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let m: Mat2 = [
            [complex_gaussian(rng), complex_gaussian(rng)],
            [complex_gaussian(rng), complex_gaussian(rng)],
        ];
        let d = det2(&m);
        if d.norm() > 0.1 {
            let s = d.sqrt();
            return m.map(|row| row.map(|x| x / s));
        }
    }
}

/// Random state with independent standard complex Gaussian amplitudes.
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVec {
    StateVec { n, amps: (0..1 << n).map(|_| complex_gaussian(rng)).collect() }
}

/// Random point of `A` with independent standard complex Gaussian coordinates.
pub fn random_acoords<R: Rng + ?Sized>(rng: &mut R) -> ACoords {
    ACoords(std::array::from_fn(|_| complex_gaussian(rng)))
}

/// `(g_0 ⊗ … ⊗ g_{n−1}) ψ`, one slot at a time.
pub fn apply_local(g: &LocalOp, psi: &StateVec) -> Result<StateVec> {
    if g.n() != psi.n {
        return Err(Error::Dimension(format!(
            "operator acts on {} qubits, state has {}",
            g.n(),
            psi.n
        )));
    }
    Ok(g.factors
        .iter()
        .enumerate()
        .fold(psi.clone(), |state, (slot, m)| state.apply_single(slot, m)))
}

/// Basis vectors of `u0..u3` as exact amplitudes (entries `0, ±1/2`).
pub fn u_basis_exact() -> [[Rational; 16]; NVARS] {
    const PATTERNS: [[(usize, i64); 4]; NVARS] = [
        [(0b0000, 1), (0b0011, 1), (0b1100, 1), (0b1111, 1)],
        [(0b0000, 1), (0b0011, -1), (0b1100, -1), (0b1111, 1)],
        [(0b0101, 1), (0b0110, 1), (0b1001, 1), (0b1010, 1)],
        [(0b0101, 1), (0b0110, -1), (0b1001, -1), (0b1010, 1)],
    ];
    PATTERNS.map(|pattern| {
        let mut v: [Rational; 16] = std::array::from_fn(|_| Rational::zero());
        for (idx, sign) in pattern {
            v[idx] = rat(sign, 2);
        }
        v
    })
}

/// `u0..u3` as four-qubit states.
pub fn u_basis() -> [StateVec; NVARS] {
    use num_traits::ToPrimitive;
    u_basis_exact().map(|v| StateVec {
        n: 4,
        amps: v.iter().map(|x| Complex64::new(x.to_f64().unwrap(), 0.0)).collect(),
    })
}

/// `Σ z_i u_i` as a 16-amplitude state.
pub fn embed_a(z: &ACoords) -> StateVec {
    let mut amps = vec![Complex64::zero(); 16];
    for (zi, u) in z.0.iter().zip(u_basis()) {
        for (a, ui) in amps.iter_mut().zip(u.amps) {
            *a += zi * ui;
        }
    }
    StateVec { n: 4, amps }
}

/// Matrix, relative to `u0..u3`, of the swap of qubit slots `a` and `b`
/// restricted to `A`, computed exactly as `Uᵀ P U`.
///
/// Fails if the swap does not preserve `A`.
pub fn slot_swap_restriction(a: usize, b: usize) -> Result<GroupElement> {
    if a >= 4 || b >= 4 {
        return Err(Error::Dimension("slots must be in 0..4".into()));
    }
    let u = u_basis_exact();
    let swap_index = |idx: usize| {
        let (ba, bb) = ((idx >> (3 - a)) & 1, (idx >> (3 - b)) & 1);
        let cleared = idx & !(1 << (3 - a)) & !(1 << (3 - b));
        cleared | (bb << (3 - a)) | (ba << (3 - b))
    };
    let images: Vec<[Rational; 16]> = u
        .iter()
        .map(|v| {
            let mut w: [Rational; 16] = std::array::from_fn(|_| Rational::zero());
            for (idx, x) in v.iter().enumerate() {
                w[swap_index(idx)] = x.clone();
            }
            w
        })
        .collect();
    let dot = |x: &[Rational; 16], y: &[Rational; 16]| {
        x.iter().zip(y).fold(Rational::zero(), |acc, (p, q)| acc + p * q)
    };
    let m = RatMatrix::from_fn(|i, j| dot(&u[i], &images[j]));
    // the image must lie in A: projection back onto A must reproduce it
    for (j, w) in images.iter().enumerate() {
        let mut proj: [Rational; 16] = std::array::from_fn(|_| Rational::zero());
        for i in 0..NVARS {
            for (p, ui) in proj.iter_mut().zip(&u[i]) {
                *p += m.entry(i, j) * ui;
            }
        }
        if proj != *w {
            return Err(Error::Dimension(format!("swap of slots {a},{b} does not preserve A")));
        }
    }
    GroupElement::new(m)
}

/// Sign and phase of `σ_y^{⊗n}` mapping `|c⟩` to `|c̄⟩`: each 0 bit gives `i`,
/// each 1 bit gives `−i`.
fn sigma_y_phase(n: usize, c: usize) -> Complex64 {
    let ones = c.count_ones() as usize;
    Complex64::i().powu((n - ones) as u32) * (-Complex64::i()).powu(ones as u32)
}

/// Symmetric bilinear form `(a, b) = ⟨a*|σ_y^{⊗n}|b⟩` for even `n`.
pub fn bilinear(a: &StateVec, b: &StateVec) -> Result<Complex64> {
    if a.n != b.n {
        return Err(Error::Dimension(format!("{} vs {} qubits", a.n, b.n)));
    }
    if a.n % 2 == 1 {
        return Err(Error::OddQubits(a.n));
    }
    let mask = (1usize << a.n) - 1;
    Ok((0..a.amps.len())
        .map(|c| a.amps[c ^ mask] * sigma_y_phase(a.n, c) * b.amps[c])
        .sum())
}

/// `f2(ψ) = (ψ, ψ)`; `|f2|` is the concurrence for two qubits.
pub fn bilinear_form(psi: &StateVec) -> Result<Complex64> {
    bilinear(psi, psi)
}

/// Three-qubit invariant `det [(φ_i, φ_j)]` with `|ψ⟩ = |0⟩|φ0⟩ + |1⟩|φ1⟩`,
/// splitting on qubit 0.
pub fn f4(psi: &StateVec) -> Result<Complex64> {
    f4_split(psi, 0)
}

/// [`f4`] splitting on an arbitrary qubit slot.
pub fn f4_split(psi: &StateVec, slot: usize) -> Result<Complex64> {
    if psi.n != 3 {
        return Err(Error::Dimension(format!("f4 needs 3 qubits, got {}", psi.n)));
    }
    if slot >= 3 {
        return Err(Error::Dimension(format!("slot {slot} out of range")));
    }
    let mut perm: Vec<usize> = (0..3).collect();
    perm.swap(0, slot);
    let psi = psi.permute_slots(&perm)?;
    let phi0 = StateVec { n: 2, amps: psi.amps[..4].to_vec() };
    let phi1 = StateVec { n: 2, amps: psi.amps[4..].to_vec() };
    let g00 = bilinear(&phi0, &phi0)?;
    let g01 = bilinear(&phi0, &phi1)?;
    let g11 = bilinear(&phi1, &phi1)?;
    Ok(g00 * g11 - g01 * g01)
}

fn sl2_basis() -> [Mat2; 3] {
    let (o, z) = (Complex64::one(), Complex64::zero());
    [[[z, o], [z, z]], [[z, z], [o, z]], [[o, z], [z, -o]]]
}

/// Tangent vectors `X_a ψ` of the orbit `Gψ`, for the twelve generators
/// `X_a` of `sl(2)^{⊕4}` acting on one slot.
pub fn tangent_vectors(psi: &StateVec) -> Vec<StateVec> {
    (0..psi.n)
        .flat_map(|slot| sl2_basis().map(|x| psi.apply_single(slot, &x)))
        .collect()
}

/// Singular values of the tangent map at the normalized state, descending.
pub fn tangent_singular_values(psi: &StateVec) -> Result<Vec<f64>> {
    if psi.n != 4 {
        return Err(Error::Dimension(format!("orbit dimension needs 4 qubits, got {}", psi.n)));
    }
    let psi = psi.normalized()?;
    let cols = tangent_vectors(&psi);
    let m = DMatrix::from_fn(16, cols.len(), |i, j| cols[j].amps[i]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Complex dimension of the orbit `Gψ` (rank of the tangent vectors).
pub fn orbit_dim(psi: &StateVec) -> Result<usize> {
    let sv = tangent_singular_values(psi)?;
    let top = sv.first().copied().unwrap_or(0.0);
    Ok(sv.iter().filter(|&&s| s > RANK_TOLERANCE * top).count())
}

/// Generic states have orbits of the maximal dimension 12.
pub fn is_generic(psi: &StateVec) -> Result<bool> {
    Ok(orbit_dim(psi)? == MAX_ORBIT_DIM)
}

/// A four-qubit state given either as A-coordinates or as full amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateInput {
    A { a: ACoords },
    Full(StateVec),
}

impl StateInput {
    /// Parses `{"a": [[re,im] ×4]}` or `{"n": .., "amps": [[re,im], …]}`,
    /// naming the offending field on failure.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("state must be a JSON object".into()))?;
        if let Some(a) = obj.get("a") {
            let z: ACoords = serde_json::from_value(a.clone())
                .map_err(|e| Error::Parse(format!("field \"a\": {e}")))?;
            return Ok(StateInput::A { a: z });
        }
        let n = obj
            .get("n")
            .ok_or_else(|| Error::Parse("missing field \"n\" (or \"a\")".into()))?
            .as_u64()
            .ok_or_else(|| Error::Parse("field \"n\": expected a non-negative integer".into()))?;
        let amps = obj.get("amps").ok_or_else(|| Error::Parse("missing field \"amps\"".into()))?;
        let amps: Vec<[f64; 2]> = serde_json::from_value(amps.clone())
            .map_err(|e| Error::Parse(format!("field \"amps\": {e}")))?;
        let amps = amps.into_iter().map(serde_complex::from_pair).collect();
        let state = StateVec::new(n as usize, amps).map_err(|e| Error::Parse(format!("field \"amps\": {e}")))?;
        Ok(StateInput::Full(state))
    }

    /// The state as amplitudes (A-coordinates are embedded).
    pub fn to_state(&self) -> StateVec {
        match self {
            StateInput::A { a } => embed_a(a),
            StateInput::Full(s) => s.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;
    use crate::invariants::{self, z_l};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn embedding_of_u0_and_u3() {
        let s = embed_a(&ACoords::real([1.0, 0.0, 0.0, 0.0]));
        for (i, a) in s.amps().iter().enumerate() {
            let expected = if [0, 3, 12, 15].contains(&i) { 0.5 } else { 0.0 };
            assert_eq!(*a, c(expected), "index {i}");
        }
        let s = embed_a(&ACoords::real([0.0, 0.0, 0.0, 1.0]));
        assert_eq!([5, 6, 9, 10].map(|i| s.amps()[i]), [c(0.5), c(-0.5), c(-0.5), c(0.5)]);
        assert_eq!(s.amps().iter().filter(|a| a.norm() > 0.0).count(), 4);
    }

    #[test]
    fn u_basis_is_orthonormal() {
        let u = u_basis_exact();
        for i in 0..4 {
            for j in 0..4 {
                let d = u[i].iter().zip(&u[j]).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
                assert_eq!(d, if i == j { rat(1, 1) } else { rat(0, 1) });
            }
        }
    }

    #[test]
    fn embedding_preserves_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let z = random_acoords(&mut rng);
            assert!((embed_a(&z).norm() - z.norm()).abs() < 1e-13);
        }
    }

    #[test]
    fn identity_and_diagonal_actions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = random_state(4, &mut rng);
        assert_eq!(apply_local(&LocalOp::identity(4), &psi).unwrap(), psi);
        let a = Complex64::new(2.0, 1.0);
        let mut factors = LocalOp::identity(4).factors().to_vec();
        factors[0] = [[a, c(0.0)], [c(0.0), a.inv()]];
        let g = LocalOp::new(factors).unwrap();
        let out = apply_local(&g, &StateVec::basis(4, 0)).unwrap();
        assert!((out.amps()[0] - a).norm() < 1e-15);
        assert!(out.amps()[1..].iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn local_op_validation() {
        let bad = [[c(2.0), c(0.0)], [c(0.0), c(1.0)]];
        assert!(matches!(LocalOp::new(vec![bad]), Err(Error::NotSpecialLinear { slot: 0, .. })));
        assert!(apply_local(&LocalOp::identity(3), &StateVec::basis(2, 0)).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_sl2(&mut rng);
            assert!((det2(&m) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn apply_local_matches_kronecker_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = LocalOp::random(3, &mut rng);
        let psi = random_state(3, &mut rng);
        let fast = apply_local(&g, &psi).unwrap();
        // dense 8×8 kron, built entry by entry
        let dense: Vec<Complex64> = (0..8)
            .map(|r| {
                (0..8)
                    .map(|col| {
                        let coeff: Complex64 = (0..3)
                            .map(|k| g.factors()[k][(r >> (2 - k)) & 1][(col >> (2 - k)) & 1])
                            .product();
                        coeff * psi.amps()[col]
                    })
                    .sum()
            })
            .collect();
        for (a, b) in fast.amps().iter().zip(&dense) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn two_qubit_form() {
        assert_eq!(bilinear_form(&StateVec::basis(2, 0)).unwrap(), c(0.0));
        let bell = StateVec::uniform(2, &[0, 3]);
        let v = bilinear_form(&bell).unwrap();
        assert!((v - c(-1.0)).norm() < 1e-15);
        assert!(matches!(bilinear_form(&StateVec::basis(3, 0)), Err(Error::OddQubits(3))));
    }

    #[test]
    fn four_qubit_form_restricts_to_e1() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let e1 = invariants::e(1).unwrap();
        for _ in 0..20 {
            let z = random_acoords(&mut rng);
            let lhs = bilinear_form(&embed_a(&z)).unwrap();
            let rhs = e1.eval(&z.0);
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }
    }

    #[test]
    fn three_qubit_invariant_values() {
        assert_eq!(f4(&StateVec::basis(3, 0)).unwrap(), c(0.0));
        let ghz = StateVec::uniform(3, &[0, 7]);
        assert!((f4(&ghz).unwrap() - c(-0.25)).norm() < 1e-15);
        let w = StateVec::uniform(3, &[1, 2, 4]);
        assert!(f4(&w).unwrap().norm() < 1e-15);
        assert!(f4(&StateVec::basis(4, 0)).is_err());
    }

    #[test]
    fn three_qubit_invariant_is_split_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let psi = random_state(3, &mut rng);
            let v0 = f4_split(&psi, 0).unwrap();
            for slot in 1..3 {
                let v = f4_split(&psi, slot).unwrap();
                assert!((v - v0).norm() <= 1e-12 * v0.norm());
            }
        }
    }

    #[test]
    fn orbit_dimensions() {
        assert_eq!(orbit_dim(&embed_a(&z_l())).unwrap(), 12);
        assert!(orbit_dim(&embed_a(&ACoords::real([1.0, 1.0, 2.0, 3.0]))).unwrap() < 12);
        assert_eq!(orbit_dim(&StateVec::basis(4, 0)).unwrap(), 5);
        assert!(matches!(orbit_dim(&StateVec::new(4, vec![c(0.0); 16]).unwrap()), Err(Error::ZeroState)));
        assert!(orbit_dim(&StateVec::basis(3, 0)).is_err());
    }

    #[test]
    fn genericity_examples() {
        let p = embed_a(&ACoords::real([1.0, 2.0, 3.0, 4.0]));
        assert!(is_generic(&p).unwrap());
        assert!(!is_generic(&embed_a(&ACoords::real([1.5, 2.0, -1.5, 4.0]))).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = LocalOp::random(4, &mut rng);
        assert!(is_generic(&apply_local(&g, &p).unwrap()).unwrap());
    }

    #[test]
    fn slot_swaps_restrict_to_the_sigma_matrices() {
        assert_eq!(slot_swap_restriction(0, 1).unwrap(), group::sigma_restriction(1).unwrap());
        assert_eq!(slot_swap_restriction(1, 2).unwrap(), group::sigma_restriction(2).unwrap());
        assert_eq!(slot_swap_restriction(2, 3).unwrap(), group::sigma_restriction(3).unwrap());
        assert_ne!(slot_swap_restriction(1, 2).unwrap(), group::hadamard_sigma2());
    }

    #[test]
    fn permutation_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let z = random_acoords(&mut rng);
            for (a, b, i) in [(0, 1, 1), (1, 2, 2), (2, 3, 3)] {
                let m = group::sigma_restriction(i).unwrap().matrix().to_f64();
                let mz = ACoords(std::array::from_fn(|r| (0..4).map(|k| z.0[k] * m[r][k]).sum()));
                let lhs = embed_a(&z).swap_slots(a, b).unwrap();
                assert!(lhs.distance(&embed_a(&mz)) <= 1e-12);
            }
        }
    }

    #[test]
    fn state_json() {
        let s = StateInput::from_json(r#"{"a": [[1,0],[0,0],[0,0],[0,0]]}"#).unwrap();
        assert_eq!(s.to_state(), embed_a(&ACoords::real([1.0, 0.0, 0.0, 0.0])));
        let full = StateInput::from_json(r#"{"n": 1, "amps": [[1,0],[0,1]]}"#).unwrap();
        assert_eq!(full, StateInput::Full(StateVec::new(1, vec![c(1.0), Complex64::i()]).unwrap()));
        let err = StateInput::from_json(r#"{"n": 2, "amps": [[1,0]]}"#).unwrap_err().to_string();
        assert!(err.contains("amps"), "{err}");
        let err = StateInput::from_json(r#"{"a": [[1,0]]}"#).unwrap_err().to_string();
        assert!(err.contains("\"a\""), "{err}");
        let err = StateInput::from_json(r#"{"amps": []}"#).unwrap_err().to_string();
        assert!(err.contains("\"n\""), "{err}");
        let json = serde_json::to_string(&StateVec::basis(1, 1)).unwrap();
        assert_eq!(json, r#"{"n":1,"amps":[[0.0,0.0],[1.0,0.0]]}"#);
    }
}
