//! The named invariant polynomials on the critical subspace `A`.
//!
//! Restricted to `A`, with `z = Σ z_i u_i`:
//!
//! * `E0 = z0 z1 z2 z3` and `E_j = Σ_i z_i^(2j)` for `j = 1..4`;
//! * `F_k = 1/6 Σ_{i<j} (z_i − z_j)^(2k) + 1/6 Σ_{i<j} (z_i + z_j)^(2k)`;
//! * `Δ = Π_{i<j} (z_i − z_j)(z_i + z_j)` and the hyperdeterminant `γ = Δ²`.
//!
//! `F1, F3, F4, F6` (degrees 2, 6, 8, 12) generate the permutation-symmetric
//! SL-invariants; [`jacobian_f`] certifies their algebraic independence.

use std::sync::{LazyLock, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::matrix::rat;
use crate::poly::{MultiPoly, Rational, NVARS};
use crate::{serde_complex, Error, Result};

/// Largest supported index for [`f`].
pub const F_MAX: u32 = 12;

/// The generator indices of the symmetric invariant algebra.
pub const GENERATOR_INDICES: [u32; 4] = [1, 3, 4, 6];

/// Unordered pairs `i < j` of coordinate indices.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Coordinates `z` of the state `Σ z_i u_i` in the critical subspace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ACoords(#[serde(with = "acoords_serde")] pub [Complex64; NVARS]);

mod acoords_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &[Complex64; NVARS], s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_complex::vec::serialize(z, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<[Complex64; NVARS], D::Error> {
        let v = serde_complex::vec::deserialize(d)?;
        let n = v.len();
        v.try_into()
            .map_err(|_| D::Error::custom(format!("expected 4 A-coordinates, got {n}")))
    }
}

impl ACoords {
    pub fn new(z: [Complex64; NVARS]) -> Result<Self> {
        if let Some(i) = z.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(format!("A-coordinate {i} is {}", z[i])));
        }
        Ok(ACoords(z))
    }

    pub fn real(z: [f64; NVARS]) -> Self {
        ACoords(z.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(ACoords(self.0.map(|c| c / n)))
    }

    pub fn as_array(&self) -> &[Complex64; NVARS] {
        &self.0
    }
}

/// `ω = e^{iπ/3}` rounded to the nearest doubles.
pub fn omega() -> Complex64 {
    Complex64::new(0.5, 3f64.sqrt() / 2.0)
}

/// The state `(u0 + ω u1 + ω̄ u2) / √3`, the conjectured maximizer of `|γ|`.
pub fn z_l() -> ACoords {
    let s = 1.0 / 3f64.sqrt();
    let w = omega();
    ACoords([Complex64::new(s, 0.0), w * s, w.conj() * s, Complex64::new(0.0, 0.0)])
}

/// The unnormalized state on which `F1 = F3 = F4 = 0` while `F6 ≠ 0`.
pub fn z_f() -> ACoords {
    let r3 = 3f64.sqrt();
    let a = 3.0 - r3;
    ACoords([
        Complex64::new(a, 0.0),
        Complex64::new(r3, r3),
        Complex64::new(r3, -r3),
        Complex64::new(0.0, -a),
    ])
}

fn linear_pair(i: usize, j: usize, sign: i64) -> MultiPoly {
    &MultiPoly::var(i) + &MultiPoly::var(j).scale(&rat(sign, 1))
}

/// `E_j` for `j ∈ {0, …, 4}`.
pub fn e(j: u32) -> Result<MultiPoly> {
    match j {
        0 => Ok((0..NVARS).fold(MultiPoly::one(), |acc, i| &acc * &MultiPoly::var(i))),
        1..=4 => Ok((0..NVARS).fold(MultiPoly::zero(), |acc, i| &acc + &MultiPoly::var(i).pow(2 * j))),
        _ => Err(Error::IndexOutOfRange { what: "E", index: j.into(), range: "0..=4" }),
    }
}

static F_CACHE: [OnceLock<MultiPoly>; F_MAX as usize] = [const { OnceLock::new() }; F_MAX as usize];

/// `F_k` for `k ∈ {1, …, 12}`.
pub fn f(k: u32) -> Result<MultiPoly> {
    if !(1..=F_MAX).contains(&k) {
        return Err(Error::IndexOutOfRange { what: "F", index: k.into(), range: "1..=12" });
    }
    Ok(F_CACHE[(k - 1) as usize].get_or_init(|| build_f(k)).clone())
}

fn build_f(k: u32) -> MultiPoly {
    let sum = PAIRS.iter().fold(MultiPoly::zero(), |acc, &(i, j)| {
        &(&acc + &linear_pair(i, j, -1).pow(2 * k)) + &linear_pair(i, j, 1).pow(2 * k)
    });
    sum.scale(&rat(1, 6))
}

static DELTA: LazyLock<MultiPoly> = LazyLock::new(|| {
    PAIRS.iter().fold(MultiPoly::one(), |acc, &(i, j)| {
        &(&acc * &linear_pair(i, j, -1)) * &linear_pair(i, j, 1)
    })
});

static GAMMA: LazyLock<MultiPoly> = LazyLock::new(|| {
    // product of the twelve squared linear forms, built without reference to Δ
    let factors: Vec<MultiPoly> = PAIRS
        .iter()
        .flat_map(|&(i, j)| [linear_pair(i, j, -1).pow(2), linear_pair(i, j, 1).pow(2)])
        .collect();
    balanced_product(&factors)
});

fn balanced_product(factors: &[MultiPoly]) -> MultiPoly {
    match factors {
        [] => MultiPoly::one(),
        [p] => p.clone(),
        _ => {
            let (l, r) = factors.split_at(factors.len() / 2);
            &balanced_product(l) * &balanced_product(r)
        }
    }
}

/// `Δ = Π_{i<j} (z_i − z_j)(z_i + z_j)`, degree 12.
pub fn delta() -> &'static MultiPoly {
    &DELTA
}

/// `γ = Π_{i<j} (z_i − z_j)²(z_i + z_j)²`, degree 24.
pub fn gamma() -> &'static MultiPoly {
    &GAMMA
}

/// Elementary symmetric polynomials `e_0..e_12` of the twelve quantities
/// `(z_i ∓ z_j)²`, computed from their power sums `p_m = 6 F_m` by Newton's
/// recurrence `k e_k = Σ_{m=1}^{k} (−1)^{m−1} e_{k−m} p_m`.
pub fn elementary_symmetric_via_newton() -> Vec<MultiPoly> {
    let n = F_MAX as usize;
    let power_sums: Vec<MultiPoly> = (1..=F_MAX)
        .map(|m| f(m).expect("index in range").scale(&rat(6, 1)))
        .collect();
    let mut es = vec![MultiPoly::one()];
    for k in 1..=n {
        let mut acc = MultiPoly::zero();
        for m in 1..=k {
            let term = &es[k - m] * &power_sums[m - 1];
            if m % 2 == 1 {
                acc += &term;
            } else {
                acc += &(-term);
            }
        }
        es.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    es
}

/// `γ` obtained as the product `e_12` of the twelve quantities through
/// power sums alone; equal to [`gamma`] as an exact polynomial.
pub fn gamma_via_newton() -> MultiPoly {
    elementary_symmetric_via_newton().pop().expect("e_12")
}

/// Exact determinant of a square matrix of polynomials by cofactor expansion
/// along the first row.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix required");
    match n {
        0 => MultiPoly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = MultiPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &poly_det(&minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc += &(-term);
                }
            }
            acc
        }
    }
}

/// Jacobian determinant `det(∂F_k/∂z_i)` for `k ∈ {1, 3, 4, 6}`.
pub fn jacobian_f() -> MultiPoly {
    let rows: Vec<Vec<MultiPoly>> = GENERATOR_INDICES
        .iter()
        .map(|&k| {
            let fk = f(k).expect("generator index");
            (0..NVARS).map(|i| fk.diff(i)).collect()
        })
        .collect();
    poly_det(&rows)
}

/// Values of the named invariants at a point of `A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    #[serde(with = "serde_complex")]
    pub e0: Complex64,
    #[serde(with = "serde_complex")]
    pub e1: Complex64,
    #[serde(with = "serde_complex")]
    pub e2: Complex64,
    #[serde(with = "serde_complex")]
    pub e3: Complex64,
    #[serde(with = "serde_complex")]
    pub f1: Complex64,
    #[serde(with = "serde_complex")]
    pub f3: Complex64,
    #[serde(with = "serde_complex")]
    pub f4: Complex64,
    #[serde(with = "serde_complex")]
    pub f6: Complex64,
    #[serde(with = "serde_complex")]
    pub delta: Complex64,
    #[serde(with = "serde_complex")]
    pub gamma: Complex64,
}

/// Evaluates the invariants from their closed forms (sums of powers and
/// products of linear factors), which avoids the cancellation that expanded
/// monomial sums suffer at irrational points.
pub fn eval_invariants(z: &ACoords) -> Result<InvariantReport> {
    let z = ACoords::new(z.0)?.0;
    let e_j = |j: i32| z.iter().map(|c| c.powi(2 * j)).sum::<Complex64>();
    let f_k = |k: i32| {
        PAIRS
            .iter()
            .map(|&(i, j)| (z[i] - z[j]).powi(2 * k) + (z[i] + z[j]).powi(2 * k))
            .sum::<Complex64>()
            / 6.0
    };
    let mut delta = Complex64::one();
    let mut gamma = Complex64::one();
    for &(i, j) in &PAIRS {
        let d = (z[i] - z[j]) * (z[i] + z[j]);
        delta *= d;
        gamma *= d * d;
    }
    Ok(InvariantReport {
        e0: z.iter().product(),
        e1: e_j(1),
        e2: e_j(2),
        e3: e_j(3),
        f1: f_k(1),
        f3: f_k(3),
        f4: f_k(4),
        f6: f_k(6),
        delta,
        gamma,
    })
}

/// `γ` at a point, as a product of its linear factors.
pub fn gamma_value(z: &[Complex64; NVARS]) -> Complex64 {
    PAIRS.iter().fold(Complex64::one(), |acc, &(i, j)| {
        let d = (z[i] - z[j]) * (z[i] + z[j]);
        acc * d * d
    })
}

/// `|γ(z)| / ‖z‖²⁴` below this counts as zero. Random unit points reach
/// `|γ|` near `1e−12` while lying far from every mirror, so the cut sits well
/// below that yet above the round-off of the product form.
pub const GAMMA_ZERO_TOLERANCE: f64 = 1e-24;

/// Whether `γ(z) ≠ 0` numerically, judged scale-free.
pub fn gamma_nonzero(z: &ACoords) -> bool {
    let n = z.norm();
    n > 0.0 && gamma_value(&z.0).norm() > GAMMA_ZERO_TOLERANCE * n.powi(24)
}

/// Named polynomial lookup used by the CLI (`E0..E4`, `F1..F12`, `delta`,
/// `gamma`, `gamma_newton`, `jacobian`).
pub fn named(name: &str) -> Result<MultiPoly> {
    let lower = name.to_ascii_lowercase();
    let index = |s: &str| -> Result<u32> {
        s.parse().map_err(|_| Error::Parse(format!("unknown polynomial {name:?}")))
    };
    match lower.as_str() {
        "delta" => Ok(delta().clone()),
        "gamma" => Ok(gamma().clone()),
        "gamma_newton" => Ok(gamma_via_newton()),
        "jacobian" => Ok(jacobian_f()),
        _ if lower.starts_with('e') => e(index(&lower[1..])?),
        _ if lower.starts_with('f') => f(index(&lower[1..])?),
        _ => Err(Error::Parse(format!("unknown polynomial {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::group;

    fn ints(v: [i64; 4]) -> [Rational; 4] {
        v.map(|x| rat(x, 1))
    }

    #[test]
    fn generators_have_expected_degrees() {
        for j in 0..=4 {
            let p = e(j).unwrap();
            assert!(p.is_homogeneous());
            assert_eq!(p.degree(), Some(if j == 0 { 4 } else { 2 * j }));
        }
        for k in 1..=F_MAX {
            assert_eq!(f(k).unwrap().degree(), Some(2 * k));
        }
        assert_eq!(delta().degree(), Some(12));
        assert_eq!(gamma().degree(), Some(24));
    }

    #[test]
    fn out_of_range_indices_are_rejected() {
        assert!(matches!(e(5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(f(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(f(13), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn small_point_values() {
        assert_eq!(e(0).unwrap().eval_exact(&ints([1, 1, 1, 1])), rat(1, 1));
        assert_eq!(e(2).unwrap().eval_exact(&ints([1, 0, 0, 0])), rat(1, 1));
        assert_eq!(e(3).unwrap().eval_exact(&ints([1, 0, 0, 0])), rat(1, 1));
        for k in 1..=F_MAX {
            assert_eq!(f(k).unwrap().eval_exact(&ints([1, 0, 0, 0])), rat(1, 1), "F{k}");
        }
        assert_eq!(delta().eval_exact(&ints([1, 2, 3, 4])), rat(151_200, 1));
        assert_eq!(gamma().eval_exact(&ints([1, 2, 3, 4])), rat(22_861_440_000, 1));
        assert!(gamma().eval_exact(&ints([1, 0, 0, 0])).is_zero());
        assert!(delta().eval_exact(&ints([5, 5, 2, 7])).is_zero());
    }

    #[test]
    fn f1_and_f2_reduce_to_e1() {
        let e1 = e(1).unwrap();
        assert_eq!(f(1).unwrap(), e1);
        assert_eq!(f(2).unwrap(), e1.pow(2));
        assert_eq!(f(1).unwrap().diff(2), MultiPoly::var(2).scale(&rat(2, 1)));
    }

    #[test]
    fn f3_is_not_a_multiple_of_e1_cubed() {
        let e1c = e(1).unwrap().pow(3);
        let f3 = f(3).unwrap();
        let m = crate::poly::Monomial([6, 0, 0, 0]);
        let ratio = f3.coeff(&m) / e1c.coeff(&m);
        assert_ne!(f3, e1c.scale(&ratio));
    }

    #[test]
    fn gamma_is_delta_squared() {
        assert_eq!(gamma(), &(delta() * delta()));
    }

    #[test]
    fn newton_recurrence_base_cases() {
        let es = elementary_symmetric_via_newton();
        assert_eq!(es.len(), 13);
        assert_eq!(es[1], f(1).unwrap().scale(&rat(6, 1)));
        // power sum p2 of the twelve quantities is Σ(z_i ± z_j)^4 = 6 F2
        let p2 = PAIRS.iter().fold(MultiPoly::zero(), |acc, &(i, j)| {
            &(&acc + &linear_pair(i, j, -1).pow(4)) + &linear_pair(i, j, 1).pow(4)
        });
        assert_eq!(p2, f(2).unwrap().scale(&rat(6, 1)));
        assert_eq!(es[12].eval_exact(&ints([1, 2, 3, 4])), rat(22_861_440_000, 1));
    }

    #[test]
    fn witness_identity_for_e0_squared() {
        let [e0, e1, e2, e3, e4] = [0, 1, 2, 3, 4].map(|j| e(j).unwrap());
        let lhs = e0.pow(2).scale(&rat(24, 1));
        let rhs = &(&(&(&e1.pow(4) - &(&e1.pow(2) * &e2).scale(&rat(6, 1))) + &e2.pow(2).scale(&rat(3, 1)))
            + &(&e1 * &e3).scale(&rat(8, 1)))
            - &e4.scale(&rat(6, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn e0_flips_sign_under_nu() {
        let nu = group::sigma_restriction(1).unwrap();
        assert_eq!(e(0).unwrap().subst_linear(nu.matrix()), -e(0).unwrap());
        for j in 1..=4 {
            assert_eq!(e(j).unwrap().subst_linear(nu.matrix()), e(j).unwrap());
        }
    }

    #[test]
    fn tau_identities_hold_for_both_matrix_forms() {
        let [e0, e1, e2] = [0, 1, 2].map(|j| e(j).unwrap());
        let e1sq = e1.pow(2);
        for tau in [group::sigma_restriction(2).unwrap(), group::hadamard_sigma2()] {
            let t = tau.matrix();
            assert_eq!(e1.subst_linear(t), e1);
            assert_eq!(e1sq.subst_linear(t), e1sq);
            let e2_image = &(&e1sq.scale(&rat(3, 4)) - &e2.scale(&rat(1, 2))) + &e0.scale(&rat(6, 1));
            assert_eq!(e2.subst_linear(t), e2_image);
            let e0_image = &(&e1sq.scale(&rat(-1, 16)) + &e2.scale(&rat(1, 8))) + &e0.scale(&rat(1, 2));
            assert_eq!(e0.subst_linear(t), e0_image);
        }
    }

    #[test]
    fn delta_is_antisymmetric_under_a_transposition() {
        let swap = group::reflection(&ints([1, -1, 0, 0])).unwrap();
        assert_eq!(delta().subst_linear(swap.matrix()), -delta());
    }

    #[test]
    fn report_at_z_l() {
        let r = eval_invariants(&z_l()).unwrap();
        for v in [r.e0, r.e1, r.e2] {
            assert!(v.norm() <= 1e-12, "{v}");
        }
        assert!((r.e3 - 1.0 / 9.0).norm() <= 1e-12);
        let target = -(3f64.powi(-9));
        assert!((r.gamma - target).norm() <= 1e-12 * target.abs());
        assert!((r.gamma - r.delta * r.delta).norm() <= 1e-10 * r.gamma.norm());
        assert!((r.f1 - r.e1).norm() <= 1e-12);
    }

    #[test]
    fn report_at_z_f() {
        let zf = z_f();
        let n = zf.norm();
        let r = eval_invariants(&zf).unwrap();
        assert!(r.f1.norm() <= 1e-9 * n.powi(2));
        assert!(r.f3.norm() <= 1e-9 * n.powi(6));
        assert!(r.f4.norm() <= 1e-9 * n.powi(8));
        assert!(r.f6.norm() > 1e-6);
    }

    #[test]
    fn report_at_first_basis_vector() {
        let r = eval_invariants(&ACoords::real([1.0, 0.0, 0.0, 0.0])).unwrap();
        for v in [r.f1, r.f3, r.f4, r.f6] {
            assert_eq!(v, Complex64::new(1.0, 0.0));
        }
        assert_eq!(r.gamma, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn report_agrees_with_polynomial_evaluation() {
        let z = ACoords([
            Complex64::new(0.3, -1.1),
            Complex64::new(-0.7, 0.2),
            Complex64::new(1.4, 0.5),
            Complex64::new(0.1, 0.9),
        ]);
        let r = eval_invariants(&z).unwrap();
        let check = |p: &MultiPoly, v: Complex64| {
            let w = p.eval(&z.0);
            assert!((w - v).norm() <= 1e-11 * v.norm().max(1e-300), "{w} vs {v}");
        };
        check(&e(0).unwrap(), r.e0);
        check(&e(3).unwrap(), r.e3);
        check(&f(4).unwrap(), r.f4);
        check(&f(6).unwrap(), r.f6);
        check(delta(), r.delta);
        check(gamma(), r.gamma);
        assert!((gamma_value(&z.0) - r.gamma).norm() <= 1e-14 * r.gamma.norm());
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let z = ACoords([Complex64::new(f64::NAN, 0.0); 4]);
        assert!(matches!(eval_invariants(&z), Err(Error::NonFinite(_))));
    }

    #[test]
    fn named_lookup() {
        assert_eq!(named("E2").unwrap(), e(2).unwrap());
        assert_eq!(named("f6").unwrap(), f(6).unwrap());
        assert_eq!(&named("gamma").unwrap(), gamma());
        assert!(named("G1").is_err());
        assert!(named("F99").is_err());
    }
}
