//! Finite groups of exact linear maps of `A`.
//!
//! `W` (signed permutations of `u0..u3` with an even number of sign changes,
//! order 192) is generated by the reflections in `u0−u1`, `u1−u2`, `u2−u3`
//! and `u2+u3`. Adding the qubit-swap restrictions `ν = s_{u3}` and
//! `τ = s_α` with `α = (u0 − u1 − u2 − u3)/2` gives `W̃`, the Weyl group of
//! type F4 (order 1152, containing `−I`).
//!
//! Closure is breadth-first from the identity. Every element records the
//! (parent, generator) pair it was first reached by, so the action of the
//! whole group on a polynomial can be computed one generator step at a time.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::{rat, RatMatrix};
use crate::poly::{MultiPoly, Rational, NVARS};
use crate::{Error, Result};

/// Default bound on closure size; far above the largest group built here.
pub const DEFAULT_CAP: usize = 10_000;

/// An invertible exact linear map of `A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement(RatMatrix);

impl GroupElement {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if m.det().is_zero() {
            return Err(Error::Dimension("group element must be invertible".into()));
        }
        Ok(GroupElement(m))
    }

    pub fn identity() -> Self {
        GroupElement(RatMatrix::identity())
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn det(&self) -> Rational {
        self.0.det()
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement(&self.0 * &other.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> GroupElement {
        let mut a = self.0 .0.clone();
        let mut inv = RatMatrix::identity().0;
        for col in 0..NVARS {
            let pivot = (col..NVARS)
                .find(|&r| !a[r][col].is_zero())
                .expect("invertible by construction");
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col].clone();
            for c in 0..NVARS {
                a[col][c] /= &p;
                inv[col][c] /= &p;
            }
            for r in 0..NVARS {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..NVARS {
                    let da = &factor * &a[col][c];
                    let di = &factor * &inv[col][c];
                    a[r][c] -= da;
                    inv[r][c] -= di;
                }
            }
        }
        GroupElement(RatMatrix(inv))
    }

    /// Rows as strings like `"-1/2"`, for JSON output.
    pub fn to_strings(&self) -> [[String; NVARS]; NVARS] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0.entry(i, j).to_string()))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

/// The reflection `s_λ a = a − 2⟨λ|a⟩/⟨λ|λ⟩ λ` in the hyperplane orthogonal to `λ`.
pub fn reflection(lambda: &[Rational; NVARS]) -> Result<GroupElement> {
    let norm2 = lambda.iter().fold(Rational::zero(), |acc, x| acc + x * x);
    if norm2.is_zero() {
        return Err(Error::ZeroVector);
    }
    let two_over = rat(2, 1) / norm2;
    Ok(GroupElement(RatMatrix::from_fn(|i, j| {
        let id = if i == j { Rational::one() } else { Rational::zero() };
        id - &two_over * &lambda[i] * &lambda[j]
    })))
}

fn reflection_ints(v: [i64; NVARS], den: i64) -> GroupElement {
    reflection(&v.map(|x| rat(x, den))).expect("nonzero root")
}

/// `ν = s_{u3}`, the restriction of the swap of qubits 1 and 2 (and of 3 and 4).
pub fn nu() -> GroupElement {
    reflection_ints([0, 0, 0, 1], 1)
}

/// `τ = s_α`, `α = (u0 − u1 − u2 − u3)/2`, the restriction of the swap of qubits 2 and 3.
pub fn tau() -> GroupElement {
    reflection_ints([1, -1, -1, -1], 2)
}

/// Matrix of the qubit transposition `(i, i+1)` restricted to `A`, relative
/// to the basis `u0..u3`.
///
/// `i = 1` and `i = 3` give `diag(1, 1, 1, −1)`; `i = 2` gives `τ`. These are
/// the restrictions of the actual slot swaps (see
/// [`crate::qstate::slot_swap_restriction`]).
pub fn sigma_restriction(i: u32) -> Result<GroupElement> {
    match i {
        1 | 3 => Ok(nu()),
        2 => Ok(tau()),
        _ => Err(Error::IndexOutOfRange { what: "sigma", index: i.into(), range: "1..=3" }),
    }
}

/// A Hadamard-like form sometimes given for the middle swap,
/// `½[[1,1,1,1],[1,1,−1,−1],[1,−1,−1,1],[1,−1,1,−1]]`.
///
/// It differs from [`tau`] by the transposition of `u2, u3` (an element of
/// `W`), has determinant `+1` and is therefore not a reflection. It
/// generates the same `W̃` together with `W`.
pub fn hadamard_sigma2() -> GroupElement {
    GroupElement(RatMatrix::from_ints(
        [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]],
        2,
    ))
}

/// Reflections in `u0−u1`, `u1−u2`, `u2−u3`, `u2+u3`, generating `W`.
pub fn w_generators() -> Vec<GroupElement> {
    vec![
        reflection_ints([1, -1, 0, 0], 1),
        reflection_ints([0, 1, -1, 0], 1),
        reflection_ints([0, 0, 1, -1], 1),
        reflection_ints([0, 0, 1, 1], 1),
    ]
}

/// The three groups built in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    /// `W`, order 192.
    W,
    /// `W` together with `ν`: all signed permutations, order 384.
    WNu,
    /// `W̃`, generated by `W`, `ν` and `τ`.
    WTilde,
}

impl Which {
    pub fn generators(self) -> Vec<GroupElement> {
        let mut g = w_generators();
        if matches!(self, Which::WNu | Which::WTilde) {
            g.push(nu());
        }
        if self == Which::WTilde {
            g.push(tau());
        }
        g
    }

    pub fn closure(self) -> Result<GroupSet> {
        generate_closure(&self.generators(), DEFAULT_CAP)
    }

    pub fn name(self) -> &'static str {
        match self {
            Which::W => "W",
            Which::WNu => "WNu",
            Which::WTilde => "WTilde",
        }
    }
}

impl std::str::FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w" => Ok(Which::W),
            "wnu" | "w+nu" | "signed" => Ok(Which::WNu),
            "wtilde" | "w~" | "full" | "f4" => Ok(Which::WTilde),
            _ => Err(Error::Parse(format!("unknown group {s:?} (expected W, WNu or WTilde)"))),
        }
    }
}

/// A finite group enumerated from its generators.
#[derive(Clone, Debug)]
pub struct GroupSet {
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    generators: Vec<GroupElement>,
    /// `words[k] = Some((p, g))` when `elements[k] = elements[p] · generators[g]`.
    words: Vec<Option<(usize, usize)>>,
}

/// Breadth-first closure of `gens` under multiplication, failing once more
/// than `cap` elements have been found.
pub fn generate_closure(gens: &[GroupElement], cap: usize) -> Result<GroupSet> {
    let mut set = GroupSet {
        elements: vec![GroupElement::identity()],
        index: HashMap::new(),
        generators: gens.to_vec(),
        words: vec![None],
    };
    set.index.insert(GroupElement::identity(), 0);
    if cap == 0 {
        return Err(Error::CapExceeded { cap, found: 1 });
    }
    let mut head = 0;
    while head < set.elements.len() {
        for (g_idx, g) in gens.iter().enumerate() {
            let next = set.elements[head].compose(g);
            if set.index.contains_key(&next) {
                continue;
            }
            if set.elements.len() == cap {
                return Err(Error::CapExceeded { cap, found: set.elements.len() + 1 });
            }
            set.index.insert(next.clone(), set.elements.len());
            set.elements.push(next);
            set.words.push(Some((head, g_idx)));
        }
        head += 1;
    }
    Ok(set)
}

impl GroupSet {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Number of elements with determinant `+1`.
    pub fn rotation_count(&self) -> usize {
        self.elements.iter().filter(|g| g.det().is_one()).count()
    }

    /// Exhaustive check that the set contains `I`, and is closed under all
    /// pairwise products and inverses.
    pub fn verify_group_axioms(&self) -> bool {
        if !self.contains(&GroupElement::identity()) {
            return false;
        }
        if !self.elements.iter().all(|g| self.contains(&g.inverse())) {
            return false;
        }
        match ScaledTable::new(&self.elements) {
            Some(table) => table.closed_under_products(),
            None => self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b)))),
        }
    }

    /// Images `p ∘ M` for every element `M`, as indices into a list of the
    /// distinct image polynomials (index 0 is `p` itself).
    ///
    /// Each image is derived from its parent's image through one generator,
    /// `p ∘ (P·g) = (p ∘ P) ∘ g`, and substitutions of the same polynomial by
    /// the same generator are computed once. With `stop_on_new` the walk ends
    /// at the first image different from `p`.
    fn images(&self, p: &MultiPoly, stop_on_new: bool) -> (Vec<MultiPoly>, Vec<usize>) {
        let mut distinct = vec![p.clone()];
        let mut lookup: HashMap<MultiPoly, usize> = HashMap::from([(p.clone(), 0)]);
        let mut memo: HashMap<(usize, usize), usize> = HashMap::new();
        let mut ids = vec![0usize; self.order()];
        for k in 1..self.order() {
            let (parent, g) = self.words[k].expect("non-identity elements have words");
            let key = (ids[parent], g);
            let id = match memo.get(&key) {
                Some(&id) => id,
                None => {
                    let image = distinct[key.0].subst_linear(self.generators[g].matrix());
                    let id = *lookup.entry(image.clone()).or_insert_with(|| {
                        distinct.push(image);
                        distinct.len() - 1
                    });
                    memo.insert(key, id);
                    id
                }
            };
            ids[k] = id;
            if stop_on_new && id != 0 {
                ids.truncate(k + 1);
                break;
            }
        }
        (distinct, ids)
    }

    /// The distinct polynomials `p ∘ M`, `M` ranging over the group.
    pub fn orbit(&self, p: &MultiPoly) -> Vec<MultiPoly> {
        self.images(p, false).0
    }

    /// True iff `p ∘ M = p` exactly for every element `M`.
    pub fn is_invariant(&self, p: &MultiPoly) -> bool {
        let (distinct, _) = self.images(p, true);
        distinct.len() == 1
    }

    /// Same predicate as [`GroupSet::is_invariant`], substituting every
    /// element's matrix directly. Much slower for high degrees.
    pub fn is_invariant_direct(&self, p: &MultiPoly) -> bool {
        use rayon::prelude::*;
        self.elements.par_iter().all(|g| p.subst_linear(g.matrix()) == *p)
    }

    /// Per-element check of `q ∘ M = det(M) · q`.
    pub fn check_det_equivariance(&self, q: &MultiPoly) -> bool {
        let (distinct, ids) = self.images(q, false);
        let neg = -q;
        self.elements.iter().zip(&ids).all(|(g, &id)| {
            let expected = if g.det().is_one() { q } else { &neg };
            g.det().abs().is_one() && distinct[id] == *expected
        })
    }
}

/// `Δ ∘ s = det(s) · Δ` for every element of the group.
pub fn check_delta_equivariance(group: &GroupSet) -> bool {
    group.check_det_equivariance(crate::invariants::delta())
}

/// `p` is invariant under every element of `group`.
pub fn is_invariant(p: &MultiPoly, group: &GroupSet) -> bool {
    group.is_invariant(p)
}

/// Elements scaled by a common denominator to small integers, for fast
/// exhaustive closure checks.
struct ScaledTable {
    den: i128,
    mats: Vec<[[i128; NVARS]; NVARS]>,
    index: HashMap<[[i128; NVARS]; NVARS], usize>,
}

impl ScaledTable {
    fn new(elements: &[GroupElement]) -> Option<Self> {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let den = elements
            .iter()
            .flat_map(|g| g.matrix().rows().iter().flatten())
            .try_fold(1i128, |acc, x| x.denom().to_i128().map(|d| acc.lcm(&d)))?;
        if den > 1 << 20 {
            return None;
        }
        let mut mats = Vec::with_capacity(elements.len());
        for g in elements {
            let mut m = [[0i128; NVARS]; NVARS];
            for (i, row) in g.matrix().rows().iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let scaled = x * Rational::from_integer(den.into());
                    m[i][j] = scaled.to_integer().to_i128()?;
                    if m[i][j].abs() > 1 << 20 {
                        return None;
                    }
                }
            }
            mats.push(m);
        }
        let index = mats.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        Some(ScaledTable { den, mats, index })
    }

    fn closed_under_products(&self) -> bool {
        use rayon::prelude::*;
        self.mats.par_iter().all(|a| {
            self.mats.iter().all(|b| {
                let mut c = [[0i128; NVARS]; NVARS];
                for i in 0..NVARS {
                    for j in 0..NVARS {
                        let s: i128 = (0..NVARS).map(|k| a[i][k] * b[k][j]).sum();
                        if s % self.den != 0 {
                            return false;
                        }
                        c[i][j] = s / self.den;
                    }
                }
                self.index.contains_key(&c)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants;

    fn v(x: [i64; 4]) -> [Rational; 4] {
        x.map(|a| rat(a, 1))
    }

    #[test]
    fn reflection_in_u3_is_nu() {
        let r = reflection(&v([0, 0, 0, 1])).unwrap();
        assert_eq!(r.matrix(), &RatMatrix::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]], 1));
        assert_eq!(sigma_restriction(1).unwrap(), r);
        assert_eq!(sigma_restriction(3).unwrap(), r);
    }

    #[test]
    fn reflection_in_alpha() {
        let expected = RatMatrix::from_ints(
            [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]],
            2,
        );
        assert_eq!(tau().matrix(), &expected);
        assert_eq!(sigma_restriction(2).unwrap(), tau());
    }

    #[test]
    fn hadamard_form_differs_from_tau_by_an_element_of_w() {
        let swap23 = reflection(&v([0, 0, 1, -1])).unwrap();
        assert_eq!(swap23.compose(&tau()), hadamard_sigma2());
        assert_eq!(hadamard_sigma2().det(), rat(1, 1));
        assert!(hadamard_sigma2().is_involution());
    }

    #[test]
    fn root_reflection_is_a_transposition() {
        let r = reflection(&v([1, -1, 0, 0])).unwrap();
        assert_eq!(r.matrix(), &RatMatrix::from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 1));
    }

    #[test]
    fn reflections_are_involutions_with_det_minus_one() {
        for lambda in [[1, 2, 0, -3], [1, -1, -1, -1], [0, 0, 5, 0], [2, 3, 5, 7]] {
            let r = reflection(&v(lambda)).unwrap();
            assert!(r.is_involution());
            assert_eq!(r.det(), rat(-1, 1));
        }
    }

    #[test]
    fn zero_vector_and_bad_index_are_rejected() {
        assert_eq!(reflection(&v([0, 0, 0, 0])), Err(Error::ZeroVector));
        assert!(sigma_restriction(0).is_err());
        assert!(sigma_restriction(4).is_err());
        assert!(GroupElement::new(RatMatrix::from_ints([[0; 4]; 4], 1)).is_err());
    }

    #[test]
    fn trivial_group() {
        let g = generate_closure(&[], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_invariant(&invariants::e(0).unwrap()));
        assert!(g.verify_group_axioms());
    }

    #[test]
    fn e0_is_not_nu_invariant() {
        let g = generate_closure(&[nu()], 10).unwrap();
        assert_eq!(g.order(), 2);
        assert!(!g.is_invariant(&invariants::e(0).unwrap()));
        assert!(g.is_invariant(&invariants::e(1).unwrap()));
    }

    #[test]
    fn group_orders() {
        assert_eq!(Which::W.closure().unwrap().order(), 192);
        assert_eq!(Which::WNu.closure().unwrap().order(), 384);
        let full = Which::WTilde.closure().unwrap();
        assert_eq!(full.order(), 1152);
        let minus_i = GroupElement(RatMatrix::identity().scale(&rat(-1, 1)));
        assert!(full.contains(&minus_i));
    }

    #[test]
    fn cap_is_enforced() {
        let err = generate_closure(&Which::WTilde.generators(), 500).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 500, .. }));
        // a rotation of infinite order never closes
        let rot = GroupElement::new(RatMatrix::from_ints([[3, -4, 0, 0], [4, 3, 0, 0], [0, 0, 5, 0], [0, 0, 0, 5]], 5)).unwrap();
        assert!(matches!(generate_closure(&[rot], 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn closures_satisfy_group_axioms() {
        for which in [Which::W, Which::WNu] {
            assert!(which.closure().unwrap().verify_group_axioms());
        }
    }

    #[test]
    fn inverse_is_exact() {
        let g = tau().compose(&reflection(&v([0, 1, -1, 0])).unwrap()).compose(&nu());
        assert!(g.compose(&g.inverse()).is_identity());
        let m = GroupElement::new(RatMatrix::from_ints([[2, 1, 0, 0], [0, 1, 0, 3], [1, 0, 1, 0], [0, 0, 1, 1]], 1)).unwrap();
        assert!(m.inverse().compose(&m).is_identity());
    }

    #[test]
    fn e3_is_w_invariant_but_not_w_tilde_invariant() {
        let e3 = invariants::e(3).unwrap();
        assert!(Which::W.closure().unwrap().is_invariant(&e3));
        assert!(Which::WNu.closure().unwrap().is_invariant(&e3));
        assert!(!Which::WTilde.closure().unwrap().is_invariant(&e3));
    }

    #[test]
    fn word_walk_agrees_with_direct_substitution() {
        let full = Which::WTilde.closure().unwrap();
        for p in [invariants::f(1).unwrap(), invariants::f(3).unwrap(), invariants::e(2).unwrap()] {
            assert_eq!(full.is_invariant(&p), full.is_invariant_direct(&p));
        }
        // an orbit computed both ways
        let e0 = invariants::e(0).unwrap();
        let mut walked = full.orbit(&e0);
        let mut direct: Vec<MultiPoly> = full
            .elements()
            .iter()
            .map(|g| e0.subst_linear(g.matrix()))
            .collect();
        direct.sort_by_key(|p| p.to_string());
        direct.dedup();
        walked.sort_by_key(|p| p.to_string());
        assert_eq!(walked, direct);
    }

    #[test]
    fn delta_equivariance_on_w() {
        let w = Which::W.closure().unwrap();
        assert!(check_delta_equivariance(&w));
        // E0 is not det-equivariant
        assert!(!w.check_det_equivariance(&invariants::e(0).unwrap()));
    }

    #[test]
    fn which_parses() {
        assert_eq!("w".parse::<Which>().unwrap(), Which::W);
        assert_eq!("WTilde".parse::<Which>().unwrap(), Which::WTilde);
        assert!("x".parse::<Which>().is_err());
    }
}
