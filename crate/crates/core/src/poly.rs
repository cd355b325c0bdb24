//! Exact sparse polynomials in the four coordinates `z0..z3` of the critical
//! subspace, with arbitrary-precision rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`] under graded-lex order and
//! zero coefficients are never stored, so two polynomials are mathematically
//! equal exactly when they compare equal with `==`.
//!
//! Products and linear substitutions are carried out over the integers after
//! clearing denominators; reduction back to lowest terms happens once per
//! coefficient at the end.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dd::{CDd, Dd};
use crate::matrix::RatMatrix;
use crate::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Number of indeterminates.
pub const NVARS: usize = 4;

/// Exponent vector of `z0^e0 z1^e1 z2^e2 z3^e3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn exponents(&self) -> [u16; NVARS] {
        self.0
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents of `z0`, `z1`, ….
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "z{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact multivariate polynomial in `z0..z3`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

type IntTerms = HashMap<Monomial, BigInt>;

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([(Monomial::ONE, c)])
    }

    /// The coordinate function `z_i`.
    pub fn var(i: usize) -> Self {
        assert!(i < NVARS, "variable index {i} out of range");
        Self::from_terms([(Monomial::var(i), Rational::one())])
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging repeats
    /// and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly { terms: map }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact partial derivative with respect to `z_i`.
    pub fn diff(&self, i: usize) -> Self {
        assert!(i < NVARS, "variable index {i} out of range");
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0;
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * BigInt::from(k))
        });
        // exponents stay distinct after lowering one slot, so no merging needed
        MultiPoly { terms: terms.collect() }
    }

    /// The polynomial `z ↦ p(Mz)`.
    pub fn subst_linear(&self, m: &RatMatrix) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if m.is_monomial() {
            return self.subst_monomial(m);
        }
        // p = P / dp with P integral; M = N / dm with N integral.
        let (int_terms, dp) = self.to_integer_terms();
        let dm = m
            .rows()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let forms: [IntTerms; NVARS] = std::array::from_fn(|i| {
            let mut form = IntTerms::new();
            for j in 0..NVARS {
                let x = m.entry(i, j);
                if !x.is_zero() {
                    form.insert(Monomial::var(j), x.numer() * (&dm / x.denom()));
                }
            }
            form
        });
        // Each term of degree d picks up dm^-d; homogenize by dm^(top - d).
        let top = self.degree().unwrap_or(0);
        let terms: Vec<([u16; NVARS], BigInt)> = int_terms
            .into_iter()
            .map(|(mono, c)| (mono.0, c * dm.pow(top - mono.degree())))
            .collect();
        let image = horner_subst(terms, 0, &forms);
        let denom = dp * dm.pow(top);
        from_integer_terms(image, &denom)
    }

    fn subst_monomial(&self, m: &RatMatrix) -> Self {
        // Row i of M has its single nonzero `a_i` in column `col[i]`.
        let (col, scale): (Vec<usize>, Vec<&Rational>) = (0..NVARS)
            .map(|i| {
                let j = (0..NVARS).find(|&j| !m.entry(i, j).is_zero()).expect("monomial row");
                (j, m.entry(i, j))
            })
            .unzip();
        Self::from_terms(self.terms.iter().map(|(mono, c)| {
            let mut e = [0u16; NVARS];
            let mut coeff = c.clone();
            for i in 0..NVARS {
                let k = mono.0[i];
                if k > 0 {
                    e[col[i]] += k;
                    coeff *= num_traits::pow(scale[i].clone(), usize::from(k));
                }
            }
            (Monomial(e), coeff)
        }))
    }

    /// Floating evaluation at a complex point.
    ///
    /// Terms are summed directly in double-double arithmetic, so the result
    /// is the exact value up to rounding of the inputs and one final rounding.
    pub fn eval(&self, z: &[Complex64; NVARS]) -> Complex64 {
        let powers = dd_power_table(z, self.max_exponents());
        let mut acc = CDd::ZERO;
        for (mono, c) in &self.terms {
            let mut t = CDd::ONE;
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][usize::from(e)];
                }
            }
            acc = acc + t.scale(Dd::from_rational(c));
        }
        acc.to_c64()
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, z: &[Rational; NVARS]) -> Rational {
        let maxe = self.max_exponents();
        let powers: Vec<Vec<Rational>> = (0..NVARS)
            .map(|i| {
                let mut v = vec![Rational::one()];
                for k in 1..=usize::from(maxe[i]) {
                    let next = &v[k - 1] * &z[i];
                    v.push(next);
                }
                v
            })
            .collect();
        self.terms.iter().fold(Rational::zero(), |acc, (mono, c)| {
            let t = (0..NVARS).fold(c.clone(), |t, i| t * &powers[i][usize::from(mono.0[i])]);
            acc + t
        })
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> [u16; NVARS] {
        let mut out = [0u16; NVARS];
        for m in self.terms.keys() {
            for i in 0..NVARS {
                out[i] = out[i].max(m.0[i]);
            }
        }
        out
    }

    fn to_integer_terms(&self) -> (IntTerms, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (terms, den)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exp: m.0.map(u32::from),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self, Error> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for (k, t) in json.terms.iter().enumerate() {
            let parse = |s: &str, what: &str| {
                BigInt::from_str(s).map_err(|_| Error::Parse(format!("terms[{k}].{what}: not an integer: {s:?}")))
            };
            let num = parse(&t.num, "num")?;
            let den = parse(&t.den, "den")?;
            if den.is_zero() {
                return Err(Error::Parse(format!("terms[{k}].den: zero denominator")));
            }
            let mut e = [0u16; NVARS];
            for i in 0..NVARS {
                e[i] = u16::try_from(t.exp[i])
                    .map_err(|_| Error::Parse(format!("terms[{k}].exp[{i}]: exponent too large")))?;
            }
            terms.push((Monomial(e), Rational::new(num, den)));
        }
        Ok(Self::from_terms(terms))
    }
}

fn int_mul(a: &IntTerms, b: &IntTerms) -> IntTerms {
    let mut out = IntTerms::with_capacity(a.len() * b.len() / 2 + 1);
    for (ma, ca) in a {
        for (mb, cb) in b {
            let prod = ca * cb;
            match out.entry(ma.mul(*mb)) {
                std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += prod,
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(prod);
                }
            }
        }
    }
    out
}

fn int_add_assign(acc: &mut IntTerms, other: IntTerms) {
    for (m, c) in other {
        *acc.entry(m).or_insert_with(BigInt::zero) += c;
    }
}

/// Nested Horner evaluation of an integer polynomial at integer linear forms,
/// peeling off one variable per recursion level.
fn horner_subst(terms: Vec<([u16; NVARS], BigInt)>, var: usize, forms: &[IntTerms; NVARS]) -> IntTerms {
    if var == NVARS {
        let c: BigInt = terms.into_iter().map(|(_, c)| c).sum();
        let mut out = IntTerms::new();
        if !c.is_zero() {
            out.insert(Monomial::ONE, c);
        }
        return out;
    }
    let mut groups: BTreeMap<u16, Vec<([u16; NVARS], BigInt)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[var]).or_default().push(t);
    }
    let top = *groups.keys().next_back().expect("nonempty");
    let mut acc = IntTerms::new();
    for k in (0..=top).rev() {
        if !acc.is_empty() {
            acc = int_mul(&acc, &forms[var]);
            acc.retain(|_, c| !c.is_zero());
        }
        if let Some(group) = groups.remove(&k) {
            int_add_assign(&mut acc, horner_subst(group, var + 1, forms));
        }
    }
    acc
}

fn from_integer_terms(terms: IntTerms, den: &BigInt) -> MultiPoly {
    MultiPoly {
        terms: terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, den.clone())))
            .collect(),
    }
}

fn dd_power_table(z: &[Complex64; NVARS], maxe: [u16; NVARS]) -> Vec<Vec<CDd>> {
    (0..NVARS)
        .map(|i| {
            let zi = CDd::from_c64(z[i]);
            let mut v = vec![CDd::ONE];
            for k in 1..=usize::from(maxe[i]) {
                let next = v[k - 1] * zi;
                v.push(next);
            }
            v
        })
        .collect()
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            let entry = self.terms.entry(*m).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(m);
            }
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (a, da) = self.to_integer_terms();
        let (b, db) = rhs.to_integer_terms();
        from_integer_terms(int_mul(&a, &b), &(da * db))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            match (a.is_one(), *m == Monomial::ONE) {
                (true, true) => f.write_str("1")?,
                (true, false) => write!(f, "{m:?}")?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{m:?}")?,
            }
        }
        Ok(())
    }
}

/// Wire form of a polynomial; integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: [u32; NVARS],
    pub num: String,
    pub den: String,
}

/// A polynomial with coefficients rounded to `f64`, for repeated fast
/// evaluation in inner loops where double-double accuracy is not needed.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    terms: Vec<([u16; NVARS], f64)>,
    max_exp: [u16; NVARS],
}

impl FloatPoly {
    pub fn new(p: &MultiPoly) -> Self {
        FloatPoly {
            terms: p
                .terms()
                .map(|(m, c)| (m.0, c.to_f64().unwrap_or(f64::NAN)))
                .collect(),
            max_exp: p.max_exponents(),
        }
    }

    pub fn eval(&self, z: &[Complex64; NVARS]) -> Complex64 {
        let powers = PowerTable::new(z, self.max_exp);
        self.eval_with(&powers)
    }

    pub(crate) fn eval_with(&self, powers: &PowerTable) -> Complex64 {
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (e, c)| {
            let mut t = Complex64::new(*c, 0.0);
            for i in 0..NVARS {
                if e[i] > 0 {
                    t *= powers.0[i][usize::from(e[i])];
                }
            }
            acc + t
        })
    }

    pub fn max_exponents(&self) -> [u16; NVARS] {
        self.max_exp
    }
}

pub(crate) struct PowerTable(Vec<Vec<Complex64>>);

impl PowerTable {
    pub(crate) fn new(z: &[Complex64; NVARS], maxe: [u16; NVARS]) -> Self {
        PowerTable(
            (0..NVARS)
                .map(|i| {
                    let mut v = vec![Complex64::new(1.0, 0.0)];
                    for k in 1..=usize::from(maxe[i]) {
                        let next = v[k - 1] * z[i];
                        v.push(next);
                    }
                    v
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    fn z(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&z(0) + &z(1)) * &(&z(0) - &z(1));
        let expected = &z(0).pow(2) - &z(1).pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn one_is_multiplicative_identity_and_zero_absorbs() {
        let p = &(&z(0).pow(3) + &z(2).scale(&rat(-5, 7))) + &MultiPoly::constant(rat(1, 3));
        assert_eq!(&p * &MultiPoly::one(), p);
        assert!((&p * &MultiPoly::zero()).is_zero());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn graded_lex_order_puts_degree_first() {
        let a = Monomial([0, 0, 0, 3]);
        let b = Monomial([1, 1, 0, 0]);
        let c = Monomial([2, 0, 0, 0]);
        assert!(b < a);
        assert!(b < c);
        assert_eq!(Monomial([1, 2, 3, 4]).degree(), 10);
    }

    #[test]
    fn power_rule_and_product_derivatives() {
        let e1 = &(&z(0).pow(2) + &z(1).pow(2)) + &(&z(2).pow(2) + &z(3).pow(2));
        assert_eq!(e1.diff(0), z(0).scale(&rat(2, 1)));
        let e0 = &(&z(0) * &z(1)) * &(&z(2) * &z(3));
        assert_eq!(e0.diff(3), &(&z(0) * &z(1)) * &z(2));
        assert!(MultiPoly::constant(rat(4, 1)).diff(2).is_zero());
    }

    #[test]
    fn substitution_by_general_matrix() {
        // p = z0^2 - 3/2 z1 z3, M sends z0 -> z0 + z1, z1 -> z2/2, z3 -> -z3
        let p = &z(0).pow(2) - &(&z(1) * &z(3)).scale(&rat(3, 2));
        let m = RatMatrix::from_ints([[2, 2, 0, 0], [0, 0, 1, 0], [0, 0, 2, 0], [0, 0, 0, -2]], 2);
        let expected = &(&z(0) + &z(1)).pow(2) + &(&z(2) * &z(3)).scale(&rat(3, 4));
        assert_eq!(p.subst_linear(&m), expected);
    }

    #[test]
    fn substitution_handles_mixed_degrees() {
        let p = &(&z(0).pow(3) + &z(1)) + &MultiPoly::constant(rat(2, 5));
        let m = RatMatrix::from_ints([[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 2);
        let x = (&z(0) + &z(1)).scale(&rat(1, 2));
        let y = (&z(0) - &z(1)).scale(&rat(1, 2));
        let expected = &(&x.pow(3) + &y) + &MultiPoly::constant(rat(2, 5));
        assert_eq!(p.subst_linear(&m), expected);
    }

    #[test]
    fn exact_evaluation() {
        let p = &z(0).pow(2).scale(&rat(1, 3)) - &z(3);
        let v = p.eval_exact(&[rat(3, 1), rat(0, 1), rat(0, 1), rat(1, 2)]);
        assert_eq!(v, rat(5, 2));
    }

    #[test]
    fn json_round_trip_preserves_big_coefficients() {
        let big = Rational::new(BigInt::from(10).pow(40u32) + 1, BigInt::from(7));
        let p = &z(1).pow(5).scale(&big) + &MultiPoly::constant(rat(-1, 2));
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert!(json.contains("\"exp\":[0,5,0,0]"));
        let back: PolyJson = serde_json::from_str(&json).unwrap();
        assert_eq!(MultiPoly::from_json(&back).unwrap(), p);
    }

    #[test]
    fn json_rejects_bad_fields() {
        let bad = PolyJson {
            terms: vec![TermJson { exp: [0, 0, 0, 0], num: "1".into(), den: "0".into() }],
        };
        assert!(matches!(MultiPoly::from_json(&bad), Err(Error::Parse(_))));
        let bad = PolyJson {
            terms: vec![TermJson { exp: [0, 0, 0, 0], num: "x".into(), den: "1".into() }],
        };
        let err = MultiPoly::from_json(&bad).unwrap_err().to_string();
        assert!(err.contains("terms[0].num"), "{err}");
    }

    #[test]
    fn display_is_readable() {
        let p = &z(0).pow(2) - &z(1).scale(&rat(1, 2));
        assert_eq!(p.to_string(), "z0^2 - 1/2*z1");
    }
}
