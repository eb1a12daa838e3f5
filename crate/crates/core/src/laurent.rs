//! Sparse Laurent polynomials in `t_1..t_n` with arbitrary-precision integer
//! coefficients, their rewriting in the variables `z_i = t_i/t_{i+1} - 1`,
//! and exact division by binomials `1 - m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial.
pub type Exponent = Vec<i32>;

/// A Laurent polynomial in `t_1..t_n` with integer coefficients.
///
/// Terms are kept in a sorted map with no zero coefficients, so structural
/// equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, 1)
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; n], c)
    }

    /// The single term `c * t^exp`. The variable count is `exp.len()`.
    pub fn monomial(exp: Exponent, c: impl Into<BigInt>) -> Self {
        let n = exp.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { n, terms }
    }

    /// The variable `t_i`.
    pub fn var(i: usize, n: usize) -> Result<Self> {
        check_index(i, n)?;
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Ok(Self::monomial(e, 1))
    }

    /// The monomial `t_i / t_j`; equal to 1 when `i == j`.
    pub fn ratio_monomial(i: usize, j: usize, n: usize) -> Result<Self> {
        Ok(Self::monomial(ratio_exponent(i, j, n)?, 1))
    }

    /// The binomial `1 - t_i / t_j`.
    pub fn one_minus_ratio(i: usize, j: usize, n: usize) -> Result<Self> {
        Ok(Self::one(n) - Self::ratio_monomial(i, j, n)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of `t^exp` (zero when absent).
    pub fn coefficient(&self, exp: &[i32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// If `self` is a single term, returns it.
    pub fn as_monomial(&self) -> Option<(&Exponent, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_n(self.n, other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_n(self.n, other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        same_n(self.n, other.n)?;
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `t^exp`.
    pub fn shift(&self, exp: &[i32]) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Product of a sequence of polynomials in `n` variables.
    pub fn product<'a>(n: usize, factors: impl IntoIterator<Item = &'a LaurentPoly>) -> Self {
        let mut acc = Self::one(n);
        for f in factors {
            acc = &acc * f;
        }
        acc
    }

    /// Value at `t_1 = ... = t_n = 1`, i.e. the sum of the coefficients.
    pub fn specialize_all_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Renames variables: `t_j` becomes `t_{sigma(j)}` (1-based).
    pub fn substitute(&self, sigma: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.n];
            for (j, &x) in e.iter().enumerate() {
                f[sigma(j + 1) - 1] += x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// The involution `t_j -> t_{n+1-j}`.
    pub fn bar(&self) -> Self {
        let n = self.n;
        self.substitute(|j| n + 1 - j)
    }

    /// Rewrites `self` as a polynomial in `z_1..z_{n-1}` with
    /// `t_i / t_{i+1} = z_i + 1`.
    ///
    /// A monomial `t^e` of total degree zero equals the product of
    /// `(z_k + 1)^{s_k}` where `s_k = e_1 + ... + e_k`; it is a polynomial in the
    /// `z` variables exactly when every partial sum is nonnegative.
    pub fn z_expand(&self) -> Result<ZPoly> {
        let m = self.n.saturating_sub(1);
        let mut out = ZPoly::zero(m);
        let mut cache: BTreeMap<(usize, u32), Vec<(u32, BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.iter().sum::<i32>() != 0 {
                return Err(Error::NotInConsecutiveRatios(e.clone()));
            }
            let mut partial = 0i32;
            let mut powers = Vec::with_capacity(m);
            for &x in e.iter().take(m) {
                partial += x;
                if partial < 0 {
                    return Err(Error::NotInConsecutiveRatios(e.clone()));
                }
                powers.push(partial as u32);
            }
            // Expand prod_k (z_k + 1)^{s_k} one variable at a time.
            let mut acc: Vec<(Vec<u32>, BigInt)> = vec![(vec![0; m], c.clone())];
            for (k, &s) in powers.iter().enumerate() {
                if s == 0 {
                    continue;
                }
                let row = cache.entry((k, s)).or_insert_with(|| binomial_row(s)).clone();
                let mut next = Vec::with_capacity(acc.len() * row.len());
                for (mono, coef) in &acc {
                    for (d, b) in &row {
                        let mut mm = mono.clone();
                        mm[k] += d;
                        next.push((mm, coef * b));
                    }
                }
                acc = next;
            }
            for (mono, coef) in acc {
                out.add_term(mono, coef);
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / (1 - m)` for a monomial `m = t^exp != 1`.
    ///
    /// Multiplication by `1 - m` only mixes exponents of one class `e + Zm`.
    /// Writing each class as `r + jm`, with `r` reduced in the first nonzero
    /// coordinate of `m`, turns it into a univariate division by `1 - s`;
    /// that division is exact iff the class coefficients sum to zero, and the
    /// quotient coefficients are the prefix sums.
    pub fn divide_by_one_minus_monomial(&self, m: &[i32]) -> Result<Self> {
        if m.len() != self.n {
            return Err(Error::VariableCount(self.n, m.len()));
        }
        let Some(i0) = m.iter().position(|&x| x != 0) else {
            return Err(Error::Division("m = 1".into()));
        };
        let a = m[i0];
        let mut classes: BTreeMap<Exponent, BTreeMap<i32, BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let j = e[i0].div_euclid(a);
            let r: Exponent = e.iter().zip(m).map(|(x, y)| x - j * y).collect();
            classes.entry(r).or_default().insert(j, c.clone());
        }
        let mut q = Self::zero(self.n);
        for (r, coeffs) in classes {
            let (lo, hi) = (*coeffs.keys().next().expect("nonempty"), *coeffs.keys().last().expect("nonempty"));
            let mut acc = BigInt::zero();
            for j in lo..hi {
                if let Some(c) = coeffs.get(&j) {
                    acc += c;
                }
                let exp: Exponent = r.iter().zip(m).map(|(x, y)| x + j * y).collect();
                q.add_term(exp, acc.clone());
            }
            acc += &coeffs[&hi];
            if !acc.is_zero() {
                return Err(Error::Division(format!("nonzero remainder in the class of exponent {r:?}")));
            }
        }
        Ok(q)
    }

    /// Canonical JSON form `{"n": N, "terms": [{"exp": [...], "coef": c}, ...]}`
    /// with terms in lexicographic exponent order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({"exp": e, "coef": bigint_to_json(c)}))
            .collect();
        json!({"n": self.n, "terms": terms})
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing n".into()))? as usize;
        let mut out = Self::zero(n);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let exp: Vec<i32> = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("missing exp".into()))?
                .iter()
                .map(|x| x.as_i64().map(|y| y as i32))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse("bad exponent".into()))?;
            if exp.len() != n {
                return Err(Error::VariableCount(n, exp.len()));
            }
            let coef = bigint_from_json(t.get("coef").ok_or_else(|| Error::Parse("missing coef".into()))?)?;
            out.add_term(exp, coef);
        }
        Ok(out)
    }
}

/// Exponent vector of `t_i / t_j`.
pub fn ratio_exponent(i: usize, j: usize, n: usize) -> Result<Exponent> {
    check_index(i, n)?;
    check_index(j, n)?;
    let mut e = vec![0; n];
    e[i - 1] += 1;
    e[j - 1] -= 1;
    Ok(e)
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::VariableIndex { index: i, n })
    } else {
        Ok(())
    }
}

fn same_n(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::VariableCount(a, b))
    }
}

fn binomial_row(s: u32) -> Vec<(u32, BigInt)> {
    let mut row = Vec::with_capacity(s as usize + 1);
    let mut b = BigInt::one();
    for d in 0..=s {
        row.push((d, b.clone()));
        b = b * BigInt::from(s - d) / BigInt::from(d + 1);
    }
    row
}

fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(x) = v.as_i64() {
        return Ok(BigInt::from(x));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad coefficient {v}")))
}

fn fmt_coef_mono(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    vars: &[String],
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    if vars.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{}", vars.join("*"))
    } else {
        write!(f, "{abs}*{}", vars.join("*"))
    }
}

impl fmt::Display for LaurentPoly {
    /// Human-readable form such as `1 - t1*t2^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| if x == 1 { format!("t{}", k + 1) } else { format!("t{}^{}", k + 1, x) })
                .collect();
            fmt_coef_mono(f, first, c, &vars)?;
            first = false;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics when the variable counts differ; use the `checked_*`
            /// methods to get an error instead.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent polynomial operands")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.n, rhs.n, "Laurent polynomial operands");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.n, rhs.n, "Laurent polynomial operands");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

/// A polynomial in `z_1..z_m` with integer coefficients, where
/// `z_i = t_i / t_{i+1} - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZPoly {
    m: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ZPoly {
    pub fn zero(m: usize) -> Self {
        ZPoly { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        let mut p = Self::zero(m);
        p.add_term(vec![0; m], BigInt::one());
        p
    }

    /// The variable `z_i` (1-based).
    pub fn var(i: usize, m: usize) -> Result<Self> {
        check_index(i, m)?;
        let mut e = vec![0; m];
        e[i - 1] = 1;
        let mut p = Self::zero(m);
        p.add_term(e, BigInt::one());
        Ok(p)
    }

    /// Number of `z` variables.
    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "z-polynomial operands");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "z-polynomial operands");
        let mut out = Self::zero(self.m);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        ZPoly { m: self.m, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    /// Back-substitutes `z_i = t_i / t_{i+1} - 1` into `m + 1` variables.
    pub fn to_laurent(&self) -> LaurentPoly {
        let n = self.m + 1;
        let mut out = LaurentPoly::zero(n);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(n, c.clone());
            for (k, &p) in e.iter().enumerate() {
                let zk = LaurentPoly::ratio_monomial(k + 1, k + 2, n).expect("index in range")
                    - LaurentPoly::one(n);
                for _ in 0..p {
                    term = &term * &zk;
                }
            }
            out += &term;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({"exp": e, "coef": bigint_to_json(c)}))
            .collect();
        json!({"vars": self.m, "terms": terms})
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| if x == 1 { format!("z{}", k + 1) } else { format!("z{}^{}", k + 1, x) })
                .collect();
            fmt_coef_mono(f, first, c, &vars)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(i: usize, j: usize, n: usize) -> LaurentPoly {
        LaurentPoly::ratio_monomial(i, j, n).unwrap()
    }

    fn one_minus(i: usize, j: usize, n: usize) -> LaurentPoly {
        LaurentPoly::one_minus_ratio(i, j, n).unwrap()
    }

    fn z(i: usize, m: usize) -> ZPoly {
        ZPoly::var(i, m).unwrap()
    }

    #[test]
    fn ratio_monomials() {
        assert_eq!(r(1, 2, 4).coefficient(&[1, -1, 0, 0]), BigInt::from(1));
        assert!(r(3, 3, 4).is_one());
        assert_eq!(&r(1, 2, 4) * &r(2, 3, 4), r(1, 3, 4));
        assert!(LaurentPoly::ratio_monomial(0, 2, 4).is_err());
        assert!(LaurentPoly::ratio_monomial(1, 5, 4).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let n = 3;
        assert!((one_minus(1, 2, n) + r(1, 2, n)).is_one());
        let prod = &one_minus(1, 2, n) * &one_minus(2, 3, n);
        let expect = LaurentPoly::one(n) - r(1, 2, n) - r(2, 3, n) + r(1, 3, n);
        assert_eq!(prod, expect);
        assert!((-LaurentPoly::zero(n)).is_zero());
        assert!(LaurentPoly::one(2).checked_add(&LaurentPoly::one(3)).is_err());
    }

    #[test]
    fn specialization() {
        assert_eq!(one_minus(1, 2, 2).specialize_all_one(), BigInt::from(0));
        assert_eq!(r(1, 4, 4).specialize_all_one(), BigInt::from(1));
    }

    #[test]
    fn z_expand_examples() {
        // 1 - t1/t3 = -(z1 z2 + z1 + z2)
        let got = one_minus(1, 3, 3).z_expand().unwrap();
        let expect = z(1, 2).mul(&z(2, 2)).add(&z(1, 2)).add(&z(2, 2)).neg();
        assert_eq!(got, expect);
        // t2/t4 = (z2 + 1)(z3 + 1)
        let got = r(2, 4, 4).z_expand().unwrap();
        let expect = z(2, 3).add(&ZPoly::one(3)).mul(&z(3, 3).add(&ZPoly::one(3)));
        assert_eq!(got, expect);
        assert!(LaurentPoly::var(1, 3).unwrap().z_expand().is_err());
        assert!(r(3, 1, 3).z_expand().is_err());
    }

    #[test]
    fn z_round_trip() {
        let p = &one_minus(1, 3, 4) * &r(2, 4, 4) - one_minus(3, 4, 4);
        assert_eq!(p.z_expand().unwrap().to_laurent(), p);
    }

    #[test]
    fn division_examples() {
        let m = vec![1, -1, 0];
        let mono = LaurentPoly::monomial(m.clone(), 1);
        let one = LaurentPoly::one(3);
        let m2 = &mono * &mono;
        assert_eq!((&one - &m2).divide_by_one_minus_monomial(&m).unwrap(), &one + &mono);
        assert!(LaurentPoly::zero(3).divide_by_one_minus_monomial(&m).unwrap().is_zero());
        let e13 = vec![1, 0, -1];
        assert!(one_minus(1, 3, 3).divide_by_one_minus_monomial(&e13).unwrap().is_one());
        assert!(one.divide_by_one_minus_monomial(&m).is_err());
        assert!(one.divide_by_one_minus_monomial(&[0, 0, 0]).is_err());
        // An inverted monomial goes through the reflected branch.
        let inv = vec![-1, 1, 0];
        let q = r(1, 3, 3);
        let p = &q * &(&one - &LaurentPoly::monomial(inv.clone(), 1));
        assert_eq!(p.divide_by_one_minus_monomial(&inv).unwrap(), q);
    }

    #[test]
    fn json_round_trip() {
        let p = &one_minus(1, 2, 3) * &r(2, 3, 3).scale(&BigInt::from(-7));
        let v = p.to_json();
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), p);
        assert_eq!(
            LaurentPoly::one_minus_ratio(1, 2, 2).unwrap().to_json_string(),
            r#"{"n":2,"terms":[{"exp":[0,0],"coef":1},{"exp":[1,-1],"coef":-1}]}"#
        );
    }

    #[test]
    fn display() {
        assert_eq!(one_minus(1, 2, 2).to_string(), "-t1*t2^-1 + 1");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
    }
}
