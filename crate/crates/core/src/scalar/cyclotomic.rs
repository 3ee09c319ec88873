use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{frac, Rational};
use crate::error::{Error, Result};

/// Coefficients (constant term first) of the `m`-th cyclotomic polynomial.
///
/// Computed by dividing `t^m - 1` by Φ_d for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    let mut result = vec![0i64; m as usize + 1];
    result[0] = -1;
    result[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            result = exact_div_monic(&result, &cyclotomic_polynomial(d));
        }
    }
    result
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// The field Q(ζ_M) with ζ_M = e[1/M], realised as Q[t]/Φ_M(t).
#[derive(Debug)]
pub struct CycField {
    conductor: u32,
    /// Φ_M, constant term first, monic.
    modulus: Vec<BigInt>,
    /// `t^k mod Φ_M` for `0 <= k < M`.
    powers: Vec<Vec<BigInt>>,
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();

impl CycField {
    /// Shared handle to Q(ζ_M).
    pub fn get(conductor: u32) -> Arc<CycField> {
        assert!(conductor >= 1, "conductor must be positive");
        let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut cache = cache.lock().expect("field cache poisoned");
        cache
            .entry(conductor)
            .or_insert_with(|| Arc::new(CycField::build(conductor)))
            .clone()
    }

    fn build(conductor: u32) -> CycField {
        let modulus: Vec<BigInt> = cyclotomic_polynomial(conductor)
            .into_iter()
            .map(BigInt::from)
            .collect();
        let deg = modulus.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![BigInt::zero(); deg];
        cur[0] = BigInt::one();
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by t
            let top = cur[deg - 1].clone();
            for k in (1..deg).rev() {
                cur[k] = cur[k - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for k in 0..deg {
                    cur[k] -= &top * &modulus[k];
                }
            }
        }
        CycField {
            conductor,
            modulus,
            powers,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// φ(M), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CycField {}

/// An element of Q(ζ_M): `(Σ num_k t^k) / den` reduced modulo Φ_M.
///
/// Normalised so that `den > 0` and the gcd of `den` with all numerators is 1.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycNum {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CycField>, value: i64) -> Self {
        let mut z = Self::zero(field);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_rational(field: &Arc<CycField>, value: &Rational) -> Self {
        let mut z = Self::zero(field);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        z
    }

    /// `ζ_M^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> Self {
        let m = field.conductor as i64;
        let idx = k.rem_euclid(m) as usize;
        CycNum {
            field: field.clone(),
            num: field.powers[idx].clone(),
            den: BigInt::one(),
        }
    }

    /// Builds `Σ coeffs[k] t^k`, reducing powers beyond φ(M).
    pub fn from_power_coeffs(field: &Arc<CycField>, coeffs: &[(i64, Rational)]) -> Self {
        let mut acc = Self::zero(field);
        for (k, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            acc += &Self::zeta_pow(field, *k).scale(c);
        }
        acc
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Coordinates in the power basis `1, t, …, t^{φ(M)-1}`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|a| a * c.numer()).collect(),
            den: &self.den * c.denom(),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(c)))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_M.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, &r.recip()));
        }
        let a: Vec<Rational> = self.coeffs();
        let m: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // invariant: s * a ≡ r0 (mod Φ), t * a ≡ r1 (mod Φ)
        let (mut r0, mut r1) = (m, trim(a));
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = qpoly_divmod(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return Err(Error::Internal(
                    "non-trivial gcd with cyclotomic modulus".into(),
                ));
            }
        }
        let c = r1[0].recip();
        let terms: Vec<(i64, Rational)> = s1
            .iter()
            .enumerate()
            .map(|(k, v)| (k as i64, v * &c))
            .collect();
        Ok(Self::from_power_coeffs(&self.field, &terms))
    }

    pub fn div(&self, other: &CycNum) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation, the automorphism ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let m = self.field.conductor as i64;
        let mut acc = Self::zero(&self.field);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = Self::zeta_pow(&self.field, m - k as i64);
            for v in term.num.iter_mut() {
                *v *= c;
            }
            acc.add_num(&term.num, &BigInt::one());
        }
        acc.den = self.den.clone();
        acc.normalize();
        acc
    }

    /// Image under Q(ζ_M) → Q(ζ_{M'}), ζ_M ↦ ζ_{M'}^{M'/M}.
    pub fn embed(&self, target: &Arc<CycField>) -> Result<Self> {
        if Arc::ptr_eq(&self.field, target) || self.field.conductor == target.conductor {
            return Ok(CycNum {
                field: target.clone(),
                ..self.clone()
            });
        }
        if target.conductor % self.field.conductor != 0 {
            return Err(Error::ConductorMismatch(
                self.field.conductor,
                target.conductor,
            ));
        }
        let step = (target.conductor / self.field.conductor) as i64;
        let mut acc = Self::zero(target);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = Self::zeta_pow(target, step * k as i64);
            for v in term.num.iter_mut() {
                *v *= c;
            }
            acc.add_num(&term.num, &BigInt::one());
        }
        acc.den = self.den.clone();
        acc.normalize();
        Ok(acc)
    }

    /// Numerical value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.field.conductor as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * k as f64 / m;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Nonzero terms `(k, c)` meaning `Σ c·e[k/M]` in the power basis.
    pub fn terms(&self) -> Vec<(usize, Rational)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::new(c.clone(), self.den.clone())))
            .collect()
    }

    fn add_num(&mut self, num: &[BigInt], den: &BigInt) {
        if den == &self.den {
            for (a, b) in self.num.iter_mut().zip(num) {
                *a += b;
            }
        } else {
            let l = super::lcm(&self.den, den);
            let fa = &l / &self.den;
            let fb = &l / den;
            for (a, b) in self.num.iter_mut().zip(num) {
                *a = &*a * &fa + b * &fb;
            }
            self.den = l;
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for a in self.num.iter_mut() {
                *a = -&*a;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for a in &self.num {
            if g.is_one() {
                break;
            }
            if !a.is_zero() {
                g = g.gcd(a);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for a in self.num.iter_mut() {
                *a /= &g;
            }
        }
    }

    fn check_field(&self, other: &CycNum) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor,
            "mixing Q(zeta_{}) and Q(zeta_{})",
            self.field.conductor,
            other.field.conductor
        );
    }
}

/// `e[α]` in the given field.
pub fn root_of_unity(alpha: &Rational, field: &Arc<CycField>) -> Result<CycNum> {
    let scaled = frac(alpha) * Rational::from_integer(BigInt::from(field.conductor));
    if !scaled.denom().is_one() {
        return Err(Error::DenominatorMismatch {
            alpha: alpha.to_string(),
            conductor: field.conductor,
        });
    }
    let k = scaled.numer().to_i64().expect("exponent fits in i64");
    Ok(CycNum::zeta_pow(field, k))
}

pub fn invert(a: &CycNum) -> Result<CycNum> {
    a.inv()
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor
            && self.den == other.den
            && self.num == other.num
    }
}

impl Eq for CycNum {}

impl std::hash::Hash for CycNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.check_field(rhs);
        let mut out = self.clone();
        out.add_num(&rhs.num, &rhs.den);
        out
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        self.check_field(rhs);
        self.add_num(&rhs.num, &rhs.den);
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|a| -a).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero(&self.field);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        let deg = self.field.degree();
        let m = self.field.conductor as usize;
        let mut wide = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = wide[..deg].to_vec();
        for (k, c) in wide.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in num.iter_mut().zip(&self.field.powers[k % m]) {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        let mut out = CycNum {
            field: self.field.clone(),
            num,
            den: &self.den * &rhs.den,
        };
        out.normalize();
        out
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let m = self.field.conductor;
        for (idx, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *k == 0 {
                write!(f, "{}", mag)?;
            } else {
                let e = Rational::new(BigInt::from(*k), BigInt::from(m));
                if mag.is_one() {
                    write!(f, "e[{}]", e)?;
                } else {
                    write!(f, "{}*e[{}]", mag, e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum<{}>({})", self.field.conductor, self)
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn qpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(k).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn qpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qpoly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn phi6_by_dividing_out_divisors() {
        // oracle: (t^6 - 1) / ((t - 1)(t + 1)(t^2 + t + 1)) by long division
        let prod = [-1i64, -1, 0, 1, 1]; // (t^2 - 1)(t^2 + t + 1)
        let q = exact_div_monic(&[-1, 0, 0, 0, 0, 0, 1], &prod);
        assert_eq!(q, cyclotomic_polynomial(6));
    }

    #[test]
    fn roots_of_unity() {
        let f = CycField::get(4);
        assert!(root_of_unity(&rat(0, 1), &f).unwrap().is_one());
        let i = root_of_unity(&rat(1, 4), &f).unwrap();
        assert_eq!(i.coeffs(), vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(&i * &i, CycNum::from_int(&f, -1));

        let f12 = CycField::get(12);
        let w = root_of_unity(&rat(1, 3), &f12).unwrap();
        assert_eq!(w, CycNum::zeta_pow(&f12, 4));
        assert!(w.pow(3).unwrap().is_one());
        assert!(!w.is_one());

        assert!(matches!(
            root_of_unity(&rat(1, 5), &f12),
            Err(Error::DenominatorMismatch { .. })
        ));
    }

    #[test]
    fn inverses() {
        let f4 = CycField::get(4);
        assert!(CycNum::one(&f4).inv().unwrap().is_one());
        let i = CycNum::zeta_pow(&f4, 1);
        assert_eq!(i.inv().unwrap(), -&i);

        let f12 = CycField::get(12);
        let a = &CycNum::zeta_pow(&f12, 4) - &CycNum::one(&f12);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(CycNum::zero(&f12).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn half_angle_difference_is_nonzero_and_imaginary() {
        let f = CycField::get(24);
        for k in 1..12 {
            let d = &CycNum::zeta_pow(&f, k) - &CycNum::zeta_pow(&f, -k);
            assert!(!d.is_zero());
            assert_eq!(d.conj(), -&d);
        }
    }

    #[test]
    fn conj_and_embed() {
        let f = CycField::get(12);
        let z = CycNum::zeta_pow(&f, 5);
        assert_eq!(z.conj(), CycNum::zeta_pow(&f, 7));
        let g = CycField::get(24);
        assert_eq!(z.embed(&g).unwrap(), CycNum::zeta_pow(&g, 10));
        assert!(z.embed(&CycField::get(18)).is_err());
        let (re, im) = CycNum::zeta_pow(&f, 3).to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn display_forms() {
        let f = CycField::get(4);
        let x = &CycNum::from_rational(&f, &rat(3, 2)) - &CycNum::zeta_pow(&f, 1);
        assert_eq!(x.to_string(), "3/2 - e[1/4]");
        assert_eq!(CycNum::zero(&f).to_string(), "0");
    }
}
