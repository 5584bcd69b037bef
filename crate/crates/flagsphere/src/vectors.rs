//! Exact integer polynomials and the f -> h -> gamma pipeline.
//!
//! Everything here is arbitrary-precision: face counts, h-entries and
//! gamma-entries are exact identities, never approximations.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::complex::SimplicialComplex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VectorsError {
    #[error("the void complex has no f- or h-polynomial")]
    VoidComplex,
    #[error("h-polynomial is not symmetric for d = {d}: coefficient {k} is {low} but coefficient {high_k} is {high}")]
    NotSymmetric {
        d: usize,
        k: usize,
        high_k: usize,
        low: BigInt,
        high: BigInt,
    },
    #[error("polynomial degree {degree} exceeds the ambient parameter d = {d}")]
    DegreeTooLarge { degree: usize, d: usize },
}

/// Dense integer polynomial. Trailing zero coefficients are normalized away,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// (1 + x)^k with exact binomial coefficients.
    pub fn one_plus_x_pow(k: usize) -> Self {
        Polynomial {
            coeffs: (0..=k).map(|i| binomial(k, i)).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Palindromic with respect to degree d: coeff(k) == coeff(d - k) for all k.
    pub fn is_palindromic(&self, d: usize) -> bool {
        if self.degree().is_some_and(|deg| deg > d) {
            return false;
        }
        (0..=d / 2).all(|k| self.coeff(k) == self.coeff(d - k))
    }

    /// Sum of all coefficients, i.e. the value at x = 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect::<Vec<_>>())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect::<Vec<_>>())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if mag.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

// Coefficient arrays serialize as plain JSON numbers; values at this scale
// fit in i128 comfortably, but fall back to decimal strings if not.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i128() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;
        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = Polynomial;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of integers (or decimal strings)")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Polynomial, A::Error> {
                struct Elem(BigInt);
                impl<'de> Deserialize<'de> for Elem {
                    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                        struct ElemVisitor;
                        impl Visitor<'_> for ElemVisitor {
                            type Value = Elem;
                            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                                write!(f, "an integer or a decimal string")
                            }
                            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Elem, E> {
                                Ok(Elem(BigInt::from(v)))
                            }
                            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Elem, E> {
                                Ok(Elem(BigInt::from(v)))
                            }
                            fn visit_i128<E: serde::de::Error>(self, v: i128) -> Result<Elem, E> {
                                Ok(Elem(BigInt::from(v)))
                            }
                            fn visit_u128<E: serde::de::Error>(self, v: u128) -> Result<Elem, E> {
                                Ok(Elem(BigInt::from(v)))
                            }
                            fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<Elem, E> {
                                s.parse::<BigInt>().map(Elem).map_err(|e| {
                                    serde::de::Error::custom(format!("bad integer: {e}"))
                                })
                            }
                        }
                        d.deserialize_any(ElemVisitor)
                    }
                }
                let mut coeffs = Vec::new();
                while let Some(Elem(c)) = seq.next_element::<Elem>()? {
                    coeffs.push(c);
                }
                Ok(Polynomial::from_coeffs(coeffs))
            }
        }
        deserializer.deserialize_seq(CoeffVisitor)
    }
}

/// Serialize one BigInt as a JSON number (decimal string if out of i128 range).
pub fn serialize_bigint<S: Serializer>(v: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    match v.to_i128() {
        Some(x) => serializer.serialize_i128(x),
        None => serializer.serialize_str(&v.to_string()),
    }
}

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficientwise order: true iff every coefficient of p - q is >= 0.
pub fn poly_ge(p: &Polynomial, q: &Polynomial) -> bool {
    (p - q).is_nonnegative()
}

/// Gamma vector of a symmetric h-polynomial: the unique integers with
/// h(x) = sum_j gamma_j x^j (1+x)^(d-2j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVector {
    entries: Vec<BigInt>,
    d: usize,
}

impl Serialize for GammaVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Shadow<'a> {
            entries: &'a Polynomial,
            d: usize,
        }
        // reuse the coefficient-array encoding; gamma entries are plain ints
        let as_poly = Polynomial {
            coeffs: self.entries.clone(),
        };
        Shadow {
            entries: &as_poly,
            d: self.d,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GammaVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Shadow {
            entries: Polynomial,
            d: usize,
        }
        let raw = Shadow::deserialize(deserializer)?;
        let mut entries = raw.entries.coeffs;
        entries.resize(raw.d / 2 + 1, BigInt::zero());
        Ok(GammaVector {
            entries,
            d: raw.d,
        })
    }
}

impl GammaVector {
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn entry(&self, j: usize) -> BigInt {
        self.entries.get(j).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn ambient_d(&self) -> usize {
        self.d
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|g| !g.is_negative())
    }

    /// First index with a negative entry, if any.
    pub fn first_negative(&self) -> Option<(usize, BigInt)> {
        self.entries
            .iter()
            .enumerate()
            .find(|(_, g)| g.is_negative())
            .map(|(j, g)| (j, g.clone()))
    }

    /// Expand back to the h-polynomial: sum_j gamma_j x^j (1+x)^(d-2j).
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (j, g) in self.entries.iter().enumerate() {
            let term = Polynomial::from_coeffs(vec![g.clone()]);
            let term = &term * &Polynomial::one_plus_x_pow(self.d - 2 * j);
            acc = &acc + &term.shift_up(j);
        }
        acc
    }
}

/// Extract the gamma vector of a symmetric polynomial h with respect to d.
///
/// d is passed explicitly: h may have degree strictly less than d (the
/// symmetry h_k = h_{d-k} is checked against the padded length d + 1).
pub fn gamma_vector(h: &Polynomial, d: usize) -> Result<GammaVector, VectorsError> {
    if let Some(deg) = h.degree() {
        if deg > d {
            return Err(VectorsError::DegreeTooLarge { degree: deg, d });
        }
    }
    for k in 0..=d / 2 {
        let low = h.coeff(k);
        let high = h.coeff(d - k);
        if low != high {
            return Err(VectorsError::NotSymmetric {
                d,
                k,
                high_k: d - k,
                low,
                high,
            });
        }
    }
    let mut rest = h.clone();
    let mut entries = Vec::with_capacity(d / 2 + 1);
    for j in 0..=d / 2 {
        let g = rest.coeff(j);
        let term = Polynomial::from_coeffs(vec![g.clone()])
            .mul(&Polynomial::one_plus_x_pow(d - 2 * j))
            .shift_up(j);
        rest = &rest - &term;
        entries.push(g);
    }
    debug_assert!(rest.is_zero(), "symmetric polynomial must expand exactly");
    Ok(GammaVector { entries, d })
}

/// h-polynomial via h(x) = sum_i f_{i-1} x^i (1-x)^(d-i) with d = dim + 1.
pub fn h_polynomial(complex: &SimplicialComplex) -> Result<Polynomial, VectorsError> {
    let f = complex.f_vector().map_err(|_| VectorsError::VoidComplex)?;
    let d = usize::try_from(complex.dimension().ok_or(VectorsError::VoidComplex)? + 1)
        .expect("dimension >= -1");
    let minus_one = BigInt::from(-1);
    let one_minus_x = Polynomial::from_coeffs(vec![BigInt::one(), minus_one]);
    let mut powers = Vec::with_capacity(d + 1);
    let mut p = Polynomial::one();
    for _ in 0..=d {
        powers.push(p.clone());
        p = &p * &one_minus_x;
    }
    let mut h = Polynomial::zero();
    for i in 0..=d {
        let fi = Polynomial::from_coeffs(vec![f.coeff(i)]);
        h = &h + &(&fi * &powers[d - i]).shift_up(i);
    }
    Ok(h)
}

/// Dehn-Sommerville check: h_k = h_{d-k} for all k.
pub fn dehn_sommerville_check(complex: &SimplicialComplex) -> Result<bool, VectorsError> {
    let h = h_polynomial(complex)?;
    let d = usize::try_from(complex.dimension().ok_or(VectorsError::VoidComplex)? + 1)
        .expect("dimension >= -1");
    Ok(h.is_palindromic(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.to_vec())
    }

    #[test]
    fn polynomial_normalizes_trailing_zeros() {
        assert_eq!(poly(&[1, 2, 0, 0]), poly(&[1, 2]));
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[0]).degree(), None);
    }

    #[test]
    fn one_plus_x_powers() {
        assert_eq!(Polynomial::one_plus_x_pow(0), poly(&[1]));
        assert_eq!(Polynomial::one_plus_x_pow(3), poly(&[1, 3, 3, 1]));
        assert_eq!(Polynomial::one_plus_x_pow(6), poly(&[1, 6, 15, 20, 15, 6, 1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn poly_ge_cases() {
        // 1+3x+3x^2+x^3 >= (1+x)(1+x)
        let cube = Polynomial::one_plus_x_pow(3);
        let square = Polynomial::one_plus_x_pow(2);
        assert!(poly_ge(&cube, &square));
        assert!(poly_ge(&cube, &cube));
        assert!(!poly_ge(&poly(&[1, 1]), &poly(&[1, 2])));
    }

    #[test]
    fn gamma_of_cube() {
        // h = (1+x)^3, d = 3 -> gamma = (1, 0)
        let g = gamma_vector(&Polynomial::one_plus_x_pow(3), 3).unwrap();
        assert_eq!(g.entries(), &[BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn gamma_of_pentagon_h() {
        // h = 1+3x+x^2 = (1+x)^2 + x, d = 2 -> gamma = (1, 1)
        let g = gamma_vector(&poly(&[1, 3, 1]), 2).unwrap();
        assert_eq!(g.entries(), &[BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn gamma_of_constant() {
        let g = gamma_vector(&Polynomial::one(), 0).unwrap();
        assert_eq!(g.entries(), &[BigInt::from(1)]);
    }

    #[test]
    fn gamma_rejects_asymmetric() {
        let err = gamma_vector(&poly(&[1, 2]), 2).unwrap_err();
        assert!(matches!(err, VectorsError::NotSymmetric { .. }));
    }

    #[test]
    fn gamma_allows_negative_entries() {
        // h = 1 + x + x^2 with d = 2: gamma_1 = 1 - 2 = -1
        let g = gamma_vector(&poly(&[1, 1, 1]), 2).unwrap();
        assert_eq!(g.entries(), &[BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(g.first_negative(), Some((1, BigInt::from(-1))));
        assert_eq!(g.expand(), poly(&[1, 1, 1]));
    }

    #[test]
    fn h_of_octahedron() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert_eq!(h_polynomial(&octa).unwrap(), poly(&[1, 3, 3, 1]));
    }

    #[test]
    fn h_of_pentagon() {
        let pent = SimplicialComplex::cycle_complex(5).unwrap();
        assert_eq!(h_polynomial(&pent).unwrap(), poly(&[1, 3, 1]));
    }

    #[test]
    fn h_of_empty_complex() {
        assert_eq!(h_polynomial(&SimplicialComplex::empty_complex()).unwrap(), poly(&[1]));
    }

    #[test]
    fn h_of_solid_triangle_fails_dehn_sommerville() {
        let solid = SimplicialComplex::from_facets(vec![crate::complex::Face::new(vec![0, 1, 2]).unwrap()])
            .unwrap();
        assert_eq!(h_polynomial(&solid).unwrap(), poly(&[1]));
        assert!(!dehn_sommerville_check(&solid).unwrap());
    }

    #[test]
    fn dehn_sommerville_on_octahedron() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert!(dehn_sommerville_check(&octa).unwrap());
    }

    #[test]
    fn h1_is_f0_minus_d() {
        for k in [
            SimplicialComplex::cross_polytope_boundary(4).unwrap(),
            SimplicialComplex::cycle_complex(9).unwrap(),
        ] {
            let h = h_polynomial(&k).unwrap();
            let f = k.f_vector().unwrap();
            let d = k.dimension().unwrap() + 1;
            assert_eq!(h.coeff(1), f.coeff(1) - BigInt::from(d));
        }
    }

    #[test]
    fn serde_round_trip() {
        let p = poly(&[1, -4, 0, 7]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[1,-4,0,7]");
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_format() {
        assert_eq!(poly(&[1, 3, 3, 1]).to_string(), "1 + 3x + 3x^2 + x^3");
        assert_eq!(poly(&[0, 1, -1]).to_string(), "x - x^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
