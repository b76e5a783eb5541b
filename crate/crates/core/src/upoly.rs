//! Dense univariate polynomials over GF(p).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::dense;
use crate::ff::{FieldElement, PrimeModulus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UpolyError {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("reduction modulus must have degree at least 1")]
    ConstantModulus,
    #[error("interpolation abscissae must be distinct")]
    DuplicateAbscissa,
    #[error("interpolation needs at least one point")]
    NoPoints,
    #[error("polynomial must be monic")]
    NotMonic,
}

/// `coeffs[i]` is the coefficient of `x^i`; the last entry is nonzero, and
/// the zero polynomial has no entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<u64>,
    modulus: PrimeModulus,
}

impl UniPoly {
    pub fn from_coeffs(modulus: PrimeModulus, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| modulus.reduce(c)).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs, modulus }
    }

    pub fn from_i64(modulus: PrimeModulus, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            modulus,
            coeffs
                .iter()
                .map(|&c| modulus.reduce_i128(c as i128))
                .collect(),
        )
    }

    pub fn from_elements(modulus: PrimeModulus, coeffs: &[FieldElement]) -> Self {
        Self::from_coeffs(modulus, coeffs.iter().map(|c| c.value()).collect())
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            modulus,
        }
    }

    pub fn constant(modulus: PrimeModulus, c: u64) -> Self {
        Self::from_coeffs(modulus, vec![c])
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::constant(modulus, 1)
    }

    /// `c * x^deg`.
    pub fn monomial(modulus: PrimeModulus, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(modulus, coeffs)
    }

    pub fn x(modulus: PrimeModulus) -> Self {
        Self::monomial(modulus, 1, 1)
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &Self) -> Result<(), UpolyError> {
        if self.modulus != other.modulus {
            return Err(UpolyError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(())
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "polynomials over different fields"
        );
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        Self::from_coeffs(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    /// Scale to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.modulus.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn divmod(&self, den: &Self) -> Result<(Self, Self), UpolyError> {
        self.check(den)?;
        let Some(dd) = den.degree() else {
            return Err(UpolyError::DivisionByZero);
        };
        let m = self.modulus;
        let Some(dn) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Self::zero(m), self.clone()));
        };
        let inv_lead = m.inv(den.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; dn - dd + 1];
        for shift in (0..=dn - dd).rev() {
            let c = rem[shift + dd];
            if c == 0 {
                continue;
            }
            let q = m.mul(c, inv_lead);
            quot[shift] = q;
            for (i, &b) in den.coeffs.iter().enumerate() {
                rem[shift + i] = m.sub(rem[shift + i], m.mul(q, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(m, quot), Self::from_coeffs(m, rem)))
    }

    pub fn rem(&self, den: &Self) -> Result<Self, UpolyError> {
        Ok(self.divmod(den)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Result<Self, UpolyError> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(UpolyError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        let m = self.modulus;
        Self::from_coeffs(
            m,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| m.mul(m.reduce(i as u64), c))
                .collect(),
        )
    }

    /// Monic squarefree polynomial with the same roots in the algebraic
    /// closure.
    ///
    /// `g / gcd(g, g')` misses every root whose multiplicity is divisible by
    /// `p`; those survive in the gcd as a `p`-th power, which is handled by
    /// taking its `p`-th root (`u(t^p) = u(t)^p` over GF(p)) and recursing.
    pub fn squarefree_part(&self) -> Result<Self, UpolyError> {
        if self.is_zero() {
            return Err(UpolyError::ZeroPolynomial);
        }
        let m = self.modulus;
        let g = self.monic();
        if g.is_constant() {
            return Ok(Self::one(m));
        }
        let dg = g.derivative();
        if dg.is_zero() {
            return Self::pth_root(&g).squarefree_part();
        }
        let h = g.gcd(&dg)?;
        let w = g.divmod(&h)?.0.monic();
        // strip every prime of `w` from `h`; what remains has p | multiplicity
        let mut rest = h;
        loop {
            let y = rest.gcd(&w)?;
            if y.is_constant() {
                break;
            }
            rest = rest.divmod(&y)?.0;
        }
        let tail = rest.squarefree_part()?;
        Ok((&w * &tail).monic())
    }

    /// `u` with `self = u(x^p)`; only valid when the derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.modulus.get() as usize;
        let coeffs = self.coeffs.iter().step_by(p).copied().collect();
        Self::from_coeffs(self.modulus, coeffs)
    }

    pub fn mul_mod(&self, other: &Self, modulus_poly: &Self) -> Result<Self, UpolyError> {
        (self * other).rem(modulus_poly)
    }

    pub fn pow_mod(&self, e: u64, modulus_poly: &Self) -> Result<Self, UpolyError> {
        self.pow_mod_traced(e, modulus_poly, 0, None)
    }

    /// Right-to-left square-and-multiply. With a transcript, records every
    /// squaring `base^(2^i)` and every accumulation into the running product.
    pub fn pow_mod_traced(
        &self,
        e: u64,
        modulus_poly: &Self,
        round: u32,
        mut transcript: Option<&mut Vec<PowerStep>>,
    ) -> Result<Self, UpolyError> {
        if modulus_poly.degree().unwrap_or(0) < 1 {
            return Err(UpolyError::ConstantModulus);
        }
        let m = self.modulus;
        let mut square = self.rem(modulus_poly)?;
        let mut acc = Self::one(m).rem(modulus_poly)?;
        let mut first = true;
        let bits = 64 - e.leading_zeros();
        for bit in 0..bits {
            if bit > 0 {
                square = square.mul_mod(&square, modulus_poly)?;
                if let Some(t) = transcript.as_deref_mut() {
                    t.push(PowerStep {
                        round,
                        bit,
                        kind: PowerStepKind::Square,
                        residue: square.clone(),
                    });
                }
            }
            if (e >> bit) & 1 == 1 {
                acc = if first {
                    square.clone()
                } else {
                    acc.mul_mod(&square, modulus_poly)?
                };
                first = false;
                if let Some(t) = transcript.as_deref_mut() {
                    t.push(PowerStep {
                        round,
                        bit,
                        kind: PowerStepKind::Accumulate,
                        residue: acc.clone(),
                    });
                }
            }
        }
        Ok(acc)
    }

    /// `x^(p^d) mod modulus_poly`, by `d` rounds of raising to the `p`-th power.
    pub fn frobenius(modulus_poly: &Self, d: u32) -> Result<Self, UpolyError> {
        Self::frobenius_with(modulus_poly, d, None)
    }

    pub fn frobenius_traced(
        modulus_poly: &Self,
        d: u32,
    ) -> Result<(Self, Vec<PowerStep>), UpolyError> {
        let mut steps = Vec::new();
        let r = Self::frobenius_with(modulus_poly, d, Some(&mut steps))?;
        Ok((r, steps))
    }

    fn frobenius_with(
        modulus_poly: &Self,
        d: u32,
        mut transcript: Option<&mut Vec<PowerStep>>,
    ) -> Result<Self, UpolyError> {
        if modulus_poly.degree().unwrap_or(0) < 1 {
            return Err(UpolyError::ConstantModulus);
        }
        let m = modulus_poly.modulus;
        let mut r = Self::x(m).rem(modulus_poly)?;
        for round in 0..d {
            r = r.pow_mod_traced(m.get(), modulus_poly, round, transcript.as_deref_mut())?;
        }
        Ok(r)
    }

    pub fn eval(&self, x: u64) -> u64 {
        dense::eval(&self.modulus, &self.coeffs, &self.modulus.reduce(x))
    }

    pub fn eval_elem(&self, x: FieldElement) -> FieldElement {
        assert_eq!(
            x.modulus(),
            self.modulus,
            "evaluation point over a different field"
        );
        self.modulus.elem(self.eval(x.value()))
    }

    pub fn interpolate(points: &[(FieldElement, FieldElement)]) -> Result<Self, UpolyError> {
        let Some(&(x0, _)) = points.first() else {
            return Err(UpolyError::NoPoints);
        };
        let m = x0.modulus();
        if let Some(bad) = points
            .iter()
            .flat_map(|(x, y)| [x, y])
            .find(|e| e.modulus() != m)
        {
            return Err(UpolyError::ModulusMismatch(m.get(), bad.modulus().get()));
        }
        let pts: Vec<(u64, u64)> = points.iter().map(|(x, y)| (x.value(), y.value())).collect();
        dense::interpolate(&m, &pts)
            .map(|c| Self::from_coeffs(m, c))
            .ok_or(UpolyError::DuplicateAbscissa)
    }

    /// Sylvester determinant with `self` in the leading rows.
    ///
    /// Two nonzero constants have the empty matrix, determinant one.
    pub fn resultant(&self, other: &Self) -> Result<FieldElement, UpolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(UpolyError::ZeroPolynomial);
        }
        let m = self.modulus;
        Ok(m.elem(dense::sylvester_det(&m, &self.coeffs, &other.coeffs)))
    }

    /// Ben-Or: a monic `f` of degree `n` is irreducible iff
    /// `gcd(f, x^(p^k) - x) = 1` for every `k <= n / 2`.
    pub fn is_irreducible(&self) -> Result<bool, UpolyError> {
        let n = self.degree().ok_or(UpolyError::ZeroPolynomial)?;
        if n < 1 {
            return Err(UpolyError::ConstantModulus);
        }
        if !self.is_monic() {
            return Err(UpolyError::NotMonic);
        }
        let m = self.modulus;
        let x = Self::x(m);
        let mut r = x.rem(self)?;
        for _ in 1..=n / 2 {
            r = r.pow_mod(m.get(), self)?;
            if !self.gcd(&(&r - &x))?.is_constant() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical text, highest degree first, in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}*{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, c) => format!("{c}*{var}^{i}"),
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x0"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}](mod {})", self.render("x"), self.modulus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerStepKind {
    /// `residue = previous square ^ 2`
    Square,
    /// `residue = previous accumulator * current square`
    Accumulate,
}

/// One recorded step of square-and-multiply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerStep {
    pub round: u32,
    pub bit: u32,
    pub kind: PowerStepKind,
    pub residue: UniPoly,
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.assert_same(rhs);
        let m = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs(
            m,
            (0..n).map(|i| m.add(self.coeff(i), rhs.coeff(i))).collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.assert_same(rhs);
        let m = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs(
            m,
            (0..n).map(|i| m.sub(self.coeff(i), rhs.coeff(i))).collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        let m = self.modulus;
        UniPoly::from_coeffs(m, self.coeffs.iter().map(|&c| m.neg(c)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.assert_same(rhs);
        let m = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(m);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        UniPoly::from_coeffs(m, out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $f(self, rhs: UniPoly) -> UniPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
