//! Exhaustive ground truth over GF(p) and its small extensions.
//!
//! Everything here enumerates; nothing is clever. The enumeration guard is
//! [`ENUMERATION_LIMIT`] points.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dense;
use crate::exec;
use crate::ff::{Field, PrimeModulus};
use crate::mpoly::MultiPoly;
use crate::upoly::{UniPoly, UpolyError};

pub const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration of {size} points exceeds the limit of {ENUMERATION_LIMIT}")]
    EnumerationTooLarge { size: u128 },
    #[error("no irreducible polynomial of degree {degree} found within {tries} candidates")]
    BudgetExhausted { degree: usize, tries: usize },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("expected arity {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("extension modulus must be monic and irreducible")]
    Reducible,
    #[error(transparent)]
    Poly(#[from] UpolyError),
}

fn checked_size(p: PrimeModulus, d: usize) -> Result<u64, OracleError> {
    let size = (p.get() as u128)
        .checked_pow(d as u32)
        .filter(|&s| s <= ENUMERATION_LIMIT)
        .ok_or(OracleError::EnumerationTooLarge {
            size: (p.get() as u128).saturating_pow(d as u32),
        })?;
    Ok(size as u64)
}

/// Residue of degree below `d` modulo the field's defining polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtElem(pub Vec<u64>);

/// GF(p^d) as GF(p)[x] / (modulus_poly).
#[derive(Clone, Debug)]
pub struct ExtField {
    modulus: PrimeModulus,
    degree: usize,
    modulus_poly: UniPoly,
}

impl ExtField {
    /// Random search for a monic irreducible of degree `d`, deterministic
    /// per seed.
    pub fn make(p: PrimeModulus, d: usize, seed: u64) -> Result<Self, OracleError> {
        if d == 0 {
            return Err(OracleError::ZeroDegree);
        }
        checked_size(p, d)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tries = 64 * d;
        for _ in 0..tries {
            let mut coeffs: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p.get())).collect();
            coeffs.push(1);
            let candidate = UniPoly::from_coeffs(p, coeffs);
            if candidate.is_irreducible()? {
                return Ok(ExtField {
                    modulus: p,
                    degree: d,
                    modulus_poly: candidate,
                });
            }
        }
        Err(OracleError::BudgetExhausted { degree: d, tries })
    }

    pub fn with_modulus(modulus_poly: UniPoly) -> Result<Self, OracleError> {
        let degree = modulus_poly.degree().unwrap_or(0);
        if degree == 0 || !modulus_poly.is_monic() || !modulus_poly.is_irreducible()? {
            return Err(OracleError::Reducible);
        }
        Ok(ExtField {
            modulus: modulus_poly.modulus(),
            degree,
            modulus_poly,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus_poly(&self) -> &UniPoly {
        &self.modulus_poly
    }

    pub fn size(&self) -> u128 {
        (self.modulus.get() as u128).pow(self.degree as u32)
    }

    /// The element whose base-`p` digits are `index`.
    pub fn element(&self, mut index: u64) -> ExtElem {
        let p = self.modulus.get();
        ExtElem(
            (0..self.degree)
                .map(|_| {
                    let d = index % p;
                    index /= p;
                    d
                })
                .collect(),
        )
    }

    pub fn pow(&self, a: &ExtElem, mut e: u128) -> ExtElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow(a, self.modulus.get() as u128)
    }

    /// Degree of the smallest subfield containing `a`: the least `k` with
    /// `a^(p^k) = a`.
    pub fn minimal_degree(&self, a: &ExtElem) -> usize {
        let mut cur = a.clone();
        for k in 1..=self.degree {
            cur = self.frobenius(&cur);
            if &cur == a {
                return k;
            }
        }
        unreachable!("a^(p^d) = a holds in GF(p^d)")
    }

    pub fn eval_upoly(&self, f: &UniPoly, x: &ExtElem) -> ExtElem {
        dense::eval_base(self, f.coeffs(), x)
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn characteristic(&self) -> PrimeModulus {
        self.modulus
    }

    fn zero(&self) -> ExtElem {
        ExtElem(vec![0; self.degree])
    }

    fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    fn from_base(&self, v: u64) -> ExtElem {
        let mut e = vec![0; self.degree];
        e[0] = self.modulus.reduce(v);
        let fixed = UniPoly::from_coeffs(self.modulus, e)
            .rem(&self.modulus_poly)
            .expect("nonconstant modulus");
        let mut e = fixed.coeffs().to_vec();
        e.resize(self.degree, 0);
        ExtElem(e)
    }

    fn to_base(&self, a: &ExtElem) -> Option<u64> {
        if self.degree == 1 {
            return Some(a.0[0]);
        }
        a.0[1..].iter().all(|&c| c == 0).then_some(a.0[0])
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let m = self.modulus;
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| m.add(x, y)).collect())
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let m = self.modulus;
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| m.sub(x, y)).collect())
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let m = self.modulus;
        ExtElem(a.0.iter().map(|&x| m.neg(x)).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let m = self.modulus;
        let d = self.degree;
        let mut prod = vec![0u64; 2 * d];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = m.add(prod[i + j], m.mul(x, y));
            }
        }
        let mp = self.modulus_poly.coeffs();
        for top in (d..2 * d).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                prod[top - d + j] = m.sub(prod[top - d + j], m.mul(c, mp[j]));
            }
            prod[top] = 0;
        }
        prod.truncate(d);
        ExtElem(prod)
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.size() - 2))
    }
}

/// A `t` admitting some `x` in GF(p) with `f(t, x) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Degree of the smallest extension containing `t`.
    pub degree: usize,
    pub t: ExtElem,
    /// Smallest such `x`.
    pub x: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCounts {
    pub distinct_t: u64,
    /// Roots of exact degree `d`.
    pub exact: BTreeMap<usize, u64>,
    /// Roots lying in GF(p^d).
    pub cumulative: BTreeMap<usize, u64>,
    pub witnesses: Vec<Witness>,
}

fn field_seed(d: usize) -> u64 {
    0x6f72_6163_6c65 ^ d as u64
}

/// Count the `t` in GF(p^d), `d <= dmax`, with `f(t, x) = 0` for some `x`
/// in GF(p). Variables: `t = x0`, `x = x1`.
pub fn brute_bivariate_roots(f: &MultiPoly, dmax: usize) -> Result<BruteCounts, OracleError> {
    if f.arity() != 2 {
        return Err(OracleError::Arity {
            expected: 2,
            found: f.arity(),
        });
    }
    let p = f.modulus();
    if dmax > 0 {
        checked_size(p, dmax)?;
    }
    let slices: Vec<UniPoly> = (0..p.get())
        .map(|c| {
            let bind = [(1usize, p.elem(c))].into_iter().collect();
            f.eval_partial(&bind)
                .expect("x1 is in range")
                .to_univariate(0)
                .expect("only t remains")
        })
        .collect();
    let mut exact = BTreeMap::new();
    let mut witnesses = Vec::new();
    for d in 1..=dmax {
        let field = ExtField::make(p, d, field_seed(d))?;
        let size = field.size() as usize;
        let found: Vec<Witness> = exec::filter_map_range(0..size, |idx| {
            let tau = field.element(idx as u64);
            if field.minimal_degree(&tau) != d {
                return None;
            }
            let x = (0..p.get())
                .find(|&c| field.is_zero(&field.eval_upoly(&slices[c as usize], &tau)))?;
            Some(Witness {
                degree: d,
                t: tau,
                x,
            })
        });
        exact.insert(d, found.len() as u64);
        witnesses.extend(found);
    }
    let cumulative = (1..=dmax)
        .map(|d| {
            let c = exact
                .iter()
                .filter(|(&e, _)| d % e == 0)
                .map(|(_, &v)| v)
                .sum();
            (d, c)
        })
        .collect();
    Ok(BruteCounts {
        distinct_t: exact.values().sum(),
        exact,
        cumulative,
        witnesses,
    })
}

/// A common root of two univariate polynomials in GF(p^degree).
#[derive(Clone, Debug)]
pub struct CommonRoot {
    pub degree: usize,
    pub field: ExtField,
    pub element: ExtElem,
}

/// Smallest-degree extension element zeroing both `a` and `b`, if any exists
/// in GF(p^k) for `k <= kmax`.
pub fn brute_common_root(
    a: &UniPoly,
    b: &UniPoly,
    kmax: usize,
) -> Result<Option<CommonRoot>, OracleError> {
    let p = a.modulus();
    if b.modulus() != p {
        return Err(UpolyError::ModulusMismatch(p.get(), b.modulus().get()).into());
    }
    if kmax > 0 {
        checked_size(p, kmax)?;
    }
    for k in 1..=kmax {
        let field = ExtField::make(p, k, field_seed(k))?;
        let hit = (0..field.size() as u64)
            .map(|i| field.element(i))
            .filter(|tau| k == 1 || field.minimal_degree(tau) == k)
            .find(|tau| {
                field.is_zero(&field.eval_upoly(a, tau)) && field.is_zero(&field.eval_upoly(b, tau))
            });
        if let Some(element) = hit {
            return Ok(Some(CommonRoot {
                degree: k,
                field,
                element,
            }));
        }
    }
    Ok(None)
}

/// Every common zero of `system` in GF(p)^arity, in lexicographic order of
/// the point (`x0` slowest).
pub fn brute_system_zeros(
    system: &[MultiPoly],
    arity: usize,
    p: PrimeModulus,
) -> Result<Vec<Vec<u64>>, OracleError> {
    if let Some(bad) = system.iter().find(|f| f.arity() != arity) {
        return Err(OracleError::Arity {
            expected: arity,
            found: bad.arity(),
        });
    }
    let size = checked_size(p, arity)? as usize;
    let q = p.get();
    Ok(exec::filter_map_range(0..size, |idx| {
        let mut rest = idx as u64;
        let mut point = vec![0u64; arity];
        for slot in point.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        system.iter().all(|f| f.eval(&point) == 0).then_some(point)
    }))
}
