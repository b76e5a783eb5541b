//! Sparse multivariate polynomials over GF(p) and their text form.
//!
//! Terms are kept in a map from exponent vector to nonzero coefficient,
//! ordered graded-lexicographically (total degree first, then `x0` before
//! `x1` before ...). Rendering lists terms from the largest monomial down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::ff::{Field, FieldElement, PrimeModulus};
use crate::upoly::UniPoly;

/// Per-variable exponent ceiling.
pub const MAX_EXPONENT: u32 = i32::MAX as u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MpolyError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos} (arity {arity})")]
    UnknownVariable {
        name: String,
        pos: usize,
        arity: usize,
    },
    #[error("exponent exceeds 2^31 - 1 at position {pos}")]
    ExponentOverflow { pos: usize },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("variable index {var} out of range for arity {arity}")]
    VariableOutOfRange { var: usize, arity: usize },
}

/// Exponent vector, one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(arity: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; arity];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).filter(|&s| s <= MAX_EXPONENT))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    modulus: PrimeModulus,
    terms: BTreeMap<Monomial, u64>,
}

impl MultiPoly {
    pub fn zero(arity: usize, modulus: PrimeModulus) -> Self {
        MultiPoly {
            arity,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, modulus: PrimeModulus, c: u64) -> Self {
        Self::from_terms(arity, modulus, [(Monomial::one(arity), c)])
    }

    pub fn one(arity: usize, modulus: PrimeModulus) -> Self {
        Self::constant(arity, modulus, 1)
    }

    /// The variable `x_var`.
    pub fn var(arity: usize, modulus: PrimeModulus, var: usize) -> Self {
        Self::from_terms(arity, modulus, [(Monomial::var(arity, var, 1), 1)])
    }

    /// Sum of the given terms; repeated monomials are combined.
    pub fn from_terms<I>(arity: usize, modulus: PrimeModulus, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut p = Self::zero(arity, modulus);
        for (mono, c) in terms {
            assert_eq!(mono.0.len(), arity, "monomial length differs from arity");
            p.add_term(mono, modulus.reduce(c));
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let m = self.modulus;
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = m.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, mono: &Monomial) -> u64 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, &c)| c),
            _ => None,
        }
    }

    /// Largest exponent of `var`, or -1 for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms
            .keys()
            .map(|m| m.0[var] as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.arity).map(|v| self.degree_in(v)).collect()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map_or(-1, |m| m.total_degree() as i64)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    fn compatible(&self, other: &Self) -> Result<(), MpolyError> {
        if self.arity != other.arity {
            return Err(MpolyError::ArityMismatch(self.arity, other.arity));
        }
        if self.modulus != other.modulus {
            return Err(MpolyError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(())
    }

    fn check_var(&self, var: usize) -> Result<(), MpolyError> {
        if var >= self.arity {
            return Err(MpolyError::VariableOutOfRange {
                var,
                arity: self.arity,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MpolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MpolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        let p = self.modulus;
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), p.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MpolyError> {
        self.compatible(other)?;
        let p = self.modulus;
        let mut out = Self::zero(self.arity, p);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let mono = ma
                    .checked_mul(mb)
                    .ok_or(MpolyError::ExponentOverflow { pos: 0 })?;
                out.add_term(mono, p.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.modulus;
        let c = p.reduce(c);
        if c == 0 {
            return Self::zero(self.arity, p);
        }
        MultiPoly {
            arity: self.arity,
            modulus: p,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), p.mul(a, c)))
                .collect(),
        }
    }

    /// `c * mono * self`.
    pub fn mul_term(&self, mono: &Monomial, c: u64) -> Self {
        let p = self.modulus;
        let c = p.reduce(c);
        if c == 0 {
            return Self::zero(self.arity, p);
        }
        MultiPoly {
            arity: self.arity,
            modulus: p,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.checked_mul(mono).expect("exponent overflow"), p.mul(a, c)))
                .collect(),
        }
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, other: &Self, c: u64) {
        assert!(self.compatible(other).is_ok(), "incompatible polynomials");
        let p = self.modulus;
        let c = p.reduce(c);
        if c == 0 {
            return;
        }
        for (m, &a) in &other.terms {
            self.add_term(m.clone(), p.mul(a, c));
        }
    }

    /// Up to `terms` random terms with `x_i` exponent at most `max_deg[i]`
    /// and nonzero coefficients. Colliding monomials merge, so the result
    /// may have fewer terms (or cancel to fewer).
    pub fn random<R: rand::Rng + ?Sized>(
        rng: &mut R,
        modulus: PrimeModulus,
        max_deg: &[u32],
        terms: usize,
    ) -> Self {
        let arity = max_deg.len();
        let mut out = Self::zero(arity, modulus);
        for _ in 0..terms {
            let exps = max_deg.iter().map(|&d| rng.gen_range(0..=d)).collect();
            out.add_term(Monomial(exps), rng.gen_range(1..modulus.get()));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.arity, self.modulus);
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

    /// Coefficients `c_0..=c_d` with `self = sum c_i * x_var^i`; each `c_i`
    /// keeps the arity and has exponent zero at `var`. Empty for zero.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var);
        if d < 0 {
            return Vec::new();
        }
        let mut out = vec![Self::zero(self.arity, self.modulus); d as usize + 1];
        for (m, &c) in &self.terms {
            let mut stripped = m.clone();
            let e = std::mem::take(&mut stripped.0[var]) as usize;
            out[e].terms.insert(stripped, c);
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(
        coeffs: &[MultiPoly],
        var: usize,
        arity: usize,
        modulus: PrimeModulus,
    ) -> Self {
        let mut out = Self::zero(arity, modulus);
        for (i, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(arity, var, i as u32);
            for (m, &a) in &c.terms {
                out.add_term(m.checked_mul(&shift).expect("exponent overflow"), a);
            }
        }
        out
    }

    /// Substitute the bound variables; the arity is unchanged and bound
    /// exponents become zero.
    pub fn eval_partial(
        &self,
        bindings: &BTreeMap<usize, FieldElement>,
    ) -> Result<Self, MpolyError> {
        let p = self.modulus;
        for (&var, value) in bindings {
            self.check_var(var)?;
            if value.modulus() != p {
                return Err(MpolyError::ModulusMismatch(p.get(), value.modulus().get()));
            }
        }
        let mut out = Self::zero(self.arity, p);
        for (m, &c) in &self.terms {
            let mut mono = m.clone();
            let mut coef = c;
            for (&var, value) in bindings {
                let e = std::mem::take(&mut mono.0[var]);
                coef = p.mul(coef, p.pow(value.value(), e as u64));
            }
            out.add_term(mono, coef);
        }
        Ok(out)
    }

    /// Full evaluation at a point of GF(p)^arity.
    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(
            point.len(),
            self.arity,
            "point dimension differs from arity"
        );
        let p = self.modulus;
        self.terms.iter().fold(0, |acc, (m, &c)| {
            let v =
                m.0.iter()
                    .zip(point)
                    .fold(c, |v, (&e, &x)| p.mul(v, p.pow(x, e as u64)));
            p.add(acc, v)
        })
    }

    /// Full evaluation at a point over an extension (or any field context).
    pub fn eval_in<F: Field>(&self, ctx: &F, point: &[F::Elem]) -> F::Elem {
        assert_eq!(
            point.len(),
            self.arity,
            "point dimension differs from arity"
        );
        let mut acc = ctx.zero();
        for (m, &c) in &self.terms {
            let mut v = ctx.from_base(c);
            for (&e, x) in m.0.iter().zip(point) {
                for _ in 0..e {
                    v = ctx.mul(&v, x);
                }
            }
            acc = ctx.add(&acc, &v);
        }
        acc
    }

    /// The univariate polynomial in `var`, when no other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let d = self.degree_in(var).max(0) as usize;
        let mut coeffs = vec![0u64; d + 1];
        for (m, &c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e != 0) {
                return None;
            }
            coeffs[m.0[var] as usize] = c;
        }
        Some(UniPoly::from_coeffs(self.modulus, coeffs))
    }

    pub fn from_univariate(u: &UniPoly, arity: usize, var: usize) -> Self {
        Self::from_terms(
            arity,
            u.modulus(),
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::var(arity, var, i as u32), c)),
        )
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.arity);
        };
        let mut content = first.clone();
        for m in it {
            for (c, &e) in content.0.iter_mut().zip(&m.0) {
                *c = (*c).min(e);
            }
        }
        content
    }

    /// Divide every term by a monomial that divides all of them.
    pub fn div_monomial(&self, mono: &Monomial) -> Self {
        MultiPoly {
            arity: self.arity,
            modulus: self.modulus,
            terms: self.terms.iter().map(|(m, &c)| (m.div(mono), c)).collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(self.compatible(divisor).is_ok(), "incompatible polynomials");
        let (lm_d, lc_d) = divisor.leading_term()?;
        let lm_d = lm_d.clone();
        let p = self.modulus;
        let inv = p.inv(lc_d).expect("nonzero leading coefficient");
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(p.inv(c).expect("nonzero constant")));
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.arity, p);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            if !lm_d.divides(lm_r) {
                return None;
            }
            let mono = lm_r.div(&lm_d);
            let coef = p.mul(lc_r, inv);
            rem = &rem - &divisor.mul_term(&mono, coef);
            quot.add_term(mono, coef);
        }
        Some(quot)
    }

    /// Make the leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(self.modulus.inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn parse(text: &str, arity: usize, modulus: PrimeModulus) -> Result<Self, MpolyError> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            arity,
            modulus,
        };
        let poly = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(poly)
    }

    /// Canonical text: terms from the largest graded-lex monomial down,
    /// coefficients as least nonnegative residues.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| {
                let factors: Vec<String> =
                    m.0.iter()
                        .enumerate()
                        .filter(|(_, &e)| e != 0)
                        .map(|(i, &e)| {
                            if e == 1 {
                                format!("x{i}")
                            } else {
                                format!("x{i}^{e}")
                            }
                        })
                        .collect();
                match (factors.is_empty(), c) {
                    (true, c) => c.to_string(),
                    (false, 1) => factors.join("*"),
                    (false, c) => format!("{c}*{}", factors.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MultiPoly[{}](n={}, mod {})",
            self.render(),
            self.arity,
            self.modulus
        )
    }
}

macro_rules! ref_ops {
    ($($tr:ident $f:ident $checked:ident),*) => {$(
        impl $tr for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("incompatible polynomial operands")
            }
        }
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
ref_ops!(Add add checked_add, Sub sub checked_sub, Mul mul checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(self.modulus.get() - 1)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Recursive-descent parser for
///
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := atom ('^' uint)?
/// atom   := uint | 'x' uint | 'x' | 't' | '(' expr ')'
/// ```
///
/// `t` names `x0` and a bare `x` names `x1`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: usize,
    modulus: PrimeModulus,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> MpolyError {
        MpolyError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, MpolyError> {
        let mut acc = MultiPoly::zero(self.arity, self.modulus);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly, MpolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let start = self.pos;
            let f = self.factor()?;
            acc = acc
                .checked_mul(&f)
                .map_err(|_| MpolyError::ExponentOverflow { pos: start })?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, MpolyError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let e = self.uint_exponent()?;
        // x_i^e is built directly; general bases need a degree check first
        if let Some((m, 1)) = base.leading_term().filter(|_| base.term_count() == 1) {
            if m.total_degree() == 1 {
                let var = m.0.iter().position(|&x| x == 1).expect("single variable");
                return Ok(MultiPoly::from_terms(
                    self.arity,
                    self.modulus,
                    [(Monomial::var(self.arity, var, e), 1)],
                ));
            }
        }
        let max_deg = base.degrees().into_iter().max().unwrap_or(0).max(0) as u64;
        if max_deg * e as u64 > MAX_EXPONENT as u64 {
            return Err(MpolyError::ExponentOverflow { pos: start });
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<MultiPoly, MpolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let p = self.modulus;
                let mut v = 0u64;
                while let Some(d) = self.src.get(self.pos).filter(|b| b.is_ascii_digit()) {
                    v = p.add(p.mul(v, 10 % p.get()), p.reduce((d - b'0') as u64));
                    self.pos += 1;
                }
                Ok(MultiPoly::constant(self.arity, p, v))
            }
            Some(b'x') | Some(b't') => {
                let start = self.pos;
                let letter = self.src[self.pos];
                self.pos += 1;
                let digits_start = self.pos;
                while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits = &self.src[digits_start..self.pos];
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let var = match (letter, digits.is_empty()) {
                    (b't', true) => Some(0),
                    (b'x', true) => Some(1),
                    (b'x', false) => std::str::from_utf8(digits).unwrap().parse::<usize>().ok(),
                    _ => None,
                };
                match var {
                    Some(v) if v < self.arity => Ok(MultiPoly::var(self.arity, self.modulus, v)),
                    _ => Err(MpolyError::UnknownVariable {
                        name,
                        pos: start,
                        arity: self.arity,
                    }),
                }
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn uint_exponent(&mut self) -> Result<u32, MpolyError> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(d) = self.src.get(self.pos).filter(|b| b.is_ascii_digit()) {
            v = v.saturating_mul(10).saturating_add((d - b'0') as u64);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an exponent"));
        }
        if v > MAX_EXPONENT as u64 {
            return Err(MpolyError::ExponentOverflow { pos: start });
        }
        Ok(v as u32)
    }
}
