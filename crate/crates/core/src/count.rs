//! Counting the `t` for which `f(t, x)` has a root `x` in GF(p), and
//! deciding whether `f` has any zero on GF(p)^2.
//!
//! Variables: `t = x0`, `x = x1`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exec;
use crate::ff::PrimeModulus;
use crate::mpoly::{MpolyError, MultiPoly};
use crate::resultant::{self, ResultantError};
use crate::upoly::{PowerStep, PowerStepKind, UniPoly, UpolyError};

/// Largest `p + n` the Sylvester route accepts.
pub const SYLVESTER_MAX_DIM: usize = 16;
/// Desk guard for the product route.
pub const PRODUCT_MAX_P: u64 = 1 << 20;
pub const DECIDE_MAX_P: u64 = 101;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("expected a bivariate polynomial, found arity {0}")]
    NotBivariate(usize),
    #[error("f must have positive degree in x1")]
    ConstantInX,
    #[error("f must be monic in x1")]
    NotMonic,
    #[error("strict instance violated: {0}")]
    StrictViolation(String),
    #[error("matrix dimension {dim} exceeds the limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("p = {p} exceeds the limit {max} for this operation")]
    ModulusTooLarge { p: u64, max: u64 },
    #[error("dmax = {dmax} must lie in 1..={m}")]
    DmaxOutOfRange { dmax: usize, m: usize },
    #[error("g vanishes identically: f(t, c) = 0 for some c, so every t qualifies")]
    GIdenticallyZero,
    #[error("derivation needs a polynomial of positive degree")]
    ConstantPolynomial,
    #[error("transcript step {step} does not check: {reason}")]
    Verification { step: usize, reason: String },
    #[error(transparent)]
    Poly(#[from] MpolyError),
    #[error(transparent)]
    Upoly(#[from] UpolyError),
    #[error(transparent)]
    Resultant(#[from] ResultantError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateInstance {
    f: MultiPoly,
    /// `a_0..a_{n-1}` as polynomials in `t`.
    a: Vec<UniPoly>,
    m: usize,
    n: usize,
    strict: bool,
}

impl BivariateInstance {
    /// `f = sum_{i<n} a_i(t) x^i + x^n`. Under `strict`, every `a_i` must be
    /// nonzero and exactly one of them must reach the top degree `m`.
    pub fn new(f: MultiPoly, strict: bool) -> Result<Self, CountError> {
        if f.arity() != 2 {
            return Err(CountError::NotBivariate(f.arity()));
        }
        let coeffs = f.coeffs_in(1);
        let n = coeffs.len().saturating_sub(1);
        if n == 0 {
            return Err(CountError::ConstantInX);
        }
        if coeffs[n].as_constant() != Some(1) {
            return Err(CountError::NotMonic);
        }
        let a: Vec<UniPoly> = coeffs[..n]
            .iter()
            .map(|c| c.to_univariate(0).expect("only t remains"))
            .collect();
        let m = a.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
        if strict {
            if let Some(i) = a.iter().position(UniPoly::is_zero) {
                return Err(CountError::StrictViolation(format!("a_{i} is zero")));
            }
            let top = a.iter().filter(|c| c.degree() == Some(m)).count();
            if top != 1 {
                return Err(CountError::StrictViolation(format!(
                    "{top} coefficients reach degree {m}"
                )));
            }
        }
        Ok(BivariateInstance { f, a, m, n, strict })
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.f.modulus()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn coefficient(&self, i: usize) -> &UniPoly {
        &self.a[i]
    }

    /// Whether `a_0` is the coefficient reaching degree `m`.
    pub fn top_degree_at_a0(&self) -> bool {
        self.a[0].degree() == Some(self.m)
    }

    /// `f(t, c)` as a polynomial in `t`.
    pub fn slice(&self, c: u64) -> UniPoly {
        let p = self.modulus();
        // Horner from the monic top coefficient down
        let mut acc = UniPoly::one(p);
        for a in self.a.iter().rev() {
            acc = &acc.scale(c) + a;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Product,
    Sylvester,
}

impl std::str::FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "product" => Ok(Route::Product),
            "sylvester" => Ok(Route::Sylvester),
            other => Err(format!("unknown route `{other}`")),
        }
    }
}

/// `g(t) = Res_x(f, x^p - x)`.
pub fn build_g(inst: &BivariateInstance, route: Route) -> Result<UniPoly, CountError> {
    let p = inst.modulus();
    match route {
        Route::Product => {
            if p.get() > PRODUCT_MAX_P {
                return Err(CountError::ModulusTooLarge {
                    p: p.get(),
                    max: PRODUCT_MAX_P,
                });
            }
            // (-1)^(n p) prod_c f(t, c): pairwise product tree over the slices
            let mut layer: Vec<UniPoly> =
                exec::map_range(0..p.get() as usize, |c| inst.slice(c as u64));
            while layer.len() > 1 {
                layer =
                    exec::map_range(0..layer.len().div_ceil(2), |i| match layer.get(2 * i + 1) {
                        Some(b) => &layer[2 * i] * b,
                        None => layer[2 * i].clone(),
                    });
            }
            let g = layer.pop().expect("p >= 2 slices");
            let odd = (inst.n as u64 * p.get()) % 2 == 1;
            Ok(if odd { -&g } else { g })
        }
        Route::Sylvester => {
            let dim = p.get() as usize + inst.n;
            if p.get() as usize > SYLVESTER_MAX_DIM || dim > SYLVESTER_MAX_DIM {
                return Err(CountError::DimensionTooLarge {
                    dim,
                    max: SYLVESTER_MAX_DIM,
                });
            }
            let frob = &MultiPoly::var(2, p, 1).pow(p.get() as u32) - &MultiPoly::var(2, p, 1);
            let s = resultant::sylvester_build(&inst.f, &frob, 1)?;
            let g = resultant::res_propagate(&s);
            Ok(g.to_univariate(0).expect("free of x"))
        }
    }
}

/// Möbius function by trial division.
pub fn moebius(k: u64) -> i8 {
    assert!(k >= 1, "moebius is defined on positive integers");
    let mut k = k;
    let mut sign = 1i8;
    let mut q = 2;
    while q * q <= k {
        if k.is_multiple_of(q) {
            k /= q;
            if k.is_multiple_of(q) {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub g: UniPoly,
    pub squarefree: UniPoly,
    pub distinct_t: usize,
    pub cumulative: BTreeMap<usize, usize>,
    pub exact: BTreeMap<usize, i64>,
    pub transcript: Option<Derivation>,
}

#[derive(Serialize)]
struct CountJson<'a> {
    schema: &'static str,
    p: u64,
    n: usize,
    m: usize,
    deg_g: usize,
    distinct_t: usize,
    cumulative: BTreeMap<String, usize>,
    exact: BTreeMap<String, i64>,
    transcript_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    transcript: Option<&'a Derivation>,
}

impl CountReport {
    pub fn to_json(&self) -> serde_json::Value {
        let j = CountJson {
            schema: "1",
            p: self.p,
            n: self.n,
            m: self.m,
            deg_g: self.g.degree().unwrap_or(0),
            distinct_t: self.distinct_t,
            cumulative: self
                .cumulative
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            exact: self
                .exact
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            transcript_len: self.transcript.as_ref().map_or(0, Derivation::size),
            transcript: self.transcript.as_ref(),
        };
        serde_json::to_value(j).expect("plain data serializes")
    }
}

impl CountReport {
    /// Attach the derivation of `gcd(t^p - t mod h, h)` for the squarefree
    /// part `h`, when `h` is not constant.
    pub fn attach_transcript(&mut self) -> Result<(), CountError> {
        if !self.squarefree.is_constant() {
            self.transcript = Some(emit_gcd_derivation(&self.squarefree)?);
        }
        Ok(())
    }
}

fn nonzero_g(inst: &BivariateInstance, route: Route) -> Result<UniPoly, CountError> {
    let g = build_g(inst, route)?;
    if g.is_zero() {
        return Err(CountError::GIdenticallyZero);
    }
    Ok(g)
}

/// Number of distinct `t` in the algebraic closure with a root `x` in GF(p):
/// the degree of the squarefree part of `g`.
pub fn count_distinct_t(inst: &BivariateInstance, route: Route) -> Result<CountReport, CountError> {
    let g = nonzero_g(inst, route)?;
    let squarefree = g.squarefree_part()?;
    Ok(CountReport {
        p: inst.modulus().get(),
        n: inst.n,
        m: inst.m,
        distinct_t: squarefree.degree().unwrap_or(0),
        g,
        squarefree,
        cumulative: BTreeMap::new(),
        exact: BTreeMap::new(),
        transcript: None,
    })
}

/// `C_d = deg gcd(h, t^(p^d) - t)` with `h` the squarefree part, and `E_d`
/// by Möbius inversion, for `d = 1..=dmax`.
pub fn per_degree_counts(
    inst: &BivariateInstance,
    dmax: usize,
    route: Route,
) -> Result<CountReport, CountError> {
    if dmax == 0 || dmax > inst.m {
        return Err(CountError::DmaxOutOfRange { dmax, m: inst.m });
    }
    let mut report = count_distinct_t(inst, route)?;
    let h = &report.squarefree;
    let cumulative: Vec<usize> = if h.is_constant() {
        vec![0; dmax]
    } else {
        let t = UniPoly::x(h.modulus());
        let per = exec::map_range(1..dmax + 1, |d| -> Result<usize, UpolyError> {
            let frob = UniPoly::frobenius(h, d as u32)?;
            Ok(h.gcd(&(&frob - &t))?.degree().unwrap_or(0))
        });
        per.into_iter().collect::<Result<_, _>>()?
    };
    report.cumulative = (1..=dmax).zip(cumulative.iter().copied()).collect();
    report.exact = (1..=dmax)
        .map(|d| {
            let e = (1..=d)
                .filter(|e| d % e == 0)
                .map(|e| moebius((d / e) as u64) as i64 * cumulative[e - 1] as i64)
                .sum();
            (d, e)
        })
        .collect();
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub no_zero: bool,
    pub g: UniPoly,
    /// `gcd(g, t^p - t)`; absent when `g` is constant or zero.
    pub gcd: Option<UniPoly>,
    pub transcript: Option<Derivation>,
}

/// Whether `f(t, x) != 0` for all `t, x` in GF(p): first `g = Res_x(f, x^p -
/// x)`, then `gcd(g, t^p - t)` constant.
pub fn decide_no_zero(inst: &BivariateInstance) -> Result<Decision, CountError> {
    let p = inst.modulus().get();
    if p > DECIDE_MAX_P {
        return Err(CountError::ModulusTooLarge {
            p,
            max: DECIDE_MAX_P,
        });
    }
    let g = build_g(inst, Route::Product)?;
    if g.is_zero() {
        // some slice f(t, c) vanishes identically
        return Ok(Decision {
            no_zero: false,
            g,
            gcd: None,
            transcript: None,
        });
    }
    if g.is_constant() {
        return Ok(Decision {
            no_zero: true,
            g,
            gcd: None,
            transcript: None,
        });
    }
    let transcript = emit_gcd_derivation(&g)?;
    let gcd = transcript.gcd().clone();
    Ok(Decision {
        no_zero: gcd.is_constant(),
        g,
        gcd: Some(gcd),
        transcript: Some(transcript),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DerivationStep {
    /// A squaring or accumulation while raising `x` to the `p`-th power.
    Power {
        bit: u32,
        op: PowerStepKind,
        #[serde(serialize_with = "ser_poly")]
        residue: UniPoly,
    },
    /// `x^p - x mod f`.
    Subtract {
        #[serde(serialize_with = "ser_poly")]
        residue: UniPoly,
    },
    /// `r_{i+1} = r_{i-1} mod r_i`, starting from `f` and the subtraction.
    Remainder {
        #[serde(serialize_with = "ser_poly")]
        residue: UniPoly,
    },
    /// The monic gcd.
    Gcd {
        #[serde(serialize_with = "ser_poly")]
        residue: UniPoly,
    },
}

fn ser_poly<S: serde::Serializer>(u: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(u.coeffs())
}

impl DerivationStep {
    pub fn residue(&self) -> &UniPoly {
        match self {
            DerivationStep::Power { residue, .. }
            | DerivationStep::Subtract { residue }
            | DerivationStep::Remainder { residue }
            | DerivationStep::Gcd { residue } => residue,
        }
    }
}

/// A checkable computation of `gcd(x^p - x mod f, f)`. Coefficient lists
/// run from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub p: u64,
    #[serde(serialize_with = "ser_poly")]
    pub f: UniPoly,
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    pub fn gcd(&self) -> &UniPoly {
        match self.steps.last() {
            Some(DerivationStep::Gcd { residue }) => residue,
            _ => unreachable!("derivations end with their gcd"),
        }
    }

    /// Total field elements stored, counting at least one per residue.
    pub fn size(&self) -> usize {
        self.steps
            .iter()
            .map(|s| s.residue().coeffs().len().max(1))
            .sum()
    }

    pub fn power_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, DerivationStep::Power { .. }))
            .count()
    }

    pub fn remainder_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, DerivationStep::Remainder { .. }))
            .count()
    }

    /// Recheck every step from its predecessors alone.
    pub fn verify(&self) -> Result<(), CountError> {
        let bad = |step: usize, reason: &str| CountError::Verification {
            step,
            reason: reason.to_string(),
        };
        let f = &self.f;
        if f.degree().unwrap_or(0) < 1 || f.modulus().get() != self.p {
            return Err(bad(0, "f must have positive degree over GF(p)"));
        }
        let pm = f.modulus();
        let x = UniPoly::x(pm).rem(f)?;
        let mut square = x.clone();
        let mut acc: Option<UniPoly> = None;
        let mut bits = 0u64;
        let mut i = 0;
        while let Some(DerivationStep::Power { bit, op, residue }) = self.steps.get(i) {
            let want = match op {
                PowerStepKind::Square => {
                    square = square.mul_mod(&square, f)?;
                    &square
                }
                PowerStepKind::Accumulate => {
                    bits |= 1 << bit;
                    acc = Some(match acc {
                        None => square.clone(),
                        Some(a) => a.mul_mod(&square, f)?,
                    });
                    acc.as_ref().unwrap()
                }
            };
            if want != residue {
                return Err(bad(i, "power residue differs"));
            }
            i += 1;
        }
        if bits != self.p {
            return Err(bad(i, "accumulated bits do not spell p"));
        }
        let xp = acc.ok_or_else(|| bad(i, "no accumulation"))?;
        let Some(DerivationStep::Subtract { residue: s }) = self.steps.get(i) else {
            return Err(bad(i, "expected the subtraction"));
        };
        if &(&xp - &x).rem(f)? != s {
            return Err(bad(i, "x^p - x residue differs"));
        }
        i += 1;
        let (mut a, mut b) = (f.clone(), s.clone());
        while let Some(DerivationStep::Remainder { residue }) = self.steps.get(i) {
            if b.is_zero() {
                return Err(bad(i, "remainder after a zero divisor"));
            }
            if &a.rem(&b)? != residue {
                return Err(bad(i, "remainder differs"));
            }
            a = std::mem::replace(&mut b, residue.clone());
            i += 1;
        }
        if !b.is_zero() {
            return Err(bad(i, "chain stops before a zero remainder"));
        }
        match self.steps.get(i) {
            Some(DerivationStep::Gcd { residue })
                if *residue == a.monic() && i + 1 == self.steps.len() =>
            {
                Ok(())
            }
            _ => Err(bad(i, "expected the final monic gcd")),
        }
    }
}

/// Derivation of `gcd(x^p - x mod f, f)` by repeated squaring followed by
/// Euclid.
pub fn emit_gcd_derivation(f: &UniPoly) -> Result<Derivation, CountError> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(CountError::ConstantPolynomial);
    }
    let pm = f.modulus();
    let x = UniPoly::x(pm);
    let mut power: Vec<PowerStep> = Vec::new();
    let xp = x.pow_mod_traced(pm.get(), f, 0, Some(&mut power))?;
    let mut steps: Vec<DerivationStep> = power
        .into_iter()
        .map(|s| DerivationStep::Power {
            bit: s.bit,
            op: s.kind,
            residue: s.residue,
        })
        .collect();
    let s = (&xp - &x).rem(f)?;
    steps.push(DerivationStep::Subtract { residue: s.clone() });
    let (mut a, mut b) = (f.clone(), s);
    while !b.is_zero() {
        let r = a.rem(&b)?;
        steps.push(DerivationStep::Remainder { residue: r.clone() });
        a = std::mem::replace(&mut b, r);
    }
    steps.push(DerivationStep::Gcd { residue: a.monic() });
    Ok(Derivation {
        p: pm.get(),
        f: f.clone(),
        steps,
    })
}
