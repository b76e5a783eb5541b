//! Sparse univariate instances that never vanish on GF(p), and deciders
//! for nonvanishing.
//!
//! Exponent reduction uses `x^(p-1) = 1` on GF(p)*. A positive exponent is
//! mapped into `1..=p-1` rather than to zero, so the value at `x = 0` is
//! preserved as well.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::count::{self, CountError};
use crate::ff::{is_prime, PrimeModulus};
use crate::upoly::{UniPoly, UpolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("factor {index}: {reason}")]
    ConditionViolated { index: usize, reason: String },
    #[error("{0} is not a usable auxiliary prime")]
    BadPrime(u64),
    #[error("exponents must be positive, strictly increasing and below p - 1")]
    BadExponents,
    #[error("coefficients fail the Eisenstein criterion at {0}")]
    NotEisenstein(u64),
    #[error("gcd(r, p - 1) = {0}, not 1")]
    NotCoprime(u64),
    #[error("h has a root in GF(p)")]
    PreconditionGcd,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("{nu} does not divide p - 1 = {order}")]
    NotDivisor { nu: u64, order: u64 },
    #[error(transparent)]
    Upoly(#[from] UpolyError),
    #[error(transparent)]
    Count(#[from] CountError),
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Positive exponent `e` to `((e - 1) mod (p - 1)) + 1`.
fn reduce_exponent(e: u128, p: PrimeModulus) -> usize {
    if e == 0 {
        return 0;
    }
    let q = (p.get() - 1) as u128;
    ((e - 1) % q + 1) as usize
}

/// Fold every positive exponent into `1..=p-1`. Values on all of GF(p) are
/// unchanged.
pub fn reduce_exponents(f: &UniPoly) -> UniPoly {
    let p = f.modulus();
    let q = (p.get() - 1) as usize;
    let mut out = vec![0u64; f.coeffs().len().min(q + 1)];
    for (e, &c) in f.coeffs().iter().enumerate() {
        let r = reduce_exponent(e as u128, p);
        out[r] = p.add(out[r], c);
    }
    UniPoly::from_coeffs(p, out)
}

/// Whether `f` has a root in GF(p), via `gcd(f, x^p - x mod f)`.
pub fn has_root_in_base_field(f: &UniPoly) -> Result<bool, InstanceError> {
    if f.is_zero() {
        return Ok(true);
    }
    if f.is_constant() {
        return Ok(false);
    }
    let p = f.modulus();
    let xp = UniPoly::frobenius(f, 1)?;
    let s = &xp - &UniPoly::x(p);
    Ok(!f.gcd(&s)?.is_constant())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub gamma: u64,
    pub delta: u64,
    pub r: u64,
}

/// `prod (gamma_i x^r_i - delta_i)` with every factor root-free on GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolySpec {
    p: PrimeModulus,
    factors: Vec<Factor>,
}

impl SparsePolySpec {
    /// Each factor needs nonzero `gamma, delta`, `g = gcd(r, p - 1) > 1` and
    /// `(delta / gamma)^((p - 1) / g) != 1`, i.e. `delta / gamma` is not an
    /// `r`-th power.
    pub fn new(p: PrimeModulus, factors: &[(u64, u64, u64)]) -> Result<Self, InstanceError> {
        let q = p.get() - 1;
        let mut out = Vec::with_capacity(factors.len());
        for (index, &(gamma, delta, r)) in factors.iter().enumerate() {
            let bad = |reason: String| InstanceError::ConditionViolated { index, reason };
            let (gamma, delta) = (p.reduce(gamma), p.reduce(delta));
            if gamma == 0 || delta == 0 {
                return Err(bad("gamma and delta must be nonzero".into()));
            }
            if r == 0 {
                return Err(bad("r must be positive".into()));
            }
            let g = gcd_u64(r, q);
            if g <= 1 {
                return Err(bad(format!("gcd({r}, {q}) = {g}")));
            }
            let ratio = p.mul(p.inv(gamma).expect("nonzero"), delta);
            if p.pow(ratio, q / g) == 1 {
                return Err(bad(format!("{ratio} is an {r}-th power mod {p}")));
            }
            out.push(Factor { gamma, delta, r });
        }
        Ok(SparsePolySpec { p, factors: out })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }
}

/// The expanded product, exponents reduced after every multiplication.
pub fn gen_nonresidue_product(spec: &SparsePolySpec) -> Result<UniPoly, InstanceError> {
    let p = spec.p;
    let mut acc = UniPoly::one(p);
    for f in &spec.factors {
        let mut coeffs = vec![0u64; reduce_exponent(f.r as u128, p) + 1];
        coeffs[0] = p.neg(f.delta);
        *coeffs.last_mut().expect("nonempty") = f.gamma;
        acc = reduce_exponents(&(&acc * &UniPoly::from_coeffs(p, coeffs)));
    }
    if acc.eval(0) == 0 {
        return Err(InstanceError::ConditionViolated {
            index: 0,
            reason: "product vanishes at 0".into(),
        });
    }
    Ok(acc)
}

/// Integer polynomial with sparse terms `(exponent, coefficient)`, in
/// increasing exponent order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPoly {
    pub terms: Vec<(u32, i64)>,
}

impl IntegerPoly {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|&(e, c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x0".to_string(),
                (1, c) => format!("{c}*x0"),
                (e, 1) => format!("x0^{e}"),
                (e, c) => format!("{c}*x0^{e}"),
            })
            .collect();
        parts.join(" + ")
    }

    pub fn reduce(&self, p: PrimeModulus) -> UniPoly {
        let top = self.terms.last().map_or(0, |t| t.0 as usize);
        let mut coeffs = vec![0u64; top + 1];
        for &(e, c) in &self.terms {
            coeffs[e as usize] = p.reduce_i128(c as i128);
        }
        UniPoly::from_coeffs(p, coeffs)
    }
}

/// Eisenstein at `pi`: `pi` misses the leading coefficient, divides every
/// other one, and `pi^2` misses the constant term.
pub fn is_eisenstein(f: &IntegerPoly, pi: u64) -> bool {
    let pi = pi as i64;
    let Some((&(top, lead), rest)) = f.terms.split_last() else {
        return false;
    };
    let a0 = f.terms.iter().find(|t| t.0 == 0).map_or(0, |t| t.1);
    top > 0
        && lead % pi != 0
        && rest.iter().all(|&(_, c)| c % pi == 0)
        && a0 % pi == 0
        && a0 % (pi * pi) != 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinInstance {
    pub pi: u64,
    pub over_z: IntegerPoly,
    pub mod_p: UniPoly,
}

impl EisensteinInstance {
    pub fn from_integer(
        p: PrimeModulus,
        pi: u64,
        over_z: IntegerPoly,
    ) -> Result<Self, InstanceError> {
        if !is_prime(pi) || pi == p.get() || pi > 1 << 31 {
            return Err(InstanceError::BadPrime(pi));
        }
        if !is_eisenstein(&over_z, pi) {
            return Err(InstanceError::NotEisenstein(pi));
        }
        let mod_p = over_z.reduce(p);
        Ok(EisensteinInstance { pi, over_z, mod_p })
    }

    /// Whether the mod-p view has a root in GF(p). Eisenstein says nothing
    /// about this.
    pub fn vanishes_mod_p(&self) -> Result<bool, InstanceError> {
        has_root_in_base_field(&self.mod_p)
    }
}

/// Monic `x^{e_k} + sum pi a'_j x^{e_j} + pi a'_0` with the `a'` drawn from
/// `1..=9` and `pi` not dividing `a'_0`.
pub fn gen_eisenstein_sparse(
    p: PrimeModulus,
    pi: u64,
    exponents: &[u32],
    seed: u64,
) -> Result<EisensteinInstance, InstanceError> {
    if !is_prime(pi) || pi == p.get() || pi > 1 << 31 {
        return Err(InstanceError::BadPrime(pi));
    }
    let increasing = exponents.windows(2).all(|w| w[0] < w[1]);
    let ok = increasing
        && exponents.first().is_some_and(|&e| e >= 1)
        && exponents.last().is_some_and(|&e| (e as u64) < p.get() - 1);
    if !ok {
        return Err(InstanceError::BadExponents);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pi_i = pi as i64;
    let a0 = loop {
        let c: i64 = rng.gen_range(1..=9);
        if c % pi_i != 0 {
            break c * pi_i;
        }
    };
    let mut terms = vec![(0u32, a0)];
    let (&top, middle) = exponents.split_last().expect("nonempty");
    for &e in middle {
        terms.push((e, pi_i * rng.gen_range(1..=9)));
    }
    terms.push((top, 1));
    EisensteinInstance::from_integer(p, pi, IntegerPoly { terms })
}

/// `h(x^r)` with exponents reduced; never vanishes on GF(p) because
/// `x -> x^r` permutes GF(p)* and `h` has no root in GF(p).
pub fn gen_substitution(h: &UniPoly, r: u64) -> Result<UniPoly, InstanceError> {
    let p = h.modulus();
    let q = p.get() - 1;
    if r == 0 || gcd_u64(r, q) != 1 {
        return Err(InstanceError::NotCoprime(gcd_u64(r, q)));
    }
    if h.is_zero() {
        return Err(InstanceError::ZeroPolynomial);
    }
    if has_root_in_base_field(h)? {
        return Err(InstanceError::PreconditionGcd);
    }
    let reduced: Vec<(usize, u64)> = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| (reduce_exponent(i as u128 * r as u128, p), c))
        .collect();
    let top = reduced.iter().map(|&(e, _)| e).max().unwrap_or(0);
    let mut coeffs = vec![0u64; top + 1];
    for (e, c) in reduced {
        coeffs[e] = p.add(coeffs[e], c);
    }
    Ok(UniPoly::from_coeffs(p, coeffs))
}

/// True iff `f` and `g` have no common root in GF(p).
pub fn decide_pair_nonvanishing(f: &UniPoly, g: &UniPoly) -> Result<bool, InstanceError> {
    if f.is_zero() || g.is_zero() {
        return Err(InstanceError::ZeroPolynomial);
    }
    let h = f.gcd(g)?;
    Ok(!has_root_in_base_field(&h)?)
}

/// True iff `f` has no root of order dividing `nu`: `gcd(f, x^nu - 1)` is
/// constant.
pub fn check_nonvanishing(f: &UniPoly, nu: u64) -> Result<bool, InstanceError> {
    let p = f.modulus();
    let order = p.get() - 1;
    if nu == 0 || !order.is_multiple_of(nu) {
        return Err(InstanceError::NotDivisor { nu, order });
    }
    if f.is_zero() {
        return Err(InstanceError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(true);
    }
    let xnu = UniPoly::x(p).pow_mod(nu, f)?;
    let s = &xnu - &UniPoly::one(p);
    Ok(f.gcd(&s)?.is_constant())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptRow {
    pub p: u64,
    pub degree: usize,
    pub instance: usize,
    pub power_steps: usize,
    pub remainder_steps: usize,
    pub size: usize,
}

impl TranscriptRow {
    pub const CSV_HEADER: &'static str = "p,degree,instance,power_steps,remainder_steps,size";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.p, self.degree, self.instance, self.power_steps, self.remainder_steps, self.size
        )
    }
}

fn row_for(f: &UniPoly, instance: usize) -> Result<TranscriptRow, InstanceError> {
    let d = count::emit_gcd_derivation(f)?;
    d.verify()?;
    Ok(TranscriptRow {
        p: f.modulus().get(),
        degree: f.degree().unwrap_or(0),
        instance,
        power_steps: d.power_steps(),
        remainder_steps: d.remainder_steps(),
        size: d.size(),
    })
}

/// Verified derivation sizes for `instances` random monic polynomials of
/// the given degree over each prime.
pub fn transcript_bench(
    primes: &[u64],
    degree: usize,
    instances: usize,
    seed: u64,
) -> Result<Vec<TranscriptRow>, InstanceError> {
    let mut rows = Vec::new();
    for &p in primes {
        let pm = PrimeModulus::new(p).map_err(|_| InstanceError::BadPrime(p))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
        for i in 0..instances {
            let mut coeffs: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..p)).collect();
            coeffs.push(1);
            rows.push(row_for(&UniPoly::from_coeffs(pm, coeffs), i)?);
        }
    }
    Ok(rows)
}

/// Derivation sizes for sparse monic instances `x^e + a x^k + b` of
/// increasing top exponent `e`.
pub fn sparse_transcript_sizes(
    p: PrimeModulus,
    top_exponents: &[usize],
    seed: u64,
) -> Result<Vec<TranscriptRow>, InstanceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    top_exponents
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let mut coeffs = vec![0u64; e + 1];
            coeffs[e] = 1;
            coeffs[0] = rng.gen_range(1..p.get());
            if e > 1 {
                coeffs[rng.gen_range(1..e)] = rng.gen_range(1..p.get());
            }
            row_for(&UniPoly::from_coeffs(p, coeffs), i)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn no_root(f: &UniPoly) -> bool {
        (0..f.modulus().get()).all(|x| f.eval(x) != 0)
    }

    #[test]
    fn nonresidue_examples() {
        let s = SparsePolySpec::new(m(7), &[(1, 3, 2)]).unwrap();
        let f = gen_nonresidue_product(&s).unwrap();
        assert_eq!(f, UniPoly::from_i64(m(7), &[-3, 0, 1]));
        assert_eq!(f.render("x0"), "x0^2 + 4");
        assert!(no_root(&f));
        assert!(matches!(
            SparsePolySpec::new(m(7), &[(1, 2, 2)]),
            Err(InstanceError::ConditionViolated { index: 0, .. })
        ));
        let s = SparsePolySpec::new(m(13), &[(1, 2, 3), (1, 2, 4)]).unwrap();
        let f = gen_nonresidue_product(&s).unwrap();
        assert_eq!(f.degree(), Some(7));
        assert!(no_root(&f));
    }

    #[test]
    fn nonresidue_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let primes: Vec<u64> = (3..=101).filter(|&p| is_prime(p)).collect();
        for &p in &primes {
            let pm = m(p);
            let mut made = 0;
            for _ in 0..200 {
                let k = rng.gen_range(1..=3);
                let factors: Vec<(u64, u64, u64)> = (0..k)
                    .map(|_| {
                        (
                            rng.gen_range(1..p),
                            rng.gen_range(1..p),
                            rng.gen_range(1..3 * p),
                        )
                    })
                    .collect();
                let Ok(spec) = SparsePolySpec::new(pm, &factors) else {
                    continue;
                };
                let f = gen_nonresidue_product(&spec).unwrap();
                assert!(no_root(&f), "p={p} {factors:?}");
                made += 1;
            }
            assert!(made > 0, "p={p}");
        }
    }

    #[test]
    fn reduction_preserves_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for &p in &[2u64, 5, 13, 101] {
            let pm = m(p);
            for _ in 0..20 {
                let mut coeffs = vec![0u64; 4 * p as usize];
                for _ in 0..5 {
                    let e = rng.gen_range(0..coeffs.len());
                    coeffs[e] = rng.gen_range(1..p);
                }
                let f = UniPoly::from_coeffs(pm, coeffs);
                let g = reduce_exponents(&f);
                assert!(g.coeffs().len() < p as usize + 1);
                for x in 0..p {
                    assert_eq!(f.eval(x), g.eval(x));
                }
            }
        }
    }

    #[test]
    fn eisenstein_examples() {
        let p = m(7);
        let z = IntegerPoly {
            terms: vec![(0, 3), (1, 6), (4, 1)],
        };
        assert!(is_eisenstein(&z, 3));
        let e = EisensteinInstance::from_integer(p, 3, z).unwrap();
        assert_eq!(e.mod_p.eval(5), 0);
        assert!(e.vanishes_mod_p().unwrap());
        let bad = IntegerPoly {
            terms: vec![(0, 9), (1, 6), (4, 1)],
        };
        assert_eq!(
            EisensteinInstance::from_integer(p, 3, bad),
            Err(InstanceError::NotEisenstein(3))
        );
        assert_eq!(
            gen_eisenstein_sparse(p, 7, &[1, 4], 0),
            Err(InstanceError::BadPrime(7))
        );
        assert_eq!(
            gen_eisenstein_sparse(p, 4, &[1, 4], 0),
            Err(InstanceError::BadPrime(4))
        );
        assert_eq!(
            gen_eisenstein_sparse(p, 3, &[4, 1], 0),
            Err(InstanceError::BadExponents)
        );
        assert_eq!(
            gen_eisenstein_sparse(p, 3, &[1, 6], 0),
            Err(InstanceError::BadExponents)
        );
        for seed in 0..20 {
            let g = gen_eisenstein_sparse(m(31), 5, &[2, 7, 11], seed).unwrap();
            assert!(is_eisenstein(&g.over_z, 5));
            assert_eq!(g.over_z.reduce(m(31)), g.mod_p);
            assert_eq!(g.mod_p.degree(), Some(11));
        }
        assert_eq!(
            gen_eisenstein_sparse(m(31), 5, &[2, 7, 11], 3),
            gen_eisenstein_sparse(m(31), 5, &[2, 7, 11], 3)
        );
    }

    #[test]
    fn substitution_examples() {
        let p = m(5);
        let h = UniPoly::from_i64(p, &[1, 1, 1]);
        let f = gen_substitution(&h, 7).unwrap();
        assert_eq!(f, UniPoly::from_i64(p, &[1, 0, 1, 1]));
        let values: Vec<u64> = (0..5).map(|x| f.eval(x)).collect();
        assert_eq!(values, vec![1, 3, 3, 2, 1]);
        assert_eq!(gen_substitution(&h, 4), Err(InstanceError::NotCoprime(4)));
        let rooted = UniPoly::from_i64(p, &[-1, 1]);
        assert_eq!(
            gen_substitution(&rooted, 3),
            Err(InstanceError::PreconditionGcd)
        );
    }

    #[test]
    fn substitution_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in (3..=101u64).filter(|&p| is_prime(p)) {
            let pm = m(p);
            let mut made = 0;
            for _ in 0..40 {
                let deg = rng.gen_range(1..=4);
                let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
                coeffs.push(1);
                let h = UniPoly::from_coeffs(pm, coeffs);
                let r = rng.gen_range(1..10 * p);
                match gen_substitution(&h, r) {
                    Ok(f) => {
                        for x in 0..p {
                            let v = f.eval(x);
                            assert_ne!(v, 0);
                            assert_eq!(v, h.eval(pm.pow(x, r)));
                        }
                        made += 1;
                    }
                    Err(InstanceError::NotCoprime(_)) => {}
                    Err(InstanceError::PreconditionGcd) => assert!(!no_root(&h)),
                    Err(e) => panic!("{e}"),
                }
            }
            assert!(made > 0, "p={p}");
        }
    }

    #[test]
    fn pair_examples() {
        let p = m(7);
        let f = UniPoly::from_i64(p, &[-3, 0, 1]);
        let g = UniPoly::from_i64(p, &[-5, 0, 1]);
        assert!(decide_pair_nonvanishing(&f, &g).unwrap());
        let l = UniPoly::from_i64(p, &[-2, 1]);
        assert!(!decide_pair_nonvanishing(&l, &l).unwrap());
        let a = UniPoly::from_i64(p, &[1, 0, 1]);
        let b = &a + &UniPoly::from_i64(p, &[0, -1, 0, 0, 0, 0, 0, 1]);
        assert!(decide_pair_nonvanishing(&a, &b).unwrap());
        assert!(decide_pair_nonvanishing(&a, &UniPoly::zero(p)).is_err());
    }

    #[test]
    fn pair_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for p in (2..=101u64).filter(|&p| is_prime(p)) {
            let pm = m(p);
            for _ in 0..30 {
                let mk = |rng: &mut ChaCha8Rng| {
                    let deg = rng.gen_range(1..=5);
                    let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
                    c.push(rng.gen_range(1..p));
                    UniPoly::from_coeffs(pm, c)
                };
                let common = mk(&mut rng);
                let (mut f, mut g) = (mk(&mut rng), mk(&mut rng));
                if rng.gen_bool(0.5) {
                    f = &f * &common;
                    g = &g * &common;
                }
                let brute = (0..p).all(|x| f.eval(x) != 0 || g.eval(x) != 0);
                assert_eq!(decide_pair_nonvanishing(&f, &g).unwrap(), brute);
            }
        }
    }

    #[test]
    fn subgroup_examples() {
        let p = m(7);
        assert!(check_nonvanishing(&UniPoly::from_i64(p, &[-3, 0, 1]), 6).unwrap());
        assert!(!check_nonvanishing(&UniPoly::from_i64(p, &[-1, 1]), 3).unwrap());
        assert!(check_nonvanishing(&UniPoly::from_i64(p, &[-3, 1]), 2).unwrap());
        assert_eq!(
            check_nonvanishing(&UniPoly::from_i64(p, &[-3, 1]), 4),
            Err(InstanceError::NotDivisor { nu: 4, order: 6 })
        );
    }

    #[test]
    fn transcripts_measured() {
        let rows = transcript_bench(&[11, 31, 101], 8, 3, 1).unwrap();
        assert_eq!(rows.len(), 9);
        let sparse = sparse_transcript_sizes(m(101), &[4, 16, 64], 2).unwrap();
        assert_eq!(
            sparse.iter().map(|r| r.degree).collect::<Vec<_>>(),
            vec![4, 16, 64]
        );
    }
}
