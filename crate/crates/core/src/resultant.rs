//! Parametric Sylvester matrices and their determinants.
//!
//! Three strategies compute the same polynomial: Leibniz expansion,
//! incremental propagation over bordered submatrices, and (for bivariate
//! input) evaluation at sample points followed by interpolation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dense;
use crate::exec;
use crate::ff::{Field, PrimeModulus};
use crate::mpoly::{Monomial, MpolyError, MultiPoly};
use crate::oracle::{ExtField, OracleError};
use crate::upoly::UniPoly;

pub const LEIBNIZ_MAX_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResultantError {
    #[error("resultant of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("both polynomials are constant in x{var}")]
    BothConstantInVar { var: usize },
    #[error("matrix dimension {dim} exceeds the limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("matrix is not square or an entry involves x{var}")]
    MalformedMatrix { var: usize },
    #[error("interpolation needs arity 2, found {arity}")]
    NotBivariate { arity: usize },
    #[error("only {available} sample points available, {needed} needed")]
    FieldTooSmall { needed: usize, available: usize },
    #[error("found {found} usable sample points of {needed} within the budget")]
    DegenerateSpecialization { needed: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] MpolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// The `D x D` Sylvester matrix of two polynomials in one variable. Entries
/// keep the full arity but never involve the eliminated variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterMatrix {
    entries: Vec<Vec<MultiPoly>>,
    d_alpha: usize,
    d_beta: usize,
    var: usize,
    arity: usize,
    modulus: PrimeModulus,
}

impl SylvesterMatrix {
    /// Wrap an arbitrary square matrix. `d_alpha` is set to the dimension
    /// and `d_beta` to zero.
    pub fn from_entries(entries: Vec<Vec<MultiPoly>>, var: usize) -> Result<Self, ResultantError> {
        let dim = entries.len();
        let first = entries
            .first()
            .and_then(|r| r.first())
            .ok_or(ResultantError::MalformedMatrix { var })?;
        let (arity, modulus) = (first.arity(), first.modulus());
        let ok = entries.iter().all(|row| {
            row.len() == dim
                && row.iter().all(|e| {
                    e.arity() == arity
                        && e.modulus() == modulus
                        && !(var < arity && e.involves(var))
                })
        });
        if !ok {
            return Err(ResultantError::MalformedMatrix { var });
        }
        Ok(SylvesterMatrix {
            entries,
            d_alpha: dim,
            d_beta: 0,
            var,
            arity,
            modulus,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn d_alpha(&self) -> usize {
        self.d_alpha
    }

    pub fn d_beta(&self) -> usize {
        self.d_beta
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn entry(&self, row: usize, col: usize) -> &MultiPoly {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<MultiPoly>] {
        &self.entries
    }

    /// Largest term count of any entry.
    pub fn l_max(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .map(MultiPoly::term_count)
            .max()
            .unwrap_or(0)
    }

    /// `D! * L_max^D`, saturating.
    pub fn term_ceiling(&self) -> u128 {
        let d = self.dim() as u32;
        let fact = (1..=d as u128).product::<u128>();
        fact.saturating_mul((self.l_max() as u128).saturating_pow(d))
    }
}

pub fn sylvester_build(
    alpha: &MultiPoly,
    beta: &MultiPoly,
    var: usize,
) -> Result<SylvesterMatrix, ResultantError> {
    alpha.checked_add(beta)?;
    if var >= alpha.arity() {
        return Err(MpolyError::VariableOutOfRange {
            var,
            arity: alpha.arity(),
        }
        .into());
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(ResultantError::ZeroPolynomial);
    }
    let a = alpha.coeffs_in(var);
    let b = beta.coeffs_in(var);
    let (da, db) = (a.len() - 1, b.len() - 1);
    if da == 0 && db == 0 {
        return Err(ResultantError::BothConstantInVar { var });
    }
    let dim = da + db;
    let zero = MultiPoly::zero(alpha.arity(), alpha.modulus());
    let mut entries = Vec::with_capacity(dim);
    for (src, shifts) in [(&a, db), (&b, da)] {
        for i in 0..shifts {
            let mut row = vec![zero.clone(); dim];
            for (j, c) in src.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            entries.push(row);
        }
    }
    Ok(SylvesterMatrix {
        entries,
        d_alpha: da,
        d_beta: db,
        var,
        arity: alpha.arity(),
        modulus: alpha.modulus(),
    })
}

/// Sum over permutations with shared prefix products; zero entries prune
/// whole subtrees.
pub fn res_leibniz(m: &SylvesterMatrix) -> Result<MultiPoly, ResultantError> {
    let dim = m.dim();
    if dim > LEIBNIZ_MAX_DIM {
        return Err(ResultantError::DimensionTooLarge {
            dim,
            max: LEIBNIZ_MAX_DIM,
        });
    }
    let mut acc = MultiPoly::zero(m.arity, m.modulus);
    let one = MultiPoly::one(m.arity, m.modulus);
    leibniz_rec(m, 0, 0, false, &one, &mut acc);
    Ok(acc)
}

fn leibniz_rec(
    m: &SylvesterMatrix,
    row: usize,
    used: u32,
    odd: bool,
    prefix: &MultiPoly,
    acc: &mut MultiPoly,
) {
    if row == m.dim() {
        let sign = if odd { m.modulus.neg(1) } else { 1 };
        acc.add_scaled(prefix, sign);
        return;
    }
    for col in 0..m.dim() {
        let e = &m.entries[row][col];
        if used & (1 << col) != 0 || e.is_zero() {
            continue;
        }
        // used columns to the right of `col` each form an inversion
        let inversions = (used >> (col + 1)).count_ones();
        leibniz_rec(
            m,
            row + 1,
            used | (1 << col),
            odd ^ (inversions % 2 == 1),
            &(prefix * e),
            acc,
        );
    }
}

/// A fraction of polynomials. Only monomial content and the scalar leading
/// coefficient of the denominator are normalized away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFraction {
    num: MultiPoly,
    den: MultiPoly,
}

impl PolyFraction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let mut f = PolyFraction { num, den };
        f.reduce();
        Some(f)
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        let den = MultiPoly::one(num.arity(), num.modulus());
        PolyFraction { num, den }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.den.arity(), self.den.modulus());
            return;
        }
        let cn = self.num.monomial_content();
        let cd = self.den.monomial_content();
        let common = Monomial::new(
            cn.exps()
                .iter()
                .zip(cd.exps())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        );
        if !common.is_one() {
            self.num = self.num.div_monomial(&common);
            self.den = self.den.div_monomial(&common);
        }
        let (_, lc) = self.den.leading_term().expect("nonzero denominator");
        if lc != 1 {
            let inv = self.den.modulus().inv(lc).expect("nonzero");
            self.num = self.num.scale(inv);
            self.den = self.den.scale(inv);
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, when the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        self.num.div_exact(&self.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("nonzero product")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero product")
    }

    /// Equality in the fraction field.
    pub fn same_value(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Snapshot of the propagation after `k` rows have been placed.
#[derive(Clone, Debug)]
pub struct PropagationState {
    pub k: usize,
    pub row_ids: Vec<usize>,
    pub col_ids: Vec<usize>,
    /// `det(S_k)`, always with denominator one.
    pub det: PolyFraction,
    /// `S_k^{-1}` as adjugate entries over `det`.
    pub inv: Vec<Vec<PolyFraction>>,
}

pub fn res_propagate(m: &SylvesterMatrix) -> MultiPoly {
    propagate(m, None)
}

/// As [`res_propagate`], reporting the state after every extension.
pub fn res_propagate_traced(
    m: &SylvesterMatrix,
    observer: &mut dyn FnMut(&PropagationState),
) -> MultiPoly {
    propagate(m, Some(observer))
}

/// Rows are placed in order. For row `k` the lowest unselected column whose
/// bordered determinant `det(S_k) * s - r^T adj(S_k) c` is nonzero extends the
/// selection. The adjugate `A = det * S^{-1}` stays polynomial; its update
/// is `(det' A + w v^T) / det` with `w = A c`, `v = r^T A`, an exact division.
fn propagate(
    m: &SylvesterMatrix,
    mut observer: Option<&mut dyn FnMut(&PropagationState)>,
) -> MultiPoly {
    let n = m.dim();
    let (arity, p) = (m.arity, m.modulus);
    let zero = MultiPoly::zero(arity, p);
    let mut delta = MultiPoly::one(arity, p);
    let mut adj: Vec<Vec<MultiPoly>> = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    for row in 0..n {
        let k = cols.len();
        let r: Vec<&MultiPoly> = cols.iter().map(|&c| &m.entries[row][c]).collect();
        let v: Vec<MultiPoly> = (0..k)
            .map(|l| {
                let mut s = zero.clone();
                for (j, rj) in r.iter().enumerate() {
                    if !rj.is_zero() && !adj[j][l].is_zero() {
                        s = &s + &(*rj * &adj[j][l]);
                    }
                }
                s
            })
            .collect();
        let mut chosen = None;
        for col in (0..n).filter(|c| !cols.contains(c)) {
            let c: Vec<&MultiPoly> = (0..row).map(|i| &m.entries[i][col]).collect();
            let mut next = &delta * &m.entries[row][col];
            for (vl, cl) in v.iter().zip(&c) {
                if !vl.is_zero() && !cl.is_zero() {
                    next = &next - &(vl * *cl);
                }
            }
            if !next.is_zero() {
                chosen = Some((col, c, next));
                break;
            }
        }
        let Some((col, c, next)) = chosen else {
            return zero;
        };
        let w: Vec<MultiPoly> = (0..k)
            .map(|a| {
                let mut s = zero.clone();
                for (l, cl) in c.iter().enumerate() {
                    if !cl.is_zero() && !adj[a][l].is_zero() {
                        s = &s + &(&adj[a][l] * *cl);
                    }
                }
                s
            })
            .collect();
        let mut grown = Vec::with_capacity(k + 1);
        for a in 0..k {
            let mut out_row = Vec::with_capacity(k + 1);
            for b in 0..k {
                let numer = &(&next * &adj[a][b]) + &(&w[a] * &v[b]);
                out_row.push(
                    numer
                        .div_exact(&delta)
                        .expect("adjugate update divides exactly"),
                );
            }
            out_row.push(-&w[a]);
            grown.push(out_row);
        }
        let mut last: Vec<MultiPoly> = v.iter().map(|x| -x).collect();
        last.push(delta.clone());
        grown.push(last);
        adj = grown;
        delta = next;
        cols.push(col);
        if let Some(obs) = observer.as_mut() {
            obs(&snapshot(&delta, &adj, &cols));
        }
    }
    let inversions = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| cols[i] > cols[j])
        .count();
    if inversions % 2 == 1 {
        -&delta
    } else {
        delta
    }
}

fn snapshot(delta: &MultiPoly, adj: &[Vec<MultiPoly>], cols: &[usize]) -> PropagationState {
    let k = cols.len();
    PropagationState {
        k,
        row_ids: (0..k).collect(),
        col_ids: cols.to_vec(),
        det: PolyFraction::from_poly(delta.clone()),
        inv: adj
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| PolyFraction::new(e.clone(), delta.clone()).expect("nonzero det"))
                    .collect()
            })
            .collect(),
    }
}

/// Resultant of two bivariate polynomials by sampling the free variable at
/// `N = D * Delta_t + 1` points, where `Delta_t` bounds its degree in the
/// coefficients. Points where either leading coefficient vanishes are
/// skipped. Below `N` points of GF(p), sampling moves to GF(p^e).
pub fn res_interp(
    alpha: &MultiPoly,
    beta: &MultiPoly,
    var: usize,
) -> Result<MultiPoly, ResultantError> {
    if alpha.arity() != 2 {
        return Err(ResultantError::NotBivariate {
            arity: alpha.arity(),
        });
    }
    // validates compatibility, zero inputs and degrees
    let shape = sylvester_build(alpha, beta, var)?;
    let t = 1 - var;
    let p = alpha.modulus();
    let lift = |u: &MultiPoly| -> Vec<UniPoly> {
        u.coeffs_in(var)
            .iter()
            .map(|c| c.to_univariate(t).expect("bivariate"))
            .collect()
    };
    let (a, b) = (lift(alpha), lift(beta));
    let delta_t = alpha.degree_in(t).max(beta.degree_in(t)).max(0) as usize;
    let needed = shape.dim() * delta_t + 1;
    let budget = 4 * needed;

    let mut e = 1u32;
    let coeffs = loop {
        let size = (p.get() as u128).saturating_pow(e);
        if size < needed as u128 {
            e += 1;
            continue;
        }
        let count = (budget as u128).min(size) as usize;
        let attempt = if e == 1 {
            let points: Vec<u64> = (0..count as u64).collect();
            sample_and_interpolate(&p, &points, &a, &b, needed)
        } else {
            let field = ExtField::make(p, e as usize, 0x696e_7465_7270 ^ e as u64)?;
            let points: Vec<_> = (0..count as u64).map(|i| field.element(i)).collect();
            sample_and_interpolate(&field, &points, &a, &b, needed)
        };
        match attempt {
            Err(ResultantError::FieldTooSmall { .. }) => e += 1,
            other => break other?,
        }
    };
    let u = UniPoly::from_coeffs(p, coeffs);
    Ok(MultiPoly::from_univariate(&u, 2, t))
}

fn sample_and_interpolate<F: Field>(
    ctx: &F,
    candidates: &[F::Elem],
    a: &[UniPoly],
    b: &[UniPoly],
    needed: usize,
) -> Result<Vec<u64>, ResultantError> {
    let usable: Vec<&F::Elem> = candidates
        .iter()
        .filter(|tau| {
            let lc = |u: &[UniPoly]| dense::eval_base(ctx, u[u.len() - 1].coeffs(), tau);
            !ctx.is_zero(&lc(a)) && !ctx.is_zero(&lc(b))
        })
        .take(needed)
        .collect();
    if usable.len() < needed {
        let exhausted = candidates.len() < 4 * needed;
        return Err(if exhausted {
            ResultantError::FieldTooSmall {
                needed,
                available: usable.len(),
            }
        } else {
            ResultantError::DegenerateSpecialization {
                needed,
                found: usable.len(),
            }
        });
    }
    let values = exec::map(&usable, |tau| {
        let spec = |u: &[UniPoly]| -> Vec<F::Elem> {
            u.iter()
                .map(|c| dense::eval_base(ctx, c.coeffs(), tau))
                .collect()
        };
        dense::sylvester_det(ctx, &spec(a), &spec(b))
    });
    let points: Vec<(F::Elem, F::Elem)> = usable.into_iter().cloned().zip(values).collect();
    let coeffs = dense::interpolate(ctx, &points).expect("distinct sample points");
    Ok(coeffs
        .iter()
        .map(|c| {
            ctx.to_base(c)
                .expect("resultant coefficients lie in the base field")
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Leibniz,
    Propagate,
    Interp,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Leibniz => "leibniz",
            Strategy::Propagate => "propagate",
            Strategy::Interp => "interp",
        }
    }

    /// The concrete strategy `Auto` picks for a matrix of this shape.
    pub fn resolve(self, dim: usize, arity: usize) -> Strategy {
        match self {
            Strategy::Auto if dim <= 5 => Strategy::Leibniz,
            Strategy::Auto if arity == 2 => Strategy::Interp,
            Strategy::Auto => Strategy::Propagate,
            s => s,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "leibniz" => Ok(Strategy::Leibniz),
            "propagate" => Ok(Strategy::Propagate),
            "interp" => Ok(Strategy::Interp),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

pub fn res(
    alpha: &MultiPoly,
    beta: &MultiPoly,
    var: usize,
    strategy: Strategy,
) -> Result<MultiPoly, ResultantError> {
    let m = sylvester_build(alpha, beta, var)?;
    match strategy.resolve(m.dim(), m.arity()) {
        Strategy::Leibniz => res_leibniz(&m),
        Strategy::Interp => res_interp(alpha, beta, var),
        _ => Ok(res_propagate(&m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{
        any, prop_assert, prop_assert_eq, prop_assume, proptest, ProptestConfig,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn poly(s: &str, n: usize, p: u64) -> MultiPoly {
        MultiPoly::parse(s, n, m(p)).unwrap()
    }

    fn consts(rows: &[&[i64]], p: u64) -> SylvesterMatrix {
        let pm = m(p);
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&c| MultiPoly::constant(1, pm, pm.reduce_i128(c as i128)))
                    .collect()
            })
            .collect();
        SylvesterMatrix::from_entries(entries, 0).unwrap()
    }

    #[test]
    fn build_linear_pair() {
        // x - a, x - b with a = x0, b = x1 as symbolic constants
        let s = sylvester_build(&poly("x2 - x0", 3, 7), &poly("x2 - x1", 3, 7), 2).unwrap();
        let rendered: Vec<Vec<String>> = s
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| e.render()).collect())
            .collect();
        assert_eq!(rendered, vec![vec!["1", "6*x0"], vec!["1", "6*x1"]]);
        assert_eq!(res_leibniz(&s).unwrap(), poly("x0 - x1", 3, 7));
        assert_eq!(res_propagate(&s), poly("x0 - x1", 3, 7));
    }

    #[test]
    fn build_small_shift() {
        let s = sylvester_build(&poly("x0^2 + 1", 1, 7), &poly("x0 + 1", 1, 7), 0).unwrap();
        let flat: Vec<Vec<u64>> = s
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| e.as_constant().unwrap()).collect())
            .collect();
        assert_eq!(flat, vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(res_leibniz(&s).unwrap().as_constant(), Some(2));
    }

    #[test]
    fn build_seven_by_seven() {
        let s = sylvester_build(&poly("x1^2 - x0", 2, 5), &poly("x1^5 - x1", 2, 5), 1).unwrap();
        assert_eq!((s.dim(), s.d_alpha(), s.d_beta()), (7, 2, 5));
        let allowed = ["0", "1", "4", "4*x0"];
        for e in s.rows().iter().flatten() {
            assert!(allowed.contains(&e.render().as_str()), "{e}");
        }
        // the first row is alpha's coefficient vector
        let top: Vec<String> = s.rows()[0].iter().map(|e| e.render()).collect();
        assert_eq!(top, ["1", "0", "4*x0", "0", "0", "0", "0"]);
    }

    #[test]
    fn build_errors() {
        let z = MultiPoly::zero(2, m(5));
        let a = poly("x1 + 1", 2, 5);
        assert_eq!(
            sylvester_build(&z, &a, 1),
            Err(ResultantError::ZeroPolynomial)
        );
        assert_eq!(
            sylvester_build(&poly("x0", 2, 5), &poly("x0 + 1", 2, 5), 1),
            Err(ResultantError::BothConstantInVar { var: 1 })
        );
        assert!(matches!(
            sylvester_build(&a, &a, 2),
            Err(ResultantError::Poly(MpolyError::VariableOutOfRange { .. }))
        ));
        assert!(sylvester_build(&a, &poly("x1", 2, 7), 1).is_err());
    }

    #[test]
    fn numeric_determinants() {
        let two = consts(&[&[1, -3], &[1, -5]], 7);
        assert_eq!(res_leibniz(&two).unwrap().as_constant(), Some(5));
        assert_eq!(res_propagate(&two).as_constant(), Some(5));
        let three = consts(&[&[1, 0, 1], &[1, 1, 0], &[0, 1, 1]], 7);
        assert_eq!(res_leibniz(&three).unwrap().as_constant(), Some(2));
        let mut ks = Vec::new();
        let r = res_propagate_traced(&three, &mut |s| ks.push(s.k));
        assert_eq!(r.as_constant(), Some(2));
        assert_eq!(ks, vec![1, 2, 3]);
        let singular = consts(&[&[1, 2, 3], &[1, 2, 3], &[0, 1, 1]], 7);
        assert!(res_leibniz(&singular).unwrap().is_zero());
        let mut ks = Vec::new();
        assert!(res_propagate_traced(&singular, &mut |s| ks.push(s.k)).is_zero());
        // stalls while trying to reach k = 2
        assert_eq!(ks, vec![1]);
    }

    #[test]
    fn leibniz_guard() {
        let mut rows = vec![vec![0i64; 9]; 9];
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] = 1;
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let big = consts(&refs, 7);
        assert_eq!(
            res_leibniz(&big),
            Err(ResultantError::DimensionTooLarge { dim: 9, max: 8 })
        );
        assert_eq!(res_propagate(&big).as_constant(), Some(1));
    }

    #[test]
    fn propagation_states_invert() {
        let s = sylvester_build(
            &poly("x1^2 + x0*x1 + 2", 2, 11),
            &poly("x0*x1^2 + 3*x1 + x0", 2, 11),
            1,
        )
        .unwrap();
        let mut states = Vec::new();
        res_propagate_traced(&s, &mut |st| states.push(st.clone()));
        for st in &states {
            for (i, &r) in st.row_ids.iter().enumerate() {
                for l in 0..st.k {
                    let mut sum = PolyFraction::from_poly(MultiPoly::zero(2, m(11)));
                    for (j, &c) in st.col_ids.iter().enumerate() {
                        let e = PolyFraction::from_poly(s.entry(r, c).clone());
                        sum = sum.add(&e.mul(&st.inv[j][l]));
                    }
                    let want = MultiPoly::constant(2, m(11), (i == l) as u64);
                    assert!(
                        sum.same_value(&PolyFraction::from_poly(want)),
                        "k={} ({i},{l})",
                        st.k
                    );
                }
            }
        }
    }

    #[test]
    fn seven_by_seven_matches_product() {
        let p = m(5);
        let s = sylvester_build(&poly("x1^2 - x0", 2, 5), &poly("x1^5 - x1", 2, 5), 1).unwrap();
        // (-1)^(2*5) * prod_c (c^2 - t)
        let mut want = MultiPoly::one(2, p);
        for c in 0..5u64 {
            want = &want * &MultiPoly::parse(&format!("{} - x0", c * c), 2, p).unwrap();
        }
        assert_eq!(res_leibniz(&s).unwrap(), want);
        assert_eq!(res_propagate(&s), want);
        assert_eq!(want.degree_in(0), 5);
    }

    #[test]
    fn interp_examples() {
        let a = poly("x1^2 - x0", 2, 11);
        let b = poly("x1^5 - x1", 2, 11);
        let r = res_interp(&a, &b, 1).unwrap();
        let s = sylvester_build(&a, &b, 1).unwrap();
        assert_eq!(r, res_leibniz(&s).unwrap());
        assert_eq!(r.degree_in(0), 5);

        let c = poly("x1^2 + 3", 2, 11);
        let d = poly("x1 - 4", 2, 11);
        let u = UniPoly::from_i64(m(11), &[3, 0, 1]);
        let v = UniPoly::from_i64(m(11), &[-4, 1]);
        assert_eq!(
            res_interp(&c, &d, 1).unwrap().as_constant(),
            Some(u.resultant(&v).unwrap().value())
        );

        let e = poly("(x1 - x0)*(x1 + 2)", 2, 11);
        let f = poly("(x1 - x0)*(x0*x1 + 1)", 2, 11);
        assert!(res_interp(&e, &f, 1).unwrap().is_zero());
        assert!(matches!(
            res_interp(&poly("x2", 3, 11), &poly("x2 + 1", 3, 11), 2),
            Err(ResultantError::NotBivariate { arity: 3 })
        ));
    }

    #[test]
    fn interp_lifts_small_fields() {
        // over GF(3) the bound needs 7 points; GF(9) supplies them
        let a = poly("x1^2 - x0^2*x1 + x0", 2, 3);
        let b = poly("x0*x1 + 2", 2, 3);
        let s = sylvester_build(&a, &b, 1).unwrap();
        assert_eq!(res_interp(&a, &b, 1).unwrap(), res_leibniz(&s).unwrap());
        let a = poly("x1^3 + x0^3*x1 + x0^2 + 1", 2, 2);
        let b = poly("x1^2*x0 + x0^3 + x1", 2, 2);
        let s = sylvester_build(&a, &b, 1).unwrap();
        assert_eq!(res_interp(&a, &b, 1).unwrap(), res_leibniz(&s).unwrap());
    }

    #[test]
    fn dispatch_examples() {
        let a = poly("x1 - 3", 2, 7);
        let b = poly("x1 - 5", 2, 7);
        for s in [
            Strategy::Auto,
            Strategy::Leibniz,
            Strategy::Propagate,
            Strategy::Interp,
        ] {
            assert_eq!(res(&a, &b, 1, s).unwrap().as_constant(), Some(5));
        }
        let shared = poly("(x1 - 3)*(x1 + x0)", 2, 7);
        let other = poly("(x1 - 3)*x0", 2, 7);
        assert!(res(&shared, &other, 1, Strategy::Auto).unwrap().is_zero());
        assert_eq!(Strategy::Auto.resolve(5, 3), Strategy::Leibniz);
        assert_eq!(Strategy::Auto.resolve(6, 2), Strategy::Interp);
        assert_eq!(Strategy::Auto.resolve(6, 3), Strategy::Propagate);
        assert_eq!("interp".parse::<Strategy>().unwrap(), Strategy::Interp);
    }

    #[test]
    fn swap_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = m(31);
        for _ in 0..30 {
            let a = MultiPoly::random(&mut rng, p, &[2, 3], 4);
            let b = MultiPoly::random(&mut rng, p, &[2, 2], 3);
            let (Ok(ab), Ok(ba)) = (
                res(&a, &b, 1, Strategy::Propagate),
                res(&b, &a, 1, Strategy::Propagate),
            ) else {
                continue;
            };
            let sign = (a.degree_in(1) * b.degree_in(1)) % 2 == 1;
            assert_eq!(ab, if sign { -&ba } else { ba });
        }
    }

    #[test]
    fn univariate_agrees_with_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = m(7);
        for _ in 0..50 {
            let a = MultiPoly::random(&mut rng, p, &[4], 3);
            let b = MultiPoly::random(&mut rng, p, &[3], 3);
            let Ok(s) = sylvester_build(&a, &b, 0) else {
                continue;
            };
            let r = res_leibniz(&s).unwrap();
            let ua = a.to_univariate(0).unwrap();
            let ub = b.to_univariate(0).unwrap();
            assert_eq!(
                r.as_constant().unwrap_or(0),
                ua.resultant(&ub).unwrap().value()
            );
            assert_eq!(res_propagate(&s), r);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn specialization_commutes(seed in any::<u64>(), x0 in 0u64..11) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = m(11);
            let a = MultiPoly::random(&mut rng, p, &[2, 3], 4);
            let b = MultiPoly::random(&mut rng, p, &[2, 2], 4);
            let Ok(r) = res(&a, &b, 1, Strategy::Propagate) else { return Ok(()) };
            let at = |f: &MultiPoly| {
                let bind = [(0usize, p.elem(x0))].into_iter().collect();
                f.eval_partial(&bind).unwrap().to_univariate(1).unwrap()
            };
            let (ua, ub) = (at(&a), at(&b));
            prop_assume!(ua.degree() == Some(a.degree_in(1) as usize));
            prop_assume!(ub.degree() == Some(b.degree_in(1) as usize));
            let expected = ua.resultant(&ub).unwrap().value();
            prop_assert_eq!(r.eval(&[x0, 0]), expected);
        }

        #[test]
        fn strategies_agree(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = m(7);
            let a = MultiPoly::random(&mut rng, p, &[2, 3], 4);
            let b = MultiPoly::random(&mut rng, p, &[3, 2], 4);
            let Ok(s) = sylvester_build(&a, &b, 1) else { return Ok(()) };
            let l = res_leibniz(&s).unwrap();
            prop_assert_eq!(&res_propagate(&s), &l);
            prop_assert_eq!(&res_interp(&a, &b, 1).unwrap(), &l);
            for (i, d) in l.degrees().into_iter().enumerate() {
                if i == 1 { prop_assert!(d <= 0); continue; }
                let delta = a.degree_in(i).max(b.degree_in(i)).max(0);
                prop_assert!(d <= s.dim() as i64 * delta);
            }
            prop_assert!(l.term_count() as u128 <= s.term_ceiling());
        }
    }
}
