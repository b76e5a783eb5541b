//! Pairwise resultant elimination and the pseudo-remainder comparator.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exec;
use crate::ff::PrimeModulus;
use crate::mpoly::{Monomial, MpolyError, MultiPoly};
use crate::resultant::{self, ResultantError, Strategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EliminateError {
    #[error("the system is empty")]
    EmptySystem,
    #[error("x{0} appears twice in the elimination order")]
    DuplicateVariable(usize),
    #[error("x{var} is out of range for arity {arity}")]
    VariableOutOfRange { var: usize, arity: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("benchmark configuration out of range: {0}")]
    ConfigOutOfRange(String),
    #[error(transparent)]
    Poly(#[from] MpolyError),
    #[error(transparent)]
    Resultant(#[from] ResultantError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairStrategy {
    /// Adjacent candidates in their current order.
    #[default]
    InputOrder,
    /// Candidates sorted by degree in the variable (stable), then adjacent.
    MinDegreeFirst,
}

impl PairStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            PairStrategy::InputOrder => "input-order",
            PairStrategy::MinDegreeFirst => "min-degree-first",
        }
    }
}

impl FromStr for PairStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "input-order" => Ok(PairStrategy::InputOrder),
            "min-degree-first" => Ok(PairStrategy::MinDegreeFirst),
            other => Err(format!("unknown pair strategy `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationPlan {
    variable_order: Vec<usize>,
    pair_strategy: PairStrategy,
    strategy: Strategy,
}

impl EliminationPlan {
    pub fn new(
        variable_order: Vec<usize>,
        pair_strategy: PairStrategy,
        arity: usize,
    ) -> Result<Self, EliminateError> {
        for (i, &v) in variable_order.iter().enumerate() {
            if v >= arity {
                return Err(EliminateError::VariableOutOfRange { var: v, arity });
            }
            if variable_order[..i].contains(&v) {
                return Err(EliminateError::DuplicateVariable(v));
            }
        }
        Ok(EliminationPlan {
            variable_order,
            pair_strategy,
            strategy: Strategy::Auto,
        })
    }

    /// Eliminate `x_{n-1}` down to `x1`, leaving `x0`.
    pub fn default_for(arity: usize) -> Self {
        EliminationPlan {
            variable_order: (1..arity).rev().collect(),
            pair_strategy: PairStrategy::InputOrder,
            strategy: Strategy::Auto,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn variable_order(&self) -> &[usize] {
        &self.variable_order
    }

    pub fn pair_strategy(&self) -> PairStrategy {
        self.pair_strategy
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Input(usize),
    Resultant { parents: (usize, usize), var: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub poly: MultiPoly,
    pub origin: Origin,
}

/// A pair whose resultant vanished identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedFactor {
    pub parents: (usize, usize),
    pub var: usize,
}

#[derive(Clone, Debug)]
pub struct RabinBasis {
    /// Inputs first, then resultants in creation order. Parent indices
    /// point into this list.
    pub generators: Vec<Generator>,
    pub shared_factors: Vec<SharedFactor>,
    /// Generators still active after the last stage.
    pub final_ids: Vec<usize>,
    pub log: TermGrowthLog,
}

impl RabinBasis {
    pub fn final_generators(&self) -> impl Iterator<Item = &MultiPoly> {
        self.final_ids.iter().map(|&i| &self.generators[i].poly)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Eea,
    Res(Strategy),
}

impl Method {
    pub fn tag(self) -> String {
        match self {
            Method::Eea => "eea".into(),
            Method::Res(s) => format!("res-{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub step: usize,
    pub method: Method,
    pub var: usize,
    pub terms: usize,
    pub max_deg: Vec<i64>,
    pub micros: u64,
    /// `(D * L_max)^D` for resultant rows.
    pub ceiling: Option<u128>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermGrowthLog {
    pub rows: Vec<GrowthRow>,
}

impl TermGrowthLog {
    pub const CSV_HEADER: &'static str = "step,method,var,terms,maxdeg,micros";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let maxdeg: Vec<String> = r.max_deg.iter().map(i64::to_string).collect();
            let _ = writeln!(
                out,
                "{},{},x{},{},{},{}",
                r.step,
                r.method.tag(),
                r.var,
                r.terms,
                maxdeg.join(";"),
                r.micros
            );
        }
        out
    }

    fn push(&mut self, method: Method, var: usize, poly: &MultiPoly, micros: u64) {
        let step = self.rows.iter().filter(|r| r.method == method).count() + 1;
        self.rows.push(GrowthRow {
            step,
            method,
            var,
            terms: poly.term_count(),
            max_deg: poly.degrees(),
            micros,
            ceiling: None,
        });
    }

    fn append(&mut self, other: TermGrowthLog) {
        self.rows.extend(other.rows);
    }
}

struct Stopwatch(Option<Instant>);

impl Stopwatch {
    fn start(timing: bool) -> Self {
        Stopwatch(timing.then(Instant::now))
    }

    fn micros(&self) -> u64 {
        self.0.map_or(0, |t| t.elapsed().as_micros() as u64)
    }
}

pub fn rabin_step(
    alpha: &MultiPoly,
    beta: &MultiPoly,
    var: usize,
    strategy: Strategy,
) -> Result<MultiPoly, EliminateError> {
    Ok(resultant::res(alpha, beta, var, strategy)?)
}

/// Single pass over the plan. In each stage the active generators involving
/// the variable are arranged by the pair strategy and every adjacent pair
/// `(c_i, c_{i+1})` is replaced by its resultant, placed where `c_i` stood;
/// the last candidate drops out. A vanishing resultant is recorded and the
/// pair's second element is kept in its place. A stage with a single
/// candidate leaves it untouched.
pub fn rabin_basis(
    system: &[MultiPoly],
    plan: &EliminationPlan,
    timing: bool,
) -> Result<RabinBasis, EliminateError> {
    let first = system.first().ok_or(EliminateError::EmptySystem)?;
    for f in system {
        first.checked_add(f)?;
    }
    let arity = first.arity();
    if let Some(&var) = plan.variable_order.iter().find(|&&v| v >= arity) {
        return Err(EliminateError::VariableOutOfRange { var, arity });
    }
    let mut generators: Vec<Generator> = system
        .iter()
        .enumerate()
        .map(|(i, f)| Generator {
            poly: f.clone(),
            origin: Origin::Input(i),
        })
        .collect();
    let mut shared_factors = Vec::new();
    let mut log = TermGrowthLog::default();
    let mut active: Vec<usize> = (0..system.len()).collect();

    for &var in &plan.variable_order {
        let mut slots: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|(_, &g)| generators[g].poly.involves(var))
            .map(|(slot, _)| slot)
            .collect();
        if plan.pair_strategy == PairStrategy::MinDegreeFirst {
            slots.sort_by_key(|&s| generators[active[s]].poly.degree_in(var));
        }
        let pairs: Vec<(usize, usize)> = slots
            .windows(2)
            .map(|w| (active[w[0]], active[w[1]]))
            .collect();
        let outcomes = exec::map(&pairs, |&(a, b)| {
            let watch = Stopwatch::start(timing);
            let alpha = &generators[a].poly;
            let beta = &generators[b].poly;
            let r = rabin_step(alpha, beta, var, plan.strategy)?;
            let shape = resultant::sylvester_build(alpha, beta, var)?;
            let used = plan.strategy.resolve(shape.dim(), arity);
            Ok::<_, EliminateError>((r, used, watch.micros()))
        });
        let mut next: Vec<Option<usize>> = active.iter().map(|&g| Some(g)).collect();
        // A lone candidate has no partner and stays.
        if slots.len() > 1 {
            next[slots[slots.len() - 1]] = None;
        }
        for (w, (outcome, &(a, b))) in slots.windows(2).zip(outcomes.into_iter().zip(&pairs)) {
            let (r, used, micros) = outcome?;
            if r.is_zero() {
                shared_factors.push(SharedFactor {
                    parents: (a, b),
                    var,
                });
                next[w[0]] = Some(b);
                continue;
            }
            log.push(Method::Res(used), var, &r, micros);
            generators.push(Generator {
                poly: r,
                origin: Origin::Resultant {
                    parents: (a, b),
                    var,
                },
            });
            next[w[0]] = Some(generators.len() - 1);
        }
        let mut seen = Vec::new();
        active = next
            .into_iter()
            .flatten()
            .filter(|g| {
                let fresh = !seen.contains(g);
                seen.push(*g);
                fresh
            })
            .collect();
    }
    Ok(RabinBasis {
        generators,
        shared_factors,
        final_ids: active,
        log,
    })
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` in `var`.
pub fn prem(a: &MultiPoly, b: &MultiPoly, var: usize) -> Result<MultiPoly, EliminateError> {
    if b.is_zero() {
        return Err(EliminateError::ZeroDivisor);
    }
    let db = b.degree_in(var);
    let da = a.degree_in(var);
    if da < db {
        return Ok(a.clone());
    }
    let coeffs = b.coeffs_in(var);
    let lc_b = &coeffs[db as usize];
    let arity = a.arity();
    let mut r = a.clone();
    let mut steps = 0;
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lc_r = &r.coeffs_in(var)[dr as usize];
        let shift = Monomial::var(arity, var, (dr - db) as u32);
        r = &(lc_b * &r) - &(lc_r * b).mul_term(&shift, 1);
        steps += 1;
    }
    let missing = (da - db + 1) as u32 - steps;
    if missing > 0 {
        r = &r * &lc_b.pow(missing);
    }
    Ok(r)
}

/// Fraction-free Euclid in `var`: returns the last nonzero pseudo-remainder
/// and logs the term count of each remainder under the `eea` tag.
pub fn eea_parametric_gcd(
    alpha: &MultiPoly,
    beta: &MultiPoly,
    var: usize,
    timing: bool,
) -> Result<(MultiPoly, TermGrowthLog), EliminateError> {
    alpha.checked_add(beta)?;
    if beta.is_zero() {
        return Err(EliminateError::ZeroDivisor);
    }
    if var >= alpha.arity() {
        return Err(EliminateError::VariableOutOfRange {
            var,
            arity: alpha.arity(),
        });
    }
    let mut log = TermGrowthLog::default();
    let (mut a, mut b) = if alpha.degree_in(var) >= beta.degree_in(var) {
        (alpha.clone(), beta.clone())
    } else {
        (beta.clone(), alpha.clone())
    };
    loop {
        let watch = Stopwatch::start(timing);
        let r = prem(&a, &b, var)?;
        if r.is_zero() {
            return Ok((b, log));
        }
        log.push(Method::Eea, var, &r, watch.micros());
        a = std::mem::replace(&mut b, r);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthConfig {
    /// Degree of both polynomials in the eliminated variable.
    pub d: u32,
    /// Terms per coefficient.
    pub l: usize,
    pub arity: usize,
    pub modulus: PrimeModulus,
    pub seed: u64,
    pub trials: usize,
    pub timing: bool,
}

/// Random pair sharing the shape of the growth benchmark: degree `d` in the
/// last variable, each coefficient with up to `l` terms of degree at most 2
/// in every other variable, and nonzero leading coefficients.
pub fn random_pair(rng: &mut ChaCha8Rng, cfg: &GrowthConfig) -> (MultiPoly, MultiPoly) {
    let var = cfg.arity - 1;
    let mut bounds = vec![2u32; cfg.arity];
    bounds[var] = 0;
    let mut make = || {
        let mut coeffs: Vec<MultiPoly> = (0..=cfg.d)
            .map(|_| MultiPoly::random(rng, cfg.modulus, &bounds, cfg.l))
            .collect();
        while coeffs[cfg.d as usize].is_zero() {
            coeffs[cfg.d as usize] = MultiPoly::random(rng, cfg.modulus, &bounds, cfg.l);
        }
        MultiPoly::from_coeffs_in(&coeffs, var, cfg.arity, cfg.modulus)
    };
    let a = make();
    let b = make();
    (a, b)
}

/// Per trial: the EEA remainder chain, then the propagated resultant and
/// (bivariate only) the interpolated resultant. Step numbers restart every
/// trial.
pub fn bench_growth(cfg: &GrowthConfig) -> Result<TermGrowthLog, EliminateError> {
    if !(1..=6).contains(&cfg.d) {
        return Err(EliminateError::ConfigOutOfRange(format!(
            "d = {} not in 1..=6",
            cfg.d
        )));
    }
    if !(2..=3).contains(&cfg.arity) {
        return Err(EliminateError::ConfigOutOfRange(format!(
            "n = {} not in 2..=3",
            cfg.arity
        )));
    }
    if cfg.l == 0 || cfg.trials == 0 {
        return Err(EliminateError::ConfigOutOfRange(
            "L and trials must be positive".into(),
        ));
    }
    let var = cfg.arity - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut log = TermGrowthLog::default();
    for _ in 0..cfg.trials {
        let (a, b) = random_pair(&mut rng, cfg);
        let (_, eea_log) = eea_parametric_gcd(&a, &b, var, cfg.timing)?;
        log.append(eea_log);

        let shape = resultant::sylvester_build(&a, &b, var)?;
        let dim = shape.dim() as u128;
        let ceiling = (dim * shape.l_max() as u128).saturating_pow(dim as u32);
        let mut methods = vec![Strategy::Propagate];
        if cfg.arity == 2 {
            methods.push(Strategy::Interp);
        }
        for s in methods {
            let watch = Stopwatch::start(cfg.timing);
            let r = resultant::res(&a, &b, var, s)?;
            let mut one = TermGrowthLog::default();
            one.push(Method::Res(s), var, &r, watch.micros());
            one.rows[0].ceiling = Some(ceiling);
            log.append(one);
        }
    }
    Ok(log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn poly(s: &str, n: usize, p: u64) -> MultiPoly {
        MultiPoly::parse(s, n, m(p)).unwrap()
    }

    #[test]
    fn step_examples() {
        let r = rabin_step(
            &poly("x2 - x0", 3, 5),
            &poly("x2 - x1", 3, 5),
            2,
            Strategy::Auto,
        )
        .unwrap();
        assert_eq!(r, poly("x0 - x1", 3, 5));
        let a = poly("x2^2 + x0*x2 + 1", 3, 5);
        assert!(rabin_step(&a, &a, 2, Strategy::Auto).unwrap().is_zero());
        let r = rabin_step(
            &poly("x0 - x2", 3, 5),
            &poly("x2 + x0 - 2", 3, 5),
            2,
            Strategy::Auto,
        )
        .unwrap();
        assert_eq!(r, poly("2 - 2*x0", 3, 5));
    }

    fn three_system() -> Vec<MultiPoly> {
        ["x2 - x0", "x2 - x1", "x0 + x1 - 2"]
            .iter()
            .map(|s| poly(s, 3, 5))
            .collect()
    }

    #[test]
    fn basis_example() {
        let plan = EliminationPlan::new(vec![2, 1], PairStrategy::InputOrder, 3).unwrap();
        let basis = rabin_basis(&three_system(), &plan, false).unwrap();
        let finals: Vec<String> = basis.final_generators().map(|g| g.render()).collect();
        assert_eq!(finals, vec!["3*x0 + 2"]);
        assert_eq!(basis.generators.len(), 5);
        assert_eq!(
            basis.generators[4].origin,
            Origin::Resultant {
                parents: (3, 2),
                var: 1
            }
        );
        assert!(basis.shared_factors.is_empty());
        assert_eq!(basis.log.rows.len(), 2);
    }

    #[test]
    fn basis_degenerate_inputs() {
        let one = vec![poly("x1^2 + x0", 2, 7)];
        let b = rabin_basis(&one, &EliminationPlan::default_for(2), false).unwrap();
        assert_eq!(b.generators.len(), 1);
        assert_eq!(b.final_ids, vec![0]);

        let twice = vec![poly("x1^2 + x0", 2, 7), poly("x1^2 + x0", 2, 7)];
        let b = rabin_basis(&twice, &EliminationPlan::default_for(2), false).unwrap();
        assert_eq!(
            b.shared_factors,
            vec![SharedFactor {
                parents: (0, 1),
                var: 1
            }]
        );
        assert_eq!(b.generators.len(), 2);
        assert_eq!(b.final_ids, vec![1]);

        assert_eq!(
            rabin_basis(&[], &EliminationPlan::default_for(2), false).unwrap_err(),
            EliminateError::EmptySystem
        );
    }

    #[test]
    fn plan_validation() {
        assert_eq!(
            EliminationPlan::new(vec![1, 1], PairStrategy::InputOrder, 3),
            Err(EliminateError::DuplicateVariable(1))
        );
        assert!(EliminationPlan::new(vec![3], PairStrategy::InputOrder, 3).is_err());
        assert_eq!(EliminationPlan::default_for(4).variable_order(), &[3, 2, 1]);
    }

    #[test]
    fn provenance_and_soundness() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &p in &[3u64, 5, 7] {
            let pm = m(p);
            for trial in 0..12 {
                // force a known common zero so soundness is not vacuous
                let point: Vec<u64> = (0..3).map(|_| rng.gen_range(0..p)).collect();
                let system: Vec<MultiPoly> = (0..3)
                    .map(|_| {
                        let f = MultiPoly::random(&mut rng, pm, &[2, 2, 2], 3);
                        let v = f.eval(&point);
                        &f - &MultiPoly::constant(3, pm, v)
                    })
                    .filter(|f| !f.is_zero())
                    .collect();
                if system.is_empty() {
                    continue;
                }
                let pair = if trial % 2 == 0 {
                    PairStrategy::InputOrder
                } else {
                    PairStrategy::MinDegreeFirst
                };
                let plan = EliminationPlan::new(vec![2, 1], pair, 3).unwrap();
                let Ok(basis) = rabin_basis(&system, &plan, false) else {
                    continue;
                };
                for g in &basis.generators {
                    if let Origin::Resultant {
                        parents: (a, b),
                        var,
                    } = g.origin
                    {
                        let again = rabin_step(
                            &basis.generators[a].poly,
                            &basis.generators[b].poly,
                            var,
                            Strategy::Propagate,
                        )
                        .unwrap();
                        assert_eq!(again, g.poly);
                    }
                }
                let zeros = oracle::brute_system_zeros(&system, 3, pm).unwrap();
                assert!(zeros.contains(&point));
                for z in &zeros {
                    for g in &basis.generators {
                        assert_eq!(g.poly.eval(z), 0, "p={p} {g:?} at {z:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn eea_examples() {
        let p = 7;
        let a = poly("(x1 - x0)*(x1 + 1)", 2, p);
        let b = poly("(x1 - x0)*(x1 + 2)", 2, p);
        let (g, log) = eea_parametric_gcd(&a, &b, 1, false).unwrap();
        assert_eq!(g.degree_in(1), 1);
        let target = poly("x1 - x0", 2, p);
        // g is a multiple of x1 - x0 by something free of x1
        let q = g.div_exact(&target).expect("multiple of x1 - x0");
        assert_eq!(q.degree_in(1), 0);
        assert!(!log.rows.is_empty());

        let c = poly("x1^2 + x0", 2, p);
        let d = poly("x1 + x0^2 + 1", 2, p);
        let (g, _) = eea_parametric_gcd(&c, &d, 1, false).unwrap();
        assert_eq!(g.degree_in(1), 0);
        assert!(!resultant::res(&c, &d, 1, Strategy::Auto).unwrap().is_zero());

        let e = &d * &poly("x1 + 3", 2, p);
        let (g, log) = eea_parametric_gcd(&e, &d, 1, false).unwrap();
        assert_eq!(g, d);
        assert!(log.rows.is_empty());

        assert_eq!(
            eea_parametric_gcd(&c, &MultiPoly::zero(2, m(p)), 1, false).unwrap_err(),
            EliminateError::ZeroDivisor
        );
    }

    #[test]
    fn prem_identity() {
        // lc(b)^(da-db+1) a = q b + r, deg r < deg b; checked by evaluation
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pm = m(31);
        for _ in 0..40 {
            let a = MultiPoly::random(&mut rng, pm, &[2, 4], 5);
            let b = MultiPoly::random(&mut rng, pm, &[2, 2], 3);
            if b.degree_in(1) < 0 || a.degree_in(1) < b.degree_in(1) {
                continue;
            }
            let r = prem(&a, &b, 1).unwrap();
            assert!(r.degree_in(1) < b.degree_in(1));
            let lc = &b.coeffs_in(1)[b.degree_in(1) as usize];
            let e = (a.degree_in(1) - b.degree_in(1) + 1) as u32;
            let lhs = &(&lc.pow(e) * &a) - &r;
            // lhs must vanish wherever b does, for each fixed x0 with b(x0, .) of full degree
            for x0 in 0..31 {
                let bind = [(0usize, pm.elem(x0))].into_iter().collect();
                let bu = b.eval_partial(&bind).unwrap().to_univariate(1).unwrap();
                if bu.degree() != Some(b.degree_in(1) as usize) {
                    continue;
                }
                let lu = lhs.eval_partial(&bind).unwrap().to_univariate(1).unwrap();
                assert!(lu.rem(&bu).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn eea_vs_resultant_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pm = m(7);
        let mut zero_seen = 0;
        for i in 0..120 {
            let mut a = MultiPoly::random(&mut rng, pm, &[2, 2], 3);
            let mut b = MultiPoly::random(&mut rng, pm, &[2, 2], 3);
            if i % 3 == 0 {
                let common = MultiPoly::random(&mut rng, pm, &[1, 1], 2);
                a = &a * &common;
                b = &b * &common;
            }
            if a.degree_in(1) < 1 || b.degree_in(1) < 1 {
                continue;
            }
            let r = resultant::res(&a, &b, 1, Strategy::Propagate).unwrap();
            let (g, _) = eea_parametric_gcd(&a, &b, 1, false).unwrap();
            assert_eq!(g.degree_in(1) > 0, r.is_zero(), "{a:?} {b:?}");
            zero_seen += r.is_zero() as usize;
        }
        assert!(zero_seen > 10);
    }

    #[test]
    fn growth_bench_shape() {
        let cfg = GrowthConfig {
            d: 2,
            l: 2,
            arity: 2,
            modulus: m(31),
            seed: 9,
            trials: 5,
            timing: false,
        };
        let log = bench_growth(&cfg).unwrap();
        assert_eq!(log, bench_growth(&cfg).unwrap());
        for row in &log.rows {
            if let Some(c) = row.ceiling {
                assert!(row.terms as u128 <= c);
            }
        }
        assert_eq!(
            log.rows
                .iter()
                .filter(|r| r.method == Method::Res(Strategy::Interp))
                .count(),
            5
        );
        let csv = log.to_csv();
        assert!(csv.starts_with("step,method,var,terms,maxdeg,micros\n"));
        assert!(csv.contains(",res-propagate,x1,"));

        let single = bench_growth(&GrowthConfig {
            d: 1,
            ..cfg.clone()
        })
        .unwrap();
        let eea_last: Vec<usize> = single
            .rows
            .iter()
            .filter(|r| r.method == Method::Eea)
            .map(|r| r.terms)
            .collect();
        let res_rows: Vec<usize> = single
            .rows
            .iter()
            .filter(|r| r.method == Method::Res(Strategy::Propagate))
            .map(|r| r.terms)
            .collect();
        assert_eq!(eea_last, res_rows);
        assert!(bench_growth(&GrowthConfig { d: 7, ..cfg }).is_err());
    }
}
