//! Verification campaigns: evaluate every bound against coefficients of
//! class members and keep machine-readable evidence.
//!
//! Each trial draws its member from its own RNG stream keyed by
//! `(seed, trial_id)`, so output does not depend on thread count.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    bound_inverse, bound_mero_inverse, bound_neg_power, neg_power_coeffs, BoundValue, CaseTag,
};
use crate::class::{
    extremal, extremal_root, from_schwarz, sample, JanowskiParams, Provenance, StarlikeFunction,
};
use crate::error::{Error, Result};
use crate::inversion::mero_inverse;
use crate::scalar::{parse_rational, rat, Backend, Real, Scalar};
use crate::schwarz::SchwarzSpec;

/// Where the members of a campaign come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Corpus {
    /// Random Schwarz functions, one per trial.
    Sampled,
    /// The extremal function `k_{A,B}` only.
    Extremal,
    /// Root transforms `k^{(n)}` with `n = 1 + trial_id mod index_max`.
    ExtremalRoots,
    /// User-supplied Schwarz functions, cycled by trial id.
    Specs(Vec<SchwarzSpec>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub trials: usize,
    /// Truncation order of every member.
    pub order: usize,
    /// Exponents for the negative-power campaign.
    pub lambda_grid: Vec<BigRational>,
    /// Largest coefficient index checked.
    pub index_max: usize,
    pub seed: u64,
    pub backend: Backend,
    /// Trial `i` uses `params[i mod len]`.
    pub params: Vec<JanowskiParams<BigRational>>,
    pub corpus: Corpus,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            trials: 200,
            order: 12,
            lambda_grid: vec![
                rat(1, 2),
                rat(1, 1),
                rat(3, 2),
                rat(2, 1),
                rat(7, 3),
                rat(5, 1),
            ],
            index_max: 10,
            seed: 2024,
            backend: Backend::Exact,
            params: default_parameter_grid(),
            corpus: Corpus::Sampled,
            threads: None,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.order < self.index_max + 2 {
            return Err(Error::InvalidConfig(format!(
                "order {} must be at least index_max + 2 = {}",
                self.order,
                self.index_max + 2
            )));
        }
        if self.index_max == 0 {
            return Err(Error::InvalidConfig("index_max must be positive".into()));
        }
        if self.trials > 0 && self.params.is_empty() {
            return Err(Error::InvalidConfig("parameter grid is empty".into()));
        }
        if let Some(l) = self.lambda_grid.iter().find(|l| !l.is_positive()) {
            return Err(Error::InvalidConfig(format!("lambda {l} is not positive")));
        }
        if let Corpus::Specs(specs) = &self.corpus {
            if specs.is_empty() {
                return Err(Error::InvalidConfig("spec corpus is empty".into()));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig("thread count must be positive".into()));
        }
        Ok(())
    }

    /// Seed of the RNG stream for one trial.
    pub fn trial_seed(&self, trial_id: usize) -> u64 {
        // splitmix64 finalizer over the pair
        let mut z = self
            .seed
            .wrapping_add((trial_id as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Twelve rational `(A, B)` pairs spread over the admissible triangle,
/// including the boundary cases `A = 1`, `B = -1` and `B = 0`.
pub fn default_parameter_grid() -> Vec<JanowskiParams<BigRational>> {
    [
        ((1, 1), (-1, 1)),
        ((1, 1), (0, 1)),
        ((1, 2), (-1, 2)),
        ((0, 1), (-1, 1)),
        ((1, 1), (-1, 2)),
        ((3, 10), (-2, 5)),
        ((1, 2), (0, 1)),
        ((1, 1), (1, 2)),
        ((-1, 2), (-1, 1)),
        ((3, 4), (1, 4)),
        ((1, 3), (-1, 3)),
        ((2, 3), (-1, 2)),
    ]
    .into_iter()
    .map(|((an, ad), (bn, bd))| {
        JanowskiParams::new(rat(an, ad), rat(bn, bd)).expect("grid point is admissible")
    })
    .collect()
}

/// One coefficient checked against one bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub trial_id: usize,
    pub seed: u64,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub member: Provenance,
    pub lambda_or_index: String,
    pub coefficient_index: usize,
    pub coefficient_abs: String,
    pub bound: String,
    pub margin: String,
    pub case_fired: CaseTag,
    pub pass: bool,
}

fn member<S: Scalar>(
    cfg: &CampaignConfig,
    trial_id: usize,
    p: &JanowskiParams<S::Real>,
) -> Result<StarlikeFunction<S>> {
    match &cfg.corpus {
        Corpus::Sampled => sample(p, cfg.trial_seed(trial_id), cfg.order),
        Corpus::Extremal => extremal(p, cfg.order),
        Corpus::ExtremalRoots => extremal_root(p, 1 + trial_id % cfg.index_max, cfg.order),
        Corpus::Specs(specs) => from_schwarz(&specs[trial_id % specs.len()], p, cfg.order),
    }
}

fn convert<R: Real>(p: &JanowskiParams<BigRational>) -> JanowskiParams<R> {
    p.to_real()
}

struct Trial<'a, S: Scalar> {
    cfg: &'a CampaignConfig,
    id: usize,
    f: StarlikeFunction<S>,
}

impl<S: Scalar> Trial<'_, S> {
    fn record(
        &self,
        lambda_or_index: String,
        index: usize,
        coeff: &S,
        bound: BoundValue<S::Real>,
    ) -> VerificationRecord {
        let abs = coeff.modulus();
        let margin = bound.value.clone() - abs.clone();
        let pass = margin >= -<S::Real as Real>::tolerance();
        VerificationRecord {
            trial_id: self.id,
            seed: self.cfg.trial_seed(self.id),
            a: self.f.params.a().encode(),
            b: self.f.params.b().encode(),
            member: self.f.provenance.clone(),
            lambda_or_index,
            coefficient_index: index,
            coefficient_abs: abs.encode(),
            bound: bound.value.encode(),
            margin: margin.encode(),
            case_fired: bound.case,
            pass,
        }
    }
}

#[derive(Clone, Copy)]
enum Family {
    NegPower,
    Inverse,
    Mero,
}

fn run_trial<S: Scalar>(
    cfg: &CampaignConfig,
    id: usize,
    family: Family,
) -> Result<Vec<VerificationRecord>> {
    let p = convert::<S::Real>(&cfg.params[id % cfg.params.len()]);
    let f = member::<S>(cfg, id, &p)?;
    let trial = Trial { cfg, id, f };
    let n = cfg.index_max;
    let mut out = Vec::new();
    match family {
        Family::NegPower => {
            for lambda in &cfg.lambda_grid {
                let lambda = S::Real::from_rational(lambda);
                let coeffs = neg_power_coeffs(&trial.f, &lambda, n)?;
                for l in 1..=n {
                    let bound = bound_neg_power(&p, &lambda, l)?;
                    out.push(trial.record(lambda.encode(), l, coeffs.coeff(l), bound));
                }
            }
        }
        Family::Inverse => {
            let big_f = trial.f.series.revert()?;
            for k in 2..=n {
                out.push(trial.record(k.to_string(), k, big_f.coeff(k), bound_inverse(&p, k)?));
            }
        }
        Family::Mero => {
            let g = mero_inverse(&trial.f, n)?;
            for m in 1..=n {
                out.push(trial.record(m.to_string(), m, g.coeff(m), bound_mero_inverse(&p, m)?));
            }
        }
    }
    Ok(out)
}

fn run(cfg: &CampaignConfig, family: Family) -> Result<Vec<VerificationRecord>> {
    cfg.validate()?;
    let work = || -> Result<Vec<VerificationRecord>> {
        let per_trial: Vec<Vec<VerificationRecord>> = (0..cfg.trials)
            .into_par_iter()
            .map(|id| match cfg.backend {
                Backend::Exact => run_trial::<BigRational>(cfg, id, family),
                Backend::Float => run_trial::<Complex64>(cfg, id, family),
            })
            .collect::<Result<_>>()?;
        Ok(per_trial.into_iter().flatten().collect())
    };
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// `|a_l(-lambda, f)|` against its bound for every trial, `lambda` and `l <= index_max`.
pub fn run_negpow_campaign(cfg: &CampaignConfig) -> Result<Vec<VerificationRecord>> {
    run(cfg, Family::NegPower)
}

/// `|A_n|` of the inverse against its bound, `2 <= n <= index_max`.
pub fn run_inverse_campaign(cfg: &CampaignConfig) -> Result<Vec<VerificationRecord>> {
    run(cfg, Family::Inverse)
}

/// `|B_m|` of the meromorphic inverse against its bound, `1 <= m <= index_max`.
pub fn run_mero_campaign(cfg: &CampaignConfig) -> Result<Vec<VerificationRecord>> {
    run(cfg, Family::Mero)
}

/// Where the worst margin of a case was attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial_id: usize,
    pub seed: u64,
    pub member: Provenance,
    pub lambda_or_index: String,
    pub coefficient_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub records: usize,
    pub failures: usize,
    pub worst_margin: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub failures: usize,
    pub cases: BTreeMap<CaseTag, CaseSummary>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Margins are rationals or floats; both compare exactly as rationals.
fn margin_value(s: &str) -> BigRational {
    parse_rational(s)
        .ok()
        .or_else(|| s.parse::<f64>().ok().and_then(BigRational::from_float))
        .unwrap_or_else(BigRational::zero)
}

/// Aggregates records by the case that fired.
pub fn report(records: &[VerificationRecord]) -> Summary {
    let mut summary = Summary::default();
    let mut worst: BTreeMap<CaseTag, (BigRational, &VerificationRecord)> = BTreeMap::new();
    let mut counts: BTreeMap<CaseTag, (usize, usize)> = BTreeMap::new();
    for r in records {
        summary.records += 1;
        let c = counts.entry(r.case_fired).or_default();
        c.0 += 1;
        if !r.pass {
            summary.failures += 1;
            c.1 += 1;
        }
        let m = margin_value(&r.margin);
        match worst.get(&r.case_fired) {
            Some((w, _)) if *w <= m => {}
            _ => {
                worst.insert(r.case_fired, (m, r));
            }
        }
    }
    for (case, (_, r)) in worst {
        let (n, fails) = counts[&case];
        summary.cases.insert(
            case,
            CaseSummary {
                records: n,
                failures: fails,
                worst_margin: r.margin.clone(),
                witness: Witness {
                    trial_id: r.trial_id,
                    seed: r.seed,
                    member: r.member.clone(),
                    lambda_or_index: r.lambda_or_index.clone(),
                    coefficient_index: r.coefficient_index,
                },
            },
        );
    }
    summary
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(records: &[VerificationRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(corpus: Corpus, backend: Backend) -> CampaignConfig {
        CampaignConfig {
            trials: 24,
            order: 8,
            index_max: 6,
            backend,
            corpus,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn empty_campaign() {
        let cfg = CampaignConfig {
            trials: 0,
            ..CampaignConfig::default()
        };
        assert!(run_negpow_campaign(&cfg).unwrap().is_empty());
        assert_eq!(report(&[]), Summary::default());
    }

    #[test]
    fn config_is_validated() {
        let cfg = CampaignConfig {
            order: 6,
            index_max: 5,
            ..CampaignConfig::default()
        };
        assert!(matches!(
            run_inverse_campaign(&cfg),
            Err(Error::InvalidConfig(_))
        ));
        let cfg = CampaignConfig {
            lambda_grid: vec![rat(0, 1)],
            ..CampaignConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn extremal_margins_vanish_below_cutoff() {
        let cfg = small(Corpus::Extremal, Backend::Exact);
        let records = run_negpow_campaign(&cfg).unwrap();
        assert_eq!(records.len(), 24 * 6 * 6);
        for r in &records {
            assert!(r.pass);
            let p =
                JanowskiParams::new(parse_rational(&r.a).unwrap(), parse_rational(&r.b).unwrap())
                    .unwrap();
            let lambda = parse_rational(&r.lambda_or_index).unwrap();
            let bound = bound_neg_power(&p, &lambda, r.coefficient_index).unwrap();
            if r.coefficient_index <= bound.cutoff.unwrap() {
                assert_eq!(r.margin, "0", "{r:?}");
            }
        }
    }

    #[test]
    fn koebe_inverse_is_sharp() {
        let cfg = CampaignConfig {
            trials: 1,
            params: vec![JanowskiParams::starlike()],
            ..small(Corpus::Extremal, Backend::Exact)
        };
        for r in run_inverse_campaign(&cfg).unwrap() {
            assert_eq!(r.margin, "0");
        }
        let mero = run_mero_campaign(&cfg).unwrap();
        assert!(mero[..3].iter().all(|r| r.margin == "0"));
    }

    #[test]
    fn sampled_campaigns_pass_in_both_backends() {
        for backend in [Backend::Exact, Backend::Float] {
            let cfg = small(Corpus::Sampled, backend);
            for records in [
                run_negpow_campaign(&cfg).unwrap(),
                run_inverse_campaign(&cfg).unwrap(),
                run_mero_campaign(&cfg).unwrap(),
            ] {
                let s = report(&records);
                assert!(s.passed(), "{backend}: {s:?}");
            }
        }
    }

    #[test]
    fn output_is_independent_of_thread_count() {
        let base = small(Corpus::Sampled, Backend::Float);
        let mut outputs = Vec::new();
        for threads in [Some(1), Some(4)] {
            let cfg = CampaignConfig {
                threads,
                ..base.clone()
            };
            let mut buf = Vec::new();
            write_jsonl(&run_inverse_campaign(&cfg).unwrap(), &mut buf).unwrap();
            outputs.push(buf);
        }
        assert_eq!(outputs[0], outputs[1]);
    }

    #[test]
    fn report_counts_failures_and_keeps_the_worst() {
        let cfg = CampaignConfig {
            trials: 1,
            params: vec![JanowskiParams::starlike()],
            ..small(Corpus::Extremal, Backend::Exact)
        };
        let mut records = run_inverse_campaign(&cfg).unwrap();
        assert_eq!(
            report(&records[..1]).cases[&CaseTag::InverseProduct]
                .witness
                .coefficient_index,
            2
        );
        records[1].margin = "-1/2".into();
        records[1].pass = false;
        records[2].margin = "-1/4".into();
        records[2].pass = false;
        let s = report(&records);
        assert_eq!(s.failures, 2);
        let case = &s.cases[&CaseTag::InverseProduct];
        assert_eq!(case.worst_margin, "-1/2");
        assert_eq!(case.witness.coefficient_index, 3);
    }
}
