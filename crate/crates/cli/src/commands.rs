use std::path::Path;

use gppt::gppt::{gppt, schur_complements, PartitionedMatrix, Side};
use gppt::lcpcone::{
    is_p_dagger_with_cap, is_r_dagger_with_cap, solve_lcp_enumerate_with_cap, ClassVerdict, ClassifierMode,
    LcpInstance, Method,
};
use gppt::numkern::{
    is_almost_skew_hermitian, is_range_hermitian, null_space_included, penrose_residuals, pinv, range_included,
};
use gppt::verify::{
    lemma_counterexample, paper_fixtures, replay, run_default_campaign, CampaignReport, FactOutcome, THEOREM_IDS,
};
use gppt::Matrix;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, EXIT_COUNTEREXAMPLE, EXIT_OK};
use crate::io::{read_matrix, Format, MatrixFile, MatrixJson};

/// Pseudo-theorem id that replays the worked-example fixtures.
pub const FIXTURES_ID: &str = "FIXTURES";
/// Ids left out of `verify --all`: statements known to be false on purpose.
pub const EXCLUDED_FROM_ALL: &[&str] = &["REFUTED_DAGGER"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Wrt {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "D", alias = "d")]
    D,
}

impl From<Wrt> for Side {
    fn from(w: Wrt) -> Side {
        match w {
            Wrt::A => Side::A,
            Wrt::D => Side::D,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Predicate {
    Ep,
    AlmostSkew,
    PDagger,
    RDagger,
    /// `N(input) ⊆ N(other)`
    NullIncluded,
    /// `R(input) ⊆ R(other)`
    RangeIncluded,
}

/// JSON value plus the process exit code it implies.
pub struct Outcome {
    pub json: serde_json::Value,
    pub exit: i32,
}

impl Outcome {
    fn ok(value: impl Serialize) -> Result<Self, CliError> {
        Self::with_exit(value, EXIT_OK)
    }

    fn with_exit(value: impl Serialize, exit: i32) -> Result<Self, CliError> {
        let json = serde_json::to_value(value).map_err(|e| CliError::Output(e.to_string()))?;
        Ok(Self { json, exit })
    }
}

fn partitioned(file: MatrixFile, split: Option<usize>) -> Result<PartitionedMatrix, CliError> {
    let k = split
        .or(file.split)
        .ok_or_else(|| CliError::Usage("a split index is required (--split or a JSON `split` field)".into()))?;
    Ok(PartitionedMatrix::new(file.matrix, k)?)
}

#[derive(Serialize)]
struct PinvOutput {
    matrix: MatrixJson,
    penrose_residuals: [f64; 4],
}

pub fn cmd_pinv(input: &Path, format: Option<Format>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = read_matrix(input, format)?.matrix;
    let g = pinv(&m, &cfg.tolerances)?;
    let penrose_residuals = penrose_residuals(&m, &g)?;
    Outcome::ok(PinvOutput {
        matrix: MatrixJson::from_matrix(&g, None),
        penrose_residuals,
    })
}

pub fn cmd_gppt(
    input: &Path,
    format: Option<Format>,
    wrt: Wrt,
    split: Option<usize>,
    cfg: &RunConfig,
) -> Result<Outcome, CliError> {
    let pm = partitioned(read_matrix(input, format)?, split)?;
    let p = gppt(&pm, wrt.into(), &cfg.tolerances)?;
    Outcome::ok(MatrixJson::from_matrix(p.matrix(), Some(p.split())))
}

#[derive(Serialize)]
struct SchurOutput {
    f: MatrixJson,
    g: MatrixJson,
}

pub fn cmd_schur(
    input: &Path,
    format: Option<Format>,
    split: Option<usize>,
    cfg: &RunConfig,
) -> Result<Outcome, CliError> {
    let pm = partitioned(read_matrix(input, format)?, split)?;
    let s = schur_complements(&pm, &cfg.tolerances)?;
    Outcome::ok(SchurOutput {
        f: MatrixJson::from_matrix(&s.f, None),
        g: MatrixJson::from_matrix(&s.g, None),
    })
}

#[derive(Serialize)]
struct CheckOutput {
    predicate: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<f64>>,
    /// `x_i (Mx)_i` of the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    products: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<Method>,
}

impl CheckOutput {
    fn verdict(name: &str, holds: bool, residual: f64) -> Self {
        Self {
            predicate: name.to_string(),
            holds,
            residual: Some(residual),
            witness: None,
            products: None,
            method: None,
        }
    }

    fn class(name: &str, v: ClassVerdict) -> Self {
        let products = v.witness.is_some().then_some(v.residuals);
        Self {
            predicate: name.to_string(),
            holds: v.is_member,
            residual: None,
            witness: v.witness,
            products,
            method: Some(v.method),
        }
    }
}

pub struct CheckArgs<'a> {
    pub input: &'a Path,
    pub format: Option<Format>,
    pub predicate: Predicate,
    pub other: Option<&'a Path>,
    pub randomized: bool,
    pub samples: usize,
}

pub fn cmd_check(args: CheckArgs<'_>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let m = read_matrix(args.input, args.format)?.matrix;
    let tol = &cfg.tolerances;
    let second = || -> Result<Matrix, CliError> {
        let path = args
            .other
            .ok_or_else(|| CliError::Usage("this predicate needs a second operand (--other)".into()))?;
        Ok(read_matrix(path, args.format)?.matrix)
    };
    let out = match args.predicate {
        Predicate::Ep => {
            let v = is_range_hermitian(&m, tol)?;
            CheckOutput::verdict("ep", v.holds, v.residual)
        }
        Predicate::AlmostSkew => {
            let v = is_almost_skew_hermitian(&m, tol)?;
            CheckOutput::verdict("almost-skew", v.holds, v.residual)
        }
        Predicate::NullIncluded => {
            let v = null_space_included(&m, &second()?, tol)?;
            CheckOutput::verdict("null-included", v.holds, v.residual)
        }
        Predicate::RangeIncluded => {
            let v = range_included(&m, &second()?, tol)?;
            CheckOutput::verdict("range-included", v.holds, v.residual)
        }
        Predicate::PDagger => {
            let mode = if args.randomized {
                ClassifierMode::Randomized {
                    samples: args.samples,
                    seed: cfg.seed,
                }
            } else {
                ClassifierMode::Exact
            };
            let cap = if args.randomized { usize::MAX } else { cfg.size_cap };
            CheckOutput::class("p-dagger", is_p_dagger_with_cap(&m, tol, mode, cap)?)
        }
        Predicate::RDagger => CheckOutput::class("r-dagger", is_r_dagger_with_cap(&m, tol, cfg.size_cap)?),
    };
    Outcome::ok(out)
}

#[derive(Serialize)]
struct FixtureOutput {
    name: &'static str,
    passed: bool,
    facts: Vec<FactOutcome>,
}

#[derive(Serialize)]
struct FixturesOutput {
    all_passed: bool,
    fixtures: Vec<FixtureOutput>,
}

fn fixtures_report(cfg: &RunConfig) -> Result<FixturesOutput, CliError> {
    let mut all = paper_fixtures();
    all.push(lemma_counterexample());
    let fixtures = all
        .iter()
        .map(|f| {
            let facts = replay(f, &cfg.tolerances)?;
            Ok(FixtureOutput {
                name: f.name,
                passed: facts.iter().all(|o| o.passed),
                facts,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(FixturesOutput {
        all_passed: fixtures.iter().all(|f| f.passed),
        fixtures,
    })
}

#[derive(Serialize)]
struct VerifyAllOutput {
    seed: u64,
    trials: usize,
    total_counterexamples: usize,
    fixtures_passed: bool,
    campaigns: Vec<CampaignReport>,
}

pub fn cmd_verify(theorem: Option<&str>, all: bool, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let tol = &cfg.tolerances;
    match (theorem, all) {
        (Some(FIXTURES_ID), false) => {
            let r = fixtures_report(cfg)?;
            let exit = if r.all_passed { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
            Outcome::with_exit(r, exit)
        }
        (Some(id), false) => {
            let r = run_default_campaign(id, cfg.trials, cfg.seed, tol)?;
            let exit = if r.counterexamples == 0 {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            Outcome::with_exit(r, exit)
        }
        (None, true) => {
            let campaigns = THEOREM_IDS
                .iter()
                .map(|(id, _)| *id)
                .filter(|id| !EXCLUDED_FROM_ALL.contains(id))
                .map(|id| run_default_campaign(id, cfg.trials, cfg.seed, tol))
                .collect::<Result<Vec<_>, _>>()?;
            let fixtures_passed = fixtures_report(cfg)?.all_passed;
            let total_counterexamples = campaigns.iter().map(|c| c.counterexamples).sum();
            let exit = if total_counterexamples == 0 && fixtures_passed {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            Outcome::with_exit(
                VerifyAllOutput {
                    seed: cfg.seed,
                    trials: cfg.trials,
                    total_counterexamples,
                    fixtures_passed,
                    campaigns,
                },
                exit,
            )
        }
        _ => Err(CliError::Usage("give exactly one of --theorem ID or --all".into())),
    }
}

#[derive(Serialize)]
struct LcpOutput {
    solutions: Vec<Vec<f64>>,
    violations: Vec<f64>,
}

pub fn cmd_lcp(
    input: &Path,
    format: Option<Format>,
    q: &[f64],
    row_space: bool,
    cfg: &RunConfig,
) -> Result<Outcome, CliError> {
    let m = read_matrix(input, format)?.matrix;
    let inst = LcpInstance::new(m, q.to_vec())?;
    let solutions = solve_lcp_enumerate_with_cap(&inst, row_space, &cfg.tolerances, cfg.size_cap)?;
    let violations = solutions.iter().map(|x| inst.violation(x)).collect();
    Outcome::ok(LcpOutput { solutions, violations })
}
