use std::collections::BTreeMap;
use std::thread;

use serde::{Deserialize, Serialize};

use super::checkers::{check_theorem_seeded, is_known_theorem, requires_real};
use super::generator::{generate_with, sub_seed, Constraint, Field, GeneratorSpec};
use super::report::{Classification, TheoremReport};
use crate::error::{Error, Result};
use crate::numkern::ToleranceConfig;

/// Sizes `(n, k)` cycled by default campaigns.
pub const DEFAULT_SIZES: &[(usize, usize)] = &[(2, 1), (3, 1), (4, 2), (6, 3), (8, 4)];
/// Sizes for theorems that run the exact P†/R† classifiers.
pub const CLASSIFIER_SIZES: &[(usize, usize)] = &[(2, 1), (3, 1), (4, 2), (5, 2), (6, 3)];
pub const DEFAULT_TRIALS: usize = 1000;
const KEPT_SEEDS: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub theorem_id: String,
    pub seed: u64,
    pub trials: usize,
    pub confirms: usize,
    pub hypothesis_violated: usize,
    pub counterexamples: usize,
    /// Equivalence clauses whose conclusion held without their hypotheses.
    pub converse_violations: usize,
    /// Largest value of each residual over confirming trials.
    pub worst_residuals: BTreeMap<String, f64>,
    /// Sub-seeds of the first few counterexamples, ascending.
    pub counterexample_seeds: Vec<u64>,
}

impl CampaignReport {
    fn new(theorem_id: &str, seed: u64) -> Self {
        Self {
            theorem_id: theorem_id.to_string(),
            seed,
            trials: 0,
            confirms: 0,
            hypothesis_violated: 0,
            counterexamples: 0,
            converse_violations: 0,
            worst_residuals: BTreeMap::new(),
            counterexample_seeds: Vec::new(),
        }
    }

    fn absorb(&mut self, r: &TheoremReport) {
        self.trials += 1;
        self.converse_violations += usize::from(!r.converse_violations().is_empty());
        match r.classification {
            Classification::Confirms => {
                self.confirms += 1;
                for (name, &v) in &r.residuals {
                    let w = self.worst_residuals.entry(name.clone()).or_insert(0.0);
                    *w = w.max(v);
                }
            }
            Classification::HypothesisViolated => self.hypothesis_violated += 1,
            Classification::Counterexample => {
                self.counterexamples += 1;
                if self.counterexample_seeds.len() < KEPT_SEEDS {
                    self.counterexample_seeds.extend(r.instance_seed);
                }
            }
        }
    }
}

/// Runs `trials` instances of `spec`, trial `i` using sub-seed
/// `sub_seed(spec.seed, i)` for generation and auxiliary vectors.
pub fn run_campaign(
    theorem_id: &str,
    spec: &GeneratorSpec,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<CampaignReport> {
    run_trials(theorem_id, spec.seed, trials, cfg, |_| spec.clone())
}

/// Campaign over the default constraint sets of `theorem_id`, cycling sizes
/// and (where the theorem allows) both fields.
pub fn run_default_campaign(
    theorem_id: &str,
    trials: usize,
    seed: u64,
    cfg: &ToleranceConfig,
) -> Result<CampaignReport> {
    let plan = default_plan(theorem_id)?;
    let sizes = if requires_real(theorem_id) {
        CLASSIFIER_SIZES
    } else {
        DEFAULT_SIZES
    };
    let fields: &[Field] = if requires_real(theorem_id) {
        &[Field::Real]
    } else {
        &[Field::Real, Field::Complex]
    };
    run_trials(theorem_id, seed, trials, cfg, |i| {
        let (n, k) = sizes[i % sizes.len()];
        let round = i / sizes.len();
        let variant = &plan[round % plan.len()];
        let field = fields[(round / plan.len()) % fields.len()];
        GeneratorSpec::new(n, k, field, seed)
            .with(&variant.constraints)
            .with_coupling(variant.coupling)
    })
}

/// Constraint set and coupling used by a default campaign.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanVariant {
    pub constraints: Vec<Constraint>,
    pub coupling: f64,
}

fn variant(constraints: &[Constraint]) -> PlanVariant {
    PlanVariant {
        constraints: constraints.to_vec(),
        coupling: 1.0,
    }
}

/// Constraint sets matching the hypotheses of each theorem.
pub fn default_plan(theorem_id: &str) -> Result<Vec<PlanVariant>> {
    use Constraint::*;
    if !is_known_theorem(theorem_id) {
        return Err(Error::UnknownTheorem(theorem_id.to_string()));
    }
    let schur_a = [APosdef, FPosdef, RangeCInF, RangeBtInFt];
    let schur_d = [DPosdef, GPosdef, RangeBInG, RangeCtInGt];
    let weak = |cs: &[Constraint]| PlanVariant {
        constraints: cs.to_vec(),
        coupling: 0.3,
    };
    Ok(match theorem_id {
        "T31_EQUIV" | "L34_FACTORS" => vec![variant(&[])],
        "T32_INVOLUTION" => vec![
            variant(&[NullAInC, NullAstarInBstar]),
            variant(&[NullDInB, NullDstarInCstar]),
            variant(&[NullAInC, NullAstarInBstar, NullDInB, NullDstarInCstar]),
        ],
        "T33_MP_VIA_GPPT" | "T_BLOCK_PINV_A" | "T_BLOCK_PINV_D" => vec![
            variant(&[NullAInC, NullAstarInBstar, RangeCInF, RangeBtInFt]),
            variant(&[NullDInB, NullDstarInCstar, RangeBInG, RangeCtInGt]),
        ],
        "L34_FACTORS_CORRECTED" => vec![variant(&[]), variant(&[NullDstarInCstar])],
        "T_RANK_A" | "COR_ASKEW_A" => vec![variant(&[AEp, BplusCstarInRangeA]), variant(&[MAlmostSkew])],
        "T_RANK_D" | "COR_ASKEW_D" => vec![variant(&[DEp, CplusBstarInRangeD]), variant(&[MAlmostSkew])],
        "T_EP_EQUIV" => {
            let base = [NullAInC, NullAstarInBstar, NullDInB, NullDstarInCstar];
            vec![
                variant(&base),
                variant(&[&base[..], &[AEp, DEp]].concat()),
                variant(&[&base[..], &[AEp]].concat()),
            ]
        }
        "T_EXCHANGE" => vec![variant(&[RangeBInA, RangeCInD]), variant(&[])],
        "T_GRAM" => vec![variant(&[GramColsBInA])],
        "T15_P_INHERIT" | "T15_CONVERSE" | "T99_R_INHERIT" | "T99_CONVERSE" => {
            vec![weak(&schur_a), weak(&[AEp, RangeCInF, RangeBtInFt])]
        }
        "T_P_INHERIT_D" | "T_P_INHERIT_D_CONVERSE" | "T_END_R_INHERIT_D" | "T_END_R_INHERIT_D_CONVERSE" => {
            vec![weak(&schur_d), weak(&[DEp, RangeBInG, RangeCtInGt])]
        }
        "REFUTED_DAGGER" => vec![variant(&[NullDstarInCstar, NullAstarInBstar])],
        _ => unreachable!("known theorem without a plan"),
    })
}

fn run_trials(
    theorem_id: &str,
    seed: u64,
    trials: usize,
    cfg: &ToleranceConfig,
    spec_for: impl Fn(usize) -> GeneratorSpec + Sync,
) -> Result<CampaignReport> {
    if trials == 0 {
        return Err(Error::InvalidSpec("a campaign needs at least one trial".into()));
    }
    if !is_known_theorem(theorem_id) {
        return Err(Error::UnknownTheorem(theorem_id.to_string()));
    }
    let trial = |i: usize| -> Result<TheoremReport> {
        let s = sub_seed(seed, i as u64);
        let spec = spec_for(i).with_seed(s);
        let pm = generate_with(&spec, cfg)?;
        Ok(check_theorem_seeded(theorem_id, &pm, cfg, s)?.with_seed(s))
    };
    let workers = thread::available_parallelism().map_or(1, |p| p.get()).min(trials);
    let chunks: Vec<Result<Vec<TheoremReport>>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let trial = &trial;
                scope.spawn(move || (w..trials).step_by(workers).map(trial).collect())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("campaign worker panicked"))
            .collect()
    });
    let mut by_index: Vec<Option<TheoremReport>> = vec![None; trials];
    for (w, chunk) in chunks.into_iter().enumerate() {
        for (j, r) in chunk?.into_iter().enumerate() {
            by_index[w + j * workers] = Some(r);
        }
    }
    let mut report = CampaignReport::new(theorem_id, seed);
    for r in by_index.into_iter().flatten() {
        report.absorb(&r);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::checkers::THEOREM_IDS;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn deterministic_given_seed() {
        let spec = GeneratorSpec::new(4, 2, Field::Complex, 99);
        let a = run_campaign("T31_EQUIV", &spec, 40, &cfg()).unwrap();
        let b = run_campaign("T31_EQUIV", &spec, 40, &cfg()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 40);
        assert_eq!(a.confirms + a.hypothesis_violated + a.counterexamples, 40);
    }

    #[test]
    fn rank_theorem_unconstrained_has_hypothesis_violations() {
        let spec = GeneratorSpec::new(4, 2, Field::Real, 1);
        let r = run_campaign("T_RANK_A", &spec, 50, &cfg()).unwrap();
        assert!(r.hypothesis_violated > 0);
        assert_eq!(r.counterexamples, 0);
    }

    #[test]
    fn rank_theorem_constrained_confirms() {
        let spec = GeneratorSpec::new(6, 3, Field::Complex, 2).with(&[Constraint::AEp, Constraint::BplusCstarInRangeA]);
        let r = run_campaign("T_RANK_A", &spec, 60, &cfg()).unwrap();
        assert_eq!(r.confirms, 60);
    }

    #[test]
    fn every_theorem_has_a_plan_and_runs() {
        for (id, _) in THEOREM_IDS {
            let r = run_default_campaign(id, 5, 3, &cfg()).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(r.trials, 5);
        }
    }

    #[test]
    fn rejects_empty_and_unknown() {
        let spec = GeneratorSpec::new(2, 1, Field::Real, 0);
        assert!(run_campaign("T31_EQUIV", &spec, 0, &cfg()).is_err());
        assert!(run_campaign("NOPE", &spec, 1, &cfg()).is_err());
    }
}
