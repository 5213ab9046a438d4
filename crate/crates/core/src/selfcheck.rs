//! The law suite: algebraic invariants every engine build must satisfy,
//! exercised over the built-in library plus seeded random generator sets.
//! The CLI `selfcheck` verb prints one line per law; the acceptance tests
//! assert zero violations.
//!
//! Each instance precomputes the artifacts the laws share: the generated
//! clone, the commutant, the double and triple commutants, and the clone
//! regenerated from the commutant's members. Commutant towers stabilize
//! after one step, so these five cover every law below.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clone::{
    clone_equal, clone_subset, generate_clone, is_clone, presentation_from_clone,
    AlgebraPresentation, TruncatedClone,
};
use crate::commutant::{
    algebras_commute, centralizer_layer, commutant_clone, double_commutant_from,
    family_self_commutes, Strategy,
};
use crate::error::Result;
use crate::library;
use crate::ops::{table_len, Carrier, FiniteOp};
use crate::pairs::{pair_status_from_parts, rcom, AlgebraPair};

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub instances: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SelfcheckConfig {
    pub seed: u64,
    pub random_instances: usize,
    pub bound: usize,
    pub op_cap: usize,
    pub include_library: bool,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig {
            seed: 0x00C10F0E,
            random_instances: 50,
            bound: 2,
            op_cap: crate::clone::DEFAULT_OP_CAP,
            include_library: true,
        }
    }
}

struct Instance {
    label: String,
    pres: AlgebraPresentation,
    strategy: Strategy,
    /// Clo(A)
    clo: TruncatedClone,
    /// Com(A)
    com: TruncatedClone,
    /// Com(Com(A))
    dcom: TruncatedClone,
    /// Com(Com(Com(A)))
    tcom: TruncatedClone,
    /// Clo of the commutant's member list, used as a presentation
    com_regen: TruncatedClone,
}

fn build_instance(
    label: String,
    pres: AlgebraPresentation,
    bound: usize,
    op_cap: usize,
) -> Result<Instance> {
    // enumerate is feasible for k <= 3 at desk bounds; larger carriers
    // fall back to the backtracking search
    let strategy = if pres.carrier_size() <= 3 {
        Strategy::Enumerate
    } else {
        Strategy::Backtrack
    };
    let clo = generate_clone(&pres, bound, op_cap)?.clone;
    let com = commutant_clone(&pres, bound, strategy, op_cap)?;
    let dcom = double_commutant_from(&com, strategy, op_cap)?;
    let tcom = double_commutant_from(&dcom, strategy, op_cap)?;
    let com_regen = generate_clone(&presentation_from_clone(&com), bound, op_cap)?.clone;
    Ok(Instance {
        label,
        pres,
        strategy,
        clo,
        com,
        dcom,
        tcom,
        com_regen,
    })
}

fn random_op(rng: &mut ChaCha8Rng, k: usize, arity: usize) -> FiniteOp {
    let len = table_len(k, arity).expect("small table");
    let table: Vec<u8> = (0..len).map(|_| rng.random_range(0..k) as u8).collect();
    FiniteOp::from_table(k, arity, table).expect("random table is valid")
}

fn random_presentation(rng: &mut ChaCha8Rng, bound: usize) -> AlgebraPresentation {
    let k = if rng.random_bool(0.5) { 2 } else { 3 };
    let count = rng.random_range(1..=3);
    let mut gens = BTreeMap::new();
    for i in 0..count {
        // weight toward unary/binary; nullary ops still appear
        let arity = match rng.random_range(0..5) {
            0 => 0,
            1 | 2 => 1.min(bound),
            _ => 2.min(bound),
        };
        gens.insert(format!("f{i}"), random_op(rng, k, arity));
    }
    AlgebraPresentation::new(Carrier::new(k).unwrap(), gens).unwrap()
}

fn gather_instances(config: &SelfcheckConfig) -> Result<Vec<Instance>> {
    let mut instances = Vec::new();
    if config.include_library {
        for name in library::catalog() {
            let pres = library::resolve(&name, config.bound)?;
            if pres.max_generator_arity() > config.bound {
                continue;
            }
            // chains above 4 elements carry commutant layers with tens of
            // thousands of members; their double commutants blow the suite's
            // budget, so the suite stops at carrier 4
            if pres.carrier_size() > 4 {
                continue;
            }
            instances.push(build_instance(name, pres, config.bound, config.op_cap)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for i in 0..config.random_instances {
        let pres = random_presentation(&mut rng, config.bound);
        instances.push(build_instance(
            format!("random#{i}"),
            pres,
            config.bound,
            config.op_cap,
        )?);
    }
    Ok(instances)
}

struct Law {
    name: &'static str,
    instances: usize,
    violations: usize,
    detail: Option<String>,
}

impl Law {
    fn new(name: &'static str) -> Self {
        Law {
            name,
            instances: 0,
            violations: 0,
            detail: None,
        }
    }

    fn record(&mut self, holds: bool, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !holds {
            self.violations += 1;
            if self.detail.is_none() {
                self.detail = Some(detail());
            }
        }
    }

    fn outcome(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.to_string(),
            instances: self.instances,
            violations: self.violations,
            detail: self.detail,
        }
    }
}

/// Run every law; returns one outcome per law, in a fixed order.
pub fn run(config: &SelfcheckConfig) -> Result<Vec<CheckOutcome>> {
    let instances = gather_instances(config)?;
    let bound = config.bound;
    let op_cap = config.op_cap;
    let mut outcomes = Vec::new();

    // commutation of algebras is symmetric
    let mut law = Law::new("commute-symmetry");
    for (i, a) in instances.iter().enumerate() {
        for b in instances.iter().skip(i) {
            if a.pres.carrier_size() != b.pres.carrier_size()
                || a.pres.profile() != b.pres.profile()
            {
                continue;
            }
            let ab = algebras_commute(&a.pres, &b.pres)?.commutes();
            let ba = algebras_commute(&b.pres, &a.pres)?.commutes();
            law.record(ab == ba, || format!("{} vs {}", a.label, b.label));
        }
    }
    outcomes.push(law.outcome());

    // generators land inside the double commutant
    let mut law = Law::new("double-commutant-extensive");
    for inst in &instances {
        let mut ok = true;
        for op in inst.pres.generator_ops() {
            if !inst.dcom.contains(op)? {
                ok = false;
                break;
            }
        }
        law.record(ok, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // fewer generators, larger commutant; carriers above 3 are skipped
    // because dropping a generator can leave a commutant too large to hold
    let mut law = Law::new("commutant-antitone");
    for inst in &instances {
        if inst.pres.generators().len() < 2 || inst.pres.carrier_size() > 3 {
            continue;
        }
        let mut smaller = inst.pres.generators().clone();
        let last = smaller.keys().next_back().unwrap().clone();
        smaller.remove(&last);
        let sub = AlgebraPresentation::with_profile(
            inst.pres.carrier().clone(),
            smaller,
            inst.pres.profile().cloned(),
        )?;
        let sub_clone = generate_clone(&sub, bound, op_cap)?.clone;
        let sub_com = commutant_clone(&sub, bound, inst.strategy, op_cap)?;
        let includes =
            clone_subset(&sub_clone, &inst.clo)? && clone_subset(&inst.com, &sub_com)?;
        law.record(includes, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // Com(Com(Com(A))) = Com(A) layerwise
    let mut law = Law::new("triple-commutant");
    for inst in &instances {
        law.record(clone_equal(&inst.tcom, &inst.com)?, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // centralizer layers form a clone
    let mut law = Law::new("centralizer-is-clone");
    for inst in &instances {
        law.record(is_clone(&inst.com, op_cap)?, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // enumerate and backtrack agree wherever enumerate is feasible
    let mut law = Law::new("enumerate-backtrack-agree");
    for inst in &instances {
        if inst.pres.carrier_size() > 3 {
            continue;
        }
        let mut agree = true;
        for arity in crate::clone::ArityProfile::resolve(inst.pres.profile(), bound)?.arities() {
            let e = centralizer_layer(&inst.pres, arity, Strategy::Enumerate, op_cap)?;
            let b = centralizer_layer(&inst.pres, arity, Strategy::Backtrack, op_cap)?;
            if e != b {
                agree = false;
                break;
            }
        }
        law.record(agree, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // the commutant commutes with the original algebra
    let mut law = Law::new("commutant-commutes-back");
    for inst in &instances {
        let com_pres = presentation_from_clone(&inst.com);
        let ok = algebras_commute(&inst.pres, &com_pres)?.commutes();
        law.record(ok, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // every commutant output is saturated at the same bound:
    // Clo(Com(A)) must equal Com(Com(Com(A)))
    let mut law = Law::new("commutant-output-saturated");
    for inst in &instances {
        law.record(clone_equal(&inst.com_regen, &inst.tcom)?, || {
            inst.label.clone()
        });
    }
    outcomes.push(law.outcome());

    // rcom always yields a commuting pair whose right face is the commutant
    let mut law = Law::new("rcom-is-right-commutant");
    for inst in &instances {
        let pair = rcom(&inst.pres, bound, inst.strategy, op_cap)?;
        let status =
            pair_status_from_parts(bound, &inst.clo, &inst.com_regen, &inst.com, &inst.dcom)?;
        law.record(pair.is_commuting() && status.right_commutant_at, || {
            inst.label.clone()
        });
    }
    outcomes.push(law.outcome());

    // rcom(a) is a commutant pair exactly when a is saturated
    let mut law = Law::new("saturation-iff-commutant-pair");
    for inst in &instances {
        let saturated = clone_equal(&inst.clo, &inst.dcom)?;
        let status =
            pair_status_from_parts(bound, &inst.clo, &inst.com_regen, &inst.com, &inst.dcom)?;
        law.record(status.commutant_at == saturated, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // balanced at N is equivalent to commutative + contracommutative +
    // saturated at N
    let mut law = Law::new("balanced-iff-three-flags");
    for inst in &instances {
        let commutative = algebras_commute(&inst.pres, &inst.pres)?.commutes();
        let contracommutative = family_self_commutes(&inst.com)?.commutes();
        let saturated = clone_equal(&inst.clo, &inst.dcom)?;
        let balanced = clone_equal(&inst.clo, &inst.com)?;
        law.record(
            balanced == (commutative && contracommutative && saturated),
            || inst.label.clone(),
        );
    }
    outcomes.push(law.outcome());

    // status of the swapped pair mirrors left/right flags
    let mut law = Law::new("swap-symmetry");
    for inst in &instances {
        let s1 = pair_status_from_parts(bound, &inst.clo, &inst.com_regen, &inst.com, &inst.dcom)?;
        let s2 = pair_status_from_parts(bound, &inst.com_regen, &inst.clo, &inst.dcom, &inst.com)?;
        let ok = s1.right_commutant_at == s2.left_commutant_at
            && s1.left_commutant_at == s2.right_commutant_at
            && s1.balanced_at == s2.balanced_at;
        law.record(ok, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // a pair is balanced exactly when it is a commutant pair with both faces
    // commutative
    let mut law = Law::new("balanced-pair-both-faces-commutative");
    for inst in &instances {
        let status =
            pair_status_from_parts(bound, &inst.clo, &inst.com_regen, &inst.com, &inst.dcom)?;
        let com_pres = presentation_from_clone(&inst.com);
        let left_comm = algebras_commute(&inst.pres, &inst.pres)?.commutes();
        let right_comm = algebras_commute(&com_pres, &com_pres)?.commutes();
        let expected = status.commutant_at && left_comm && right_comm;
        law.record(status.balanced_at == expected, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // a is balanced iff rcom(a) is balanced iff lcom(a) is balanced
    let mut law = Law::new("balanced-transfers-to-rcom-lcom");
    for inst in &instances {
        let balanced = clone_equal(&inst.clo, &inst.com)?;
        let r = pair_status_from_parts(bound, &inst.clo, &inst.com_regen, &inst.com, &inst.dcom)?;
        let l = pair_status_from_parts(bound, &inst.com_regen, &inst.clo, &inst.dcom, &inst.com)?;
        law.record(
            balanced == r.balanced_at && balanced == l.balanced_at,
            || inst.label.clone(),
        );
    }
    outcomes.push(law.outcome());

    // contracommutativity per pairwise layers agrees with treating the
    // commutant members as one generator set
    let mut law = Law::new("contracommutative-via-pairs");
    for inst in &instances {
        let pairwise = family_self_commutes(&inst.com)?.commutes();
        let com_pres = presentation_from_clone(&inst.com);
        let as_algebra = algebras_commute(&com_pres, &com_pres)?.commutes();
        law.record(pairwise == as_algebra, || inst.label.clone());
    }
    outcomes.push(law.outcome());

    // the commuting pair (a, a) exists exactly for commutative a
    let mut law = Law::new("self-pair-iff-commutative");
    for inst in &instances {
        let commutative = algebras_commute(&inst.pres, &inst.pres)?.commutes();
        let self_pair = AlgebraPair::new(inst.pres.clone(), inst.pres.clone())?;
        law.record(self_pair.is_commuting() == commutative, || {
            inst.label.clone()
        });
    }
    outcomes.push(law.outcome());

    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_is_clean() {
        let config = SelfcheckConfig {
            seed: 7,
            random_instances: 4,
            bound: 2,
            include_library: false,
            ..SelfcheckConfig::default()
        };
        let outcomes = run(&config).unwrap();
        assert!(!outcomes.is_empty());
        for outcome in &outcomes {
            assert_eq!(
                outcome.violations, 0,
                "law {} violated: {:?}",
                outcome.name, outcome.detail
            );
        }
    }

    #[test]
    fn random_instances_are_deterministic() {
        let mut rng1 = ChaCha8Rng::seed_from_u64(99);
        let mut rng2 = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10 {
            assert_eq!(
                random_presentation(&mut rng1, 2),
                random_presentation(&mut rng2, 2)
            );
        }
    }

    /// The parts-based status used by the laws matches the end-to-end
    /// pair_status computation.
    #[test]
    fn parts_status_matches_full_pair_status() {
        let pres = library::resolve("rig2.module", 2).unwrap();
        let inst = build_instance("rig2.module".into(), pres.clone(), 2, 1_000_000).unwrap();
        let pair = rcom(&pres, 2, Strategy::Enumerate, 1_000_000).unwrap();
        let full = crate::pairs::pair_status(&pair, 2, Strategy::Enumerate, 1_000_000).unwrap();
        let parts =
            pair_status_from_parts(2, &inst.clo, &inst.com_regen, &inst.com, &inst.dcom).unwrap();
        assert_eq!(full.right_commutant_at, parts.right_commutant_at);
        assert_eq!(full.left_commutant_at, parts.left_commutant_at);
        assert_eq!(full.balanced_at, parts.balanced_at);
    }
}
