//! Commuting pairs of algebra structures on one carrier: the concrete form
//! of a two-theory algebra. The pair (left, right) stores both presentations
//! plus the commutation outcome; everything else - right-/left-commutant
//! status, balance, central inclusions, transport along derivations - is
//! computed against an explicit arity bound.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clone::{
    clone_equal_witness, clone_subset_witness, generate_clone, presentation_from_clone,
    AlgebraPresentation, LayerDiff,
};
use crate::commutant::{
    algebras_commute, commutant_clone, Commutation, CommuteWitness, Strategy,
};
use crate::error::{Error, Result};
use crate::ops::FiniteOp;

/// Two presentations on the same carrier with the same profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraPair {
    left: AlgebraPresentation,
    right: AlgebraPresentation,
    commuting: Commutation,
}

impl AlgebraPair {
    /// Build the pair, computing its commutation status. The pair itself is
    /// the concrete representation of the two-sided algebra; `left` and
    /// `right` are its faces.
    pub fn new(left: AlgebraPresentation, right: AlgebraPresentation) -> Result<Self> {
        if left.carrier_size() != right.carrier_size() {
            return Err(Error::input(format!(
                "pair faces live on different carriers ({} and {})",
                left.carrier_size(),
                right.carrier_size()
            )));
        }
        if left.profile() != right.profile() {
            return Err(Error::input(
                "pair faces declare different arity profiles".to_string(),
            ));
        }
        let commuting = algebras_commute(&left, &right)?;
        Ok(AlgebraPair {
            left,
            right,
            commuting,
        })
    }

    /// As [`AlgebraPair::new`], but a non-commuting pair is an error.
    pub fn new_strict(left: AlgebraPresentation, right: AlgebraPresentation) -> Result<Self> {
        let pair = AlgebraPair::new(left, right)?;
        match &pair.commuting {
            Commutation::Commutes => Ok(pair),
            Commutation::Fails(w) => Err(Error::NotCommuting(w.clone())),
        }
    }

    pub fn left(&self) -> &AlgebraPresentation {
        &self.left
    }

    pub fn right(&self) -> &AlgebraPresentation {
        &self.right
    }

    pub fn commuting(&self) -> &Commutation {
        &self.commuting
    }

    pub fn is_commuting(&self) -> bool {
        self.commuting.commutes()
    }

    /// The swapped pair (right face first). Commutation is symmetric, so the
    /// stored status carries over with the witness transposed only in roles.
    pub fn swapped(&self) -> Result<Self> {
        AlgebraPair::new(self.right.clone(), self.left.clone())
    }
}

/// Build the pair representation of a two-sided algebra from its faces.
pub fn make_bifold(
    left: AlgebraPresentation,
    right: AlgebraPresentation,
) -> Result<AlgebraPair> {
    AlgebraPair::new(left, right)
}

/// As [`make_bifold`], but only a commuting pair is accepted.
pub fn make_bifold_strict(
    left: AlgebraPresentation,
    right: AlgebraPresentation,
) -> Result<AlgebraPair> {
    AlgebraPair::new_strict(left, right)
}

/// Bound-indexed status of a commuting pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStatus {
    pub bound: usize,
    pub commuting: bool,
    pub commuting_witness: Option<CommuteWitness>,
    /// clone(right) equals commutant(left) at the bound.
    pub right_commutant_at: bool,
    pub right_commutant_witness: Option<LayerDiff>,
    /// clone(left) equals commutant(right) at the bound.
    pub left_commutant_at: bool,
    pub left_commutant_witness: Option<LayerDiff>,
    pub commutant_at: bool,
    /// Commutant pair whose two face clones coincide at the bound.
    pub balanced_at: bool,
    pub balanced_witness: Option<LayerDiff>,
    pub left_layer_sizes: BTreeMap<usize, usize>,
    pub right_layer_sizes: BTreeMap<usize, usize>,
}

/// The pair (a, commutant of a): always commutes, and its right face is the
/// commutant by construction.
pub fn rcom(
    pres: &AlgebraPresentation,
    bound: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<AlgebraPair> {
    let com = commutant_clone(pres, bound, strategy, op_cap)?;
    // carry over the left face's profile annotation so the faces agree
    let mut right = presentation_from_clone(&com).reprofiled(pres.profile().cloned())?;
    if let Some(name) = pres.name() {
        right = right.named(format!("{name}.commutant"));
    }
    AlgebraPair::new(pres.clone(), right)
}

/// The swap of [`rcom`]: commutant on the left.
pub fn lcom(
    pres: &AlgebraPresentation,
    bound: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<AlgebraPair> {
    rcom(pres, bound, strategy, op_cap)?.swapped()
}

/// Classify a commuting pair at a bound. A non-commuting pair is an error
/// carrying the witness.
pub fn pair_status(
    pair: &AlgebraPair,
    bound: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<PairStatus> {
    if let Commutation::Fails(w) = pair.commuting() {
        return Err(Error::NotCommuting(w.clone()));
    }
    let clone_left = generate_clone(pair.left(), bound, op_cap)?.clone;
    let clone_right = generate_clone(pair.right(), bound, op_cap)?.clone;
    let com_left = commutant_clone(pair.left(), bound, strategy, op_cap)?;
    let com_right = commutant_clone(pair.right(), bound, strategy, op_cap)?;
    pair_status_from_parts(bound, &clone_left, &clone_right, &com_left, &com_right)
}

/// Pair classification when the generated clones and commutants of both
/// faces are already at hand (all at the same bound and profile). The caller
/// vouches that the underlying pair commutes.
pub fn pair_status_from_parts(
    bound: usize,
    clone_left: &crate::clone::TruncatedClone,
    clone_right: &crate::clone::TruncatedClone,
    com_left: &crate::clone::TruncatedClone,
    com_right: &crate::clone::TruncatedClone,
) -> Result<PairStatus> {
    let right_commutant_witness = clone_equal_witness(clone_right, com_left)?;
    let left_commutant_witness = clone_equal_witness(clone_left, com_right)?;
    let commutant_at = right_commutant_witness.is_none() && left_commutant_witness.is_none();
    let faces_equal_witness = clone_equal_witness(clone_left, clone_right)?;
    let balanced_witness = if commutant_at {
        faces_equal_witness
    } else {
        // not a commutant pair; report the first commutant failure as evidence
        right_commutant_witness
            .clone()
            .or_else(|| left_commutant_witness.clone())
    };
    Ok(PairStatus {
        bound,
        commuting: true,
        commuting_witness: None,
        right_commutant_at: right_commutant_witness.is_none(),
        right_commutant_witness,
        left_commutant_at: left_commutant_witness.is_none(),
        left_commutant_witness,
        commutant_at,
        balanced_at: commutant_at && balanced_witness.is_none(),
        balanced_witness,
        left_layer_sizes: clone_left.layer_sizes(),
        right_layer_sizes: clone_right.layer_sizes(),
    })
}

/// One inclusion of the central-morphism check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub holds: bool,
    pub missing: Option<FiniteOp>,
}

/// Report of the two clone-level inclusions behind a central morphism from
/// the left face into the right: the left clone sits inside the right clone,
/// and inside the centralizer of the right clone (the center).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralInclusionReport {
    pub bound: usize,
    pub left_in_right: InclusionReport,
    pub left_in_center_of_right: InclusionReport,
}

impl CentralInclusionReport {
    pub fn holds(&self) -> bool {
        self.left_in_right.holds && self.left_in_center_of_right.holds
    }
}

/// Verify the central inclusions for a pair whose right face is the
/// commutant of its left face and whose left face is commutative.
/// Preconditions violated name the failed flag.
pub fn central_inclusion_check(
    pair: &AlgebraPair,
    bound: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<CentralInclusionReport> {
    if let Commutation::Fails(w) = pair.commuting() {
        return Err(Error::NotCommuting(w.clone()));
    }
    let clone_left = generate_clone(pair.left(), bound, op_cap)?.clone;
    let clone_right = generate_clone(pair.right(), bound, op_cap)?.clone;
    let com_left = commutant_clone(pair.left(), bound, strategy, op_cap)?;
    if clone_equal_witness(&clone_right, &com_left)?.is_some() {
        return Err(Error::Precondition(format!(
            "right_commutant_at({bound}) does not hold for this pair"
        )));
    }
    if let Commutation::Fails(_) = algebras_commute(pair.left(), pair.left())? {
        return Err(Error::Precondition(
            "left face is not commutative".to_string(),
        ));
    }
    let com_right = commutant_clone(pair.right(), bound, strategy, op_cap)?;
    let first = clone_subset_witness(&clone_left, &clone_right)?;
    let second = clone_subset_witness(&clone_left, &com_right)?;
    Ok(CentralInclusionReport {
        bound,
        left_in_right: InclusionReport {
            holds: first.is_none(),
            missing: first.map(|d| d.op),
        },
        left_in_center_of_right: InclusionReport {
            holds: second.is_none(),
            missing: second.map(|d| d.op),
        },
    })
}

/// Transport the pair structure to a new carrier: every left-face generator
/// is rewritten as a derivation term over the right face's generators, the
/// terms are evaluated over `target`'s same-named operations, and the
/// resulting pair (induced left face, target) is returned.
///
/// The pair must be a commutant pair at the bound with a commutative left
/// face; `target` must provide exactly the right face's generator names at
/// matching arities. Commutation of the result is re-verified: a failure
/// means the target does not satisfy the equations the construction relies
/// on and is reported as an internal invariant violation.
pub fn transport_bifold(
    pair: &AlgebraPair,
    bound: usize,
    target: &AlgebraPresentation,
    strategy: Strategy,
    op_cap: usize,
) -> Result<AlgebraPair> {
    if let Commutation::Fails(w) = pair.commuting() {
        return Err(Error::NotCommuting(w.clone()));
    }
    let clone_left = generate_clone(pair.left(), bound, op_cap)?.clone;
    let gen_right = generate_clone(pair.right(), bound, op_cap)?;
    let com_left = commutant_clone(pair.left(), bound, strategy, op_cap)?;
    let com_right = commutant_clone(pair.right(), bound, strategy, op_cap)?;
    if clone_equal_witness(&gen_right.clone, &com_left)?.is_some()
        || clone_equal_witness(&clone_left, &com_right)?.is_some()
    {
        return Err(Error::Precondition(format!(
            "commutant_at({bound}) does not hold for this pair"
        )));
    }
    if let Commutation::Fails(_) = algebras_commute(pair.left(), pair.left())? {
        return Err(Error::Precondition(
            "left face is not commutative".to_string(),
        ));
    }

    // target interface: exactly the right face's generator names and arities
    let right_gens = pair.right().generators();
    let target_gens = target.generators();
    for (name, op) in right_gens {
        match target_gens.get(name) {
            None => {
                return Err(Error::input(format!(
                    "target provides no operation named {name:?}"
                )))
            }
            Some(t) if t.arity() != op.arity() => {
                return Err(Error::input(format!(
                    "target operation {name:?} has arity {}, expected {}",
                    t.arity(),
                    op.arity()
                )))
            }
            Some(_) => {}
        }
    }
    if let Some(extra) = target_gens.keys().find(|k| !right_gens.contains_key(*k)) {
        return Err(Error::input(format!(
            "target operation {extra:?} does not correspond to a right-face generator"
        )));
    }

    // left generators as terms over the right face, evaluated on the target
    let mut induced = BTreeMap::new();
    for (name, op) in pair.left().generators() {
        let term = gen_right.derivation_of(op).ok_or_else(|| {
            Error::Derivation(format!(
                "left generator {name:?} has no derivation over the right face at bound {bound}"
            ))
        })?;
        induced.insert(name.clone(), term.evaluate(target)?);
    }
    let mut induced_left =
        AlgebraPresentation::with_profile(target.carrier().clone(), induced, target.profile().cloned())?;
    if let Some(name) = pair.left().name() {
        induced_left = induced_left.named(format!("{name}.transported"));
    }

    let result = AlgebraPair::new(induced_left, target.clone())?;
    if let Commutation::Fails(w) = result.commuting() {
        return Err(Error::InternalInvariant(format!(
            "transported pair fails to commute ({w}); the target does not model the right face"
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clone::{clone_equal, DEFAULT_OP_CAP};
    use crate::commutant::classify;
    use crate::ops::Carrier;

    fn join2() -> FiniteOp {
        FiniteOp::from_table(2, 2, vec![0, 1, 1, 1]).unwrap()
    }

    fn pres(k: usize, gens: &[(&str, FiniteOp)]) -> AlgebraPresentation {
        let map: BTreeMap<String, FiniteOp> = gens
            .iter()
            .map(|(n, op)| (n.to_string(), op.clone()))
            .collect();
        AlgebraPresentation::new(Carrier::new(k).unwrap(), map).unwrap()
    }

    fn slat_join(k: usize) -> AlgebraPresentation {
        let len = k * k;
        let mut table = vec![0u8; len];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = a.max(b) as u8;
            }
        }
        pres(
            k,
            &[("join", FiniteOp::from_table(k, 2, table).unwrap())],
        )
    }

    fn slat_u(k: usize) -> AlgebraPresentation {
        let mut gens: Vec<(&str, FiniteOp)> = vec![];
        let join = slat_join(k).generators()["join"].clone();
        gens.push(("join", join));
        gens.push(("bot", FiniteOp::constant(k, 0, 0).unwrap()));
        gens.push(("top", FiniteOp::constant(k, 0, (k - 1) as u8).unwrap()));
        pres(k, &gens)
    }

    #[test]
    fn make_pair_and_strictness() {
        let pair = AlgebraPair::new(slat_join(2), slat_u(2)).unwrap();
        assert!(pair.is_commuting());
        let self_pair = AlgebraPair::new(slat_join(2), slat_join(2)).unwrap();
        assert!(self_pair.is_commuting());
        let err = AlgebraPair::new_strict(slat_u(2), slat_u(2)).unwrap_err();
        assert!(matches!(err, Error::NotCommuting(_)));
    }

    #[test]
    fn carrier_mismatch_rejected() {
        assert!(AlgebraPair::new(slat_join(2), slat_join(3)).is_err());
    }

    #[test]
    fn rcom_of_join_counts() {
        let pair = rcom(&slat_join(2), 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(pair.is_commuting());
        let sizes: Vec<usize> = [0, 1, 2]
            .iter()
            .map(|&a| {
                pair.right()
                    .generators()
                    .values()
                    .filter(|op| op.arity() == a)
                    .count()
            })
            .collect();
        assert_eq!(sizes, vec![2, 3, 5]);
        let status = pair_status(&pair, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(status.right_commutant_at);
    }

    #[test]
    fn lcom_swaps_faces() {
        let pair = lcom(&slat_join(2), 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        let status = pair_status(&pair, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(status.left_commutant_at);
    }

    #[test]
    fn mutual_commutants_status() {
        let pair = AlgebraPair::new(slat_join(2), slat_u(2)).unwrap();
        let status = pair_status(&pair, 3, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(status.right_commutant_at);
        assert!(status.left_commutant_at);
        assert!(status.commutant_at);
        assert!(!status.balanced_at); // faces generate different clones
        assert!(status.balanced_witness.is_some());
    }

    #[test]
    fn balanced_pair_status() {
        let mat2 = pres(
            2,
            &[
                ("join", join2()),
                ("bot", FiniteOp::constant(2, 0, 0).unwrap()),
            ],
        );
        let pair = AlgebraPair::new(mat2.clone(), mat2).unwrap();
        let status = pair_status(&pair, 3, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(status.commutant_at);
        assert!(status.balanced_at);
    }

    #[test]
    fn non_commuting_pair_status_errors() {
        let xor = FiniteOp::from_table(2, 2, vec![0, 1, 1, 0]).unwrap();
        let a = pres(
            2,
            &[
                ("xor", xor),
                ("zero", FiniteOp::constant(2, 0, 0).unwrap()),
            ],
        );
        let b = pres(
            2,
            &[
                ("join", join2()),
                ("zero", FiniteOp::constant(2, 0, 0).unwrap()),
            ],
        );
        let pair = AlgebraPair::new(a, b).unwrap();
        assert!(!pair.is_commuting());
        assert!(matches!(
            pair_status(&pair, 2, Strategy::Enumerate, DEFAULT_OP_CAP),
            Err(Error::NotCommuting(_))
        ));
    }

    #[test]
    fn central_inclusions_for_rcom_join() {
        let pair = rcom(&slat_join(2), 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        let report =
            central_inclusion_check(&pair, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn central_inclusion_precondition_failure() {
        // U is not commutative, so rcom(U) fails the left-commutativity precondition
        let pair = rcom(&slat_u(2), 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        let err =
            central_inclusion_check(&pair, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("commutative")),
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn transport_identity_returns_left_clone_members() {
        let pair = AlgebraPair::new(slat_join(2), slat_u(2)).unwrap();
        let transported =
            transport_bifold(&pair, 3, &slat_u(2), Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(transported.is_commuting());
        // identity transport: induced left describes the same clone
        let orig = generate_clone(&slat_join(2), 3, DEFAULT_OP_CAP).unwrap();
        let induced = generate_clone(transported.left(), 3, DEFAULT_OP_CAP).unwrap();
        assert!(clone_equal(&orig.clone, &induced.clone).unwrap());
    }

    #[test]
    fn transport_to_three_chain() {
        let pair = AlgebraPair::new(slat_join(2), slat_u(2)).unwrap();
        let transported =
            transport_bifold(&pair, 3, &slat_u(3), Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(transported.is_commuting());
        assert_eq!(transported.left().carrier_size(), 3);
    }

    #[test]
    fn transport_rejects_bad_targets() {
        let pair = AlgebraPair::new(slat_join(2), slat_u(2)).unwrap();
        // missing name
        let missing = pres(3, &[("join", slat_join(3).generators()["join"].clone())]);
        assert!(matches!(
            transport_bifold(&pair, 3, &missing, Strategy::Enumerate, DEFAULT_OP_CAP),
            Err(Error::Input(_))
        ));
        // arity mismatch
        let bad_arity = pres(
            3,
            &[
                ("join", FiniteOp::projection(3, 1, 1).unwrap()),
                ("bot", FiniteOp::constant(3, 0, 0).unwrap()),
                ("top", FiniteOp::constant(3, 0, 2).unwrap()),
            ],
        );
        assert!(matches!(
            transport_bifold(&pair, 3, &bad_arity, Strategy::Enumerate, DEFAULT_OP_CAP),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn transport_detects_non_model_target() {
        let pair = AlgebraPair::new(slat_join(2), slat_u(2)).unwrap();
        // "join" interpreted by a non-semilattice operation: x+y mod 3
        let add3 = FiniteOp::from_table(3, 2, vec![0, 1, 2, 1, 2, 0, 2, 0, 1]).unwrap();
        let target = pres(
            3,
            &[
                ("join", add3),
                ("bot", FiniteOp::constant(3, 0, 0).unwrap()),
                ("top", FiniteOp::constant(3, 0, 2).unwrap()),
            ],
        );
        let err = transport_bifold(&pair, 3, &target, Strategy::Enumerate, DEFAULT_OP_CAP)
            .unwrap_err();
        assert!(matches!(err, Error::InternalInvariant(_)));
    }

    #[test]
    fn rcom_commutant_status_tracks_saturation() {
        for p in [slat_join(2), slat_u(2)] {
            let c = classify(&p, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
            let pair = rcom(&p, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
            let status = pair_status(&pair, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
            assert_eq!(status.commutant_at, c.saturated_at);
        }
    }
}
