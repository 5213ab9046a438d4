//! Commutation of operations and algebras, centralizer layers, and the
//! four-flag classification (commutative / contracommutative / saturated /
//! balanced, the latter two at an explicit arity bound).
//!
//! Two operations f (m-ary) and g (n-ary) on the same carrier commute when
//! for every m-by-n matrix X over the carrier,
//!
//! ```text
//! f(g(row_1), .., g(row_m)) = g(f(col_1), .., f(col_n))
//! ```
//!
//! Degenerate arities work out through empty rows and columns: a nullary f
//! commutes with g exactly when its value is a fixed point of g's diagonal,
//! and two nullary operations commute exactly when they are equal.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clone::{
    clone_equal_witness, generate_clone, presentation_from_clone, ArityProfile,
    AlgebraPresentation, GeneratedClone, LayerDiff, TruncatedClone,
};
use crate::error::{Error, Result};
use crate::ops::{decode_tuple, encode_tuple, odometer_step, table_len, Element, FiniteOp};

/// A failing matrix for a commutation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommuteWitness {
    pub f: FiniteOp,
    pub g: FiniteOp,
    /// Row-major m-by-n matrix, m = f.arity, n = g.arity.
    pub matrix: Vec<Element>,
    pub lhs: Element,
    pub rhs: Element,
}

impl std::fmt::Display for CommuteWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.g.arity();
        write!(f, "f={} g={} matrix=[", self.f, self.g)?;
        for i in 0..self.f.arity() {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.matrix[i * n + j])?;
            }
        }
        write!(
            f,
            "] f(g(rows))={} g(f(cols))={}",
            self.lhs, self.rhs
        )
    }
}

/// Outcome of a commutation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Commutation {
    Commutes,
    Fails(CommuteWitness),
}

impl Commutation {
    pub fn commutes(&self) -> bool {
        matches!(self, Commutation::Commutes)
    }

    pub fn witness(&self) -> Option<&CommuteWitness> {
        match self {
            Commutation::Commutes => None,
            Commutation::Fails(w) => Some(w),
        }
    }
}

/// Centralizer search strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Iterate every candidate table and filter.
    Enumerate,
    /// Fill the candidate table cell by cell, checking every commuting
    /// constraint as soon as all of its cells are assigned.
    Backtrack,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerate" => Ok(Strategy::Enumerate),
            "backtrack" => Ok(Strategy::Backtrack),
            other => Err(Error::input(format!("unknown strategy {other:?}"))),
        }
    }
}

fn check_same_carrier(f: &FiniteOp, g: &FiniteOp) -> Result<()> {
    if f.carrier_size() != g.carrier_size() {
        return Err(Error::input(format!(
            "commutation check across carriers {} and {}",
            f.carrier_size(),
            g.carrier_size()
        )));
    }
    Ok(())
}

/// Full commutation check. On failure, returns the lexicographically first
/// failing matrix in row-major enumeration.
pub fn commute_check(f: &FiniteOp, g: &FiniteOp) -> Result<Commutation> {
    check_same_carrier(f, g)?;
    let k = f.carrier_size();
    let m = f.arity();
    let n = g.arity();
    table_len(k, m.checked_mul(n).ok_or_else(|| Error::input("arity product overflow"))?)?;
    let mut matrix = vec![0u8; m * n];
    let mut g_of_rows = vec![0u8; m];
    let mut f_of_cols = vec![0u8; n];
    let mut col = vec![0u8; m];
    loop {
        for i in 0..m {
            g_of_rows[i] = g.eval_raw(&matrix[i * n..(i + 1) * n]);
        }
        let lhs = f.eval_raw(&g_of_rows);
        for j in 0..n {
            for i in 0..m {
                col[i] = matrix[i * n + j];
            }
            f_of_cols[j] = f.eval_raw(&col);
        }
        let rhs = g.eval_raw(&f_of_cols);
        if lhs != rhs {
            return Ok(Commutation::Fails(CommuteWitness {
                f: f.clone(),
                g: g.clone(),
                matrix,
                lhs,
                rhs,
            }));
        }
        if !odometer_step(&mut matrix, k) {
            return Ok(Commutation::Commutes);
        }
    }
}

/// Boolean-only commutation check for hot loops.
pub(crate) fn commutes(f: &FiniteOp, g: &FiniteOp) -> bool {
    let k = f.carrier_size();
    let m = f.arity();
    let n = g.arity();
    let mut matrix = vec![0u8; m * n];
    let mut g_of_rows = vec![0u8; m];
    let mut f_of_cols = vec![0u8; n];
    let mut col = vec![0u8; m];
    loop {
        for i in 0..m {
            g_of_rows[i] = g.eval_raw(&matrix[i * n..(i + 1) * n]);
        }
        let lhs = f.eval_raw(&g_of_rows);
        for j in 0..n {
            for i in 0..m {
                col[i] = matrix[i * n + j];
            }
            f_of_cols[j] = f.eval_raw(&col);
        }
        if lhs != g.eval_raw(&f_of_cols) {
            return false;
        }
        if !odometer_step(&mut matrix, k) {
            return true;
        }
    }
}

/// Whether two presentations commute: every generator of `a` against every
/// generator of `b`, both in name order; first witness wins.
pub fn algebras_commute(a: &AlgebraPresentation, b: &AlgebraPresentation) -> Result<Commutation> {
    if a.carrier_size() != b.carrier_size() {
        return Err(Error::input(format!(
            "commutation check across carriers {} and {}",
            a.carrier_size(),
            b.carrier_size()
        )));
    }
    for f in a.generator_ops() {
        for g in b.generator_ops() {
            if let Commutation::Fails(w) = commute_check(f, g)? {
                return Ok(Commutation::Fails(w));
            }
        }
    }
    Ok(Commutation::Commutes)
}

/// All `arity`-ary operations commuting with every generator, canonically
/// sorted. Both strategies return identical lists; enumerate additionally
/// requires the candidate space `k^(k^arity)` to fit under the cap.
pub fn centralizer_layer(
    pres: &AlgebraPresentation,
    arity: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<Vec<FiniteOp>> {
    if let Some(profile) = pres.profile() {
        if !profile.contains(&arity) {
            return Err(Error::input(format!(
                "arity {arity} is outside the presentation profile"
            )));
        }
    }
    let gens: Vec<&FiniteOp> = pres.generator_ops().collect();
    match strategy {
        Strategy::Enumerate => centralizer_enumerate(pres.carrier_size(), &gens, arity, op_cap),
        Strategy::Backtrack => centralizer_backtrack(pres.carrier_size(), &gens, arity, op_cap),
    }
}

fn centralizer_enumerate(
    k: usize,
    gens: &[&FiniteOp],
    arity: usize,
    op_cap: usize,
) -> Result<Vec<FiniteOp>> {
    let candidates = crate::clone::full_layer_size(k, arity).ok_or_else(|| {
        Error::resource(format!(
            "enumeration space {k}^({k}^{arity}) overflows; use the backtrack strategy"
        ))
    })?;
    if candidates > op_cap {
        return Err(Error::resource(format!(
            "enumeration space {candidates} exceeds the cap {op_cap}; use the backtrack strategy"
        )));
    }
    let len = table_len(k, arity)?;
    let mut table = vec![0u8; len];
    let mut layer = Vec::new();
    loop {
        let candidate = FiniteOp::from_table(k, arity, table.clone())?;
        if gens.iter().all(|g| commutes(&candidate, g)) {
            if layer.len() >= op_cap {
                return Err(Error::resource(format!(
                    "centralizer layer at arity {arity} exceeds the cap {op_cap}"
                )));
            }
            layer.push(candidate);
        }
        if !odometer_step(&mut table, k) {
            break;
        }
    }
    Ok(layer)
}

/// One commuting constraint on the candidate table: the cell at
/// `target` must equal `g` applied to the cells listed in `args`.
struct CellConstraint {
    g: usize,
    target: u32,
    args: Vec<u32>,
}

fn centralizer_backtrack(
    k: usize,
    gens: &[&FiniteOp],
    arity: usize,
    op_cap: usize,
) -> Result<Vec<FiniteOp>> {
    let len = table_len(k, arity)?;

    // Constraints are indexed by the tuple of matrix columns; the column
    // cells plus the g-image-of-rows cell are the involved table entries.
    // Each constraint is bucketed at its largest involved cell so it is
    // checked exactly when it becomes fully instantiated.
    const CONSTRAINT_LIMIT: usize = 20_000_000;
    let mut total_constraints = 0usize;
    let mut buckets: Vec<Vec<CellConstraint>> = (0..len).map(|_| Vec::new()).collect();
    let mut row = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let j = g.arity();
        let col_space = table_len(
            k,
            arity
                .checked_mul(j)
                .ok_or_else(|| Error::input("arity product overflow"))?,
        )?;
        total_constraints = total_constraints.saturating_add(col_space);
        if total_constraints > CONSTRAINT_LIMIT {
            return Err(Error::resource(format!(
                "backtrack constraint table exceeds {CONSTRAINT_LIMIT} entries"
            )));
        }
        let mut cols = vec![0usize; j];
        let col_tuples: Vec<Vec<Element>> = (0..len)
            .map(|c| decode_tuple(c, k, arity))
            .collect::<Result<_>>()?;
        loop {
            // y_i = g(row_i) where row_i collects coordinate i of each column
            let mut y = Vec::with_capacity(arity);
            for i in 0..arity {
                row.clear();
                for &c in &cols {
                    row.push(col_tuples[c][i]);
                }
                y.push(g.eval_raw(&row));
            }
            let target = encode_tuple(&y, k)? as u32;
            let args: Vec<u32> = cols.iter().map(|&c| c as u32).collect();
            let max_cell = args
                .iter()
                .copied()
                .chain(std::iter::once(target))
                .max()
                .unwrap_or(target) as usize;
            buckets[max_cell].push(CellConstraint {
                g: gi,
                target,
                args,
            });
            // advance the column tuple odometer (base len)
            let mut advanced = false;
            for pos in (0..j).rev() {
                cols[pos] += 1;
                if cols[pos] < len {
                    advanced = true;
                    break;
                }
                cols[pos] = 0;
            }
            if !advanced {
                break;
            }
        }
    }

    let mut layer: Vec<FiniteOp> = Vec::new();
    let mut table = vec![0u8; len];
    let mut args_buf: Vec<Element> = Vec::new();
    search_cell(
        k,
        gens,
        arity,
        op_cap,
        &buckets,
        &mut table,
        0,
        &mut args_buf,
        &mut layer,
    )?;
    Ok(layer)
}

#[allow(clippy::too_many_arguments)]
fn search_cell(
    k: usize,
    gens: &[&FiniteOp],
    arity: usize,
    op_cap: usize,
    buckets: &[Vec<CellConstraint>],
    table: &mut Vec<Element>,
    cell: usize,
    args_buf: &mut Vec<Element>,
    layer: &mut Vec<FiniteOp>,
) -> Result<()> {
    if cell == table.len() {
        if layer.len() >= op_cap {
            return Err(Error::resource(format!(
                "centralizer layer at arity {arity} exceeds the cap {op_cap}"
            )));
        }
        layer.push(FiniteOp::from_table(k, arity, table.clone())?);
        return Ok(());
    }
    'values: for value in 0..k as u8 {
        table[cell] = value;
        for c in &buckets[cell] {
            args_buf.clear();
            for &a in &c.args {
                args_buf.push(table[a as usize]);
            }
            if table[c.target as usize] != gens[c.g].eval_raw(args_buf) {
                continue 'values;
            }
        }
        search_cell(k, gens, arity, op_cap, buckets, table, cell + 1, args_buf, layer)?;
    }
    table[cell] = 0;
    Ok(())
}

/// The commutant clone: centralizer layers at every arity of the profile.
pub fn commutant_clone(
    pres: &AlgebraPresentation,
    bound: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<TruncatedClone> {
    let profile = ArityProfile::resolve(pres.profile(), bound)?;
    let mut layers = BTreeMap::new();
    for arity in profile.arities() {
        layers.insert(arity, centralizer_layer(pres, arity, strategy, op_cap)?);
    }
    Ok(TruncatedClone::from_layers(
        pres.carrier().clone(),
        profile,
        layers,
    ))
}

/// Commutant of the presentation whose generators are all members of the
/// commutant clone. Contains the clone of `pres` layerwise.
pub fn double_commutant(
    pres: &AlgebraPresentation,
    bound: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<TruncatedClone> {
    let com = commutant_clone(pres, bound, strategy, op_cap)?;
    double_commutant_from(&com, strategy, op_cap)
}

/// Second commutant step when the first is already at hand.
pub fn double_commutant_from(
    commutant: &TruncatedClone,
    strategy: Strategy,
    op_cap: usize,
) -> Result<TruncatedClone> {
    let as_pres = presentation_from_clone(commutant);
    commutant_clone(&as_pres, commutant.bound(), strategy, op_cap)
}

/// Classification flags with their witnesses. The saturated and balanced
/// flags are bound-indexed: they compare truncated clones at `bound`, and a
/// larger bound can only shrink the double commutant toward the paper's
/// bound-free notion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub bound: usize,
    pub commutative: bool,
    pub commutative_witness: Option<CommuteWitness>,
    pub contracommutative: bool,
    pub contracommutative_witness: Option<CommuteWitness>,
    pub saturated_at: bool,
    pub saturated_witness: Option<LayerDiff>,
    pub balanced_at: bool,
    pub balanced_witness: Option<LayerDiff>,
    pub clone_layer_sizes: BTreeMap<usize, usize>,
    pub commutant_layer_sizes: BTreeMap<usize, usize>,
}

/// Pairwise self-commutation of a computed family of operations, walking the
/// canonical order with the diagonal included. Used for contracommutativity,
/// where no generating set of the commutant is assumed.
pub fn family_self_commutes(layers: &TruncatedClone) -> Result<Commutation> {
    let members: Vec<&FiniteOp> = layers.iter_ops().collect();
    for i in 0..members.len() {
        for j in i..members.len() {
            if let Commutation::Fails(w) = commute_check(members[i], members[j])? {
                return Ok(Commutation::Fails(w));
            }
        }
    }
    Ok(Commutation::Commutes)
}

pub fn classify(
    pres: &AlgebraPresentation,
    bound: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<Classification> {
    let generated = generate_clone(pres, bound, op_cap)?;
    classify_with(pres, &generated, bound, strategy, op_cap)
}

/// Classification with the generated clone supplied by the caller, so
/// commands that already hold it avoid regenerating.
pub fn classify_with(
    pres: &AlgebraPresentation,
    generated: &GeneratedClone,
    bound: usize,
    strategy: Strategy,
    op_cap: usize,
) -> Result<Classification> {
    let commutative = algebras_commute(pres, pres)?;
    let com = commutant_clone(pres, bound, strategy, op_cap)?;
    let contracommutative = family_self_commutes(&com)?;
    let dcom = double_commutant_from(&com, strategy, op_cap)?;
    let saturated_witness = clone_equal_witness(&generated.clone, &dcom)?;
    let balanced_witness = clone_equal_witness(&generated.clone, &com)?;
    Ok(Classification {
        bound,
        commutative: commutative.commutes(),
        commutative_witness: commutative.witness().cloned(),
        contracommutative: contracommutative.commutes(),
        contracommutative_witness: contracommutative.witness().cloned(),
        saturated_at: saturated_witness.is_none(),
        saturated_witness,
        balanced_at: balanced_witness.is_none(),
        balanced_witness,
        clone_layer_sizes: generated.clone.layer_sizes(),
        commutant_layer_sizes: com.layer_sizes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clone::DEFAULT_OP_CAP;
    use crate::ops::Carrier;
    use std::collections::BTreeSet;

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

    /// Independent oracle: all arity-n tables commuting with every generator,
    /// by direct definition over every matrix (no engine code paths).
    fn oracle_centralizer(k: usize, gens: &[FiniteOp], arity: usize) -> Vec<FiniteOp> {
        let len = table_len(k, arity).unwrap();
        let mut out = Vec::new();
        let mut table = vec![0u8; len];
        loop {
            let h = FiniteOp::from_table(k, arity, table.clone()).unwrap();
            let ok = gens.iter().all(|g| {
                // literal matrix sweep
                let m = h.arity();
                let n = g.arity();
                let mut matrix = vec![0u8; m * n];
                loop {
                    let rows: Vec<u8> = (0..m)
                        .map(|i| g.apply(&matrix[i * n..(i + 1) * n]).unwrap())
                        .collect();
                    let lhs = h.apply(&rows).unwrap();
                    let cols: Vec<u8> = (0..n)
                        .map(|j| {
                            let col: Vec<u8> = (0..m).map(|i| matrix[i * n + j]).collect();
                            h.apply(&col).unwrap()
                        })
                        .collect();
                    let rhs = g.apply(&cols).unwrap();
                    if lhs != rhs {
                        return false;
                    }
                    if !odometer_step(&mut matrix, k) {
                        return true;
                    }
                }
            });
            if ok {
                out.push(h);
            }
            if !odometer_step(&mut table, k) {
                break;
            }
        }
        out
    }

    #[test]
    fn projections_commute_with_everything() {
        let gens = [
            join2(),
            FiniteOp::from_table(2, 1, vec![1, 0]).unwrap(),
            FiniteOp::constant(2, 0, 1).unwrap(),
        ];
        for n in 1..=2usize {
            for coord in 1..=n {
                let p = FiniteOp::projection(2, n, coord).unwrap();
                for g in &gens {
                    assert!(commute_check(&p, g).unwrap().commutes());
                }
            }
        }
    }

    #[test]
    fn unary_constants_commute_iff_equal() {
        let c0 = FiniteOp::constant(2, 1, 0).unwrap();
        let c1 = FiniteOp::constant(2, 1, 1).unwrap();
        assert!(commute_check(&c0, &c0).unwrap().commutes());
        match commute_check(&c0, &c1).unwrap() {
            Commutation::Fails(w) => {
                assert_eq!(w.lhs, 0);
                assert_eq!(w.rhs, 1);
            }
            Commutation::Commutes => panic!("distinct constants must not commute"),
        }
    }

    #[test]
    fn nullary_witness_orientation() {
        let c0 = FiniteOp::constant(2, 0, 0).unwrap();
        let c1 = FiniteOp::constant(2, 0, 1).unwrap();
        match commute_check(&c0, &c1).unwrap() {
            Commutation::Fails(w) => {
                assert_eq!(w.lhs, 0);
                assert_eq!(w.rhs, 1);
                assert!(w.matrix.is_empty());
            }
            Commutation::Commutes => panic!(),
        }
    }

    #[test]
    fn join_self_commutes() {
        assert!(commute_check(&join2(), &join2()).unwrap().commutes());
    }

    #[test]
    fn carrier_mismatch_is_input_error() {
        let id3 = FiniteOp::projection(3, 1, 1).unwrap();
        assert!(matches!(
            commute_check(&join2(), &id3),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn commute_check_symmetry_exhaustive_unary_binary() {
        // commute(f,g) iff commute(g,f) over all unary/binary ops on 2
        let mut ops = Vec::new();
        for code in 0..4u32 {
            ops.push(
                FiniteOp::from_table(2, 1, vec![(code >> 1) as u8 & 1, code as u8 & 1]).unwrap(),
            );
        }
        for code in 0..16u32 {
            ops.push(
                FiniteOp::from_table(
                    2,
                    2,
                    (0..4).map(|i| ((code >> (3 - i)) & 1) as u8).collect(),
                )
                .unwrap(),
            );
        }
        for f in &ops {
            for g in &ops {
                assert_eq!(
                    commute_check(f, g).unwrap().commutes(),
                    commute_check(g, f).unwrap().commutes()
                );
            }
        }
    }

    #[test]
    fn algebras_commute_examples() {
        let slat_join = pres(2, &[("join", join2())]);
        let slat_u = pres(
            2,
            &[
                ("join", join2()),
                ("bot", FiniteOp::constant(2, 0, 0).unwrap()),
                ("top", FiniteOp::constant(2, 0, 1).unwrap()),
            ],
        );
        assert!(algebras_commute(&slat_join, &slat_u).unwrap().commutes());
        // U against itself: the two constants witness failure
        match algebras_commute(&slat_u, &slat_u).unwrap() {
            Commutation::Fails(w) => {
                assert_eq!(w.f.arity(), 0);
                assert_eq!(w.g.arity(), 0);
                assert_ne!(w.lhs, w.rhs);
            }
            Commutation::Commutes => panic!("U must not be commutative"),
        }
        let xor = FiniteOp::from_table(2, 2, vec![0, 1, 1, 0]).unwrap();
        let z2 = pres(
            2,
            &[
                ("xor", xor),
                ("zero", FiniteOp::constant(2, 0, 0).unwrap()),
            ],
        );
        assert!(algebras_commute(&z2, &z2).unwrap().commutes());
    }

    #[test]
    fn centralizer_layers_match_oracle_and_strategies_agree() {
        let slat_join = pres(2, &[("join", join2())]);
        let gens: Vec<FiniteOp> = slat_join.generator_ops().cloned().collect();
        for arity in 0..=2usize {
            let oracle = oracle_centralizer(2, &gens, arity);
            let enumerated =
                centralizer_layer(&slat_join, arity, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
            let backtracked =
                centralizer_layer(&slat_join, arity, Strategy::Backtrack, DEFAULT_OP_CAP).unwrap();
            assert_eq!(enumerated, oracle);
            assert_eq!(backtracked, oracle);
        }
        // frozen counts from the oracle: arity 1 -> 3 (const0, id, const1)
        assert_eq!(oracle_centralizer(2, &gens, 1).len(), 3);
        assert_eq!(oracle_centralizer(2, &gens, 2).len(), 5);
    }

    #[test]
    fn centralizer_of_empty_generators_is_everything() {
        let empty = AlgebraPresentation::new(Carrier::new(2).unwrap(), BTreeMap::new()).unwrap();
        let layer =
            centralizer_layer(&empty, 1, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert_eq!(layer.len(), 4);
        let empty3 = AlgebraPresentation::new(Carrier::new(3).unwrap(), BTreeMap::new()).unwrap();
        let layer3 =
            centralizer_layer(&empty3, 1, Strategy::Backtrack, DEFAULT_OP_CAP).unwrap();
        assert_eq!(layer3.len(), 27);
    }

    #[test]
    fn enumeration_cap_suggests_backtrack() {
        let p = pres(3, &[("id", FiniteOp::projection(3, 1, 1).unwrap())]);
        let err = centralizer_layer(&p, 3, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap_err();
        match err {
            Error::Resource(msg) => assert!(msg.contains("backtrack")),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn profile_restriction_is_enforced() {
        let p = pres(2, &[("join", join2())])
            .restrict_to_profile([2usize].into_iter().collect())
            .unwrap();
        assert!(centralizer_layer(&p, 1, Strategy::Enumerate, DEFAULT_OP_CAP).is_err());
        let com = commutant_clone(&p, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        let arities: BTreeSet<usize> = com.profile().arities().collect();
        assert_eq!(arities, [2usize].into_iter().collect());
    }

    #[test]
    fn commutant_counts_for_join_and_bot() {
        let p = pres(
            2,
            &[
                ("join", join2()),
                ("bot", FiniteOp::constant(2, 0, 0).unwrap()),
            ],
        );
        let com = commutant_clone(&p, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert_eq!(com.layer(0).len(), 1);
        assert_eq!(com.layer(1).len(), 2);
        assert_eq!(com.layer(2).len(), 4);
    }

    #[test]
    fn double_commutant_is_clone_for_join() {
        let p = pres(2, &[("join", join2())]);
        let g = generate_clone(&p, 2, DEFAULT_OP_CAP).unwrap();
        let dcom = double_commutant(&p, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(crate::clone::clone_equal(&g.clone, &dcom).unwrap());
    }

    #[test]
    fn classify_mat2_is_balanced() {
        let p = pres(
            2,
            &[
                ("join", join2()),
                ("bot", FiniteOp::constant(2, 0, 0).unwrap()),
            ],
        );
        let c = classify(&p, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(c.commutative);
        assert!(c.contracommutative);
        assert!(c.saturated_at);
        assert!(c.balanced_at);
    }

    #[test]
    fn classify_u_flags() {
        let u = pres(
            2,
            &[
                ("join", join2()),
                ("bot", FiniteOp::constant(2, 0, 0).unwrap()),
                ("top", FiniteOp::constant(2, 0, 1).unwrap()),
            ],
        );
        let c = classify(&u, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(!c.commutative);
        assert!(c.commutative_witness.is_some());
        assert!(c.contracommutative);
        assert!(c.saturated_at);
        assert!(!c.balanced_at);
        assert!(c.balanced_witness.is_some());
    }

    #[test]
    fn balanced_implies_other_three_flags() {
        // spot instances; the law suite covers random ones
        let z3_add = FiniteOp::from_table(3, 2, vec![0, 1, 2, 1, 2, 0, 2, 0, 1]).unwrap();
        let p = pres(
            3,
            &[
                ("add", z3_add),
                ("zero", FiniteOp::constant(3, 0, 0).unwrap()),
            ],
        );
        let c = classify(&p, 2, Strategy::Enumerate, DEFAULT_OP_CAP).unwrap();
        assert!(c.balanced_at);
        assert!(c.commutative && c.contracommutative && c.saturated_at);
        assert_eq!(c.commutant_layer_sizes[&1], 3);
        assert_eq!(c.commutant_layer_sizes[&2], 9);
    }
}
