//! Truncated clones: generation from a named generator set, membership with
//! derivation witnesses, and clone comparison.
//!
//! A truncated clone holds, for each arity in its profile, the canonically
//! sorted duplicate-free list of operations obtainable from the generators
//! and projections by superposition. When the profile is the full initial
//! segment `{0..N}` this is exactly the restriction of the untruncated clone
//! to arities <= N, because superposition never raises arity beyond the
//! arities already present. Arbitrary profiles (for example `{1}`) instead
//! model restricted systems of arities - monoid/module actions - and are not
//! truncations of anything larger.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::{superpose, table_len, Carrier, Element, FiniteOp};

/// Default cap on the number of operations held per generated layer.
pub const DEFAULT_OP_CAP: usize = 1_000_000;

/// The set of admitted arities: a subset of `{0..=bound}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityProfile {
    bound: usize,
    arities: BTreeSet<usize>,
}

impl ArityProfile {
    /// The full profile `{0, .., bound}`.
    pub fn full(bound: usize) -> Self {
        ArityProfile {
            bound,
            arities: (0..=bound).collect(),
        }
    }

    pub fn from_set(bound: usize, arities: BTreeSet<usize>) -> Result<Self> {
        if let Some(&max) = arities.iter().next_back() {
            if max > bound {
                return Err(Error::input(format!(
                    "profile contains arity {max} above the bound {bound}"
                )));
            }
        }
        Ok(ArityProfile { bound, arities })
    }

    /// Resolve an optional explicit arity set against a bound: `None` means
    /// the full initial segment.
    pub fn resolve(explicit: Option<&BTreeSet<usize>>, bound: usize) -> Result<Self> {
        match explicit {
            None => Ok(ArityProfile::full(bound)),
            Some(set) => ArityProfile::from_set(bound, set.clone()),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn contains(&self, arity: usize) -> bool {
        self.arities.contains(&arity)
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.arities.iter().copied()
    }

    /// True when the profile is exactly `{0..=bound}`.
    pub fn is_full_segment(&self) -> bool {
        self.arities.len() == self.bound + 1
    }

    pub fn as_set(&self) -> &BTreeSet<usize> {
        &self.arities
    }
}

/// A finite algebra given by its carrier and named generator operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    carrier: Carrier,
    generators: BTreeMap<String, FiniteOp>,
    /// Explicit arity profile; `None` means the full segment up to whatever
    /// bound a computation is run at.
    profile: Option<BTreeSet<usize>>,
    name: Option<String>,
    description: Option<String>,
}

impl AlgebraPresentation {
    pub fn new(carrier: Carrier, generators: BTreeMap<String, FiniteOp>) -> Result<Self> {
        Self::with_profile(carrier, generators, None)
    }

    pub fn with_profile(
        carrier: Carrier,
        generators: BTreeMap<String, FiniteOp>,
        profile: Option<BTreeSet<usize>>,
    ) -> Result<Self> {
        for (name, op) in &generators {
            if op.carrier_size() != carrier.size() {
                return Err(Error::input(format!(
                    "generator {name:?} lives on carrier size {}, presentation carrier is {}",
                    op.carrier_size(),
                    carrier.size()
                )));
            }
            if name.is_empty() {
                return Err(Error::input("generator names must be nonempty"));
            }
            if let Some(set) = &profile {
                if !set.contains(&op.arity()) {
                    return Err(Error::input(format!(
                        "generator {name:?} has arity {} outside the profile {set:?}",
                        op.arity()
                    )));
                }
            }
        }
        Ok(AlgebraPresentation {
            carrier,
            generators,
            profile,
            name: None,
            description: None,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn described(mut self, description: impl Into<String>) -> Self {
        self.description = Some(description.into());
        self
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier.size()
    }

    pub fn generators(&self) -> &BTreeMap<String, FiniteOp> {
        &self.generators
    }

    pub fn generator_ops(&self) -> impl Iterator<Item = &FiniteOp> {
        self.generators.values()
    }

    pub fn profile(&self) -> Option<&BTreeSet<usize>> {
        self.profile.as_ref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_deref()
    }

    pub fn max_generator_arity(&self) -> usize {
        self.generators
            .values()
            .map(FiniteOp::arity)
            .max()
            .unwrap_or(0)
    }

    /// Restrict to an explicit arity profile, keeping only the generators
    /// whose arity lies in it. This is the deliberate way to model a
    /// restricted system of arities (for example the unary profile of a
    /// module acting on itself).
    pub fn restrict_to_profile(&self, arities: BTreeSet<usize>) -> Result<Self> {
        let generators: BTreeMap<String, FiniteOp> = self
            .generators
            .iter()
            .filter(|(_, op)| arities.contains(&op.arity()))
            .map(|(n, op)| (n.clone(), op.clone()))
            .collect();
        let mut restricted =
            AlgebraPresentation::with_profile(self.carrier.clone(), generators, Some(arities))?;
        restricted.name = self.name.clone();
        restricted.description = self.description.clone();
        Ok(restricted)
    }

    /// Same generators under a different profile annotation; every generator
    /// arity must be admitted by the new profile.
    pub fn reprofiled(&self, profile: Option<BTreeSet<usize>>) -> Result<Self> {
        let mut changed = AlgebraPresentation::with_profile(
            self.carrier.clone(),
            self.generators.clone(),
            profile,
        )?;
        changed.name = self.name.clone();
        changed.description = self.description.clone();
        Ok(changed)
    }

    /// Names of generators that an explicit profile would drop.
    pub fn generators_outside(&self, arities: &BTreeSet<usize>) -> Vec<String> {
        self.generators
            .iter()
            .filter(|(_, op)| !arities.contains(&op.arity()))
            .map(|(n, _)| n.clone())
            .collect()
    }
}

/// A term tree witnessing clone membership: how an operation is assembled
/// from named generators and projections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DerivationTerm {
    Generator(String),
    Projection { arity: usize, coord: usize },
    /// `head` applied to `args`; `arity` is the common arity of the args and
    /// of the whole term. It is stored explicitly because a nullary head has
    /// no args to carry it (broadcasting a constant to arity m).
    Compose {
        head: Box<DerivationTerm>,
        args: Vec<DerivationTerm>,
        arity: usize,
    },
}

impl DerivationTerm {
    /// Evaluate over a presentation's generators, reproducing the operation
    /// this term witnesses.
    pub fn evaluate(&self, pres: &AlgebraPresentation) -> Result<FiniteOp> {
        match self {
            DerivationTerm::Generator(name) => pres
                .generators()
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Derivation(format!("unknown generator {name:?}"))),
            DerivationTerm::Projection { arity, coord } => {
                FiniteOp::projection(pres.carrier_size(), *arity, *coord)
            }
            DerivationTerm::Compose { head, args, arity } => {
                let head_op = head.evaluate(pres)?;
                let arg_ops: Vec<FiniteOp> = args
                    .iter()
                    .map(|a| a.evaluate(pres))
                    .collect::<Result<_>>()?;
                superpose(&head_op, &arg_ops, *arity)
            }
        }
    }

    /// Number of nodes, for reporting.
    pub fn size(&self) -> usize {
        match self {
            DerivationTerm::Generator(_) | DerivationTerm::Projection { .. } => 1,
            DerivationTerm::Compose { head, args, .. } => {
                1 + head.size() + args.iter().map(DerivationTerm::size).sum::<usize>()
            }
        }
    }
}

impl std::fmt::Display for DerivationTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DerivationTerm::Generator(name) => write!(f, "{name}"),
            DerivationTerm::Projection { arity, coord } => write!(f, "pi{coord}^{arity}"),
            DerivationTerm::Compose { head, args, .. } => {
                write!(f, "{head}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Per-arity layers of a superposition-closed family of operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedClone {
    carrier: Carrier,
    profile: ArityProfile,
    /// For each arity in the profile: sorted, duplicate-free.
    layers: BTreeMap<usize, Vec<FiniteOp>>,
    /// Closure reached a fixpoint (always true for values built here; kept
    /// as an explicit field so serialized clones carry the claim).
    closure_fixpoint: bool,
}

impl TruncatedClone {
    pub(crate) fn from_layers(
        carrier: Carrier,
        profile: ArityProfile,
        mut layers: BTreeMap<usize, Vec<FiniteOp>>,
    ) -> Self {
        for arity in profile.arities() {
            let layer = layers.entry(arity).or_default();
            layer.sort();
            layer.dedup();
        }
        layers.retain(|arity, _| profile.contains(*arity));
        TruncatedClone {
            carrier,
            profile,
            layers,
            closure_fixpoint: true,
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier.size()
    }

    pub fn profile(&self) -> &ArityProfile {
        &self.profile
    }

    pub fn bound(&self) -> usize {
        self.profile.bound()
    }

    pub fn closure_fixpoint(&self) -> bool {
        self.closure_fixpoint
    }

    pub fn layer(&self, arity: usize) -> &[FiniteOp] {
        self.layers.get(&arity).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn layers(&self) -> impl Iterator<Item = (usize, &[FiniteOp])> {
        self.layers.iter().map(|(a, ops)| (*a, ops.as_slice()))
    }

    pub fn layer_sizes(&self) -> BTreeMap<usize, usize> {
        self.layers.iter().map(|(a, ops)| (*a, ops.len())).collect()
    }

    pub fn total_ops(&self) -> usize {
        self.layers.values().map(Vec::len).sum()
    }

    pub fn iter_ops(&self) -> impl Iterator<Item = &FiniteOp> {
        self.layers.values().flatten()
    }

    /// Membership at the operation's own arity; errors when that arity is
    /// outside the profile.
    pub fn contains(&self, op: &FiniteOp) -> Result<bool> {
        if op.carrier_size() != self.carrier_size() {
            return Err(Error::input(format!(
                "operation carrier size {} does not match clone carrier {}",
                op.carrier_size(),
                self.carrier_size()
            )));
        }
        if !self.profile.contains(op.arity()) {
            return Err(Error::input(format!(
                "arity {} is outside the clone profile",
                op.arity()
            )));
        }
        Ok(self.layer(op.arity()).binary_search(op).is_ok())
    }
}

/// Which input of a two-sided comparison an operation was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// One operation present on one side of a clone comparison but not the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerDiff {
    pub arity: usize,
    pub op: FiniteOp,
    pub found_in: Side,
}

impl std::fmt::Display for LayerDiff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} only in {}", self.op, self.found_in)
    }
}

fn check_comparable(a: &TruncatedClone, b: &TruncatedClone) -> Result<()> {
    if a.carrier_size() != b.carrier_size() {
        return Err(Error::input(format!(
            "clone comparison across carriers {} and {}",
            a.carrier_size(),
            b.carrier_size()
        )));
    }
    if a.bound() != b.bound() {
        return Err(Error::input(format!(
            "clone comparison across bounds {} and {}",
            a.bound(),
            b.bound()
        )));
    }
    if a.profile != b.profile {
        return Err(Error::input("clone comparison across different profiles"));
    }
    Ok(())
}

/// Layerwise inclusion; `Ok(Some(diff))` carries the first missing op.
pub fn clone_subset_witness(a: &TruncatedClone, b: &TruncatedClone) -> Result<Option<LayerDiff>> {
    check_comparable(a, b)?;
    for arity in a.profile.arities() {
        let bl = b.layer(arity);
        for op in a.layer(arity) {
            if bl.binary_search(op).is_err() {
                return Ok(Some(LayerDiff {
                    arity,
                    op: op.clone(),
                    found_in: Side::Left,
                }));
            }
        }
    }
    Ok(None)
}

pub fn clone_subset(a: &TruncatedClone, b: &TruncatedClone) -> Result<bool> {
    Ok(clone_subset_witness(a, b)?.is_none())
}

/// Layerwise equality; the witness is the first op present on exactly one side.
pub fn clone_equal_witness(a: &TruncatedClone, b: &TruncatedClone) -> Result<Option<LayerDiff>> {
    check_comparable(a, b)?;
    if let Some(diff) = clone_subset_witness(a, b)? {
        return Ok(Some(diff));
    }
    for arity in b.profile.arities() {
        let al = a.layer(arity);
        for op in b.layer(arity) {
            if al.binary_search(op).is_err() {
                return Ok(Some(LayerDiff {
                    arity,
                    op: op.clone(),
                    found_in: Side::Right,
                }));
            }
        }
    }
    Ok(None)
}

pub fn clone_equal(a: &TruncatedClone, b: &TruncatedClone) -> Result<bool> {
    Ok(clone_equal_witness(a, b)?.is_none())
}

/// A generated clone together with one derivation witness per member.
#[derive(Debug, Clone)]
pub struct GeneratedClone {
    pub clone: TruncatedClone,
    pub derivations: BTreeMap<FiniteOp, DerivationTerm>,
}

impl GeneratedClone {
    pub fn derivation_of(&self, op: &FiniteOp) -> Option<&DerivationTerm> {
        self.derivations.get(op)
    }
}

/// Membership test carrying the witness when the clone was generated with
/// derivation tracking.
pub fn clone_contains<'a>(
    generated: &'a GeneratedClone,
    op: &FiniteOp,
) -> Result<Option<&'a DerivationTerm>> {
    if generated.clone.contains(op)? {
        Ok(Some(generated.derivations.get(op).ok_or_else(|| {
            Error::InternalInvariant("clone member without a derivation".into())
        })?))
    } else {
        Ok(None)
    }
}

/// Dedup structure for one layer. Tables with a small enough code space use
/// a direct-indexed bitmap; larger ones fall back to hashing.
enum TableSet {
    Direct { bits: Vec<bool>, carrier: usize },
    Hashed(HashSet<Vec<Element>>),
}

const DIRECT_LIMIT: usize = 1 << 22;

impl TableSet {
    fn new(carrier: usize, arity: usize) -> Result<Self> {
        match full_layer_size(carrier, arity) {
            Some(space) if space <= DIRECT_LIMIT => Ok(TableSet::Direct {
                bits: vec![false; space],
                carrier,
            }),
            _ => Ok(TableSet::Hashed(HashSet::new())),
        }
    }

    /// Insert; returns true when the table was new.
    fn insert(&mut self, table: &[Element]) -> bool {
        match self {
            TableSet::Direct { bits, carrier } => {
                let mut code = 0usize;
                for &e in table {
                    code = code * *carrier + e as usize;
                }
                if bits[code] {
                    false
                } else {
                    bits[code] = true;
                    true
                }
            }
            TableSet::Hashed(set) => {
                if set.contains(table) {
                    false
                } else {
                    set.insert(table.to_vec());
                    true
                }
            }
        }
    }
}

/// How many distinct tables exist at this carrier and arity, when that count
/// fits in a usize.
pub fn full_layer_size(carrier: usize, arity: usize) -> Option<usize> {
    let len: u32 = table_len(carrier, arity).ok()?.try_into().ok()?;
    carrier.checked_pow(len)
}

/// Advance a tuple of member indexes below `base` in lexicographic order.
fn advance_indexes(idxs: &mut [usize], base: usize) -> bool {
    for pos in (0..idxs.len()).rev() {
        idxs[pos] += 1;
        if idxs[pos] < base {
            return true;
        }
        idxs[pos] = 0;
    }
    false
}

struct LayerState {
    members: Vec<FiniteOp>,
    terms: Vec<DerivationTerm>,
    seen: TableSet,
    full_size: Option<usize>,
}

impl LayerState {
    fn is_full(&self) -> bool {
        self.full_size == Some(self.members.len())
    }

    fn push(
        &mut self,
        arity: usize,
        op_cap: usize,
        op: FiniteOp,
        term: impl FnOnce() -> DerivationTerm,
    ) -> Result<bool> {
        if self.seen.insert(op.table()) {
            if self.members.len() >= op_cap {
                return Err(Error::resource(format!(
                    "layer at arity {arity} exceeds the op cap {op_cap}"
                )));
            }
            self.members.push(op);
            self.terms.push(term());
            Ok(true)
        } else {
            Ok(false)
        }
    }
}

/// Generate the truncated clone of a presentation at the given bound,
/// together with one derivation term per member.
///
/// The closure works per target arity: the layer at arity m is the closure
/// of the m-ary projections, the broadcasts of the (already closed) nullary
/// layer, and the m-ary generators, under application of each generator at
/// the root. Worklist order is canonical (rounds; generators in name order;
/// argument index tuples in lexicographic order), so the derivation chosen
/// for each member is deterministic. Layers holding every possible table
/// short-circuit: nothing new can land in them.
///
/// Presentations with very many generators (layer dumps, commutant members)
/// are first reduced to a generating subset; the closure of that subset is
/// the same clone, and every original generator keeps its own name as its
/// derivation witness.
pub fn generate_clone(
    pres: &AlgebraPresentation,
    bound: usize,
    op_cap: usize,
) -> Result<GeneratedClone> {
    generate_clone_inner(pres, bound, op_cap, true)
}

const REDUCTION_THRESHOLD: usize = 32;

fn generate_clone_reduced(
    pres: &AlgebraPresentation,
    bound: usize,
    op_cap: usize,
) -> Result<GeneratedClone> {
    let profile_set = pres.profile().cloned();
    let mut active: BTreeMap<String, FiniteOp> = BTreeMap::new();
    let mut current = generate_clone_inner(
        &AlgebraPresentation::with_profile(
            pres.carrier().clone(),
            BTreeMap::new(),
            profile_set.clone(),
        )?,
        bound,
        op_cap,
        false,
    )?;
    for (name, op) in pres.generators() {
        if op.arity() > bound {
            return Err(Error::input(format!(
                "generator {name:?} has arity {} above the bound {bound}",
                op.arity()
            )));
        }
        if !current.clone.contains(op)? {
            active.insert(name.clone(), op.clone());
            current = generate_clone_inner(
                &AlgebraPresentation::with_profile(
                    pres.carrier().clone(),
                    active.clone(),
                    profile_set.clone(),
                )?,
                bound,
                op_cap,
                false,
            )?;
        }
    }
    // every original generator is witnessed by its own name unless the seed
    // order already assigned it a projection or an earlier generator name
    let mut derivations = current.derivations;
    for (name, op) in pres.generators().iter().rev() {
        if !matches!(
            derivations.get(op),
            Some(DerivationTerm::Projection { .. }) | Some(DerivationTerm::Generator(_))
        ) {
            derivations.insert(op.clone(), DerivationTerm::Generator(name.clone()));
        }
    }
    Ok(GeneratedClone {
        clone: current.clone,
        derivations,
    })
}

fn generate_clone_inner(
    pres: &AlgebraPresentation,
    bound: usize,
    op_cap: usize,
    allow_reduction: bool,
) -> Result<GeneratedClone> {
    if allow_reduction && pres.generators().len() > REDUCTION_THRESHOLD {
        return generate_clone_reduced(pres, bound, op_cap);
    }
    let profile = ArityProfile::resolve(pres.profile(), bound)?;
    let k = pres.carrier_size();
    let gens: Vec<(&String, &FiniteOp)> = pres.generators().iter().collect();
    for (name, op) in &gens {
        if op.arity() > bound {
            return Err(Error::input(format!(
                "generator {name:?} has arity {} above the bound {bound}",
                op.arity()
            )));
        }
        if !profile.contains(op.arity()) {
            return Err(Error::input(format!(
                "generator {name:?} has arity {} outside the profile",
                op.arity()
            )));
        }
    }

    let mut layers: BTreeMap<usize, Vec<FiniteOp>> = BTreeMap::new();
    let mut derivations: BTreeMap<FiniteOp, DerivationTerm> = BTreeMap::new();
    // The nullary layer is closed first (profile arities ascend); its members
    // seed every later layer as constants.
    let mut nullary_members: Vec<(FiniteOp, DerivationTerm)> = Vec::new();

    for arity in profile.arities() {
        let mut state = LayerState {
            members: Vec::new(),
            terms: Vec::new(),
            seen: TableSet::new(k, arity)?,
            full_size: full_layer_size(k, arity),
        };

        for coord in 1..=arity {
            let p = FiniteOp::projection(k, arity, coord)?;
            state.push(arity, op_cap, p, || DerivationTerm::Projection {
                arity,
                coord,
            })?;
        }
        if arity > 0 {
            for (c, term) in &nullary_members {
                let broadcast = superpose(c, &[], arity)?;
                state.push(arity, op_cap, broadcast, || DerivationTerm::Compose {
                    head: Box::new(term.clone()),
                    args: Vec::new(),
                    arity,
                })?;
            }
        }
        for (name, op) in &gens {
            if op.arity() == arity {
                state.push(arity, op_cap, (*op).clone(), || {
                    DerivationTerm::Generator((*name).clone())
                })?;
            }
        }

        let len = table_len(k, arity)?;
        let mut frontier = 0usize;
        let mut inner: Vec<Element> = Vec::new();
        let mut buf: Vec<Element> = Vec::with_capacity(len);

        'closure: while frontier < state.members.len() && !state.is_full() {
            let round_start = frontier;
            let round_end = state.members.len();
            frontier = round_end;
            for (name, g) in &gens {
                let j = g.arity();
                if j == 0 {
                    continue; // nullary generators only seed
                }
                inner.resize(j, 0);
                let mut idxs = vec![0usize; j];
                loop {
                    if idxs.iter().any(|&i| i >= round_start) {
                        buf.clear();
                        for entry in 0..len {
                            for (slot, &mi) in inner.iter_mut().zip(idxs.iter()) {
                                *slot = state.members[mi].table()[entry];
                            }
                            buf.push(g.eval_raw(&inner));
                        }
                        if state.seen.insert(&buf) {
                            if state.members.len() >= op_cap {
                                return Err(Error::resource(format!(
                                    "layer at arity {arity} exceeds the op cap {op_cap}"
                                )));
                            }
                            let op = FiniteOp::from_table(k, arity, buf.clone())?;
                            let term = DerivationTerm::Compose {
                                head: Box::new(DerivationTerm::Generator((*name).clone())),
                                args: idxs.iter().map(|&i| state.terms[i].clone()).collect(),
                                arity,
                            };
                            state.members.push(op);
                            state.terms.push(term);
                            if state.is_full() {
                                break 'closure;
                            }
                        }
                    }
                    if !advance_indexes(&mut idxs, round_end) {
                        break;
                    }
                }
            }
        }

        if arity == 0 {
            nullary_members = state
                .members
                .iter()
                .cloned()
                .zip(state.terms.iter().cloned())
                .collect();
        }
        for (op, term) in state.members.iter().zip(state.terms.drain(..)) {
            derivations.insert(op.clone(), term);
        }
        layers.insert(arity, state.members);
    }

    let clone = TruncatedClone::from_layers(pres.carrier().clone(), profile, layers);
    Ok(GeneratedClone { clone, derivations })
}

/// Wrap a clone's layers as a presentation whose generators are all members,
/// with deterministic names `g{arity}_{index}` following canonical layer
/// order. The profile stays explicit unless it is the full segment.
pub fn presentation_from_clone(clone: &TruncatedClone) -> AlgebraPresentation {
    let mut generators = BTreeMap::new();
    for (arity, ops) in clone.layers() {
        for (i, op) in ops.iter().enumerate() {
            generators.insert(format!("g{arity}_{i}"), op.clone());
        }
    }
    let profile = if clone.profile().is_full_segment() {
        None
    } else {
        Some(clone.profile().as_set().clone())
    };
    AlgebraPresentation::with_profile(clone.carrier().clone(), generators, profile)
        .expect("clone members are valid generators by construction")
}

/// Greedily pick a small generating subset of a clone's members: walk the
/// layers in canonical order and keep each op not yet generated by the ops
/// kept so far. The returned presentation generates a clone containing every
/// member of the input, so it can stand in for the full member list wherever
/// only the generated clone matters.
pub fn reduce_generators(clone: &TruncatedClone, op_cap: usize) -> Result<AlgebraPresentation> {
    let profile_set = if clone.profile().is_full_segment() {
        None
    } else {
        Some(clone.profile().as_set().clone())
    };
    let mut kept: BTreeMap<String, FiniteOp> = BTreeMap::new();
    let mut current = generate_clone(
        &AlgebraPresentation::with_profile(
            clone.carrier().clone(),
            BTreeMap::new(),
            profile_set.clone(),
        )?,
        clone.bound(),
        op_cap,
    )?;
    let mut counter = 0usize;
    for (arity, ops) in clone.layers() {
        for op in ops {
            if !current.clone.contains(op)? {
                kept.insert(format!("r{arity}_{counter}"), op.clone());
                counter += 1;
                current = generate_clone(
                    &AlgebraPresentation::with_profile(
                        clone.carrier().clone(),
                        kept.clone(),
                        profile_set.clone(),
                    )?,
                    clone.bound(),
                    op_cap,
                )?;
            }
        }
    }
    AlgebraPresentation::with_profile(clone.carrier().clone(), kept, profile_set)
}

/// Whether a family of layers is a clone: projections present and the layers
/// stable under regeneration from a reduced generating subset. Exact, and
/// fast even when layers are large.
pub fn is_clone(layers: &TruncatedClone, op_cap: usize) -> Result<bool> {
    let k = layers.carrier_size();
    for arity in layers.profile().arities() {
        if arity == 0 {
            continue;
        }
        let layer = layers.layer(arity);
        for coord in 1..=arity {
            let p = FiniteOp::projection(k, arity, coord)?;
            if layer.binary_search(&p).is_err() {
                return Ok(false);
            }
        }
    }
    let reduced = reduce_generators(layers, op_cap)?;
    let regenerated = generate_clone(&reduced, layers.bound(), op_cap)?;
    clone_equal(layers, &regenerated.clone)
}

/// The spec-level closure condition checked literally: for every f in layer n
/// and every n-tuple gs from layer m, the superposition lands in layer m.
/// Exponential in layer sizes; test-scale inputs only. Layers already holding
/// every possible table are closed by counting.
pub fn is_superposition_closed(clone: &TruncatedClone) -> Result<bool> {
    let k = clone.carrier_size();
    for arity in clone.profile().arities() {
        if arity == 0 {
            continue;
        }
        let layer = clone.layer(arity);
        for coord in 1..=arity {
            let p = FiniteOp::projection(k, arity, coord)?;
            if layer.binary_search(&p).is_err() {
                return Ok(false);
            }
        }
    }
    let arities: Vec<usize> = clone.profile().arities().collect();
    for &n in &arities {
        for &m in &arities {
            let target = clone.layer(m);
            if full_layer_size(k, m) == Some(target.len()) {
                continue;
            }
            if n > 0 && target.is_empty() {
                continue; // no n-tuples to draw
            }
            for f in clone.layer(n) {
                let mut idxs = vec![0usize; n];
                loop {
                    let args: Vec<FiniteOp> = idxs.iter().map(|&i| target[i].clone()).collect();
                    let composed = superpose(f, &args, m)?;
                    if target.binary_search(&composed).is_err() {
                        return Ok(false);
                    }
                    if n == 0 || !advance_indexes(&mut idxs, target.len()) {
                        break;
                    }
                }
            }
        }
    }
    Ok(true)
}
