//! Built-in presentations: module, affine and pointed-module structures over
//! small rigs, and the chain semilattice family. Every constructor validates
//! the rig axioms exhaustively before emitting operations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clone::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::ops::{Carrier, Element, FiniteOp};

/// A finite rig (unital semiring) presented by its addition and
/// multiplication tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigTable {
    name: String,
    carrier_size: usize,
    add: FiniteOp,
    mul: FiniteOp,
    zero: Element,
    one: Element,
}

/// Rig axioms in the canonical order validation walks them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RigAxiom {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    MulAssociative,
    MulIdentity,
    LeftDistributive,
    RightDistributive,
    ZeroAnnihilates,
}

impl std::fmt::Display for RigAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            RigAxiom::AddAssociative => "add-associative",
            RigAxiom::AddCommutative => "add-commutative",
            RigAxiom::AddIdentity => "add-identity",
            RigAxiom::MulAssociative => "mul-associative",
            RigAxiom::MulIdentity => "mul-identity",
            RigAxiom::LeftDistributive => "left-distributive",
            RigAxiom::RightDistributive => "right-distributive",
            RigAxiom::ZeroAnnihilates => "zero-annihilates",
        };
        write!(f, "{name}")
    }
}

/// First rig axiom violation in canonical axiom order, with the witnessing
/// tuple in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: RigAxiom,
    pub witness: Vec<Element>,
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

impl RigTable {
    pub fn new(
        name: impl Into<String>,
        carrier_size: usize,
        add: FiniteOp,
        mul: FiniteOp,
        zero: Element,
        one: Element,
    ) -> Result<Self> {
        for (label, op) in [("add", &add), ("mul", &mul)] {
            if op.carrier_size() != carrier_size || op.arity() != 2 {
                return Err(Error::input(format!(
                    "rig {label} table must be binary on carrier size {carrier_size}"
                )));
            }
        }
        if (zero as usize) >= carrier_size || (one as usize) >= carrier_size {
            return Err(Error::input("rig constants out of range"));
        }
        Ok(RigTable {
            name: name.into(),
            carrier_size,
            add,
            mul,
            zero,
            one,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn zero(&self) -> Element {
        self.zero
    }

    pub fn one(&self) -> Element {
        self.one
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        self.add.eval_raw(&[a, b])
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mul.eval_raw(&[a, b])
    }

    fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.carrier_size as u8).map(|e| e as Element)
    }

    /// Check every rig axiom exhaustively; the first violation in canonical
    /// axiom order (lexicographic tuples within an axiom) is returned.
    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        let fail = |axiom, witness: &[Element]| AxiomViolation {
            axiom,
            witness: witness.to_vec(),
        };
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(fail(RigAxiom::AddAssociative, &[a, b, c]));
                    }
                }
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(fail(RigAxiom::AddCommutative, &[a, b]));
                }
            }
        }
        for a in self.elements() {
            if self.add(self.zero, a) != a || self.add(a, self.zero) != a {
                return Err(fail(RigAxiom::AddIdentity, &[a]));
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(fail(RigAxiom::MulAssociative, &[a, b, c]));
                    }
                }
            }
        }
        for a in self.elements() {
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(fail(RigAxiom::MulIdentity, &[a]));
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(fail(RigAxiom::LeftDistributive, &[a, b, c]));
                    }
                }
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(fail(RigAxiom::RightDistributive, &[a, b, c]));
                    }
                }
            }
        }
        for a in self.elements() {
            if self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero {
                return Err(fail(RigAxiom::ZeroAnnihilates, &[a]));
            }
        }
        Ok(())
    }

    pub fn is_mul_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn validated(&self) -> Result<()> {
        self.validate()
            .map_err(|v| Error::input(format!("rig {:?} is not valid: {v}", self.name)))
    }
}

/// The boolean rig on {0,1}: join as addition, meet as multiplication.
pub fn boolean_rig() -> RigTable {
    RigTable::new(
        "rig2",
        2,
        FiniteOp::from_table(2, 2, vec![0, 1, 1, 1]).unwrap(),
        FiniteOp::from_table(2, 2, vec![0, 0, 0, 1]).unwrap(),
        0,
        1,
    )
    .unwrap()
}

/// The ring of integers mod m, 2 <= m <= 6 for the built-in catalog.
pub fn z_mod(m: usize) -> Result<RigTable> {
    if !(2..=6).contains(&m) {
        return Err(Error::input(format!(
            "z{m} is outside the built-in range 2..=6"
        )));
    }
    let mut add = vec![0u8; m * m];
    let mut mul = vec![0u8; m * m];
    for a in 0..m {
        for b in 0..m {
            add[a * m + b] = ((a + b) % m) as u8;
            mul[a * m + b] = ((a * b) % m) as u8;
        }
    }
    RigTable::new(
        format!("z{m}"),
        m,
        FiniteOp::from_table(m, 2, add)?,
        FiniteOp::from_table(m, 2, mul)?,
        0,
        1,
    )
}

/// The 3-chain distributive lattice as a rig: max as addition, min as
/// multiplication, bottom 0, top 2.
pub fn chain3_rig() -> RigTable {
    let mut add = vec![0u8; 9];
    let mut mul = vec![0u8; 9];
    for a in 0..3usize {
        for b in 0..3usize {
            add[a * 3 + b] = a.max(b) as u8;
            mul[a * 3 + b] = a.min(b) as u8;
        }
    }
    RigTable::new(
        "chain3",
        3,
        FiniteOp::from_table(3, 2, add).unwrap(),
        FiniteOp::from_table(3, 2, mul).unwrap(),
        0,
        2,
    )
    .unwrap()
}

/// All built-in rigs in catalog order.
pub fn builtin_rigs() -> Vec<RigTable> {
    let mut rigs = vec![boolean_rig()];
    for m in 2..=6 {
        rigs.push(z_mod(m).unwrap());
    }
    rigs.push(chain3_rig());
    rigs
}

/// Generators for the rig acting on itself as a left module:
/// addition, the zero constant, and one unary scalar action per element.
pub fn module_presentation(rig: &RigTable) -> Result<AlgebraPresentation> {
    rig.validated()?;
    let k = rig.carrier_size();
    let mut gens = BTreeMap::new();
    gens.insert("add".to_string(), rig.add.clone());
    gens.insert("zero".to_string(), FiniteOp::constant(k, 0, rig.zero)?);
    for s in 0..k as u8 {
        let table: Vec<Element> = (0..k as u8).map(|x| rig.mul(s, x)).collect();
        gens.insert(format!("scalar_{s}"), FiniteOp::from_table(k, 1, table)?);
    }
    Ok(AlgebraPresentation::new(Carrier::new(k)?, gens)?
        .named(format!("{}.module", rig.name))
        .described(format!("{} acting on itself as a left module", rig.name)))
}

/// Generators for the affine combinations over a commutative rig: for every
/// arity n <= max_arity, one operation per coefficient row summing to one.
/// Sums are folded left to right; commutativity of the rig multiplication is
/// required so the reading order is immaterial.
pub fn affine_presentation(rig: &RigTable, max_arity: usize) -> Result<AlgebraPresentation> {
    rig.validated()?;
    if !rig.is_mul_commutative() {
        return Err(Error::input(format!(
            "rig {:?} has non-commutative multiplication; affine combinations are not supported",
            rig.name
        )));
    }
    let k = rig.carrier_size();
    let mut gens = BTreeMap::new();
    for arity in 0..=max_arity {
        let mut row = vec![0u8; arity];
        loop {
            let row_sum = row.iter().fold(rig.zero, |acc, &s| rig.add(acc, s));
            if row_sum == rig.one {
                let len = crate::ops::table_len(k, arity)?;
                let mut table = Vec::with_capacity(len);
                for idx in 0..len {
                    let args = crate::ops::decode_tuple(idx, k, arity)?;
                    let value = row
                        .iter()
                        .zip(args.iter())
                        .fold(rig.zero, |acc, (&s, &x)| rig.add(acc, rig.mul(s, x)));
                    table.push(value);
                }
                let name = if arity == 0 {
                    "aff".to_string()
                } else {
                    let digits: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                    format!("aff_{}", digits.join("_"))
                };
                gens.insert(name, FiniteOp::from_table(k, arity, table)?);
            }
            if arity == 0 || !crate::ops::odometer_step(&mut row, k) {
                break;
            }
        }
    }
    Ok(AlgebraPresentation::new(Carrier::new(k)?, gens)?
        .named(format!("{}.affine", rig.name))
        .described(format!(
            "affine combinations over {} up to arity {max_arity}",
            rig.name
        )))
}

/// Module generators plus the one constant: the pointed module structure.
pub fn pointed_module_presentation(rig: &RigTable) -> Result<AlgebraPresentation> {
    let module = module_presentation(rig)?;
    let k = rig.carrier_size();
    let mut gens = module.generators().clone();
    gens.insert("one".to_string(), FiniteOp::constant(k, 0, rig.one)?);
    Ok(AlgebraPresentation::new(Carrier::new(k)?, gens)?
        .named(format!("{}.pointed", rig.name))
        .described(format!(
            "{} as a pointed module over itself",
            rig.name
        )))
}

/// Which constants accompany the chain join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SemilatticeKind {
    Join,
    JoinBot,
    JoinBotTop,
}

impl SemilatticeKind {
    pub fn catalog_key(&self) -> &'static str {
        match self {
            SemilatticeKind::Join => "join",
            SemilatticeKind::JoinBot => "join_bot",
            SemilatticeKind::JoinBotTop => "join_bot_top",
        }
    }
}

/// The k-chain with max as join, optionally with bottom and top constants.
pub fn semilattice_presentation(kind: SemilatticeKind, k: usize) -> Result<AlgebraPresentation> {
    if k < 2 {
        return Err(Error::input(format!(
            "semilattice chains need at least 2 elements, got {k}"
        )));
    }
    let mut table = vec![0u8; k * k];
    for a in 0..k {
        for b in 0..k {
            table[a * k + b] = a.max(b) as u8;
        }
    }
    let mut gens = BTreeMap::new();
    gens.insert("join".to_string(), FiniteOp::from_table(k, 2, table)?);
    match kind {
        SemilatticeKind::Join => {}
        SemilatticeKind::JoinBot => {
            gens.insert("bot".to_string(), FiniteOp::constant(k, 0, 0)?);
        }
        SemilatticeKind::JoinBotTop => {
            gens.insert("bot".to_string(), FiniteOp::constant(k, 0, 0)?);
            gens.insert("top".to_string(), FiniteOp::constant(k, 0, (k - 1) as u8)?);
        }
    }
    Ok(AlgebraPresentation::new(Carrier::new(k)?, gens)?
        .named(format!("slat.{}.{k}", kind.catalog_key()))
        .described(format!("{k}-chain join semilattice ({})", kind.catalog_key())))
}

/// Catalog names resolvable by [`resolve`], in deterministic order. The
/// semilattice family accepts any chain size >= 2; the listing shows sizes
/// 2 through 6.
pub fn catalog() -> Vec<String> {
    let mut names = Vec::new();
    for rig in builtin_rigs() {
        for kind in ["module", "affine", "pointed"] {
            names.push(format!("{}.{kind}", rig.name()));
        }
    }
    for kind in ["join", "join_bot", "join_bot_top"] {
        for k in 2..=6 {
            names.push(format!("slat.{kind}.{k}"));
        }
    }
    names
}

/// Resolve a catalog name. `affine_bound` sets the arity sweep for affine
/// entries (their generator set depends on it).
pub fn resolve(name: &str, affine_bound: usize) -> Result<AlgebraPresentation> {
    let parts: Vec<&str> = name.split('.').collect();
    match parts.as_slice() {
        [rig_name, kind] => {
            let rig = builtin_rigs()
                .into_iter()
                .find(|r| r.name() == *rig_name)
                .ok_or_else(|| Error::input(format!("unknown rig {rig_name:?} in {name:?}")))?;
            match *kind {
                "module" => module_presentation(&rig),
                "affine" => affine_presentation(&rig, affine_bound),
                "pointed" => pointed_module_presentation(&rig),
                other => Err(Error::input(format!(
                    "unknown presentation kind {other:?} in {name:?}"
                ))),
            }
        }
        ["slat", kind, size] => {
            let k: usize = size
                .parse()
                .map_err(|_| Error::input(format!("bad chain size {size:?} in {name:?}")))?;
            let kind = match *kind {
                "join" => SemilatticeKind::Join,
                "join_bot" => SemilatticeKind::JoinBot,
                "join_bot_top" => SemilatticeKind::JoinBotTop,
                other => Err(Error::input(format!(
                    "unknown semilattice kind {other:?} in {name:?}"
                )))?,
            };
            semilattice_presentation(kind, k)
        }
        _ => Err(Error::input(format!("unknown library name {name:?}"))),
    }
}
