//! Finitary operations on a finite carrier, stored as dense tables.
//!
//! An `n`-ary operation on a `k`-element carrier is a flat table of `k^n`
//! entries indexed by the big-endian mixed-radix encoding of the argument
//! tuple (leftmost argument most significant). Nullary operations are
//! first-class: arity 0, table of exactly one entry.
//!
//! Everything here is immutable after construction and safe to share.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Carrier elements are 0-based integers. Labels, when a carrier has them,
/// are display-only.
pub type Element = u8;

/// Largest representable carrier; elements must fit in `Element`.
pub const MAX_CARRIER: usize = 256;

/// A finite carrier set `{0, 1, .., size-1}` with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Carrier {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Carrier {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::input("carrier size must be at least 1"));
        }
        if size > MAX_CARRIER {
            return Err(Error::input(format!(
                "carrier size {size} exceeds the supported maximum {MAX_CARRIER}"
            )));
        }
        Ok(Carrier { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut carrier = Carrier::new(labels.len())?;
        let mut seen = std::collections::BTreeSet::new();
        for label in &labels {
            if !seen.insert(label) {
                return Err(Error::input(format!("duplicate carrier label {label:?}")));
            }
        }
        carrier.labels = Some(labels);
        Ok(carrier)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, element: Element) -> String {
        match &self.labels {
            Some(labels) if (element as usize) < labels.len() => labels[element as usize].clone(),
            _ => element.to_string(),
        }
    }
}

/// `k^n` with overflow checking, as a table length.
pub fn table_len(carrier_size: usize, arity: usize) -> Result<usize> {
    carrier_size
        .checked_pow(u32::try_from(arity).map_err(|_| Error::input("arity too large"))?)
        .ok_or_else(|| {
            Error::resource(format!(
                "table of size {carrier_size}^{arity} does not fit in memory"
            ))
        })
}

/// Big-endian mixed-radix index of a tuple: `idx = sum(t[i] * k^(n-1-i))`.
pub fn encode_tuple(tuple: &[Element], carrier_size: usize) -> Result<usize> {
    let mut idx = 0usize;
    for &t in tuple {
        if (t as usize) >= carrier_size {
            return Err(Error::input(format!(
                "tuple element {t} out of range for carrier size {carrier_size}"
            )));
        }
        idx = idx
            .checked_mul(carrier_size)
            .and_then(|v| v.checked_add(t as usize))
            .ok_or_else(|| Error::resource("tuple index overflow"))?;
    }
    Ok(idx)
}

/// Exact inverse of [`encode_tuple`] for tuples of length `arity`.
pub fn decode_tuple(mut index: usize, carrier_size: usize, arity: usize) -> Result<Vec<Element>> {
    let len = table_len(carrier_size, arity)?;
    if index >= len {
        return Err(Error::input(format!(
            "index {index} out of range for {carrier_size}^{arity} tuples"
        )));
    }
    let mut tuple = vec![0u8; arity];
    for slot in tuple.iter_mut().rev() {
        *slot = (index % carrier_size) as Element;
        index /= carrier_size;
    }
    Ok(tuple)
}

/// An `arity`-ary operation on a carrier of `carrier_size` elements.
///
/// Canonical order is lexicographic on `(arity, table)`, so sorted layers
/// are deterministic and set equality is sorted-list equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteOp {
    carrier_size: usize,
    arity: usize,
    table: Vec<Element>,
}

impl FiniteOp {
    pub fn from_table(carrier_size: usize, arity: usize, table: Vec<Element>) -> Result<Self> {
        if carrier_size == 0 || carrier_size > MAX_CARRIER {
            return Err(Error::input(format!("invalid carrier size {carrier_size}")));
        }
        let expected = table_len(carrier_size, arity)?;
        if table.len() != expected {
            return Err(Error::input(format!(
                "table has {} entries, expected {carrier_size}^{arity} = {expected}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| (e as usize) >= carrier_size) {
            return Err(Error::input(format!(
                "table entry {bad} out of range for carrier size {carrier_size}"
            )));
        }
        Ok(FiniteOp {
            carrier_size,
            arity,
            table,
        })
    }

    /// The i-th of the n projections, with `coord` 1-based in `[1, n]`.
    pub fn projection(carrier_size: usize, arity: usize, coord: usize) -> Result<Self> {
        if arity == 0 || coord == 0 || coord > arity {
            return Err(Error::input(format!(
                "projection coordinate {coord} out of range for arity {arity}"
            )));
        }
        let len = table_len(carrier_size, arity)?;
        let mut table = vec![0u8; len];
        // Entry at tuple t is t[coord-1]; walk tuples with an odometer.
        let mut tuple = vec![0u8; arity];
        for slot in table.iter_mut() {
            *slot = tuple[coord - 1];
            odometer_step(&mut tuple, carrier_size);
        }
        FiniteOp::from_table(carrier_size, arity, table)
    }

    /// The `arity`-ary constant with the given value (arity 0 gives a nullary).
    pub fn constant(carrier_size: usize, arity: usize, value: Element) -> Result<Self> {
        if (value as usize) >= carrier_size {
            return Err(Error::input(format!(
                "constant value {value} out of range for carrier size {carrier_size}"
            )));
        }
        let len = table_len(carrier_size, arity)?;
        FiniteOp::from_table(carrier_size, arity, vec![value; len])
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    /// Evaluate on a tuple, checking arity and element ranges.
    pub fn apply(&self, tuple: &[Element]) -> Result<Element> {
        if tuple.len() != self.arity {
            return Err(Error::input(format!(
                "operation of arity {} applied to {} arguments",
                self.arity,
                tuple.len()
            )));
        }
        Ok(self.table[encode_tuple(tuple, self.carrier_size)?])
    }

    /// Evaluate without range checks; arguments must already be valid.
    #[inline]
    pub(crate) fn eval_raw(&self, tuple: &[Element]) -> Element {
        debug_assert_eq!(tuple.len(), self.arity);
        let mut idx = 0usize;
        for &t in tuple {
            debug_assert!((t as usize) < self.carrier_size);
            idx = idx * self.carrier_size + t as usize;
        }
        self.table[idx]
    }

    pub fn is_projection(&self) -> Option<usize> {
        (1..=self.arity).find(|&coord| {
            FiniteOp::projection(self.carrier_size, self.arity, coord)
                .map(|p| p == *self)
                .unwrap_or(false)
        })
    }
}

impl PartialOrd for FiniteOp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteOp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.arity, &self.table, self.carrier_size).cmp(&(
            other.arity,
            &other.table,
            other.carrier_size,
        ))
    }
}

impl std::fmt::Display for FiniteOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-ary[", self.arity)?;
        for (i, e) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Advance a tuple in big-endian lexicographic order (rightmost fastest).
/// Returns false after wrapping past the last tuple.
pub(crate) fn odometer_step(tuple: &mut [Element], carrier_size: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        if (*slot as usize) + 1 < carrier_size {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// Composition in the full theory of the carrier:
/// `result(x) = f(g_1(x), .., g_n(x))` for every `result_arity`-tuple `x`.
///
/// `gs` must have exactly `f.arity` entries, all of arity `result_arity`.
/// With `f` nullary the result is the `result_arity`-ary constant `f()`,
/// which is why the target arity is an explicit argument.
pub fn superpose(f: &FiniteOp, gs: &[FiniteOp], result_arity: usize) -> Result<FiniteOp> {
    if gs.len() != f.arity {
        return Err(Error::input(format!(
            "superpose: outer arity {} but {} inner operations",
            f.arity,
            gs.len()
        )));
    }
    let k = f.carrier_size;
    for g in gs {
        if g.carrier_size != k {
            return Err(Error::input(format!(
                "superpose: carrier mismatch ({} vs {})",
                g.carrier_size, k
            )));
        }
        if g.arity != result_arity {
            return Err(Error::input(format!(
                "superpose: inner operation has arity {}, expected {result_arity}",
                g.arity
            )));
        }
    }
    let len = table_len(k, result_arity)?;
    let mut table = Vec::with_capacity(len);
    let mut inner = vec![0u8; f.arity];
    for idx in 0..len {
        // All inner tables share the same indexing, so no tuple decode is needed.
        for (slot, g) in inner.iter_mut().zip(gs) {
            *slot = g.table[idx];
        }
        table.push(f.eval_raw(&inner));
    }
    FiniteOp::from_table(k, result_arity, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(k: usize, arity: usize, table: &[u8]) -> FiniteOp {
        FiniteOp::from_table(k, arity, table.to_vec()).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_tuple(&[], 2).unwrap(), 0);
        assert_eq!(encode_tuple(&[1, 0], 2).unwrap(), 2);
        assert_eq!(encode_tuple(&[2, 1], 3).unwrap(), 7);
        assert!(encode_tuple(&[2], 2).is_err());
    }

    #[test]
    fn encode_decode_roundtrip_exhaustive() {
        for k in 1..=3usize {
            for n in 0..=3usize {
                let len = table_len(k, n).unwrap();
                for idx in 0..len {
                    let tuple = decode_tuple(idx, k, n).unwrap();
                    assert_eq!(encode_tuple(&tuple, k).unwrap(), idx);
                }
                // and the other direction over all tuples
                let mut tuple = vec![0u8; n];
                loop {
                    let idx = encode_tuple(&tuple, k).unwrap();
                    assert_eq!(decode_tuple(idx, k, n).unwrap(), tuple);
                    if !odometer_step(&mut tuple, k) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        let join = op(2, 2, &[0, 1, 1, 1]);
        assert_eq!(join.apply(&[0, 1]).unwrap(), 1);

        let p1 = FiniteOp::projection(2, 2, 1).unwrap();
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(p1.apply(&[a, b]).unwrap(), a);
            }
        }

        let c0 = FiniteOp::constant(3, 0, 0).unwrap();
        assert_eq!(c0.apply(&[]).unwrap(), 0);
        assert!(join.apply(&[0]).is_err());
    }

    #[test]
    fn projection_tables() {
        assert_eq!(FiniteOp::projection(2, 1, 1).unwrap().table(), &[0, 1]);
        assert_eq!(
            FiniteOp::projection(2, 2, 2).unwrap().table(),
            &[0, 1, 0, 1]
        );
        assert_eq!(
            FiniteOp::projection(3, 2, 1).unwrap().table(),
            &[0, 0, 0, 1, 1, 1, 2, 2, 2]
        );
        assert!(FiniteOp::projection(2, 2, 3).is_err());
        assert!(FiniteOp::projection(2, 0, 1).is_err());
    }

    #[test]
    fn projection_law() {
        // apply(projection(n,i,k), t) = t[i-1] for all t, small exhaustive sweep
        for k in 2..=3usize {
            for n in 1..=3usize {
                for coord in 1..=n {
                    let p = FiniteOp::projection(k, n, coord).unwrap();
                    let mut tuple = vec![0u8; n];
                    loop {
                        assert_eq!(p.apply(&tuple).unwrap(), tuple[coord - 1]);
                        if !odometer_step(&mut tuple, k) {
                            break;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn superpose_examples() {
        let join = op(2, 2, &[0, 1, 1, 1]);
        let p1 = FiniteOp::projection(2, 2, 1).unwrap();
        let p2 = FiniteOp::projection(2, 2, 2).unwrap();

        // projection law: superpose(pi_i, gs) = gs[i-1]
        assert_eq!(
            superpose(&p1, &[join.clone(), p2.clone()], 2).unwrap(),
            join
        );
        // identity substitution
        assert_eq!(
            superpose(&join, &[p1.clone(), p2.clone()], 2).unwrap(),
            join
        );
        // idempotence of join: join(x, x) = x = pi_1^2 applied twice over p1
        assert_eq!(superpose(&join, &[p1.clone(), p1.clone()], 2).unwrap(), p1);
        // nullary broadcast
        let c1 = FiniteOp::constant(2, 0, 1).unwrap();
        assert_eq!(
            superpose(&c1, &[], 2).unwrap(),
            FiniteOp::constant(2, 2, 1).unwrap()
        );
    }

    #[test]
    fn superpose_mismatch_errors() {
        let join = op(2, 2, &[0, 1, 1, 1]);
        let p1 = FiniteOp::projection(2, 2, 1).unwrap();
        let id3 = FiniteOp::projection(3, 1, 1).unwrap();
        assert!(superpose(&join, &[p1.clone()], 2).is_err());
        assert!(superpose(&join, &[p1.clone(), id3], 2).is_err());
        assert!(superpose(&join, &[p1.clone(), p1], 1).is_err());
    }

    /// Clone-style associativity, checked exhaustively for k=2 and arities <= 2:
    /// superpose(superpose(f, gs), hs) = superpose(f, [superpose(g, hs) for g in gs]).
    #[test]
    fn superpose_associativity_exhaustive() {
        let k = 2usize;
        let all_ops = |arity: usize| -> Vec<FiniteOp> {
            let len = table_len(k, arity).unwrap();
            let count = (k as u64).pow(len as u32);
            (0..count)
                .map(|code| {
                    let mut c = code;
                    let mut table = vec![0u8; len];
                    for slot in table.iter_mut().rev() {
                        *slot = (c % k as u64) as u8;
                        c /= k as u64;
                    }
                    FiniteOp::from_table(k, arity, table).unwrap()
                })
                .collect()
        };
        let unary = all_ops(1);
        let binary = all_ops(2);

        // f binary, gs unary pair, hs binary pair: thorough but bounded sweep
        for f in &binary {
            for g1 in &unary {
                for g2 in &unary {
                    for h in &binary {
                        let lhs = superpose(
                            &superpose(f, &[g1.clone(), g2.clone()], 1).unwrap(),
                            &[h.clone()],
                            2,
                        )
                        .unwrap();
                        let rhs = superpose(
                            f,
                            &[
                                superpose(g1, &[h.clone()], 2).unwrap(),
                                superpose(g2, &[h.clone()], 2).unwrap(),
                            ],
                            2,
                        )
                        .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_order_is_arity_then_table() {
        let id = FiniteOp::projection(2, 1, 1).unwrap();
        let neg = op(2, 1, &[1, 0]);
        let join = op(2, 2, &[0, 1, 1, 1]);
        let mut v = vec![join.clone(), neg.clone(), id.clone()];
        v.sort();
        assert_eq!(v, vec![id, neg, join]);
    }

    #[test]
    fn carrier_labels() {
        let c = Carrier::with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.label(1), "b");
        assert!(Carrier::with_labels(vec!["a".into(), "a".into()]).is_err());
        assert!(Carrier::new(0).is_err());
    }
}
