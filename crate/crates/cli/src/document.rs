//! JSON interchange format for single braces.
//!
//! A document is self-contained: the prime, the carrier moduli, and the full
//! multiplication table by element index (row-major, so `table[a][b]` is the
//! index of a·b). Optional annotations — a free-text name, the socle order,
//! the multiplicative group name, a catalog entry id — travel with the table
//! but are never trusted: [`annotation_mismatches`](BraceDocument::annotation_mismatches)
//! re-derives each one and reports disagreements, which callers treat as
//! errors (strict mode) or warnings (lenient mode).

use braces_core::abelian::AbelianGroup;
use braces_core::brace::{mult_group_name, socle, Brace};
use braces_core::catalog::{entry_by_id, CatalogEntry};
use braces_core::modint::is_prime;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

/// One brace as a JSON value: carrier shape plus explicit product table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDocument {
    /// The prime whose powers make up the carrier.
    pub p: u64,
    /// Cyclic factor orders of the additive group, largest-last.
    pub moduli: Vec<u64>,
    /// Product table by element index, row-major: `table[a][b]` = a·b.
    pub table: Vec<Vec<u16>>,
    /// Free-text label; never validated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Claimed socle order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub socle_order: Option<u64>,
    /// Claimed multiplicative group, in the parser's notation (`z2xz4`,
    /// `d4`, `q`, `m(3)`, `m3(3)`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult_group: Option<String>,
    /// Claimed catalog entry id; checked against the generated catalog.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry_id: Option<String>,
}

/// Why a document could not be turned into a brace.
#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("unsupported carrier: {0}")]
    Carrier(String),
    #[error("bad product table: {0}")]
    Table(String),
}

impl BraceDocument {
    /// Wrap a brace with re-derived socle and multiplicative-group
    /// annotations. The brace must satisfy the axioms; group identification
    /// on an invalid table is undefined.
    pub fn from_brace(b: &Brace) -> BraceDocument {
        BraceDocument {
            p: b.group().p(),
            moduli: b.group().moduli().to_vec(),
            table: table_rows(b),
            name: None,
            socle_order: Some(socle(b).order()),
            mult_group: Some(mult_group_name(b).to_string()),
            entry_id: None,
        }
    }

    /// Wrap a catalog entry with its full annotations.
    pub fn from_entry(e: &CatalogEntry, b: &Brace) -> BraceDocument {
        BraceDocument {
            name: Some(format!("{} on {}", e.family(), e.group().token())),
            socle_order: Some(e.socle_order()),
            mult_group: Some(e.claimed_mult_group().to_string()),
            entry_id: Some(e.id().to_string()),
            ..BraceDocument::from_brace(b)
        }
    }

    /// Rebuild the brace. Only the carrier shape and table dimensions are
    /// validated here; axiom checking and annotation comparison are separate
    /// steps so that a malformed table can still be loaded and reported on.
    pub fn to_brace(&self) -> Result<Brace, DocumentError> {
        if !is_prime(self.p) {
            return Err(DocumentError::Carrier(format!("{} is not prime", self.p)));
        }
        let group = AbelianGroup::new(self.p, &self.moduli)
            .map_err(|e| DocumentError::Carrier(e.to_string()))?;
        let n = group.order() as usize;
        if self.table.len() != n {
            return Err(DocumentError::Table(format!(
                "{} rows for a carrier of order {n}",
                self.table.len()
            )));
        }
        if let Some(row) = self.table.iter().position(|r| r.len() != n) {
            return Err(DocumentError::Table(format!(
                "row {row} has {} entries, expected {n}",
                self.table[row].len()
            )));
        }
        let flat: Vec<u16> = self.table.iter().flatten().copied().collect();
        Brace::from_tables(group, flat).map_err(|e| DocumentError::Table(e.to_string()))
    }

    /// Compare every present annotation against a re-derivation from the
    /// table. The brace must already have passed `verify_brace`: group
    /// identification iterates products and assumes the axioms.
    pub fn annotation_mismatches(&self, b: &Brace) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(claimed) = self.socle_order {
            let actual = socle(b).order();
            if actual != claimed {
                out.push(format!(
                    "socle order is {actual}, document claims {claimed}"
                ));
            }
        }
        if let Some(claimed) = &self.mult_group {
            let actual = mult_group_name(b);
            match braces_core::brace::GroupName::from_str(claimed) {
                Ok(parsed) if parsed == actual => {}
                Ok(_) => out.push(format!(
                    "multiplicative group is {actual}, document claims {claimed}"
                )),
                Err(_) => out.push(format!("unparseable multiplicative group `{claimed}`")),
            }
        }
        if let Some(claimed) = &self.entry_id {
            match entry_by_id(claimed) {
                None => out.push(format!("unknown entry id `{claimed}`")),
                Some((e, cb)) => {
                    if e.group().moduli() != b.group().moduli() {
                        out.push(format!(
                            "entry `{claimed}` lives on {}, document on {}",
                            e.group().token(),
                            b.group().token()
                        ));
                    } else if cb.mul_table() != b.mul_table() {
                        out.push(format!(
                            "product table differs from catalog entry `{claimed}`"
                        ));
                    }
                }
            }
        }
        out
    }
}

fn table_rows(b: &Brace) -> Vec<Vec<u16>> {
    let n = b.order() as usize;
    b.mul_table().chunks(n).map(|row| row.to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use braces_core::catalog::catalog_all;

    #[test]
    fn round_trip_is_identity_for_every_catalog_entry() {
        for p in [2, 3, 5] {
            for (e, b) in catalog_all(p) {
                let doc = BraceDocument::from_entry(&e, &b);
                let json = serde_json::to_string(&doc).unwrap();
                let back: BraceDocument = serde_json::from_str(&json).unwrap();
                assert_eq!(back, doc, "{}", e.id());
                let rebuilt = back.to_brace().unwrap();
                assert_eq!(rebuilt.mul_table(), b.mul_table(), "{}", e.id());
                assert!(
                    back.annotation_mismatches(&rebuilt).is_empty(),
                    "{}",
                    e.id()
                );
            }
        }
    }

    #[test]
    fn shape_errors_are_reported() {
        let (e, b) = entry_by_id("p2.zp_p.socp.family1(p=2)").unwrap();
        let mut doc = BraceDocument::from_entry(&e, &b);
        doc.table.pop();
        assert!(matches!(doc.to_brace(), Err(DocumentError::Table(_))));

        let mut doc = BraceDocument::from_entry(&e, &b);
        doc.p = 6;
        assert!(matches!(doc.to_brace(), Err(DocumentError::Carrier(_))));

        let mut doc = BraceDocument::from_entry(&e, &b);
        doc.moduli = vec![2, 8];
        assert!(matches!(doc.to_brace(), Err(DocumentError::Carrier(_))));
    }

    #[test]
    fn annotation_mismatches_catch_each_field() {
        let (e, b) = entry_by_id("p3.zp_p2.socp.family2(p=2)").unwrap();
        let mut doc = BraceDocument::from_entry(&e, &b);
        doc.socle_order = Some(4);
        doc.mult_group = Some("q".to_string());
        doc.entry_id = Some("p3.zp_p2.socp.family3(p=2)".to_string());
        let brace = doc.to_brace().unwrap();
        let complaints = doc.annotation_mismatches(&brace);
        assert_eq!(complaints.len(), 3, "{complaints:?}");
    }

    #[test]
    fn name_is_free_text() {
        let (e, b) = entry_by_id("p.zp.socp.trivial(p=2)").unwrap();
        let mut doc = BraceDocument::from_entry(&e, &b);
        doc.name = Some("anything at all".to_string());
        let brace = doc.to_brace().unwrap();
        assert!(doc.annotation_mismatches(&brace).is_empty());
    }
}
