//! Per-degree ranks and torsion of a graded abelian group.

use std::fmt::Write;

use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiRow {
    pub degree: u32,
    pub rank: u64,
    /// Invariant factors different from one.
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    /// Torsion-free table from ranks indexed by degree.
    pub fn from_ranks(ranks: &[u64]) -> Self {
        let rows = ranks.iter().enumerate().map(|(d, &rank)| BettiRow { degree: d as u32, rank, torsion: vec![] }).collect();
        Self { rows }
    }

    pub fn ranks(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.rank).collect()
    }

    pub fn rank(&self, degree: u32) -> Option<u64> {
        self.rows.get(degree as usize).map(|r| r.rank)
    }

    pub fn max_degree(&self) -> u32 {
        self.rows.len().saturating_sub(1) as u32
    }

    pub fn is_torsion_free(&self) -> bool {
        self.rows.iter().all(|r| r.torsion.is_empty())
    }

    pub fn odd_vanishes(&self) -> bool {
        self.rows.iter().all(|r| r.degree % 2 == 0 || (r.rank == 0 && r.torsion.is_empty()))
    }

    /// Rows up to and including `max_degree`.
    pub fn truncated(&self, max_degree: u32) -> Self {
        Self { rows: self.rows.iter().filter(|r| r.degree <= max_degree).cloned().collect() }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("degree\trank\ttorsion\n");
        for r in &self.rows {
            let torsion = if r.torsion.is_empty() {
                "-".to_string()
            } else {
                r.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            };
            writeln!(out, "{}\t{}\t{}", r.degree, r.rank, torsion).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let torsion: Vec<String> = r.torsion.iter().map(ToString::to_string).collect();
                json!({ "degree": r.degree, "rank": r.rank, "torsion": torsion })
            })
            .collect();
        json!({ "rows": rows })
    }
}
