//! Solving a model end to end and packaging the result as a certificate.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::greedy::{attacker_sequence, compute_sequences, GreedyResult};
use crate::interval_model::CanonicalModel;
use crate::neocolonization::{compute_blocks, eternal_dominating_set, BlockKind, Neocolonization};

/// Greedy sequences plus the block decomposition for one canonical model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub greedy: GreedyResult,
    pub neocolonization: Neocolonization,
}

pub fn solve(model: &CanonicalModel) -> Solution {
    let greedy = compute_sequences(model);
    let neocolonization =
        compute_blocks(model, &greedy).expect("result computed from the same model");
    Solution {
        greedy,
        neocolonization,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateBlock {
    pub kind: BlockKind,
    pub members: Vec<String>,
    pub cds_ids: Vec<String>,
    pub rover_id: String,
    pub weight: usize,
}

/// Everything the solver claims about a model, by interval id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "D")]
    pub d: Vec<String>,
    pub anchors: Vec<usize>,
    pub blocks: Vec<CertificateBlock>,
    pub eternal_set: Vec<String>,
    pub attacker_sequence: Vec<String>,
}

impl Certificate {
    pub fn new(model: &CanonicalModel, solution: &Solution) -> Self {
        let ids = |seq: &[usize]| -> Vec<String> {
            seq.iter().map(|&i| model.id(i).to_string()).collect()
        };
        let greedy = &solution.greedy;
        Certificate {
            n: model.len(),
            k: greedy.k(),
            a: ids(&greedy.a),
            d: ids(&greedy.d),
            anchors: greedy.anchors.clone(),
            blocks: solution
                .neocolonization
                .blocks
                .iter()
                .map(|b| CertificateBlock {
                    kind: b.kind,
                    members: ids(&b.members),
                    cds_ids: ids(&b.cds),
                    rover_id: model.id(b.rover).to_string(),
                    weight: b.weight,
                })
                .collect(),
            eternal_set: ids(&eternal_dominating_set(greedy)),
            attacker_sequence: ids(&attacker_sequence(greedy)),
        }
    }

    /// Σ weights = k = |eternal set| = |A| = |D|, and the blocks partition `n` ids.
    pub fn is_consistent(&self) -> bool {
        let weights: usize = self.blocks.iter().map(|b| b.weight).sum();
        let members: usize = self.blocks.iter().map(|b| b.members.len()).sum();
        weights == self.k
            && self.eternal_set.len() == self.k
            && self.a.len() == self.k
            && self.d.len() == self.k
            && self.attacker_sequence == self.a
            && members == self.n
            && self.anchors.first() == Some(&0)
            && self.anchors.last() == Some(&(self.k + 1))
            && self.blocks.iter().all(|b| match b.kind {
                BlockKind::Clique => b.cds_ids.is_empty(),
                BlockKind::Cds => b.weight == 1 + b.cds_ids.len(),
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Human-readable summary; not a stable format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n = {}", self.n).unwrap();
        writeln!(out, "k = {}", self.k).unwrap();
        writeln!(out, "A = {}", self.a.join(" ")).unwrap();
        writeln!(out, "D = {}", self.d.join(" ")).unwrap();
        let anchors: Vec<String> = self.anchors.iter().map(usize::to_string).collect();
        writeln!(out, "anchors = {}", anchors.join(" ")).unwrap();
        for (i, b) in self.blocks.iter().enumerate() {
            let kind = match b.kind {
                BlockKind::Clique => "clique",
                BlockKind::Cds => "cds",
            };
            write!(
                out,
                "block {} {} weight {} rover {} members {}",
                i + 1,
                kind,
                b.weight,
                b.rover_id,
                b.members.join(" ")
            )
            .unwrap();
            if !b.cds_ids.is_empty() {
                write!(out, " cds {}", b.cds_ids.join(" ")).unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "eternal set = {}", self.eternal_set.join(" ")).unwrap();
        writeln!(out, "attacks = {}", self.attacker_sequence.join(" ")).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_model::{normalize, sample_model, IntervalModel};

    #[test]
    fn sample_certificate() {
        let m = normalize(&sample_model());
        let cert = Certificate::new(&m, &solve(&m));
        assert_eq!(cert.k, 8);
        assert_eq!(cert.blocks.len(), 5);
        assert!(cert.is_consistent());
        let json = cert.to_json();
        assert!(json.contains("\"A\"") && json.contains("\"cds_ids\""));
        assert_eq!(Certificate::from_json(&json).unwrap(), cert);
    }

    #[test]
    fn empty_certificate() {
        let m = normalize(&IntervalModel::default());
        let cert = Certificate::new(&m, &solve(&m));
        assert_eq!(cert.k, 0);
        assert!(cert.blocks.is_empty() && cert.eternal_set.is_empty());
        assert_eq!(cert.anchors, [0, 1]);
        assert!(cert.is_consistent());
    }

    #[test]
    fn tampered_certificate_is_inconsistent() {
        let m = normalize(&sample_model());
        let mut cert = Certificate::new(&m, &solve(&m));
        cert.blocks[0].weight += 1;
        assert!(!cert.is_consistent());
    }
}
