use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use rainbow_core::graph::bound_n;

/// How the vertex count of a cell is chosen from its `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NRule {
    Fixed(usize),
    Bound,
    /// `bound_n(delta) + offset`, clamped to `delta + 1`.
    Offset(i64),
}

impl NRule {
    pub fn n_for(self, delta: usize) -> usize {
        match self {
            NRule::Fixed(n) => n,
            NRule::Bound => bound_n(delta),
            NRule::Offset(k) => (bound_n(delta) as i64 + k).max(delta as i64 + 1) as usize,
        }
    }
}

impl FromStr for NRule {
    type Err = String;

    /// `bound`, `bound+2`, `bound-1`, or a plain count.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "bound" {
            return Ok(NRule::Bound);
        }
        if let Some(rest) = s.strip_prefix("bound") {
            let k: i64 = rest
                .strip_prefix('+')
                .unwrap_or(rest)
                .parse()
                .map_err(|_| format!("bad offset in {s:?}"))?;
            return Ok(NRule::Offset(k));
        }
        s.parse()
            .map(NRule::Fixed)
            .map_err(|_| format!("expected a count or bound[+-k], got {s:?}"))
    }
}

impl fmt::Display for NRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NRule::Fixed(n) => write!(f, "{n}"),
            NRule::Bound => f.write_str("bound"),
            NRule::Offset(k) => write!(f, "bound{k:+}"),
        }
    }
}

/// Parses `2..4`, `2..=4`, `2,3,5`, a single value, or the empty string.
pub fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad number {x:?} in {s:?}"))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        return Ok((num(lo)?..=num(hi)?).collect());
    }
    s.split(',').map(num).collect()
}

/// Everything that determines a verification campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub deltas: Vec<usize>,
    pub n_rule: NRule,
    pub samples: usize,
    /// Extra colourings per graph on top of the first.
    pub recolourings: usize,
    pub seed: u64,
    /// Probability of each extra pair beyond the degree construction.
    pub extra_p: f64,
    pub depth: usize,
    pub budget: u64,
    /// Append the `K_{delta+1}` 1-factorization for odd `delta`.
    pub extremal: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            deltas: vec![2, 3, 4],
            n_rule: NRule::Bound,
            samples: 500,
            recolourings: 3,
            seed: 1,
            extra_p: 0.0,
            depth: 3,
            budget: DEFAULT_BUDGET,
            extremal: false,
        }
    }
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

impl CampaignConfig {
    /// First 16 hex digits of the SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serialises");
        let digest = Sha256::digest(&json);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_rules() {
        assert_eq!("bound".parse(), Ok(NRule::Bound));
        assert_eq!("bound+2".parse(), Ok(NRule::Offset(2)));
        assert_eq!("bound-3".parse(), Ok(NRule::Offset(-3)));
        assert_eq!("12".parse(), Ok(NRule::Fixed(12)));
        assert!("many".parse::<NRule>().is_err());
        assert_eq!(NRule::Bound.n_for(4), 16);
        assert_eq!(NRule::Offset(-100).n_for(4), 5);
        assert_eq!(NRule::Offset(-2).to_string(), "bound-2");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_range("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_range("5,2").unwrap(), vec![5, 2]);
        assert_eq!(parse_range(" ").unwrap(), Vec::<usize>::new());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn hash_tracks_every_field() {
        let a = CampaignConfig::default();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
        b.seed = 2;
        assert_ne!(a.hash(), b.hash());
    }
}
