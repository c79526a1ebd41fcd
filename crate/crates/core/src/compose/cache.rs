//! Oracle-found witnesses for short cycles, shipped with the crate and
//! re-verified the first time they are used.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::ComposeError;
use crate::graph::Graph;
use crate::oracle::{exact_search, Budget, SearchOutcome};
use crate::pcr::Pcr;

pub const CACHE_VERSION: u32 = 1;
pub const CYCLE_MIN: usize = 3;
pub const CYCLE_MAX: usize = 7;

const SHIPPED: &str = include_str!("../../data/cycles.json");

/// Witnesses for `C_n` on leaves `v0..v{n-1}`, keyed by `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleCache {
    pub version: u32,
    pub cycles: BTreeMap<usize, Pcr>,
}

impl CycleCache {
    /// Parses a cache file and checks its version, its coverage of
    /// `CYCLE_MIN..=CYCLE_MAX`, and every witness.
    pub fn from_json(s: &str) -> Result<Self, ComposeError> {
        let c: CycleCache = serde_json::from_str(s).map_err(|e| ComposeError::Cache(e.to_string()))?;
        if c.version != CACHE_VERSION {
            return Err(ComposeError::Cache(format!(
                "version {} is not the supported version {CACHE_VERSION}",
                c.version
            )));
        }
        for n in CYCLE_MIN..=CYCLE_MAX {
            let p = c
                .cycles
                .get(&n)
                .ok_or_else(|| ComposeError::Cache(format!("missing C{n}")))?;
            if !p.verify(&Graph::cycle(n)).unwrap_or(false) {
                return Err(ComposeError::Cache(format!("witness for C{n} does not verify")));
            }
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cache serializes")
    }

    pub fn get(&self, n: usize) -> Option<&Pcr> {
        self.cycles.get(&n)
    }
}

/// The shipped cache, parsed and verified once per process.
pub fn cycle_cache() -> Result<&'static CycleCache, ComposeError> {
    static CACHE: OnceLock<Result<CycleCache, ComposeError>> = OnceLock::new();
    CACHE
        .get_or_init(|| CycleCache::from_json(SHIPPED))
        .as_ref()
        .map_err(Clone::clone)
}

/// Runs the oracle on every cycle length in range.
pub fn build_cycle_cache(jobs: usize) -> Result<CycleCache, ComposeError> {
    let budget = Budget {
        max_n: CYCLE_MAX,
        jobs,
        ..Budget::default()
    };
    let mut cycles = BTreeMap::new();
    for n in CYCLE_MIN..=CYCLE_MAX {
        match exact_search(&Graph::cycle(n), &budget) {
            Ok(SearchOutcome::Pcg { witness, .. }) => {
                cycles.insert(n, witness);
            }
            Ok(other) => return Err(ComposeError::Cache(format!("C{n}: unexpected oracle result {other:?}"))),
            Err(e) => return Err(ComposeError::Cache(format!("C{n}: {e}"))),
        }
    }
    Ok(CycleCache {
        version: CACHE_VERSION,
        cycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_cache_loads() {
        let c = cycle_cache().unwrap();
        assert_eq!(c.version, CACHE_VERSION);
        assert_eq!(c.cycles.len(), CYCLE_MAX - CYCLE_MIN + 1);
    }

    #[test]
    fn round_trip() {
        let c = cycle_cache().unwrap();
        assert_eq!(&CycleCache::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let mut c = cycle_cache().unwrap().clone();
        let c3 = c.cycles[&3].clone();
        c.cycles.insert(4, c3);
        assert!(matches!(
            CycleCache::from_json(&c.to_json()),
            Err(ComposeError::Cache(_))
        ));
        let mut old = cycle_cache().unwrap().clone();
        old.version = 0;
        assert!(CycleCache::from_json(&old.to_json()).is_err());
    }

    #[test]
    fn rebuilt_cache_matches_shipped() {
        let built = build_cycle_cache(2).unwrap();
        assert_eq!(&built, cycle_cache().unwrap());
    }
}
