//! Run-time bounds shared by every enumeration-based check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bounds for the finite-model semantics.
///
/// Every quantity that turns an infinitary definition into a finite check
/// lives here, so a report can always say which bound it was computed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Largest carrier size used when enumerating many-sorted algebras.
    pub max_carrier: usize,
    /// Largest propositional signature whose models may be enumerated.
    pub pl_signature_cap: usize,
    /// Sentence depth for syntactic slices.
    pub depth: usize,
    pub seed: u64,
    pub iters: usize,
    /// Hard cap on the size of any single enumeration (models, sentences, morphisms).
    pub enumeration_cap: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_carrier: 3,
            pl_signature_cap: 20,
            depth: 4,
            seed: 0,
            iters: 100,
            enumeration_cap: 4_000_000,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pl_signature_cap == 0 {
            return Err(Error::Input("pl_signature_cap must be positive".into()));
        }
        if self.enumeration_cap == 0 {
            return Err(Error::Input("enumeration_cap must be positive".into()));
        }
        Ok(())
    }

    pub fn with_max_carrier(mut self, k: usize) -> Self {
        self.max_carrier = k;
        self
    }

    pub fn with_depth(mut self, d: usize) -> Self {
        self.depth = d;
        self
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| Error::Input(format!("bad config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!(c.max_carrier, 3);
        assert_eq!(c.pl_signature_cap, 20);
        assert_eq!(c.depth, 4);
    }

    #[test]
    fn toml_overrides_and_rejects_unknown_keys() {
        let c = RunConfig::from_toml("max_carrier = 2\nseed = 9\n").unwrap();
        assert_eq!(c.max_carrier, 2);
        assert_eq!(c.seed, 9);
        assert_eq!(c.depth, 4);
        assert!(RunConfig::from_toml("bogus = 1").is_err());
        assert!(RunConfig::from_toml("pl_signature_cap = 0").is_err());
    }
}
