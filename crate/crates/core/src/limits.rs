//! Size bounds for the exhaustive searches.

use crate::error::{Error, Result};

/// Bounds applied by automorphism enumeration and the action oracle.
///
/// Each bound can be overridden through an environment variable read by
/// [`Limits::from_env`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest acting group `G` (`NORMLIKE_MAX_GROUP_ORDER`).
    pub max_group_order: usize,
    /// Largest abelian group `A` acted on (`NORMLIKE_MAX_MODULE_ORDER`).
    pub max_module_order: u64,
    /// Largest group whose automorphisms are enumerated (`NORMLIKE_MAX_AUT_GROUP_ORDER`).
    pub max_aut_group_order: u64,
    /// Largest automorphism group that is streamed through (`NORMLIKE_MAX_AUTOMORPHISMS`).
    pub max_automorphisms: u128,
    /// Largest automorphism list returned as a materialised vector
    /// (`NORMLIKE_MAX_LISTED_AUTOMORPHISMS`).
    pub max_listed_automorphisms: u128,
    /// Largest number of actions collected by a full enumeration (`NORMLIKE_MAX_ACTIONS`).
    pub max_actions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 24,
            max_module_order: 256,
            max_aut_group_order: 512,
            max_automorphisms: 20_000_000,
            max_listed_automorphisms: 1_000_000,
            max_actions: 1_000_000,
        }
    }
}

impl Limits {
    /// Defaults, overridden by any `NORMLIKE_*` variables that are set.
    pub fn from_env() -> Result<Self> {
        let mut l = Limits::default();
        fn read<T: std::str::FromStr>(name: &str, slot: &mut T) -> Result<()> {
            if let Ok(v) = std::env::var(name) {
                *slot = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{name}={v:?} is not a valid bound")))?;
            }
            Ok(())
        }
        read("NORMLIKE_MAX_GROUP_ORDER", &mut l.max_group_order)?;
        read("NORMLIKE_MAX_MODULE_ORDER", &mut l.max_module_order)?;
        read("NORMLIKE_MAX_AUT_GROUP_ORDER", &mut l.max_aut_group_order)?;
        read("NORMLIKE_MAX_AUTOMORPHISMS", &mut l.max_automorphisms)?;
        read("NORMLIKE_MAX_LISTED_AUTOMORPHISMS", &mut l.max_listed_automorphisms)?;
        read("NORMLIKE_MAX_ACTIONS", &mut l.max_actions)?;
        Ok(l)
    }

    pub(crate) fn check(what: &'static str, value: u128, limit: u128) -> Result<()> {
        if value > limit {
            Err(Error::BoundExceeded { what, value, limit })
        } else {
            Ok(())
        }
    }
}
