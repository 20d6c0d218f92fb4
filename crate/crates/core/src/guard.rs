//! Enumeration guards.
//!
//! Several operations enumerate `{+1,0,-1}^E` or `{+1,-1}^E` outright.
//! They stay total and predictable by refusing ground sets beyond a
//! configurable limit instead of silently grinding.

use crate::error::{Error, Result};

/// Limits for brute-force enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    /// Maximum `|E|` for operations that enumerate all of `{+1,0,-1}^E`
    /// (or all sign completions / topal fibers).
    pub max_enum_elements: usize,
    /// Maximum number of ranking extensions collected before refusing.
    pub max_rankings: usize,
    /// Maximum hypercube dimension searched by the amalgam path condition.
    pub max_path_dimension: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_enum_elements: 15,
            max_rankings: 200_000,
            max_path_dimension: 20,
        }
    }
}

impl Guard {
    /// Guard read from the `COMKIT_GUARD` environment variable (element
    /// limit), falling back to the defaults.
    pub fn from_env() -> Self {
        let mut guard = Guard::default();
        if let Ok(raw) = std::env::var("COMKIT_GUARD") {
            if let Ok(limit) = raw.trim().parse::<usize>() {
                guard.max_enum_elements = limit;
            }
        }
        guard
    }

    pub fn check_enum(&self, elements: usize) -> Result<()> {
        if elements > self.max_enum_elements {
            return Err(Error::GuardExceeded {
                what: "ground set size",
                value: elements,
                limit: self.max_enum_elements,
            });
        }
        Ok(())
    }

    pub fn check_rankings(&self, count: usize) -> Result<()> {
        if count > self.max_rankings {
            return Err(Error::GuardExceeded {
                what: "ranking extensions",
                value: count,
                limit: self.max_rankings,
            });
        }
        Ok(())
    }

    pub fn check_path_dimension(&self, dimension: usize) -> Result<()> {
        if dimension > self.max_path_dimension {
            return Err(Error::GuardExceeded {
                what: "hypercube path dimension",
                value: dimension,
                limit: self.max_path_dimension,
            });
        }
        Ok(())
    }
}
