//! Size limits for enumeration-backed and closed-form builders.

use crate::error::{Error, Result};

/// Default largest `n` for which all `n!` permutations are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;
/// No override may raise the enumeration cap past this.
pub const HARD_ENUMERATION_CEILING: usize = 12;
/// Largest `n` for closed-form builders (matrix side `2^(n-1)`).
pub const DEFAULT_CLOSED_FORM_CAP: usize = 14;
/// Environment variable overriding the default enumeration cap.
pub const MAX_N_ENV: &str = "DESCON_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub enumeration: usize,
    pub closed_form: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            enumeration: DEFAULT_ENUMERATION_CAP,
            closed_form: DEFAULT_CLOSED_FORM_CAP,
        }
    }
}

impl Caps {
    /// Default caps with an enumeration cap of `cap`.
    pub fn with_enumeration_cap(cap: usize) -> Result<Self> {
        if cap == 0 || cap > HARD_ENUMERATION_CEILING {
            return Err(Error::InvalidArgument(format!(
                "enumeration cap must be in 1..={HARD_ENUMERATION_CEILING}, got {cap}"
            )));
        }
        Ok(Self {
            enumeration: cap,
            ..Self::default()
        })
    }

    /// Reads `DESCON_MAX_N`, falling back to the defaults when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_N_ENV) {
            Ok(raw) => {
                let cap = raw.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidArgument(format!("{MAX_N_ENV}={raw:?} is not an integer"))
                })?;
                Self::with_enumeration_cap(cap)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check_enumeration(&self, n: usize) -> Result<()> {
        check(n, self.enumeration, "enumeration")
    }

    pub fn check_closed_form(&self, n: usize) -> Result<()> {
        check(n, self.closed_form, "closed-form")
    }
}

fn check(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap, what });
    }
    Ok(())
}
