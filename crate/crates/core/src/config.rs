use std::path::PathBuf;

use crate::enumerate::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::oeis::{default_cache_dir, FetchConfig};
use crate::render::Format;
use crate::series::MAX_ORDER;

/// Limits and I/O settings shared by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Largest series order, and largest `n` for count tables.
    pub order_cap: usize,
    /// Largest tower size that may be enumerated.
    pub enumeration_cap: u32,
    pub format: Format,
    pub cache_dir: PathBuf,
    pub allow_network: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order_cap: MAX_ORDER,
            enumeration_cap: DEFAULT_CAP,
            format: Format::Csv,
            cache_dir: default_cache_dir(),
            allow_network: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.order_cap == 0 || self.enumeration_cap == 0 {
            return Err(Error::InvalidArgument("caps must be positive".into()));
        }
        if self.order_cap > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "order cap {} exceeds the maximum of {MAX_ORDER}",
                self.order_cap
            )));
        }
        Ok(())
    }

    pub fn fetch_config(&self) -> FetchConfig {
        FetchConfig {
            allow_network: self.allow_network,
            cache_dir: self.cache_dir.clone(),
        }
    }
}
