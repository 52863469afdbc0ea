//! Optional on-disk cache of structure-constant tables.
//!
//! When `CDSW_CACHE_DIR` is set, constructions are read from and written to
//! `<dir>/structconst-<type>.txt` in the versioned text format. Cached tables
//! are fully revalidated on load; a corrupt file falls back to a fresh build.

use std::path::PathBuf;

use crate::cartan::CartanType;
use crate::chevalley::{lie_algebra, LieAlgebra};
use crate::error::Result;

pub const CACHE_ENV_VAR: &str = "CDSW_CACHE_DIR";

fn cache_path(ct: CartanType) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV_VAR)?;
    if dir.is_empty() {
        return None;
    }
    let mut p = PathBuf::from(dir);
    p.push(format!("structconst-{ct}.txt"));
    Some(p)
}

/// Build the algebra, consulting the cache directory if configured.
pub fn load_or_build(ct: CartanType) -> Result<LieAlgebra> {
    let path = match cache_path(ct) {
        None => return lie_algebra(ct),
        Some(p) => p,
    };
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(alg) = LieAlgebra::from_cache_text(&text) {
            return Ok(alg);
        }
        eprintln!("warning: ignoring invalid cache file {}", path.display());
    }
    let alg = lie_algebra(ct)?;
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    if let Err(e) = std::fs::write(&path, alg.to_cache_text()) {
        eprintln!("warning: could not write cache file {}: {e}", path.display());
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;

    #[test]
    fn round_trip_through_directory() {
        let dir = std::env::temp_dir().join(format!("cdsw-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let ct = CartanType::new(Series::B, 2).unwrap();
        let fresh = lie_algebra(ct).unwrap();
        let path = dir.join(format!("structconst-{ct}.txt"));
        std::fs::write(&path, fresh.to_cache_text()).unwrap();
        let loaded = LieAlgebra::from_cache_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(loaded.gram, fresh.gram);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
