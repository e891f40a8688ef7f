//! On-disk cache of Jacobi polynomials, keyed by code, genus and coordinate set.
//!
//! The directory comes from `JACOBI_CACHE`; without it every request is
//! enumerated. Entries hold the JSON form of the polynomial. Unreadable
//! entries are recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use jacobi_core::enums::jacobi;
use jacobi_core::mpoly::MPoly;
use jacobi_core::tables::{JacobiProvider, NamedCode};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "JACOBI_CACHE";

#[derive(Clone, Debug, Default)]
pub struct DiskCache {
    dir: Option<PathBuf>,
}

impl DiskCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        DiskCache { dir }
    }

    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_ENV).map(PathBuf::from))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Hex SHA-256 of the code's reduced basis, the genus and the set.
    pub fn key(code: &NamedCode, t: &[usize], g: usize) -> String {
        let mut h = Sha256::new();
        h.update(b"jacobi-v1\n");
        h.update(format!("{} {}\n", code.code.len(), g));
        for row in code.code.basis() {
            h.update(row.to_string());
            h.update(b"\n");
        }
        h.update(format!("{t:?}"));
        format!("{:x}", h.finalize())
    }
}

impl JacobiProvider for DiskCache {
    fn jacobi(&self, code: &NamedCode, t: &[usize], g: usize) -> jacobi_core::Result<MPoly> {
        let Some(dir) = &self.dir else {
            return jacobi(&code.code, t, g);
        };
        let path = dir.join(format!("{}.json", Self::key(code, t, g)));
        if let Some(p) = fs::read_to_string(&path).ok().and_then(|s| serde_json::from_str(&s).ok()) {
            return Ok(p);
        }
        let p = jacobi(&code.code, t, g)?;
        // A failed write only costs a recomputation next time.
        if fs::create_dir_all(dir).is_ok() {
            if let Ok(s) = serde_json::to_string(&p) {
                let tmp = path.with_extension("tmp");
                if fs::write(&tmp, s).is_ok() {
                    let _ = fs::rename(&tmp, &path);
                }
            }
        }
        Ok(p)
    }
}
