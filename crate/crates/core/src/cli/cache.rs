//! Content-addressed store of Betti tables.
//!
//! Entry `<dir>/<key>.json` holds `{"version", "key", "checksum", "table"}`
//! where `key` is the SHA-256 of the canonical complex JSON and the
//! coefficient tag, and `checksum` the SHA-256 of the compact table JSON.
//! Writes go through a temporary file and a rename.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::SimplicialComplex;
use crate::homology::{BettiTable, Coefficients};

pub const CACHE_ENV: &str = "QSTABLE_CACHE_DIR";
const ENTRY_VERSION: u32 = 1;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    key: String,
    checksum: String,
    table: BettiTable,
}

#[derive(Debug)]
pub enum Lookup {
    Hit(BettiTable),
    Miss,
    /// Present but unreadable, mismatched or tampered with.
    Corrupt(String),
}

pub struct BettiCache {
    dir: PathBuf,
}

impl BettiCache {
    /// The directory from the flag, else from `QSTABLE_CACHE_DIR`.
    pub fn configured(flag: Option<&Path>) -> Option<Self> {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(|dir| BettiCache { dir })
    }

    pub fn key(complex: &SimplicialComplex, coefficients: Coefficients) -> String {
        sha256_hex(format!("{}\n{coefficients}", complex.to_json()).as_bytes())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn lookup(&self, key: &str) -> Lookup {
        let text = match fs::read_to_string(self.path(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return Lookup::Corrupt(format!("unparsable entry: {e}")),
        };
        if entry.version != ENTRY_VERSION || entry.key != key {
            return Lookup::Corrupt("entry does not match its key".into());
        }
        let compact = serde_json::to_string(&entry.table).expect("table serializes");
        if sha256_hex(compact.as_bytes()) != entry.checksum {
            return Lookup::Corrupt("checksum mismatch".into());
        }
        Lookup::Hit(entry.table)
    }

    pub fn store(&self, key: &str, table: &BettiTable) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let compact = serde_json::to_string(table).expect("table serializes");
        let entry = Entry { version: ENTRY_VERSION, key: key.to_string(), checksum: sha256_hex(compact.as_bytes()), table: table.clone() };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry).expect("entry serializes"))?;
        fs::rename(&tmp, self.path(key)).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}
