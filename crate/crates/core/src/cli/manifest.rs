use serde::{Deserialize, Serialize};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to rerun a command and check its output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: u32,
    pub subcommand: String,
    /// Arguments after the program name, without `--out` and `--manifest`.
    pub argv: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub exit_code: i32,
    pub output_sha256: String,
}

/// Drops `--out`/`--manifest` and their values.
pub fn replayable_argv(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if std::mem::take(&mut skip) {
            continue;
        }
        if a == "--out" || a == "--manifest" {
            skip = true;
        } else if !(a.starts_with("--out=") || a.starts_with("--manifest=")) {
            out.push(a.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_destinations() {
        let args: Vec<String> =
            ["plan", "-q", "5", "--out", "x.json", "-d", "2", "--manifest=m.json"].iter().map(|s| s.to_string()).collect();
        assert_eq!(replayable_argv(&args), ["plan", "-q", "5", "-d", "2"]);
    }
}
