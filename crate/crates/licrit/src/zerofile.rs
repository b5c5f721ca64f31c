//! Zero tables on disk.
//!
//! Plain tables hold one ordinate per line and are read by
//! [`ZeroSet::parse`]. Sets with off-line zeros are written as JSON, since
//! the plain format has no room for real parts.

use std::path::Path;

use licrit_core::zeros::{OfflineZero, OnlineZero, ZeroSet};
use licrit_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSetFile {
    pub source: String,
    pub complete_to: f64,
    /// Ordinates as written, so that round trips are exact.
    pub online: Vec<String>,
    #[serde(default)]
    pub offline: Vec<OfflineFile>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OfflineFile {
    pub beta: f64,
    pub gamma: f64,
    pub multiplicity: u32,
}

impl ZeroSetFile {
    pub fn from_set(z: &ZeroSet) -> Self {
        let mut online = Vec::new();
        for w in z.online() {
            let t = w.text.clone().unwrap_or_else(|| w.gamma.to_string());
            online.extend(std::iter::repeat(t).take(w.multiplicity as usize));
        }
        ZeroSetFile {
            source: z.source().to_string(),
            complete_to: z.complete_to(),
            online,
            offline: z
                .offline()
                .iter()
                .map(|o| OfflineFile { beta: o.beta, gamma: o.gamma, multiplicity: o.multiplicity })
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<ZeroSet> {
        let mut online: Vec<OnlineZero> = Vec::new();
        for (i, t) in self.online.iter().enumerate() {
            let gamma: f64 = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line: i + 1, msg: format!("`{t}` is not a number") })?;
            match online.last_mut() {
                Some(prev) if prev.gamma == gamma => prev.multiplicity += 1,
                _ => online.push(OnlineZero { gamma, multiplicity: 1, text: Some(t.trim().to_string()) }),
            }
        }
        let offline = self
            .offline
            .iter()
            .map(|o| OfflineZero { beta: o.beta, gamma: o.gamma, multiplicity: o.multiplicity })
            .collect();
        ZeroSet::new(online, offline, self.complete_to, self.source.clone())
    }
}

/// Reads a plain table, or a JSON set when the text starts with `{`.
pub fn parse_zeros(text: &str, source: &str) -> Result<ZeroSet> {
    if text.trim_start().starts_with('{') {
        let file: ZeroSetFile =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        file.to_set()
    } else {
        ZeroSet::parse(text, source)
    }
}

pub fn read_zeros(path: &Path) -> Result<ZeroSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
    parse_zeros(&text, &path.display().to_string())
}

/// Plain text when every zero is on the line, JSON otherwise.
pub fn render_zeros(z: &ZeroSet) -> String {
    if z.offline().is_empty() {
        z.to_text()
    } else {
        let mut s = serde_json::to_string_pretty(&ZeroSetFile::from_set(z)).expect("zero sets serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_round_trip() {
        let text = "# first three\n14.134725141734694\n21.022039638771555\n25.010857580145688\n";
        let z = parse_zeros(text, "t").unwrap();
        assert_eq!(z.online().len(), 3);
        assert_eq!(render_zeros(&z), "14.134725141734694\n21.022039638771555\n25.010857580145688\n");
    }

    #[test]
    fn json_round_trip_with_offline_pair() {
        let z = parse_zeros("14.134725\n21.022040\n", "t").unwrap().inject_zero(0.8, 14.0).unwrap();
        let text = render_zeros(&z);
        assert!(text.starts_with('{'));
        let back = parse_zeros(&text, "ignored").unwrap();
        assert_eq!(back, z);
        assert_eq!(back.offline().len(), 2);
    }

    #[test]
    fn json_rejects_unpaired_offline() {
        let text = r#"{"source": "x", "complete_to": 20, "online": ["14.1"], "offline": [{"beta": 0.8, "gamma": 14, "multiplicity": 1}]}"#;
        assert!(matches!(parse_zeros(text, "x"), Err(Error::Domain(_))));
    }
}
