//! Flat `key = value` configuration with one level of `include`.
//!
//! ```text
//! # comment
//! include = base.cfg
//! d = 1
//! z = sqrt(2)
//! ```
//!
//! Keys from the including file override keys from the included one. An
//! included file may not include again.

use crate::error::{Error, Result};
use crate::field::{Expr, OKInt, Ring};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_lines(text: &str, origin: &str) -> Result<(Vec<(String, String)>, Option<String>)> {
    let mut pairs = Vec::new();
    let mut include = None;
    let mut seen = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("{origin}:{}: expected key = value", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || !k.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_') {
            return Err(bad(format!("{origin}:{}: invalid key {k:?}", i + 1)));
        }
        if seen.insert(k.to_string(), i + 1).is_some() {
            return Err(bad(format!("{origin}:{}: duplicate key {k}", i + 1)));
        }
        if k == "include" {
            include = Some(v.to_string());
        } else {
            pairs.push((k.to_string(), v.to_string()));
        }
    }
    Ok((pairs, include))
}

impl Config {
    /// Parses `text`; an `include` is resolved relative to `base_dir`.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Config> {
        let (pairs, include) = parse_lines(text, "<config>")?;
        let mut entries = BTreeMap::new();
        if let Some(inc) = include {
            let path = base_dir.map_or_else(|| PathBuf::from(&inc), |d| d.join(&inc));
            let sub = std::fs::read_to_string(&path)
                .map_err(|e| bad(format!("include {}: {e}", path.display())))?;
            let (sub_pairs, nested) = parse_lines(&sub, &path.display().to_string())?;
            if nested.is_some() {
                return Err(bad(format!("{}: nested include", path.display())));
            }
            entries.extend(sub_pairs);
        }
        entries.extend(pairs);
        Ok(Config { entries })
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Config::parse(&text, path.parent())
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Config {
        Config {
            entries: pairs.into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Sorted `key=value` lines with includes resolved.
    pub fn canonical(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    /// SHA-256 of the canonical form, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(bad(format!("unknown key {k}"))),
            None => Ok(()),
        }
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| bad(format!("{key}: cannot parse {v:?}"))))
            .transpose()
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.get(key).unwrap_or(default)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| bad(format!("missing key {key}")))
    }

    /// A positive count.
    pub fn count_or(&self, key: &str, default: usize) -> Result<usize> {
        let v = self.parsed::<usize>(key)?.unwrap_or(default);
        if v == 0 {
            return Err(bad(format!("{key} must be positive")));
        }
        Ok(v)
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        Ok(self.parsed::<u64>(key)?.unwrap_or(default))
    }

    /// A finite positive number.
    pub fn positive_or(&self, key: &str, default: f64) -> Result<f64> {
        let v = self.parsed::<f64>(key)?.unwrap_or(default);
        if !(v.is_finite() && v > 0.0) {
            return Err(bad(format!("{key} must be a positive number")));
        }
        Ok(v)
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        self.parsed::<bool>(key).map(|v| v.unwrap_or(default))
    }

    pub fn ring(&self) -> Result<Ring> {
        let d = self.parsed::<u32>("d")?.unwrap_or(1);
        Ring::from_d(d).map_err(|_| bad(format!("d must be one of 1, 3, 7, 11, got {d}")))
    }

    pub fn expr(&self, key: &str) -> Result<Expr> {
        Expr::parse(self.require(key)?).map_err(|e| bad(format!("{key}: {e}")))
    }

    pub fn expr_or(&self, key: &str, default: &str) -> Result<Expr> {
        Expr::parse(self.str_or(key, default)).map_err(|e| bad(format!("{key}: {e}")))
    }

    /// A ring element written as an expression, e.g. `1+i` or `w`.
    pub fn okint_or(&self, key: &str, default: &str, ring: Ring) -> Result<OKInt> {
        let src = self.str_or(key, default);
        Expr::parse(src)
            .and_then(|e| e.eval(ring, 64))
            .ok()
            .and_then(|v| v.as_exact().and_then(|k| k.to_okint()))
            .ok_or_else(|| bad(format!("{key}: {src:?} is not a ring element")))
    }

    /// Comma separated positive numbers.
    pub fn list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        let Some(v) = self.get(key) else {
            return Ok(default.to_vec());
        };
        let xs = v
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad(format!("{key}: cannot parse {s:?}"))))
            .collect::<Result<Vec<f64>>>()?;
        if xs.is_empty() || xs.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(bad(format!("{key} must list positive numbers")));
        }
        Ok(xs)
    }
}
