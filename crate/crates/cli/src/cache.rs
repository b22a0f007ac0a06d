//! On-disk cache of computed characters, one plain-text file per highest weight.
//!
//! ```text
//! irrhodge-character 1
//! key E:6:1,0,0,0,0,0
//! weights 27
//! 1,0,0,0,0,0 1
//! ...
//! ```
//!
//! Entries with another version, a different key or a failed consistency
//! check are treated as misses and rewritten.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use irrhodge::character::{irrep_character, weyl_dimension, Character};
use irrhodge::rootdatum::{RootDatum, Weight};
use irrhodge::{Error, Result};
use num_bigint::BigUint;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "irrhodge-character";

pub fn cache_key(datum: &RootDatum, lambda: &Weight) -> String {
    let ty = datum.simple_type();
    format!("{}:{}:{}", ty.family().letter(), ty.rank(), lambda.to_csv())
}

pub fn serialize(key: &str, chi: &Character) -> String {
    let mut out = format!(
        "{MAGIC} {FORMAT_VERSION}\nkey {key}\nweights {}\n",
        chi.multiplicities().len()
    );
    for (w, m) in chi.multiplicities() {
        out.push_str(&format!("{} {m}\n", w.to_csv()));
    }
    out
}

pub fn deserialize(datum: &RootDatum, lambda: &Weight, text: &str) -> Result<Character> {
    let bad = |what: &str| Error::Integrity(format!("cache entry: {what}"));
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty"))?;
    if header != format!("{MAGIC} {FORMAT_VERSION}") {
        return Err(bad("version mismatch"));
    }
    let key = lines
        .next()
        .and_then(|l| l.strip_prefix("key "))
        .ok_or_else(|| bad("no key"))?;
    if key != cache_key(datum, lambda) {
        return Err(bad("key mismatch"));
    }
    let count: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("weights "))
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| bad("no weight count"))?;
    let mut mult = BTreeMap::new();
    for line in lines {
        let (w, m) = line.split_once(' ').ok_or_else(|| bad("malformed line"))?;
        let m: BigUint = m.parse().map_err(|_| bad("malformed multiplicity"))?;
        mult.insert(Weight::parse(w)?, m);
    }
    if mult.len() != count {
        return Err(bad("truncated"));
    }
    let chi = Character::from_parts(datum.simple_type(), lambda.clone(), mult)?;
    if chi.dim() != weyl_dimension(datum, lambda)? {
        return Err(bad("dimension does not match the Weyl dimension formula"));
    }
    Ok(chi)
}

/// `None` disables caching.
#[derive(Debug, Clone)]
pub struct CharacterCache {
    dir: Option<PathBuf>,
}

impl CharacterCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        CharacterCache { dir }
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}.txt", key.replace(':', "_"))))
    }

    pub fn get(&self, datum: &RootDatum, lambda: &Weight) -> Result<Character> {
        let key = cache_key(datum, lambda);
        let Some(path) = self.path_for(&key) else {
            return irrep_character(datum, lambda);
        };
        if let Ok(text) = fs::read_to_string(&path) {
            match deserialize(datum, lambda, &text) {
                Ok(chi) => return Ok(chi),
                Err(e) => eprintln!("warning: ignoring {}: {e}", path.display()),
            }
        }
        let chi = irrep_character(datum, lambda)?;
        if let Err(e) = self.store(&path, &serialize(&key, &chi)) {
            eprintln!("warning: could not write {}: {e}", path.display());
        }
        Ok(chi)
    }

    /// Write-then-rename so concurrent readers never see a partial file.
    fn store(&self, path: &Path, text: &str) -> std::io::Result<()> {
        let dir = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(dir)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn roundtrip() {
        let d = datum("B3");
        let w = Weight::parse("1,0,1").unwrap();
        let chi = irrep_character(&d, &w).unwrap();
        let key = cache_key(&d, &w);
        assert_eq!(key, "B:3:1,0,1");
        let text = serialize(&key, &chi);
        assert!(text.starts_with("irrhodge-character 1\nkey B:3:1,0,1\n"));
        assert_eq!(deserialize(&d, &w, &text).unwrap(), chi);
    }

    #[test]
    fn rejects_stale_or_corrupt() {
        let d = datum("A2");
        let w = Weight::parse("1,1").unwrap();
        let chi = irrep_character(&d, &w).unwrap();
        let text = serialize(&cache_key(&d, &w), &chi);
        let old = text.replacen("irrhodge-character 1", "irrhodge-character 0", 1);
        assert!(deserialize(&d, &w, &old).is_err());
        let other = Weight::parse("2,0").unwrap();
        assert!(deserialize(&d, &other, &text).is_err());
        let tampered = text.replacen("0,0 2", "0,0 3", 1);
        assert_ne!(tampered, text);
        assert!(deserialize(&d, &w, &tampered).is_err());
        let truncated: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(deserialize(&d, &w, &truncated).is_err());
    }

    #[test]
    fn cold_and_warm_agree() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CharacterCache::new(Some(dir.path().to_path_buf()));
        let d = datum("G2");
        let w = Weight::parse("1,1").unwrap();
        let cold = cache.get(&d, &w).unwrap();
        assert!(dir.path().join("G_2_1,1.txt").exists());
        let warm = cache.get(&d, &w).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(CharacterCache::new(None).get(&d, &w).unwrap(), cold);
    }
}
