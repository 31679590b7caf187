//! Optional on-disk cache of reduced Groebner bases.
//!
//! Entries are keyed by the SHA-256 of the ring and the sorted generator
//! strings. Each file holds the ring in the ring-spec text format followed
//! by one basis polynomial per line. Unreadable or mismatching entries are
//! treated as misses.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::algebra::monomial::MonomialOrder;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::parser::{parse_poly, parse_ring_spec};

static CACHE_DIR: OnceLock<PathBuf> = OnceLock::new();

/// Installs the process-wide cache directory, creating it if needed. Only
/// the first installation takes effect.
pub fn install_gb_cache(dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)
        .map_err(|e| Error::Invalid(format!("cannot create cache dir {}: {e}", dir.display())))?;
    let _ = CACHE_DIR.set(dir.to_path_buf());
    Ok(())
}

pub fn cache_dir() -> Option<&'static Path> {
    CACHE_DIR.get().map(PathBuf::as_path)
}

/// Content address of a Groebner-basis request.
pub fn cache_key(ring: &Ring, gens: &[Polynomial]) -> String {
    let mut lines: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    lines.sort();
    let mut hasher = Sha256::new();
    hasher.update(ring.to_spec_text().as_bytes());
    for l in &lines {
        hasher.update(l.as_bytes());
        hasher.update(b"\n");
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn cacheable(ring: &Ring) -> bool {
    !matches!(ring.order(), MonomialOrder::Elimination(_))
}

pub(crate) fn lookup(ring: &Ring, gens: &[Polynomial]) -> Option<Vec<Polynomial>> {
    let dir = cache_dir()?;
    if !cacheable(ring) {
        return None;
    }
    let text = fs::read_to_string(dir.join(cache_key(ring, gens))).ok()?;
    read_entry(ring, &text)
}

fn read_entry(ring: &Ring, text: &str) -> Option<Vec<Polynomial>> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.by_ref().take(3).collect();
    let stored = parse_ring_spec(&header.join("\n")).ok()?;
    if *stored != **ring {
        return None;
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_poly(l, ring).ok())
        .collect()
}

pub(crate) fn store(ring: &Ring, gens: &[Polynomial], gb: &[Polynomial]) {
    let Some(dir) = cache_dir() else {
        return;
    };
    if !cacheable(ring) {
        return;
    }
    let mut text = ring.to_spec_text();
    for g in gb {
        text.push_str(&g.to_string());
        text.push('\n');
    }
    let key = cache_key(ring, gens);
    let tmp = dir.join(format!("{key}.tmp{}", std::process::id()));
    let written = fs::File::create(&tmp).and_then(|mut f| f.write_all(text.as_bytes()));
    // a failed write only costs a future recomputation
    if written.is_ok() {
        let _ = fs::rename(&tmp, dir.join(key));
    } else {
        let _ = fs::remove_file(&tmp);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_round_trip() {
        let r = parse_ring_spec("p=5 vars=x y order=lex").unwrap();
        let gb = vec![parse_poly("x - y^2", &r).unwrap(), parse_poly("y^3 - 1", &r).unwrap()];
        let mut text = r.to_spec_text();
        for g in &gb {
            text.push_str(&format!("{g}\n"));
        }
        assert_eq!(read_entry(&r, &text).unwrap(), gb);
        let other = parse_ring_spec("p=5 vars=x y order=grevlex").unwrap();
        assert!(read_entry(&other, &text).is_none());
    }

    #[test]
    fn key_ignores_generator_order() {
        let r = parse_ring_spec("p=5 vars=x y").unwrap();
        let a = parse_poly("x^2 + y", &r).unwrap();
        let b = parse_poly("y^3", &r).unwrap();
        assert_eq!(cache_key(&r, &[a.clone(), b.clone()]), cache_key(&r, &[b, a]));
    }
}
