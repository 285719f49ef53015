//! On-disk cache of oracle results, one JSON file per `(a, b, m, n)`.
//!
//! The cache is advisory: unreadable or missing files are treated as empty
//! and results are recomputed. Files are written with sorted keys, so
//! storing the same results always produces the same bytes.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::budget::estimate_max_cells;
use super::ideal::IdealPieces;
use super::koszul::{table_from_pieces, validate, OracleOptions};
use super::OracleError;
use crate::exec::Execution;
use crate::rep_ring::BettiTable;

pub const CACHE_DIR_ENV: &str = "BETTI_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct HilbertRecord {
    d: usize,
    value: u64,
}

#[derive(Serialize, Deserialize)]
struct BettiRecord {
    i: usize,
    j: usize,
    value: u64,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    hilbert: Vec<HilbertRecord>,
    betti: Vec<BettiRecord>,
}

/// Results known for one ideal. Betti entries include computed zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CachedResults {
    pub hilbert: BTreeMap<usize, u64>,
    pub betti: BTreeMap<(usize, usize), u64>,
}

impl CachedResults {
    /// The table on the window, if every cell of it is known.
    pub fn window(&self, max_i: usize, max_j: usize) -> Option<BettiTable> {
        let mut table = BettiTable::new();
        for i in 0..=max_i {
            for j in 0..=max_j {
                table.add(i, j, *self.betti.get(&(i, j))?);
            }
        }
        Some(table)
    }

    pub fn record_window(&mut self, table: &BettiTable, max_i: usize, max_j: usize) {
        for i in 0..=max_i {
            for j in 0..=max_j {
                self.betti.insert((i, j), table.get(i, j));
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultCache { dir: dir.into() }
    }

    /// Cache rooted at `$BETTI_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, a: usize, b: usize, m: usize, n: usize) -> PathBuf {
        self.dir.join(format!("I_{a}x{b}_m{m}_n{n}.json"))
    }

    pub fn load(&self, a: usize, b: usize, m: usize, n: usize) -> CachedResults {
        let Ok(text) = fs::read_to_string(self.path(a, b, m, n)) else {
            return CachedResults::default();
        };
        match serde_json::from_str::<CacheFile>(&text) {
            Ok(f) if (f.a, f.b, f.m, f.n) == (a, b, m, n) => CachedResults {
                hilbert: f.hilbert.into_iter().map(|r| (r.d, r.value)).collect(),
                betti: f.betti.into_iter().map(|r| ((r.i, r.j), r.value)).collect(),
            },
            _ => CachedResults::default(),
        }
    }

    pub fn store(&self, a: usize, b: usize, m: usize, n: usize, results: &CachedResults) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            a,
            b,
            m,
            n,
            hilbert: results.hilbert.iter().map(|(&d, &value)| HilbertRecord { d, value }).collect(),
            betti: results
                .betti
                .iter()
                .map(|(&(i, j), &value)| BettiRecord { i, j, value })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).map_err(io::Error::other)?;
        text.push('\n');
        let path = self.path(a, b, m, n);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)
    }
}

/// [`koszul_table`](super::koszul::koszul_table) backed by an optional
/// cache. Cache write failures are ignored.
#[allow(clippy::too_many_arguments)]
pub fn cached_koszul_table(
    cache: Option<&ResultCache>,
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    max_i: usize,
    max_j: usize,
    options: &OracleOptions,
) -> Result<BettiTable, OracleError> {
    let mut known = cache.map(|c| c.load(a, b, m, n)).unwrap_or_default();
    if let Some(hit) = known.window(max_i, max_j) {
        return Ok(hit);
    }
    validate(a, b, m, n)?;
    if let Some(budget) = options.cell_budget {
        let cells = estimate_max_cells(a, b, m, n, max_i, max_j);
        if cells > budget {
            return Err(OracleError::BudgetExceeded { cells, budget });
        }
    }
    let pieces = IdealPieces::build(a, b, m, n, max_j, options.exec)?;
    let table = table_from_pieces(&pieces, max_i, max_j, options);
    if let Some(c) = cache {
        for d in 0..=max_j {
            known.hilbert.insert(d, pieces.hilbert(d));
        }
        known.record_window(&table, max_i, max_j);
        let _ = c.store(a, b, m, n, &known);
    }
    Ok(table)
}

/// `dim I_d` for `d <= dmax`, backed by an optional cache.
pub fn cached_hilbert(
    cache: Option<&ResultCache>,
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    dmax: usize,
    exec: Execution,
) -> Result<Vec<u64>, OracleError> {
    let mut known = cache.map(|c| c.load(a, b, m, n)).unwrap_or_default();
    let hit: Option<Vec<u64>> = (0..=dmax).map(|d| known.hilbert.get(&d).copied()).collect();
    if let Some(values) = hit {
        return Ok(values);
    }
    validate(a, b, m, n)?;
    let pieces = IdealPieces::build(a, b, m, n, dmax, exec)?;
    let values: Vec<u64> = (0..=dmax).map(|d| pieces.hilbert(d)).collect();
    if let Some(c) = cache {
        known.hilbert.extend(values.iter().copied().enumerate());
        let _ = c.store(a, b, m, n, &known);
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_run_hits_the_cache_with_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path());
        let options = OracleOptions::default();
        let first = cached_koszul_table(Some(&cache), 1, 2, 2, 2, 4, 6, &options).unwrap();
        let bytes = fs::read(cache.path(1, 2, 2, 2)).unwrap();
        let loaded = cache.load(1, 2, 2, 2);
        assert_eq!(loaded.hilbert.get(&3), Some(&20));
        assert_eq!(loaded.window(4, 6), Some(first.clone()));

        let second = cached_koszul_table(Some(&cache), 1, 2, 2, 2, 3, 6, &options).unwrap();
        assert_eq!(second, first.restricted(3, 6));
        cache.store(1, 2, 2, 2, &loaded).unwrap();
        assert_eq!(fs::read(cache.path(1, 2, 2, 2)).unwrap(), bytes);
    }

    #[test]
    fn hilbert_values_are_cached() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path());
        let h = cached_hilbert(Some(&cache), 1, 2, 2, 2, 4, Execution::Sequential).unwrap();
        assert_eq!(h, vec![0, 0, 9, 20, 35]);
        assert_eq!(cache.load(1, 2, 2, 2).hilbert.len(), 5);
        assert_eq!(cached_hilbert(Some(&cache), 1, 2, 2, 2, 3, Execution::Sequential).unwrap(), h[..4]);
    }

    #[test]
    fn corrupt_files_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path());
        fs::write(cache.path(1, 1, 2, 2), "not json").unwrap();
        assert_eq!(cache.load(1, 1, 2, 2), CachedResults::default());
        let t = cached_koszul_table(Some(&cache), 1, 1, 2, 2, 4, 5, &OracleOptions::default()).unwrap();
        assert_eq!(t.get(1, 2), 6);
    }
}
