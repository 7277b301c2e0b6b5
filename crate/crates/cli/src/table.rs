//! Batch emission of per-shape documents with an on-disk cache of
//! cohomology tables keyed by `(k, n, fill, schema_version)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use grassmann_core::complex::cohomology_with_capacity;
use grassmann_core::{is_orientable, FillVariant, GrassmannShape};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::doc::{Coefficients, Document, Request, ShapePayload, TablePayload, SCHEMA_VERSION};
use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    schema_version: String,
    table: TablePayload,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)
            .map_err(|e| CliError::Usage(format!("cache directory {}: {e}", dir.display())))?;
        Ok(Self { dir })
    }

    pub fn path(&self, shape: GrassmannShape, fill: FillVariant) -> PathBuf {
        self.dir.join(format!(
            "{}_{}_{}.v{SCHEMA_VERSION}.json",
            shape.k(),
            shape.n(),
            fill.name()
        ))
    }

    /// `None` on a miss, a stale schema, or an unreadable file.
    pub fn load(&self, shape: GrassmannShape, fill: FillVariant) -> Option<TablePayload> {
        let bytes = fs::read(self.path(shape, fill)).ok()?;
        let entry: CacheEntry = serde_json::from_slice(&bytes).ok()?;
        (entry.schema_version == SCHEMA_VERSION
            && entry.table.shape == shape
            && entry.table.fill == fill)
            .then_some(entry.table)
    }

    pub fn store(&self, table: &TablePayload) -> Result<(), CliError> {
        let entry = CacheEntry {
            schema_version: SCHEMA_VERSION.to_string(),
            table: table.clone(),
        };
        let mut bytes = serde_json::to_vec_pretty(&entry).expect("cache entries serialize");
        bytes.push(b'\n');
        write_atomic(&self.path(table.shape, table.fill), &bytes)
    }
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let res = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res.map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
}

fn cohomology_payload(
    shape: GrassmannShape,
    fill: FillVariant,
    capacity: usize,
    cache: Option<&Cache>,
) -> Result<(TablePayload, bool), CliError> {
    if let Some(t) = cache.and_then(|c| c.load(shape, fill)) {
        return Ok((t, true));
    }
    let table = cohomology_with_capacity(shape, fill, capacity)?;
    let payload = TablePayload::new(&table, Coefficients::of_fill(fill));
    if let Some(c) = cache {
        c.store(&payload)?;
    }
    Ok((payload, false))
}

pub fn shape_document(
    shape: GrassmannShape,
    max_n: usize,
    capacity: usize,
    cache: Option<&Cache>,
) -> Result<(Document<ShapePayload>, CacheStats), CliError> {
    let mut stats = CacheStats::default();
    let mut get = |fill| -> Result<TablePayload, CliError> {
        let (t, hit) = cohomology_payload(shape, fill, capacity, cache)?;
        if hit {
            stats.hits += 1;
        } else {
            stats.misses += 1;
        }
        Ok(t)
    };
    let constant = get(FillVariant::Standard)?;
    let twisted = get(FillVariant::Shifted)?;
    // H_j(ℤ) = H^{top-j}(orientation sheaf)
    let dual = if shape.n().is_multiple_of(2) {
        &constant
    } else {
        &twisted
    };
    let homology = dual.reversed_as_homology(Coefficients::Constant);
    let payload = ShapePayload {
        shape,
        orientable: is_orientable(shape)?,
        cohomology_constant: constant,
        cohomology_twisted: twisted,
        homology,
    };
    let request = Request::Table {
        k: shape.k(),
        n: shape.n(),
        max_n,
    };
    Ok((Document::new(request, payload), stats))
}

/// Every shape with `n <= max_n`, in `(n, k)` order.
pub fn build_all(
    max_n: usize,
    capacity: usize,
    cache: Option<&Cache>,
) -> Result<(Vec<Document<ShapePayload>>, CacheStats), CliError> {
    let shapes: Vec<GrassmannShape> = GrassmannShape::all_up_to(max_n).collect();
    let results: Vec<_> = shapes
        .par_iter()
        .map(|&s| shape_document(s, max_n, capacity, cache))
        .collect::<Result<_, _>>()?;
    let mut stats = CacheStats::default();
    let docs = results
        .into_iter()
        .map(|(d, s)| {
            stats.hits += s.hits;
            stats.misses += s.misses;
            d
        })
        .collect();
    Ok((docs, stats))
}

pub fn document_file_name(shape: GrassmannShape) -> String {
    format!("gr_{}_{}.json", shape.k(), shape.n())
}
