//! Remote eigenform tables with an on-disk cache.
//!
//! `GET {base}/forms/{field_label}?level_norm_le={N}&weight=2` returns a
//! dataset document. The canonical serialization of the validated payload is
//! cached as `{field_label}.le{N}.json` next to a `.sha256` sidecar holding
//! its digest and retrieval time. A warm cache whose digest matches is served
//! without touching the network; a mismatch forces a refetch.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use serre_core::forms::{FormDataset, Provenance};
use serre_core::numfield::NumberField;

use crate::dataset::{self, DatasetFile};
use crate::error::{Error, Result};

pub const BASE_URL_ENV: &str = "SERRE_FORMS_BASE_URL";

pub fn remote_url(base: &str, field_label: &str, level_norm_bound: &BigUint) -> String {
    format!("{}/forms/{field_label}?level_norm_le={level_norm_bound}&weight=2", base.trim_end_matches('/'))
}

pub fn cache_paths(cache_dir: &Path, field_label: &str, level_norm_bound: &BigUint) -> (PathBuf, PathBuf) {
    let stem = format!("{field_label}.le{level_norm_bound}");
    (cache_dir.join(format!("{stem}.json")), cache_dir.join(format!("{stem}.sha256")))
}

#[derive(Debug)]
pub struct Fetched {
    pub dataset: FormDataset,
    /// Digest of the cached canonical bytes.
    pub sha256: String,
    pub url: String,
    pub cache_path: PathBuf,
    pub network_requests: u32,
}

fn key_lock(path: &Path) -> Arc<Mutex<()>> {
    static LOCKS: OnceLock<Mutex<BTreeMap<PathBuf, Arc<Mutex<()>>>>> = OnceLock::new();
    let mut map = LOCKS.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    map.entry(path.to_path_buf()).or_default().clone()
}

enum CacheState {
    Fresh { bytes: Vec<u8>, digest: String, retrieved_at: String },
    Missing,
    Corrupt(String),
}

fn read_cache(data: &Path, sidecar: &Path) -> Result<CacheState> {
    let bytes = match fs::read(data) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(CacheState::Missing),
        Err(e) => return Err(Error::io(data, e)),
    };
    let side = match fs::read_to_string(sidecar) {
        Ok(s) => s,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Ok(CacheState::Corrupt("checksum sidecar missing".into()));
        }
        Err(e) => return Err(Error::io(sidecar, e)),
    };
    let mut lines = side.lines();
    let expected = lines.next().unwrap_or("").trim().to_string();
    let retrieved_at = lines.next().unwrap_or("").trim().to_string();
    let digest = dataset::sha256_hex(&bytes);
    if digest != expected {
        return Ok(CacheState::Corrupt(format!("sha256 {digest} does not match recorded {expected}")));
    }
    Ok(CacheState::Fresh { bytes, digest, retrieved_at })
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// `Ok(None)` for 404.
fn http_get(url: &str) -> Result<Option<Vec<u8>>> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .http_status_as_error(false)
        .timeout_global(Some(Duration::from_secs(60)))
        .build()
        .into();
    let mut resp = agent.get(url).call().map_err(|e| Error::RemoteUnavailable(format!("{url}: {e}")))?;
    let status = resp.status().as_u16();
    match status {
        200 => {
            let body = resp
                .body_mut()
                .with_config()
                .limit(256 * 1024 * 1024)
                .read_to_vec()
                .map_err(|e| Error::RemoteUnavailable(format!("{url}: {e}")))?;
            Ok(Some(body))
        }
        404 => Ok(None),
        _ => Err(Error::Http { status, url: url.to_string() }),
    }
}

fn unix_now() -> String {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0).to_string()
}

/// Fetch (or serve from cache) every form over `k` of level norm at most
/// `level_norm_bound`.
pub fn fetch_remote(k: &NumberField, base_url: &str, level_norm_bound: &BigUint, cache_dir: &Path) -> Result<Fetched> {
    let url = remote_url(base_url, k.label(), level_norm_bound);
    let (data, sidecar) = cache_paths(cache_dir, k.label(), level_norm_bound);
    let lock = key_lock(&data);
    let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());

    let corrupt = match read_cache(&data, &sidecar)? {
        CacheState::Fresh { bytes, digest, retrieved_at } => {
            let file = dataset::parse(&bytes)?;
            let provenance = Provenance::Remote { url: url.clone(), retrieved_at };
            let ds = dataset::validate(k, &file, provenance)?;
            return Ok(Fetched { dataset: ds, sha256: digest, url, cache_path: data, network_requests: 0 });
        }
        CacheState::Missing => None,
        CacheState::Corrupt(reason) => Some(reason),
    };

    let body = match http_get(&url) {
        Ok(b) => b,
        Err(e) => {
            return Err(match corrupt {
                Some(reason) => Error::CorruptCache {
                    path: data.display().to_string(),
                    reason: format!("{reason}; refetch failed: {e}"),
                },
                None => e,
            })
        }
    };
    let file = match body {
        Some(bytes) => serde_json::from_slice::<DatasetFile>(&bytes)
            .map_err(|e| Error::json(format!("{url}: payload schema mismatch"), e))?,
        None => DatasetFile::empty(k.label()),
    };
    let retrieved_at = unix_now();
    let ds = dataset::validate(k, &file, Provenance::Remote { url: url.clone(), retrieved_at: retrieved_at.clone() })?;
    let canonical = dataset::serialize(k, &ds);
    let digest = dataset::sha256_hex(canonical.as_bytes());
    fs::create_dir_all(cache_dir).map_err(|e| Error::io(cache_dir, e))?;
    write_atomic(&data, canonical.as_bytes())?;
    write_atomic(&sidecar, format!("{digest}\n{retrieved_at}\n").as_bytes())?;
    Ok(Fetched { dataset: ds, sha256: digest, url, cache_path: data, network_requests: 1 })
}
