use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::{CartanType, LatticeError, LatticeVector, RootSubsystem, RootSystem};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Where a subsystem enumeration came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Written,
    Disabled,
}

pub fn cache_path(dir: &Path, d: usize, t: &CartanType) -> PathBuf {
    dir.join(format!("v{CACHE_FORMAT_VERSION}")).join(format!("subsystems_d{d}_{t}.json"))
}

pub fn subsystems_to_json(rs: &RootSystem, t: &CartanType, systems: &[RootSubsystem]) -> Value {
    let lat = rs.lattice();
    json!({
        "format_version": CACHE_FORMAT_VERSION,
        "lattice": {"d": lat.d(), "n": lat.n()},
        "type": t.to_string(),
        "subsystems": systems.iter().map(|s| s.roots.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn bad(msg: impl Into<String>) -> LatticeError {
    LatticeError::Cache(msg.into())
}

pub fn subsystems_from_json(rs: &RootSystem, v: &Value) -> Result<(CartanType, Vec<RootSubsystem>), LatticeError> {
    if v["format_version"].as_u64() != Some(CACHE_FORMAT_VERSION as u64) {
        return Err(bad("format version mismatch"));
    }
    let lat = rs.lattice();
    if v["lattice"]["d"].as_u64() != Some(lat.d() as u64) || v["lattice"]["n"].as_u64() != Some(lat.n() as u64) {
        return Err(bad("lattice mismatch"));
    }
    let t: CartanType = v["type"].as_str().ok_or_else(|| bad("missing type"))?.parse()?;
    let list = v["subsystems"].as_array().ok_or_else(|| bad("missing subsystems"))?;
    let mut out = Vec::with_capacity(list.len());
    for s in list {
        let roots = s
            .as_array()
            .ok_or_else(|| bad("subsystem is not a list"))?
            .iter()
            .map(|r| {
                let coords: Option<Vec<i64>> = r.as_array().and_then(|a| a.iter().map(Value::as_i64).collect());
                let coords = coords.ok_or_else(|| bad("root is not an integer vector"))?;
                lat.root(LatticeVector(coords))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sub = rs.subsystem_from_roots(&roots)?;
        if sub.cartan_type != t {
            return Err(LatticeError::TypeMismatch { expected: t.to_string(), found: sub.cartan_type.to_string() });
        }
        out.push(sub);
    }
    Ok((t, out))
}

/// Subsystems of type `t`, read from `dir` when a valid cache file exists and written there otherwise.
pub fn cached_subsystems(
    rs: &RootSystem,
    t: &CartanType,
    dir: Option<&Path>,
) -> Result<(Vec<RootSubsystem>, CacheStatus), LatticeError> {
    let Some(dir) = dir else { return Ok((rs.enumerate_subsystems(t), CacheStatus::Disabled)) };
    let path = cache_path(dir, rs.lattice().d(), t);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(v) = serde_json::from_str::<Value>(&text) {
            if let Ok((found, systems)) = subsystems_from_json(rs, &v) {
                if &found == t {
                    return Ok((systems, CacheStatus::Hit));
                }
            }
        }
    }
    let systems = rs.enumerate_subsystems(t);
    let v = subsystems_to_json(rs, t, &systems);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| bad(format!("{}: {e}", parent.display())))?;
    }
    fs::write(&path, serde_json::to_string(&v).expect("json serializes"))
        .map_err(|e| bad(format!("{}: {e}", path.display())))?;
    Ok((systems, CacheStatus::Written))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let rs = RootSystem::for_degree(3).unwrap();
        let t: CartanType = "3A2".parse().unwrap();
        let fresh = rs.enumerate_subsystems(&t);
        let v = subsystems_to_json(&rs, &t, &fresh);
        let (t2, back) = subsystems_from_json(&rs, &v).unwrap();
        assert_eq!(t2, t);
        assert_eq!(back, fresh);
        let other = RootSystem::for_degree(4).unwrap();
        assert!(subsystems_from_json(&other, &v).is_err());
    }

    #[test]
    fn file_cache() {
        let dir = std::env::temp_dir().join(format!("coble-cache-test-{}", std::process::id()));
        let rs = RootSystem::for_degree(4).unwrap();
        let t: CartanType = "D4".parse().unwrap();
        let (a, s1) = cached_subsystems(&rs, &t, Some(&dir)).unwrap();
        let (b, s2) = cached_subsystems(&rs, &t, Some(&dir)).unwrap();
        assert_eq!((s1, s2), (CacheStatus::Written, CacheStatus::Hit));
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        fs::write(cache_path(&dir, 4, &t), "not json").unwrap();
        let (c, s3) = cached_subsystems(&rs, &t, Some(&dir)).unwrap();
        assert_eq!((c.len(), s3), (5, CacheStatus::Written));
        fs::remove_dir_all(&dir).unwrap();
    }
}
