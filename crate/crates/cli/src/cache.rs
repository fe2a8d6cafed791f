//! On-disk graph cache: one text file per task, checksummed, written
//! atomically. A corrupt or stale file is rebuilt with a warning; an
//! unusable directory degrades to building in memory.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use growthbound_core::{FactorGraph, Result, TaskSpec};

const MAGIC: &str = "growthbound-fg";
const VERSION: u32 = 1;

pub fn fnv64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// Present but unreadable, wrong version, or checksum mismatch; rebuilt.
    Rejected,
}

pub struct GraphCache {
    dir: Option<PathBuf>,
    write_failed: bool,
}

impl GraphCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self {
            dir,
            write_failed: false,
        }
    }

    fn path_for(&self, task: &TaskSpec) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        Some(dir.join(format!("fg-{}.txt", task.cache_key().replace('/', "-"))))
    }

    /// Loads the graph for `task` when a valid cache file exists, otherwise
    /// builds and stores it.
    pub fn load_or_build(&mut self, task: &TaskSpec) -> Result<(FactorGraph, CacheStatus)> {
        let Some(path) = self.path_for(task) else {
            return Ok((FactorGraph::build(task)?, CacheStatus::Disabled));
        };
        let mut status = CacheStatus::Miss;
        if path.exists() {
            match read_file(&path, task) {
                Ok(g) => return Ok((g, CacheStatus::Hit)),
                Err(reason) => {
                    eprintln!(
                        "warning: cache file {} rejected ({reason}); rebuilding",
                        path.display()
                    );
                    status = CacheStatus::Rejected;
                }
            }
        }
        let graph = FactorGraph::build(task)?;
        if !self.write_failed
            && let Err(err) = write_file(&path, &graph)
        {
            eprintln!(
                "warning: cannot write cache file {} ({err}); continuing in memory",
                path.display()
            );
            self.write_failed = true;
        }
        Ok((graph, status))
    }
}

fn read_file(path: &Path, task: &TaskSpec) -> std::result::Result<FactorGraph, String> {
    let content = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let (header, payload) = content
        .split_once('\n')
        .ok_or_else(|| "missing header".to_string())?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != MAGIC {
        return Err("not a cache file".to_string());
    }
    let version: u32 = fields[1]
        .strip_prefix('v')
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| "bad version field".to_string())?;
    if version != VERSION {
        return Err(format!("version v{version} (want v{VERSION})"));
    }
    let stored: u64 =
        u64::from_str_radix(fields[2], 16).map_err(|_| "bad checksum field".to_string())?;
    if fnv64(payload.as_bytes()) != stored {
        return Err("checksum mismatch".to_string());
    }
    let graph = FactorGraph::from_text(payload).map_err(|e| e.to_string())?;
    if graph.task().cache_key() != task.cache_key() {
        return Err("cached task differs".to_string());
    }
    Ok(graph)
}

fn write_file(path: &Path, graph: &FactorGraph) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let payload = graph.to_text();
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "{MAGIC} v{VERSION} {:016x}", fnv64(payload.as_bytes()))?;
        f.write_all(payload.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
