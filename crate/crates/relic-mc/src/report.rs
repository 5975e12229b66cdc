//! Run reports: the per-run statistics record in text and JSON form, plus
//! the peak-memory probe.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::engine::{EngineConfig, RunStats};

/// High-water mark of sampled resident sizes, for kernels whose
/// `/proc/self/status` lacks `VmHWM`. Sampling happens at SAT-call
/// boundaries, so the estimate tracks where the memory actually goes.
static SAMPLED_PEAK_KB: AtomicU64 = AtomicU64::new(0);

fn status_kb(status: &str, key: &str) -> Option<u64> {
    let rest = status.lines().find_map(|l| l.strip_prefix(key))?;
    rest.trim().trim_end_matches("kB").trim().parse().ok()
}

/// Peak resident-set estimate for this process in MB: the kernel's
/// high-water mark when available, else the largest sampled resident size.
pub fn peak_memory_mb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    if let Some(current) = status_kb(&status, "VmRSS:") {
        SAMPLED_PEAK_KB.fetch_max(current, Ordering::Relaxed);
    }
    let direct = status_kb(&status, "VmHWM:").or_else(|| status_kb(&status, "VmPeak:"));
    let kb = direct.unwrap_or_else(|| SAMPLED_PEAK_KB.load(Ordering::Relaxed));
    (kb > 0).then_some(kb / 1024)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub mic_threshold: u32,
    pub binary_search: bool,
    pub literal_ordering: bool,
    pub ordering_decay: f64,
}

impl From<&EngineConfig> for ConfigEcho {
    fn from(cfg: &EngineConfig) -> ConfigEcho {
        ConfigEcho {
            seed: cfg.solver_seed,
            mic_threshold: cfg.mic_threshold,
            binary_search: cfg.use_binary_search,
            literal_ordering: cfg.use_literal_ordering,
            ordering_decay: cfg.ordering_decay,
        }
    }
}

/// One record per proof attempt; mirrors the engine statistics exactly.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub input: String,
    pub verdict: String,
    pub seconds: f64,
    pub memory_mb: Option<u64>,
    pub sat_calls: u64,
    pub sat_calls_thousands: f64,
    pub proof_clauses: Option<usize>,
    pub trace_length: Option<usize>,
    pub final_k: usize,
    pub obligations: u64,
    pub config: ConfigEcho,
}

impl RunReport {
    pub fn new(input: String, verdict: &str, stats: &RunStats, cfg: &EngineConfig) -> RunReport {
        RunReport {
            input,
            verdict: verdict.to_string(),
            seconds: stats.wall_seconds,
            memory_mb: stats.peak_memory_mb,
            sat_calls: stats.sat_calls,
            sat_calls_thousands: stats.sat_calls as f64 / 1000.0,
            proof_clauses: stats.proof_clauses,
            trace_length: stats.trace_length,
            final_k: stats.final_k,
            obligations: stats.obligations,
            config: ConfigEcho::from(cfg),
        }
    }

    /// Tabular text form, one `key value` row per line.
    pub fn text(&self) -> String {
        let mut rows = vec![
            format!("verdict      {}", self.verdict),
            format!("sec          {:.3}", self.seconds),
            format!(
                "MB           {}",
                self.memory_mb.map_or("-".into(), |m| m.to_string())
            ),
            format!("SC(k)        {:.3}", self.sat_calls_thousands),
        ];
        if let Some(p) = self.proof_clauses {
            rows.push(format!("|proof|      {p}"));
        }
        if let Some(t) = self.trace_length {
            rows.push(format!("|trace|      {t}"));
        }
        rows.push(format!("k            {}", self.final_k));
        rows.push(format!("obligations  {}", self.obligations));
        rows.push(format!(
            "config       seed={} mic-threshold={} binary-search={} ordering={}",
            self.config.seed,
            self.config.mic_threshold,
            self.config.binary_search,
            self.config.literal_ordering
        ));
        rows.join("\n")
    }
}
