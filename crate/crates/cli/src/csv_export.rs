use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use infotherm::fiber::CycleRecord;

pub const HEADER: &str = "span,eps_in,eps_out,t_hot,t_cold,q_hot,q_cold,work,info";

/// Twelve significant digits: fixed notation for moderate magnitudes,
/// scientific otherwise.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.11}", 0.0);
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific format has an exponent");
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        sci
    }
}

pub fn format_csv(records: &[CycleRecord]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in records {
        let row = [
            r.epsilon_in.value(),
            r.epsilon_out.value(),
            r.t_hot.value(),
            r.t_cold.value(),
            r.q_hot.value(),
            r.q_cold.value(),
            r.work_in.value(),
            r.info.nats(),
        ];
        out.push_str(&r.span.to_string());
        for v in row {
            out.push(',');
            out.push_str(&sig12(v));
        }
        out.push('\n');
    }
    out
}

pub fn export_csv(records: &[CycleRecord], path: &Path) -> Result<()> {
    if records.is_empty() {
        bail!("no cycles to export");
    }
    fs::write(path, format_csv(records)).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use infotherm::fiber::{simulate_chain, FiberChainConfig};
    use infotherm::{Energy, PhysConstants};

    fn chain(spans: usize) -> Vec<CycleRecord> {
        let cfg = FiberChainConfig::with_span_gain(Energy(1.0), 0.5, 1.0, spans, 100).unwrap();
        simulate_chain(&cfg, &PhysConstants::reduced())
            .unwrap()
            .cycles
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(25.0), "25.0000000000");
        assert_eq!(sig12(0.5), "0.500000000000");
        assert_eq!(sig12(69.31471805599453), "69.3147180560");
        assert_eq!(sig12(9.9999999999999), "10.0000000000");
        assert_eq!(sig12(1.5e-19), "1.50000000000e-19");
        assert_eq!(sig12(-2.0), "-2.00000000000");
        assert_eq!(sig12(0.0), "0.00000000000");
    }

    #[test]
    fn one_span_is_two_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        export_csv(&chain(1), &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().next().unwrap(), HEADER);
    }

    #[test]
    fn work_column_is_25() {
        let text = format_csv(&chain(10));
        for line in text.lines().skip(1) {
            assert_eq!(line.split(',').nth(7).unwrap(), "25.0000000000");
        }
        assert_eq!(text, format_csv(&chain(10)));
    }

    #[test]
    fn empty_chain_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(export_csv(&[], &dir.path().join("x.csv")).is_err());
    }
}
