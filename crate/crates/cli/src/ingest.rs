//! S-box file ingestion: text (one hex value per line, 2^n lines) or binary
//! (2^n little-endian 32-bit words), sniffed in that order.

use apnlab_core::spectrum::VecFn;

pub fn load_sbox(path: &str, expect_n: Option<u32>) -> Result<VecFn, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{path}: {e}"))?;
    let values = parse_text(&bytes)
        .or_else(|| parse_binary(&bytes))
        .ok_or_else(|| format!("{path}: not a hex-per-line or LE-u32 table"))?;
    table_from_values(values, expect_n)
}

pub fn table_from_values(values: Vec<u32>, expect_n: Option<u32>) -> Result<VecFn, String> {
    let len = values.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(format!("table length {len} is not a power of two >= 2"));
    }
    let n = len.trailing_zeros();
    if let Some(e) = expect_n {
        if e != n {
            return Err(format!("table has 2^{n} entries, expected 2^{e}"));
        }
    }
    let max = values.iter().copied().max().unwrap_or(0);
    let m = (32 - max.leading_zeros()).max(1);
    VecFn::from_table(n, m, values).map_err(|e| e.to_string())
}

fn parse_text(bytes: &[u8]) -> Option<Vec<u32>> {
    let text = std::str::from_utf8(bytes).ok()?;
    let mut out = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let t = t.trim_start_matches("0x").trim_start_matches("0X");
        out.push(u32::from_str_radix(t, 16).ok()?);
    }
    (!out.is_empty()).then_some(out)
}

fn parse_binary(bytes: &[u8]) -> Option<Vec<u32>> {
    if bytes.is_empty() || bytes.len() % 4 != 0 {
        return None;
    }
    Some(
        bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect(),
    )
}
