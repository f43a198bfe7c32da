//! Plain-text edge lists.
//!
//! ```text
//! kron n=3 alpha=0.6 beta=0.4 gamma=0.2 loops=1
//! 000 011
//! 010 010
//! ```
//!
//! Vertices are zero-padded binary numerals of length `n`, `u <= v` on every
//! line, and a loop is written `v v`. Lines are sorted.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::model::{KroneckerParams, SampledGraph, VertexId};

pub fn header_line(p: &KroneckerParams, loops: bool) -> String {
    format!(
        "kron n={} alpha={} beta={} gamma={} loops={}",
        p.n(),
        p.alpha(),
        p.beta(),
        p.gamma(),
        u8::from(loops)
    )
}

pub fn write_edge_list<W: Write>(g: &SampledGraph, mut out: W) -> Result<()> {
    let p = g.params();
    let n = p.n();
    writeln!(out, "{}", header_line(p, g.loops_enabled()))?;
    let fmt = |x: u64| format!("{:0width$b}", x, width = n as usize);
    let mut lines: Vec<(u64, u64)> = g.edges().to_vec();
    lines.extend(g.loops().iter().map(|&v| (v, v)));
    lines.sort_unstable();
    for (u, v) in lines {
        writeln!(out, "{} {}", fmt(u), fmt(v))?;
    }
    out.flush()?;
    Ok(())
}

pub fn to_string(g: &SampledGraph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("edge lists are ASCII")
}

fn parse_header(line: &str) -> Result<(KroneckerParams, bool)> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let mut fields = line.split_whitespace();
    if fields.next() != Some("kron") {
        return Err(err("header must start with `kron`".into()));
    }
    let (mut n, mut a, mut b, mut c, mut loops) = (None, None, None, None, None);
    for f in fields {
        let (key, value) = f
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got `{f}`")))?;
        let bad = |_| err(format!("bad value for {key}: `{value}`"));
        match key {
            "n" => n = Some(value.parse::<u32>().map_err(|e| bad(e.to_string()))?),
            "alpha" => a = Some(value.parse::<f64>().map_err(|e| bad(e.to_string()))?),
            "beta" => b = Some(value.parse::<f64>().map_err(|e| bad(e.to_string()))?),
            "gamma" => c = Some(value.parse::<f64>().map_err(|e| bad(e.to_string()))?),
            "loops" => {
                loops = Some(match value {
                    "0" => false,
                    "1" => true,
                    _ => return Err(bad(String::new())),
                })
            }
            _ => return Err(err(format!("unknown header key `{key}`"))),
        }
    }
    let missing = |k: &str| err(format!("header is missing `{k}`"));
    let p = KroneckerParams::new(
        a.ok_or_else(|| missing("alpha"))?,
        b.ok_or_else(|| missing("beta"))?,
        c.ok_or_else(|| missing("gamma"))?,
        n.ok_or_else(|| missing("n"))?,
    )
    .map_err(|e| err(e.to_string()))?;
    Ok((p, loops.ok_or_else(|| missing("loops"))?))
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<SampledGraph> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => l?,
        None => return Err(Error::Parse { line: 1, msg: "empty input".into() }),
    };
    let (p, loops_enabled) = parse_header(header.trim())?;
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for (i, line) in lines {
        let line = line?;
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let mut parts = trimmed.split_whitespace();
        let (Some(us), Some(vs), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err("expected two vertices".into()));
        };
        let u = VertexId::parse_binary(us).map_err(|e| err(e.to_string()))?;
        let v = VertexId::parse_binary(vs).map_err(|e| err(e.to_string()))?;
        if u.len() != p.n() || v.len() != p.n() {
            return Err(err(format!("vertices must have {} digits", p.n())));
        }
        if u.bits() > v.bits() {
            return Err(err("endpoints must be ordered u <= v".into()));
        }
        if u == v {
            if !loops_enabled {
                return Err(err("loop present but header says loops=0".into()));
            }
            loops.push(u.bits());
        } else {
            edges.push((u.bits(), v.bits()));
        }
    }
    SampledGraph::new(p, loops_enabled, edges, loops)
}

pub fn from_str(s: &str) -> Result<SampledGraph> {
    read_edge_list(s.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::generate_naive;
    use crate::rng::SeedSpec;

    #[test]
    fn round_trip() {
        let p = KroneckerParams::new(0.8, 0.6, 0.5, 6).unwrap();
        let g = generate_naive(&p, true, SeedSpec::new(12)).unwrap();
        assert!(!g.loops().is_empty());
        let text = to_string(&g);
        assert!(text.starts_with("kron n=6 alpha=0.8 beta=0.6 gamma=0.5 loops=1\n"));
        assert_eq!(from_str(&text).unwrap(), g);
    }

    #[test]
    fn format_details() {
        let p = KroneckerParams::new(0.6, 0.4, 0.2, 3).unwrap();
        let g = SampledGraph::new(p, true, vec![(3, 0)], vec![2]).unwrap();
        assert_eq!(to_string(&g), "kron n=3 alpha=0.6 beta=0.4 gamma=0.2 loops=1\n000 011\n010 010\n");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_str("").is_err());
        assert!(from_str("graph n=3").is_err());
        assert!(from_str("kron n=3 alpha=0.6 beta=0.4 gamma=0.2").is_err());
        let h = "kron n=3 alpha=0.6 beta=0.4 gamma=0.2 loops=0\n";
        assert!(matches!(from_str(&format!("{h}011 000\n")), Err(Error::Parse { line: 2, .. })));
        assert!(from_str(&format!("{h}01 000\n")).is_err());
        assert!(from_str(&format!("{h}010 010\n")).is_err());
        assert!(from_str(&format!("{h}010 012\n")).is_err());
        assert!(from_str(&format!("{h}000 011\n\n")).is_ok());
    }
}
