//! Text format for coloring certificates:
//!
//! ```text
//! hychroma-coloring v1 n=<n> d=<d> mode=<atmost|exact> colors=<L>
//! provenance: <string>
//! <color of vertex 0>
//! ...
//! <color of vertex 2^n - 1>
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::partition::{ColoringCertificate, ColoringMode};

const MAGIC: &str = "hychroma-coloring";
const VERSION: &str = "v1";

impl ColoringCertificate {
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.assignment().len() * 4 + 128);
        let _ = writeln!(
            out,
            "{MAGIC} {VERSION} n={} d={} mode={} colors={}",
            self.n(),
            self.d(),
            self.mode().as_str(),
            self.color_count()
        );
        let _ = writeln!(out, "provenance: {}", self.provenance());
        for c in self.assignment() {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    /// Parses the text format. Only the shape is checked; color validity is
    /// left to the verifier so a bad color is reported as a violation.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty certificate"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some(MAGIC) {
            return Err(Error::parse(1, format!("expected `{MAGIC}` header")));
        }
        if parts.next() != Some(VERSION) {
            return Err(Error::parse(1, format!("unsupported version, expected {VERSION}")));
        }
        let mut field = |key: &str| -> Result<&str> {
            let part = parts
                .next()
                .ok_or_else(|| Error::parse(1, format!("missing `{key}=`")))?;
            part.strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| Error::parse(1, format!("expected `{key}=`, found `{part}`")))
        };
        let int = |s: &str| -> Result<u32> {
            s.parse().map_err(|_| Error::parse(1, format!("bad integer `{s}`")))
        };
        let n = int(field("n")?)? as usize;
        let d = int(field("d")?)?;
        let mode: ColoringMode = field("mode")?.parse().map_err(|e: Error| Error::parse(1, e.to_string()))?;
        let colors = int(field("colors")?)?;
        if let Some(extra) = parts.next() {
            return Err(Error::parse(1, format!("unexpected field `{extra}`")));
        }
        if n == 0 || n > crate::gf2::MAX_COSET_LENGTH {
            return Err(Error::parse(1, format!("n={n} outside 1..={}", crate::gf2::MAX_COSET_LENGTH)));
        }

        let prov_line = lines.next().ok_or_else(|| Error::parse(2, "missing provenance line"))?;
        let provenance = prov_line
            .strip_prefix("provenance:")
            .ok_or_else(|| Error::parse(2, "expected `provenance:`"))?
            .trim();

        let expected = 1usize << n;
        let mut assignment = Vec::with_capacity(expected);
        for (i, line) in lines.enumerate() {
            let lineno = i + 3;
            let t = line.trim();
            if t.is_empty() {
                if assignment.len() == expected {
                    continue;
                }
                return Err(Error::parse(lineno, "blank line inside the color list"));
            }
            if assignment.len() == expected {
                return Err(Error::parse(lineno, format!("more than 2^{n} color lines")));
            }
            assignment.push(
                t.parse()
                    .map_err(|_| Error::parse(lineno, format!("bad color `{t}`")))?,
            );
        }
        if assignment.len() != expected {
            return Err(Error::parse(
                assignment.len() + 3,
                format!("found {} color lines, expected 2^{n} = {expected}", assignment.len()),
            ));
        }
        ColoringCertificate::new(n, d, mode, colors, assignment, provenance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::parity_coloring;

    #[test]
    fn round_trip() {
        let c = parity_coloring(3, 3).unwrap();
        let text = c.to_text();
        assert!(text.starts_with("hychroma-coloring v1 n=3 d=3 mode=exact colors=2\nprovenance: parity n=3 d=3\n0\n1\n1\n0\n"));
        assert_eq!(ColoringCertificate::from_text(&text).unwrap(), c);
    }

    #[test]
    fn truncated_and_padded() {
        let text = parity_coloring(3, 3).unwrap().to_text();
        let short: String = text.lines().take(8).map(|l| format!("{l}\n")).collect();
        assert!(matches!(ColoringCertificate::from_text(&short), Err(Error::Parse { line: 9, .. })));
        let long = format!("{text}1\n");
        assert!(matches!(ColoringCertificate::from_text(&long), Err(Error::Parse { line: 11, .. })));
        assert!(ColoringCertificate::from_text(&format!("{text}\n\n")).is_ok());
    }

    #[test]
    fn bad_headers() {
        for bad in [
            "",
            "hychroma-coloring v2 n=1 d=1 mode=atmost colors=2\nprovenance: x\n0\n1\n",
            "hychroma-coloring v1 n=1 d=1 mode=some colors=2\nprovenance: x\n0\n1\n",
            "hychroma-coloring v1 n=1 d=1 colors=2\nprovenance: x\n0\n1\n",
            "hychroma-coloring v1 n=1 d=1 mode=atmost colors=2\n0\n1\n",
            "hychroma-coloring v1 n=1 d=1 mode=atmost colors=2\nprovenance: x\n0\n-1\n",
        ] {
            assert!(matches!(ColoringCertificate::from_text(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn out_of_range_color_parses() {
        let text = "hychroma-coloring v1 n=1 d=1 mode=atmost colors=2\nprovenance: x\n0\n5\n";
        assert_eq!(ColoringCertificate::from_text(text).unwrap().color(1), 5);
    }
}
