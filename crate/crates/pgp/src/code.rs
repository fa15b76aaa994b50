//! Core types, construction, text format and hashing.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::validate::ValidationReport;

/// One strand segment of a periodic diagram.
///
/// `crossings` lists the crossing passages in traversal order from
/// `boundary.0` to `boundary.1` (cyclically for closed segments); a
/// positive label is an over-pass, negative an under-pass.  `boundary`
/// holds the two signed passing labels (+i = bottom copy of passing i,
/// −i = top copy), or `None` for a closed segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub boundary: Option<(i32, i32)>,
    pub crossings: Vec<i32>,
}

impl Segment {
    pub fn open(b1: i32, b2: i32, crossings: Vec<i32>) -> Self {
        Segment {
            boundary: Some((b1, b2)),
            crossings,
        }
    }

    pub fn closed(crossings: Vec<i32>) -> Self {
        Segment {
            boundary: None,
            crossings,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_none()
    }

    /// Whether the stored list order agrees with the segment's canonical
    /// direction: from the smaller endpoint (bottom endpoints before top,
    /// then by label) for open segments, the list order itself for closed
    /// ones.  ω handedness is defined relative to canonical directions, so
    /// re-writing an open segment backwards changes this flag instead of ω.
    pub fn canonical_forward(&self) -> bool {
        match self.boundary {
            Some((a, b)) => endpoint_key(a) <= endpoint_key(b),
            None => true,
        }
    }
}

/// Order on signed endpoint labels: bottom (+) before top (−), then by
/// absolute value.  Shared by the canonical order and direction rules.
pub(crate) fn endpoint_key(v: i32) -> (u8, u32) {
    (u8::from(v < 0), v.unsigned_abs())
}

/// A periodic Gauss paragraph.
///
/// Stored data: the handedness word ω (entry c−1 for crossing label c) and
/// the segment list.  The passing count k and crossing count n are derived.
/// ω_c = +1 means that, traversing both strands of crossing c in their
/// canonical (smaller-endpoint-first) directions, the under-strand crosses
/// left-to-right beneath the over-strand; the value does not depend on the
/// direction in which a segment happens to be written down.
/// Construction through [`Pgp::new`] validates the full structure including
/// realizability; [`Pgp::new_unchecked`] is for rewrite internals that
/// re-validate at their boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pgp {
    pub(crate) omega: Vec<i8>,
    pub(crate) segments: Vec<Segment>,
}

impl Pgp {
    /// Builds and fully validates a PGP.
    pub fn new(omega: Vec<i8>, segments: Vec<Segment>) -> Result<Self, ValidationReport> {
        let pgp = Pgp { omega, segments };
        pgp.validate()?;
        Ok(pgp)
    }

    /// Builds without validation.  The caller promises to validate before
    /// the value escapes to consumers that assume realizability.
    pub fn new_unchecked(omega: Vec<i8>, segments: Vec<Segment>) -> Self {
        Pgp { omega, segments }
    }

    /// Crossing handedness word; entry c−1 belongs to crossing label c.
    pub fn omega(&self) -> &[i8] {
        &self.omega
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of crossings n.
    pub fn crossings(&self) -> usize {
        self.omega.len()
    }

    /// Number of passings k (largest passing label; validation guarantees
    /// the labels cover 1..k).
    pub fn passings(&self) -> usize {
        self.segments
            .iter()
            .filter_map(|s| s.boundary)
            .map(|(a, b)| a.unsigned_abs().max(b.unsigned_abs()))
            .max()
            .unwrap_or(0) as usize
    }

    /// SHA-256 of the canonical text line, hex-encoded.  Callers wanting a
    /// label-independent fingerprint hash the relabeled minimum.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_string().as_bytes());
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Canonical text form, one diagram per line:
/// `omega=[+,-]; seg: (1,-2) : 1,-2 ; seg: closed : ...`
/// A crossing-free segment ends with ` :`.  Exact text equality is the
/// regression contract; [`Pgp::parse`] inverts it bit-exactly.
impl fmt::Display for Pgp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omega=[")?;
        for (i, w) in self.omega.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *w > 0 { '+' } else { '-' })?;
        }
        write!(f, "]")?;
        for (i, seg) in self.segments.iter().enumerate() {
            write!(f, "{}", if i == 0 { "; " } else { " ; " })?;
            match seg.boundary {
                Some((a, b)) => write!(f, "seg: ({a},{b}) :")?,
                None => write!(f, "seg: closed :")?,
            }
            for (j, c) in seg.crossings.iter().enumerate() {
                write!(f, "{}{}", if j == 0 { " " } else { "," }, c)?;
            }
        }
        Ok(())
    }
}

/// Errors from [`Pgp::parse`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgpParseError {
    #[error("missing `omega=[...]` prefix")]
    MissingOmega,
    #[error("bad omega entry {0:?}")]
    BadOmega(String),
    #[error("bad segment {0:?}")]
    BadSegment(String),
    #[error("bad integer {0:?}")]
    BadInt(String),
}

impl Pgp {
    /// Parses the canonical text form.  Accepts exactly the output of
    /// `Display` (whitespace-tolerant around separators).
    pub fn parse(line: &str) -> Result<Self, PgpParseError> {
        let line = line.trim();
        let rest = line
            .strip_prefix("omega=[")
            .ok_or(PgpParseError::MissingOmega)?;
        let close = rest.find(']').ok_or(PgpParseError::MissingOmega)?;
        let (word, mut rest) = rest.split_at(close);
        rest = &rest[1..];
        let mut omega = Vec::new();
        for tok in word.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "+" | "+1" => omega.push(1),
                "-" | "-1" => omega.push(-1),
                other => return Err(PgpParseError::BadOmega(other.into())),
            }
        }
        let mut segments = Vec::new();
        for part in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let body = part
                .strip_prefix("seg:")
                .ok_or_else(|| PgpParseError::BadSegment(part.into()))?
                .trim();
            let (bnd, cr) = body
                .split_once(':')
                .ok_or_else(|| PgpParseError::BadSegment(part.into()))?;
            let bnd = bnd.trim();
            let boundary = if bnd == "closed" {
                None
            } else {
                let inner = bnd
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| PgpParseError::BadSegment(part.into()))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| PgpParseError::BadSegment(part.into()))?;
                Some((parse_int(a)?, parse_int(b)?))
            };
            let crossings = cr
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(parse_int)
                .collect::<Result<Vec<_>, _>>()?;
            segments.push(Segment {
                boundary,
                crossings,
            });
        }
        Ok(Pgp { omega, segments })
    }
}

fn parse_int(tok: &str) -> Result<i32, PgpParseError> {
    tok.trim()
        .parse()
        .map_err(|_| PgpParseError::BadInt(tok.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips() {
        let p = Pgp::new_unchecked(
            vec![-1],
            vec![
                Segment::open(1, -2, vec![1]),
                Segment::open(2, -1, vec![-1]),
            ],
        );
        let text = p.to_string();
        assert_eq!(text, "omega=[-]; seg: (1,-2) : 1 ; seg: (2,-1) : -1");
        assert_eq!(Pgp::parse(&text).unwrap(), p);
    }

    #[test]
    fn display_closed_and_empty() {
        let p = Pgp::new_unchecked(vec![], vec![Segment::closed(vec![])]);
        let text = p.to_string();
        assert_eq!(text, "omega=[]; seg: closed :");
        assert_eq!(Pgp::parse(&text).unwrap(), p);

        let longitude = Pgp::new_unchecked(vec![], vec![Segment::open(1, -1, vec![])]);
        let text = longitude.to_string();
        assert_eq!(text, "omega=[]; seg: (1,-1) :");
        assert_eq!(Pgp::parse(&text).unwrap(), longitude);
    }

    #[test]
    fn json_round_trips() {
        let p = Pgp::new_unchecked(
            vec![1, -1],
            vec![
                Segment::open(1, -1, vec![1, -2]),
                Segment::closed(vec![-1, 2]),
            ],
        );
        let json = serde_json::to_string(&p).unwrap();
        let back: Pgp = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = Pgp::new_unchecked(vec![], vec![Segment::open(1, -1, vec![])]);
        let b = Pgp::new_unchecked(vec![], vec![Segment::closed(vec![])]);
        assert_eq!(a.hash(), a.clone().hash());
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
