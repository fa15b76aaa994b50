//! Structural and realizability validation.
//!
//! Realizability is checked exactly, with no geometry: the diagram's
//! 4-valent combinatorial map is closed up into the torus (the annulus
//! glued to an empty second annulus along both boundary circles, with γ
//! completed to an essential circle γ̂ through the empty side), and the
//! rotation system's face count must give Euler characteristic 0 for the
//! connected piece containing γ̂ — and 2 (a planar piece floating inside a
//! face) for every other connected piece.  Crossing rotations come from ω,
//! passing rotations from the bottom/top germ structure on γ.

use std::fmt;

use crate::code::Pgp;

/// A single violated invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// ω entry for this crossing label is not ±1.
    BadOmega { label: usize, value: i8 },
    /// A crossing label outside 1..n appeared in a crossing list.
    CrossingOutOfRange { value: i32 },
    /// A crossing label does not appear exactly once as an over-pass and
    /// once as an under-pass.
    CrossingCover {
        label: usize,
        overs: usize,
        unders: usize,
    },
    /// A boundary label is zero or outside ±1..±k.
    PassingOutOfRange { value: i32 },
    /// A passing label does not appear exactly once as bottom (+i) and
    /// once as top (−i).
    PassingCover {
        label: usize,
        bottoms: usize,
        tops: usize,
    },
    /// The gluing data does not embed in the annulus.
    NotRealizable { euler: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadOmega { label, value } => {
                write!(f, "omega[{label}] = {value} is not ±1")
            }
            Violation::CrossingOutOfRange { value } => {
                write!(f, "crossing label {value} out of range")
            }
            Violation::CrossingCover {
                label,
                overs,
                unders,
            } => match (overs, unders) {
                (o, 0) if *o > 0 => write!(f, "crossing {label} lacks under-pass"),
                (0, u) if *u > 0 => write!(f, "crossing {label} lacks over-pass"),
                _ => write!(
                    f,
                    "crossing {label} has {overs} over-passes and {unders} under-passes"
                ),
            },
            Violation::PassingOutOfRange { value } => {
                write!(f, "passing label {value} out of range")
            }
            Violation::PassingCover {
                label,
                bottoms,
                tops,
            } => write!(
                f,
                "passing {label} has {bottoms} bottom and {tops} top endpoints"
            ),
            Violation::NotRealizable { euler } => write!(
                f,
                "diagram is not realizable in the annulus (Euler characteristic {euler})"
            ),
        }
    }
}

/// The full list of violated invariants, in detection order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

impl Pgp {
    /// Checks all type invariants plus realizability.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        let n = self.omega.len();

        for (idx, w) in self.omega.iter().enumerate() {
            if *w != 1 && *w != -1 {
                violations.push(Violation::BadOmega {
                    label: idx + 1,
                    value: *w,
                });
            }
        }

        // Crossing labels: each of 1..n exactly once over, once under.
        let mut overs = vec![0usize; n];
        let mut unders = vec![0usize; n];
        for seg in &self.segments {
            for &c in &seg.crossings {
                let label = c.unsigned_abs() as usize;
                if label == 0 || label > n {
                    violations.push(Violation::CrossingOutOfRange { value: c });
                } else if c > 0 {
                    overs[label - 1] += 1;
                } else {
                    unders[label - 1] += 1;
                }
            }
        }
        for label in 1..=n {
            if overs[label - 1] != 1 || unders[label - 1] != 1 {
                violations.push(Violation::CrossingCover {
                    label,
                    overs: overs[label - 1],
                    unders: unders[label - 1],
                });
            }
        }

        // Passing labels: each of 1..k exactly once bottom, once top.
        let k = self.passings();
        let mut bottoms = vec![0usize; k];
        let mut tops = vec![0usize; k];
        for seg in &self.segments {
            if let Some((a, b)) = seg.boundary {
                for v in [a, b] {
                    let label = v.unsigned_abs() as usize;
                    if label == 0 || label > k {
                        violations.push(Violation::PassingOutOfRange { value: v });
                    } else if v > 0 {
                        bottoms[label - 1] += 1;
                    } else {
                        tops[label - 1] += 1;
                    }
                }
            }
        }
        for label in 1..=k {
            if bottoms[label - 1] != 1 || tops[label - 1] != 1 {
                violations.push(Violation::PassingCover {
                    label,
                    bottoms: bottoms[label - 1],
                    tops: tops[label - 1],
                });
            }
        }

        if violations.is_empty() {
            if let Err(v) = self.check_realizable() {
                violations.push(v);
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Euler-characteristic test of the torus closure.
    fn check_realizable(&self) -> Result<(), Violation> {
        let map = TorusMap::build(self);
        map.check()
    }
}

/// Germ slot layout, shared with the components/order code.
///
/// Vertices: crossings 0..n, passings n..n+k, then v_in, v_out.  Each has
/// four germ slots in counter-clockwise rotation order:
/// - crossing, ω=+1: [over-in, under-out, over-out, under-in];
///   ω=−1: [over-in, under-in, over-out, under-out];
/// - passing: [γ-east, bottom germ (+i), γ-west, top germ (−i)];
/// - v_in: [γ-east into the diagram, ∂-north, γ̂-west (empty side), ∂-south];
/// - v_out: [γ̂-east (empty side), ∂-north, γ-west into the diagram, ∂-south].
pub(crate) struct TorusMap {
    pub vertices: usize,
    /// α: the dart (= germ id, 4·vertex+slot) paired with each dart.
    pub mate: Vec<usize>,
}

pub(crate) fn crossing_slot(omega: i8, over: bool, arriving: bool) -> usize {
    match (omega > 0, over, arriving) {
        (_, true, true) => 0,
        (_, true, false) => 2,
        (true, false, true) => 3,
        (true, false, false) => 1,
        (false, false, true) => 1,
        (false, false, false) => 3,
    }
}

impl TorusMap {
    pub fn build(pgp: &Pgp) -> Self {
        let n = pgp.crossings();
        let k = pgp.passings();
        let vertices = n + k + 2;
        let v_in = n + k;
        let v_out = n + k + 1;
        let mut mate = vec![usize::MAX; 4 * vertices];
        let mut connect = |a: usize, b: usize| {
            debug_assert_eq!(mate[a], usize::MAX, "germ used twice");
            debug_assert_eq!(mate[b], usize::MAX, "germ used twice");
            mate[a] = b;
            mate[b] = a;
        };

        // γ along the diagram side, then closed through the empty side.
        let gamma_vertex = |pos: usize| -> (usize, usize, usize) {
            // (vertex, east slot, west slot) for position 0..=k+1 along γ.
            if pos == 0 {
                (v_in, 0, 2)
            } else if pos <= k {
                (n + pos - 1, 0, 2)
            } else {
                (v_out, 0, 2)
            }
        };
        for pos in 0..=k {
            let (va, ea, _) = gamma_vertex(pos);
            let (vb, _, wb) = gamma_vertex(pos + 1);
            connect(4 * va + ea, 4 * vb + wb);
        }
        // Empty-annulus side of γ̂: v_out east germ back to v_in west germ.
        connect(4 * v_out, 4 * v_in + 2);
        // Boundary circles as loops at v_in / v_out.
        connect(4 * v_in + 1, 4 * v_in + 3);
        connect(4 * v_out + 1, 4 * v_out + 3);

        // Strand arcs, wired along each segment's stored list order.  ω is
        // relative to canonical directions, so convert to stored-relative
        // handedness: each strand stored against its canonical direction
        // flips the crossing's pattern.
        let (over_seg, under_seg) = pgp.passage_segments();
        let stored_dir: Vec<i8> = pgp
            .segments
            .iter()
            .map(|s| if s.canonical_forward() { 1 } else { -1 })
            .collect();
        let stored_omega: Vec<i8> = (0..n)
            .map(|c| pgp.omega[c] * stored_dir[over_seg[c]] * stored_dir[under_seg[c]])
            .collect();
        let passage_germ = |c: i32, arriving: bool| -> usize {
            let idx = c.unsigned_abs() as usize - 1;
            4 * idx + crossing_slot(stored_omega[idx], c > 0, arriving)
        };
        let endpoint_germ = |b: i32| -> usize {
            let idx = b.unsigned_abs() as usize - 1;
            4 * (n + idx) + if b > 0 { 1 } else { 3 }
        };
        for seg in &pgp.segments {
            match seg.boundary {
                Some((b1, b2)) => {
                    let mut prev = endpoint_germ(b1);
                    for &c in &seg.crossings {
                        connect(prev, passage_germ(c, true));
                        prev = passage_germ(c, false);
                    }
                    connect(prev, endpoint_germ(b2));
                }
                None => {
                    // Crossingless closed segments are free null-homotopic
                    // loops with no map presence.
                    if seg.crossings.is_empty() {
                        continue;
                    }
                    let first = seg.crossings[0];
                    let mut prev = passage_germ(first, false);
                    for &c in &seg.crossings[1..] {
                        connect(prev, passage_germ(c, true));
                        prev = passage_germ(c, false);
                    }
                    connect(prev, passage_germ(first, true));
                }
            }
        }

        TorusMap { vertices, mate }
    }

    /// Faces via the permutation φ = σ∘α (σ = CCW germ rotation).
    pub fn check(&self) -> Result<(), Violation> {
        let darts = 4 * self.vertices;
        debug_assert!(self.mate.iter().all(|&m| m != usize::MAX));

        // Union-find over vertices along edges.
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for d in 0..darts {
            let a = d / 4;
            let b = self.mate[d] / 4;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }

        // Count faces per component.
        let mut face_count = vec![0i64; self.vertices];
        let mut seen = vec![false; darts];
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let m = self.mate[d];
                d = 4 * (m / 4) + (m + 1) % 4;
            }
            let root = find(&mut parent, start / 4);
            face_count[root] += 1;
        }

        // Vertex/edge counts per component.
        let mut v_count = vec![0i64; self.vertices];
        for v in 0..self.vertices {
            let root = find(&mut parent, v);
            v_count[root] += 1;
        }
        // Every vertex is 4-valent, so each component has 2·V_c edges.
        let gamma_root = find(&mut parent, self.vertices - 2);
        for v in 0..self.vertices {
            if v_count[v] == 0 {
                continue;
            }
            let euler = v_count[v] - 2 * v_count[v] + face_count[v];
            let expected = if v == gamma_root { 0 } else { 2 };
            if euler != expected {
                return Err(Violation::NotRealizable { euler });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Segment;

    #[test]
    fn unknot_and_longitude_validate() {
        // Affine unknot: one crossingless closed segment, k = 0.
        let unknot = Pgp::new_unchecked(vec![], vec![Segment::closed(vec![])]);
        assert!(unknot.validate().is_ok());

        // Longitude: one segment through passing 1, no crossings.
        let longitude = Pgp::new_unchecked(vec![], vec![Segment::open(1, -1, vec![])]);
        assert!(longitude.validate().is_ok());
    }

    #[test]
    fn canonical_one_crossing_wrap2_validates() {
        // The 1-crossing wrap-2 diagram.  With segment (1,−2) over, the
        // strands run bottom-1→top-2 over bottom-2→top-1, whose chirality
        // forces ω = −1; the mirror swaps over/under and forces ω = +1.
        let d_minus = Pgp::new_unchecked(
            vec![-1],
            vec![
                Segment::open(1, -2, vec![1]),
                Segment::open(2, -1, vec![-1]),
            ],
        );
        assert!(d_minus.validate().is_ok());

        let d_plus = Pgp::new_unchecked(
            vec![1],
            vec![
                Segment::open(1, -2, vec![-1]),
                Segment::open(2, -1, vec![1]),
            ],
        );
        assert!(d_plus.validate().is_ok());
    }

    #[test]
    fn wrong_handedness_for_the_arrangement_rejected() {
        // Same strand arrangement as the D⁻ diagram but ω = +1: the local
        // rotations cannot be completed to an annulus embedding.
        let p = Pgp::new_unchecked(
            vec![1],
            vec![
                Segment::open(1, -2, vec![1]),
                Segment::open(2, -1, vec![-1]),
            ],
        );
        let report = p.validate().unwrap_err();
        assert!(matches!(
            report.violations[0],
            Violation::NotRealizable { .. }
        ));
    }

    #[test]
    fn handedness_is_direction_canonical() {
        // The D⁻ diagram with its second segment written backwards: ω is
        // relative to label-derived canonical directions, so it keeps its
        // value and the encoding still validates.
        let flipped = Pgp::new_unchecked(
            vec![-1],
            vec![
                Segment::open(1, -2, vec![1]),
                Segment::open(-1, 2, vec![-1]),
            ],
        );
        assert!(flipped.validate().is_ok());

        // Flipping ω along with the storage direction changes the claimed
        // chirality to the one this strand arrangement cannot realize.
        let lying = Pgp::new_unchecked(
            vec![1],
            vec![
                Segment::open(1, -2, vec![1]),
                Segment::open(-1, 2, vec![-1]),
            ],
        );
        assert!(lying.validate().is_err());
    }

    #[test]
    fn double_over_pass_reported() {
        let p = Pgp::new_unchecked(
            vec![1],
            vec![
                Segment::open(1, -2, vec![1]),
                Segment::open(2, -1, vec![1]),
            ],
        );
        let report = p.validate().unwrap_err();
        assert!(report
            .violations
            .contains(&Violation::CrossingCover {
                label: 1,
                overs: 2,
                unders: 0,
            }));
        assert!(report.to_string().contains("crossing 1 lacks under-pass"));
    }

    #[test]
    fn missing_top_passing_reported() {
        let p = Pgp::new_unchecked(vec![], vec![Segment::open(1, 2, vec![])]);
        let report = p.validate().unwrap_err();
        assert!(matches!(
            report.violations[0],
            Violation::PassingCover { label: 1, .. }
        ));
    }

    #[test]
    fn unrealizable_gluing_rejected() {
        // Two crossing-free arcs glued crosswise: a single closed curve
        // winding twice around the annulus.  Its arcs' endpoints interleave
        // along the square's boundary, so an embedding needs a crossing —
        // with none present, the closure is not an annulus diagram.
        let twisted = Pgp::new_unchecked(
            vec![],
            vec![Segment::open(1, -2, vec![]), Segment::open(2, -1, vec![])],
        );
        let report = twisted.validate().unwrap_err();
        assert!(matches!(
            report.violations[0],
            Violation::NotRealizable { .. }
        ));

        // A 1-crossing closed segment whose passages repeat the same
        // crossing adjacently embeds as a kink, for either handedness.
        for w in [1i8, -1] {
            let kink = Pgp::new_unchecked(vec![w], vec![Segment::closed(vec![1, -1])]);
            assert!(kink.validate().is_ok());
        }
    }

    #[test]
    fn genus_forcing_structure_rejected() {
        // A closed 1-crossing segment c, -c is a kink (valid); interleaving
        // two crossings as a,b,-a,-b on one affine closed curve forces a
        // torus-only embedding for some handedness pairs.
        let mut seen_invalid = false;
        for wa in [1i8, -1] {
            for wb in [1i8, -1] {
                let p = Pgp::new_unchecked(
                    vec![wa, wb],
                    vec![Segment::closed(vec![1, 2, -1, -2])],
                );
                if p.validate().is_err() {
                    seen_invalid = true;
                }
            }
        }
        assert!(
            seen_invalid,
            "an interleaved affine Gauss code must fail for some handedness"
        );
    }
}
