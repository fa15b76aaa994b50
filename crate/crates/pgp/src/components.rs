//! Component tracing, windings, writhe, crossing signs and sublinks.

use thiserror::Error;

use crate::code::{Pgp, Segment};

/// One link component of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Indices into the PGP's segment list, in traversal order.
    pub segments: Vec<usize>,
    /// Net winding around the annulus under the traced orientation: each
    /// passing crossed top→bottom counts +1, bottom→top −1.
    pub winding: i64,
}

/// The component decomposition of a diagram together with the synthesized
/// orientation that produced it (each component's first-listed segment is
/// traversed forward).  All 2^components consistent orientations arise by
/// flipping whole components, which negates their windings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub list: Vec<Component>,
    /// Component index per segment.
    pub segment_component: Vec<usize>,
    /// Whether each segment is traversed in its stored direction.
    pub segment_forward: Vec<bool>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.list.len()
    }

    /// The link's winding number: the maximum over orientations of the
    /// total winding, i.e. Σ|w_i|.
    pub fn max_winding(&self) -> i64 {
        self.list.iter().map(|c| c.winding.abs()).sum()
    }
}

/// Errors from structural queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentError {
    #[error("empty component selection")]
    EmptySelection,
    #[error("component index {0} out of range")]
    BadIndex(usize),
}

impl Pgp {
    /// Glues segment ends across passings and groups segments into
    /// components, synthesizing a consistent orientation.
    pub fn trace_components(&self) -> Components {
        let k = self.passings();
        // Passing label i → (segment, endpoint#) for the +i and −i ends.
        let mut bottom = vec![usize::MAX; k + 1];
        let mut top = vec![usize::MAX; k + 1];
        // Encoded as 2*segment + endpoint#.
        for (s, seg) in self.segments.iter().enumerate() {
            if let Some((a, b)) = seg.boundary {
                for (e, v) in [(0, a), (1, b)] {
                    let slot = if v > 0 { &mut bottom } else { &mut top };
                    slot[v.unsigned_abs() as usize] = 2 * s + e;
                }
            }
        }

        let m = self.segments.len();
        let mut segment_component = vec![usize::MAX; m];
        let mut segment_forward = vec![true; m];
        let mut list = Vec::new();

        for start in 0..m {
            if segment_component[start] != usize::MAX {
                continue;
            }
            let comp_idx = list.len();
            if self.segments[start].is_closed() {
                segment_component[start] = comp_idx;
                list.push(Component {
                    segments: vec![start],
                    winding: 0,
                });
                continue;
            }
            let mut segments = Vec::new();
            let mut winding = 0i64;
            let mut seg = start;
            let mut forward = true;
            loop {
                segment_component[seg] = comp_idx;
                segment_forward[seg] = forward;
                segments.push(seg);
                let (a, b) = self.segments[seg].boundary.expect("open segment");
                let exit = if forward { b } else { a };
                // Crossing γ: leaving through the top copy (−i) re-enters
                // from the bottom copy (+i) and counts +1; the reverse
                // counts −1.
                let (entry_end, step) = if exit < 0 {
                    (bottom[exit.unsigned_abs() as usize], 1)
                } else {
                    (top[exit.unsigned_abs() as usize], -1)
                };
                winding += step;
                let next_seg = entry_end / 2;
                let next_forward = entry_end % 2 == 0;
                if next_seg == start && next_forward {
                    break;
                }
                seg = next_seg;
                forward = next_forward;
            }
            list.push(Component { segments, winding });
        }

        Components {
            list,
            segment_component,
            segment_forward,
        }
    }

    /// The sign of every crossing under the traced orientation, indexed by
    /// crossing label −1.  sign = −ω·d_over·d_under, where d = +1 when the
    /// passage's segment is traced along its canonical direction — the
    /// combinatorial form of the rule that a crossing is positive when the
    /// outgoing under-strand leaves to the left of the over-strand.
    pub fn crossing_signs(&self, comps: &Components) -> Vec<i8> {
        let (over_seg, under_seg) = self.passage_segments();
        let traced_dir: Vec<i8> = self
            .segments
            .iter()
            .enumerate()
            .map(|(s, seg)| {
                let stored = if comps.segment_forward[s] { 1 } else { -1 };
                let canonical = if seg.canonical_forward() { 1 } else { -1 };
                stored * canonical
            })
            .collect();
        (0..self.crossings())
            .map(|c| -self.omega[c] * traced_dir[over_seg[c]] * traced_dir[under_seg[c]])
            .collect()
    }

    /// For each crossing label−1, the segment indices holding its over-
    /// and under-passage.
    pub fn passage_segments(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.crossings();
        let mut over = vec![usize::MAX; n];
        let mut under = vec![usize::MAX; n];
        for (s, seg) in self.segments.iter().enumerate() {
            for &c in &seg.crossings {
                let idx = c.unsigned_abs() as usize - 1;
                if c > 0 {
                    over[idx] = s;
                } else {
                    under[idx] = s;
                }
            }
        }
        (over, under)
    }

    /// Sum of signs over the crossings both of whose strands belong to the
    /// same component.  Independent of the orientation choice: flipping a
    /// component flips both d-factors of each of its self-crossings.
    pub fn self_writhe(&self) -> i64 {
        let comps = self.trace_components();
        let signs = self.crossing_signs(&comps);
        let (over_seg, under_seg) = self.passage_segments();
        (0..self.crossings())
            .filter(|&c| {
                comps.segment_component[over_seg[c]] == comps.segment_component[under_seg[c]]
            })
            .map(|c| signs[c] as i64)
            .sum()
    }

    /// Linking number of two distinct components: half the signed count of
    /// crossings between them, under the traced orientation.
    pub fn linking_number(&self, comps: &Components, a: usize, b: usize) -> i64 {
        let signs = self.crossing_signs(comps);
        let (over_seg, under_seg) = self.passage_segments();
        let total: i64 = (0..self.crossings())
            .filter(|&c| {
                let co = comps.segment_component[over_seg[c]];
                let cu = comps.segment_component[under_seg[c]];
                (co == a && cu == b) || (co == b && cu == a)
            })
            .map(|c| signs[c] as i64)
            .sum();
        total / 2
    }

    /// Restricts the diagram to the chosen components: dropped segments
    /// disappear, crossings with a dropped strand are spliced through, and
    /// the remaining labels are renumbered.  Returns the canonical
    /// relabeling of the result.
    pub fn sublink(&self, keep: &[usize]) -> Result<Pgp, ComponentError> {
        if keep.is_empty() {
            return Err(ComponentError::EmptySelection);
        }
        let comps = self.trace_components();
        for &c in keep {
            if c >= comps.count() {
                return Err(ComponentError::BadIndex(c));
            }
        }
        let kept_seg: Vec<bool> = (0..self.segments.len())
            .map(|s| keep.contains(&comps.segment_component[s]))
            .collect();
        // A crossing survives iff both passages lie on kept segments.
        let (over_seg, under_seg) = self.passage_segments();
        let mut new_label = vec![0i32; self.crossings()];
        let mut omega = Vec::new();
        for c in 0..self.crossings() {
            if kept_seg[over_seg[c]] && kept_seg[under_seg[c]] {
                omega.push(self.omega[c]);
                new_label[c] = omega.len() as i32;
            }
        }
        // Passings of kept segments, renumbered in order.
        let k = self.passings();
        let mut new_passing = vec![0i32; k + 1];
        let mut next = 0i32;
        for (i, slot) in new_passing.iter_mut().enumerate().skip(1) {
            let used = self.segments.iter().enumerate().any(|(s, seg)| {
                kept_seg[s]
                    && seg
                        .boundary
                        .map(|(a, b)| a.unsigned_abs() as usize == i || b.unsigned_abs() as usize == i)
                        .unwrap_or(false)
            });
            if used {
                next += 1;
                *slot = next;
            }
        }
        let segments: Vec<Segment> = self
            .segments
            .iter()
            .enumerate()
            .filter(|(s, _)| kept_seg[*s])
            .map(|(_, seg)| Segment {
                boundary: seg.boundary.map(|(a, b)| {
                    let map = |v: i32| new_passing[v.unsigned_abs() as usize] * v.signum();
                    (map(a), map(b))
                }),
                crossings: seg
                    .crossings
                    .iter()
                    .filter(|&&c| new_label[c.unsigned_abs() as usize - 1] != 0)
                    .map(|&c| new_label[c.unsigned_abs() as usize - 1] * c.signum())
                    .collect(),
            })
            .collect();
        let sub = Pgp { omega, segments };
        debug_assert!(sub.validate().is_ok(), "sublink of a valid diagram is valid");
        Ok(sub.relabel_minimal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn longitude() -> Pgp {
        Pgp::new(vec![], vec![Segment::open(1, -1, vec![])]).unwrap()
    }

    fn unknot() -> Pgp {
        Pgp::new(vec![], vec![Segment::closed(vec![])]).unwrap()
    }

    fn wrap2_knot() -> Pgp {
        Pgp::new(
            vec![-1],
            vec![
                Segment::open(1, -2, vec![1]),
                Segment::open(2, -1, vec![-1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn longitude_winds_once() {
        let comps = longitude().trace_components();
        assert_eq!(comps.count(), 1);
        assert_eq!(comps.list[0].winding.abs(), 1);
        assert_eq!(comps.max_winding(), 1);
    }

    #[test]
    fn unknot_winds_zero() {
        let comps = unknot().trace_components();
        assert_eq!(comps.count(), 1);
        assert_eq!(comps.list[0].winding, 0);
    }

    #[test]
    fn wrap2_knot_is_one_component_winding_two() {
        let comps = wrap2_knot().trace_components();
        assert_eq!(comps.count(), 1);
        assert_eq!(comps.list[0].winding.abs(), 2);
    }

    #[test]
    fn wrap2_knot_self_writhe_is_plus_one() {
        assert_eq!(wrap2_knot().self_writhe(), 1);
    }

    fn two_strand_link() -> Pgp {
        // The closed 2-braid with two like crossings: two strands each
        // winding once around the annulus and linking once.
        Pgp::new(
            vec![-1, -1],
            vec![
                Segment::open(1, -1, vec![1, -2]),
                Segment::open(2, -2, vec![-1, 2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_parallel_strands_link() {
        let p = two_strand_link();
        let comps = p.trace_components();
        assert_eq!(comps.count(), 2);
        assert_eq!(comps.list[0].winding.abs(), 1);
        assert_eq!(comps.list[1].winding.abs(), 1);
        assert_eq!(p.self_writhe(), 0, "all crossings are between components");
        assert_eq!(p.linking_number(&comps, 0, 1).abs(), 1);
    }

    #[test]
    fn sublink_keep_one_of_two_split_parts() {
        // Longitude plus a disjoint affine unknot.
        let p = Pgp::new(
            vec![],
            vec![Segment::open(1, -1, vec![]), Segment::closed(vec![])],
        )
        .unwrap();
        let comps = p.trace_components();
        assert_eq!(comps.count(), 2);
        assert_eq!(p.sublink(&[0]).unwrap(), longitude().relabel_minimal());
        assert_eq!(p.sublink(&[1]).unwrap(), unknot().relabel_minimal());
        assert_eq!(p.sublink(&[]), Err(ComponentError::EmptySelection));
    }

    #[test]
    fn sublink_splices_crossings_through() {
        // Keep one strand of the 2-crossing link: crossings vanish and the
        // survivor is the longitude.
        let p = two_strand_link();
        for keep in [0usize, 1] {
            let sub = p.sublink(&[keep]).unwrap();
            assert_eq!(sub, longitude(), "component {keep}");
        }
    }
}
