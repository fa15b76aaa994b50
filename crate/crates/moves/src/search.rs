//! Applying moves, neighborhoods, and equivalence search.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use stgen_pgp::Pgp;

use crate::catalog::{rewrite, Move, MoveError};
use crate::circuits::{Circuits, Item};

/// Applies a move to a diagram and returns the canonical form of the
/// result.
pub fn apply(p: &Pgp, mv: &Move) -> Result<Pgp, MoveError> {
    apply_circuits(&Circuits::from_pgp(p), mv)
}

/// Applies each move to the same diagram, returning the canonical
/// results of those that succeed, in move order.
///
/// Equivalent to calling [`apply`] per move and keeping the successes,
/// but the diagram is converted to its working representation only
/// once, which matters in enumeration loops that probe many moves
/// against many diagrams.
pub fn apply_each(p: &Pgp, moves: impl IntoIterator<Item = Move>) -> Vec<(Move, Pgp)> {
    let c = Circuits::from_pgp(p);
    moves
        .into_iter()
        .filter_map(|mv| apply_circuits(&c, &mv).ok().map(|q| (mv, q)))
        .collect()
}

fn apply_circuits(c: &Circuits, mv: &Move) -> Result<Pgp, MoveError> {
    let out = rewrite(c, mv)?;
    match out.to_pgp() {
        Ok(q) => Ok(q.relabel_minimal()),
        Err(_) => Err(MoveError::NotApplicable(
            "rewrite does not embed in the solid torus".into(),
        )),
    }
}

/// Absolute size caps that a move's result must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    pub max_crossings: usize,
    pub max_passings: usize,
}

impl Constraints {
    pub fn new(max_crossings: usize, max_passings: usize) -> Constraints {
        Constraints {
            max_crossings,
            max_passings,
        }
    }

    pub fn allows(&self, p: &Pgp) -> bool {
        p.crossings() <= self.max_crossings && p.passings() <= self.max_passings
    }
}

/// Every applicable move at every site, paired with the canonical result,
/// keeping only results within the constraints.  The order is
/// deterministic: by move kind, then by site.
pub fn neighbors(p: &Pgp, constraints: &Constraints) -> Vec<(Move, Pgp)> {
    neighbors_filtered(p, constraints, |_| true)
}

/// Like [`neighbors`], restricted to the moves the filter accepts.  The
/// filter sees the candidate before it is tried, so rejected kinds cost
/// nothing to rule out.
pub fn neighbors_filtered(
    p: &Pgp,
    constraints: &Constraints,
    keep: impl Fn(&Move) -> bool,
) -> Vec<(Move, Pgp)> {
    let c = Circuits::from_pgp(&p.relabel_minimal());
    let mut out = Vec::new();
    for mv in candidate_moves(&c, constraints) {
        if !keep(&mv) {
            continue;
        }
        if let Ok(q) = apply_circuits(&c, &mv) {
            if constraints.allows(&q) {
                out.push((mv, q));
            }
        }
    }
    out
}

/// Whether any size-reducing move — a kink removal, a bigon removal or a
/// strand retraction across the cutting curve — applies to the diagram.
pub fn has_simplifying_move(p: &Pgp) -> bool {
    let c = Circuits::from_pgp(&p.relabel_minimal());
    let n = c.crossings();
    for crossing in 1..=n {
        if apply_circuits(&c, &Move::Omega1Remove { crossing }).is_ok() {
            return true;
        }
    }
    for c1 in 1..=n {
        for c2 in c1 + 1..=n {
            if apply_circuits(&c, &Move::Omega2Remove { c1, c2 }).is_ok() {
                return true;
            }
        }
    }
    for p in 1..c.k {
        if apply_circuits(&c, &Move::Theta2PlusRemove { p }).is_ok() {
            return true;
        }
    }
    false
}

/// The number of consecutive passage items next to `(w, i)` before the
/// next passing item (or the anchor itself, cyclically).
fn passage_span(c: &Circuits, w: usize, i: usize, back: bool) -> usize {
    let len = c.walks[w].len();
    let mut t = 0;
    while t + 1 < len {
        let j = if back {
            (i + len - (t + 1)) % len
        } else {
            (i + t + 1) % len
        };
        if c.walks[w][j].is_passing() {
            break;
        }
        t += 1;
    }
    t
}

fn candidate_moves(c: &Circuits, cons: &Constraints) -> Vec<Move> {
    let mut mvs = Vec::new();
    let n = c.crossings();
    let k = c.k;
    let gaps = |w: usize| 0..c.walks[w].len().max(1);

    if n < cons.max_crossings {
        for walk in 0..c.walks.len() {
            for gap in gaps(walk) {
                for over_first in [false, true] {
                    for handed in [-1i8, 1] {
                        mvs.push(Move::Omega1Add {
                            walk,
                            gap,
                            over_first,
                            handed,
                        });
                    }
                }
            }
        }
    }
    for crossing in 1..=n {
        mvs.push(Move::Omega1Remove { crossing });
    }
    if n + 2 <= cons.max_crossings {
        for walk1 in 0..c.walks.len() {
            for gap1 in gaps(walk1) {
                for walk2 in 0..c.walks.len() {
                    for gap2 in gaps(walk2) {
                        for variant in 0..8 {
                            mvs.push(Move::Omega2Add {
                                walk1,
                                gap1,
                                walk2,
                                gap2,
                                variant,
                            });
                        }
                    }
                }
            }
        }
    }
    for c1 in 1..=n {
        for c2 in c1 + 1..=n {
            mvs.push(Move::Omega2Remove { c1, c2 });
        }
    }

    let mut pairs = Vec::new();
    for (w, walk) in c.walks.iter().enumerate() {
        if walk.len() < 2 {
            continue;
        }
        for i in 0..walk.len() {
            let j = (i + 1) % walk.len();
            if let (Item::Passage { label: la, over: oa }, Item::Passage { label: lb, over: ob }) =
                (walk[i], walk[j])
            {
                if la != lb {
                    pairs.push(((w, i), [la, lb], oa == ob));
                }
            }
        }
    }
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            for d in b + 1..pairs.len() {
                let mut labels = [
                    pairs[a].1[0],
                    pairs[a].1[1],
                    pairs[b].1[0],
                    pairs[b].1[1],
                    pairs[d].1[0],
                    pairs[d].1[1],
                ];
                labels.sort_unstable();
                let triangle = labels[0] == labels[1]
                    && labels[2] == labels[3]
                    && labels[4] == labels[5]
                    && labels[1] != labels[2]
                    && labels[3] != labels[4];
                if triangle {
                    mvs.push(Move::Omega3 {
                        sites: [pairs[a].0, pairs[b].0, pairs[d].0],
                    });
                }
            }
        }
    }

    for p in 1..k {
        mvs.push(Move::Theta1Plus { p });
    }
    if k + 2 <= cons.max_passings {
        for walk in 0..c.walks.len() {
            for gap in gaps(walk) {
                for slot in 0..=k {
                    for rightward in [false, true] {
                        mvs.push(Move::Theta2PlusAdd {
                            walk,
                            gap,
                            slot,
                            rightward,
                        });
                    }
                }
            }
        }
    }
    for p in 1..k {
        mvs.push(Move::Theta2PlusRemove { p });
    }
    for dir in [1i8, -1] {
        mvs.push(Move::Delta { dir });
    }
    mvs.push(Move::RotateR);
    mvs.push(Move::ReflectQ);

    let loci = c.passage_loci();
    for crossing in 1..=n {
        for back1 in [false, true] {
            for back2 in [false, true] {
                let (wo, io) = loci[crossing - 1][0];
                let (wu, iu) = loci[crossing - 1][1];
                let s1 = passage_span(c, wo, io, back1);
                let s2 = passage_span(c, wu, iu, back2);
                for t1 in 1..=s1 {
                    for t2 in 1..=s2 {
                        mvs.push(Move::Flype {
                            crossing,
                            back1,
                            back2,
                            t1,
                            t2,
                        });
                    }
                }
            }
        }
    }

    for minus in [false, true] {
        for &((w, i), [la, lb], same) in &pairs {
            if !same {
                continue;
            }
            let Item::Passage { over, .. } = c.walks[w][i] else {
                unreachable!()
            };
            let pa = loci[la - 1][usize::from(over)];
            let pb = loci[lb - 1][usize::from(over)];
            for back1 in [false, true] {
                for back2 in [false, true] {
                    let s1 = passage_span(c, pa.0, pa.1, back1);
                    let s2 = passage_span(c, pb.0, pb.1, back2);
                    for t1 in 1..=s1 {
                        for t2 in 1..=s2 {
                            let site = ((w, i), [back1, back2], [t1, t2]);
                            let ((walk, index), [b1, b2], [u1, u2]) = site;
                            if minus {
                                mvs.push(Move::OmegaBarMinus3 {
                                    walk,
                                    index,
                                    back1: b1,
                                    back2: b2,
                                    t1: u1,
                                    t2: u2,
                                });
                            } else {
                                mvs.push(Move::OmegaBar3 {
                                    walk,
                                    index,
                                    back1: b1,
                                    back2: b2,
                                    t1: u1,
                                    t2: u2,
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    let pl = c.passing_loci();
    for p in 1..k {
        let (w1, i1, n1) = pl[p - 1];
        let (w2, i2, n2) = pl[p];
        let s1 = passage_span(c, w1, i1, !n1);
        let s2 = passage_span(c, w2, i2, !n2);
        for t1 in 1..=s1 {
            for t2 in 1..=s2 {
                mvs.push(Move::ThetaBar1 { p, t1, t2 });
            }
        }
    }
    mvs
}

/// The canonical forms of the diagram's images under the rotation and
/// reflection symmetries (a Klein four-group), deduplicated and sorted.
pub fn symmetry_variants(p: &Pgp) -> Vec<Pgp> {
    let base = p.relabel_minimal();
    let r = apply(&base, &Move::RotateR).expect("rotation always applies");
    let q = apply(&base, &Move::ReflectQ).expect("reflection always applies");
    let rq = apply(&r, &Move::ReflectQ).expect("reflection always applies");
    let mut all = vec![base, r, q, rq];
    all.sort_by(Pgp::canonical_compare);
    all.dedup();
    all
}

/// The canonical result of `t` Dehn twists of the solid torus (negative
/// `t` twists the other way).
pub fn dehn_twist(p: &Pgp, t: i64) -> Pgp {
    let mut cur = p.relabel_minimal();
    let dir: i8 = if t >= 0 { 1 } else { -1 };
    for _ in 0..t.unsigned_abs() {
        cur = apply(&cur, &Move::Delta { dir }).expect("the twist always applies");
    }
    cur
}

/// A replayable sequence of moves from a start diagram; each step records
/// the move and the canonical diagram it produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovePath {
    pub start: Pgp,
    pub steps: Vec<(Move, Pgp)>,
}

impl MovePath {
    /// The final diagram of the path.
    pub fn end(&self) -> &Pgp {
        self.steps.last().map(|(_, q)| q).unwrap_or(&self.start)
    }

    /// Re-applies every move and checks each recorded result.
    pub fn replay(&self) -> bool {
        let mut cur = self.start.clone();
        for (mv, expect) in &self.steps {
            match apply(&cur, mv) {
                Ok(q) if q == *expect => cur = q,
                _ => return false,
            }
        }
        true
    }

    /// One line per move: `KIND @ site -> result-hash`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (mv, q) in &self.steps {
            let _ = writeln!(s, "{mv} -> {}", q.hash());
        }
        s
    }
}

/// The identity of a diagram's symmetry class: the smallest hash among
/// its symmetry variants.
fn class_id(p: &Pgp) -> String {
    symmetry_variants(p)
        .iter()
        .map(Pgp::hash)
        .min()
        .expect("at least one variant")
}

/// The symmetry variants of `p` with the move chains reaching them.
fn variant_paths(p: &Pgp) -> Vec<(Vec<(Move, Pgp)>, Pgp)> {
    let base = p.relabel_minimal();
    let r = apply(&base, &Move::RotateR).expect("rotation always applies");
    let q = apply(&base, &Move::ReflectQ).expect("reflection always applies");
    let rq = apply(&r, &Move::ReflectQ).expect("reflection always applies");
    vec![
        (Vec::new(), base),
        (vec![(Move::RotateR, r.clone())], r.clone()),
        (vec![(Move::ReflectQ, q.clone())], q),
        (
            vec![(Move::RotateR, r), (Move::ReflectQ, rq.clone())],
            rq,
        ),
    ]
}

/// Depth-first search for a move path from `a` to `b` or any of its
/// symmetry variants.  Symmetry classes are treated as single nodes, the
/// rotation/reflection steps that switch between variants are recorded in
/// the path but do not count toward `max_depth`, and every intermediate
/// diagram must satisfy the constraints.
pub fn find_path(a: &Pgp, b: &Pgp, max_depth: usize, constraints: &Constraints) -> Option<MovePath> {
    let start = a.relabel_minimal();
    let target = class_id(&b.relabel_minimal());
    let start_id = class_id(&start);
    let mut visited = HashSet::new();
    visited.insert(start_id.clone());
    let mut path = MovePath {
        start,
        steps: Vec::new(),
    };
    if start_id == target {
        return Some(path);
    }
    if dfs(
        path.start.clone(),
        &target,
        max_depth,
        constraints,
        &mut visited,
        &mut path.steps,
    ) {
        debug_assert!(path.replay());
        Some(path)
    } else {
        None
    }
}

fn dfs(
    cur: Pgp,
    target: &str,
    budget: usize,
    constraints: &Constraints,
    visited: &mut HashSet<String>,
    steps: &mut Vec<(Move, Pgp)>,
) -> bool {
    if budget == 0 {
        return false;
    }
    for (prefix, variant) in variant_paths(&cur) {
        for (mv, q) in neighbors(&variant, constraints) {
            let id = class_id(&q);
            if id == target {
                steps.extend(prefix);
                steps.push((mv, q));
                return true;
            }
            if visited.insert(id) {
                let mark = steps.len();
                steps.extend(prefix.iter().cloned());
                steps.push((mv, q.clone()));
                if dfs(q, target, budget - 1, constraints, visited, steps) {
                    return true;
                }
                steps.truncate(mark);
            }
        }
    }
    false
}
