//! The Dehn twist move.
//!
//! A twist of the solid torus inserts the full-twist braid on all strands
//! next to the cutting curve.  Applying the opposite twist right after
//! would insert the inverse braid; instead of stacking the two, the move
//! first looks for a literal full twist of the opposite handedness sitting
//! next to the curve and deletes it, so a twist followed by its inverse is
//! the identity on canonical forms.

use std::collections::{HashMap, HashSet};

use crate::catalog::{err, MoveError};
use crate::circuits::{Circuits, EditPlan, Item};

pub(crate) fn delta(c: &Circuits, dir: i8) -> Result<Circuits, MoveError> {
    if dir != 1 && dir != -1 {
        return err("twist direction must be +1 or -1");
    }
    if c.k < 2 {
        // Fewer than two strands meet the curve: the twist is isotopic to
        // the identity.
        return Ok(c.clone());
    }
    if let Some(out) = cancel_twist(c, dir) {
        return Ok(out);
    }
    Ok(insert_twist(c, dir))
}

/// The full-twist braid word on `k` strands, as per-wire scripts.
struct TwistPattern {
    /// For each wire (indexed by its position on the curve, 0-based), the
    /// (braid crossing id, over) events met along the wire, bottom to top.
    scripts: Vec<Vec<(usize, bool)>>,
    /// Traversal-relative handedness per braid crossing id.
    omega: Vec<i8>,
}

/// Builds `(σ₁ … σ_{k−1})^k` with the left strand passing over for a
/// positive twist.  `norths[w]` tells whether wire `w` runs south-to-north
/// through the braid block, which fixes each crossing's traversal-relative
/// handedness.
fn full_twist(k: usize, chi: i8, norths: &[bool]) -> TwistPattern {
    let mut occ: Vec<usize> = (0..k).collect();
    let mut scripts = vec![Vec::new(); k];
    let mut omega = Vec::new();
    for _rep in 0..k {
        for j in 0..k - 1 {
            let (a, b) = (occ[j], occ[j + 1]);
            let id = omega.len();
            scripts[a].push((id, chi > 0));
            scripts[b].push((id, chi <= 0));
            let ua: i8 = if norths[a] { 1 } else { -1 };
            let ub: i8 = if norths[b] { 1 } else { -1 };
            omega.push(-chi * ua * ub);
            occ.swap(j, j + 1);
        }
    }
    debug_assert!(
        occ.iter().enumerate().all(|(i, &w)| i == w),
        "a full twist must close up as the identity braid"
    );
    TwistPattern { scripts, omega }
}

fn insert_twist(c: &Circuits, chi: i8) -> Circuits {
    let pl = c.passing_loci();
    let norths: Vec<bool> = pl.iter().map(|&(_, _, n)| n).collect();
    let pat = full_twist(c.k, chi, &norths);
    let n0 = c.crossings();
    let mut plan = EditPlan::new(c);
    for (w, &(wk, i, north)) in pl.iter().enumerate() {
        let items: Vec<Item> = pat.scripts[w]
            .iter()
            .map(|&(id, over)| Item::Passage {
                label: n0 + id + 1,
                over,
            })
            .collect();
        if north {
            plan.insert_after(wk, i, items);
        } else {
            let mut rev = items;
            rev.reverse();
            plan.insert_before(wk, i, rev);
        }
    }
    let mut out = plan.apply(c);
    out.omega.extend(pat.omega.iter().copied());
    out
}

/// Finds a literal full twist of handedness `-dir` next to the curve and
/// removes it.
fn cancel_twist(c: &Circuits, dir: i8) -> Option<Circuits> {
    let k = c.k;
    let pl = c.passing_loci();
    let norths: Vec<bool> = pl.iter().map(|&(_, _, n)| n).collect();
    let pat = full_twist(k, -dir, &norths);
    let m = k * (k - 1);

    let mut assign: Vec<Option<usize>> = vec![None; m];
    let mut taken: HashMap<usize, usize> = HashMap::new();
    let mut consumed: HashSet<(usize, usize)> = HashSet::new();
    for (w, &(wk, i, north)) in pl.iter().enumerate() {
        let len = c.walks[wk].len();
        let t = pat.scripts[w].len();
        if t + 1 > len {
            return None;
        }
        for s in 0..t {
            let j = if north {
                (i + 1 + s) % len
            } else {
                (i + len - 1 - s) % len
            };
            let Item::Passage { label, over } = c.walks[wk][j] else {
                return None;
            };
            // Walking away from the curve retraces the braid block bottom
            // to top on both kinds of wire, so the script order matches
            // either way.
            let (id, expect_over) = pat.scripts[w][s];
            if over != expect_over {
                return None;
            }
            match taken.get(&label) {
                Some(&other) if other != id => return None,
                _ => {}
            }
            match assign[id] {
                Some(l) if l != label => return None,
                _ => {
                    assign[id] = Some(label);
                    taken.insert(label, id);
                }
            }
            if !consumed.insert((wk, j)) {
                return None;
            }
        }
    }
    let labels: Vec<usize> = assign.iter().map(|a| a.expect("every id read twice")).collect();
    for (id, &label) in labels.iter().enumerate() {
        if c.omega[label - 1] != pat.omega[id] {
            return None;
        }
    }
    let mut plan = EditPlan::new(c);
    for &(w, i) in &consumed {
        plan.remove(w, i);
    }
    let mut out = plan.apply(c);
    out.drop_crossings(&labels);
    Some(out)
}
