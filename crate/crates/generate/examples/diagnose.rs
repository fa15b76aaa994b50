//! Temporary diagnostic: find reduced forms lost by the redundancy skip
//! at a given cap and trace one back to its source candidate.

use std::collections::HashSet;

use stgen_generate::{enumerate_pairings, expand, to_pgp, Pairing};
use stgen_pgp::Pgp;

fn main() {
    let cap: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let kmax = (2 * cap).max(2);
    let mut with_skip: HashSet<Pgp> = HashSet::new();
    let mut kept: Vec<Pairing> = Vec::new();
    let mut dropped: Vec<Pairing> = Vec::new();
    for k in 1..=kmax {
        for p in enumerate_pairings_capped(k, cap) {
            if p.is_split() {
                continue;
            }
            if p.bite_redundant() {
                dropped.push(p);
            } else {
                kept.push(p);
            }
        }
    }
    eprintln!("kept {} dropped {}", kept.len(), dropped.len());
    for p in &kept {
        for spec in expand(p.clone(), cap) {
            with_skip.insert(to_pgp(&spec).unwrap());
        }
    }
    eprintln!("reduced with skip: {}", with_skip.len());
    // Now walk the dropped pairings and report the first lost forms.
    let mut reported = 0;
    'outer: for p in &dropped {
        for spec in expand(p.clone(), cap) {
            let form = to_pgp(&spec).unwrap();
            if !with_skip.contains(&form) {
                eprintln!("LOST form from pairing {:?}", p.chords());
                eprintln!("  spec orderings {:?} signs {:?}", spec.orderings, spec.signs);
                eprintln!("  form: {form}");
                eprintln!("  form crossings {} passings {}", form.crossings(), form.passings());
                with_skip.insert(form);
                reported += 1;
                if reported >= 8 {
                    break 'outer;
                }
            }
        }
    }
    if reported == 0 {
        eprintln!("no lost forms");
    }
}

fn enumerate_pairings_capped(k: usize, cap: usize) -> Vec<Pairing> {
    enumerate_pairings(k)
        .into_iter()
        .filter(|p| stgen_generate::required_crossings(p).len() <= cap)
        .collect()
}
