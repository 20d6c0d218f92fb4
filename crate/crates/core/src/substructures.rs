//! Hyperplanes, halfspaces, carriers, and the recursive characterization.
//!
//! For an element `e`, the hyperplane is the zero slice `{X : X_e = 0}`, the
//! open halfspaces are the sign slices, and the carrier is the union of the
//! faces of the hyperplane members: `{X : W ≤ X for some W with W_e = 0}`.
//! Closed halfspaces add the carrier to the open ones; the two closures
//! overlap exactly in the carrier. All of these inherit the strong
//! elimination / COM / OM axioms from the ambient system.

use std::collections::HashMap;

use serde::Serialize;

use crate::axioms::{check_axiom, check_nonredundancy, classify, AxiomId, NrFlavor};
use crate::error::{Error, Result};
use crate::minors::redundancy_profile;
use crate::sign::{Sign, SignSystem, SignVector};
use crate::topes::{is_partial_cube, tope_graph, topes};

/// The eight substructure selectors at a fixed element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubstructureKind {
    Hyperplane,
    HalfPos,
    HalfNeg,
    Carrier,
    CarrierPos,
    CarrierNeg,
    ClosedHalfPos,
    ClosedHalfNeg,
}

impl SubstructureKind {
    pub const ALL: [SubstructureKind; 8] = [
        SubstructureKind::Hyperplane,
        SubstructureKind::HalfPos,
        SubstructureKind::HalfNeg,
        SubstructureKind::Carrier,
        SubstructureKind::CarrierPos,
        SubstructureKind::CarrierNeg,
        SubstructureKind::ClosedHalfPos,
        SubstructureKind::ClosedHalfNeg,
    ];
}

/// Extract the requested substructure at element `e`, on the same ground
/// set. Empty selections are an error: every system stays non-empty.
pub fn substructure(system: &SignSystem, e: &str, kind: SubstructureKind) -> Result<SignSystem> {
    let pos = system.ground().position(e)?;
    let in_carrier = |x: &SignVector| {
        system
            .iter()
            .any(|w| w.get(pos) == Sign::Zero && w.leq(x).unwrap())
    };
    let selected: Vec<SignVector> = system
        .iter()
        .filter(|x| match kind {
            SubstructureKind::Hyperplane => x.get(pos) == Sign::Zero,
            SubstructureKind::HalfPos => x.get(pos) == Sign::Plus,
            SubstructureKind::HalfNeg => x.get(pos) == Sign::Minus,
            SubstructureKind::Carrier => in_carrier(x),
            SubstructureKind::CarrierPos => x.get(pos) == Sign::Plus && in_carrier(x),
            SubstructureKind::CarrierNeg => x.get(pos) == Sign::Minus && in_carrier(x),
            SubstructureKind::ClosedHalfPos => x.get(pos) == Sign::Plus || in_carrier(x),
            SubstructureKind::ClosedHalfNeg => x.get(pos) == Sign::Minus || in_carrier(x),
        })
        .cloned()
        .collect();
    if selected.is_empty() {
        return Err(Error::EmptyResult(format!(
            "substructure {kind:?} at `{e}` is empty"
        )));
    }
    SignSystem::new(system.ground().clone(), selected)
}

/// Result of the recursive characterization, cross-checked against the
/// direct classification.
#[derive(Debug, Clone, Serialize)]
pub struct RecursiveReport {
    pub composition: bool,
    pub tope_graph_partial_cube: bool,
    pub edge_barycenters_present: bool,
    pub tope_set_symmetric: bool,
    pub is_ses_recursive: bool,
    pub is_com_recursive: bool,
    pub is_om_recursive: bool,
    pub agrees_with_classify: bool,
}

#[derive(Default)]
struct Memo {
    /// Keyed by the label-free covector pattern of a (restricted) system.
    table: HashMap<Vec<String>, (bool, bool, bool)>,
}

fn memo_key(system: &SignSystem) -> Vec<String> {
    system.iter().map(|v| v.to_string()).collect()
}

/// Delete coloops and non-representative parallel duplicates. Both removals
/// are bijective on covectors (the deleted columns are functions of the
/// retained data), so every axiom transfers back and forth.
fn bijective_cleanup(system: &SignSystem) -> Result<SignSystem> {
    let profile = redundancy_profile(system);
    let mut drop: Vec<usize> = profile.coloops.clone();
    for class in &profile.parallel_classes {
        let survivors: Vec<usize> = class
            .iter()
            .copied()
            .filter(|e| !profile.coloops.contains(e))
            .collect();
        drop.extend(survivors.iter().skip(1));
    }
    if drop.is_empty() {
        return Ok(system.clone());
    }
    drop.sort_unstable();
    if drop.len() == system.elements() {
        return Err(Error::EmptyGroundSet);
    }
    let labels: Vec<&str> = drop.iter().map(|&i| system.ground().label(i)).collect();
    crate::minors::delete(system, &labels)
}

fn is_semisimple(system: &SignSystem) -> bool {
    check_nonredundancy(system, NrFlavor::Rn1Star).holds
        && check_nonredundancy(system, NrFlavor::Rn2Star).holds
}

/// Do all adjacent topes have their edge barycenter in the system?
fn barycenters_present(system: &SignSystem) -> bool {
    let ts = topes(system);
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if ts[i].hamming(&ts[j]).unwrap() != 1 {
                continue;
            }
            let e = (0..ts[i].len())
                .find(|&k| ts[i].get(k) != ts[j].get(k))
                .unwrap();
            let mut barycenter = ts[i].clone();
            barycenter.set(e, Sign::Zero);
            if !system.contains(&barycenter) {
                return false;
            }
        }
    }
    true
}

/// (ses, com, om) by the hyperplane recursion where it applies, direct
/// axioms otherwise. Recursing on a hyperplane always shrinks the ground
/// set: the pivot column is constant zero there and the cleanup removes it.
fn classify_recursive(system: &SignSystem, memo: &mut Memo) -> (bool, bool, bool) {
    let key = memo_key(system);
    if let Some(&cached) = memo.table.get(&key) {
        return cached;
    }
    let result = match bijective_cleanup(system) {
        // Every column was redundant: the system collapsed to the empty
        // ground set, i.e. a single empty covector, which is a trivial OM.
        Err(_) => (true, true, true),
        Ok(cleaned) => {
            if cleaned.len() != system.len() || !is_semisimple(&cleaned) {
                // Cleanup is only bijective when no covectors collapsed, and
                // the hyperplane theorem needs semisimplicity; fall back to
                // the direct axioms.
                let c = check_axiom(system, AxiomId::C).holds;
                let se = check_axiom(system, AxiomId::Se).holds;
                let fs = check_axiom(system, AxiomId::Fs).holds;
                let sym = check_axiom(system, AxiomId::Sym).holds;
                (c && se, fs && se, c && sym && se)
            } else {
                let c = check_axiom(&cleaned, AxiomId::C).holds;
                let graph = tope_graph(&cleaned);
                let pc = is_partial_cube(&graph);
                let bary = barycenters_present(&cleaned);
                let tope_sym = {
                    let ts = topes(&cleaned);
                    ts.iter().all(|t| ts.contains(&t.negate()))
                };
                let mut hyper_ses = true;
                let mut hyper_com = true;
                let mut hyper_om = true;
                for e in 0..cleaned.elements() {
                    let members: Vec<SignVector> = cleaned
                        .iter()
                        .filter(|x| x.get(e) == Sign::Zero)
                        .cloned()
                        .collect();
                    if members.is_empty() {
                        continue;
                    }
                    let hyperplane =
                        SignSystem::new(cleaned.ground().clone(), members).unwrap();
                    let (hs, hc, ho) = classify_recursive(&hyperplane, memo);
                    hyper_ses &= hs;
                    hyper_com &= hc;
                    hyper_om &= ho;
                }
                (
                    c && pc && bary && hyper_ses,
                    c && pc && bary && hyper_com,
                    c && bary && pc && tope_sym && hyper_om,
                )
            }
        }
    };
    memo.table.insert(key, result);
    result
}

/// Verify the recursive characterization on a semisimple system and compare
/// with the direct classification.
pub fn recursive_characterize(system: &SignSystem) -> Result<RecursiveReport> {
    if !is_semisimple(system) {
        return Err(Error::Precondition(
            "the recursive characterization needs a semisimple system".into(),
        ));
    }
    let mut memo = Memo::default();
    let (ses, com, om) = classify_recursive(system, &mut memo);
    let graph = tope_graph(system);
    let direct = classify(system);
    let tope_set = topes(system);
    Ok(RecursiveReport {
        composition: direct.holds(AxiomId::C),
        tope_graph_partial_cube: is_partial_cube(&graph),
        edge_barycenters_present: barycenters_present(system),
        tope_set_symmetric: tope_set.iter().all(|t| tope_set.contains(&t.negate())),
        is_ses_recursive: ses,
        is_com_recursive: com,
        is_om_recursive: om,
        agrees_with_classify: ses == direct.is_strong_elimination
            && com == direct.is_com
            && om == direct.is_om,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&str]) -> SignSystem {
        SignSystem::from_rows(rows).unwrap()
    }

    #[test]
    fn substructures_of_rank_one() {
        let s = sys(&["+", "-", "0"]);
        let hyper = substructure(&s, "e1", SubstructureKind::Hyperplane).unwrap();
        assert_eq!(hyper.covectors(), &[SignVector::parse("0").unwrap()]);
        // The carrier of the unique hyperplane is everything.
        let carrier = substructure(&s, "e1", SubstructureKind::Carrier).unwrap();
        assert_eq!(carrier, s);
    }

    #[test]
    fn closed_halfspaces_overlap_in_carrier() {
        let s = sys(&["--", "0-", "+-", "+0", "++"]);
        for e in ["e1", "e2"] {
            let closed_pos = substructure(&s, e, SubstructureKind::ClosedHalfPos).unwrap();
            let closed_neg = substructure(&s, e, SubstructureKind::ClosedHalfNeg).unwrap();
            let carrier = substructure(&s, e, SubstructureKind::Carrier).unwrap();
            let overlap: Vec<SignVector> = closed_pos
                .iter()
                .filter(|x| closed_neg.contains(x))
                .cloned()
                .collect();
            assert_eq!(overlap, carrier.covectors());
        }
    }

    #[test]
    fn empty_substructure_is_an_error() {
        let s = sys(&["+-", "++"]);
        assert!(matches!(
            substructure(&s, "e1", SubstructureKind::Hyperplane),
            Err(Error::EmptyResult(_))
        ));
    }

    #[test]
    fn substructures_of_a_com_are_coms() {
        let s = sys(&["--", "0-", "+-", "+0", "++"]);
        for e in ["e1", "e2"] {
            for kind in SubstructureKind::ALL {
                match substructure(&s, e, kind) {
                    Ok(sub) => assert!(
                        classify(&sub).is_com,
                        "substructure {kind:?} at {e} is not a COM"
                    ),
                    Err(Error::EmptyResult(_)) => {}
                    Err(other) => panic!("unexpected error: {other}"),
                }
            }
        }
    }

    #[test]
    fn recursive_characterization_of_rank_one_om() {
        let s = sys(&["+", "-", "0"]);
        let report = recursive_characterize(&s).unwrap();
        assert!(report.is_om_recursive);
        assert!(report.is_com_recursive);
        assert!(report.is_ses_recursive);
        assert!(report.agrees_with_classify);
    }

    #[test]
    fn recursive_characterization_of_non_ses() {
        // The non-isometric path system fails the partial-cube condition.
        let path = sys(&[
            "+++", "++-", "+--", "---", "--+", "++0", "+0-", "0--", "--0",
        ]);
        let report = recursive_characterize(&path).unwrap();
        assert!(!report.tope_graph_partial_cube);
        assert!(!report.is_ses_recursive);
        assert!(report.agrees_with_classify);
    }

    #[test]
    fn recursive_characterization_requires_semisimple() {
        let s = sys(&["++", "--"]);
        assert!(matches!(
            recursive_characterize(&s),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn recursive_agrees_on_small_com() {
        let s = sys(&["--", "0-", "+-", "+0", "++"]);
        let report = recursive_characterize(&s).unwrap();
        assert!(report.is_com_recursive);
        assert!(!report.is_om_recursive);
        assert!(report.agrees_with_classify);
    }
}
