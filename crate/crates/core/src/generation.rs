//! Generating a system from below: W-sets, conformal closure, irreducibles,
//! the lopsided envelope, and cocircuits.
//!
//! A strong elimination system is generated by its supremum-irreducible
//! members under conformal composition; a COM is additionally pinned down by
//! its cocircuits (the minimal covectors together with their covers).
//! `verify_generation_theorems` cross-checks all of those characterizations
//! against the direct axiom definitions.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::axioms::{check_axiom, in_w_set, minimal_covectors, AxiomId};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::sign::{SignSystem, SignVector};

/// `W_A(X,Y)`: covectors `Z` with `Z_g ∈ {0, X_g, Y_g}` everywhere and
/// `Z_h ∈ {0, X_h}` on `A`.
pub fn w_set(system: &SignSystem, x: &SignVector, y: &SignVector, a: &[&str]) -> Result<Vec<SignVector>> {
    if !system.contains(x) {
        return Err(Error::NotACovector(x.to_string()));
    }
    if !system.contains(y) {
        return Err(Error::NotACovector(y.to_string()));
    }
    let positions = system.ground().positions(a.iter().copied())?;
    Ok(system
        .iter()
        .filter(|z| {
            in_w_set(z, x, y)
                && positions.iter().all(|&h| {
                    let s = z.get(h);
                    s == crate::sign::Sign::Zero || s == x.get(h)
                })
        })
        .cloned()
        .collect())
}

/// Closure of the covectors under pairwise conformal composition, iterated
/// to a fixpoint. Pairwise closure reaches every non-empty supremum because
/// the conformal property is Helly-type: a set of sign vectors has a
/// supremum as soon as each pair does.
pub fn conformal_closure(system: &SignSystem) -> SignSystem {
    let mut set: BTreeSet<SignVector> = system.iter().cloned().collect();
    loop {
        let snapshot: Vec<SignVector> = set.iter().cloned().collect();
        let before = set.len();
        for (i, x) in snapshot.iter().enumerate() {
            for y in &snapshot[i + 1..] {
                if x.separator_is_empty(y).unwrap() {
                    set.insert(x.compose(y).unwrap());
                }
            }
        }
        if set.len() == before {
            break;
        }
    }
    SignSystem::new(system.ground().clone(), set).expect("closure of a non-empty system is non-empty")
}

/// The supremum-irreducible covectors: members that are not the supremum of
/// other members. A covector is reducible exactly when the supremum of the
/// members strictly below it reaches it.
pub fn irreducibles(system: &SignSystem) -> Vec<SignVector> {
    system
        .iter()
        .filter(|x| {
            let below: Vec<&SignVector> = system
                .iter()
                .filter(|z| z != x && z.leq(x).unwrap())
                .collect();
            if below.is_empty() {
                return true;
            }
            let mut sup = below[0].clone();
            for z in &below[1..] {
                sup = sup.compose(z).unwrap();
            }
            &sup != *x
        })
        .cloned()
        .collect()
}

/// The lopsided envelope: the upset of a system satisfying weak elimination.
///
/// The result satisfies (IC) and (SE) and has the same minimal covectors as
/// the input.
pub fn lopsided_envelope(system: &SignSystem, guard: &Guard) -> Result<SignSystem> {
    let we = check_axiom(system, AxiomId::We);
    if !we.holds {
        return Err(Error::Precondition(
            "lopsided envelope needs weak elimination (WE)".into(),
        ));
    }
    system.upset(guard)
}

/// Minimal covectors, their covers, and the irreducibles of a system.
#[derive(Debug, Clone, Serialize)]
pub struct CocircuitDecomposition {
    /// Improper cocircuits: the minimal covectors.
    pub minimal: Vec<SignVector>,
    /// Proper cocircuits: covectors covering some minimal covector.
    pub proper: Vec<SignVector>,
    /// Supremum-irreducible covectors.
    pub irreducibles: Vec<SignVector>,
}

impl CocircuitDecomposition {
    /// All cocircuits: improper and proper together, canonically ordered.
    pub fn cocircuits(&self) -> Vec<SignVector> {
        let mut out: Vec<SignVector> = self.minimal.iter().chain(&self.proper).cloned().collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Compute the cocircuit decomposition of a system. Covers are taken inside
/// the system itself by a cubic scan.
pub fn cocircuits(system: &SignSystem) -> CocircuitDecomposition {
    let minimal = minimal_covectors(system);
    let mut proper = Vec::new();
    for y in system.iter() {
        let covers_min = minimal.iter().any(|w| {
            w.below(y).unwrap()
                && !system
                    .iter()
                    .any(|z| w.below(z).unwrap() && z.below(y).unwrap())
        });
        if covers_min {
            proper.push(y.clone());
        }
    }
    CocircuitDecomposition {
        minimal,
        proper,
        irreducibles: irreducibles(system),
    }
}

/// Cross-check of the generation characterizations against the direct
/// definitions. Every field pairs a characterization with the class it is
/// equivalent to; `all_agree` is the conjunction of those equivalences.
#[derive(Debug, Clone, Serialize)]
pub struct GenerationReport {
    /// (C) and (SE) directly.
    pub is_ses: bool,
    /// (CC) and (SE1) on the whole system.
    pub ses_via_cc_se1: bool,
    /// (CC) on the system and (SE1) on its irreducibles.
    pub ses_via_irreducibles: bool,
    /// (CC) on the system and (SE1) on its cocircuit set (an intermediate
    /// generating set containing the irreducibles).
    pub ses_via_cocircuit_set: bool,
    /// The conformal closure of the irreducibles reproduces the system.
    pub irreducibles_generate: bool,
    /// (FS) and (SE) directly.
    pub is_com: bool,
    /// (CC), (SE1) and (FS≺) on the whole system.
    pub com_via_covector_axioms: bool,
    /// (SE1) and (IRR) on the irreducibles, (FS≺) on the derived cocircuit
    /// candidate set, and the irreducibles generate the system.
    pub com_via_irreducibles: bool,
    /// (SE1), (FS≺) and (COC) on the cocircuits, which generate the system.
    pub com_via_cocircuits: bool,
    pub all_agree: bool,
}

impl GenerationReport {
    pub fn passes(&self) -> bool {
        self.all_agree
    }
}

fn as_system(ground: &SignSystem, vectors: Vec<SignVector>) -> SignSystem {
    SignSystem::new(ground.ground().clone(), vectors).expect("candidate sets are non-empty")
}

pub fn verify_generation_theorems(system: &SignSystem) -> GenerationReport {
    let holds = |s: &SignSystem, a: AxiomId| check_axiom(s, a).holds;

    let is_ses = holds(system, AxiomId::C) && holds(system, AxiomId::Se);
    let cc = holds(system, AxiomId::Cc);
    let ses_via_cc_se1 = cc && holds(system, AxiomId::Se1);

    let irr_vectors = irreducibles(system);
    let irr_sys = as_system(system, irr_vectors.clone());
    let ses_via_irreducibles = cc && holds(&irr_sys, AxiomId::Se1);
    let irreducibles_generate = conformal_closure(&irr_sys) == *system;

    let decomposition = cocircuits(system);
    let coc_vectors = decomposition.cocircuits();
    let coc_sys = as_system(system, coc_vectors.clone());
    let contains_irr = irr_vectors.iter().all(|x| coc_vectors.binary_search(x).is_ok());
    let ses_via_cocircuit_set = cc && contains_irr && holds(&coc_sys, AxiomId::Se1);

    let is_com = holds(system, AxiomId::Fs) && holds(system, AxiomId::Se);
    let com_via_covector_axioms =
        cc && holds(system, AxiomId::Se1) && holds(system, AxiomId::FsPrec);

    // Candidate cocircuit set built from the irreducibles alone: the
    // irreducibles plus those suprema of two minimal members that cover a
    // minimal member in the closure.
    let closure_of_irr = conformal_closure(&irr_sys);
    let minimal = minimal_covectors(&irr_sys);
    let mut candidate = irr_vectors.clone();
    for w in &minimal {
        for v in &minimal {
            if !w.separator_is_empty(v).unwrap() {
                continue;
            }
            let u = w.compose(v).unwrap();
            let covers = w.below(&u).unwrap()
                && !closure_of_irr
                    .iter()
                    .any(|z| w.below(z).unwrap() && z.below(&u).unwrap());
            if covers {
                candidate.push(u);
            }
        }
    }
    candidate.sort();
    candidate.dedup();
    let candidate_sys = as_system(system, candidate);
    let com_via_irreducibles = holds(&irr_sys, AxiomId::Se1)
        && holds(&irr_sys, AxiomId::Irr)
        && holds(&candidate_sys, AxiomId::FsPrec)
        && closure_of_irr == *system;

    let com_via_cocircuits = holds(&coc_sys, AxiomId::Se1)
        && holds(&coc_sys, AxiomId::FsPrec)
        && holds(&coc_sys, AxiomId::Coc)
        && conformal_closure(&coc_sys) == *system;

    let ses_agree = is_ses == ses_via_cc_se1
        && is_ses == ses_via_irreducibles
        && is_ses == ses_via_cocircuit_set
        && (!is_ses || irreducibles_generate);
    let com_agree = is_com == com_via_covector_axioms
        && is_com == com_via_irreducibles
        && is_com == com_via_cocircuits;

    GenerationReport {
        is_ses,
        ses_via_cc_se1,
        ses_via_irreducibles,
        ses_via_cocircuit_set,
        irreducibles_generate,
        is_com,
        com_via_covector_axioms,
        com_via_irreducibles,
        com_via_cocircuits,
        all_agree: ses_agree && com_agree,
    }
}
