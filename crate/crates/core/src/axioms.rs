//! Axiom predicates and classification of sign-vector systems.
//!
//! Every checker is exhaustive brute force over the covectors (and over the
//! ground set where the axiom quantifies it), returning the first
//! counterexample in canonical order so failures reproduce bit-for-bit.
//!
//! The defining bundles are:
//! * strong elimination system: (C) and (SE)
//! * COM: (FS) and (SE)
//! * oriented matroid: (C), (Sym) and (SE)
//! * lopsided system: (IC) and (SE)

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generation::conformal_closure;
use crate::sign::{Sign, SignSystem, SignVector};

/// Identifiers for the axiom checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxiomId {
    /// (C) composition: X∘Y ∈ L.
    C,
    /// (FS) face symmetry: X∘−Y ∈ L.
    Fs,
    /// (FS≤) face symmetry restricted to comparable pairs X ≤ Y.
    FsLe,
    /// (FS≺) face symmetry for covers of minimal covectors.
    FsPrec,
    /// (SE) strong elimination.
    Se,
    /// (SE=) strong elimination restricted to pairs of equal support.
    SeEq,
    /// (SE1) single-coordinate strong elimination inside W(X,Y).
    Se1,
    /// (SE1=) the equal-support restriction of (SE1).
    Se1Eq,
    /// (Sym) closure under sign reversal.
    Sym,
    /// (IC) ideal composition: L is an upset.
    Ic,
    /// (Z) the zero vector belongs to L.
    Z,
    /// (CC) composition of sign-consistent pairs.
    Cc,
    /// (WE) weak elimination.
    We,
    /// (IRR) no member is a supremum of other members.
    Irr,
    /// (COC) the set equals the cocircuits of the system it generates.
    Coc,
}

impl AxiomId {
    pub const ALL: [AxiomId; 15] = [
        AxiomId::C,
        AxiomId::Fs,
        AxiomId::FsLe,
        AxiomId::FsPrec,
        AxiomId::Se,
        AxiomId::SeEq,
        AxiomId::Se1,
        AxiomId::Se1Eq,
        AxiomId::Sym,
        AxiomId::Ic,
        AxiomId::Z,
        AxiomId::Cc,
        AxiomId::We,
        AxiomId::Irr,
        AxiomId::Coc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::C => "C",
            AxiomId::Fs => "FS",
            AxiomId::FsLe => "FS<=",
            AxiomId::FsPrec => "FS<",
            AxiomId::Se => "SE",
            AxiomId::SeEq => "SE=",
            AxiomId::Se1 => "SE1",
            AxiomId::Se1Eq => "SE1=",
            AxiomId::Sym => "Sym",
            AxiomId::Ic => "IC",
            AxiomId::Z => "Z",
            AxiomId::Cc => "CC",
            AxiomId::We => "WE",
            AxiomId::Irr => "IRR",
            AxiomId::Coc => "COC",
        }
    }

    pub fn parse(name: &str) -> Result<AxiomId> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Parse(format!("unknown axiom id `{name}`")))
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-redundancy conditions; the `Rn*` flavors quantify only over the
/// positions at which the system is not non-zero constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NrFlavor {
    N0,
    N1,
    N1Star,
    N2,
    N2Star,
    Rn1,
    Rn1Star,
    Rn2,
    Rn2Star,
}

impl NrFlavor {
    pub const ALL: [NrFlavor; 9] = [
        NrFlavor::N0,
        NrFlavor::N1,
        NrFlavor::N1Star,
        NrFlavor::N2,
        NrFlavor::N2Star,
        NrFlavor::Rn1,
        NrFlavor::Rn1Star,
        NrFlavor::Rn2,
        NrFlavor::Rn2Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NrFlavor::N0 => "N0",
            NrFlavor::N1 => "N1",
            NrFlavor::N1Star => "N1*",
            NrFlavor::N2 => "N2",
            NrFlavor::N2Star => "N2*",
            NrFlavor::Rn1 => "RN1",
            NrFlavor::Rn1Star => "RN1*",
            NrFlavor::Rn2 => "RN2",
            NrFlavor::Rn2Star => "RN2*",
        }
    }

    pub fn parse(name: &str) -> Result<NrFlavor> {
        NrFlavor::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Parse(format!("unknown non-redundancy flavor `{name}`")))
    }
}

impl fmt::Display for NrFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckKind {
    Axiom(AxiomId),
    NonRedundancy(NrFlavor),
    OmAlternative,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckKind::Axiom(a) => a.fmt(f),
            CheckKind::NonRedundancy(n) => n.fmt(f),
            CheckKind::OmAlternative => f.write_str("OM-alt"),
        }
    }
}

/// Counterexample record. `required` is only set when the definition forces
/// a unique missing vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<SignVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<SignVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coelement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required: Option<SignVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub check: CheckKind,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn passed(check: CheckKind) -> AxiomReport {
        AxiomReport {
            check,
            holds: true,
            witness: None,
        }
    }

    fn failed(check: CheckKind, witness: Witness) -> AxiomReport {
        AxiomReport {
            check,
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Is `z` inside `W(x, y)`, i.e. `z⁺ ⊆ x⁺∪y⁺` and `z⁻ ⊆ x⁻∪y⁻`?
pub(crate) fn in_w_set(z: &SignVector, x: &SignVector, y: &SignVector) -> bool {
    for i in 0..z.len() {
        match z.get(i) {
            Sign::Zero => {}
            s => {
                if x.get(i) != s && y.get(i) != s {
                    return false;
                }
            }
        }
    }
    true
}

/// Minimal covectors of the system under the sign ordering.
pub fn minimal_covectors(system: &SignSystem) -> Vec<SignVector> {
    system
        .iter()
        .filter(|x| !system.iter().any(|y| y.below(x).unwrap()))
        .cloned()
        .collect()
}

/// Covering pairs `(x, y)` with `x ≺ y` inside the given covector list.
pub(crate) fn covers_within(covectors: &[SignVector]) -> Vec<(SignVector, SignVector)> {
    let mut out = Vec::new();
    for x in covectors {
        for y in covectors {
            if !x.below(y).unwrap() {
                continue;
            }
            let strictly_between = covectors
                .iter()
                .any(|z| x.below(z).unwrap() && z.below(y).unwrap());
            if !strictly_between {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Check one axiom against the system; brute force, first counterexample in
/// canonical order.
pub fn check_axiom(system: &SignSystem, axiom: AxiomId) -> AxiomReport {
    let kind = CheckKind::Axiom(axiom);
    let label = |i: usize| system.ground().label(i).to_string();
    match axiom {
        AxiomId::C => {
            for x in system.iter() {
                for y in system.iter() {
                    let xy = x.compose(y).unwrap();
                    if !system.contains(&xy) {
                        return AxiomReport::failed(
                            kind,
                            Witness {
                                x: Some(x.clone()),
                                y: Some(y.clone()),
                                required: Some(xy),
                                ..Witness::default()
                            },
                        );
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::Fs => {
            for x in system.iter() {
                for y in system.iter() {
                    let composite = x.compose(&y.negate()).unwrap();
                    if !system.contains(&composite) {
                        return AxiomReport::failed(
                            kind,
                            Witness {
                                x: Some(x.clone()),
                                y: Some(y.clone()),
                                required: Some(composite),
                                ..Witness::default()
                            },
                        );
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::FsLe => {
            for x in system.iter() {
                for y in system.iter() {
                    if !x.leq(y).unwrap() {
                        continue;
                    }
                    let composite = x.compose(&y.negate()).unwrap();
                    if !system.contains(&composite) {
                        return AxiomReport::failed(
                            kind,
                            Witness {
                                x: Some(x.clone()),
                                y: Some(y.clone()),
                                required: Some(composite),
                                ..Witness::default()
                            },
                        );
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::FsPrec => {
            // Covers are taken in the conformal closure of the system, so the
            // axiom applies equally to closed systems and generating sets.
            let closure = conformal_closure(system);
            let minimal = minimal_covectors(system);
            for w in &minimal {
                for y in system.iter() {
                    if !w.below(y).unwrap() {
                        continue;
                    }
                    let covered = !closure
                        .iter()
                        .any(|z| w.below(z).unwrap() && z.below(y).unwrap());
                    if !covered {
                        continue;
                    }
                    let composite = w.compose(&y.negate()).unwrap();
                    if !system.contains(&composite) {
                        return AxiomReport::failed(
                            kind,
                            Witness {
                                x: Some(w.clone()),
                                y: Some(y.clone()),
                                required: Some(composite),
                                ..Witness::default()
                            },
                        );
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::Se | AxiomId::SeEq => {
            for x in system.iter() {
                for y in system.iter() {
                    if axiom == AxiomId::SeEq && (x == y || x.support() != y.support()) {
                        continue;
                    }
                    let sep = x.separator(y).unwrap();
                    let xy = x.compose(y).unwrap();
                    for &e in &sep {
                        let found = system.iter().any(|z| {
                            z.get(e) == Sign::Zero
                                && (0..z.len())
                                    .filter(|f| !sep.contains(f))
                                    .all(|f| z.get(f) == xy.get(f))
                        });
                        if !found {
                            let required = if sep.len() == 1 {
                                let mut forced = xy.clone();
                                forced.set(e, Sign::Zero);
                                Some(forced)
                            } else {
                                None
                            };
                            return AxiomReport::failed(
                                kind,
                                Witness {
                                    x: Some(x.clone()),
                                    y: Some(y.clone()),
                                    element: Some(label(e)),
                                    required,
                                    ..Witness::default()
                                },
                            );
                        }
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::Se1 | AxiomId::Se1Eq => {
            for x in system.iter() {
                for y in system.iter() {
                    if axiom == AxiomId::Se1Eq && (x == y || x.support() != y.support()) {
                        continue;
                    }
                    let sep = x.separator(y).unwrap();
                    let xy = x.compose(y).unwrap();
                    for &e in &sep {
                        for f in 0..x.len() {
                            if sep.contains(&f) {
                                continue;
                            }
                            let found = system.iter().any(|z| {
                                z.get(e) == Sign::Zero
                                    && z.get(f) == xy.get(f)
                                    && in_w_set(z, x, y)
                            });
                            if !found {
                                return AxiomReport::failed(
                                    kind,
                                    Witness {
                                        x: Some(x.clone()),
                                        y: Some(y.clone()),
                                        element: Some(label(e)),
                                        coelement: Some(label(f)),
                                        ..Witness::default()
                                    },
                                );
                            }
                        }
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::Sym => {
            for x in system.iter() {
                let neg = x.negate();
                if !system.contains(&neg) {
                    return AxiomReport::failed(
                        kind,
                        Witness {
                            x: Some(x.clone()),
                            required: Some(neg),
                            ..Witness::default()
                        },
                    );
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::Ic => {
            // Local form: every single-coordinate extension of a covector is
            // again a covector. Equivalent to ↑L = L over a finite cube; the
            // test suite checks the equivalence against the materialized
            // upset on small systems.
            for x in system.iter() {
                for e in 0..x.len() {
                    if x.get(e) != Sign::Zero {
                        continue;
                    }
                    for s in [Sign::Plus, Sign::Minus] {
                        let mut ext = x.clone();
                        ext.set(e, s);
                        if !system.contains(&ext) {
                            return AxiomReport::failed(
                                kind,
                                Witness {
                                    x: Some(x.clone()),
                                    element: Some(label(e)),
                                    required: Some(ext),
                                    ..Witness::default()
                                },
                            );
                        }
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::Z => {
            let zero = SignVector::zero(system.elements());
            if system.contains(&zero) {
                AxiomReport::passed(kind)
            } else {
                AxiomReport::failed(
                    kind,
                    Witness {
                        required: Some(zero),
                        ..Witness::default()
                    },
                )
            }
        }
        AxiomId::Cc => {
            for x in system.iter() {
                for y in system.iter() {
                    if !x.separator_is_empty(y).unwrap() {
                        continue;
                    }
                    let xy = x.compose(y).unwrap();
                    if !system.contains(&xy) {
                        return AxiomReport::failed(
                            kind,
                            Witness {
                                x: Some(x.clone()),
                                y: Some(y.clone()),
                                required: Some(xy),
                                ..Witness::default()
                            },
                        );
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::We => {
            for x in system.iter() {
                for y in system.iter() {
                    for &e in &x.separator(y).unwrap() {
                        let found = system
                            .iter()
                            .any(|z| z.get(e) == Sign::Zero && in_w_set(z, x, y));
                        if !found {
                            return AxiomReport::failed(
                                kind,
                                Witness {
                                    x: Some(x.clone()),
                                    y: Some(y.clone()),
                                    element: Some(label(e)),
                                    ..Witness::default()
                                },
                            );
                        }
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::Irr => {
            // A member is reducible exactly when the supremum of the other
            // members below it reaches it; constituents of any supremum are
            // below the result, so the candidates below suffice.
            for x in system.iter() {
                let below: Vec<&SignVector> = system
                    .iter()
                    .filter(|z| *z != x && z.leq(x).unwrap())
                    .collect();
                if below.is_empty() {
                    continue;
                }
                let mut sup = below[0].clone();
                for z in &below[1..] {
                    sup = sup.compose(z).unwrap();
                }
                if &sup == x {
                    return AxiomReport::failed(
                        kind,
                        Witness {
                            x: Some(x.clone()),
                            ..Witness::default()
                        },
                    );
                }
            }
            AxiomReport::passed(kind)
        }
        AxiomId::Coc => {
            let closure = conformal_closure(system);
            let minimal = minimal_covectors(system);
            let mut target: Vec<SignVector> = minimal.clone();
            for y in closure.iter() {
                let covers_minimal = minimal.iter().any(|w| {
                    w.below(y).unwrap()
                        && !closure
                            .iter()
                            .any(|z| w.below(z).unwrap() && z.below(y).unwrap())
                });
                if covers_minimal {
                    target.push(y.clone());
                }
            }
            target.sort();
            target.dedup();
            for x in system.iter() {
                if target.binary_search(x).is_err() {
                    return AxiomReport::failed(
                        kind,
                        Witness {
                            x: Some(x.clone()),
                            ..Witness::default()
                        },
                    );
                }
            }
            for t in &target {
                if !system.contains(t) {
                    return AxiomReport::failed(
                        kind,
                        Witness {
                            required: Some(t.clone()),
                            ..Witness::default()
                        },
                    );
                }
            }
            AxiomReport::passed(kind)
        }
    }
}

/// Positions at which the system is not non-zero constant.
pub fn non_constant_positions(system: &SignSystem) -> Vec<usize> {
    (0..system.elements())
        .filter(|&e| {
            let mut values: Vec<Sign> = system.iter().map(|x| x.get(e)).collect();
            values.sort_by_key(|s| s.as_i8());
            values.dedup();
            values != [Sign::Minus] && values != [Sign::Plus]
        })
        .collect()
}

fn column_values(system: &SignSystem, e: usize) -> (bool, bool, bool) {
    let mut has = (false, false, false);
    for x in system.iter() {
        match x.get(e) {
            Sign::Minus => has.0 = true,
            Sign::Zero => has.1 = true,
            Sign::Plus => has.2 = true,
        }
    }
    has
}

/// Check a non-redundancy condition.
pub fn check_nonredundancy(system: &SignSystem, flavor: NrFlavor) -> AxiomReport {
    let kind = CheckKind::NonRedundancy(flavor);
    let label = |i: usize| system.ground().label(i).to_string();
    let restricted = matches!(
        flavor,
        NrFlavor::Rn1 | NrFlavor::Rn1Star | NrFlavor::Rn2 | NrFlavor::Rn2Star
    );
    let domain: Vec<usize> = if restricted {
        non_constant_positions(system)
    } else {
        (0..system.elements()).collect()
    };
    match flavor {
        NrFlavor::N0 => {
            for &e in &domain {
                let (minus, _, plus) = column_values(system, e);
                if !minus && !plus {
                    return AxiomReport::failed(
                        kind,
                        Witness {
                            element: Some(label(e)),
                            ..Witness::default()
                        },
                    );
                }
            }
            AxiomReport::passed(kind)
        }
        NrFlavor::N1 | NrFlavor::Rn1 => {
            for &e in &domain {
                let (minus, _, plus) = column_values(system, e);
                if !(minus && plus) {
                    return AxiomReport::failed(
                        kind,
                        Witness {
                            element: Some(label(e)),
                            ..Witness::default()
                        },
                    );
                }
            }
            AxiomReport::passed(kind)
        }
        NrFlavor::N1Star | NrFlavor::Rn1Star => {
            for &e in &domain {
                let (minus, zero, plus) = column_values(system, e);
                if !(minus && zero && plus) {
                    return AxiomReport::failed(
                        kind,
                        Witness {
                            element: Some(label(e)),
                            ..Witness::default()
                        },
                    );
                }
            }
            AxiomReport::passed(kind)
        }
        NrFlavor::N2 | NrFlavor::Rn2 => {
            for &e in &domain {
                for &f in &domain {
                    if e >= f {
                        continue;
                    }
                    let unequal = system.iter().any(|x| x.get(e) != x.get(f));
                    let not_opposite = system
                        .iter()
                        .any(|y| y.get(e).as_i8() != -y.get(f).as_i8());
                    if !(unequal && not_opposite) {
                        return AxiomReport::failed(
                            kind,
                            Witness {
                                element: Some(label(e)),
                                coelement: Some(label(f)),
                                ..Witness::default()
                            },
                        );
                    }
                }
            }
            AxiomReport::passed(kind)
        }
        NrFlavor::N2Star | NrFlavor::Rn2Star => {
            for &e in &domain {
                for &f in &domain {
                    if e >= f {
                        continue;
                    }
                    let product = |x: &SignVector| x.get(e).as_i8() * x.get(f).as_i8();
                    let has_opposite = system.iter().any(|x| product(x) == -1);
                    let has_equal = system.iter().any(|y| product(y) == 1);
                    if !(has_opposite && has_equal) {
                        return AxiomReport::failed(
                            kind,
                            Witness {
                                element: Some(label(e)),
                                coelement: Some(label(f)),
                                ..Witness::default()
                            },
                        );
                    }
                }
            }
            AxiomReport::passed(kind)
        }
    }
}

/// Full classification: the four class predicates, all axiom reports, the
/// non-redundancy flags, and simplicity.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub is_strong_elimination: bool,
    pub is_com: bool,
    pub is_om: bool,
    pub is_lopsided: bool,
    pub is_simple: bool,
    pub is_semisimple: bool,
    pub axioms: Vec<AxiomReport>,
    pub nonredundancy: Vec<AxiomReport>,
}

impl ClassificationReport {
    pub fn axiom(&self, id: AxiomId) -> &AxiomReport {
        self.axioms
            .iter()
            .find(|r| r.check == CheckKind::Axiom(id))
            .expect("all axiom ids are reported")
    }

    pub fn holds(&self, id: AxiomId) -> bool {
        self.axiom(id).holds
    }

    pub fn nr(&self, flavor: NrFlavor) -> bool {
        self.nonredundancy
            .iter()
            .find(|r| r.check == CheckKind::NonRedundancy(flavor))
            .expect("all flavors are reported")
            .holds
    }
}

pub fn classify(system: &SignSystem) -> ClassificationReport {
    let axioms: Vec<AxiomReport> = AxiomId::ALL
        .into_iter()
        .map(|a| check_axiom(system, a))
        .collect();
    let nonredundancy: Vec<AxiomReport> = NrFlavor::ALL
        .into_iter()
        .map(|f| check_nonredundancy(system, f))
        .collect();
    let holds = |id: AxiomId| {
        axioms
            .iter()
            .find(|r| r.check == CheckKind::Axiom(id))
            .unwrap()
            .holds
    };
    let nr = |f: NrFlavor| {
        nonredundancy
            .iter()
            .find(|r| r.check == CheckKind::NonRedundancy(f))
            .unwrap()
            .holds
    };
    ClassificationReport {
        is_strong_elimination: holds(AxiomId::C) && holds(AxiomId::Se),
        is_com: holds(AxiomId::Fs) && holds(AxiomId::Se),
        is_om: holds(AxiomId::C) && holds(AxiomId::Sym) && holds(AxiomId::Se),
        is_lopsided: holds(AxiomId::Ic) && holds(AxiomId::Se),
        is_simple: nr(NrFlavor::N1Star) && nr(NrFlavor::N2Star),
        is_semisimple: nr(NrFlavor::Rn1Star) && nr(NrFlavor::Rn2Star),
        axioms,
        nonredundancy,
    }
}

/// The alternative OM axiomatization (FS) ∧ (Z) ∧ (SE); agrees with
/// (C) ∧ (Sym) ∧ (SE) on every system.
pub fn check_om_alternative(system: &SignSystem) -> AxiomReport {
    let fs = check_axiom(system, AxiomId::Fs);
    let z = check_axiom(system, AxiomId::Z);
    let se = check_axiom(system, AxiomId::Se);
    let alt = fs.holds && z.holds && se.holds;
    let direct = check_axiom(system, AxiomId::C).holds
        && check_axiom(system, AxiomId::Sym).holds
        && se.holds;
    assert_eq!(
        alt, direct,
        "the two oriented-matroid axiomatizations must agree"
    );
    let kind = CheckKind::OmAlternative;
    if alt {
        AxiomReport::passed(kind)
    } else {
        let failing = [fs, z, se].into_iter().find(|r| !r.holds).unwrap();
        AxiomReport {
            check: kind,
            holds: false,
            witness: failing.witness,
        }
    }
}
