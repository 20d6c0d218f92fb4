//! Deletion, contraction, fibers, faces, and the simplification transforms.
//!
//! The COM axioms are closed under minors, so deleting or contracting any
//! subset of the ground set stays inside the class. Simplification removes
//! redundant coordinates (coloops, constant and two-valued columns, parallel
//! duplicates); semisimplification keeps the non-zero constant block.

use std::collections::BTreeSet;

use crate::axioms::{check_axiom, AxiomId};
use crate::error::{Error, Result};
use crate::sign::{GroundSet, Sign, SignSystem, SignVector};

/// A deletion set and a contraction set, disjoint by construction.
#[derive(Debug, Clone, Default)]
pub struct MinorSpec {
    pub delete: Vec<String>,
    pub contract: Vec<String>,
}

impl MinorSpec {
    pub fn validate(&self, ground: &GroundSet) -> Result<()> {
        for label in self.delete.iter().chain(&self.contract) {
            ground.position(label)?;
        }
        for d in &self.delete {
            if self.contract.contains(d) {
                return Err(Error::Precondition(format!(
                    "element `{d}` appears in both the deletion and contraction sets"
                )));
            }
        }
        Ok(())
    }
}

fn keep_mask(system: &SignSystem, drop: &[usize]) -> Result<Vec<bool>> {
    let mut keep = vec![true; system.elements()];
    for &i in drop {
        keep[i] = false;
    }
    if keep.iter().all(|k| !k) {
        return Err(Error::EmptyGroundSet);
    }
    Ok(keep)
}

/// Deletion: restrict every covector to `E∖A` and deduplicate.
pub fn delete(system: &SignSystem, a: &[&str]) -> Result<SignSystem> {
    let drop = system.ground().positions(a.iter().copied())?;
    let keep = keep_mask(system, &drop)?;
    let ground = system.ground().restrict(&keep)?;
    SignSystem::new(ground, system.iter().map(|x| x.restrict(&keep)))
}

/// Contraction: restrict the covectors that vanish on `A` to `E∖A`.
pub fn contract(system: &SignSystem, a: &[&str]) -> Result<SignSystem> {
    let drop = system.ground().positions(a.iter().copied())?;
    let keep = keep_mask(system, &drop)?;
    let vanishing: Vec<&SignVector> = system
        .iter()
        .filter(|x| drop.iter().all(|&i| x.get(i) == Sign::Zero))
        .collect();
    if vanishing.is_empty() {
        return Err(Error::EmptyResult(
            "no covector vanishes on the contraction set".into(),
        ));
    }
    let ground = system.ground().restrict(&keep)?;
    SignSystem::new(ground, vanishing.into_iter().map(|x| x.restrict(&keep)))
}

/// Apply a deletion and a contraction together.
pub fn minor(system: &SignSystem, spec: &MinorSpec) -> Result<SignSystem> {
    spec.validate(system.ground())?;
    let deleted = if spec.delete.is_empty() {
        system.clone()
    } else {
        let refs: Vec<&str> = spec.delete.iter().map(String::as_str).collect();
        delete(system, &refs)?
    };
    if spec.contract.is_empty() {
        Ok(deleted)
    } else {
        let refs: Vec<&str> = spec.contract.iter().map(String::as_str).collect();
        contract(&deleted, &refs)
    }
}

/// A fiber of the system: the covectors agreeing with `x` outside `a`.
#[derive(Debug, Clone)]
pub struct Fiber {
    pub system: SignSystem,
    /// The restriction `x∖a` has full support, i.e. it is a tope of the
    /// deletion minor.
    pub topal: bool,
    /// Some member of the fiber has zero set exactly `a`.
    pub face: bool,
}

pub fn fiber(system: &SignSystem, x: &SignVector, a: &[&str]) -> Result<Fiber> {
    if !system.contains(x) {
        return Err(Error::NotACovector(x.to_string()));
    }
    let drop = system.ground().positions(a.iter().copied())?;
    let outside: Vec<usize> = (0..system.elements()).filter(|i| !drop.contains(i)).collect();
    let members: Vec<SignVector> = system
        .iter()
        .filter(|y| outside.iter().all(|&i| y.get(i) == x.get(i)))
        .cloned()
        .collect();
    let topal = outside.iter().all(|&i| x.get(i) != Sign::Zero);
    let face = members.iter().any(|y| {
        (0..system.elements()).all(|i| (y.get(i) == Sign::Zero) == drop.contains(&i))
    });
    Ok(Fiber {
        system: SignSystem::new(system.ground().clone(), members)?,
        topal,
        face,
    })
}

/// The face `F(X) = {X∘Y : Y ∈ L}` of a covector, defined for systems
/// satisfying (C); equals `L ∩ ↑{X}` there.
pub fn face(system: &SignSystem, x: &SignVector) -> Result<SignSystem> {
    if !system.contains(x) {
        return Err(Error::NotACovector(x.to_string()));
    }
    if !check_axiom(system, AxiomId::C).holds {
        return Err(Error::Precondition("faces need composition (C)".into()));
    }
    SignSystem::new(
        system.ground().clone(),
        system.iter().map(|y| x.compose(y).unwrap()),
    )
}

/// Redundant-coordinate analysis: coloops, constant positions, two-valued
/// positions, and the parallelism classes.
#[derive(Debug, Clone)]
pub struct RedundancyProfile {
    /// Coloops: positions zero in every covector.
    pub coloops: Vec<usize>,
    /// Positions at which the system is not non-zero constant.
    pub non_constant: Vec<usize>,
    /// Positions taking exactly one value (coloops plus non-zero constants).
    pub single_valued: Vec<usize>,
    /// Positions taking exactly two values.
    pub two_valued: Vec<usize>,
    /// Partition of the positions into parallelism classes (columns equal or
    /// opposite across all covectors), each sorted, ordered by first member.
    pub parallel_classes: Vec<Vec<usize>>,
}

pub fn redundancy_profile(system: &SignSystem) -> RedundancyProfile {
    let n = system.elements();
    let column = |e: usize| {
        let mut values: Vec<i8> = system.iter().map(|x| x.get(e).as_i8()).collect();
        values.sort_unstable();
        values.dedup();
        values
    };
    let mut coloops = Vec::new();
    let mut non_constant = Vec::new();
    let mut single_valued = Vec::new();
    let mut two_valued = Vec::new();
    for e in 0..n {
        let values = column(e);
        if values == [0] {
            coloops.push(e);
        }
        if values != [-1] && values != [1] {
            non_constant.push(e);
        }
        match values.len() {
            1 => single_valued.push(e),
            2 => two_valued.push(e),
            _ => {}
        }
    }

    let parallel = |e: usize, f: usize| {
        system.iter().all(|x| x.get(e) == x.get(f))
            || system.iter().all(|x| x.get(e).as_i8() == -x.get(f).as_i8())
    };
    let mut assigned = vec![false; n];
    let mut parallel_classes = Vec::new();
    for e in 0..n {
        if assigned[e] {
            continue;
        }
        let mut class = vec![e];
        assigned[e] = true;
        for f in e + 1..n {
            if !assigned[f] && parallel(e, f) {
                class.push(f);
                assigned[f] = true;
            }
        }
        parallel_classes.push(class);
    }

    RedundancyProfile {
        coloops,
        non_constant,
        single_valued,
        two_valued,
        parallel_classes,
    }
}

fn drop_positions(system: &SignSystem, drop: &BTreeSet<usize>) -> Result<SignSystem> {
    if drop.is_empty() {
        return Ok(system.clone());
    }
    let labels: Vec<&str> = drop.iter().map(|&i| system.ground().label(i)).collect();
    delete(system, &labels)
}

/// Simplification: delete every single- and two-valued position, then keep
/// one representative (smallest declared index) of each remaining
/// parallelism class. The result satisfies (N1*) and (N2*) whenever the
/// input is a strong elimination system.
pub fn simplify(system: &SignSystem) -> Result<SignSystem> {
    let profile = redundancy_profile(system);
    let mut drop: BTreeSet<usize> = profile
        .single_valued
        .iter()
        .chain(&profile.two_valued)
        .copied()
        .collect();
    for class in &profile.parallel_classes {
        let survivors: Vec<usize> = class.iter().copied().filter(|e| !drop.contains(e)).collect();
        for &e in survivors.iter().skip(1) {
            drop.insert(e);
        }
    }
    drop_positions(system, &drop)
}

/// Semisimplification: like [`simplify`] but the non-zero constant block is
/// kept. Deletes coloops, two-valued positions, and non-representative
/// members of the parallelism classes among the remaining three-valued
/// positions; satisfies (RN1*) and (RN2*) on strong elimination systems.
pub fn semisimplify(system: &SignSystem) -> Result<SignSystem> {
    let profile = redundancy_profile(system);
    let mut drop: BTreeSet<usize> = profile
        .coloops
        .iter()
        .chain(&profile.two_valued)
        .copied()
        .collect();
    let constant: BTreeSet<usize> = (0..system.elements())
        .filter(|e| !profile.non_constant.contains(e))
        .collect();
    for class in &profile.parallel_classes {
        let survivors: Vec<usize> = class
            .iter()
            .copied()
            .filter(|e| !drop.contains(e) && !constant.contains(e))
            .collect();
        for &e in survivors.iter().skip(1) {
            drop.insert(e);
        }
    }
    drop_positions(system, &drop)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_nonredundancy, classify, NrFlavor};

    fn sys(rows: &[&str]) -> SignSystem {
        SignSystem::from_rows(rows).unwrap()
    }

    fn sv(s: &str) -> SignVector {
        SignVector::parse(s).unwrap()
    }

    #[test]
    fn delete_identity_and_collapse() {
        let s = sys(&["+-", "++"]);
        assert_eq!(delete(&s, &[]).unwrap(), s);
        let one = delete(&s, &["e2"]).unwrap();
        assert_eq!(one, SignSystem::from_rows(&["+"]).unwrap());
        assert!(delete(&s, &["e1", "e2"]).is_err());
        assert!(delete(&s, &["zzz"]).is_err());
    }

    #[test]
    fn contract_keeps_vanishing_rows() {
        let s = sys(&["+-", "0+", "00"]);
        assert_eq!(contract(&s, &[]).unwrap(), s);
        let c = contract(&s, &["e1"]).unwrap();
        assert_eq!(c.ground().labels(), &["e2".to_string()]);
        assert_eq!(c.covectors(), &[sv("0"), sv("+")]);
        // Nothing vanishes on e1 here.
        let t = sys(&["+-", "++"]);
        assert!(matches!(contract(&t, &["e1"]), Err(Error::EmptyResult(_))));
    }

    #[test]
    fn deletion_and_contraction_commute() {
        let s = sys(&["+-0", "0+-", "00+", "000", "-0+"]);
        let a = delete(&contract(&s, &["e3"]).unwrap(), &["e1"]).unwrap();
        let b = contract(&delete(&s, &["e1"]).unwrap(), &["e3"]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fiber_edges() {
        let s = sys(&["+-", "0+", "00"]);
        let x = sv("0+");
        let whole = fiber(&s, &x, &["e1", "e2"]).unwrap();
        assert_eq!(whole.system, s);
        let only_x = fiber(&s, &x, &[]).unwrap();
        assert_eq!(only_x.system.covectors(), &[x.clone()]);
        assert!(fiber(&s, &sv("--"), &[]).is_err());
    }

    #[test]
    fn fiber_flags() {
        let s = sys(&["--", "0-", "+-", "+0", "++"]);
        // Restriction of +0 away from e2 has full support, and +0 has zero
        // set exactly {e2}.
        let f = fiber(&s, &sv("+0"), &["e2"]).unwrap();
        assert!(f.topal);
        assert!(f.face);
        // Restriction of 0- away from e2 is 0 at e1: not topal.
        let g = fiber(&s, &sv("0-"), &["e2"]).unwrap();
        assert!(!g.topal);
    }

    #[test]
    fn face_examples() {
        let s = sys(&["--", "0-", "+-", "+0", "++"]);
        // A tope is its own face.
        let tope_face = face(&s, &sv("++")).unwrap();
        assert_eq!(tope_face.covectors(), &[sv("++")]);
        // F(V)∩F(W) = F(V∘W) for sign-consistent V, W.
        let v = sv("0-");
        let w = sv("+0");
        assert!(v.separator_is_empty(&w).unwrap());
        let fv = face(&s, &v).unwrap();
        let fw = face(&s, &w).unwrap();
        let fvw = face(&s, &v.compose(&w).unwrap()).unwrap();
        let inter: Vec<SignVector> = fv.iter().filter(|x| fw.contains(x)).cloned().collect();
        assert_eq!(inter, fvw.covectors());
        // Face ordering reverses the sign ordering.
        for a in s.iter() {
            for b in s.iter() {
                let fa = face(&s, a).unwrap();
                let fb = face(&s, b).unwrap();
                let subset = fa.iter().all(|x| fb.contains(x));
                assert_eq!(subset, b.leq(a).unwrap());
            }
        }
    }

    #[test]
    fn face_requires_composition() {
        let no_c = sys(&["+0", "0+"]);
        assert!(matches!(face(&no_c, &sv("+0")), Err(Error::Precondition(_))));
    }

    #[test]
    fn profile_examples() {
        let p = redundancy_profile(&sys(&["+", "-", "0"]));
        assert!(p.coloops.is_empty());
        assert!(p.two_valued.is_empty());
        assert_eq!(p.parallel_classes, vec![vec![0]]);

        let with_coloop = redundancy_profile(&sys(&["+0", "-0"]));
        assert_eq!(with_coloop.coloops, vec![1]);

        let dup = redundancy_profile(&sys(&["++", "--", "00"]));
        assert_eq!(dup.parallel_classes, vec![vec![0, 1]]);

        // Opposite columns are parallel too.
        let opposite = redundancy_profile(&sys(&["+-", "-+", "00"]));
        assert_eq!(opposite.parallel_classes, vec![vec![0, 1]]);
    }

    #[test]
    fn single_valued_is_coloops_plus_constants() {
        let s = sys(&["+0-0", "+0+0", "+00-"]);
        let p = redundancy_profile(&s);
        let mut expected: Vec<usize> = p.coloops.clone();
        for e in 0..s.elements() {
            if !p.non_constant.contains(&e) {
                expected.push(e);
            }
        }
        expected.sort_unstable();
        expected.dedup();
        assert_eq!(p.single_valued, expected);
    }

    #[test]
    fn simplify_examples() {
        let simple = sys(&["+-", "-+", "00", "+0", "0-", "-0", "0+", "++", "--"]);
        assert_eq!(simplify(&simple).unwrap(), simple);

        // Constant column is kept by semisimplification, dropped by
        // simplification.
        let constant = sys(&["++-", "+--", "+0-"]);
        let semi = semisimplify(&constant).unwrap();
        assert_eq!(semi.elements(), 3);
        let full = simplify(&constant).unwrap();
        assert_eq!(full.elements(), 1);

        // Entirely redundant system empties out.
        let degenerate = sys(&["+0", "-0"]);
        assert!(simplify(&degenerate).is_err());

        // Results satisfy the starred conditions on this COM.
        let duplicated = sys(&["++0", "--0", "000", "+++", "---", "++-", "--+"]);
        let slim = simplify(&duplicated).unwrap();
        assert!(check_nonredundancy(&slim, NrFlavor::N1Star).holds);
        assert!(check_nonredundancy(&slim, NrFlavor::N2Star).holds);
        let semi = semisimplify(&duplicated).unwrap();
        assert!(check_nonredundancy(&semi, NrFlavor::Rn1Star).holds);
        assert!(check_nonredundancy(&semi, NrFlavor::Rn2Star).holds);
        // simplify(semisimplify(S)) = simplify(S)
        assert_eq!(simplify(&semi).unwrap(), slim);
    }

    #[test]
    fn minors_of_a_com_are_coms() {
        let com = sys(&["--", "0-", "+-", "+0", "++"]);
        assert!(classify(&com).is_com);
        let m = delete(&com, &["e1"]).unwrap();
        assert!(classify(&m).is_com);
        let contracted = contract(&com, &["e1"]).unwrap();
        assert!(classify(&contracted).is_com);
    }

    #[test]
    fn face_minor_is_om() {
        let com = sys(&["--", "0-", "+-", "+0", "++"]);
        let x = sv("+0");
        let f = face(&com, &x).unwrap();
        let support_labels: Vec<&str> =
            x.support().iter().map(|&i| com.ground().label(i)).collect();
        let om = delete(&f, &support_labels).unwrap();
        assert!(classify(&om).is_om);
    }
}
