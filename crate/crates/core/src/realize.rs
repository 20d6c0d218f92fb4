//! Realizable systems: rational hyperplane arrangements restricted to open
//! convex regions.
//!
//! Every candidate sign vector is tested by an exact strict-feasibility
//! linear program; a candidate is kept exactly when some rational point
//! lies on the prescribed side of every hyperplane and inside the region.
//! All arithmetic is exact, so the emitted system is the true cell
//! structure of the arrangement within the region.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::ranking::Poset;
use crate::sign::{all_sign_vectors, GroundSet, Sign, SignSystem, SignVector};
use crate::simplex::{rat, simplex_max, LpOutcome, Rat};

/// An affine hyperplane `normal·x = offset`; the positive side is
/// `normal·x > offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineHyperplane {
    pub normal: Vec<Rat>,
    pub offset: Rat,
    pub label: String,
}

impl AffineHyperplane {
    pub fn new(normal: Vec<Rat>, offset: Rat, label: impl Into<String>) -> Result<AffineHyperplane> {
        if normal.iter().all(Rat::is_zero) {
            return Err(Error::Parse("hyperplane normal must be non-zero".into()));
        }
        Ok(AffineHyperplane {
            normal,
            offset,
            label: label.into(),
        })
    }
}

/// An open convex region given by strict inequalities `c·x > r`; an empty
/// list means the whole space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpenPolyhedron {
    pub stricts: Vec<(Vec<Rat>, Rat)>,
}

/// A rational arrangement with its region of interest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationProblem {
    pub hyperplanes: Vec<AffineHyperplane>,
    pub region: OpenPolyhedron,
    pub dimension: usize,
}

impl RealizationProblem {
    pub fn validate(&self) -> Result<()> {
        for h in &self.hyperplanes {
            if h.normal.len() != self.dimension {
                return Err(Error::DimensionMismatch {
                    left: self.dimension,
                    right: h.normal.len(),
                });
            }
        }
        for (c, _) in &self.region.stricts {
            if c.len() != self.dimension {
                return Err(Error::DimensionMismatch {
                    left: self.dimension,
                    right: c.len(),
                });
            }
        }
        if self.hyperplanes.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        Ok(())
    }
}

/// Decide whether some rational point satisfies every equality `a·x = b`
/// and every strict inequality `c·x > r`, returning a witness when one
/// exists.
///
/// A slack variable `t` with `t ≤ 1` turns strictness into optimization:
/// maximize `t` subject to `c·x - r ≥ t`; the strict system is solvable
/// exactly when the optimum is positive.
pub fn lp_strict_feasible(
    equalities: &[(Vec<Rat>, Rat)],
    stricts: &[(Vec<Rat>, Rat)],
    dimension: usize,
) -> Option<Vec<Rat>> {
    // Standard-form variables: x⁺, x⁻ (d each), t⁺, t⁻, then one slack per
    // strict row and one for the t ≤ 1 cap.
    let d = dimension;
    let vars = 2 * d + 2 + stricts.len() + 1;
    let xp = |i: usize| i;
    let xn = |i: usize| d + i;
    let tp = 2 * d;
    let tn = 2 * d + 1;
    let slack = |k: usize| 2 * d + 2 + k;

    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (a, b) in equalities {
        let mut row = vec![Rat::zero(); vars];
        for i in 0..d {
            row[xp(i)] = a[i].clone();
            row[xn(i)] = -a[i].clone();
        }
        rows.push((row, b.clone()));
    }
    for (k, (c, r)) in stricts.iter().enumerate() {
        // c·x - t ≥ r, written c·x - t - s = r with surplus s ≥ 0.
        let mut row = vec![Rat::zero(); vars];
        for i in 0..d {
            row[xp(i)] = c[i].clone();
            row[xn(i)] = -c[i].clone();
        }
        row[tp] = -rat(1);
        row[tn] = rat(1);
        row[slack(k)] = -rat(1);
        rows.push((row, r.clone()));
    }
    // t + s = 1
    let mut cap = vec![Rat::zero(); vars];
    cap[tp] = rat(1);
    cap[tn] = -rat(1);
    cap[slack(stricts.len())] = rat(1);
    rows.push((cap, rat(1)));

    let mut objective = vec![Rat::zero(); vars];
    objective[tp] = rat(1);
    objective[tn] = -rat(1);

    match simplex_max(&objective, &rows) {
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("the objective is capped at one"),
        LpOutcome::Optimal { point, objective } => {
            if objective.is_positive() {
                Some((0..d).map(|i| &point[xp(i)] - &point[xn(i)]).collect())
            } else {
                None
            }
        }
    }
}

fn dot(a: &[Rat], x: &[Rat]) -> Rat {
    a.iter().zip(x).map(|(c, v)| c * v).sum()
}

/// Exact sign pattern of a point against the arrangement.
pub fn point_signs(problem: &RealizationProblem, point: &[Rat]) -> SignVector {
    let mut v = SignVector::zero(problem.hyperplanes.len());
    for (k, h) in problem.hyperplanes.iter().enumerate() {
        let value = dot(&h.normal, point) - &h.offset;
        let sign = if value.is_positive() {
            Sign::Plus
        } else if value.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        };
        v.set(k, sign);
    }
    v
}

fn in_region(problem: &RealizationProblem, point: &[Rat]) -> bool {
    problem
        .region
        .stricts
        .iter()
        .all(|(c, r)| (dot(c, point) - r).is_positive())
}

/// Enumerate the covectors of the arrangement within the region, together
/// with an exact witness point per covector. Each witness is re-verified
/// against every constraint after the search.
pub fn region_covectors_with_witnesses(
    problem: &RealizationProblem,
    guard: &Guard,
) -> Result<(SignSystem, Vec<(SignVector, Vec<Rat>)>)> {
    problem.validate()?;
    let n = problem.hyperplanes.len();
    guard.check_enum(n)?;
    let ground = GroundSet::new(problem.hyperplanes.iter().map(|h| h.label.clone()))?;

    // Candidates sharing a zero set share the equality subsystem; an
    // infeasible span (with the region constraints) rules out all of them.
    let mut span_feasible: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut covectors = Vec::new();
    let mut witnesses = Vec::new();
    for candidate in all_sign_vectors(n) {
        let zeros = candidate.zero_set();
        let equalities: Vec<(Vec<Rat>, Rat)> = zeros
            .iter()
            .map(|&k| {
                let h = &problem.hyperplanes[k];
                (h.normal.clone(), h.offset.clone())
            })
            .collect();
        let span_ok = *span_feasible.entry(zeros.clone()).or_insert_with(|| {
            lp_strict_feasible(&equalities, &problem.region.stricts, problem.dimension).is_some()
        });
        if !span_ok {
            continue;
        }
        let mut stricts = problem.region.stricts.clone();
        for k in 0..n {
            let h = &problem.hyperplanes[k];
            match candidate.get(k) {
                Sign::Zero => {}
                Sign::Plus => stricts.push((h.normal.clone(), h.offset.clone())),
                Sign::Minus => stricts.push((
                    h.normal.iter().map(|c| -c.clone()).collect(),
                    -h.offset.clone(),
                )),
            }
        }
        if let Some(point) = lp_strict_feasible(&equalities, &stricts, problem.dimension) {
            if point_signs(problem, &point) != candidate || !in_region(problem, &point) {
                return Err(Error::Inconsistency(format!(
                    "witness for {candidate} fails exact re-verification"
                )));
            }
            covectors.push(candidate.clone());
            witnesses.push((candidate, point));
        }
    }
    if covectors.is_empty() {
        return Err(Error::EmptyResult(
            "the region misses every cell of the arrangement".into(),
        ));
    }
    Ok((SignSystem::new(ground, covectors)?, witnesses))
}

/// Enumerate the covectors of the arrangement within the region.
pub fn region_covectors(problem: &RealizationProblem, guard: &Guard) -> Result<SignSystem> {
    region_covectors_with_witnesses(problem, guard).map(|(s, _)| s)
}

/// Braid-style realization of a poset's ranking system: one hyperplane
/// `x_i = x_j` per incomparable pair (positive side `x_i < x_j` for the
/// declared-smaller element `i`), restricted to the open polyhedron
/// `x_a < x_b` over all comparable pairs `a < b`.
pub fn realize_ranking(poset: &Poset) -> Result<RealizationProblem> {
    let n = poset.len();
    let mut hyperplanes = Vec::new();
    for &(i, j) in &poset.pairs() {
        if poset.comparable(i, j) {
            continue;
        }
        let mut normal = vec![Rat::zero(); n];
        normal[j] = rat(1);
        normal[i] = rat(-1);
        hyperplanes.push(AffineHyperplane::new(
            normal,
            Rat::zero(),
            poset.pair_label(i, j),
        )?);
    }
    if hyperplanes.is_empty() {
        return Err(Error::EmptyGroundSet);
    }
    let mut stricts = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if poset.less(a, b) {
                let mut c = vec![Rat::zero(); n];
                c[b] = rat(1);
                c[a] = rat(-1);
                stricts.push((c, Rat::zero()));
            }
        }
    }
    Ok(RealizationProblem {
        hyperplanes,
        region: OpenPolyhedron { stricts },
        dimension: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::classify;
    use crate::simplex::ratio;

    fn coordinate_plane_problem(region: OpenPolyhedron) -> RealizationProblem {
        RealizationProblem {
            hyperplanes: vec![
                AffineHyperplane::new(vec![rat(1), rat(0)], rat(0), "h1").unwrap(),
                AffineHyperplane::new(vec![rat(0), rat(1)], rat(0), "h2").unwrap(),
            ],
            region,
            dimension: 2,
        }
    }

    #[test]
    fn strict_feasibility_examples() {
        // 0 < x < 1 has a rational witness.
        let witness = lp_strict_feasible(
            &[],
            &[(vec![rat(1)], rat(0)), (vec![rat(-1)], rat(-1))],
            1,
        )
        .expect("open interval is non-empty");
        assert!(witness[0].is_positive());
        assert!(witness[0] < rat(1));

        // x > 0 and -x > 0 is empty.
        assert!(lp_strict_feasible(
            &[],
            &[(vec![rat(1)], rat(0)), (vec![rat(-1)], rat(0))],
            1
        )
        .is_none());

        // x = 0 with x > 0 is empty.
        assert!(lp_strict_feasible(
            &[(vec![rat(1)], rat(0))],
            &[(vec![rat(1)], rat(0))],
            1
        )
        .is_none());
    }

    #[test]
    fn two_crossing_lines_make_the_full_system() {
        let problem = coordinate_plane_problem(OpenPolyhedron::default());
        let system = region_covectors(&problem, &Guard::default()).unwrap();
        assert_eq!(system.len(), 9);
        let report = classify(&system);
        assert!(report.is_om);
        assert!(report.is_lopsided);
    }

    #[test]
    fn halfplane_clips_an_orthant() {
        // Coordinate lines restricted to x + y > 1/2: the region misses the
        // closed negative orthant entirely.
        let region = OpenPolyhedron {
            stricts: vec![(vec![rat(1), rat(1)], ratio(1, 2))],
        };
        let problem = coordinate_plane_problem(region);
        let system = region_covectors(&problem, &Guard::default()).unwrap();
        let report = classify(&system);
        assert!(report.is_com);
        assert!(report.is_lopsided);
        assert!(!system.contains(&SignVector::parse("--").unwrap()));
        assert!(!report.is_om);
    }

    #[test]
    fn witnesses_match_their_covectors() {
        let region = OpenPolyhedron {
            stricts: vec![(vec![rat(1), rat(1)], ratio(1, 2))],
        };
        let problem = coordinate_plane_problem(region);
        let (system, witnesses) =
            region_covectors_with_witnesses(&problem, &Guard::default()).unwrap();
        assert_eq!(system.len(), witnesses.len());
        for (covector, point) in &witnesses {
            assert_eq!(&point_signs(&problem, point), covector);
        }
        // The composition of two witnessed covectors is witnessed as well.
        for (x, _) in &witnesses {
            for (y, _) in &witnesses {
                assert!(system.contains(&x.compose(y).unwrap()));
            }
        }
    }

    #[test]
    fn braid_realization_matches_ranking_system() {
        let poset = Poset::antichain(3).unwrap();
        let problem = realize_ranking(&poset).unwrap();
        let realized = region_covectors(&problem, &Guard::default()).unwrap();
        let ranked = crate::ranking::ranking_com(&poset, &Guard::default()).unwrap();
        assert_eq!(realized, ranked);
    }

    #[test]
    fn chain_realization_is_degenerate() {
        let chain = Poset::chain(3).unwrap();
        assert!(matches!(
            realize_ranking(&chain),
            Err(Error::EmptyGroundSet)
        ));
    }

    #[test]
    fn guard_rejects_large_arrangements() {
        let tight = Guard {
            max_enum_elements: 1,
            ..Guard::default()
        };
        let problem = coordinate_plane_problem(OpenPolyhedron::default());
        assert!(matches!(
            region_covectors(&problem, &tight),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
