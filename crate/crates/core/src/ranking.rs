//! Ranking systems built from posets.
//!
//! A ranking (weak order) is an order whose incomparability relation is
//! transitive, equivalently an ordered partition into antichains. Encoding
//! every ranking extension of a poset over the ground set of 2-subsets and
//! simplifying yields a COM whose topes are the linear extensions; it is an
//! OM exactly when the base order is itself a ranking and lopsided exactly
//! when the base order has width at most two.

use serde::Serialize;

use crate::axioms::classify;
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::minors::simplify;
use crate::sign::{GroundSet, Sign, SignSystem, SignVector};
use crate::topes::{is_median_graph, is_partial_cube, tope_graph};

/// A finite poset over labeled elements in a declared order. The declared
/// order doubles as the "natural" reference order for pair encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// Strict order as a matrix: `less[a][b]` iff a < b.
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// Build from cover-style relations; the transitive closure is taken and
    /// cycles are rejected.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        relations: &[(usize, usize)],
    ) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::Parse(format!("relation ({a},{b}) out of range")));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if less[i][k] && less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            if less[i][i] {
                return Err(Error::Parse("order relations contain a cycle".into()));
            }
        }
        Ok(Poset { labels, less })
    }

    pub fn antichain(n: usize) -> Result<Poset> {
        Poset::new((1..=n).map(|i| i.to_string()), &[])
    }

    pub fn chain(n: usize) -> Result<Poset> {
        let relations: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Poset::new((1..=n).map(|i| i.to_string()), &relations)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b] || self.less[b][a]
    }

    /// Cover pairs of the transitive reduction.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.less[a][b]
                    && !(0..n).any(|c| self.less[a][c] && self.less[c][b])
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Incomparability is transitive exactly for rankings (weak orders).
    pub fn is_ranking(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b
                        && b != c
                        && a != c
                        && !self.comparable(a, b)
                        && !self.comparable(b, c)
                        && self.comparable(a, c)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Size of a largest antichain: exhaustive under 13 elements, Dilworth
    /// via maximum bipartite matching above.
    pub fn width(&self) -> usize {
        let n = self.len();
        if n <= 12 {
            let mut best = 0;
            for mask in 1u64..(1 << n) {
                let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let antichain = members
                    .iter()
                    .all(|&a| members.iter().all(|&b| a == b || !self.comparable(a, b)));
                if antichain {
                    best = best.max(members.len());
                }
            }
            best
        } else {
            n - self.maximum_matching()
        }
    }

    /// Maximum matching in the comparability bipartite graph (augmenting
    /// paths); a minimum chain cover has `n - matching` chains.
    fn maximum_matching(&self) -> usize {
        let n = self.len();
        let mut matched_right: Vec<Option<usize>> = vec![None; n];
        fn augment(
            poset: &Poset,
            a: usize,
            seen: &mut [bool],
            matched_right: &mut [Option<usize>],
        ) -> bool {
            for b in 0..poset.len() {
                if poset.less(a, b) && !seen[b] {
                    seen[b] = true;
                    if matched_right[b].is_none()
                        || augment(poset, matched_right[b].unwrap(), seen, matched_right)
                    {
                        matched_right[b] = Some(a);
                        return true;
                    }
                }
            }
            false
        }
        let mut size = 0;
        for a in 0..n {
            let mut seen = vec![false; n];
            if augment(self, a, &mut seen, &mut matched_right) {
                size += 1;
            }
        }
        size
    }

    /// The 2-subsets of the ground order, lexicographic in the declared
    /// order, with their labels.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j));
            }
        }
        out
    }

    pub fn pair_label(&self, i: usize, j: usize) -> String {
        let (a, b) = (&self.labels[i], &self.labels[j]);
        if a.len() == 1 && b.len() == 1 {
            format!("{a}{b}")
        } else {
            format!("{a}-{b}")
        }
    }
}

/// An ordered partition of the poset's elements into antichain levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ranking {
    levels: Vec<Vec<usize>>,
}

impl Ranking {
    pub fn new(levels: Vec<Vec<usize>>) -> Ranking {
        Ranking { levels }
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn level_of(&self, element: usize) -> usize {
        self.levels
            .iter()
            .position(|level| level.contains(&element))
            .expect("levels cover every element")
    }

    /// Does the ranking's order extend the poset? (`a < b` in the poset
    /// forces a strictly earlier level for `a`.)
    pub fn extends(&self, poset: &Poset) -> bool {
        let n = poset.len();
        let covered: usize = self.levels.iter().map(Vec::len).sum();
        if covered != n {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                if poset.less(a, b) && self.level_of(a) >= self.level_of(b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_linear(&self) -> bool {
        self.levels.iter().all(|level| level.len() == 1)
    }

    /// Refine each level by another ranking's level order; realizes the
    /// composition of the encodings.
    pub fn refine_by(&self, other: &Ranking) -> Ranking {
        let mut levels = Vec::new();
        for level in &self.levels {
            for sub in &other.levels {
                let mut part: Vec<usize> =
                    level.iter().copied().filter(|e| sub.contains(e)).collect();
                if !part.is_empty() {
                    part.sort_unstable();
                    levels.push(part);
                }
            }
        }
        Ranking { levels }
    }
}

/// All ranking extensions of the poset: each level is a non-empty subset of
/// the minimal elements of what remains, which is both sound and complete
/// because the first level of any extension consists of minimal elements.
pub fn ranking_extensions(poset: &Poset, guard: &Guard) -> Result<Vec<Ranking>> {
    let n = poset.len();
    let mut out = Vec::new();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut levels: Vec<Vec<usize>> = Vec::new();
    fn recurse(
        poset: &Poset,
        remaining: &mut Vec<usize>,
        levels: &mut Vec<Vec<usize>>,
        out: &mut Vec<Ranking>,
        guard: &Guard,
    ) -> Result<()> {
        if remaining.is_empty() {
            out.push(Ranking::new(levels.clone()));
            guard.check_rankings(out.len())?;
            return Ok(());
        }
        let minimals: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&a| remaining.iter().all(|&b| !poset.less(b, a)))
            .collect();
        for mask in 1u64..(1 << minimals.len()) {
            let chosen: Vec<usize> = minimals
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let rest: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|e| !chosen.contains(e))
                .collect();
            levels.push(chosen);
            let mut rest = rest;
            recurse(poset, &mut rest, levels, out, guard)?;
            levels.pop();
        }
        Ok(())
    }
    recurse(poset, &mut remaining, &mut levels, &mut out, guard)?;
    Ok(out)
}

/// Encode a ranking extension over the 2-subset ground set: `+` when the
/// declared-order-smaller element sits strictly below the other, `-` for the
/// reverse, `0` for a shared level.
pub fn encode_ranking(poset: &Poset, ranking: &Ranking) -> Result<SignVector> {
    if !ranking.extends(poset) {
        return Err(Error::Precondition(
            "the ranking does not extend the poset".into(),
        ));
    }
    let pairs = poset.pairs();
    let mut v = SignVector::zero(pairs.len());
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let (li, lj) = (ranking.level_of(i), ranking.level_of(j));
        v.set(
            k,
            match li.cmp(&lj) {
                std::cmp::Ordering::Less => Sign::Plus,
                std::cmp::Ordering::Equal => Sign::Zero,
                std::cmp::Ordering::Greater => Sign::Minus,
            },
        );
    }
    Ok(v)
}

/// The characteristic sign vector of the poset's own order over the
/// 2-subset ground set: `+` when the declared-smaller element is below the
/// other, `-` for the reverse, `0` for incomparable pairs.
pub fn encode_order(poset: &Poset) -> SignVector {
    let pairs = poset.pairs();
    let mut v = SignVector::zero(pairs.len());
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if poset.less(i, j) {
            v.set(k, Sign::Plus);
        } else if poset.less(j, i) {
            v.set(k, Sign::Minus);
        }
    }
    v
}

/// The unsimplified encoding system of all ranking extensions.
pub fn ranking_system_unsimplified(poset: &Poset, guard: &Guard) -> Result<SignSystem> {
    let pairs = poset.pairs();
    if pairs.is_empty() {
        return Err(Error::EmptyGroundSet);
    }
    let ground = GroundSet::new(pairs.iter().map(|&(i, j)| poset.pair_label(i, j)))?;
    let extensions = ranking_extensions(poset, guard)?;
    let vectors: Result<Vec<SignVector>> = extensions
        .iter()
        .map(|r| encode_ranking(poset, r))
        .collect();
    SignSystem::new(ground, vectors?)
}

/// The ranking system: encodings of all ranking extensions, simplified.
/// Simplification deletes exactly the comparable pairs (their coordinate is
/// constant); an all-comparable poset therefore empties the ground set and
/// is an error.
pub fn ranking_com(poset: &Poset, guard: &Guard) -> Result<SignSystem> {
    simplify(&ranking_system_unsimplified(poset, guard)?)
}

/// Cross-checks of the ranking propositions for one poset.
#[derive(Debug, Clone, Serialize)]
pub struct RankingPropsReport {
    pub width: usize,
    pub is_ranking: bool,
    pub is_om: bool,
    pub is_lopsided: bool,
    /// `is_om == is_ranking`.
    pub om_iff_ranking: bool,
    /// `is_lopsided == (width ≤ 2)`.
    pub lopsided_iff_width_two: bool,
    /// For ranking posets: tope/edge counts match the product of
    /// permutohedra given by the antichain levels.
    pub permutohedron_product_ok: Option<bool>,
    /// For width ≤ 2 posets: the tope graph is a median graph (covering
    /// graph of a distributive lattice).
    pub median_graph_ok: Option<bool>,
    pub all_pass: bool,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Antichain levels of a ranking poset: peel minimal elements repeatedly.
fn ranking_levels(poset: &Poset) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..poset.len()).collect();
    let mut levels = Vec::new();
    while !remaining.is_empty() {
        let minimals: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&a| remaining.iter().all(|&b| !poset.less(b, a)))
            .collect();
        remaining.retain(|e| !minimals.contains(e));
        levels.push(minimals);
    }
    levels
}

pub fn verify_ranking_props(poset: &Poset, guard: &Guard) -> Result<RankingPropsReport> {
    let width = poset.width();
    let is_ranking = poset.is_ranking();
    let system = ranking_com(poset, guard)?;
    let report = classify(&system);
    let om_iff_ranking = report.is_om == is_ranking;
    let lopsided_iff_width_two = report.is_lopsided == (width <= 2);

    let graph = tope_graph(&system);
    let permutohedron_product_ok = if is_ranking {
        let levels = ranking_levels(poset);
        let vertices: usize = levels.iter().map(|l| factorial(l.len())).product();
        let edges: usize = levels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let m = l.len();
                let own = factorial(m) * m.saturating_sub(1) / 2;
                let rest: usize = levels
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, k)| factorial(k.len()))
                    .product();
                own * rest
            })
            .sum();
        Some(graph.vertex_count() == vertices && graph.edge_count() == edges)
    } else {
        None
    };
    let median_graph_ok = if width <= 2 {
        Some(is_partial_cube(&graph) && is_median_graph(&graph))
    } else {
        None
    };

    let all_pass = om_iff_ranking
        && lopsided_iff_width_two
        && permutohedron_product_ok.unwrap_or(true)
        && median_graph_ok.unwrap_or(true);
    Ok(RankingPropsReport {
        width,
        is_ranking,
        is_om: report.is_om,
        is_lopsided: report.is_lopsided,
        om_iff_ranking,
        lopsided_iff_width_two,
        permutohedron_product_ok,
        median_graph_ok,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::minimal_covectors;

    fn guard() -> Guard {
        Guard::default()
    }

    /// Independent oracle: count weak orders by enumerating level maps.
    fn weak_orders_brute(n: usize) -> usize {
        let mut count = 0;
        let mut assignment = vec![0usize; n];
        fn walk(assignment: &mut Vec<usize>, at: usize, n: usize, count: &mut usize) {
            if at == n {
                // Levels must form an initial segment 0..k with none empty.
                let max = *assignment.iter().max().unwrap();
                let ok = (0..=max).all(|l| assignment.contains(&l));
                if ok {
                    *count += 1;
                }
                return;
            }
            for level in 0..n {
                assignment[at] = level;
                walk(assignment, at + 1, n, count);
            }
        }
        walk(&mut assignment, 0, n, &mut count);
        count
    }

    #[test]
    fn ranking_extension_counts() {
        // Ordered Bell numbers, frozen from the brute-force oracle.
        assert_eq!(weak_orders_brute(3), 13);
        let p3 = Poset::antichain(3).unwrap();
        assert_eq!(ranking_extensions(&p3, &guard()).unwrap().len(), 13);

        let p2 = Poset::antichain(2).unwrap();
        assert_eq!(ranking_extensions(&p2, &guard()).unwrap().len(), 3);

        let chain = Poset::chain(4).unwrap();
        let exts = ranking_extensions(&chain, &guard()).unwrap();
        assert_eq!(exts.len(), 1);
        assert!(exts[0].is_linear());
    }

    #[test]
    fn ranking_guard_caps_enumeration() {
        let tight = Guard {
            max_rankings: 5,
            ..Guard::default()
        };
        let p = Poset::antichain(3).unwrap();
        assert!(matches!(
            ranking_extensions(&p, &tight),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn encode_examples() {
        let p = Poset::antichain(3).unwrap();
        // Natural order 1 < 2 < 3.
        let natural = Ranking::new(vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            encode_ranking(&p, &natural).unwrap(),
            SignVector::parse("+++").unwrap()
        );
        // Two-level ranking {2,3} < {1}.
        let two_level = Ranking::new(vec![vec![1, 2], vec![0]]);
        assert_eq!(
            encode_ranking(&p, &two_level).unwrap(),
            SignVector::parse("--0").unwrap()
        );
        // All in one level: the zero vector.
        let flat = Ranking::new(vec![vec![0, 1, 2]]);
        assert_eq!(
            encode_ranking(&p, &flat).unwrap(),
            SignVector::parse("000").unwrap()
        );
    }

    #[test]
    fn encode_order_examples() {
        // The natural chain encodes as all plus.
        assert_eq!(
            encode_order(&Poset::chain(3).unwrap()),
            SignVector::parse("+++").unwrap()
        );
        // The single comparability 3 < 1 encodes as 0-0; composing it onto
        // the natural order gives +-+, a directed 3-cycle and thus no order.
        let p = Poset::new(["1", "2", "3"], &[(2, 0)]).unwrap();
        let partial = encode_order(&p);
        assert_eq!(partial, SignVector::parse("0-0").unwrap());
        assert_eq!(
            partial.compose(&SignVector::parse("+++").unwrap()).unwrap(),
            SignVector::parse("+-+").unwrap()
        );
    }

    #[test]
    fn encode_rejects_non_extension() {
        let mut relations = vec![(0, 1)];
        let p = Poset::new(["1", "2"], &relations).unwrap();
        let reversed = Ranking::new(vec![vec![1], vec![0]]);
        assert!(encode_ranking(&p, &reversed).is_err());
        relations.clear();
    }

    #[test]
    fn three_antichain_is_the_hexagon_om() {
        let p = Poset::antichain(3).unwrap();
        let com = ranking_com(&p, &guard()).unwrap();
        assert_eq!(com.len(), 13);
        assert_eq!(com.elements(), 3);
        let report = classify(&com);
        assert!(report.is_om);
        let linear: usize = com.iter().filter(|x| x.has_full_support()).count();
        assert_eq!(linear, 6);
    }

    #[test]
    fn chain_ranking_com_is_degenerate() {
        let chain = Poset::chain(3).unwrap();
        assert!(matches!(
            ranking_com(&chain, &guard()),
            Err(Error::EmptyGroundSet)
        ));
        // The unsimplified encoding still exists.
        let raw = ranking_system_unsimplified(&chain, &guard()).unwrap();
        assert_eq!(raw.len(), 1);
    }

    #[test]
    fn composition_refines_levels() {
        let p = Poset::antichain(4).unwrap();
        let extensions = ranking_extensions(&p, &guard()).unwrap();
        for r1 in extensions.iter().step_by(7) {
            for r2 in extensions.iter().step_by(11) {
                let lhs = encode_ranking(&p, r1)
                    .unwrap()
                    .compose(&encode_ranking(&p, r2).unwrap())
                    .unwrap();
                let rhs = encode_ranking(&p, &r1.refine_by(r2)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn simplification_drops_exactly_comparable_pairs() {
        // Fibonacci poset on six elements.
        let p = fibonacci_poset();
        let raw = ranking_system_unsimplified(&p, &guard()).unwrap();
        let com = ranking_com(&p, &guard()).unwrap();
        let incomparable: Vec<String> = p
            .pairs()
            .iter()
            .filter(|&&(i, j)| !p.comparable(i, j))
            .map(|&(i, j)| p.pair_label(i, j))
            .collect();
        assert_eq!(com.ground().labels(), incomparable.as_slice());
        // Deleting the comparable pairs from the raw system gives the same
        // system.
        let comparable: Vec<String> = raw
            .ground()
            .labels()
            .iter()
            .filter(|l| !incomparable.contains(l))
            .cloned()
            .collect();
        let refs: Vec<&str> = comparable.iter().map(String::as_str).collect();
        assert_eq!(crate::minors::delete(&raw, &refs).unwrap(), com);
    }

    fn fibonacci_poset() -> Poset {
        Poset::new(
            ["1", "2", "3", "4", "5", "6"],
            &[(0, 2), (2, 4), (1, 3), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    #[test]
    fn fibonacci_poset_gives_fibonacci_cube() {
        let p = fibonacci_poset();
        assert_eq!(p.width(), 2);
        assert!(!p.is_ranking());
        let com = ranking_com(&p, &guard()).unwrap();
        let graph = tope_graph(&com);
        // F_7 = 13 linear extensions, the Fibonacci cube of order 5.
        assert_eq!(graph.vertex_count(), 13);
        assert_eq!(com.elements(), 5);
        assert!(is_partial_cube(&graph));
        assert!(is_median_graph(&graph));
        let report = verify_ranking_props(&p, &guard()).unwrap();
        assert!(report.is_lopsided);
        assert!(report.all_pass);
    }

    #[test]
    fn width_three_is_not_lopsided() {
        let p = Poset::new(["1", "2", "3", "4"], &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(p.width(), 3);
        let report = verify_ranking_props(&p, &guard()).unwrap();
        assert!(!report.is_lopsided);
        assert!(report.all_pass);
    }

    #[test]
    fn ranking_poset_props() {
        // A genuine ranking with levels {1,2} < {3}.
        let p = Poset::new(["1", "2", "3"], &[(0, 2), (1, 2)]).unwrap();
        assert!(p.is_ranking());
        let report = verify_ranking_props(&p, &guard()).unwrap();
        assert!(report.is_om);
        assert_eq!(report.permutohedron_product_ok, Some(true));
        assert!(report.all_pass);
    }

    #[test]
    fn width_matches_matching_fallback() {
        let p = fibonacci_poset();
        assert_eq!(p.len() - p.maximum_matching(), p.width());
        let anti = Poset::antichain(5).unwrap();
        assert_eq!(anti.len() - anti.maximum_matching(), anti.width());
    }

    #[test]
    fn minimal_ranking_encodings_are_minimal_covectors() {
        let p = fibonacci_poset();
        let raw = ranking_system_unsimplified(&p, &guard()).unwrap();
        // Encodings of the extensions are exactly the covectors, so the
        // minimal covectors correspond to the minimal extensions; the base
        // poset is not a ranking, hence no all-comparable minimum exists
        // and there are at least two minimal covectors.
        assert!(minimal_covectors(&raw).len() >= 2);
    }

    #[test]
    fn topes_are_linear_extensions() {
        let p = fibonacci_poset();
        let extensions = ranking_extensions(&p, &guard()).unwrap();
        let linear = extensions.iter().filter(|r| r.is_linear()).count();
        let com = ranking_com(&p, &guard()).unwrap();
        let graph = tope_graph(&com);
        assert_eq!(graph.vertex_count(), linear);
    }
}
