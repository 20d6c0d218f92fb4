//! Topes, tope graphs, and partial-cube verification.
//!
//! The topes of a system are its maximal covectors. For a semisimple strong
//! elimination system the tope graph (hypercube subgraph induced on the
//! topes) is a partial cube whose edges correspond one-to-one to the
//! covectors with singleton zero sets.

use serde::Serialize;

use crate::axioms::{check_nonredundancy, classify, non_constant_positions, NrFlavor};
use crate::error::{Error, Result};
use crate::sign::{Sign, SignSystem, SignVector};

/// Tope graph: vertices are topes in canonical order, edges join topes
/// differing in exactly one coordinate and are labeled by that coordinate's
/// element.
#[derive(Debug, Clone, Serialize)]
pub struct Graph {
    pub vertices: Vec<SignVector>,
    /// `(i, j, label)` with `i < j` indexing into `vertices`.
    pub edges: Vec<(usize, usize, String)>,
    /// False when the originating system failed the semisimplicity check.
    pub semisimple_input: bool,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j, _) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.vertices.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }
}

/// Maximal covectors under the sign ordering.
pub fn topes(system: &SignSystem) -> Vec<SignVector> {
    system
        .iter()
        .filter(|x| !system.iter().any(|y| x.below(y).unwrap()))
        .cloned()
        .collect()
}

/// The hypercube subgraph induced on the tope set.
pub fn tope_graph(system: &SignSystem) -> Graph {
    let semisimple_input = check_nonredundancy(system, NrFlavor::Rn1Star).holds
        && check_nonredundancy(system, NrFlavor::Rn2Star).holds;
    let vertices = topes(system);
    let ground = system.ground();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let x = &vertices[i];
            let y = &vertices[j];
            if x.hamming(y).unwrap() == 1 {
                let e = (0..x.len()).find(|&k| x.get(k) != y.get(k)).unwrap();
                edges.push((i, j, ground.label(e).to_string()));
            }
        }
    }
    Graph {
        vertices,
        edges,
        semisimple_input,
    }
}

/// True iff the graph is connected and the graph distance between every
/// vertex pair equals the number of coordinates on which they differ.
pub fn is_partial_cube(graph: &Graph) -> bool {
    if graph.vertices.is_empty() {
        return false;
    }
    if !graph.is_connected() {
        return false;
    }
    for i in 0..graph.vertices.len() {
        let dist = graph.distances_from(i);
        for j in 0..graph.vertices.len() {
            if dist[j] != graph.vertices[i].hamming(&graph.vertices[j]).unwrap() {
                return false;
            }
        }
    }
    true
}

/// True iff every vertex triple has exactly one median (a vertex on shortest
/// paths between all three pairs). Median graphs are precisely the covering
/// graphs of distributive-lattice-like structures this crate meets through
/// width-2 ranking systems.
pub fn is_median_graph(graph: &Graph) -> bool {
    let n = graph.vertices.len();
    if n == 0 || !graph.is_connected() {
        return false;
    }
    let dist: Vec<Vec<usize>> = (0..n).map(|i| graph.distances_from(i)).collect();
    for u in 0..n {
        for v in u..n {
            for w in v..n {
                let mut medians = 0;
                for m in 0..n {
                    if dist[u][m] + dist[m][v] == dist[u][v]
                        && dist[v][m] + dist[m][w] == dist[v][w]
                        && dist[u][m] + dist[m][w] == dist[u][w]
                    {
                        medians += 1;
                    }
                }
                if medians != 1 {
                    return false;
                }
            }
        }
    }
    true
}

fn require_semisimple(system: &SignSystem, what: &str) -> Result<()> {
    let ok = check_nonredundancy(system, NrFlavor::Rn1Star).holds
        && check_nonredundancy(system, NrFlavor::Rn2Star).holds;
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} needs a semisimple system")))
    }
}

/// Bijection between tope-graph edges and the covectors with singleton zero
/// set among the non-constant positions: each edge's barycenter (zero at the
/// edge label, tope values elsewhere) must be one of them, injectively and
/// exhaustively. Holds for every semisimple strong elimination system;
/// systems outside the class simply fail the check.
pub fn edge_covector_check(system: &SignSystem) -> Result<bool> {
    require_semisimple(system, "the edge-covector bijection")?;
    let graph = tope_graph(system);
    let non_constant = non_constant_positions(system);
    let mut barycenters = Vec::new();
    for (i, j, label) in &graph.edges {
        let e = system.ground().position(label)?;
        let mut barycenter = graph.vertices[*i].clone();
        barycenter.set(e, Sign::Zero);
        // The endpoints agree off the edge coordinate.
        debug_assert_eq!(barycenter, {
            let mut other = graph.vertices[*j].clone();
            other.set(e, Sign::Zero);
            other
        });
        if !system.contains(&barycenter) {
            return Ok(false);
        }
        barycenters.push(barycenter);
    }
    barycenters.sort();
    let before = barycenters.len();
    barycenters.dedup();
    if barycenters.len() != before {
        return Ok(false);
    }
    let singleton_zero: Vec<SignVector> = system
        .iter()
        .filter(|x| {
            non_constant
                .iter()
                .filter(|&&e| x.get(e) == Sign::Zero)
                .count()
                == 1
                && x.zero_set().iter().all(|e| non_constant.contains(e))
        })
        .cloned()
        .collect();
    Ok(barycenters == singleton_zero)
}

/// Tope determination: two semisimple COMs on the same ground set with equal
/// tope sets are equal. This verifies the implication for a concrete pair,
/// it does not reconstruct a system from its topes.
pub fn verify_tope_determination(a: &SignSystem, b: &SignSystem) -> Result<bool> {
    if a.ground() != b.ground() {
        return Err(Error::Precondition(
            "tope determination needs a common ground set".into(),
        ));
    }
    for (name, s) in [("first", a), ("second", b)] {
        require_semisimple(s, "tope determination")?;
        if !classify(s).is_com {
            return Err(Error::Precondition(format!(
                "tope determination needs COM inputs; the {name} system is not one"
            )));
        }
    }
    Ok(topes(a) != topes(b) || a == b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&str]) -> SignSystem {
        SignSystem::from_rows(rows).unwrap()
    }

    fn sv(s: &str) -> SignVector {
        SignVector::parse(s).unwrap()
    }

    #[test]
    fn topes_are_maximal() {
        assert_eq!(topes(&sys(&["+", "-", "0"])), vec![sv("+"), sv("-")]);
        let two_points = sys(&["--", "0-", "+-", "+0", "++"]);
        assert_eq!(topes(&two_points), vec![sv("++"), sv("+-"), sv("--")]);
    }

    #[test]
    fn tope_graph_shapes() {
        let single = tope_graph(&sys(&["+-"]));
        assert_eq!(single.vertex_count(), 1);
        assert_eq!(single.edge_count(), 0);

        let rows: Vec<String> = crate::sign::all_sign_vectors(2)
            .iter()
            .map(|v| v.to_string())
            .collect();
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        let square = tope_graph(&sys(&refs));
        assert_eq!(square.vertex_count(), 4);
        assert_eq!(square.edge_count(), 4);
        assert!(is_partial_cube(&square));
        // Every vertex of a 4-cycle has degree 2.
        assert!(square.adjacency().iter().all(|n| n.len() == 2));
    }

    #[test]
    fn non_semisimple_input_is_flagged() {
        let g = tope_graph(&sys(&["++", "--", "00"]));
        assert!(!g.semisimple_input);
        // The two topes differ in both coordinates: disconnected.
        assert!(!is_partial_cube(&g));
    }

    #[test]
    fn non_isometric_path_is_not_a_partial_cube() {
        // Five vertices of the 3-cube along an induced but non-isometric
        // path, plus the barycenters of its four edges.
        let path = sys(&[
            "+++", "++-", "+--", "---", "--+", "++0", "+0-", "0--", "--0",
        ]);
        let g = tope_graph(&path);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
        assert!(!is_partial_cube(&g));
    }

    #[test]
    fn edge_covectors_of_a_com() {
        let two_points = sys(&["--", "0-", "+-", "+0", "++"]);
        assert!(edge_covector_check(&two_points).unwrap());

        // Not a COM: the edge (++, +-) has barycenter +0 missing.
        let weak_only = sys(&["++", "+-", "--", "00"]);
        assert!(!edge_covector_check(&weak_only).unwrap());

        let single = sys(&["+-"]);
        assert!(edge_covector_check(&single).unwrap());
    }

    #[test]
    fn tope_determination_on_equal_and_distinct_systems() {
        let a = sys(&["--", "0-", "+-", "+0", "++"]);
        assert!(verify_tope_determination(&a, &a).unwrap());
        // Mutilated systems fail the COM precondition.
        let mutilated = a.subsystem(|x| x != &sv("0-")).unwrap();
        assert!(verify_tope_determination(&a, &mutilated).is_err());
    }

    #[test]
    fn median_examples() {
        // A 4-cycle is a median graph; the 6-cycle is not.
        let rows: Vec<String> = crate::sign::all_sign_vectors(2)
            .iter()
            .map(|v| v.to_string())
            .collect();
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        let square = tope_graph(&sys(&refs));
        assert!(is_median_graph(&square));

        let hexagon = sys(&[
            "000", "0++", "0--", "-0+", "+0-", "++0", "--0", "+++", "++-", "-++", "--+", "+--",
            "---",
        ]);
        let g = tope_graph(&hexagon);
        assert_eq!(g.vertex_count(), 6);
        assert!(is_partial_cube(&g));
        assert!(!is_median_graph(&g));
    }
}
