//! Edge enumeration, isolated-vertex pruning, edge ideals, and matchings
//! for complete t-spread d-partite hypergraphs.

use std::collections::BTreeSet;

use crate::error::{Budget, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::instance::{Part, PartitionFamily, SpreadInstance, SpreadVector};
use crate::monomial::{Monomial, SqfMonomial, Var};

/// A d-uniform d-partite hypergraph with edges listed lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub d: usize,
    pub vertices: Vec<Var>,
    pub edges: Vec<Vec<Var>>,
}

impl Hypergraph {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// All vertex tuples satisfying the spread condition: one vertex per part,
/// with i_j - i_{j-1} >= t_{j-1}. Depth-first over parts with the running
/// lower bound, which yields lexicographic edge order.
pub fn enumerate_edges(instance: &SpreadInstance) -> Hypergraph {
    let parts = instance.partition().parts();
    let d = parts.len();
    let mut edges = Vec::new();
    let mut stack: Vec<Var> = Vec::with_capacity(d);

    fn dfs(
        parts: &[Part],
        spread: &SpreadVector,
        j: usize,
        stack: &mut Vec<Var>,
        edges: &mut Vec<Vec<Var>>,
    ) {
        if j == parts.len() {
            edges.push(stack.clone());
            return;
        }
        let lower = if j == 0 {
            0
        } else {
            stack[j - 1] + spread.gap(j)
        };
        for &v in parts[j].vertices() {
            if v >= lower {
                stack.push(v);
                dfs(parts, spread, j + 1, stack, edges);
                stack.pop();
            }
        }
    }
    dfs(parts, instance.spread(), 0, &mut stack, &mut edges);

    let mut used: BTreeSet<Var> = BTreeSet::new();
    for e in &edges {
        used.extend(e.iter().copied());
    }
    Hypergraph {
        d,
        vertices: used.into_iter().collect(),
        edges,
    }
}

/// Remove vertices that lie in no edge. The surviving instance has the same
/// edge set; a part emptied by pruning means no edges exist at all.
pub fn prune_isolated(instance: &SpreadInstance) -> Result<(SpreadInstance, Vec<Var>)> {
    let h = enumerate_edges(instance);
    if h.is_empty() {
        return Err(Error::Degenerate("the instance has no edges".into()));
    }
    let used: BTreeSet<Var> = h.vertices.iter().copied().collect();
    let mut removed = Vec::new();
    let mut new_parts = Vec::new();
    for part in instance.partition().parts() {
        let keep: Vec<Var> = part
            .vertices()
            .iter()
            .copied()
            .filter(|v| {
                let k = used.contains(v);
                if !k {
                    removed.push(*v);
                }
                k
            })
            .collect();
        if keep.is_empty() {
            return Err(Error::Degenerate(
                "a part lost all its vertices while pruning".into(),
            ));
        }
        // interval form is re-detected; pruning can break contiguity
        new_parts.push(Part::new(keep)?);
    }
    let pruned = SpreadInstance::pruned_copy(
        PartitionFamily::new(new_parts)?,
        instance.spread().clone(),
    );
    Ok((pruned, removed))
}

/// Convenience: prune, then re-enumerate on the pruned instance.
pub fn pruned_hypergraph(instance: &SpreadInstance) -> Result<(SpreadInstance, Vec<Var>, Hypergraph)> {
    let (pruned, removed) = prune_isolated(instance)?;
    let h = enumerate_edges(&pruned);
    Ok((pruned, removed, h))
}

/// The square-free edge ideal, one generator per edge.
pub fn edge_ideal(h: &Hypergraph) -> MonomialIdeal {
    MonomialIdeal::new(
        h.edges
            .iter()
            .map(|e| Monomial::squarefree(e.iter().copied()))
            .collect(),
    )
}

pub fn edge_monomials(h: &Hypergraph) -> Vec<SqfMonomial> {
    h.edges.iter().map(|e| SqfMonomial::new(e.clone())).collect()
}

/// Exact maximum matching by branch and bound over the edge list.
/// Returns the matching number and one witness family of disjoint edges.
pub fn maximum_matching(h: &Hypergraph, budget: &Budget) -> Result<(usize, Vec<Vec<Var>>)> {
    if h.is_empty() {
        return Err(Error::Degenerate("matching on an empty hypergraph".into()));
    }
    let vert_pos: std::collections::HashMap<Var, usize> = h
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let masks: Vec<u128> = h
        .edges
        .iter()
        .map(|e| e.iter().fold(0u128, |m, v| m | 1 << vert_pos[v]))
        .collect();
    assert!(h.vertices.len() <= 128, "matching supports up to 128 vertices");

    struct Search<'a> {
        masks: &'a [u128],
        best: usize,
        best_pick: Vec<usize>,
        nodes: usize,
        limit: usize,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize, used: u128, pick: &mut Vec<usize>) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::Budget("matching search exceeded its node budget".into()));
            }
            if pick.len() > self.best {
                self.best = pick.len();
                self.best_pick = pick.clone();
            }
            if i == self.masks.len() || pick.len() + (self.masks.len() - i) <= self.best {
                return Ok(());
            }
            if self.masks[i] & used == 0 {
                pick.push(i);
                self.go(i + 1, used | self.masks[i], pick)?;
                pick.pop();
            }
            self.go(i + 1, used, pick)
        }
    }
    let mut s = Search {
        masks: &masks,
        best: 0,
        best_pick: Vec::new(),
        nodes: 0,
        limit: budget.max_tuples,
    };
    s.go(0, 0, &mut Vec::new())?;
    let witness = s.best_pick.iter().map(|&i| h.edges[i].clone()).collect();
    Ok((s.best, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::instance;

    fn example_2_3() -> SpreadInstance {
        instance(&[&[1, 2, 3], &[5, 7], &[8, 9, 11], &[12, 13]], &[3, 2, 4])
    }

    fn example_4_2() -> SpreadInstance {
        instance(&[&[1, 2], &[4, 5, 6], &[8, 9, 10], &[12, 13]], &[3, 4, 3])
    }

    #[test]
    fn nine_edges_of_the_four_partite_example() {
        let h = enumerate_edges(&example_2_3());
        let expect = vec![
            vec![1, 5, 8, 12],
            vec![1, 5, 8, 13],
            vec![1, 5, 9, 13],
            vec![1, 7, 9, 13],
            vec![2, 5, 8, 12],
            vec![2, 5, 8, 13],
            vec![2, 5, 9, 13],
            vec![2, 7, 9, 13],
            vec![3, 7, 9, 13],
        ];
        let mut got = h.edges.clone();
        got.sort();
        let mut want = expect;
        want.sort();
        assert_eq!(got, want);
        assert_eq!(h.edges.len(), 9);
    }

    #[test]
    fn single_part_has_singleton_edges() {
        let inst = instance(&[&[1, 2]], &[]);
        let h = enumerate_edges(&inst);
        assert_eq!(h.edges, vec![vec![1], vec![2]]);
    }

    #[test]
    fn edges_match_brute_force_filter() {
        let inst = instance(&[&[1, 3], &[4, 5, 6], &[9, 10]], &[2, 3]);
        let h = enumerate_edges(&inst);
        let parts = inst.partition().parts();
        let mut brute = Vec::new();
        for &a in parts[0].vertices() {
            for &b in parts[1].vertices() {
                for &c in parts[2].vertices() {
                    if b >= a + 2 && c >= b + 3 {
                        brute.push(vec![a, b, c]);
                    }
                }
            }
        }
        assert_eq!(h.edges, brute);
    }

    #[test]
    fn complete_when_one_spread_contiguous() {
        let inst = instance(&[&[1, 2], &[3, 4, 5], &[6, 7]], &[1, 1]);
        let h = enumerate_edges(&inst);
        assert_eq!(h.edges.len(), 2 * 3 * 2);
    }

    #[test]
    fn pruning_removes_vertex_11() {
        let (pruned, removed) = prune_isolated(&example_2_3()).unwrap();
        assert_eq!(removed, vec![11]);
        assert_eq!(pruned.partition().parts()[2].vertices(), &[8, 9]);
        // edge set unchanged by pruning
        assert_eq!(enumerate_edges(&pruned).edges, enumerate_edges(&example_2_3()).edges);
        assert!(pruned.is_pruned());
    }

    #[test]
    fn pruning_noop_when_all_covered() {
        let (_, removed) = prune_isolated(&example_4_2()).unwrap();
        assert!(removed.is_empty());
    }

    #[test]
    fn degenerate_when_spread_too_large() {
        let inst = instance(&[&[1, 2], &[3, 4]], &[5]);
        assert!(matches!(prune_isolated(&inst), Err(Error::Degenerate(_))));
    }

    #[test]
    fn edge_ideal_of_example_2_3() {
        let h = enumerate_edges(&example_2_3());
        let ideal = edge_ideal(&h);
        assert_eq!(ideal.num_gens(), 9);
        assert!(ideal.contains(&Monomial::squarefree([1, 5, 8, 12])));
        assert!(ideal.contains(&Monomial::squarefree([3, 7, 9, 13])));
        assert_eq!(ideal.single_degree(), Some(4));
    }

    #[test]
    fn edge_ideal_of_example_4_2_has_13_generators() {
        let h = enumerate_edges(&example_4_2());
        assert_eq!(edge_ideal(&h).num_gens(), 13);
    }

    #[test]
    fn principal_edge_ideal() {
        let inst = instance(&[&[1], &[3]], &[2]);
        let h = enumerate_edges(&inst);
        assert_eq!(edge_ideal(&h).gens(), &[Monomial::squarefree([1, 3])]);
    }

    #[test]
    fn matching_of_example_4_2_is_two() {
        let h = enumerate_edges(&example_4_2());
        let (nu, witness) = maximum_matching(&h, &Budget::default()).unwrap();
        assert_eq!(nu, 2);
        assert_eq!(witness.len(), 2);
        let all: Vec<Var> = witness.iter().flatten().copied().collect();
        let dedup: BTreeSet<Var> = all.iter().copied().collect();
        assert_eq!(all.len(), dedup.len(), "witness edges must be disjoint");
    }

    #[test]
    fn matching_single_edge() {
        let inst = instance(&[&[1], &[3]], &[2]);
        let h = enumerate_edges(&inst);
        assert_eq!(maximum_matching(&h, &Budget::default()).unwrap().0, 1);
    }

    #[test]
    fn matching_at_least_min_part_size_on_interval_instances() {
        // shifted diagonal edges {i_1+s, ..., i_d+s} stay t-spread
        let inst = instance(&[&[2, 3, 4], &[6, 7, 8], &[9, 10, 11], &[13, 14, 15]], &[2, 3, 4]);
        let h = enumerate_edges(&inst);
        let (nu, _) = maximum_matching(&h, &Budget::default()).unwrap();
        assert!(nu >= 3);
    }
}
