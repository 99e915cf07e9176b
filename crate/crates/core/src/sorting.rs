//! The sorting operator on pairs of equal-degree monomials, sortability
//! and exchange checks, the quadratic Rees relations, and the linear
//! relation graph with the analytic-spread and limit-depth consequences.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use crate::error::{Budget, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::instance::SpreadInstance;
use crate::monomial::{Monomial, SqfMonomial, Var};

/// The image of a pair under the sorting operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedPair {
    pub input: (SqfMonomial, SqfMonomial),
    pub first: SqfMonomial,
    pub second: SqfMonomial,
}

/// Merge the 2d indices ascending; odd positions go to the first output,
/// even positions to the second.
pub fn sort_pair(u: &SqfMonomial, v: &SqfMonomial) -> Result<SortedPair> {
    if u.degree() != v.degree() {
        return Err(Error::Unsupported("sorting needs equal degrees".into()));
    }
    let mut merged: Vec<Var> = u.support().iter().chain(v.support()).copied().collect();
    merged.sort_unstable();
    let first: Vec<Var> = merged.iter().copied().step_by(2).collect();
    let second: Vec<Var> = merged.iter().copied().skip(1).step_by(2).collect();
    Ok(SortedPair {
        input: (u.clone(), v.clone()),
        first: SqfMonomial::new(first),
        second: SqfMonomial::new(second),
    })
}

/// true iff (u, v) is fixed by the sorting operator in this order.
pub fn is_sorted_pair(u: &SqfMonomial, v: &SqfMonomial) -> bool {
    match sort_pair(u, v) {
        Ok(p) => p.first == *u && p.second == *v,
        Err(_) => false,
    }
}

#[derive(Debug, Clone)]
pub struct SortabilityVerdict {
    pub sortable: bool,
    /// a pair whose sort image leaves the generating set, if any
    pub counterexample: Option<SortedPair>,
}

/// A set is sortable when both components of every sorted pair stay inside it.
pub fn check_sortable(ideal: &MonomialIdeal) -> Result<SortabilityVerdict> {
    let gens = squarefree_generators(ideal)?;
    let set: HashSet<&SqfMonomial> = gens.iter().collect();
    for (a, b) in gens.iter().tuple_combinations() {
        let p = sort_pair(a, b)?;
        if !set.contains(&p.first) || !set.contains(&p.second) {
            return Ok(SortabilityVerdict {
                sortable: false,
                counterexample: Some(p),
            });
        }
    }
    Ok(SortabilityVerdict {
        sortable: true,
        counterexample: None,
    })
}

fn squarefree_generators(ideal: &MonomialIdeal) -> Result<Vec<SqfMonomial>> {
    if ideal.single_degree().is_none() {
        return Err(Error::Unsupported("a single generation degree is required".into()));
    }
    ideal
        .gens()
        .iter()
        .map(|g| {
            SqfMonomial::from_monomial(g)
                .ok_or_else(|| Error::Unsupported("square-free generators required".into()))
        })
        .collect()
}

/// All ordered N-tuples of generator indices that are pairwise sorted.
fn sorted_tuples(gens: &[SqfMonomial], n: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &tuples {
            for (i, g) in gens.iter().enumerate() {
                if t.iter().all(|&p| is_sorted_pair(&gens[p], g)) {
                    let mut t2 = t.clone();
                    t2.push(i);
                    next.push(t2);
                    if next.len() > budget.max_tuples {
                        return Err(Error::Budget("sorted-tuple enumeration too large".into()));
                    }
                }
            }
        }
        tuples = next;
    }
    Ok(tuples)
}

fn tuple_product(gens: &[SqfMonomial], tuple: &[usize]) -> Monomial {
    tuple
        .iter()
        .fold(Monomial::one(), |acc, &i| acc.mul(&gens[i].to_monomial()))
}

#[derive(Debug, Clone)]
pub struct ExchangeVerdict {
    pub holds: bool,
    /// (left tuple, right tuple, pivot variable) without a witness, if any
    pub counterexample: Option<(Vec<SqfMonomial>, Vec<SqfMonomial>, Var)>,
}

/// Exhaustive exchange check over pairs of sorted N-tuples, N <= n_max.
/// For every pair whose products first differ at a variable q with the
/// left product smaller there, some factor must admit the swap
/// x_q * u_alpha / x_j into the ideal for a later variable j.
pub fn check_l_exchange(
    ideal: &MonomialIdeal,
    n_max: usize,
    budget: &Budget,
) -> Result<ExchangeVerdict> {
    let gens = squarefree_generators(ideal)?;
    let vars = ideal.support();
    for n in 1..=n_max {
        let tuples = sorted_tuples(&gens, n, budget)?;
        let products: Vec<Monomial> = tuples.iter().map(|t| tuple_product(&gens, t)).collect();
        for (a, pa) in tuples.iter().zip(&products) {
            for pb in &products {
                if pa == pb {
                    continue;
                }
                // q: first variable where the exponents differ
                let q = match vars
                    .iter()
                    .find(|&&v| pa.exponent(v) != pb.exponent(v))
                {
                    Some(&v) => v,
                    None => continue,
                };
                if pa.exponent(q) >= pb.exponent(q) {
                    continue; // roles swapped; covered by the symmetric pair
                }
                let witness = a.iter().any(|&alpha| {
                    let u = &gens[alpha];
                    u.support().iter().any(|&j| {
                        j > q && {
                            let w = u.to_monomial().mul(&Monomial::var(q));
                            let w = w.div_exact(&Monomial::var(j));
                            ideal.contains(&w)
                        }
                    })
                });
                if !witness {
                    let left = a.iter().map(|&i| gens[i].clone()).collect();
                    let right = tuples[products.iter().position(|p| p == pb).unwrap()]
                        .iter()
                        .map(|&i| gens[i].clone())
                        .collect();
                    return Ok(ExchangeVerdict {
                        holds: false,
                        counterexample: Some((left, right, q)),
                    });
                }
            }
        }
    }
    Ok(ExchangeVerdict {
        holds: true,
        counterexample: None,
    })
}

/// For each N <= n_max, the number of distinct N-fold generator products
/// must equal the number of sorted N-tuples.
pub fn fiber_hilbert_check(ideal: &MonomialIdeal, n_max: usize, budget: &Budget) -> Result<bool> {
    let gens = squarefree_generators(ideal)?;
    for n in 1..=n_max {
        let sorted = sorted_tuples(&gens, n, budget)?.len();
        // multiset products via non-decreasing index tuples
        let mut products: HashSet<Monomial> = HashSet::new();
        let mut stack: Vec<(Monomial, usize, usize)> = vec![(Monomial::one(), 0, 0)];
        while let Some((m, start, depth)) = stack.pop() {
            if depth == n {
                products.insert(m);
                if products.len() > budget.max_tuples {
                    return Err(Error::Budget("product enumeration too large".into()));
                }
                continue;
            }
            for i in start..gens.len() {
                stack.push((m.mul(&gens[i].to_monomial()), i, depth + 1));
            }
        }
        if products.len() != sorted {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One quadratic relation of the Rees presentation ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReesBinomial {
    /// t_u t_v - t_{u'} t_{v'} for an unsorted pair (u, v)
    Sorting {
        u: SqfMonomial,
        v: SqfMonomial,
        u_sorted: SqfMonomial,
        v_sorted: SqfMonomial,
    },
    /// x_i t_u - x_j t_v with i < j, x_i u = x_j v, j maximal
    Exchange {
        var_left: Var,
        u: SqfMonomial,
        var_right: Var,
        v: SqfMonomial,
    },
}

impl std::fmt::Display for ReesBinomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReesBinomial::Sorting {
                u,
                v,
                u_sorted,
                v_sorted,
            } => write!(f, "t[{u}]*t[{v}] - t[{u_sorted}]*t[{v_sorted}]"),
            ReesBinomial::Exchange {
                var_left,
                u,
                var_right,
                v,
            } => write!(f, "x{var_left}*t[{u}] - x{var_right}*t[{v}]"),
        }
    }
}

/// The two families of quadratic relations: sorting binomials over
/// unsorted pairs, and variable exchanges with the maximal swap index.
pub fn rees_groebner_binomials(ideal: &MonomialIdeal) -> Result<Vec<ReesBinomial>> {
    let verdict = check_sortable(ideal)?;
    if !verdict.sortable {
        return Err(Error::Unsupported(
            "the Rees relation list applies to sortable generating sets only".into(),
        ));
    }
    let gens = squarefree_generators(ideal)?;
    let mut out = Vec::new();
    for (a, b) in gens.iter().tuple_combinations() {
        let p = sort_pair(a, b)?;
        let same = (p.first == *a && p.second == *b) || (p.first == *b && p.second == *a);
        if !same {
            out.push(ReesBinomial::Sorting {
                u: a.clone(),
                v: b.clone(),
                u_sorted: p.first,
                v_sorted: p.second,
            });
        }
    }
    let support = ideal.support();
    let gen_set: HashSet<&SqfMonomial> = gens.iter().collect();
    for u in &gens {
        for &i in &support {
            if u.support().contains(&i) {
                continue;
            }
            let xi_u = u.to_monomial().mul(&Monomial::var(i));
            let j_max = u
                .support()
                .iter()
                .copied()
                .filter(|&j| {
                    let v = xi_u.div_exact(&Monomial::var(j));
                    SqfMonomial::from_monomial(&v).is_some_and(|s| gen_set.contains(&s))
                })
                .max();
            if let Some(j) = j_max {
                if i < j {
                    let v = SqfMonomial::from_monomial(&xi_u.div_exact(&Monomial::var(j))).unwrap();
                    out.push(ReesBinomial::Exchange {
                        var_left: i,
                        u: u.clone(),
                        var_right: j,
                        v,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The linear relation graph: an edge {i, j} whenever two generators
/// satisfy x_i u = x_j v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationGraph {
    pub vertices: Vec<Var>,
    pub edges: Vec<(Var, Var)>,
    pub component_count: usize,
}

/// The vertex set is the full variable support of the ideal; variables in
/// no relation count as singleton components.
pub fn linear_relation_graph(ideal: &MonomialIdeal) -> RelationGraph {
    let mut edges: BTreeSet<(Var, Var)> = BTreeSet::new();
    for (g1, g2) in ideal.gens().iter().tuple_combinations() {
        let a = g1.div_gcd(g2);
        let b = g2.div_gcd(g1);
        if a.degree() == 1 && b.degree() == 1 {
            let i = a.support().next().unwrap();
            let j = b.support().next().unwrap();
            edges.insert((i.min(j), i.max(j)));
        }
    }
    let vertices: Vec<Var> = ideal.support();
    // union-find over the vertex list
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for &(i, j) in &edges {
        let a = vertices.binary_search(&i).unwrap();
        let b = vertices.binary_search(&j).unwrap();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let roots: BTreeSet<usize> = (0..vertices.len())
        .map(|x| find(&mut parent, x))
        .collect();
    RelationGraph {
        vertices,
        edges: edges.into_iter().collect(),
        component_count: roots.len(),
    }
}

/// Analytic spread from the relation graph (r - s + 1) cross-checked
/// against the instance formula (|V| - d + 1); the two must agree.
pub fn analytic_spread(ideal: &MonomialIdeal, instance: &SpreadInstance) -> Result<usize> {
    if !instance.is_pruned() {
        return Err(Error::Unsupported("analytic spread needs a pruned instance".into()));
    }
    let graph = linear_relation_graph(ideal);
    let from_graph = graph.vertices.len() - graph.component_count + 1;
    let from_instance = instance.partition().vertex_count() - instance.d() + 1;
    if from_graph != from_instance {
        return Err(Error::TheoremViolation(format!(
            "analytic spread mismatch: graph gives {from_graph}, instance gives {from_instance}"
        )));
    }
    Ok(from_graph)
}

/// Limit depth d - 1 and the depth-stabilization bound r - d.
/// Both values are theorem-derived, not measured.
pub fn depth_asymptotics(instance: &SpreadInstance) -> Result<(usize, usize)> {
    if !instance.is_pruned() {
        return Err(Error::Unsupported("depth asymptotics need a pruned instance".into()));
    }
    let r = instance.partition().vertex_count();
    let d = instance.d();
    Ok((d - 1, r - d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{edge_ideal, enumerate_edges, prune_isolated};
    use crate::testutil::instance;

    fn sqf(vs: &[Var]) -> SqfMonomial {
        SqfMonomial::new(vs.to_vec())
    }

    fn example_2_3_ideal() -> (SpreadInstance, MonomialIdeal) {
        let inst = instance(&[&[1, 2, 3], &[5, 7], &[8, 9, 11], &[12, 13]], &[3, 2, 4]);
        let (pruned, _) = prune_isolated(&inst).unwrap();
        let ideal = edge_ideal(&enumerate_edges(&pruned));
        (pruned, ideal)
    }

    fn path_ideal() -> MonomialIdeal {
        MonomialIdeal::new(vec![
            Monomial::squarefree([1, 3]),
            Monomial::squarefree([1, 4]),
            Monomial::squarefree([2, 4]),
        ])
    }

    #[test]
    fn sorting_identical_pair_is_fixed() {
        let u = sqf(&[1, 5, 9]);
        let p = sort_pair(&u, &u).unwrap();
        assert_eq!(p.first, u);
        assert_eq!(p.second, u);
    }

    #[test]
    fn sorting_parity_split() {
        // merged: 1,2,5,5,8,9,12,13 -> odd slots / even slots
        let p = sort_pair(&sqf(&[1, 5, 9, 13]), &sqf(&[2, 5, 8, 12])).unwrap();
        assert_eq!(p.first, sqf(&[1, 5, 8, 12]));
        assert_eq!(p.second, sqf(&[2, 5, 9, 13]));
    }

    #[test]
    fn sorting_idempotent() {
        let p = sort_pair(&sqf(&[1, 5, 9, 13]), &sqf(&[2, 5, 8, 12])).unwrap();
        let q = sort_pair(&p.first, &p.second).unwrap();
        assert_eq!(q.first, p.first);
        assert_eq!(q.second, p.second);
    }

    #[test]
    fn sorting_preserves_product() {
        let u = sqf(&[1, 7, 9, 13]);
        let v = sqf(&[2, 5, 8, 12]);
        let p = sort_pair(&u, &v).unwrap();
        assert_eq!(
            u.to_monomial().mul(&v.to_monomial()),
            p.first.to_monomial().mul(&p.second.to_monomial())
        );
    }

    #[test]
    fn example_ideal_is_sortable() {
        let (_, ideal) = example_2_3_ideal();
        assert!(check_sortable(&ideal).unwrap().sortable);
    }

    #[test]
    fn disjoint_pair_not_sortable() {
        let ideal = MonomialIdeal::new(vec![
            Monomial::squarefree([1, 2]),
            Monomial::squarefree([3, 4]),
        ]);
        let verdict = check_sortable(&ideal).unwrap();
        assert!(!verdict.sortable);
        let ce = verdict.counterexample.unwrap();
        assert_eq!(ce.first, sqf(&[1, 3]));
        assert_eq!(ce.second, sqf(&[2, 4]));
    }

    #[test]
    fn singleton_sortable() {
        let ideal = MonomialIdeal::new(vec![Monomial::squarefree([1, 4])]);
        assert!(check_sortable(&ideal).unwrap().sortable);
    }

    #[test]
    fn exchange_property_on_example() {
        let (_, ideal) = example_2_3_ideal();
        let v = check_l_exchange(&ideal, 2, &Budget::default()).unwrap();
        assert!(v.holds, "counterexample: {:?}", v.counterexample);
    }

    #[test]
    fn exchange_property_on_path_ideal() {
        let v = check_l_exchange(&path_ideal(), 2, &Budget::default()).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn rees_binomials_singleton_empty_sorting_part() {
        let ideal = MonomialIdeal::new(vec![Monomial::squarefree([1, 4])]);
        let bins = rees_groebner_binomials(&ideal).unwrap();
        assert!(bins
            .iter()
            .all(|b| !matches!(b, ReesBinomial::Sorting { .. })));
    }

    #[test]
    fn rees_sorting_binomial_for_unsorted_pair() {
        let (_, ideal) = example_2_3_ideal();
        let bins = rees_groebner_binomials(&ideal).unwrap();
        let expect = ReesBinomial::Sorting {
            u: sqf(&[1, 5, 9, 13]),
            v: sqf(&[2, 5, 8, 12]),
            u_sorted: sqf(&[1, 5, 8, 12]),
            v_sorted: sqf(&[2, 5, 9, 13]),
        };
        let found = bins.iter().any(|b| match (b, &expect) {
            (
                ReesBinomial::Sorting { u, v, u_sorted, v_sorted },
                ReesBinomial::Sorting { u: eu, v: ev, u_sorted: es1, v_sorted: es2 },
            ) => {
                let same_pair = (u == eu && v == ev) || (u == ev && v == eu);
                same_pair && u_sorted == es1 && v_sorted == es2
            }
            _ => false,
        });
        assert!(found);
    }

    #[test]
    fn rees_exchange_binomial_on_path_ideal() {
        let bins = rees_groebner_binomials(&path_ideal()).unwrap();
        let expect = ReesBinomial::Exchange {
            var_left: 1,
            u: sqf(&[2, 4]),
            var_right: 2,
            v: sqf(&[1, 4]),
        };
        assert!(bins.contains(&expect), "got {bins:?}");
    }

    #[test]
    fn rees_exchange_binomials_well_formed() {
        let (_, ideal) = example_2_3_ideal();
        let gens: HashSet<SqfMonomial> = squarefree_generators(&ideal)
            .unwrap()
            .into_iter()
            .collect();
        for b in rees_groebner_binomials(&ideal).unwrap() {
            if let ReesBinomial::Exchange { var_left, u, var_right, v } = b {
                assert!(var_left < var_right);
                assert_eq!(
                    u.to_monomial().mul(&Monomial::var(var_left)),
                    v.to_monomial().mul(&Monomial::var(var_right))
                );
                // j maximal: rescan every larger candidate
                let xi_u = u.to_monomial().mul(&Monomial::var(var_left));
                for &j in u.support() {
                    if j > var_right {
                        let w = xi_u.div_exact(&Monomial::var(j));
                        let in_gens =
                            SqfMonomial::from_monomial(&w).is_some_and(|s| gens.contains(&s));
                        assert!(!in_gens, "larger swap index {j} was available");
                    }
                }
            }
        }
    }

    #[test]
    fn fiber_count_path_ideal() {
        // 6 distinct pairwise products, 6 sorted pairs
        assert!(fiber_hilbert_check(&path_ideal(), 2, &Budget::default()).unwrap());
    }

    #[test]
    fn fiber_count_example() {
        let (_, ideal) = example_2_3_ideal();
        assert!(fiber_hilbert_check(&ideal, 2, &Budget::default()).unwrap());
    }

    #[test]
    fn relation_graph_of_example() {
        let (_, ideal) = example_2_3_ideal();
        let g = linear_relation_graph(&ideal);
        assert_eq!(g.vertices.len(), 9);
        assert_eq!(g.component_count, 4);
    }

    #[test]
    fn relation_graph_principal_is_discrete() {
        let ideal = MonomialIdeal::new(vec![Monomial::squarefree([1, 4])]);
        let g = linear_relation_graph(&ideal);
        assert_eq!(g.vertices, vec![1, 4]);
        assert!(g.edges.is_empty());
        assert_eq!(g.component_count, 2);
    }

    #[test]
    fn relation_graph_path_ideal() {
        let g = linear_relation_graph(&path_ideal());
        assert_eq!(g.edges, vec![(1, 2), (3, 4)]);
        assert_eq!(g.component_count, 2);
    }

    #[test]
    fn analytic_spread_example() {
        let (pruned, ideal) = example_2_3_ideal();
        assert_eq!(analytic_spread(&ideal, &pruned).unwrap(), 6);
    }

    #[test]
    fn analytic_spread_single_part() {
        let inst = instance(&[&[1, 2, 3]], &[]);
        let (pruned, _) = prune_isolated(&inst).unwrap();
        let ideal = edge_ideal(&enumerate_edges(&pruned));
        assert_eq!(analytic_spread(&ideal, &pruned).unwrap(), 3);
    }

    #[test]
    fn depth_asymptotics_example() {
        let (pruned, _) = example_2_3_ideal();
        assert_eq!(depth_asymptotics(&pruned).unwrap(), (3, 5));
    }

    #[test]
    fn depth_asymptotics_small_cm() {
        let inst = instance(&[&[1, 2], &[3, 4]], &[2]);
        let (pruned, _) = prune_isolated(&inst).unwrap();
        assert_eq!(depth_asymptotics(&pruned).unwrap(), (1, 2));
    }
}
