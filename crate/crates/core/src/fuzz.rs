//! Seeded random interval instances and the closed-form-vs-oracle
//! differential suite, with greedy shrinking of counterexamples.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::duality::{dual_closed_form, dual_oracle, is_cohen_macaulay, is_unmixed, konig_check};
use crate::error::{Budget, Error, Result};
use crate::hypergraph::{edge_ideal, enumerate_edges, prune_isolated};
use crate::instance::{Part, PartitionFamily, SpreadInstance, SpreadVector};
use crate::monomial::SqfMonomial;
use crate::powers::{ass_of_power, normality_shadow, strong_persistence_check};
use crate::resolution::{betti_table, set_u_closed_form, set_u_oracle, verify_linear_quotients};
use crate::sorting::{analytic_spread, check_sortable, linear_relation_graph};

/// Size limits for random instance generation.
#[derive(Debug, Clone, Copy)]
pub struct FuzzBounds {
    pub max_d: usize,
    pub max_part: u32,
    pub max_t: u32,
    pub max_gap: u32,
    pub max_vertices: usize,
}

impl Default for FuzzBounds {
    fn default() -> Self {
        FuzzBounds {
            max_d: 4,
            max_part: 4,
            max_t: 4,
            max_gap: 3,
            max_vertices: 12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub instance: SpreadInstance,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct FuzzOutcome {
    pub seed: u64,
    pub instances_run: usize,
    pub skipped_degenerate: usize,
    pub counterexample: Option<Counterexample>,
}

/// Draw one random interval instance within the bounds.
pub fn random_instance(rng: &mut impl Rng, bounds: &FuzzBounds) -> SpreadInstance {
    let d = rng.gen_range(1..=bounds.max_d);
    let mut parts = Vec::with_capacity(d);
    let mut t = Vec::with_capacity(d.saturating_sub(1));
    let mut next = 1u32;
    let mut remaining = bounds.max_vertices;
    for j in 0..d {
        if j > 0 {
            next += rng.gen_range(0..=bounds.max_gap);
            t.push(rng.gen_range(1..=bounds.max_t));
        }
        let cap = (bounds.max_part as usize).min(remaining.max(1)) as u32;
        let n = rng.gen_range(1..=cap);
        parts.push(Part::interval(next, next + n - 1).expect("valid interval"));
        remaining = remaining.saturating_sub(n as usize);
        next += n;
    }
    SpreadInstance::new(
        PartitionFamily::new(parts).expect("ordered parts"),
        SpreadVector::new(t).expect("positive spread"),
    )
    .expect("matching lengths")
}

/// Every closed-form-vs-oracle differential on one pruned instance.
/// Returns the failing check name and detail, or None when all pass.
pub fn run_differentials(raw: &SpreadInstance, budget: &Budget) -> Result<Option<(String, String)>> {
    let (inst, _removed) = match prune_isolated(raw) {
        Ok(x) => x,
        Err(Error::Degenerate(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let h = enumerate_edges(&inst);
    let ideal = edge_ideal(&h);
    let fail = |check: &str, detail: String| Ok(Some((check.to_string(), detail)));

    for u in ideal.gens() {
        let oracle = set_u_oracle(&ideal, u)?;
        let closed = set_u_closed_form(u, &inst)?;
        if oracle != closed {
            return fail("set_u", format!("{u}: closed {closed:?} vs oracle {oracle:?}"));
        }
    }
    if !verify_linear_quotients(&ideal)?.is_verified() {
        return fail("linear_quotients", "no witness in lex-descending order".into());
    }
    if !check_sortable(&ideal)?.sortable {
        return fail("sortable", "sorting operator left the generator set".into());
    }

    let graph = linear_relation_graph(&ideal);
    if graph.component_count != inst.d() {
        return fail(
            "relation_graph",
            format!("{} components, expected {}", graph.component_count, inst.d()),
        );
    }
    if graph.vertices.len() != inst.partition().vertex_count() {
        return fail(
            "relation_graph",
            format!(
                "{} graph vertices, expected {}",
                graph.vertices.len(),
                inst.partition().vertex_count()
            ),
        );
    }
    // analytic_spread internally cross-checks the graph count against
    // r - d + 1 and reports disagreement as a theorem violation
    if let Err(Error::TheoremViolation(msg)) = analytic_spread(&ideal, &inst) {
        return fail("analytic_spread", msg);
    }

    if inst.is_interval_form() {
        let mut closed: Vec<SqfMonomial> = dual_closed_form(&inst)?
            .into_iter()
            .map(|g| g.monomial)
            .collect();
        closed.sort();
        let (_, mut oracle) = dual_oracle(&ideal, budget)?;
        oracle.sort();
        if closed != oracle {
            return fail(
                "dual",
                format!("closed form {} gens, oracle {} gens", closed.len(), oracle.len()),
            );
        }
        match is_unmixed(&inst, budget) {
            Err(Error::TheoremViolation(msg)) => return fail("unmixed", msg),
            other => {
                other?;
            }
        }
        match is_cohen_macaulay(&inst, budget) {
            Err(Error::TheoremViolation(msg)) => return fail("cohen_macaulay", msg),
            other => {
                other?;
            }
        }
    }
    let konig = konig_check(&ideal, &inst, budget)?;
    if !konig.equal {
        return fail(
            "konig",
            format!("matching {} != transversal {}", konig.matching, konig.transversal),
        );
    }
    // bookkeeping identity: pd + depth = number of supporting variables
    let table = betti_table(&ideal)?;
    if table.pd + table.depth != ideal.support().len() {
        return fail("betti", "pd + depth mismatch".into());
    }
    Ok(None)
}

/// Differentials for the power shadows: strong persistence and a stable
/// Ass chain up to `k_max`, bounded normality up to `normal_k_max`.
pub fn run_power_differentials(
    raw: &SpreadInstance,
    k_max: usize,
    normal_k_max: usize,
    budget: &Budget,
) -> Result<Option<(String, String)>> {
    let (inst, _) = match prune_isolated(raw) {
        Ok(x) => x,
        Err(Error::Degenerate(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let ideal = edge_ideal(&enumerate_edges(&inst));
    let persistence = strong_persistence_check(&ideal, k_max, budget)?;
    if let Some(k) = persistence.iter().position(|&ok| !ok) {
        return Ok(Some((
            "strong_persistence".into(),
            format!("(I^{} : I) != I^{}", k + 2, k + 1),
        )));
    }
    let min = ass_of_power(&ideal, 1, budget)?;
    for k in 2..=k_max {
        if ass_of_power(&ideal, k, budget)? != min {
            return Ok(Some((
                "ass_stability".into(),
                format!("Ass(I^{k}) differs from Min(I)"),
            )));
        }
    }
    if !normality_shadow(&ideal, normal_k_max, budget)? {
        return Ok(Some((
            "normality".into(),
            format!("integral non-member found at k <= {normal_k_max}"),
        )));
    }
    Ok(None)
}

type Differential = dyn Fn(&SpreadInstance, &Budget) -> Result<Option<(String, String)>>;

/// Run `count` seeded instances through a differential, shrinking the
/// first counterexample. Deterministic for a given seed.
pub fn run_fuzz_with(
    seed: u64,
    count: usize,
    bounds: &FuzzBounds,
    budget: &Budget,
    differential: &Differential,
) -> Result<FuzzOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut skipped = 0usize;
    for _ in 0..count {
        let inst = random_instance(&mut rng, bounds);
        if prune_isolated(&inst).is_err() {
            skipped += 1;
            continue;
        }
        if let Some((check, detail)) = differential(&inst, budget)? {
            let shrunk = shrink(&inst, &check, budget, differential)?;
            return Ok(FuzzOutcome {
                seed,
                instances_run: count,
                skipped_degenerate: skipped,
                counterexample: Some(Counterexample {
                    instance: shrunk,
                    check,
                    detail,
                }),
            });
        }
    }
    Ok(FuzzOutcome {
        seed,
        instances_run: count,
        skipped_degenerate: skipped,
        counterexample: None,
    })
}

/// The standard structural differential suite.
pub fn run_fuzz(seed: u64, count: usize, bounds: &FuzzBounds, budget: &Budget) -> Result<FuzzOutcome> {
    run_fuzz_with(seed, count, bounds, budget, &run_differentials)
}

/// Greedy shrink: drop trailing vertices of a part or lower a spread
/// entry while the same check keeps failing.
fn shrink(
    inst: &SpreadInstance,
    check: &str,
    budget: &Budget,
    differential: &Differential,
) -> Result<SpreadInstance> {
    let still_fails = |cand: &SpreadInstance| -> Result<bool> {
        match differential(cand, budget) {
            Ok(Some((c, _))) => Ok(c == check),
            Ok(None) => Ok(false),
            Err(_) => Ok(false),
        }
    };
    let mut current = inst.clone();
    loop {
        let mut improved = false;
        for cand in shrink_candidates(&current) {
            if still_fails(&cand)? {
                current = cand;
                improved = true;
                break;
            }
        }
        if !improved {
            return Ok(current);
        }
    }
}

fn shrink_candidates(inst: &SpreadInstance) -> Vec<SpreadInstance> {
    let mut out = Vec::new();
    let parts = inst.partition().parts();
    let t = inst.spread().entries();
    // remove the last vertex of one part
    for i in 0..parts.len() {
        if parts[i].len() > 1 {
            let new_parts: Vec<Part> = parts
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    let mut vs = p.vertices().to_vec();
                    if j == i {
                        vs.pop();
                    }
                    Part::new(vs).unwrap()
                })
                .collect();
            if let (Ok(f), Ok(s)) = (
                PartitionFamily::new(new_parts),
                SpreadVector::new(t.to_vec()),
            ) {
                if let Ok(cand) = SpreadInstance::new(f, s) {
                    out.push(cand);
                }
            }
        }
    }
    // lower one spread entry
    for i in 0..t.len() {
        if t[i] > 1 {
            let mut nt = t.to_vec();
            nt[i] -= 1;
            if let Ok(s) = SpreadVector::new(nt) {
                if let Ok(cand) = SpreadInstance::new(inst.partition().clone(), s) {
                    out.push(cand);
                }
            }
        }
    }
    // drop the last part entirely
    if parts.len() > 1 {
        let f = PartitionFamily::new(parts[..parts.len() - 1].to_vec()).unwrap();
        let s = SpreadVector::new(t[..t.len() - 1].to_vec()).unwrap();
        out.push(SpreadInstance::new(f, s).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dual_closed_form_mutant;

    #[test]
    fn generation_is_deterministic_and_bounded() {
        let bounds = FuzzBounds::default();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = random_instance(&mut a, &bounds);
            let y = random_instance(&mut b, &bounds);
            assert_eq!(x, y);
            assert!(x.d() <= bounds.max_d);
            assert!(x.partition().vertex_count() <= bounds.max_vertices + bounds.max_part as usize);
            assert!(x.is_interval_form());
        }
    }

    #[test]
    fn empty_run_reports_nothing() {
        let out = run_fuzz(42, 0, &FuzzBounds::default(), &Budget::default()).unwrap();
        assert_eq!(out.instances_run, 0);
        assert!(out.counterexample.is_none());
    }

    #[test]
    fn hundred_instances_seed_42_pass() {
        let out = run_fuzz(42, 100, &FuzzBounds::default(), &Budget::default()).unwrap();
        assert!(
            out.counterexample.is_none(),
            "unexpected counterexample: {:?}",
            out.counterexample
        );
    }

    #[test]
    fn mutated_dual_is_caught() {
        // the differential suite must detect a dual construction with an
        // off-by-one in the derived block sizes
        let mutant = |raw: &SpreadInstance, budget: &Budget| -> Result<Option<(String, String)>> {
            let (inst, _) = match prune_isolated(raw) {
                Ok(x) => x,
                Err(Error::Degenerate(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            if !inst.is_interval_form() {
                return Ok(None);
            }
            let ideal = edge_ideal(&enumerate_edges(&inst));
            let mut closed: Vec<SqfMonomial> = dual_closed_form_mutant(&inst)?
                .into_iter()
                .map(|g| g.monomial)
                .collect();
            closed.sort();
            let (_, mut oracle) = dual_oracle(&ideal, budget)?;
            oracle.sort();
            if closed != oracle {
                return Ok(Some(("dual_mutant".into(), "mismatch".into())));
            }
            Ok(None)
        };
        let out =
            run_fuzz_with(1, 400, &FuzzBounds::default(), &Budget::default(), &mutant).unwrap();
        assert!(
            out.counterexample.is_some(),
            "the mutant survived 400 instances"
        );
    }

    #[test]
    fn power_differentials_pass_on_small_instances() {
        let bounds = FuzzBounds {
            max_vertices: 8,
            ..FuzzBounds::default()
        };
        let diff = |i: &SpreadInstance, b: &Budget| run_power_differentials(i, 3, 2, b);
        let out = run_fuzz_with(11, 10, &bounds, &Budget::default(), &diff).unwrap();
        assert!(out.counterexample.is_none(), "{:?}", out.counterexample);
    }

    #[test]
    fn shrinker_reaches_a_small_instance() {
        // a differential that fails whenever there are >= 2 parts gives
        // the shrinker room to cut parts and vertices
        let diff = |raw: &SpreadInstance, _: &Budget| -> Result<Option<(String, String)>> {
            Ok((raw.d() >= 2).then(|| ("demo".into(), "d >= 2".into())))
        };
        let out =
            run_fuzz_with(3, 50, &FuzzBounds::default(), &Budget::default(), &diff).unwrap();
        let ce = out.counterexample.expect("the demo check fails eventually");
        assert_eq!(ce.instance.d(), 2);
        assert_eq!(ce.instance.partition().vertex_count(), 2);
    }
}
