//! Assembly of the full invariant report for one instance, with every
//! field tagged by the route that produced it.

use serde::Serialize;

use crate::duality::{
    dual_closed_form, dual_oracle, height, is_cohen_macaulay, is_unmixed, konig_check,
    v_structure_check, DualForm,
};
use crate::error::{Budget, Error, Result};
use crate::hypergraph::{edge_ideal, enumerate_edges, prune_isolated};
use crate::instance::SpreadInstance;
use crate::monomial::SqfMonomial;
use crate::powers::{power_profile, PowerProfile};
use crate::resolution::{betti_table, set_u_closed_form, set_u_oracle, verify_linear_quotients};
use crate::sorting::{
    analytic_spread, check_l_exchange, check_sortable, depth_asymptotics, linear_relation_graph,
    rees_groebner_binomials, ReesBinomial,
};

/// How a reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ClosedForm,
    Oracle,
    BothAgree,
    TheoremDerived,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub route: Route,
}

fn tag<T>(value: T, route: Route) -> Tagged<T> {
    Tagged { value, route }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceEcho {
    pub parts: Vec<Vec<u32>>,
    pub t: Vec<u32>,
    pub pruned_vertices: Vec<u32>,
    pub interval_form: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiSection {
    pub degree: u32,
    pub beta: Vec<u64>,
    pub q: usize,
    pub pd: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReesSection {
    pub sortable: bool,
    pub l_exchange: Option<bool>,
    pub sorting_binomials: usize,
    pub exchange_binomials: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSection {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualEntry {
    pub monomial: String,
    pub form: DualForm,
}

#[derive(Debug, Clone, Serialize)]
pub struct KonigSection {
    pub matching: usize,
    pub transversal: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerSection {
    pub k_max: usize,
    pub generator_counts: Vec<usize>,
    pub strong_persistence: Vec<bool>,
    pub ass_stable: bool,
    pub ntf_up_to_k_max: bool,
    pub normal_up_to: usize,
    pub normal: bool,
}

/// The machine-readable report; `schema` is bumped on layout changes.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub schema: u32,
    pub instance: InstanceEcho,
    pub generators: Tagged<Vec<String>>,
    pub betti: Tagged<BettiSection>,
    pub rees: Tagged<ReesSection>,
    pub relation_graph: Tagged<GraphSection>,
    pub analytic_spread: Tagged<usize>,
    pub limit_depth: Tagged<usize>,
    pub dstab_bound: Tagged<usize>,
    pub dual_generators: Tagged<Vec<DualEntry>>,
    pub min_primes: Tagged<Vec<String>>,
    pub height: Tagged<usize>,
    pub unmixed: Option<Tagged<bool>>,
    pub cohen_macaulay: Option<Tagged<bool>>,
    pub konig: Tagged<KonigSection>,
    pub v_structure: Option<Tagged<bool>>,
    pub powers: Option<PowerSection>,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub with_powers: bool,
    pub k_max: usize,
    pub normal_k_max: usize,
    /// skip the exchange check when the generator count is above this
    pub exchange_gen_limit: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            with_powers: false,
            k_max: 3,
            normal_k_max: 2,
            exchange_gen_limit: 40,
        }
    }
}

fn prime_strings(oracle: &[SqfMonomial]) -> Vec<String> {
    oracle
        .iter()
        .map(|m| {
            let body = m
                .support()
                .iter()
                .map(|v| format!("x{v}"))
                .collect::<Vec<_>>()
                .join(",");
            format!("({body})")
        })
        .collect()
}

/// Compute every invariant for one instance. Closed forms are cross-
/// checked against their oracles inline; disagreement surfaces as a
/// theorem-violation error.
pub fn run_report(
    raw: &SpreadInstance,
    options: &ReportOptions,
    budget: &Budget,
) -> Result<InvariantReport> {
    let (inst, removed) = prune_isolated(raw)?;
    let h = enumerate_edges(&inst);
    let ideal = edge_ideal(&h);
    if ideal.num_gens() > budget.max_generators {
        return Err(Error::Budget(format!(
            "{} generators exceed the configured budget",
            ideal.num_gens()
        )));
    }

    let echo = InstanceEcho {
        parts: inst
            .partition()
            .parts()
            .iter()
            .map(|p| p.vertices().to_vec())
            .collect(),
        t: inst.spread().entries().to_vec(),
        pruned_vertices: removed,
        interval_form: inst.is_interval_form(),
    };

    let generators: Vec<String> = ideal.gens().iter().map(|g| g.to_string()).collect();

    // Betti data from the closed form, with the per-generator oracle
    // replayed as a cross-check
    let table = betti_table(&ideal)?;
    for u in ideal.gens() {
        let closed = set_u_closed_form(u, &inst)?;
        let oracle = set_u_oracle(&ideal, u)?;
        if closed != oracle {
            return Err(Error::TheoremViolation(format!(
                "set({u}) closed form {closed:?} disagrees with the oracle {oracle:?}"
            )));
        }
    }
    if !verify_linear_quotients(&ideal)?.is_verified() {
        return Err(Error::TheoremViolation(
            "lex-descending order failed to give linear quotients".into(),
        ));
    }
    let betti = BettiSection {
        degree: table.degree,
        beta: table.beta.clone(),
        q: table.q_ideal,
        pd: table.pd,
        depth: table.depth,
    };

    let sortable = check_sortable(&ideal)?;
    if !sortable.sortable {
        return Err(Error::TheoremViolation(
            "the edge generators are not sortable".into(),
        ));
    }
    let l_exchange = if ideal.num_gens() <= options.exchange_gen_limit {
        Some(check_l_exchange(&ideal, 2, budget)?.holds)
    } else {
        None
    };
    let binomials = rees_groebner_binomials(&ideal)?;
    let rees = ReesSection {
        sortable: sortable.sortable,
        l_exchange,
        sorting_binomials: binomials
            .iter()
            .filter(|b| matches!(b, ReesBinomial::Sorting { .. }))
            .count(),
        exchange_binomials: binomials
            .iter()
            .filter(|b| matches!(b, ReesBinomial::Exchange { .. }))
            .count(),
    };

    let graph = linear_relation_graph(&ideal);
    let graph_section = GraphSection {
        vertices: graph.vertices.len(),
        edges: graph.edges.len(),
        components: graph.component_count,
    };
    let spread = analytic_spread(&ideal, &inst)?;
    let (limit_depth, dstab_bound) = depth_asymptotics(&inst)?;

    // dual and primes: closed form when the interval shape allows it,
    // always cross-checked against the transversal oracle
    let (primes, oracle_gens) = dual_oracle(&ideal, budget)?;
    let (dual_entries, dual_route) = if inst.is_interval_form() {
        let closed = dual_closed_form(&inst)?;
        let mut a: Vec<SqfMonomial> = closed.iter().map(|g| g.monomial.clone()).collect();
        let mut b = oracle_gens.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::TheoremViolation(
                "closed-form dual disagrees with the transversal oracle".into(),
            ));
        }
        (
            closed
                .into_iter()
                .map(|g| DualEntry {
                    monomial: g.monomial.to_monomial().to_string(),
                    form: g.form,
                })
                .collect(),
            Route::BothAgree,
        )
    } else {
        (
            oracle_gens
                .iter()
                .map(|m| DualEntry {
                    monomial: m.to_monomial().to_string(),
                    form: DualForm::Transversal,
                })
                .collect::<Vec<_>>(),
            Route::Oracle,
        )
    };
    let ht = height(&ideal, &inst, budget)?;

    let unmixed = if inst.is_interval_form() {
        Some(tag(is_unmixed(&inst, budget)?, Route::BothAgree))
    } else {
        None
    };
    let cohen_macaulay = if inst.is_interval_form() {
        Some(tag(is_cohen_macaulay(&inst, budget)?, Route::BothAgree))
    } else {
        None
    };
    let konig = konig_check(&ideal, &inst, budget)?;
    if !konig.equal {
        return Err(Error::TheoremViolation(format!(
            "matching number {} differs from transversal number {}",
            konig.matching, konig.transversal
        )));
    }
    let v_structure = if inst.is_interval_form() {
        Some(tag(v_structure_check(&inst, budget)?, Route::Oracle))
    } else {
        None
    };

    let powers = if options.with_powers {
        let p: PowerProfile = power_profile(&ideal, options.k_max, options.normal_k_max, budget)?;
        Some(PowerSection {
            k_max: p.k_max,
            generator_counts: p.steps.iter().map(|s| s.num_gens).collect(),
            strong_persistence: p.steps.iter().map(|s| s.strong_persistence).collect(),
            ass_stable: p.steps.iter().all(|s| s.ass == p.steps[0].ass),
            ntf_up_to_k_max: p.ntf,
            normal_up_to: p.normal_k_max,
            normal: p.normal,
        })
    } else {
        None
    };

    Ok(InvariantReport {
        schema: 1,
        instance: echo,
        generators: tag(generators, Route::ClosedForm),
        betti: tag(betti, Route::BothAgree),
        rees: tag(rees, Route::Oracle),
        relation_graph: tag(graph_section, Route::Oracle),
        analytic_spread: tag(spread, Route::BothAgree),
        limit_depth: tag(limit_depth, Route::TheoremDerived),
        dstab_bound: tag(dstab_bound, Route::TheoremDerived),
        dual_generators: tag(dual_entries, dual_route),
        min_primes: tag(
            prime_strings(
                &primes
                    .primes()
                    .iter()
                    .map(|p| SqfMonomial::new(p.vars().to_vec()))
                    .collect::<Vec<_>>(),
            ),
            Route::Oracle,
        ),
        height: tag(ht, Route::BothAgree),
        unmixed,
        cohen_macaulay,
        konig: tag(
            KonigSection {
                matching: konig.matching,
                transversal: konig.transversal,
            },
            Route::BothAgree,
        ),
        v_structure,
        powers,
    })
}
