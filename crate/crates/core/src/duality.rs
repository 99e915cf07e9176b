//! Alexander dual generators (closed form and transversal oracle),
//! minimal primes, height, and the unmixed / Cohen-Macaulay / Konig
//! classifications.

use std::collections::HashSet;

use serde::Serialize;

use crate::decomp::{MonomialPrime, PrimeSet};
use crate::error::{Budget, Error, Result};
use crate::hypergraph::{enumerate_edges, maximum_matching};
use crate::ideal::MonomialIdeal;
use crate::instance::SpreadInstance;
use crate::monomial::{SqfMonomial, Var};
use crate::resolution::betti_table;

/// Provenance of one dual generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DualForm {
    /// the full variable block of one part (1-based part index)
    PartBlock { part: usize },
    /// produced by the transversal oracle; no closed-form provenance
    Transversal,
    /// a window spanning parts j..=p with its defining sequences
    Window {
        j: usize,
        p: usize,
        q: Vec<u32>,
        q_prime: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGenerator {
    pub monomial: SqfMonomial,
    pub form: DualForm,
}

/// Minimal transversals of the generator supports, by exhaustive
/// branch-and-bound: each transversal corresponds to one dual generator
/// and one minimal prime.
pub fn dual_oracle(ideal: &MonomialIdeal, budget: &Budget) -> Result<(PrimeSet, Vec<SqfMonomial>)> {
    if !ideal.is_squarefree() || ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Unsupported(
            "the dual oracle needs a proper nonzero square-free ideal".into(),
        ));
    }
    let edges: Vec<Vec<Var>> = ideal
        .gens()
        .iter()
        .map(|g| g.support().collect())
        .collect();
    // incremental antichain construction: extend the minimal covers of a
    // prefix of the edge list one edge at a time
    let mut covers: Vec<Vec<Var>> = vec![Vec::new()];
    for edge in &edges {
        let mut next: HashSet<Vec<Var>> = HashSet::new();
        for c in &covers {
            if edge.iter().any(|v| c.contains(v)) {
                next.insert(c.clone());
            } else {
                for &v in edge {
                    let mut c2 = c.clone();
                    c2.push(v);
                    c2.sort_unstable();
                    next.insert(c2);
                }
            }
            if next.len() > budget.max_tuples {
                return Err(Error::Budget("transversal enumeration too large".into()));
            }
        }
        let all: Vec<Vec<Var>> = next.into_iter().collect();
        covers = all
            .iter()
            .filter(|c| {
                !all.iter()
                    .any(|d| *d != **c && d.iter().all(|v| c.contains(v)))
            })
            .cloned()
            .collect();
    }
    let minimal = covers;
    let primes = PrimeSet::new(minimal.iter().map(|c| MonomialPrime::new(c.clone())).collect());
    let gens = primes
        .primes()
        .iter()
        .map(|p| SqfMonomial::new(p.vars().to_vec()))
        .collect();
    Ok((primes, gens))
}

fn interval_data(instance: &SpreadInstance) -> Result<Vec<(Var, u32)>> {
    if !instance.is_pruned() {
        return Err(Error::Unsupported("prune the instance first".into()));
    }
    instance
        .partition()
        .parts()
        .iter()
        .map(|p| {
            p.interval_form().ok_or_else(|| {
                Error::Unsupported("the closed-form dual needs interval-form parts".into())
            })
        })
        .collect()
}

/// Closed-form dual generators for interval-form instances: one part
/// block per part, plus every admissible window. The q' entries are
/// uniquely determined from the q entries; out-of-range windows are
/// skipped, and the final list is minimalized.
pub fn dual_closed_form(instance: &SpreadInstance) -> Result<Vec<DualGenerator>> {
    dual_closed_form_impl(instance, false)
}

/// Test-only mutant with an off-by-one in the spread offset of the
/// derived block sizes, used to prove the differential suite catches a
/// wrong window construction.
#[cfg(test)]
pub(crate) fn dual_closed_form_mutant(instance: &SpreadInstance) -> Result<Vec<DualGenerator>> {
    dual_closed_form_impl(instance, true)
}

fn dual_closed_form_impl(instance: &SpreadInstance, mutant: bool) -> Result<Vec<DualGenerator>> {
    let iv = interval_data(instance)?;
    let d = iv.len();
    let t = instance.spread();
    let mut out: Vec<DualGenerator> = Vec::new();

    for (idx, part) in instance.partition().parts().iter().enumerate() {
        out.push(DualGenerator {
            monomial: SqfMonomial::new(part.vertices().to_vec()),
            form: DualForm::PartBlock { part: idx + 1 },
        });
    }

    // windows over parts j..=p (1-based), driven by the free sequence
    // q_j, ..., q_{p-1}
    for j in 1..=d {
        for p in (j + 1)..=d {
            let mut q: Vec<u32> = Vec::new();
            emit_windows(&iv, t.entries(), j, p, &mut q, &mut out, mutant);
        }
    }

    // minimalize while keeping provenance of the survivors
    let ideal = MonomialIdeal::new(out.iter().map(|g| g.monomial.to_monomial()).collect());
    let mut kept: Vec<DualGenerator> = Vec::new();
    for g in out {
        let m = g.monomial.to_monomial();
        if ideal.gens().contains(&m) && !kept.iter().any(|k| k.monomial == g.monomial) {
            kept.push(g);
        }
    }
    Ok(kept)
}

fn emit_windows(
    iv: &[(Var, u32)],
    t: &[u32],
    j: usize,
    p: usize,
    q: &mut Vec<u32>,
    out: &mut Vec<DualGenerator>,
    mutant: bool,
) {
    let ell = j + q.len(); // 1-based part whose q is being chosen next
    if ell == p {
        // all of q_j..q_{p-1} fixed; derive q' and check admissibility
        if let Some((monomial, q_prime)) = build_window(iv, t, j, p, q, mutant) {
            out.push(DualGenerator {
                monomial,
                form: DualForm::Window {
                    j,
                    p,
                    q: q.clone(),
                    q_prime,
                },
            });
        }
        return;
    }
    let n_ell = iv[ell - 1].1;
    // the removed top block must stay a proper subset of the part
    for q_ell in 0..n_ell.saturating_sub(1) {
        q.push(q_ell);
        emit_windows(iv, t, j, p, q, out, mutant);
        q.pop();
    }
}

/// Build the window monomial for fixed (j, p, q_j..q_{p-1}), returning
/// None when a determined q' falls out of range or a condition fails.
fn build_window(
    iv: &[(Var, u32)],
    t: &[u32],
    j: usize,
    p: usize,
    q: &[u32],
    mutant: bool,
) -> Option<(SqfMonomial, Vec<u32>)> {
    let start = |l: usize| iv[l - 1].0; // i_l
    let size = |l: usize| iv[l - 1].1; // n_l
    let offset = if mutant { 0 } else { 1 };
    let mut q_prime: Vec<u32> = Vec::new(); // q'_{j+1} .. q'_p
    for l in (j + 1)..=p {
        // i_l + q'_l - (i_{l-1} + n_{l-1} - 1 - q_{l-1}) = t_{l-1} - 1
        let prev_top = start(l - 1) as i64 + size(l - 1) as i64 - 1 - q[l - 1 - j] as i64;
        let q_l = t[l - 2] as i64 - offset + prev_top - start(l) as i64;
        if q_l < 0 || q_l > size(l) as i64 - 2 {
            return None; // block would leave the part or fail to be proper
        }
        q_prime.push(q_l as u32);
    }
    // interior parts: the two removed blocks must be disjoint with the
    // low block strictly below the high block
    for l in (j + 1)..=(p - 1) {
        let qp = q_prime[l - j - 1];
        if qp as i64 >= size(l) as i64 - 1 - q[l - j] as i64 {
            return None;
        }
    }
    let mut support: Vec<Var> = Vec::new();
    for l in j..=p {
        let lo = start(l);
        let hi = start(l) + size(l) - 1;
        let cut_high = if l < p {
            Some(hi - q[l - j]) // B_q: top q_l + 1 vertices removed
        } else {
            None
        };
        let cut_low = if l > j {
            Some(lo + q_prime[l - j - 1]) // B_q': bottom q'_l + 1 removed
        } else {
            None
        };
        for v in lo..=hi {
            let in_high = cut_high.is_some_and(|c| v >= c);
            let in_low = cut_low.is_some_and(|c| v <= c);
            if !in_high && !in_low {
                support.push(v);
            }
        }
    }
    Some((SqfMonomial::new(support), q_prime))
}

/// Height as the minimum dual-generator support size; for interval
/// instances it must equal the minimum part size.
pub fn height(
    ideal: &MonomialIdeal,
    instance: &SpreadInstance,
    budget: &Budget,
) -> Result<usize> {
    let (primes, _) = dual_oracle(ideal, budget)?;
    let ht = primes.min_height().expect("proper ideal has a minimal prime");
    if instance.is_interval_form() {
        let min_n = instance
            .partition()
            .parts()
            .iter()
            .map(|p| p.len())
            .min()
            .unwrap();
        if ht != min_n {
            return Err(Error::TheoremViolation(format!(
                "height {ht} differs from the minimum part size {min_n}"
            )));
        }
    }
    Ok(ht)
}

/// Window degrees must satisfy deg u = i_p - i_j + n_p - sum of the
/// spanned spread entries.
pub fn degree_formula_check(g: &DualGenerator, instance: &SpreadInstance) -> Result<bool> {
    let iv = interval_data(instance)?;
    match &g.form {
        DualForm::Transversal => Err(Error::Unsupported(
            "oracle-produced generators carry no degree formula".into(),
        )),
        DualForm::PartBlock { part } => Ok(g.monomial.degree() == iv[part - 1].1 as usize),
        DualForm::Window { j, p, .. } => {
            let t_sum: i64 = (*j..*p)
                .map(|l| instance.spread().entries()[l - 1] as i64)
                .sum();
            let expect = iv[p - 1].0 as i64 - iv[j - 1].0 as i64 + iv[p - 1].1 as i64 - t_sum;
            Ok(g.monomial.degree() as i64 == expect)
        }
    }
}

/// Unmixedness, via the arithmetic criterion and via equality of all
/// dual-generator degrees; the two routes must agree.
pub fn is_unmixed(instance: &SpreadInstance, budget: &Budget) -> Result<bool> {
    let iv = interval_data(instance)?;
    let t = instance.spread().entries();
    let sizes: Vec<u32> = iv.iter().map(|&(_, n)| n).collect();
    let s = sizes[0];
    let arithmetic = sizes.iter().all(|&n| n == s)
        && (0..iv.len().saturating_sub(1)).all(|j| {
            let gap_ok = iv[j + 1].0 as i64 - (iv[j].0 as i64 + s as i64 - 1) > t[j] as i64 - 1;
            let tight = iv[j + 1].0 - iv[j].0 == t[j];
            gap_ok || tight
        });
    let ideal = crate::hypergraph::edge_ideal(&enumerate_edges(instance));
    let (_, dual_gens) = dual_oracle(&ideal, budget)?;
    let degrees: HashSet<usize> = dual_gens.iter().map(SqfMonomial::degree).collect();
    let by_degrees = degrees.len() == 1;
    if arithmetic != by_degrees {
        return Err(Error::TheoremViolation(format!(
            "unmixedness criteria disagree: arithmetic {arithmetic}, dual degrees {by_degrees}"
        )));
    }
    Ok(arithmetic)
}

/// Cohen-Macaulayness, via the arithmetic criterion and via the
/// operational identity ht(I) = q(I) + 1; the two routes must agree.
pub fn is_cohen_macaulay(instance: &SpreadInstance, budget: &Budget) -> Result<bool> {
    let iv = interval_data(instance)?;
    let t = instance.spread().entries();
    let ideal = crate::hypergraph::edge_ideal(&enumerate_edges(instance));
    let s = iv[0].1;
    let arithmetic = ideal.num_gens() == 1
        || (iv.iter().all(|&(_, n)| n == s)
            && (0..iv.len().saturating_sub(1)).all(|j| iv[j + 1].0 - iv[j].0 == t[j]));
    let table = betti_table(&ideal)?;
    let ht = height(&ideal, instance, budget)?;
    let operational = ht == table.q_ideal + 1;
    if arithmetic != operational {
        return Err(Error::TheoremViolation(format!(
            "Cohen-Macaulay criteria disagree: arithmetic {arithmetic}, ht = q + 1 {operational}"
        )));
    }
    Ok(arithmetic)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KonigVerdict {
    pub matching: usize,
    pub transversal: usize,
    pub equal: bool,
}

/// Maximum matching against minimum transversal size.
pub fn konig_check(
    ideal: &MonomialIdeal,
    instance: &SpreadInstance,
    budget: &Budget,
) -> Result<KonigVerdict> {
    let h = enumerate_edges(instance);
    let (nu, _) = maximum_matching(&h, budget)?;
    let (primes, _) = dual_oracle(ideal, budget)?;
    let tau = primes.min_height().unwrap();
    Ok(KonigVerdict {
        matching: nu,
        transversal: tau,
        equal: nu == tau,
    })
}

/// The product of the part starts must meet every minimal prime in
/// exactly one variable.
pub fn v_structure_check(instance: &SpreadInstance, budget: &Budget) -> Result<bool> {
    let iv = interval_data(instance)?;
    let starts: Vec<Var> = iv.iter().map(|&(i, _)| i).collect();
    let ideal = crate::hypergraph::edge_ideal(&enumerate_edges(instance));
    let (primes, _) = dual_oracle(&ideal, budget)?;
    Ok(primes.primes().iter().all(|p| {
        starts.iter().filter(|&&v| p.contains_var(v)).count() == 1
    }))
}
