//! Finite shadows of the asymptotic statements about powers: strong
//! persistence, associated primes of powers, the normally-torsion-free
//! check, the scaling comparison, and bounded normality.

use crate::decomp::{associated_primes, ExponentBox, PrimeSet};
use crate::error::{Budget, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, Var};
use crate::ratlp::convex_dominates;

/// Everything measured about the powers I, I^2, ..., I^{k_max}.
#[derive(Debug, Clone)]
pub struct PowerProfile {
    pub k_max: usize,
    pub steps: Vec<PowerStep>,
    /// Ass(I^k) = Min(I) for every measured k
    pub ntf: bool,
    pub persistence_all: bool,
    /// bounded normality verdict, measured up to `normal_k_max`
    pub normal: bool,
    pub normal_k_max: usize,
}

#[derive(Debug, Clone)]
pub struct PowerStep {
    pub k: usize,
    pub num_gens: usize,
    pub ass: PrimeSet,
    /// (I^{k+1} : I) = I^k
    pub strong_persistence: bool,
}

/// (I^{k+1} : I) = I^k for each k <= k_max.
///
/// Square-free ideals take a box sweep: the colon always contains I^k,
/// and both sides are up-sets whose minimal generators have exponents at
/// most k+1, so equality fails exactly when some maximal non-member of
/// I^k in the box [0, k+1]^supp multiplies every generator of I into
/// I^{k+1}. Other ideals fall back to the canonical colon computation.
pub fn strong_persistence_check(
    ideal: &MonomialIdeal,
    k_max: usize,
    budget: &Budget,
) -> Result<Vec<bool>> {
    if k_max < 1 {
        return Err(Error::Unsupported("k_max must be at least 1".into()));
    }
    if ideal.is_zero() {
        return Err(Error::Unsupported(
            "strong persistence needs a nonzero ideal".into(),
        ));
    }
    if !ideal.is_squarefree() {
        return strong_persistence_by_colon(ideal, k_max, budget);
    }
    let vars = ideal.support();
    let mut out = Vec::with_capacity(k_max);
    let mut power_k = ideal.clone();
    for k in 1..=k_max {
        let power_next = power_k.product(ideal);
        out.push(persistence_step_sweep(
            ideal,
            &power_k,
            &power_next,
            &vars,
            k,
            budget,
        )?);
        power_k = power_next;
    }
    Ok(out)
}

/// One k of the sweep: true iff no box-maximal non-member of I^k lies in
/// (I^{k+1} : I).
fn persistence_step_sweep(
    ideal: &MonomialIdeal,
    power_k: &MonomialIdeal,
    power_next: &MonomialIdeal,
    vars: &[Var],
    k: usize,
    budget: &Budget,
) -> Result<bool> {
    let cap = k as u32 + 1;
    let bounds = vec![cap; vars.len()];
    let bx = ExponentBox::new(vars.to_vec(), bounds, budget)?;
    // membership in I^{k+1} only depends on exponents capped at k+1, the
    // largest exponent among its generators, so one table answers both
    let member_k = bx.membership(power_k);
    let member_next = bx.membership(power_next);
    let mut scratch = vec![0u32; vars.len()];
    for idx in 0..bx.cells {
        if member_k[idx] {
            continue;
        }
        let exps = bx.decode(idx);
        let maximal = exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e >= cap || member_k[bx.index_bump(idx, i)]);
        if !maximal {
            continue;
        }
        let in_colon = ideal.gens().iter().all(|g| {
            for (s, (&v, &e)) in scratch.iter_mut().zip(vars.iter().zip(&exps)) {
                *s = (e + g.exponent(v)).min(cap);
            }
            member_next[bx.index(&scratch)]
        });
        if in_colon {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The definitional route: compute (I^{k+1} : I) as an intersection of
/// monomial colons and compare canonical forms. Exponential blow-up on
/// larger instances; kept for non-square-free input and as the oracle the
/// sweep is tested against.
fn strong_persistence_by_colon(
    ideal: &MonomialIdeal,
    k_max: usize,
    budget: &Budget,
) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(k_max);
    let mut power_k = ideal.clone();
    for _ in 1..=k_max {
        let power_next = power_k.product(ideal);
        out.push(power_next.colon_ideal(ideal) == power_k);
        power_k = power_next;
    }
    let _ = budget;
    Ok(out)
}

/// The minimal elements of a set of primes.
fn minimal_primes_of(ass: &PrimeSet) -> PrimeSet {
    PrimeSet::new(
        ass.primes()
            .iter()
            .filter(|p| !ass.primes().iter().any(|q| q != *p && p.contains(q)))
            .cloned()
            .collect(),
    )
}

/// Ass(S/I^k) via the irreducible decomposition of I^k.
pub fn ass_of_power(ideal: &MonomialIdeal, k: usize, budget: &Budget) -> Result<PrimeSet> {
    let p = ideal.power(k, budget)?;
    associated_primes(&p, budget)
}

/// Ass(I^k) = Min(I) for every 1 <= k <= k_max. A true verdict is only
/// ever "verified up to k_max", never a proof.
pub fn ntf_shadow(ideal: &MonomialIdeal, k_max: usize, budget: &Budget) -> Result<bool> {
    let ass1 = associated_primes(ideal, budget)?;
    let min = minimal_primes_of(&ass1);
    if ass1 != min {
        // an embedded prime at k = 1 already defeats NTF
        return Ok(false);
    }
    for k in 2..=k_max {
        if ass_of_power(ideal, k, budget)? != min {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The scaling comparison: the bounded NTF verdicts of I and h*I agree.
pub fn scaling_check(
    ideal: &MonomialIdeal,
    h: &Monomial,
    k_max: usize,
    budget: &Budget,
) -> Result<bool> {
    let scaled = ideal.scale(h);
    Ok(ntf_shadow(ideal, k_max, budget)? == ntf_shadow(&scaled, k_max, budget)?)
}

fn dominates_hull(m: &Monomial, points: &[Vec<i64>], vars: &[Var]) -> bool {
    // m must be supported inside `vars` to stand a chance
    if m.support().any(|v| !vars.contains(&v)) {
        return false;
    }
    let target: Vec<i64> = vars.iter().map(|&v| m.exponent(v) as i64).collect();
    convex_dominates(points, &target)
}

fn exponent_rows(ideal: &MonomialIdeal, vars: &[Var]) -> Vec<Vec<i64>> {
    ideal
        .gens()
        .iter()
        .map(|g| vars.iter().map(|&v| g.exponent(v) as i64).collect())
        .collect()
}

/// Membership of `m` in the integral closure of I^k: the exponent vector
/// of `m` dominates a rational convex combination of the exponent vectors
/// of G(I^k), decided by exact rational feasibility.
pub fn integral_closure_membership(
    m: &Monomial,
    ideal: &MonomialIdeal,
    k: usize,
    budget: &Budget,
) -> Result<bool> {
    let p = ideal.power(k, budget)?;
    let mut vars = p.support();
    for v in m.support() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort_unstable();
    Ok(dominates_hull(m, &exponent_rows(&p, &vars), &vars))
}

/// Bounded normality of a square-free ideal: for each k <= k_max, every
/// monomial with exponents in [0,k]^n that is integral over I^k already
/// lies in I^k. Only the maximal non-members of the box need the LP test:
/// the integral monomials form an up-set and the non-members a down-set,
/// so an integral non-member always sits below an integral maximal
/// non-member.
pub fn normality_shadow(ideal: &MonomialIdeal, k_max: usize, budget: &Budget) -> Result<bool> {
    if !ideal.is_squarefree() {
        return Err(Error::Unsupported(
            "the bounded normality check expects a square-free ideal".into(),
        ));
    }
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Unsupported(
            "bounded normality needs a proper nonzero ideal".into(),
        ));
    }
    let vars = ideal.support();
    for k in 1..=k_max {
        let p = ideal.power(k, budget)?;
        let rows = exponent_rows(&p, &vars);
        let bounds = vec![k as u32; vars.len()];
        let bx = ExponentBox::new(vars.clone(), bounds, budget)?;
        let member = bx.membership(&p);
        for idx in 0..bx.cells {
            if member[idx] {
                continue;
            }
            let exps = bx.decode(idx);
            let maximal = exps
                .iter()
                .enumerate()
                .all(|(i, &e)| e >= k as u32 || member[bx.index_bump(idx, i)]);
            if !maximal {
                continue;
            }
            let m = bx.monomial(&exps);
            if dominates_hull(&m, &rows, &vars) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Build the full per-power profile, asserting the cross-cutting
/// consequences: strong persistence forces a weakly increasing Ass chain,
/// and an NTF verdict forces the chain to be constant.
pub fn power_profile(
    ideal: &MonomialIdeal,
    k_max: usize,
    normal_k_max: usize,
    budget: &Budget,
) -> Result<PowerProfile> {
    let persistence = strong_persistence_check(ideal, k_max, budget)?;
    let mut steps = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let p = ideal.power(k, budget)?;
        steps.push(PowerStep {
            k,
            num_gens: p.num_gens(),
            ass: associated_primes(&p, budget)?,
            strong_persistence: persistence[k - 1],
        });
    }
    for k in 0..k_max - 1 {
        if steps[k].strong_persistence && !steps[k].ass.is_subset_of(&steps[k + 1].ass) {
            return Err(Error::TheoremViolation(format!(
                "strong persistence holds at k = {} but Ass shrinks",
                k + 1
            )));
        }
    }
    let min = minimal_primes_of(&associated_primes(ideal, budget)?);
    let ntf = steps.iter().all(|s| s.ass == min);
    if ntf && steps.iter().any(|s| s.ass != steps[0].ass) {
        return Err(Error::TheoremViolation(
            "NTF verdict with a non-constant Ass chain".into(),
        ));
    }
    let normal = normality_shadow(ideal, normal_k_max, budget)?;
    Ok(PowerProfile {
        k_max,
        steps,
        ntf,
        persistence_all: persistence.iter().all(|&b| b),
        normal,
        normal_k_max,
    })
}
