//! Linear quotients, the prefix-colon variable sets, and the Betti table
//! of the linear strand.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::instance::SpreadInstance;
use crate::monomial::{Monomial, Var};

/// A verified linear-quotients chain in lex-descending generator order.
#[derive(Debug, Clone)]
pub struct QuotientWitness {
    pub ordering: Vec<Monomial>,
    /// for each generator, the variables generating the prefix colon ideal;
    /// empty for the first generator
    pub colon_vars: Vec<Vec<Var>>,
}

#[derive(Debug, Clone)]
pub enum LinearQuotients {
    Witness(QuotientWitness),
    /// first step whose prefix colon has a generator of degree >= 2
    Counterexample { step: usize, colon: MonomialIdeal },
}

impl LinearQuotients {
    pub fn is_verified(&self) -> bool {
        matches!(self, LinearQuotients::Witness(_))
    }
}

/// Check linear quotients under the lex-descending generator order.
/// Only single-degree ideals are supported.
pub fn verify_linear_quotients(ideal: &MonomialIdeal) -> Result<LinearQuotients> {
    if ideal.is_zero() {
        return Err(Error::Unsupported("linear quotients of the zero ideal".into()));
    }
    if ideal.single_degree().is_none() {
        return Err(Error::Unsupported(
            "linear quotients check requires generators in a single degree".into(),
        ));
    }
    let gens = ideal.gens();
    let mut colon_vars = vec![Vec::new()];
    for i in 1..gens.len() {
        let prefix = MonomialIdeal::new(gens[..i].to_vec());
        let colon = prefix.colon_monomial(&gens[i]);
        let mut vars = Vec::new();
        for g in colon.gens() {
            if g.degree() != 1 {
                return Ok(LinearQuotients::Counterexample { step: i, colon });
            }
            vars.push(g.support().next().unwrap());
        }
        vars.sort_unstable();
        colon_vars.push(vars);
    }
    Ok(LinearQuotients::Witness(QuotientWitness {
        ordering: gens.to_vec(),
        colon_vars,
    }))
}

/// Prefix-colon variable set of one generator: the independent oracle for
/// the closed form below. `u` must be a generator of `ideal`.
pub fn set_u_oracle(ideal: &MonomialIdeal, u: &Monomial) -> Result<Vec<Var>> {
    let pos = ideal
        .gens()
        .iter()
        .position(|g| g == u)
        .ok_or_else(|| Error::Unsupported(format!("{u} is not a minimal generator")))?;
    if pos == 0 {
        return Ok(Vec::new());
    }
    let prefix = MonomialIdeal::new(ideal.gens()[..pos].to_vec());
    let colon = prefix.colon_monomial(u);
    let mut vars: Vec<Var> = colon
        .gens()
        .iter()
        .filter(|g| g.degree() == 1)
        .map(|g| g.support().next().unwrap())
        .collect();
    vars.sort_unstable();
    Ok(vars)
}

/// Closed form for the prefix-colon variable set of an edge generator:
/// the union of [min V_1, k_1 - 1] inside V_1 and, for each later part,
/// [k_{j-1} + t_{j-1}, k_j - 1] inside V_j. Requires a pruned instance.
pub fn set_u_closed_form(u: &Monomial, instance: &SpreadInstance) -> Result<Vec<Var>> {
    if !instance.is_pruned() {
        return Err(Error::Unsupported(
            "the closed form applies to pruned instances only".into(),
        ));
    }
    let parts = instance.partition().parts();
    let d = parts.len();
    let support: Vec<Var> = u.support().collect();
    if !u.is_squarefree() || support.len() != d {
        return Err(Error::Unsupported(format!("{u} is not an edge of the instance")));
    }
    for (j, part) in parts.iter().enumerate() {
        if !part.vertices().contains(&support[j]) {
            return Err(Error::Unsupported(format!("{u} is not an edge of the instance")));
        }
        if j > 0 && support[j] - support[j - 1] < instance.spread().gap(j) {
            return Err(Error::Unsupported(format!("{u} is not a t-spread edge")));
        }
    }
    let mut out = Vec::new();
    for (j, part) in parts.iter().enumerate() {
        let (lo, hi) = if j == 0 {
            (parts[0].min(), support[0].saturating_sub(1))
        } else {
            (support[j - 1] + instance.spread().gap(j), support[j] - 1)
        };
        out.extend(part.vertices().iter().copied().filter(|&v| lo <= v && v <= hi));
    }
    out.sort_unstable();
    Ok(out)
}

/// The Betti table of the linear strand, with the derived homological data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    /// common generator degree
    pub degree: u32,
    /// beta[i] = beta_{i, i+degree}
    pub beta: Vec<u64>,
    /// |set(u)| per generator, in lex-descending order
    pub q_of_u: Vec<usize>,
    pub q_ideal: usize,
    /// projective dimension of S/I
    pub pd: usize,
    /// depth of S/I over the ambient ring on supp(I)
    pub depth: usize,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// Betti numbers in the linear strand from the prefix-colon sets:
/// beta_i = sum over generators of C(q(u), i). All other graded Betti
/// numbers vanish because the ideal has linear quotients.
pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    let degree = ideal
        .single_degree()
        .ok_or_else(|| Error::Unsupported("Betti table requires a single-degree ideal".into()))?;
    match verify_linear_quotients(ideal)? {
        LinearQuotients::Counterexample { step, .. } => Err(Error::Unsupported(format!(
            "no linear quotients at step {step}; the Betti formula does not apply"
        ))),
        LinearQuotients::Witness(w) => {
            let q_of_u: Vec<usize> = w.colon_vars.iter().map(Vec::len).collect();
            let q_ideal = q_of_u.iter().copied().max().unwrap_or(0);
            let beta: Vec<u64> = (0..=q_ideal)
                .map(|i| q_of_u.iter().map(|&q| binomial(q, i)).sum())
                .collect();
            let ambient = ideal.support().len();
            Ok(BettiTable {
                degree,
                beta,
                q_of_u,
                q_ideal,
                pd: q_ideal + 1,
                depth: ambient - q_ideal - 1,
            })
        }
    }
}
