//! Irreducible decomposition and associated primes of monomial ideals.
//!
//! The decomposition sweeps the exponent box bounded by the maximal
//! generator exponents: after artinianization, the corners (monomials
//! outside the ideal all of whose variable bumps land inside) are in
//! bijection with the irreducible components. A recursive generator-
//! splitting oracle cross-checks this in the test suite.

use std::collections::BTreeMap;

use crate::error::{Budget, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, Var};

/// An irreducible monomial ideal: pure variable powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrreducibleComponent {
    /// variable -> exponent of the pure power generator
    pub powers: BTreeMap<Var, u32>,
}

impl IrreducibleComponent {
    pub fn to_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.powers
                .iter()
                .map(|(&v, &e)| Monomial::from_pairs([(v, e)]))
                .collect(),
        )
    }

    pub fn radical(&self) -> MonomialPrime {
        MonomialPrime::new(self.powers.keys().copied().collect())
    }

    /// Ideal containment: every pure power of `other` lies in `self`.
    pub fn contains(&self, other: &IrreducibleComponent) -> bool {
        other
            .powers
            .iter()
            .all(|(v, e)| self.powers.get(v).is_some_and(|se| se <= e))
    }
}

/// A monomial prime ideal, generated by a nonempty set of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPrime {
    vars: Vec<Var>,
}

impl MonomialPrime {
    pub fn new(mut vars: Vec<Var>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        assert!(!vars.is_empty(), "a monomial prime needs at least one variable");
        MonomialPrime { vars }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn contains(&self, other: &MonomialPrime) -> bool {
        other.vars.iter().all(|v| self.contains_var(*v))
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.vars.iter().map(|&v| Monomial::var(v)).collect())
    }
}

impl std::fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{v}")?;
        }
        write!(f, ")")
    }
}

/// A deduplicated, sorted collection of monomial primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeSet {
    primes: Vec<MonomialPrime>,
}

impl PrimeSet {
    pub fn new(mut primes: Vec<MonomialPrime>) -> Self {
        primes.sort();
        primes.dedup();
        PrimeSet { primes }
    }

    pub fn primes(&self) -> &[MonomialPrime] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: &MonomialPrime) -> bool {
        self.primes.binary_search(p).is_ok()
    }

    pub fn is_subset_of(&self, other: &PrimeSet) -> bool {
        self.primes.iter().all(|p| other.contains(p))
    }

    /// true iff no prime contains another.
    pub fn is_antichain(&self) -> bool {
        for (i, p) in self.primes.iter().enumerate() {
            for (j, q) in self.primes.iter().enumerate() {
                if i != j && p.contains(q) {
                    return false;
                }
            }
        }
        true
    }

    pub fn min_height(&self) -> Option<usize> {
        self.primes.iter().map(MonomialPrime::height).min()
    }
}

/// Dense exponent-box scan used by the decomposition and by the
/// normality sweep in `powers`.
pub(crate) struct ExponentBox {
    pub vars: Vec<Var>,
    /// exponent upper bound per variable (inclusive)
    pub bounds: Vec<u32>,
    /// mixed-radix strides
    strides: Vec<usize>,
    pub cells: usize,
}

impl ExponentBox {
    pub fn new(vars: Vec<Var>, bounds: Vec<u32>, budget: &Budget) -> Result<Self> {
        let mut cells: usize = 1;
        for &b in &bounds {
            cells = cells
                .checked_mul(b as usize + 1)
                .filter(|&c| c <= budget.max_box_cells)
                .ok_or_else(|| {
                    Error::Budget(format!(
                        "exponent box exceeds {} cells",
                        budget.max_box_cells
                    ))
                })?;
        }
        let mut strides = vec![0usize; bounds.len()];
        let mut s = 1usize;
        for (i, &b) in bounds.iter().enumerate() {
            strides[i] = s;
            s *= b as usize + 1;
        }
        Ok(ExponentBox {
            vars,
            bounds,
            strides,
            cells,
        })
    }

    pub fn index(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.strides)
            .map(|(&e, &s)| e as usize * s)
            .sum()
    }

    /// Index of the cell with coordinate `i` incremented by one.
    pub fn index_bump(&self, idx: usize, i: usize) -> usize {
        idx + self.strides[i]
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u32> {
        let mut exps = vec![0u32; self.bounds.len()];
        for (i, &b) in self.bounds.iter().enumerate() {
            let base = b as usize + 1;
            exps[i] = (idx % base) as u32;
            idx /= base;
        }
        exps
    }

    /// Membership table: cell -> "dominates some generator".
    pub fn membership(&self, ideal: &MonomialIdeal) -> Vec<bool> {
        let mut member = vec![false; self.cells];
        for g in ideal.gens() {
            let exps: Vec<u32> = self.vars.iter().map(|&v| g.exponent(v)).collect();
            member[self.index(&exps)] = true;
        }
        // ascending index order: every coordinate decrement has a smaller index
        for idx in 0..self.cells {
            if member[idx] {
                continue;
            }
            let exps = self.decode(idx);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 && member[idx - self.strides[i]] {
                    member[idx] = true;
                    break;
                }
            }
        }
        member
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        Monomial::from_pairs(
            self.vars
                .iter()
                .zip(exps)
                .map(|(&v, &e)| (v, e)),
        )
    }
}

/// Irredundant irreducible decomposition of a proper nonzero monomial ideal.
pub fn irreducible_decomposition(
    ideal: &MonomialIdeal,
    budget: &Budget,
) -> Result<Vec<IrreducibleComponent>> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Unsupported(
            "irreducible decomposition needs a proper nonzero ideal".into(),
        ));
    }
    let vars = ideal.support();
    let bounds: Vec<u32> = vars
        .iter()
        .map(|&v| ideal.gens().iter().map(|g| g.exponent(v)).max().unwrap_or(0))
        .collect();
    let bx = ExponentBox::new(vars, bounds, budget)?;
    let member = bx.membership(ideal);

    let mut components = Vec::new();
    for idx in 0..bx.cells {
        if member[idx] {
            continue;
        }
        let exps = bx.decode(idx);
        let corner = exps.iter().enumerate().all(|(i, &e)| {
            // bumping past the artinian bound counts as inside
            e >= bx.bounds[i] || member[idx + bx.strides[i]]
        });
        if !corner {
            continue;
        }
        let powers: BTreeMap<Var, u32> = exps
            .iter()
            .enumerate()
            .filter(|&(i, &e)| e < bx.bounds[i])
            .map(|(i, &e)| (bx.vars[i], e + 1))
            .collect();
        debug_assert!(!powers.is_empty(), "proper ideal cannot have an empty component");
        components.push(IrreducibleComponent { powers });
    }

    // pairwise containment pruning; corners should already be irredundant
    let mut kept: Vec<IrreducibleComponent> = Vec::new();
    for c in components {
        if kept.iter().any(|k| c.contains(k)) {
            continue;
        }
        kept.retain(|k| !k.contains(&c));
        kept.push(c);
    }
    Ok(kept)
}

/// Ass(S/I): deduplicated radicals of the irreducible components.
pub fn associated_primes(ideal: &MonomialIdeal, budget: &Budget) -> Result<PrimeSet> {
    let comps = irreducible_decomposition(ideal, budget)?;
    Ok(PrimeSet::new(
        comps.iter().map(IrreducibleComponent::radical).collect(),
    ))
}
