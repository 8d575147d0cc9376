use num_traits::Zero;

use super::Decomposition;
use crate::ideals::{contract_z, intersect_all, Ideal};
use crate::numth::is_prime;

/// Highest power of a prime generator tried when looking for a radical
/// witness in the primary ideal.
pub const RADICAL_WITNESS_BOUND: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`verify`]: every check that was run, plus claims that are
/// taken on trust rather than re-derived.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

/// Checks a decomposition against its input: recomposition, `Q ⊆ P`,
/// radical witnesses, the integer contraction of each prime, distinct
/// primes and irredundancy.
pub fn verify(d: &Decomposition) -> VerifyReport {
    let mut r = VerifyReport::default();
    let input = &d.input;
    let n = input.nvars();
    let meet = intersect_all(d.components.iter().map(|c| &c.q)).unwrap_or_else(|| Ideal::unit((), n));
    r.push("recomposition", meet.equals(input), "intersection of the primary ideals equals the input");

    for (k, c) in d.components.iter().enumerate() {
        r.push(format!("containment[{k}]"), c.p.contains_ideal(&c.q), "Q ⊆ P");
        let missing: Vec<String> = c
            .p
            .gb()
            .elements()
            .iter()
            .filter(|g| !(1..=RADICAL_WITNESS_BOUND).any(|e| c.q.contains(&g.pow(e))))
            .map(|g| g.to_string())
            .collect();
        let detail = if missing.is_empty() {
            format!("every generator of P has a power ≤ {RADICAL_WITNESS_BOUND} in Q")
        } else {
            format!("no power ≤ {RADICAL_WITNESS_BOUND} in Q for {}", missing.join(", "))
        };
        r.push(format!("radical[{k}]"), missing.is_empty(), detail);
        let c0 = contract_z(&c.p);
        r.push(format!("contraction[{k}]"), c0.is_zero() || is_prime(&c0), format!("P ∩ ℤ = ⟨{c0}⟩"));
    }

    let distinct = d
        .components
        .iter()
        .enumerate()
        .all(|(a, c)| d.components[a + 1..].iter().all(|o| !o.p.equals(&c.p)));
    r.push("distinct-primes", distinct, "no two components share a prime");

    if d.components.len() > 1 {
        for k in 0..d.components.len() {
            let others = d.components.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, c)| &c.q);
            let rest = intersect_all(others).expect("nonempty");
            r.push(format!("irredundant[{k}]"), !rest.equals(input), "dropping this component enlarges the intersection");
        }
    }
    r.notes.push(
        "primality of each P and primarity of each Q are certified by the decomposition method \
         (irreducible minimal polynomials in general position, contraction from ℚ), not re-checked"
            .into(),
    );
    r
}
