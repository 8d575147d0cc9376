//! Primary decomposition over `ℤ`.
//!
//! `I ∩ ℤ = ⟨q⟩` decides the route. For `q = 0` the ideal is decomposed
//! over `ℚ`, the components are contracted back, and the part the
//! contraction misses (`⟨I, h^m⟩`, which meets `ℤ`) is decomposed
//! recursively. For `q ≠ 0` every prime power `p^ν ‖ q` is an independent
//! task: for `ν = 1` the decomposition over `𝔽ₚ` lifts directly, otherwise
//! the minimal primes modulo `p` are lifted and their primary components
//! extracted from `⟨I, p^ν⟩`. Whatever the components found so far do not
//! cover is handled by a remainder ideal `I + ⟨F^{(m)}⟩` and another round.

mod extract;
mod redundancy;
mod verify;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

pub use extract::{extract_z, lift_component, lift_ideal, reduce_ideal, separators_z, ExtractTrace};
pub use redundancy::{dimension_z, merge_same_prime, remainder_split, remove_redundant};
pub use verify::{verify, Check, VerifyReport, RADICAL_WITNESS_BOUND};

use crate::fielddec::{min_ass_field, primdec_field};
use crate::ideals::{contract_from_rationals, contract_z, intersect, intersect_all, max_independent_set, saturation, Ideal, ZIdeal};
use crate::numth::{factorize, BigRat};
use crate::poly::{clear_denominators, to_rational, MonomialOrdering, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Contracted from a decomposition over `ℚ`.
    Rational,
    /// Found by the task for the prime power `p^ν ‖ I ∩ ℤ`.
    Prime { p: BigInt, nu: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub branch: Branch,
    /// Index of the task within its round.
    pub worker: usize,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub q: ZIdeal,
    pub p: ZIdeal,
    pub provenance: Provenance,
}

impl Component {
    pub fn new(q: ZIdeal, p: ZIdeal, provenance: Provenance) -> Self {
        Component { q, p, provenance }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Stats {
    /// Wall-clock time per task, labelled `Q` or `p=…`.
    pub branch_times: Vec<(String, Duration)>,
    /// `m` of every remainder round.
    pub remainder_exponents: Vec<u32>,
    /// `m` of every `I = (I : h^m) ∩ ⟨I, h^m⟩` split in the rational branch.
    pub rational_exponents: Vec<u32>,
    pub extractions: Vec<ExtractTrace>,
    pub rounds: usize,
}

impl Stats {
    fn absorb(&mut self, o: Stats) {
        self.branch_times.extend(o.branch_times);
        self.remainder_exponents.extend(o.remainder_exponents);
        self.rational_exponents.extend(o.rational_exponents);
        self.extractions.extend(o.extractions);
        self.rounds += o.rounds;
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub input: ZIdeal,
    pub components: Vec<Component>,
    /// Set when [`verify`] ran and passed.
    pub verified: bool,
    pub stats: Stats,
}

impl Decomposition {
    /// A decomposition given by hand, e.g. to run [`verify`] on it.
    pub fn from_pairs(input: ZIdeal, pairs: Vec<(ZIdeal, ZIdeal)>) -> Self {
        let provenance = Provenance { branch: Branch::Rational, worker: 0, seed: 0 };
        let components = pairs.into_iter().map(|(q, p)| Component::new(q, p, provenance.clone())).collect();
        Decomposition { input, components, verified: false, stats: Stats::default() }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Worker threads for the per-prime tasks.
    pub jobs: usize,
    pub seed: u64,
    pub max_depth: usize,
    /// Run [`verify`] on the result and record the outcome.
    pub verify: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { jobs: 1, seed: 0, max_depth: 32, verify: false }
    }
}

struct Env<'a> {
    pool: &'a rayon::ThreadPool,
    opts: &'a Options,
}

/// Irredundant primary decomposition of `I ⊆ ℤ[x]`.
pub fn primdec(i: &ZIdeal, opts: &Options) -> Result<Decomposition> {
    primdec_z(i, &Ideal::unit((), i.nvars()), opts)
}

/// Components `Qᵢ` with `T ∩ ⋂ Qᵢ = T ∩ I`, none of them redundant for
/// that equation. With `T = ⟨1⟩` this is a primary decomposition of `I`.
///
/// The result is sorted canonically and does not depend on `opts.jobs`.
pub fn primdec_z(i: &ZIdeal, t: &ZIdeal, opts: &Options) -> Result<Decomposition> {
    if i.is_unit() {
        return Err(Error::UnitIdeal("primary decomposition of the unit ideal".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let env = Env { pool: &pool, opts };
    let (components, stats) = decompose_with(&i.canonical(), t, 0, &env)?;
    let mut d = Decomposition { input: i.clone(), components, verified: false, stats };
    if opts.verify {
        d.verified = verify(&d).passed();
    }
    Ok(d)
}

fn depth_error(i: &ZIdeal, limit: usize) -> Error {
    Error::RecursionLimit { limit, ideal: format!("{}", i.display(&[])) }
}

/// Rounds of first-level components plus remainder ideals until the
/// components, together with `t`, cut out `i ∩ t`.
fn decompose_with(i: &ZIdeal, t: &ZIdeal, depth: usize, env: &Env) -> Result<(Vec<Component>, Stats)> {
    let limit = env.opts.max_depth;
    let target = if t.is_unit() { i.clone() } else { intersect(i, t).canonical() };
    let mut covered = t.clone();
    let mut comps = Vec::new();
    let mut stats = Stats::default();
    let mut work = i.clone();
    for round in 0.. {
        if depth + round > limit {
            return Err(depth_error(i, limit));
        }
        stats.rounds += 1;
        let (found, meet, st) = first_level(&work, depth + round, env)?;
        stats.absorb(st);
        covered = intersect(&covered, &meet);
        comps.extend(found);
        if covered.equals(&target) {
            break;
        }
        let (m, rem) = remainder_split(&target, &covered)?;
        stats.remainder_exponents.push(m);
        work = rem;
    }
    let comps = remove_redundant(merge_same_prime(comps), t)?;
    Ok((comps, stats))
}

/// Components of one round with their intersection.
fn first_level(work: &ZIdeal, depth: usize, env: &Env) -> Result<(Vec<Component>, ZIdeal, Stats)> {
    let q = contract_z(work);
    if q.is_zero() {
        let (comps, stats) = rational_branch(work, depth, env)?;
        let meet = meet_of(&comps, work.nvars());
        return Ok((comps, meet, stats));
    }
    let tasks = factorize(&q)?.factors;
    let seed = env.opts.seed;
    let results: Vec<Result<(Vec<Component>, ZIdeal, Stats)>> = env.pool.install(|| {
        tasks
            .par_iter()
            .enumerate()
            .map(|(k, (p, nu))| prime_task(work, p, *nu, k, task_seed(seed, p)))
            .collect()
    });
    let mut comps = Vec::new();
    let mut meets = Vec::new();
    let mut stats = Stats::default();
    for r in results {
        let (c, m, s) = r?;
        comps.extend(c);
        meets.push(m);
        stats.absorb(s);
    }
    // the meets of different primes contain coprime integers
    let meet = intersect_all(&meets).unwrap_or_else(|| Ideal::unit((), work.nvars()));
    Ok((comps, meet, stats))
}

fn meet_of(comps: &[Component], nvars: usize) -> ZIdeal {
    intersect_all(comps.iter().map(|c| &c.q)).unwrap_or_else(|| Ideal::unit((), nvars))
}

fn task_seed(seed: u64, p: &BigInt) -> u64 {
    let low = p.iter_u64_digits().next().unwrap_or(0);
    seed ^ low.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn prime_task(work: &ZIdeal, p: &BigInt, nu: u32, worker: usize, seed: u64) -> Result<(Vec<Component>, ZIdeal, Stats)> {
    let start = Instant::now();
    let pw = extract::word_prime(p)?;
    let provenance = Provenance { branch: Branch::Prime { p: p.clone(), nu }, worker, seed };
    let mut stats = Stats::default();
    let mut comps = Vec::new();
    let meet;
    if nu == 1 {
        // the lifted components cut out the preimage of I mod p
        let power = Polynomial::constant(p.clone(), work.nvars(), MonomialOrdering::Dp);
        meet = work.with_gens([power]).canonical();
        let modp = reduce_ideal(work, pw);
        if !modp.is_unit() {
            for c in primdec_field(&modp, seed)? {
                let (q, pr) = lift_component(&c.q, &c.p);
                comps.push(Component::new(q, pr, provenance.clone()));
            }
        }
    } else {
        let power = Polynomial::constant(p.pow(nu), work.nvars(), MonomialOrdering::Dp);
        let local = work.with_gens([power]).canonical();
        let modp = reduce_ideal(&local, pw);
        let minimal = min_ass_field(&modp, seed)?;
        let lifted: Vec<ZIdeal> = minimal.iter().map(lift_ideal).collect();
        for (pbar, pr) in minimal.iter().zip(&lifted) {
            let u = max_independent_set(pbar)?;
            let (q, trace) = extract_z(&local, &lifted, pr, u)?;
            stats.extractions.push(trace);
            comps.push(Component::new(q, pr.clone(), provenance.clone()));
        }
        meet = meet_of(&comps, work.nvars());
    }
    stats.branch_times.push((format!("p={p}"), start.elapsed()));
    Ok((comps, meet, stats))
}

/// `Ī ∩ ℤ[x]` for an ideal over `ℚ`: with `G` a basis with integer
/// coefficients and `h` the lcm of its leading coefficients, this is
/// `⟨G⟩ : h^∞`.
fn contract_rational(i: &Ideal<BigRat>) -> Result<ZIdeal> {
    let n = i.nvars();
    let gens = i.gb().elements().iter().map(clear_denominators).collect::<Result<Vec<_>>>()?;
    let h = gens.iter().fold(BigInt::one(), |acc, g| crate::numth::lcm(&acc, g.lc()));
    let z = Ideal::new((), n, gens);
    Ok(saturation(&z, &Polynomial::constant(h, n, MonomialOrdering::Dp))?.canonical())
}

fn rational_branch(work: &ZIdeal, depth: usize, env: &Env) -> Result<(Vec<Component>, Stats)> {
    let start = Instant::now();
    let seed = env.opts.seed;
    let n = work.nvars();
    let contraction = contract_from_rationals(work)?;
    let over_q = Ideal::<BigRat>::new(Default::default(), n, work.gb().elements().iter().map(to_rational));
    let provenance = Provenance { branch: Branch::Rational, worker: 0, seed };
    let mut comps = Vec::new();
    for c in primdec_field(&over_q, seed)? {
        comps.push(Component::new(contract_rational(&c.q)?, contract_rational(&c.p)?, provenance.clone()));
    }
    let mut stats = Stats::default();
    stats.rational_exponents.push(contraction.m);
    stats.branch_times.push(("Q".into(), start.elapsed()));
    if contraction.m > 0 {
        let hm = Polynomial::constant(contraction.h.pow(contraction.m), n, MonomialOrdering::Dp);
        let rest = work.with_gens([hm]).canonical();
        let (more, st) = decompose_with(&rest, &Ideal::unit((), n), depth + 1, env)?;
        comps.extend(more);
        stats.absorb(st);
    }
    Ok((comps, stats))
}
