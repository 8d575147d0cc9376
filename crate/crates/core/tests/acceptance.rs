//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints its own pass/fail line; exits non-zero if any
//! criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zprimdec::fielddec::{factor_univariate_fp, factor_univariate_q};
use zprimdec::gb::{check_certificate, lt_divides, recorder, GBasis};
use zprimdec::ideals::{contract_z, intersect_all, quotient, saturation, stabilization_exponent, Ideal};
use zprimdec::numth::{factorize, BigRat, FpElem};
use zprimdec::poly::{parse_polynomial, Monomial, MonomialOrdering, Polynomial, VarMask, ZPoly};
use zprimdec::zdec::{extract_z, primdec, verify, Branch, Decomposition, Options};

type ZIdeal = Ideal<BigInt>;

const DP: MonomialOrdering = MonomialOrdering::Dp;

struct Outcome {
    passed: bool,
    /// failed, but the host cannot exhibit what is measured
    unattainable: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { passed: true, unattainable: false, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, unattainable: false, detail: detail.into() }
}

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|v| v.to_string()).collect()
}

fn zi(srcs: &[&str], vars: &[&str]) -> ZIdeal {
    let n = names(vars);
    let gens = srcs.iter().map(|s| {
        parse_polynomial(s, &n, DP).unwrap().map_coeffs((), |c: &BigRat| c.to_integer())
    });
    Ideal::new((), vars.len(), gens)
}

fn random_zpoly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32, max_coeff: i64, max_terms: usize) -> ZPoly {
    loop {
        let terms = (0..rng.gen_range(1..=max_terms)).map(|_| {
            let mut exps = vec![0u32; nvars];
            let deg = rng.gen_range(0..=max_deg);
            for _ in 0..deg {
                exps[rng.gen_range(0..nvars)] += 1;
            }
            (BigInt::from(rng.gen_range(-max_coeff..=max_coeff)), Monomial::from_exponents(&exps))
        });
        let f = Polynomial::from_terms((), nvars, DP, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Up to three generators of degree ≤ 3, coefficients in [-20, 20]; a
/// constant generator, when drawn, lies in [2, 10⁴].
fn random_ideal(rng: &mut ChaCha8Rng) -> ZIdeal {
    let nvars = rng.gen_range(1..=3);
    let ngens = rng.gen_range(1..=3);
    let gens = (0..ngens).map(|_| {
        if rng.gen_ratio(1, 4) {
            Polynomial::from_int(rng.gen_range(2..=10_000), (), nvars, DP)
        } else {
            random_zpoly(rng, nvars, 3, 20, 4)
        }
    });
    Ideal::new((), nvars, gens.collect::<Vec<_>>())
}

fn sorted_pairs(d: &Decomposition) -> Vec<(ZIdeal, ZIdeal)> {
    let mut v: Vec<_> = d.components.iter().map(|c| (c.q.clone(), c.p.clone())).collect();
    v.sort_by(|a, b| a.1.cmp_canonical(&b.1).then_with(|| a.0.cmp_canonical(&b.0)));
    v
}

fn criterion_1() -> Outcome {
    let v = ["x", "y"];
    let start = Instant::now();
    let i = zi(&["9", "3*x", "3*y"], &v);
    let p = zi(&["3"], &v);
    let u = VarMask::from_indices([0, 1]);
    let (q, trace) = match extract_z(&i, std::slice::from_ref(&p), &p, u) {
        Ok(r) => r,
        Err(e) => return fail(format!("extract_z failed: {e}")),
    };
    let elapsed = start.elapsed();
    let h = zi(&["x*y"], &v).gens()[0].clone();
    let ok = q.equals(&p) && q.gens().len() == 1 && trace.separator.is_one() && trace.multiplier == h;
    let detail = format!(
        "extract(<9,3x,3y>) = {}, s = {}, h = {}, {:?}",
        q.display(&names(&v)),
        trace.separator.display(&names(&v)),
        trace.multiplier.display(&names(&v)),
        elapsed
    );
    if ok && elapsed < Duration::from_secs(1) {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_2() -> Outcome {
    let v = ["x", "y"];
    let start = Instant::now();
    let i = zi(&["9", "3*x", "3*y"], &v);
    let d = match primdec(&i, &Options::default()) {
        Ok(d) => d,
        Err(e) => return fail(format!("primdec failed: {e}")),
    };
    let report = verify(&d);
    let elapsed = start.elapsed();
    let meet = intersect_all(d.components.iter().map(|c| &c.q)).unwrap();
    let three = zi(&["3"], &v);
    let maximal = zi(&["3", "x", "y"], &v);
    let has_minimal = d.components.iter().any(|c| c.p.equals(&three) && c.q.equals(&three));
    let has_embedded = d.components.iter().any(|c| c.p.equals(&maximal) && maximal.contains_ideal(&c.q));
    let ok = meet.equals(&i) && report.passed() && has_minimal && has_embedded && d.components.len() == 2;
    let detail = format!("{} components, verify {}, {:?}", d.components.len(), report.passed(), elapsed);
    if ok && elapsed < Duration::from_secs(5) {
        pass(detail)
    } else {
        fail(detail)
    }
}

type Golden = (&'static [&'static str], &'static [&'static str], &'static [(&'static [&'static str], &'static [&'static str])]);

const GOLDEN: &[Golden] = &[
    (&["6"], &["x"], &[(&["2"], &["2"]), (&["3"], &["3"])]),
    (&["12"], &["x"], &[(&["4"], &["2"]), (&["3"], &["3"])]),
    (&["4", "2*x"], &["x"], &[(&["2"], &["2"]), (&["4", "2*x", "x^2"], &["2", "x"])]),
    (&["x^2 - 1"], &["x"], &[(&["x - 1"], &["x - 1"]), (&["x + 1"], &["x + 1"])]),
    (&["x^2 + 1", "3"], &["x"], &[(&["x^2 + 1", "3"], &["x^2 + 1", "3"])]),
    (&["x^2 - 1", "4"], &["x"], &[(&["4", "x^2 + 3"], &["2", "x + 1"])]),
    (&["2*x"], &["x"], &[(&["x"], &["x"]), (&["2"], &["2"])]),
    (&["x^2 - 2"], &["x"], &[(&["x^2 - 2"], &["x^2 - 2"])]),
    (&["9", "3*x", "3*y"], &["x", "y"], &[(&["3"], &["3"]), (&["9", "3*y", "3*x", "y^2", "x^2"], &["3", "y", "x"])]),
    (&["2*x", "3*y"], &["x", "y"], &[(&["x", "y"], &["x", "y"]), (&["2", "y"], &["2", "y"]), (&["3", "x"], &["3", "x"])]),
    (&["x^2", "x*y", "2*x"], &["x", "y"], &[(&["x"], &["x"]), (&["2", "y", "x^2"], &["2", "y", "x"])]),
    (&["x*y"], &["x", "y"], &[(&["x"], &["x"]), (&["y"], &["y"])]),
    (&["x^2*y"], &["x", "y"], &[(&["x^2"], &["x"]), (&["y"], &["y"])]),
];

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for (input, vars, expect) in GOLDEN {
        let i = zi(input, vars);
        let mut want: Vec<(ZIdeal, ZIdeal)> = expect.iter().map(|(q, p)| (zi(q, vars), zi(p, vars))).collect();
        want.sort_by(|a, b| a.1.cmp_canonical(&b.1).then_with(|| a.0.cmp_canonical(&b.0)));
        // the expected answer itself must recompose to the input
        let meet = intersect_all(want.iter().map(|c| &c.0)).unwrap();
        if !meet.equals(&i) {
            bad.push(format!("{input:?}: expected components do not recompose"));
            continue;
        }
        match primdec(&i, &Options::default()) {
            Ok(d) if sorted_pairs(&d) == want => {}
            Ok(_) => bad.push(format!("{input:?}: mismatch")),
            Err(e) => bad.push(format!("{input:?}: {e}")),
        }
    }
    if bad.is_empty() {
        pass(format!("{} golden ideals match exactly", GOLDEN.len()))
    } else {
        fail(bad.join("; "))
    }
}

const RANDOM_IDEALS: usize = 200;

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let start = Instant::now();
    let (mut done, mut units, mut bad) = (0, 0, Vec::new());
    while done < RANDOM_IDEALS {
        let i = random_ideal(&mut rng);
        if i.is_unit() {
            units += 1;
            continue;
        }
        done += 1;
        let vars: Vec<String> = (1..=i.nvars()).map(|k| format!("x{k}")).collect();
        match primdec(&i, &Options::default()) {
            Ok(d) => {
                let r = verify(&d);
                if !r.passed() {
                    let f: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
                    bad.push(format!("{}: {f:?}", i.display(&vars)));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", i.display(&vars))),
        }
    }
    let detail = format!("{done} ideals ({units} unit ideals redrawn), {} failures, {:?}", bad.len(), start.elapsed());
    if bad.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}: {}", bad.join("; ")))
    }
}

fn random_member(rng: &mut ChaCha8Rng, g: &GBasis<BigInt>) -> ZPoly {
    let n = g.nvars();
    let mut f = Polynomial::zero((), n, g.ordering());
    for e in g.elements() {
        if rng.gen_bool(0.6) {
            let m = random_zpoly(rng, n, 2, 5, 3).with_ordering(g.ordering());
            f = f.add(&m.mul(e));
        }
    }
    f
}

fn criterion_5(bases: &[GBasis<BigInt>]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    let mut members = 0;
    for g in bases {
        if check_certificate(g).is_err() {
            failures += 1;
            continue;
        }
        for _ in 0..100 {
            let f = random_member(&mut rng, g);
            members += 1;
            if !g.normal_form(&f).is_zero() {
                failures += 1;
            } else if !f.is_zero() && !g.elements().iter().any(|e| lt_divides(e, &f)) {
                failures += 1;
            }
        }
    }
    let detail = format!("{} bases, {members} random members, {failures} failures", bases.len());
    if failures == 0 && !bases.is_empty() {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = 0;
    for _ in 0..100 {
        let nvars = rng.gen_range(1..=2);
        let gens: Vec<ZPoly> = (0..rng.gen_range(1..=3)).map(|_| random_zpoly(&mut rng, nvars, 2, 6, 3)).collect();
        let i = Ideal::new((), nvars, gens);
        let h = random_zpoly(&mut rng, nvars, 2, 4, 2);
        let sat = saturation(&i, &h).unwrap();
        // iterated quotients I : h, (I : h) : h, ... until they stop growing
        let mut cur = i.clone();
        loop {
            let next = quotient(&cur, &h).unwrap();
            if next.equals(&cur) {
                break;
            }
            cur = next;
        }
        let m = stabilization_exponent(&i, &h, &sat);
        let qm = quotient(&i, &h.pow(m)).unwrap();
        let qm1 = quotient(&i, &h.pow(m + 1)).unwrap();
        if !(cur.equals(&sat) && qm.equals(&sat) && qm1.equals(&sat)) {
            bad += 1;
        }
    }
    if bad == 0 {
        pass("100 random (I, h): tag-variable saturation equals the quotient fixpoint at the reported m")
    } else {
        fail(format!("{bad} of 100 disagree"))
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let small = [2i64, 3, 5, 7, 11, 13];
    let (mut done, mut bad) = (0, 0);
    while done < 50 {
        let nvars = rng.gen_range(1..=3);
        let mut c = 1i64;
        for _ in 0..rng.gen_range(2..=3) {
            c *= small[rng.gen_range(0..small.len())].pow(rng.gen_range(1..=2));
        }
        let mut gens: Vec<ZPoly> = (0..rng.gen_range(1..=2)).map(|_| random_zpoly(&mut rng, nvars, 3, 20, 3)).collect();
        gens.push(Polynomial::from_int(c, (), nvars, DP));
        let i = Ideal::new((), nvars, gens);
        let q = contract_z(&i);
        if q.is_zero() || q.is_one() {
            continue;
        }
        let fact = factorize(&q).unwrap();
        if fact.factors.len() < 2 {
            continue;
        }
        done += 1;
        let locals: Vec<ZIdeal> = fact
            .factors
            .iter()
            .map(|(p, nu)| {
                let pnu = num_traits::pow(p.clone(), *nu as usize);
                i.with_gens([Polynomial::constant(pnu, nvars, DP)])
            })
            .collect();
        if !intersect_all(&locals).unwrap().equals(&i) {
            bad += 1;
        }
    }
    if bad == 0 {
        pass("50 ideals with composite I ∩ ℤ equal the intersection of their ⟨I, p^ν⟩")
    } else {
        fail(format!("{bad} of 50 fail the splitting identity"))
    }
}

/// Dense 𝔽ₚ arithmetic for the irreducibility oracle, low degree first.
mod dense {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        while a.len() > dm {
            let k = a.len() - 1 - dm;
            let c = a[a.len() - 1] * li % p;
            for (j, &mj) in m.iter().enumerate() {
                a[k + j] = (a[k + j] + p - c * mj % p) % p;
            }
            a = trim(a);
        }
        a
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        rem(&r, m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// x^(p^k) mod m.
    pub fn frobenius_power(m: &[u64], p: u64, k: usize) -> Vec<u64> {
        let mut x = rem(&[0, 1], m, p);
        for _ in 0..k {
            // x ← x^p
            let mut r = vec![1u64];
            let mut b = x.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(&r, &b, m, p);
                }
                b = mulmod(&b, &b, m, p);
                e >>= 1;
            }
            x = r;
        }
        x
    }

    pub fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        if a.len() < 2 {
            a.resize(2, 0);
        }
        a[1] = (a[1] + p - 1) % p;
        trim(a)
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^(p^n) ≡ x` and
    /// `gcd(x^(p^(n/r)) − x, f) = 1` for every prime `r | n`.
    pub fn rabin_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        if !rem(&sub_x(&frobenius_power(f, p, n), p), f, p).is_empty() {
            return false;
        }
        for r in 2..=n {
            if n % r == 0 && (2..r).all(|d| r % d != 0) {
                let g = gcd(f, &sub_x(&frobenius_power(f, p, n / r), p), p);
                if g.len() > 1 {
                    return false;
                }
            }
        }
        true
    }
}

fn to_dense(f: &Polynomial<FpElem>) -> Vec<u64> {
    let deg = f.total_degree().unwrap_or(0) as usize;
    let mut v = vec![0u64; deg + 1];
    for t in f.terms() {
        v[t.mono.degree() as usize] = t.coeff.value();
    }
    dense::trim(v)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let primes: Vec<u64> = (2..=101u64).filter(|n| (2..*n).all(|d| n % d != 0)).collect();
    let mut bad = Vec::new();
    let mut fp_count = 0;
    for &p in &primes {
        for _ in 0..4 {
            let deg = rng.gen_range(1..=20);
            let mut terms: Vec<(FpElem, Monomial)> = (0..deg)
                .map(|k| (FpElem::from_u64(rng.gen_range(0..p), p), Monomial::from_exponents(&[k])))
                .collect();
            terms.push((FpElem::from_u64(rng.gen_range(1..p), p), Monomial::from_exponents(&[deg])));
            let f = Polynomial::from_terms(p, 1, DP, terms);
            fp_count += 1;
            let fl = match factor_univariate_fp(&f, p) {
                Ok(fl) => fl,
                Err(e) => {
                    bad.push(format!("p={p}: {e}"));
                    continue;
                }
            };
            if fl.recompose(1, DP) != f {
                bad.push(format!("p={p}: recomposition"));
            }
            if fl.factors.iter().any(|(g, _)| !dense::rabin_irreducible(&to_dense(g), p)) {
                bad.push(format!("p={p}: reducible factor"));
            }
        }
    }
    let x = names(&["x"]);
    let q = |s: &str| parse_polynomial(s, &x, DP).unwrap();
    let mut q_count = 0;
    for _ in 0..60 {
        // products of random small factors, degree ≤ 12
        let mut f = Polynomial::one(Default::default(), 1, DP);
        let mut deg = 0;
        while deg < 12 {
            let d = rng.gen_range(1..=4u32).min(12 - deg);
            let terms: Vec<(BigRat, Monomial)> = (0..=d)
                .map(|k| {
                    let c = if k == d { rng.gen_range(1..=5) } else { rng.gen_range(-9..=9) };
                    (BigRat::from_integer(c.into()), Monomial::from_exponents(&[k]))
                })
                .collect();
            f = f.mul(&Polynomial::from_terms(Default::default(), 1, DP, terms));
            deg += d;
            if rng.gen_ratio(1, 3) {
                break;
            }
        }
        q_count += 1;
        match factor_univariate_q(&f, 0) {
            Ok(fl) if fl.recompose(1, DP) == f => {}
            Ok(_) => bad.push(format!("Q: recomposition of {}", f.display(&x))),
            Err(e) => bad.push(format!("Q: {e}")),
        }
    }
    match factor_univariate_q(&q("x^4 + 1"), 0) {
        Ok(fl) if fl.factors.len() == 1 && fl.factors[0].1 == 1 => {}
        _ => bad.push("x^4 + 1 not reported irreducible over Q".into()),
    }
    if bad.is_empty() {
        pass(format!("{fp_count} factorizations over F_p, {q_count} over Q, x^4 + 1 irreducible over Q"))
    } else {
        fail(bad.join("; "))
    }
}

fn canonical_text(d: &Decomposition) -> String {
    let v = names(&["x", "y", "z"]);
    let mut s = String::new();
    for c in &d.components {
        let origin = match &c.provenance.branch {
            Branch::Rational => "Q".to_string(),
            Branch::Prime { p, nu } => format!("{p}^{nu}"),
        };
        s += &format!("{} | {} | {origin} {} {}\n", c.q.display(&v), c.p.display(&v), c.provenance.worker, c.provenance.seed);
    }
    s
}

const SCALING_JOBS: usize = 4;

fn criterion_9() -> Outcome {
    // four primes whose tasks carry nearly all of the work
    let v = ["x", "y", "z"];
    let i = zi(&["x^5 + y^2*z - 1", "y^5 + x*z^2 - 2", "z^5 + x^2*y - 3", "210"], &v);
    let run = |jobs: usize| -> (Duration, String) {
        let start = Instant::now();
        let d = primdec(&i, &Options { jobs, ..Options::default() }).expect("decomposition");
        (start.elapsed(), canonical_text(&d))
    };
    let (mut t1, mut t4) = (Duration::MAX, Duration::MAX);
    let (mut out1, mut out4) = (String::new(), String::new());
    for _ in 0..3 {
        let (a, s1) = run(1);
        let (b, s4) = run(SCALING_JOBS);
        t1 = t1.min(a);
        t4 = t4.min(b);
        out1 = s1;
        out4 = s4;
    }
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    let detail = format!("-j1 {t1:?}, -j4 {t4:?} (best of 3, {cpus} CPU)");
    if out1 != out4 {
        return fail(format!("outputs differ between -j1 and -j4; {detail}"));
    }
    if t4 <= t1 {
        pass(format!("identical output; {detail}"))
    } else if cpus < SCALING_JOBS {
        // four workers on fewer cores can at best tie
        Outcome { unattainable: true, ..fail(format!("identical output but -j4 slower; {detail}; needs {SCALING_JOBS} CPUs")) }
    } else {
        fail(format!("identical output but -j4 slower; {detail}"))
    }
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut record = |n: usize, name: &'static str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let status = match (o.passed, o.unattainable) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL, unattainable on this host",
        };
        println!("criterion {n} [{status}] {name}: {} ({:.1}s)", o.detail, start.elapsed().as_secs_f64());
        results.push((n, name, o));
    };

    recorder::start();
    record(1, "worked extraction", &criterion_1);
    record(2, "worked decomposition", &criterion_2);
    record(3, "golden suite", &criterion_3);
    record(4, "random recomposition", &criterion_4);
    let bases = recorder::stop();
    record(5, "strong basis invariants", &|| criterion_5(&bases));
    record(6, "saturation cross-check", &criterion_6);
    record(7, "prime-power splitting", &criterion_7);
    record(8, "field factorization", &criterion_8);
    record(9, "parallel determinism and scaling", &criterion_9);

    let failed: Vec<usize> = results.iter().filter(|r| !r.2.passed).map(|r| r.0).collect();
    let blocking: Vec<usize> = results.iter().filter(|r| !r.2.passed && !r.2.unattainable).map(|r| r.0).collect();
    println!("acceptance: {} of {} criteria passed", results.len() - failed.len(), results.len());
    if failed.len() > blocking.len() {
        println!("unattainable on this host (not counted toward the exit status): {:?}", failed.iter().filter(|n| !blocking.contains(n)).collect::<Vec<_>>());
    }
    if !blocking.is_empty() {
        std::process::exit(1);
    }
}
