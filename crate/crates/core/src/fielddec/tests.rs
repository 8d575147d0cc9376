use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::ideals::{intersect_all, Ideal};
use crate::numth::{BigRat, FpElem};
use crate::poly::{reduce_mod_p, to_rational, MonomialOrdering, Polynomial, VarMask};
use crate::testutil::{arb_zpoly, fp, q, qs};
use crate::Error;

const DP: MonomialOrdering = MonomialOrdering::Dp;

fn qideal(srcs: &[&str], vars: &[&str]) -> Ideal<BigRat> {
    Ideal::from_gens(qs(srcs, vars))
}

fn fpideal(srcs: &[&str], vars: &[&str], p: u64) -> Ideal<FpElem> {
    Ideal::from_gens(srcs.iter().map(|s| fp(s, vars, p)).collect())
}

fn factors_q(fl: &FactorList<BigRat>) -> Vec<(Polynomial<BigRat>, u32)> {
    fl.factors.clone()
}

#[test]
fn fp_examples() {
    let x = ["x"];
    let f = fp("x^2 - 1", &x, 3);
    let fl = factor_univariate_fp(&f, 1).unwrap();
    assert_eq!(fl.factors, vec![(fp("x + 1", &x, 3), 1), (fp("x - 1", &x, 3), 1)]);
    let fl = factor_univariate_fp(&fp("x^2 + 1", &x, 3), 1).unwrap();
    assert_eq!(fl.factors, vec![(fp("x^2 + 1", &x, 3), 1)]);
    let fl = factor_univariate_fp(&fp("x^3 - x", &x, 3), 1).unwrap();
    assert_eq!(fl.factors.len(), 3);
    assert_eq!(fl.recompose(1, DP), fp("x^3 - x", &x, 3));
}

#[test]
fn constant_input_is_rejected() {
    assert!(matches!(factor_univariate_fp(&fp("2", &["x"], 3), 0), Err(Error::FactorInput(_))));
    assert!(matches!(factor_univariate_q(&q("5", &["x"]), 0), Err(Error::FactorInput(_))));
    assert!(factor_univariate_q(&q("x*y", &["x", "y"]), 0).is_err());
}

#[test]
fn q_examples() {
    let x = ["x"];
    let fl = factor_univariate_q(&q("x^2 - 1", &x), 1).unwrap();
    assert_eq!(factors_q(&fl), vec![(q("x - 1", &x), 1), (q("x + 1", &x), 1)]);
    let fl = factor_univariate_q(&q("x^2 + 1", &x), 1).unwrap();
    assert_eq!(fl.factors, vec![(q("x^2 + 1", &x), 1)]);
    let fl = factor_univariate_q(&q("6*x^3 - 6*x", &x), 1).unwrap();
    assert_eq!(fl.unit, BigRat::from_integer(6.into()));
    assert_eq!(fl.factors.len(), 3);
}

#[test]
fn cyclotomic_eight_is_irreducible_over_q() {
    let f = q("x^4 + 1", &["x"]);
    let fl = factor_univariate_q(&f, 7).unwrap();
    assert_eq!(fl.factors, vec![(f.clone(), 1)]);
    // while every reduction splits
    for p in [2u64, 3, 5, 7, 11, 13, 17] {
        let fp = reduce_mod_p(&crate::testutil::z("x^4 + 1", &["x"]), p);
        let parts = factor_univariate_fp(&fp, 0).unwrap();
        assert!(parts.factors.iter().map(|(_, e)| e).sum::<u32>() > 1, "p = {p}");
    }
}

#[test]
fn squarefree_examples() {
    assert_eq!(squarefree_part(&q("x^2", &["x"]), 0).unwrap(), q("x", &["x"]));
    assert_eq!(squarefree_part(&fp("x^3 - x", &["x"], 3), 0).unwrap(), fp("x^3 - x", &["x"], 3));
    assert_eq!(squarefree_part(&fp("x^5", &["x"], 5), 0).unwrap(), fp("x", &["x"], 5));
    assert!(matches!(squarefree_part(&q("0", &["x"]), 0), Err(Error::ZeroPolynomial)));
}

#[test]
fn inseparable_power_over_f2() {
    // (x + 1)^4 over 𝔽₂ has zero derivative
    let f = fp("x^4 + 1", &["x"], 2);
    let fl = factor_univariate_fp(&f, 0).unwrap();
    assert_eq!(fl.factors, vec![(fp("x + 1", &["x"], 2), 4)]);
}

#[test]
fn multivariate_factorization() {
    let v = ["x", "y"];
    // Sophie Germain identity
    let fl = factor(&q("x^4 + 4*y^4", &v), 3).unwrap();
    let mut expect = vec![(q("x^2 + 2*x*y + 2*y^2", &v), 1), (q("x^2 - 2*x*y + 2*y^2", &v), 1)];
    expect.sort_by(|a, b| crate::gb::canonical_cmp(&a.0, &b.0));
    assert_eq!(fl.factors, expect);

    let f = q("3*x*(x + y)^2*(x - y)*y^3", &v);
    let fl = factor(&f, 3).unwrap();
    assert_eq!(fl.recompose(2, DP), f);
    let mults: Vec<u32> = fl.factors.iter().map(|(_, e)| *e).collect();
    assert_eq!(mults.iter().sum::<u32>(), 7);
    assert!(fl.factors.contains(&(q("y", &v), 3)));
    assert!(fl.factors.contains(&(q("x + y", &v), 2)));

    let fl = factor(&q("x^2 - 2*y^2", &v), 0).unwrap();
    assert_eq!(fl.factors.len(), 1);
    let fl = factor(&fp("x^2 - 2*y^2", &v, 7), 0).unwrap();
    assert_eq!(fl.factors.len(), 2, "2 = 3² mod 7");
}

#[test]
fn gcd_and_lcm() {
    let v = ["x", "y"];
    let a = q("(x - y)*(x + 1)^2", &v);
    let b = q("(x + 1)*(y + 2)", &v);
    assert_eq!(poly_gcd(&a, &b), q("x + 1", &v));
    assert_eq!(poly_lcm(&a, &b), q("(x - y)*(x + 1)^2*(y + 2)", &v).monic());
    let za = crate::testutil::z("6*x^2", &v);
    let zb = crate::testutil::z("4*x*y", &v);
    assert_eq!(poly_gcd(&za, &zb), crate::testutil::z("2*x", &v));
}

fn pairs<F: FactorField>(cs: &[FieldComponent<F>]) -> Vec<(Ideal<F>, Ideal<F>)> {
    cs.iter().map(|c| (c.q.clone(), c.p.clone())).collect()
}

#[test]
fn zerodim_examples() {
    let v = ["x", "y"];
    let cs = zerodim_primdec(&qideal(&["x^2 - 1", "y"], &v), 0).unwrap();
    let a = qideal(&["x - 1", "y"], &v);
    let b = qideal(&["x + 1", "y"], &v);
    assert_eq!(pairs(&cs), vec![(a.clone(), a), (b.clone(), b)]);

    let cs = zerodim_primdec(&qideal(&["x^2"], &["x"]), 0).unwrap();
    assert_eq!(pairs(&cs), vec![(qideal(&["x^2"], &["x"]), qideal(&["x"], &["x"]))]);

    let m = qideal(&["x", "y"], &v);
    assert_eq!(pairs(&zerodim_primdec(&m, 0).unwrap()), vec![(m.clone(), m)]);

    assert!(matches!(zerodim_primdec(&qideal(&["x"], &v), 0), Err(Error::NotZeroDimensional(1))));
    assert!(matches!(zerodim_primdec(&qideal(&["1"], &v), 0), Err(Error::UnitIdeal(_))));
}

#[test]
fn primdec_examples() {
    let v = ["x", "y"];
    let x = qideal(&["x"], &v);
    let y = qideal(&["y"], &v);
    let cs = primdec_field(&qideal(&["x*y"], &v), 0).unwrap();
    assert_eq!(pairs(&cs), vec![(y.clone(), y.clone()), (x.clone(), x.clone())]);

    let cs = primdec_field(&qideal(&["x^2*y"], &v), 0).unwrap();
    assert_eq!(pairs(&cs), vec![(y.clone(), y), (qideal(&["x^2"], &v), x)]);

    let cs = primdec_field(&fpideal(&["x^2 - 1"], &["x"], 3), 0).unwrap();
    let a = fpideal(&["x - 1"], &["x"], 3);
    let b = fpideal(&["x + 1"], &["x"], 3);
    assert_eq!(pairs(&cs), vec![(b.clone(), b), (a.clone(), a)]);

    assert!(matches!(primdec_field(&qideal(&["1"], &v), 0), Err(Error::UnitIdeal(_))));
    let zero = Ideal::<BigRat>::zero(Default::default(), 2);
    let cs = primdec_field(&zero, 0).unwrap();
    assert_eq!(pairs(&cs), vec![(zero.clone(), zero)]);
}

#[test]
fn embedded_component() {
    let v = ["x", "y"];
    let i = qideal(&["x^2", "x*y"], &v);
    let cs = primdec_field(&i, 0).unwrap();
    assert_eq!(cs.len(), 2);
    assert!(cs.iter().any(|c| c.p == qideal(&["x"], &v) && c.q == c.p));
    assert!(cs.iter().any(|c| c.p == qideal(&["x", "y"], &v)));
    check_decomposition(&i, &cs);

    let m = min_ass_field(&fpideal(&["x^2", "x*y"], &v, 5), 0).unwrap();
    assert_eq!(m, vec![fpideal(&["x"], &v, 5)]);
    let zero = Ideal::<FpElem>::zero(5, 2);
    assert_eq!(min_ass_field(&zero, 0).unwrap(), vec![zero]);
    let p = fpideal(&["x^2 + 2", "y - x"], &v, 5);
    assert_eq!(min_ass_field(&p, 0).unwrap(), vec![p]);
}

#[test]
fn needs_general_position() {
    // both coordinates generate the same quadratic extension
    let v = ["x", "y"];
    let i = qideal(&["x^2 - 2", "y^2 - 2"], &v);
    let cs = primdec_field(&i, 11).unwrap();
    let mut expect = vec![qideal(&["x - y", "y^2 - 2"], &v), qideal(&["x + y", "y^2 - 2"], &v)];
    expect.sort_by(|a, b| a.cmp_canonical(b));
    assert_eq!(cs.iter().map(|c| c.p.clone()).collect::<Vec<_>>(), expect);
    check_decomposition(&i, &cs);

    let i = fpideal(&["x^2 + 1", "y^2 + 1"], &v, 3);
    let cs = primdec_field(&i, 11).unwrap();
    assert_eq!(cs.len(), 2);
    check_decomposition(&i, &cs);
}

#[test]
fn positive_dimension_with_parameters() {
    let v = ["x", "y", "z"];
    let i = qideal(&["x^2 - y*z", "x*z - x"], &v);
    let cs = primdec_field(&i, 5).unwrap();
    check_decomposition(&i, &cs);
    // z = 1 with x² = y, or x = 0 with y·z = 0
    let primes: Vec<Ideal<BigRat>> = cs.iter().map(|c| c.p.clone()).collect();
    assert!(primes.contains(&qideal(&["z - 1", "x^2 - y"], &v)));
    assert!(primes.contains(&qideal(&["x", "y"], &v)));
    assert!(primes.contains(&qideal(&["x", "z"], &v)));
}

fn is_prime_oracle<F: FactorField>(p: &Ideal<F>) -> bool {
    // p is prime iff primdec_field gives back a single component equal to p
    match primdec_field(p, 99) {
        Ok(cs) => cs.len() == 1 && cs[0].q == *p && cs[0].p == *p,
        Err(_) => false,
    }
}

/// Checks recomposition, `Q ⊆ P`, a power of every generator of `P` in
/// `Q`, and irredundancy.
fn check_decomposition<F: FactorField>(i: &Ideal<F>, cs: &[FieldComponent<F>]) {
    let all = intersect_all(cs.iter().map(|c| &c.q)).unwrap();
    assert!(all.equals(i), "recomposition");
    for c in cs {
        assert!(c.p.contains_ideal(&c.q));
        for g in c.p.gb().elements() {
            assert!((1..=16).any(|k| c.q.contains(&g.pow(k))), "radical witness");
        }
    }
    for k in 0..cs.len() {
        if cs.len() == 1 {
            break;
        }
        let others = intersect_all(cs.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, c)| &c.q)).unwrap();
        assert!(!others.equals(i), "component {k} is redundant");
    }
    for (a, c) in cs.iter().enumerate() {
        for d in &cs[a + 1..] {
            assert!(!c.p.equals(&d.p), "repeated prime");
        }
    }
}

#[test]
fn decomposed_primes_are_prime() {
    let v = ["x", "y"];
    let i = qideal(&["x^3 - x*y^2", "x^2*y"], &v);
    let cs = primdec_field(&i, 2).unwrap();
    check_decomposition(&i, &cs);
    for c in &cs {
        assert!(is_prime_oracle(&c.p));
    }
}

/// `gcd(f, x^{p^k} − x) = 1` for `k < deg f` and `f | x^{p^deg f} − x`,
/// computed with generic polynomial arithmetic.
fn irreducible_by_certificate(f: &Polynomial<FpElem>, p: u64) -> bool {
    let d = f.total_degree().unwrap();
    let x = Polynomial::var(0, p, 1, DP);
    let mut xp = x.clone();
    for k in 1..=d {
        // xp ← xp^p mod f
        let mut acc = Polynomial::one(p, 1, DP);
        for _ in 0..p {
            acc = acc.mul(&xp).div_rem_single(f).1;
        }
        xp = acc;
        let diff = xp.sub(&x);
        if k < d {
            let g = univariate_gcd(f.clone(), diff);
            if !g.is_constant() {
                return false;
            }
        } else {
            return diff.div_rem_single(f).1.is_zero();
        }
    }
    unreachable!()
}

fn univariate_gcd(mut a: Polynomial<FpElem>, mut b: Polynomial<FpElem>) -> Polynomial<FpElem> {
    while !b.is_zero() {
        let r = a.div_rem_single(&b).1;
        a = b;
        b = r;
    }
    a.monic()
}

#[test]
fn fpx_irreducibility_agrees_with_certificate() {
    for p in [2u64, 3, 5] {
        for code in 0..p.pow(4) {
            let mut coeffs = vec![0u64; 5];
            let mut c = code;
            for k in 0..4 {
                coeffs[k] = c % p;
                c /= p;
            }
            coeffs[4] = 1;
            let f = Polynomial::from_terms(
                p,
                1,
                DP,
                coeffs.iter().enumerate().map(|(k, &c)| (FpElem::from_u64(c, p), crate::poly::Monomial::from_exponents(&[k as u32]))),
            );
            assert_eq!(super::fpx::is_irreducible(&coeffs, p), irreducible_by_certificate(&f, p), "{f} mod {p}");
            let fl = factor_univariate_fp(&f, code).unwrap();
            assert_eq!(fl.recompose(1, DP), f);
            for (g, _) in &fl.factors {
                assert!(irreducible_by_certificate(g, p), "{g} mod {p}");
            }
        }
    }
}

fn rational_root(f: &Polynomial<BigRat>) -> bool {
    // f has a rational root iff some ±a/b with a | constant, b | lc is a root
    let z = crate::poly::clear_denominators(f).unwrap();
    let lc = z.terms()[0].coeff.clone();
    let c0 = z.terms().iter().find(|t| t.mono.is_one()).map(|t| t.coeff.clone());
    let Some(c0) = c0 else { return true };
    let divisors = |n: &BigInt| -> Vec<i64> {
        let n: i64 = n.try_into().unwrap();
        (1..=n.abs()).filter(|d| n % d == 0).collect()
    };
    for a in divisors(&c0) {
        for b in divisors(&lc) {
            for s in [-1, 1] {
                let r = BigRat::new((s * a).into(), b.into());
                let v = f.terms().iter().fold(BigRat::from_integer(0.into()), |acc, t| {
                    acc + &t.coeff * num_traits::pow(r.clone(), t.mono.degree() as usize)
                });
                if v == BigRat::from_integer(0.into()) {
                    return true;
                }
            }
        }
    }
    false
}

fn univariate_z() -> impl Strategy<Value = crate::poly::ZPoly> {
    arb_zpoly(1, 12, 20, 6).prop_filter("nonconstant", |f| f.total_degree().unwrap_or(0) > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn q_factorization_recomposes(f in univariate_z(), seed in any::<u64>()) {
        let fq = to_rational(&f);
        let fl = factor_univariate_q(&fq, seed).unwrap();
        prop_assert_eq!(fl.recompose(1, DP), fq);
        for (g, _) in &fl.factors {
            prop_assert!(g.lc() == &BigRat::from_integer(1.into()));
            if g.total_degree().unwrap() <= 3 && g.total_degree().unwrap() > 1 {
                prop_assert!(!rational_root(g), "{} has a rational root", g);
            }
        }
    }

    #[test]
    fn q_products_split_completely(roots in prop::collection::vec(-6i64..=6, 1..5), quads in prop::collection::vec(1i64..=5, 0..3)) {
        // ∏ (x − r) · ∏ (x² + c) with c > 0: irreducible quadratics
        let x = q("x", &["x"]);
        let mut f = q("1", &["x"]);
        for r in &roots {
            f = f.mul(&x.sub(&Polynomial::from_int(*r, Default::default(), 1, DP)));
        }
        for c in &quads {
            f = f.mul(&x.mul(&x).add(&Polynomial::from_int(*c, Default::default(), 1, DP)));
        }
        let fl = factor_univariate_q(&f, 0).unwrap();
        prop_assert_eq!(fl.factors.iter().map(|(_, e)| *e as usize).sum::<usize>(), roots.len() + quads.len());
    }

    #[test]
    fn fp_factorization_recomposes(f in arb_zpoly(1, 20, 1000, 8), pi in 0usize..26, seed in any::<u64>()) {
        let p = crate::numth::small_primes()[pi] as u64;
        let g = reduce_mod_p(&f, p);
        prop_assume!(g.total_degree().unwrap_or(0) > 0);
        let fl = factor_univariate_fp(&g, seed).unwrap();
        prop_assert_eq!(fl.recompose(1, DP), g);
        for (h, _) in &fl.factors {
            prop_assert!(super::fpx::is_irreducible(&dense(h, p), p));
        }
    }

    #[test]
    fn bivariate_factorization_recomposes(a in arb_zpoly(2, 2, 3, 3), b in arb_zpoly(2, 2, 3, 3)) {
        let f = to_rational(&a.mul(&b));
        prop_assume!(!f.is_zero());
        let fl = factor(&f, 0).unwrap();
        prop_assert_eq!(fl.recompose(2, DP), f);
    }
}

fn dense(f: &Polynomial<FpElem>, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; f.total_degree().unwrap() as usize + 1];
    for t in f.terms() {
        out[t.mono.degree() as usize] = t.coeff.value();
    }
    let _ = p;
    out
}

fn small_ideal_fp() -> impl Strategy<Value = (Vec<crate::poly::ZPoly>, u64)> {
    (prop::collection::vec(arb_zpoly(2, 3, 4, 3), 1..=2), prop::sample::select(vec![2u64, 3, 5, 7]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fp_decomposition_is_valid((gens, p) in small_ideal_fp()) {
        let i = Ideal::new(p, 2, gens.iter().map(|g| reduce_mod_p(g, p)));
        prop_assume!(!i.is_unit() && !i.is_zero());
        match primdec_field(&i, 1) {
            Ok(cs) => {
                check_decomposition(&i, &cs);
                let m = min_ass_field(&i, 1).unwrap();
                for a in &m {
                    for b in &m {
                        prop_assert!(a == b || !a.contains_ideal(b));
                    }
                }
            }
            // inseparable residue extensions are outside the method
            Err(Error::GeneralPosition { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn q_decomposition_is_valid(gens in prop::collection::vec(arb_zpoly(2, 3, 4, 3), 1..=2)) {
        let i = Ideal::new(Default::default(), 2, gens.iter().map(to_rational));
        prop_assume!(!i.is_unit() && !i.is_zero());
        let cs = primdec_field(&i, 1).unwrap();
        check_decomposition(&i, &cs);
        let _ = VarMask::EMPTY;
    }
}

#[test]
fn inseparable_over_one_transcendence_basis() {
    // over 𝔽₂(z) the residue field 𝔽₂(√z) is inseparable; over 𝔽₂(x) it is not
    let v = ["x", "y", "z"];
    let i = fpideal(&["x^2 + z", "y^2 + z"], &v, 2);
    let cs = primdec_field(&i, 0).unwrap();
    assert_eq!(cs.len(), 1);
    assert!(cs[0].q.equals(&i));
    assert!(cs[0].p.equals(&fpideal(&["x + y", "x^2 + z"], &v, 2)));
    check_decomposition(&i, &cs);
}

#[test]
fn more_rational_points_than_field_elements() {
    // nine points over 𝔽₃: no single element separates them
    let v = ["x", "y"];
    let i = fpideal(&["x^3 - x", "y^3 - y"], &v, 3);
    let cs = primdec_field(&i, 0).unwrap();
    assert_eq!(cs.len(), 9);
    for c in &cs {
        assert!(c.q.equals(&c.p));
        assert_eq!(c.p.gens().len(), 2);
    }
    check_decomposition(&i, &cs);
}
