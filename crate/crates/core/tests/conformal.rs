use confrb::conformal::{ConformalAlgebra, TensorElement};
use confrb::exact::{Poly, Var};
use proptest::prelude::*;

fn lam() -> Poly {
    Poly::var(Var::LAMBDA)
}

fn del() -> Poly {
    Poly::var(Var::D)
}

fn algebras() -> Vec<ConformalAlgebra> {
    vec![
        ConformalAlgebra::cur_sl2(),
        ConformalAlgebra::virasoro(),
        ConformalAlgebra::rank2_example(),
    ]
}

fn poly_in(v: Var, deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-2i64..3, deg as usize + 1).prop_map(move |cs| {
        cs.iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (k, &c)| &acc + &(&Poly::int(c) * &Poly::var(v).pow(k as u32)))
    })
}

fn element(n: usize) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly_in(Var::D, 2), n)
}

fn times(p: &Poly, v: &[Poly]) -> Vec<Poly> {
    v.iter().map(|x| p * x).collect()
}

fn tensor(n: usize) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec(((0..n, 0..n), -2i64..3, 0u32..2, 0u32..2), 1..4).prop_map(|ts| {
        let terms = ts.into_iter().map(|((i, j), c, a, b)| {
            let coeff = &(&Poly::int(c) * &Poly::var(Var::D1).pow(a)) * &Poly::var(Var::D2).pow(b);
            (vec![i, j], coeff)
        });
        TensorElement::from_terms(2, terms).unwrap()
    })
}

#[test]
fn presets_satisfy_the_axioms() {
    for l in algebras() {
        let rep = l.check_conformal_axioms();
        assert!(rep.is_empty(), "{:?}", l.generators());
    }
}

#[test]
fn virasoro_bracket() {
    let l = ConformalAlgebra::virasoro();
    let one = l.unit(0);
    assert_eq!(l.lambda_bracket(&one, &one), vec![Poly::parse("∂ + 2λ").unwrap()]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sesquilinearity(idx in 0usize..3, seed in (element(3), element(3))) {
        let l = &algebras()[idx];
        let n = l.rank();
        let (x, y) = (&seed.0[..n], &seed.1[..n]);
        let xy = l.lambda_bracket(x, y);
        prop_assert_eq!(l.lambda_bracket(&times(&del(), x), y), times(&-&lam(), &xy));
        prop_assert_eq!(l.lambda_bracket(x, &times(&del(), y)), times(&(&del() + &lam()), &xy));
    }

    #[test]
    fn anticommutativity(idx in 0usize..3, seed in (element(3), element(3))) {
        let l = &algebras()[idx];
        let n = l.rank();
        let (x, y) = (&seed.0[..n], &seed.1[..n]);
        let flipped = l.bracket_at(x, y, &-&(&lam() + &del()));
        let yx = l.lambda_bracket(y, x);
        prop_assert_eq!(yx, flipped.iter().map(|p| -p).collect::<Vec<_>>());
    }

    /// `a_λ(b_μ T) − b_μ(a_λ T) = [a_λ b]_{λ+μ} T` on rank-2 tensors.
    #[test]
    fn tensor_action_is_a_module(idx in 0usize..3, a in 0usize..3, b in 0usize..3, t in tensor(3)) {
        let l = &algebras()[idx];
        let n = l.rank();
        let (a, b) = (a % n, b % n);
        let t = TensorElement::from_terms(
            2,
            t.terms().map(|(k, c)| (k.iter().map(|g| g % n).collect(), c.clone())),
        ).unwrap();
        let mu = Poly::var(Var::MU);
        let (ua, ub) = (l.unit(a), l.unit(b));
        let bt = l.tensor_action(&ub, &t, &mu).unwrap();
        let at = l.tensor_action(&ua, &t, &lam()).unwrap();
        let lhs = l
            .tensor_action(&ua, &bt, &lam())
            .unwrap()
            .sub(&l.tensor_action(&ub, &at, &mu).unwrap())
            .unwrap();
        let ab = l.lambda_bracket(&ua, &ub);
        let rhs = l.tensor_action(&ab, &t, &(&lam() + &mu)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_action_on_zero(idx in 0usize..3, a in element(3)) {
        let l = &algebras()[idx];
        let n = l.rank();
        let z = TensorElement::zero(2);
        prop_assert!(l.tensor_action(&a[..n], &z, &lam()).unwrap().is_zero());
    }
}
