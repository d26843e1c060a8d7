use std::collections::BTreeMap;

use confrb::exact::{GaussRat, Poly, Var};
use confrb::lie::{automorphisms, catalog_sl2, check_rb, transform_rb, LieAlgebra, LinearMap, Transform};
use proptest::prelude::*;

fn instantiate(r: &LinearMap, t: i64) -> LinearMap {
    let bind: BTreeMap<Var, Poly> = [(Var::named("t"), Poly::int(t))].into();
    LinearMap::new(r.matrix.map(|p| p.substitute(&bind)))
}

/// A word in the rational automorphisms of sl₂.
fn automorphism_word() -> impl Strategy<Value = LinearMap> {
    prop::collection::vec((0usize..5, -3i64..4), 1..4).prop_map(|letters| {
        let mut acc = LinearMap::identity(3);
        for (kind, v) in letters {
            let m = match kind {
                0 => automorphisms::psi(&Poly::int(v)),
                1 => automorphisms::pi(&Poly::int(v)),
                2 => automorphisms::xi(&GaussRat::from((v * v).max(1))).unwrap(),
                3 => automorphisms::weyl(),
                _ => automorphisms::unipotent_e(&Poly::int(v)),
            };
            acc = LinearMap::new(&acc.matrix * &m.matrix);
        }
        acc
    })
}

#[test]
fn catalogs_are_rota_baxter() {
    let g = LieAlgebra::sl2();
    for w in [0, 1] {
        for e in catalog_sl2(w).unwrap() {
            assert!(check_rb(&g, &e.map, &e.weight).unwrap().is_rb(), "{} at {w}", e.name);
        }
    }
}

#[test]
fn killing_form_is_nondegenerate() {
    let k = LieAlgebra::sl2().killing_form();
    assert_eq!(k.det(), Poly::int(-128));
    assert_eq!(*k.get(0, 1), Poly::int(4));
    assert_eq!(*k.get(2, 2), Poly::int(8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn phi_is_an_involution(idx in 0usize..8, t in -4i64..5, k in -2i64..3) {
        let g = LieAlgebra::sl2();
        let all: Vec<_> = catalog_sl2(0).unwrap().into_iter().chain(catalog_sl2(1).unwrap()).collect();
        let r = instantiate(&all[idx % all.len()].map, t);
        let k = Poly::int(k);
        let once = transform_rb(&g, &r, &k, &Transform::Phi).unwrap();
        prop_assert_eq!(transform_rb(&g, &once, &k, &Transform::Phi).unwrap(), r);
    }

    #[test]
    fn conjugation_preserves_rb(idx in 0usize..8, phi in automorphism_word()) {
        let g = LieAlgebra::sl2();
        prop_assert!(g.is_automorphism(&phi.matrix));
        let all: Vec<_> = catalog_sl2(0).unwrap().into_iter().chain(catalog_sl2(1).unwrap()).collect();
        let e = &all[idx % all.len()];
        let c = transform_rb(&g, &e.map, &e.weight, &Transform::Conjugate(phi)).unwrap();
        prop_assert!(check_rb(&g, &c, &e.weight).unwrap().is_rb());
    }
}
