use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ppinv::agw::{invert_multiplicative, invert_translator, MulFamily};
use ppinv::descriptor::FamilyDescriptor;
use ppinv::gen::{random_mul, random_translator};
use ppinv::perm::PermTable;
use ppinv::poly::reduce_mod_field;
use ppinv::{build_field, compose, interpolate, Elem, FieldCtx, PolyFq};

const FIELDS: [(u64, u32); 6] = [(2, 3), (3, 2), (5, 1), (2, 4), (7, 1), (5, 2)];

fn field(i: usize) -> Arc<FieldCtx> {
    let (p, n) = FIELDS[i % FIELDS.len()];
    Arc::new(build_field(p, n, None).unwrap())
}

fn poly(c: &Arc<FieldCtx>, raw: &[u32]) -> PolyFq {
    let q = c.q();
    reduce_mod_field(c, &raw.iter().map(|&v| Elem(v % q)).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(i in 0usize..6, a in 0u32..64, b in 0u32..64, d in 0u32..64) {
        let c = field(i);
        let q = c.q();
        let (a, b, d) = (Elem(a % q), Elem(b % q), Elem(d % q));
        prop_assert_eq!(c.mul(a, c.add(b, d)), c.add(c.mul(a, b), c.mul(a, d)));
        prop_assert_eq!(c.add(c.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(c.mul(a, c.inv(a)), Elem::ONE);
        }
        prop_assert_eq!(c.pow_u(a, q as u64), a);
    }

    #[test]
    fn compose_is_evaluation(i in 0usize..6, f in prop::collection::vec(0u32..64, 1..12), g in prop::collection::vec(0u32..64, 1..12)) {
        let c = field(i);
        let (f, g) = (poly(&c, &f), poly(&c, &g));
        let fg = compose(&f, &g).unwrap();
        for x in c.elements() {
            prop_assert_eq!(fg.eval(x), f.eval(g.eval(x)));
        }
    }

    #[test]
    fn interpolate_inverts_tabulate(i in 0usize..6, raw in prop::collection::vec(0u32..64, 1..40)) {
        let c = field(i);
        let p = poly(&c, &raw);
        prop_assert_eq!(interpolate(&c, &p.tabulate()).unwrap(), p);
    }

    #[test]
    fn display_parses_back(i in 0usize..6, raw in prop::collection::vec(0u32..64, 1..12)) {
        let c = field(i);
        let p = poly(&c, &raw);
        prop_assert_eq!(ppinv::parse_poly_expr(&p.to_string(), &c).unwrap(), p);
    }

    #[test]
    fn mul_inverse_composes_to_identity(i in 0usize..6, seed in any::<u64>()) {
        let c = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_mul(&mut rng, &c).unwrap();
        let inv = invert_multiplicative(&fam).unwrap();
        let f = PermTable::as_permutation(&c, fam.f_table().to_vec()).unwrap();
        prop_assert!(f.compose(&inv.table).unwrap().is_identity());
        prop_assert!(inv.table.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn translator_inverse_is_brute_inverse(i in 0usize..6, seed in any::<u64>()) {
        let c = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Ok(fam) = random_translator(&mut rng, &c) {
            let f = PermTable::as_permutation(&c, fam.f_table().to_vec()).unwrap();
            prop_assert_eq!(invert_translator(&fam).unwrap().table, f.inverse());
        }
    }

    #[test]
    fn descriptor_round_trips(r in 1u64..12, s in 1u64..7, e in 0u64..6) {
        let text = format!(
            r#"{{"family": "mul", "field": {{"p": 7, "n": 1}}, "r": {r}, "s": {s}, "h": "x^{e}"}}"#
        );
        match FamilyDescriptor::from_json(&text) {
            Ok(d) => {
                let again = FamilyDescriptor::from_json(&serde_json::to_string(&d).unwrap()).unwrap();
                prop_assert_eq!(d, again);
            }
            Err(err) => prop_assert!(false, "{err}"),
        }
    }
}

#[test]
fn mul_family_rejects_non_divisor() {
    let c = field(4);
    assert!(MulFamily::new(&c, 1, 4, vec![Elem::ONE; 7]).is_err());
}
