use proptest::prelude::*;

use curvedg::cdg::{cocycles, h_n, hom_space, validate_module, CdgModule, HomComplex, HomElement};
use curvedg::constructions::{cone, twist};
use curvedg::linalg::{Field, Matrix};
use curvedg::random::Sampler;
use curvedg::registry::{Registry, RingEntry, RingKind};

fn entry(kind: usize, field: bool) -> RingEntry {
    let f = if field { Field::Prime(2) } else { Field::Rational };
    let reg = Registry::new(f).unwrap();
    reg.entry(RingKind::ALL[kind]).clone()
}

fn pair(e: &RingEntry, seed: u64, max_dim: usize) -> (CdgModule, CdgModule) {
    let mut s = Sampler::new(seed);
    (s.module(e, max_dim).unwrap(), s.module(e, max_dim).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_complex_squares_to_zero(kind in 0..3usize, field: bool, seed: u64) {
        let e = entry(kind, field);
        let (x, y) = pair(&e, seed, 5);
        prop_assert!(HomComplex::new(&x, &y).unwrap().squares_to_zero());
    }

    #[test]
    fn cone_sequence_is_exact(kind in 0..3usize, field: bool, seed: u64) {
        let e = entry(kind, field);
        let mut s = Sampler::new(seed);
        let x = s.module(&e, 3).unwrap();
        let y = s.module(&e, 3).unwrap();
        let f = s.closed_morphism(&x, &y).unwrap();
        let c = cone(&f).unwrap();
        let (i, p) = (&c.inclusion.map, &c.projection.map);
        prop_assert!((p * i).is_zero());
        prop_assert_eq!(i.rank(), y.dim());
        prop_assert_eq!(p.rank(), x.dim());
        prop_assert_eq!(c.cone.dim(), x.dim() + y.dim());
        prop_assert!(c.inclusion.is_closed() && c.projection.is_closed());
    }

    #[test]
    fn twist_by_closed_degree_one_map_round_trips(kind in 0..3usize, field: bool, seed: u64) {
        let e = entry(kind, field);
        let mut s = Sampler::new(seed);
        let (x, y) = pair(&e, seed, 3);
        let z = cocycles(&x, &y, 1).unwrap();
        prop_assume!(z.dim() > 0);
        let coords: Vec<_> = (0..z.dim()).map(|_| s.scalar(x.field())).collect();
        let f = z.element(&coords);
        let m = CdgModule::direct_sum(&[&x, &y]).unwrap();
        let mut a = Matrix::zeros(m.field(), m.dim(), m.dim());
        for r in 0..y.dim() {
            for c in 0..x.dim() {
                a[(x.dim() + r, c)] = f[(r, c)].clone();
            }
        }
        let a = HomElement::new(&m, &m, 1, a).unwrap();
        let twisted = twist(&m, &a).unwrap();
        prop_assert!(validate_module(twisted.ring(), twisted.module(), twisted.d()).is_valid());
        let back_a = HomElement::new(&twisted, &twisted, 1, a.neg().map).unwrap();
        prop_assert_eq!(twist(&twisted, &back_a).unwrap(), m);
    }

    #[test]
    fn shifts_compose_and_move_hom_degrees(kind in 0..3usize, field: bool, seed: u64, k in -1i64..=1) {
        let e = entry(kind, field);
        let (x, y) = pair(&e, seed, 4);
        prop_assert_eq!(&x.shift(k).unwrap().shift(-k).unwrap(), &x);
        for n in -1..=1 {
            let both = hom_space(&x.shift(k).unwrap(), &y.shift(k).unwrap(), n).unwrap().dim();
            prop_assert_eq!(both, hom_space(&x, &y, n).unwrap().dim());
            let moved = h_n(&x, &y.shift(k).unwrap(), n).unwrap().dim;
            prop_assert_eq!(moved, h_n(&x, &y, n + k).unwrap().dim);
        }
    }
}
