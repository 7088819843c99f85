use std::sync::Arc;

use gradal_core::element::{Element, Fraction, Ring};
use gradal_core::harness::gen;
use gradal_core::harness::{generate_instance, trial_rng, Profile};
use gradal_core::ringexpr::NormalForm;
use proptest::prelude::*;
use rand::Rng;

const PROFILES: [Profile; 4] = [
    Profile::EntireTorsionfreeKernel,
    Profile::TorsionKernel,
    Profile::SimpleFullSupport,
    Profile::FreeSummand,
];

fn elements(seed: u64, profile: usize) -> (Ring, Vec<Element>, gen::Rng8) {
    let mut rng = trial_rng(seed, profile);
    let inst = generate_instance(&mut rng, PROFILES[profile]);
    let ring = inst.ring.clone();
    let xs = (0..3)
        .map(|_| {
            let k = rng.gen_range(0..3);
            let mut x = Element::zero(&ring);
            for _ in 0..=k {
                let t = gen::homogeneous(&mut rng, &ring, &ring.delta, 2, true);
                x = &x + &t;
            }
            x
        })
        .collect();
    (ring, xs, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(seed in any::<u64>(), profile in 0usize..4) {
        let (ring, v, _) = elements(seed, profile);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let one = Element::one(&ring);
        prop_assert_eq!(&(x * y) * z, x * &(y * z));
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(x * &(y + z), &(x * y) + &(x * z));
        prop_assert_eq!(x * &one, x.clone());
        prop_assert!((x - x).is_zero());
    }

    #[test]
    fn degrees_add(seed in any::<u64>(), profile in 0usize..4) {
        let (ring, _, mut rng) = elements(seed, profile);
        let x = gen::homogeneous(&mut rng, &ring, &ring.delta, 3, true);
        let y = gen::homogeneous(&mut rng, &ring, &ring.delta, 3, true);
        let xy = &x * &y;
        if ring.is_entire() {
            prop_assert!(!xy.is_zero());
        }
        if !xy.is_zero() {
            let d = ring.g.add(&x.degree_of().unwrap().unwrap(), &y.degree_of().unwrap().unwrap());
            prop_assert_eq!(xy.degree_of().unwrap(), Some(d));
        }
    }

    #[test]
    fn coarsening_is_functorial(seed in any::<u64>(), profile in 0usize..4) {
        let mut rng = trial_rng(seed, profile);
        let inst = generate_instance(&mut rng, PROFILES[profile]);
        let phi = gen::surjection(&mut rng, inst.psi.codomain(), 1, |_, _, _| true).unwrap();
        let twice = inst.ring.coarsen(&inst.psi).unwrap().coarsen(&phi).unwrap();
        let once = inst.ring.coarsen(&phi.compose(&inst.psi).unwrap()).unwrap();
        prop_assert_eq!(twice, once);
        for s in &inst.samples {
            let c: Ring = Arc::new(inst.ring.coarsen(&inst.psi).unwrap());
            prop_assert!(s.reparent(&c).unwrap().is_homogeneous());
        }
    }

    #[test]
    fn kernels_and_sections(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let g = gen::group(&mut rng, 3, 2);
        let h = gen::group(&mut rng, 2, 2);
        let f = gen::hom(&mut rng, &g, &h, 3);
        let k = f.kernel();
        for x in k.group.generators() {
            prop_assert!(h.is_zero(&f.apply(&k.inclusion.apply(&x))));
        }
        let y = f.apply(&gen::element(&mut rng, &g, 3));
        let pre = f.preimage(&y).unwrap();
        prop_assert_eq!(f.apply(&pre), y);
        if let Some(psi) = gen::surjection(&mut rng, &g, 2, |_, _, _| true) {
            if let Some(pi) = psi.find_section().unwrap() {
                let id = psi.compose(&pi).unwrap();
                for x in psi.codomain().generators() {
                    prop_assert_eq!(id.apply(&x), x);
                }
            }
        }
    }

    #[test]
    fn fractions_cancel(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 1);
        let inst = generate_instance(&mut rng, Profile::EntireTorsionfreeKernel);
        let q: Ring = Arc::new(inst.ring.fraction_field().unwrap());
        let poly: Ring = Arc::new(NormalForm::polynomial_ring(&q));
        let a = gen::homogeneous(&mut rng, &poly, &poly.delta, 3, true);
        let b = gen::homogeneous(&mut rng, &poly, &poly.delta, 2, false);
        let x = Fraction::new(&q, a.clone(), b.clone()).unwrap();
        let back = x.try_mul(&Fraction::from_element(&q, b).unwrap()).unwrap();
        prop_assert!(back.equals(&Fraction::from_element(&q, a).unwrap()).unwrap());
    }
}
