use burnside_core::pcgroup::{
    burnside_engine, load_pcp, normal_closure_by_enumeration, random_element, PcElement, PcPresentation, SubgroupEnum,
};
use burnside_core::presentation::{parse_presentation, Word};
use burnside_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const WHITEHEAD: &str = include_str!("../data/whitehead_half_cabling.pres");

/// 3x3 upper unitriangular matrices over GF(3), an independent model of
/// B(2,3).
type Heis = [u8; 3]; // (a, b, c) for [[1,a,c],[0,1,b],[0,0,1]]

fn heis_mul(x: Heis, y: Heis) -> Heis {
    [(x[0] + y[0]) % 3, (x[1] + y[1]) % 3, (x[2] + y[2] + x[0] * y[1]) % 3]
}

#[test]
fn vendored_presentations_load_with_expected_shape() {
    for (name, p, m, layers) in [
        ("B23", 3, 3, vec![2, 1]),
        ("B33", 3, 7, vec![3, 3, 1]),
        ("B43", 3, 14, vec![4, 6, 4]),
        ("B24", 2, 12, vec![4, 1, 2, 3, 2]),
    ] {
        let pc = load_pcp(name).unwrap();
        assert_eq!(pc.prime(), p, "{name}");
        assert_eq!(pc.len(), m, "{name}");
        assert_eq!(pc.lower_central_layers().unwrap(), layers, "{name}");
    }
    assert_eq!(load_pcp("B25").unwrap_err(), Error::UnknownPcp("B25".into()));
}

#[test]
fn b23_matches_word_enumeration_in_heisenberg_group() {
    // breadth-first closure of the two generators in the matrix model
    let gens: [Heis; 2] = [[1, 0, 0], [0, 1, 0]];
    let mut seen = vec![[0u8; 3]];
    let mut i = 0;
    while i < seen.len() {
        for g in gens {
            let y = heis_mul(seen[i], g);
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
        i += 1;
    }
    assert_eq!(seen.len(), 27);

    // the pc group maps onto it: x1 -> a, x2 -> b, g1^e1 g2^e2 g3^e3 with
    // g3 = [x2, x1]
    let pc = load_pcp("B23").unwrap();
    let image = |e: PcElement| -> Heis {
        let d = pc.digits(e);
        let mut acc = [0u8; 3];
        let g3 = {
            let (a, b) = (gens[0], gens[1]);
            // [b, a] = b^-1 a^-1 b a, with x^-1 = x^2 in exponent 3
            let sq = |x: Heis| heis_mul(x, x);
            heis_mul(heis_mul(heis_mul(sq(b), sq(a)), b), a)
        };
        for (k, g) in [gens[0], gens[1], g3].into_iter().enumerate() {
            for _ in 0..d[k] {
                acc = heis_mul(acc, g);
            }
        }
        acc
    };
    let all: Vec<PcElement> = pc.elements().collect();
    assert_eq!(all.len(), 27);
    let mut images: Vec<Heis> = all.iter().map(|&e| image(e)).collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), 27);
    for &a in &all {
        for &b in &all {
            assert_eq!(image(pc.multiply(a, b)), heis_mul(image(a), image(b)));
        }
    }
    let [x1, x2, g3] = [0, 1, 2].map(|i| pc.generator(i));
    assert_eq!(pc.commutator(x2, x1), g3);
    for &a in &all {
        for &b in &all {
            assert!(pc.left_normed(&[a, b, b]).unwrap().is_identity());
        }
    }
}

#[test]
fn exponent_laws() {
    for (name, n) in [("B23", 3), ("B33", 3), ("B24", 4)] {
        let pc = load_pcp(name).unwrap();
        assert!(pc.elements().all(|e| pc.power(e, n).is_identity()), "{name}");
    }
    let b24 = load_pcp("B24").unwrap();
    assert_eq!(b24.elements().count(), 4096);
    let x = b24.generator(0);
    assert!(b24.power(x, 2) != PcElement::IDENTITY);
    assert!(b24.multiply(b24.multiply(x, x), b24.multiply(x, x)).is_identity());

    let b43 = load_pcp("B43").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..100_000 {
        let e = random_element(&b43, &mut rng);
        assert!(b43.power(e, 3).is_identity());
    }
}

#[test]
fn group_axioms_on_random_triples() {
    for name in ["B23", "B33", "B43", "B24"] {
        let pc = load_pcp(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100_000 {
            let [a, b, c] = [0; 3].map(|_| random_element(&pc, &mut rng));
            assert_eq!(pc.multiply(pc.multiply(a, b), c), pc.multiply(a, pc.multiply(b, c)), "{name}");
            assert!(pc.multiply(a, pc.inverse(a)).is_identity());
            assert!(pc.multiply(pc.inverse(a), a).is_identity());
        }
        assert!(pc.inverse(PcElement::IDENTITY).is_identity());
    }
}

#[test]
fn b24_class_five_commutators() {
    let pc = load_pcp("B24").unwrap();
    let (x, y) = (pc.generator(0), pc.generator(1));
    let c5 = pc.left_normed(&[x, y, x, y, x]).unwrap();
    assert!(!c5.is_identity());
    assert_eq!(pc.leading(c5).map(|i| pc.weights()[i]), Some(5));
    assert!(pc.left_normed(&[x, y, x, y, x, y]).unwrap().is_identity());
    assert!(pc.commutator(x, x).is_identity());
    let closure = SubgroupEnum::normal_closure(&pc, &[c5]);
    assert_eq!(closure.order(&pc), 2);
}

#[test]
fn whitehead_relators_in_b24() {
    let pres = parse_presentation(WHITEHEAD).unwrap();
    let engine = burnside_engine(2, 4).unwrap();
    let pc = engine.pc();
    let r1 = engine.eval_word(&pres.relators()[0]).unwrap();
    let r2 = engine.eval_word(&pres.relators()[1]).unwrap();
    let (x, y) = (pc.generator(0), pc.generator(1));
    assert_eq!(r1, pc.left_normed(&[x, y, x, y, x]).unwrap());
    assert!(!r2.is_identity());
    let closure = engine.relator_closure(pres.relators()).unwrap();
    assert_eq!(closure.order(pc), 4);
    assert!(closure.verify(pc, true));
    assert_eq!(engine.quotient_order(pres.relators()).unwrap(), 1 << 10);
    assert_eq!(engine.quotient_order(&[]).unwrap(), 1 << 12);
    assert_eq!(engine.quotient_abelianization(pres.relators()).unwrap().to_string(), "Z4+Z4");
    assert_eq!(engine.quotient_abelianization(&[]).unwrap().to_string(), "Z4+Z4");
}

#[test]
fn sifting_closure_matches_enumeration() {
    let pc = load_pcp("B24").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let gens: Vec<PcElement> = (0..2).map(|_| random_element(&pc, &mut rng)).collect();
        let fast = SubgroupEnum::normal_closure(&pc, &gens);
        let slow = normal_closure_by_enumeration(&pc, &gens, 1 << 16).unwrap();
        assert_eq!(fast.order(&pc), slow.len() as u128);
        assert_eq!(fast.elements(&pc, 1 << 16).unwrap(), slow);
    }
    let trivial = SubgroupEnum::normal_closure(&pc, &[]);
    assert_eq!(trivial.order(&pc), 1);
    assert!(SubgroupEnum::full(&pc).elements(&pc, 100).is_err());
}

#[test]
fn closure_and_quotient_sizes_multiply_to_group_order() {
    let pc = load_pcp("B33").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let g = random_element(&pc, &mut rng);
        let n = SubgroupEnum::normal_closure(&pc, &[g]);
        assert!(n.verify(&pc, true));
        let elems = n.elements(&pc, 1 << 12).unwrap();
        for &a in elems.iter().take(40) {
            for k in 0..pc.len() {
                assert!(elems.contains(&pc.conjugate(a, pc.generator(k))));
            }
            assert!(elems.contains(&pc.inverse(a)));
        }
    }
}

#[test]
fn eval_word_edge_cases() {
    let engine = burnside_engine(2, 3).unwrap();
    assert!(engine.eval_word(&Word::empty()).unwrap().is_identity());
    assert_eq!(engine.eval_word(&Word(vec![3])), Err(Error::Unassigned(3)));
    let pc: &PcPresentation = engine.pc();
    // trefoil double cover group Z3 inside B(1,3)
    let z3 = burnside_engine(1, 3).unwrap();
    assert_eq!(z3.quotient_order(&[Word(vec![1, 1, 1])]).unwrap(), 3);
    assert_eq!(z3.quotient_abelianization(&[]).unwrap().to_string(), "Z3");
    assert_eq!(pc.len(), 3);
}

#[test]
fn engine_availability() {
    assert!(matches!(burnside_engine(3, 4), Err(Error::EngineTooSmall(_))));
    assert!(matches!(burnside_engine(5, 3), Err(Error::EngineTooSmall(_))));
    assert!(matches!(burnside_engine(2, 5), Err(Error::EngineTooSmall(_))));
    assert_eq!(burnside_engine(0, 4).unwrap().order(), 1);
    assert_eq!(burnside_engine(3, 2).unwrap().order(), 8);
    assert_eq!(burnside_engine(1, 4).unwrap().order(), 4);
    assert_eq!(burnside_engine(4, 3).unwrap().order(), 3u128.pow(14));
}
