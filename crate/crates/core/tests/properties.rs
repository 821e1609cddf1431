use loopalgebra::hyperbolic::{classify, translation_length, IsometryKind};
use loopalgebra::word::free_reduce;
use loopalgebra::*;
use proptest::prelude::*;

fn word_in(genus: usize, max: usize) -> impl Strategy<Value = Word> {
    let letters = Presentation::new(genus).unwrap().letters();
    prop::collection::vec(prop::sample::select(letters), 0..=max).prop_map(|v| free_reduce(&Word(v)))
}

fn genus_and_words(max: usize, n: usize) -> impl Strategy<Value = (usize, Vec<Word>)> {
    (2usize..=3).prop_flat_map(move |g| (Just(g), prop::collection::vec(word_in(g, max), n)))
}

fn nontrivial_class(p: &Presentation, w: &Word) -> Option<ConjugacyClass> {
    let c = p.canonical_class(w);
    (!c.is_identity()).then_some(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dehn_reduction_is_idempotent((g, ws) in genus_and_words(14, 1)) {
        let p = Presentation::new(g).unwrap();
        let once = p.dehn_reduce(&ws[0]);
        prop_assert!(once.len() <= ws[0].len());
        prop_assert_eq!(p.dehn_reduce(&once), once.clone());
        prop_assert_eq!(p.is_identity(&once), p.is_identity(&ws[0]));
    }

    #[test]
    fn products_with_inverses_vanish((g, ws) in genus_and_words(12, 2)) {
        let p = Presentation::new(g).unwrap();
        prop_assert!(p.is_identity(&ws[0].concat(&ws[0].inverse())));
        let conjugated = p.relator().conjugate_by(&ws[1]);
        prop_assert!(p.is_identity(&ws[0].concat(&conjugated).concat(&ws[0].inverse())));
    }

    #[test]
    fn words_print_and_parse_back((g, ws) in genus_and_words(12, 1)) {
        prop_assert_eq!(parse_word(&ws[0].to_string(), g).unwrap(), ws[0].clone());
    }

    #[test]
    fn canonical_class_ignores_conjugation((g, ws) in genus_and_words(8, 2)) {
        let p = Presentation::new(g).unwrap();
        let (w, u) = (&ws[0], &ws[1]);
        let c = p.canonical_class(w);
        prop_assert_eq!(p.canonical_class(&w.conjugate_by(u)), c.clone());
        prop_assert!(p.are_conjugate(w, &w.conjugate_by(u)));
        prop_assert_eq!(p.canonical_class(c.word()), c);
    }

    #[test]
    fn abelianization_is_a_homomorphism((g, ws) in genus_and_words(12, 2)) {
        let p = Presentation::new(g).unwrap();
        let ab = |w: &Word| HomologyVector::abelianize(w, g);
        prop_assert_eq!(ab(&ws[0].concat(&ws[1])), &ab(&ws[0]) + &ab(&ws[1]));
        prop_assert!(ab(p.relator()).is_zero());
        prop_assert_eq!(ab(&ws[0].inverse()), -&ab(&ws[0]));
    }

    #[test]
    fn pairing_is_antisymmetric_and_bilinear((g, ws) in genus_and_words(12, 3)) {
        let ab = |w: &Word| HomologyVector::abelianize(w, g);
        let (u, v, w) = (ab(&ws[0]), ab(&ws[1]), ab(&ws[2]));
        let pair = |x: &HomologyVector, y: &HomologyVector| intersection_pairing(x, y).unwrap();
        prop_assert_eq!(pair(&u, &v), -pair(&v, &u));
        prop_assert_eq!(pair(&u, &u), 0);
        prop_assert_eq!(pair(&(&u + &v), &w), pair(&u, &w) + pair(&v, &w));
    }

    #[test]
    fn translation_length_scales_with_powers((g, ws) in genus_and_words(8, 1), n in 2i64..=4) {
        let rep = Representation::new(g).unwrap();
        let p = rep.presentation();
        prop_assume!(!p.is_identity(&ws[0]));
        let m = rep.evaluate(&ws[0]);
        prop_assert_eq!(classify(&m, 1e-9), IsometryKind::Hyperbolic);
        let l1 = translation_length(&m).unwrap();
        let ln = translation_length(&rep.evaluate(&ws[0].pow(n))).unwrap();
        prop_assert!((ln - n as f64 * l1).abs() <= 1e-6 * ln.max(1.0), "{} vs {}", ln, n as f64 * l1);
    }

    #[test]
    fn levels_multiply_under_powers((g, ws) in genus_and_words(6, 1), n in 1i64..=3) {
        let p = Presentation::new(g).unwrap();
        prop_assume!(!p.is_identity(&ws[0]));
        let l = p.level(&ws[0]).unwrap() as i64;
        prop_assert_eq!(p.level(&ws[0].pow(n)).unwrap() as i64, n * l);
        let root = p.primitive_root(&ws[0]).unwrap();
        prop_assert!(p.are_conjugate(&root.power(), &ws[0]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric_with_exact_shadow((g, ws) in genus_and_words(9, 2)) {
        let rep = Representation::new(g).unwrap();
        let p = rep.presentation();
        let (Some(c1), Some(c2)) = (nontrivial_class(p, &ws[0]), nontrivial_class(p, &ws[1])) else {
            return Ok(());
        };
        let b12 = goldman_bracket(&rep, &c1, &c2).unwrap();
        let b21 = goldman_bracket(&rep, &c2, &c1).unwrap();
        prop_assert_eq!(&b12, &-&b21);
        let shadow = intersection_pairing(
            &HomologyVector::abelianize(c1.word(), g),
            &HomologyVector::abelianize(c2.word(), g),
        )
        .unwrap();
        prop_assert_eq!(b12.total(), shadow);
    }

    #[test]
    fn brackets_with_powers_of_a_class_vanish((g, ws) in genus_and_words(6, 1), n in 1i64..=3) {
        let rep = Representation::new(g).unwrap();
        let p = rep.presentation();
        let Some(c) = nontrivial_class(p, &ws[0]) else { return Ok(()) };
        let power = p.canonical_class(&c.word().pow(n));
        prop_assert!(goldman_bracket(&rep, &c, &power).unwrap().is_zero());
    }

    #[test]
    fn serialized_elements_round_trip((g, ws) in genus_and_words(6, 3), coeffs in prop::collection::vec(-5i64..=5, 5)) {
        let st = StringTopology::new(g).unwrap();
        let p = st.presentation();
        let mut x = HomologyElement::unit(g).scaled(coeffs[0]);
        x.add_scaled(&HomologyElement::class(g, p.canonical_class(&ws[0])), coeffs[1]);
        x.add_scaled(&HomologyElement::surface(HomologyVector::abelianize(&ws[1], g)), coeffs[2]);
        if let Ok(t) = HomologyElement::tilde(g, p.canonical_class(&ws[2])) {
            x.add_scaled(&t, coeffs[3]);
        }
        let json = x.to_json();
        prop_assert_eq!(HomologyElement::from_json(&json, p).unwrap().to_json(), json);
        prop_assert_eq!(HomologyElement::parse(&x.to_string(), p).unwrap(), x.clone());

        let d = st.delta(&x).unwrap();
        prop_assert!(st.delta(&d).unwrap().is_zero());
        prop_assert_eq!(st.product(&HomologyElement::unit(g), &x).unwrap(), x.clone());
        let co = st.coproduct(&x);
        let json = co.to_json();
        prop_assert_eq!(CoproductResult::from_json(&json, p).unwrap().to_json(), json);

        let b = BracketResult::from_terms(ws.iter().map(|w| p.canonical_class(w)).zip(coeffs.iter().copied()));
        let json = b.to_json();
        prop_assert_eq!(BracketResult::from_json(&json, p).unwrap().to_json(), json);
    }
}
