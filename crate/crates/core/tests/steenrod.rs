use krull_core::steenrod::*;

fn word(e: &[u32]) -> SqPoly {
    adem_normalize(&SqWord::new(e.iter().copied()))
}

fn poly(terms: &[&[u32]]) -> SqPoly {
    let mut p = SqPoly::zero();
    for t in terms {
        p.toggle(Monomial::new(t.to_vec()).expect("admissible"));
    }
    p
}

#[test]
fn low_degree_relations() {
    assert!(word(&[1, 1]).is_zero());
    assert_eq!(word(&[1, 2]), poly(&[&[3]]));
    assert_eq!(word(&[2, 2]), poly(&[&[3, 1]]));
    assert_eq!(word(&[2, 3]), poly(&[&[5], &[4, 1]]));
    assert_eq!(word(&[3, 3]), poly(&[&[5, 1]]));
    assert_eq!(word(&[1, 4]), poly(&[&[5]]));
    assert_eq!(word(&[3, 5]), poly(&[&[7, 1]]));
    assert_eq!(word(&[2, 4]), poly(&[&[6], &[5, 1]]));
}

#[test]
fn admissible_words_are_normal_forms() {
    for (e, admissible) in [(&[2u32, 1][..], true), (&[4, 2, 1], true), (&[1, 2], false), (&[3, 2], false)] {
        assert_eq!(SqWord::new(e.iter().copied()).is_admissible(), admissible, "{e:?}");
    }
    let m = Monomial::new(vec![4, 2, 1]).unwrap();
    assert_eq!(m.degree(), 7);
    assert_eq!(m.excess(), 1);
    assert_eq!(word(&[4, 2, 1]), SqPoly::from_monomial(m));
}

#[test]
fn dimensions_of_the_steenrod_algebra() {
    // partitions into parts 1, 3, 7, 15, ...
    let want = [1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 6, 6, 7];
    for (d, &n) in want.iter().enumerate() {
        assert_eq!(all_admissibles(d as u32).len(), n, "degree {d}");
    }
}

#[test]
fn composition_is_associative_in_low_degrees() {
    let gens: Vec<SqPoly> = (1..=5).map(SqPoly::sq).collect();
    for a in &gens {
        for b in &gens {
            for c in &gens {
                assert_eq!(compose(&compose(a, b), c), compose(a, &compose(b, c)));
            }
        }
    }
}

#[test]
fn exhaustive_suite_passes() {
    let report = krull_core::suites::suite("adem").unwrap().run(30);
    let failures: Vec<_> = report.failures().collect();
    assert!(report.passed(), "{failures:#?}");
}
