use krull_cli::{parse, render, ModuleExpr::*};

fn corpus() -> Vec<krull_cli::ModuleExpr> {
    vec![
        Free(0),
        Free(3),
        Bz2(2),
        S3q8,
        Bq8,
        Kvm(2),
        Example62,
        Susp(1, Box::new(Free(3))),
        Phi(Box::new(Phi(Box::new(Free(1))))),
        Tensor(Box::new(Free(1)), Box::new(Free(1))),
        Trunc(2, Box::new(Tensor(Box::new(Free(1)), Box::new(Phi(Box::new(Bz2(1))))))),
        Ufree(Box::new(Susp(1, Box::new(Free(0))))),
    ]
}

#[test]
fn documented_examples_parse() {
    assert_eq!(parse("tensor(free(1), free(1))"), Ok(Tensor(Box::new(Free(1)), Box::new(Free(1)))));
    assert_eq!(parse("phi(phi(free(1)))"), Ok(Phi(Box::new(Phi(Box::new(Free(1)))))));
    assert_eq!(parse("susp(1, free(3))"), Ok(Susp(1, Box::new(Free(3)))));
}

#[test]
fn render_then_parse_is_the_identity() {
    for e in corpus() {
        assert_eq!(parse(&render(&e)), Ok(e.clone()), "{e}");
    }
}

#[test]
fn whitespace_is_ignored() {
    let spaced = "  tensor (\n free ( 1 ) ,\tphi( free(2) ) )  ";
    assert_eq!(render(&parse(spaced).unwrap()), "tensor(free(1), phi(free(2)))");
}

#[test]
fn errors_carry_offsets_and_expected_tokens() {
    let e = parse("").unwrap_err();
    assert_eq!(e.offset, 0);
    assert!(e.expected.iter().any(|s| s == "tensor"));
    let e = parse("susp(1 free(3))").unwrap_err();
    assert_eq!((e.offset, e.expected_refs()), (7, vec![","]));
    let e = parse("tensor(free(1), free(1)").unwrap_err();
    assert_eq!((e.offset, e.expected_refs()), (23, vec![")"]));
    let e = parse("free(-1)").unwrap_err();
    assert_eq!((e.offset, e.expected_refs()), (5, vec!["integer"]));
    let e = parse("sq(1)").unwrap_err();
    assert_eq!(e.offset, 0);
}
