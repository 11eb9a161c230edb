use redic_core::canon::is_isomorphic;
use redic_core::reduction::*;
use redic_core::solver::{forced_detectors, Budget};
use redic_core::CodeKind;

#[test]
fn variable_gadget_search_finds_the_stored_gadget() {
    let stored = GadgetSpec::stored_variable_gadget();
    let found = find_variable_gadget(Budget::seconds(600.0)).expect("search finishes");
    assert_eq!(found, stored);
    let all = variable_gadget_solutions();
    assert_eq!(all.len(), 8);
    assert!(all.iter().all(|s| is_isomorphic(&s.graph, &stored.graph)));
    assert!(all.contains(&stored));
    assert_eq!(GadgetSpec::from_json(&stored.to_json()).unwrap(), stored);
}

#[test]
fn reduction_sizes_and_forced_vertices() {
    let f = GadgetSpec::stored_variable_gadget();
    let h = find_clause_gadget();
    let formulas = [
        (3, vec![vec![1, 2, 3]]),
        (4, vec![vec![1, -2, 3], vec![-1, 2, 4], vec![2, 3, -4]]),
        (
            5,
            vec![
                vec![1, 2, 3],
                vec![-3, 4, 5],
                vec![-1, -4, 2],
                vec![5, -2, 1],
            ],
        ),
    ];
    for (n, clauses) in formulas {
        let phi = CnfFormula::new(n, &clauses).unwrap();
        let m = clauses.len();
        let red = build_reduction(&phi, &f, &h).unwrap();
        assert_eq!(red.graph.order(), 8 * n + 3 * m);
        assert_eq!(red.graph.edge_count(), 8 * n + 5 * m);
        assert_eq!(red.k, 7 * n + 3 * m);
        assert_eq!(red.gadget_forced.len(), 6 * n + 3 * m);
        let forced = forced_detectors(&red.graph, CodeKind::RedIc);
        assert!(red.gadget_forced.is_subset(forced));
        assert_eq!(
            red.graph.label(red.literal_vertex(2, false)),
            Some("x_neg2")
        );
    }
    let unused = CnfFormula::new(4, &[vec![1, 2, 3]]).unwrap();
    assert_eq!(
        build_reduction(&unused, &f, &h).unwrap_err(),
        ReductionError::UnusedVariable(4)
    );
    assert!(build_reduction(&unused, &h, &f).is_err());
}

#[test]
fn small_formulas_reduce_correctly() {
    let f = GadgetSpec::stored_variable_gadget();
    let h = find_clause_gadget();
    let formulas = three_variable_formulas(4);
    assert_eq!(formulas.len(), 494);
    for phi in formulas.iter().step_by(7) {
        let rep = verify_reduction(phi, &f, &h, Budget::UNLIMITED).unwrap();
        assert_eq!(rep.holds, Some(true), "{}", phi.to_dimacs());
    }
}

#[test]
fn dimacs_round_trip_and_errors() {
    let phi = parse_dimacs("c demo\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n").unwrap();
    assert_eq!(parse_dimacs(&phi.to_dimacs()).unwrap(), phi);
    assert!(brute_force_sat(&phi).unwrap());
    assert!(parse_dimacs("p cnf 3 1\n1 2 0\n").is_err());
    assert!(parse_dimacs("p cnf 3 1\n1 1 2 0\n").is_err());
    assert!(parse_dimacs("p cnf 3 1\n1 2 4 0\n").is_err());
    assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
    assert!(parse_dimacs("1 2 3 0\n").is_err());
}
