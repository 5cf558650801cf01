use etcs_core::dsl::{parse, pretty, run, Severity};
use etcs_core::verifier::{Config, Verdict, Witness};
use proptest::prelude::*;

fn cfg() -> Config {
    Config::default()
}

#[test]
fn associativity_on_a_triple() {
    let ex = run(
        "set X = {a, b}\nset Y = {0, 1}\n\
         fn f : X -> Y = {a |-> 0, b |-> 1}\nfn g : Y -> X = {0 |-> b, 1 |-> b}\nfn h : X -> X = {a |-> b, b |-> a}\n\
         assert h . g . f == h . g . f\nassert h . id(X) == h",
        &cfg(),
    );
    assert_eq!(ex.exit_code, 0, "{:?}", ex.diagnostics);
    assert_eq!(ex.reports.len(), 2);
    assert!(ex.reports.iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn function_set_cardinality() {
    let ex = run("set X = {a, b}\nset Y = {0, 1}\nassert |funcset(X, Y)| == 4", &cfg());
    assert_eq!(ex.exit_code, 0);
    assert_eq!(ex.reports[0].verdict, Verdict::Pass);
    // oracle: every choice of image for a, then for b
    let ys = ["0", "1"];
    let graphs: Vec<(&str, &str)> = ys.iter().flat_map(|fa| ys.iter().map(move |fb| (*fa, *fb))).collect();
    assert_eq!(graphs.len(), 4);
}

#[test]
fn false_equation_names_the_element() {
    let ex = run(
        "set X = {a, b}\nfn f : X -> X = {a |-> a, b |-> a}\nfn g : X -> X = {a |-> a, b |-> b}\nassert f == g",
        &cfg(),
    );
    assert_eq!(ex.exit_code, 1);
    match &ex.reports[0].witness {
        Some(Witness::Element { element, left, right }) => {
            assert_eq!((element.as_str(), left.as_str(), right.as_str()), ("b", "a", "b"));
        }
        other => panic!("unexpected witness {other:?}"),
    }
}

#[test]
fn composition_mismatch_is_located() {
    let ex = run("set X = {a}\nset Y = {0}\nfn f : X -> Y = {a |-> 0}\nassert f . f == f", &cfg());
    assert_eq!(ex.exit_code, 2);
    let d = &ex.diagnostics[0];
    assert_eq!(d.severity, Severity::Error);
    assert_eq!((d.line, d.col), (4, 8));
    assert!(d.message.contains("composition mismatch"));
}

#[test]
fn naturals_in_a_function_set_are_unsupported() {
    let ex = run("set X = {a}\nlet F = funcset(nat, X)", &cfg());
    assert_eq!(ex.exit_code, 2);
    assert!(ex.diagnostics[0].message.contains("unsupported infinite"));
}

#[test]
fn recursion_and_arithmetic() {
    let ex = run(
        "let add3 = recurse(nat, 3, succ)\nlet times3 = recurse(nat, 0, add3)\n\
         assert add3(4) == 7\nassert times3(5) == 15\n\
         set X = {p, q}\nfn r : X -> X = {p |-> q, q |-> p}\nlet x = recurse(X, p, r)\nassert x(7) == q",
        &cfg(),
    );
    assert_eq!(ex.exit_code, 0, "{:?}", ex.diagnostics);
    assert_eq!(ex.reports.len(), 3);
}

#[test]
fn bound_is_configurable() {
    let small = Config { nat_bound: 5, ..cfg() };
    let ex = run("let s = recurse(nat, 0, succ)\nassert s(9) == 9", &small);
    assert_eq!(ex.exit_code, 2);
    assert!(ex.diagnostics[0].message.contains("bound 5"));
}

#[test]
fn constructions_bind_their_parts() {
    let src = "set X = {a, b, c}\nset I = {i, j}\nfn p : X -> I = {a |-> i, b |-> i, c |-> j}\n\
               let (P, pr1, pr2) = product(X, I)\nlet (A, incl) = fibre(p, i)\nlet chi = classify(incl)\n\
               let s = choice(p)\nlet (Q, q) = quotient(X, {a ~ b})\nlet (S, inl, inr) = coproduct(X, I)\n\
               let (T, t) = indexedprod(p)\nlet (Z, z) = integers(3)\n\
               assert |P| == 6\nassert |A| == 2\nassert p . s == id(I)\nassert |Q| == 2\nassert |S| == 5\n\
               assert |T| == 2\nassert |Z| == 7\nassert chi . incl == chi . incl";
    let ex = run(src, &cfg());
    assert_eq!(ex.exit_code, 0, "{:?}", ex.diagnostics);
    assert_eq!(ex.reports.len(), 8);
}

#[test]
fn non_transitive_relation() {
    let ex = run("set X = {a, b, c}\nlet Q = quotient(X, {a ~ b, b ~ c})", &cfg());
    assert_eq!(ex.exit_code, 2);
    assert!(ex.diagnostics[0].message.contains("transitivity"));
    assert_eq!((ex.diagnostics[0].line, ex.diagnostics[0].col), (2, 21));
}

#[test]
fn checks_and_mutations() {
    let ex = run("check A5, A10 size 2\ncheck A5 size 2 with swap_projection", &cfg());
    assert_eq!(ex.exit_code, 1);
    let verdicts: Vec<_> = ex.reports.iter().map(|r| (r.axiom_id.as_str(), r.verdict)).collect();
    assert_eq!(verdicts, vec![("A5", Verdict::Pass), ("A10", Verdict::Pass), ("A5", Verdict::Fail)]);
}

#[test]
fn mutation_on_an_untargeted_check_warns() {
    let ex = run("check A1 size 1 with break_curry", &cfg());
    assert_eq!(ex.exit_code, 0);
    assert_eq!(ex.diagnostics[0].severity, Severity::Warning);
}

#[test]
fn budget_errors_are_diagnostics() {
    let tight = Config { ceiling: 100, ..cfg() };
    let ex = run("check A5 size 3\nset X = {a}\nassert |X| == 1", &tight);
    assert_eq!(ex.exit_code, 2);
    assert!(ex.diagnostics[0].message.contains("budget"));
    // later statements still run
    assert_eq!(ex.reports.len(), 1);
}

fn atom() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["a", "b", "c", "0", "1", "x_1"]).prop_map(String::from)
}

/// Well-formed scripts over two sets and a function between them.
fn script() -> impl Strategy<Value = String> {
    (prop::collection::btree_set(atom(), 1..4), prop::collection::btree_set(atom(), 1..4), any::<u64>(), 0usize..6)
        .prop_map(|(xs, ys, pick, tail)| {
            let xs: Vec<String> = xs.into_iter().collect();
            let ys: Vec<String> = ys.into_iter().collect();
            let map: Vec<String> =
                xs.iter().enumerate().map(|(k, x)| format!("{x} |-> {}", ys[(pick as usize + k) % ys.len()])).collect();
            let mut s = format!("set X = {{{}}}\nset Y = {{{}}}\nfn f : X -> Y = {{{}}}\n", xs.join(","), ys.join(" , "), map.join(",\n  "));
            let extra = [
                "let (P, p, q) = product(X, Y)\n",
                "assert |funcset(X, Y)| == 1\n",
                "let (A, i) = fibre(f, %y)\n",
                "assert f . id(X) == f\n",
                "check A2, A3 size 1   # comment\n",
                "let (Q, pr) = quotient(X, {})\n",
            ];
            for e in &extra[..tail] {
                s.push_str(&e.replace("%y", &ys[0]));
            }
            s
        })
}

proptest! {
    #[test]
    fn pretty_print_round_trips(src in script()) {
        let s = parse(&src).unwrap();
        let text = pretty(&s);
        let again = parse(&text).unwrap();
        prop_assert_eq!(&s, &again);
        prop_assert_eq!(pretty(&again), text);
    }

    #[test]
    fn diagnostics_point_inside_the_source(src in "[a-z{}():=|>.~, \n-]{0,60}") {
        if let Err(diags) = parse(&src) {
            prop_assert!(!diags.is_empty());
            let lines: Vec<&str> = src.split('\n').collect();
            for d in diags {
                prop_assert!(d.line >= 1 && d.line <= lines.len());
                prop_assert!(d.col >= 1 && d.col <= lines[d.line - 1].chars().count() + 1);
            }
        }
    }

    #[test]
    fn execution_is_deterministic(src in script()) {
        let a = run(&src, &cfg());
        let b = run(&src, &cfg());
        prop_assert_eq!(a.exit_code, b.exit_code);
        prop_assert_eq!(&a.diagnostics, &b.diagnostics);
        let strip = |ex: &etcs_core::dsl::Execution| ex.reports.iter().map(|r| (r.axiom_id.clone(), r.instance.clone(), r.verdict, r.witness.clone())).collect::<Vec<_>>();
        prop_assert_eq!(strip(&a), strip(&b));
    }
}

