//! Cross-module semantic properties, checked against the finite-model
//! oracle and by brute force on small inputs.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::Rng;

use classic_core::automata::path_automaton;
use classic_core::canonical::{canonicalize, is_canonical};
use classic_core::concept::AttrChain;
use classic_core::graph::fresh_node_id;
use classic_core::interp::{eval_concept, eval_graph, find_countermodel};
use classic_core::lcs_total::{lcs_exists, lcs_existence, lcs_total};
use classic_core::parser::parse_concept;
use classic_core::product::lcs2;
use classic_core::subsume::{
    canonical_graph, equivalent, subsumes, subsumes_graph, subsumes_total, subsumes_total_graph,
};
use classic_core::{Concept, DescriptionGraph, NodeLabel, Semantics, Signature};

#[test]
fn concept_and_graph_semantics_agree() {
    let mut rng = rng(101);
    let profile = Profile::medium();
    for _ in 0..200 {
        let c = random_concept(&mut rng, &profile, 2);
        let syms = joint_symbols(&[&c]);
        let m = rng.gen_range(1..=2);
        let i = random_interpretation(&mut rng, &syms, m, Semantics::Partial);
        let g = DescriptionGraph::from_concept(&c);
        for d in 0..m {
            assert_eq!(
                eval_concept(&c, &i, d),
                eval_graph(&g, &i, d),
                "translation changed semantics of {c} at {d}"
            );
        }
    }
}

#[test]
fn merged_graphs_mean_conjunction() {
    let mut rng = rng(102);
    let profile = Profile::medium();
    for _ in 0..150 {
        let c1 = random_concept(&mut rng, &profile, 1);
        let c2 = random_concept(&mut rng, &profile, 1);
        let syms = joint_symbols(&[&c1, &c2]);
        let m = rng.gen_range(1..=2);
        let i = random_interpretation(&mut rng, &syms, m, Semantics::Partial);
        let g1 = DescriptionGraph::from_concept(&c1);
        let g2 = DescriptionGraph::from_concept(&c2);
        let merged = DescriptionGraph::merge(g1.clone(), g2.clone());
        for d in 0..m {
            assert_eq!(
                eval_graph(&merged, &i, d),
                eval_graph(&g1, &i, d) && eval_graph(&g2, &i, d),
                "merge broke conjunction for {c1} ⊓ {c2}"
            );
        }
    }
}

#[test]
fn normalization_preserves_semantics() {
    let mut rng = rng(103);
    let profile = Profile::medium();
    for round in 0..150 {
        // Alternate concept-translated graphs and direct random graphs.
        let g = if round % 2 == 0 {
            DescriptionGraph::from_concept(&random_concept(&mut rng, &profile, 2))
        } else {
            random_connected_graph(&mut rng, &profile, 4, 1)
        };
        let syms = graph_symbols(&g);
        let m = rng.gen_range(1..=2);
        let i = random_interpretation(&mut rng, &syms, m, Semantics::Partial);
        let canon = canonicalize(g.clone());
        assert!(is_canonical(&canon));
        for d in 0..m {
            assert_eq!(
                eval_graph(&g, &i, d),
                eval_graph(&canon, &i, d),
                "normalization changed semantics (round {round})"
            );
        }
    }
}

#[test]
fn pruning_preserves_semantics() {
    let mut rng = rng(104);
    let profile = Profile::medium();
    for _ in 0..100 {
        let mut g = random_connected_graph(&mut rng, &profile, 3, 0);
        // Attach junk that the root cannot reach.
        let orphan = g.add_node(NodeLabel::with_atoms([classic_core::Atom::Name(
            "B".to_string(),
        )]));
        let orphan2 = g.add_node(NodeLabel::Incoherent);
        g.add_edge(orphan, "f", orphan2);
        let pruned = g.clone().prune_unreachable();
        assert!(pruned.node_ids().count() < g.node_ids().count());
        let syms = graph_symbols(&g);
        let m = rng.gen_range(1..=2);
        let i = random_interpretation(&mut rng, &syms, m, Semantics::Partial);
        for d in 0..m {
            assert_eq!(eval_graph(&g, &i, d), eval_graph(&pruned, &i, d));
        }
    }
}

#[test]
fn graph_translation_round_trips_semantically() {
    let mut rng = rng(105);
    let profile = Profile::medium();
    for _ in 0..150 {
        let g = random_connected_graph(&mut rng, &profile, 4, 1);
        let c = g.to_concept();
        let syms = graph_symbols(&g);
        let m = rng.gen_range(1..=2);
        let i = random_interpretation(&mut rng, &syms, m, Semantics::Partial);
        for d in 0..m {
            assert_eq!(
                eval_graph(&g, &i, d),
                eval_concept(&c, &i, d),
                "translated concept {c} diverged from its graph"
            );
        }
    }
}

#[test]
fn total_interpretations_are_partial_interpretations() {
    let mut rng = rng(106);
    let profile = Profile::medium();
    for _ in 0..50 {
        let c = random_concept(&mut rng, &profile, 2);
        let syms = joint_symbols(&[&c]);
        let mut i = random_interpretation(&mut rng, &syms, 2, Semantics::Total);
        let before: Vec<bool> = (0..2).map(|d| eval_concept(&c, &i, d)).collect();
        i.mode = Semantics::Partial;
        i.validate().unwrap();
        let after: Vec<bool> = (0..2).map(|d| eval_concept(&c, &i, d)).collect();
        assert_eq!(before, after);
    }
}

#[test]
fn subsumption_is_reflexive() {
    let mut rng = rng(107);
    let profile = Profile::medium();
    for _ in 0..100 {
        let c = random_concept(&mut rng, &profile, 2);
        assert!(subsumes(&c, &c), "reflexivity failed for {c}");
    }
    for _ in 0..100 {
        let c = random_s_concept(&mut rng, &["f", "g"], 3, 3);
        assert!(subsumes_total(&c, &c).unwrap());
    }
}

#[test]
fn subsumption_is_transitive_on_weakening_chains() {
    let mut rng = rng(108);
    let profile = Profile::medium();
    let mut hits = 0;
    for _ in 0..300 {
        let a = random_concept(&mut rng, &profile, 2);
        let b = weaken(&mut rng, &a);
        let c = weaken(&mut rng, &b);
        if subsumes(&a, &b) && subsumes(&b, &c) {
            hits += 1;
            assert!(subsumes(&a, &c), "transitivity failed: {a} / {b} / {c}");
        }
    }
    assert!(hits > 50, "premises held too rarely ({hits})");
}

#[test]
fn partial_subsumption_implies_total_on_same_as_concepts() {
    let mut rng = rng(109);
    let attrs = ["f", "g", "h"];
    let mut hits = 0;
    for _ in 0..400 {
        let c = random_s_concept(&mut rng, &attrs, 3, 3);
        let d = random_s_concept(&mut rng, &attrs, 2, 2);
        if subsumes(&c, &d) {
            hits += 1;
            assert!(
                subsumes_total(&c, &d).unwrap(),
                "partial ⊑ must imply total ⊑ on {c} vs {d}"
            );
        }
    }
    assert!(hits > 10, "premises held too rarely ({hits})");
}

#[test]
fn total_subsumption_extends_along_common_suffixes() {
    let mut rng = rng(110);
    let attrs = ["f", "g"];
    let chains = all_chains(&attrs, 3);
    let mut checked = 0;
    for _ in 0..40 {
        let c = random_s_concept(&mut rng, &attrs, 3, 3);
        let g = canonical_graph(&c);
        for u in &chains {
            for v in &chains {
                let base = Concept::SameAs(AttrChain(u.clone()), AttrChain(v.clone()));
                if !subsumes_total_graph(&base, &g) {
                    continue;
                }
                for w in &chains {
                    let mut uw = u.clone();
                    uw.extend(w.iter().cloned());
                    let mut vw = v.clone();
                    vw.extend(w.iter().cloned());
                    let ext = Concept::SameAs(AttrChain(uw), AttrChain(vw));
                    checked += 1;
                    assert!(
                        subsumes_total_graph(&ext, &g),
                        "suffix extension failed: {c} ⊑ₜ {base} but not {ext}"
                    );
                }
            }
        }
    }
    assert!(checked > 1000, "too few extensions exercised ({checked})");
    // The same principle fails under partial attributes.
    let c = Concept::same_as(["f"], ["g"]);
    let ext = Concept::same_as(["f", "h"], ["g", "h"]);
    assert!(subsumes(&c, &c.clone()) && !subsumes(&c, &ext));
}

#[test]
fn structural_subsumption_is_sound_for_the_oracle() {
    let mut rng = rng(111);
    for round in 0..60 {
        let profile = if round % 2 == 0 {
            Profile::tiny_with_role()
        } else {
            Profile::tiny_two_attrs()
        };
        let c = random_concept(&mut rng, &profile, 2);
        let d = if rng.gen_bool(0.5) {
            weaken(&mut rng, &c)
        } else {
            random_concept(&mut rng, &profile, 1)
        };
        if subsumes(&c, &d) {
            assert!(
                find_countermodel(&c, &d, 2, Semantics::Partial).is_none(),
                "claimed {c} ⊑ {d} but found a countermodel"
            );
        }
        // Total mode, same-as fragment only.
        let sc = random_s_concept(&mut rng, &["f", "g"], 2, 2);
        let sd = random_s_concept(&mut rng, &["f", "g"], 2, 2);
        if subsumes_total(&sc, &sd).unwrap() {
            assert!(
                find_countermodel(&sc, &sd, 2, Semantics::Total).is_none(),
                "claimed {sc} ⊑ₜ {sd} but found a countermodel"
            );
        }
    }
}

#[test]
fn completeness_against_the_oracle_on_small_inputs() {
    // The contrapositive direction: when the structural check refuses a
    // subsumption between shallow concepts with bounds ≤ 2, a countermodel
    // fits in three elements and the oracle must find it; every found
    // countermodel is revalidated by direct evaluation.
    fn bounds_small(c: &Concept) -> bool {
        match c {
            Concept::AtLeast(n, _) | Concept::AtMost(n, _) => *n <= 2,
            Concept::And(parts) => parts.iter().all(bounds_small),
            Concept::All(_, body) => bounds_small(body),
            _ => true,
        }
    }
    let mut rng = rng(112);
    let mut refused = 0;
    for round in 0..120 {
        let profile = if round % 2 == 0 {
            Profile::tiny_with_role()
        } else {
            Profile::tiny_two_attrs()
        };
        let c = random_concept(&mut rng, &profile, 1);
        let d = random_concept(&mut rng, &profile, 1);
        if !bounds_small(&c) || !bounds_small(&d) {
            continue;
        }
        if !subsumes(&c, &d) {
            refused += 1;
            let (i, x) = find_countermodel(&c, &d, 3, Semantics::Partial)
                .unwrap_or_else(|| panic!("no countermodel for refused {c} ⊑ {d}"));
            assert!(eval_concept(&c, &i, x) && !eval_concept(&d, &i, x));
        }
    }
    assert!(refused > 20, "too few refusals sampled ({refused})");
}

#[test]
fn lcs_is_an_upper_bound_and_commutative() {
    let mut rng = rng(113);
    let profile = Profile::medium();
    for _ in 0..60 {
        let c = random_concept(&mut rng, &profile, 1);
        let d = random_concept(&mut rng, &profile, 1);
        let e = lcs2(&c, &d);
        assert!(subsumes(&c, &e), "lcs not above {c}");
        assert!(subsumes(&d, &e), "lcs not above {d}");
        let e2 = lcs2(&d, &c);
        assert!(equivalent(&e, &e2, Semantics::Partial).unwrap());
    }
}

#[test]
fn lcs_is_associative_up_to_equivalence() {
    let mut rng = rng(114);
    let profile = Profile::medium();
    for _ in 0..25 {
        let a = random_concept(&mut rng, &profile, 1);
        let b = random_concept(&mut rng, &profile, 1);
        let c = random_concept(&mut rng, &profile, 1);
        let left = lcs2(&lcs2(&a, &b), &c);
        let right = lcs2(&a, &lcs2(&b, &c));
        assert!(
            equivalent(&left, &right, Semantics::Partial).unwrap(),
            "associativity failed on {a}, {b}, {c}"
        );
    }
}

#[test]
fn total_lcs_is_symmetric_and_an_upper_bound() {
    let mut rng = rng(115);
    let attrs = ["f", "g"];
    let mut found = 0;
    while found < 25 {
        let c = random_s_concept(&mut rng, &attrs, 3, 2);
        let d = random_s_concept(&mut rng, &attrs, 3, 2);
        if !lcs_exists(&c, &d).unwrap() {
            continue;
        }
        found += 1;
        let e = lcs_total(&c, &d).unwrap();
        assert!(subsumes_total(&c, &e).unwrap(), "lcs not above {c}");
        assert!(subsumes_total(&d, &e).unwrap(), "lcs not above {d}");
        let e2 = lcs_total(&d, &c).unwrap();
        assert!(equivalent(&e, &e2, Semantics::Total).unwrap());
    }
}

#[test]
fn infinite_configurations_pump_unboundedly_many_joins() {
    // When no lcs exists the witnessing configuration yields arbitrarily
    // long chain pairs that are commonly subsumed, pairwise inequivalent.
    let c0 = Concept::same_as(["a"], ["b"]);
    let d0 = Concept::And(vec![
        Concept::same_as(["a"], ["a", "c"]),
        Concept::same_as(["b"], ["b", "c"]),
        Concept::same_as(["a", "d"], ["b", "d"]),
    ]);
    let w = lcs_existence(&c0, &d0).unwrap().expect("no lcs here");
    let xs: Vec<Vec<String>> = w.language.words_up_to(8);
    assert!(xs.len() >= 8, "expected many pumped words, got {}", xs.len());
    let gc = canonical_graph(&c0);
    let gd = canonical_graph(&d0);
    let join = |x: &[String], y: &[String]| {
        let mut u = w.prefix_left.clone();
        u.extend(x.iter().cloned());
        u.push(w.config.attr.clone());
        let mut v = w.prefix_right.clone();
        v.extend(y.iter().cloned());
        v.push(w.config.attr.clone());
        Concept::SameAs(AttrChain(u), AttrChain(v))
    };
    for x in &xs {
        let probe = join(x, x);
        assert!(subsumes_total_graph(&probe, &gc), "{probe} must hold for the left input");
        assert!(subsumes_total_graph(&probe, &gd), "{probe} must hold for the right input");
    }
    for (i, x) in xs.iter().enumerate() {
        for y in xs.iter().skip(i + 1) {
            let probe = join(x, y);
            assert!(
                !(subsumes_total_graph(&probe, &gc) && subsumes_total_graph(&probe, &gd)),
                "mixed join {probe} must separate the pumped words"
            );
        }
    }
}

#[test]
fn automata_agree_with_path_existence() {
    let mut rng = rng(116);
    let attrs = ["f", "g", "h"];
    let words = all_chains(&attrs, 4);
    for _ in 0..30 {
        let c = random_s_concept(&mut rng, &attrs, 3, 3);
        let g = canonical_graph(&c);
        let nodes: Vec<_> = g.node_ids().collect();
        let q1 = g.root();
        let q2 = nodes[rng.gen_range(0..nodes.len())];
        let aut = path_automaton(&g, q1, q2);
        for wrd in &words {
            assert_eq!(
                aut.accepts(wrd),
                path_exists(&g, q1, q2, wrd),
                "membership mismatch on {wrd:?}"
            );
        }
    }
}

#[test]
fn intersection_and_restriction_by_brute_force() {
    let mut rng = rng(117);
    let attrs = ["f", "g"];
    let words = all_chains(&attrs, 4);
    for _ in 0..25 {
        let c1 = random_s_concept(&mut rng, &attrs, 2, 2);
        let c2 = random_s_concept(&mut rng, &attrs, 2, 2);
        let g1 = canonical_graph(&c1);
        let g2 = canonical_graph(&c2);
        let n1: Vec<_> = g1.node_ids().collect();
        let n2: Vec<_> = g2.node_ids().collect();
        let a1 = path_automaton(&g1, g1.root(), n1[rng.gen_range(0..n1.len())]);
        let a2 = path_automaton(&g2, g2.root(), n2[rng.gen_range(0..n2.len())]);
        let first: BTreeSet<String> = attrs
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .map(|s| s.to_string())
            .collect();
        let both = a1.intersect_and_restrict(&a2, &first);
        for wrd in &words {
            let expect = a1.accepts(wrd)
                && a2.accepts(wrd)
                && wrd.first().is_some_and(|b| first.contains(b));
            assert_eq!(both.accepts(wrd), expect, "intersection wrong on {wrd:?}");
        }
    }
}

#[test]
fn enumerated_words_are_exactly_the_finite_language() {
    let mut rng = rng(118);
    let attrs = ["f", "g"];
    let mut finite_seen = 0;
    for _ in 0..60 {
        let c = random_s_concept(&mut rng, &attrs, 2, 3);
        let g = canonical_graph(&c);
        let nodes: Vec<_> = g.node_ids().collect();
        let q2 = nodes[rng.gen_range(0..nodes.len())];
        let aut = path_automaton(&g, g.root(), q2);
        if aut.is_infinite() {
            continue;
        }
        finite_seen += 1;
        let words = aut.enumerate_finite().unwrap();
        assert!(words.windows(2).all(|w| w[0] < w[1]), "sorted and unique");
        for w in &words {
            assert!(aut.accepts(w));
            assert!(w.len() < g.node_ids().count().max(1));
        }
        // No accepted word is missing, up to the state-count bound.
        for probe in all_chains(&attrs, g.node_ids().count()) {
            assert_eq!(aut.accepts(&probe), words.contains(&probe));
        }
    }
    assert!(finite_seen > 10, "too few finite languages sampled");
}

#[test]
fn desugared_attribute_restrictions_match_their_semantics() {
    // Every interpretation over one attribute and domains 1..=2, checked
    // pointwise against the counting semantics of attribute bounds.
    let mut sig = Signature::new();
    sig.declare_attribute("a").unwrap();
    type CountCheck = Box<dyn Fn(usize, bool) -> bool>;
    let cases: Vec<(String, CountCheck)> = vec![
        ("(at-least 0 a)".into(), Box::new(|_, _| true)),
        ("(at-least 1 a)".into(), Box::new(|n, _| n >= 1)),
        ("(at-least 2 a)".into(), Box::new(|n, _| n >= 2)),
        ("(at-most 0 a)".into(), Box::new(|n, _| n == 0)),
        ("(at-most 1 a)".into(), Box::new(|n, _| n <= 1)),
    ];
    for m in 1..=2usize {
        for table in all_attr_tables(m) {
            let i = interp_with_attr(m, &table);
            for d in 0..m {
                let defined = table[d].is_some();
                let count = usize::from(defined);
                for (text, semantics) in &cases {
                    let c = parse_concept(text, &sig).unwrap();
                    assert_eq!(
                        eval_concept(&c, &i, d),
                        semantics(count, defined),
                        "{text} wrong at {d} with table {table:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn incoherence_detection_matches_the_oracle_on_curated_cases() {
    // Syntactically derivable inconsistency must line up with emptiness in
    // every enumerated model (c ⊑ ⊥ probed up to domain size 2), and the
    // consistent controls must come back with a model making them
    // nonempty.
    let mut sig = Signature::new();
    sig.declare_attribute("a").unwrap();
    sig.declare_role("r").unwrap();
    sig.declare_concept("A").unwrap();
    let inconsistent = [
        "(at-least 2 a)",
        "(and (at-least 1 r) (at-most 0 r))",
        "(and (at-least 2 r) (at-most 1 r))",
        "(and (at-most 0 a) (same-as (a) (a)))",
        "(and (at-least 10 r) (at-most 9 r))",
    ];
    // A value restriction to ⊥ is satisfiable on its own: just leave the
    // attribute undefined, or give the role no successors.
    let consistent = [
        "(at-most 0 a)",
        "(all a (and BOTTOM A))",
        "(and A (at-least 2 r))",
        "(same-as (a) (a))",
        "(all r BOTTOM)",
    ];
    for text in inconsistent {
        let c = parse_concept(text, &sig).unwrap();
        assert!(
            classic_core::subsume::is_inconsistent(&c),
            "{text} must normalize to ⊥"
        );
        assert!(
            find_countermodel(&c, &Concept::bottom(), 2, Semantics::Partial).is_none(),
            "{text} must be empty in every small model"
        );
    }
    for text in consistent {
        let c = parse_concept(text, &sig).unwrap();
        assert!(!classic_core::subsume::is_inconsistent(&c), "{text}");
        assert!(
            find_countermodel(&c, &Concept::bottom(), 2, Semantics::Partial).is_some(),
            "{text} must have a small model"
        );
    }
    // The incoherent case nested under ∀a: the attribute edge forces it.
    let forced = parse_concept("(and (at-most 0 a) (at-least 1 a))", &sig).unwrap();
    assert!(classic_core::subsume::is_inconsistent(&forced));
}

#[test]
fn remark_style_soundness_holds_without_normalization() {
    // Matching a subsumer against an unnormalized graph may answer true
    // less often, but every true must be semantically sound.
    let mut rng = rng(119);
    let profile = Profile::medium();
    for _ in 0..80 {
        let c = random_concept(&mut rng, &profile, 1);
        let d = random_concept(&mut rng, &profile, 1);
        let raw = DescriptionGraph::from_concept(&c);
        if subsumes_graph(&d, &raw) {
            assert!(
                find_countermodel(&c, &d, 2, Semantics::Partial).is_none(),
                "raw-graph match unsound for {c} ⊑ {d}"
            );
        }
    }
}

// ---------------------------------------------------------------------
// proptest: the parser and printer are mutually inverse.

fn leaf_strategy() -> impl Strategy<Value = Concept> {
    let name = prop_oneof![Just("A"), Just("B")];
    let role = prop_oneof![Just("r"), Just("s")];
    let chain = prop::collection::vec(prop_oneof![Just("f"), Just("g")], 0..3)
        .prop_map(|v| AttrChain(v.into_iter().map(String::from).collect()));
    prop_oneof![
        Just(Concept::Top),
        Just(Concept::bottom()),
        name.prop_map(|n| Concept::Name(n.to_string())),
        (0u32..4, role.clone()).prop_map(|(n, r)| Concept::AtLeast(n, r.to_string())),
        (0u32..4, role).prop_map(|(n, r)| Concept::AtMost(n, r.to_string())),
        (chain.clone(), chain).prop_map(|(u, v)| Concept::SameAs(u, v)),
    ]
}

fn concept_strategy() -> impl Strategy<Value = Concept> {
    leaf_strategy().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(Concept::And),
            (prop_oneof![Just("r"), Just("s")], inner.clone())
                .prop_map(|(r, body)| Concept::all_role(r, body)),
            (prop_oneof![Just("f"), Just("g")], inner)
                .prop_map(|(a, body)| Concept::all_attr(a, body)),
        ]
    })
}

fn test_signature() -> Signature {
    let mut sig = Signature::new();
    for n in ["A", "B"] {
        sig.declare_concept(n).unwrap();
    }
    for r in ["r", "s"] {
        sig.declare_role(r).unwrap();
    }
    for a in ["f", "g"] {
        sig.declare_attribute(a).unwrap();
    }
    sig
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(c in concept_strategy()) {
        let sig = test_signature();
        let text = c.to_string();
        let back = parse_concept(&text, &sig).expect("printed concept must parse");
        prop_assert_eq!(back, c);
    }
}

// ---------------------------------------------------------------------
// helpers

fn graph_symbols(g: &DescriptionGraph) -> classic_core::SymbolSet {
    // Symbols of the translated concept cover everything in the graph.
    joint_symbols(&[&g.to_concept()])
}

fn all_chains(attrs: &[&str], max_len: usize) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in attrs {
                let mut w2 = w.clone();
                w2.push(a.to_string());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn path_exists(
    g: &DescriptionGraph,
    from: classic_core::NodeId,
    to: classic_core::NodeId,
    word: &[String],
) -> bool {
    if word.is_empty() {
        return from == to;
    }
    g.out_edges(from)
        .filter(|(_, a, _)| *a == word[0])
        .any(|(_, _, t)| path_exists(g, *t, to, &word[1..]))
}

fn all_attr_tables(m: usize) -> Vec<Vec<Option<usize>>> {
    let mut out: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for t in &out {
            for choice in std::iter::once(None).chain((0..m).map(Some)) {
                let mut t2 = t.clone();
                t2.push(choice);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn interp_with_attr(m: usize, table: &[Option<usize>]) -> classic_core::interp::Interpretation {
    let mut attrs = std::collections::BTreeMap::new();
    let f: std::collections::BTreeMap<usize, usize> = table
        .iter()
        .enumerate()
        .filter_map(|(d, v)| v.map(|e| (d, e)))
        .collect();
    attrs.insert("a".to_string(), f);
    classic_core::interp::Interpretation {
        domain_size: m,
        mode: Semantics::Partial,
        concepts: std::collections::BTreeMap::new(),
        roles: std::collections::BTreeMap::new(),
        attrs,
    }
}

// Keep the shared fresh-id counter exercised across threads.
#[test]
fn fresh_ids_are_unique_across_threads() {
    let handles: Vec<_> = (0..4)
        .map(|_| std::thread::spawn(|| (0..500).map(|_| fresh_node_id()).collect::<Vec<_>>()))
        .collect();
    let mut all = BTreeSet::new();
    for h in handles {
        for id in h.join().unwrap() {
            assert!(all.insert(id), "duplicate node id issued");
        }
    }
}
