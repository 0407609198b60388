//! Property tests for the invariants of each module. Every property draws a
//! seed and builds its random inputs from it.

mod common;

use std::sync::{Arc, OnceLock};

use fclosure::closure::{Closure, FactorLetter, FactorWord};
use fclosure::completion::SemiCompletion;
use fclosure::diagram::Diagram;
use fclosure::hardness::{
    encode, find_seed, free_reduce, FreeLetter, GroupPresentation, TreeEncoding,
};
use fclosure::rewriting::{derivation_to_normal_form, principal_edge, RewritingSystem, Side, Word};
use fclosure::stallings::{format_core, Core};
use fclosure::thompson::{BranchPairs, DyadicRational, TreeDiagram};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_word<R: Rng>(rng: &mut R, rs: &RewritingSystem, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_ids(
        &(0..len)
            .map(|_| rng.gen_range(0..rs.alphabet_size() as u32))
            .collect::<Vec<_>>(),
    )
}

fn random_dyadic<R: Rng>(rng: &mut R) -> DyadicRational {
    let exp = rng.gen_range(0..=10u32);
    DyadicRational::new(rng.gen_range(0..=(1i64 << exp)), exp)
}

fn closure_of(gens: &[TreeDiagram]) -> Option<Closure> {
    let core = Core::build(gens).ok()?;
    if core.is_degenerate() {
        return None;
    }
    Closure::new(&SemiCompletion::new(&core).ok()?, None).ok()
}

fn random_factor_word<R: Rng>(rng: &mut R, count: usize, max_len: usize) -> FactorWord {
    let len = rng.gen_range(0..=max_len);
    FactorWord {
        letters: (0..len)
            .map(|_| FactorLetter {
                index: rng.gen_range(0..count),
                exponent: if rng.gen_bool(0.5) { 1 } else { -1 },
            })
            .collect(),
    }
}

#[test]
fn reduced_iff_no_principal_edge() {
    let mut rng = rng(0);
    for _ in 0..20 {
        let rs = random_system(&mut rng);
        for len in 0..=6 {
            for w in all_words(rs.alphabet_size() as u32, len) {
                let reduced = rs.is_reduced(&w);
                for side in [Side::Left, Side::Right] {
                    assert_eq!(
                        principal_edge(&rs, &w, side).is_none(),
                        reduced,
                        "{}",
                        rs.format_word(&w)
                    );
                }
            }
        }
    }
}

#[test]
fn free_reduction_is_exhaustively_sound() {
    let letters = [
        FreeLetter::pos(0),
        FreeLetter::neg(0),
        FreeLetter::pos(1),
        FreeLetter::neg(1),
    ];
    let mut words = vec![Vec::new()];
    for _ in 0..6 {
        words = words
            .into_iter()
            .flat_map(|w: Vec<FreeLetter>| {
                letters.iter().map(move |&l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
        for w in &words {
            let r = free_reduce(w);
            assert!(r.windows(2).all(|p| p[0] != p[1].inv()));
            assert_eq!(free_reduce(&r), r);
            assert_eq!(r.len() % 2, w.len() % 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn principal_edges_decrease_shortlex(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rs = random_system(&mut rng);
        let w = random_word(&mut rng, &rs, 10);
        for side in [Side::Left, Side::Right] {
            let path = derivation_to_normal_form(&rs, &w, side);
            for e in &path.edges {
                prop_assert!(rs.shortlex_cmp(&e.target(&rs), &e.source(&rs)).unwrap().is_lt());
            }
            prop_assert!(rs.is_reduced(&path.target));
        }
    }

    #[test]
    fn left_edges_are_stable(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rs = random_system(&mut rng);
        let u = random_word(&mut rng, &rs, 5);
        let rule = &rs.rules()[rng.gen_range(0..rs.rules().len())];
        let v = random_word(&mut rng, &rs, 5);
        let v2 = random_word(&mut rng, &rs, 5);
        let uses = |v: &Word| {
            let w = Word::wrap(&u, &rule.lhs, v);
            principal_edge(&rs, &w, Side::Left)
                .is_some_and(|e| e.left == u && rs.rules()[e.rule].lhs == rule.lhs)
        };
        prop_assert_eq!(uses(&v), uses(&v2));
    }

    #[test]
    fn left_derivations_extend_by_suffixes(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rs = random_system(&mut rng);
        let u = random_word(&mut rng, &rs, 6);
        let w = random_word(&mut rng, &rs, 4);
        let du = derivation_to_normal_form(&rs, &u, Side::Left).suffixed(&w);
        let duw = derivation_to_normal_form(&rs, &u.concat(&w), Side::Left);
        prop_assert!(duw.edges.starts_with(&du.edges));
    }

    #[test]
    fn spherical_diagrams_form_a_group(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rs = random_system(&mut rng);
        let w = random_word(&mut rng, &rs, 4);
        let a = random_spherical(&mut rng, &rs, &w, 6, 7);
        let b = random_spherical(&mut rng, &rs, &w, 6, 7);
        let c = random_spherical(&mut rng, &rs, &w, 6, 7);
        let id = Diagram::trivial(rs.clone(), w.clone());
        prop_assert!(a.compose(&b).unwrap().compose(&c).unwrap().equal(&a.compose(&b.compose(&c).unwrap()).unwrap()));
        prop_assert_eq!(a.compose(&a.invert()).unwrap().reduce(), id.clone());
        prop_assert_eq!(id.compose(&a).unwrap().reduce(), a.reduce());
        prop_assert_eq!(a.compose(&id).unwrap().reduce(), a.reduce());
    }

    #[test]
    fn reduction_is_canonical(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rs = random_system(&mut rng);
        let top = random_word(&mut rng, &rs, 5);
        let d = random_walk(&mut rng, &rs, top, 14, 8);
        let canonical = d.reduce();
        prop_assert!(canonical.is_reduced());
        prop_assert_eq!(canonical.reduce(), canonical.clone());
        for _ in 0..10 {
            prop_assert_eq!(shuffle_independent(&mut rng, &d, 30).reduce(), canonical.clone());
        }
    }

    #[test]
    fn tree_diagrams_round_trip(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let carets = rng.gen_range(0..40);
        let g = TreeDiagram::random(&mut rng, carets);
        prop_assert_eq!(TreeDiagram::from_branch_pairs(&g.to_branch_pairs()), g.clone());
        let d = g.to_diagram();
        prop_assert!(d.is_reduced());
        prop_assert_eq!(d.cell_count(), g.carets());
        prop_assert_eq!(TreeDiagram::from_diagram(&d).unwrap(), g.clone());
        let table = BranchPairs::new(g.to_branch_pairs().pairs().to_vec()).unwrap();
        prop_assert_eq!(TreeDiagram::from_branch_pairs(&table), g);
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = random_f_word(&mut rng, 8);
        let h = TreeDiagram::random(&mut rng, 12);
        let t = random_dyadic(&mut rng);
        prop_assert_eq!(g.multiply(&h).evaluate(&t).unwrap(), h.evaluate(&g.evaluate(&t).unwrap()).unwrap());
        prop_assert!(g.multiply(&g.inverse()).is_identity());
    }

    #[test]
    fn components_multiply_back(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = copy_at("0", &random_f_word(&mut rng, 6)).multiply(&copy_at("1", &random_f_word(&mut rng, 6)));
        let half = DyadicRational::new(1, 1);
        let (g1, g2) = g.components_at(&half).unwrap();
        prop_assert_eq!(g1.multiply(&g2), g.clone());
        let t = random_dyadic(&mut rng);
        if t >= half {
            prop_assert_eq!(g1.evaluate(&t).unwrap(), t);
        } else {
            prop_assert_eq!(g2.evaluate(&t).unwrap(), t);
        }
    }

    #[test]
    fn split_and_enumerate_round_trip(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let carets = rng.gen_range(1..30);
        let d = TreeDiagram::random(&mut rng, carets).to_diagram();
        let split = d.split_spherical().unwrap();
        prop_assert_eq!(split.positive.cell_count(), split.negative.cell_count());
        prop_assert!(split.positive.compose(&split.negative).unwrap().equal(&d));
        let edges = split.positive.enumerate_rtl().unwrap();
        let mut w = split.positive.top().clone();
        let mut again = Diagram::trivial(d.system().clone(), w.clone());
        for e in edges {
            prop_assert_eq!(e.source(d.system()), w);
            let cell = Diagram::atomic(d.system().clone(), &e).unwrap();
            w = cell.bottom().clone();
            again = again.compose(&cell).unwrap();
        }
        prop_assert!(again.equal(&split.positive));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn folding_order_is_irrelevant(seed in any::<u64>()) {
        let gens = random_pair(&mut rng(seed), 8);
        let reference = format_core(&Core::build(&gens).unwrap());
        for s in 0..5 {
            prop_assert_eq!(format_core(&Core::build_shuffled(&gens, seed ^ s).unwrap()), reference.clone());
        }
    }

    #[test]
    fn closures_are_groups_containing_h(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let gens = random_pair(&mut rng, 8);
        let core = Core::build(&gens).unwrap();
        for g in &gens {
            prop_assert!(core.membership(g).unwrap().is_accepted());
        }
        let mut accepted = gens.clone();
        for _ in 0..6 {
            let a = &accepted[rng.gen_range(0..accepted.len())];
            let b = &accepted[rng.gen_range(0..accepted.len())];
            let c = a.multiply(&b.inverse());
            prop_assert!(core.membership(&c).unwrap().is_accepted());
            accepted.push(c);
        }
        let mut more = gens.clone();
        more.extend(accepted.into_iter().skip(gens.len()));
        prop_assert_eq!(format_core(&Core::build(&more).unwrap()), format_core(&core));
    }

    #[test]
    fn generic_cores_have_the_source_sink_shape(seed in any::<u64>()) {
        let core = Core::build(&random_pair(&mut rng(seed), 8)).unwrap();
        if !core.is_degenerate() {
            prop_assert!(core.check_shape().is_ok());
            let s = core.stats();
            prop_assert_eq!(s.n, core.vertex_count() - 2);
            prop_assert_eq!(s.m, core.edges().len() - 1);
            prop_assert_eq!(s.f, core.cells().len());
        }
    }

    #[test]
    fn closure_invariants(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let gens = random_pair(&mut rng, 6);
        let Some(cl) = closure_of(&gens) else { return Ok(()) };
        let core = Core::build(&gens).unwrap();
        for y in cl.generators_y() {
            prop_assert!(core.membership(&y.element).unwrap().is_accepted());
            prop_assert_eq!(y.element.carets(), y.diagram.reduce().cell_count());
        }
        for g in &gens {
            let f = cl.factorize_element(g).unwrap();
            prop_assert!(f.bound_holds);
            prop_assert_eq!(TreeDiagram::relabel_into_f(&cl.y_product(&f.word).unwrap()).unwrap(), g.clone());
        }
        let x = cl.generators_x();
        if !x.is_empty() {
            let w1 = random_factor_word(&mut rng, x.len(), 4);
            let w2 = random_factor_word(&mut rng, x.len(), 4);
            let (d1, d2) = (cl.x_product(&w1).unwrap(), cl.x_product(&w2).unwrap());
            let lhs = cl.theta(&d1.compose(&d2).unwrap().reduce()).unwrap();
            let rhs = cl.theta(&d1).unwrap().compose(&cl.theta(&d2).unwrap()).unwrap();
            prop_assert!(lhs.equal(&rhs));
        }
        if !cl.generators_y().is_empty() {
            let word = random_factor_word(&mut rng, cl.generators_y().len(), 8);
            let d = cl.y_product(&word).unwrap();
            prop_assert!(cl.theta(&d).unwrap().equal(&d));
            let f = cl.factorize(&d).unwrap();
            prop_assert!(f.word.len() <= 3 * d.reduce().cell_count() || d.is_trivial());
            prop_assert!(cl.y_product(&f.word).unwrap().equal(&d));
        }
    }

    #[test]
    fn principal_left_edge_loops_are_trivial(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let Some(cl) = closure_of(&random_pair(&mut rng, 6)) else { return Ok(()) };
        let rs = cl.combined().clone();
        // Random walks from ρ stay in the component of ρ.
        let walk = random_walk(&mut rng, &rs, Word::from_ids(&[0]), 8, 8);
        let mut w = walk.top().clone();
        for m in walk.moves() {
            if let Some(e) = principal_edge(&rs, &w, Side::Left) {
                prop_assert!(cl.edge_class_diagram(&e).unwrap().is_trivial());
            }
            w = Diagram::new(rs.clone(), w.clone(), vec![*m]).unwrap().bottom().clone();
        }
    }
}

fn trivial_group_seed() -> &'static (TreeEncoding, Diagram) {
    static SEED: OnceLock<(TreeEncoding, Diagram)> = OnceLock::new();
    SEED.get_or_init(|| {
        let enc = encode(&GroupPresentation::parse("gens: a\nrel: a\n").unwrap()).unwrap();
        let seed = find_seed(&enc, 8, 200_000).expect("seed over the trivial group");
        (enc, seed)
    })
}

fn random_presentation<R: Rng>(rng: &mut R) -> GroupPresentation {
    let gens = rng.gen_range(1..=2);
    let names: Vec<String> = ["a", "b"][..gens].iter().map(|s| s.to_string()).collect();
    let count = rng.gen_range(gens..=gens + 1);
    let mut text = format!("gens: {}\n", names.join(" "));
    for _ in 0..count {
        let len = rng.gen_range(1..=4);
        let rel: Vec<String> = (0..len)
            .map(|_| {
                let n = &names[rng.gen_range(0..gens)];
                if rng.gen_bool(0.3) {
                    n.to_uppercase()
                } else {
                    n.clone()
                }
            })
            .collect();
        text.push_str(&format!("rel: {}\n", rel.join(" ")));
    }
    GroupPresentation::parse(&text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn encodings_follow_the_template(seed in any::<u64>()) {
        let gp = random_presentation(&mut rng(seed));
        let Ok(enc) = encode(&gp) else { return Ok(()) };
        let pp = &enc.presentation;
        let rs = &enc.system;
        prop_assert!(rs.validate_tree_system().is_ok());
        let fresh: usize = pp.relations.iter().map(|(v, _)| v.len() - 2).sum();
        let rules: usize = pp.relations.iter().map(|(v, _)| v.len() - 1).sum();
        prop_assert_eq!(rs.alphabet_size(), pp.generators.len() + fresh);
        prop_assert_eq!(rs.rules().len(), rules);
        let generators = pp.generators.len();
        for r in rs.rules() {
            let top = r.rhs[0].index();
            if top >= generators {
                prop_assert_eq!(enc.expand(&r.lhs), enc.expand(&r.rhs));
            } else {
                prop_assert!(pp.relations.contains(&(enc.expand(&r.lhs), top)));
            }
        }
    }

    #[test]
    fn sums_have_the_predicted_components(p_len in 0usize..4, u_len in 0usize..4) {
        let (enc, seed) = trivial_group_seed();
        let p: Vec<usize> = (0..p_len).map(|i| i % 2).collect();
        let u: Vec<usize> = (0..u_len).map(|i| (i + 1) % 2).collect();
        let rs: &Arc<RewritingSystem> = &enc.system;
        let inner = seed.sum_components().unwrap().len();
        let d = Diagram::trivial(rs.clone(), enc.word(&p))
            .sum(seed)
            .unwrap()
            .sum(&Diagram::trivial(rs.clone(), enc.word(&u)))
            .unwrap();
        let expected = inner + usize::from(p_len > 0) + usize::from(u_len > 0);
        prop_assert_eq!(d.sum_components().unwrap().len(), expected);
    }
}
