use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use srg_core::encode::{
    cnf_exactly, encode_cnf, encode_pb_linear, encode_pb_nonlinear, symmetry_break_star, EncodeOptions, Preset, Regularity,
};
use srg_core::families::{kneser, paley, petersen, rook, triangular};
use srg_core::feasibility::{counting_check, feasibility_report, spectrum_of};
use srg_core::golay::bvls_construct;
use srg_core::solve::{decode_model, dpll_enumerate, dpll_solve, parse_output, pb_solve, DpllResult, Dialect, Model, PbResult, Status};
use srg_core::surd::Surd;
use srg_core::{complement_params, verify_srg, Graph, SrgParams};

fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(density)).unwrap()
}

fn srgs() -> Vec<(Graph, SrgParams)> {
    let p = |n, k, l, m| SrgParams::new(n, k, l, m).unwrap();
    vec![
        (paley(5).unwrap(), p(5, 2, 0, 1)),
        (paley(9).unwrap(), p(9, 4, 1, 2)),
        (paley(13).unwrap(), p(13, 6, 2, 3)),
        (petersen(), p(10, 3, 0, 1)),
        (rook(3).unwrap(), p(9, 4, 1, 2)),
        (rook(4).unwrap(), p(16, 6, 2, 2)),
        (triangular(5).unwrap(), p(10, 6, 3, 4)),
        (kneser(6, 2).unwrap(), p(15, 6, 1, 3)),
    ]
}

/// Toggle one pair.
fn flip(g: &Graph, i: usize, j: usize) -> Graph {
    Graph::from_fn(g.n(), |a, b| g.has_edge(a, b) != ((a, b) == (i, j) || (a, b) == (j, i))).unwrap()
}

#[test]
fn verification_routes_agree_on_1000_graphs() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let known = srgs();
    let mut passes = 0;
    for t in 0..1000 {
        let (g, p) = if t % 4 == 0 {
            let (g, p) = &known[t / 4 % known.len()];
            // half unchanged, half with one pair toggled
            if t % 8 == 0 {
                (g.clone(), *p)
            } else {
                let i = rng.gen_range(0..g.n() - 1);
                (flip(g, i, rng.gen_range(i + 1..g.n())), *p)
            }
        } else {
            let n = rng.gen_range(4..=20);
            let density = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, density);
            let k = g.degree(0).clamp(1, n as usize - 2) as u64;
            let (l, m) = (rng.gen_range(0..k), rng.gen_range(0..=k));
            (g, SrgParams::new(n as u64, k, l, m).unwrap())
        };
        let r = verify_srg(&g, &p).unwrap();
        assert!(r.routes_agree(), "{p}: {r:?}");
        passes += r.passed() as usize;
    }
    assert_eq!(passes, 125, "every unchanged family graph passes, nothing else");
}

#[test]
fn complement_params_involution_and_feasibility_symmetry() {
    for n in 3..=80u64 {
        for k in 1..n - 1 {
            for l in 0..k {
                for m in 0..=k {
                    let p = SrgParams::new(n, k, l, m).unwrap();
                    if !counting_check(&p) {
                        continue;
                    }
                    let Ok(c) = complement_params(&p) else { continue };
                    assert_eq!(complement_params(&c).unwrap(), p);
                    // the reason may differ (Krein bounds swap roles), the verdict may not
                    assert_eq!(feasibility_report(&p).is_feasible(), feasibility_report(&c).is_feasible(), "{p} vs {c}");
                }
            }
        }
    }
}

#[test]
fn integral_spectra_satisfy_trace_identities() {
    let mut checked = 0;
    for n in 3..=120u64 {
        for k in 1..n - 1 {
            for l in 0..k {
                for m in 1..=k {
                    let p = SrgParams::new(n, k, l, m).unwrap();
                    if !counting_check(&p) {
                        continue;
                    }
                    let Ok(s) = spectrum_of(&p) else { continue };
                    let (Some(r), Some(sv)) = (s.r.as_integer(), s.s.as_integer()) else {
                        // irrational pairs still sum correctly
                        assert_eq!(s.r + s.s, Surd::int(l as i128 - m as i128));
                        continue;
                    };
                    assert_eq!(s.m_r as i128 * r + s.m_s as i128 * sv + k as i128, 0, "{p}");
                    assert_eq!(s.m_r + s.m_s, n - 1, "{p}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

fn common(g: &Graph, a: usize, b: usize) -> usize {
    g.common_neighbors(a, b).unwrap()
}

#[test]
fn triangular_view_lemma() {
    for (g, k) in [(paley(9).unwrap(), 4usize), (kneser(6, 2).unwrap(), 6), (bvls_construct(), 22)] {
        let t = g.triangular_view().unwrap();
        assert_eq!(t.n(), g.n() * k / 6);
        assert!(t.degrees().iter().all(|&d| d == (3 * k - 6) / 2));
        if t.n() > 300 {
            // spot-check the pair conditions on a prefix for the big one
            for a in 0..40 {
                for b in a + 1..t.n() {
                    let c = common(&t, a, b);
                    assert!(if t.has_edge(a, b) { c == k / 2 - 2 } else { c <= 3 });
                }
            }
            continue;
        }
        for a in 0..t.n() {
            for b in a + 1..t.n() {
                let c = common(&t, a, b);
                assert!(if t.has_edge(a, b) { c == k / 2 - 2 } else { c <= 3 }, "pair {a},{b}: {c}");
            }
        }
    }
}

#[test]
fn regularity_follows_from_lambda_mu_on_solver_outputs() {
    // mu > 1, so the default options leave regularity out
    let p = SrgParams::new(9, 4, 1, 2).unwrap();
    let opts = EncodeOptions::with_preset(Preset::star_normalization(9, 4));
    assert!(!opts.regularity.include(p.mu));
    let (f, vm) = encode_cnf(&p, &opts).unwrap();
    let models = dpll_enumerate(&f, u64::MAX, usize::MAX).unwrap();
    assert_eq!(models.len(), 72);
    for m in models {
        let g = decode_model(&Model::from_bools(&m), &vm).unwrap();
        assert!(g.is_regular() && g.degree(0) == 4);
    }
}

#[test]
fn presets_do_not_conflict_under_propagation() {
    let p9 = SrgParams::new(9, 4, 1, 2).unwrap();
    let opts = EncodeOptions::with_preset(symmetry_break_star(&p9).unwrap());
    let (f, _) = encode_cnf(&p9, &opts).unwrap();
    assert_ne!(dpll_solve(&f, 0).0, DpllResult::Unsat);
    for enc in [encode_pb_nonlinear, encode_pb_linear] {
        let (f, _) = enc(&p9, &opts).unwrap();
        assert_ne!(pb_solve(&f, 0), PbResult::Unsat);
    }
    let p99 = SrgParams::new(99, 14, 1, 2).unwrap();
    let opts = EncodeOptions::with_preset(symmetry_break_star(&p99).unwrap());
    let (f, _) = encode_pb_nonlinear(&p99, &opts).unwrap();
    assert_ne!(pb_solve(&f, 0), PbResult::Unsat);
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_complement_is_involution(n in 2usize..20, seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.complement().edge_count() + g.edge_count(), n * (n - 1) / 2);
    }

    #[test]
    fn cardinality_clauses_match_closed_form_and_semantics(m in 1usize..=11, theta in 0usize..=11) {
        prop_assume!(theta <= m);
        let vars: Vec<u32> = (1..=m as u32).collect();
        let clauses = cnf_exactly(&vars, theta).unwrap();
        prop_assert_eq!(clauses.len(), binom(m, theta + 1) + binom(m, m - theta + 1));
        for bits in 0u32..1 << m {
            let a: Vec<bool> = (0..=m).map(|v| v > 0 && bits >> (v - 1) & 1 == 1).collect();
            let sat = clauses.iter().all(|c| c.iter().any(|&l| a[l.unsigned_abs() as usize] == (l > 0)));
            prop_assert_eq!(sat, bits.count_ones() as usize == theta);
        }
    }

    #[test]
    fn decode_round_trip_and_evaluator(n in 4usize..=13, seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        let k = g.degree(0).clamp(1, n - 2) as u64;
        let p = SrgParams::new(n as u64, k, rng.gen_range(0..k), rng.gen_range(0..=k)).unwrap();
        let opts = EncodeOptions { regularity: Regularity::Force, ..EncodeOptions::default() };
        let passed = verify_srg(&g, &p).unwrap().passed();
        let (cnf, vm) = encode_cnf(&p, &opts).unwrap();
        prop_assert_eq!(&decode_model(&Model::from_bools(&vm.assignment_for(&g)), &vm).unwrap(), &g);
        prop_assert_eq!(cnf.is_satisfied_by(&vm.assignment_for(&g)), passed);
        for enc in [encode_pb_nonlinear, encode_pb_linear] {
            let (f, vm) = enc(&p, &opts).unwrap();
            let a = vm.assignment_for(&g);
            prop_assert_eq!(&decode_model(&Model::from_bools(&a), &vm).unwrap(), &g);
            prop_assert_eq!(f.is_satisfied_by(&a), passed);
        }
    }

    #[test]
    fn pb_counts_match_closed_forms(n in 4usize..=10) {
        let p = SrgParams { n: n as u64, k: 2, lambda: 1, mu: 2 };
        let opts = EncodeOptions { regularity: Regularity::Omit, ..EncodeOptions::default() };
        let pairs = n * (n - 1) / 2;
        let (cnf, vm) = encode_cnf(&p, &opts).unwrap();
        prop_assert_eq!(vm.var_count() as usize, pairs + pairs * (n - 2));
        prop_assert!(cnf.var_count as usize == pairs * (n - 1));
        let (lin, _) = encode_pb_linear(&p, &opts).unwrap();
        prop_assert_eq!(lin.constraints.len(), 8 * pairs * (n - 2) + 2 * pairs);
        let (nl, _) = encode_pb_nonlinear(&p, &opts).unwrap();
        prop_assert_eq!(nl.constraints.len(), 2 * pairs);
    }

    #[test]
    fn status_parsing_is_total(word in "[A-Z ]{0,20}") {
        let text = format!("s {word}\n");
        for d in [Dialect::DimacsSat, Dialect::OpbSat] {
            match parse_output(&text, d) {
                Ok((s, _)) => {
                    let known = [("SATISFIABLE", Status::Sat), ("OPTIMUM FOUND", Status::Sat),
                                 ("UNSATISFIABLE", Status::Unsat), ("UNKNOWN", Status::Unknown)];
                    prop_assert!(known.iter().any(|(w, st)| word.trim() == *w && s == *st));
                }
                Err(_) => prop_assert!(!["SATISFIABLE", "OPTIMUM FOUND", "UNSATISFIABLE", "UNKNOWN"].contains(&word.trim())),
            }
        }
    }
}
