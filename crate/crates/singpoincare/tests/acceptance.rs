//! Acceptance suite: one test per criterion, exact (zero-tolerance)
//! comparisons throughout, with wall-clock budgets where stated.
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion PASS lines.

use std::collections::BTreeSet;
use std::time::Instant;

use num::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use singpoincare::equivariant::{
    characters_from_linking, equivariant_poincare, expand_equivariant, invariant_part,
    GroupRingElement,
};
use singpoincare::graph::{Component, GraphMode, IdealSpec, ResolutionGraph};
use singpoincare::ideal::{mixed_base, poincare_of_ideal_set, IdealPresentation};
use singpoincare::oracle::{poincare_bruteforce, Realization, ValuationRealization};
use singpoincare::poincare::{mixed_poincare, poincare_from_graph};
use singpoincare::rational::{rat, rat_int};
use singpoincare::resolve::{intersection_number, resolve};
use singpoincare::series::CoeffRing;
use singpoincare::{CharTag, Error, FactorForm, Monomial, PuiseuxBranch, Rat};

fn cusp_branch() -> PuiseuxBranch {
    PuiseuxBranch::from_int_terms("C", 2, &[(3, 1)], false).unwrap()
}

fn form_1var(factors: &[(u64, i64)]) -> FactorForm {
    let mut f = FactorForm::one(1);
    for &(k, e) in factors {
        f.push(Monomial(vec![k]), None, e).unwrap();
    }
    f
}

fn pass(n: u32, name: &str) {
    println!("criterion {n} ({name}): PASS");
}

#[test]
fn c01_cusp_end_to_end() {
    let start = Instant::now();
    let rc = resolve(&[cusp_branch()]).unwrap();
    let g = rc.graph.clone().validate(GraphMode::PlaneCurve).unwrap();
    let p = poincare_from_graph(&g, &g.euler_data(), &g.graph().ideal_specs).unwrap();
    assert_eq!(p, form_1var(&[(2, -1), (3, -1), (6, 1)]));

    let expanded = p.expand_int(40).unwrap();
    let vr = ValuationRealization {
        items: vec![Realization::Curve(rc.branch_germs()[0].clone())],
    };
    let oracle = poincare_bruteforce(&vr, &[40]).unwrap();
    expanded.agree_on_common_region(&oracle).unwrap();

    // (1 - t) * P = 1 - t + t^2 and nothing else through degree 39
    let alexander = expanded
        .mul(&form_1var(&[(1, 1)]).expand_int(40).unwrap())
        .unwrap();
    for l in 0..=39u64 {
        let expected = match l {
            0 | 2 => BigInt::from(1),
            1 => BigInt::from(-1),
            _ => BigInt::from(0),
        };
        assert_eq!(alexander.coeff(&Monomial(vec![l])), expected, "degree {l}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    pass(1, "cusp end-to-end, expansion = oracle to degree 40");
}

#[test]
fn c02_semigroup_property() {
    let start = Instant::now();
    let branches = [
        PuiseuxBranch::from_int_terms("B23", 2, &[(3, 1)], false).unwrap(),
        PuiseuxBranch::from_int_terms("B25", 2, &[(5, 1)], false).unwrap(),
        PuiseuxBranch::from_int_terms("B467", 4, &[(6, 1), (7, 1)], false).unwrap(),
    ];
    for b in &branches {
        let rc = resolve(std::slice::from_ref(b)).unwrap();
        let g = rc.graph.clone().validate(GraphMode::PlaneCurve).unwrap();
        let p = poincare_from_graph(&g, &g.euler_data(), &g.graph().ideal_specs).unwrap();
        let expanded = p.expand_int(60).unwrap();

        // coefficients in {0, 1}
        let mut support = BTreeSet::new();
        for (m, c) in expanded.terms() {
            assert!(
                c == &BigInt::from(1),
                "coefficient {c} at {m:?} for {}",
                b.name
            );
            support.insert(m.0[0]);
        }
        // support closed under addition within degree 60
        for &a in &support {
            for &c in &support {
                if a + c <= 60 {
                    assert!(
                        support.contains(&(a + c)),
                        "{} + {} missing from the semigroup of {}",
                        a,
                        c,
                        b.name
                    );
                }
            }
        }
        // equals the jet oracle through degree 40
        let vr = ValuationRealization {
            items: vec![Realization::Curve(rc.branch_germs()[0].clone())],
        };
        let oracle = poincare_bruteforce(&vr, &[40]).unwrap();
        expanded.agree_on_common_region(&oracle).unwrap();
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    pass(2, "semigroup supports for (2,3), (2,5), (4,6,7)");
}

#[test]
fn c03_hopf_pair() {
    let l1 = PuiseuxBranch::from_int_terms("L1", 1, &[], false).unwrap();
    let l2 = PuiseuxBranch::from_int_terms("L2", 1, &[], true).unwrap();
    let rc = resolve(&[l1, l2]).unwrap();
    let p = mixed_poincare(&rc, &[], &["L1".into(), "L2".into()]).unwrap();
    assert!(p.is_one(), "engine gives {p:?}");

    let vr = ValuationRealization {
        items: vec![
            Realization::Curve(rc.branch_germs()[0].clone()),
            Realization::Curve(rc.branch_germs()[1].clone()),
        ],
    };
    let oracle = poincare_bruteforce(&vr, &[8, 8]).unwrap();
    assert_eq!(oracle.coeff(&Monomial(vec![0, 0])), BigInt::from(1));
    let expanded = p.expand_int(16).unwrap();
    expanded.agree_on_common_region(&oracle).unwrap();
    pass(3, "Hopf pair: P(t1,t2) = 1, oracle agrees on box (8,8)");
}

#[test]
fn c04_mixed_cusp_line() {
    let start = Instant::now();
    let cusp = cusp_branch();
    let line = PuiseuxBranch::from_int_terms("L", 1, &[], true).unwrap();
    let rc = resolve(&[cusp, line]).unwrap();
    let g = rc.graph.clone().validate(GraphMode::PlaneCurve).unwrap();
    let engine = poincare_from_graph(&g, &g.euler_data(), &g.graph().ideal_specs).unwrap();
    let expanded = engine.expand_int(24).unwrap();

    let vr = ValuationRealization {
        items: vec![
            Realization::Curve(rc.branch_germs()[0].clone()),
            Realization::Curve(rc.branch_germs()[1].clone()),
        ],
    };
    let oracle = poincare_bruteforce(&vr, &[12, 12]).unwrap();
    expanded.agree_on_common_region(&oracle).unwrap();
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    pass(4, "cusp + transverse line vs oracle on box (12,12), degree 24");
}

/// Random proximity tree by blowup moves: each new point is either free on
/// an existing component or sits at a corner of two adjacent ones. This is
/// exactly the class of dual graphs of iterated point blowups of the plane.
fn random_blowup_graph(rng: &mut ChaCha8Rng, max_points: usize) -> ResolutionGraph {
    let n = rng.gen_range(1..=max_points);
    let mut selfs = vec![-1i64];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for new in 1..n {
        let corner = !edges.is_empty() && rng.gen_bool(0.4);
        if corner {
            let idx = rng.gen_range(0..edges.len());
            let (a, b) = edges.remove(idx);
            selfs[a] -= 1;
            selfs[b] -= 1;
            edges.push((a, new));
            edges.push((b, new));
        } else {
            let a = rng.gen_range(0..new);
            selfs[a] -= 1;
            edges.push((a, new));
        }
        selfs.push(-1);
    }
    let components = selfs
        .iter()
        .enumerate()
        .map(|(i, &s)| Component {
            id: format!("E{}", i + 1),
            self_intersection: s,
        })
        .collect();
    ResolutionGraph {
        components,
        edges,
        arrows: Vec::new(),
        ideal_specs: Vec::new(),
    }
}

fn random_branch(rng: &mut ChaCha8Rng, name: &str) -> PuiseuxBranch {
    loop {
        let n = rng.gen_range(1..=3u64);
        let n_terms = rng.gen_range(0..=2usize);
        let mut terms: Vec<(u64, i64)> = Vec::new();
        let mut e = n.max(1);
        for _ in 0..n_terms {
            e += rng.gen_range(1..=3u64);
            terms.push((e, *[1i64, -1, 2, 3].get(rng.gen_range(0..4)).unwrap()));
        }
        if let Ok(b) = PuiseuxBranch::from_int_terms(name, n, &terms, rng.gen_bool(0.2)) {
            return b;
        }
    }
}

#[test]
fn c05_linking_identities() {
    // 120 random proximity trees: E * M = -Id exactly, det(-E) = 1
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..120 {
        let graph = random_blowup_graph(&mut rng, 8);
        let e = graph.intersection_matrix();
        let checked = graph
            .validate(GraphMode::PlaneCurve)
            .unwrap_or_else(|err| panic!("trial {trial}: {err}"));
        let ld = checked.linking_data().unwrap();
        let prod = e.to_rat().mul(&ld.m);
        let n = e.rows();
        let minus_id = singpoincare::RatMatrix::identity(n).neg();
        assert_eq!(prod, minus_id, "trial {trial}: E*M != -Id");
        assert_eq!(ld.d, BigInt::from(1));
        // over the plane the linking matrix is positive and integral
        for i in 0..n {
            for j in 0..n {
                let entry = ld.m.get(i, j);
                assert!(entry.is_integer() && entry.numer() > &BigInt::zero());
            }
        }
    }

    // 10 random branch resolutions: curvette intersections recover M with
    // three independent seed choices
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut graphs_checked = 0;
    let mut attempt = 0;
    while graphs_checked < 10 {
        attempt += 1;
        let b1 = random_branch(&mut rng, "A");
        let rc = match resolve(&[b1]) {
            Ok(rc) => rc,
            Err(Error::IndistinguishableBranches(_, _)) | Err(Error::NotPrimitive(_)) => continue,
            Err(e) => panic!("attempt {attempt}: {e}"),
        };
        let checked = rc.graph.clone().validate(GraphMode::PlaneCurve).unwrap();
        let ld = checked.linking_data().unwrap();
        let n = rc.graph.components.len();

        let seed_pool = [
            (rat(5, 3), rat_int(4)),
            (rat_int(7), rat(9, 2)),
            (rat(11, 4), rat(13, 5)),
        ];
        // sample a few pairs, always including a diagonal one
        let mut pairs = vec![(n - 1, n - 1)];
        for _ in 0..4 {
            pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
        for (s, d) in pairs {
            let ids = (format!("E{}", s + 1), format!("E{}", d + 1));
            let expected = ld.m.get(s, d).clone();
            for (seed_a, seed_b) in &seed_pool {
                let ca = rc.curvette(&ids.0, seed_a).unwrap();
                let cb = rc.curvette(&ids.1, seed_b).unwrap();
                let got = intersection_number(&ca, &cb).unwrap();
                assert_eq!(
                    Rat::from_integer(got.into()),
                    expected,
                    "attempt {attempt}: m[{s}][{d}]"
                );
            }
        }
        graphs_checked += 1;
    }
    pass(5, "E*M = -Id on 120 random trees; curvette linking on 10 graphs");
}

#[test]
fn c06_divisorial_substitution_consistency() {
    // divisorial base of the cusp resolution (no curves chosen), substituted
    // by integer exponent vectors c, against the direct product with k = M*c
    let rc = resolve(&[cusp_branch()]).unwrap();
    let base = mixed_base(&rc, &[]).unwrap();
    let mut graph = rc.graph.clone();
    graph.arrows.clear();
    let m_cols: Vec<Vec<u64>> = vec![vec![1, 1, 2], vec![1, 2, 3], vec![2, 3, 6]];

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..10 {
        let c: Vec<u64> = (0..3).map(|_| rng.gen_range(0..=3u64)).collect();
        let ip = IdealPresentation {
            name: format!("I{trial}"),
            divisorial: (0..3)
                .map(|i| (format!("E{}", i + 1), rat_int(c[i] as i64)))
                .collect(),
            curves: Default::default(),
        };
        let substituted = poincare_of_ideal_set(&base, &[ip]).unwrap();

        // k = M * c
        let k: Vec<u64> = (0..3)
            .map(|row| (0..3).map(|col| m_cols[col][row] * c[col]).sum())
            .collect();
        let mut g = graph.clone();
        g.ideal_specs = vec![IdealSpec {
            name: "I".into(),
            k: k.clone(),
        }];
        let checked = g.validate(GraphMode::PlaneCurve).unwrap();
        let direct =
            poincare_from_graph(&checked, &checked.euler_data(), &checked.graph().ideal_specs)
                .unwrap();
        assert_eq!(substituted, direct, "trial {trial}: c = {c:?}, k = {k:?}");
    }
    pass(6, "divisorial substitution = direct product, 10 random exponents");
}

#[test]
fn c07_proposition_hypothesis() {
    let rc = resolve(&[cusp_branch()]).unwrap();
    let base = mixed_base(&rc, &["C".to_string()]).unwrap();
    let ideals = vec![
        IdealPresentation {
            name: "I1".into(),
            divisorial: [("E1".to_string(), rat_int(1))].into(),
            curves: Default::default(),
        },
        IdealPresentation {
            name: "I2".into(),
            divisorial: Default::default(),
            curves: [("C".to_string(), 0u64)].into(),
        },
    ];
    let err = poincare_of_ideal_set(&base, &ideals).unwrap_err();
    assert!(matches!(err, Error::HypothesisViolated(ref c) if c == "C"), "{err}");
    pass(7, "all-zero curve exponent rejected with HypothesisViolated");
}

#[test]
fn c08_corner_blowup_invariance() {
    // five graphs with at least one corner each
    let mut a2 = singpoincare::graph::fixtures::a2_graph();
    a2.ideal_specs = vec![IdealSpec {
        name: "I".into(),
        k: vec![1, 2],
    }];
    let graphs: Vec<ResolutionGraph> = vec![
        resolve(&[cusp_branch()]).unwrap().graph,
        resolve(&[PuiseuxBranch::from_int_terms("B", 2, &[(5, 1)], false).unwrap()])
            .unwrap()
            .graph,
        resolve(&[PuiseuxBranch::from_int_terms("B", 4, &[(6, 1), (7, 1)], false).unwrap()])
            .unwrap()
            .graph,
        resolve(&[
            cusp_branch(),
            PuiseuxBranch::from_int_terms("L", 1, &[], true).unwrap(),
        ])
        .unwrap()
        .graph,
        a2,
    ];

    for (i, graph) in graphs.into_iter().enumerate() {
        let mode = if i == 4 {
            GraphMode::RationalSingularity
        } else {
            GraphMode::PlaneCurve
        };
        let (a, b) = graph.edges[0];
        let ida = graph.components[a].id.clone();
        let idb = graph.components[b].id.clone();
        let blown = graph.blow_up_corner(&ida, &idb, "Enew").unwrap();

        let before = {
            let checked = graph.validate(mode).unwrap();
            poincare_from_graph(&checked, &checked.euler_data(), &checked.graph().ideal_specs)
                .unwrap()
        };
        let after = {
            let checked = blown.validate(mode).unwrap();
            // the fresh corner component must have chi = 0
            let chi = checked.euler_data();
            assert_eq!(*chi.chi.last().unwrap(), 0, "graph {i}");
            poincare_from_graph(&checked, &chi, &checked.graph().ideal_specs).unwrap()
        };
        assert_eq!(before, after, "graph {i}: factor forms differ");
        assert_eq!(
            before.expand_int(20).unwrap(),
            after.expand_int(20).unwrap(),
            "graph {i}: expansions differ"
        );
    }
    pass(8, "corner blowups leave the product unchanged on 5 graphs");
}

#[test]
fn c09_equivariant_structure() {
    // d = 1: the equivariant product reduces to the plain one exactly
    for graph in [
        singpoincare::graph::fixtures::cusp_graph(),
        singpoincare::graph::fixtures::smooth_graph(),
    ] {
        let g = graph.validate(GraphMode::PlaneCurve).unwrap();
        let euler = g.euler_data();
        let ld = g.linking_data().unwrap();
        assert_eq!(ld.d, BigInt::from(1));
        let eq = equivariant_poincare(&g, &euler, &ld, &g.graph().ideal_specs).unwrap();
        let plain = poincare_from_graph(&g, &euler, &g.graph().ideal_specs).unwrap();
        assert_eq!(eq, plain);
    }

    // A1: product, expansion coefficients, invariant part
    let g = singpoincare::graph::fixtures::a1_graph()
        .validate(GraphMode::RationalSingularity)
        .unwrap();
    let euler = g.euler_data();
    let ld = g.linking_data().unwrap();
    let alphas = characters_from_linking(&g, &ld).unwrap();
    assert_eq!(alphas[0].values(), &[rat(1, 2)]);

    let form = equivariant_poincare(&g, &euler, &ld, &g.graph().ideal_specs).unwrap();
    assert_eq!(form.render(), "(1 - [1/2] t^2)^-2");
    let series = expand_equivariant(&form, 22).unwrap();
    for l in 0..=10u64 {
        let tag = if l % 2 == 0 {
            CharTag::trivial(0)
        } else {
            CharTag::new(vec![rat(1, 2)])
        };
        assert_eq!(
            series.coeff(&Monomial(vec![2 * l])),
            GroupRingElement::from_term(tag, BigInt::from(l + 1)),
            "l = {l}"
        );
    }
    let inv = invariant_part(&series, 2).unwrap();
    for j in 0..=5u64 {
        assert_eq!(inv.coeff(&Monomial(vec![2 * j])), BigInt::from(2 * j + 1));
        assert!(CoeffRing::is_zero(&inv.coeff(&Monomial(vec![2 * j + 1]))));
    }
    pass(9, "equivariant: d=1 reduction, A1 product/expansion/invariant part");
}

#[test]
fn c10_symmetric_power_identity() {
    for chi in [1i64, 2, 3, 5] {
        let form = form_1var(&[(1, -chi)]);
        let s = form.expand_int(30).unwrap();
        // binom(chi + l - 1, l), computed incrementally
        let mut expected = BigInt::from(1);
        for l in 0..=30u64 {
            assert_eq!(s.coeff(&Monomial(vec![l])), expected, "chi={chi} l={l}");
            expected = expected * BigInt::from(chi as u64 + l) / BigInt::from(l + 1);
        }
    }
    pass(10, "expand((1-t)^-chi) coefficients are binomials, chi in {1,2,3,5}");
}

#[test]
fn c05_supplement_seed_agreement_via_oracle() {
    // the divisorial agreement certificate itself: three-seed check on the
    // cusp's E3 and on a deliberately special seed
    let rc = resolve(&[cusp_branch()]).unwrap();
    let mut seeds = singpoincare::oracle::SeedStream::new(3);
    let vr = ValuationRealization::from_filtration(&rc, &["E3".to_string()], &[], &mut seeds)
        .unwrap();
    singpoincare::oracle::check_divisorial(&vr, &[8]).unwrap();
    // a special seed is rejected upstream
    assert!(matches!(
        rc.curvette("E3", &rat_int(1)),
        Err(Error::SeedNotGeneric(_, _))
    ));
    pass(5, "supplement: 3-seed agreement and SeedNotGeneric path");
}
