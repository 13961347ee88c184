//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Run with `cargo test -p eqkh --test acceptance -- --nocapture` to see the
//! report.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use common::*;
use eqkh::annular::{annular_quotient, annular_state, build_annular_complex};
use eqkh::chromatic::{
    act_on_graph_state, build_graph_complex, chromatic_euler_check, compare_graph_fixed_points, graph_quotient, Graph,
    GraphState,
};
use eqkh::diagram::parse_diagram;
use eqkh::equivariant::{compare_with_fixed_points, khovanov_equivariant, symmetric_r1_check, transfer_and_projection};
use eqkh::khovanov::{build_complex, skein_exactness_check, EnhancedState, Flavor, KhOptions, StateSpace};
use eqkh::oracles::{bracket_statesum, burnside_orbit_count, dense_homology, jones_from_bracket, DENSE_CAP};
use eqkh::{homology, CyclicAction, GradedComplex, Grading, HomologyTable, LaurentPoly, LinkDiagram};
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<String, String>;

fn opts() -> KhOptions {
    KhOptions::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(entries: &[((i32, i32), usize)]) -> HomologyTable {
    HomologyTable::from_dims(entries.iter().map(|&((h, q), d)| (Grading::new(h, q), d)))
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn criterion_1() -> Outcome {
    let (d, a) = unlink3();
    let h = homology(&build_complex(&d, Flavor::Oriented, &opts()).map_err(|e| e.to_string())?);
    let e = khovanov_equivariant(&d, &a, Flavor::Oriented, &opts()).map_err(|e| e.to_string())?;
    let hg = e.homology();
    ensure(
        h == table(&[((0, 3), 1), ((0, 1), 3), ((0, -1), 3), ((0, -3), 1)]),
        || format!("H = {}", h.to_table_string()),
    )?;
    ensure(
        hg == table(&[((0, 3), 1), ((0, 1), 1), ((0, -1), 1), ((0, -3), 1)]),
        || format!("H_G = {}", hg.to_table_string()),
    )?;
    ensure(hg.euler_polynomial() == poly("q^3+q+q^-1+q^-3"), || {
        format!("V_G = {}", hg.euler_polynomial())
    })?;
    ensure(h.euler_polynomial() == poly("q^3+3q+3q^-1+q^-3"), || {
        format!("V = {}", h.euler_polynomial())
    })?;
    Ok(format!("V_G = {}, V = {}", hg.euler_polynomial(), h.euler_polynomial()))
}

fn criterion_2() -> Outcome {
    let (d, a) = trefoil();
    let expected = table(&[
        ((0, 1), 1),
        ((0, 3), 1),
        ((2, 5), 1),
        ((2, 7), 1),
        ((3, 7), 1),
        ((3, 9), 1),
    ]);
    let e = khovanov_equivariant(&d, &a, Flavor::Oriented, &opts()).map_err(|e| e.to_string())?;
    let hg = e.homology();
    let h = homology(&e.underlying);
    ensure(hg == expected, || format!("H_G = {}", hg.to_table_string()))?;
    ensure(h == hg, || format!("H = {}", h.to_table_string()))?;
    ensure(hg.euler_polynomial() == poly("-q^9+q^5+q^3+q"), || {
        format!("V_G = {}", hg.euler_polynomial())
    })?;
    Ok(format!(
        "H_G = H = {}, V_G = {}",
        hg.to_table_string(),
        hg.euler_polynomial()
    ))
}

fn criterion_3() -> Outcome {
    let all = all_symmetric();
    let constructed = constructed_symmetric().len();
    ensure(constructed >= 5, || format!("only {constructed} constructed diagrams"))?;
    for (name, d, a) in &all {
        let (_, r) =
            compare_with_fixed_points(d, a, Flavor::Oriented, &opts(), false).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.passed(), || format!("{name}: mismatches at {:?}", r.mismatches))?;
    }
    Ok(format!(
        "{} diagrams ({constructed} constructed, p = 3 and 5)",
        all.len()
    ))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for (name, d, a) in all_symmetric() {
        let e = khovanov_equivariant(&d, &a, Flavor::Oriented, &opts()).map_err(|e| e.to_string())?;
        let r = transfer_and_projection(&e, false).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {r:?}"))?;
        count += 1;
        if d.is_annular() {
            let e = annular_quotient(&d, &a, &opts(), false).map_err(|e| e.to_string())?;
            let r = transfer_and_projection(&e, false).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{name} (annular): {r:?}"))?;
            count += 1;
        }
    }
    for n in [3, 5] {
        let g = Graph::cycle(n).unwrap().with_automorphism(Graph::rotation(n)).unwrap();
        let e = graph_quotient(&g, 16, false).map_err(|e| e.to_string())?;
        let r = transfer_and_projection(&e, false).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("C{n}: {r:?}"))?;
        count += 1;
    }
    Ok(format!("{count} equivariant complexes"))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let n = 120;
    for _ in 0..n {
        let (s, w) = random_braid(&mut rng, 8);
        let d = closure(s, &w);
        let c = build_complex(&d, Flavor::Oriented, &opts()).map_err(|e| e.to_string())?;
        let bad = c.d_squared_violations();
        ensure(bad.is_empty(), || format!("braid {s} {w:?}: d² ≠ 0 at {bad:?}"))?;
        let euler = homology(&c).euler_polynomial();
        let b = bracket_statesum(&d, opts().cap).map_err(|e| e.to_string())?;
        let jones = jones_from_bracket(&b, d.writhe().map_err(|e| e.to_string())?);
        ensure(euler == jones, || {
            format!("braid {s} {w:?}: Euler {euler} vs bracket {jones}")
        })?;
    }
    Ok(format!("{n} random braid closures with at most 8 crossings"))
}

fn criterion_6() -> Outcome {
    let pairs: &[(&str, usize, &[i32], &[i32])] = &[
        ("R2", 2, &[1], &[1, 1, -1]),
        ("R2", 2, &[1], &[1, -1, 1]),
        ("R2", 2, &[-1], &[-1, 1, -1]),
        ("R2", 2, &[], &[1, -1]),
        ("R2", 3, &[1], &[1, 2, -2]),
        ("R2", 3, &[2], &[2, -1, 1]),
        ("R3", 3, &[1, 2, 1], &[2, 1, 2]),
        ("R3", 3, &[-1, -2, -1], &[-2, -1, -2]),
        ("R3", 3, &[1, 2, -1], &[-2, 1, 2]),
    ];
    let p = 3;
    for (kind, s, w1, w2) in pairs {
        let (d1, a1) = braid_lift(*s, w1, p);
        let (d2, a2) = braid_lift(*s, w2, p);
        let h1 = khovanov_equivariant(&d1, &a1, Flavor::Oriented, &opts())
            .map_err(|e| e.to_string())?
            .homology();
        let h2 = khovanov_equivariant(&d2, &a2, Flavor::Oriented, &opts())
            .map_err(|e| e.to_string())?
            .homology();
        ensure(h1 == h2, || {
            format!(
                "{kind} {w1:?} vs {w2:?}: {} vs {}",
                h1.to_table_string(),
                h2.to_table_string()
            )
        })?;
    }
    let r1_cases = [
        ("trefoil", trefoil()),
        ("3-unlink", unlink3()),
        ("braid [1, 1]", braid_lift(2, &[1, 1], p)),
    ];
    for (name, (d, a)) in &r1_cases {
        let r = symmetric_r1_check(d, a, d.arc_labels()[0], &opts()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.passed(), || {
            format!(
                "R1 on {name}: steps {} equivariant {} commutes {} quasi-iso {}",
                r.steps_passed, r.equivariant, r.quotient_commutes, r.quotient_quasi_isomorphism
            )
        })?;
    }
    Ok(format!(
        "{} R2/R3 pairs and {} R1 pairs, p = {p}",
        pairs.len(),
        r1_cases.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut checks = 0;
    for d in small_corpus() {
        ensure(d.crossing_count() <= 5, || "corpus diagram too large".into())?;
        for v in 0..d.crossing_count() {
            let r = skein_exactness_check(&d, v, &opts()).map_err(|e| e.to_string())?;
            ensure(r.is_exact(), || {
                format!("crossing {v} of {:?}: {:?}", d.crossings(), r.violations)
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} crossings"))
}

fn annular_corpus() -> Vec<LinkDiagram> {
    let mut out: Vec<LinkDiagram> = all_symmetric()
        .into_iter()
        .map(|(_, d, _)| d)
        .filter(|d| d.is_annular())
        .collect();
    for text in [
        "O 1\nRAY 1 1\n",
        "O\nANNULAR\n",
        "O 1\nO 2\nRAY 1 1\nRAY 2 -1\n",
        "X 1 2 2 1\nRAY 1 1\nRAY 2 1\n",
        "X 1 2 3 4\nX 3 4 1 2\nRAY 1 1\nRAY 3 1\n",
    ] {
        out.push(parse_diagram(text).unwrap());
    }
    out
}

fn criterion_8() -> Outcome {
    let corpus = annular_corpus();
    for d in &corpus {
        let c = build_annular_complex(d, &opts()).map_err(|e| e.to_string())?;
        let bad = c.complex.d_squared_violations();
        ensure(bad.is_empty(), || format!("{:?}: d² ≠ 0 at {bad:?}", d.crossings()))?;
        let space = StateSpace::new(d, &opts()).map_err(|e| e.to_string())?;
        for g in c.complex.gradings() {
            let Some(m) = c.complex.differential(g) else { continue };
            let tgt = g.shifted(c.complex.step());
            for (r, col) in m.entries() {
                let t = &c.complex.basis(&tgt)[r];
                let fr = space.grading(t, Flavor::Framed).map_err(|e| e.to_string())?;
                let k = annular_state(&space, t).k;
                ensure(fr.q == g.q && Some(k) == g.k && fr.h == tgt.h, || {
                    format!("term {col}->{r} leaves grading {g}")
                })?;
            }
        }
        let full = build_complex(d, Flavor::Framed, &opts()).map_err(|e| e.to_string())?;
        let mut summed: BTreeMap<Grading, usize> = BTreeMap::new();
        for (g, n) in c.complex.chain_dims() {
            *summed.entry(Grading::new(g.h, g.q)).or_insert(0) += n;
        }
        ensure(summed == full.chain_dims(), || {
            format!("{:?}: chain dimensions differ", d.crossings())
        })?;
    }
    let (d1, a1) = braid_lift(2, &[1], 3);
    let (d2, a2) = braid_lift(2, &[1, 1, -1], 3);
    let h1 = annular_quotient(&d1, &a1, &opts(), false)
        .map_err(|e| e.to_string())?
        .homology();
    let h2 = annular_quotient(&d2, &a2, &opts(), false)
        .map_err(|e| e.to_string())?
        .homology();
    ensure(h1 == h2, || {
        format!("R2 pair: {} vs {}", h1.to_table_string(), h2.to_table_string())
    })?;
    Ok(format!("{} annular diagrams, one orbit-wise R2 pair", corpus.len()))
}

fn criterion_9() -> Outcome {
    let mut graphs = connected_graphs(5);
    ensure(graphs.len() == 31, || {
        format!("{} connected graphs on at most 5 vertices", graphs.len())
    })?;
    graphs.push(Graph::cycle(6).unwrap());
    for g in &graphs {
        let r = chromatic_euler_check(g, 16).map_err(|e| e.to_string())?;
        ensure(r.passed(), || {
            format!("{:?}: {} vs {}", g.edges(), r.euler_lambda, r.chromatic)
        })?;
    }
    for n in [3, 5] {
        let g = Graph::cycle(n).unwrap().with_automorphism(Graph::rotation(n)).unwrap();
        let (_, r) = compare_graph_fixed_points(&g, 16, false).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("C{n}: mismatches at {:?}", r.mismatches))?;
    }
    Ok(format!("{} graphs, C3 and C5 equivariant", graphs.len()))
}

fn dual_path<S>(name: &str, c: &GradedComplex<S>) -> Result<bool, String>
where
    S: Sync,
{
    match dense_homology(c, DENSE_CAP) {
        Ok(h) => {
            ensure(h == homology(c), || format!("{name}: dense and sparse homology differ"))?;
            Ok(true)
        }
        Err(eqkh::Error::ResourceCap { .. }) => Ok(false),
        Err(e) => Err(e.to_string()),
    }
}

fn burnside_matches(name: &str, d: &LinkDiagram, a: &CyclicAction) -> Result<(), String> {
    let space = StateSpace::new(d, &opts()).map_err(|e| e.to_string())?;
    let c = space.complex(Flavor::Oriented).map_err(|e| e.to_string())?;
    let counts =
        burnside_orbit_count(c.blocks(), a.order(), |s: &EnhancedState| space.act(a, s)).map_err(|e| e.to_string())?;
    let e = khovanov_equivariant(d, a, Flavor::Oriented, &opts()).map_err(|e| e.to_string())?;
    ensure(counts == e.orbit_counts(), || {
        format!("{name}: Burnside counts differ from orbits")
    })?;
    ensure(counts == e.quotient.chain_dims(), || {
        format!("{name}: Burnside counts differ from quotient")
    })
}

fn criterion_10() -> Outcome {
    let mut compared = 0;
    let mut rng = StdRng::seed_from_u64(0xd0e5);
    let mut diagrams: Vec<(String, LinkDiagram)> = small_corpus()
        .into_iter()
        .enumerate()
        .map(|(i, d)| (format!("corpus {i}"), d))
        .collect();
    for i in 0..30 {
        let (s, w) = random_braid(&mut rng, 5);
        diagrams.push((format!("random {i}: {s} {w:?}"), closure(s, &w)));
    }
    for (name, d, a) in all_symmetric() {
        burnside_matches(&name, &d, &a)?;
        let e = khovanov_equivariant(&d, &a, Flavor::Oriented, &opts()).map_err(|e| e.to_string())?;
        compared += dual_path(&name, &e.quotient)? as usize;
        diagrams.push((name, d));
    }
    for (name, d) in &diagrams {
        let c = build_complex(d, Flavor::Oriented, &opts()).map_err(|e| e.to_string())?;
        compared += dual_path(name, &c)? as usize;
    }
    for d in annular_corpus() {
        let c = build_annular_complex(&d, &opts()).map_err(|e| e.to_string())?;
        compared += dual_path("annular", &c.complex)? as usize;
    }
    for g in connected_graphs(4) {
        compared += dual_path("graph", &build_graph_complex(&g, 16).map_err(|e| e.to_string())?)? as usize;
    }
    for n in [3, 5] {
        let g = Graph::cycle(n).unwrap().with_automorphism(Graph::rotation(n)).unwrap();
        let e = graph_quotient(&g, 16, false).map_err(|e| e.to_string())?;
        let c = build_graph_complex(&g, 16).map_err(|e| e.to_string())?;
        let act = |s: &GraphState| act_on_graph_state(&g, s).unwrap();
        let counts = burnside_orbit_count(c.blocks(), n, act).map_err(|e| e.to_string())?;
        ensure(counts == e.quotient.chain_dims(), || {
            format!("C{n}: Burnside counts differ")
        })?;
        compared += dual_path("graph quotient", &e.quotient)? as usize;
    }
    Ok(format!(
        "{compared} complexes on both paths, Burnside counts on every equivariant instance"
    ))
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                println!("criterion {n}: FAIL ({why})");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
