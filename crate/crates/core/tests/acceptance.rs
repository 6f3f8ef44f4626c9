//! End-to-end acceptance checks for the toolkit, one test per criterion.
//! Each prints a single `criterion N: pass` line on success (visible with
//! `--nocapture`); a failure panics with context.

use igband::builtins::builtin_band;
use igband::free_band::v_free_band;
use igband::greens::{eggbox, greens, EggBox, GreensStructure};
use igband::group_tools::{
    abelian_invariants, is_commutator_relator, normalized_relator_set, simplify,
    smith_normal_form, SimplifyLimits, SimplifyStatus,
};
use igband::presentation::{
    canonical_band_schreier, find_schreier, present_band, present_general, theta_fast_path,
    verify_schreier,
};
use igband::singularity::{left_action, right_action, singular_rectangles, RectKind};
use igband::variety::{classify, VarietyTable};
use igband::FiniteBand;

use num_bigint::BigInt;

// ---- fixtures ----

fn rectangular_band(m: usize, n: usize) -> FiniteBand {
    let size = m * n;
    let grid: Vec<Vec<usize>> = (0..size)
        .map(|a| (0..size).map(|b| (a / n) * n + b % n).collect())
        .collect();
    FiniteBand::validate(&grid, None).expect("rectangular band table")
}

const SEMINORMAL_VARIETIES: [&str; 8] = ["LZ", "RZ", "SL", "ReB", "LNB", "RNB", "NB", "RSNB"];

/// 2- and 3-generated relatively free bands for the seminormal suite; the
/// left seminormal case enters through its opposite band.
fn seminormal_fixtures() -> Vec<(String, FiniteBand)> {
    let table = VarietyTable::default_table();
    let mut out = Vec::new();
    for n in [2usize, 3] {
        for label in SEMINORMAL_VARIETIES {
            let ids = table.identities(label).expect("table label");
            let band = v_free_band(n, ids).expect("v-free band").band;
            out.push((format!("vfree:{label}:{n}"), band));
        }
        let ids = table.identities("LSNB").expect("table label");
        let band = v_free_band(n, ids).expect("v-free band").band.opposite();
        out.push((format!("vfree:LSNB:{n} (opposite)"), band));
    }
    out
}

fn full_corpus() -> Vec<(String, FiniteBand)> {
    let mut out = vec![
        ("prop2-fb3".to_string(), builtin_band("prop2-fb3").unwrap()),
        ("prop2-frb4".to_string(), builtin_band("prop2-frb4").unwrap()),
    ];
    out.extend(seminormal_fixtures());
    for m in 1..=4 {
        for n in 1..=4 {
            out.push((format!("rect:{m}x{n}"), rectangular_band(m, n)));
        }
    }
    out
}

/// The egg-box of the bottom D-class of the 20-element band (16 elements),
/// based at its least member.
fn bottom_class(band: &FiniteBand) -> (GreensStructure, EggBox) {
    let sg = band.as_semigroup();
    let gs = greens(sg);
    let (d, base) = (0..gs.n_d)
        .map(|d| (d, gs.d_class_members(d)))
        .find(|(_, m)| m.len() == 16)
        .map(|(d, m)| (d, m[0]))
        .expect("16-element D-class");
    let eb = eggbox(sg, &gs, d, base).expect("egg-box");
    (gs, eb)
}

// ---- per-band outcomes shared between criteria 1-4 ----

type SigmaTables = Vec<(String, Vec<usize>, Vec<usize>)>;

fn sigma_outcome(band: &FiniteBand) -> SigmaTables {
    let (gs, eb) = bottom_class(band);
    ["ab", "aba", "ba", "bab"]
        .iter()
        .map(|label| {
            let eps = band.as_semigroup().resolve(label).expect("labeled element");
            let l = left_action(band, &gs, &eb, eps).expect("left action");
            let r = right_action(band, &gs, &eb, eps).expect("right action");
            (label.to_string(), l.map, r.map)
        })
        .collect()
}

type RectList = Vec<((usize, usize), (usize, usize), &'static str)>;

fn rectangles_outcome(band: &FiniteBand) -> RectList {
    let (gs, eb) = bottom_class(band);
    singular_rectangles(band.as_semigroup(), &gs, &eb, true)
        .iter()
        .map(|r| (r.rows, r.cols, r.kind.tag()))
        .collect()
}

struct GroupOutcome {
    generators: usize,
    relators: usize,
    commutator: bool,
    free_rank: usize,
    torsion: Vec<BigInt>,
}

fn group_outcome(band: &FiniteBand) -> GroupOutcome {
    let (gs, eb) = bottom_class(band);
    let p = present_band(band, &gs, &eb);
    let s = simplify(&p, &SimplifyLimits::default());
    let inv = abelian_invariants(&s.presentation);
    GroupOutcome {
        generators: s.presentation.n_generators(),
        relators: s.presentation.relators.len(),
        commutator: s.presentation.relators.len() == 1
            && is_commutator_relator(&s.presentation.relators[0].word).is_some(),
        free_rank: inv.free_rank,
        torsion: inv.torsion,
    }
}

// ---- criteria ----

#[test]
fn criterion_1_sigma_tables() {
    // expected actions, 0-based rows/columns
    let expect = |label: &str| -> (Vec<usize>, Vec<usize>) {
        let l = match label {
            "ab" | "aba" => vec![0, 1, 1, 0],
            "ba" | "bab" => vec![3, 2, 2, 3],
            _ => unreachable!(),
        };
        let r = match label {
            "ab" | "bab" => vec![1, 1, 2, 2],
            "ba" | "aba" => vec![0, 0, 3, 3],
            _ => unreachable!(),
        };
        (l, r)
    };
    let band = builtin_band("prop2-fb3").unwrap();
    for (label, l, r) in sigma_outcome(&band) {
        let (el, er) = expect(&label);
        assert_eq!(l, el, "left action of {label}");
        assert_eq!(r, er, "right action of {label}");
    }
    println!("criterion 1: pass");
}

#[test]
fn criterion_2_singular_rectangles() {
    let expected: RectList = vec![
        ((0, 1), (0, 1), "LR"),
        ((0, 1), (2, 3), "LR"),
        ((0, 3), (0, 3), "UD"),
        ((0, 3), (1, 2), "UD"),
        ((1, 2), (0, 3), "UD"),
        ((1, 2), (1, 2), "UD"),
        ((2, 3), (0, 1), "LR"),
        ((2, 3), (2, 3), "LR"),
    ];
    let band = builtin_band("prop2-fb3").unwrap();
    assert_eq!(rectangles_outcome(&band), expected);
    println!("criterion 2: pass");
}

#[test]
fn criterion_3_free_abelian_of_rank_two() {
    let band = builtin_band("prop2-fb3").unwrap();
    let out = group_outcome(&band);
    assert_eq!(out.generators, 2);
    assert_eq!(out.relators, 1);
    assert!(out.commutator, "single relator must be a commutator");
    assert_eq!(out.free_rank, 2);
    assert!(out.torsion.is_empty());
    println!("criterion 3: pass");
}

#[test]
fn criterion_4_realizations_agree() {
    let a = builtin_band("prop2-fb3").unwrap();
    let b = builtin_band("prop2-frb4").unwrap();
    assert!(
        igband::free_band::find_isomorphism(a.as_semigroup(), b.as_semigroup()).is_some(),
        "the two 20-element realizations must be isomorphic"
    );
    assert_eq!(sigma_outcome(&a), sigma_outcome(&b));
    assert_eq!(rectangles_outcome(&a), rectangles_outcome(&b));
    let (ga, gb) = (group_outcome(&a), group_outcome(&b));
    assert_eq!(ga.generators, gb.generators);
    assert_eq!(ga.relators, gb.relators);
    assert_eq!(ga.commutator, gb.commutator);
    assert_eq!(ga.free_rank, gb.free_rank);
    assert_eq!(ga.torsion, gb.torsion);
    println!("criterion 4: pass");
}

#[test]
fn criterion_5_seminormal_suite() {
    for (name, band) in seminormal_fixtures() {
        let sg = band.as_semigroup();
        let gs = greens(sg);
        for d in 0..gs.n_d {
            for base in gs.d_class_members(d) {
                let eb = eggbox(sg, &gs, d, base).expect("egg-box");
                // (i) no proper left-right rectangles in the seminormal case
                let rects = singular_rectangles(sg, &gs, &eb, true);
                assert!(
                    rects.iter().all(|r| r.kind != RectKind::LeftRight),
                    "{name}: proper LR rectangle in D-class {d} at base {base}"
                );
                // (ii) fast-path rank formula
                let theta = theta_fast_path(&band, &gs, &eb)
                    .unwrap_or_else(|e| panic!("{name}: fast path failed: {e}"));
                assert_eq!(
                    theta.free_rank,
                    (eb.n_rows() - 1) * (theta.m - 1),
                    "{name}: rank formula at base {base}"
                );
                // (iii) Tietze simplification certifies freeness at the same rank
                let p = present_band(&band, &gs, &eb);
                let s = simplify(&p, &SimplifyLimits::default());
                assert_eq!(
                    s.status,
                    SimplifyStatus::FreeCertified,
                    "{name}: not certified free at base {base}"
                );
                assert_eq!(s.presentation.n_generators(), theta.free_rank, "{name}");
                // (iv) abelianization sees the same free rank, no torsion
                let inv = abelian_invariants(&p);
                assert_eq!(inv.free_rank, theta.free_rank, "{name}");
                assert!(inv.torsion.is_empty(), "{name}");
            }
        }
    }
    println!("criterion 5: pass");
}

#[test]
fn criterion_6_rectangular_bands() {
    for m in 1..=4usize {
        for n in 1..=4usize {
            let band = rectangular_band(m, n);
            let sg = band.as_semigroup();
            let gs = greens(sg);
            assert_eq!(gs.n_d, 1, "a rectangular band has one D-class");
            let eb = eggbox(sg, &gs, gs.d_class[0], 0).expect("egg-box");
            assert!(
                singular_rectangles(sg, &gs, &eb, true).is_empty(),
                "{m}x{n}: proper singular rectangle found"
            );
            let rank = (m - 1) * (n - 1);
            let p = present_band(&band, &gs, &eb);
            let s = simplify(&p, &SimplifyLimits::default());
            assert_eq!(s.status, SimplifyStatus::FreeCertified, "{m}x{n}");
            assert_eq!(s.presentation.n_generators(), rank, "{m}x{n}");
            let inv = abelian_invariants(&p);
            assert_eq!((inv.free_rank, inv.torsion.len()), (rank, 0), "{m}x{n}");
        }
    }
    println!("criterion 6: pass");
}

#[test]
fn criterion_7_builder_cross_check() {
    for (name, band) in full_corpus() {
        let sg = band.as_semigroup();
        let gs = greens(sg);
        for d in 0..gs.n_d {
            let base = gs.d_class_members(d)[0];
            let eb = eggbox(sg, &gs, d, base).expect("egg-box");
            let sys = canonical_band_schreier(&band, &eb);
            assert!(
                verify_schreier(sg, &gs, &eb, &sys).passed(),
                "{name}: canonical system rejected in D-class {d}"
            );
            let (general, skipped) = present_general(sg, &gs, &eb, &sys);
            assert!(skipped.is_empty(), "{name}: bands have a full group-cell grid");
            let special = present_band(&band, &gs, &eb);
            assert_eq!(
                normalized_relator_set(&general),
                normalized_relator_set(&special),
                "{name}: builders disagree in D-class {d}"
            );
            let found = find_schreier(sg, &gs, &eb, 4)
                .unwrap_or_else(|e| panic!("{name}: no Schreier system found: {e}"));
            assert!(
                verify_schreier(sg, &gs, &eb, &found).passed(),
                "{name}: discovered system rejected in D-class {d}"
            );
        }
    }
    println!("criterion 7: pass");
}

#[test]
fn criterion_8_variety_dichotomy() {
    let band = builtin_band("prop2-fb3").unwrap();
    let table = VarietyTable::default_table();
    let c = classify(&band, &table).expect("classification");
    assert!(c.satisfied.iter().any(|l| l == "RB"), "must satisfy RB");
    for label in ["LSNB", "RSNB"] {
        assert!(
            c.failures.iter().any(|(l, _)| l == label),
            "must fail {label}"
        );
    }
    println!("criterion 8: pass");
}

#[test]
fn criterion_9_property_invariants() {
    // idempotent transformations of a 4-point set: image = fixed-point set
    for code in 0..4096u32 {
        let f: Vec<usize> = (0..4).map(|i| ((code >> (2 * i)) & 3) as usize).collect();
        let idem = (0..4).all(|i| f[f[i]] == f[i]);
        if !idem {
            continue;
        }
        let mut image: Vec<usize> = f.clone();
        image.sort_unstable();
        image.dedup();
        let fixed: Vec<usize> = (0..4).filter(|&i| f[i] == i).collect();
        assert_eq!(image, fixed);
    }

    for (name, band) in full_corpus() {
        let sg = band.as_semigroup();
        let gs = greens(sg);
        // R-after-L composition equals D
        for a in 0..sg.n() {
            for b in 0..sg.n() {
                let composed = (0..sg.n())
                    .any(|c| gs.r_class[c] == gs.r_class[a] && gs.l_class[c] == gs.l_class[b]);
                assert_eq!(
                    composed,
                    gs.d_class[a] == gs.d_class[b],
                    "{name}: R∘L != D at ({a},{b})"
                );
            }
        }
        for d in 0..gs.n_d {
            let base = gs.d_class_members(d)[0];
            let eb = eggbox(sg, &gs, d, base).expect("egg-box");
            // Schreier bullets hold for the canonical system
            let sys = canonical_band_schreier(&band, &eb);
            assert!(verify_schreier(sg, &gs, &eb, &sys).passed(), "{name}");
            // simplification preserves the abelianization
            let p = present_band(&band, &gs, &eb);
            let s = simplify(&p, &SimplifyLimits::default());
            assert_eq!(abelian_invariants(&p), abelian_invariants(&s.presentation), "{name}");
            // invariant factors of the exponent matrix form a divisibility chain
            let matrix: Vec<Vec<BigInt>> = p
                .relators
                .iter()
                .map(|r| {
                    let mut row = vec![BigInt::from(0); p.n_generators()];
                    for &(g, e) in &r.word {
                        row[g] += BigInt::from(e);
                    }
                    row
                })
                .collect();
            let diag = smith_normal_form(matrix);
            for w in diag.windows(2) {
                use num_traits::Zero;
                assert!(
                    w[1].is_zero() || (&w[1] % &w[0]).is_zero(),
                    "{name}: divisibility chain broken"
                );
            }
        }
    }
    println!("criterion 9: pass");
}
