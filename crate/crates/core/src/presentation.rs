//! Presentations of maximal subgroups of the free idempotent generated
//! semigroup IG(E): the general three-relation-type pipeline over a Schreier
//! system, its band specialization, and the fast free-rank path for right
//! seminormal bands.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::greens::{EggBox, GreensStructure};
use crate::semigroup::{FiniteBand, FiniteSemigroup};
use crate::singularity::{singular_rectangles, right_action, RectKind, SingularityError};
use crate::variety::{satisfies, BandIdentity, SatisfiesResult};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("no Schreier system found within the length bound {max_len} (bound hit, not a proof of nonexistence)")]
    SchreierNotFound { max_len: usize },
    #[error("the band does not satisfy the right seminormal identity (witness substitution {witness:?})")]
    NotSeminormal { witness: Vec<usize> },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Singularity(#[from] SingularityError),
}

/// A Schreier system of representatives for a D-class: prefix-closed words
/// `r[j]` over the idempotents of S, inverse words `r_inv[j]`, and an anchor
/// column per row. Column/row indices are egg-box coordinates; `r[0]` is the
/// empty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierSystem {
    pub r: Vec<Vec<usize>>,
    pub r_inv: Vec<Vec<usize>>,
    pub anchor: Vec<usize>,
}

fn apply_word(sg: &FiniteSemigroup, x: usize, word: &[usize]) -> usize {
    word.iter().fold(x, |acc, &e| sg.product(acc, e))
}

/// Members of column j of the egg-box (the L-class L_j restricted to D).
fn column_members(eb: &EggBox, j: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..eb.n_rows() {
        out.extend_from_slice(&eb.cells[i][j]);
    }
    out
}

/// Least anchor column per row: smallest j with (i, j) a group cell.
fn least_anchors(eb: &EggBox) -> Vec<usize> {
    (0..eb.n_rows())
        .map(|i| {
            (0..eb.n_cols())
                .find(|&j| eb.is_group_cell(i, j))
                .expect("regular D-class: every R-class holds an idempotent")
        })
        .collect()
}

/// The canonical band system: r_1 empty, r_j = e_{1j}, r'_j = e_{11}.
pub fn canonical_band_schreier(band: &FiniteBand, eb: &EggBox) -> SchreierSystem {
    let _ = band;
    let mut r = vec![Vec::new()];
    let mut r_inv = vec![vec![eb.base]];
    for j in 1..eb.n_cols() {
        r.push(vec![eb.idem(0, j)]);
        r_inv.push(vec![eb.base]);
    }
    SchreierSystem {
        r,
        r_inv,
        anchor: vec![0; eb.n_rows()],
    }
}

/// Whether right multiplication by `word` restricts to an R-class-preserving
/// bijection from column `from` onto column `to`.
fn word_is_column_bijection(
    sg: &FiniteSemigroup,
    gs: &GreensStructure,
    eb: &EggBox,
    from: usize,
    to: usize,
    word: &[usize],
) -> bool {
    let source = column_members(eb, from);
    let mut seen = Vec::new();
    for &x in &source {
        let y = apply_word(sg, x, word);
        if gs.l_class[y] != eb.j_lclasses[to]
            || gs.r_class[y] != gs.r_class[x]
            || seen.contains(&y)
        {
            return false;
        }
        seen.push(y);
    }
    seen.len() == column_members(eb, to).len()
}

/// Breadth-first search for a Schreier system: representative words grow as a
/// tree rooted at the empty word, so prefix closure holds by construction.
/// Inverse words are found per column by a separate shortest-word search.
pub fn find_schreier(
    sg: &FiniteSemigroup,
    gs: &GreensStructure,
    eb: &EggBox,
    max_len: usize,
) -> Result<SchreierSystem, PresentationError> {
    let nj = eb.n_cols();
    let idempotents = sg.idempotents();
    let mut r: Vec<Option<Vec<usize>>> = vec![None; nj];
    r[0] = Some(Vec::new());
    let mut queue: Vec<Vec<usize>> = vec![Vec::new()];
    let mut assigned = 1;
    while let Some(word) = queue.pop() {
        if assigned == nj || word.len() >= max_len {
            continue;
        }
        for &e in &idempotents {
            let mut next = word.clone();
            next.push(e);
            let open: Vec<usize> = (0..nj).filter(|&j| r[j].is_none()).collect();
            if let Some(&j) = open
                .iter()
                .find(|&&j| word_is_column_bijection(sg, gs, eb, 0, j, &next))
            {
                r[j] = Some(next.clone());
                assigned += 1;
                queue.insert(0, next);
            }
        }
    }
    if assigned != nj {
        return Err(PresentationError::SchreierNotFound { max_len });
    }
    let r: Vec<Vec<usize>> = r.into_iter().map(Option::unwrap).collect();

    // shortest inverse word per column, again breadth-first
    let mut r_inv = Vec::with_capacity(nj);
    for j in 0..nj {
        let source = column_members(eb, 0);
        let forward: Vec<usize> = source.iter().map(|&x| apply_word(sg, x, &r[j])).collect();
        let inverts = |v: &[usize]| -> bool {
            word_is_column_bijection(sg, gs, eb, j, 0, v)
                && source
                    .iter()
                    .zip(&forward)
                    .all(|(&x, &y)| apply_word(sg, y, v) == x)
        };
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        let mut found = None;
        'search: for _ in 0..=max_len {
            for v in &frontier {
                if inverts(v) {
                    found = Some(v.clone());
                    break 'search;
                }
            }
            frontier = frontier
                .iter()
                .flat_map(|v| {
                    idempotents.iter().map(move |&e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        r_inv.push(found.ok_or(PresentationError::SchreierNotFound { max_len })?);
    }
    Ok(SchreierSystem {
        r,
        r_inv,
        anchor: least_anchors(eb),
    })
}

/// Outcome of checking a Schreier system against its defining bullets.
#[derive(Debug, Clone, Default)]
pub struct SchreierReport {
    /// (column, description) for every bijection/inverse violation
    pub bijection_failures: Vec<(usize, String)>,
    /// columns whose word has a prefix matching no representative
    pub prefix_failures: Vec<usize>,
    /// rows whose anchor is not a group cell
    pub anchor_failures: Vec<usize>,
}

impl SchreierReport {
    pub fn passed(&self) -> bool {
        self.bijection_failures.is_empty()
            && self.prefix_failures.is_empty()
            && self.anchor_failures.is_empty()
    }
}

/// Verifies the two Schreier bullets plus anchor validity, pointwise.
pub fn verify_schreier(
    sg: &FiniteSemigroup,
    gs: &GreensStructure,
    eb: &EggBox,
    sys: &SchreierSystem,
) -> SchreierReport {
    let mut report = SchreierReport::default();
    let nj = eb.n_cols();
    if sys.r.len() != nj || sys.r_inv.len() != nj || sys.anchor.len() != eb.n_rows() {
        report
            .bijection_failures
            .push((0, "system size does not match the egg-box".into()));
        return report;
    }
    if !sys.r[0].is_empty() {
        report
            .bijection_failures
            .push((0, "r_1 must be the empty word".into()));
    }
    for j in 0..nj {
        if !word_is_column_bijection(sg, gs, eb, 0, j, &sys.r[j]) {
            report.bijection_failures.push((
                j,
                "right multiplication by r_j is not an R-preserving bijection L_1 -> L_j".into(),
            ));
            continue;
        }
        if !word_is_column_bijection(sg, gs, eb, j, 0, &sys.r_inv[j]) {
            report.bijection_failures.push((
                j,
                "right multiplication by r'_j is not an R-preserving bijection L_j -> L_1".into(),
            ));
            continue;
        }
        for &x in &column_members(eb, 0) {
            let y = apply_word(sg, x, &sys.r[j]);
            if apply_word(sg, y, &sys.r_inv[j]) != x {
                report
                    .bijection_failures
                    .push((j, format!("r_j r'_j does not fix element {x} of L_1")));
                break;
            }
        }
        for &y in &column_members(eb, j) {
            let x = apply_word(sg, y, &sys.r_inv[j]);
            if apply_word(sg, x, &sys.r[j]) != y {
                report
                    .bijection_failures
                    .push((j, format!("r'_j r_j does not fix element {y} of L_j")));
                break;
            }
        }
    }
    for j in 0..nj {
        for cut in 0..sys.r[j].len() {
            let prefix = &sys.r[j][..cut];
            if !sys.r.iter().any(|w| w == prefix) {
                report.prefix_failures.push(j);
                break;
            }
        }
    }
    for (i, &j) in sys.anchor.iter().enumerate() {
        if j >= nj || !eb.is_group_cell(i, j) {
            report.anchor_failures.push(i);
        }
    }
    report
}

/// Where a relator came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// f_{i, j(i)} = 1
    TypeI { i: usize },
    /// f_{ij} = f_{il} via r_j e_{il} = r_l
    TypeII { i: usize, j: usize, l: usize },
    /// left-right singular rectangle, with its least singularising idempotent
    LrSquare {
        rows: (usize, usize),
        cols: (usize, usize),
        witness: usize,
    },
    /// up-down singular rectangle
    UdSquare {
        rows: (usize, usize),
        cols: (usize, usize),
        witness: usize,
    },
    /// produced by simplification or parsed from text
    Derived,
}

/// A freely reduced relator: letters are (generator id, exponent +-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub word: Vec<(usize, i8)>,
    pub provenance: Provenance,
}

/// Free reduction of a signed word.
pub fn free_reduce(word: &[(usize, i8)]) -> Vec<(usize, i8)> {
    let mut out: Vec<(usize, i8)> = Vec::with_capacity(word.len());
    for &(g, e) in word {
        debug_assert!(e == 1 || e == -1);
        if let Some(&(g2, e2)) = out.last() {
            if g2 == g && e2 == -e {
                out.pop();
                continue;
            }
        }
        out.push((g, e));
    }
    out
}

impl Relator {
    /// Reduces on construction; an empty reduction yields no relator.
    pub fn new(word: Vec<(usize, i8)>, provenance: Provenance) -> Option<Relator> {
        let word = free_reduce(&word);
        if word.is_empty() {
            None
        } else {
            Some(Relator { word, provenance })
        }
    }
}

/// A group presentation with egg-box-indexed generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    /// generator (i, j) grid positions, row-major over the group cells
    pub generators: Vec<(usize, usize)>,
    pub relators: Vec<Relator>,
}

impl GroupPresentation {
    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_id(&self, cell: (usize, usize)) -> Option<usize> {
        self.generators.iter().position(|&c| c == cell)
    }
}

fn push_relator(relators: &mut Vec<Relator>, word: Vec<(usize, i8)>, provenance: Provenance) {
    if let Some(r) = Relator::new(word, provenance) {
        relators.push(r);
    }
}

fn square_relators(
    sg: &FiniteSemigroup,
    gs: &GreensStructure,
    eb: &EggBox,
    gen_of: &BTreeMap<(usize, usize), usize>,
    relators: &mut Vec<Relator>,
) {
    let mut rects = singular_rectangles(sg, gs, eb, false);
    rects.sort_by_key(|r| (r.kind, r.rows, r.cols));
    for rect in rects {
        let (i, k) = rect.rows;
        let (j, l) = rect.cols;
        let f = |cell: (usize, usize)| gen_of[&cell];
        // f_ij^-1 f_il f_kl^-1 f_kj, the fixed cyclic convention
        let word = vec![
            (f((i, j)), -1),
            (f((i, l)), 1),
            (f((k, l)), -1),
            (f((k, j)), 1),
        ];
        let provenance = match rect.kind {
            RectKind::LeftRight => Provenance::LrSquare {
                rows: rect.rows,
                cols: rect.cols,
                witness: rect.least_witness(),
            },
            RectKind::UpDown => Provenance::UdSquare {
                rows: rect.rows,
                cols: rect.cols,
                witness: rect.least_witness(),
            },
        };
        push_relator(relators, word, provenance);
    }
}

/// The general pipeline: generators on group cells, type (i) relations from
/// anchors, type (ii) from literal Schreier-word matches, type (iii) from
/// singular rectangles. Returns the presentation together with the type (ii)
/// matches skipped because a referenced cell is not a group cell.
pub fn present_general(
    sg: &FiniteSemigroup,
    gs: &GreensStructure,
    eb: &EggBox,
    sys: &SchreierSystem,
) -> (GroupPresentation, Vec<(usize, usize, usize)>) {
    let generators: Vec<(usize, usize)> = eb.group_cells.clone();
    let gen_of: BTreeMap<(usize, usize), usize> =
        generators.iter().enumerate().map(|(g, &c)| (c, g)).collect();
    let mut relators = Vec::new();
    let mut skipped = Vec::new();

    for (i, &ji) in sys.anchor.iter().enumerate() {
        push_relator(
            &mut relators,
            vec![(gen_of[&(i, ji)], 1)],
            Provenance::TypeI { i },
        );
    }

    // type (ii): r_j concatenated with the letter e_{il} equals r_l literally
    for i in 0..eb.n_rows() {
        for j in 0..eb.n_cols() {
            for l in 0..eb.n_cols() {
                if j == l || !eb.is_group_cell(i, l) {
                    continue;
                }
                let mut w = sys.r[j].clone();
                w.push(eb.idem(i, l));
                if w != sys.r[l] {
                    continue;
                }
                if !eb.is_group_cell(i, j) {
                    skipped.push((i, j, l));
                    continue;
                }
                push_relator(
                    &mut relators,
                    vec![(gen_of[&(i, j)], 1), (gen_of[&(i, l)], -1)],
                    Provenance::TypeII { i, j, l },
                );
            }
        }
    }

    square_relators(sg, gs, eb, &gen_of, &mut relators);
    (GroupPresentation { generators, relators }, skipped)
}

/// The band specialization: full generator grid, relations f_{i1} = f_{1j} = 1,
/// and one relator per singular rectangle.
pub fn present_band(band: &FiniteBand, gs: &GreensStructure, eb: &EggBox) -> GroupPresentation {
    debug_assert!(eb.is_full_grid());
    let generators: Vec<(usize, usize)> = eb.group_cells.clone();
    let gen_of: BTreeMap<(usize, usize), usize> =
        generators.iter().enumerate().map(|(g, &c)| (c, g)).collect();
    let mut relators = Vec::new();
    for i in 0..eb.n_rows() {
        push_relator(&mut relators, vec![(gen_of[&(i, 0)], 1)], Provenance::TypeI { i });
    }
    for j in 1..eb.n_cols() {
        push_relator(
            &mut relators,
            vec![(gen_of[&(0, j)], 1)],
            Provenance::TypeII { i: 0, j: 0, l: j },
        );
    }
    square_relators(band.as_semigroup(), gs, eb, &gen_of, &mut relators);
    GroupPresentation { generators, relators }
}

/// Result of the fast free-rank computation for right seminormal bands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaClosure {
    /// generating pairs of rho_B: both columns in im sigma_eps^(r), by witness
    pub rho_pairs: Vec<(usize, usize)>,
    /// theta_B class id per column
    pub classes: Vec<usize>,
    /// least column of each class; the base column's class comes first
    pub cross_section: Vec<usize>,
    /// number of theta_B classes
    pub m: usize,
    pub free_rank: usize,
    /// the reduced free generating set {f_{i, j_r}: i != 1, r >= 2}
    pub reduced_generators: Vec<(usize, usize)>,
}

/// Proposition-1 fast path: valid for bands satisfying the right seminormal
/// identity tuv = tvtuv (run the opposite band through it for the left case).
pub fn theta_fast_path(
    band: &FiniteBand,
    gs: &GreensStructure,
    eb: &EggBox,
) -> Result<ThetaClosure, PresentationError> {
    let rsnb = BandIdentity::parse("RSNB", "tuv=tvtuv").expect("fixed identity");
    if let SatisfiesResult::Fails { witness } = satisfies(band, &rsnb).expect("3 variables") {
        return Err(PresentationError::NotSeminormal { witness });
    }
    let nj = eb.n_cols();
    let mut parent: Vec<usize> = (0..nj).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut rho_pairs = Vec::new();
    for eps in band.idempotents() {
        if !gs.d_leq(eb.d_class, gs.d_class[eps]) {
            continue;
        }
        let sr = right_action(band, gs, eb, eps)?;
        let image = sr.image();
        for w in image.windows(2) {
            rho_pairs.push((w[0], w[1]));
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let base_root = find(&mut parent, 0);
    class_of_root.insert(base_root, 0);
    let mut cross_section = vec![0usize];
    for j in 0..nj {
        let root = find(&mut parent, j);
        if let std::collections::btree_map::Entry::Vacant(slot) = class_of_root.entry(root) {
            slot.insert(cross_section.len());
            cross_section.push(j);
        }
    }
    let classes: Vec<usize> = (0..nj)
        .map(|j| class_of_root[&find(&mut parent, j)])
        .collect();
    let m = cross_section.len();
    let free_rank = (eb.n_rows() - 1) * (m - 1);
    let mut reduced_generators = Vec::new();
    for i in 1..eb.n_rows() {
        for &jr in &cross_section[1..] {
            reduced_generators.push((i, jr));
        }
    }
    Ok(ThetaClosure {
        rho_pairs,
        classes,
        cross_section,
        m,
        free_rank,
        reduced_generators,
    })
}

// ---- text and JSON serialization of presentations ----

fn gen_token(cell: (usize, usize)) -> String {
    format!("f_{}_{}", cell.0 + 1, cell.1 + 1)
}

/// The plain-text presentation format: one `gens:` line, one `rel:` line per
/// relator, 1-based cell indices, `^-1` marking inverse letters.
pub fn emit_text(p: &GroupPresentation) -> String {
    let mut out = String::from("gens:");
    for &c in &p.generators {
        out.push(' ');
        out.push_str(&gen_token(c));
    }
    out.push('\n');
    for rel in &p.relators {
        out.push_str("rel:");
        for &(g, e) in &rel.word {
            out.push(' ');
            out.push_str(&gen_token(p.generators[g]));
            if e < 0 {
                out.push_str("^-1");
            }
        }
        out.push('\n');
    }
    out
}

fn parse_gen_token(tok: &str, line: usize) -> Result<((usize, usize), i8), PresentationError> {
    let (body, exp) = match tok.strip_suffix("^-1") {
        Some(b) => (b, -1),
        None => (tok, 1),
    };
    let err = || PresentationError::Parse {
        line,
        msg: format!("bad generator token {tok:?}"),
    };
    let rest = body.strip_prefix("f_").ok_or_else(err)?;
    let (i, j) = rest.split_once('_').ok_or_else(err)?;
    let i: usize = i.parse().map_err(|_| err())?;
    let j: usize = j.parse().map_err(|_| err())?;
    if i == 0 || j == 0 {
        return Err(err());
    }
    Ok(((i - 1, j - 1), exp))
}

/// Parses the text format back; provenance of parsed relators is `Derived`.
pub fn parse_text(text: &str) -> Result<GroupPresentation, PresentationError> {
    let mut generators: Vec<(usize, usize)> = Vec::new();
    let mut seen_gens = false;
    let mut relators = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("gens:") {
            if seen_gens {
                return Err(PresentationError::Parse {
                    line: lineno,
                    msg: "duplicate gens: line".into(),
                });
            }
            seen_gens = true;
            for tok in rest.split_whitespace() {
                let (cell, exp) = parse_gen_token(tok, lineno)?;
                if exp < 0 || generators.contains(&cell) {
                    return Err(PresentationError::Parse {
                        line: lineno,
                        msg: format!("bad generator list entry {tok:?}"),
                    });
                }
                generators.push(cell);
            }
        } else if let Some(rest) = line.strip_prefix("rel:") {
            let mut word = Vec::new();
            for tok in rest.split_whitespace() {
                let (cell, exp) = parse_gen_token(tok, lineno)?;
                let g = generators.iter().position(|&c| c == cell).ok_or_else(|| {
                    PresentationError::Parse {
                        line: lineno,
                        msg: format!("relator references undeclared generator {tok:?}"),
                    }
                })?;
                word.push((g, exp));
            }
            if let Some(r) = Relator::new(word, Provenance::Derived) {
                relators.push(r);
            }
        } else {
            return Err(PresentationError::Parse {
                line: lineno,
                msg: format!("unrecognized line {line:?}"),
            });
        }
    }
    if !seen_gens {
        return Err(PresentationError::Parse {
            line: 0,
            msg: "missing gens: line".into(),
        });
    }
    Ok(GroupPresentation { generators, relators })
}

#[derive(Debug, Serialize, Deserialize)]
struct RelatorJson {
    word: Vec<([usize; 2], i8)>,
    provenance: Provenance,
}

#[derive(Debug, Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<[usize; 2]>,
    relators: Vec<RelatorJson>,
}

/// JSON form: 1-based cell pairs plus provenance tags.
pub fn emit_json(p: &GroupPresentation) -> String {
    let doc = PresentationJson {
        generators: p.generators.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        relators: p
            .relators
            .iter()
            .map(|r| RelatorJson {
                word: r
                    .word
                    .iter()
                    .map(|&(g, e)| {
                        let (i, j) = p.generators[g];
                        ([i + 1, j + 1], e)
                    })
                    .collect(),
                provenance: r.provenance.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn parse_json(text: &str) -> Result<GroupPresentation, PresentationError> {
    let doc: PresentationJson = serde_json::from_str(text).map_err(|e| PresentationError::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let generators: Vec<(usize, usize)> = doc
        .generators
        .iter()
        .map(|&[i, j]| {
            if i == 0 || j == 0 {
                Err(PresentationError::Parse {
                    line: 0,
                    msg: "generator indices are 1-based".into(),
                })
            } else {
                Ok((i - 1, j - 1))
            }
        })
        .collect::<Result<_, _>>()?;
    let mut relators = Vec::new();
    for r in doc.relators {
        let mut word = Vec::new();
        for ([i, j], e) in r.word {
            let cell = (i.wrapping_sub(1), j.wrapping_sub(1));
            let g = generators.iter().position(|&c| c == cell).ok_or_else(|| {
                PresentationError::Parse {
                    line: 0,
                    msg: format!("relator references undeclared generator ({i},{j})"),
                }
            })?;
            word.push((g, e));
        }
        if let Some(rel) = Relator::new(word, r.provenance) {
            relators.push(rel);
        }
    }
    Ok(GroupPresentation { generators, relators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_band::{build_prop2_band, Prop2Realization};
    use crate::greens::{eggbox, greens};

    fn prop2_setup() -> (FiniteBand, GreensStructure, EggBox) {
        let band = build_prop2_band(Prop2Realization::FreeBand3);
        let gs = greens(band.as_semigroup());
        let d = gs.d_class[4];
        let eb = eggbox(band.as_semigroup(), &gs, d, 4).unwrap();
        (band, gs, eb)
    }

    #[test]
    fn canonical_system_verifies_on_prop2() {
        let (band, gs, eb) = prop2_setup();
        let sys = canonical_band_schreier(&band, &eb);
        let report = verify_schreier(band.as_semigroup(), &gs, &eb, &sys);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn corrupt_inverse_fails_verification() {
        let (band, gs, eb) = prop2_setup();
        let mut sys = canonical_band_schreier(&band, &eb);
        // r'_2 must be e_11; a lower-cell idempotent from another column breaks it
        sys.r_inv[1] = vec![eb.idem(1, 2)];
        let report = verify_schreier(band.as_semigroup(), &gs, &eb, &sys);
        assert!(!report.passed());
        assert!(report.bijection_failures.iter().any(|(j, _)| *j == 1));
    }

    #[test]
    fn empty_only_system_fails_coverage() {
        let (band, gs, eb) = prop2_setup();
        let sys = SchreierSystem {
            r: vec![Vec::new(); eb.n_cols()],
            r_inv: vec![Vec::new(); eb.n_cols()],
            anchor: vec![0; eb.n_rows()],
        };
        let report = verify_schreier(band.as_semigroup(), &gs, &eb, &sys);
        assert!(!report.passed());
    }

    #[test]
    fn find_schreier_on_prop2() {
        let (band, gs, eb) = prop2_setup();
        let sys = find_schreier(band.as_semigroup(), &gs, &eb, band.n()).unwrap();
        let report = verify_schreier(band.as_semigroup(), &gs, &eb, &sys);
        assert!(report.passed(), "{report:?}");
        assert!(sys.r[0].is_empty());
        for j in 1..eb.n_cols() {
            assert_eq!(sys.r[j].len(), 1, "single letters suffice on a band");
        }
    }

    #[test]
    fn one_by_one_schreier_is_trivial() {
        let band = FiniteBand::validate(&[vec![0]], None).unwrap();
        let gs = greens(band.as_semigroup());
        let eb = eggbox(band.as_semigroup(), &gs, gs.d_class[0], 0).unwrap();
        let sys = find_schreier(band.as_semigroup(), &gs, &eb, 1).unwrap();
        assert_eq!(sys.r, vec![Vec::<usize>::new()]);
        let (p, skipped) = present_general(band.as_semigroup(), &gs, &eb, &sys);
        assert!(skipped.is_empty());
        assert_eq!(p.generators, vec![(0, 0)]);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].word, vec![(0, 1)]);
    }

    #[test]
    fn prop2_band_presentation_shape() {
        let (band, gs, eb) = prop2_setup();
        let p = present_band(&band, &gs, &eb);
        assert_eq!(p.n_generators(), 16);
        // 4 type-(i) + 3 type-(ii) + 8 proper rectangles (degenerate ones
        // reduce away)
        let type_count = |pred: fn(&Provenance) -> bool| {
            p.relators.iter().filter(|r| pred(&r.provenance)).count()
        };
        assert_eq!(type_count(|pv| matches!(pv, Provenance::TypeI { .. })), 4);
        assert_eq!(type_count(|pv| matches!(pv, Provenance::TypeII { .. })), 3);
        assert_eq!(type_count(|pv| matches!(pv, Provenance::LrSquare { .. })), 4);
        assert_eq!(type_count(|pv| matches!(pv, Provenance::UdSquare { .. })), 4);
    }

    #[test]
    fn theta_fast_path_rejects_prop2() {
        let (band, gs, eb) = prop2_setup();
        let err = theta_fast_path(&band, &gs, &eb).unwrap_err();
        assert!(matches!(err, PresentationError::NotSeminormal { .. }));
    }

    #[test]
    fn theta_fast_path_left_zero() {
        // left-zero band: 1 column, rank 0
        let band = FiniteBand::validate(&[vec![0, 0], vec![1, 1]], None).unwrap();
        let gs = greens(band.as_semigroup());
        let eb = eggbox(band.as_semigroup(), &gs, gs.d_class[0], 0).unwrap();
        let t = theta_fast_path(&band, &gs, &eb).unwrap();
        assert_eq!(t.m, 1);
        assert_eq!(t.free_rank, 0);
        assert!(t.reduced_generators.is_empty());
    }

    #[test]
    fn text_round_trip() {
        let (band, gs, eb) = prop2_setup();
        let p = present_band(&band, &gs, &eb);
        let text = emit_text(&p);
        assert!(text.starts_with("gens: f_1_1 f_1_2"));
        let q = parse_text(&text).unwrap();
        assert_eq!(p.generators, q.generators);
        let words = |p: &GroupPresentation| -> Vec<Vec<(usize, i8)>> {
            p.relators.iter().map(|r| r.word.clone()).collect()
        };
        assert_eq!(words(&p), words(&q));
        assert_eq!(emit_text(&q), text);
    }

    #[test]
    fn json_round_trip() {
        let (band, gs, eb) = prop2_setup();
        let p = present_band(&band, &gs, &eb);
        let json = emit_json(&p);
        let q = parse_json(&json).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(parse_text("gens: f_0_1\n").is_err());
        assert!(parse_text("rel: f_1_1\n").is_err());
        assert!(parse_text("gens: f_1_1\nrel: f_2_2\n").is_err());
    }
}
