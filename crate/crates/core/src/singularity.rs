//! Singular squares and rectangles of a D-class, and the row/column actions
//! that idempotents of a band induce on an egg-box.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::greens::{EggBox, GreensStructure};
use crate::semigroup::{FiniteBand, FiniteSemigroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SingularityError {
    #[error("element {element} is not idempotent")]
    NotIdempotent { element: usize },
    #[error("the D-class of element {element} does not lie above the chosen D-class")]
    ClassNotAbove { element: usize },
    #[error("element {element} does not act on the egg-box: {detail}")]
    InconsistentAction { element: usize, detail: String },
    #[error("square corner {corner} is misplaced: {detail}")]
    BadSquare { corner: usize, detail: String },
}

/// A transformation of row indices I (or column indices J) induced by an
/// idempotent acting on an egg-box. Always an idempotent map, so its image
/// coincides with its fixed-point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub map: Vec<usize>,
}

impl Action {
    /// Fixed points, ascending. For these idempotent maps this is the image.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&i| self.map[i] == i).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_constant(&self) -> bool {
        self.map.windows(2).all(|w| w[0] == w[1])
    }
}

fn check_above(
    band: &FiniteBand,
    gs: &GreensStructure,
    eb: &EggBox,
    eps: usize,
) -> Result<(), SingularityError> {
    if !band.is_idempotent(eps) {
        return Err(SingularityError::NotIdempotent { element: eps });
    }
    if !gs.d_leq(eb.d_class, gs.d_class[eps]) {
        return Err(SingularityError::ClassNotAbove { element: eps });
    }
    Ok(())
}

/// The row action sigma^(l) of an idempotent lying D-above the egg-box's
/// class: eps * e_{ij} = e_{sigma(i), j}.
pub fn left_action(
    band: &FiniteBand,
    gs: &GreensStructure,
    eb: &EggBox,
    eps: usize,
) -> Result<Action, SingularityError> {
    check_above(band, gs, eb, eps)?;
    let mut map = vec![usize::MAX; eb.n_rows()];
    for i in 0..eb.n_rows() {
        for j in 0..eb.n_cols() {
            let e = eb.idem(i, j);
            let p = band.product(eps, e);
            let target = (0..eb.n_rows()).find(|&i2| eb.idem(i2, j) == p);
            let i2 = target.ok_or_else(|| SingularityError::InconsistentAction {
                element: eps,
                detail: format!(
                    "product with cell ({i},{j}) leaves the class (element {p})"
                ),
            })?;
            if map[i] == usize::MAX {
                map[i] = i2;
            } else if map[i] != i2 {
                return Err(SingularityError::InconsistentAction {
                    element: eps,
                    detail: format!("row {i} maps to both {} and {i2}", map[i]),
                });
            }
        }
    }
    Ok(Action { map })
}

/// The column action sigma^(r): e_{ij} * eps = e_{i, (j)sigma}.
pub fn right_action(
    band: &FiniteBand,
    gs: &GreensStructure,
    eb: &EggBox,
    eps: usize,
) -> Result<Action, SingularityError> {
    check_above(band, gs, eb, eps)?;
    let mut map = vec![usize::MAX; eb.n_cols()];
    for j in 0..eb.n_cols() {
        for i in 0..eb.n_rows() {
            let e = eb.idem(i, j);
            let p = band.product(e, eps);
            let target = (0..eb.n_cols()).find(|&j2| eb.idem(i, j2) == p);
            let j2 = target.ok_or_else(|| SingularityError::InconsistentAction {
                element: eps,
                detail: format!(
                    "product with cell ({i},{j}) leaves the class (element {p})"
                ),
            })?;
            if map[j] == usize::MAX {
                map[j] = j2;
            } else if map[j] != j2 {
                return Err(SingularityError::InconsistentAction {
                    element: eps,
                    detail: format!("column {j} maps to both {} and {j2}", map[j]),
                });
            }
        }
    }
    Ok(Action { map })
}

/// A square of idempotents in one D-class: e R f, g R h, e L g, f L h.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Square {
    pub e: usize,
    pub f: usize,
    pub g: usize,
    pub h: usize,
}

impl Square {
    pub fn new(
        sg: &FiniteSemigroup,
        gs: &GreensStructure,
        e: usize,
        f: usize,
        g: usize,
        h: usize,
    ) -> Result<Self, SingularityError> {
        for x in [e, f, g, h] {
            if !sg.is_idempotent(x) {
                return Err(SingularityError::NotIdempotent { element: x });
            }
        }
        let demand = |ok: bool, corner: usize, detail: &str| {
            if ok {
                Ok(())
            } else {
                Err(SingularityError::BadSquare {
                    corner,
                    detail: detail.into(),
                })
            }
        };
        demand(gs.r_class[e] == gs.r_class[f], f, "f must be R-related to e")?;
        demand(gs.r_class[g] == gs.r_class[h], h, "h must be R-related to g")?;
        demand(gs.l_class[e] == gs.l_class[g], g, "g must be L-related to e")?;
        demand(gs.l_class[f] == gs.l_class[h], h, "h must be L-related to f")?;
        demand(gs.d_class[e] == gs.d_class[h], h, "all corners in one D-class")?;
        Ok(Square { e, f, g, h })
    }
}

/// Which clause of the singularisation definition applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SingCase {
    /// eps e = e, eps g = g, f eps = e
    A,
    /// eps g = e, e eps = e, f eps = f
    B,
}

/// Tests whether `eps` singularises the square, and via which clause
/// (clause A is reported when both apply).
pub fn singularises(sg: &FiniteSemigroup, sq: &Square, eps: usize) -> Option<SingCase> {
    match singularises_cases(sg, sq, eps) {
        (true, _) => Some(SingCase::A),
        (false, true) => Some(SingCase::B),
        (false, false) => None,
    }
}

/// Both clauses checked independently (a degenerate square can satisfy both).
pub fn singularises_cases(sg: &FiniteSemigroup, sq: &Square, eps: usize) -> (bool, bool) {
    if !sg.is_idempotent(eps) {
        return (false, false);
    }
    let Square { e, f, g, h } = *sq;
    let mut case_a = false;
    let mut case_b = false;
    if sg.product(eps, e) == e && sg.product(eps, g) == g && sg.product(f, eps) == e {
        // consequences recorded in the source result
        debug_assert_eq!(sg.product(eps, f), f);
        debug_assert_eq!(sg.product(eps, h), h);
        debug_assert_eq!(sg.product(e, eps), e);
        debug_assert_eq!(sg.product(g, eps), g);
        debug_assert_eq!(sg.product(h, eps), g);
        case_a = true;
    }
    if sg.product(eps, g) == e && sg.product(e, eps) == e && sg.product(f, eps) == f {
        debug_assert_eq!(sg.product(eps, e), e);
        debug_assert_eq!(sg.product(eps, f), f);
        debug_assert_eq!(sg.product(eps, h), f);
        debug_assert_eq!(sg.product(g, eps), g);
        debug_assert_eq!(sg.product(h, eps), h);
        case_b = true;
    }
    (case_a, case_b)
}

/// Orientation family of a singular rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RectKind {
    LeftRight,
    UpDown,
}

impl RectKind {
    pub fn tag(self) -> &'static str {
        match self {
            RectKind::LeftRight => "LR",
            RectKind::UpDown => "UD",
        }
    }
}

/// A singular rectangle of the egg-box, normalized to unordered row and
/// column pairs; `witnesses` lists every singularising idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularRectangle {
    /// rows (i, k), i <= k, 0-based egg-box coordinates
    pub rows: (usize, usize),
    /// columns (j, l), j <= l
    pub cols: (usize, usize),
    pub kind: RectKind,
    /// sorted, deduplicated singularising idempotents (element ids)
    pub witnesses: Vec<usize>,
}

impl SingularRectangle {
    pub fn least_witness(&self) -> usize {
        self.witnesses[0]
    }

    /// Proper: two distinct rows and two distinct columns.
    pub fn is_proper(&self) -> bool {
        self.rows.0 != self.rows.1 && self.cols.0 != self.cols.1
    }
}

/// Enumerates the singular rectangles of an egg-box directly from the
/// definition: every orientation of every rectangle of group cells is tested
/// against every idempotent of the semigroup. Works for arbitrary semigroups;
/// for bands the sigma-action route gives the same set (see
/// [`band_rectangles_by_actions`]).
pub fn singular_rectangles(
    sg: &FiniteSemigroup,
    _gs: &GreensStructure,
    eb: &EggBox,
    proper_only: bool,
) -> Vec<SingularRectangle> {
    let idempotents = sg.idempotents();
    let mut found: BTreeMap<((usize, usize), (usize, usize), RectKind), Vec<usize>> =
        BTreeMap::new();
    for i in 0..eb.n_rows() {
        for k in i..eb.n_rows() {
            for j in 0..eb.n_cols() {
                for l in j..eb.n_cols() {
                    if proper_only && (i == k || j == l) {
                        continue;
                    }
                    if !(eb.is_group_cell(i, j)
                        && eb.is_group_cell(i, l)
                        && eb.is_group_cell(k, j)
                        && eb.is_group_cell(k, l))
                    {
                        continue;
                    }
                    // all orientations of the same unordered rectangle
                    let orientations = [
                        ((i, k), (j, l)),
                        ((i, k), (l, j)),
                        ((k, i), (j, l)),
                        ((k, i), (l, j)),
                    ];
                    for ((top, bot), (lc, rc)) in orientations {
                        let sq = Square {
                            e: eb.idem(top, lc),
                            f: eb.idem(top, rc),
                            g: eb.idem(bot, lc),
                            h: eb.idem(bot, rc),
                        };
                        for &eps in &idempotents {
                            let (case_a, case_b) = singularises_cases(sg, &sq, eps);
                            if case_a {
                                found
                                    .entry(((i, k), (j, l), RectKind::LeftRight))
                                    .or_default()
                                    .push(eps);
                            }
                            if case_b {
                                found
                                    .entry(((i, k), (j, l), RectKind::UpDown))
                                    .or_default()
                                    .push(eps);
                            }
                        }
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .map(|((rows, cols, kind), mut witnesses)| {
            witnesses.sort_unstable();
            witnesses.dedup();
            SingularRectangle {
                rows,
                cols,
                kind,
                witnesses,
            }
        })
        .collect()
}

/// Band-specific enumeration through the sigma actions: clause A rectangles
/// pair two fixed rows of sigma^(l) with a column and its sigma^(r)-image,
/// clause B dually. Produces the same normalized set as
/// [`singular_rectangles`]; kept separate because the actions are also what
/// the fast free-rank path consumes.
pub fn band_rectangles_by_actions(
    band: &FiniteBand,
    gs: &GreensStructure,
    eb: &EggBox,
    proper_only: bool,
) -> Result<Vec<SingularRectangle>, SingularityError> {
    let mut found: BTreeMap<((usize, usize), (usize, usize), RectKind), Vec<usize>> =
        BTreeMap::new();
    for eps in band.idempotents() {
        if !gs.d_leq(eb.d_class, gs.d_class[eps]) {
            continue;
        }
        let sl = left_action(band, gs, eb, eps)?;
        let sr = right_action(band, gs, eb, eps)?;
        let fixed_rows = sl.fixed_points();
        let fixed_cols = sr.fixed_points();
        // left-right: rows both fixed, columns {j, (j) sigma^(r)}
        for (a, &i) in fixed_rows.iter().enumerate() {
            for &k in &fixed_rows[a..] {
                for j in 0..eb.n_cols() {
                    let l = sr.map[j];
                    let cols = (j.min(l), j.max(l));
                    if proper_only && (i == k || cols.0 == cols.1) {
                        continue;
                    }
                    found
                        .entry(((i, k), cols, RectKind::LeftRight))
                        .or_default()
                        .push(eps);
                }
            }
        }
        // up-down: rows {i, sigma^(l)(i)}, columns both fixed
        for i in 0..eb.n_rows() {
            let k = sl.map[i];
            let rows = (i.min(k), i.max(k));
            for (a, &j) in fixed_cols.iter().enumerate() {
                for &l in &fixed_cols[a..] {
                    if proper_only && (rows.0 == rows.1 || j == l) {
                        continue;
                    }
                    found
                        .entry((rows, (j, l), RectKind::UpDown))
                        .or_default()
                        .push(eps);
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|((rows, cols, kind), mut witnesses)| {
            witnesses.sort_unstable();
            witnesses.dedup();
            SingularRectangle {
                rows,
                cols,
                kind,
                witnesses,
            }
        })
        .collect())
}
