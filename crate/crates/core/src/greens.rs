//! Green's relations, the D-class partial order, the egg-box coordinatization
//! of a D-class, and the biorder of idempotents.

use std::collections::HashMap;

use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GreensError {
    #[error("base element {base} is not idempotent")]
    NotIdempotent { base: usize },
    #[error("base element {base} does not lie in D-class {d_class}")]
    BaseNotInClass { base: usize, d_class: usize },
    #[error("semigroup has no idempotents")]
    NoIdempotents,
}

/// Green's relations of a finite semigroup, as class-id maps, plus the
/// partial order on D-classes (= J-classes, finite case).
#[derive(Debug, Clone)]
pub struct GreensStructure {
    n: usize,
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub d_class: Vec<usize>,
    pub n_r: usize,
    pub n_l: usize,
    pub n_h: usize,
    pub n_d: usize,
    // d_leq[a * n_d + b] <=> class a lies below-or-equal class b
    d_leq: Vec<bool>,
}

fn classify(keys: Vec<Vec<bool>>) -> (Vec<usize>, usize) {
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut ids = Vec::with_capacity(keys.len());
    for key in keys {
        let next = index.len();
        let id = *index.entry(key).or_insert(next);
        ids.push(id);
    }
    let count = index.len();
    (ids, count)
}

/// Computes Green's relations from principal ideals over S^1.
pub fn greens(sg: &FiniteSemigroup) -> GreensStructure {
    let n = sg.n();
    // right ideals x S^1
    let right: Vec<Vec<bool>> = (0..n)
        .map(|x| {
            let mut set = vec![false; n];
            set[x] = true;
            for s in 0..n {
                set[sg.product(x, s)] = true;
            }
            set
        })
        .collect();
    let left: Vec<Vec<bool>> = (0..n)
        .map(|x| {
            let mut set = vec![false; n];
            set[x] = true;
            for s in 0..n {
                set[sg.product(s, x)] = true;
            }
            set
        })
        .collect();
    // two-sided ideals S^1 x S^1
    let two_sided: Vec<Vec<bool>> = (0..n)
        .map(|x| {
            let mut set = right[x].clone();
            for (y, &in_left) in left[x].iter().enumerate() {
                if in_left {
                    set[y] = true;
                }
            }
            for s in 0..n {
                let sx = sg.product(s, x);
                for t in 0..n {
                    set[sg.product(sx, t)] = true;
                }
            }
            set
        })
        .collect();

    let (r_class, n_r) = classify(right);
    let (l_class, n_l) = classify(left);
    let h_keys: Vec<Vec<bool>> = (0..n)
        .map(|x| {
            // H = R /\ L: key on the (r,l) pair
            let mut key = vec![false; n_r + n_l];
            key[r_class[x]] = true;
            key[n_r + l_class[x]] = true;
            key
        })
        .collect();
    let (h_class, n_h) = classify(h_keys);
    let (d_class, n_d) = classify(two_sided.clone());

    // J-order via ideal containment, keyed on one representative per class
    let mut rep = vec![usize::MAX; n_d];
    for x in 0..n {
        if rep[d_class[x]] == usize::MAX {
            rep[d_class[x]] = x;
        }
    }
    let mut d_leq = vec![false; n_d * n_d];
    for a in 0..n_d {
        for b in 0..n_d {
            let ia = &two_sided[rep[a]];
            let ib = &two_sided[rep[b]];
            d_leq[a * n_d + b] = ia.iter().zip(ib.iter()).all(|(&x, &y)| !x || y);
        }
    }

    GreensStructure {
        n,
        r_class,
        l_class,
        h_class,
        d_class,
        n_r,
        n_l,
        n_h,
        n_d,
        d_leq,
    }
}

impl GreensStructure {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether D-class `a` lies below-or-equal D-class `b` in the J-order.
    pub fn d_leq(&self, a: usize, b: usize) -> bool {
        self.d_leq[a * self.n_d + b]
    }

    pub fn d_class_members(&self, d: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.d_class[x] == d).collect()
    }

    pub fn r_class_members(&self, r: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.r_class[x] == r).collect()
    }

    pub fn l_class_members(&self, l: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.l_class[x] == l).collect()
    }

    /// Deterministic display order of D-classes: ascending by the number of
    /// classes strictly below, ties by smallest member. Position k is named "Dk".
    pub fn d_class_display_order(&self) -> Vec<usize> {
        let mut below = vec![0usize; self.n_d];
        for a in 0..self.n_d {
            for b in 0..self.n_d {
                if a != b && self.d_leq(b, a) {
                    below[a] += 1;
                }
            }
        }
        let mut smallest = vec![usize::MAX; self.n_d];
        for x in 0..self.n {
            let d = self.d_class[x];
            if x < smallest[d] {
                smallest[d] = x;
            }
        }
        let mut order: Vec<usize> = (0..self.n_d).collect();
        order.sort_by_key(|&d| (below[d], smallest[d]));
        order
    }

    /// Resolves a selector of the form "Dk" to a D-class id.
    pub fn resolve_d_name(&self, name: &str) -> Option<usize> {
        let k: usize = name.strip_prefix('D')?.parse().ok()?;
        self.d_class_display_order().get(k).copied()
    }

    /// Display name ("Dk") of a D-class id.
    pub fn d_name(&self, d: usize) -> String {
        let order = self.d_class_display_order();
        let pos = order.iter().position(|&c| c == d).expect("valid class id");
        format!("D{pos}")
    }
}

/// The coordinatized egg-box of one D-class: row index set I (R-classes),
/// column index set J (L-classes), the H-cells, the group-cell set K, and the
/// partial idempotent grid. The base idempotent sits at cell (0,0).
#[derive(Debug, Clone)]
pub struct EggBox {
    pub d_class: usize,
    /// R-class ids in row order; the base's R-class is first.
    pub i_rclasses: Vec<usize>,
    /// L-class ids in column order; the base's L-class is first.
    pub j_lclasses: Vec<usize>,
    /// cells[i][j]: sorted elements of H_{ij}
    pub cells: Vec<Vec<Vec<usize>>>,
    /// K: sorted (i, j) pairs whose cell is a group (contains an idempotent)
    pub group_cells: Vec<(usize, usize)>,
    /// idem_grid[i][j]: the idempotent e_{ij}, defined exactly on K
    pub idem_grid: Vec<Vec<Option<usize>>>,
    /// the distinguished idempotent e_0 = e_{11} (at cell (0,0))
    pub base: usize,
}

/// Builds the egg-box of the D-class `d` with the given base idempotent.
pub fn eggbox(
    sg: &FiniteSemigroup,
    gs: &GreensStructure,
    d: usize,
    base: usize,
) -> Result<EggBox, GreensError> {
    if !sg.is_idempotent(base) {
        return Err(GreensError::NotIdempotent { base });
    }
    if gs.d_class[base] != d {
        return Err(GreensError::BaseNotInClass { base, d_class: d });
    }
    let members = gs.d_class_members(d);

    let order_classes = |of: &dyn Fn(usize) -> usize, first: usize| -> Vec<usize> {
        let mut smallest: HashMap<usize, usize> = HashMap::new();
        for &x in &members {
            let c = of(x);
            let e = smallest.entry(c).or_insert(x);
            if x < *e {
                *e = x;
            }
        }
        let mut rest: Vec<usize> = smallest.keys().copied().filter(|&c| c != first).collect();
        rest.sort_by_key(|c| smallest[c]);
        let mut out = vec![first];
        out.extend(rest);
        out
    };
    let i_rclasses = order_classes(&|x| gs.r_class[x], gs.r_class[base]);
    let j_lclasses = order_classes(&|x| gs.l_class[x], gs.l_class[base]);

    let ni = i_rclasses.len();
    let nj = j_lclasses.len();
    let mut cells = vec![vec![Vec::new(); nj]; ni];
    for &x in &members {
        let i = i_rclasses
            .iter()
            .position(|&r| r == gs.r_class[x])
            .expect("row of member");
        let j = j_lclasses
            .iter()
            .position(|&l| l == gs.l_class[x])
            .expect("column of member");
        cells[i][j].push(x);
    }
    for row in &mut cells {
        for cell in row.iter_mut() {
            cell.sort_unstable();
        }
    }

    let mut group_cells = Vec::new();
    let mut idem_grid = vec![vec![None; nj]; ni];
    for i in 0..ni {
        for j in 0..nj {
            if let Some(&e) = cells[i][j].iter().find(|&&x| sg.is_idempotent(x)) {
                group_cells.push((i, j));
                idem_grid[i][j] = Some(e);
            }
        }
    }

    debug_assert_eq!(idem_grid[0][0], Some(base));
    Ok(EggBox {
        d_class: d,
        i_rclasses,
        j_lclasses,
        cells,
        group_cells,
        idem_grid,
        base,
    })
}

impl EggBox {
    pub fn n_rows(&self) -> usize {
        self.i_rclasses.len()
    }

    pub fn n_cols(&self) -> usize {
        self.j_lclasses.len()
    }

    pub fn is_group_cell(&self, i: usize, j: usize) -> bool {
        self.idem_grid[i][j].is_some()
    }

    /// The idempotent e_{ij}; panics if (i,j) is not a group cell.
    pub fn idem(&self, i: usize, j: usize) -> usize {
        self.idem_grid[i][j].expect("group cell")
    }

    /// For bands: K = I x J and every cell is a singleton idempotent.
    pub fn is_full_grid(&self) -> bool {
        self.group_cells.len() == self.n_rows() * self.n_cols()
    }
}

/// The biorder of idempotents: basic pairs and the two quasi-orders.
#[derive(Debug, Clone)]
pub struct Biorder {
    /// all idempotents of the semigroup, ascending
    pub idempotents: Vec<usize>,
    /// unordered basic pairs {e, f} with e < f
    pub basic_pairs: Vec<(usize, usize)>,
    /// basic products (e, f, ef) for every ordered basic pair, for reports
    pub basic_products: Vec<(usize, usize, usize)>,
    // quasi-orders over idempotent positions
    leq_l: Vec<bool>,
    leq_r: Vec<bool>,
    position: HashMap<usize, usize>,
}

/// Extracts the biorder (basic pairs, <=^(l), <=^(r)) of E(S).
pub fn biorder(sg: &FiniteSemigroup) -> Result<Biorder, GreensError> {
    let idempotents = sg.idempotents();
    if idempotents.is_empty() {
        return Err(GreensError::NoIdempotents);
    }
    let m = idempotents.len();
    let position: HashMap<usize, usize> = idempotents
        .iter()
        .enumerate()
        .map(|(pos, &e)| (e, pos))
        .collect();
    let mut basic_pairs = Vec::new();
    let mut basic_products = Vec::new();
    let mut leq_l = vec![false; m * m];
    let mut leq_r = vec![false; m * m];
    for (pe, &e) in idempotents.iter().enumerate() {
        for (pf, &f) in idempotents.iter().enumerate() {
            let ef = sg.product(e, f);
            let fe = sg.product(f, e);
            // e <=^(l) f iff ef = e; e <=^(r) f iff fe = e
            leq_l[pe * m + pf] = ef == e;
            leq_r[pe * m + pf] = fe == e;
            if e < f && (ef == e || ef == f || fe == e || fe == f) {
                basic_pairs.push((e, f));
            }
            if e != f && (ef == e || ef == f || fe == e || fe == f) {
                basic_products.push((e, f, ef));
            }
        }
    }
    Ok(Biorder {
        idempotents,
        basic_pairs,
        basic_products,
        leq_l,
        leq_r,
        position,
    })
}

impl Biorder {
    pub fn leq_l(&self, e: usize, f: usize) -> bool {
        self.leq_l[self.position[&e] * self.idempotents.len() + self.position[&f]]
    }

    pub fn leq_r(&self, e: usize, f: usize) -> bool {
        self.leq_r[self.position[&e] * self.idempotents.len() + self.position[&f]]
    }

    pub fn is_basic(&self, e: usize, f: usize) -> bool {
        let (a, b) = if e < f { (e, f) } else { (f, e) };
        self.basic_pairs.contains(&(a, b))
    }
}
