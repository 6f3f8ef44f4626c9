//! Group presentation utilities: deterministic Tietze simplification with a
//! freeness certificate, abelian invariants via exact Smith normal form, and
//! relator normal forms for comparing presentations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::presentation::{free_reduce, GroupPresentation, Provenance, Relator};

#[derive(Debug, Clone, Copy)]
pub struct SimplifyLimits {
    /// cap on the total letter count across relators; exceeding it during a
    /// substitution aborts with status LimitHit
    pub max_total_length: usize,
}

impl Default for SimplifyLimits {
    fn default() -> Self {
        SimplifyLimits {
            max_total_length: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplifyStatus {
    /// relator set emptied: the group is free on the remaining generators
    FreeCertified,
    /// fixpoint reached with relators left
    Reduced,
    /// the length cap stopped a substitution
    LimitHit,
}

#[derive(Debug, Clone)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    pub log: Vec<String>,
    pub status: SimplifyStatus,
}

fn invert(word: &[(usize, i8)]) -> Vec<(usize, i8)> {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn cyclic_reduce(word: &[(usize, i8)]) -> Vec<(usize, i8)> {
    let mut w = free_reduce(word);
    while w.len() >= 2 {
        let (first, last) = (w[0], w[w.len() - 1]);
        if first.0 == last.0 && first.1 == -last.1 {
            w = free_reduce(&w[1..w.len() - 1]);
        } else {
            break;
        }
    }
    w
}

fn cell_name(cell: (usize, usize)) -> String {
    format!("f_{}_{}", cell.0 + 1, cell.1 + 1)
}

/// One simplification pass state: relators over the original generator ids.
struct Work {
    cells: Vec<(usize, usize)>,
    active: Vec<bool>,
    rels: Vec<Vec<(usize, i8)>>,
}

impl Work {
    fn total_length(&self) -> usize {
        self.rels.iter().map(Vec::len).sum()
    }

    /// Free+cyclic reduce, drop empties and exact duplicates, sort shortest
    /// first with lexicographic ties.
    fn normalize(&mut self) {
        let mut rels: Vec<Vec<(usize, i8)>> = self
            .rels
            .iter()
            .map(|w| cyclic_reduce(w))
            .filter(|w| !w.is_empty())
            .collect();
        rels.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        rels.dedup();
        self.rels = rels;
    }

    fn kill(&mut self, g: usize, log: &mut Vec<String>) {
        for w in &mut self.rels {
            w.retain(|&(h, _)| h != g);
        }
        self.active[g] = false;
        log.push(format!("killed {} (trivial generator)", cell_name(self.cells[g])));
    }

    /// Replace every occurrence of `g` by `word` (and inverses accordingly).
    fn substitute(&mut self, g: usize, word: &[(usize, i8)]) {
        let inv = invert(word);
        for w in &mut self.rels {
            let mut out = Vec::with_capacity(w.len());
            for &(h, e) in w.iter() {
                if h == g {
                    out.extend_from_slice(if e == 1 { word } else { &inv });
                } else {
                    out.push((h, e));
                }
            }
            *w = out;
        }
        self.active[g] = false;
    }
}

/// Deterministic Tietze simplification to a fixpoint. Moves, in priority
/// order each round: kill a generator with a one-letter relator; merge the
/// two generators of a two-letter relator (the smaller-id one survives);
/// eliminate a generator occurring exactly once in some relator by
/// substitution. Every move removes one generator, so this terminates.
pub fn simplify(p: &GroupPresentation, limits: &SimplifyLimits) -> Simplified {
    let mut work = Work {
        cells: p.generators.clone(),
        active: vec![true; p.generators.len()],
        rels: p.relators.iter().map(|r| r.word.clone()).collect(),
    };
    let mut log = Vec::new();
    let mut status = None;

    loop {
        work.normalize();
        let mut acted = false;

        if let Some(pos) = work.rels.iter().position(|w| w.len() == 1) {
            let g = work.rels[pos][0].0;
            work.rels.remove(pos);
            work.kill(g, &mut log);
            continue;
        }

        if let Some(pos) = work
            .rels
            .iter()
            .position(|w| w.len() == 2 && w[0].0 != w[1].0)
        {
            let w = work.rels.remove(pos);
            let ((a, ea), (b, eb)) = (w[0], w[1]);
            // a^ea b^eb = 1; the larger generator id is expressed in the other
            let (keep, ek, gone, eg) = if a < b { (a, ea, b, eb) } else { (b, eb, a, ea) };
            let replacement = vec![(keep, -ek * eg)];
            work.substitute(gone, &replacement);
            log.push(format!(
                "merged {} into {}",
                cell_name(work.cells[gone]),
                cell_name(work.cells[keep])
            ));
            continue;
        }

        // substitution-elimination: first relator holding a generator exactly once
        'outer: for pos in 0..work.rels.len() {
            let w = &work.rels[pos];
            let mut candidates: Vec<usize> = w
                .iter()
                .map(|&(g, _)| g)
                .filter(|&g| w.iter().filter(|&&(h, _)| h == g).count() == 1)
                .collect();
            candidates.sort_unstable();
            candidates.dedup();
            if let Some(&g) = candidates.first() {
                let w = work.rels.remove(pos);
                let at = w.iter().position(|&(h, _)| h == g).unwrap();
                let (_, e) = w[at];
                // u g^e v = 1  =>  g = (u^-1 v^-1)^(1/e)
                let mut rest = invert(&w[..at]);
                rest.extend(invert(&w[at + 1..]));
                let replacement = if e == 1 { rest } else { invert(&rest) };
                // cap check before substituting
                let occurrences: usize = work
                    .rels
                    .iter()
                    .flat_map(|r| r.iter())
                    .filter(|&&(h, _)| h == g)
                    .count();
                if work.total_length() + occurrences * replacement.len()
                    > limits.max_total_length
                {
                    work.rels.push(w);
                    status = Some(SimplifyStatus::LimitHit);
                    log.push(format!(
                        "stopped: eliminating {} would exceed the length cap",
                        cell_name(work.cells[g])
                    ));
                    break 'outer;
                }
                work.substitute(g, &replacement);
                log.push(format!(
                    "eliminated {} by substitution",
                    cell_name(work.cells[g])
                ));
                acted = true;
                break;
            }
        }
        if status.is_some() {
            break;
        }
        if !acted {
            break;
        }
    }

    work.normalize();
    let status = status.unwrap_or(if work.rels.is_empty() {
        SimplifyStatus::FreeCertified
    } else {
        SimplifyStatus::Reduced
    });

    // rebuild over the surviving generators, in original (row-major) order
    let remap: Vec<Option<usize>> = {
        let mut next = 0;
        work.active
            .iter()
            .map(|&a| {
                if a {
                    next += 1;
                    Some(next - 1)
                } else {
                    None
                }
            })
            .collect()
    };
    let generators: Vec<(usize, usize)> = work
        .cells
        .iter()
        .zip(&work.active)
        .filter(|&(_, &a)| a)
        .map(|(&c, _)| c)
        .collect();
    let relators: Vec<Relator> = work
        .rels
        .iter()
        .filter_map(|w| {
            let word: Vec<(usize, i8)> = w
                .iter()
                .map(|&(g, e)| (remap[g].expect("active generator"), e))
                .collect();
            Relator::new(word, Provenance::Derived)
        })
        .collect();
    Simplified {
        presentation: GroupPresentation { generators, relators },
        log,
        status,
    }
}

/// Abelianization data: rank of the free part and the invariant-factor chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// nontrivial invariant factors d_1 | d_2 | ..., each >= 2
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn display(&self) -> String {
        let torsion: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        format!("free_rank={} torsion=[{}]", self.free_rank, torsion.join(","))
    }
}

/// Smith normal form diagonal of an integer matrix, exact arithmetic.
/// Returns the nonzero invariant factors (positive, divisibility chain).
pub fn smith_normal_form(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest-magnitude nonzero entry in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !m[r][c].is_zero()
                    && pivot
                        .map(|(pr, pc)| m[r][c].abs() < m[pr][pc].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(t, pr);
        for row in &mut m {
            row.swap(t, pc);
        }
        // clear row and column t by division with remainder; restart whenever
        // a remainder strictly smaller than the pivot appears
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if !m[r][t].is_zero() {
                    let q = div_round(&m[r][t], &m[t][t]);
                    for c in t..cols {
                        let sub = &q * &m[t][c];
                        m[r][c] -= sub;
                    }
                    if !m[r][t].is_zero() {
                        m.swap(t, r);
                        dirty = true;
                    }
                }
            }
            for c in t + 1..cols {
                if !m[t][c].is_zero() {
                    let q = div_round(&m[t][c], &m[t][t]);
                    for r in t..rows {
                        let sub = &q * &m[r][t];
                        m[r][c] -= sub;
                    }
                    if !m[t][c].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(t, c);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        // enforce divisibility: the pivot must divide every trailing entry
        let mut fixed = true;
        'check: for r in t + 1..rows {
            for c in t + 1..cols {
                if !(&m[r][c] % &m[t][t]).is_zero() {
                    // fold that row in and redo this pivot
                    for cc in t..cols {
                        let add = m[r][cc].clone();
                        m[t][cc] += add;
                    }
                    fixed = false;
                    break 'check;
                }
            }
        }
        if !fixed {
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Quotient rounding toward the nearest integer keeps entries small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let half = if (a.sign() == b.sign()) || a.is_zero() {
        b / &two
    } else {
        -(b / &two)
    };
    (a + half) / b
}

/// Abelian invariants of the presented group from the exponent-sum matrix.
pub fn abelian_invariants(p: &GroupPresentation) -> AbelianInvariants {
    let n = p.n_generators();
    let matrix: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); n];
            for &(g, e) in &r.word {
                row[g] += BigInt::from(e);
            }
            row
        })
        .collect();
    let diag = smith_normal_form(matrix);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let one = BigInt::from(1);
    AbelianInvariants {
        free_rank: n - rank,
        torsion: diag.into_iter().filter(|d| *d > one).collect(),
    }
}

/// Detects whether a relator is, up to cyclic rotation and inversion, the
/// commutator a b a^-1 b^-1 of two distinct generators; returns them.
pub fn is_commutator_relator(word: &[(usize, i8)]) -> Option<(usize, usize)> {
    let w = cyclic_reduce(word);
    if w.len() != 4 {
        return None;
    }
    let candidates = |w: &[(usize, i8)]| -> Option<(usize, usize)> {
        for rot in 0..4 {
            let r: Vec<(usize, i8)> = (0..4).map(|k| w[(rot + k) % 4]).collect();
            let (a, b) = (r[0].0, r[1].0);
            if a != b
                && r[0] == (a, 1)
                && r[1] == (b, 1)
                && r[2] == (a, -1)
                && r[3] == (b, -1)
            {
                return Some((a.min(b), a.max(b)));
            }
        }
        None
    };
    candidates(&w).or_else(|| candidates(&invert(&w)))
}

/// A comparison key for the free-group consequences of a presentation:
/// generators named by their grid cells, trivial generators killed, two-letter
/// relators folded into generator merges, and each surviving relator taken in
/// its minimal cyclic form over rotations and inversion.
pub fn normalized_relator_set(
    p: &GroupPresentation,
) -> BTreeSet<Vec<((usize, usize), i8)>> {
    // kill + merge only: these moves are confluent here, giving both builders
    // a common normal form without full elimination heuristics
    let mut rels: Vec<Vec<(usize, i8)>> =
        p.relators.iter().map(|r| cyclic_reduce(&r.word)).collect();
    let mut rep: Vec<(usize, i8)> = (0..p.n_generators()).map(|g| (g, 1)).collect();
    let mut dead = vec![false; p.n_generators()];
    // resolve a letter through merge chains
    fn resolve(rep: &[(usize, i8)], g: usize) -> (usize, i8) {
        let (mut h, mut s) = (g, 1i8);
        while rep[h].0 != h {
            s *= rep[h].1;
            h = rep[h].0;
        }
        (h, s)
    }
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        for w in &rels {
            let mapped: Vec<(usize, i8)> = w
                .iter()
                .filter_map(|&(g, e)| {
                    let (h, s) = resolve(&rep, g);
                    if dead[h] {
                        None
                    } else {
                        Some((h, s * e))
                    }
                })
                .collect();
            let mapped = cyclic_reduce(&mapped);
            match mapped.len() {
                0 => changed = true,
                1 => {
                    dead[mapped[0].0] = true;
                    changed = true;
                }
                2 if mapped[0].0 != mapped[1].0 => {
                    let ((a, ea), (b, eb)) = (mapped[0], mapped[1]);
                    let (keep, ek, gone, eg) = if a < b { (a, ea, b, eb) } else { (b, eb, a, ea) };
                    rep[gone] = (keep, -ek * eg);
                    changed = true;
                }
                _ => next.push(mapped),
            }
        }
        rels = next;
        if !changed {
            break;
        }
    }
    rels.iter()
        .map(|w| {
            let named: Vec<((usize, usize), i8)> = w
                .iter()
                .map(|&(g, e)| (p.generators[g], e))
                .collect();
            canonical_cyclic(&named)
        })
        .collect()
}

fn canonical_cyclic<T: Clone + Ord>(word: &[(T, i8)]) -> Vec<(T, i8)> {
    let inv: Vec<(T, i8)> = word.iter().rev().map(|(g, e)| (g.clone(), -e)).collect();
    let mut best: Option<Vec<(T, i8)>> = None;
    for w in [word.to_vec(), inv] {
        for rot in 0..w.len().max(1) {
            let rotated: Vec<(T, i8)> = (0..w.len()).map(|k| w[(rot + k) % w.len()].clone()).collect();
            if best.as_ref().map(|b| rotated < *b).unwrap_or(true) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: usize, words: Vec<Vec<(usize, i8)>>) -> GroupPresentation {
        GroupPresentation {
            generators: (0..n).map(|g| (0, g)).collect(),
            relators: words
                .into_iter()
                .filter_map(|w| Relator::new(w, Provenance::Derived))
                .collect(),
        }
    }

    #[test]
    fn no_relators_is_free() {
        let s = simplify(&pres(3, vec![]), &SimplifyLimits::default());
        assert_eq!(s.status, SimplifyStatus::FreeCertified);
        assert_eq!(s.presentation.n_generators(), 3);
    }

    #[test]
    fn generator_merge_certifies_free() {
        // <a, b | a b^-1> is free of rank 1
        let s = simplify(
            &pres(2, vec![vec![(0, 1), (1, -1)]]),
            &SimplifyLimits::default(),
        );
        assert_eq!(s.status, SimplifyStatus::FreeCertified);
        assert_eq!(s.presentation.n_generators(), 1);
    }

    #[test]
    fn torsion_survives() {
        // <a | a^3>
        let p = pres(1, vec![vec![(0, 1), (0, 1), (0, 1)]]);
        let s = simplify(&p, &SimplifyLimits::default());
        assert_eq!(s.status, SimplifyStatus::Reduced);
        let inv = abelian_invariants(&s.presentation);
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, vec![BigInt::from(3)]);
        assert_eq!(inv.display(), "free_rank=0 torsion=[3]");
    }

    #[test]
    fn simplify_preserves_abelian_invariants() {
        // <a,b,c | a c b c^-1, b^2 c>
        let p = pres(
            3,
            vec![
                vec![(0, 1), (2, 1), (1, 1), (2, -1)],
                vec![(1, 1), (1, 1), (2, 1)],
            ],
        );
        let before = abelian_invariants(&p);
        let s = simplify(&p, &SimplifyLimits::default());
        let after = abelian_invariants(&s.presentation);
        assert_eq!(before, after);
    }

    #[test]
    fn snf_zero_and_identity() {
        assert_eq!(smith_normal_form(vec![vec![BigInt::zero(); 3]; 2]), vec![]);
        let id: Vec<Vec<BigInt>> = (0..3)
            .map(|r| (0..3).map(|c| BigInt::from((r == c) as i32)).collect())
            .collect();
        assert_eq!(smith_normal_form(id), vec![BigInt::from(1); 3]);
    }

    #[test]
    fn snf_divisibility_chain() {
        // [[2, 4], [6, 8]] -> invariant factors 2, 4? det = -8, gcd = 2;
        // factors d1=2, d2=|det|/d1 = 4
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(6), BigInt::from(8)],
        ];
        let d = smith_normal_form(m);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn commutator_detection() {
        assert_eq!(
            is_commutator_relator(&[(0, 1), (1, 1), (0, -1), (1, -1)]),
            Some((0, 1))
        );
        // rotated and inverted forms
        assert_eq!(
            is_commutator_relator(&[(1, 1), (0, -1), (1, -1), (0, 1)]),
            Some((0, 1))
        );
        assert_eq!(
            is_commutator_relator(&[(1, 1), (0, 1), (1, -1), (0, -1)]),
            Some((0, 1))
        );
        assert_eq!(is_commutator_relator(&[(0, 1), (1, 1), (0, -1), (1, 1)]), None);
        assert_eq!(is_commutator_relator(&[(0, 1), (1, -1)]), None);
    }

    #[test]
    fn zz_from_commutator() {
        let p = pres(2, vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]]);
        let inv = abelian_invariants(&p);
        assert_eq!(inv.free_rank, 2);
        assert!(inv.torsion.is_empty());
        assert_eq!(inv.display(), "free_rank=2 torsion=[]");
    }

    #[test]
    fn normalized_set_folds_merges() {
        // <a,b,c | a b^-1, b c b^-1 c^-1>  ==  one commutator over {a, c}
        let p = pres(
            3,
            vec![
                vec![(0, 1), (1, -1)],
                vec![(1, 1), (2, 1), (1, -1), (2, -1)],
            ],
        );
        let set = normalized_relator_set(&p);
        assert_eq!(set.len(), 1);
        let rel = set.iter().next().unwrap();
        assert_eq!(rel.len(), 4);
    }
}
