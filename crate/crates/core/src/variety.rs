//! Band identities, exhaustive identity checking, and classification into the
//! standard lattice of small band varieties.

use std::collections::HashMap;

use thiserror::Error;

use crate::semigroup::{FiniteBand, FiniteSemigroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VarietyError {
    #[error("identity {name:?} uses {got} variables; at most {max} supported")]
    TooManyVariables { name: String, got: usize, max: usize },
    #[error("identity side is empty in {name:?}")]
    EmptySide { name: String },
    #[error("variety table parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown variety label {0:?}")]
    UnknownLabel(String),
}

pub const MAX_IDENTITY_VARIABLES: usize = 4;

/// A band identity `lhs = rhs`, both sides words over at most four variables.
/// Variables are stored as indices in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandIdentity {
    pub name: String,
    pub lhs: Vec<u8>,
    pub rhs: Vec<u8>,
    pub n_vars: usize,
}

impl BandIdentity {
    /// Parses an identity like `"tuv=tvtuv"`; each alphabetic character is a variable.
    pub fn parse(name: &str, text: &str) -> Result<Self, VarietyError> {
        let (l, r) = text.split_once('=').ok_or_else(|| VarietyError::Parse {
            line: 0,
            msg: format!("identity {text:?} has no '='"),
        })?;
        let mut vars: Vec<char> = Vec::new();
        let mut side = |s: &str| -> Result<Vec<u8>, VarietyError> {
            let mut out = Vec::new();
            for c in s.trim().chars() {
                if !c.is_ascii_alphabetic() {
                    return Err(VarietyError::Parse {
                        line: 0,
                        msg: format!("bad variable character {c:?} in {text:?}"),
                    });
                }
                let idx = match vars.iter().position(|&v| v == c) {
                    Some(i) => i,
                    None => {
                        vars.push(c);
                        vars.len() - 1
                    }
                };
                out.push(idx as u8);
            }
            Ok(out)
        };
        let lhs = side(l)?;
        let rhs = side(r)?;
        if lhs.is_empty() || rhs.is_empty() {
            return Err(VarietyError::EmptySide { name: name.into() });
        }
        let n_vars = vars.len();
        if n_vars > MAX_IDENTITY_VARIABLES {
            return Err(VarietyError::TooManyVariables {
                name: name.into(),
                got: n_vars,
                max: MAX_IDENTITY_VARIABLES,
            });
        }
        Ok(BandIdentity {
            name: name.into(),
            lhs,
            rhs,
            n_vars,
        })
    }

    /// The formally dual identity: both sides reversed, variables renumbered
    /// by first appearance so equal duals compare equal.
    pub fn reversed(&self) -> Self {
        let rev_lhs: Vec<u8> = self.lhs.iter().rev().copied().collect();
        let rev_rhs: Vec<u8> = self.rhs.iter().rev().copied().collect();
        let mut order: Vec<u8> = Vec::new();
        for &v in rev_lhs.iter().chain(&rev_rhs) {
            if !order.contains(&v) {
                order.push(v);
            }
        }
        let renum = |w: &[u8]| -> Vec<u8> {
            w.iter()
                .map(|v| order.iter().position(|o| o == v).unwrap() as u8)
                .collect()
        };
        BandIdentity {
            name: format!("{}.rev", self.name),
            lhs: renum(&rev_lhs),
            rhs: renum(&rev_rhs),
            n_vars: self.n_vars,
        }
    }

    pub fn eval(&self, sg: &FiniteSemigroup, side: &[u8], subst: &[usize]) -> usize {
        let mut it = side.iter();
        let first = subst[*it.next().expect("nonempty side") as usize];
        it.fold(first, |acc, &v| sg.product(acc, subst[v as usize]))
    }
}

/// Result of an exhaustive identity check; on failure the witness substitution
/// is the lexicographically least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatisfiesResult {
    Holds,
    Fails { witness: Vec<usize> },
}

impl SatisfiesResult {
    pub fn holds(&self) -> bool {
        matches!(self, SatisfiesResult::Holds)
    }
}

/// Checks an identity over every substitution of elements for variables.
pub fn satisfies(band: &FiniteBand, id: &BandIdentity) -> Result<SatisfiesResult, VarietyError> {
    satisfies_sg(band.as_semigroup(), id)
}

/// Same check for a plain semigroup table (used internally for opposite bands
/// and quotient verification).
pub fn satisfies_sg(
    sg: &FiniteSemigroup,
    id: &BandIdentity,
) -> Result<SatisfiesResult, VarietyError> {
    if id.n_vars > MAX_IDENTITY_VARIABLES {
        return Err(VarietyError::TooManyVariables {
            name: id.name.clone(),
            got: id.n_vars,
            max: MAX_IDENTITY_VARIABLES,
        });
    }
    let n = sg.n();
    let mut subst = vec![0usize; id.n_vars];
    loop {
        if id.eval(sg, &id.lhs, &subst) != id.eval(sg, &id.rhs, &subst) {
            return Ok(SatisfiesResult::Fails { witness: subst });
        }
        // odometer, most significant digit first => lexicographic order
        let mut pos = id.n_vars;
        loop {
            if pos == 0 {
                return Ok(SatisfiesResult::Holds);
            }
            pos -= 1;
            subst[pos] += 1;
            if subst[pos] < n {
                break;
            }
            subst[pos] = 0;
        }
    }
}

/// The identity table for the bottom of the band variety lattice, with the
/// containment order. Only the RSNB defining identity comes from first
/// principles here; the rest of the table is shipped configuration validated
/// by the duality and monotonicity test suites.
#[derive(Debug, Clone)]
pub struct VarietyTable {
    pub labels: Vec<String>,
    identities: HashMap<String, Vec<BandIdentity>>,
    hasse: Vec<(String, String)>,
    // leq[a][b] <=> variety a is contained in variety b
    leq: HashMap<(String, String), bool>,
}

const DEFAULT_TABLE: &str = include_str!("../data/varieties.txt");

impl VarietyTable {
    pub fn default_table() -> Self {
        Self::parse(DEFAULT_TABLE).expect("shipped variety table parses")
    }

    /// Parses the plain-text table format: `LABEL = ["lhs=rhs", ...]` lines
    /// plus one `order = ["A<B", ...]` line.
    pub fn parse(text: &str) -> Result<Self, VarietyError> {
        let mut labels = Vec::new();
        let mut identities: HashMap<String, Vec<BandIdentity>> = HashMap::new();
        let mut hasse: Vec<(String, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| VarietyError::Parse {
                line: lineno,
                msg: "expected `key = [ ... ]`".into(),
            })?;
            let key = key.trim();
            let items = parse_string_array(value.trim()).map_err(|msg| VarietyError::Parse {
                line: lineno,
                msg,
            })?;
            if key == "order" {
                for item in items {
                    let (a, b) = item.split_once('<').ok_or_else(|| VarietyError::Parse {
                        line: lineno,
                        msg: format!("order entry {item:?} has no '<'"),
                    })?;
                    hasse.push((a.trim().to_string(), b.trim().to_string()));
                }
            } else {
                let mut ids = Vec::new();
                for item in &items {
                    ids.push(BandIdentity::parse(&format!("{key}:{item}"), item)?);
                }
                labels.push(key.to_string());
                identities.insert(key.to_string(), ids);
            }
        }
        for (a, b) in &hasse {
            for l in [a, b] {
                if !identities.contains_key(l) {
                    return Err(VarietyError::UnknownLabel(l.clone()));
                }
            }
        }
        // reflexive-transitive closure of the Hasse edges
        let mut leq = HashMap::new();
        for a in &labels {
            for b in &labels {
                leq.insert((a.clone(), b.clone()), a == b);
            }
        }
        for (a, b) in &hasse {
            leq.insert((a.clone(), b.clone()), true);
        }
        loop {
            let mut changed = false;
            for a in &labels {
                for b in &labels {
                    if leq[&(a.clone(), b.clone())] {
                        continue;
                    }
                    let via = labels.iter().any(|c| {
                        leq[&(a.clone(), c.clone())] && leq[&(c.clone(), b.clone())]
                    });
                    if via {
                        leq.insert((a.clone(), b.clone()), true);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(VarietyTable {
            labels,
            identities,
            hasse,
            leq,
        })
    }

    pub fn identities(&self, label: &str) -> Result<&[BandIdentity], VarietyError> {
        self.identities
            .get(label)
            .map(Vec::as_slice)
            .ok_or_else(|| VarietyError::UnknownLabel(label.into()))
    }

    /// Containment: `a` is a subvariety of `b`.
    pub fn leq(&self, a: &str, b: &str) -> bool {
        *self
            .leq
            .get(&(a.to_string(), b.to_string()))
            .unwrap_or(&false)
    }

    pub fn hasse_edges(&self) -> &[(String, String)] {
        &self.hasse
    }
}

fn parse_string_array(text: &str) -> Result<Vec<String>, String> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("expected a [ ... ] list, found {text:?}"))?;
    let mut out = Vec::new();
    for piece in inner.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let unquoted = piece
            .strip_prefix('"')
            .and_then(|p| p.strip_suffix('"'))
            .ok_or_else(|| format!("expected a quoted string, found {piece:?}"))?;
        out.push(unquoted.to_string());
    }
    Ok(out)
}

/// Result of classifying a band against the variety table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// all satisfied labels, in table order
    pub satisfied: Vec<String>,
    /// satisfied labels with no smaller satisfied label below them
    pub minimal: Vec<String>,
    /// per-label witness for the failing ones
    pub failures: Vec<(String, Vec<usize>)>,
}

/// Classifies a band: which Figure-1 varieties contain it.
pub fn classify(band: &FiniteBand, table: &VarietyTable) -> Result<Classification, VarietyError> {
    let mut satisfied = Vec::new();
    let mut failures = Vec::new();
    for label in &table.labels {
        let mut witness = None;
        for id in table.identities(label)? {
            if let SatisfiesResult::Fails { witness: w } = satisfies(band, id)? {
                witness = Some(w);
                break;
            }
        }
        match witness {
            None => satisfied.push(label.clone()),
            Some(w) => failures.push((label.clone(), w)),
        }
    }
    let minimal = satisfied
        .iter()
        .filter(|l| {
            !satisfied
                .iter()
                .any(|m| m != *l && table.leq(m, l))
        })
        .cloned()
        .collect();
    Ok(Classification {
        satisfied,
        minimal,
        failures,
    })
}
