//! Command-line front end: validation, Green's structure, variety
//! classification, singular squares, and maximal-subgroup presentations for
//! finite bands and semigroups given as Cayley tables.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use igband::builtins::builtin_band;
use igband::free_band::find_isomorphism;
use igband::greens::{eggbox, greens, EggBox, GreensStructure};
use igband::group_tools::{
    abelian_invariants, simplify, AbelianInvariants, SimplifyLimits, SimplifyStatus,
};
use igband::presentation::{
    emit_json, emit_text, find_schreier, parse_json, parse_text, present_band, present_general,
    theta_fast_path, GroupPresentation,
};
use igband::semigroup::{validate, Validated};
use igband::singularity::{singular_rectangles, SingularRectangle};
use igband::variety::{classify, VarietyTable};
use igband::{cay, FiniteSemigroup};

#[derive(Parser)]
#[command(name = "igband", version, about = "band and semigroup computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// path to a .cay Cayley table file
    #[arg(long)]
    input: Option<PathBuf>,
    /// name of a built-in band (prop2-fb3, prop2-frb4, fb:k, vfree:<label>:<n>)
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args)]
struct ClassArgs {
    /// D-class selector: display name "Dk", element label, or element index
    #[arg(long)]
    dclass: Option<String>,
    /// base idempotent: element label or index (default: least in the class)
    #[arg(long)]
    base: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a Cayley table and report basic facts
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Green's relations, D-class summary, optional egg-box
    Greens {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify a band against the variety identity table
    Variety {
        #[command(flatten)]
        input: Input,
        /// alternative variety table file
        #[arg(long)]
        varieties: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Singular rectangles of an egg-box
    Squares {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        class: ClassArgs,
        /// only proper rectangles (distinct rows and columns)
        #[arg(long)]
        proper: bool,
        /// render a grid per rectangle
        #[arg(long)]
        diagram: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Present the maximal subgroup over a D-class
    Present {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        class: ClassArgs,
        /// report the seminormal-case free rank via the theta closure
        #[arg(long)]
        fast_path: bool,
        /// apply Tietze simplification to the presentation
        #[arg(long)]
        simplify: bool,
        /// append the abelian invariants
        #[arg(long)]
        abelian: bool,
        /// word-length bound for the Schreier system search (non-band inputs)
        #[arg(long, default_value_t = 4)]
        max_schreier_len: usize,
        /// total relator length cap during simplification
        #[arg(long)]
        limit_relator_length: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Simplify a presentation file (text or JSON)
    Simplify {
        /// presentation file
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        limit_relator_length: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Abelian invariants of a presentation file
    Abelian {
        /// presentation file
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit a built-in band as a .cay file
    Builtin {
        name: String,
        /// output path (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

// ---- error plumbing: exit 1 with the module error name ----

struct AppError {
    name: String,
    msg: String,
}

fn app_err<E: std::error::Error + std::fmt::Debug>(type_name: &str, e: E) -> AppError {
    // variant name is the leading identifier of the Debug form
    let debug = format!("{e:?}");
    let variant: String = debug
        .chars()
        .take_while(|c| c.is_alphanumeric() || *c == '_')
        .collect();
    AppError {
        name: format!("{type_name}::{variant}"),
        msg: e.to_string(),
    }
}

macro_rules! from_err {
    ($ty:ty, $name:literal) => {
        impl From<$ty> for AppError {
            fn from(e: $ty) -> Self {
                app_err($name, e)
            }
        }
    };
}

from_err!(igband::semigroup::SemigroupError, "SemigroupError");
from_err!(igband::cay::CayError, "CayError");
from_err!(igband::greens::GreensError, "GreensError");
from_err!(igband::variety::VarietyError, "VarietyError");
from_err!(igband::singularity::SingularityError, "SingularityError");
from_err!(igband::presentation::PresentationError, "PresentationError");
from_err!(igband::free_band::FreeBandError, "FreeBandError");
from_err!(std::io::Error, "IoError");

impl From<igband::builtins::BuiltinError> for AppError {
    fn from(e: igband::builtins::BuiltinError) -> Self {
        use igband::builtins::BuiltinError as B;
        match e {
            B::Unknown { .. } => AppError {
                name: "BuiltinError::UnknownBuiltin".into(),
                msg: e.to_string(),
            },
            B::FreeBand(inner) => inner.into(),
            B::Variety(inner) => inner.into(),
        }
    }
}

fn selector_error(what: &str, sel: &str) -> AppError {
    AppError {
        name: "SelectorError::Unresolved".into(),
        msg: format!("{what} selector {sel:?} matches no element"),
    }
}

// ---- input loading and selector resolution ----

struct Loaded {
    validated: Validated,
    builtin: Option<String>,
}

fn load(input: &Input) -> Result<Loaded, AppError> {
    let validated = match (&input.input, &input.builtin) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)?;
            let (grid, labels) = cay::parse(&text)?;
            validate(&grid, labels)?
        }
        (None, Some(name)) => Validated::Band(builtin_band(name)?),
        _ => unreachable!("clap enforces exactly one input source"),
    };
    Ok(Loaded {
        validated,
        builtin: input.builtin.clone(),
    })
}

/// Element lookup by label or index. For the two built-in realizations of the
/// 20-element band, labels of the sibling realization are accepted as well,
/// translated through the canonical isomorphism.
fn resolve_element(loaded: &Loaded, sel: &str) -> Result<usize, AppError> {
    let sg = loaded.validated.semigroup();
    if let Some(x) = sg.resolve(sel) {
        return Ok(x);
    }
    if let Some(name) = &loaded.builtin {
        let sibling = match name.as_str() {
            "prop2-fb3" => Some("prop2-frb4"),
            "prop2-frb4" => Some("prop2-fb3"),
            _ => None,
        };
        if let Some(sib_name) = sibling {
            let sib = builtin_band(sib_name)?;
            if let Some(x) = sib.as_semigroup().resolve(sel) {
                let iso = find_isomorphism(sib.as_semigroup(), sg)
                    .expect("the two realizations are isomorphic");
                return Ok(iso[x]);
            }
        }
    }
    Err(selector_error("element", sel))
}

fn resolve_dclass(
    loaded: &Loaded,
    gs: &GreensStructure,
    sel: Option<&str>,
) -> Result<usize, AppError> {
    let sg = loaded.validated.semigroup();
    match sel {
        None => {
            // default: first display class containing an idempotent
            gs.d_class_display_order()
                .into_iter()
                .find(|&d| gs.d_class_members(d).iter().any(|&x| sg.is_idempotent(x)))
                .ok_or_else(|| selector_error("dclass", "<default>"))
        }
        Some(s) => {
            if let Some(d) = gs.resolve_d_name(s) {
                return Ok(d);
            }
            resolve_element(loaded, s)
                .map(|x| gs.d_class[x])
                .map_err(|_| selector_error("dclass", s))
        }
    }
}

fn resolve_base(
    loaded: &Loaded,
    gs: &GreensStructure,
    d: usize,
    sel: Option<&str>,
) -> Result<usize, AppError> {
    let sg = loaded.validated.semigroup();
    match sel {
        None => gs
            .d_class_members(d)
            .into_iter()
            .find(|&x| sg.is_idempotent(x))
            .ok_or_else(|| selector_error("base", "<default>")),
        Some(s) => resolve_element(loaded, s),
    }
}

fn class_setup(
    loaded: &Loaded,
    class: &ClassArgs,
) -> Result<(GreensStructure, EggBox), AppError> {
    let sg = loaded.validated.semigroup();
    let gs = greens(sg);
    let d = resolve_dclass(loaded, &gs, class.dclass.as_deref())?;
    let base = resolve_base(loaded, &gs, d, class.base.as_deref())?;
    let eb = eggbox(sg, &gs, d, base)?;
    Ok((gs, eb))
}

// ---- reports ----

fn cmd_verify(input: &Input, format: Format) -> Result<String, AppError> {
    let loaded = load(input)?;
    let sg = loaded.validated.semigroup();
    let (n, band, idems) = (sg.n(), loaded.validated.is_band(), sg.idempotents().len());
    Ok(match format {
        Format::Text => format!("n={n}\nband={band}\nidempotents={idems}\n"),
        Format::Json => {
            let doc = json!({"n": n, "band": band, "idempotents": idems});
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    })
}

fn eggbox_text(sg: &FiniteSemigroup, gs: &GreensStructure, eb: &EggBox) -> String {
    let mut out = format!(
        "eggbox {} base={} rows={} cols={}\n",
        gs.d_name(eb.d_class),
        sg.label(eb.base),
        eb.n_rows(),
        eb.n_cols()
    );
    for i in 0..eb.n_rows() {
        out.push_str(&format!("row {}:", i + 1));
        for j in 0..eb.n_cols() {
            let cell: Vec<String> = eb.cells[i][j].iter().map(|&x| sg.label(x)).collect();
            let marker = if eb.is_group_cell(i, j) { "*" } else { "" };
            out.push_str(&format!(" [{}]{marker}", cell.join(",")));
        }
        out.push('\n');
    }
    out
}

fn cmd_greens(input: &Input, class: &ClassArgs, format: Format) -> Result<String, AppError> {
    let loaded = load(input)?;
    let sg = loaded.validated.semigroup();
    let gs = greens(sg);
    let summary: Vec<(String, usize, usize, usize)> = gs
        .d_class_display_order()
        .into_iter()
        .map(|d| {
            let members = gs.d_class_members(d);
            let rs: std::collections::BTreeSet<usize> =
                members.iter().map(|&x| gs.r_class[x]).collect();
            let ls: std::collections::BTreeSet<usize> =
                members.iter().map(|&x| gs.l_class[x]).collect();
            (gs.d_name(d), members.len(), rs.len(), ls.len())
        })
        .collect();
    let want_box = class.dclass.is_some() || class.base.is_some();
    let eb = if want_box {
        let d = resolve_dclass(&loaded, &gs, class.dclass.as_deref())?;
        let base = resolve_base(&loaded, &gs, d, class.base.as_deref())?;
        Some(eggbox(sg, &gs, d, base)?)
    } else {
        None
    };
    Ok(match format {
        Format::Text => {
            let mut out = format!("n={}\n", sg.n());
            for (name, size, nr, nl) in &summary {
                out.push_str(&format!("{name}: size={size} R={nr} L={nl}\n"));
            }
            if let Some(eb) = &eb {
                out.push_str(&eggbox_text(sg, &gs, eb));
            }
            out
        }
        Format::Json => {
            let classes: Vec<_> = summary
                .iter()
                .map(|(name, size, nr, nl)| {
                    json!({"name": name, "size": size, "rclasses": nr, "lclasses": nl})
                })
                .collect();
            let mut doc = json!({"n": sg.n(), "dclasses": classes});
            if let Some(eb) = &eb {
                let cells: Vec<Vec<Vec<String>>> = (0..eb.n_rows())
                    .map(|i| {
                        (0..eb.n_cols())
                            .map(|j| eb.cells[i][j].iter().map(|&x| sg.label(x)).collect())
                            .collect()
                    })
                    .collect();
                doc["eggbox"] = json!({
                    "dclass": gs.d_name(eb.d_class),
                    "base": sg.label(eb.base),
                    "cells": cells,
                    "group_cells": eb.group_cells.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
                });
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    })
}

fn cmd_variety(
    input: &Input,
    varieties: Option<&PathBuf>,
    format: Format,
) -> Result<String, AppError> {
    let loaded = load(input)?;
    let Validated::Band(band) = &loaded.validated else {
        return Err(AppError {
            name: "SemigroupError::NotABand".into(),
            msg: "variety classification needs a band".into(),
        });
    };
    let table = match varieties {
        Some(path) => VarietyTable::parse(&fs::read_to_string(path)?)?,
        None => VarietyTable::default_table(),
    };
    let c = classify(band, &table)?;
    let sg = band.as_semigroup();
    Ok(match format {
        Format::Text => {
            let mut out = format!("satisfied: {}\n", c.satisfied.join(" "));
            out.push_str(&format!("minimal: {}\n", c.minimal.join(" ")));
            for (label, witness) in &c.failures {
                let w: Vec<String> = witness.iter().map(|&x| sg.label(x)).collect();
                out.push_str(&format!("fails {label}: witness=({})\n", w.join(",")));
            }
            out
        }
        Format::Json => {
            let failures: Vec<_> = c
                .failures
                .iter()
                .map(|(label, witness)| {
                    let w: Vec<String> = witness.iter().map(|&x| sg.label(x)).collect();
                    json!({"label": label, "witness": w})
                })
                .collect();
            let doc = json!({
                "satisfied": c.satisfied,
                "minimal": c.minimal,
                "failures": failures,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    })
}

fn rect_line(sg: &FiniteSemigroup, r: &SingularRectangle) -> String {
    let witnesses: Vec<String> = r.witnesses.iter().map(|&x| sg.label(x)).collect();
    format!(
        "rows=({},{}) cols=({},{}) kind={} witnesses={}",
        r.rows.0 + 1,
        r.rows.1 + 1,
        r.cols.0 + 1,
        r.cols.1 + 1,
        r.kind.tag(),
        witnesses.join(",")
    )
}

fn rect_diagram(eb: &EggBox, r: &SingularRectangle) -> String {
    let mut out = String::new();
    for i in 0..eb.n_rows() {
        out.push_str("  ");
        for j in 0..eb.n_cols() {
            let inside = (i == r.rows.0 || i == r.rows.1) && (j == r.cols.0 || j == r.cols.1);
            out.push(if inside { '#' } else { '.' });
            if j + 1 < eb.n_cols() {
                out.push(' ');
            }
        }
        out.push('\n');
    }
    out
}

fn cmd_squares(
    input: &Input,
    class: &ClassArgs,
    proper: bool,
    diagram: bool,
    format: Format,
) -> Result<String, AppError> {
    let loaded = load(input)?;
    let sg = loaded.validated.semigroup();
    let (gs, eb) = class_setup(&loaded, class)?;
    let rects = singular_rectangles(sg, &gs, &eb, proper);
    Ok(match format {
        Format::Text => {
            let mut out = format!(
                "dclass={} base={} singular_rectangles={}\n",
                gs.d_name(eb.d_class),
                sg.label(eb.base),
                rects.len()
            );
            for r in &rects {
                out.push_str(&rect_line(sg, r));
                out.push('\n');
                if diagram {
                    out.push_str(&rect_diagram(&eb, r));
                }
            }
            out
        }
        Format::Json => {
            let list: Vec<_> = rects
                .iter()
                .map(|r| {
                    let witnesses: Vec<String> =
                        r.witnesses.iter().map(|&x| sg.label(x)).collect();
                    json!({
                        "rows": [r.rows.0 + 1, r.rows.1 + 1],
                        "cols": [r.cols.0 + 1, r.cols.1 + 1],
                        "kind": r.kind.tag(),
                        "witnesses": witnesses,
                    })
                })
                .collect();
            let doc = json!({
                "dclass": gs.d_name(eb.d_class),
                "base": sg.label(eb.base),
                "rectangles": list,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_present(
    input: &Input,
    class: &ClassArgs,
    fast_path: bool,
    do_simplify: bool,
    abelian: bool,
    max_schreier_len: usize,
    limit: Option<usize>,
    format: Format,
) -> Result<String, AppError> {
    let loaded = load(input)?;
    let sg = loaded.validated.semigroup();
    let (gs, eb) = class_setup(&loaded, class)?;

    let presentation: GroupPresentation = match &loaded.validated {
        Validated::Band(band) => present_band(band, &gs, &eb),
        Validated::Semigroup(sg) => {
            let sys = find_schreier(sg, &gs, &eb, max_schreier_len)?;
            present_general(sg, &gs, &eb, &sys).0
        }
    };

    let limits = limit
        .map(|max_total_length| SimplifyLimits { max_total_length })
        .unwrap_or_default();
    let simplified = do_simplify.then(|| simplify(&presentation, &limits));
    let theta = if fast_path {
        let Validated::Band(band) = &loaded.validated else {
            return Err(AppError {
                name: "SemigroupError::NotABand".into(),
                msg: "the fast path applies to bands only".into(),
            });
        };
        Some(theta_fast_path(band, &gs, &eb)?)
    } else {
        None
    };
    let invariants: Option<AbelianInvariants> = abelian.then(|| {
        abelian_invariants(
            simplified
                .as_ref()
                .map(|s| &s.presentation)
                .unwrap_or(&presentation),
        )
    });

    Ok(match format {
        Format::Text => {
            let mut out = format!(
                "dclass={} base={} rows={} cols={}\n",
                gs.d_name(eb.d_class),
                sg.label(eb.base),
                eb.n_rows(),
                eb.n_cols()
            );
            out.push_str(&emit_text(&presentation));
            if let Some(t) = &theta {
                let cs: Vec<String> = t.cross_section.iter().map(|j| (j + 1).to_string()).collect();
                out.push_str(&format!(
                    "theta: m={} cross_section=[{}] free_rank={}\n",
                    t.m,
                    cs.join(","),
                    t.free_rank
                ));
            }
            if let Some(s) = &simplified {
                for entry in &s.log {
                    out.push_str(&format!("move: {entry}\n"));
                }
                out.push_str(&format!("status={}\n", status_tag(s.status)));
                out.push_str("simplified ");
                out.push_str(&emit_text(&s.presentation));
            }
            if let Some(inv) = &invariants {
                out.push_str(&inv.display());
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut doc = json!({
                "dclass": gs.d_name(eb.d_class),
                "base": sg.label(eb.base),
                "presentation": serde_json::from_str::<serde_json::Value>(&emit_json(&presentation)).unwrap(),
            });
            if let Some(t) = &theta {
                doc["theta"] = json!({
                    "m": t.m,
                    "cross_section": t.cross_section.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "free_rank": t.free_rank,
                });
            }
            if let Some(s) = &simplified {
                doc["simplified"] = json!({
                    "status": status_tag(s.status),
                    "log": s.log,
                    "presentation": serde_json::from_str::<serde_json::Value>(&emit_json(&s.presentation)).unwrap(),
                });
            }
            if let Some(inv) = &invariants {
                doc["abelian"] = abelian_json(inv);
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    })
}

fn status_tag(s: SimplifyStatus) -> &'static str {
    match s {
        SimplifyStatus::FreeCertified => "FREE_CERTIFIED",
        SimplifyStatus::Reduced => "REDUCED",
        SimplifyStatus::LimitHit => "LIMIT_HIT",
    }
}

fn abelian_json(inv: &AbelianInvariants) -> serde_json::Value {
    json!({
        "free_rank": inv.free_rank,
        "torsion": inv.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

fn read_presentation(path: &PathBuf) -> Result<GroupPresentation, AppError> {
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Ok(parse_json(&text)?)
    } else {
        Ok(parse_text(&text)?)
    }
}

fn cmd_simplify(
    path: &PathBuf,
    limit: Option<usize>,
    format: Format,
) -> Result<String, AppError> {
    let p = read_presentation(path)?;
    let limits = limit
        .map(|max_total_length| SimplifyLimits { max_total_length })
        .unwrap_or_default();
    let s = simplify(&p, &limits);
    Ok(match format {
        Format::Text => {
            // comment lines keep the output parseable as a presentation file
            let mut out = String::new();
            for entry in &s.log {
                out.push_str(&format!("# move: {entry}\n"));
            }
            out.push_str(&format!("# status={}\n", status_tag(s.status)));
            out.push_str(&emit_text(&s.presentation));
            out
        }
        Format::Json => {
            let doc = json!({
                "status": status_tag(s.status),
                "log": s.log,
                "presentation": serde_json::from_str::<serde_json::Value>(&emit_json(&s.presentation)).unwrap(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    })
}

fn cmd_abelian(path: &PathBuf, format: Format) -> Result<String, AppError> {
    let p = read_presentation(path)?;
    let inv = abelian_invariants(&p);
    Ok(match format {
        Format::Text => format!("{}\n", inv.display()),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&abelian_json(&inv)).unwrap()
        ),
    })
}

fn cmd_builtin(name: &str, out: Option<&PathBuf>) -> Result<String, AppError> {
    let band = builtin_band(name)?;
    let text = cay::emit(band.as_semigroup());
    match out {
        Some(path) => {
            fs::write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run(cli: &Cli) -> Result<String, AppError> {
    match &cli.cmd {
        Cmd::Verify { input, format } => cmd_verify(input, *format),
        Cmd::Greens { input, class, format } => cmd_greens(input, class, *format),
        Cmd::Variety {
            input,
            varieties,
            format,
        } => cmd_variety(input, varieties.as_ref(), *format),
        Cmd::Squares {
            input,
            class,
            proper,
            diagram,
            format,
        } => cmd_squares(input, class, *proper, *diagram, *format),
        Cmd::Present {
            input,
            class,
            fast_path,
            simplify,
            abelian,
            max_schreier_len,
            limit_relator_length,
            format,
        } => cmd_present(
            input,
            class,
            *fast_path,
            *simplify,
            *abelian,
            *max_schreier_len,
            *limit_relator_length,
            *format,
        ),
        Cmd::Simplify {
            input,
            limit_relator_length,
            format,
        } => cmd_simplify(input, *limit_relator_length, *format),
        Cmd::Abelian { input, format } => cmd_abelian(input, *format),
        Cmd::Builtin { name, out } => cmd_builtin(name, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.name, e.msg);
            ExitCode::FAILURE
        }
    }
}
