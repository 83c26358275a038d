use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use gallery_satake::acceptance::{self, Status};
use gallery_satake::characters::{weyl_oracle, FormalCharacter};
use gallery_satake::coxeter::Elt;
use gallery_satake::crystal::Op;
use gallery_satake::gallery::{Gallery, Model};
use gallery_satake::hecke::{GroupAlgebraElement, Hecke, HeckeElement};
use gallery_satake::mvcells::{cells_points, grassmannian_points, Cells};
use gallery_satake::poly::LaurentPoly;
use gallery_satake::{linalg, presets, Q};

#[derive(Parser)]
#[command(name = "gallery-satake", version, about = "Gallery model and generic Satake combinatorics")]
struct Cli {
    /// Directory searched for `<name>.json` presets.
    #[arg(long, global = true)]
    presets_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct PresetArg {
    /// Built-in preset name or path to a JSON preset.
    #[arg(long)]
    preset: String,
}

#[derive(Args)]
struct MuArgs {
    #[command(flatten)]
    preset: PresetArg,
    /// Dominant coweight, comma-separated coordinates such as `1/2` or `1,0`.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Perturbation seed for the straight gallery `γ_μ`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Weight table of `V(μ)` from LS galleries.
    Char {
        #[command(flatten)]
        mu: MuArgs,
        /// Add the Freudenthal column (split presets only).
        #[arg(long)]
        oracle: bool,
    },
    /// Galleries of type `γ_μ`.
    Galleries {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long)]
        positively_folded: bool,
        #[arg(long)]
        ls: bool,
    },
    /// A single root operator step, or the whole f-graph.
    Crystal {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long, value_parser = ["e", "f", "etilde"])]
        op: Option<String>,
        /// Index of the simple root, from 0.
        #[arg(long)]
        root: Option<usize>,
        /// Gallery code, slot words joined by `|`.
        #[arg(long)]
        gallery: Option<String>,
        #[arg(long)]
        graph: bool,
    },
    /// Cells of `Gr_μ ∩ S_ν`.
    MvCells {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// Check the total against the Schubert cell point count.
        #[arg(long)]
        verify: bool,
    },
    /// `Sat_q([V(μ)])` in the group algebra.
    Satake {
        #[command(flatten)]
        mu: MuArgs,
    },
    /// Product of two Hecke elements.
    HeckeMult {
        #[command(flatten)]
        preset: PresetArg,
        /// A word like `s1.s0`, or a JSON object `{term: coefficient}`.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// The central element `φ([V(μ)])`.
    BernsteinCenter {
        #[command(flatten)]
        mu: MuArgs,
        /// Specialize, e.g. `q=0` or `q=3`.
        #[arg(long)]
        at: Option<String>,
    },
    /// Runs the acceptance criteria.
    Verify {
        /// Restrict to these presets (repeatable or comma-separated).
        #[arg(long, value_delimiter = ',')]
        preset: Vec<String>,
        /// Caps each `<2ρ, μ>` bound.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Length of an element of `W̃`.
    Length {
        #[command(flatten)]
        preset: PresetArg,
        /// A word such as `s0.s1`, with `e` for the identity
        #[arg(long, allow_hyphen_values = true)]
        elt: String,
    },
    /// A reduced word of an element of `W̃`.
    ReducedWord {
        #[command(flatten)]
        preset: PresetArg,
        /// A word such as `s0.s1`, with `e` for the identity
        #[arg(long, allow_hyphen_values = true)]
        elt: String,
    },
}

enum Failure {
    Config(String),
    Verification(String),
}

impl From<gallery_satake::Error> for Failure {
    fn from(e: gallery_satake::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Run = Result<(), Failure>;

/// Prints a line, exiting quietly once stdout is closed.
fn say(line: &str) {
    use std::io::Write;
    if writeln!(std::io::stdout().lock(), "{line}").is_err() {
        std::process::exit(0);
    }
}

struct Out {
    format: Format,
}

impl Out {
    fn table(&self, header: &[&str], rows: &[Vec<String>], json: Value) {
        match self.format {
            Format::Tsv => {
                say(&header.join("\t"));
                for r in rows {
                    say(&r.join("\t"));
                }
            }
            Format::Json => say(&serde_json::to_string_pretty(&json).expect("serializable")),
        }
    }
}

fn load(preset: &str, dir: &Option<PathBuf>) -> Result<Model, Failure> {
    let d = presets::resolve(preset, dir.as_deref())?;
    Ok(Model::new(d)?)
}

fn weight(m: &Model, s: &str) -> Result<Vec<i64>, Failure> {
    Ok(m.d().parse_weight(s)?)
}

fn dominant(m: &Model, s: &str) -> Result<Vec<i64>, Failure> {
    let mu = weight(m, s)?;
    if !m.d().is_dominant(&mu) {
        return Err(Failure::Config(format!("--mu {s} is not dominant")));
    }
    Ok(mu)
}

fn weight_json(m: &Model, nu: &[i64]) -> Value {
    json!(m.d().fmt_weight(nu).split(',').collect::<Vec<_>>())
}

fn poly_map<K>(terms: impl Iterator<Item = (K, String)>, key: impl Fn(K) -> String) -> Value {
    Value::Object(terms.map(|(k, v)| (key(k), Value::String(v))).collect::<Map<_, _>>())
}

fn parse_hecke(m: &Model, s: &str) -> Result<HeckeElement, Failure> {
    let a = &m.aff;
    let s = s.trim();
    if !s.starts_with('{') {
        return Ok(HeckeElement::basis(a.parse_elt(s)?));
    }
    let v: Value = serde_json::from_str(s).map_err(|e| Failure::Config(format!("hecke element: {e}")))?;
    let obj = v.as_object().ok_or_else(|| Failure::Config("hecke element must be a JSON object".into()))?;
    let mut x = HeckeElement::zero();
    for (k, c) in obj {
        let c = match c {
            Value::String(t) => LaurentPoly::parse(t)?,
            Value::Number(n) => LaurentPoly::constant(n.as_i64().ok_or_else(|| Failure::Config(format!("coefficient of `{k}`")))?),
            _ => return Err(Failure::Config(format!("coefficient of `{k}` must be a string"))),
        };
        x.add_term(a.parse_elt(k)?, &c);
    }
    Ok(x)
}

fn emit_hecke(out: &Out, m: &Model, x: &HeckeElement) {
    let rows: Vec<Vec<String>> = x.terms().map(|(w, c)| vec![m.aff.fmt_elt(w), c.to_string()]).collect();
    let json = poly_map(x.terms().map(|(w, c)| (w, c.to_string())), |w: &Elt| m.aff.fmt_elt(w));
    out.table(&["term", "coefficient"], &rows, json);
}

fn emit_group(out: &Out, m: &Model, x: &GroupAlgebraElement) {
    let rows: Vec<Vec<String>> = x.coeffs.iter().map(|(nu, c)| vec![m.d().fmt_weight(nu), c.to_string()]).collect();
    let json = poly_map(x.coeffs.iter().map(|(nu, c)| (nu, c.to_string())), |nu: &Vec<i64>| m.d().fmt_weight(nu));
    out.table(&["weight", "coefficient"], &rows, json);
}

fn gallery_row(m: &Model, g: &Gallery) -> (Vec<String>, Value) {
    let nu = m.target(g);
    let dim = m.load_bearing(g);
    let folds = m.fold_count(g);
    let row = vec![m.code(g), m.d().fmt_weight(&nu), dim.to_string(), folds.to_string()];
    let json = json!({"gallery": m.code(g), "target": weight_json(m, &nu), "dimension": dim, "folds": folds});
    (row, json)
}

fn cells_text(c: &Cells) -> String {
    c.iter()
        .map(|(s, n)| format!("{n}x(A^{}·Gm^{})", s.affine_dim, s.torus_dim))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn run(cli: Cli) -> Run {
    let out = Out { format: cli.format };
    let dir = &cli.presets_dir;
    match cli.command {
        Command::Char { mu, oracle } => {
            let m = load(&mu.preset.preset, dir)?;
            let w = dominant(&m, &mu.mu)?;
            let g = m.gamma_mu_seeded(&w, mu.seed)?;
            let ts: Vec<Vec<i64>> = m.f_closure(&g).iter().map(|h| m.target(h)).collect();
            let ch = FormalCharacter::from_weights(&ts);
            let truth = if oracle {
                if !m.d().absolute.is_split() {
                    return Err(Failure::Config("--oracle needs a split preset".into()));
                }
                Some(weyl_oracle(m.d(), &w))
            } else {
                None
            };
            let mut rows = Vec::new();
            let mut js = Vec::new();
            for (nu, k) in &ch.coeffs {
                let mut r = vec![m.d().fmt_weight(nu), k.to_string()];
                let mut j = json!({"weight": weight_json(&m, nu), "multiplicity": k});
                if let Some(t) = &truth {
                    r.push(t.mult(nu).to_string());
                    j["oracle"] = json!(t.mult(nu));
                }
                rows.push(r);
                js.push(j);
            }
            let header: &[&str] = if oracle { &["weight", "multiplicity", "oracle"] } else { &["weight", "multiplicity"] };
            out.table(header, &rows, Value::Array(js));
            if truth.is_some_and(|t| t != ch) {
                return Err(Failure::Verification("LS character differs from Freudenthal".into()));
            }
        }
        Command::Galleries { mu, nu, positively_folded, ls } => {
            let m = load(&mu.preset.preset, dir)?;
            let w = dominant(&m, &mu.mu)?;
            let nu = nu.map(|s| weight(&m, &s)).transpose()?;
            let g0 = m.gamma_mu_seeded(&w, mu.seed)?;
            let mut gs: Vec<Gallery> = if ls {
                m.f_closure(&g0).into_iter().collect()
            } else if positively_folded {
                m.positively_folded(&g0.gt)
            } else {
                m.all(&g0.gt)
            };
            gs.sort();
            let (rows, js): (Vec<_>, Vec<_>) = gs
                .iter()
                .filter(|g| nu.as_ref().map_or(true, |n| &m.target(g) == n))
                .map(|g| gallery_row(&m, g))
                .unzip();
            out.table(&["gallery", "target", "dimension", "folds"], &rows, Value::Array(js));
        }
        Command::Crystal { mu, op, root, gallery, graph } => {
            let m = load(&mu.preset.preset, dir)?;
            let w = dominant(&m, &mu.mu)?;
            let g0 = m.gamma_mu_seeded(&w, mu.seed)?;
            if graph {
                let edges: Vec<Value> = m
                    .f_closure(&g0)
                    .iter()
                    .flat_map(|g| (0..m.d().simple.len()).filter_map(|i| m.apply_f(g, i).result.map(|h| (g.clone(), h, i))).collect::<Vec<_>>())
                    .map(|(g, h, i)| json!({"source": m.code(&g), "target": m.code(&h), "root": i}))
                    .collect();
                say(&serde_json::to_string_pretty(&json!({"edges": edges})).expect("serializable"));
                return Ok(());
            }
            let (Some(op), Some(i), Some(code)) = (op, root, gallery) else {
                return Err(Failure::Config("crystal needs --op, --root and --gallery, or --graph".into()));
            };
            if i >= m.d().simple.len() {
                return Err(Failure::Config(format!("--root {i} out of range")));
            }
            let g = m.parse_code(&g0.gt, &code)?;
            let o = m.apply(Op::parse(&op).expect("validated by clap"), &g, i);
            let result = o.result.as_ref().map(|h| m.code(h));
            let case = format!("{:?}", o.case);
            let fmt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            let row = vec![
                result.clone().unwrap_or_else(|| "undefined".into()),
                case.clone(),
                fmt(o.j),
                fmt(o.l),
                linalg::fmt_q(&o.m),
            ];
            let js = json!({"result": result, "case": case, "j": o.j, "l": o.l, "m": linalg::fmt_q(&o.m)});
            out.table(&["result", "case", "j", "l", "m"], &[row], js);
        }
        Command::MvCells { mu, nu, verify } => {
            let m = load(&mu.preset.preset, dir)?;
            let w = dominant(&m, &mu.mu)?;
            let nu = nu.map(|s| weight(&m, &s)).transpose()?;
            let all = m.all_cell_shapes(&w)?;
            let mut rows = Vec::new();
            let mut js = Vec::new();
            for (n, c) in all.iter().filter(|(n, _)| nu.as_ref().map_or(true, |x| x == *n)) {
                let top = m.rho(&w.iter().zip(n).map(|(a, b)| a + b).collect::<Vec<_>>()) as u32;
                let top_count: u64 = c.iter().filter(|(s, _)| s.dim() == top).map(|(_, k)| k).sum();
                let pts = cells_points(c);
                rows.push(vec![m.d().fmt_weight(n), cells_text(c), pts.to_string(), top_count.to_string()]);
                let shapes: Vec<Value> = c.iter().map(|(s, k)| json!({"affine": s.affine_dim, "torus": s.torus_dim, "count": k})).collect();
                js.push(json!({"nu": weight_json(&m, n), "cells": shapes, "points": pts.to_string(), "top_cells": top_count}));
            }
            out.table(&["nu", "cells", "points", "top_cells"], &rows, Value::Array(js));
            if verify {
                let total = all.values().fold(LaurentPoly::zero(), |acc, c| &acc + &cells_points(c));
                let want = grassmannian_points(&m.aff, &w);
                eprintln!("global point count: cells {total}, Schubert cell {want}");
                if total != want {
                    return Err(Failure::Verification("global point count differs".into()));
                }
            }
        }
        Command::Satake { mu } => {
            let m = load(&mu.preset.preset, dir)?;
            let w = dominant(&m, &mu.mu)?;
            let h = Hecke::new(&m);
            emit_group(&out, &m, &h.sat_transform(&w)?);
        }
        Command::HeckeMult { preset, left, right } => {
            let m = load(&preset.preset, dir)?;
            let h = Hecke::new(&m);
            let x = parse_hecke(&m, &left)?;
            let y = parse_hecke(&m, &right)?;
            emit_hecke(&out, &m, &h.mul(&x, &y));
        }
        Command::BernsteinCenter { mu, at } => {
            let m = load(&mu.preset.preset, dir)?;
            let w = dominant(&m, &mu.mu)?;
            let h = Hecke::new(&m);
            let z = h.phi(&w)?;
            let central = h.center_check(&z);
            match at {
                None => emit_hecke(&out, &m, &z),
                Some(at) => {
                    let v = at
                        .strip_prefix("q=")
                        .and_then(|v| v.trim().parse::<i64>().ok())
                        .ok_or_else(|| Failure::Config(format!("--at expects q=INTEGER, got `{at}`")))?;
                    let sp: BTreeMap<Elt, Q> = z.specialize(v)?;
                    let rows: Vec<Vec<String>> = sp.iter().map(|(w, c)| vec![m.aff.fmt_elt(w), linalg::fmt_q(c)]).collect();
                    let json = poly_map(sp.iter().map(|(w, c)| (w, linalg::fmt_q(c))), |w: &Elt| m.aff.fmt_elt(w));
                    out.table(&["term", "coefficient"], &rows, json);
                }
            }
            eprintln!("central: {central}");
            if !central {
                return Err(Failure::Verification("φ([V(μ)]) is not central".into()));
            }
        }
        Command::Verify { preset, bound } => {
            let presets: Vec<String> = if preset.is_empty() {
                presets::BUILTIN.iter().map(|s| s.to_string()).collect()
            } else {
                preset
            };
            for p in &presets {
                load(p, dir)?;
            }
            if bound.is_some_and(|b| b <= 0) {
                return Err(Failure::Config("--bound must be positive".into()));
            }
            let cfg = acceptance::Config { presets, bound, presets_dir: dir.clone() };
            let mut failed = false;
            for id in 1..=11 {
                let r = acceptance::run_one(&cfg, id);
                say(&r.to_string());
                failed |= r.status == Status::Fail;
            }
            if failed {
                return Err(Failure::Verification("some criteria failed".into()));
            }
        }
        Command::Length { preset, elt } => {
            let m = load(&preset.preset, dir)?;
            say(&m.aff.length(&m.aff.parse_elt(&elt)?).to_string());
        }
        Command::ReducedWord { preset, elt } => {
            let m = load(&preset.preset, dir)?;
            let x = m.aff.parse_elt(&elt)?;
            say(&m.aff.fmt_elt(&x));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("GALLERY_SATAKE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
