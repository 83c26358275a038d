//! The acceptance suite shared by `gallery-satake verify` and the integration tests.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::characters::{weyl_oracle, Characters, FormalCharacter};
use crate::gallery::{Gallery, Model};
use crate::hecke::{GroupAlgebraElement, Hecke, HeckeElement};
use crate::mvcells::{cells_points, deodhar_cells, grassmannian_points, CellShape, RPolynomials};
use crate::poly::LaurentPoly;
use crate::rootdata::RelativeRootDatum;
use crate::{presets, Q};

/// Criteria whose literal statement disagrees with the computed model.
pub const KNOWN_UNATTAINABLE: &[u8] = &[1];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub id: u8,
    pub title: &'static str,
    pub tolerance: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
}

impl Report {
    pub fn known_unattainable(&self) -> bool {
        KNOWN_UNATTAINABLE.contains(&self.id)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.status, self.known_unattainable()) {
            (Status::Pass, _) => "PASS",
            (Status::Fail, true) => "FAIL (known unattainable)",
            (Status::Fail, false) => "FAIL",
            (Status::Skip, _) => "SKIP",
        };
        write!(
            f,
            "criterion {:>2} {status} [{:.2}s, {}] {}: {}",
            self.id,
            self.elapsed.as_secs_f64(),
            self.tolerance,
            self.title,
            self.detail
        )
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    /// Presets to exercise; criteria tied to a missing preset are skipped.
    pub presets: Vec<String>,
    /// Caps every `<2ρ, μ>` bound below its default.
    pub bound: Option<i64>,
    pub presets_dir: Option<std::path::PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { presets: presets::BUILTIN.iter().map(|s| s.to_string()).collect(), bound: None, presets_dir: None }
    }
}

impl Config {
    fn bound(&self, default: i64) -> i64 {
        self.bound.map_or(default, |b| b.min(default))
    }

    fn has(&self, name: &str) -> bool {
        self.presets.iter().any(|p| p == name)
    }

    fn models(&self) -> Vec<(String, Model)> {
        self.presets
            .iter()
            .filter_map(|p| presets::resolve(p, self.presets_dir.as_deref()).ok().and_then(|d| Model::new(d).ok()).map(|m| (p.clone(), m)))
            .collect()
    }
}

/// Dominant `μ` with `<2ρ, μ> ≤ bound`.
pub fn dominant_weights(d: &RelativeRootDatum, bound: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for _ in 0..d.rank {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| (-bound..=bound).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    let mut out: Vec<Vec<i64>> = pts
        .into_iter()
        .filter(|p| d.is_dominant(p) && d.pair_two_rho(p) <= bound)
        .collect();
    out.sort_by_key(|p| (d.pair_two_rho(p), p.clone()));
    out
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

/// Runs `f` over every `(preset, μ)` pair in parallel and counts the cases.
fn over_pairs(
    models: &[(String, Model)],
    bound: impl Fn(&str) -> i64,
    f: impl Fn(&str, &Model, &[i64]) -> std::result::Result<(), String> + Sync,
) -> std::result::Result<usize, String> {
    let jobs: Vec<(usize, Vec<i64>)> = models
        .iter()
        .enumerate()
        .flat_map(|(i, (name, m))| dominant_weights(m.d(), bound(name)).into_iter().map(move |mu| (i, mu)))
        .collect();
    jobs.par_iter()
        .map(|(i, mu)| {
            let (name, m) = &models[*i];
            f(name, m, mu).map_err(|e| format!("{name} μ={}: {e}", m.d().fmt_weight(mu)))
        })
        .collect::<std::result::Result<Vec<()>, String>>()
        .map(|v| v.len())
}

pub fn run(cfg: &Config) -> Vec<Report> {
    (1..=11).map(|id| run_one(cfg, id)).collect()
}

pub fn run_one(cfg: &Config, id: u8) -> Report {
    let (title, tolerance): (&'static str, &'static str) = match id {
        1 => ("SU_3 preset", "exact, < 10 s"),
        2 => ("dimension identities", "exact"),
        3 => ("dimension estimate", "exact"),
        4 => ("crystal laws", "exact"),
        5 => ("LS characterization", "exact"),
        6 => ("character consistency", "exact, < 120 s"),
        7 => ("Deodhar / R-polynomials", "exact"),
        8 => ("global point count", "exact"),
        9 => ("MV multiplicity", "exact"),
        10 => ("Hecke layer", "exact, < 60 s"),
        11 => ("PGL_2 closed form", "exact"),
        _ => panic!("no criterion {id}"),
    };
    let start = Instant::now();
    let limit = match id {
        1 => Some(10),
        6 => Some(120),
        10 => Some(60),
        _ => None,
    };
    let outcome = match id {
        1 if !cfg.has("su3") => None,
        11 if !cfg.has("pgl2") => None,
        1 => Some(su3_example()),
        2 => Some(dimension_identities(cfg)),
        3 => Some(dimension_estimate(cfg)),
        4 => Some(crystal_laws(cfg)),
        5 => Some(ls_characterization(cfg)),
        6 => Some(character_consistency(cfg)),
        7 => Some(deodhar(cfg)),
        8 => Some(point_count(cfg)),
        9 => Some(mv_multiplicity(cfg)),
        10 => Some(hecke_layer(cfg)),
        _ => Some(pgl2_closed_form()),
    };
    let elapsed = start.elapsed();
    let (status, detail) = match outcome {
        None => (Status::Skip, "preset not selected".to_string()),
        Some(Ok(d)) => match limit {
            Some(s) if elapsed.as_secs() >= s => (Status::Fail, format!("{d}; exceeded {s} s")),
            _ => (Status::Pass, d),
        },
        Some(Err(e)) => (Status::Fail, e),
    };
    Report { id, title, tolerance, status, detail, elapsed }
}

fn su3_example() -> Check {
    let m = Model::from_preset("su3").map_err(|e| e.to_string())?;
    let d = m.d();
    let half = d.parse_weight("1/2").map_err(|e| e.to_string())?;
    let mut wrong_support = Vec::new();
    let mut rest_ok = true;
    let mut notes = Vec::new();
    for k in 1..=4i64 {
        let mu: Vec<i64> = half.iter().map(|x| k * x).collect();
        let g0 = m.gamma_mu(&mu).map_err(|e| e.to_string())?;
        let mut targets: BTreeMap<i64, usize> = BTreeMap::new();
        for g in m.all(&g0.gt) {
            *targets.entry(m.target(&g)[0] / half[0]).or_default() += 1;
        }
        let pos = m.positively_folded(&g0.gt);
        let mut by_nu: BTreeMap<i64, Vec<Gallery>> = BTreeMap::new();
        for g in pos {
            by_nu.entry(m.target(&g)[0] / half[0]).or_default().push(g);
        }
        let cells = m.all_cell_shapes(&mu).map_err(|e| e.to_string())?;
        for n in -k - 2..=k + 2 {
            let expected = n.abs() <= k && (k - n) % 2 == 0;
            let nonempty = targets.contains_key(&n);
            if expected != nonempty {
                wrong_support.push(format!("μ={} ν={}", d.fmt_weight(&mu), d.fmt_weight(&[n * half[0]])));
            }
            if !nonempty {
                continue;
            }
            let nu = vec![n * half[0]];
            let gs = by_nu.get(&n).cloned().unwrap_or_default();
            let dim_want = m.rho(&add(&mu, &nu)) as u32;
            let shape_want = if n.abs() == k {
                CellShape { affine_dim: dim_want, torus_dim: 0 }
            } else {
                CellShape { affine_dim: dim_want - 1, torus_dim: 1 }
            };
            let one = gs.len() == 1;
            let dim_ok = one && m.load_bearing(&gs[0]) == dim_want;
            let cells_ok = cells.get(&nu) == Some(&BTreeMap::from([(shape_want, 1)]));
            if !(one && dim_ok && cells_ok) {
                rest_ok = false;
                notes.push(format!("μ={} ν={}: {} positively folded, cells {:?}", d.fmt_weight(&mu), d.fmt_weight(&nu), gs.len(), cells.get(&nu)));
            }
        }
    }
    let per_nu = if rest_ok {
        "on every nonempty ν: one positively folded gallery, dim 2(μ+ν), expected cell shape".to_string()
    } else {
        notes.join("; ")
    };
    if wrong_support.is_empty() && rest_ok {
        Ok(per_nu)
    } else {
        Err(format!(
            "support differs from |ν| ≤ μ, μ-ν ∈ Z at {} (first: {}); {per_nu}",
            wrong_support.len(),
            wrong_support.first().cloned().unwrap_or_default()
        ))
    }
}

fn dimension_identities(cfg: &Config) -> Check {
    let models = cfg.models();
    let n = over_pairs(&models, |_| cfg.bound(8), |_, m, mu| {
        let d = m.d();
        let g0 = m.gamma_mu(mu).map_err(|e| e.to_string())?;
        let dim0 = m.dimension(&g0).map_err(|e| e.to_string())? as i64;
        ensure(dim0 == d.pair_two_rho(mu), || format!("dim γ_μ = {dim0}"))?;
        let ls = m.ls_galleries(mu).map_err(|e| e.to_string())?;
        for wmu in d.orbit(mu) {
            let hits: Vec<&Gallery> = ls.iter().filter(|g| m.target(g) == wmu).collect();
            ensure(hits.len() == 1, || format!("{} LS galleries at wμ = {}", hits.len(), d.fmt_weight(&wmu)))?;
            let want = m.rho(&add(mu, &wmu));
            let got = m.load_bearing(hits[0]) as i64;
            ensure(got == want, || format!("dim γ_wμ = {got} at {}, want {want}", d.fmt_weight(&wmu)))?;
        }
        Ok(())
    })?;
    Ok(format!("{n} (preset, μ) pairs, all w ∈ W₀"))
}

fn dimension_estimate(cfg: &Config) -> Check {
    let models = cfg.models();
    let count = std::sync::atomic::AtomicUsize::new(0);
    let n = over_pairs(&models, |_| cfg.bound(8), |_, m, mu| {
        let g0 = m.gamma_mu(mu).map_err(|e| e.to_string())?;
        for g in m.positively_folded(&g0.gt) {
            count.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            let bound = m.rho(&add(mu, &m.target(&g)));
            let dim = m.load_bearing(&g) as i64;
            ensure(dim <= bound, || format!("{}: dim {dim} > {bound}", m.code(&g)))?;
        }
        Ok(())
    })?;
    Ok(format!("{} positively folded galleries over {n} pairs", count.into_inner()))
}

fn string_lengths(m: &Model, g: &Gallery, i: usize) -> (i64, i64) {
    let walk = |f: &dyn Fn(&Gallery) -> Option<Gallery>| {
        let mut n = 0;
        let mut cur = g.clone();
        while let Some(h) = f(&cur) {
            n += 1;
            cur = h;
        }
        n
    };
    let p = walk(&|x| m.apply_f(x, i).result);
    let q = walk(&|x| m.apply_e(x, i).result);
    (p, q)
}

fn crystal_laws(cfg: &Config) -> Check {
    let models = cfg.models();
    let n = over_pairs(&models, |_| cfg.bound(8), |_, m, mu| {
        let d = m.d();
        let g0 = m.gamma_mu(mu).map_err(|e| e.to_string())?;
        let ls = m.ls_galleries(mu).map_err(|e| e.to_string())?;
        for g in m.positively_folded(&g0.gt) {
            let dual = m.dual(&g);
            for i in 0..d.simple.len() {
                if let Some(h) = m.apply_e(&g, i).result {
                    ensure(m.apply_f(&h, i).result.as_ref() == Some(&g), || format!("f∘e ≠ id at {}", m.code(&g)))?;
                }
                if let Some(h) = m.apply_f(&g, i).result {
                    ensure(m.apply_e(&h, i).result.as_ref() == Some(&g), || format!("e∘f ≠ id at {}", m.code(&g)))?;
                }
                let lhs = m.apply_e(&g, i).result;
                let rhs = m.apply_f(&dual, i).result.map(|h| m.dual(&h));
                ensure(lhs == rhs, || format!("e ≠ dual∘f∘dual at {}", m.code(&g)))?;
                if ls.contains(&g) {
                    let (p, q) = string_lengths(m, &g, i);
                    let want = d.pair_ech(d.simple[i], &m.target(&g));
                    ensure(p - q == want, || format!("p-q = {} ≠ {want} at {}", p - q, m.code(&g)))?;
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{n} (preset, μ) pairs, all of Γ⁺(γ_μ)"))
}

fn ls_characterization(cfg: &Config) -> Check {
    let models = cfg.models();
    let n = over_pairs(&models, |_| cfg.bound(8), |_, m, mu| {
        let g0 = m.gamma_mu(mu).map_err(|e| e.to_string())?;
        let ls = m.ls_galleries(mu).map_err(|e| e.to_string())?;
        let by_dim: BTreeSet<Gallery> = m
            .positively_folded(&g0.gt)
            .into_iter()
            .filter(|g| m.load_bearing(g) as i64 == m.rho(&add(mu, &m.target(g))))
            .collect();
        ensure(ls == by_dim, || format!("f-closure has {} galleries, dimension test {}", ls.len(), by_dim.len()))?;
        for g in &ls {
            ensure(m.is_ls(&m.dual(g)), || format!("dual of {} is not LS", m.code(g)))?;
        }
        Ok(())
    })?;
    Ok(format!("{n} (preset, μ) pairs"))
}

fn character_consistency(cfg: &Config) -> Check {
    let models = cfg.models();
    let bound = |name: &str| if matches!(name, "a2" | "b2") { cfg.bound(6) } else { cfg.bound(8) };
    let n = over_pairs(&models, bound, |_, m, mu| {
        let d = m.d();
        let c = Characters::new(m);
        let ch = c.char_from_ls(mu).map_err(|e| e.to_string())?;
        let mut sum = FormalCharacter::default();
        for (lam, k) in c.highest_weight_counts(mu).map_err(|e| e.to_string())? {
            sum.add_scaled(&c.char_from_ls(&lam).map_err(|e| e.to_string())?, k);
        }
        ensure(sum == c.char_of_all(mu).map_err(|e| e.to_string())?, || "Char Γ(γ_μ) ≠ Σ Char V(e(γ))".into())?;
        if d.absolute.is_split() {
            ensure(ch == weyl_oracle(d, mu), || "LS character ≠ Freudenthal".into())?;
        }
        ensure(ch.is_weyl_invariant(d), || "character is not W₀-invariant".into())?;
        for seed in 1..=3 {
            let g = m.gamma_mu_seeded(mu, seed).map_err(|e| e.to_string())?;
            let ts: Vec<Vec<i64>> = m.f_closure(&g).iter().map(|h| m.target(h)).collect();
            ensure(FormalCharacter::from_weights(&ts) == ch, || format!("seed {seed} changes the character"))?;
        }
        Ok(())
    })?;
    Ok(format!("{n} (preset, μ) pairs; Freudenthal on split presets; seeds 1..3"))
}

fn deodhar(cfg: &Config) -> Check {
    let models = cfg.models();
    let results: Vec<std::result::Result<usize, String>> = models
        .par_iter()
        .map(|(name, m)| {
            let a = &m.aff;
            let r = RPolynomials::new(a);
            let all = a.all_nodes_mask();
            let mut pairs = 0;
            let mut seen = HashSet::new();
            for k in 0..a.n_nodes() {
                let t = all & !(1 << k);
                if !a.is_finite_type(t) {
                    continue;
                }
                let group = a.parabolic(t).map_err(|e| e.to_string())?;
                for w in group.iter().filter(|w| a.length(w) <= 7) {
                    if !seen.insert(w.clone()) {
                        continue;
                    }
                    let (word, _) = a.reduced_word(w);
                    for v in group.iter() {
                        pairs += 1;
                        let lhs = cells_points(&deodhar_cells(a, &word, v));
                        let rhs = r.get(v, w);
                        ensure(lhs == rhs, || format!("{name}: v={} w={}: {lhs} ≠ {rhs}", a.fmt_elt(v), a.fmt_elt(w)))?;
                    }
                }
            }
            Ok(pairs)
        })
        .collect();
    let n: usize = results.into_iter().collect::<std::result::Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{n} pairs (v, w), ℓ(w) ≤ 7"))
}

fn point_count(cfg: &Config) -> Check {
    let models = cfg.models();
    let n = over_pairs(&models, |_| cfg.bound(6), |_, m, mu| {
        let cells = m.all_cell_shapes(mu).map_err(|e| e.to_string())?;
        let total = cells.values().fold(LaurentPoly::zero(), |acc, c| &acc + &cells_points(c));
        let want = grassmannian_points(&m.aff, mu);
        ensure(total == want, || format!("cells give {total}, Schubert cell has {want}"))
    })?;
    Ok(format!("{n} (preset, μ) pairs"))
}

fn mv_multiplicity(cfg: &Config) -> Check {
    let models = cfg.models();
    let n = over_pairs(&models, |_| cfg.bound(6), |_, m, mu| {
        let cells = m.all_cell_shapes(mu).map_err(|e| e.to_string())?;
        let ch = Characters::new(m).char_from_ls(mu).map_err(|e| e.to_string())?;
        let nus: BTreeSet<&Vec<i64>> = cells.keys().chain(ch.coeffs.keys()).collect();
        for nu in nus {
            let top = m.rho(&add(mu, nu)) as u32;
            let c = cells.get(nu).cloned().unwrap_or_default();
            ensure(c.keys().all(|s| s.dim() <= top), || format!("cell above <ρ, μ+ν> at ν={}", m.d().fmt_weight(nu)))?;
            let got: u64 = c.iter().filter(|(s, _)| s.dim() == top).map(|(_, k)| k).sum();
            ensure(got as i64 == ch.mult(nu), || format!("ν={}: {got} top cells, multiplicity {}", m.d().fmt_weight(nu), ch.mult(nu)))?;
        }
        Ok(())
    })?;
    Ok(format!("{n} (preset, μ) pairs"))
}

fn antidominant(d: &RelativeRootDatum, mu: &[i64]) -> Vec<i64> {
    neg(&d.dominant_rep(&neg(mu)).0)
}

fn hecke_layer(cfg: &Config) -> Check {
    let models: Vec<(String, Model)> = cfg.models().into_iter().filter(|(n, _)| !n.starts_with("d4")).collect();
    let mut notes = Vec::new();
    for (name, m) in &models {
        let h = Hecke::new(m);
        let a = &m.aff;
        for k in 0..a.n_nodes() {
            let s = h.t(&a.gens[k]);
            let mut want = h.t(&a.identity()).scale(&LaurentPoly::q_pow(1));
            want.add(&s, &(LaurentPoly::q_pow(1) - LaurentPoly::one()));
            ensure(h.mul(&s, &s) == want, || format!("{name}: T_s² ≠ q + (q-1)T_s for s{k}"))?;
        }
    }
    notes.push("T_s² = q + (q-1)T_s".to_string());

    let pairs = over_pairs(&models, |_| cfg.bound(8), |_, m, mu| {
        let h = Hecke::new(m);
        let d = m.d();
        let sat = h.sat_transform(mu).map_err(|e| e.to_string())?;
        for la in dominant_weights(d, cfg.bound(8) - d.pair_two_rho(mu)) {
            let lhs = h.sat_of_combination(&h.spherical_mul(mu, &la).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let rhs = sat.mul(&h.sat_transform(&la).map_err(|e| e.to_string())?);
            ensure(lhs == rhs, || format!("Sat(μ⋆λ) ≠ Sat(μ)Sat(λ) at λ={}", d.fmt_weight(&la)))?;
        }
        let w0mu = antidominant(d, mu);
        let coords = h.vinberg_coordinates(&sat).map_err(|e| e.to_string())?;
        ensure(coords.get(&w0mu) == Some(&LaurentPoly::one()), || "leading Vinberg coefficient ≠ 1".into())?;
        for (l, c) in &coords {
            let top = d.dominant_rep(l).0;
            ensure(c.is_polynomial() && d.dominance_leq(&top, mu), || format!("Vinberg coordinate at {}", d.fmt_weight(l)))?;
            ensure(*l == w0mu || c.min_exponent() > Some(0), || "Vinberg matrix is not unitriangular".into())?;
        }
        let at1 = sat.specialize(1).map_err(|e| e.to_string())?;
        let ch = h.chars.char_from_ls(mu).map_err(|e| e.to_string())?;
        let ch_q: BTreeMap<Vec<i64>, Q> = ch.coeffs.iter().map(|(k, v)| (k.clone(), Q::from_integer(*v))).collect();
        ensure(at1 == ch_q, || "Sat at q = 1 is not the character".into())?;
        let at0 = sat.specialize(0).map_err(|e| e.to_string())?;
        ensure(at0 == BTreeMap::from([(w0mu, Q::from_integer(1))]), || "Sat at q = 0 is not e^{w₀μ}".into())?;
        Ok(())
    })?;
    notes.push(format!("Sat ring map, Vinberg triangularity, q ↦ 1 and q ↦ 0 on {pairs} (preset, μ)"));

    let central = over_pairs(&models, |_| cfg.bound(4), |_, m, mu| {
        let h = Hecke::new(m);
        let z: HeckeElement = h.phi(mu).map_err(|e| e.to_string())?;
        ensure(z.is_integral(), || "φ([V(μ)]) has negative q-powers".into())?;
        ensure(h.center_check(&z), || "φ([V(μ)]) is not central".into())?;
        ensure(z.coeff(&m.aff.translation(mu)) == LaurentPoly::one(), || "coefficient of T_{t_μ} ≠ 1".into())
    })?;
    notes.push(format!("φ([V(μ)]) central and integral on {central} (preset, μ) with <2ρ,μ> ≤ 4"));
    Ok(notes.join("; "))
}

fn pgl2_closed_form() -> Check {
    let m = Model::from_preset("pgl2").map_err(|e| e.to_string())?;
    let h = Hecke::new(&m);
    let omega = vec![1];
    let sat = h.sat_transform(&omega).map_err(|e| e.to_string())?;
    let mut want = GroupAlgebraElement::monomial(vec![1], LaurentPoly::q_pow(1));
    want.add_term(vec![-1], &LaurentPoly::one());
    ensure(sat == want, || format!("Sat_q([V(ω)]) = {:?}", sat.coeffs))?;
    let b = h.vinberg_basis(&neg(&omega), None).map_err(|e| e.to_string())?;
    ensure(sat == b, || "Sat_q([V(ω)]) ≠ vinberg_basis(-ω)".into())?;
    Ok("Sat_q([V(ω)]) = q·e^ω + e^{-ω} = vinberg_basis(-ω)".into())
}
