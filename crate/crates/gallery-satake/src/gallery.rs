//! Combinatorial galleries of a fixed gallery type: the minimal gallery
//! `γ_μ`, enumeration, folds, positivity, dimension and duals.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coxeter::{q_int, Affine, Elt, Facet, Hyperplane};
use crate::linalg;
use crate::rootdata::RelativeRootDatum;
use crate::{Error, Result, Q};

/// One slot `W'_j / W_j` of a gallery type.
#[derive(Debug)]
pub struct Slot {
    pub big: u32,
    pub small: u32,
    pub reps: Vec<Elt>,
    index: HashMap<Elt, u32>,
    /// Index of `τ_j`, the representative of the longest class.
    pub tau: u32,
}

impl Slot {
    pub fn lookup(&self, x: &Elt) -> Option<u32> {
        self.index.get(x).copied()
    }
}

type TypeKey = (Vec<u32>, Vec<u32>, Vec<Q>);

/// `t'_0 ⊃ t_0 ⊂ t'_1 ⊃ … ⊂ t'_{r+1}` together with the end vertex.
#[derive(Debug)]
pub struct GalleryType {
    /// `small[j] = t'_j` for `j = 0..=r+1`.
    pub small: Vec<u32>,
    /// `large[j] = t_j` for `j = 0..=r`.
    pub large: Vec<u32>,
    pub slots: Vec<Slot>,
    /// The point of `F_{t'_{r+1}}` that is the target of every gallery.
    pub end_point: Vec<Q>,
    /// Target of the unfolded gallery `[1, τ_1, …, τ_r]`.
    pub mu: Vec<i64>,
}

impl GalleryType {
    fn key(&self) -> TypeKey {
        (self.small.clone(), self.large.clone(), self.end_point.clone())
    }

    /// Number of large facets, `r + 1`.
    pub fn len(&self) -> usize {
        self.large.len()
    }

    pub fn is_empty(&self) -> bool {
        self.large.is_empty()
    }

    pub fn count(&self) -> u128 {
        self.slots.iter().map(|s| s.reps.len() as u128).product()
    }
}

#[derive(Clone)]
pub struct Gallery {
    pub gt: Arc<GalleryType>,
    pub idx: Vec<u32>,
}

impl std::fmt::Debug for Gallery {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gallery{:?}", self.idx)
    }
}

impl PartialEq for Gallery {
    fn eq(&self, other: &Self) -> bool {
        self.idx == other.idx && (Arc::ptr_eq(&self.gt, &other.gt) || self.gt.key() == other.gt.key())
    }
}

impl Eq for Gallery {}

impl Hash for Gallery {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.idx.hash(h);
    }
}

impl PartialOrd for Gallery {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gallery {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.idx.cmp(&other.idx)
    }
}

/// Facets of a gallery: `small[j] = Γ'_j`, `large[j] = Γ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facets {
    pub small: Vec<Facet>,
    pub large: Vec<Facet>,
}

pub struct Model {
    pub aff: Affine,
    types: Mutex<HashMap<TypeKey, Arc<GalleryType>>>,
}

impl Model {
    pub fn new(d: RelativeRootDatum) -> Result<Self> {
        Ok(Model { aff: Affine::new(d)?, types: Mutex::new(HashMap::new()) })
    }

    pub fn from_preset(name: &str) -> Result<Self> {
        Self::new(crate::presets::builtin(name)?)
    }

    pub fn d(&self) -> &RelativeRootDatum {
        &self.aff.d
    }

    pub fn gallery_type(&self, small: Vec<u32>, large: Vec<u32>, end_point: Vec<Q>) -> Result<Arc<GalleryType>> {
        let key = (small.clone(), large.clone(), end_point.clone());
        if let Some(gt) = self.types.lock().unwrap().get(&key) {
            return Ok(gt.clone());
        }
        let a = &self.aff;
        let mut slots = Vec::with_capacity(large.len());
        for (j, &t) in large.iter().enumerate() {
            let big = small[j];
            let mut reps = a.min_coset_reps(big, t)?;
            reps.sort_by(|x, y| a.length(x).cmp(&a.length(y)).then_with(|| x.cmp(y)));
            let index = reps.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect();
            let tau = (reps.len() - 1) as u32;
            slots.push(Slot { big, small: t, reps, index, tau });
        }
        let mut gt = GalleryType { small, large, slots, end_point, mu: vec![] };
        let unfolded: Vec<u32> = (0..gt.slots.len())
            .map(|j| if j == 0 { 0 } else { gt.slots[j].tau })
            .collect();
        gt.mu = target_of(a, &gt, &unfolded);
        let gt = Arc::new(gt);
        self.types.lock().unwrap().insert(key, gt.clone());
        Ok(gt)
    }

    /// The minimal gallery from `f_0` to `f_μ` walking a perturbed straight
    /// segment inside the span of the fundamental coweights supporting `μ`.
    pub fn gamma_mu_seeded(&self, mu: &[i64], seed: u64) -> Result<Gallery> {
        let a = &self.aff;
        let d = self.d();
        assert!(d.is_dominant(mu), "γ_μ needs a dominant μ");
        let m = d.rank;
        let origin = a.origin_type();
        let mu_q = q_int(mu);
        let end = a.fold_to_alcove(&mu_q).1;
        if mu.iter().all(|&x| x == 0) {
            let gt = self.gallery_type(vec![origin], vec![], end)?;
            return Ok(Gallery { gt, idx: vec![] });
        }
        let supp: Vec<usize> = (0..m).filter(|&i| !d.pair(d.simple[i], &mu_q).is_zero()).collect();
        let active: Vec<usize> = (0..d.n_pos).filter(|&r| d.pair(r, &mu_q) > Q::zero()).collect();
        let eps = active
            .iter()
            .map(|&r| d.roots[r].jump / (Q::from_integer(4) * d.pair(r, &mu_q)))
            .min()
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = |v: &[Q], k: Q| -> Vec<Q> { v.iter().map(|x| x * k).collect() };
        let add = |u: &[Q], v: &[Q]| -> Vec<Q> { u.iter().zip(v).map(|(x, y)| x + y).collect() };
        'attempt: for _ in 0..256 {
            let mut dirs = Vec::new();
            for _ in 0..2 {
                let mut v = vec![Q::zero(); m];
                for &i in &supp {
                    let c = Q::from_integer(rng.gen_range(-97..=97));
                    v = add(&v, &scale(&a.coweights[i], c));
                }
                dirs.push(v);
            }
            let mut bound = eps;
            for &r in &active {
                for v in &dirs {
                    bound = bound.min(eps * d.pair(r, &mu_q) / (Q::from_integer(2) * d.pair(r, v).abs() + Q::from_integer(1)));
                }
            }
            // A power of two keeps denominators small.
            let mut eta = Q::from_integer(1);
            while eta > bound {
                eta /= Q::from_integer(2);
            }
            let start_ref = scale(&mu_q, eps);
            let end_ref = scale(&mu_q, Q::from_integer(1) - eps);
            let p = add(&start_ref, &scale(&dirs[0], eta));
            let q = add(&end_ref, &scale(&dirs[1], eta));
            if a.facet_of_point(&p) != a.facet_of_point(&start_ref) || a.facet_of_point(&q) != a.facet_of_point(&end_ref) {
                continue;
            }
            let dir: Vec<Q> = q.iter().zip(&p).map(|(x, y)| x - y).collect();
            let mut cuts: Vec<Q> = Vec::new();
            for r in 0..d.n_pos {
                let dv = d.pair(r, &dir);
                if dv.is_zero() {
                    continue;
                }
                let u = d.roots[r].jump;
                let (lo, hi) = {
                    let x = d.pair(r, &p);
                    let y = d.pair(r, &q);
                    (x.min(y), x.max(y))
                };
                let mut k = (lo / u).floor().to_integer() + 1;
                while Q::from_integer(k) * u < hi {
                    let lvl = Q::from_integer(k) * u;
                    if lvl > lo {
                        cuts.push((lvl - d.pair(r, &p)) / dv);
                    }
                    k += 1;
                }
            }
            cuts.sort();
            cuts.dedup();
            let point_at = |s: Q| add(&p, &scale(&dir, s));
            let dim = supp.len();
            let mut small = vec![origin];
            let mut large_facets = Vec::new();
            let mut bounds = vec![Q::zero()];
            bounds.extend(cuts.iter().copied());
            bounds.push(Q::from_integer(1));
            for w in bounds.windows(2) {
                let f = a.facet_of_point(&point_at((w[0] + w[1]) / Q::from_integer(2)));
                if a.facet_dim(f.typ) != dim {
                    continue 'attempt;
                }
                large_facets.push(f);
            }
            for &s in &cuts {
                let f = a.facet_of_point(&point_at(s));
                if a.facet_dim(f.typ) + 1 != dim {
                    continue 'attempt;
                }
                small.push(f.typ);
            }
            small.push(a.type_of_closure_point(&end));
            let large: Vec<u32> = large_facets.iter().map(|f| f.typ).collect();
            let gt = self.gallery_type(small, large, end.clone())?;
            let reps: Vec<Elt> = large_facets.into_iter().map(|f| f.rep).collect();
            let Some(g) = self.encode(&gt, &reps) else { continue };
            debug_assert_eq!(self.target(&g), mu);
            return Ok(g);
        }
        Err(Error::Preset(format!("no generic segment found for μ = {}", d.fmt_weight(mu))))
    }

    pub fn gamma_mu(&self, mu: &[i64]) -> Result<Gallery> {
        self.gamma_mu_seeded(mu, 0)
    }

    /// Re-expresses large facets `x_i F_{t_i}` as a coset tuple.
    pub fn encode(&self, gt: &Arc<GalleryType>, xs: &[Elt]) -> Option<Gallery> {
        let a = &self.aff;
        let mut prefix = a.identity();
        let mut idx = Vec::with_capacity(xs.len());
        for (slot, x) in gt.slots.iter().zip(xs) {
            let y = a.mul(&a.inv(&prefix), x);
            let delta = a.min_rep(&y, slot.small);
            let i = slot.lookup(&delta)?;
            idx.push(i);
            prefix = a.mul(&prefix, &delta);
        }
        Some(Gallery { gt: gt.clone(), idx })
    }

    /// `P_{-1} = e, P_0, …, P_r` with `P_j = δ_0 ⋯ δ_j`.
    pub fn prefixes(&self, g: &Gallery) -> Vec<Elt> {
        let a = &self.aff;
        let mut out = vec![a.identity()];
        for (slot, &i) in g.gt.slots.iter().zip(&g.idx) {
            let next = a.mul(out.last().unwrap(), &slot.reps[i as usize]);
            out.push(next);
        }
        out
    }

    pub fn delta<'g>(&self, g: &'g Gallery, j: usize) -> &'g Elt {
        &g.gt.slots[j].reps[g.idx[j] as usize]
    }

    pub fn facets_of(&self, g: &Gallery) -> Facets {
        let a = &self.aff;
        let p = self.prefixes(g);
        let small = g.gt.small.iter().enumerate().map(|(j, &t)| a.facet(&p[j], t)).collect();
        let large = g.gt.large.iter().enumerate().map(|(j, &t)| a.facet(&p[j + 1], t)).collect();
        Facets { small, large }
    }

    /// Inverse of `facets_of` given the large facets.
    pub fn from_facets(&self, gt: &Arc<GalleryType>, large: &[Facet]) -> Option<Gallery> {
        let reps: Vec<Elt> = large.iter().map(|f| f.rep.clone()).collect();
        self.encode(gt, &reps)
    }

    pub fn target(&self, g: &Gallery) -> Vec<i64> {
        target_of(&self.aff, &g.gt, &g.idx)
    }

    pub fn all(&self, gt: &Arc<GalleryType>) -> Vec<Gallery> {
        let mut out = Vec::new();
        self.for_each_with_prefix(gt, &[], &mut |g| out.push(g));
        out
    }

    /// Coset-tuple prefixes of length `depth`, splitting the enumeration
    /// into disjoint blocks.
    pub fn blocks(&self, gt: &GalleryType, depth: usize) -> Vec<Vec<u32>> {
        let depth = depth.min(gt.slots.len());
        let mut out = vec![vec![]];
        for slot in &gt.slots[..depth] {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..slot.reps.len() as u32).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Visits every gallery whose coset tuple starts with `prefix`.
    pub fn for_each_with_prefix(&self, gt: &Arc<GalleryType>, prefix: &[u32], f: &mut dyn FnMut(Gallery)) {
        let mut idx = prefix.to_vec();
        let n = gt.slots.len();
        fn rec(n: usize, gt: &Arc<GalleryType>, idx: &mut Vec<u32>, f: &mut dyn FnMut(Gallery)) {
            if idx.len() == n {
                f(Gallery { gt: gt.clone(), idx: idx.clone() });
                return;
            }
            for i in 0..gt.slots[idx.len()].reps.len() as u32 {
                idx.push(i);
                rec(n, gt, idx, f);
                idx.pop();
            }
        }
        rec(n, gt, &mut idx, f);
    }

    /// The walls of the folds at slot `j`.
    pub fn fold_data(&self, g: &Gallery, j: usize) -> Vec<Hyperplane> {
        let a = &self.aff;
        let gt = &g.gt;
        let slot = &gt.slots[j];
        let delta = &slot.reps[g.idx[j] as usize];
        let tau = &slot.reps[slot.tau as usize];
        if j == 0 || g.idx[j] == slot.tau {
            return vec![];
        }
        // Shortest element carrying τ_j F_{t_j} to δ_j F_{t_j}.
        let tau_inv = a.inv(tau);
        let rho = a
            .parabolic(slot.small)
            .expect("finite facet stabilizer")
            .iter()
            .map(|w| a.mul(&a.mul(delta, w), &tau_inv))
            .min_by(|x, y| a.length(x).cmp(&a.length(y)).then_with(|| x.cmp(y)))
            .unwrap();
        let (word, _) = a.reduced_word(&rho);
        let p = &self.prefixes(g)[j];
        let mut u = p.clone();
        let mut out = Vec::with_capacity(word.len());
        for &k in &word {
            let refl = a.mul(&a.mul(&u, &a.gens[k]), &a.inv(&u));
            out.push(a.reflection_hyperplane(&refl).expect("conjugate of a simple reflection"));
            u = a.mul(&u, &a.gens[k]);
        }
        out
    }

    pub fn is_folded(&self, g: &Gallery, j: usize) -> bool {
        j > 0 && g.idx[j] != g.gt.slots[j].tau
    }

    pub fn is_positively_folded(&self, g: &Gallery) -> bool {
        let p = self.prefixes(g);
        (1..g.idx.len())
            .filter(|&j| self.is_folded(g, j))
            .all(|j| self.folds_upward(g, &p, j))
    }

    /// Whether `Ω_j` reaches `Σ_j` by reflections in walls through `Σ'_j`,
    /// each carrying the current facet from the side of `C_{-∞}` to the other.
    fn folds_upward(&self, g: &Gallery, p: &[Elt], j: usize) -> bool {
        let a = &self.aff;
        let d = self.d();
        let slot = &g.gt.slots[j];
        let fb = a.type_barycenter(g.gt.large[j]);
        let walls: Vec<(usize, Q, Elt)> = (0..d.n_pos)
            .filter_map(|r| {
                let m = a.contained_level(&p[j], g.gt.small[j], r)?;
                Some((r, m, a.reflection(r, m)))
            })
            .collect();
        let start = a.act(&a.mul(&p[j], &slot.reps[slot.tau as usize]), &fb);
        let goal = a.act(&p[j + 1], &fb);
        let mut seen = HashSet::from([start.clone()]);
        let mut work = vec![start];
        while let Some(x) = work.pop() {
            if x == goal {
                return true;
            }
            for (r, m, s) in &walls {
                if d.pair(*r, &x) < *m {
                    let y = a.act(s, &x);
                    if seen.insert(y.clone()) {
                        work.push(y);
                    }
                }
            }
        }
        false
    }

    pub fn fold_count(&self, g: &Gallery) -> usize {
        (1..g.idx.len()).filter(|&j| self.is_folded(g, j)).count()
    }

    /// Number of load-bearing pairs `(H, Γ_j)`, for any gallery.
    pub fn load_bearing(&self, g: &Gallery) -> u32 {
        let a = &self.aff;
        let d = self.d();
        let p = self.prefixes(g);
        let mut n = 0;
        for j in 0..g.idx.len() {
            let bary = a.act(&p[j + 1], &a.type_barycenter(g.gt.large[j]));
            for r in 0..d.n_pos {
                if let Some(m) = a.contained_level(&p[j], g.gt.small[j], r) {
                    if d.pair(r, &bary) > m {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    pub fn dimension(&self, g: &Gallery) -> Result<u32> {
        if !self.is_positively_folded(g) {
            return Err(Error::NotPositivelyFolded);
        }
        Ok(self.load_bearing(g))
    }

    /// Reverses the facets of `γ - e(γ)`.
    pub fn dual(&self, g: &Gallery) -> Gallery {
        let a = &self.aff;
        let nu = self.target(g);
        let shift = a.translation(&nu.iter().map(|x| -x).collect::<Vec<_>>());
        let p = self.prefixes(g);
        let moved = |x: &Elt, t: u32| a.facet_of_point(&a.act(&a.mul(&shift, x), &a.type_barycenter(t)));
        let small: Vec<u32> = (0..g.gt.small.len())
            .rev()
            .map(|j| moved(&p[j], g.gt.small[j]).typ)
            .collect();
        let large: Vec<Facet> = (0..g.gt.large.len())
            .rev()
            .map(|j| moved(&p[j + 1], g.gt.large[j]))
            .collect();
        let end = a.fold_to_alcove(&q_int(&nu.iter().map(|x| -x).collect::<Vec<_>>())).1;
        let gt = self
            .gallery_type(small, large.iter().map(|f| f.typ).collect(), end)
            .expect("dual type has finite slots");
        self.from_facets(&gt, &large).expect("dual gallery has the dual type")
    }

    /// Slot words joined by `|`, e.g. `e|s1|s0`.
    pub fn code(&self, g: &Gallery) -> String {
        (0..g.idx.len())
            .map(|j| self.aff.fmt_elt(self.delta(g, j)))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn parse_code(&self, gt: &Arc<GalleryType>, s: &str) -> Result<Gallery> {
        let parts: Vec<&str> = if s.trim().is_empty() { vec![] } else { s.split('|').collect() };
        if parts.len() != gt.slots.len() {
            return Err(Error::Parse(format!("gallery code needs {} slots, got {}", gt.slots.len(), parts.len())));
        }
        let idx = parts
            .iter()
            .zip(&gt.slots)
            .enumerate()
            .map(|(j, (p, slot))| {
                let x = self.aff.parse_elt(p)?;
                slot.lookup(&x)
                    .ok_or_else(|| Error::Parse(format!("slot {j}: `{p}` is not a minimal coset representative")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Gallery { gt: gt.clone(), idx })
    }

    /// `<ρ, x>` for the statistics that the theory guarantees integral.
    pub fn rho(&self, x: &[i64]) -> i64 {
        self.d()
            .pair_rho(x)
            .unwrap_or_else(|| panic!("<2ρ, {}> is odd", self.d().fmt_weight(x)))
    }

    pub fn positively_folded(&self, gt: &Arc<GalleryType>) -> Vec<Gallery> {
        use rayon::prelude::*;
        let blocks = self.blocks(gt, 2);
        let mut out: Vec<Gallery> = blocks
            .par_iter()
            .flat_map_iter(|b| {
                let mut v = Vec::new();
                self.for_each_with_prefix(gt, b, &mut |g| {
                    if self.is_positively_folded(&g) {
                        v.push(g);
                    }
                });
                v
            })
            .collect();
        out.sort();
        out
    }
}

fn target_of(a: &Affine, gt: &GalleryType, idx: &[u32]) -> Vec<i64> {
    let mut prefix = a.identity();
    for (slot, &i) in gt.slots.iter().zip(idx) {
        prefix = a.mul(&prefix, &slot.reps[i as usize]);
    }
    linalg::as_integer_vec(&a.act(&prefix, &gt.end_point)).expect("targets are lattice points")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn model(name: &str) -> Model {
        Model::from_preset(name).unwrap()
    }

    fn small_dominant(m: &Model, bound: i64) -> Vec<Vec<i64>> {
        let d = m.d();
        let mut pts = vec![vec![]];
        for _ in 0..d.rank {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<i64>| (-4..=4).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        let mut out: Vec<Vec<i64>> = pts
            .into_iter()
            .filter(|p| d.is_dominant(p) && d.pair_two_rho(p) <= bound)
            .collect();
        out.sort();
        out
    }

    #[test]
    fn a1_adjoint_galleries() {
        let m = model("a1");
        let g = m.gamma_mu(&[1]).unwrap();
        assert_eq!(g.gt.len(), 2);
        let all = m.all(&g.gt);
        assert_eq!(all.len(), 4);
        let mut targets: Vec<i64> = all.iter().map(|g| m.target(g)[0]).collect();
        targets.sort();
        assert_eq!(targets, vec![-1, 0, 0, 1]);
        let pos = m.positively_folded(&g.gt);
        assert_eq!(pos.len(), 3);
        let folded_zero: Vec<&Gallery> = all.iter().filter(|g| m.target(g) == vec![0]).collect();
        for f in folded_zero {
            let walls = m.fold_data(f, 1);
            assert_eq!(walls.len(), 1);
            let fac = m.facets_of(f);
            let (lo, hi) = m.aff.facet_range(&fac.small[1], walls[0].root);
            assert_eq!((lo, hi), (walls[0].level, walls[0].level));
        }
    }

    #[test]
    fn gamma_mu_is_unfolded_and_minimal() {
        for name in crate::presets::BUILTIN {
            let m = model(name);
            for mu in small_dominant(&m, 8) {
                let g = m.gamma_mu(&mu).unwrap();
                assert_eq!(m.target(&g), mu);
                assert_eq!(g.gt.mu, mu);
                for j in 0..g.idx.len() {
                    let expect = if j == 0 { 0 } else { g.gt.slots[j].tau };
                    assert_eq!(g.idx[j], expect, "{name} {mu:?} slot {j}");
                }
                assert!(m.is_positively_folded(&g));
                assert_eq!(m.dimension(&g).unwrap() as i64, m.d().pair_two_rho(&mu), "{name} {mu:?}");
            }
        }
    }

    #[test]
    fn su3_gallery_length() {
        let m = model("su3");
        for k in 1..=4 {
            let g = m.gamma_mu(&[k]).unwrap();
            // μ = k/2, so 4μ = 2k alcoves.
            assert_eq!(g.gt.len(), 2 * k as usize);
            assert!(g.gt.large.iter().all(|&t| t == 0));
        }
    }

    #[test]
    fn zero_gallery() {
        let m = model("a2");
        let g = m.gamma_mu(&[0, 0]).unwrap();
        assert!(g.idx.is_empty());
        assert_eq!(m.all(&g.gt).len(), 1);
        assert_eq!(m.dimension(&g).unwrap(), 0);
    }

    #[test]
    fn fold_lemma_holds() {
        for name in ["a2", "b2", "su3", "a3t"] {
            let m = model(name);
            let a = &m.aff;
            for mu in small_dominant(&m, 6) {
                let g0 = m.gamma_mu(&mu).unwrap();
                for g in m.all(&g0.gt) {
                    let p = m.prefixes(&g);
                    for j in 1..g.idx.len() {
                        let walls = m.fold_data(&g, j);
                        let slot = &g.gt.slots[j];
                        // Ω_j = P_{j-1} τ_j F_{t_j} is carried to Σ_j.
                        let omega = a.mul(&p[j], &slot.reps[slot.tau as usize]);
                        let image = walls
                            .iter()
                            .fold(omega, |x, h| a.mul(&a.reflection(h.root, h.level), &x));
                        assert_eq!(a.facet(&image, slot.small), a.facet(&p[j + 1], slot.small));
                        let sp = a.facet(&p[j], g.gt.small[j]);
                        for h in &walls {
                            assert_eq!(a.facet_range(&sp, h.root), (h.level, h.level));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_properties() {
        for name in ["a1", "a2", "su3", "pgl2", "b2"] {
            let m = model(name);
            for mu in small_dominant(&m, 6) {
                let g0 = m.gamma_mu(&mu).unwrap();
                for g in m.all(&g0.gt) {
                    let dg = m.dual(&g);
                    let nu = m.target(&g);
                    assert_eq!(m.target(&dg), nu.iter().map(|x| -x).collect::<Vec<_>>());
                    assert_eq!(m.dual(&dg), g);
                    assert_eq!(m.is_positively_folded(&g), m.is_positively_folded(&dg), "{name} {}", m.code(&g));
                }
            }
        }
    }

    #[test]
    fn targets_are_symmetric_and_unique_at_mu() {
        for name in ["a2", "b2", "g2", "su3", "a3t"] {
            let m = model(name);
            let d = m.d();
            for mu in small_dominant(&m, 6) {
                let g0 = m.gamma_mu(&mu).unwrap();
                let mut counts: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
                for g in m.all(&g0.gt) {
                    *counts.entry(m.target(&g)).or_default() += 1;
                }
                assert_eq!(counts[&mu], 1);
                for (nu, c) in &counts {
                    for w in 0..d.weyl.order() {
                        assert_eq!(counts.get(&d.weyl.act(w as u16, nu)), Some(c));
                    }
                }
            }
        }
    }

    #[test]
    fn code_round_trip() {
        let m = model("a2");
        let g0 = m.gamma_mu(&[1, 1]).unwrap();
        for g in m.all(&g0.gt) {
            assert_eq!(m.parse_code(&g0.gt, &m.code(&g)).unwrap(), g);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn facets_round_trip(preset in 0usize..crate::presets::BUILTIN.len(), pick in 0usize..1000, mu_pick in 0usize..100) {
            let m = model(crate::presets::BUILTIN[preset]);
            let mus = small_dominant(&m, 6);
            let mu = &mus[mu_pick % mus.len()];
            let g0 = m.gamma_mu(mu).unwrap();
            let all = m.all(&g0.gt);
            let g = &all[pick % all.len()];
            let f = m.facets_of(g);
            prop_assert_eq!(&m.from_facets(&g0.gt, &f.large).unwrap(), g);
            for j in 0..g.idx.len() {
                prop_assert_eq!(m.fold_data(g, j).is_empty(), !m.is_folded(g, j));
            }
        }

        #[test]
        fn seed_does_not_change_the_target(seed in 0u64..1000) {
            let m = model("a2");
            let g = m.gamma_mu_seeded(&[2, 1], seed).unwrap();
            prop_assert_eq!(m.target(&g), vec![2, 1]);
            prop_assert_eq!(m.dimension(&g).unwrap() as i64, m.d().pair_two_rho(&[2, 1]));
        }
    }
}
