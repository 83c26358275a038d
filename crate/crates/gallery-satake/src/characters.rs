//! Formal characters of `Ĝ^I` from LS galleries, and independent checks.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Mutex;

use num_traits::Zero;
use rayon::prelude::*;

use crate::gallery::Model;
use crate::rootdata::RelativeRootDatum;
use crate::{Error, Result, Q};

/// A finitely supported map `X_*(T)_I → Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalCharacter {
    pub coeffs: BTreeMap<Vec<i64>, i64>,
}

impl FormalCharacter {
    pub fn delta(w: Vec<i64>) -> Self {
        FormalCharacter { coeffs: BTreeMap::from([(w, 1)]) }
    }

    pub fn mult(&self, w: &[i64]) -> i64 {
        self.coeffs.get(w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn add_term(&mut self, w: Vec<i64>, c: i64) {
        let e = self.coeffs.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    pub fn add_scaled(&mut self, other: &FormalCharacter, c: i64) {
        for (w, v) in &other.coeffs {
            self.add_term(w.clone(), c * v);
        }
    }

    /// Pointwise product in the group ring.
    pub fn mul(&self, other: &FormalCharacter) -> FormalCharacter {
        let mut out = FormalCharacter::default();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let w = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_term(w, x * y);
            }
        }
        out
    }

    pub fn is_weyl_invariant(&self, d: &RelativeRootDatum) -> bool {
        self.coeffs.iter().all(|(w, &c)| {
            (0..d.simple.len()).all(|i| self.mult(&d.weyl.act(d.weyl.simple_refl[i], w)) == c)
        })
    }

    pub fn from_weights<'a>(ws: impl IntoIterator<Item = &'a Vec<i64>>) -> Self {
        let mut out = FormalCharacter::default();
        for w in ws {
            *out.coeffs.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }
}

/// Characters of the irreducibles, memoized by highest weight.
pub struct Characters<'m> {
    pub model: &'m Model,
    cache: Mutex<HashMap<Vec<i64>, FormalCharacter>>,
}

impl<'m> Characters<'m> {
    pub fn new(model: &'m Model) -> Self {
        Characters { model, cache: Mutex::new(HashMap::new()) }
    }

    /// `Σ_{γ LS} e^{e(γ)}`.
    pub fn char_from_ls(&self, mu: &[i64]) -> Result<FormalCharacter> {
        if let Some(c) = self.cache.lock().unwrap().get(mu) {
            return Ok(c.clone());
        }
        let ls = self.model.ls_galleries(mu)?;
        let targets: Vec<Vec<i64>> = ls.iter().map(|g| self.model.target(g)).collect();
        let ch = FormalCharacter::from_weights(&targets);
        self.cache.lock().unwrap().insert(mu.to_vec(), ch.clone());
        Ok(ch)
    }

    /// Writes `ch` as a sum of irreducible characters by repeatedly removing
    /// the highest remaining weight.
    pub fn decompose(&self, ch: &FormalCharacter) -> Result<BTreeMap<Vec<i64>, i64>> {
        let d = self.model.d();
        let mut rest = ch.clone();
        let mut out = BTreeMap::new();
        while let Some((w, &c)) = rest
            .coeffs
            .iter()
            .filter(|(w, _)| d.is_dominant(w))
            .max_by(|(a, _), (b, _)| {
                d.pair_two_rho(a).cmp(&d.pair_two_rho(b)).then_with(|| b.cmp(a))
            })
        {
            let w = w.clone();
            if c < 0 {
                return Err(Error::NegativeMultiplicity { weight: w, mult: c });
            }
            rest.add_scaled(&self.char_from_ls(&w)?, -c);
            out.insert(w, c);
        }
        if let Some((w, &c)) = rest.coeffs.iter().next() {
            return Err(Error::NegativeMultiplicity { weight: w.clone(), mult: c });
        }
        Ok(out)
    }

    /// `Σ_{γ ∈ Γ(γ_μ)} e^{e(γ)}`.
    pub fn char_of_all(&self, mu: &[i64]) -> Result<FormalCharacter> {
        self.count_targets(mu, |_, _| true)
    }

    fn count_targets(
        &self,
        mu: &[i64],
        keep: impl Fn(&Model, &crate::gallery::Gallery) -> bool + Sync,
    ) -> Result<FormalCharacter> {
        let m = self.model;
        let g0 = m.gamma_mu(mu)?;
        let gt = g0.gt.clone();
        let parts: Vec<FormalCharacter> = m
            .blocks(&gt, 2)
            .par_iter()
            .map(|b| {
                let mut ch = FormalCharacter::default();
                m.for_each_with_prefix(&gt, b, &mut |g| {
                    if keep(m, &g) {
                        ch.add_term(m.target(&g), 1);
                    }
                });
                ch
            })
            .collect();
        let mut out = FormalCharacter::default();
        for p in &parts {
            out.add_scaled(p, 1);
        }
        Ok(out)
    }

    /// Multiplicities `n_λ` with `Char Γ(γ_μ) = Σ n_λ Char V(λ)`, by subtraction.
    pub fn decompose_gamma(&self, mu: &[i64]) -> Result<BTreeMap<Vec<i64>, i64>> {
        self.decompose(&self.char_of_all(mu)?)
    }

    /// Targets of the galleries of type `γ_μ` on which every `e_α` is undefined.
    pub fn highest_weight_counts(&self, mu: &[i64]) -> Result<BTreeMap<Vec<i64>, i64>> {
        Ok(self.count_targets(mu, |m, g| m.is_highest(g))?.coeffs)
    }

    pub fn tensor_decompose(
        &self,
        a: &FormalCharacter,
        b: &FormalCharacter,
    ) -> Result<BTreeMap<Vec<i64>, i64>> {
        self.decompose(&a.mul(b))
    }
}

/// Character of the irreducible of highest weight `μ` for the dual root
/// system, by Freudenthal's formula. Only meaningful on split data.
pub fn weyl_oracle(d: &RelativeRootDatum, mu: &[i64]) -> FormalCharacter {
    let pos: Vec<&[i64]> = d.roots[..d.n_pos].iter().map(|r| r.coroot.as_slice()).collect();
    let form = |x: &[Q], y: &[Q]| -> Q {
        d.roots[..d.n_pos]
            .iter()
            .fold(Q::zero(), |s, r| s + crate::linalg::dot(&r.func, x) * crate::linalg::dot(&r.func, y))
    };
    let rho: Vec<Q> = (0..d.rank)
        .map(|i| pos.iter().map(|c| Q::from_integer(c[i])).sum::<Q>() / 2)
        .collect();
    let shift = |x: &[i64]| -> Vec<Q> { x.iter().zip(&rho).map(|(&a, b)| Q::from_integer(a) + b).collect() };
    let top = {
        let v = shift(mu);
        form(&v, &v)
    };
    let in_hull = |w: &[i64]| d.dominance_leq(&d.dominant_rep(w).0, mu);

    let mut depth: HashMap<Vec<i64>, usize> = HashMap::from([(mu.to_vec(), 0)]);
    let mut order = vec![mu.to_vec()];
    let mut queue = VecDeque::from([mu.to_vec()]);
    while let Some(w) = queue.pop_front() {
        let k = depth[&w];
        for &s in &d.simple {
            let v: Vec<i64> = w.iter().zip(&d.roots[s].coroot).map(|(a, b)| a - b).collect();
            if !depth.contains_key(&v) && in_hull(&v) {
                depth.insert(v.clone(), k + 1);
                order.push(v.clone());
                queue.push_back(v);
            }
        }
    }

    let mut mult: HashMap<Vec<i64>, i64> = HashMap::from([(mu.to_vec(), 1)]);
    for w in order.iter().skip(1) {
        let mut sum = Q::zero();
        for c in &pos {
            let cq: Vec<Q> = c.iter().map(|&x| Q::from_integer(x)).collect();
            let mut v = w.clone();
            loop {
                for (x, y) in v.iter_mut().zip(c.iter()) {
                    *x += y;
                }
                let Some(&m) = mult.get(&v) else { break };
                let vq: Vec<Q> = v.iter().map(|&x| Q::from_integer(x)).collect();
                sum += Q::from_integer(m) * form(&vq, &cq);
            }
        }
        let s = shift(w);
        let m = sum * 2 / (top - form(&s, &s));
        debug_assert!(m.is_integer());
        mult.insert(w.clone(), m.to_integer());
    }
    FormalCharacter { coeffs: mult.into_iter().filter(|(_, m)| *m != 0).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dominant_box(d: &RelativeRootDatum, bound: i64) -> Vec<Vec<i64>> {
        let mut pts = vec![vec![]];
        for _ in 0..d.rank {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<i64>| (0..=6).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        pts.into_iter()
            .filter(|p| d.is_dominant(p) && d.pair_two_rho(p) <= bound)
            .collect()
    }

    #[test]
    fn a1_adjoint() {
        let m = Model::from_preset("a1").unwrap();
        let c = Characters::new(&m);
        let ch = c.char_from_ls(&[1]).unwrap();
        assert_eq!(ch, FormalCharacter::from_weights(&[vec![-1], vec![0], vec![1]]));
        let dec = c.decompose_gamma(&[1]).unwrap();
        assert_eq!(dec, BTreeMap::from([(vec![1], 1), (vec![0], 1)]));
        assert_eq!(c.highest_weight_counts(&[1]).unwrap(), dec);
        let sq = c.tensor_decompose(&ch, &ch).unwrap();
        assert_eq!(sq, BTreeMap::from([(vec![2], 1), (vec![1], 1), (vec![0], 1)]));
    }

    #[test]
    fn a2_adjoint_oracle() {
        let m = Model::from_preset("a2").unwrap();
        let ch = weyl_oracle(m.d(), &[1, 1]);
        assert_eq!(ch.dim(), 8);
        assert_eq!(ch.mult(&[0, 0]), 2);
    }

    #[test]
    fn ls_matches_freudenthal_on_split_presets() {
        for name in ["a1", "a2", "b2", "c2", "g2", "pgl2"] {
            let m = Model::from_preset(name).unwrap();
            let c = Characters::new(&m);
            for mu in dominant_box(m.d(), 6) {
                let ls = c.char_from_ls(&mu).unwrap();
                assert_eq!(ls, weyl_oracle(m.d(), &mu), "{name} {mu:?}");
                assert!(ls.is_weyl_invariant(m.d()));
            }
        }
    }

    #[test]
    fn two_decompositions_agree() {
        for name in ["a1", "a2", "b2", "su3", "a3t", "pgl2"] {
            let m = Model::from_preset(name).unwrap();
            let c = Characters::new(&m);
            for mu in dominant_box(m.d(), 6) {
                let a = c.decompose_gamma(&mu).unwrap();
                let b = c.highest_weight_counts(&mu).unwrap();
                assert_eq!(a, b, "{name} {mu:?}");
            }
        }
    }

    #[test]
    fn dimensions_multiply() {
        let m = Model::from_preset("b2").unwrap();
        let c = Characters::new(&m);
        let ws = dominant_box(m.d(), 6);
        let x = c.char_from_ls(&ws[1]).unwrap();
        let y = c.char_from_ls(&ws[2]).unwrap();
        let dec = c.tensor_decompose(&x, &y).unwrap();
        let total: i64 = dec.iter().map(|(l, n)| n * c.char_from_ls(l).unwrap().dim()).sum();
        assert_eq!(total, x.dim() * y.dim());
        assert_eq!(c.tensor_decompose(&x, &FormalCharacter::delta(vec![0, 0])).unwrap(), BTreeMap::from([(ws[1].clone(), 1)]));
    }
}
