//! Root operators `e_α`, `f_α`, `ẽ_α` and LS galleries.

use std::collections::{BTreeSet, HashSet};

use crate::coxeter::Elt;
use crate::gallery::{Gallery, Model};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    I,
    II,
    III,
}

#[derive(Clone, Debug)]
pub struct OperatorOutcome {
    pub result: Option<Gallery>,
    pub case: Case,
    pub j: Option<usize>,
    pub l: Option<usize>,
    pub m: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    E,
    F,
    ETilde,
}

impl Op {
    pub fn parse(s: &str) -> Option<Op> {
        match s {
            "e" => Some(Op::E),
            "f" => Some(Op::F),
            "etilde" => Some(Op::ETilde),
            _ => None,
        }
    }
}

/// Levels of the walls `H_{α,·}` containing each small facet.
fn levels(model: &Model, g: &Gallery, r: usize) -> Vec<Option<Q>> {
    let p = model.prefixes(g);
    g.gt.small
        .iter()
        .enumerate()
        .map(|(i, &t)| model.aff.contained_level(&p[i], t, r))
        .collect()
}

/// Applies `g_i` to the large facet `Γ_i` and re-encodes.
fn transform(model: &Model, g: &Gallery, pick: impl Fn(usize) -> Option<Elt>) -> Option<Gallery> {
    let a = &model.aff;
    let p = model.prefixes(g);
    let xs: Vec<Elt> = (0..g.idx.len())
        .map(|i| match pick(i) {
            Some(h) => a.mul(&h, &p[i + 1]),
            None => p[i + 1].clone(),
        })
        .collect();
    model.encode(&g.gt, &xs)
}

impl Model {
    /// The root index of the `i`-th simple relative root.
    fn simple_root(&self, i: usize) -> usize {
        self.d().simple[i]
    }

    fn coroot_step(&self, r: usize, sign: i64) -> Elt {
        let t = self.d().roots[r].ech_coroot.iter().map(|&v| sign * v).collect::<Vec<_>>();
        self.aff.translation(&t)
    }

    pub fn apply(&self, op: Op, g: &Gallery, i: usize) -> OperatorOutcome {
        match op {
            Op::E => self.apply_e(g, i),
            Op::F => self.apply_f(g, i),
            Op::ETilde => self.apply_e_tilde(g, i),
        }
    }

    pub fn apply_e(&self, g: &Gallery, i: usize) -> OperatorOutcome {
        let r = self.simple_root(i);
        let u = self.d().roots[r].jump;
        let lv = levels(self, g, r);
        let m = lv.iter().flatten().min().copied().expect("f_0 lies on H_{α,0}");
        let mut out = OperatorOutcome { result: None, case: Case::I, j: None, l: None, m };
        if m >= Q::from_integer(0) {
            return out;
        }
        let l = lv.iter().position(|x| *x == Some(m)).unwrap();
        let Some(j) = (0..=l).rev().find(|&k| lv[k] == Some(m + u)) else {
            return out;
        };
        out.j = Some(j);
        out.l = Some(l);
        let refl = self.aff.reflection(r, m + u);
        let step = self.coroot_step(r, 1);
        out.result = transform(self, g, |k| {
            if k < j {
                None
            } else if k < l {
                Some(refl.clone())
            } else {
                Some(step.clone())
            }
        });
        out
    }

    pub fn apply_f(&self, g: &Gallery, i: usize) -> OperatorOutcome {
        let r = self.simple_root(i);
        let u = self.d().roots[r].jump;
        let lv = levels(self, g, r);
        let m = lv.iter().flatten().min().copied().expect("f_0 lies on H_{α,0}");
        let mut out = OperatorOutcome { result: None, case: Case::II, j: None, l: None, m };
        let nu = self.target(g);
        if m >= self.d().pair_int(r, &nu) {
            return out;
        }
        let j = lv.iter().rposition(|x| *x == Some(m)).unwrap();
        let Some(l) = (j..lv.len()).find(|&k| lv[k] == Some(m + u)) else {
            return out;
        };
        out.j = Some(j);
        out.l = Some(l);
        let refl = self.aff.reflection(r, m);
        let step = self.coroot_step(r, -1);
        out.result = transform(self, g, |k| {
            if k < j {
                None
            } else if k < l {
                Some(refl.clone())
            } else {
                Some(step.clone())
            }
        });
        out
    }

    /// Reflects the excursion below `H_{α,m}` between its first two touches.
    pub fn apply_e_tilde(&self, g: &Gallery, i: usize) -> OperatorOutcome {
        let r = self.simple_root(i);
        let lv = levels(self, g, r);
        let m = lv.iter().flatten().min().copied().expect("f_0 lies on H_{α,0}");
        let mut out = OperatorOutcome { result: None, case: Case::III, j: None, l: None, m };
        let j = lv.iter().position(|x| *x == Some(m)).unwrap();
        if j >= g.idx.len() {
            return out;
        }
        let p = self.prefixes(g);
        let (lo, hi) = self.aff.range_on(&p[j + 1], g.gt.large[j], r);
        if hi > m || lo == m {
            return out;
        }
        let Some(l) = (j + 1..lv.len()).find(|&k| lv[k] == Some(m)) else {
            return out;
        };
        out.j = Some(j);
        out.l = Some(l);
        let refl = self.aff.reflection(r, m);
        out.result = transform(self, g, |k| (j <= k && k < l).then(|| refl.clone()));
        out
    }

    /// Closure of `{γ_μ}` under all `f_α`.
    pub fn ls_galleries(&self, mu: &[i64]) -> crate::Result<BTreeSet<Gallery>> {
        let g0 = self.gamma_mu(mu)?;
        Ok(self.f_closure(&g0))
    }

    pub fn f_closure(&self, start: &Gallery) -> BTreeSet<Gallery> {
        let n = self.d().simple.len();
        let mut seen: HashSet<Gallery> = HashSet::from([start.clone()]);
        let mut work = vec![start.clone()];
        while let Some(g) = work.pop() {
            for i in 0..n {
                if let Some(h) = self.apply_f(&g, i).result {
                    if seen.insert(h.clone()) {
                        work.push(h);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Edges `(source, target, simple root index)` of the `f`-graph on LS galleries.
    pub fn f_graph(&self, mu: &[i64]) -> crate::Result<Vec<(Gallery, Gallery, usize)>> {
        let ls = self.ls_galleries(mu)?;
        let mut edges = Vec::new();
        for g in &ls {
            for i in 0..self.d().simple.len() {
                if let Some(h) = self.apply_f(g, i).result {
                    edges.push((g.clone(), h, i));
                }
            }
        }
        Ok(edges)
    }

    /// Galleries on which every `e_α` is undefined.
    pub fn is_highest(&self, g: &Gallery) -> bool {
        (0..self.d().simple.len()).all(|i| self.apply_e(g, i).result.is_none())
    }

    /// `γ` is LS when it is positively folded with `dim γ = <ρ, μ + e(γ)>`.
    pub fn is_ls(&self, g: &Gallery) -> bool {
        let mu = &g.gt.mu;
        let nu = self.target(g);
        let s: Vec<i64> = mu.iter().zip(&nu).map(|(a, b)| a + b).collect();
        self.is_positively_folded(g) && self.load_bearing(g) as i64 == self.rho(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::Model;

    fn model(name: &str) -> Model {
        Model::from_preset(name).unwrap()
    }

    fn dominant_box(m: &Model, bound: i64) -> Vec<Vec<i64>> {
        let d = m.d();
        let mut pts = vec![vec![]];
        for _ in 0..d.rank {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<i64>| (0..=4).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        pts.into_iter()
            .filter(|p| d.is_dominant(p) && d.pair_two_rho(p) <= bound)
            .collect()
    }

    #[test]
    fn a1_adjoint_ls() {
        let m = model("a1");
        let ls = m.ls_galleries(&[1]).unwrap();
        let mut t: Vec<i64> = ls.iter().map(|g| m.target(g)[0]).collect();
        t.sort();
        assert_eq!(t, vec![-1, 0, 1]);
        let g0 = m.gamma_mu(&[1]).unwrap();
        for g in m.all(&g0.gt) {
            if m.target(&g) == vec![0] && m.is_positively_folded(&g) {
                assert_eq!(m.apply_e(&g, 0).result, Some(g0.clone()));
            }
        }
    }

    #[test]
    fn e_undefined_on_gamma_mu() {
        for name in ["a1", "a2", "su3"] {
            let m = model(name);
            for mu in dominant_box(&m, 8) {
                let g = m.gamma_mu(&mu).unwrap();
                for i in 0..m.d().simple.len() {
                    assert!(m.apply_e(&g, i).result.is_none());
                    assert!(m.apply_e_tilde(&g, i).result.is_none());
                    let defined = m.apply_f(&g, i).result.is_some();
                    assert_eq!(defined, m.d().pair_int(m.d().simple[i], &mu) > Q::from_integer(0));
                }
            }
        }
    }

    #[test]
    fn operator_laws() {
        for name in ["a1", "a2", "b2", "su3", "a3t", "pgl2"] {
            let m = model(name);
            let d = m.d();
            for mu in dominant_box(&m, 6) {
                let g0 = m.gamma_mu(&mu).unwrap();
                for g in m.all(&g0.gt) {
                    let nu = m.target(&g);
                    let pos = m.is_positively_folded(&g);
                    for i in 0..d.simple.len() {
                        let r = d.simple[i];
                        let step = &d.roots[r].ech_coroot;
                        if let Some(h) = m.apply_e(&g, i).result {
                            let t: Vec<i64> = nu.iter().zip(step).map(|(a, b)| a + b).collect();
                            assert_eq!(m.target(&h), t);
                            assert_eq!(m.apply_f(&h, i).result.as_ref(), Some(&g));
                            assert_eq!(m.load_bearing(&h), m.load_bearing(&g) + 1);
                        }
                        if let Some(h) = m.apply_f(&g, i).result {
                            assert_eq!(m.apply_e(&h, i).result.as_ref(), Some(&g));
                            assert_eq!(m.load_bearing(&h) + 1, m.load_bearing(&g));
                        }
                        let et = m.apply_e_tilde(&g, i).result;
                        if let Some(h) = &et {
                            assert_eq!(m.target(h), nu);
                            assert_eq!(m.load_bearing(h), m.load_bearing(&g) + 1, "{name} {}", m.code(&g));
                            if pos {
                                assert!(m.is_positively_folded(h));
                            }
                        }
                        if pos && et.is_none() {
                            for h in [m.apply_e(&g, i).result, m.apply_f(&g, i).result].into_iter().flatten() {
                                assert!(m.is_positively_folded(&h), "{name} {}", m.code(&g));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ls_is_characterized_by_dimension() {
        for name in ["a1", "a2", "b2", "su3", "a3t", "g2"] {
            let m = model(name);
            for mu in dominant_box(&m, 6) {
                let g0 = m.gamma_mu(&mu).unwrap();
                let ls = m.ls_galleries(&mu).unwrap();
                let by_dim: BTreeSet<Gallery> = m.all(&g0.gt).into_iter().filter(|g| m.is_ls(g)).collect();
                assert_eq!(ls, by_dim, "{name} {mu:?}");
            }
        }
    }
}
