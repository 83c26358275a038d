//! The Iwahori–Weyl group acting on the apartment: elements, lengths,
//! reduced words, Bruhat order, parabolic cosets and facets.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::linalg;
use crate::rootdata::RelativeRootDatum;
use crate::{Error, Result, Q};

/// `t_ν w`, acting by `x ↦ ν + w x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elt {
    pub t: Vec<i64>,
    pub w: u16,
}

/// An affine hyperplane `H_{a,m}` with `a` positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Hyperplane {
    pub root: usize,
    pub level: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Affine(usize),
    Finite(usize),
}

#[derive(Clone, Debug)]
pub struct Component {
    pub simple: Vec<usize>,
    /// Root index of the highest échelonnage root.
    pub highest: usize,
    pub coeffs: Vec<i64>,
}

/// A facet `rep · F_typ` with `rep` minimal in `rep W_typ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Facet {
    pub typ: u32,
    pub rep: Elt,
}

pub struct Affine {
    pub d: RelativeRootDatum,
    pub nodes: Vec<Node>,
    pub gens: Vec<Elt>,
    pub comps: Vec<Component>,
    pub node_comp: Vec<usize>,
    /// `coweights[i]` pairs to `δ_ij` with the simple échelonnage roots.
    pub coweights: Vec<Vec<Q>>,
    /// `vertex[k]` is the vertex of the fundamental alcove off the wall of node `k`.
    pub vertex: Vec<Vec<Q>>,
    pair_vertex: Vec<Vec<Q>>,
    parabolics: Mutex<HashMap<u32, Arc<Vec<Elt>>>>,
}

impl Affine {
    pub fn new(d: RelativeRootDatum) -> Result<Self> {
        let m = d.rank;
        let simple_ech: Vec<Vec<Q>> = d
            .simple
            .iter()
            .map(|&s| d.roots[s].ech.iter().map(|&x| Q::from_integer(x)).collect())
            .collect();
        let inv = linalg::qinverse(&simple_ech).expect("simple roots are independent");
        let coweights: Vec<Vec<Q>> = (0..m).map(|i| (0..m).map(|k| inv[k][i]).collect()).collect();
        let coeff = |r: usize, i: usize| -> Q {
            d.roots[r]
                .ech
                .iter()
                .zip(&coweights[i])
                .fold(Q::zero(), |s, (&a, b)| s + Q::from_integer(a) * b)
        };

        // Connected components of the relative Dynkin diagram.
        let mut comp_of = vec![usize::MAX; m];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..m {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let c = comps.len();
            let mut stack = vec![start];
            comp_of[start] = c;
            let mut members = vec![];
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..m {
                    if comp_of[j] == usize::MAX && d.pair_ech(d.simple[j], &d.roots[d.simple[i]].ech_coroot) != 0 {
                        comp_of[j] = c;
                        stack.push(j);
                    }
                }
            }
            members.sort();
            comps.push(members);
        }
        let mut components = Vec::new();
        for members in comps {
            let mut best: Option<(Q, usize)> = None;
            for r in 0..d.n_pos {
                let supported = (0..m).all(|i| members.contains(&i) || coeff(r, i).is_zero());
                if !supported {
                    continue;
                }
                let h: Q = members.iter().map(|&i| coeff(r, i)).sum();
                if best.is_none_or(|(b, _)| h > b) {
                    best = Some((h, r));
                }
            }
            let (_, highest) = best.expect("component has a root");
            let coeffs = members
                .iter()
                .map(|&i| {
                    let c = coeff(highest, i);
                    assert!(c.is_integer() && c > Q::zero(), "highest root coefficients");
                    c.to_integer()
                })
                .collect();
            components.push(Component { simple: members, highest, coeffs });
        }

        let mut nodes = Vec::new();
        let mut node_comp = Vec::new();
        let mut gens = Vec::new();
        let mut vertex = Vec::new();
        for (c, comp) in components.iter().enumerate() {
            nodes.push(Node::Affine(c));
            node_comp.push(c);
            let h = comp.highest;
            gens.push(Elt { t: d.roots[h].ech_coroot.clone(), w: d.weyl.refl[h] });
            vertex.push(vec![Q::zero(); m]);
        }
        for i in 0..m {
            nodes.push(Node::Finite(i));
            let c = comp_of[i];
            node_comp.push(c);
            gens.push(Elt { t: vec![0; m], w: d.weyl.simple_refl[i] });
            let pos = components[c].simple.iter().position(|&x| x == i).unwrap();
            let n_i = Q::from_integer(components[c].coeffs[pos]);
            vertex.push(coweights[i].iter().map(|x| x / n_i).collect());
        }
        if nodes.len() > 31 {
            return Err(Error::Preset("too many simple affine reflections".into()));
        }
        let pair_vertex = d
            .roots
            .iter()
            .map(|r| vertex.iter().map(|v| linalg::dot(&r.func, v)).collect())
            .collect();
        Ok(Affine {
            d,
            nodes,
            gens,
            comps: components,
            node_comp,
            coweights,
            vertex,
            pair_vertex,
            parabolics: Mutex::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.d.rank
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn all_nodes_mask(&self) -> u32 {
        (1u32 << self.n_nodes()) - 1
    }

    /// Mask of the finite simple reflections: the type of the origin.
    pub fn origin_type(&self) -> u32 {
        (self.comps.len()..self.n_nodes()).fold(0, |m, k| m | (1 << k))
    }

    pub fn node_name(&self, k: usize) -> String {
        match self.nodes[k] {
            Node::Affine(_) if self.comps.len() == 1 => "s0".to_string(),
            Node::Affine(c) => format!("s0_{c}"),
            Node::Finite(i) => format!("s{}", i + 1),
        }
    }

    pub fn identity(&self) -> Elt {
        Elt { t: vec![0; self.rank()], w: 0 }
    }

    pub fn translation(&self, nu: &[i64]) -> Elt {
        Elt { t: nu.to_vec(), w: 0 }
    }

    pub fn finite(&self, w: u16) -> Elt {
        Elt { t: vec![0; self.rank()], w }
    }

    pub fn mul(&self, x: &Elt, y: &Elt) -> Elt {
        let wy = self.d.weyl.act(x.w, &y.t);
        Elt {
            t: x.t.iter().zip(&wy).map(|(a, b)| a + b).collect(),
            w: self.d.weyl.mul(x.w, y.w),
        }
    }

    pub fn inv(&self, x: &Elt) -> Elt {
        let wi = self.d.weyl.inv[x.w as usize];
        let t = self.d.weyl.act(wi, &x.t);
        Elt { t: t.iter().map(|v| -v).collect(), w: wi }
    }

    pub fn act(&self, x: &Elt, p: &[Q]) -> Vec<Q> {
        self.d
            .weyl
            .act_q(x.w, p)
            .into_iter()
            .zip(&x.t)
            .map(|(a, &b)| a + Q::from_integer(b))
            .collect()
    }

    pub fn act_int(&self, x: &Elt, p: &[i64]) -> Vec<i64> {
        self.d
            .weyl
            .act(x.w, p)
            .into_iter()
            .zip(&x.t)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Root index of `w^{-1}·a_r`, the linear part of `a_r ∘ x`.
    fn pull_root(&self, x: &Elt, r: usize) -> usize {
        let wi = self.d.weyl.inv[x.w as usize];
        self.d.weyl.root_perm[wi as usize][r] as usize
    }

    /// Number of hyperplanes separating the fundamental alcove from `x` of it.
    pub fn length(&self, x: &Elt) -> u32 {
        let d = &self.d;
        (0..d.n_pos)
            .map(|r| {
                let base = d.pair_ech(r, &x.t);
                let off = if self.pull_root(x, r) >= d.n_pos { -1 } else { 0 };
                (base + off).unsigned_abs() as u32
            })
            .sum()
    }

    /// Greedy least left descents, then the length-zero remainder.
    pub fn reduced_word(&self, x: &Elt) -> (Vec<usize>, Elt) {
        let mut cur = x.clone();
        let mut word = Vec::new();
        let mut l = self.length(&cur);
        while l > 0 {
            let (k, next) = (0..self.n_nodes())
                .map(|k| (k, self.mul(&self.gens[k], &cur)))
                .find(|(_, y)| self.length(y) < l)
                .expect("an element of positive length has a descent");
            word.push(k);
            cur = next;
            l -= 1;
        }
        (word, cur)
    }

    pub fn from_word(&self, word: &[usize]) -> Elt {
        word.iter()
            .fold(self.identity(), |acc, &k| self.mul(&acc, &self.gens[k]))
    }

    pub fn bruhat_leq(&self, v: &Elt, w: &Elt) -> bool {
        let lv = self.length(v);
        let lw = self.length(w);
        if lv > lw {
            return false;
        }
        if lw == 0 {
            return v == w;
        }
        let (k, sw) = (0..self.n_nodes())
            .map(|k| (k, self.mul(&self.gens[k], w)))
            .find(|(_, y)| self.length(y) < lw)
            .unwrap();
        let sv = self.mul(&self.gens[k], v);
        if self.length(&sv) < lv {
            self.bruhat_leq(&sv, &sw)
        } else {
            self.bruhat_leq(v, &sw)
        }
    }

    pub fn is_finite_type(&self, t: u32) -> bool {
        self.comps.iter().enumerate().all(|(c, _)| {
            (0..self.n_nodes()).any(|k| self.node_comp[k] == c && t & (1 << k) == 0)
        })
    }

    /// The standard parabolic subgroup `W_t`.
    pub fn parabolic(&self, t: u32) -> Result<Arc<Vec<Elt>>> {
        if !self.is_finite_type(t) {
            return Err(Error::Infinite(t));
        }
        if let Some(g) = self.parabolics.lock().unwrap().get(&t) {
            return Ok(g.clone());
        }
        let gens: Vec<usize> = (0..self.n_nodes()).filter(|k| t & (1 << k) != 0).collect();
        let mut seen: HashSet<Elt> = HashSet::from([self.identity()]);
        let mut out = vec![self.identity()];
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &k in &gens {
                let y = self.mul(&x, &self.gens[k]);
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let g = Arc::new(out);
        self.parabolics.lock().unwrap().insert(t, g.clone());
        Ok(g)
    }

    /// Minimal length representatives of `W_big / W_small`.
    pub fn min_coset_reps(&self, big: u32, small: u32) -> Result<Vec<Elt>> {
        assert_eq!(small & !big, 0, "small type must be contained in the big type");
        let group = self.parabolic(big)?;
        let small_gens: Vec<usize> = (0..self.n_nodes()).filter(|k| small & (1 << k) != 0).collect();
        Ok(group
            .iter()
            .filter(|w| {
                let l = self.length(w);
                small_gens.iter().all(|&k| self.length(&self.mul(w, &self.gens[k])) > l)
            })
            .cloned()
            .collect())
    }

    /// Minimal representative of `x W_t`.
    pub fn min_rep(&self, x: &Elt, t: u32) -> Elt {
        let mut cur = x.clone();
        let mut l = self.length(&cur);
        'outer: loop {
            for k in 0..self.n_nodes() {
                if t & (1 << k) != 0 {
                    let y = self.mul(&cur, &self.gens[k]);
                    let ly = self.length(&y);
                    if ly < l {
                        cur = y;
                        l = ly;
                        continue 'outer;
                    }
                }
            }
            return cur;
        }
    }

    /// Barycenter of the standard facet `F_t`.
    pub fn type_barycenter(&self, t: u32) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rank()];
        for c in 0..self.comps.len() {
            let ks: Vec<usize> = (0..self.n_nodes())
                .filter(|&k| self.node_comp[k] == c && t & (1 << k) == 0)
                .collect();
            let n = Q::from_integer(ks.len() as i64);
            for k in ks {
                for (o, v) in out.iter_mut().zip(&self.vertex[k]) {
                    *o += v / n;
                }
            }
        }
        out
    }

    pub fn facet_barycenter(&self, f: &Facet) -> Vec<Q> {
        self.act(&f.rep, &self.type_barycenter(f.typ))
    }

    /// Range of `<a_r, ->` over the closure of `x · F_t`.
    pub fn range_on(&self, x: &Elt, t: u32, r: usize) -> (Q, Q) {
        let base = self.d.pair_int(r, &x.t);
        let pr = self.pull_root(x, r);
        let mut lo = base;
        let mut hi = base;
        for c in 0..self.comps.len() {
            let vals = (0..self.n_nodes())
                .filter(|&k| self.node_comp[k] == c && t & (1 << k) == 0)
                .map(|k| self.pair_vertex[pr][k]);
            let (mn, mx) = vals.fold((None::<Q>, None::<Q>), |(a, b), v| {
                (Some(a.map_or(v, |a| a.min(v))), Some(b.map_or(v, |b| b.max(v))))
            });
            lo += mn.unwrap();
            hi += mx.unwrap();
        }
        (lo, hi)
    }

    pub fn facet_range(&self, f: &Facet, r: usize) -> (Q, Q) {
        self.range_on(&f.rep, f.typ, r)
    }

    /// Level `m` with the facet inside `H_{a_r, m}`, if any.
    pub fn contained_level(&self, x: &Elt, t: u32, r: usize) -> Option<Q> {
        let (lo, hi) = self.range_on(x, t, r);
        (lo == hi && (lo / self.d.roots[r].jump).is_integer()).then_some(lo)
    }

    pub fn is_wall_level(&self, r: usize, m: Q) -> bool {
        (m / self.d.roots[r].jump).is_integer()
    }

    /// Folds `p` into the closed fundamental alcove: returns `(x, y)` with
    /// `p = x·y` and `y` in the closure of the alcove.
    pub fn fold_to_alcove(&self, p: &[Q]) -> (Elt, Vec<Q>) {
        let d = &self.d;
        let mut y = p.to_vec();
        let mut x = self.identity();
        'outer: loop {
            for k in 0..self.n_nodes() {
                let outside = match self.nodes[k] {
                    Node::Finite(i) => d.pair(d.simple[i], &y) < Q::zero(),
                    Node::Affine(c) => {
                        let h = self.comps[c].highest;
                        d.pair(h, &y) > d.roots[h].jump
                    }
                };
                if outside {
                    y = self.act(&self.gens[k], &y);
                    x = self.mul(&x, &self.gens[k]);
                    continue 'outer;
                }
            }
            return (x, y);
        }
    }

    /// Walls of the fundamental alcove through a point of its closure.
    pub fn type_of_closure_point(&self, y: &[Q]) -> u32 {
        let d = &self.d;
        (0..self.n_nodes()).fold(0, |t, k| {
            let on = match self.nodes[k] {
                Node::Finite(i) => d.pair(d.simple[i], y).is_zero(),
                Node::Affine(c) => {
                    let h = self.comps[c].highest;
                    d.pair(h, y) == d.roots[h].jump
                }
            };
            if on {
                t | (1 << k)
            } else {
                t
            }
        })
    }

    pub fn facet_of_point(&self, p: &[Q]) -> Facet {
        let (x, y) = self.fold_to_alcove(p);
        let typ = self.type_of_closure_point(&y);
        Facet { typ, rep: self.min_rep(&x, typ) }
    }

    pub fn facet(&self, x: &Elt, t: u32) -> Facet {
        Facet { typ: t, rep: self.min_rep(x, t) }
    }

    pub fn facet_dim(&self, t: u32) -> usize {
        self.rank() - t.count_ones() as usize
    }

    /// Reflection across `H_{a_r, m}`.
    pub fn reflection(&self, r: usize, m: Q) -> Elt {
        let root = &self.d.roots[r];
        let k = m / root.jump;
        assert!(k.is_integer(), "level off the wall lattice");
        let k = k.to_integer();
        Elt {
            t: root.ech_coroot.iter().map(|&v| v * k).collect(),
            w: self.d.weyl.refl[r],
        }
    }

    pub fn hyperplane(&self, r: usize, m: Q) -> Hyperplane {
        if r < self.d.n_pos {
            Hyperplane { root: r, level: m }
        } else {
            Hyperplane { root: self.d.neg(r), level: -m }
        }
    }

    /// The hyperplane fixed by the reflection `x`, when `x` is one.
    pub fn reflection_hyperplane(&self, x: &Elt) -> Option<Hyperplane> {
        let d = &self.d;
        let r = (0..d.n_pos).find(|&r| d.weyl.refl[r] == x.w)?;
        // x = s_a + k a^∨_ech with level m = k u_a.
        let ec = &d.roots[r].ech_coroot;
        let i = ec.iter().position(|&v| v != 0)?;
        if x.t[i] % ec[i] != 0 {
            return None;
        }
        let k = x.t[i] / ec[i];
        let level = d.roots[r].jump * Q::from_integer(k);
        (self.reflection(r, level) == *x).then(|| Hyperplane { root: r, level })
    }

    /// Length-zero elements: one per class of the lattice modulo the
    /// échelonnage coroot lattice.
    pub fn omega(&self) -> Vec<Elt> {
        let d = &self.d;
        let m = d.rank;
        let cols: linalg::IMat = linalg::transpose(
            &d.simple.iter().map(|&s| d.roots[s].ech_coroot.clone()).collect::<Vec<_>>(),
        );
        let (u, diag) = linalg::diagonalize(&cols);
        let uinv = linalg::as_integer_matrix(&linalg::qinverse(&linalg::to_q(&u)).unwrap()).unwrap();
        let mut reps: Vec<Vec<i64>> = vec![vec![0; m]];
        for i in 0..m {
            let di = diag[i].max(1);
            reps = reps
                .into_iter()
                .flat_map(|r| {
                    (0..di).map(move |k| {
                        let mut v = r.clone();
                        v[i] = k;
                        v
                    })
                })
                .collect();
        }
        let mut out: Vec<Elt> = reps
            .iter()
            .map(|r| {
                let lam = linalg::imul_vec(&uinv, r);
                self.reduced_word(&self.translation(&lam)).1
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn fmt_elt(&self, x: &Elt) -> String {
        let (word, om) = self.reduced_word(x);
        let mut s: Vec<String> = word.iter().map(|&k| self.node_name(k)).collect();
        if om != self.identity() {
            s.push(format!("w[{}|{}]", self.d.fmt_weight(&om.t), om.w));
        }
        if s.is_empty() {
            "e".to_string()
        } else {
            s.join(".")
        }
    }

    pub fn parse_elt(&self, s: &str) -> Result<Elt> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(self.identity());
        }
        let mut x = self.identity();
        for tok in s.split('.') {
            let tok = tok.trim();
            if let Some(inner) = tok.strip_prefix("t[").and_then(|r| r.strip_suffix(']')) {
                let nu = self.d.parse_weight(inner)?;
                x = self.mul(&x, &self.translation(&nu));
                continue;
            }
            if let Some(inner) = tok.strip_prefix("w[").and_then(|r| r.strip_suffix(']')) {
                let (a, b) = inner
                    .split_once('|')
                    .ok_or_else(|| Error::Parse(format!("bad element token `{tok}`")))?;
                let w: u16 = b
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&w: &u16| (w as usize) < self.d.weyl.order())
                    .ok_or_else(|| Error::Parse(format!("bad finite part in `{tok}`")))?;
                let y = Elt { t: self.d.parse_weight(a)?, w };
                x = self.mul(&x, &y);
                continue;
            }
            let k = (0..self.n_nodes())
                .find(|&k| self.node_name(k) == tok)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{tok}`")))?;
            x = self.mul(&x, &self.gens[k]);
        }
        Ok(x)
    }

    pub fn vertex_point(&self, t: u32) -> Vec<Q> {
        self.type_barycenter(t)
    }

    pub fn alcove_barycenter(&self) -> Vec<Q> {
        self.type_barycenter(0)
    }
}

pub fn q_int(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_integer(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use num_traits::One;
    use proptest::prelude::*;

    fn aff(name: &str) -> Affine {
        Affine::new(presets::builtin(name).unwrap()).unwrap()
    }

    fn random_elt(a: &Affine, seed: &[usize]) -> Elt {
        let word: Vec<usize> = seed.iter().map(|&k| k % a.n_nodes()).collect();
        a.from_word(&word)
    }

    #[test]
    fn a1_affine_reflections() {
        let a = aff("a1");
        assert_eq!(a.n_nodes(), 2);
        // s0 reflects across <a,x> = 1, s1 across <a,x> = 0.
        assert_eq!(a.reflection_hyperplane(&a.gens[0]).unwrap().level, Q::one());
        assert_eq!(a.reflection_hyperplane(&a.gens[1]).unwrap().level, Q::zero());
        assert_eq!(a.d.pair(0, &a.alcove_barycenter()), Q::new(1, 2));
        assert_eq!(a.length(&a.translation(&[1])), 2);
        assert_eq!(a.reduced_word(&a.translation(&[1])).0.len(), 2);
    }

    #[test]
    fn su3_alcove_has_length_quarter() {
        let a = aff("su3");
        assert_eq!(a.n_nodes(), 2);
        assert_eq!(a.reflection_hyperplane(&a.gens[0]).unwrap().level, Q::new(1, 4));
        // μ = 1/2 is the lattice generator: two alcoves.
        assert_eq!(a.length(&a.translation(&[1])), 2);
    }

    #[test]
    fn translation_length_is_two_rho() {
        for name in presets::BUILTIN {
            let a = aff(name);
            let m = a.rank();
            let mut box_pts = vec![vec![]];
            for _ in 0..m {
                box_pts = box_pts
                    .into_iter()
                    .flat_map(|p: Vec<i64>| (0..3).map(move |x| [p.clone(), vec![x]].concat()))
                    .collect();
            }
            for p in box_pts {
                let (mu, _) = a.d.dominant_rep(&p);
                assert_eq!(a.length(&a.translation(&mu)) as i64, a.d.pair_two_rho(&mu), "{name} {mu:?}");
            }
        }
    }

    #[test]
    fn coset_counts() {
        let a = aff("a2");
        let origin = a.origin_type();
        assert_eq!(a.min_coset_reps(origin, origin).unwrap().len(), 1);
        assert_eq!(a.min_coset_reps(origin, 0).unwrap().len(), 6);
        assert_eq!(a.min_coset_reps(origin, 1 << 1).unwrap().len(), 3);
        assert!(matches!(a.parabolic(a.all_nodes_mask()), Err(Error::Infinite(_))));
    }

    #[test]
    fn facet_examples() {
        let a = aff("a1");
        let f0 = Facet { typ: a.origin_type(), rep: a.identity() };
        assert!(a.facet_barycenter(&f0).iter().all(Zero::is_zero));
        let alc = Facet { typ: 0, rep: a.identity() };
        assert_eq!(a.d.pair(0, &a.facet_barycenter(&alc)), Q::new(1, 2));
    }

    #[test]
    fn omega_of_pgl2() {
        assert_eq!(aff("pgl2").omega().len(), 2);
        assert_eq!(aff("a1").omega().len(), 1);
    }

    #[test]
    fn bruhat_matches_subwords_a1() {
        let a = aff("a1");
        let mut elts: Vec<Elt> = Vec::new();
        for len in 0..=6usize {
            for start in 0..2 {
                let word: Vec<usize> = (0..len).map(|i| (start + i) % 2).collect();
                elts.push(a.from_word(&word));
            }
        }
        elts.sort();
        elts.dedup();
        for w in &elts {
            let (word, _) = a.reduced_word(w);
            let mut below = HashSet::new();
            for mask in 0u32..(1 << word.len()) {
                let sub: Vec<usize> = word
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &k)| k)
                    .collect();
                below.insert(a.from_word(&sub));
            }
            for v in &elts {
                assert_eq!(a.bruhat_leq(v, w), below.contains(v));
            }
        }
    }

    proptest! {
        #[test]
        fn group_laws(seeds in proptest::collection::vec(proptest::collection::vec(0usize..8, 0..8), 3),
                      preset in 0usize..presets::BUILTIN.len()) {
            let a = aff(presets::BUILTIN[preset]);
            let x = random_elt(&a, &seeds[0]);
            let y = random_elt(&a, &seeds[1]);
            let z = random_elt(&a, &seeds[2]);
            prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
            prop_assert_eq!(a.mul(&x, &a.inv(&x)), a.identity());
            prop_assert!(a.length(&a.mul(&x, &y)) <= a.length(&x) + a.length(&y));
            let (word, om) = a.reduced_word(&x);
            prop_assert_eq!(word.len() as u32, a.length(&x));
            prop_assert_eq!(a.mul(&a.from_word(&word), &om), x.clone());
            prop_assert_eq!(a.length(&om), 0);
            let b = a.alcove_barycenter();
            let f = Facet { typ: 0, rep: x.clone() };
            prop_assert_eq!(a.facet_barycenter(&f), a.act(&x, &b));
            prop_assert_eq!(a.facet_of_point(&a.act(&x, &b)), f);
        }

        #[test]
        fn exchange_property(seed in proptest::collection::vec(0usize..8, 1..8),
                             k in 0usize..8, preset in 0usize..presets::BUILTIN.len()) {
            let a = aff(presets::BUILTIN[preset]);
            let w = random_elt(&a, &seed);
            let s = &a.gens[k % a.n_nodes()];
            let sw = a.mul(s, &w);
            if a.length(&sw) < a.length(&w) {
                let (word, om) = a.reduced_word(&w);
                let found = (0..word.len()).any(|i| {
                    let mut sub = word.clone();
                    sub.remove(i);
                    a.mul(&a.from_word(&sub), &om) == sw
                });
                prop_assert!(found);
            }
        }
    }
}
