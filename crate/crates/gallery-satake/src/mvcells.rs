//! Cell decompositions of `Gr_μ ∩ S_ν` and their point counts.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::coxeter::{Affine, Elt};
use crate::gallery::{Gallery, Model};
use crate::poly::LaurentPoly;
use crate::rootdata::RelativeRootDatum;
use crate::Result;

/// A cell `A^r × G_m^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellShape {
    pub affine_dim: u32,
    pub torus_dim: u32,
}

impl CellShape {
    pub fn dim(&self) -> u32 {
        self.affine_dim + self.torus_dim
    }

    pub fn points(&self) -> LaurentPoly {
        LaurentPoly::cell(self.affine_dim, self.torus_dim)
    }
}

/// Multiset of cells.
pub type Cells = BTreeMap<CellShape, u64>;

pub fn cells_points(cells: &Cells) -> LaurentPoly {
    cells
        .iter()
        .fold(LaurentPoly::zero(), |acc, (c, &n)| &acc + &c.points().scale(n as i64))
}

/// Cells of a product of two cell-decomposed spaces.
pub fn cells_product(a: &Cells, b: &Cells) -> Cells {
    let mut out = Cells::new();
    for (x, m) in a {
        for (y, n) in b {
            let c = CellShape { affine_dim: x.affine_dim + y.affine_dim, torus_dim: x.torus_dim + y.torus_dim };
            *out.entry(c).or_insert(0) += m * n;
        }
    }
    out
}

fn cells_merge(into: &mut Cells, from: &Cells) {
    for (c, n) in from {
        *into.entry(*c).or_insert(0) += n;
    }
}

fn point_cell(r: u32) -> Cells {
    Cells::from([(CellShape { affine_dim: r, torus_dim: 0 }, 1)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Up,
    Stay,
    Down,
}

#[derive(Clone, Debug)]
pub struct Subexpression {
    pub word: Vec<usize>,
    pub trace: Vec<Elt>,
    pub moves: Vec<Move>,
}

impl Subexpression {
    pub fn shape(&self) -> CellShape {
        let count = |m| self.moves.iter().filter(|&&x| x == m).count() as u32;
        CellShape { affine_dim: count(Move::Down), torus_dim: count(Move::Stay) }
    }
}

/// Distinguished subexpressions of `word` ending at `v`: a letter that
/// lowers the current element is always taken.
pub fn distinguished_subexpressions(aff: &Affine, word: &[usize], v: &Elt) -> Vec<Subexpression> {
    let mut out = Vec::new();
    let mut trace = vec![aff.identity()];
    let mut moves = Vec::new();
    fn rec(
        aff: &Affine,
        word: &[usize],
        v: &Elt,
        trace: &mut Vec<Elt>,
        moves: &mut Vec<Move>,
        out: &mut Vec<Subexpression>,
    ) {
        let j = moves.len();
        let cur = trace.last().unwrap().clone();
        if j == word.len() {
            if &cur == v {
                out.push(Subexpression { word: word.to_vec(), trace: trace.clone(), moves: moves.clone() });
            }
            return;
        }
        let next = aff.mul(&cur, &aff.gens[word[j]]);
        let options: &[(Move, bool)] = if aff.length(&next) < aff.length(&cur) {
            &[(Move::Down, true)]
        } else {
            &[(Move::Up, true), (Move::Stay, false)]
        };
        for &(m, take) in options {
            trace.push(if take { next.clone() } else { cur.clone() });
            moves.push(m);
            rec(aff, word, v, trace, moves, out);
            trace.pop();
            moves.pop();
        }
    }
    rec(aff, word, v, &mut trace, &mut moves, &mut out);
    out
}

pub fn deodhar_cells(aff: &Affine, word: &[usize], v: &Elt) -> Cells {
    let mut out = Cells::new();
    for s in distinguished_subexpressions(aff, word, v) {
        *out.entry(s.shape()).or_insert(0) += 1;
    }
    out
}

/// Cells of `{d : δ(c, d) = u, δ(d, c') = v}` for chambers with `δ(c, c') = z`,
/// read off the expansion of `T_u T_v` along a reduced word of `v`.
pub fn chamber_pair_cells(aff: &Affine, u: &Elt, v: &Elt, z: &Elt) -> Cells {
    let (word, _) = aff.reduced_word(v);
    let mut states: HashMap<Elt, Cells> = HashMap::from([(u.clone(), point_cell(0))]);
    for &k in &word {
        let s = &aff.gens[k];
        let mut next: HashMap<Elt, Cells> = HashMap::new();
        for (x, cells) in states {
            let xs = aff.mul(&x, s);
            if aff.length(&xs) > aff.length(&x) {
                cells_merge(next.entry(xs).or_default(), &cells);
            } else {
                let down = cells.iter().map(|(c, &n)| (CellShape { affine_dim: c.affine_dim + 1, ..*c }, n)).collect();
                let stay = cells.iter().map(|(c, &n)| (CellShape { torus_dim: c.torus_dim + 1, ..*c }, n)).collect();
                cells_merge(next.entry(xs).or_default(), &down);
                cells_merge(next.entry(x).or_default(), &stay);
            }
        }
        states = next;
    }
    states.remove(z).unwrap_or_default()
}

/// Kazhdan–Lusztig `R`-polynomials by the standard recursion, memoized.
pub struct RPolynomials<'a> {
    aff: &'a Affine,
    cache: Mutex<HashMap<(Elt, Elt), LaurentPoly>>,
}

impl<'a> RPolynomials<'a> {
    pub fn new(aff: &'a Affine) -> Self {
        RPolynomials { aff, cache: Mutex::new(HashMap::new()) }
    }

    pub fn get(&self, v: &Elt, w: &Elt) -> LaurentPoly {
        let a = self.aff;
        if v == w {
            return LaurentPoly::one();
        }
        if !a.bruhat_leq(v, w) {
            return LaurentPoly::zero();
        }
        let key = (v.clone(), w.clone());
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return p.clone();
        }
        let lw = a.length(w);
        let s = (0..a.gens.len())
            .map(|k| &a.gens[k])
            .find(|s| a.length(&a.mul(s, w)) < lw)
            .expect("w is not the identity");
        let sw = a.mul(s, w);
        let sv = a.mul(s, v);
        let p = if a.length(&sv) < a.length(v) {
            self.get(&sv, &sw)
        } else {
            let qm1 = LaurentPoly::q_pow(1) - LaurentPoly::one();
            &(&qm1 * &self.get(v, &sw)) + &self.get(&sv, &sw).shift(1)
        };
        self.cache.lock().unwrap().insert(key, p.clone());
        p
    }
}

pub fn r_polynomial(aff: &Affine, v: &Elt, w: &Elt) -> LaurentPoly {
    RPolynomials::new(aff).get(v, w)
}

/// `|Gr_μ(F_q)|`: one Iwahori orbit per `λ ∈ W₀μ`, of dimension the length
/// of the shortest element of `t_λ W₀`.
pub fn grassmannian_points(aff: &Affine, mu: &[i64]) -> LaurentPoly {
    let w0 = aff.parabolic(aff.origin_type()).expect("finite Weyl group");
    let mut out = LaurentPoly::zero();
    for lam in aff.d.orbit(mu) {
        let t = aff.translation(&lam);
        let l = w0.iter().map(|w| aff.length(&aff.mul(&t, w))).min().unwrap();
        out.add_term(l as i32, 1);
    }
    out
}

/// `Gr_μ ∩ S_ν ≠ ∅` iff `ν⁺ ≤ μ`.
pub fn intersection_nonempty(d: &RelativeRootDatum, mu: &[i64], nu: &[i64]) -> bool {
    d.dominance_leq(&d.dominant_rep(nu).0, mu)
}

impl Model {
    /// Cells of `C_δ ∩ Gr_μ` for a positively folded `δ`.
    pub fn gallery_cells(&self, g: &Gallery) -> Cells {
        let a = &self.aff;
        let gt = &g.gt;
        if g.idx.is_empty() {
            return point_cell(0);
        }
        let p = self.prefixes(g);
        let mut out = point_cell(self.load_bearing_at(g, &p, 0));
        for j in 1..g.idx.len() {
            let slot = &gt.slots[j];
            let delta = &slot.reps[g.idx[j] as usize];
            let tau = &slot.reps[slot.tau as usize];
            let z = self.chamber_toward_minus_infinity(&p[j], gt.small[j]);
            let zinv = a.inv(&z);
            let large = a.parabolic(gt.large[j]).expect("finite");
            let mut xs: Vec<Elt> = a
                .parabolic(gt.large[j - 1])
                .expect("finite")
                .iter()
                .map(|u| a.min_rep(&a.mul(u, tau), gt.large[j]))
                .collect();
            xs.sort();
            xs.dedup();
            let mut local = Cells::new();
            for x in &xs {
                for w in large.iter() {
                    let v = a.mul(&a.mul(&zinv, delta), w);
                    cells_merge(&mut local, &chamber_pair_cells(a, x, &a.inv(&v), &z));
                }
            }
            out = cells_product(&out, &local);
        }
        out
    }

    /// The `z ∈ W_t` with `x z C_f` the alcove at `x F_t` facing `C_{-∞}`.
    fn chamber_toward_minus_infinity(&self, x: &Elt, t: u32) -> Elt {
        let a = &self.aff;
        let d = self.d();
        let walls: Vec<(usize, crate::Q)> = (0..d.n_pos)
            .filter_map(|r| a.contained_level(x, t, r).map(|m| (r, m)))
            .collect();
        let base = a.alcove_barycenter();
        a.parabolic(t)
            .expect("finite")
            .iter()
            .find(|z| {
                let b = a.act(&a.mul(x, z), &base);
                walls.iter().all(|&(r, m)| d.pair(r, &b) < m)
            })
            .expect("some alcove faces C_{-∞}")
            .clone()
    }

    fn load_bearing_at(&self, g: &Gallery, p: &[Elt], j: usize) -> u32 {
        let a = &self.aff;
        let d = self.d();
        let bary = a.act(&p[j + 1], &a.type_barycenter(g.gt.large[j]));
        (0..d.n_pos)
            .filter(|&r| a.contained_level(&p[j], g.gt.small[j], r).is_some_and(|m| d.pair(r, &bary) > m))
            .count() as u32
    }

    /// Cells of `Gr_μ ∩ S_ν` for every `ν`, keyed by `ν`.
    pub fn all_cell_shapes(&self, mu: &[i64]) -> Result<BTreeMap<Vec<i64>, Cells>> {
        let g0 = self.gamma_mu(mu)?;
        let pos = self.positively_folded(&g0.gt);
        let per: Vec<(Vec<i64>, Cells)> = pos
            .par_iter()
            .map(|g| (self.target(g), self.gallery_cells(g)))
            .collect();
        let mut out: BTreeMap<Vec<i64>, Cells> = BTreeMap::new();
        for (nu, c) in per {
            cells_merge(out.entry(nu).or_default(), &c);
        }
        out.retain(|_, c| {
            c.retain(|_, n| *n > 0);
            !c.is_empty()
        });
        Ok(out)
    }

    pub fn cell_shapes(&self, mu: &[i64], nu: &[i64]) -> Result<Cells> {
        Ok(self.all_cell_shapes(mu)?.remove(nu).unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn model(name: &str) -> Model {
        Model::from_preset(name).unwrap()
    }

    #[test]
    fn rank_one_cells() {
        let m = model("a1");
        let a = &m.aff;
        let s = a.gens[1].clone();
        assert_eq!(cells_points(&deodhar_cells(a, &[1], &s)), LaurentPoly::one());
        assert_eq!(cells_points(&deodhar_cells(a, &[1], &a.identity())).to_string(), "q-1");
        assert_eq!(r_polynomial(a, &a.identity(), &s).to_string(), "q-1");
    }

    #[test]
    fn a2_longest_element() {
        let m = model("a2");
        let a = &m.aff;
        let w = a.from_word(&[1, 2, 1]);
        let cells = deodhar_cells(a, &[1, 2, 1], &a.identity());
        assert_eq!(cells_points(&cells), r_polynomial(a, &a.identity(), &w));
        assert_eq!(cells_points(&cells).to_string(), "q^3-2q^2+2q-1");
    }

    #[test]
    fn grassmannian_rank_one() {
        let m = model("a1");
        assert_eq!(grassmannian_points(&m.aff, &[1]).to_string(), "q^2+q");
        assert_eq!(grassmannian_points(&m.aff, &[0]), LaurentPoly::one());
    }

    #[test]
    fn deodhar_matches_r_polynomials() {
        for name in ["a2", "b2", "g2", "su3", "a3t"] {
            let m = model(name);
            let a = &m.aff;
            let r = RPolynomials::new(a);
            let all = a.all_nodes_mask();
            for k in 0..a.n_nodes() {
                let t = all & !(1 << k);
                if !a.is_finite_type(t) {
                    continue;
                }
                let group = a.parabolic(t).unwrap();
                for w in group.iter().filter(|w| a.length(w) <= 7) {
                    let (word, _) = a.reduced_word(w);
                    for v in group.iter() {
                        assert_eq!(cells_points(&deodhar_cells(a, &word, v)), r.get(v, w), "{name}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn r_polynomial_degree(i in 0usize..48, j in 0usize..48) {
            let m = model("b2");
            let a = &m.aff;
            let group = a.parabolic(a.origin_type()).unwrap();
            let (v, w) = (&group[i % group.len()], &group[j % group.len()]);
            let p = r_polynomial(a, v, w);
            if a.bruhat_leq(v, w) {
                prop_assert_eq!(p.degree(), Some((a.length(w) - a.length(v)) as i32));
            } else {
                prop_assert!(p.is_zero());
            }
        }
    }

    #[test]
    fn global_point_count() {
        for name in ["a1", "a2", "b2", "su3", "a3t", "pgl2", "g2"] {
            let m = model(name);
            let d = m.d();
            let mut pts = vec![vec![]];
            for _ in 0..d.rank {
                pts = pts.into_iter().flat_map(|p: Vec<i64>| (0..=6).map(move |x| [p.clone(), vec![x]].concat())).collect();
            }
            for mu in pts.into_iter().filter(|p| d.is_dominant(p) && d.pair_two_rho(p) <= 6) {
                let cells = m.all_cell_shapes(&mu).unwrap();
                let total = cells.values().fold(LaurentPoly::zero(), |acc, c| &acc + &cells_points(c));
                assert_eq!(total, grassmannian_points(&m.aff, &mu), "{name} {mu:?}");
            }
        }
    }

    #[test]
    fn top_cells_count_ls_galleries() {
        for name in ["a1", "a2", "b2", "su3", "a3t", "pgl2", "g2"] {
            let m = model(name);
            let d = m.d();
            let mut pts = vec![vec![]];
            for _ in 0..d.rank {
                pts = pts.into_iter().flat_map(|p: Vec<i64>| (0..=6).map(move |x| [p.clone(), vec![x]].concat())).collect();
            }
            for mu in pts.into_iter().filter(|p| d.is_dominant(p) && d.pair_two_rho(p) <= 6) {
                let ls = m.ls_galleries(&mu).unwrap();
                for (nu, cells) in m.all_cell_shapes(&mu).unwrap() {
                    let s: Vec<i64> = mu.iter().zip(&nu).map(|(a, b)| a + b).collect();
                    let top = m.rho(&s) as u32;
                    assert!(cells.keys().all(|c| c.dim() <= top), "{name} {mu:?} {nu:?}");
                    let n: u64 = cells.iter().filter(|(c, _)| c.dim() == top).map(|(_, n)| n).sum();
                    let want = ls.iter().filter(|g| m.target(g) == nu).count() as u64;
                    assert_eq!(n, want, "{name} {mu:?} {nu:?}");
                }
            }
        }
    }
}
