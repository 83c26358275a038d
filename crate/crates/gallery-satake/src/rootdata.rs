//! Absolute root data with an inertia automorphism, and the relative
//! (échelonnage) data derived from them.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::{self, IMat, QMat};
use crate::{Error, Result, Q};

/// How the cocharacter lattice sits between coroots and coweights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    Coroot,
    Coweight,
    /// Rows are basis vectors written in fundamental coweight coordinates.
    Basis(IMat),
}

#[derive(Clone, Debug)]
pub struct BasedRootDatum {
    /// `cartan[i][j] = <α_i, α_j^∨>`.
    pub cartan: IMat,
    /// `σ(α_i) = α_{perm[i]}`.
    pub perm: Vec<usize>,
    /// `roots[i][k] = <α_i, b_k>` for the lattice basis `b`.
    pub roots: IMat,
    /// `coroots[j]` is `α_j^∨` in lattice coordinates.
    pub coroots: IMat,
    /// Action of `σ` on lattice coordinates.
    pub sigma: IMat,
}

/// An absolute root with its coroot, both expressed on the lattice.
#[derive(Clone, Debug)]
pub struct AbsRoot {
    pub coeffs: Vec<i64>,
    pub func: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl BasedRootDatum {
    pub fn new(cartan: IMat, perm: Vec<usize>, lattice: &LatticeSpec) -> Result<Self> {
        let n = cartan.len();
        check_cartan(&cartan)?;
        if perm.len() != n || !is_permutation(&perm) {
            return Err(Error::Preset("automorphism is not a permutation of the simple nodes".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if cartan[perm[i]][perm[j]] != cartan[i][j] {
                    return Err(Error::Preset("automorphism does not preserve the Cartan matrix".into()));
                }
            }
        }
        let pmat: IMat = (0..n)
            .map(|r| (0..n).map(|c| i64::from(perm[c] == r)).collect())
            .collect();
        let (roots, coroots, sigma) = match lattice {
            LatticeSpec::Coroot => (cartan.clone(), linalg::identity(n), pmat),
            LatticeSpec::Coweight => (linalg::identity(n), linalg::transpose(&cartan), pmat),
            LatticeSpec::Basis(b) => {
                if b.len() != n || b.iter().any(|r| r.len() != n) {
                    return Err(Error::Preset("lattice basis must be a square matrix".into()));
                }
                let bt = linalg::to_q(&linalg::transpose(b));
                let inv = linalg::qinverse(&bt)
                    .ok_or_else(|| Error::Preset("lattice basis is singular".into()))?;
                let roots = linalg::transpose(b);
                let cor: QMat = (0..n)
                    .map(|j| {
                        let col: Vec<Q> = (0..n).map(|i| Q::from_integer(cartan[i][j])).collect();
                        linalg::qmul_vec(&inv, &col)
                    })
                    .collect();
                let coroots = linalg::as_integer_matrix(&cor).ok_or_else(|| {
                    Error::Preset("lattice does not contain the coroot lattice".into())
                })?;
                let s = linalg::qmul(&linalg::qmul(&inv, &linalg::to_q(&pmat)), &bt);
                let sigma = linalg::as_integer_matrix(&s)
                    .ok_or_else(|| Error::Preset("lattice is not stable under the automorphism".into()))?;
                (roots, coroots, sigma)
            }
        };
        let d = BasedRootDatum { cartan, perm, roots, coroots, sigma };
        let order = d.sigma_order();
        if order == 0 || 6 % order != 0 {
            return Err(Error::Preset("automorphism order must divide 6".into()));
        }
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn sigma_order(&self) -> usize {
        let n = self.rank();
        let id = linalg::identity(n);
        let mut m = self.sigma.clone();
        for k in 1..=12 {
            if m == id {
                return k;
            }
            m = linalg::imul(&self.sigma, &m);
        }
        0
    }

    /// All roots, generated from the simple ones by reflection.
    pub fn all_roots(&self) -> Vec<AbsRoot> {
        let n = self.rank();
        let a = &self.cartan;
        let mut seen: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let e: Vec<i64> = (0..n).map(|k| i64::from(k == i)).collect();
            seen.insert(e.clone(), e.clone());
            queue.push_back((e.clone(), e));
        }
        while let Some((b, c)) = queue.pop_front() {
            for i in 0..n {
                let bi: i64 = (0..n).map(|j| b[j] * a[j][i]).sum();
                let ci: i64 = (0..n).map(|j| a[i][j] * c[j]).sum();
                let mut nb = b.clone();
                nb[i] -= bi;
                let mut nc = c.clone();
                nc[i] -= ci;
                if !seen.contains_key(&nb) {
                    seen.insert(nb.clone(), nc.clone());
                    queue.push_back((nb, nc));
                }
            }
        }
        seen.into_iter()
            .map(|(coeffs, cc)| {
                let func = (0..n)
                    .map(|k| (0..n).map(|i| coeffs[i] * self.roots[i][k]).sum())
                    .collect();
                let coroot = (0..n)
                    .map(|k| (0..n).map(|j| cc[j] * self.coroots[j][k]).sum())
                    .collect();
                AbsRoot { coeffs, func, coroot }
            })
            .collect()
    }

    pub fn is_split(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

fn check_cartan(a: &IMat) -> Result<()> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::Preset("Cartan matrix must be square and nonempty".into()));
    }
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(Error::Preset(format!("Cartan diagonal entry {i} is not 2")));
        }
        for j in 0..n {
            if i != j {
                if a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0) || a[i][j] * a[j][i] >= 4 {
                    return Err(Error::Preset(format!("invalid Cartan entry ({i},{j})")));
                }
            }
        }
    }
    // Finite type: the symmetrized matrix is positive definite.
    let mut d = vec![None::<Q>; n];
    d[0] = Some(Q::one());
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if let (Some(di), None) = (d[i], d[j]) {
                    if a[i][j] != 0 {
                        d[j] = Some(di * Q::new(a[j][i], a[i][j]));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            if let Some(k) = d.iter().position(Option::is_none) {
                d[k] = Some(Q::one());
                changed = true;
            }
        }
    }
    let sym: QMat = (0..n)
        .map(|i| (0..n).map(|j| d[i].unwrap() * Q::from_integer(a[i][j])).collect())
        .collect();
    for k in 1..=n {
        let minor: QMat = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
        if qdet(&minor) <= Q::zero() {
            return Err(Error::Preset("Cartan matrix is not of finite type".into()));
        }
    }
    Ok(())
}

fn qdet(m: &QMat) -> Q {
    let n = m.len();
    let mut m = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            let pivot = m[c].clone();
            for (x, y) in m[r].iter_mut().zip(pivot) {
                *x -= f * y;
            }
        }
    }
    d
}

/// The quotient `X / (σ - 1) X` with its projection.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub rank: usize,
    /// `rank x n` integer matrix of the projection.
    pub map: IMat,
    pub torsion: Vec<i64>,
}

pub fn coinvariants(datum: &BasedRootDatum) -> Result<Coinvariants> {
    let n = datum.rank();
    let mut m = datum.sigma.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= 1;
    }
    let (u, d) = linalg::diagonalize(&m);
    let torsion: Vec<i64> = d.iter().copied().filter(|&x| x > 1).collect();
    if !torsion.is_empty() {
        return Err(Error::Torsion(torsion));
    }
    let mut map: IMat = (0..n).filter(|&i| d[i] == 0).map(|i| u[i].clone()).collect();
    let rank = map.len();
    // Prefer the basis given by images of orbit representatives of simple coroots.
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if !reps.iter().any(|&r| same_orbit(&datum.perm, r, i)) {
            reps.push(i);
        }
    }
    if reps.len() == rank {
        let g: IMat = linalg::transpose(
            &reps
                .iter()
                .map(|&r| linalg::imul_vec(&map, &datum.coroots[r]))
                .collect::<Vec<_>>(),
        );
        if linalg::det(&g).abs() == 1 {
            let gi = linalg::qinverse(&linalg::to_q(&g)).expect("unimodular");
            let gi = linalg::as_integer_matrix(&gi).expect("unimodular inverse");
            map = linalg::imul(&gi, &map);
        }
    }
    Ok(Coinvariants { rank, map, torsion })
}

fn same_orbit(perm: &[usize], a: usize, b: usize) -> bool {
    let mut x = a;
    loop {
        if x == b {
            return true;
        }
        x = perm[x];
        if x == a {
            return false;
        }
    }
}

/// A relative root with its coroot image and jump.
#[derive(Clone, Debug)]
pub struct RelRoot {
    /// `<a, e_k>_S` on the coinvariant basis.
    pub func: Vec<Q>,
    pub coroot: Vec<i64>,
    pub jump: Q,
    /// The échelonnage root `a / u_a`, integral on the lattice.
    pub ech: Vec<i64>,
    /// The échelonnage coroot `u_a a^∨`.
    pub ech_coroot: Vec<i64>,
    pub positive: bool,
}

/// The finite relative Weyl group, enumerated.
#[derive(Clone, Debug)]
pub struct Weyl {
    pub mats: Vec<IMat>,
    pub index: HashMap<IMat, u16>,
    pub mult: Vec<Vec<u16>>,
    pub inv: Vec<u16>,
    pub len: Vec<u32>,
    /// Reduced words in simple relative indices.
    pub words: Vec<Vec<usize>>,
    /// `root_perm[w][r]` is the index of `w·a_r`.
    pub root_perm: Vec<Vec<u16>>,
    pub simple_refl: Vec<u16>,
    /// Reflection `s_a` for each root index.
    pub refl: Vec<u16>,
    pub longest: u16,
}

impl Weyl {
    pub fn order(&self) -> usize {
        self.mats.len()
    }
    pub fn act(&self, w: u16, v: &[i64]) -> Vec<i64> {
        linalg::imul_vec(&self.mats[w as usize], v)
    }
    pub fn act_q(&self, w: u16, v: &[Q]) -> Vec<Q> {
        self.mats[w as usize]
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Q::zero(), |s, (&a, b)| s + Q::from_integer(a) * b)
            })
            .collect()
    }
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize][b as usize]
    }
}

const WEYL_CAP: usize = 2000;

#[derive(Clone, Debug)]
pub struct RelativeRootDatum {
    pub name: String,
    pub absolute: BasedRootDatum,
    pub coinv: Coinvariants,
    pub rank: usize,
    /// Positive roots occupy `0..n_pos`; root `r + n_pos` is `-a_r`.
    pub roots: Vec<RelRoot>,
    pub n_pos: usize,
    pub simple: Vec<usize>,
    /// `<2ρ, ->`, integral on the lattice.
    pub two_rho: Vec<i64>,
    pub weyl: Weyl,
    /// Display coordinate of lattice basis vector `k` is `display_scale[k]`.
    pub display_scale: Vec<Q>,
}

impl RelativeRootDatum {
    /// Builds the relative datum. `jumps` lists `u_a` per simple relative root;
    /// `None` means every jump is 1, accepted only for split data.
    pub fn new(
        name: &str,
        absolute: BasedRootDatum,
        jumps: Option<Vec<Q>>,
        display_scale: Option<Vec<Q>>,
    ) -> Result<Self> {
        let coinv = coinvariants(&absolute)?;
        let m = coinv.rank;
        let n = absolute.rank();
        let abs_roots = absolute.all_roots();

        // Rational right inverse of the projection, then averaging over σ.
        let qm = linalg::to_q(&coinv.map);
        let qmt = linalg::transpose(&qm);
        let gram = linalg::qmul(&qm, &qmt);
        let right = linalg::qmul(&qmt, &linalg::qinverse(&gram).expect("projection has full rank"));
        let order = absolute.sigma_order();
        let mut avg: QMat = vec![vec![Q::zero(); n]; n];
        let mut p = linalg::identity(n);
        for _ in 0..order {
            for i in 0..n {
                for j in 0..n {
                    avg[i][j] += Q::new(p[i][j], order as i64);
                }
            }
            p = linalg::imul(&absolute.sigma, &p);
        }
        let lift = linalg::qmul(&avg, &right);
        let restrict = |func: &[i64]| -> Vec<Q> {
            (0..m)
                .map(|c| (0..n).fold(Q::zero(), |s, k| s + Q::from_integer(func[k]) * lift[k][c]))
                .collect()
        };
        let sigma_coroot = |c: &[i64]| linalg::imul_vec(&absolute.sigma, c);

        struct Cand {
            func: Vec<Q>,
            orbit_sum: Vec<i64>,
            positive: bool,
            simple_of: Option<usize>,
        }
        let simple_orbit_rep: Vec<usize> = (0..n)
            .map(|i| (0..n).find(|&r| same_orbit(&absolute.perm, r, i)).unwrap())
            .collect();
        let mut cands: Vec<Cand> = Vec::new();
        for r in &abs_roots {
            let f = restrict(&r.func);
            if f.iter().all(Zero::is_zero) {
                return Err(Error::Preset("a root restricts to zero".into()));
            }
            let mut sum = r.coroot.clone();
            let mut c = sigma_coroot(&r.coroot);
            while c != r.coroot {
                for (s, x) in sum.iter_mut().zip(&c) {
                    *s += x;
                }
                c = sigma_coroot(&c);
            }
            let simple_of = r
                .coeffs
                .iter()
                .position(|&x| x == 1)
                .filter(|_| r.coeffs.iter().sum::<i64>() == 1)
                .map(|i| simple_orbit_rep[i]);
            cands.push(Cand {
                func: f,
                orbit_sum: linalg::imul_vec(&coinv.map, &sum),
                positive: r.coeffs.iter().all(|&x| x >= 0),
                simple_of,
            });
        }

        // Keep one nondivisible representative per ray.
        let mut kept: Vec<usize> = Vec::new();
        for (i, c) in cands.iter().enumerate() {
            if !c.positive {
                continue;
            }
            let shorter = cands
                .iter()
                .any(|d| d.positive && proportional(&d.func, &c.func).is_some_and(|t| t < Q::one()));
            if shorter || kept.iter().any(|&k| cands[k].func == c.func) {
                continue;
            }
            kept.push(i);
        }
        kept.sort_by(|&a, &b| cands[a].func.cmp(&cands[b].func));

        let mut simple_order: Vec<(usize, usize)> = kept
            .iter()
            .enumerate()
            .filter_map(|(pos, &k)| {
                let f = &cands[k].func;
                cands
                    .iter()
                    .filter(|c| &c.func == f)
                    .filter_map(|c| c.simple_of)
                    .min()
                    .map(|s| (s, pos))
            })
            .collect();
        simple_order.sort();
        let simple: Vec<usize> = simple_order.iter().map(|&(_, pos)| pos).collect();
        if simple.len() != m {
            return Err(Error::Preset(format!(
                "relative datum is not semisimple: {} simple roots on a rank-{} lattice",
                simple.len(),
                m
            )));
        }

        let n_pos = kept.len();
        let mut roots: Vec<RelRoot> = Vec::with_capacity(2 * n_pos);
        for &k in &kept {
            let c = &cands[k];
            let pair = linalg::dot_int(&c.func, &c.orbit_sum);
            let cor: Vec<Q> = c
                .orbit_sum
                .iter()
                .map(|&x| Q::from_integer(2 * x) / pair)
                .collect();
            let coroot = linalg::as_integer_vec(&cor)
                .ok_or_else(|| Error::Preset("coroot image is not integral".into()))?;
            roots.push(RelRoot {
                func: c.func.clone(),
                coroot,
                jump: Q::one(),
                ech: vec![],
                ech_coroot: vec![],
                positive: true,
            });
        }
        for p in 0..n_pos {
            let r = &roots[p];
            roots.push(RelRoot {
                func: r.func.iter().map(|x| -x).collect(),
                coroot: r.coroot.iter().map(|x| -x).collect(),
                jump: Q::one(),
                ech: vec![],
                ech_coroot: vec![],
                positive: false,
            });
        }

        let weyl = build_weyl(&roots, &simple, n_pos, m)?;

        let jumps = match jumps {
            Some(j) if j.len() == m => j,
            Some(_) => return Err(Error::Preset("one jump per simple relative root is required".into())),
            None if absolute.is_split() => vec![Q::one(); m],
            None => {
                return Err(Error::Preset(
                    "jumps are neither tabulated nor overridden for a non-split datum".into(),
                ))
            }
        };
        if jumps.iter().any(|u| *u <= Q::zero()) {
            return Err(Error::Preset("jumps must be positive".into()));
        }
        // Jumps are W0-invariant: propagate from simple roots.
        let mut jump: Vec<Option<Q>> = vec![None; 2 * n_pos];
        for (i, &s) in simple.iter().enumerate() {
            for w in 0..weyl.order() {
                let r = weyl.root_perm[w][s] as usize;
                jump[r].get_or_insert(jumps[i]);
                if jump[r] != Some(jumps[i]) {
                    return Err(Error::Preset("jump table is not W0-invariant".into()));
                }
            }
        }
        for (r, root) in roots.iter_mut().enumerate() {
            let u = jump[r].ok_or_else(|| Error::Preset("root not conjugate to a simple root".into()))?;
            root.jump = u;
            let ech: Vec<Q> = root.func.iter().map(|x| x / u).collect();
            root.ech = linalg::as_integer_vec(&ech).ok_or_else(|| {
                Error::Preset("jump does not divide the root values on the lattice".into())
            })?;
            let ec: Vec<Q> = root.coroot.iter().map(|&x| Q::from_integer(x) * u).collect();
            root.ech_coroot = linalg::as_integer_vec(&ec)
                .ok_or_else(|| Error::Preset("scaled coroot is not in the lattice".into()))?;
        }
        for b in &roots {
            for (ci, c) in roots.iter().enumerate() {
                let shift = linalg::dot_int(&c.func, &b.coroot) * b.jump / c.jump;
                if !shift.is_integer() {
                    return Err(Error::Preset(format!(
                        "jumps are incompatible: reflections do not preserve the walls of root {ci}"
                    )));
                }
            }
        }

        let two_rho = (0..m).map(|k| roots[..n_pos].iter().map(|r| r.ech[k]).sum()).collect();
        let display_scale = display_scale.unwrap_or_else(|| vec![Q::one(); m]);
        if display_scale.len() != m {
            return Err(Error::Preset("display scale has the wrong length".into()));
        }
        let d = RelativeRootDatum {
            name: name.to_string(),
            absolute,
            coinv,
            rank: m,
            roots,
            n_pos,
            simple,
            two_rho,
            weyl,
            display_scale,
        };
        for r in 0..n_pos {
            let v = d.pair_two_rho(&d.roots[r].coroot);
            if v < 0 || v % 2 != 0 {
                return Err(Error::Preset("<2ρ, a^∨> is not an even non-negative integer".into()));
            }
        }
        Ok(d)
    }

    pub fn pair(&self, r: usize, x: &[Q]) -> Q {
        linalg::dot(&self.roots[r].func, x)
    }

    pub fn pair_int(&self, r: usize, x: &[i64]) -> Q {
        linalg::dot_int(&self.roots[r].func, x)
    }

    /// `<a / u_a, x>` for a lattice element, an integer.
    pub fn pair_ech(&self, r: usize, x: &[i64]) -> i64 {
        self.roots[r].ech.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn pair_two_rho(&self, x: &[i64]) -> i64 {
        self.two_rho.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn pair_two_rho_q(&self, x: &[Q]) -> Q {
        self.two_rho
            .iter()
            .zip(x)
            .fold(Q::zero(), |s, (&a, b)| s + Q::from_integer(a) * b)
    }

    /// `<ρ, x>`, or `None` when it is not an integer.
    pub fn pair_rho(&self, x: &[i64]) -> Option<i64> {
        let v = self.pair_two_rho(x);
        v.is_even().then_some(v / 2)
    }

    pub fn neg(&self, r: usize) -> usize {
        if r < self.n_pos {
            r + self.n_pos
        } else {
            r - self.n_pos
        }
    }

    /// Returns `(ν⁺, w)` with `w·ν = ν⁺` dominant and `w` of minimal length.
    pub fn dominant_rep(&self, nu: &[i64]) -> (Vec<i64>, u16) {
        let mut v = nu.to_vec();
        let mut w: u16 = 0;
        loop {
            let Some(i) = (0..self.simple.len()).find(|&i| self.pair_ech(self.simple[i], &v) < 0) else {
                return (v, w);
            };
            let s = self.weyl.simple_refl[i];
            v = self.weyl.act(s, &v);
            w = self.weyl.mul(s, w);
        }
    }

    pub fn is_dominant(&self, nu: &[i64]) -> bool {
        self.simple.iter().all(|&s| self.pair_ech(s, nu) >= 0)
    }

    /// Coefficients of `x` in the basis of simple échelonnage coroots.
    pub fn simple_coroot_coords(&self, x: &[i64]) -> Vec<Q> {
        let cols: QMat = linalg::transpose(
            &self
                .simple
                .iter()
                .map(|&s| self.roots[s].ech_coroot.iter().map(|&v| Q::from_integer(v)).collect())
                .collect::<Vec<Vec<Q>>>(),
        );
        let b: Vec<Q> = x.iter().map(|&v| Q::from_integer(v)).collect();
        linalg::qsolve(&cols, &b).expect("simple coroots are independent")
    }

    /// `ν ≤ μ`: the difference is a non-negative integral combination of the
    /// simple échelonnage coroots `u_a a^∨`.
    pub fn dominance_leq(&self, nu: &[i64], mu: &[i64]) -> bool {
        let diff: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a - b).collect();
        self.simple_coroot_coords(&diff)
            .iter()
            .all(|c| c.is_integer() && *c >= Q::zero())
    }

    /// Literal variant using the coroot images `a^∨` themselves.
    pub fn dominance_leq_coroot_images(&self, nu: &[i64], mu: &[i64]) -> bool {
        let diff: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a - b).collect();
        self.simple_coroot_coords(&diff)
            .iter()
            .zip(&self.simple)
            .all(|(c, &s)| {
                let k = c * self.roots[s].jump;
                k.is_integer() && k >= Q::zero()
            })
    }

    pub fn orbit(&self, nu: &[i64]) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = (0..self.weyl.order())
            .map(|w| self.weyl.act(w as u16, nu))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Lattice automorphism inducing the permutation `perm` of simple roots.
    pub fn diagram_automorphism(&self, perm: &[usize]) -> Result<IMat> {
        let m = self.rank;
        if perm.len() != m || !is_permutation(perm) {
            return Err(Error::Preset("diagram automorphism must permute the simple roots".into()));
        }
        let cols = |p: &dyn Fn(usize) -> usize| -> QMat {
            linalg::transpose(
                &(0..m)
                    .map(|i| {
                        self.roots[self.simple[p(i)]]
                            .ech_coroot
                            .iter()
                            .map(|&v| Q::from_integer(v))
                            .collect()
                    })
                    .collect::<Vec<Vec<Q>>>(),
            )
        };
        let c = cols(&|i| i);
        let cp = cols(&|i| perm[i]);
        let mq = linalg::qmul(&cp, &linalg::qinverse(&c).expect("independent"));
        let mat = linalg::as_integer_matrix(&mq)
            .ok_or_else(|| Error::Preset("permutation does not preserve the lattice".into()))?;
        let inv = linalg::qinverse(&mq).expect("invertible");
        for r in &self.roots {
            let f: Vec<Q> = (0..m).map(|k| (0..m).fold(Q::zero(), |s, j| s + r.func[j] * inv[j][k])).collect();
            if !self.roots.iter().any(|x| x.func == f) {
                return Err(Error::Preset("permutation does not preserve the roots".into()));
            }
        }
        Ok(mat)
    }

    pub fn parse_weight(&self, s: &str) -> Result<Vec<i64>> {
        let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.len() != self.rank {
            return Err(Error::Parse(format!(
                "weight `{s}` needs {} coordinates",
                self.rank
            )));
        }
        parts
            .iter()
            .zip(&self.display_scale)
            .map(|(p, sc)| {
                let x = linalg::parse_q(p).ok_or_else(|| Error::Parse(format!("bad coordinate `{p}`")))?;
                let v = x / sc;
                v.is_integer()
                    .then(|| v.to_integer())
                    .ok_or_else(|| Error::Parse(format!("`{s}` is not a lattice point")))
            })
            .collect()
    }

    pub fn fmt_weight(&self, v: &[i64]) -> String {
        v.iter()
            .zip(&self.display_scale)
            .map(|(&x, sc)| linalg::fmt_q(&(Q::from_integer(x) * sc)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn proportional(a: &[Q], b: &[Q]) -> Option<Q> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let t = a[k] / b[k];
    (t > Q::zero() && a.iter().zip(b).all(|(x, y)| *x == t * y)).then_some(t)
}

fn build_weyl(roots: &[RelRoot], simple: &[usize], n_pos: usize, m: usize) -> Result<Weyl> {
    let reflection = |r: &RelRoot| -> Result<IMat> {
        let mut mat = linalg::identity(m);
        for i in 0..m {
            for j in 0..m {
                let v = Q::from_integer(r.coroot[i]) * r.func[j];
                if !v.is_integer() {
                    return Err(Error::Preset("reflection is not integral on the lattice".into()));
                }
                mat[i][j] -= v.to_integer();
            }
        }
        Ok(mat)
    };
    let gens: Vec<IMat> = simple.iter().map(|&s| reflection(&roots[s])).collect::<Result<_>>()?;
    let id = linalg::identity(m);
    let mut mats = vec![id.clone()];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut index: HashMap<IMat, u16> = HashMap::from([(id, 0)]);
    let mut head = 0;
    while head < mats.len() {
        for (i, g) in gens.iter().enumerate() {
            let p = linalg::imul(&mats[head], g);
            if !index.contains_key(&p) {
                if mats.len() >= WEYL_CAP {
                    return Err(Error::Preset("finite Weyl group is too large or infinite".into()));
                }
                index.insert(p.clone(), mats.len() as u16);
                let mut w = words[head].clone();
                w.push(i);
                words.push(w);
                mats.push(p);
            }
        }
        head += 1;
    }
    let size = mats.len();
    let mult: Vec<Vec<u16>> = mats
        .iter()
        .map(|a| mats.iter().map(|b| index[&linalg::imul(a, b)]).collect())
        .collect();
    let inv: Vec<u16> = (0..size)
        .map(|a| (0..size).find(|&b| mult[a][b] == 0).unwrap() as u16)
        .collect();
    let func_index: HashMap<Vec<Q>, u16> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.func.clone(), i as u16))
        .collect();
    let mut root_perm = Vec::with_capacity(size);
    for w in 0..size {
        let wi = &mats[inv[w] as usize];
        let row = roots
            .iter()
            .map(|r| {
                let f: Vec<Q> = (0..m)
                    .map(|k| (0..m).fold(Q::zero(), |s, j| s + r.func[j] * Q::from_integer(wi[j][k])))
                    .collect();
                func_index
                    .get(&f)
                    .copied()
                    .ok_or_else(|| Error::Preset("Weyl group does not preserve the relative roots".into()))
            })
            .collect::<Result<Vec<u16>>>()?;
        root_perm.push(row);
    }
    let len: Vec<u32> = (0..size)
        .map(|w| (0..n_pos).filter(|&r| root_perm[w][r] as usize >= n_pos).count() as u32)
        .collect();
    let refl = roots
        .iter()
        .map(|r| index.get(&reflection(r)?).copied().ok_or_else(|| Error::Preset("reflection outside W0".into())))
        .collect::<Result<Vec<u16>>>()?;
    let simple_refl = simple.iter().map(|&s| refl[s]).collect();
    let longest = (0..size).max_by_key(|&w| len[w]).unwrap() as u16;
    Ok(Weyl { mats, index, mult, inv, len, words, root_perm, simple_refl, refl, longest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn su3_coinvariants_identify_coroots() {
        let d = presets::builtin("su3").unwrap();
        assert_eq!(d.rank, 1);
        let c = &d.coinv.map;
        assert_eq!(linalg::imul_vec(c, &[1, 0]), linalg::imul_vec(c, &[0, 1]));
        assert_eq!(d.roots[0].jump, Q::new(1, 4));
        assert_eq!(d.pair_two_rho(&[1]), 2);
        assert_eq!(d.fmt_weight(&[1]), "1/2");
    }

    #[test]
    fn split_identity_map() {
        let d = presets::builtin("a2").unwrap();
        assert_eq!(d.coinv.map, linalg::identity(2));
        assert_eq!(d.weyl.order(), 6);
        assert_eq!(d.pair_two_rho(&[1, 1]), 4);
    }

    #[test]
    fn twisted_ranks_and_orders() {
        for (name, rank, order) in [("a3t", 2, 8), ("d4t", 2, 12), ("su3", 1, 2)] {
            let d = presets::builtin(name).unwrap();
            assert_eq!(d.rank, rank, "{name}");
            assert_eq!(d.weyl.order(), order, "{name}");
        }
    }

    #[test]
    fn torsion_rejected() {
        // A1 x A1 with the swap on the half-spin-type lattice has 2-torsion.
        let lattice = LatticeSpec::Basis(vec![vec![1, 1], vec![0, 2]]);
        let a = BasedRootDatum::new(vec![vec![2, 0], vec![0, 2]], vec![1, 0], &lattice).unwrap();
        assert!(matches!(coinvariants(&a), Err(Error::Torsion(_))));
    }

    #[test]
    fn missing_jumps_rejected() {
        let a = BasedRootDatum::new(vec![vec![2, -1], vec![-1, 2]], vec![1, 0], &LatticeSpec::Coroot)
            .unwrap();
        assert!(matches!(RelativeRootDatum::new("x", a, None, None), Err(Error::Preset(_))));
    }

    #[test]
    fn dominant_rep_examples() {
        let d = presets::builtin("a1").unwrap();
        let (v, w) = d.dominant_rep(&[-1]);
        assert_eq!(v, vec![1]);
        assert_eq!(w, d.weyl.simple_refl[0]);
        let s = presets::builtin("su3").unwrap();
        assert_eq!(s.dominant_rep(&[-1]).0, vec![1]);
        assert!(s.dominance_leq(&[0], &[2]));
        assert!(s.dominance_leq(&[0], &[1]));
        assert!(!s.dominance_leq_coroot_images(&[0], &[1]));
    }
}
