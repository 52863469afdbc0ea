//! Reduced pathway: compute inside B tensor B, where B is realized as the
//! sum of the top Casimir eigenspaces of the exterior algebra of one copy.
//!
//! Projections onto B are solved per weight block against the canonical
//! complement (the Kostant relation ideal), so every product in B tensor B
//! is ordinary linear algebra in B-coordinates.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::chevalley::LieAlgebra;
use crate::error::{Error, Result};
use crate::grassmann::{
    lie_derivative_basis, mono_weight, wedge, ActionSide, MonoKey, Multivector,
};
use crate::kostant::{
    b_component_blocks, enumerate_abelian_ideals, j_component_blocks, module_basis,
    module_of_ideal, slice_pairing, AbelianIdeal, ExteriorDegree, ModuleDescriptor,
};
use crate::linalg::{invert_dense, SparseVec, SubspaceBasis};
use crate::rational::{rat, Rat};
use crate::rep::{freudenthal_multiplicities, Character, Weight};
use crate::verify::direct::chevalley_generator_indices;

/// Projection data for one weight block of one exterior degree.
#[derive(Debug)]
pub struct BlockSolver {
    /// Positions (into the degree's mask list) forming this block.
    pub positions: Vec<usize>,
    pub local: BTreeMap<usize, usize>,
    /// Global B-basis indices whose rows live in this block.
    pub row_ids: Vec<usize>,
    /// k x n: local block coordinates -> coefficients over `row_ids`.
    pub to_b: Vec<Vec<Rat>>,
}

/// One degree of B with its projection solvers and generator action.
pub struct BDeg {
    pub d: usize,
    pub ext: ExteriorDegree,
    /// B[d] basis rows over the degree's mask positions.
    pub basis: Vec<SparseVec>,
    pub weights: Vec<Weight>,
    pub solvers: BTreeMap<Weight, BlockSolver>,
    /// Action of each Chevalley generator in B-coordinates, column-sparse.
    pub act: Vec<Vec<SparseVec>>,
}

impl BDeg {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn build(alg: &LieAlgebra, d: usize) -> Result<BDeg> {
        let ext = ExteriorDegree::new(alg, d);
        let (_, b_blocks) = b_component_blocks(alg, d)?;
        let j_blocks = j_component_blocks(alg, d, &ext)?;

        let mut basis: Vec<SparseVec> = Vec::new();
        let mut weights: Vec<Weight> = Vec::new();
        let mut solvers: BTreeMap<Weight, BlockSolver> = BTreeMap::new();
        for (w, positions) in &ext.blocks {
            let n = positions.len();
            let local: BTreeMap<usize, usize> =
                positions.iter().enumerate().map(|(l, g)| (*g, l)).collect();
            let b_rows: Vec<SparseVec> = b_blocks.get(w).cloned().unwrap_or_default();
            let j_rows = j_blocks
                .get(w)
                .map(|b| b.rows_rational())
                .unwrap_or_default();
            let k = b_rows.len();
            if k + j_rows.len() != n {
                return Err(Error::Internal(format!(
                    "degree {d} weight {w:?}: B ({k}) + J ({}) != block dim {n}",
                    j_rows.len()
                )));
            }
            let mut to_b: Vec<Vec<Rat>> = Vec::new();
            if k > 0 {
                // Columns: B rows then J rows; invert to solve for coordinates.
                let mut m = vec![vec![Rat::zero(); n]; n];
                for (c, row) in b_rows.iter().chain(j_rows.iter()).enumerate() {
                    for (i, v) in row {
                        m[*i][c] = v.clone();
                    }
                }
                let inv = invert_dense(&m).ok_or_else(|| {
                    Error::Internal(format!("degree {d} weight {w:?}: complement solve singular"))
                })?;
                to_b = inv.into_iter().take(k).collect();
            }
            let row_ids: Vec<usize> = (0..k).map(|i| basis.len() + i).collect();
            for row in &b_rows {
                let global: SparseVec = row.iter().map(|(l, c)| (positions[*l], c.clone())).collect();
                basis.push(global);
                weights.push(w.clone());
            }
            solvers.insert(w.clone(), BlockSolver { positions: positions.clone(), local, row_ids, to_b });
        }

        let mut deg = BDeg { d, ext, basis, weights, solvers, act: Vec::new() };

        // Generator action in B-coordinates.
        let gens = chevalley_generator_indices(alg);
        let mut act = Vec::with_capacity(gens.len());
        for &g in &gens {
            let mut cols = Vec::with_capacity(deg.basis.len());
            for row in &deg.basis {
                let mv = deg.ext_to_mv(row);
                let img = lie_derivative_basis(alg, g, ActionSide::X, &mv);
                let coords = deg.project_mv(alg, &img)?;
                cols.push(coords);
            }
            act.push(cols);
        }
        deg.act = act;
        Ok(deg)
    }

    fn ext_to_mv(&self, v: &SparseVec) -> Multivector {
        let mut mv = Multivector::zero();
        for (i, c) in v {
            mv.add_term(MonoKey { x: self.ext.masks[*i], y: 0 }, c.clone());
        }
        mv
    }

    /// Project a single-copy degree-d multivector onto B[d], in B-coordinates.
    ///
    /// The kernel part is discarded; membership of the kernel part in the
    /// relation ideal is guaranteed by the block solve.
    pub fn project_mv(&self, alg: &LieAlgebra, mv: &Multivector) -> Result<SparseVec> {
        let mut by_weight: BTreeMap<Weight, Vec<(usize, Rat)>> = BTreeMap::new();
        for (k, c) in mv.terms() {
            debug_assert_eq!(k.y, 0);
            let w = mono_weight(alg, k);
            let pos = *self
                .ext
                .mask_pos
                .get(&k.x)
                .ok_or_else(|| Error::Internal("projection input outside degree slice".into()))?;
            by_weight.entry(w).or_default().push((pos, c.clone()));
        }
        let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
        for (w, entries) in by_weight {
            let solver = self
                .solvers
                .get(&w)
                .ok_or_else(|| Error::Internal("weight block missing in projection".into()))?;
            if solver.to_b.is_empty() {
                continue;
            }
            let n = solver.positions.len();
            let mut dense = vec![Rat::zero(); n];
            for (pos, c) in entries {
                dense[solver.local[&pos]] += c;
            }
            for (r, row) in solver.to_b.iter().enumerate() {
                let mut acc = Rat::zero();
                for (c, x) in row.iter().zip(&dense) {
                    if !c.is_zero() && !x.is_zero() {
                        acc += c.clone() * x.clone();
                    }
                }
                if !acc.is_zero() {
                    let e = out.entry(solver.row_ids[r]).or_insert_with(Rat::zero);
                    *e += acc;
                }
            }
        }
        Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Projection of a single degree-d monomial mask, in B-coordinates.
    pub fn project_mask(&self, alg: &LieAlgebra, mask: u64) -> Result<SparseVec> {
        self.project_mv(alg, &Multivector::from_term(MonoKey { x: mask, y: 0 }, rat(1)))
    }
}

/// One irreducible summand of B with its character and bases.
pub struct ModuleInfo {
    pub desc: ModuleDescriptor,
    pub character: Character,
    /// Basis rows in exterior coordinates of degree `desc.degree`.
    pub rows_ext: Vec<SparseVec>,
    pub row_weights: Vec<Weight>,
    /// The same rows in B-coordinates.
    pub rows_b: Vec<SparseVec>,
}

/// Everything the reduced pathway needs, for degrees 0..=dmax.
pub struct BBScaffold<'a> {
    pub alg: &'a LieAlgebra,
    pub dmax: usize,
    pub degs: Vec<BDeg>,
    /// wedge_maps[d][m][s] = B-coordinates of the projection of
    /// b_m wedge (s-th basis vector of B[d]) into B[d+1].
    pub wedge_maps: Vec<Vec<Vec<SparseVec>>>,
    pub ideals: Vec<AbelianIdeal>,
    pub modules: Vec<ModuleInfo>,
}

impl<'a> BBScaffold<'a> {
    pub fn build(alg: &'a LieAlgebra, dmax: usize) -> Result<Self> {
        let mut degs = Vec::with_capacity(dmax + 1);
        for d in 0..=dmax {
            degs.push(BDeg::build(alg, d)?);
        }
        let mut wedge_maps = Vec::new();
        for d in 0..dmax {
            let (src, tgt) = (&degs[d], &degs[d + 1]);
            let mut per_m = Vec::with_capacity(alg.dim);
            for m in 0..alg.dim {
                let mut cols = Vec::with_capacity(src.dim());
                if tgt.dim() == 0 {
                    cols.resize(src.dim(), Vec::new());
                } else {
                    let gen = Multivector::generator(crate::grassmann::Side::X, m);
                    for row in &src.basis {
                        let mv = src.ext_to_mv(row);
                        let prod = wedge(&gen, &mv);
                        cols.push(tgt.project_mv(alg, &prod)?);
                    }
                }
                per_m.push(cols);
            }
            wedge_maps.push(per_m);
        }

        let ideals = enumerate_abelian_ideals(&alg.root_system)?;
        let mut modules = Vec::with_capacity(ideals.len());
        for a in &ideals {
            let desc = module_of_ideal(&alg.root_system, a)?;
            let character = freudenthal_multiplicities(&alg.root_system, &desc.highest_weight)?;
            let d = desc.degree;
            let (rows_ext, row_weights, rows_b) = if d <= dmax {
                let rows_ext = module_basis(alg, a)?;
                let deg = &degs[d];
                let mut row_weights = Vec::with_capacity(rows_ext.len());
                let mut rows_b = Vec::with_capacity(rows_ext.len());
                for r in &rows_ext {
                    let mv = deg.ext_to_mv(r);
                    let mut it = mv.terms();
                    let w = mono_weight(alg, it.next().expect("nonempty row").0);
                    row_weights.push(w);
                    rows_b.push(deg.project_mv(alg, &mv)?);
                }
                (rows_ext, row_weights, rows_b)
            } else {
                (Vec::new(), Vec::new(), Vec::new())
            };
            modules.push(ModuleInfo { desc, character, rows_ext, row_weights, rows_b });
        }
        Ok(BBScaffold { alg, dmax, degs, wedge_maps, ideals, modules })
    }

    /// Character of B[d]: the sum over its irreducible summands.
    pub fn b_character(&self, d: usize) -> Character {
        let mut ch = Character::new();
        for m in &self.modules {
            if m.desc.degree == d {
                for (w, mult) in &m.character.mults {
                    ch.add(w.clone(), *mult);
                }
            }
        }
        ch
    }

    /// Flat pair index over B[p] x B[q].
    pub fn pair_index(&self, q: usize, s: usize, t: usize) -> usize {
        s * self.degs[q].dim() + t
    }

    pub fn pair_dim(&self, p: usize, q: usize) -> usize {
        self.degs[p].dim() * self.degs[q].dim()
    }

    /// Weight blocks of the pair space at (p, q).
    pub fn pair_blocks(&self, p: usize, q: usize) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (s, ws) in self.degs[p].weights.iter().enumerate() {
            for (t, wt) in self.degs[q].weights.iter().enumerate() {
                let w: Weight = ws.iter().zip(wt).map(|(a, b)| a + b).collect();
                out.entry(w).or_default().push(self.pair_index(q, s, t));
            }
        }
        out
    }

    /// The canonical invariant of V_a tensor V_b for dual-paired modules of
    /// equal degree, in pair coordinates. Machine-checked to be invariant.
    pub fn z_invariant(&self, ai: usize, bi: usize) -> Result<SparseVec> {
        let ma = &self.modules[ai];
        let mb = &self.modules[bi];
        let d = ma.desc.degree;
        if mb.desc.degree != d {
            return Err(Error::Internal("z-invariant requires equal degrees".into()));
        }
        let deg = &self.degs[d];
        // Group rows by weight.
        let mut by_w_a: BTreeMap<&Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in ma.row_weights.iter().enumerate() {
            by_w_a.entry(w).or_default().push(i);
        }
        let mut by_w_b: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in mb.row_weights.iter().enumerate() {
            by_w_b.entry(w.clone()).or_default().push(i);
        }
        let mut z: BTreeMap<usize, Rat> = BTreeMap::new();
        for (w, rows_a) in &by_w_a {
            let neg: Weight = w.iter().map(|c| -c).collect();
            let rows_b = by_w_b
                .get(&neg)
                .ok_or_else(|| Error::Internal("dual module misses mirror weight".into()))?;
            if rows_a.len() != rows_b.len() {
                return Err(Error::Internal("dual weight multiplicities differ".into()));
            }
            let k = rows_a.len();
            let mut pmat = vec![vec![Rat::zero(); k]; k];
            for (si, &s) in rows_a.iter().enumerate() {
                for (ti, &t) in rows_b.iter().enumerate() {
                    pmat[si][ti] =
                        slice_pairing(self.alg, &deg.ext, &ma.rows_ext[s], &mb.rows_ext[t]);
                }
            }
            let pinv = invert_dense(&pmat)
                .ok_or_else(|| Error::Internal("module pairing degenerate on weight block".into()))?;
            // z += sum_{s,t} (P^{-1})_{t s} u_s (x) v_t in B-coordinates.
            for (si, &s) in rows_a.iter().enumerate() {
                for (ti, &t) in rows_b.iter().enumerate() {
                    let c = pinv[ti][si].clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (bs, cs) in &ma.rows_b[s] {
                        for (bt, ct) in &mb.rows_b[t] {
                            let idx = self.pair_index(d, *bs, *bt);
                            let e = z.entry(idx).or_insert_with(Rat::zero);
                            *e += c.clone() * cs.clone() * ct.clone();
                        }
                    }
                }
            }
        }
        let z: SparseVec = z.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if z.is_empty() {
            return Err(Error::Internal("canonical invariant vanished".into()));
        }
        // Invariance check under every Chevalley generator.
        for g in 0..self.degs[d].act.len() {
            if !self.apply_pair_action(d, d, g, &z).is_empty() {
                return Err(Error::Internal("canonical element is not invariant".into()));
            }
        }
        Ok(z)
    }

    /// (act_g tensor 1 + 1 tensor act_g) applied to a pair-coordinate vector.
    pub fn apply_pair_action(&self, p: usize, q: usize, g: usize, v: &SparseVec) -> SparseVec {
        let dq = self.degs[q].dim();
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (idx, c) in v {
            let (s, t) = (idx / dq, idx % dq);
            for (s2, a) in &self.degs[p].act[g][s] {
                let e = acc.entry(s2 * dq + t).or_insert_with(Rat::zero);
                *e += c.clone() * a.clone();
            }
            for (t2, a) in &self.degs[q].act[g][t] {
                let e = acc.entry(s * dq + t2).or_insert_with(Rat::zero);
                *e += c.clone() * a.clone();
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Projection of the k-th power of S into B[k] tensor B[k], in pair
    /// coordinates.
    pub fn project_s_power(&self, k: usize) -> Result<SparseVec> {
        if k > self.dmax {
            return Err(Error::Internal("S power beyond scaffold range".into()));
        }
        let deg = &self.degs[k];
        if deg.dim() == 0 {
            return Ok(Vec::new());
        }
        let sk = crate::verify::direct::s_power(self.alg, k);
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (key, c) in sk.terms() {
            let px = deg.project_mask(self.alg, key.x)?;
            if px.is_empty() {
                continue;
            }
            let py = deg.project_mask(self.alg, key.y)?;
            if py.is_empty() {
                continue;
            }
            for (s, cs) in &px {
                for (t, ct) in &py {
                    let e = acc.entry(self.pair_index(k, *s, *t)).or_insert_with(Rat::zero);
                    *e += c.clone() * cs.clone() * ct.clone();
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Work estimate for echelonizing the relation-ideal slice at (p, q):
    /// generators per weight block times block dimension, summed.
    pub fn ideal_slice_estimate(&self, p: usize, q: usize) -> u64 {
        if p == 0 || q == 0 || self.degs[p].dim() == 0 || self.degs[q].dim() == 0 {
            return 0;
        }
        let blocks = self.pair_blocks(p, q);
        let block_dim: BTreeMap<&Weight, u64> =
            blocks.iter().map(|(w, v)| (w, v.len() as u64)).collect();
        let mut gens_per_w: BTreeMap<Weight, u64> = BTreeMap::new();
        for k in 0..self.alg.dim {
            let kw = self.alg.basis_weight(k);
            for ws in self.degs[p - 1].weights.iter() {
                for wt in self.degs[q - 1].weights.iter() {
                    let w: Weight = kw
                        .iter()
                        .zip(ws.iter().zip(wt))
                        .map(|(a, (b, c))| a + b + c)
                        .collect();
                    *gens_per_w.entry(w).or_insert(0) += 1;
                }
            }
        }
        gens_per_w
            .iter()
            .map(|(w, g)| g * block_dim.get(w).copied().unwrap_or(0))
            .sum()
    }

    /// Echelonized relation-ideal slice at (p, q), per weight block of the
    /// pair space. Local coordinates follow each block's position list.
    pub fn ideal_slice_blocks(
        &self,
        p: usize,
        q: usize,
    ) -> Result<BTreeMap<Weight, (Vec<usize>, SubspaceBasis)>> {
        let blocks = self.pair_blocks(p, q);
        let mut out: BTreeMap<Weight, (Vec<usize>, SubspaceBasis)> = blocks
            .iter()
            .map(|(w, v)| (w.clone(), (v.clone(), SubspaceBasis::new(v.len()))))
            .collect();
        if p == 0 || q == 0 || self.degs[p].dim() == 0 || self.degs[q].dim() == 0 {
            return Ok(out);
        }
        let local: BTreeMap<&Weight, BTreeMap<usize, usize>> = blocks
            .iter()
            .map(|(w, v)| (w, v.iter().enumerate().map(|(l, g)| (*g, l)).collect()))
            .collect();
        let ginv = self.alg.gram_inverse();
        // R_i[s] = sum_m ginv[i][m] * wedge_maps[p-1][m][s].
        let dim_src_p = self.degs[p - 1].dim();
        let dim_src_q = self.degs[q - 1].dim();
        let mut r_maps: Vec<Vec<SparseVec>> = Vec::with_capacity(self.alg.dim);
        for i in 0..self.alg.dim {
            let mut cols = Vec::with_capacity(dim_src_p);
            for s in 0..dim_src_p {
                let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
                for (m, g) in ginv[i].iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    for (t, c) in &self.wedge_maps[p - 1][m][s] {
                        let e = acc.entry(*t).or_insert_with(Rat::zero);
                        *e += g.clone() * c.clone();
                    }
                }
                cols.push(
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect::<SparseVec>(),
                );
            }
            r_maps.push(cols);
        }
        for k in 0..self.alg.dim {
            let kw = self.alg.basis_weight(k).to_vec();
            // Bracket-wedge maps for this k, independent of s:
            // w_maps[i][t] = pi([b_i, b_k] ^ v_t).
            let mut w_maps: Vec<Option<Vec<SparseVec>>> = vec![None; self.alg.dim];
            for (i, slot) in w_maps.iter_mut().enumerate() {
                let br = self.alg.bracket(i, k);
                if br.is_empty() {
                    continue;
                }
                let mut cols: Vec<SparseVec> = Vec::with_capacity(dim_src_q);
                for t in 0..dim_src_q {
                    let mut yside: BTreeMap<usize, Rat> = BTreeMap::new();
                    for (m, c) in br {
                        for (t2, qc) in &self.wedge_maps[q - 1][*m][t] {
                            let e = yside.entry(*t2).or_insert_with(Rat::zero);
                            *e += rat(*c) * qc.clone();
                        }
                    }
                    cols.push(yside.into_iter().filter(|(_, c)| !c.is_zero()).collect());
                }
                *slot = Some(cols);
            }
            for s in 0..dim_src_p {
                let ws = &self.degs[p - 1].weights[s];
                for t in 0..dim_src_q {
                    let wt = &self.degs[q - 1].weights[t];
                    let w: Weight = kw
                        .iter()
                        .zip(ws.iter().zip(wt.iter()))
                        .map(|(a, (b, c))| a + b + c)
                        .collect();
                    let mut gen: BTreeMap<usize, Rat> = BTreeMap::new();
                    for i in 0..self.alg.dim {
                        if r_maps[i][s].is_empty() {
                            continue;
                        }
                        let yside = match &w_maps[i] {
                            Some(cols) if !cols[t].is_empty() => &cols[t],
                            _ => continue,
                        };
                        for (s2, cs) in &r_maps[i][s] {
                            for (t2, ct) in yside {
                                let e = gen
                                    .entry(self.pair_index(q, *s2, *t2))
                                    .or_insert_with(Rat::zero);
                                *e += cs.clone() * ct.clone();
                            }
                        }
                    }
                    let gen: SparseVec =
                        gen.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if gen.is_empty() {
                        continue;
                    }
                    let loc = &local[&w];
                    let mut v: SparseVec =
                        gen.into_iter().map(|(i, c)| (loc[&i], c)).collect();
                    v.sort_by_key(|(i, _)| *i);
                    out.get_mut(&w).unwrap().1.insert(&v)?;
                }
            }
        }
        Ok(out)
    }
}
