//! The operator form of the invariants attached to the action map: the
//! wedge / Lie-derivative / contraction composite summed against the
//! form-contracted structure constants, and the associated vanishing checks.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::chevalley::{LieAlgebra, SparseRat};
use crate::error::Result;
use crate::grassmann::{
    contraction, form_covector, lie_derivative, wedge, ActionSide, MonoKey, Multivector, Side,
};
use crate::kostant::{b_component, ExteriorDegree};
use crate::linalg::OperatorSlice;
use crate::rational::{rat, Rat};
use crate::rep::{adjoint_character, multiplicity_in_product, Character};
use crate::roots::RootSystem;

/// The endomorphism sum_{i,j} W_{b_i} L_{[b^i, b^j]} I_{(b_j, .)} of the
/// degree-(d+1) slice of one exterior copy. Raised indices are taken through
/// the inverse Gram matrix, so this is the basis-free contraction of the
/// invariant three-tensor with one wedging, one Lie-derivative and one
/// contraction slot.
pub fn c_w_operator(alg: &LieAlgebra, d: usize) -> Result<OperatorSlice> {
    let ext = ExteriorDegree::new(alg, d + 1);
    // [b^i, b^j] for all pairs, precontracted with the inverse form.
    let ginv = alg.gram_inverse();
    let mut z: Vec<Vec<SparseRat>> = vec![vec![Vec::new(); alg.dim]; alg.dim];
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (m, gim) in ginv[i].iter().enumerate() {
                if gim.is_zero() {
                    continue;
                }
                for (mm, gjm) in ginv[j].iter().enumerate() {
                    if gjm.is_zero() {
                        continue;
                    }
                    for (k, c) in alg.bracket(m, mm) {
                        let e = acc.entry(*k).or_insert_with(Rat::zero);
                        *e += gim.clone() * gjm.clone() * rat(*c);
                    }
                }
            }
            z[i][j] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
    }
    let covectors: Vec<SparseRat> =
        (0..alg.dim).map(|j| form_covector(alg, &vec![(j, rat(1))])).collect();

    let mut cols = Vec::with_capacity(ext.dim());
    for &mask in &ext.masks {
        let v = Multivector::from_term(MonoKey { x: mask, y: 0 }, rat(1));
        let mut img = Multivector::zero();
        for j in 0..alg.dim {
            let contracted = contraction(&covectors[j], Side::X, &v);
            if contracted.is_zero() {
                continue;
            }
            for i in 0..alg.dim {
                if z[i][j].is_empty() {
                    continue;
                }
                let ld = lie_derivative(alg, &z[i][j], ActionSide::X, &contracted);
                if ld.is_zero() {
                    continue;
                }
                let wedged = wedge(&Multivector::generator(Side::X, i), &ld);
                img = img.add(&wedged);
            }
        }
        cols.push(ext.to_vec(&img));
    }
    Ok(OperatorSlice::new(ext.dim(), ext.dim(), cols))
}

/// The vanishing statement for the action map: the composite operator kills
/// every vector of the top Casimir eigenspace in degree d+1.
pub fn lemma_check(alg: &LieAlgebra, d: usize) -> Result<bool> {
    let op = c_w_operator(alg, d)?;
    let b = b_component(alg, d + 1)?;
    for row in b.rows_rational() {
        if !op.apply(&row).is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplicity of the adjoint representation inside V tensor V-dual for the
/// module of an abelian ideal. At least 1 whenever the module is nontrivial
/// (the action map); values above 1 signal equivariant maps beyond it.
pub fn hom_multiplicity_diagnostic(
    rs: &RootSystem,
    ch_module: &Character,
    theta_fund: &[i64],
) -> Result<u64> {
    if ch_module.mass() == 1 && ch_module.mult(&vec![0; rs.rank]) == 1 {
        return Ok(0); // trivial module admits no adjoint map
    }
    multiplicity_in_product(rs, &theta_fund.to_vec(), ch_module, &ch_module.dual())
}

/// Multiplicity of the adjoint inside M tensor N for two characters; the
/// dimension of the space of equivariant maps from the algebra into the
/// (p, q) ambient of the reduced pathway.
pub fn adjoint_multiplicity_in(
    rs: &RootSystem,
    theta_fund: &[i64],
    ch_a: &Character,
    ch_b: &Character,
) -> Result<u64> {
    multiplicity_in_product(rs, &theta_fund.to_vec(), ch_a, ch_b)
}

/// Character of the adjoint representation in fundamental coordinates along
/// with the highest root, used by the diagnostics above.
pub fn adjoint_data(alg: &LieAlgebra) -> (Character, Vec<i64>) {
    let theta = alg.root_system.root_to_fund(&alg.root_system.highest_root);
    (adjoint_character(alg), theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, Series};
    use crate::chevalley::lie_algebra;
    use crate::kostant::{enumerate_abelian_ideals, module_of_ideal};
    use crate::rep::freudenthal_multiplicities;

    fn alg(s: Series, n: usize) -> LieAlgebra {
        lie_algebra(CartanType::new(s, n).unwrap()).unwrap()
    }

    #[test]
    fn vanishes_identically_on_degree_one() {
        // d = 0: contraction leaves a scalar, the Lie derivative kills it.
        for (s, n) in [(Series::A, 1), (Series::B, 2)] {
            let a = alg(s, n);
            let op = c_w_operator(&a, 0).unwrap();
            assert!(op.cols.iter().all(|c| c.is_empty()), "{s:?}{n}");
        }
    }

    #[test]
    fn lemma_holds_for_sl3_degree_one() {
        let a = alg(Series::A, 2);
        assert!(lemma_check(&a, 1).unwrap());
    }

    #[test]
    fn hom_multiplicities_small() {
        let a1 = alg(Series::A, 1);
        let rs = &a1.root_system;
        let ideals = enumerate_abelian_ideals(rs).unwrap();
        let (_, theta) = adjoint_data(&a1);
        // Trivial module: no adjoint map.
        let m0 = module_of_ideal(rs, &ideals[0]).unwrap();
        let ch0 = freudenthal_multiplicities(rs, &m0.highest_weight).unwrap();
        assert_eq!(hom_multiplicity_diagnostic(rs, &ch0, &theta).unwrap(), 0);
        // Adjoint module of sl2: the action map is the only one.
        let m1 = module_of_ideal(rs, &ideals[1]).unwrap();
        let ch1 = freudenthal_multiplicities(rs, &m1.highest_weight).unwrap();
        assert_eq!(hom_multiplicity_diagnostic(rs, &ch1, &theta).unwrap(), 1);
    }

    #[test]
    fn a2_adjoint_admits_two_maps() {
        // For sl3 the adjoint appears twice in g tensor g-dual: the bracket
        // and the symmetric cubic contraction.
        let a2 = alg(Series::A, 2);
        let rs = &a2.root_system;
        let (ch_ad, theta) = adjoint_data(&a2);
        assert_eq!(hom_multiplicity_diagnostic(rs, &ch_ad, &theta).unwrap(), 2);
    }
}
