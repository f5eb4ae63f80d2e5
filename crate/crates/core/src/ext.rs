//! `Ext^1_C(K, C)` in degree 0, from a minimal free resolution
//! `P_2 -> P_1 -> P_0 -> K` over `C`.
//!
//! A degree-0 map `C(-b) -> C` is an element of `C_b`, so the cochains are
//! `sum_j C_{a_j} -> sum_l C_{b_l} -> sum_m C_{c_m}`.

use std::sync::Arc;

use crate::algebra::{ColumnOrder, GradedAlgebra};
use crate::classes::ClassContext;
use crate::error::Result;
use crate::f2::{F2Mat, F2Vec};
use crate::module::FreeResStep;
use crate::poly::Poly2;
use crate::presentation::{present_c_ordered, present_k_with, KData, KRoute};

#[derive(Clone, Debug)]
pub struct ExtReport {
    pub k: usize,
    pub n: usize,
    pub ext1_rank: usize,
    pub z1_dim: usize,
    pub d0_rank: usize,
    pub d1_rank: usize,
    /// `dim Hom(P_1, C)_0`.
    pub d0_target_dim: usize,
    pub generator_degrees: Vec<usize>,
    pub relation_degrees: Vec<usize>,
    pub syzygy_degrees: Vec<usize>,
    /// Cocycle representatives in normal form modulo coboundaries: for each,
    /// the value on every relation it does not kill, as `(relation index,
    /// relation degree, value)`.
    pub cocycles: Vec<Vec<(usize, usize, Poly2)>>,
}

/// Matrix of `Hom(P_s, C)_0 -> Hom(P_{s+1}, C)_0` for the step `next`
/// (whose images live in `prev`'s coordinates).
fn cochain_map(alg: &GradedAlgebra, prev: &FreeResStep, next: &FreeResStep) -> F2Mat {
    let src_offsets = offsets(alg, &prev.shifts);
    let dst_offsets = offsets(alg, &next.shifts);
    let src_dim = total(alg, &prev.shifts);
    let dst_dim = total(alg, &next.shifts);
    let mut m = F2Mat::zeros(src_dim, dst_dim);
    for (l, (&b, img)) in next.shifts.iter().zip(&next.images).enumerate() {
        for (j, &a) in prev.shifts.iter().enumerate() {
            let Some(off) = prev.free.block(b, j) else { continue };
            if alg.dim(a) == 0 || alg.dim(b) == 0 {
                continue;
            }
            let coeff = img.slice(off, alg.dim(b - a));
            if coeff.is_zero() {
                continue;
            }
            let block = alg.mul_by_element(a, b - a, &coeff);
            for r in 0..block.nrows() {
                for c in block.row(r).iter_ones() {
                    m.flip(src_offsets[j] + r, dst_offsets[l] + c);
                }
            }
        }
    }
    m
}

fn offsets(alg: &GradedAlgebra, shifts: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    shifts
        .iter()
        .map(|&a| {
            let o = acc;
            acc += alg.dim(a);
            o
        })
        .collect()
}

fn total(alg: &GradedAlgebra, shifts: &[usize]) -> usize {
    shifts.iter().map(|&a| alg.dim(a)).sum()
}

/// `Ext^1` from an already computed presentation resolved three steps deep.
pub fn ext_from(alg: &GradedAlgebra, kd: &KData) -> ExtReport {
    let res = &kd.resolution;
    assert!(res.len() >= 3, "need P_0, P_1, P_2");
    let d0 = cochain_map(alg, &res[0], &res[1]);
    let d1 = cochain_map(alg, &res[1], &res[2]);
    debug_assert!(d0.mul(&d1).is_zero());
    let z1 = if d1.ncols() == 0 {
        (0..d1.nrows()).map(|i| F2Vec::unit(d1.nrows(), i)).collect()
    } else {
        d1.left_kernel_basis()
    };
    let (im, pivots) = d0.rref();
    let im_rows: Vec<F2Vec> = (0..pivots.len()).map(|r| im.row(r)).collect();
    let reduce = |v: &mut F2Vec| {
        for (row, &p) in im_rows.iter().zip(&pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    };
    let width = d0.ncols();
    let mut reduced = F2Mat::zeros(0, width);
    for z in &z1 {
        let mut v = z.clone();
        reduce(&mut v);
        reduced.push_row(&v);
    }
    let rank_ext = reduced.rref_in_place().len();
    let offs = offsets(alg, &res[1].shifts);
    let cocycles = (0..rank_ext)
        .map(|r| {
            let v = reduced.row(r);
            res[1]
                .shifts
                .iter()
                .enumerate()
                .filter_map(|(l, &b)| {
                    let part = v.slice(offs[l], alg.dim(b));
                    (!part.is_zero()).then(|| (l, b, alg.poly(b, &part)))
                })
                .collect()
        })
        .collect();
    ExtReport {
        k: kd.k,
        n: kd.n,
        ext1_rank: rank_ext,
        z1_dim: z1.len(),
        d0_rank: pivots.len(),
        d1_rank: d1.rank(),
        d0_target_dim: width,
        generator_degrees: res[0].shifts.clone(),
        relation_degrees: res[1].shifts.clone(),
        syzygy_degrees: res[2].shifts.clone(),
        cocycles,
    }
}

pub fn ext_normal_form(k: usize, n: usize) -> Result<ExtReport> {
    ext_with_order(k, n, ColumnOrder::Standard)
}

/// Rank of `Ext^1_C(K, C)` in degree 0.
pub fn ext1_rank(k: usize, n: usize) -> Result<usize> {
    Ok(ext_normal_form(k, n)?.ext1_rank)
}

/// The same computation with the basis of `C` chosen under another column order.
pub fn ext_with_order(k: usize, n: usize, order: ColumnOrder) -> Result<ExtReport> {
    let ctx = Arc::new(ClassContext::new(k));
    let c = present_c_ordered(&ctx, n, order)?;
    let kd = present_k_with(&ctx, &c, KRoute::Auto, 3)?;
    Ok(ext_from(&c.algebra, &kd))
}
