//! Asai factor of a conjugate self-dual isobaric sum versus the blockwise product.

use std::time::Instant;

use crate::algebra::{place_var, EulerFactorDenom, LaurentPoly, Symbol};
use crate::weights::{alg_twists, AlgTwist, IsobaricShape};

use super::{
    asai_local_factor_inert, asai_local_factor_split, rs_local_factor, GammaTwist, PlaceKind,
    SatakeError, UnramifiedChar, VerificationReport,
};

fn x(i: usize, r: usize) -> LaurentPoly {
    LaurentPoly::var(&Symbol::char_value(&format!("x{}_{}", i, r)))
}

fn inv(p: &LaurentPoly) -> LaurentPoly {
    p.inv().expect("unit eigenvalue")
}

/// Satake parameters of block i at w (split) or at the inert w.
///
/// Inert blocks are closed under inversion: pairs x, x^{-1}, plus a sign for odd n_i.
fn block_eigenvalues(i: usize, n_i: usize, kind: PlaceKind) -> Vec<LaurentPoly> {
    match kind {
        PlaceKind::Split => (1..=n_i).map(|r| x(i, r)).collect(),
        PlaceKind::Inert => {
            let mut out = Vec::with_capacity(n_i);
            for r in 1..=n_i / 2 {
                out.push(x(i, r));
                out.push(inv(&x(i, r)));
            }
            if n_i % 2 == 1 {
                out.push(LaurentPoly::from_int(if i.is_multiple_of(2) { 1 } else { -1 }));
            }
            out
        }
    }
}

fn inverses(a: &[LaurentPoly]) -> Vec<LaurentPoly> {
    a.iter().map(inv).collect()
}

fn chars(a: &[LaurentPoly]) -> Result<Vec<UnramifiedChar>, SatakeError> {
    a.iter()
        .map(|e| UnramifiedChar::new(e.clone(), true))
        .collect()
}

/// Both sides of the factorization at one unramified place.
pub fn lemma32_sides(
    shape: &IsobaricShape,
    kind: PlaceKind,
) -> Result<(EulerFactorDenom, EulerFactorDenom), SatakeError> {
    let parts: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let n = shape.n();
    let blocks: Vec<Vec<LaurentPoly>> = parts
        .iter()
        .enumerate()
        .map(|(i, &ni)| block_eigenvalues(i + 1, ni, kind))
        .collect();
    let twists = alg_twists(shape);
    let all: Vec<LaurentPoly> = blocks.iter().flatten().cloned().collect();
    let var = place_var();

    let lhs = match kind {
        PlaceKind::Split => asai_local_factor_split(&all, &inverses(&all))?,
        PlaceKind::Inert => asai_local_factor_inert(&[chars(&all)?], GammaTwist::for_rank(n))?,
    };

    let mut rhs = EulerFactorDenom::one(&var);
    let h = LaurentPoly::var(&Symbol::char_value("h"));
    for (i, block) in blocks.iter().enumerate() {
        let twisted = twists[i] == AlgTwist::EtaTwist;
        let own = match kind {
            PlaceKind::Split => {
                let (at_w1, at_w2) = if twisted {
                    (
                        block.iter().map(|e| e.mul(&h)).collect::<Vec<_>>(),
                        block
                            .iter()
                            .map(|e| inv(e).mul(&inv(&h)))
                            .collect::<Vec<_>>(),
                    )
                } else {
                    (block.clone(), inverses(block))
                };
                asai_local_factor_split(&at_w1, &at_w2)?
            }
            PlaceKind::Inert => {
                let eigs: Vec<LaurentPoly> = if twisted {
                    block.iter().map(LaurentPoly::neg).collect()
                } else {
                    block.clone()
                };
                asai_local_factor_inert(&[chars(&eigs)?], GammaTwist::for_rank(parts[i] as u32))?
            }
        };
        rhs = rhs.mul(&own)?;
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let cross = match kind {
                PlaceKind::Split => rs_local_factor(&blocks[i], &inverses(&blocks[j]), 1)?
                    .mul(&rs_local_factor(&inverses(&blocks[i]), &blocks[j], 1)?)?,
                PlaceKind::Inert => rs_local_factor(&blocks[i], &inverses(&blocks[j]), 2)?,
            };
            rhs = rhs.mul(&cross)?;
        }
    }
    Ok((lhs, rhs))
}

pub fn verify_lemma32(
    shape: &IsobaricShape,
    kind: PlaceKind,
) -> Result<VerificationReport, SatakeError> {
    let start = Instant::now();
    let (lhs, rhs) = lemma32_sides(shape, kind)?;
    let case = format!(
        "lemma32 n={} parts={:?} {}",
        shape.n(),
        shape.parts(),
        kind.label()
    );
    Ok(VerificationReport::compare(case, start, &lhs, &rhs))
}
