//! Colength of an ideal of the local ring at the origin, by truncated jets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactmath::field::FieldElement;
use crate::exactmath::matrix::rank_over_field;
use crate::forms::multipoly::MultiPoly;

/// Default truncation cap for foliation Milnor numbers.
pub const DEFAULT_JET_CAP: usize = 20;

/// `dim O / (gens)` for local polynomials in two variables. The colength
/// of `(gens) + m^N` is computed for growing `N` until two consecutive
/// values agree, at which point `m^N` lies in the ideal.
pub fn colength(gens: &[MultiPoly], cap: usize) -> Result<usize> {
    if gens.iter().any(|g| !g.coeff(&[0, 0, 0]).is_zero()) {
        return Ok(0);
    }
    let mut prev = truncated_colength(gens, 1);
    for n in 2..=cap + 1 {
        let c = truncated_colength(gens, n);
        if c == prev {
            return Ok(c);
        }
        prev = c;
    }
    Err(Error::NonIsolated { cap })
}

fn truncated_colength(gens: &[MultiPoly], n: usize) -> usize {
    let n = n as i32;
    let monos: Vec<(i32, i32)> = (0..n).flat_map(|d| (0..=d).map(move |i| (d - i, i))).collect();
    let index: HashMap<(i32, i32), usize> = monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let ord = match g.order() {
            None => continue,
            Some(o) => o,
        };
        for &(i, j) in &monos {
            if i + j + ord >= n {
                continue;
            }
            let mut row = vec![FieldElement::zero(); monos.len()];
            for (e, c) in g.terms() {
                let (a, b) = (e[0] + i, e[1] + j);
                if a + b < n {
                    row[index[&(a, b)]] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    monos.len() - rank_over_field(rows)
}
