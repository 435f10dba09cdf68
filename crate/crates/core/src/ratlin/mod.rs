//! Exact rational linear algebra and lattice operations.

mod lattice;
mod matrix;
mod normal_form;
mod rat;

pub use lattice::{
    coset_transversal, inverse_transpose, lattice_intersect, lattice_sum, member, snf_invariants, IntHnf, Lattice,
    Transversal, MAX_TRANSVERSAL,
};
pub use matrix::{IntMatrix, RatMatrix};
pub use normal_form::{hnf, hnf_with_transform, snf_diagonal};
pub use rat::{format_rat, frac, int, lcm_denominators, parse_rat, rat, rat_to_f64, serde_rat, to_i64, to_u64, Rat};

use crate::error::{Error, Result};

/// Parses a matrix literal such as `[[2/3, 0], [0, 3/2]]`; entries may be
/// bare rationals, quoted strings or JSON numbers.
pub fn parse_matrix(s: &str) -> Result<RatMatrix> {
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '"').collect();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("matrix must be a bracketed list of rows: {s:?}")))?;
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| Error::Parse(format!("expected '[' at {rest:?}")))?;
        let end = body.find(']').ok_or_else(|| Error::Parse("unterminated row".into()))?;
        let row = body[..end]
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        rest = &body[end + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    RatMatrix::from_rows(rows)
}

/// Parses a comma separated rational vector such as `0.3,1/10`.
pub fn parse_vector(s: &str) -> Result<Vec<Rat>> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    t.split(',').map(|x| parse_rat(x.trim().trim_matches('"'))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_matrix_forms() {
        let m = parse_matrix("[[2/3, 0], [0, \"3/2\"]]").unwrap();
        assert_eq!(m.get(0, 0), &rat(2, 3));
        assert_eq!(m.get(1, 1), &rat(3, 2));
        assert!(parse_matrix("[[1,2],[3]]").is_err());
        assert!(parse_matrix("1/2").is_err());
        assert_eq!(parse_matrix("[[2/3]]").unwrap().dim(), 1);
    }
}
