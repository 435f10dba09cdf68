//! Fundamental domains built from half-open parallelepiped cells, with exact
//! tiling and packing verifiers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::max_matching;
use crate::ratlin::{lattice_intersect, lattice_sum, rat_to_f64, serde_rat, to_i64, IntHnf, IntMatrix, Lattice, Rat, RatMatrix};

/// Cap on the number of group elements or refined cells enumerated.
pub const MAX_ENUMERATION: usize = 1 << 24;

/// Union of the cells offset + fine·[0,1)ᵈ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub fine: RatMatrix,
    #[serde(with = "serde_rat::vec2")]
    pub offsets: Vec<Vec<Rat>>,
}

impl CellComplex {
    pub fn dim(&self) -> usize {
        self.fine.dim()
    }

    pub fn measure(&self) -> Rat {
        self.fine.det().abs() * Rat::from_integer(BigInt::from(self.offsets.len()))
    }

    /// Same fine cell and every offset of self present in other.
    pub fn is_subcomplex_of(&self, other: &CellComplex) -> bool {
        self.fine == other.fine && self.offsets.iter().all(|o| other.offsets.contains(o))
    }

    /// Corner coordinates of each cell, for plotting.
    pub fn plot_data(&self) -> Vec<Vec<Vec<f64>>> {
        let d = self.dim();
        let cols = self.fine.columns();
        self.offsets
            .iter()
            .map(|o| {
                (0..1usize << d)
                    .map(|mask| {
                        (0..d)
                            .map(|i| {
                                let mut v = o[i].clone();
                                for (j, c) in cols.iter().enumerate() {
                                    if mask >> j & 1 == 1 {
                                        v += &c[i];
                                    }
                                }
                                rat_to_f64(&v)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NestedDomains {
    pub sigma1: CellComplex,
    pub sigma2: CellComplex,
    #[serde(rename = "L1")]
    pub l1: Lattice,
    #[serde(rename = "L2")]
    pub l2: Lattice,
    /// Order of (L1 + L2)/(L1 ∩ L2).
    pub group_order: u64,
}

pub fn box_domain(l: &Lattice) -> CellComplex {
    CellComplex { fine: l.basis().clone(), offsets: vec![vec![Rat::zero(); l.dim()]] }
}

/// Σ₁ ⊆ Σ₂ with Σ₁ tiling by L1, Σ₂ tiling by L2 and Σ₁ packing by L2.
///
/// Cells are boxes of F = L1 + L2. A class of F/L1 and a class of F/L2 are
/// joined by one edge per element of F/(L1 ∩ L2) lying in both; a matching
/// saturating F/L1 picks Σ₁, and unmatched F/L2 classes complete Σ₂.
pub fn nested_domains(l1: &Lattice, l2: &Lattice) -> Result<NestedDomains> {
    if l1.dim() != l2.dim() {
        return Err(Error::DimensionMismatch { expected: l1.dim(), found: l2.dim() });
    }
    if l1.covolume() > l2.covolume() {
        return Err(Error::Precondition("covol(L1) must not exceed covol(L2)".into()));
    }
    let f = lattice_sum(l1, l2)?;
    let inter = lattice_intersect(l1, l2)?;
    let h1 = IntHnf::from_matrix(&l1.coords_in(&f)?)?;
    let h2 = IntHnf::from_matrix(&l2.coords_in(&f)?)?;
    let hi = IntHnf::from_matrix(&inter.coords_in(&f)?)?;
    let (a, b, g) = (h1.count()?, h2.count()?, hi.count()?);
    if g > MAX_ENUMERATION {
        return Err(Error::PrecisionOverflow(format!("|F/(L1∩L2)| = {g} exceeds the enumeration cap {MAX_ENUMERATION}")));
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); a];
    for e in 0..g {
        let t = hi.rep(e);
        adj[h1.index_of(&t)].push((h2.index_of(&t), e));
    }
    let matched = max_matching(b, &adj);
    let mut used = vec![false; b];
    let mut off1 = Vec::with_capacity(a);
    for (u, m) in matched.iter().enumerate() {
        let pos = m.ok_or_else(|| Error::Precondition("no matching saturates F/L1".into()))?;
        let (v, e) = adj[u][pos];
        used[v] = true;
        off1.push(f.point(&hi.rep(e))?);
    }
    let mut off2 = off1.clone();
    for (v, &u) in used.iter().enumerate() {
        if !u {
            off2.push(f.point(&h2.rep(v))?);
        }
    }
    let fine = f.basis().clone();
    Ok(NestedDomains {
        sigma1: CellComplex { fine: fine.clone(), offsets: off1 },
        sigma2: CellComplex { fine, offsets: off2 },
        l1: l1.clone(),
        l2: l2.clone(),
        group_order: g as u64,
    })
}

/// Hits per residue class of the refined cells modulo L; None when no cells.
fn coverage(c: &CellComplex, l: &Lattice) -> Result<Option<(Vec<u32>, bool)>> {
    let d = c.dim();
    if l.dim() != d || c.offsets.iter().any(|o| o.len() != d) {
        return Err(Error::IncommensurableLattices(format!(
            "cell complex of dimension {d} against a lattice of dimension {}",
            l.dim()
        )));
    }
    let Some(p0) = c.offsets.first() else {
        return Ok(None);
    };
    let pinv = c.fine.inverse()?;
    let lc = pinv.mul(l.basis())?;
    let rel: Vec<Vec<Rat>> = c
        .offsets
        .iter()
        .map(|o| {
            let diff: Vec<Rat> = o.iter().zip(p0).map(|(a, b)| a - b).collect();
            pinv.mul_vec(&diff)
        })
        .collect::<Result<_>>()?;
    // Refinement factor per axis: clears every denominator in that coordinate.
    let n: Vec<BigInt> = (0..d)
        .map(|i| {
            let row = (0..d).map(|j| lc.get(i, j)).chain(rel.iter().map(|r| &r[i]));
            crate::ratlin::lcm_denominators(row)
        })
        .collect();
    let mut lint = IntMatrix::zeros(d, d);
    for i in 0..d {
        let ni = Rat::from_integer(n[i].clone());
        for j in 0..d {
            lint.set(i, j, (lc.get(i, j) * &ni).to_integer());
        }
    }
    let h = IntHnf::from_matrix(&lint)?;
    let classes = h.count()?;
    let ns: Vec<i64> = n.iter().map(|x| to_i64(x, "refinement")).collect::<Result<_>>()?;
    let per_cell = ns.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x as usize));
    let total = per_cell.and_then(|p| p.checked_mul(c.offsets.len()));
    match total {
        Some(t) if t <= MAX_ENUMERATION && classes <= MAX_ENUMERATION => {}
        _ => return Err(Error::PrecisionOverflow("refined cell count exceeds the enumeration cap".into())),
    }
    let per_cell = per_cell.unwrap();
    let mut hits = vec![0u32; classes];
    let mut dup = false;
    let sub = IntHnf::new(&IntMatrix::from_rows(
        (0..d).map(|i| (0..d).map(|j| if i == j { n[i].clone() } else { BigInt::zero() }).collect()).collect(),
    )?)?;
    for r in &rel {
        let base: Vec<i64> = (0..d)
            .map(|i| to_i64(&(&r[i] * Rat::from_integer(n[i].clone())).to_integer(), "cell coordinate"))
            .collect::<Result<_>>()?;
        for s in 0..per_cell {
            let a = sub.rep(s);
            let mut q: Vec<i64> = base.iter().zip(&a).map(|(x, y)| x + y).collect();
            h.reduce(&mut q);
            let idx = h.index(&q);
            hits[idx] += 1;
            if hits[idx] > 1 {
                dup = true;
            }
        }
    }
    Ok(Some((hits, dup)))
}

/// Exact: every point of Rᵈ lies in exactly one L-translate of the complex.
pub fn verify_tiling(c: &CellComplex, l: &Lattice) -> Result<bool> {
    Ok(match coverage(c, l)? {
        None => false,
        Some((hits, dup)) => !dup && hits.iter().all(|&h| h == 1),
    })
}

/// Exact: every point of Rᵈ lies in at most one L-translate of the complex.
pub fn verify_packing(c: &CellComplex, l: &Lattice) -> Result<bool> {
    Ok(match coverage(c, l)? {
        None => true,
        Some((_, dup)) => !dup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{int, rat};

    fn lat1(x: Rat) -> Lattice {
        Lattice::new(&RatMatrix::from_rows(vec![vec![x]]).unwrap()).unwrap()
    }

    #[test]
    fn z_and_three_halves() {
        let nd = nested_domains(&Lattice::integer(1), &lat1(rat(3, 2))).unwrap();
        assert_eq!(nd.sigma1.offsets.len(), 2);
        assert_eq!(nd.sigma2.offsets.len(), 3);
        assert_eq!(nd.sigma1.measure(), int(1));
        assert_eq!(nd.sigma2.measure(), rat(3, 2));
        assert!(verify_tiling(&nd.sigma1, &nd.l1).unwrap());
        assert!(verify_packing(&nd.sigma1, &nd.l2).unwrap());
        assert!(verify_tiling(&nd.sigma2, &nd.l2).unwrap());
        assert!(!verify_tiling(&nd.sigma1, &nd.l2).unwrap());
        assert!(nd.sigma1.is_subcomplex_of(&nd.sigma2));
    }

    #[test]
    fn equal_lattices() {
        let l = lat1(rat(2, 5));
        let nd = nested_domains(&l, &l).unwrap();
        assert_eq!(nd.sigma1, nd.sigma2);
    }

    #[test]
    fn box_tiles_and_duplicate_fails() {
        let l = lat1(rat(3, 2));
        let b = box_domain(&l);
        assert!(verify_tiling(&b, &l).unwrap());
        let mut dup = b.clone();
        dup.offsets.push(vec![rat(3, 2)]);
        assert!(!verify_tiling(&dup, &l).unwrap());
        assert!(!verify_packing(&dup, &l).unwrap());
    }

    #[test]
    fn coarse_cell_against_fine_lattice() {
        // [0,1) against (1/3)Z covers every class three times.
        let c = box_domain(&Lattice::integer(1));
        let l = lat1(rat(1, 3));
        assert!(!verify_packing(&c, &l).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let c = box_domain(&Lattice::integer(2));
        assert!(matches!(verify_tiling(&c, &Lattice::integer(1)), Err(Error::IncommensurableLattices(_))));
    }

    #[test]
    fn plot_corners() {
        let p = box_domain(&Lattice::integer(2)).plot_data();
        assert_eq!(p[0], vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
    }
}
