//! Full-rank rational lattices in canonical form, plus coset bookkeeping.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{IntMatrix, RatMatrix};
use super::normal_form::{hnf, hnf_with_transform, snf_diagonal};
use super::rat::{frac, lcm_denominators, to_i64, Rat};
use crate::error::{Error, Result};

/// Lattice spanned by the columns of a non-singular rational matrix.
///
/// Stored canonically: `scale` is the least s with s·L ⊆ Zᵈ and `canon`
/// is the column HNF of s·basis, so structural equality is lattice equality.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: RatMatrix,
    inv: RatMatrix,
    scale: BigInt,
    canon: IntMatrix,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.scale == other.scale && self.canon == other.canon
    }
}

impl Eq for Lattice {}

impl Lattice {
    pub fn new(basis: &RatMatrix) -> Result<Self> {
        let s = basis.denominator_lcm();
        let canon = hnf(&basis.scaled_to_int(&s))?;
        Self::from_canon(s, canon)
    }

    /// Lattice generated by `gens` (columns; any number ≥ d, full rank).
    pub fn from_generators(dim: usize, gens: &[Vec<Rat>]) -> Result<Self> {
        if gens.iter().any(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: gens.iter().map(|g| g.len()).find(|&l| l != dim).unwrap_or(0) });
        }
        let s = lcm_denominators(gens.iter().flatten());
        let sr = Rat::from_integer(s.clone());
        let mut m = IntMatrix::zeros(dim, gens.len());
        for (j, g) in gens.iter().enumerate() {
            for (i, x) in g.iter().enumerate() {
                m.set(i, j, (x * &sr).to_integer());
            }
        }
        Self::from_canon(s, hnf(&m)?)
    }

    fn from_canon(s: BigInt, canon: IntMatrix) -> Result<Self> {
        // s is the lcm of reduced generator denominators, hence already minimal.
        let basis = canon.to_rat()?.scale(&Rat::new(BigInt::one(), s.clone()));
        let inv = basis.inverse()?;
        Ok(Lattice { basis, inv, scale: s, canon })
    }

    pub fn integer(dim: usize) -> Self {
        Self::new(&RatMatrix::identity(dim)).expect("identity is non-singular")
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Canonical basis (canon / scale), lower triangular.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn inverse_basis(&self) -> &RatMatrix {
        &self.inv
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn canon(&self) -> &IntMatrix {
        &self.canon
    }

    pub fn covolume(&self) -> Rat {
        self.basis.det().abs()
    }

    pub fn coords(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        self.inv.mul_vec(v)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords(v).map(|c| c.iter().all(|x| x.is_integer())).unwrap_or(false)
    }

    /// Representative of v + L in the canonical half-open box basis·[0,1)ᵈ.
    pub fn reduce(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let c: Vec<Rat> = self.coords(v)?.iter().map(frac).collect();
        self.basis.mul_vec(&c)
    }

    pub fn point(&self, coeffs: &[i64]) -> Result<Vec<Rat>> {
        let c: Vec<Rat> = coeffs.iter().map(|&x| Rat::from_integer(x.into())).collect();
        self.basis.mul_vec(&c)
    }

    /// Dual lattice L* = basis⁻ᵀ Zᵈ.
    pub fn dual(&self) -> Result<Lattice> {
        Lattice::new(&self.basis.inverse_transpose()?)
    }

    pub fn scaled(&self, s: &Rat) -> Result<Lattice> {
        if s.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Lattice::new(&self.basis.scale(s))
    }

    /// Coordinates of self's canonical basis in `sup`'s basis; integral iff self ⊆ sup.
    pub fn coords_in(&self, sup: &Lattice) -> Result<IntMatrix> {
        if self.dim() != sup.dim() {
            return Err(Error::DimensionMismatch { expected: sup.dim(), found: self.dim() });
        }
        let c = sup.inv.mul(&self.basis)?;
        if !c.is_integral() {
            return Err(Error::NotSublattice("sub-lattice basis has non-integral coordinates in the super-lattice".into()));
        }
        Ok(c.scaled_to_int(&BigInt::one()))
    }

    pub fn is_sublattice_of(&self, sup: &Lattice) -> bool {
        self.coords_in(sup).is_ok()
    }

    /// [sup : self].
    pub fn index_in(&self, sup: &Lattice) -> Result<BigInt> {
        let c = self.coords_in(sup)?;
        Ok(c.to_rat()?.det().abs().to_integer())
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let b = RatMatrix::deserialize(d)?;
        Lattice::new(&b).map_err(serde::de::Error::custom)
    }
}

pub fn inverse_transpose(m: &RatMatrix) -> Result<RatMatrix> {
    m.inverse_transpose()
}

pub fn member(v: &[Rat], l: &Lattice) -> bool {
    l.contains(v)
}

/// L1 ∩ L2 via the integer kernel of [s·B1 | −s·B2].
pub fn lattice_intersect(l1: &Lattice, l2: &Lattice) -> Result<Lattice> {
    let d = l1.dim();
    if l2.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: l2.dim() });
    }
    let s = l1.scale().lcm(l2.scale());
    let m1 = l1.basis().scaled_to_int(&s);
    let m2 = l2.basis().scaled_to_int(&s);
    let (_, u) = hnf_with_transform(&m1.hcat(&m2.neg())?)?;
    // Columns d..2d of u span the kernel; their top halves a give M1·a.
    let mut top = IntMatrix::zeros(d, d);
    for j in 0..d {
        for i in 0..d {
            top.set(i, j, u.get(i, d + j).clone());
        }
    }
    let gens = m1.mul(&top)?;
    let cols: Vec<Vec<Rat>> = (0..d)
        .map(|j| gens.column(j).into_iter().map(|x| Rat::new(x, s.clone())).collect())
        .collect();
    Lattice::from_generators(d, &cols)
}

/// L1 + L2.
pub fn lattice_sum(l1: &Lattice, l2: &Lattice) -> Result<Lattice> {
    let d = l1.dim();
    if l2.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: l2.dim() });
    }
    let mut gens = l1.basis().columns();
    gens.extend(l2.basis().columns());
    Lattice::from_generators(d, &gens)
}

/// Invariant factors of sup/sub.
pub fn snf_invariants(sub: &Lattice, sup: &Lattice) -> Result<Vec<BigInt>> {
    snf_diagonal(&sub.coords_in(sup)?)
}

/// Lower-triangular integer HNF basis with machine-word arithmetic, used for
/// fast division with remainder: v = H·q + t with t in ∏[0, h_ii).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntHnf {
    dim: usize,
    h: Vec<i64>,
}

impl IntHnf {
    pub fn new(m: &IntMatrix) -> Result<Self> {
        let d = m.nrows();
        let mut h = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                if j > i && !m.get(i, j).is_zero() {
                    return Err(Error::Parse("IntHnf expects a lower-triangular matrix".into()));
                }
                h.push(to_i64(m.get(i, j), "HNF entry")?);
            }
            if h[i * d + i] <= 0 {
                return Err(Error::SingularMatrix);
            }
        }
        Ok(IntHnf { dim: d, h })
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        Self::new(&hnf(m)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.h[i * self.dim + j]
    }

    pub fn diag(&self) -> Vec<i64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn count(&self) -> Result<usize> {
        self.diag()
            .iter()
            .try_fold(1usize, |acc, &x| acc.checked_mul(x as usize))
            .ok_or_else(|| Error::PrecisionOverflow("quotient group too large".into()))
    }

    /// Reduces v in place to the box representative; returns the quotient q.
    pub fn reduce(&self, v: &mut [i64]) -> Vec<i64> {
        let d = self.dim;
        let mut q = vec![0i64; d];
        for i in 0..d {
            let qi = v[i].div_euclid(self.get(i, i));
            if qi != 0 {
                for r in i..d {
                    v[r] -= qi * self.get(r, i);
                }
            }
            q[i] = qi;
        }
        q
    }

    pub fn mul_vec(&self, k: &[i64]) -> Vec<i64> {
        let d = self.dim;
        (0..d).map(|i| (0..=i).map(|j| self.get(i, j) * k[j]).sum()).collect()
    }

    /// Lexicographic (first coordinate slowest) index of a box representative.
    pub fn index(&self, t: &[i64]) -> usize {
        let mut idx = 0usize;
        for i in 0..self.dim {
            idx = idx * self.get(i, i) as usize + t[i] as usize;
        }
        idx
    }

    pub fn index_of(&self, v: &[i64]) -> usize {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.index(&w)
    }

    pub fn rep(&self, mut idx: usize) -> Vec<i64> {
        let d = self.dim;
        let mut t = vec![0i64; d];
        for i in (0..d).rev() {
            let r = self.get(i, i) as usize;
            t[i] = (idx % r) as i64;
            idx /= r;
        }
        t
    }

    pub fn reps(&self) -> Result<Vec<Vec<i64>>> {
        Ok((0..self.count()?).map(|i| self.rep(i)).collect())
    }
}

/// Coset representatives of sub in sup, ordered lexicographically by their
/// coordinates in sup's canonical basis.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub sub: Lattice,
    pub sup: Lattice,
    pub reps: Vec<Vec<Rat>>,
    quotient: IntHnf,
}

/// Largest transversal materialized as explicit rational vectors.
pub const MAX_TRANSVERSAL: usize = 1 << 22;

impl Transversal {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Reps in sup-coordinates.
    pub fn coords(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|i| self.quotient.rep(i)).collect()
    }

    pub fn quotient(&self) -> &IntHnf {
        &self.quotient
    }

    /// Index of the rep congruent to v (v must lie in sup).
    pub fn index_of(&self, v: &[Rat]) -> Result<usize> {
        let c = self.sup.coords(v)?;
        if !c.iter().all(|x| x.is_integer()) {
            return Err(Error::NotSublattice("vector is not in the super-lattice".into()));
        }
        let ci: Vec<i64> = c.iter().map(|x| to_i64(&x.to_integer(), "coordinate")).collect::<Result<_>>()?;
        Ok(self.quotient.index_of(&ci))
    }
}

pub fn coset_transversal(sub: &Lattice, sup: &Lattice) -> Result<Transversal> {
    let c = sub.coords_in(sup)?;
    let quotient = IntHnf::from_matrix(&c)?;
    let n = quotient.count()?;
    if n > MAX_TRANSVERSAL {
        return Err(Error::PrecisionOverflow(format!("transversal of size {n} exceeds {MAX_TRANSVERSAL}")));
    }
    let reps = (0..n)
        .map(|i| sup.point(&quotient.rep(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Transversal { sub: sub.clone(), sup: sup.clone(), reps, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat::{int, rat};

    fn lat(rows: Vec<Vec<Rat>>) -> Lattice {
        Lattice::new(&RatMatrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn one_dim_intersection_and_sum() {
        let z = Lattice::integer(1);
        let h = lat(vec![vec![rat(3, 2)]]);
        assert_eq!(lattice_intersect(&h, &z).unwrap(), lat(vec![vec![int(3)]]));
        assert_eq!(lattice_sum(&h, &z).unwrap(), lat(vec![vec![rat(1, 2)]]));
        assert_eq!(lattice_intersect(&h, &h).unwrap(), h);
    }

    #[test]
    fn scale_is_minimal() {
        let l = Lattice::from_generators(1, &[vec![rat(1, 2)], vec![int(1)], vec![rat(3, 2)]]).unwrap();
        assert_eq!(l.scale(), &BigInt::from(2));
        let l = Lattice::from_generators(1, &[vec![rat(2, 3)], vec![rat(4, 3)]]).unwrap();
        assert_eq!(l.basis().get(0, 0), &rat(2, 3));
    }

    #[test]
    fn transversal_3z() {
        let t = coset_transversal(&lat(vec![vec![int(3)]]), &Lattice::integer(1)).unwrap();
        assert_eq!(t.reps, vec![vec![int(0)], vec![int(1)], vec![int(2)]]);
        assert_eq!(t.index_of(&[int(-1)]).unwrap(), 2);
    }

    #[test]
    fn not_sublattice() {
        let r = coset_transversal(&Lattice::integer(1), &lat(vec![vec![int(3)]]));
        assert!(matches!(r, Err(Error::NotSublattice(_))));
    }

    #[test]
    fn int_hnf_reduce() {
        let h = IntHnf::new(&IntMatrix::from_i64_rows(&[&[3, 0], &[1, 2]])).unwrap();
        let mut v = vec![7, -3];
        let q = h.reduce(&mut v);
        let back: Vec<i64> = h.mul_vec(&q).iter().zip(&v).map(|(a, b)| a + b).collect();
        assert_eq!(back, vec![7, -3]);
        assert!(v[0] >= 0 && v[0] < 3 && v[1] >= 0 && v[1] < 2);
    }
}
