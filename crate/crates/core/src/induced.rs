//! Finite-dimensional matrices of the induced fiber representations on
//! l²(Zᵈ/AZᵈ), and rank-based irreducibility / equivalence tests.
//!
//! Basis vectors are indexed by the coset reps j in transversal order. For a
//! character parameter λ₁ and fiber point (x, w):
//!
//! * central θ acts as e^{2πiλ₁θ/m}·I,
//! * M_{Bl} is diagonal with entry e^{−2πi(⟨Bl,x⟩ + λ₁⟨Bl,j⟩)},
//! * T_k sends φ to (j ↦ e^{−2πi⟨w,Aκ⟩} φ(j′)) where j − k = Aκ + j′.
//!
//! With λ₁ = 1 this is the representation carried by the Zak fibers; its
//! restriction to Γ₀ is the character (1, −x, w).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::dual::{stabilizer, CharacterPoint};
use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};
use crate::phase::{cis, cis_frac};
use crate::ratlin::{rat_to_f64, snf_invariants, to_u64, Lattice, Rat};

pub type RepMatrix = DMatrix<Complex64>;

/// Relative singular-value cutoff for rank decisions.
pub const RANK_TOL: f64 = 1e-9;
/// Required separation factor on both sides of the cutoff.
pub const RANK_GAP: f64 = 10.0;

/// Fiber coordinates: x reduced into [0,1)ᵈ, w into the canonical A*-box.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepPoint {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
}

fn mat_f64(rows: &[Vec<Rat>]) -> Vec<Vec<f64>> {
    rows.iter().map(|r| r.iter().map(rat_to_f64).collect()).collect()
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl RepPoint {
    pub fn new(ctx: &GroupContext, x: &[f64], w: &[f64]) -> Result<Self> {
        let d = ctx.dim();
        if x.len() != d || w.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: x.len().min(w.len()) });
        }
        if x.iter().chain(w).any(|v| !v.is_finite()) {
            return Err(Error::Parse("fiber coordinates must be finite".into()));
        }
        let x = x.iter().map(|v| v - v.floor()).collect();
        let inv = mat_f64(&ctx.a_star().inverse_basis().rows());
        let basis = mat_f64(&ctx.a_star().basis().rows());
        let c: Vec<f64> = mat_vec(&inv, w).iter().map(|v| v - v.floor()).collect();
        Ok(RepPoint { x, w: mat_vec(&basis, &c) })
    }

    /// Point with exact rational coordinates.
    pub fn from_rat(ctx: &GroupContext, x: &[Rat], w: &[Rat]) -> Result<Self> {
        let x: Vec<f64> = x.iter().map(rat_to_f64).collect();
        let w: Vec<f64> = w.iter().map(rat_to_f64).collect();
        Self::new(ctx, &x, &w)
    }

    /// Point without box reduction (x, w taken literally).
    pub fn raw(x: Vec<f64>, w: Vec<f64>) -> Self {
        RepPoint { x, w }
    }
}

fn dot_i(a: &[i128], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, &y)| x * y as i128).sum()
}

fn modulation_diag(ctx: &GroupContext, lambda1: u64, p: &RepPoint, l: &[i64]) -> Vec<Complex64> {
    let m = ctx.m() as i128;
    let mbl = ctx.mb_l(l);
    let blx: f64 = mbl.iter().zip(&p.x).map(|(a, x)| *a as f64 * x).sum::<f64>() / ctx.m() as f64;
    let base = cis(-blx);
    ctx.coset_reps()
        .iter()
        .map(|j| base * cis_frac(-(lambda1 as i128) * dot_i(&mbl, j), m))
        .collect()
}

/// Signed-phase permutation for T_k. `row_from_col` selects the pattern
/// (row j reads column j′); the alternative writes column j into row j′.
fn translation_part(ctx: &GroupContext, p: &RepPoint, k: &[i64], sign: f64, row_from_col: bool) -> RepMatrix {
    let n = ctx.index();
    let h = ctx.a_hnf();
    let mut out = RepMatrix::zeros(n, n);
    for (r, j) in ctx.coset_reps().iter().enumerate() {
        let mut v: Vec<i64> = j.iter().zip(k).map(|(a, b)| a - b).collect();
        let kappa = h.reduce(&mut v);
        let c = h.index(&v);
        let ak = h.mul_vec(&kappa);
        let t: f64 = p.w.iter().zip(&ak).map(|(w, a)| w * *a as f64).sum();
        let ph = cis(sign * t);
        if row_from_col {
            out[(r, c)] = ph;
        } else {
            out[(c, r)] = ph;
        }
    }
    out
}

fn assemble(ctx: &GroupContext, lambda1: u64, p: &RepPoint, g: &GroupElement, sign: f64, row_from_col: bool) -> RepMatrix {
    let central = cis_frac(lambda1 as i128 * g.theta as i128, ctx.m() as i128);
    let diag = modulation_diag(ctx, lambda1, p, &g.l);
    let mut t = translation_part(ctx, p, &g.k, sign, row_from_col);
    for (r, dv) in diag.iter().enumerate() {
        let s = central * dv;
        for c in 0..t.ncols() {
            t[(r, c)] *= s;
        }
    }
    t
}

/// ρ_{(λ₁,x,w)}(g) = central · modulation · translation.
pub fn induced_matrix(ctx: &GroupContext, lambda1: u64, p: &RepPoint, g: &GroupElement) -> RepMatrix {
    assemble(ctx, lambda1 % ctx.m(), p, g, -1.0, true)
}

/// The Gabor fiber representation (λ₁ = 1).
pub fn rep_matrix(ctx: &GroupContext, p: &RepPoint, g: &GroupElement) -> RepMatrix {
    induced_matrix(ctx, 1, p, g)
}

/// Alternative translation conventions, kept for the calibration test that
/// shows only the default one intertwines the Zak transform.
#[doc(hidden)]
pub fn rep_matrix_variant(ctx: &GroupContext, p: &RepPoint, g: &GroupElement, sign: f64, row_from_col: bool) -> RepMatrix {
    assemble(ctx, 1 % ctx.m(), p, g, sign, row_from_col)
}

/// max |MᴴM − I|.
pub fn unitarity_defect(m: &RepMatrix) -> f64 {
    let prod = m.adjoint() * m;
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &RepMatrix, b: &RepMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// dim {M : M·R1_g = R2_g·M for all g}, via singular values of the stacked
/// system (R1ᵀ ⊗ I − I ⊗ R2)·vec(M) = 0.
pub fn solution_dimension(pairs: &[(RepMatrix, RepMatrix)]) -> Result<usize> {
    let n = pairs.first().map_or(0, |p| p.0.nrows());
    let nn = n * n;
    let mut s = DMatrix::<Complex64>::zeros(pairs.len() * nn, nn);
    for (b, (r1, r2)) in pairs.iter().enumerate() {
        let off = b * nn;
        // vec is column-major: index of M[i][j] is j·n + i.
        for j in 0..n {
            for i in 0..n {
                let col = j * n + i;
                // (M R1)[a][c] = Σ_j M[a][j] R1[j][c]
                for c in 0..n {
                    s[(off + c * n + i, col)] += r1[(j, c)];
                }
                // (R2 M)[a][j] = Σ_i R2[a][i] M[i][j]
                for a in 0..n {
                    s[(off + j * n + a, col)] -= r2[(a, i)];
                }
            }
        }
    }
    let sv = s.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(nn);
    }
    let tol = RANK_TOL * smax;
    let mut zero = 0;
    for &v in sv.iter() {
        if v > tol / RANK_GAP && v <= tol * RANK_GAP {
            return Err(Error::IllConditioned(format!(
                "singular value {v:.3e} within a factor {RANK_GAP} of the cutoff {tol:.3e}"
            )));
        }
        if v <= tol {
            zero += 1;
        }
    }
    Ok(zero)
}

fn generator_pairs(ctx: &GroupContext, l1: u64, p1: &RepPoint, l2: u64, p2: &RepPoint) -> Vec<(RepMatrix, RepMatrix)> {
    GroupElement::generators(ctx.dim())
        .iter()
        .map(|g| (induced_matrix(ctx, l1, p1, g), induced_matrix(ctx, l2, p2, g)))
        .collect()
}

pub fn commutant_dimension(ctx: &GroupContext, p: &RepPoint, lambda1: u64) -> Result<usize> {
    solution_dimension(&generator_pairs(ctx, lambda1, p, lambda1, p))
}

/// Dimension of the intertwiner space between ρ_{p1} and ρ_{p2} (λ₁ = 1).
pub fn intertwiner_dimension(ctx: &GroupContext, p1: &RepPoint, p2: &RepPoint) -> Result<usize> {
    solution_dimension(&generator_pairs(ctx, 1, p1, 1, p2))
}

/// The character of Γ₀ whose induction gives ρ_{(1,x,w)}.
pub fn fiber_character(ctx: &GroupContext, x: &[Rat], w: &[Rat]) -> Result<CharacterPoint> {
    let minus_x: Vec<Rat> = x.iter().map(|v| -v).collect();
    CharacterPoint::new(ctx, 1, &minus_x, w)
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub k: u64,
    pub irreducible: bool,
    pub orbit_size: u64,
    pub little_group_invariants: Vec<u64>,
    pub gabor: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub summand_count: u64,
    pub summands: Vec<SummandReport>,
    pub parameter_torus_b_star: Lattice,
    pub parameter_torus_a_star: Lattice,
    pub fiber_dimension: u64,
    pub gabor_summand: u64,
    pub ell: u64,
    #[serde(rename = "detB", with = "crate::ratlin::serde_rat")]
    pub det_b: Rat,
    pub embeds_in_regular: bool,
    pub equivalent_to_gabor_summand: bool,
    pub degenerate: bool,
}

/// Summands L_k of the left regular representation, one per λ₁ = k.
pub fn regular_rep_report(ctx: &GroupContext) -> Result<DecompositionReport> {
    let d = ctx.dim();
    let z = Lattice::integer(d);
    let mut summands = Vec::new();
    for k in 0..ctx.m() {
        let chi = CharacterPoint { lambda1: k, ..CharacterPoint::trivial(d) };
        let st = stabilizer(ctx, &chi)?;
        let orbit_size = to_u64(&st.k_lattice.index_in(&z)?, "orbit size")?;
        let inv = snf_invariants(ctx.a(), &st.k_lattice)?
            .iter()
            .map(|x| to_u64(x, "invariant"))
            .collect::<Result<Vec<_>>>()?;
        summands.push(SummandReport {
            k,
            irreducible: &st.k_lattice == ctx.a(),
            orbit_size,
            little_group_invariants: inv,
            gabor: k == 1 % ctx.m(),
        });
    }
    let one = Rat::from_integer(1.into());
    let abs_det = num_traits::Signed::abs(ctx.det_b());
    Ok(DecompositionReport {
        summand_count: ctx.m(),
        summands,
        parameter_torus_b_star: ctx.b_star_lattice().clone(),
        parameter_torus_a_star: ctx.a_star().clone(),
        fiber_dimension: ctx.det_a(),
        gabor_summand: 1 % ctx.m(),
        ell: ctx.ell(),
        det_b: ctx.det_b().clone(),
        embeds_in_regular: abs_det <= one,
        equivalent_to_gabor_summand: abs_det == one,
        degenerate: ctx.is_degenerate(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_context;
    use crate::ratlin::{rat, RatMatrix};

    fn ex1() -> GroupContext {
        build_context(&RatMatrix::from_rows(vec![vec![rat(2, 3)]]).unwrap()).unwrap()
    }

    #[test]
    fn central_is_scalar() {
        let c = ex1();
        let p = RepPoint::new(&c, &[0.3], &[0.1]).unwrap();
        let r = rep_matrix(&c, &p, &GroupElement::central(1, 1));
        let want = RepMatrix::identity(3, 3) * cis(1.0 / 3.0);
        assert!(max_abs_diff(&r, &want) < 1e-15);
    }

    #[test]
    fn point_reduction() {
        let c = ex1();
        let p = RepPoint::new(&c, &[1.25], &[0.5]).unwrap();
        assert!((p.x[0] - 0.25).abs() < 1e-15);
        assert!((p.w[0] - 0.5 + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn irreducible_and_contrast() {
        let c = ex1();
        let p = RepPoint::new(&c, &[0.3], &[0.1]).unwrap();
        assert_eq!(commutant_dimension(&c, &p, 1).unwrap(), 1);
        assert_eq!(commutant_dimension(&c, &p, 0).unwrap(), 3);
    }

    #[test]
    fn identity_family_has_full_commutant() {
        let i = RepMatrix::identity(3, 3);
        assert_eq!(solution_dimension(&[(i.clone(), i)]).unwrap(), 9);
    }

    #[test]
    fn ex1_report() {
        let r = regular_rep_report(&ex1()).unwrap();
        assert_eq!(r.summand_count, 3);
        assert_eq!(r.gabor_summand, 1);
        assert!(r.embeds_in_regular && !r.equivalent_to_gabor_summand);
        assert!(r.summands[1].irreducible && r.summands[2].irreducible && !r.summands[0].irreducible);
    }
}
