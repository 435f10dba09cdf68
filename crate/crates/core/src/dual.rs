//! Characters of Γ₀, the Γ-action on them, stabilizers and orbits.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};
use crate::phase::cis;
use crate::ratlin::{
    coset_transversal, frac, lattice_intersect, rat_to_f64, serde_rat, snf_invariants, to_u64, Lattice, Rat,
};

/// χ(θ, l, Aj) = e^{2πiλ₁θ/m} e^{2πi⟨λ₂,Bl⟩} e^{2πi⟨λ₃,Aj⟩}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterPoint {
    pub lambda1: u64,
    #[serde(with = "serde_rat::vec")]
    pub lambda2: Vec<Rat>,
    #[serde(with = "serde_rat::vec")]
    pub lambda3: Vec<Rat>,
}

impl CharacterPoint {
    /// Reduces λ₁ mod m, λ₂ into the B*-box and λ₃ into the A*-box.
    pub fn new(ctx: &GroupContext, lambda1: i64, lambda2: &[Rat], lambda3: &[Rat]) -> Result<Self> {
        Ok(CharacterPoint {
            lambda1: lambda1.rem_euclid(ctx.m() as i64) as u64,
            lambda2: ctx.b_star_lattice().reduce(lambda2)?,
            lambda3: ctx.a_star().reduce(lambda3)?,
        })
    }

    pub fn trivial(d: usize) -> Self {
        CharacterPoint { lambda1: 0, lambda2: vec![Rat::zero(); d], lambda3: vec![Rat::zero(); d] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerDescription {
    pub whole_group: bool,
    pub k_lattice: Lattice,
}

/// E = (box of Zᵈ + B*Zᵈ) × (box of A*Zᵈ).
#[derive(Clone, Debug, Serialize)]
pub struct OrbitSection {
    pub e_box_1: Lattice,
    pub e_box_2: Lattice,
    pub ell: u64,
    #[serde(rename = "muE", with = "serde_rat")]
    pub mu_e: Rat,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()
}

pub fn eval_character(ctx: &GroupContext, chi: &CharacterPoint, g: &GroupElement) -> Result<Complex64> {
    if !ctx.in_gamma0(g) {
        return Err(Error::NotInGamma0);
    }
    let m = Rat::from_integer(BigInt::from(ctx.m()));
    let bl = ctx.b().mul_vec(&ints(&g.l))?;
    let t = Rat::from_integer(BigInt::from(chi.lambda1 as u128 * g.theta as u128)) / m
        + dot(&chi.lambda2, &bl)
        + dot(&chi.lambda3, &ints(&g.k));
    Ok(cis(rat_to_f64(&frac(&t))))
}

/// Only the translation part acts: λ₂ ↦ λ₂ − λ₁k.
pub fn act(ctx: &GroupContext, g: &GroupElement, chi: &CharacterPoint) -> Result<CharacterPoint> {
    let l1 = Rat::from_integer(BigInt::from(chi.lambda1));
    let shifted: Vec<Rat> = chi
        .lambda2
        .iter()
        .zip(&g.k)
        .map(|(x, &k)| x - &l1 * Rat::from_integer(BigInt::from(k)))
        .collect();
    Ok(CharacterPoint {
        lambda1: chi.lambda1,
        lambda2: ctx.b_star_lattice().reduce(&shifted)?,
        lambda3: chi.lambda3.clone(),
    })
}

/// Translation part of Γ_χ; depends on λ₁ only.
pub fn stabilizer(ctx: &GroupContext, chi: &CharacterPoint) -> Result<StabilizerDescription> {
    let z = Lattice::integer(ctx.dim());
    if chi.lambda1 == 0 {
        return Ok(StabilizerDescription { whole_group: true, k_lattice: z });
    }
    let scaled = ctx.b_star_lattice().scaled(&Rat::new(BigInt::from(1), BigInt::from(chi.lambda1)))?;
    Ok(StabilizerDescription { whole_group: false, k_lattice: lattice_intersect(&scaled, &z)? })
}

pub fn orbit(ctx: &GroupContext, chi: &CharacterPoint) -> Result<Vec<CharacterPoint>> {
    let st = stabilizer(ctx, chi)?;
    let t = coset_transversal(&st.k_lattice, &Lattice::integer(ctx.dim()))?;
    t.reps
        .iter()
        .map(|k| {
            let k: Vec<i64> = k.iter().map(|x| crate::ratlin::to_i64(&x.to_integer(), "k")).collect::<Result<_>>()?;
            act(ctx, &GroupElement::translation(k), chi)
        })
        .collect()
}

pub fn cross_section(ctx: &GroupContext) -> OrbitSection {
    let mu = ctx.sum_lattice().covolume() * ctx.a_star().covolume();
    debug_assert_eq!(&mu, ctx.mu_e());
    OrbitSection {
        e_box_1: ctx.sum_lattice().clone(),
        e_box_2: ctx.a_star().clone(),
        ell: ctx.ell(),
        mu_e: mu,
    }
}

/// Invariant factors of k_lattice / AZᵈ.
pub fn little_group_invariants(ctx: &GroupContext, chi: &CharacterPoint) -> Result<Vec<u64>> {
    let st = stabilizer(ctx, chi)?;
    snf_invariants(ctx.a(), &st.k_lattice)?
        .iter()
        .map(|x| to_u64(x, "invariant factor"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_context;
    use crate::ratlin::{int, rat, RatMatrix};

    fn ex1() -> GroupContext {
        build_context(&RatMatrix::from_rows(vec![vec![rat(2, 3)]]).unwrap()).unwrap()
    }

    #[test]
    fn central_value() {
        let c = ex1();
        let chi = CharacterPoint::new(&c, 1, &[rat(1, 2)], &[int(0)]).unwrap();
        let v = eval_character(&c, &chi, &GroupElement::central(1, 1)).unwrap();
        assert!((v - cis(1.0 / 3.0)).norm() < 1e-15);
        assert!(matches!(
            eval_character(&c, &chi, &GroupElement::translation(vec![1])),
            Err(Error::NotInGamma0)
        ));
    }

    #[test]
    fn translation_action() {
        let c = ex1();
        let chi = CharacterPoint::new(&c, 1, &[int(1)], &[int(0)]).unwrap();
        let out = act(&c, &GroupElement::translation(vec![1]), &chi).unwrap();
        assert_eq!(out.lambda2, vec![int(0)]);
        let same = act(&c, &GroupElement::new(2, vec![4], vec![0]), &chi).unwrap();
        assert_eq!(same, chi);
    }

    #[test]
    fn stabilizers_and_orbits() {
        let c = ex1();
        let chi = |l1| CharacterPoint::new(&c, l1, &[rat(1, 5)], &[rat(1, 7)]).unwrap();
        assert!(stabilizer(&c, &chi(0)).unwrap().whole_group);
        let three = Lattice::new(&RatMatrix::from_rows(vec![vec![int(3)]]).unwrap()).unwrap();
        assert_eq!(stabilizer(&c, &chi(1)).unwrap().k_lattice, three);
        assert_eq!(stabilizer(&c, &chi(2)).unwrap().k_lattice, three);
        assert_eq!(orbit(&c, &chi(0)).unwrap().len(), 1);
        assert_eq!(orbit(&c, &chi(1)).unwrap().len(), 3);
        assert_eq!(little_group_invariants(&c, &chi(1)).unwrap(), vec![1]);
        assert_eq!(little_group_invariants(&c, &chi(0)).unwrap(), vec![3]);
    }

    #[test]
    fn section_ex1() {
        let s = cross_section(&ex1());
        assert_eq!(s.e_box_1.basis().get(0, 0), &rat(1, 2));
        assert_eq!(s.e_box_2.basis().get(0, 0), &rat(1, 3));
        assert_eq!(s.ell, 2);
        assert_eq!(s.mu_e, rat(1, 6));
    }
}
