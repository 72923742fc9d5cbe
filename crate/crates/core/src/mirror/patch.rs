//! Affine charts U_σ = Spec ℂ[σ^∨ ∩ M] and the family restricted to them.

use std::fmt;

use super::cox::Psi;
use super::cyclotomic::Cyc;
use super::laurent::{LaurentPolynomial, PsiPoly, Variables};
use crate::arith::z_to_i64;
use crate::arith::integer_kernel;
use crate::builtin::{u, v};
use crate::error::{Error, Result};
use crate::lattice::{Cone, LatticeVector};
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub character: LatticeVector,
    /// Exponents over the chart's Cox variables.
    pub exponents: Vec<i64>,
}

/// y^lhs = y^rhs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct AffinePatch {
    pub variables: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Binomial>,
    /// Family equations in y₁..y_k.
    pub equations: Vec<LaurentPolynomial>,
}

impl AffinePatch {
    pub fn generator_monomial(&self, i: usize) -> String {
        monomial(&self.variables, &self.generators[i].exponents)
    }

    pub fn generator_index(&self, mono: &str) -> Option<usize> {
        (0..self.generators.len()).find(|&i| self.generator_monomial(i) == mono)
    }
}

fn monomial(names: &[String], e: &[i64]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(e)
        .filter(|(_, &k)| k != 0)
        .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() { "1".into() } else { parts.join("*") }
}

impl fmt::Display for AffinePatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.generators.len() {
            writeln!(f, "y{} = {}", i + 1, self.generator_monomial(i))?;
        }
        let ys: Vec<String> = (1..=self.generators.len()).map(|i| format!("y{i}")).collect();
        for r in &self.relations {
            writeln!(f, "{} = {}", monomial(&ys, &r.lhs), monomial(&ys, &r.rhs))?;
        }
        for e in &self.equations {
            writeln!(f, "{e} = 0")?;
        }
        Ok(())
    }
}

/// Nonnegative integer combination of `gens` equal to `target`.
fn decompose(target: &[i64], gens: &[Vec<i64>], start: usize) -> Option<Vec<i64>> {
    if target.iter().all(|&x| x == 0) {
        return Some(vec![0; gens.len()]);
    }
    for (i, g) in gens.iter().enumerate().skip(start) {
        if g.iter().all(|&x| x == 0) {
            continue;
        }
        let rest: Vec<i64> = target.iter().zip(g).map(|(a, b)| a - b).collect();
        if rest.iter().all(|&x| x >= 0) {
            if let Some(mut c) = decompose(&rest, gens, i) {
                c[i] += 1;
                return Some(c);
            }
        }
    }
    None
}

/// Chart presentation of `cone`, whose rays must be among the named Cox rays.
pub fn affine_patch(cone: &Cone, cox: &[(String, LatticeVector)], equations: &[LaurentPolynomial]) -> Result<AffinePatch> {
    let rank = cone.space().rank();
    if cone.dim() != rank {
        return Err(Error::NotFullDimensional { dim: cone.dim(), rank });
    }
    let keep: Vec<usize> = cone
        .rays()
        .iter()
        .map(|r| cox.iter().position(|(_, c)| c == r).ok_or_else(|| Error::UnknownRay(r.to_string())))
        .collect::<Result<_>>()?;
    let mut keep_sorted = keep.clone();
    keep_sorted.sort_unstable();
    let variables: Vec<String> = keep_sorted.iter().map(|&i| cox[i].0.clone()).collect();
    let rays: Vec<&LatticeVector> = keep_sorted.iter().map(|&i| &cox[i].1).collect();

    let mut generators: Vec<Generator> = cone
        .dual()
        .hilbert_basis()?
        .into_iter()
        .map(|m| {
            let exponents = rays.iter().map(|r| m.pair(r)).collect::<Result<Vec<_>>>()?;
            Ok(Generator { character: m, exponents })
        })
        .collect::<Result<_>>()?;
    generators.sort_by(|a, b| b.exponents.cmp(&a.exponents));

    let k = generators.len();
    let matrix: Vec<Vec<i64>> =
        (0..rays.len()).map(|r| generators.iter().map(|g| g.exponents[r]).collect()).collect();
    let relations = integer_kernel(&matrix, k)
        .iter()
        .map(|z| {
            let z = z_to_i64(z)?;
            Ok(Binomial {
                lhs: z.iter().map(|&x| x.max(0)).collect(),
                rhs: z.iter().map(|&x| (-x).max(0)).collect(),
            })
        })
        .collect::<Result<_>>()?;

    let gen_exps: Vec<Vec<i64>> = generators.iter().map(|g| g.exponents.clone()).collect();
    let ys = Variables::Cox((1..=k).map(|i| format!("y{i}")).collect());
    let equations = equations
        .iter()
        .map(|h| {
            let local = h.restrict(&keep_sorted);
            let mut out = LaurentPolynomial::zero(ys.clone());
            for (e, c) in local.terms() {
                let y = decompose(e, &gen_exps, 0)
                    .ok_or_else(|| Error::Invalid(format!("monomial {} is not regular on the chart", monomial(&variables, e))))?;
                out.add_term(y, c.clone());
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(AffinePatch { variables, generators, relations, equations })
}

/// Cox rays u₁..u₆, v₁..v₆ of Σ_∇.
pub fn nabla_cox_rays() -> Vec<(String, LatticeVector)> {
    (1..=6).map(|i| (format!("u{i}"), u(i))).chain((1..=6).map(|i| (format!("v{i}"), v(i)))).collect()
}

/// r₁ = 3ψ u₁⋯u₆ − Σ_{i≤3} u_i³v_i³ and r₂ = 3ψ v₁⋯v₆ − Σ_{i≥4} u_i³v_i³.
pub fn nabla_equations(psi: &Psi) -> [LaurentPolynomial; 2] {
    let vars = Variables::Cox(nabla_cox_rays().into_iter().map(|(n, _)| n).collect());
    let three_psi = match psi {
        Psi::Value(p) => PsiPoly::constant(&Cyc::int(3) * p),
        Psi::Symbol => PsiPoly::monomial(Cyc::int(3), 1),
    };
    let minus_one = PsiPoly::constant(-Cyc::one());
    let build = |offset: usize, range: std::ops::RangeInclusive<usize>| {
        let mut lead = vec![0; 12];
        lead[offset..offset + 6].iter_mut().for_each(|x| *x = 1);
        let mut h = LaurentPolynomial::zero(vars.clone()).with_term(lead, three_psi.clone());
        for i in range {
            let mut e = vec![0; 12];
            e[i - 1] = 3;
            e[i + 5] = 3;
            h.add_term(e, minus_one.clone());
        }
        h
    };
    [build(0, 1..=3), build(6, 4..=6)]
}

pub fn nabla_patch(cone: &Cone, psi: &Psi) -> Result<AffinePatch> {
    affine_patch(cone, &nabla_cox_rays(), &nabla_equations(psi))
}
