use crate::error::{Error, Result};
use crate::field::{ExactMatrix, FieldElement, FieldTower};

/// Exponents of the ten cubic monomials in `x1, x2, x3`, graded-lex with
/// `x1 > x2 > x3`.
pub fn cubic_monomials() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in (0..=3u32).rev() {
        for j in (0..=3 - i).rev() {
            out.push([i, j, 3 - i - j]);
        }
    }
    out
}

fn monomial_name(e: &[u32; 3]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, p) })
        .collect();
    parts.join("*")
}

/// A ternary cubic, scaled so that its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurveEquation {
    pub coeffs: Vec<FieldElement>,
}

impl PlaneCurveEquation {
    pub fn new(coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != 10 {
            return Err(Error::DimensionMismatch(format!("a cubic has 10 coefficients, got {}", coeffs.len())));
        }
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()) else {
            return Err(Error::DimensionMismatch("zero cubic".into()));
        };
        let li = lead.inv().unwrap();
        Ok(PlaneCurveEquation { coeffs: coeffs.iter().map(|c| c * &li).collect() })
    }

    pub fn tower(&self) -> &FieldTower {
        self.coeffs[0].tower()
    }

    pub fn monomial_names() -> Vec<String> {
        cubic_monomials().iter().map(monomial_name).collect()
    }

    pub fn eval(&self, p: &[FieldElement]) -> FieldElement {
        monomial_values(p).iter().zip(&self.coeffs).fold(p[0].tower().zero(), |acc, (m, c)| &acc + &(m * c))
    }
}

impl std::fmt::Display for PlaneCurveEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(Self::monomial_names())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| if c.is_one() { m } else { format!("({c})*{m}") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn monomial_values(p: &[FieldElement]) -> Vec<FieldElement> {
    cubic_monomials()
        .iter()
        .map(|e| &(&p[0].pow(e[0] as u64) * &p[1].pow(e[1] as u64)) * &p[2].pow(e[2] as u64))
        .collect()
}

/// Result of [`interpolate_plane_curve`].
#[derive(Clone, Debug)]
pub struct Interpolation {
    pub equation: PlaneCurveEquation,
    pub rank: usize,
    pub kernel_dimension: usize,
}

/// The cubic over `base` through the given points of `P^2`.
///
/// Each point may live in its own extension of `base`; its conditions are
/// split into coordinates over `base`.
pub fn interpolate_plane_curve(points: &[Vec<FieldElement>], base: &FieldTower) -> Result<Interpolation> {
    let mut rows = Vec::new();
    for p in points {
        if p.len() != 3 {
            return Err(Error::DimensionMismatch("plane points need three coordinates".into()));
        }
        let split: Vec<Vec<FieldElement>> = monomial_values(p).iter().map(|v| v.blocks_over(base)).collect();
        for b in 0..split[0].len() {
            rows.push(split.iter().map(|s| s[b].clone()).collect());
        }
    }
    let m = ExactMatrix::from_rows(base, rows)?;
    let kernel = m.kernel_basis();
    match kernel.len() {
        0 => Err(Error::KernelEmpty),
        1 => Ok(Interpolation {
            equation: PlaneCurveEquation::new(kernel.into_iter().next().unwrap())?,
            rank: m.rank(),
            kernel_dimension: 1,
        }),
        d => Err(Error::KernelTooBig(d)),
    }
}
