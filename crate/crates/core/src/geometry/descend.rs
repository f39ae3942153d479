use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::plane::{interpolate_plane_curve, PlaneCurveEquation};
use super::points::{extract_point, g_eval, lambda_eval};
use super::quadrics::{quadrics_for_c, QuadricSystem};
use crate::algebra::{solve_gamma, validate_rho, Csa, GammaWitness, RhoTable, Trivialisation};
use crate::curve::{sample_point, Curve, TorsionTable};
use crate::descent::{EpsilonTable, GBasis};
use crate::error::{Error, Result};
use crate::field::{format_rational, FieldElement};

const FIT_POINTS: usize = 10;
const MAX_FIT_POINTS: usize = 30;
const HELD_OUT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub seed: u64,
    pub checks: Vec<Check>,
    /// `x`-coordinates of the sampled points, fitting points first.
    pub sample_x: Vec<String>,
    pub fit_points: usize,
    pub held_out: usize,
    pub kernel_dimension: usize,
    pub rank: usize,
}

impl DescentReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct DescentOutput {
    pub rho: RhoTable,
    pub quadrics: QuadricSystem,
    pub csa: Csa,
    pub gamma: GammaWitness,
    pub equation: PlaneCurveEquation,
    pub report: DescentReport,
}

struct Sampler<'a> {
    curve: Curve,
    rng: ChaCha8Rng,
    g: &'a GBasis,
    gamma: &'a GammaWitness,
    quadrics: &'a QuadricSystem,
    triv: &'a Trivialisation,
    xs: Vec<String>,
}

impl Sampler<'_> {
    /// Image in `P^{n-1}` of a fresh point of `C`, after checking the
    /// quadrics and the rank of the matrix point.
    fn next(&mut self) -> Result<Vec<FieldElement>> {
        loop {
            let p = sample_point(&self.curve, &mut self.rng, &[]);
            let z = match g_eval(self.g, Some(self.gamma), &p) {
                Ok(z) => z,
                Err(Error::BadBasePoint(_)) => continue,
                Err(e) => return Err(e),
            };
            if let Some(k) = self.quadrics.first_nonvanishing(&z) {
                return Err(Error::CertificationFailed { what: "quadric vanishes on C".into(), witness: vec![k] });
            }
            let lam = lambda_eval(self.triv, &z)?;
            self.xs.push(format_rational(&p.x().unwrap().as_rational().unwrap()));
            return Ok(extract_point(&lam)?.0);
        }
    }
}

fn pass(name: &str, detail: String) -> Check {
    Check { name: name.into(), pass: true, detail }
}

/// Plane cubic model of the covering attached to `rho`, from a certified
/// trivialisation of its obstruction algebra.
pub fn descend(
    table: &TorsionTable,
    eps: &EpsilonTable,
    g: &GBasis,
    rho: &RhoTable,
    triv: &Trivialisation,
    seed: u64,
) -> Result<DescentOutput> {
    // the plane model is a cubic
    if table.n() != 3 {
        return Err(Error::UnsupportedN(table.n()));
    }
    let k = table.curve().field();
    let mut checks = Vec::new();
    let rep = validate_rho(table, rho)?;
    checks.push(pass("rho validated", rep.criterion.into()));
    let rho = rep.normalized;

    let csa = Csa::build(table, eps, &rho)?;
    let cert = csa.certification();
    checks.push(pass(
        "algebra certified",
        format!(
            "associative, unit index {}, center dimension {}, trace form rank {}",
            cert.unit_index, cert.center_dimension, cert.trace_form_rank
        ),
    ));
    triv.certify(&csa)?;
    checks.push(pass("trivialisation certified", format!("{} images, mode {}", triv.images.len(), triv.mode.name())));

    let quadrics = quadrics_for_c(table, &rho)?;
    checks.push(pass("quadric rank", format!("{} forms, rank {}", quadrics.len(), quadrics.rank())));
    let gamma = solve_gamma(table, &rho)?;
    checks.push(pass("gamma coboundary", format!("d(gamma) = rho over a degree {} field", gamma.tower.degree())));

    let curve = Curve::new(&gamma.tower, table.curve().a().clone(), table.curve().b().clone())?;
    let mut s = Sampler {
        curve,
        rng: ChaCha8Rng::seed_from_u64(seed),
        g,
        gamma: &gamma,
        quadrics: &quadrics,
        triv,
        xs: Vec::new(),
    };
    let mut pts = Vec::new();
    for _ in 0..FIT_POINTS {
        pts.push(s.next()?);
    }
    let fit = loop {
        match interpolate_plane_curve(&pts, k) {
            Err(Error::KernelTooBig(_)) if pts.len() < MAX_FIT_POINTS => pts.push(s.next()?),
            r => break r?,
        }
    };
    checks.push(pass("samples on quadrics", format!("{} points", pts.len())));
    checks.push(pass("matrix points have rank one", format!("{} points", pts.len())));
    checks.push(pass("interpolation", format!("kernel dimension {}, rank {}", fit.kernel_dimension, fit.rank)));

    for i in 0..HELD_OUT {
        let p = s.next()?;
        if !fit.equation.eval(&p).is_zero() {
            return Err(Error::CertificationFailed { what: "held-out point off the cubic".into(), witness: vec![i] });
        }
    }
    checks.push(pass("held-out points", format!("{HELD_OUT} points satisfy the cubic")));

    let report = DescentReport {
        seed,
        checks,
        sample_x: s.xs,
        fit_points: pts.len(),
        held_out: HELD_OUT,
        kernel_dimension: fit.kernel_dimension,
        rank: fit.rank,
    };
    Ok(DescentOutput { rho, quadrics, csa, gamma, equation: fit.equation, report })
}
