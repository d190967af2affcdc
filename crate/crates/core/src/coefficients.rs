//! Constitutive functions of the model and their parameters.
//!
//! The `VolumeFilling` kind uses a(u) = eps * u * (1 - u), f(u) = (1 - u)^2 and
//! g(u, v) = alpha * u - beta * v; the `LinearVerification` kind reduces the
//! u-equation to the plain heat equation (a = 1, f = 0) for validation runs.

use crate::Error;

/// Which set of model functions to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientKind {
    /// Degenerate diffusion eps*u*(1-u) with volume filling (1-u)^2.
    VolumeFilling,
    /// a = 1, f = 0: the u-equation becomes the heat equation.
    LinearVerification,
}

/// Model functions and scalar parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientSet {
    pub kind: CoefficientKind,
    /// p-Laplacian exponent, >= 2.
    pub p: f64,
    /// Diffusion amplitude in a(u) = eps * u * (1 - u).
    pub eps: f64,
    /// Regularization added to a (0 disables).
    pub eps_reg: f64,
    /// Chemotactic sensitivity.
    pub chi: f64,
    /// Chemoattractant diffusivity.
    pub d: f64,
    /// Chemoattractant production rate per unit cell density.
    pub alpha: f64,
    /// Chemoattractant decay rate.
    pub beta: f64,
}

fn clamp_unit(u: f64) -> f64 {
    u.clamp(0.0, 1.0)
}

impl CoefficientSet {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        kind: CoefficientKind,
        p: f64,
        eps: f64,
        eps_reg: f64,
        chi: f64,
        d: f64,
        alpha: f64,
        beta: f64,
    ) -> Result<Self, Error> {
        if !(p >= 2.0) {
            return Err(Error::Config(format!("p must satisfy p >= 2, got p = {p}")));
        }
        if !(eps > 0.0) {
            return Err(Error::Config(format!(
                "eps must be positive, got eps = {eps}"
            )));
        }
        if !(eps_reg >= 0.0) {
            return Err(Error::Config(format!(
                "eps_reg must be >= 0, got eps_reg = {eps_reg}"
            )));
        }
        if !(chi >= 0.0) {
            return Err(Error::Config(format!("chi must be >= 0, got chi = {chi}")));
        }
        if !(d > 0.0) {
            return Err(Error::Config(format!("d must be positive, got d = {d}")));
        }
        if !(alpha >= 0.0) || !(beta >= 0.0) {
            return Err(Error::Config(format!(
                "alpha and beta must be >= 0, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self {
            kind,
            p,
            eps,
            eps_reg,
            chi,
            d,
            alpha,
            beta,
        })
    }

    /// Diffusion coefficient a(u). Input is clamped to [0, 1]; roundoff can
    /// push cell values a few ulps outside the admissible range.
    pub fn diffusivity(&self, u: f64) -> f64 {
        match self.kind {
            CoefficientKind::VolumeFilling => {
                let u = clamp_unit(u);
                self.eps * u * (1.0 - u) + self.eps_reg
            }
            CoefficientKind::LinearVerification => 1.0,
        }
    }

    /// Integrated diffusion coefficient A(u) = int_0^u a(s) ds, in closed form.
    pub fn integrated_diffusivity(&self, u: f64) -> f64 {
        let u = clamp_unit(u);
        match self.kind {
            CoefficientKind::VolumeFilling => {
                self.eps * (u * u / 2.0 - u * u * u / 3.0) + self.eps_reg * u
            }
            CoefficientKind::LinearVerification => u,
        }
    }

    /// Volume-filling factor f(u); f(1) = 0 switches chemotactic transport
    /// off at the maximal density.
    pub fn volume_filling(&self, u: f64) -> f64 {
        match self.kind {
            CoefficientKind::VolumeFilling => {
                let w = 1.0 - clamp_unit(u);
                w * w
            }
            CoefficientKind::LinearVerification => 0.0,
        }
    }

    /// Chemoattractant production/decay g(u, v) = alpha * u - beta * v.
    pub fn reaction(&self, u: f64, v: f64) -> f64 {
        self.alpha * u - self.beta * v
    }

    /// Upper bound for a on [0, 1], used by the time-step heuristic.
    pub fn max_diffusivity(&self) -> f64 {
        match self.kind {
            CoefficientKind::VolumeFilling => self.eps / 4.0 + self.eps_reg,
            CoefficientKind::LinearVerification => 1.0,
        }
    }

    /// Lipschitz constant of u -> u * f(u) on [0, 1]. For (1-u)^2 the
    /// derivative is (1-u)(1-3u), with maximal absolute value 1.
    pub fn drift_lipschitz(&self) -> f64 {
        1.0
    }
}
