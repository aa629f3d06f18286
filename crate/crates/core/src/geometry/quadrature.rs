//! Quadrature on the circle, the sphere and the frame manifold.
//!
//! The sphere rule is a product of Gauss–Legendre nodes in the polar cosine
//! and uniform azimuths: level `L` uses `L` Gauss nodes and `2L` azimuths and
//! integrates every spherical polynomial of degree ≤ 2L − 1 exactly.
//! The frame rule integrates over M = {(v, w)} by Fubini: over each fiber of
//! p (a unit-speed circle of length 2π) and then over the sphere, so its
//! total mass is 2π · 4π = 8π².

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::frame::Frame;
use super::vec3::UnitVec3;
use super::GeometryError;

/// Summation of a slice in a fixed pairwise tree order.
///
/// The result depends only on the order of `values`, so parallel evaluation of
/// the terms followed by this reduction gives bit-stable totals.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Gauss–Legendre nodes (ascending) and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `n` uniform angles 2πi/n, each with weight 2π/n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRule {
    n: usize,
}

impl CircleRule {
    pub fn new(n: usize) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::EmptyRule);
        }
        Ok(CircleRule { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn weight(&self) -> f64 {
        TAU / self.n as f64
    }

    pub fn angle(&self, i: usize) -> f64 {
        TAU * i as f64 / self.n as f64
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.angle(i))
    }
}

impl Default for CircleRule {
    fn default() -> Self {
        CircleRule { n: 256 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereRule {
    level: usize,
    /// Gauss nodes in the polar cosine, ascending.
    polar: Vec<f64>,
    azimuths: usize,
    nodes: Vec<UnitVec3>,
    weights: Vec<f64>,
}

impl SphereRule {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Highest spherical-harmonic degree integrated exactly.
    pub fn degree(&self) -> usize {
        2 * self.level - 1
    }

    pub fn nodes(&self) -> &[UnitVec3] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn polar_nodes(&self) -> &[f64] {
        &self.polar
    }

    pub fn azimuth_count(&self) -> usize {
        self.azimuths
    }

    /// Index of the node at (polar index, azimuth index).
    pub fn index(&self, polar: usize, azimuth: usize) -> usize {
        polar * self.azimuths + azimuth
    }

    /// Index of the antipodal node. The node set is closed under v ↦ −v.
    pub fn antipodal_index(&self, i: usize) -> usize {
        let (row, col) = (i / self.azimuths, i % self.azimuths);
        let row = self.level - 1 - row;
        let col = (col + self.azimuths / 2) % self.azimuths;
        self.index(row, col)
    }

    pub fn integrate<F>(&self, h: F) -> Result<f64, GeometryError>
    where
        F: Fn(UnitVec3) -> f64,
    {
        integrate_sphere(self, h)
    }
}

pub fn sphere_rule(level: usize) -> Result<SphereRule, GeometryError> {
    if level == 0 {
        return Err(GeometryError::EmptyRule);
    }
    let (polar, gauss_w) = gauss_legendre(level);
    let azimuths = 2 * level;
    let dphi = TAU / azimuths as f64;
    let mut nodes = Vec::with_capacity(level * azimuths);
    let mut weights = Vec::with_capacity(level * azimuths);
    for (&z, &wz) in polar.iter().zip(&gauss_w) {
        for j in 0..azimuths {
            let phi = PI * j as f64 / level as f64;
            nodes.push(UnitVec3::from_polar(z, phi));
            weights.push(wz * dphi);
        }
    }
    Ok(SphereRule {
        level,
        polar,
        azimuths,
        nodes,
        weights,
    })
}

/// Σ wᵢ h(vᵢ), summed pairwise in node order.
pub fn integrate_sphere<F>(rule: &SphereRule, h: F) -> Result<f64, GeometryError>
where
    F: Fn(UnitVec3) -> f64,
{
    let mut terms = Vec::with_capacity(rule.len());
    for (&v, &w) in rule.nodes.iter().zip(&rule.weights) {
        let value = h(v);
        if !value.is_finite() {
            return Err(GeometryError::NonFinite {
                at: v.into(),
                value,
            });
        }
        terms.push(w * value);
    }
    Ok(pairwise_sum(&terms))
}

/// Product rule on M: base sphere rule for v, uniform fiber angles for w.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameRule {
    pub base: SphereRule,
    pub fiber: CircleRule,
}

impl FrameRule {
    pub fn new(base: SphereRule, fiber: CircleRule) -> Self {
        FrameRule { base, fiber }
    }

    pub fn total_mass(&self) -> f64 {
        let base: f64 = pairwise_sum(self.base.weights());
        base * self.fiber.weight() * self.fiber.len() as f64
    }

    /// All product nodes in evaluation order with their weights.
    pub fn frames(&self) -> impl Iterator<Item = (Frame, f64)> + '_ {
        let wf = self.fiber.weight();
        self.base
            .nodes()
            .iter()
            .zip(self.base.weights())
            .flat_map(move |(&v, &wv)| {
                self.fiber
                    .angles()
                    .map(move |t| (Frame::on_fiber(v, t), wv * wf))
            })
    }
}

/// Σ w_v (2π/n) h(frame(v, t)), where the fiber over v is
/// w(t) = cos(t) w₀ + sin(t) (v × w₀) with w₀ the great-circle frame vector of v.
pub fn integrate_frames<F>(rule: &FrameRule, h: F) -> Result<f64, GeometryError>
where
    F: Fn(&Frame) -> f64,
{
    let mut terms = Vec::with_capacity(rule.base.len() * rule.fiber.len());
    for (frame, weight) in rule.frames() {
        let value = h(&frame);
        if !value.is_finite() {
            return Err(GeometryError::NonFinite {
                at: frame.v().into(),
                value,
            });
        }
        terms.push(weight * value);
    }
    Ok(pairwise_sum(&terms))
}
