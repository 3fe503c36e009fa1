//! Recognition of torus-invariant surfaces (orbit closures of (d−2)-cones)
//! through their star fans, closed-form intersection tensors for the two
//! recognized kinds, and the ch₂ pairing.
//!
//! A (d−2)-cone whose star fan has three rays carries a projective plane;
//! four rays carry a Hirzebruch surface. In both cases the full degree-2
//! tensor is a quadratic expression in one or two curve classes, so the
//! recursive engine can be bypassed. Anything with five or more star rays
//! falls back to the engine.

use crate::chow::{Chow, CycleClass};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, RayId};
use crate::matrix::Vector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// What the star fan of a (d−2)-cone looks like.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    /// Three star rays: the orbit closure is a plane. Any wall through the
    /// cone serves as the curve; the lowest-indexed one is chosen.
    P2 { curve_wall: Cone },
    /// Four star rays: a Hirzebruch surface of degree `alpha`. The fiber
    /// wall's opposite rays are the antipodal star pair; the negative wall
    /// passes through the star ray whose coefficient in its relation is
    /// −alpha.
    Hirzebruch { alpha: BigInt, fiber_wall: Cone, negative_wall: Cone },
    /// Five or more star rays: unrecognized; use the engine directly.
    Other { ray_count: usize },
}

impl SurfaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceKind::P2 { .. } => "P2",
            SurfaceKind::Hirzebruch { .. } => "Hirzebruch",
            SurfaceKind::Other { .. } => "Other",
        }
    }

    pub fn alpha(&self) -> Option<&BigInt> {
        match self {
            SurfaceKind::Hirzebruch { alpha, .. } => Some(alpha),
            _ => None,
        }
    }
}

/// Sorts 2-vectors counterclockwise starting from the positive x-axis.
/// Exact: a half-plane split followed by a cross-product comparison.
fn angular_order(a: &Vector, b: &Vector) -> std::cmp::Ordering {
    let half = |v: &Vector| -> u8 {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        // cross > 0 means a is clockwise of b within the half-plane.
        BigInt::zero().cmp(&cross)
    })
}

/// Identifies the surface carried by a (d−2)-cone from its star fan.
pub fn classify_surface(fan: &Fan, tau: &Cone) -> Result<SurfaceKind> {
    if fan.dim() < 2 {
        return Err(Error::FanDimensionTooSmall { got: fan.dim(), need: 2 });
    }
    if tau.dim() + 2 != fan.dim() {
        return Err(Error::WrongConeDimension { need: fan.dim() - 2, got: tau.dim() });
    }
    let star = fan.star_fan(tau)?;
    let mut rays: Vec<(RayId, &Vector)> =
        star.image_rays.iter().map(|(&id, v)| (id, v)).collect();
    match rays.len() {
        3 => Ok(SurfaceKind::P2 { curve_wall: tau.with(rays[0].0) }),
        4 => {
            rays.sort_by(|a, b| angular_order(a.1, b.1));
            let pair_sum = |i: usize, j: usize| -> Vector {
                vec![&rays[i].1[0] + &rays[j].1[0], &rays[i].1[1] + &rays[j].1[1]]
            };
            // Cyclic opposite pairs; exactly one has sum zero unless the
            // star is a product, where both do.
            let sums = [pair_sum(0, 2), pair_sum(1, 3)];
            let (fiber_pair, section_pair) = if sums[1].iter().all(Zero::is_zero) {
                // Degree 0 with both sums zero routes here too: the fiber
                // is then the pair containing the lowest star ray, and
                // rays[0] has the lowest id only by accident of angle, so
                // pick explicitly.
                if sums[0].iter().all(Zero::is_zero) {
                    let lowest = rays.iter().map(|r| r.0).min().unwrap();
                    if rays[0].0 == lowest || rays[2].0 == lowest {
                        ([rays[0], rays[2]], [rays[1], rays[3]])
                    } else {
                        ([rays[1], rays[3]], [rays[0], rays[2]])
                    }
                } else {
                    ([rays[0], rays[2]], [rays[1], rays[3]])
                }
            } else if sums[0].iter().all(Zero::is_zero) {
                ([rays[1], rays[3]], [rays[0], rays[2]])
            } else {
                return Err(Error::internal("four-ray star has no antipodal pair"));
            };
            // Fiber-pair sum = alpha · (a section ray); that ray's wall is
            // the negative section.
            let sum = vec![
                &fiber_pair[0].1[0] + &fiber_pair[1].1[0],
                &fiber_pair[0].1[1] + &fiber_pair[1].1[1],
            ];
            let (alpha, neg_ray) = ratio_to_pair(&sum, &section_pair)?;
            let fiber_ray = fiber_pair[0].0.min(fiber_pair[1].0);
            Ok(SurfaceKind::Hirzebruch {
                alpha,
                fiber_wall: tau.with(fiber_ray),
                negative_wall: tau.with(neg_ray),
            })
        }
        count => Ok(SurfaceKind::Other { ray_count: count }),
    }
}

/// Writes `sum` as α·v for one of the two section rays with α ≥ 0 and
/// returns (α, that ray's id). A zero sum picks the lower-indexed ray.
fn ratio_to_pair(sum: &Vector, pair: &[(RayId, &Vector); 2]) -> Result<(BigInt, RayId)> {
    if sum.iter().all(Zero::is_zero) {
        return Ok((BigInt::zero(), pair[0].0.min(pair[1].0)));
    }
    for (id, v) in pair {
        let k = if v[0].is_zero() { 1 } else { 0 };
        let (q, r) = num_integer::div_rem(sum[k].clone(), v[k].clone());
        if r.is_zero()
            && q.is_positive()
            && sum[0] == &q * &v[0]
            && sum[1] == &q * &v[1]
        {
            return Ok((q, *id));
        }
    }
    Err(Error::internal("fiber-pair sum is not a positive multiple of a section ray"))
}

/// Closed-form degree-2 tensor for recognized kinds.
///
/// Plane: I = (curve class)², so N({i,j}) = c_i·c_j.
/// Hirzebruch of degree α: I = α·(fiber)² + 2·(fiber)·(negative section),
/// so N({i,j}) = α·f_i·f_j + f_i·g_j + f_j·g_i.
pub fn surface_class_fast(chow: &mut Chow, tau: &Cone) -> Result<CycleClass> {
    let kind = classify_surface(chow.fan(), tau)?;
    match kind {
        SurfaceKind::P2 { curve_wall } => {
            let c = chow.curve_class(&curve_wall)?;
            let zero = CycleClass::new(1);
            Ok(quadratic_tensor(&BigInt::one(), &c, &zero))
        }
        SurfaceKind::Hirzebruch { alpha, fiber_wall, negative_wall } => {
            let f = chow.curve_class(&fiber_wall)?;
            let g = chow.curve_class(&negative_wall)?;
            Ok(quadratic_tensor(&alpha, &f, &g))
        }
        SurfaceKind::Other { ray_count } => Err(Error::UnsupportedSurface {
            detail: format!("star fan has {ray_count} rays"),
        }),
    }
}

/// The symmetric tensor of α·F² + 2·F·G for degree-1 classes F, G:
/// N({i,j}) = α·f_i·f_j + f_i·g_j + f_j·g_i. With G = 0 and α = 1 this is
/// the square of F.
fn quadratic_tensor(alpha: &BigInt, f: &CycleClass, g: &CycleClass) -> CycleClass {
    let mut support: Vec<RayId> = f.coeffs().keys().chain(g.coeffs().keys()).map(|k| k[0]).collect();
    support.sort_unstable();
    support.dedup();
    let mut class = CycleClass::new(2);
    for (a, &i) in support.iter().enumerate() {
        for &j in &support[a..] {
            let value = alpha * f.coefficient(&[i]) * f.coefficient(&[j])
                + f.coefficient(&[i]) * g.coefficient(&[j])
                + f.coefficient(&[j]) * g.coefficient(&[i]);
            class.set(vec![i, j], value);
        }
    }
    class
}

/// Dispatch: closed form when recognized, engine otherwise.
pub fn surface_class(chow: &mut Chow, tau: &Cone) -> Result<(SurfaceKind, CycleClass)> {
    let kind = classify_surface(chow.fan(), tau)?;
    let class = match kind {
        SurfaceKind::Other { .. } => chow.class_polynomial(tau)?,
        _ => surface_class_fast(chow, tau)?,
    };
    Ok((kind, class))
}

/// (ch₂ · S) = ½·Σ_i N({i,i}) for a degree-2 tensor.
pub fn ch2_pair(class: &CycleClass) -> Result<BigRational> {
    if class.degree() != 2 {
        return Err(Error::WrongClassDegree { expected: 2, got: class.degree() });
    }
    let mut diag = BigInt::zero();
    for (key, value) in class.coeffs() {
        if key[0] == key[1] {
            diag += value;
        }
    }
    Ok(BigRational::new(diag, BigInt::from(2)))
}
