//! Fan builders for the standard families: projective spaces, Hirzebruch
//! surfaces, products, projectivized split bundles over projective space
//! (Kleinschmidt's Picard-rank-2 classification), and the five smooth toric
//! del Pezzo surfaces.

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, RayId};
use crate::matrix::{vector, Vector};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// P^d: rays e₁,…,e_d and −(e₁+⋯+e_d); maximal cones are all d-subsets.
pub fn projective_space(d: usize) -> Result<Fan> {
    if d < 1 {
        return Err(Error::FanDimensionTooSmall { got: d, need: 1 });
    }
    let mut rays: Vec<Vector> = (0..d).map(|i| unit(d, i)).collect();
    rays.push(vec![BigInt::from(-1); d]);
    let max_cones = (0..=d)
        .map(|skip| (0..=d).filter(|&r| r != skip).collect())
        .collect();
    Fan::validate(d, rays, max_cones)
}

/// F_α: rays e₁, e₂, −e₁+αe₂, −e₂ with the four adjacent cones.
pub fn hirzebruch(alpha: i64) -> Result<Fan> {
    if alpha < 0 {
        return Err(Error::InvalidBundle { detail: format!("negative degree {alpha}") });
    }
    let rays = vec![
        vector(&[1, 0]),
        vector(&[0, 1]),
        vector(&[-1, alpha]),
        vector(&[0, -1]),
    ];
    let max_cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
    Fan::validate(2, rays, max_cones)
}

/// Product fan: rays block-diagonally embedded, maximal cones all pairwise
/// unions.
pub fn product(a: &Fan, b: &Fan) -> Result<Fan> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da + db;
    let mut rays = Vec::with_capacity(a.n_rays() + b.n_rays());
    for ray in a.rays() {
        let mut v = ray.clone();
        v.extend(std::iter::repeat_with(BigInt::zero).take(db));
        rays.push(v);
    }
    for ray in b.rays() {
        let mut v: Vector = std::iter::repeat_with(BigInt::zero).take(da).collect();
        v.extend_from_slice(ray);
        rays.push(v);
    }
    let offset = a.n_rays();
    let mut max_cones = Vec::with_capacity(a.max_cones().len() * b.max_cones().len());
    for ca in a.max_cones() {
        for cb in b.max_cones() {
            let mut ids = ca.to_vec();
            ids.extend(cb.ids().iter().map(|&r| r + offset));
            max_cones.push(ids);
        }
    }
    Fan::validate(dim, rays, max_cones)
}

/// Parameters of the projectivized bundle
/// P(O ⊕ O(a₁) ⊕ ⋯ ⊕ O(a_{m−1})) over P^{n−1}: fiber dimension m−1, base
/// dimension n−1, twists sorted descending with a_{m−1} ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BundleSpec {
    pub m: usize,
    pub n: usize,
    pub twists: Vec<i64>,
}

impl BundleSpec {
    pub fn new(m: usize, n: usize, twists: Vec<i64>) -> Result<BundleSpec> {
        if m < 2 || n < 2 {
            return Err(Error::InvalidBundle {
                detail: format!("need m >= 2 and n >= 2, got m = {m}, n = {n}"),
            });
        }
        if twists.len() != m - 1 {
            return Err(Error::InvalidBundle {
                detail: format!("expected {} twists, got {}", m - 1, twists.len()),
            });
        }
        if twists.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidBundle { detail: "twists must be sorted descending".into() });
        }
        if twists.last().is_some_and(|&a| a < 0) {
            return Err(Error::InvalidBundle { detail: "twists must be non-negative".into() });
        }
        Ok(BundleSpec { m, n, twists })
    }

    pub fn dim(&self) -> usize {
        self.m + self.n - 2
    }

    pub fn sum_twists(&self) -> i64 {
        self.twists.iter().sum()
    }
}

/// A Kleinschmidt bundle fan together with the canonical ids of its
/// distinguished rays: x_rays[i] is x_{i+1} (the fiber block), y_rays[j]
/// is y_{j+1} (the base block).
pub struct Kleinschmidt {
    pub spec: BundleSpec,
    pub fan: Fan,
    pub x_rays: Vec<RayId>,
    pub y_rays: Vec<RayId>,
}

impl Kleinschmidt {
    /// In Z^{m−1} ⊕ Z^{n−1}: x_i = e_i, x_m = −Σe_i, y_j = f_j,
    /// y_n = −Σf_j + Σa_i e_i. Maximal cones omit one x and one y.
    pub fn build(spec: BundleSpec) -> Result<Kleinschmidt> {
        let (m, n) = (spec.m, spec.n);
        let d = spec.dim();
        let mut raw_rays: Vec<Vector> = Vec::with_capacity(m + n);
        for i in 0..m - 1 {
            raw_rays.push(unit(d, i));
        }
        let mut xm = vec![BigInt::from(-1); m - 1];
        xm.extend(std::iter::repeat_with(BigInt::zero).take(n - 1));
        raw_rays.push(xm);
        for j in 0..n - 1 {
            raw_rays.push(unit(d, m - 1 + j));
        }
        let mut yn: Vector = spec.twists.iter().map(|&a| BigInt::from(a)).collect();
        yn.extend(std::iter::repeat(BigInt::from(-1)).take(n - 1));
        raw_rays.push(yn);

        let mut max_cones = Vec::with_capacity(m * n);
        for skip_x in 0..m {
            for skip_y in 0..n {
                let mut ids: Vec<RayId> = (0..m).filter(|&i| i != skip_x).collect();
                ids.extend((0..n).filter(|&j| j != skip_y).map(|j| m + j));
                max_cones.push(ids);
            }
        }
        let fan = Fan::validate(d, raw_rays.clone(), max_cones)?;
        let locate = |v: &Vector| {
            fan.find_ray(v)
                .ok_or_else(|| Error::internal("constructed ray missing after canonicalization"))
        };
        let x_rays = raw_rays[..m].iter().map(locate).collect::<Result<Vec<_>>>()?;
        let y_rays = raw_rays[m..].iter().map(locate).collect::<Result<Vec<_>>>()?;
        Ok(Kleinschmidt { spec, fan, x_rays, y_rays })
    }

    /// Wall whose relation is x₁ + ⋯ + x_m = 0: all x's but the last two,
    /// all y's but the last.
    pub fn wall_c1(&self) -> Cone {
        let mut ids: Vec<RayId> = self.x_rays[..self.spec.m - 2].to_vec();
        ids.extend_from_slice(&self.y_rays[..self.spec.n - 1]);
        Cone::new(ids)
    }

    /// Wall whose relation is y₁ + ⋯ + y_n = a₁x₁ + ⋯ + a_{m−1}x_{m−1}.
    pub fn wall_c2(&self) -> Cone {
        let mut ids: Vec<RayId> = self.x_rays[..self.spec.m - 1].to_vec();
        ids.extend_from_slice(&self.y_rays[..self.spec.n - 2]);
        Cone::new(ids)
    }

    /// (d−2)-cone whose star is a plane: omit three x's, one y.
    /// Defined only when m ≥ 3.
    pub fn s1_cone(&self) -> Option<Cone> {
        if self.spec.m < 3 {
            return None;
        }
        let mut ids: Vec<RayId> = self.x_rays[..self.spec.m - 3].to_vec();
        ids.extend_from_slice(&self.y_rays[..self.spec.n - 1]);
        Some(Cone::new(ids))
    }

    /// (d−2)-cone whose star is the Hirzebruch surface of degree a_{m−1}:
    /// omit two x's, two y's.
    pub fn s2_cone(&self) -> Cone {
        let mut ids: Vec<RayId> = self.x_rays[..self.spec.m - 2].to_vec();
        ids.extend_from_slice(&self.y_rays[..self.spec.n - 2]);
        Cone::new(ids)
    }

    /// (d−2)-cone whose star is a plane: omit one x, three y's.
    /// Defined only when n ≥ 3.
    pub fn s3_cone(&self) -> Option<Cone> {
        if self.spec.n < 3 {
            return None;
        }
        let mut ids: Vec<RayId> = self.x_rays[..self.spec.m - 1].to_vec();
        ids.extend_from_slice(&self.y_rays[..self.spec.n - 3]);
        Some(Cone::new(ids))
    }
}

/// Convenience wrapper returning just the fan.
pub fn kleinschmidt_bundle(spec: BundleSpec) -> Result<Fan> {
    Ok(Kleinschmidt::build(spec)?.fan)
}

/// The five smooth toric del Pezzo surfaces: P², P¹×P¹, and the blow-ups
/// of P² in 1, 2, 3 torus-fixed points (star subdivisions of maximal cones).
pub fn del_pezzo_database() -> Result<Vec<(String, Fan)>> {
    let p2 = projective_space(2)?;
    let p1 = projective_space(1)?;
    let p1xp1 = product(&p1, &p1)?;
    let cone_at = |fan: &Fan, a: &[i64], b: &[i64]| -> Result<Cone> {
        let find = |v: &[i64]| {
            fan.find_ray(&vector(v)).ok_or_else(|| Error::internal("del Pezzo ray lookup failed"))
        };
        Ok(Cone::new(vec![find(a)?, find(b)?]))
    };
    let bl1 = p2.star_subdivision(&cone_at(&p2, &[1, 0], &[0, 1])?)?;
    let bl2 = bl1.star_subdivision(&cone_at(&bl1, &[1, 0], &[-1, -1])?)?;
    let bl3 = bl2.star_subdivision(&cone_at(&bl2, &[0, 1], &[-1, -1])?)?;
    Ok(vec![
        ("P2".into(), p2),
        ("P1xP1".into(), p1xp1),
        ("Bl1P2".into(), bl1),
        ("Bl2P2".into(), bl2),
        ("Bl3P2".into(), bl3),
    ])
}

fn unit(dim: usize, i: usize) -> Vector {
    let mut v: Vector = std::iter::repeat_with(BigInt::zero).take(dim).collect();
    v[i] = BigInt::from(1);
    v
}
