//! Fans of smooth complete toric varieties.
//!
//! A fan is stored canonically: rays sorted lexicographically, every cone as
//! a strictly increasing list of ray ids, maximal cones sorted. Structural
//! equality of two `Fan` values therefore means equality of the presented
//! fans (not isomorphism of the underlying varieties, which may need a
//! lattice automorphism).

use crate::error::{Error, Result};
use crate::matrix::{self, BasisExt, Mat, Vector};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub type RayId = usize;

/// A face of a fan: a strictly increasing list of ray ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Cone(Vec<RayId>);

impl Cone {
    /// The zero cone (the apex, dimension 0).
    pub fn zero() -> Cone {
        Cone(Vec::new())
    }

    /// Builds a cone from ids in any order. Duplicates are a caller bug.
    pub fn new(mut ids: Vec<RayId>) -> Cone {
        ids.sort_unstable();
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]), "duplicate ray id in cone");
        Cone(ids)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn ids(&self) -> &[RayId] {
        &self.0
    }

    pub fn contains(&self, id: RayId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    /// This cone extended by one ray.
    pub fn with(&self, id: RayId) -> Cone {
        let mut ids = self.0.clone();
        match ids.binary_search(&id) {
            Ok(_) => {}
            Err(pos) => ids.insert(pos, id),
        }
        Cone(ids)
    }

    /// This cone with one ray removed.
    pub fn without(&self, id: RayId) -> Cone {
        Cone(self.0.iter().copied().filter(|&r| r != id).collect())
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|id| other.contains(*id))
    }

    pub fn to_vec(&self) -> Vec<RayId> {
        self.0.clone()
    }
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, id) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

/// A codimension-one face together with the two maximal cones glued along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub rays: Cone,
    /// Indices into `Fan::max_cones`, in increasing order.
    pub cones: (usize, usize),
}

/// Wire format for a fan; the only JSON schema used anywhere in this crate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanJson {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A validated smooth complete fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vector>,
    max_cones: Vec<Cone>,
    faces: BTreeSet<Cone>,
    walls: Vec<Wall>,
}

impl Fan {
    /// Validates raw fan data and brings it to canonical form.
    ///
    /// Checks, in order: coordinate shapes, primitivity, distinctness of
    /// rays, well-formedness of the cone lists, unimodularity of every
    /// maximal cone (smoothness), the wall-pairing condition, and a
    /// deterministic generic-point coverage probe (completeness). Fans with
    /// torus factors cannot pass: a unimodular maximal cone forces the rays
    /// to span the ambient space.
    pub fn validate(dim: usize, rays: Vec<Vector>, raw_cones: Vec<Vec<RayId>>) -> Result<Fan> {
        if dim == 0 {
            return Err(Error::FanDimensionTooSmall { got: 0, need: 1 });
        }
        for (i, ray) in rays.iter().enumerate() {
            if ray.len() != dim {
                return Err(Error::DimensionMismatch { index: i, expected: dim, got: ray.len() });
            }
            if !matrix::content(ray).is_one() {
                return Err(Error::NonPrimitiveRay { index: i });
            }
        }
        let n_rays = rays.len();
        for (ci, cone) in raw_cones.iter().enumerate() {
            if let Some(&ray) = cone.iter().find(|&&r| r >= n_rays) {
                return Err(Error::InvalidRayIndex { index: ci, ray, n_rays });
            }
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != dim || cone.len() != dim {
                return Err(Error::MalformedCone { index: ci, expected: dim });
            }
        }
        let mut used = vec![false; n_rays];
        for cone in &raw_cones {
            for &r in cone {
                used[r] = true;
            }
        }
        if let Some(idx) = used.iter().position(|u| !u) {
            return Err(Error::UnusedRay { index: idx });
        }

        // Canonicalize: sort rays lexicographically and remap cone ids.
        let mut order: Vec<usize> = (0..n_rays).collect();
        order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        for pair in order.windows(2) {
            if rays[pair[0]] == rays[pair[1]] {
                let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                return Err(Error::DuplicateRay { first: a, second: b });
            }
        }
        let mut perm = vec![0usize; n_rays];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let rays: Vec<Vector> = order.iter().map(|&old| rays[old].clone()).collect();
        let mut max_cones: Vec<Cone> = raw_cones
            .iter()
            .map(|cone| Cone::new(cone.iter().map(|&r| perm[r]).collect()))
            .collect();
        max_cones.sort();
        for (i, pair) in max_cones.windows(2).enumerate() {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateCone { first: i, second: i + 1 });
            }
        }

        let fan = Fan::assemble(dim, rays, max_cones)?;
        fan.check_smooth()?;
        fan.check_complete()?;
        Ok(fan)
    }

    /// Builds the face set and wall adjacency; fails on unpaired walls.
    fn assemble(dim: usize, rays: Vec<Vector>, max_cones: Vec<Cone>) -> Result<Fan> {
        if max_cones.is_empty() {
            return Err(Error::CoverageFailure { detail: "fan has no maximal cones".into() });
        }
        let mut faces = BTreeSet::new();
        for cone in &max_cones {
            let ids = cone.ids();
            for mask in 0u64..(1u64 << dim) {
                let subset: Vec<RayId> = (0..dim).filter(|&k| mask >> k & 1 == 1).map(|k| ids[k]).collect();
                faces.insert(Cone(subset));
            }
        }
        let mut wall_map: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (idx, cone) in max_cones.iter().enumerate() {
            for &drop in cone.ids() {
                wall_map.entry(cone.without(drop)).or_default().push(idx);
            }
        }
        let mut walls = Vec::with_capacity(wall_map.len());
        for (rays_of_wall, cones) in wall_map {
            if cones.len() != 2 {
                return Err(Error::UnpairedWall {
                    wall: rays_of_wall.to_vec(),
                    count: cones.len(),
                });
            }
            walls.push(Wall { rays: rays_of_wall, cones: (cones[0], cones[1]) });
        }
        Ok(Fan { dim, rays, max_cones, faces, walls })
    }

    fn check_smooth(&self) -> Result<()> {
        for cone in &self.max_cones {
            let m = Mat::from_rows(&cone.ids().iter().map(|&r| self.rays[r].clone()).collect::<Vec<_>>());
            let d = matrix::det(&m);
            if !d.abs().is_one() {
                return Err(Error::NonUnimodularCone { cone: cone.to_vec(), det: d.to_string() });
            }
        }
        Ok(())
    }

    /// Generic-point probe: deterministic pseudo-random rational directions
    /// (built from successive primes) must each lie in the interior of
    /// exactly one maximal cone. Probes that land on a cone boundary are
    /// inconclusive and skipped.
    fn check_complete(&self) -> Result<()> {
        let inverses: Vec<Mat> = self
            .max_cones
            .iter()
            .map(|cone| {
                let rows: Vec<Vector> = cone.ids().iter().map(|&r| self.rays[r].clone()).collect();
                matrix::extend_to_basis(&rows, self.dim)
                    .map(|ext| ext.inv)
                    .ok_or_else(|| Error::internal("unimodular cone failed to invert"))
            })
            .collect::<Result<_>>()?;
        let mut conclusive = 0;
        for t in 0..64u64 {
            if conclusive >= 8 {
                break;
            }
            let point: Vector = (0..self.dim)
                .map(|j| {
                    let p = BigInt::from(nth_prime(t as usize * self.dim + j));
                    if t >> j & 1 == 1 {
                        -p
                    } else {
                        p
                    }
                })
                .collect();
            let mut interior = 0usize;
            let mut boundary = false;
            for inv in &inverses {
                let coords = inv.mul_row_vec(&point);
                if coords.iter().any(|c| c.is_negative()) {
                    continue;
                }
                if coords.iter().any(|c| c.is_zero()) {
                    boundary = true;
                    break;
                }
                interior += 1;
            }
            if boundary {
                continue;
            }
            match interior {
                0 => {
                    return Err(Error::CoverageFailure {
                        detail: format!("probe point {point:?} lies in no maximal cone"),
                    })
                }
                1 => conclusive += 1,
                k => {
                    return Err(Error::CoverageFailure {
                        detail: format!("probe point {point:?} lies in {k} cone interiors"),
                    })
                }
            }
        }
        if conclusive < 8 {
            return Err(Error::CoverageFailure {
                detail: "too many probe points landed on cone boundaries".into(),
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn ray(&self, id: RayId) -> &Vector {
        &self.rays[id]
    }

    /// Picard number of the associated variety: rays minus dimension.
    pub fn picard(&self) -> usize {
        self.rays.len() - self.dim
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn contains_cone(&self, cone: &Cone) -> bool {
        self.faces.contains(cone)
    }

    /// All faces of dimension `l`, in sorted order.
    pub fn faces(&self, l: usize) -> Result<Vec<Cone>> {
        if l > self.dim {
            return Err(Error::FaceDimensionOutOfRange { l, dim: self.dim });
        }
        Ok(self.faces.iter().filter(|c| c.dim() == l).cloned().collect())
    }

    /// Looks a ray up by its coordinates.
    pub fn find_ray(&self, v: &Vector) -> Option<RayId> {
        self.rays.binary_search(v).ok()
    }

    /// The wall record for a (d-1)-face.
    pub fn wall(&self, rays: &Cone) -> Result<&Wall> {
        self.walls
            .iter()
            .find(|w| &w.rays == rays)
            .ok_or_else(|| Error::NotAWall { cone: rays.to_vec() })
    }

    /// Star rays of `tau`: ids `r ∉ τ` with `τ ∪ {r}` a face of the fan.
    pub fn star_rays(&self, tau: &Cone) -> Vec<RayId> {
        (0..self.n_rays())
            .filter(|&r| !tau.contains(r) && self.faces.contains(&tau.with(r)))
            .collect()
    }

    /// Quotient fan around a face: the fan of the closed orbit V(τ).
    pub fn star_fan(&self, tau: &Cone) -> Result<StarFan> {
        if !self.contains_cone(tau) {
            return Err(Error::ConeNotInFan { cone: tau.to_vec() });
        }
        let rows: Vec<Vector> = tau.ids().iter().map(|&r| self.rays[r].clone()).collect();
        let ext = matrix::extend_to_basis(&rows, self.dim)
            .ok_or_else(|| Error::internal("smooth cone is not part of a basis"))?;
        let qdim = self.dim - tau.dim();
        let mut image_rays = BTreeMap::new();
        for r in self.star_rays(tau) {
            let coords = ext.inv.mul_row_vec(&self.rays[r]);
            let image: Vector = coords[tau.dim()..].to_vec();
            if !matrix::content(&image).is_one() {
                return Err(Error::internal("star ray image is not primitive"));
            }
            image_rays.insert(r, image);
        }
        let mut quotient_max_cones: Vec<Cone> = self
            .max_cones
            .iter()
            .filter(|c| tau.is_face_of(c))
            .map(|c| Cone(c.ids().iter().copied().filter(|r| !tau.contains(*r)).collect()))
            .collect();
        quotient_max_cones.sort();
        Ok(StarFan { base_cone: tau.clone(), quotient_dim: qdim, image_rays, quotient_max_cones })
    }

    /// Blow-up along V(σ): inserts the ray sum of σ's generators and splits
    /// every maximal cone containing σ.
    pub fn star_subdivision(&self, sigma: &Cone) -> Result<Fan> {
        if !self.contains_cone(sigma) {
            return Err(Error::ConeNotInFan { cone: sigma.to_vec() });
        }
        if sigma.dim() < 2 {
            return Err(Error::DimensionTooSmall { cone: sigma.to_vec(), got: sigma.dim(), need: 2 });
        }
        let mut new_ray = vec![BigInt::zero(); self.dim];
        for &r in sigma.ids() {
            new_ray = matrix::add(&new_ray, &self.rays[r]);
        }
        let mut rays = self.rays.clone();
        let new_id = rays.len();
        rays.push(new_ray);
        let mut cones: Vec<Vec<RayId>> = Vec::new();
        for cone in &self.max_cones {
            if sigma.is_face_of(cone) {
                for &s in sigma.ids() {
                    cones.push(cone.without(s).with(new_id).to_vec());
                }
            } else {
                cones.push(cone.to_vec());
            }
        }
        Fan::validate(self.dim, rays, cones)
    }

    /// Reads a fan from its JSON wire format and validates it.
    pub fn from_json_str(s: &str) -> Result<Fan> {
        let raw: FanJson = serde_json::from_str(s)
            .map_err(|e| Error::Json { detail: e.to_string() })?;
        Fan::from_parts(raw)
    }

    pub fn from_parts(raw: FanJson) -> Result<Fan> {
        let rays = raw.rays.iter().map(|r| matrix::vector(r)).collect();
        Fan::validate(raw.dim, rays, raw.max_cones)
    }

    pub fn to_json(&self) -> Result<FanJson> {
        let rays = self
            .rays
            .iter()
            .map(|ray| {
                ray.iter()
                    .map(|c| c.to_i64().ok_or_else(|| Error::Overflow { value: c.to_string() }))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FanJson {
            dim: self.dim,
            rays,
            max_cones: self.max_cones.iter().map(|c| c.to_vec()).collect(),
        })
    }

    /// Basis extension of a face's rays (cached by callers as needed);
    /// column order follows the ray order of the cone.
    pub fn basis_extension(&self, cone: &Cone) -> Result<BasisExt> {
        let rows: Vec<Vector> = cone.ids().iter().map(|&r| self.rays[r].clone()).collect();
        matrix::extend_to_basis(&rows, self.dim)
            .ok_or_else(|| Error::internal("cone rays are not part of a lattice basis"))
    }
}

impl Serialize for Fan {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json()
            .map_err(serde::ser::Error::custom)?
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Fan, D::Error> {
        let raw = FanJson::deserialize(deserializer)?;
        Fan::from_parts(raw).map_err(serde::de::Error::custom)
    }
}

/// The fan of a closed orbit V(τ), living in the quotient lattice N/(N ∩ span τ).
///
/// Cones keep the original ray ids of the ambient fan; `image_rays` carries
/// their coordinates in the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFan {
    pub base_cone: Cone,
    pub quotient_dim: usize,
    pub image_rays: BTreeMap<RayId, Vector>,
    pub quotient_max_cones: Vec<Cone>,
}

impl StarFan {
    /// Ids of the ambient rays appearing in the star, sorted.
    pub fn ray_ids(&self) -> Vec<RayId> {
        self.image_rays.keys().copied().collect()
    }

    /// Materializes the star as a standalone validated fan. Returns the fan
    /// plus the map from ambient ray id to ray id in the new fan.
    pub fn to_fan(&self) -> Result<(Fan, BTreeMap<RayId, RayId>)> {
        let ids = self.ray_ids();
        let pos: BTreeMap<RayId, usize> = ids.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let rays: Vec<Vector> = ids.iter().map(|r| self.image_rays[r].clone()).collect();
        let cones: Vec<Vec<usize>> = self
            .quotient_max_cones
            .iter()
            .map(|c| c.ids().iter().map(|r| pos[r]).collect())
            .collect();
        let fan = Fan::validate(self.quotient_dim, rays, cones)?;
        let mut map = BTreeMap::new();
        for &r in &ids {
            let new_id = fan
                .find_ray(&self.image_rays[&r])
                .ok_or_else(|| Error::internal("star ray lost in canonicalization"))?;
            map.insert(r, new_id);
        }
        Ok((fan, map))
    }
}

/// k-th prime with `nth_prime(0) = 2`; sized for probe indices only.
fn nth_prime(k: usize) -> i64 {
    let mut count = 0;
    let mut candidate = 1i64;
    while count <= k {
        candidate += 1;
        if is_prime(candidate) {
            count += 1;
        }
    }
    candidate
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
