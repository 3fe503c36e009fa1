//! Exact intersection theory on a validated fan: Reid wall relations,
//! divisor restriction, intersection numbers, class polynomials I_{Y/X},
//! Chern degrees, and the N₂ pairing rank.
//!
//! The single computational engine is divisor restriction: D·V(σ) is either
//! transversal (a face one dimension up), empty, or — when the divisor's ray
//! lies in σ — rewritten through the rational function of a dual character
//! chosen by a deterministic basis extension. Intersection numbers follow by
//! expanding products depth-first with memoization.

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, RayId};
use crate::matrix::{self, BasisExt, Mat, Vector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};

/// Reid's relation at a wall: the unique integer relation among the wall's
/// rays and the two opposite rays, normalized so both opposite rays carry
/// coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallRelation {
    pub wall: Cone,
    /// Coefficient per ray id; support is the wall rays plus the two
    /// opposite rays. Rays absent from the map have coefficient 0.
    pub coefficients: BTreeMap<RayId, BigInt>,
    /// The generators of the two maximal cones beyond the wall.
    pub opposite: (RayId, RayId),
}

impl WallRelation {
    pub fn coefficient(&self, ray: RayId) -> BigInt {
        self.coefficients.get(&ray).cloned().unwrap_or_else(BigInt::zero)
    }

    /// (−K·C): the anticanonical degree of the wall's curve.
    pub fn anticanonical_degree(&self) -> BigInt {
        self.coefficients.values().sum()
    }
}

/// D_i·V(σ) expanded as Σ c_j V(σ ∪ {j}); every j extends σ inside the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCombo {
    pub base_cone: Cone,
    pub terms: BTreeMap<RayId, BigInt>,
}

/// The intersection-number tensor of an l-dimensional cycle Y: the multiset
/// {i₁,…,i_l} maps to N = (D_{i₁}⋯D_{i_l}·Y). The associated polynomial is
/// I_{Y/X} = Σ over ordered tuples N·X_{i₁}⋯X_{i_l}, so a monomial with
/// multiplicities e_i carries the polynomial coefficient (l!/Πe_i!)·N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    degree: usize,
    coeffs: BTreeMap<Vec<RayId>, BigInt>,
}

impl CycleClass {
    pub fn new(degree: usize) -> CycleClass {
        CycleClass { degree, coeffs: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Stored (nonzero) coefficients, keyed by sorted multiset.
    pub fn coeffs(&self) -> &BTreeMap<Vec<RayId>, BigInt> {
        &self.coeffs
    }

    /// N(multiset); zero when absent. The key is sorted internally.
    pub fn coefficient(&self, multiset: &[RayId]) -> BigInt {
        let mut key = multiset.to_vec();
        key.sort_unstable();
        self.coeffs.get(&key).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Inserts N(multiset), dropping explicit zeros so equality is clean.
    pub fn set(&mut self, multiset: Vec<RayId>, value: BigInt) {
        debug_assert_eq!(multiset.len(), self.degree);
        debug_assert!(multiset.windows(2).all(|w| w[0] <= w[1]));
        if value.is_zero() {
            self.coeffs.remove(&multiset);
        } else {
            self.coeffs.insert(multiset, value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the monomial Π X_i^{e_i} in the expanded polynomial:
    /// (l!/Πe_i!)·N.
    pub fn monomial_coefficient(&self, multiset: &[RayId]) -> BigInt {
        multinomial(multiset) * self.coefficient(multiset)
    }
}

#[derive(Serialize, Deserialize)]
struct CycleClassJson {
    degree: usize,
    coeffs: BTreeMap<String, i64>,
}

impl Serialize for CycleClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut coeffs = BTreeMap::new();
        for (multiset, value) in &self.coeffs {
            let key = multiset.iter().map(|id| id.to_string()).collect::<Vec<_>>().join(",");
            let value = i64::try_from(value)
                .map_err(|_| serde::ser::Error::custom(format!("coefficient {value} exceeds 64 bits")))?;
            coeffs.insert(key, value);
        }
        CycleClassJson { degree: self.degree, coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycleClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<CycleClass, D::Error> {
        let raw = CycleClassJson::deserialize(deserializer)?;
        let mut class = CycleClass::new(raw.degree);
        for (key, value) in raw.coeffs {
            let mut multiset: Vec<RayId> = Vec::new();
            if !key.is_empty() {
                for part in key.split(',') {
                    multiset.push(part.trim().parse().map_err(D::Error::custom)?);
                }
            }
            multiset.sort_unstable();
            if multiset.len() != raw.degree {
                return Err(D::Error::custom("multiset size does not match degree"));
            }
            class.set(multiset, BigInt::from(value));
        }
        Ok(class)
    }
}

/// l!/Πe_i! for a sorted-or-not multiset.
pub fn multinomial(multiset: &[RayId]) -> BigInt {
    let mut sorted = multiset.to_vec();
    sorted.sort_unstable();
    let mut result = factorial(sorted.len());
    let mut run = 0usize;
    for k in 0..sorted.len() {
        run += 1;
        if k + 1 == sorted.len() || sorted[k + 1] != sorted[k] {
            result /= factorial(run);
            run = 0;
        }
    }
    result
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// All size-`l` multisets (sorted vectors) over an ascending item list.
pub fn multisets(items: &[RayId], l: usize) -> Vec<Vec<RayId>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(l);
    fn rec(items: &[RayId], start: usize, left: usize, current: &mut Vec<RayId>, out: &mut Vec<Vec<RayId>>) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        for k in start..items.len() {
            current.push(items[k]);
            rec(items, k, left - 1, current, out);
            current.pop();
        }
    }
    rec(items, 0, l, &mut current, &mut out);
    out
}

/// Chern-class degrees of the variety, expanded through the intersection
/// engine from the total Chern class Π(1 + D_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernDegrees {
    /// c₁^d
    pub c1_top: BigInt,
    /// c₁^{d−2}·c₂
    pub c1_c2: BigInt,
    /// c₁^{d−2}·ch₂ = ½(c₁^d − 2·c₁^{d−2}c₂)
    pub ch2_c1: BigRational,
    /// degree of c_d; equals the number of maximal cones
    pub euler: BigInt,
}

/// Intersection engine for one fan. Holds the memo tables; all methods are
/// deterministic, so sharing an engine or spawning a fresh one per call
/// yields identical results.
pub struct Chow<'a> {
    fan: &'a Fan,
    memo: HashMap<(Vec<RayId>, Vec<RayId>), BigInt>,
    ext_cache: HashMap<Vec<RayId>, BasisExt>,
}

impl<'a> Chow<'a> {
    pub fn new(fan: &'a Fan) -> Chow<'a> {
        Chow { fan, memo: HashMap::new(), ext_cache: HashMap::new() }
    }

    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    fn basis_extension(&mut self, cone: &Cone) -> Result<&BasisExt> {
        if !self.ext_cache.contains_key(cone.ids()) {
            let ext = self.fan.basis_extension(cone)?;
            self.ext_cache.insert(cone.to_vec(), ext);
        }
        Ok(&self.ext_cache[cone.ids()])
    }

    /// Reid's wall relation, solved in the unimodular basis of one adjacent
    /// maximal cone.
    pub fn wall_relation(&mut self, wall_rays: &Cone) -> Result<WallRelation> {
        let fan = self.fan;
        let wall = fan.wall(wall_rays)?;
        let (ia, ib) = wall.cones;
        let cone_a = &fan.max_cones()[ia];
        let cone_b = &fan.max_cones()[ib];
        let u = single_extra_ray(cone_a, wall_rays)?;
        let v = single_extra_ray(cone_b, wall_rays)?;
        let coords = {
            let ext = self.basis_extension(cone_a)?;
            ext.inv.mul_row_vec(fan.ray(v))
        };
        let mut coefficients = BTreeMap::new();
        for (pos, &ray) in cone_a.ids().iter().enumerate() {
            if ray == u {
                if coords[pos] != -BigInt::one() {
                    return Err(Error::internal("opposite ray coefficient is not -1"));
                }
                coefficients.insert(u, BigInt::one());
            } else if !coords[pos].is_zero() {
                coefficients.insert(ray, -coords[pos].clone());
            }
        }
        coefficients.insert(v, BigInt::one());
        Ok(WallRelation {
            wall: wall_rays.clone(),
            coefficients,
            opposite: (u.min(v), u.max(v)),
        })
    }

    /// Degree-1 class of the wall's curve: coeffs({i}) = (D_i·C).
    pub fn curve_class(&mut self, wall_rays: &Cone) -> Result<CycleClass> {
        let relation = self.wall_relation(wall_rays)?;
        let mut class = CycleClass::new(1);
        for (ray, coeff) in relation.coefficients {
            class.set(vec![ray], coeff);
        }
        Ok(class)
    }

    /// D_i·V(σ) as a combination of one-higher orbit closures.
    pub fn restrict_divisor(&mut self, i: RayId, sigma: &Cone) -> Result<DivisorCombo> {
        if !self.fan.contains_cone(sigma) {
            return Err(Error::ConeNotInFan { cone: sigma.to_vec() });
        }
        if sigma.dim() >= self.fan.dim() {
            return Err(Error::WrongConeDimension { need: self.fan.dim() - 1, got: sigma.dim() });
        }
        let mut terms = BTreeMap::new();
        if !sigma.contains(i) {
            if self.fan.contains_cone(&sigma.with(i)) {
                terms.insert(i, BigInt::one());
            }
            return Ok(DivisorCombo { base_cone: sigma.clone(), terms });
        }
        let pos = sigma.ids().iter().position(|&r| r == i).unwrap();
        let u: Vector = {
            let ext = self.basis_extension(sigma)?;
            ext.inv.col(pos)
        };
        for j in self.fan.star_rays(sigma) {
            let c = -matrix::dot(&u, self.fan.ray(j));
            if !c.is_zero() {
                terms.insert(j, c);
            }
        }
        Ok(DivisorCombo { base_cone: sigma.clone(), terms })
    }

    /// (D_{i₁}⋯D_{i_l}·V(σ)) for a multiset of ray ids with l = d − dim σ.
    pub fn intersection_number(&mut self, divisors: &[RayId], sigma: &Cone) -> Result<BigInt> {
        if !self.fan.contains_cone(sigma) {
            return Err(Error::ConeNotInFan { cone: sigma.to_vec() });
        }
        let expected = self.fan.dim() - sigma.dim();
        if divisors.len() != expected {
            return Err(Error::DegreeMismatch { expected, got: divisors.len() });
        }
        let mut divs = divisors.to_vec();
        divs.sort_unstable();
        self.reduce(&divs, sigma)
    }

    /// Depth-first reduction in sorted ray order, memoized on
    /// (σ, remaining multiset).
    fn reduce(&mut self, divs: &[RayId], sigma: &Cone) -> Result<BigInt> {
        if divs.is_empty() {
            return Ok(BigInt::one()); // σ is maximal: the class of a point
        }
        let key = (sigma.to_vec(), divs.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let combo = self.restrict_divisor(divs[0], sigma)?;
        let mut total = BigInt::zero();
        for (j, c) in &combo.terms {
            let sub = self.reduce(&divs[1..], &sigma.with(*j))?;
            total += c * sub;
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }

    /// Ray ids that can appear in a nonzero intersection against V(σ):
    /// σ's own rays plus the star rays.
    fn supported_rays(&self, sigma: &Cone) -> Vec<RayId> {
        let mut rays = sigma.to_vec();
        rays.extend(self.fan.star_rays(sigma));
        rays.sort_unstable();
        rays
    }

    /// The full tensor I_{V(σ)/X}: every size-l multiset with support in the
    /// star of σ, l = d − dim σ. Multisets leaving the star are zero and
    /// skipped.
    pub fn class_polynomial(&mut self, sigma: &Cone) -> Result<CycleClass> {
        if !self.fan.contains_cone(sigma) {
            return Err(Error::ConeNotInFan { cone: sigma.to_vec() });
        }
        let l = self.fan.dim() - sigma.dim();
        let mut class = CycleClass::new(l);
        for multiset in multisets(&self.supported_rays(sigma), l) {
            let n = self.reduce(&multiset, sigma)?;
            class.set(multiset, n);
        }
        Ok(class)
    }

    /// Σ over multisets M of size `power`: (power!/Πe!)·N(M ∪ extra) —
    /// the degree of c₁^power · D_{extra} · V(0).
    fn c1_power_contraction(&mut self, tensor: &CycleClass, extra: &[RayId], power: usize) -> BigInt {
        let all: Vec<RayId> = (0..self.fan.n_rays()).collect();
        let mut total = BigInt::zero();
        for multiset in multisets(&all, power) {
            let mut full = multiset.clone();
            full.extend_from_slice(extra);
            full.sort_unstable();
            let n = tensor.coefficient(&full);
            if !n.is_zero() {
                total += multinomial(&multiset) * n;
            }
        }
        total
    }

    /// Chern degrees through the engine; requires d ≥ 2 (c₁^{d−2} appears).
    pub fn chern_degrees(&mut self) -> Result<ChernDegrees> {
        let d = self.fan.dim();
        if d < 2 {
            return Err(Error::FanDimensionTooSmall { got: d, need: 2 });
        }
        let tensor = self.class_polynomial(&Cone::zero())?;
        let c1_top = self.c1_power_contraction(&tensor, &[], d);
        let mut c1_c2 = BigInt::zero();
        for i in 0..self.fan.n_rays() {
            for j in i + 1..self.fan.n_rays() {
                c1_c2 += self.c1_power_contraction(&tensor, &[i, j], d - 2);
            }
        }
        let mut euler = BigInt::zero();
        for (multiset, n) in tensor.coeffs() {
            if multiset.windows(2).all(|w| w[0] < w[1]) {
                euler += n;
            }
        }
        let ch2_c1 = BigRational::new(&c1_top - BigInt::from(2) * &c1_c2, BigInt::from(2));
        Ok(ChernDegrees { c1_top, c1_c2, ch2_c1, euler })
    }

    /// Rank over Q of the (surfaces × degree-2 monomials) pairing matrix.
    pub fn n2_rank(&mut self) -> Result<usize> {
        let d = self.fan.dim();
        if d < 2 {
            return Err(Error::FanDimensionTooSmall { got: d, need: 2 });
        }
        let surfaces = self.fan.faces(d - 2)?;
        let m = self.fan.n_rays();
        let pairs: Vec<(RayId, RayId)> =
            (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
        let mut rows = Vec::with_capacity(surfaces.len());
        for tau in &surfaces {
            let class = self.class_polynomial(tau)?;
            let row: Vector = pairs.iter().map(|&(i, j)| class.coefficient(&[i, j])).collect();
            rows.push(row);
        }
        Ok(matrix::rank(&Mat::from_rows(&rows)))
    }
}

fn single_extra_ray(cone: &Cone, wall: &Cone) -> Result<RayId> {
    let mut extra = cone.ids().iter().copied().filter(|r| !wall.contains(*r));
    match (extra.next(), extra.next()) {
        (Some(r), None) => Ok(r),
        _ => Err(Error::internal("maximal cone does not extend the wall by one ray")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::FanJson;
    use crate::matrix::vector;

    fn p2() -> Fan {
        Fan::from_parts(FanJson {
            dim: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        })
        .unwrap()
    }

    fn hirzebruch(alpha: i64) -> Fan {
        Fan::from_parts(FanJson {
            dim: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, alpha], vec![0, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        })
        .unwrap()
    }

    fn p_d(d: usize) -> Fan {
        let mut rays = Vec::new();
        for i in 0..d {
            let mut e = vec![0i64; d];
            e[i] = 1;
            rays.push(e);
        }
        rays.push(vec![-1; d]);
        let max_cones = (0..=d)
            .map(|skip| (0..=d).filter(|&r| r != skip).collect())
            .collect();
        Fan::from_parts(FanJson { dim: d, rays, max_cones }).unwrap()
    }

    #[test]
    fn p2_wall_relation_is_all_ones() {
        let fan = p2();
        let mut chow = Chow::new(&fan);
        for wall in fan.walls() {
            let rel = chow.wall_relation(&wall.rays).unwrap();
            assert_eq!(rel.coefficients.len(), 3);
            assert!(rel.coefficients.values().all(|c| c.is_one()));
            assert_eq!(rel.anticanonical_degree(), BigInt::from(3));
        }
    }

    #[test]
    fn wall_relations_are_exact_lattice_identities() {
        for fan in [p2(), hirzebruch(0), hirzebruch(3), p_d(3)] {
            let mut chow = Chow::new(&fan);
            for wall in fan.walls() {
                let rel = chow.wall_relation(&wall.rays).unwrap();
                let mut sum = vec![BigInt::zero(); fan.dim()];
                for (ray, coeff) in &rel.coefficients {
                    for (k, x) in fan.ray(*ray).iter().enumerate() {
                        sum[k] += coeff * x;
                    }
                }
                assert!(matrix::is_zero_vec(&sum), "relation fails on {}", wall.rays);
            }
        }
    }

    #[test]
    fn hirzebruch_negative_section_relation() {
        // Wall through e₂: opposite rays (1,0) and (-1,α) give
        // x₁ + x₃ − α·x₂ = 0.
        let fan = hirzebruch(2);
        let e2 = fan.find_ray(&vector(&[0, 1])).unwrap();
        let mut chow = Chow::new(&fan);
        let rel = chow.wall_relation(&Cone::new(vec![e2])).unwrap();
        assert_eq!(rel.coefficient(e2), BigInt::from(-2));
        assert_eq!(rel.anticanonical_degree(), BigInt::zero());
        let class = chow.curve_class(&Cone::new(vec![e2])).unwrap();
        assert_eq!(class.coefficient(&[e2]), BigInt::from(-2));
    }

    #[test]
    fn restrict_divisor_transversal_and_empty_cases() {
        let fan = hirzebruch(1);
        let e2 = fan.find_ray(&vector(&[0, 1])).unwrap();
        let e2neg = fan.find_ray(&vector(&[0, -1])).unwrap();
        let mut chow = Chow::new(&fan);
        let combo = chow.restrict_divisor(e2, &Cone::zero()).unwrap();
        assert_eq!(combo.terms, BTreeMap::from([(e2, BigInt::one())]));
        // {e₂, −e₂} is not a cone: restriction of D_{−e₂} to the ray e₂ has
        // no −e₂ term.
        let combo = chow.restrict_divisor(e2neg, &Cone::new(vec![e2])).unwrap();
        assert!(!combo.terms.contains_key(&e2neg));
    }

    #[test]
    fn restrict_divisor_uses_the_deterministic_dual_character() {
        // On F_α, restricting D₂ to its own ray must yield exactly
        // {x₃: −α}: the basis extension of (0,1) pairs to zero with (1,0).
        let fan = hirzebruch(2);
        let e2 = fan.find_ray(&vector(&[0, 1])).unwrap();
        let x3 = fan.find_ray(&vector(&[-1, 2])).unwrap();
        let mut chow = Chow::new(&fan);
        let combo = chow.restrict_divisor(e2, &Cone::new(vec![e2])).unwrap();
        assert_eq!(combo.terms, BTreeMap::from([(x3, BigInt::from(-2))]));
    }

    #[test]
    fn intersection_numbers_on_p2() {
        let fan = p2();
        let mut chow = Chow::new(&fan);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(chow.intersection_number(&[i, j], &Cone::zero()).unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn hirzebruch_self_intersections() {
        for alpha in 0..5i64 {
            let fan = hirzebruch(alpha);
            let e2 = fan.find_ray(&vector(&[0, 1])).unwrap();
            let e2neg = fan.find_ray(&vector(&[0, -1])).unwrap();
            let mut chow = Chow::new(&fan);
            let d2sq = chow.intersection_number(&[e2, e2], &Cone::zero()).unwrap();
            assert_eq!(d2sq, BigInt::from(-alpha));
            let d4sq = chow.intersection_number(&[e2neg, e2neg], &Cone::zero()).unwrap();
            assert_eq!(d4sq, BigInt::from(alpha));
        }
    }

    #[test]
    fn p3_top_self_intersection() {
        let fan = p_d(3);
        let mut chow = Chow::new(&fan);
        assert_eq!(chow.intersection_number(&[0, 0, 0], &Cone::zero()).unwrap(), BigInt::one());
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let fan = p2();
        let mut chow = Chow::new(&fan);
        assert!(matches!(
            chow.intersection_number(&[0], &Cone::zero()),
            Err(Error::DegreeMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn class_polynomial_of_projective_spaces_is_all_ones() {
        for d in 1..=4 {
            let fan = p_d(d);
            let mut chow = Chow::new(&fan);
            let class = chow.class_polynomial(&Cone::zero()).unwrap();
            let expected = multisets(&(0..=d).collect::<Vec<_>>(), d).len();
            assert_eq!(class.coeffs().len(), expected);
            assert!(class.coeffs().values().all(|n| n.is_one()));
        }
    }

    #[test]
    fn class_polynomial_of_hirzebruch_matches_closed_form() {
        // α(X₂+X₄)² + 2(X₂+X₄)(X₁+X₃−αX₂) as a symmetric tensor:
        // N({i,j}) = α f_i f_j + f_i g_j + f_j g_i.
        for alpha in 0..4i64 {
            let fan = hirzebruch(alpha);
            let id = |v: &[i64]| fan.find_ray(&vector(v)).unwrap();
            let (x1, x2, x3, x4) = (id(&[1, 0]), id(&[0, 1]), id(&[-1, alpha]), id(&[0, -1]));
            let mut f = vec![BigInt::zero(); 4];
            let mut g = vec![BigInt::zero(); 4];
            f[x2] = BigInt::one();
            f[x4] = BigInt::one();
            g[x1] = BigInt::one();
            g[x3] = BigInt::one();
            g[x2] = BigInt::from(-alpha);
            let mut chow = Chow::new(&fan);
            let class = chow.class_polynomial(&Cone::zero()).unwrap();
            for i in 0..4 {
                for j in i..4 {
                    let want = BigInt::from(alpha) * &f[i] * &f[j] + &f[i] * &g[j] + &f[j] * &g[i];
                    assert_eq!(class.coefficient(&[i, j]), want, "alpha={alpha} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn point_class_of_a_maximal_cone() {
        let fan = p2();
        let mut chow = Chow::new(&fan);
        let sigma = fan.max_cones()[0].clone();
        let class = chow.class_polynomial(&sigma).unwrap();
        assert_eq!(class.degree(), 0);
        assert_eq!(class.coefficient(&[]), BigInt::one());
    }

    #[test]
    fn chern_degrees_of_p2_and_p4() {
        let fan = p2();
        let chern = Chow::new(&fan).chern_degrees().unwrap();
        assert_eq!(chern.c1_top, BigInt::from(9));
        assert_eq!(chern.c1_c2, BigInt::from(3));
        assert_eq!(chern.euler, BigInt::from(3));
        assert_eq!(chern.ch2_c1, BigRational::new(BigInt::from(3), BigInt::from(2)));

        let fan = p_d(4);
        let chern = Chow::new(&fan).chern_degrees().unwrap();
        assert_eq!(chern.c1_top, BigInt::from(625));
        assert_eq!(&chern.c1_top - BigInt::from(2) * &chern.c1_c2, BigInt::from(125));
        assert_eq!(chern.euler, BigInt::from(5));
    }

    #[test]
    fn curve_class_matches_single_divisor_intersections() {
        let fan = hirzebruch(2);
        let mut chow = Chow::new(&fan);
        for wall in fan.walls().to_vec() {
            let class = chow.curve_class(&wall.rays).unwrap();
            for i in 0..fan.n_rays() {
                assert_eq!(
                    class.coefficient(&[i]),
                    chow.intersection_number(&[i], &wall.rays).unwrap()
                );
            }
        }
    }

    #[test]
    fn n2_rank_of_p2_is_one() {
        let fan = p2();
        assert_eq!(Chow::new(&fan).n2_rank().unwrap(), 1);
    }

    #[test]
    fn cycle_class_serialization_round_trip() {
        let fan = hirzebruch(2);
        let mut chow = Chow::new(&fan);
        let class = chow.class_polynomial(&Cone::zero()).unwrap();
        let json = serde_json::to_string(&class).unwrap();
        let back: CycleClass = serde_json::from_str(&json).unwrap();
        assert_eq!(class, back);
        assert!(json.contains("\"degree\":2"));
    }

    #[test]
    fn multinomial_coefficients() {
        assert_eq!(multinomial(&[0, 0, 0]), BigInt::one());
        assert_eq!(multinomial(&[0, 1, 2]), BigInt::from(6));
        assert_eq!(multinomial(&[0, 0, 1]), BigInt::from(3));
        assert_eq!(multinomial(&[]), BigInt::one());
    }
}
