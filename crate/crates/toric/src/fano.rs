//! Fano and 2-Fano decision procedures.
//!
//! Ampleness of −K is tested on invariant curves: every wall's curve must
//! have positive anticanonical degree. Nefness of ch₂ is tested on invariant
//! surfaces: every (d−2)-cone's pairing must be non-negative. A cheap
//! necessary condition (the degree c₁^{d−2}(c₁² − 2c₂) ≥ 0) is available as
//! a pre-filter for scans.
//!
//! For Picard rank 2 the classification of projectivized split bundles over
//! projective space turns both questions into closed-form inequalities in
//! the twists; `rank2_sweep` checks those forms against the full pipeline.

use crate::chow::Chow;
use crate::construct::{BundleSpec, Kleinschmidt};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::surface::surface_class;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A wall whose curve shows −K is not ample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallWitness {
    pub wall: Cone,
    /// (−K·C) ≤ 0.
    pub degree: BigInt,
}

/// One (d−2)-cone's surface data within a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePairing {
    pub cone: Cone,
    /// "P2", "Hirzebruch", or "Other".
    pub kind: String,
    pub alpha: Option<BigInt>,
    pub pairing: BigRational,
}

/// Everything the decision procedures establish about one fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoReport {
    pub dim: usize,
    pub n_rays: usize,
    pub picard: usize,
    pub euler: BigInt,
    pub c1_top: BigInt,
    pub is_fano: bool,
    pub fano_witness: Option<WallWitness>,
    /// c₁^{d−2}(c₁² − 2c₂); absent in dimension 1 where it is undefined
    /// and counted as a pass.
    pub lemma_value: Option<BigInt>,
    pub lemma_pass: bool,
    /// False when a fast scan skipped the sweep (then `pairings` is empty
    /// and `is_two_fano` is decided by the filters alone).
    pub surfaces_swept: bool,
    pub pairings: Vec<SurfacePairing>,
    pub is_two_fano: bool,
    pub two_fano_witness: Option<SurfacePairing>,
}

/// −K ample ⇔ (−K·C) > 0 for every wall curve. Returns the first
/// offending wall otherwise, in the deterministic wall order.
pub fn is_fano(fan: &Fan) -> Result<(bool, Option<WallWitness>)> {
    let mut chow = Chow::new(fan);
    for wall in fan.walls() {
        let degree = chow.wall_relation(&wall.rays)?.anticanonical_degree();
        if !degree.is_positive() {
            return Ok((false, Some(WallWitness { wall: wall.rays.clone(), degree })));
        }
    }
    Ok((true, None))
}

/// The degree c₁^{d−2}(c₁² − 2c₂) and its sign test (≥ 0). A necessary
/// condition for 2-Fano; requires d ≥ 2.
pub fn lemma_filter(fan: &Fan) -> Result<(BigInt, bool)> {
    let chern = Chow::new(fan).chern_degrees()?;
    let value = &chern.c1_top - BigInt::from(2) * &chern.c1_c2;
    let pass = !value.is_negative();
    Ok((value, pass))
}

/// Full analysis. `fast` skips the surface sweep whenever the Fano test or
/// the degree filter already rules the fan out; the verdict is unchanged,
/// only the per-surface evidence is omitted.
pub fn analyze_fan(fan: &Fan, fast: bool) -> Result<FanoReport> {
    let d = fan.dim();
    let mut chow = Chow::new(fan);
    let (fano, fano_witness) = is_fano(fan)?;

    if d == 1 {
        let mut c1_top = BigInt::zero();
        for i in 0..fan.n_rays() {
            c1_top += chow.intersection_number(&[i], &Cone::zero())?;
        }
        // No surfaces exist: ch₂ nefness holds vacuously.
        return Ok(FanoReport {
            dim: d,
            n_rays: fan.n_rays(),
            picard: fan.picard(),
            euler: BigInt::from(fan.max_cones().len()),
            c1_top,
            is_fano: fano,
            fano_witness,
            lemma_value: None,
            lemma_pass: true,
            surfaces_swept: true,
            pairings: Vec::new(),
            is_two_fano: fano,
            two_fano_witness: None,
        });
    }

    let chern = chow.chern_degrees()?;
    let lemma_value = &chern.c1_top - BigInt::from(2) * &chern.c1_c2;
    let lemma_pass = !lemma_value.is_negative();

    let skip_sweep = fast && (!fano || !lemma_pass);
    let mut pairings = Vec::new();
    let mut witness: Option<SurfacePairing> = None;
    let mut all_nonnegative = true;
    if !skip_sweep {
        for tau in fan.faces(d - 2)? {
            let (kind, class) = surface_class(&mut chow, &tau)?;
            let pairing = crate::surface::ch2_pair(&class)?;
            let entry = SurfacePairing {
                cone: tau,
                kind: kind.name().to_string(),
                alpha: kind.alpha().cloned(),
                pairing,
            };
            if entry.pairing.is_negative() {
                all_nonnegative = false;
                if witness.is_none() {
                    witness = Some(entry.clone());
                }
            }
            pairings.push(entry);
        }
    }
    let is_two_fano = fano && lemma_pass && !skip_sweep && all_nonnegative;

    Ok(FanoReport {
        dim: d,
        n_rays: fan.n_rays(),
        picard: fan.picard(),
        euler: chern.euler,
        c1_top: chern.c1_top,
        is_fano: fano,
        fano_witness,
        lemma_value: Some(lemma_value),
        lemma_pass,
        surfaces_swept: !skip_sweep,
        pairings,
        is_two_fano,
        two_fano_witness: witness,
    })
}

/// Decision with full evidence: sweeps every (d−2)-cone.
pub fn is_two_fano(fan: &Fan) -> Result<FanoReport> {
    analyze_fan(fan, false)
}

/// Isomorphism-invariant summary used where examples claim two
/// constructions give "the same" variety up to a lattice automorphism:
/// combinatorial shape, top Chern degrees, and the sorted multiset of all
/// surface pairings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dim: usize,
    pub n_rays: usize,
    pub n_max_cones: usize,
    pub euler: BigInt,
    pub c1_top: BigInt,
    pub lemma_value: BigInt,
    /// Sorted multiset of (−K·C) over all walls. Separates fans that agree
    /// on all degree data, e.g. the two 4-ray surfaces of degrees 0 and 1.
    pub wall_degrees: Vec<BigInt>,
    pub pairings: Vec<BigRational>,
}

pub fn fingerprint(fan: &Fan) -> Result<Fingerprint> {
    let report = is_two_fano(fan)?;
    let mut pairings: Vec<BigRational> = report.pairings.iter().map(|p| p.pairing.clone()).collect();
    pairings.sort();
    let mut chow = Chow::new(fan);
    let mut wall_degrees = Vec::with_capacity(fan.walls().len());
    for wall in fan.walls() {
        wall_degrees.push(chow.wall_relation(&wall.rays)?.anticanonical_degree());
    }
    wall_degrees.sort();
    Ok(Fingerprint {
        dim: report.dim,
        n_rays: report.n_rays,
        n_max_cones: fan.max_cones().len(),
        euler: report.euler,
        c1_top: report.c1_top,
        lemma_value: report.lemma_value.unwrap_or_else(BigInt::zero),
        wall_degrees,
        pairings,
    })
}

/// Closed-form answers for a projectivized split bundle, with the basis
/// surface classes computed from the constructed fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Record {
    pub spec: BundleSpec,
    /// n > Σa.
    pub fano: bool,
    /// m·a_{m−1} − 2·Σa = Σᵢ(Dᵢ²·S₂), twice the pairing of ch₂ against the
    /// middle surface. Integral, and of the same sign as the pairing itself.
    pub ch2_s2: BigInt,
    /// Fano and (product or fiber dimension 1).
    pub two_fano: bool,
    pub s1: Option<crate::chow::CycleClass>,
    pub s2: crate::chow::CycleClass,
    pub s3: Option<crate::chow::CycleClass>,
}

pub fn rank2_closed_forms(spec: &BundleSpec) -> Result<Rank2Record> {
    let k = Kleinschmidt::build(spec.clone())?;
    let sum: i64 = spec.sum_twists();
    let fano = (spec.n as i64) > sum;
    let last = *spec.twists.last().expect("m >= 2 guarantees a twist");
    let ch2_s2 = BigInt::from(spec.m as i64 * last - 2 * sum);
    let two_fano = fano && (sum == 0 || spec.m == 2);
    let mut chow = Chow::new(&k.fan);
    let s2 = crate::surface::surface_class_fast(&mut chow, &k.s2_cone())?;
    let s1 = match k.s1_cone() {
        Some(c) => Some(crate::surface::surface_class_fast(&mut chow, &c)?),
        None => None,
    };
    let s3 = match k.s3_cone() {
        Some(c) => Some(crate::surface::surface_class_fast(&mut chow, &c)?),
        None => None,
    };
    Ok(Rank2Record { spec: spec.clone(), fano, ch2_s2, two_fano, s1, s2, s3 })
}

/// Result of sweeping every bundle of one dimension up to a twist budget.
pub struct Rank2Sweep {
    /// Closed-form records of every Fano spec swept, sorted by (m, n, twists).
    pub records: Vec<Rank2Record>,
    /// Specs where the closed form and the full pipeline disagree
    /// (expected empty).
    pub discrepancies: Vec<BundleSpec>,
}

/// All specs with m + n − 2 = d and Σa ≤ budget, compared against the full
/// surface-sweep decision on the constructed fan. Only Fano specs are
/// compared (non-Fano ones are excluded by definition on both sides).
pub fn rank2_sweep(d: usize, budget: i64) -> Result<Rank2Sweep> {
    if d < 2 {
        return Err(Error::FanDimensionTooSmall { got: d, need: 2 });
    }
    let mut records = Vec::new();
    let mut discrepancies = Vec::new();
    for m in 2..=d {
        let n = d + 2 - m;
        for twists in descending_tuples(m - 1, budget) {
            let spec = BundleSpec::new(m, n, twists)?;
            let record = rank2_closed_forms(&spec)?;
            if !record.fano {
                continue;
            }
            let fan = Kleinschmidt::build(spec.clone())?.fan;
            let full = is_two_fano(&fan)?;
            if full.is_fano != record.fano || full.is_two_fano != record.two_fano {
                discrepancies.push(spec.clone());
            }
            records.push(record);
        }
    }
    records.sort_by(|a, b| a.spec.cmp(&b.spec));
    discrepancies.sort();
    Ok(Rank2Sweep { records, discrepancies })
}

/// Non-increasing tuples of the given length with entries ≥ 0 summing to
/// at most `budget`, in lexicographic order.
fn descending_tuples(len: usize, budget: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(len: usize, budget: i64, cap: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for a in 0..=cap.min(budget) {
            current.push(a);
            rec(len, budget - a, a, current, out);
            current.pop();
        }
    }
    rec(len, budget, budget, &mut current, &mut out);
    out
}

/// Groups isomorphic members of a sweep: all-zero twists give the product
/// P^{m−1} × P^{n−1}, equal up to swapping factors; everything else is
/// pinned by (m, n, twists).
pub fn family_key(spec: &BundleSpec) -> (String, usize, usize, Vec<i64>) {
    if spec.sum_twists() == 0 {
        let lo = (spec.m - 1).min(spec.n - 1);
        let hi = (spec.m - 1).max(spec.n - 1);
        ("product".into(), lo, hi, Vec::new())
    } else {
        ("bundle".into(), spec.m, spec.n, spec.twists.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{del_pezzo_database, hirzebruch, product, projective_space};
    use std::collections::BTreeSet;

    #[test]
    fn projective_spaces_are_two_fano() {
        for d in 1..=4 {
            let fan = projective_space(d).unwrap();
            let report = is_two_fano(&fan).unwrap();
            assert!(report.is_fano && report.is_two_fano, "d = {d}");
            assert!(report.two_fano_witness.is_none());
        }
    }

    #[test]
    fn hirzebruch_two_is_not_fano_with_zero_degree_witness() {
        let fan = hirzebruch(2).unwrap();
        let (fano, witness) = is_fano(&fan).unwrap();
        assert!(!fano);
        let witness = witness.unwrap();
        assert_eq!(witness.degree, BigInt::zero());
        let e2 = fan.find_ray(&crate::matrix::vector(&[0, 1])).unwrap();
        assert_eq!(witness.wall, Cone::new(vec![e2]));
    }

    #[test]
    fn del_pezzo_verdicts() {
        let db = del_pezzo_database().unwrap();
        let mut two_fano_names = BTreeSet::new();
        for (name, fan) in &db {
            let report = is_two_fano(fan).unwrap();
            assert!(report.is_fano, "{name}");
            if report.is_two_fano {
                two_fano_names.insert(name.as_str());
            }
        }
        assert_eq!(two_fano_names, BTreeSet::from(["P2", "P1xP1", "Bl1P2"]));
    }

    #[test]
    fn lemma_filter_values() {
        let p4 = projective_space(4).unwrap();
        assert_eq!(lemma_filter(&p4).unwrap(), (BigInt::from(125), true));
        let db = del_pezzo_database().unwrap();
        let (_, bl2) = &db[3];
        assert_eq!(lemma_filter(bl2).unwrap(), (BigInt::from(-3), false));
    }

    #[test]
    fn implication_chain_on_a_mixed_corpus() {
        let p1 = projective_space(1).unwrap();
        let p2 = projective_space(2).unwrap();
        let mut fans = vec![
            projective_space(3).unwrap(),
            projective_space(4).unwrap(),
            product(&p1, &p2).unwrap(),
            product(&p2, &p2).unwrap(),
            hirzebruch(0).unwrap(),
            hirzebruch(1).unwrap(),
            hirzebruch(2).unwrap(),
            hirzebruch(4).unwrap(),
        ];
        fans.extend(del_pezzo_database().unwrap().into_iter().map(|(_, f)| f));
        for fan in &fans {
            let report = is_two_fano(fan).unwrap();
            if report.is_two_fano {
                assert!(report.is_fano && report.lemma_pass);
            }
            if report.is_fano {
                assert!(report.fano_witness.is_none());
            } else {
                assert!(report.fano_witness.is_some());
            }
        }
    }

    #[test]
    fn fast_mode_agrees_with_full_mode_on_verdicts() {
        let mut fans = vec![hirzebruch(2).unwrap(), projective_space(3).unwrap()];
        fans.extend(del_pezzo_database().unwrap().into_iter().map(|(_, f)| f));
        for fan in &fans {
            let full = analyze_fan(fan, false).unwrap();
            let fast = analyze_fan(fan, true).unwrap();
            assert_eq!(full.is_fano, fast.is_fano);
            assert_eq!(full.is_two_fano, fast.is_two_fano);
            assert_eq!(full.lemma_value, fast.lemma_value);
            if !fast.surfaces_swept {
                assert!(fast.pairings.is_empty());
            }
        }
    }

    #[test]
    fn dimension_one_reports() {
        let fan = projective_space(1).unwrap();
        let report = is_two_fano(&fan).unwrap();
        assert!(report.is_fano && report.is_two_fano);
        assert_eq!(report.c1_top, BigInt::from(2));
        assert_eq!(report.euler, BigInt::from(2));
        assert_eq!(report.lemma_value, None);
        assert!(report.lemma_pass);
    }

    #[test]
    fn closed_forms_match_the_displayed_cases() {
        let spec = BundleSpec::new(2, 4, vec![2]).unwrap();
        let r = rank2_closed_forms(&spec).unwrap();
        assert!(r.fano && r.two_fano);
        assert_eq!(r.ch2_s2, BigInt::zero());
        assert!(r.s1.is_none() && r.s3.is_some());

        let spec = BundleSpec::new(3, 3, vec![1, 1]).unwrap();
        let r = rank2_closed_forms(&spec).unwrap();
        assert_eq!(r.ch2_s2, BigInt::from(-1));
        assert!(r.fano && !r.two_fano);

        let spec = BundleSpec::new(3, 3, vec![0, 0]).unwrap();
        let r = rank2_closed_forms(&spec).unwrap();
        assert!(r.two_fano);
    }

    #[test]
    fn closed_form_s2_pairing_equals_the_surface_pairing() {
        for (m, n, twists) in [
            (2usize, 2usize, vec![1i64]),
            (2, 3, vec![2]),
            (3, 2, vec![1, 0]),
            (3, 3, vec![2, 1]),
            (2, 4, vec![3]),
            (4, 2, vec![1, 1, 0]),
        ] {
            let spec = BundleSpec::new(m, n, twists).unwrap();
            let r = rank2_closed_forms(&spec).unwrap();
            let pairing = crate::surface::ch2_pair(&r.s2).unwrap();
            let doubled = pairing * BigRational::from(BigInt::from(2));
            assert_eq!(doubled, BigRational::from(r.ch2_s2.clone()), "spec {spec:?}");
        }
    }

    #[test]
    fn sweeps_are_discrepancy_free() {
        for (d, budget) in [(2usize, 2i64), (3, 3), (4, 4)] {
            let sweep = rank2_sweep(d, budget).unwrap();
            assert!(sweep.discrepancies.is_empty(), "d = {d}");
            assert!(!sweep.records.is_empty());
        }
    }

    #[test]
    fn dimension_four_two_fano_families() {
        let sweep = rank2_sweep(4, 4).unwrap();
        let keys: BTreeSet<_> = sweep
            .records
            .iter()
            .filter(|r| r.two_fano)
            .map(|r| family_key(&r.spec))
            .collect();
        let expected: BTreeSet<_> = [
            ("product".to_string(), 1, 3, vec![]),
            ("product".to_string(), 2, 2, vec![]),
            ("bundle".to_string(), 2, 4, vec![1]),
            ("bundle".to_string(), 2, 4, vec![2]),
            ("bundle".to_string(), 2, 4, vec![3]),
        ]
        .into_iter()
        .collect();
        assert_eq!(keys, expected);
    }

    #[test]
    fn dimension_two_sweep_matches_the_del_pezzo_scan() {
        // Degree 2 falls at the Fano gate (its negative section has
        // anticanonical degree 0), so the swept Fano records are exactly
        // the two rank-2 del Pezzo surfaces, and both are 2-Fano.
        let sweep = rank2_sweep(2, 2).unwrap();
        assert_eq!(sweep.records.len(), 2);
        assert!(sweep.records.iter().all(|r| r.two_fano));
        let keys: BTreeSet<_> = sweep.records.iter().map(|r| family_key(&r.spec)).collect();
        let expected: BTreeSet<_> = [
            ("product".to_string(), 1, 1, vec![]),
            ("bundle".to_string(), 2, 2, vec![1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(keys, expected);
    }

    #[test]
    fn fingerprints_identify_isomorphic_constructions() {
        // Twisting the one-point blow-up of the plane against the degree-1
        // Hirzebruch surface: related by a lattice automorphism, not by a
        // relabeling, so compare invariants.
        let db = del_pezzo_database().unwrap();
        let bl1 = &db[2].1;
        let f1 = hirzebruch(1).unwrap();
        assert_eq!(fingerprint(bl1).unwrap(), fingerprint(&f1).unwrap());
        // The bundle construction of F_α against the direct fan.
        for alpha in 0..=3 {
            let spec = BundleSpec::new(2, 2, vec![alpha]).unwrap();
            let k = Kleinschmidt::build(spec).unwrap();
            assert_eq!(
                fingerprint(&k.fan).unwrap(),
                fingerprint(&hirzebruch(alpha).unwrap()).unwrap(),
                "alpha = {alpha}"
            );
        }
        // Distinct varieties must separate.
        assert_ne!(
            fingerprint(&hirzebruch(0).unwrap()).unwrap(),
            fingerprint(&f1).unwrap()
        );
    }

    #[test]
    fn descending_tuple_enumeration() {
        assert_eq!(descending_tuples(1, 2), vec![vec![0], vec![1], vec![2]]);
        let pairs = descending_tuples(2, 2);
        assert_eq!(pairs, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 0]]);
    }
}
