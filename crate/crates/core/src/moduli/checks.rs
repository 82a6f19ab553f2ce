//! Exhaustive and randomized verification of the moduli identities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::curve::WeierstrassCurve;
use super::field::{FiniteField, Fq};
use super::legendre::{j_of_s, j_of_t, legendre_to_s_form_check, s3_orbit, s_of_t, taut_family_at};
use super::ring::{RingElt, Zpm};
use super::ModuliError;
use crate::padic::CycloRing;

/// Odd `q ≤ bound` for which a field is available.
pub fn supported_fields(bound: u64) -> Vec<FiniteField> {
    (3..=bound).step_by(2).filter_map(|q| FiniteField::new(q).ok()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub q: u64,
    pub valid_t: usize,
    /// `j(t) = j(s(t))`.
    pub j_factors: usize,
    /// `j` constant on `S₃`-orbits.
    pub orbit_invariant: usize,
    /// `s(t) = s(1/t)`.
    pub s_symmetric: usize,
    /// `(t−1)² − t/s(t) = 0`.
    pub monic_root: usize,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        [self.j_factors, self.orbit_invariant, self.s_symmetric, self.monic_root]
            .iter()
            .all(|&n| n == self.valid_t)
    }
}

/// Runs every `t ∉ {0, 1}` of the field through the identities.
pub fn check_identities(field: &FiniteField) -> IdentityReport {
    let mut r = IdentityReport {
        q: field.order(),
        valid_t: 0,
        j_factors: 0,
        orbit_invariant: 0,
        s_symmetric: 0,
        monic_root: 0,
    };
    let one = field.one();
    for t in field.elements() {
        let Ok(s) = s_of_t(&t) else { continue };
        r.valid_t += 1;
        let j = j_of_t(&t).unwrap();
        r.j_factors += usize::from(j_of_s(&s) == Ok(j));
        let orbit = s3_orbit(&t).unwrap();
        r.orbit_invariant += usize::from(orbit.iter().all(|x| j_of_t(x) == Ok(j)));
        r.s_symmetric += usize::from(s_of_t(&t.inv().unwrap()) == Ok(s));
        let lhs = t.sub(&one).square().sub(&t.mul(&s.inv().unwrap()));
        r.monic_root += usize::from(lhs.is_zero());
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantReport {
    pub ring: String,
    pub samples: usize,
    /// Samples with `s` and `1 + 4s` units, where the family is defined.
    pub evaluated: usize,
    pub matched: usize,
}

impl DiscriminantReport {
    pub fn passed(&self) -> bool {
        self.evaluated > 0 && self.matched == self.evaluated
    }
}

fn taut_discriminant_holds<T: RingElt>(s: &T) -> Option<bool> {
    let e = taut_family_at(s).ok()?;
    let one_4s = s.scale(4).add(&s.int_like(1));
    let expect = s.square().mul(&one_4s.pow(3)).scale(1024);
    Some(e.discriminant() == expect)
}

fn discriminant_batch<T: RingElt, R: Rng>(
    ring: String,
    samples: usize,
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> T,
) -> DiscriminantReport {
    let mut r = DiscriminantReport { ring, samples, evaluated: 0, matched: 0 };
    for _ in 0..samples {
        if let Some(ok) = taut_discriminant_holds(&draw(rng)) {
            r.evaluated += 1;
            r.matched += usize::from(ok);
        }
    }
    r
}

/// `Δ(E_s) = 1024s²(1+4s)³` on random `s` over finite fields, `Q`, `Z/p^m`
/// and `Z_p[ζ_p]`.
pub fn check_taut_discriminants<R: Rng>(samples: usize, rng: &mut R) -> Vec<DiscriminantReport> {
    let mut out = Vec::new();
    for q in [13u64, 25, 27, 49] {
        let f = FiniteField::new(q).unwrap();
        out.push(discriminant_batch(f.to_string(), samples, rng, |g| f.random(g)));
    }
    out.push(discriminant_batch("Q".into(), samples, rng, |g| {
        let d = g.gen_range(1i64..1000);
        BigRational::new(BigInt::from(g.gen_range(-1000i64..1000)), BigInt::from(d))
    }));
    out.push(discriminant_batch("Z/5^6".into(), samples, rng, |g| {
        Zpm::new(5, 6, g.gen_range(0..15625))
    }));
    let ring = CycloRing::with_default_precision(5).unwrap();
    out.push(discriminant_batch("Z_5[z]".into(), samples, rng, |g| {
        let c: Vec<BigInt> = (0..4).map(|_| BigInt::from(g.gen_range(-20i64..20))).collect();
        ring.from_coeffs(&c)
    }));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfVariablesReport {
    pub q: u64,
    /// `t` with `t, t ± 1` units and `2t + 2` a square.
    pub valid_t: usize,
    pub matched: usize,
}

pub fn check_change_of_variables(field: &FiniteField) -> ChangeOfVariablesReport {
    let mut r = ChangeOfVariablesReport { q: field.order(), valid_t: 0, matched: 0 };
    for t in field.elements() {
        match legendre_to_s_form_check(&t) {
            Ok(c) => {
                r.valid_t += 1;
                r.matched += usize::from(c.matches);
            }
            Err(ModuliError::NonUnit(_) | ModuliError::NotASquare) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutSurvey {
    pub q: u64,
    /// Pairs `(E, P)` with `E: y² = x³ + a₂x² + a₄x + a₆` smooth and `P` a
    /// nontrivial 2-torsion point.
    pub pairs: usize,
    /// Number of pairs by size of the point-fixing automorphism group.
    pub histogram: BTreeMap<usize, usize>,
}

impl AutSurvey {
    pub fn all_divide_four(&self) -> bool {
        self.histogram.keys().all(|n| 4 % n == 0)
    }
}

pub fn aut_survey(field: &FiniteField) -> AutSurvey {
    let q = field.order();
    let histogram = (0..q * q * q)
        .into_par_iter()
        .map(|i| {
            let mut h = BTreeMap::new();
            let e = WeierstrassCurve::short(field.element(i % q), field.element(i / q % q), field.element(i / q / q));
            if e.is_elliptic() {
                for x0 in e.two_torsion_x() {
                    let n = e.aut_fixing_point(&(x0, field.zero())).unwrap();
                    *h.entry(n).or_insert(0) += 1;
                }
            }
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    AutSurvey { q, pairs: histogram.values().sum(), histogram }
}

/// `y² = x³ − x` with `P = (0, 0)`: the fiber over `s = −1/4`.
pub fn special_fiber(field: &FiniteField) -> WeierstrassCurve<Fq> {
    WeierstrassCurve::short(field.zero(), field.from_int(-1), field.zero()).with_point(field.zero(), field.zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identities_over_f13() {
        let r = check_identities(&FiniteField::new(13).unwrap());
        assert_eq!(r.valid_t, 11);
        assert!(r.passed());
    }

    #[test]
    fn discriminants() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for r in check_taut_discriminants(50, &mut rng) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn survey_f9() {
        let s = aut_survey(&FiniteField::new(9).unwrap());
        assert!(s.all_divide_four());
        assert!(s.histogram.contains_key(&4));
        assert!(check_change_of_variables(&FiniteField::new(9).unwrap()).valid_t > 0);
    }
}
