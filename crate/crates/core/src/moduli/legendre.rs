use super::curve::WeierstrassCurve;
use super::field::Fq;
use super::ring::RingElt;
use super::ModuliError;
use crate::padic::CycloElement;

fn require_unit<T: RingElt>(x: &T, what: &'static str) -> Result<T, ModuliError> {
    x.try_inv().filter(|_| x.is_unit()).ok_or(ModuliError::NonUnit(what))
}

/// `s = t/(t−1)²`, the coordinate on the coarse space.
pub fn s_of_t<T: RingElt>(t: &T) -> Result<T, ModuliError> {
    require_unit(t, "t")?;
    let tm1 = t.sub(&t.int_like(1));
    let inv = require_unit(&tm1, "t - 1")?;
    Ok(t.mul(&inv.square()))
}

/// `j(t) = 256(t²−t+1)³ / (t²(t−1)²)`.
pub fn j_of_t<T: RingElt>(t: &T) -> Result<T, ModuliError> {
    let t_inv = require_unit(t, "t")?;
    let tm1 = t.sub(&t.int_like(1));
    let tm1_inv = require_unit(&tm1, "t - 1")?;
    let num = t.square().sub(t).add(&t.int_like(1)).pow(3).scale(256);
    Ok(num.mul(&t_inv.square()).mul(&tm1_inv.square()))
}

/// `j(s) = 256(s+1)³ / s²`.
pub fn j_of_s<T: RingElt>(s: &T) -> Result<T, ModuliError> {
    let s_inv = require_unit(s, "s")?;
    Ok(s.add(&s.int_like(1)).pow(3).scale(256).mul(&s_inv.square()))
}

/// Closure of `{t}` under `t ↦ 1/t` and `t ↦ (t−1)/t`, in discovery order.
pub fn s3_orbit<T: RingElt>(t: &T) -> Result<Vec<T>, ModuliError> {
    s_of_t(t)?;
    let mut orbit = vec![t.clone()];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i].clone();
        let inv = require_unit(&x, "t")?;
        let sigma = x.sub(&x.int_like(1)).mul(&inv);
        for y in [inv, sigma] {
            if !orbit.contains(&y) {
                orbit.push(y);
            }
        }
        i += 1;
    }
    Ok(orbit)
}

/// `16t²(t−1)²`.
pub fn legendre_discriminant<T: RingElt>(t: &T) -> T {
    let tm1 = t.sub(&t.int_like(1));
    t.square().mul(&tm1.square()).scale(16)
}

/// One root of `(t−1)²·c = t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TRoot {
    pub t: CycloElement,
    /// `t` and `t − 1` are both units.
    pub unit: bool,
}

/// `t = (2c+1 ± √(4c+1)) / (2c)`, the `+` root first.
pub fn solve_t_from_c(c: &CycloElement) -> Result<[TRoot; 2], ModuliError> {
    if !c.is_unit() {
        return Err(ModuliError::NonUnit("c"));
    }
    let ring = c.ring();
    let d = c.scale_int(4).add(&ring.one()).sqrt_hensel()?;
    let two_c_inv = c.scale_int(2).invert()?;
    let b = c.scale_int(2).add(&ring.one());
    let root = |t: CycloElement| {
        let unit = t.is_unit() && t.sub(&ring.one()).is_unit();
        TRoot { t, unit }
    };
    Ok([root(b.add(&d).mul(&two_c_inv)), root(b.sub(&d).mul(&two_c_inv))])
}

/// Result of carrying `y² = x(x−1)(x−t)` through `(x, y) ↦ (u²x, u³y)`
/// with `u = √(2t+2)/(t−1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeOfVariables {
    pub t: Fq,
    pub s: Fq,
    pub u: Fq,
    pub image: WeierstrassCurve<Fq>,
    pub target: WeierstrassCurve<Fq>,
    pub origin_image: (Fq, Fq),
    pub matches: bool,
}

pub fn legendre_to_s_form_check(t: &Fq) -> Result<ChangeOfVariables, ModuliError> {
    let one = t.int_like(1);
    require_unit(&t.add(&one), "t + 1")?;
    let s = s_of_t(t)?;
    let root = t.add(&one).scale(2).sqrt().ok_or(ModuliError::NotASquare)?;
    let u = root.mul(&require_unit(&t.sub(&one), "t - 1")?);
    let legendre = WeierstrassCurve::legendre(t);
    // x = X/u², y = Y/u³ turns a₂, a₄, a₆ into u²a₂, u⁴a₄, u⁶a₆
    let u2 = u.square();
    let image = WeierstrassCurve::short(
        legendre.a2.mul(&u2),
        legendre.a4.mul(&u2.square()),
        legendre.a6.mul(&u2.pow(3)),
    )
    .with_point(t.int_like(0), t.int_like(0));
    let target = taut_family_at(&s)?;
    let matches = image == target;
    Ok(ChangeOfVariables {
        t: *t,
        s,
        u,
        origin_image: (t.int_like(0), t.int_like(0)),
        image,
        target,
        matches,
    })
}

/// `y² = x(x² − (8s+2)x + 4s(1+4s))` with `P = (0, 0)`.
pub fn taut_family_at<T: RingElt>(s: &T) -> Result<WeierstrassCurve<T>, ModuliError> {
    require_unit(&s.int_like(2), "2")?;
    require_unit(s, "s")?;
    let one_4s = s.scale(4).add(&s.int_like(1));
    require_unit(&one_4s, "1 + 4s")?;
    let zero = s.int_like(0);
    Ok(WeierstrassCurve::short(
        s.scale(8).add(&s.int_like(2)).neg(),
        s.mul(&one_4s).scale(4),
        zero.clone(),
    )
    .with_point(zero.clone(), zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::FiniteField;
    use crate::padic::CycloRing;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_values() {
        assert_eq!(s_of_t(&q(-1, 1)).unwrap(), q(-1, 4));
        assert_eq!(s_of_t(&q(2, 1)).unwrap(), q(2, 1));
        assert_eq!(s_of_t(&q(1, 2)).unwrap(), q(2, 1));
        assert_eq!(j_of_t(&q(-1, 1)).unwrap(), q(1728, 1));
        assert_eq!(j_of_t(&q(2, 1)).unwrap(), q(1728, 1));
        assert_eq!(j_of_s(&q(-1, 4)).unwrap(), q(1728, 1));
        assert_eq!(j_of_s(&q(2, 1)).unwrap(), q(1728, 1));
        assert_eq!(j_of_s(&q(-1, 1)).unwrap(), q(0, 1));
        assert_eq!(s_of_t(&q(1, 1)), Err(ModuliError::NonUnit("t - 1")));
        assert_eq!(j_of_s(&q(0, 1)), Err(ModuliError::NonUnit("s")));
        assert_eq!(legendre_discriminant(&q(2, 1)), q(64, 1));
        assert_eq!(legendre_discriminant(&q(0, 1)), q(0, 1));
    }

    #[test]
    fn orbits() {
        let o = s3_orbit(&q(2, 1)).unwrap();
        assert_eq!(o.len(), 3);
        for x in [q(2, 1), q(1, 2), q(-1, 1)] {
            assert!(o.contains(&x));
        }
        let f = FiniteField::new(13).unwrap();
        let o = s3_orbit(&f.from_int(5)).unwrap();
        assert_eq!(o.len(), 6);
        let j = j_of_t(&o[0]).unwrap();
        assert!(o.iter().all(|t| j_of_t(t).unwrap() == j));
    }

    #[test]
    fn taut_family() {
        let e = taut_family_at(&q(2, 1)).unwrap();
        assert_eq!((e.a2.clone(), e.a4.clone()), (q(-18, 1), q(72, 1)));
        assert_eq!(taut_family_at(&q(-1, 4)), Err(ModuliError::NonUnit("1 + 4s")));
        let s = q(3, 7);
        let expect = s.square().mul(&s.scale(4).add(&q(1, 1)).pow(3)).scale(1024);
        assert_eq!(taut_family_at(&s).unwrap().discriminant(), expect);
    }

    #[test]
    fn quadratic_roots() {
        let r = CycloRing::with_default_precision(3).unwrap();
        let roots = solve_t_from_c(&r.from_int(2)).unwrap();
        let half = r.from_int(2).invert().unwrap();
        assert!(roots[0].t.agrees_with(&r.from_int(2)) || roots[1].t.agrees_with(&r.from_int(2)));
        assert!(roots[0].t.agrees_with(&half) || roots[1].t.agrees_with(&half));
        assert!(roots.iter().all(|x| x.unit));
        let r5 = CycloRing::with_default_precision(5).unwrap();
        let c = r5.from_int(37);
        let roots = solve_t_from_c(&c).unwrap();
        assert!(roots.iter().any(|x| x.unit));
        for x in roots.iter().filter(|x| x.unit) {
            assert!(s_of_t(&x.t).unwrap().agrees_with(&c));
        }
        assert_eq!(solve_t_from_c(&r5.from_int(5)).unwrap_err(), ModuliError::NonUnit("c"));
    }

    #[test]
    fn change_of_variables() {
        let f = FiniteField::new(13).unwrap();
        let report = legendre_to_s_form_check(&f.from_int(5)).unwrap();
        assert!(report.matches);
        let f9 = FiniteField::new(9).unwrap();
        assert_eq!(
            legendre_to_s_form_check(&f9.from_int(-1)).unwrap_err(),
            ModuliError::NonUnit("t + 1")
        );
    }
}
