use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{FiniteField, Fq};
use super::ring::RingElt;
use super::ModuliError;

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆`, optionally with a marked point.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub a6: T,
    pub point: Option<(T, T)>,
}

impl<T: RingElt> WeierstrassCurve<T> {
    pub fn new(a: [T; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        Self { a1, a2, a3, a4, a6, point: None }
    }

    /// `y² = x³ + a₂x² + a₄x + a₆`.
    pub fn short(a2: T, a4: T, a6: T) -> Self {
        let zero = a2.int_like(0);
        Self::new([zero.clone(), a2, zero, a4, a6])
    }

    /// `y² = x(x−1)(x−t)` with `P = (0, 0)`.
    pub fn legendre(t: &T) -> Self {
        let zero = t.int_like(0);
        Self::short(t.add(&t.int_like(1)).neg(), t.clone(), zero.clone()).with_point(zero.clone(), zero)
    }

    pub fn with_point(mut self, x: T, y: T) -> Self {
        self.point = Some((x, y));
        self
    }

    pub fn coefficients(&self) -> [&T; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    fn b_invariants(&self) -> [T; 4] {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.square().add(&a2.scale(4));
        let b4 = a4.scale(2).add(&a1.mul(a3));
        let b6 = a3.square().add(&a6.scale(4));
        let b8 = a1
            .square()
            .mul(a6)
            .add(&a2.mul(a6).scale(4))
            .sub(&a1.mul(a3).mul(a4))
            .add(&a2.mul(&a3.square()))
            .sub(&a4.square());
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> T {
        let [b2, b4, b6, b8] = self.b_invariants();
        b2.square()
            .mul(&b8)
            .neg()
            .sub(&b4.pow(3).scale(8))
            .sub(&b6.square().scale(27))
            .add(&b2.mul(&b4).mul(&b6).scale(9))
    }

    pub fn is_elliptic(&self) -> bool {
        self.discriminant().is_unit()
    }

    /// `c₄³/Δ`.
    pub fn j_invariant(&self) -> Result<T, ModuliError> {
        let [b2, b4, _, _] = self.b_invariants();
        let c4 = b2.square().sub(&b4.scale(24));
        let inv = self.discriminant().try_inv().ok_or(ModuliError::NotElliptic)?;
        Ok(c4.pow(3).mul(&inv))
    }

    pub fn contains(&self, x: &T, y: &T) -> bool {
        let lhs = y.square().add(&self.a1.mul(x).mul(y)).add(&self.a3.mul(y));
        let rhs = x
            .pow(3)
            .add(&self.a2.mul(&x.square()))
            .add(&self.a4.mul(x))
            .add(&self.a6);
        lhs == rhs
    }

    fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a3.is_zero()
    }

    /// Coefficients after `x = u²X + r`, `y = u³Y` on a model with `a₁ = a₃ = 0`.
    fn transform(&self, u_inv: &T, r: &T) -> [T; 3] {
        let (a2, a4, a6) = (&self.a2, &self.a4, &self.a6);
        let ui2 = u_inv.square();
        let n2 = a2.add(&r.scale(3));
        let n4 = a4.add(&r.mul(a2).scale(2)).add(&r.square().scale(3));
        let n6 = a6.add(&r.mul(a4)).add(&r.square().mul(a2)).add(&r.pow(3));
        [n2.mul(&ui2), n4.mul(&ui2.square()), n6.mul(&ui2.pow(3))]
    }
}

impl WeierstrassCurve<Fq> {
    fn check_short_elliptic(&self) -> Result<FiniteField, ModuliError> {
        if !self.is_short() {
            return Err(ModuliError::UnsupportedModel);
        }
        if !self.is_elliptic() {
            return Err(ModuliError::NotElliptic);
        }
        Ok(*self.a2.field())
    }

    /// Substitutions `(x, y) ↦ (u²x + r, u³y)` over `F_q` preserving the
    /// equation and fixing the 2-torsion point `P`. Fixing `P = (x₀, 0)`
    /// forces `r = x₀(1 − u²)`, so only `u` is enumerated.
    pub fn aut_fixing_point(&self, p: &(Fq, Fq)) -> Result<usize, ModuliError> {
        let field = self.check_short_elliptic()?;
        let (x0, y0) = p;
        if !y0.is_zero() || !self.contains(x0, y0) {
            return Err(ModuliError::NotTwoTorsion);
        }
        let own = [self.a2, self.a4, self.a6];
        Ok(field
            .elements()
            .skip(1)
            .filter(|u| {
                let r = x0.sub(&u.square().mul(x0));
                self.transform(&u.inv().unwrap(), &r) == own
            })
            .count())
    }

    /// All substitutions `(x, y) ↦ (u²x + r, u³y)` preserving the equation.
    pub fn aut_count(&self) -> Result<usize, ModuliError> {
        let field = self.check_short_elliptic()?;
        let own = [self.a2, self.a4, self.a6];
        let mut n = 0;
        for u in field.elements().skip(1) {
            let ui = u.inv().unwrap();
            n += field.elements().filter(|r| self.transform(&ui, r) == own).count();
        }
        Ok(n)
    }

    /// Roots of the cubic, i.e. the `x`-coordinates of the 2-torsion points.
    pub fn two_torsion_x(&self) -> Vec<Fq> {
        let zero = self.a2.field().zero();
        self.a2.field().elements().filter(|x| self.contains(x, &zero)).collect()
    }
}

/// A parsed curve fixture record.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveRecord {
    Finite(WeierstrassCurve<Fq>),
    Rational(WeierstrassCurve<BigRational>),
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("bad rational {s:?}");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn build<T: RingElt>(
    coeffs: Vec<T>,
    point: Option<Vec<T>>,
) -> Result<WeierstrassCurve<T>, String> {
    let a: [T; 5] = coeffs
        .try_into()
        .map_err(|v: Vec<T>| format!("expected 5 coefficients, found {}", v.len()))?;
    let mut e = WeierstrassCurve::new(a);
    if let Some(pt) = point {
        let [x, y]: [T; 2] = pt
            .try_into()
            .map_err(|v: Vec<T>| format!("expected 2 point coordinates, found {}", v.len()))?;
        if !e.contains(&x, &y) {
            return Err("marked point is not on the curve".into());
        }
        e = e.with_point(x, y);
    }
    Ok(e)
}

fn parse_record(line: &str) -> Result<CurveRecord, String> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    if !(2..=3).contains(&fields.len()) {
        return Err("expected `ring, a1 a2 a3 a4 a6[, x y]`".into());
    }
    let tag = fields[0];
    let split = |s: &str| s.split_whitespace().map(str::to_string).collect::<Vec<_>>();
    if tag == "Q" {
        let parse = |v: Vec<String>| v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>();
        let coeffs = parse(split(fields[1]))?;
        let point = fields.get(2).map(|s| parse(split(s))).transpose()?;
        return Ok(CurveRecord::Rational(build(coeffs, point)?));
    }
    let q: u64 = tag
        .strip_prefix('F')
        .and_then(|q| q.parse().ok())
        .ok_or_else(|| format!("unknown ring tag {tag:?}"))?;
    let field = FiniteField::new(q).map_err(|e| e.to_string())?;
    let parse = |v: Vec<String>| v.iter().map(|x| field.parse(x)).collect::<Result<Vec<_>, _>>();
    let coeffs = parse(split(fields[1]))?;
    let point = fields.get(2).map(|s| parse(split(s))).transpose()?;
    Ok(CurveRecord::Finite(build(coeffs, point)?))
}

/// One record per line: `ring, a1 a2 a3 a4 a6[, x y]` where ring is `Q` or
/// `F<q>`. Finite-field elements may be polynomials in the generator `g`
/// (written without spaces); `#` starts a comment.
pub fn parse_curves(text: &str) -> Result<Vec<CurveRecord>, ModuliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_record(line).map_err(|message| ModuliError::Parse { line: i + 1, message })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn discriminants() {
        let e = WeierstrassCurve::short(q(0), q(-11), q(-14));
        assert_eq!(e.discriminant(), q(512));
        assert_eq!(WeierstrassCurve::short(q(0), q(-1), q(0)).discriminant(), q(64));
        let t = BigRational::new(BigInt::from(7), BigInt::from(3));
        let l = WeierstrassCurve::legendre(&t);
        let tm1 = &t - q(1);
        assert_eq!(l.discriminant(), q(16) * &t * &t * &tm1 * &tm1);
        assert_eq!(WeierstrassCurve::short(q(0), q(-1), q(0)).j_invariant().unwrap(), q(1728));
    }

    #[test]
    fn long_form_discriminant() {
        // y² + y = x³ − x² has Δ = −11
        let e = WeierstrassCurve::new([q(0), q(-1), q(1), q(0), q(0)]);
        assert_eq!(e.discriminant(), q(-11));
    }

    #[test]
    fn automorphisms() {
        let f13 = FiniteField::new(13).unwrap();
        let e = WeierstrassCurve::short(f13.zero(), f13.from_int(-36), f13.zero());
        assert_eq!(e.aut_count().unwrap(), 4);
        assert_eq!(e.aut_fixing_point(&(f13.from_int(-6), f13.zero())).unwrap(), 2);
        let f9 = FiniteField::new(9).unwrap();
        let e = WeierstrassCurve::short(f9.zero(), f9.from_int(-1), f9.zero());
        assert_eq!(e.aut_fixing_point(&(f9.zero(), f9.zero())).unwrap(), 4);
        let g = WeierstrassCurve::legendre(&f13.from_int(5));
        assert_eq!(g.aut_fixing_point(&(f13.zero(), f13.zero())).unwrap(), 2);
        assert_eq!(
            g.aut_fixing_point(&(f13.from_int(2), f13.zero())),
            Err(ModuliError::NotTwoTorsion)
        );
        let singular = WeierstrassCurve::short(f13.zero(), f13.zero(), f13.zero());
        assert_eq!(singular.aut_count(), Err(ModuliError::NotElliptic));
    }

    #[test]
    fn fixtures() {
        let text = "# comment\nF13, 0 0 0 -36 0, -6 0\n\nQ, 0 0 0 -11 -14\nF9, 0 0 0 2*g+1 0\n";
        let recs = parse_curves(text).unwrap();
        assert_eq!(recs.len(), 3);
        match &recs[0] {
            CurveRecord::Finite(e) => assert!(e.point.is_some()),
            _ => panic!(),
        }
        assert!(matches!(
            parse_curves("F13, 0 0 0 1\n"),
            Err(ModuliError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_curves("\nF13, 0 0 0 -36 0, 1 0\n"),
            Err(ModuliError::Parse { line: 2, .. })
        ));
        assert!(parse_curves("F8, 0 0 0 1 0").is_err());
    }
}
