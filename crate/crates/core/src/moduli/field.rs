use std::fmt;

use rand::Rng;

use super::ModuliError;
use crate::padic::is_prime;

/// Lower coefficients `c₀, …, c_{k−1}` of the monic defining polynomial of
/// `F_{p^k}`, one fixed choice per field so that element encodings are stable.
const CONWAY: &[(u64, u32, [u64; 4])] = &[
    (3, 2, [2, 2, 0, 0]),   // x² + 2x + 2
    (3, 3, [1, 2, 0, 0]),   // x³ + 2x + 1
    (3, 4, [2, 0, 0, 2]),   // x⁴ + 2x³ + 2
    (5, 2, [2, 4, 0, 0]),   // x² + 4x + 2
    (5, 3, [3, 3, 0, 0]),   // x³ + 3x + 3
    (7, 2, [3, 6, 0, 0]),   // x² + 6x + 3
    (7, 3, [4, 0, 6, 0]),   // x³ + 6x² + 4
    (11, 2, [2, 7, 0, 0]),  // x² + 7x + 2
    (13, 2, [2, 12, 0, 0]), // x² + 12x + 2
];

/// `F_q` for odd `q`, as `F_p[g]/(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    k: u32,
    poly: [u64; 4],
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self, ModuliError> {
        if q.is_multiple_of(2) {
            return Err(ModuliError::BadCharacteristic);
        }
        if is_prime(q) {
            if q >= 1 << 31 {
                return Err(ModuliError::UnsupportedField(q));
            }
            return Ok(Self { p: q, k: 1, poly: [0; 4] });
        }
        CONWAY
            .iter()
            .find(|(p, k, _)| p.pow(*k) == q)
            .map(|&(p, k, poly)| Self { p, k, poly })
            .ok_or(ModuliError::UnsupportedField(q))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn zero(&self) -> Fq {
        Fq { field: *self, c: [0; 4] }
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Fq {
        let mut c = [0; 4];
        c[0] = n.rem_euclid(self.p as i64) as u64;
        Fq { field: *self, c }
    }

    /// The class of `g`, or of the integer generator-less case `g = 0` in a
    /// prime field.
    pub fn generator(&self) -> Fq {
        let mut c = [0; 4];
        if self.k > 1 {
            c[1] = 1;
        }
        Fq { field: *self, c }
    }

    /// Element with base-p digits of `index` as coefficients.
    pub fn element(&self, mut index: u64) -> Fq {
        let mut c = [0; 4];
        for ci in c.iter_mut().take(self.k as usize) {
            *ci = index % self.p;
            index /= self.p;
        }
        Fq { field: *self, c }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Fq {
        self.element(rng.gen_range(0..self.order()))
    }

    /// Parses an integer or a polynomial in `g`, e.g. `2*g^2 + g - 1`.
    pub fn parse(&self, text: &str) -> Result<Fq, String> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty element".into());
        }
        let mut acc = self.zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let neg = rest.starts_with('-');
            if neg || rest.starts_with('+') {
                rest = &rest[1..];
            }
            let end = rest[1.min(rest.len())..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(rest.len());
            let term = self.parse_term(&rest[..end])?;
            acc = if neg { acc.sub(&term) } else { acc.add(&term) };
            rest = &rest[end..];
        }
        Ok(acc)
    }

    fn parse_term(&self, t: &str) -> Result<Fq, String> {
        let bad = || format!("bad term {t:?}");
        let (coef, mono) = match t.split_once('*') {
            Some((c, m)) => (c, m),
            None if t.starts_with('g') => ("1", t),
            None => (t, ""),
        };
        let c: i64 = coef.parse().map_err(|_| bad())?;
        let e: u64 = match mono {
            "" => 0,
            "g" => 1,
            m => m.strip_prefix("g^").and_then(|e| e.parse().ok()).ok_or_else(bad)?,
        };
        if e > 0 && self.k == 1 {
            return Err(format!("F_{} has no generator g", self.p));
        }
        Ok(self.from_int(c).mul(&self.generator().pow(e)))
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.order())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    field: FiniteField,
    c: [u64; 4],
}

impl Fq {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c[..self.field.k as usize]
    }

    /// Inverse of [`FiniteField::element`].
    pub fn index(&self) -> u64 {
        self.coeffs().iter().rev().fold(0, |acc, &d| acc * self.field.p + d)
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    pub fn add(&self, o: &Fq) -> Fq {
        let p = self.field.p;
        let c = std::array::from_fn(|i| (self.c[i] + o.c[i]) % p);
        Fq { field: self.field, c }
    }

    pub fn neg(&self) -> Fq {
        let p = self.field.p;
        let c = self.c.map(|x| (p - x) % p);
        Fq { field: self.field, c }
    }

    pub fn sub(&self, o: &Fq) -> Fq {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Fq) -> Fq {
        let FiniteField { p, k, poly } = self.field;
        let k = k as usize;
        let mut t = [0u64; 7];
        for i in 0..k {
            for j in 0..k {
                t[i + j] = (t[i + j] + self.c[i] * o.c[j]) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let top = t[d];
            t[d] = 0;
            for i in 0..k {
                t[d - k + i] = (t[d - k + i] + (p - poly[i]) * top) % p;
            }
        }
        let mut c = [0; 4];
        c[..k].copy_from_slice(&t[..k]);
        Fq { field: self.field, c }
    }

    pub fn pow(&self, mut e: u64) -> Fq {
        let mut acc = self.field.one();
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Fq> {
        (!self.is_zero()).then(|| self.pow(self.field.order() - 2))
    }

    pub fn is_square(&self) -> bool {
        self.is_zero() || self.pow((self.field.order() - 1) / 2) == self.field.one()
    }

    /// The square root with the smallest [`Fq::index`].
    pub fn sqrt(&self) -> Option<Fq> {
        if !self.is_square() {
            return None;
        }
        self.field.elements().find(|r| r.mul(r) == *self)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs().iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            });
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.field, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_entry_is_a_field() {
        for &(p, k, _) in CONWAY {
            let f = FiniteField::new(p.pow(k)).unwrap();
            let g = f.generator();
            // primitive: g has order exactly q − 1
            let q = f.order();
            assert_eq!(g.pow(q - 1), f.one());
            for d in 1..q - 1 {
                if (q - 1).is_multiple_of(d) {
                    assert_ne!(g.pow(d), f.one(), "F{q}: g has order {d}");
                }
            }
        }
    }

    #[test]
    fn inverses_and_roots() {
        let f = FiniteField::new(25).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(x.mul(&x.inv().unwrap()), f.one());
            let sq = x.mul(&x);
            let r = sq.sqrt().unwrap();
            assert_eq!(r.mul(&r), sq);
        }
        assert_eq!(f.elements().filter(|x| !x.is_zero() && x.is_square()).count(), 12);
        assert!(FiniteField::new(8).is_err());
        assert!(FiniteField::new(15).is_err());
    }

    #[test]
    fn parse_and_display() {
        let f = FiniteField::new(9).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse(&x.to_string()).unwrap(), x);
            assert_eq!(f.element(x.index()), x);
        }
        // g² = −2g − 2 = g + 1 in F₉
        assert_eq!(f.parse("g^2").unwrap(), f.parse("g + 1").unwrap());
        assert_eq!(f.parse("-1").unwrap(), f.from_int(2));
        let f13 = FiniteField::new(13).unwrap();
        assert_eq!(f13.parse("-6").unwrap(), f13.from_int(7));
        assert!(f13.parse("g").is_err());
        assert!(f13.parse("x").is_err());
    }
}
