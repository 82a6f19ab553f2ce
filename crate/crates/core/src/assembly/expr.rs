use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::padic::prime_factors;

/// A named group with no finite normal form, such as `Br(Q)`, optionally
/// restricted to its `p`-primary part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub name: String,
    pub part: Option<u64>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            None => f.write_str(&self.name),
            Some(p) => write!(f, "{}[{p}^inf]", self.name),
        }
    }
}

/// `Z^r ⊕ ⊕ Z/n ⊕ ⊕ (Q_p/Z_p)^k ⊕ atoms`. Cyclic factors are kept in
/// primary form, so structural equality is isomorphism for the non-symbolic
/// part. Atoms never cancel or merge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbGroupExpr {
    free_rank: u32,
    /// Prime powers, sorted.
    cyclic: Vec<u64>,
    divisible: BTreeMap<u64, u32>,
    atoms: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("expression has symbolic atoms")]
    Symbolic,
    #[error("expression is infinite")]
    Infinite,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

fn prime_power_split(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    for p in prime_factors(&n.into()) {
        let mut q = 1;
        while m.is_multiple_of(p) {
            m /= p;
            q *= p;
        }
        out.push(q);
    }
    out
}

fn vp(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

impl AbGroupExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: u32) -> Self {
        Self { free_rank: rank, ..Self::default() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::cyclics(&[n])
    }

    pub fn cyclics(ns: &[u64]) -> Self {
        let mut cyclic: Vec<u64> = ns.iter().flat_map(|&n| prime_power_split(n)).collect();
        cyclic.sort_unstable();
        Self { cyclic, ..Self::default() }
    }

    /// `(Z/n)^k`.
    pub fn cyclic_power(n: u64, k: usize) -> Self {
        Self::cyclics(&vec![n; k])
    }

    /// `(Q_p/Z_p)^corank`.
    pub fn divisible(p: u64, corank: u32) -> Self {
        let mut divisible = BTreeMap::new();
        if corank > 0 {
            divisible.insert(p, corank);
        }
        Self { divisible, ..Self::default() }
    }

    pub fn atom(name: &str) -> Self {
        Self { atoms: vec![Atom { name: name.into(), part: None }], ..Self::default() }
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn cyclic_factors(&self) -> &[u64] {
        &self.cyclic
    }

    pub fn divisible_parts(&self) -> &BTreeMap<u64, u32> {
        &self.divisible
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn is_symbolic(&self) -> bool {
        !self.atoms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        !self.is_symbolic() && self.free_rank == 0 && self.divisible.is_empty()
    }

    pub fn sum(&self, other: &AbGroupExpr) -> AbGroupExpr {
        let mut out = self.clone();
        out.free_rank += other.free_rank;
        out.cyclic.extend(&other.cyclic);
        out.cyclic.sort_unstable();
        for (&p, &k) in &other.divisible {
            *out.divisible.entry(p).or_insert(0) += k;
        }
        out.atoms.extend(other.atoms.iter().cloned());
        out.atoms.sort();
        out
    }

    pub fn sum_all<'a>(parts: impl IntoIterator<Item = &'a AbGroupExpr>) -> AbGroupExpr {
        parts.into_iter().fold(Self::zero(), |acc, x| acc.sum(x))
    }

    /// Removes the summands of `other`, if `other` is a direct summand in
    /// this structural sense.
    pub fn remove_summand(&self, other: &AbGroupExpr) -> Option<AbGroupExpr> {
        let mut out = self.clone();
        out.free_rank = out.free_rank.checked_sub(other.free_rank)?;
        for c in &other.cyclic {
            let i = out.cyclic.iter().position(|x| x == c)?;
            out.cyclic.remove(i);
        }
        for (p, k) in &other.divisible {
            let e = out.divisible.get_mut(p)?;
            *e = e.checked_sub(*k)?;
            if *e == 0 {
                out.divisible.remove(p);
            }
        }
        for a in &other.atoms {
            let i = out.atoms.iter().position(|x| x == a)?;
            out.atoms.remove(i);
        }
        Some(out)
    }

    /// The `p`-primary torsion. Free summands contribute nothing; atoms are
    /// marked as restricted to their `p`-part.
    pub fn p_part(&self, p: u64) -> AbGroupExpr {
        let mut out = Self {
            cyclic: self.cyclic.iter().copied().filter(|c| c % p == 0).collect(),
            ..Self::default()
        };
        if let Some(&k) = self.divisible.get(&p) {
            out.divisible.insert(p, k);
        }
        out.atoms = self
            .atoms
            .iter()
            .filter(|a| a.part.is_none() || a.part == Some(p))
            .map(|a| Atom { name: a.name.clone(), part: Some(p) })
            .collect();
        out
    }

    /// `⊗ Z_(p)`: free rank kept, torsion restricted to its `p`-part, atoms
    /// renamed.
    pub fn localize(&self, p: u64) -> AbGroupExpr {
        let mut out = self.p_part(p);
        out.free_rank = self.free_rank;
        out.atoms = self
            .atoms
            .iter()
            .map(|a| Atom { name: format!("({a})_({p})"), part: None })
            .collect();
        out
    }

    /// Elements killed by `n`.
    pub fn n_torsion(&self, n: u64) -> Result<AbGroupExpr, ExprError> {
        if self.is_symbolic() {
            return Err(ExprError::Symbolic);
        }
        let mut parts: Vec<u64> = self.cyclic.iter().map(|&c| num_integer::gcd(c, n)).collect();
        for (&p, &k) in &self.divisible {
            parts.extend(std::iter::repeat_n(p.pow(vp(n, p)), k as usize));
        }
        Ok(Self::cyclics(&parts))
    }

    /// `G / nG`.
    pub fn mod_n(&self, n: u64) -> Result<AbGroupExpr, ExprError> {
        if self.is_symbolic() {
            return Err(ExprError::Symbolic);
        }
        let mut parts: Vec<u64> = self.cyclic.iter().map(|&c| num_integer::gcd(c, n)).collect();
        parts.extend(std::iter::repeat_n(n, self.free_rank as usize));
        Ok(Self::cyclics(&parts))
    }

    pub fn order(&self) -> Result<u64, ExprError> {
        if self.is_symbolic() {
            return Err(ExprError::Symbolic);
        }
        if !self.is_finite() {
            return Err(ExprError::Infinite);
        }
        Ok(self.cyclic.iter().product())
    }
}

fn power(f: &mut fmt::Formatter<'_>, base: &str, k: u32, wrap: bool) -> fmt::Result {
    match (k, wrap) {
        (1, _) => f.write_str(base),
        (k, true) => write!(f, "({base})^{k}"),
        (k, false) => write!(f, "{base}^{k}"),
    }
}

impl fmt::Display for AbGroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !std::mem::take(&mut first) {
                f.write_str(" (+) ")?;
            }
            Ok::<(), fmt::Error>(())
        };
        for a in &self.atoms {
            sep(f)?;
            write!(f, "{a}")?;
        }
        for (&p, &k) in &self.divisible {
            sep(f)?;
            power(f, &format!("Q_{p}/Z_{p}"), k, true)?;
        }
        if self.free_rank > 0 {
            sep(f)?;
            power(f, "Z", self.free_rank, false)?;
        }
        let mut i = 0;
        while i < self.cyclic.len() {
            let c = self.cyclic[i];
            let k = self.cyclic[i..].iter().take_while(|&&x| x == c).count();
            sep(f)?;
            power(f, &format!("Z/{c}"), k as u32, true)?;
            i += k;
        }
        Ok(())
    }
}

impl Serialize for AbGroupExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_summand(t: &str) -> Result<AbGroupExpr, ExprError> {
    let bad = || ExprError::Parse(t.to_string());
    if t == "0" {
        return Ok(AbGroupExpr::zero());
    }
    // (base)^k or Z^k
    let (base, k) = match t.rsplit_once(")^") {
        Some((b, k)) if b.starts_with('(') => (&b[1..], k.parse::<u32>().map_err(|_| bad())?),
        _ => match t.strip_prefix("Z^") {
            Some(k) => return Ok(AbGroupExpr::free(k.parse().map_err(|_| bad())?)),
            None => (t, 1),
        },
    };
    if base == "Z" {
        return Ok(AbGroupExpr::free(k));
    }
    if let Some(n) = base.strip_prefix("Z/") {
        let n: u64 = n.parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(bad());
        }
        return Ok(AbGroupExpr::cyclic_power(n, k as usize));
    }
    if let Some((a, b)) = base.strip_prefix("Q_").and_then(|r| r.split_once("/Z_")) {
        if a == b {
            let p: u64 = a.parse().map_err(|_| bad())?;
            return Ok(AbGroupExpr::divisible(p, k));
        }
    }
    if k != 1 || base.is_empty() {
        return Err(bad());
    }
    let atom = match base.strip_suffix("^inf]").and_then(|r| r.rsplit_once('[')) {
        Some((name, p)) => Atom { name: name.into(), part: Some(p.parse().map_err(|_| bad())?) },
        None => Atom { name: base.into(), part: None },
    };
    Ok(AbGroupExpr { atoms: vec![atom], ..AbGroupExpr::default() })
}

impl FromStr for AbGroupExpr {
    type Err = ExprError;

    /// Inverse of `Display`: summands joined by ` (+) `; anything that is not
    /// `0`, `Z^r`, `(Z/n)^k` or `(Q_p/Z_p)^k` is an atom.
    fn from_str(s: &str) -> Result<Self, ExprError> {
        s.split(" (+) ")
            .map(|t| parse_summand(t.trim()))
            .try_fold(AbGroupExpr::zero(), |acc, x| Ok(acc.sum(&x?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_notation() {
        let e = AbGroupExpr::divisible(2, 1)
            .sum(&AbGroupExpr::cyclic_power(2, 4))
            .sum(&AbGroupExpr::cyclic(4));
        assert_eq!(e.to_string(), "Q_2/Z_2 (+) (Z/2)^4 (+) Z/4");
        assert_eq!(e.to_string().parse::<AbGroupExpr>().unwrap(), e);
        assert_eq!(AbGroupExpr::zero().to_string(), "0");
        assert_eq!(AbGroupExpr::cyclic(6), AbGroupExpr::cyclics(&[2, 3]));
        let q = AbGroupExpr::atom("Br(Q)").sum(&AbGroupExpr::free(2)).sum(&AbGroupExpr::divisible(3, 2));
        assert_eq!(q.to_string(), "Br(Q) (+) (Q_3/Z_3)^2 (+) Z^2");
        assert_eq!(q.to_string().parse::<AbGroupExpr>().unwrap(), q);
        let part = q.p_part(3);
        assert_eq!(part.to_string(), "Br(Q)[3^inf] (+) (Q_3/Z_3)^2");
        assert_eq!(part.to_string().parse::<AbGroupExpr>().unwrap(), part);
        assert!("Z/1".parse::<AbGroupExpr>().is_err());
    }

    #[test]
    fn truncation() {
        let e: AbGroupExpr = "Q_2/Z_2 (+) (Z/2)^4 (+) Z/4".parse().unwrap();
        for n in 2..10 {
            let t = e.n_torsion(1 << n).unwrap();
            assert_eq!(t.order().unwrap(), 1 << (n + 6));
        }
        assert_eq!(e.n_torsion(3).unwrap(), AbGroupExpr::zero());
        assert_eq!(e.order(), Err(ExprError::Infinite));
        assert_eq!(AbGroupExpr::atom("x").n_torsion(2), Err(ExprError::Symbolic));
        let z = AbGroupExpr::free(1).sum(&AbGroupExpr::cyclic(4));
        assert_eq!(z.mod_n(2).unwrap(), AbGroupExpr::cyclic_power(2, 2));
    }

    #[test]
    fn summands() {
        let e: AbGroupExpr = "Q_2/Z_2 (+) (Z/2)^4 (+) Z/4".parse().unwrap();
        let r = e.remove_summand(&"Z/2 (+) Z/4".parse().unwrap()).unwrap();
        assert_eq!(r.to_string(), "Q_2/Z_2 (+) (Z/2)^3");
        assert!(e.remove_summand(&AbGroupExpr::cyclic(8)).is_none());
    }
}
