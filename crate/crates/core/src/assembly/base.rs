use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::expr::AbGroupExpr;
use super::AssemblyError;

/// Primes allowed in `P` for `Z_P` bases.
pub const SUPPORTED_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// `Z_P`: rationals whose denominators only involve primes in `P`.
    ZP(BTreeSet<u64>),
    Q,
    /// Algebraically closed field of the given characteristic (0 or odd).
    AlgClosed(u64),
}

impl BaseKind {
    pub fn z_half() -> Self {
        BaseKind::ZP([2].into())
    }

    pub fn zp(primes: &[u64]) -> Result<Self, AssemblyError> {
        let set: BTreeSet<u64> = primes.iter().copied().collect();
        if !set.contains(&2) {
            return Err(AssemblyError::BadP("P must contain 2".into()));
        }
        if let Some(p) = set.iter().find(|p| !SUPPORTED_PRIMES.contains(p)) {
            return Err(AssemblyError::BadP(format!("{p} is not one of {SUPPORTED_PRIMES:?}")));
        }
        Ok(BaseKind::ZP(set))
    }

    pub fn is_z_half(&self) -> bool {
        *self == Self::z_half()
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::ZP(ps) => {
                let ps: Vec<String> = ps.iter().map(u64::to_string).collect();
                write!(f, "ZP:{}", ps.join(","))
            }
            BaseKind::Q => f.write_str("Q"),
            BaseKind::AlgClosed(c) => write!(f, "algclosed:{c}"),
        }
    }
}

impl FromStr for BaseKind {
    type Err = AssemblyError;

    /// `ZP:2,3`, `Q` or `algclosed:<char>`.
    fn from_str(s: &str) -> Result<Self, AssemblyError> {
        let bad = || AssemblyError::BadBaseSpec(s.to_string());
        if s == "Q" {
            return Ok(BaseKind::Q);
        }
        if let Some(ps) = s.strip_prefix("ZP:") {
            let primes = ps
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            return BaseKind::zp(&primes);
        }
        if let Some(c) = s.strip_prefix("algclosed:") {
            let c: u64 = c.parse().map_err(|_| bad())?;
            if c == 2 {
                return Err(AssemblyError::UnsupportedBase("characteristic 2".into()));
            }
            if c != 0 && !crate::padic::is_prime(c) {
                return Err(bad());
            }
            return Ok(BaseKind::AlgClosed(c));
        }
        Err(bad())
    }
}

/// A table value and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub value: String,
    pub source: String,
}

impl Entry {
    fn new(value: &AbGroupExpr, source: impl Into<String>) -> Self {
        Self { value: value.to_string(), source: source.into() }
    }
}

type TableFile = BTreeMap<String, BTreeMap<String, Entry>>;

fn shipped() -> &'static TableFile {
    static TABLE: OnceLock<TableFile> = OnceLock::new();
    TABLE.get_or_init(|| {
        serde_json::from_str(include_str!("../../data/base_table.json")).expect("shipped base table is valid")
    })
}

/// A base scheme together with its arithmetic data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseDescriptor {
    pub kind: BaseKind,
    pub entries: BTreeMap<String, Entry>,
}

fn v(n: u64, p: u64) -> u32 {
    let mut n = n;
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

/// Table for `Z_P` from class field theory and Hasse-Brauer-Noether.
pub fn derive_zp_entries(primes: &BTreeSet<u64>) -> BTreeMap<String, Entry> {
    let n = primes.len();
    let odd: Vec<u64> = primes.iter().copied().filter(|&q| q != 2).collect();
    let mut h1_2 = AbGroupExpr::divisible(2, 1).sum(&AbGroupExpr::cyclic(2));
    for &q in &odd {
        h1_2 = h1_2.sum(&AbGroupExpr::cyclic(1 << v(q - 1, 2)));
    }
    let mut e = BTreeMap::new();
    let mut put = |k: &str, g: AbGroupExpr, src: &str| {
        e.insert(k.to_string(), Entry::new(&g, src));
    };
    put("units", AbGroupExpr::cyclic(2).sum(&AbGroupExpr::free(n as u32)), "units are +-1 times products of primes in P");
    put("units_mod_2", AbGroupExpr::cyclic_power(2, n + 1), "classes of -1 and the primes in P");
    put("pic", AbGroupExpr::zero(), "localizations of Z are principal ideal domains");
    put("mu2", AbGroupExpr::cyclic(2), "{+1,-1}");
    put(
        "br_2",
        AbGroupExpr::cyclic(2).sum(&AbGroupExpr::divisible(2, n as u32 - 1)),
        "Hasse-Brauer-Noether: kernel of the sum map on Br(R) + sum over P of Q/Z",
    );
    put(
        "h1_2",
        h1_2,
        "class field theory: Hom(prod over P of Z_q^x, Q_2/Z_2)",
    );
    e.insert(
        "br_odd".into(),
        Entry {
            value: format!("(Q_{{p}}/Z_{{p}})^{}", n - 1),
            source: "Hasse-Brauer-Noether, odd p in P".into(),
        },
    );
    e.insert(
        "h1_odd".into(),
        Entry {
            value: "Q_{p}/Z_{p} (+) torsion from q = 1 mod p".into(),
            source: "class field theory: Hom(prod over P of Z_q^x, Q_p/Z_p), odd p in P".into(),
        },
    );
    e
}

impl BaseDescriptor {
    pub fn new(kind: BaseKind) -> Result<Self, AssemblyError> {
        let key = match &kind {
            BaseKind::ZP(ps) if ps.len() > 1 => None,
            BaseKind::ZP(_) => Some("ZP:2"),
            BaseKind::Q => Some("Q"),
            BaseKind::AlgClosed(_) => Some("algclosed"),
        };
        let entries = match (key, &kind) {
            (Some(k), _) => shipped()
                .get(k)
                .cloned()
                .ok_or_else(|| AssemblyError::MissingTableEntry(k.into()))?,
            (None, BaseKind::ZP(ps)) => derive_zp_entries(ps),
            _ => unreachable!(),
        };
        Ok(Self { kind, entries })
    }

    pub fn parse(spec: &str) -> Result<Self, AssemblyError> {
        Self::new(spec.parse()?)
    }

    fn entry(&self, key: &str) -> Result<&Entry, AssemblyError> {
        self.entries
            .get(key)
            .ok_or_else(|| AssemblyError::MissingTableEntry(format!("{}: {key}", self.kind)))
    }

    fn value(&self, key: &str) -> Result<AbGroupExpr, AssemblyError> {
        let e = self.entry(key)?;
        e.value.parse().map_err(|_| AssemblyError::MissingTableEntry(format!("{}: {key} = {}", self.kind, e.value)))
    }

    pub fn units(&self) -> Result<AbGroupExpr, AssemblyError> {
        self.value("units")
    }

    pub fn units_mod_2(&self) -> Result<AbGroupExpr, AssemblyError> {
        self.value("units_mod_2")
    }

    pub fn pic(&self) -> Result<AbGroupExpr, AssemblyError> {
        self.value("pic")
    }

    pub fn mu2(&self) -> Result<AbGroupExpr, AssemblyError> {
        self.value("mu2")
    }

    /// `p`-primary part of `Br'(S)`.
    pub fn br_part(&self, p: u64) -> Result<AbGroupExpr, AssemblyError> {
        if p == 2 {
            return self.value("br_2");
        }
        if let BaseKind::ZP(ps) = &self.kind {
            if !ps.contains(&p) {
                return Ok(AbGroupExpr::zero());
            }
            return Ok(AbGroupExpr::divisible(p, ps.len() as u32 - 1));
        }
        self.templated("br_odd", p)
    }

    /// `H¹(S, Q_p/Z_p)`, the `p`-primary part of `H¹(S, Q/Z)`.
    pub fn h1_part(&self, p: u64) -> Result<AbGroupExpr, AssemblyError> {
        if p == 2 {
            return self.value("h1_2");
        }
        if let BaseKind::ZP(ps) = &self.kind {
            if !ps.contains(&p) {
                // only the p-adic units could contribute, and p is not in P
                let tors: Vec<u64> = ps.iter().map(|&q| p.pow(v(q - 1, p))).filter(|&x| x > 1).collect();
                return Ok(AbGroupExpr::cyclics(&tors));
            }
            let tors: Vec<u64> = ps.iter().map(|&q| p.pow(v(q - 1, p))).filter(|&x| x > 1).collect();
            return Ok(AbGroupExpr::divisible(p, 1).sum(&AbGroupExpr::cyclics(&tors)));
        }
        self.templated("h1_odd", p)
    }

    fn templated(&self, key: &str, p: u64) -> Result<AbGroupExpr, AssemblyError> {
        let e = self.entry(key)?;
        e.value
            .replace("{p}", &p.to_string())
            .parse()
            .map_err(|_| AssemblyError::MissingTableEntry(format!("{}: {key}", self.kind)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!("ZP:2".parse::<BaseKind>().unwrap(), BaseKind::z_half());
        assert_eq!("ZP:3,2".parse::<BaseKind>().unwrap().to_string(), "ZP:2,3");
        assert!(matches!("ZP:3".parse::<BaseKind>(), Err(AssemblyError::BadP(_))));
        assert!(matches!("ZP:2,17".parse::<BaseKind>(), Err(AssemblyError::BadP(_))));
        assert!(matches!("algclosed:2".parse::<BaseKind>(), Err(AssemblyError::UnsupportedBase(_))));
        assert!("algclosed:9".parse::<BaseKind>().is_err());
        assert!("R".parse::<BaseKind>().is_err());
        assert_eq!("algclosed:0".parse::<BaseKind>().unwrap(), BaseKind::AlgClosed(0));
    }

    #[test]
    fn derived_table_agrees_with_shipped_z_half() {
        let shipped = BaseDescriptor::new(BaseKind::z_half()).unwrap();
        let derived = derive_zp_entries(&[2].into());
        for key in ["units", "units_mod_2", "pic", "mu2", "br_2", "h1_2"] {
            let a: AbGroupExpr = shipped.entries[key].value.parse().unwrap();
            let b: AbGroupExpr = derived[key].value.parse().unwrap();
            assert_eq!(a, b, "{key}");
        }
        for p in [3, 5, 7] {
            assert!(shipped.br_part(p).unwrap().is_zero());
            assert!(shipped.h1_part(p).unwrap().is_zero());
        }
    }

    #[test]
    fn z_2p_tables() {
        for p in [3, 5, 7] {
            let b = BaseDescriptor::new(BaseKind::zp(&[2, p]).unwrap()).unwrap();
            assert_eq!(b.br_part(p).unwrap(), AbGroupExpr::divisible(p, 1));
            assert_eq!(b.h1_part(p).unwrap(), AbGroupExpr::divisible(p, 1));
        }
        // 7 ≡ 1 mod 3 adds Z/3 to H¹(Z[1/42], Q_3/Z_3)
        let b = BaseDescriptor::new(BaseKind::zp(&[2, 3, 7]).unwrap()).unwrap();
        assert_eq!(b.h1_part(3).unwrap().to_string(), "Q_3/Z_3 (+) Z/3");
        let b = BaseDescriptor::new(BaseKind::zp(&[2, 5]).unwrap()).unwrap();
        assert_eq!(b.h1_part(2).unwrap().to_string(), "Q_2/Z_2 (+) Z/2 (+) Z/4");
    }
}
