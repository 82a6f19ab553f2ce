//! Cohomology of a finite module by direct enumeration of cochains.
//!
//! Nothing here uses the periodic resolution: cocycles are tested against
//! the inhomogeneous cocycle identities for the whole group, and the group
//! structure of the quotient is read off from element counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::intlinalg::{smith_normal_form, FinAbGroup};

use super::module::CyclicModule;
use super::CohomologyError;

pub const MAX_ORDER: u64 = 1 << 16;
/// Upper bound on enumerated cochains.
pub const MAX_CANDIDATES: u64 = 1 << 24;

/// `M` in Smith coordinates: `⊕ Z/dⱼ`, elements numbered in mixed radix.
struct FiniteModel {
    n: usize,
    moduli: Vec<u64>,
    strides: Vec<u64>,
    order: usize,
    /// Digits of every element, `moduli.len()` per element.
    digits: Vec<u32>,
    act: Vec<u32>,
}

impl FiniteModel {
    fn new(m: &CyclicModule) -> Result<Self, CohomologyError> {
        let snf = smith_normal_form(&m.relations);
        let k = m.rank();
        if snf.rank() < k {
            return Err(CohomologyError::TooLarge("module is infinite".into()));
        }
        let keep: Vec<usize> = (0..k).filter(|&j| snf.d[(j, j)] != BigInt::from(1)).collect();
        let moduli: Vec<u64> = keep
            .iter()
            .map(|&j| snf.d[(j, j)].to_u64().unwrap_or(u64::MAX))
            .collect();
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d).filter(|&o| o <= MAX_ORDER));
        let Some(order) = order else {
            return Err(CohomologyError::TooLarge(format!(
                "module order exceeds {MAX_ORDER}"
            )));
        };
        let mut strides = Vec::with_capacity(moduli.len());
        let mut acc = 1u64;
        for &q in &moduli {
            strides.push(acc);
            acc *= q;
        }
        // action in Smith coordinates: w ↦ U·A·U⁻¹·w, entries reduced mod the
        // target modulus
        let a = snf.u.mul(&m.action).mul(&snf.u_inv);
        let coeffs: Vec<Vec<u64>> = keep
            .iter()
            .zip(&moduli)
            .map(|(&row, &q)| {
                let q = BigInt::from(q);
                keep.iter().map(|&col| a[(row, col)].mod_floor(&q).to_u64().unwrap()).collect()
            })
            .collect();
        let width = moduli.len();
        let mut model =
            Self { n: m.n as usize, moduli, strides, order: order as usize, digits: Vec::new(), act: Vec::new() };
        let mut digits = vec![0u64; width];
        model.digits.reserve(model.order * width);
        for x in 0..model.order as u32 {
            model.decode(x, &mut digits);
            model.digits.extend(digits.iter().map(|&d| d as u32));
        }
        // images of the basis vectors e_j, then act(x) = act(x − e_j) + act(e_j)
        // for the lowest nonzero digit j of x
        let basis_images: Vec<u32> = (0..width)
            .map(|j| {
                let idx: u64 = model
                    .moduli
                    .iter()
                    .zip(&model.strides)
                    .enumerate()
                    .map(|(r, (_, &st))| coeffs[r][j] * st)
                    .sum();
                idx as u32
            })
            .collect();
        let mut act = vec![0u32; model.order];
        for x in 1..model.order {
            let j = model.digits_of(x as u32).iter().position(|&d| d != 0).unwrap();
            let prev = x - model.strides[j] as usize;
            act[x] = model.add(act[prev], basis_images[j]);
        }
        model.act = act;
        Ok(model)
    }

    fn order(&self) -> usize {
        self.order
    }

    fn decode(&self, x: u32, out: &mut [u64]) {
        let mut rest = x as u64;
        for (d, &q) in out.iter_mut().zip(&self.moduli) {
            *d = rest % q;
            rest /= q;
        }
    }

    fn digits_of(&self, a: u32) -> &[u32] {
        let w = self.moduli.len();
        &self.digits[a as usize * w..(a as usize + 1) * w]
    }

    /// Applies `f` digitwise to `a` and `b`.
    fn combine(&self, a: u32, b: u32, f: impl Fn(u64, u64, u64) -> u64) -> u32 {
        let mut idx = 0u64;
        for (((&x, &y), &q), &st) in self.digits_of(a).iter().zip(self.digits_of(b)).zip(&self.moduli).zip(&self.strides) {
            idx += f(x as u64, y as u64, q) * st;
        }
        idx as u32
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.combine(a, b, |x, y, q| if x + y >= q { x + y - q } else { x + y })
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.combine(a, b, |x, y, q| if x >= y { x - y } else { x + q - y })
    }

    fn scale(&self, k: u64, a: u32) -> u32 {
        let k = k as u128;
        self.combine(a, a, |x, _, q| ((x as u128 * k) % q as u128) as u64)
    }

    /// `s^g · a`.
    fn act_pow(&self, g: usize, a: u32) -> u32 {
        (0..g % self.n).fold(a, |x, _| self.act[x as usize])
    }
}

/// Cochains with `slots` values, encoded in base `|M|`.
struct Cochains<'a> {
    model: &'a FiniteModel,
    slots: usize,
}

impl Cochains<'_> {
    fn count(&self) -> u64 {
        (self.model.order() as u64).pow(self.slots as u32)
    }

    fn decode(&self, mut code: u64, out: &mut Vec<u32>) {
        let q = self.model.order() as u64;
        out.clear();
        for _ in 0..self.slots {
            out.push((code % q) as u32);
            code /= q;
        }
    }

    fn encode(&self, t: &[u32]) -> u64 {
        let q = self.model.order() as u64;
        t.iter().rev().fold(0u64, |acc, &x| acc * q + x as u64)
    }

    fn scale(&self, k: u64, code: u64, buf: &mut Vec<u32>) -> u64 {
        self.decode(code, buf);
        for x in buf.iter_mut() {
            *x = self.model.scale(k, *x);
        }
        self.encode(buf)
    }
}

/// Membership set for coboundaries.
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(size: u64) -> Self {
        Self(vec![0; (size as usize).div_ceil(64)])
    }

    /// Returns true when `x` was not present.
    fn insert(&mut self, x: u64) -> bool {
        let (w, b) = ((x / 64) as usize, x % 64);
        let fresh = self.0[w] >> b & 1 == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    fn contains(&self, x: u64) -> bool {
        self.0[(x / 64) as usize] >> (x % 64) & 1 == 1
    }
}

/// Structure of `Z/B` for a subgroup `Z ⊆ M^L` and a subgroup `B ⊆ Z`, from
/// the counts `|{z : p^e·z ∈ B}|`.
fn quotient_structure(space: &Cochains, cycles: &[u64], bounds: &BitSet, n_bounds: usize) -> FinAbGroup {
    let index = cycles.len() / n_bounds;
    let mut orders = Vec::new();
    let mut rest = index as u64;
    let mut p = 2u64;
    let mut buf = Vec::with_capacity(space.slots);
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        while rest.is_multiple_of(p) {
            rest /= p;
        }
        // ranks r_e = log_p |Q[p^e]|; #factors of order ≥ p^e is r_e − r_{e−1}
        let mut ranks = vec![0u32];
        let mut pe = 1u64;
        loop {
            pe *= p;
            let killed = cycles
                .iter()
                .filter(|&&z| bounds.contains(space.scale(pe, z, &mut buf)))
                .count()
                / n_bounds;
            let mut r = 0u32;
            let mut c = killed as u64;
            while c > 1 {
                c /= p;
                r += 1;
            }
            if r == *ranks.last().unwrap() {
                break;
            }
            ranks.push(r);
        }
        let at_least: Vec<u32> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        for (e, &cnt) in at_least.iter().enumerate() {
            let next = at_least.get(e + 1).copied().unwrap_or(0);
            for _ in 0..cnt - next {
                orders.push(BigInt::from(p.pow(e as u32 + 1)));
            }
        }
    }
    FinAbGroup::from_orders(&orders, 0)
}

fn check_budget(order: usize, slots: usize) -> Result<(), CohomologyError> {
    let total = (order as u64).checked_pow(slots as u32);
    match total {
        Some(t) if t <= MAX_CANDIDATES => Ok(()),
        _ => Err(CohomologyError::TooLarge(format!(
            "{order}^{slots} cochains exceed the enumeration budget"
        ))),
    }
}

/// Collects the cocycles among all cochains and the image of `d` applied to
/// every cochain one degree down, then reads off the quotient.
fn cohomology_from(
    model: &FiniteModel,
    slots: usize,
    lower_slots: usize,
    is_cocycle: impl Fn(&[u32]) -> bool,
    coboundary: impl Fn(&[u32], &mut Vec<u32>),
) -> Result<FinAbGroup, CohomologyError> {
    check_budget(model.order(), slots)?;
    check_budget(model.order(), lower_slots)?;
    let space = Cochains { model, slots };
    let lower = Cochains { model, slots: lower_slots };
    let mut buf = Vec::with_capacity(slots);
    let cycles: Vec<u64> = (0..space.count())
        .filter(|&c| {
            space.decode(c, &mut buf);
            is_cocycle(&buf)
        })
        .collect();
    let mut bounds = BitSet::new(space.count());
    let mut n_bounds = 0;
    let mut out = Vec::with_capacity(slots);
    for c in 0..lower.count() {
        lower.decode(c, &mut buf);
        coboundary(&buf, &mut out);
        if bounds.insert(space.encode(&out)) {
            n_bounds += 1;
        }
    }
    Ok(quotient_structure(&space, &cycles, &bounds, n_bounds))
}

fn h0(model: &FiniteModel) -> Result<FinAbGroup, CohomologyError> {
    cohomology_from(model, 1, 0, |t| model.act[t[0] as usize] == t[0], |_, out| {
        out.clear();
        out.push(0);
    })
}

fn h1(model: &FiniteModel) -> Result<FinAbGroup, CohomologyError> {
    let n = model.n;
    // f(s^0) = 0; the tuple holds f(s^1), …, f(s^{n−1})
    let f_at = |t: &[u32], g: usize| if g.is_multiple_of(n) { 0 } else { t[g % n - 1] };
    cohomology_from(
        model,
        n - 1,
        1,
        |t| {
            (1..n).all(|a| {
                (1..n).all(|b| f_at(t, a + b) == model.add(f_at(t, a), model.act_pow(a, f_at(t, b))))
            })
        },
        |m, out| {
            out.clear();
            out.extend((1..n).map(|g| model.sub(model.act_pow(g, m[0]), m[0])));
        },
    )
}

fn h2(model: &FiniteModel) -> Result<FinAbGroup, CohomologyError> {
    let n = model.n;
    let f_at = |t: &[u32], g: usize, h: usize| {
        let (g, h) = (g % n, h % n);
        if g == 0 || h == 0 {
            0
        } else {
            t[(g - 1) * (n - 1) + (h - 1)]
        }
    };
    let c_at = |c: &[u32], g: usize| if g.is_multiple_of(n) { 0 } else { c[g % n - 1] };
    cohomology_from(
        model,
        (n - 1) * (n - 1),
        n - 1,
        // g·f(h,k) − f(gh,k) + f(g,hk) − f(g,h) = 0
        |t| {
            (1..n).all(|g| {
                (1..n).all(|h| {
                    (1..n).all(|k| {
                        let a = model.add(model.act_pow(g, f_at(t, h, k)), f_at(t, g, h + k));
                        let b = model.add(f_at(t, g + h, k), f_at(t, g, h));
                        a == b
                    })
                })
            })
        },
        |c, out| {
            out.clear();
            for g in 1..n {
                for h in 1..n {
                    let v = model.add(model.act_pow(g, c_at(c, h)), c_at(c, g));
                    out.push(model.sub(v, c_at(c, g + h)));
                }
            }
        },
    )
}

/// `H^i(C_n, M)` for `i ∈ {0,1,2}` and finite `M` of order at most `MAX_ORDER`.
pub fn brute_force_cohomology(m: &CyclicModule, i: u32) -> Result<FinAbGroup, CohomologyError> {
    m.validate()?;
    if i > 2 {
        return Err(CohomologyError::DegreeTooLarge(i));
    }
    let model = FiniteModel::new(m)?;
    match i {
        0 => h0(&model),
        1 => h1(&model),
        _ => h2(&model),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cohomology, tensor_with, builtin_rep, RepName};
    use crate::intlinalg::IntMatrix;

    #[test]
    fn trivial_z4_degree_one() {
        let m = CyclicModule::trivial(2, &FinAbGroup::cyclic(4));
        assert_eq!(brute_force_cohomology(&m, 1).unwrap(), FinAbGroup::cyclic(2));
    }

    #[test]
    fn sign_z3_degree_one() {
        let m = tensor_with(&builtin_rep(RepName::Sgn).module, &FinAbGroup::cyclic(3)).unwrap();
        assert!(brute_force_cohomology(&m, 1).unwrap().is_trivial());
    }

    #[test]
    fn agrees_on_noncyclic_quotients() {
        // trivial (Z/2)^2 ⊕ Z/4 over C_2: H^1 = M[2] = (Z/2)^3
        let m = CyclicModule::trivial(2, &FinAbGroup::from_u64(&[2, 2, 4], 0));
        assert_eq!(brute_force_cohomology(&m, 1).unwrap(), FinAbGroup::from_u64(&[2, 2, 2], 0));
        for i in 0..=2 {
            assert_eq!(brute_force_cohomology(&m, i).unwrap(), cohomology(&m, i).unwrap());
        }
    }

    #[test]
    fn order_three_group() {
        let rot = IntMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let rels = IntMatrix::identity(3).scale(&BigInt::from(2));
        let m = CyclicModule::new(3, rels, rot).unwrap();
        for i in 0..=2 {
            assert_eq!(brute_force_cohomology(&m, i).unwrap(), cohomology(&m, i).unwrap());
        }
        let m = CyclicModule::trivial(3, &FinAbGroup::cyclic(9));
        for i in 0..=2 {
            assert_eq!(brute_force_cohomology(&m, i).unwrap(), cohomology(&m, i).unwrap());
        }
    }

    #[test]
    fn refuses_large_or_infinite() {
        let m = CyclicModule::trivial(2, &FinAbGroup::free(1));
        assert!(matches!(brute_force_cohomology(&m, 0), Err(CohomologyError::TooLarge(_))));
        let m = CyclicModule::trivial(2, &FinAbGroup::cyclic(70000));
        assert!(matches!(brute_force_cohomology(&m, 0), Err(CohomologyError::TooLarge(_))));
    }
}
