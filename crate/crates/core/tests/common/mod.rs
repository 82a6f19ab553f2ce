#![allow(dead_code)]

use brauer_y02::cohomology::{builtin_rep, tensor_with, CyclicModule, RepName};
use brauer_y02::intlinalg::FinAbGroup;

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every finite abelian group of order `n`, up to isomorphism.
pub fn abelian_groups(n: u64) -> Vec<FinAbGroup> {
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
        p += 1;
    }
    let mut groups: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factors {
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(e, e) {
                let mut h = g.clone();
                h.extend(part.iter().map(|&k| p.pow(k)));
                next.push(h);
            }
        }
        groups = next;
    }
    groups.iter().map(|orders| FinAbGroup::from_u64(orders, 0)).collect()
}

pub fn with_coefficients(rep: RepName, g: &FinAbGroup) -> CyclicModule {
    tensor_with(&builtin_rep(rep).module, g).unwrap()
}

pub const C2_REPS: [RepName; 3] = [RepName::Triv, RepName::Sgn, RepName::RhoTildeRestricted];
