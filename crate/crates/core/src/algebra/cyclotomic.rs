use std::collections::BTreeMap;

use super::poly::ExactPoly;

/// The `d`-th cyclotomic polynomial, obtained from `t^d − 1` by dividing out
/// `Φ_e` for every proper divisor `e` of `d`.
pub fn cyclotomic(d: u64) -> ExactPoly {
    assert!(d >= 1, "cyclotomic polynomial of order 0");
    let mut p = ExactPoly::t_pow_minus_one(d as usize);
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = p
                .exact_div(&cyclotomic(e))
                .expect("Φ_e divides t^d − 1 for e | d");
        }
    }
    p
}

/// `p = remainder · ∏ Φ_d^{mult(d)}` over the tested orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub multiplicities: BTreeMap<u64, usize>,
    pub remainder: ExactPoly,
}

impl CyclotomicFactorization {
    pub fn is_complete(&self) -> bool {
        self.remainder.is_one()
    }

    pub fn expand(&self) -> ExactPoly {
        self.multiplicities
            .iter()
            .fold(self.remainder.clone(), |acc, (&d, &m)| &acc * &cyclotomic(d).pow(m as u32))
    }
}

/// Divides out every `Φ_d` for `d` in `candidates ∪ {1}` as often as possible.
/// `p` must be nonzero; it is made monic first.
pub fn factor_cyclotomic(p: &ExactPoly, candidates: &[u64]) -> CyclotomicFactorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let mut remainder = p.monic();
    let mut orders: Vec<u64> = candidates.iter().copied().filter(|&d| d >= 1).collect();
    orders.push(1);
    orders.sort_unstable();
    orders.dedup();
    let mut multiplicities = BTreeMap::new();
    for d in orders {
        if remainder.degree() == Some(0) {
            break;
        }
        let phi = cyclotomic(d);
        let mut count = 0;
        loop {
            let (q, r) = remainder.div_rem(&phi).expect("Φ_d is nonzero");
            if !r.is_zero() {
                break;
            }
            remainder = q;
            count += 1;
        }
        if count > 0 {
            multiplicities.insert(d, count);
        }
    }
    CyclotomicFactorization {
        multiplicities,
        remainder,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_i64s(c)
    }

    #[test]
    fn small_orders() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn divides_t_pow_minus_one_iff_order_divides() {
        for d in 1..=12u64 {
            let phi = cyclotomic(d);
            for n in 1..=24u64 {
                assert_eq!(phi.divides(&ExactPoly::t_pow_minus_one(n as usize)), n % d == 0, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn factor_round_trip() {
        let target = [(6u64, 2u32), (4, 1), (9, 1), (12, 1), (18, 1)]
            .iter()
            .fold(ExactPoly::one(), |acc, &(d, m)| &acc * &cyclotomic(d).pow(m));
        let f = factor_cyclotomic(&target, &[2, 3, 4, 6, 9, 12, 18]);
        assert!(f.is_complete());
        assert_eq!(
            f.multiplicities,
            BTreeMap::from([(4, 1), (6, 2), (9, 1), (12, 1), (18, 1)])
        );
        assert_eq!(f.expand(), target);

        let one = factor_cyclotomic(&ExactPoly::one(), &[2, 3]);
        assert!(one.multiplicities.is_empty() && one.is_complete());

        let mixed = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let f = factor_cyclotomic(&mixed, &[2]);
        assert_eq!(f.multiplicities, BTreeMap::from([(1, 1)]));
        assert_eq!(f.remainder, p(&[2, 0, 1]));
        assert_eq!(f.expand(), mixed);
    }
}
