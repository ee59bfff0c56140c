use critval_core::weights::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn decreasing(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// μ′ with μ_k ≥ −μ′_{n−k} ≥ μ_{k+1}.
fn interlaced(rng: &mut ChaCha8Rng, mu: &[i64]) -> Vec<i64> {
    let n = mu.len();
    let mut p = vec![0; n - 1];
    for k in 0..n - 1 {
        p[n - 2 - k] = -rng.gen_range(mu[k + 1]..=mu[k]);
    }
    p
}

fn pair(rng: &mut ChaCha8Rng) -> (HighestWeight, HighestWeight) {
    let n = rng.gen_range(2..=6);
    let d = rng.gen_range(1..=3);
    let mut iota = Vec::new();
    let mut iota_p = Vec::new();
    let tie = rng.gen_bool(0.5);
    for _ in 0..d {
        let mu = decreasing(rng, n);
        let p = if tie { interlaced(rng, &mu) } else { decreasing(rng, n - 1) };
        iota.push(mu);
        iota_p.push(p);
    }
    (
        HighestWeight::conjugate_self_dual(iota).unwrap(),
        HighestWeight::conjugate_self_dual(iota_p).unwrap(),
    )
}

#[test]
fn half_is_critical_at_zero_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let zero = BigRational::zero();
    for _ in 0..2000 {
        let (mu, mu_p) = pair(&mut rng);
        let a = infinity_type(&mu, &zero);
        let b = infinity_type(&mu_p, &zero);
        if !no_middle_class(&a, &b, &zero, &zero) {
            continue;
        }
        let c = crit_rankin_selberg(&a, &b, &zero, &zero).unwrap();
        assert!(c.contains(&q(1, 2)), "{:?} {:?}", mu, mu_p);
    }
}

#[test]
fn piano_implies_no_middle_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a0);
    let mut piano = 0;
    for _ in 0..10_000 {
        let (mu, mu_p) = pair(&mut rng);
        let (r, s) = if rng.gen_bool(0.5) {
            (BigRational::zero(), BigRational::zero())
        } else {
            let k = rng.gen_range(-3..=3);
            (q(k, 1), q(-k, 1))
        };
        if piano_check(&mu, &mu_p).unwrap() {
            piano += 1;
            let a = infinity_type(&mu, &r);
            let b = infinity_type(&mu_p, &s);
            assert!(no_middle_class(&a, &b, &r, &s), "{:?} {:?}", mu, mu_p);
            assert!(!crit_rankin_selberg(&a, &b, &r, &s).unwrap().is_empty());
        }
    }
    assert!(piano > 4000, "{}", piano);
}

fn self_dual_type(rng: &mut ChaCha8Rng, n: usize, d: usize) -> InfinityType {
    let doubled = (0..d)
        .map(|_| {
            // distinct positive values of the parity of n + 1, then mirrored
            let mut pos: Vec<i64> = (0..n / 2)
                .map(|_| rng.gen_range(1..=12))
                .map(|k| 2 * k - (n as i64 % 2 == 0) as i64)
                .collect();
            pos.sort_unstable();
            pos.dedup();
            while pos.len() < n / 2 {
                let m = pos.last().copied().unwrap_or(0) + 2;
                pos.push(m);
            }
            let mut v: Vec<i64> = pos.iter().flat_map(|&x| [x, -x]).collect();
            if n % 2 == 1 {
                v.push(0);
            }
            v
        })
        .collect();
    InfinityType::from_doubled(doubled, BigRational::zero())
}

#[test]
fn asai_zero_and_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=6 {
        for _ in 0..300 {
            let d = rng.gen_range(1..=3);
            let a = self_dual_type(&mut rng, n, d);
            assert!(a.is_regular() && a.is_conjugate_self_dual());
            let same = crit_asai(&a, AsaiSign::Same).unwrap();
            let opp = crit_asai(&a, AsaiSign::Opposite).unwrap();
            for x in [q(0, 1), q(1, 1)] {
                assert!(same.contains(&x));
                assert!(!opp.contains(&x));
            }
        }
    }
}

#[test]
fn zero_weight_n2_examples() {
    let zero = BigRational::zero();
    let mu = HighestWeight::conjugate_self_dual(vec![vec![0, 0]]).unwrap();
    let mu_p = HighestWeight::conjugate_self_dual(vec![vec![0]]).unwrap();
    let a = infinity_type(&mu, &zero);
    let b = infinity_type(&mu_p, &zero);
    assert_eq!(crit_rankin_selberg(&a, &b, &zero, &zero).unwrap().enumerate(), vec![q(1, 2)]);
    assert!(piano_check(&mu, &mu_p).unwrap());
    let same = crit_asai(&a, AsaiSign::Same).unwrap().enumerate();
    assert!(same.contains(&q(0, 1)) && same.contains(&q(1, 1)));
}

#[test]
fn crit_invariant_under_block_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..2000 {
        let (mu, mu_p) = pair(&mut rng);
        let r = q(rng.gen_range(-4..=4), 2);
        let s = q(rng.gen_range(-4..=4), 2);
        let a = infinity_type(&mu, &r);
        let b = infinity_type(&mu_p, &s);
        let mut perm: Vec<usize> = (0..mu.d()).collect();
        perm.shuffle(&mut rng);
        let (pa, pb) = (a.permute_embeddings(&perm), b.permute_embeddings(&perm));
        assert_eq!(
            crit_rankin_selberg(&a, &b, &r, &s),
            crit_rankin_selberg(&pa, &pb, &r, &s)
        );
        let t = self_dual_type(&mut rng, mu.n(), mu.d());
        let pt = t.permute_embeddings(&perm);
        for sign in [AsaiSign::Same, AsaiSign::Opposite] {
            assert_eq!(crit_asai(&t, sign), crit_asai(&pt, sign));
        }
    }
}
