//! Ω as a polynomial in the elementary symmetric functions σ₁, …, σₙ of the
//! roots r₁, …, rₙ, independent of any particular graph.
//!
//! With wᵢ = rᵢ + sᵢ and wᵢ⁻¹ = rᵢ − sᵢ, the sheet values are Wᵢ = Π wᵢ^{±1}.
//! If Ωₙ₋₁(T) = Σ c_k T^k then Ωₙ(T) = Ωₙ₋₁(T/wₙ)·Ωₙ₋₁(T·wₙ), whose T^m
//! coefficient is Σ_{k+j=m} c_k c_j wₙ^{j−k}. Pairing j−k with k−j turns the
//! powers of wₙ into wₙ^d + wₙ^{−d} = 2·T_d(rₙ), so no square roots appear.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::chebyshev_t;

/// Sparse polynomial: exponent vector ↦ integer coefficient.
pub type MPoly = BTreeMap<Vec<u32>, BigInt>;

/// Largest `n` for which the universal formulas are built.
pub const N_MAX: usize = 4;

fn add_term(p: &mut MPoly, e: Vec<u32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&e) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                p.remove(&e);
            }
        }
        None => {
            p.insert(e, c);
        }
    }
}

fn mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut out, e, ca * cb);
        }
    }
    out
}

fn add_scaled(acc: &mut MPoly, p: &MPoly, c: &BigInt) {
    for (e, v) in p {
        add_term(acc, e.clone(), v * c);
    }
}

/// Ωₙ as T-coefficients (index = power of T), each a polynomial in r₁..rₙ.
fn omega_in_roots(n: usize) -> Vec<MPoly> {
    let mut coeffs: Vec<MPoly> = vec![
        MPoly::from([(vec![], BigInt::from(-1))]),
        MPoly::from([(vec![], BigInt::one())]),
    ];
    for k in 1..=n {
        let lifted: Vec<MPoly> = coeffs
            .iter()
            .map(|p| {
                p.iter()
                    .map(|(e, c)| {
                        let mut e = e.clone();
                        e.push(0);
                        (e, c.clone())
                    })
                    .collect()
            })
            .collect();
        let cheb = |d: usize| -> MPoly {
            let mut p = MPoly::new();
            for (pow, c) in chebyshev_t(d).into_iter().enumerate() {
                let mut e = vec![0u32; k];
                e[k - 1] = pow as u32;
                add_term(&mut p, e, c);
            }
            p
        };
        let deg = lifted.len() - 1;
        let mut next = vec![MPoly::new(); 2 * deg + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            for kk in 0..=deg {
                if kk > m || m - kk > deg {
                    continue;
                }
                let j = m - kk;
                if j < kk {
                    continue;
                }
                let prod = mul(&lifted[kk], &lifted[j]);
                if j == kk {
                    add_scaled(slot, &prod, &BigInt::one());
                } else {
                    let t = mul(&prod, &cheb(j - kk));
                    add_scaled(slot, &t, &BigInt::from(2));
                }
            }
        }
        coeffs = next;
    }
    coeffs
}

/// Rewrites a symmetric polynomial in r₁..rₙ in terms of σ₁..σₙ by repeatedly
/// cancelling the lex-leading monomial. Returns `None` if `p` is not symmetric.
fn to_sigma(p: &MPoly, n: usize, cache: &mut HashMap<Vec<u32>, MPoly>) -> Option<MPoly> {
    let mut rest = p.clone();
    let mut out = MPoly::new();
    while let Some((lead, c)) = rest.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        // σ₁^{a₁−a₂} σ₂^{a₂−a₃} … σₙ^{aₙ} has leading monomial r^a
        let se: Vec<u32> = (0..n)
            .map(|i| lead[i] - if i + 1 < n { lead[i + 1] } else { 0 })
            .collect();
        let expanded = sigma_monomial(&se, n, cache);
        add_scaled(&mut rest, &expanded, &-&c);
        add_term(&mut out, se, c);
    }
    Some(out)
}

fn elementary(k: usize, n: usize) -> MPoly {
    let mut p = MPoly::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            let e = (0..n).map(|i| (mask >> i) & 1).collect();
            add_term(&mut p, e, BigInt::one());
        }
    }
    p
}

fn sigma_monomial(se: &[u32], n: usize, cache: &mut HashMap<Vec<u32>, MPoly>) -> MPoly {
    if let Some(p) = cache.get(se) {
        return p.clone();
    }
    let p = match se.iter().position(|&x| x > 0) {
        None => MPoly::from([(vec![0; n], BigInt::one())]),
        Some(i) => {
            let mut smaller = se.to_vec();
            smaller[i] -= 1;
            let base = sigma_monomial(&smaller, n, cache);
            mul(&base, &elementary(i + 1, n))
        }
    };
    cache.insert(se.to_vec(), p.clone());
    p
}

fn build(n: usize) -> Vec<MPoly> {
    let mut cache = HashMap::new();
    omega_in_roots(n)
        .iter()
        .map(|c| to_sigma(c, n, &mut cache).expect("Ω coefficients are symmetric in the roots"))
        .collect()
}

/// Ωₙ with coefficients in ℤ[σ₁..σₙ], index = power of T. Cached per `n`.
pub fn omega_in_sigma(n: usize) -> &'static [MPoly] {
    static CACHE: [OnceLock<Vec<MPoly>>; N_MAX + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    assert!(n <= N_MAX, "universal Ω is built only for n ≤ {N_MAX}");
    CACHE[n].get_or_init(|| build(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(terms: &[(&[u32], i64)]) -> MPoly {
        let mut p = MPoly::new();
        for (e, c) in terms {
            add_term(&mut p, e.to_vec(), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn degree_one_and_two() {
        let o1 = omega_in_sigma(1);
        assert_eq!(o1, &[sig(&[(&[0], 1)]), sig(&[(&[1], -2)]), sig(&[(&[0], 1)])]);
        let o2 = omega_in_sigma(2);
        assert_eq!(o2.len(), 5);
        assert_eq!(o2[3], sig(&[(&[0, 1], -4)]));
        assert_eq!(o2[2], sig(&[(&[0, 0], -2), (&[2, 0], 4), (&[0, 1], -8)]));
        assert_eq!(o2[1], o2[3]);
        assert_eq!(o2[0], o2[4]);
    }

    #[test]
    fn degree_three_printed_terms() {
        let o3 = omega_in_sigma(3);
        assert_eq!(o3.len(), 9);
        assert_eq!(o3[8], sig(&[(&[0, 0, 0], 1)]));
        assert_eq!(o3[7], sig(&[(&[0, 0, 1], -8)]));
        assert_eq!(
            o3[6],
            sig(&[(&[0, 0, 0], 4), (&[2, 0, 0], -8), (&[0, 1, 0], 16), (&[0, 2, 0], 16), (&[1, 0, 1], -32)])
        );
        assert_eq!(o3[5], sig(&[(&[0, 0, 1], 40), (&[2, 0, 1], -32), (&[0, 1, 1], 64)]));
        assert_eq!(
            o3[4],
            sig(&[
                (&[0, 0, 0], 6),
                (&[2, 0, 0], -16),
                (&[4, 0, 0], 16),
                (&[0, 1, 0], 32),
                (&[2, 1, 0], -64),
                (&[0, 2, 0], 32),
                (&[1, 0, 1], 64),
                (&[0, 0, 2], 64),
            ])
        );
        for k in 0..=8 {
            assert_eq!(o3[k], o3[8 - k]);
        }
    }

    #[test]
    fn degree_four_is_palindromic() {
        let o4 = omega_in_sigma(4);
        assert_eq!(o4.len(), 17);
        assert_eq!(o4[15], sig(&[(&[0, 0, 0, 1], -16)]));
        for k in 0..=16 {
            assert_eq!(o4[k], o4[16 - k]);
        }
    }

    #[test]
    fn non_symmetric_rejected() {
        let p = sig(&[(&[1, 0], 1)]);
        assert!(to_sigma(&p, 2, &mut HashMap::new()).is_none());
    }
}
