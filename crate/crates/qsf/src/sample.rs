//! Deterministic parameter sampling.
//!
//! Each (seed, entry id, sample index) triple owns a ChaCha8 stream: the key
//! is `seed` (little endian) followed by the FNV-1a 64-bit hash of the id
//! (little endian) and 16 zero bytes; the stream number is the sample index.
//! Uniform doubles are `(k + 0.5) / 2^52` for the top 52 bits `k` of a word.

use qsf_core::catalog::{CatalogEntry, ParamDomain, Params};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// FNV-1a, 64-bit.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The generator for one sample of one entry.
pub fn rng_stream(seed: u64, id: &str, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&fnv1a64(id.as_bytes()).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// A double in the open interval (0, 1).
pub fn unit_open(rng: &mut impl RngCore) -> f64 {
    let k = rng.next_u64() >> 12;
    (k as f64 + 0.5) / (1u64 << 52) as f64
}

/// Uniform integer in `[lo, hi]`.
pub fn int_in(rng: &mut impl RngCore, lo: i64, hi: i64) -> i64 {
    let span = (hi - lo + 1) as u128;
    lo + ((rng.next_u64() as u128 * span) >> 64) as i64
}

/// Whether a real interval is sampled log-uniformly.
pub fn log_uniform(lo: f64, hi: f64) -> bool {
    lo > 0.0 && hi / lo > 100.0
}

fn below(x: f64) -> f64 {
    if x > 0.0 {
        f64::from_bits(x.to_bits() - 1)
    } else {
        -f64::from_bits((-x).to_bits() + 1)
    }
}

fn above(x: f64) -> f64 {
    if x >= 0.0 {
        f64::from_bits(x.to_bits() + 1)
    } else {
        -f64::from_bits((-x).to_bits() - 1)
    }
}

fn real(rng: &mut impl RngCore, lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> f64 {
    let u = unit_open(rng);
    let v = if log_uniform(lo, hi) {
        (lo.ln() + u * (hi.ln() - lo.ln())).exp()
    } else {
        lo + u * (hi - lo)
    };
    // keep rounding from landing on or past an endpoint
    let v = if hi_open && v >= hi { below(hi) } else { v.min(hi) };
    if lo_open && v <= lo {
        above(lo)
    } else {
        v.max(lo)
    }
}

/// Draw one parameter set for `entry` with bases in `[q_min, q_max]`.
///
/// Parameters are drawn in declaration order. Draws that violate a
/// cross-parameter constraint are repeated from the same stream.
pub fn sample_params(entry: &CatalogEntry, seed: u64, index: u64, q_min: f64, q_max: f64) -> Params {
    let mut rng = rng_stream(seed, entry.id, index);
    loop {
        let mut p = Params::new();
        for spec in entry.params {
            let v = match spec.domain {
                ParamDomain::Base => real(&mut rng, q_min, q_max, false, false),
                ParamDomain::BelowBase => {
                    let q = p["q"];
                    real(&mut rng, q_min, q, false, true)
                }
                ParamDomain::Real { lo, hi, lo_open, hi_open } => real(&mut rng, lo, hi, lo_open, hi_open),
                ParamDomain::Int { lo, hi } => int_in(&mut rng, lo, hi) as f64,
            };
            p.insert(spec.name.to_string(), v);
        }
        match entry.constraint {
            Some((holds, _)) if !holds(&p) => continue,
            _ => return p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn unit_open_stays_inside() {
        struct Fixed(u64);
        impl RngCore for Fixed {
            fn next_u32(&mut self) -> u32 {
                self.0 as u32
            }
            fn next_u64(&mut self) -> u64 {
                self.0
            }
            fn fill_bytes(&mut self, _: &mut [u8]) {}
        }
        let hi = unit_open(&mut Fixed(u64::MAX));
        let lo = unit_open(&mut Fixed(0));
        assert!(hi < 1.0 && lo > 0.0);
        assert_eq!(int_in(&mut Fixed(u64::MAX), 1, 50), 50);
        assert_eq!(int_in(&mut Fixed(0), 1, 50), 1);
    }

    #[test]
    fn open_endpoints_are_respected() {
        assert!(below(1.0) < 1.0);
        assert!(above(0.0) > 0.0);
        assert_eq!(below(-0.5), -above(0.5));
    }

    #[test]
    fn streams_differ_by_id_and_index() {
        let a = rng_stream(42, "GAUTSCHI-Q", 0).next_u64();
        assert_eq!(a, rng_stream(42, "GAUTSCHI-Q", 0).next_u64());
        assert_ne!(a, rng_stream(42, "GAUTSCHI-Q", 1).next_u64());
        assert_ne!(a, rng_stream(42, "MEANS-GLA", 0).next_u64());
        assert_ne!(a, rng_stream(43, "GAUTSCHI-Q", 0).next_u64());
    }
}
