//! Identification from exponentiation in `Z_p^*`.
//!
//! The acting set is the unit group `Z_{p-1}^*`, acting on `Z_p^*` by
//! `s(x) = x^s mod p`. Statement `(p, x, u)` with `u = x^s`; witness `s`.
//! A round commits to `v = u^t` and reveals `t` or `t*s mod (p-1)`.
//! Forging is equivalent to computing the discrete log of `u` to base `x`.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;

use super::SchemeError;
use crate::codec::{ByteReader, ByteWriter, CodecError};
use crate::sigma::{ensure_round, Challenge, KeyPair, Rejection, Scheme, SchemeId, SigmaError};

/// `base^exponent mod modulus` by left-to-right square-and-multiply.
pub fn mod_pow(base: &BigUint, exponent: &BigUint, modulus: &BigUint) -> Result<BigUint, SchemeError> {
    if *modulus < BigUint::from(2u8) {
        return Err(SchemeError::BadModulus);
    }
    let base = base % modulus;
    let mut acc = BigUint::one();
    for i in (0..exponent.bits()).rev() {
        acc = &acc * &acc % modulus;
        if exponent.bit(i) {
            acc = acc * &base % modulus;
        }
    }
    Ok(acc)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_zero() {
        return None;
    }
    let a = BigInt::from(a % m);
    let m = BigInt::from(m.clone());
    let eg = a.extended_gcd(&m);
    if !eg.gcd.is_one() {
        return None;
    }
    eg.x.mod_floor(&m).to_biguint()
}

const SMALL_PRIMES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Trial division below 2^32; Miller-Rabin over the first twenty prime bases
/// above (deterministic to well past 2^64, probabilistic beyond).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64().filter(|&v| v < 1 << 32) {
        if small < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= small {
            if small % d == 0 {
                return false;
            }
            d += 1;
        }
        return true;
    }
    for p in SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let rounds = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> rounds;
    'bases: for a in SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..rounds {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Uniform element of `Z_order^*`, i.e. in `[1, order)` and coprime to `order`.
fn random_unit(order: &BigUint, rng: &mut dyn RngCore) -> BigUint {
    let one = BigUint::one();
    if *order <= one {
        return one;
    }
    loop {
        let c = rng.gen_biguint_range(&one, order);
        if c.gcd(order).is_one() {
            return c;
        }
    }
}

fn is_unit(e: &BigUint, order: &BigUint) -> bool {
    !e.is_zero() && e < order && e.gcd(order).is_one()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ModExp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModExpStatement {
    pub p: BigUint,
    pub x: BigUint,
    pub u: BigUint,
}

impl ModExpStatement {
    pub fn order(&self) -> BigUint {
        &self.p - 1u8
    }
}

pub type ModExpKeyPair = KeyPair<ModExp>;

impl ModExp {
    pub fn keygen(&self, p: &BigUint, rng: &mut dyn RngCore) -> Result<ModExpKeyPair, SchemeError> {
        check_odd_prime(p)?;
        let x = rng.gen_biguint_range(&BigUint::from(2u8), p);
        let s = random_unit(&(p - 1u8), rng);
        self.from_parts(p.clone(), x, s)
    }

    /// Keypair for a chosen base and secret exponent.
    pub fn from_parts(&self, p: BigUint, x: BigUint, s: BigUint) -> Result<ModExpKeyPair, SchemeError> {
        check_odd_prime(&p)?;
        if x < BigUint::from(2u8) || x >= p {
            return Err(SchemeError::BadParameters("base must lie in [2, p-1]".into()));
        }
        if !is_unit(&s, &(&p - 1u8)) {
            return Err(SchemeError::BadParameters(
                "secret exponent must be invertible mod p-1".into(),
            ));
        }
        let u = mod_pow(&x, &s, &p)?;
        Ok(KeyPair {
            statement: ModExpStatement { p, x, u },
            witness: s,
        })
    }
}

fn check_odd_prime(p: &BigUint) -> Result<(), SchemeError> {
    if *p < BigUint::from(3u8) || !is_prime(p) {
        return Err(SchemeError::NotPrime(p.to_string()));
    }
    Ok(())
}

impl Scheme for ModExp {
    const ID: SchemeId = SchemeId::ModExp;

    type Statement = ModExpStatement;
    type Witness = BigUint;
    type Commitment = BigUint;
    type Ephemeral = BigUint;
    type Response = BigUint;

    fn witness_holds(&self, st: &ModExpStatement, s: &BigUint) -> bool {
        is_unit(s, &st.order()) && mod_pow(&st.x, s, &st.p).is_ok_and(|v| v == st.u)
    }

    fn commit(&self, st: &ModExpStatement, _s: &BigUint, rng: &mut dyn RngCore) -> (BigUint, BigUint) {
        let t = random_unit(&st.order(), rng);
        let v = mod_pow(&st.u, &t, &st.p).expect("p >= 3");
        (v, t)
    }

    fn respond(&self, st: &ModExpStatement, s: &BigUint, t: &BigUint, challenge: Challenge) -> BigUint {
        match challenge {
            Challenge::Zero => t.clone(),
            Challenge::One => t * s % st.order(),
        }
    }

    fn check_round(
        &self,
        st: &ModExpStatement,
        v: &BigUint,
        challenge: Challenge,
        response: &BigUint,
    ) -> Result<(), Rejection> {
        ensure_round!(!v.is_zero() && *v < st.p, "commitment {v} outside Z_p^*");
        ensure_round!(
            is_unit(response, &st.order()),
            "response exponent {response} is not a unit mod p-1"
        );
        let base = match challenge {
            Challenge::Zero => &st.u,
            Challenge::One => &st.x,
        };
        let got = mod_pow(base, response, &st.p).map_err(|e| Rejection::new(e.to_string()))?;
        ensure_round!(got == *v, "exponentiation does not reproduce the commitment");
        Ok(())
    }

    fn extract(
        &self,
        st: &ModExpStatement,
        _v: &BigUint,
        t: &BigUint,
        ts: &BigUint,
    ) -> Result<BigUint, SigmaError> {
        let order = st.order();
        let t_inv = mod_inverse(t, &order).ok_or(SigmaError::NonInvertibleResponse)?;
        Ok(ts * t_inv % order)
    }

    fn simulate(&self, st: &ModExpStatement, challenge: Challenge, rng: &mut dyn RngCore) -> (BigUint, BigUint) {
        let e = random_unit(&st.order(), rng);
        let base = match challenge {
            Challenge::Zero => &st.u,
            Challenge::One => &st.x,
        };
        (mod_pow(base, &e, &st.p).expect("p >= 3"), e)
    }

    fn encode_statement(&self, st: &ModExpStatement) -> Vec<u8> {
        let mut w = ByteWriter::new();
        w.put_bytes(&st.p.to_bytes_be())
            .put_bytes(&st.x.to_bytes_be())
            .put_bytes(&st.u.to_bytes_be());
        w.finish()
    }

    fn decode_statement(&self, bytes: &[u8]) -> Result<ModExpStatement, CodecError> {
        let mut r = ByteReader::new(bytes);
        let p = BigUint::from_bytes_be(r.get_bytes()?);
        let x = BigUint::from_bytes_be(r.get_bytes()?);
        let u = BigUint::from_bytes_be(r.get_bytes()?);
        r.finish()?;
        check_odd_prime(&p).map_err(|e| CodecError::invalid(e.to_string()))?;
        if x < BigUint::from(2u8) || x >= p || u.is_zero() || u >= p {
            return Err(CodecError::invalid("statement elements outside Z_p^*"));
        }
        Ok(ModExpStatement { p, x, u })
    }

    fn encode_commitment(&self, v: &BigUint) -> Vec<u8> {
        v.to_bytes_be()
    }

    fn decode_commitment(&self, _st: &ModExpStatement, bytes: &[u8]) -> Result<BigUint, CodecError> {
        Ok(BigUint::from_bytes_be(bytes))
    }

    fn encode_response(&self, r: &BigUint) -> Vec<u8> {
        r.to_bytes_be()
    }

    fn decode_response(&self, _st: &ModExpStatement, bytes: &[u8]) -> Result<BigUint, CodecError> {
        Ok(BigUint::from_bytes_be(bytes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::extract_witness;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Repeated multiplication, independent of square-and-multiply.
    fn slow_pow(b: u64, e: u64, m: u64) -> u64 {
        (0..e).fold(1 % m, |acc, _| acc * b % m)
    }

    fn statement_23() -> ModExpStatement {
        ModExpStatement { p: big(23), x: big(5), u: big(10) }
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(slow_pow(5, 3, 23), 10);
        assert_eq!(slow_pow(10, 7, 23), 14);
        assert_eq!(mod_pow(&big(9), &big(0), &big(23)).unwrap(), big(1));
        assert_eq!(mod_pow(&big(5), &big(3), &big(23)).unwrap(), big(10));
        assert_eq!(mod_pow(&big(10), &big(7), &big(23)).unwrap(), big(14));
        assert_eq!(mod_pow(&big(5), &big(3), &big(1)), Err(SchemeError::BadModulus));
    }

    #[test]
    fn mod_pow_matches_repeated_multiplication() {
        for m in [2u64, 3, 23, 97, 1009] {
            for b in 0..30 {
                for e in 0..40 {
                    assert_eq!(
                        mod_pow(&big(b), &big(e), &big(m)).unwrap(),
                        big(slow_pow(b, e, m)),
                        "{b}^{e} mod {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_and_primality() {
        assert_eq!(mod_inverse(&big(7), &big(22)), Some(big(19)));
        assert_eq!(mod_inverse(&big(2), &big(22)), None);
        let primes: Vec<u64> = (0..200).filter(|&n| is_prime(&big(n))).collect();
        let sieve: Vec<u64> = (2..200u64).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
        assert_eq!(primes, sieve);
        // above the trial-division range
        assert!(is_prime(&big(4_294_967_311)));
        assert!(!is_prime(&big(4_294_967_297))); // 641 * 6700417
        assert!(is_prime(&BigUint::parse_bytes(b"170141183460469231731687303715884105727", 10).unwrap()));
        assert!(!is_prime(&(big(4_294_967_311) * big(4_294_967_357))));
    }

    #[test]
    fn keygen_forced_and_random() {
        let kp = ModExp.from_parts(big(23), big(5), big(3)).unwrap();
        assert_eq!(kp.statement.u, big(10));
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for _ in 0..50 {
            let kp = ModExp.keygen(&big(1009), &mut rng).unwrap();
            assert!(kp.witness.gcd(&big(1008)).is_one());
            assert!(kp.is_valid(&ModExp));
        }
        let tiny = ModExp.keygen(&big(3), &mut rng).unwrap();
        assert_eq!(tiny.witness, big(1));
        assert_eq!(tiny.statement.u, tiny.statement.x);
        assert!(matches!(ModExp.keygen(&big(21), &mut rng), Err(SchemeError::NotPrime(_))));
        assert!(matches!(ModExp.keygen(&big(2), &mut rng), Err(SchemeError::NotPrime(_))));
        assert!(ModExp.from_parts(big(23), big(5), big(2)).is_err());
    }

    #[test]
    fn commit_and_respond_examples() {
        let st = statement_23();
        assert_eq!(mod_pow(&st.u, &big(7), &st.p).unwrap(), big(14));
        assert_eq!(mod_pow(&st.u, &big(1), &st.p).unwrap(), st.u);
        assert_eq!(ModExp.respond(&st, &big(3), &big(7), Challenge::One), big(21));
        assert_eq!(ModExp.respond(&st, &big(3), &big(7), Challenge::Zero), big(7));
        assert_eq!(ModExp.respond(&st, &big(1), &big(7), Challenge::One), big(7));
        let mut a = ChaCha20Rng::seed_from_u64(1);
        let mut b = ChaCha20Rng::seed_from_u64(1);
        assert_eq!(ModExp.commit(&st, &big(3), &mut a), ModExp.commit(&st, &big(3), &mut b));
    }

    #[test]
    fn verify_examples() {
        let st = statement_23();
        assert_eq!(slow_pow(5, 21, 23), 14);
        assert_ne!(slow_pow(5, 20, 23), 14);
        assert!(ModExp.verify_round(&st, &big(14), Challenge::Zero, &big(7)));
        assert!(ModExp.verify_round(&st, &big(14), Challenge::One, &big(21)));
        assert!(!ModExp.verify_round(&st, &big(14), Challenge::One, &big(20)));
        // exponent zero and out-of-range values are not in the acting group
        assert!(!ModExp.verify_round(&st, &big(1), Challenge::Zero, &big(0)));
        assert!(!ModExp.verify_round(&st, &big(14), Challenge::One, &big(21 + 22)));
        assert!(!ModExp.verify_round(&st, &big(0), Challenge::One, &big(21)));
        assert!(!ModExp.verify_round(&st, &big(23), Challenge::One, &big(21)));
    }

    #[test]
    fn extraction_example() {
        let st = statement_23();
        assert_eq!(7 * 19 % 22, 1);
        assert_eq!(21 * 19 % 22, 3);
        let s = extract_witness(&ModExp, &st, &big(14), &big(7), &big(21)).unwrap();
        assert_eq!(s, big(3));
    }

    #[test]
    fn simulated_commitment_example() {
        let st = statement_23();
        assert_eq!(slow_pow(5, 21, 23), 14);
        assert!(ModExp.verify_round(&st, &big(14), Challenge::One, &big(21)));
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        for _ in 0..50 {
            for c in [Challenge::Zero, Challenge::One] {
                let (v, r) = ModExp.simulate(&st, c, &mut rng);
                assert!(ModExp.verify_round(&st, &v, c, &r));
            }
        }
    }

    #[test]
    fn statement_codec_validates() {
        let st = statement_23();
        let bytes = ModExp.encode_statement(&st);
        assert_eq!(ModExp.decode_statement(&bytes).unwrap(), st);
        let bad = ModExp.encode_statement(&ModExpStatement { p: big(21), x: big(5), u: big(10) });
        assert!(ModExp.decode_statement(&bad).is_err());
    }
}
