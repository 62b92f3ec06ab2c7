//! Arbitrary-precision rational scalars and the q-parameter utilities:
//! parsing/printing in the `"p/r"` wire form, integer powers, and p-adic
//! valuations (used to detect q-powers exactly instead of searching).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Exact scalar: arbitrary-precision rational, always reduced, denominator
/// positive, zero is 0/1.  (`num`'s `Ratio` maintains all of that.)
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for n/d.  Panics on d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse the wire form: `"p"` or `"p/r"`, optionally signed.  Rejects empty
/// strings, zero denominators, and malformed input such as `"1//2"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".to_string());
    }
    t.parse::<Rational>()
        .map_err(|e| format!("bad rational literal {t:?}: {e}"))
}

/// Wire form of a rational: `"p"` when the denominator is 1, else `"p/r"`.
pub fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

/// r^e for any integer exponent; panics only if r = 0 and e < 0.
pub fn rat_pow(r: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let p = num::pow::pow(r.clone(), e.unsigned_abs() as usize);
    if e > 0 {
        p
    } else {
        assert!(!p.is_zero(), "zero has no negative powers");
        p.recip()
    }
}

/// A parameter q is admissible when q ∉ {0, 1, −1}; this is exactly what
/// guarantees q^n ≠ 1 for every n ≥ 1 over the rationals.
pub fn is_valid_q(q: &Rational) -> bool {
    !q.is_zero() && !q.is_one() && *q != -Rational::one()
}

/// p-adic valuation of a nonzero integer (number of times p divides it).
fn int_valuation(p: &BigInt, n: &BigInt) -> i64 {
    assert!(!n.is_zero(), "valuation of zero is undefined");
    let mut v = 0i64;
    let mut m = n.abs();
    loop {
        let (d, r) = num::Integer::div_rem(&m, p);
        if !r.is_zero() {
            return v;
        }
        m = d;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(p: &BigInt, r: &Rational) -> i64 {
    assert!(!r.is_zero(), "valuation of zero is undefined");
    int_valuation(p, r.numer()) - int_valuation(p, r.denom())
}

/// The smallest prime p with v_p(q) ≠ 0.  Exists for every admissible q:
/// a reduced fraction other than ±1 has a prime in its numerator or
/// denominator, and reducedness means the valuation there is nonzero.
pub fn pivot_prime(q: &Rational) -> BigInt {
    assert!(is_valid_q(q), "q must lie outside {{0, 1, -1}}");
    // |numer·denom| ≥ 2 for admissible q, so a smallest prime factor exists.
    // Trial division: the first divisor found this way is automatically prime.
    let n = (q.numer() * q.denom()).abs();
    let mut p = BigInt::from(2);
    loop {
        if num::Integer::is_multiple_of(&n, &p) {
            return p;
        }
        p = if p == BigInt::from(2) { BigInt::from(3) } else { p + 2 };
    }
}
