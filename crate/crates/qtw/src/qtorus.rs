//! The algebra A_q = Q<x^{±1}, y^{±1}> / (xy − q·yx): normal-ordered Laurent
//! polynomials in the q-commuting generators, unit detection, and the
//! automorphism group (Q*)² ⋊ SL2(Z).
//!
//! Normal order fixes all x-powers to the left of all y-powers.  The single
//! rewriting fact everything rests on is
//!
//!     (x^a y^b)(x^c y^d) = q^(−bc) · x^(a+c) y^(b+d),
//!
//! derived once from xy = q·yx and cross-checked in the tests against a
//! letter-by-letter rewriting oracle.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::scalar::{is_valid_q, parse_rational, rat_pow, rational_to_string, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum TorusError {
    /// Two elements from different q-contexts met in one operation.
    ContextMismatch,
    /// Automorphism data with det ≠ 1 or a zero scalar.
    BadAutomorphism(String),
    /// The q parameter is 0, 1 or −1.
    BadParameter,
}

impl fmt::Display for TorusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusError::ContextMismatch => write!(f, "operands live over different q"),
            TorusError::BadAutomorphism(m) => write!(f, "bad automorphism data: {m}"),
            TorusError::BadParameter => write!(f, "q must avoid 0, 1 and -1"),
        }
    }
}

impl std::error::Error for TorusError {}

/// Normal-ordered Laurent polynomial Σ c_{ab}·x^a y^b.
///
/// Invariants: no zero coefficients are stored, and the term map is ordered,
/// so equal elements have identical representations.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusElement {
    q: Rational,
    terms: BTreeMap<(i64, i64), Rational>,
}

impl TorusElement {
    // ---- Constructors ----

    pub fn zero(q: Rational) -> Self {
        TorusElement {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(q: Rational) -> Self {
        Self::monomial(q, Rational::one(), 0, 0)
    }

    pub fn monomial(q: Rational, coeff: Rational, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((a, b), coeff);
        }
        TorusElement { q, terms }
    }

    pub fn var_x(q: Rational) -> Self {
        Self::monomial(q, Rational::one(), 1, 0)
    }

    pub fn var_y(q: Rational) -> Self {
        Self::monomial(q, Rational::one(), 0, 1)
    }

    pub fn from_terms(
        q: Rational,
        terms: impl IntoIterator<Item = ((i64, i64), Rational)>,
    ) -> Self {
        let mut out = Self::zero(q);
        for ((a, b), c) in terms {
            out.add_term(a, b, c);
        }
        out
    }

    fn add_term(&mut self, a: i64, b: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    // ---- Inspection ----

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: i64, b: i64) -> Rational {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn ctx_check(&self, rhs: &Self) -> Result<(), TorusError> {
        if self.q == rhs.q {
            Ok(())
        } else {
            Err(TorusError::ContextMismatch)
        }
    }

    // ---- Linear structure ----

    pub fn add(&self, rhs: &Self) -> Result<Self, TorusError> {
        self.ctx_check(rhs)?;
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, TorusError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        TorusElement {
            q: self.q.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.q.clone());
        }
        TorusElement {
            q: self.q.clone(),
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    // ---- Multiplicative structure ----

    /// Normal-ordered product, bilinear over terms.
    pub fn mul(&self, rhs: &Self) -> Result<Self, TorusError> {
        self.ctx_check(rhs)?;
        let mut out = Self::zero(self.q.clone());
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                // (x^a1 y^b1)(x^a2 y^b2) = q^(−b1·a2) x^(a1+a2) y^(b1+b2)
                let scalar = rat_pow(&self.q, -(b1 * a2));
                out.add_term(a1 + a2, b1 + b2, c1 * c2 * scalar);
            }
        }
        Ok(out)
    }

    /// (c·x^a y^b)^e for any integer e, by the closed form
    /// (x^a y^b)^e = q^(−ab·e(e−1)/2) x^(ae) y^(be).
    pub fn monomial_pow(q: &Rational, coeff: &Rational, a: i64, b: i64, e: i64) -> Self {
        assert!(
            e >= 0 || !coeff.is_zero(),
            "negative power of the zero monomial"
        );
        if coeff.is_zero() {
            return if e == 0 {
                Self::one(q.clone())
            } else {
                Self::zero(q.clone())
            };
        }
        let twist = rat_pow(q, -a * b * (e * (e - 1) / 2));
        let c = if e >= 0 {
            num::pow::pow(coeff.clone(), e as usize)
        } else {
            num::pow::pow(coeff.clone(), (-e) as usize).recip()
        };
        Self::monomial(q.clone(), c * twist, a * e, b * e)
    }

    /// Integer power of a single-term element (exact for negative exponents);
    /// falls back to repeated multiplication for general elements with e ≥ 0.
    pub fn pow(&self, e: i64) -> Result<Self, TorusError> {
        if let Some((c, a, b)) = self.as_unit() {
            return Ok(Self::monomial_pow(&self.q, &c, a, b, e));
        }
        assert!(e >= 0, "negative powers require a monomial unit");
        let mut acc = Self::one(self.q.clone());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Unit detection: Some((α, a, b)) iff the element is α·x^a y^b, α ≠ 0.
    pub fn as_unit(&self) -> Option<(Rational, i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next().unwrap();
        Some((c.clone(), a, b))
    }

    /// The commutator value x·y·x⁻¹·y⁻¹ computed in the algebra; equals q·1.
    pub fn commutator_xy(q: &Rational) -> Self {
        let x = Self::var_x(q.clone());
        let y = Self::var_y(q.clone());
        let xinv = Self::monomial_pow(q, &Rational::one(), 1, 0, -1);
        let yinv = Self::monomial_pow(q, &Rational::one(), 0, 1, -1);
        x.mul(&y)
            .and_then(|u| u.mul(&xinv))
            .and_then(|u| u.mul(&yinv))
            .expect("same context")
    }

    /// Image under the swap isomorphism A_q → A_{q⁻¹}, x ↦ y, y ↦ x.
    /// An involution: applying it twice is the identity.
    pub fn transport_to_inverse_q(&self) -> Self {
        let q_inv = self.q.clone().recip();
        let mut out = Self::zero(q_inv);
        for (&(a, b), c) in &self.terms {
            // x^a y^b ↦ y^a x^b, and normal ordering in the target picks up
            // (q⁻¹)^(−ab) = q^(ab)
            let scalar = rat_pow(&self.q, a * b);
            out.add_term(b, a, c * scalar);
        }
        out
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if a != 0 {
                write!(f, "*x^{a}")?;
            }
            if b != 0 {
                write!(f, "*y^{b}")?;
            }
        }
        Ok(())
    }
}

// ---- Automorphisms ----

/// Automorphism of A_q determined by
///     x ↦ α·y^b x^a,   y ↦ β·y^d x^c,
/// with m = [[a, b], [c, d]] of determinant +1 (determinant −1 would flip
/// the commutator to q⁻¹ and is rejected by construction).
#[derive(Debug, Clone, PartialEq)]
pub struct TorusAutomorphism {
    alpha: Rational,
    beta: Rational,
    m: [[i64; 2]; 2],
}

pub fn mat2_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

pub fn mat2_det(m: [[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Inverse of a determinant-one integer matrix.
pub fn mat2_inv(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    assert_eq!(mat2_det(m), 1, "only unimodular matrices are inverted here");
    [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
}

pub const MAT_ID: [[i64; 2]; 2] = [[1, 0], [0, 1]];

impl TorusAutomorphism {
    pub fn new(alpha: Rational, beta: Rational, m: [[i64; 2]; 2]) -> Result<Self, TorusError> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(TorusError::BadAutomorphism(
                "scalars must be nonzero".to_string(),
            ));
        }
        if mat2_det(m) != 1 {
            return Err(TorusError::BadAutomorphism(format!(
                "matrix {m:?} has determinant {} (need +1)",
                mat2_det(m)
            )));
        }
        Ok(TorusAutomorphism { alpha, beta, m })
    }

    pub fn identity() -> Self {
        TorusAutomorphism {
            alpha: Rational::one(),
            beta: Rational::one(),
            m: MAT_ID,
        }
    }

    /// Pure scaling x ↦ αx, y ↦ βy.
    pub fn scaling(alpha: Rational, beta: Rational) -> Result<Self, TorusError> {
        Self::new(alpha, beta, MAT_ID)
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == MAT_ID && self.alpha.is_one() && self.beta.is_one()
    }

    /// Image of x as an element of A_q (normal-ordered α·y^b x^a).
    pub fn image_x(&self, q: &Rational) -> TorusElement {
        let [a, b] = self.m[0];
        // y^b x^a = q^(−ab) x^a y^b
        TorusElement::monomial(q.clone(), &self.alpha * rat_pow(q, -a * b), a, b)
    }

    /// Image of y as an element of A_q.
    pub fn image_y(&self, q: &Rational) -> TorusElement {
        let [c, d] = self.m[1];
        TorusElement::monomial(q.clone(), &self.beta * rat_pow(q, -c * d), c, d)
    }

    /// Builds the automorphism from the normal-ordered images of the
    /// generators: σ(x) = γ_x·x^a y^b, σ(y) = γ_y·x^c y^d.
    pub fn from_normal_images(
        q: &Rational,
        gx: (Rational, i64, i64),
        gy: (Rational, i64, i64),
    ) -> Result<Self, TorusError> {
        let (cx, a, b) = gx;
        let (cy, c, d) = gy;
        // stored scalar is the coefficient in the y-left form α·y^b x^a
        Self::new(cx * rat_pow(q, a * b), cy * rat_pow(q, c * d), [[a, b], [c, d]])
    }
}

/// Ring-homomorphic image of u under σ.  Monomial images are computed by the
/// exact closed form for unit powers, then multiplied.
pub fn apply_automorphism(sigma: &TorusAutomorphism, u: &TorusElement) -> TorusElement {
    let q = u.q().clone();
    let sx = sigma.image_x(&q);
    let sy = sigma.image_y(&q);
    let (cx, xa, xb) = sx.as_unit().expect("generator image is a unit");
    let (cy, ya, yb) = sy.as_unit().expect("generator image is a unit");
    let mut out = TorusElement::zero(q.clone());
    for (&(a, b), coeff) in &u.terms {
        let px = TorusElement::monomial_pow(&q, &cx, xa, xb, a);
        let py = TorusElement::monomial_pow(&q, &cy, ya, yb, b);
        let img = px.mul(&py).expect("same context");
        out = out.add(&img.scale(coeff)).expect("same context");
    }
    out
}

/// Composition: the result r satisfies apply(r, u) = apply(s1, apply(s2, u)).
/// Scalars are computed, not formula-hardcoded: s1 is applied to the
/// generator images of s2 and the unit data is extracted.
pub fn compose_automorphisms(
    q: &Rational,
    s1: &TorusAutomorphism,
    s2: &TorusAutomorphism,
) -> TorusAutomorphism {
    let img_x = apply_automorphism(s1, &s2.image_x(q));
    let img_y = apply_automorphism(s1, &s2.image_y(q));
    let gx = img_x.as_unit().expect("image of x stays a unit");
    let gy = img_y.as_unit().expect("image of y stays a unit");
    let (cx, a, b) = gx;
    let (cy, c, d) = gy;
    let r = TorusAutomorphism::from_normal_images(q, (cx, a, b), (cy, c, d))
        .expect("composite of unimodular automorphisms is unimodular");
    debug_assert_eq!(r.m, mat2_mul(s2.m, s1.m), "anti-multiplicativity of the matrix part");
    r
}

/// Inverse automorphism: τ with compose(σ, τ) = compose(τ, σ) = identity.
pub fn invert_automorphism(q: &Rational, sigma: &TorusAutomorphism) -> TorusAutomorphism {
    let minv = mat2_inv(sigma.m);
    // τ(x) must be the monomial with exponent row (1,0)·m⁻¹; its scalar is
    // fixed by requiring σ(τ(x)) = x, and likewise for y.
    let make = |row: [i64; 2], target_is_x: bool| -> (Rational, i64, i64) {
        let [s, t] = row;
        let probe = TorusElement::monomial(q.clone(), Rational::one(), s, t);
        let image = apply_automorphism(sigma, &probe);
        let (c, ia, ib) = image.as_unit().expect("unit image");
        let expect = if target_is_x { (1, 0) } else { (0, 1) };
        assert_eq!((ia, ib), expect, "matrix inverse must undo the exponent action");
        (c.recip(), s, t)
    };
    let gx = make(minv[0], true);
    let gy = make(minv[1], false);
    TorusAutomorphism::from_normal_images(q, gx, gy).expect("inverse data is unimodular")
}

/// The inner automorphism Ad(u) of conjugation by the unit u = α·x^a y^b:
/// (x, y) ↦ (q^(−b)·x, q^(a)·y), independent of α.
pub fn ad_unit(q: &Rational, alpha: &Rational, a: i64, b: i64) -> Result<TorusAutomorphism, TorusError> {
    if alpha.is_zero() {
        return Err(TorusError::BadAutomorphism(
            "conjugation needs a nonzero scalar".to_string(),
        ));
    }
    if !is_valid_q(q) {
        return Err(TorusError::BadParameter);
    }
    TorusAutomorphism::new(rat_pow(q, -b), rat_pow(q, a), MAT_ID)
}

// ---- Contract-level free functions ----

pub fn torus_mul(u: &TorusElement, v: &TorusElement) -> Result<TorusElement, TorusError> {
    u.mul(v)
}

pub fn is_unit(u: &TorusElement) -> Option<(Rational, i64, i64)> {
    u.as_unit()
}

pub fn transport_to_inverse_q(u: &TorusElement) -> TorusElement {
    u.transport_to_inverse_q()
}

// ---- JSON wire formats ----

#[derive(Serialize, Deserialize)]
struct TermWire {
    a: i64,
    b: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct TorusElementWire {
    q: String,
    terms: Vec<TermWire>,
}

impl Serialize for TorusElement {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        TorusElementWire {
            q: rational_to_string(&self.q),
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| TermWire {
                    a,
                    b,
                    c: rational_to_string(c),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = TorusElementWire::deserialize(de)?;
        let q = parse_rational(&wire.q).map_err(D::Error::custom)?;
        let mut out = TorusElement::zero(q);
        for t in wire.terms {
            let c = parse_rational(&t.c).map_err(D::Error::custom)?;
            out.add_term(t.a, t.b, c);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct AutomorphismWire {
    alpha: String,
    beta: String,
    m: [[i64; 2]; 2],
}

impl Serialize for TorusAutomorphism {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        AutomorphismWire {
            alpha: rational_to_string(&self.alpha),
            beta: rational_to_string(&self.beta),
            m: self.m,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TorusAutomorphism {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = AutomorphismWire::deserialize(de)?;
        let alpha = parse_rational(&wire.alpha).map_err(D::Error::custom)?;
        let beta = parse_rational(&wire.beta).map_err(D::Error::custom)?;
        TorusAutomorphism::new(alpha, beta, wire.m).map_err(D::Error::custom)
    }
}
