//! Seeded random generation of small exact samples for the property suites.
//!
//! Every draw comes from a ChaCha stream seeded explicitly, so identical
//! seeds give identical samples on every platform and every run.  Values are
//! deliberately small — numerators, denominators and exponents a desk check
//! can follow — and constructed points are validated before they are
//! returned.
//!
//! Invariants maintained here:
//! - determinism: outputs are a pure function of (seed, call sequence);
//! - values advertised as nonzero are nonzero, returned points satisfy the
//!   defining matrix equation, invertible matrices have nonzero determinant.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cmspace::{cm_make, CMPoint, GroupWord, Letter};
use crate::exact::scalar::{rat, Rational};
use crate::exact::Matrix;
use crate::picard::PicElement;
use crate::qtorus::TorusElement;

/// Deterministic source of small exact samples.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform integer in [lo, hi].
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A small rational: numerator in [−6, 6], denominator in [1, 4].
    pub fn rational(&mut self) -> Rational {
        rat(self.int(-6, 6), self.int(1, 4))
    }

    /// A small nonzero rational.
    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// One of the four generator letters, uniformly.
    pub fn letter(&mut self) -> Letter {
        match self.int(0, 3) {
            0 => Letter::G1,
            1 => Letter::G1Inv,
            2 => Letter::G2,
            _ => Letter::G2Inv,
        }
    }

    /// A group word with at most `max_len` letters and a nonzero scaling.
    pub fn group_word(&mut self, max_len: usize) -> GroupWord {
        let len = self.int(0, max_len as i64) as usize;
        GroupWord {
            letters: (0..len).map(|_| self.letter()).collect(),
            scaling: (self.nonzero_rational(), self.nonzero_rational()),
        }
    }

    /// The Picard class of a random group word.
    pub fn pic_element(&mut self, q: &Rational) -> PicElement {
        PicElement::from_group_word(q, &self.group_word(4))
    }

    /// A normal-ordered Laurent polynomial with up to `terms` monomials and
    /// exponents in [lo, hi].
    pub fn torus_element(
        &mut self,
        q: &Rational,
        (lo, hi): (i64, i64),
        terms: usize,
    ) -> TorusElement {
        let mut out = TorusElement::zero(q.clone());
        for _ in 0..terms {
            let t = TorusElement::monomial(
                q.clone(),
                self.rational(),
                self.int(lo, hi),
                self.int(lo, hi),
            );
            out = out.add(&t).expect("same q");
        }
        out
    }

    /// Like `torus_element` but never zero.
    pub fn nonzero_torus_element(
        &mut self,
        q: &Rational,
        range: (i64, i64),
        terms: usize,
    ) -> TorusElement {
        loop {
            let t = self.torus_element(q, range, terms);
            if !t.is_zero() {
                return t;
            }
        }
    }

    /// A valid point of the matrix variety: diagonal X spectrum avoiding
    /// q-coupling, nonzero defect vectors.  Rejected draws are retried, so
    /// the cost depends on q but the result is still seed-deterministic.
    pub fn point(&mut self, q: &Rational, n: usize) -> CMPoint {
        if n == 0 {
            return CMPoint::base_point(q.clone());
        }
        loop {
            let x_diag: Vec<Rational> = (0..n).map(|_| self.nonzero_rational()).collect();
            let i: Vec<Rational> = (0..n).map(|_| self.nonzero_rational()).collect();
            let j: Vec<Rational> = (0..n).map(|_| self.nonzero_rational()).collect();
            if let Ok(p) = cm_make(n, q, &x_diag, &i, &j) {
                return p;
            }
        }
    }

    /// An invertible matrix with small entries.
    pub fn invertible_matrix(&mut self, n: usize) -> Matrix<Rational> {
        if n == 0 {
            return Matrix::identity(0);
        }
        loop {
            let entries: Vec<Rational> = (0..n * n).map(|_| self.rational()).collect();
            let m = Matrix::new(n, n, entries);
            if !m.det().expect("square").is_zero() {
                return m;
            }
        }
    }
}
