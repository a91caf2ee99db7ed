//! Random class members for verification campaigns.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{from_schwarz, JanowskiParams, StarlikeFunction};
use crate::error::Result;
use crate::scalar::{rat, Backend, Scalar};
use crate::schwarz::{modulus_sum_at_most_one, modulus_sum_upper, RationalComplex, SchwarzSpec};

const MAX_DENOM: i64 = 12;
const MAX_POLY_DEGREE: usize = 6;
const MAX_MONOMIAL: u32 = 4;

/// Unimodular points with rational coordinates.
const UNIT_POINTS: [(i64, i64, i64); 4] = [(1, 0, 1), (0, 1, 1), (3, 4, 5), (5, 12, 13)];

/// Draws a Schwarz function uniformly over the variant families and builds
/// the corresponding member. Complex parameters are drawn only for the float
/// backend, so the same seed gives a different (real) draw in the exact one.
pub fn sample<S: Scalar>(
    p: &JanowskiParams<S::Real>,
    seed: u64,
    order: usize,
) -> Result<StarlikeFunction<S>> {
    let spec = sample_spec(seed, S::BACKEND == Backend::Float);
    from_schwarz(&spec, p, order)
}

/// The Schwarz function [`sample`] would use for `seed`.
pub fn sample_spec(seed: u64, complex: bool) -> SchwarzSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = Drawer {
        rng: &mut rng,
        complex,
    };
    draw.spec(true)
}

struct Drawer<'a> {
    rng: &'a mut ChaCha8Rng,
    complex: bool,
}

impl Drawer<'_> {
    fn spec(&mut self, allow_product: bool) -> SchwarzSpec {
        let families = if allow_product { 5 } else { 4 };
        match self.rng.gen_range(0..families) {
            0 => SchwarzSpec::Constant {
                c: self.disk_point(true),
            },
            1 => SchwarzSpec::Monomial {
                m: self.rng.gen_range(0..=MAX_MONOMIAL),
            },
            2 => SchwarzSpec::Blaschke {
                a: self.disk_point(false),
            },
            3 => self.normalized_poly(),
            _ => {
                let count = self.rng.gen_range(2..=3);
                SchwarzSpec::Product {
                    factors: (0..count).map(|_| self.spec(false)).collect(),
                }
            }
        }
    }

    fn unit_rational(&mut self) -> BigRational {
        let d = self.rng.gen_range(1..=MAX_DENOM);
        let n = self.rng.gen_range(-d..=d);
        rat(n, d)
    }

    /// A point of the closed (or open) unit disk with small denominators.
    fn disk_point(&mut self, closed: bool) -> RationalComplex {
        if closed && self.rng.gen_bool(0.25) {
            if !self.complex {
                let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
                return RationalComplex::real(rat(sign, 1));
            }
            let (x, y, r) = UNIT_POINTS[self.rng.gen_range(0..UNIT_POINTS.len())];
            let (mut re, mut im) = (rat(x, r), rat(y, r));
            if self.rng.gen_bool(0.5) {
                std::mem::swap(&mut re, &mut im);
            }
            if self.rng.gen_bool(0.5) {
                re = -re;
            }
            if self.rng.gen_bool(0.5) {
                im = -im;
            }
            return RationalComplex::new(re, im);
        }
        loop {
            let re = self.unit_rational();
            let im = if self.complex {
                self.unit_rational()
            } else {
                BigRational::zero()
            };
            let c = RationalComplex::new(re, im);
            let r2 = c.norm_sqr();
            if r2 < BigRational::one() || (closed && r2 == BigRational::one()) {
                return c;
            }
        }
    }

    fn normalized_poly(&mut self) -> SchwarzSpec {
        let degree = self.rng.gen_range(0..=MAX_POLY_DEGREE);
        let coeffs: Vec<RationalComplex> = (0..=degree)
            .map(|_| {
                let re = self.unit_rational();
                let im = if self.complex {
                    self.unit_rational()
                } else {
                    BigRational::zero()
                };
                RationalComplex::new(re, im)
            })
            .collect();
        let total = modulus_sum_upper(&coeffs);
        if total.is_zero() {
            return SchwarzSpec::NormalizedPoly { coeffs };
        }
        // Half the draws sit on the boundary sum |c_k| = 1 (exact when every
        // modulus is rational), the rest strictly inside.
        let target = if self.rng.gen_bool(0.5) {
            BigRational::one()
        } else {
            let d = self.rng.gen_range(2..=MAX_DENOM);
            rat(self.rng.gen_range(1..d), d)
        };
        let mut factor = target / total;
        loop {
            let scaled: Vec<RationalComplex> = coeffs.iter().map(|c| c.scale(&factor)).collect();
            // irrational moduli are bounded from above, so nudge inside until certified
            if modulus_sum_at_most_one(&scaled) {
                return SchwarzSpec::NormalizedPoly { coeffs: scaled };
            }
            factor *= rat((1 << 30) - 1, 1 << 30);
        }
    }
}
