//! Minimal double-double arithmetic (~106-bit significand).
//!
//! The difference form of the Hausdorff matrix subtracts moments
//! `depth` times and then multiplies by a binomial coefficient, which
//! amplifies the moment rounding by up to `C(j-1,k-1)·2^depth`; plain
//! f64 moments cannot reach the 1e-9 agreement with the integral form
//! at depth ~19. The moment window is therefore built and differenced
//! in double-double. Only the handful of operations that path needs
//! live here.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two f64 (e.g. integer + offset that rounds in f64).
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        self.mul(Dd::from_f64(x))
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r2 = r.sub(o.mul_f64(q2));
        let q3 = r2.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    /// Integer power by squaring.
    pub fn powi(self, mut n: u64) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }

    /// exp(self) for |self| ≤ 64: scale by 2^-9, Taylor, square back.
    pub fn exp(self) -> Dd {
        debug_assert!(self.hi.abs() <= 64.0);
        let r = self.mul_f64(1.0 / 512.0);
        // Taylor to machine-dd accuracy for |r| ≤ 1/8
        let mut sum = Dd::ONE;
        let mut term = Dd::ONE;
        for n in 1..=18u64 {
            term = term.mul(r).div(Dd::from_f64(n as f64));
            sum = sum.add(term);
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        for _ in 0..9 {
            sum = sum.mul(sum);
        }
        sum
    }

    /// ln(k) for a positive integer k, by one Newton step on exp.
    pub fn ln_int(k: u64) -> Dd {
        debug_assert!(k >= 1);
        if k == 1 {
            return Dd::ZERO;
        }
        let x0 = (k as f64).ln();
        // x1 = x0 + (k e^{-x0} - 1)
        let r = Dd::from_f64(k as f64)
            .mul(Dd::from_f64(-x0).exp())
            .sub(Dd::ONE);
        Dd::from_f64(x0).add(r)
    }

    /// k^{-alpha} for a positive integer k.
    pub fn pow_int_neg(k: u64, alpha: f64) -> Dd {
        Dd::ln_int(k).mul_f64(-alpha).exp()
    }
}
