use std::fmt;

use serde::{Deserialize, Serialize};

use super::QuadError;

/// Positive definite binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, u, v)` with `u a + v b = g = gcd(a, b) >= 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Identity class: `x^2 + xy + (1-D)/4 y^2` or `x^2 - D/4 y^2`.
    pub fn principal(d: i64) -> Self {
        if d.rem_euclid(4) == 0 {
            QuadForm::new(1, 0, -d / 4)
        } else {
            QuadForm::new(1, 1, (1 - d) / 4)
        }
    }

    pub fn is_principal(&self) -> bool {
        *self == QuadForm::principal(self.discriminant())
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i128(gcd_i128(self.a as i128, self.b as i128), self.c as i128) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
    }

    pub fn evaluate(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// The reduced form equivalent to `self`; `self` must be positive definite.
    pub fn reduce(&self) -> Self {
        let (a, b, c) = reduce_wide(self.a as i128, self.b as i128, self.c as i128);
        QuadForm::new(a as i64, b as i64, c as i64)
    }

    /// Inverse class `(a, -b, c)`, reduced.
    pub fn inverse(&self) -> Self {
        QuadForm::new(self.a, -self.b, self.c).reduce()
    }

    /// Gauss composition of two primitive forms of the same discriminant, reduced.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm, QuadError> {
        let d = self.discriminant();
        if other.discriminant() != d {
            return Err(QuadError::DiscriminantMismatch {
                left: d,
                right: other.discriminant(),
            });
        }
        let (mut f1, mut f2) = (self, other);
        if f1.a > f2.a {
            std::mem::swap(&mut f1, &mut f2);
        }
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;

        let (d0, y1) = if a2 % a1 == 0 {
            (a1, 0)
        } else {
            let (g, u, _v) = ext_gcd(a2, a1);
            (g, u)
        };
        let (d1, x2, y2) = if s % d0 == 0 {
            (d0, 0, -1)
        } else {
            let (g, x, y) = ext_gcd(s, d0);
            (g, x, -y)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (b3 * b3 - d as i128) / (4 * a3);
        debug_assert_eq!(b3 * b3 - 4 * a3 * c3, d as i128);
        let (a, b, c) = reduce_wide(a3, b3, c3);
        Ok(QuadForm::new(a as i64, b as i64, c as i64))
    }

    pub fn pow(&self, mut e: u64) -> QuadForm {
        let mut acc = QuadForm::principal(self.discriminant());
        let mut base = self.reduce();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same discriminant");
            }
            base = base.compose(&base).expect("same discriminant");
            e >>= 1;
        }
        acc
    }

    /// Order of the class in the form class group.
    pub fn order(&self) -> u64 {
        let start = self.reduce();
        let mut acc = start;
        let mut k = 1;
        while !acc.is_principal() {
            acc = acc.compose(&start).expect("same discriminant");
            k += 1;
        }
        k
    }
}

fn reduce_wide(mut a: i128, mut b: i128, mut c: i128) -> (i128, i128, i128) {
    loop {
        if b <= -a || b > a {
            // shift b into (-a, a] by x -> x + r y
            let r = (a - b).div_euclid(2 * a);
            c += r * (a * r + b);
            b += 2 * a * r;
        }
        if a > c {
            (a, b, c) = (c, -b, a);
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return (a, b, c);
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}
