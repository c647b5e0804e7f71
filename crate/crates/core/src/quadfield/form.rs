//! Positive definite binary quadratic forms `ax² + bxy + cy²` and their
//! reduction, with the change of variables tracked so that a reduced form
//! taking the value 1 yields an explicit representation.

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Form {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// `2×2` integer matrix `[[m00, m01], [m10, m11]]` of determinant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transform {
    pub m: [[i128; 2]; 2],
}

impl Transform {
    const IDENTITY: Transform = Transform { m: [[1, 0], [0, 1]] };

    fn then(self, other: [[i128; 2]; 2]) -> Transform {
        let a = self.m;
        let b = other;
        Transform {
            m: [
                [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
                [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
            ],
        }
    }

    /// Image of `(1, 0)`.
    pub fn first_column(&self) -> (i128, i128) {
        (self.m[0][0], self.m[1][0])
    }
}

impl Form {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        Form { a, b, c }
    }

    pub fn discriminant(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` whenever `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && ((self.b.abs() != self.a && self.a != self.c) || self.b >= 0)
    }

    /// Reduced representative and the transform `M` with
    /// `reduced(v) = self(M·v)`.
    pub fn reduce_with_transform(&self) -> (Form, Transform) {
        let mut f = *self;
        let mut t = Transform::IDENTITY;
        loop {
            // translate b into (-a, a]
            let two_a = 2 * f.a;
            let s = (f.a - f.b).div_euclid(two_a);
            if s != 0 {
                let b = f.b + two_a * s;
                f.c += f.a * s * s + f.b * s;
                f.b = b;
                t = t.then([[1, s], [0, 1]]);
            }
            if f.a > f.c || (f.a == f.c && f.b < 0) {
                f = Form::new(f.c, -f.b, f.a);
                t = t.then([[0, -1], [1, 0]]);
                continue;
            }
            return (f, t);
        }
    }

    pub fn reduce(&self) -> Form {
        self.reduce_with_transform().0
    }
}

/// All reduced forms of a negative discriminant.
pub fn reduced_forms(disc: i64) -> Vec<Form> {
    let disc = disc as i128;
    assert!(disc < 0, "positive definite forms need a negative discriminant");
    let mut out = Vec::new();
    let mut a = 1i128;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = Form::new(a, b, num / (4 * a));
            if f.is_reduced() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}
