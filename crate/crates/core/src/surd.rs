//! Exact arithmetic in `Q(√d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Splits `d` into `f² · r` with `r` squarefree.
fn square_part(d: i128) -> (i128, i128) {
    let mut f = 1;
    let mut r = d;
    let mut p = 2;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            f *= p;
        }
        p += 1;
    }
    (f, r)
}

/// `(a + b·√d) / c` with `c > 0`, `d` squarefree and `d = 1` folded into `a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl Surd {
    /// `(a + b·√d) / c`; `d` must be non-negative and `c` non-zero.
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Surd {
        assert!(c != 0, "zero denominator");
        assert!(d >= 0, "negative radicand");
        let (f, r) = if d == 0 { (0, 1) } else { square_part(d) };
        let (mut a, mut b) = (a, b * f);
        let mut d = r;
        if d == 1 {
            a += b;
            b = 0;
        }
        if b == 0 {
            d = 1;
        }
        let mut c = c;
        if c < 0 {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = gcd(gcd(a, b), c);
        Surd { a: a / g, b: b / g, c: c / g, d }
    }

    pub fn int(v: i128) -> Surd {
        Surd { a: v, b: 0, c: 1, d: 1 }
    }

    /// `√d` itself.
    pub fn sqrt(d: i128) -> Surd {
        Surd::new(0, 1, 1, d)
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Integer value, if this is an integer.
    pub fn as_integer(&self) -> Option<i128> {
        (self.b == 0 && self.c == 1).then_some(self.a)
    }

    /// Squarefree radicand (1 for rationals).
    pub fn radicand(&self) -> i128 {
        self.d
    }

    /// Components `(a, b, c)` of `(a + b√d)/c`.
    pub fn parts(&self) -> (i128, i128, i128) {
        (self.a, self.b, self.c)
    }

    fn unify(self, other: Surd) -> i128 {
        match (self.b, other.b) {
            (0, _) => other.d,
            (_, 0) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "mixing different quadratic fields");
                self.d
            }
        }
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> Ordering {
        let (a, b) = (self.a, self.b);
        let sa = a.cmp(&0);
        let sb = b.cmp(&0);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: compare a² with b²d
                let lhs = a * a;
                let rhs = b * b * self.d;
                match lhs.cmp(&rhs) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                }
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(self) -> Option<Surd> {
        if self.a == 0 && self.b == 0 {
            return None;
        }
        // c / (a + b√d) = c(a − b√d) / (a² − b²d)
        let den = self.a * self.a - self.b * self.b * self.d;
        Some(Surd::new(self.c * self.a, -self.c * self.b, den, self.d))
    }

    pub fn checked_div(self, rhs: Surd) -> Option<Surd> {
        Some(self * rhs.recip()?)
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let d = self.unify(o);
        Surd::new(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c, d)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -self.a, b: -self.b, ..self }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        self + (-o)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let d = self.unify(o);
        Surd::new(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
            d,
        )
    }
}

impl From<i64> for Surd {
    fn from(v: i64) -> Surd {
        Surd::int(v as i128)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        Some((*self - *other).signum())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let num = match (a, b) {
            (_, 0) => format!("{a}"),
            (0, 1) => format!("sqrt({d})"),
            (0, -1) => format!("-sqrt({d})"),
            (0, _) => format!("{b}sqrt({d})"),
            (_, 1) => format!("{a} + sqrt({d})"),
            (_, -1) => format!("{a} - sqrt({d})"),
            (_, b) if b < 0 => format!("{a} - {}sqrt({d})", -b),
            _ => format!("{a} + {b}sqrt({d})"),
        };
        match (c, b) {
            (1, _) => f.write_str(&num),
            (_, 0) => write!(f, "{num}/{c}"),
            _ => write!(f, "({num})/{c}"),
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
