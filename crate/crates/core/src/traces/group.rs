//! The group law on `E(F_p)` for a short Weierstrass model.
//!
//! Scalar multiplication runs a left-to-right double-and-add ladder in
//! Jacobian coordinates `(X : Y : Z) ~ (X/Z^2, Y/Z^3)` with one inversion at
//! the end.

use rand::Rng;

use crate::arith::Fp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

#[derive(Debug, Clone, Copy)]
struct Jacobian {
    x: u64,
    y: u64,
    z: u64,
}

impl Jacobian {
    const INFINITY: Jacobian = Jacobian { x: 1, y: 1, z: 0 };
}

/// `y^2 = x^3 + ax + b` over `F_p`, coefficients reduced.
#[derive(Debug, Clone, Copy)]
pub struct CurveModP {
    f: Fp,
    a: u64,
    b: u64,
}

impl CurveModP {
    pub fn new(f: Fp, a: u64, b: u64) -> Self {
        CurveModP { f, a, b }
    }

    pub fn field(&self) -> Fp {
        self.f
    }

    pub fn p(&self) -> u64 {
        self.f.modulus()
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `x^3 + ax + b`.
    #[inline]
    pub fn rhs(&self, x: u64) -> u64 {
        let f = &self.f;
        f.add(f.mul(f.add(f.sqr(x), self.a), x), self.b)
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match *pt {
            Point::Infinity => true,
            Point::Affine { x, y } => x < self.p() && y < self.p() && self.f.sqr(y) == self.rhs(x),
        }
    }

    /// Quadratic twist by `g`: `y^2 = x^3 + a g^2 x + b g^3`.
    pub fn twist(&self, g: u64) -> CurveModP {
        let f = &self.f;
        let g2 = f.sqr(g);
        CurveModP::new(self.f, f.mul(self.a, g2), f.mul(self.b, f.mul(g2, g)))
    }

    pub fn neg(&self, pt: &Point) -> Point {
        match *pt {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x, y: self.f.neg(y) },
        }
    }

    pub fn add(&self, p1: &Point, p2: &Point) -> Point {
        match (*p1, *p2) {
            (Point::Infinity, _) => *p2,
            (_, Point::Infinity) => *p1,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => {
                let f = &self.f;
                let lambda = if x1 == x2 {
                    if f.add(y1, y2) == 0 {
                        return Point::Infinity;
                    }
                    let num = f.add(f.mul(3, f.sqr(x1)), self.a);
                    f.mul(num, f.inv(f.add(y1, y1)).expect("2y is nonzero"))
                } else {
                    f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)).expect("x2 - x1 is nonzero"))
                };
                let x3 = f.sub(f.sub(f.sqr(lambda), x1), x2);
                let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
                Point::Affine { x: x3, y: y3 }
            }
        }
    }

    fn affine(&self, q: Jacobian) -> Point {
        if q.z == 0 {
            return Point::Infinity;
        }
        let f = &self.f;
        let zi = f.inv(q.z).expect("z is nonzero");
        let zi2 = f.sqr(zi);
        Point::Affine {
            x: f.mul(q.x, zi2),
            y: f.mul(q.y, f.mul(zi2, zi)),
        }
    }

    fn double_j(&self, q: Jacobian) -> Jacobian {
        let f = &self.f;
        if q.z == 0 || q.y == 0 {
            return Jacobian::INFINITY;
        }
        let xx = f.sqr(q.x);
        let yy = f.sqr(q.y);
        let yyyy = f.sqr(yy);
        let zz = f.sqr(q.z);
        let s = f.mul(4, f.mul(q.x, yy));
        let m = f.add(f.mul(3, xx), f.mul(self.a, f.sqr(zz)));
        let x3 = f.sub(f.sqr(m), f.add(s, s));
        let y3 = f.sub(f.mul(m, f.sub(s, x3)), f.mul(8, yyyy));
        let z3 = f.mul(2, f.mul(q.y, q.z));
        Jacobian { x: x3, y: y3, z: z3 }
    }

    /// `q + (x2, y2)` with the second operand affine.
    fn add_mixed(&self, q: Jacobian, x2: u64, y2: u64) -> Jacobian {
        let f = &self.f;
        if q.z == 0 {
            return Jacobian { x: x2, y: y2, z: 1 };
        }
        let z1z1 = f.sqr(q.z);
        let u2 = f.mul(x2, z1z1);
        let s2 = f.mul(y2, f.mul(q.z, z1z1));
        let h = f.sub(u2, q.x);
        let r = f.sub(s2, q.y);
        if h == 0 {
            return if r == 0 { self.double_j(q) } else { Jacobian::INFINITY };
        }
        let hh = f.sqr(h);
        let hhh = f.mul(h, hh);
        let v = f.mul(q.x, hh);
        let x3 = f.sub(f.sub(f.sqr(r), hhh), f.add(v, v));
        let y3 = f.sub(f.mul(r, f.sub(v, x3)), f.mul(q.y, hhh));
        let z3 = f.mul(q.z, h);
        Jacobian { x: x3, y: y3, z: z3 }
    }

    /// `k · pt` by binary double-and-add.
    pub fn mul(&self, pt: &Point, k: u64) -> Point {
        let (x, y) = match *pt {
            Point::Infinity => return Point::Infinity,
            Point::Affine { x, y } => (x, y),
        };
        if k == 0 {
            return Point::Infinity;
        }
        let mut acc = Jacobian::INFINITY;
        for i in (0..64 - k.leading_zeros()).rev() {
            acc = self.double_j(acc);
            if (k >> i) & 1 == 1 {
                acc = self.add_mixed(acc, x, y);
            }
        }
        self.affine(acc)
    }

    /// A pseudo-random affine point: from a random start, sweep `x` upward
    /// until `x^3 + ax + b` is a square, then pick a random root.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let p = self.p();
        let mut x = rng.random_range(0..p);
        loop {
            let r = self.rhs(x);
            if r == 0 {
                return Point::Affine { x, y: 0 };
            }
            if self.f.legendre(r) == 1 {
                let y = self.f.sqrt(r).expect("residue has a root");
                let y = if rng.random::<bool>() { y } else { self.f.neg(y) };
                return Point::Affine { x, y };
            }
            x = if x + 1 == p { 0 } else { x + 1 };
        }
    }
}
