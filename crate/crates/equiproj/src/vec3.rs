//! Points and directions in R^3.
//!
//! `Vec3` carries exact rational coordinates and is used for vertices.
//! `IVec3` carries integer coordinates and is used wherever a ray or normal
//! only matters up to positive scaling: facet normals, edge directions,
//! boundary rays of cones. Primitive (gcd 1) integer vectors give canonical
//! representatives for all coincidence tests.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{sign, sign_rat, Int, Rat};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vec3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl Vec3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(crate::arith::rat(x), crate::arith::rat(y), crate::arith::rat(z))
    }

    pub fn zero() -> Self {
        Vec3::from_ints(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Vec3) -> Rat {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn scale(&self, c: &Rat) -> Vec3 {
        Vec3::new(&self.x * c, &self.y * c, &self.z * c)
    }
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Integer vector; rays and normals are kept primitive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IVec3 {
    pub x: Int,
    pub y: Int,
    pub z: Int,
}

impl IVec3 {
    pub fn new(x: Int, y: Int, z: Int) -> Self {
        IVec3 { x, y, z }
    }

    pub fn from_i64s(x: i64, y: i64, z: i64) -> Self {
        IVec3::new(Int::from(x), Int::from(y), Int::from(z))
    }

    pub fn zero() -> Self {
        IVec3::from_i64s(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &IVec3) -> Int {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &IVec3) -> IVec3 {
        IVec3::new(
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn dot_vec3(&self, p: &Vec3) -> Rat {
        Rat::from_integer(self.x.clone()) * &p.x
            + Rat::from_integer(self.y.clone()) * &p.y
            + Rat::from_integer(self.z.clone()) * &p.z
    }

    /// Divides out the gcd of the coordinates. Zero stays zero.
    pub fn primitive(&self) -> IVec3 {
        let g = self.x.gcd(&self.y).gcd(&self.z);
        if g.is_zero() {
            return self.clone();
        }
        IVec3::new(&self.x / &g, &self.y / &g, &self.z / &g)
    }

    /// True when the vectors span a line, i.e. their cross product vanishes.
    pub fn is_collinear_with(&self, other: &IVec3) -> bool {
        self.cross(other).is_zero()
    }

    pub fn to_vec3(&self) -> Vec3 {
        Vec3::new(
            Rat::from_integer(self.x.clone()),
            Rat::from_integer(self.y.clone()),
            Rat::from_integer(self.z.clone()),
        )
    }

    /// Primitive integer vector spanning the same ray as the rational `v`.
    ///
    /// Scales by the lcm of denominators (preserving orientation), then
    /// divides out the gcd.
    pub fn from_rational_ray(v: &Vec3) -> IVec3 {
        let lcm = v.x.denom().lcm(v.y.denom()).lcm(v.z.denom());
        let comp = |c: &Rat| c.numer() * (&lcm / c.denom());
        IVec3::new(comp(&v.x), comp(&v.y), comp(&v.z)).primitive()
    }

    /// Sign of the first nonzero coordinate; 0 for the zero vector.
    pub fn leading_sign(&self) -> i8 {
        for c in [&self.x, &self.y, &self.z] {
            let s = sign(c);
            if s != 0 {
                return s;
            }
        }
        0
    }
}

impl Add for &IVec3 {
    type Output = IVec3;
    fn add(self, rhs: &IVec3) -> IVec3 {
        IVec3::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl Sub for &IVec3 {
    type Output = IVec3;
    fn sub(self, rhs: &IVec3) -> IVec3 {
        IVec3::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Neg for &IVec3 {
    type Output = IVec3;
    fn neg(self) -> IVec3 {
        IVec3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl fmt::Debug for IVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Display for IVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Exact determinant of three integer vectors.
pub fn det3(a: &IVec3, b: &IVec3, c: &IVec3) -> Int {
    a.dot(&b.cross(c))
}

/// Sign of det(b - a, c - a, d - a): +1 when d is on the positive side of the
/// oriented plane through a, b, c.
pub fn orientation(a: &Vec3, b: &Vec3, c: &Vec3, d: &Vec3) -> i8 {
    let u = b - a;
    let v = c - a;
    let w = d - a;
    sign_rat(&u.dot(&v.cross(&w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64, z: i64) -> Vec3 {
        Vec3::from_ints(x, y, z)
    }

    #[test]
    fn orientation_unit_determinant() {
        assert_eq!(orientation(&v(0, 0, 0), &v(1, 0, 0), &v(0, 1, 0), &v(0, 0, 1)), 1);
        assert_eq!(orientation(&v(0, 0, 0), &v(1, 0, 0), &v(0, 1, 0), &v(0, 0, -1)), -1);
    }

    #[test]
    fn orientation_coplanar() {
        assert_eq!(orientation(&v(0, 0, 0), &v(1, 0, 0), &v(0, 1, 0), &v(3, -2, 0)), 0);
    }

    #[test]
    fn orientation_antisymmetric() {
        let pts = [v(1, 2, 3), v(-4, 0, 2), v(5, 5, -1), v(0, 7, 2)];
        let base = orientation(&pts[0], &pts[1], &pts[2], &pts[3]);
        assert_eq!(orientation(&pts[1], &pts[0], &pts[2], &pts[3]), -base);
        assert_eq!(orientation(&pts[0], &pts[2], &pts[1], &pts[3]), -base);
        assert_eq!(orientation(&pts[0], &pts[1], &pts[3], &pts[2]), -base);
    }

    #[test]
    fn primitive_ray_from_rational() {
        let p = Vec3::new(
            crate::arith::rat_frac(1, 2),
            crate::arith::rat_frac(1, 3),
            crate::arith::rat(0),
        );
        assert_eq!(IVec3::from_rational_ray(&p), IVec3::from_i64s(3, 2, 0));
        let q = v(2, 4, 6);
        assert_eq!(IVec3::from_rational_ray(&q), IVec3::from_i64s(1, 2, 3));
    }
}
