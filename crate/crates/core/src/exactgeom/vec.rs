use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "3", "-3/5" style strings. Decimal points are rejected.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Exact rational vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        RatVec(coords)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        RatVec(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zeros(d: usize) -> Self {
        RatVec(vec![Rat::zero(); d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zeros(d);
        v.0[i] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.0[i]
    }

    pub fn dot(&self, o: &RatVec) -> Rat {
        assert_eq!(self.dim(), o.dim(), "dimension mismatch in dot");
        self.0.iter().zip(&o.0).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, s: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|x| x * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Positive multiple with coprime integer coordinates.
    pub fn primitive(&self) -> RatVec {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        RatVec(ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect())
    }

    /// Primitive, with the first nonzero coordinate positive.
    pub fn line_normal(&self) -> RatVec {
        let p = self.primitive();
        match p.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -p,
            _ => p,
        }
    }

    /// True if `o` is a positive multiple of `self`.
    pub fn same_direction(&self, o: &RatVec) -> bool {
        !self.is_zero() && !o.is_zero() && self.primitive() == o.primitive()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num::ToPrimitive;
        self.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn sum<'a>(d: usize, it: impl IntoIterator<Item = &'a RatVec>) -> RatVec {
        it.into_iter().fold(RatVec::zeros(d), |acc, v| &acc + v)
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, o: &RatVec) -> RatVec {
        assert_eq!(self.dim(), o.dim(), "dimension mismatch in add");
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, o: &RatVec) -> RatVec {
        assert_eq!(self.dim(), o.dim(), "dimension mismatch in sub");
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.into_iter().map(|x| -x).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        -self.clone()
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[macro_export]
macro_rules! rv {
    ($($x:expr),* $(,)?) => {
        $crate::exactgeom::RatVec::from_ints(&[$($x),*])
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scaling() {
        let v = RatVec::new(vec![ratio(3, 5), ratio(-4, 5)]);
        assert_eq!(v.primitive(), rv![3, -4]);
        assert_eq!(rv![-2, 4].line_normal(), rv![1, -2]);
        assert_eq!(rv![0, 0].primitive(), rv![0, 0]);
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rat("-3/5"), Some(ratio(-3, 5)));
        assert_eq!(parse_rat("7"), Some(rat(7)));
        assert_eq!(parse_rat("0.5"), None);
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn direction() {
        assert!(rv![1, 2].same_direction(&rv![2, 4]));
        assert!(!rv![1, 2].same_direction(&rv![-1, -2]));
    }
}
