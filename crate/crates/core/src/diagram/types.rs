use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

use super::DiagramError;

/// The surface `F` of the thickened surface `F x I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Disk,
    Annulus,
    Torus,
}

impl SurfaceKind {
    /// Number of cut-curve counters carried by each arc.
    pub fn counter_arity(self) -> usize {
        match self {
            SurfaceKind::Disk => 0,
            SurfaceKind::Annulus => 1,
            SurfaceKind::Torus => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Disk => "disk",
            SurfaceKind::Annulus => "annulus",
            SurfaceKind::Torus => "torus",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceKind {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "disk" => Ok(SurfaceKind::Disk),
            "annulus" => Ok(SurfaceKind::Annulus),
            "torus" => Ok(SurfaceKind::Torus),
            other => Err(DiagramError::UnknownSurface(other.to_string())),
        }
    }
}

/// Signed intersection counts with the cut curves.
///
/// On the torus `x` counts crossings of the meridian cut `{x = 0}` and `y`
/// crossings of the longitude cut `{y = 0}`, so a `(p,q)` curve carries
/// `(p, q)`. On the annulus only `x` (the radial cut) is used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homology {
    pub x: i64,
    pub y: i64,
}

impl Homology {
    pub const ZERO: Homology = Homology { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Counters as a slice of the arity of `surface`.
    pub fn as_counters(self, surface: SurfaceKind) -> Vec<i64> {
        [self.x, self.y][..surface.counter_arity()].to_vec()
    }
}

impl Add for Homology {
    type Output = Homology;
    fn add(self, o: Homology) -> Homology {
        Homology::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Homology {
    fn add_assign(&mut self, o: Homology) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Homology {
    type Output = Homology;
    fn sub(self, o: Homology) -> Homology {
        Homology::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Homology {
    type Output = Homology;
    fn neg(self) -> Homology {
        Homology::new(-self.x, -self.y)
    }
}

/// Canonical basis element: a crossingless diagram with no trivial circles.
///
/// The variant order gives the basis its deterministic ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multicurve {
    /// No components; the unit of the skein algebra.
    Empty,
    /// `n >= 1` parallel copies of the annulus core, `z^n`.
    Core { n: u32 },
    /// `m >= 1` parallel copies of the primitive torus class `(p,q)`,
    /// normalized so that `p > 0` or `p = 0, q > 0`.
    Torus { p: i64, q: i64, m: u32 },
}

/// Sign-normalizes a nonzero torus class so that `p > 0` or `p = 0, q > 0`.
pub fn normalize_class(p: i64, q: i64) -> (i64, i64) {
    if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

impl Multicurve {
    pub fn core(n: u32) -> Self {
        if n == 0 {
            Multicurve::Empty
        } else {
            Multicurve::Core { n }
        }
    }

    /// `m` parallel copies of the class `(p,q)`; `m = 0` gives `Empty`.
    pub fn torus(p: i64, q: i64, m: u32) -> Result<Self, DiagramError> {
        if m == 0 {
            return Ok(Multicurve::Empty);
        }
        if p.gcd(&q) != 1 {
            return Err(DiagramError::NotPrimitive(p, q));
        }
        let (p, q) = normalize_class(p, q);
        Ok(Multicurve::Torus { p, q, m })
    }

    /// The surface this multicurve lives on, if it determines one.
    pub fn surface(&self) -> Option<SurfaceKind> {
        match self {
            Multicurve::Empty => None,
            Multicurve::Core { .. } => Some(SurfaceKind::Annulus),
            Multicurve::Torus { .. } => Some(SurfaceKind::Torus),
        }
    }

    pub fn components(&self) -> u32 {
        match *self {
            Multicurve::Empty => 0,
            Multicurve::Core { n } => n,
            Multicurve::Torus { m, .. } => m,
        }
    }

    /// Same class with a different number of parallel copies.
    pub fn with_multiplicity(&self, k: u32) -> Multicurve {
        match *self {
            _ if k == 0 => Multicurve::Empty,
            Multicurve::Empty => Multicurve::Empty,
            Multicurve::Core { .. } => Multicurve::Core { n: k },
            Multicurve::Torus { p, q, .. } => Multicurve::Torus { p, q, m: k },
        }
    }

    /// The homology class of one component (zero for `Empty`).
    pub fn class(&self) -> Homology {
        match *self {
            Multicurve::Empty => Homology::ZERO,
            Multicurve::Core { .. } => Homology::new(1, 0),
            Multicurve::Torus { p, q, .. } => Homology::new(p, q),
        }
    }
}

impl fmt::Display for Multicurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Multicurve::Empty => f.write_str("empty"),
            Multicurve::Core { n: 1 } => f.write_str("z"),
            Multicurve::Core { n } => write!(f, "z^{n}"),
            Multicurve::Torus { p, q, m: 1 } => write!(f, "({p},{q})"),
            Multicurve::Torus { p, q, m } => write!(f, "({p},{q})^{m}"),
        }
    }
}

impl FromStr for Multicurve {
    type Err = DiagramError;

    /// Accepts `empty`, `z`, `z^n`, `(p,q)` and `(p,q)^m`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || DiagramError::BadMulticurve(text.to_string());
        if s == "empty" || s == "∅" {
            return Ok(Multicurve::Empty);
        }
        if let Some(rest) = s.strip_prefix('z') {
            let n = match rest.strip_prefix('^') {
                Some(n) => n.parse::<u32>().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            return Ok(Multicurve::core(n));
        }
        let body = s.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let (pair, rest) = (&body[..close], &body[close + 1..]);
        let (p, q) = pair.split_once(',').ok_or_else(bad)?;
        let p = p.parse::<i64>().map_err(|_| bad())?;
        let q = q.parse::<i64>().map_err(|_| bad())?;
        let m = match rest.strip_prefix('^') {
            Some(m) => m.parse::<u32>().map_err(|_| bad())?,
            None if rest.is_empty() => 1,
            None => return Err(bad()),
        };
        Multicurve::torus(p, q, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_classes_are_normalized() {
        assert_eq!(
            Multicurve::torus(-1, 1, 1).unwrap(),
            Multicurve::Torus { p: 1, q: -1, m: 1 }
        );
        assert_eq!(
            Multicurve::torus(0, -1, 2).unwrap(),
            Multicurve::Torus { p: 0, q: 1, m: 2 }
        );
        assert!(Multicurve::torus(2, 2, 1).is_err());
        assert!(Multicurve::torus(0, 0, 1).is_err());
        assert_eq!(Multicurve::torus(2, 2, 0).unwrap(), Multicurve::Empty);
    }

    #[test]
    fn text_round_trip() {
        for s in ["empty", "z", "z^3", "(1,0)", "(2,-1)^3", "(0,1)^2"] {
            let m: Multicurve = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert_eq!("( -1 , 0 )".parse::<Multicurve>().unwrap().to_string(), "(1,0)");
        assert!("(1,0".parse::<Multicurve>().is_err());
        assert!("w^2".parse::<Multicurve>().is_err());
    }
}
