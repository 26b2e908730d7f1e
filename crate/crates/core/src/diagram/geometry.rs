//! Diagrams realized by closed polylines with exact rational coordinates.
//!
//! Vertices are given in the universal cover; a strand closes up by
//! translating its first vertex by an integer `closing` vector (zero on the
//! disk, horizontal on the annulus). Crossings are found by solving for
//! segment intersections against every relevant lattice translate, ordered
//! along each strand by their exact parameters, and then the coordinates are
//! discarded. Arc counters are floor differences of unwrapped endpoints,
//! which equal signed counts of crossings with the integer cut lines.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Diagram, DiagramError, End, Homology, Multicurve, SurfaceKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    /// `(x / den, y / den)`.
    pub fn grid(x: i64, y: i64, den: i64) -> Self {
        Self {
            x: BigRational::new(x.into(), den.into()),
            y: BigRational::new(y.into(), den.into()),
        }
    }

    fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    fn scale(&self, t: &BigRational) -> Point {
        Point::new(&self.x * t, &self.y * t)
    }

    fn cross(&self, o: &Point) -> BigRational {
        &self.x * &o.y - &self.y * &o.x
    }

    fn dot(&self, o: &Point) -> BigRational {
        &self.x * &o.x + &self.y * &o.y
    }

    fn int(x: i64, y: i64) -> Point {
        Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }
}

/// One closed strand. Segment `i` runs from vertex `i` to vertex `i + 1`;
/// the last runs back to `vertices[0] + closing`. The segment with the larger
/// height passes over at each crossing.
#[derive(Clone, Debug)]
pub struct PolylineStrand {
    pub vertices: Vec<Point>,
    pub closing: (i64, i64),
    pub heights: Vec<i64>,
}

impl PolylineStrand {
    pub fn new(vertices: Vec<Point>, closing: (i64, i64), height: i64) -> Self {
        let n = vertices.len();
        Self {
            vertices,
            closing,
            heights: vec![height; n],
        }
    }

    pub fn with_heights(vertices: Vec<Point>, closing: (i64, i64), heights: Vec<i64>) -> Self {
        Self {
            vertices,
            closing,
            heights,
        }
    }

    /// Straight closed geodesic of class `closing` through `base`.
    pub fn line(base: Point, closing: (i64, i64), height: i64) -> Self {
        Self::new(vec![base], closing, height)
    }

    fn end(&self, i: usize) -> Point {
        if i + 1 < self.vertices.len() {
            self.vertices[i + 1].clone()
        } else {
            self.vertices[0].add(&Point::int(self.closing.0, self.closing.1))
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolylineLink {
    pub surface: SurfaceKind,
    pub strands: Vec<PolylineStrand>,
}

struct Segment {
    strand: usize,
    index: usize,
    start: Point,
    dir: Point,
    height: i64,
}

struct Incidence {
    segment: usize,
    t: BigRational,
    crossing: usize,
    over: bool,
}

struct Hit {
    over_dir: Point,
    under_dir: Point,
}

fn floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

fn span(a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

fn to_i64(b: &BigInt) -> i64 {
    i64::try_from(b).expect("coordinate out of range")
}

impl PolylineLink {
    pub fn new(surface: SurfaceKind, strands: Vec<PolylineStrand>) -> Self {
        Self { surface, strands }
    }

    fn translations(&self, s1: &Segment, s2: &Segment) -> Vec<Point> {
        let range = |a0: &BigRational, da: &BigRational, b0: &BigRational, db: &BigRational| {
            let (lo1, hi1) = span(a0, &(a0 + da));
            let (lo2, hi2) = span(b0, &(b0 + db));
            (to_i64(&ceil(&(lo1 - &hi2))), to_i64(&floor(&(hi1 - lo2))))
        };
        let (xlo, xhi) = match self.surface {
            SurfaceKind::Disk => (0, 0),
            _ => range(&s1.start.x, &s1.dir.x, &s2.start.x, &s2.dir.x),
        };
        let (ylo, yhi) = match self.surface {
            SurfaceKind::Torus => range(&s1.start.y, &s1.dir.y, &s2.start.y, &s2.dir.y),
            _ => (0, 0),
        };
        let mut out = Vec::new();
        for tx in xlo..=xhi {
            for ty in ylo..=yhi {
                out.push(Point::int(tx, ty));
            }
        }
        out
    }

    fn check_closings(&self) -> Result<(), DiagramError> {
        for (i, s) in self.strands.iter().enumerate() {
            let ok = match self.surface {
                SurfaceKind::Disk => s.closing == (0, 0),
                SurfaceKind::Annulus => s.closing.1 == 0,
                SurfaceKind::Torus => true,
            };
            if !ok {
                return Err(DiagramError::Degenerate(format!(
                    "strand {i} closes by {:?}, not allowed on the {}",
                    s.closing, self.surface
                )));
            }
            if s.vertices.is_empty() || s.heights.len() != s.vertices.len() {
                return Err(DiagramError::Degenerate(format!("strand {i} has malformed vertex data")));
            }
            if s.vertices.len() == 1 && s.closing == (0, 0) {
                return Err(DiagramError::Degenerate(format!("strand {i} has a single point")));
            }
        }
        Ok(())
    }

    /// Finds all crossings and assembles the combinatorial diagram.
    pub fn build(&self) -> Result<Diagram, DiagramError> {
        self.check_closings()?;
        let mut segments = Vec::new();
        for (si, s) in self.strands.iter().enumerate() {
            for i in 0..s.vertices.len() {
                let start = s.vertices[i].clone();
                let dir = s.end(i).sub(&start);
                if dir.x.is_zero() && dir.y.is_zero() {
                    return Err(DiagramError::Degenerate(format!("strand {si} segment {i} has zero length")));
                }
                segments.push(Segment {
                    strand: si,
                    index: i,
                    start,
                    dir,
                    height: s.heights[i],
                });
            }
        }

        let mut incidences: Vec<Vec<Incidence>> = (0..self.strands.len()).map(|_| Vec::new()).collect();
        let mut hits: Vec<Hit> = Vec::new();
        for i in 0..segments.len() {
            for j in i..segments.len() {
                let (s1, s2) = (&segments[i], &segments[j]);
                for shift in self.translations(s1, s2) {
                    if i == j && shift.x.is_zero() && shift.y.is_zero() {
                        continue;
                    }
                    let w = s2.start.add(&shift).sub(&s1.start);
                    let denom = s1.dir.cross(&s2.dir);
                    if denom.is_zero() {
                        if !w.cross(&s1.dir).is_zero() {
                            continue;
                        }
                        let len = s1.dir.dot(&s1.dir);
                        let t0 = w.dot(&s1.dir) / &len;
                        let t1 = w.add(&s2.dir).dot(&s1.dir) / &len;
                        let (lo, hi) = span(&t0, &t1);
                        let zero = BigRational::zero();
                        let one = BigRational::from_integer(1.into());
                        let lo = if lo > zero { lo } else { zero };
                        let hi = if hi < one { hi } else { one };
                        if lo < hi {
                            return Err(DiagramError::Degenerate("overlapping collinear segments".into()));
                        }
                        continue;
                    }
                    let t = w.cross(&s2.dir) / &denom;
                    let u = w.cross(&s1.dir) / &denom;
                    let unit = |v: &BigRational| !v.is_negative() && *v < BigRational::from_integer(1.into());
                    if !unit(&t) || !unit(&u) {
                        continue;
                    }
                    if t.is_zero() || u.is_zero() {
                        return Err(DiagramError::Degenerate(format!(
                            "a vertex of strand {} or {} lies on the other strand",
                            s1.strand, s2.strand
                        )));
                    }
                    let (over, under, t_over, t_under) = match s1.height.cmp(&s2.height) {
                        Ordering::Greater => (i, j, t, u),
                        Ordering::Less => (j, i, u, t),
                        Ordering::Equal => return Err(DiagramError::AmbiguousCrossing(s1.strand, s2.strand)),
                    };
                    let c = hits.len();
                    hits.push(Hit {
                        over_dir: segments[over].dir.clone(),
                        under_dir: segments[under].dir.clone(),
                    });
                    incidences[segments[over].strand].push(Incidence {
                        segment: segments[over].index,
                        t: t_over,
                        crossing: c,
                        over: true,
                    });
                    incidences[segments[under].strand].push(Incidence {
                        segment: segments[under].index,
                        t: t_under,
                        crossing: c,
                        over: false,
                    });
                }
            }
        }

        // port slots: under in = 0, under out = 2; the over-strand's outgoing
        // end sits at port 1 when it points counterclockwise from the incoming
        // under-strand, else at port 3.
        let mut ports: Vec<[(usize, End); 4]> = vec![[(usize::MAX, End::Tail); 4]; hits.len()];
        let port_of = |hit: &Hit, over: bool, outgoing: bool| -> usize {
            if !over {
                return if outgoing { 2 } else { 0 };
            }
            let ccw = hit.over_dir.cross(&hit.under_dir).is_positive();
            match (ccw, outgoing) {
                (true, true) | (false, false) => 1,
                _ => 3,
            }
        };

        let mut arcs: Vec<(String, Homology)> = Vec::new();
        let mut loops = Vec::new();
        for (si, list) in incidences.iter_mut().enumerate() {
            let strand = &self.strands[si];
            if list.is_empty() {
                loops.push(self.counters(&Point::int(strand.closing.0, strand.closing.1), &Point::int(0, 0)));
                continue;
            }
            list.sort_by(|a, b| a.segment.cmp(&b.segment).then_with(|| a.t.cmp(&b.t)));
            if list.windows(2).any(|w| w[0].segment == w[1].segment && w[0].t == w[1].t) {
                return Err(DiagramError::Degenerate(format!("multiple crossings at one point of strand {si}")));
            }
            let position = |inc: &Incidence| {
                let seg_start = &strand.vertices[inc.segment];
                let dir = strand.end(inc.segment).sub(seg_start);
                seg_start.add(&dir.scale(&inc.t))
            };
            let n = list.len();
            for k in 0..n {
                let from = &list[k];
                let to = &list[(k + 1) % n];
                let p0 = position(from);
                let mut p1 = position(to);
                if k + 1 == n {
                    p1 = p1.add(&Point::int(strand.closing.0, strand.closing.1));
                }
                let a = arcs.len();
                arcs.push((format!("s{si}a{k}"), self.counters(&p1, &p0)));
                let out_port = port_of(&hits[from.crossing], from.over, true);
                let in_port = port_of(&hits[to.crossing], to.over, false);
                ports[from.crossing][out_port] = (a, End::Tail);
                ports[to.crossing][in_port] = (a, End::Head);
            }
        }
        let crossings = ports
            .into_iter()
            .enumerate()
            .map(|(i, p)| (format!("g{}", i + 1), p))
            .collect();
        Diagram::from_parts(self.surface, crossings, arcs, loops)
    }

    fn counters(&self, end: &Point, start: &Point) -> Homology {
        let dx = to_i64(&(floor(&end.x) - floor(&start.x)));
        let dy = to_i64(&(floor(&end.y) - floor(&start.y)));
        match self.surface {
            SurfaceKind::Disk => Homology::ZERO,
            SurfaceKind::Annulus => Homology::new(dx, 0),
            SurfaceKind::Torus => Homology::new(dx, dy),
        }
    }
}

fn family_bases(p: i64, q: i64, m: u32, salt: i64, attempt: i64) -> Vec<Point> {
    let eps = BigRational::new((attempt + 1).into(), (1009 + 2 * salt).into())
        / BigRational::from_integer((4 * (m as i64 + 1) * (p.abs() + q.abs() + 1)).into());
    (0..m as i64)
        .map(|i| {
            let frac = BigRational::new((i + 1).into(), ((m as i64 + 1) * p.abs().max(1)).into()) + &eps;
            if p != 0 {
                Point::new(BigRational::zero(), frac)
            } else {
                Point::new(frac, BigRational::zero())
            }
        })
        .collect()
}

/// Diagram of `x` stacked over `y`: every crossing has a strand of `x` over
/// a strand of `y`. On the torus an `(p,q)^m1` family and an `(r,s)^m2`
/// family meet in exactly `m1 * m2 * |ps - qr|` crossings.
pub fn build_product_diagram(surface: SurfaceKind, x: &Multicurve, y: &Multicurve) -> Result<Diagram, DiagramError> {
    for m in [x, y] {
        if let Some(s) = m.surface() {
            if s != surface {
                return Err(DiagramError::SurfaceMismatch(surface, s));
            }
        }
    }
    match surface {
        SurfaceKind::Disk => Err(DiagramError::DiskProduct),
        SurfaceKind::Annulus => {
            let n = x.components() + y.components();
            Diagram::from_multicurve(surface, &Multicurve::core(n))
        }
        SurfaceKind::Torus => {
            let (Multicurve::Torus { p, q, m: m1 }, Multicurve::Torus { p: r, q: s, m: m2 }) = (*x, *y) else {
                let other = if *x == Multicurve::Empty { y } else { x };
                return Diagram::from_multicurve(surface, other);
            };
            if p * s - q * r == 0 {
                return Diagram::from_multicurve(surface, &x.with_multiplicity(m1 + m2));
            }
            let mut last = None;
            for attempt in 0..64 {
                let mut strands = Vec::new();
                for b in family_bases(p, q, m1, 0, attempt) {
                    strands.push(PolylineStrand::line(b, (p, q), 1));
                }
                for b in family_bases(r, s, m2, 5, attempt) {
                    strands.push(PolylineStrand::line(b, (r, s), 0));
                }
                match PolylineLink::new(surface, strands).build() {
                    Ok(d) => return Ok(d),
                    Err(e @ DiagramError::Degenerate(_)) => last = Some(e),
                    Err(e) => return Err(e),
                }
            }
            Err(last.expect("at least one attempt"))
        }
    }
}
