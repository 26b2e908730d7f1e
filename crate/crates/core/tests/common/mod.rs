//! Shared fixtures for the integration tests: a PD corpus, exact-geometry
//! Reidemeister pairs on all three surfaces, torus products, and an
//! independent state-sum oracle.
#![allow(dead_code)]

pub mod oracle;

use kbsm::diagram::{
    build_product_diagram, parse_diagram, Diagram, Multicurve, Point, PolylineLink, PolylineStrand, SurfaceKind,
};

pub struct Case {
    pub name: String,
    pub diagram: Diagram,
}

pub struct MovePair {
    pub name: String,
    pub before: Diagram,
    pub after: Diagram,
}

pub struct KinkPair {
    pub name: String,
    pub kinked: Diagram,
    pub straight: Diagram,
    /// +1 when the curl is a positive kink.
    pub sign: i32,
}

pub const PD_CODES: &[(&str, &str)] = &[
    ("kink-a", "X[1,2,2,1]"),
    ("kink-b", "X[1,1,2,2]"),
    ("hopf", "X[4,1,3,2]; X[2,3,1,4]"),
    ("trefoil", "X[1,5,2,4]; X[3,1,4,6]; X[5,3,6,2]"),
    ("trefoil-left", "X[1,4,2,5]; X[3,6,4,1]; X[5,2,6,3]"),
    ("figure-eight", "X[4,2,5,1]; X[8,6,1,5]; X[6,3,7,4]; X[2,7,3,8]"),
    ("torus-link-2-4", "X[6,1,7,2]; X[8,3,5,4]; X[2,5,3,6]; X[4,7,1,8]"),
    ("cinquefoil", "X[1,6,2,7]; X[3,8,4,9]; X[5,10,6,1]; X[7,2,8,3]; X[9,4,10,5]"),
    ("three-twist", "X[1,4,2,5]; X[3,8,4,9]; X[5,10,6,1]; X[9,6,10,7]; X[7,2,8,3]"),
    ("whitehead", "X[6,1,7,2]; X[10,7,5,8]; X[4,5,1,6]; X[2,10,3,9]; X[8,4,9,3]"),
    ("stevedore", "X[1,4,2,5]; X[7,10,8,11]; X[3,9,4,8]; X[9,3,10,2]; X[5,12,6,1]; X[11,6,12,7]"),
    ("six-two", "X[1,4,2,5]; X[5,10,6,11]; X[3,9,4,8]; X[9,3,10,2]; X[7,12,8,1]; X[11,6,12,7]"),
    ("six-three", "X[4,2,5,1]; X[8,4,9,3]; X[12,9,1,10]; X[10,5,11,6]; X[6,11,7,12]; X[2,8,3,7]"),
    ("borromean", "X[6,1,7,2]; X[12,8,9,7]; X[4,12,1,11]; X[10,5,11,6]; X[8,4,5,3]; X[2,9,3,10]"),
    (
        "septafoil",
        "X[1,8,2,9]; X[3,10,4,11]; X[5,12,6,13]; X[7,14,8,1]; X[9,2,10,3]; X[11,4,12,5]; X[13,6,14,7]",
    ),
];

pub fn pd(code: &str) -> Diagram {
    parse_diagram(&format!("disk; {code}")).expect("corpus PD code parses")
}

pub fn pd_corpus() -> Vec<Case> {
    PD_CODES
        .iter()
        .map(|(name, code)| Case {
            name: name.to_string(),
            diagram: pd(code),
        })
        .collect()
}

pub fn torus(p: i64, q: i64, m: u32) -> Multicurve {
    Multicurve::torus(p, q, m).unwrap()
}

/// Product diagrams on the torus with at most eight crossings.
pub fn torus_product_corpus() -> Vec<Case> {
    let pairs = [
        (torus(1, 0, 1), torus(0, 1, 1)),
        (torus(0, 1, 1), torus(1, 0, 1)),
        (torus(1, 0, 2), torus(0, 1, 1)),
        (torus(1, 1, 1), torus(1, -1, 1)),
        (torus(2, 1, 1), torus(1, -1, 1)),
        (torus(1, 0, 2), torus(1, 2, 1)),
        (torus(2, 1, 1), torus(0, 1, 2)),
        (torus(3, 1, 1), torus(1, 2, 1)),
        (torus(2, 3, 1), torus(1, -1, 1)),
        (torus(1, 0, 3), torus(1, 2, 1)),
        (torus(1, 0, 2), torus(0, 1, 2)),
        (torus(1, 1, 2), torus(1, -1, 2)),
        (torus(1, 2, 1), torus(1, 0, 1)),
    ];
    pairs
        .iter()
        .map(|(x, y)| Case {
            name: format!("product {x} * {y}"),
            diagram: build_product_diagram(SurfaceKind::Torus, x, y).unwrap(),
        })
        .collect()
}

fn pts(v: &[(i64, i64)]) -> Vec<Point> {
    v.iter().map(|&(x, y)| Point::grid(x, y, 100)).collect()
}

fn build(surface: SurfaceKind, strands: Vec<PolylineStrand>) -> Diagram {
    PolylineLink::new(surface, strands).build().expect("corpus geometry is generic")
}

// A strand that runs along y = 0.2, pushes a finger up through x = 0.5
// (segments 1 and 2), bulges through y = 0.75 (segments 3 and 5) and crosses
// x = 0.5 once more high up (segment 4).
const FINGER: [(i64, i64); 7] = [(5, 20), (30, 20), (70, 40), (30, 60), (20, 90), (80, 95), (90, 20)];
const DISK_TAIL: [(i64, i64); 3] = [(105, 20), (105, 0), (5, 0)];
const SQUARE: [(i64, i64); 4] = [(45, 25), (55, 25), (55, 55), (45, 55)];

fn finger_heights(len: usize, finger: i64, bulge: i64, high: i64) -> Vec<i64> {
    let mut h = vec![0; len];
    h[1] = finger;
    h[2] = finger;
    h[3] = bulge;
    h[5] = bulge;
    h[4] = high;
    h
}

/// Pairs related by Reidemeister II moves and planar isotopy.
pub fn rii_pairs() -> Vec<MovePair> {
    let mut out = Vec::new();
    let vertical = || PolylineStrand::line(Point::grid(50, 3, 100), (0, 1), 10);
    let horizontal = |h| PolylineStrand::line(Point::grid(1, 75, 100), (1, 0), h);
    for finger in [20, 0] {
        for bulge in [40, 20] {
            for high in [20, 0] {
                let a = PolylineStrand::with_heights(pts(&FINGER), (1, 0), finger_heights(7, finger, bulge, high));
                let straight = PolylineStrand::line(Point::grid(5, 20, 100), (1, 0), high);
                out.push(MovePair {
                    name: format!("torus finger f{finger} b{bulge} h{high}"),
                    before: build(SurfaceKind::Torus, vec![straight, vertical(), horizontal(30)]),
                    after: build(SurfaceKind::Torus, vec![a, vertical(), horizontal(30)]),
                });
            }
        }
    }
    for finger in [20, 0] {
        let a = PolylineStrand::with_heights(pts(&FINGER), (1, 0), finger_heights(7, finger, 40, 20));
        let straight = PolylineStrand::line(Point::grid(5, 20, 100), (1, 0), 20);
        let square = || PolylineStrand::new(pts(&SQUARE), (0, 0), 15);
        out.push(MovePair {
            name: format!("torus finger through square f{finger}"),
            before: build(SurfaceKind::Torus, vec![straight, vertical(), horizontal(30), square()]),
            after: build(SurfaceKind::Torus, vec![a, vertical(), horizontal(30), square()]),
        });
    }
    for finger in [20, 0] {
        for bulge in [40, 20] {
            let a = PolylineStrand::with_heights(pts(&FINGER), (1, 0), finger_heights(7, finger, bulge, 0));
            let straight = PolylineStrand::line(Point::grid(5, 20, 100), (1, 0), 0);
            let square = || PolylineStrand::new(pts(&SQUARE), (0, 0), 10);
            out.push(MovePair {
                name: format!("annulus finger f{finger} b{bulge}"),
                before: build(SurfaceKind::Annulus, vec![straight, horizontal(30), square()]),
                after: build(SurfaceKind::Annulus, vec![a, horizontal(30), square()]),
            });
        }
    }
    for finger in [20, 0] {
        for bulge in [40, 20] {
            let mut v = FINGER.to_vec();
            v.extend(DISK_TAIL);
            let a = PolylineStrand::with_heights(pts(&v), (0, 0), finger_heights(10, finger, bulge, 0));
            let straight = PolylineStrand::new(pts(&[(5, 20), (105, 20), (105, 0), (5, 0)]), (0, 0), 0);
            let band = || PolylineStrand::new(pts(&[(-10, 72), (120, 72), (120, 78), (-10, 78)]), (0, 0), 30);
            let square = || PolylineStrand::new(pts(&SQUARE), (0, 0), 10);
            out.push(MovePair {
                name: format!("disk finger f{finger} b{bulge}"),
                before: build(SurfaceKind::Disk, vec![straight, band(), square()]),
                after: build(SurfaceKind::Disk, vec![a, band(), square()]),
            });
        }
    }
    out
}

const LAYER_ORDERS: [[i64; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Pairs related by a Reidemeister III move: a third strand slides across
/// the crossing of the other two.
pub fn riii_pairs() -> Vec<MovePair> {
    let mut out = Vec::new();
    for [ha, hb, hc] in LAYER_ORDERS {
        let make = |base_x| {
            build(
                SurfaceKind::Torus,
                vec![
                    PolylineStrand::line(Point::grid(1, 30, 100), (1, 0), ha),
                    PolylineStrand::line(Point::grid(50, 1, 100), (0, 1), hb),
                    PolylineStrand::line(Point::grid(base_x, 0, 100), (1, 1), hc),
                ],
            )
        };
        out.push(MovePair {
            name: format!("torus triangle {ha}{hb}{hc}"),
            before: make(30),
            after: make(10),
        });
    }
    let box_b = [(50, 0), (50, 90), (5, 90), (5, 0)];
    let c_before = [(0, -30), (70, 40), (95, 40), (95, -40), (0, -40)];
    let c_after = [(0, -10), (70, 60), (95, 60), (95, -40), (0, -40)];
    for surface in [SurfaceKind::Annulus, SurfaceKind::Disk] {
        for [ha, hb, hc] in LAYER_ORDERS {
            let a = || match surface {
                SurfaceKind::Disk => {
                    PolylineStrand::new(pts(&[(-20, 30), (120, 30), (120, 200), (-20, 200)]), (0, 0), ha)
                }
                _ => PolylineStrand::line(Point::grid(1, 30, 100), (1, 0), ha),
            };
            let make = |c: &[(i64, i64)]| {
                build(
                    surface,
                    vec![
                        a(),
                        PolylineStrand::new(pts(&box_b), (0, 0), hb),
                        PolylineStrand::new(pts(c), (0, 0), hc),
                    ],
                )
            };
            out.push(MovePair {
                name: format!("{surface} triangle {ha}{hb}{hc}"),
                before: make(&c_before),
                after: make(&c_after),
            });
        }
    }
    out
}

// Runs along y = 0.2 with one curl; segment 0 and segment 4 cross.
const CURL: [(i64, i64); 7] = [(10, 20), (50, 20), (60, 30), (55, 40), (45, 30), (52, 5), (70, 20)];

pub fn kink_pairs() -> Vec<KinkPair> {
    let mut out = Vec::new();
    for sign in [1, -1] {
        let mut heights = vec![0; 7];
        heights[if sign > 0 { 4 } else { 0 }] = 1;
        let curl = |closing, extra: &[(i64, i64)], hs: &[i64]| {
            let mut v = CURL.to_vec();
            v.extend_from_slice(extra);
            let mut h = hs.to_vec();
            h.resize(v.len(), 0);
            PolylineStrand::with_heights(pts(&v), closing, h)
        };
        let crossing_strand = || PolylineStrand::line(Point::grid(30, 1, 100), (0, 1), 5);
        out.push(KinkPair {
            name: format!("torus kink {sign:+}"),
            kinked: build(SurfaceKind::Torus, vec![curl((1, 0), &[], &heights), crossing_strand()]),
            straight: build(
                SurfaceKind::Torus,
                vec![PolylineStrand::line(Point::grid(10, 20, 100), (1, 0), 0), crossing_strand()],
            ),
            sign,
        });
        out.push(KinkPair {
            name: format!("annulus kink {sign:+}"),
            kinked: build(SurfaceKind::Annulus, vec![curl((1, 0), &[], &heights)]),
            straight: build(SurfaceKind::Annulus, vec![PolylineStrand::line(Point::grid(10, 20, 100), (1, 0), 0)]),
            sign,
        });
        let tail = [(110, 20), (110, -20), (10, -20)];
        let square = || PolylineStrand::new(pts(&[(100, -30), (120, -30), (120, 0), (100, 0)]), (0, 0), 3);
        out.push(KinkPair {
            name: format!("disk kink {sign:+}"),
            kinked: build(SurfaceKind::Disk, vec![curl((0, 0), &tail, &heights), square()]),
            straight: build(
                SurfaceKind::Disk,
                vec![
                    PolylineStrand::new(pts(&[(10, 20), (110, 20), (110, -20), (10, -20)]), (0, 0), 0),
                    square(),
                ],
            ),
            sign,
        });
    }
    out
}

/// Torus diagrams whose over/under pattern is not layered: the finger strand
/// with every height pattern on its crossing segments.
pub fn woven_torus_corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for bits in 0..32u32 {
        let mut h = vec![0i64; 7];
        for (k, seg) in [1usize, 2, 3, 4, 5].iter().enumerate() {
            let over = bits >> k & 1 == 1;
            h[*seg] = match (seg, over) {
                (3 | 5, true) => 40,
                (3 | 5, false) => 20,
                (_, true) => 20,
                (_, false) => 0,
            };
        }
        if bits % 4 != 0 && bits % 7 != 3 {
            continue;
        }
        out.push(Case {
            name: format!("woven torus {bits:05b}"),
            diagram: build(
                SurfaceKind::Torus,
                vec![
                    PolylineStrand::with_heights(pts(&FINGER), (1, 0), h),
                    PolylineStrand::line(Point::grid(50, 3, 100), (0, 1), 10),
                    PolylineStrand::line(Point::grid(1, 75, 100), (1, 0), 30),
                ],
            ),
        });
    }
    out
}

/// Every diagram in the fixtures with at most `max_crossings` crossings.
pub fn oracle_corpus(max_crossings: usize) -> Vec<Case> {
    let mut out = pd_corpus();
    let mirrored: Vec<Case> = out
        .iter()
        .map(|c| Case {
            name: format!("{} mirrored", c.name),
            diagram: c.diagram.mirror(),
        })
        .collect();
    out.extend(mirrored);
    out.extend(torus_product_corpus());
    out.extend(woven_torus_corpus());
    for p in rii_pairs().into_iter().chain(riii_pairs()) {
        out.push(Case {
            name: format!("{} before", p.name),
            diagram: p.before,
        });
        out.push(Case {
            name: format!("{} after", p.name),
            diagram: p.after,
        });
    }
    for k in kink_pairs() {
        out.push(Case {
            name: k.name,
            diagram: k.kinked,
        });
    }
    out.retain(|c| c.diagram.num_crossings() <= max_crossings);
    out
}

/// Disk diagrams from the fixtures, all of which can be oriented.
pub fn disk_corpus() -> Vec<Case> {
    let mut out = pd_corpus();
    for p in rii_pairs().into_iter().chain(riii_pairs()) {
        if p.after.surface() == SurfaceKind::Disk {
            out.push(Case {
                name: format!("{} after", p.name),
                diagram: p.after,
            });
        }
    }
    for k in kink_pairs() {
        if k.kinked.surface() == SurfaceKind::Disk {
            out.push(Case {
                name: k.name,
                diagram: k.kinked,
            });
        }
    }
    out
}
