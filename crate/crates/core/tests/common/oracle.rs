//! Naive recursive state sum. It walks raw ports and arcs of a diagram and
//! classifies the resulting curves itself; none of the library's smoothing,
//! tracing or ring code is used.

use std::collections::BTreeMap;

use kbsm::diagram::{Diagram, End, Homology, SurfaceKind};

/// Sparse Laurent polynomial in A, exponent to coefficient.
pub type Poly = BTreeMap<i32, i64>;

/// Curve key: `(class, count)` with `class = (0, 0)` meaning empty.
pub type CurveKey = ((i64, i64), u32);

pub type OracleSum = BTreeMap<CurveKey, Poly>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn delta() -> Poly {
    Poly::from([(2, -1), (-2, -1)])
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Port a smoothing joins to `port`. Type A pairs (0,1),(2,3); type B pairs
/// (0,3),(1,2).
fn joined(port: usize, a_type: bool) -> usize {
    const A: [usize; 4] = [1, 0, 3, 2];
    const B: [usize; 4] = [3, 2, 1, 0];
    if a_type {
        A[port]
    } else {
        B[port]
    }
}

fn classify(surface: SurfaceKind, curves: &[(i64, i64)]) -> (u32, CurveKey) {
    let mut trivial = 0;
    let mut class = None;
    let mut count = 0;
    for &(x, y) in curves {
        if x == 0 && y == 0 {
            trivial += 1;
            continue;
        }
        assert!(surface != SurfaceKind::Disk, "essential curve on the disk");
        assert_eq!(gcd(x, y), 1, "non-primitive component ({x},{y})");
        let c = if x > 0 || (x == 0 && y > 0) { (x, y) } else { (-x, -y) };
        if surface == SurfaceKind::Annulus {
            assert_eq!(c, (1, 0));
        }
        match class {
            None => class = Some(c),
            Some(prev) => assert_eq!(prev, c, "non-parallel components"),
        }
        count += 1;
    }
    (trivial, (class.unwrap_or((0, 0)), count))
}

fn leaf(d: &Diagram, states: &[bool], out: &mut OracleSum) {
    let crossings = d.crossings();
    let arcs = d.arcs();
    let mut seen = vec![[false; 4]; crossings.len()];
    let mut curves: Vec<(i64, i64)> = d.loops().iter().map(|h| (h.x, h.y)).collect();
    for c0 in 0..crossings.len() {
        for p0 in 0..4 {
            if seen[c0][p0] {
                continue;
            }
            let (mut c, mut p) = (c0, p0);
            let mut total = Homology::new(0, 0);
            loop {
                seen[c][p] = true;
                let (arc, end) = crossings[c].ports[p];
                let a = &arcs[arc];
                let far = match end {
                    End::Tail => {
                        total += a.counters;
                        a.head
                    }
                    End::Head => {
                        total += -a.counters;
                        a.tail
                    }
                };
                c = far.crossing;
                let q = far.port as usize;
                seen[c][q] = true;
                p = joined(q, states[c]);
                if c == c0 && p == p0 {
                    break;
                }
            }
            curves.push((total.x, total.y));
        }
    }
    let (trivial, key) = classify(d.surface(), &curves);
    let a_count = states.iter().filter(|s| **s).count() as i32;
    let mut w = Poly::from([(2 * a_count - states.len() as i32, 1)]);
    for _ in 0..trivial {
        w = poly_mul(&w, &delta());
    }
    let slot = out.entry(key).or_default();
    for (e, c) in w {
        *slot.entry(e).or_insert(0) += c;
    }
}

fn recurse(d: &Diagram, states: &mut Vec<bool>, out: &mut OracleSum) {
    if states.len() == d.num_crossings() {
        leaf(d, states, out);
        return;
    }
    for choice in [true, false] {
        states.push(choice);
        recurse(d, states, out);
        states.pop();
    }
}

pub fn oracle_bracket(d: &Diagram) -> OracleSum {
    let mut out = OracleSum::new();
    recurse(d, &mut Vec::new(), &mut out);
    for p in out.values_mut() {
        p.retain(|_, c| *c != 0);
    }
    out.retain(|_, p| !p.is_empty());
    out
}

/// Writhe of a disk PD code read off its labels: edges are numbered along
/// the orientation, so the over-strand exits on the label after it enters.
pub fn pd_writhe(code: &[[i64; 4]]) -> i64 {
    let n = 2 * code.len() as i64;
    code.iter()
        .map(|&[_, j, _, l]| {
            if (j - l).rem_euclid(n) == 1 {
                1
            } else if (l - j).rem_euclid(n) == 1 {
                -1
            } else {
                panic!("labels do not follow the orientation")
            }
        })
        .sum()
}

pub fn parse_pd(code: &str) -> Vec<[i64; 4]> {
    code.split(';')
        .map(|x| {
            let inner = x.trim().trim_start_matches("X[").trim_end_matches(']');
            let v: Vec<i64> = inner.split(',').map(|s| s.trim().parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}
