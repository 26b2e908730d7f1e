use super::{normalize_class, Diagram, DiagramError, End, Homology, Multicurve, SurfaceKind};

/// Smoothing of a single crossing. `A` joins ports (0,1) and (2,3),
/// `B` joins (0,3) and (1,2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    /// Port joined to `port` by this smoothing.
    #[inline]
    pub fn partner(self, port: u8) -> u8 {
        match self {
            Smoothing::A => port ^ 1,
            Smoothing::B => 3 - port,
        }
    }
}

/// Embedded components left after smoothing every crossing, each with its
/// total counters (the sign of a component's counters is arbitrary).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCurves {
    pub surface: SurfaceKind,
    pub components: Vec<Homology>,
}

/// Flat arrays for fast repeated tracing. Smoothing choices are bitmasks:
/// bit `i` set means crossing `i` takes the `B` smoothing.
#[derive(Clone, Debug)]
pub struct PreparedDiagram {
    surface: SurfaceKind,
    /// `port_arc[4c + p]` = (arc, leaves-forward) for the arc at port p of crossing c.
    port_arc: Vec<(u32, bool)>,
    /// `arc_head[a]` / `arc_tail[a]` = 4c + p.
    arc_head: Vec<u32>,
    arc_tail: Vec<u32>,
    counters: Vec<Homology>,
    loops: Vec<Homology>,
}

impl PreparedDiagram {
    pub fn new(d: &Diagram) -> Self {
        let mut port_arc = Vec::with_capacity(4 * d.num_crossings());
        for c in d.crossings() {
            for &(a, end) in &c.ports {
                port_arc.push((a as u32, end == End::Tail));
            }
        }
        let flat = |r: super::PortRef| 4 * r.crossing as u32 + r.port as u32;
        Self {
            surface: d.surface(),
            port_arc,
            arc_head: d.arcs().iter().map(|a| flat(a.head)).collect(),
            arc_tail: d.arcs().iter().map(|a| flat(a.tail)).collect(),
            counters: d.arcs().iter().map(|a| a.counters).collect(),
            loops: d.loops().to_vec(),
        }
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    pub fn num_crossings(&self) -> usize {
        self.port_arc.len() / 4
    }

    /// Traces every component of the state `mask`, calling `sink` with its
    /// total counters. `visited` is scratch space reused across calls.
    #[inline]
    pub fn for_each_component(&self, mask: u64, visited: &mut Vec<bool>, mut sink: impl FnMut(Homology)) {
        let n_arcs = self.counters.len();
        visited.clear();
        visited.resize(n_arcs, false);
        for start in 0..n_arcs {
            if visited[start] {
                continue;
            }
            let mut acc = Homology::ZERO;
            let mut arc = start;
            let mut forward = true;
            loop {
                visited[arc] = true;
                let h = self.counters[arc];
                let arrive = if forward {
                    acc += h;
                    self.arc_head[arc]
                } else {
                    acc += -h;
                    self.arc_tail[arc]
                };
                let crossing = arrive / 4;
                let port = (arrive % 4) as u8;
                let smoothing = if mask >> crossing & 1 == 1 {
                    Smoothing::B
                } else {
                    Smoothing::A
                };
                let leave = 4 * crossing + smoothing.partner(port) as u32;
                let (next, fwd) = self.port_arc[leave as usize];
                arc = next as usize;
                forward = fwd;
                if arc == start {
                    debug_assert!(forward, "component re-entered its first arc backwards");
                    break;
                }
            }
            sink(acc);
        }
        for &l in &self.loops {
            sink(l);
        }
    }

    /// Classifies the state `mask` directly, without materializing the
    /// component list: returns (number of trivial circles, multicurve).
    pub fn resolve(&self, mask: u64, visited: &mut Vec<bool>) -> Result<(u32, Multicurve), DiagramError> {
        let mut acc = Classifier::new(self.surface);
        let mut err = None;
        self.for_each_component(mask, visited, |h| {
            if err.is_none() {
                if let Err(e) = acc.push(h) {
                    err = Some(e);
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(acc.finish()),
        }
    }
}

struct Classifier {
    surface: SurfaceKind,
    trivial: u32,
    class: Option<Homology>,
    essential: u32,
}

impl Classifier {
    fn new(surface: SurfaceKind) -> Self {
        Self {
            surface,
            trivial: 0,
            class: None,
            essential: 0,
        }
    }

    fn push(&mut self, h: Homology) -> Result<(), DiagramError> {
        if h.is_zero() {
            self.trivial += 1;
            return Ok(());
        }
        let class = match self.surface {
            SurfaceKind::Disk => return Err(DiagramError::NonPrimitiveComponent(h)),
            SurfaceKind::Annulus => {
                if h.x.abs() != 1 || h.y != 0 {
                    return Err(DiagramError::NonPrimitiveComponent(h));
                }
                Homology::new(1, 0)
            }
            SurfaceKind::Torus => {
                if num_integer::gcd(h.x, h.y) != 1 {
                    return Err(DiagramError::NonPrimitiveComponent(h));
                }
                let (p, q) = normalize_class(h.x, h.y);
                Homology::new(p, q)
            }
        };
        match self.class {
            Some(c) if c != class => return Err(DiagramError::IncompatibleComponents(c, class)),
            _ => self.class = Some(class),
        }
        self.essential += 1;
        Ok(())
    }

    fn finish(self) -> (u32, Multicurve) {
        let m = match (self.surface, self.class) {
            (_, None) => Multicurve::Empty,
            (SurfaceKind::Annulus, Some(_)) => Multicurve::Core { n: self.essential },
            (_, Some(c)) => Multicurve::Torus {
                p: c.x,
                q: c.y,
                m: self.essential,
            },
        };
        (self.trivial, m)
    }
}

/// Smooths every crossing as chosen and traces the resulting components.
pub fn trace_state(d: &Diagram, choice: &[Smoothing]) -> Result<StateCurves, DiagramError> {
    if choice.len() != d.num_crossings() {
        return Err(DiagramError::NoSuchCrossing(choice.len().min(d.num_crossings())));
    }
    let mut components = Vec::new();
    let mut visited = Vec::new();
    let prepared = PreparedDiagram::new(d);
    // choices beyond 64 crossings go through the slow path
    if choice.len() <= 64 {
        let mask = choice
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, s)| if *s == Smoothing::B { m | 1 << i } else { m });
        prepared.for_each_component(mask, &mut visited, |h| components.push(h));
    } else {
        components = trace_slow(d, choice);
    }
    Ok(StateCurves {
        surface: d.surface(),
        components,
    })
}

fn trace_slow(d: &Diagram, choice: &[Smoothing]) -> Vec<Homology> {
    let mut out = Vec::new();
    let mut visited = vec![false; d.arcs().len()];
    for start in 0..d.arcs().len() {
        if visited[start] {
            continue;
        }
        let (mut arc, mut forward, mut acc) = (start, true, Homology::ZERO);
        loop {
            visited[arc] = true;
            let a = &d.arcs()[arc];
            let at = if forward {
                acc += a.counters;
                a.head
            } else {
                acc += -a.counters;
                a.tail
            };
            let port = choice[at.crossing].partner(at.port);
            let (next, end) = d.crossings()[at.crossing].ports[port as usize];
            arc = next;
            forward = end == End::Tail;
            if arc == start {
                break;
            }
        }
        out.push(acc);
    }
    out.extend_from_slice(d.loops());
    out
}

/// Counts trivial components and identifies the multicurve formed by the
/// essential ones.
pub fn classify_state(s: &StateCurves) -> Result<(u32, Multicurve), DiagramError> {
    let mut c = Classifier::new(s.surface);
    for &h in &s.components {
        c.push(h)?;
    }
    Ok(c.finish())
}
