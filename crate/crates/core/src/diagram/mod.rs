//! Combinatorial framed-link diagrams on the disk, annulus and torus.
//!
//! A crossing has four ports in counterclockwise order; the under-strand
//! occupies ports 0 and 2 and the over-strand ports 1 and 3. Arcs join two
//! ports and carry signed intersection counts with the fixed cut curves of
//! the surface. Blackboard framing is implicit.

use std::collections::HashMap;

use thiserror::Error;

pub mod geometry;
mod parse;
mod trace;
mod types;

pub use geometry::{build_product_diagram, PolylineLink, PolylineStrand, Point};
pub use parse::{parse_diagram, parse_diagram_with};
pub use trace::{classify_state, trace_state, PreparedDiagram, Smoothing, StateCurves};
pub use types::{normalize_class, Homology, Multicurve, SurfaceKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
    #[error("no surface declared")]
    MissingSurface,
    #[error("arc `{label}` is attached to {count} ports (expected 2)")]
    PortMismatch { label: String, count: usize },
    #[error("arc `{label}`: {got} counters given, {surface} arcs carry {expected}")]
    CounterArity {
        label: String,
        surface: SurfaceKind,
        expected: usize,
        got: usize,
    },
    #[error("counters given for arc `{0}`, which no crossing uses")]
    UnknownArc(String),
    #[error("duplicate crossing `{0}`")]
    DuplicateCrossing(String),
    #[error("counters for arc `{0}` given twice")]
    DuplicateArc(String),
    #[error("({0},{1}) is not a primitive class")]
    NotPrimitive(i64, i64),
    #[error("bad multicurve `{0}`")]
    BadMulticurve(String),
    #[error("crossing-free loops of classes {0:?} and {1:?} cannot be disjoint")]
    IncompatibleLoops(Homology, Homology),
    #[error("free loop with counters {0:?} is not an embedded circle")]
    InvalidLoop(Homology),
    #[error("surface mismatch: {0} vs {1}")]
    SurfaceMismatch(SurfaceKind, SurfaceKind),
    #[error("products of diagrams on the disk are disjoint unions; no product diagram is built")]
    DiskProduct,
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("equal heights at a crossing of strands {0} and {1}")]
    AmbiguousCrossing(usize, usize),
    #[error("state component with counters {0:?} is not primitive")]
    NonPrimitiveComponent(Homology),
    #[error("state has disjoint essential components of classes {0:?} and {1:?}")]
    IncompatibleComponents(Homology, Homology),
    #[error("crossing index {0} out of range")]
    NoSuchCrossing(usize),
    #[error("crossing `{0}` not found")]
    UnknownCrossing(String),
}

/// Which end of an arc sits at a port.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub crossing: usize,
    pub port: u8,
}

/// An edge of the four-valent graph. Counters are measured from tail to head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub label: String,
    pub tail: PortRef,
    pub head: PortRef,
    pub counters: Homology,
}

#[derive(Clone, Debug)]
pub struct Crossing {
    pub name: String,
    /// Arc attached at each port, counterclockwise from port 0.
    pub ports: [(usize, End); 4],
}

/// A framed-link diagram with blackboard framing.
#[derive(Clone, Debug)]
pub struct Diagram {
    surface: SurfaceKind,
    crossings: Vec<Crossing>,
    arcs: Vec<Arc>,
    loops: Vec<Homology>,
}

impl Diagram {
    pub fn empty(surface: SurfaceKind) -> Self {
        Self {
            surface,
            crossings: Vec::new(),
            arcs: Vec::new(),
            loops: Vec::new(),
        }
    }

    /// Crossing-free diagram made of the components of `m`.
    pub fn from_multicurve(surface: SurfaceKind, m: &Multicurve) -> Result<Self, DiagramError> {
        if let Some(s) = m.surface() {
            if s != surface {
                return Err(DiagramError::SurfaceMismatch(surface, s));
            }
        }
        let mut d = Self::empty(surface);
        d.loops = vec![m.class(); m.components() as usize];
        Ok(d)
    }

    /// Assembles a diagram from crossings (the arc end at each port) and
    /// arcs, checking that every arc has exactly one tail and one head and
    /// that free loops are embedded and pairwise disjoint.
    pub fn from_parts(
        surface: SurfaceKind,
        crossings: Vec<(String, [(usize, End); 4])>,
        arcs: Vec<(String, Homology)>,
        loops: Vec<Homology>,
    ) -> Result<Self, DiagramError> {
        let mut tails: Vec<Vec<PortRef>> = vec![Vec::new(); arcs.len()];
        let mut heads: Vec<Vec<PortRef>> = vec![Vec::new(); arcs.len()];
        let mut names = HashMap::new();
        for (ci, (name, ports)) in crossings.iter().enumerate() {
            if names.insert(name.clone(), ci).is_some() {
                return Err(DiagramError::DuplicateCrossing(name.clone()));
            }
            for (p, &(a, end)) in ports.iter().enumerate() {
                let r = PortRef {
                    crossing: ci,
                    port: p as u8,
                };
                let slot = match end {
                    End::Tail => tails.get_mut(a),
                    End::Head => heads.get_mut(a),
                };
                slot.ok_or_else(|| DiagramError::PortMismatch {
                    label: format!("#{a}"),
                    count: 1,
                })?
                .push(r);
            }
        }
        let mut out_arcs = Vec::with_capacity(arcs.len());
        for (((label, counters), t), h) in arcs.into_iter().zip(&tails).zip(&heads) {
            if t.len() != 1 || h.len() != 1 {
                return Err(DiagramError::PortMismatch {
                    label,
                    count: t.len() + h.len(),
                });
            }
            check_arity(surface, &label, counters)?;
            out_arcs.push(Arc {
                label,
                tail: t[0],
                head: h[0],
                counters,
            });
        }
        let out_crossings = crossings
            .into_iter()
            .map(|(name, ports)| Crossing { name, ports })
            .collect();
        for &l in &loops {
            check_arity(surface, "loop", l)?;
        }
        validate_loops(surface, &loops)?;
        Ok(Self {
            surface,
            crossings: out_crossings,
            arcs: out_arcs,
            loops,
        })
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Crossing-free components, by their counters.
    pub fn loops(&self) -> &[Homology] {
        &self.loops
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.loops.is_empty()
    }

    pub fn crossing_index(&self, name: &str) -> Option<usize> {
        self.crossings.iter().position(|c| c.name == name)
    }

    /// Port at the given end of an arc.
    pub fn arc_end(&self, arc: usize, end: End) -> PortRef {
        match end {
            End::Tail => self.arcs[arc].tail,
            End::Head => self.arcs[arc].head,
        }
    }

    /// Switches over and under at every crossing.
    pub fn mirror(&self) -> Diagram {
        let all: Vec<usize> = (0..self.crossings.len()).collect();
        self.switch_crossings(&all)
    }

    /// Switches over and under at the listed crossings. The ports rotate by
    /// one step so that the old over-strand lands on ports 0 and 2.
    pub fn switch_crossings(&self, which: &[usize]) -> Diagram {
        let mut d = self.clone();
        for &ci in which {
            let old = d.crossings[ci].ports;
            let mut new = old;
            for (p, slot) in new.iter_mut().enumerate() {
                *slot = old[(p + 1) % 4];
            }
            d.crossings[ci].ports = new;
            for (p, &(a, end)) in new.iter().enumerate() {
                let r = PortRef {
                    crossing: ci,
                    port: p as u8,
                };
                match end {
                    End::Tail => d.arcs[a].tail = r,
                    End::Head => d.arcs[a].head = r,
                }
            }
        }
        d
    }

    /// Smooths one crossing, splicing the arcs through it. Arcs that close up
    /// become free loops.
    pub fn smooth(&self, ci: usize, s: Smoothing) -> Result<Diagram, DiagramError> {
        let here = |r: PortRef| r.crossing == ci;
        let step = |arc: usize, forward: bool| -> (PortRef, Homology) {
            let a = &self.arcs[arc];
            if forward {
                (a.head, a.counters)
            } else {
                (a.tail, -a.counters)
            }
        };
        let mut used = vec![false; self.arcs.len()];
        let mut ports: Vec<[Option<(usize, End)>; 4]> = vec![[None; 4]; self.crossings.len()];
        let mut arcs = Vec::new();
        for a in 0..self.arcs.len() {
            for forward in [true, false] {
                let start = if forward {
                    self.arcs[a].tail
                } else {
                    self.arcs[a].head
                };
                if used[a] || here(start) {
                    continue;
                }
                let (mut cur, mut dir, mut total) = (a, forward, Homology::ZERO);
                let end = loop {
                    used[cur] = true;
                    let (far, h) = step(cur, dir);
                    total += h;
                    if !here(far) {
                        break far;
                    }
                    let (next, kind) = self.crossings[ci].ports[s.partner(far.port) as usize];
                    cur = next;
                    dir = kind == End::Tail;
                };
                let k = arcs.len();
                arcs.push((self.arcs[a].label.clone(), total));
                ports[start.crossing][start.port as usize] = Some((k, End::Tail));
                ports[end.crossing][end.port as usize] = Some((k, End::Head));
            }
        }
        let mut loops = self.loops.clone();
        for a in 0..self.arcs.len() {
            if used[a] {
                continue;
            }
            let (mut cur, mut dir, mut total) = (a, true, Homology::ZERO);
            loop {
                used[cur] = true;
                let (far, h) = step(cur, dir);
                total += h;
                let (next, kind) = self.crossings[ci].ports[s.partner(far.port) as usize];
                (cur, dir) = (next, kind == End::Tail);
                if cur == a && dir {
                    break;
                }
            }
            loops.push(total);
        }
        let crossings = self
            .crossings
            .iter()
            .zip(ports)
            .enumerate()
            .filter(|(i, _)| *i != ci)
            .map(|(_, (c, p))| {
                let p = p.map(|x| x.expect("every remaining port is reached"));
                (c.name.clone(), p)
            })
            .collect();
        Diagram::from_parts(self.surface, crossings, arcs, loops)
    }

    /// Rotates each crossing by a half turn where needed so that the port
    /// arrays are lexicographically minimal; a half turn is the same crossing.
    fn canonical(&self) -> Diagram {
        let mut d = self.clone();
        for ci in 0..d.crossings.len() {
            let ports = d.crossings[ci].ports;
            let rotated = [ports[2], ports[3], ports[0], ports[1]];
            if rotated < ports {
                d.crossings[ci].ports = rotated;
                for (p, &(a, end)) in rotated.iter().enumerate() {
                    let r = PortRef {
                        crossing: ci,
                        port: p as u8,
                    };
                    match end {
                        End::Tail => d.arcs[a].tail = r,
                        End::Head => d.arcs[a].head = r,
                    }
                }
            }
        }
        d
    }

    /// Sum of all arc and loop counters.
    pub fn total_counters(&self) -> Homology {
        self.arcs
            .iter()
            .map(|a| a.counters)
            .chain(self.loops.iter().copied())
            .fold(Homology::ZERO, |acc, h| acc + h)
    }
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.surface == b.surface
            && a.arcs == b.arcs
            && a.loops == b.loops
            && a.crossings.len() == b.crossings.len()
            && a
                .crossings
                .iter()
                .zip(&b.crossings)
                .all(|(x, y)| x.name == y.name && x.ports == y.ports)
    }
}

fn check_arity(surface: SurfaceKind, label: &str, h: Homology) -> Result<(), DiagramError> {
    let ok = match surface {
        SurfaceKind::Disk => h.is_zero(),
        SurfaceKind::Annulus => h.y == 0,
        SurfaceKind::Torus => true,
    };
    if ok {
        Ok(())
    } else {
        Err(DiagramError::CounterArity {
            label: label.to_string(),
            surface,
            expected: surface.counter_arity(),
            got: if h.y != 0 { 2 } else { 1 },
        })
    }
}

fn validate_loops(surface: SurfaceKind, loops: &[Homology]) -> Result<(), DiagramError> {
    let mut essential: Option<Homology> = None;
    for &h in loops {
        if h.is_zero() {
            continue;
        }
        let class = match surface {
            SurfaceKind::Disk => return Err(DiagramError::InvalidLoop(h)),
            SurfaceKind::Annulus if h.x.abs() == 1 => Homology::new(1, 0),
            SurfaceKind::Annulus => return Err(DiagramError::InvalidLoop(h)),
            SurfaceKind::Torus => {
                if num_integer::gcd(h.x, h.y) != 1 {
                    return Err(DiagramError::InvalidLoop(h));
                }
                let (p, q) = normalize_class(h.x, h.y);
                Homology::new(p, q)
            }
        };
        match essential {
            Some(e) if e != class => return Err(DiagramError::IncompatibleLoops(e, class)),
            _ => essential = Some(class),
        }
    }
    Ok(())
}

/// Incremental construction by arc labels, the shape of the text format.
///
/// Each arc label must be used at exactly two ports. An arc is directed from
/// its first use to its second, in order of crossing insertion and then port
/// position; counters are measured along that direction.
#[derive(Clone, Debug)]
pub struct DiagramBuilder {
    surface: SurfaceKind,
    crossings: Vec<(String, [String; 4])>,
    counters: Vec<(String, Homology)>,
    loops: Vec<Homology>,
}

impl DiagramBuilder {
    pub fn new(surface: SurfaceKind) -> Self {
        Self {
            surface,
            crossings: Vec::new(),
            counters: Vec::new(),
            loops: Vec::new(),
        }
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    /// Adds a crossing; labels are counterclockwise starting at the
    /// incoming under-strand.
    pub fn crossing(&mut self, name: impl Into<String>, labels: [&str; 4]) -> &mut Self {
        self.crossings
            .push((name.into(), labels.map(|s| s.to_string())));
        self
    }

    pub fn arc_counters(&mut self, label: impl Into<String>, counters: &[i64]) -> Result<&mut Self, DiagramError> {
        let label = label.into();
        let h = counters_to_homology(self.surface, &label, counters)?;
        if self.counters.iter().any(|(l, _)| *l == label) {
            return Err(DiagramError::DuplicateArc(label));
        }
        self.counters.push((label, h));
        Ok(self)
    }

    pub fn free_loop(&mut self, counters: &[i64]) -> Result<&mut Self, DiagramError> {
        let h = counters_to_homology(self.surface, "loop", counters)?;
        self.loops.push(h);
        Ok(self)
    }

    pub fn build(&self) -> Result<Diagram, DiagramError> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut uses: Vec<usize> = Vec::new();
        let mut arcs: Vec<(String, Homology)> = Vec::new();
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (name, labels) in &self.crossings {
            let mut ports = [(0usize, End::Tail); 4];
            for (slot, label) in ports.iter_mut().zip(labels) {
                let a = *index.entry(label.as_str()).or_insert_with(|| {
                    arcs.push((label.clone(), Homology::ZERO));
                    uses.push(0);
                    arcs.len() - 1
                });
                uses[a] += 1;
                let end = match uses[a] {
                    1 => End::Tail,
                    2 => End::Head,
                    n => {
                        return Err(DiagramError::PortMismatch {
                            label: label.clone(),
                            count: n,
                        })
                    }
                };
                *slot = (a, end);
            }
            crossings.push((name.clone(), ports));
        }
        if let Some(a) = uses.iter().position(|&n| n != 2) {
            return Err(DiagramError::PortMismatch {
                label: arcs[a].0.clone(),
                count: uses[a],
            });
        }
        for (label, h) in &self.counters {
            match index.get(label.as_str()) {
                Some(&i) => arcs[i].1 = *h,
                None => return Err(DiagramError::UnknownArc(label.clone())),
            }
        }
        Diagram::from_parts(self.surface, crossings, arcs, self.loops.clone())
    }
}

fn counters_to_homology(surface: SurfaceKind, label: &str, c: &[i64]) -> Result<Homology, DiagramError> {
    if c.len() != surface.counter_arity() {
        return Err(DiagramError::CounterArity {
            label: label.to_string(),
            surface,
            expected: surface.counter_arity(),
            got: c.len(),
        });
    }
    Ok(Homology::new(
        c.first().copied().unwrap_or(0),
        c.get(1).copied().unwrap_or(0),
    ))
}
