use super::InvariantError;
use crate::diagram::{Diagram, End, SurfaceKind};
use crate::rings::{expand_laurent, LaurentPolynomial, TruncatedSeries};
use crate::skein::{bracket_resolve_bounded, DEFAULT_MAX_CROSSINGS};
use crate::diagram::Multicurve;

/// A disk diagram with a direction on every arc. `forward[a]` says whether
/// arc `a` is traversed from its tail to its head.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedDiagram {
    diagram: Diagram,
    forward: Vec<bool>,
    components: Vec<Vec<usize>>,
}

impl OrientedDiagram {
    /// Orients each component so that it enters its first under-crossing at
    /// port 0, the planar-diagram convention; components that are never
    /// under keep their stored arc direction.
    pub fn new(diagram: Diagram) -> Result<Self, InvariantError> {
        if diagram.surface() != SurfaceKind::Disk {
            return Err(InvariantError::NotDisk(diagram.surface()));
        }
        let n = diagram.arcs().len();
        let mut component_of = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut relative = vec![true; n];
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut arcs = Vec::new();
            let (mut arc, mut fwd) = (start, true);
            loop {
                if component_of[arc] != usize::MAX {
                    if arc != start || !fwd {
                        return Err(InvariantError::InconsistentOrientation);
                    }
                    break;
                }
                component_of[arc] = id;
                relative[arc] = fwd;
                arcs.push(arc);
                let at = diagram.arc_end(arc, if fwd { End::Head } else { End::Tail });
                let (next, end) = diagram.crossings()[at.crossing].ports[(at.port as usize + 2) % 4];
                arc = next;
                fwd = end == End::Tail;
            }
            components.push(arcs);
        }
        let mut forward = relative.clone();
        for arcs in &components {
            let entry = arcs.iter().find_map(|&a| {
                let head = if relative[a] { End::Head } else { End::Tail };
                let at = diagram.arc_end(a, head);
                match at.port {
                    0 => Some(true),
                    2 => Some(false),
                    _ => None,
                }
            });
            if entry == Some(false) {
                for &a in arcs {
                    forward[a] = !relative[a];
                }
            }
        }
        Ok(Self {
            diagram,
            forward,
            components,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Reverses one component (crossing-free loops are not counted).
    pub fn reversed(&self, component: usize) -> Self {
        let mut o = self.clone();
        for &a in &o.components[component] {
            o.forward[a] = !o.forward[a];
        }
        o
    }

    /// Whether the strand through ports `p` and `p + 2` of `c` enters at `p`.
    fn enters_at(&self, c: usize, p: usize) -> bool {
        let (a, end) = self.diagram.crossings()[c].ports[p];
        (end == End::Head) == self.forward[a]
    }

    /// Right-hand sign of crossing `c`.
    pub fn crossing_sign(&self, c: usize) -> i64 {
        let under = if self.enters_at(c, 0) { 1 } else { -1 };
        let over = if self.enters_at(c, 3) { 1 } else { -1 };
        under * over
    }

    pub fn writhe(&self) -> i64 {
        (0..self.diagram.num_crossings()).map(|c| self.crossing_sign(c)).sum()
    }
}

pub fn writhe(d: &OrientedDiagram) -> i64 {
    d.writhe()
}

/// `(-A)^(-3w) <L>`, the framing-independent normalization with `t = -A`.
pub fn jones_laurent(d: &OrientedDiagram) -> Result<LaurentPolynomial, InvariantError> {
    let b = bracket_resolve_bounded(d.diagram(), DEFAULT_MAX_CROSSINGS)?;
    let bracket = b.coeff(&Multicurve::Empty).cloned().unwrap_or_else(LaurentPolynomial::zero);
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(bracket.shift(-3 * w as i32).scale(&sign.into()))
}

/// `J(e^h)` truncated at order `order`; equals `t^(-3w)` times the expanded
/// bracket with `t = e^(h/4)`.
pub fn jones(d: &OrientedDiagram, order: usize) -> Result<TruncatedSeries, InvariantError> {
    Ok(expand_laurent(&jones_laurent(d)?, order))
}
