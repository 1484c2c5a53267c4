//! Built-in plat fronts for the maximal-tb twist knot family: the Lambda_n
//! presentation (clasp plus a cascade of cusped twists split between the two
//! sides of the diagram) and its variants for the other K_{z+,z-} labels.
//!
//! The Lambda_n front is pinned down by the golden requirement that its
//! resolved mod-2 differential reproduce the family table exactly; the other
//! twist fronts share the chord census, tb = 1, rotation 0, and the mod-2
//! grading, with the cascade split and a mirror flag varying by (z+, z-).

use crate::dga::DgaError;
use crate::diagram::{BasepointPos, Event, FrontDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistKnotParams {
    pub n: u32,
    pub z_plus: u32,
    pub z_minus: u32,
}

impl TwistKnotParams {
    pub fn lambda(n: u32) -> TwistKnotParams {
        let k = (n.max(1) - 1) / 2;
        TwistKnotParams {
            n,
            z_plus: k.div_ceil(2),
            z_minus: k / 2,
        }
    }

    pub fn validate(&self) -> Result<u32, DgaError> {
        let TwistKnotParams { n, z_plus, z_minus } = *self;
        if n < 3 || n % 2 == 0 {
            return Err(DgaError::BadParams {
                n,
                zp: z_plus,
                zm: z_minus,
            });
        }
        let k = (n - 1) / 2;
        if z_plus > k || z_minus > k {
            return Err(DgaError::BadParams {
                n,
                zp: z_plus,
                zm: z_minus,
            });
        }
        Ok(k)
    }

    pub fn is_lambda(&self) -> bool {
        *self == TwistKnotParams::lambda(self.n)
    }
}

/// The front of K_{z+,z-} (Lambda_n when the parameters are the Lambda ones).
///
/// The cascade split stays within one step of the balanced value: lopsided
/// splits are still valid fronts but their disk counts grow exponentially,
/// and nothing about the K-family claims depends on the drawing.
pub fn twist_knot_front(params: TwistKnotParams) -> Result<FrontDiagram, DgaError> {
    let k = params.validate()?;
    let n = params.n;
    let lo = k.saturating_sub(1).max(1);
    let hi = (k + 1).min(n - 2);
    let split = (params.z_plus + params.z_minus).clamp(lo, hi);
    let mirror = params.z_plus < params.z_minus;
    let front = cascade_front(n, split);
    Ok(if mirror { mirror_front(&front) } else { front })
}

pub fn lambda_front(n: u32) -> Result<FrontDiagram, DgaError> {
    let params = TwistKnotParams::lambda(n);
    let k = params.validate()?;
    Ok(cascade_front(n, k))
}

/// Event word for the clasp-plus-cascade presentation with `split` twist
/// crossings on the right-hand side (1 <= split <= n-2).
#[doc(hidden)]
pub fn cascade_front(n: u32, split: u32) -> FrontDiagram {
    let r = split as usize;
    let n = n as usize;
    let mut events: Vec<Event> = Vec::new();
    let mut names: Vec<Option<String>> = Vec::new();

    // far-left cups, stacked downward
    for i in 1..=(n - r + 1) {
        events.push(Event::LeftCusp(2 * i - 1));
        names.push(None);
    }
    // left twist crossings c_n, c_{n-1}, ..., c_{r+1}
    for i in 0..(n - r) {
        events.push(Event::Crossing(2 * i + 2));
        names.push(Some(format!("c{}", n - i)));
    }
    // left-side right cusps e_n, e_{n-1}, ..., e_{r+2}
    for j in 0..(n - r - 1) {
        events.push(Event::RightCusp(3));
        names.push(Some(format!("e{}", n - j)));
    }
    // middle cups feeding the right cascade
    for i in 0..r {
        events.push(Event::LeftCusp(2 * i + 3));
        names.push(None);
    }
    // clasp crossings a, b then the right twist crossings c_1..c_r
    events.push(Event::Crossing(2));
    names.push(Some("a".into()));
    events.push(Event::Crossing(2));
    names.push(Some("b".into()));
    for j in 1..=r {
        events.push(Event::Crossing(2 * j + 2));
        names.push(Some(format!("c{}", j)));
    }
    // right cusps e_1..e_{r+1}, then e_0 outermost with the basepoint on its loop
    for j in 1..=(r + 1) {
        events.push(Event::RightCusp(3));
        names.push(Some(format!("e{}", j)));
    }
    events.push(Event::RightCusp(1));
    names.push(Some("e0".into()));
    let basepoint = BasepointPos::CuspLoop {
        event: events.len() - 1,
        upper: true,
    };

    FrontDiagram {
        events,
        basepoint,
        names: Some(names),
    }
}

/// Reflect a front left-to-right: reverse the event word, swapping cusp kinds.
/// The basepoint moves to the loop of the last right cusp of the result.
fn mirror_front(front: &FrontDiagram) -> FrontDiagram {
    let mut events: Vec<Event> = Vec::new();
    let mut names: Vec<Option<String>> = Vec::new();
    let src_names = front.names.clone().unwrap_or_default();
    for (ev, name) in front.events.iter().zip(src_names.iter()).rev() {
        let mirrored = match *ev {
            Event::LeftCusp(i) => Event::RightCusp(i),
            Event::RightCusp(i) => Event::LeftCusp(i),
            Event::Crossing(i) => Event::Crossing(i),
        };
        events.push(mirrored);
        names.push(name.clone());
    }
    let last_cusp = events
        .iter()
        .rposition(|e| matches!(e, Event::RightCusp(_)))
        .expect("a closed front has right cusps");
    FrontDiagram {
        events,
        basepoint: BasepointPos::CuspLoop {
            event: last_cusp,
            upper: true,
        },
        names: Some(names),
    }
}
