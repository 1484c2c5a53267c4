//! Admissible-disk enumeration for the mod-2 differential of a resolved plat
//! diagram.
//!
//! A disk is found by seeding at the positive corner of a chord (its crossing
//! event) and sweeping right to left. The cross-section of a disk over a
//! vertical slice is a list of intervals between strand positions; each
//! interval carries the letters collected along its upper boundary (read in
//! sweep order, which is counterclockwise) and its lower boundary (reversed at
//! assembly time). A right-cusp cap strictly inside an interval may either be
//! engulfed or split the interval in two (the knot's loop pokes into the disk
//! from the right); both continuations are explored. Closures happen at left
//! cusps matching an interval exactly; the quadrant signs at a crossing put
//! the positive pair east-west and the negative pair north-south, so corner
//! letters are only collected on the north and south sides.
//!
//! No single convention is trusted: the output is gated externally by d^2 = 0
//! and by golden tables.

use std::collections::HashMap;

use crate::diagram::{LagrangianDiagram, ResolvedEvent};
use crate::ncpoly::{Letter, Word};

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    /// Hard cap on explored states; exceeded means a reported error, never a
    /// silent truncation.
    pub max_states: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_states: 1_000_000,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("disk sweep exceeded the state budget of {0}")]
pub struct BudgetExceeded(pub u64);

#[derive(Clone)]
struct Interval {
    u: usize,
    v: usize,
    up: Vec<Letter>,
    low: Vec<Letter>,
}

#[derive(Clone)]
enum Segment {
    Open(Interval),
    Done(Vec<Letter>),
}

struct Ctx<'a> {
    events: &'a [ResolvedEvent],
    bp_gap: usize,
    bp_strand: usize,
    upper_exp: i32,
    max_states: u64,
    visited: u64,
    found: HashMap<Word, u64>,
}

impl Interval {
    fn contribution(mut self) -> Vec<Letter> {
        self.low.reverse();
        self.up.extend(self.low);
        self.up
    }
}

enum Opt {
    Keep(Interval),
    Close(Vec<Letter>),
    Split(Interval, Interval),
}

fn options_for(iv: &Interval, ev: &ResolvedEvent) -> Vec<Opt> {
    let (u, v) = (iv.u, iv.v);
    match *ev {
        ResolvedEvent::Cross { pos: j, chord } => {
            let letter = Letter::Gen(chord as u32);
            if u == j && v == j + 1 {
                // the east quadrant of a crossing carries a positive Reeb
                // sign; a disk pinching off here would have two positive
                // corners, so the branch dies
                return Vec::new();
            }
            let upper: Vec<(usize, bool)> = if u == j {
                vec![(j + 1, false)]
            } else if u == j + 1 {
                vec![(j, false), (j + 1, true)]
            } else {
                vec![(u, false)]
            };
            let lower: Vec<(usize, bool)> = if v == j + 1 {
                vec![(j, false)]
            } else if v == j {
                vec![(j + 1, false), (j, true)]
            } else {
                vec![(v, false)]
            };
            let mut out = Vec::new();
            for &(nu, ucorner) in &upper {
                for &(nv, vcorner) in &lower {
                    let mut next = iv.clone();
                    next.u = nu;
                    next.v = nv;
                    if ucorner {
                        next.up.push(letter);
                    }
                    if vcorner {
                        next.low.push(letter);
                    }
                    out.push(Opt::Keep(next));
                }
            }
            out
        }
        ResolvedEvent::Cup(j) => {
            if u == j && v == j + 1 {
                vec![Opt::Close(iv.clone().contribution())]
            } else if v < j {
                vec![Opt::Keep(iv.clone())]
            } else if u > j + 1 {
                let mut next = iv.clone();
                next.u -= 2;
                next.v -= 2;
                vec![Opt::Keep(next)]
            } else if u < j && v > j + 1 {
                let mut next = iv.clone();
                next.v -= 2;
                vec![Opt::Keep(next)]
            } else {
                // boundary arc runs into the dying cusp pair: no disk
                Vec::new()
            }
        }
        ResolvedEvent::Cap(j) => {
            let nu = if u >= j { u + 2 } else { u };
            let nv = if v >= j { v + 2 } else { v };
            let mut next = iv.clone();
            next.u = nu;
            next.v = nv;
            let mut out = vec![Opt::Keep(next)];
            if u < j && v >= j {
                // the cap sits strictly inside: the disk may leave a slit,
                // splitting the cross-section
                out.push(Opt::Split(
                    Interval {
                        u,
                        v: j,
                        up: iv.up.clone(),
                        low: Vec::new(),
                    },
                    Interval {
                        u: j + 1,
                        v: nv,
                        up: Vec::new(),
                        low: iv.low.clone(),
                    },
                ));
            }
            out
        }
    }
}

impl<'a> Ctx<'a> {
    fn lower_exp(&self) -> i32 {
        -self.upper_exp
    }

    fn sweep(&mut self, gap: usize, segs: Vec<Segment>) -> Result<(), BudgetExceeded> {
        self.visited += 1;
        if self.visited > self.max_states {
            return Err(BudgetExceeded(self.max_states));
        }
        if segs.iter().all(|s| matches!(s, Segment::Done(_))) {
            let letters: Vec<Letter> = segs
                .into_iter()
                .flat_map(|s| match s {
                    Segment::Done(w) => w,
                    Segment::Open(_) => unreachable!(),
                })
                .collect();
            *self.found.entry(Word::from_letters(letters)).or_insert(0) += 1;
            return Ok(());
        }
        if gap == 0 {
            return Ok(()); // open intervals ran off the left edge: not a disk
        }

        // basepoint letters for open intervals crossing the marked edge
        let mut segs = segs;
        if self.bp_gap == gap {
            for s in segs.iter_mut() {
                if let Segment::Open(iv) = s {
                    if iv.u == self.bp_strand {
                        iv.up.push(Letter::T(self.upper_exp));
                    }
                    if iv.v == self.bp_strand {
                        iv.low.push(Letter::T(self.lower_exp()));
                    }
                }
            }
        }

        let ev = &self.events[gap - 1];
        // per-segment option lists
        let mut option_sets: Vec<Vec<Opt>> = Vec::with_capacity(segs.len());
        for s in &segs {
            match s {
                Segment::Done(w) => option_sets.push(vec![Opt::Close(w.clone())]),
                Segment::Open(iv) => {
                    let opts = options_for(iv, ev);
                    if opts.is_empty() {
                        return Ok(()); // this branch dies
                    }
                    option_sets.push(opts);
                }
            }
        }

        // cartesian product over segments
        let mut indices = vec![0usize; option_sets.len()];
        loop {
            let mut next_segs: Vec<Segment> = Vec::with_capacity(segs.len() + 1);
            for (set, &i) in option_sets.iter().zip(indices.iter()) {
                match &set[i] {
                    Opt::Keep(iv) => next_segs.push(Segment::Open(iv.clone())),
                    Opt::Close(w) => next_segs.push(Segment::Done(w.clone())),
                    Opt::Split(a, b) => {
                        next_segs.push(Segment::Open(a.clone()));
                        next_segs.push(Segment::Open(b.clone()));
                    }
                }
            }
            self.sweep(gap - 1, next_segs)?;
            // increment multi-index
            let mut k = 0;
            loop {
                if k == indices.len() {
                    return Ok(());
                }
                indices[k] += 1;
                if indices[k] < option_sets[k].len() {
                    break;
                }
                indices[k] = 0;
                k += 1;
            }
        }
    }
}

/// All mod-2 disk words for the chord seeded at resolved event `seed`.
pub fn disk_words(
    lag: &LagrangianDiagram,
    seed: usize,
    config: SweepConfig,
) -> Result<Vec<Word>, BudgetExceeded> {
    let ResolvedEvent::Cross { pos: j, chord: _ } = lag.events[seed] else {
        panic!("seed must be a crossing event");
    };
    let upper_exp = if lag.basepoint_oriented_right { -1 } else { 1 };
    let mut ctx = Ctx {
        events: &lag.events,
        bp_gap: lag.basepoint_gap,
        bp_strand: lag.basepoint_strand,
        upper_exp,
        max_states: config.max_states,
        visited: 0,
        found: HashMap::new(),
    };

    // the standard cusp disk: the loop between this crossing and its cap
    if let Some(ResolvedEvent::Cap(cj)) = lag.events.get(seed + 1) {
        if *cj == j {
            let mut letters = Vec::new();
            if lag.basepoint_gap == seed + 1 {
                if lag.basepoint_strand == j {
                    letters.push(Letter::T(upper_exp));
                } else if lag.basepoint_strand == j + 1 {
                    letters.push(Letter::T(-upper_exp));
                }
            }
            *ctx.found.entry(Word::from_letters(letters)).or_insert(0) += 1;
        }
    }

    let seedi = Interval {
        u: j,
        v: j + 1,
        up: Vec::new(),
        low: Vec::new(),
    };
    ctx.sweep(seed, vec![Segment::Open(seedi)])?;

    let mut words: Vec<Word> = ctx
        .found
        .into_iter()
        .filter_map(|(w, count)| if count % 2 == 1 { Some(w) } else { None })
        .collect();
    words.sort();
    Ok(words)
}
