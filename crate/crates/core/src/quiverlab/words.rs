use std::collections::BTreeMap;

use super::datum::{bar, ADHMDatum};
use crate::error::{Error, Result};
use crate::exactmath::FMatrix;
use crate::rootdata::DynkinGraph;

/// A basis element of the extended path algebra: an idempotent `u_i`, or a
/// path `h_m ... h_1` from `tail` (the empty path is `[tail]`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Word {
    Idem(usize),
    Path { tail: usize, arrows: Vec<usize> },
}

impl Word {
    pub fn bracket(i: usize) -> Word {
        Word::Path {
            tail: i,
            arrows: Vec::new(),
        }
    }

    /// A path, arrows listed in the order they are traversed.
    pub fn path(graph: &DynkinGraph, tail: usize, arrows: Vec<usize>) -> Result<Word> {
        let mut at = tail;
        for &h in &arrows {
            let a = graph.arrows().get(h).ok_or(Error::NotComposable)?;
            if a.source != at {
                return Err(Error::NotComposable);
            }
            at = a.target;
        }
        Ok(Word::Path { tail, arrows })
    }

    pub fn tail(&self) -> usize {
        match self {
            Word::Idem(i) | Word::Path { tail: i, .. } => *i,
        }
    }

    pub fn head(&self, graph: &DynkinGraph) -> usize {
        match self {
            Word::Idem(i) => *i,
            Word::Path { tail, arrows } => {
                arrows.last().map_or(*tail, |&h| graph.arrows()[h].target)
            }
        }
    }

    pub fn path_len(&self) -> usize {
        match self {
            Word::Idem(_) => 0,
            Word::Path { arrows, .. } => arrows.len(),
        }
    }
}

/// A formal integer combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FElement(pub BTreeMap<Word, i64>);

impl FElement {
    pub fn word(w: Word) -> FElement {
        FElement([(w, 1)].into_iter().collect())
    }

    fn add_term(&mut self, w: Word, c: i64) {
        let e = self.0.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&w);
        }
    }
}

/// `f o f'`: paths multiply through `theta = sum eps(h) h hbar`, idempotents
/// act by gluing to the matching endpoint.
pub fn product(graph: &DynkinGraph, f: &Word, g: &Word) -> FElement {
    let mut out = FElement::default();
    match (f, g) {
        (Word::Idem(i), Word::Idem(j)) => {
            if i == j {
                out.add_term(f.clone(), 1);
            }
        }
        (Word::Idem(i), w) => {
            if w.head(graph) == *i {
                out.add_term(w.clone(), 1);
            }
        }
        (w, Word::Idem(i)) => {
            if w.tail() == *i {
                out.add_term(w.clone(), 1);
            }
        }
        (
            Word::Path {
                tail: tf,
                arrows: af,
            },
            Word::Path {
                tail: tg,
                arrows: ag,
            },
        ) => {
            let mid = g.head(graph);
            if *tf != mid {
                return out;
            }
            for h in graph.arrows_into(mid) {
                let mut arrows = ag.clone();
                arrows.push(bar(h));
                arrows.push(h);
                arrows.extend_from_slice(af);
                out.add_term(
                    Word::Path { tail: *tg, arrows },
                    graph.arrows()[h].epsilon as i64,
                );
            }
        }
    }
    out
}

impl ADHMDatum {
    fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for &x in &self.d {
            off.push(off.last().unwrap() + x);
        }
        off
    }

    /// The operator on `D = sum D_i` induced by a word.
    pub fn module_op(&self, w: &Word) -> Result<FMatrix> {
        let off = self.offsets();
        let total = *off.last().unwrap();
        let mut out = FMatrix::zeros(self.field, total, total);
        let (tail, head, block) = match w {
            Word::Idem(i) => (*i, *i, FMatrix::identity(self.field, self.d[*i])),
            Word::Path { tail, arrows } => {
                let head = Word::path(&self.graph, *tail, arrows.clone())?.head(&self.graph);
                let mut m = self.p[*tail].clone();
                for &h in arrows {
                    m = self.x[h].mul(&m);
                }
                (*tail, head, self.q[head].mul(&m))
            }
        };
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                out.set(off[head] + r, off[tail] + c, block.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn element_op(&self, e: &FElement) -> Result<FMatrix> {
        let total: usize = self.d.iter().sum();
        let mut out = FMatrix::zeros(self.field, total, total);
        for (w, &c) in &e.0 {
            out = out.add(&self.module_op(w)?.scale(self.field.from_int(c)));
        }
        Ok(out)
    }
}

/// Every word with path length at most `max_len`.
pub fn words_up_to(graph: &DynkinGraph, max_len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = (0..graph.rank()).map(Word::Idem).collect();
    let mut layer: Vec<(usize, Vec<usize>, usize)> =
        (0..graph.rank()).map(|i| (i, vec![], i)).collect();
    for len in 0..=max_len {
        out.extend(layer.iter().map(|(t, a, _)| Word::Path {
            tail: *t,
            arrows: a.clone(),
        }));
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (t, a, at) in &layer {
            for h in graph.arrows_out_of(*at) {
                let mut a2 = a.clone();
                a2.push(h);
                next.push((*t, a2, graph.arrows()[h].target));
            }
        }
        layer = next;
    }
    out
}
