use crate::ball::{CInterval, ComplexBall, Interval};
use crate::error::{Error, Result};
use crate::field::FieldElement;

use super::{hits, isolate_roots, EmbeddingSet, Precision};

/// Boxes containing `σ_j(x)` for every root position `j` of the field's
/// embedding set, by direct evaluation.
pub fn conjugate_boxes(x: &FieldElement, emb: &EmbeddingSet) -> Vec<CInterval> {
    let p = x.numerator_poly();
    (0..emb.degree())
        .map(|j| {
            let v = crate::ball::eval_poly(&p, &emb.root(j));
            let den = CInterval::from_int(x.den(), v.prec());
            v.checked_div(&den).expect("positive denominator")
        })
        .collect()
}

/// `log |σ_j(x)|` for every embedding; `x` must be nonzero.
pub fn log_abs_conjugates(x: &FieldElement, emb: &EmbeddingSet) -> Result<Vec<Interval>> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("logarithm of zero".into()));
    }
    let mut e = emb.clone();
    loop {
        let boxes = conjugate_boxes(x, &e);
        let logs: Option<Vec<Interval>> =
            boxes.iter().map(|b| b.norm_sqr().ln().ok().map(|l| l.mul_pow2(-1))).collect();
        if let Some(l) = logs {
            return Ok(l);
        }
        if e.prec() >= e.config().max_bits {
            return Err(Error::precision(e.prec(), "conjugate of a nonzero element encloses zero"));
        }
        e = e.refine_to((e.prec() * 2).min(e.config().max_bits))?;
    }
}

/// The conjugates of a field element, each identified with a root of its
/// minimal polynomial, so that equalities and modulus ties among them are
/// exact.
#[derive(Clone, Debug)]
pub struct ElementConjugates {
    sub: EmbeddingSet,
    root_of: Vec<usize>,
}

impl ElementConjugates {
    /// Number of field embeddings.
    pub fn degree(&self) -> usize {
        self.root_of.len()
    }

    /// Isolated roots of the minimal polynomial.
    pub fn roots(&self) -> &EmbeddingSet {
        &self.sub
    }

    /// Position, among the minimal polynomial's roots, of `σ_j(x)`.
    pub fn root_index(&self, j: usize) -> usize {
        self.root_of[j]
    }

    pub fn ball(&self, j: usize) -> &ComplexBall {
        self.sub.ball(self.root_of[j])
    }

    pub fn value(&self, j: usize) -> CInterval {
        self.sub.root(self.root_of[j])
    }

    pub fn modulus(&self, j: usize) -> &Interval {
        self.sub.modulus(self.root_of[j])
    }

    pub fn is_real(&self, j: usize) -> bool {
        self.sub.is_real(self.root_of[j])
    }

    pub fn equal(&self, j: usize, k: usize) -> bool {
        self.root_of[j] == self.root_of[k]
    }

    pub fn same_modulus(&self, j: usize, k: usize) -> bool {
        self.sub.same_modulus(self.root_of[j], self.root_of[k])
    }

    /// Embedding indices sorted by modulus, ascending; ties keep index order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.degree()).collect();
        idx.sort_by_key(|&j| (self.root_of[j], j));
        idx
    }

    /// Runs of sorted positions with equal modulus.
    pub fn sorted_groups(&self) -> Vec<Vec<usize>> {
        let s = self.sorted();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (pos, &j) in s.iter().enumerate() {
            match out.last_mut() {
                Some(g) if self.same_modulus(s[g[0]], j) => g.push(pos),
                _ => out.push(vec![pos]),
            }
        }
        out
    }
}

/// Matches each `σ_j(x)` to a root of the minimal polynomial of `x`.
pub fn element_conjugates(x: &FieldElement, emb: &EmbeddingSet) -> Result<ElementConjugates> {
    let minpoly = x.min_poly();
    let cfg = Precision { bits: emb.prec(), max_bits: emb.config().max_bits.max(emb.prec()) };
    let mut sub = isolate_roots(&minpoly, cfg)?;
    let mut e = emb.clone();
    loop {
        let boxes = conjugate_boxes(x, &e);
        let matched: Option<Vec<usize>> = boxes
            .iter()
            .map(|b| {
                let h = hits(sub.balls(), &b.to_ball());
                (h.len() == 1).then(|| h[0])
            })
            .collect();
        if let Some(root_of) = matched {
            return Ok(ElementConjugates { sub, root_of });
        }
        let p = e.prec().max(sub.prec());
        if p >= cfg.max_bits {
            return Err(Error::precision(p, "conjugates could not be matched to roots"));
        }
        let next = (p * 2).min(cfg.max_bits);
        e = e.refine_to(next)?;
        sub = sub.refine_to(next)?;
    }
}
