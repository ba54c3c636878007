//! Certified complex embeddings: root isolation, ordering by modulus with
//! proven ties, Mahler measure and heights.

mod conjugates;
mod heights;
mod isolate;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::ball::{BallJson, CInterval, ComplexBall, Dyadic, Interval};
use crate::bounds::log2_gs_constant;
use crate::error::{Error, Result};
use crate::exact::{IntPoly, Integer};
use isolate::{certify, isolate_at, starting_points, Approx};

pub use conjugates::{conjugate_boxes, element_conjugates, log_abs_conjugates, ElementConjugates};
pub use heights::{
    check_two_conjugates_real, house, log_height, log_star, mahler_measure, mahler_measure_of, naive_height, LemmaPart,
    LogStarValue, TwoRealReport,
};

/// Working precision and the cap up to which certification may escalate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub bits: u32,
    pub max_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { bits: 128, max_bits: 4096 }
    }
}

impl Precision {
    pub fn new(bits: u32, max_bits: u32) -> Result<Self> {
        if bits < 32 || max_bits < bits {
            return Err(Error::InvalidArgument(format!(
                "precision must satisfy 32 <= bits <= max_bits (got {bits}, {max_bits})"
            )));
        }
        Ok(Precision { bits, max_bits })
    }

    fn next(&self, current: u32, hint: u32) -> Option<u32> {
        if current >= self.max_bits {
            return None;
        }
        Some(current.saturating_mul(2).max(hint).min(self.max_bits))
    }
}

/// The roots of a squarefree integer polynomial as disjoint certified discs,
/// sorted by modulus (ascending), with the partition into runs of equal
/// modulus proven.
///
/// Position `k` in every per-root vector refers to the `k`-th smallest modulus.
#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    poly: IntPoly,
    balls: Vec<ComplexBall>,
    order: Vec<usize>,
    tie_groups: Vec<Vec<usize>>,
    group_of: Vec<usize>,
    real_flags: Vec<bool>,
    conj: Vec<usize>,
    moduli: Vec<Interval>,
    prec: u32,
    config: Precision,
}

impl EmbeddingSet {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.balls.len()
    }

    pub fn balls(&self) -> &[ComplexBall] {
        &self.balls
    }

    pub fn ball(&self, k: usize) -> &ComplexBall {
        &self.balls[k]
    }

    /// Box enclosure of the `k`-th root at the set's precision.
    pub fn root(&self, k: usize) -> CInterval {
        self.balls[k].to_cinterval(self.prec + 32)
    }

    /// `order[k]` is the index, in the isolation output, of the `k`-th root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Runs of positions with proven equal modulus, ascending.
    pub fn tie_groups(&self) -> &[Vec<usize>] {
        &self.tie_groups
    }

    pub fn group_of(&self, k: usize) -> usize {
        self.group_of[k]
    }

    pub fn same_modulus(&self, i: usize, j: usize) -> bool {
        self.group_of[i] == self.group_of[j]
    }

    pub fn real_flags(&self) -> &[bool] {
        &self.real_flags
    }

    pub fn is_real(&self, k: usize) -> bool {
        self.real_flags[k]
    }

    /// Position of the complex conjugate of root `k` (itself when real).
    pub fn conjugate_of(&self, k: usize) -> usize {
        self.conj[k]
    }

    pub fn moduli(&self) -> &[Interval] {
        &self.moduli
    }

    pub fn modulus(&self, k: usize) -> &Interval {
        &self.moduli[k]
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn config(&self) -> Precision {
        self.config
    }

    /// Number of real roots and of complex-conjugate pairs.
    pub fn signature(&self) -> (usize, usize) {
        let r1 = self.real_flags.iter().filter(|&&r| r).count();
        (r1, (self.degree() - r1) / 2)
    }

    pub fn balls_json(&self) -> Vec<BallJson> {
        self.balls.iter().map(ComplexBall::to_json).collect()
    }

    /// Same roots, same positions, recomputed at `bits` of precision.
    pub fn refine_to(&self, bits: u32) -> Result<EmbeddingSet> {
        if bits <= self.prec {
            return Ok(self.clone());
        }
        let mut z: Vec<Approx> = self.balls.iter().map(|b| Approx::new(b.re.clone(), b.im.clone())).collect();
        let mut prec = bits;
        loop {
            if let Some(balls) = isolate_at(&self.poly, &mut z, prec) {
                if let Some(out) = self.adopt(balls, prec) {
                    return Ok(out);
                }
            }
            let cfg = Precision { bits: prec, max_bits: self.config.max_bits.max(bits) };
            match cfg.next(prec, 0) {
                Some(p) => prec = p,
                None => return Err(Error::precision(prec, "refining root discs")),
            }
        }
    }

    fn adopt(&self, fresh: Vec<ComplexBall>, prec: u32) -> Option<EmbeddingSet> {
        // the root inside a fresh disc lies in some old disc, so a fresh disc
        // meeting exactly one old disc holds that old disc's root
        let mut slot: Vec<Option<ComplexBall>> = vec![None; self.balls.len()];
        for b in fresh {
            let h = hits(&self.balls, &b);
            if h.len() != 1 || slot[h[0]].is_some() {
                return None;
            }
            slot[h[0]] = Some(b);
        }
        let mut balls = Vec::with_capacity(slot.len());
        for (k, b) in slot.into_iter().enumerate() {
            let b = b?;
            balls.push(if self.real_flags[k] { onto_real_axis(&b) } else { b });
        }
        let moduli = balls.iter().map(|b| b.modulus(prec)).collect();
        Some(EmbeddingSet { balls, moduli, prec, ..self.clone() })
    }
}

fn onto_real_axis(b: &ComplexBall) -> ComplexBall {
    ComplexBall::new(b.re.clone(), Dyadic::zero(), b.rad.add(&b.im.abs()))
}

/// Certified discs for the roots of a squarefree polynomial, in no
/// particular order, with the precision that was needed.
pub fn isolate_balls(p: &IntPoly, cfg: Precision) -> Result<(Vec<ComplexBall>, u32)> {
    check_input(p)?;
    let mut z = starting_points(p);
    let mut prec = cfg.bits;
    loop {
        if let Some(b) = isolate_at(p, &mut z, prec) {
            return Ok((b, prec));
        }
        match cfg.next(prec, 0) {
            Some(n) => prec = n,
            None => return Err(Error::precision(prec, "root discs overlap")),
        }
    }
}

fn check_input(p: &IntPoly) -> Result<()> {
    match p.degree() {
        None | Some(0) => Err(Error::InvalidArgument("polynomial of degree 0 has no roots".into())),
        _ if !p.is_squarefree() => Err(Error::NotSquarefree),
        _ => Ok(()),
    }
}

/// Isolates and orders the roots of `g`, proving which moduli coincide.
///
/// Equal moduli are established from the symmetries of the root set
/// (complex conjugation, and rotation by `k`-th roots of unity when
/// `g = X^e G(X^k)`), or else by the Gourdon-Salvy gap: once both modulus
/// enclosures are narrower than a quarter of the guaranteed gap between
/// distinct moduli, overlap forces equality.
pub fn isolate_roots(g: &IntPoly, cfg: Precision) -> Result<EmbeddingSet> {
    check_input(g)?;
    let mut z = starting_points(g);
    let mut prec = cfg.bits;
    loop {
        let mut hint = 0;
        if let Some(balls) = isolate_at(g, &mut z, prec) {
            match classify(g, balls, prec, cfg) {
                Ok(set) => return Ok(set),
                Err(h) => hint = h,
            }
        }
        match cfg.next(prec, hint) {
            Some(n) => prec = n,
            None => return Err(Error::precision(prec, "root moduli could not be ordered")),
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let r = self.find(p);
        self.0[i] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn hits(balls: &[ComplexBall], probe: &ComplexBall) -> Vec<usize> {
    (0..balls.len()).filter(|&j| balls[j].intersects(probe)).collect()
}

/// Turns certified discs into an ordered `EmbeddingSet`. On failure returns a
/// precision hint (0 when plain doubling is appropriate).
fn classify(g: &IntPoly, mut balls: Vec<ComplexBall>, prec: u32, cfg: Precision) -> Result<EmbeddingSet, u32> {
    let n = balls.len();
    // real roots and conjugate partners
    let mut real = vec![false; n];
    let mut conj = vec![usize::MAX; n];
    for i in 0..n {
        let mirrored = balls[i].conj();
        let h = hits(&balls, &mirrored);
        if h == [i] {
            real[i] = true;
            conj[i] = i;
        } else if h.len() == 1 && !balls[i].intersects(&mirrored) {
            conj[i] = h[0];
        } else {
            return Err(0);
        }
    }
    if (0..n).any(|i| conj[conj[i]] != i) {
        return Err(0);
    }
    for i in 0..n {
        if real[i] {
            balls[i] = onto_real_axis(&balls[i]);
        }
    }
    let moduli: Vec<Interval> = balls.iter().map(|b| b.modulus(prec)).collect();

    let mut uf = UnionFind((0..n).collect());
    for (i, &j) in conj.iter().enumerate() {
        uf.union(i, j);
    }
    let stride = g.exponent_stride();
    if stride >= 2 {
        let ep = prec + 32;
        let rotations: Vec<CInterval> = if stride == 2 {
            vec![CInterval::from_i64(-1, ep)]
        } else {
            let cyc = IntPoly::new({
                let mut c = vec![Integer::from(0); stride + 1];
                c[0] = Integer::from(-1);
                c[stride] = Integer::from(1);
                c
            });
            let mut w = starting_points(&cyc);
            let Some(units) = isolate_at(&cyc, &mut w, prec) else {
                return Err(0);
            };
            units.iter().map(|b| b.to_cinterval(ep)).collect()
        };
        for omega in &rotations {
            for i in 0..n {
                let image = (omega * &balls[i].to_cinterval(ep)).to_ball();
                let h = hits(&balls, &image);
                if h.len() != 1 {
                    return Err(0);
                }
                uf.union(i, h[0]);
            }
        }
    }

    // Gourdon-Salvy gap, log2 scale, with a one bit safety margin
    let log2_gap = if n >= 2 {
        let mut log2_m = crate::bounds::log2_abs_int(&g.leading());
        for m in &moduli {
            log2_m += m.hi_f64().max(1.0).log2();
        }
        let d = n as f64;
        let e = d * (d * d + 2.0 * d - 1.0) / 2.0;
        log2_gs_constant(n) - e * log2_m * (1.0 + 1e-12) - 1.0
    } else {
        0.0
    };
    let narrow = |iv: &Interval| match iv.width().log2_floor() {
        None => true,
        Some(l) => ((l + 1) as f64) < log2_gap - 2.0,
    };
    let needed = {
        let top = moduli.iter().map(|m| m.hi_f64().max(1.0).log2()).fold(0.0, f64::max);
        (-(log2_gap - 2.0) + top + 24.0).clamp(0.0, u32::MAX as f64 / 2.0) as u32
    };

    loop {
        let mut classes: Vec<(usize, Interval)> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (i, modulus) in moduli.iter().enumerate() {
            let r = uf.find(i);
            match classes.iter().position(|(root, _)| *root == r) {
                Some(c) => {
                    let joined = classes[c].1.intersect(modulus).ok_or(0u32)?;
                    classes[c].1 = joined;
                    members[c].push(i);
                }
                None => {
                    classes.push((r, modulus.clone()));
                    members.push(vec![i]);
                }
            }
        }
        let mut idx: Vec<usize> = (0..classes.len()).collect();
        idx.sort_by(|&a, &b| classes[a].1.lo().cmp(classes[b].1.lo()));
        let mut merged = false;
        for w in idx.windows(2) {
            let (a, b) = (&classes[w[0]].1, &classes[w[1]].1);
            if a.hi() < b.lo() {
                continue;
            }
            if narrow(a) && narrow(b) {
                uf.union(classes[w[0]].0, classes[w[1]].0);
                merged = true;
                break;
            }
            return Err(needed);
        }
        if merged {
            continue;
        }

        let mut order = Vec::with_capacity(n);
        let mut tie_groups = Vec::new();
        for &c in &idx {
            let mut m = members[c].clone();
            m.sort_by(|&a, &b| center_cmp(&balls[a], &balls[b]));
            tie_groups.push((order.len()..order.len() + m.len()).collect::<Vec<_>>());
            order.extend(m);
        }
        let mut pos = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let mut group_of = vec![0; n];
        for (gi, grp) in tie_groups.iter().enumerate() {
            for &k in grp {
                group_of[k] = gi;
            }
        }
        return Ok(EmbeddingSet {
            poly: g.clone(),
            balls: order.iter().map(|&i| balls[i].clone()).collect(),
            tie_groups,
            group_of,
            real_flags: order.iter().map(|&i| real[i]).collect(),
            conj: order.iter().map(|&i| pos[conj[i]]).collect(),
            moduli: order.iter().map(|&i| moduli[i].clone()).collect(),
            order,
            prec,
            config: cfg,
        });
    }
}

fn center_cmp(a: &ComplexBall, b: &ComplexBall) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Checks that a set of discs really isolates the roots of `p` at `prec`; used
/// by tests and the `checks` suite.
pub fn discs_are_isolating(p: &IntPoly, set: &EmbeddingSet) -> bool {
    let z: Vec<Approx> = set.balls().iter().map(|b| Approx::new(b.re.clone(), b.im.clone())).collect();
    certify(p, &z, set.prec()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(c: &[i64]) -> EmbeddingSet {
        isolate_roots(&IntPoly::from_i64s(c), Precision::default()).unwrap()
    }

    fn approx(iv: &Interval, v: f64, tol: f64) -> bool {
        (iv.to_f64() - v).abs() < tol
    }

    #[test]
    fn quartic_with_two_ties() {
        let e = iso(&[1, 0, -4, 0, 1]);
        assert_eq!(e.tie_groups(), &[vec![0, 1], vec![2, 3]]);
        assert!(e.real_flags().iter().all(|&r| r));
        assert!(approx(e.modulus(0), 0.5176380902, 1e-9));
        assert!(approx(e.modulus(3), 1.9318516526, 1e-9));
    }

    #[test]
    fn plastic_cubic() {
        let e = iso(&[-1, -1, 0, 1]);
        assert_eq!(e.tie_groups(), &[vec![0, 1], vec![2]]);
        assert_eq!(e.real_flags(), &[false, false, true]);
        assert_eq!(e.conjugate_of(0), 1);
        assert!(approx(e.modulus(2), 1.324717957, 1e-9));
        assert!(approx(e.modulus(0), 0.868836961, 1e-9));
        assert_eq!(e.signature(), (1, 1));
    }

    #[test]
    fn linear_polynomial() {
        let e = iso(&[-3, 1]);
        assert_eq!(e.degree(), 1);
        assert!(e.is_real(0));
        assert!(e.modulus(0).contains(&Dyadic::from_i64(3)));
    }

    #[test]
    fn rotation_symmetry_ties_cube_roots() {
        let e = iso(&[-2, 0, 0, 1]);
        assert_eq!(e.tie_groups(), &[vec![0, 1, 2]]);
        assert_eq!(e.signature(), (1, 1));
    }

    #[test]
    fn cyclotomic_ties_fall_back_to_gap() {
        // Φ7 has stride 1 and three conjugate pairs on the unit circle
        let e = iso(&[1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(e.tie_groups().len(), 1);
        let e12 = iso(&[1, 0, -1, 0, 1]);
        assert_eq!(e12.tie_groups().len(), 1);
    }

    #[test]
    fn rejects_repeated_roots() {
        let p = IntPoly::from_i64s(&[1, -2, 1]);
        assert!(matches!(isolate_roots(&p, Precision::default()), Err(Error::NotSquarefree)));
    }

    #[test]
    fn refinement_keeps_positions() {
        let e = iso(&[-1, -1, 0, 1]);
        let f = e.refine_to(512).unwrap();
        assert_eq!(f.prec(), 512);
        for k in 0..3 {
            assert!(e.ball(k).intersects(f.ball(k)));
        }
        assert!(f.ball(2).rad < e.ball(2).rad);
    }

    #[test]
    fn containment_of_zero() {
        let p = IntPoly::from_i64s(&[3, -7, 0, 2, 5]);
        let e = isolate_roots(&p, Precision::default()).unwrap();
        for k in 0..e.degree() {
            assert!(crate::ball::eval_poly(&p, &e.root(k)).contains_zero());
        }
        assert!(discs_are_isolating(&p, &e));
    }
}
