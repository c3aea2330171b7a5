//! Permutation groups with a base and strong generating set.
//!
//! Groups are built eagerly by deterministic Schreier-Sims: the base is the
//! requested prefix followed by first moved points of the residues that need
//! a new level. Once built a [`PermGroup`] is immutable, so it is `Send + Sync`
//! and can be shared across workers.

mod coset;
mod lattice;

pub use coset::{core, coset_action, CosetAction};
pub use lattice::{
    are_conjugate_subgroups, corefree_subgroups_of_index, corefree_subgroups_of_index_plain,
    normal_hall_subgroups, subgroups_up_to_conjugacy, ElementTable, SubgroupClass,
    DEFAULT_ORDER_BOUND,
};

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x` (and its inverse).
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn build(degree: usize, base_point: usize, gens: Vec<Permutation>) -> Level {
        let mut transversal: Vec<Option<(Permutation, Permutation)>> = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base_point] = Some((id.clone(), id));
        let mut orbit = vec![base_point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for s in &gens {
                let y = s.image(x);
                if transversal[y].is_none() {
                    let u = transversal[x].as_ref().unwrap().0.then(s);
                    let ui = u.inverse();
                    transversal[y] = Some((u, ui));
                    orbit.push(y);
                }
            }
            i += 1;
        }
        Level {
            base_point,
            gens,
            orbit,
            transversal,
        }
    }
}

/// A permutation group given by generators, with its stabiliser chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        Self::with_base(degree, gens, &[])
    }

    /// Builds the group with a base beginning with `base_prefix`.
    pub fn with_base(
        degree: usize,
        gens: Vec<Permutation>,
        base_prefix: &[usize],
    ) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        for &b in base_prefix {
            if b >= degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
        }
        let mut uniq: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        let levels = schreier_sims(degree, &uniq, base_prefix);
        Ok(PermGroup {
            degree,
            gens: uniq,
            levels,
        })
    }

    /// The symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        if degree >= 3 {
            let cyc: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cyc]).unwrap());
        }
        PermGroup::new(degree, gens).unwrap()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// All strong generators (the generators of the first level).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(level.base_point);
            match &level.transversal[b] {
                None => return (h, l),
                Some((_, ui)) => h = h.then(ui),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g, 0).0.is_identity()
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(orbit_of(self.degree, &self.gens, point))
    }

    /// Orbits in order of least element, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.gens)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || orbit_of(self.degree, &self.gens, 0).len() == self.degree
    }

    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// Subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        if self.levels.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        let mut prefix: Vec<usize> = Vec::new();
        for &p in points {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        let rebased = self.rebased(&prefix)?;
        let start = prefix.len().min(rebased.levels.len());
        let levels: Vec<Level> = rebased.levels[start..].to_vec();
        let gens = levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        Ok(PermGroup {
            degree: self.degree,
            gens,
            levels,
        })
    }

    /// Same group, chain rebuilt with a base starting with `prefix`.
    pub fn rebased(&self, prefix: &[usize]) -> Result<PermGroup> {
        let base = self.base();
        if base.len() >= prefix.len() && base[..prefix.len()] == *prefix {
            return Ok(self.clone());
        }
        let mut g = PermGroup::with_base(self.degree, self.strong_generators().to_vec(), prefix)?;
        g.gens = self.gens.clone();
        Ok(g)
    }

    /// Every element, in a deterministic order. Fails above `bound`.
    pub fn elements(&self, bound: u128) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > bound {
            return Err(Error::OrderBoundExceeded { order, bound });
        }
        let mut out = vec![Permutation::identity(self.degree)];
        // g = u_{r-1} ... u_1 u_0: extend from the deepest level upwards.
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for x in &level.orbit {
                let u = &level.transversal[*x].as_ref().unwrap().0;
                for h in &out {
                    next.push(h.then(u));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Smallest normal subgroup of `self` containing `perms`.
    pub fn normal_closure(&self, perms: &[Permutation]) -> PermGroup {
        let mut gens: Vec<Permutation> = perms.iter().filter(|p| !p.is_identity()).cloned().collect();
        let mut group = PermGroup::new(self.degree, gens.clone()).unwrap();
        let mut queue: VecDeque<Permutation> = gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for s in &self.gens {
                let y = x.conjugate_by(s);
                if !group.contains(&y) {
                    gens.push(y.clone());
                    group = PermGroup::new(self.degree, gens.clone()).unwrap();
                    queue.push_back(y);
                }
            }
        }
        group
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Restriction of the action to an invariant point set, relabelled to
    /// `0..points.len()` in the given order.
    pub fn restrict_to(&self, points: &[usize]) -> Result<PermGroup> {
        let mut pos = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            pos[p] = i;
        }
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut images = Vec::with_capacity(points.len());
            for &p in points {
                let q = pos[g.image(p)];
                if q == usize::MAX {
                    return Err(Error::BadParameter("point set is not invariant".into()));
                }
                images.push(q);
            }
            gens.push(Permutation::from_images(images)?);
        }
        PermGroup::new(points.len(), gens)
    }
}

/// `<perms>` as a permutation group of the given degree.
pub fn generated_subgroup(degree: usize, perms: &[Permutation]) -> Result<PermGroup> {
    PermGroup::new(degree, perms.to_vec())
}

/// True when `h` is all of `g` (orders compared after building chains).
pub fn is_whole_group(g: &PermGroup, h: &PermGroup) -> bool {
    h.order() == g.order() && h.is_subgroup_of(g)
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit.sort_unstable();
    orbit
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if !seen[p] {
            let o = orbit_of(degree, gens, p);
            for &x in &o {
                seen[x] = true;
            }
            out.push(o);
        }
    }
    out
}

fn schreier_sims(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> Vec<Level> {
    if gens.is_empty() {
        return Vec::new();
    }
    let mut base: Vec<usize> = Vec::new();
    for &b in base_prefix {
        if !base.contains(&b) {
            base.push(b);
        }
    }
    let mut strong: Vec<Permutation> = gens.to_vec();
    for g in &strong {
        if base.iter().all(|&b| g.image(b) == b) {
            base.push(g.first_moved_point().unwrap());
        }
    }
    let fixing = |strong: &[Permutation], base: &[usize], l: usize| -> Vec<Permutation> {
        strong
            .iter()
            .filter(|g| base[..l].iter().all(|&b| g.image(b) == b))
            .cloned()
            .collect()
    };
    let mut levels: Vec<Level> = (0..base.len())
        .map(|l| Level::build(degree, base[l], fixing(&strong, &base, l)))
        .collect();
    let chain_strip = |levels: &[Level], g: &Permutation, from: usize| -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in levels.iter().enumerate().skip(from) {
            let b = h.image(level.base_point);
            match &level.transversal[b] {
                None => return (h, l),
                Some((_, ui)) => h = h.then(ui),
            }
        }
        (h, levels.len())
    };

    let mut i = levels.len() as isize - 1;
    'outer: while i >= 0 {
        let li = i as usize;
        let level = &levels[li];
        for &x in &level.orbit {
            let ux = &level.transversal[x].as_ref().unwrap().0;
            for s in &level.gens {
                let y = s.image(x);
                let uyi = &level.transversal[y].as_ref().unwrap().1;
                let h = ux.then(s).then(uyi);
                if h.is_identity() {
                    continue;
                }
                let (r, j) = chain_strip(&levels, &h, li + 1);
                if r.is_identity() {
                    continue;
                }
                if j == levels.len() {
                    base.push(r.first_moved_point().unwrap());
                    levels.push(Level::build(degree, base[j], Vec::new()));
                }
                strong.push(r);
                for l in li + 1..=j {
                    levels[l] = Level::build(degree, base[l], fixing(&strong, &base, l));
                }
                i = j as isize;
                continue 'outer;
            }
        }
        i -= 1;
    }
    levels
}
