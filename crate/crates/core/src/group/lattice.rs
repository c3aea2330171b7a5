//! Conjugacy classes of subgroups of small permutation groups.
//!
//! Classes are grown by cyclic extension: a class representative `H` is
//! extended by elements `g` of its normaliser with `g^p in H` for a prime `p`,
//! giving `<H, g>` with `H` normal of prime index. Every soluble subgroup is
//! reached from the trivial group this way. The non-soluble residue is seeded
//! with the perfect subgroups generated by an involution and one further
//! element. All work is done on an explicit element table, so the ambient
//! order is bounded.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{coset_action, PermGroup};
use crate::error::{Error, Result};
use crate::perm::{gcd, Permutation};

/// Default bound on the order of a group whose elements are enumerated.
pub const DEFAULT_ORDER_BOUND: u128 = 100_000;

enum Index {
    /// Rank in the full symmetric group (degree at most 10).
    Dense(Vec<u32>),
    Hash(HashMap<Permutation, u32>),
}

/// All elements of a group, indexed for constant-time lookup.
pub struct ElementTable {
    degree: usize,
    elems: Vec<Permutation>,
    index: Index,
}

const NONE: u32 = u32::MAX;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn lehmer_rank(images: &[u32]) -> usize {
    let n = images.len();
    let mut rank = 0usize;
    let mut used: u32 = 0;
    for (i, &x) in images.iter().enumerate() {
        let smaller_unused = (x - (used & ((1u32 << x) - 1)).count_ones()) as usize;
        rank = rank * (n - i) + smaller_unused;
        used |= 1 << x;
    }
    rank
}

impl ElementTable {
    pub fn new(group: &PermGroup, bound: u128) -> Result<ElementTable> {
        let elems = group.elements(bound)?;
        let degree = group.degree();
        let index = if degree <= 10 {
            let mut dense = vec![NONE; factorial(degree).max(1)];
            for (i, e) in elems.iter().enumerate() {
                dense[lehmer_rank(e.images())] = i as u32;
            }
            Index::Dense(dense)
        } else {
            Index::Hash(
                elems
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (e.clone(), i as u32))
                    .collect(),
            )
        };
        Ok(ElementTable {
            degree,
            elems,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    /// Index of `p`, if it belongs to the group.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        match &self.index {
            Index::Dense(d) => {
                let i = d[lehmer_rank(p.images())];
                (i != NONE).then_some(i as usize)
            }
            Index::Hash(h) => h.get(p).map(|&i| i as usize),
        }
    }

    fn idx(&self, p: &Permutation) -> usize {
        self.index_of(p).expect("element outside table")
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        if let Index::Dense(d) = &self.index {
            let (pa, pb) = (self.elems[a].images(), self.elems[b].images());
            let mut buf = [0u32; 10];
            for (o, &x) in buf.iter_mut().zip(pa) {
                *o = pb[x as usize];
            }
            return d[lehmer_rank(&buf[..self.degree])] as usize;
        }
        self.idx(&self.elems[a].then(&self.elems[b]))
    }

    fn conj(&self, x: usize, g: usize) -> usize {
        if let Index::Dense(d) = &self.index {
            let (px, pg) = (self.elems[x].images(), self.elems[g].images());
            let mut buf = [0u32; 10];
            for i in 0..self.degree {
                buf[pg[i] as usize] = pg[px[i] as usize];
            }
            return d[lehmer_rank(&buf[..self.degree])] as usize;
        }
        self.idx(&self.elems[x].conjugate_by(&self.elems[g]))
    }

    fn identity(&self) -> usize {
        self.idx(&Permutation::identity(self.degree))
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }
    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// A subgroup of the tabled group: element set plus a generating set.
#[derive(Clone)]
struct Sub {
    elems: Bits,
    gens: Vec<usize>,
    order: usize,
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    pub order: u128,
    /// Number of subgroups in the class.
    pub class_length: u128,
}

struct Lattice<'a> {
    table: &'a ElementTable,
    /// G-conjugacy class id of every element.
    class_of: Vec<u32>,
    class_count: usize,
}

impl<'a> Lattice<'a> {
    fn new(table: &'a ElementTable, group: &PermGroup) -> Lattice<'a> {
        let n = table.len();
        let group_gens: Vec<usize> = group.generators().iter().map(|g| table.idx(g)).collect();
        let mut class_of = vec![NONE; n];
        let mut class_count = 0;
        for start in 0..n {
            if class_of[start] != NONE {
                continue;
            }
            class_of[start] = class_count as u32;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &s in &group_gens {
                    let y = table.conj(x, s);
                    if class_of[y] == NONE {
                        class_of[y] = class_count as u32;
                        stack.push(y);
                    }
                }
            }
            class_count += 1;
        }
        Lattice {
            table,
            class_of,
            class_count,
        }
    }

    /// Closure of a generating set, by breadth-first multiplication.
    fn closure(&self, gens: &[usize]) -> Bits {
        let t = self.table;
        let mut bits = Bits::new(t.len());
        let e = t.identity();
        bits.set(e);
        let mut list = vec![e];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = t.mul(x, g);
                if !bits.get(y) {
                    bits.set(y);
                    list.push(y);
                }
            }
            i += 1;
        }
        bits
    }

    fn sub_from_gens(&self, gens: Vec<usize>) -> Sub {
        let elems = self.closure(&gens);
        let order = elems.count();
        Sub { elems, gens, order }
    }

    /// Conjugacy invariant: order plus the histogram of G-classes met.
    fn key(&self, s: &Sub) -> Vec<u32> {
        let mut hist = vec![0u32; self.class_count + 1];
        hist[0] = s.order as u32;
        for x in s.elems.iter() {
            hist[1 + self.class_of[x] as usize] += 1;
        }
        hist
    }

    fn conjugate_gens_into(&self, gens: &[usize], g: usize, target: &Bits) -> bool {
        gens.iter().all(|&h| target.get(self.table.conj(h, g)))
    }

    fn are_conjugate(&self, a: &Sub, b: &Sub) -> bool {
        a.order == b.order
            && (0..self.table.len()).any(|g| self.conjugate_gens_into(&a.gens, g, &b.elems))
    }

    fn normalizer(&self, s: &Sub) -> Bits {
        let mut n = Bits::new(self.table.len());
        for g in 0..self.table.len() {
            if self.conjugate_gens_into(&s.gens, g, &s.elems) {
                n.set(g);
            }
        }
        n
    }

    /// A generating set for the subgroup with element set `bits`.
    fn generators_of(&self, bits: &Bits) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for x in bits.iter() {
            if !current.get(x) {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// Orbit representatives of the conjugation action of `<gens>` on `set`.
    fn conjugation_orbit_reps(&self, set: &Bits, gens: &[usize]) -> Vec<usize> {
        let mut seen = Bits::new(self.table.len());
        let mut reps = Vec::new();
        for x in set.iter() {
            if seen.get(x) {
                continue;
            }
            reps.push(x);
            seen.set(x);
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for &g in gens {
                    let z = self.table.conj(y, g);
                    if !seen.get(z) {
                        seen.set(z);
                        stack.push(z);
                    }
                }
            }
        }
        reps
    }

    fn is_soluble(group: &PermGroup) -> bool {
        let mut g = group.clone();
        loop {
            if g.order() == 1 {
                return true;
            }
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return false;
            }
            g = d;
        }
    }

    fn perfect_seeds(&self, group: &PermGroup) -> Vec<Sub> {
        let t = self.table;
        if Self::is_soluble(group) {
            return Vec::new();
        }
        let all = {
            let mut b = Bits::new(t.len());
            for i in 0..t.len() {
                b.set(i);
            }
            b
        };
        let mut involution_reps: Vec<usize> = Vec::new();
        let mut seen_class = vec![false; self.class_count];
        for i in 0..t.len() {
            let c = self.class_of[i] as usize;
            if !seen_class[c] && t.element(i).order() == 2 {
                seen_class[c] = true;
                involution_reps.push(i);
            }
        }
        let mut found: Vec<PermGroup> = Vec::new();
        for &a in &involution_reps {
            let mut cent = Bits::new(t.len());
            for g in 0..t.len() {
                if t.conj(a, g) == a {
                    cent.set(g);
                }
            }
            let cgens = self.generators_of(&cent);
            for b in self.conjugation_orbit_reps(&all, &cgens) {
                let pg = PermGroup::new(t.degree, vec![t.element(a).clone(), t.element(b).clone()])
                    .unwrap();
                let order = pg.order();
                if order < 60 || found.iter().any(|f| f.order() == order && pg.is_subgroup_of(f)) {
                    continue;
                }
                if !pg.is_perfect() {
                    continue;
                }
                let mut dup = false;
                for f in &found {
                    if f.order() == order && are_conjugate_subgroups(group, &pg, f).unwrap_or(false) {
                        dup = true;
                        break;
                    }
                }
                if !dup {
                    found.push(pg);
                }
            }
        }
        found
            .into_iter()
            .map(|pg| {
                let gens = pg.generators().iter().map(|g| t.idx(g)).collect();
                self.sub_from_gens(gens)
            })
            .collect()
    }

    fn run(&self, group: &PermGroup) -> Vec<(Sub, usize)> {
        let t = self.table;
        // Buckets of classes by invariant key; heap ordered by subgroup order.
        let mut classes: Vec<Sub> = Vec::new();
        let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();

        let mut insert = |sub: Sub,
                          classes: &mut Vec<Sub>,
                          by_order: &mut BTreeMap<usize, Vec<usize>>|
         -> bool {
            let key = self.key(&sub);
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().any(|&c| self.are_conjugate(&sub, &classes[c])) {
                return false;
            }
            bucket.push(classes.len());
            by_order.entry(sub.order).or_default().push(classes.len());
            classes.push(sub);
            true
        };

        insert(self.sub_from_gens(Vec::new()), &mut classes, &mut by_order);
        for seed in self.perfect_seeds(group) {
            insert(seed, &mut classes, &mut by_order);
        }

        let mut normalizer_orders: Vec<usize> = Vec::new();
        let mut processed = 0usize;
        let mut order_cursor = 0usize;
        loop {
            // Next unprocessed class of smallest order.
            let next = by_order
                .range(order_cursor..)
                .flat_map(|(_, v)| v.iter().copied())
                .find(|&c| c >= normalizer_orders.len() || normalizer_orders[c] == 0);
            let Some(ci) = next else { break };
            order_cursor = classes[ci].order;
            if normalizer_orders.len() < classes.len() {
                normalizer_orders.resize(classes.len(), 0);
            }
            let h = classes[ci].clone();
            let norm = self.normalizer(&h);
            normalizer_orders[ci] = norm.count();
            processed += 1;

            let ngens = self.generators_of(&norm);
            let mut candidates = Bits::new(t.len());
            for g in norm.iter() {
                if !h.elems.get(g) {
                    candidates.set(g);
                }
            }
            let mut covered = Bits::new(t.len());
            for g in self.conjugation_orbit_reps(&candidates, &ngens) {
                if covered.get(g) {
                    continue;
                }
                // Smallest power of g landing in H must be prime.
                let mut x = g;
                let mut k = 1usize;
                while !h.elems.get(x) {
                    x = t.mul(x, g);
                    k += 1;
                }
                if !is_prime(k) {
                    continue;
                }
                let mut elems = h.elems.clone();
                let mut power = g;
                for _ in 1..k {
                    for y in h.elems.iter() {
                        elems.set(t.mul(y, power));
                    }
                    power = t.mul(power, g);
                }
                for y in elems.iter() {
                    covered.set(y);
                }
                let mut gens = h.gens.clone();
                gens.push(g);
                let order = h.order * k;
                insert(Sub { elems, gens, order }, &mut classes, &mut by_order);
            }
        }
        debug_assert_eq!(processed, classes.len());
        let mut out: Vec<(Sub, usize)> = classes
            .into_iter()
            .zip(normalizer_orders)
            .collect();
        out.sort_by(|a, b| {
            a.0.order
                .cmp(&b.0.order)
                .then_with(|| self.key(&a.0).cmp(&self.key(&b.0)))
        });
        out
    }

    fn to_group(&self, s: &Sub) -> PermGroup {
        PermGroup::new(
            self.table.degree,
            s.gens.iter().map(|&g| self.table.element(g).clone()).collect(),
        )
        .unwrap()
    }
}

fn is_prime(k: usize) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

/// One representative per conjugacy class of subgroups, ordered by subgroup
/// order. Fails when `|group|` exceeds `bound`.
pub fn subgroups_up_to_conjugacy(group: &PermGroup, bound: u128) -> Result<Vec<SubgroupClass>> {
    let table = ElementTable::new(group, bound)?;
    let lattice = Lattice::new(&table, group);
    let total = table.len() as u128;
    Ok(lattice
        .run(group)
        .into_iter()
        .map(|(s, norm)| SubgroupClass {
            representative: lattice.to_group(&s),
            order: s.order as u128,
            class_length: total / norm as u128,
        })
        .collect())
}

/// Whether some element of `group` conjugates `h1` onto `h2`.
///
/// Backtracks through the stabiliser chain of `group`, choosing base images
/// level by level and pruning when the orbit length of a base point under
/// `h1` differs from that of its image under `h2`.
pub fn are_conjugate_subgroups(group: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> Result<bool> {
    if !h1.is_subgroup_of(group) || !h2.is_subgroup_of(group) {
        return Err(Error::NotSubgroup);
    }
    if h1.order() != h2.order() {
        return Ok(false);
    }
    let lens = |h: &PermGroup| {
        let mut len = vec![0usize; h.degree()];
        for o in h.orbits() {
            for &x in &o {
                len[x] = o.len();
            }
        }
        len
    };
    let (len1, len2) = (lens(h1), lens(h2));
    let mut s1 = len1.clone();
    let mut s2 = len2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(false);
    }
    let hist = |h: &PermGroup| -> Option<Vec<(Vec<usize>, usize)>> {
        let els = h.elements(DEFAULT_ORDER_BOUND).ok()?;
        let mut m: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for e in els {
            *m.entry(e.cycle_type()).or_default() += 1;
        }
        Some(m.into_iter().collect())
    };
    if let (Some(a), Some(b)) = (hist(h1), hist(h2)) {
        if a != b {
            return Ok(false);
        }
    }
    let chain = &group.levels;
    fn search(
        chain: &[super::Level],
        level: usize,
        acc: &Permutation,
        h1: &PermGroup,
        h2: &PermGroup,
        len1: &[usize],
        len2: &[usize],
    ) -> bool {
        if level == chain.len() {
            return h1.generators().iter().all(|x| h2.contains(&x.conjugate_by(acc)));
        }
        let lv = &chain[level];
        for &x in &lv.orbit {
            let u = &lv.transversal[x].as_ref().unwrap().0;
            // acc' = u * acc, so the base point goes to acc(x).
            let next = u.then(acc);
            let b = lv.base_point;
            if len1[b] != len2[next.image(b)] {
                continue;
            }
            if search(chain, level + 1, &next, h1, h2, len1, len2) {
                return true;
            }
        }
        false
    }
    let id = Permutation::identity(group.degree());
    Ok(search(chain, 0, &id, h1, h2, &len1, &len2))
}

/// Normal Hall subgroups obtained as normal closures of Sylow subgroups
/// (the subgroup generated by all `p`-elements), proper and non-trivial.
pub fn normal_hall_subgroups(group: &PermGroup, bound: u128) -> Result<Vec<PermGroup>> {
    let table = ElementTable::new(group, bound)?;
    let order = group.order();
    let mut out = Vec::new();
    for p in prime_divisors(order) {
        let pelems: Vec<Permutation> = table
            .elements()
            .iter()
            .filter(|e| !e.is_identity() && is_power_of(e.order() as u128, p))
            .cloned()
            .collect();
        let n = PermGroup::new(group.degree(), pelems).unwrap();
        let no = n.order();
        if no > 1 && no < order && gcd_u128(no, order / no) == 1 {
            // Keep a small generating set.
            let mut gens: Vec<Permutation> = Vec::new();
            let mut cur = PermGroup::trivial(group.degree());
            for g in n.strong_generators() {
                if !cur.contains(g) {
                    gens.push(g.clone());
                    cur = PermGroup::new(group.degree(), gens.clone()).unwrap();
                }
            }
            out.push(cur);
        }
    }
    Ok(out)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn is_power_of(mut x: u128, p: u128) -> bool {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

fn prime_divisors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_core_free(group: &PermGroup, h: &PermGroup) -> bool {
    coset_action(group, h).map(|a| a.is_faithful()).unwrap_or(false)
}

/// Core-free subgroups of index `m` without the Hall reduction.
pub fn corefree_subgroups_of_index_plain(
    group: &PermGroup,
    m: usize,
    bound: u128,
) -> Result<Vec<PermGroup>> {
    if m == 0 {
        return Err(Error::ZeroIndex);
    }
    let order = group.order();
    if !order.is_multiple_of(m as u128) {
        return Ok(Vec::new());
    }
    let target = order / m as u128;
    Ok(subgroups_up_to_conjugacy(group, bound)?
        .into_iter()
        .filter(|c| c.order == target && is_core_free(group, &c.representative))
        .map(|c| c.representative)
        .collect())
}

/// One representative per conjugacy class of core-free subgroups of index
/// `m`. When the group has a normal Hall subgroup `N`, the search first finds
/// the subgroups `J >= N` of index `d = gcd(m, |G:N|)` (through the action on
/// cosets of `N`) and then the subgroups of index `m/d` inside each `J`.
pub fn corefree_subgroups_of_index(
    group: &PermGroup,
    m: usize,
    bound: u128,
) -> Result<Vec<PermGroup>> {
    if m == 0 {
        return Err(Error::ZeroIndex);
    }
    let order = group.order();
    if !order.is_multiple_of(m as u128) {
        return Ok(Vec::new());
    }
    let halls = normal_hall_subgroups(group, bound)?;
    let Some(n) = halls.into_iter().next() else {
        return corefree_subgroups_of_index_plain(group, m, bound);
    };
    let quotient_index = order / n.order();
    let d = gcd(m as u64, quotient_index as u64) as u128;
    let target = order / m as u128;

    // G/N as the (faithful on G/N) action on cosets of N.
    let act = coset_action(group, &n)?;
    let q = act.image_group();
    let qtable = ElementTable::new(&q, bound)?;
    // Lift every element of G/N to a preimage in G.
    let mut lift: Vec<Option<Permutation>> = vec![None; qtable.len()];
    let qid = qtable.idx(&Permutation::identity(q.degree()));
    lift[qid] = Some(Permutation::identity(group.degree()));
    let mut frontier = vec![qid];
    while let Some(x) = frontier.pop() {
        for (g, gq) in group.generators().iter().zip(&act.images_of_generators) {
            let y = qtable.idx(&qtable.element(x).then(gq));
            if lift[y].is_none() {
                lift[y] = Some(lift[x].as_ref().unwrap().then(g));
                frontier.push(y);
            }
        }
    }

    let mut found: Vec<PermGroup> = Vec::new();
    for qc in subgroups_up_to_conjugacy(&q, bound)? {
        if qc.order * d != quotient_index {
            continue;
        }
        let mut jgens: Vec<Permutation> = n.generators().to_vec();
        for x in qc.representative.generators() {
            jgens.push(lift[qtable.idx(x)].clone().unwrap());
        }
        let j = PermGroup::new(group.degree(), jgens)?;
        for hc in subgroups_up_to_conjugacy(&j, bound)? {
            if hc.order != target {
                continue;
            }
            let h = hc.representative;
            if !is_core_free(group, &h) {
                continue;
            }
            let mut dup = false;
            for f in &found {
                if are_conjugate_subgroups(group, f, &h)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                found.push(h);
            }
        }
    }
    Ok(found)
}
