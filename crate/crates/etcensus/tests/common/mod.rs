//! Brute-force subgroup enumeration for small symmetric groups, sharing no
//! code with the library's lattice.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

type Set = Vec<u64>;

pub struct SmallSymmetric {
    n: usize,
    elems: Vec<Vec<u8>>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl SmallSymmetric {
    pub fn new(n: usize) -> SmallSymmetric {
        fn perms(n: usize) -> Vec<Vec<u8>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, (n - 1) as u8);
                    out.push(q);
                }
            }
            out
        }
        let mut elems = perms(n);
        elems.sort();
        let index: HashMap<Vec<u8>, u16> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u16)).collect();
        let len = elems.len();
        let mut mul = vec![0u16; len * len];
        let mut inv = vec![0u16; len];
        for (a, pa) in elems.iter().enumerate() {
            let mut pi = vec![0u8; n];
            for (i, &x) in pa.iter().enumerate() {
                pi[x as usize] = i as u8;
            }
            inv[a] = index[&pi];
            for (b, pb) in elems.iter().enumerate() {
                let c: Vec<u8> = (0..n).map(|i| pb[pa[i] as usize]).collect();
                mul[a * len + b] = index[&c];
            }
        }
        SmallSymmetric { n, elems, mul, inv }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn m(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.len() + b as usize]
    }

    fn generate(&self, gens: &[u16]) -> Set {
        let id = self.elems.iter().position(|e| e.iter().enumerate().all(|(i, &x)| x as usize == i)).unwrap() as u16;
        let mut set = vec![0u64; self.len().div_ceil(64)];
        let mut queue = VecDeque::from([id]);
        set[id as usize / 64] |= 1 << (id % 64);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.m(x, g);
                if set[y as usize / 64] >> (y % 64) & 1 == 0 {
                    set[y as usize / 64] |= 1 << (y % 64);
                    queue.push_back(y);
                }
            }
        }
        set
    }

    fn members(&self, s: &Set) -> Vec<u16> {
        (0..self.len() as u16).filter(|&i| s[i as usize / 64] >> (i % 64) & 1 == 1).collect()
    }

    fn transitive(&self, members: &[u16]) -> bool {
        let orbit: BTreeSet<u8> = members.iter().map(|&g| self.elems[g as usize][0]).collect();
        orbit.len() == self.n
    }

    /// Orders of the transitive subgroups, one entry per conjugacy class.
    pub fn transitive_class_orders(&self) -> Vec<usize> {
        let cyclic: BTreeMap<Set, u16> = (0..self.len() as u16)
            .map(|g| (self.generate(&[g]), g))
            .collect();
        let mut all: BTreeMap<Set, Vec<u16>> = BTreeMap::new();
        let mut queue: VecDeque<Set> = VecDeque::new();
        for (s, &g) in &cyclic {
            all.insert(s.clone(), vec![g]);
            queue.push_back(s.clone());
        }
        while let Some(h) = queue.pop_front() {
            let gens = all[&h].clone();
            for &g in cyclic.values() {
                if h[g as usize / 64] >> (g % 64) & 1 == 1 {
                    continue;
                }
                let mut jg = gens.clone();
                jg.push(g);
                let j = self.generate(&jg);
                if !all.contains_key(&j) {
                    all.insert(j.clone(), jg);
                    queue.push_back(j);
                }
            }
        }
        let mut classes: BTreeSet<Vec<u16>> = BTreeSet::new();
        for s in all.keys() {
            let members = self.members(s);
            if !self.transitive(&members) {
                continue;
            }
            let canon = (0..self.len() as u16)
                .map(|g| {
                    let mut c: Vec<u16> = members
                        .iter()
                        .map(|&x| self.m(self.m(self.inv[g as usize], x), g))
                        .collect();
                    c.sort_unstable();
                    c
                })
                .min()
                .unwrap();
            classes.insert(canon);
        }
        let mut orders: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        orders.sort_unstable();
        orders
    }
}
