//! Automorphism groups and canonical forms by individualisation-refinement.
//!
//! Nodes of the search tree are equitable ordered partitions. A node's trace
//! hash summarises how its refinement split cells; it depends only on the
//! isomorphism type of the node. The canonical leaf is the one minimising
//! (trace sequence, relabelled adjacency). Subtrees are pruned by trace
//! comparison and by orbits of the automorphisms found so far that fix the
//! current path; after an automorphism is found at a leaf the search jumps
//! back to the common ancestor with the leaf it matched.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    /// End (exclusive) of the cell starting at a position; only meaningful at
    /// cell starts.
    cell_end: Vec<u32>,
    /// Start position of the cell holding each vertex.
    cell_of: Vec<u32>,
    cells: usize,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(5) ^ x).wrapping_mul(0x517c_c1b7_2722_0a95)
}

impl Partition {
    fn from_colours(n: usize, colours: Option<&[u32]>) -> (Partition, Vec<u32>) {
        let mut lab: Vec<u32> = (0..n as u32).collect();
        if let Some(c) = colours {
            lab.sort_by_key(|&v| (c[v as usize], v));
        }
        let mut cell_end = vec![0u32; n];
        let mut cell_of = vec![0u32; n];
        let mut starts = Vec::new();
        let mut i = 0;
        while i < n {
            let mut j = i + 1;
            if let Some(c) = colours {
                while j < n && c[lab[j] as usize] == c[lab[i] as usize] {
                    j += 1;
                }
            } else {
                j = n;
            }
            cell_end[i] = j as u32;
            for p in i..j {
                cell_of[lab[p] as usize] = i as u32;
            }
            starts.push(i as u32);
            i = j;
        }
        let cells = starts.len();
        (
            Partition {
                lab,
                cell_end,
                cell_of,
                cells,
            },
            starts,
        )
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// Splits `v` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: u32) -> u32 {
        let s = self.cell_of[v as usize] as usize;
        let e = self.cell_end[s] as usize;
        let pos = (s..e).find(|&p| self.lab[p] == v).unwrap();
        self.lab.swap(s, pos);
        self.cell_end[s] = s as u32 + 1;
        self.cell_end[s + 1] = e as u32;
        for p in s + 1..e {
            self.cell_of[self.lab[p] as usize] = s as u32 + 1;
        }
        self.cells += 1;
        s as u32
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let n = self.lab.len();
        let mut c = 0;
        while c < n {
            let e = self.cell_end[c] as usize;
            if e - c > 1 {
                return Some(c);
            }
            c = e;
        }
        None
    }

    /// Equitable refinement driven by the splitter cells in `queue`.
    fn refine(&mut self, g: &Graph, queue: &mut VecDeque<u32>, scratch: &mut Scratch) -> u64 {
        let n = self.lab.len();
        let words = g.words();
        let mut h = mix(0x9e37_79b9_7f4a_7c15, self.cells as u64);
        scratch.in_queue.clear();
        scratch.in_queue.resize(n, false);
        for &s in queue.iter() {
            scratch.in_queue[s as usize] = true;
        }
        scratch.mask.clear();
        scratch.mask.resize(words, 0);
        while let Some(s) = queue.pop_front() {
            if self.is_discrete() {
                break;
            }
            let s = s as usize;
            scratch.in_queue[s] = false;
            let e = self.cell_end[s] as usize;
            for w in scratch.mask.iter_mut() {
                *w = 0;
            }
            for p in s..e {
                let v = self.lab[p] as usize;
                scratch.mask[v / 64] |= 1 << (v % 64);
            }
            h = mix(h, (s as u64) << 32 | e as u64);
            let mut c = 0;
            while c < n {
                let ce = self.cell_end[c] as usize;
                if ce - c == 1 {
                    c = ce;
                    continue;
                }
                scratch.pairs.clear();
                for p in c..ce {
                    let v = self.lab[p];
                    let row = g.row(v as usize);
                    let k: u32 = row
                        .iter()
                        .zip(&scratch.mask)
                        .map(|(a, b)| (a & b).count_ones())
                        .sum();
                    scratch.pairs.push((k, v));
                }
                let k0 = scratch.pairs[0].0;
                if scratch.pairs.iter().all(|&(k, _)| k == k0) {
                    c = ce;
                    continue;
                }
                scratch.pairs.sort_unstable();
                let was_queued = scratch.in_queue[c];
                let mut fs = c;
                let mut i = 0;
                let len = ce - c;
                while i < len {
                    let k = scratch.pairs[i].0;
                    let mut j = i;
                    while j < len && scratch.pairs[j].0 == k {
                        self.lab[c + j] = scratch.pairs[j].1;
                        self.cell_of[scratch.pairs[j].1 as usize] = fs as u32;
                        j += 1;
                    }
                    let fe = c + j;
                    self.cell_end[fs] = fe as u32;
                    h = mix(h, (fs as u64) << 40 | ((fe - fs) as u64) << 20 | k as u64);
                    if fs != c || !was_queued {
                        queue.push_back(fs as u32);
                        scratch.in_queue[fs] = true;
                    }
                    if fs != c {
                        self.cells += 1;
                    }
                    fs = fe;
                    i = j;
                }
                c = ce;
            }
        }
        queue.clear();
        mix(h, self.cells as u64)
    }
}

#[derive(Default)]
struct Scratch {
    in_queue: Vec<bool>,
    mask: Vec<u64>,
    pairs: Vec<(u32, u32)>,
}

struct Leaf {
    path: Vec<u32>,
    trace: Vec<u64>,
    lab: Vec<u32>,
    cert: Vec<u64>,
}

struct Search<'a> {
    g: &'a Graph,
    canonical: bool,
    gens: Vec<Permutation>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    scratch: Scratch,
    queue: VecDeque<u32>,
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'a> Search<'a> {
    fn certificate(&self, lab: &[u32]) -> Vec<u64> {
        let n = lab.len();
        let words = self.g.words();
        let mut pos = vec![0u32; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut cert = vec![0u64; n * words];
        for (i, &v) in lab.iter().enumerate() {
            for w in self.g.neighbors(v as usize) {
                let p = pos[w] as usize;
                cert[i * words + p / 64] |= 1 << (p % 64);
            }
        }
        cert
    }

    fn automorphism(&self, from: &[u32], to: &[u32]) -> Permutation {
        let mut images = vec![0u32; from.len()];
        for (a, b) in from.iter().zip(to) {
            images[*a as usize] = *b;
        }
        Permutation::from_images_unchecked(images)
    }

    fn add_generator(&mut self, p: Permutation) {
        if !p.is_identity() && !self.gens.contains(&p) {
            self.gens.push(p);
        }
    }

    /// Orbit labels of the group generated by the generators fixing `path`.
    fn orbits_fixing(&self, path: &[u32], n: usize) -> Vec<u32> {
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for g in &self.gens {
            if path.iter().any(|&p| g.image(p as usize) != p as usize) {
                continue;
            }
            for x in 0..n as u32 {
                let y = g.image(x as usize) as u32;
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
        (0..n as u32).map(|x| find(&mut parent, x)).collect()
    }

    fn explore(&mut self, part: Partition, path: &mut Vec<u32>, trace: &mut Vec<u64>) -> Option<usize> {
        let depth = path.len();
        let eq_first = match &self.first {
            None => true,
            Some(f) => f.trace.len() >= trace.len() && f.trace[..trace.len()] == trace[..],
        };
        if self.first.is_some() && !eq_first {
            if !self.canonical {
                return None;
            }
            let b = self.best.as_ref().unwrap();
            if trace[..].cmp(&b.trace[..]) == Ordering::Greater {
                return None;
            }
        }

        if part.is_discrete() {
            let cert = self.certificate(&part.lab);
            let Some(first) = &self.first else {
                let leaf = Leaf {
                    path: path.clone(),
                    trace: trace.clone(),
                    lab: part.lab.clone(),
                    cert,
                };
                if self.canonical {
                    self.best = Some(Leaf {
                        path: leaf.path.clone(),
                        trace: leaf.trace.clone(),
                        lab: leaf.lab.clone(),
                        cert: leaf.cert.clone(),
                    });
                }
                self.first = Some(leaf);
                return None;
            };
            if eq_first && cert == first.cert {
                let gamma = self.automorphism(&first.lab, &part.lab);
                let back = common_prefix(path, &first.path);
                self.add_generator(gamma);
                return Some(back);
            }
            if self.canonical {
                let best = self.best.as_ref().unwrap();
                let ord = trace[..].cmp(&best.trace[..]).then_with(|| cert.cmp(&best.cert));
                match ord {
                    Ordering::Equal => {
                        let gamma = self.automorphism(&best.lab, &part.lab);
                        let back = common_prefix(path, &best.path);
                        self.add_generator(gamma);
                        return Some(back);
                    }
                    Ordering::Less => {
                        self.best = Some(Leaf {
                            path: path.clone(),
                            trace: trace.clone(),
                            lab: part.lab.clone(),
                            cert,
                        });
                    }
                    Ordering::Greater => {}
                }
            }
            return None;
        }

        let n = part.lab.len();
        let s = part.first_nonsingleton().unwrap();
        let e = part.cell_end[s] as usize;
        let mut children: Vec<u32> = part.lab[s..e].to_vec();
        children.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let mut orbits: Option<(usize, Vec<u32>)> = None;
        for v in children {
            if !explored.is_empty() && !self.gens.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(k, _)| *k != self.gens.len());
                if stale {
                    orbits = Some((self.gens.len(), self.orbits_fixing(path, n)));
                }
                let orb = &orbits.as_ref().unwrap().1;
                if explored.iter().any(|&w| orb[w as usize] == orb[v as usize]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = part.clone();
            let singleton = child.individualize(v);
            self.queue.clear();
            self.queue.push_back(singleton);
            let mut queue = core::mem::take(&mut self.queue);
            let h = child.refine(self.g, &mut queue, &mut self.scratch);
            self.queue = queue;
            path.push(v);
            trace.push(h);
            let r = self.explore(child, path, trace);
            path.pop();
            trace.pop();
            if let Some(l) = r {
                if l < depth {
                    return Some(l);
                }
            }
        }
        None
    }
}

struct Outcome {
    gens: Vec<Permutation>,
    best_lab: Option<Vec<u32>>,
    best_cert: Option<Vec<u64>>,
}

fn run(g: &Graph, colours: Option<&[u32]>, canonical: bool) -> Outcome {
    let n = g.order();
    if n == 0 {
        return Outcome {
            gens: Vec::new(),
            best_lab: Some(Vec::new()),
            best_cert: Some(Vec::new()),
        };
    }
    let (mut part, starts) = Partition::from_colours(n, colours);
    let mut search = Search {
        g,
        canonical,
        gens: Vec::new(),
        first: None,
        best: None,
        scratch: Scratch::default(),
        queue: VecDeque::new(),
    };
    let mut queue: VecDeque<u32> = starts.into_iter().collect();
    let h = part.refine(g, &mut queue, &mut search.scratch);
    let mut path = Vec::new();
    let mut trace = vec![h];
    search.explore(part, &mut path, &mut trace);
    let (best_lab, best_cert) = match search.best.take() {
        Some(b) => (Some(b.lab), Some(b.cert)),
        None => (None, None),
    };
    Outcome {
        gens: search.gens,
        best_lab,
        best_cert,
    }
}

/// Canonical form of a graph: the adjacency matrix under the canonical
/// relabelling, packed as bytes (with vertex colours, when colours were used).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    fn build(n: usize, words: usize, cert: &[u64], colours: Option<Vec<u32>>) -> CanonicalForm {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&(n as u32).to_le_bytes());
        if let Some(c) = colours {
            bytes.push(1);
            for x in c {
                bytes.extend_from_slice(&x.to_le_bytes());
            }
        } else {
            bytes.push(0);
        }
        // Upper triangle, column by column.
        let mut acc = 0u8;
        let mut nb = 0;
        for j in 1..n {
            for i in 0..j {
                let bit = cert[i * words + j / 64] >> (j % 64) & 1;
                acc = acc << 1 | bit as u8;
                nb += 1;
                if nb == 8 {
                    bytes.push(acc);
                    acc = 0;
                    nb = 0;
                }
            }
        }
        if nb > 0 {
            bytes.push(acc << (8 - nb));
        }
        CanonicalForm { bytes }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn order(&self) -> usize {
        u32::from_le_bytes(self.bytes[..4].try_into().unwrap()) as usize
    }

    fn triangle(&self) -> &[u8] {
        let n = self.order();
        let skip = if self.bytes[4] == 1 { 5 + 4 * n } else { 5 };
        &self.bytes[skip..]
    }

    /// Edges of the canonical representative, `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let tri = self.triangle();
        let mut out = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if tri[k / 8] >> (7 - k % 8) & 1 == 1 {
                    out.push((i, j));
                }
                k += 1;
            }
        }
        out.sort_unstable();
        out
    }

    /// The canonical representative as a graph.
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.order(), &self.edges()).unwrap()
    }
}

/// Result of a canonical labelling run.
pub struct Labeling {
    /// `lab[i]` is the vertex placed at canonical position `i`.
    pub lab: Vec<usize>,
    pub generators: Vec<Permutation>,
    pub form: CanonicalForm,
}

pub fn canonical_labeling(g: &Graph, colours: Option<&[u32]>) -> Labeling {
    let out = run(g, colours, true);
    let lab: Vec<usize> = out.best_lab.unwrap().into_iter().map(|v| v as usize).collect();
    let cert = out.best_cert.unwrap();
    let ordered_colours = colours.map(|c| lab.iter().map(|&v| c[v]).collect());
    let form = CanonicalForm::build(g.order(), g.words(), &cert, ordered_colours);
    Labeling {
        lab,
        generators: out.gens,
        form,
    }
}

/// Isomorphism-invariant form of the underlying unlabelled graph (any
/// designated bipartition is ignored).
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g, None).form
}

/// Canonical form of a vertex-coloured graph; isomorphisms must preserve
/// colour values.
pub fn canonical_form_colored(g: &Graph, colours: &[u32]) -> CanonicalForm {
    canonical_labeling(g, Some(colours)).form
}

pub fn automorphism_group(g: &Graph) -> PermGroup {
    PermGroup::new(g.order(), run(g, None, false).gens).unwrap()
}

/// Automorphisms preserving every vertex colour.
pub fn automorphism_group_colored(g: &Graph, colours: &[u32]) -> PermGroup {
    PermGroup::new(g.order(), run(g, Some(colours), false).gens).unwrap()
}
