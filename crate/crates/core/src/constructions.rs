//! Two semi-symmetric families: blow-ups of a product incidence graph, and
//! the bipartite complement of the Levi graph of the symplectic generalised
//! quadrangle W(q).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{blow_up, Graph, Side};
use crate::perm::Permutation;

/// The base graph `X` and its `(k, 2)`-blow-up `Y`.
#[derive(Clone, Debug)]
pub struct FolkmanBlowupFamily {
    pub k: usize,
    /// Parts `A = A1 ⊔ A2` (vertices `0..2k`) and `B = A1 × A2`, with
    /// `(a1, a2)` at `2k + a1·k + a2`.
    pub x: Graph,
    pub y: Graph,
}

pub fn folkman_blowup(k: usize) -> Result<FolkmanBlowupFamily> {
    if k < 3 {
        return Err(Error::BadParameter(format!("k must be at least 3, got {k}")));
    }
    let n = 2 * k + k * k;
    let mut x = Graph::empty(n);
    for a1 in 0..k {
        for a2 in 0..k {
            let b = 2 * k + a1 * k + a2;
            for a in 0..k {
                if a != a1 {
                    x.add_edge(a, b);
                }
                if a != a2 {
                    x.add_edge(k + a, b);
                }
            }
        }
    }
    let mut sides = vec![Side::U; 2 * k];
    sides.resize(n, Side::W);
    let x = x.with_sides(sides)?;
    let y = blow_up(&x, k, 2)?;
    Ok(FolkmanBlowupFamily { k, x, y })
}

/// Automorphisms of the base graph generating `S_k wr C_2`: a transposition
/// and a `k`-cycle on `A1` (acting on the first coordinate of `B`), and the
/// swap `A1 <-> A2`, `(a1, a2) <-> (a2, a1)`.
pub fn folkman_symmetries(k: usize) -> Vec<Permutation> {
    let n = 2 * k + k * k;
    let on_first = |sigma: &dyn Fn(usize) -> usize| {
        let mut img: Vec<usize> = (0..n).collect();
        for (a, x) in img.iter_mut().enumerate().take(k) {
            *x = sigma(a);
        }
        for a1 in 0..k {
            for a2 in 0..k {
                img[2 * k + a1 * k + a2] = 2 * k + sigma(a1) * k + a2;
            }
        }
        Permutation::from_images(img).unwrap()
    };
    let transposition = on_first(&|a| match a {
        0 => 1,
        1 => 0,
        _ => a,
    });
    let cycle = on_first(&|a| (a + 1) % k);
    let mut img: Vec<usize> = (0..n).collect();
    for a in 0..k {
        img[a] = k + a;
        img[k + a] = a;
    }
    for a1 in 0..k {
        for a2 in 0..k {
            img[2 * k + a1 * k + a2] = 2 * k + a2 * k + a1;
        }
    }
    vec![transposition, cycle, Permutation::from_images(img).unwrap()]
}

/// A finite field of order 3, 5, 7 or 9. Elements are `0..q`; for `q = 9`
/// the element `a + 3b` stands for `a + b·i` with `i² = −1` over GF(3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    pub q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl Field {
    pub fn new(q: usize) -> Result<Field> {
        let (p, deg) = match q {
            3 | 5 | 7 => (q, 1),
            9 => (3, 2),
            _ => return Err(Error::BadParameter(format!("unsupported field order {q}"))),
        };
        let split = |x: usize| (x % p, x / p);
        let join = |a: usize, b: usize| a + p * b;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for x in 0..q {
            for y in 0..q {
                let (a, b) = split(x);
                let (c, d) = split(y);
                add[x * q + y] = join((a + c) % p, (b + d) % p) as u8;
                mul[x * q + y] = if deg == 1 {
                    (x * y % p) as u8
                } else {
                    // (a + bi)(c + di) = (ac − bd) + (ad + bc)i
                    join((a * c + p * p - b * d % p) % p, (a * d + b * c) % p) as u8
                };
            }
        }
        Ok(Field { q, add, mul })
    }

    pub fn add(&self, x: u8, y: u8) -> u8 {
        self.add[x as usize * self.q + y as usize]
    }

    pub fn mul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.q + y as usize]
    }

    pub fn neg(&self, x: u8) -> u8 {
        (0..self.q as u8).find(|&y| self.add(x, y) == 0).unwrap()
    }

    pub fn sub(&self, x: u8, y: u8) -> u8 {
        self.add(x, self.neg(y))
    }

    pub fn inv(&self, x: u8) -> Option<u8> {
        (1..self.q as u8).find(|&y| self.mul(x, y) == 1)
    }
}

pub type Vector = [u8; 4];

/// Points and totally isotropic lines of W(q).
#[derive(Clone, Debug)]
pub struct SymplecticGQ {
    pub q: usize,
    pub field: Field,
    /// Normalised representatives (first non-zero coordinate 1), sorted.
    pub points: Vec<Vector>,
    /// Each line as the sorted indices of its `q + 1` points.
    pub lines: Vec<Vec<usize>>,
}

impl SymplecticGQ {
    /// `x1·y3 + x2·y4 − x3·y1 − x4·y2`.
    pub fn form(&self, x: &Vector, y: &Vector) -> u8 {
        symplectic_form(&self.field, x, y)
    }

    pub fn point_index(&self, v: &Vector) -> Option<usize> {
        let v = normalise(&self.field, v)?;
        self.points.binary_search(&v).ok()
    }

    /// Number of lines through each point, in point order.
    pub fn lines_per_point(&self) -> Vec<usize> {
        let mut count = vec![0; self.points.len()];
        for l in &self.lines {
            for &p in l {
                count[p] += 1;
            }
        }
        count
    }

    /// The form vanishes on the diagonal and has trivial radical.
    pub fn form_is_alternating_and_nondegenerate(&self) -> bool {
        let f = &self.field;
        let q = f.q as u8;
        let mut all: Vec<Vector> = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        all.push([a, b, c, d]);
                    }
                }
            }
        }
        let basis: [Vector; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        all.iter().all(|x| symplectic_form(f, x, x) == 0)
            && all.iter().skip(1).all(|x| basis.iter().any(|e| symplectic_form(f, x, e) != 0))
    }
}

fn symplectic_form(f: &Field, x: &Vector, y: &Vector) -> u8 {
    let plus = f.add(f.mul(x[0], y[2]), f.mul(x[1], y[3]));
    let minus = f.add(f.mul(x[2], y[0]), f.mul(x[3], y[1]));
    f.sub(plus, minus)
}

fn normalise(f: &Field, v: &Vector) -> Option<Vector> {
    let lead = *v.iter().find(|&&c| c != 0)?;
    let s = f.inv(lead)?;
    Some(v.map(|c| f.mul(s, c)))
}

fn combine(f: &Field, a: u8, x: &Vector, b: u8, y: &Vector) -> Vector {
    core::array::from_fn(|i| f.add(f.mul(a, x[i]), f.mul(b, y[i])))
}

pub fn symplectic_gq(q: usize) -> Result<SymplecticGQ> {
    let field = Field::new(q)?;
    let qq = q as u8;
    let mut points: Vec<Vector> = Vec::new();
    for a in 0..qq {
        for b in 0..qq {
            for c in 0..qq {
                for d in 0..qq {
                    let v = [a, b, c, d];
                    if normalise(&field, &v) == Some(v) {
                        points.push(v);
                    }
                }
            }
        }
    }
    points.sort_unstable();
    let mut gq = SymplecticGQ {
        q,
        field,
        points,
        lines: Vec::new(),
    };
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..gq.points.len() {
        for j in i + 1..gq.points.len() {
            let (x, y) = (gq.points[i], gq.points[j]);
            if gq.form(&x, &y) != 0 {
                continue;
            }
            let mut span: Vec<usize> = Vec::new();
            for a in 0..qq {
                for b in 0..qq {
                    if let Some(p) = gq.point_index(&combine(&gq.field, a, &x, b, &y)) {
                        span.push(p);
                    }
                }
            }
            span.sort_unstable();
            span.dedup();
            lines.insert(span);
        }
    }
    gq.lines = lines.into_iter().collect();
    Ok(gq)
}

/// The point-line incidence graph (points `0..P`, lines `P..2P`) and its
/// bipartite complement, both with points as the `U` side.
pub fn levi_and_complement(gq: &SymplecticGQ) -> (Graph, Graph) {
    let p = gq.points.len();
    let l = gq.lines.len();
    let mut levi = Graph::empty(p + l);
    let mut comp = Graph::empty(p + l);
    for (j, line) in gq.lines.iter().enumerate() {
        for i in 0..p {
            if line.binary_search(&i).is_ok() {
                levi.add_edge(i, p + j);
            } else {
                comp.add_edge(i, p + j);
            }
        }
    }
    let mut sides = vec![Side::U; p];
    sides.resize(p + l, Side::W);
    (
        levi.with_sides(sides.clone()).unwrap(),
        comp.with_sides(sides).unwrap(),
    )
}
