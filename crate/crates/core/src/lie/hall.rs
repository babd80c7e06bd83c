//! Hall bases of free nilpotent Lie algebras.
//!
//! Basis elements are basic commutators in the sense of Marshall Hall:
//! generators come first, and `[u, v]` of weight `n` is basic when `u > v`
//! are basic and, if `u = [x, y]`, then `y <= v`. Within one weight the
//! elements are ordered lexicographically by `(u, v)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::rational::{q, Q};

/// Ceilings on the size of a free nilpotent Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLimits {
    pub max_generators: usize,
    pub max_step: usize,
    pub max_dimension: usize,
}

impl Default for BasisLimits {
    fn default() -> Self {
        BasisLimits {
            max_generators: 4,
            max_step: 6,
            max_dimension: 120,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HallTree {
    Generator(usize),
    Bracket(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallElement {
    pub degree: usize,
    pub tree: HallTree,
}

/// Basis of the free step-`s` nilpotent Lie algebra on `k` generators.
pub struct HallBasis {
    generators: usize,
    step: usize,
    elements: Vec<HallElement>,
    /// `structure[i][j]` holds the sparse coordinates of `[e_i, e_j]`.
    structure: Vec<Vec<Vec<(usize, Q)>>>,
    /// Range of element indices per degree, `by_degree[d - 1]`.
    by_degree: Vec<std::ops::Range<usize>>,
    projector: Vec<DegreeProjector>,
}

/// Solves for Hall coordinates of a homogeneous Lie polynomial from its
/// expansion in the free associative algebra.
struct DegreeProjector {
    pivot_words: Vec<usize>,
    inverse: Vec<Vec<Q>>,
}

/// Number of degree-`m` Hall elements on `k` generators.
pub fn witt_dimension(k: usize, m: usize) -> usize {
    let mut total: i128 = 0;
    for d in 1..=m {
        if m.is_multiple_of(d) {
            total += mobius(d) as i128 * (k as i128).pow((m / d) as u32);
        }
    }
    (total / m as i128) as usize
}

fn mobius(n: usize) -> i32 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

impl HallBasis {
    pub fn new(generators: usize, step: usize) -> Result<Self> {
        Self::with_limits(generators, step, BasisLimits::default())
    }

    pub fn with_limits(generators: usize, step: usize, limits: BasisLimits) -> Result<Self> {
        if generators == 0 {
            return Err(Error::usage("a Hall basis needs at least one generator"));
        }
        if step == 0 {
            return Err(Error::usage("step must be at least 1"));
        }
        if generators > limits.max_generators {
            return Err(Error::resource(
                format!("generator count {generators}"),
                limits.max_generators as u64,
            ));
        }
        if step > limits.max_step {
            return Err(Error::resource(format!("step {step}"), limits.max_step as u64));
        }
        let dim: usize = (1..=step).map(|m| witt_dimension(generators, m)).sum();
        if dim > limits.max_dimension {
            return Err(Error::resource(
                format!("dimension {dim} of the free step-{step} algebra on {generators} generators"),
                limits.max_dimension as u64,
            ));
        }

        let mut elements: Vec<HallElement> = (0..generators)
            .map(|g| HallElement {
                degree: 1,
                tree: HallTree::Generator(g),
            })
            .collect();
        let mut by_degree = vec![0..generators];
        for n in 2..=step {
            let start = elements.len();
            let mut fresh = Vec::new();
            for u in 0..start {
                for v in 0..u {
                    if elements[u].degree + elements[v].degree != n {
                        continue;
                    }
                    if let HallTree::Bracket(_, y) = elements[u].tree {
                        if y > v {
                            continue;
                        }
                    }
                    fresh.push((u, v));
                }
            }
            fresh.sort_unstable();
            elements.extend(fresh.into_iter().map(|(u, v)| HallElement {
                degree: n,
                tree: HallTree::Bracket(u, v),
            }));
            by_degree.push(start..elements.len());
        }
        debug_assert_eq!(elements.len(), dim);

        let expansions = expand_all(generators, &elements);
        let projector = (1..=step)
            .map(|d| DegreeProjector::build(&expansions[by_degree[d - 1].clone()]))
            .collect();

        let mut basis = HallBasis {
            generators,
            step,
            elements,
            structure: Vec::new(),
            by_degree,
            projector,
        };
        basis.structure = basis.build_structure(&expansions);
        Ok(basis)
    }

    fn build_structure(&self, expansions: &[SparseWord]) -> Vec<Vec<Vec<(usize, Q)>>> {
        let n = self.elements.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let degree = self.elements[i].degree + self.elements[j].degree;
                if degree > self.step {
                    continue;
                }
                let word = commutator_words(self.generators, &expansions[i], &expansions[j]);
                let coords = self.project_homogeneous(degree, &word);
                let entry: Vec<(usize, Q)> = coords.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                table[j][i] = entry.iter().map(|(l, c)| (*l, -c)).collect();
                table[i][j] = entry;
            }
        }
        table
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[HallElement] {
        &self.elements
    }

    pub fn degree(&self, index: usize) -> usize {
        self.elements[index].degree
    }

    pub fn degree_range(&self, degree: usize) -> std::ops::Range<usize> {
        self.by_degree[degree - 1].clone()
    }

    pub fn id(&self) -> String {
        format!("free-k{}-s{}", self.generators, self.step)
    }

    /// Sparse coordinates of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.structure[i][j]
    }

    pub fn bracket_coords(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dimension()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let entry = &self.structure[i][j];
                if entry.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (l, s) in entry {
                    out[*l] += &c * s;
                }
            }
        }
        out
    }

    /// Expansion of a Lie element in the truncated free associative algebra.
    pub fn to_tensor(&self, coords: &[Q]) -> Tensor {
        let expansions = expand_all(self.generators, &self.elements);
        let mut t = Tensor::zero(self.generators, self.step);
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let part = t.part_mut(self.elements[i].degree);
            for (w, v) in &expansions[i].terms {
                part[*w] += c * Q::from_integer((*v).into());
            }
        }
        t
    }

    /// Hall coordinates of a tensor known to be a Lie element; the constant
    /// term is ignored.
    pub fn from_tensor(&self, t: &Tensor) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dimension()];
        for d in 1..=self.step.min(t.max_degree()) {
            let part = t.part(d);
            let proj = &self.projector[d - 1];
            let range = self.degree_range(d);
            for (row, w) in proj.pivot_words.iter().enumerate() {
                let v = &part[*w];
                if v.is_zero() {
                    continue;
                }
                for (col, inv) in proj.inverse[row].iter().enumerate() {
                    if !inv.is_zero() {
                        out[range.start + col] += v * inv;
                    }
                }
            }
        }
        out
    }

    fn project_homogeneous(&self, degree: usize, word: &BTreeMap<usize, i64>) -> Vec<(usize, Q)> {
        let proj = &self.projector[degree - 1];
        let range = self.degree_range(degree);
        let mut coords = vec![Q::zero(); range.len()];
        for (row, w) in proj.pivot_words.iter().enumerate() {
            if let Some(v) = word.get(w) {
                let v = q(*v);
                for (col, inv) in proj.inverse[row].iter().enumerate() {
                    coords[col] += &v * inv;
                }
            }
        }
        coords.into_iter().enumerate().map(|(c, x)| (range.start + c, x)).collect()
    }

    /// Bracketing tree of a basis element, written over `x1..xk`.
    pub fn tree_string(&self, index: usize) -> String {
        match self.elements[index].tree {
            HallTree::Generator(g) => format!("x{}", g + 1),
            HallTree::Bracket(u, v) => format!("[{},{}]", self.tree_string(u), self.tree_string(v)),
        }
    }

    /// Documentation table: index, degree, bracketing tree and the nonzero
    /// structure constants `[e_index, e_j] = sum c e_l` as `j:l=c` entries.
    pub fn table_rows(&self) -> Vec<[String; 4]> {
        (0..self.dimension())
            .map(|i| {
                let structure: Vec<String> = (0..self.dimension())
                    .flat_map(|j| {
                        self.structure[i][j]
                            .iter()
                            .map(move |(l, c)| format!("{}:{}={}", j + 1, l + 1, c))
                    })
                    .collect();
                [
                    (i + 1).to_string(),
                    self.degree(i).to_string(),
                    self.tree_string(i),
                    structure.join(";"),
                ]
            })
            .collect()
    }
}

impl fmt::Debug for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HallBasis")
            .field("generators", &self.generators)
            .field("step", &self.step)
            .field("dimension", &self.dimension())
            .finish()
    }
}

impl PartialEq for HallBasis {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.step == other.step
    }
}

impl Eq for HallBasis {}

/// Homogeneous integer polynomial in the free associative algebra.
#[derive(Debug, Clone)]
struct SparseWord {
    degree: usize,
    terms: BTreeMap<usize, i64>,
}

fn expand_all(k: usize, elements: &[HallElement]) -> Vec<SparseWord> {
    let mut out: Vec<SparseWord> = Vec::with_capacity(elements.len());
    for e in elements {
        let w = match e.tree {
            HallTree::Generator(g) => SparseWord {
                degree: 1,
                terms: BTreeMap::from([(g, 1)]),
            },
            HallTree::Bracket(u, v) => SparseWord {
                degree: e.degree,
                terms: commutator_words(k, &out[u], &out[v]),
            },
        };
        out.push(w);
    }
    out
}

fn commutator_words(k: usize, a: &SparseWord, b: &SparseWord) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    let wb = k.pow(b.degree as u32);
    let wa = k.pow(a.degree as u32);
    for (ia, ca) in &a.terms {
        for (ib, cb) in &b.terms {
            *out.entry(ia * wb + ib).or_insert(0) += ca * cb;
            *out.entry(ib * wa + ia).or_insert(0) -= ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

impl DegreeProjector {
    fn build(rows: &[SparseWord]) -> Self {
        // Row-reduce the expansion matrix to find pivot words, then invert
        // the square submatrix on those columns.
        let n = rows.len();
        let mut words: Vec<usize> = rows.iter().flat_map(|r| r.terms.keys().copied()).collect();
        words.sort_unstable();
        words.dedup();
        let col_of: BTreeMap<usize, usize> = words.iter().enumerate().map(|(c, w)| (*w, c)).collect();
        let mut m: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| {
                let mut row = vec![Q::zero(); words.len()];
                for (w, c) in &r.terms {
                    row[col_of[w]] = q(*c);
                }
                row
            })
            .collect();
        let original = m.clone();
        let mut pivots = Vec::with_capacity(n);
        let mut rank = 0;
        for col in 0..words.len() {
            if rank == n {
                break;
            }
            let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for r in (rank + 1)..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &pivot;
                for c in col..words.len() {
                    let delta = &f * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        assert_eq!(rank, n, "Hall expansions must be linearly independent");

        // square[i][r] = original[i][pivot_r]; we need its inverse
        let square: Vec<Vec<Q>> = original
            .iter()
            .map(|row| pivots.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let inv = invert(square);
        // c = v[P] * inv(square), so row r of the projector is row r of inv
        DegreeProjector {
            pivot_words: pivots.iter().map(|&c| words[c]).collect(),
            inverse: inv,
        }
    }
}

fn invert(mut a: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1) } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular matrix");
        a.swap(col, p);
        inv.swap(col, p);
        let pivot = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &pivot;
            inv[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let da = &f * &a[col][c];
                a[r][c] -= da;
                let di = &f * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_numbers() {
        assert_eq!(witt_dimension(2, 1), 2);
        assert_eq!(witt_dimension(2, 2), 1);
        assert_eq!(witt_dimension(2, 3), 2);
        assert_eq!(witt_dimension(2, 4), 3);
        assert_eq!(witt_dimension(2, 5), 6);
        assert_eq!(witt_dimension(2, 6), 9);
        assert_eq!(witt_dimension(3, 2), 3);
        assert_eq!(witt_dimension(3, 3), 8);
    }

    #[test]
    fn dimensions_of_small_bases() {
        assert_eq!(HallBasis::new(2, 2).unwrap().dimension(), 3);
        assert_eq!(HallBasis::new(2, 3).unwrap().dimension(), 5);
        assert_eq!(HallBasis::new(1, 4).unwrap().dimension(), 1);
    }

    #[test]
    fn degree_counts_match_witt() {
        for k in 1..=3 {
            for s in 1..=5 {
                let Ok(b) = HallBasis::new(k, s) else { continue };
                for m in 1..=s {
                    assert_eq!(b.degree_range(m).len(), witt_dimension(k, m), "k={k} s={s} m={m}");
                }
            }
        }
    }

    #[test]
    fn budget_errors_name_the_dimension() {
        let err = HallBasis::new(4, 5).unwrap_err();
        match err {
            Error::Resource { what, budget } => {
                assert!(what.contains("dimension 294"), "{what}");
                assert_eq!(budget, 120);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(HallBasis::new(2, 7), Err(Error::Resource { .. })));
        assert!(matches!(HallBasis::new(5, 1), Err(Error::Resource { .. })));
        assert!(matches!(HallBasis::new(0, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn structure_table_is_antisymmetric_and_graded() {
        let b = HallBasis::new(3, 3).unwrap();
        let n = b.dimension();
        for i in 0..n {
            assert!(b.structure(i, i).is_empty());
            for j in 0..n {
                let a: Vec<_> = b.structure(i, j).iter().map(|(l, c)| (*l, -c)).collect();
                assert_eq!(a, b.structure(j, i));
                for (l, _) in b.structure(i, j) {
                    assert_eq!(b.degree(*l), b.degree(i) + b.degree(j));
                }
                if b.degree(i) + b.degree(j) > b.step() {
                    assert!(b.structure(i, j).is_empty());
                }
            }
        }
    }

    #[test]
    fn hall_brackets_of_basic_pairs_are_unit_vectors() {
        let b = HallBasis::new(2, 4).unwrap();
        for (idx, e) in b.elements().iter().enumerate() {
            if let HallTree::Bracket(u, v) = e.tree {
                assert_eq!(b.structure(u, v), &[(idx, q(1))]);
            }
        }
    }

    #[test]
    fn jacobi_on_every_basis_triple() {
        for (k, s) in [(2, 4), (3, 3)] {
            let b = HallBasis::new(k, s).unwrap();
            let n = b.dimension();
            let unit = |i: usize| {
                let mut v = vec![Q::zero(); n];
                v[i] = q(1);
                v
            };
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let (x, y, z) = (unit(i), unit(j), unit(l));
                        let t1 = b.bracket_coords(&x, &b.bracket_coords(&y, &z));
                        let t2 = b.bracket_coords(&y, &b.bracket_coords(&z, &x));
                        let t3 = b.bracket_coords(&z, &b.bracket_coords(&x, &y));
                        for c in 0..n {
                            assert!((&t1[c] + &t2[c] + &t3[c]).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_round_trip() {
        let b = HallBasis::new(2, 5).unwrap();
        let coords: Vec<Q> = (0..b.dimension()).map(|i| Q::new((i as i64 - 3).into(), 7.into())).collect();
        assert_eq!(b.from_tensor(&b.to_tensor(&coords)), coords);
    }

    #[test]
    fn tree_strings() {
        let b = HallBasis::new(2, 3).unwrap();
        let names: Vec<String> = (0..5).map(|i| b.tree_string(i)).collect();
        assert_eq!(names, ["x1", "x2", "[x2,x1]", "[[x2,x1],x1]", "[[x2,x1],x2]"]);
    }
}
