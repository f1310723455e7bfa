//! Quivers, admissible relations and bound quiver algebras.
//!
//! Paths compose left to right: `a*b` means "first `a`, then `b`". The
//! ideal is stored as a reduced echelon form over paths ordered
//! length-lexicographically (largest path = leading term), and the basis is
//! the set of paths that are not leading terms.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Field, Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation {0}: {1}")]
    BadRelation(usize, String),
    #[error("ideal is not admissible: no power of the arrow ideal vanishes within {0} steps")]
    NotAdmissible(usize),
    #[error("algebra is not basic and Morita reduction is disabled")]
    NotBasic,
    #[error("a simple quotient is not one-dimensional over F_p (non-split top of dimension {0})")]
    NonSplit(usize),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path in a quiver; trivial paths have no arrows and `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    fn order_key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.source)
    }

    /// Concatenation `self` then `other`, if composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.clone()) {
                return Err(AlgebraError::DuplicateArrow(a.name.clone()));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(AlgebraError::UnknownVertex(format!("endpoint of arrow {}", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Validate a composable arrow sequence and return it as a path.
    pub fn path(&self, arrows: &[usize]) -> Option<Path> {
        let first = *arrows.first()?;
        let mut cur = self.arrows[first].target;
        for &a in &arrows[1..] {
            if self.arrows[a].source != cur {
                return None;
            }
            cur = self.arrows[a].target;
        }
        Some(Path { source: self.arrows[first].source, target: cur, arrows: arrows.to_vec() })
    }

    /// All paths of length exactly `len`, in ascending path order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        if len == 0 {
            return (0..self.num_vertices()).map(Path::trivial).collect();
        }
        let mut layer: Vec<Path> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| Path { source: a.source, target: a.target, arrows: vec![i] })
            .collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &layer {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen < n
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// Connected components of the underlying graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![];
            let mut stack = vec![s];
            comp[s] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn path_to_string(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e({})", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub terms: Vec<(u32, Vec<usize>)>,
}

/// Sparse coordinate vector: (basis index, nonzero coefficient).
pub type Sparse = Vec<(usize, u32)>;

#[derive(Clone, Serialize, Deserialize)]
pub struct BoundQuiverAlgebra {
    name: String,
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    /// Every path of length `>= loewy_bound` is zero.
    loewy_bound: usize,
    #[serde(skip)]
    normal_forms: HashMap<Path, Sparse>,
    #[serde(skip)]
    products: Vec<Vec<Sparse>>,
}

impl fmt::Debug for BoundQuiverAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoundQuiverAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.field == other.field
            && self.quiver == other.quiver
            && self.relations == other.relations
    }
}

const MAX_LOEWY: usize = 64;
const MAX_PATHS: usize = 200_000;

impl BoundQuiverAlgebra {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
    ) -> Result<Self, AlgebraError> {
        let relations: Vec<Relation> = relations
            .into_iter()
            .map(|r| normalize_relation(field, r))
            .collect();
        for (i, r) in relations.iter().enumerate() {
            validate_relation(&quiver, i, r)?;
        }
        let relations: Vec<Relation> = relations.into_iter().filter(|r| !r.terms.is_empty()).collect();

        // Find N with J^N contained in I + J^{N+1}.
        let mut all_paths: Vec<Vec<Path>> = vec![quiver.paths_of_length(0)];
        let mut loewy = None;
        for len in 1..=MAX_LOEWY {
            let layer = quiver.paths_of_length(len);
            all_paths.push(layer);
            let total: usize = all_paths.iter().map(|l| l.len()).sum();
            if total > MAX_PATHS {
                return Err(AlgebraError::NotAdmissible(len));
            }
            if all_paths[len].is_empty() {
                loewy = Some(len);
                break;
            }
            let (ideal, index) = truncated_ideal(field, &quiver, &relations, &all_paths, len);
            let covered = all_paths[len].iter().all(|p| {
                let mut v = vec![0u32; index.len()];
                v[index[p]] = 1;
                ideal.contains(&v)
            });
            if covered {
                loewy = Some(len);
                break;
            }
        }
        let loewy = loewy.ok_or(AlgebraError::NotAdmissible(MAX_LOEWY))?;
        all_paths.truncate(loewy);

        let (ideal, index) = truncated_ideal(field, &quiver, &relations, &all_paths, loewy - 1);
        // columns are in descending path order: index 0 = largest path
        let ordered: Vec<Path> = {
            let mut v: Vec<Path> = all_paths.iter().flatten().cloned().collect();
            v.sort_by(|a, b| b.cmp(a));
            v
        };
        let mut is_pivot = vec![false; ordered.len()];
        for &c in ideal.pivots() {
            is_pivot[c] = true;
        }
        let mut basis: Vec<Path> =
            ordered.iter().enumerate().filter(|(i, _)| !is_pivot[*i]).map(|(_, p)| p.clone()).collect();
        basis.sort();
        let basis_index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let echelon = ideal.basis_matrix();
        let pivot_row: HashMap<usize, usize> =
            ideal.pivots().iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut normal_forms = HashMap::new();
        for (col, p) in ordered.iter().enumerate() {
            let nf: Sparse = if let Some(&r) = pivot_row.get(&col) {
                let mut out = Vec::new();
                for (c2, q) in ordered.iter().enumerate() {
                    let v = echelon.get(r, c2);
                    if c2 != col && v != 0 {
                        out.push((basis_index[q], field.neg(v)));
                    }
                }
                out.sort();
                out
            } else {
                vec![(basis_index[p], 1)]
            };
            normal_forms.insert(p.clone(), nf);
        }
        let _ = index;

        let mut alg = BoundQuiverAlgebra {
            name: name.into(),
            field,
            quiver,
            relations,
            basis,
            loewy_bound: loewy,
            normal_forms,
            products: vec![],
        };
        alg.products = (0..alg.basis.len())
            .map(|i| (0..alg.basis.len()).map(|j| alg.compute_product(i, j)).collect())
            .collect();
        Ok(alg)
    }

    fn compute_product(&self, i: usize, j: usize) -> Sparse {
        match self.basis[i].concat(&self.basis[j]) {
            Some(p) => self.normal_form(&p),
            None => vec![],
        }
    }

    /// Normal form of an arbitrary path.
    pub fn normal_form(&self, p: &Path) -> Sparse {
        if p.len() >= self.loewy_bound {
            return vec![];
        }
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }
    pub fn loewy_bound(&self) -> usize {
        self.loewy_bound
    }
    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    /// Path algebra of an acyclic quiver with no relations.
    pub fn is_hereditary_presentation(&self) -> bool {
        self.relations.is_empty() && !self.quiver.has_oriented_cycle()
    }

    pub fn is_semisimple(&self) -> bool {
        self.quiver.num_arrows() == 0
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Sparse {
        &self.products[i][j]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in &self.products[i][j] {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    pub fn vertex_element(&self, v: usize) -> Vec<u32> {
        self.sparse_to_dense(&self.normal_form(&Path::trivial(v)))
    }

    pub fn arrow_element(&self, a: usize) -> Vec<u32> {
        let arrow = &self.quiver.arrows[a];
        self.path_element(&Path { source: arrow.source, target: arrow.target, arrows: vec![a] })
    }

    pub fn path_element(&self, p: &Path) -> Vec<u32> {
        self.sparse_to_dense(&self.normal_form(p))
    }

    pub fn one(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        for v in 0..self.num_vertices() {
            let e = self.vertex_element(v);
            for (o, x) in out.iter_mut().zip(e) {
                *o = self.field.add(*o, x);
            }
        }
        out
    }

    pub fn sparse_to_dense(&self, s: &Sparse) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for &(i, c) in s {
            v[i] = self.field.add(v[i], c);
        }
        v
    }

    /// Indices of basis paths from `i` to `j` (a basis of e_i A e_j).
    pub fn basis_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].source == i && self.basis[k].target == j).collect()
    }

    pub fn basis_from(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].source == i).collect()
    }

    pub fn basis_to(&self, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].target == j).collect()
    }

    /// Cartan matrix: entry (i, j) = dim e_i A e_j.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0; n]; n];
        for p in &self.basis {
            c[p.source][p.target] += 1;
        }
        c
    }

    /// Basis indices lying in the arrow ideal (paths of positive length).
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| !self.basis[k].is_trivial()).collect()
    }

    /// Matrix of left multiplication by `x` on the algebra.
    pub fn left_mult_matrix(&self, x: &[u32]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|j| {
                let mut e = vec![0u32; n];
                e[j] = 1;
                self.mul(x, &e)
            })
            .collect();
        Matrix::from_columns(self.field, n, &cols)
    }

    pub fn element_to_string(&self, x: &[u32]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let p = self.quiver.path_to_string(&self.basis[i]);
                if c == 1 {
                    p
                } else {
                    format!("{} {}", self.field.signed(c), p)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn relation_to_string(&self, r: &Relation) -> String {
        r.terms
            .iter()
            .enumerate()
            .map(|(k, (c, arrows))| {
                let p = arrows.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*");
                let s = self.field.signed(*c);
                match (k, s) {
                    (0, 1) => p,
                    (0, -1) => format!("-{p}"),
                    (0, s) => format!("{s} {p}"),
                    (_, 1) => format!(" + {p}"),
                    (_, -1) => format!(" - {p}"),
                    (_, s) if s < 0 => format!(" - {} {p}", -s),
                    (_, s) => format!(" + {s} {p}"),
                }
            })
            .collect()
    }

    /// Opposite algebra: arrows reversed, relation paths reversed.
    pub fn opposite(&self) -> BoundQuiverAlgebra {
        let quiver = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| (*c, p.iter().rev().copied().collect()))
                    .collect(),
            })
            .collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        BoundQuiverAlgebra::new(name, self.field, quiver, relations)
            .expect("opposite of an admissible presentation is admissible")
    }

    /// Rebuild over a different prime field, keeping integer coefficients.
    pub fn with_field(&self, field: Field) -> Result<BoundQuiverAlgebra, AlgebraError> {
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r.terms.iter().map(|(c, p)| (field.from_i64(self.field.signed(*c)), p.clone())).collect(),
            })
            .collect();
        BoundQuiverAlgebra::new(self.name.clone(), field, self.quiver.clone(), relations)
    }

    /// Render in the quiver DSL.
    pub fn to_dsl(&self) -> String {
        let mut s = format!("algebra {}\nfield {}\nvertices {}\n", self.name, self.field.p(), self.quiver.vertices.join(" "));
        for a in &self.quiver.arrows {
            s += &format!(
                "arrow {} : {} -> {}\n",
                a.name, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            );
        }
        for r in &self.relations {
            s += &format!("relation {}\n", self.relation_to_string(r));
        }
        s
    }
}

fn normalize_relation(field: Field, r: Relation) -> Relation {
    let mut acc: Vec<(Vec<usize>, u32)> = Vec::new();
    for (c, p) in r.terms {
        let c = c % field.p();
        match acc.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 = field.add(entry.1, c),
            None => acc.push((p, c)),
        }
    }
    Relation { terms: acc.into_iter().filter(|(_, c)| *c != 0).map(|(p, c)| (c, p)).collect() }
}

fn validate_relation(q: &Quiver, i: usize, r: &Relation) -> Result<(), AlgebraError> {
    let mut ends = None;
    for (_, arrows) in &r.terms {
        if arrows.len() < 2 {
            return Err(AlgebraError::BadRelation(i, "every path must have length at least 2".into()));
        }
        let p = q
            .path(arrows)
            .ok_or_else(|| AlgebraError::BadRelation(i, "arrows do not compose".into()))?;
        match ends {
            None => ends = Some((p.source, p.target)),
            Some(e) if e != (p.source, p.target) => {
                return Err(AlgebraError::BadRelation(i, "paths are not parallel".into()))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Span of all u*rho*v truncated to paths of length <= max_len, in the
/// space of paths of length <= max_len with columns in descending order.
fn truncated_ideal(
    field: Field,
    quiver: &Quiver,
    relations: &[Relation],
    all_paths: &[Vec<Path>],
    max_len: usize,
) -> (Subspace, HashMap<Path, usize>) {
    let mut ordered: Vec<&Path> = all_paths[..=max_len].iter().flatten().collect();
    ordered.sort_by(|a, b| b.cmp(a));
    let index: HashMap<Path, usize> = ordered.iter().enumerate().map(|(i, p)| ((*p).clone(), i)).collect();
    let n = ordered.len();
    let mut vectors = Vec::new();
    for r in relations {
        let min_len = r.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        if min_len > max_len {
            continue;
        }
        let rp = quiver.path(&r.terms[0].1).expect("validated");
        let (s, t) = (rp.source, rp.target);
        for lu in 0..=(max_len - min_len) {
            let us: Vec<&Path> = all_paths[lu].iter().filter(|u| u.target == s).collect();
            for lv in 0..=(max_len - min_len - lu) {
                let vs: Vec<&Path> = all_paths[lv].iter().filter(|v| v.source == t).collect();
                for u in &us {
                    for v in &vs {
                        let mut vec = vec![0u32; n];
                        let mut any = false;
                        for (c, arrows) in &r.terms {
                            let len = u.len() + arrows.len() + v.len();
                            if len > max_len {
                                continue;
                            }
                            let mut full = u.arrows.clone();
                            full.extend_from_slice(arrows);
                            full.extend_from_slice(&v.arrows);
                            let p = Path { source: u.source, target: v.target, arrows: full };
                            let k = index[&p];
                            vec[k] = field.add(vec[k], *c);
                            any = true;
                        }
                        if any {
                            vectors.push(vec);
                        }
                    }
                }
            }
        }
    }
    (Subspace::span(field, n, &vectors), index)
}

/// An isomorphism A -> B: vertex v goes to e_{vertex_map[v]}, arrow a to
/// `arrow_images[a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraIsomorphism {
    pub vertex_map: Vec<usize>,
    pub arrow_images: Vec<Vec<u32>>,
}

impl AlgebraIsomorphism {
    /// Image of a basis path of A.
    pub fn path_image(&self, b: &BoundQuiverAlgebra, p: &Path) -> Vec<u32> {
        let mut x = b.vertex_element(self.vertex_map[p.source]);
        for &ar in &p.arrows {
            x = b.mul(&x, &self.arrow_images[ar]);
        }
        x
    }
}

/// Search for an algebra isomorphism A -> B sending vertices to vertices
/// (up to a permutation) and arrows into the radical. `Some(None)` when the
/// search space is exhausted, `None` when more than `cap` assignments would
/// be tried.
pub fn find_isomorphism(a: &BoundQuiverAlgebra, b: &BoundQuiverAlgebra, cap: usize) -> Option<Option<AlgebraIsomorphism>> {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.dim() != b.dim() || a.field() != b.field() || a.quiver.num_arrows() != b.quiver.num_arrows() {
        return Some(None);
    }
    let f = a.field();
    let (ca, cb) = (a.cartan(), b.cartan());
    let arrow_count = |q: &Quiver, i: usize, j: usize| q.arrows.iter().filter(|x| x.source == i && x.target == j).count();
    let mut budget = cap;
    for sigma in (0..n).permutations(n) {
        let fits = (0..n).all(|i| {
            (0..n).all(|j| {
                ca[i][j] == cb[sigma[i]][sigma[j]]
                    && arrow_count(&a.quiver, i, j) == arrow_count(&b.quiver, sigma[i], sigma[j])
            })
        });
        if !fits {
            continue;
        }
        // candidate images: nonzero radical elements of e_σi B e_σj
        let choices: Vec<Vec<Vec<u32>>> = a
            .quiver
            .arrows
            .iter()
            .map(|arr| {
                let idx: Vec<usize> = b
                    .basis_between(sigma[arr.source], sigma[arr.target])
                    .into_iter()
                    .filter(|&k| !b.basis[k].is_trivial())
                    .collect();
                let mut out = Vec::new();
                let total = (f.p() as usize).pow(idx.len() as u32);
                for code in 1..total {
                    let mut v = vec![0u32; b.dim()];
                    let mut c = code;
                    for &k in &idx {
                        v[k] = (c % f.p() as usize) as u32;
                        c /= f.p() as usize;
                    }
                    if idx.iter().any(|&k| v[k] != 0 && b.basis[k].len() == 1) {
                        out.push(v);
                    }
                }
                out
            })
            .collect();
        let mut pick = vec![0usize; choices.len()];
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        loop {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let images: Vec<Vec<u32>> = pick.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
            if is_isomorphism(a, b, &sigma, &images) {
                return Some(Some(AlgebraIsomorphism { vertex_map: sigma, arrow_images: images }));
            }
            let mut k = 0;
            while k < pick.len() {
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
        }
    }
    Some(None)
}

fn is_isomorphism(a: &BoundQuiverAlgebra, b: &BoundQuiverAlgebra, sigma: &[usize], images: &[Vec<u32>]) -> bool {
    let f = a.field();
    let eval = |arrows: &[usize], start: usize| -> Vec<u32> {
        let mut x = b.vertex_element(sigma[start]);
        for &ar in arrows {
            x = b.mul(&x, &images[ar]);
        }
        x
    };
    for r in &a.relations {
        let mut sum = vec![0u32; b.dim()];
        for (c, path) in &r.terms {
            let start = a.quiver.arrows[path[0]].source;
            let v = eval(path, start);
            for (s, x) in sum.iter_mut().zip(v) {
                *s = f.add(*s, f.mul(*c, x));
            }
        }
        if sum.iter().any(|&x| x != 0) {
            return false;
        }
    }
    let cols: Vec<Vec<u32>> = a.basis.iter().map(|p| eval(&p.arrows, p.source)).collect();
    Matrix::from_columns(f, b.dim(), &cols).rank() == b.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn isomorphism_search() {
        let g = fixtures::alg_gen4();
        assert!(find_isomorphism(&g, &g.opposite(), 10_000).unwrap().is_some());
        let a3 = fixtures::alg_a3();
        assert!(find_isomorphism(&a3, &a3.opposite(), 10_000).unwrap().is_some());
        let src = fixtures::algebra("ALG-A3-SOURCE").unwrap();
        assert!(find_isomorphism(&a3, &src, 10_000).unwrap().is_none());
        let h = fixtures::alg_her4();
        assert!(find_isomorphism(&g, &h, 10_000).unwrap().is_none());
    }

    #[test]
    fn fixture_dimensions() {
        assert_eq!(fixtures::alg_a3().dim(), 6);
        assert_eq!(fixtures::alg_her4().dim(), 10);
        assert_eq!(fixtures::alg_gen4().dim(), 8);
    }

    #[test]
    fn idempotents_are_orthogonal_and_sum_to_one() {
        for alg in [fixtures::alg_a3(), fixtures::alg_her4(), fixtures::alg_gen4()] {
            let n = alg.num_vertices();
            let es: Vec<_> = (0..n).map(|v| alg.vertex_element(v)).collect();
            for i in 0..n {
                for j in 0..n {
                    let prod = alg.mul(&es[i], &es[j]);
                    if i == j {
                        assert_eq!(prod, es[i]);
                    } else {
                        assert!(prod.iter().all(|&x| x == 0));
                    }
                }
            }
            let one = alg.one();
            for k in 0..alg.dim() {
                let mut e = vec![0; alg.dim()];
                e[k] = 1;
                assert_eq!(alg.mul(&one, &e), e);
                assert_eq!(alg.mul(&e, &one), e);
            }
        }
    }

    #[test]
    fn arrow_products() {
        let her = fixtures::alg_her4();
        let q = her.quiver();
        let (alpha, beta) = (q.arrow_index("alpha").unwrap(), q.arrow_index("beta").unwrap());
        let ab = her.mul(&her.arrow_element(alpha), &her.arrow_element(beta));
        let path = q.path(&[alpha, beta]).unwrap();
        assert_eq!(ab, her.path_element(&path));
        assert!(ab.iter().any(|&x| x != 0));

        let gen = fixtures::alg_gen4();
        let ab = gen.mul(&gen.arrow_element(alpha), &gen.arrow_element(beta));
        assert!(ab.iter().all(|&x| x == 0));
    }

    #[test]
    fn associativity_of_structure_constants() {
        let alg = fixtures::alg_her4();
        let d = alg.dim();
        let unit = |i: usize| {
            let mut e = vec![0; d];
            e[i] = 1;
            e
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
                }
            }
        }
    }

    #[test]
    fn commutativity_relation_keeps_one_path() {
        let f = Field::new(3).unwrap();
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![
                Arrow { name: "a".into(), source: 3, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 0 },
                Arrow { name: "c".into(), source: 3, target: 2 },
                Arrow { name: "d".into(), source: 2, target: 0 },
            ],
        )
        .unwrap();
        let rel = Relation { terms: vec![(1, vec![0, 1]), (2, vec![2, 3])] };
        let alg = BoundQuiverAlgebra::new("sq", f, q, vec![rel]).unwrap();
        assert_eq!(alg.dim(), 9);
        let ab = alg.mul(&alg.arrow_element(0), &alg.arrow_element(1));
        let cd = alg.mul(&alg.arrow_element(2), &alg.arrow_element(3));
        // a*b = -2 c*d = c*d over F_3
        assert_eq!(ab, cd);
    }

    #[test]
    fn loop_without_relations_is_rejected() {
        let q = Quiver::new(vec!["1".into()], vec![Arrow { name: "x".into(), source: 0, target: 0 }]).unwrap();
        assert!(matches!(
            BoundQuiverAlgebra::new("loop", Field::default(), q, vec![]),
            Err(AlgebraError::NotAdmissible(_))
        ));
    }

    #[test]
    fn truncated_loop() {
        let q = Quiver::new(vec!["1".into()], vec![Arrow { name: "x".into(), source: 0, target: 0 }]).unwrap();
        let rel = Relation { terms: vec![(1, vec![0, 0, 0])] };
        let alg = BoundQuiverAlgebra::new("k[x]/x^3", Field::default(), q, vec![rel]).unwrap();
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn opposite_is_an_involution() {
        for alg in [fixtures::alg_a3(), fixtures::alg_gen4()] {
            let op = alg.opposite();
            assert_eq!(op.dim(), alg.dim());
            let back = op.opposite();
            assert_eq!(back.quiver(), alg.quiver());
            assert_eq!(back.relations(), alg.relations());
        }
        let op = fixtures::alg_a3().opposite();
        let a = &op.quiver().arrows()[0];
        // a : 3 -> 2 becomes 2 -> 3
        assert_eq!((op.vertex_name(a.source), op.vertex_name(a.target)), ("2", "3"));
    }
}
