//! Right modules over a bound quiver algebra, as quiver representations.
//!
//! Arrow `a: s -> t` acts by a matrix `X_s -> X_t` on column vectors, so the
//! path `a*b` acts as `M_b * M_a`. Module maps are per-vertex matrices.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraIsomorphism, BoundQuiverAlgebra, Path};
use crate::dsl::{lines, parse_matrix_literal, ParseError};
use crate::linalg::{Field, Matrix, Subspace};
use crate::matalg::{AbstractModule, MatrixAlgebra, Quiverization};

pub type Alg = Arc<BoundQuiverAlgebra>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation {0} is not satisfied")]
    RelationViolated(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("the zero module has no such property")]
    ZeroModule,
    #[error("module is not projective")]
    NotProjective,
    #[error("module is projective")]
    Projective,
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("the indecomposable catalog is incomplete (bound {0})")]
    IncompleteCatalog(usize),
    #[error("complex is not silting: {0}")]
    NotSilting(String),
    #[error("the two splitting tests disagree: {0}")]
    RouteDisagreement(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone)]
pub struct Representation {
    alg: Alg,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation[{}]({:?})", self.loewy_name(), self.dims)
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.maps == other.maps && same_algebra(&self.alg, &other.alg)
    }
}

pub fn same_algebra(a: &Alg, b: &Alg) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    pub fn new(alg: Alg, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, ModuleError> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.num_arrows() {
            return Err(ModuleError::Shape("wrong number of vertices or arrows".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(ModuleError::Shape(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let x = Representation { alg, dims, maps };
        for r in x.alg.relations() {
            let s = x.alg.quiver().path(&r.terms[0].1).unwrap();
            let f = x.field();
            let mut acc = Matrix::zeros(f, x.dims[s.target], x.dims[s.source]);
            for (c, arrows) in &r.terms {
                let p = x.alg.quiver().path(arrows).unwrap();
                acc.add_scaled(*c, &x.path_matrix(&p));
            }
            if !acc.is_zero() {
                return Err(ModuleError::RelationViolated(x.alg.relation_to_string(r)));
            }
        }
        Ok(x)
    }

    /// Construct without validating relations (callers guarantee them).
    pub(crate) fn from_parts(alg: Alg, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        debug_assert!(Representation::new(alg.clone(), dims.clone(), maps.clone()).is_ok());
        Representation { alg, dims, maps }
    }

    pub fn zero(alg: Alg) -> Self {
        let f = alg.field();
        let maps = alg.quiver().arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        let n = alg.num_vertices();
        Representation { alg, dims: vec![0; n], maps }
    }

    pub fn algebra(&self) -> &Alg {
        &self.alg
    }
    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// Matrix of the path acting X_source -> X_target.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Action of the algebra element `x` restricted to X_s -> X_t.
    pub fn element_matrix(&self, x: &[u32], s: usize, t: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dims[t], self.dims[s]);
        for k in self.alg.basis_between(s, t) {
            if x[k] != 0 {
                m.add_scaled(x[k], &self.path_matrix(&self.alg.basis()[k]));
            }
        }
        m
    }

    /// Matrix of v -> v * x on the total space.
    pub fn action_matrix(&self, x: &[u32]) -> Matrix {
        let n = self.total_dim();
        let off = self.offsets();
        let mut m = Matrix::zeros(self.field(), n, n);
        for (k, p) in self.alg.basis().iter().enumerate() {
            if x[k] == 0 {
                continue;
            }
            let pm = self.path_matrix(p).scale(x[k]);
            let mut block = m.block(off[p.target], off[p.source], pm.rows(), pm.cols());
            block = block.add(&pm);
            m.set_block(off[p.target], off[p.source], &block);
        }
        m
    }

    pub fn direct_sum(parts: &[Representation]) -> Representation {
        assert!(!parts.is_empty(), "direct sum of no modules needs an algebra");
        let alg = parts[0].alg.clone();
        let f = alg.field();
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|x| x.dims[v]).sum()).collect();
        let maps = (0..alg.quiver().num_arrows())
            .map(|a| Matrix::block_diag(f, &parts.iter().map(|x| x.maps[a].clone()).collect::<Vec<_>>()))
            .collect();
        Representation { alg, dims, maps }
    }

    /// Conjugate by per-vertex invertible matrices: M_a -> g_t M_a g_s^{-1}.
    pub fn base_change(&self, g: &[Matrix]) -> Result<Representation, ModuleError> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().map_err(|_| ModuleError::Shape("base change is not invertible".into())))
            .collect::<Result<_, _>>()?;
        let maps = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.target].mul(m).mul(&inv[a.source]))
            .collect();
        Ok(Representation { alg: self.alg.clone(), dims: self.dims.clone(), maps })
    }

    /// Same matrices over another (isomorphically presented) algebra.
    pub fn with_algebra(&self, alg: Alg) -> Result<Representation, ModuleError> {
        Representation::new(alg, self.dims.clone(), self.maps.clone())
    }

    /// Subspaces J^k X at each vertex, until zero.
    pub fn radical_series(&self) -> Vec<Vec<Subspace>> {
        let f = self.field();
        let mut layers = vec![self.dims.iter().map(|&d| Subspace::full(f, d)).collect::<Vec<_>>()];
        loop {
            let last = layers.last().unwrap();
            if last.iter().all(|s| s.is_zero()) {
                break;
            }
            let next = self.arrow_image_of(last);
            layers.push(next);
        }
        layers
    }

    fn arrow_image_of(&self, spaces: &[Subspace]) -> Vec<Subspace> {
        let f = self.field();
        let mut gens: Vec<Vec<Vec<u32>>> = vec![vec![]; self.dims.len()];
        for (a, arr) in self.alg.quiver().arrows().iter().enumerate() {
            for v in spaces[arr.source].basis() {
                gens[arr.target].push(self.maps[a].mul_vec(&v));
            }
        }
        gens.iter().enumerate().map(|(v, g)| Subspace::span(f, self.dims[v], g)).collect()
    }

    /// Loewy layers as multisets of vertices: `layers[k][v]` = multiplicity.
    pub fn loewy_layers(&self) -> Vec<Vec<usize>> {
        let series = self.radical_series();
        series
            .windows(2)
            .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| a.dim() - b.dim()).collect())
            .collect()
    }

    /// Stack notation: top layer first, layers separated by `/`, vertices
    /// within a layer by spaces. The zero module is `0`.
    pub fn loewy_name(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.loewy_layers()
            .iter()
            .map(|layer| {
                let mut names = Vec::new();
                for (v, &m) in layer.iter().enumerate() {
                    for _ in 0..m {
                        names.push(self.alg.vertex_name(v).to_string());
                    }
                }
                names.join(" ")
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn dims_string(&self) -> String {
        format!("({})", self.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
    }

    /// Render in the module file format.
    pub fn to_text(&self, name: &str) -> String {
        let q = self.alg.quiver();
        let mut s = format!("module {} over {}\n", name, self.alg.name());
        let dims: Vec<String> = (0..self.dims.len()).map(|v| format!("{}:{}", q.vertices()[v], self.dims[v])).collect();
        s += &format!("dims {}\n", dims.join(" "));
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            let rows: Vec<String> = m
                .to_rows()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            s += &format!("map {} = [{}]\n", a.name, rows.join(","));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = self.alg.quiver();
        let dims: serde_json::Map<String, serde_json::Value> =
            (0..self.dims.len()).map(|v| (q.vertices()[v].clone(), self.dims[v].into())).collect();
        let maps: serde_json::Map<String, serde_json::Value> = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| (a.name.clone(), serde_json::to_value(m.to_rows()).unwrap()))
            .collect();
        serde_json::json!({ "dims": dims, "maps": maps })
    }
}

/// A module homomorphism: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn zero(x: &Representation, y: &Representation) -> ModuleMap {
        let f = x.field();
        ModuleMap { blocks: (0..x.dims.len()).map(|v| Matrix::zeros(f, y.dims[v], x.dims[v])).collect() }
    }

    pub fn identity(x: &Representation) -> ModuleMap {
        let f = x.field();
        ModuleMap { blocks: x.dims.iter().map(|&d| Matrix::identity(f, d)).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn add_scaled(&mut self, c: u32, other: &ModuleMap) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            a.add_scaled(c, b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.rows() == b.cols() && b.is_invertible())
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    /// Block-diagonal matrix on total spaces.
    pub fn total_matrix(&self) -> Matrix {
        let f = self.blocks.first().map(|b| b.field()).unwrap_or_default();
        Matrix::block_diag(f, &self.blocks)
    }

    /// Recover per-vertex blocks from a total matrix.
    pub fn from_total(x: &Representation, y: &Representation, m: &Matrix) -> ModuleMap {
        let (ox, oy) = (x.offsets(), y.offsets());
        ModuleMap {
            blocks: (0..x.dims.len()).map(|v| m.block(oy[v], ox[v], y.dims[v], x.dims[v])).collect(),
        }
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn is_homomorphism(&self, x: &Representation, y: &Representation) -> bool {
        x.alg.quiver().arrows().iter().enumerate().all(|(a, arr)| {
            self.blocks[arr.target].mul(&x.maps[a]) == y.maps[a].mul(&self.blocks[arr.source])
        })
    }
}

/// Basis of Hom_A(X, Y).
pub fn hom_basis(x: &Representation, y: &Representation) -> Vec<ModuleMap> {
    let f = x.field();
    let n = x.dims.len();
    let mut var_off = vec![0usize; n + 1];
    for v in 0..n {
        var_off[v + 1] = var_off[v] + y.dims[v] * x.dims[v];
    }
    let nvars = var_off[n];
    if nvars == 0 {
        return vec![];
    }
    let var = |v: usize, i: usize, j: usize| var_off[v] + i * x.dims[v] + j;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (a, arr) in x.alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (mx, my) = (&x.maps[a], &y.maps[a]);
        // f_t * MX_a - MY_a * f_s = 0, entries (i, j) with i < dimY_t, j < dimX_s
        for i in 0..y.dims[t] {
            for j in 0..x.dims[s] {
                let mut row = vec![0u32; nvars];
                for k in 0..x.dims[t] {
                    let c = mx.get(k, j);
                    if c != 0 {
                        let idx = var(t, i, k);
                        row[idx] = f.add(row[idx], c);
                    }
                }
                for k in 0..y.dims[s] {
                    let c = my.get(i, k);
                    if c != 0 {
                        let idx = var(s, k, j);
                        row[idx] = f.sub(row[idx], c);
                    }
                }
                if row.iter().any(|&c| c != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_row_vectors(f, nvars, &rows);
    system
        .kernel_basis()
        .into_iter()
        .map(|sol| ModuleMap {
            blocks: (0..n)
                .map(|v| Matrix::from_flat(f, y.dims[v], x.dims[v], sol[var_off[v]..var_off[v + 1]].to_vec()))
                .collect(),
        })
        .collect()
}

pub fn hom_dim(x: &Representation, y: &Representation) -> usize {
    hom_basis(x, y).len()
}

/// Submodule spanned by per-vertex subspaces (assumed arrow-stable), with
/// its inclusion. The basis at each vertex is the echelon basis.
pub fn submodule(x: &Representation, spaces: &[Subspace]) -> (Representation, ModuleMap) {
    let f = x.field();
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let maps = x
        .alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let cols: Vec<Vec<u32>> = spaces[arr.source]
                .basis()
                .iter()
                .map(|v| {
                    spaces[arr.target]
                        .coordinates(&x.maps[a].mul_vec(v))
                        .expect("subspaces are stable under arrows")
                })
                .collect();
            Matrix::from_columns(f, dims[arr.target], &cols)
        })
        .collect();
    let incl = ModuleMap {
        blocks: spaces
            .iter()
            .enumerate()
            .map(|(v, s)| Matrix::from_columns(f, x.dims[v], &s.basis()))
            .collect(),
    };
    (Representation::from_parts(x.alg.clone(), dims, maps), incl)
}

/// Quotient by arrow-stable per-vertex subspaces, with the projection.
pub fn quotient_module(x: &Representation, spaces: &[Subspace]) -> (Representation, ModuleMap) {
    let f = x.field();
    let keep: Vec<Vec<usize>> = spaces
        .iter()
        .enumerate()
        .map(|(v, s)| {
            let mut piv = vec![false; x.dims[v]];
            for &p in s.pivots() {
                piv[p] = true;
            }
            (0..x.dims[v]).filter(|&i| !piv[i]).collect()
        })
        .collect();
    let project = |v: usize, w: &[u32]| -> Vec<u32> {
        let r = spaces[v].reduce(w);
        keep[v].iter().map(|&i| r[i]).collect()
    };
    let dims: Vec<usize> = keep.iter().map(|k| k.len()).collect();
    let maps = x
        .alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let cols: Vec<Vec<u32>> = keep[arr.source]
                .iter()
                .map(|&i| project(arr.target, &x.maps[a].column(i)))
                .collect();
            Matrix::from_columns(f, dims[arr.target], &cols)
        })
        .collect();
    let proj = ModuleMap {
        blocks: (0..x.dims.len())
            .map(|v| {
                let cols: Vec<Vec<u32>> =
                    (0..x.dims[v]).map(|i| project(v, &crate::linalg::unit_vec(x.dims[v], i))).collect();
                Matrix::from_columns(f, dims[v], &cols)
            })
            .collect(),
    };
    (Representation::from_parts(x.alg.clone(), dims, maps), proj)
}

/// The map out of `quotient_module(x, spaces)` induced by `h`, which must
/// vanish on the spaces.
pub fn factor_through_quotient(spaces: &[Subspace], h: &ModuleMap) -> ModuleMap {
    ModuleMap {
        blocks: spaces
            .iter()
            .zip(&h.blocks)
            .map(|(s, b)| {
                let mut piv = vec![false; s.ambient()];
                for &p in s.pivots() {
                    piv[p] = true;
                }
                b.select_columns(&(0..s.ambient()).filter(|&i| !piv[i]).collect::<Vec<_>>())
            })
            .collect(),
    }
}

pub fn kernel(f: &ModuleMap, x: &Representation) -> (Representation, ModuleMap) {
    let fl = x.field();
    let spaces: Vec<Subspace> =
        f.blocks.iter().enumerate().map(|(v, b)| Subspace::span(fl, x.dims[v], &b.kernel_basis())).collect();
    submodule(x, &spaces)
}

pub fn image_spaces(f: &ModuleMap, y: &Representation) -> Vec<Subspace> {
    let fl = y.field();
    f.blocks
        .iter()
        .enumerate()
        .map(|(v, b)| Subspace::span(fl, y.dims[v], &b.column_space_basis()))
        .collect()
}

pub fn image(f: &ModuleMap, y: &Representation) -> (Representation, ModuleMap) {
    submodule(y, &image_spaces(f, y))
}

pub fn cokernel(f: &ModuleMap, y: &Representation) -> (Representation, ModuleMap) {
    quotient_module(y, &image_spaces(f, y))
}

/// Smallest submodule containing the given per-vertex vectors.
pub fn generated_submodule(x: &Representation, gens: &[Vec<Vec<u32>>]) -> Vec<Subspace> {
    let f = x.field();
    let mut spaces: Vec<Subspace> =
        gens.iter().enumerate().map(|(v, g)| Subspace::span(f, x.dims[v], g)).collect();
    loop {
        let img = x.arrow_image_of(&spaces);
        let next: Vec<Subspace> = spaces.iter().zip(&img).map(|(a, b)| a.sum(b)).collect();
        if next.iter().zip(&spaces).all(|(a, b)| a.dim() == b.dim()) {
            return spaces;
        }
        spaces = next;
    }
}

pub fn radical_spaces(x: &Representation) -> Vec<Subspace> {
    let f = x.field();
    x.arrow_image_of(&x.dims.iter().map(|&d| Subspace::full(f, d)).collect::<Vec<_>>())
}

pub fn radical(x: &Representation) -> (Representation, ModuleMap) {
    submodule(x, &radical_spaces(x))
}

pub fn top(x: &Representation) -> (Representation, ModuleMap) {
    quotient_module(x, &radical_spaces(x))
}

pub fn socle_spaces(x: &Representation) -> Vec<Subspace> {
    let f = x.field();
    let q = x.alg.quiver();
    (0..x.dims.len())
        .map(|v| {
            let outgoing: Vec<Matrix> =
                q.arrows().iter().enumerate().filter(|(_, a)| a.source == v).map(|(i, _)| x.maps[i].clone()).collect();
            let mut stacked = Matrix::zeros(f, 0, x.dims[v]);
            for m in outgoing {
                stacked = stacked.vstack(&m);
            }
            Subspace::span(f, x.dims[v], &stacked.kernel_basis())
        })
        .collect()
}

pub fn socle(x: &Representation) -> (Representation, ModuleMap) {
    submodule(x, &socle_spaces(x))
}

pub fn simple(alg: &Alg, i: usize) -> Representation {
    let mut dims = vec![0; alg.num_vertices()];
    dims[i] = 1;
    let f = alg.field();
    let maps = alg.quiver().arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
    Representation::from_parts(alg.clone(), dims, maps)
}

/// P(i) = e_i A; the basis at vertex t is the basis paths from i to t.
pub fn projective(alg: &Alg, i: usize) -> Representation {
    let f = alg.field();
    let n = alg.num_vertices();
    let at: Vec<Vec<usize>> = (0..n).map(|t| alg.basis_between(i, t)).collect();
    let dims: Vec<usize> = at.iter().map(|v| v.len()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let ae = alg.arrow_element(a);
            let cols: Vec<Vec<u32>> = at[arr.source]
                .iter()
                .map(|&k| {
                    let prod = alg.mul(&crate::linalg::unit_vec(alg.dim(), k), &ae);
                    at[arr.target].iter().map(|&m| prod[m]).collect()
                })
                .collect();
            Matrix::from_columns(f, dims[arr.target], &cols)
        })
        .collect();
    Representation::from_parts(alg.clone(), dims, maps)
}

/// I(i) = D(A e_i); the basis at vertex k is dual to the basis paths k -> i.
pub fn injective(alg: &Alg, i: usize) -> Representation {
    let f = alg.field();
    let n = alg.num_vertices();
    let at: Vec<Vec<usize>> = (0..n).map(|k| alg.basis_between(k, i)).collect();
    let dims: Vec<usize> = at.iter().map(|v| v.len()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            // (phi . a)(r) = phi(a r) for r a path l -> i, a: k -> l
            let ae = alg.arrow_element(a);
            let rows: Vec<Vec<u32>> = at[arr.target]
                .iter()
                .map(|&r| {
                    let prod = alg.mul(&ae, &crate::linalg::unit_vec(alg.dim(), r));
                    at[arr.source].iter().map(|&m| prod[m]).collect()
                })
                .collect();
            Matrix::from_rows(f, dims[arr.target], dims[arr.source], &rows)
        })
        .collect();
    Representation::from_parts(alg.clone(), dims, maps)
}

pub fn regular_module(alg: &Alg) -> Representation {
    Representation::direct_sum(&(0..alg.num_vertices()).map(|i| projective(alg, i)).collect::<Vec<_>>())
}

pub fn dual_regular_module(alg: &Alg) -> Representation {
    Representation::direct_sum(&(0..alg.num_vertices()).map(|i| injective(alg, i)).collect::<Vec<_>>())
}

/// D(X) over the opposite algebra (which must be passed in).
pub fn dual_over(x: &Representation, opposite: &Alg) -> Representation {
    let maps = x.maps.iter().map(|m| m.transpose()).collect();
    Representation::from_parts(opposite.clone(), x.dims.clone(), maps)
}

pub fn dual(x: &Representation) -> Representation {
    dual_over(x, &Arc::new(x.alg.opposite()))
}

/// D(f): D(Y) -> D(X) for f: X -> Y.
pub fn dual_map(f: &ModuleMap) -> ModuleMap {
    ModuleMap { blocks: f.blocks.iter().map(|b| b.transpose()).collect() }
}

/// End(X) as a matrix algebra on the total space, with the basis maps.
pub fn endomorphism_algebra(x: &Representation) -> (MatrixAlgebra, Vec<ModuleMap>) {
    let basis = hom_basis(x, x);
    let mats = basis.iter().map(|m| m.total_matrix()).collect();
    (MatrixAlgebra::new(x.field(), x.total_dim(), mats), basis)
}

/// An indecomposable direct summand with split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

/// Summand given by an idempotent endomorphism.
pub fn summand_of_idempotent(x: &Representation, e: &ModuleMap) -> Summand {
    let spaces = image_spaces(e, x);
    let (module, inclusion) = submodule(x, &spaces);
    let projection = ModuleMap {
        blocks: spaces.iter().zip(&e.blocks).map(|(s, b)| b.select_rows(s.pivots())).collect(),
    };
    Summand { module, inclusion, projection }
}

/// Krull-Schmidt decomposition with split maps.
pub fn decompose_with_maps(x: &Representation) -> Result<Vec<Summand>, ModuleError> {
    if x.is_zero() {
        return Ok(vec![]);
    }
    let (end, _) = endomorphism_algebra(x);
    let dec = end.primitive_idempotents()?;
    Ok(dec
        .idempotents
        .iter()
        .map(|e| summand_of_idempotent(x, &ModuleMap::from_total(x, x, e)))
        .collect())
}

pub fn decompose(x: &Representation) -> Result<Vec<Representation>, ModuleError> {
    Ok(decompose_with_maps(x)?.into_iter().map(|s| s.module).collect())
}

pub fn is_indecomposable(x: &Representation) -> Result<bool, ModuleError> {
    if x.is_zero() {
        return Err(ModuleError::ZeroModule);
    }
    let (end, _) = endomorphism_algebra(x);
    Ok(end.primitive_idempotents()?.idempotents.len() == 1)
}

/// For X indecomposable: X is isomorphic to Y iff the dimension vectors agree
/// and some composite X -> Y -> X of basis maps is not nilpotent.
pub fn indecomposable_isomorphic(x: &Representation, y: &Representation) -> bool {
    if x.dims != y.dims {
        return false;
    }
    if x.maps == y.maps {
        return true;
    }
    let fs = hom_basis(x, y);
    if fs.is_empty() {
        return false;
    }
    let gs = hom_basis(y, x);
    fs.iter().any(|f| gs.iter().any(|g| !g.compose(f).total_matrix().is_nilpotent()))
}

/// Exact isomorphism test via Krull-Schmidt.
pub fn is_isomorphic(x: &Representation, y: &Representation) -> Result<bool, ModuleError> {
    if !same_algebra(&x.alg, &y.alg) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if x.dims != y.dims {
        return Ok(false);
    }
    if x.maps == y.maps {
        return Ok(true);
    }
    if hom_dim(x, x) != hom_dim(y, y) || hom_dim(x, y) != hom_dim(x, x) {
        return Ok(false);
    }
    let xs = decompose(x)?;
    let mut ys = decompose(y)?;
    if xs.len() != ys.len() {
        return Ok(false);
    }
    for a in &xs {
        match ys.iter().position(|b| indecomposable_isomorphic(a, b)) {
            Some(i) => {
                ys.swap_remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Indeterminate,
}

/// Isomorphism test by searching Hom(X, Y) for an invertible element:
/// exhaustive when |Hom| <= `cap`, otherwise `samples` random draws.
pub fn is_isomorphic_by_enumeration(x: &Representation, y: &Representation, cap: u64, samples: usize) -> IsoVerdict {
    use rand::{Rng, SeedableRng};
    if x.dims != y.dims {
        return IsoVerdict::NotIsomorphic;
    }
    let basis = hom_basis(x, y);
    let f = x.field();
    let p = f.p() as u64;
    let d = basis.len();
    let total = (0..d).try_fold(1u64, |acc, _| acc.checked_mul(p));
    let combine = |coeffs: &[u32]| {
        let mut m = ModuleMap::zero(x, y);
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                m.add_scaled(*c, b);
            }
        }
        m
    };
    match total {
        Some(t) if t <= cap => {
            let mut coeffs = vec![0u32; d];
            for _ in 0..t {
                if combine(&coeffs).is_iso() {
                    return IsoVerdict::Isomorphic;
                }
                for c in coeffs.iter_mut() {
                    *c += 1;
                    if *c < f.p() {
                        break;
                    }
                    *c = 0;
                }
            }
            IsoVerdict::NotIsomorphic
        }
        _ => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x150);
            for _ in 0..samples {
                let coeffs: Vec<u32> = (0..d).map(|_| rng.gen_range(0..f.p())).collect();
                if combine(&coeffs).is_iso() {
                    return IsoVerdict::Isomorphic;
                }
            }
            IsoVerdict::Indeterminate
        }
    }
}

/// Sum of the images of all maps M -> X, as per-vertex subspaces.
pub fn trace_in(m: &Representation, x: &Representation) -> Vec<Subspace> {
    let f = x.field();
    let mut gens: Vec<Vec<Vec<u32>>> = vec![vec![]; x.dims.len()];
    for h in hom_basis(m, x) {
        for (v, b) in h.blocks.iter().enumerate() {
            gens[v].extend(b.column_space_basis());
        }
    }
    gens.iter().enumerate().map(|(v, g)| Subspace::span(f, x.dims[v], g)).collect()
}

pub fn in_fac(m: &Representation, x: &Representation) -> bool {
    trace_in(m, x).iter().zip(x.dims()).all(|(s, &d)| s.dim() == d)
}

/// Whether X is a direct summand of a direct sum of copies of M's summands
/// (M given by its indecomposable summands).
pub fn in_add(summands: &[Representation], x: &Representation) -> Result<bool, ModuleError> {
    for part in decompose(x)? {
        if !summands.iter().any(|s| indecomposable_isomorphic(&part, s)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convert a module over a matrix algebra into a representation of its
/// quiverization: vertex spaces V*e_v, arrows act by their images.
pub fn abstract_to_representation(
    m: &AbstractModule,
    alg: &MatrixAlgebra,
    q: &Quiverization,
    target: &Alg,
) -> Result<Representation, ModuleError> {
    let f = alg.field();
    let projs: Vec<Matrix> = q.vertex_idempotents.iter().map(|e| m.act(alg, e)).collect();
    let spaces: Vec<Subspace> =
        projs.iter().map(|p| Subspace::span(f, m.dim, &p.column_space_basis())).collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let maps = target
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let act = m.act(alg, &q.arrow_images[a]);
            let cols: Vec<Vec<u32>> = spaces[arr.source]
                .basis()
                .iter()
                .map(|v| {
                    spaces[arr.target]
                        .coordinates(&act.mul_vec(v))
                        .ok_or_else(|| ModuleError::Shape("arrow image leaves the vertex space".into()))
                })
                .collect::<Result<_, _>>()?;
            Ok(Matrix::from_columns(f, dims[arr.target], &cols))
        })
        .collect::<Result<Vec<_>, ModuleError>>()?;
    Representation::new(target.clone(), dims, maps)
}

/// Restriction of a B-module along an isomorphism A -> B.
pub fn pullback(m: &Representation, target: &Alg, iso: &AlgebraIsomorphism) -> Result<Representation, ModuleError> {
    let q = target.quiver();
    let dims = (0..q.num_vertices()).map(|v| m.dim_at(iso.vertex_map[v])).collect();
    let maps = q
        .arrows()
        .iter()
        .zip(&iso.arrow_images)
        .map(|(a, img)| m.element_matrix(img, iso.vertex_map[a.source], iso.vertex_map[a.target]))
        .collect();
    Representation::new(target.clone(), dims, maps)
}

/// Parse the module file format against an algebra; returns (name, module).
pub fn parse_module(text: &str, alg: &Alg) -> Result<(String, Representation), ModuleError> {
    let f = alg.field();
    let q = alg.quiver();
    let mut name = None;
    let mut dims = vec![0usize; q.num_vertices()];
    let mut dims_seen = false;
    let mut entries: Vec<Option<(usize, Vec<Vec<(String, usize)>>)>> = vec![None; q.num_arrows()];
    let mut header_line = 1;
    for l in lines(text) {
        match l.keyword {
            "module" => {
                let words: Vec<&str> = l.rest.split_whitespace().collect();
                if words.len() != 3 || words[1] != "over" {
                    return Err(l.error(0, "expected `module <name> over <algebra>`").into());
                }
                if words[2] != alg.name() {
                    return Err(l.error(0, format!("module is over `{}`, not `{}`", words[2], alg.name())).into());
                }
                name = Some(words[0].to_string());
                header_line = l.number;
            }
            "dims" => {
                dims_seen = true;
                let mut col = 0;
                for tok in l.rest.split_whitespace() {
                    let pos = l.rest[col..].find(tok).unwrap() + col;
                    col = pos + tok.len();
                    let (v, d) = tok.split_once(':').ok_or_else(|| l.error(pos, "expected `vertex:dim`"))?;
                    let vi = q.vertex_index(v).ok_or_else(|| l.error(pos, format!("unknown vertex `{v}`")))?;
                    dims[vi] = d.parse().map_err(|_| l.error(pos, format!("bad dimension `{d}`")))?;
                }
            }
            "map" => {
                let eq = l.rest.find('=').ok_or_else(|| l.error(0, "expected `map <arrow> = [[..]]`"))?;
                let aname = l.rest[..eq].trim();
                let ai = q.arrow_index(aname).ok_or_else(|| l.error(0, format!("unknown arrow `{aname}`")))?;
                let rows = parse_matrix_literal(&l.rest[eq + 1..], l.number, l.rest_column + eq + 1)?;
                entries[ai] = Some((l.number, rows));
            }
            other => return Err(ParseError::new(l.number, 1, format!("unknown keyword `{other}`")).into()),
        }
    }
    if !dims_seen {
        return Err(ParseError::new(header_line, 1, "missing `dims` line").into());
    }
    let mut maps = Vec::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        let (r, c) = (dims[arr.target], dims[arr.source]);
        match &entries[a] {
            None => maps.push(Matrix::zeros(f, r, c)),
            Some((line, rows)) => {
                let ok_shape = rows.len() == r && rows.iter().all(|x| x.len() == c);
                if !ok_shape {
                    return Err(ParseError::new(*line, 1, format!("map {} must be {}x{}", arr.name, r, c)).into());
                }
                let mut m = Matrix::zeros(f, r, c);
                for (i, row) in rows.iter().enumerate().take(r) {
                    for (j, (s, col)) in row.iter().enumerate() {
                        let v: i64 = s.parse().map_err(|_| ParseError::new(*line, *col, format!("bad scalar `{s}`")))?;
                        m.set(i, j, f.from_i64(v));
                    }
                }
                maps.push(m);
            }
        }
    }
    let x = Representation::new(alg.clone(), dims, maps).map_err(|e| match e {
        ModuleError::RelationViolated(r) => {
            ModuleError::Parse(ParseError::new(header_line, 1, format!("relation {r} is not satisfied")))
        }
        e => e,
    })?;
    Ok((name.unwrap_or_else(|| "M".into()), x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn a3() -> Alg {
        Arc::new(fixtures::alg_a3())
    }
    fn gen4() -> Alg {
        Arc::new(fixtures::alg_gen4())
    }
    fn her4() -> Alg {
        Arc::new(fixtures::alg_her4())
    }
    fn v(alg: &Alg, name: &str) -> usize {
        alg.quiver().vertex_index(name).unwrap()
    }

    #[test]
    fn hom_examples() {
        let a = a3();
        assert_eq!(hom_dim(&simple(&a, 0), &simple(&a, 1)), 0);
        assert_eq!(hom_dim(&projective(&a, v(&a, "2")), &simple(&a, v(&a, "2"))), 1);
        let p2 = projective(&a, v(&a, "2"));
        assert_eq!(p2.loewy_name(), "2/1");
        assert_eq!(hom_dim(&p2, &simple(&a, v(&a, "1"))), 0);
        assert_eq!(hom_dim(&simple(&a, v(&a, "1")), &p2), 1);
    }

    #[test]
    fn projectives_and_injectives() {
        let a = a3();
        let p3 = projective(&a, v(&a, "3"));
        assert_eq!(p3.loewy_name(), "3/2/1");
        assert_eq!(p3.dims(), &[1, 1, 1]);
        let g = gen4();
        let p4 = projective(&g, v(&g, "4"));
        assert_eq!(p4.dims(), &[0, 1, 1, 1]);
        assert_eq!(p4.loewy_name(), "4/2 3");
        let i1 = injective(&g, v(&g, "1"));
        assert_eq!(i1.dims(), &[1, 1, 1, 0]);
        assert_eq!(i1.loewy_name(), "2 3/1");
        let h = her4();
        assert_eq!(projective(&h, v(&h, "4")).dims(), &[2, 1, 1, 1]);
        assert!(is_indecomposable(&projective(&h, v(&h, "4"))).unwrap());
        // I(1) over A3 is P(3)
        assert!(is_isomorphic(&injective(&a, v(&a, "1")), &p3).unwrap());
    }

    #[test]
    fn hom_from_projective_is_vertex_space() {
        for alg in [a3(), gen4(), her4()] {
            let x = Representation::direct_sum(&[injective(&alg, 0), projective(&alg, 3.min(alg.num_vertices() - 1))]);
            for i in 0..alg.num_vertices() {
                assert_eq!(hom_dim(&projective(&alg, i), &x), x.dim_at(i));
            }
        }
    }

    #[test]
    fn radical_top_socle() {
        let g = gen4();
        let p4 = projective(&g, v(&g, "4"));
        let (r, _) = radical(&p4);
        assert_eq!(r.dims(), &[0, 1, 1, 0]);
        assert_eq!(decompose(&r).unwrap().len(), 2);
        let a = a3();
        let (s, _) = socle(&projective(&a, v(&a, "3")));
        assert!(is_isomorphic(&s, &simple(&a, v(&a, "1"))).unwrap());
        let (t, _) = top(&projective(&a, v(&a, "3")));
        assert!(is_isomorphic(&t, &simple(&a, v(&a, "3"))).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let a = a3();
        let parts = decompose(&regular_module(&a)).unwrap();
        assert_eq!(parts.len(), 3);
        for i in 0..3 {
            let p = projective(&a, i);
            assert_eq!(parts.iter().filter(|x| indecomposable_isomorphic(&p, x)).count(), 1);
        }
        let g = gen4();
        let x = Representation::direct_sum(&[projective(&g, v(&g, "2")), simple(&g, v(&g, "3"))]);
        let parts = decompose(&x).unwrap();
        assert_eq!(parts.len(), 2);
        let s1 = simple(&a, 0);
        assert!(!is_indecomposable(&Representation::direct_sum(&[s1.clone(), s1])).unwrap());
        assert!(is_indecomposable(&Representation::zero(a)).is_err());
    }

    #[test]
    fn split_maps_compose_to_identity() {
        let g = gen4();
        let x = Representation::direct_sum(&[projective(&g, 3), injective(&g, 0), simple(&g, 2)]);
        let parts = decompose_with_maps(&x).unwrap();
        let mut total = ModuleMap::zero(&x, &x);
        for s in &parts {
            assert_eq!(s.projection.compose(&s.inclusion), ModuleMap::identity(&s.module));
            assert!(s.inclusion.is_homomorphism(&s.module, &x));
            assert!(s.projection.is_homomorphism(&x, &s.module));
            total = total.add(&s.inclusion.compose(&s.projection));
        }
        assert_eq!(total, ModuleMap::identity(&x));
    }

    #[test]
    fn iso_examples() {
        let a = a3();
        let s = Representation::direct_sum(&[simple(&a, 0), simple(&a, 1)]);
        let p2 = projective(&a, 1);
        assert!(!is_isomorphic(&s, &p2).unwrap());
        assert_eq!(is_isomorphic_by_enumeration(&s, &p2, 1 << 16, 64), IsoVerdict::NotIsomorphic);
        let g = vec![Matrix::from_rows(a.field(), 1, 1, &[vec![1]]); 3];
        let p3 = projective(&a, 2);
        assert!(is_isomorphic(&p3, &p3.base_change(&g).unwrap()).unwrap());
        assert_eq!(is_isomorphic_by_enumeration(&p3, &p3, 1 << 16, 64), IsoVerdict::Isomorphic);
    }

    #[test]
    fn duality() {
        let a = a3();
        let op = Arc::new(a.opposite());
        for i in 0..3 {
            let d = dual_over(&simple(&a, i), &op);
            assert_eq!(d, simple(&op, i));
            let dp = dual_over(&projective(&a, i), &op);
            assert!(is_isomorphic(&dp, &injective(&op, i)).unwrap());
        }
        let x = injective(&a, 1);
        let back = dual(&dual(&x));
        assert!(is_isomorphic(&x.with_algebra(back.algebra().clone()).unwrap(), &back).unwrap());
    }

    #[test]
    fn trace_examples() {
        let a = a3();
        let x = injective(&a, 1);
        assert!(in_fac(&regular_module(&a), &x));
        assert!(trace_in(&simple(&a, 0), &simple(&a, 1)).iter().all(|s| s.is_zero()));
    }

    #[test]
    fn parse_t41() {
        let h = her4();
        let (name, t) = parse_module(fixtures::T_41, &h).unwrap();
        assert_eq!(name, "T-41");
        assert_eq!(t.dims(), &[3, 1, 1, 3]);
        let parts = decompose(&t).unwrap();
        assert_eq!(parts.len(), 4);
        let round = parse_module(&t.to_text("T-41"), &h).unwrap().1;
        assert_eq!(round, t);
    }

    #[test]
    fn parse_module_errors() {
        let g = gen4();
        let bad = "module M over ALG-GEN4\ndims 4:1 2:1 1:1\nmap alpha = [[1]]\nmap beta = [[1]]\n";
        let e = parse_module(bad, &g).unwrap_err();
        assert!(e.to_string().contains("relation"));
        let bad = "module M over ALG-GEN4\ndims 4:1 2:1\nmap alpha = [[1,0]]\n";
        assert!(parse_module(bad, &g).is_err());
        let bad = "module M over ALG-A3\ndims 1:1\n";
        assert!(parse_module(bad, &g).is_err());
    }
}
