//! Finite-dimensional algebras given by a basis of matrices (a faithful
//! representation), with structure-constant conversions, the Jacobson
//! radical, primitive idempotents and re-presentation as a bound quiver
//! algebra.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, Arrow, BoundQuiverAlgebra, Path, Quiver, Relation};
use crate::linalg::{CoordinateSystem, Field, Matrix, Subspace};

/// An algebra by structure constants: `table[i][j]` = coordinates of b_i b_j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractAlgebra {
    field: Field,
    dim: usize,
    table: Vec<Vec<Vec<u32>>>,
    one: Vec<u32>,
}

impl AbstractAlgebra {
    /// Validates unitality and associativity.
    pub fn new(field: Field, dim: usize, table: Vec<Vec<Vec<u32>>>, one: Vec<u32>) -> Result<Self, AlgebraError> {
        let a = AbstractAlgebra { field, dim, table, one };
        let unit = |i: usize| crate::linalg::unit_vec(dim, i);
        for i in 0..dim {
            if a.mul(&a.one, &unit(i)) != unit(i) || a.mul(&unit(i), &a.one) != unit(i) {
                return Err(AlgebraError::Internal("identity element is not a two-sided unit".into()));
            }
            for j in 0..dim {
                for k in 0..dim {
                    let l = a.mul(&a.table[i][j], &unit(k));
                    let r = a.mul(&unit(i), &a.table[j][k]);
                    if l != r {
                        return Err(AlgebraError::Internal("structure constants are not associative".into()));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn from_bound_quiver(alg: &BoundQuiverAlgebra) -> Self {
        let d = alg.dim();
        let table = (0..d)
            .map(|i| (0..d).map(|j| alg.sparse_to_dense(alg.basis_product(i, j))).collect())
            .collect();
        AbstractAlgebra { field: alg.field(), dim: d, table, one: alg.one() }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn one(&self) -> &[u32] {
        &self.one
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    f.axpy(&mut out, f.mul(a, b), &self.table[i][j]);
                }
            }
        }
        out
    }

    /// Left regular representation.
    pub fn to_matrix_algebra(&self) -> MatrixAlgebra {
        let d = self.dim;
        let basis = (0..d)
            .map(|i| {
                let cols: Vec<Vec<u32>> = (0..d).map(|j| self.table[i][j].clone()).collect();
                Matrix::from_columns(self.field, d, &cols)
            })
            .collect();
        MatrixAlgebra::new(self.field, d, basis)
    }
}

/// A subalgebra of n x n matrices given by a basis containing the identity
/// in its span. Products are matrix products.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    field: Field,
    n: usize,
    basis: Vec<Matrix>,
    coords: CoordinateSystem,
}

/// Result of splitting the identity into primitive idempotents.
#[derive(Clone, Debug)]
pub struct IdempotentDecomposition {
    pub idempotents: Vec<Matrix>,
    /// Isomorphism class of each idempotent, numbered by first appearance.
    pub class_of: Vec<usize>,
    /// Dimension of e L e / e R e for each idempotent.
    pub top_dims: Vec<usize>,
}

impl IdempotentDecomposition {
    pub fn num_classes(&self) -> usize {
        self.class_of.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// First idempotent of each class.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.num_classes())
            .map(|c| self.class_of.iter().position(|&x| x == c).unwrap())
            .collect()
    }
}

const SPLIT_ATTEMPTS: usize = 400;

impl MatrixAlgebra {
    pub fn new(field: Field, n: usize, basis: Vec<Matrix>) -> Self {
        let flat: Vec<Vec<u32>> = basis.iter().map(|m| m.data().to_vec()).collect();
        let coords = CoordinateSystem::new(field, n * n, &flat);
        debug_assert!(coords.is_independent(), "matrix algebra basis must be independent");
        MatrixAlgebra { field, n, basis, coords }
    }

    /// Keep an independent subset of `gens` (which must span a subalgebra).
    pub fn from_spanning(field: Field, n: usize, gens: Vec<Matrix>) -> Self {
        let mut span = Subspace::zero(field, n * n);
        let flat: Vec<Vec<u32>> = gens.iter().map(|m| m.data().to_vec()).collect();
        let keep = span.extend_greedy(&flat);
        let basis = keep.into_iter().map(|i| gens[i].clone()).collect();
        MatrixAlgebra::new(field, n, basis)
    }

    pub fn from_bound_quiver(alg: &BoundQuiverAlgebra) -> Self {
        AbstractAlgebra::from_bound_quiver(alg).to_matrix_algebra()
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    /// Size of the matrices.
    pub fn size(&self) -> usize {
        self.n
    }
    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }
    pub fn one(&self) -> Matrix {
        Matrix::identity(self.field, self.n)
    }

    pub fn coords(&self, m: &Matrix) -> Option<Vec<u32>> {
        self.coords.coordinates(m.data())
    }

    pub fn element(&self, c: &[u32]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.n, self.n);
        for (k, &x) in c.iter().enumerate() {
            if x != 0 {
                out.add_scaled(x, &self.basis[k]);
            }
        }
        out
    }

    /// Span of the given elements, as a subspace of coordinate space.
    pub fn span(&self, elems: &[Matrix]) -> Subspace {
        let cs: Vec<Vec<u32>> = elems
            .iter()
            .map(|m| self.coords(m).expect("element lies in the algebra"))
            .collect();
        Subspace::span(self.field, self.dim(), &cs)
    }

    pub fn elements_of(&self, s: &Subspace) -> Vec<Matrix> {
        s.basis().iter().map(|c| self.element(c)).collect()
    }

    /// Structure constants with respect to the matrix basis.
    pub fn to_abstract(&self) -> AbstractAlgebra {
        let d = self.dim();
        let table = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.coords(&self.basis[i].mul(&self.basis[j])).expect("basis spans a subalgebra"))
                    .collect()
            })
            .collect();
        let one = self.coords(&self.one()).expect("algebra contains the identity");
        AbstractAlgebra { field: self.field, dim: d, table, one }
    }

    /// Quotient by a two-sided ideal (given in coordinates); basis of the
    /// quotient = non-pivot coordinate directions of the ideal.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(AbstractAlgebra, Vec<usize>), AlgebraError> {
        let d = self.dim();
        let elems = self.elements_of(ideal);
        for x in &elems {
            for b in &self.basis {
                for prod in [x.mul(b), b.mul(x)] {
                    if !ideal.contains(&self.coords(&prod).unwrap()) {
                        return Err(AlgebraError::NotAnIdeal);
                    }
                }
            }
        }
        let mut is_pivot = vec![false; d];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let kept: Vec<usize> = (0..d).filter(|&i| !is_pivot[i]).collect();
        let project = |c: Vec<u32>| -> Vec<u32> {
            let r = ideal.reduce(&c);
            kept.iter().map(|&i| r[i]).collect()
        };
        let table = kept
            .iter()
            .map(|&i| {
                kept.iter()
                    .map(|&j| project(self.coords(&self.basis[i].mul(&self.basis[j])).unwrap()))
                    .collect()
            })
            .collect();
        let one = project(self.coords(&self.one()).unwrap());
        Ok((AbstractAlgebra { field: self.field, dim: kept.len(), table, one }, kept))
    }

    /// Jacobson radical in coordinates.
    ///
    /// Uses the trace-form filtration of Cohen, Ivanyos and Wales: I_{-1} = L
    /// and I_i = { x in I_{i-1} : g_i(xy) = 0 for all y }, where
    /// g_i(X) = (Tr(X^(p^i)) mod p^(i+1)) / p^i on an integer lift of the
    /// faithful representation. I_l is the radical for l = floor(log_p n).
    pub fn radical(&self) -> Subspace {
        let d = self.dim();
        let p = self.field.p() as u64;
        let n = self.n;
        if d == 0 || n == 0 {
            return Subspace::zero(self.field, d);
        }
        let mut l = 0u32;
        while p.pow(l + 1) <= n as u64 {
            l += 1;
        }
        let mut cur: Vec<Vec<u32>> = (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect();
        for i in 0..=l {
            if cur.is_empty() {
                break;
            }
            let xs: Vec<Matrix> = cur.iter().map(|c| self.element(c)).collect();
            let modulus = p.pow(i + 1);
            let g = Matrix::from_fn(self.field, d, xs.len(), |y, k| {
                let prod = xs[k].mul(&self.basis[y]);
                trace_form(&prod, p, i, modulus)
            });
            let kernel = g.kernel_basis();
            let f = self.field;
            cur = kernel
                .iter()
                .map(|c| {
                    let mut v = vec![0u32; d];
                    for (k, &a) in c.iter().enumerate() {
                        if a != 0 {
                            f.axpy(&mut v, a, &cur[k]);
                        }
                    }
                    v
                })
                .collect();
        }
        Subspace::span(self.field, d, &cur)
    }

    /// Complete set of primitive orthogonal idempotents summing to 1,
    /// grouped into isomorphism classes.
    pub fn primitive_idempotents(&self) -> Result<IdempotentDecomposition, AlgebraError> {
        let rad = self.radical();
        self.primitive_idempotents_with_radical(&rad)
    }

    pub fn primitive_idempotents_with_radical(&self, rad: &Subspace) -> Result<IdempotentDecomposition, AlgebraError> {
        let rad_elems = self.elements_of(rad);
        let mut rng = ChaCha8Rng::seed_from_u64(0x51_17_1e);
        let mut out = Vec::new();
        let mut tops = Vec::new();
        self.split_idempotent(self.one(), &rad_elems, &mut rng, &mut out, &mut tops)?;
        self.classify(out, tops, rad)
    }

    /// Group given orthogonal primitive idempotents into isomorphism classes.
    pub fn classify_idempotents(&self, idems: Vec<Matrix>) -> Result<IdempotentDecomposition, AlgebraError> {
        let rad = self.radical();
        let rad_elems = self.elements_of(&rad);
        let tops = idems.iter().map(|e| self.corner_top_dim(e, &rad_elems)).collect();
        self.classify(idems, tops, &rad)
    }

    fn classify(&self, idems: Vec<Matrix>, tops: Vec<usize>, rad: &Subspace) -> Result<IdempotentDecomposition, AlgebraError> {
        let mut class_of: Vec<usize> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        for (i, e) in idems.iter().enumerate() {
            let found = reps.iter().position(|&r| self.idempotents_isomorphic(&idems[r], e, rad));
            match found {
                Some(c) => class_of.push(c),
                None => {
                    class_of.push(reps.len());
                    reps.push(i);
                }
            }
        }
        Ok(IdempotentDecomposition { idempotents: idems, class_of, top_dims: tops })
    }

    fn idempotents_isomorphic(&self, e: &Matrix, f: &Matrix, rad: &Subspace) -> bool {
        let ef: Vec<Matrix> = self.basis.iter().map(|b| e.mul(b).mul(f)).filter(|m| !m.is_zero()).collect();
        let fe: Vec<Matrix> = self.basis.iter().map(|b| f.mul(b).mul(e)).filter(|m| !m.is_zero()).collect();
        let ef = self.elements_of(&self.span(&ef));
        let fe = self.elements_of(&self.span(&fe));
        ef.iter().any(|x| fe.iter().any(|y| !rad.contains(&self.coords(&x.mul(y)).unwrap())))
    }

    fn corner_spans(&self, e: &Matrix, rad_elems: &[Matrix]) -> (Subspace, Subspace) {
        let corner: Vec<Matrix> = self.basis.iter().map(|b| e.mul(b).mul(e)).collect();
        let corner_rad: Vec<Matrix> = rad_elems.iter().map(|r| e.mul(r).mul(e)).collect();
        (self.span(&corner), self.span(&corner_rad))
    }

    fn corner_top_dim(&self, e: &Matrix, rad_elems: &[Matrix]) -> usize {
        let (c, cr) = self.corner_spans(e, rad_elems);
        c.dim() - cr.dim()
    }

    fn split_idempotent(
        &self,
        e: Matrix,
        rad_elems: &[Matrix],
        rng: &mut ChaCha8Rng,
        out: &mut Vec<Matrix>,
        tops: &mut Vec<usize>,
    ) -> Result<(), AlgebraError> {
        let (corner, corner_rad) = self.corner_spans(&e, rad_elems);
        let top = corner.dim() - corner_rad.dim();
        if top == 0 {
            return Err(AlgebraError::Internal("zero idempotent in splitting".into()));
        }
        if top == 1 {
            out.push(e);
            tops.push(1);
            return Ok(());
        }
        let corner_elems = self.elements_of(&corner);
        let rank_e = e.rank();
        let mut candidates = corner_elems.clone().into_iter();
        for attempt in 0..SPLIT_ATTEMPTS {
            let a = match candidates.next() {
                Some(a) => a,
                None => {
                    let mut a = Matrix::zeros(self.field, self.n, self.n);
                    for c in &corner_elems {
                        a.add_scaled(rng.gen_range(0..self.field.p()), c);
                    }
                    a
                }
            };
            if let Some(eps) = fitting_idempotent(&a, rank_e) {
                if self.coords(&eps).is_none() {
                    return Err(AlgebraError::Internal("Fitting idempotent outside the algebra".into()));
                }
                let rest = e.sub(&eps);
                self.split_idempotent(eps, rad_elems, rng, out, tops)?;
                return self.split_idempotent(rest, rad_elems, rng, out, tops);
            }
            // A local corner with a non-split top never splits; detect early.
            if attempt == corner_elems.len() + 16 && self.corner_is_field(&corner, &corner_rad) {
                out.push(e);
                tops.push(top);
                return Ok(());
            }
        }
        if self.corner_is_field(&corner, &corner_rad) {
            out.push(e);
            tops.push(top);
            return Ok(());
        }
        Err(AlgebraError::Internal("failed to split a non-local idempotent".into()))
    }

    /// Whether eLe / eRe is a field: commutative with a one-dimensional
    /// space of Frobenius-fixed elements.
    fn corner_is_field(&self, corner: &Subspace, corner_rad: &Subspace) -> bool {
        let f = self.field;
        let elems = self.elements_of(corner);
        for x in &elems {
            for y in &elems {
                let c = x.mul(y).sub(&y.mul(x));
                if !corner_rad.contains(&self.coords(&c).unwrap()) {
                    return false;
                }
            }
        }
        // representatives of the quotient
        let mut span = corner_rad.clone();
        let flat: Vec<Vec<u32>> = elems.iter().map(|m| self.coords(m).unwrap()).collect();
        let reps: Vec<Matrix> = span.extend_greedy(&flat).into_iter().map(|i| elems[i].clone()).collect();
        let t = reps.len();
        // coordinates in the quotient relative to reps
        let mut gens: Vec<Vec<u32>> = corner_rad.basis();
        gens.extend(reps.iter().map(|m| self.coords(m).unwrap()));
        let cs = CoordinateSystem::new(f, self.dim(), &gens);
        let r0 = corner_rad.dim();
        let quot = |m: &Matrix| -> Vec<u32> {
            let c = cs.coordinates(&self.coords(m).unwrap()).unwrap();
            c[r0..].to_vec()
        };
        let frob = Matrix::from_columns(
            f,
            t,
            &reps.iter().map(|x| quot(&x.pow(f.p() as u64))).collect::<Vec<_>>(),
        );
        let fixed = frob.sub(&Matrix::identity(f, t)).kernel_basis().len();
        fixed == 1
    }
}

/// Idempotent projecting onto the invertible Fitting component of `a`, when
/// `a` is neither nilpotent nor invertible in its corner (of rank `rank_e`).
fn fitting_idempotent(a: &Matrix, rank_e: usize) -> Option<Matrix> {
    let n = a.rows();
    let f = a.field();
    let an = a.pow(n as u64);
    let image = an.column_space_basis();
    let r = image.len();
    if r == 0 || r == rank_e {
        return None;
    }
    let kernel = an.kernel_basis();
    let mut cols = image;
    cols.extend(kernel);
    let q = Matrix::from_columns(f, n, &cols);
    let qi = q.inverse().ok()?;
    let mut d = Matrix::zeros(f, n, n);
    for i in 0..r {
        d.set(i, i, 1);
    }
    Some(q.mul(&d).mul(&qi))
}

/// (Tr(X^(p^i)) mod p^(i+1)) / p^i for the integer lift of X with entries in [0, p).
fn trace_form(x: &Matrix, p: u64, i: u32, modulus: u64) -> u32 {
    let n = x.rows();
    if i == 0 {
        let mut t = 0u64;
        for k in 0..n {
            t += x.get(k, k) as u64;
        }
        return (t % p) as u32;
    }
    let mut m: Vec<u64> = x.data().iter().map(|&v| v as u64).collect();
    for _ in 0..i {
        m = int_pow(&m, n, p, modulus);
    }
    let mut t = 0u64;
    for k in 0..n {
        t = (t + m[k * n + k]) % modulus;
    }
    (t / p.pow(i)) as u32
}

fn int_mul(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
            }
        }
    }
    out
}

fn int_pow(a: &[u64], n: usize, mut e: u64, modulus: u64) -> Vec<u64> {
    let mut result: Vec<u64> = (0..n * n).map(|k| (k / n == k % n) as u64).collect();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = int_mul(&result, &base, n, modulus);
        }
        e >>= 1;
        if e > 0 {
            base = int_mul(&base, &base, n, modulus);
        }
    }
    result
}

/// A bound quiver presentation of a basic algebra, with the images of the
/// vertices, arrows and basis paths inside the original algebra.
#[derive(Clone, Debug)]
pub struct Quiverization {
    pub algebra: BoundQuiverAlgebra,
    pub decomposition: IdempotentDecomposition,
    /// Index into `decomposition.idempotents` for each vertex.
    pub vertex_sources: Vec<usize>,
    pub vertex_idempotents: Vec<Matrix>,
    pub arrow_images: Vec<Matrix>,
    pub basis_images: Vec<Matrix>,
    /// True when isomorphic idempotents were dropped (the presentation is of
    /// a Morita-equivalent corner algebra).
    pub morita_reduced: bool,
}

#[derive(Clone, Debug, Default)]
pub struct QuiverizeOptions {
    pub name: Option<String>,
    pub allow_morita_reduction: bool,
    /// Vertex labels for the idempotent classes, in class order.
    pub vertex_names: Option<Vec<String>>,
}

impl MatrixAlgebra {
    pub fn quiverize(&self, opts: &QuiverizeOptions) -> Result<Quiverization, AlgebraError> {
        let rad = self.radical();
        let dec = self.primitive_idempotents_with_radical(&rad)?;
        self.quiverize_with(dec, &rad, opts)
    }

    /// Quiverize using a given complete set of primitive orthogonal idempotents.
    pub fn quiverize_with_idempotents(&self, idems: Vec<Matrix>, opts: &QuiverizeOptions) -> Result<Quiverization, AlgebraError> {
        let rad = self.radical();
        let dec = self.classify_idempotents(idems)?;
        self.quiverize_with(dec, &rad, opts)
    }

    fn quiverize_with(&self, dec: IdempotentDecomposition, rad: &Subspace, opts: &QuiverizeOptions) -> Result<Quiverization, AlgebraError> {
        let f = self.field;
        if let Some(&t) = dec.top_dims.iter().find(|&&t| t != 1) {
            return Err(AlgebraError::NonSplit(t));
        }
        let reps = dec.representatives();
        let morita = reps.len() < dec.idempotents.len();
        if morita && !opts.allow_morita_reduction {
            return Err(AlgebraError::NotBasic);
        }
        let es: Vec<Matrix> = reps.iter().map(|&i| dec.idempotents[i].clone()).collect();
        let m = es.len();
        let mut e_sum = Matrix::zeros(f, self.n, self.n);
        for e in &es {
            e_sum = e_sum.add(e);
        }
        let corner_dim = self.span(&self.basis.iter().map(|b| e_sum.mul(b).mul(&e_sum)).collect::<Vec<_>>()).dim();
        let rad_elems = self.elements_of(rad);
        let crad: Vec<Matrix> = self.elements_of(&self.span(
            &rad_elems.iter().map(|r| e_sum.mul(r).mul(&e_sum)).collect::<Vec<_>>(),
        ));
        let mut prods = Vec::new();
        for x in &crad {
            for y in &crad {
                prods.push(x.mul(y));
            }
        }
        let crad2 = self.elements_of(&self.span(&prods));

        // arrows
        let mut arrows = Vec::new();
        let mut arrow_images = Vec::new();
        let vertex_names: Vec<String> = match &opts.vertex_names {
            Some(v) if v.len() == m => v.clone(),
            _ => (1..=m).map(|i| i.to_string()).collect(),
        };
        for i in 0..m {
            for j in 0..m {
                let block = |xs: &[Matrix]| -> Vec<Matrix> { xs.iter().map(|x| es[i].mul(x).mul(&es[j])).collect() };
                let s = self.span(&block(&crad));
                let mut s2 = self.span(&block(&crad2));
                for k in s2.extend_greedy(&s.basis()) {
                    let img = self.element(&s.basis()[k]);
                    arrows.push(Arrow { name: format!("x{}", arrows.len() + 1), source: i, target: j });
                    arrow_images.push(img);
                }
            }
        }
        let quiver = Quiver::new(vertex_names, arrows)?;

        // nilpotency index of the corner radical
        let mut loewy = 1;
        let mut power = crad.clone();
        while !power.is_empty() {
            let next: Vec<Matrix> = power.iter().flat_map(|x| crad.iter().map(move |y| x.mul(y))).collect();
            power = self.elements_of(&self.span(&next));
            loewy += 1;
            if loewy > self.dim() + 2 {
                return Err(AlgebraError::Internal("radical is not nilpotent".into()));
            }
        }
        // crad^loewy == 0; paths of length loewy are kept as possible relations
        let max_len = loewy;

        // path images
        let mut layers: Vec<Vec<(Path, Matrix)>> = vec![(0..m).map(|v| (Path::trivial(v), es[v].clone())).collect()];
        for len in 1..=max_len {
            let mut next = Vec::new();
            for (p, img) in &layers[len - 1] {
                for (a, arr) in quiver.arrows().iter().enumerate() {
                    if arr.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push((Path { source: p.source, target: arr.target, arrows }, img.mul(&arrow_images[a])));
                    }
                }
            }
            if next.len() > 100_000 {
                return Err(AlgebraError::Internal("too many paths while quiverizing".into()));
            }
            layers.push(next);
        }

        // kernel generators per (source, target) block, over paths of length >= 2
        let mut relations = Vec::new();
        let mut kernels: HashMap<(usize, usize), Vec<Vec<u32>>> = HashMap::new();
        let mut block_paths: HashMap<(usize, usize), Vec<(Path, Matrix)>> = HashMap::new();
        for layer in layers.iter().skip(2) {
            for (p, img) in layer {
                block_paths.entry((p.source, p.target)).or_default().push((p.clone(), img.clone()));
            }
        }
        let mut keys: Vec<(usize, usize)> = block_paths.keys().copied().collect();
        keys.sort();
        for key in &keys {
            let paths = block_paths.get_mut(key).unwrap();
            paths.sort_by(|a, b| b.0.cmp(&a.0));
            let cols: Vec<Vec<u32>> = paths.iter().map(|(_, img)| self.coords(img).unwrap()).collect();
            let mat = Matrix::from_columns(f, self.dim(), &cols);
            let kernel = Subspace::span(f, paths.len(), &mat.kernel_basis()).basis();
            kernels.insert(*key, kernel);
        }
        for key in &keys {
            let paths = &block_paths[key];
            let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, (p, _))| (p, i)).collect();
            let mut generated = Subspace::zero(f, paths.len());
            // J K + K J restricted to this block
            let mut gens = Vec::new();
            for (a, arr) in quiver.arrows().iter().enumerate() {
                let shifted: [((usize, usize), bool); 2] =
                    [((arr.target, key.1), arr.source == key.0), ((key.0, arr.source), arr.target == key.1)];
                for (k2, (nb, ok)) in shifted.iter().enumerate() {
                    if !ok || !block_paths.contains_key(nb) {
                        continue;
                    }
                    let nb_paths = &block_paths[nb];
                    for kv in &kernels[nb] {
                        let mut v = vec![0u32; paths.len()];
                        for (c, (q, _)) in kv.iter().zip(nb_paths) {
                            if *c == 0 {
                                continue;
                            }
                            let mut arrows = Vec::new();
                            if k2 == 0 {
                                arrows.push(a);
                                arrows.extend_from_slice(&q.arrows);
                            } else {
                                arrows.extend_from_slice(&q.arrows);
                                arrows.push(a);
                            }
                            let full = Path { source: key.0, target: key.1, arrows };
                            if let Some(&i) = index.get(&full) {
                                v[i] = f.add(v[i], *c);
                            }
                        }
                        gens.push(v);
                    }
                }
            }
            generated.extend_greedy(&gens);
            for k in generated.extend_greedy(&kernels[key]) {
                let kv = &kernels[key][k];
                let terms = kv
                    .iter()
                    .zip(paths)
                    .filter(|(c, _)| **c != 0)
                    .map(|(c, (p, _))| (*c, p.arrows.clone()))
                    .collect();
                relations.push(Relation { terms });
            }
        }

        let name = opts.name.clone().unwrap_or_else(|| "B".into());
        let algebra = BoundQuiverAlgebra::new(name, f, quiver, relations)?;
        if algebra.dim() != corner_dim {
            return Err(AlgebraError::Internal(format!(
                "presentation has dimension {} but the algebra has dimension {}",
                algebra.dim(),
                corner_dim
            )));
        }
        let basis_images: Vec<Matrix> = algebra
            .basis()
            .iter()
            .map(|p| {
                let mut img = es[p.source].clone();
                for &a in &p.arrows {
                    img = img.mul(&arrow_images[a]);
                }
                img
            })
            .collect();
        if self.span(&basis_images).dim() != corner_dim {
            return Err(AlgebraError::Internal("presentation witness is not bijective".into()));
        }
        Ok(Quiverization {
            algebra,
            vertex_sources: reps,
            decomposition: dec,
            vertex_idempotents: es,
            arrow_images,
            basis_images,
            morita_reduced: morita,
        })
    }
}

/// A right module over a `MatrixAlgebra`: `action[k]` is the matrix of
/// v -> v * b_k on column vectors, so products act in reverse order.
#[derive(Clone, Debug)]
pub struct AbstractModule {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl AbstractModule {
    /// Matrix of v -> v * x.
    pub fn act(&self, alg: &MatrixAlgebra, x: &Matrix) -> Matrix {
        let c = alg.coords(x).expect("element lies in the algebra");
        let mut out = Matrix::zeros(alg.field(), self.dim, self.dim);
        for (k, &a) in c.iter().enumerate() {
            if a != 0 {
                out.add_scaled(a, &self.action[k]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn upper_triangular(f: Field) -> MatrixAlgebra {
        let e = |i, j| {
            let mut m = Matrix::zeros(f, 2, 2);
            m.set(i, j, 1);
            m
        };
        MatrixAlgebra::new(f, 2, vec![e(0, 0), e(1, 1), e(0, 1)])
    }

    #[test]
    fn radical_of_path_algebras_is_arrow_ideal() {
        for alg in [fixtures::alg_a3(), fixtures::alg_her4(), fixtures::alg_gen4()] {
            let ma = MatrixAlgebra::from_bound_quiver(&alg);
            let rad = ma.radical();
            let arrows = alg.radical_basis();
            assert_eq!(rad.dim(), arrows.len());
            for k in arrows {
                assert!(rad.contains(&crate::linalg::unit_vec(alg.dim(), k)));
            }
        }
    }

    #[test]
    fn radical_examples() {
        let f2 = Field::default();
        assert_eq!(upper_triangular(f2).radical().dim(), 1);
        // F_2[C_2]: the trace form alone would declare everything radical
        let g = Matrix::from_rows(f2, 2, 2, &[vec![0, 1], vec![1, 0]]);
        let group = MatrixAlgebra::new(f2, 2, vec![Matrix::identity(f2, 2), g]);
        let rad = group.radical();
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&[1, 1]));
        // F_2 x F_2 x F_2 is semisimple
        let diag = (0..3)
            .map(|i| {
                let mut m = Matrix::zeros(f2, 3, 3);
                m.set(i, i, 1);
                m
            })
            .collect();
        assert_eq!(MatrixAlgebra::new(f2, 3, diag).radical().dim(), 0);
        // M_2(F_3) is simple
        let f3 = Field::new(3).unwrap();
        let full = (0..4)
            .map(|k| {
                let mut m = Matrix::zeros(f3, 2, 2);
                m.set(k / 2, k % 2, 1);
                m
            })
            .collect();
        assert_eq!(MatrixAlgebra::new(f3, 2, full).radical().dim(), 0);
    }

    #[test]
    fn full_matrix_algebra_is_not_basic() {
        let f = Field::default();
        let full: Vec<Matrix> = (0..4)
            .map(|k| {
                let mut m = Matrix::zeros(f, 2, 2);
                m.set(k / 2, k % 2, 1);
                m
            })
            .collect();
        let ma = MatrixAlgebra::new(f, 2, full);
        let dec = ma.primitive_idempotents().unwrap();
        assert_eq!(dec.idempotents.len(), 2);
        assert_eq!(dec.num_classes(), 1);
        assert!(matches!(ma.quiverize(&QuiverizeOptions::default()), Err(AlgebraError::NotBasic)));
        let q = ma
            .quiverize(&QuiverizeOptions { allow_morita_reduction: true, ..Default::default() })
            .unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert!(q.morita_reduced);
    }

    #[test]
    fn non_split_field_is_reported() {
        // F_4 inside M_2(F_2)
        let f = Field::default();
        let w = Matrix::from_rows(f, 2, 2, &[vec![0, 1], vec![1, 1]]);
        let ma = MatrixAlgebra::new(f, 2, vec![Matrix::identity(f, 2), w]);
        let dec = ma.primitive_idempotents().unwrap();
        assert_eq!(dec.idempotents.len(), 1);
        assert_eq!(dec.top_dims, vec![2]);
        assert!(matches!(ma.quiverize(&QuiverizeOptions::default()), Err(AlgebraError::NonSplit(2))));
    }

    #[test]
    fn quiverize_fixture_round_trip() {
        for alg in [fixtures::alg_a3(), fixtures::alg_her4(), fixtures::alg_gen4()] {
            let ma = MatrixAlgebra::from_bound_quiver(&alg);
            let q = ma.quiverize(&QuiverizeOptions::default()).unwrap();
            assert_eq!(q.algebra.dim(), alg.dim());
            assert_eq!(q.algebra.num_vertices(), alg.num_vertices());
            assert_eq!(q.algebra.quiver().num_arrows(), alg.quiver().num_arrows());
            assert_eq!(q.algebra.relations().len(), alg.relations().len());
        }
    }

    #[test]
    fn quiverize_truncated_polynomial_ring() {
        let alg = crate::dsl::parse_algebra("vertices 1\narrow x : 1 -> 1\nrelation x*x*x\n", None).unwrap();
        let q = MatrixAlgebra::from_bound_quiver(&alg).quiverize(&QuiverizeOptions::default()).unwrap();
        assert_eq!(q.algebra.dim(), 3);
        assert_eq!(q.algebra.relations().len(), 1);
        assert_eq!(q.algebra.relations()[0].terms[0].1.len(), 3);
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let alg = fixtures::alg_gen4();
        let ma = MatrixAlgebra::from_bound_quiver(&alg);
        let (quot, kept) = ma.quotient(&ma.radical()).unwrap();
        assert_eq!(quot.dim(), 4);
        assert_eq!(kept.len(), 4);
        assert_eq!(quot.to_matrix_algebra().radical().dim(), 0);
    }

    #[test]
    fn abstract_round_trip() {
        let alg = fixtures::alg_her4();
        let a = AbstractAlgebra::from_bound_quiver(&alg);
        let b = a.to_matrix_algebra().to_abstract();
        assert_eq!(a, b);
        assert!(AbstractAlgebra::new(a.field(), a.dim(), b.table.clone(), b.one.clone()).is_ok());
    }
}
