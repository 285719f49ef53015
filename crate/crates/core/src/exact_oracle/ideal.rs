//! Explicit construction of `I_{a×b}` degree by degree, split by torus weight.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;

use super::linalg::{Echelon, SparseRow};
use super::poly::{all_weights, Layout, Monomial, MonomialCounter, Poly, WeightVector};
use super::OracleError;
use crate::exec::Execution;

/// Span of polynomials inside one weight space, in canonical reduced
/// echelon form over the monomials that occur.
#[derive(Debug, Clone, Default)]
pub struct Block {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    basis: Vec<SparseRow>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Basis rows over [`Block::monomials`].
    pub fn basis(&self) -> &[SparseRow] {
        &self.basis
    }

    /// Basis rows as `(monomial, coefficient)` lists.
    pub fn basis_terms(&self) -> impl Iterator<Item = Vec<(&Monomial, &BigInt)>> + '_ {
        self.basis
            .iter()
            .map(|row| row.iter().map(|(c, v)| (&self.monomials[*c], v)).collect())
    }
}

/// Accumulates polynomials of one weight and tracks their span.
#[derive(Debug, Default)]
struct SpanBuilder {
    index: HashMap<Monomial, usize>,
    monomials: Vec<Monomial>,
    echelon: Echelon,
}

impl SpanBuilder {
    fn row_of<'a>(&mut self, terms: impl IntoIterator<Item = (Monomial, &'a BigInt)>) -> SparseRow {
        terms
            .into_iter()
            .map(|(mono, c)| {
                let next = self.monomials.len();
                let col = *self.index.entry(mono.clone()).or_insert_with(|| {
                    next
                });
                if col == next {
                    self.monomials.push(mono);
                }
                (col, c.clone())
            })
            .collect()
    }

    fn try_add<'a>(&mut self, terms: impl IntoIterator<Item = (Monomial, &'a BigInt)>) -> bool {
        let row = self.row_of(terms);
        self.echelon.insert(row)
    }

    fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Re-indexes columns in monomial order and reduces canonically.
    fn finish(self) -> Block {
        let mut order: Vec<usize> = (0..self.monomials.len()).collect();
        order.sort_by(|&x, &y| self.monomials[x].cmp(&self.monomials[y]));
        let mut new_col = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_col[old] = new;
        }
        let monomials: Vec<Monomial> = order.iter().map(|&old| self.monomials[old].clone()).collect();
        let mut echelon = Echelon::new();
        for row in self.echelon.rows() {
            echelon.insert(row.iter().map(|(c, v)| (new_col[*c], v.clone())).collect());
        }
        let index = monomials.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        Block { monomials, index, basis: echelon.into_reduced() }
    }
}

/// A homogeneous piece of a subspace of the polynomial ring, given by a
/// canonical reduced echelon basis over the degree-`d` monomials.
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    layout: Layout,
    degree: usize,
    blocks: BTreeMap<WeightVector, Block>,
}

impl GradedSubspace {
    fn new(layout: Layout, degree: usize, blocks: BTreeMap<WeightVector, Block>) -> Self {
        let blocks = blocks.into_iter().filter(|(_, b)| b.dim() > 0).collect();
        GradedSubspace { layout, degree, blocks }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.blocks.values().map(Block::dim).sum()
    }

    /// Weight blocks of positive dimension.
    pub fn blocks(&self) -> &BTreeMap<WeightVector, Block> {
        &self.blocks
    }

    /// The canonical basis: rows sorted by leading monomial.
    pub fn basis(&self) -> Vec<Poly> {
        let mut polys: Vec<Poly> = self
            .blocks
            .values()
            .flat_map(|b| {
                b.basis_terms().map(|terms| {
                    Poly::from_terms(self.layout, terms.into_iter().map(|(m, c)| (m.clone(), c.clone())))
                })
            })
            .collect();
        polys.sort_by(|p, q| p.terms().next().map(|t| t.0).cmp(&q.terms().next().map(|t| t.0)));
        polys
    }

    /// Exact membership test.
    pub fn contains(&self, f: &Poly) -> bool {
        // a sum of weight components lies in the span iff every component does
        let mut components: BTreeMap<WeightVector, Vec<(&Monomial, &BigInt)>> = BTreeMap::new();
        for (mono, c) in f.terms() {
            if mono.degree() != self.degree {
                return false;
            }
            components.entry(mono.weight(self.layout)).or_default().push((mono, c));
        }
        components.into_iter().all(|(w, terms)| {
            let Some(block) = self.blocks.get(&w) else { return false };
            let mut row = Vec::with_capacity(terms.len());
            for (mono, c) in terms {
                match block.index.get(mono) {
                    Some(&col) => row.push((col, c.clone())),
                    None => return false,
                }
            }
            let mut echelon = Echelon::new();
            for r in &block.basis {
                echelon.insert(r.clone());
            }
            echelon.contains(row)
        })
    }
}

fn check_layout(m: usize, n: usize) -> Result<Layout, OracleError> {
    if m == 0 || n == 0 {
        return Err(OracleError::InvalidParameters(format!("matrix shape {m}x{n} is empty")));
    }
    if m * n > 63 {
        return Err(OracleError::InvalidParameters(format!(
            "{m}x{n} matrices have more than 63 variables"
        )));
    }
    Ok(Layout::new(m, n))
}

/// `det(z_{ij})_{i,j<a}^b`: the highest-weight generator of `I_{a×b}`.
pub fn highest_weight_generator(a: usize, b: usize, m: usize, n: usize) -> Result<Poly, OracleError> {
    let layout = check_layout(m, n)?;
    if a == 0 || b == 0 {
        return Err(OracleError::InvalidParameters("a and b must be positive".into()));
    }
    if a > m.min(n) {
        return Err(OracleError::InvalidParameters(format!(
            "a={a} exceeds min(m, n)={}",
            m.min(n)
        )));
    }
    let mut det = Poly::zero(layout);
    for perm in permutations(a) {
        let sign = if inversions(&perm).is_multiple_of(2) { 1 } else { -1 };
        let mut term = Poly::constant(layout, sign);
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&Poly::variable(layout, i, j));
        }
        det = det.add(&term);
    }
    Ok(det.pow(b))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for smaller in permutations(k - 1) {
        for pos in 0..=smaller.len() {
            let mut p = smaller.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}

fn inversions(perm: &[usize]) -> usize {
    (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count()
}

fn closure_blocks(f: &Poly) -> BTreeMap<WeightVector, Block> {
    let layout = f.layout();
    let mut spans: BTreeMap<WeightVector, SpanBuilder> = BTreeMap::new();
    let mut queue = VecDeque::new();

    let push = |g: Poly, spans: &mut BTreeMap<WeightVector, SpanBuilder>, queue: &mut VecDeque<Poly>| {
        // split into weight components; each is again in the closure
        let mut parts: BTreeMap<WeightVector, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (mono, c) in g.terms() {
            parts.entry(mono.weight(layout)).or_default().push((mono.clone(), c.clone()));
        }
        for (w, terms) in parts {
            let span = spans.entry(w).or_default();
            if span.try_add(terms.iter().map(|(m, c)| (m.clone(), c))) {
                queue.push_back(Poly::from_terms(layout, terms));
            }
        }
    };

    push(f.clone(), &mut spans, &mut queue);
    while let Some(g) = queue.pop_front() {
        for p in 0..layout.m {
            for q in 0..layout.m {
                if p != q {
                    push(g.row_operator(p, q), &mut spans, &mut queue);
                }
            }
        }
        for p in 0..layout.n {
            for q in 0..layout.n {
                if p != q {
                    push(g.col_operator(p, q), &mut spans, &mut queue);
                }
            }
        }
    }
    spans.into_iter().map(|(w, s)| (w, s.finish())).collect()
}

/// Smallest subspace containing `f` and stable under every operator
/// `E_{p,q}` (`p ≠ q`) of `gl_m × gl_n` acting on rows and on columns.
pub fn lowering_closure(f: &Poly) -> GradedSubspace {
    let degree = f.homogeneous_degree().unwrap_or(0);
    GradedSubspace::new(f.layout(), degree, closure_blocks(f))
}

/// The graded pieces `I_d`, `d <= max_degree`, of `I_{a×b}` on `m × n`
/// matrices, split by weight. Built once, then read-only.
#[derive(Debug)]
pub struct IdealPieces {
    a: usize,
    b: usize,
    layout: Layout,
    levels: Vec<HashMap<WeightVector, Block>>,
}

impl IdealPieces {
    pub fn build(
        a: usize,
        b: usize,
        m: usize,
        n: usize,
        max_degree: usize,
        exec: Execution,
    ) -> Result<Self, OracleError> {
        let layout = check_layout(m, n)?;
        if a == 0 || b == 0 {
            return Err(OracleError::InvalidParameters("a and b must be positive".into()));
        }
        let mut levels: Vec<HashMap<WeightVector, Block>> = vec![HashMap::new(); max_degree + 1];
        let generator_degree = a * b;
        if a > m.min(n) || generator_degree > max_degree {
            return Ok(IdealPieces { a, b, layout, levels });
        }

        let generator = highest_weight_generator(a, b, m, n)?;
        levels[generator_degree] = closure_blocks(&generator).into_iter().collect();

        let mut counter = MonomialCounter::new();
        for d in generator_degree + 1..=max_degree {
            let targets: Vec<(WeightVector, u64)> = all_weights(layout, d)
                .into_iter()
                .map(|w| {
                    let full = counter.count(&w);
                    (w, full)
                })
                .collect();
            let previous = &levels[d - 1];
            let built = exec.map(targets, |(w, full)| {
                let block = extend_block(layout, previous, &w, full);
                (w, block)
            });
            levels[d] = built.into_iter().filter(|(_, b)| b.dim() > 0).collect();
        }
        Ok(IdealPieces { a, b, layout, levels })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn generator_degree(&self) -> usize {
        self.a * self.b
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    /// The weight-`w` part of `I_d`, if nonzero. Panics past `max_degree`.
    pub fn block(&self, d: usize, w: &WeightVector) -> Option<&Block> {
        assert!(d <= self.max_degree(), "degree {d} was not built");
        self.levels[d].get(w)
    }

    /// `dim I_d`.
    pub fn hilbert(&self, d: usize) -> u64 {
        assert!(d <= self.max_degree(), "degree {d} was not built");
        self.levels[d].values().map(|b| b.dim() as u64).sum()
    }

    pub fn graded_subspace(&self, d: usize) -> GradedSubspace {
        assert!(d <= self.max_degree(), "degree {d} was not built");
        let blocks = self.levels[d].iter().map(|(w, b)| (w.clone(), b.clone())).collect();
        GradedSubspace::new(self.layout, d, blocks)
    }
}

/// `I_{d,w} = Σ_v z_v · I_{d-1, w - wt(z_v)}`.
fn extend_block(
    layout: Layout,
    previous: &HashMap<WeightVector, Block>,
    w: &WeightVector,
    full: u64,
) -> Block {
    let mut span = SpanBuilder::default();
    'vars: for v in 0..layout.num_vars() {
        let source = w.sub(&WeightVector::of_var(layout, v));
        let Some(block) = previous.get(&source) else { continue };
        for terms in block.basis_terms() {
            if span.rank() as u64 == full {
                break 'vars;
            }
            span.try_add(terms.into_iter().map(|(mono, c)| (mono.times_var(v), c)));
        }
    }
    span.finish()
}

/// The degree-`d` piece of `I_{a×b}`.
pub fn ideal_graded_piece(
    a: usize,
    b: usize,
    m: usize,
    n: usize,
    d: usize,
) -> Result<GradedSubspace, OracleError> {
    let pieces = IdealPieces::build(a, b, m, n, d, Execution::default())?;
    Ok(pieces.graded_subspace(d))
}

/// `dim I_d` for `I_{a×b}` on `m × n` matrices.
pub fn hilbert_function(a: usize, b: usize, m: usize, n: usize, d: usize) -> Result<u64, OracleError> {
    let pieces = IdealPieces::build(a, b, m, n, d, Execution::default())?;
    Ok(pieces.hilbert(d))
}
