//! Incidence graphs and integral cohomology of real Grassmannians.
//!
//! A cover edge of the Bruhat graph is *double* when the weight of the
//! variant's fill is unchanged across it; the coboundary has incidence number
//! `±2` on double edges and `0` elsewhere. Two routes compute cohomology:
//!
//! * the fast path, from ranks over the two-element field of the halved
//!   coboundary, assuming all its invariant factors are 1;
//! * the oracle, which fixes explicit signs, checks `δδ = 0` and takes the
//!   Smith normal form of the integer matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mod2::{rank_mod2, solve_mod2, BinaryMatrix};
use crate::schubert::BruhatGraph;
use crate::shape::{GrassmannShape, DEFAULT_MAX_N, ORACLE_MAX_N};
use crate::snf::{smith_normal_form, IntMatrix};
use crate::weights::{letter_for_label, weights_of, FillVariant, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Single,
    Double,
}

/// Bruhat graph with every cover edge classified for one fill variant.
#[derive(Debug, Clone)]
pub struct WeightedLattice {
    graph: BruhatGraph,
    variant: FillVariant,
    weights: Vec<usize>,
    classes: Vec<EdgeClass>,
}

pub fn classify_edges(shape: GrassmannShape, variant: FillVariant) -> Result<WeightedLattice> {
    WeightedLattice::new(BruhatGraph::build(shape)?, variant)
}

impl WeightedLattice {
    pub fn new(graph: BruhatGraph, variant: FillVariant) -> Result<Self> {
        let weights = weights_of(&graph, variant)?;
        let k = graph.shape().k();
        let mut classes = Vec::with_capacity(graph.edges().len());
        for e in graph.edges() {
            let by_weight = weights[e.source] == weights[e.target];
            let by_letter = letter_for_label(e.reflection_index(), k, variant) == Letter::One;
            if by_weight != by_letter {
                return Err(Error::Falsification(format!(
                    "edge {} -> {}: weight test and added-box letter disagree",
                    graph.cell(e.source),
                    graph.cell(e.target)
                )));
            }
            classes.push(if by_weight {
                EdgeClass::Double
            } else {
                EdgeClass::Single
            });
        }
        Ok(Self {
            graph,
            variant,
            weights,
            classes,
        })
    }

    pub fn graph(&self) -> &BruhatGraph {
        &self.graph
    }

    pub fn shape(&self) -> GrassmannShape {
        self.graph.shape()
    }

    pub fn variant(&self) -> FillVariant {
        self.variant
    }

    /// `eta` (standard) or `eta_star` (shifted), by cell id.
    pub fn weight(&self, cell: usize) -> usize {
        self.weights[cell]
    }

    pub fn class(&self, edge: usize) -> EdgeClass {
        self.classes[edge]
    }

    pub fn is_double(&self, edge: usize) -> bool {
        self.classes[edge] == EdgeClass::Double
    }

    pub fn double_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&e| self.is_double(e))
    }

    pub fn top_degree(&self) -> usize {
        self.shape().dim()
    }

    /// Halved coboundary `δ_j / 2` reduced mod 2: rows are cells of degree
    /// `j`, columns cells of degree `j + 1`.
    pub fn boundary_matrix_mod2(&self, degree: usize) -> BinaryMatrix {
        let (rows, cols) = self.dims(degree);
        let mut m = BinaryMatrix::zeros(rows, cols);
        if degree < self.top_degree() {
            for e in self.graph.edges_from_level(degree) {
                if self.is_double(e) {
                    let (r, c) = self.position(e);
                    m.set(r, c);
                }
            }
        }
        m
    }

    fn dims(&self, degree: usize) -> (usize, usize) {
        let rows = self.graph.level(degree).len();
        let cols = if degree < self.top_degree() {
            self.graph.level(degree + 1).len()
        } else {
            0
        };
        (rows, cols)
    }

    fn position(&self, edge: usize) -> (usize, usize) {
        let e = self.graph.edges()[edge];
        (
            self.graph.position_in_level(e.source),
            self.graph.position_in_level(e.target),
        )
    }
}

/// Finitely generated abelian group `ℤ^r ⊕ ⊕ ℤ/d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors, each at least 2 and dividing the next.
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, mut torsion: Vec<u64>) -> Result<Self> {
        torsion.sort_unstable();
        if torsion.iter().any(|&d| d < 2) || torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Validation(format!(
                "torsion {:?} is not a chain of invariant factors",
                torsion
            )));
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

fn subscript(n: u64) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&x| x == d).count();
            let base = format!("ℤ{}", subscript(d));
            parts.push(if run == 1 {
                base
            } else {
                format!("{base}^{run}")
            });
            i += run;
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    Cohomology,
    Homology,
}

/// How a table was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    /// Mod-2 ranks, on a shape inside the range the oracle is run on.
    #[serde(rename = "f2-fast-path")]
    FastPath,
    /// Mod-2 ranks on a shape larger than any oracle run; exponent-2 torsion
    /// is assumed there, not checked.
    #[serde(rename = "f2-fast-path-unverified")]
    FastPathUnverified,
    /// Integer Smith normal form with solved signs, equal to the fast path.
    #[serde(rename = "snf-oracle")]
    OracleConfirmed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub shape: GrassmannShape,
    pub variant: FillVariant,
    pub indexing: Indexing,
    /// One group per degree `0..=k(n-k)`.
    pub groups: Vec<AbelianGroup>,
    pub provenance: Provenance,
}

impl CohomologyTable {
    pub fn free_ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.free_rank).collect()
    }

    /// Degree-reversed copy, `j ↦ k(n-k) - j`.
    pub fn reversed(&self, indexing: Indexing) -> CohomologyTable {
        let mut groups = self.groups.clone();
        groups.reverse();
        CohomologyTable {
            groups,
            indexing,
            ..self.clone()
        }
    }

    pub fn same_groups(&self, other: &CohomologyTable) -> bool {
        self.groups == other.groups
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.indexing {
            Indexing::Cohomology => "H^",
            Indexing::Homology => "H_",
        };
        for (j, g) in self.groups.iter().enumerate() {
            writeln!(f, "{sym}{j} = {g}")?;
        }
        Ok(())
    }
}

/// Ranks of the halved coboundaries, `r_j` for `j = 0..=k(n-k)` (the last is 0).
pub fn mod2_ranks(lattice: &WeightedLattice) -> Vec<usize> {
    (0..=lattice.top_degree())
        .map(|j| rank_mod2(&lattice.boundary_matrix_mod2(j)))
        .collect()
}

/// `H^j = ℤ^{c_j - r_j - r_{j-1}} ⊕ ℤ₂^{r_{j-1}}`.
pub fn cohomology_of(lattice: &WeightedLattice) -> Result<CohomologyTable> {
    let ranks = mod2_ranks(lattice);
    let g = lattice.graph();
    let mut groups = Vec::with_capacity(ranks.len());
    for j in 0..=lattice.top_degree() {
        let c = g.level(j).len();
        let prev = if j == 0 { 0 } else { ranks[j - 1] };
        let free = c
            .checked_sub(ranks[j] + prev)
            .ok_or_else(|| Error::Falsification(format!("negative Betti number at degree {j}")))?;
        groups.push(AbelianGroup::new(free, vec![2; prev])?);
    }
    let shape = lattice.shape();
    Ok(CohomologyTable {
        shape,
        variant: lattice.variant(),
        indexing: Indexing::Cohomology,
        groups,
        provenance: if shape.n() <= ORACLE_MAX_N {
            Provenance::FastPath
        } else {
            Provenance::FastPathUnverified
        },
    })
}

pub fn cohomology(shape: GrassmannShape, variant: FillVariant) -> Result<CohomologyTable> {
    cohomology_with_capacity(shape, variant, DEFAULT_MAX_N)
}

pub fn cohomology_with_capacity(
    shape: GrassmannShape,
    variant: FillVariant,
    max_n: usize,
) -> Result<CohomologyTable> {
    let graph = BruhatGraph::build_with_capacity(shape, max_n)?;
    cohomology_of(&WeightedLattice::new(graph, variant)?)
}

/// Sign `±1` for every double edge; `true` means `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignAssignment {
    negative: HashMap<usize, bool>,
}

impl SignAssignment {
    /// `+1` or `-1` for a double edge, `None` for a single one.
    pub fn sign(&self, edge: usize) -> Option<i64> {
        self.negative
            .get(&edge)
            .map(|&neg| if neg { -1 } else { 1 })
    }

    pub fn len(&self) -> usize {
        self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.negative.is_empty()
    }
}

/// A pair of cells two degrees apart joined by two double-double paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    pub bottom: usize,
    pub top: usize,
    /// The four double edges: two paths of two edges each.
    pub edges: [usize; 4],
}

/// Every two-step pair of cells with double-edge paths; an odd count or more
/// than two paths cannot come from a coboundary with `δδ = 0`.
pub fn diamonds(lattice: &WeightedLattice) -> Result<Vec<Diamond>> {
    let g = lattice.graph();
    let mut out = Vec::new();
    for x in 0..g.cells().len() {
        let mut paths: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for e1 in g.out_edges(x).filter(|&e| lattice.is_double(e)) {
            let y = g.edges()[e1].target;
            for e2 in g.out_edges(y).filter(|&e| lattice.is_double(e)) {
                paths
                    .entry(g.edges()[e2].target)
                    .or_default()
                    .push((e1, e2));
            }
        }
        for (z, p) in paths {
            match p.as_slice() {
                [(a, b), (c, d)] => out.push(Diamond {
                    bottom: x,
                    top: z,
                    edges: [*a, *b, *c, *d],
                }),
                _ => {
                    return Err(Error::Falsification(format!(
                        "{} double paths from {} to {} in {} ({})",
                        p.len(),
                        g.cell(x),
                        g.cell(z),
                        lattice.shape(),
                        lattice.variant()
                    )))
                }
            }
        }
    }
    Ok(out)
}

/// Chooses signs making every diamond anticommute, by solving one parity
/// equation per diamond over the two-element field.
pub fn solve_signs(lattice: &WeightedLattice) -> Result<SignAssignment> {
    let doubles: Vec<usize> = lattice.double_edges().collect();
    let var: HashMap<usize, usize> = doubles.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let ds = diamonds(lattice)?;
    let mut a = BinaryMatrix::zeros(ds.len(), doubles.len());
    for (row, d) in ds.iter().enumerate() {
        for e in d.edges {
            a.toggle(row, var[&e]);
        }
    }
    let rhs = vec![true; ds.len()];
    let x = solve_mod2(&a, &rhs).ok_or_else(|| {
        Error::Falsification(format!(
            "no sign assignment with δδ = 0 for {} ({})",
            lattice.shape(),
            lattice.variant()
        ))
    })?;
    Ok(SignAssignment {
        negative: doubles.iter().zip(x).map(|(&e, neg)| (e, neg)).collect(),
    })
}

/// Support and signs of `δ_j` between two adjacent degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedIncidenceMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Values are `+2` or `-2`.
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl SignedIncidenceMatrix {
    pub fn to_int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (&(r, c), &v) in &self.entries {
            m[(r, c)] = BigInt::from(v);
        }
        m
    }
}

pub fn signed_coboundary(
    lattice: &WeightedLattice,
    signs: &SignAssignment,
    degree: usize,
) -> SignedIncidenceMatrix {
    let (rows, cols) = lattice.dims(degree);
    let mut entries = BTreeMap::new();
    if degree < lattice.top_degree() {
        for e in lattice.graph().edges_from_level(degree) {
            if let Some(s) = signs.sign(e) {
                entries.insert(lattice.position(e), 2 * s);
            }
        }
    }
    SignedIncidenceMatrix {
        rows,
        cols,
        entries,
    }
}

/// Full integer route: signed coboundaries, exact `δδ = 0`, Smith normal
/// form. Fails unless the result equals the fast path and every torsion
/// factor is 2.
pub fn cohomology_snf_oracle(
    shape: GrassmannShape,
    variant: FillVariant,
) -> Result<CohomologyTable> {
    cohomology_snf_oracle_with_capacity(shape, variant, ORACLE_MAX_N)
}

pub fn cohomology_snf_oracle_with_capacity(
    shape: GrassmannShape,
    variant: FillVariant,
    max_n: usize,
) -> Result<CohomologyTable> {
    shape.check_capacity(max_n)?;
    let lattice = WeightedLattice::new(BruhatGraph::build_with_capacity(shape, max_n)?, variant)?;
    let signs = solve_signs(&lattice)?;
    let top = lattice.top_degree();
    let deltas: Vec<IntMatrix> = (0..=top)
        .map(|j| signed_coboundary(&lattice, &signs, j).to_int_matrix())
        .collect();

    for j in 0..top {
        // row vectors: c ↦ c δ_j, so δ_{j+1} ∘ δ_j is the product δ_j δ_{j+1}
        if !deltas[j].mul(&deltas[j + 1]).is_zero() {
            return Err(Error::Falsification(format!(
                "δ_{} δ_{} != 0 for {shape} ({variant})",
                j + 1,
                j
            )));
        }
    }

    let factors: Vec<Vec<BigInt>> = deltas.iter().map(smith_normal_form).collect();
    let mut groups = Vec::with_capacity(top + 1);
    for j in 0..=top {
        let c = lattice.graph().level(j).len();
        let rank_here = factors[j].len();
        let (rank_prev, torsion) = if j == 0 {
            (0, Vec::new())
        } else {
            let f = &factors[j - 1];
            let torsion: Vec<u64> = f
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("invariant factor fits u64"))
                .collect();
            (f.len(), torsion)
        };
        if let Some(d) = torsion.iter().find(|&&d| d != 2) {
            return Err(Error::Falsification(format!(
                "invariant factor {d} of δ_{} for {shape} ({variant}) is not 2",
                j - 1
            )));
        }
        let free = c - rank_here - rank_prev;
        groups.push(AbelianGroup::new(free, torsion)?);
    }

    let table = CohomologyTable {
        shape,
        variant,
        indexing: Indexing::Cohomology,
        groups,
        provenance: Provenance::OracleConfirmed,
    };
    let fast = cohomology_of(&lattice)?;
    if !fast.same_groups(&table) {
        return Err(Error::Falsification(format!(
            "{shape} ({variant}): fast path\n{fast}differs from oracle\n{table}"
        )));
    }
    Ok(table)
}

/// `H_j(Gr(k,n); ℤ)`: Poincaré duality for even `n`, Poincaré–Verdier duality
/// with twisted coefficients for odd `n`.
pub fn homology(shape: GrassmannShape) -> Result<CohomologyTable> {
    homology_with_capacity(shape, DEFAULT_MAX_N)
}

pub fn homology_with_capacity(shape: GrassmannShape, max_n: usize) -> Result<CohomologyTable> {
    let variant = homology_dual_variant(shape);
    Ok(cohomology_with_capacity(shape, variant, max_n)?.reversed(Indexing::Homology))
}

/// Coefficient system whose cohomology is dual to integral homology.
pub fn homology_dual_variant(shape: GrassmannShape) -> FillVariant {
    if shape.n().is_multiple_of(2) {
        FillVariant::Standard
    } else {
        FillVariant::Shifted
    }
}

/// `n` even, cross-checked against the graph: the edge into the top cell
/// carries a nonzero incidence number exactly when `n` is odd.
pub fn is_orientable(shape: GrassmannShape) -> Result<bool> {
    let lattice = classify_edges(shape, FillVariant::Standard)?;
    let g = lattice.graph();
    let witness_nonorientable = g.in_edges(g.top_cell()).any(|e| lattice.is_double(e));
    let by_parity = shape.n().is_multiple_of(2);
    if by_parity == witness_nonorientable {
        return Err(Error::Falsification(format!(
            "{shape}: parity says orientable={by_parity}, top-cell incidence disagrees"
        )));
    }
    Ok(by_parity)
}
