//! Schubert cells of `Gr(k, n)` as Young diagrams in the `k x (n-k)` box.
//!
//! Rows are numbered bottom-to-top starting at 1 and row lengths weakly
//! increase upward, so `rows[j-1] = w(j) - j` for the pivot set
//! `{w(1) < ... < w(k)}`. The box in row `r`, column `c` is labeled by the
//! simple reflection `s_{r+c-1}`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::{GrassmannShape, DEFAULT_MAX_N};

/// Young diagram fitting in the `k x (n-k)` box, rows stored bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    rows: Vec<usize>,
}

impl Partition {
    pub fn empty(shape: GrassmannShape) -> Self {
        Self {
            rows: vec![0; shape.k()],
        }
    }

    /// Builds a partition from bottom-up row lengths, checking it fits the box.
    pub fn new(rows: Vec<usize>, shape: GrassmannShape) -> Result<Self> {
        if rows.len() != shape.k() {
            return Err(Error::Validation(format!(
                "partition {:?} has {} rows, expected {}",
                rows,
                rows.len(),
                shape.k()
            )));
        }
        if rows.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation(format!(
                "partition {:?} is not weakly increasing bottom-up",
                rows
            )));
        }
        if rows.last().copied().unwrap_or(0) > shape.width() {
            return Err(Error::Validation(format!(
                "partition {:?} exceeds box width {}",
                rows,
                shape.width()
            )));
        }
        Ok(Self { rows })
    }

    /// Row lengths, bottom row first.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Length of row `r` (1 = bottom).
    pub fn row(&self, r: usize) -> usize {
        self.rows[r - 1]
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&l| l == 0)
    }

    /// Boxes as `(row, col)` pairs, 1-based, bottom row first.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |c| (i + 1, c)))
    }

    pub fn contains(&self, other: &Partition) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a >= b)
    }

    /// Whether a box can be appended to row `r` within a box of width `width`.
    pub fn can_add(&self, r: usize, width: usize) -> bool {
        let len = self.rows[r - 1];
        let cap = self.rows.get(r).copied().unwrap_or(width);
        len < cap.min(width)
    }

    fn with_box(&self, r: usize) -> Partition {
        let mut rows = self.rows.clone();
        rows[r - 1] += 1;
        Partition { rows }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, l) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Box label `s_{r+c-1}` for row `r`, column `c`.
pub fn box_label(row: usize, col: usize) -> usize {
    row + col - 1
}

/// Pivot set `{i_1 < ... < i_k}` of the row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchubertSymbol {
    pivots: Vec<usize>,
}

impl SchubertSymbol {
    pub fn new(pivots: Vec<usize>, shape: GrassmannShape) -> Result<Self> {
        if pivots.len() != shape.k() {
            return Err(Error::Validation(format!(
                "symbol {:?} has {} entries, expected {}",
                pivots,
                pivots.len(),
                shape.k()
            )));
        }
        if pivots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(format!(
                "symbol {:?} is not strictly increasing",
                pivots
            )));
        }
        if pivots.first().is_some_and(|&i| i < 1) || pivots.last().is_some_and(|&i| i > shape.n()) {
            return Err(Error::Validation(format!(
                "symbol {:?} not contained in 1..={}",
                pivots,
                shape.n()
            )));
        }
        Ok(Self { pivots })
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

pub fn partition_to_symbol(lambda: &Partition, shape: GrassmannShape) -> Result<SchubertSymbol> {
    let p = Partition::new(lambda.rows.clone(), shape)?;
    let pivots = p.rows.iter().enumerate().map(|(i, &l)| l + i + 1).collect();
    Ok(SchubertSymbol { pivots })
}

pub fn symbol_to_partition(symbol: &SchubertSymbol, shape: GrassmannShape) -> Result<Partition> {
    let s = SchubertSymbol::new(symbol.pivots.clone(), shape)?;
    let rows = s
        .pivots
        .iter()
        .enumerate()
        .map(|(i, &p)| p - i - 1)
        .collect();
    Partition::new(rows, shape)
}

/// All partitions of `degree` in the box, lexicographic on bottom-up rows.
pub fn enumerate_cells(shape: GrassmannShape, degree: usize) -> Result<Vec<Partition>> {
    if degree > shape.dim() {
        return Err(Error::OutOfRange {
            what: "degree",
            value: degree,
            min: 0,
            max: shape.dim(),
        });
    }
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(shape.k());
    fill_rows(shape.k(), shape.width(), 0, degree, &mut rows, &mut out);
    Ok(out)
}

// Depth-first over weakly increasing rows; emits in lexicographic order.
fn fill_rows(
    k: usize,
    width: usize,
    min: usize,
    remaining: usize,
    rows: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    let left = k - rows.len();
    if left == 0 {
        if remaining == 0 {
            out.push(Partition { rows: rows.clone() });
        }
        return;
    }
    for len in min..=width {
        // the rest of the rows are at least `len` and at most `width`
        if len * left > remaining {
            break;
        }
        if width * left < remaining {
            continue;
        }
        rows.push(len);
        fill_rows(k, width, len, remaining - len, rows, out);
        rows.pop();
    }
}

/// Covering relation `source ⋖ target`: one box added at `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverEdge {
    pub source: usize,
    pub target: usize,
    pub row: usize,
    pub col: usize,
}

impl CoverEdge {
    /// Index `j` of the simple reflection with `w' = s_j w`.
    pub fn reflection_index(&self) -> usize {
        box_label(self.row, self.col)
    }
}

/// Weak Bruhat graph of `Gr(k, n)` (Young's lattice in the box).
///
/// Cells are identified by their position in [`BruhatGraph::cells`], which is
/// sorted by degree and then lexicographically.
#[derive(Debug, Clone)]
pub struct BruhatGraph {
    shape: GrassmannShape,
    cells: Vec<Partition>,
    level_start: Vec<usize>,
    index: HashMap<Partition, usize>,
    edges: Vec<CoverEdge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl BruhatGraph {
    pub fn build(shape: GrassmannShape) -> Result<Self> {
        Self::build_with_capacity(shape, DEFAULT_MAX_N)
    }

    pub fn build_with_capacity(shape: GrassmannShape, max_n: usize) -> Result<Self> {
        shape.check_capacity(max_n)?;
        let mut cells = Vec::with_capacity(shape.cell_count() as usize);
        let mut level_start = Vec::with_capacity(shape.dim() + 2);
        for degree in 0..=shape.dim() {
            level_start.push(cells.len());
            cells.extend(enumerate_cells(shape, degree)?);
        }
        level_start.push(cells.len());

        let index: HashMap<Partition, usize> = cells
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();

        let mut edges = Vec::new();
        let mut out_edges = vec![Vec::new(); cells.len()];
        let mut in_edges = vec![Vec::new(); cells.len()];
        for (source, p) in cells.iter().enumerate() {
            for r in 1..=shape.k() {
                if !p.can_add(r, shape.width()) {
                    continue;
                }
                let target = index[&p.with_box(r)];
                let e = edges.len();
                edges.push(CoverEdge {
                    source,
                    target,
                    row: r,
                    col: p.row(r) + 1,
                });
                out_edges[source].push(e);
                in_edges[target].push(e);
            }
        }

        Ok(Self {
            shape,
            cells,
            level_start,
            index,
            edges,
            out_edges,
            in_edges,
        })
    }

    pub fn shape(&self) -> GrassmannShape {
        self.shape
    }

    pub fn cells(&self) -> &[Partition] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Partition {
        &self.cells[id]
    }

    pub fn id_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn degree_of(&self, id: usize) -> usize {
        self.cells[id].size()
    }

    /// Number of degrees, `k(n-k) + 1`.
    pub fn level_count(&self) -> usize {
        self.level_start.len() - 1
    }

    pub fn level(&self, degree: usize) -> &[Partition] {
        &self.cells[self.level_range(degree)]
    }

    /// Cell ids of the given degree.
    pub fn level_range(&self, degree: usize) -> std::ops::Range<usize> {
        self.level_start[degree]..self.level_start[degree + 1]
    }

    /// Position of a cell inside its level (its row/column in incidence matrices).
    pub fn position_in_level(&self, id: usize) -> usize {
        id - self.level_start[self.degree_of(id)]
    }

    pub fn edges(&self) -> &[CoverEdge] {
        &self.edges
    }

    pub fn out_edges(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_edges[id].iter().copied()
    }

    pub fn in_edges(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_edges[id].iter().copied()
    }

    /// Edge ids leaving cells of the given degree.
    pub fn edges_from_level(&self, degree: usize) -> impl Iterator<Item = usize> + '_ {
        self.level_range(degree)
            .flat_map(move |id| self.out_edges(id))
    }

    pub fn top_cell(&self) -> usize {
        self.cells.len() - 1
    }

    /// Follows a reduced word from the empty diagram, failing if some letter
    /// does not add a box.
    pub fn follow(&self, word: &ReducedWord) -> Result<usize> {
        let mut at = 0;
        for i in word.application_order() {
            let next = self
                .out_edges(at)
                .find(|&e| self.edges[e].reflection_index() == i)
                .ok_or_else(|| {
                    Error::Validation(format!(
                        "s_{i} does not add a box to {} in {}",
                        self.cells[at], self.shape
                    ))
                })?;
            at = self.edges[next].target;
        }
        Ok(at)
    }
}

/// Word in the simple reflections, stored in product order: the word
/// `s_{a_1} s_{a_2} ... s_{a_l}` acts on the identity coset starting from
/// `s_{a_l}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedWord(Vec<usize>);

impl ReducedWord {
    pub fn from_product(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    /// Builds the word from the labels of boxes in the order they are added.
    pub fn from_application(mut labels: Vec<usize>) -> Self {
        labels.reverse();
        Self(labels)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters in the order they act, rightmost first.
    pub fn application_order(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().rev().copied()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{s}")?;
        }
        Ok(())
    }
}

/// `w = w_1 w_2 ... w_k` with `w_j = s_{i_j - 1} ... s_j`, one factor per row.
pub fn canonical_reduced_word(lambda: &Partition, shape: GrassmannShape) -> Result<ReducedWord> {
    let symbol = partition_to_symbol(lambda, shape)?;
    let mut letters = Vec::with_capacity(lambda.size());
    for (idx, &pivot) in symbol.pivots().iter().enumerate() {
        let j = idx + 1;
        letters.extend((j..pivot).rev());
    }
    Ok(ReducedWord(letters))
}

/// Reduced words read off saturated chains `∅ ⋖ ... ⋖ λ`, at most `limit`.
pub fn lattice_paths(
    lambda: &Partition,
    shape: GrassmannShape,
    limit: usize,
) -> Result<Vec<ReducedWord>> {
    let lambda = Partition::new(lambda.rows.clone(), shape)?;
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(lambda.size());
    chains(
        &Partition::empty(shape),
        &lambda,
        limit.max(1),
        &mut labels,
        &mut out,
    );
    Ok(out)
}

fn chains(
    at: &Partition,
    goal: &Partition,
    limit: usize,
    labels: &mut Vec<usize>,
    out: &mut Vec<ReducedWord>,
) {
    if out.len() >= limit {
        return;
    }
    if at == goal {
        out.push(ReducedWord::from_application(labels.clone()));
        return;
    }
    for r in 1..=at.rows.len() {
        if at.row(r) < goal.row(r) && at.can_add(r, goal.row(r)) {
            labels.push(box_label(r, at.row(r) + 1));
            chains(&at.with_box(r), goal, limit, labels, out);
            labels.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(k: usize, n: usize) -> GrassmannShape {
        GrassmannShape::new(k, n).unwrap()
    }

    fn part(rows: &[usize], s: GrassmannShape) -> Partition {
        Partition::new(rows.to_vec(), s).unwrap()
    }

    #[test]
    fn cells_by_degree() {
        let s = gr(2, 5);
        assert_eq!(enumerate_cells(s, 0).unwrap(), vec![Partition::empty(s)]);
        assert_eq!(
            enumerate_cells(s, 2).unwrap(),
            vec![part(&[0, 2], s), part(&[1, 1], s)]
        );
        let total: usize = (0..=s.dim())
            .map(|d| enumerate_cells(s, d).unwrap().len())
            .sum();
        assert_eq!(total, 10);
        assert!(matches!(
            enumerate_cells(s, 7),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn symbols() {
        let s = gr(2, 5);
        let sym = |l: &[usize]| {
            partition_to_symbol(&part(l, s), s)
                .unwrap()
                .pivots()
                .to_vec()
        };
        assert_eq!(sym(&[0, 0]), vec![1, 2]);
        assert_eq!(sym(&[3, 3]), vec![4, 5]);
        assert_eq!(sym(&[1, 2]), vec![2, 4]);

        let back = |p: &[usize]| {
            symbol_to_partition(&SchubertSymbol::new(p.to_vec(), s).unwrap(), s).unwrap()
        };
        assert_eq!(back(&[1, 2]), Partition::empty(s));
        assert_eq!(back(&[4, 5]), part(&[3, 3], s));
        assert_eq!(back(&[2, 4]), part(&[1, 2], s));
    }

    #[test]
    fn malformed_inputs() {
        let s = gr(2, 5);
        assert!(SchubertSymbol::new(vec![2, 2], s).is_err());
        assert!(SchubertSymbol::new(vec![0, 2], s).is_err());
        assert!(SchubertSymbol::new(vec![3, 6], s).is_err());
        assert!(SchubertSymbol::new(vec![1, 2, 3], s).is_err());
        assert!(Partition::new(vec![2, 1], s).is_err());
        assert!(Partition::new(vec![0, 4], s).is_err());
    }

    #[test]
    fn bruhat_graph_of_gr25() {
        let s = gr(2, 5);
        let g = BruhatGraph::build(s).unwrap();
        assert_eq!(g.cells().len(), 10);
        assert_eq!(g.edges().len(), 12);
        let first = g.edges().iter().find(|e| e.source == 0).unwrap();
        assert_eq!(first.reflection_index(), 2);
        assert_eq!(g.cell(first.target), &part(&[0, 1], s));
    }

    #[test]
    fn projective_space_is_a_chain() {
        let s = gr(1, 6);
        let g = BruhatGraph::build(s).unwrap();
        assert_eq!(g.edges().len(), 5);
        for (i, e) in g.edges().iter().enumerate() {
            assert_eq!(
                (e.source, e.target, e.reflection_index()),
                (i, i + 1, i + 1)
            );
        }
    }

    #[test]
    fn capacity_error() {
        let s = gr(8, 17);
        assert!(matches!(BruhatGraph::build(s), Err(Error::Capacity { .. })));
    }

    #[test]
    fn canonical_words() {
        let s = gr(2, 5);
        assert!(canonical_reduced_word(&Partition::empty(s), s)
            .unwrap()
            .is_empty());
        let w = canonical_reduced_word(&part(&[1, 3], s), s).unwrap();
        assert_eq!(w.letters(), &[1, 4, 3, 2]);
        assert_eq!(w.to_string(), "s1 s4 s3 s2");
    }

    #[test]
    fn three_paths_to_hook() {
        let s = gr(2, 5);
        let mut words: Vec<Vec<usize>> = lattice_paths(&part(&[1, 3], s), s, 10)
            .unwrap()
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect();
        words.sort();
        let mut expected = vec![vec![1, 4, 3, 2], vec![4, 3, 1, 2], vec![4, 1, 3, 2]];
        expected.sort();
        assert_eq!(words, expected);

        assert_eq!(lattice_paths(&part(&[1, 3], s), s, 2).unwrap().len(), 2);
        assert_eq!(lattice_paths(&part(&[1, 1], s), s, 10).unwrap().len(), 1);
        assert_eq!(
            lattice_paths(&Partition::empty(s), s, 5).unwrap(),
            vec![ReducedWord::from_product(vec![])]
        );
    }

    #[test]
    fn follow_rejects_non_covers() {
        let s = gr(2, 5);
        let g = BruhatGraph::build(s).unwrap();
        // s1 on the identity coset does not lengthen it
        assert!(g.follow(&ReducedWord::from_product(vec![1])).is_err());
        let id = g.follow(&ReducedWord::from_product(vec![1, 2])).unwrap();
        assert_eq!(g.cell(id), &part(&[1, 1], s));
    }
}
