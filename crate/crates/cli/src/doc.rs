//! Output documents: `{schema_version, request, payload}`.
//!
//! Field order is declaration order and maps are never used for payload
//! data, so serialization is byte-deterministic.

use grassmann_core::qpoly::{self, ParityCase};
use grassmann_core::schubert::partition_to_symbol;
use grassmann_core::verify::VerificationReport;
use grassmann_core::{
    BruhatGraph, CohomologyTable, EdgeClass, FillVariant, GrassmannShape, Indexing, IntPolynomial,
    Provenance, WeightedLattice,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Bumped whenever any payload layout changes; invalidates the table cache.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<P> {
    pub schema_version: String,
    pub request: Request,
    pub payload: P,
}

impl<P: Serialize> Document<P> {
    pub fn new(request: Request, payload: P) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            request,
            payload,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Constant,
    Twisted,
}

impl Coefficients {
    /// Fill whose incidence graph computes cohomology with these coefficients.
    pub fn fill(self) -> FillVariant {
        match self {
            Coefficients::Constant => FillVariant::Standard,
            Coefficients::Twisted => FillVariant::Shifted,
        }
    }

    pub fn of_fill(v: FillVariant) -> Self {
        match v {
            FillVariant::Standard => Coefficients::Constant,
            FillVariant::Shifted => Coefficients::Twisted,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Coefficients::Constant => "constant",
            Coefficients::Twisted => "twisted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphVariant {
    Standard,
    Shifted,
    Plain,
}

impl GraphVariant {
    pub fn fill(self) -> Option<FillVariant> {
        match self {
            GraphVariant::Standard => Some(FillVariant::Standard),
            GraphVariant::Shifted => Some(FillVariant::Shifted),
            GraphVariant::Plain => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphVariant::Standard => "standard",
            GraphVariant::Shifted => "shifted",
            GraphVariant::Plain => "plain",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Request {
    Cohomology {
        k: usize,
        n: usize,
        coefficients: Coefficients,
        homology: bool,
        oracle: bool,
    },
    Graph {
        k: usize,
        n: usize,
        variant: GraphVariant,
    },
    Poly {
        k: usize,
        n: usize,
    },
    Verify {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        k: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        n: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        max_n: Option<usize>,
    },
    Table {
        k: usize,
        n: usize,
        max_n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablePayload {
    pub shape: GrassmannShape,
    pub indexing: Indexing,
    pub coefficients: Coefficients,
    /// Fill of the incidence graph that was run; for homology this is the
    /// dual system whose cohomology was degree-reversed.
    pub fill: FillVariant,
    pub provenance: Provenance,
    pub groups: Vec<GroupEntry>,
}

impl TablePayload {
    pub fn new(table: &CohomologyTable, coefficients: Coefficients) -> Self {
        Self {
            shape: table.shape,
            indexing: table.indexing,
            coefficients,
            fill: table.variant,
            provenance: table.provenance,
            groups: table
                .groups
                .iter()
                .enumerate()
                .map(|(degree, g)| GroupEntry {
                    degree,
                    free_rank: g.free_rank,
                    torsion: g.torsion.clone(),
                    display: g.to_string(),
                })
                .collect(),
        }
    }

    /// Degree-reversed copy relabelled as homology.
    pub fn reversed_as_homology(&self, coefficients: Coefficients) -> Self {
        let top = self.groups.len() - 1;
        let mut groups: Vec<GroupEntry> = self
            .groups
            .iter()
            .map(|g| GroupEntry {
                degree: top - g.degree,
                ..g.clone()
            })
            .collect();
        groups.reverse();
        Self {
            indexing: Indexing::Homology,
            coefficients,
            groups,
            ..self.clone()
        }
    }

    pub fn render_text(&self) -> String {
        let sym = match self.indexing {
            Indexing::Cohomology => "H^",
            Indexing::Homology => "H_",
        };
        let kind = match self.indexing {
            Indexing::Cohomology => "cohomology",
            Indexing::Homology => "homology",
        };
        let mut out = format!(
            "{} {kind}, {} coefficients ({})\n",
            self.shape,
            self.coefficients.name(),
            provenance_name(self.provenance)
        );
        for g in &self.groups {
            out.push_str(&format!("{sym}{} = {}\n", g.degree, g.display));
        }
        out
    }
}

pub fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::FastPath => "f2-fast-path",
        Provenance::FastPathUnverified => "f2-fast-path-unverified",
        Provenance::OracleConfirmed => "snf-oracle",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    pub degree: usize,
    pub partition: Vec<usize>,
    pub symbol: Vec<usize>,
    /// `η` for the standard fill, `η*` for the shifted one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weight: Option<usize>,
    /// Fill letters per row, bottom row first; `"q"` or `"1"`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub letters: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub reflection: usize,
    /// Added box as `[row, column]`, rows counted from the bottom.
    #[serde(rename = "box")]
    pub added_box: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<EdgeClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphPayload {
    pub shape: GrassmannShape,
    pub variant: GraphVariant,
    pub row_order: String,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl GraphPayload {
    pub fn new(graph: BruhatGraph, variant: GraphVariant) -> Result<Self, CliError> {
        let shape = graph.shape();
        let lattice = match variant.fill() {
            Some(v) => Some(WeightedLattice::new(graph.clone(), v)?),
            None => None,
        };
        let mut nodes = Vec::with_capacity(graph.cells().len());
        for (id, p) in graph.cells().iter().enumerate() {
            let letters = match variant.fill() {
                Some(v) => Some(
                    grassmann_core::weights::checkered_fill(p, shape, v)?
                        .letters
                        .iter()
                        .map(|row| row.iter().map(|l| l.to_string()).collect::<String>())
                        .collect(),
                ),
                None => None,
            };
            nodes.push(GraphNode {
                id,
                degree: p.size(),
                partition: p.rows().to_vec(),
                symbol: partition_to_symbol(p, shape)?.pivots().to_vec(),
                weight: lattice.as_ref().map(|l| l.weight(id)),
                letters,
            });
        }
        let edges = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| GraphEdge {
                source: e.source,
                target: e.target,
                reflection: e.reflection_index(),
                added_box: [e.row, e.col],
                class: lattice.as_ref().map(|l| l.class(i)),
            })
            .collect();
        Ok(Self {
            shape,
            variant,
            row_order: "bottom_up".into(),
            nodes,
            edges,
        })
    }

    pub fn render_dot(&self) -> String {
        let mut out = format!(
            "digraph \"{} {}\" {{\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n",
            self.shape,
            self.variant.name()
        );
        let top = self.nodes.iter().map(|n| n.degree).max().unwrap_or(0);
        for d in 0..=top {
            let ids: Vec<String> = self
                .nodes
                .iter()
                .filter(|n| n.degree == d)
                .map(|n| format!("c{};", n.id))
                .collect();
            out.push_str(&format!("  {{ rank=same; {} }}\n", ids.join(" ")));
        }
        for n in &self.nodes {
            let lambda = render_partition(&n.partition);
            let label = match n.weight {
                Some(w) => format!("{lambda} | {w}"),
                None => lambda,
            };
            out.push_str(&format!("  c{} [label=\"{label}\"];\n", n.id));
        }
        for e in &self.edges {
            let style = if e.class == Some(EdgeClass::Double) {
                ",penwidth=2,style=bold"
            } else {
                ""
            };
            out.push_str(&format!(
                "  c{} -> c{} [label=\"s{}\"{style}];\n",
                e.source, e.target, e.reflection
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn render_partition(rows: &[usize]) -> String {
    if rows.iter().all(|&r| r == 0) {
        return "∅".into();
    }
    let parts: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyEntry {
    /// Ascending coefficients.
    pub coefficients: Vec<i64>,
    pub text: String,
}

impl PolyEntry {
    pub fn new(p: &IntPolynomial, var: &str) -> Result<Self, CliError> {
        Ok(Self {
            coefficients: p
                .coeffs_i64()
                .ok_or_else(|| CliError::Usage(format!("coefficient of {p} overflows i64")))?,
            text: p.display_in(var),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountEntry {
    pub shift_exponent: usize,
    pub polynomial: PolyEntry,
    pub full: PolyEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyPayload {
    pub shape: GrassmannShape,
    pub parity_case: ParityCase,
    pub p_sum: PolyEntry,
    pub p_closed: PolyEntry,
    pub p_star_sum: PolyEntry,
    /// Only for odd `n`; no closed form is known otherwise.
    pub p_star_closed: Option<PolyEntry>,
    pub poincare: PolyEntry,
    pub euler_characteristic: i64,
    pub point_count: PointCountEntry,
    pub reciprocity: bool,
}

impl PolyPayload {
    pub fn new(shape: GrassmannShape) -> Result<Self, CliError> {
        let p_sum = qpoly::p_sum(shape, FillVariant::Standard)?;
        let p_closed = qpoly::p_closed(shape)?;
        if p_sum != p_closed {
            return Err(grassmann_core::Error::Falsification(format!(
                "{shape}: p_sum {p_sum} differs from closed form {p_closed}"
            ))
            .into());
        }
        let p_star_sum = qpoly::p_sum(shape, FillVariant::Shifted)?;
        let p_star_closed = if shape.n() % 2 == 1 {
            let c = qpoly::p_star_closed(shape)?;
            if c != p_star_sum {
                return Err(grassmann_core::Error::Falsification(format!(
                    "{shape}: p*_sum {p_star_sum} differs from closed form {c}"
                ))
                .into());
            }
            Some(PolyEntry::new(&c, "q")?)
        } else {
            None
        };
        let count = qpoly::fq_point_count(shape)?;
        Ok(Self {
            shape,
            parity_case: ParityCase::of(shape),
            p_sum: PolyEntry::new(&p_sum, "q")?,
            p_closed: PolyEntry::new(&p_closed, "q")?,
            p_star_sum: PolyEntry::new(&p_star_sum, "q")?,
            p_star_closed,
            poincare: PolyEntry::new(&qpoly::poincare_polynomial(shape)?, "t")?,
            euler_characteristic: qpoly::euler_characteristic(shape)?,
            point_count: PointCountEntry {
                shift_exponent: count.shift_exponent,
                polynomial: PolyEntry::new(&count.polynomial, "q")?,
                full: PolyEntry::new(&count.full(), "q")?,
            },
            reciprocity: qpoly::reciprocity_check(shape)?,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.shape);
        out.push_str(&format!("p(q)        = {}\n", self.p_closed.text));
        out.push_str(&format!("p*(q)       = {}\n", self.p_star_sum.text));
        out.push_str(&format!("P(t)        = {}\n", self.poincare.text));
        out.push_str(&format!("χ           = {}\n", self.euler_characteristic));
        out.push_str(&format!(
            "|Gr(F_q)|   = q^{} · ({}) = {}\n",
            self.point_count.shift_exponent,
            self.point_count.polynomial.text,
            self.point_count.full.text
        ));
        out.push_str(&format!("reciprocity = {}\n", self.reciprocity));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub passed: bool,
    pub shape_count: usize,
    pub reports: Vec<VerificationReport>,
}

impl VerifyPayload {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let failed: Vec<_> = r.failures().collect();
            if failed.is_empty() {
                out.push_str(&format!("{}: ok ({} checks)\n", r.shape, r.checks.len()));
            } else {
                out.push_str(&format!("{}: {} FAILED\n", r.shape, failed.len()));
                for c in failed {
                    let why = c.counterexample.as_deref().unwrap_or("");
                    out.push_str(&format!("  {}: {why}\n", c.name));
                }
            }
        }
        let verdict = if self.passed {
            "all passed"
        } else {
            "FAILURES"
        };
        out.push_str(&format!("{} shapes, {verdict}\n", self.shape_count));
        out
    }
}

/// One `table` document: both coefficient systems plus integral homology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapePayload {
    pub shape: GrassmannShape,
    pub orientable: bool,
    pub cohomology_constant: TablePayload,
    pub cohomology_twisted: TablePayload,
    pub homology: TablePayload,
}
