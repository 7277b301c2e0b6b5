//! Every cross-check for one shape, collected into a report.
//!
//! A check never aborts the run: internal errors are recorded as failures
//! with the error text as the counterexample.

use serde::{Deserialize, Serialize};

use crate::complex::{
    classify_edges, cohomology, cohomology_snf_oracle, homology, homology_dual_variant,
    is_orientable, Indexing,
};
use crate::error::{Error, Result};
use crate::qpoly::{
    euler_characteristic, fq_point_count, gaussian_binomial, p_closed, p_star_closed, p_sum,
    poincare_polynomial, reciprocity_check, ParityCase,
};
use crate::schubert::{
    canonical_reduced_word, lattice_paths, partition_to_symbol, symbol_to_partition, BruhatGraph,
};
use crate::shape::{GrassmannShape, ORACLE_MAX_N};
use crate::weights::{
    epsilon_start, eta, eta_closed_form, eta_hat, eta_star, sign_action, weights_of, FillVariant,
};

/// Words per cell tried when checking that `η̂` does not depend on the word.
pub const PATH_LIMIT: usize = 50;

/// Largest `n` for which path independence is checked by default.
pub const PATH_CHECK_MAX_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub shape: GrassmannShape,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub oracle_max_n: usize,
    pub path_check_max_n: usize,
    pub path_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            oracle_max_n: ORACLE_MAX_N,
            path_check_max_n: PATH_CHECK_MAX_N,
            path_limit: PATH_LIMIT,
        }
    }
}

// Ok(None) = pass, Ok(Some(msg)) = counterexample.
type Outcome = Result<Option<String>>;

fn fail(msg: impl Into<String>) -> Outcome {
    Ok(Some(msg.into()))
}

pub fn verify_shape(shape: GrassmannShape, opts: VerifyOptions) -> VerificationReport {
    let mut checks = Vec::new();
    let mut run = |name: &str, f: &dyn Fn() -> Outcome| {
        let res = f();
        let counterexample = match res {
            Ok(None) => None,
            Ok(Some(m)) => Some(m),
            Err(e) => Some(e.to_string()),
        };
        checks.push(CheckOutcome {
            name: name.to_string(),
            passed: counterexample.is_none(),
            counterexample,
        });
    };

    run("cell_count", &|| cell_count(shape));
    run("symbol_round_trip", &|| symbol_round_trip(shape));
    run("canonical_word_reaches_cell", &|| canonical_words(shape));
    run("eta_closed_form", &|| eta_closed(shape));
    run("eta_complement", &|| eta_complement(shape));
    run("eta_hat_equals_eta", &|| eta_hat_agrees(shape));
    if shape.n() <= opts.path_check_max_n {
        run("eta_hat_path_independence", &|| {
            path_independence(shape, opts.path_limit)
        });
    }
    run("edge_criterion", &|| edge_criterion(shape));
    run("edge_partition", &|| edge_partition(shape));
    if shape.n() <= opts.oracle_max_n {
        run("oracle_matches_fast_path", &|| {
            oracle(shape, opts.oracle_max_n)
        });
    }
    run("betti_vs_poincare", &|| betti(shape));
    run("euler_characteristic", &|| euler(shape));
    run("duality", &|| duality(shape));
    run("orientability", &|| orientability(shape));
    run("gaussian_binomial_cell_sum", &|| gaussian(shape));
    run("p_sum_vs_closed", &|| p_forms(shape));
    run("point_count", &|| point_count(shape));
    run("reciprocity", &|| reciprocity(shape));

    VerificationReport { shape, checks }
}

fn cell_count(shape: GrassmannShape) -> Outcome {
    let g = BruhatGraph::build(shape)?;
    if g.cells().len() as u64 != shape.cell_count() {
        return fail(format!(
            "{} cells, C(n,k) = {}",
            g.cells().len(),
            shape.cell_count()
        ));
    }
    for e in g.edges() {
        if g.degree_of(e.target) != g.degree_of(e.source) + 1 {
            return fail(format!(
                "edge {} -> {} skips a degree",
                g.cell(e.source),
                g.cell(e.target)
            ));
        }
    }
    Ok(None)
}

fn symbol_round_trip(shape: GrassmannShape) -> Outcome {
    let g = BruhatGraph::build(shape)?;
    for p in g.cells() {
        let back = symbol_to_partition(&partition_to_symbol(p, shape)?, shape)?;
        if &back != p {
            return fail(format!("{p} -> {back}"));
        }
    }
    Ok(None)
}

fn canonical_words(shape: GrassmannShape) -> Outcome {
    let g = BruhatGraph::build(shape)?;
    for (id, p) in g.cells().iter().enumerate() {
        let w = canonical_reduced_word(p, shape)?;
        if w.len() != p.size() || g.follow(&w)? != id {
            return fail(format!("word {w} does not reach {p}"));
        }
    }
    Ok(None)
}

fn eta_closed(shape: GrassmannShape) -> Outcome {
    let g = BruhatGraph::build(shape)?;
    for p in g.cells() {
        // eta() itself compares count and closed form
        let e = eta(p, shape)?;
        if e != eta_closed_form(p, shape) {
            return fail(format!("{p}"));
        }
    }
    Ok(None)
}

fn eta_complement(shape: GrassmannShape) -> Outcome {
    let g = BruhatGraph::build(shape)?;
    for p in g.cells() {
        if eta(p, shape)? + eta_star(p, shape)? != p.size() {
            return fail(format!("{p}"));
        }
    }
    Ok(None)
}

fn eta_hat_agrees(shape: GrassmannShape) -> Outcome {
    let g = BruhatGraph::build(shape)?;
    for v in FillVariant::BOTH {
        let w = weights_of(&g, v)?;
        for (id, p) in g.cells().iter().enumerate() {
            let t = eta_hat(p, shape, v, None)?;
            if t.eta_hat != w[id] {
                return fail(format!("{p} ({v}): eta_hat {} != {}", t.eta_hat, w[id]));
            }
        }
    }
    Ok(None)
}

fn path_independence(shape: GrassmannShape, limit: usize) -> Outcome {
    let g = BruhatGraph::build(shape)?;
    for v in FillVariant::BOTH {
        for p in g.cells() {
            let mut seen = None;
            for w in lattice_paths(p, shape, limit)? {
                if w.len() != p.size() {
                    return fail(format!("word {w} for {p} has wrong length"));
                }
                let t = eta_hat(p, shape, v, Some(&w))?;
                match seen {
                    None => seen = Some(t.eta_hat),
                    Some(x) if x != t.eta_hat => {
                        return fail(format!("{p} ({v}): word {w} gives {} not {x}", t.eta_hat))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(None)
}

/// Sign vector fixed by the edge's reflection ⇔ weight unchanged.
fn edge_criterion(shape: GrassmannShape) -> Outcome {
    for v in FillVariant::BOTH {
        let l = classify_edges(shape, v)?;
        let g = l.graph();
        for (idx, e) in g.edges().iter().enumerate() {
            let src = g.cell(e.source);
            let mut eps = epsilon_start(shape, v);
            for i in canonical_reduced_word(src, shape)?.application_order() {
                eps = sign_action(i, &eps)?;
            }
            let fixed = eps.is_fixed_by(e.reflection_index());
            if shape.n() >= 3 {
                let literal = sign_action(e.reflection_index(), &eps)? == eps;
                if literal != fixed {
                    return fail(format!(
                        "{src}: s_{} literal/fixed disagree",
                        e.reflection_index()
                    ));
                }
            }
            if fixed != l.is_double(idx) {
                return fail(format!(
                    "{src} -> {} ({v}): sign fixed = {fixed}, double = {}",
                    g.cell(e.target),
                    l.is_double(idx)
                ));
            }
        }
    }
    Ok(None)
}

fn edge_partition(shape: GrassmannShape) -> Outcome {
    let a = classify_edges(shape, FillVariant::Standard)?;
    let b = classify_edges(shape, FillVariant::Shifted)?;
    for e in 0..a.graph().edges().len() {
        if a.is_double(e) == b.is_double(e) {
            return fail(format!("edge #{e} double in both or neither"));
        }
    }
    Ok(None)
}

fn oracle(shape: GrassmannShape, max_n: usize) -> Outcome {
    for v in FillVariant::BOTH {
        crate::complex::cohomology_snf_oracle_with_capacity(shape, v, max_n)?;
    }
    let _ = cohomology_snf_oracle;
    Ok(None)
}

fn betti(shape: GrassmannShape) -> Outcome {
    let ranks = cohomology(shape, FillVariant::Standard)?.free_ranks();
    let poly = poincare_polynomial(shape)?;
    for (j, &r) in ranks.iter().enumerate() {
        if poly.coeff(j) != r.into() {
            return fail(format!(
                "degree {j}: rank {r}, Poincaré coefficient {}",
                poly.coeff(j)
            ));
        }
    }
    if poly.degree().is_some_and(|d| d >= ranks.len()) {
        return fail("Poincaré polynomial exceeds top degree");
    }
    if let ParityCase::Binomial { .. } = ParityCase::of(shape) {
        if poly != p_closed(shape)?.substitute_power(2) {
            return fail("P(t) != p(t^2)");
        }
    }
    Ok(None)
}

fn euler(shape: GrassmannShape) -> Outcome {
    let chi = euler_characteristic(shape)?;
    let alt: i64 = cohomology(shape, FillVariant::Standard)?
        .free_ranks()
        .iter()
        .enumerate()
        .map(|(j, &r)| if j % 2 == 0 { r as i64 } else { -(r as i64) })
        .sum();
    let expected = match ParityCase::of(shape) {
        ParityCase::Binomial { m, j } => num_integer::binomial(m as i64, j as i64),
        ParityCase::Hook { .. } => 0,
    };
    if chi != alt || chi != expected {
        return fail(format!(
            "P(-1) = {chi}, alternating ranks = {alt}, expected {expected}"
        ));
    }
    Ok(None)
}

fn duality(shape: GrassmannShape) -> Outcome {
    let h = homology(shape)?;
    if h.indexing != Indexing::Homology {
        return Err(Error::Falsification("homology table mislabelled".into()));
    }
    let dual = cohomology(shape, homology_dual_variant(shape))?;
    let back = h.reversed(Indexing::Cohomology);
    if !back.same_groups(&dual) {
        return fail("reversed homology differs from dual cohomology");
    }
    // rational Poincaré duality on Betti numbers
    let betti = cohomology(shape, FillVariant::Standard)?.free_ranks();
    if h.free_ranks() != betti {
        return fail(format!(
            "homology ranks {:?} vs Betti {:?}",
            h.free_ranks(),
            betti
        ));
    }
    Ok(None)
}

fn orientability(shape: GrassmannShape) -> Outcome {
    let o = is_orientable(shape)?;
    if o != shape.n().is_multiple_of(2) {
        return fail(format!("orientable = {o}"));
    }
    Ok(None)
}

fn gaussian(shape: GrassmannShape) -> Outcome {
    let g = BruhatGraph::build(shape)?;
    let mut coeffs = vec![0i64; shape.dim() + 1];
    for p in g.cells() {
        coeffs[p.size()] += 1;
    }
    let direct = crate::poly::IntPolynomial::from_coeffs(&coeffs);
    let gb = gaussian_binomial(shape.n(), shape.k())?;
    if gb != direct {
        return fail(format!("[n k]_q = {gb}, cell sum = {direct}"));
    }
    if !gb.is_palindromic() {
        return fail("Gaussian binomial not symmetric");
    }
    Ok(None)
}

fn p_forms(shape: GrassmannShape) -> Outcome {
    let sum = p_sum(shape, FillVariant::Standard)?;
    let closed = p_closed(shape)?;
    if sum != closed {
        return fail(format!("p_sum = {sum}, closed = {closed}"));
    }
    if shape.n() % 2 == 1 {
        let s = p_sum(shape, FillVariant::Shifted)?;
        let c = p_star_closed(shape)?;
        if s != c {
            return fail(format!("p*_sum = {s}, closed = {c}"));
        }
    }
    Ok(None)
}

fn point_count(shape: GrassmannShape) -> Outcome {
    let pc = fq_point_count(shape)?;
    let full = pc.full();
    if full.degree() != Some(shape.dim()) {
        return fail(format!("degree of {full} is not k(n-k)"));
    }
    Ok(None)
}

fn reciprocity(shape: GrassmannShape) -> Outcome {
    if !reciprocity_check(shape)? {
        return fail("q^D p(1/q) != ±p(q)");
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr25_passes() {
        let r = verify_shape(GrassmannShape::new(2, 5).unwrap(), VerifyOptions::default());
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r
            .checks
            .iter()
            .any(|c| c.name == "oracle_matches_fast_path"));
    }

    #[test]
    fn circle_passes() {
        let r = verify_shape(GrassmannShape::new(1, 2).unwrap(), VerifyOptions::default());
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
