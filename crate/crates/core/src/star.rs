//! Star factors: spanning forests whose components are all stars, and the
//! exact maximum over star factors of the smallest star.
//!
//! For a fixed minimum size `s` and a fixed set of centers, a factor exists
//! iff every non-center has a center neighbor and the centers can each be
//! matched to `s` distinct adjacent non-centers. The remaining non-centers
//! then join any adjacent center. Center sets are searched by branch and
//! bound over vertices in id order.

use serde::Serialize;
use thiserror::Error;

use crate::budget::{BudgetMeter, SearchBudget, SearchOutcome};
use crate::graph::Graph;
use crate::parallel::first_found;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StarError {
    #[error("no star factor exists: vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("empty graph")]
    EmptyGraph,
    #[error("d < 2: log d must be positive, got d = {0}")]
    DegreeTooSmall(f64),
    #[error("c must be positive, got {0}")]
    NonPositiveConstant(f64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

impl Star {
    pub fn size(&self) -> usize {
        self.leaves.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct StarFactor {
    pub stars: Vec<Star>,
}

impl StarFactor {
    /// Sorts leaves and stars, and records single-edge stars with the lower
    /// id as center.
    pub fn canonical(mut stars: Vec<Star>) -> Self {
        for star in &mut stars {
            if let [leaf] = star.leaves[..] {
                if leaf < star.center {
                    star.leaves[0] = star.center;
                    star.center = leaf;
                }
            }
            star.leaves.sort_unstable();
        }
        stars.sort_by_key(|s| s.center);
        StarFactor { stars }
    }

    pub fn min_size(&self) -> Option<usize> {
        self.stars.iter().map(Star::size).min()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StarViolation {
    VertexOutOfRange { vertex: usize },
    CoveredTwice { vertex: usize },
    Uncovered { vertex: usize },
    EmptyStar { center: usize },
    NonAdjacentLeaf { center: usize, leaf: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarValidation {
    pub valid: bool,
    pub min_size: Option<usize>,
    pub violation: Option<StarViolation>,
}

/// Checks `f` against `g`, stopping at the first violated condition.
pub fn validate_star_factor(g: &Graph, f: &StarFactor) -> StarValidation {
    let fail = |v| StarValidation {
        valid: false,
        min_size: None,
        violation: Some(v),
    };
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    for star in &f.stars {
        if star.leaves.is_empty() {
            return fail(StarViolation::EmptyStar {
                center: star.center,
            });
        }
        for &v in std::iter::once(&star.center).chain(&star.leaves) {
            if v >= n {
                return fail(StarViolation::VertexOutOfRange { vertex: v });
            }
            if std::mem::replace(&mut covered[v], true) {
                return fail(StarViolation::CoveredTwice { vertex: v });
            }
        }
        if let Some(&leaf) = star.leaves.iter().find(|&&l| !g.has_edge(star.center, l)) {
            return fail(StarViolation::NonAdjacentLeaf {
                center: star.center,
                leaf,
            });
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return fail(StarViolation::Uncovered { vertex: v });
    }
    StarValidation {
        valid: true,
        min_size: f.min_size(),
        violation: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarResult {
    pub value: usize,
    pub witness: StarFactor,
    /// True iff `value` is proven optimal; otherwise it is a lower bound.
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Star factor with every star of size at least 1, from a maximal matching:
/// each unmatched vertex joins its lowest matched neighbor, and a matched
/// pair that collects joiners on both sides splits into two stars.
fn unit_star_factor(g: &Graph) -> StarFactor {
    let n = g.vertex_count();
    let mut mate = vec![usize::MAX; n];
    for u in 0..n {
        if mate[u] == usize::MAX {
            if let Some(&v) = g
                .neighbors(u)
                .iter()
                .find(|&&v| v != u && mate[v] == usize::MAX)
            {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    let mut joiners = vec![Vec::new(); n];
    for u in (0..n).filter(|&u| mate[u] == usize::MAX) {
        // maximality: every neighbor of an unmatched vertex is matched
        joiners[g.neighbors(u)[0]].push(u);
    }
    let mut stars = Vec::new();
    for a in 0..n {
        let b = mate[a];
        if b == usize::MAX || b < a {
            continue;
        }
        match (joiners[a].is_empty(), joiners[b].is_empty()) {
            (false, false) => {
                stars.push(Star {
                    center: a,
                    leaves: joiners[a].clone(),
                });
                stars.push(Star {
                    center: b,
                    leaves: joiners[b].clone(),
                });
            }
            (false, true) => {
                let mut leaves = joiners[a].clone();
                leaves.push(b);
                stars.push(Star { center: a, leaves });
            }
            (true, false) => {
                let mut leaves = joiners[b].clone();
                leaves.push(a);
                stars.push(Star { center: b, leaves });
            }
            (true, true) => stars.push(Star {
                center: a,
                leaves: vec![b],
            }),
        }
    }
    StarFactor::canonical(stars)
}

/// Centers each take `s` distinct adjacent non-centers. Returns the
/// assignment (leaf -> center) if every center can be saturated.
fn saturate_centers(g: &Graph, is_center: &[bool], s: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut owner = vec![usize::MAX; n];
    let centers: Vec<usize> = (0..n).filter(|&v| is_center[v]).collect();

    fn augment(
        g: &Graph,
        is_center: &[bool],
        c: usize,
        owner: &mut [usize],
        visited: &mut [bool],
    ) -> bool {
        for &v in g.neighbors(c) {
            if is_center[v] || visited[v] {
                continue;
            }
            visited[v] = true;
            let prev = owner[v];
            // free leaf, or its owner can be rerouted to another leaf
            if prev == usize::MAX || augment(g, is_center, prev, owner, visited) {
                owner[v] = c;
                return true;
            }
        }
        false
    }

    for &c in &centers {
        for _ in 0..s {
            let mut visited = vec![false; n];
            if !augment(g, is_center, c, &mut owner, &mut visited) {
                return None;
            }
        }
    }
    Some(owner)
}

struct CenterSearch<'g, 'm> {
    g: &'g Graph,
    s: usize,
    meter: &'m BudgetMeter,
    nodes: u64,
    /// None = undecided.
    choice: Vec<Option<bool>>,
    centers: usize,
}

enum Step {
    Found(StarFactor),
    Exhausted,
    Cancelled,
    Done,
}

impl<'g, 'm> CenterSearch<'g, 'm> {
    fn new(g: &'g Graph, s: usize, meter: &'m BudgetMeter) -> Self {
        CenterSearch {
            g,
            s,
            meter,
            nodes: 0,
            choice: vec![None; g.vertex_count()],
            centers: 0,
        }
    }

    fn set(&mut self, v: usize, center: bool) {
        self.choice[v] = Some(center);
        self.centers += usize::from(center);
    }

    fn unset(&mut self, v: usize) {
        if self.choice[v] == Some(true) {
            self.centers -= 1;
        }
        self.choice[v] = None;
    }

    /// Local feasibility around `v` after deciding it.
    fn viable_around(&self, v: usize) -> bool {
        let n = self.g.vertex_count();
        if self.centers * (self.s + 1) > n {
            return false;
        }
        let can_lead = |c: usize| self.choice[c] != Some(false);
        let can_follow = |c: usize| self.choice[c] != Some(true);
        let center_ok = |c: usize| {
            self.g
                .neighbors(c)
                .iter()
                .filter(|&&w| can_follow(w))
                .count()
                >= self.s
        };
        let follower_ok = |u: usize| self.g.neighbors(u).iter().any(|&w| can_lead(w));
        let here = match self.choice[v] {
            Some(true) => center_ok(v),
            Some(false) => follower_ok(v),
            None => true,
        };
        here && self.g.neighbors(v).iter().all(|&w| match self.choice[w] {
            Some(true) => center_ok(w),
            Some(false) => follower_ok(w),
            None => true,
        })
    }

    fn options(&self, v: usize) -> ([bool; 2], usize) {
        if self.g.degree(v) >= self.s {
            ([true, false], 2)
        } else {
            ([false, false], 1)
        }
    }

    fn complete(&self) -> Option<StarFactor> {
        let is_center: Vec<bool> = self.choice.iter().map(|c| *c == Some(true)).collect();
        let mut owner = saturate_centers(self.g, &is_center, self.s)?;
        for u in 0..self.g.vertex_count() {
            if !is_center[u] && owner[u] == usize::MAX {
                owner[u] = *self.g.neighbors(u).iter().find(|&&c| is_center[c])?;
            }
        }
        let mut stars: Vec<Star> = (0..self.g.vertex_count())
            .filter(|&c| is_center[c])
            .map(|center| Star {
                center,
                leaves: Vec::new(),
            })
            .collect();
        for (u, &c) in owner.iter().enumerate() {
            if c != usize::MAX {
                let idx = stars
                    .binary_search_by_key(&c, |st| st.center)
                    .expect("owner is a center");
                stars[idx].leaves.push(u);
            }
        }
        Some(StarFactor::canonical(stars))
    }

    fn run(&mut self, v: usize, cancelled: &dyn Fn() -> bool) -> Step {
        self.nodes += 1;
        if !self.meter.tick() {
            return Step::Exhausted;
        }
        if cancelled() {
            return Step::Cancelled;
        }
        if v == self.g.vertex_count() {
            return match self.complete() {
                Some(f) => Step::Found(f),
                None => Step::Done,
            };
        }
        let (options, count) = self.options(v);
        for &center in &options[..count] {
            self.set(v, center);
            if self.viable_around(v) {
                let step = self.run(v + 1, cancelled);
                if !matches!(step, Step::Done) {
                    self.unset(v);
                    return step;
                }
            }
            self.unset(v);
        }
        Step::Done
    }

    fn frontier(&mut self, v: usize, depth: usize, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if v == depth {
            out.push(path.clone());
            return;
        }
        let (options, count) = self.options(v);
        for &center in &options[..count] {
            self.set(v, center);
            if self.viable_around(v) {
                path.push(center);
                self.frontier(v + 1, depth, path, out);
                path.pop();
            }
            self.unset(v);
        }
    }
}

fn step_outcome(step: Step) -> SearchOutcome<StarFactor> {
    match step {
        Step::Found(f) => SearchOutcome::Found(f),
        Step::Done => SearchOutcome::Infeasible,
        Step::Exhausted | Step::Cancelled => SearchOutcome::Indeterminate,
    }
}

/// The outcome and the number of search nodes it took.
fn decide(
    g: &Graph,
    s: usize,
    meter: &BudgetMeter,
    workers: usize,
) -> (SearchOutcome<StarFactor>, u64) {
    let mut search = CenterSearch::new(g, s, meter);
    if workers <= 1 {
        let step = search.run(0, &|| false);
        return (step_outcome(step), search.nodes);
    }
    let depth = g.vertex_count().min(workers.ilog2() as usize + 4);
    let mut prefixes = Vec::new();
    search.frontier(0, depth, &mut Vec::new(), &mut prefixes);
    first_found(prefixes, workers, |prefix, cancelled| {
        let mut sub = CenterSearch::new(g, s, meter);
        for (v, &center) in prefix.iter().enumerate() {
            sub.set(v, center);
        }
        let step = sub.run(prefix.len(), cancelled);
        (step_outcome(step), sub.nodes)
    })
}

/// Largest `s` such that `g` has a star factor whose stars all have at
/// least `s` edges, with a witness factor.
pub fn max_min_star_size(g: &Graph, budget: SearchBudget) -> Result<StarResult, StarError> {
    max_min_star_size_parallel(g, budget, 1)
}

pub fn max_min_star_size_parallel(
    g: &Graph,
    budget: SearchBudget,
    workers: usize,
) -> Result<StarResult, StarError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(StarError::EmptyGraph);
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(StarError::IsolatedVertex(v));
    }
    let meter = BudgetMeter::new(budget);
    let mut best = (1, unit_star_factor(g));
    let max_degree = g.max_degree().expect("nonempty");
    let mut exhaustive = true;
    let mut nodes = 0;
    for s in 2..=max_degree.min(n - 1) {
        let (outcome, visited) = decide(g, s, &meter, workers);
        nodes += visited;
        match outcome {
            SearchOutcome::Found(f) => best = (s, f),
            SearchOutcome::Infeasible => break,
            SearchOutcome::Indeterminate => {
                exhaustive = false;
                break;
            }
        }
    }
    let (value, witness) = best;
    Ok(StarResult {
        value,
        witness,
        exhaustive,
        nodes,
    })
}

/// Parameters of the lower bound `c (d / ln d)^(1/3)` on the smallest star.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarBoundParams {
    c: f64,
    d: f64,
}

impl StarBoundParams {
    pub fn new(c: f64, d: u64) -> Result<Self, StarError> {
        Self::with_real_degree(c, d as f64)
    }

    /// Accepts a real `d`; only meaningful for probing the formula itself.
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
    pub fn with_real_degree(c: f64, d: f64) -> Result<Self, StarError> {
        if !(c > 0.0) {
            return Err(StarError::NonPositiveConstant(c));
        }
        if !(d >= 2.0) {
            return Err(StarError::DegreeTooSmall(d));
        }
        Ok(StarBoundParams { c, d })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }
}

/// `c (d / ln d)^(1/3)`. Natural log; a different base only rescales `c`.
pub fn star_size_bound(p: StarBoundParams) -> f64 {
    p.c * (p.d / p.d.ln()).cbrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        build_complete, build_counterexample, build_cycle, build_path, CounterexampleParams,
    };

    fn star(center: usize, leaves: &[usize]) -> Star {
        Star {
            center,
            leaves: leaves.to_vec(),
        }
    }

    #[test]
    fn validation_examples() {
        let k4 = build_complete(4);
        let v = validate_star_factor(
            &k4,
            &StarFactor {
                stars: vec![star(0, &[1, 2, 3])],
            },
        );
        assert_eq!((v.valid, v.min_size), (true, Some(3)));

        let c6 = build_cycle(6).unwrap();
        let v = validate_star_factor(
            &c6,
            &StarFactor {
                stars: vec![star(1, &[0, 2]), star(4, &[3, 5])],
            },
        );
        assert_eq!((v.valid, v.min_size), (true, Some(2)));

        let v = validate_star_factor(
            &c6,
            &StarFactor {
                stars: vec![star(0, &[2])],
            },
        );
        assert!(!v.valid);
        assert_eq!(
            v.violation,
            Some(StarViolation::NonAdjacentLeaf { center: 0, leaf: 2 })
        );
    }

    #[test]
    fn validation_violations() {
        let c6 = build_cycle(6).unwrap();
        let check = |stars: Vec<Star>| validate_star_factor(&c6, &StarFactor { stars }).violation;
        assert_eq!(
            check(vec![star(0, &[])]),
            Some(StarViolation::EmptyStar { center: 0 })
        );
        assert_eq!(
            check(vec![star(0, &[1]), star(1, &[2])]),
            Some(StarViolation::CoveredTwice { vertex: 1 })
        );
        assert_eq!(
            check(vec![star(0, &[1])]),
            Some(StarViolation::Uncovered { vertex: 2 })
        );
        assert_eq!(
            check(vec![star(0, &[9])]),
            Some(StarViolation::VertexOutOfRange { vertex: 9 })
        );
    }

    #[test]
    fn canonical_single_edge_star() {
        let f = StarFactor::canonical(vec![star(3, &[2]), star(0, &[5, 1])]);
        assert_eq!(f.stars, vec![star(0, &[1, 5]), star(2, &[3])]);
    }

    #[test]
    fn optimum_examples() {
        let r = max_min_star_size(&build_complete(4), SearchBudget::unbounded()).unwrap();
        assert_eq!((r.value, r.exhaustive), (3, true));
        let r = max_min_star_size(&build_cycle(6).unwrap(), SearchBudget::unbounded()).unwrap();
        assert_eq!(r.value, 2);
        assert!(validate_star_factor(&build_cycle(6).unwrap(), &r.witness).valid);

        let (g, _) = build_counterexample(CounterexampleParams::new(2, 8).unwrap());
        let r = max_min_star_size(&g, SearchBudget::unbounded()).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(
            r.witness.stars,
            vec![star(2, &[1, 3, 4]), star(5, &[0, 6, 7])]
        );
    }

    #[test]
    fn unit_factor_is_valid() {
        for g in [
            build_path(2),
            build_path(7),
            build_cycle(5).unwrap(),
            build_complete(5),
        ] {
            let f = unit_star_factor(&g);
            let v = validate_star_factor(&g, &f);
            assert!(v.valid, "{f:?}");
        }
        let r = max_min_star_size(&build_path(5), SearchBudget::unbounded()).unwrap();
        assert_eq!(r.value, 1);
    }

    #[test]
    fn isolated_vertex_errors() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            max_min_star_size(&g, SearchBudget::unbounded()),
            Err(StarError::IsolatedVertex(2))
        );
        assert_eq!(
            max_min_star_size(&Graph::empty(0), SearchBudget::unbounded()),
            Err(StarError::EmptyGraph)
        );
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let r = max_min_star_size(&build_complete(8), SearchBudget::nodes(2)).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.value, 1);
    }

    #[test]
    fn parallel_matches_sequential() {
        let (g, _) = build_counterexample(CounterexampleParams::new(3, 15).unwrap());
        let seq = max_min_star_size(&g, SearchBudget::unbounded()).unwrap();
        let par = max_min_star_size_parallel(&g, SearchBudget::unbounded(), 4).unwrap();
        assert_eq!(
            seq,
            StarResult {
                nodes: seq.nodes,
                ..par.clone()
            }
        );
        for _ in 0..8 {
            assert_eq!(
                max_min_star_size_parallel(&g, SearchBudget::unbounded(), 4).unwrap(),
                par
            );
        }
    }

    #[test]
    fn bound_values() {
        let at_e =
            star_size_bound(StarBoundParams::with_real_degree(1.0, std::f64::consts::E).unwrap());
        assert!((at_e - std::f64::consts::E.cbrt()).abs() < 1e-12);
        let at_2 = star_size_bound(StarBoundParams::new(1.0, 2).unwrap());
        assert!((at_2 - (2.0 / 2f64.ln()).cbrt()).abs() < 1e-9);
        assert!((at_2 - 1.423_644_358_728_856_8).abs() < 1e-9);
        let full = star_size_bound(StarBoundParams::new(1.0, 8).unwrap());
        let half = star_size_bound(StarBoundParams::new(0.5, 8).unwrap());
        assert!((half - full / 2.0).abs() < 1e-12);
        assert!(matches!(
            StarBoundParams::new(1.0, 1),
            Err(StarError::DegreeTooSmall(_))
        ));
        assert!(matches!(
            StarBoundParams::new(0.0, 4),
            Err(StarError::NonPositiveConstant(_))
        ));
    }
}
