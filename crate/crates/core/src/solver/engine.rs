//! Depth-first coloring search with forward checking over an explicit
//! conflict graph. Both window search and periodic search compile down to
//! a [`ConflictModel`]; vertices are visited in index order and colors in
//! increasing order, so the first solution found is the lexicographically
//! least one.

use std::time::Instant;

use super::SearchConfig;

pub(crate) struct ConflictModel {
    points: usize,
    colors: usize,
    /// `adjacency[c][p]`: vertices that may not share color `c` with `p`.
    adjacency: Vec<Vec<Vec<u32>>>,
    /// Colors that no vertex may take at all.
    banned: Vec<bool>,
    /// For each color, (group index, position within its identical-column group).
    group_slot: Vec<(usize, usize)>,
    group_count: usize,
}

impl ConflictModel {
    pub(crate) fn new(
        points: usize,
        adjacency: Vec<Vec<Vec<u32>>>,
        banned: Vec<bool>,
        groups: &[Vec<usize>],
    ) -> Self {
        let colors = adjacency.len();
        debug_assert_eq!(banned.len(), colors);
        let mut group_slot = vec![(0, 0); colors];
        for (g, members) in groups.iter().enumerate() {
            for (pos, &c) in members.iter().enumerate() {
                group_slot[c] = (g, pos);
            }
        }
        ConflictModel {
            points,
            colors,
            adjacency,
            banned,
            group_slot,
            group_count: groups.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    /// 1-based colors in vertex order.
    Found(Vec<u32>),
    Exhausted,
    NodeBudget,
    TimeBudget,
}

pub(crate) fn search(model: &ConflictModel, config: &SearchConfig) -> (Outcome, u64) {
    let m = model.colors;
    let open = model.banned.iter().filter(|b| !**b).count() as u32;
    let mut s = Searcher {
        model,
        config,
        started: Instant::now(),
        assign: vec![0; model.points],
        blocked: vec![0; model.points * m],
        available: vec![open; model.points],
        group_used: vec![0; model.group_count],
        nodes: 0,
    };
    let outcome = match s.dfs(0) {
        Ok(true) => Outcome::Found(s.assign.clone()),
        Ok(false) => Outcome::Exhausted,
        Err(stop) => stop,
    };
    (outcome, s.nodes)
}

struct Searcher<'a> {
    model: &'a ConflictModel,
    config: &'a SearchConfig,
    started: Instant,
    assign: Vec<u32>,
    blocked: Vec<u32>,
    available: Vec<u32>,
    group_used: Vec<usize>,
    nodes: u64,
}

impl Searcher<'_> {
    fn dfs(&mut self, p: usize) -> Result<bool, Outcome> {
        let model = self.model;
        if p == model.points {
            return Ok(true);
        }
        let m = model.colors;
        for c in 0..m {
            if model.banned[c] || self.blocked[p * m + c] > 0 {
                continue;
            }
            let (group, pos) = model.group_slot[c];
            if self.config.symmetry_breaking && pos > self.group_used[group] {
                continue;
            }
            self.tick()?;

            self.assign[p] = c as u32 + 1;
            let opens_group = pos == self.group_used[group];
            if opens_group {
                self.group_used[group] += 1;
            }

            let neighbors = &model.adjacency[c][p];
            let mut touched = 0;
            let mut wiped = false;
            for &q in neighbors {
                touched += 1;
                let q = q as usize;
                if q <= p {
                    continue;
                }
                let slot = &mut self.blocked[q * m + c];
                *slot += 1;
                if *slot == 1 {
                    self.available[q] -= 1;
                    if self.available[q] == 0 {
                        wiped = true;
                        break;
                    }
                }
            }

            if !wiped && self.dfs(p + 1)? {
                return Ok(true);
            }

            for &q in &neighbors[..touched] {
                let q = q as usize;
                if q <= p {
                    continue;
                }
                let slot = &mut self.blocked[q * m + c];
                *slot -= 1;
                if *slot == 0 {
                    self.available[q] += 1;
                }
            }
            if opens_group {
                self.group_used[group] -= 1;
            }
            self.assign[p] = 0;
        }
        Ok(false)
    }

    fn tick(&mut self) -> Result<(), Outcome> {
        if self.nodes >= self.config.node_budget {
            return Err(Outcome::NodeBudget);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.config.time_budget {
                if self.started.elapsed() > limit {
                    return Err(Outcome::TimeBudget);
                }
            }
        }
        Ok(())
    }
}
