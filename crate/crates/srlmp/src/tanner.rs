//! Tanner-graph representation, progressive edge growth construction, and
//! the q-ary alist file format.

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::ensembles::DegreeDistribution;
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Symbol};

/// Bipartite graph of n variable nodes and m check nodes with nonzero
/// edge labels in F_q.
///
/// Immutable after construction; simulation workers share it read-only.
#[derive(Debug, Clone)]
pub struct TannerGraph {
    field: FieldSpec,
    n: usize,
    m: usize,
    /// per VN: (check node, edge id), sorted by check node
    vn_adj: Vec<Vec<(usize, usize)>>,
    /// per CN: (variable node, edge id), sorted by variable node
    cn_adj: Vec<Vec<(usize, usize)>>,
    /// per edge: label h_{v,c} ∈ F_q \ {0}
    labels: Vec<Symbol>,
}

impl TannerGraph {
    /// Builds a graph from explicit edges `(vn, cn, label)`.
    pub fn new(field: FieldSpec, n: usize, m: usize, edges: &[(usize, usize, Symbol)]) -> Result<Self> {
        let q = field.q();
        let mut vn_adj = vec![Vec::new(); n];
        let mut cn_adj = vec![Vec::new(); m];
        let mut labels = Vec::with_capacity(edges.len());
        for (eid, &(v, c, label)) in edges.iter().enumerate() {
            if v >= n || c >= m {
                return Err(Error::invalid(format!("edge ({v}, {c}) out of range")));
            }
            if label.is_zero() || label.index() >= q {
                return Err(Error::invalid(format!(
                    "edge ({v}, {c}) has invalid label index {}",
                    label.index()
                )));
            }
            if vn_adj[v].iter().any(|&(c2, _)| c2 == c) {
                return Err(Error::invalid(format!("parallel edge between VN {v} and CN {c}")));
            }
            vn_adj[v].push((c, eid));
            cn_adj[c].push((v, eid));
            labels.push(label);
        }
        for adj in &mut vn_adj {
            adj.sort_unstable();
        }
        for adj in &mut cn_adj {
            adj.sort_unstable();
        }
        Ok(Self { field, n, m, vn_adj, cn_adj, labels })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn num_vns(&self) -> usize {
        self.n
    }

    pub fn num_cns(&self) -> usize {
        self.m
    }

    pub fn num_edges(&self) -> usize {
        self.labels.len()
    }

    pub fn vn_neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.vn_adj[v]
    }

    pub fn cn_neighbors(&self, c: usize) -> &[(usize, usize)] {
        &self.cn_adj[c]
    }

    pub fn label(&self, edge: usize) -> Symbol {
        self.labels[edge]
    }

    pub fn vn_degree(&self, v: usize) -> usize {
        self.vn_adj[v].len()
    }

    pub fn cn_degree(&self, c: usize) -> usize {
        self.cn_adj[c].len()
    }

    /// True iff H·x = 0 over F_q.
    pub fn syndrome_is_zero(&self, x: &[Symbol]) -> bool {
        debug_assert_eq!(x.len(), self.n);
        let f = &self.field;
        self.cn_adj.iter().all(|adj| {
            let mut sum = Symbol::ZERO;
            for &(v, e) in adj {
                sum = f.add(sum, f.mul(self.labels[e], x[v]));
            }
            sum.is_zero()
        })
    }

    /// Empirical edge-perspective degree distribution of this graph.
    pub fn degree_distribution(&self) -> Result<DegreeDistribution> {
        let e = self.num_edges() as f64;
        let mut lambda = std::collections::BTreeMap::new();
        for adj in &self.vn_adj {
            *lambda.entry(adj.len()).or_insert(0.0) += adj.len() as f64 / e;
        }
        let mut rho = std::collections::BTreeMap::new();
        for adj in &self.cn_adj {
            *rho.entry(adj.len()).or_insert(0.0) += adj.len() as f64 / e;
        }
        // absorb accumulated rounding so the coefficient sums are exact
        let renorm = |p: &mut std::collections::BTreeMap<usize, f64>| {
            let s: f64 = p.values().sum();
            p.values_mut().for_each(|v| *v /= s);
        };
        renorm(&mut lambda);
        renorm(&mut rho);
        DegreeDistribution::new(lambda, rho)
    }
}

/// Node-perspective degree counts realizing `dd` at block length `n`:
/// `(vn_counts, cn_counts)` as (degree, count) pairs.
fn degree_counts(n: usize, dd: &DegreeDistribution) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    // node fraction of degree d is (λ_d/d) / Σ(λ_j/j); largest-remainder rounding
    let round_counts = |coeffs: &std::collections::BTreeMap<usize, f64>, total: usize| {
        let norm: f64 = coeffs.iter().map(|(&d, &c)| c / d as f64).sum();
        let ideal: Vec<(usize, f64)> = coeffs
            .iter()
            .map(|(&d, &c)| (d, total as f64 * (c / d as f64) / norm))
            .collect();
        let mut counts: Vec<(usize, usize)> = ideal.iter().map(|&(d, x)| (d, x.floor() as usize)).collect();
        let assigned: usize = counts.iter().map(|&(_, k)| k).sum();
        let mut rema: Vec<(usize, f64)> = ideal
            .iter()
            .enumerate()
            .map(|(i, &(_, x))| (i, x - x.floor()))
            .collect();
        rema.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        for &(i, _) in rema.iter().take(total - assigned) {
            counts[i].1 += 1;
        }
        counts
    };

    let vn_counts = round_counts(dd.lambda(), n);
    let edges: usize = vn_counts.iter().map(|&(d, k)| d * k).sum();
    let rho_inv_sum: f64 = dd.rho().iter().map(|(&d, &c)| c / d as f64).sum();
    let m = (edges as f64 * rho_inv_sum).round() as usize;
    if m == 0 {
        return Err(Error::invalid("degree sequence yields zero check nodes"));
    }
    let cn_counts = round_counts(dd.rho(), m);
    let cn_edges: usize = cn_counts.iter().map(|&(d, k)| d * k).sum();
    if cn_edges != edges {
        return Err(Error::invalid(format!(
            "degree distribution not realizable at n = {n}: {edges} VN-side edges vs {cn_edges} CN-side"
        )));
    }
    Ok((vn_counts, cn_counts))
}

/// Progressive edge growth construction.
///
/// Variable nodes are processed in ascending degree order. Each new edge
/// goes to a check node with spare capacity that is unreachable from the
/// variable node in the current graph, or failing that to a reachable one
/// at maximal BFS depth; ties break toward the lowest current degree, then
/// the lowest index. Edge labels are drawn uniformly from F_q \ {0} with a
/// generator seeded by `seed`, in edge-creation order, so equal inputs give
/// identical graphs.
pub fn peg_construct(n: usize, dd: &DegreeDistribution, q: usize, seed: u64) -> Result<TannerGraph> {
    let field = FieldSpec::new(q)?;
    let (vn_counts, cn_counts) = degree_counts(n, dd)?;

    let mut vn_deg = Vec::with_capacity(n);
    for &(d, k) in &vn_counts {
        vn_deg.extend(std::iter::repeat(d).take(k));
    }
    vn_deg.sort_unstable();
    let mut cn_cap = Vec::new();
    for &(d, k) in &cn_counts {
        cn_cap.extend(std::iter::repeat(d).take(k));
    }
    let m = cn_cap.len();

    let mut vn_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cn_adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut edges: Vec<(usize, usize)> = Vec::new();

    // BFS scratch: depth of first reach per CN, usize::MAX = unreached
    let mut cn_depth = vec![usize::MAX; m];
    let mut vn_seen = vec![false; n];

    for v in 0..n {
        for k in 0..vn_deg[v] {
            let pick = if k == 0 {
                best_cn(&cn_adj, (0..m).filter(|&c| cn_adj[c].len() < cn_cap[c]))
            } else {
                cn_depth.iter_mut().for_each(|d| *d = usize::MAX);
                vn_seen.iter_mut().for_each(|s| *s = false);
                vn_seen[v] = true;
                let mut layer: Vec<usize> = vn_adj[v].clone();
                for &c in &layer {
                    cn_depth[c] = 0;
                }
                let mut depth = 0usize;
                while !layer.is_empty() {
                    depth += 1;
                    let mut next = Vec::new();
                    for &c in &layer {
                        for &u in &cn_adj[c] {
                            if !vn_seen[u] {
                                vn_seen[u] = true;
                                for &c2 in &vn_adj[u] {
                                    if cn_depth[c2] == usize::MAX {
                                        cn_depth[c2] = depth;
                                        next.push(c2);
                                    }
                                }
                            }
                        }
                    }
                    layer = next;
                }
                let capacious = (0..m).filter(|&c| cn_adj[c].len() < cn_cap[c]);
                let unreachable: Vec<usize> = capacious.clone().filter(|&c| cn_depth[c] == usize::MAX).collect();
                if !unreachable.is_empty() {
                    best_cn(&cn_adj, unreachable.into_iter())
                } else {
                    let max_depth = capacious
                        .clone()
                        .filter(|&c| cn_depth[c] > 0)
                        .map(|c| cn_depth[c])
                        .max();
                    max_depth.and_then(|d| {
                        best_cn(&cn_adj, capacious.filter(|&c| cn_depth[c] == d))
                    })
                }
            };
            let c = pick.ok_or_else(|| {
                Error::invalid(format!("PEG stuck placing edge {k} of VN {v}: no candidate check node"))
            })?;
            vn_adj[v].push(c);
            cn_adj[c].push(v);
            edges.push((v, c));
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let labeled: Vec<(usize, usize, Symbol)> = edges
        .into_iter()
        .map(|(v, c)| (v, c, Symbol(rng.random_range(1..q as u16))))
        .collect();
    TannerGraph::new(field, n, m, &labeled)
}

fn best_cn(cn_adj: &[Vec<usize>], candidates: impl Iterator<Item = usize>) -> Option<usize> {
    candidates.min_by_key(|&c| (cn_adj[c].len(), c))
}

// ---------------------------------------------------------------------------
// q-ary alist serialization
//
// Text format, UTF-8 with LF line endings:
//   line 1: n m q
//   line 2: max VN degree, max CN degree
//   line 3: n VN degrees        line 4: m CN degrees
//   n lines: per-VN "cn:label" pairs, 1-based CN index, label in 1..=q−1
//            (label index l means α^{l−1})
//   m lines: per-CN "vn:label" pairs
// ---------------------------------------------------------------------------

/// Renders the graph in the q-ary alist format. Byte-stable for a fixed
/// graph: entries are sorted by neighbor index.
pub fn to_qalist(g: &TannerGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", g.n, g.m, g.field.q());
    let dv = (0..g.n).map(|v| g.vn_degree(v)).max().unwrap_or(0);
    let dc = (0..g.m).map(|c| g.cn_degree(c)).max().unwrap_or(0);
    let _ = writeln!(out, "{dv} {dc}");
    let degs: Vec<String> = (0..g.n).map(|v| g.vn_degree(v).to_string()).collect();
    let _ = writeln!(out, "{}", degs.join(" "));
    let degs: Vec<String> = (0..g.m).map(|c| g.cn_degree(c).to_string()).collect();
    let _ = writeln!(out, "{}", degs.join(" "));
    for v in 0..g.n {
        let entries: Vec<String> = g.vn_adj[v]
            .iter()
            .map(|&(c, e)| format!("{}:{}", c + 1, g.labels[e].index()))
            .collect();
        let _ = writeln!(out, "{}", entries.join(" "));
    }
    for c in 0..g.m {
        let entries: Vec<String> = g.cn_adj[c]
            .iter()
            .map(|&(v, e)| format!("{}:{}", v + 1, g.labels[e].index()))
            .collect();
        let _ = writeln!(out, "{}", entries.join(" "));
    }
    out
}

pub fn save_qalist(g: &TannerGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_qalist(g))?;
    Ok(())
}

pub fn load_qalist(path: impl AsRef<Path>) -> Result<TannerGraph> {
    let text = std::fs::read_to_string(path)?;
    from_qalist(&text)
}

/// Parses the q-ary alist format; errors carry 1-based line numbers.
pub fn from_qalist(text: &str) -> Result<TannerGraph> {
    let total_lines = text.lines().count();
    let mut lines = text.lines().enumerate();
    let mut next_line = move |what: &str| -> Result<(usize, &str)> {
        lines
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| Error::parse(total_lines + 1, format!("unexpected end of file, expected {what}")))
    };

    let (ln, header) = next_line("header (n m q)")?;
    let head: Vec<usize> = parse_ints(ln, header)?;
    if head.len() != 3 {
        return Err(Error::parse(ln, format!("expected 'n m q', got {} fields", head.len())));
    }
    let (n, m, q) = (head[0], head[1], head[2]);
    let field = FieldSpec::new(q).map_err(|e| Error::parse(ln, e.to_string()))?;

    let (ln, maxdeg) = next_line("max degrees")?;
    let maxdeg: Vec<usize> = parse_ints(ln, maxdeg)?;
    if maxdeg.len() != 2 {
        return Err(Error::parse(ln, "expected max VN and CN degree"));
    }

    let (ln, vdeg_line) = next_line("VN degree list")?;
    let vn_degs: Vec<usize> = parse_ints(ln, vdeg_line)?;
    if vn_degs.len() != n {
        return Err(Error::parse(ln, format!("expected {n} VN degrees, got {}", vn_degs.len())));
    }
    let (ln, cdeg_line) = next_line("CN degree list")?;
    let cn_degs: Vec<usize> = parse_ints(ln, cdeg_line)?;
    if cn_degs.len() != m {
        return Err(Error::parse(ln, format!("expected {m} CN degrees, got {}", cn_degs.len())));
    }

    let parse_entries = |ln: usize, line: &str, peer_max: usize| -> Result<Vec<(usize, usize)>> {
        line.split_whitespace()
            .map(|tok| {
                let (idx, label) = tok
                    .split_once(':')
                    .ok_or_else(|| Error::parse(ln, format!("expected index:label, got {tok:?}")))?;
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad index {idx:?}")))?;
                let label: usize = label
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad label {label:?}")))?;
                if idx == 0 || idx > peer_max {
                    return Err(Error::parse(ln, format!("index {idx} out of range 1..={peer_max}")));
                }
                if label == 0 {
                    return Err(Error::parse(ln, "zero edge label"));
                }
                if label >= q {
                    return Err(Error::parse(ln, format!("label {label} out of range 1..={}", q - 1)));
                }
                Ok((idx - 1, label))
            })
            .collect()
    };

    let mut edges: Vec<(usize, usize, Symbol)> = Vec::new();
    for v in 0..n {
        let (ln, line) = next_line("VN adjacency")?;
        let entries = parse_entries(ln, line, m)?;
        if entries.len() != vn_degs[v] {
            return Err(Error::parse(
                ln,
                format!("VN {} lists {} edges, degree list says {}", v + 1, entries.len(), vn_degs[v]),
            ));
        }
        for (c, label) in entries {
            edges.push((v, c, Symbol(label as u16)));
        }
    }
    // CN block must describe the same labeled edge set
    let first_cn_line = 4 + n + 1;
    let mut cn_edges: Vec<(usize, usize, usize)> = Vec::new();
    for c in 0..m {
        let (ln, line) = next_line("CN adjacency")?;
        let entries = parse_entries(ln, line, n)?;
        if entries.len() != cn_degs[c] {
            return Err(Error::parse(
                ln,
                format!("CN {} lists {} edges, degree list says {}", c + 1, entries.len(), cn_degs[c]),
            ));
        }
        for (v, label) in entries {
            cn_edges.push((v, c, label));
        }
    }
    let mut a: Vec<(usize, usize, usize)> = edges.iter().map(|&(v, c, l)| (v, c, l.index())).collect();
    a.sort_unstable();
    cn_edges.sort_unstable();
    if a != cn_edges {
        return Err(Error::parse(first_cn_line, "VN and CN adjacency blocks disagree"));
    }

    let g = TannerGraph::new(field, n, m, &edges).map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::parse(first_cn_line - 1, msg),
        other => other,
    })?;
    let claimed_dv = (0..n).map(|v| g.vn_degree(v)).max().unwrap_or(0);
    let claimed_dc = (0..m).map(|c| g.cn_degree(c)).max().unwrap_or(0);
    if maxdeg[0] != claimed_dv || maxdeg[1] != claimed_dc {
        return Err(Error::parse(2, "max degree header disagrees with adjacency"));
    }
    Ok(g)
}

fn parse_ints(ln: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| Error::parse(ln, format!("bad integer {tok:?}"))))
        .collect()
}
