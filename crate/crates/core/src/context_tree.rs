//! Weighted context tree of bounded depth.
//!
//! Nodes are materialized only along context paths that have been visited.
//! A missing node behaves exactly like one with empty counts and a weighted
//! probability of 1, so the mixture over the full perfect tree is unchanged.
//!
//! The context of the next bit is the last `depth` bits, most recent first,
//! zero padded on the left at startup. Descending from the root, a context
//! bit of 1 selects the left child and 0 the right child.

use std::f64::consts::LN_2;

use crate::estimator::CountPair;
use crate::variant::{Schedule, VariantConfig, MAX_DEPTH};

const NO_CHILD: u32 = 0;
const LEFT: usize = 1;
const RIGHT: usize = 0;

#[derive(Debug, Clone)]
struct Node {
    counts: CountPair,
    log_w: f64,
    // share of the node's own KT estimate in its predictive mixture
    kt_weight: f64,
    visits: u64,
    // indexed by context bit; 0 means absent since the root is never a child
    children: [u32; 2],
}

impl Node {
    const EMPTY: Node = Node {
        counts: CountPair::EMPTY,
        log_w: 0.0,
        kt_weight: 0.5,
        visits: 0,
        children: [NO_CHILD; 2],
    };
}

/// Read-only snapshot of a materialized node.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeView {
    pub depth: usize,
    /// Context bits leading to the node, most recent at bit 0.
    pub context: u64,
    pub counts: CountPair,
    pub log_w: f64,
    pub visits: u64,
    /// Counts of the children selected by context bit 0 and 1, if present.
    pub children: [Option<CountPair>; 2],
}

impl NodeView {
    pub fn left(&self) -> Option<&CountPair> {
        self.children[LEFT].as_ref()
    }

    pub fn right(&self) -> Option<&CountPair> {
        self.children[RIGHT].as_ref()
    }
}

#[derive(Debug, Clone)]
pub struct ContextTree {
    nodes: Vec<Node>,
    config: VariantConfig,
    history: u64,
    processed: u64,
    // c * k^-alpha for small k under the partial-visit schedule
    visit_rates: Vec<f64>,
}

const VISIT_RATE_CACHE: u64 = 1 << 12;

/// `ln(e^x / 2 + e^y / 2)` together with `e^x / (e^x + e^y)`.
#[inline]
fn log_half_mix_weighted(x: f64, y: f64) -> (f64, f64) {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    let e = (lo - hi).exp();
    let weight = if x >= y { 1.0 / (1.0 + e) } else { e / (1.0 + e) };
    (hi + e.ln_1p() - LN_2, weight)
}

#[cfg(test)]
fn log_half_mix(x: f64, y: f64) -> f64 {
    log_half_mix_weighted(x, y).0
}

impl ContextTree {
    /// Creates an empty tree. The configuration must already be valid.
    pub fn new(config: VariantConfig) -> Self {
        assert!(
            (1..=MAX_DEPTH).contains(&config.depth),
            "context depth {} out of range",
            config.depth
        );
        let visit_rates = match config.schedule {
            Schedule::PartialVisit { .. } => (0..VISIT_RATE_CACHE)
                .map(|k| config.schedule.rate(false, k, k, 0))
                .collect(),
            _ => Vec::new(),
        };
        ContextTree {
            nodes: vec![Node::EMPTY],
            config,
            history: 0,
            processed: 0,
            visit_rates,
        }
    }

    pub fn config(&self) -> &VariantConfig {
        &self.config
    }

    pub fn depth(&self) -> usize {
        self.config.depth
    }

    /// Number of bits processed so far.
    pub fn processed(&self) -> u64 {
        self.processed
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    fn context_bit(&self, level: usize) -> usize {
        ((self.history >> level) & 1) as usize
    }

    /// Probability that the next bit is a one. Does not modify the tree.
    ///
    /// Equal to the ratio of the root's weighted probability with and without
    /// a hypothetical trailing one, evaluated bottom-up as a running mixture
    /// of each node's KT prediction and its child's prediction.
    pub fn predict(&self) -> f64 {
        let depth = self.config.depth;
        let mut path = [0u32; MAX_DEPTH + 1];
        let mut len = 1;
        let mut idx = 0u32;
        while len <= depth {
            let child = self.nodes[idx as usize].children[self.context_bit(len - 1)];
            if child == NO_CHILD {
                break;
            }
            path[len] = child;
            idx = child;
            len += 1;
        }

        let mut p = 0.5;
        for level in (0..len).rev() {
            let node = &self.nodes[path[level] as usize];
            let kt = node.counts.p1();
            if level == depth {
                p = kt;
            } else {
                p = node.kt_weight * kt + (1.0 - node.kt_weight) * p;
            }
        }
        p
    }

    /// Probability of `bit` as the next bit.
    pub fn predict_bit(&self, bit: bool) -> f64 {
        let p1 = self.predict();
        if bit {
            p1
        } else {
            1.0 - p1
        }
    }

    /// Discount rate the configured schedule assigns to a node.
    pub fn schedule_rate(&self, node_depth: usize, leaf_visits: u64, node_visits: u64) -> f64 {
        self.config.schedule.rate(
            node_depth == self.config.depth,
            leaf_visits,
            node_visits,
            self.processed,
        )
    }

    /// Feeds one bit through the context path and updates every node on it.
    pub fn update(&mut self, bit: bool) {
        let depth = self.config.depth;
        let mut path = [0u32; MAX_DEPTH + 1];
        let mut idx = 0usize;
        for level in 0..depth {
            let branch = self.context_bit(level);
            let mut child = self.nodes[idx].children[branch];
            if child == NO_CHILD {
                child = u32::try_from(self.nodes.len()).expect("context tree exceeds 2^32 nodes");
                self.nodes.push(Node::EMPTY);
                self.nodes[idx].children[branch] = child;
            }
            path[level + 1] = child;
            idx = child as usize;
        }

        for &i in &path[..=depth] {
            self.nodes[i as usize].visits += 1;
        }
        let leaf_visits = self.nodes[path[depth] as usize].visits;
        let additive = matches!(self.config.schedule, Schedule::LeafVisit { .. });
        let per_node = matches!(self.config.schedule, Schedule::PartialVisit { .. });
        // every other schedule gives all internal nodes the same rate
        let internal_rate = self.schedule_rate(0, leaf_visits, 0);

        for level in (0..=depth).rev() {
            let i = path[level] as usize;
            let visits = self.nodes[i].visits;
            let gamma = if per_node {
                match self.visit_rates.get(visits as usize) {
                    Some(&rate) => rate,
                    None => self.schedule_rate(level, leaf_visits, visits),
                }
            } else if level == depth {
                self.schedule_rate(level, leaf_visits, visits)
            } else {
                internal_rate
            };
            if level == depth {
                let node = &mut self.nodes[i];
                node.counts.observe(bit, gamma);
                node.log_w = node.counts.log_kt;
                continue;
            }

            let [c0, c1] = self.nodes[i].children;
            let (child_log_w, sums) = {
                let view = |c: u32| (c != NO_CHILD).then(|| &self.nodes[c as usize]);
                let (n0, n1) = (view(c0), view(c1));
                let log_w = n0.map_or(0.0, |n| n.log_w) + n1.map_or(0.0, |n| n.log_w);
                let a = n0.map_or(0.0, |n| n.counts.a) + n1.map_or(0.0, |n| n.counts.a);
                let b = n0.map_or(0.0, |n| n.counts.b) + n1.map_or(0.0, |n| n.counts.b);
                (log_w, (a, b))
            };

            let node = &mut self.nodes[i];
            if additive {
                node.counts.log_kt += node.counts.predict(bit).ln();
                node.counts.a = sums.0;
                node.counts.b = sums.1;
            } else {
                node.counts.observe(bit, gamma);
            }
            (node.log_w, node.kt_weight) = log_half_mix_weighted(node.counts.log_kt, child_log_w);
        }

        self.history = ((self.history << 1) | u64::from(bit)) & ((1u64 << depth) - 1);
        self.processed += 1;
    }

    /// Natural log of the weighted probability at the root, i.e. the joint
    /// probability of everything processed so far.
    pub fn joint_logprob(&self) -> f64 {
        self.nodes[0].log_w
    }

    /// All materialized nodes in depth-first order, root first.
    pub fn nodes(&self) -> Vec<NodeView> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(0u32, 0usize, 0u64)];
        while let Some((idx, depth, context)) = stack.pop() {
            let node = &self.nodes[idx as usize];
            let child = |c: u32| (c != NO_CHILD).then(|| self.nodes[c as usize].counts);
            out.push(NodeView {
                depth,
                context,
                counts: node.counts,
                log_w: node.log_w,
                visits: node.visits,
                children: [child(node.children[0]), child(node.children[1])],
            });
            for branch in [1usize, 0] {
                let c = node.children[branch];
                if c != NO_CHILD {
                    stack.push((c, depth + 1, context | ((branch as u64) << depth)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::kt_block_logprob;
    use crate::variant::Preset;
    use proptest::prelude::*;

    fn tree(schedule: Schedule, depth: usize) -> ContextTree {
        ContextTree::new(VariantConfig { schedule, depth })
    }

    fn feed(t: &mut ContextTree, bits: &[bool]) {
        for &b in bits {
            t.update(b);
        }
    }

    /// Bits routed to the node with the given context, in order.
    fn routed(bits: &[bool], node_depth: usize, context: u64) -> Vec<bool> {
        (0..bits.len())
            .filter(|&t| {
                (0..node_depth).all(|j| {
                    let prev = t > j && bits[t - 1 - j];
                    u64::from(prev) == (context >> j) & 1
                })
            })
            .map(|t| bits[t])
            .collect()
    }

    /// Weighted probability over the full perfect tree, from routed
    /// subsequences and a fixed discount rate.
    fn perfect_tree_logprob(bits: &[bool], depth: usize, gamma: f64) -> f64 {
        fn rec(bits: &[bool], depth: usize, gamma: f64, level: usize, ctx: u64) -> f64 {
            let kt = kt_block_logprob(&routed(bits, level, ctx), gamma).unwrap();
            if level == depth {
                return kt;
            }
            let children = rec(bits, depth, gamma, level + 1, ctx)
                + rec(bits, depth, gamma, level + 1, ctx | (1 << level));
            log_half_mix(kt, children)
        }
        rec(bits, depth, gamma, 0, 0)
    }

    fn bits_of(s: &str) -> Vec<bool> {
        s.bytes().map(|c| c == b'1').collect()
    }

    #[test]
    fn empty_tree_predicts_half() {
        for depth in [1, 5, 28, 63] {
            let t = tree(Schedule::Ctw, depth);
            assert_eq!(t.predict(), 0.5);
            assert_eq!(t.joint_logprob(), 0.0);
        }
    }

    #[test]
    fn depth_one_example() {
        // 1/2 P_kt("10") + 1/2 P_kt("1") P_kt("0") = 1/16 + 1/8
        let mut t = tree(Schedule::Ctw, 1);
        feed(&mut t, &bits_of("10"));
        assert!((t.joint_logprob() - (3.0f64 / 16.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn counts_are_conserved_without_discount() {
        let mut t = tree(Schedule::Ctw, 6);
        let bits = bits_of("1101001110100010111010101");
        feed(&mut t, &bits);
        let root = &t.nodes()[0];
        assert_eq!(root.counts.total(), bits.len() as f64);
        for node in t.nodes() {
            assert_eq!(node.counts.total(), node.visits as f64);
        }
    }

    #[test]
    fn fixed_rate_zero_matches_ctw_exactly() {
        let bits = bits_of(&"0110111010010001110101".repeat(20));
        let mut a = tree(Schedule::Ctw, 10);
        let mut b = tree(Schedule::FixedRate { gamma: 0.0 }, 10);
        for &bit in &bits {
            assert_eq!(a.predict().to_bits(), b.predict().to_bits());
            a.update(bit);
            b.update(bit);
        }
        assert_eq!(a.nodes(), b.nodes());
    }

    #[test]
    fn node_views_report_context() {
        let mut t = tree(Schedule::Ctw, 2);
        feed(&mut t, &bits_of("1"));
        // first bit sees context 00
        let ctx: Vec<_> = t.nodes().iter().map(|n| (n.depth, n.context)).collect();
        assert_eq!(ctx, vec![(0, 0), (1, 0), (2, 0)]);
        assert!(t.nodes()[0].right().is_some());
        assert!(t.nodes()[0].left().is_none());
        t.update(false);
        // second bit sees context 01 (most recent = 1): left branch
        assert!(t.nodes()[0].left().is_some());
        assert_eq!(t.node_count(), 5);
    }

    #[test]
    fn matches_perfect_tree() {
        let bits = bits_of("0010111011000101101110011110000101");
        for depth in 1..=6 {
            for gamma in [0.0, 0.1] {
                let schedule = Schedule::FixedRate { gamma };
                let mut t = tree(schedule, depth);
                feed(&mut t, &bits);
                let expected = perfect_tree_logprob(&bits, depth, gamma);
                assert!((t.joint_logprob() - expected).abs() < 1e-10, "depth {depth}");
            }
        }
    }

    proptest! {
        #[test]
        fn chain_rule_and_normalization(
            bits in prop::collection::vec(any::<bool>(), 0..400),
            preset in prop::sample::select(Preset::ALL.to_vec()),
            depth in 1usize..12,
        ) {
            let mut t = ContextTree::new(preset.config(depth));
            let mut sum = 0.0;
            for &bit in &bits {
                let p1 = t.predict();
                prop_assert!(p1 > 0.0 && p1 < 1.0);
                prop_assert!((t.predict_bit(false) + t.predict_bit(true) - 1.0).abs() < 1e-9);
                sum += t.predict_bit(bit).ln();
                t.update(bit);
            }
            prop_assert!((t.joint_logprob() - sum).abs() < 1e-9);
        }

        #[test]
        fn mixture_dominates_half_kt(bits in prop::collection::vec(any::<bool>(), 0..300)) {
            let mut t = tree(Schedule::Ctw, 8);
            feed(&mut t, &bits);
            for node in t.nodes() {
                prop_assert!(node.log_w <= 1e-12);
                if node.depth < 8 {
                    prop_assert!(node.log_w >= node.counts.log_kt - LN_2 - 1e-12);
                } else {
                    prop_assert_eq!(node.log_w, node.counts.log_kt);
                }
            }
        }

        #[test]
        fn lazy_tree_matches_perfect_tree(
            bits in prop::collection::vec(any::<bool>(), 0..40),
            depth in 1usize..=8,
        ) {
            let mut t = tree(Schedule::Ctw, depth);
            feed(&mut t, &bits);
            prop_assert!((t.joint_logprob() - perfect_tree_logprob(&bits, depth, 0.0)).abs() < 1e-10);
        }

        #[test]
        fn leaf_visit_sums_children(bits in prop::collection::vec(any::<bool>(), 0..500), depth in 1usize..=8) {
            let mut t = ContextTree::new(Preset::Actw5.config(depth));
            for &bit in &bits {
                t.update(bit);
                for node in t.nodes().iter().filter(|n| n.depth < depth) {
                    let a: f64 = node.children.iter().flatten().map(|c| c.a).sum();
                    let b: f64 = node.children.iter().flatten().map(|c| c.b).sum();
                    prop_assert!((node.counts.a - a).abs() < 1e-9);
                    prop_assert!((node.counts.b - b).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn deterministic(bits in prop::collection::vec(any::<bool>(), 0..300)) {
            for preset in Preset::ALL {
                let mut a = ContextTree::new(preset.config(7));
                let mut b = ContextTree::new(preset.config(7));
                feed(&mut a, &bits);
                feed(&mut b, &bits);
                prop_assert_eq!(a.joint_logprob().to_bits(), b.joint_logprob().to_bits());
                prop_assert_eq!(a.nodes(), b.nodes());
            }
        }
    }
}
