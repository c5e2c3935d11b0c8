//! Tabular models over features with values `0..domain`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, parse_rat, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum TreeNode {
    Leaf(Rat),
    /// `feature` is 1-based; one child per feature value.
    Split { feature: usize, children: Vec<usize> },
}

/// Decision tree (or DAG) stored as an arena rooted at `root`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecisionTree {
    pub n_features: usize,
    pub domain: usize,
    pub nodes: Vec<TreeNode>,
    pub root: usize,
}

impl DecisionTree {
    pub fn new(n_features: usize, domain: usize, nodes: Vec<TreeNode>, root: usize) -> Result<Self> {
        let t = DecisionTree { n_features, domain, nodes, root };
        t.validate()?;
        Ok(t)
    }

    pub fn constant(n_features: usize, domain: usize, c: Rat) -> Self {
        DecisionTree { n_features, domain, nodes: vec![TreeNode::Leaf(c)], root: 0 }
    }

    fn validate(&self) -> Result<()> {
        if self.domain < 1 || self.root >= self.nodes.len() {
            return Err(Error::InvalidModel("empty tree".into()));
        }
        let mut on_path = vec![false; self.n_features];
        let mut visiting = vec![false; self.nodes.len()];
        self.check(self.root, &mut on_path, &mut visiting)
    }

    fn check(&self, v: usize, on_path: &mut [bool], visiting: &mut [bool]) -> Result<()> {
        if visiting[v] {
            return Err(Error::InvalidModel("tree has a cycle".into()));
        }
        match &self.nodes[v] {
            TreeNode::Leaf(_) => Ok(()),
            TreeNode::Split { feature, children } => {
                let f = *feature;
                if f == 0 || f > self.n_features {
                    return Err(Error::InvalidModel(format!("feature {f} out of range")));
                }
                if children.len() != self.domain {
                    return Err(Error::InvalidModel(format!("node {v} needs {} children", self.domain)));
                }
                if on_path[f - 1] {
                    return Err(Error::InvalidModel(format!("feature {f} repeats on a path")));
                }
                on_path[f - 1] = true;
                visiting[v] = true;
                for &c in children {
                    if c >= self.nodes.len() {
                        return Err(Error::InvalidModel(format!("child {c} out of range")));
                    }
                    self.check(c, on_path, visiting)?;
                }
                visiting[v] = false;
                on_path[f - 1] = false;
                Ok(())
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, TreeNode::Leaf(_))).count()
    }

    /// Recursive JSON form: `{"feature": f, "children": [...]}` or `{"leaf": "p/q"}`.
    pub fn to_json_value(&self) -> Value {
        fn rec(t: &DecisionTree, v: usize) -> Value {
            match &t.nodes[v] {
                TreeNode::Leaf(c) => serde_json::json!({ "leaf": fmt_rat(c) }),
                TreeNode::Split { feature, children } => serde_json::json!({
                    "feature": feature,
                    "children": children.iter().map(|&c| rec(t, c)).collect::<Vec<_>>(),
                }),
            }
        }
        serde_json::json!({
            "features": self.n_features,
            "domain": self.domain,
            "node": rec(self, self.root),
        })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        fn rec(v: &Value, nodes: &mut Vec<TreeNode>) -> Result<usize> {
            if let Some(leaf) = v.get("leaf") {
                let c = match leaf {
                    Value::String(s) => parse_rat(s)?,
                    Value::Number(n) => parse_rat(&n.to_string())?,
                    _ => return Err(Error::Parse("leaf must be a rational".into())),
                };
                nodes.push(TreeNode::Leaf(c));
                return Ok(nodes.len() - 1);
            }
            let feature = v
                .get("feature")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("node needs `feature` or `leaf`".into()))? as usize;
            let kids = v
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("split needs `children`".into()))?;
            let me = nodes.len();
            nodes.push(TreeNode::Leaf(Rat::from_integer(0.into())));
            let children = kids.iter().map(|k| rec(k, nodes)).collect::<Result<Vec<_>>>()?;
            nodes[me] = TreeNode::Split { feature, children };
            Ok(me)
        }
        let n_features = v.get("features").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing `features`".into()))? as usize;
        let domain = v.get("domain").and_then(Value::as_u64).unwrap_or(2) as usize;
        let mut nodes = Vec::new();
        let root = rec(v.get("node").ok_or_else(|| Error::Parse("missing `node`".into()))?, &mut nodes)?;
        DecisionTree::new(n_features, domain, nodes, root)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleMode {
    Regression,
    /// Binary classes {0,1}: output `step(Σ wⱼ·(2cⱼ − 1))` with step(0) = 1.
    Vote,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeEnsemble {
    pub trees: Vec<DecisionTree>,
    pub weights: Vec<Rat>,
    pub mode: EnsembleMode,
}

impl TreeEnsemble {
    pub fn new(trees: Vec<DecisionTree>, weights: Vec<Rat>, mode: EnsembleMode) -> Result<Self> {
        if trees.is_empty() || trees.len() != weights.len() {
            return Err(Error::InvalidModel("ensemble needs one weight per tree".into()));
        }
        let (n, k) = (trees[0].n_features, trees[0].domain);
        if trees.iter().any(|t| t.n_features != n || t.domain != k) {
            return Err(Error::InvalidModel("ensemble trees disagree on features".into()));
        }
        Ok(TreeEnsemble { trees, weights, mode })
    }

    pub fn n_features(&self) -> usize {
        self.trees[0].n_features
    }

    pub fn domain(&self) -> usize {
        self.trees[0].domain
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "mode": self.mode,
            "weights": self.weights.iter().map(fmt_rat).collect::<Vec<_>>(),
            "trees": self.trees.iter().map(DecisionTree::to_json_value).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let mode: EnsembleMode = serde_json::from_value(v.get("mode").cloned().unwrap_or(Value::String("regression".into())))?;
        let trees = v
            .get("trees")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing `trees`".into()))?
            .iter()
            .map(DecisionTree::from_json_value)
            .collect::<Result<Vec<_>>>()?;
        let weights: Vec<String> = serde_json::from_value(v.get("weights").cloned().ok_or_else(|| Error::Parse("missing `weights`".into()))?)?;
        let weights = weights.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
        TreeEnsemble::new(trees, weights, mode)
    }
}

/// `f(x) = Σᵢ w[i][xᵢ] + b`; domains are padded to a common size.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<Vec<Rat>>,
    pub intercept: Rat,
}

impl LinearModel {
    pub fn new(weights: Vec<Vec<Rat>>, intercept: Rat) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidModel("linear model needs features".into()));
        }
        let k = weights.iter().map(Vec::len).max().unwrap_or(0);
        if k == 0 {
            return Err(Error::InvalidModel("empty feature domain".into()));
        }
        let zero = Rat::from_integer(0.into());
        let weights = weights
            .into_iter()
            .map(|mut r| {
                r.resize(k, zero.clone());
                r
            })
            .collect();
        Ok(LinearModel { weights, intercept })
    }

    pub fn n_features(&self) -> usize {
        self.weights.len()
    }

    pub fn domain(&self) -> usize {
        self.weights[0].len()
    }

    /// `{"weights": {"i,d": rat}, "intercept": rat}` with 1-based `i`, 0-based `d`.
    pub fn to_json_value(&self) -> Value {
        let mut w = serde_json::Map::new();
        for (i, row) in self.weights.iter().enumerate() {
            for (d, v) in row.iter().enumerate() {
                w.insert(format!("{},{}", i + 1, d), Value::String(fmt_rat(v)));
            }
        }
        serde_json::json!({ "weights": w, "intercept": fmt_rat(&self.intercept) })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let map = v.get("weights").and_then(Value::as_object).ok_or_else(|| Error::Parse("missing `weights`".into()))?;
        let mut entries = Vec::new();
        for (key, val) in map {
            let (i, d) = key.split_once(',').ok_or_else(|| Error::Parse(format!("bad weight key {key:?}")))?;
            let i: usize = i.trim().parse().map_err(|_| Error::Parse(format!("bad weight key {key:?}")))?;
            let d: usize = d.trim().parse().map_err(|_| Error::Parse(format!("bad weight key {key:?}")))?;
            if i == 0 {
                return Err(Error::Parse("features are 1-based".into()));
            }
            let r = match val {
                Value::String(s) => parse_rat(s)?,
                other => parse_rat(&other.to_string())?,
            };
            entries.push((i - 1, d, r));
        }
        let n = entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let k = entries.iter().map(|e| e.1 + 1).max().unwrap_or(0);
        let zero = Rat::from_integer(0.into());
        let mut weights = vec![vec![zero.clone(); k]; n];
        for (i, d, r) in entries {
            weights[i][d] = r;
        }
        let intercept = match v.get("intercept") {
            Some(Value::String(s)) => parse_rat(s)?,
            Some(other) => parse_rat(&other.to_string())?,
            None => zero,
        };
        LinearModel::new(weights, intercept)
    }
}
