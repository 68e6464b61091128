//! Enumeration of all expansions of a value to a fixed depth.
//!
//! A digit `k` can start an expansion of `y` exactly when the image
//! `β_k·y − k` stays inside the domain `[0, U]`; the remaining digits then
//! expand that image. [`ExpansionTree`] materializes this recursion as a
//! prefix tree whose depth-`d` leaves are precisely the length-`d` prefixes
//! of expansions of the root value, listed in ascending lexicographic order.
//!
//! [`is_unique_expansion`] answers the same question without building the
//! tree, by comparing the two extreme expansions (greedy and lazy): they
//! differ somewhere iff the value has more than one expansion, and the first
//! branching state witnesses it.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bases::BaseTuple;
use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::transforms::{Policy, Transform};
use crate::words::Word;

/// Default cap on the number of tree nodes ([`enumerate_expansions`]).
pub const DEFAULT_NODE_BUDGET: usize = 1 << 20;

/// The digits that can start an expansion of `y`: those whose branch image
/// stays inside `[0, U]`. In float mode a tie within tolerance at either
/// (closed) domain endpoint counts as inside.
pub fn admissible_digits(tuple: &BaseTuple, y: &Scalar) -> Result<Vec<u8>> {
    tuple.require_admissible()?;
    let upper = tuple.upper_bound();
    let mut digits = Vec::new();
    for k in 0..=tuple.m() {
        let image = tuple.apply(k, y)?;
        if image.sign().permits_ge() && image.compare(&upper)?.permits_le() {
            digits.push(k as u8);
        }
    }
    Ok(digits)
}

/// One node of an expansion tree: the digit taken to reach it and the value
/// still to be expanded.
#[derive(Clone, Debug, Serialize)]
pub struct TreeNode {
    /// `None` at the root.
    pub digit: Option<u8>,
    pub state: Scalar,
    pub children: Vec<TreeNode>,
}

/// All expansions of a value to a fixed depth, as a prefix tree.
#[derive(Clone, Debug)]
pub struct ExpansionTree {
    pub x: Scalar,
    pub depth: usize,
    pub root: TreeNode,
    /// Depth-length digit words, in ascending lexicographic order.
    pub leaves: Vec<Word>,
    /// Total number of tree nodes, including the root.
    pub nodes: usize,
}

impl ExpansionTree {
    pub fn count(&self) -> usize {
        self.leaves.len()
    }
}

impl Serialize for ExpansionTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExpansionTree", 4)?;
        s.serialize_field("x", &self.x)?;
        s.serialize_field("depth", &self.depth)?;
        s.serialize_field("count", &self.count())?;
        s.serialize_field("leaves", &self.leaves)?;
        s.end()
    }
}

/// Enumerates every expansion of `x` to `depth` digits with the default
/// node budget.
pub fn enumerate_expansions(tuple: &BaseTuple, x: &Scalar, depth: usize) -> Result<ExpansionTree> {
    enumerate_expansions_with_budget(tuple, x, depth, DEFAULT_NODE_BUDGET)
}

/// Enumerates every expansion of `x` to `depth` digits, failing once the
/// tree would exceed `budget` nodes.
pub fn enumerate_expansions_with_budget(
    tuple: &BaseTuple,
    x: &Scalar,
    depth: usize,
    budget: usize,
) -> Result<ExpansionTree> {
    tuple.require_admissible()?;
    let upper = tuple.upper_bound();
    if !(x.sign().permits_ge() && x.compare(&upper)?.permits_le()) {
        return Err(Error::OutOfDomain {
            value: x.to_string(),
            upper: upper.to_string(),
        });
    }
    let mut nodes = 1usize; // the root
    let mut leaves = Vec::new();
    let mut prefix: Vec<u8> = Vec::with_capacity(depth);
    let mut root = TreeNode {
        digit: None,
        state: x.clone(),
        children: Vec::new(),
    };
    grow(
        tuple, &mut root, depth, budget, &mut nodes, &mut prefix, &mut leaves,
    )?;
    Ok(ExpansionTree {
        x: x.clone(),
        depth,
        root,
        leaves,
        nodes,
    })
}

fn grow(
    tuple: &BaseTuple,
    node: &mut TreeNode,
    depth_left: usize,
    budget: usize,
    nodes: &mut usize,
    prefix: &mut Vec<u8>,
    leaves: &mut Vec<Word>,
) -> Result<()> {
    if depth_left == 0 {
        leaves.push(Word::new(prefix.clone(), tuple.m() as u8)?);
        return Ok(());
    }
    // Ascending digit order keeps the leaf list lexicographically sorted.
    for digit in admissible_digits(tuple, &node.state)? {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::NodeBudgetExceeded { budget });
        }
        let mut child = TreeNode {
            digit: Some(digit),
            state: tuple.apply(digit as usize, &node.state)?,
            children: Vec::new(),
        };
        prefix.push(digit);
        grow(tuple, &mut child, depth_left - 1, budget, nodes, prefix, leaves)?;
        prefix.pop();
        node.children.push(child);
    }
    Ok(())
}

/// Whether a value has exactly one expansion, decided to a working depth.
#[derive(Clone, Debug, PartialEq)]
pub enum Uniqueness {
    Unique,
    /// The orbit of the value reaches, after `branch_step` digits shared by
    /// all of its expansions, a state admitting two different digits.
    NotUnique {
        branch_step: usize,
        branch_state: Scalar,
    },
    /// The extreme expansions agree on every digit known within `depth`;
    /// deeper work could still separate them.
    UndecidedAtDepth { depth: usize },
}

/// Compares the greedy and lazy expansions of `x` to `depth` digits: they
/// agree in full iff `x` has a single expansion. On disagreement the first
/// branching state along the shared orbit is reported.
pub fn is_unique_expansion(tuple: &BaseTuple, x: &Scalar, depth: usize) -> Result<Uniqueness> {
    tuple.require_admissible()?;
    let greedy = Transform::canonical(tuple, Policy::Greedy)?.expand(x, depth)?;
    let lazy = Transform::canonical(tuple, Policy::Lazy)?.expand(x, depth)?;
    if greedy.is_exact_cycle()
        && lazy.is_exact_cycle()
        && greedy.as_periodic() == lazy.as_periodic()
    {
        return Ok(Uniqueness::Unique);
    }
    let known = depth
        .min(greedy.known_digits())
        .min(lazy.known_digits());
    let difference = (0..known).find(|&i| greedy.digit_at(i) != lazy.digit_at(i));
    let Some(at) = difference else {
        // Exact full agreement was handled above; all we know here is that
        // no examined digit separates them.
        return Ok(Uniqueness::UndecidedAtDepth { depth });
    };
    // Both extremes follow the same orbit until the first differing digit,
    // so the branching state is reachable by replaying either prefix.
    let mut state = x.clone();
    for step in 0..=at {
        let digits = admissible_digits(tuple, &state)?;
        if digits.len() >= 2 {
            return Ok(Uniqueness::NotUnique {
                branch_step: step,
                branch_state: state,
            });
        }
        state = tuple.apply(digits[0] as usize, &state)?;
    }
    unreachable!("expansions that differ at digit {at} must branch by then");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Mode;

    fn tuple(text: &str) -> BaseTuple {
        BaseTuple::parse_list(text, &Mode::Exact).unwrap()
    }

    fn exact(text: &str) -> Scalar {
        Scalar::parse(text, &Mode::Exact).unwrap()
    }

    fn leaf_strings(tree: &ExpansionTree) -> Vec<String> {
        tree.leaves.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn binary_half_has_two_expansions_to_depth_three() {
        let tree = enumerate_expansions(&tuple("2,2"), &exact("1/2"), 3).unwrap();
        assert_eq!(leaf_strings(&tree), ["011", "100"]);
        assert_eq!(tree.count(), 2);
        // Root + 011-chain (3) + 100-chain (3).
        assert_eq!(tree.nodes, 7);
    }

    #[test]
    fn dyadic_free_points_expand_uniquely() {
        let tree = enumerate_expansions(&tuple("2,2"), &exact("1/3"), 4).unwrap();
        assert_eq!(leaf_strings(&tree), ["0101"]);
        let tree = enumerate_expansions(&tuple("2,2"), &exact("0"), 3).unwrap();
        assert_eq!(leaf_strings(&tree), ["000"]);
    }

    #[test]
    fn mixed_pair_enumeration_counts_grow() {
        // On (2, 3/2) the value 1 admits expansions starting both 0 and 1.
        let bt = tuple("2,3/2");
        let tree = enumerate_expansions(&bt, &exact("1"), 1).unwrap();
        assert_eq!(leaf_strings(&tree), ["0", "1"]);
        let deeper = enumerate_expansions(&bt, &exact("1"), 6).unwrap();
        assert!(deeper.count() >= 4, "count {}", deeper.count());
        // Leaves arrive sorted.
        let mut sorted = deeper.leaves.clone();
        sorted.sort_by(|a, b| a.digits().cmp(b.digits()));
        assert_eq!(deeper.leaves, sorted);
    }

    #[test]
    fn admissible_digit_sets() {
        let bt = tuple("2,2");
        assert_eq!(admissible_digits(&bt, &exact("1/4")).unwrap(), [0]);
        assert_eq!(admissible_digits(&bt, &exact("1/2")).unwrap(), [0, 1]);
        assert_eq!(admissible_digits(&bt, &exact("1")).unwrap(), [1]);
        assert_eq!(admissible_digits(&bt, &exact("0")).unwrap(), [0]);
    }

    #[test]
    fn node_budget_is_enforced() {
        let err =
            enumerate_expansions_with_budget(&tuple("2,3/2"), &exact("1"), 12, 10).unwrap_err();
        assert_eq!(err, Error::NodeBudgetExceeded { budget: 10 });
    }

    #[test]
    fn out_of_domain_roots_are_rejected() {
        assert!(matches!(
            enumerate_expansions(&tuple("2,2"), &exact("9/8"), 2),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn uniqueness_of_extreme_and_interior_points() {
        let bt = tuple("2,2");
        assert_eq!(
            is_unique_expansion(&bt, &exact("1/3"), 64).unwrap(),
            Uniqueness::Unique
        );
        match is_unique_expansion(&bt, &exact("1/2"), 64).unwrap() {
            Uniqueness::NotUnique {
                branch_step,
                branch_state,
            } => {
                assert_eq!(branch_step, 0);
                assert_eq!(branch_state.to_string(), "1/2");
            }
            other => panic!("expected a branch, got {other:?}"),
        }
        // 3/4 = 0.11₂ branches one step in (after the leading 1).
        match is_unique_expansion(&bt, &exact("3/4"), 64).unwrap() {
            Uniqueness::NotUnique {
                branch_step,
                branch_state,
            } => {
                assert_eq!(branch_step, 1);
                assert_eq!(branch_state.to_string(), "1/2");
            }
            other => panic!("expected a branch, got {other:?}"),
        }
    }

    #[test]
    fn uniqueness_matches_tree_width() {
        let bt = tuple("2,3/2");
        for text in ["0", "1/5", "1", "3/2", "2"] {
            let x = exact(text);
            let unique = matches!(
                is_unique_expansion(&bt, &x, 64).unwrap(),
                Uniqueness::Unique
            );
            let tree = enumerate_expansions(&bt, &x, 7).unwrap();
            if unique {
                assert_eq!(tree.count(), 1, "x = {text}");
            }
            // A tree already wider than one leaf disproves uniqueness.
            if tree.count() > 1 {
                assert!(!unique, "x = {text}");
            }
        }
    }

    #[test]
    fn shallow_depth_leaves_uniqueness_undecided() {
        // At depth 1 the greedy and lazy expansions of 1/3 both truncate to
        // the single digit 0, deciding nothing.
        let bt = tuple("2,2");
        assert_eq!(
            is_unique_expansion(&bt, &exact("1/3"), 1).unwrap(),
            Uniqueness::UndecidedAtDepth { depth: 1 }
        );
    }

    #[test]
    fn tree_serialization_shape() {
        let tree = enumerate_expansions(&tuple("2,2"), &exact("1/2"), 3).unwrap();
        assert_eq!(
            serde_json::to_string(&tree).unwrap(),
            r#"{"x":"1/2","depth":3,"count":2,"leaves":["011","100"]}"#
        );
    }
}
