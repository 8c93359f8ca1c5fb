//! ADE type detection for configurations of (-2)-classes.
//!
//! The input is the Gram matrix of a set of simple root classes. A valid
//! configuration has diagonal -2, off-diagonal entries 0 or 1, and a
//! negative definite Gram matrix; its intersection graph is then a disjoint
//! union of simply-laced Dynkin diagrams, classified here by arm lengths.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{linsys, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynkinError {
    #[error("root configuration is not negative definite (principal minor {minor} of the negated Gram matrix is {value})")]
    NotNegativeDefinite { minor: usize, value: Rational },
    #[error("not an ADE configuration: {0}")]
    NotAdeConfiguration(String),
}

/// One irreducible simply-laced component, e.g. `('A', 7)` or `('D', 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdeComponent {
    pub letter: char,
    pub rank: usize,
}

/// The Dynkin type of a root configuration: a multiset of ADE components.
///
/// Displays as `"A7"`, `"2D4"`, `"3A2"`, `"D4+2A1"`, or `"trivial"` for the
/// empty configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub struct AdeType {
    components: Vec<AdeComponent>,
}

impl AdeType {
    pub fn trivial() -> Self {
        AdeType {
            components: Vec::new(),
        }
    }

    pub fn components(&self) -> &[AdeComponent] {
        &self.components
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    /// Total number of simple roots across all components.
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "trivial");
        }
        let mut groups: Vec<(AdeComponent, usize)> = Vec::new();
        for c in &self.components {
            match groups.last_mut() {
                Some((prev, count)) if prev == c => *count += 1,
                _ => groups.push((*c, 1)),
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|(c, count)| {
                if *count == 1 {
                    format!("{}{}", c.letter, c.rank)
                } else {
                    format!("{}{}{}", count, c.letter, c.rank)
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl From<AdeType> for String {
    fn from(t: AdeType) -> String {
        t.to_string()
    }
}

/// Classifies the configuration with the given Gram matrix.
///
/// Check order: entry constraints (diagonal -2, off-diagonal 0/1), negative
/// definiteness via Sylvester minors of the negated Gram matrix, then graph
/// shape per connected component.
pub fn classify(gram: &[Vec<i64>]) -> Result<AdeType, DynkinError> {
    let n = gram.len();
    if n == 0 {
        return Ok(AdeType::trivial());
    }
    for (i, row) in gram.iter().enumerate() {
        if row.len() != n {
            return Err(DynkinError::NotAdeConfiguration(format!(
                "Gram matrix row {i} has length {} (expected {n})",
                row.len()
            )));
        }
        if row[i] != -2 {
            return Err(DynkinError::NotAdeConfiguration(format!(
                "root {} has self-intersection {} (expected -2)",
                i + 1,
                row[i]
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if i != j && v != 0 && v != 1 {
                return Err(DynkinError::NotAdeConfiguration(format!(
                    "roots {} and {} pair to {} (expected 0 or 1)",
                    i + 1,
                    j + 1,
                    v
                )));
            }
            if gram[j][i] != v {
                return Err(DynkinError::NotAdeConfiguration(
                    "Gram matrix is not symmetric".to_string(),
                ));
            }
        }
    }

    // Sylvester: the negated Gram matrix must have positive leading minors.
    let cartan: Vec<Vec<Rational>> = gram
        .iter()
        .map(|row| row.iter().map(|&v| Rational::from_int(-v)).collect())
        .collect();
    for k in 1..=n {
        let minor: Vec<Vec<Rational>> = cartan[..k].iter().map(|row| row[..k].to_vec()).collect();
        let det = linsys::determinant(&minor);
        if !det.is_positive() {
            return Err(DynkinError::NotNegativeDefinite {
                minor: k,
                value: det,
            });
        }
    }

    // Connected components of the intersection graph.
    let mut component_of = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component_of[start] = count;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if w != v && gram[v][w] == 1 && component_of[w] == usize::MAX {
                    component_of[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }

    let mut components = Vec::with_capacity(count);
    for comp in 0..count {
        let nodes: Vec<usize> = (0..n).filter(|&v| component_of[v] == comp).collect();
        components.push(classify_component(gram, &nodes)?);
    }
    // largest components first, E before D before A at equal rank
    components.sort_by(|a, b| {
        b.rank
            .cmp(&a.rank)
            .then_with(|| letter_order(b.letter).cmp(&letter_order(a.letter)))
    });
    Ok(AdeType { components })
}

fn letter_order(letter: char) -> u8 {
    match letter {
        'A' => 0,
        'D' => 1,
        _ => 2,
    }
}

fn classify_component(gram: &[Vec<i64>], nodes: &[usize]) -> Result<AdeComponent, DynkinError> {
    let size = nodes.len();
    let degree =
        |v: usize| -> usize { nodes.iter().filter(|&&w| w != v && gram[v][w] == 1).count() };
    let edges: usize = nodes.iter().map(|&v| degree(v)).sum::<usize>() / 2;
    if edges != size - 1 {
        return Err(DynkinError::NotAdeConfiguration(format!(
            "component with {size} roots and {edges} adjacencies is not a tree"
        )));
    }

    let branch_nodes: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
    match branch_nodes.len() {
        0 => Ok(AdeComponent {
            letter: 'A',
            rank: size,
        }),
        1 => {
            let center = branch_nodes[0];
            if degree(center) != 3 {
                return Err(DynkinError::NotAdeConfiguration(format!(
                    "branch node has degree {} (expected 3)",
                    degree(center)
                )));
            }
            let mut arms: Vec<usize> = nodes
                .iter()
                .filter(|&&v| v != center && gram[center][v] == 1)
                .map(|&first| arm_length(gram, nodes, center, first))
                .collect();
            arms.sort_unstable();
            debug_assert_eq!(arms.iter().sum::<usize>() + 1, size);
            match arms.as_slice() {
                [1, 1, _] => Ok(AdeComponent {
                    letter: 'D',
                    rank: size,
                }),
                [1, 2, 2] => Ok(AdeComponent {
                    letter: 'E',
                    rank: 6,
                }),
                [1, 2, 3] => Ok(AdeComponent {
                    letter: 'E',
                    rank: 7,
                }),
                [1, 2, 4] => Ok(AdeComponent {
                    letter: 'E',
                    rank: 8,
                }),
                _ => Err(DynkinError::NotAdeConfiguration(format!(
                    "branch arms {arms:?} do not form a Dynkin diagram"
                ))),
            }
        }
        _ => Err(DynkinError::NotAdeConfiguration(
            "more than one branch node in a component".to_string(),
        )),
    }
}

/// Walks an arm away from the branch node, returning its length in nodes.
fn arm_length(gram: &[Vec<i64>], nodes: &[usize], from: usize, first: usize) -> usize {
    let mut prev = from;
    let mut cur = first;
    let mut len = 1;
    loop {
        let next: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&w| w != cur && w != prev && gram[cur][w] == 1)
            .collect();
        match next.as_slice() {
            [] => return len,
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            // a second branch node on the arm; the caller's branch-node
            // count has already ruled this out
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram_of(rows: &[&[i64]]) -> Vec<Vec<i64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    fn chain(n: usize) -> Vec<Vec<i64>> {
        let mut g = vec![vec![0; n]; n];
        for i in 0..n {
            g[i][i] = -2;
            if i + 1 < n {
                g[i][i + 1] = 1;
                g[i + 1][i] = 1;
            }
        }
        g
    }

    /// Chain of n-1 nodes with one extra node attached to `fork` (0-based).
    fn forked_chain(n: usize, fork: usize) -> Vec<Vec<i64>> {
        let mut g = chain(n - 1);
        g.iter_mut().for_each(|row| row.push(0));
        g.push(vec![0; n]);
        g[n - 1][n - 1] = -2;
        g[n - 1][fork] = 1;
        g[fork][n - 1] = 1;
        g
    }

    #[test]
    fn chains_are_type_a() {
        assert_eq!(classify(&chain(1)).unwrap().to_string(), "A1");
        assert_eq!(classify(&chain(7)).unwrap().to_string(), "A7");
    }

    #[test]
    fn forks_classify_by_arm_lengths() {
        // fork one node in from the end: D_n
        assert_eq!(classify(&forked_chain(5, 2)).unwrap().to_string(), "D5");
        assert_eq!(classify(&forked_chain(8, 5)).unwrap().to_string(), "D8");
        // fork two nodes in: E7 and E8 (E6 is covered below)
        assert_eq!(classify(&forked_chain(7, 3)).unwrap().to_string(), "E7");
        assert_eq!(classify(&forked_chain(8, 4)).unwrap().to_string(), "E8");
        // arms (1, 3, 3) never form a Dynkin diagram
        assert!(matches!(
            classify(&forked_chain(8, 3)),
            Err(DynkinError::NotNegativeDefinite { .. })
                | Err(DynkinError::NotAdeConfiguration(_))
        ));
    }

    #[test]
    fn empty_configuration_is_trivial() {
        assert_eq!(classify(&[]).unwrap().to_string(), "trivial");
    }

    #[test]
    fn star_is_d4() {
        // center node 0, leaves 1..3
        let g = gram_of(&[
            &[-2, 1, 1, 1],
            &[1, -2, 0, 0],
            &[1, 0, -2, 0],
            &[1, 0, 0, -2],
        ]);
        assert_eq!(classify(&g).unwrap().to_string(), "D4");
    }

    #[test]
    fn disjoint_unions_group_and_sort() {
        // two A1's and one A2
        let g = gram_of(&[
            &[-2, 0, 0, 0],
            &[0, -2, 0, 0],
            &[0, 0, -2, 1],
            &[0, 0, 1, -2],
        ]);
        assert_eq!(classify(&g).unwrap().to_string(), "A2+2A1");
    }

    #[test]
    fn e_types_by_arm_lengths() {
        // E6: chain of 5 with a node hanging off the middle
        let mut g = chain(5);
        g.iter_mut().for_each(|row| row.push(0));
        g.push(vec![0; 6]);
        g[5][5] = -2;
        g[5][2] = 1;
        g[2][5] = 1;
        assert_eq!(classify(&g).unwrap().to_string(), "E6");
    }

    #[test]
    fn affine_cycle_is_rejected_as_not_negative_definite() {
        let g = gram_of(&[&[-2, 1, 1], &[1, -2, 1], &[1, 1, -2]]);
        assert!(matches!(
            classify(&g),
            Err(DynkinError::NotNegativeDefinite { .. })
        ));
    }

    #[test]
    fn bad_off_diagonal_is_rejected() {
        let g = gram_of(&[&[-2, 2], &[2, -2]]);
        assert!(matches!(
            classify(&g),
            Err(DynkinError::NotAdeConfiguration(_))
        ));
        let g = gram_of(&[&[-2, -1], &[-1, -2]]);
        assert!(matches!(
            classify(&g),
            Err(DynkinError::NotAdeConfiguration(_))
        ));
    }

    #[test]
    fn wrong_diagonal_is_rejected() {
        let g = gram_of(&[&[-1]]);
        assert!(matches!(
            classify(&g),
            Err(DynkinError::NotAdeConfiguration(_))
        ));
    }
}
