use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{Signed, Zero};

use super::shapley::shapley_from_table;
use super::DivisionError;
use crate::game::{check_player_count, PayoffVector};
use crate::rational::{exact_string, Rational};

/// A worth function over purchase arguments, with the declared arguments
/// partitioned among recommenders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentGame {
    arguments: Vec<String>,
    worth: Vec<Rational>,
    ownership: Vec<(String, Vec<usize>)>,
}

impl ArgumentGame {
    /// `worths` maps argument subsets to their worth; subsets not listed are
    /// worth 0. `ownership` lists each recommender's arguments; the union is
    /// the declared set.
    pub fn new(
        arguments: Vec<String>,
        worths: &BTreeMap<BTreeSet<String>, Rational>,
        ownership: Vec<(String, Vec<String>)>,
    ) -> Result<Self, DivisionError> {
        check_player_count(arguments.len())?;
        let mut seen = HashSet::new();
        for a in &arguments {
            if !seen.insert(a.as_str()) {
                return Err(DivisionError::DuplicateArgument(a.clone()));
            }
        }
        let index_of = |a: &str| {
            arguments.iter().position(|x| x == a).ok_or_else(|| DivisionError::UnknownArgument(a.to_string()))
        };

        let mut worth = vec![Rational::zero(); 1 << arguments.len()];
        for (set, value) in worths {
            let mask = set.iter().try_fold(0usize, |m, a| Ok::<_, DivisionError>(m | 1 << index_of(a)?))?;
            let label = format!("{{{}}}", set.iter().cloned().collect::<Vec<_>>().join(","));
            if value.is_negative() {
                return Err(DivisionError::InvalidArgumentWorth {
                    coalition: label,
                    value: exact_string(value),
                    reason: "worths must be non-negative",
                });
            }
            if mask == 0 && !value.is_zero() {
                return Err(DivisionError::InvalidArgumentWorth {
                    coalition: label,
                    value: exact_string(value),
                    reason: "the empty set is worth 0",
                });
            }
            worth[mask] = value.clone();
        }

        let mut owner_of: Vec<Option<&str>> = vec![None; arguments.len()];
        let mut owned = Vec::with_capacity(ownership.len());
        for (recommender, args) in &ownership {
            let mut idx = Vec::with_capacity(args.len());
            for a in args {
                let i = index_of(a)?;
                if owner_of[i].is_some() {
                    return Err(DivisionError::OverlappingOwnership(a.clone()));
                }
                owner_of[i] = Some(recommender);
                idx.push(i);
            }
            owned.push((recommender.clone(), idx));
        }
        Ok(ArgumentGame { arguments, worth, ownership: owned })
    }

    pub fn arguments(&self) -> &[String] {
        &self.arguments
    }

    pub fn ownership(&self) -> impl Iterator<Item = (&str, Vec<&str>)> {
        self.ownership.iter().map(|(r, idx)| (r.as_str(), idx.iter().map(|&i| self.arguments[i].as_str()).collect()))
    }

    fn declared_mask(&self) -> usize {
        self.ownership.iter().flat_map(|(_, idx)| idx).fold(0, |m, &i| m | 1 << i)
    }

    fn declared_indices(&self) -> Vec<usize> {
        let mask = self.declared_mask();
        (0..self.arguments.len()).filter(|&i| mask >> i & 1 == 1).collect()
    }

    /// Worth `v(A')` of the declared arguments.
    pub fn declared_worth(&self) -> &Rational {
        &self.worth[self.declared_mask()]
    }

    pub fn worth(&self, set: &[&str]) -> Result<&Rational, DivisionError> {
        let mut mask = 0usize;
        for a in set {
            let i = self
                .arguments
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| DivisionError::UnknownArgument(a.to_string()))?;
            mask |= 1 << i;
        }
        Ok(&self.worth[mask])
    }

    /// Same worths, different ownership. Models a recommender withholding
    /// some of its arguments.
    pub fn with_ownership(&self, ownership: Vec<(String, Vec<String>)>) -> Result<Self, DivisionError> {
        let worths: BTreeMap<BTreeSet<String>, Rational> = (0..self.worth.len())
            .filter(|&m| !self.worth[m].is_zero())
            .map(|m| {
                let set =
                    (0..self.arguments.len()).filter(|&i| m >> i & 1 == 1).map(|i| self.arguments[i].clone()).collect();
                (set, self.worth[m].clone())
            })
            .collect();
        ArgumentGame::new(self.arguments.clone(), &worths, ownership)
    }

    fn recommender_totals(&self, per_argument: &[(String, Rational)]) -> PayoffVector {
        let entries = self
            .ownership
            .iter()
            .map(|(r, idx)| {
                let total = idx
                    .iter()
                    .filter_map(|&i| per_argument.iter().find(|(a, _)| *a == self.arguments[i]))
                    .fold(Rational::zero(), |acc, (_, v)| acc + v);
                (r.clone(), total)
            })
            .collect();
        PayoffVector::new(entries)
    }

    /// Recommender payoffs when each is paid the plain Shapley values of its
    /// arguments in the declared game.
    pub fn plain_shapley_payoffs(&self) -> Result<PayoffVector, DivisionError> {
        Ok(self.recommender_totals(&shapley_arguments(self)?))
    }
}

/// Shapley value of each declared argument in the game restricted to the
/// declared set `A'`.
pub fn shapley_arguments(ag: &ArgumentGame) -> Result<Vec<(String, Rational)>, DivisionError> {
    let declared = ag.declared_indices();
    if declared.is_empty() {
        return Err(DivisionError::EmptyDeclaredSet);
    }
    let sub_table: Vec<Rational> = (0..1usize << declared.len())
        .map(|sub| {
            let full =
                declared.iter().enumerate().filter(|(j, _)| sub >> j & 1 == 1).fold(0usize, |m, (_, &i)| m | 1 << i);
            ag.worth[full].clone()
        })
        .collect();
    let phi = shapley_from_table(declared.len(), &sub_table);
    Ok(declared.iter().map(|&i| ag.arguments[i].clone()).zip(phi).collect())
}

/// Per-argument and per-recommender anonymity-proof Shapley payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnonymityProofShares {
    pub per_argument: Vec<(String, Rational)>,
    pub per_recommender: PayoffVector,
}

/// `psi_a = phi_a / sum_{a' in A'} phi_a' * v(A')` for each declared argument,
/// where `phi` is the Shapley value of the game over all arguments `A`.
///
/// When the declared Shapley values sum to zero, `psi` is zero if `v(A')` is
/// zero as well and an error otherwise.
pub fn anonymity_proof_shapley(ag: &ArgumentGame) -> Result<AnonymityProofShares, DivisionError> {
    let declared = ag.declared_indices();
    if declared.is_empty() {
        return Err(DivisionError::EmptyDeclaredSet);
    }
    let phi = shapley_from_table(ag.arguments.len(), &ag.worth);
    let denom = declared.iter().fold(Rational::zero(), |acc, &i| acc + &phi[i]);
    let target = ag.declared_worth();
    let per_argument: Vec<(String, Rational)> = if denom.is_zero() {
        if !target.is_zero() {
            return Err(DivisionError::DegenerateShapleyDenominator(exact_string(target)));
        }
        declared.iter().map(|&i| (ag.arguments[i].clone(), Rational::zero())).collect()
    } else {
        declared.iter().map(|&i| (ag.arguments[i].clone(), &phi[i] / &denom * target)).collect()
    };
    let per_recommender = ag.recommender_totals(&per_argument);
    Ok(AnonymityProofShares { per_argument, per_recommender })
}
