use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{validate_nondegenerate, ModelKind, NonDegeneracyParams, RbmModel};
use crate::error::{Error, Result};

/// Draws a random (α, β)-non-degenerate model of the requested kind whose two-hop
/// degree is at most `d2_target`.
///
/// Each hidden node couples to a random group of 2 to `d2_target + 1` visible nodes,
/// chosen so that no visible node's two-hop set outgrows `d2_target` and no node's
/// total strength can exceed β. Magnitudes are uniform between α and the largest value
/// the strength budget allows; fields take a random share of the leftover budget.
/// The result depends only on the arguments.
pub fn generate_model(
    kind: ModelKind,
    n: usize,
    m: usize,
    d2_target: usize,
    params: &NonDegeneracyParams,
    seed: u64,
) -> Result<RbmModel> {
    if n == 0 {
        return Err(Error::Infeasible("at least one visible node is required".into()));
    }
    if d2_target >= n {
        return Err(Error::Infeasible(format!(
            "two-hop degree {d2_target} impossible with {n} visible nodes"
        )));
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    // Largest number of nonzero entries per row or column that still fits under beta.
    let max_incident = (beta / alpha).floor() as usize;
    let group_cap = n.min(d2_target + 1).min(max_incident);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut two_hop: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut hidden_degree = vec![0usize; n];
    let mut groups: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut order: Vec<usize> = (0..n).collect();

    for _ in 0..m {
        if group_cap < 2 {
            groups.push(Vec::new());
            continue;
        }
        let target = rng.random_range(2..=group_cap);
        order.shuffle(&mut rng);
        let mut group: Vec<usize> = Vec::with_capacity(target);
        for &c in &order {
            if group.len() == target {
                break;
            }
            if hidden_degree[c] >= max_incident {
                continue;
            }
            let grown = two_hop[c].iter().chain(&group).collect::<BTreeSet<_>>().len();
            let fits = grown <= d2_target
                && group.iter().all(|&g| {
                    let mut after: BTreeSet<usize> = two_hop[g].clone();
                    after.extend(group.iter().copied().filter(|&h| h != g));
                    after.insert(c);
                    after.len() <= d2_target
                });
            if fits {
                group.push(c);
            }
        }
        if group.len() < 2 {
            group.clear();
        }
        for &a in &group {
            hidden_degree[a] += 1;
            for &b in &group {
                if a != b {
                    two_hop[a].insert(b);
                }
            }
        }
        group.sort_unstable();
        groups.push(group);
    }

    let mut weights = vec![0.0; n * m];
    for (j, group) in groups.iter().enumerate() {
        let column_sign = random_sign(kind, &mut rng);
        for &i in group {
            let budget = (beta / hidden_degree[i] as f64).min(beta / group.len() as f64);
            let hi = (budget * (1.0 - 1e-12)).max(alpha);
            let magnitude = alpha + (hi - alpha) * rng.random::<f64>();
            let sign = match kind {
                ModelKind::General => random_sign(kind, &mut rng),
                _ => column_sign,
            };
            weights[i * m + j] = sign * magnitude;
        }
    }

    let mut visible_field = vec![0.0; n];
    for (i, field) in visible_field.iter_mut().enumerate() {
        let used: f64 = weights[i * m..(i + 1) * m].iter().map(|w| w.abs()).sum();
        let slack = (beta - used).max(0.0);
        *field = random_sign(kind, &mut rng) * 0.5 * slack * rng.random::<f64>();
    }
    let mut hidden_field = vec![0.0; m];
    for (j, field) in hidden_field.iter_mut().enumerate() {
        let used: f64 = (0..n).map(|i| weights[i * m + j].abs()).sum();
        let slack = (beta - used).max(0.0);
        *field = random_sign(kind, &mut rng) * 0.5 * slack * rng.random::<f64>();
    }

    let model = RbmModel::new(n, m, weights, visible_field, hidden_field)?;
    let report = validate_nondegenerate(&model, params);
    if !report.ok || !model.satisfies(kind) {
        return Err(Error::Infeasible(format!(
            "generated model violates its contract: {:?}",
            report.violations
        )));
    }
    Ok(model)
}

fn random_sign(kind: ModelKind, rng: &mut impl Rng) -> f64 {
    match kind {
        ModelKind::Ferromagnetic => 1.0,
        _ => {
            if rng.random::<bool>() {
                1.0
            } else {
                -1.0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::two_hop_graph;

    fn params() -> NonDegeneracyParams {
        NonDegeneracyParams::new(0.4, 2.0).unwrap()
    }

    #[test]
    fn ferromagnetic_models_are_nonnegative() {
        for seed in 0..20 {
            let model = generate_model(ModelKind::Ferromagnetic, 10, 5, 4, &params(), seed).unwrap();
            assert!(model.is_ferromagnetic());
            assert!(validate_nondegenerate(&model, &params()).ok);
            assert!(two_hop_graph(&model).max_degree() <= 4);
        }
    }

    #[test]
    fn locally_consistent_columns_are_single_signed() {
        for seed in 0..20 {
            let model = generate_model(ModelKind::LocallyConsistent, 8, 2, 3, &params(), seed).unwrap();
            assert!(model.is_locally_consistent());
            assert!(validate_nondegenerate(&model, &params()).ok);
            assert!(two_hop_graph(&model).max_degree() <= 3);
        }
    }

    #[test]
    fn same_seed_same_model() {
        let a = generate_model(ModelKind::LocallyConsistent, 12, 6, 4, &params(), 99).unwrap();
        let b = generate_model(ModelKind::LocallyConsistent, 12, 6, 4, &params(), 99).unwrap();
        let c = generate_model(ModelKind::LocallyConsistent, 12, 6, 4, &params(), 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn tight_budget_still_validates() {
        // beta / alpha is an integer, so the strength budget can be hit exactly.
        let tight = NonDegeneracyParams::new(0.5, 1.0).unwrap();
        for seed in 0..50 {
            let model = generate_model(ModelKind::Ferromagnetic, 6, 6, 3, &tight, seed).unwrap();
            assert!(validate_nondegenerate(&model, &tight).ok);
        }
    }

    #[test]
    fn infeasible_requests() {
        assert!(generate_model(ModelKind::Ferromagnetic, 4, 2, 4, &params(), 0).is_err());
        assert!(generate_model(ModelKind::Ferromagnetic, 0, 2, 0, &params(), 0).is_err());
    }

    #[test]
    fn zero_degree_target_gives_no_edges() {
        let model = generate_model(ModelKind::Ferromagnetic, 5, 3, 0, &params(), 1).unwrap();
        assert_eq!(two_hop_graph(&model).edge_count(), 0);
    }
}
