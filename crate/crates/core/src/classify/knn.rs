//! k-nearest-neighbour voting.

use crate::linalg::squared_distance;

/// Majority label among the `k` nearest training samples (Euclidean).
///
/// Equal distances rank the lower sample index first; equal vote counts go
/// to the smallest label. `k` is clamped to the training size.
pub fn knn_predict(train: &[Vec<f64>], labels: &[usize], u: &[f64], k: usize) -> usize {
    assert!(k >= 1 && !train.is_empty(), "k-NN needs k ≥ 1 and training data");
    let mut order: Vec<(f64, usize)> = train.iter().enumerate().map(|(i, t)| (squared_distance(t, u), i)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut votes: Vec<(usize, usize)> = Vec::new();
    for &(_, i) in order.iter().take(k) {
        match votes.iter_mut().find(|(l, _)| *l == labels[i]) {
            Some(v) => v.1 += 1,
            None => votes.push((labels[i], 1)),
        }
    }
    votes
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(l, _)| l)
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_match_with_k_one() {
        let train = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 0.0]];
        assert_eq!(knn_predict(&train, &[4, 5, 6], &[1.0, 1.0], 1), 5);
    }

    #[test]
    fn all_samples_give_global_majority() {
        let train: Vec<Vec<f64>> = (0..7).map(|i| vec![i as f64]).collect();
        let labels = [2, 2, 9, 9, 9, 2, 9];
        assert_eq!(knn_predict(&train, &labels, &[0.0], 7), 9);
    }

    #[test]
    fn vote_tie_goes_to_smaller_label() {
        let train = vec![vec![-1.0], vec![1.0]];
        assert_eq!(knn_predict(&train, &[3, 1], &[0.0], 2), 1);
    }

    #[test]
    fn distance_tie_goes_to_lower_index() {
        let train = vec![vec![-1.0], vec![1.0]];
        assert_eq!(knn_predict(&train, &[3, 1], &[0.0], 1), 3);
    }
}
