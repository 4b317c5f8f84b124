//! Helpers shared across the integration test binaries.

use seqlearn::network::ObservationNetwork;

/// Total weight of all directed paths between two agents, by exhaustive
/// recursion; feasible for tiny networks only.
pub fn brute_force_path_weight(net: &ObservationNetwork, from: usize, to: usize) -> f64 {
    if from == to {
        return 1.0;
    }
    let mut total = 0.0;
    for k in to..from {
        let w = net.weight(from, k);
        if w != 0.0 {
            total += w * brute_force_path_weight(net, k, to);
        }
    }
    total
}
