#pragma once

// Pure-state bipartite entanglement transformations driven by Schmidt
// coefficients: deterministic feasibility, optimal conversion probability,
// single-shot entanglement cost, and fidelity bounds. The same operations
// apply verbatim to squared amplitudes under strictly incoherent operations.

#include <optional>

#include <lorenz/core.hpp>

namespace lorenz::entangle {

// Squared Schmidt coefficients of a bipartite pure state; normalized,
// order irrelevant (operations sort internally).
struct schmidt_vector {
  core::weights coefficients;
};

void check_schmidt(const schmidt_vector& v);

// Deterministic LOCC convertibility: the target coefficients majorize the
// source coefficients (sorted partial sums dominate).
bool locc_possible(const schmidt_vector& source, const schmidt_vector& target);

// Largest conversion probability: min over k of the ratio of sorted tail
// sums source/target.
double vidal_probability(const schmidt_vector& source,
                         const schmidt_vector& target);

// Least battery ratio z making the catalyzed conversion possible; the
// entanglement gain of the transformation is -ln of this value.
double entanglement_cost(const schmidt_vector& source,
                         const schmidt_vector& target);

// Fidelity bounds for approximate conversion at battery ratio z. Gated
// entries are absent when their precondition fails: entropy_bound needs
// deterministic convertibility, cost_bound needs z within the cost.
struct fidelity_report {
  double shift_bound;
  std::optional<double> entropy_bound;
  std::optional<double> cost_bound;
  double bhattacharyya;
};

fidelity_report fidelity_bounds(const schmidt_vector& source,
                                const schmidt_vector& target, double z);

}  // namespace lorenz::entangle
