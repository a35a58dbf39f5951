#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "macwt/common.hpp"
#include "macwt/wiretap_code.hpp"

namespace macwt {

// L1 distance; equals the event-supremum form 2 sup|P(A)-Q(A)| on finite
// spaces. Range [0, 2].
double variational_distance(const JointDistribution& p,
                            const JointDistribution& q);

// Product distribution over z-sequences when both users transmit i.i.d.
// letters from their design distributions (the random-coding output).
JointDistribution iid_output_distribution(const BlockChannel& bc,
                                          const InputDistribution& p1,
                                          const InputDistribution& p2,
                                          std::int64_t budget = kDefaultBudget);

// Eavesdropper distribution given the private pair: the uniform mixture over
// auxiliary pairs (j,l) of the block kernel at the corresponding codewords.
JointDistribution induced_eaves_conditional(const WiretapCodebook& cb1,
                                            const WiretapCodebook& cb2,
                                            const BlockChannel& bc,
                                            std::int64_t m1_priv,
                                            std::int64_t m2_priv,
                                            std::int64_t budget = kDefaultBudget);

struct LeakageReport {
  // V(p_{M1 M2 Z}, p_{M1 M2} p_Z) with p_Z the code-induced output; exact
  // mode only.
  std::optional<double> leakage;
  // 2 E_{M1 M2}[ V(p_{Z|m1 m2}, p_Z^iid) ], the resolvability-side bound with
  // the i.i.d. random-coding output as the target.
  double resolvability_bound = 0.0;
  enum class Method { Exact, MonteCarlo } method = Method::Exact;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double std_error = 0.0;
};

LeakageReport leakage_exact(const WiretapCodebook& cb1,
                            const WiretapCodebook& cb2, const BlockChannel& bc,
                            std::int64_t budget = kDefaultBudget);

// Sampled surrogate of the resolvability bound. Uses the importance form
// V(P,Q) = 2 E_{z~Q}[(1 - P(z)/Q(z))^+] with Q the i.i.d. output, so each
// trial needs one exact mixture evaluation at a sampled point, never a sum
// over the z-sequence space. The per-trial statistic is unbiased for the
// bound; only the binomial-style standard error is approximate.
LeakageReport leakage_mc(const WiretapCodebook& cb1, const WiretapCodebook& cb2,
                         const BlockChannel& bc, std::int64_t trials,
                         std::uint64_t seed,
                         std::int64_t budget = kDefaultBudget, int jobs = 1);

// Per-draw resolvability diagnostics for the auxiliary sub-codebooks at one
// private message pair, averaged over a seed set standing in for the
// random-coding ensemble.
struct ResolvabilityDiagnostic {
  double mu = 0.0;
  double tau = 0.0;  // (e^mu - 1) / 4
  double j_mu = 0.0;
  std::array<double, 4> j_terms{};  // J1..J4
  double lemma4_bound = 0.0;        // 2 mu + 2 j_mu
  // Per-seed values (same order as the seed set), used for exact checks.
  std::vector<double> per_seed_j_mu;
  std::vector<std::array<double, 4>> per_seed_terms;
  std::vector<double> per_seed_variational;  // V(p_mix, p_iid) per seed
};

ResolvabilityDiagnostic j_mu_exact(const InputDistribution& source1,
                                   const InputDistribution& source2,
                                   const BlockChannel& bc,
                                   std::int64_t m1_aux, std::int64_t m2_aux,
                                   double mu,
                                   std::span<const std::uint64_t> seed_set,
                                   std::int64_t budget = kDefaultBudget,
                                   int jobs = 1);

// 2 mu + 2 P{ log(P/Q) > mu }; always >= V(P, Q).
double lemma4_bound(const JointDistribution& p, const JointDistribution& q,
                    double mu);

}  // namespace macwt
