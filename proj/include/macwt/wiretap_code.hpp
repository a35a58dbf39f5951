#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "macwt/channel_core.hpp"
#include "macwt/common.hpp"

namespace macwt {

// 1-based pair (private message, auxiliary message).
struct MessageIndex {
  std::int64_t private_index = 1;
  std::int64_t auxiliary_index = 1;
  friend bool operator==(const MessageIndex&, const MessageIndex&) = default;
};

struct RateTuple {
  double r1 = 0.0;
  double r2 = 0.0;
  double r1_aux = 0.0;
  double r2_aux = 0.0;
  double gamma = 0.01;  // nats/symbol, must be > 0
};

struct Counts {
  std::int64_t m1 = 1;
  std::int64_t m2 = 1;
  std::int64_t m1_aux = 1;
  std::int64_t m2_aux = 1;
};

// M * M_aux i.i.d. codewords of length n drawn from a source distribution.
// Regeneration from (source, n, M, M_aux, seed) is bit-identical.
class WiretapCodebook {
 public:
  static WiretapCodebook generate(const InputDistribution& source, int n,
                                  std::int64_t m, std::int64_t m_aux,
                                  std::uint64_t seed, int user = 1);

  int user() const { return user_; }
  int n() const { return n_; }
  std::int64_t m() const { return m_; }
  std::int64_t m_aux() const { return m_aux_; }
  std::int64_t word_count() const { return m_ * m_aux_; }
  std::uint64_t seed() const { return seed_; }
  const InputDistribution& source() const { return source_; }

  // Stored codeword for a message pair; pure lookup.
  std::span<const int> word(const MessageIndex& m) const;
  std::span<const int> word_flat(std::int64_t flat) const;  // 0-based row

  void write(std::ostream& out) const;
  static WiretapCodebook read(std::istream& in);

 private:
  WiretapCodebook(InputDistribution source, int n, std::int64_t m,
                  std::int64_t m_aux, std::uint64_t seed, int user,
                  std::vector<int> words);

  int user_;
  int n_;
  std::int64_t m_;
  std::int64_t m_aux_;
  std::uint64_t seed_;
  InputDistribution source_;
  std::vector<int> words_;  // (m * m_aux) rows of n symbols
};

// Convention for deriving the per-user codebook seed from an experiment seed.
inline std::uint64_t user_seed(std::uint64_t master, int user) {
  return derive_stream(master, 0x5eedu, static_cast<std::uint64_t>(user));
}

// Message-set sizes M_i = max(1, ceil(e^{n(rate - 2 gamma)})), with a relative
// 1e-9 tolerance before the ceiling so integer-valued exponents stay exact.
Counts counts_from_rates(const RateTuple& rt, int n,
                         std::int64_t budget = kDefaultBudget);

std::span<const int> encode(const WiretapCodebook& cb, const MessageIndex& m);

struct DecodeOutcome {
  enum class Status { Decoded, NoCandidate, NotUnique };
  Status status = Status::NoCandidate;
  MessageIndex m1{};
  MessageIndex m2{};
  bool ok() const { return status == Status::Decoded; }
};

// All (m1, m2) pairs passing the three information-density thresholds. The
// reference densities p(y|x2), p(y|x1), p(y) are the product-form marginals
// induced by the design distributions p1, p2, not codebook mixtures.
std::vector<std::pair<MessageIndex, MessageIndex>> admissible_pairs(
    std::span<const int> y_vec, const WiretapCodebook& cb1,
    const WiretapCodebook& cb2, const BlockChannel& bc,
    const InputDistribution& p1, const InputDistribution& p2,
    const RateTuple& rt, std::int64_t stop_after = -1);

// Threshold decoder: outputs the unique admissible pair, else an error status.
DecodeOutcome threshold_decode(std::span<const int> y_vec,
                               const WiretapCodebook& cb1,
                               const WiretapCodebook& cb2,
                               const BlockChannel& bc,
                               const InputDistribution& p1,
                               const InputDistribution& p2,
                               const RateTuple& rt);

// Exact average error probability over uniform messages and the channel law;
// the decoded tuple must match in both private and auxiliary parts.
double error_probability_exact(const WiretapCodebook& cb1,
                               const WiretapCodebook& cb2,
                               const BlockChannel& bc,
                               const InputDistribution& p1,
                               const InputDistribution& p2,
                               const RateTuple& rt,
                               std::int64_t budget = kDefaultBudget);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

MonteCarloEstimate error_probability_mc(const WiretapCodebook& cb1,
                                        const WiretapCodebook& cb2,
                                        const BlockChannel& bc,
                                        const InputDistribution& p1,
                                        const InputDistribution& p2,
                                        const RateTuple& rt,
                                        std::int64_t trials,
                                        std::uint64_t seed, int jobs = 1);

}  // namespace macwt
