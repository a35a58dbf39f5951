#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "macwt/errors.hpp"
#include "macwt/rng.hpp"

namespace macwt {

struct Alphabet {
  int size = 1;
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// Probability vector over a finite alphabet. Accepts input within 1e-9 of
// normalized and renormalizes, so internal identities hold at 1e-12.
class InputDistribution {
 public:
  InputDistribution(Alphabet alphabet, std::vector<double> probs);

  const Alphabet& alphabet() const { return alphabet_; }
  int size() const { return alphabet_.size; }
  double prob(int symbol) const;
  double log_prob(int symbol) const;  // -inf on zero mass
  const std::vector<double>& probs() const { return probs_; }
  int sample(Rng& rng) const;

  friend bool operator==(const InputDistribution&,
                         const InputDistribution&) = default;

 private:
  Alphabet alphabet_;
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

InputDistribution uniform_distribution(int size);

// Dense joint distribution over an ordered list of finite axes. Immutable
// after construction; the carrier for p(x1,x2,y,z) and every marginal.
class JointDistribution {
 public:
  JointDistribution(std::vector<Alphabet> axes, std::vector<double> probs);

  int axis_count() const { return static_cast<int>(axes_.size()); }
  const std::vector<Alphabet>& axes() const { return axes_; }
  std::int64_t cell_count() const {
    return static_cast<std::int64_t>(probs_.size());
  }
  const std::vector<double>& probs() const { return probs_; }

  double prob(std::span<const int> idx) const;
  double log_prob(std::span<const int> idx) const;  // -inf on zero mass

  std::int64_t flatten(std::span<const int> idx) const;
  std::vector<int> unflatten(std::int64_t flat) const;

  // Marginal over the listed axes, in the listed order.
  JointDistribution marginal(const std::vector<int>& keep) const;
  // Regroups axes: one output axis per group, sized as the product of the
  // group's axes (row-major within the group). Axes not listed are summed out.
  JointDistribution collapsed(const std::vector<std::vector<int>>& groups) const;

  std::vector<int> sample(Rng& rng) const;

 private:
  std::vector<Alphabet> axes_;
  std::vector<double> probs_;
  std::vector<std::int64_t> strides_;
};

// Single-letter MAC wiretap kernel p(y, z | x1, x2) on finite alphabets.
class MacWiretapChannel {
 public:
  static MacWiretapChannel make(int x1_size, int x2_size, int y_size,
                                int z_size, std::vector<double> entries);

  const Alphabet& x1() const { return x1_; }
  const Alphabet& x2() const { return x2_; }
  const Alphabet& y() const { return y_; }
  const Alphabet& z() const { return z_; }

  double transition(int x1, int x2, int y, int z) const;
  double main_prob(int y, int x1, int x2) const;   // p(y | x1, x2)
  double eaves_prob(int z, int x1, int x2) const;  // p(z | x1, x2)
  double log_main_prob(int y, int x1, int x2) const;
  double log_eaves_prob(int z, int x1, int x2) const;

  const std::vector<double>& entries() const { return tensor_; }

 private:
  MacWiretapChannel() = default;

  Alphabet x1_, x2_, y_, z_;
  std::vector<double> tensor_;  // (x1, x2, y, z) row-major
  std::vector<double> main_;    // (x1, x2, y)
  std::vector<double> eaves_;   // (x1, x2, z)
};

// Canonical test channel. Y is the binary adder output x1+x2 on {0,1,2},
// re-drawn uniformly with probability p_main; Z is Y re-drawn uniformly with
// probability p_eve. Physically degraded (X1,X2) -> Y -> Z by construction.
MacWiretapChannel adder_bsc_channel(double p_main, double p_eve);

// p(x1, x2, y, z) = p1(x1) p2(x2) p(y,z|x1,x2); axes (X1, X2, Y, Z).
JointDistribution induced_joint(const MacWiretapChannel& ch,
                                const InputDistribution& p1,
                                const InputDistribution& p2);

// Memoryless n-fold extension of a single-letter kernel.
class BlockChannel {
 public:
  BlockChannel(MacWiretapChannel base, int n);

  const MacWiretapChannel& base() const { return base_; }
  int n() const { return n_; }

  double block_probability(std::span<const int> x1_vec,
                           std::span<const int> x2_vec,
                           std::span<const int> y_vec,
                           std::span<const int> z_vec) const;
  double log_block_probability(std::span<const int> x1_vec,
                               std::span<const int> x2_vec,
                               std::span<const int> y_vec,
                               std::span<const int> z_vec) const;
  double log_main_block(std::span<const int> y_vec,
                        std::span<const int> x1_vec,
                        std::span<const int> x2_vec) const;
  double log_eaves_block(std::span<const int> z_vec,
                         std::span<const int> x1_vec,
                         std::span<const int> x2_vec) const;

 private:
  void check_word(std::span<const int> v, const Alphabet& a,
                  const char* which) const;

  MacWiretapChannel base_;
  int n_;
};

// Advances a base-mixed counter through a product space; returns false after
// the last configuration.
bool next_index(std::vector<int>& idx, std::span<const Alphabet> axes);

}  // namespace macwt
