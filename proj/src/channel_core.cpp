#include "macwt/channel_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace macwt {

namespace {

constexpr double kInputTolerance = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double checked_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

}  // namespace

// ---------------------------------------------------------------------------
// InputDistribution

InputDistribution::InputDistribution(Alphabet alphabet,
                                     std::vector<double> probs)
    : alphabet_(alphabet), probs_(std::move(probs)) {
  if (alphabet_.size < 1) throw ShapeMismatch("alphabet size must be >= 1");
  if (static_cast<int>(probs_.size()) != alphabet_.size)
    throw ShapeMismatch("probability vector length does not match alphabet");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || p > 1.0 + kInputTolerance)
      throw ProbabilityOutOfRange("input probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kInputTolerance)
    throw RowSumViolation("input distribution sums to " + std::to_string(sum));
  for (double& p : probs_) p /= sum;
  cdf_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    acc += probs_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

double InputDistribution::prob(int symbol) const {
  if (symbol < 0 || symbol >= alphabet_.size)
    throw SymbolOutOfRange("symbol " + std::to_string(symbol));
  return probs_[symbol];
}

double InputDistribution::log_prob(int symbol) const {
  return checked_log(prob(symbol));
}

int InputDistribution::sample(Rng& rng) const {
  double u = rng.next_unit();
  for (std::size_t i = 0; i + 1 < cdf_.size(); ++i)
    if (u < cdf_[i]) return static_cast<int>(i);
  return alphabet_.size - 1;
}

InputDistribution uniform_distribution(int size) {
  return InputDistribution({size},
                           std::vector<double>(size, 1.0 / size));
}

// ---------------------------------------------------------------------------
// JointDistribution

JointDistribution::JointDistribution(std::vector<Alphabet> axes,
                                     std::vector<double> probs)
    : axes_(std::move(axes)), probs_(std::move(probs)) {
  if (axes_.empty()) throw ShapeMismatch("joint needs at least one axis");
  std::int64_t cells = 1;
  for (const auto& a : axes_) {
    if (a.size < 1) throw ShapeMismatch("axis size must be >= 1");
    cells *= a.size;
  }
  if (static_cast<std::int64_t>(probs_.size()) != cells)
    throw ShapeMismatch("tensor has wrong cell count");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw ProbabilityOutOfRange("negative joint probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kInputTolerance)
    throw RowSumViolation("joint mass sums to " + std::to_string(sum));
  for (double& p : probs_) p /= sum;

  strides_.assign(axes_.size(), 1);
  for (int i = static_cast<int>(axes_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * axes_[i + 1].size;
}

std::int64_t JointDistribution::flatten(std::span<const int> idx) const {
  if (idx.size() != axes_.size())
    throw AxisMismatch("index arity does not match axes");
  std::int64_t flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= axes_[i].size)
      throw SymbolOutOfRange("axis " + std::to_string(i) + " symbol " +
                             std::to_string(idx[i]));
    flat += strides_[i] * idx[i];
  }
  return flat;
}

std::vector<int> JointDistribution::unflatten(std::int64_t flat) const {
  std::vector<int> idx(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    idx[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
  return idx;
}

double JointDistribution::prob(std::span<const int> idx) const {
  return probs_[flatten(idx)];
}

double JointDistribution::log_prob(std::span<const int> idx) const {
  return checked_log(prob(idx));
}

JointDistribution JointDistribution::marginal(
    const std::vector<int>& keep) const {
  std::vector<std::vector<int>> groups;
  groups.reserve(keep.size());
  for (int a : keep) groups.push_back({a});
  return collapsed(groups);
}

JointDistribution JointDistribution::collapsed(
    const std::vector<std::vector<int>>& groups) const {
  if (groups.empty()) throw AxisMismatch("need at least one axis group");
  std::vector<Alphabet> out_axes;
  out_axes.reserve(groups.size());
  for (const auto& g : groups) {
    if (g.empty()) throw AxisMismatch("empty axis group");
    std::int64_t size = 1;
    for (int a : g) {
      if (a < 0 || a >= axis_count())
        throw AxisMismatch("axis index " + std::to_string(a));
      size *= axes_[a].size;
    }
    out_axes.push_back({static_cast<int>(size)});
  }
  std::int64_t out_cells = 1;
  for (const auto& a : out_axes) out_cells *= a.size;
  std::vector<double> out(out_cells, 0.0);

  std::vector<int> idx(axes_.size(), 0);
  std::int64_t flat = 0;
  do {
    std::int64_t out_flat = 0;
    for (const auto& g : groups) {
      std::int64_t part = 0;
      for (int a : g) part = part * axes_[a].size + idx[a];
      std::int64_t group_size = 1;
      for (int a : g) group_size *= axes_[a].size;
      out_flat = out_flat * group_size + part;
    }
    out[out_flat] += probs_[flat];
    ++flat;
  } while (next_index(idx, axes_));
  return JointDistribution(std::move(out_axes), std::move(out));
}

std::vector<int> JointDistribution::sample(Rng& rng) const {
  double u = rng.next_unit();
  double acc = 0.0;
  std::int64_t last_positive = 0;
  for (std::int64_t f = 0; f < cell_count(); ++f) {
    if (probs_[f] <= 0.0) continue;
    acc += probs_[f];
    last_positive = f;
    if (u < acc) return unflatten(f);
  }
  return unflatten(last_positive);
}

bool next_index(std::vector<int>& idx, std::span<const Alphabet> axes) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < axes[i].size) return true;
    idx[i] = 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// MacWiretapChannel

MacWiretapChannel MacWiretapChannel::make(int x1_size, int x2_size, int y_size,
                                          int z_size,
                                          std::vector<double> entries) {
  if (x1_size < 1 || x2_size < 1 || y_size < 1 || z_size < 1)
    throw ShapeMismatch("alphabet sizes must be >= 1");
  const std::int64_t cells = static_cast<std::int64_t>(x1_size) * x2_size *
                             y_size * z_size;
  if (static_cast<std::int64_t>(entries.size()) != cells)
    throw ShapeMismatch("expected " + std::to_string(cells) +
                        " tensor entries, got " +
                        std::to_string(entries.size()));
  for (double e : entries)
    if (!(e >= 0.0) || e > 1.0 + kInputTolerance)
      throw ProbabilityOutOfRange("tensor entry outside [0,1]");

  const std::int64_t row = static_cast<std::int64_t>(y_size) * z_size;
  double worst_dev = 0.0;
  int worst_x1 = 0, worst_x2 = 0;
  for (int a = 0; a < x1_size; ++a) {
    for (int b = 0; b < x2_size; ++b) {
      double sum = 0.0;
      const std::int64_t base = (static_cast<std::int64_t>(a) * x2_size + b) * row;
      for (std::int64_t i = 0; i < row; ++i) sum += entries[base + i];
      const double dev = std::abs(sum - 1.0);
      if (dev > worst_dev) {
        worst_dev = dev;
        worst_x1 = a;
        worst_x2 = b;
      }
    }
  }
  if (worst_dev > kInputTolerance) {
    std::ostringstream msg;
    msg << "row (x1=" << worst_x1 << ", x2=" << worst_x2
        << ") deviates from 1 by " << worst_dev;
    throw RowSumViolation(msg.str());
  }
  for (int a = 0; a < x1_size; ++a) {
    for (int b = 0; b < x2_size; ++b) {
      const std::int64_t base = (static_cast<std::int64_t>(a) * x2_size + b) * row;
      double sum = 0.0;
      for (std::int64_t i = 0; i < row; ++i) sum += entries[base + i];
      for (std::int64_t i = 0; i < row; ++i) entries[base + i] /= sum;
    }
  }

  MacWiretapChannel ch;
  ch.x1_ = {x1_size};
  ch.x2_ = {x2_size};
  ch.y_ = {y_size};
  ch.z_ = {z_size};
  ch.tensor_ = std::move(entries);
  ch.main_.assign(static_cast<std::size_t>(x1_size) * x2_size * y_size, 0.0);
  ch.eaves_.assign(static_cast<std::size_t>(x1_size) * x2_size * z_size, 0.0);
  for (int a = 0; a < x1_size; ++a)
    for (int b = 0; b < x2_size; ++b)
      for (int y = 0; y < y_size; ++y)
        for (int z = 0; z < z_size; ++z) {
          const double p = ch.transition(a, b, y, z);
          ch.main_[(static_cast<std::size_t>(a) * x2_size + b) * y_size + y] += p;
          ch.eaves_[(static_cast<std::size_t>(a) * x2_size + b) * z_size + z] += p;
        }
  return ch;
}

double MacWiretapChannel::transition(int x1, int x2, int y, int z) const {
  if (x1 < 0 || x1 >= x1_.size || x2 < 0 || x2 >= x2_.size || y < 0 ||
      y >= y_.size || z < 0 || z >= z_.size)
    throw SymbolOutOfRange("transition index out of range");
  return tensor_[((static_cast<std::size_t>(x1) * x2_.size + x2) * y_.size + y) *
                     z_.size +
                 z];
}

double MacWiretapChannel::main_prob(int y, int x1, int x2) const {
  if (x1 < 0 || x1 >= x1_.size || x2 < 0 || x2 >= x2_.size || y < 0 ||
      y >= y_.size)
    throw SymbolOutOfRange("main-channel index out of range");
  return main_[(static_cast<std::size_t>(x1) * x2_.size + x2) * y_.size + y];
}

double MacWiretapChannel::eaves_prob(int z, int x1, int x2) const {
  if (x1 < 0 || x1 >= x1_.size || x2 < 0 || x2 >= x2_.size || z < 0 ||
      z >= z_.size)
    throw SymbolOutOfRange("eavesdropper-channel index out of range");
  return eaves_[(static_cast<std::size_t>(x1) * x2_.size + x2) * z_.size + z];
}

double MacWiretapChannel::log_main_prob(int y, int x1, int x2) const {
  return checked_log(main_prob(y, x1, x2));
}

double MacWiretapChannel::log_eaves_prob(int z, int x1, int x2) const {
  return checked_log(eaves_prob(z, x1, x2));
}

MacWiretapChannel adder_bsc_channel(double p_main, double p_eve) {
  if (!(p_main >= 0.0 && p_main <= 1.0))
    throw ProbabilityOutOfRange("p_main must lie in [0,1]");
  if (!(p_eve >= 0.0 && p_eve <= 1.0))
    throw ProbabilityOutOfRange("p_eve must lie in [0,1]");
  const int ys = 3, zs = 3;
  std::vector<double> t(2 * 2 * ys * zs, 0.0);
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      const int s = x1 + x2;
      for (int y = 0; y < ys; ++y) {
        const double py = (y == s ? 1.0 - p_main : 0.0) + p_main / 3.0;
        for (int z = 0; z < zs; ++z) {
          const double qz = (z == y ? 1.0 - p_eve : 0.0) + p_eve / 3.0;
          t[((static_cast<std::size_t>(x1) * 2 + x2) * ys + y) * zs + z] =
              py * qz;
        }
      }
    }
  }
  return MacWiretapChannel::make(2, 2, ys, zs, std::move(t));
}

JointDistribution induced_joint(const MacWiretapChannel& ch,
                                const InputDistribution& p1,
                                const InputDistribution& p2) {
  if (p1.alphabet() != ch.x1() || p2.alphabet() != ch.x2())
    throw AlphabetMismatch("input distributions do not match channel inputs");
  std::vector<Alphabet> axes = {ch.x1(), ch.x2(), ch.y(), ch.z()};
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(ch.x1().size) * ch.x2().size *
                ch.y().size * ch.z().size);
  for (int a = 0; a < ch.x1().size; ++a)
    for (int b = 0; b < ch.x2().size; ++b)
      for (int y = 0; y < ch.y().size; ++y)
        for (int z = 0; z < ch.z().size; ++z)
          probs.push_back(p1.prob(a) * p2.prob(b) * ch.transition(a, b, y, z));
  return JointDistribution(std::move(axes), std::move(probs));
}

// ---------------------------------------------------------------------------
// BlockChannel

BlockChannel::BlockChannel(MacWiretapChannel base, int n)
    : base_(std::move(base)), n_(n) {
  if (n < 1) throw ShapeMismatch("block length must be >= 1");
}

void BlockChannel::check_word(std::span<const int> v, const Alphabet& a,
                              const char* which) const {
  if (static_cast<int>(v.size()) != n_)
    throw LengthMismatch(std::string(which) + " has length " +
                         std::to_string(v.size()) + ", expected " +
                         std::to_string(n_));
  for (int s : v)
    if (s < 0 || s >= a.size)
      throw SymbolOutOfRange(std::string(which) + " symbol " +
                             std::to_string(s));
}

double BlockChannel::log_block_probability(std::span<const int> x1_vec,
                                           std::span<const int> x2_vec,
                                           std::span<const int> y_vec,
                                           std::span<const int> z_vec) const {
  check_word(x1_vec, base_.x1(), "x1 word");
  check_word(x2_vec, base_.x2(), "x2 word");
  check_word(y_vec, base_.y(), "y word");
  check_word(z_vec, base_.z(), "z word");
  double acc = 0.0;
  for (int t = 0; t < n_; ++t) {
    const double p = base_.transition(x1_vec[t], x2_vec[t], y_vec[t], z_vec[t]);
    if (p == 0.0) return kNegInf;
    acc += std::log(p);
  }
  return acc;
}

double BlockChannel::block_probability(std::span<const int> x1_vec,
                                       std::span<const int> x2_vec,
                                       std::span<const int> y_vec,
                                       std::span<const int> z_vec) const {
  const double lp = log_block_probability(x1_vec, x2_vec, y_vec, z_vec);
  return lp == kNegInf ? 0.0 : std::exp(lp);
}

double BlockChannel::log_main_block(std::span<const int> y_vec,
                                    std::span<const int> x1_vec,
                                    std::span<const int> x2_vec) const {
  check_word(y_vec, base_.y(), "y word");
  check_word(x1_vec, base_.x1(), "x1 word");
  check_word(x2_vec, base_.x2(), "x2 word");
  double acc = 0.0;
  for (int t = 0; t < n_; ++t) {
    const double p = base_.main_prob(y_vec[t], x1_vec[t], x2_vec[t]);
    if (p == 0.0) return kNegInf;
    acc += std::log(p);
  }
  return acc;
}

double BlockChannel::log_eaves_block(std::span<const int> z_vec,
                                     std::span<const int> x1_vec,
                                     std::span<const int> x2_vec) const {
  check_word(z_vec, base_.z(), "z word");
  check_word(x1_vec, base_.x1(), "x1 word");
  check_word(x2_vec, base_.x2(), "x2 word");
  double acc = 0.0;
  for (int t = 0; t < n_; ++t) {
    const double p = base_.eaves_prob(z_vec[t], x1_vec[t], x2_vec[t]);
    if (p == 0.0) return kNegInf;
    acc += std::log(p);
  }
  return acc;
}

}  // namespace macwt
