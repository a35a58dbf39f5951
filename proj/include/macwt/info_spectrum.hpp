#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "macwt/channel_core.hpp"

namespace macwt {

// The six densities a MAC wiretap analysis needs. Y-side kinds feed the
// reliability constraints, Z-side kinds the secrecy constraints.
enum class DensityKind {
  X1_Y_given_X2,
  X2_Y_given_X1,
  X1X2_Y,
  X1_Z,
  X2_Z,
  X1X2_Z,
};

const char* density_kind_name(DensityKind kind);     // e.g. "i(X1;Y|X2)"
DensityKind parse_density_kind(const std::string& name);

// i(a;b) = log p(a,b) - log p(a) - log p(b), in nats. Requires both marginals
// positive at the queried symbols; -inf when only the joint cell is empty.
double info_density(const JointDistribution& joint, int a, int b);

// i(a;b|c) over a 3-axis joint (A,B,C).
double cond_info_density(const JointDistribution& joint, int a, int b, int c);

// Means of the densities above, skipping zero-probability atoms.
double mutual_information(const JointDistribution& joint);
double cond_mutual_information(const JointDistribution& joint);

// Per-letter density table over (x1,x2,y,z) for one kind, plus the induced
// single-letter joint it was derived from.
class LetterDensities {
 public:
  LetterDensities(const MacWiretapChannel& ch, const InputDistribution& p1,
                  const InputDistribution& p2, DensityKind kind);

  double value(int x1, int x2, int y, int z) const;
  const JointDistribution& letter_joint() const { return joint_; }
  DensityKind kind() const { return kind_; }

 private:
  DensityKind kind_;
  JointDistribution joint_;  // (X1, X2, Y, Z)
  std::vector<double> values_;
};

struct SpectrumSample {
  int n = 1;
  std::vector<double> values;  // normalized block densities, nats per symbol
  DensityKind kind = DensityKind::X1X2_Y;
  std::uint64_t seed = 0;
};

enum class RateDirection { InfRate, SupRate };
enum class TailSide { Above, Below };

struct TailEstimate {
  double probability = 0.0;
  double std_error = 0.0;
};

struct RateEstimate {
  double point = 0.0;
  double epsilon = 0.0;
  int n = 1;
  RateDirection direction = RateDirection::InfRate;
  double std_error = 0.0;
};

// One value per trial: (1/n) * sum of per-letter densities along an i.i.d.
// draw from the induced block joint. Trial t uses substream (seed, 0, t), so
// the sample is reproducible for any worker count.
SpectrumSample sample_spectrum(const BlockChannel& bc,
                               const InputDistribution& p1,
                               const InputDistribution& p2, DensityKind kind,
                               std::int64_t trials, std::uint64_t seed,
                               int jobs = 1);

// Fraction of values strictly above (Above) or strictly below (Below) the
// threshold, with a binomial standard error.
TailEstimate tail_probability(const SpectrumSample& s, double threshold,
                              TailSide side = TailSide::Above);

// Finite-n surrogate for the sup/inf-information rate: the empirical
// (1-epsilon)- or epsilon-quantile, with a 200-resample bootstrap error bar.
// These are estimates at block length n, not the asymptotic rates.
RateEstimate estimate_rate(const SpectrumSample& s, RateDirection direction,
                           double epsilon);

// The six single-letter mutual informations; for memoryless channels these
// equal the asymptotic information rates.
struct SpectralQuantities {
  double x1_y_given_x2 = 0.0;
  double x2_y_given_x1 = 0.0;
  double x1x2_y = 0.0;
  double x1_z = 0.0;
  double x2_z = 0.0;
  double x1x2_z = 0.0;
};

SpectralQuantities exact_mutual_informations(const MacWiretapChannel& ch,
                                             const InputDistribution& p1,
                                             const InputDistribution& p2);

// CSV with columns (trial_index, value_nats).
void write_spectrum_csv(const SpectrumSample& s, std::ostream& out);

}  // namespace macwt
