#include "macwt/info_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "macwt/parallel.hpp"

namespace macwt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_axes(const JointDistribution& joint, int arity,
                  const char* what) {
  if (joint.axis_count() != arity)
    throw AxisMismatch(std::string(what) + " expects a " +
                       std::to_string(arity) + "-axis joint");
}

}  // namespace

const char* density_kind_name(DensityKind kind) {
  switch (kind) {
    case DensityKind::X1_Y_given_X2: return "i(X1;Y|X2)";
    case DensityKind::X2_Y_given_X1: return "i(X2;Y|X1)";
    case DensityKind::X1X2_Y: return "i(X1X2;Y)";
    case DensityKind::X1_Z: return "i(X1;Z)";
    case DensityKind::X2_Z: return "i(X2;Z)";
    case DensityKind::X1X2_Z: return "i(X1X2;Z)";
  }
  return "?";
}

DensityKind parse_density_kind(const std::string& name) {
  for (DensityKind k :
       {DensityKind::X1_Y_given_X2, DensityKind::X2_Y_given_X1,
        DensityKind::X1X2_Y, DensityKind::X1_Z, DensityKind::X2_Z,
        DensityKind::X1X2_Z})
    if (name == density_kind_name(k)) return k;
  throw ConfigParseError("unknown density kind '" + name + "'");
}

double info_density(const JointDistribution& joint, int a, int b) {
  require_axes(joint, 2, "info_density");
  const JointDistribution pa = joint.marginal({0});
  const JointDistribution pb = joint.marginal({1});
  const int ia[] = {a};
  const int ib[] = {b};
  if (pa.prob(ia) <= 0.0)
    throw ZeroMarginal("first marginal is zero at symbol " + std::to_string(a));
  if (pb.prob(ib) <= 0.0)
    throw ZeroMarginal("second marginal is zero at symbol " +
                       std::to_string(b));
  const int iab[] = {a, b};
  const double pab = joint.prob(iab);
  if (pab == 0.0) return kNegInf;
  return std::log(pab) - std::log(pa.prob(ia)) - std::log(pb.prob(ib));
}

double cond_info_density(const JointDistribution& joint, int a, int b, int c) {
  require_axes(joint, 3, "cond_info_density");
  const JointDistribution pc = joint.marginal({2});
  const JointDistribution pac = joint.marginal({0, 2});
  const JointDistribution pbc = joint.marginal({1, 2});
  const int ic[] = {c};
  if (pc.prob(ic) <= 0.0)
    throw ZeroConditional("conditioning symbol has zero mass");
  const int iac[] = {a, c};
  const int ibc[] = {b, c};
  if (pac.prob(iac) <= 0.0)
    throw ZeroConditional("p(a|c) is zero at the queried pair");
  if (pbc.prob(ibc) <= 0.0)
    throw ZeroConditional("p(b|c) is zero at the queried pair");
  const int iabc[] = {a, b, c};
  const double pabc = joint.prob(iabc);
  if (pabc == 0.0) return kNegInf;
  // log p(a,b|c) - log p(a|c) - log p(b|c), with the p(c) terms combined.
  return std::log(pabc) + std::log(pc.prob(ic)) - std::log(pac.prob(iac)) -
         std::log(pbc.prob(ibc));
}

double mutual_information(const JointDistribution& joint) {
  require_axes(joint, 2, "mutual_information");
  const JointDistribution pa = joint.marginal({0});
  const JointDistribution pb = joint.marginal({1});
  double acc = 0.0;
  std::vector<int> idx(2, 0);
  std::int64_t flat = 0;
  do {
    const double p = joint.probs()[flat];
    if (p > 0.0) {
      acc += p * (std::log(p) - std::log(pa.probs()[idx[0]]) -
                  std::log(pb.probs()[idx[1]]));
    }
    ++flat;
  } while (next_index(idx, joint.axes()));
  return acc;
}

double cond_mutual_information(const JointDistribution& joint) {
  require_axes(joint, 3, "cond_mutual_information");
  const JointDistribution pc = joint.marginal({2});
  const JointDistribution pac = joint.marginal({0, 2});
  const JointDistribution pbc = joint.marginal({1, 2});
  const std::int64_t nc = joint.axes()[2].size;
  double acc = 0.0;
  std::vector<int> idx(3, 0);
  std::int64_t flat = 0;
  do {
    const double p = joint.probs()[flat];
    if (p > 0.0) {
      const int a = idx[0], b = idx[1], c = idx[2];
      acc += p * (std::log(p) + std::log(pc.probs()[c]) -
                  std::log(pac.probs()[a * nc + c]) -
                  std::log(pbc.probs()[b * nc + c]));
    }
    ++flat;
  } while (next_index(idx, joint.axes()));
  return acc;
}

// ---------------------------------------------------------------------------
// LetterDensities

LetterDensities::LetterDensities(const MacWiretapChannel& ch,
                                 const InputDistribution& p1,
                                 const InputDistribution& p2, DensityKind kind)
    : kind_(kind), joint_(induced_joint(ch, p1, p2)) {
  const int s1 = ch.x1().size, s2 = ch.x2().size, sy = ch.y().size,
            sz = ch.z().size;
  values_.assign(static_cast<std::size_t>(s1) * s2 * sy * sz, kNegInf);

  // Reduced joints; axis order below is (A, B) or (A, B, C).
  JointDistribution reduced = [&]() -> JointDistribution {
    switch (kind) {
      case DensityKind::X1_Y_given_X2: return joint_.marginal({0, 2, 1});
      case DensityKind::X2_Y_given_X1: return joint_.marginal({1, 2, 0});
      case DensityKind::X1X2_Y: return joint_.collapsed({{0, 1}, {2}});
      case DensityKind::X1_Z: return joint_.marginal({0, 3});
      case DensityKind::X2_Z: return joint_.marginal({1, 3});
      case DensityKind::X1X2_Z: return joint_.collapsed({{0, 1}, {3}});
    }
    throw Error("unreachable density kind");
  }();

  auto reduced_symbols = [&](int x1, int x2, int y, int z) -> std::vector<int> {
    switch (kind) {
      case DensityKind::X1_Y_given_X2: return {x1, y, x2};
      case DensityKind::X2_Y_given_X1: return {x2, y, x1};
      case DensityKind::X1X2_Y: return {x1 * s2 + x2, y};
      case DensityKind::X1_Z: return {x1, z};
      case DensityKind::X2_Z: return {x2, z};
      case DensityKind::X1X2_Z: return {x1 * s2 + x2, z};
    }
    throw Error("unreachable density kind");
  };

  const bool conditional = kind == DensityKind::X1_Y_given_X2 ||
                           kind == DensityKind::X2_Y_given_X1;
  std::size_t i = 0;
  for (int a = 0; a < s1; ++a)
    for (int b = 0; b < s2; ++b)
      for (int y = 0; y < sy; ++y)
        for (int z = 0; z < sz; ++z, ++i) {
          std::vector<int> sym = reduced_symbols(a, b, y, z);
          const int v[] = {a, b, y, z};
          if (joint_.prob(v) == 0.0) continue;  // never sampled
          values_[i] = conditional
                           ? cond_info_density(reduced, sym[0], sym[1], sym[2])
                           : info_density(reduced, sym[0], sym[1]);
        }
}

double LetterDensities::value(int x1, int x2, int y, int z) const {
  const auto& ax = joint_.axes();
  return values_[((static_cast<std::size_t>(x1) * ax[1].size + x2) * ax[2].size +
                  y) *
                     ax[3].size +
                 z];
}

// ---------------------------------------------------------------------------
// Sampling

SpectrumSample sample_spectrum(const BlockChannel& bc,
                               const InputDistribution& p1,
                               const InputDistribution& p2, DensityKind kind,
                               std::int64_t trials, std::uint64_t seed,
                               int jobs) {
  if (trials < 1) throw ShapeMismatch("trials must be >= 1");
  const LetterDensities table(bc.base(), p1, p2, kind);
  const JointDistribution& letter = table.letter_joint();
  SpectrumSample out;
  out.n = bc.n();
  out.kind = kind;
  out.seed = seed;
  out.values.assign(trials, 0.0);
  parallel_for(trials, jobs, [&](std::int64_t t) {
    Rng rng(seed, 0, static_cast<std::uint64_t>(t));
    double acc = 0.0;
    for (int pos = 0; pos < bc.n(); ++pos) {
      const std::vector<int> s = letter.sample(rng);
      acc += table.value(s[0], s[1], s[2], s[3]);
    }
    out.values[t] = acc / bc.n();
  });
  return out;
}

TailEstimate tail_probability(const SpectrumSample& s, double threshold,
                              TailSide side) {
  if (s.values.empty()) throw ShapeMismatch("empty spectrum sample");
  std::int64_t hits = 0;
  for (double v : s.values) {
    if (side == TailSide::Above ? v > threshold : v < threshold) ++hits;
  }
  const double n = static_cast<double>(s.values.size());
  const double p = hits / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

namespace {

// Empirical quantile at level alpha: the ceil(alpha*N)-th order statistic.
// -inf values sort below every finite value.
double quantile_sorted(const std::vector<double>& sorted, double alpha) {
  const auto n = static_cast<std::int64_t>(sorted.size());
  auto k = static_cast<std::int64_t>(std::ceil(alpha * n)) - 1;
  k = std::clamp<std::int64_t>(k, 0, n - 1);
  return sorted[k];
}

}  // namespace

RateEstimate estimate_rate(const SpectrumSample& s, RateDirection direction,
                           double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw EpsilonOutOfRange("epsilon must lie in (0, 0.5)");
  const double alpha =
      direction == RateDirection::SupRate ? 1.0 - epsilon : epsilon;
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  RateEstimate est;
  est.point = quantile_sorted(sorted, alpha);
  est.epsilon = epsilon;
  est.n = s.n;
  est.direction = direction;

  constexpr int kResamples = 200;
  const auto n = static_cast<std::int64_t>(sorted.size());
  std::vector<double> boot(kResamples);
  std::vector<double> resample(n);
  for (int r = 0; r < kResamples; ++r) {
    Rng rng(s.seed, 1 + (direction == RateDirection::SupRate ? 1 : 0),
            static_cast<std::uint64_t>(r));
    for (std::int64_t i = 0; i < n; ++i)
      resample[i] = sorted[rng.next_below(static_cast<std::uint64_t>(n))];
    std::sort(resample.begin(), resample.end());
    boot[r] = quantile_sorted(resample, alpha);
  }
  double mean = 0.0;
  for (double b : boot) mean += b;
  mean /= kResamples;
  double var = 0.0;
  for (double b : boot) var += (b - mean) * (b - mean);
  est.std_error = std::sqrt(var / kResamples);
  return est;
}

SpectralQuantities exact_mutual_informations(const MacWiretapChannel& ch,
                                             const InputDistribution& p1,
                                             const InputDistribution& p2) {
  const JointDistribution joint = induced_joint(ch, p1, p2);
  SpectralQuantities q;
  q.x1_y_given_x2 = cond_mutual_information(joint.marginal({0, 2, 1}));
  q.x2_y_given_x1 = cond_mutual_information(joint.marginal({1, 2, 0}));
  q.x1x2_y = mutual_information(joint.collapsed({{0, 1}, {2}}));
  q.x1_z = mutual_information(joint.marginal({0, 3}));
  q.x2_z = mutual_information(joint.marginal({1, 3}));
  q.x1x2_z = mutual_information(joint.collapsed({{0, 1}, {3}}));
  return q;
}

void write_spectrum_csv(const SpectrumSample& s, std::ostream& out) {
  out << "trial_index,value_nats\n";
  out.precision(17);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    out << i << ',';
    if (s.values[i] == kNegInf)
      out << "-inf";
    else
      out << s.values[i];
    out << '\n';
  }
}

}  // namespace macwt
