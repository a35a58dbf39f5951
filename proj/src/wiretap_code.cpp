#include "macwt/wiretap_code.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "macwt/parallel.hpp"

namespace macwt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-letter log tables for the decoder's reference densities.
struct DecoderTables {
  int sy;
  std::vector<double> log_joint;  // (x1, x2, y)
  std::vector<double> log_g1;     // (x1, y):  p(y|x1) under p2
  std::vector<double> log_g2;     // (x2, y):  p(y|x2) under p1
  std::vector<double> log_out;    // (y):      p(y) under p1 x p2

  DecoderTables(const MacWiretapChannel& ch, const InputDistribution& p1,
                const InputDistribution& p2)
      : sy(ch.y().size) {
    const int s1 = ch.x1().size, s2 = ch.x2().size;
    log_joint.assign(static_cast<std::size_t>(s1) * s2 * sy, kNegInf);
    log_g1.assign(static_cast<std::size_t>(s1) * sy, kNegInf);
    log_g2.assign(static_cast<std::size_t>(s2) * sy, kNegInf);
    log_out.assign(sy, kNegInf);
    std::vector<double> g1(log_g1.size(), 0.0), g2(log_g2.size(), 0.0),
        out(sy, 0.0);
    for (int a = 0; a < s1; ++a)
      for (int b = 0; b < s2; ++b)
        for (int y = 0; y < sy; ++y) {
          const double p = ch.main_prob(y, a, b);
          log_joint[(static_cast<std::size_t>(a) * s2 + b) * sy + y] =
              p > 0.0 ? std::log(p) : kNegInf;
          g1[static_cast<std::size_t>(a) * sy + y] += p2.prob(b) * p;
          g2[static_cast<std::size_t>(b) * sy + y] += p1.prob(a) * p;
          out[y] += p1.prob(a) * p2.prob(b) * p;
        }
    for (std::size_t i = 0; i < g1.size(); ++i)
      log_g1[i] = g1[i] > 0.0 ? std::log(g1[i]) : kNegInf;
    for (std::size_t i = 0; i < g2.size(); ++i)
      log_g2[i] = g2[i] > 0.0 ? std::log(g2[i]) : kNegInf;
    for (int y = 0; y < sy; ++y)
      log_out[y] = out[y] > 0.0 ? std::log(out[y]) : kNegInf;
  }
};

// Strict threshold test on (1/n)(num - den) > thr with explicit zero-mass
// branches: a zero joint never passes, a zero reference density always does.
bool density_exceeds(double log_num, double log_den, int n, double thr) {
  if (log_num == kNegInf) return false;
  if (log_den == kNegInf) return true;
  return (log_num - log_den) / n > thr;
}

double ceil_with_tol(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return r;
  return std::ceil(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// WiretapCodebook

WiretapCodebook::WiretapCodebook(InputDistribution source, int n,
                                 std::int64_t m, std::int64_t m_aux,
                                 std::uint64_t seed, int user,
                                 std::vector<int> words)
    : user_(user),
      n_(n),
      m_(m),
      m_aux_(m_aux),
      seed_(seed),
      source_(std::move(source)),
      words_(std::move(words)) {}

WiretapCodebook WiretapCodebook::generate(const InputDistribution& source,
                                          int n, std::int64_t m,
                                          std::int64_t m_aux,
                                          std::uint64_t seed, int user) {
  if (n < 1) throw ShapeMismatch("codeword length must be >= 1");
  if (m < 1 || m_aux < 1) throw ShapeMismatch("message counts must be >= 1");
  const std::int64_t rows = m * m_aux;
  std::vector<int> words(static_cast<std::size_t>(rows) * n);
  for (std::int64_t w = 0; w < rows; ++w) {
    Rng rng(seed, 2, static_cast<std::uint64_t>(w));
    for (int t = 0; t < n; ++t)
      words[static_cast<std::size_t>(w) * n + t] = source.sample(rng);
  }
  return WiretapCodebook(source, n, m, m_aux, seed, user, std::move(words));
}

std::span<const int> WiretapCodebook::word(const MessageIndex& m) const {
  if (m.private_index < 1 || m.private_index > m_)
    throw IndexOutOfRange("private index " + std::to_string(m.private_index));
  if (m.auxiliary_index < 1 || m.auxiliary_index > m_aux_)
    throw IndexOutOfRange("auxiliary index " +
                          std::to_string(m.auxiliary_index));
  return word_flat((m.private_index - 1) * m_aux_ + (m.auxiliary_index - 1));
}

std::span<const int> WiretapCodebook::word_flat(std::int64_t flat) const {
  if (flat < 0 || flat >= word_count())
    throw IndexOutOfRange("codeword row " + std::to_string(flat));
  return {words_.data() + static_cast<std::size_t>(flat) * n_,
          static_cast<std::size_t>(n_)};
}

void WiretapCodebook::write(std::ostream& out) const {
  out << "macwt-codebook v1\n";
  out << "user " << user_ << "\n";
  out << "n " << n_ << "\n";
  out << "M " << m_ << "\n";
  out << "M_aux " << m_aux_ << "\n";
  out << "seed " << seed_ << "\n";
  out << "source";
  out << std::setprecision(17);
  for (double p : source_.probs()) out << ' ' << p;
  out << "\n";
  for (std::int64_t w = 0; w < word_count(); ++w) {
    const auto row = word_flat(w);
    for (int t = 0; t < n_; ++t) out << (t ? " " : "") << row[t];
    out << "\n";
  }
}

WiretapCodebook WiretapCodebook::read(std::istream& in) {
  auto fail = [](const std::string& what) -> void {
    throw IoError("codebook parse error: " + what);
  };
  std::string line;
  if (!std::getline(in, line) || line != "macwt-codebook v1")
    fail("bad magic line");
  auto read_kv = [&](const std::string& key) -> std::string {
    if (!std::getline(in, line)) fail("missing field " + key);
    std::istringstream ss(line);
    std::string k;
    ss >> k;
    if (k != key) fail("expected field " + key + ", got " + k);
    std::string rest;
    std::getline(ss, rest);
    return rest;
  };
  const int user = std::stoi(read_kv("user"));
  const int n = std::stoi(read_kv("n"));
  const std::int64_t m = std::stoll(read_kv("M"));
  const std::int64_t m_aux = std::stoll(read_kv("M_aux"));
  const std::uint64_t seed = std::stoull(read_kv("seed"));
  std::istringstream src(read_kv("source"));
  std::vector<double> probs;
  double p;
  while (src >> p) probs.push_back(p);
  if (probs.empty()) fail("empty source distribution");
  InputDistribution source({static_cast<int>(probs.size())}, probs);

  std::vector<int> words;
  words.reserve(static_cast<std::size_t>(m) * m_aux * n);
  for (std::int64_t w = 0; w < m * m_aux; ++w) {
    if (!std::getline(in, line)) fail("missing codeword row");
    std::istringstream row(line);
    int sym;
    int count = 0;
    while (row >> sym) {
      if (sym < 0 || sym >= source.size()) fail("symbol out of range");
      words.push_back(sym);
      ++count;
    }
    if (count != n) fail("codeword row has wrong length");
  }
  return WiretapCodebook(std::move(source), n, m, m_aux, seed, user,
                         std::move(words));
}

// ---------------------------------------------------------------------------
// Rates and counts

Counts counts_from_rates(const RateTuple& rt, int n, std::int64_t budget) {
  if (n < 1) throw ShapeMismatch("block length must be >= 1");
  if (!(rt.gamma > 0.0)) throw NonpositiveMu("gamma must be > 0");
  for (double r : {rt.r1, rt.r2, rt.r1_aux, rt.r2_aux})
    if (r < 0.0) throw ProbabilityOutOfRange("rates must be >= 0");
  auto count = [&](double rate, const char* which) -> std::int64_t {
    const double expo = n * (rate - 2.0 * rt.gamma);
    if (expo > std::log(static_cast<double>(budget)) + 1.0)
      throw Overflow(std::string(which) + " count exceeds enumeration budget");
    const double c = ceil_with_tol(std::exp(expo));
    const auto v = static_cast<std::int64_t>(std::max(1.0, c));
    if (v > budget)
      throw Overflow(std::string(which) + " count exceeds enumeration budget");
    return v;
  };
  return {count(rt.r1, "M1"), count(rt.r2, "M2"), count(rt.r1_aux, "M1_aux"),
          count(rt.r2_aux, "M2_aux")};
}

std::span<const int> encode(const WiretapCodebook& cb, const MessageIndex& m) {
  return cb.word(m);
}

// ---------------------------------------------------------------------------
// Threshold decoding

std::vector<std::pair<MessageIndex, MessageIndex>> admissible_pairs(
    std::span<const int> y_vec, const WiretapCodebook& cb1,
    const WiretapCodebook& cb2, const BlockChannel& bc,
    const InputDistribution& p1, const InputDistribution& p2,
    const RateTuple& rt, std::int64_t stop_after) {
  const int n = bc.n();
  if (static_cast<int>(y_vec.size()) != n)
    throw LengthMismatch("received word length " +
                         std::to_string(y_vec.size()));
  if (cb1.n() != n || cb2.n() != n)
    throw LengthMismatch("codebook block length does not match channel");
  for (int s : y_vec)
    if (s < 0 || s >= bc.base().y().size)
      throw SymbolOutOfRange("received symbol " + std::to_string(s));

  const DecoderTables tab(bc.base(), p1, p2);
  const double log_m1 =
      std::log(static_cast<double>(cb1.m()) * static_cast<double>(cb1.m_aux()));
  const double log_m2 =
      std::log(static_cast<double>(cb2.m()) * static_cast<double>(cb2.m_aux()));
  const double thr1 = log_m1 / n + rt.gamma;
  const double thr2 = log_m2 / n + rt.gamma;
  const double thr12 = (log_m1 + log_m2) / n + rt.gamma;

  // Reference-density scores depend on one codeword at a time.
  auto word_score = [&](std::span<const int> w, const std::vector<double>& tbl,
                        int stride) {
    double acc = 0.0;
    for (int t = 0; t < n; ++t) {
      const double v = tbl[static_cast<std::size_t>(w[t]) * stride + y_vec[t]];
      if (v == kNegInf) return kNegInf;
      acc += v;
    }
    return acc;
  };
  std::vector<double> s1(cb1.word_count());
  for (std::int64_t w = 0; w < cb1.word_count(); ++w)
    s1[w] = word_score(cb1.word_flat(w), tab.log_g1, tab.sy);
  std::vector<double> s2(cb2.word_count());
  for (std::int64_t w = 0; w < cb2.word_count(); ++w)
    s2[w] = word_score(cb2.word_flat(w), tab.log_g2, tab.sy);
  double s_out = 0.0;
  for (int t = 0; t < n; ++t) {
    const double v = tab.log_out[y_vec[t]];
    s_out = (v == kNegInf || s_out == kNegInf) ? kNegInf : s_out + v;
  }

  const int sy = tab.sy;
  const int s2size = bc.base().x2().size;
  std::vector<std::pair<MessageIndex, MessageIndex>> found;
  for (std::int64_t w1 = 0; w1 < cb1.word_count(); ++w1) {
    const auto word1 = cb1.word_flat(w1);
    for (std::int64_t w2 = 0; w2 < cb2.word_count(); ++w2) {
      const auto word2 = cb2.word_flat(w2);
      double sj = 0.0;
      for (int t = 0; t < n; ++t) {
        const double v =
            tab.log_joint[(static_cast<std::size_t>(word1[t]) * s2size +
                           word2[t]) *
                              sy +
                          y_vec[t]];
        if (v == kNegInf) {
          sj = kNegInf;
          break;
        }
        sj += v;
      }
      if (!density_exceeds(sj, s2[w2], n, thr1)) continue;
      if (!density_exceeds(sj, s1[w1], n, thr2)) continue;
      if (!density_exceeds(sj, s_out, n, thr12)) continue;
      found.push_back({{w1 / cb1.m_aux() + 1, w1 % cb1.m_aux() + 1},
                       {w2 / cb2.m_aux() + 1, w2 % cb2.m_aux() + 1}});
      if (stop_after > 0 &&
          static_cast<std::int64_t>(found.size()) >= stop_after)
        return found;
    }
  }
  return found;
}

DecodeOutcome threshold_decode(std::span<const int> y_vec,
                               const WiretapCodebook& cb1,
                               const WiretapCodebook& cb2,
                               const BlockChannel& bc,
                               const InputDistribution& p1,
                               const InputDistribution& p2,
                               const RateTuple& rt) {
  const auto pairs = admissible_pairs(y_vec, cb1, cb2, bc, p1, p2, rt, 2);
  DecodeOutcome out;
  if (pairs.empty()) {
    out.status = DecodeOutcome::Status::NoCandidate;
  } else if (pairs.size() > 1) {
    out.status = DecodeOutcome::Status::NotUnique;
  } else {
    out.status = DecodeOutcome::Status::Decoded;
    out.m1 = pairs[0].first;
    out.m2 = pairs[0].second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Error probability

double error_probability_exact(const WiretapCodebook& cb1,
                               const WiretapCodebook& cb2,
                               const BlockChannel& bc,
                               const InputDistribution& p1,
                               const InputDistribution& p2,
                               const RateTuple& rt, std::int64_t budget) {
  const int n = bc.n();
  const int sy = bc.base().y().size;
  double space = 1.0;
  for (int t = 0; t < n; ++t) space *= sy;
  const double terms = space * static_cast<double>(cb1.word_count()) *
                       static_cast<double>(cb2.word_count());
  if (terms > static_cast<double>(budget))
    throw BudgetExceeded("exact error probability needs " +
                         std::to_string(terms) + " terms");

  const double uniform = 1.0 / (static_cast<double>(cb1.word_count()) *
                                static_cast<double>(cb2.word_count()));
  double correct = 0.0;
  std::vector<int> y(n, 0);
  const std::vector<Alphabet> axes(n, bc.base().y());
  do {
    const auto outcome = threshold_decode(y, cb1, cb2, bc, p1, p2, rt);
    if (!outcome.ok()) continue;
    const double lp =
        bc.log_main_block(y, cb1.word(outcome.m1), cb2.word(outcome.m2));
    if (lp != kNegInf) correct += uniform * std::exp(lp);
  } while (next_index(y, axes));
  return std::clamp(1.0 - correct, 0.0, 1.0);
}

MonteCarloEstimate error_probability_mc(const WiretapCodebook& cb1,
                                        const WiretapCodebook& cb2,
                                        const BlockChannel& bc,
                                        const InputDistribution& p1,
                                        const InputDistribution& p2,
                                        const RateTuple& rt,
                                        std::int64_t trials,
                                        std::uint64_t seed, int jobs) {
  if (trials < 1) throw ShapeMismatch("trials must be >= 1");
  const int n = bc.n();
  const auto& ch = bc.base();
  const int s1 = ch.x1().size, s2 = ch.x2().size, sy = ch.y().size;
  // Per-(x1,x2) cdf over y for the main channel.
  std::vector<double> cdf(static_cast<std::size_t>(s1) * s2 * sy);
  for (int a = 0; a < s1; ++a)
    for (int b = 0; b < s2; ++b) {
      double acc = 0.0;
      for (int y = 0; y < sy; ++y) {
        acc += ch.main_prob(y, a, b);
        cdf[(static_cast<std::size_t>(a) * s2 + b) * sy + y] = acc;
      }
      cdf[(static_cast<std::size_t>(a) * s2 + b) * sy + sy - 1] = 1.0;
    }

  std::vector<char> errs(trials, 0);
  parallel_for(trials, jobs, [&](std::int64_t trial) {
    Rng rng(seed, 3, static_cast<std::uint64_t>(trial));
    const MessageIndex m1{
        static_cast<std::int64_t>(rng.next_below(cb1.m())) + 1,
        static_cast<std::int64_t>(rng.next_below(cb1.m_aux())) + 1};
    const MessageIndex m2{
        static_cast<std::int64_t>(rng.next_below(cb2.m())) + 1,
        static_cast<std::int64_t>(rng.next_below(cb2.m_aux())) + 1};
    const auto w1 = cb1.word(m1);
    const auto w2 = cb2.word(m2);
    std::vector<int> y(n);
    for (int t = 0; t < n; ++t) {
      const double u = rng.next_unit();
      const double* row =
          &cdf[(static_cast<std::size_t>(w1[t]) * s2 + w2[t]) * sy];
      int sym = sy - 1;
      for (int v = 0; v < sy; ++v)
        if (u < row[v]) {
          sym = v;
          break;
        }
      y[t] = sym;
    }
    const auto outcome = threshold_decode(y, cb1, cb2, bc, p1, p2, rt);
    errs[trial] = !(outcome.ok() && outcome.m1 == m1 && outcome.m2 == m2);
  });
  std::int64_t bad = 0;
  for (char e : errs) bad += e;
  const double est = static_cast<double>(bad) / trials;
  return {est, std::sqrt(est * (1.0 - est) / trials), trials};
}

}  // namespace macwt
