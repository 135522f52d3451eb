// Degree (mark) distributions on {1,2,...}: deterministic, geometric, zipf,
// explicit tables, and the cap-truncated variant that moves all tail mass to
// the cap. Means are exact; zipf with s <= 2 has infinite mean.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "stubmatch/core.hpp"
#include "stubmatch/rng.hpp"

namespace stubmatch {

class MarkLaw {
 public:
  struct Deterministic {
    std::int64_t k;
  };
  struct Geometric {
    double p;  // P(j) = p (1-p)^(j-1) on {1,2,...}
  };
  struct Zipf {
    double s;  // P(j) proportional to j^-s, s > 1
  };
  struct Explicit {
    std::vector<double> pmf;  // pmf[i] = P(i+1)
  };
  struct Truncated {
    std::shared_ptr<const MarkLaw> base;
    std::int64_t cap;  // pmf matches base below cap, P(base >= cap) sits at cap
  };

  using Variant = std::variant<Deterministic, Geometric, Zipf, Explicit, Truncated>;

  static MarkLaw deterministic(std::int64_t k) {
    if (k < 1) throw ValidationError("deterministic law: k must be >= 1");
    return MarkLaw(Deterministic{k});
  }

  static MarkLaw geometric(double p) {
    if (!(p > 0.0) || p > 1.0) throw ValidationError("geometric law: need 0 < p <= 1");
    return MarkLaw(Geometric{p});
  }

  static MarkLaw zipf(double s) {
    if (!(s > 1.0)) throw ValidationError("zipf law: need s > 1 for a normalizable pmf");
    return MarkLaw(Zipf{s});
  }

  static MarkLaw explicit_pmf(std::vector<double> pmf) {
    if (pmf.empty()) throw ValidationError("explicit law: empty pmf");
    long double sum = 0.0L;
    for (double p : pmf) {
      if (!(p >= 0.0)) throw ValidationError("explicit law: negative mass");
      sum += p;
    }
    if (std::fabs(static_cast<double>(sum) - 1.0) > 1e-12)
      throw ValidationError("explicit law: pmf must sum to 1 within 1e-12");
    return MarkLaw(Explicit{std::move(pmf)});
  }

  static MarkLaw truncated(MarkLaw base, std::int64_t cap) {
    if (cap < 1) throw ValidationError("truncated law: cap must be >= 1");
    return MarkLaw(Truncated{std::make_shared<const MarkLaw>(std::move(base)), cap});
  }

  const Variant& variant() const { return v_; }

  /// Exact expectation; +infinity for zipf with s <= 2.
  double mean() const {
    return std::visit(
        [this](const auto& law) -> double {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, Deterministic>) {
            return static_cast<double>(law.k);
          } else if constexpr (std::is_same_v<T, Geometric>) {
            return 1.0 / law.p;
          } else if constexpr (std::is_same_v<T, Zipf>) {
            if (law.s <= 2.0) return std::numeric_limits<double>::infinity();
            return std::riemann_zeta(law.s - 1.0) / std::riemann_zeta(law.s);
          } else if constexpr (std::is_same_v<T, Explicit>) {
            long double m = 0.0L;
            for (std::size_t i = 0; i < law.pmf.size(); ++i)
              m += static_cast<long double>(i + 1) * law.pmf[i];
            return static_cast<double>(m);
          } else {
            // Truncated: sum_{j<cap} j p(j) + cap * P(base >= cap). Always finite.
            long double m = 0.0L;
            for (std::int64_t j = 1; j < law.cap; ++j)
              m += static_cast<long double>(j) * law.base->pmf(j);
            m += static_cast<long double>(law.cap) * law.base->tail_geq(law.cap);
            return static_cast<double>(m);
          }
        },
        v_);
  }

  bool has_infinite_mean() const { return std::isinf(mean()); }

  /// P(X = j), exact up to rounding.
  double pmf(std::int64_t j) const {
    if (j < 1) return 0.0;
    return std::visit(
        [j](const auto& law) -> double {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, Deterministic>) {
            return j == law.k ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, Geometric>) {
            return law.p * std::pow(1.0 - law.p, static_cast<double>(j - 1));
          } else if constexpr (std::is_same_v<T, Zipf>) {
            return std::pow(static_cast<double>(j), -law.s) / std::riemann_zeta(law.s);
          } else if constexpr (std::is_same_v<T, Explicit>) {
            return j <= static_cast<std::int64_t>(law.pmf.size()) ? law.pmf[j - 1] : 0.0;
          } else {
            if (j < law.cap) return law.base->pmf(j);
            if (j == law.cap) return law.base->tail_geq(law.cap);
            return 0.0;
          }
        },
        v_);
  }

  /// P(X >= j). O(j) for zipf; fine for the moderate caps used here.
  double tail_geq(std::int64_t j) const {
    if (j <= 1) return 1.0;
    return std::visit(
        [this, j](const auto& law) -> double {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, Deterministic>) {
            return j <= law.k ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, Geometric>) {
            return std::pow(1.0 - law.p, static_cast<double>(j - 1));
          } else if constexpr (std::is_same_v<T, Zipf>) {
            long double head = 0.0L;
            for (std::int64_t i = 1; i < j; ++i)
              head += std::pow(static_cast<double>(i), -law.s);
            const long double total = std::riemann_zeta(law.s);
            return static_cast<double>((total - head) / total);
          } else if constexpr (std::is_same_v<T, Explicit>) {
            long double tail = 0.0L;
            for (std::int64_t i = j; i <= static_cast<std::int64_t>(law.pmf.size()); ++i)
              tail += law.pmf[i - 1];
            return static_cast<double>(tail);
          } else {
            if (j > law.cap) return 0.0;
            return law.base->tail_geq(j);
          }
        },
        v_);
  }

  /// Largest support value, if the law is bounded.
  std::optional<std::int64_t> support_max() const {
    return std::visit(
        [](const auto& law) -> std::optional<std::int64_t> {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, Deterministic>) {
            return law.k;
          } else if constexpr (std::is_same_v<T, Explicit>) {
            for (std::size_t i = law.pmf.size(); i > 0; --i)
              if (law.pmf[i - 1] > 0.0) return static_cast<std::int64_t>(i);
            return 1;
          } else if constexpr (std::is_same_v<T, Truncated>) {
            return law.cap;
          } else {
            return std::nullopt;
          }
        },
        v_);
  }

 private:
  explicit MarkLaw(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Draws marks from a MarkLaw. Zipf uses an inverse-CDF table up to 10^6
/// with a rounded analytic Pareto tail beyond; the tail discretization is
/// off by < 1e-9 in total variation for s >= 1.5.
class MarkSampler {
 public:
  static constexpr std::int64_t kZipfTableMax = 1'000'000;

  explicit MarkSampler(const MarkLaw& law) : law_(law) {
    std::visit(
        [this](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, MarkLaw::Zipf>) {
            build_zipf_table(l.s);
          } else if constexpr (std::is_same_v<T, MarkLaw::Explicit>) {
            long double acc = 0.0L;
            cum_.reserve(l.pmf.size());
            for (double p : l.pmf) {
              acc += p;
              cum_.push_back(static_cast<double>(acc));
            }
          } else if constexpr (std::is_same_v<T, MarkLaw::Truncated>) {
            base_ = std::make_unique<MarkSampler>(*l.base);
          }
        },
        law_.variant());
  }

  std::int64_t operator()(RngStream& rng) const {
    return std::visit(
        [this, &rng](const auto& l) -> std::int64_t {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, MarkLaw::Deterministic>) {
            return l.k;
          } else if constexpr (std::is_same_v<T, MarkLaw::Geometric>) {
            if (l.p >= 1.0) return 1;
            const double u = rng.next_double();
            const double x = std::ceil(std::log1p(-u) / std::log1p(-l.p));
            return x < 1.0 ? 1 : static_cast<std::int64_t>(x);
          } else if constexpr (std::is_same_v<T, MarkLaw::Zipf>) {
            return sample_zipf(rng, l.s);
          } else if constexpr (std::is_same_v<T, MarkLaw::Explicit>) {
            const double u = rng.next_double();
            auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
            if (it == cum_.end()) --it;
            return 1 + static_cast<std::int64_t>(it - cum_.begin());
          } else {
            // min(base, cap) has exactly the truncated pmf.
            return std::min((*base_)(rng), l.cap);
          }
        },
        law_.variant());
  }

 private:
  void build_zipf_table(double s) {
    const long double zeta = std::riemann_zeta(s);
    cum_.resize(kZipfTableMax);
    long double acc = 0.0L;
    for (std::int64_t j = 1; j <= kZipfTableMax; ++j) {
      acc += std::pow(static_cast<double>(j), -s);
      cum_[j - 1] = static_cast<double>(acc / zeta);
    }
  }

  std::int64_t sample_zipf(RngStream& rng, double s) const {
    const double u = rng.next_double();
    const double head = cum_.back();
    if (u < head) {
      const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
      return 1 + static_cast<std::int64_t>(it - cum_.begin());
    }
    // Conditional law beyond the table: Pareto started at K+1/2, rounded.
    const double v = (1.0 - u) / (1.0 - head);  // in (0,1]
    const double x =
        (static_cast<double>(kZipfTableMax) + 0.5) * std::pow(v, -1.0 / (s - 1.0)) + 0.5;
    constexpr double kMax = 4.0e18;
    return x >= kMax ? static_cast<std::int64_t>(kMax) : static_cast<std::int64_t>(x);
  }

  const MarkLaw law_;
  std::vector<double> cum_;
  std::unique_ptr<MarkSampler> base_;
};

/// Alternating truncation caps (J_i, K_i) for a pair of infinite-mean laws:
/// strictly increasing, with lambda_B E[Y_i] >= lambda_R E[X_i] on odd stages
/// and the reverse on even stages. Greedy-minimal: each stage starts one above
/// the previous caps and raises the deficient side's cap until its inequality
/// holds.
inline std::vector<std::pair<std::int64_t, std::int64_t>> choose_truncations(
    const MarkLaw& red_law, const MarkLaw& blue_law, double lambda_red, double lambda_blue,
    int stages) {
  if (stages < 1) throw ValidationError("choose_truncations: stages must be >= 1");
  if (!red_law.has_infinite_mean() || !blue_law.has_infinite_mean())
    throw ValidationError(
        "choose_truncations: both laws must have infinite mean (finite means use the "
        "plain stable multi-matching)");
  constexpr std::int64_t kCapLimit = 10'000'000;
  std::vector<std::pair<std::int64_t, std::int64_t>> caps;
  std::int64_t j = 0, k = 0;
  for (int i = 1; i <= stages; ++i) {
    ++j;
    ++k;
    const bool odd = (i % 2) == 1;
    auto red_side = [&] { return lambda_red * MarkLaw::truncated(red_law, j).mean(); };
    auto blue_side = [&] { return lambda_blue * MarkLaw::truncated(blue_law, k).mean(); };
    if (odd) {
      while (blue_side() < red_side()) {
        if (++k > kCapLimit) throw ValidationError("choose_truncations: cap limit exceeded");
      }
    } else {
      while (red_side() < blue_side()) {
        if (++j > kCapLimit) throw ValidationError("choose_truncations: cap limit exceeded");
      }
    }
    caps.emplace_back(j, k);
  }
  return caps;
}

}  // namespace stubmatch
