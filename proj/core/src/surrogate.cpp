// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dataval/surrogate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dataval/errors.hpp"
#include "dataval/rng.hpp"
#include "dataval/semivalues.hpp"

namespace dataval {

namespace {

double log_choose(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Gaussian elimination with partial pivoting; a: m x m row-major, b: m.
// Throws NumericalFailure with a pivot diagnostic on singular systems.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b,
                                std::size_t m) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * m + col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double v = std::abs(a[r * m + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (!(best > scale * 1e-14)) {
      throw NumericalFailure("fit_wls: reduced system singular (pivot " +
                             std::to_string(best) + " vs scale " + std::to_string(scale) +
                             ")");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[col * m + c], a[pivot * m + c]);
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a[col * m + col];
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r * m + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(m);
  for (std::size_t r = m; r-- > 0;) {
    double v = b[r];
    for (std::size_t c = r + 1; c < m; ++c) v -= a[r * m + c] * x[c];
    x[r] = v / a[r * m + r];
  }
  return x;
}

// Accumulates the constraint-eliminated normal equations. With the last
// coefficient substituted as θ_{n-1} = T - Σ_{j<n-1} θ_j, each subset row
// contributes design d_j = [j∈S] - [n-1∈S] and target z = y - [n-1∈S]·T.
class ReducedSystem {
 public:
  ReducedSystem(std::size_t n, double constraint_total)
      : n_(n), m_(n - 1), total_(constraint_total), a_(m_ * m_, 0.0), b_(m_, 0.0) {}

  void add(const SubsetMask& s, double y, double w) {
    const bool has_last = s.test(n_ - 1);
    const double z = y - (has_last ? total_ : 0.0);
    thread_local std::vector<double> d;
    d.assign(m_, has_last ? -1.0 : 0.0);
    s.for_each([&](std::size_t i) {
      if (i < m_) d[i] += 1.0;
    });
    for (std::size_t r = 0; r < m_; ++r) {
      if (d[r] == 0.0) continue;
      const double wr = w * d[r];
      b_[r] += wr * z;
      for (std::size_t c = 0; c < m_; ++c) {
        if (d[c] != 0.0) a_[r * m_ + c] += wr * d[c];
      }
    }
  }

  std::vector<double> solve(double ridge) {
    for (std::size_t r = 0; r < m_; ++r) a_[r * m_ + r] += ridge;
    std::vector<double> phi = solve_dense(a_, b_, m_);
    phi.resize(n_);
    double sum = 0.0;
    for (std::size_t j = 0; j < m_; ++j) sum += phi[j];
    phi[n_ - 1] = total_ - sum;
    return phi;
  }

  double residual_term(const SubsetMask& s, double y, double w,
                       const std::vector<double>& theta) const {
    double pred = 0.0;
    s.for_each([&](std::size_t i) { pred += theta[i]; });
    const double r = y - pred;
    return w * r * r;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  double total_;
  std::vector<double> a_;
  std::vector<double> b_;
};

}  // namespace

WlsKernel WlsKernel::shapley() {
  return {"shapley", [](std::size_t s, std::size_t n) {
            const double dn = static_cast<double>(n);
            const double ds = static_cast<double>(s);
            return std::exp(std::log(dn - 1.0) - log_choose(n, s)) / (ds * (dn - ds));
          }};
}

WlsKernel WlsKernel::parse(std::string_view spec) {
  if (spec == "shapley") return shapley();
  if (spec == "shapley-binom") {
    return {"shapley-binom", [](std::size_t s, std::size_t n) {
              return std::exp(-log_choose(n - 1, s - 1));
            }};
  }
  if (spec == "banzhaf") {
    return {"banzhaf", [](std::size_t s, std::size_t) {
              return std::ldexp(1.0, -static_cast<int>(s));
            }};
  }
  constexpr std::string_view prefix = "beta:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const SemiValueScheme scheme = SemiValueScheme::parse(spec);
    return {std::string(spec), [scheme](std::size_t s, std::size_t n) {
              return scheme_weight(scheme, s, n);
            }};
  }
  throw InvalidInput("unknown wls kernel: " + std::string(spec));
}

LinearSurrogate fit_wls(const UtilityFunction& u, const WlsKernel& kernel,
                        const FitOptions& opt) {
  const std::size_t n = u.population();
  if (n < 2) throw InvalidInput("fit_wls: needs population >= 2");
  for (std::size_t s = 1; s < n; ++s) {
    if (!(kernel.weight(s, n) > 0.0)) {
      throw InvalidInput("fit_wls: kernel must be positive on sizes 1..n-1");
    }
  }

  const double u_empty = u.eval(SubsetMask(n));
  const double u_full = u.eval(SubsetMask::full(n));
  const double total = u_full - u_empty;

  LinearSurrogate out;
  out.kernel_id = kernel.id;
  ReducedSystem system(n, total);

  if (!opt.samples.has_value()) {
    if (n > opt.exhaustive_cap) {
      throw ResourceLimit("fit_wls: population " + std::to_string(n) +
                          " exceeds exhaustive cap " + std::to_string(opt.exhaustive_cap));
    }
    const std::uint64_t slots = std::uint64_t{1} << n;
    std::vector<double> target(slots, 0.0);
    for (std::uint64_t m = 1; m + 1 < slots; ++m) {
      const SubsetMask s = SubsetMask::from_bits(m, n);
      target[m] = u.eval(s) - u_empty;  // centering; the multiplier absorbs offsets
      system.add(s, target[m], kernel.weight(std::popcount(m), n));
    }
    out.theta = system.solve(opt.ridge);
    for (std::uint64_t m = 1; m + 1 < slots; ++m) {
      out.residual += system.residual_term(SubsetMask::from_bits(m, n), target[m],
                                           kernel.weight(std::popcount(m), n), out.theta);
    }
    return out;
  }

  // Sampled mode: sizes drawn proportional to kernel mass w(s)·C(n,s), then
  // a uniform subset of that size; the empirical problem is unweighted.
  const std::size_t m_samples = *opt.samples;
  if (m_samples == 0) throw InvalidInput("fit_wls: sampled mode needs samples >= 1");
  std::vector<double> log_mass(n - 1);
  double max_log = -1e300;
  for (std::size_t s = 1; s < n; ++s) {
    log_mass[s - 1] = std::log(kernel.weight(s, n)) + log_choose(n, s);
    max_log = std::max(max_log, log_mass[s - 1]);
  }
  std::vector<double> cdf(n - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < n - 1; ++i) {
    acc += std::exp(log_mass[i] - max_log);
    cdf[i] = acc;
  }

  Rng rng(opt.seed);
  std::vector<SubsetMask> drawn;
  std::vector<double> targets;
  drawn.reserve(m_samples);
  targets.reserve(m_samples);
  for (std::size_t t = 0; t < m_samples; ++t) {
    const double r = rng.uniform() * acc;
    std::size_t s = 1;
    while (s < n - 1 && cdf[s - 1] < r) ++s;
    SubsetMask mask(n);
    for (std::size_t i : rng.sample_indices(n, s)) mask.set(i);
    const double y = u.eval(mask) - u_empty;
    system.add(mask, y, 1.0);
    drawn.push_back(std::move(mask));
    targets.push_back(y);
  }
  out.theta = system.solve(opt.ridge);
  for (std::size_t t = 0; t < m_samples; ++t) {
    out.residual += system.residual_term(drawn[t], targets[t], 1.0, out.theta);
  }
  return out;
}

std::vector<std::size_t> myopic_sequence(const LinearSurrogate& surrogate) {
  return rank_by_value(std::span<const double>(surrogate.theta));
}

}  // namespace dataval
