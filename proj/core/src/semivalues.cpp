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

#include "dataval/semivalues.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <charconv>

#include "dataval/errors.hpp"
#include "dataval/parallel.hpp"
#include "dataval/rng.hpp"

namespace dataval {

namespace {

double parse_positive_double(std::string_view text, const char* what) {
  double out = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !(out > 0.0)) {
    throw InvalidInput(std::string("scheme: invalid ") + what + " parameter");
  }
  return out;
}

// log C(n, k)
double log_choose(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Exact C(n, k) as a double for small n.
double choose_small(std::size_t n, std::size_t k) {
  double c = 1.0;
  if (k > n - k) k = n - k;
  for (std::size_t j = 1; j <= k; ++j) {
    c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return c;
}

double beta_log_weight(double alpha, double beta, std::size_t s, std::size_t n) {
  // log B(s+β, n-1-s+α) - log B(β, α)
  const double ds = static_cast<double>(s);
  const double dn = static_cast<double>(n);
  return std::lgamma(ds + beta) + std::lgamma(dn - 1.0 - ds + alpha) -
         std::lgamma(dn - 1.0 + alpha + beta) -
         (std::lgamma(beta) + std::lgamma(alpha) - std::lgamma(alpha + beta));
}

std::vector<double> all_weights(const SemiValueScheme& scheme, std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t s = 0; s < n; ++s) w[s] = scheme_weight(scheme, s, n);
  return w;
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t t) {
  return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(t));
}

constexpr std::size_t kChunk = 256;  // fixed reduction chunk, thread-count independent

}  // namespace

SemiValueScheme SemiValueScheme::parse(std::string_view spec) {
  if (spec == "shapley") return shapley();
  if (spec == "banzhaf") return banzhaf();
  if (spec == "loo") return loo();
  constexpr std::string_view prefix = "beta:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string_view args = spec.substr(prefix.size());
    const std::size_t comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw InvalidInput("scheme: expected beta:<alpha>,<beta>");
    }
    const double a = parse_positive_double(args.substr(0, comma), "alpha");
    const double b = parse_positive_double(args.substr(comma + 1), "beta");
    return beta_shapley(a, b);
  }
  throw InvalidInput("unknown scheme: " + std::string(spec));
}

std::string SemiValueScheme::id() const {
  switch (kind) {
    case Kind::shapley:
      return "shapley";
    case Kind::banzhaf:
      return "banzhaf";
    case Kind::loo:
      return "loo";
    case Kind::beta: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "beta:%g,%g", alpha, beta);
      return buf;
    }
  }
  return "shapley";
}

double scheme_weight(const SemiValueScheme& scheme, std::size_t subset_size, std::size_t n) {
  if (n == 0) throw InvalidInput("scheme_weight: empty population");
  if (subset_size >= n) throw InvalidInput("scheme_weight: subset size must be < n");
  const std::size_t s = subset_size;
  switch (scheme.kind) {
    case SemiValueScheme::Kind::shapley:
      if (n <= 50) return 1.0 / (static_cast<double>(n) * choose_small(n - 1, s));
      return std::exp(-std::log(static_cast<double>(n)) - log_choose(n - 1, s));
    case SemiValueScheme::Kind::banzhaf:
      return std::ldexp(1.0, -static_cast<int>(n - 1));
    case SemiValueScheme::Kind::loo:
      return s == n - 1 ? 1.0 : 0.0;
    case SemiValueScheme::Kind::beta:
      return std::exp(beta_log_weight(scheme.alpha, scheme.beta, s, n));
  }
  throw InvalidInput("scheme_weight: unknown kind");
}

ValueAssignment exact_semivalue(const UtilityFunction& u, const SemiValueScheme& scheme,
                                ExactSemiValueOptions opt) {
  const std::size_t n = u.population();
  if (n == 0) throw InvalidInput("exact_semivalue: empty population");
  if (scheme.kind == SemiValueScheme::Kind::loo) return loo(u);
  const std::size_t cap = std::min<std::size_t>(opt.cap, 24);
  if (n > cap) {
    throw ResourceLimit("exact_semivalue: population " + std::to_string(n) +
                        " exceeds exact cap " + std::to_string(cap));
  }

  const std::size_t slots = std::size_t{1} << n;
  std::vector<double> table(slots);
  for (std::uint64_t m = 0; m < slots; ++m) {
    table[m] = u.eval(SubsetMask::from_bits(m, n));
  }
  const std::vector<double> weight = all_weights(scheme, n);

  ValueAssignment out;
  out.method_id = scheme.id();
  out.values.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double v = 0.0;
    for (std::uint64_t m = 0; m < slots; ++m) {
      if (m & bit) continue;
      v += weight[std::popcount(m)] * (table[m | bit] - table[m]);
    }
    out.values[i] = v;
  }
  return out;
}

ValueAssignment loo(const UtilityFunction& u) {
  const std::size_t n = u.population();
  if (n == 0) throw InvalidInput("loo: empty population");
  const SubsetMask full = SubsetMask::full(n);
  const double u_full = u.eval(full);
  ValueAssignment out;
  out.method_id = "loo";
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = u_full - u.eval(full.without(i));
  }
  return out;
}

McSemiValueResult mc_semivalue(const UtilityFunction& u, const SemiValueScheme& scheme,
                               const McOptions& opt) {
  const std::size_t n = u.population();
  if (n == 0) throw InvalidInput("mc_semivalue: empty population");
  if (opt.samples == 0) throw InvalidInput("mc_semivalue: needs at least one sample");

  McSemiValueResult result;
  if (scheme.kind == SemiValueScheme::Kind::loo) {
    result.values = loo(u);
    result.std_errors.assign(n, 0.0);
    result.samples = 0;
    return result;
  }

  // Position factor applied to each sampled marginal. For Shapley the
  // permutation estimator weight is exactly 1.
  std::vector<double> factor(n, 1.0);
  if (scheme.kind == SemiValueScheme::Kind::beta) {
    for (std::size_t s = 0; s < n; ++s) {
      factor[s] = std::exp(std::log(static_cast<double>(n)) + log_choose(n - 1, s) +
                           beta_log_weight(scheme.alpha, scheme.beta, s, n));
    }
  }

  const std::size_t m = opt.samples;
  result.values.method_id = scheme.id();
  result.samples = m;

  if (scheme.kind == SemiValueScheme::Kind::banzhaf) {
    // Maximum sample reuse: each uniform subset S of D costs one evaluation
    // and updates every point, since S\{i} is a uniform subset of D\{i}:
    //   v̂(i) = mean{U(S) : i ∈ S} - mean{U(S) : i ∉ S}.
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> masks(kChunk * words);
    std::vector<double> evals(kChunk);
    std::vector<double> in_sum(n, 0.0), in_sq(n, 0.0);
    std::vector<double> out_sum(n, 0.0), out_sq(n, 0.0);
    std::vector<std::size_t> in_count(n, 0);
    for (std::size_t start = 0; start < m; start += kChunk) {
      const std::size_t chunk = std::min(kChunk, m - start);
      parallel_for(0, chunk, opt.threads, [&](std::size_t ci) {
        Rng rng(sample_seed(opt.seed, start + ci));
        SubsetMask s(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (j % 64 == 0) masks[ci * words + j / 64] = rng.next_u64();
          if ((masks[ci * words + j / 64] >> (j % 64)) & 1u) s.set(j);
        }
        evals[ci] = u.eval(s);
      });
      for (std::size_t ci = 0; ci < chunk; ++ci) {
        const double value = evals[ci];
        for (std::size_t j = 0; j < n; ++j) {
          if ((masks[ci * words + j / 64] >> (j % 64)) & 1u) {
            in_sum[j] += value;
            in_sq[j] += value * value;
            ++in_count[j];
          } else {
            out_sum[j] += value;
            out_sq[j] += value * value;
          }
        }
      }
    }
    result.values.values.assign(n, 0.0);
    result.std_errors.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double m1 = static_cast<double>(in_count[i]);
      const double m0 = static_cast<double>(m - in_count[i]);
      if (m1 == 0.0 || m0 == 0.0) continue;  // value stays 0 for a one-sided draw
      const double mean1 = in_sum[i] / m1;
      const double mean0 = out_sum[i] / m0;
      result.values.values[i] = mean1 - mean0;
      double se_sq = 0.0;
      if (m1 > 1.0) se_sq += std::max(0.0, (in_sq[i] - m1 * mean1 * mean1) / (m1 - 1.0)) / m1;
      if (m0 > 1.0) se_sq += std::max(0.0, (out_sq[i] - m0 * mean0 * mean0) / (m0 - 1.0)) / m0;
      result.std_errors[i] = std::sqrt(se_sq);
    }
    return result;
  }

  // Shapley/Beta: one permutation yields all n pipelined marginals.
  std::vector<double> sum(n, 0.0);
  std::vector<double> sum_sq(n, 0.0);
  std::vector<double> buffer;
  for (std::size_t start = 0; start < m; start += kChunk) {
    const std::size_t chunk = std::min(kChunk, m - start);
    buffer.assign(chunk * n, 0.0);
    parallel_for(0, chunk, opt.threads, [&](std::size_t ci) {
      double* row = buffer.data() + ci * n;
      Rng rng(sample_seed(opt.seed, start + ci));
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      rng.shuffle(perm);
      SubsetMask prefix(n);
      double prev = u.eval(prefix);
      for (std::size_t j = 0; j < n; ++j) {
        prefix.set(perm[j]);
        const double cur = u.eval(prefix);
        row[perm[j]] = factor[j] * (cur - prev);
        prev = cur;
      }
    });
    // sequential reduction in sample order
    for (std::size_t ci = 0; ci < chunk; ++ci) {
      const double* row = buffer.data() + ci * n;
      for (std::size_t i = 0; i < n; ++i) {
        sum[i] += row[i];
        sum_sq[i] += row[i] * row[i];
      }
    }
  }

  result.values.values.resize(n);
  result.std_errors.assign(n, 0.0);
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = sum[i] / dm;
    result.values.values[i] = mean;
    if (m > 1) {
      const double var = std::max(0.0, (sum_sq[i] - dm * mean * mean) / (dm - 1.0));
      result.std_errors[i] = std::sqrt(var / dm);
    }
  }
  return result;
}

}  // namespace dataval
