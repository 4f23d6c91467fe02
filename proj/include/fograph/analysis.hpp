#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fograph/errors.hpp"
#include "fograph/families.hpp"

namespace fograph {

// Statistic / regime kind shared by part 1 and part 2.
enum class Kind { X, Y, Z };

inline const char* kind_name(Kind k) { return k == Kind::X ? "X" : k == Kind::Y ? "Y" : "Z"; }

enum class Fn { f_ext, f_family, g_family, h_family, f_plain, g_plain };

inline const char* fn_name(Fn f) {
  switch (f) {
    case Fn::f_ext: return "f_ext";
    case Fn::f_family: return "f_family";
    case Fn::g_family: return "g_family";
    case Fn::h_family: return "h_family";
    case Fn::f_plain: return "f_plain";
    case Fn::g_plain: return "g_plain";
  }
  return "?";
}

using LogFamilySize = std::function<double(double)>;

inline double log_family_star(double k) { return std::lgamma(k + 1.0); }
inline double log_family_singleton(double) { return 0.0; }
inline LogFamilySize log_family_const(double size) {
  return [v = std::log(size)](double) { return v; };
}

namespace detail {

inline double log_binom(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline constexpr double kLn2 = 0.6931471805599453;

}  // namespace detail

// Exact natural log of the statistic's expectation, with binomials continued
// through lgamma so k may be any real in [1, n-4].
inline double log_expectation(Fn kind, int n, double k, const LogFamilySize& lfs = log_family_singleton) {
  if (!(k >= 1.0 && k <= n - 4.0)) throw ValidationError("domain error: k must lie in [1, n-4]");
  using detail::kLn2;
  using detail::log_binom;
  const double pair_term = k * (k - 1.0) / 2.0 * kLn2;
  switch (kind) {
    case Fn::f_ext:
      return log_binom(n, k) + k * kLn2 + (n - k) * std::log1p(-std::exp2(-k));
    case Fn::f_family:
      return log_binom(n, k) + lfs(k) - pair_term + (n - k) * std::log1p(-std::exp2(-k));
    case Fn::g_family:
      return log_binom(n, 2) + log_binom(n - 2, k) + lfs(k) - pair_term +
             (n - k - 2) * std::log1p(-3.0 * std::exp2(-k - 2));
    case Fn::h_family:
      return std::log(3.0) + log_binom(n, 3) + log_binom(n - 3, k) + lfs(k) - pair_term +
             (n - k - 3) * std::log1p(-5.0 * std::exp2(-k - 3));
    case Fn::f_plain:
      return log_binom(n, k) + (n - k) * std::log1p(-std::exp2(-k));
    case Fn::g_plain:
      return log_binom(n, 2) + log_binom(n - 2, k) +
             (n - k - 2) * std::log1p(-3.0 * std::exp2(-k - 2));
  }
  return 0.0;
}

struct ThresholdFn {
  Fn kind;
  int n;
  LogFamilySize log_family_size = log_family_singleton;

  double operator()(double k) const { return log_expectation(kind, n, k, log_family_size); }
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

// Bisection on [1, min(n-4, 4 log2 n)]. The bracket is located by a fixed grid
// scan for the first sign change, and monotonicity on it is checked at the
// endpoints and midpoint; some threshold functions are not monotone over the
// whole interval at small n.
inline RootResult solve_root(const ThresholdFn& fn) {
  const double lo_all = 1.0;
  const double hi_all = std::min(static_cast<double>(fn.n) - 4.0, 4.0 * std::log2(static_cast<double>(fn.n)));
  if (hi_all <= lo_all) throw SolverError("empty solve bracket for n = " + std::to_string(fn.n));
  const int grid = 512;
  double prev_k = lo_all, prev_v = fn(lo_all);
  double a = 0.0, b = 0.0;
  bool found = false;
  for (int i = 1; i <= grid; ++i) {
    double k = lo_all + (hi_all - lo_all) * i / grid;
    double v = fn(k);
    if (prev_v < 0.0 && v >= 0.0) {
      a = prev_k;
      b = k;
      found = true;
      break;
    }
    prev_k = k;
    prev_v = v;
  }
  if (!found)
    throw SolverError("no sign change for " + std::string(fn_name(fn.kind)) + " on [" +
                      std::to_string(lo_all) + ", " + std::to_string(hi_all) +
                      "]: f(lo) = " + std::to_string(fn(lo_all)) +
                      ", f(hi) = " + std::to_string(fn(hi_all)));
  if (!(fn(a) < fn((a + b) / 2) && fn((a + b) / 2) < fn(b)))
    throw SolverError("threshold function not increasing on located bracket");
  RootResult out;
  out.bracket_lo = a;
  out.bracket_hi = b;
  while (true) {
    double m = (a + b) / 2;
    double v = fn(m);
    ++out.iterations;
    if (std::abs(v) < 1e-9 || (b - a) < 1e-12) {
      out.root = m;
      out.residual = v;
      return out;
    }
    (v < 0.0 ? a : b) = m;
  }
}

// Part-1 regime brackets partition [0, 1).
inline Kind regime_for_delta_part1(double delta) {
  if (delta > 0.05 && delta <= 0.55) return Kind::X;
  if (delta > 0.55 && delta <= 0.95) return Kind::Y;
  return Kind::Z;
}

struct Part1Selection {
  int n = 0;
  RootResult k_star;
  double delta = 0.0;
  Kind regime = Kind::X;
  std::optional<RootResult> regime_root;  // g/h root when regime is Y/Z
  int k_used = 0;
};

inline Part1Selection select_regime_part1(int n, int min_n = 64) {
  if (n < min_n) throw ValidationError("n must be at least " + std::to_string(min_n));
  Part1Selection sel;
  sel.n = n;
  sel.k_star = solve_root({Fn::f_family, n, log_family_star});
  sel.delta = sel.k_star.root - std::floor(sel.k_star.root);
  sel.regime = regime_for_delta_part1(sel.delta);
  if (sel.regime == Kind::X) {
    sel.k_used = static_cast<int>(std::floor(sel.k_star.root));
  } else {
    sel.regime_root =
        solve_root({sel.regime == Kind::Y ? Fn::g_family : Fn::h_family, n, log_family_star});
    sel.k_used = static_cast<int>(std::floor(sel.regime_root->root));
  }
  return sel;
}

struct MuSelection {
  int mu = 0;
  double achieved_log_expectation = 0.0;
  double achieved_expectation = 0.0;
  double deviation = 0.0;  // |E - ln 2|
};

// Prefix whose expectation is nearest ln 2; ties go to the smaller prefix.
inline MuSelection select_mu(int n, int k, const FamilyChain& chain, Fn kind) {
  if (chain.k != k) throw ValidationError("dimension mismatch: chain k differs from requested k");
  if (kind != Fn::f_family && kind != Fn::g_family && kind != Fn::h_family)
    throw ValidationError("select_mu expects a family threshold kind");
  MuSelection best;
  bool have = false;
  for (int mu = 0; mu <= chain.num_prefixes(); ++mu) {
    double logE = log_expectation(kind, n, k, log_family_const(static_cast<double>(chain.family_size(mu))));
    double E = std::exp(logE);
    double dev = std::abs(E - detail::kLn2);
    if (!have || dev < best.deviation) {
      best = {mu, logE, E, dev};
      have = true;
    }
  }
  return best;
}

// Per-term values of the first displayed finite-sum bound on psi_1, already
// divided by the squared expectation.
inline std::vector<double> psi1_terms(Kind kind, int n, int k, double family_size) {
  if (!(k >= 2 && k <= n / 2)) throw ValidationError("domain error: psi1 needs 2 <= k <= n/2");
  using detail::kLn2;
  using detail::log_binom;
  const double lF = std::log(family_size);
  auto choose2 = [](double m) { return m * (m - 1.0) / 2.0; };
  std::vector<double> out;
  if (kind == Kind::X) {
    const double logE = log_expectation(Fn::f_family, n, k, log_family_const(family_size));
    for (int s = 1; s <= k - 1; ++s) {
      double lt = log_binom(n, k) + log_binom(k, s) + log_binom(n - k, k - s) + 2 * lF -
                  (2 * choose2(k) - choose2(s)) * kLn2 +
                  (n - 2 * k + s) * std::log(1.0 - std::exp2(1 - k) + std::exp2(s - 2 * k));
      out.push_back(std::exp(lt - 2 * logE));
    }
    return out;
  }
  if (kind == Kind::Y) {
    const double logE = log_expectation(Fn::g_family, n, k, log_family_const(family_size));
    const double lF2 = lF + (2 * k + 1) * kLn2;  // members extended to [k+2]
    const double pair2 = 2 * std::log(choose2(k + 2));
    for (int s = 1; s <= k; ++s) {
      double lt = log_binom(n, k + 2) + log_binom(k + 2, s) + log_binom(n - k - 2, k + 2 - s) +
                  pair2 + 2 * lF2 - (2 * choose2(k + 2) - choose2(s)) * kLn2 +
                  (n - 2 * k - 4 + s) *
                      std::log(1.0 - 6.0 * std::exp2(-k - 2) + 9.0 * std::exp2(-(2 * k + 4 - s)));
      out.push_back(std::exp(lt - 2 * logE));
    }
    double lt = log_binom(n, k + 2) + std::log(static_cast<double>(k + 2)) +
                std::log(static_cast<double>(n - k - 2)) + pair2 + 2 * lF2 -
                (2 * choose2(k + 2) - choose2(k + 1)) * kLn2 +
                (n - k - 3) * std::log(1.0 - 6.0 * std::exp2(-k - 2) + 5.0 * std::exp2(-k - 3));
    out.push_back(std::exp(lt - 2 * logE));  // s = k+1
    return out;
  }
  const double logE = log_expectation(Fn::h_family, n, k, log_family_const(family_size));
  const double lF3 = lF + (3 * k + 3) * kLn2;  // members extended to [k+3]
  const double triple2 =
      2 * std::log(static_cast<double>(k + 3) * (k + 2) * (k + 1) / 6.0);
  const double log9 = std::log(9.0);
  for (int s = 1; s <= k; ++s) {
    double lt = log9 + log_binom(n, k + 3) + log_binom(k + 3, s) + log_binom(n - k - 3, k + 3 - s) +
                triple2 + 2 * lF3 - (2 * choose2(k + 3) - choose2(s)) * kLn2 +
                (n - 2 * k - 6 + s) *
                    std::log(1.0 - 10.0 * std::exp2(-k - 3) + 25.0 * std::exp2(-(2 * k + 6 - s)));
    out.push_back(std::exp(lt - 2 * logE));
  }
  double lt1 = log9 + log_binom(n, k + 3) + log_binom(k + 3, k + 1) + log_binom(n - k - 3, 2) +
               triple2 + 2 * lF3 - (2 * choose2(k + 3) - choose2(k + 1)) * kLn2 +
               (n - k - 5) * std::log(1.0 - 10.0 * std::exp2(-k - 3) + 17.0 * std::exp2(-k - 5));
  out.push_back(std::exp(lt1 - 2 * logE));  // s = k+1
  double lt2 = log9 + log_binom(n, k + 3) + std::log(static_cast<double>(k + 3)) +
               std::log(static_cast<double>(n - k - 3)) + triple2 + 2 * lF3 -
               (2 * choose2(k + 3) - choose2(k + 2)) * kLn2 +
               (n - k - 4) * std::log(1.0 - 10.0 * std::exp2(-k - 3) + 9.0 * std::exp2(-k - 4));
  out.push_back(std::exp(lt2 - 2 * logE));  // s = k+2
  return out;
}

inline double psi1_bound(Kind kind, int n, int k, double family_size) {
  double total = 0.0;
  for (double t : psi1_terms(kind, n, k, family_size)) total += t;
  return total;
}

// psi_2 for the X statistic as a ratio to (E X)^2; the family size cancels.
inline double psi2_bound_x(int n, int k) {
  if (!(k >= 2 && k <= n / 2)) throw ValidationError("domain error: psi2 needs 2 <= k <= n/2");
  using detail::log_binom;
  double total = 0.0;
  for (int s = 1; s <= k - 1; ++s)
    total += std::exp(log_binom(k, s) + log_binom(n - k, k - s) - log_binom(n, k));
  return total;
}

// Mixing upper bound without its vanishing correction factor.
inline double mixing_bound(Kind kind, int n, int k, double expectation) {
  if (k < 1 || k > n) throw ValidationError("domain error: mixing bound needs 1 <= k <= n");
  switch (kind) {
    case Kind::X:
      return expectation * (1.0 - std::pow(1.0 - std::exp2(-k), k));
    case Kind::Y:
      return expectation * (1.0 - std::pow(1.0 - 3.0 * std::exp2(-k - 2), k + 2));
    case Kind::Z:
      return expectation * (1.0 - std::pow(1.0 - 5.0 * std::exp2(-k - 3), k + 3));
  }
  return 0.0;
}

struct Part2Selection {
  int n = 0;
  RootResult k_plain;
  double delta = 0.0;  // ceil(root) - root
  Kind regime = Kind::X;
  std::optional<RootResult> y_root;  // g_plain root in the Y regime
  int k_ceil = 0;
  int variable_budget = 0;
};

inline Part2Selection select_regime_part2(int n, int min_n = 64) {
  if (n < min_n) throw ValidationError("n must be at least " + std::to_string(min_n));
  Part2Selection sel;
  sel.n = n;
  sel.k_plain = solve_root({Fn::f_plain, n});
  sel.delta = std::ceil(sel.k_plain.root) - sel.k_plain.root;
  if (sel.delta >= 0.05 && sel.delta <= 0.95) {
    sel.regime = Kind::X;
    sel.k_ceil = static_cast<int>(std::ceil(sel.k_plain.root));
    sel.variable_budget = sel.k_ceil + 1;
  } else {
    sel.regime = Kind::Y;
    sel.y_root = solve_root({Fn::g_plain, n});
    sel.k_ceil = static_cast<int>(std::ceil(sel.y_root->root));
    sel.variable_budget = sel.k_ceil + 3;
  }
  return sel;
}

inline Fn family_fn_for(Kind kind) {
  return kind == Kind::X ? Fn::f_family : kind == Kind::Y ? Fn::g_family : Fn::h_family;
}

struct RegimeReport {
  int n = 0;
  RootResult k_hat;
  Part1Selection part1;
  std::optional<MuSelection> mu;
  std::optional<long> mu_family_size;
  std::optional<double> psi1_ratio;        // regime kind at (n, k_used, |F^mu|)
  std::optional<double> psi1_x_at_ceil;    // X diagnostic at ceil(k_star); family cancels
  std::optional<double> psi2_ratio_x;
  std::optional<double> mixing;            // regime kind at the achieved expectation
  Part2Selection part2;
  std::vector<std::string> notes;
};

inline nlohmann::json root_to_json(const RootResult& r) {
  return {{"root", r.root},
          {"residual", r.residual},
          {"bracket", {r.bracket_lo, r.bracket_hi}},
          {"iterations", r.iterations}};
}

inline nlohmann::json report_to_json(const RegimeReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["k_hat"] = root_to_json(rep.k_hat);
  j["part1"] = {{"k_star", root_to_json(rep.part1.k_star)},
                {"delta", rep.part1.delta},
                {"regime", kind_name(rep.part1.regime)},
                {"k_used", rep.part1.k_used}};
  if (rep.part1.regime_root) j["part1"]["regime_root"] = root_to_json(*rep.part1.regime_root);
  if (rep.mu)
    j["part1"]["mu"] = {{"mu", rep.mu->mu},
                        {"family_size", *rep.mu_family_size},
                        {"achieved_log_expectation", rep.mu->achieved_log_expectation},
                        {"achieved_expectation", rep.mu->achieved_expectation},
                        {"deviation_from_ln2", rep.mu->deviation}};
  if (rep.psi1_ratio) j["part1"]["psi1_ratio"] = *rep.psi1_ratio;
  if (rep.psi1_x_at_ceil) j["part1"]["psi1_x_at_ceil_k_star"] = *rep.psi1_x_at_ceil;
  if (rep.psi2_ratio_x) j["part1"]["psi2_ratio_x"] = *rep.psi2_ratio_x;
  if (rep.mixing) j["part1"]["mixing_bound"] = *rep.mixing;
  j["part2"] = {{"k_plain", root_to_json(rep.part2.k_plain)},
                {"delta", rep.part2.delta},
                {"regime", kind_name(rep.part2.regime)},
                {"k_ceil", rep.part2.k_ceil},
                {"variable_budget", rep.part2.variable_budget}};
  if (rep.part2.y_root) j["part2"]["y_root"] = root_to_json(*rep.part2.y_root);
  j["notes"] = rep.notes;
  return j;
}

// Full threshold report. Family-dependent fields are filled only when the
// regime's k admits family construction (2 <= k <= 7).
inline RegimeReport full_report(int n) {
  RegimeReport rep;
  rep.n = n;
  rep.k_hat = solve_root({Fn::f_ext, n});
  rep.part1 = select_regime_part1(n);
  rep.part2 = select_regime_part2(n);
  if (rep.part1.regime == Kind::Z)
    rep.notes.push_back(
        "z regime: threshold solved from the Z-statistic log-expectation, which has multiple "
        "sign changes at small n; the first sign change on the scan grid is used");
  const int k = rep.part1.k_used;
  if (k >= 2 && k <= 7) {
    FamilyChain chain = build_chain(k);
    Fn fn = family_fn_for(rep.part1.regime);
    rep.mu = select_mu(n, k, chain, fn);
    rep.mu_family_size = chain.family_size(rep.mu->mu);
    if (k <= n / 2) {
      rep.psi1_ratio =
          psi1_bound(rep.part1.regime, n, k, static_cast<double>(*rep.mu_family_size));
      rep.psi2_ratio_x = psi2_bound_x(n, k);
    }
    rep.mixing = mixing_bound(rep.part1.regime, n, k, rep.mu->achieved_expectation);
  } else {
    rep.notes.push_back("family construction skipped: regime k outside [2, 7]");
  }
  const int kc = static_cast<int>(std::ceil(rep.part1.k_star.root));
  if (kc >= 2 && kc <= n / 2) rep.psi1_x_at_ceil = psi1_bound(Kind::X, n, kc, 1.0);
  return rep;
}

}  // namespace fograph
