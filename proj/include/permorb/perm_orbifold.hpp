#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "permorb/modular_data.hpp"

namespace permorb {

using Tuple = std::vector<Label>;

/// Z_n-orbit of an n-tuple of labels. The stabilizer is generated by the
/// rotation by n1 positions and has order k1 = n / n1.
struct TupleOrbit {
  Tuple representative;  ///< lexicographically least rotation
  int n1 = 1;
  int k1 = 1;

  friend bool operator==(const TupleOrbit&, const TupleOrbit&) = default;
};

namespace detail {

inline constexpr std::size_t kMaxTuples = std::size_t{1} << 24;

inline std::size_t tuple_count(std::size_t rank, int n) {
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > kMaxTuples / rank)
      throw Error(ErrorCode::unsupported, std::to_string(rank) + "^" + std::to_string(n) +
                                              " tuples exceed the enumeration limit");
    count *= rank;
  }
  return count;
}

/// Calls f(tuple) for every n-tuple over {0..rank-1} in lexicographic order.
template <class F>
void for_each_tuple(std::size_t rank, int n, F&& f) {
  tuple_count(rank, n);
  Tuple t(static_cast<std::size_t>(n), 0);
  while (true) {
    f(static_cast<const Tuple&>(t));
    int pos = n - 1;
    while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == rank) t[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return;
  }
}

/// Result position m holds t[(m + k) mod n].
inline Tuple rotate(const Tuple& t, int k) {
  const std::size_t n = t.size();
  Tuple out(n);
  for (std::size_t m = 0; m < n; ++m) out[m] = t[(m + static_cast<std::size_t>(k)) % n];
  return out;
}

inline int orbit_size(const Tuple& t) {
  const int n = static_cast<int>(t.size());
  for (int s = 1; s < n; ++s)
    if (n % s == 0 && rotate(t, s) == t) return s;
  return n;
}

inline bool is_canonical(const Tuple& t) {
  for (int s = 1; s < static_cast<int>(t.size()); ++s)
    if (rotate(t, s) < t) return false;
  return true;
}

inline Rational twist_shift(const Rational& c, int n) { return c * Rational(n * n - 1, 24 * n); }

inline double ipow(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

}  // namespace detail

/// Every Z_n-orbit of n-tuples, ordered by representative.
inline std::vector<TupleOrbit> cyclic_orbits(const FusionRing& ring, int n) {
  if (n < 1) throw Error(ErrorCode::domain, "cyclic_orbits needs n >= 1");
  std::vector<TupleOrbit> out;
  detail::for_each_tuple(ring.rank(), n, [&](const Tuple& t) {
    if (!detail::is_canonical(t)) return;
    int n1 = detail::orbit_size(t);
    out.push_back({t, n1, n / n1});
  });
  return out;
}

inline std::vector<TupleOrbit> cyclic_orbits(const ModularData& md, int n) { return cyclic_orbits(md.ring(), n); }

// ---------------------------------------------------------------------------
// Sectors

/// (lambda_1, ..., lambda_n; sigma^branch)
struct UntwistedKind {
  TupleOrbit orbit;
  int branch = 0;
  friend bool operator==(const UntwistedKind&, const UntwistedKind&) = default;
};

/// tau_lambda^(branch). `sigma_power` is the power of the dual automorphism
/// carrying branch 0 to this branch, branch * k(1) mod n.
struct TwistedKind {
  Label lambda = 0;
  int branch = 0;
  int sigma_power = 0;
  friend bool operator==(const TwistedKind&, const TwistedKind&) = default;
};

/// Conjugate family taubar_lambda^(branch), n = 3, 4.
struct TwistedConjKind {
  Label lambda = 0;
  int branch = 0;
  int sigma_power = 0;
  friend bool operator==(const TwistedConjKind&, const TwistedConjKind&) = default;
};

/// tau^(i,j)_{(lambda,lambda),B}, n = 4 only.
struct HalfTwistedDiagKind {
  Label lambda = 0;
  int i = 0;
  int j = 0;
  friend bool operator==(const HalfTwistedDiagKind&, const HalfTwistedDiagKind&) = default;
};

/// tau^(i)_{(first,second),B} for first < second, n = 4 only.
struct HalfTwistedPairKind {
  Label first = 0;
  Label second = 0;
  int i = 0;
  friend bool operator==(const HalfTwistedPairKind&, const HalfTwistedPairKind&) = default;
};

/// sigma^branch tau^twist_class for a holomorphic net.
struct HolomorphicKind {
  int twist_class = 0;
  int branch = 0;
  friend bool operator==(const HolomorphicKind&, const HolomorphicKind&) = default;
};

using SectorKind =
    std::variant<UntwistedKind, TwistedKind, TwistedConjKind, HalfTwistedDiagKind, HalfTwistedPairKind, HolomorphicKind>;

struct OrbifoldSector {
  SectorKind kind;
  double dim = 1.0;
  RationalMod1 spin;
  /// g in Z_n, standing for the grading exp(2 pi i g / n).
  int grading = 0;
  /// For the n = 4 half-twisted families: the dimension as printed in the
  /// literature, which disagrees with the value forced by completeness.
  std::optional<double> paper_stated_dim;

  friend bool operator==(const OrbifoldSector&, const OrbifoldSector&) = default;
};

struct OrbifoldOptions {
  /// The sigma-power k(1) relating consecutive twisted branches. Only has to
  /// be coprime to n; it never changes the spectrum.
  int k1_power = 1;
};

inline std::string_view kind_name(const SectorKind& kind) {
  static constexpr std::string_view names[] = {"untwisted", "twisted", "twisted-conj",
                                               "half-twisted-diag", "half-twisted-pair", "holomorphic"};
  return names[kind.index()];
}

/// Display name, e.g. "(1,sigma;0)", "tau[sigma]^(1)", "tau[(1,eps)]^(0)".
inline std::string describe(const FusionRing& ring, const OrbifoldSector& sector) {
  struct Visitor {
    const FusionRing& ring;
    std::string operator()(const UntwistedKind& k) const {
      std::string s = "(";
      for (std::size_t m = 0; m < k.orbit.representative.size(); ++m)
        s += (m ? "," : "") + ring.name(k.orbit.representative[m]);
      return s + ";" + std::to_string(k.branch) + ")";
    }
    std::string operator()(const TwistedKind& k) const {
      return "tau[" + ring.name(k.lambda) + "]^(" + std::to_string(k.branch) + ")";
    }
    std::string operator()(const TwistedConjKind& k) const {
      return "taubar[" + ring.name(k.lambda) + "]^(" + std::to_string(k.branch) + ")";
    }
    std::string operator()(const HalfTwistedDiagKind& k) const {
      return "tau[(" + ring.name(k.lambda) + "," + ring.name(k.lambda) + ")]^(" + std::to_string(k.i) + "," +
             std::to_string(k.j) + ")";
    }
    std::string operator()(const HalfTwistedPairKind& k) const {
      return "tau[(" + ring.name(k.first) + "," + ring.name(k.second) + ")]^(" + std::to_string(k.i) + ")";
    }
    std::string operator()(const HolomorphicKind& k) const {
      return "sigma^" + std::to_string(k.branch) + " tau^" + std::to_string(k.twist_class);
    }
  };
  return std::visit(Visitor{ring}, sector.kind);
}

/// Restrictions of tuple sectors: each orbit splits into k1 sectors of
/// dimension n1 * prod d(lambda_j), all carrying spin sum h(lambda_j).
inline std::vector<OrbifoldSector> untwisted_spectrum(const ModularData& md, int n) {
  if (n < 2) throw Error(ErrorCode::domain, "orbifold spectra need n >= 2");
  std::vector<OrbifoldSector> out;
  for (const auto& orbit : cyclic_orbits(md, n)) {
    double dim = orbit.n1;
    RationalMod1 spin;
    for (Label a : orbit.representative) {
      dim *= md.dim(a);
      spin += md.twist(a);
    }
    for (int branch = 0; branch < orbit.k1; ++branch)
      out.push_back({UntwistedKind{orbit, branch}, dim, spin, 0, std::nullopt});
  }
  return out;
}

namespace detail {

inline void require_twisted_support(const ModularData& md, int n, const OrbifoldOptions& options) {
  if (n < 2 || n > 4)
    throw Error(ErrorCode::unsupported, "twisted sectors are classified only for n = 2, 3, 4 (requested n = " +
                                            std::to_string(n) + ")");
  if (std::gcd(options.k1_power, n) != 1)
    throw Error(ErrorCode::domain, "k(1) = " + std::to_string(options.k1_power) + " is not coprime to n = " +
                                       std::to_string(n));
  auto report = is_modular(md);
  if (!report.modular)
    throw Error(ErrorCode::not_modular, "'" + md.name() +
                                            "' is not modular; the twisted spectrum presumes a completely "
                                            "rational net (S unitarity deviation " +
                                            std::to_string(report.unitarity_deviation) + ")");
}

inline RationalMod1 twisted_spin(const ModularData& md, int n, Label lambda, int branch) {
  return (md.twist(lambda).value() + Rational(branch)) / Rational(n) + twist_shift(md.central_charge(), n);
}

inline int sigma_power(int branch, int n, const OrbifoldOptions& options) {
  return ((branch * options.k1_power) % n + n) % n;
}

}  // namespace detail

/// Irreducible sectors not contained in any restricted tuple sector.
inline std::vector<OrbifoldSector> twisted_spectrum(const ModularData& md, int n, const OrbifoldOptions& options = {}) {
  detail::require_twisted_support(md, n, options);
  const std::size_t r = md.rank();
  const double mu = md.global_index();
  const double soliton_scale = std::pow(mu, 0.5 * (n - 1));
  std::vector<OrbifoldSector> out;

  for (Label lambda = 0; lambda < r; ++lambda)
    for (int i = 0; i < n; ++i)
      out.push_back({TwistedKind{lambda, i, detail::sigma_power(i, n, options)}, soliton_scale * md.dim(lambda),
                     detail::twisted_spin(md, n, lambda, i), 1, std::nullopt});
  if (n == 2) return out;

  // taubar_lambda^(i) is the conjugate of tau_{conj lambda}^(i): same
  // dimension, same spin, opposite grading.
  for (Label lambda = 0; lambda < r; ++lambda)
    for (int i = 0; i < n; ++i) {
      Label source = md.ring().conj(lambda);
      out.push_back({TwistedConjKind{lambda, i, detail::sigma_power(i, n, options)},
                     soliton_scale * md.dim(source), detail::twisted_spin(md, n, source, i), n - 1,
                     std::nullopt});
    }
  if (n == 3) return out;

  // n = 4: sectors coming from the Z_2 orbifold of A (x) A inside B.
  const Rational shift = md.central_charge() / Rational(8);
  for (Label lambda = 0; lambda < r; ++lambda)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double d2 = md.dim(lambda) * md.dim(lambda);
        RationalMod1 spin = (Rational(2) * md.twist(lambda).value() + Rational(i)) / Rational(2) + shift;
        out.push_back({HalfTwistedDiagKind{lambda, i, j}, mu * d2, spin, 2, 2.0 * mu * d2});
      }
  for (Label first = 0; first < r; ++first)
    for (Label second = first + 1; second < r; ++second)
      for (int i = 0; i < 2; ++i) {
        double d1 = md.dim(first), d2 = md.dim(second);
        RationalMod1 spin =
            (md.twist(first).value() + md.twist(second).value() + Rational(i)) / Rational(2) + shift;
        // The literature's value is written in terms of d((first, first)).
        out.push_back({HalfTwistedPairKind{first, second, i}, 2.0 * mu * d1 * d2, spin, 2, 4.0 * mu * d1 * d1});
      }
  return out;
}

struct CompletenessReport {
  int n = 0;
  double sum_d2 = 0.0;
  double target = 0.0;  ///< n^2 mu^n
  double relative_deviation = 0.0;
  bool pass = false;
  /// sum of dim^2 per grading class g = 0..n-1
  std::vector<double> grading_sums;
  double grading_target = 0.0;  ///< n mu^n
  double max_grading_deviation = 0.0;
  bool equipartition = false;
};

inline constexpr double kCompletenessTolerance = 1e-6;

inline CompletenessReport completeness(const ModularData& md, int n, const std::vector<OrbifoldSector>& sectors) {
  CompletenessReport rep;
  rep.n = n;
  const double mu_n = detail::ipow(md.global_index(), n);
  rep.target = n * n * mu_n;
  rep.grading_target = n * mu_n;
  rep.grading_sums.assign(static_cast<std::size_t>(n), 0.0);
  for (const auto& s : sectors) {
    rep.sum_d2 += s.dim * s.dim;
    rep.grading_sums.at(static_cast<std::size_t>(s.grading)) += s.dim * s.dim;
  }
  rep.relative_deviation = std::abs(rep.sum_d2 - rep.target) / rep.target;
  rep.pass = rep.relative_deviation < kCompletenessTolerance;
  for (double g : rep.grading_sums)
    rep.max_grading_deviation =
        std::max(rep.max_grading_deviation, std::abs(g - rep.grading_target) / rep.grading_target);
  rep.equipartition = rep.max_grading_deviation < kCompletenessTolerance;
  return rep;
}

struct Spectrum {
  std::vector<OrbifoldSector> sectors;
  CompletenessReport report;
};

inline Spectrum full_spectrum(const ModularData& md, int n, const OrbifoldOptions& options = {}) {
  Spectrum out;
  auto twisted = twisted_spectrum(md, n, options);
  out.sectors = untwisted_spectrum(md, n);
  out.sectors.insert(out.sectors.end(), twisted.begin(), twisted.end());
  out.report = completeness(md, n, out.sectors);
  return out;
}

/// Grading of a sector produced for (md, n); rejects sectors that could not
/// have come from that spectrum.
inline int grading_of(const ModularData& md, int n, const OrbifoldSector& sector) {
  const std::size_t r = md.rank();
  auto foreign = [&](const std::string& why) {
    return Error(ErrorCode::domain, "sector does not belong to the n = " + std::to_string(n) + " spectrum of '" +
                                        md.name() + "': " + why);
  };
  struct Visitor {
    std::size_t r;
    int n;
    decltype(foreign)& fail;
    int operator()(const UntwistedKind& k) const {
      const auto& t = k.orbit.representative;
      if (static_cast<int>(t.size()) != n) throw fail("tuple length");
      for (Label a : t)
        if (a >= r) throw fail("label out of range");
      if (!detail::is_canonical(t) || detail::orbit_size(t) != k.orbit.n1 || k.orbit.n1 * k.orbit.k1 != n)
        throw fail("inconsistent orbit data");
      if (k.branch < 0 || k.branch >= k.orbit.k1) throw fail("branch out of range");
      return 0;
    }
    int operator()(const TwistedKind& k) const {
      if (n < 2 || n > 4 || k.lambda >= r || k.branch < 0 || k.branch >= n) throw fail("bad twisted sector");
      return 1;
    }
    int operator()(const TwistedConjKind& k) const {
      if ((n != 3 && n != 4) || k.lambda >= r || k.branch < 0 || k.branch >= n) throw fail("bad conjugate sector");
      return n - 1;
    }
    int operator()(const HalfTwistedDiagKind& k) const {
      if (n != 4 || k.lambda >= r || k.i < 0 || k.i > 1 || k.j < 0 || k.j > 1) throw fail("bad half-twisted sector");
      return 2;
    }
    int operator()(const HalfTwistedPairKind& k) const {
      if (n != 4 || k.first >= k.second || k.second >= r || k.i < 0 || k.i > 1) throw fail("bad half-twisted pair");
      return 2;
    }
    int operator()(const HolomorphicKind& k) const {
      if (r != 1 || k.twist_class < 0 || k.twist_class >= n || k.branch < 0 || k.branch >= n)
        throw fail("bad holomorphic sector");
      return k.twist_class;
    }
  };
  int expected = std::visit(Visitor{r, n, foreign}, sector.kind);
  if (sector.grading != expected) throw foreign("stored grading " + std::to_string(sector.grading) +
                                                " disagrees with its kind");
  return expected;
}

/// dim W_t = sum over irreducible tuple sectors lambda of (k1(lambda) - 1);
/// an orbit of size n1 contributes n1 (k1 - 1). Valid for every n >= 2.
inline std::size_t dim_twisted_soliton_space(const FusionRing& ring, int n) {
  if (n < 2) throw Error(ErrorCode::domain, "dim W_t needs n >= 2");
  std::size_t total = 0;
  for (const auto& orbit : cyclic_orbits(ring, n)) total += static_cast<std::size_t>(orbit.n1 * (orbit.k1 - 1));
  return total;
}

inline std::size_t dim_twisted_soliton_space(const ModularData& md, int n) {
  return dim_twisted_soliton_space(md.ring(), n);
}

struct SolitonIndex {
  double soliton = 0.0;  ///< Index(pi_lambda)
  double branch = 0.0;   ///< Index(tau_lambda^(i)), every i
  double full = 0.0;     ///< Index(tau_lambda)
};

inline SolitonIndex soliton_index(const ModularData& md, int n, Label lambda) {
  if (n < 2) throw Error(ErrorCode::domain, "soliton_index needs n >= 2");
  md.ring().check_label(lambda);
  double base = detail::ipow(md.global_index(), n - 1) * md.dim(lambda) * md.dim(lambda);
  return {base, base, static_cast<double>(n) * n * base};
}

/*
 * Spectrum of (V^{(x)n})^{Z_n} for a holomorphic V of central charge c:
 * n^2 sectors sigma^j tau^i, all of dimension 1 and grading i. The class
 * i != 0 is the g^i-twisted sector; g^i splits into d = gcd(i, n) cycles of
 * length m = n / d, giving the ground-state shift d c (m^2 - 1) / (24 m),
 * and the n branches are spaced by i / n.
 */
inline std::vector<OrbifoldSector> holomorphic_orbifold(const Rational& c, int n) {
  if (n < 2) throw Error(ErrorCode::domain, "holomorphic_orbifold needs n >= 2");
  std::vector<OrbifoldSector> out;
  for (int i = 0; i < n; ++i) {
    Rational shift;
    if (i != 0) {
      int d = std::gcd(i, n);
      shift = Rational(d) * detail::twist_shift(c, n / d);
    }
    for (int j = 0; j < n; ++j)
      out.push_back({HolomorphicKind{i, j}, 1.0, shift + Rational(i * j, n), i, std::nullopt});
  }
  return out;
}

}  // namespace permorb
