#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "permorb/errors.hpp"

namespace permorb {

using Label = std::size_t;
using Multiplicity = std::uint64_t;

namespace detail {

inline Multiplicity checked_add(Multiplicity a, Multiplicity b) {
  Multiplicity out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::overflow, "multiplicity exceeds 64 bits");
  return out;
}

inline Multiplicity checked_mul(Multiplicity a, Multiplicity b) {
  Multiplicity out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::overflow, "multiplicity exceeds 64 bits");
  return out;
}

}  // namespace detail

/// Formal non-negative combination of labels. Zero coefficients are never
/// stored; iteration is in ascending label order.
class SectorSum {
 public:
  using container = std::map<Label, Multiplicity>;

  SectorSum() = default;

  static SectorSum of(Label label, Multiplicity mult = 1) {
    SectorSum s;
    s.add(label, mult);
    return s;
  }

  void add(Label label, Multiplicity mult = 1) {
    if (mult == 0) return;
    auto& slot = coeffs_[label];
    slot = detail::checked_add(slot, mult);
  }

  SectorSum& operator+=(const SectorSum& other) {
    for (auto [label, mult] : other) add(label, mult);
    return *this;
  }

  Multiplicity operator[](Label label) const {
    auto it = coeffs_.find(label);
    return it == coeffs_.end() ? 0 : it->second;
  }

  /// Total number of irreducible summands counted with multiplicity.
  Multiplicity total() const {
    Multiplicity t = 0;
    for (auto [label, mult] : coeffs_) t = detail::checked_add(t, mult);
    return t;
  }

  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  container::const_iterator begin() const noexcept { return coeffs_.begin(); }
  container::const_iterator end() const noexcept { return coeffs_.end(); }

  friend bool operator==(const SectorSum&, const SectorSum&) = default;

 private:
  container coeffs_;
};

/*
 * A commutative fusion ring with a distinguished unit at index 0.
 *
 * The constructor only checks shapes (label count vs. tensor size, conjugation
 * table range). Algebraic invariants are reported by validate(); every other
 * operation assumes a ring that validates cleanly.
 */
class FusionRing {
 public:
  FusionRing(std::vector<std::string> labels, std::vector<Multiplicity> fusion,
             std::optional<std::vector<Label>> conjugates = std::nullopt)
      : labels_(std::move(labels)), fusion_(std::move(fusion)) {
    const std::size_t r = labels_.size();
    if (r == 0) throw Error(ErrorCode::structure, "fusion ring needs at least the unit label");
    if (fusion_.size() != r * r * r)
      throw Error(ErrorCode::structure, "fusion tensor has " + std::to_string(fusion_.size()) +
                                            " entries, expected " + std::to_string(r * r * r));
    std::unordered_set<std::string> seen;
    for (const auto& name : labels_) {
      if (name.empty()) throw Error(ErrorCode::structure, "empty label name");
      if (!seen.insert(name).second) throw Error(ErrorCode::structure, "duplicate label '" + name + "'");
    }
    if (conjugates) {
      if (conjugates->size() != r)
        throw Error(ErrorCode::structure, "conjugation table has " + std::to_string(conjugates->size()) +
                                              " entries, expected " + std::to_string(r));
      for (Label c : *conjugates)
        if (c >= r) throw Error(ErrorCode::structure, "conjugate index " + std::to_string(c) + " out of range");
      conj_ = std::move(*conjugates);
    } else {
      conj_ = infer_conjugates();
    }
  }

  std::size_t rank() const noexcept { return labels_.size(); }
  static constexpr Label unit() noexcept { return 0; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& name(Label a) const { return labels_.at(a); }

  std::optional<Label> find(std::string_view name) const {
    for (Label a = 0; a < labels_.size(); ++a)
      if (labels_[a] == name) return a;
    return std::nullopt;
  }

  Multiplicity N(Label a, Label b, Label c) const noexcept { return fusion_[(a * rank() + b) * rank() + c]; }
  const std::vector<Multiplicity>& tensor() const noexcept { return fusion_; }

  Label conj(Label a) const { return conj_.at(a); }
  const std::vector<Label>& conjugates() const noexcept { return conj_; }

  void check_label(Label a) const {
    if (a >= rank())
      throw Error(ErrorCode::domain, "label index " + std::to_string(a) + " out of range (rank " +
                                         std::to_string(rank()) + ")");
  }

  friend bool operator==(const FusionRing&, const FusionRing&) = default;

 private:
  // The conjugate of a is the b with a unit in a*b. When that is not unique
  // the ring is invalid; fall back to a itself and let validate() report it.
  std::vector<Label> infer_conjugates() const {
    const std::size_t r = rank();
    std::vector<Label> out(r);
    for (Label a = 0; a < r; ++a) {
      out[a] = a;
      for (Label b = 0; b < r; ++b)
        if (N(a, b, 0) != 0) {
          out[a] = b;
          break;
        }
    }
    return out;
  }

  std::vector<std::string> labels_;
  std::vector<Multiplicity> fusion_;
  std::vector<Label> conj_;
};

// ---------------------------------------------------------------------------
// Validation

struct CheckResult {
  std::string name;
  /// Offending index tuples; empty means the check passed.
  std::vector<std::vector<Label>> failures;

  bool passed() const noexcept { return failures.empty(); }
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
  }

  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline ValidationReport validate(const FusionRing& ring) {
  const std::size_t r = ring.rank();
  auto delta = [](Label x, Label y) -> Multiplicity { return x == y ? 1 : 0; };

  CheckResult unit{"unit_law", {}};
  for (Label b = 0; b < r; ++b)
    for (Label c = 0; c < r; ++c) {
      if (ring.N(0, b, c) != delta(b, c)) unit.failures.push_back({0, b, c});
      if (b != 0 && ring.N(b, 0, c) != delta(b, c)) unit.failures.push_back({b, 0, c});
    }

  CheckResult involution{"conjugation_involution", {}};
  if (ring.conj(0) != 0) involution.failures.push_back({0});
  for (Label a = 0; a < r; ++a)
    if (ring.conj(ring.conj(a)) != a) involution.failures.push_back({a});

  CheckResult pairing{"conjugate_pairing", {}};
  for (Label a = 0; a < r; ++a)
    for (Label b = 0; b < r; ++b)
      if (ring.N(a, b, 0) != delta(b, ring.conj(a))) pairing.failures.push_back({a, b});

  CheckResult comm{"commutativity", {}};
  for (Label a = 0; a < r; ++a)
    for (Label b = a + 1; b < r; ++b)
      for (Label c = 0; c < r; ++c)
        if (ring.N(a, b, c) != ring.N(b, a, c)) comm.failures.push_back({a, b, c});

  CheckResult frob{"frobenius_symmetry", {}};
  for (Label a = 0; a < r; ++a)
    for (Label b = 0; b < r; ++b)
      for (Label c = 0; c < r; ++c) {
        Multiplicity v = ring.N(a, b, c);
        if (v != ring.N(ring.conj(a), c, b) || v != ring.N(c, ring.conj(b), a)) frob.failures.push_back({a, b, c});
      }

  CheckResult assoc{"associativity", {}};
  for (Label a = 0; a < r; ++a)
    for (Label b = 0; b < r; ++b)
      for (Label c = 0; c < r; ++c)
        for (Label d = 0; d < r; ++d) {
          Multiplicity left = 0, right = 0;
          for (Label e = 0; e < r; ++e) {
            left = detail::checked_add(left, detail::checked_mul(ring.N(a, b, e), ring.N(e, c, d)));
            right = detail::checked_add(right, detail::checked_mul(ring.N(b, c, e), ring.N(a, e, d)));
          }
          if (left != right) assoc.failures.push_back({a, b, c, d});
        }

  ValidationReport report;
  report.checks = {std::move(unit), std::move(involution), std::move(pairing),
                   std::move(comm), std::move(frob),       std::move(assoc)};
  return report;
}

// ---------------------------------------------------------------------------
// Arithmetic

inline SectorSum fuse(const FusionRing& ring, Label a, Label b) {
  ring.check_label(a);
  ring.check_label(b);
  SectorSum out;
  for (Label c = 0; c < ring.rank(); ++c) out.add(c, ring.N(a, b, c));
  return out;
}

inline SectorSum fuse(const FusionRing& ring, const SectorSum& x, const SectorSum& y) {
  SectorSum out;
  for (auto [a, ma] : x) {
    ring.check_label(a);
    for (auto [b, mb] : y) {
      ring.check_label(b);
      Multiplicity m = detail::checked_mul(ma, mb);
      for (Label c = 0; c < ring.rank(); ++c)
        if (auto n = ring.N(a, b, c)) out.add(c, detail::checked_mul(m, n));
    }
  }
  return out;
}

inline SectorSum conjugate(const FusionRing& ring, const SectorSum& x) {
  SectorSum out;
  for (auto [a, m] : x) out.add(ring.conj(a), m);
  return out;
}

/// <x, y>: dimension of the intertwiner space between two sector sums.
inline Multiplicity pairing(const SectorSum& x, const SectorSum& y) {
  Multiplicity out = 0;
  for (auto [a, m] : x) out = detail::checked_add(out, detail::checked_mul(m, y[a]));
  return out;
}

/// Multiplicity of `target` in product[0] * product[1] * ... (left to right).
inline Multiplicity hom_dim(const FusionRing& ring, std::span<const Label> product, Label target) {
  if (product.empty()) throw Error(ErrorCode::domain, "hom_dim needs a non-empty product");
  ring.check_label(target);
  ring.check_label(product[0]);
  SectorSum acc = SectorSum::of(product[0]);
  for (std::size_t i = 1; i < product.size(); ++i) acc = fuse(ring, acc, SectorSum::of(product[i]));
  return acc[target];
}

/// Multiplicity of the unit in the fusion of all labels of `tuple`.
inline Multiplicity vacuum_multiplicity(const FusionRing& ring, std::span<const Label> tuple) {
  return hom_dim(ring, tuple, FusionRing::unit());
}

// ---------------------------------------------------------------------------
// Dimensions

namespace detail {

constexpr double kPowerTolerance = 1e-12;
constexpr int kPowerMaxIterations = 10000;

// Largest eigenvalue of the fusion matrix (N_a)_{bc} = N[a][b][c]. The
// iteration runs on I + N_a: N_a may have eigenvalues -d(a) or d(a) e^{i t}
// of the same modulus as d(a), and the unit shift leaves d(a) strictly
// dominant.
inline double perron_frobenius(const FusionRing& ring, Label a) {
  const std::size_t r = ring.rank();
  std::vector<double> v(r, 1.0 / std::sqrt(static_cast<double>(r)));
  std::vector<double> w(r);
  double estimate = 0.0;
  for (int iter = 0; iter < kPowerMaxIterations; ++iter) {
    double norm2 = 0.0;
    for (Label b = 0; b < r; ++b) {
      double acc = v[b];
      for (Label c = 0; c < r; ++c) acc += static_cast<double>(ring.N(a, b, c)) * v[c];
      w[b] = acc;
      norm2 += acc * acc;
    }
    double norm = std::sqrt(norm2);
    if (!(norm > 0.0)) break;
    for (Label b = 0; b < r; ++b) v[b] = w[b] / norm;
    if (std::abs(norm - estimate) < kPowerTolerance * std::max(1.0, norm)) return norm - 1.0;
    estimate = norm;
  }
  throw Error(ErrorCode::numerical,
              "Perron-Frobenius iteration did not converge for label '" + ring.name(a) + "'");
}

}  // namespace detail

/// Quantum dimension of every label, indexed by label.
inline std::vector<double> quantum_dims(const FusionRing& ring) {
  std::vector<double> dims(ring.rank());
  for (Label a = 0; a < ring.rank(); ++a) dims[a] = detail::perron_frobenius(ring, a);
  return dims;
}

inline double global_index(std::span<const double> dims) {
  double mu = 0.0;
  for (double d : dims) mu += d * d;
  return mu;
}

inline double global_index(const FusionRing& ring) { return global_index(quantum_dims(ring)); }

inline double dimension(const SectorSum& sum, std::span<const double> dims) {
  double out = 0.0;
  for (auto [a, m] : sum) out += static_cast<double>(m) * dims[a];
  return out;
}

/// "1+eps", "2*sigma", or "0" for the empty sum.
inline std::string format_sum(const FusionRing& ring, const SectorSum& sum) {
  if (sum.empty()) return "0";
  std::string out;
  for (auto [a, m] : sum) {
    if (!out.empty()) out += '+';
    if (m != 1) out += std::to_string(m) + '*';
    out += ring.name(a);
  }
  return out;
}

}  // namespace permorb
