#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "permorb/fusion_ring.hpp"
#include "permorb/rational.hpp"

namespace permorb {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitarityTolerance = 1e-8;
inline constexpr double kVerlindeSnapTolerance = 1e-6;

/*
 * A fusion ring together with conformal spins (mod 1) and an exact central
 * charge. Construction rejects rings that fail validate() and twists that
 * violate h(1) = 0 or h(conj a) = h(a). Modularity is NOT a constructor
 * requirement; it is tested separately by is_modular().
 *
 * The central charge is kept unreduced: orbifold spin shifts such as
 * c (n^2 - 1) / (24 n) depend on c beyond its class mod 8.
 */
class ModularData {
 public:
  ModularData(std::string name, FusionRing ring, std::vector<RationalMod1> twists, Rational central_charge)
      : name_(std::move(name)),
        ring_(std::move(ring)),
        twists_(std::move(twists)),
        central_charge_(central_charge) {
    auto report = validate(ring_);
    if (!report.ok()) {
      std::string failed;
      for (const auto& check : report.checks) {
        if (check.passed()) continue;
        std::string where;
        for (Label a : check.failures.front()) where += (where.empty() ? "" : ",") + ring_.name(a);
        failed += (failed.empty() ? "" : "; ") + check.name + " at (" + where + ")";
        if (check.failures.size() > 1) failed += " and " + std::to_string(check.failures.size() - 1) + " more";
      }
      throw Error(ErrorCode::invariant, "fusion ring '" + name_ + "' fails: " + failed);
    }
    if (twists_.size() != ring_.rank())
      throw Error(ErrorCode::structure, "expected " + std::to_string(ring_.rank()) + " twists, got " +
                                            std::to_string(twists_.size()));
    if (!twists_[0].is_zero()) throw Error(ErrorCode::invariant, "twist of the unit must be 0");
    for (Label a = 0; a < ring_.rank(); ++a)
      if (twists_[a] != twists_[ring_.conj(a)])
        throw Error(ErrorCode::invariant, "twist of '" + ring_.name(a) + "' (" + twists_[a].to_string() +
                                              ") differs from twist of its conjugate '" +
                                              ring_.name(ring_.conj(a)) + "'");
    dims_ = quantum_dims(ring_);
    mu_ = permorb::global_index(dims_);
  }

  const std::string& name() const noexcept { return name_; }
  const FusionRing& ring() const noexcept { return ring_; }
  std::size_t rank() const noexcept { return ring_.rank(); }

  const RationalMod1& twist(Label a) const { return twists_.at(a); }
  const std::vector<RationalMod1>& twists() const noexcept { return twists_; }
  const Rational& central_charge() const noexcept { return central_charge_; }

  double dim(Label a) const { return dims_.at(a); }
  const std::vector<double>& dims() const noexcept { return dims_; }
  double global_index() const noexcept { return mu_; }

  friend bool operator==(const ModularData& a, const ModularData& b) {
    return a.name_ == b.name_ && a.ring_ == b.ring_ && a.twists_ == b.twists_ &&
           a.central_charge_ == b.central_charge_;
  }

 private:
  std::string name_;
  FusionRing ring_;
  std::vector<RationalMod1> twists_;
  Rational central_charge_;
  std::vector<double> dims_;
  double mu_ = 1.0;
};

/// S_ab = mu^{-1/2} sum_c N[conj a][b][c] exp(2 pi i (h_c - h_a - h_b)) d_c.
inline ComplexMatrix s_matrix(const ModularData& md) {
  const std::size_t r = md.rank();
  const auto& ring = md.ring();
  ComplexMatrix s(r, r);
  const double norm = 1.0 / std::sqrt(md.global_index());
  for (Label a = 0; a < r; ++a)
    for (Label b = 0; b < r; ++b) {
      std::complex<double> acc = 0.0;
      for (Label c = 0; c < r; ++c)
        if (auto n = ring.N(ring.conj(a), b, c))
          acc += static_cast<double>(n) * md.dim(c) * (md.twist(c) - md.twist(a) - md.twist(b)).phase();
      s(a, b) = norm * acc;
    }
  return s;
}

struct ModularityReport {
  bool modular = false;
  /// max |S S^dagger - 1| entrywise
  double unitarity_deviation = 0.0;
  /// max |S - S^T| entrywise
  double symmetry_deviation = 0.0;
  /// sigma_max / sigma_min of S; infinite when S is singular.
  double condition_number = 0.0;
};

inline ModularityReport is_modular(const ModularData& md) {
  ComplexMatrix s = s_matrix(md);
  const auto r = s.rows();
  ModularityReport report;
  report.unitarity_deviation = (s * s.adjoint() - ComplexMatrix::Identity(r, r)).cwiseAbs().maxCoeff();
  report.symmetry_deviation = (s - s.transpose()).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<ComplexMatrix> svd(s);
  const auto& sv = svd.singularValues();
  double smin = sv.minCoeff();
  report.condition_number = smin > 0.0 ? sv.maxCoeff() / smin : std::numeric_limits<double>::infinity();
  report.modular = report.unitarity_deviation < kUnitarityTolerance;
  return report;
}

struct VerlindeResult {
  /// Rounded N[a][b][c], same layout as FusionRing::tensor().
  std::vector<Multiplicity> fusion;
  /// Largest distance of a recomputed entry from the nearest integer.
  double max_deviation = 0.0;
  bool matches = false;
};

/// Recomputes the fusion tensor from S via the Verlinde formula.
inline VerlindeResult verlinde_roundtrip(const ModularData& md) {
  auto mod = is_modular(md);
  if (!mod.modular)
    throw Error(ErrorCode::not_modular,
                "'" + md.name() + "' has a degenerate braiding (S is not unitary, deviation " +
                    std::to_string(mod.unitarity_deviation) + "); the Verlinde formula does not apply");
  ComplexMatrix s = s_matrix(md);
  const std::size_t r = md.rank();
  VerlindeResult out;
  out.fusion.resize(r * r * r);
  bool snapped = true;
  for (Label a = 0; a < r; ++a)
    for (Label b = 0; b < r; ++b)
      for (Label c = 0; c < r; ++c) {
        std::complex<double> acc = 0.0;
        for (Label x = 0; x < r; ++x) acc += s(a, x) * s(b, x) * std::conj(s(c, x)) / s(0, x);
        double nearest = std::round(acc.real());
        double dev = std::max(std::abs(acc.real() - nearest), std::abs(acc.imag()));
        out.max_deviation = std::max(out.max_deviation, dev);
        if (dev > kVerlindeSnapTolerance || nearest < 0) snapped = false;
        out.fusion[(a * r + b) * r + c] = nearest < 0 ? 0 : static_cast<Multiplicity>(nearest);
      }
  out.matches = snapped && out.fusion == md.ring().tensor();
  return out;
}

/// exp(2 pi i (h(sig mu) - h(sig) - h(mu))) for an invertible sector sig.
inline std::complex<double> monodromy_with_automorphism(const ModularData& md, Label mu, Label sig) {
  const auto& ring = md.ring();
  ring.check_label(mu);
  ring.check_label(sig);
  // d(sig) = 1 exactly iff sig * conj(sig) is the unit alone.
  if (fuse(ring, sig, ring.conj(sig)) != SectorSum::of(FusionRing::unit()))
    throw Error(ErrorCode::domain,
                "'" + ring.name(sig) + "' is not an automorphism (d != 1); the monodromy is not a scalar");
  SectorSum product = fuse(ring, sig, mu);
  Label target = product.begin()->first;
  return (md.twist(target) - md.twist(sig) - md.twist(mu)).phase();
}

/// mu^{-1/2} sum_a d_a^2 exp(2 pi i h_a)
inline std::complex<double> gauss_sum(const ModularData& md) {
  std::complex<double> acc = 0.0;
  for (Label a = 0; a < md.rank(); ++a) acc += md.dim(a) * md.dim(a) * md.twist(a).phase();
  return acc / std::sqrt(md.global_index());
}

/// Compares the Gauss sum with exp(2 pi i c / 8). Only c mod 8 is tested.
inline bool gauss_sum_check(const ModularData& md) {
  RationalMod1 eighth = md.central_charge() / Rational(8);
  return std::abs(gauss_sum(md) - eighth.phase()) < kUnitarityTolerance;
}

}  // namespace permorb
