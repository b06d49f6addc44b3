#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "permorb/perm_orbifold.hpp"

namespace permorb {

/// Orders tuples by their last position first, then backwards. For pairs this
/// lists (x, 1), (x, eps), ... grouped by the second factor.
struct ColexLess {
  bool operator()(const Tuple& a, const Tuple& b) const {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  }
};

/// Finitely supported combination of sectors (lambda_1, ..., lambda_n) of the
/// n-fold tensor product.
class ProductSectorSum {
 public:
  using container = std::map<Tuple, Multiplicity, ColexLess>;

  void add(const Tuple& t, Multiplicity mult = 1) {
    if (mult == 0) return;
    auto& slot = coeffs_[t];
    slot = detail::checked_add(slot, mult);
  }

  Multiplicity operator[](const Tuple& t) const {
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? 0 : it->second;
  }

  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  container::const_iterator begin() const noexcept { return coeffs_.begin(); }
  container::const_iterator end() const noexcept { return coeffs_.end(); }

  double dimension(std::span<const double> dims) const {
    double total = 0.0;
    for (const auto& [t, m] : coeffs_) {
      double d = static_cast<double>(m);
      for (Label a : t) d *= dims[a];
      total += d;
    }
    return total;
  }

  friend bool operator==(const ProductSectorSum&, const ProductSectorSum&) = default;

 private:
  container coeffs_;
};

inline std::string format_product_sum(const FusionRing& ring, const ProductSectorSum& sum) {
  if (sum.empty()) return "0";
  std::string out;
  for (const auto& [t, m] : sum) {
    if (!out.empty()) out += '+';
    if (m != 1) out += std::to_string(m) + '*';
    out += '(';
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + ring.name(t[i]);
    out += ')';
  }
  return out;
}

/// Topological soliton pi_lambda, linear in lambda.
struct SolitonSector {
  SectorSum lambda;
  friend bool operator==(const SolitonSector&, const SolitonSector&) = default;
};

inline std::string format_soliton(const FusionRing& ring, const SolitonSector& s) {
  if (s.lambda.empty()) return "0";
  std::string out;
  for (auto [a, m] : s.lambda) {
    if (!out.empty()) out += '+';
    if (m != 1) out += std::to_string(m) + '*';
    out += "pi[" + ring.name(a) + "]";
  }
  return out;
}

/// mu^{(n-1)/2} d(lambda)
inline double soliton_dimension(const ModularData& md, int n, const SolitonSector& s) {
  return std::pow(md.global_index(), 0.5 * (n - 1)) * dimension(s.lambda, md.dims());
}

namespace detail {

inline void require_two(int n, std::string_view what) {
  if (n != 2)
    throw Error(ErrorCode::unsupported,
                std::string(what) + " is only available for n = 2 (requested n = " + std::to_string(n) + ")");
}

}  // namespace detail

inline SolitonSector soliton_conjugate(const ModularData& md, int n, const SolitonSector& s) {
  detail::require_two(n, "soliton conjugation");
  return {conjugate(md.ring(), s.lambda)};
}

/// For general n the conjugate soliton is pi_{conj lambda} composed with the
/// position reversal m -> -m mod n.
struct GeneralSolitonConjugate {
  SolitonSector sector;
  std::vector<int> position_map;  ///< position_map[m] = -m mod n
};

inline GeneralSolitonConjugate soliton_conjugate_general(const ModularData& md, int n, const SolitonSector& s) {
  if (n < 2) throw Error(ErrorCode::domain, "solitons need n >= 2");
  GeneralSolitonConjugate out{{conjugate(md.ring(), s.lambda)}, std::vector<int>(static_cast<std::size_t>(n))};
  for (int m = 0; m < n; ++m) out.position_map[static_cast<std::size_t>(m)] = (n - m) % n;
  return out;
}

/// (mu1, mu2) . pi_lambda = pi_{mu1 mu2 lambda}
inline SolitonSector act_product_sector(const ModularData& md, int n, Label mu1, Label mu2, const SolitonSector& s) {
  detail::require_two(n, "product-sector action");
  const auto& ring = md.ring();
  return {fuse(ring, fuse(ring, mu1, mu2), s.lambda)};
}

/// pi_lambda pi_mu = sum_delta (lambda delta) (x) (mu conj(delta)), extended
/// bilinearly. The result is an ordinary product sector.
inline ProductSectorSum soliton_compose(const ModularData& md, int n, const SolitonSector& a, const SolitonSector& b) {
  detail::require_two(n, "soliton composition");
  const auto& ring = md.ring();
  ProductSectorSum out;
  for (auto [lambda, ma] : a.lambda)
    for (auto [mu, mb] : b.lambda) {
      Multiplicity outer = detail::checked_mul(ma, mb);
      for (Label delta = 0; delta < ring.rank(); ++delta) {
        SectorSum left = fuse(ring, lambda, delta);
        SectorSum right = fuse(ring, mu, ring.conj(delta));
        for (auto [nu1, m1] : left)
          for (auto [nu2, m2] : right) out.add({nu1, nu2}, detail::checked_mul(outer, detail::checked_mul(m1, m2)));
      }
    }
  return out;
}

/// Decomposition of conj(rho) rho for the n-interval inclusion: every
/// n-tuple weighted by the multiplicity of the unit in its fusion product.
inline ProductSectorSum vacuum_channel(const ModularData& md, int n) {
  if (n < 2) throw Error(ErrorCode::domain, "vacuum_channel needs n >= 2");
  ProductSectorSum out;
  detail::for_each_tuple(md.rank(), n, [&](const Tuple& t) { out.add(t, vacuum_multiplicity(md.ring(), t)); });
  return out;
}

/// Vacuum-channel coefficients are invariant under rotation and under the
/// position reversal m -> -m.
inline bool cyclic_symmetry_check(const ModularData& md, int n) {
  auto channel = vacuum_channel(md, n);
  for (const auto& [t, m] : channel) {
    Tuple reversed(t.size());
    for (std::size_t pos = 0; pos < t.size(); ++pos) reversed[pos] = t[(t.size() - pos) % t.size()];
    if (channel[detail::rotate(t, 1)] != m || channel[reversed] != m) return false;
  }
  return true;
}

/*
 * Restriction of tuple sectors to the orbifold versus induction of untwisted
 * orbifold sectors. Rows are all n-tuples in lexicographic order, columns are
 * the untwisted sectors in untwisted_spectrum() order.
 */
struct FrobeniusReciprocity {
  std::vector<Tuple> rows;
  std::vector<OrbifoldSector> columns;
  std::vector<std::vector<Multiplicity>> restriction;  ///< rows x columns
  std::vector<std::vector<Multiplicity>> induction;    ///< columns x rows
  bool transpose_identity = false;
};

inline FrobeniusReciprocity frobenius_reciprocity_matrix(const ModularData& md, int n) {
  FrobeniusReciprocity out;
  out.columns = untwisted_spectrum(md, n);
  detail::for_each_tuple(md.rank(), n, [&](const Tuple& t) { out.rows.push_back(t); });
  const std::size_t rows = out.rows.size(), cols = out.columns.size();
  const std::size_t r = md.rank();

  // Restriction: a tuple sector restricts to every branch of its orbit.
  out.restriction.assign(rows, std::vector<Multiplicity>(cols, 0));
  for (std::size_t row = 0; row < rows; ++row) {
    Tuple canonical = out.rows[row];
    for (int k = 1; k < n; ++k) canonical = std::min(canonical, detail::rotate(out.rows[row], k));
    for (std::size_t col = 0; col < cols; ++col)
      if (std::get<UntwistedKind>(out.columns[col].kind).orbit.representative == canonical)
        out.restriction[row][col] = 1;
  }

  // Induction: alpha of (lambda; sigma^i) is the sum of the n1 distinct
  // rotations g^k lambda g^{-k}, 0 <= k < n1.
  auto row_of = [&](const Tuple& t) {
    std::size_t index = 0;
    for (Label a : t) index = index * r + a;
    return index;
  };
  out.induction.assign(cols, std::vector<Multiplicity>(rows, 0));
  for (std::size_t col = 0; col < cols; ++col) {
    const auto& orbit = std::get<UntwistedKind>(out.columns[col].kind).orbit;
    for (int k = 0; k < orbit.n1; ++k) ++out.induction[col][row_of(detail::rotate(orbit.representative, k))];
  }

  out.transpose_identity = true;
  for (std::size_t row = 0; row < rows; ++row)
    for (std::size_t col = 0; col < cols; ++col)
      if (out.restriction[row][col] != out.induction[col][row]) out.transpose_identity = false;
  return out;
}

}  // namespace permorb
