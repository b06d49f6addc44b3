#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "permorb/perm_orbifold.hpp"

namespace permorb {

// ---------------------------------------------------------------------------
// Built-in categories

namespace detail {

using FusionRule = std::function<Multiplicity(Label, Label, Label)>;

inline FusionRing make_ring(std::vector<std::string> labels, const FusionRule& rule) {
  const std::size_t r = labels.size();
  std::vector<Multiplicity> tensor(r * r * r);
  for (Label a = 0; a < r; ++a)
    for (Label b = 0; b < r; ++b)
      for (Label c = 0; c < r; ++c) tensor[(a * r + b) * r + c] = rule(a, b, c);
  return FusionRing(std::move(labels), std::move(tensor));
}

/// Z_N group ring with labels g^0 .. g^{N-1}.
inline FusionRing cyclic_group_ring(std::vector<std::string> labels) {
  const std::size_t order = labels.size();
  return make_ring(std::move(labels), [order](Label a, Label b, Label c) -> Multiplicity {
    return (a + b) % order == c ? 1 : 0;
  });
}

inline ModularData trivial(int c) {
  return ModularData("Trivial:" + std::to_string(c), FusionRing({"1"}, {1}), {RationalMod1()}, Rational(c));
}

inline ModularData ising() {
  // 1, eps, sigma
  auto ring = make_ring({"1", "eps", "sigma"}, [](Label a, Label b, Label c) -> Multiplicity {
    if (a == 0) return b == c;
    if (b == 0) return a == c;
    if (a == 1 && b == 1) return c == 0;
    if (a == 2 && b == 2) return c == 0 || c == 1;
    return c == 2;  // eps * sigma
  });
  return ModularData("Ising", std::move(ring), {RationalMod1(0, 1), RationalMod1(1, 2), RationalMod1(1, 16)},
                     Rational(1, 2));
}

inline ModularData fibonacci() {
  auto ring = make_ring({"1", "tau"}, [](Label a, Label b, Label c) -> Multiplicity {
    if (a == 0) return b == c;
    if (b == 0) return a == c;
    return 1;  // tau * tau = 1 + tau
  });
  return ModularData("Fibonacci", std::move(ring), {RationalMod1(0, 1), RationalMod1(2, 5)}, Rational(14, 5));
}

inline ModularData semion() {
  return ModularData("Semion", cyclic_group_ring({"1", "s"}), {RationalMod1(0, 1), RationalMod1(1, 4)}, Rational(1));
}

inline ModularData z3_pointed() {
  return ModularData("Z3", cyclic_group_ring({"1", "g", "g2"}),
                     {RationalMod1(0, 1), RationalMod1(1, 3), RationalMod1(1, 3)}, Rational(2));
}

/// SU(2) at level k; label j is twice the spin, h_j = j (j + 2) / (4 (k + 2)).
inline ModularData su2(int k) {
  std::vector<std::string> labels;
  std::vector<RationalMod1> twists;
  for (int j = 0; j <= k; ++j) {
    labels.push_back(std::to_string(j));
    twists.emplace_back(j * (j + 2), 4 * (k + 2));
  }
  auto ring = make_ring(std::move(labels), [k](Label a, Label b, Label c) -> Multiplicity {
    auto ia = static_cast<int>(a), ib = static_cast<int>(b), ic = static_cast<int>(c);
    return (ic >= std::abs(ia - ib) && ic <= std::min(ia + ib, 2 * k - ia - ib) && (ia + ib + ic) % 2 == 0) ? 1 : 0;
  });
  return ModularData("SU2:" + std::to_string(k), std::move(ring), std::move(twists), Rational(3 * k, k + 2));
}

}  // namespace detail

inline std::vector<std::string> list_builtin() {
  return {"Trivial:0", "Trivial:8", "Trivial:24", "Ising", "Fibonacci", "Semion",
          "Z3",        "SU2:1",     "SU2:2",      "SU2:3", "SU2:4"};
}

inline ModularData builtin(std::string_view name) {
  if (name == "Trivial:0") return detail::trivial(0);
  if (name == "Trivial:8") return detail::trivial(8);
  if (name == "Trivial:24") return detail::trivial(24);
  if (name == "Ising") return detail::ising();
  if (name == "Fibonacci") return detail::fibonacci();
  if (name == "Semion") return detail::semion();
  if (name == "Z3") return detail::z3_pointed();
  for (int k = 1; k <= 4; ++k)
    if (name == "SU2:" + std::to_string(k)) return detail::su2(k);
  std::string available;
  for (const auto& n : list_builtin()) available += (available.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::domain, "unknown builtin '" + std::string(name) + "'; available: " + available);
}

// ---------------------------------------------------------------------------
// Category files

struct LoadedCategory {
  ModularData data;
  std::vector<std::string> warnings;  ///< unknown top-level keys
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline Error schema_error(const std::string& field, const std::string& message) {
  return Error(ErrorCode::schema, "field '" + field + "': " + message);
}

inline Rational parse_rational_field(const nlohmann::json& value, const std::string& field) {
  static const std::regex pattern("-?[0-9]+(/[0-9]+)?");
  if (!value.is_string()) throw schema_error(field, "expected a rational string like \"1/16\"");
  const auto& text = value.get_ref<const std::string&>();
  if (!std::regex_match(text, pattern)) throw schema_error(field, "'" + text + "' is not of the form p or p/q");
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw schema_error(field, e.what());
  }
}

}  // namespace detail

/*
 * Reads the JSON category format:
 *
 *   { "name": "Ising", "labels": ["1", "eps", "sigma"], "unit": "1",
 *     "fusion": { "sigma*sigma": {"1": 1, "eps": 1}, ... },
 *     "twists": { "1": "0", "eps": "1/2", "sigma": "1/16" },
 *     "central_charge": "1/2", "conjugates": { ... } }
 *
 * Omitted fusion products are zero. A product listed only as "a*b" also
 * defines "b*a"; when both are listed they must agree.
 */
inline LoadedCategory load_category(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                      e.what());
  }
  if (!doc.is_object()) throw detail::schema_error("<root>", "expected an object");

  std::vector<std::string> warnings;
  static const std::vector<std::string> known = {"name", "labels", "unit", "fusion", "twists", "central_charge",
                                                  "conjugates"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) warnings.push_back("unknown key '" + key + "' ignored");
  for (std::size_t i = 0; i + 1 < known.size(); ++i)
    if (!doc.contains(known[i])) throw detail::schema_error(known[i], "missing");

  if (!doc["name"].is_string()) throw detail::schema_error("name", "expected a string");
  std::string name = doc["name"];

  const auto& jlabels = doc["labels"];
  if (!jlabels.is_array() || jlabels.empty()) throw detail::schema_error("labels", "expected a non-empty array");
  std::vector<std::string> labels;
  for (const auto& l : jlabels) {
    if (!l.is_string()) throw detail::schema_error("labels", "every label must be a string");
    labels.push_back(l);
  }
  std::map<std::string, Label> index;
  for (Label a = 0; a < labels.size(); ++a)
    if (!index.emplace(labels[a], a).second) throw detail::schema_error("labels", "duplicate label '" + labels[a] + "'");
  auto lookup = [&](const std::string& label, const std::string& field) {
    auto it = index.find(label);
    if (it == index.end()) throw detail::schema_error(field, "unknown label '" + label + "'");
    return it->second;
  };

  if (!doc["unit"].is_string()) throw detail::schema_error("unit", "expected a string");
  Label unit = lookup(doc["unit"], "unit");
  if (unit != 0)
    throw Error(ErrorCode::invariant, "field 'unit': unit '" + labels[unit] + "' must be the first label");

  const std::size_t r = labels.size();
  const auto& jfusion = doc["fusion"];
  if (!jfusion.is_object()) throw detail::schema_error("fusion", "expected an object");
  std::map<std::pair<Label, Label>, std::vector<Multiplicity>> rows;
  for (const auto& [key, products] : jfusion.items()) {
    std::string field = "fusion." + key;
    auto star = key.find('*');
    if (star == std::string::npos) throw detail::schema_error(field, "key must have the form \"a*b\"");
    Label a = lookup(key.substr(0, star), field);
    Label b = lookup(key.substr(star + 1), field);
    if (!products.is_object()) throw detail::schema_error(field, "expected an object {label: multiplicity}");
    std::vector<Multiplicity> row(r, 0);
    for (const auto& [target, mult] : products.items()) {
      Label c = lookup(target, field);
      if (!mult.is_number_integer() || mult.get<std::int64_t>() <= 0)
        throw detail::schema_error(field + "." + target, "multiplicity must be a positive integer");
      row[c] = mult.get<Multiplicity>();
    }
    if (!rows.emplace(std::pair{a, b}, std::move(row)).second)
      throw detail::schema_error(field, "duplicate product");
  }
  std::vector<Multiplicity> tensor(r * r * r, 0);
  for (const auto& [ab, row] : rows) {
    auto [a, b] = ab;
    auto mirror = rows.find({b, a});
    if (mirror != rows.end() && mirror->second != row)
      throw Error(ErrorCode::invariant, "field 'fusion': \"" + labels[a] + "*" + labels[b] + "\" and \"" +
                                            labels[b] + "*" + labels[a] + "\" disagree");
    for (Label c = 0; c < r; ++c) {
      tensor[(a * r + b) * r + c] = row[c];
      if (mirror == rows.end()) tensor[(b * r + a) * r + c] = row[c];
    }
  }

  std::optional<std::vector<Label>> conjugates;
  if (doc.contains("conjugates")) {
    const auto& jconj = doc["conjugates"];
    if (!jconj.is_object()) throw detail::schema_error("conjugates", "expected an object");
    conjugates.emplace(r);
    for (Label a = 0; a < r; ++a) {
      if (!jconj.contains(labels[a])) throw detail::schema_error("conjugates", "missing label '" + labels[a] + "'");
      const auto& v = jconj[labels[a]];
      if (!v.is_string()) throw detail::schema_error("conjugates." + labels[a], "expected a label string");
      (*conjugates)[a] = lookup(v, "conjugates." + labels[a]);
    }
    for (const auto& [key, value] : jconj.items()) lookup(key, "conjugates");
  }

  const auto& jtwists = doc["twists"];
  if (!jtwists.is_object()) throw detail::schema_error("twists", "expected an object");
  for (const auto& [key, value] : jtwists.items()) lookup(key, "twists");
  std::vector<RationalMod1> twists;
  for (const auto& label : labels) {
    if (!jtwists.contains(label)) throw detail::schema_error("twists", "missing twist for label '" + label + "'");
    twists.emplace_back(detail::parse_rational_field(jtwists[label], "twists." + label));
  }
  Rational c = detail::parse_rational_field(doc["central_charge"], "central_charge");

  const bool explicit_conjugates = conjugates.has_value();
  FusionRing ring(std::move(labels), std::move(tensor), std::move(conjugates));
  if (explicit_conjugates) {
    // An explicit table must agree with the fusion rules.
    for (Label a = 0; a < r; ++a)
      if (ring.N(a, ring.conj(a), 0) != 1)
        throw Error(ErrorCode::invariant, "field 'conjugates." + ring.name(a) + "': '" + ring.name(ring.conj(a)) +
                                              "' is not a conjugate under the fusion rules");
  }
  return {ModularData(std::move(name), std::move(ring), std::move(twists), c), std::move(warnings)};
}

inline LoadedCategory load_category_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_category(buffer.str());
}

/// Writes the file format read by load_category (products listed once, a <= b).
inline std::string dump_category(const ModularData& md) {
  const auto& ring = md.ring();
  nlohmann::ordered_json doc;
  doc["name"] = md.name();
  doc["labels"] = ring.labels();
  doc["unit"] = ring.name(0);
  nlohmann::ordered_json fusion = nlohmann::ordered_json::object();
  for (Label a = 0; a < ring.rank(); ++a)
    for (Label b = a; b < ring.rank(); ++b) {
      nlohmann::ordered_json products = nlohmann::ordered_json::object();
      for (Label c = 0; c < ring.rank(); ++c)
        if (auto m = ring.N(a, b, c)) products[ring.name(c)] = m;
      if (!products.empty()) fusion[ring.name(a) + "*" + ring.name(b)] = products;
    }
  doc["fusion"] = fusion;
  nlohmann::ordered_json conj = nlohmann::ordered_json::object();
  for (Label a = 0; a < ring.rank(); ++a) conj[ring.name(a)] = ring.name(ring.conj(a));
  doc["conjugates"] = conj;
  nlohmann::ordered_json twists = nlohmann::ordered_json::object();
  for (Label a = 0; a < ring.rank(); ++a) twists[ring.name(a)] = md.twist(a).to_string();
  doc["twists"] = twists;
  doc["central_charge"] = md.central_charge().to_string();
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Spectrum export

enum class ExportFormat { table, records };

/// One exported row; also what the records format parses back into.
struct SpectrumRecord {
  std::string kind;
  std::string sector;
  std::vector<std::string> labels;
  std::vector<int> branch;
  double dim = 0.0;
  std::string spin;
  int grading = 0;
  std::optional<double> paper_stated_dim;

  friend bool operator==(const SpectrumRecord&, const SpectrumRecord&) = default;
};

inline std::string format_sig(double value, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

namespace detail {

inline double round_sig(double value) { return std::stod(format_sig(value)); }

struct RecordKey {
  std::size_t kind;
  std::vector<Label> labels;
  std::vector<int> branch;
  auto operator<=>(const RecordKey&) const = default;
};

inline std::pair<std::vector<Label>, std::vector<int>> sector_indices(const SectorKind& kind) {
  struct Visitor {
    using result = std::pair<std::vector<Label>, std::vector<int>>;
    result operator()(const UntwistedKind& k) const { return {k.orbit.representative, {k.branch}}; }
    result operator()(const TwistedKind& k) const { return {{k.lambda}, {k.branch}}; }
    result operator()(const TwistedConjKind& k) const { return {{k.lambda}, {k.branch}}; }
    result operator()(const HalfTwistedDiagKind& k) const { return {{k.lambda}, {k.i, k.j}}; }
    result operator()(const HalfTwistedPairKind& k) const { return {{k.first, k.second}, {k.i}}; }
    result operator()(const HolomorphicKind& k) const { return {{}, {k.twist_class, k.branch}}; }
  };
  return std::visit(Visitor{}, kind);
}

}  // namespace detail

/// Rows sorted by kind, then labels, then branch indices.
inline std::vector<SpectrumRecord> spectrum_records(const FusionRing& ring, const std::vector<OrbifoldSector>& sectors) {
  std::vector<std::pair<detail::RecordKey, SpectrumRecord>> keyed;
  for (const auto& s : sectors) {
    auto [labels, branch] = detail::sector_indices(s.kind);
    SpectrumRecord rec;
    rec.kind = std::string(kind_name(s.kind));
    rec.sector = describe(ring, s);
    for (Label a : labels) rec.labels.push_back(ring.name(a));
    rec.branch = branch;
    rec.dim = detail::round_sig(s.dim);
    rec.spin = s.spin.to_string();
    rec.grading = s.grading;
    if (s.paper_stated_dim) rec.paper_stated_dim = detail::round_sig(*s.paper_stated_dim);
    keyed.push_back({{s.kind.index(), labels, branch}, std::move(rec)});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<SpectrumRecord> out;
  for (auto& [key, rec] : keyed) out.push_back(std::move(rec));
  return out;
}

inline std::string print_records(const std::vector<SpectrumRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    nlohmann::ordered_json line;
    line["kind"] = rec.kind;
    line["sector"] = rec.sector;
    line["labels"] = rec.labels;
    line["branch"] = rec.branch;
    line["dim"] = rec.dim;
    line["spin"] = rec.spin;
    line["grading"] = rec.grading;
    if (rec.paper_stated_dim) line["paper_stated_dim"] = *rec.paper_stated_dim;
    out += line.dump() + "\n";
  }
  return out;
}

inline std::vector<SpectrumRecord> parse_records(std::string_view text) {
  std::vector<SpectrumRecord> out;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      SpectrumRecord rec;
      rec.kind = j.at("kind").get<std::string>();
      rec.sector = j.at("sector").get<std::string>();
      rec.labels = j.at("labels").get<std::vector<std::string>>();
      rec.branch = j.at("branch").get<std::vector<int>>();
      rec.dim = j.at("dim").get<double>();
      rec.spin = j.at("spin").get<std::string>();
      rec.grading = j.at("grading").get<int>();
      if (j.contains("paper_stated_dim")) rec.paper_stated_dim = j["paper_stated_dim"].get<double>();
      out.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse, "record line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

inline std::string print_table(const std::vector<SpectrumRecord>& records) {
  bool paper_column = std::any_of(records.begin(), records.end(),
                                  [](const SpectrumRecord& r) { return r.paper_stated_dim.has_value(); });
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"kind", "sector", paper_column ? "dim(consistency-forced)" : "dim", "spin",
                                     "grading"};
  if (paper_column) header.push_back("dim(paper-stated)");
  rows.push_back(header);
  for (const auto& rec : records) {
    std::vector<std::string> row = {rec.kind, rec.sector, format_sig(rec.dim), rec.spin, std::to_string(rec.grading)};
    if (paper_column) row.push_back(rec.paper_stated_dim ? format_sig(*rec.paper_stated_dim) : "-");
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

inline std::string export_spectrum(const FusionRing& ring, const std::vector<OrbifoldSector>& sectors,
                                   ExportFormat format) {
  auto records = spectrum_records(ring, sectors);
  return format == ExportFormat::table ? print_table(records) : print_records(records);
}

}  // namespace permorb
