#include <gtest/gtest.h>

#include <json.hpp>

#include "permorb/catalog.hpp"

using namespace permorb;
using nlohmann::json;

namespace {

const std::string kData = PERMORB_DATA_DIR;

json ising_doc() { return json::parse(dump_category(builtin("Ising"))); }

ErrorCode load_error(const std::string& text) {
  try {
    load_category(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::io;
}

std::string message_of(const std::string& text) {
  try {
    load_category(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Builtin, UnknownNameListsAvailable) {
  try {
    builtin("Potts");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
    EXPECT_NE(std::string(e.what()).find("Fibonacci"), std::string::npos);
  }
}

TEST(Builtin, RoundTripThroughFileFormat) {
  for (const auto& name : list_builtin()) {
    auto md = builtin(name);
    auto loaded = load_category(dump_category(md));
    EXPECT_EQ(loaded.data, md) << name;
    EXPECT_TRUE(loaded.warnings.empty());
    EXPECT_EQ(dump_category(loaded.data), dump_category(md));
  }
}

TEST(Load, SampleFile) {
  auto loaded = load_category_file(kData + "/ising.json");
  auto ising = builtin("Ising");
  EXPECT_EQ(loaded.data.ring(), ising.ring());
  EXPECT_EQ(loaded.data.twists(), ising.twists());
  EXPECT_EQ(loaded.data.central_charge(), Rational(1, 2));
}

TEST(Load, DegenerateSampleLoadsButIsNotModular) {
  auto loaded = load_category_file(kData + "/z2_degenerate.json");
  EXPECT_FALSE(is_modular(loaded.data).modular);
}

TEST(Load, BrokenSampleNamesTheFailingCheck) {
  try {
    load_category_file(kData + "/ising_broken.json");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invariant);
    EXPECT_NE(std::string(e.what()).find("associativity"), std::string::npos);
  }
}

TEST(Load, MissingFileIsIoError) {
  try {
    load_category_file(kData + "/does_not_exist.json");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}

TEST(Load, SyntaxErrorReportsPosition) {
  std::string text = "{\n  \"name\": \"x\",\n  \"labels\": [1,,]\n}";
  EXPECT_EQ(load_error(text), ErrorCode::parse);
  EXPECT_NE(message_of(text).find("line 3"), std::string::npos) << message_of(text);
}

TEST(Load, SchemaErrorsNameTheField) {
  for (const char* key : {"name", "labels", "unit", "fusion", "twists", "central_charge"}) {
    auto doc = ising_doc();
    doc.erase(key);
    EXPECT_EQ(load_error(doc.dump()), ErrorCode::schema) << key;
    EXPECT_NE(message_of(doc.dump()).find(key), std::string::npos);
  }
  auto doc = ising_doc();
  doc["fusion"]["sigma*sigma"]["psi"] = 1;
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::schema);
  EXPECT_NE(message_of(doc.dump()).find("fusion.sigma*sigma"), std::string::npos);

  doc = ising_doc();
  doc["fusion"]["sigma*sigma"]["eps"] = 0;
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::schema);
  doc["fusion"]["sigma*sigma"]["eps"] = -1;
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::schema);

  doc = ising_doc();
  doc["twists"].erase("sigma");
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::schema);

  for (const char* bad : {"0.0625", "1/16 ", "one", "1//16", "/16"}) {
    doc = ising_doc();
    doc["twists"]["sigma"] = bad;
    EXPECT_EQ(load_error(doc.dump()), ErrorCode::schema) << bad;
  }
  doc = ising_doc();
  doc["central_charge"] = 0.5;
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::schema);

  doc = ising_doc();
  doc["labels"] = json::array({"1", "eps", "eps"});
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::schema);
}

TEST(Load, InvariantViolations) {
  auto doc = ising_doc();
  doc["unit"] = "eps";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::invariant);

  doc = ising_doc();
  doc["fusion"]["sigma*eps"] = {{"sigma", 2}};
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::invariant);
  EXPECT_NE(message_of(doc.dump()).find("disagree"), std::string::npos);

  doc = ising_doc();
  doc["conjugates"]["eps"] = "sigma";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::invariant);

  doc = ising_doc();
  doc["twists"]["1"] = "1/2";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::invariant);
}

TEST(Load, UnknownKeysWarn) {
  auto doc = ising_doc();
  doc["comment"] = "hello";
  doc["version"] = 2;
  auto loaded = load_category(doc.dump());
  EXPECT_EQ(loaded.warnings.size(), 2u);
  EXPECT_NE(loaded.warnings.front().find("comment"), std::string::npos);
}

TEST(Load, ConjugatesAreOptionalAndInferred) {
  auto doc = json::parse(dump_category(builtin("Z3")));
  doc.erase("conjugates");
  auto loaded = load_category(doc.dump());
  EXPECT_EQ(loaded.data.ring().conj(1), 2u);
  EXPECT_EQ(loaded.data.ring().conj(2), 1u);
}

TEST(Export, RecordsRoundTrip) {
  for (const char* name : {"Ising", "Fibonacci", "Z3"})
    for (int n = 2; n <= 4; ++n) {
      auto md = builtin(name);
      auto records = spectrum_records(md.ring(), full_spectrum(md, n).sectors);
      EXPECT_EQ(parse_records(print_records(records)), records) << name << " " << n;
    }
}

TEST(Export, Deterministic) {
  auto md = builtin("Ising");
  for (int n = 2; n <= 4; ++n) {
    auto sectors = full_spectrum(md, n).sectors;
    auto reversed = sectors;
    std::reverse(reversed.begin(), reversed.end());
    for (auto fmt : {ExportFormat::table, ExportFormat::records}) {
      auto first = export_spectrum(md.ring(), sectors, fmt);
      EXPECT_EQ(first, export_spectrum(md.ring(), sectors, fmt));
      EXPECT_EQ(first, export_spectrum(md.ring(), reversed, fmt));
    }
  }
}

TEST(Export, RecordFields) {
  auto md = builtin("Ising");
  auto records = spectrum_records(md.ring(), full_spectrum(md, 2).sectors);
  ASSERT_EQ(records.size(), 15u);
  EXPECT_EQ(records.front().kind, "untwisted");
  EXPECT_EQ(records.front().sector, "(1,1;0)");
  EXPECT_EQ(records.back().kind, "twisted");
  EXPECT_EQ(records.back().sector, "tau[sigma]^(1)");
  EXPECT_EQ(records.back().spin, "9/16");
  EXPECT_EQ(records.back().grading, 1);
  EXPECT_EQ(records.back().dim, 2.82842712);
  auto line = json::parse(print_records({records.back()}));
  EXPECT_EQ(line["labels"], json::array({"sigma"}));
  EXPECT_FALSE(line.contains("paper_stated_dim"));
}

TEST(Export, HalfTwistedColumns) {
  auto md = builtin("Ising");
  auto table = export_spectrum(md.ring(), full_spectrum(md, 4).sectors, ExportFormat::table);
  EXPECT_NE(table.find("dim(consistency-forced)"), std::string::npos);
  EXPECT_NE(table.find("dim(paper-stated)"), std::string::npos);
  auto records = spectrum_records(md.ring(), full_spectrum(md, 4).sectors);
  for (const auto& r : records) {
    if (r.kind == "half-twisted-diag") {
      ASSERT_TRUE(r.paper_stated_dim);
      EXPECT_DOUBLE_EQ(*r.paper_stated_dim, 2 * r.dim);
    }
    if (r.kind == "twisted") EXPECT_FALSE(r.paper_stated_dim);
  }
}

TEST(Export, EmptyListHasHeaderOnly) {
  auto ring = builtin("Ising").ring();
  EXPECT_EQ(export_spectrum(ring, {}, ExportFormat::table), "kind  sector  dim  spin  grading\n");
  EXPECT_EQ(export_spectrum(ring, {}, ExportFormat::records), "");
}

TEST(Export, MalformedRecords) {
  try {
    parse_records("{\"kind\": \"twisted\"}\n");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
  }
}
