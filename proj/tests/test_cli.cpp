#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lglab/cli.hpp"

using namespace lglab;
using namespace lglab::cli;

namespace {

namespace fs = std::filesystem;

// Validates the subset of JSON Schema used by the shipped report schema.
void validate(const json& schema, const json& v, const std::string& path, std::vector<std::string>& errs) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    const bool ok = (t == "object" && v.is_object()) || (t == "array" && v.is_array()) ||
                    (t == "string" && v.is_string()) || (t == "boolean" && v.is_boolean()) ||
                    (t == "integer" && v.is_number_integer()) || (t == "number" && v.is_number()) ||
                    (t == "null" && v.is_null());
    if (!ok) {
      errs.push_back(path + ": expected " + t);
      return;
    }
  }
  if (schema.contains("enum") &&
      std::find(schema["enum"].begin(), schema["enum"].end(), v) == schema["enum"].end())
    errs.push_back(path + ": value not in enum");
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!v.contains(k.get<std::string>())) errs.push_back(path + ": missing " + k.get<std::string>());
    const json props = schema.value("properties", json::object());
    for (const auto& [k, x] : v.items()) {
      if (props.contains(k))
        validate(props[k], x, path + "/" + k, errs);
      else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false)
        errs.push_back(path + ": unexpected property " + k);
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) validate(schema["items"], v[i], path + "/" + std::to_string(i), errs);
}

const json& schema() {
  static const json s = [] {
    std::ifstream in(std::string(LGLAB_SCHEMA_DIR) + "/report.schema.json");
    return json::parse(in);
  }();
  return s;
}

std::vector<std::string> schema_errors(const json& j) {
  std::vector<std::string> e;
  validate(schema(), j, "", e);
  return e;
}

JobSpec job(const std::string& cmd, const std::string& poly = "", const std::string& vars = "x,y") {
  JobSpec j;
  j.command = cmd;
  j.poly = poly;
  j.vars = vars;
  j.seed = 0;
  return j;
}

int exit_of(const JobSpec& j) {
  std::ostringstream out;
  return execute(j, out, "T");
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("lglab_test_" + name); }

}  // namespace

TEST(Cli, MilnorOnCusp) {
  const Report r = run(job("milnor", "x^3 - y^2"));
  EXPECT_EQ(r.payload["milnor"]["mu"], 2);
  EXPECT_EQ(r.payload["milnor"]["basis"], json({"1", "x"}));
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Cli, ReportOnCuspPassesEveryCheck) {
  const Report r = run(job("report", "x^3 - y^2"));
  EXPECT_GE(r.checks.size(), 10u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.computed << " vs " << c.predicted;
  for (const char* k : {"milnor", "koszul", "fibers", "freeness", "brieskorn", "pairing", "spectrum"})
    EXPECT_TRUE(r.payload.contains(k)) << k;
}

TEST(Cli, FibersOnZeroFunction) {
  const Report r = run(job("fibers", "0", "t"));
  EXPECT_EQ(r.payload["fibers"]["verdict"], "torsion-growth");
  EXPECT_EQ(r.payload["fibers"]["table"].size(), 3u);
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Cli, PredictHypersurface) {
  JobSpec j = job("predict");
  j.hypersurface = {3, 4};
  const Report r = run(j);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.payload.contains("predict"));
}

TEST(Cli, ParseRational) {
  EXPECT_EQ(parse_rational("-7/3"), make_rational(-7, 3));
  EXPECT_EQ(parse_rational("+4/2"), Rational(2));
  EXPECT_EQ(parse_rational("1/10"), make_rational(1, 10));
  for (const char* bad : {"1/0", "1/00", "", "x", "1/", "2.5", "1/2/3"}) EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(Cli, SeedPrecedence) {
  JobSpec j = job("milnor", "x^2");
  ::setenv("LGLAB_SEED", "17", 1);
  EXPECT_EQ(effective_seed(j), 0u);
  j.seed.reset();
  EXPECT_EQ(effective_seed(j), 17u);
  ::unsetenv("LGLAB_SEED");
  EXPECT_EQ(effective_seed(j), 0u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(exit_of(job("milnor", "x^3 - y^2")), 0);
  EXPECT_EQ(exit_of(job("milnor", "x y")), 2);
  EXPECT_EQ(exit_of(job("milnor", "x + z")), 2);
  EXPECT_EQ(exit_of(job("nonsense", "x")), 2);
  JobSpec bad_sample = job("fibers", "x^2");
  EXPECT_THROW(parse_rational_list("0,1/0"), ParseError);
  bad_sample.trunc_u = 0;
  EXPECT_EQ(exit_of(bad_sample), 2);
  EXPECT_EQ(exit_of(job("milnor", "x*y*z", "x,y,z")), 3);
  EXPECT_EQ(exit_of(job("brieskorn", "x^2*y + x")), 3);
  EXPECT_EQ(exit_of(job("spectrum", "x^3 + y^3 - 3*x*y")), 3);
  JobSpec short_order = job("brieskorn", "x^2", "x");
  short_order.trunc_u = 1;
  EXPECT_EQ(exit_of(short_order), 3);
}

TEST(Cli, ErrorReportCarriesKind) {
  const Report r = run_guarded(job("brieskorn", "x^2*y + x"));
  ASSERT_TRUE(r.error.has_value());
  EXPECT_EQ((*r.error)["kind"], "precondition");
  EXPECT_EQ(r.status(), "error");
  EXPECT_TRUE(schema_errors(to_json(r, "T")).empty());
}

TEST(Cli, ReportsConformToSchema) {
  for (const char* cmd : {"milnor", "koszul", "fibers", "freeness", "brieskorn", "pairing", "spectrum", "predict",
                          "report"}) {
    const json j = to_json(run(job(cmd, "x^3 + y^4")), "T");
    const auto errs = schema_errors(j);
    EXPECT_TRUE(errs.empty()) << cmd << ": " << (errs.empty() ? "" : errs.front());
  }
}

TEST(Cli, SchemaValidatorRejectsBrokenReports) {
  json j = to_json(run(job("milnor", "x^2", "x")), "T");
  EXPECT_TRUE(schema_errors(j).empty());
  json missing = j;
  missing.erase("conventions");
  EXPECT_FALSE(schema_errors(missing).empty());
  json wrong = j;
  wrong["status"] = "maybe";
  EXPECT_FALSE(schema_errors(wrong).empty());
  json extra = j;
  extra["cross_checks"][0]["note"] = "x";
  EXPECT_FALSE(schema_errors(extra).empty());
}

TEST(Cli, JsonRoundTripAndDeterminism) {
  const fs::path a = temp_file("a.json"), b = temp_file("b.json");
  JobSpec j = job("report", "x^3 + x*y^3");
  j.json_path = a.string();
  std::ostringstream o1, o2;
  EXPECT_EQ(execute(j, o1, "2026-01-01T00:00:00Z"), 0);
  j.json_path = b.string();
  EXPECT_EQ(execute(j, o2, "2026-01-01T00:00:00Z"), 0);
  std::ifstream ia(a), ib(b);
  std::stringstream sa, sb;
  sa << ia.rdbuf();
  sb << ib.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(o1.str(), o2.str());
  const json parsed = json::parse(sa.str());
  EXPECT_TRUE(schema_errors(parsed).empty());
  EXPECT_EQ(json::parse(parsed.dump()), parsed);
  EXPECT_EQ(parsed["conventions"]["spectrum_shift"], "0");
  EXPECT_EQ(parsed["conventions"]["residue_normalization"], "lambda(hess f) = mu");
  fs::remove(a);
  fs::remove(b);
}

TEST(Corpus, Parse) {
  std::istringstream in("# comment\n\nA1 | x^2 + y^2 | x,y | mu=1\nzero | 0 | t | expect=torsion-growth tame=assume\n");
  const auto e = parse_corpus(in);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].name, "A1");
  EXPECT_EQ(e[0].poly, "x^2 + y^2");
  EXPECT_EQ(e[0].expect.at("mu"), "1");
  EXPECT_EQ(e[1].expect.at("expect"), "torsion-growth");
  EXPECT_EQ(e[1].expect.at("tame"), "assume");
  std::istringstream bad("A1 | x^2\n");
  EXPECT_THROW(parse_corpus(bad), ParseError);
  std::istringstream badkv("A1 | x^2 | x | mu\n");
  EXPECT_THROW(parse_corpus(badkv), ParseError);
}

TEST(Corpus, EmptyFile) {
  const fs::path p = temp_file("empty.txt");
  std::ofstream(p) << "# nothing here\n";
  JobSpec j = job("corpus");
  j.corpus_path = p.string();
  const Report r = run(j);
  EXPECT_TRUE(r.payload["corpus"]["entries"].empty());
  EXPECT_EQ(r.exit_code, 0);
  fs::remove(p);
}

TEST(Corpus, ZeroFunctionEntryAndFailureRows) {
  const fs::path p = temp_file("small.txt");
  std::ofstream(p) << "zero | 0 | t | expect=torsion-growth\nwrong | x^2 | x | mu=3\nbroken | x^2*y + x | x,y | mu=0\n";
  JobSpec j = job("corpus");
  j.corpus_path = p.string();
  const Report r = run(j);
  const auto& rows = r.payload["corpus"]["entries"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["status"], "pass");
  EXPECT_EQ(rows[1]["status"], "fail");
  EXPECT_EQ(rows[2]["status"], "error");
  EXPECT_EQ(rows[2]["exit_code"], 3);
  EXPECT_EQ(r.payload["corpus"]["failures"], json({"wrong", "broken"}));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(schema_errors(to_json(r, "T")).empty());
  fs::remove(p);
}

TEST(Corpus, BundledCorpusPasses) {
  const Report r = run(job("corpus"));
  EXPECT_TRUE(r.payload["corpus"]["failures"].empty()) << r.payload["corpus"]["failures"].dump();
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_GE(r.payload["corpus"]["entries"].size(), 14u);
}
