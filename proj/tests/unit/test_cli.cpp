#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mchain/cli.hpp"
#include "mchain/errors.hpp"
#include "mchain/hurwitz.hpp"
#include "mchain/minkowski.hpp"

using namespace mchain;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, HurwitzGoldenCsv) {
  auto r = invoke({"hurwitz", "--alpha", "builtin:golden", "--steps", "6", "--csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "k,p,q,pp,qp,letter,m\n"
            "1,0,1,1,1,L,1\n"
            "2,1,2,1,1,R,2\n"
            "3,1,2,2,3,L,3\n"
            "4,3,5,2,3,R,5\n"
            "5,3,5,5,8,L,8\n"
            "6,8,13,5,8,R,13\n");
}

TEST(Cli, HurwitzJsonSchema) {
  auto r = invoke({"hurwitz", "--alpha", "builtin:golden", "--steps", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["word"], "LRLRLR");
  ASSERT_EQ(j["pairs"].size(), 6u);
  EXPECT_EQ(j["pairs"][5]["p"], 8);
  EXPECT_EQ(j["pairs"][5]["qp"], 8);
  EXPECT_EQ(j["pairs"][5]["letter"], "R");
  EXPECT_EQ(j["partial_quotients"], nlohmann::json::array({1, 1, 1, 1, 1}));
}

TEST(Cli, BigIntegersRoundTripAsStrings) {
  auto r = invoke({"hurwitz", "--alpha", "builtin:golden", "--steps", "120"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  HurwitzChain c = hurwitz_chain(builtin("golden"), 120);
  ASSERT_EQ(j["pairs"].size(), c.states.size());
  bool saw_string = false;
  for (std::size_t k = 0; k < c.states.size(); ++k) {
    const auto& q = j["pairs"][k]["q"];
    Integer parsed = q.is_string() ? Integer(q.get<std::string>()) : Integer(q.get<long>());
    saw_string = saw_string || q.is_string();
    EXPECT_EQ(parsed, c.states[k].pair.q);
  }
  EXPECT_TRUE(saw_string);
}

TEST(Cli, MinkowskiJsonRoundTrip) {
  auto r = invoke({"minkowski", "--alpha", "builtin:cos2pi7", "--powers", "x:1", "--m-max", "3"});
  EXPECT_EQ(r.code, 1);
  r = invoke({"minkowski", "--powers", "builtin:cos2pi7:2", "--m-max", "40", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  RealScalar th = builtin("cos2pi7");
  auto ctx = std::make_shared<const FormContext>(powers_target(th, 2));
  auto entries = chain(ctx, ChainLimits{40, std::nullopt});
  ASSERT_EQ(j["entries"].size(), entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = j["entries"][k];
    EXPECT_EQ(e["m_k"].get<long>(), entries[k].m_k);
    const IntMatrix& B = entries[k].B;
    for (std::size_t a = 0; a < B.rows(); ++a) {
      for (std::size_t b = 0; b < B.cols(); ++b) EXPECT_EQ(Integer(e["B"][a][b].get<long>()), B(a, b));
    }
    for (std::size_t i = 0; i < entries[k].beta.size(); ++i) {
      Rational lo = parse_rational(e["beta"][i]["lo"].get<std::string>());
      Rational hi = parse_rational(e["beta"][i]["hi"].get<std::string>());
      Interval x = entries[k].beta[i].interval(200);
      EXPECT_LE(lo, x.lo);
      EXPECT_GE(hi, x.hi);
    }
  }
}

TEST(Cli, MinkowskiCsvTrajectory) {
  auto r = invoke({"minkowski", "--alpha", "builtin:golden", "--m-max", "10", "--csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "k,m_k,abs_alpha_k1_lo,abs_alpha_k1_hi");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_NE(line.find(",0.618033988749894848"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 5);
}

TEST(Cli, SplitSpecs) {
  EXPECT_EQ(cli::split_specs("builtin:golden"), (std::vector<std::string>{"builtin:golden"}));
  EXPECT_EQ(cli::split_specs("algebraic:1,1,-1:0,1,builtin:golden"),
            (std::vector<std::string>{"algebraic:1,1,-1:0,1", "builtin:golden"}));
  EXPECT_THROW(cli::split_specs(",builtin:golden"), ParseError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"hurwitz", "--alpha", "nonsense:1"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"hurwitz", "--alpha", "builtin:nope"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"hurwitz", "--alpha", "builtin:golden", "--bogus"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"hurwitz", "--alpha", "builtin:golden", "--csv", "--json"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"lattice", "--alpha", "builtin:golden", "--t", "0"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"dirichlet", "--alpha", "builtin:golden", "--Q", "1"}).code, cli::kUsage);
  // The decimal tail is too coarse to decide the second partial quotient.
  EXPECT_EQ(invoke({"cf", "--alpha", "decimal:0.5:tail=1/1000"}).code, cli::kPrecisionExhausted);
  // Only t = Q: the reduced basis at Q = 5 has |A|_inf = 5.
  auto r = invoke({"dirichlet", "--alpha", "builtin:golden", "--Q", "5", "--policy", "j=0,refine=0"});
  EXPECT_EQ(r.code, cli::kInconsistency);
  EXPECT_NE(r.err.find("|A|_inf = 5"), std::string::npos);
  // A rational coordinate makes the target dependent.
  EXPECT_EQ(invoke({"minkowski", "--alpha", "rational:1/2", "--m-max", "3"}).code, cli::kInconsistency);
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> runs{
      {"hurwitz", "--alpha", "builtin:golden", "--steps", "30", "--table"},
      {"cf", "--alpha", "builtin:cos2pi7", "--terms", "15", "--csv"},
      {"minkowski", "--powers", "builtin:liouville:1", "--m-max", "2000", "--csv"},
      {"lattice", "--alpha", "builtin:golden", "--t", "1:3:1/2", "--reduced"},
      {"lattice", "--alpha", "builtin:golden", "--norm", "gm:5", "--minima", "--csv"},
      {"dirichlet", "--alpha", "builtin:golden", "--Q", "2:8"},
      {"figure1", "--n", "2", "--m-max", "200"},
  };
  for (const auto& a : runs) {
    auto x = invoke(a);
    auto y = invoke(a);
    ASSERT_EQ(x.code, 0) << a[0] << ": " << x.err;
    EXPECT_FALSE(x.out.empty());
    EXPECT_EQ(x.out, y.out) << a[0];
  }
}

TEST(Cli, OutFileMatchesStdout) {
  const std::string path = ::testing::TempDir() + "mchain_cli_out.csv";
  auto a = invoke({"figure1", "--m-max", "120", "--out", path});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_TRUE(a.out.empty());
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  auto b = invoke({"figure1", "--m-max", "120"});
  EXPECT_EQ(ss.str(), b.out);
  std::remove(path.c_str());
}

TEST(Cli, Figure1SingleRow) {
  auto r = invoke({"figure1", "--n", "1", "--m-max", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string header, row, extra;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header, "k,abs_lambda_k1_mid,abs_lambda_k1_width");
  EXPECT_EQ(row.rfind("1,0.1235967680", 0), 0u) << row;
  EXPECT_FALSE(std::getline(is, extra));
}
