#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "f2reg/cli.hpp"
#include "f2reg/errors.hpp"
#include "f2reg/report.hpp"
#include "f2reg/table_io.hpp"
#include "oracles.hpp"

namespace f2reg {
namespace {

using nlohmann::json;

std::string encode(const FunctionTable& f) {
  std::ostringstream os;
  write_table(os, f);
  return os.str();
}

FormatError::Kind decode_error(const std::string& bytes) {
  std::istringstream is(bytes);
  try {
    read_table(is);
  } catch (const FormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no FormatError";
  return FormatError::Kind::kIo;
}

TEST(TableIo, RoundTrip) {
  const FunctionTable f = oracle::random_table(9, 1);
  const std::string bytes = encode(f);
  EXPECT_EQ(bytes.size(), 9u + 8u * 512u);
  EXPECT_EQ(bytes.substr(0, 4), "F2FN");
  std::istringstream is(bytes);
  EXPECT_EQ(read_table(is).values(), f.values());
}

TEST(TableIo, HeaderLayoutIsLittleEndian) {
  const std::string bytes = encode(FunctionTable::constant(2, 1.0));
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);
  EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 2);
  EXPECT_EQ(bytes[6], 0);
  EXPECT_EQ(bytes[8], 0);
  // 1.0 = 0x3FF0000000000000, least significant byte first.
  EXPECT_EQ(static_cast<unsigned char>(bytes[16]), 0x3F);
  EXPECT_EQ(static_cast<unsigned char>(bytes[15]), 0xF0);
}

TEST(TableIo, ErrorKinds) {
  const std::string good = encode(oracle::random_table(3, 2));
  EXPECT_EQ(decode_error(""), FormatError::Kind::kMalformedHeader);
  EXPECT_EQ(decode_error("F2FX" + good.substr(4)), FormatError::Kind::kMalformedHeader);
  std::string version = good;
  version[4] = 2;
  EXPECT_EQ(decode_error(version), FormatError::Kind::kMalformedHeader);
  EXPECT_EQ(decode_error(good.substr(0, good.size() - 3)), FormatError::Kind::kTruncatedPayload);
  EXPECT_EQ(decode_error(good + "x"), FormatError::Kind::kMalformedHeader);
  std::string range = encode(FunctionTable::constant(1, 1.0));
  range[16] = 0x40;  // 2.0
  EXPECT_EQ(decode_error(range), FormatError::Kind::kValueOutOfRange);
  std::string big = good.substr(0, 9);
  big[5] = 41;
  EXPECT_EQ(decode_error(big), FormatError::Kind::kMalformedHeader);
  EXPECT_THROW(read_table(std::filesystem::path("/nonexistent/table.f2fn")), FormatError);
}

TEST(TableIo, DenseGuardApplies) {
  std::string bytes = encode(FunctionTable::constant(1, 0.0)).substr(0, 9);
  bytes[5] = 30;
  std::istringstream is(bytes);
  EXPECT_THROW(read_table(is), GuardError);
}

TEST(Report, RationalAndVectorEncoding) {
  EXPECT_EQ(rational_string(Rational(2, 12)), "1/6");
  EXPECT_EQ(rational_string(Rational(3)), "3");
  EXPECT_EQ(vector_json(F2Vector::from_index(11, 300)), json(300));
  F2Vector wide(70);
  wide.set(69);
  EXPECT_TRUE(vector_json(wide).is_string());
  const json r = rational_json(Rational(1, 4));
  EXPECT_EQ(r["exact"], "1/4");
  EXPECT_EQ(r["value"], 0.25);
}

TEST(Report, SchemaTagAndStableOrder) {
  const Instance inst = build_instance(2, 1);
  const std::string a = emit_report(instance_manifest(inst), "instance");
  const std::string b = emit_report(instance_manifest(build_instance(2, 1)), "instance");
  EXPECT_EQ(a, b);
  const json j = json::parse(a);
  EXPECT_EQ(j["schema"], "f2reglab.instance/1");
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["xi"][1]["xi"], json::array({1, 2}));
}

TEST(Report, WitnessCertificateJson) {
  const Instance inst = build_instance(2, 1);
  const Subspace h = echelonize(3, oracle::to_vectors(3, {1}));
  const json j = witness_scan(inst, h, Rational(1, 32));
  EXPECT_EQ(j["coefficients"], json::array({"1/4", "0", "1/2", "1/4"}));
  EXPECT_EQ(j["gamma"], 1);
  EXPECT_EQ(j["bad_fraction"]["exact"], "0");
  EXPECT_EQ(j["subspace"]["basis"], json::array({1}));
}

TEST(Report, TraceCsv) {
  const DecompositionTrace t = find_regular_subspace(*build_instance(2, 1).table, 1.0 / 32);
  const std::string csv = trace_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "iteration,dim,codim,index,energy,irregular_cosets,added");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), t.iterations.size() + 1);
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "f2reglab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ParseRational) {
  EXPECT_EQ(cli::parse_rational("1/48"), Rational(1, 48));
  EXPECT_EQ(cli::parse_rational("0.03125"), Rational(1, 32));
  EXPECT_EQ(cli::parse_rational("3"), Rational(3));
  EXPECT_EQ(cli::parse_rational(".5"), Rational(1, 2));
  EXPECT_THROW(cli::parse_rational("1/0"), PreconditionError);
  EXPECT_THROW(cli::parse_rational("abc"), PreconditionError);
  EXPECT_THROW(cli::parse_rational("1.2.3"), PreconditionError);
}

TEST(Cli, GenCheckDecomposeRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "f2reglab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string table = (dir / "s2.f2fn").string();
  CliRun gen = run_cli({"gen", "--eps", "1/32", "--out", table});
  ASSERT_EQ(gen.code, cli::kExitOk) << gen.err;
  EXPECT_EQ(json::parse(gen.out)["s"], 2);

  CliRun check = run_cli({"check", "--in", table, "--basis", "1", "--eps", "1/32"});
  ASSERT_EQ(check.code, cli::kExitOk) << check.err;
  const json c = json::parse(check.out);
  EXPECT_EQ(c["regular"], false);
  EXPECT_EQ(c["witnesses"].size(), 3u);

  CliRun zero = run_cli({"check", "--in", table, "--eps", "1/32"});
  EXPECT_EQ(json::parse(zero.out)["regular"], true);

  const std::string csv = (dir / "trace.csv").string();
  CliRun dec = run_cli({"decompose", "--in", table, "--eps", "1/32", "--csv", csv});
  ASSERT_EQ(dec.code, cli::kExitOk) << dec.err;
  EXPECT_EQ(json::parse(dec.out)["final_index"], 8);
  EXPECT_TRUE(std::filesystem::exists(csv));

  CliRun round = run_cli({"round", "--in", table, "--tau", "0.16", "--pairs", "5"});
  ASSERT_EQ(round.code, cli::kExitOk) << round.err;
  std::filesystem::remove_all(dir);
}

TEST(Cli, EvalAndVerify) {
  CliRun eval = run_cli({"eval", "--s", "2", "--x", "5"});
  ASSERT_EQ(eval.code, cli::kExitOk) << eval.err;
  EXPECT_EQ(json::parse(eval.out)["value"]["exact"], "0");
  CliRun hex = run_cli({"eval", "--s", "2", "--x", "0x4"});
  EXPECT_EQ(json::parse(hex.out)["value"]["exact"], "1");

  CliRun verify = run_cli({"verify-lowerbound", "--s", "2"});
  ASSERT_EQ(verify.code, cli::kExitOk) << verify.err;
  EXPECT_EQ(json::parse(verify.out)["summary"], "15/15 nonzero subspaces irregular");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"check", "--in", "/nonexistent", "--eps", "0.1"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen", "--s", "4", "--out", "/tmp/never.f2fn", "--samples", "100"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"spanning", "--d", "4", "--count", "4", "--rho", "0.51", "--retries", "3"}).code,
            cli::kExitClaimFailed);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

}  // namespace
}  // namespace f2reg
