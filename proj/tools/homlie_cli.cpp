// homlie: command-line front end for the homlie library.
//
// Exit codes: 0 pass, 1 a check failed, 2 a hypothesis, precondition or
// validation was rejected, 3 the input could not be parsed.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homlie/homlie.hpp"

namespace {

using namespace homlie;
using io::json;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kRejected = 2;
constexpr int kParseError = 3;

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw ParseError("io", "cannot open \"" + path + "\"", "");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::precondition, "cannot write \"" + path + "\"");
  out << text;
}

AlgebraReport checks_by_name(const io::AlgebraFile& a, const std::vector<std::string>& names) {
  AlgebraReport rep;
  AlgebraReport facts;
  detail::add_structure_facts(a.algebra, facts);
  auto fact = [&](const std::string& name) {
    CheckResult c = *facts.find(name);
    c.informational = false;
    rep.add(std::move(c));
  };
  for (const auto& n : names) {
    if (n == "skew") {
      rep.merge(check_skew(a.algebra));
    } else if (n == "homlie") {
      rep.merge(check_homlie_jacobi(a.algebra));
    } else if (n == "centroid") {
      rep.merge(check_centroid(a.algebra));
    } else if (n == "metric") {
      if (!a.metric) throw Error(ErrorCode::precondition, "metric check requested but the file has no metric");
      rep.merge(check_metric(QuadraticHomLieAlgebra(a.algebra, *a.metric, unchecked)));
    } else if (n == "lie") {
      rep.merge(check_classical_jacobi(a.algebra));
    } else if (n == "perfect") {
      fact("is_perfect");
    } else if (n == "center") {
      fact("trivial_center");
    } else if (n == "nilpotent") {
      fact("twist_nilpotent");
    }
  }
  rep.quantities = facts.quantities;
  return rep;
}

int cmd_verify(const std::string& path, const std::vector<std::string>& checks) {
  io::AlgebraFile a = io::parse_algebra(read_input(path));
  AlgebraReport rep;
  if (checks.empty()) {
    rep = a.metric ? full_report(QuadraticHomLieAlgebra(a.algebra, *a.metric, unchecked)) : full_report(a.algebra);
  } else {
    rep = checks_by_name(a, checks);
  }
  std::cout << io::dump(io::report_json(rep));
  return rep.passed() ? kPass : kCheckFailed;
}

int cmd_construct(const std::string& path, const std::string& out) {
  DoubleExtensionData d = io::parse_extension(read_input(path));
  HypothesisReport hyp = check_hypotheses(d);
  if (!hyp.passed()) {
    json j;
    j["hypotheses"] = io::report_json(hyp);
    std::cout << io::dump(j);
    return kRejected;
  }
  Certified c = build_and_certify(d);
  std::string text = io::serialize_algebra(c.algebra);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_output(out, text);
    json j;
    j["hypotheses"] = io::report_json(hyp);
    j["report"] = io::report_json(c.report);
    std::cout << io::dump(j);
  }
  return c.report.passed() ? kPass : kCheckFailed;
}

int cmd_decompose(const std::string& path, const std::string& out) {
  io::AlgebraFile a = io::parse_algebra(read_input(path));
  QuadraticHomLieAlgebra q = io::quadratic_of(a);
  FittingSplit f = fitting(q);
  DecompositionData d = decompose(q);
  AlgebraReport val = validate_decomposition(d, q);
  json j;
  j["fitting"] = {{"ell", f.ell},
                  {"lie_part_dim", f.image.dim()},
                  {"nilpotent_part_dim", f.kernel.dim()},
                  {"orthogonal", f.orthogonal}};
  j["validation"] = io::report_json(val);
  if (out.empty()) {
    j["decomposition"] = io::decomposition_json(d);
  } else {
    write_output(out, io::dump(io::decomposition_json(d)));
  }
  std::cout << io::dump(j);
  return val.passed() ? kPass : kRejected;
}

int cmd_analyze(const std::string& path) {
  io::AlgebraFile a = io::parse_algebra(read_input(path));
  const HomLieAlgebra& g = a.algebra;
  AlgebraReport facts;
  detail::add_structure_facts(g, facts);
  json j;
  j["dim"] = g.dim();
  j["center_dim"] = center(g).dim();
  j["derived_dim"] = derived_subalgebra(g).dim();
  j["centroid_dim"] = centroid_space(g).dim();
  j["twist_in_centroid"] = check_centroid(g).passed();
  j["is_lie"] = facts.holds("is_lie");
  auto nil = twist_nilpotency(g.twist());
  j["twist_nilpotent"] = nil.nilpotent;
  j["nilpotency_index"] = nil.index ? json(*nil.index) : json(nullptr);
  std::cout << io::dump(j);
  return kPass;
}

/// "i,j,k=p/q" with 1-based indices.
std::pair<std::array<std::size_t, 3>, Scalar> parse_mu(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos) throw ParseError("malformed_mu", "expected i,j,k=p/q", spec);
  std::array<std::size_t, 3> idx{};
  std::stringstream ss(spec.substr(0, eq));
  std::string part;
  std::size_t n = 0;
  while (std::getline(ss, part, ',')) {
    if (n == 3 || part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("malformed_mu", "expected i,j,k=p/q", spec);
    std::size_t v = std::stoul(part);
    if (v == 0) throw ParseError("index_out_of_range", "mu indices are 1-based", spec);
    idx[n++] = v - 1;
  }
  if (n != 3) throw ParseError("malformed_mu", "expected i,j,k=p/q", spec);
  return {idx, parse_scalar(spec.substr(eq + 1), spec)};
}

int cmd_example(const std::string& which, const std::vector<std::string>& mus, const std::string& scale) {
  std::size_t n = which == "sl3" ? 3 : which == "sl2" ? 2 : 0;
  if (n == 0) throw Error(ErrorCode::precondition, "unknown example \"" + which + "\" (expected sl2 or sl3)");
  CyclicTensor mu;
  for (const auto& m : mus) {
    auto [idx, v] = parse_mu(m);
    if (!mu.emplace(idx, v).second) throw ParseError("duplicate_entry", "repeated mu entry", m);
  }
  QuadraticHomLieAlgebra q = build(cotangent_extension(n, mu, parse_scalar(scale, "--scale")));
  std::cout << io::serialize_algebra(q, cotangent_labels(q.dim() / 2));
  return kPass;
}

int cmd_roundtrip(const std::string& path) {
  io::AlgebraFile a = io::parse_algebra(read_input(path));
  QuadraticHomLieAlgebra q = io::quadratic_of(a);
  DecompositionData d = decompose(q);
  QuadraticHomLieAlgebra rebuilt = build(d.to_extension_data());
  QuadraticHomLieAlgebra original = change_basis(q, d.assembled_basis());
  bool br = rebuilt.bracket() == original.bracket();
  bool tw = rebuilt.twist() == original.twist();
  bool gr = rebuilt.gram() == original.gram();
  json j;
  j["bracket_match"] = br;
  j["twist_match"] = tw;
  j["gram_match"] = gr;
  j["result"] = br && tw && gr ? "exact match" : "mismatch";
  std::cout << io::dump(j);
  return br && tw && gr ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, verify and decompose quadratic Hom-Lie algebras over Q"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker thread hint (computation is single-threaded)");

  std::string file, out, which, scale = "1";
  std::vector<std::string> checks, mus;

  auto* verify = app.add_subcommand("verify", "Check the axioms of an algebra file and print a JSON report");
  verify->add_option("file", file, "Algebra file, or - for stdin")->required();
  verify->add_option("--checks", checks, "Subset of skew,homlie,centroid,metric,lie,perfect,center,nilpotent")
      ->delimiter(',')
      ->check(CLI::IsMember({"skew", "homlie", "centroid", "metric", "lie", "perfect", "center", "nilpotent"}));

  auto* construct = app.add_subcommand("construct", "Check hypotheses and build a double extension");
  construct->add_option("file", file, "Extension file, or - for stdin")->required();
  construct->add_option("-o,--output", out, "Write the algebra here and the reports to stdout");

  auto* decomp = app.add_subcommand("decompose", "Extract and validate double-extension data");
  decomp->add_option("file", file, "Algebra file with metric, or - for stdin")->required();
  decomp->add_option("-o,--output", out, "Write the decomposition here");

  auto* analyze = app.add_subcommand("analyze", "Print center, derived algebra, centroid and nilpotency data");
  analyze->add_option("file", file, "Algebra file, or - for stdin")->required();

  auto* example = app.add_subcommand("example", "Emit sl3 + sl3* or sl2 + sl2* with twist given by the Killing form");
  example->add_option("which", which, "sl3 or sl2")->required()->check(CLI::IsMember({"sl2", "sl3"}));
  example->add_option("--mu", mus, "Cyclic 3-form value i,j,k=p/q (1-based), repeatable");
  example->add_option("--scale", scale, "Multiple of the Killing form used as twist");

  auto* roundtrip = app.add_subcommand("roundtrip", "Decompose, rebuild and compare exactly");
  roundtrip->add_option("file", file, "Algebra file with metric, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kParseError;
  }

  try {
    if (*verify) return cmd_verify(file, checks);
    if (*construct) return cmd_construct(file, out);
    if (*decomp) return cmd_decompose(file, out);
    if (*analyze) return cmd_analyze(file);
    if (*example) return cmd_example(which, mus, scale);
    if (*roundtrip) return cmd_roundtrip(file);
  } catch (const HypothesisError& e) {
    json j = io::error_json(e);
    j["hypotheses"] = io::report_json(e.report());
    std::cerr << j.dump() << "\n";
    return kRejected;
  } catch (const ParseError& e) {
    std::cerr << io::error_json(e).dump() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << io::error_json(e).dump() << "\n";
    return kRejected;
  }
  return kRejected;
}
