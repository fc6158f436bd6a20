#pragma once

#include <cstddef>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toric/embedding.hpp"
#include "toric/json_io.hpp"
#include "toric/matrix.hpp"
#include "toric/point_configuration.hpp"
#include "toric/polytope.hpp"

namespace toric {
namespace cli {

using nlohmann::json;

struct CommandResult {
  json doc;
  int exit_code = 0;
  std::string summary;
};

inline std::string format_point(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

inline CommandResult cmd_is_generating(const std::string& path) {
  InputDocument doc = load_input_document(path);
  PointConfiguration s = to_configuration(doc);
  LatticeBasis lattice = difference_lattice(s);
  const bool generating = lattice.is_full();
  std::vector<Int> div = lattice.elementary_divisors();
  CommandResult res;
  res.doc = {{"command", "is-generating"},
             {"input", *doc.name},
             {"generating", generating},
             {"rank", lattice.rank()},
             {"divisors", io::divisors_json(div)}};
  std::ostringstream os;
  os << "is-generating: " << (generating ? "true" : "false") << " (rank "
     << lattice.rank() << ", divisors " << format_divisors(div) << ")";
  res.summary = os.str();
  return res;
}

inline CommandResult cmd_reduce(const std::string& path) {
  InputDocument doc = load_input_document(path);
  PointConfiguration s = to_configuration(doc);
  ReducedConfiguration r = reduce(s);
  CommandResult res;
  res.doc = {{"command", "reduce"},
             {"input", *doc.name},
             {"e", r.reduced_dimension},
             {"base_point", io::to_json(r.base_point)},
             {"reduced_points", io::to_json(r.config.points())},
             {"iso", io::to_json(r.iso_certificate)}};
  std::ostringstream os;
  os << "reduce: e = " << r.reduced_dimension << ", base point "
     << format_point(r.base_point) << ", " << r.config.size() << " points";
  res.summary = os.str();
  return res;
}

inline CommandResult cmd_equiv(const std::string& path_a,
                               const std::string& path_b,
                               const std::string& mode, bool n_given,
                               long long n_value) {
  InputDocument doc_a = load_input_document(path_a);
  InputDocument doc_b = load_input_document(path_b);
  PointConfiguration sa = to_configuration(doc_a);
  PointConfiguration sb = to_configuration(doc_b);
  EquivalenceVerdict verdict;
  std::string level;
  std::size_t ambient_n = 0;
  if (mode == "affine") {
    verdict = affinely_equivalent_general(sa, sb);
    level = "ambient";
  } else {
    if (n_given && n_value < 0) throw InputError("N: must be nonnegative");
    ambient_n = n_given ? static_cast<std::size_t>(n_value)
                        : std::max(sa.size(), sb.size()) - 1;
    verdict = projectively_equivalent(sa, sb, ambient_n);
    level = "reduced";
  }
  CommandResult res;
  res.doc = {{"command", "equiv"},
             {"mode", mode},
             {"inputs", json::array({*doc_a.name, *doc_b.name})},
             {"equivalent", verdict.equivalent}};
  if (mode == "projective") res.doc["N"] = ambient_n;
  if (verdict.witness)
    res.doc["certificate"] = {{"A", io::to_json(verdict.witness->A)},
                              {"b", io::to_json(verdict.witness->b)},
                              {"level", level}};
  if (!verdict.equivalent) res.doc["obstruction"] = verdict.obstruction;
  res.exit_code = verdict.equivalent ? 0 : 1;
  std::ostringstream os;
  os << "equiv " << mode;
  if (mode == "projective") os << " (N = " << ambient_n << ")";
  os << ": " << (verdict.equivalent ? "equivalent" : "not equivalent");
  if (!verdict.equivalent) os << " (" << verdict.obstruction << ")";
  res.summary = os.str();
  return res;
}

inline CommandResult cmd_zsolid(const std::string& path) {
  InputDocument doc = load_input_document(path);
  LatticePolytope p = to_polytope(doc);
  PointConfiguration pts = p.lattice_points();
  const bool solid = p.is_solid();
  const bool z_solid = is_affinely_generating(pts);
  CommandResult res;
  res.doc = {{"command", "zsolid"},
             {"input", *doc.name},
             {"solid", solid},
             {"z_solid", z_solid},
             {"n_lattice_points", pts.size()}};
  std::ostringstream os;
  os << "zsolid: solid = " << (solid ? "true" : "false") << ", Z-solid = "
     << (z_solid ? "true" : "false") << ", " << pts.size() << " lattice points";
  res.summary = os.str();
  return res;
}

inline CommandResult cmd_points(const std::string& path) {
  InputDocument doc = load_input_document(path);
  LatticePolytope p = to_polytope(doc);
  PointConfiguration pts = p.lattice_points();
  CommandResult res;
  res.doc = {{"command", "points"},
             {"input", *doc.name},
             {"count", pts.size()},
             {"points", io::to_json(pts.points())}};
  std::ostringstream os;
  os << "points: " << pts.size() << " lattice points";
  res.summary = os.str();
  return res;
}

inline CommandResult cmd_fingerprint(const std::string& path) {
  InputDocument doc = load_input_document(path);
  PointConfiguration s = to_configuration(doc);
  MonomialEmbedding e(s);
  RelationLattice rel = relation_lattice(e);
  const std::size_t vdim = variety_dimension(e);
  const std::size_t sdim = span_dimension(e);
  CommandResult res;
  res.doc = {{"command", "fingerprint"},
             {"input", *doc.name},
             {"relations", io::to_json(rel.lattice.basis())},
             {"variety_dimension", vdim},
             {"span_dimension", sdim}};
  std::ostringstream os;
  os << "fingerprint: " << rel.lattice.rank() << " relation"
     << (rel.lattice.rank() == 1 ? "" : "s") << ", variety dimension " << vdim
     << ", span dimension " << sdim;
  res.summary = os.str();
  return res;
}

inline CommandResult cmd_verify_certificate(const std::string& verdict_path,
                                            const std::string& path_a,
                                            const std::string& path_b) {
  json vj = load_json_file(verdict_path);
  if (!vj.is_object() || !vj.contains("certificate"))
    throw InputError("certificate: missing from verdict document");
  const json& cert = vj.at("certificate");
  if (!cert.is_object() || !cert.contains("A") || !cert.contains("b") ||
      !cert.contains("level"))
    throw InputError("certificate: expected fields A, b, level");
  IntMatrix a = io::parse_integer_matrix(cert.at("A"), "certificate.A");
  IntVec b = io::parse_integer_vector(cert.at("b"), "certificate.b");
  if (!cert.at("level").is_string())
    throw InputError("certificate.level: expected a string");
  const std::string level = cert.at("level").get<std::string>();
  if (level != "ambient" && level != "reduced")
    throw InputError("certificate.level: expected \"ambient\" or \"reduced\"");
  PointConfiguration sa = to_configuration(load_input_document(path_a));
  PointConfiguration sb = to_configuration(load_input_document(path_b));
  bool valid = false;
  std::string reason;
  try {
    AffineMap phi{a, b};
    const PointConfiguration& src = sa;
    if (level == "ambient") {
      if (!phi.is_unimodular())
        reason = "matrix is not unimodular";
      else if (apply(phi, src) != sb)
        reason = "image does not match the target configuration";
      else
        valid = true;
    } else {
      ReducedConfiguration ra = reduce(sa);
      ReducedConfiguration rb = reduce(sb);
      if (!phi.is_unimodular())
        reason = "matrix is not unimodular";
      else if (apply(phi, ra.config) != rb.config)
        reason = "image does not match the reduced target configuration";
      else
        valid = true;
    }
  } catch (const std::invalid_argument& e) {
    valid = false;
    reason = e.what();
  }
  CommandResult res;
  res.doc = {{"command", "verify-certificate"},
             {"valid", valid},
             {"level", level}};
  if (!valid) res.doc["reason"] = reason;
  res.exit_code = valid ? 0 : 1;
  std::ostringstream os;
  os << "verify-certificate: " << (valid ? "valid" : "invalid");
  os << " (" << level << " level" << (valid ? "" : ": " + reason) << ")";
  res.summary = os.str();
  return res;
}

}  // namespace cli

// Full command-line front end, callable in-process. `args` excludes the
// program name. Returns the process exit code: 0 success or positive verdict,
// 1 valid-input negative verdict, 2 input or usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"exact classification toolkit for toric subvarieties of "
               "projective space"};
  app.name("toric");
  std::string output_path;
  bool quiet = false;
  app.add_option("--output", output_path,
                 "write the JSON document to this file instead of stdout");
  app.add_flag("--quiet", quiet, "suppress the summary line on stderr");
  app.require_subcommand(1);

  std::string file_a, file_b, verdict_file, mode;
  long long n_value = 0;
  CLI::App* c_gen = app.add_subcommand(
      "is-generating", "does the configuration affinely generate its lattice");
  c_gen->add_option("file", file_a, "input document")->required();
  CLI::App* c_reduce = app.add_subcommand(
      "reduce", "reduce the configuration to its difference lattice");
  c_reduce->add_option("file", file_a, "input document")->required();
  CLI::App* c_equiv =
      app.add_subcommand("equiv", "decide equivalence of two configurations");
  c_equiv->add_option("fileA", file_a, "first input document")->required();
  c_equiv->add_option("fileB", file_b, "second input document")->required();
  c_equiv->add_option("--mode", mode, "affine or projective")
      ->required()
      ->check(CLI::IsMember({"affine", "projective"}));
  CLI::Option* n_opt = c_equiv->add_option(
      "--N", n_value, "ambient projective dimension (projective mode)");
  CLI::App* c_zsolid = app.add_subcommand(
      "zsolid", "solidity and Z-solidity of a lattice polytope");
  c_zsolid->add_option("file", file_a, "polytope document")->required();
  CLI::App* c_points = app.add_subcommand(
      "points", "lattice points of a polytope in lexicographic order");
  c_points->add_option("file", file_a, "polytope document")->required();
  CLI::App* c_fingerprint = app.add_subcommand(
      "fingerprint", "relation lattice and dimensions of the embedded variety");
  c_fingerprint->add_option("file", file_a, "input document")->required();
  CLI::App* c_verify = app.add_subcommand(
      "verify-certificate", "re-verify an equivalence certificate");
  c_verify->add_option("verdict", verdict_file, "verdict document from equiv")
      ->required();
  c_verify->add_option("fileA", file_a, "first original input")->required();
  c_verify->add_option("fileB", file_b, "second original input")->required();
  for (CLI::App* sub : {c_gen, c_reduce, c_equiv, c_zsolid, c_points,
                        c_fingerprint, c_verify})
    sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("toric");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    cli::CommandResult res;
    if (c_gen->parsed())
      res = cli::cmd_is_generating(file_a);
    else if (c_reduce->parsed())
      res = cli::cmd_reduce(file_a);
    else if (c_equiv->parsed())
      res = cli::cmd_equiv(file_a, file_b, mode, n_opt->count() > 0, n_value);
    else if (c_zsolid->parsed())
      res = cli::cmd_zsolid(file_a);
    else if (c_points->parsed())
      res = cli::cmd_points(file_a);
    else if (c_fingerprint->parsed())
      res = cli::cmd_fingerprint(file_a);
    else
      res = cli::cmd_verify_certificate(verdict_file, file_a, file_b);
    const std::string text = res.doc.dump(2) + "\n";
    if (!output_path.empty()) {
      std::ofstream f(output_path);
      if (!f) {
        err << "error: cannot write output file: " << output_path << "\n";
        return 2;
      }
      f << text;
    } else {
      out << text;
    }
    if (!quiet) err << res.summary << "\n";
    return res.exit_code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace toric
