// nqs: physical-realizability checks for nonlinear quantum stochastic systems.
#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nqs/runner.hpp"

namespace {

struct FileResult {
  std::string path;
  nqs::RunResult result;
};

FileResult process(const std::string& command, const std::string& path, const nqs::RunOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    nqs::RunResult r;
    r.diagnostic = "cannot read file";
    return {path, std::move(r)};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return {path, nqs::run(command, buf.str(), options)};
  } catch (const std::exception& e) {
    nqs::RunResult r;
    r.diagnostic = e.what();
    return {path, std::move(r)};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physical-realizability checks for nonlinear QSDE systems (.qs files)"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string nbar, theta_bar, format = "text", params;
  unsigned cutoff = 0;
  bool relaxed = false;

  for (const char* name : {"check", "extract", "synthesize", "explain"}) {
    const char* help = std::string(name) == "check"        ? "class membership, preservation and realizability"
                       : std::string(name) == "extract"    ? "extract the Hamiltonian and coupling"
                       : std::string(name) == "synthesize" ? "build the QSDE of an oscillator block (H, L)"
                                                           : "check and print every residual matrix";
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("files", files, ".qs description files")->required()->check(CLI::ExistingFile);
    sub->add_option("--nbar", nbar, "nbar normalisation: graded, literal or a positive integer");
    sub->add_option("--theta-bar", theta_bar, "doubled commutation matrix convention: physical or paper");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "structured"}));
    sub->add_option("--oracle-check", cutoff, "cross-check in a Fock space truncated at this cutoff")
        ->check(CLI::Range(1u, 64u));
    sub->add_option("--params", params, "parameter values for the oracle, e.g. b1=1,chi=1/3");
    sub->add_flag("--relaxed-shape", relaxed, "accept multi-generator monomials in A and C");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : nqs::exit_input_error;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  nqs::RunOptions options;
  options.relaxed_shape = relaxed;
  options.format = format == "text" ? nqs::Report::Format::text : nqs::Report::Format::structured;
  try {
    if (!nbar.empty()) {
      options.nbar = nqs::parse_nbar(nbar);
      if (!options.nbar) throw nqs::Error("invalid --nbar value '" + nbar + "'");
    }
    if (!theta_bar.empty()) {
      options.theta_bar = nqs::parse_theta_bar(theta_bar);
      if (!options.theta_bar) throw nqs::Error("invalid --theta-bar value '" + theta_bar + "'");
    }
    if (cutoff > 0) options.oracle_cutoff = cutoff;
    options.params = nqs::parse_assignments(params);
  } catch (const nqs::Error& e) {
    std::cerr << "nqs: " << e.what() << "\n";
    return nqs::exit_input_error;
  }

  std::vector<std::future<FileResult>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, process, command, f, options));

  int exit_code = nqs::exit_success;
  for (auto& job : jobs) {
    FileResult r = job.get();
    if (!r.result.diagnostic.empty()) std::cerr << r.path << ": " << r.result.diagnostic << "\n";
    std::cout << r.result.output;
    exit_code = std::max(exit_code, r.result.exit_code);
  }
  return exit_code;
}
