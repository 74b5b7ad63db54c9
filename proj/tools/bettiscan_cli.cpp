#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bettiscan/bettiscan.hpp"

using namespace bettiscan;

namespace {

int run_scan(const ScanOptions& opt, const std::optional<std::string>& out_path, const std::string& format) {
  ScanReport rep = scan(opt);
  const std::string body = format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + "\n";
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + *out_path);
    out << body;
    if (!out) throw Error(ErrorCode::Io, "write failed on " + *out_path);
  } else if (format == "csv") {
    std::cout << body;
  }
  std::cerr << rep.summary();
  if (!rep.complete) return 1;
  return rep.counts.unresolved > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicity upper bound checks over Hilbert functions and monomial ideals"};
  app.require_subcommand(1);

  ScanOptions scan_opt;
  std::string prefix_text = "1,3";
  std::string filters_text = "er,gen,aci,growth";
  std::optional<std::string> out_path;
  std::optional<std::string> checkpoint;
  std::optional<std::size_t> stop_after;
  std::string format = "json";
  auto* scan_cmd = app.add_subcommand("scan", "classify every O-sequence of a family");
  scan_cmd->add_option("--vars", scan_opt.n, "number of variables")->check(CLI::Range(1, 8));
  scan_cmd->add_option("--socle-max", scan_opt.socle_max, "largest socle degree")->check(CLI::NonNegativeNumber);
  scan_cmd->add_option("--prefix", prefix_text, "fixed initial values, e.g. 1,3");
  scan_cmd->add_option("--filters", filters_text, "realizability filters: er,gen,aci,growth");
  scan_cmd->add_option("--dfs-cap", scan_opt.classify.dfs_cap, "search node cap per Hilbert function");
  scan_cmd->add_option("--checkpoint", checkpoint, "checkpoint file (resumed when present)");
  scan_cmd->add_option("--checkpoint-interval", scan_opt.checkpoint_interval, "functions between checkpoints");
  scan_cmd->add_option("--out", out_path, "report path");
  scan_cmd->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  scan_cmd->add_option("--jobs", scan_opt.jobs, "worker threads (default: all cores)");
  scan_cmd->add_option("--stop-after", stop_after, "stop after this many functions (report is INCOMPLETE)");

  std::string hf_text;
  int hf_vars = 3;
  auto* hf_cmd = app.add_subcommand("check-hf", "analyse one Hilbert function");
  hf_cmd->add_option("SEQ", hf_text, "comma separated Hilbert function")->required();
  hf_cmd->add_option("--vars", hf_vars, "number of variables")->check(CLI::Range(1, 8));
  hf_cmd->add_option("--filters", filters_text, "realizability filters: er,gen,aci,growth");

  std::string ideal_text;
  int ideal_vars = 0;
  CheckIdealOptions ideal_opt;
  auto* ideal_cmd = app.add_subcommand("check-ideal", "analyse a monomial ideal");
  ideal_cmd->add_option("SPEC", ideal_text, "generators, e.g. 'a^3;b^4;c^4;a*b^2'")->required();
  ideal_cmd->add_option("--truncate", ideal_opt.truncate_degree, "compare with the truncation in this degree");
  ideal_cmd->add_option("--char", ideal_opt.characteristic, "field characteristic (prime)");
  ideal_cmd->add_option("--degree-cap", ideal_opt.degree_cap, "largest internal degree for non-Artinian input");
  ideal_cmd->add_option("--vars", ideal_vars, "number of variables (default: largest variable used)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan_cmd) {
      scan_opt.prefix = HilbertFunction::parse_values(prefix_text);
      scan_opt.classify.filters = parse_filters(filters_text);
      scan_opt.checkpoint_path = checkpoint;
      scan_opt.stop_after = stop_after;
      return run_scan(scan_opt, out_path, format);
    }
    if (*hf_cmd) {
      ClassifyOptions copt;
      copt.filters = parse_filters(filters_text);
      HilbertFunction h = HilbertFunction::parse(hf_text);
      if (!is_o_sequence(h, hf_vars)) throw Error(ErrorCode::NotAdmissible, hf_text + " is not an O-sequence");
      std::cout << check_hf(h, hf_vars, copt);
      return 0;
    }
    if (*ideal_cmd) {
      std::cout << check_ideal(MonomialIdeal::parse(ideal_text, ideal_vars), ideal_opt);
      return 0;
    }
  } catch (const Error& e) {
    std::cout << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
