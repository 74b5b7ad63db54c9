#pragma once

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "betti.hpp"
#include "error.hpp"
#include "hilbert.hpp"
#include "koszul.hpp"
#include "monomial.hpp"
#include "verdict.hpp"

namespace bettiscan {

using Json = nlohmann::ordered_json;

struct ScanOptions {
  int n = 3;
  int socle_max = 9;
  std::vector<Count> prefix{1, 3};
  ClassifyOptions classify;
  std::optional<std::string> checkpoint_path;
  std::size_t checkpoint_interval = 10'000;
  unsigned jobs = 0;  // 0: hardware concurrency
  std::size_t chunk_size = 2048;
  /// Process at most this many Hilbert functions in this run, then stop with
  /// an INCOMPLETE report (used to exercise resume).
  std::optional<std::size_t> stop_after;
};

/// One Hilbert function whose greedy diagram violates the upper bound.
struct ExceptionRecord {
  std::string hf;
  Count e = 0;
  std::vector<Count> shifts;
  Count lhs = 0;
  Count rhs = 0;
  Status status = Status::Eliminated;
  std::string reason;
  std::size_t violating = 0;
  std::size_t nodes = 0;
  bool cap_exceeded = false;
  unsigned long failure_sets = 0;
  std::string greedy_diagram;  // machine form
  Json witnesses = Json::object();

  static ExceptionRecord from(const Classification& c) {
    ExceptionRecord r;
    r.hf = c.hf.to_string();
    r.e = c.verdict.e;
    r.shifts = c.verdict.shifts;
    r.lhs = c.verdict.lhs;
    r.rhs = c.verdict.rhs;
    r.status = c.status;
    r.reason = c.reason;
    r.violating = c.violating;
    r.nodes = c.nodes;
    r.cap_exceeded = c.cap_exceeded;
    r.failure_sets = c.failure_sets.to_ulong();
    r.greedy_diagram = c.greedy.result.to_machine();
    if (!c.greedy_er.ok) r.witnesses["evans_richert"] = {{"i", c.greedy_er.i}, {"t", c.greedy_er.t}, {"below", c.greedy_er.below}};
    Json surv = Json::array();
    for (const auto& d : c.survivors) surv.push_back(d.to_machine());
    if (!surv.empty()) r.witnesses["survivors"] = surv;
    return r;
  }

  Json to_json() const {
    Json j;
    j["hf"] = hf;
    j["e"] = e;
    j["shifts"] = shifts;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["status"] = std::string(to_string(status));
    j["reason"] = reason;
    j["witnesses"] = witnesses;
    j["violating_diagrams"] = violating;
    j["search_nodes"] = nodes;
    j["cap_exceeded"] = cap_exceeded;
    j["failure_sets"] = failure_sets;
    j["greedy_diagram"] = greedy_diagram;
    return j;
  }

  static ExceptionRecord from_json(const Json& j) {
    ExceptionRecord r;
    r.hf = j.at("hf").get<std::string>();
    r.e = j.at("e").get<Count>();
    r.shifts = j.at("shifts").get<std::vector<Count>>();
    r.lhs = j.at("lhs").get<Count>();
    r.rhs = j.at("rhs").get<Count>();
    const auto s = j.at("status").get<std::string>();
    r.status = s == "UNRESOLVED" ? Status::Unresolved : s == "ELIMINATED" ? Status::Eliminated : Status::BoundHolds;
    r.reason = j.at("reason").get<std::string>();
    r.witnesses = j.at("witnesses");
    r.violating = j.at("violating_diagrams").get<std::size_t>();
    r.nodes = j.at("search_nodes").get<std::size_t>();
    r.cap_exceeded = j.at("cap_exceeded").get<bool>();
    r.failure_sets = j.at("failure_sets").get<unsigned long>();
    r.greedy_diagram = j.at("greedy_diagram").get<std::string>();
    return r;
  }
};

struct ScanCounts {
  std::size_t scanned = 0;
  std::size_t bound_holds = 0;
  std::size_t eliminated = 0;
  std::size_t unresolved = 0;
  std::size_t violating_diagrams = 0;
  std::map<std::string, std::size_t> eliminated_by;
};

struct ScanReport {
  ScanOptions options;
  ScanCounts counts;
  std::vector<ExceptionRecord> exceptions;
  std::string cursor;  // last completed Hilbert function, empty before the first
  bool complete = false;
  double seconds = 0;

  /// Exceptions that survive every filter in `mask`.
  std::size_t remaining_after(unsigned mask) const {
    std::size_t k = 0;
    for (const auto& x : exceptions)
      if (x.cap_exceeded || !eliminated_by(std::bitset<16>(x.failure_sets), mask)) ++k;
    return k;
  }

  const ExceptionRecord* find(const std::string& hf) const {
    for (const auto& x : exceptions)
      if (x.hf == hf) return &x;
    return nullptr;
  }

  Json parameters_json() const {
    Json p;
    p["vars"] = options.n;
    p["socle_max"] = options.socle_max;
    p["prefix"] = join(options.prefix);
    p["filters"] = filter_names(options.classify.filters);
    p["dfs_cap"] = options.classify.dfs_cap;
    return p;
  }

  Json counts_json() const {
    Json c;
    c["scanned"] = counts.scanned;
    c["bound_holds"] = counts.bound_holds;
    c["eliminated"] = counts.eliminated;
    c["unresolved"] = counts.unresolved;
    c["exceptions"] = exceptions.size();
    c["violating_diagrams"] = counts.violating_diagrams;
    Json by = Json::object();
    for (const auto& [k, v] : counts.eliminated_by) by[k] = v;
    c["eliminated_by"] = by;
    Json rem;
    rem["gen"] = remaining_after(FilterGen);
    rem["gen+er"] = remaining_after(FilterGen | FilterEr);
    rem["gen+er+growth"] = remaining_after(FilterGen | FilterEr | FilterGrowth);
    rem["gen+er+growth+aci"] = remaining_after(kAllFilters);
    c["remaining_after"] = rem;
    return c;
  }

  Json to_json(bool with_timing = true) const {
    Json j;
    j["status"] = complete ? "COMPLETE" : "INCOMPLETE";
    j["parameters"] = parameters_json();
    j["counts"] = counts_json();
    j["cursor"] = cursor;
    Json ex = Json::array();
    for (const auto& x : exceptions) ex.push_back(x.to_json());
    j["exceptions"] = ex;
    if (with_timing) j["timing"] = {{"seconds", seconds}};
    return j;
  }

  std::string to_csv() const {
    std::string out = "hf,e,M,lhs,rhs,status,reason\n";
    for (const auto& x : exceptions) {
      out += '"' + x.hf + "\"," + std::to_string(x.e) + ",\"" + join(x.shifts) + "\"," + std::to_string(x.lhs) + ',' +
             std::to_string(x.rhs) + ',' + std::string(to_string(x.status)) + ',' + x.reason + '\n';
    }
    return out;
  }

  std::string summary() const {
    std::ostringstream s;
    s << (complete ? "COMPLETE" : "INCOMPLETE") << ": scanned " << counts.scanned << " Hilbert functions\n"
      << "  bound holds on greedy diagram: " << counts.bound_holds << "\n"
      << "  greedy violations:             " << exceptions.size() << " (" << counts.violating_diagrams
      << " violating potential diagrams)\n"
      << "  eliminated:                    " << counts.eliminated << "\n"
      << "  unresolved:                    " << counts.unresolved << "\n"
      << "  remaining after gen+er:        " << remaining_after(FilterGen | FilterEr) << "\n";
    for (const auto& [k, v] : counts.eliminated_by) s << "  eliminated by " << k << ": " << v << "\n";
    return s.str();
  }
};

namespace detail {

inline void write_file_synced(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw Error(ErrorCode::Io, "cannot open " + tmp);
  std::size_t off = 0;
  while (off < content.size()) {
    ssize_t w = ::write(fd, content.data() + off, content.size() - off);
    if (w < 0) {
      ::close(fd);
      throw Error(ErrorCode::Io, "write failed on " + tmp);
    }
    off += static_cast<std::size_t>(w);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) throw Error(ErrorCode::Io, "fsync failed on " + tmp);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::Io, "cannot rename " + tmp);
}

inline void add_record(ScanReport& rep, ExceptionRecord rec) {
  rep.counts.violating_diagrams += rec.violating;
  if (rec.status == Status::Eliminated) {
    ++rep.counts.eliminated;
    ++rep.counts.eliminated_by[rec.reason];
  } else {
    ++rep.counts.unresolved;
  }
  rep.exceptions.push_back(std::move(rec));
}

}  // namespace detail

/// Checkpoint: one line, `<cursor>\t<json state>`.
inline void write_checkpoint(const std::string& path, const ScanReport& rep) {
  Json state;
  state["parameters"] = rep.parameters_json();
  state["scanned"] = rep.counts.scanned;
  state["bound_holds"] = rep.counts.bound_holds;
  Json ex = Json::array();
  for (const auto& x : rep.exceptions) ex.push_back(x.to_json());
  state["exceptions"] = ex;
  detail::write_file_synced(path, rep.cursor + '\t' + state.dump() + '\n');
}

/// Restores counts and exceptions; returns false when no checkpoint exists.
inline bool read_checkpoint(const std::string& path, ScanReport& rep) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, "empty checkpoint " + path);
  auto tab = line.find('\t');
  if (tab == std::string::npos) throw Error(ErrorCode::Io, "malformed checkpoint " + path);
  Json state = Json::parse(line.substr(tab + 1));
  if (state.at("parameters") != rep.parameters_json())
    throw Error(ErrorCode::Io, "checkpoint " + path + " was written with different scan parameters");
  rep.cursor = line.substr(0, tab);
  rep.counts = {};
  rep.exceptions.clear();
  rep.counts.scanned = state.at("scanned").get<std::size_t>();
  rep.counts.bound_holds = state.at("bound_holds").get<std::size_t>();
  for (const auto& x : state.at("exceptions")) detail::add_record(rep, ExceptionRecord::from_json(x));
  return true;
}

/// Classifies every O-sequence of the family. Work is split into fixed-size
/// chunks of the enumeration; results are merged in enumeration order, so
/// the report does not depend on the worker count.
inline ScanReport scan(const ScanOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  ScanReport rep;
  rep.options = opt;
  if (opt.checkpoint_path) read_checkpoint(*opt.checkpoint_path, rep);

  std::vector<HilbertFunction> work;
  std::optional<HilbertFunction> resume_after;
  if (!rep.cursor.empty()) resume_after = HilbertFunction::parse(rep.cursor);
  for_each_o_sequence(opt.n, opt.socle_max, opt.prefix, [&](const HilbertFunction& h) {
    if (!resume_after || h > *resume_after) work.push_back(h);
  });
  bool truncated = false;
  if (opt.stop_after && work.size() > *opt.stop_after) {
    work.resize(*opt.stop_after);
    truncated = true;
  }

  const std::size_t chunk = std::max<std::size_t>(opt.chunk_size, 1);
  const std::size_t chunks = (work.size() + chunk - 1) / chunk;
  struct ChunkResult {
    std::vector<ExceptionRecord> records;
    std::size_t holds = 0;
    std::optional<std::string> error;
  };
  std::vector<std::optional<ChunkResult>> results(chunks);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      std::size_t k = next.fetch_add(1);
      if (k >= chunks) return;
      ChunkResult res;
      try {
        const std::size_t end = std::min(work.size(), (k + 1) * chunk);
        for (std::size_t q = k * chunk; q < end; ++q) {
          Classification c = classify(work[q], opt.n, opt.classify);
          if (c.status == Status::BoundHolds)
            ++res.holds;
          else
            res.records.push_back(ExceptionRecord::from(c));
        }
      } catch (const std::exception& e) {
        res.error = e.what();
      }
      {
        std::lock_guard lock(mu);
        results[k] = std::move(res);
      }
      ready.notify_all();
    }
  };

  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(chunks, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);

  std::size_t since_checkpoint = 0;
  std::optional<std::string> failure;
  for (std::size_t k = 0; k < chunks; ++k) {
    ChunkResult res;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return results[k].has_value(); });
      res = std::move(*results[k]);
      results[k].reset();
    }
    if (res.error) {
      failure = res.error;
      next.store(chunks);
      break;
    }
    const std::size_t end = std::min(work.size(), (k + 1) * chunk);
    rep.counts.scanned += end - k * chunk;
    rep.counts.bound_holds += res.holds;
    for (auto& r : res.records) detail::add_record(rep, std::move(r));
    rep.cursor = work[end - 1].to_string();
    since_checkpoint += end - k * chunk;
    if (opt.checkpoint_path && since_checkpoint >= opt.checkpoint_interval) {
      write_checkpoint(*opt.checkpoint_path, rep);
      since_checkpoint = 0;
    }
  }
  for (auto& t : pool) t.join();
  if (failure) throw Error(ErrorCode::LogicFault, "scan failed: " + *failure);
  if (opt.checkpoint_path) write_checkpoint(*opt.checkpoint_path, rep);
  rep.complete = !truncated;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rep;
}

inline std::string format_rational(Count num, Count den) {
  Count g = std::gcd(num, den);
  if (g == 0) return "0";
  num /= g;
  den /= g;
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

inline std::string format_tuple(const std::vector<Count>& xs) { return "(" + join(xs) + ")"; }

/// Single Hilbert function: lex diagram, every greedy stage, shifts, bounds
/// and the classification.
inline std::string check_hf(const HilbertFunction& h, int n, const ClassifyOptions& opt = {}) {
  Classification c = classify(h, n, opt);
  std::ostringstream out;
  const MonomialIdeal lex = lex_ideal(h, n);
  out << "H = " << h.to_string() << "  (n = " << n << ", e = " << c.verdict.e << ")\n";
  out << "lexicographic ideal (" << lex.size() << " generators): " << lex.to_string() << "\n\n";
  out << "S/L:\n" << c.lex.to_table() << "\n";
  for (std::size_t k = 0; k < c.greedy.stages.size(); ++k)
    out << "after cancelling columns " << k + 1 << " and " << k + 2 << ":\n" << c.greedy.stages[k].to_table() << "\n";
  const auto& d = c.greedy.result;
  const auto big = max_shifts(d);
  const auto small = min_shifts(d);
  const int codim = static_cast<int>(big.size());
  const Count fact = factorial(codim);
  out << "max shifts " << format_tuple(big) << "  min shifts " << format_tuple(small) << "\n";
  out << "bounds: " << format_rational(checked_product(small), fact) << " <= " << c.verdict.e
      << " <= " << format_rational(checked_product(big), fact) << "\n";
  auto lower = lower_bound_holds(c.verdict.e, small, codim);
  out << "lower bound: " << lower.lhs << " <= " << lower.rhs << (lower.holds ? " holds" : " fails") << "\n";
  out << "upper bound: " << c.verdict.lhs << (c.verdict.holds ? " <= " : " > ") << c.verdict.rhs
      << (c.verdict.holds ? " holds" : " fails") << "\n";
  auto er = evans_richert_ok(d);
  if (!er.ok) out << "evans-richert: fails at i=" << er.i << " t=" << er.t << " (" << er.below << " < " << er.i << ")\n";
  out << "status: " << to_string(c.status);
  if (!c.reason.empty()) out << " (" << c.reason << ")";
  out << "\n";
  if (c.status != Status::BoundHolds) {
    out << "violating potential diagrams: " << c.violating << " (search nodes " << c.nodes << ")\n";
    for (const auto& s : c.survivors) out << "surviving diagram:\n" << s.to_table();
  }
  return out.str();
}

struct CheckIdealOptions {
  std::optional<int> truncate_degree;
  std::int64_t characteristic = kDefaultCharacteristic;
  std::optional<int> degree_cap;
};

/// Koszul diagram, Hilbert function, shifts, bounds, purity and the
/// truncation certificate for a monomial ideal.
inline std::string check_ideal(const MonomialIdeal& ideal, const CheckIdealOptions& opt = {}) {
  std::ostringstream out;
  const int n = ideal.vars();
  out << "I = (" << ideal.to_string() << ") in " << n << " variables\n";
  const BettiDiagram d = koszul_betti(ideal, opt.characteristic, opt.degree_cap);
  out << "betti diagram (characteristic " << opt.characteristic << "):\n" << d.to_table();
  out << "regularity " << d.regularity() << "\n";
  const auto qh = quotient_hilbert_function(ideal, opt.degree_cap.value_or(-1));
  out << "hilbert function " << qh.hilbert.to_string() << (qh.artinian ? "" : " (truncated; not Artinian)") << "\n";
  if (!qh.artinian) {
    out << "max shifts " << format_tuple(max_shifts(d)) << "  min shifts " << format_tuple(min_shifts(d)) << "\n";
    out << "shift growth: " << (check_shift_growth(d) ? "yes" : "no") << "\n";
    out << "not Artinian: multiplicity bounds skipped\n";
    return out.str();
  }
  const Count e = multiplicity(qh.hilbert);
  const auto big = max_shifts(d);
  const auto small = min_shifts(d);
  out << "multiplicity " << e << "\n";
  out << "max shifts " << format_tuple(big) << "  min shifts " << format_tuple(small) << "\n";
  auto upper = upper_bound_holds(e, big, n);
  auto lower = lower_bound_holds(e, small, n);
  out << "lower bound: " << lower.lhs << " <= " << lower.rhs << (lower.holds ? " holds" : " fails") << "\n";
  out << "upper bound: " << upper.lhs << " <= " << upper.rhs << (upper.holds ? " holds" : " fails") << "\n";
  out << "pure: " << (is_pure(d) ? "yes" : "no") << "  quasipure: " << (is_quasipure(d) ? "yes" : "no") << "\n";
  if (opt.truncate_degree) {
    const MonomialIdeal t = truncate(ideal, *opt.truncate_degree);
    const Count et = multiplicity(quotient_hilbert_function(t).hilbert);
    out << "truncation at " << *opt.truncate_degree << ": (" << t.to_string() << ")\n";
    out << "e comparison: " << e << " vs " << et << (e <= et ? " (e <= e_trunc)" : " (e > e_trunc)") << "\n";
    auto rows = verify_truncation_rows(ideal, *opt.truncate_degree, opt.characteristic);
    out << "truncation diagram:\n" << rows.truncation_diagram.to_table();
    out << "rows >= " << *opt.truncate_degree << " agree: " << (rows.equal ? "yes" : "no") << "\n";
  }
  auto ta = truncation_analysis(ideal, opt.characteristic);
  out << "truncation analysis: " << to_string(ta.outcome);
  if (!ta.route.empty()) out << " via " << ta.route;
  if (ta.outcome == TruncationOutcome::UpperBoundCertified && ta.route == "truncation")
    out << " (regularity " << ta.regularity << ", e " << ta.e_ideal << " <= " << ta.e_truncation << ")";
  if (!ta.reason.empty()) out << " (" << ta.reason << ")";
  out << "\n";
  return out.str();
}

}  // namespace bettiscan
