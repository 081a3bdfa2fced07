#include "cli.hpp"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "motzkin/criterion.hpp"
#include "motzkin/errors.hpp"
#include "motzkin/groundspace.hpp"
#include "motzkin/normtable.hpp"
#include "motzkin/report.hpp"

namespace motzkin::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconclusivePresent {};

struct RunConfig {
  std::string command;
  std::vector<std::string> t;
  int kmax = 0;
  std::vector<int> k;
  std::vector<int> n;
  std::string mode = "float";
  int cutoff = 0;
  std::string out;
  std::string format = "csv";
  int threads = 0;
};

struct AreaWeight {
  std::string text;
  Rational exact;
  double value;
};

std::vector<AreaWeight> parse_t(const RunConfig& cfg) {
  if (cfg.t.empty()) throw UsageError("--t needs at least one value");
  std::vector<AreaWeight> out;
  for (const auto& s : cfg.t) {
    Rational r;
    try {
      r = Rational::parse(s);
    } catch (const DomainError&) {
      throw UsageError("cannot parse --t value '" + s + "'");
    }
    if (r.num <= 0) throw UsageError("--t values must be positive");
    out.push_back({s, r, r.to_double()});
  }
  return out;
}

std::string tag(const AreaWeight& t) {
  std::string s = t.text;
  std::replace(s.begin(), s.end(), '/', '_');
  return "t" + s;
}

// Collects named outputs and writes them as files (--out) or to the stream.
class Sink {
public:
  Sink(const RunConfig& cfg, std::ostream& out) : dir_(cfg.out), json_(cfg.format == "json"), out_(out) {
    if (!dir_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir_, ec);
      if (ec) throw std::runtime_error("cannot create output directory " + dir_ + ": " + ec.message());
    }
  }

  bool to_files() const { return !dir_.empty(); }

  void file(const std::string& name, const std::string& content) {
    if (!to_files()) return;
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed for " + path.string());
  }

  void table(const std::string& stem, const Table& t, const std::string& heading = {}) {
    std::string text;
    if (json_) {
      text = t.json();
    } else {
      std::ostringstream os;
      t.write_csv(os);
      text = os.str();
    }
    if (to_files()) {
      file(stem + (json_ ? ".json" : ".csv"), text);
    } else {
      if (!heading.empty()) out_ << "# " << heading << '\n';
      out_ << text;
    }
  }

private:
  std::string dir_;
  bool json_;
  std::ostream& out_;
};

// Independent sweep points on the OpenMP pool; results land by index so the
// single writer afterwards sees a deterministic order.
template <class R>
std::vector<R> sweep(std::size_t count, const std::function<R(std::size_t)>& task) {
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      slots[u] = task(u);
    } catch (...) {
      errors[u] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ------------------------------------------------------------------ commands

void cmd_norms(const RunConfig& cfg, Sink& sink) {
  const auto ts = parse_t(cfg);
  if (cfg.kmax < 1) throw UsageError("norms needs --kmax >= 1");
  const auto mode = cfg.mode == "exact" ? ScalarMode::ExactPoly : ScalarMode::Float64;
  for (const auto& t : ts) {
    const auto table = build_recursive(cfg.kmax, mode, t.exact);
    sink.table("norms_" + tag(t) + "_" + cfg.mode, norms_table(table), ts.size() > 1 ? "t=" + t.text : "");
  }
}

void cmd_ratios(const RunConfig& cfg, Sink& sink) {
  const auto ts = parse_t(cfg);
  const int kmax = cfg.kmax > 0 ? cfg.kmax : 40;
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {1, 1}, {2, 1}, {1, 2}, {2, 2}};
  Table summary{{"t", "p", "q", "slope", "intercept", "r_squared", "points", "kminus_lo", "kminus_hi", "error"}, {}};
  for (const auto& t : ts) {
    const auto r = ratios(build_recursive(kmax, ScalarMode::Float64, t.exact));
    const auto consts = decay_constants(r);
    for (auto [p, q] : pairs) {
      const auto series = convergence_series(r, p, q, p + q, kmax);
      const std::string stem = tag(t) + "_p" + std::to_string(p) + "_q" + std::to_string(q);
      sink.table("series_" + stem, series_table(series));
      try {
        auto fit = fit_rate(series, {1e-10, 1e-2});
        fit.c0_hat = consts.c0_hat;
        fit.c1_hat = consts.c1_hat;
        sink.file("fit_" + stem + ".json", fit_json(p, q, t.value, fit));
        summary.rows.push_back({t.value, p, q, fit.slope, fit.intercept, fit.r_squared, fit.points, fit.kminus_lo,
                                fit.kminus_hi, Cell()});
      } catch (const DomainError& e) {
        sink.file("fit_" + stem + ".json", fit_error_json(p, q, t.value, e.what()));
        summary.rows.push_back({t.value, p, q, Cell(), Cell(), Cell(), Cell(), Cell(), Cell(), std::string(e.what())});
      }
    }
  }
  sink.table("fits", summary);
}

std::vector<int> k_list(const RunConfig& cfg) {
  if (cfg.k.empty()) throw UsageError("--k needs at least one value");
  for (int k : cfg.k) {
    if (k < 1) throw UsageError("--k values must be >= 1");
  }
  return cfg.k;
}

void check_certificate_range(const std::vector<AreaWeight>& ts) {
  for (const auto& t : ts) check_certificate_t(t.value);
}

void cmd_criterion(const RunConfig& cfg, Sink& sink) {
  const auto ts = parse_t(cfg);
  check_certificate_range(ts);
  const auto ks = k_list(cfg);
  const std::size_t count = ts.size() * ks.size();
  using Point = std::pair<ZkResult, GammaResult>;
  const auto results = sweep<Point>(count, [&](std::size_t i) {
    const auto& t = ts[i / ks.size()];
    const int k = ks[i % ks.size()];
    return Point{compute_zk(k, t.value), compute_gamma_k(k, t.value)};
  });
  std::vector<ZkResult> z;
  std::vector<GammaResult> g;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& [zr, gr] = results[i];
    sink.file("criterion_" + tag(ts[i / ks.size()]) + "_k" + std::to_string(zr.k) + ".json", criterion_json(zr, gr));
    z.push_back(zr);
    g.push_back(gr);
  }
  sink.table("criterion", criterion_table(z, g));
}

void cmd_certify(const RunConfig& cfg, Sink& sink) {
  const auto ts = parse_t(cfg);
  check_certificate_range(ts);
  const auto ks = k_list(cfg);
  const int n_penalty = cfg.n.empty() ? kDefaultPenaltyN : cfg.n.front();
  const std::size_t count = ts.size() * ks.size();
  const auto certs = sweep<GapCertificate>(count, [&](std::size_t i) {
    return pinned_gap_bound(ks[i % ks.size()], ts[i / ks.size()].value, n_penalty);
  });
  bool inconclusive = false;
  for (std::size_t i = 0; i < count; ++i) {
    sink.file("certificate_" + tag(ts[i / ks.size()]) + "_k" + std::to_string(certs[i].k) + ".json",
              certificate_json(certs[i]));
    inconclusive = inconclusive || !certs[i].conclusive();
  }
  sink.table("certificates", certificate_table(certs));
  if (inconclusive) throw InconclusivePresent{};
}

void cmd_penalty(const RunConfig& cfg, Sink& sink) {
  const auto ts = parse_t(cfg);
  std::vector<int> ns = cfg.n;
  if (ns.empty()) {
    for (int n = 2; n <= kDefaultPenaltyN; ++n) ns.push_back(n);
  }
  for (int n : ns) {
    if (n < 2) throw UsageError("--n values must be >= 2");
  }
  std::vector<PenaltyReport> reports;
  for (const auto& t : ts) {
    for (int n : ns) {
      reports.push_back(boundary_penalty(n, t.value));
      sink.file("penalty_" + tag(t) + "_n" + std::to_string(n) + ".json", penalty_json(reports.back()));
    }
  }
  sink.table("penalty", penalty_table(reports));
}

void cmd_overlaps(const RunConfig& cfg, Sink& sink) {
  const auto ts = parse_t(cfg);
  std::vector<int> ns = cfg.n.empty() ? std::vector<int>{8, 10, 12, 14} : cfg.n;
  Table table{{"kind", "t", "n", "p", "q", "segments", "cutoff", "defect", "at_noise_floor", "split_identity"}, {}};
  for (const auto& t : ts) {
    for (int n : ns) {
      if (n < 4 || n % 2 != 0) throw UsageError("overlaps needs even --n >= 4");
      const int cut = cfg.cutoff > 0 ? cfg.cutoff : (n + 7) / 8;
      const auto norms = build_recursive(n, ScalarMode::Float64, t.exact);
      struct Case {
        std::string name;
        ApproxStateSpec spec;
      };
      const int h = n / 2, third = n / 3;
      const std::vector<Case> cases{
          {"atgs", {ApproxKind::ATGS, {h, h}, {1, 1}, cut}},
          {"pgs-right", {ApproxKind::PGSRight, {h, h}, {0, n - 2}, 0}},
          {"pgs-left", {ApproxKind::PGSLeft, {h, h}, {n - 2, 0}, 0}},
          {"fgs", {ApproxKind::FGS, {third, third, n - 2 * third}, {1, 1}, cut}},
      };
      for (const auto& c : cases) {
        const auto exact = ground_vector(n, c.spec.pq, t.value);
        const auto d = overlap_defect(exact.amplitudes, approx_vector(c.spec, t.value));
        std::string segs;
        for (int s : c.spec.segments) segs += (segs.empty() ? "" : "+") + std::to_string(s);
        Cell identity;
        if (c.spec.kind == ApproxKind::ATGS) {
          const auto atn = split_norm(norms, h, norms, h, 1, 1, cut);
          identity = 1.0 - (atn / norms.value(n, 1, 1)).to_double();
        }
        table.rows.push_back({c.name, t.value, n, c.spec.pq.p, c.spec.pq.q, segs,
                              c.spec.cutoff > 0 ? Cell(static_cast<long long>(c.spec.cutoff)) : Cell(), d.defect,
                              d.at_noise_floor ? 1LL : 0LL, identity});
      }
    }
  }
  sink.table("overlaps", table);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Motzkin spin chain laboratory: norm tables, ground spaces, gap criterion"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--t", cfg.t, "area weights, e.g. 0.3 or 3/10 (comma separated or repeated)")->delimiter(',');
    sub->add_option("--out", cfg.out, "output directory (default: tables to stdout)");
    sub->add_option("--format", cfg.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", cfg.threads, "OpenMP threads (default: runtime choice)")->check(CLI::NonNegativeNumber);
  };
  auto* norms = app.add_subcommand("norms", "N^k_{p,q} tables");
  add_common(norms);
  norms->add_option("--kmax", cfg.kmax, "largest segment length");
  norms->add_option("--mode", cfg.mode, "float or exact polynomials")->check(CLI::IsMember({"float", "exact"}));

  auto* rat = app.add_subcommand("ratios", "pi-ratio defect series and exponential fits");
  add_common(rat);
  rat->add_option("--kmax", cfg.kmax, "largest k (default 40)");

  auto* crit = app.add_subcommand("criterion", "z_k and gamma_k");
  add_common(crit);
  crit->add_option("--k", cfg.k, "block parameters")->delimiter(',');

  auto* cert = app.add_subcommand("certify", "gap certificates for the open and pinned chains");
  add_common(cert);
  cert->add_option("--k", cfg.k, "block parameters")->delimiter(',');
  cert->add_option("--n", cfg.n, "largest chain length used for the boundary penalty (default 10)")->delimiter(',');

  auto* pen = app.add_subcommand("penalty", "boundary penalty of raised ground states");
  add_common(pen);
  pen->add_option("--n", cfg.n, "chain lengths (default 2..10)")->delimiter(',');

  auto* ov = app.add_subcommand("overlaps", "overlap defects of approximate ground states");
  add_common(ov);
  ov->add_option("--n", cfg.n, "even chain lengths (default 8,10,12,14)")->delimiter(',');
  ov->add_option("--cutoff", cfg.cutoff, "intermediate height cutoff (default ceil(n/8))")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  try {
    Sink sink(cfg, out);
    if (norms->parsed()) cmd_norms(cfg, sink);
    if (rat->parsed()) cmd_ratios(cfg, sink);
    if (crit->parsed()) cmd_criterion(cfg, sink);
    if (cert->parsed()) cmd_certify(cfg, sink);
    if (pen->parsed()) cmd_penalty(cfg, sink);
    if (ov->parsed()) cmd_overlaps(cfg, sink);
  } catch (const InconclusivePresent&) {
    err << "some certificates are inconclusive\n";
    return kExitInconclusive;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << " (residual " << e.residual() << ", iterations " << e.iterations()
        << ")\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace motzkin::cli
