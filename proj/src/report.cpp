#include "motzkin/report.hpp"

#include <cstdio>
#include <type_traits>

#include "json.hpp"

namespace motzkin {

using nlohmann::json;

std::string format_sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json pair_json(Imbalance pq) { return json::array({pq.p, pq.q}); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// quote fields that would split the row (error messages carry commas)
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&os](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              os << format_sci(v);
            } else if constexpr (std::is_same_v<V, std::string>) {
              os << csv_field(v);
            } else if constexpr (!std::is_same_v<V, std::monostate>) {
              os << v;
            }
          },
          row[i]);
    }
    os << '\n';
  }
}

std::string Table::json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) {
      obj[columns[i]] = std::visit(
          [](const auto& v) -> nlohmann::json {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>) {
              return nullptr;
            } else {
              return v;
            }
          },
          row[i]);
    }
    arr.push_back(obj);
  }
  return dump(arr);
}

Table norms_table(const NormTable& table) {
  Table out{{"k", "p", "q", "N"}, {}};
  for (int k = 1; k <= table.k_max(); ++k) {
    for (int p = 0; p <= k; ++p) {
      for (int q = 0; p + q <= k; ++q) {
        // scaled values may leave the double range, so they go out as text
        Cell n = table.mode() == ScalarMode::ExactPoly ? Cell(table.polynomial(k, p, q).str())
                                                       : Cell(table.value(k, p, q).str());
        out.rows.push_back({k, p, q, n});
      }
    }
  }
  return out;
}

Table series_table(const std::vector<DefectPoint>& series) {
  Table out{{"k", "kminus", "defect"}, {}};
  for (const auto& d : series) out.rows.push_back({d.k, d.kminus, d.defect});
  return out;
}

namespace {

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

}  // namespace

Table certificate_table(const std::vector<GapCertificate>& certs) {
  Table out{{"t", "k", "gamma_k", "z_k", "open_bound", "c2", "epsilon", "final_bound", "conclusive"}, {}};
  for (const auto& c : certs) {
    out.rows.push_back({c.t, c.k, c.gamma_k, c.z_k, opt_cell(c.open_bound), c.c2, opt_cell(c.epsilon),
                        opt_cell(c.final_bound), c.conclusive() ? 1LL : 0LL});
  }
  return out;
}

Table criterion_table(const std::vector<ZkResult>& z, const std::vector<GammaResult>& g) {
  Table out{{"t", "k", "z_k", "z_p", "z_q", "gamma_k", "open_bound"}, {}};
  for (std::size_t i = 0; i < z.size() && i < g.size(); ++i) {
    out.rows.push_back({z[i].t, z[i].k, z[i].value, z[i].argmax.p, z[i].argmax.q, g[i].value,
                        opt_cell(open_gap_bound(g[i].value, z[i].value))});
  }
  return out;
}

Table penalty_table(const std::vector<PenaltyReport>& reports) {
  Table out{{"t", "n", "ratio", "t_times_ratio", "exact_minimum", "argmin_p", "argmin_q"}, {}};
  for (const auto& r : reports) {
    if (r.sectors.empty()) {
      out.rows.push_back({r.t, r.n, r.ratio, r.t_times_ratio, Cell(), Cell(), Cell()});
    } else {
      out.rows.push_back({r.t, r.n, r.ratio, r.t_times_ratio, r.minimum, r.argmin.p, r.argmin.q});
    }
  }
  return out;
}

std::string fit_json(int p, int q, double t, const ConvergenceFit& fit) {
  json j;
  j["p"] = p;
  j["q"] = q;
  j["t"] = t;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["kminus_range"] = json::array({fit.kminus_lo, fit.kminus_hi});
  j["points"] = fit.points;
  j["c0_hat"] = optional_number(fit.c0_hat);
  j["c1_hat"] = optional_number(fit.c1_hat);
  return dump(j);
}

std::string fit_error_json(int p, int q, double t, const std::string& error) {
  json j;
  j["p"] = p;
  j["q"] = q;
  j["t"] = t;
  j["error"] = error;
  return dump(j);
}

std::string certificate_json(const GapCertificate& c) {
  json j;
  j["t"] = c.t;
  j["k"] = c.k;
  j["gamma_k"] = c.gamma_k;
  j["z_k"] = c.z_k;
  j["z_sector"] = pair_json(c.z_sector);
  j["open_bound"] = optional_number(c.open_bound);
  j["c2"] = c.c2;
  j["c2_source_range"] = json::array({c.c2_n_lo, c.c2_n_hi});
  j["c2_kind"] = "empirical";
  j["epsilon"] = optional_number(c.epsilon);
  j["final_bound"] = optional_number(c.final_bound);
  j["conclusive"] = c.conclusive();
  j["solver"] = {{"tol", c.solver_tol}, {"iters", {{"gamma_k", c.gamma_iterations}, {"z_k", c.z_iterations}}}};
  return dump(j);
}

std::string criterion_json(const ZkResult& z, const GammaResult& g) {
  json j;
  j["t"] = z.t;
  j["k"] = z.k;
  j["z_k"] = z.value;
  j["z_sector"] = pair_json(z.argmax);
  j["gamma_k"] = g.value;
  j["gamma_sector"] = pair_json(g.argmin);
  j["open_bound"] = optional_number(open_gap_bound(g.value, z.value));
  json zs = json::array();
  for (const auto& s : z.sectors) {
    if (s.active) zs.push_back({{"pq", pair_json(s.pq)}, {"value", s.value}, {"iterations", s.iterations}});
  }
  j["z_sectors"] = zs;
  j["solver"] = {{"z_iterations", z.iterations},
                 {"z_max_residual", z.max_residual},
                 {"gamma_iterations", g.iterations},
                 {"gamma_max_residual", g.max_residual}};
  return dump(j);
}

std::string penalty_json(const PenaltyReport& r) {
  json j;
  j["n"] = r.n;
  j["t"] = r.t;
  j["ratio"] = r.ratio;
  j["t_times_ratio"] = r.t_times_ratio;
  if (!r.sectors.empty()) {
    j["minimum"] = r.minimum;
    j["argmin"] = pair_json(r.argmin);
    json s = json::array();
    for (const auto& sp : r.sectors) s.push_back({{"pq", pair_json(sp.pq)}, {"expectation", sp.expectation}});
    j["sectors"] = s;
  }
  return dump(j);
}

}  // namespace motzkin
