#pragma once

// Text emitters. CSV numbers use scientific notation with 17 significant
// digits; JSON is printed with 2-space indent and keys in sorted order, so the
// same inputs always give the same bytes.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "motzkin/criterion.hpp"
#include "motzkin/normtable.hpp"

namespace motzkin {

/// "%.16e" formatting, e.g. 5.0000000000000000e-01.
std::string format_sci(double x);

/// Empty cells print as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& os) const;
  /// Array of row objects.
  std::string json() const;
};

Table norms_table(const NormTable& table);
Table series_table(const std::vector<DefectPoint>& series);
Table certificate_table(const std::vector<GapCertificate>& certs);
Table criterion_table(const std::vector<ZkResult>& z, const std::vector<GammaResult>& g);
Table penalty_table(const std::vector<PenaltyReport>& reports);

std::string fit_json(int p, int q, double t, const ConvergenceFit& fit);
std::string fit_error_json(int p, int q, double t, const std::string& error);
std::string certificate_json(const GapCertificate& c);
std::string criterion_json(const ZkResult& z, const GammaResult& g);
std::string penalty_json(const PenaltyReport& r);

}  // namespace motzkin
