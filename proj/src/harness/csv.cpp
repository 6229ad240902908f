#include <cstdio>
#include <fstream>
#include <ostream>

#include "ruinsim/errors.hpp"
#include "ruinsim/harness/experiment.hpp"

namespace ruinsim {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols = {
      "u",        "series",   "method",   "n",        "reps",
      "seed",     "estimate", "psi_hat",  "std_err",  "ci_lo",
      "ci_hi",    "beta_hat", "corr_hat", "heavy_tail_approx",
      "z_n",      "bound_lo", "bound_hi", "wall_ms"};
  return cols;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  const auto& cols = result_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const ResultRow& r : rows) {
    out << format_double(r.u) << ',' << r.series << ',' << r.method << ',' << r.n << ','
        << r.reps << ',' << r.seed << ',' << format_double(r.estimate) << ','
        << format_double(r.psi_hat) << ',' << format_double(r.std_err) << ','
        << format_double(r.ci_lo) << ',' << format_double(r.ci_hi) << ','
        << format_double(r.beta_hat) << ',' << format_double(r.corr_hat) << ','
        << format_double(r.heavy_tail_approx) << ',' << format_double(r.z_n) << ','
        << format_double(r.bound_lo) << ',' << format_double(r.bound_hi) << ','
        << format_double(r.wall_ms) << "\n";
  }
}

void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_csv(out, rows);
  if (!out) throw Error("write failed: " + path);
}

void write_constants_csv(std::ostream& out, const std::vector<ConstantsRow>& rows) {
  out << "n,ratio_new,ratio_pk,cross_cv,cross_raw\n";
  for (const ConstantsRow& r : rows) {
    out << r.n << ',' << format_double(r.ratio_new) << ',' << format_double(r.ratio_pk) << ','
        << format_double(r.cross_cv) << ',' << format_double(r.cross_raw) << "\n";
  }
}

}  // namespace ruinsim
