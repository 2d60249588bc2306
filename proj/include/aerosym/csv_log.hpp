// Run-log CSV emission with a fixed column order, plus a companion gnuplot
// script generator. Values print with 17 significant digits so logs
// round-trip doubles exactly and re-runs compare bit-identically.
#pragma once

#include <iosfwd>
#include <string>

#include "aerosym/scenario.hpp"

namespace aerosym {

// Column order (fixed):
// t_s, x1, x2, x3, v1, v2, v3, r11..r33 (row-major), alpha_rad, beta_rad,
// T_N, w1, w2, w3, vtilde_norm, theta_tilde_rad, V, fp_norm
extern const char* const kRunLogCsvHeader;

void write_run_log_csv(std::ostream& out, const RunLog& log);
std::string run_log_csv(const RunLog& log);

/// Gnuplot script plotting |vtilde|, theta_tilde and V against time from the
/// named CSV file.
std::string run_log_gnuplot(const std::string& csv_filename);

}  // namespace aerosym
