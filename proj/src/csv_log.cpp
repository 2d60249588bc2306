#include "aerosym/csv_log.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace aerosym {

const char* const kRunLogCsvHeader =
    "t_s,x1,x2,x3,v1,v2,v3,r11,r12,r13,r21,r22,r23,r31,r32,r33,"
    "alpha_rad,beta_rad,T_N,w1,w2,w3,vtilde_norm,theta_tilde_rad,V,fp_norm";

namespace {

void append_number(std::string& line, double v, bool first) {
    char buf[40];
    std::snprintf(buf, sizeof buf, first ? "%.17g" : ",%.17g", v);
    line += buf;
}

}  // namespace

void write_run_log_csv(std::ostream& out, const RunLog& log) {
    out << kRunLogCsvHeader << '\n';
    std::string line;
    for (const auto& r : log.records) {
        line.clear();
        append_number(line, r.t, true);
        append_number(line, r.position.x, false);
        append_number(line, r.position.y, false);
        append_number(line, r.position.z, false);
        append_number(line, r.velocity.x, false);
        append_number(line, r.velocity.y, false);
        append_number(line, r.velocity.z, false);
        for (int i = 0; i < 9; ++i) append_number(line, r.attitude.m[i], false);
        append_number(line, r.alpha, false);
        append_number(line, r.beta, false);
        append_number(line, r.thrust, false);
        append_number(line, r.omega.x, false);
        append_number(line, r.omega.y, false);
        append_number(line, r.omega.z, false);
        append_number(line, r.vtilde_norm, false);
        append_number(line, r.theta_tilde, false);
        append_number(line, r.lyapunov, false);
        append_number(line, r.fp_norm, false);
        out << line << '\n';
    }
}

std::string run_log_csv(const RunLog& log) {
    std::ostringstream ss;
    write_run_log_csv(ss, log);
    return ss.str();
}

std::string run_log_gnuplot(const std::string& csv_filename) {
    std::ostringstream ss;
    ss << "# gnuplot script for a run log\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel 't [s]'\n"
       << "set multiplot layout 3,1\n"
       << "set ylabel '|vtilde| [m/s]'\n"
       << "plot '" << csv_filename << "' using 1:23 with lines\n"
       << "set ylabel 'theta_tilde [rad]'\n"
       << "plot '" << csv_filename << "' using 1:24 with lines\n"
       << "set ylabel 'V'\n"
       << "plot '" << csv_filename << "' using 1:25 with lines\n"
       << "unset multiplot\n";
    return ss.str();
}

}  // namespace aerosym
