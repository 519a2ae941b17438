#pragma once

// Stable CSV schemas for accuracy traces and sweep grids. Booleans are 0/1,
// accuracies carry six decimals, rows end in LF.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "naltm/sequence_lab.hpp"

namespace naltm {

namespace detail {

inline std::string format_accuracy(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace detail

// Header: step,input,predicted,correct,burst,window_accuracy,new_links,evicted_links
// `predicted` is empty when the model abstained; `window_accuracy` is empty
// until the window has filled.
inline void write_accuracy_csv(const std::vector<StepReport>& reports,
                               const AccuracySeries& series, std::ostream& os) {
    os << "step,input,predicted,correct,burst,window_accuracy,new_links,evicted_links\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const StepReport& r = reports[i];
        os << r.step_index << ',' << r.input << ','
           << (r.predicted ? *r.predicted : "") << ',' << (r.correct ? 1 : 0) << ','
           << (r.burst ? 1 : 0) << ',';
        if (!series.points.empty() && i + 1 >= series.window) {
            os << detail::format_accuracy(series.points[i + 1 - series.window].accuracy);
        }
        os << ',' << r.new_links << ',' << r.evicted_links << '\n';
    }
}

inline void write_accuracy_csv(const std::vector<StepReport>& reports,
                               const AccuracySeries& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_accuracy_csv(reports, series, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Header: m,k,final_accuracy,ceiling
inline void write_sweep_csv(const std::vector<SweepCell>& cells, std::ostream& os) {
    os << "m,k,final_accuracy,ceiling\n";
    for (const SweepCell& c : cells) {
        os << c.m << ',' << c.k << ',' << detail::format_accuracy(c.final_accuracy)
           << ',' << detail::format_accuracy(c.ceiling) << '\n';
    }
}

inline void write_sweep_csv(const std::vector<SweepCell>& cells, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_sweep_csv(cells, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace naltm
