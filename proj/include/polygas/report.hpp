#pragma once

// Machine-readable check reports. Serialization is hand-rolled so the
// output is byte-stable for a fixed configuration: fixed field order,
// floats printed with up to 17 significant digits (%.17g), no timing data
// in the files (wall time stays in memory and goes to the stderr summary).

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace polygas::report {

struct CheckReport {
    std::string check;        // check id
    std::string input;        // "key=value;key=value" echo of the inputs
    double value = 0.0;       // computed value
    double reference = 0.0;   // reference value
    std::string provenance;   // "PAPER" | "TRIVIAL" | "DERIVED:<oracle>"
    double abs_error = 0.0;
    double rel_error = 0.0;
    double stderr_ = -1.0;    // < 0: deterministic check (serialized as null)
    double tol = 0.0;
    bool pass = false;
    double wall_ms = 0.0;     // in-memory only
};

// pass rule: |value - reference| <= tol, or <= 3 stderr for stochastic checks.
inline CheckReport make_check(std::string check, std::string input, double value,
                              double reference, std::string provenance, double tol,
                              double stderr_value = -1.0) {
    CheckReport r;
    r.check = std::move(check);
    r.input = std::move(input);
    r.value = value;
    r.reference = reference;
    r.provenance = std::move(provenance);
    r.abs_error = std::abs(value - reference);
    r.rel_error = reference != 0.0 ? r.abs_error / std::abs(reference) : r.abs_error;
    r.stderr_ = stderr_value;
    r.tol = tol;
    r.pass = stderr_value >= 0.0 ? r.abs_error <= 3.0 * stderr_value : r.abs_error <= tol;
    return r;
}

inline std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline void write_json(const std::vector<CheckReport>& reports, std::ostream& os) {
    os << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const CheckReport& r = reports[i];
        os << "  {\"check\":\"" << json_escape(r.check) << "\","
           << "\"input\":\"" << json_escape(r.input) << "\","
           << "\"value\":" << format17(r.value) << ","
           << "\"reference\":" << format17(r.reference) << ","
           << "\"provenance\":\"" << json_escape(r.provenance) << "\","
           << "\"abs_error\":" << format17(r.abs_error) << ","
           << "\"rel_error\":" << format17(r.rel_error) << ","
           << "\"stderr\":" << (r.stderr_ >= 0.0 ? format17(r.stderr_) : "null") << ","
           << "\"tol\":" << format17(r.tol) << ","
           << "\"pass\":" << (r.pass ? "true" : "false") << "}"
           << (i + 1 < reports.size() ? "," : "") << "\n";
    }
    os << "]\n";
}

inline void write_csv(const std::vector<CheckReport>& reports, std::ostream& os) {
    os << "check,input,value,reference,error,stderr,tol,pass\n";
    for (const CheckReport& r : reports) {
        os << r.check << "," << r.input << "," << format17(r.value) << ","
           << format17(r.reference) << "," << format17(r.abs_error) << ","
           << (r.stderr_ >= 0.0 ? format17(r.stderr_) : "") << "," << format17(r.tol) << ","
           << (r.pass ? "true" : "false") << "\n";
    }
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
    for (const CheckReport& r : reports)
        if (!r.pass) return false;
    return true;
}

}  // namespace polygas::report
