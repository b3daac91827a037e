#include "pcf/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace pcf {

namespace {

std::string sci17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string shortest(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // Prefer the short form when it round-trips.
    for (int digits = 1; digits < 17; ++digits) {
        char trial[40];
        std::snprintf(trial, sizeof trial, "%.*g", digits, x);
        if (std::strtod(trial, nullptr) == x) {
            return trial;
        }
    }
    return buf;
}

nlohmann::json json_number(double x)
{
    if (std::isfinite(x)) {
        return x;
    }
    return nullptr;
}

} // namespace

ReportRow make_row(std::string case_id, std::vector<std::pair<std::string, double>> params, double computed,
                   double reference, double residual, double tolerance)
{
    ReportRow row;
    row.case_id = std::move(case_id);
    row.params = std::move(params);
    row.computed = computed;
    row.reference = reference;
    row.residual = residual;
    row.tolerance = tolerance;
    row.pass = residual <= tolerance;
    return row;
}

ReportRow error_row(std::string case_id, std::vector<std::pair<std::string, double>> params, double tolerance,
                    std::string message)
{
    ReportRow row = make_row(std::move(case_id), std::move(params), NAN, NAN, INFINITY, tolerance);
    row.note = std::move(message);
    return row;
}

ReportSummary VerificationReport::summary() const
{
    ReportSummary s;
    s.total = rows.size();
    s.passed = static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; }));
    s.failed = s.total - s.passed;
    return s;
}

bool VerificationReport::all_pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

void VerificationReport::sort_rows()
{
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.case_id != b.case_id) {
            return a.case_id < b.case_id;
        }
        return a.params < b.params;
    });
}

void VerificationReport::append(const VerificationReport& other)
{
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    wall_seconds += other.wall_seconds;
}

std::string format_params(const ReportRow& row)
{
    std::string out;
    for (const auto& [key, value] : row.params) {
        if (!out.empty()) {
            out += ';';
        }
        out += key + '=' + shortest(value);
    }
    return out;
}

void write_csv(std::ostream& out, const VerificationReport& report)
{
    out << "case_id,params,computed,reference,residual,pass\n";
    for (const auto& row : report.rows) {
        out << row.case_id << ',' << format_params(row) << ',' << sci17(row.computed) << ','
            << sci17(row.reference) << ',' << sci17(row.residual) << ',' << (row.pass ? "true" : "false") << '\n';
    }
}

void write_json(std::ostream& out, const VerificationReport& report)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [key, value] : row.params) {
            params[key] = json_number(value);
        }
        nlohmann::json j = {
            {"case_id", row.case_id},
            {"params", params},
            {"computed", json_number(row.computed)},
            {"reference", json_number(row.reference)},
            {"residual", json_number(row.residual)},
            {"tolerance", json_number(row.tolerance)},
            {"pass", row.pass},
        };
        if (!row.note.empty()) {
            j["note"] = row.note;
        }
        rows.push_back(std::move(j));
    }
    const ReportSummary s = report.summary();
    const nlohmann::json doc = {
        {"suite", report.suite},
        {"rows", rows},
        {"summary", {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}}},
    };
    out << doc.dump(2) << '\n';
}

void write_text(std::ostream& out, const VerificationReport& report)
{
    std::size_t id_width = 7;
    std::size_t param_width = 6;
    for (const auto& row : report.rows) {
        id_width = std::max(id_width, row.case_id.size());
        param_width = std::max(param_width, format_params(row).size());
    }
    char line[512];
    std::snprintf(line, sizeof line, "%-*s  %-*s  %18s  %18s  %10s  %s\n", static_cast<int>(id_width), "case_id",
                  static_cast<int>(param_width), "params", "computed", "reference", "residual", "result");
    out << "suite: " << report.suite << '\n' << line;
    for (const auto& row : report.rows) {
        std::snprintf(line, sizeof line, "%-*s  %-*s  %18.10g  %18.10g  %10.3e  %s\n", static_cast<int>(id_width),
                      row.case_id.c_str(), static_cast<int>(param_width), format_params(row).c_str(), row.computed,
                      row.reference, row.residual, row.pass ? "pass" : "FAIL");
        out << line;
    }
    const ReportSummary s = report.summary();
    std::snprintf(line, sizeof line, "%zu rows, %zu passed, %zu failed (%.2f s)\n", s.total, s.passed, s.failed,
                  report.wall_seconds);
    out << line;
}

void write_failures(std::ostream& out, const VerificationReport& report)
{
    for (const auto& row : report.rows) {
        if (row.pass) {
            continue;
        }
        out << "FAIL " << row.case_id << " [" << format_params(row) << "] residual " << sci17(row.residual)
            << " > " << sci17(row.tolerance);
        if (!row.note.empty()) {
            out << ": " << row.note;
        }
        out << '\n';
    }
}

} // namespace pcf
