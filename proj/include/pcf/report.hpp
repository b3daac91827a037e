#ifndef PCF_REPORT_HPP
#define PCF_REPORT_HPP

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace pcf {

struct ReportRow
{
    std::string case_id;
    /// Printed as key=value pairs joined by ';', in this order.
    std::vector<std::pair<std::string, double>> params;
    double computed = 0.0;
    double reference = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// Failure diagnostic (exception text); empty on success.
    std::string note;
};

/// Builds a row whose pass flag is residual <= tolerance.
ReportRow make_row(std::string case_id, std::vector<std::pair<std::string, double>> params, double computed,
                   double reference, double residual, double tolerance);

/// A failed row for a case whose computation threw.
ReportRow error_row(std::string case_id, std::vector<std::pair<std::string, double>> params, double tolerance,
                    std::string message);

struct ReportSummary
{
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

struct VerificationReport
{
    std::string suite;
    std::vector<ReportRow> rows;
    /// Printed in text output only, so CSV and JSON stay reproducible.
    double wall_seconds = 0.0;

    ReportSummary summary() const;
    bool all_pass() const;
    /// Orders rows by case id, then by parameter values.
    void sort_rows();
    void append(const VerificationReport& other);
};

std::string format_params(const ReportRow& row);

void write_csv(std::ostream& out, const VerificationReport& report);
void write_json(std::ostream& out, const VerificationReport& report);
void write_text(std::ostream& out, const VerificationReport& report);

/// One line per failing row, for stderr.
void write_failures(std::ostream& out, const VerificationReport& report);

} // namespace pcf

#endif // PCF_REPORT_HPP
