#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rcsim {

/// A labelled block of time series: one row per step, one column per series.
struct Table {
    std::vector<std::string> columns;  // labels, excluding the leading "t"
    Eigen::MatrixXd data;              // rows = steps, cols = columns.size()

    void validate() const;
};

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Render a table as CSV text: header "t,<labels...>", then one line per
/// step with the step index in the first column. LF endings, '.' decimal;
/// formatting is deterministic so equal tables yield equal bytes.
std::string csv_string(const Table& table);

void emit_csv(const Table& table, const std::string& path);

/// Parse CSV produced by emit_csv (drops the leading t column).
Table read_csv(const std::string& path);

}  // namespace rcsim
