#include "rcsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace rcsim {

void Table::validate() const {
    if (static_cast<long>(columns.size()) != data.cols())
        throw std::invalid_argument("csv: label count does not match column count");
    for (const std::string& c : columns) {
        if (c.empty()) throw std::invalid_argument("csv: empty column label");
        if (c.find(',') != std::string::npos || c.find('\n') != std::string::npos)
            throw std::invalid_argument("csv: column label contains a delimiter");
    }
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("csv: number formatting failed");
    return std::string(buf, ptr);
}

std::string csv_string(const Table& table) {
    table.validate();
    std::string out = "t";
    for (const std::string& c : table.columns) {
        out += ',';
        out += c;
    }
    out += '\n';
    for (long r = 0; r < table.data.rows(); ++r) {
        out += std::to_string(r);
        for (long c = 0; c < table.data.cols(); ++c) {
            out += ',';
            out += format_double(table.data(r, c));
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot write '" + path + "'");
    out << csv_string(table);
    if (!out) throw std::runtime_error("csv: write to '" + path + "' failed");
}

Table read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    Table table;
    {
        std::stringstream header(line);
        std::string cell;
        bool first = true;
        while (std::getline(header, cell, ',')) {
            if (first) {
                if (cell != "t") throw std::runtime_error("csv: first column must be 't'");
                first = false;
            } else {
                table.columns.push_back(cell);
            }
        }
        if (first) throw std::runtime_error("csv: missing header row");
    }

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool first = true;
        while (std::getline(ss, cell, ',')) {
            if (first) {  // step index; implied by row order
                first = false;
                continue;
            }
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw std::runtime_error("csv: bad number '" + cell + "' in '" + path + "'");
            row.push_back(v);
        }
        if (row.size() != table.columns.size())
            throw std::runtime_error("csv: ragged row in '" + path + "'");
        rows.push_back(std::move(row));
    }

    table.data.resize(static_cast<long>(rows.size()), static_cast<long>(table.columns.size()));
    for (long r = 0; r < table.data.rows(); ++r)
        for (long c = 0; c < table.data.cols(); ++c)
            table.data(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return table;
}

}  // namespace rcsim
