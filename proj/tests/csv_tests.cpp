#include <stdexcept>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "rcsim/csv.hpp"
#include "rcsim/random.hpp"

using namespace rcsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "rcsim-csv-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_SUITE("csv") {

TEST_CASE("shortest round-trip double formatting") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5) == "-2.5");
    // arbitrary doubles parse back bit-exactly
    RandomStream rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.normal() * std::pow(10.0, rng.uniform_int(-12, 12));
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("a 3-column 100-row table renders as 101 lines of 4 fields") {
    Table t;
    t.columns = {"a", "b", "c"};
    t.data = Eigen::MatrixXd::Random(100, 3);
    const std::string text = csv_string(t);

    long lines = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++lines;
        const long commas = std::count(line.begin(), line.end(), ',');
        CHECK(commas == 3);
    }
    CHECK(lines == 101);
    CHECK(text.substr(0, 8) == "t,a,b,c\n");
    CHECK(text.back() == '\n');
    CHECK(text.find("\r") == std::string::npos);  // LF endings only
}

TEST_CASE("empty table renders as a bare header") {
    Table t;
    t.columns = {"x", "y"};
    t.data = Eigen::MatrixXd::Zero(0, 2);
    CHECK(csv_string(t) == "t,x,y\n");
}

TEST_CASE("step index occupies the first column") {
    Table t;
    t.columns = {"v"};
    t.data = Eigen::MatrixXd::Zero(3, 1);
    t.data << 5, 6, 7;
    CHECK(csv_string(t) == "t,v\n0,5\n1,6\n2,7\n");
}

TEST_CASE("emit, read back, re-emit is byte-identical") {
    Table t;
    t.columns = {"u", "w"};
    t.data = Eigen::MatrixXd(4, 2);
    t.data << 0.1, -3.7e-5, 1.0 / 3.0, 2e17, -0.0, 5.5, 1e-300, -42.0;
    const fs::path p1 = scratch("round1.csv"), p2 = scratch("round2.csv");
    emit_csv(t, p1.string());
    const Table back = read_csv(p1.string());
    CHECK(back.columns == t.columns);
    CHECK(back.data == t.data);
    emit_csv(back, p2.string());
    CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("reader rejects ragged and malformed rows") {
    const fs::path p = scratch("bad.csv");
    {
        std::ofstream out(p, std::ios::binary);
        out << "t,a,b\n0,1,2\n1,3\n";
    }
    CHECK_THROWS(read_csv(p.string()));
    {
        std::ofstream out(p, std::ios::binary);
        out << "t,a\n0,notanumber\n";
    }
    CHECK_THROWS(read_csv(p.string()));
    CHECK_THROWS(read_csv(scratch("absent.csv").string()));
}

TEST_CASE("table validation enforces the column/data match") {
    Table t;
    t.columns = {"a", "b"};
    t.data = Eigen::MatrixXd::Zero(5, 3);
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

}  // TEST_SUITE
