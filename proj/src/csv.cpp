#include "maxcorr/csv.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace maxcorr {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    // trim surrounding whitespace per field
    for (auto& f : out) {
        std::size_t a = 0, b = f.size();
        while (a < b && std::isspace(static_cast<unsigned char>(f[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(f[b - 1]))) --b;
        f = f.substr(a, b - a);
    }
    return out;
}

csv_error fail(const std::string& path, std::size_t lineno, const std::string& what) {
    return csv_error(path + ":" + std::to_string(lineno) + ": " + what);
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

DataMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fail(path, 0, "cannot open file");

    std::vector<std::vector<double>> rows;
    std::size_t ncols = 0;
    std::string line;
    std::size_t lineno = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_line(line);
        std::vector<double> vals(fields.size());
        bool all_numeric = true;
        for (std::size_t j = 0; j < fields.size(); ++j)
            all_numeric = all_numeric && parse_double(fields[j], vals[j]);
        if (first_data_line) {
            first_data_line = false;
            if (!all_numeric) continue;  // header row
            ncols = fields.size();
        } else if (!all_numeric) {
            throw fail(path, lineno, "non-numeric field");
        }
        if (ncols == 0) ncols = fields.size();
        if (fields.size() != ncols)
            throw fail(path, lineno, "expected " + std::to_string(ncols) + " fields, got " +
                                      std::to_string(fields.size()));
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw fail(path, lineno, "no data rows");
    if (ncols < 2) throw fail(path, 1, "need at least 2 columns");

    DataMatrix m(rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) m.values()[j * rows.size() + i] = rows[i][j];
    m.validate();
    return m;
}

void write_matrix_csv(const std::string& path, const PairStatMatrix& m) {
    std::ofstream out(path);
    if (!out) throw fail(path, 0, "cannot open file for writing");
    char buf[64];
    for (std::size_t j = 0; j < m.dim(); ++j) {
        for (std::size_t k = 0; k < m.dim(); ++k) {
            std::snprintf(buf, sizeof buf, "%.10g", m(j, k));
            out << (k ? "," : "") << buf;
        }
        out << '\n';
    }
}

void write_rows_csv(const std::string& path, const std::vector<ExperimentRow>& rows) {
    std::ofstream out(path);
    if (!out) throw fail(path, 0, "cannot open file for writing");
    out << "kind,n,p,rejection_rate,reps,mode,wall_s\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.10g", r.rejection_rate);
        out << kernel_name(r.kind) << ',' << r.n << ',' << r.p << ',' << buf << ',' << r.reps
            << ',' << mode_name(r.mode) << ',';
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_s);
        out << buf << '\n';
    }
}

}  // namespace maxcorr
