#include "mafr/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "mafr/errors.hpp"

namespace mafr {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

bool try_parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

double parse_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    if (!try_parse_double(s, v)) {
        throw ParseError("csv: expected a number, got '" + s + "' (line " +
                             std::to_string(line) + ")",
                         line);
    }
    if (!std::isfinite(v)) {
        throw ParseError("csv: non-finite value (line " + std::to_string(line) + ")", line);
    }
    return v;
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

bool is_long_header(const std::vector<std::string>& cells) {
    if (cells.size() != 3) return false;
    auto lower = [](std::string s) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    return lower(cells[0]) == "curve_id" && lower(cells[1]) == "t" && lower(cells[2]) == "value";
}

ObservationGrid read_long(const std::vector<std::string>& lines) {
    // preserves curves in order of first appearance; all curves must share the
    // same strictly increasing grid
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> curves;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto cells = split_line(lines[li]);
        if (cells.size() != 3) {
            throw ParseError("csv: expected 3 columns (line " + std::to_string(li + 1) + ")",
                             li + 1);
        }
        const double t = parse_double(cells[1], li + 1);
        const double v = parse_double(cells[2], li + 1);
        auto it = curves.find(cells[0]);
        if (it == curves.end()) {
            order.push_back(cells[0]);
            it = curves.emplace(cells[0], std::vector<std::pair<double, double>>{}).first;
        }
        if (!it->second.empty() && !(t > it->second.back().first)) {
            throw ParseError("csv: observation times must be strictly increasing per curve "
                             "(line " +
                                 std::to_string(li + 1) + ")",
                             li + 1);
        }
        it->second.emplace_back(t, v);
    }
    if (order.empty()) throw ParseError("csv: no data rows", lines.size());

    const auto& first = curves[order.front()];
    std::vector<double> points(first.size());
    for (std::size_t p = 0; p < first.size(); ++p) points[p] = first[p].first;

    Matrix values(order.size(), points.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& obs = curves[order[i]];
        if (obs.size() != points.size()) {
            throw ParseError("csv: curve '" + order[i] + "' has " + std::to_string(obs.size()) +
                             " observations, expected " + std::to_string(points.size()));
        }
        for (std::size_t p = 0; p < obs.size(); ++p) {
            if (obs[p].first != points[p]) {
                throw ParseError("csv: curve '" + order[i] +
                                 "' is observed on a different grid than the first curve");
            }
            values(i, p) = obs[p].second;
        }
    }
    return {std::move(points), std::move(values), std::move(order)};
}

ObservationGrid read_wide(const std::vector<std::string>& lines) {
    const auto header = split_line(lines[0]);
    if (header.size() < 2) throw ParseError("csv: wide header needs at least two columns", 1);

    double probe = 0.0;
    const bool has_id_column = !try_parse_double(header[0], probe);
    const std::size_t first_time_col = has_id_column ? 1 : 0;
    std::vector<double> points;
    for (std::size_t c = first_time_col; c < header.size(); ++c) {
        points.push_back(parse_double(header[c], 1));
    }

    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto cells = split_line(lines[li]);
        if (cells.size() != header.size()) {
            throw ParseError("csv: row has " + std::to_string(cells.size()) +
                                 " columns, expected " + std::to_string(header.size()) +
                                 " (line " + std::to_string(li + 1) + ")",
                             li + 1);
        }
        ids.push_back(has_id_column ? cells[0] : std::to_string(rows.size() + 1));
        std::vector<double> row;
        row.reserve(points.size());
        for (std::size_t c = first_time_col; c < cells.size(); ++c) {
            row.push_back(parse_double(cells[c], li + 1));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("csv: no data rows", lines.size());

    Matrix values(rows.size(), points.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t p = 0; p < points.size(); ++p) values(i, p) = rows[i][p];
    }
    return {std::move(points), std::move(values), std::move(ids)};
}

} // namespace

ObservationGrid read_observations_csv(std::istream& in, CsvFormat format) {
    const std::vector<std::string> lines = read_lines(in);
    std::size_t first = 0;
    while (first < lines.size() && trim(lines[first]).empty()) ++first;
    if (first == lines.size()) throw ParseError("csv: empty input", 1);
    std::vector<std::string> body(lines.begin() + static_cast<std::ptrdiff_t>(first),
                                  lines.end());

    const auto header = split_line(body[0]);
    if (format == CsvFormat::Long ||
        (format == CsvFormat::Auto && is_long_header(header))) {
        if (format == CsvFormat::Long && !is_long_header(header)) {
            throw ParseError("csv: expected header 'curve_id,t,value'", 1);
        }
        return read_long(body);
    }
    return read_wide(body);
}

ObservationGrid read_observations_csv_file(const std::string& path, CsvFormat format) {
    std::ifstream in(path);
    if (!in) throw ParseError("csv: cannot open '" + path + "'");
    return read_observations_csv(in, format);
}

void write_long_csv(std::ostream& out, const ObservationGrid& grid) {
    out << "curve_id,t,value\n";
    for (std::size_t i = 0; i < grid.num_curves(); ++i) {
        for (std::size_t p = 0; p < grid.points.size(); ++p) {
            out << grid.curve_ids[i] << ',' << format_double(grid.points[p]) << ','
                << format_double(grid.values(i, p)) << '\n';
        }
    }
}

void write_wide_csv(std::ostream& out, const ObservationGrid& grid) {
    out << "curve_id";
    for (double t : grid.points) out << ',' << format_double(t);
    out << '\n';
    for (std::size_t i = 0; i < grid.num_curves(); ++i) {
        out << grid.curve_ids[i];
        for (std::size_t p = 0; p < grid.points.size(); ++p) {
            out << ',' << format_double(grid.values(i, p));
        }
        out << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const Matrix& m,
                      const std::vector<std::string>& column_names,
                      const std::string& id_column_name, const std::vector<std::string>& ids) {
    const bool with_ids = !id_column_name.empty();
    if (with_ids) out << id_column_name;
    for (std::size_t j = 0; j < column_names.size(); ++j) {
        if (with_ids || j > 0) out << ',';
        out << column_names[j];
    }
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (with_ids) out << ids[i];
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (with_ids || j > 0) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

} // namespace mafr
