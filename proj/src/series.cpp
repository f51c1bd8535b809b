#include "vgt/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vgt/rng.hpp"

namespace vgt {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_double(const std::string& cell, double& out) {
    const char* b = cell.data();
    const char* e = b + cell.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc{}) return false;
    while (p < e && (*p == ' ' || *p == '\t')) ++p;
    return p == e;
}

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

// Strict ISO yyyy-mm-dd; anything else is a format error, not a droppable row.
bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    if (!all_digits(s, 0, 4) || !all_digits(s, 5, 7) || !all_digits(s, 8, 10))
        return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::string basename_no_ext(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string name = (slash == std::string::npos) ? path : path.substr(slash + 1);
    std::size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

void validate_series(const PriceSeries& s) {
    if (s.size() < 3)
        throw Error("series '" + s.label + "': needs at least 3 points, got " +
                    std::to_string(s.size()));
    for (double p : s.prices)
        if (!std::isfinite(p) || p <= 0.0)
            throw Error("series '" + s.label + "': non-positive or non-finite price");
}

PriceSeries load_price_csv(const std::string& path, const std::string& column,
                           const std::string& date_column) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);

    std::string header_line;
    if (!std::getline(in, header_line)) throw Error("empty file: " + path);
    std::vector<std::string> header = split_csv_line(header_line);

    auto find_col = [&](const std::string& name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };

    std::ptrdiff_t price_col = find_col(column);
    std::ptrdiff_t date_col = find_col(date_column);

    // Canonical (index,price) files carry no dates; rows are kept in order.
    bool canonical = false;
    if (price_col < 0 || date_col < 0) {
        std::ptrdiff_t idx_col = find_col("index");
        std::ptrdiff_t p_col = find_col("price");
        if (idx_col >= 0 && p_col >= 0) {
            canonical = true;
            price_col = p_col;
        } else {
            throw Error(path + ": header is missing column '" +
                        (price_col < 0 ? column : date_column) +
                        "' (and is not a canonical index,price file)");
        }
    }

    struct Row {
        std::string date;
        double price;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> cells = split_csv_line(line);
        std::size_t need = static_cast<std::size_t>(price_col);
        if (!canonical)
            need = std::max(need, static_cast<std::size_t>(date_col));
        if (cells.size() <= need)
            throw Error(path + ":" + std::to_string(lineno) + ": too few columns");
        std::string date;
        if (!canonical) {
            date = cells[static_cast<std::size_t>(date_col)];
            if (!is_iso_date(date))
                throw Error(path + ":" + std::to_string(lineno) +
                            ": date '" + date + "' is not ISO yyyy-mm-dd");
        }
        double price;
        // Missing / unparseable / non-finite / non-positive prices drop the
        // row; the date must still have been well-formed above.
        if (!parse_double(cells[static_cast<std::size_t>(price_col)], price))
            continue;
        if (!std::isfinite(price) || price <= 0.0) continue;
        rows.push_back({std::move(date), price});
    }

    // ISO dates sort correctly as strings; stable sort keeps equal-date rows
    // in file order so cleaning never reorders surviving rows.
    if (!canonical)
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.date < b.date; });

    PriceSeries s;
    s.label = basename_no_ext(path);
    s.prices.reserve(rows.size());
    for (const Row& r : rows) s.prices.push_back(r.price);
    if (s.size() < 3)
        throw Error(path + ": fewer than 3 valid price rows after cleaning");
    return s;
}

void save_series_csv(const PriceSeries& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << "index,price\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << i << ',' << format_double(s.prices[i]) << '\n';
    if (!out) throw Error("write failed: " + path);
}

ReturnSeries log_returns(const PriceSeries& s) {
    validate_series(s);
    ReturnSeries r;
    r.label = s.label;
    r.returns.resize(s.size() - 1);
    for (std::size_t t = 0; t + 1 < s.size(); ++t)
        r.returns[t] = std::log(s.prices[t + 1]) - std::log(s.prices[t]);
    return r;
}

PriceSeries prices_from_returns(const ReturnSeries& r, double p0,
                                const std::string& label) {
    if (!(p0 > 0.0) || !std::isfinite(p0)) throw Error("p0 must be positive");
    PriceSeries s;
    s.label = label.empty() ? r.label : label;
    s.prices.resize(r.returns.size() + 1);
    s.prices[0] = p0;
    for (std::size_t t = 0; t < r.returns.size(); ++t)
        s.prices[t + 1] = s.prices[t] * std::exp(r.returns[t]);
    validate_series(s);
    return s;
}

PriceSeries random_subseries(const PriceSeries& s, std::size_t length,
                             std::uint64_t rng_seed) {
    if (length < 3 || length > s.size())
        throw Error("subseries length " + std::to_string(length) +
                    " out of range [3, " + std::to_string(s.size()) + "]");
    Rng rng(rng_seed);
    std::size_t offset = static_cast<std::size_t>(
        rng.uniform_below(s.size() - length + 1));
    PriceSeries out;
    out.label = s.label + "_sub" + std::to_string(offset);
    out.prices.assign(s.prices.begin() + static_cast<std::ptrdiff_t>(offset),
                      s.prices.begin() + static_cast<std::ptrdiff_t>(offset + length));
    return out;
}

}  // namespace vgt
