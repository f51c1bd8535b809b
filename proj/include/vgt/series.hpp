#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vgt {

// Error with a user-facing message; everything the library throws derives
// from this so the CLI can report failures uniformly.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A cleaned price series on an integer time axis 0..N-1.  Prices are strictly
// positive and finite; N >= 3.  The time axis is the *sequence position*
// (trading-day index), so calendar gaps are deliberately collapsed.
struct PriceSeries {
    std::string label;
    std::vector<double> prices;  // times are implicitly 0..size()-1

    std::size_t size() const { return prices.size(); }
};

struct ReturnSeries {
    std::string label;
    std::vector<double> returns;  // log-returns, length N-1
};

// Validate the PriceSeries invariants, throwing Error on violation.
void validate_series(const PriceSeries& s);

// Load a price series from a dated CSV (header row; `column` holds the price,
// `date_column` an ISO yyyy-mm-dd date).  Rows are sorted ascending by date;
// rows whose price is missing, non-finite, or <= 0 are dropped; a malformed
// date anywhere rejects the whole file.  Also accepts the canonical
// two-column (index,price) form written by save_series_csv, in which case
// rows are taken in file order.
PriceSeries load_price_csv(const std::string& path,
                           const std::string& column = "Close",
                           const std::string& date_column = "Date");

// Canonical serialized form: "index,price" header, one row per point.
void save_series_csv(const PriceSeries& s, const std::string& path);

ReturnSeries log_returns(const PriceSeries& s);

// Rebuild prices from log-returns: prices[0] = p0, p[t+1] = p[t]*exp(r[t]).
PriceSeries prices_from_returns(const ReturnSeries& r, double p0,
                                const std::string& label = "");

// Contiguous window of `length` points at a uniformly random offset.
PriceSeries random_subseries(const PriceSeries& s, std::size_t length,
                             std::uint64_t rng_seed);

// Shortest decimal form that round-trips the double exactly; used by every
// CSV writer so serialized numbers reload bit-identically.
std::string format_double(double v);

}  // namespace vgt
