#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "histarith/arithmetic.hpp"
#include "histarith/binning.hpp"
#include "histarith/errors.hpp"
#include "histarith/sample.hpp"

namespace histarith {

// One value per line. A non-numeric first line is treated as a header and
// skipped; later non-numeric lines are errors ("line N: not a number", N
// counting physical lines from 1). Blank lines are ignored.
Sample read_sample_csv(std::istream& in);
Sample read_sample_csv_file(const std::string& path);

// Persistent form of a ReliableHistogram. Bin statistics are not stored;
// a loaded histogram carries edges, counts and per-bin gammas only.
struct HistogramDocument {
    int format_version = 1;
    std::vector<double> edges;
    std::vector<std::int64_t> counts;
    std::vector<double> gammas;
    std::int64_t n = 0;
    double gamma_per_bin = 0.999;
    QMode q_mode = QMode::chi_square;
    BoundaryPlacement boundary_placement = BoundaryPlacement::midpoint;
    bool degenerate = false;
    bool unreliable = false;

    static HistogramDocument from(const ReliableHistogram& h, const BinningConfig& config);
    ReliableHistogram to_histogram() const;
};

// Persistent form of a ResultDistribution. Rectangles are not stored; a
// loaded result carries the curves, provenance and support.
struct ResultDocument {
    int format_version = 1;
    Op op = Op::add;
    std::vector<double> breakpoints;
    std::vector<std::array<double, 7>> cdf_segments;
    std::vector<std::array<double, 7>> pdf_segments;
    std::vector<IntervalProvenance> provenance;
    std::pair<double, double> support{0.0, 0.0};

    static ResultDocument from(const ResultDistribution& d);
    ResultDistribution to_result() const;
};

nlohmann::json to_json(const HistogramDocument& doc);
nlohmann::json to_json(const ResultDocument& doc);

// Validate and decode. Violated invariants raise data_error naming the
// invariant ("edges not increasing", "counts do not sum to n", ...).
HistogramDocument parse_histogram_document(const nlohmann::json& j);
ResultDocument parse_result_document(const nlohmann::json& j);

// Parse failures and unreadable files raise data_error.
nlohmann::json load_json_file(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::json& j);

HistogramDocument load_histogram_document(const std::string& path);
ResultDocument load_result_document(const std::string& path);

const char* qmode_name(QMode m);
QMode qmode_from_name(const std::string& s);
const char* boundary_name(BoundaryPlacement b);
BoundaryPlacement boundary_from_name(const std::string& s);

} // namespace histarith
